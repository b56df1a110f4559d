//! Factorization of univariate polynomials over a field tower.
//!
//! Over `Q` the work is delegated to [`crate::zfactor`]. Over `K(a)` the
//! squarefree norm method is used: for a shift `k` making
//! `N(pi) = Norm(p(pi - k a))` squarefree over `K`, each irreducible factor
//! `N_j` of `N` over `K` gives the irreducible factor
//! `gcd(p(pi), N_j(pi + k a))` of `p` over `K(a)`.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::field::{Field, FieldElement};
use crate::poly::UniPoly;
use crate::rational::Rational;
use crate::zfactor;

/// Monic irreducible factors with multiplicities, in a canonical order
/// (by degree, then by printed form). `p` must be nonzero with coefficients
/// in `field`.
pub fn factor_over(p: &UniPoly, field: &Field) -> Vec<(UniPoly, usize)> {
    assert!(!p.is_zero(), "factoring the zero polynomial");
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for f in factor_squarefree(&part, field) {
            out.push((f, mult));
        }
    }
    sort_factors(&mut out);
    out
}

pub fn sort_factors(v: &mut [(UniPoly, usize)]) {
    v.sort_by_cached_key(|(f, m)| (f.degree().unwrap_or(0), f.to_string(), *m));
}

/// Monic irreducible factors of a monic squarefree polynomial.
pub fn factor_squarefree(p: &UniPoly, field: &Field) -> Vec<UniPoly> {
    let p = p.monic();
    match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => return alloc::vec![p],
        _ => {}
    }
    if field.is_rationals() {
        return factor_rational(&p);
    }
    let parent = field.parent().unwrap().clone();
    let theta = field.generator();
    for k in shifts() {
        let kt = theta.mul_ref(&FieldElement::from_i64(k));
        let n = norm_of_shift(&p, field, &kt);
        if !n.is_squarefree() {
            continue;
        }
        let mut out = Vec::new();
        let mut rest = p.clone();
        for nj in factor_squarefree(&n, &parent) {
            let back = nj.taylor_shift(&kt);
            let h = UniPoly::gcd(&rest, &back);
            if h.degree().unwrap_or(0) > 0 {
                rest = rest.exact_div(&h);
                out.push(h);
            }
        }
        debug_assert_eq!(rest.degree(), Some(0));
        return out;
    }
    unreachable!("no squarefree norm shift found")
}

fn shifts() -> impl Iterator<Item = i64> {
    (0..).flat_map(|i: i64| if i == 0 { alloc::vec![0] } else { alloc::vec![i, -i] })
}

/// `Norm_{F/K}(p(pi - s))` for `s` in `F`, by evaluation at integer points
/// and Newton interpolation over `K`.
fn norm_of_shift(p: &UniPoly, field: &Field, s: &FieldElement) -> UniPoly {
    let deg = p.degree().unwrap() * field.degree();
    let xs: Vec<FieldElement> = (0..=deg as i64).map(FieldElement::from_i64).collect();
    let ys: Vec<FieldElement> = xs.iter().map(|c| p.eval(&c.sub_ref(s)).norm_to_parent(field)).collect();
    interpolate(&xs, &ys)
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[FieldElement], ys: &[FieldElement]) -> UniPoly {
    let n = xs.len();
    let mut dd: Vec<FieldElement> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = dd[i].sub_ref(&dd[i - 1]);
            let den = xs[i].sub_ref(&xs[i - j]);
            dd[i] = num.div_ref(&den);
        }
    }
    let mut acc = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        acc = acc.mul_ref(&UniPoly::linear_root(&xs[i])).add_ref(&UniPoly::constant(dd[i].clone()));
    }
    acc
}

fn factor_rational(p: &UniPoly) -> Vec<UniPoly> {
    let coeffs: Vec<Rational> =
        p.coeffs().iter().map(|c| c.as_rational().expect("rational coefficients expected").clone()).collect();
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    zfactor::factor_squarefree(&ints)
        .into_iter()
        .map(|f| UniPoly::from_rationals(&f.into_iter().map(Rational::from_integer).collect::<Vec<_>>()).monic())
        .collect()
}
