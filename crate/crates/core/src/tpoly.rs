//! Polynomials in `y` with Puiseux-series coefficients in `t = 1/x`.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::UniPoly;
use crate::rational::{int, Rational};
use crate::series::Series;

#[derive(Clone, Debug)]
pub struct TPoly {
    c: Vec<Series>,
}

/// Substitutes `x = 1/t`.
pub fn to_t_domain(f: &BiPoly) -> TPoly {
    let dy = f.deg_y() as usize;
    let mut terms: Vec<Vec<(Rational, FieldElement)>> = alloc::vec![Vec::new(); dy + 1];
    for (&(i, j), c) in f.terms() {
        terms[j as usize].push((int(-(i as i64)), FieldElement::Rat(c.clone())));
    }
    TPoly { c: terms.iter().map(|t| Series::from_terms(t, None)).collect() }
}

/// One edge of a lower Newton polygon: `length` roots of valuation `slope`
/// (the negated geometric slope), between y-degrees `start` and `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonEdge {
    pub slope: Rational,
    pub length: usize,
    pub start: usize,
    pub end: usize,
}

/// Lower convex hull of `(k, o_k)`, skipping missing points; edges from left
/// to right, so root valuations decrease along the list.
pub fn hull(points: &[(usize, Rational)]) -> Vec<NewtonEdge> {
    let mut st: Vec<(usize, Rational)> = Vec::new();
    for p in points {
        while st.len() >= 2 {
            let (k1, o1) = &st[st.len() - 2];
            let (k2, o2) = &st[st.len() - 1];
            // drop the middle point when it is not strictly below the chord
            let lhs = (o2 - o1) * int((p.0 - k1) as i64);
            let rhs = (&p.1 - o1) * int((k2 - k1) as i64);
            if lhs >= rhs {
                st.pop();
            } else {
                break;
            }
        }
        st.push(p.clone());
    }
    st.windows(2)
        .map(|w| NewtonEdge {
            slope: (&w[0].1 - &w[1].1) / int((w[1].0 - w[0].0) as i64),
            length: w[1].0 - w[0].0,
            start: w[0].0,
            end: w[1].0,
        })
        .collect()
}

impl TPoly {
    pub fn from_coeffs(c: Vec<Series>) -> Self {
        TPoly { c }
    }

    pub fn coeffs(&self) -> &[Series] {
        &self.c
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn dy(&self) -> Self {
        TPoly {
            c: self.c.iter().enumerate().skip(1).map(|(i, s)| s.scale(&FieldElement::from_i64(i as i64))).collect(),
        }
    }

    pub fn newton_polygon(&self) -> Vec<NewtonEdge> {
        let pts: Vec<(usize, Rational)> =
            self.c.iter().enumerate().filter_map(|(k, s)| s.valuation().map(|v| (k, v))).collect();
        hull(&pts)
    }

    /// Horner evaluation. With an internal cap `c` and a factor of valuation
    /// `v`, the result is known below `c + (deg - 1) min(0, v)`; `target`
    /// chooses `c` so that the result is known below `target` when the
    /// argument is exact.
    pub fn eval(&self, a: &Series, target: Option<&Rational>) -> Series {
        let cap = target.map(|t| internal_cap(t, self.degree(), a));
        let mut acc = Series::zero();
        for s in self.c.iter().rev() {
            acc = acc.mul(a, cap.as_ref()).add(s);
        }
        acc
    }

    /// Coefficients of `F(p + y)` in `y`.
    pub fn taylor_shift(&self, p: &Series, target: Option<&Rational>) -> Vec<Series> {
        let cap = target.map(|t| internal_cap(t, self.degree(), p));
        let mut acc: Vec<Series> = Vec::new();
        for s in self.c.iter().rev() {
            // acc * (p + y) + s
            let mut next: Vec<Series> = Vec::with_capacity(acc.len() + 1);
            for k in 0..=acc.len() {
                let mut v = if k < acc.len() { acc[k].mul(p, cap.as_ref()) } else { Series::zero() };
                if k >= 1 {
                    v = v.add(&acc[k - 1]);
                }
                next.push(v);
            }
            next[0] = next[0].add(s);
            acc = next;
        }
        acc
    }
}

fn internal_cap(target: &Rational, deg: usize, a: &Series) -> Rational {
    let v = a.order_lower_bound().unwrap_or_else(Rational::zero);
    if v.is_negative() && deg > 1 {
        target - v * int(deg as i64 - 1)
    } else {
        target.clone()
    }
}

/// Leading pair `(lambda, f_sigma(pi))` of `sum_k G_k (pi t^delta)^k`.
pub fn pi_leading(g: &[Series], delta: &Rational) -> Result<(Rational, UniPoly)> {
    let mut lam: Option<Rational> = None;
    for (k, s) in g.iter().enumerate() {
        if let Some(v) = s.valuation() {
            let o = v + delta * int(k as i64);
            if lam.as_ref().is_none_or(|l| &o < l) {
                lam = Some(o);
            }
        }
    }
    let lam = lam.ok_or(Error::EmptyExpansion)?;
    for (k, s) in g.iter().enumerate() {
        if s.is_known_zero() {
            if let Some(p) = s.precision() {
                if p + delta * int(k as i64) <= lam {
                    return Err(Error::NotSeparated(alloc::format!("the coefficient of y^{k} at the pi-root")));
                }
            }
        }
    }
    let mut coeffs = alloc::vec![FieldElement::zero(); g.len()];
    for (k, s) in g.iter().enumerate() {
        if let Some((v, c)) = s.leading() {
            if v + delta * int(k as i64) == lam {
                coeffs[k] = c.clone();
            }
        }
    }
    Ok((lam, UniPoly::new(coeffs)))
}

/// All `(exponent, coefficient polynomial in pi)` pairs of
/// `F(prefix + pi t^delta)` below `cutoff`, in increasing exponent.
pub fn eval_pi_root(
    f: &TPoly,
    prefix: &Series,
    delta: &Rational,
    cutoff: &Rational,
) -> Result<Vec<(Rational, UniPoly)>> {
    let n = f.degree();
    let mut target = cutoff.clone();
    if delta.is_negative() {
        target -= delta * int(n as i64);
    }
    let g = f.taylor_shift(prefix, Some(&target));
    let mut limit = cutoff.clone();
    for (k, s) in g.iter().enumerate() {
        if let Some(p) = s.precision() {
            let reach = p + delta * int(k as i64);
            if reach < limit {
                limit = reach;
            }
        }
    }
    let mut acc: alloc::collections::BTreeMap<Rational, Vec<FieldElement>> = Default::default();
    for (k, s) in g.iter().enumerate() {
        for (e, c) in s.terms() {
            let ex = e + delta * int(k as i64);
            if ex >= limit {
                continue;
            }
            let v = acc.entry(ex).or_insert_with(|| alloc::vec![FieldElement::zero(); n + 1]);
            v[k] = v[k].add_ref(&c);
        }
    }
    let out: Vec<(Rational, UniPoly)> =
        acc.into_iter().map(|(e, c)| (e, UniPoly::new(c))).filter(|(_, p)| !p.is_zero()).collect();
    if out.is_empty() {
        return Err(Error::EmptyExpansion);
    }
    Ok(out)
}

/// Valuation of `F(a)`, raising the working precision until it is decided.
pub fn order_at(f: &TPoly, a: &Series) -> Result<Option<Rational>> {
    let mut target = int(1);
    let mut last_prec: Option<Rational> = None;
    loop {
        let v = f.eval(a, Some(&target));
        if let Some(o) = v.valuation() {
            return Ok(Some(o));
        }
        match v.precision() {
            None => return Ok(None),
            Some(p) => {
                if last_prec.as_ref().is_some_and(|lp| p <= lp) {
                    return Err(Error::NotSeparated("the order of a polynomial at a root".into()));
                }
                last_prec = Some(p.clone());
            }
        }
        target = if target.is_zero() { int(1) } else { target.abs() * int(2) + int(1) };
    }
}
