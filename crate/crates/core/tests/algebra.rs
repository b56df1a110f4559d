use num_traits::Zero;
use pjl_core::bipoly::{resultant_y, BiPoly};
use pjl_core::factor::factor_over;
use pjl_core::field::{Field, FieldElement};
use pjl_core::parse::to_text;
use pjl_core::rational::{int, Rational};
use pjl_core::{parse_poly, Error, UniPoly};
use proptest::prelude::*;

fn up(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

/// Sylvester determinant in `y` at `x = x0`, rows of `f` first.
fn sylvester_at(f: &BiPoly, g: &BiPoly, x0: &Rational) -> Rational {
    let a: Vec<Rational> = f.eval_x(x0).coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let b: Vec<Rational> = g.eval_x(x0).coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let (m, n) = (f.deg_y() as usize, g.deg_y() as usize);
    let size = m + n;
    let coeff = |v: &[Rational], k: usize| v.get(k).cloned().unwrap_or_else(Rational::zero);
    let mut mat = vec![vec![Rational::zero(); size]; size];
    for r in 0..n {
        for k in 0..=m {
            mat[r][r + k] = coeff(&a, m - k);
        }
    }
    for r in 0..m {
        for k in 0..=n {
            mat[n + r][r + k] = coeff(&b, n - k);
        }
    }
    det(mat)
}

fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut d = int(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    d
}

#[test]
fn gcd_examples() {
    assert_eq!(UniPoly::gcd(&up(&[-1, 0, 1]), &up(&[-1, 1])), up(&[-1, 1]));
    assert_eq!(UniPoly::gcd(&up(&[2, 4]), &UniPoly::zero()), up(&[1, 2]).monic());
    let a = up(&[-1, 1]).pow(2).mul_ref(&up(&[2, 1]));
    let b = up(&[-1, 1]).mul_ref(&up(&[3, 1]));
    assert_eq!(UniPoly::gcd(&a, &b), up(&[-1, 1]));
}

#[test]
fn squarefree_examples() {
    assert_eq!(up(&[0, 0, 0, 1]).squarefree_and_distinct_roots(), Some((up(&[0, 1]), 1)));
    assert_eq!(up(&[-1, 0, 1]).pow(2).squarefree_and_distinct_roots(), Some((up(&[-1, 0, 1]), 2)));
    assert_eq!(up(&[0, 0, 0, 1, -2, 1]).squarefree_and_distinct_roots(), Some((up(&[0, -1, 1]), 2)));
    assert_eq!(UniPoly::zero().squarefree_and_distinct_roots(), None);
}

#[test]
fn resultant_examples() {
    let r = resultant_y(&parse_poly("y - x").unwrap(), &parse_poly("y").unwrap()).unwrap();
    assert_eq!(r, up(&[0, 1]));
    let r = resultant_y(&parse_poly("y^2 - x").unwrap(), &parse_poly("y").unwrap()).unwrap();
    assert_eq!(r, up(&[0, -1]));
    let f = parse_poly("y^3 + x*y + 1").unwrap();
    assert!(resultant_y(&f, &f).unwrap().is_zero());
    assert!(resultant_y(&parse_poly("x").unwrap(), &parse_poly("x^2").unwrap()).is_err());
}

#[test]
fn factor_examples() {
    let q = Field::rationals();
    let fs = factor_over(&up(&[-1, 0, 1]), &q);
    assert_eq!(fs.len(), 2);
    assert!(fs.contains(&(up(&[-1, 1]), 1)) && fs.contains(&(up(&[1, 1]), 1)));
    let p2 = up(&[-2, 0, 1]);
    assert_eq!(factor_over(&p2, &q), vec![(p2.clone(), 1)]);
    let k = q.extend(&p2, 48).unwrap();
    let r2 = k.generator();
    let fs = factor_over(&p2, &k);
    assert_eq!(fs.len(), 2);
    let mut roots: Vec<FieldElement> = fs.iter().map(|(f, _)| f.coeff(0).neg_ref()).collect();
    roots.sort_by_key(|r| r.to_string());
    assert!(roots.contains(&r2) && roots.contains(&r2.neg_ref()));
    let p = p2.pow(2).mul_ref(&up(&[-3, 1]));
    assert_eq!(factor_over(&p, &q), vec![(up(&[-3, 1]), 1), (p2, 2)]);
}

#[test]
fn extension_budget() {
    let q = Field::rationals();
    let k = q.extend(&up(&[-2, 0, 1]), 4).unwrap();
    assert!(matches!(k.extend(&up(&[-3, 0, 0, 1]), 4), Err(Error::ExtensionBudgetExceeded { needed: 6, budget: 4 })));
}

#[test]
fn parser_examples() {
    assert_eq!(parse_poly("y^2 - x").unwrap(), BiPoly::y().pow(2).sub(&BiPoly::x()));
    let p = parse_poly("(y - x)*(y - x - 1)").unwrap();
    assert_eq!(p, parse_poly("y^2 - 2*x*y - y + x^2 + x").unwrap());
    assert!(matches!(parse_poly("y^2 -"), Err(Error::Syntax { offset: 5, .. })));
    assert!(parse_poly("3/4*x - y").is_ok());
    assert!(parse_poly("z").is_err());
}

fn bipoly_strategy() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0u32..4, 0u32..4), -6i64..=6, 1i64..=3), 0..7).prop_map(|ts| {
        BiPoly::from_terms(ts.into_iter().map(|((i, j), n, d)| ((i, j), Rational::new(n.into(), d.into()))))
    })
}

fn monic_strategy() -> impl Strategy<Value = BiPoly> {
    (1u32..=4, bipoly_strategy()).prop_map(|(d, p)| {
        let low = BiPoly::from_terms(p.terms().filter(|((_, j), _)| *j < d).map(|(k, c)| (*k, c.clone())));
        BiPoly::term(int(1), 0, d).add(&low)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_print_parse(p in bipoly_strategy()) {
        let text = to_text(&p);
        let q = parse_poly(&text).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(to_text(&q), text);
    }

    #[test]
    fn resultant_matches_sylvester(f in monic_strategy(), g in monic_strategy()) {
        let r = resultant_y(&f, &g).unwrap();
        let bound = (f.deg_x() * g.deg_y() + g.deg_x() * f.deg_y()) as i64;
        for x0 in 0..=bound + 1 {
            let x0 = int(x0 - 2);
            let got = r.eval(&FieldElement::from(x0.clone()));
            prop_assert_eq!(got.as_rational().unwrap().clone(), sylvester_at(&f, &g, &x0));
        }
    }

    #[test]
    fn resultant_zero_iff_common_factor(f in monic_strategy(), g in monic_strategy(), h in monic_strategy(), share in any::<bool>()) {
        let (f, g) = if share { (f.mul(&h), g.mul(&h)) } else { (f, g) };
        let zero = resultant_y(&f, &g).unwrap().is_zero();
        if share {
            prop_assert!(zero);
        } else {
            // a common factor over Q(x) shows up at every specialization
            let common = (0..4).all(|x0| {
                let a = f.eval_x(&int(x0));
                let b = g.eval_x(&int(x0));
                UniPoly::gcd(&a, &b).degree().unwrap_or(0) > 0
            });
            prop_assert_eq!(zero, common);
        }
    }

    #[test]
    fn gcd_divides_and_is_monic(a in prop::collection::vec(-5i64..=5, 1..6), b in prop::collection::vec(-5i64..=5, 1..6), c in prop::collection::vec(-5i64..=5, 1..4)) {
        let (a, b, c) = (up(&a), up(&b), up(&c));
        let (a, b) = (a.mul_ref(&c), b.mul_ref(&c));
        let g = UniPoly::gcd(&a, &b);
        if !g.is_zero() {
            prop_assert!(g.lc().unwrap().is_one());
            prop_assert!(a.rem(&g).is_zero());
            prop_assert!(b.rem(&g).is_zero());
        }
    }

    #[test]
    fn factors_multiply_back(c in prop::collection::vec(-4i64..=4, 2..7)) {
        let p = up(&c);
        prop_assume!(p.degree().unwrap_or(0) >= 1);
        let fs = factor_over(&p, &Field::rationals());
        let mut prod = UniPoly::constant(p.lc().unwrap().clone());
        for (f, k) in &fs {
            prod = prod.mul_ref(&f.pow(*k));
        }
        prop_assert_eq!(prod, p.clone());
        let (_, e) = p.squarefree_and_distinct_roots().unwrap();
        // distinct irreducible factors have disjoint roots
        let mut count = 0;
        for (f, _) in &fs {
            count += f.degree().unwrap();
        }
        prop_assert_eq!(e, count);
    }
}
