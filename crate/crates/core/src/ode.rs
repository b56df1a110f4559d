//! The Wronskian-type operator `D(a, b, p, q) = a p q' - b p' q` and the
//! special equation `D(m, m(l-1), p, q) = c p^l`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::UniPoly;

pub fn wronskian_d(a: i64, b: i64, p: &UniPoly, q: &UniPoly) -> UniPoly {
    let fa = FieldElement::from_i64(a);
    let fb = FieldElement::from_i64(b);
    p.mul_ref(&q.derivative()).scale(&fa).sub_ref(&p.derivative().mul_ref(q).scale(&fb))
}

#[derive(Clone, Debug, PartialEq)]
pub struct OdeSolution {
    pub q: UniPoly,
    pub a: FieldElement,
}

/// Solves `D(m, m(l-1), p, q) = c p^l` for `q` of degree `(l-1) m + 1`
/// with `m = deg p`. The solutions form a line `q0 + k p^(l-1)`; the one
/// with the free coefficient set to zero is returned, together with `a`
/// such that `q = (c/m)(pi - a) p^(l-1)`.
pub fn solve_special_ode(p: &UniPoly, l: usize, c: &FieldElement, m: usize) -> Result<OdeSolution> {
    if p.degree() != Some(m) || m == 0 {
        return Err(Error::Domain("deg p must equal m >= 1".into()));
    }
    if l < 2 || c.is_zero() {
        return Err(Error::Domain("need l >= 2 and c != 0".into()));
    }
    let mi = m as i64;
    let b = mi * (l as i64 - 1);
    let nq = (l - 1) * m + 2;
    let rhs = p.pow(l).scale(c);
    let rows = l * m + 1;
    // column j holds D(m, b, p, pi^j)
    let cols: Vec<UniPoly> =
        (0..nq).map(|j| wronskian_d(mi, b, p, &UniPoly::monomial(FieldElement::one(), j))).collect();
    let mut mat: Vec<Vec<FieldElement>> = (0..rows)
        .map(|r| {
            let mut row: Vec<FieldElement> = cols.iter().map(|col| col.coeff(r)).collect();
            row.push(rhs.coeff(r));
            row
        })
        .collect();
    let pivots = rref(&mut mat, nq);
    let mut x = vec![FieldElement::zero(); nq];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = mat[r][nq].clone();
    }
    if mat[pivots.len()..].iter().any(|row| !row[nq].is_zero()) {
        return Err(Error::NoSolution("inconsistent linear system".into()));
    }
    let q = UniPoly::new(x);
    if wronskian_d(mi, b, p, &q) != rhs {
        return Err(Error::NoSolution("solution fails the plug-back check".into()));
    }
    let base = p.pow(l - 1);
    let (lin, rem) = q.divrem(&base);
    if !rem.is_zero() || lin.degree() != Some(1) {
        return Err(Error::NoSolution("q is not a linear multiple of p^(l-1)".into()));
    }
    let cm = c.div_ref(&FieldElement::from_i64(mi));
    if lin.coeff(1) != cm {
        return Err(Error::NoSolution("leading coefficient of q is not c/m".into()));
    }
    let a = lin.coeff(0).div_ref(&cm).neg_ref();
    Ok(OdeSolution { q, a })
}

/// Row-reduces the first `n` columns in place; returns the pivot columns.
fn rref(mat: &mut [Vec<FieldElement>], n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..mat.len()).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = mat[r][col].inv();
        for v in mat[r].iter_mut() {
            *v = v.mul_ref(&inv);
        }
        for i in 0..mat.len() {
            if i != r && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                let (top, rest) = if i < r {
                    let (a, b) = mat.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = mat.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (v, w) in top.iter_mut().zip(rest.iter()) {
                    *v = v.sub_ref(&f.mul_ref(w));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == mat.len() {
            break;
        }
    }
    pivots
}
