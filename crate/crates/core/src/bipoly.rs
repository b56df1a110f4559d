//! Sparse bivariate polynomials over `Q` and resultants in `y`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::UniPoly;
use crate::rational::{fmt_rational, int, Rational};

/// Map from `(x exponent, y exponent)` to a nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::term(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(Rational::one(), 0, 1)
    }

    pub fn term(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, &c);
        }
        p
    }

    /// Polynomial in `y` with coefficients in `Q[x]`.
    pub fn from_y_coeffs(c: &[UniPoly]) -> Self {
        let mut p = Self::zero();
        for (j, cj) in c.iter().enumerate() {
            for (i, a) in cj.coeffs().iter().enumerate() {
                let a = a.as_rational().expect("rational coefficient expected");
                p.add_term(i as u32, j as u32, a);
            }
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in `x`; zero for the zero polynomial.
    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Degree in `y`; zero for the zero polynomial.
    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn y_coeffs(&self) -> Vec<UniPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        let dy = self.deg_y() as usize;
        let mut cols: Vec<Vec<FieldElement>> = alloc::vec![Vec::new(); dy + 1];
        for (&(i, j), c) in &self.terms {
            let col = &mut cols[j as usize];
            if col.len() <= i as usize {
                col.resize(i as usize + 1, FieldElement::zero());
            }
            col[i as usize] = FieldElement::Rat(c.clone());
        }
        cols.into_iter().map(UniPoly::new).collect()
    }

    /// Coefficient of the top power of `y`, as a polynomial in `x`.
    pub fn lc_y(&self) -> UniPoly {
        self.y_coeffs().pop().unwrap_or_default()
    }

    /// The leading coefficient in `y` is a nonzero constant.
    pub fn is_monic_y(&self) -> bool {
        !self.is_zero() && self.lc_y().degree() == Some(0)
    }

    /// Divides by the constant leading coefficient in `y`.
    pub fn monicized(&self) -> Result<Self> {
        if !self.is_monic_y() {
            return Err(Error::NotMonic);
        }
        let lc = self.lc_y().coeff(0).as_rational().unwrap().clone();
        Ok(self.scale(&lc.recip()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (&(i, j), c) in &o.terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn neg(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                p.add_term(i1 + i2, j1 + j2, &(c1 * c2));
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `f - xi`.
    pub fn minus_const(&self, xi: &Rational) -> Self {
        let mut p = self.clone();
        p.add_term(0, 0, &-xi);
        p
    }

    pub fn diff_x(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|(k, _)| k.0 > 0).map(|(&(i, j), c)| ((i - 1, j), c * int(i as i64))))
    }

    pub fn diff_y(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|(k, _)| k.1 > 0).map(|(&(i, j), c)| ((i, j - 1), c * int(j as i64))))
    }

    /// `f_x g_y - f_y g_x`.
    pub fn jacobian(f: &Self, g: &Self) -> Self {
        f.diff_x().mul(&g.diff_y()).sub(&f.diff_y().mul(&g.diff_x()))
    }

    /// `f(a(x, y), b(x, y))`.
    pub fn compose(&self, a: &Self, b: &Self) -> Self {
        let mut apow: Vec<Self> = alloc::vec![Self::one()];
        let mut bpow: Vec<Self> = alloc::vec![Self::one()];
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            while apow.len() <= i as usize {
                let next = apow.last().unwrap().mul(a);
                apow.push(next);
            }
            while bpow.len() <= j as usize {
                let next = bpow.last().unwrap().mul(b);
                bpow.push(next);
            }
            out = out.add(&apow[i as usize].mul(&bpow[j as usize]).scale(c));
        }
        out
    }

    /// Specializes `x` to a rational value, giving a polynomial in `y`.
    pub fn eval_x(&self, x0: &Rational) -> UniPoly {
        let cols = self.y_coeffs();
        UniPoly::new(cols.iter().map(|c| c.eval(&FieldElement::Rat(x0.clone()))).collect())
    }

    pub fn eval(&self, x0: &Rational, y0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * num_traits::pow(x0.clone(), i as usize) * num_traits::pow(y0.clone(), j as usize);
        }
        acc
    }

    /// Constant nonzero value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.1, b.0).cmp(&(a.1, a.0)));
        let mut first = true;
        for k in keys {
            let c = &self.terms[&k];
            let mut mon = String::new();
            for (v, e) in [("x", k.0), ("y", k.1)] {
                if e == 0 {
                    continue;
                }
                if !mon.is_empty() {
                    mon.push('*');
                }
                mon.push_str(v);
                if e > 1 {
                    mon.push_str(&format!("^{e}"));
                }
            }
            let a = c.abs();
            let body = if mon.is_empty() {
                fmt_rational(&a)
            } else if a.is_one() {
                mon
            } else {
                format!("{}*{}", fmt_rational(&a), mon)
            };
            let neg = c.is_negative();
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn deg(p: &[UniPoly]) -> usize {
    p.len() - 1
}

fn trim(mut p: Vec<UniPoly>) -> Vec<UniPoly> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Pseudo-remainder of `a` by `b` over `Q[x]`.
fn prem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let db = deg(b);
    let lcb = &b[db];
    let mut r = a.to_vec();
    let mut e = deg(a) as i64 - db as i64 + 1;
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let t = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<UniPoly> = r.iter().map(|c| c.mul_ref(lcb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub_ref(&t.mul_ref(bc));
        }
        r = trim(next);
        e -= 1;
    }
    let f = lcb.pow(e.max(0) as usize);
    r.into_iter().map(|c| c.mul_ref(&f)).collect()
}

/// Resultant in `y` as a polynomial in `x`, by the subresultant PRS. The
/// sign is that of the Sylvester determinant with the rows of `f` first.
pub fn resultant_y(f: &BiPoly, g: &BiPoly) -> Result<UniPoly> {
    if f.deg_y() == 0 && g.deg_y() == 0 {
        return Err(Error::Domain("both polynomials are constant in y".into()));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(UniPoly::zero());
    }
    let (mut a, mut b) = (f.y_coeffs(), g.y_coeffs());
    let mut sign_neg = false;
    if deg(&a) < deg(&b) {
        if deg(&a) * deg(&b) % 2 == 1 {
            sign_neg = true;
        }
        core::mem::swap(&mut a, &mut b);
    }
    let signed = |p: UniPoly, neg: bool| if neg { p.neg_ref() } else { p };
    if deg(&b) == 0 {
        return Ok(signed(b[0].pow(deg(&a)), sign_neg));
    }
    let mut gg = UniPoly::one();
    let mut h = UniPoly::one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return Ok(UniPoly::zero());
        }
        a = b;
        let div = gg.mul_ref(&h.pow(delta));
        b = r.iter().map(|c| c.exact_div(&div)).collect();
        gg = a[deg(&a)].clone();
        h = match delta {
            0 => h,
            1 => gg.clone(),
            _ => gg.pow(delta).exact_div(&h.pow(delta - 1)),
        };
        if deg(&b) == 0 {
            break;
        }
    }
    let da = deg(&a);
    let res = b[0].pow(da).exact_div(&h.pow(da - 1));
    Ok(signed(res, sign_neg))
}

/// `deg_x Res_y(f, g)`; an error when the resultant vanishes.
pub fn resultant_degree(f: &BiPoly, g: &BiPoly) -> Result<usize> {
    resultant_y(f, g)?.degree().ok_or(Error::ZeroResultant)
}
