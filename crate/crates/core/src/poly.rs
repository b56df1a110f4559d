//! Dense univariate polynomials over a field tower.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::field::FieldElement;
use crate::rational::Rational;

/// Coefficients in increasing degree; trailing zeros are trimmed, so the zero
/// polynomial has no coefficients and degree `None`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    c: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(mut c: Vec<FieldElement>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::one())
    }

    pub fn constant(e: FieldElement) -> Self {
        Self::new(vec![e])
    }

    /// The polynomial `pi`.
    pub fn var() -> Self {
        Self::monomial(FieldElement::one(), 1)
    }

    pub fn monomial(e: FieldElement, k: usize) -> Self {
        let mut c = vec![FieldElement::zero(); k + 1];
        c[k] = e;
        Self::new(c)
    }

    pub fn from_rationals(c: &[Rational]) -> Self {
        Self::new(c.iter().cloned().map(FieldElement::Rat).collect())
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| FieldElement::from_i64(n)).collect())
    }

    /// `x - r`.
    pub fn linear_root(r: &FieldElement) -> Self {
        Self::new(vec![r.neg_ref(), FieldElement::one()])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.c
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.c.get(k).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lc(&self) -> Option<&FieldElement> {
        self.c.last()
    }

    /// Deepest tower level among the coefficients.
    pub fn max_depth(&self) -> usize {
        self.c.iter().map(|x| x.depth()).max().unwrap_or(0)
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().all(|x| x.as_rational().is_some())
    }

    pub fn scale(&self, e: &FieldElement) -> Self {
        if e.is_zero() {
            return Self::zero();
        }
        Self::new(self.c.iter().map(|x| x.mul_ref(e)).collect())
    }

    pub fn shift_degree(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![FieldElement::zero(); k];
        c.extend(self.c.iter().cloned());
        Self { c }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.add_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(c)
    }

    pub fn neg_ref(&self) -> Self {
        Self { c: self.c.iter().map(|x| x.neg_ref()).collect() }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![FieldElement::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Quotient and remainder; panics when `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.c[dd].inv();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![FieldElement::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let coef = core::mem::replace(&mut r[k], FieldElement::zero());
            if coef.is_zero() {
                continue;
            }
            let t = coef.mul_ref(&inv);
            for i in 0..dd {
                if !d.c[i].is_zero() {
                    r[k - dd + i] = r[k - dd + i].sub_ref(&t.mul_ref(&d.c[i]));
                }
            }
            q[k - dd] = t;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Quotient of an exact division.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c.iter().enumerate().skip(1).map(|(i, x)| x.mul_ref(&FieldElement::from_i64(i as i64))).collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul_ref(x).add_ref(a);
        }
        acc
    }

    /// `p(pi + s)`.
    pub fn taylor_shift(&self, s: &FieldElement) -> Self {
        let lin = Self::new(vec![s.clone(), FieldElement::one()]);
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul_ref(&lin).add_ref(&Self::constant(a.clone()));
        }
        acc
    }

    /// `p(a * pi)`.
    pub fn scale_var(&self, a: &FieldElement) -> Self {
        let mut pw = FieldElement::one();
        let mut c = Vec::with_capacity(self.c.len());
        for x in &self.c {
            c.push(x.mul_ref(&pw));
            pw = pw.mul_ref(a);
        }
        Self::new(c)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*a + t*b = g` and `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = core::mem::replace(&mut r1, r);
            let s = s0.sub_ref(&q.mul_ref(&s1));
            s0 = core::mem::replace(&mut s1, s);
            let t = t0.sub_ref(&q.mul_ref(&t1));
            t0 = core::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = l.inv();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
        }
    }

    pub fn is_squarefree(&self) -> bool {
        Self::gcd(self, &self.derivative()).degree() == Some(0)
    }

    /// Squarefree part `p / gcd(p, p')` (monic) and its degree, the number of
    /// distinct roots.
    pub fn squarefree_and_distinct_roots(&self) -> Option<(Self, usize)> {
        if self.is_zero() {
            return None;
        }
        let g = Self::gcd(self, &self.derivative());
        let s = self.exact_div(&g).monic();
        let e = s.degree().unwrap();
        Some((s, e))
    }

    /// Yun's decomposition: monic squarefree, pairwise coprime `a_i` with
    /// `p = lc * prod a_i^i`. Only nonconstant parts are returned.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = Self::gcd(&f, &df);
        let mut b = f.exact_div(&a0);
        let mut c = df.exact_div(&a0);
        let mut d = c.sub_ref(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = Self::gcd(&b, &d);
            b = b.exact_div(&a);
            c = d.exact_div(&a);
            d = c.sub_ref(&b.derivative());
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Resultant over a field, matching the Sylvester determinant with the
    /// rows of `a` first.
    pub fn resultant(a: &Self, b: &Self) -> FieldElement {
        let (Some(mut da), Some(mut db)) = (a.degree(), b.degree()) else {
            return FieldElement::zero();
        };
        let (mut a, mut b) = (a.clone(), b.clone());
        let mut acc = FieldElement::one();
        loop {
            if db == 0 {
                return acc.mul_ref(&b.c[0].pow(da as u64));
            }
            if da < db {
                if (da * db) % 2 == 1 {
                    acc = acc.neg_ref();
                }
                core::mem::swap(&mut a, &mut b);
                core::mem::swap(&mut da, &mut db);
                continue;
            }
            let r = a.rem(&b);
            let Some(dr) = r.degree() else {
                return FieldElement::zero();
            };
            // Res(a, b) = (-1)^(da*db) lc(b)^(da-dr) Res(b, r)
            if (da * db) % 2 == 1 {
                acc = acc.neg_ref();
            }
            acc = acc.mul_ref(&b.c[db].pow((da - dr) as u64));
            a = b;
            b = r;
            da = db;
            db = dr;
        }
    }

    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, x) in self.c.iter().enumerate().rev() {
            if x.is_zero() {
                continue;
            }
            let mon = match i {
                0 => String::new(),
                1 => String::from(var),
                _ => format!("{var}^{i}"),
            };
            let xs = format!("{x}");
            let composite = matches!(x, FieldElement::Alg(..));
            let term = if i == 0 {
                if composite {
                    format!("({xs})")
                } else {
                    xs
                }
            } else if x.is_one() {
                mon
            } else if *x == FieldElement::from_i64(-1) {
                format!("-{mon}")
            } else if composite {
                format!("({xs})*{mon}")
            } else {
                format!("{xs}*{mon}")
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("pi"))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("pi"))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly {
                self.$f(rhs)
            }
        }
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                self.$f(&rhs)
            }
        }
    };
}
binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        self.neg_ref()
    }
}
