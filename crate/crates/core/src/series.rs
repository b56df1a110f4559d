//! Truncated Puiseux series in `t` with tracked absolute precision.
//!
//! A series stores coefficients on the lattice `(1/den) Z` starting at
//! exponent `val/den`, plus an optional precision `p`: every exponent `>= p`
//! is unknown (`O(t^p)`). Without a precision the series is exact.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::field::FieldElement;
use crate::rational::{fmt_rational, Rational};

#[derive(Clone)]
pub struct Series {
    den: u64,
    val: i64,
    coeffs: Vec<FieldElement>,
    prec: Option<Rational>,
}

fn exp_rat(num: i64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Smallest integer `n` with `n/den >= r`.
fn ceil_num(r: &Rational, den: u64) -> i64 {
    (r * Rational::from_integer(BigInt::from(den))).ceil().to_integer().to_i64().expect("exponent out of range")
}

fn min_opt(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x <= y { x } else { y }),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl Series {
    pub fn zero() -> Self {
        Series { den: 1, val: 0, coeffs: Vec::new(), prec: None }
    }

    /// `O(t^p)`.
    pub fn big_o(p: Rational) -> Self {
        Series { den: 1, val: 0, coeffs: Vec::new(), prec: Some(p) }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial(c, &Rational::zero())
    }

    pub fn monomial(c: FieldElement, e: &Rational) -> Self {
        let den = u64::try_from(e.denom()).expect("exponent denominator");
        let val = e.numer().to_i64().expect("exponent numerator");
        Self::from_raw(den, val, vec![c], None)
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Terms at or past
    /// `prec` are dropped.
    pub fn from_terms(terms: &[(Rational, FieldElement)], prec: Option<Rational>) -> Self {
        let mut den = 1u64;
        for (e, _) in terms {
            den = den.lcm(&u64::try_from(e.denom()).unwrap());
        }
        let nums: Vec<i64> = terms
            .iter()
            .map(|(e, _)| (e * Rational::from_integer(den.into())).to_integer().to_i64().unwrap())
            .collect();
        let Some(&lo) = nums.iter().min() else {
            return Series { den: 1, val: 0, coeffs: Vec::new(), prec };
        };
        let hi = *nums.iter().max().unwrap();
        let mut coeffs = vec![FieldElement::zero(); (hi - lo + 1) as usize];
        for (n, (_, c)) in nums.iter().zip(terms) {
            let slot = &mut coeffs[(n - lo) as usize];
            *slot = slot.add_ref(c);
        }
        Self::from_raw(den, lo, coeffs, prec)
    }

    fn from_raw(den: u64, val: i64, coeffs: Vec<FieldElement>, prec: Option<Rational>) -> Self {
        let mut s = Series { den, val, coeffs, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.val = 0;
            self.den = 1;
            return;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
        if let Some(p) = &self.prec {
            let pn = ceil_num(p, self.den);
            let keep = (pn - self.val).max(0) as usize;
            if keep < self.coeffs.len() {
                self.coeffs.truncate(keep);
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.val = 0;
            self.den = 1;
            return;
        }
        let mut g = self.den;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&((self.val + i as i64).unsigned_abs()));
                if g == 1 {
                    return;
                }
            }
        }
        if g > 1 {
            let gi = g as i64;
            let base = self.val.div_euclid(gi) * gi;
            let shift = (self.val - base) as usize;
            debug_assert_eq!(shift, 0);
            let coeffs = core::mem::take(&mut self.coeffs);
            self.coeffs = coeffs.into_iter().step_by(g as usize).collect();
            self.val /= gi;
            self.den /= g;
        }
    }

    /// Coefficients re-expressed on the lattice `(1/den) Z`.
    fn spread(&self, den: u64) -> (i64, Vec<FieldElement>) {
        debug_assert_eq!(den % self.den, 0);
        let f = den / self.den;
        if f == 1 || self.coeffs.is_empty() {
            return (self.val * f as i64, self.coeffs.clone());
        }
        let mut out = vec![FieldElement::zero(); (self.coeffs.len() - 1) * f as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * f as usize] = c.clone();
        }
        (self.val * f as i64, out)
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// No known nonzero term.
    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    pub fn precision(&self) -> Option<&Rational> {
        self.prec.as_ref()
    }

    /// Common denominator of the exponents.
    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn valuation(&self) -> Option<Rational> {
        (!self.coeffs.is_empty()).then(|| exp_rat(self.val, self.den))
    }

    /// Known lower bound for the order: the valuation, or the precision of a
    /// series with no known term; `None` for the exact zero.
    pub fn order_lower_bound(&self) -> Option<Rational> {
        self.valuation().or_else(|| self.prec.clone())
    }

    pub fn leading(&self) -> Option<(Rational, &FieldElement)> {
        self.coeffs.first().map(|c| (exp_rat(self.val, self.den), c))
    }

    pub fn terms(&self) -> Vec<(Rational, FieldElement)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (exp_rat(self.val + i as i64, self.den), c.clone()))
            .collect()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn coeff_at(&self, e: &Rational) -> FieldElement {
        let d = u64::try_from(e.denom()).unwrap();
        if !self.den.is_multiple_of(d) {
            return FieldElement::zero();
        }
        let n = (e * Rational::from_integer(self.den.into())).to_integer().to_i64().unwrap();
        let i = n - self.val;
        if i < 0 {
            return FieldElement::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(FieldElement::zero)
    }

    /// Drops every term at or past `cap` and lowers the precision to `cap`.
    pub fn truncate(&self, cap: &Rational) -> Self {
        let prec = min_opt(self.prec.clone(), Some(cap.clone()));
        Self::from_raw(self.den, self.val, self.coeffs.clone(), prec)
    }

    /// The exact finite series of the terms below `e`.
    pub fn restrict_below(&self, e: &Rational) -> Self {
        let mut s = self.truncate(e);
        s.prec = None;
        s
    }

    /// Replaces the precision with `p` without touching known terms below it.
    pub fn with_precision(&self, p: Option<Rational>) -> Self {
        let mut s = self.clone();
        s.prec = p;
        s.normalize();
        s
    }

    pub fn neg(&self) -> Self {
        Series {
            den: self.den,
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
            prec: self.prec.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.coeffs.is_empty() && self.coeffs.is_empty() {
            return Series { prec: min_opt(self.prec.clone(), o.prec.clone()), ..Self::zero() };
        }
        let den = self.den.lcm(&o.den);
        let (va, a) = self.spread(den);
        let (vb, b) = o.spread(den);
        let (va, vb) = if a.is_empty() {
            (vb, vb)
        } else if b.is_empty() {
            (va, va)
        } else {
            (va, vb)
        };
        let lo = va.min(vb);
        let hi = (va + a.len() as i64).max(vb + b.len() as i64);
        let mut out = vec![FieldElement::zero(); (hi - lo) as usize];
        for (i, c) in a.iter().enumerate() {
            out[(va - lo) as usize + i] = c.clone();
        }
        for (i, c) in b.iter().enumerate() {
            let slot = &mut out[(vb - lo) as usize + i];
            *slot = slot.add_ref(c);
        }
        Self::from_raw(den, lo, out, min_opt(self.prec.clone(), o.prec.clone()))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Series { prec: self.prec.clone(), ..Self::zero() };
        }
        Series {
            den: self.den,
            val: self.val,
            coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect(),
            prec: self.prec.clone(),
        }
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: &Rational) -> Self {
        let ed = u64::try_from(e.denom()).unwrap();
        let den = self.den.lcm(&ed);
        let (v, c) = self.spread(den);
        let en = (e * Rational::from_integer(den.into())).to_integer().to_i64().unwrap();
        Self::from_raw(den, v + en, c, self.prec.as_ref().map(|p| p + e))
    }

    /// Product; terms at or past `cap` are discarded.
    pub fn mul(&self, o: &Self, cap: Option<&Rational>) -> Self {
        let prec = match (self.order_lower_bound(), o.order_lower_bound()) {
            (None, _) | (_, None) => {
                // One factor is the exact zero.
                return Self::zero();
            }
            (Some(la), Some(lb)) => min_opt(self.prec.as_ref().map(|p| p + &lb), o.prec.as_ref().map(|p| p + &la)),
        };
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Series { prec: min_opt(prec, cap.cloned()), ..Self::zero() };
        }
        let den = self.den.lcm(&o.den);
        let (va, a) = self.spread(den);
        let (vb, b) = o.spread(den);
        let v = va + vb;
        let full = a.len() + b.len() - 1;
        // The cap only lowers the precision when it actually cuts terms.
        let prec = match cap {
            Some(c) if exp_rat(v + full as i64 - 1, den) >= *c => min_opt(prec, Some(c.clone())),
            _ => prec,
        };
        let n = match &prec {
            Some(p) => ((ceil_num(p, den) - v).max(0) as usize).min(full),
            None => full,
        };
        let mut out = vec![FieldElement::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if i >= n {
                break;
            }
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                if !y.is_zero() {
                    out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
                }
            }
        }
        Self::from_raw(den, v, out, prec)
    }

    /// Quotient by a series with a known leading term, computed below `cap`.
    pub fn div(&self, o: &Self, cap: &Rational) -> Self {
        let (vb, lb) = o.leading().expect("division by a series without known leading term");
        let lb_inv = lb.inv();
        let la = self.order_lower_bound();
        let mut prec = Some(cap.clone());
        if let Some(p) = &self.prec {
            prec = min_opt(prec, Some(p - &vb));
        }
        if let (Some(p), Some(la)) = (&o.prec, &la) {
            prec = min_opt(prec, Some(p + la - &vb - &vb));
        }
        if self.coeffs.is_empty() {
            return Series { prec, ..Self::zero() };
        }
        let den = self.den.lcm(&o.den);
        let (va, a) = self.spread(den);
        let (vbn, b) = o.spread(den);
        let v = va - vbn;
        let p = prec.as_ref().unwrap();
        let n = (ceil_num(p, den) - v).max(0) as usize;
        let mut q: Vec<FieldElement> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = a.get(k).cloned().unwrap_or_else(FieldElement::zero);
            for j in 1..=k.min(b.len().saturating_sub(1)) {
                if !b[j].is_zero() && !q[k - j].is_zero() {
                    acc = acc.sub_ref(&b[j].mul_ref(&q[k - j]));
                }
            }
            q.push(acc.mul_ref(&lb_inv));
        }
        Self::from_raw(den, v, q, prec)
    }

    /// `d/dt`.
    pub fn deriv(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = exp_rat(self.val + i as i64, self.den);
                c.mul_ref(&FieldElement::Rat(e))
            })
            .collect();
        let mut s = Self::from_raw(self.den, self.val, coeffs, None).shift(&Rational::from_integer((-1).into()));
        s.prec = self.prec.as_ref().map(|p| p - Rational::from_integer(1.into()));
        s.normalize();
        s
    }

    pub fn pow(&self, k: usize, cap: Option<&Rational>) -> Self {
        let mut acc = Self::constant(FieldElement::one());
        for _ in 0..k {
            acc = acc.mul(self, cap);
        }
        acc
    }

    /// Lowest tower depth among the coefficients.
    pub fn max_depth(&self) -> usize {
        self.coeffs.iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Exact equality of known terms and precision.
    pub fn same_as(&self, o: &Self) -> bool {
        self.terms() == o.terms() && self.prec == o.prec
    }

    /// Whether all known terms vanish below `e` and the precision reaches `e`.
    pub fn vanishes_below(&self, e: &Rational) -> bool {
        self.prec.as_ref().is_none_or(|p| p >= e) && self.valuation().is_none_or(|v| &v >= e)
    }
}

impl PartialEq for Series {
    fn eq(&self, o: &Self) -> bool {
        self.same_as(o)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let cs = match &c {
                FieldElement::Alg(..) => alloc::format!("({c})"),
                _ => alloc::format!("{c}"),
            };
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{cs}")?;
            } else {
                write!(f, "{cs}*t^({})", fmt_rational(&e))?;
            }
        }
        if let Some(p) = &self.prec {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "O(t^({}))", fmt_rational(p))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
