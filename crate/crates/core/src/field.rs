//! Towers of simple algebraic extensions of the rationals.
//!
//! A [`Field`] is either `Q` or `K[z]/(phi(z))` for a parent field `K` and a
//! monic irreducible `phi`. Elements are stored canonically: an element that
//! happens to lie in a lower level of its tower is stored at that level, so
//! structural equality is field equality.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::{fmt_rational, Rational};

#[derive(Clone)]
pub struct Field(Option<Arc<Level>>);

struct Level {
    parent: Field,
    depth: usize,
    name: String,
    modulus: Vec<FieldElement>,
    absolute_degree: usize,
}

impl Field {
    pub fn rationals() -> Field {
        Field(None)
    }

    pub fn is_rationals(&self) -> bool {
        self.0.is_none()
    }

    pub fn depth(&self) -> usize {
        self.0.as_ref().map_or(0, |l| l.depth)
    }

    /// Degree over the parent level.
    pub fn degree(&self) -> usize {
        self.0.as_ref().map_or(1, |l| l.modulus.len() - 1)
    }

    /// Degree over `Q`.
    pub fn absolute_degree(&self) -> usize {
        self.0.as_ref().map_or(1, |l| l.absolute_degree)
    }

    pub fn parent(&self) -> Option<&Field> {
        self.0.as_ref().map(|l| &l.parent)
    }

    pub fn name(&self) -> &str {
        self.0.as_ref().map_or("", |l| l.name.as_str())
    }

    /// Defining polynomial over the parent level.
    pub fn modulus(&self) -> UniPoly {
        match &self.0 {
            None => UniPoly::var(),
            Some(l) => UniPoly::new(l.modulus.clone()),
        }
    }

    pub fn generator(&self) -> FieldElement {
        let d = self.degree();
        assert!(self.0.is_some(), "Q has no generator");
        let mut c = vec![FieldElement::zero(); d];
        c[1] = FieldElement::one();
        FieldElement::Alg(self.clone(), c)
    }

    pub fn same(&self, other: &Field) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }

    /// Levels from depth 1 up to `self`.
    pub fn chain(&self) -> Vec<Field> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        while !cur.is_rationals() {
            out.push(cur.clone());
            cur = cur.parent().unwrap().clone();
        }
        out.reverse();
        out
    }

    /// Whether `other` is this field or one of its subfields in the tower.
    pub fn contains_field(&self, other: &Field) -> bool {
        let mut cur = self.clone();
        loop {
            if cur.depth() < other.depth() {
                return false;
            }
            if cur.depth() == other.depth() {
                return cur.same(other);
            }
            cur = cur.parent().unwrap().clone();
        }
    }

    /// Adjoins a root of `modulus`, which must be monic and irreducible over
    /// `self` of degree at least two. The generator is named `a<depth>`.
    pub fn extend(&self, modulus: &UniPoly, budget: usize) -> Result<Field> {
        let d = modulus.degree().expect("zero modulus");
        assert!(d >= 2, "extension by a linear factor");
        assert!(modulus.lc().unwrap().is_one(), "modulus must be monic");
        let needed = self.absolute_degree() * d;
        if needed > budget {
            return Err(Error::ExtensionBudgetExceeded { needed, budget });
        }
        let depth = self.depth() + 1;
        Ok(Field(Some(Arc::new(Level {
            parent: self.clone(),
            depth,
            name: format!("a{depth}"),
            modulus: modulus.coeffs().to_vec(),
            absolute_degree: needed,
        }))))
    }

    /// Like [`Field::extend`] with an explicit generator name.
    pub fn extend_named(&self, modulus: &UniPoly, name: &str, budget: usize) -> Result<Field> {
        let f = self.extend(modulus, budget)?;
        let l = f.0.unwrap();
        let level = Arc::try_unwrap(l).ok().unwrap();
        Ok(Field(Some(Arc::new(Level { name: name.into(), ..level }))))
    }

    /// Deeper of two fields on a common chain.
    pub fn join(&self, other: &Field) -> Field {
        if self.depth() >= other.depth() {
            debug_assert!(self.contains_field(other));
            self.clone()
        } else {
            debug_assert!(other.contains_field(self));
            other.clone()
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => write!(f, "Q"),
            Some(l) => write!(f, "{:?}[{}]/({})", l.parent, l.name, UniPoly::new(l.modulus.clone()).display(&l.name)),
        }
    }
}

#[derive(Clone)]
pub enum FieldElement {
    Rat(Rational),
    /// Coordinates over the parent of the field, in the power basis of its
    /// generator. At least one coordinate past the first is nonzero.
    Alg(Field, Vec<FieldElement>),
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Rat(Rational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        FieldElement::Rat(Rational::from_integer(n.into()))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElement::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElement::Rat(r) => Some(r),
            FieldElement::Alg(..) => None,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            FieldElement::Rat(_) => 0,
            FieldElement::Alg(f, _) => f.depth(),
        }
    }

    /// Smallest level of the tower holding this element.
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rat(_) => Field::rationals(),
            FieldElement::Alg(f, _) => f.clone(),
        }
    }

    /// Coordinates over the parent of `field` (which must contain `self`).
    pub fn coords_in(&self, field: &Field) -> Vec<FieldElement> {
        let d = field.degree();
        match self {
            FieldElement::Alg(f, c) if f.depth() == field.depth() => {
                debug_assert!(f.same(field));
                c.clone()
            }
            _ => {
                assert!(self.depth() < field.depth(), "element lies outside the field");
                let mut c = vec![FieldElement::zero(); d];
                c[0] = self.clone();
                c
            }
        }
    }

    /// Element with the given coordinates over the parent of `field`,
    /// stored at the lowest level that holds it.
    pub fn from_coords(field: &Field, mut coords: Vec<FieldElement>) -> Self {
        assert_eq!(coords.len(), field.degree(), "wrong number of coordinates");
        if coords[1..].iter().all(|c| c.is_zero()) {
            coords.swap_remove(0)
        } else {
            FieldElement::Alg(field.clone(), coords)
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        use FieldElement::*;
        match (self, other) {
            (Rat(a), Rat(b)) => Rat(a + b),
            _ => {
                let (da, db) = (self.depth(), other.depth());
                if da < db {
                    other.add_ref(self)
                } else if da > db {
                    let Alg(f, c) = self else { unreachable!() };
                    let mut c = c.clone();
                    c[0] = c[0].add_ref(other);
                    Alg(f.clone(), c)
                } else {
                    let (Alg(f, a), Alg(g, b)) = (self, other) else { unreachable!() };
                    assert!(f.same(g), "elements of different towers");
                    let c = a.iter().zip(b).map(|(x, y)| x.add_ref(y)).collect();
                    Self::from_coords(f, c)
                }
            }
        }
    }

    pub fn neg_ref(&self) -> Self {
        match self {
            FieldElement::Rat(a) => FieldElement::Rat(-a),
            FieldElement::Alg(f, c) => FieldElement::Alg(f.clone(), c.iter().map(|x| x.neg_ref()).collect()),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        use FieldElement::*;
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        match (self, other) {
            (Rat(a), Rat(b)) => Rat(a * b),
            _ => {
                let (da, db) = (self.depth(), other.depth());
                if da < db {
                    other.mul_ref(self)
                } else if da > db {
                    let Alg(f, c) = self else { unreachable!() };
                    Self::from_coords(f, c.iter().map(|x| x.mul_ref(other)).collect())
                } else {
                    let (Alg(f, a), Alg(g, b)) = (self, other) else { unreachable!() };
                    assert!(f.same(g), "elements of different towers");
                    Self::from_coords(f, mul_reduce(f, a, b))
                }
            }
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        match self {
            FieldElement::Rat(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                FieldElement::Rat(a.recip())
            }
            FieldElement::Alg(f, c) => {
                let a = UniPoly::new(c.clone());
                let (g, s, _) = UniPoly::ext_gcd(&a, &f.modulus());
                debug_assert_eq!(g.degree(), Some(0));
                let s = s.scale(&g.coeff(0).inv());
                let mut coords = s.coeffs().to_vec();
                coords.resize(f.degree(), FieldElement::zero());
                Self::from_coords(f, coords)
            }
        }
    }

    pub fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.inv())
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Norm down to the parent of `field`: the resultant of the defining
    /// polynomial with the coordinate polynomial.
    pub fn norm_to_parent(&self, field: &Field) -> FieldElement {
        if self.depth() < field.depth() {
            return self.pow(field.degree() as u64);
        }
        let a = UniPoly::new(self.coords_in(field));
        UniPoly::resultant(&field.modulus(), &a)
    }

    /// Norm down to `Q`.
    pub fn norm_to_q(&self, field: &Field) -> Rational {
        let mut e = self.clone();
        for level in field.chain().iter().rev() {
            e = e.norm_to_parent(level);
        }
        e.as_rational().cloned().expect("norm did not reach Q")
    }

    fn fmt_term(&self) -> (bool, String) {
        let s = format!("{self}");
        match self {
            FieldElement::Rat(_) => (false, s),
            FieldElement::Alg(..) => (true, s),
        }
    }
}

fn mul_reduce(f: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let d = f.degree();
    let mut prod = vec![FieldElement::zero(); 2 * d - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            prod[i + j] = prod[i + j].add_ref(&x.mul_ref(y));
        }
    }
    let Some(level) = &f.0 else { unreachable!() };
    for k in (d..2 * d - 1).rev() {
        let c = core::mem::replace(&mut prod[k], FieldElement::zero());
        if c.is_zero() {
            continue;
        }
        for i in 0..d {
            let m = &level.modulus[i];
            if !m.is_zero() {
                prod[k - d + i] = prod[k - d + i].sub_ref(&c.mul_ref(m));
            }
        }
    }
    prod.truncate(d);
    prod
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => a == b,
            (FieldElement::Alg(f, a), FieldElement::Alg(g, b)) => f.same(g) && a == b,
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rat(r) => write!(f, "{}", fmt_rational(r)),
            FieldElement::Alg(field, c) => {
                let mut out = String::new();
                for (i, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let gen = match i {
                        0 => String::new(),
                        1 => String::from(field.name()),
                        _ => format!("{}^{}", field.name(), i),
                    };
                    let (composite, xs) = x.fmt_term();
                    let term = if i == 0 {
                        xs
                    } else if x.is_one() {
                        gen
                    } else if *x == FieldElement::from_i64(-1) {
                        format!("-{gen}")
                    } else if composite {
                        format!("({xs})*{gen}")
                    } else {
                        format!("{xs}*{gen}")
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
                write!(f, "{out}")
            }
        }
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::Rat(r)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_i64(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$f(rhs)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$f(&rhs)
            }
        }
    };
}
binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);
binop!(Div, div, div_ref);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}
