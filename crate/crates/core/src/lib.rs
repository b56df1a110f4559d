#![no_std]
extern crate alloc;

pub mod bipoly;
pub mod caselab;
pub mod classify;
pub mod error;
pub mod factor;
pub mod field;
pub mod intersection;
pub mod ode;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod semigroup;
pub mod series;
pub mod tpoly;
pub mod tree;
pub mod zfactor;

pub use bipoly::BiPoly;
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use parse::parse_poly;
pub use poly::UniPoly;
pub use rational::Rational;
