use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Adjoining a root would push the tower past the configured degree.
    ExtensionBudgetExceeded {
        needed: usize,
        budget: usize,
    },
    /// A cluster of roots is still unseparated at the cutoff order.
    CutoffTooSmall {
        cutoff: String,
        order: String,
    },
    /// The known precision of a root does not decide the requested order.
    NotSeparated(String),
    NotJacobianPair,
    NotMonic,
    ZeroResultant,
    ZeroPolynomial,
    NoSolution(String),
    IndexOutOfRange {
        k: usize,
        h: usize,
    },
    InvalidSequence(String),
    InvalidCase(String),
    RetriesExhausted(usize),
    EmptyExpansion,
    Domain(String),
    Syntax {
        offset: usize,
        message: String,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ExtensionBudgetExceeded { needed, budget } => write!(
                f,
                "field extension of total degree {needed} exceeds the budget {budget}"
            ),
            Error::CutoffTooSmall { cutoff, order } => write!(
                f,
                "roots are not separated below cutoff {cutoff} (cluster still joined at order {order}); raise the cutoff"
            ),
            Error::NotSeparated(what) => {
                write!(f, "precision insufficient to decide {what}; raise the cutoff")
            }
            Error::NotJacobianPair => write!(f, "the Jacobian determinant is not a nonzero constant"),
            Error::NotMonic => write!(f, "polynomial is not monic in y"),
            Error::ZeroResultant => write!(f, "resultant vanishes: the curves share a component"),
            Error::ZeroPolynomial => write!(f, "zero polynomial"),
            Error::NoSolution(what) => write!(f, "linear system has no solution: {what}"),
            Error::IndexOutOfRange { k, h } => {
                write!(f, "index {k} outside the admissible range 2..={h}")
            }
            Error::InvalidSequence(why) => write!(f, "invalid sequence: {why}"),
            Error::InvalidCase(why) => write!(f, "invalid case data: {why}"),
            Error::RetriesExhausted(n) => write!(f, "no generic shift found after {n} draws"),
            Error::EmptyExpansion => write!(f, "cutoff too small to contain any nonzero term"),
            Error::Domain(why) => write!(f, "{why}"),
            Error::Syntax { offset, message } => {
                write!(f, "syntax error at offset {offset}: {message}")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
