use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;

use crate::arith::Prime;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Trial division up to the bound left a composite cofactor.
    FactorizationBoundExceeded { cofactor: BigInt },
    HenselConditionFailed,
    InsufficientPrecision,
    NotPrime(BigInt),
    ZeroArgument,
    Parse(String),
    DimensionOverflow { rows: usize, cap: usize },
    NotAnAction,
    NotASubgroup,
    InvalidGroup(String),
    InvalidModule(String),
    DegenerateForm,
    DiscriminantNotTrivial,
    InvalidForm(String),
    SearchBudgetExceeded,
    NoSmoothResiduePoint(Prime),
    /// The chart representative of the Brauer class vanishes at the point.
    RepresentativeVanishes,
    InvalidArgument(String),
}

impl Error {
    /// Stable variant name, used in machine-readable reports.
    pub fn variant_name(&self) -> &'static str {
        match self {
            Error::FactorizationBoundExceeded { .. } => "FactorizationBoundExceeded",
            Error::HenselConditionFailed => "HenselConditionFailed",
            Error::InsufficientPrecision => "InsufficientPrecision",
            Error::NotPrime(_) => "NotPrime",
            Error::ZeroArgument => "ZeroArgument",
            Error::Parse(_) => "Parse",
            Error::DimensionOverflow { .. } => "DimensionOverflow",
            Error::NotAnAction => "NotAnAction",
            Error::NotASubgroup => "NotASubgroup",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::InvalidModule(_) => "InvalidModule",
            Error::DegenerateForm => "DegenerateForm",
            Error::DiscriminantNotTrivial => "DiscriminantNotTrivial",
            Error::InvalidForm(_) => "InvalidForm",
            Error::SearchBudgetExceeded => "SearchBudgetExceeded",
            Error::NoSmoothResiduePoint(_) => "NoSmoothResiduePoint",
            Error::RepresentativeVanishes => "RepresentativeVanishes",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FactorizationBoundExceeded { cofactor } => {
                write!(f, "cofactor {cofactor} is composite and beyond the trial-division bound")
            }
            Error::HenselConditionFailed => f.write_str("seed does not satisfy v(f(a)) > 2 v(f'(a))"),
            Error::InsufficientPrecision => f.write_str("p-adic precision exhausted"),
            Error::NotPrime(n) => write!(f, "{n} is not prime"),
            Error::ZeroArgument => f.write_str("argument must be nonzero"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::DimensionOverflow { rows, cap } => {
                write!(f, "cochain space of dimension {rows} exceeds cap {cap}")
            }
            Error::NotAnAction => f.write_str("matrices do not define a group action"),
            Error::NotASubgroup => f.write_str("element set is not a subgroup"),
            Error::InvalidGroup(s) => write!(f, "invalid group: {s}"),
            Error::InvalidModule(s) => write!(f, "invalid module: {s}"),
            Error::DegenerateForm => f.write_str("quadratic form is degenerate"),
            Error::DiscriminantNotTrivial => f.write_str("discriminant is not a square"),
            Error::InvalidForm(s) => write!(f, "invalid form: {s}"),
            Error::SearchBudgetExceeded => f.write_str("witness search budget exhausted"),
            Error::NoSmoothResiduePoint(p) => write!(f, "no smooth residue point mod {p}"),
            Error::RepresentativeVanishes => f.write_str("chart representative vanishes at the point"),
            Error::InvalidArgument(s) => write!(f, "invalid argument: {s}"),
        }
    }
}

impl core::error::Error for Error {}
