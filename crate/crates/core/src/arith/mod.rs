//! Integers, rationals, places of Q and local arithmetic at each place.

mod factor;
mod modular;
mod padic;
mod place;
mod poly;
mod rational;
pub(crate) mod residue;

pub use factor::{
    factorize, factorize_with_bound, is_prime, prime_divisors, squarefree_part,
    squarefree_part_with_bound, DEFAULT_FACTOR_BOUND,
};
pub use modular::{crt_pair, legendre_symbol, mod_inverse, sqrt_mod_prime, sqrt_mod_squarefree};
pub use padic::{hensel_lift, is_square_local, PAdicApprox};
pub use place::{Place, Prime};
pub use poly::IntPoly;
pub use rational::{
    format_rational, int_valuation, padic_valuation, parse_integer, parse_rational, rational_unit_part,
    square_class_integer, Rational,
};
