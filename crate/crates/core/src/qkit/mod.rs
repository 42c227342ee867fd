//! Monomials, q-Pochhammer symbols, Gaussian binomials, exact rational
//! functions and terminating basic hypergeometric sums.

mod fraction;
mod monomial;
mod phi;
mod poch;

pub use fraction::QFraction;
pub use monomial::{Monomial, Sign};
pub use phi::{euler_partial_sum, phi_eval, phi_exact, qbinomial_partial_sum, PhiSpec};
pub use poch::{
    gauss_binomial, infinite_product, one_minus, poch_finite, poch_infinite, poch_infinite_laurent, PochLength, PochSpec,
};
pub(crate) use poch::times_one_minus;
