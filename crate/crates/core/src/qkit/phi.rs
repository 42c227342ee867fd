//! Terminating basic hypergeometric series and the partial-sum builders for
//! the q-binomial theorem and its specializations.

use std::fmt;

use crate::error::{Error, Result};
use crate::series::{HalfExp, Series};

use super::fraction::QFraction;
use super::monomial::{Monomial, Sign};
use super::poch::times_one_minus;

/// `_{r+1}phi_r(upper; lower; q^(step/2), z)` cut at `terminate_at`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSpec {
    pub upper: Vec<Monomial>,
    pub lower: Vec<Monomial>,
    pub step: HalfExp,
    pub z: Monomial,
    pub terminate_at: usize,
}

impl PhiSpec {
    /// Finds the termination index from an upper parameter `q^(-n*step)`.
    pub fn new(upper: Vec<Monomial>, lower: Vec<Monomial>, step: HalfExp, z: Monomial) -> Result<Self> {
        let terminate_at = upper
            .iter()
            .filter_map(|a| termination_index(*a, step))
            .min()
            .ok_or_else(|| Error::InvalidArgument("no upper parameter of the form q^(-n*step)".into()))?;
        Ok(PhiSpec { upper, lower, step, z, terminate_at })
    }
}

fn termination_index(a: Monomial, step: HalfExp) -> Option<usize> {
    let (e, s) = (a.exp.halves(), step.halves());
    (a.sign == Sign::Pos && e <= 0 && e % s == 0).then(|| (-e / s) as usize)
}

impl fmt::Display for PhiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Monomial]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "phi({}; {}; q^({}/2), {})",
            join(&self.upper),
            join(&self.lower),
            self.step.halves(),
            self.z
        )
    }
}

/// The sum as an exact rational function.
///
/// A term whose upper Pochhammer product has already vanished is zero and
/// ends the sum; a vanishing lower factor before that is a pole.
pub fn phi_exact(spec: &PhiSpec) -> Result<QFraction> {
    if termination_index_present(spec).is_none() {
        return Err(Error::InvalidArgument(format!("{spec} has no termination witness")));
    }
    let s = spec.step;
    let mut term = QFraction::one();
    let mut acc = QFraction::one();
    for k in 1..=spec.terminate_at as i64 {
        let idx = s * (k - 1);
        if spec.upper.iter().any(|a| a.shift(idx) == Monomial::ONE) {
            break;
        }
        for a in &spec.upper {
            term = term.mul_one_minus(a.shift(idx));
        }
        for b in &spec.lower {
            term = term.div_one_minus(b.shift(idx)).map_err(|_| {
                Error::Pole(format!("lower parameter {b} at index {} in {spec}", k - 1))
            })?;
        }
        term = term.div_one_minus(Monomial::pos(s * k))?.mul_monomial(spec.z);
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

fn termination_index_present(spec: &PhiSpec) -> Option<usize> {
    spec.upper
        .iter()
        .filter_map(|a| termination_index(*a, spec.step))
        .filter(|&n| n == spec.terminate_at)
        .min()
}

/// Laurent expansion of the sum known below `order`.
pub fn phi_eval(spec: &PhiSpec, order: HalfExp) -> Result<Series> {
    phi_exact(spec)?.to_series(order)
}

/// `sum_{n<=K} (a;q)_n / (q;q)_n z^n` in base `q^(step/2)`, with
/// `K = ceil(order / z.exp)` so every omitted term lies at or above `order`.
/// With `a = 0` this is the partial sum of `1/(z;q)_inf`.
pub fn qbinomial_partial_sum(a: Monomial, z: Monomial, step: HalfExp, order: HalfExp) -> Result<Series> {
    partial_sum(z, step, order, |acc, n| times_one_minus(acc, a.shift(step * (n - 1))))
}

/// `sum_{n<=K} q^(n(n-1)/2) z^n / (q;q)_n`, the partial sum of `(-z;q)_inf`.
pub fn euler_partial_sum(z: Monomial, step: HalfExp, order: HalfExp) -> Result<Series> {
    partial_sum(z, step, order, |acc, n| acc.shifted(1, step * (n - 1)))
}

fn partial_sum<F>(z: Monomial, step: HalfExp, order: HalfExp, numerator_step: F) -> Result<Series>
where
    F: Fn(&Series, i64) -> Series,
{
    if z.is_zero() {
        return Ok(Series::one(order));
    }
    if z.exp.halves() <= 0 {
        return Err(Error::InvalidArgument(format!("z = {z} must have positive exponent")));
    }
    let cutoff = (order.halves() + z.exp.halves() - 1) / z.exp.halves();
    let mut term = Series::one(order);
    let mut acc = term.clone();
    for n in 1..=cutoff {
        term = numerator_step(&term, n)
            .shifted(z.sign_value(), z.exp)
            .div_one_minus(1, step * n, order);
        acc = &acc + &term;
    }
    Ok(acc)
}
