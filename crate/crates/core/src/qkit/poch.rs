//! q-Pochhammer symbols and Gaussian binomial coefficients.

use crate::error::{Error, Result};
use crate::series::{HalfExp, Series};

use super::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLength {
    Finite(usize),
    Infinite,
}

/// `(arg; q^(step/2))_length`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochSpec {
    pub arg: Monomial,
    pub step: HalfExp,
    pub length: PochLength,
}

impl PochSpec {
    pub fn finite(arg: Monomial, step: HalfExp, n: usize) -> Self {
        PochSpec { arg, step, length: PochLength::Finite(n) }
    }

    pub fn infinite(arg: Monomial, step: HalfExp) -> Self {
        PochSpec { arg, step, length: PochLength::Infinite }
    }

    /// Finite symbols are exact unless `order` is given; infinite ones need it.
    pub fn eval(&self, order: Option<HalfExp>) -> Result<Series> {
        match (self.length, order) {
            (PochLength::Finite(n), o) => Ok(poch_finite(self.arg, self.step, n, o)),
            (PochLength::Infinite, Some(o)) => poch_infinite(self.arg, self.step, o),
            (PochLength::Infinite, None) => {
                Err(Error::InvalidArgument("an infinite product needs a truncation order".into()))
            }
        }
    }
}

/// `s * (1 - m)`.
pub(crate) fn times_one_minus(s: &Series, m: Monomial) -> Series {
    if m.is_zero() {
        return s.clone();
    }
    s - &s.shifted(m.sign_value(), m.exp)
}

/// The exact binomial `1 - m`.
pub fn one_minus(m: Monomial) -> Series {
    times_one_minus(&Series::exact_one(), m)
}

/// `prod_{k<n} (1 - arg * q^(k*step/2))`, exact or cut at `trunc`.
pub fn poch_finite(arg: Monomial, step: HalfExp, n: usize, trunc: Option<HalfExp>) -> Series {
    let mut acc = match trunc {
        Some(t) => Series::one(t),
        None => Series::exact_one(),
    };
    if arg.is_zero() {
        return acc;
    }
    for k in 0..n as i64 {
        acc = times_one_minus(&acc, arg.shift(step * k));
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `(arg; q^step)_inf` known below `order`.
pub fn poch_infinite(arg: Monomial, step: HalfExp, order: HalfExp) -> Result<Series> {
    if arg.is_zero() {
        return Ok(Series::one(order));
    }
    if arg.exp.halves() <= 0 || step.halves() <= 0 {
        return Err(Error::DivergentProduct { arg: arg.to_string(), step });
    }
    let mut acc = Series::one(order);
    let mut factor = arg;
    while factor.exp < order {
        acc = times_one_minus(&acc, factor);
        factor = factor.shift(step);
    }
    Ok(acc)
}

/// `(arg; q^step)_inf` for any nonzero `arg`, split as a finite Laurent
/// polynomial `(arg; q^step)_K` times a convergent tail.
pub fn poch_infinite_laurent(arg: Monomial, step: HalfExp, order: HalfExp) -> Result<Series> {
    if arg.is_zero() || arg.exp.halves() > 0 {
        return poch_infinite(arg, step, order);
    }
    if step.halves() <= 0 {
        return Err(Error::DivergentProduct { arg: arg.to_string(), step });
    }
    let k = (-arg.exp.halves()) / step.halves() + 1;
    let head = poch_finite(arg, step, k as usize, None);
    let Some(head_min) = head.min_exp() else {
        return Ok(Series::zero(order));
    };
    let tail = poch_infinite(arg.shift(step * k), step, order - head_min)?;
    Ok((&head * &tail).truncated(order))
}

/// `prod (arg; q^step)_inf^power`. Factors with `power < 0` need a positive
/// argument exponent; Laurent factors are computed with enough slack that the
/// product is known below `order`.
pub fn infinite_product(factors: &[(Monomial, HalfExp, i32)], order: HalfExp) -> Result<Series> {
    let mut slack = 0i64;
    for &(arg, step, power) in factors {
        if power < 0 && !arg.is_zero() && arg.exp.halves() <= 0 {
            return Err(Error::InvalidArgument(format!("cannot invert ({arg}; q^({}/2))_inf", step.halves())));
        }
        if power > 0 && !arg.is_zero() && step.halves() > 0 {
            let mut e = arg.exp.halves();
            while e < 0 {
                slack -= e * i64::from(power);
                e += step.halves();
            }
        }
    }
    let work = order + HalfExp(slack);
    let mut acc = Series::one(work);
    for &(arg, step, power) in factors {
        let p = poch_infinite_laurent(arg, step, work)?;
        let p = if power < 0 { p.invert(work)? } else { p };
        acc = &acc * &p.pow(power.unsigned_abs());
    }
    Ok(acc.truncated(order))
}

/// Gaussian binomial `[m, n]` in the base `q^(step/2)`; zero outside `0 <= n <= m`.
pub fn gauss_binomial(m: i64, n: i64, step: HalfExp) -> Series {
    if n < 0 || n > m {
        return Series::exact_zero();
    }
    let k = n.min(m - n);
    let mut acc = Series::exact_one();
    for i in 1..=k {
        acc = times_one_minus(&acc, Monomial::pos(step * (m - k + i)));
        acc = acc
            .div_exact_one_minus(1, step * i)
            .expect("partial Gaussian binomial quotients are polynomials");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    const Q: HalfExp = HalfExp::from_q(1);

    fn poly(cs: &[(i64, i64)]) -> Series {
        Series::from_terms(cs.iter().map(|&(e, c)| (HalfExp(e), BigInt::from(c))), None)
    }

    #[test]
    fn finite_examples() {
        assert_eq!(poch_finite(Monomial::q(1), Q, 1, None), poly(&[(0, 1), (2, -1)]));
        assert_eq!(poch_finite(Monomial::neg(HalfExp(7)), Q, 0, None), Series::exact_one());
        // (1 - q^-2)(1 - q^-1) expanded by hand
        let expected = poly(&[(0, 1), (-2, -1), (-4, -1), (-6, 1)]);
        assert_eq!(poch_finite(Monomial::q(-2), Q, 2, None), expected);
    }

    #[test]
    fn finite_with_truncation() {
        let s = poch_finite(Monomial::q(1), Q, 5, Some(HalfExp::from_q(3)));
        assert_eq!(s.trunc(), Some(HalfExp::from_q(3)));
        assert_eq!(s, poch_finite(Monomial::q(1), Q, 5, None).truncated(HalfExp::from_q(3)));
    }

    #[test]
    fn infinite_examples() {
        let order = HalfExp::from_q(6);
        assert_eq!(poch_infinite(Monomial::ZERO, Q, order).unwrap(), Series::one(order));
        // (q;q)_inf = 1 - q - q^2 + q^5 + O(q^6) from the pentagonal exponents 0,1,2,5
        let euler = poch_infinite(Monomial::q(1), Q, order).unwrap();
        assert_eq!(euler, Series::from_i64s(HalfExp::ZERO, &[1, 0, -1, 0, -1, 0, 0, 0, 0, 0, 1], Some(order)));
        assert!(matches!(
            poch_infinite(Monomial::neg(HalfExp::ZERO), HalfExp::from_q(2), order),
            Err(Error::DivergentProduct { .. })
        ));
    }

    #[test]
    fn laurent_infinite_product_splits() {
        let order = HalfExp::from_q(20);
        // (-q^-1; q)_inf = (1 + q^-1)(1 + 1)(-q; q)_inf
        let got = poch_infinite_laurent(Monomial::neg(HalfExp::from_q(-1)), Q, order).unwrap();
        let head = poly(&[(-2, 2), (0, 2)]);
        let tail = poch_infinite(Monomial::neg(Q), Q, order + HalfExp::from_q(1)).unwrap();
        assert_eq!(got, (&head * &tail).truncated(order));
        // (q^-1; q)_inf contains the factor 1 - q^0
        assert!(poch_infinite_laurent(Monomial::q(-1), Q, order).unwrap().is_zero());
    }

    #[test]
    fn product_with_laurent_factor_keeps_its_order() {
        let order = HalfExp::from_q(15);
        // (-q^-1; q)_inf (q; q)_inf^-1 against the two factors built separately
        let got = infinite_product(&[(Monomial::neg(HalfExp::from_q(-1)), Q, 1), (Monomial::q(1), Q, -1)], order).unwrap();
        assert_eq!(got.trunc(), Some(order));
        let a = poch_infinite_laurent(Monomial::neg(HalfExp::from_q(-1)), Q, order + HalfExp::from_q(1)).unwrap();
        let b = poch_infinite(Monomial::q(1), Q, order + HalfExp::from_q(1)).unwrap().invert(order + HalfExp::from_q(1)).unwrap();
        assert_eq!(Series::equal_up_to(&got, &(&a * &b), order).unwrap(), None);
        assert!(infinite_product(&[(Monomial::neg(HalfExp::ZERO), Q, -1)], order).is_err());
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gauss_binomial(7, 0, Q), Series::exact_one());
        assert!(gauss_binomial(2, 3, Q).is_zero());
        assert!(gauss_binomial(2, -1, Q).is_zero());
        // Oracle: (q;q)_4 / ((q;q)_2 (q;q)_2) expanded through power-series division
        let num = poch_finite(Monomial::q(1), Q, 4, None);
        let den = poch_finite(Monomial::q(1), Q, 2, None).pow(2);
        let ratio = &num * &den.invert(HalfExp::from_q(12)).unwrap();
        let expected = Series::from_i64s(HalfExp::ZERO, &[1, 0, 1, 0, 2, 0, 1, 0, 1], None);
        assert_eq!(Series::equal_up_to(&ratio, &expected, HalfExp::from_q(12)).unwrap(), None);
        assert_eq!(gauss_binomial(4, 2, Q), expected);
    }

    #[test]
    fn gaussian_binomial_in_base_q_squared() {
        let g = gauss_binomial(3, 1, HalfExp::from_q(2));
        assert_eq!(g, poly(&[(0, 1), (4, 1), (8, 1)]));
    }
}
