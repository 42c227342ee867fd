//! Exact rational functions of `q^(1/2)` whose denominators are products of
//! binomials `1 - ±q^(e/2)`.
//!
//! Terminating basic hypergeometric sums and the finite identities built from
//! them live in this set. Keeping denominators as factor multisets lets sums
//! share a common denominator without polynomial gcds, and lets equality be
//! decided exactly by cross-multiplication.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::report::Mismatch;
use crate::series::{HalfExp, Series};

use super::monomial::{Monomial, Sign};
use super::poch::times_one_minus;

/// Denominator factor `1 - sign*q^(halves/2)` with `halves > 0`.
type Factor = (i8, i64);

#[derive(Clone, Debug)]
pub struct QFraction {
    num: Series,
    den_const: BigInt,
    den: BTreeMap<Factor, u32>,
}

fn expand(factors: &BTreeMap<Factor, u32>) -> Series {
    let mut acc = Series::exact_one();
    for (&(sign, e), &k) in factors {
        let m = Monomial { sign: if sign > 0 { Sign::Pos } else { Sign::Neg }, exp: HalfExp(e) };
        for _ in 0..k {
            acc = times_one_minus(&acc, m);
        }
    }
    acc
}

fn excess(full: &BTreeMap<Factor, u32>, part: &BTreeMap<Factor, u32>) -> BTreeMap<Factor, u32> {
    full.iter()
        .filter_map(|(f, &k)| {
            let d = k - part.get(f).copied().unwrap_or(0);
            (d > 0).then_some((*f, d))
        })
        .collect()
}

fn lcm_factors(a: &BTreeMap<Factor, u32>, b: &BTreeMap<Factor, u32>) -> BTreeMap<Factor, u32> {
    let mut out = a.clone();
    for (f, &k) in b {
        let slot = out.entry(*f).or_insert(0);
        *slot = (*slot).max(k);
    }
    out
}

impl QFraction {
    /// `p` must be an exact Laurent polynomial.
    pub fn from_poly(p: Series) -> Self {
        assert!(p.is_exact(), "QFraction numerators must be exact");
        QFraction { num: p, den_const: BigInt::one(), den: BTreeMap::new() }
    }

    pub fn one() -> Self {
        QFraction::from_poly(Series::exact_one())
    }

    pub fn zero() -> Self {
        QFraction::from_poly(Series::exact_zero())
    }

    pub fn monomial(m: Monomial) -> Self {
        QFraction::from_poly(m.to_series())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &Series {
        &self.num
    }

    /// Expanded denominator, constant included.
    pub fn denominator(&self) -> Series {
        expand(&self.den).scale(&self.den_const)
    }

    pub fn mul_poly(&self, p: &Series) -> Self {
        QFraction { num: &self.num * p, den_const: self.den_const.clone(), den: self.den.clone() }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        if m.is_zero() {
            return QFraction::zero();
        }
        QFraction {
            num: self.num.shifted(m.sign_value(), m.exp),
            den_const: self.den_const.clone(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        QFraction { num: self.num.scale(&BigInt::from(k)), den_const: self.den_const.clone(), den: self.den.clone() }
    }

    pub fn div_int(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Pole("division by the integer 0".into()));
        }
        let num = if k < 0 { -&self.num } else { self.num.clone() };
        Ok(QFraction { num, den_const: &self.den_const * BigInt::from(k.abs()), den: self.den.clone() })
    }

    pub fn mul_one_minus(&self, m: Monomial) -> Self {
        QFraction { num: times_one_minus(&self.num, m), den_const: self.den_const.clone(), den: self.den.clone() }
    }

    /// Divides by `1 - m`; fails with a pole when `m = 1`.
    pub fn div_one_minus(&self, m: Monomial) -> Result<Self> {
        let mut out = self.clone();
        let s = m.sign_value();
        match m.exp.halves() {
            _ if m.is_zero() => {}
            0 if s > 0 => return Err(Error::Pole("factor 1 - 1".into())),
            0 => out.den_const *= 2,
            e if e > 0 => *out.den.entry((s, e)).or_insert(0) += 1,
            e => {
                // 1 - s q^e = -s q^e (1 - s q^-e)
                out.num = out.num.shifted(-s, HalfExp(-e));
                *out.den.entry((s, -e)).or_insert(0) += 1;
            }
        }
        Ok(out)
    }

    pub fn mul_poch(&self, arg: Monomial, step: HalfExp, n: usize) -> Self {
        let mut out = self.clone();
        for k in 0..n as i64 {
            out = out.mul_one_minus(arg.shift(step * k));
        }
        out
    }

    pub fn div_poch(&self, arg: Monomial, step: HalfExp, n: usize) -> Result<Self> {
        let mut out = self.clone();
        for k in 0..n as i64 {
            out = out.div_one_minus(arg.shift(step * k))?;
        }
        Ok(out)
    }

    /// `1 / (arg; q^step)_n` for any integer `n`, using
    /// `(a;q)_{-n} = 1 / (a q^{-n}; q)_n`.
    pub fn recip_poch(arg: Monomial, step: HalfExp, n: i64) -> Result<Self> {
        if n >= 0 {
            QFraction::one().div_poch(arg, step, n as usize)
        } else {
            Ok(QFraction::one().mul_poch(arg.shift(step * n), step, (-n) as usize))
        }
    }

    pub fn mul(&self, other: &QFraction) -> Self {
        let mut den = self.den.clone();
        for (f, &k) in &other.den {
            *den.entry(*f).or_insert(0) += k;
        }
        QFraction { num: &self.num * &other.num, den_const: &self.den_const * &other.den_const, den }
    }

    pub fn add(&self, other: &QFraction) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let den = lcm_factors(&self.den, &other.den);
        let den_const = self.den_const.lcm(&other.den_const);
        let (a, b) = self.cross_numerators(other, &den, &den_const);
        QFraction { num: &a + &b, den_const, den }
    }

    pub fn neg(&self) -> Self {
        QFraction { num: -&self.num, den_const: self.den_const.clone(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &QFraction) -> Self {
        self.add(&other.neg())
    }

    fn cross_numerators(
        &self,
        other: &QFraction,
        den: &BTreeMap<Factor, u32>,
        den_const: &BigInt,
    ) -> (Series, Series) {
        let a = (&self.num * &expand(&excess(den, &self.den))).scale(&(den_const / &self.den_const));
        let b = (&other.num * &expand(&excess(den, &other.den))).scale(&(den_const / &other.den_const));
        (a, b)
    }

    /// Exact comparison over a common denominator; reports the first
    /// differing coefficient of the cross-multiplied numerators.
    pub fn first_difference(&self, other: &QFraction) -> Option<Mismatch> {
        let den = lcm_factors(&self.den, &other.den);
        let den_const = self.den_const.lcm(&other.den_const);
        let (a, b) = self.cross_numerators(other, &den, &den_const);
        Series::first_difference(&a, &b)
    }

    /// Highest exponent (in halves) touched by the cross-multiplied comparison.
    pub fn comparison_span(&self, other: &QFraction) -> HalfExp {
        let den = lcm_factors(&self.den, &other.den);
        let deg = |f: &QFraction| {
            let extra: i64 = excess(&den, &f.den).iter().map(|(&(_, e), &k)| e * i64::from(k)).sum();
            f.num.max_exp().map_or(i64::MIN, |m| m.halves() + extra)
        };
        HalfExp(deg(self).max(deg(other)).max(0) + 1)
    }

    /// Laurent expansion known below `order`; denominators must be units.
    pub fn to_series(&self, order: HalfExp) -> Result<Series> {
        if !self.den_const.is_one() {
            return Err(Error::NonUnit { exponent: HalfExp::ZERO, coefficient: self.den_const.clone() });
        }
        let mut s = self.num.truncated(order);
        for (&(sign, e), &k) in &self.den {
            for _ in 0..k {
                s = s.div_one_minus(sign, HalfExp(e), order);
            }
        }
        Ok(s)
    }
}

impl fmt::Display for QFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        if self.den_const.is_positive() && !self.den_const.is_one() {
            write!(f, " / {}", self.den_const)?;
        }
        for (&(s, e), &k) in &self.den {
            let m = Monomial { sign: if s > 0 { Sign::Pos } else { Sign::Neg }, exp: HalfExp(e) };
            write!(f, " / (1 - {m})")?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: HalfExp = HalfExp::from_q(1);

    #[test]
    fn sum_of_fractions_is_exact() {
        // 1/(1-q) - q/(1-q) = 1
        let a = QFraction::one().div_one_minus(Monomial::q(1)).unwrap();
        let b = a.mul_monomial(Monomial::q(1));
        let d = a.sub(&b);
        assert_eq!(d.first_difference(&QFraction::one()), None);
    }

    #[test]
    fn negative_exponent_binomials_normalize() {
        // 1/(1 - q^-1) = -q/(1 - q)
        let a = QFraction::one().div_one_minus(Monomial::q(-1)).unwrap();
        let b = QFraction::monomial(Monomial::neg(Q)).div_one_minus(Monomial::q(1)).unwrap();
        assert_eq!(a.first_difference(&b), None);
        let s = a.to_series(HalfExp::from_q(5)).unwrap();
        assert_eq!(s.coeff(HalfExp::from_q(3)).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn poles_and_non_units() {
        assert!(matches!(QFraction::one().div_one_minus(Monomial::ONE), Err(Error::Pole(_))));
        let half = QFraction::one().div_one_minus(Monomial::neg(HalfExp::ZERO)).unwrap();
        assert!(matches!(half.to_series(Q), Err(Error::NonUnit { .. })));
        // but 2 * (1/2) is still exactly 1
        assert_eq!(half.scale(2).first_difference(&QFraction::one()), None);
    }

    #[test]
    fn reciprocal_pochhammer_with_negative_length_vanishes() {
        // 1/(q;q)_{-l} = (q^{1-l};q)_l contains the factor 1 - q^0
        for l in 1..6 {
            assert!(QFraction::recip_poch(Monomial::q(1), Q, -l).unwrap().is_zero());
            assert!(QFraction::recip_poch(Monomial::q(2), HalfExp::from_q(2), -l).unwrap().is_zero());
        }
        assert!(!QFraction::recip_poch(Monomial::q(1), Q, 3).unwrap().is_zero());
    }

    #[test]
    fn expansion_matches_series_inversion() {
        let f = QFraction::from_poly(Series::exact_monomial(3, HalfExp(1)))
            .div_poch(Monomial::q(1), Q, 4)
            .unwrap();
        let order = HalfExp::from_q(30);
        let den = crate::qkit::poch_finite(Monomial::q(1), Q, 4, None);
        let direct = &Series::exact_monomial(3, HalfExp(1)) * &den.invert(order).unwrap();
        assert_eq!(f.to_series(order).unwrap(), direct.truncated(order));
    }
}
