//! Truncated Laurent series in `x = q^(1/2)` with arbitrary-precision integer
//! coefficients.
//!
//! A [`Series`] stores a dense run of coefficients starting at its lowest
//! nonzero exponent, together with a truncation bound: every coefficient at
//! an exponent below the bound is known exactly, nothing at or above it is.
//! A series without a bound is an exact Laurent polynomial.
//!
//! Invariants:
//! - exponents are counted in half-units of `q` ([`HalfExp`]);
//! - `coeffs` is either empty (the zero series) or starts and ends with a
//!   nonzero coefficient;
//! - every stored exponent lies strictly below the truncation bound;
//! - a zero series reports its lowest exponent as its truncation bound.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::report::Mismatch;

/// An exponent of `q` measured in units of `1/2`: `q^(3/2)` is `HalfExp(3)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfExp(pub i64);

impl HalfExp {
    pub const ZERO: HalfExp = HalfExp(0);

    pub const fn new(halves: i64) -> Self {
        HalfExp(halves)
    }

    /// Whole powers of `q`.
    pub const fn from_q(q: i64) -> Self {
        HalfExp(2 * q)
    }

    pub const fn halves(self) -> i64 {
        self.0
    }

    pub const fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Add for HalfExp {
    type Output = HalfExp;
    fn add(self, rhs: HalfExp) -> HalfExp {
        HalfExp(self.0 + rhs.0)
    }
}

impl Sub for HalfExp {
    type Output = HalfExp;
    fn sub(self, rhs: HalfExp) -> HalfExp {
        HalfExp(self.0 - rhs.0)
    }
}

impl Neg for HalfExp {
    type Output = HalfExp;
    fn neg(self) -> HalfExp {
        HalfExp(-self.0)
    }
}

impl Mul<i64> for HalfExp {
    type Output = HalfExp;
    fn mul(self, rhs: i64) -> HalfExp {
        HalfExp(self.0 * rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    min_exp: i64,
    coeffs: Vec<BigInt>,
    /// `None` marks an exact Laurent polynomial.
    trunc: Option<i64>,
}

fn add_bound(bound: Option<i64>, val: Option<i64>) -> Option<i64> {
    match (bound, val) {
        (Some(b), Some(v)) => Some(b + v),
        _ => None,
    }
}

fn min_bound(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl Series {
    pub fn zero(trunc: HalfExp) -> Self {
        Series { min_exp: trunc.0, coeffs: Vec::new(), trunc: Some(trunc.0) }
    }

    pub fn exact_zero() -> Self {
        Series { min_exp: 0, coeffs: Vec::new(), trunc: None }
    }

    pub fn one(trunc: HalfExp) -> Self {
        Series::from_coeffs(HalfExp::ZERO, vec![BigInt::one()], Some(trunc))
    }

    pub fn exact_one() -> Self {
        Series::exact_monomial(1, HalfExp::ZERO)
    }

    /// `c * q^(e/2)` known below `trunc`.
    pub fn monomial(c: impl Into<BigInt>, e: HalfExp, trunc: HalfExp) -> Result<Self> {
        if e >= trunc {
            return Err(Error::TruncationBound { exponent: e, trunc });
        }
        Ok(Series::from_coeffs(e, vec![c.into()], Some(trunc)))
    }

    pub fn exact_monomial(c: impl Into<BigInt>, e: HalfExp) -> Self {
        Series::from_coeffs(e, vec![c.into()], None)
    }

    /// Builds a series whose coefficient at `min_exp + i` is `coeffs[i]`.
    /// Entries at or beyond `trunc` are discarded.
    pub fn from_coeffs(min_exp: HalfExp, coeffs: Vec<BigInt>, trunc: Option<HalfExp>) -> Self {
        let mut s = Series { min_exp: min_exp.0, coeffs, trunc: trunc.map(|t| t.0) };
        s.normalize();
        s
    }

    pub fn from_i64s(min_exp: HalfExp, coeffs: &[i64], trunc: Option<HalfExp>) -> Self {
        Series::from_coeffs(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect(), trunc)
    }

    /// Sums `(exponent, coefficient)` pairs; duplicates accumulate.
    pub fn from_terms<I>(terms: I, trunc: Option<HalfExp>) -> Self
    where
        I: IntoIterator<Item = (HalfExp, BigInt)>,
    {
        let terms: Vec<(i64, BigInt)> = terms
            .into_iter()
            .filter(|(e, _)| trunc.is_none_or(|t| e.0 < t.0))
            .map(|(e, c)| (e.0, c))
            .collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return match trunc {
                Some(t) => Series::zero(t),
                None => Series::exact_zero(),
            };
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap_or(lo);
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Series::from_coeffs(HalfExp(lo), coeffs, trunc)
    }

    fn normalize(&mut self) {
        if let Some(t) = self.trunc {
            let keep = (t - self.min_exp).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.min_exp = self.trunc.unwrap_or(0);
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
    }

    pub fn trunc(&self) -> Option<HalfExp> {
        self.trunc.map(HalfExp)
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<HalfExp> {
        (!self.is_zero()).then_some(HalfExp(self.min_exp))
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<HalfExp> {
        (!self.is_zero()).then(|| HalfExp(self.min_exp + self.coeffs.len() as i64 - 1))
    }

    /// Lowest exponent that may carry a nonzero coefficient; `None` for the
    /// exact zero polynomial.
    fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            self.trunc
        } else {
            Some(self.min_exp)
        }
    }

    pub fn lowest_coeff(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    pub fn coeff(&self, e: HalfExp) -> Result<BigInt> {
        if let Some(t) = self.trunc {
            if e.0 >= t {
                return Err(Error::TruncationBound { exponent: e, trunc: HalfExp(t) });
            }
        }
        Ok(self.coeff_unchecked(e.0))
    }

    fn coeff_unchecked(&self, e: i64) -> BigInt {
        if e < self.min_exp {
            return BigInt::zero();
        }
        self.coeffs.get((e - self.min_exp) as usize).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (HalfExp, &BigInt)> {
        let base = self.min_exp;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (HalfExp(base + i as i64), c))
    }

    /// Forgets everything at or above `order`.
    pub fn truncated(&self, order: HalfExp) -> Series {
        let trunc = min_bound(self.trunc, Some(order.0));
        let mut s = Series { min_exp: self.min_exp, coeffs: self.coeffs.clone(), trunc };
        if s.is_zero() {
            s.min_exp = trunc.unwrap_or(0);
        }
        s.normalize();
        s
    }

    /// Multiplies by `sign * q^(shift/2)`; exact and cheap.
    pub fn shifted(&self, sign: i8, shift: HalfExp) -> Series {
        let coeffs = if sign < 0 { self.coeffs.iter().map(|c| -c).collect() } else { self.coeffs.clone() };
        let trunc = self.trunc.map(|t| t + shift.0);
        let min_exp = if self.is_zero() { trunc.unwrap_or(0) } else { self.min_exp + shift.0 };
        Series { min_exp, coeffs, trunc }
    }

    pub fn scale(&self, k: &BigInt) -> Series {
        let coeffs = self.coeffs.iter().map(|c| c * k).collect();
        Series::from_coeffs(HalfExp(self.min_exp), coeffs, self.trunc())
    }

    pub fn pow(&self, n: u32) -> Series {
        let mut acc = Series::exact_one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse known below `order` (or below the precision
    /// the input supports, whichever is smaller).
    pub fn invert(&self, order: HalfExp) -> Result<Series> {
        let a0 = self.lowest_coeff().ok_or(Error::ZeroInverse)?;
        let unit: i8 = if a0.is_one() {
            1
        } else if (-a0).is_one() {
            -1
        } else {
            return Err(Error::NonUnit { exponent: HalfExp(self.min_exp), coefficient: a0.clone() });
        };
        let v = self.min_exp;
        let res_trunc = match self.trunc {
            Some(t) => order.0.min(t - 2 * v),
            None => order.0,
        };
        let n = res_trunc + v;
        if n <= 0 {
            return Ok(Series::zero(HalfExp(res_trunc)));
        }
        let coeffs = invert_small(&self.coeffs, unit, n as usize)
            .unwrap_or_else(|| invert_big(&self.coeffs, unit, n as usize));
        Ok(Series::from_coeffs(HalfExp(-v), coeffs, Some(HalfExp(res_trunc))))
    }

    /// Dense coefficients starting at [`Series::min_exp`].
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Power-series quotient by `1 - sign*q^(e/2)` (`e > 0`), known below
    /// `min(trunc, order)`.
    pub fn div_one_minus(&self, sign: i8, e: HalfExp, order: HalfExp) -> Series {
        assert!(e.0 > 0, "divisor must have positive exponent");
        let bound = self.trunc.map_or(order.0, |t| t.min(order.0));
        if self.is_zero() {
            return Series::zero(HalfExp(bound));
        }
        let len = (bound - self.min_exp).max(0) as usize;
        let step = e.0 as usize;
        let mut b: Vec<BigInt> = Vec::with_capacity(len);
        for i in 0..len {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_default();
            if i >= step && !b[i - step].is_zero() {
                if sign < 0 {
                    c -= &b[i - step];
                } else {
                    c += &b[i - step];
                }
            }
            b.push(c);
        }
        Series::from_coeffs(HalfExp(self.min_exp), b, Some(HalfExp(bound)))
    }

    /// Exact polynomial quotient by `1 - sign*q^(e/2)` (`e > 0`).
    pub fn div_exact_one_minus(&self, sign: i8, e: HalfExp) -> Result<Series> {
        assert!(e.0 > 0, "divisor must have positive exponent");
        if self.trunc.is_some() {
            return Err(Error::InexactDivision("dividend is truncated".into()));
        }
        if self.is_zero() {
            return Ok(Series::exact_zero());
        }
        let d = self.coeffs.len();
        let step = e.0 as usize;
        if d <= step {
            return Err(Error::InexactDivision(format!("degree too small for 1 - q^({}/2)", e.0)));
        }
        let qlen = d - step;
        let mut b: Vec<BigInt> = Vec::with_capacity(qlen);
        for i in 0..d {
            let mut c = self.coeffs[i].clone();
            if i >= step {
                if sign < 0 {
                    c -= &b[i - step];
                } else {
                    c += &b[i - step];
                }
            }
            if i < qlen {
                b.push(c);
            } else if !c.is_zero() {
                return Err(Error::InexactDivision(format!("nonzero remainder dividing by 1 - q^({}/2)", e.0)));
            }
        }
        Ok(Series::from_coeffs(HalfExp(self.min_exp), b, None))
    }

    /// Lowest exponent below `order` where `a` and `b` differ.
    pub fn equal_up_to(a: &Series, b: &Series, order: HalfExp) -> Result<Option<Mismatch>> {
        for s in [a, b] {
            if let Some(t) = s.trunc {
                if order.0 > t {
                    return Err(Error::InsufficientPrecision { requested: order, available: HalfExp(t) });
                }
            }
        }
        Ok(first_difference_below(a, b, order.0))
    }

    /// First difference anywhere both series are known.
    pub fn first_difference(a: &Series, b: &Series) -> Option<Mismatch> {
        let bound = match min_bound(a.trunc, b.trunc) {
            Some(t) => t,
            None => {
                let hi_a = a.max_exp().map_or(i64::MIN, |e| e.0);
                let hi_b = b.max_exp().map_or(i64::MIN, |e| e.0);
                hi_a.max(hi_b).saturating_add(1)
            }
        };
        first_difference_below(a, b, bound)
    }

    /// Substitutes `q -> -q`; defined only when every exponent is integral.
    pub fn substitute_neg_q(&self) -> Result<Series> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.min_exp + i as i64;
            if c.is_zero() {
                coeffs.push(BigInt::zero());
            } else if e % 2 != 0 {
                return Err(Error::HalfIntegralExponent(HalfExp(e)));
            } else if (e / 2) % 2 != 0 {
                coeffs.push(-c);
            } else {
                coeffs.push(c.clone());
            }
        }
        Ok(Series::from_coeffs(HalfExp(self.min_exp), coeffs, self.trunc()))
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Series>>(items: I, trunc: Option<HalfExp>) -> Series {
        let mut acc = match trunc {
            Some(t) => Series::zero(t),
            None => Series::exact_zero(),
        };
        for s in items {
            acc = &acc + s;
        }
        acc
    }
}

fn first_difference_below(a: &Series, b: &Series, bound: i64) -> Option<Mismatch> {
    let lo = match (a.min_exp(), b.min_exp()) {
        (Some(x), Some(y)) => x.0.min(y.0),
        (Some(x), None) | (None, Some(x)) => x.0,
        (None, None) => return None,
    };
    (lo..bound).find_map(|e| {
        let (ca, cb) = (a.coeff_unchecked(e), b.coeff_unchecked(e));
        (ca != cb).then_some(Mismatch { exponent: HalfExp(e), lhs: ca, rhs: cb })
    })
}

fn to_small(coeffs: &[BigInt]) -> Option<Vec<i128>> {
    coeffs.iter().map(|c| c.to_i64().map(i128::from)).collect()
}

/// Convolution truncated to `len` outputs, in checked `i128`; `None` on overflow.
fn convolve_small(a: &[BigInt], b: &[BigInt], len: usize) -> Option<Vec<BigInt>> {
    let (a, b) = (to_small(a)?, to_small(b)?);
    let mut acc = vec![0i128; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        let tail = &mut acc[i..];
        for (slot, &y) in tail.iter_mut().zip(b.iter()) {
            if y != 0 {
                *slot = slot.checked_add(x.checked_mul(y)?)?;
            }
        }
    }
    Some(acc.into_iter().map(BigInt::from).collect())
}

fn odd_slots_empty(c: &[BigInt]) -> bool {
    c.iter().skip(1).step_by(2).all(Zero::is_zero)
}

/// Dispatches on coefficient size; series supported on whole powers of q
/// are convolved at half length.
fn convolve(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    if len > 2 && odd_slots_empty(a) && odd_slots_empty(b) {
        let even = |c: &[BigInt]| c.iter().step_by(2).cloned().collect::<Vec<_>>();
        let (ea, eb) = (even(a), even(b));
        let half = len.div_ceil(2);
        let packed = convolve_small(&ea, &eb, half).unwrap_or_else(|| convolve_big(&ea, &eb, half));
        let mut out = vec![BigInt::zero(); len];
        for (i, c) in packed.into_iter().enumerate() {
            out[2 * i] = c;
        }
        return out;
    }
    convolve_small(a, b, len).unwrap_or_else(|| convolve_big(a, b, len))
}

fn convolve_big(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (slot, y) in acc[i..].iter_mut().zip(b.iter()) {
            if !y.is_zero() {
                *slot += x * y;
            }
        }
    }
    acc
}

fn invert_small(a: &[BigInt], unit: i8, n: usize) -> Option<Vec<BigInt>> {
    let a = to_small(a)?;
    let u = i128::from(unit);
    let mut b = vec![0i128; n];
    b[0] = u;
    for k in 1..n {
        let mut s: i128 = 0;
        for i in 1..=k.min(a.len() - 1) {
            if a[i] != 0 && b[k - i] != 0 {
                s = s.checked_add(a[i].checked_mul(b[k - i])?)?;
            }
        }
        b[k] = -u * s;
    }
    Some(b.into_iter().map(BigInt::from).collect())
}

fn invert_big(a: &[BigInt], unit: i8, n: usize) -> Vec<BigInt> {
    let mut b = vec![BigInt::zero(); n];
    b[0] = BigInt::from(unit);
    for k in 1..n {
        let mut s = BigInt::zero();
        for i in 1..=k.min(a.len() - 1) {
            if !a[i].is_zero() && !b[k - i].is_zero() {
                s += &a[i] * &b[k - i];
            }
        }
        b[k] = if unit < 0 { s } else { -s };
    }
    b
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        combine(self, rhs, false)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        combine(self, rhs, true)
    }
}

fn combine(a: &Series, b: &Series, negate_b: bool) -> Series {
    let trunc = min_bound(a.trunc, b.trunc);
    let (lo, hi) = match (a.min_exp(), b.min_exp()) {
        (None, None) => {
            return match trunc {
                Some(t) => Series::zero(HalfExp(t)),
                None => Series::exact_zero(),
            }
        }
        (Some(x), None) => (x.0, a.max_exp().unwrap_or(x).0),
        (None, Some(y)) => (y.0, b.max_exp().unwrap_or(y).0),
        (Some(x), Some(y)) => (
            x.0.min(y.0),
            a.max_exp().unwrap_or(x).0.max(b.max_exp().unwrap_or(y).0),
        ),
    };
    let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in a.terms() {
        coeffs[(e.0 - lo) as usize] += c;
    }
    for (e, c) in b.terms() {
        if negate_b {
            coeffs[(e.0 - lo) as usize] -= c;
        } else {
            coeffs[(e.0 - lo) as usize] += c;
        }
    }
    Series::from_coeffs(HalfExp(lo), coeffs, trunc.map(HalfExp))
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.shifted(-1, HalfExp::ZERO)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let trunc = min_bound(add_bound(self.trunc, rhs.valuation()), add_bound(rhs.trunc, self.valuation()));
        if self.is_zero() || rhs.is_zero() {
            return match trunc {
                Some(t) => Series::zero(HalfExp(t)),
                None => Series::exact_zero(),
            };
        }
        let min_exp = self.min_exp + rhs.min_exp;
        let full = self.coeffs.len() + rhs.coeffs.len() - 1;
        let len = match trunc {
            Some(t) => full.min((t - min_exp).max(0) as usize),
            None => full,
        };
        if len == 0 {
            return Series::zero(HalfExp(trunc.unwrap_or(min_exp)));
        }
        let coeffs = convolve(&self.coeffs, &rhs.coeffs, len);
        Series::from_coeffs(HalfExp(min_exp), coeffs, trunc.map(HalfExp))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, e: HalfExp) -> fmt::Result {
    match e.0 {
        0 => Ok(()),
        2 => write!(f, "q"),
        h if h % 2 == 0 => write!(f, "q^{}", h / 2),
        h => write!(f, "q^({h}/2)"),
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            if !mag.is_one() || e.0 == 0 {
                write!(f, "{mag}")?;
            }
            fmt_power(f, e)?;
        }
        match self.trunc {
            Some(t) => {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "O(")?;
                if t == 0 {
                    write!(f, "1")?;
                } else {
                    fmt_power(f, HalfExp(t))?;
                }
                write!(f, ")")
            }
            None if first => write!(f, "0"),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> HalfExp {
        HalfExp::from_q(k)
    }

    fn poly(min_q: i64, cs: &[i64]) -> Series {
        // coefficients at whole powers of q starting at q^min_q
        let terms = cs.iter().enumerate().map(|(i, &c)| (q(min_q + i as i64), BigInt::from(c)));
        Series::from_terms(terms, None)
    }

    #[test]
    fn monomial_cases() {
        let one = Series::monomial(1, HalfExp::ZERO, HalfExp(100)).unwrap();
        assert_eq!(one.coeff(HalfExp::ZERO).unwrap(), BigInt::from(1));
        assert_eq!(one.min_exp(), Some(HalfExp::ZERO));

        let m = Series::monomial(-3, HalfExp(1), HalfExp(100)).unwrap();
        assert_eq!(m.coeff(HalfExp(1)).unwrap(), BigInt::from(-3));
        assert_eq!(m.terms().count(), 1);

        let z = Series::monomial(0, HalfExp(5), HalfExp(100)).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.trunc(), Some(HalfExp(100)));

        assert!(matches!(
            Series::monomial(1, HalfExp(100), HalfExp(100)),
            Err(Error::TruncationBound { .. })
        ));
    }

    #[test]
    fn addition_cases() {
        let t = Some(q(50));
        let a = Series::from_i64s(HalfExp::ZERO, &[1, 0, -1], t);
        let b = Series::from_i64s(q(1), &[1], t);
        assert_eq!(&a + &b, Series::one(q(50)));

        let s = poly(0, &[1, 2, 3]);
        let z = Series::zero(q(2));
        let sum = &s + &z;
        assert_eq!(sum.trunc(), Some(q(2)));
        assert_eq!(sum, s.truncated(q(2)));

        let inv_q = Series::exact_monomial(1, q(-1));
        assert!((&inv_q + &(-&inv_q)).is_zero());
    }

    #[test]
    fn multiplication_cases() {
        let x = Series::exact_monomial(1, HalfExp(1));
        assert_eq!(&x * &x, Series::exact_monomial(1, q(1)));

        let one_minus_q = poly(0, &[1, -1]);
        let geometric = Series::from_terms((0..20).map(|k| (q(k), BigInt::from(1))), Some(q(20)));
        let prod = &one_minus_q * &geometric;
        assert_eq!(prod.trunc(), Some(q(20)));
        assert_eq!(prod, Series::one(q(20)));

        assert_eq!(&poly(0, &[1, 1]) * &poly(0, &[1, -1]), poly(0, &[1, 0, -1]));
    }

    #[test]
    fn multiplication_truncation_rule() {
        let a = Series::from_i64s(q(-2), &[1, 0, 1], Some(q(5)));
        let b = Series::from_i64s(q(3), &[2, 1], Some(q(10)));
        let p = &a * &b;
        // min(a.trunc + b.min, b.trunc + a.min) = min(5 + 3, 10 - 2)
        assert_eq!(p.trunc(), Some(q(8)));
        assert_eq!(p.min_exp(), Some(q(1)));
    }

    #[test]
    fn inversion_cases() {
        let inv = poly(0, &[1, -1]).invert(q(10)).unwrap();
        assert_eq!(inv, Series::from_terms((0..10).map(|k| (q(k), BigInt::from(1))), Some(q(10))));

        assert_eq!(Series::exact_one().invert(q(10)).unwrap(), Series::one(q(10)));

        assert!(matches!(poly(0, &[2, -1]).invert(q(10)), Err(Error::NonUnit { .. })));
        assert!(matches!(Series::exact_zero().invert(q(10)), Err(Error::ZeroInverse)));
    }

    #[test]
    fn inversion_of_laurent_unit() {
        // (q^-1 - 1)^-1 = q / (1 - q) = q + q^2 + ...
        let a = poly(-1, &[1, -1]);
        let inv = a.invert(q(6)).unwrap();
        assert_eq!(inv.min_exp(), Some(q(1)));
        for k in 1..6 {
            assert_eq!(inv.coeff(q(k)).unwrap(), BigInt::from(1));
        }
        let back = &a * &inv;
        assert_eq!(Series::equal_up_to(&back, &Series::exact_one(), back.trunc().unwrap()).unwrap(), None);
    }

    #[test]
    fn inversion_falls_back_to_big_integers() {
        // 1/(1-q)^40 has coefficients C(k+39, 39), which leave i64 quickly.
        let base = poly(0, &[1, -1]).pow(40);
        let inv = base.invert(q(120)).unwrap();
        let c = inv.coeff(q(119)).unwrap();
        let mut expected = BigInt::one();
        for i in 0..39u32 {
            expected = expected * BigInt::from(119 + 39 - i) / BigInt::from(i + 1);
        }
        assert_eq!(c, expected);
        let back = &base * &inv;
        assert_eq!(back.truncated(q(120)), Series::one(q(120)));
    }

    #[test]
    fn coefficient_queries() {
        let s = poly(0, &[1, -1]).truncated(q(10));
        assert_eq!(s.coeff(q(1)).unwrap(), BigInt::from(-1));
        assert_eq!(s.coeff(q(-4)).unwrap(), BigInt::zero());
        assert!(matches!(s.coeff(q(10)), Err(Error::TruncationBound { .. })));
    }

    #[test]
    fn equality_up_to_order() {
        let s = poly(0, &[3, 1, 4, 1, 5]);
        assert_eq!(Series::equal_up_to(&s, &s, q(10)).unwrap(), None);

        let one = Series::exact_one();
        let other = &one + &Series::exact_monomial(1, q(50));
        assert_eq!(Series::equal_up_to(&one, &other, q(40)).unwrap(), None);
        let m = Series::equal_up_to(&one, &other, q(120)).unwrap().unwrap();
        assert_eq!(m.exponent, HalfExp(100));
        assert_eq!(m.lhs, BigInt::zero());
        assert_eq!(m.rhs, BigInt::one());

        let short = one.truncated(q(5));
        assert!(Series::equal_up_to(&short, &one, q(6)).is_err());
    }

    #[test]
    fn negated_q_substitution() {
        let s = poly(0, &[1, 1, 1, 1]);
        assert_eq!(s.substitute_neg_q().unwrap(), poly(0, &[1, -1, 1, -1]));
        assert!(Series::exact_monomial(1, HalfExp(1)).substitute_neg_q().is_err());
    }

    #[test]
    fn display_form() {
        let s = Series::from_i64s(HalfExp::ZERO, &[1, 0, -3, 2], Some(q(5)));
        assert_eq!(s.to_string(), "1 - 3q + 2q^(3/2) + O(q^5)");
        assert_eq!(Series::exact_zero().to_string(), "0");
    }
}
