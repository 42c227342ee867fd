//! Generic evaluator for Hecke-type double sums over `n >= 0` and an
//! affine inner range.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::series::{HalfExp, Series};

/// Number of consecutive outer indices whose terms all lie at or above the
/// order before the outer loop stops.
pub const DEFAULT_WINDOW: usize = 4;

/// `(a*n + b) / d`, rounded toward the inside of the range it bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

impl Bound {
    pub const fn new(a: i64, b: i64, d: i64) -> Self {
        Bound { a, b, d }
    }

    fn floor(self, n: i64) -> i64 {
        Integer::div_floor(&(self.a * n + self.b), &self.d)
    }

    fn ceil(self, n: i64) -> i64 {
        Integer::div_ceil(&(self.a * n + self.b), &self.d)
    }
}

/// `Q(n, j) = (nn n^2 + nj n j + jj j^2 + n1 n + j1 j + c) / den` in powers of q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quadratic {
    pub nn: i64,
    pub nj: i64,
    pub jj: i64,
    pub n1: i64,
    pub j1: i64,
    pub c: i64,
    pub den: i64,
}

impl Quadratic {
    /// Exponent in half-units; `2 * numerator` must be divisible by `den`.
    pub fn halves(&self, n: i64, j: i64) -> Result<i64> {
        let num = self.nn * n * n + self.nj * n * j + self.jj * j * j + self.n1 * n + self.j1 * j + self.c;
        let (q, r) = (2 * num).div_rem(&self.den);
        if r != 0 {
            return Err(Error::InvalidArgument(format!("exponent at (n={n}, j={j}) is not a multiple of 1/2")));
        }
        Ok(q)
    }
}

/// `(1 + sign * q^(c*n + d))` with exponent in powers of q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtraFactor {
    pub sign: i8,
    pub c: i64,
    pub d: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeckeSumSpec {
    pub inner_lo: Bound,
    pub inner_hi: Bound,
    pub exponent: Quadratic,
    /// Parity of `sn*n + sj*j + s0` gives the sign.
    pub sign: (i64, i64, i64),
    pub extra: Option<ExtraFactor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeckeOptions {
    pub window: usize,
    /// Outer index beyond which the sum is declared non-convergent.
    pub hard_cap: Option<i64>,
}

impl Default for HeckeOptions {
    fn default() -> Self {
        HeckeOptions { window: DEFAULT_WINDOW, hard_cap: env_hard_cap() }
    }
}

/// `HECKE_HARD_CAP`, when set to an integer.
pub fn env_hard_cap() -> Option<i64> {
    std::env::var("HECKE_HARD_CAP").ok().and_then(|v| v.trim().parse().ok())
}

pub fn hecke_sum(spec: &HeckeSumSpec, order: HalfExp) -> Result<Series> {
    hecke_sum_with(spec, order, HeckeOptions::default())
}

pub fn hecke_sum_with(spec: &HeckeSumSpec, order: HalfExp, opts: HeckeOptions) -> Result<Series> {
    if order.halves() <= 0 {
        return Ok(Series::zero(order));
    }
    let t = order.halves();
    let cap = opts.hard_cap.unwrap_or(10 * t.max(1));
    let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
    let mut quiet = 0usize;
    let mut n = 0i64;
    while quiet < opts.window.max(1) {
        if n > cap {
            return Err(Error::NonConvergence { order, cap });
        }
        let (lo, hi) = (spec.inner_lo.ceil(n), spec.inner_hi.floor(n));
        let extra = spec.extra.map(|f| (f.sign, 2 * (f.c * n + f.d)));
        let mut min_here = i64::MAX;
        for j in lo..=hi {
            let e = spec.exponent.halves(n, j)?;
            let s: i64 = if (spec.sign.0 * n + spec.sign.1 * j + spec.sign.2).rem_euclid(2) == 0 { 1 } else { -1 };
            let mut emit = |e: i64, s: i64| {
                min_here = min_here.min(e);
                if e < t {
                    *acc.entry(e).or_insert(0) += s;
                }
            };
            emit(e, s);
            if let Some((fs, fe)) = extra {
                emit(e + fe, s * i64::from(fs));
            }
        }
        quiet = if min_here >= t { quiet + 1 } else { 0 };
        n += 1;
    }
    Ok(Series::from_terms(acc.into_iter().map(|(e, c)| (HalfExp(e), BigInt::from(c))), Some(order)))
}

/// `sum_{n in Z} terms(n)` where `terms` lists `(exponent, coefficient)`
/// pairs; each direction stops after `window` consecutive quiet indices.
pub fn bilateral_sum<F>(order: HalfExp, window: usize, terms: F) -> Result<Series>
where
    F: Fn(i64) -> Vec<(HalfExp, i64)>,
{
    if order.halves() <= 0 {
        return Ok(Series::zero(order));
    }
    let cap = env_hard_cap().unwrap_or(10 * order.halves());
    let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
    for dir in [1i64, -1] {
        let mut quiet = 0usize;
        let mut k = if dir > 0 { 0 } else { 1 };
        while quiet < window.max(1) {
            if k > cap {
                return Err(Error::NonConvergence { order, cap });
            }
            let mut min_here = i64::MAX;
            for (e, c) in terms(dir * k) {
                min_here = min_here.min(e.halves());
                if e < order {
                    *acc.entry(e.halves()).or_insert(0) += c;
                }
            }
            quiet = if min_here >= order.halves() { quiet + 1 } else { 0 };
            k += 1;
        }
    }
    Ok(Series::from_terms(acc.into_iter().map(|(e, c)| (HalfExp(e), BigInt::from(c))), Some(order)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> HalfExp {
        HalfExp::from_q(k)
    }

    fn jacobi_cube() -> HeckeSumSpec {
        HeckeSumSpec {
            inner_lo: Bound::new(-1, 0, 1),
            inner_hi: Bound::new(1, 0, 1),
            exponent: Quadratic { nn: 1, nj: 0, jj: 0, n1: 1, j1: 0, c: 0, den: 2 },
            sign: (1, 0, 0),
            extra: None,
        }
    }

    #[test]
    fn jacobi_cube_opening_terms() {
        let s = hecke_sum(&jacobi_cube(), q(10)).unwrap();
        // brute force: m contributes (2m+1)(-1)^m q^(m(m+1)/2)
        let mut expected = [0i64; 10];
        for m in 0..10i64 {
            let e = m * (m + 1) / 2;
            if e < 10 {
                expected[e as usize] += (2 * m + 1) * if m % 2 == 0 { 1 } else { -1 };
            }
        }
        let oracle = Series::from_terms(
            expected.iter().enumerate().map(|(e, &c)| (q(e as i64), BigInt::from(c))),
            Some(q(10)),
        );
        assert_eq!(s, oracle);
        assert_eq!(s.coeff(q(1)).unwrap(), BigInt::from(-3));
        assert_eq!(s.coeff(q(6)).unwrap(), BigInt::from(-7));
    }

    #[test]
    fn order_zero_is_the_zero_series() {
        assert!(hecke_sum(&jacobi_cube(), HalfExp::ZERO).unwrap().is_zero());
    }

    #[test]
    fn hard_cap_reports_non_convergence() {
        // the exponent never grows with n, so the loop cannot settle
        let spec = HeckeSumSpec {
            inner_lo: Bound::new(0, 0, 1),
            inner_hi: Bound::new(0, 0, 1),
            exponent: Quadratic { nn: 0, nj: 0, jj: 0, n1: 0, j1: 0, c: 0, den: 1 },
            sign: (0, 0, 0),
            extra: None,
        };
        let opts = HeckeOptions { window: 4, hard_cap: Some(50) };
        assert!(matches!(hecke_sum_with(&spec, q(5), opts), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn window_does_not_change_output() {
        let s4 = hecke_sum_with(&jacobi_cube(), q(80), HeckeOptions { window: 4, hard_cap: None }).unwrap();
        let s8 = hecke_sum_with(&jacobi_cube(), q(80), HeckeOptions { window: 8, hard_cap: None }).unwrap();
        assert_eq!(s4, s8);
    }

    #[test]
    fn floor_and_ceil_bounds() {
        let b = Bound::new(-1, 0, 3);
        assert_eq!(b.ceil(4), -1);
        assert_eq!(b.floor(4), -2);
        assert_eq!(Bound::new(1, 0, 3).floor(5), 1);
    }
}
