//! Partition pairs counted by generating functions, an enumeration oracle,
//! and the alternating sums of the partition inequalities.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qkit::{infinite_product, Monomial};
use crate::report::{Mismatch, VerificationReport};
use crate::series::{HalfExp, Series};
use crate::truncated::lookup_truncated;

/// Largest `n` the enumeration oracle accepts.
pub const BRUTE_FORCE_BOUND: i64 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionFamily {
    /// `lambda` ordinary, `mu` into even parts.
    Ppe,
    /// Two ordinary partitions.
    Pp,
    /// `lambda` into even parts, `mu` with distinct odd parts.
    Pepod,
}

impl PartitionFamily {
    pub const ALL: [PartitionFamily; 3] = [PartitionFamily::Ppe, PartitionFamily::Pp, PartitionFamily::Pepod];

    pub fn tag(self) -> &'static str {
        match self {
            PartitionFamily::Ppe => "ppe",
            PartitionFamily::Pp => "pp",
            PartitionFamily::Pepod => "pepod",
        }
    }

    fn factors(self) -> &'static [(Monomial, HalfExp, i32)] {
        const Q1: HalfExp = HalfExp::from_q(1);
        const Q2: HalfExp = HalfExp::from_q(2);
        const PPE: &[(Monomial, HalfExp, i32)] = &[(Monomial::q(1), Q1, -1), (Monomial::q(2), Q2, -1)];
        const PP: &[(Monomial, HalfExp, i32)] = &[(Monomial::q(1), Q1, -2)];
        const PEPOD: &[(Monomial, HalfExp, i32)] = &[(Monomial::neg(Q1), Q2, 1), (Monomial::q(2), Q2, -2)];
        match self {
            PartitionFamily::Ppe => PPE,
            PartitionFamily::Pp => PP,
            PartitionFamily::Pepod => PEPOD,
        }
    }

    /// Generating function known below `q^order`.
    pub fn generating_function(self, order: HalfExp) -> Result<Series> {
        infinite_product(self.factors(), order)
    }

    fn admits(self, lambda: &[i64], mu: &[i64]) -> bool {
        let even = |p: &[i64]| p.iter().all(|x| x % 2 == 0);
        match self {
            PartitionFamily::Ppe => even(mu),
            PartitionFamily::Pp => true,
            PartitionFamily::Pepod => {
                let odd: Vec<i64> = mu.iter().copied().filter(|x| x % 2 == 1).collect();
                even(lambda) && odd.windows(2).all(|w| w[0] != w[1])
            }
        }
    }
}

impl fmt::Display for PartitionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for PartitionFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PartitionFamily::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

/// Coefficients `0..=n_max` of the family's generating function.
pub fn partition_table(family: PartitionFamily, n_max: i64) -> Result<Vec<BigInt>> {
    if n_max < 0 {
        return Err(Error::InvalidArgument("n_max must be nonnegative".into()));
    }
    let s = family.generating_function(HalfExp::from_q(n_max + 1))?;
    (0..=n_max).map(|n| s.coeff(HalfExp::from_q(n))).collect()
}

/// All partitions of `n` as nonincreasing part lists.
fn partitions_of(n: i64) -> Vec<Vec<i64>> {
    fn go(rest: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Counts pairs `(lambda, mu)` with `|lambda| + |mu| = n` by listing them.
pub fn brute_force(family: PartitionFamily, n: i64) -> Result<u64> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("n = {n} is negative")));
    }
    if n > BRUTE_FORCE_BOUND {
        return Err(Error::OracleBound { n: n as usize, bound: BRUTE_FORCE_BOUND as usize });
    }
    let all: Vec<Vec<Vec<i64>>> = (0..=n).map(partitions_of).collect();
    let mut count = 0u64;
    for a in 0..=n {
        for lambda in &all[a as usize] {
            for mu in &all[(n - a) as usize] {
                if family.admits(lambda, mu) {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// `p(0..=n_max)` by Euler's pentagonal recurrence.
pub fn pentagonal_partition_numbers(n_max: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n_max + 1];
    p[0] = BigInt::from(1);
    for n in 1..=n_max as i64 {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let mut add = p[(n - g1) as usize].clone();
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                add += &p[(n - g2) as usize];
            }
            if sign > 0 {
                acc += add;
            } else {
                acc -= add;
            }
        }
        p[n as usize] = acc;
    }
    p
}

/// `pp(0..=n_max)` as the self-convolution of `p(n)`.
pub fn pp_by_convolution(n_max: usize) -> Vec<BigInt> {
    let p = pentagonal_partition_numbers(n_max);
    (0..=n_max).map(|n| (0..=n).map(|a| &p[a] * &p[n - a]).sum()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InequalityTheorem {
    Tt1,
    Tt2,
    Tt3,
}

impl InequalityTheorem {
    pub const ALL: [InequalityTheorem; 3] = [InequalityTheorem::Tt1, InequalityTheorem::Tt2, InequalityTheorem::Tt3];

    pub fn tag(self) -> &'static str {
        match self {
            InequalityTheorem::Tt1 => "tt1",
            InequalityTheorem::Tt2 => "tt2",
            InequalityTheorem::Tt3 => "tt3",
        }
    }

    pub fn family(self) -> PartitionFamily {
        match self {
            InequalityTheorem::Tt1 => PartitionFamily::Ppe,
            InequalityTheorem::Tt2 => PartitionFamily::Pp,
            InequalityTheorem::Tt3 => PartitionFamily::Pepod,
        }
    }

    /// Truncated theorem whose tail yields the inequality.
    pub fn truncated_id(self) -> &'static str {
        match self {
            InequalityTheorem::Tt1 => "t1-2",
            InequalityTheorem::Tt2 => "t1-6",
            InequalityTheorem::Tt3 => "t1-7",
        }
    }

    /// `(argument, sign)` pairs of the alternating sum, before `(-1)^m`.
    pub fn terms(self, m: i64, big_n: i64) -> Vec<(i64, i64)> {
        let mut v = Vec::new();
        for n in 0..=m {
            match self {
                InequalityTheorem::Tt1 => {
                    for j in -n..=n {
                        let base = big_n + j * j - 2 * n * n;
                        v.push((base - n, alt(j)));
                        v.push((base - 3 * n - 1, -alt(j)));
                    }
                }
                InequalityTheorem::Tt2 => {
                    for j in -n - 1..=n {
                        let base = big_n - 2 * n * n + j * (3 * j + 1) / 2;
                        v.push((base - 3 * n - 1, alt(j + 1)));
                        v.push((base - 5 * n - 3, -alt(j + 1)));
                    }
                }
                InequalityTheorem::Tt3 => {
                    for j in -n - 1..=n {
                        let base = big_n - 3 * n * n + j * (2 * j + 1);
                        v.push((base - 4 * n - 1, alt(j + 1)));
                        v.push((base - 8 * n - 5, -alt(j + 1)));
                    }
                }
            }
        }
        v
    }

    /// Largest partition-function argument over `m <= m_max`, `N <= n_max`.
    pub fn max_argument(self, m_max: i64, n_max: i64) -> i64 {
        (0..=m_max)
            .flat_map(|m| self.terms(m, n_max))
            .map(|(a, _)| a)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for InequalityTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for InequalityTheorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        InequalityTheorem::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

fn alt(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub theorem: InequalityTheorem,
    pub m: i64,
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(serialize_with = "as_string")]
    pub value: BigInt,
    pub pass: bool,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl fmt::Display for InequalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "pass" } else { "fail" };
        write!(f, "{} m={} N={} value={} {}", self.theorem, self.m, self.n, self.value, status)
    }
}

/// A partition table sized for one theorem's `(m, N)` box.
pub struct InequalityTables {
    theorem: InequalityTheorem,
    table: Vec<BigInt>,
}

impl InequalityTables {
    pub fn new(theorem: InequalityTheorem, m_max: i64, n_max: i64) -> Result<Self> {
        if m_max < 0 || n_max < 0 {
            return Err(Error::InvalidArgument("m and N must be nonnegative".into()));
        }
        let top = theorem.max_argument(m_max, n_max).max(0);
        Ok(InequalityTables { theorem, table: partition_table(theorem.family(), top)? })
    }

    fn at(&self, arg: i64) -> Result<&BigInt> {
        static ZERO: std::sync::OnceLock<BigInt> = std::sync::OnceLock::new();
        if arg < 0 {
            return Ok(ZERO.get_or_init(BigInt::zero));
        }
        self.table
            .get(arg as usize)
            .ok_or_else(|| Error::InvalidArgument(format!("argument {arg} beyond the sized table")))
    }

    /// The sum without the leading `(-1)^m`.
    pub fn alternating_sum(&self, m: i64, big_n: i64) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for (arg, sign) in self.theorem.terms(m, big_n) {
            let v = self.at(arg)?;
            if sign > 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        Ok(acc)
    }

    pub fn value(&self, m: i64, big_n: i64) -> Result<InequalityReport> {
        let value = BigInt::from(alt(m)) * self.alternating_sum(m, big_n)?;
        Ok(InequalityReport { theorem: self.theorem, m, n: big_n, pass: !value.is_negative(), value })
    }
}

pub fn inequality_value(theorem: InequalityTheorem, m: i64, big_n: i64) -> Result<InequalityReport> {
    InequalityTables::new(theorem, m, big_n)?.value(m, big_n)
}

/// Every `(m, N)` with `m <= m_max`, `N <= n_max`, in row-major order.
pub fn inequality_grid(theorem: InequalityTheorem, m_max: i64, n_max: i64) -> Result<Vec<InequalityReport>> {
    let tables = InequalityTables::new(theorem, m_max, n_max)?;
    let mut out = Vec::new();
    for m in 0..=m_max {
        for n in 0..=n_max {
            out.push(tables.value(m, n)?);
        }
    }
    Ok(out)
}

/// Compares the alternating sum at every `N <= n_max` with `[q^N]` of the
/// truncated theorem's right side `1 + (-1)^m q^P tail(m)`.
pub fn tail_cross_check(theorem: InequalityTheorem, m: i64, n_max: i64) -> Result<VerificationReport> {
    tail_cross_check_against(theorem, theorem.truncated_id(), m, n_max)
}

/// As [`tail_cross_check`] with the truncated theorem named explicitly.
pub fn tail_cross_check_against(
    theorem: InequalityTheorem,
    truncated_id: &str,
    m: i64,
    n_max: i64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let entry = lookup_truncated(truncated_id)?;
    let order = HalfExp::from_q(n_max + 1);
    let rhs = entry.rhs(m, order)?;
    let tables = InequalityTables::new(theorem, m, n_max)?;
    let mut mismatch = None;
    for n in 0..=n_max {
        let lhs = tables.alternating_sum(m, n)?;
        let c = rhs.coeff(HalfExp::from_q(n))?;
        if lhs != c {
            mismatch = Some(Mismatch { exponent: HalfExp::from_q(n), lhs, rhs: c });
            break;
        }
    }
    let id = format!("{}:m={}:cross-check:{}", theorem, m, entry.id);
    Ok(VerificationReport::from_comparison(id, order, mismatch, started))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn pp_opening_values() {
        assert_eq!(ints(&partition_table(PartitionFamily::Pp, 5).unwrap()), vec![1, 2, 5, 10, 20, 36]);
    }

    #[test]
    fn ppe_at_zero() {
        assert_eq!(ints(&partition_table(PartitionFamily::Ppe, 0).unwrap()), vec![1]);
    }

    #[test]
    fn brute_force_small_cases() {
        assert_eq!(brute_force(PartitionFamily::Pp, 2).unwrap(), 5);
        assert_eq!(brute_force(PartitionFamily::Ppe, 1).unwrap(), 1);
        for f in PartitionFamily::ALL {
            assert_eq!(brute_force(f, 0).unwrap(), 1);
        }
        assert!(matches!(brute_force(PartitionFamily::Pp, 31), Err(Error::OracleBound { .. })));
    }

    #[test]
    fn pepod_listing_at_three() {
        // lambda even: {}, mu in {3, 21, 111 (odd 1 repeated: no), 2+1}: (,3) (,21) (2,1)
        assert_eq!(brute_force(PartitionFamily::Pepod, 3).unwrap(), 3);
    }

    #[test]
    fn tables_match_enumeration_to_twelve() {
        for f in PartitionFamily::ALL {
            let t = partition_table(f, 12).unwrap();
            for n in 0..=12 {
                assert_eq!(t[n as usize], BigInt::from(brute_force(f, n).unwrap()), "{f} {n}");
            }
        }
    }

    #[test]
    fn pentagonal_numbers() {
        let p = pentagonal_partition_numbers(10);
        assert_eq!(ints(&p), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn inequality_trivial_values() {
        let r = inequality_value(InequalityTheorem::Tt1, 0, 0).unwrap();
        assert_eq!(r.value, BigInt::from(1));
        assert!(r.pass);
        let t = partition_table(PartitionFamily::Ppe, 10).unwrap();
        let r = inequality_value(InequalityTheorem::Tt1, 0, 10).unwrap();
        assert_eq!(r.value, &t[10] - &t[9]);
        assert!(inequality_value(InequalityTheorem::Tt2, 1, 20).unwrap().pass);
    }

    #[test]
    fn odd_m_at_zero_is_negative() {
        // only pp_e(0) survives, and (-1)^m flips it
        let r = inequality_value(InequalityTheorem::Tt1, 1, 0).unwrap();
        assert_eq!(r.value, BigInt::from(-1));
    }

    #[test]
    fn table_bound_never_exceeds_n() {
        for t in InequalityTheorem::ALL {
            assert!(t.max_argument(5, 40) <= 40);
        }
    }

    #[test]
    fn cross_check_small() {
        for t in [InequalityTheorem::Tt1, InequalityTheorem::Tt2] {
            for m in 0..3 {
                assert!(tail_cross_check(t, m, 40).unwrap().passed(), "{t} {m}");
            }
        }
    }
}
