//! Truncated theorems: an inverse product times a finite theta-type sum,
//! against `1 + (-1)^m q^P * tail(m)`, where the tail is a double sum over
//! `k > m` and `0 <= i <= k`.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::identities::catalog;
use crate::identities::hecke::env_hard_cap;
use crate::qkit::{gauss_binomial, infinite_product, times_one_minus, Monomial};
use crate::report::{Mismatch, VerificationReport};
use crate::series::{HalfExp, Series};

const WINDOW: usize = 4;

/// `prod_{r<i} (1 - num q^(r*step)) / (1 - q^((r+1)*step))`.
#[derive(Clone, Copy, Debug)]
struct Chain {
    num: Option<Monomial>,
    step: HalfExp,
}

impl Chain {
    fn factor(&self, r: i64) -> Option<Monomial> {
        self.num.map(|x| x.shift(self.step * r))
    }

    /// Valuation of each partial product up to `n`; `None` once a factor vanishes.
    fn valuations(&self, n: usize) -> Vec<Option<i64>> {
        let mut out = Vec::with_capacity(n + 1);
        let mut v = Some(0i64);
        out.push(v);
        for r in 0..n as i64 {
            v = match (v, self.factor(r)) {
                (None, _) => None,
                (Some(v), None) => Some(v),
                (Some(_), Some(x)) if x == Monomial::ONE => None,
                (Some(v), Some(x)) => Some(v + x.exp.halves().min(0)),
            };
            out.push(v);
        }
        out
    }

    /// Precision lost to negative exponents in factors `r >= i`.
    fn slack_from(&self, i: usize, n: usize) -> i64 {
        (i as i64..n as i64).filter_map(|r| self.factor(r)).map(|x| (-x.exp.halves()).max(0)).sum()
    }

    /// Partial products `0..=n`, entry `i` known below `targets[i]`.
    fn series(&self, targets: &[i64]) -> Vec<Series> {
        let n = targets.len() - 1;
        let mut need = targets.to_vec();
        for i in (0..n).rev() {
            need[i] = need[i].max(need[i + 1]);
        }
        let mut cur = Series::one(HalfExp(need[0] + self.slack_from(0, n)));
        let mut out = Vec::with_capacity(n + 1);
        out.push(cur.truncated(HalfExp(targets[0])));
        for i in 1..=n {
            let bound = HalfExp(need[i] + self.slack_from(i, n));
            if let Some(x) = self.factor(i as i64 - 1) {
                cur = times_one_minus(&cur, x);
            }
            cur = cur.div_one_minus(1, self.step * i as i64, bound);
            out.push(cur.truncated(HalfExp(targets[i])));
        }
        out
    }
}

/// Data of one tail, every exponent in half-units.
#[derive(Clone, Copy, Debug)]
struct TailShape {
    a: Chain,
    b: Chain,
    /// Weight of `i` in `q^(alpha*i + c*k)`.
    alpha: i64,
    c: i64,
    /// Base of the Gaussian binomial `[k-1, m]`.
    gauss: HalfExp,
}

type SumFn = fn(i64) -> Vec<(i64, i64)>;
type ShapeFn = fn(i64) -> TailShape;

#[derive(Clone, Copy)]
pub struct TruncatedEntry {
    pub id: &'static str,
    /// `m`, or `n` where the theorem is stated that way.
    pub index_name: &'static str,
    /// Catalog identity the finite sum converges to.
    pub identity: &'static str,
    /// The finite sum matches the catalog identity only after `q -> -q`.
    pub negate_q: bool,
    /// Exponent of `q^P` in front of the tail is `P = prefix_num * m(m+1) / 2` q-units.
    prefix_num: i64,
    prefactor: &'static [(Monomial, HalfExp, i32)],
    finite_sum: SumFn,
    shape: ShapeFn,
}

const Q1: HalfExp = HalfExp::from_q(1);
const Q2: HalfExp = HalfExp::from_q(2);

fn alt(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn sum_t11(m: i64) -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for n in 0..=m {
        for j in -n..=n {
            v.push((2 * n * (n + 1) - j * (j + 1), alt(n)));
        }
    }
    v
}

fn sum_t15(m: i64) -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for n in 0..=m {
        for j in 0..=n {
            let e = 2 * (n * n + n) - j * (j + 1);
            v.push((e, alt(n)));
            v.push((e + 4 * n + 4, -alt(n)));
        }
    }
    v
}

fn sum_t12(m: i64) -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for n in 0..=m {
        for j in -n..=n {
            let e = 2 * (2 * n * n + n - j * j);
            v.push((e, alt(j)));
            v.push((e + 4 * n + 2, -alt(j)));
        }
    }
    v
}

fn sum_t16(m: i64) -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for n in 0..=m {
        for j in -n - 1..=n {
            let e = 2 * (2 * n * n + 3 * n + 1) - j * (3 * j + 1);
            v.push((e, alt(j + 1)));
            v.push((e + 4 * n + 4, -alt(j + 1)));
        }
    }
    v
}

fn sum_t17(m: i64) -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for n in 0..=m {
        for j in -n - 1..=n {
            let e = 2 * (3 * n * n + 4 * n + 1 - j * (2 * j + 1));
            v.push((e, alt(j + 1)));
            v.push((e + 8 * n + 8, -alt(j + 1)));
        }
    }
    v
}

fn sum_tt4(n: i64) -> Vec<(i64, i64)> {
    (-n..=n).map(|j| (2 * j * j, alt(j))).collect()
}

fn shape_t11(m: i64) -> TailShape {
    TailShape {
        a: Chain { num: Some(Monomial::neg(HalfExp(-2 * m - 1))), step: Q1 },
        b: Chain { num: Some(Monomial::pos(HalfExp(1))), step: Q1 },
        alpha: 2 * (m + 1),
        c: 2,
        gauss: Q1,
    }
}

fn shape_t15(m: i64) -> TailShape {
    TailShape {
        a: Chain { num: Some(Monomial::neg(HalfExp(-2 * m - 3))), step: Q1 },
        b: Chain { num: Some(Monomial::pos(HalfExp(1))), step: Q1 },
        alpha: 2 * (m + 2),
        c: 2,
        gauss: Q1,
    }
}

fn shape_t12(m: i64) -> TailShape {
    TailShape {
        a: Chain { num: Some(Monomial::neg(HalfExp::from_q(-2 * m - 1))), step: Q2 },
        b: Chain { num: Some(Monomial::neg(HalfExp::ZERO)), step: Q2 },
        alpha: 4 * (m + 1),
        c: 4,
        gauss: Q2,
    }
}

fn shape_t16(m: i64) -> TailShape {
    TailShape {
        a: Chain { num: None, step: Q1 },
        b: Chain { num: None, step: Q1 },
        alpha: 2 * (m + 2),
        c: 2,
        gauss: Q1,
    }
}

fn shape_t17(m: i64) -> TailShape {
    TailShape {
        a: Chain { num: None, step: Q2 },
        b: Chain { num: Some(Monomial::neg(Q1)), step: Q2 },
        alpha: 2 * (2 * m + 2),
        c: 4,
        gauss: Q2,
    }
}

/// As [`shape_t17`] with `q^((2m+4)j + 2k)`, the base-`q^2` analogue of
/// the `t1-6` weight; the printed weight `2m+2` is off at `(k, j) = (m+1, 1)`.
fn shape_t17_amended(m: i64) -> TailShape {
    TailShape { alpha: 2 * (2 * m + 4), ..shape_t17(m) }
}

fn shape_tt4(n: i64) -> TailShape {
    TailShape {
        a: Chain { num: Some(Monomial::neg(HalfExp::from_q(-2 * n))), step: Q2 },
        b: Chain { num: Some(Monomial::neg(HalfExp::ZERO)), step: Q2 },
        alpha: 2 * (2 * n + 1),
        c: 2,
        gauss: Q2,
    }
}

const EULER_EVEN_INV: &[(Monomial, HalfExp, i32)] = &[(Monomial::q(1), Q1, -1), (Monomial::q(2), Q2, -1)];

pub const TRUNCATED: &[TruncatedEntry] = &[
    TruncatedEntry {
        id: "t1-1",
        index_name: "m",
        identity: "bressoud",
        negate_q: false,
        prefix_num: 1,
        prefactor: EULER_EVEN_INV,
        finite_sum: sum_t11,
        shape: shape_t11,
    },
    TruncatedEntry {
        id: "t1-5",
        index_name: "m",
        identity: "bressoud-equiv",
        negate_q: false,
        prefix_num: 1,
        prefactor: EULER_EVEN_INV,
        finite_sum: sum_t15,
        shape: shape_t15,
    },
    TruncatedEntry {
        id: "t1-2",
        index_name: "m",
        identity: "liu-822",
        negate_q: false,
        prefix_num: 2,
        prefactor: EULER_EVEN_INV,
        finite_sum: sum_t12,
        shape: shape_t12,
    },
    TruncatedEntry {
        id: "t1-6",
        index_name: "m",
        identity: "thm13",
        negate_q: false,
        prefix_num: 1,
        prefactor: &[(Monomial::q(1), Q1, -2)],
        finite_sum: sum_t16,
        shape: shape_t16,
    },
    TruncatedEntry {
        id: "t1-7",
        index_name: "m",
        identity: "thm14",
        negate_q: true,
        prefix_num: 2,
        prefactor: &[(Monomial::neg(Q1), Q2, 1), (Monomial::q(2), Q2, -2)],
        finite_sum: sum_t17,
        shape: shape_t17,
    },
    TruncatedEntry {
        id: "tt4",
        index_name: "n",
        identity: "gauss-a",
        negate_q: false,
        prefix_num: 2,
        prefactor: &[(Monomial::neg(Q1), Q1, 1), (Monomial::q(1), Q1, -1)],
        finite_sum: sum_tt4,
        shape: shape_tt4,
    },
];

impl TruncatedEntry {
    /// `P` in half-units.
    pub fn prefix_halves(&self, m: i64) -> i64 {
        self.prefix_num * m * (m + 1)
    }

    /// The finite sum as an exact polynomial.
    pub fn finite_sum(&self, m: i64) -> Series {
        let terms = (self.finite_sum)(m).into_iter().map(|(e, c)| (HalfExp(e), BigInt::from(c)));
        Series::from_terms(terms, None)
    }

    pub fn lhs(&self, m: i64, order: HalfExp) -> Result<Series> {
        let sum = self.finite_sum(m);
        let slack = sum.min_exp().map_or(0, |e| (-e.halves()).max(0));
        let pre = infinite_product(self.prefactor, order + HalfExp(slack))?;
        Ok((&pre * &sum).truncated(order))
    }

    /// The double sum alone, known below `order`.
    pub fn tail(&self, m: i64, order: HalfExp) -> Result<Series> {
        tail_series(&(self.shape)(m), m, order)
    }

    pub fn rhs(&self, m: i64, order: HalfExp) -> Result<Series> {
        let p = self.prefix_halves(m);
        let tail = self.tail(m, order - HalfExp(p))?;
        Ok(&Series::one(order) + &tail.shifted(alt(m) as i8, HalfExp(p)))
    }
}

fn tail_series(shape: &TailShape, m: i64, order: HalfExp) -> Result<Series> {
    let t = order.halves();
    let k0 = m + 1;
    if t <= 0 {
        return Ok(Series::zero(order));
    }
    let cap = env_hard_cap().unwrap_or(10 * t);
    let (c, alpha) = (shape.c, shape.alpha);

    // Pass 1: find where the W-window rule stops, from exact valuations.
    let mut size = (2 * k0 + 16) as usize;
    let mut va = shape.a.valuations(size);
    let mut vb = shape.b.valuations(size);
    let best = |k: i64, va: &[Option<i64>], vb: &[Option<i64>]| -> Option<i64> {
        (0..=k)
            .filter_map(|i| Some(c * k + alpha * i + va[i as usize]? + vb[(k - i) as usize]?))
            .min()
    };
    let mut quiet = 0usize;
    let mut k = k0;
    let k_last;
    loop {
        if k - k0 > cap {
            return Err(Error::NonConvergence { order, cap });
        }
        if k as usize >= size {
            size *= 2;
            va = shape.a.valuations(size);
            vb = shape.b.valuations(size);
        }
        let quiet_here = best(k, &va, &vb).is_none_or(|e| e >= t);
        quiet = if quiet_here { quiet + 1 } else { 0 };
        if quiet >= WINDOW {
            k_last = k - WINDOW as i64;
            break;
        }
        k += 1;
    }
    if k_last < k0 {
        return Ok(Series::zero(order));
    }
    let n = k_last as usize;
    let (va, vb) = (&va[..=n], &vb[..=n]);

    // Pass 2: precision each chain entry needs for every term it enters.
    let min_vb = vb.iter().flatten().copied().min().unwrap_or(0);
    let targets_a: Vec<i64> =
        (0..=n as i64).map(|i| t - c * i.max(k0) - alpha * i - min_vb).collect();
    let lift = (0..=n as i64)
        .filter_map(|i| va[i as usize].map(|v| -(c + alpha) * i - v))
        .max()
        .unwrap_or(0);
    let targets_b: Vec<i64> = (0..=n as i64).map(|l| t - c * l + lift).collect();
    let a = shape.a.series(&targets_a);
    let b = shape.b.series(&targets_b);

    let mut tail = Series::zero(order);
    for k in k0..=k_last {
        let inner_order = t - c * k;
        let mut inner = Series::zero(HalfExp(inner_order));
        for i in 0..=k {
            let l = k - i;
            let (Some(vai), Some(vbl)) = (va[i as usize], vb[l as usize]) else { continue };
            let lo = alpha * i + vai + vbl;
            if lo >= inner_order {
                continue;
            }
            let room = inner_order - alpha * i;
            let ai = a[i as usize].truncated(HalfExp(room - vbl));
            let bl = b[l as usize].truncated(HalfExp(room - vai));
            inner = &inner + &(&ai * &bl).shifted(1, HalfExp(alpha * i));
        }
        let g = gauss_binomial(k - 1, m, shape.gauss).truncated(HalfExp(inner_order));
        tail = &tail + &(&inner * &g).shifted(1, HalfExp(c * k));
    }
    match tail.trunc() {
        Some(have) if have < order => Err(Error::InsufficientPrecision { requested: order, available: have }),
        _ => Ok(tail.truncated(order)),
    }
}

/// Entries outside the main list: alternative readings of a printed tail.
pub const AMENDED: &[TruncatedEntry] = &[TruncatedEntry {
    id: "t1-7-amended",
    index_name: "m",
    identity: "thm14",
    negate_q: true,
    prefix_num: 2,
    prefactor: &[(Monomial::neg(Q1), Q2, 1), (Monomial::q(2), Q2, -2)],
    finite_sum: sum_t17,
    shape: shape_t17_amended,
}];

/// Ids of the main list; [`AMENDED`] entries are looked up by name only.
pub fn truncated_ids() -> Vec<&'static str> {
    TRUNCATED.iter().map(|e| e.id).collect()
}

pub fn lookup_truncated(id: &str) -> Result<&'static TruncatedEntry> {
    TRUNCATED.iter().chain(AMENDED).find(|e| e.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
}

fn label(e: &TruncatedEntry, m: i64) -> String {
    format!("{}:{}={}", e.id, e.index_name, m)
}

pub fn check_truncated(id: &str, m: i64, order: HalfExp) -> Result<VerificationReport> {
    let e = lookup_truncated(id)?;
    if m < 0 {
        return Err(Error::InvalidArgument(format!("{} must be nonnegative", e.index_name)));
    }
    let started = Instant::now();
    let lhs = e.lhs(m, order)?;
    let rhs = e.rhs(m, order)?;
    let mismatch = Series::equal_up_to(&lhs, &rhs, order)?;
    Ok(VerificationReport::from_comparison(label(e, m), order, mismatch, started))
}

/// Every coefficient of `tail(m)` below `order` is nonnegative.
pub fn tail_nonnegativity(id: &str, m: i64, order: HalfExp) -> Result<VerificationReport> {
    let e = lookup_truncated(id)?;
    let started = Instant::now();
    let tail = e.tail(m, order)?;
    let bad = tail.terms().find(|(_, c)| c.is_negative()).map(|(exp, c)| Mismatch {
        exponent: exp,
        lhs: c.clone(),
        rhs: BigInt::from(0),
    });
    Ok(VerificationReport::from_comparison(format!("{}:tail", label(e, m)), order, bad, started))
}

/// `LHS(m) - 1` vanishes below the tail's prefactor `q^P`.
pub fn prefix_check(id: &str, m: i64, order: HalfExp) -> Result<VerificationReport> {
    let e = lookup_truncated(id)?;
    let started = Instant::now();
    let upto = order.min(HalfExp(e.prefix_halves(m)));
    let lhs = e.lhs(m, order)?;
    let mismatch = Series::equal_up_to(&lhs, &Series::one(order), upto)?;
    Ok(VerificationReport::from_comparison(format!("{}:prefix", label(e, m)), order, mismatch, started))
}

/// Prefactor times the full catalog sum.
pub fn full_identity_value(id: &str, order: HalfExp) -> Result<Series> {
    let e = lookup_truncated(id)?;
    let ident = catalog::lookup(e.identity)?;
    let z = catalog::DEFAULT_Z;
    let (mut num, mut den) = (ident.rhs.eval(order, z)?, (ident.lhs)(order, z)?);
    if e.negate_q {
        num = num.substitute_neg_q()?;
        den = den.substitute_neg_q()?;
    }
    let prod = &num * &den.invert(order)?;
    Ok(prod.truncated(order))
}

/// Smallest `m* <= m_limit` with `LHS(m*) = LHS(m*+1) = full value` below `order`;
/// the report fails when none exists.
pub fn stabilization(id: &str, order: HalfExp, m_limit: i64) -> Result<(Option<i64>, VerificationReport)> {
    let e = lookup_truncated(id)?;
    let started = Instant::now();
    let full = full_identity_value(id, order)?;
    let mut prev = e.lhs(0, order)?;
    let mut first_gap = None;
    for m in 0..=m_limit {
        let next = e.lhs(m + 1, order)?;
        let a = Series::equal_up_to(&prev, &next, order)?;
        let b = Series::equal_up_to(&prev, &full, order)?;
        if a.is_none() && b.is_none() {
            let r = VerificationReport::from_comparison(format!("{}:stabilization", e.id), order, None, started)
                .with_note(format!("{}* = {m}", e.index_name));
            return Ok((Some(m), r));
        }
        first_gap = b.or(a);
        prev = next;
    }
    let r = VerificationReport::from_comparison(format!("{}:stabilization", e.id), order, first_gap, started)
        .with_note(format!("no {}* <= {m_limit}", e.index_name));
    Ok((None, r))
}
