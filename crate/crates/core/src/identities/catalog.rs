//! Product = Hecke-type sum identities, each side an independent builder.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::qkit::{infinite_product, Monomial, Sign};
use crate::report::VerificationReport;
use crate::series::{HalfExp, Series};

use super::hecke::{bilateral_sum, hecke_sum, Bound, ExtraFactor, HeckeSumSpec, Quadratic, DEFAULT_WINDOW};

pub type SideFn = fn(HalfExp, Monomial) -> Result<Series>;

#[derive(Clone, Copy, Debug)]
pub enum Rhs {
    Hecke(HeckeSumSpec),
    Explicit(SideFn),
}

impl Rhs {
    pub fn eval(&self, order: HalfExp, z: Monomial) -> Result<Series> {
        match self {
            Rhs::Hecke(spec) => hecke_sum(spec, order),
            Rhs::Explicit(f) => f(order, z),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct IdentityEntry {
    pub id: &'static str,
    pub lhs: SideFn,
    pub rhs: Rhs,
    pub class: Option<char>,
    /// Both sides depend on a free monomial `z`.
    pub z_dependent: bool,
}

/// Value of `z` used when none is given; keeps both z-dependent entries
/// away from their degenerate (identically zero) instantiations.
pub const DEFAULT_Z: Monomial = Monomial { sign: Sign::Neg, exp: HalfExp::from_q(1) };

const Q1: HalfExp = HalfExp::from_q(1);
const Q2: HalfExp = HalfExp::from_q(2);

fn prod(factors: &[(Monomial, HalfExp, i32)], order: HalfExp) -> Result<Series> {
    infinite_product(factors, order)
}

fn euler_cubed(o: HalfExp, _: Monomial) -> Result<Series> {
    prod(&[(Monomial::q(1), Q1, 3)], o)
}

fn euler_squared(o: HalfExp, _: Monomial) -> Result<Series> {
    prod(&[(Monomial::q(1), Q1, 2)], o)
}

fn euler_times_even(o: HalfExp, _: Monomial) -> Result<Series> {
    prod(&[(Monomial::q(1), Q1, 1), (Monomial::q(2), Q2, 1)], o)
}

fn euler_squared_odd(o: HalfExp, _: Monomial) -> Result<Series> {
    prod(&[(Monomial::q(1), Q1, 2), (Monomial::q(1), Q2, 1)], o)
}

fn even_squared_over_odd(o: HalfExp, _: Monomial) -> Result<Series> {
    prod(&[(Monomial::q(2), Q2, 2), (Monomial::q(1), Q2, -1)], o)
}

fn euler(o: HalfExp, _: Monomial) -> Result<Series> {
    prod(&[(Monomial::q(1), Q1, 1)], o)
}

fn gauss_a_product(o: HalfExp, _: Monomial) -> Result<Series> {
    prod(&[(Monomial::q(1), Q1, 1), (Monomial::neg(Q1), Q1, -1)], o)
}

fn gauss_b_product(o: HalfExp, _: Monomial) -> Result<Series> {
    prod(&[(Monomial::q(2), Q2, 1), (Monomial::neg(Q1), Q2, -1)], o)
}

fn check_z(z: Monomial) -> Result<()> {
    if z.is_zero() {
        return Err(Error::InvalidArgument("z must be a nonzero monomial".into()));
    }
    Ok(())
}

fn quintuple_product(o: HalfExp, z: Monomial) -> Result<Series> {
    check_z(z)?;
    let z2 = z.pow(2)?;
    prod(
        &[
            (z.recip()?, Q1, 1),
            (z.shift(Q1), Q1, 1),
            (Monomial::q(1), Q1, 1),
            (Monomial::q(1).div(z2)?, Q2, 1),
            (z2.shift(Q1), Q2, 1),
        ],
        o,
    )
}

fn triple_product(o: HalfExp, z: Monomial) -> Result<Series> {
    check_z(z)?;
    prod(&[(z, Q1, 1), (Monomial::q(1).div(z)?, Q1, 1), (Monomial::q(1), Q1, 1)], o)
}

fn alt(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn pentagonal_sum(o: HalfExp, _: Monomial) -> Result<Series> {
    bilateral_sum(o, DEFAULT_WINDOW, |n| vec![(HalfExp(n * (3 * n - 1)), alt(n))])
}

fn gauss_a_sum(o: HalfExp, _: Monomial) -> Result<Series> {
    bilateral_sum(o, DEFAULT_WINDOW, |n| vec![(HalfExp::from_q(n * n), alt(n))])
}

fn quintuple_sum(o: HalfExp, z: Monomial) -> Result<Series> {
    check_z(z)?;
    let (a, s) = (z.exp.halves(), i64::from(z.sign_value()));
    bilateral_sum(o, DEFAULT_WINDOW, |n| {
        let base = n * (3 * n + 1);
        vec![
            (HalfExp(3 * n * a + base), s.pow((3 * n).rem_euclid(2) as u32)),
            (HalfExp(-(3 * n + 1) * a + base), -s.pow((3 * n + 1).rem_euclid(2) as u32)),
        ]
    })
}

fn triple_sum(o: HalfExp, z: Monomial) -> Result<Series> {
    check_z(z)?;
    let (a, s) = (z.exp.halves(), i64::from(z.sign_value()));
    bilateral_sum(o, DEFAULT_WINDOW, |n| vec![(HalfExp(n * a + n * (n - 1)), alt(n) * s.pow(n.rem_euclid(2) as u32))])
}

const fn quad(nn: i64, nj: i64, jj: i64, n1: i64, j1: i64, c: i64, den: i64) -> Quadratic {
    Quadratic { nn, nj, jj, n1, j1, c, den }
}

const fn factor(sign: i8, c: i64, d: i64) -> Option<ExtraFactor> {
    Some(ExtraFactor { sign, c, d })
}

const SYM: (Bound, Bound) = (Bound::new(-1, 0, 1), Bound::new(1, 0, 1));
const WIDE: (Bound, Bound) = (Bound::new(-1, -1, 1), Bound::new(1, 0, 1));

const fn hecke(range: (Bound, Bound), exponent: Quadratic, sign: (i64, i64, i64), extra: Option<ExtraFactor>) -> Rhs {
    Rhs::Hecke(HeckeSumSpec { inner_lo: range.0, inner_hi: range.1, exponent, sign, extra })
}

const fn entry(id: &'static str, lhs: SideFn, rhs: Rhs, class: Option<char>) -> IdentityEntry {
    IdentityEntry { id, lhs, rhs, class, z_dependent: false }
}

pub const CATALOG: &[IdentityEntry] = &[
    entry("jacobi-cube", euler_cubed, hecke(SYM, quad(1, 0, 0, 1, 0, 0, 2), (1, 0, 0), None), None),
    entry(
        "rogers",
        euler_squared,
        hecke((Bound::new(-1, 0, 2), Bound::new(1, 0, 2)), quad(1, 0, -3, 1, 1, 0, 2), (1, 1, 0), None),
        Some('B'),
    ),
    entry(
        "kac-peterson",
        euler_times_even,
        hecke((Bound::new(-1, 0, 3), Bound::new(1, 0, 3)), quad(1, 0, -8, 1, 0, 0, 2), (1, 0, 0), None),
        Some('C'),
    ),
    entry(
        "andrews",
        euler_times_even,
        hecke((Bound::new(-1, 0, 2), Bound::new(1, 0, 2)), quad(1, 0, -2, 1, 0, 0, 2), (1, 1, 0), None),
        Some('C'),
    ),
    entry("andrews-515", euler_squared_odd, hecke(SYM, quad(3, 0, -2, 1, 0, 0, 2), (0, 1, 0), factor(-1, 2, 1)), None),
    entry("bressoud", euler_times_even, hecke(SYM, quad(2, 0, -1, 2, -1, 0, 2), (1, 0, 0), None), Some('A')),
    entry(
        "bressoud-equiv",
        euler_times_even,
        hecke((Bound::new(0, 0, 1), Bound::new(1, 0, 1)), quad(2, 0, -1, 2, -1, 0, 2), (1, 0, 0), factor(-1, 2, 2)),
        Some('A'),
    ),
    entry("liu-711", euler_squared, hecke(SYM, quad(4, 0, -3, 2, -1, 0, 2), (0, 1, 0), factor(-1, 2, 1)), Some('B')),
    entry(
        "liu-717",
        even_squared_over_odd,
        hecke((Bound::new(0, 0, 1), Bound::new(2, 0, 1)), quad(6, 0, -1, 4, -1, 0, 2), (1, 0, 0), factor(1, 2, 1)),
        Some('D'),
    ),
    entry("liu-822", euler_times_even, hecke(SYM, quad(2, 0, -1, 1, 0, 0, 1), (0, 1, 0), factor(-1, 2, 1)), Some('C')),
    entry("thm13", euler_squared, hecke(WIDE, quad(4, 0, -3, 6, -1, 2, 2), (0, 1, 1), factor(-1, 2, 2)), Some('B')),
    entry("thm14", even_squared_over_odd, hecke(WIDE, quad(3, 0, -2, 4, -1, 1, 1), (1, 0, 0), factor(-1, 4, 4)), Some('D')),
    entry("pentagonal", euler, Rhs::Explicit(pentagonal_sum), None),
    entry("gauss-a", gauss_a_product, Rhs::Explicit(gauss_a_sum), None),
    entry(
        "gauss-b",
        gauss_b_product,
        hecke((Bound::new(0, 0, 1), Bound::new(0, 0, 1)), quad(2, 0, 0, 1, 0, 0, 1), (1, 0, 0), factor(-1, 2, 1)),
        None,
    ),
    IdentityEntry { id: "quintuple", lhs: quintuple_product, rhs: Rhs::Explicit(quintuple_sum), class: None, z_dependent: true },
    IdentityEntry { id: "triple-product", lhs: triple_product, rhs: Rhs::Explicit(triple_sum), class: None, z_dependent: true },
];

pub fn lookup(id: &str) -> Result<&'static IdentityEntry> {
    CATALOG.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// Catalog ids in report order.
pub fn identity_ids() -> Vec<&'static str> {
    let mut ids: Vec<_> = CATALOG.iter().map(|e| e.id).collect();
    ids.sort_unstable();
    ids
}

pub fn verify_identity(id: &str, order: HalfExp) -> Result<VerificationReport> {
    verify_identity_at(id, order, None)
}

/// `z` applies only to z-dependent entries and defaults to [`DEFAULT_Z`].
pub fn verify_identity_at(id: &str, order: HalfExp, z: Option<Monomial>) -> Result<VerificationReport> {
    let e = lookup(id)?;
    let started = Instant::now();
    let z = z.unwrap_or(DEFAULT_Z);
    let lhs = (e.lhs)(order, z)?;
    let rhs = e.rhs.eval(order, z)?;
    let mismatch = Series::equal_up_to(&lhs, &rhs, order)?;
    let report = VerificationReport::from_comparison(id, order, mismatch, started);
    Ok(if e.z_dependent { report.with_note(format!("z = {z}")) } else { report })
}

pub const CLASS_LABELS: [char; 4] = ['A', 'B', 'C', 'D'];

pub fn class_members(label: char) -> Vec<&'static IdentityEntry> {
    CATALOG.iter().filter(|e| e.class == Some(label)).collect()
}

/// Every sum in the class equals every other and the shared product.
pub fn verify_equivalence_class(label: char, order: HalfExp) -> Result<VerificationReport> {
    let members = class_members(label);
    let Some(first) = members.first() else {
        return Err(Error::UnknownId(format!("class {label}")));
    };
    let started = Instant::now();
    let id = format!("class-{label}");
    let mut sides = vec![("product".to_string(), (first.lhs)(order, DEFAULT_Z)?)];
    for m in &members {
        sides.push((m.id.to_string(), m.rhs.eval(order, DEFAULT_Z)?));
    }
    for (i, (na, a)) in sides.iter().enumerate() {
        for (nb, b) in &sides[i + 1..] {
            if let Some(mm) = Series::equal_up_to(a, b, order)? {
                return Ok(VerificationReport::from_comparison(id, order, Some(mm), started).with_note(format!("{na} vs {nb}")));
            }
        }
    }
    let names: Vec<_> = members.iter().map(|m| m.id).collect();
    Ok(VerificationReport::from_comparison(id, order, None, started).with_note(names.join(", ")))
}
