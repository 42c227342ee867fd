//! The full verification battery, grouped into sections.

use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::Result;
use crate::identities::{catalog, lemmas};
use crate::partitions::{
    brute_force, inequality_grid, partition_table, pp_by_convolution, tail_cross_check, tail_cross_check_against,
    InequalityTheorem, PartitionFamily,
};
use crate::report::{Mismatch, Status, VerificationReport};
use crate::series::HalfExp;
use crate::truncated;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub identity_order: i64,
    pub truncated_order: i64,
    pub truncated_m_max: i64,
    pub stabilization_order: i64,
    pub stabilization_m_limit: i64,
    pub lemma_n_max: i64,
    pub lemma_random_points: usize,
    pub oracle_max: i64,
    pub convolution_max: i64,
    pub inequality_m_max: i64,
    pub inequality_n_max: i64,
    pub tail_order: i64,
    pub cross_check_m_max: i64,
    pub cross_check_n_max: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            identity_order: 200,
            truncated_order: 150,
            truncated_m_max: 6,
            stabilization_order: 40,
            stabilization_m_limit: 40,
            lemma_n_max: 8,
            lemma_random_points: 8,
            oracle_max: 22,
            convolution_max: 200,
            inequality_m_max: 5,
            inequality_n_max: 300,
            tail_order: 300,
            cross_check_m_max: 4,
            cross_check_n_max: 150,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteSection {
    pub name: &'static str,
    /// Informational sections do not count toward the verdict.
    pub informational: bool,
    pub reports: Vec<VerificationReport>,
}

impl SuiteSection {
    pub fn count(&self, status: Status) -> usize {
        self.reports.iter().filter(|r| r.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }
}

fn q(k: i64) -> HalfExp {
    HalfExp::from_q(k)
}

fn section(name: &'static str, reports: Vec<VerificationReport>) -> SuiteSection {
    SuiteSection { name, informational: false, reports }
}

pub fn identities_section(order: i64) -> Result<SuiteSection> {
    let reports = catalog::identity_ids()
        .par_iter()
        .map(|id| catalog::verify_identity(id, q(order)))
        .collect::<Result<Vec<_>>>()?;
    Ok(section("identities", reports))
}

pub fn classes_section(order: i64) -> Result<SuiteSection> {
    let reports = catalog::CLASS_LABELS
        .par_iter()
        .map(|&c| catalog::verify_equivalence_class(c, q(order)))
        .collect::<Result<Vec<_>>>()?;
    Ok(section("classes", reports))
}

pub fn truncated_section(cfg: &SuiteConfig) -> Result<SuiteSection> {
    let jobs: Vec<(&str, i64)> = truncated::truncated_ids()
        .into_iter()
        .flat_map(|id| (0..=cfg.truncated_m_max).map(move |m| (id, m)))
        .collect();
    let mut reports = jobs
        .par_iter()
        .map(|&(id, m)| truncated::check_truncated(id, m, q(cfg.truncated_order)))
        .collect::<Result<Vec<_>>>()?;
    let stab = truncated::truncated_ids()
        .par_iter()
        .map(|id| truncated::stabilization(id, q(cfg.stabilization_order), cfg.stabilization_m_limit).map(|x| x.1))
        .collect::<Result<Vec<_>>>()?;
    reports.extend(stab);
    Ok(section("truncated", reports))
}

pub fn lemmas_section(cfg: &SuiteConfig) -> Result<SuiteSection> {
    let grid = lemmas::LemmaGrid { n_max: cfg.lemma_n_max, random_points: cfg.lemma_random_points, seed: cfg.seed };
    let per_lemma = lemmas::lemma_ids()
        .par_iter()
        .map(|id| lemmas::verify_lemma_grid(id, &grid))
        .collect::<Result<Vec<_>>>()?;
    Ok(section("lemmas", per_lemma.into_iter().flatten().collect()))
}

fn first_disagreement(id: String, order: i64, got: &[BigInt], want: &[BigInt], started: Instant) -> VerificationReport {
    let mismatch = got.iter().zip(want).enumerate().find(|(_, (a, b))| a != b).map(|(n, (a, b))| Mismatch {
        exponent: q(n as i64),
        lhs: a.clone(),
        rhs: b.clone(),
    });
    VerificationReport::from_comparison(id, q(order), mismatch, started)
}

pub fn partitions_section(cfg: &SuiteConfig) -> Result<SuiteSection> {
    let mut reports = PartitionFamily::ALL
        .par_iter()
        .map(|&f| {
            let started = Instant::now();
            let table = partition_table(f, cfg.oracle_max)?;
            let oracle = (0..=cfg.oracle_max)
                .map(|n| brute_force(f, n).map(BigInt::from))
                .collect::<Result<Vec<_>>>()?;
            Ok(first_disagreement(format!("partitions:{f}:oracle"), cfg.oracle_max, &table, &oracle, started))
        })
        .collect::<Result<Vec<_>>>()?;
    let started = Instant::now();
    let table = partition_table(PartitionFamily::Pp, cfg.convolution_max)?;
    let conv = pp_by_convolution(cfg.convolution_max as usize);
    reports.push(first_disagreement("partitions:pp:convolution".into(), cfg.convolution_max, &table, &conv, started));
    Ok(section("partitions", reports))
}

/// One report per `(theorem, m)`: the first `N` with a negative value, if any.
pub fn inequality_reports(theorem: InequalityTheorem, m_max: i64, n_max: i64) -> Result<Vec<VerificationReport>> {
    let started = Instant::now();
    let rows = inequality_grid(theorem, m_max, n_max)?;
    Ok((0..=m_max)
        .map(|m| {
            let mismatch = rows.iter().find(|r| r.m == m && !r.pass).map(|r| Mismatch {
                exponent: q(r.n),
                lhs: r.value.clone(),
                rhs: BigInt::from(0),
            });
            let failing: Vec<String> =
                rows.iter().filter(|r| r.m == m && !r.pass).map(|r| format!("N={}: {}", r.n, r.value)).collect();
            let report = VerificationReport::from_comparison(format!("{theorem}:m={m}"), q(n_max), mismatch, started);
            if failing.is_empty() {
                report
            } else {
                report.with_note(format!("negative at {}", failing.join(", ")))
            }
        })
        .collect())
}

pub fn inequalities_section(cfg: &SuiteConfig) -> Result<SuiteSection> {
    let per = InequalityTheorem::ALL
        .par_iter()
        .map(|&t| inequality_reports(t, cfg.inequality_m_max, cfg.inequality_n_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(section("inequalities", per.into_iter().flatten().collect()))
}

pub fn tails_section(cfg: &SuiteConfig) -> Result<SuiteSection> {
    let jobs: Vec<(InequalityTheorem, i64)> = InequalityTheorem::ALL
        .into_iter()
        .flat_map(|t| (0..=cfg.inequality_m_max).map(move |m| (t, m)))
        .collect();
    let reports = jobs
        .par_iter()
        .map(|&(t, m)| truncated::tail_nonnegativity(t.truncated_id(), m, q(cfg.tail_order)))
        .collect::<Result<Vec<_>>>()?;
    Ok(section("tails", reports))
}

pub fn cross_check_section(cfg: &SuiteConfig) -> Result<SuiteSection> {
    let jobs: Vec<(InequalityTheorem, i64)> = InequalityTheorem::ALL
        .into_iter()
        .flat_map(|t| (0..=cfg.cross_check_m_max).map(move |m| (t, m)))
        .collect();
    let reports = jobs
        .par_iter()
        .map(|&(t, m)| tail_cross_check(t, m, cfg.cross_check_n_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(section("cross-check", reports))
}

/// Checks against the corrected reading of a printed tail.
pub fn amended_section(cfg: &SuiteConfig) -> Result<SuiteSection> {
    let id = "t1-7-amended";
    let mut reports = (0..=cfg.truncated_m_max)
        .into_par_iter()
        .map(|m| truncated::check_truncated(id, m, q(cfg.truncated_order)))
        .collect::<Result<Vec<_>>>()?;
    let cross = (0..=cfg.cross_check_m_max)
        .into_par_iter()
        .map(|m| tail_cross_check_against(InequalityTheorem::Tt3, id, m, cfg.cross_check_n_max))
        .collect::<Result<Vec<_>>>()?;
    reports.extend(cross);
    Ok(SuiteSection { name: "amended", informational: true, reports })
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<SuiteSection>> {
    Ok(vec![
        identities_section(cfg.identity_order)?,
        classes_section(cfg.identity_order)?,
        truncated_section(cfg)?,
        lemmas_section(cfg)?,
        partitions_section(cfg)?,
        inequalities_section(cfg)?,
        tails_section(cfg)?,
        cross_check_section(cfg)?,
        amended_section(cfg)?,
    ])
}
