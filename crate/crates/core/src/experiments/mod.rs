//! Experiment drivers behind the `cesaro` CLI.
//!
//! Each driver returns an [`ExperimentReport`] whose checks decide the exit
//! status. Rows are emitted in input-grid order.

mod catalog;
mod report;

use std::path::Path;
use std::time::Instant;

use crate::dirichlet::{energy_tail_sum, multiplier_norm_restricted};
use crate::error::{Error, Result};
use crate::hadamard::{
    alpha_bound, halflog_bound, tc_norm_with, NormOptions, TcOperator, DEFAULT_MAX_ITER,
    DEFAULT_SEED, DEFAULT_TOL,
};
use crate::series::{apply_mean, CoeffSeq, ProfileKind, SummabilityProfile};

pub use catalog::ScalarSeries;
pub use report::{Check, ExperimentReport, Metadata, ReportFormat, ReportRow, CSV_HEADER};

/// Slack allowed on the norm-versus-bound comparisons.
pub const BOUND_TOL: f64 = 1e-8;
/// Slack allowed when a restricted multiplier norm is compared to `‖T_h‖`.
pub const EQUALITY_TOL: f64 = 1e-6;
/// Allowed mismatch between a witness ratio and the restricted norm.
pub const WITNESS_TOL: f64 = 1e-8;
/// Decreases smaller than this are eigen-solver round-off, not a trend.
pub const MONOTONE_TOL: f64 = 1e-10;
pub const DEFAULT_NS: [usize; 4] = [10, 100, 1_000, 10_000];

#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub tol: f64,
    pub max_iter: usize,
    /// Record `wall_time_ms`; off by default so reports are byte-stable.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            timing: false,
        }
    }
}

impl RunConfig {
    fn norm_options(&self) -> NormOptions {
        NormOptions {
            tol: self.tol,
            max_iter: self.max_iter,
            seed: self.seed,
            cross_check: true,
        }
    }

    fn report(&self) -> ExperimentReport {
        ExperimentReport::new(self.seed).tolerance("power_iteration_residual", self.tol)
    }

    fn elapsed(&self, start: Instant) -> Option<f64> {
        self.timing.then(|| start.elapsed().as_secs_f64() * 1e3)
    }
}

/// Which summability mean a norm experiment uses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileSpec {
    pub kind: ProfileKind,
    pub alpha: f64,
}

impl ProfileSpec {
    pub fn riesz_half() -> Self {
        Self {
            kind: ProfileKind::Riesz,
            alpha: 0.5,
        }
    }

    pub fn build(&self, n: usize) -> Result<SummabilityProfile> {
        match self.kind {
            ProfileKind::Riesz => SummabilityProfile::riesz(n, self.alpha),
            ProfileKind::Cesaro => SummabilityProfile::cesaro(n, self.alpha),
            ProfileKind::Fejer => Ok(SummabilityProfile::fejer(n)),
            ProfileKind::PartialSum => Ok(SummabilityProfile::partial_sum(n)),
        }
    }

    fn label(&self) -> String {
        match self.kind {
            ProfileKind::Riesz => format!("riesz alpha={}", self.alpha),
            ProfileKind::Cesaro => format!("cesaro alpha={}", self.alpha),
            ProfileKind::Fejer => "fejer".into(),
            ProfileKind::PartialSum => "partial-sum".into(),
        }
    }

    fn alpha_field(&self) -> Option<f64> {
        match self.kind {
            ProfileKind::Riesz | ProfileKind::Cesaro => Some(self.alpha),
            ProfileKind::Fejer => Some(1.0),
            ProfileKind::PartialSum => None,
        }
    }
}

fn squared_riesz_norm(n: usize, alpha: f64, cfg: &RunConfig) -> Result<(f64, &'static str)> {
    let t = TcOperator::from_profile(&SummabilityProfile::riesz(n, alpha)?);
    let est = tc_norm_with(&t, &cfg.norm_options())?;
    Ok((est.value * est.value, est.method.as_str()))
}

/// `‖T_{h_n}‖²` for Riesz means of order `α > 1/2` against `α²/(2α-1)`.
pub fn sweep_alpha(alphas: &[f64], ns: &[usize], cfg: &RunConfig) -> Result<ExperimentReport> {
    for &alpha in alphas {
        alpha_bound(alpha)?;
    }
    let mut report = cfg.report().tolerance("bound_slack", BOUND_TOL);
    for &alpha in alphas {
        let bound = alpha_bound(alpha)?;
        for &n in ns {
            let start = Instant::now();
            let (computed, method) = squared_riesz_norm(n, alpha, cfg)?;
            let slack = bound - computed;
            report.check(
                format!("sweep-alpha n={n} alpha={alpha}"),
                slack >= -BOUND_TOL,
                format!("norm² {computed:.12} vs bound {bound:.12}"),
            );
            if alpha == 1.0 {
                report.check(
                    format!("fejer-contraction n={n}"),
                    computed < 1.0,
                    format!("norm² {computed:.12}"),
                );
            }
            report.rows.push(ReportRow {
                experiment_id: "sweep-alpha".into(),
                n,
                alpha: Some(alpha),
                max_degree: None,
                computed,
                bound: Some(bound),
                slack: Some(slack),
                method: method.into(),
                wall_time_ms: cfg.elapsed(start),
            });
        }
    }
    Ok(report)
}

/// `‖T_{h_n}‖²` for the Riesz means of order 1/2 against `(1/8) ln((n+1)/2)`.
pub fn growth(ns: &[usize], cfg: &RunConfig) -> Result<ExperimentReport> {
    if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) || ns[0] == 0 {
        return Err(Error::Domain(
            "growth needs a strictly increasing list of n >= 1".into(),
        ));
    }
    let mut report = cfg.report().tolerance("bound_slack", BOUND_TOL);
    let mut previous: Option<(usize, f64)> = None;
    for &n in ns {
        let start = Instant::now();
        let (computed, method) = squared_riesz_norm(n, 0.5, cfg)?;
        let bound = halflog_bound(n);
        let slack = computed - bound;
        report.check(
            format!("growth n={n} alpha=0.5"),
            slack >= -BOUND_TOL,
            format!("norm² {computed:.12} vs lower bound {bound:.12}"),
        );
        if let Some((m, prev)) = previous {
            report.check(
                format!("growth increasing n={m}->{n}"),
                computed > prev,
                format!("{prev:.12} -> {computed:.12}"),
            );
        }
        previous = Some((n, computed));
        report.rows.push(ReportRow {
            experiment_id: "growth".into(),
            n,
            alpha: Some(0.5),
            max_degree: None,
            computed,
            bound: Some(bound),
            slack: Some(slack),
            method: method.into(),
            wall_time_ms: cfg.elapsed(start),
        });
    }
    Ok(report)
}

/// Restricted `D_{ω₁}` multiplier norms against `‖T_h‖` as the degree grows.
pub fn equality(
    spec: &ProfileSpec,
    n: usize,
    max_degrees: &[usize],
    cfg: &RunConfig,
) -> Result<ExperimentReport> {
    if max_degrees.iter().any(|&big| big < n) {
        return Err(Error::Index(format!("every N must be >= n = {n}")));
    }
    let profile = spec.build(n)?;
    let t_norm = tc_norm_with(&TcOperator::from_profile(&profile), &cfg.norm_options())?.value;
    let mut report = cfg
        .report()
        .tolerance("equality_slack", EQUALITY_TOL)
        .tolerance("monotone_slack", MONOTONE_TOL);

    let mut previous: Option<(usize, f64)> = None;
    for &big in max_degrees {
        let start = Instant::now();
        let value = multiplier_norm_restricted(&profile, big)?.value;
        let slack = t_norm - value;
        report.check(
            format!("equality n={n} {} N={big}", spec.label()),
            slack >= -EQUALITY_TOL,
            format!("restricted {value:.12} vs ‖T_h‖ {t_norm:.12}"),
        );
        if let Some((prev_big, prev)) = previous {
            report.check(
                format!("equality monotone N={prev_big}->{big}"),
                value >= prev - MONOTONE_TOL,
                format!("{prev:.15} -> {value:.15}"),
            );
        }
        previous = Some((big, value));
        report.rows.push(ReportRow {
            experiment_id: "equality".into(),
            n,
            alpha: spec.alpha_field(),
            max_degree: Some(big),
            computed: value,
            bound: Some(t_norm),
            slack: Some(slack),
            method: "gram_cholesky".into(),
            wall_time_ms: cfg.elapsed(start),
        });
    }
    if let Some((big, value)) = previous {
        report.metadata.notes.push(format!(
            "final gap ‖T_h‖ - restricted at N={big}: {:e}",
            t_norm - value
        ));
    }
    Ok(report)
}

/// The unit-norm maximizer of the restricted multiplier norm and the ratio
/// `‖M_h f‖ / ‖f‖` it attains.
pub fn witness(
    spec: &ProfileSpec,
    n: usize,
    max_degree: usize,
    cfg: &RunConfig,
) -> Result<(ExperimentReport, CoeffSeq)> {
    let start = Instant::now();
    let profile = spec.build(n)?;
    let restricted = multiplier_norm_restricted(&profile, max_degree)?;
    let f = restricted.maximizer;
    let image = energy_tail_sum(&apply_mean(&profile, &f)).norm_sq;
    let ratio = (image / energy_tail_sum(&f).norm_sq).sqrt();
    let slack = restricted.value - ratio;

    let mut report = cfg.report().tolerance("witness_slack", WITNESS_TOL);
    report.check(
        format!("witness n={n} {} N={max_degree}", spec.label()),
        slack.abs() <= WITNESS_TOL,
        format!(
            "ratio {ratio:.15} vs restricted norm {:.15}",
            restricted.value
        ),
    );
    report.rows.push(ReportRow {
        experiment_id: "witness".into(),
        n,
        alpha: spec.alpha_field(),
        max_degree: Some(max_degree),
        computed: ratio,
        bound: Some(restricted.value),
        slack: Some(slack),
        method: "gram_cholesky".into(),
        wall_time_ms: cfg.elapsed(start),
    });
    Ok((report, f))
}

/// Writes the witness polynomial next to the report.
pub fn write_witness(f: &CoeffSeq, path: impl AsRef<Path>) -> Result<()> {
    f.write_json(path)
}

/// `(σ_n^α, ρ_n^α)` of the scalar series: the Cesàro and Riesz means of its
/// partial sums.
pub fn scalar_means(series: ScalarSeries, alpha: f64, n: usize) -> Result<(f64, f64)> {
    let cesaro = SummabilityProfile::cesaro(n, alpha)?;
    let riesz = SummabilityProfile::riesz(n, alpha)?;
    let (mut sigma, mut rho) = (0.0, 0.0);
    // Smallest terms first.
    for k in (0..=n).rev() {
        let a = series.term(k);
        sigma += cesaro.weight(k) * a;
        rho += riesz.weight(k) * a;
    }
    Ok((sigma, rho))
}

pub const EQUIVALENCE_NOTE: &str =
    "equivalence: decrease of |sigma - rho| between consecutive n is a proxy; the underlying equivalence carries no rate";

/// Cesàro and Riesz means of a catalog series; passes when `|σ - ρ|`
/// decreases between consecutive entries of `ns`.
pub fn equivalence(
    series: ScalarSeries,
    alpha: f64,
    ns: &[usize],
    cfg: &RunConfig,
) -> Result<ExperimentReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "equivalence needs 0 < alpha < 1, got {alpha}"
        )));
    }
    let limit = series.limit();
    let mut report = cfg.report();
    report.metadata.notes.push(EQUIVALENCE_NOTE.to_string());

    let mut previous: Option<(usize, f64)> = None;
    for &n in ns {
        let start = Instant::now();
        let (sigma, rho) = scalar_means(series, alpha, n)?;
        let gap = (sigma - rho).abs();
        let elapsed = cfg.elapsed(start);
        let row = |id: &str, computed: f64, bound: Option<f64>, method: &str| ReportRow {
            experiment_id: format!("{id}:{series}"),
            n,
            alpha: Some(alpha),
            max_degree: None,
            computed,
            bound,
            slack: bound.map(|b| b - computed),
            method: method.into(),
            wall_time_ms: elapsed,
        };
        report.rows.push(row(
            "equivalence-cesaro-error",
            (sigma - limit).abs(),
            None,
            "cesaro",
        ));
        report.rows.push(row(
            "equivalence-riesz-error",
            (rho - limit).abs(),
            None,
            "riesz",
        ));
        report.rows.push(row(
            "equivalence-gap",
            gap,
            previous.map(|p| p.1),
            "cesaro_minus_riesz",
        ));
        if let Some((m, prev)) = previous {
            report.check(
                format!("equivalence {series} alpha={alpha} n={m}->{n}"),
                gap < prev,
                format!("|σ-ρ| {prev:e} -> {gap:e}"),
            );
        }
        previous = Some((n, gap));
    }
    Ok(report)
}
