//! Executable checks of the inequalities that follow from `CD(m, κ)`:
//! the second-difference bound, the two Harnack gradient estimates, the
//! curvature/spectral-gap comparison and the eigenvalue–diameter bounds.
//!
//! Every check reports `worst_slack = RHS − LHS` at its tightest point, so a
//! negative slack is a violation. A check passes when `worst_slack ≥ −tol`.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curvature::{graph_curvature, CurvatureResult, Dimension};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::operators::{gradient_norm_sq, laplacian_at, second_difference_sum};
use crate::spectra::{
    eigen_residual, harmonic_eigenpairs, weighted_sum, EigenPair, SpectrumSummary,
    DEFAULT_EIGEN_TOL,
};

/// Tolerance on the slack of every inequality check.
pub const CHECK_TOL: f64 = 1e-8;
/// Tolerance on eigen residuals and the relative weighted mean.
pub const SPECTRAL_TOL: f64 = 1e-8;
/// Minimum value of `(α − 2)λ + 2κ` for an admissible Harnack parameter.
pub const ALPHA_MARGIN: f64 = 1e-12;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_SAMPLES: usize = 500;

pub mod names {
    pub const SECOND_DIFFERENCE: &str = "second_difference_bound";
    pub const HARNACK_POINTWISE: &str = "harnack_pointwise";
    pub const HARNACK_GRADIENT: &str = "harnack_gradient";
    pub const UNCONDITIONAL_HARNACK: &str = "unconditional_harnack";
    pub const CURVATURE_BELOW_GAP: &str = "curvature_below_spectral_gap";
    pub const DIAMETER_BOUND: &str = "eigenvalue_diameter_bound";
    pub const DIAMETER_BOUND_HALVED: &str = "eigenvalue_diameter_bound_halved";
    pub const DIAMETER_BOUND_RICCI_FLAT: &str = "eigenvalue_diameter_bound_ricci_flat";
    pub const MEAN_ZERO: &str = "weighted_mean_zero";
    pub const EIGEN_RESIDUAL: &str = "eigen_residual";
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CheckParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<Dimension>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// Position of the eigenpair in the ascending spectrum.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigen_index: Option<usize>,
    /// Number of random functions, for sampled checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub worst_slack: f64,
    pub worst_vertex: Option<usize>,
    pub params: CheckParams,
}

impl CheckResult {
    fn new(name: &str, worst: (Option<usize>, f64), tol: f64, params: CheckParams) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: worst.1 >= -tol,
            worst_slack: worst.1,
            worst_vertex: worst.0,
            params,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfoEntry {
    pub name: String,
    pub status: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub edges: usize,
    pub d_max: f64,
    pub diameter: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub graph: GraphSummary,
    pub curvature: Vec<CurvatureResult>,
    pub spectrum: SpectrumSummary,
    pub checks: Vec<CheckResult>,
    pub info: Vec<InfoEntry>,
    pub seed: u64,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Minimum of `slack(x)` over all vertices, lowest index on ties.
fn worst_over_vertices(n: usize, slack: impl Fn(usize) -> f64) -> (Option<usize>, f64) {
    (0..n).fold((None, f64::INFINITY), |(bx, bs), x| {
        let s = slack(x);
        if s < bs {
            (Some(x), s)
        } else {
            (bx, bs)
        }
    })
}

fn max_sq(f: &[f64]) -> f64 {
    f.iter().map(|v| v * v).fold(0.0, f64::max)
}

/// Second-difference bound at every vertex:
/// `(4/m − 2)(Δf)² + (2 + 2κ)|∇f|² ≤ second_difference_sum(f)`.
/// Holds for any `f` whenever `CD(m, κ)` does.
pub fn check_second_difference(g: &Graph, f: &[f64], m: Dimension, kappa: f64) -> CheckResult {
    let worst = worst_over_vertices(g.n(), |x| second_difference_slack(g, f, m, kappa, x));
    CheckResult::new(
        names::SECOND_DIFFERENCE,
        worst,
        CHECK_TOL,
        CheckParams {
            m: Some(m),
            kappa: Some(kappa),
            ..Default::default()
        },
    )
}

fn second_difference_slack(g: &Graph, f: &[f64], m: Dimension, kappa: f64, x: usize) -> f64 {
    let lap = laplacian_at(g, f, x);
    let lhs = (4.0 * m.reciprocal() - 2.0) * lap * lap + (2.0 + 2.0 * kappa) * gradient_norm_sq(g, f, x);
    second_difference_sum(g, f, x) - lhs
}

/// Smallest admissible-boundary value `2 − 2κ/λ` for the Harnack parameter.
pub fn alpha_lower_bound(lambda: f64, kappa: f64) -> f64 {
    2.0 - 2.0 * kappa / lambda
}

/// `((α² − 4/m)λ + 2κα) / ((α − 2)λ + 2κ) · λ`, the coefficient of `max f²`
/// bounding `|∇f|² + αλf²`.
pub fn harnack_pointwise_constant(lambda: f64, m: Dimension, kappa: f64, alpha: f64) -> Result<f64> {
    let denom = (alpha - 2.0) * lambda + 2.0 * kappa;
    if !(denom > ALPHA_MARGIN) {
        return Err(Error::InadmissibleAlpha {
            alpha,
            bound: alpha_lower_bound(lambda, kappa),
        });
    }
    Ok(((alpha * alpha - 4.0 * m.reciprocal()) * lambda + 2.0 * kappa * alpha) / denom * lambda)
}

/// `|∇f|²(x) + αλf²(x) ≤ C(α) · max_z f²(z)` for an eigenfunction.
pub fn check_harnack_pointwise(
    g: &Graph,
    pair: &EigenPair,
    m: Dimension,
    kappa: f64,
    alpha: f64,
) -> Result<CheckResult> {
    let bound = harnack_pointwise_constant(pair.lambda, m, kappa, alpha)? * max_sq(&pair.f);
    let f = &pair.f;
    let worst = worst_over_vertices(g.n(), |x| {
        bound - (gradient_norm_sq(g, f, x) + alpha * pair.lambda * f[x] * f[x])
    });
    Ok(CheckResult::new(
        names::HARNACK_POINTWISE,
        worst,
        CHECK_TOL,
        CheckParams {
            m: Some(m),
            kappa: Some(kappa),
            alpha: Some(alpha),
            lambda: Some(pair.lambda),
            ..Default::default()
        },
    ))
}

/// `(8 − 2/m)λ − 4κ`.
pub fn harnack_gradient_constant(lambda: f64, m: Dimension, kappa: f64) -> f64 {
    (8.0 - 2.0 * m.reciprocal()) * lambda - 4.0 * kappa
}

/// `|∇f|²(x) ≤ ((8 − 2/m)λ − 4κ) · max_z f²(z)` for an eigenfunction.
pub fn check_harnack_gradient(g: &Graph, pair: &EigenPair, m: Dimension, kappa: f64) -> CheckResult {
    let bound = harnack_gradient_constant(pair.lambda, m, kappa) * max_sq(&pair.f);
    let worst = worst_over_vertices(g.n(), |x| bound - gradient_norm_sq(g, &pair.f, x));
    CheckResult::new(
        names::HARNACK_GRADIENT,
        worst,
        CHECK_TOL,
        CheckParams {
            m: Some(m),
            kappa: Some(kappa),
            lambda: Some(pair.lambda),
            ..Default::default()
        },
    )
}

/// `|∇f|²(x) ≤ 8λ · max_z f²(z)` with no curvature term. Known to fail on
/// some graphs, so callers treat the result as an observation.
pub fn check_unconditional_harnack(g: &Graph, pair: &EigenPair) -> CheckResult {
    let bound = 8.0 * pair.lambda * max_sq(&pair.f);
    let worst = worst_over_vertices(g.n(), |x| bound - gradient_norm_sq(g, &pair.f, x));
    CheckResult::new(
        names::UNCONDITIONAL_HARNACK,
        worst,
        CHECK_TOL,
        CheckParams {
            lambda: Some(pair.lambda),
            ..Default::default()
        },
    )
}

/// Lower bounds on a nonzero eigenvalue in terms of max degree `d` and hop diameter `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiameterBound {
    /// `(1 + 2κdD²) / (d(4 − 1/m)D²)`, the bound the Harnack argument yields.
    Derived,
    /// `(1 + 4κdD²) / (d(8 − 2/m)D²)`.
    Halved,
    /// `1 / (8dD²)`, the classical bound for Ricci-flat graphs.
    RicciFlat,
}

pub fn eigenvalue_bound(d: f64, diameter: usize, m: Dimension, kappa: f64, variant: DiameterBound) -> Result<f64> {
    if diameter == 0 || !(d > 0.0) {
        return Err(Error::DegenerateBound { diameter, degree: d });
    }
    let dd2 = d * (diameter * diameter) as f64;
    let inv_m = m.reciprocal();
    Ok(match variant {
        DiameterBound::Derived => (1.0 + 2.0 * kappa * dd2) / (dd2 * (4.0 - inv_m)),
        DiameterBound::Halved => (1.0 + 4.0 * kappa * dd2) / (dd2 * (8.0 - 2.0 * inv_m)),
        DiameterBound::RicciFlat => 1.0 / (8.0 * dd2),
    })
}

/// Whether the derived diameter bound carries information: `1 + 2κdD² > 0`.
pub fn diameter_bound_applies(d: f64, diameter: usize, kappa: f64) -> bool {
    1.0 + 2.0 * kappa * d * (diameter * diameter) as f64 > 0.0
}

/// `κ ≤ λ₁`.
pub fn check_curvature_below_gap(curv: &CurvatureResult, spectral_gap: f64) -> CheckResult {
    CheckResult::new(
        names::CURVATURE_BELOW_GAP,
        (Some(curv.argmin), spectral_gap - curv.kappa),
        1e-9,
        CheckParams {
            m: Some(curv.m),
            kappa: Some(curv.kappa),
            lambda: Some(spectral_gap),
            ..Default::default()
        },
    )
}

/// `|Σ_x d_x f(x)| ≤ tol · Σ_x d_x |f(x)|`; slack is the negated relative imbalance.
pub fn check_mean_zero(g: &Graph, index: usize, pair: &EigenPair) -> CheckResult {
    let (sum, scale) = weighted_sum(g, &pair.f);
    CheckResult::new(
        names::MEAN_ZERO,
        (None, 0.0 - sum.abs() / scale),
        SPECTRAL_TOL,
        CheckParams {
            lambda: Some(pair.lambda),
            eigen_index: Some(index),
            ..Default::default()
        },
    )
}

pub fn check_eigen_residual(g: &Graph, index: usize, pair: &EigenPair) -> CheckResult {
    CheckResult::new(
        names::EIGEN_RESIDUAL,
        (None, 0.0 - eigen_residual(g, pair)),
        SPECTRAL_TOL,
        CheckParams {
            lambda: Some(pair.lambda),
            eigen_index: Some(index),
            ..Default::default()
        },
    )
}

/// Random functions with values uniform in `[-1, 1]`, reproducible from `seed`.
pub fn random_functions(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    pub seed: u64,
    /// Number of random functions for the second-difference check.
    pub samples: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }
}

/// Runs every check for each requested `m` with `κ` set to the computed curvature.
pub fn full_report(
    g: &Graph,
    m_list: &[Dimension],
    alpha_list: &[f64],
    opts: ReportOptions,
) -> Result<VerificationReport> {
    let stats = g.diameter();
    let spectrum = harmonic_eigenpairs(g, DEFAULT_EIGEN_TOL)?;
    let gap = spectrum.spectral_gap().unwrap_or(f64::NAN);
    let samples = random_functions(g.n(), opts.samples, opts.seed);
    let curvature = m_list
        .iter()
        .map(|&m| graph_curvature(g, m))
        .collect::<Result<Vec<_>>>()?;

    let mut checks = Vec::new();
    let mut info = Vec::new();

    for (index, pair) in spectrum.pairs.iter().enumerate() {
        checks.push(check_eigen_residual(g, index, pair));
    }
    for (index, pair) in spectrum.nontrivial() {
        checks.push(check_mean_zero(g, index, pair));
        let c = check_unconditional_harnack(g, pair);
        info.push(InfoEntry {
            name: c.name,
            status: status(c.passed),
            detail: format!(
                "lambda={:e} eigen_index={index} worst_slack={:e} worst_vertex={}",
                pair.lambda,
                c.worst_slack,
                c.worst_vertex.map_or("-".to_string(), |v| v.to_string())
            ),
        });
    }

    for curv in &curvature {
        let (m, kappa) = (curv.m, curv.kappa);

        let worst_random = samples
            .par_iter()
            .map(|f| check_second_difference(g, f, m, kappa))
            .reduce_with(|a, b| if b.worst_slack < a.worst_slack { b } else { a });
        if let Some(mut c) = worst_random {
            c.params.samples = Some(samples.len());
            checks.push(c);
        }

        let per_pair: Vec<(Vec<CheckResult>, Vec<InfoEntry>)> = spectrum
            .nontrivial()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(index, pair)| pair_checks(g, index, pair, m, kappa, alpha_list))
            .collect();
        for (c, i) in per_pair {
            checks.extend(c);
            info.extend(i);
        }

        checks.push(check_curvature_below_gap(curv, gap));

        let d = stats.max_degree;
        let diameter = stats.diameter;
        let derived = eigenvalue_bound(d, diameter, m, kappa, DiameterBound::Derived)?;
        if diameter_bound_applies(d, diameter, kappa) {
            checks.push(CheckResult::new(
                names::DIAMETER_BOUND,
                (None, gap - derived),
                1e-9,
                CheckParams {
                    m: Some(m),
                    kappa: Some(kappa),
                    lambda: Some(gap),
                    ..Default::default()
                },
            ));
        } else {
            info.push(InfoEntry {
                name: names::DIAMETER_BOUND.to_string(),
                status: "skipped".to_string(),
                detail: format!("m={m} kappa={kappa:e}: 1 + 2*kappa*d*D^2 <= 0"),
            });
        }
        let halved = eigenvalue_bound(d, diameter, m, kappa, DiameterBound::Halved)?;
        info.push(InfoEntry {
            name: names::DIAMETER_BOUND_HALVED.to_string(),
            status: status(gap >= halved - 1e-9),
            detail: format!(
                "m={m} kappa={kappa:e} lambda1={gap:e} bound={halved:e}{}",
                if gap >= halved - 1e-9 { "" } else { " (disagrees with the derived bound)" }
            ),
        });
        let flat = eigenvalue_bound(d, diameter, m, kappa, DiameterBound::RicciFlat)?;
        info.push(InfoEntry {
            name: names::DIAMETER_BOUND_RICCI_FLAT.to_string(),
            status: status(gap >= flat - 1e-9),
            detail: format!("m={m} kappa={kappa:e} lambda1={gap:e} bound={flat:e}"),
        });
    }

    checks.sort_by(check_order);
    Ok(VerificationReport {
        graph: GraphSummary {
            n: g.n(),
            edges: g.edge_count(),
            d_max: stats.max_degree,
            diameter: stats.diameter,
        },
        curvature,
        spectrum: spectrum.summary(),
        checks,
        info,
        seed: opts.seed,
    })
}

/// Harnack parameters tried for one eigenpair: `4 − 2κ/λ` first, then the
/// requested values, dropping exact repeats.
pub fn harnack_alphas(lambda: f64, kappa: f64, requested: &[f64]) -> Vec<f64> {
    let mut out = vec![4.0 - 2.0 * kappa / lambda];
    for &a in requested {
        if !out.contains(&a) {
            out.push(a);
        }
    }
    out
}

fn pair_checks(
    g: &Graph,
    index: usize,
    pair: &EigenPair,
    m: Dimension,
    kappa: f64,
    alpha_list: &[f64],
) -> (Vec<CheckResult>, Vec<InfoEntry>) {
    let mut checks = Vec::new();
    let mut info = Vec::new();
    let with_index = |mut c: CheckResult| {
        c.params.eigen_index = Some(index);
        c
    };
    checks.push(with_index(check_second_difference(g, &pair.f, m, kappa)));
    checks.last_mut().unwrap().params.lambda = Some(pair.lambda);
    checks.push(with_index(check_harnack_gradient(g, pair, m, kappa)));
    for alpha in harnack_alphas(pair.lambda, kappa, alpha_list) {
        match check_harnack_pointwise(g, pair, m, kappa, alpha) {
            Ok(c) => checks.push(with_index(c)),
            Err(e) => info.push(InfoEntry {
                name: names::HARNACK_POINTWISE.to_string(),
                status: "skipped".to_string(),
                detail: format!("m={m} eigen_index={index}: {e}"),
            }),
        }
    }
    (checks, info)
}

fn status(passed: bool) -> String {
    if passed { "pass" } else { "fail" }.to_string()
}

fn m_key(m: Option<Dimension>) -> (u8, f64) {
    match m {
        None => (0, 0.0),
        Some(Dimension::Finite(v)) => (1, v),
        Some(Dimension::Infinite) => (2, 0.0),
    }
}

/// Name, then `m`, then eigenpair position, then `α`.
fn check_order(a: &CheckResult, b: &CheckResult) -> Ordering {
    let ka = m_key(a.params.m);
    let kb = m_key(b.params.m);
    a.name
        .cmp(&b.name)
        .then(ka.0.cmp(&kb.0))
        .then(ka.1.total_cmp(&kb.1))
        .then(a.params.eigen_index.cmp(&b.params.eigen_index))
        .then(
            a.params
                .alpha
                .unwrap_or(f64::NEG_INFINITY)
                .total_cmp(&b.params.alpha.unwrap_or(f64::NEG_INFINITY)),
        )
}
