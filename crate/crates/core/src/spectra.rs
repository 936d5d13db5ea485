//! Spectrum of the normalized Laplacian and the matching harmonic eigenfunctions.

use serde::Serialize;

use crate::error::Result;
use crate::graph::Graph;
use crate::operators::{laplacian_at, sym_laplacian_matrix};

pub use crate::linalg::{symmetric_eigen, Eigen};

/// Eigenvalues at or below this are treated as the trivial eigenvalue 0.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// Default residual tolerance handed to the eigensolver.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub lambda: f64,
    /// Unit eigenvector of `𝓛`.
    pub phi: Vec<f64>,
    /// Harmonic eigenfunction `f = D^{-1/2} φ`, so `(−Δ)f = λf`.
    pub f: Vec<f64>,
    pub trivial: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Sorted ascending by eigenvalue.
    pub pairs: Vec<EigenPair>,
    pub zero_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSummary {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.lambda).collect()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = (usize, &EigenPair)> {
        self.pairs.iter().enumerate().filter(|(_, p)| !p.trivial)
    }

    /// Smallest nontrivial eigenvalue `λ₁`.
    pub fn spectral_gap(&self) -> Option<f64> {
        self.nontrivial().map(|(_, p)| p.lambda).next()
    }

    pub fn summary(&self) -> SpectrumSummary {
        SpectrumSummary {
            eigenvalues: self.eigenvalues(),
        }
    }
}

/// All eigenpairs of `−Δ`, computed through the symmetric matrix `𝓛`.
pub fn harmonic_eigenpairs(g: &Graph, tol: f64) -> Result<Spectrum> {
    harmonic_eigenpairs_with(g, tol, DEFAULT_ZERO_TOL)
}

pub fn harmonic_eigenpairs_with(g: &Graph, tol: f64, zero_tol: f64) -> Result<Spectrum> {
    let Eigen { values, vectors } = symmetric_eigen(&sym_laplacian_matrix(g), tol)?;
    let pairs = values
        .into_iter()
        .zip(vectors)
        .map(|(lambda, phi)| {
            let f = phi
                .iter()
                .zip(g.degrees())
                .map(|(p, d)| p / d.sqrt())
                .collect();
            EigenPair {
                lambda,
                phi,
                f,
                trivial: lambda <= zero_tol,
            }
        })
        .collect();
    Ok(Spectrum { pairs, zero_tol })
}

/// `max_x |(−Δf)(x) − λf(x)|`.
pub fn eigen_residual(g: &Graph, pair: &EigenPair) -> f64 {
    (0..g.n())
        .map(|x| (-laplacian_at(g, &pair.f, x) - pair.lambda * pair.f[x]).abs())
        .fold(0.0, f64::max)
}

/// `Σ_x d_x f(x)` together with the scale `Σ_x d_x |f(x)|`.
pub fn weighted_sum(g: &Graph, f: &[f64]) -> (f64, f64) {
    f.iter()
        .zip(g.degrees())
        .fold((0.0, 0.0), |(s, a), (v, d)| (s + d * v, a + d * v.abs()))
}
