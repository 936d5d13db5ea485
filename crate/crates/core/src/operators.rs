//! The normalized graph Laplace operator and the carré du champ forms built on it.
//!
//! Conventions: `Δf(x) = (1/d_x) Σ_{y~x} w_xy (f(y) − f(x))` (negative
//! semidefinite), `Γ(f,h)(x) = (1/2d_x) Σ_{y~x} w_xy (f(x)−f(y))(h(x)−h(y))`,
//! `|∇f|²(x) = 2Γ(f,f)(x)` and `Γ₂(f,f) = ½ΔΓ(f,f) − Γ(f,Δf)`.
//! Pointwise functions take the vertex explicitly so callers can work on
//! 2-ball supports.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::SymmetricMatrix;

/// A finite real value per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction {
    values: Vec<f64>,
}

impl VertexFunction {
    pub fn new(g: &Graph, values: Vec<f64>) -> Result<Self> {
        if values.len() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                got: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(VertexFunction { values })
    }

    pub fn constant(g: &Graph, c: f64) -> Self {
        VertexFunction {
            values: vec![c; g.n()],
        }
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.values
    }
}

impl Deref for VertexFunction {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.values
    }
}

/// `Δf(x)`.
pub fn laplacian_at(g: &Graph, f: &[f64], x: usize) -> f64 {
    let fx = f[x];
    g.neighbors(x)
        .iter()
        .map(|&(y, w)| w * (f[y] - fx))
        .sum::<f64>()
        / g.degree(x)
}

/// `Δf` at every vertex.
pub fn apply_laplacian(g: &Graph, f: &[f64]) -> Vec<f64> {
    (0..g.n()).map(|x| laplacian_at(g, f, x)).collect()
}

/// `𝓛 = I − D^{-1/2} A D^{-1/2}`.
pub fn sym_laplacian_matrix(g: &Graph) -> SymmetricMatrix {
    let n = g.n();
    let mut m = SymmetricMatrix::identity(n);
    for &(a, b, w) in g.edges() {
        m.set(a, b, -w / (g.degree(a) * g.degree(b)).sqrt());
    }
    m
}

/// `Γ(f,h)(x)`.
pub fn gamma(g: &Graph, f: &[f64], h: &[f64], x: usize) -> f64 {
    let (fx, hx) = (f[x], h[x]);
    g.neighbors(x)
        .iter()
        .map(|&(y, w)| w * (fx - f[y]) * (hx - h[y]))
        .sum::<f64>()
        / (2.0 * g.degree(x))
}

/// `|∇f|²(x) = (1/d_x) Σ_{y~x} w_xy (f(x) − f(y))²`.
pub fn gradient_norm_sq(g: &Graph, f: &[f64], x: usize) -> f64 {
    let fx = f[x];
    g.neighbors(x)
        .iter()
        .map(|&(y, w)| w * (fx - f[y]).powi(2))
        .sum::<f64>()
        / g.degree(x)
}

/// `Γ₂(f,f)(x)` evaluated from its definition: `½{ΔΓ(f,f)(x) − 2Γ(f,Δf)(x)}`.
///
/// Only the closed neighborhood of `x` is touched, so the auxiliary
/// functions are filled there and left at zero elsewhere.
pub fn gamma2_def(g: &Graph, f: &[f64], x: usize) -> f64 {
    let n = g.n();
    let mut carre = vec![0.0; n];
    let mut lap = vec![0.0; n];
    carre[x] = gamma(g, f, f, x);
    lap[x] = laplacian_at(g, f, x);
    for &(y, _) in g.neighbors(x) {
        carre[y] = gamma(g, f, f, y);
        lap[y] = laplacian_at(g, f, y);
    }
    0.5 * (laplacian_at(g, &carre, x) - 2.0 * gamma(g, f, &lap, x))
}

/// `(1/d_x) Σ_{y~x} (w_xy/d_y) Σ_{z~y} w_yz [f(x) − 2f(y) + f(z)]²`, the
/// weighted sum of squared second differences over the 2-ball of `x`.
pub fn second_difference_sum(g: &Graph, f: &[f64], x: usize) -> f64 {
    let fx = f[x];
    g.neighbors(x)
        .iter()
        .map(|&(y, wxy)| {
            let fy = f[y];
            let inner: f64 = g
                .neighbors(y)
                .iter()
                .map(|&(z, wyz)| wyz * (fx - 2.0 * fy + f[z]).powi(2))
                .sum();
            wxy / g.degree(y) * inner
        })
        .sum::<f64>()
        / g.degree(x)
}

/// `Γ₂(f,f)(x)` in closed form over the 2-ball:
/// `¼·second_difference_sum − ½|∇f|²(x) + ½(Δf(x))²`.
pub fn gamma2_local(g: &Graph, f: &[f64], x: usize) -> f64 {
    0.25 * second_difference_sum(g, f, x) - 0.5 * gradient_norm_sq(g, f, x)
        + 0.5 * laplacian_at(g, f, x).powi(2)
}
