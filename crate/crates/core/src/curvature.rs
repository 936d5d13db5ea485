//! Pointwise Bakry–Émery curvature `κ(x, m)`: the largest `κ` with
//! `Γ₂(f,f)(x) ≥ (1/m)(Δf(x))² + κ Γ(f,f)(x)` for every `f`.
//!
//! With the gauge `f(x) = 0`, both sides are quadratic forms in the values of
//! `f` on the 1-sphere `S1` and 2-sphere `S2` of `x`. The `S2` block of the
//! left form is diagonal and positive, so those coordinates are eliminated
//! exactly by a Schur complement, leaving a pencil over `S1` whose right form
//! is a positive diagonal. `κ(x, m)` is the pencil's smallest eigenvalue.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{min_eigenvalue, SymmetricMatrix};
use crate::operators::{gamma, gamma2_local, laplacian_at};

const PENCIL_TOL: f64 = 1e-10;

/// Dimension parameter `m ∈ (1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dimension {
    Finite(f64),
    Infinite,
}

impl Dimension {
    pub fn finite(m: f64) -> Result<Self> {
        if m.is_finite() && m > 1.0 {
            Ok(Dimension::Finite(m))
        } else if m == f64::INFINITY {
            Ok(Dimension::Infinite)
        } else {
            Err(Error::InvalidDimension(m.to_string()))
        }
    }

    /// `1/m`, zero for `m = ∞`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Dimension::Finite(m) => 1.0 / m,
            Dimension::Infinite => 0.0,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Dimension::Finite(m) => m,
            Dimension::Infinite => f64::INFINITY,
        }
    }
}

impl FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Dimension::Infinite);
        }
        let m: f64 = t.parse().map_err(|_| Error::InvalidDimension(s.to_string()))?;
        if !m.is_finite() {
            return Err(Error::InvalidDimension(s.to_string()));
        }
        Dimension::finite(m).map_err(|_| Error::InvalidDimension(s.to_string()))
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(m) => write!(f, "{m}"),
            Dimension::Infinite => f.write_str("inf"),
        }
    }
}

/// Finite values serialize as numbers, infinity as the string `"inf"`.
impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dimension::Finite(m) => s.serialize_f64(*m),
            Dimension::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Neighbors and vertices at distance exactly two, both sorted by index.
pub fn two_ball(g: &Graph, x: usize) -> (Vec<usize>, Vec<usize>) {
    let s1: Vec<usize> = g.neighbors(x).iter().map(|&(y, _)| y).collect();
    let mut s2: Vec<usize> = s1
        .iter()
        .flat_map(|&y| g.neighbors(y).iter().map(|&(z, _)| z))
        .filter(|&z| z != x && g.weight(x, z).is_none())
        .collect();
    s2.sort_unstable();
    s2.dedup();
    (s1, s2)
}

/// Quadratic forms at a vertex in the gauge `f(x) = 0`.
///
/// Coordinates are `f` on `s1` followed by `f` on `s2`. `q` represents
/// `Γ₂(f,f)(x) − (1/m)(Δf(x))²` and `g1` the diagonal of `Γ(f,f)(x)` over `s1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalForms {
    pub center: usize,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub q: SymmetricMatrix,
    pub g1: Vec<f64>,
}

impl LocalForms {
    /// Lifts a coordinate vector to a function on the whole graph (zero off the 2-ball).
    pub fn to_function(&self, n: usize, coords: &[f64]) -> Vec<f64> {
        let mut f = vec![0.0; n];
        for (&v, &c) in self.s1.iter().chain(&self.s2).zip(coords) {
            f[v] = c;
        }
        f
    }

    /// `q` with the `s2` coordinates minimized out.
    pub fn reduced(&self) -> SymmetricMatrix {
        let k = self.s1.len();
        let mut reduced = SymmetricMatrix::from_fn(k, |i, j| self.q.get(i, j));
        for z in k..self.q.order() {
            let pivot = self.q.get(z, z);
            let col: Vec<f64> = (0..k).map(|i| self.q.get(i, z)).collect();
            if col.iter().all(|&c| c == 0.0) {
                continue;
            }
            for i in 0..k {
                for j in i..k {
                    let v = reduced.get(i, j) - col[i] * col[j] / pivot;
                    reduced.set(i, j, v);
                }
            }
        }
        reduced
    }
}

pub fn local_forms(g: &Graph, x: usize, m: Dimension) -> LocalForms {
    let (s1, s2) = two_ball(g, x);
    let index: HashMap<usize, usize> = s1
        .iter()
        .chain(&s2)
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let dim = s1.len() + s2.len();
    let dx = g.degree(x);
    let mut q = SymmetricMatrix::zeros(dim);

    // ¼ second_difference_sum: terms coef · (−2f(y) + f(z))², with f(x) = 0
    for (iy, &(y, wxy)) in g.neighbors(x).iter().enumerate() {
        let cy = wxy / (4.0 * dx * g.degree(y));
        for &(z, wyz) in g.neighbors(y) {
            let coef = cy * wyz;
            q.add(iy, iy, 4.0 * coef);
            if z != x {
                let iz = index[&z];
                q.add(iz, iz, coef);
                q.add(iy, iz, -2.0 * coef);
            }
        }
    }
    // −½|∇f|²(x)
    for (iy, &(_, wxy)) in g.neighbors(x).iter().enumerate() {
        q.add(iy, iy, -wxy / (2.0 * dx));
    }
    // (½ − 1/m)(Δf(x))², Δf(x) = Σ_y (w_xy/d_x) f(y)
    let c = 0.5 - m.reciprocal();
    let nbrs = g.neighbors(x);
    for (i, &(_, wi)) in nbrs.iter().enumerate() {
        for (j, &(_, wj)) in nbrs.iter().enumerate().skip(i) {
            q.add(i, j, c * (wi / dx) * (wj / dx));
        }
    }
    let g1 = nbrs.iter().map(|&(_, w)| w / (2.0 * dx)).collect();
    LocalForms {
        center: x,
        s1,
        s2,
        q,
        g1,
    }
}

/// `κ(x, m)`.
pub fn vertex_curvature(g: &Graph, x: usize, m: Dimension) -> Result<f64> {
    let forms = local_forms(g, x, m);
    let reduced = forms.reduced();
    let k = forms.g1.len();
    let scale: Vec<f64> = forms.g1.iter().map(|v| v.sqrt().recip()).collect();
    let pencil = SymmetricMatrix::from_fn(k, |i, j| reduced.get(i, j) * scale[i] * scale[j]);
    min_eigenvalue(&pencil, PENCIL_TOL)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureResult {
    pub m: Dimension,
    pub kappa: f64,
    /// Lowest vertex index attaining `kappa`.
    pub argmin: usize,
    pub per_vertex: Vec<f64>,
}

pub fn graph_curvature(g: &Graph, m: Dimension) -> Result<CurvatureResult> {
    let per_vertex = (0..g.n())
        .into_par_iter()
        .map(|x| vertex_curvature(g, x, m))
        .collect::<Result<Vec<f64>>>()?;
    let (argmin, kappa) = argmin(&per_vertex);
    Ok(CurvatureResult {
        m,
        kappa,
        argmin,
        per_vertex,
    })
}

fn argmin(values: &[f64]) -> (usize, f64) {
    values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bi, bv), (i, &v)| if v < bv { (i, v) } else { (bi, bv) })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdCheck {
    pub holds: bool,
    pub worst_vertex: usize,
    /// `min_x κ(x,m) − kappa`.
    pub worst_slack: f64,
}

/// Whether `CD(m, kappa)` holds at every vertex up to `tol`.
pub fn check_cd(g: &Graph, m: Dimension, kappa: f64, tol: f64) -> Result<CdCheck> {
    let res = graph_curvature(g, m)?;
    let slack = res.kappa - kappa;
    Ok(CdCheck {
        holds: slack >= -tol,
        worst_vertex: res.argmin,
        worst_slack: slack,
    })
}

/// Upper estimate of `κ(x, m)` by direct minimization of
/// `[Γ₂(f,f)(x) − (1/m)(Δf(x))²] / Γ(f,f)(x)` over all 2-ball values of `f`.
///
/// The forms are only evaluated, never assembled: gradients come from
/// central differences (exact for quadratics) and each step is an exact line
/// search on the ratio of two quadratics along a Polak–Ribière direction.
pub fn curvature_oracle(g: &Graph, x: usize, m: Dimension, trials: usize, seed: u64) -> f64 {
    let (s1, s2) = two_ball(g, x);
    let coords: Vec<usize> = s1.into_iter().chain(s2).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (x as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut search = RatioSearch {
        g,
        x,
        inv_m: m.reciprocal(),
        coords: &coords,
        buf: vec![0.0; g.n()],
    };
    let mut best = f64::INFINITY;
    for _ in 0..trials.max(1) {
        let start: Vec<f64> = coords.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
        best = best.min(search.minimize(start));
    }
    best
}

struct RatioSearch<'a> {
    g: &'a Graph,
    x: usize,
    inv_m: f64,
    coords: &'a [usize],
    buf: Vec<f64>,
}

impl RatioSearch<'_> {
    fn forms(&mut self, v: &[f64]) -> (f64, f64) {
        for (&c, &val) in self.coords.iter().zip(v) {
            self.buf[c] = val;
        }
        let f = &self.buf;
        let lap = laplacian_at(self.g, f, self.x);
        let num = gamma2_local(self.g, f, self.x) - self.inv_m * lap * lap;
        let den = gamma(self.g, f, f, self.x);
        (num, den)
    }

    fn gradients(&mut self, v: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let h = norm(v).max(1e-8);
        let mut probe = v.to_vec();
        let mut gn = Vec::with_capacity(v.len());
        let mut gd = Vec::with_capacity(v.len());
        for i in 0..v.len() {
            probe[i] = v[i] + h;
            let (np, dp) = self.forms(&probe);
            probe[i] = v[i] - h;
            let (nm, dm) = self.forms(&probe);
            probe[i] = v[i];
            gn.push((np - nm) / (2.0 * h));
            gd.push((dp - dm) / (2.0 * h));
        }
        (gn, gd)
    }

    fn minimize(&mut self, mut v: Vec<f64>) -> f64 {
        let dim = v.len();
        let (mut num, mut den) = self.forms(&v);
        if den <= 0.0 {
            return f64::INFINITY;
        }
        let mut ratio = num / den;
        let mut dir = vec![0.0; dim];
        let mut prev_grad: Option<Vec<f64>> = None;
        let mut stalls = 0;
        for iter in 0..(40 * dim + 100) {
            let (gn, gd) = self.gradients(&v);
            let grad: Vec<f64> = gn.iter().zip(&gd).map(|(a, b)| (a - ratio * b) / den).collect();
            let gnorm = norm(&grad);
            if gnorm <= 1e-14 * (1.0 + ratio.abs()) {
                break;
            }
            let beta = match &prev_grad {
                Some(pg) if iter % dim != 0 => {
                    let pp: f64 = pg.iter().map(|a| a * a).sum();
                    let num: f64 = grad.iter().zip(pg).map(|(a, b)| a * (a - b)).sum();
                    (num / pp).max(0.0)
                }
                _ => 0.0,
            };
            for (d, gi) in dir.iter_mut().zip(&grad) {
                *d = -gi + beta * *d;
            }
            let scale = norm(&v) / norm(&dir);
            dir.iter_mut().for_each(|d| *d *= scale);
            prev_grad = Some(grad);

            let Some((t, r)) = self.line_search(&v, &dir, num, den) else {
                break;
            };
            if r < ratio {
                for (vi, d) in v.iter_mut().zip(&dir) {
                    *vi += t * d;
                }
                let nv = norm(&v);
                v.iter_mut().for_each(|a| *a /= nv);
                let improvement = ratio - r;
                (num, den) = self.forms(&v);
                ratio = num / den;
                if improvement <= 1e-15 * (1.0 + ratio.abs()) {
                    stalls += 1;
                } else {
                    stalls = 0;
                }
            } else {
                stalls += 1;
                prev_grad = None;
            }
            if stalls >= 3 {
                break;
            }
        }
        ratio
    }

    /// Exact minimizer of `r(t) = N(v + t p) / D(v + t p)`.
    fn line_search(&mut self, v: &[f64], p: &[f64], n0: f64, d0: f64) -> Option<(f64, f64)> {
        let plus: Vec<f64> = v.iter().zip(p).map(|(a, b)| a + b).collect();
        let minus: Vec<f64> = v.iter().zip(p).map(|(a, b)| a - b).collect();
        let (np, dp) = self.forms(&plus);
        let (nm, dm) = self.forms(&minus);
        // N(t) = n0 + bn t + cn t², D(t) = d0 + bd t + cd t²
        let (bn, cn) = ((np - nm) / 2.0, (np + nm) / 2.0 - n0);
        let (bd, cd) = ((dp - dm) / 2.0, (dp + dm) / 2.0 - d0);
        // r'(t) = 0  ⇔  (cn bd − bn cd) t² + 2 (cn d0 − n0 cd) t + (bn d0 − n0 bd) = 0
        let qa = cn * bd - bn * cd;
        let qb = 2.0 * (cn * d0 - n0 * cd);
        let qc = bn * d0 - n0 * bd;
        let mut roots = Vec::with_capacity(2);
        if qa.abs() > 1e-300 {
            let disc = qb * qb - 4.0 * qa * qc;
            if disc >= 0.0 {
                let sq = disc.sqrt();
                let qq = -0.5 * (qb + qb.signum() * sq);
                roots.push(qq / qa);
                if qq != 0.0 {
                    roots.push(qc / qq);
                }
            }
        } else if qb.abs() > 1e-300 {
            roots.push(-qc / qb);
        }
        roots
            .into_iter()
            .filter(|t| t.is_finite())
            .filter_map(|t| {
                let den = d0 + bd * t + cd * t * t;
                (den > 0.0).then(|| (t, (n0 + bn * t + cn * t * t) / den))
            })
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};

    #[test]
    fn parse_dimension() {
        assert_eq!("inf".parse::<Dimension>().unwrap(), Dimension::Infinite);
        assert_eq!("Infinity".parse::<Dimension>().unwrap(), Dimension::Infinite);
        assert_eq!("INF".parse::<Dimension>().unwrap(), Dimension::Infinite);
        assert_eq!("2.5".parse::<Dimension>().unwrap(), Dimension::Finite(2.5));
        assert!("1".parse::<Dimension>().is_err());
        assert!("0.5".parse::<Dimension>().is_err());
        assert!("nan".parse::<Dimension>().is_err());
        assert!("two".parse::<Dimension>().is_err());
        assert_eq!(Dimension::finite(f64::INFINITY).unwrap(), Dimension::Infinite);
    }

    #[test]
    fn two_vertex_forms() {
        let k2 = complete(2).unwrap();
        let forms = local_forms(&k2, 0, Dimension::Infinite);
        assert_eq!(forms.s1, vec![1]);
        assert!(forms.s2.is_empty());
        // Q(t) = t², Γ(t) = t²/2
        assert_eq!(forms.q.get(0, 0), 1.0);
        assert_eq!(forms.g1, vec![0.5]);
    }

    #[test]
    fn sphere_sizes() {
        let k5 = complete(5).unwrap();
        for x in 0..5 {
            assert!(local_forms(&k5, x, Dimension::Infinite).s2.is_empty());
        }
        let forms = local_forms(&cycle(4).unwrap(), 0, Dimension::Infinite);
        assert_eq!((forms.s1.len(), forms.s2.len()), (2, 1));
    }

    #[test]
    fn two_vertex_curvature() {
        let k2 = complete(2).unwrap();
        for (m, want) in [
            (Dimension::Infinite, 2.0),
            (Dimension::Finite(2.0), 1.0),
            (Dimension::Finite(5.0), 2.0 - 2.0 / 5.0),
        ] {
            assert!((vertex_curvature(&k2, 0, m).unwrap() - want).abs() < 1e-12);
        }
        let res = graph_curvature(&k2, Dimension::Infinite).unwrap();
        assert_eq!(res.argmin, 0);
        assert!((res.kappa - 2.0).abs() < 1e-12);
    }

    #[test]
    fn oracle_two_vertex() {
        let k2 = complete(2).unwrap();
        let est = curvature_oracle(&k2, 0, Dimension::Infinite, 100, 1);
        assert!((est - 2.0).abs() < 1e-6);
    }

    #[test]
    fn cd_check_boundary() {
        let k2 = complete(2).unwrap();
        assert!(check_cd(&k2, Dimension::Infinite, 2.0, 1e-9).unwrap().holds);
        assert!(!check_cd(&k2, Dimension::Infinite, 2.0 + 1e-3, 0.0).unwrap().holds);
    }

    #[test]
    fn argmin_prefers_lowest_index() {
        assert_eq!(argmin(&[1.0, 0.5, 0.5, 2.0]), (1, 0.5));
    }
}
