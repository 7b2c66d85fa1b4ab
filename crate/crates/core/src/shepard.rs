//! Modified Shepard transformation.
//!
//! `F(x) = Σ_j W̄_j(x) L_j(x)` where each nodal function `L_j` is a local RBF
//! interpolant on the `N_L` sources nearest `x_j`, and the weights
//! `W_j = τ_j / ‖x − x_j‖²` are normalized to a partition of unity.
//!
//! `τ_j = 1` when `x_j` is one of the `N_W` landmarks nearest `x` and `x`
//! lies in the hypercube of side `ρ_j` centred at `x_j`. If no landmark
//! passes both tests, the nearest-`N_W` test alone is used.

use crate::error::{Error, Result};
use crate::kernel::RadialKernel;
use crate::landmarks::{distance_sq, LandmarkSet};
use crate::transform::{monomial_exponents, solve_transform, KernelTransform};

/// How the hypercube side `ρ_j` of each landmark is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RhoRule {
    /// `ρ_j` is twice the distance from `x_j` to its `N_W`-th nearest landmark.
    AutoPerNode,
    Fixed(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShepardConfig {
    /// Neighborhood size `N_L` of each nodal interpolant.
    pub n_local: usize,
    /// Number `N_W` of nearest landmarks that may carry weight at a point.
    pub n_weight: usize,
    pub nodal_kernel: RadialKernel,
    pub rho: RhoRule,
    /// Points closer than this to a landmark take its cardinal weight.
    pub snap_eps: f64,
}

impl ShepardConfig {
    pub fn new(n_local: usize, n_weight: usize, nodal_kernel: RadialKernel) -> Self {
        Self { n_local, n_weight, nodal_kernel, rho: RhoRule::AutoPerNode, snap_eps: 1e-12 }
    }

    /// Checks the configuration against `n` landmarks in `dim` dimensions.
    pub fn validate(&self, n: usize, dim: usize) -> Result<()> {
        self.nodal_kernel.validate()?;
        if self.n_local == 0 || self.n_local > n {
            return Err(Error::Config(format!("n_l must be in 1..={n}, got {}", self.n_local)));
        }
        if self.n_weight == 0 || self.n_weight > n {
            return Err(Error::Config(format!("n_w must be in 1..={n}, got {}", self.n_weight)));
        }
        if let Some(d) = self.nodal_kernel.polynomial_tail_degree() {
            let u = monomial_exponents(dim, d).len();
            if self.n_local <= u {
                return Err(Error::Config(format!(
                    "n_l = {} must exceed the polynomial tail dimension {u}",
                    self.n_local
                )));
            }
        }
        if let RhoRule::Fixed(r) = self.rho {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::Config(format!("rho must be positive, got {r}")));
            }
        }
        if !(self.snap_eps.is_finite() && self.snap_eps > 0.0) {
            return Err(Error::Config("snap tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Indices of the `k` landmarks nearest `x`, closest first, ties by index.
pub fn nearest_landmarks(landmarks: &LandmarkSet, x: &[f64], k: usize) -> Result<Vec<usize>> {
    if k == 0 || k > landmarks.len() {
        return Err(Error::Domain(format!(
            "cannot select {k} nearest of {} landmarks",
            landmarks.len()
        )));
    }
    Ok(nearest_unchecked(landmarks, x, k))
}

fn nearest_unchecked(landmarks: &LandmarkSet, x: &[f64], k: usize) -> Vec<usize> {
    let d: Vec<f64> = (0..landmarks.len()).map(|j| distance_sq(x, landmarks.source(j))).collect();
    let mut idx: Vec<usize> = (0..landmarks.len()).collect();
    idx.sort_by(|&a, &b| d[a].total_cmp(&d[b]).then(a.cmp(&b)));
    idx.truncate(k);
    idx
}

/// Local interpolant attached to one landmark.
#[derive(Clone, Debug)]
pub struct NodalFunction {
    center: usize,
    neighbors: Vec<usize>,
    local: KernelTransform,
}

impl NodalFunction {
    pub fn center(&self) -> usize {
        self.center
    }

    /// Global indices of the neighborhood, nearest first (the centre leads).
    pub fn neighbors(&self) -> &[usize] {
        &self.neighbors
    }

    pub fn local(&self) -> &KernelTransform {
        &self.local
    }

    pub fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        self.local.evaluate(x)
    }
}

/// Solves the `N` local systems.
pub fn build_nodal_interpolants(landmarks: &LandmarkSet, cfg: &ShepardConfig) -> Result<Vec<NodalFunction>> {
    cfg.validate(landmarks.len(), landmarks.dim())?;
    (0..landmarks.len())
        .map(|j| {
            let neighbors = nearest_unchecked(landmarks, landmarks.source(j), cfg.n_local);
            let local = solve_transform(&cfg.nodal_kernel, &landmarks.subset(&neighbors))
                .map_err(|e| Error::Solvability(format!("nodal interpolant {j}: {e}")))?;
            Ok(NodalFunction { center: j, neighbors, local })
        })
        .collect()
}

fn hypercube_sides(landmarks: &LandmarkSet, cfg: &ShepardConfig) -> Vec<f64> {
    match cfg.rho {
        RhoRule::Fixed(r) => vec![r; landmarks.len()],
        RhoRule::AutoPerNode => (0..landmarks.len())
            .map(|j| {
                let x = landmarks.source(j);
                let nn = nearest_unchecked(landmarks, x, cfg.n_weight);
                let far = *nn.last().expect("n_weight >= 1");
                2.0 * distance_sq(x, landmarks.source(far)).sqrt()
            })
            .collect(),
    }
}

/// Sparse normalized weights as `(index, weight)` pairs with weight > 0.
fn weights_sparse(landmarks: &LandmarkSet, cfg: &ShepardConfig, rho: &[f64], x: &[f64]) -> Vec<(usize, f64)> {
    let nearest = nearest_unchecked(landmarks, x, cfg.n_weight);
    let first = nearest[0];
    if distance_sq(x, landmarks.source(first)).sqrt() < cfg.snap_eps {
        return vec![(first, 1.0)];
    }
    let in_cube = |j: usize| {
        landmarks
            .source(j)
            .iter()
            .zip(x)
            .all(|(c, v)| (v - c).abs() <= 0.5 * rho[j])
    };
    let mut active: Vec<usize> = nearest.iter().copied().filter(|&j| in_cube(j)).collect();
    if active.is_empty() {
        active = nearest;
    }
    active.sort_unstable();
    let raw: Vec<f64> = active.iter().map(|&j| 1.0 / distance_sq(x, landmarks.source(j))).collect();
    let total: f64 = raw.iter().sum();
    active.into_iter().zip(raw).map(|(j, w)| (j, w / total)).collect()
}

/// Normalized weights `W̄_j(x)` for all `N` landmarks.
pub fn shepard_weights(landmarks: &LandmarkSet, cfg: &ShepardConfig, x: &[f64]) -> Result<Vec<f64>> {
    cfg.validate(landmarks.len(), landmarks.dim())?;
    let rho = hypercube_sides(landmarks, cfg);
    let mut w = vec![0.0; landmarks.len()];
    for (j, v) in weights_sparse(landmarks, cfg, &rho, x) {
        w[j] = v;
    }
    Ok(w)
}

/// `F(x) = Σ_j W̄_j(x) L_j(x)` over the landmarks with positive weight.
pub fn evaluate_shepard(
    landmarks: &LandmarkSet,
    cfg: &ShepardConfig,
    nodal: &[NodalFunction],
    x: &[f64],
) -> Result<Vec<f64>> {
    cfg.validate(landmarks.len(), landmarks.dim())?;
    if nodal.len() != landmarks.len() {
        return Err(Error::Config(format!(
            "{} nodal functions for {} landmarks",
            nodal.len(),
            landmarks.len()
        )));
    }
    let rho = hypercube_sides(landmarks, cfg);
    Ok(combine(landmarks, cfg, &rho, nodal, x))
}

fn combine(
    landmarks: &LandmarkSet,
    cfg: &ShepardConfig,
    rho: &[f64],
    nodal: &[NodalFunction],
    x: &[f64],
) -> Vec<f64> {
    let weights = weights_sparse(landmarks, cfg, rho, x);
    if let [(j, w)] = weights[..] {
        if w == 1.0 && distance_sq(x, landmarks.source(j)).sqrt() < cfg.snap_eps {
            // L_j(x_j) = t_j, reported without the local solve's rounding
            return landmarks.target(j).to_vec();
        }
    }
    let mut out = vec![0.0; landmarks.dim()];
    let mut buf = vec![0.0; landmarks.dim()];
    for (j, w) in weights {
        nodal[j].local.evaluate_into(x, &mut buf);
        for (o, v) in out.iter_mut().zip(&buf) {
            *o += w * v;
        }
    }
    out
}

/// A built modified Shepard transformation.
#[derive(Clone, Debug)]
pub struct ShepardTransform {
    landmarks: LandmarkSet,
    cfg: ShepardConfig,
    rho: Vec<f64>,
    nodal: Vec<NodalFunction>,
}

impl ShepardTransform {
    pub fn build(landmarks: &LandmarkSet, cfg: ShepardConfig) -> Result<Self> {
        let nodal = build_nodal_interpolants(landmarks, &cfg)?;
        let rho = hypercube_sides(landmarks, &cfg);
        Ok(Self { landmarks: landmarks.clone(), cfg, rho, nodal })
    }

    pub fn dim(&self) -> usize {
        self.landmarks.dim()
    }

    pub fn config(&self) -> &ShepardConfig {
        &self.cfg
    }

    pub fn nodal(&self) -> &[NodalFunction] {
        &self.nodal
    }

    /// Hypercube side `ρ_j` per landmark.
    pub fn hypercube_sides(&self) -> &[f64] {
        &self.rho
    }

    pub fn weights(&self, x: &[f64]) -> Vec<f64> {
        let mut w = vec![0.0; self.landmarks.len()];
        for (j, v) in weights_sparse(&self.landmarks, &self.cfg, &self.rho, x) {
            w[j] = v;
        }
        w
    }

    /// Landmarks carrying positive weight at `x`.
    pub fn active(&self, x: &[f64]) -> Vec<usize> {
        weights_sparse(&self.landmarks, &self.cfg, &self.rho, x)
            .into_iter()
            .map(|(j, _)| j)
            .collect()
    }

    pub fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        combine(&self.landmarks, &self.cfg, &self.rho, &self.nodal, x)
    }

    /// Worst interpolation residual over the nodal local systems.
    pub fn residual(&self) -> f64 {
        self.nodal.iter().map(|n| n.local.report().residual).fold(0.0, f64::max)
    }

    pub fn worst_condition(&self) -> f64 {
        self.nodal.iter().map(|n| n.local.report().condition).fold(0.0, f64::max)
    }
}
