//! Global radial and tensor-product interpolating transformations.
//!
//! Each coordinate `F_k` of `F: R^m -> R^m` solves its own interpolation
//! problem over the same symmetric system
//!
//! ```text
//! [ M   Q ] [a]   [t_k]
//! [ Qᵀ  0 ] [b] = [ 0 ]
//! ```
//!
//! where `Q` is present only for conditionally positive definite kernels.

use nalgebra::{DMatrix, DVector};

use crate::dd::{two_prod, two_sum};
use crate::error::{Error, Result};
use crate::kernel::{RadialKernel, UnivariateKernel};
use crate::landmarks::{distance, LandmarkSet};
use crate::linalg::{self, FactorKind, SystemSolver};
use crate::lobachevsky::LobachevskySpec;
use crate::shepard::ShepardTransform;

/// Condition estimates above this flag the transformation as ill-conditioned.
pub const ILL_CONDITIONED: f64 = 1e16;

/// Relative singular-value threshold below which the tail block is rank deficient.
const TAIL_RANK_TOL: f64 = 1e-10;

/// A univariate factor of a tensor-product kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TensorFactor {
    Wendland(UnivariateKernel),
    Lobachevsky(LobachevskySpec),
}

impl TensorFactor {
    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        match self {
            TensorFactor::Wendland(k) => k.value(x),
            TensorFactor::Lobachevsky(l) => l.value(x),
        }
    }

    pub fn support_radius(&self) -> f64 {
        match self {
            TensorFactor::Wendland(k) => k.support_radius(),
            TensorFactor::Lobachevsky(l) => l.support_radius(),
        }
    }
}

impl From<UnivariateKernel> for TensorFactor {
    fn from(k: UnivariateKernel) -> Self {
        TensorFactor::Wendland(k)
    }
}

impl From<LobachevskySpec> for TensorFactor {
    fn from(l: LobachevskySpec) -> Self {
        TensorFactor::Lobachevsky(l)
    }
}

/// The basis function family of a kernel transformation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Basis {
    /// `Φ(‖x − y‖₂)`.
    Radial(RadialKernel),
    /// `Π_d ψ(x_d − y_d)`.
    Tensor(TensorFactor),
}

impl Basis {
    #[inline]
    pub fn between(&self, x: &[f64], y: &[f64]) -> f64 {
        match self {
            Basis::Radial(k) => k.value(distance(x, y)),
            Basis::Tensor(f) => {
                let mut p = 1.0;
                for (a, b) in x.iter().zip(y) {
                    p *= f.value(a - b);
                    if p == 0.0 {
                        break;
                    }
                }
                p
            }
        }
    }

    pub fn tail_degree(&self) -> Option<usize> {
        match self {
            Basis::Radial(k) => k.polynomial_tail_degree(),
            Basis::Tensor(_) => None,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Basis::Radial(k) => k.validate(),
            Basis::Tensor(TensorFactor::Wendland(k)) => k.validate(),
            Basis::Tensor(TensorFactor::Lobachevsky(l)) => {
                if l.order() % 2 == 0 {
                    Ok(())
                } else {
                    Err(Error::Config(format!(
                        "Lobachevsky transformations need an even order, got n = {}",
                        l.order()
                    )))
                }
            }
        }
    }

    fn kind(&self) -> TransformKind {
        match self {
            Basis::Radial(_) => TransformKind::GlobalRadial,
            Basis::Tensor(_) => TransformKind::TensorProduct,
        }
    }
}

/// Monomial exponents of total degree `<= degree` in `dim` variables,
/// ordered by degree and then lexicographically: `1, x1, x2, x1², x1x2, x2², ...`.
pub fn monomial_exponents(dim: usize, degree: usize) -> Vec<Vec<u32>> {
    fn fill(dim: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == dim {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            fill(dim, remaining - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=degree as u32 {
        fill(dim, d, &mut Vec::with_capacity(dim), &mut out);
    }
    out
}

fn monomial(x: &[f64], exps: &[u32]) -> f64 {
    x.iter().zip(exps).map(|(v, &e)| v.powi(e as i32)).product()
}

/// Assembled interpolation system shared by all coordinates.
#[derive(Clone, Debug)]
pub struct SaddleSystem {
    /// `M_ij = basis(x_i, x_j)`, `N × N`.
    pub kernel_matrix: DMatrix<f64>,
    /// `Q_jk = π_k(x_j)`, `N × U` (zero columns without a tail).
    pub poly_matrix: DMatrix<f64>,
    /// One right-hand side per target coordinate.
    pub rhs: Vec<DVector<f64>>,
    exponents: Vec<Vec<u32>>,
}

impl SaddleSystem {
    pub fn n(&self) -> usize {
        self.kernel_matrix.nrows()
    }

    pub fn tail_dim(&self) -> usize {
        self.poly_matrix.ncols()
    }

    /// The full symmetric `(N + U) × (N + U)` matrix.
    pub fn full_matrix(&self) -> DMatrix<f64> {
        let (n, u) = (self.n(), self.tail_dim());
        let mut a = DMatrix::zeros(n + u, n + u);
        a.view_mut((0, 0), (n, n)).copy_from(&self.kernel_matrix);
        if u > 0 {
            a.view_mut((0, n), (n, u)).copy_from(&self.poly_matrix);
            a.view_mut((n, 0), (u, n)).copy_from(&self.poly_matrix.transpose());
        }
        a
    }

    fn padded_rhs(&self, k: usize) -> DVector<f64> {
        let mut b = DVector::zeros(self.n() + self.tail_dim());
        b.rows_mut(0, self.n()).copy_from(&self.rhs[k]);
        b
    }
}

/// Builds the interpolation system for a radial kernel.
pub fn assemble_system(kernel: &RadialKernel, landmarks: &LandmarkSet) -> Result<SaddleSystem> {
    assemble(&Basis::Radial(*kernel), landmarks)
}

fn assemble(basis: &Basis, landmarks: &LandmarkSet) -> Result<SaddleSystem> {
    basis.validate()?;
    let n = landmarks.len();
    let dim = landmarks.dim();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = basis.between(landmarks.source(i), landmarks.source(i));
        for j in 0..i {
            let v = basis.between(landmarks.source(i), landmarks.source(j));
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    let exponents = basis
        .tail_degree()
        .map(|d| monomial_exponents(dim, d))
        .unwrap_or_default();
    let q = DMatrix::from_fn(n, exponents.len(), |j, k| monomial(landmarks.source(j), &exponents[k]));
    let rhs = (0..dim)
        .map(|k| DVector::from_fn(n, |j, _| landmarks.target(j)[k]))
        .collect();
    Ok(SaddleSystem { kernel_matrix: m, poly_matrix: q, rhs, exponents })
}

/// 1-norm condition estimate of the full system matrix.
pub fn condition_estimate(system: &SaddleSystem) -> f64 {
    linalg::condition_estimate_1norm(&system.full_matrix())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformKind {
    GlobalRadial,
    TensorProduct,
    Shepard,
}

/// Numerical diagnostics recorded when a transformation is solved.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveReport {
    /// `max_j ‖F(x_j) − t_j‖_∞`.
    pub residual: f64,
    /// 1-norm condition estimate of the system matrix.
    pub condition: f64,
    /// Condition estimate exceeded [`ILL_CONDITIONED`].
    pub ill_conditioned: bool,
    pub factorization: FactorKind,
    /// A double-double LU replaced the working-precision solution.
    pub extended_precision: bool,
}

/// A solved radial or tensor-product transformation.
#[derive(Clone, Debug)]
pub struct KernelTransform {
    basis: Basis,
    dim: usize,
    centers: Vec<f64>,
    coefficients: Vec<Vec<f64>>,
    tail: Vec<Vec<f64>>,
    /// Low words of `coefficients` and `tail` after a double-double solve.
    low: Option<(Vec<Vec<f64>>, Vec<Vec<f64>>)>,
    exponents: Vec<Vec<u32>>,
    report: SolveReport,
}

fn check_tail_rank(system: &SaddleSystem) -> Result<()> {
    let (n, u) = (system.n(), system.tail_dim());
    if u == 0 {
        return Ok(());
    }
    if n <= u {
        return Err(Error::Solvability(format!(
            "{n} landmarks cannot determine a polynomial tail of dimension {u}"
        )));
    }
    let sv = system.poly_matrix.clone().singular_values();
    let max = sv.max();
    let min = sv.min();
    if !(min > TAIL_RANK_TOL * max) {
        return Err(Error::Solvability(format!(
            "source landmarks are not unisolvent for the degree-{} polynomial tail \
             (e.g. all collinear); singular value ratio {:.3e}",
            system.exponents.iter().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0),
            min / max
        )));
    }
    Ok(())
}

fn solve_basis(basis: Basis, landmarks: &LandmarkSet) -> Result<KernelTransform> {
    let system = assemble(&basis, landmarks)?;
    check_tail_rank(&system)?;
    let a = system.full_matrix();
    let spd = system.tail_dim() == 0;
    let solver = SystemSolver::new(&a, spd).ok_or_else(|| {
        Error::Solvability(format!(
            "interpolation matrix for {} landmarks is singular",
            landmarks.len()
        ))
    })?;
    let n = system.n();
    let u = system.tail_dim();
    let split = |x: &DVector<f64>| -> (Vec<f64>, Vec<f64>) {
        (x.rows(0, n).iter().copied().collect(), x.rows(n, u).iter().copied().collect())
    };
    let mut coefficients = Vec::with_capacity(landmarks.dim());
    let mut tail = Vec::with_capacity(landmarks.dim());
    let mut solutions = Vec::with_capacity(landmarks.dim());
    for k in 0..landmarks.dim() {
        let x = solver
            .solve(&system.padded_rhs(k))
            .ok_or_else(|| Error::Solvability(format!("solve failed for coordinate {k}")))?;
        let (c, b) = split(&x.high);
        coefficients.push(c);
        tail.push(b);
        solutions.push(x.low);
    }
    let low = solutions.iter().any(Option::is_some).then(|| {
        solutions
            .iter()
            .map(|l| match l {
                Some(l) => split(l),
                None => (vec![0.0; n], vec![0.0; u]),
            })
            .unzip()
    });
    let condition = linalg::norm1(&a) * linalg::inverse_norm1_estimate(solver.factor(), a.nrows());
    let extended_precision = low.is_some();
    let mut t = KernelTransform {
        basis,
        dim: landmarks.dim(),
        centers: landmarks.sources_flat().to_vec(),
        coefficients,
        tail,
        low,
        exponents: system.exponents,
        report: SolveReport {
            residual: 0.0,
            condition,
            ill_conditioned: !(condition <= ILL_CONDITIONED),
            factorization: solver.factor().kind(),
            extended_precision,
        },
    };
    t.report.residual = t.max_residual(landmarks);
    Ok(t)
}

/// Solves a global radial transformation (with polynomial tail when the
/// kernel requires one).
pub fn solve_transform(kernel: &RadialKernel, landmarks: &LandmarkSet) -> Result<KernelTransform> {
    solve_basis(Basis::Radial(*kernel), landmarks)
}

/// Solves a tensor-product transformation `Σ c_j Π_d ψ(x_d − x_{j,d})`.
pub fn build_tensor_transform(
    factor: impl Into<TensorFactor>,
    landmarks: &LandmarkSet,
) -> Result<KernelTransform> {
    solve_basis(Basis::Tensor(factor.into()), landmarks)
}

impl KernelTransform {
    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn kind(&self) -> TransformKind {
        self.basis.kind()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn report(&self) -> &SolveReport {
        &self.report
    }

    /// Kernel coefficients of coordinate `k` (high words only after a
    /// double-double solve).
    pub fn coefficients(&self, k: usize) -> &[f64] {
        &self.coefficients[k]
    }

    /// Polynomial tail coefficients of coordinate `k` (empty without a tail).
    pub fn tail(&self, k: usize) -> &[f64] {
        &self.tail[k]
    }

    pub fn centers(&self) -> usize {
        self.centers.len() / self.dim
    }

    /// `max_k ‖Qᵀ a_k‖_∞ / (1 + ‖a_k‖_∞)`; zero without a tail.
    pub fn side_condition_violation(&self) -> f64 {
        let n = self.centers();
        let mut worst: f64 = 0.0;
        for a in &self.coefficients {
            let amax = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for e in &self.exponents {
                let s: f64 = (0..n)
                    .map(|j| a[j] * monomial(&self.centers[j * self.dim..(j + 1) * self.dim], e))
                    .sum();
                worst = worst.max(s.abs() / (1.0 + amax));
            }
        }
        worst
    }

    /// `F(x)`.
    pub fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.evaluate_into(x, &mut out);
        out
    }

    pub fn evaluate_into(&self, x: &[f64], out: &mut [f64]) {
        if let Some(low) = &self.low {
            return self.evaluate_compensated(x, low, out);
        }
        out.iter_mut().for_each(|v| *v = 0.0);
        for (j, c) in self.centers.chunks_exact(self.dim).enumerate() {
            let phi = self.basis.between(x, c);
            if phi == 0.0 {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                *o += self.coefficients[k][j] * phi;
            }
        }
        for (i, e) in self.exponents.iter().enumerate() {
            let p = monomial(x, e);
            for (k, o) in out.iter_mut().enumerate() {
                *o += self.tail[k][i] * p;
            }
        }
    }

    /// Evaluation with double-double coefficients: the high words go through
    /// an error-free dot product, the low words are added plainly.
    fn evaluate_compensated(&self, x: &[f64], low: &(Vec<Vec<f64>>, Vec<Vec<f64>>), out: &mut [f64]) {
        let mut acc = vec![(0.0f64, 0.0f64); self.dim];
        let mut add = |k: usize, hi: f64, lo: f64, v: f64| {
            let (h, e) = two_prod(hi, v);
            let (p, q) = two_sum(acc[k].0, h);
            acc[k] = (p, acc[k].1 + q + e + lo * v);
        };
        for (j, c) in self.centers.chunks_exact(self.dim).enumerate() {
            let phi = self.basis.between(x, c);
            if phi == 0.0 {
                continue;
            }
            for k in 0..self.dim {
                add(k, self.coefficients[k][j], low.0[k][j], phi);
            }
        }
        for (i, e) in self.exponents.iter().enumerate() {
            let p = monomial(x, e);
            for k in 0..self.dim {
                add(k, self.tail[k][i], low.1[k][i], p);
            }
        }
        for (o, (p, s)) in out.iter_mut().zip(acc) {
            *o = p + s;
        }
    }

    fn max_residual(&self, landmarks: &LandmarkSet) -> f64 {
        let mut buf = vec![0.0; self.dim];
        (0..landmarks.len())
            .map(|j| {
                self.evaluate_into(landmarks.source(j), &mut buf);
                buf.iter()
                    .zip(landmarks.target(j))
                    .fold(0.0f64, |m, (f, t)| m.max((f - t).abs()))
            })
            .fold(0.0, f64::max)
    }
}

/// Any evaluable landmark transformation.
#[derive(Clone, Debug)]
pub enum Transformation {
    Kernel(KernelTransform),
    Shepard(ShepardTransform),
}

impl Transformation {
    pub fn kind(&self) -> TransformKind {
        match self {
            Transformation::Kernel(t) => t.kind(),
            Transformation::Shepard(_) => TransformKind::Shepard,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Transformation::Kernel(t) => t.dim(),
            Transformation::Shepard(s) => s.dim(),
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Transformation::Kernel(t) => t.evaluate(x),
            Transformation::Shepard(s) => s.evaluate(x),
        }
    }

    /// Largest interpolation error over the landmarks used to build it.
    pub fn residual(&self) -> f64 {
        match self {
            Transformation::Kernel(t) => t.report().residual,
            Transformation::Shepard(s) => s.residual(),
        }
    }

    /// Condition estimate of the global system, or the worst nodal system for Shepard.
    pub fn condition(&self) -> f64 {
        match self {
            Transformation::Kernel(t) => t.report().condition,
            Transformation::Shepard(s) => s.worst_condition(),
        }
    }
}

impl From<KernelTransform> for Transformation {
    fn from(t: KernelTransform) -> Self {
        Transformation::Kernel(t)
    }
}

impl From<ShepardTransform> for Transformation {
    fn from(s: ShepardTransform) -> Self {
        Transformation::Shepard(s)
    }
}
