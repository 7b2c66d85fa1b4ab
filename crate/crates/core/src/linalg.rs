//! Dense factorization, refinement and 1-norm condition estimation for the
//! symmetric interpolation systems.

use std::cell::OnceCell;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn, LU};

use crate::dd::{two_prod, two_sum, DdLu};

/// Which factorization backs a solved system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// Symmetric positive definite.
    Cholesky,
    /// LU with partial pivoting, used for saddle-point systems and as the
    /// fallback when rounding defeats Cholesky.
    Lu,
}

pub(crate) enum Factor {
    Cholesky(Cholesky<f64, Dyn>),
    Lu(LU<f64, Dyn, Dyn>),
}

impl Factor {
    /// Factors `a`, trying Cholesky first when `spd` is set.
    pub fn new(a: &DMatrix<f64>, spd: bool) -> Option<Self> {
        if spd {
            if let Some(ch) = a.clone().cholesky() {
                return Some(Factor::Cholesky(ch));
            }
        }
        let lu = a.clone().lu();
        if lu.is_invertible() {
            Some(Factor::Lu(lu))
        } else {
            None
        }
    }

    pub fn kind(&self) -> FactorKind {
        match self {
            Factor::Cholesky(_) => FactorKind::Cholesky,
            Factor::Lu(_) => FactorKind::Lu,
        }
    }

    pub fn solve(&self, b: &DVector<f64>) -> Option<DVector<f64>> {
        let x = match self {
            Factor::Cholesky(ch) => ch.solve(b),
            Factor::Lu(lu) => lu.solve(b)?,
        };
        x.iter().all(|v| v.is_finite()).then_some(x)
    }

    /// Solves `a x = b`, then refines with residuals accumulated in twice
    /// the working precision, keeping the iterate with the smallest residual.
    pub fn solve_refined(&self, a: &DMatrix<f64>, b: &DVector<f64>) -> Option<DVector<f64>> {
        let mut x = self.solve(b)?;
        let mut r = residual_compensated(a, &x, None, b);
        let mut best = (r.amax(), x.clone());
        for _ in 0..MAX_REFINEMENT_STEPS {
            if best.0 == 0.0 {
                break;
            }
            let Some(dx) = self.solve(&r) else { break };
            x += dx;
            r = residual_compensated(a, &x, None, b);
            let norm = r.amax();
            if !(norm < 0.5 * best.0) {
                if norm < best.0 {
                    best = (norm, x.clone());
                }
                break;
            }
            best = (norm, x.clone());
        }
        Some(best.1)
    }
}

const MAX_REFINEMENT_STEPS: usize = 8;

/// `b − a (x + low)` with each row accumulated as an error-free dot product
/// (Ogita, Rump and Oishi's `Dot2`); the low words are added plainly.
pub(crate) fn residual_compensated(
    a: &DMatrix<f64>,
    x: &DVector<f64>,
    low: Option<&DVector<f64>>,
    b: &DVector<f64>,
) -> DVector<f64> {
    DVector::from_fn(a.nrows(), |i, _| {
        let (mut p, mut s) = (b[i], 0.0);
        for j in 0..a.ncols() {
            let (h, e) = two_prod(-a[(i, j)], x[j]);
            let (sum, q) = two_sum(p, h);
            p = sum;
            s += q + e;
            if let Some(low) = low {
                s -= a[(i, j)] * low[j];
            }
        }
        p + s
    })
}

/// Relative compensated residual above which a double-double solve is tried.
const EXTENDED_TRIGGER: f64 = 1e-13;

/// Solves repeatedly against one matrix, falling back to a double-double LU
/// when refinement in working precision stalls.
pub(crate) struct SystemSolver<'a> {
    a: &'a DMatrix<f64>,
    factor: Factor,
    extended: OnceCell<Option<DdLu>>,
}

impl<'a> SystemSolver<'a> {
    pub fn new(a: &'a DMatrix<f64>, spd: bool) -> Option<Self> {
        Some(Self { a, factor: Factor::new(a, spd)?, extended: OnceCell::new() })
    }

    pub fn factor(&self) -> &Factor {
        &self.factor
    }

    pub fn solve(&self, b: &DVector<f64>) -> Option<Solution> {
        let x = self.factor.solve_refined(self.a, b)?;
        let r = residual_compensated(self.a, &x, None, b).amax();
        let plain = Solution { high: x, low: None };
        if r <= EXTENDED_TRIGGER * (1.0 + b.amax()) {
            return Some(plain);
        }
        let n = self.a.nrows();
        let Some(lu) = self.extended.get_or_init(|| DdLu::new(n, |i, j| self.a[(i, j)])) else {
            return Some(plain);
        };
        let y = lu.solve(b.as_slice());
        let high = DVector::from_iterator(n, y.iter().map(|v| v.hi));
        let low = DVector::from_iterator(n, y.iter().map(|v| v.lo));
        let finite = high.iter().chain(low.iter()).all(|v| v.is_finite());
        if finite && residual_compensated(self.a, &high, Some(&low), b).amax() < r {
            Some(Solution { high, low: Some(low) })
        } else {
            Some(plain)
        }
    }
}

/// Solution of one right-hand side, with the low words of a double-double
/// solution when one was needed.
pub(crate) struct Solution {
    pub high: DVector<f64>,
    pub low: Option<DVector<f64>>,
}

pub(crate) fn norm1(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Estimate of `‖A⁻¹‖₁` for symmetric `A` (Hager's method with Higham's
/// extra test vector).
pub(crate) fn inverse_norm1_estimate(factor: &Factor, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let l1 = |v: &DVector<f64>| v.iter().map(|x| x.abs()).sum::<f64>();
    let mut x = DVector::from_element(n, 1.0 / n as f64);
    let mut estimate = 0.0;
    let mut last_j = usize::MAX;
    for _ in 0..5 {
        let Some(y) = factor.solve(&x) else {
            return f64::INFINITY;
        };
        estimate = l1(&y);
        let sign = y.map(|v| if v >= 0.0 { 1.0 } else { -1.0 });
        let Some(z) = factor.solve(&sign) else {
            return f64::INFINITY;
        };
        let (j, zmax) = z
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.abs()))
            .fold((0, f64::NEG_INFINITY), |acc, it| if it.1 > acc.1 { it } else { acc });
        if zmax <= z.dot(&x) || j == last_j {
            break;
        }
        last_j = j;
        x = DVector::zeros(n);
        x[j] = 1.0;
    }
    if n > 1 {
        let alt = DVector::from_fn(n, |i, _| {
            let s = if i % 2 == 0 { 1.0 } else { -1.0 };
            s * (1.0 + i as f64 / (n - 1) as f64)
        });
        if let Some(y) = factor.solve(&alt) {
            estimate = estimate.max(2.0 * l1(&y) / (3.0 * n as f64));
        }
    }
    estimate
}

/// 1-norm condition estimate of a symmetric matrix; infinite when singular.
pub fn condition_estimate_1norm(a: &DMatrix<f64>) -> f64 {
    match Factor::new(a, false) {
        Some(f) => norm1(a) * inverse_norm1_estimate(&f, a.nrows()),
        None => f64::INFINITY,
    }
}
