//! Lobachevsky splines.
//!
//! `f_n` is the density of a sum of `n` independent uniform variables on
//! `[-a, a]`: a centred uniform B-spline of degree `n - 1` with knots spaced
//! `2a`, supported on `[-na, na]`. The standardized form
//! `f*_n(x) = s f_n(s x)` with `s = a sqrt(n/3)` has unit variance and tends
//! to the standard normal density as `n` grows.
//!
//! Two evaluation paths are provided. [`eval_fn_explicit`] sums the
//! alternating truncated-power series and serves as a reference.
//! [`eval_fn_recurrence`] runs the three-term recurrence and is the one used
//! by transformations. Both evaluate at `-|x|` for `n >= 2`, so symmetry is
//! exact, and both take `f_1` on the half-open interval `[-a, a)`.

use crate::error::{Error, Result};

/// Largest order accepted by the explicit formula before the binomial and
/// power terms lose integer precision.
pub const EXPLICIT_MAX_ORDER: u32 = 20;

/// How a Lobachevsky kernel is scaled.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LobachevskyScale {
    /// `f_n(x)` with half-width `a` of the base uniform density.
    ByA(f64),
    /// `f*_n(α x)`.
    ByAlpha(f64),
}

/// A Lobachevsky spline kernel of order `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LobachevskySpec {
    n: u32,
    scale: LobachevskyScale,
}

fn check_args(n: u32, a: f64) -> Result<()> {
    if n < 1 {
        return Err(Error::Domain("Lobachevsky order n must be at least 1".into()));
    }
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::Domain(format!("Lobachevsky half-width a must be positive, got {a}")));
    }
    Ok(())
}

#[inline]
fn base_density(a: f64, y: f64) -> f64 {
    if (-a..a).contains(&y) {
        0.5 / a
    } else {
        0.0
    }
}

/// `f_n(x)` from the alternating truncated-power sum.
pub fn eval_fn_explicit(n: u32, a: f64, x: f64) -> Result<f64> {
    check_args(n, a)?;
    if n > EXPLICIT_MAX_ORDER {
        return Err(Error::Domain(format!(
            "explicit Lobachevsky formula limited to n <= {EXPLICIT_MAX_ORDER}, got {n}"
        )));
    }
    if n == 1 {
        return Ok(base_density(a, x));
    }
    let nf = f64::from(n);
    if x.abs() >= nf * a {
        return Ok(0.0);
    }
    let x = -x.abs();
    let deg = (n - 1) as i32;
    // Powers are taken of (x + (n - 2k) a) / (2a); the (2a)^(n-1) factor
    // cancels against the normalization, leaving 1 / (2a (n-1)!).
    let mut sum = 0.0;
    let mut binom = 1.0;
    for k in 0..=n {
        let u = (x + (nf - 2.0 * f64::from(k)) * a) / (2.0 * a);
        if u > 0.0 {
            let term = binom * u.powi(deg);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        binom = binom * f64::from(n - k) / f64::from(k + 1);
    }
    let factorial: f64 = (1..n).map(f64::from).product();
    Ok((sum / (2.0 * a * factorial)).max(0.0))
}

/// `f_n(x)` from the three-term recurrence.
///
/// The recurrence touches `f_{n-k}` only on the lattice `x + j a`, so the
/// levels are built bottom-up in `O(n²)` operations.
pub fn eval_fn_recurrence(n: u32, a: f64, x: f64) -> Result<f64> {
    check_args(n, a)?;
    Ok(recurrence_unchecked(n, a, x))
}

fn recurrence_unchecked(n: u32, a: f64, x: f64) -> f64 {
    if n == 1 {
        return base_density(a, x);
    }
    let nf = f64::from(n);
    if x.abs() >= nf * a {
        return 0.0;
    }
    // Work in t = x / a, where the knots are integers. Comparing t against
    // integers is exact, so exactly one f_1 sample is live; forming x + k a
    // instead rounds differently on either side of a knot.
    let t = -(x.abs() / a);
    let n = n as i64;
    // level 1 holds a f_1 at t + k, k = -(n-1), -(n-3), ..., n-1
    let mut level: Vec<f64> = (0..n)
        .map(|i| {
            let k = (2 * i - (n - 1)) as f64;
            if -1.0 - k <= t && t < 1.0 - k { 0.5 } else { 0.0 }
        })
        .collect();
    for m in 2..=n {
        let mf = m as f64;
        let inv = 1.0 / (mf - 1.0);
        let next: Vec<f64> = (0..=(n - m))
            .map(|i| {
                let y = t + (2 * i - (n - m)) as f64;
                let left = 0.5 * (mf + y) * level[(i + 1) as usize];
                let right = 0.5 * (mf - y) * level[i as usize];
                inv * (left + right)
            })
            .collect();
        level = next;
    }
    level[0] / a
}

/// Standardized spline `f*_n(x)`, supported on `[-sqrt(3n), sqrt(3n)]`.
pub fn eval_fn_star(n: u32, x: f64) -> Result<f64> {
    check_args(n, 1.0)?;
    Ok(star_unchecked(n, x))
}

#[inline]
fn star_unchecked(n: u32, x: f64) -> f64 {
    if n >= 2 && x.abs() >= (3.0 * f64::from(n)).sqrt() {
        return 0.0;
    }
    let s = (f64::from(n) / 3.0).sqrt();
    s * recurrence_unchecked(n, 1.0, s * x)
}

impl LobachevskySpec {
    pub fn by_a(n: u32, a: f64) -> Result<Self> {
        check_args(n, a)?;
        Ok(Self { n, scale: LobachevskyScale::ByA(a) })
    }

    pub fn by_alpha(n: u32, alpha: f64) -> Result<Self> {
        check_args(n, 1.0)?;
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::Domain(format!("Lobachevsky shape alpha must be positive, got {alpha}")));
        }
        Ok(Self { n, scale: LobachevskyScale::ByAlpha(alpha) })
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn scale(&self) -> LobachevskyScale {
        self.scale
    }

    /// The `f_n` parameterization with the same support as this kernel.
    ///
    /// `f*_n(α x)` and `f_n(x)` with `a = sqrt(3/n) / α` differ only by a
    /// positive constant factor.
    pub fn equivalent_by_a(&self) -> Self {
        match self.scale {
            LobachevskyScale::ByA(_) => *self,
            LobachevskyScale::ByAlpha(alpha) => Self {
                n: self.n,
                scale: LobachevskyScale::ByA((3.0 / f64::from(self.n)).sqrt() / alpha),
            },
        }
    }

    /// Kernel value `ψ(x)`.
    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        match self.scale {
            LobachevskyScale::ByA(a) => recurrence_unchecked(self.n, a, x),
            LobachevskyScale::ByAlpha(alpha) => star_unchecked(self.n, alpha * x),
        }
    }

    /// Closed support interval `[lo, hi]`.
    pub fn support(&self) -> (f64, f64) {
        let n = f64::from(self.n);
        let half = match self.scale {
            LobachevskyScale::ByA(a) => n * a,
            LobachevskyScale::ByAlpha(alpha) => (3.0 * n).sqrt() / alpha,
        };
        (-half, half)
    }

    pub fn support_radius(&self) -> f64 {
        self.support().1
    }
}
