//! Radial and univariate kernels other than Lobachevsky splines.
//!
//! Wendland functions use the closed-form polynomials for `m = 1` and
//! `m = 2` with constant factor 1; `m = 3` shares the `m = 2` polynomials,
//! which stay strictly positive definite up to three dimensions.

use crate::error::{Error, Result};

/// A radial basis function `Φ(r)` with its shape parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadialKernel {
    /// `exp(-α² r²)`.
    Gaussian { alpha: f64 },
    /// `r² ln r`, with `Φ(0) = 0`.
    ThinPlateSpline,
    /// `(r² + γ²)^(μ/2)`; inverse multiquadric when `μ < 0`.
    GeneralizedMultiquadric { gamma: f64, mu: i32 },
    /// Wendland `φ_{m,h}(c r)`.
    WendlandRadial { m: u8, h: u8, c: f64 },
}

/// A univariate kernel used as a factor of tensor-product kernels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum UnivariateKernel {
    /// Wendland `φ_{1,h}(c |x|)`.
    Wendland1D { h: u8, c: f64 },
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be a positive finite number, got {v}")))
    }
}

fn check_smoothness(h: u8) -> Result<()> {
    if h <= 3 {
        Ok(())
    } else {
        Err(Error::Config(format!("Wendland smoothness h must be in 0..=3, got {h}")))
    }
}

/// `c r`, forced to 1 from `r = 1/c` on so the support matches
/// `support_radius` exactly despite rounding.
#[inline]
fn scaled(c: f64, r: f64) -> f64 {
    if r >= 1.0 / c {
        1.0
    } else {
        c * r
    }
}

/// Evaluates `φ_{m,h}` at a scaled argument `t = c r ≥ 0`.
///
/// Exactly 0 for `t ≥ 1`.
fn wendland_profile(dim_class: u8, h: u8, t: f64) -> f64 {
    if t >= 1.0 {
        return 0.0;
    }
    let u = 1.0 - t;
    match (dim_class, h) {
        (1, 0) => u,
        (1, 1) => u.powi(3) * (3.0 * t + 1.0),
        (1, 2) => u.powi(5) * ((8.0 * t + 5.0) * t + 1.0),
        (1, 3) => u.powi(7) * (((21.0 * t + 19.0) * t + 7.0) * t + 1.0),
        (_, 0) => u * u,
        (_, 1) => u.powi(4) * (4.0 * t + 1.0),
        (_, 2) => u.powi(6) * ((35.0 * t + 18.0) * t + 3.0),
        (_, 3) => u.powi(8) * (((32.0 * t + 25.0) * t + 8.0) * t + 1.0),
        _ => unreachable!("smoothness validated at construction"),
    }
}

impl RadialKernel {
    pub fn gaussian(alpha: f64) -> Result<Self> {
        let k = RadialKernel::Gaussian { alpha };
        k.validate()?;
        Ok(k)
    }

    pub fn thin_plate_spline() -> Self {
        RadialKernel::ThinPlateSpline
    }

    pub fn multiquadric(gamma: f64, mu: i32) -> Result<Self> {
        let k = RadialKernel::GeneralizedMultiquadric { gamma, mu };
        k.validate()?;
        Ok(k)
    }

    pub fn wendland(m: u8, h: u8, c: f64) -> Result<Self> {
        let k = RadialKernel::WendlandRadial { m, h, c };
        k.validate()?;
        Ok(k)
    }

    /// Checks the parameter ranges of the active family.
    pub fn validate(&self) -> Result<()> {
        match *self {
            RadialKernel::Gaussian { alpha } => positive("alpha", alpha),
            RadialKernel::ThinPlateSpline => Ok(()),
            RadialKernel::GeneralizedMultiquadric { gamma, mu } => {
                positive("gamma", gamma)?;
                if mu == 0 {
                    return Err(Error::Config("multiquadric exponent mu must be nonzero".into()));
                }
                if mu > 0 && mu % 2 == 0 {
                    return Err(Error::Config(format!(
                        "multiquadric exponent mu = {mu} is even and positive; only odd positive or negative mu are supported"
                    )));
                }
                Ok(())
            }
            RadialKernel::WendlandRadial { m, h, c } => {
                if !(1..=3).contains(&m) {
                    return Err(Error::Config(format!(
                        "radial Wendland dimension m must be in 1..=3, got {m}"
                    )));
                }
                check_smoothness(h)?;
                positive("c", c)
            }
        }
    }

    /// `Φ(r)` without argument checks. The kernel must be valid and `r ≥ 0`.
    #[inline]
    pub fn value(&self, r: f64) -> f64 {
        match *self {
            RadialKernel::Gaussian { alpha } => (-(alpha * r).powi(2)).exp(),
            RadialKernel::ThinPlateSpline => {
                if r == 0.0 {
                    0.0
                } else {
                    r * r * r.ln()
                }
            }
            RadialKernel::GeneralizedMultiquadric { gamma, mu } => {
                (r * r + gamma * gamma).powf(f64::from(mu) / 2.0)
            }
            RadialKernel::WendlandRadial { m, h, c } => wendland_profile(m.min(2), h, scaled(c, r)),
        }
    }

    /// Evaluates `Φ(r)`, rejecting negative or non-finite distances.
    pub fn eval(&self, r: f64) -> Result<f64> {
        self.validate()?;
        if !(r >= 0.0) {
            return Err(Error::Domain(format!("radial distance must be nonnegative, got {r}")));
        }
        Ok(self.value(r))
    }

    /// Degree of the polynomial tail needed for unique solvability, if any.
    pub fn polynomial_tail_degree(&self) -> Option<usize> {
        match *self {
            RadialKernel::ThinPlateSpline => Some(1),
            RadialKernel::GeneralizedMultiquadric { mu, .. } if mu > 0 => Some(mu as usize - 1),
            _ => None,
        }
    }

    /// Radius beyond which the kernel vanishes identically.
    pub fn support_radius(&self) -> f64 {
        match *self {
            RadialKernel::WendlandRadial { c, .. } => 1.0 / c,
            _ => f64::INFINITY,
        }
    }
}

impl UnivariateKernel {
    pub fn wendland(h: u8, c: f64) -> Result<Self> {
        let k = UnivariateKernel::Wendland1D { h, c };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        let UnivariateKernel::Wendland1D { h, c } = *self;
        check_smoothness(h)?;
        positive("c", c)
    }

    /// `ψ(x)`; even in `x`, exactly 0 for `c |x| ≥ 1`.
    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        let UnivariateKernel::Wendland1D { h, c } = *self;
        wendland_profile(1, h, scaled(c, x.abs()))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.validate()?;
        Ok(self.value(x))
    }

    pub fn support_radius(&self) -> f64 {
        let UnivariateKernel::Wendland1D { c, .. } = *self;
        1.0 / c
    }
}
