//! Flat `key = value` transform configuration.
//!
//! ```text
//! # comments and blank lines are ignored
//! method = shepard        # global (default) | shepard
//! kernel = tps            # gaussian | tps | multiquadric | wendland1d | wendland2d
//!                         # | wendland3d | wendland-tensor | lobachevsky
//! n_l = 25
//! n_w = 25
//! rho = auto              # auto | <positive number>
//! ```
//!
//! Kernel parameters: `alpha` (gaussian), `gamma` and `mu` (multiquadric),
//! `h` and `c` (all Wendland kinds), `n` with exactly one of `alpha` or `a`
//! (lobachevsky). Unknown keys, repeated keys and keys the chosen kernel
//! does not use are errors.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::kernel::{RadialKernel, UnivariateKernel};
use crate::landmarks::LandmarkSet;
use crate::lobachevsky::LobachevskySpec;
use crate::shepard::{RhoRule, ShepardConfig, ShepardTransform};
use crate::transform::{build_tensor_transform, solve_transform, TensorFactor, Transformation};

const KEYS: [&str; 13] = ["method", "kernel", "alpha", "gamma", "mu", "h", "c", "n", "a", "n_l", "n_w", "rho", "snap_eps"];

/// A parsed transformation recipe.
#[derive(Clone, Debug, PartialEq)]
pub enum TransformSpec {
    Radial(RadialKernel),
    Tensor(TensorFactor),
    Shepard(ShepardConfig),
}

impl TransformSpec {
    pub fn build(&self, landmarks: &LandmarkSet) -> Result<Transformation> {
        Ok(match self {
            TransformSpec::Radial(k) => solve_transform(k, landmarks)?.into(),
            TransformSpec::Tensor(f) => build_tensor_transform(*f, landmarks)?.into(),
            TransformSpec::Shepard(cfg) => ShepardTransform::build(landmarks, cfg.clone())?.into(),
        })
    }
}

struct Entries {
    map: BTreeMap<String, (usize, String)>,
}

impl Entries {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.map.remove(key)
    }

    fn num(&mut self, key: &str) -> Result<Option<f64>> {
        self.take(key)
            .map(|(line, v)| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::Parse { line, msg: format!("`{key}` must be a finite number, got `{v}`") })
            })
            .transpose()
    }

    fn int<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        self.take(key)
            .map(|(line, v)| {
                v.parse::<T>()
                    .map_err(|_| Error::Parse { line, msg: format!("`{key}` must be an integer, got `{v}`") })
            })
            .transpose()
    }

    fn required<T>(value: Option<T>, key: &str, kernel: &str) -> Result<T> {
        value.ok_or_else(|| Error::Config(format!("kernel `{kernel}` requires `{key}`")))
    }
}

/// Parses configuration text into a [`TransformSpec`].
pub fn parse_config(text: &str) -> Result<TransformSpec> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| Error::Parse { line, msg: format!("expected `key = value`, found `{content}`") })?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(Error::Parse { line, msg: format!("unknown key `{key}`") });
        }
        if value.is_empty() {
            return Err(Error::Parse { line, msg: format!("`{key}` has no value") });
        }
        if map.insert(key.to_string(), (line, value.to_string())).is_some() {
            return Err(Error::Parse { line, msg: format!("`{key}` given twice") });
        }
    }
    let mut e = Entries { map };
    let method = e.take("method").map(|(_, v)| v).unwrap_or_else(|| "global".into());
    let (_, kernel) = e.take("kernel").ok_or_else(|| Error::Config("missing `kernel`".into()))?;
    let shepard = match method.as_str() {
        "global" => None,
        "shepard" => {
            let n_l = Entries::required(e.int::<usize>("n_l")?, "n_l", "shepard")?;
            let n_w = Entries::required(e.int::<usize>("n_w")?, "n_w", "shepard")?;
            let rho = match e.take("rho") {
                None => RhoRule::AutoPerNode,
                Some((_, v)) if v == "auto" => RhoRule::AutoPerNode,
                Some((line, v)) => match v.parse::<f64>() {
                    Ok(r) if r.is_finite() && r > 0.0 => RhoRule::Fixed(r),
                    _ => return Err(Error::Parse { line, msg: format!("`rho` must be `auto` or positive, got `{v}`") }),
                },
            };
            let snap = e.num("snap_eps")?;
            Some((n_l, n_w, rho, snap))
        }
        other => return Err(Error::Config(format!("unknown method `{other}` (expected global or shepard)"))),
    };
    let k = kernel.as_str();
    let spec = match k {
        "gaussian" => TransformSpec::Radial(RadialKernel::gaussian(Entries::required(e.num("alpha")?, "alpha", k)?)?),
        "tps" => TransformSpec::Radial(RadialKernel::thin_plate_spline()),
        "multiquadric" => {
            let gamma = Entries::required(e.num("gamma")?, "gamma", k)?;
            let mu = Entries::required(e.int::<i32>("mu")?, "mu", k)?;
            TransformSpec::Radial(RadialKernel::multiquadric(gamma, mu)?)
        }
        "wendland1d" | "wendland2d" | "wendland3d" => {
            let m = k.as_bytes()[8] - b'0';
            let h = Entries::required(e.int::<u8>("h")?, "h", k)?;
            let c = Entries::required(e.num("c")?, "c", k)?;
            TransformSpec::Radial(RadialKernel::wendland(m, h, c)?)
        }
        "wendland-tensor" => {
            let h = Entries::required(e.int::<u8>("h")?, "h", k)?;
            let c = Entries::required(e.num("c")?, "c", k)?;
            TransformSpec::Tensor(UnivariateKernel::wendland(h, c)?.into())
        }
        "lobachevsky" => {
            let n = Entries::required(e.int::<u32>("n")?, "n", k)?;
            let spec = match (e.num("alpha")?, e.num("a")?) {
                (Some(alpha), None) => LobachevskySpec::by_alpha(n, alpha)?,
                (None, Some(a)) => LobachevskySpec::by_a(n, a)?,
                _ => return Err(Error::Config("lobachevsky needs exactly one of `alpha` or `a`".into())),
            };
            TransformSpec::Tensor(spec.into())
        }
        other => return Err(Error::Config(format!("unknown kernel `{other}`"))),
    };
    if let Some((key, (line, _))) = e.map.into_iter().next() {
        return Err(Error::Parse { line, msg: format!("`{key}` is not used by this configuration") });
    }
    match (spec, shepard) {
        (spec, None) => {
            if let TransformSpec::Tensor(TensorFactor::Lobachevsky(s)) = &spec {
                if s.order() % 2 == 1 {
                    return Err(Error::Config(format!("Lobachevsky transforms need even n, got {}", s.order())));
                }
            }
            Ok(spec)
        }
        (TransformSpec::Radial(kernel), Some((n_l, n_w, rho, snap))) => {
            let mut cfg = ShepardConfig::new(n_l, n_w, kernel);
            cfg.rho = rho;
            if let Some(s) = snap {
                if !(s > 0.0) {
                    return Err(Error::Config("`snap_eps` must be positive".into()));
                }
                cfg.snap_eps = s;
            }
            Ok(TransformSpec::Shepard(cfg))
        }
        (_, Some(_)) => Err(Error::Config("Shepard nodal functions need a radial kernel".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kernel() {
        assert_eq!(
            parse_config("kernel = gaussian\nalpha = 1.6").unwrap(),
            TransformSpec::Radial(RadialKernel::gaussian(1.6).unwrap())
        );
        assert_eq!(
            parse_config("kernel = wendland2d\nh = 1\nc = 0.3 # comment\n").unwrap(),
            TransformSpec::Radial(RadialKernel::wendland(2, 1, 0.3).unwrap())
        );
        assert_eq!(
            parse_config("kernel = wendland-tensor\nh = 2\nc = 0.5").unwrap(),
            TransformSpec::Tensor(UnivariateKernel::wendland(2, 0.5).unwrap().into())
        );
        assert_eq!(
            parse_config("kernel = lobachevsky\nn = 4\nalpha = 0.2").unwrap(),
            TransformSpec::Tensor(LobachevskySpec::by_alpha(4, 0.2).unwrap().into())
        );
        assert_eq!(
            parse_config("kernel = multiquadric\ngamma = 0.5\nmu = 1").unwrap(),
            TransformSpec::Radial(RadialKernel::multiquadric(0.5, 1).unwrap())
        );
        match parse_config("method = shepard\nkernel = tps\nn_l = 25\nn_w = 20\nrho = 0.4").unwrap() {
            TransformSpec::Shepard(cfg) => {
                assert_eq!((cfg.n_local, cfg.n_weight), (25, 20));
                assert_eq!(cfg.rho, RhoRule::Fixed(0.4));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(parse_config("kernel = tps\nalpah = 1"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_config("kernel = tps\nalpha = 1"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_config("kernel = gaussian"), Err(Error::Config(_))));
        assert!(matches!(parse_config("kernel = tps\nkernel = tps"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_config("kernel = lobachevsky\nn = 3\na = 1"), Err(Error::Config(_))));
        assert!(parse_config("kernel = lobachevsky\nn = 4\na = 1\nalpha = 1").is_err());
        assert!(parse_config("method = shepard\nkernel = wendland-tensor\nh = 1\nc = 1\nn_l = 3\nn_w = 3").is_err());
        assert!(parse_config("kernel = wendland2d\nh = 5\nc = 1").is_err());
        assert!(parse_config("kernel = splines").is_err());
        assert!(parse_config("just text").is_err());
    }
}
