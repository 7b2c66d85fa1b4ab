//! Double-double arithmetic and an LU solve carried out in it, for systems
//! too ill-conditioned for refinement in working precision.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

pub(crate) fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[cfg(test)]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl From<f64> for Dd {
    fn from(hi: f64) -> Self {
        Dd { hi, lo: 0.0 }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, y: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, y.hi);
        let (t, f) = two_sum(self.lo, y.lo);
        let r = quick_two_sum(s, e + t);
        quick_two_sum(r.hi, r.lo + f)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, y: Dd) -> Dd {
        self + (-y)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, y: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, y.hi);
        quick_two_sum(p, e + (self.hi * y.lo + self.lo * y.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, y: Dd) -> Dd {
        let q1 = self.hi / y.hi;
        let r = self - y * Dd::from(q1);
        let q2 = r.hi / y.hi;
        let r = r - y * Dd::from(q2);
        let q3 = r.hi / y.hi;
        quick_two_sum(q1, q2) + Dd::from(q3)
    }
}

/// LU factorization with partial pivoting in double-double precision.
pub(crate) struct DdLu {
    n: usize,
    lu: Vec<Dd>,
    perm: Vec<usize>,
}

impl DdLu {
    /// Factors the row-major `n × n` matrix; `None` when a pivot vanishes.
    pub fn new(n: usize, a: impl Fn(usize, usize) -> f64) -> Option<Self> {
        let mut lu: Vec<Dd> = (0..n * n).map(|k| Dd::from(a(k / n, k % n))).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| lu[i * n + k].abs().hi.total_cmp(&lu[j * n + k].abs().hi))
                .unwrap_or(k);
            if lu[p * n + k].hi == 0.0 {
                return None;
            }
            if p != k {
                for j in 0..n {
                    lu.swap(p * n + j, k * n + j);
                }
                perm.swap(p, k);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let l = lu[i * n + k] / pivot;
                lu[i * n + k] = l;
                if l.hi == 0.0 {
                    continue;
                }
                for j in k + 1..n {
                    lu[i * n + j] = lu[i * n + j] - l * lu[k * n + j];
                }
            }
        }
        Some(Self { n, lu, perm })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<Dd> {
        let b: Vec<Dd> = b.iter().map(|&v| Dd::from(v)).collect();
        self.solve_dd(&b)
    }

    pub fn solve_dd(&self, b: &[Dd]) -> Vec<Dd> {
        let n = self.n;
        let mut y: Vec<Dd> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = y[i];
            for j in 0..i {
                s = s - self.lu[i * n + j] * y[j];
            }
            y[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in i + 1..n {
                s = s - self.lu[i * n + j] * y[j];
            }
            y[i] = s / self.lu[i * n + i];
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_keeps_low_words() {
        let third = Dd::from(1.0) / Dd::from(3.0);
        assert!(third.lo != 0.0);
        let back = third * Dd::from(3.0) - Dd::from(1.0);
        assert!(back.to_f64().abs() < 1e-31);
        let s = Dd::from(1e16) + Dd::from(1.0) - Dd::from(1e16);
        assert_eq!(s.to_f64(), 1.0);
    }

    #[test]
    fn hilbert_solve_beats_working_precision() {
        // rounded Hilbert matrices of order 12 and 14 (condition ~1e16 and ~1e18);
        // b = H·1 is formed exactly enough in double-double, so x must be all ones
        for n in [12usize, 14] {
            let h = |i: usize, j: usize| 1.0 / (i + j + 1) as f64;
            let lu = DdLu::new(n, h).unwrap();
            let b: Vec<Dd> = (0..n).map(|i| (0..n).fold(Dd::default(), |s, j| s + Dd::from(h(i, j)))).collect();
            let x = lu.solve_dd(&b);
            assert!(x.iter().all(|v| (v.to_f64() - 1.0).abs() < 1e-10), "n={n}: {x:?}");
        }
        assert!(DdLu::new(2, |_, _| 1.0).is_none());
    }
}
