//! Classical orthogonal polynomials with analytic derivatives.
//!
//! All families are evaluated by upward three-term recurrence. Derivatives
//! come from the standard lowering identities, never from differencing:
//!
//! * Hermite (physicists'): `H_n' = 2n H_{n-1}`
//! * Jacobi: `d/dx P_n^(a,b) = (n+a+b+1)/2 * P_{n-1}^(a+1,b+1)`
//! * associated Laguerre: `d/dx L_n^a = -L_{n-1}^(a+1)`
//! * Romanovski: `d/dx R_n^(s,t) = (1-n-2s)/2 * R_{n-1}^(s,t)`
//!
//! # Romanovski normalization
//!
//! The real Romanovski (pseudo-Jacobi) polynomial is defined here as
//!
//! ```text
//! R_n^(s,t)(x) = (-i)^n P_n^(-s-n-it, -s-n+it)(ix)
//! ```
//!
//! i.e. it matches the complex pseudo-Jacobi expression coefficient for
//! coefficient, including the leading one. The right-hand side is real for
//! real `s, t, x` because the two Jacobi parameters are complex conjugates.
//! With `p = -s-n` held fixed, the real family `Q_m = (-i)^m P_m^(p-it,p+it)(ix)`
//! obeys
//!
//! ```text
//! 2m(m+2p)(c-2) Q_m = (c-1)(c(c-2)x - 4pt) Q_{m-1} + 2((m+p-1)^2 + t^2) c Q_{m-2},  c = 2m+2p
//! ```
//!
//! which is what [`romanovski_eval`] runs.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::ORDER;

/// Relative size below which a recurrence denominator counts as zero.
const DEGENERATE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolyFamily {
    Hermite,
    Jacobi { a: f64, b: f64 },
    AssocLaguerre { a: f64 },
    Romanovski { s: f64, t: f64 },
}

impl PolyFamily {
    /// Value and first derivative of the degree-`n` member at `x`.
    pub fn eval(&self, n: usize, x: f64) -> Result<(f64, f64)> {
        match *self {
            PolyFamily::Hermite => Ok(hermite_eval(n, x)),
            PolyFamily::Jacobi { a, b } => jacobi_eval(n, a, b, x),
            PolyFamily::AssocLaguerre { a } => Ok(assoc_laguerre_eval(n, a, x)),
            PolyFamily::Romanovski { s, t } => romanovski_eval(n, s, t, x),
        }
    }

    /// Value and derivatives up to order four, all from lowering identities.
    pub fn derivatives(&self, n: usize, x: f64) -> Result<[f64; ORDER + 1]> {
        let mut out = [0.0; ORDER + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            if k > n {
                break;
            }
            *slot = match *self {
                PolyFamily::Hermite => {
                    let falling: f64 = (0..k).map(|i| 2.0 * (n - i) as f64).product();
                    falling * hermite(n - k, x)
                }
                PolyFamily::Jacobi { a, b } => {
                    let factor: f64 = (1..=k)
                        .map(|i| (n as f64 + a + b + i as f64) / 2.0)
                        .product();
                    if factor == 0.0 {
                        0.0
                    } else {
                        factor * jacobi(n - k, a + k as f64, b + k as f64, x)?
                    }
                }
                PolyFamily::AssocLaguerre { a } => {
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    sign * laguerre(n - k, a + k as f64, x)
                }
                PolyFamily::Romanovski { s, t } => {
                    let factor: f64 = (0..k)
                        .map(|i| (1.0 - (n - i) as f64 - 2.0 * s) / 2.0)
                        .product();
                    if factor == 0.0 {
                        0.0
                    } else {
                        factor * romanovski(n - k, s, t, x)?
                    }
                }
            };
        }
        Ok(out)
    }
}

/// Physicists' Hermite polynomial `H_n(x)` and `H_n'(x)`.
pub fn hermite_eval(n: usize, x: f64) -> (f64, f64) {
    let value = hermite(n, x);
    let derivative = if n == 0 {
        0.0
    } else {
        2.0 * n as f64 * hermite(n - 1, x)
    };
    (value, derivative)
}

fn hermite(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for m in 2..=n {
        let next = 2.0 * x * cur - 2.0 * (m - 1) as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Jacobi polynomial `P_n^(a,b)(x)` and its derivative.
pub fn jacobi_eval(n: usize, a: f64, b: f64, x: f64) -> Result<(f64, f64)> {
    let value = jacobi(n, a, b, x)?;
    let derivative = if n == 0 {
        0.0
    } else {
        let factor = (n as f64 + a + b + 1.0) / 2.0;
        if factor == 0.0 {
            0.0
        } else {
            factor * jacobi(n - 1, a + 1.0, b + 1.0, x)?
        }
    };
    Ok((value, derivative))
}

fn is_degenerate(v: f64, scale: f64) -> bool {
    !v.is_finite() || v.abs() <= DEGENERATE_EPS * scale.max(1.0)
}

fn jacobi(n: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let ab = a + b;
    let mut cur = (a - b) / 2.0 + (1.0 + ab / 2.0) * x;
    for m in 2..=n {
        let m = m as f64;
        let c = 2.0 * m + ab;
        let scale = m + a.abs() + b.abs();
        if is_degenerate(m + ab, scale) || is_degenerate(c - 2.0, scale) {
            return Err(Error::DegenerateParameters(format!(
                "Jacobi recurrence denominator vanishes at degree {m} for (a, b) = ({a}, {b})"
            )));
        }
        let denom = 2.0 * m * (m + ab) * (c - 2.0);
        let lin = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
        let back = 2.0 * (m + a - 1.0) * (m + b - 1.0) * c;
        let next = (lin * cur - back * prev) / denom;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Associated Laguerre polynomial `L_n^a(x)` and its derivative.
pub fn assoc_laguerre_eval(n: usize, a: f64, x: f64) -> (f64, f64) {
    let value = laguerre(n, a, x);
    let derivative = if n == 0 {
        0.0
    } else {
        -laguerre(n - 1, a + 1.0, x)
    };
    (value, derivative)
}

fn laguerre(n: usize, a: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for m in 2..=n {
        let m = m as f64;
        let next = ((2.0 * m - 1.0 + a - x) * cur - (m - 1.0 + a) * prev) / m;
        prev = cur;
        cur = next;
    }
    cur
}

/// Real Romanovski polynomial `R_n^(s,t)(x)` and its derivative; see the
/// module docs for the normalization.
pub fn romanovski_eval(n: usize, s: f64, t: f64, x: f64) -> Result<(f64, f64)> {
    let value = romanovski(n, s, t, x)?;
    let derivative = if n == 0 {
        0.0
    } else {
        (1.0 - n as f64 - 2.0 * s) / 2.0 * romanovski(n - 1, s, t, x)?
    };
    Ok((value, derivative))
}

fn romanovski(n: usize, s: f64, t: f64, x: f64) -> Result<f64> {
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let p = -s - n as f64;
    let mut cur = (1.0 + p) * x - t;
    for m in 2..=n {
        let m = m as f64;
        let c = 2.0 * m + 2.0 * p;
        let scale = m + 2.0 * p.abs();
        if is_degenerate(m + 2.0 * p, scale) || is_degenerate(c - 2.0, scale) {
            return Err(Error::DegenerateParameters(format!(
                "Romanovski recurrence denominator vanishes at degree {m} for (s, t, n) = ({s}, {t}, {n})"
            )));
        }
        let denom = 2.0 * m * (m + 2.0 * p) * (c - 2.0);
        let lin = (c - 1.0) * (c * (c - 2.0) * x - 4.0 * p * t);
        let back = 2.0 * ((m + p - 1.0).powi(2) + t * t) * c;
        let next = (lin * cur + back * prev) / denom;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Jacobi polynomial with complex parameters and argument, by the same
/// upward recurrence. Used to cross-check the real Romanovski path.
pub fn jacobi_complex(n: usize, a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let mut prev = one;
    if n == 0 {
        return Ok(prev);
    }
    let ab = a + b;
    let mut cur = (a - b) / 2.0 + (one + ab / 2.0) * z;
    for m in 2..=n {
        let mf = m as f64;
        let c = ab + 2.0 * mf;
        let scale = mf + a.norm() + b.norm();
        if is_degenerate((ab + mf).norm(), scale) || is_degenerate((c - 2.0).norm(), scale) {
            return Err(Error::DegenerateParameters(format!(
                "complex Jacobi recurrence denominator vanishes at degree {m}"
            )));
        }
        let denom = 2.0 * mf * (ab + mf) * (c - 2.0);
        let lin = (c - 1.0) * (c * (c - 2.0) * z + a * a - b * b);
        let back = 2.0 * (a + mf - 1.0) * (b + mf - 1.0) * c;
        let next = (lin * cur - back * prev) / denom;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `(-i)^n P_n^(-s-n-it, -s-n+it)(ix)` in complex arithmetic. Its real part
/// equals [`romanovski_eval`]; the imaginary part is rounding residue.
pub fn pseudo_jacobi_complex(n: usize, s: f64, t: f64, x: f64) -> Result<Complex64> {
    let p = -s - n as f64;
    let a = Complex64::new(p, -t);
    let b = Complex64::new(p, t);
    let value = jacobi_complex(n, a, b, Complex64::new(0.0, x))?;
    Ok(Complex64::new(0.0, -1.0).powu(n as u32) * value)
}
