//! Truncated Taylor arithmetic for exact derivatives.
//!
//! A [`Jet`] carries the value of a function and its first four derivatives
//! at one point, stored as normalized Taylor coefficients `f^(k)(x0) / k!`.
//! Arithmetic and elementary functions propagate all orders through the
//! product and chain rules, so a closed-form expression evaluated on
//! `Jet::var(x)` yields its derivatives with no step-size error.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Highest derivative order carried.
pub const ORDER: usize = 4;
const LEN: usize = ORDER + 1;
const FACT: [f64; LEN] = [1.0, 1.0, 2.0, 6.0, 24.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    c: [f64; LEN],
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; LEN];
        c[0] = v;
        Self { c }
    }

    /// The independent variable at `x`.
    pub fn var(x: f64) -> Self {
        let mut c = [0.0; LEN];
        c[0] = x;
        c[1] = 1.0;
        Self { c }
    }

    /// Builds a jet from derivatives `[f, f', f'', f''', f'''']`.
    pub fn from_derivatives(d: [f64; LEN]) -> Self {
        let mut c = [0.0; LEN];
        for k in 0..LEN {
            c[k] = d[k] / FACT[k];
        }
        Self { c }
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative, `k <= ORDER`.
    pub fn d(&self, k: usize) -> f64 {
        self.c[k] * FACT[k]
    }

    pub fn derivatives(&self) -> [f64; LEN] {
        let mut d = [0.0; LEN];
        for k in 0..LEN {
            d[k] = self.d(k);
        }
        d
    }

    /// Replaces the value while keeping the derivatives. Used when a more
    /// accurate value is available than the one produced by the arithmetic
    /// (e.g. `1 - exp(-y)` near `y = 0`).
    pub fn with_value(mut self, v: f64) -> Self {
        self.c[0] = v;
        self
    }

    /// Derivative as a jet. The highest order is lost and set to zero, so
    /// the result is exact only up to order `ORDER - 1`.
    pub fn derivative(&self) -> Self {
        let mut c = [0.0; LEN];
        for k in 0..ORDER {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Self { c }
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut c = self.c;
        c.iter_mut().for_each(|v| *v *= s);
        Self { c }
    }

    pub fn offset(&self, s: f64) -> Self {
        let mut c = self.c;
        c[0] += s;
        Self { c }
    }

    /// Composes an outer function `g` with this jet, given
    /// `[g(x0), g'(x0), ..., g''''(x0)]` at `x0 = self.value()`.
    pub fn compose(&self, outer: [f64; LEN]) -> Self {
        let mut t = *self;
        t.c[0] = 0.0;
        let mut out = [0.0; LEN];
        out[0] = outer[0];
        let mut power = Self::constant(1.0);
        for (k, &g) in outer.iter().enumerate().skip(1) {
            power = power * t;
            let w = g / FACT[k];
            for (o, p) in out.iter_mut().zip(power.c.iter()) {
                *o += w * p;
            }
        }
        Self { c: out }
    }

    pub fn exp(&self) -> Self {
        let e = self.c[0].exp();
        self.compose([e; LEN])
    }

    pub fn ln(&self) -> Self {
        let u = self.c[0];
        let r = 1.0 / u;
        self.compose([u.ln(), r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
    }

    pub fn powf(&self, p: f64) -> Self {
        let u = self.c[0];
        let mut d = [0.0; LEN];
        let mut coef = 1.0;
        for (k, dk) in d.iter_mut().enumerate() {
            *dk = coef * u.powf(p - k as f64);
            coef *= p - k as f64;
        }
        self.compose(d)
    }

    pub fn recip(&self) -> Self {
        self.powf(-1.0)
    }

    pub fn sqr(&self) -> Self {
        *self * *self
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.c[0].sin_cos();
        self.compose([s, c, -s, -c, s])
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.c[0].sin_cos();
        self.compose([c, -s, -c, s, c])
    }

    pub fn tanh(&self) -> Self {
        let t = self.c[0].tanh();
        let sech2 = sech_sq(self.c[0]);
        self.compose([
            t,
            sech2,
            -2.0 * t * sech2,
            sech2 * (6.0 * t * t - 2.0),
            sech2 * (16.0 * t - 24.0 * t * t * t),
        ])
    }

    pub fn sinh(&self) -> Self {
        let (s, c) = (self.c[0].sinh(), self.c[0].cosh());
        self.compose([s, c, s, c, s])
    }

    pub fn cosh(&self) -> Self {
        let (s, c) = (self.c[0].sinh(), self.c[0].cosh());
        self.compose([c, s, c, s, c])
    }

    /// `ln(1 + e^y)`, stable for large `|y|`.
    pub fn softplus(&self) -> Self {
        let y = self.c[0];
        let value = y.max(0.0) + (-y.abs()).exp().ln_1p();
        let s = if y >= 0.0 {
            1.0 / (1.0 + (-y).exp())
        } else {
            let e = y.exp();
            e / (1.0 + e)
        };
        let q = s * (1.0 - s);
        self.compose([
            value,
            s,
            q,
            q * (1.0 - 2.0 * s),
            q * (1.0 - 6.0 * s + 6.0 * s * s),
        ])
    }
}

/// `sech^2(y)` without overflow for large `|y|`.
pub(crate) fn sech_sq(y: f64) -> f64 {
    let e = (-2.0 * y.abs()).exp();
    4.0 * e / ((1.0 + e) * (1.0 + e))
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Jet) -> Jet {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: Jet) -> Jet {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a -= b;
        }
        self
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut c = [0.0; LEN];
        for i in 0..LEN {
            for j in 0..LEN - i {
                c[i + j] += self.c[i] * rhs.c[j];
            }
        }
        Jet { c }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        // Solve q * rhs = self term by term.
        let mut q = [0.0; LEN];
        for k in 0..LEN {
            let mut acc = self.c[k];
            for j in 0..k {
                acc -= q[j] * rhs.c[k - j];
            }
            q[k] = acc / rhs.c[0];
        }
        Jet { c: q }
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        self.offset(rhs)
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, rhs: f64) -> Jet {
        self.offset(-rhs)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        rhs.scale(self)
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        rhs.offset(self)
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        (-rhs).offset(self)
    }
}
