//! Nearest-neighbour tight-binding bands of bilayer graphene.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// In-plane hopping, eV.
pub const DEFAULT_GAMMA0: f64 = 2.97;
/// Interlayer hopping, eV.
pub const DEFAULT_GAMMA1: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TightBinding {
    pub gamma0: f64,
    pub gamma1: f64,
    /// Lattice constant; `k` is measured in units of `1 / lattice`.
    pub lattice: f64,
}

impl Default for TightBinding {
    fn default() -> Self {
        Self {
            gamma0: DEFAULT_GAMMA0,
            gamma1: DEFAULT_GAMMA1,
            lattice: 1.0,
        }
    }
}

impl TightBinding {
    /// `S(k) = 2 exp(i kx a / 2sqrt3) cos(ky a / 2) + exp(-i kx a / sqrt3)`.
    pub fn structure_factor(&self, kx: f64, ky: f64) -> Complex64 {
        let a = self.lattice;
        let s3 = 3f64.sqrt();
        2.0 * Complex64::from_polar(1.0, kx * a / (2.0 * s3)) * (ky * a / 2.0).cos()
            + Complex64::from_polar(1.0, -kx * a / s3)
    }

    /// A valley point, where `S` vanishes.
    pub fn k_point(&self) -> (f64, f64) {
        (0.0, 4.0 * std::f64::consts::PI / (3.0 * self.lattice))
    }

    /// The four bands `-g1/2 + R, g1/2 - R, g1/2 + R, -g1/2 - R` with
    /// `R = sqrt(g1^2/4 + g0^2 |S|^2)`. The first two touch at the valley.
    pub fn bands(&self, kx: f64, ky: f64) -> [f64; 4] {
        let s = self.structure_factor(kx, ky).norm();
        let half = self.gamma1 / 2.0;
        let r = (half * half + (self.gamma0 * s).powi(2)).sqrt();
        [-half + r, half - r, half + r, -half - r]
    }

    /// Low-energy parabola `hbar^2 q^2 / 2m*` of the two touching bands,
    /// with the mass implied by the hoppings: `3 g0^2 (q a)^2 / (4 g1)`.
    pub fn parabolic_energy(&self, q: f64) -> f64 {
        let qa = q * self.lattice;
        0.75 * self.gamma0 * self.gamma0 * qa * qa / self.gamma1
    }
}

/// Bands with default hoppings.
pub fn tight_binding_bands(kx: f64, ky: f64) -> [f64; 4] {
    TightBinding::default().bands(kx, ky)
}
