//! Quadratic envelopes of the finite spectra.
//!
//! For the hyperbolic well, the exponential decay and the hyperbolic
//! singular field the bilayer levels exist only over a finite range of `k`.
//! The curve `a k^2 + b k + c` passes through the energy of each level at
//! the `k` where it leaves the bound spectrum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldcases::{level_energy_formula, CaseDefinition, CaseKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeQuadratic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl EnvelopeQuadratic {
    pub fn value(&self, k: f64) -> f64 {
        (self.a * k + self.b) * k + self.c
    }

    /// `2ak + b`, in units of `v_F^2 hbar / gamma1`.
    pub fn group_velocity(&self, k: f64) -> f64 {
        2.0 * self.a * k + self.b
    }

    /// `[M]_22 = m* / a`, in units of `m*`.
    pub fn effective_mass_22(&self) -> f64 {
        1.0 / self.a
    }
}

pub fn envelope(case: &CaseDefinition) -> Result<EnvelopeQuadratic> {
    let p = &case.params;
    match p.kind {
        CaseKind::HyperbolicWell => {
            let (d, al) = (p.d.unwrap(), p.alpha.unwrap());
            Ok(EnvelopeQuadratic {
                a: 4.0 * d * (d - al) / (2.0 * d - al).powi(2),
                b: 2.0 * al - 4.0 * d * d / (2.0 * d - al),
                c: d * (d - al),
            })
        }
        CaseKind::ExpDecay => {
            let al = p.alpha.unwrap();
            Ok(EnvelopeQuadratic {
                a: 1.0,
                b: 0.0,
                c: -al * al / 4.0,
            })
        }
        CaseKind::HyperbolicSingular => {
            let (d, al) = (p.d.unwrap(), p.alpha.unwrap());
            Ok(EnvelopeQuadratic {
                a: 4.0 * d * (d + al) / (2.0 * d + al).powi(2),
                b: -2.0 * al - 4.0 * d * d / (2.0 * d + al),
                c: d * (d + al),
            })
        }
        CaseKind::Constant => Err(Error::EnvelopeUndefined("constant field")),
        CaseKind::TrigSingular => Err(Error::EnvelopeUndefined("trigonometric singular well")),
        CaseKind::Singular => Err(Error::EnvelopeUndefined("singular field")),
    }
}

/// Where the `H0` level `n` (bilayer level `n - 1`) leaves the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TouchReport {
    pub n: usize,
    pub k: f64,
    pub kappa: f64,
    pub energy: f64,
    pub envelope: f64,
    /// `|energy - envelope|` relative to `max(|energy|, |envelope|, alpha^2)`.
    pub residual: f64,
}

const BISECTION_STEPS: usize = 200;

/// Locates the `k` at which `H0` level `n >= 2` stops being bound, keeping
/// `D` and `alpha` fixed, and compares the bilayer energy there with the
/// envelope.
pub fn envelope_touch_check(case: &CaseDefinition, n: usize) -> Result<TouchReport> {
    let env = envelope(case)?;
    let p = case.params;
    let (d, al) = (p.d.unwrap(), p.alpha.unwrap());
    let nf = n as f64;
    let reachable = n >= 2 && (p.kind != CaseKind::HyperbolicWell || d - nf * al > al);
    if !reachable {
        return Err(Error::LevelOutOfRange {
            level: n,
            partner: "H0",
            bound: "levels with a reachable boundary".into(),
        });
    }
    // kappa(k) is linear in k with positive slope; margin(kappa) is the
    // bound-state inequality on the positive-kappa side.
    let kappa_of = |k: f64| match p.kind {
        CaseKind::HyperbolicWell => 2.0 * k * (d - al) / (2.0 * d - al),
        CaseKind::ExpDecay => k + al / 2.0,
        _ => 2.0 * k * (d + al) / (2.0 * d + al),
    };
    let margin = |kappa: f64| match p.kind {
        CaseKind::HyperbolicWell => (d - nf * al).powi(2) - kappa * d,
        CaseKind::ExpDecay => kappa - nf * al,
        _ => kappa * d - (d + nf * al).powi(2),
    };
    let g = |k: f64| margin(kappa_of(k));
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    while g(lo).signum() == g(hi).signum() {
        lo = -2.0 * hi;
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::InvalidInput(
                "no bound-state boundary found in k".into(),
            ));
        }
    }
    let sign_lo = g(lo).signum();
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if g(mid).signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let k = 0.5 * (lo + hi);
    let kappa = kappa_of(k);
    let mut params = p;
    params.k = k;
    params.kappa = kappa;
    let e_n = level_energy_formula(&params, n);
    let e_1 = level_energy_formula(&params, 1);
    let energy = (e_n * (e_n - e_1)).max(0.0).sqrt();
    let target = env.value(k);
    let scale = energy.abs().max(target.abs()).max(al * al);
    Ok(TouchReport {
        n,
        k,
        kappa,
        energy,
        envelope: target,
        residual: (energy - target).abs() / scale,
    })
}
