//! Uniform grids, trapezoid sums and classical-region windows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldcases::{CaseDefinition, CaseKind, Partner};

/// Uniform grid of `n` points on `[lo, hi]`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(Error::InvalidInput(format!(
                "bad grid interval [{lo}, {hi}]"
            )));
        }
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "grid needs at least 3 points, got {n}"
            )));
        }
        Ok(Self { lo, hi, n })
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.n - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.hi
        } else {
            self.lo + i as f64 * self.step()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }

    /// Trapezoid rule for samples taken on this grid.
    pub fn integrate(&self, samples: &[f64]) -> f64 {
        assert_eq!(samples.len(), self.n, "sample count must match the grid");
        let inner: f64 = samples[1..self.n - 1].iter().sum();
        self.step() * (inner + 0.5 * (samples[0] + samples[self.n - 1]))
    }
}

/// An interval together with which ends sit at a singular wall.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
    pub lo_at_wall: bool,
    pub hi_at_wall: bool,
}

impl Window {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn union(&self, other: &Window) -> Window {
        let (lo, lo_at_wall) = if other.lo < self.lo {
            (other.lo, other.lo_at_wall)
        } else {
            (self.lo, self.lo_at_wall)
        };
        let (hi, hi_at_wall) = if other.hi > self.hi {
            (other.hi, other.hi_at_wall)
        } else {
            (self.hi, self.hi_at_wall)
        };
        Window {
            lo,
            hi,
            lo_at_wall,
            hi_at_wall,
        }
    }
}

/// Default WKB action `int sqrt(V - E) dx` past each turning point. The
/// wavefunction decays roughly as `exp(-action)` there.
pub const DEFAULT_ACTION: f64 = 20.0;

const WALK_STEPS_PER_SCALE: f64 = 400.0;
const MAX_WALK_STEPS: usize = 4_000_000;

/// Rough location of the potential minimum, from a scan.
pub fn potential_minimum(case: &CaseDefinition, partner: Partner) -> Result<f64> {
    let ell = case.length_scale();
    let delta = case.wall_offset();
    let (lo, hi) = match case.kind() {
        CaseKind::Constant => {
            let c = -2.0 * case.k() / case.params.omega.unwrap();
            (c - 10.0 * ell, c + 10.0 * ell)
        }
        CaseKind::TrigSingular => {
            let hi = case.domain.upper_wall().unwrap();
            (delta, hi - delta)
        }
        CaseKind::HyperbolicSingular | CaseKind::Singular => (delta, 60.0 * ell),
        CaseKind::HyperbolicWell => (-60.0 * ell, 60.0 * ell),
        CaseKind::ExpDecay => {
            let p = &case.params;
            let (d, a) = (p.d.unwrap(), p.alpha.unwrap());
            let c = -((p.kappa + a / 2.0) / d).ln() / a;
            (c - 30.0 * ell, c + 30.0 * ell)
        }
    };
    let steps = 6000;
    let mut best = (f64::INFINITY, lo);
    for i in 0..=steps {
        let x = lo + (hi - lo) * i as f64 / steps as f64;
        let v = case.potential(partner, x)?;
        if v < best.0 {
            best = (v, x);
        }
    }
    Ok(best.1)
}

/// Window around the classically allowed region of `partner` at `energy`,
/// extended on each open side until the WKB action reaches `action`. Sides
/// bounded by a singular wall stop `wall_offset` short of it.
pub fn classical_window(
    case: &CaseDefinition,
    partner: Partner,
    energy: f64,
    action: f64,
    wall_offset: f64,
) -> Result<Window> {
    let start = potential_minimum(case, partner)?;
    let (lo, lo_at_wall) = walk(case, partner, energy, action, wall_offset, start, -1.0)?;
    let (hi, hi_at_wall) = walk(case, partner, energy, action, wall_offset, start, 1.0)?;
    Ok(Window {
        lo,
        hi,
        lo_at_wall,
        hi_at_wall,
    })
}

fn walk(
    case: &CaseDefinition,
    partner: Partner,
    energy: f64,
    action: f64,
    wall_offset: f64,
    start: f64,
    dir: f64,
) -> Result<(f64, bool)> {
    let wall = if dir < 0.0 {
        case.domain.lower_wall()
    } else {
        case.domain.upper_wall()
    };
    if let Some(w) = wall {
        return Ok((w - dir * wall_offset, true));
    }
    let h = case.length_scale() / WALK_STEPS_PER_SCALE;
    let mut x = start;
    let mut acc = 0.0;
    let mut prev = (case.potential(partner, x)? - energy).max(0.0).sqrt();
    for _ in 0..MAX_WALK_STEPS {
        let next = x + dir * h;
        let cur = (case.potential(partner, next)? - energy).max(0.0).sqrt();
        acc += 0.5 * (prev + cur) * h;
        prev = cur;
        x = next;
        if acc >= action {
            return Ok((x, false));
        }
    }
    Err(Error::InvalidInput(format!(
        "energy {energy} is not below the potential edge of {} on the {} side",
        partner.name(),
        if dir < 0.0 { "left" } else { "right" }
    )))
}
