//! Second-order intertwining between `H0` and `H2`.
//!
//! `L- = d^2 + eta d + gamma` and `L+ = d^2 - eta d + gamma - eta'` with
//! `gamma = eta^2/2 - eta'/2 - V0 + (eps1 + eps2)/2`. They satisfy
//! `H2 L- = L- H0`, annihilate the two lowest `H0` levels, and
//! `L+ L- = (H0 - eps1)(H0 - eps2)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldcases::{CaseDefinition, CaseParams, EigenfunctionSpec, LevelCount, Partner};
use crate::jet::Jet;
use crate::quadrature::{classical_window, Grid, Window, DEFAULT_ACTION};

/// Default number of quadrature points.
pub const DEFAULT_GRID_N: usize = 4001;

/// Largest endpoint density, relative to the peak, accepted by [`normalize`].
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// The intertwiner of a case, built from `eta` and the factorization energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntertwinerData {
    pub case: CaseDefinition,
}

impl IntertwinerData {
    pub fn new(case: CaseDefinition) -> Self {
        Self { case }
    }

    pub fn epsilon1(&self) -> f64 {
        self.case.epsilon1
    }

    pub fn epsilon2(&self) -> f64 {
        self.case.epsilon2
    }

    pub fn eta_jet(&self, x: f64) -> Result<Jet> {
        self.case.eta_jet(x)
    }

    /// `gamma(x)` as a jet, exact through third order.
    pub fn gamma_jet(&self, x: f64) -> Result<Jet> {
        let eta = self.case.eta_jet(x)?;
        let v0 = self.case.potential_jet(Partner::H0, x)?;
        let eps = (self.case.epsilon1 + self.case.epsilon2) / 2.0;
        Ok(eta.sqr() * 0.5 - eta.derivative() * 0.5 - v0 + eps)
    }

    pub fn gamma(&self, x: f64) -> Result<f64> {
        Ok(self.gamma_jet(x)?.value())
    }

    /// `L- f` given `f` as a jet at `x`; the result is exact through second order.
    pub fn apply_minus(&self, f: &Jet, x: f64) -> Result<Jet> {
        let eta = self.eta_jet(x)?;
        let gamma = self.gamma_jet(x)?;
        Ok(apply_second_order(f, &eta, &gamma))
    }

    /// `L+ f` given `f` as a jet at `x`.
    pub fn apply_plus(&self, f: &Jet, x: f64) -> Result<Jet> {
        let eta = self.eta_jet(x)?;
        let gamma = self.gamma_jet(x)?;
        let d1 = f.derivative();
        Ok(d1.derivative() - eta * d1 + (gamma - eta.derivative()) * *f)
    }
}

fn apply_second_order(f: &Jet, eta: &Jet, gamma: &Jet) -> Jet {
    let d1 = f.derivative();
    d1.derivative() + *eta * d1 + *gamma * *f
}

/// `gamma(x)` for a case.
pub fn gamma_fn(case: &CaseDefinition, x: f64) -> Result<f64> {
    IntertwinerData::new(*case).gamma(x)
}

/// `(-d^2 + V) f` as a jet.
fn apply_hamiltonian(case: &CaseDefinition, partner: Partner, f: &Jet, x: f64) -> Result<Jet> {
    let v = case.potential_jet(partner, x)?;
    Ok(v * *f - f.derivative().derivative())
}

/// Samples of a function on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    pub grid: Grid,
    pub values: Vec<f64>,
    pub derivative: Option<Vec<f64>>,
}

impl SampledFunction {
    pub fn from_fn(grid: Grid, mut f: impl FnMut(f64) -> Result<f64>) -> Result<Self> {
        let values = grid
            .points()
            .into_iter()
            .map(&mut f)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            grid,
            values,
            derivative: None,
        })
    }

    pub fn norm(&self) -> f64 {
        let sq: Vec<f64> = self.values.iter().map(|v| v * v).collect();
        self.grid.integrate(&sq).sqrt()
    }
}

/// Window for a level of `partner` at `energy`, offset from any wall.
pub fn level_window(case: &CaseDefinition, partner: Partner, energy: f64) -> Result<Window> {
    classical_window(case, partner, energy, DEFAULT_ACTION, case.wall_offset())
}

/// Default quadrature grid for one eigenfunction.
pub fn default_grid(spec: &EigenfunctionSpec) -> Result<Grid> {
    let w = level_window(spec.case(), spec.partner(), spec.energy())?;
    Grid::new(w.lo, w.hi, DEFAULT_GRID_N)
}

/// Sets the coefficient so that the trapezoid norm on `grid` is one.
pub fn normalize(spec: &EigenfunctionSpec, grid: &Grid) -> Result<EigenfunctionSpec> {
    let raw = spec.with_coefficient(1.0);
    let sampled = SampledFunction::from_fn(*grid, |x| raw.value(x))?;
    let density: Vec<f64> = sampled.values.iter().map(|v| v * v).collect();
    let peak = density.iter().cloned().fold(0.0, f64::max);
    if !(peak > 0.0 && peak.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "eigenfunction has no finite nonzero samples on [{}, {}]",
            grid.lo, grid.hi
        )));
    }
    let edge = density[0].max(density[grid.n - 1]);
    if edge > TAIL_TOLERANCE * peak {
        return Err(Error::TailMassTooLarge {
            lo: grid.lo,
            hi: grid.hi,
            ratio: edge / peak,
        });
    }
    let norm = grid.integrate(&density).sqrt();
    Ok(spec.with_coefficient(1.0 / norm))
}

/// Normalized closed-form eigenfunction on its default grid.
pub fn normalized_eigenfunction(
    case: &CaseDefinition,
    partner: Partner,
    n: usize,
) -> Result<EigenfunctionSpec> {
    let spec = case.aux_eigenfunction(partner, n)?;
    normalize(&spec, &default_grid(&spec)?)
}

fn require_bound(case: &CaseDefinition, n: usize) -> Result<()> {
    let count = case.bound_state_count(Partner::H0);
    if count.contains(n) {
        Ok(())
    } else {
        Err(Error::LevelOutOfRange {
            level: n,
            partner: Partner::H0.name(),
            bound: count.to_string(),
        })
    }
}

fn grid_or_default(grid: Option<&Grid>, spec: &EigenfunctionSpec) -> Result<Grid> {
    match grid {
        Some(g) => Ok(*g),
        None => default_grid(spec),
    }
}

/// `||(H2 L- - L- H0) psi_n|| / ||L- psi_n||` for `H0` level `n`; zero for
/// the two seed levels, which `L-` annihilates.
pub fn intertwining_residual(case: &CaseDefinition, n: usize, grid: Option<&Grid>) -> Result<f64> {
    require_bound(case, n)?;
    if n < 2 {
        return Ok(0.0);
    }
    let iw = IntertwinerData::new(*case);
    let spec = case.aux_eigenfunction(Partner::H0, n)?;
    let grid = grid_or_default(grid, &spec)?;
    let mut diff = Vec::with_capacity(grid.n);
    let mut image = Vec::with_capacity(grid.n);
    for x in grid.points() {
        let psi = spec.eval_jet(x)?;
        let lpsi = iw.apply_minus(&psi, x)?;
        let left = apply_hamiltonian(case, Partner::H2, &lpsi, x)?;
        let h0psi = apply_hamiltonian(case, Partner::H0, &psi, x)?;
        let right = iw.apply_minus(&h0psi, x)?;
        diff.push((left.value() - right.value()).powi(2));
        image.push(lpsi.value().powi(2));
    }
    Ok((grid.integrate(&diff) / grid.integrate(&image)).sqrt())
}

/// `||L- psi_j|| / ||psi_j||` for a seed level `j`.
pub fn seed_annihilation(case: &CaseDefinition, j: usize, grid: Option<&Grid>) -> Result<f64> {
    if j > 1 {
        return Err(Error::InvalidInput(format!(
            "seed index must be 0 or 1, got {j}"
        )));
    }
    let iw = IntertwinerData::new(*case);
    let spec = case.aux_eigenfunction(Partner::H0, j)?;
    let grid = grid_or_default(grid, &spec)?;
    let mut image = Vec::with_capacity(grid.n);
    let mut norm = Vec::with_capacity(grid.n);
    for x in grid.points() {
        let psi = spec.eval_jet(x)?;
        image.push(iw.apply_minus(&psi, x)?.value().powi(2));
        norm.push(psi.value().powi(2));
    }
    Ok((grid.integrate(&image) / grid.integrate(&norm)).sqrt())
}

/// Largest relative deviation of `(L+ L- psi_n) / psi_n` from
/// `(E_n - eps2)(E_n - eps1)` over grid points where `|psi_n|` exceeds
/// `1e-3` of its maximum. For the seeds the target is zero and the error is
/// measured against `eps1^2`.
pub fn factorization_error(case: &CaseDefinition, n: usize, grid: Option<&Grid>) -> Result<f64> {
    require_bound(case, n)?;
    let iw = IntertwinerData::new(*case);
    let spec = case.aux_eigenfunction(Partner::H0, n)?;
    let grid = grid_or_default(grid, &spec)?;
    let e = case.aux_eigenvalue(Partner::H0, n)?;
    let target = (e - case.epsilon2) * (e - case.epsilon1);
    let scale = target.abs().max(case.epsilon1 * case.epsilon1);
    let points = grid.points();
    let values = points
        .iter()
        .map(|&x| spec.value(x))
        .collect::<Result<Vec<_>>>()?;
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut worst = 0.0f64;
    for (&x, &v) in points.iter().zip(&values) {
        if v.abs() <= 1e-3 * peak {
            continue;
        }
        let psi = spec.eval_jet(x)?;
        let lpsi = iw.apply_minus(&psi, x)?;
        let ratio = iw.apply_plus(&lpsi, x)?.value() / v;
        worst = worst.max((ratio - target).abs() / scale);
    }
    Ok(worst)
}

/// `psi_n^(2) = L- psi_{n+2}^(0) / sqrt((E_{n+2} - eps2)(E_{n+2} - eps1))`
/// built from a normalized `H0` eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartnerImage {
    iw: IntertwinerData,
    source: EigenfunctionSpec,
    factor: f64,
}

impl PartnerImage {
    pub fn new(case: &CaseDefinition, n: usize) -> Result<Self> {
        let source = normalized_eigenfunction(case, Partner::H0, n + 2)?;
        let e = source.energy();
        let factor = ((e - case.epsilon2) * (e - case.epsilon1)).sqrt();
        Ok(Self {
            iw: IntertwinerData::new(*case),
            source,
            factor,
        })
    }

    pub fn source(&self) -> &EigenfunctionSpec {
        &self.source
    }

    pub fn factor(&self) -> f64 {
        self.factor
    }

    /// Value and first two derivatives.
    pub fn eval_jet(&self, x: f64) -> Result<Jet> {
        let psi = self.source.eval_jet(x)?;
        Ok(self.iw.apply_minus(&psi, x)? * (1.0 / self.factor))
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.eval_jet(x)?.value())
    }
}

/// Normalized closed-form `psi_n^(2)` with its sign matched to the image
/// `L- psi_{n+2}^(0)`, so that it pairs with `psi_{n+2}^(0)` on the hole
/// branch exactly as the intertwiner does.
pub fn aligned_partner_eigenfunction(case: &CaseDefinition, n: usize) -> Result<EigenfunctionSpec> {
    let spec = case.aux_eigenfunction(Partner::H2, n)?;
    let grid = default_grid(&spec)?;
    let spec = normalize(&spec, &grid)?;
    let image = PartnerImage::new(case, n)?;
    let mut overlap = Vec::with_capacity(grid.n);
    for x in grid.points() {
        overlap.push(spec.value(x)? * image.value(x)?);
    }
    let c = spec.coefficient().unwrap_or(1.0);
    Ok(if grid.integrate(&overlap) < 0.0 {
        spec.with_coefficient(-c)
    } else {
        spec
    })
}

/// One bilayer level. `m = 0` is the doubly degenerate ground level built
/// from the two seeds; `m >= 1` pairs `psi_{m-1}^(2)` with `psi_{m+1}^(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub m: usize,
    pub electron: f64,
    pub hole: f64,
    pub multiplicity: u8,
    /// `E_{m+1}^(0)` for excited levels, `E_0^(0) = 0` for the ground level.
    pub aux_level_0: f64,
    /// `E_{m-1}^(2)`, absent for the ground level.
    pub aux_level_2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub params: CaseParams,
    pub bound_count: LevelCount,
    pub levels: Vec<LevelRecord>,
}

/// Number of bilayer levels available for a case.
pub fn bilayer_level_count(case: &CaseDefinition) -> LevelCount {
    match case.bound_state_count(Partner::H0) {
        LevelCount::Finite(c) => LevelCount::Finite(c.saturating_sub(1)),
        LevelCount::Infinite => LevelCount::Infinite,
    }
}

/// The first `n_max` bilayer levels, clipped to the bound spectrum, in
/// natural units.
pub fn spectrum(case: &CaseDefinition, n_max: usize) -> Result<SpectrumResult> {
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let count = bilayer_level_count(case);
    let mut levels = Vec::new();
    for m in 0..count.clip(n_max) {
        if m == 0 {
            levels.push(LevelRecord {
                m,
                electron: 0.0,
                hole: 0.0,
                multiplicity: 2,
                aux_level_0: case.aux_eigenvalue(Partner::H0, 0)?,
                aux_level_2: None,
            });
            continue;
        }
        let e0 = case.aux_eigenvalue(Partner::H0, m + 1)?;
        let e2 = case.aux_eigenvalue(Partner::H2, m - 1)?;
        let energy = ((e0 - case.epsilon2) * (e0 - case.epsilon1)).sqrt();
        levels.push(LevelRecord {
            m,
            electron: energy,
            hole: -energy,
            multiplicity: 1,
            aux_level_0: e0,
            aux_level_2: Some(e2),
        });
    }
    Ok(SpectrumResult {
        params: case.params,
        bound_count: count,
        levels,
    })
}

const HBAR: f64 = 1.054_571_817e-34;
const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
const ELECTRON_VOLT: f64 = 1.602_176_634e-19;

/// Carrier effective mass in units of the electron mass.
pub const EFFECTIVE_MASS_RATIO: f64 = 0.054;

fn check_length(length_scale: f64) -> Result<()> {
    if length_scale.is_finite() && length_scale > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveParameter {
            name: "length_scale",
            value: length_scale,
        })
    }
}

/// Energy in eV for a natural-unit energy, lengths measured in units of
/// `length_scale` meters.
pub fn to_physical_units(e_natural: f64, length_scale: f64) -> Result<f64> {
    check_length(length_scale)?;
    let m = EFFECTIVE_MASS_RATIO * ELECTRON_MASS;
    Ok(e_natural * HBAR * HBAR / (2.0 * m * length_scale * length_scale) / ELECTRON_VOLT)
}

/// Current density in s^-1 for a natural-unit current.
pub fn current_to_physical_units(j_natural: f64, length_scale: f64) -> Result<f64> {
    check_length(length_scale)?;
    let m = EFFECTIVE_MASS_RATIO * ELECTRON_MASS;
    Ok(j_natural * HBAR / (2.0 * m * length_scale * length_scale))
}

#[cfg(test)]
mod tests;
