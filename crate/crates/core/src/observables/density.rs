//! Probability and current densities of bilayer eigenstates.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldcases::{CaseDefinition, Partner};
use crate::quadrature::Grid;
use crate::susy::{
    aligned_partner_eigenfunction, bilayer_level_count, level_window, normalized_eigenfunction,
    DEFAULT_GRID_N,
};

/// A bilayer eigenstate: one of the two degenerate ground states (seed
/// `j` in `{0, 1}`) or the excited level `m >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BilayerState {
    Ground { j: usize },
    Excited { m: usize },
}

impl BilayerState {
    pub fn level(&self) -> usize {
        match *self {
            BilayerState::Ground { .. } => 0,
            BilayerState::Excited { m } => m,
        }
    }
}

/// Sign of the energy. With `psi^(2) = L- psi^(0) / sqrt(..)` the pair
/// solves the bilayer equations at negative energy; electrons flip the sign
/// of the upper component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Carrier {
    Electron,
    Hole,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityProfile {
    pub grid: Grid,
    pub rho: Vec<f64>,
    pub state: BilayerState,
}

impl DensityProfile {
    pub fn integral(&self) -> f64 {
        self.grid.integrate(&self.rho)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurrentProfile {
    pub grid: Grid,
    pub jx: Vec<f64>,
    pub jy: Vec<f64>,
    pub state: BilayerState,
    pub carrier: Carrier,
}

fn check_state(case: &CaseDefinition, state: BilayerState) -> Result<()> {
    let count = bilayer_level_count(case);
    let ok = match state {
        BilayerState::Ground { j } => {
            if j > 1 {
                return Err(Error::InvalidInput(format!(
                    "ground-state index must be 0 or 1, got {j}"
                )));
            }
            count.contains(0)
        }
        BilayerState::Excited { m } => m >= 1 && count.contains(m),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::LevelOutOfRange {
            level: state.level(),
            partner: "bilayer",
            bound: count.to_string(),
        })
    }
}

/// Grid covering every component of a state.
pub fn default_state_grid(case: &CaseDefinition, state: BilayerState) -> Result<Grid> {
    check_state(case, state)?;
    let w = match state {
        BilayerState::Ground { j } => {
            level_window(case, Partner::H0, case.aux_eigenvalue(Partner::H0, j)?)?
        }
        BilayerState::Excited { m } => {
            let e = case.aux_eigenvalue(Partner::H0, m + 1)?;
            level_window(case, Partner::H0, e)?.union(&level_window(case, Partner::H2, e)?)
        }
    };
    Grid::new(w.lo, w.hi, DEFAULT_GRID_N)
}

/// `|psi_j^(0)|^2` for a ground state, `(|psi_{m-1}^(2)|^2 + |psi_{m+1}^(0)|^2)/2`
/// for an excited one.
pub fn probability_density(
    case: &CaseDefinition,
    state: BilayerState,
    grid: Option<&Grid>,
) -> Result<DensityProfile> {
    check_state(case, state)?;
    let grid = match grid {
        Some(g) => *g,
        None => default_state_grid(case, state)?,
    };
    let rho = match state {
        BilayerState::Ground { j } => {
            let f = normalized_eigenfunction(case, Partner::H0, j)?;
            grid.points()
                .into_iter()
                .map(|x| Ok(f.value(x)?.powi(2)))
                .collect::<Result<Vec<_>>>()?
        }
        BilayerState::Excited { m } => {
            let lower = normalized_eigenfunction(case, Partner::H0, m + 1)?;
            let upper = aligned_partner_eigenfunction(case, m - 1)?;
            grid.points()
                .into_iter()
                .map(|x| Ok(0.5 * (upper.value(x)?.powi(2) + lower.value(x)?.powi(2))))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(DensityProfile { grid, rho, state })
}

/// Current density with the `hbar / 2m*` prefactor set to one:
/// `J_x = Im[W(psi0*, psi2) + 2k psi0 psi2*]`,
/// `J_y = Re[W(psi0*, psi2) - 2k psi0 psi2*]`, `W(f, g) = f g' - f' g`,
/// where `psi0 = psi_{m+1}^(0)` and `psi2 = psi_{m-1}^(2)`. Both vanish
/// for the ground states.
pub fn current_density(
    case: &CaseDefinition,
    state: BilayerState,
    carrier: Carrier,
    grid: Option<&Grid>,
) -> Result<CurrentProfile> {
    check_state(case, state)?;
    let grid = match grid {
        Some(g) => *g,
        None => default_state_grid(case, state)?,
    };
    let m = match state {
        BilayerState::Ground { .. } => {
            return Ok(CurrentProfile {
                grid,
                jx: vec![0.0; grid.n],
                jy: vec![0.0; grid.n],
                state,
                carrier,
            })
        }
        BilayerState::Excited { m } => m,
    };
    let lower = normalized_eigenfunction(case, Partner::H0, m + 1)?;
    let upper = aligned_partner_eigenfunction(case, m - 1)?;
    let sign = match carrier {
        Carrier::Hole => 1.0,
        Carrier::Electron => -1.0,
    };
    let k = case.k();
    let mut jx = Vec::with_capacity(grid.n);
    let mut jy = Vec::with_capacity(grid.n);
    for x in grid.points() {
        let a = lower.eval_jet(x)?;
        let b = upper.eval_jet(x)?;
        let (f, df) = (Complex64::from(a.value()), Complex64::from(a.d(1)));
        let (g, dg) = (
            Complex64::from(sign * b.value()),
            Complex64::from(sign * b.d(1)),
        );
        let w = f.conj() * dg - df.conj() * g;
        jx.push((w + 2.0 * k * f * g.conj()).im);
        jy.push((w - 2.0 * k * f * g.conj()).re);
    }
    Ok(CurrentProfile {
        grid,
        jx,
        jy,
        state,
        carrier,
    })
}
