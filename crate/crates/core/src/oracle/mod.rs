//! Finite-difference diagonalization of `H0` and `H2`, independent of the
//! intertwining machinery, used to validate the closed forms.
//!
//! A Dirichlet box is placed over the classically allowed region plus WKB
//! tails (or up to a small offset from singular walls) and `-d^2 + V` is
//! discretized with the three-point stencil. The second-order error in
//! eigenvalues and eigenvectors is removed by Richardson extrapolation
//! between the grid and one with twice the spacing over the same box.

mod tridiag;

use serde::{Deserialize, Serialize};

pub use tridiag::SymTridiagonal;

use crate::error::{Error, Result};
use crate::fieldcases::{CaseDefinition, CaseParams, LevelCount, Partner};
use crate::quadrature::{classical_window, Grid, Window, DEFAULT_ACTION};

/// Smallest accepted grid.
pub const MIN_GRID_N: usize = 100;

/// `-d^2 + V` on the interior points of a grid with Dirichlet ends.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedHamiltonian {
    pub grid: Grid,
    pub diagonal: Vec<f64>,
    pub off_diagonal: f64,
    pub edge_potential: (f64, f64),
}

impl DiscretizedHamiltonian {
    pub fn step(&self) -> f64 {
        self.grid.step()
    }

    /// Fails when either box edge sits below `energy`, where bound states
    /// would leak through the walls.
    pub fn check_window(&self, energy: f64) -> Result<()> {
        let (vl, vr) = self.edge_potential;
        for (edge, v) in [(self.grid.lo, vl), (self.grid.hi, vr)] {
            if v <= energy {
                return Err(Error::WindowTooSmall {
                    edge,
                    edge_potential: v,
                    energy,
                });
            }
        }
        Ok(())
    }
}

/// Builds the central-difference matrix on the interior of `grid`.
pub fn discretize(
    potential: &dyn Fn(f64) -> Result<f64>,
    grid: Grid,
) -> Result<DiscretizedHamiltonian> {
    if grid.n < MIN_GRID_N {
        return Err(Error::InvalidInput(format!(
            "grid needs at least {MIN_GRID_N} points, got {}",
            grid.n
        )));
    }
    let h = grid.step();
    let diagonal = (1..grid.n - 1)
        .map(|i| Ok(2.0 / (h * h) + potential(grid.point(i))?))
        .collect::<Result<Vec<_>>>()?;
    let edge_potential = (potential(grid.lo)?, potential(grid.hi)?);
    Ok(DiscretizedHamiltonian {
        grid,
        diagonal,
        off_diagonal: -1.0 / (h * h),
        edge_potential,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    /// Values on every grid point, zero at both ends, with `sum v^2 h = 1`.
    pub vector: Vec<f64>,
}

/// The `count` smallest eigenpairs, `count <= N / 10`.
pub fn lowest_eigenpairs(h: &DiscretizedHamiltonian, count: usize) -> Result<Vec<Eigenpair>> {
    if count > h.grid.n / 10 {
        return Err(Error::InvalidInput(format!(
            "requested {count} eigenpairs from a {}-point grid; at most N/10 allowed",
            h.grid.n
        )));
    }
    let m = h.diagonal.len();
    let t = SymTridiagonal::new(h.diagonal.clone(), vec![h.off_diagonal; m - 1])?;
    let scale = h.step().sqrt();
    Ok(t.lowest(count)?
        .into_iter()
        .map(|(value, v)| {
            let mut vector = Vec::with_capacity(m + 2);
            vector.push(0.0);
            vector.extend(v.iter().map(|a| a / scale));
            vector.push(0.0);
            Eigenpair { value, vector }
        })
        .collect())
}

/// Grid settings for [`cross_validate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPolicy {
    pub n: usize,
    /// Offset from singular walls; defaults to the case's own.
    pub wall_offset: Option<f64>,
    /// Fixed box, overriding the automatic window.
    pub window: Option<(f64, f64)>,
    /// WKB action past the outermost turning point.
    pub action: f64,
}

impl Default for GridPolicy {
    fn default() -> Self {
        Self {
            n: 4001,
            wall_offset: None,
            window: None,
            action: DEFAULT_ACTION,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eigenvalue: f64,
    pub eigenvector: Option<f64>,
}

impl Tolerances {
    pub fn for_case(case: &CaseDefinition) -> Self {
        if case.kind().is_singular() {
            Self {
                eigenvalue: 1e-3,
                eigenvector: None,
            }
        } else {
            Self {
                eigenvalue: 1e-4,
                eigenvector: Some(1e-5),
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    pub partner: Partner,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub coarse_n: usize,
    pub lo_at_wall: bool,
    pub hi_at_wall: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelComparison {
    pub partner: Partner,
    pub n: usize,
    pub closed_form: f64,
    pub oracle: f64,
    pub oracle_extrapolated: f64,
    /// Relative error of the raw fine-grid eigenvalue.
    pub raw_error: f64,
    /// Relative error after extrapolation; this one is gated.
    pub error: f64,
    /// `1 - |<oracle, closed form>|` with the extrapolated oracle vector.
    pub eigenvector_defect: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeletionCheck {
    pub n: usize,
    pub h2_level: f64,
    pub h0_level: f64,
    pub error: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaSensitivity {
    pub delta: f64,
    pub half_delta: f64,
    /// Largest relative change of any extrapolated eigenvalue.
    pub max_change: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub params: CaseParams,
    pub tolerances: Tolerances,
    pub grids: Vec<GridInfo>,
    pub levels: Vec<LevelComparison>,
    pub deletion: Vec<DeletionCheck>,
    pub delta_sensitivity: Option<DeltaSensitivity>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn max_error(&self) -> f64 {
        self.levels.iter().fold(0.0, |m, l| m.max(l.error))
    }
}

struct PartnerRun {
    info: GridInfo,
    fine: Vec<Eigenpair>,
    extrapolated: Vec<f64>,
    /// Extrapolated eigenvectors on the coarse grid points.
    extrapolated_vectors: Vec<Vec<f64>>,
}

fn box_for(
    case: &CaseDefinition,
    partner: Partner,
    top_energy: f64,
    policy: &GridPolicy,
    wall_offset: f64,
) -> Result<Window> {
    match policy.window {
        Some((lo, hi)) => Ok(Window {
            lo,
            hi,
            lo_at_wall: false,
            hi_at_wall: false,
        }),
        None => classical_window(case, partner, top_energy, policy.action, wall_offset),
    }
}

fn run_partner(
    case: &CaseDefinition,
    partner: Partner,
    count: usize,
    policy: &GridPolicy,
    wall_offset: f64,
) -> Result<PartnerRun> {
    let top = case.aux_eigenvalue(partner, count - 1)?;
    let w = box_for(case, partner, top, policy, wall_offset)?;
    let n = policy.n;
    if n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "oracle grids need an odd point count so the coarse grid nests, got {n}"
        )));
    }
    let coarse_n = n.div_ceil(2);
    let potential = |x: f64| case.potential(partner, x);
    let fine_h = discretize(&potential, Grid::new(w.lo, w.hi, n)?)?;
    fine_h.check_window(top)?;
    let coarse_h = discretize(&potential, Grid::new(w.lo, w.hi, coarse_n)?)?;
    let fine = lowest_eigenpairs(&fine_h, count)?;
    let coarse = lowest_eigenpairs(&coarse_h, count)?;
    let extrapolated = fine
        .iter()
        .zip(&coarse)
        .map(|(f, c)| (4.0 * f.value - c.value) / 3.0)
        .collect();
    let extrapolated_vectors = fine
        .iter()
        .zip(&coarse)
        .map(|(f, c)| {
            let sub: Vec<f64> = f.vector.iter().step_by(2).copied().collect();
            let dot: f64 = sub.iter().zip(&c.vector).map(|(a, b)| a * b).sum();
            let sign = if dot < 0.0 { -1.0 } else { 1.0 };
            sub.iter()
                .zip(&c.vector)
                .map(|(a, b)| (4.0 * a - sign * b) / 3.0)
                .collect()
        })
        .collect();
    Ok(PartnerRun {
        info: GridInfo {
            partner,
            lo: w.lo,
            hi: w.hi,
            n,
            coarse_n,
            lo_at_wall: w.lo_at_wall,
            hi_at_wall: w.hi_at_wall,
        },
        fine,
        extrapolated,
        extrapolated_vectors,
    })
}

fn relative(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / b.abs().max(floor)
}

/// Number of levels of `partner` compared for a request of `n_levels`.
fn compared(count: LevelCount, n_levels: usize) -> usize {
    count.clip(n_levels)
}

/// Compares oracle spectra and eigenvectors of `H0` and `H2` with the
/// closed forms for the lowest `n_levels` levels of each, and checks from
/// oracle data alone that `H2` lacks exactly the two lowest `H0` levels.
pub fn cross_validate(
    case: &CaseDefinition,
    n_levels: usize,
    policy: &GridPolicy,
) -> Result<ValidationReport> {
    if n_levels == 0 {
        return Err(Error::InvalidInput("n_levels must be at least 1".into()));
    }
    let tol = Tolerances::for_case(case);
    let floor = case.epsilon1;
    let wall_offset = policy.wall_offset.unwrap_or_else(|| case.wall_offset());
    let n2 = compared(case.bound_state_count(Partner::H2), n_levels);
    let n0 = compared(case.bound_state_count(Partner::H0), n_levels.max(n2 + 2));

    let mut runs = vec![(
        Partner::H0,
        run_partner(case, Partner::H0, n0, policy, wall_offset)?,
    )];
    if n2 > 0 {
        runs.push((
            Partner::H2,
            run_partner(case, Partner::H2, n2, policy, wall_offset)?,
        ));
    }

    let mut levels = Vec::new();
    for (partner, run) in &runs {
        let upto = match partner {
            Partner::H0 => n0.min(n_levels),
            Partner::H2 => n2,
        };
        let grid = Grid::new(run.info.lo, run.info.hi, run.info.coarse_n)?;
        let points = grid.points();
        for n in 0..upto {
            let closed = case.aux_eigenvalue(*partner, n)?;
            let pair = &run.fine[n];
            let spec = case.aux_eigenfunction(*partner, n)?;
            let samples = points
                .iter()
                .map(|&x| spec.value(x))
                .collect::<Result<Vec<_>>>()?;
            let h = grid.step();
            let norm = samples.iter().map(|v| v * v).sum::<f64>() * h;
            let v = &run.extrapolated_vectors[n];
            let vnorm = v.iter().map(|a| a * a).sum::<f64>() * h;
            let dot = samples.iter().zip(v).map(|(a, b)| a * b).sum::<f64>() * h;
            let defect = (1.0 - dot.abs() / (norm * vnorm).sqrt()).max(0.0);
            let error = relative(run.extrapolated[n], closed, floor);
            let passed = error <= tol.eigenvalue && tol.eigenvector.is_none_or(|t| defect <= t);
            levels.push(LevelComparison {
                partner: *partner,
                n,
                closed_form: closed,
                oracle: pair.value,
                oracle_extrapolated: run.extrapolated[n],
                raw_error: relative(pair.value, closed, floor),
                error,
                eigenvector_defect: defect,
                passed,
            });
        }
    }

    let mut deletion = Vec::new();
    if let [(_, r0), (_, r2)] = runs.as_slice() {
        for n in 0..n2.min(n0.saturating_sub(2)) {
            let (a, b) = (r2.extrapolated[n], r0.extrapolated[n + 2]);
            let error = relative(a, b, floor);
            deletion.push(DeletionCheck {
                n,
                h2_level: a,
                h0_level: b,
                error,
                passed: error <= tol.eigenvalue,
            });
        }
    }

    let delta_sensitivity = if case.kind().is_singular() && policy.window.is_none() {
        let half = wall_offset / 2.0;
        let mut max_change = 0.0f64;
        for (partner, run) in &runs {
            let again = run_partner(case, *partner, run.fine.len(), policy, half)?;
            for (a, b) in again.extrapolated.iter().zip(&run.extrapolated) {
                max_change = max_change.max(relative(*a, *b, floor));
            }
        }
        Some(DeltaSensitivity {
            delta: wall_offset,
            half_delta: half,
            max_change,
        })
    } else {
        None
    };

    let passed = levels.iter().all(|l| l.passed) && deletion.iter().all(|d| d.passed);
    Ok(ValidationReport {
        params: case.params,
        tolerances: tol,
        grids: runs.iter().map(|(_, r)| r.info).collect(),
        levels,
        deletion,
        delta_sensitivity,
        passed,
    })
}

#[cfg(test)]
mod tests;
