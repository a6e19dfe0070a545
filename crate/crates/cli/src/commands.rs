//! The five verbs.

use bilayer_core::fieldcases::{make_case, CaseDefinition, LevelCount, Partner};
use bilayer_core::observables::{
    current_density, default_state_grid, envelope, envelope_touch_check, probability_density,
    BilayerState, Carrier, TightBinding, TouchReport,
};
use bilayer_core::oracle::{cross_validate, GridPolicy, ValidationReport};
use bilayer_core::quadrature::{classical_window, Grid, DEFAULT_ACTION};
use bilayer_core::susy::{
    bilayer_level_count, current_to_physical_units, spectrum, to_physical_units, SpectrumResult,
    DEFAULT_GRID_N,
};
use bilayer_core::Error as CoreError;
use serde::Serialize;

use crate::config::{Format, RunConfig, Units};
use crate::error::CliError;
use crate::output::{case_meta, emit, num, to_json, with_suffix, Table};

const DEFAULT_SPECTRUM_LEVELS: usize = 6;
const DEFAULT_VALIDATE_NMAX: usize = 5;
const DEFAULT_TOUCH_NMAX: usize = 10;

fn build_case(cfg: &RunConfig) -> Result<CaseDefinition, CliError> {
    Ok(make_case(cfg.kind, cfg.raw)?)
}

fn units_name(units: Units) -> &'static str {
    match units {
        Units::Natural => "natural",
        Units::Physical => "physical",
    }
}

#[derive(Serialize)]
struct SpectrumDoc<'a> {
    case: String,
    units: &'static str,
    energy_unit: &'static str,
    length_scale_nm: Option<f64>,
    spectrum: &'a SpectrumResult,
}

fn convert_spectrum(s: &SpectrumResult, cfg: &RunConfig) -> Result<SpectrumResult, CliError> {
    let l = cfg.length_scale_m();
    let e = |v: f64| to_physical_units(v, l);
    let mut out = s.clone();
    for level in &mut out.levels {
        level.electron = e(level.electron)?;
        level.hole = e(level.hole)?;
        level.aux_level_0 = e(level.aux_level_0)?;
        level.aux_level_2 = level.aux_level_2.map(e).transpose()?;
    }
    Ok(out)
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<(), CliError> {
    let case = build_case(cfg)?;
    let natural = spectrum(&case, cfg.nmax.unwrap_or(DEFAULT_SPECTRUM_LEVELS))?;
    let (result, energy_unit) = match cfg.units {
        Units::Natural => (natural, "natural"),
        Units::Physical => (convert_spectrum(&natural, cfg)?, "eV"),
    };
    let content = match cfg.format {
        Format::Json => to_json(&SpectrumDoc {
            case: case.kind().to_string(),
            units: units_name(cfg.units),
            energy_unit,
            length_scale_nm: (cfg.units == Units::Physical).then_some(cfg.length_scale),
            spectrum: &result,
        }),
        Format::Csv => {
            let mut t = Table::new(&[
                "n",
                "E_electron",
                "E_hole",
                "multiplicity",
                "aux_E0",
                "aux_E2",
            ]);
            case_meta(&mut t, &case);
            units_meta(&mut t, cfg, energy_unit);
            t.meta("bound_levels", result.bound_count);
            for l in &result.levels {
                t.row(vec![
                    l.m.to_string(),
                    num(l.electron),
                    num(l.hole),
                    l.multiplicity.to_string(),
                    num(l.aux_level_0),
                    l.aux_level_2.map(num).unwrap_or_default(),
                ]);
            }
            t.render()
        }
    };
    emit(cfg.out.as_deref(), &content)?;
    Ok(())
}

fn units_meta(t: &mut Table, cfg: &RunConfig, energy_unit: &str) {
    t.meta("units", units_name(cfg.units));
    t.meta("energy_unit", energy_unit);
    if cfg.units == Units::Physical {
        t.meta("length_scale_nm", cfg.length_scale);
    }
}

fn state_grid(
    cfg: &RunConfig,
    case: &CaseDefinition,
    state: BilayerState,
) -> Result<Grid, CliError> {
    let n = cfg.grid_n.unwrap_or(DEFAULT_GRID_N);
    if let Some((lo, hi)) = cfg.window {
        return Ok(Grid::new(lo, hi, n)?);
    }
    let Some(delta) = cfg.delta else {
        let g = default_state_grid(case, state)?;
        return Ok(Grid::new(g.lo, g.hi, n)?);
    };
    let window = |partner, e| classical_window(case, partner, e, DEFAULT_ACTION, delta);
    let w = match state {
        BilayerState::Ground { j } => window(Partner::H0, case.aux_eigenvalue(Partner::H0, j)?)?,
        BilayerState::Excited { m } => {
            let e = case.aux_eigenvalue(Partner::H0, m + 1)?;
            window(Partner::H0, e)?.union(&window(Partner::H2, e)?)
        }
    };
    Ok(Grid::new(w.lo, w.hi, n)?)
}

#[derive(Debug, Clone, Serialize)]
struct Profile {
    label: String,
    state: BilayerState,
    x: Vec<f64>,
    rho: Vec<f64>,
    jx: Vec<f64>,
    jy: Vec<f64>,
}

#[derive(Serialize)]
struct DensitiesDoc<'a> {
    case: String,
    parameters: bilayer_core::CaseParams,
    carrier: Carrier,
    units: &'static str,
    length_scale_nm: Option<f64>,
    profiles: &'a [Profile],
}

fn states_for(levels: &[usize]) -> Vec<(String, BilayerState)> {
    let mut out = Vec::new();
    for &m in levels {
        if m == 0 {
            for j in 0..2 {
                out.push((format!("ground-j{j}"), BilayerState::Ground { j }));
            }
        } else {
            out.push((format!("m{m}"), BilayerState::Excited { m }));
        }
    }
    out
}

pub fn cmd_densities(cfg: &RunConfig, levels: &[usize], carrier: Carrier) -> Result<(), CliError> {
    let case = build_case(cfg)?;
    let count = bilayer_level_count(&case);
    let levels: Vec<usize> = if levels.is_empty() {
        (0..count.clip(2)).collect()
    } else {
        levels.to_vec()
    };
    let physical = cfg.units == Units::Physical;
    let l_nm = cfg.length_scale;
    let mut profiles = Vec::new();
    for (label, state) in states_for(&levels) {
        let grid = state_grid(cfg, &case, state)?;
        let rho = probability_density(&case, state, Some(&grid))?;
        let j = current_density(&case, state, carrier, Some(&grid))?;
        let mut p = Profile {
            label,
            state,
            x: grid.points(),
            rho: rho.rho,
            jx: j.jx,
            jy: j.jy,
        };
        if physical {
            let l = cfg.length_scale_m();
            p.x.iter_mut().for_each(|v| *v *= l_nm);
            p.rho.iter_mut().for_each(|v| *v /= l_nm);
            for v in p.jx.iter_mut().chain(p.jy.iter_mut()) {
                *v = current_to_physical_units(*v, l)?;
            }
        }
        profiles.push(p);
    }

    match cfg.format {
        Format::Json => {
            let doc = DensitiesDoc {
                case: case.kind().to_string(),
                parameters: case.params,
                carrier,
                units: units_name(cfg.units),
                length_scale_nm: physical.then_some(l_nm),
                profiles: &profiles,
            };
            emit(cfg.out.as_deref(), &to_json(&doc))?;
        }
        Format::Csv => {
            let many = profiles.len() > 1;
            let mut joined = String::new();
            for p in &profiles {
                let mut t = Table::new(&["x", "rho", "J_x", "J_y"]);
                case_meta(&mut t, &case);
                t.meta("state", &p.label);
                t.meta("carrier", format!("{carrier:?}").to_lowercase());
                t.meta("units", units_name(cfg.units));
                if physical {
                    t.meta("length_scale_nm", l_nm);
                    t.meta("columns", "x [nm], rho [1/nm], J_x [1/s], J_y [1/s]");
                }
                for i in 0..p.x.len() {
                    t.row(vec![num(p.x[i]), num(p.rho[i]), num(p.jx[i]), num(p.jy[i])]);
                }
                match (&cfg.out, many) {
                    (Some(path), true) => {
                        emit(Some(&with_suffix(path, &p.label)), &t.render())?;
                    }
                    _ => {
                        if !joined.is_empty() {
                            joined.push('\n');
                        }
                        joined.push_str(&t.render());
                    }
                }
            }
            if !joined.is_empty() {
                emit(cfg.out.as_deref(), &joined)?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct EnvelopeDoc {
    case: String,
    parameters: bilayer_core::CaseParams,
    a: f64,
    b: f64,
    c: f64,
    effective_mass_22: f64,
    group_velocity: Vec<[f64; 3]>,
    touches: Vec<TouchReport>,
}

pub fn cmd_envelope(
    cfg: &RunConfig,
    k_range: Option<(f64, f64)>,
    samples: usize,
) -> Result<(), CliError> {
    if cfg.units == Units::Physical {
        return Err(CliError::Usage(
            "envelope output is available in natural units only".into(),
        ));
    }
    if samples < 2 {
        return Err(CliError::Usage(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    let case = build_case(cfg)?;
    let env = envelope(&case)?;
    let last = match case.bound_state_count(Partner::H0) {
        LevelCount::Finite(c) => c.saturating_sub(1),
        LevelCount::Infinite => usize::MAX,
    };
    let top = cfg.nmax.unwrap_or(DEFAULT_TOUCH_NMAX).min(last.max(2));
    let mut touches = Vec::new();
    for n in 2..=top.max(2) {
        match envelope_touch_check(&case, n) {
            Ok(r) => touches.push(r),
            Err(CoreError::LevelOutOfRange { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let (lo, hi) = k_range.unwrap_or_else(|| {
        let (mut lo, mut hi) = (case.k(), case.k());
        for t in &touches {
            lo = lo.min(t.k);
            hi = hi.max(t.k);
        }
        let pad = 0.1 * (hi - lo) + 1.0;
        (lo - pad, hi + pad)
    });
    let samples: Vec<[f64; 3]> = (0..samples)
        .map(|i| {
            let k = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
            [k, env.value(k), env.group_velocity(k)]
        })
        .collect();

    let content = match cfg.format {
        Format::Json => to_json(&EnvelopeDoc {
            case: case.kind().to_string(),
            parameters: case.params,
            a: env.a,
            b: env.b,
            c: env.c,
            effective_mass_22: env.effective_mass_22(),
            group_velocity: samples,
            touches,
        }),
        Format::Csv => {
            let mut t = Table::new(&["k", "E_envelope", "v_g"]);
            case_meta(&mut t, &case);
            t.meta("a", num(env.a));
            t.meta("b", num(env.b));
            t.meta("c", num(env.c));
            t.meta("effective_mass_22", num(env.effective_mass_22()));
            for r in &touches {
                t.meta(
                    "touch",
                    format!(
                        "n={} k={} kappa={} energy={} envelope={} residual={}",
                        r.n,
                        num(r.k),
                        num(r.kappa),
                        num(r.energy),
                        num(r.envelope),
                        num(r.residual)
                    ),
                );
            }
            for s in &samples {
                t.row(s.iter().map(|v| num(*v)).collect());
            }
            t.render()
        }
    };
    emit(cfg.out.as_deref(), &content)?;
    Ok(())
}

pub fn cmd_validate(cfg: &RunConfig) -> Result<ValidationReport, CliError> {
    let case = build_case(cfg)?;
    let policy = GridPolicy {
        n: cfg.grid_n.unwrap_or(GridPolicy::default().n),
        wall_offset: cfg.delta,
        window: cfg.window,
        ..GridPolicy::default()
    };
    let report = cross_validate(
        &case,
        cfg.nmax.unwrap_or(DEFAULT_VALIDATE_NMAX) + 1,
        &policy,
    )?;
    let written = emit(cfg.out.as_deref(), &to_json(&report))?;
    if report.passed {
        Ok(report)
    } else {
        Err(CliError::Validation {
            max_error: report.max_error(),
            written,
        })
    }
}

pub struct BandsRequest {
    pub kx: (f64, f64),
    pub ky: (f64, f64),
    pub samples: usize,
    pub around_k: bool,
    pub tight_binding: TightBinding,
    pub format: Format,
    pub out: Option<std::path::PathBuf>,
}

#[derive(Serialize)]
struct BandPoint {
    kx: f64,
    ky: f64,
    bands: [f64; 4],
}

#[derive(Serialize)]
struct BandsDoc<'a> {
    tight_binding: TightBinding,
    energy_unit: &'static str,
    points: &'a [BandPoint],
}

fn axis(range: (f64, f64), samples: usize) -> Vec<f64> {
    if range.0 == range.1 {
        return vec![range.0];
    }
    (0..samples)
        .map(|i| range.0 + (range.1 - range.0) * i as f64 / (samples - 1) as f64)
        .collect()
}

pub fn cmd_bands(req: &BandsRequest) -> Result<(), CliError> {
    if req.samples < 2 {
        return Err(CliError::Usage(format!(
            "need at least 2 samples per axis, got {}",
            req.samples
        )));
    }
    let tb = req.tight_binding;
    let (ox, oy) = if req.around_k {
        tb.k_point()
    } else {
        (0.0, 0.0)
    };
    let mut points = Vec::new();
    for kx in axis(req.kx, req.samples) {
        for ky in axis(req.ky, req.samples) {
            let (kx, ky) = (kx + ox, ky + oy);
            points.push(BandPoint {
                kx,
                ky,
                bands: tb.bands(kx, ky),
            });
        }
    }
    let content = match req.format {
        Format::Json => to_json(&BandsDoc {
            tight_binding: tb,
            energy_unit: "eV",
            points: &points,
        }),
        Format::Csv => {
            let mut t = Table::new(&["kx", "ky", "E1", "E2", "E3", "E4"]);
            t.meta("gamma0_eV", tb.gamma0);
            t.meta("gamma1_eV", tb.gamma1);
            t.meta("lattice", tb.lattice);
            t.meta("energy_unit", "eV");
            for p in &points {
                let mut row = vec![num(p.kx), num(p.ky)];
                row.extend(p.bands.iter().map(|v| num(*v)));
                t.row(row);
            }
            t.render()
        }
    };
    emit(req.out.as_deref(), &content)?;
    Ok(())
}
