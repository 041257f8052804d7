//! Command executors. Each returns a table for CSV, a JSON result value, and
//! the per-item numerical failures.

use aetrans::bie::{self, BoundaryCurve, ModeLocalization, ScanMinimum};
use aetrans::eigfun::{self, build_eigenpair, localization_ratio, Field, LocalizationReport};
use aetrans::radial::{find_eigenvalue, EigRecord, ModeIndex};
use aetrans::specfun::{BesselOrder, ZeroKind, ZeroTable};
use aetrans::NondimParams;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Command, FieldChoice, RunConfig, ZeroChoice};
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub item: String,
    pub error: String,
}

pub struct Report {
    pub params: Option<NondimParams>,
    /// Extra `#` lines after the provenance line.
    pub notes: Vec<String>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub results: Value,
    pub failures: Vec<Failure>,
}

/// Shortest round-trip text; scientific notation outside [1e-4, 1e6).
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".into()
    } else if (1e-4..1e6).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable result")
}

pub fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.command {
        Command::Zeros => zeros(cfg),
        Command::Eig => eig(cfg),
        Command::Localize => localize(cfg),
        Command::Field => field(cfg),
        Command::BieScan => bie_scan(cfg),
        Command::BieField => bie_field(cfg),
    }
}

fn zeros(cfg: &RunConfig) -> Result<Report, CliError> {
    let nu = BesselOrder::new(RunConfig::require(cfg.nu, "nu")?)?;
    let count = cfg.count.unwrap_or(5);
    if count == 0 {
        return Err(CliError::Validation("count must be positive".into()));
    }
    let kind = match cfg.kind.unwrap_or(ZeroChoice::J) {
        ZeroChoice::J => ZeroKind::ZeroOfJ,
        ZeroChoice::Jprime => ZeroKind::ZeroOfJPrime,
    };
    let table = ZeroTable::new(nu, kind, count)?;
    let rows = table.zeros.iter().enumerate().map(|(i, z)| vec![(i + 1).to_string(), num(*z)]).collect();
    Ok(Report {
        params: None,
        notes: vec![format!("nu={} kind={:?}", table.nu, table.kind)],
        header: vec!["s", "zero"],
        rows,
        results: to_value(&table),
        failures: Vec::new(),
    })
}

type PerMode<T> = Vec<(u32, Result<T, String>)>;

fn mode_records(cfg: &RunConfig, p: &NondimParams, dim: u32) -> Result<PerMode<EigRecord>, CliError> {
    let s = cfg.s();
    let modes = cfg.modes()?;
    for &m in &modes {
        ModeIndex::new(dim, m, s)?;
    }
    p.require_tau_below_one()?;
    Ok(modes
        .par_iter()
        .map(|&m| (m, find_eigenvalue(ModeIndex { dim, m, s }, p).map_err(|e| e.to_string())))
        .collect())
}

fn split_failures<T>(items: PerMode<T>) -> (Vec<T>, Vec<Failure>) {
    let mut ok = Vec::new();
    let mut failures = Vec::new();
    for (m, r) in items {
        match r {
            Ok(v) => ok.push(v),
            Err(error) => failures.push(Failure { item: format!("m={m}"), error }),
        }
    }
    (ok, failures)
}

fn eig(cfg: &RunConfig) -> Result<Report, CliError> {
    let dim = cfg.dim()?;
    let p = cfg.params(dim)?;
    let (recs, failures) = split_failures(mode_records(cfg, &p, dim)?);
    let rows = recs
        .iter()
        .map(|r| {
            vec![
                r.mode.dim.to_string(),
                r.mode.m.to_string(),
                r.mode.s.to_string(),
                num(r.k),
                num(r.bracket.0),
                num(r.bracket.1),
                num(r.f_residual),
                num(r.rela1_residual),
                r.crossings.to_string(),
            ]
        })
        .collect();
    Ok(Report {
        params: Some(p),
        notes: Vec::new(),
        header: vec!["dim", "m", "s", "k", "bracket_lo", "bracket_hi", "f_residual", "rela1_residual", "crossings"],
        rows,
        results: to_value(&recs),
        failures,
    })
}

fn fields_of(choice: Option<FieldChoice>) -> Vec<Field> {
    match choice.unwrap_or(FieldChoice::Both) {
        FieldChoice::Acoustic => vec![Field::Acoustic],
        FieldChoice::Elastic => vec![Field::Elastic],
        FieldChoice::Both => vec![Field::Acoustic, Field::Elastic],
    }
}

fn field_name(f: Field) -> &'static str {
    match f {
        Field::Acoustic => "acoustic",
        Field::Elastic => "elastic",
    }
}

fn localize(cfg: &RunConfig) -> Result<Report, CliError> {
    let dim = cfg.dim()?;
    let p = cfg.params(dim)?;
    let eps = cfg.eps()?;
    let fields = fields_of(cfg.field);
    let recs = mode_records(cfg, &p, dim)?;
    let per_mode: PerMode<Vec<LocalizationReport>> = recs
        .into_par_iter()
        .map(|(m, rec)| {
            let out = rec.and_then(|rec| {
                let pair = build_eigenpair(&rec, Complex64::new(1.0, 0.0), 0).map_err(|e| e.to_string())?;
                let mut reps = Vec::new();
                for &e in &eps {
                    for &f in &fields {
                        reps.push(localization_ratio(&pair, e, f).map_err(|e| e.to_string())?);
                    }
                }
                Ok(reps)
            });
            (m, out)
        })
        .collect();
    let (reports, failures) = split_failures(per_mode);
    let reports: Vec<LocalizationReport> = reports.into_iter().flatten().collect();
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.mode.dim.to_string(),
                r.mode.m.to_string(),
                r.mode.s.to_string(),
                num(r.k),
                num(r.eps),
                field_name(r.field).to_string(),
                num(r.ratio),
                num(r.envelope),
            ]
        })
        .collect();
    Ok(Report {
        params: Some(p),
        notes: Vec::new(),
        header: vec!["dim", "m", "s", "k", "eps", "field", "ratio", "envelope"],
        rows,
        results: to_value(&reports),
        failures,
    })
}

fn grid_points(lo: [f64; 2], hi: [f64; 2], n: usize) -> Vec<[f64; 2]> {
    let at = |a: f64, b: f64, i: usize| if n == 1 { 0.5 * (a + b) } else { a + (b - a) * i as f64 / (n - 1) as f64 };
    (0..n).flat_map(|j| (0..n).map(move |i| [at(lo[0], hi[0], i), at(lo[1], hi[1], j)])).collect()
}

fn grid_size(cfg: &RunConfig) -> Result<usize, CliError> {
    let g = cfg.grid.unwrap_or(41);
    if g < 2 {
        return Err(CliError::Validation(format!("grid must have at least 2 points per axis, got {g}")));
    }
    Ok(g)
}

fn field(cfg: &RunConfig) -> Result<Report, CliError> {
    let dim = cfg.dim()?;
    let p = cfg.params(dim)?;
    let modes = cfg.modes()?;
    let [m] = modes[..] else {
        return Err(CliError::Validation(format!("field needs a single mode order, got {} orders", modes.len())));
    };
    let rec = find_eigenvalue(ModeIndex::new(dim, m, cfg.s())?, &p)?;
    let pair = build_eigenpair(&rec, Complex64::new(1.0, 0.0), 0)?;
    let pts: Vec<[f64; 2]> =
        grid_points([-1.0, -1.0], [1.0, 1.0], grid_size(cfg)?).into_iter().filter(|x| x[0].hypot(x[1]) <= 1.0).collect();
    let mut rows = Vec::with_capacity(pts.len());
    let mut samples = Vec::with_capacity(pts.len());
    for x in &pts {
        let point: Vec<f64> = if dim == 2 { x.to_vec() } else { vec![x[0], x[1], 0.0] };
        let (u, v) = eigfun::eval_fields(&pair, &point)?;
        let au = u.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let mut row: Vec<String> = point.iter().map(|c| num(*c)).collect();
        row.extend([num(v.re), num(v.im), num(au)]);
        rows.push(row);
        samples.push(json!({"x": point, "re_v": v.re, "im_v": v.im, "abs_u": au}));
    }
    let header = if dim == 2 { vec!["x", "y", "re_v", "im_v", "abs_u"] } else { vec!["x", "y", "z", "re_v", "im_v", "abs_u"] };
    Ok(Report {
        params: Some(p),
        notes: vec![format!("dim={dim} m={m} s={} k={}", rec.mode.s, rec.k)],
        header,
        rows,
        results: json!({"record": rec, "samples": samples}),
        failures: Vec::new(),
    })
}

fn curve(cfg: &RunConfig) -> Result<BoundaryCurve, CliError> {
    let n = cfg.n.unwrap_or(128);
    Ok(BoundaryCurve::new(cfg.curve_kind()?, n)?)
}

fn bie_scan(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = cfg.params(2)?;
    let c = curve(cfg)?;
    let lo = RunConfig::require(cfg.k_min, "k_min")?;
    let hi = RunConfig::require(cfg.k_max, "k_max")?;
    let steps = cfg.steps.unwrap_or(101);
    let scan = bie::sigma_min_scan(&c, &p, (lo, hi), steps)?;
    let eps = match &cfg.eps {
        Some(_) => Some(cfg.eps()?),
        None => None,
    };
    let mut failures = Vec::new();
    let mut local: Vec<Vec<ModeLocalization>> = Vec::new();
    if let Some(eps) = &eps {
        for m in &scan.minima {
            let mut row = Vec::new();
            for &e in eps {
                match bie::mode_localization(&c, m.k, &p, e, 16) {
                    Ok(r) => row.push(r),
                    Err(err) => failures.push(Failure { item: format!("k={}", m.k), error: err.to_string() }),
                }
            }
            local.push(row);
        }
    }
    let notes = vec![format!("curve={} n={} k_range={}:{} steps={steps}", cfg.curve.as_deref().unwrap_or(""), c.n, lo, hi)];
    let (header, rows) = if cfg.samples.unwrap_or(false) {
        let rows = scan.k_grid.iter().zip(&scan.sigma_min).map(|(k, s)| vec![num(*k), num(*s)]).collect();
        (vec!["k", "sigma_min"], rows)
    } else if eps.is_some() {
        let mut rows = Vec::new();
        for (m, locs) in scan.minima.iter().zip(&local) {
            for l in locs {
                let mut row = minimum_row(m);
                row.extend([num(l.eps), num(l.acoustic_ratio), num(l.elastic_ratio)]);
                rows.push(row);
            }
        }
        (vec!["k", "sigma_min", "sigma_max", "refined", "eps", "acoustic_ratio", "elastic_ratio"], rows)
    } else {
        (vec!["k", "sigma_min", "sigma_max", "refined"], scan.minima.iter().map(minimum_row).collect())
    };
    let mut results = json!({"scan": scan});
    if eps.is_some() {
        results["localization"] = to_value(&local);
    }
    Ok(Report { params: Some(p), notes, header, rows, results, failures })
}

fn minimum_row(m: &ScanMinimum) -> Vec<String> {
    vec![num(m.k), num(m.sigma_min), num(m.sigma_max), m.refined.to_string()]
}

fn bie_field(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = cfg.params(2)?;
    let c = curve(cfg)?;
    let k = RunConfig::require(cfg.k, "k")?;
    let a = bie::assemble_block(&c, k, &p)?;
    let triplet = bie::smallest_singular(&a.matrix)?;
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for x in &c.x {
        for i in 0..2 {
            lo[i] = lo[i].min(x[i]);
            hi[i] = hi[i].max(x[i]);
        }
    }
    let pts: Vec<[f64; 2]> = grid_points(lo, hi, grid_size(cfg)?).into_iter().filter(|x| c.contains(*x)).collect();
    let f = bie::reconstruct_fields(&c, k, &p, &triplet.right, &pts)?;
    let mut rows = Vec::with_capacity(pts.len());
    let mut samples = Vec::with_capacity(pts.len());
    for i in 0..pts.len() {
        let au = (f.u[i][0].norm_sqr() + f.u[i][1].norm_sqr()).sqrt();
        let v = f.v[i];
        rows.push(vec![num(pts[i][0]), num(pts[i][1]), num(v.re), num(v.im), num(au)]);
        samples.push(json!({"x": pts[i], "re_v": v.re, "im_v": v.im, "abs_u": au, "near_boundary": f.near_boundary[i]}));
    }
    let near = f.near_boundary.iter().filter(|&&b| b).count();
    Ok(Report {
        params: Some(p),
        notes: vec![format!(
            "curve={} n={} k={k} sigma_min={} near_boundary_points={near}",
            cfg.curve.as_deref().unwrap_or(""),
            c.n,
            num(triplet.sigma)
        )],
        header: vec!["x", "y", "re_v", "im_v", "abs_u"],
        rows,
        results: json!({"k": k, "sigma_min": triplet.sigma, "samples": samples}),
        failures: Vec::new(),
    })
}
