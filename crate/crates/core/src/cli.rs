//! Configuration, reference data and report drivers behind the `cwf` binary.

use crate::basis::ConfigurationBasis;
use crate::cwf_ode::{
    scan_energies, solve_ion, write_scan_csv, CuspLaw, Equation, IonSolution, Method, ShootingSolver, SolverConfig,
    ThomasSolver,
};
use crate::discrete_well::{
    classify_symmetry, convergence_table, exact_sector, exact_spectrum, symmetry_census, write_spectrum_csv,
    PartitionKind, Sector, WellSpec,
};
use crate::error::{CwfError, Result};
use crate::surface_integrals::{fmt_sig, write_matrices_csv, ClosedFormSurface};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

/// One row of the published ground-state table for He-like ions (hartree).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    pub z: u32,
    pub symbol: &'static str,
    /// Hartree–Fock limit.
    pub hf: Option<f64>,
    /// Weight-function method with 1..4 configurations.
    pub cwf: [f64; 4],
    /// Configuration interaction.
    pub ci: f64,
    /// Hylleraas-type variational result.
    pub hyl: Option<f64>,
}

#[rustfmt::skip]
const ROWS: [ReferenceRow; 18] = [
    ReferenceRow { z: 1, symbol: "H-", hf: None, cwf: [-0.498461, -0.526779, -0.527133, -0.527790], ci: -0.5277303, hyl: None },
    ReferenceRow { z: 2, symbol: "He", hf: Some(-2.86171), cwf: [-2.879388, -2.900539, -2.902257, -2.903756], ci: -2.9037236, hyl: Some(-2.903724) },
    ReferenceRow { z: 3, symbol: "Li+", hf: Some(-7.23633), cwf: [-7.256393, -7.276105, -7.278158, -7.279468], ci: -7.279819, hyl: Some(-7.279913) },
    ReferenceRow { z: 4, symbol: "Be2+", hf: Some(-13.61130), cwf: [-13.632404, -13.651487, -13.653685, -13.655578], ci: -13.655551, hyl: Some(-13.655566) },
    ReferenceRow { z: 5, symbol: "B3+", hf: Some(-21.98607), cwf: [-22.008016, -22.026751, -22.029031, -22.031332], ci: -22.030875, hyl: Some(-22.030972) },
    ReferenceRow { z: 6, symbol: "C4+", hf: Some(-32.36137), cwf: [-32.383429, -32.401946, -32.404281, -32.407322], ci: -32.406070, hyl: Some(-32.406247) },
    ReferenceRow { z: 7, symbol: "N5+", hf: Some(-44.73618), cwf: [-44.758728, -44.777098, -44.779475, -44.781458], ci: -44.781141, hyl: Some(-44.781445) },
    ReferenceRow { z: 8, symbol: "O6+", hf: Some(-59.11159), cwf: [-59.133956, -59.152223, -59.154631, -59.156576], ci: -59.156222, hyl: Some(-59.156595) },
    ReferenceRow { z: 9, symbol: "F7+", hf: Some(-75.48702), cwf: [-75.509136, -75.527329, -75.529764, -75.532249], ci: -75.531401, hyl: Some(-75.531712) },
    ReferenceRow { z: 10, symbol: "Ne8+", hf: Some(-93.86174), cwf: [-93.884283, -93.902421, -93.904878, -93.910240], ci: -93.906452, hyl: Some(-93.906807) },
    ReferenceRow { z: 11, symbol: "Na9+", hf: None, cwf: [-114.259406, -114.277503, -114.279981, -114.283217], ci: -114.28165, hyl: None },
    ReferenceRow { z: 12, symbol: "Mg10+", hf: None, cwf: [-136.634511, -136.652577, -136.655073, -136.659456], ci: -136.65672, hyl: None },
    ReferenceRow { z: 13, symbol: "Al11+", hf: None, cwf: [-161.009602, -161.027646, -161.030158, -161.044494], ci: -161.03180, hyl: None },
    ReferenceRow { z: 14, symbol: "Si12+", hf: None, cwf: [-187.384681, -187.402709, -187.405237, -187.412848], ci: -187.40687, hyl: None },
    ReferenceRow { z: 15, symbol: "P13+", hf: None, cwf: [-215.759753, -215.777769, -215.780312, -215.78715], ci: -215.78191, hyl: None },
    ReferenceRow { z: 16, symbol: "S14+", hf: None, cwf: [-246.134816, -246.152826, -246.155383, -246.159333], ci: -246.15697, hyl: None },
    ReferenceRow { z: 17, symbol: "Cl15+", hf: None, cwf: [-278.509875, -278.527880, -278.530450, -278.535628], ci: -278.53201, hyl: None },
    ReferenceRow { z: 18, symbol: "Ar16+", hf: None, cwf: [-312.884928, -312.902932, -312.905515, -312.913206], ci: -312.90704, hyl: None },
];

/// Immutable access to the embedded reference rows.
pub struct ReferenceTable;

impl ReferenceTable {
    pub fn rows() -> &'static [ReferenceRow] {
        &ROWS
    }

    pub fn by_z(z: u32) -> Option<&'static ReferenceRow> {
        ROWS.iter().find(|r| r.z == z)
    }

    /// Accepts `He`, `Li+`, `Ne8+`, `H-` (case-insensitive) or a bare charge.
    pub fn lookup(ion: &str) -> Result<&'static ReferenceRow> {
        let ion = ion.trim();
        if let Ok(z) = ion.parse::<u32>() {
            return Self::by_z(z).ok_or_else(|| CwfError::Config(format!("no ion with Z = {z}")));
        }
        ROWS.iter()
            .find(|r| r.symbol.eq_ignore_ascii_case(ion))
            .ok_or_else(|| CwfError::Config(format!("unknown ion '{ion}'")))
    }
}

/// Every tunable of the drivers, read from `key = value` lines.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub z: u32,
    pub n_f: usize,
    pub method: Method,
    pub cusp: CuspLaw,
    pub solver: SolverConfig,
    pub chi_stride: usize,
    pub matrices_p: Vec<f64>,
    pub well_n: usize,
    pub well_points: usize,
    pub well_q: f64,
    /// Regularizer in units of the grid step.
    pub well_lambda: f64,
    pub well_kinds: Vec<PartitionKind>,
    pub well_k_min: usize,
    pub well_k_max: usize,
    pub well_sector: Sector,
    pub well_states: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            z: 2,
            n_f: 1,
            method: Method::Shooting,
            cusp: CuspLaw::EffectiveCharge,
            solver: SolverConfig::default(),
            chi_stride: 50,
            matrices_p: vec![0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0],
            well_n: 3,
            well_points: 8,
            well_q: 1.0,
            well_lambda: 1.0,
            well_kinds: vec![PartitionKind::Total, PartitionKind::First, PartitionKind::Pair],
            well_k_min: 2,
            well_k_max: 8,
            well_sector: Sector::All,
            well_states: 1,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| CwfError::Config(format!("bad value '{value}' for '{key}'")))
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(|v| v.trim())
        .filter(|v| !v.is_empty())
        .map(|v| parse(key, v))
        .collect()
}

impl RunConfig {
    /// Apply one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim();
        let value = value.trim();
        match key {
            "ion" => self.z = ReferenceTable::lookup(value)?.z,
            "z" => self.z = parse(key, value)?,
            "n_f" | "nf" => self.n_f = parse(key, value)?,
            "solver" | "method" => self.method = value.parse()?,
            "cusp" => self.cusp = value.parse()?,
            "p_min" => self.solver.p_min = parse(key, value)?,
            "p_max" => self.solver.p_max = parse(key, value)?,
            "step" => self.solver.step = parse(key, value)?,
            "p_match" => self.solver.p_match = parse(key, value)?,
            "renorm_every" => self.solver.renorm_every = parse(key, value)?,
            "thomas_step" => self.solver.thomas_step = parse(key, value)?,
            "scan_lo" => self.solver.scan_lo = parse(key, value)?,
            "scan_hi" => self.solver.scan_hi = parse(key, value)?,
            "scan_step" => self.solver.scan_step = parse(key, value)?,
            "tol" => self.solver.tol = parse(key, value)?,
            "chi_stride" => self.chi_stride = parse(key, value)?,
            "matrices_p" => self.matrices_p = parse_list(key, value)?,
            "well_n" => self.well_n = parse(key, value)?,
            "well_points" => self.well_points = parse(key, value)?,
            "well_q" => self.well_q = parse(key, value)?,
            "well_lambda" => self.well_lambda = parse(key, value)?,
            "well_kinds" => {
                self.well_kinds = value
                    .split(',')
                    .map(|v| v.trim().parse())
                    .collect::<Result<Vec<_>>>()?
            }
            "well_k_min" => self.well_k_min = parse(key, value)?,
            "well_k_max" => self.well_k_max = parse(key, value)?,
            "well_sector" => self.well_sector = value.parse()?,
            "well_states" => self.well_states = parse(key, value)?,
            _ => return Err(CwfError::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    /// Apply `key=value` (or `key value`) text; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CwfError::Config(format!("line {}: expected key = value", lineno + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = RunConfig::default();
        cfg.apply_text(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Apply a `key=value` override from the command line.
    pub fn apply_override(&mut self, assignment: &str) -> Result<()> {
        let (k, v) = assignment
            .split_once('=')
            .ok_or_else(|| CwfError::Config(format!("override '{assignment}' is not key=value")))?;
        self.set(k, v)
    }

    pub fn validate(&self) -> Result<()> {
        if ReferenceTable::by_z(self.z).is_none() {
            return Err(CwfError::Config(format!("Z must be in 1..=18, got {}", self.z)));
        }
        if !(1..=4).contains(&self.n_f) {
            return Err(CwfError::Config(format!("n_f must be in 1..=4, got {}", self.n_f)));
        }
        self.solver.validate().map_err(|e| match e {
            CwfError::Config(_) => e,
            other => CwfError::Config(other.to_string()),
        })?;
        self.well_spec()?;
        if self.well_k_min == 0 || self.well_k_min > self.well_k_max || self.well_k_max > self.well_points {
            return Err(CwfError::Config("need 1 <= well_k_min <= well_k_max <= well_points".into()));
        }
        if self.chi_stride == 0 || self.well_states == 0 {
            return Err(CwfError::Config("chi_stride and well_states must be positive".into()));
        }
        if self.matrices_p.iter().any(|p| !(*p > 0.0)) {
            return Err(CwfError::Config("matrices_p entries must be positive".into()));
        }
        Ok(())
    }

    pub fn equation(&self) -> Equation {
        Equation {
            cusp: self.cusp,
            ..Equation::ion(self.z as f64)
        }
    }

    pub fn well_spec(&self) -> Result<WellSpec> {
        let mut spec = WellSpec::new(self.well_n, self.well_points)?;
        spec.q = self.well_q;
        spec.lambda = self.well_lambda * spec.step();
        spec.validate()?;
        Ok(spec)
    }
}

/// Computed energy next to the reference columns.
#[derive(Debug, Clone)]
pub struct IonReport {
    pub reference: ReferenceRow,
    pub n_f: usize,
    pub solution: IonSolution,
}

impl IonReport {
    pub fn energy_au(&self) -> f64 {
        self.solution.energy_au()
    }

    pub fn table_value(&self) -> f64 {
        self.reference.cwf[self.n_f - 1]
    }

    pub fn delta(&self) -> f64 {
        self.energy_au() - self.table_value()
    }
}

pub fn run_ion(config: &RunConfig) -> Result<IonReport> {
    run_ion_with(config, false)
}

fn run_ion_with(config: &RunConfig, with_chi: bool) -> Result<IonReport> {
    config.validate()?;
    let reference = *ReferenceTable::by_z(config.z).expect("validated");
    let basis = ConfigurationBasis::new(config.n_f)?;
    let model = ClosedFormSurface::new(&basis);
    let solution = solve_ion(&model, config.equation(), config.method, &config.solver, with_chi)?;
    Ok(IonReport {
        reference,
        n_f: config.n_f,
        solution,
    })
}

pub fn ion_report_header() -> String {
    format!(
        "{:<6} {:>3} {:>3} {:<9} {:>16} {:>14} {:>14} {:>11} {:>12} {:>12} {:>12}",
        "ion", "Z", "n_f", "solver", "E_scaled", "E_au", "table", "delta", "HF", "CI", "Hyl"
    )
}

pub fn format_ion_report(r: &IonReport) -> String {
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.7}"));
    format!(
        "{:<6} {:>3} {:>3} {:<9} {:>16.10} {:>14.7} {:>14.6} {:>11.2e} {:>12} {:>12} {:>12}",
        r.reference.symbol,
        r.reference.z,
        r.n_f,
        r.solution.method.to_string(),
        r.solution.energy,
        r.energy_au(),
        r.table_value(),
        r.delta(),
        opt(r.reference.hf),
        format!("{:.7}", r.reference.ci),
        opt(r.reference.hyl)
    )
}

/// Reports for every requested `(Z, n_f)`, in input order.
pub fn run_ion_table(config: &RunConfig, zs: &[u32], n_fs: &[usize]) -> Result<Vec<IonReport>> {
    let jobs: Vec<(u32, usize)> = zs.iter().flat_map(|&z| n_fs.iter().map(move |&n| (z, n))).collect();
    jobs.par_iter()
        .map(|&(z, n_f)| {
            let cfg = RunConfig {
                z,
                n_f,
                ..config.clone()
            };
            run_ion(&cfg)
        })
        .collect()
}

pub fn format_ion_table(reports: &[IonReport]) -> String {
    let mut out = ion_report_header();
    out.push('\n');
    for r in reports {
        out.push_str(&format_ion_report(r));
        out.push('\n');
    }
    out
}

/// Weight functions of the configured ion as CSV (`χ_1(p_min) = 1`).
pub fn export_chi<W: Write>(config: &RunConfig, out: &mut W) -> Result<IonReport> {
    let mut report = run_ion_with(config, true)?;
    let chi = report
        .solution
        .chi
        .take()
        .ok_or(CwfError::ZeroNorm)?
        .normalized_at_start()?;
    chi.write_csv(out, config.chi_stride)?;
    report.solution.chi = Some(chi);
    Ok(report)
}

/// Matching determinant over the configured scan bracket as CSV.
pub fn export_scan<W: Write>(config: &RunConfig, out: &mut W) -> Result<()> {
    config.validate()?;
    let model = ClosedFormSurface::new(&ConfigurationBasis::new(config.n_f)?);
    let s = &config.solver;
    let scan = match config.method {
        Method::Shooting => {
            let solver = ShootingSolver::new(&model, config.equation(), s.clone())?;
            scan_energies(&solver, s.scan_lo, s.scan_hi, s.scan_step)?
        }
        Method::Thomas => {
            let solver = ThomasSolver::new(&model, config.equation(), s.clone())?;
            scan_energies(&solver, s.scan_lo, s.scan_hi, s.scan_step)?
        }
    };
    write_scan_csv(out, &scan)
}

/// Full well spectrum with symmetry labels as CSV.
pub fn export_spectrum<W: Write>(config: &RunConfig, out: &mut W) -> Result<()> {
    config.validate()?;
    let spec = config.well_spec()?;
    write_spectrum_csv(out, &spec, &exact_spectrum(&spec))
}

pub fn export_matrices<W: Write>(config: &RunConfig, out: &mut W) -> Result<()> {
    config.validate()?;
    let basis = ConfigurationBasis::new(config.n_f)?;
    write_matrices_csv(out, &ClosedFormSurface::new(&basis), &config.matrices_p)
}

/// Exact / CI / masked-solver comparison over the configured `k` range.
pub fn run_well(config: &RunConfig) -> Result<String> {
    config.validate()?;
    let spec = config.well_spec()?;
    let sector = if spec.particles == 2 && config.well_sector == Sector::All {
        Sector::Antisymmetric
    } else {
        config.well_sector
    };
    let kinds: Vec<PartitionKind> = config
        .well_kinds
        .iter()
        .copied()
        .filter(|k| spec.particles == 3 || *k != PartitionKind::First)
        .collect();
    let exact = match sector {
        Sector::All => exact_spectrum(&spec).values,
        s => exact_sector(&spec, s)?,
    };
    let ks: Vec<usize> = (config.well_k_min..=config.well_k_max).collect();
    let rows = convergence_table(&spec, &kinds, &ks, sector, config.well_states)?;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "well: n={} N={} q={} lambda={} dx sector={:?} order={}",
        spec.particles,
        spec.points,
        spec.q,
        config.well_lambda,
        sector,
        spec.order()
    );
    if spec.particles == 3 && sector == Sector::All {
        let full = exact_spectrum(&spec);
        let (s, a, m) = symmetry_census(&spec, &full);
        let ground = classify_symmetry(&full.vectors.column(0).into_owned(), &spec);
        let _ = writeln!(out, "symmetry census: symmetric={s} antisymmetric={a} mixed={m}; ground {ground:?}");
    }
    for state in 0..config.well_states.min(exact.len()) {
        let _ = writeln!(out, "state {state}: exact = {:.9}", exact[state]);
        let mut header = format!("{:>3} {:>24}", "k", "CI");
        for kind in &kinds {
            let _ = write!(header, " {:>24}", format!("CWF {}", kind.label()));
        }
        let _ = writeln!(out, "{header}");
        for row in &rows {
            let cell = |v: Option<&f64>| match v {
                Some(e) => format!("{:.9} ({:.1e})", e, (e - exact[state]) / exact[state].abs()),
                None => "-".to_string(),
            };
            let mut line = format!("{:>3} {:>24}", row.k, cell(row.ci.get(state)));
            for (_, vals, _) in &row.cwf {
                let _ = write!(line, " {:>24}", cell(vals.get(state)));
            }
            let _ = writeln!(out, "{line}");
        }
    }
    let mut dims = format!("{:>3} {:>8}", "k", "dim CI");
    for kind in &kinds {
        let _ = write!(dims, " {:>10}", format!("dim {}", kind.label()));
    }
    let _ = writeln!(out, "{dims}");
    for row in &rows {
        let ci_dim = crate::discrete_well::configuration_vectors(&spec, row.k, sector)?.ncols();
        let mut line = format!("{:>3} {:>8}", row.k, ci_dim);
        for (_, _, d) in &row.cwf {
            let _ = write!(line, " {:>10}", d);
        }
        let _ = writeln!(out, "{line}");
    }
    Ok(out)
}

/// Exit status for an error: 2 for non-convergence, 3 for configuration problems.
pub fn exit_code(e: &CwfError) -> i32 {
    match e {
        CwfError::NoEigenvalue { .. } | CwfError::RankDeficient | CwfError::PivotFailure { .. } => 2,
        CwfError::Config(_) | CwfError::MatchOutsideMesh { .. } | CwfError::InvalidBasis { .. } => 3,
        _ => 1,
    }
}

/// Parse a comma-separated ion list (`He,Li+,10`); `all` gives Z = 1..18.
pub fn parse_ions(list: &str) -> Result<Vec<u32>> {
    if list.trim() == "all" {
        return Ok(ROWS.iter().map(|r| r.z).collect());
    }
    list.split(',')
        .map(|s| ReferenceTable::lookup(s).map(|r| r.z))
        .collect()
}

pub fn parse_n_fs(list: &str) -> Result<Vec<usize>> {
    let v: Vec<usize> = parse_list("n_f", list)?;
    if v.is_empty() || v.iter().any(|n| !(1..=4).contains(n)) {
        return Err(CwfError::Config(format!("n_f list '{list}' must hold values in 1..=4")));
    }
    Ok(v)
}

/// Settings echo used at the top of reports.
pub fn describe(config: &RunConfig) -> String {
    let mut m = BTreeMap::new();
    m.insert("p_min", fmt_sig(config.solver.p_min));
    m.insert("p_max", fmt_sig(config.solver.p_max));
    m.insert("p_match", fmt_sig(config.solver.p_match));
    m.insert("step", fmt_sig(config.solver.step));
    m.insert("thomas_step", fmt_sig(config.solver.thomas_step));
    m.insert("solver", config.method.to_string());
    m.into_iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}
