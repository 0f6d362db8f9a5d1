//! Commands behind the `chanbound` binary: channel and state analysis, closed-form
//! tables and the channel zoo.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use chanbound_core::bounds::{
    assemble_report, da_lower, dd_lower, deb_lower, BoundReport, CertInput, EbSource,
    EntropicInputs, Estimate,
};
use chanbound_core::channel::{
    completely_depolarizing, depolarizing, erasure, identity_embedding, KrausChannel,
};
use chanbound_core::entropy::{binary_entropy, ic_lower_bound, mutual_information, LogBase};
use chanbound_core::io::{channel_to_json, encode_matrix, Rows};
use chanbound_core::linalg::{DensityMatrix, PureState};
use chanbound_core::optimize::{
    maximize_channel_ic, maximize_channel_l, minimize_channel_ic, ree_ppt_lower,
    trace_dist_to_ppt, Certificate, OptimizerConfig,
};
use serde::Serialize;

pub mod table;

pub use table::Table;

/// Largest total dimension for which the PPT relative-entropy search runs by default.
pub const AUTO_REE_MAX_DIM: usize = 20;
/// Largest total dimension for which the trace-distance oracle is reported.
pub const ORACLE_MAX_DIM: usize = 6;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(#[from] chanbound_core::Error),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("optimizer did not converge: {0}")]
    NotConverged(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Argument(_) => 2,
            CliError::NotConverged(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReeMode {
    /// Run when the analysed state has total dimension at most [`AUTO_REE_MAX_DIM`].
    #[default]
    Auto,
    On,
    Off,
}

impl ReeMode {
    fn enabled(self, n: usize) -> bool {
        match self {
            ReeMode::Auto => n <= AUTO_REE_MAX_DIM,
            ReeMode::On => true,
            ReeMode::Off => false,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub optimizer: OptimizerConfig,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub strict: bool,
    pub ree: ReeMode,
}

impl RunConfig {
    pub fn base(&self) -> LogBase {
        self.optimizer.base
    }
}

/// A bound report plus the witness matrices its entries refer to by name.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportFile {
    #[serde(flatten)]
    pub report: BoundReport,
    pub converged: bool,
    pub witnesses: BTreeMap<String, Rows>,
}

impl ReportFile {
    fn new(report: BoundReport) -> Self {
        Self { report, converged: true, witnesses: BTreeMap::new() }
    }

    fn note(&mut self, name: &str, cert: &Certificate) {
        self.report.estimates.push(Estimate {
            name: name.to_string(),
            value: cert.value,
            converged: cert.converged,
        });
        self.converged &= cert.converged;
        if let Some(state) = cert.witness_state() {
            self.witnesses.insert(name.to_string(), encode_matrix(state.matrix()));
        }
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["target", "formula", "value", "unclamped", "d", "witness", "inputs"]);
        for e in &self.report.entries {
            let inputs: Vec<String> = e.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            t.push_text(vec![
                serde_json::to_value(e.target).unwrap().as_str().unwrap_or_default().to_string(),
                e.formula.tag().to_string(),
                e.value.to_string(),
                e.unclamped.to_string(),
                e.d.to_string(),
                e.witness.clone(),
                inputs.join(";"),
            ]);
        }
        t
    }
}

fn cert_input(cert: &Certificate, name: &str) -> CertInput {
    CertInput::new(cert.value, name)
}

/// `(Phi (x) Id)` applied to the maximally entangled state, on `B (x) R`.
pub fn choi_state(phi: &KrausChannel) -> CliResult<DensityMatrix> {
    let d = phi.d_in();
    let me = DensityMatrix::from_pure(&PureState::maximally_entangled(d));
    Ok(phi.tensor_with_identity(d).apply(&me)?.set_dims((phi.d_out(), d))?)
}

pub fn analyze_channel(phi: &KrausChannel, cfg: &RunConfig, subject: &str) -> CliResult<ReportFile> {
    let opt = &cfg.optimizer;
    let ic = maximize_channel_ic(phi, opt)?;
    let min_ic = minimize_channel_ic(phi, opt)?;
    let l = maximize_channel_l(phi, opt)?;
    let choi = choi_state(phi)?;
    let er = if cfg.ree.enabled(choi.dim()) { Some(ree_ppt_lower(&choi, opt)?) } else { None };

    let inputs = EntropicInputs {
        d: phi.min_dim(),
        channel_ic: Some(cert_input(&ic, "ic_max")),
        channel_neg_ic: Some(CertInput::new(-min_ic.value, "ic_min")),
        channel_l: Some(cert_input(&l, "l_max")),
        channel_er: er.as_ref().map(|o| cert_input(&o.certificate, "er_ppt")),
        ..Default::default()
    };
    let mut file = ReportFile::new(assemble_report(subject, &inputs, cfg.base())?);
    file.note("ic_max", &ic);
    file.note("ic_min", &min_ic);
    file.note("l_max", &l);
    if let Some(o) = &er {
        file.note("er_ppt", &o.certificate);
        file.report.estimates.push(Estimate {
            name: "er_ppt_estimate".into(),
            value: o.estimate,
            converged: o.certificate.converged,
        });
    }
    Ok(file)
}

pub fn analyze_state(rho: &DensityMatrix, cfg: &RunConfig, subject: &str) -> CliResult<ReportFile> {
    let (d_a, d_b) = rho.dims().ok_or(chanbound_core::Error::MissingDims)?;
    let base = cfg.base();
    let opt = &cfg.optimizer;
    let er = if cfg.ree.enabled(rho.dim()) { Some(ree_ppt_lower(rho, opt)?) } else { None };
    let inputs = EntropicInputs {
        d: d_a.min(d_b),
        state_ic: Some(CertInput::new(ic_lower_bound(rho, base)?, "state")),
        state_er: er.as_ref().map(|o| cert_input(&o.certificate, "er_ppt")),
        state_mi: Some(CertInput::new(mutual_information(rho, base)?, "state")),
        ..Default::default()
    };
    let mut file = ReportFile::new(assemble_report(subject, &inputs, base)?);
    if let Some(o) = &er {
        file.note("er_ppt", &o.certificate);
        file.report.estimates.push(Estimate {
            name: "er_ppt_estimate".into(),
            value: o.estimate,
            converged: o.certificate.converged,
        });
    }
    if rho.dim() <= ORACLE_MAX_DIM {
        let oracle = trace_dist_to_ppt(rho, opt)?;
        file.note("ds_ppt_oracle", &oracle);
    }
    Ok(file)
}

fn strict_check(file: &ReportFile, cfg: &RunConfig) -> CliResult<()> {
    if cfg.strict && !file.converged {
        let stalled: Vec<&str> =
            file.report.estimates.iter().filter(|e| !e.converged).map(|e| e.name.as_str()).collect();
        return Err(CliError::NotConverged(stalled.join(", ")));
    }
    Ok(())
}

fn emit(text: &str, cfg: &RunConfig) -> CliResult<()> {
    match &cfg.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn render_report(file: &ReportFile, format: Format) -> CliResult<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(file).expect("report serializes") + "\n"),
        Format::Csv => file.to_table().to_csv(),
    }
}

/// Writes the report, then fails with exit code 3 under `--strict` if any search stalled.
pub fn cmd_analyze_channel(path: &std::path::Path, cfg: &RunConfig) -> CliResult<ReportFile> {
    let phi = chanbound_core::io::load_channel(path)?;
    let file = analyze_channel(&phi, cfg, &path.display().to_string())?;
    emit(&render_report(&file, cfg.format)?, cfg)?;
    strict_check(&file, cfg)?;
    Ok(file)
}

pub fn cmd_analyze_state(path: &std::path::Path, cfg: &RunConfig) -> CliResult<ReportFile> {
    let rho = chanbound_core::io::load_state(path)?;
    let file = analyze_state(&rho, cfg, &path.display().to_string())?;
    emit(&render_report(&file, cfg.format)?, cfg)?;
    strict_check(&file, cfg)?;
    Ok(file)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Example {
    Ex1,
    Ex2,
    Tightness,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReproduceParams {
    pub dims: Option<Vec<usize>>,
    pub p_grid: Option<Vec<f64>>,
    pub x: f64,
}

impl Default for ReproduceParams {
    fn default() -> Self {
        Self { dims: None, p_grid: None, x: 0.25 }
    }
}

fn log_d(d: usize, base: LogBase) -> f64 {
    base.log(d as f64)
}

fn value_and_raw(b: chanbound_core::Result<chanbound_core::bounds::Bound>) -> [Option<f64>; 2] {
    match b {
        Ok(b) => [Some(b.value), Some(b.raw)],
        Err(_) => [None, None],
    }
}

/// Identity channel on `C^d`: bounds to the antidegradable and entanglement-breaking sets.
pub fn table_ex1(dims: &[usize], base: LogBase) -> CliResult<Table> {
    let mut t = Table::new(&["d", "Eq9", "Eq9_raw", "Eq10", "Eq10_raw"]);
    for &d in dims {
        let ic = log_d(d, base);
        let [a, a_raw] = value_and_raw(da_lower(ic, d, base));
        let [e, e_raw] = value_and_raw(deb_lower(ic, d, EbSource::Ic, base));
        t.push(vec![Some(d as f64), a, a_raw, e, e_raw]);
    }
    Ok(t)
}

/// Erasure channels: the three entanglement-breaking bounds and the upper bound `2(1 - p)`.
pub fn table_ex2(dims: &[usize], p_grid: &[f64], base: LogBase) -> CliResult<Table> {
    let mut t = Table::new(&[
        "d", "p", "Eq10", "Eq10_raw", "Eq11", "Eq11_raw", "Eq12", "Eq12_raw", "upper",
    ]);
    for &d in dims {
        for &p in p_grid {
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::Argument(format!("p = {p} outside [0, 1]")));
            }
            let ld = log_d(d, base);
            let ic = (1.0 - 2.0 * p) * ld;
            let l = (1.0 - p) * ld - binary_entropy(p, base)?;
            let er = (1.0 - p) * ld;
            let mut row = vec![Some(d as f64), Some(p)];
            for (cert, src) in [(ic, EbSource::Ic), (l, EbSource::L), (er, EbSource::ER)] {
                row.extend(value_and_raw(deb_lower(cert, d, src, base)));
            }
            row.push(Some(2.0 * (1.0 - p)));
            t.push(row);
        }
    }
    Ok(t)
}

/// Erasure channels at `p = 1/2 -+ x`: antidegradable and degradable bounds against
/// the upper bound `2x`, with their ratios.
pub fn table_tightness(dims: &[usize], x: f64, base: LogBase) -> CliResult<Table> {
    if !(x > 0.0 && x <= 0.5) {
        return Err(CliError::Argument(format!("x = {x} outside (0, 1/2]")));
    }
    let mut t = Table::new(&["d", "x", "Eq9", "Eq13", "upper", "ratio_Eq9", "ratio_Eq13"]);
    for &d in dims {
        let cert = 2.0 * x * log_d(d, base);
        let a = da_lower(cert, d, base)?.value;
        let dd = dd_lower(cert, d, base)?.value;
        let upper = 2.0 * x;
        t.push(vec![Some(d as f64), Some(x), Some(a), Some(dd), Some(upper), Some(a / upper), Some(dd / upper)]);
    }
    Ok(t)
}

pub fn reproduce(example: Example, params: &ReproduceParams, base: LogBase) -> CliResult<Table> {
    match example {
        Example::Ex1 => {
            let dims = params.dims.clone().unwrap_or_else(|| (2..=64).collect());
            table_ex1(&dims, base)
        }
        Example::Ex2 => {
            let dims = params.dims.clone().unwrap_or_else(|| vec![16]);
            let grid = params
                .p_grid
                .clone()
                .unwrap_or_else(|| (1..=9).map(|k| k as f64 / 10.0).collect());
            table_ex2(&dims, &grid, base)
        }
        Example::Tightness => {
            let dims = params.dims.clone().unwrap_or_else(|| (1..=10).map(|k| 1usize << k).collect());
            table_tightness(&dims, params.x, base)
        }
    }
}

pub fn cmd_reproduce(example: Example, params: &ReproduceParams, cfg: &RunConfig) -> CliResult<Table> {
    let table = reproduce(example, params, cfg.base())?;
    let text = match cfg.format {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json() + "\n",
    };
    emit(&text, cfg)?;
    Ok(table)
}

fn param<T: std::str::FromStr>(params: &[String], i: usize, what: &str) -> CliResult<T> {
    let raw = params.get(i).ok_or_else(|| CliError::Argument(format!("missing parameter {what}")))?;
    raw.parse().map_err(|_| CliError::Argument(format!("bad {what}: {raw}")))
}

/// Builds a named channel: `erasure d p`, `identity d_in [d_out]`,
/// `depolarizing d lambda`, `completely-depolarizing d`.
pub fn zoo(name: &str, params: &[String]) -> CliResult<KrausChannel> {
    let expect = |n: std::ops::RangeInclusive<usize>| {
        if n.contains(&params.len()) {
            Ok(())
        } else {
            Err(CliError::Argument(format!("{name} takes {n:?} parameters, got {}", params.len())))
        }
    };
    let phi = match name {
        "erasure" => {
            expect(2..=2)?;
            erasure(param(params, 0, "d")?, param(params, 1, "p")?)?
        }
        "identity" => {
            expect(1..=2)?;
            let d_in = param(params, 0, "d_in")?;
            let d_out = if params.len() == 2 { param(params, 1, "d_out")? } else { d_in };
            identity_embedding(d_in, d_out)?
        }
        "depolarizing" => {
            expect(2..=2)?;
            depolarizing(param(params, 0, "d")?, param(params, 1, "lambda")?)?
        }
        "completely-depolarizing" => {
            expect(1..=1)?;
            completely_depolarizing(param(params, 0, "d")?)?
        }
        other => return Err(CliError::Argument(format!("unknown channel {other}"))),
    };
    Ok(phi)
}

pub fn cmd_zoo(name: &str, params: &[String], cfg: &RunConfig) -> CliResult<KrausChannel> {
    let phi = zoo(name, params)?;
    emit(&(channel_to_json(&phi) + "\n"), cfg)?;
    Ok(phi)
}
