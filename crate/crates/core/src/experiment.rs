//! Convergence experiments behind the command-line tool: interpolation
//! errors in `H⁰`/`H¹` and cubature errors for `F_s = |x - x*|^s`.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::distance::{DistanceFunction, DEFAULT_CENTER};
use crate::error::{Error, Result};
use crate::field::Difference;
use crate::filon::{cubature_from_zero_mode, zero_mode_samples, DEFAULT_K_REF, DEFAULT_N_REF};
use crate::interp::{interpolate, SphericalGrid};
use crate::sobolev::{sobolev_norms, NormGrid, NormRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidArgument(format!("unknown format '{other}'"))),
        }
    }
}

/// How the "true" integral in cubature tables is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reference {
    /// Exact ring means (integer `s`) integrated by graded composite Filon panels.
    #[default]
    Exact,
    /// High-order cubature on `n_ref + 1` latitudes with `k_ref`-point ring means.
    Lobatto { n_ref: usize, k_ref: usize },
}

impl Reference {
    pub fn lobatto_default() -> Self {
        Reference::Lobatto {
            n_ref: DEFAULT_N_REF,
            k_ref: DEFAULT_K_REF,
        }
    }
}

/// Resolution and placement of the norm quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormGridSpec {
    pub n_theta: usize,
    pub n_phi: usize,
    pub rule: NormRule,
}

impl Default for NormGridSpec {
    fn default() -> Self {
        Self {
            n_theta: 400,
            n_phi: 400,
            rule: NormRule::LeftEndpoint,
        }
    }
}

impl NormGridSpec {
    pub fn build(&self) -> Result<NormGrid> {
        NormGrid::new(self.n_theta, self.n_phi, self.rule)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    /// `s` in `|x - x*|^s`.
    pub power: f64,
    pub center: [f64; 3],
    pub orders: Vec<usize>,
    pub kappas: Vec<f64>,
    pub norm_grid: NormGridSpec,
    pub reference: Reference,
    pub format: OutputFormat,
    /// Recorded with the spec; the computations themselves are deterministic.
    pub seed: u64,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            power: 1.0,
            center: DEFAULT_CENTER,
            orders: vec![5, 10, 20, 40, 80],
            kappas: (-2..=5).map(|m| 10f64.powi(m)).collect(),
            norm_grid: NormGridSpec::default(),
            reference: Reference::default(),
            format: OutputFormat::default(),
            seed: 0,
        }
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        self.function()?;
        if let Some(n) = self.orders.iter().find(|&&n| n < 2) {
            return Err(Error::OrderTooSmall(*n));
        }
        if let Some(k) = self.kappas.iter().find(|k| !(**k >= 0.0) || !k.is_finite()) {
            return Err(Error::InvalidWavenumber {
                kappa: *k,
                requirement: "finite and >= 0",
            });
        }
        Ok(())
    }

    pub fn function(&self) -> Result<DistanceFunction> {
        DistanceFunction::new(self.center, self.power)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterpRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub h0_err: f64,
    pub h0_eoc: Option<f64>,
    pub h1_err: f64,
    pub h1_eoc: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubatureRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub kappa: f64,
    pub abs_err: f64,
}

/// Rows that can be written as CSV.
pub trait TableRecord: Serialize {
    const HEADER: &'static str;
    fn write_csv(&self, line: &mut String);
}

fn push_float(line: &mut String, v: f64) {
    let _ = write!(line, "{v:e}");
}

impl TableRecord for InterpRow {
    const HEADER: &'static str = "N,h0_err,h0_eoc,h1_err,h1_eoc";

    fn write_csv(&self, line: &mut String) {
        let _ = write!(line, "{},", self.n);
        push_float(line, self.h0_err);
        line.push(',');
        if let Some(e) = self.h0_eoc {
            push_float(line, e);
        }
        line.push(',');
        push_float(line, self.h1_err);
        line.push(',');
        if let Some(e) = self.h1_eoc {
            push_float(line, e);
        }
    }
}

impl TableRecord for CubatureRow {
    const HEADER: &'static str = "N,kappa,abs_err";

    fn write_csv(&self, line: &mut String) {
        let _ = write!(line, "{},", self.n);
        push_float(line, self.kappa);
        line.push(',');
        push_float(line, self.abs_err);
    }
}

/// Order of convergence between consecutive rows, `log(e₀/e₁)/log(N₁/N₀)`
/// (the base-2 log ratio when `N` doubles). Blank if either error is zero.
fn eoc_between(e0: f64, e1: f64, n0: usize, n1: usize) -> Option<f64> {
    if e0 > 0.0 && e1 > 0.0 && n1 != n0 {
        Some((e0 / e1).ln() / (n1 as f64 / n0 as f64).ln())
    } else {
        None
    }
}

/// `‖Q_N F_s - F_s‖` in `H⁰` and `H¹` for every `N` in the spec.
pub fn run_interp_table(spec: &ExperimentSpec) -> Result<Vec<InterpRow>> {
    spec.validate()?;
    let f = spec.function()?;
    let grid = spec.norm_grid.build()?;
    let mut rows = Vec::with_capacity(spec.orders.len());
    for &n in &spec.orders {
        let q = interpolate(&f, n)?;
        let (h0, h1) = sobolev_norms(&Difference(&q, &f), &grid);
        let (h0_eoc, h1_eoc) = rows.last().map_or((None, None), |prev: &InterpRow| {
            (
                eoc_between(prev.h0_err, h0, prev.n, n),
                eoc_between(prev.h1_err, h1, prev.n, n),
            )
        });
        rows.push(InterpRow {
            n,
            h0_err: h0,
            h0_eoc,
            h1_err: h1,
            h1_eoc,
        });
    }
    Ok(rows)
}

/// Reference integrals for each `κ` of the spec, in order.
pub fn reference_values(spec: &ExperimentSpec) -> Result<Vec<Complex64>> {
    spec.validate()?;
    let f = spec.function()?;
    match spec.reference {
        Reference::Exact => spec.kappas.par_iter().map(|&k| f.oscillatory_integral(k)).collect(),
        Reference::Lobatto { n_ref, k_ref } => {
            // the ring means do not depend on κ, so sample once
            let grid = SphericalGrid::new(n_ref)?;
            let means = grid
                .theta()
                .par_iter()
                .map(|&t| crate::interp::azimuthal_mean(&f, t, k_ref))
                .collect::<Result<Vec<_>>>()?;
            spec.kappas
                .iter()
                .map(|&k| Ok(cubature_from_zero_mode(grid.rule(), &means, k)?.value))
                .collect()
        }
    }
}

/// `|I_κ(F_s) - I_{κ,N}(F_s)|` for every `(N, κ)`, `N`-major.
pub fn run_cubature_table(spec: &ExperimentSpec) -> Result<Vec<CubatureRow>> {
    let references = reference_values(spec)?;
    cubature_errors(spec, &references)
}

/// Cubature errors against precomputed references (one per `κ`).
pub fn cubature_errors(spec: &ExperimentSpec, references: &[Complex64]) -> Result<Vec<CubatureRow>> {
    spec.validate()?;
    if references.len() != spec.kappas.len() {
        return Err(Error::ShapeMismatch {
            expected: spec.kappas.len(),
            actual: references.len(),
        });
    }
    let f = spec.function()?;
    let blocks = spec
        .orders
        .par_iter()
        .map(|&n| {
            let grid = SphericalGrid::new(n)?;
            let means = zero_mode_samples(&f, &grid);
            spec.kappas
                .iter()
                .zip(references)
                .map(|(&kappa, reference)| {
                    let approx = cubature_from_zero_mode(grid.rule(), &means, kappa)?;
                    Ok(CubatureRow {
                        n,
                        kappa,
                        abs_err: (reference - approx.value).norm(),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

/// Which of the six standard tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardTable {
    /// `H⁰`/`H¹` interpolation errors for `s ∈ {1, 3, 5}` (tables 1–3).
    Interp(u8),
    /// Cubature errors for `s ∈ {1, 3, 5}` (tables 4–6).
    Cubature(u8),
}

impl StandardTable {
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1..=3 => Ok(Self::Interp(k)),
            4..=6 => Ok(Self::Cubature(k)),
            _ => Err(Error::InvalidArgument(format!("no table {k} (expected 1-6)"))),
        }
    }

    pub fn index(&self) -> u8 {
        match *self {
            Self::Interp(k) | Self::Cubature(k) => k,
        }
    }

    pub fn power(&self) -> f64 {
        [1.0, 3.0, 5.0][((self.index() - 1) % 3) as usize]
    }

    /// Spec with the standard `N` and `κ` lists, based on `template`
    /// (center, norm grid, reference method, format).
    pub fn spec(&self, template: &ExperimentSpec) -> ExperimentSpec {
        let orders = match self {
            Self::Interp(_) => vec![5, 10, 20, 40, 80],
            Self::Cubature(_) => vec![5, 10, 20, 40],
        };
        ExperimentSpec {
            power: self.power(),
            orders,
            kappas: (-2..=5).map(|m| 10f64.powi(m)).collect(),
            ..template.clone()
        }
    }

    pub fn run(&self, template: &ExperimentSpec) -> Result<TableOutput> {
        let spec = self.spec(template);
        Ok(match self {
            Self::Interp(_) => TableOutput::Interp(run_interp_table(&spec)?),
            Self::Cubature(_) => TableOutput::Cubature(run_cubature_table(&spec)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TableOutput {
    Interp(Vec<InterpRow>),
    Cubature(Vec<CubatureRow>),
}

impl TableOutput {
    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match self {
            Self::Interp(rows) => render(rows, format),
            Self::Cubature(rows) => render(rows, format),
        }
    }
}

/// CSV (header plus one line per row) or a JSON array of row objects.
/// Output always ends in a newline.
pub fn render<R: TableRecord>(rows: &[R], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from(R::HEADER);
            out.push('\n');
            for row in rows {
                row.write_csv(&mut out);
                out.push('\n');
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let mut out = serde_json::to_string_pretty(rows)?;
            out.push('\n');
            Ok(out)
        }
    }
}

/// Write rendered rows to `path`, or to standard output when `path` is `None`.
pub fn emit<R: TableRecord>(rows: &[R], format: OutputFormat, path: Option<&Path>) -> Result<()> {
    let text = render(rows, format)?;
    write_text(&text, path)
}

pub(crate) fn write_text(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_csv_is_header_only() {
        let rows: Vec<InterpRow> = Vec::new();
        assert_eq!(render(&rows, OutputFormat::Csv).unwrap(), "N,h0_err,h0_eoc,h1_err,h1_eoc\n");
        let rows: Vec<CubatureRow> = Vec::new();
        assert_eq!(render(&rows, OutputFormat::Csv).unwrap(), "N,kappa,abs_err\n");
    }

    #[test]
    fn single_json_row() {
        let rows = vec![CubatureRow {
            n: 5,
            kappa: 0.01,
            abs_err: 2e-3,
        }];
        let text = render(&rows, OutputFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 1);
        assert_eq!(v[0]["N"], 5);
        assert_eq!(v[0]["abs_err"], 2e-3);
    }

    #[test]
    fn csv_blank_first_eoc() {
        let rows = vec![
            InterpRow {
                n: 5,
                h0_err: 0.04,
                h0_eoc: None,
                h1_err: 0.3,
                h1_eoc: None,
            },
            InterpRow {
                n: 10,
                h0_err: 0.01,
                h0_eoc: Some(2.0),
                h1_err: 0.15,
                h1_eoc: Some(1.0),
            },
        ];
        let text = render(&rows, OutputFormat::Csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "5,4e-2,,3e-1,");
        assert_eq!(lines[2], "10,1e-2,2e0,1.5e-1,1e0");
    }

    #[test]
    fn csv_floats_round_trip() {
        let v = 0.1 + 0.2;
        let mut s = String::new();
        push_float(&mut s, v);
        assert_eq!(s.parse::<f64>().unwrap(), v);
    }

    #[test]
    fn format_parsing() {
        assert_eq!("CSV".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert_eq!("json".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert!("xml".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn spec_validation() {
        let mut spec = ExperimentSpec::default();
        assert!(spec.validate().is_ok());
        spec.orders = vec![1];
        assert!(spec.validate().is_err());
        spec.orders = vec![4];
        spec.kappas = vec![-1.0];
        assert!(spec.validate().is_err());
        spec.kappas = vec![1.0];
        spec.center = [1.0, 1.0, 1.0];
        assert!(spec.validate().is_err());
    }

    #[test]
    fn smooth_function_is_interpolated_exactly() {
        let spec = ExperimentSpec {
            power: 2.0,
            orders: vec![4, 8],
            norm_grid: NormGridSpec {
                n_theta: 60,
                n_phi: 60,
                rule: NormRule::Midpoint,
            },
            ..ExperimentSpec::default()
        };
        for row in run_interp_table(&spec).unwrap() {
            assert!(row.h0_err < 1e-12 && row.h1_err < 1e-11, "{row:?}");
        }
    }

    #[test]
    fn standard_tables() {
        assert_eq!(StandardTable::from_index(2).unwrap(), StandardTable::Interp(2));
        assert_eq!(StandardTable::from_index(6).unwrap().power(), 5.0);
        assert!(StandardTable::from_index(7).is_err());
        let spec = StandardTable::Cubature(4).spec(&ExperimentSpec::default());
        assert_eq!(spec.orders, vec![5, 10, 20, 40]);
        assert_eq!(spec.kappas.len(), 8);
    }
}
