use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sphere_filon::experiment::{
    self, CubatureRow, ExperimentSpec, NormGridSpec, OutputFormat, Reference, StandardTable, TableRecord,
};
use sphere_filon::{interpolate, legendre_moments, Error, NormRule, Result, DEFAULT_CENTER};

#[derive(Parser)]
#[command(name = "sphere-filon", version, about = "Spherical interpolation and wideband oscillatory cubature experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// H0/H1 interpolation errors of |x - x*|^s
    Interp(InterpArgs),
    /// Cubature errors of |x - x*|^s for a list of wavenumbers
    Cubature(CubatureArgs),
    /// Reproduce the standard tables (1-3 interpolation, 4-6 cubature)
    Tables(TablesArgs),
    /// Print Legendre moments mu_n(kappa) = 2 i^n j_n(kappa)
    Moments(MomentsArgs),
}

#[derive(Args, Clone)]
struct FunctionArgs {
    /// Power s in |x - x*|^s
    #[arg(long = "s", default_value_t = 1.0)]
    s: f64,
    /// Center x* as three comma-separated components (unit length)
    #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = DEFAULT_CENTER)]
    xstar: Vec<f64>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (directory for `tables`); standard output if omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct NormArgs {
    /// Norm quadrature resolution, e.g. 400x400
    #[arg(long, default_value = "400x400", value_parser = parse_grid)]
    norm_grid: (usize, usize),
    #[arg(long, value_enum, default_value_t = Rule::Left)]
    norm_rule: Rule,
}

#[derive(Args, Clone)]
struct ReferenceArgs {
    /// How the exact integral is obtained
    #[arg(long, value_enum, default_value_t = RefKind::Exact)]
    reference: RefKind,
    /// Latitude order of the `lobatto` reference
    #[arg(long, default_value_t = sphere_filon::filon::DEFAULT_N_REF)]
    nref: usize,
    /// Azimuthal points of the `lobatto` reference
    #[arg(long, default_value_t = sphere_filon::filon::DEFAULT_K_REF)]
    kref: usize,
}

#[derive(Args)]
struct InterpArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long = "N", value_delimiter = ',', default_values_t = [5usize, 10, 20, 40, 80])]
    orders: Vec<usize>,
    #[command(flatten)]
    norm: NormArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Also write the interpolants (node values per mode) as JSON
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args)]
struct CubatureArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long = "N", value_delimiter = ',', default_values_t = [5usize, 10, 20, 40])]
    orders: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [1e-2, 1e-1, 1e0, 1e1, 1e2, 1e3, 1e4, 1e5])]
    kappa: Vec<f64>,
    #[command(flatten)]
    reference: ReferenceArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TablesArgs {
    /// `all` or a table number 1-6
    #[arg(long, default_value = "all")]
    which: String,
    #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = DEFAULT_CENTER)]
    xstar: Vec<f64>,
    #[command(flatten)]
    norm: NormArgs,
    #[command(flatten)]
    reference: ReferenceArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MomentsArgs {
    #[arg(long)]
    kappa: f64,
    #[arg(long, default_value_t = 20)]
    nmax: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Left,
    Midpoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum RefKind {
    Exact,
    Lobatto,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected <n_theta>x<n_phi>, got '{s}'"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn center(v: &[f64]) -> Result<[f64; 3]> {
    v.try_into()
        .map_err(|_| Error::InvalidArgument(format!("x* needs 3 components, got {}", v.len())))
}

impl NormArgs {
    fn spec(&self) -> NormGridSpec {
        NormGridSpec {
            n_theta: self.norm_grid.0,
            n_phi: self.norm_grid.1,
            rule: match self.norm_rule {
                Rule::Left => NormRule::LeftEndpoint,
                Rule::Midpoint => NormRule::Midpoint,
            },
        }
    }
}

impl ReferenceArgs {
    fn spec(&self) -> Reference {
        match self.reference {
            RefKind::Exact => Reference::Exact,
            RefKind::Lobatto => Reference::Lobatto {
                n_ref: self.nref,
                k_ref: self.kref,
            },
        }
    }
}

fn run_interp(args: &InterpArgs) -> Result<()> {
    let spec = ExperimentSpec {
        power: args.function.s,
        center: center(&args.function.xstar)?,
        orders: args.orders.clone(),
        norm_grid: args.norm.spec(),
        format: args.output.format.into(),
        ..ExperimentSpec::default()
    };
    let rows = experiment::run_interp_table(&spec)?;
    experiment::emit(&rows, spec.format, args.output.out.as_deref())?;
    if let Some(path) = &args.dump {
        let f = spec.function()?;
        let records = spec
            .orders
            .iter()
            .map(|&n| Ok(interpolate(&f, n)?.to_record()))
            .collect::<Result<Vec<_>>>()?;
        let mut text = serde_json::to_string(&records)?;
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn run_cubature(args: &CubatureArgs) -> Result<()> {
    let spec = ExperimentSpec {
        power: args.function.s,
        center: center(&args.function.xstar)?,
        orders: args.orders.clone(),
        kappas: args.kappa.clone(),
        reference: args.reference.spec(),
        format: args.output.format.into(),
        ..ExperimentSpec::default()
    };
    let rows: Vec<CubatureRow> = experiment::run_cubature_table(&spec)?;
    experiment::emit(&rows, spec.format, args.output.out.as_deref())
}

fn run_tables(args: &TablesArgs) -> Result<()> {
    let tables: Vec<StandardTable> = if args.which.eq_ignore_ascii_case("all") {
        (1..=6).map(StandardTable::from_index).collect::<Result<_>>()?
    } else {
        let k = args
            .which
            .parse::<u8>()
            .map_err(|_| Error::InvalidArgument(format!("--which expects all or 1-6, got '{}'", args.which)))?;
        vec![StandardTable::from_index(k)?]
    };
    let format: OutputFormat = args.output.format.into();
    let template = ExperimentSpec {
        center: center(&args.xstar)?,
        norm_grid: args.norm.spec(),
        reference: args.reference.spec(),
        format,
        ..ExperimentSpec::default()
    };
    if let Some(dir) = &args.output.out {
        std::fs::create_dir_all(dir)?;
    }
    let ext = match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    };
    let mut combined = String::new();
    for table in tables {
        let text = table.run(&template)?.render(format)?;
        match &args.output.out {
            Some(dir) => std::fs::write(dir.join(format!("table{}.{ext}", table.index())), text)?,
            None => {
                if !combined.is_empty() {
                    combined.push('\n');
                }
                combined.push_str(&format!("# table {}\n", table.index()));
                combined.push_str(&text);
            }
        }
    }
    if args.output.out.is_none() {
        print!("{combined}");
    }
    Ok(())
}

#[derive(Serialize)]
struct MomentRow {
    n: usize,
    re: f64,
    im: f64,
}

impl TableRecord for MomentRow {
    const HEADER: &'static str = "n,re,im";

    fn write_csv(&self, line: &mut String) {
        line.push_str(&format!("{},{:e},{:e}", self.n, self.re, self.im));
    }
}

fn run_moments(args: &MomentsArgs) -> Result<()> {
    let kernel = legendre_moments(args.kappa, args.nmax)?;
    let rows: Vec<MomentRow> = kernel
        .moments()
        .iter()
        .enumerate()
        .map(|(n, m)| MomentRow { n, re: m.re, im: m.im })
        .collect();
    experiment::emit(&rows, args.output.format.into(), args.output.out.as_deref())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Interp(a) => run_interp(a),
        Command::Cubature(a) => run_cubature(a),
        Command::Tables(a) => run_tables(a),
        Command::Moments(a) => run_moments(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

