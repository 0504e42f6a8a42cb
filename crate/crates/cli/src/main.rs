use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;

use config::RunConfig;

/// Certified search for badly approximable vectors over number fields.
#[derive(Parser)]
#[command(name = "nfapprox", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, signature, discriminant and embeddings of a field.
    FieldInfo(RunArgs),
    /// Total indefiniteness and anisotropy of a form.
    FormCheck(RunArgs),
    /// Build a target vector and write its recipe and enclosures.
    Construct(RunArgs),
    /// Enumerate approximants and record their quality.
    Scan(RunArgs),
    /// Liouville lower bound for a zero of an anisotropic form.
    Certify(RunArgs),
    /// Lattice minimum along the diagonal flow.
    Flow(RunArgs),
    /// Randomized structural checks.
    Selftest(RunArgs),
}

#[derive(Args, Default)]
struct RunArgs {
    /// TOML or JSON run configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    field: Option<PathBuf>,
    #[arg(long)]
    form: Option<PathBuf>,
    /// Vector file written by `construct`.
    #[arg(long)]
    vector: Option<PathBuf>,
    /// One of `+`/`-` per place, for a zero of a quadratic form.
    #[arg(long, allow_hyphen_values = true)]
    signs: Option<String>,
    /// Rational alphas for the corollary construction.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alphas: Option<Vec<String>>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_signs: Option<String>,
    /// Power-basis coordinates of `f`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    f: Option<Vec<String>>,
    /// Power-basis coordinates of `e`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    e: Option<Vec<String>>,
    /// Angles on the zero circles of a Hermitian form (exploratory).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    angles: Option<Vec<f64>>,
    /// Power-basis coordinates of a field element used as the target.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    point: Option<Vec<String>>,
    /// Working precision in bits (default 256).
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long)]
    max_precision: Option<u32>,
    #[arg(long)]
    norm_height: Option<u32>,
    /// House bound on the denominators.
    #[arg(long)]
    bound: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    thresholds: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true)]
    tmin: Option<f64>,
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    dip_threshold: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

impl RunArgs {
    fn into_config(self) -> anyhow::Result<RunConfig> {
        let flags = RunConfig {
            field: self.field,
            form: self.form,
            vector: self.vector,
            signs: self.signs,
            alphas: self.alphas,
            alpha_signs: self.alpha_signs,
            f: self.f,
            e: self.e,
            angles: self.angles,
            point: self.point,
            precision: self.precision,
            max_precision: self.max_precision,
            norm_height: self.norm_height,
            bound: self.bound,
            thresholds: self.thresholds,
            tmin: self.tmin,
            tmax: self.tmax,
            step: self.step,
            dip_threshold: self.dip_threshold,
            out: self.out,
            svg: self.svg,
            seed: self.seed,
        };
        let Some(path) = self.config else { return Ok(flags) };
        let mut base: RunConfig = config::load(&path)?;
        let dir = path.parent().unwrap_or(Path::new("")).to_path_buf();
        for p in [&mut base.field, &mut base.form, &mut base.vector, &mut base.out, &mut base.svg].into_iter().flatten()
        {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        }
        Ok(flags.or(base))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (name, args) = match cli.command {
        Command::FieldInfo(a) => ("field-info", a),
        Command::FormCheck(a) => ("form-check", a),
        Command::Construct(a) => ("construct", a),
        Command::Scan(a) => ("scan", a),
        Command::Certify(a) => ("certify", a),
        Command::Flow(a) => ("flow", a),
        Command::Selftest(a) => ("selftest", a),
    };
    let result = args.into_config().and_then(|cfg| commands::run(name, &cfg));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::error_code(&err) as u8)
        }
    }
}
