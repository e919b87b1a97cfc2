//! Argument handling and subcommand dispatch for `soliton-forge`.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{parse_expr, Bindings, ScalarExpr, Sym};
use crate::connection::koszul_connection;
use crate::curvature::{CurvatureBundle, RConvention};
use crate::frame::FrameSpec;
use crate::report::{
    axiom_section, connection_section, curvature_section, fluid_section, soliton_section, spec_info, theorem_section,
    validation_section, Ctx, Outcome, Report,
};
use crate::soliton::{FluidParams, SolitonParams};
use crate::spec_file::parse_spec_str;

/// Parameter symbols that may be bound with `--sub` on top of the spec's own.
pub const PARAMETER_SYMBOLS: [&str; 8] = ["alpha", "beta", "lambda", "tau", "rho", "p", "mu", "r"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Run the spec checks.
    Validate,
    /// Levi-Civita connection coefficients.
    Connection,
    /// Riemann and Ricci tensors, scalar curvature, Ricci operator.
    Curvature,
    /// Lorentzian para-Sasakian axiom battery.
    Axioms,
    /// Ricci-Yamabe soliton residuals and the Einstein reduction.
    Soliton,
    /// Perfect fluid and dust consequences.
    Fluid,
    /// Symbolic identity checks; no spec needed.
    Theorems,
    /// Everything.
    Report,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Connection => "connection",
            Command::Curvature => "curvature",
            Command::Axioms => "axioms",
            Command::Soliton => "soliton",
            Command::Fluid => "fluid",
            Command::Theorems => "theorems",
            Command::Report => "report",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "soliton-forge", version, about = "Exact curvature and soliton checks for frame-presented manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Spec file; optional for `theorems`.
    #[arg(global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, default_value = "signed")]
    pub r_convention: RConvention,
    /// SYM=EXPR, applied to every reported expression after computation.
    #[arg(long = "sub", global = true, value_name = "SYM=EXPR")]
    pub subs: Vec<String>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Dimension used by the general-n identity checks.
    #[arg(long, global = true, default_value_t = 4)]
    pub n: i64,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub command: Command,
    pub r_convention: RConvention,
    pub subs: Vec<String>,
    pub format: Format,
    pub n: i64,
    pub out: Option<PathBuf>,
}

impl From<Cli> for RunConfig {
    fn from(c: Cli) -> Self {
        RunConfig {
            input: c.input,
            command: c.command,
            r_convention: c.r_convention,
            subs: c.subs,
            format: c.format,
            n: c.n,
            out: c.out,
        }
    }
}

impl RunConfig {
    pub fn new(command: Command, input: Option<PathBuf>) -> Self {
        RunConfig {
            input,
            command,
            r_convention: RConvention::Signed,
            subs: Vec::new(),
            format: Format::Text,
            n: 4,
            out: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub exit: i32,
    /// The rendered report, empty on input errors.
    pub output: String,
    pub errors: Vec<String>,
}

impl RunOutcome {
    fn input_error(msg: impl Into<String>) -> Self {
        RunOutcome {
            exit: 2,
            output: String::new(),
            errors: vec![msg.into()],
        }
    }
}

fn parse_subs(raw: &[String], known: &BTreeSet<Sym>) -> Result<Bindings, String> {
    let mut b = Bindings::new();
    for s in raw {
        let (sym, expr) = s.split_once('=').ok_or_else(|| format!("--sub `{s}`: expected SYM=EXPR"))?;
        let sym = sym.trim();
        let lhs = parse_expr(sym).map_err(|e| format!("--sub `{s}`: {e}"))?;
        let sym = match lhs.symbols().into_iter().next() {
            Some(x) if lhs == ScalarExpr::from_sym(x.clone()) => x,
            _ => return Err(format!("--sub `{s}`: `{sym}` is not a symbol")),
        };
        if !known.contains(&sym) {
            return Err(format!("--sub `{s}`: unknown symbol `{sym}`"));
        }
        let value = parse_expr(expr).map_err(|e| format!("--sub `{s}`: {e}"))?;
        if b.insert(sym.clone(), value).is_some() {
            return Err(format!("--sub: `{sym}` bound twice"));
        }
    }
    Ok(b)
}

/// Runs one subcommand and returns the exit status with the rendered report.
/// Nothing is written; see [`execute`].
pub fn run(config: &RunConfig) -> RunOutcome {
    let cmd = config.command;
    let spec = match (&config.input, cmd) {
        (None, Command::Theorems) => None,
        (None, _) => return RunOutcome::input_error(format!("{}: a spec file is required", cmd.name())),
        (Some(path), _) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return RunOutcome::input_error(format!("cannot read {}: {e}", path.display())),
            };
            match parse_spec_str(&text) {
                Ok(s) => Some(s),
                Err(e) => return RunOutcome::input_error(format!("{}: {e}", path.display())),
            }
        }
    };

    let mut known: BTreeSet<Sym> = PARAMETER_SYMBOLS.iter().map(|s| Sym::from(*s)).collect();
    let mut nonzero = BTreeSet::new();
    if let Some(s) = &spec {
        known.extend(s.symbols());
        nonzero.extend(s.assume_nonzero().iter().cloned());
    }
    let bindings = match parse_subs(&config.subs, &known) {
        Ok(b) => b,
        Err(e) => return RunOutcome::input_error(e),
    };
    let ctx = Ctx {
        bindings: &bindings,
        nonzero: &nonzero,
    };

    let mut report = Report::new(cmd.name(), config.r_convention, &bindings);
    if let Some(spec) = &spec {
        if let Err(e) = fill_spec_sections(&mut report, spec, config, &ctx) {
            return e;
        }
    }
    if matches!(cmd, Command::Theorems | Command::Report) {
        if config.n < 2 {
            return RunOutcome::input_error(format!("--n must be at least 2, found {}", config.n));
        }
        match theorem_section(config.n, &ctx) {
            Ok(t) => report.theorems = Some(t),
            Err(e) => return RunOutcome::input_error(format!("substitution: {e}")),
        }
    }
    report.settle();
    let output = match config.format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_structured(),
    };
    RunOutcome {
        exit: if report.outcome == Outcome::Failure { 1 } else { 0 },
        output,
        errors: Vec::new(),
    }
}

fn fill_spec_sections(report: &mut Report, spec: &FrameSpec, config: &RunConfig, ctx: &Ctx) -> Result<(), RunOutcome> {
    let cmd = config.command;
    report.spec = Some(spec_info(spec));
    let validation = spec.validate();
    let valid = validation.is_valid();
    if cmd == Command::Validate || cmd == Command::Report || !valid {
        report.validation = Some(validation_section(&validation));
    }
    if cmd == Command::Validate {
        return Ok(());
    }
    if !valid {
        let failed = validation.first_failure().expect("invalid report has a failure");
        return Err(RunOutcome::input_error(format!(
            "invalid spec: {} check failed: {}",
            failed.name, failed.detail
        )));
    }
    let sub_err = |e: crate::algebra::AlgebraError| RunOutcome::input_error(format!("substitution: {e}"));

    let conn = koszul_connection(spec).map_err(|e| RunOutcome::input_error(format!("invalid spec: {e}")))?;
    let all = cmd == Command::Report;
    if all || cmd == Command::Connection {
        report.connection = Some(connection_section(spec, &conn, ctx).map_err(sub_err)?);
    }
    if cmd == Command::Connection {
        return Ok(());
    }
    let curv = CurvatureBundle::compute(spec, &conn);
    if all || cmd == Command::Curvature {
        report.curvature = Some(curvature_section(spec, &curv, ctx).map_err(sub_err)?);
    }
    if all || cmd == Command::Axioms {
        report.axioms = Some(axiom_section(spec, &conn, &curv, ctx).map_err(sub_err)?);
    }
    let params = SolitonParams::default().with_convention(config.r_convention);
    if all || cmd == Command::Soliton {
        report.soliton = Some(soliton_section(spec, &conn, &curv, &params, ctx).map_err(sub_err)?);
    }
    if all || cmd == Command::Fluid {
        let fluid = FluidParams::default();
        report.fluid = Some(fluid_section(spec, &curv, &params, &fluid, ctx).map_err(sub_err)?);
    }
    Ok(())
}

/// Runs and writes the report to `--out` or standard output.
pub fn execute(config: &RunConfig) -> i32 {
    let outcome = run(config);
    for e in &outcome.errors {
        eprintln!("error: {e}");
    }
    if outcome.exit == 2 {
        return 2;
    }
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.output) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{}", outcome.output),
    }
    outcome.exit
}
