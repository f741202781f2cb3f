//! `charzeta`: character varieties, trace fields and zeta comparisons for
//! two-generator presentations.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use charzeta_core::arith::real::Real;
use charzeta_core::pipeline::{analyze, holonomy_report, PipelineOptions, PipelineReport, Stage};
use charzeta_core::presentation::{parse_presentation, GroupPresentation};
use charzeta_core::{presets, Error};

#[derive(Parser)]
#[command(name = "charzeta", version, about = "SL2 character varieties, trace fields and Hasse-Weil zeta checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the character variety and classify its components.
    Charvar(Common),
    /// Trace field, invariant trace field and the [K : invK] = #H¹ check.
    Tracefield(Common),
    /// Compare local zeta factors of the canonical component with the
    /// Dedekind zeta function of its trace field.
    Zeta(ZetaArgs),
    /// Solve for Riley-form representations.
    Holonomy(Common),
}

#[derive(Args)]
struct Common {
    /// Built-in presentation.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    preset: Option<String>,
    /// Presentation file: `gens: a b; rels: ...`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Use this component (index in the component list) as canonical.
    #[arg(long)]
    component: Option<usize>,
    /// Seed for the separating-form search.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

#[derive(Args)]
struct ZetaArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 100)]
    prime_bound: u64,
    /// Also compare ζ(invK, 2) with the volume.
    #[arg(long, requires = "volume")]
    special_value: bool,
    /// Hyperbolic volume, as a decimal.
    #[arg(long)]
    volume: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::NotZeroDimensional => 3,
        Error::Ambiguous(_) => 4,
        Error::ResourceBudget(_) => 5,
        _ => 1,
    }
}

fn load(common: &Common) -> Result<(GroupPresentation, Option<&'static str>), Error> {
    match (&common.preset, &common.input) {
        (Some(name), _) => Ok((presets::presentation(name)?, Some(presets::find(name)?.name))),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse { pos: 0, msg: format!("cannot read {}: {e}", path.display()) })?;
            Ok((parse_presentation(&text)?, None))
        }
        (None, None) => unreachable!("clap requires --preset or --input"),
    }
}

fn options(common: &Common, preset: Option<&str>, stage: Stage) -> Result<PipelineOptions, Error> {
    Ok(PipelineOptions {
        stage,
        component: common.component,
        reference: preset.map(presets::trace_field).transpose()?,
        seed: common.seed,
        ..Default::default()
    })
}

fn run(cli: &Cli) -> Result<(PipelineReport, Format), Error> {
    match &cli.command {
        Command::Charvar(c) | Command::Tracefield(c) => {
            let stage = if matches!(cli.command, Command::Charvar(_)) { Stage::CharacterVariety } else { Stage::TraceField };
            let (pres, preset) = load(c)?;
            Ok((analyze(&pres, &options(c, preset, stage)?)?, c.format))
        }
        Command::Zeta(z) => {
            let (pres, preset) = load(&z.common)?;
            let mut opts = options(&z.common, preset, Stage::Zeta)?;
            opts.prime_bound = z.prime_bound;
            if z.special_value {
                let text = z.volume.as_deref().unwrap_or_default();
                let v = Real::parse_decimal(text)
                    .ok_or_else(|| Error::Parse { pos: 0, msg: format!("volume '{text}' is not a decimal number") })?;
                opts.volume = Some(v);
            }
            Ok((analyze(&pres, &opts)?, z.common.format))
        }
        Command::Holonomy(c) => {
            let (pres, _) = load(c)?;
            Ok((holonomy_report(&pres)?, c.format))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, format)) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
                Format::Text => print!("{}", render::text(&report)),
            }
            let holds = report.zeta.as_ref().map_or(true, |z| z.theorem_holds);
            if holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match &e {
                Error::NotZeroDimensional => eprintln!("error: closed-manifold pipeline requires dim 0"),
                Error::Ambiguous(c) => {
                    eprintln!("error: several canonical candidates {c:?}; choose one with --component")
                }
                _ => eprintln!("error: {e}"),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
