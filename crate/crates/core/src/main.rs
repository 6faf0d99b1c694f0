use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use unireal::extract::extract;
use unireal::interp::{BaseInterpretation, InterpName};
use unireal::pipeline::{
    load_proof, proof_files, verify_all, verify_proof, Config, PipelineError, RealizerFile, Report,
    Status,
};

#[derive(Parser)]
#[command(
    name = "unireal",
    version,
    about = "Check proofs in Heyting arithmetic, extract realizers and verify them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check proof files with the kernel.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Extract a realizer from a proof.
    Extract {
        path: PathBuf,
        #[arg(long)]
        interp: InterpName,
        /// Write the realizer here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify extracted realizers by bounded model checking.
    Verify {
        paths: Vec<PathBuf>,
        /// Verify every .proof file in this directory.
        #[arg(long, value_name = "DIR")]
        all: Option<PathBuf>,
        /// An interpretation name, or `all`.
        #[arg(long, default_value = "all")]
        interp: String,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        fuel: Option<u64>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
        /// Verify this realizer file instead of the extracted realizer.
        #[arg(long, value_name = "FILE")]
        realizer: Option<PathBuf>,
        /// TOML file with bound, fuel, set_cap, block_cap and interps.
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

fn read(path: &Path) -> Result<String, PipelineError> {
    fs::read_to_string(path).map_err(|e| PipelineError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn check(paths: &[PathBuf]) -> Result<bool, PipelineError> {
    let mut ok = true;
    for p in paths {
        let pf = load_proof(p)?;
        match pf.check() {
            Ok(c) => println!("{}: ok {}", pf.theorem, c.sequent()),
            Err(e) => {
                ok = false;
                eprintln!("{}: rejected: {e}", pf.theorem);
            }
        }
    }
    Ok(ok)
}

fn extract_cmd(path: &Path, interp: InterpName, out: Option<&Path>) -> Result<bool, PipelineError> {
    let pf = load_proof(path)?;
    let checked = match pf.check() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{}: rejected: {e}", pf.theorem);
            return Ok(false);
        }
    };
    let e = match extract(&checked, &BaseInterpretation::new(interp)) {
        Ok(e) => e,
        Err(err) => {
            eprintln!("{} {interp}: {err}", pf.theorem);
            return Ok(false);
        }
    };
    let text = format!("{}\n", RealizerFile::from_extraction(&pf.theorem, &e));
    match out {
        Some(o) => fs::write(o, text).map_err(|err| PipelineError::Io {
            path: o.display().to_string(),
            message: err.to_string(),
        })?,
        None => print!("{text}"),
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    paths: &[PathBuf],
    all: Option<&Path>,
    interp: &str,
    bound: Option<u64>,
    fuel: Option<u64>,
    report: ReportFormat,
    realizer: Option<&Path>,
    config: Option<&Path>,
) -> Result<bool, PipelineError> {
    let mut cfg = match config {
        Some(c) => Config::from_toml(&read(c)?)?,
        None => Config::default(),
    };
    if let Some(b) = bound {
        cfg.bound = b;
    }
    if let Some(f) = fuel {
        cfg.fuel = f;
    }
    if interp != "all" {
        let name: InterpName = interp
            .parse()
            .map_err(|e: unireal::interp::InterpError| PipelineError::Config(e.to_string()))?;
        cfg.interps = vec![name];
    }
    let mut files = paths.to_vec();
    if let Some(dir) = all {
        files.extend(proof_files(dir)?);
    }
    if files.is_empty() {
        return Err(PipelineError::Config("no proof files given".into()));
    }
    let proofs = files
        .iter()
        .map(|f| load_proof(f))
        .collect::<Result<Vec<_>, _>>()?;
    let reports: Vec<Report> = match realizer {
        Some(r) => {
            let rf = RealizerFile::parse(&read(r)?)?;
            let [pf] = proofs.as_slice() else {
                return Err(PipelineError::Config(
                    "--realizer takes exactly one proof file".into(),
                ));
            };
            if interp != "all" && cfg.interps != [rf.interp] {
                return Err(PipelineError::Config(format!(
                    "realizer is for {}, not {interp}",
                    rf.interp
                )));
            }
            vec![verify_proof(pf, rf.interp, &cfg, Some(&rf.terms))]
        }
        None => verify_all(&proofs, &cfg),
    };
    match report {
        ReportFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&reports).expect("reports serialize")
        ),
        ReportFormat::Text => {
            for r in &reports {
                println!("{r}");
            }
        }
    }
    Ok(reports
        .iter()
        .all(|r| matches!(r.verdict, Status::Holds | Status::Unsupported)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { paths } => check(paths),
        Command::Extract { path, interp, out } => extract_cmd(path, *interp, out.as_deref()),
        Command::Verify {
            paths,
            all,
            interp,
            bound,
            fuel,
            report,
            realizer,
            config,
        } => verify_cmd(
            paths,
            all.as_deref(),
            interp,
            *bound,
            *fuel,
            *report,
            realizer.as_deref(),
            config.as_deref(),
        ),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
