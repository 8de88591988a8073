use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use t2hflts::entropy::SweepCase;
use t2hflts::envelope::EnvelopeBuilder;
use t2hflts::pipeline::{self, Config, Format, RunOptions, CONFIG_ENV};
use t2hflts::{parse_cle, Error};

#[derive(Parser)]
#[command(name = "t2hflts", version, about = "Linguistic group decision making with T2 HFLTSs")]
struct Cli {
    /// Configuration file (JSON).
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Topsis,
    Wlq,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Table,
    Geometry,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and show its term range.
    Parse {
        phrase: String,
        #[arg(long)]
        lts: PathBuf,
    },
    /// Build the representation of an expression.
    Envelope {
        phrase: String,
        #[arg(long)]
        lts: PathBuf,
        /// Print sampled `x,lower,upper` rows instead of the summary.
        #[arg(long)]
        geometry: bool,
    },
    /// Run the full decision pipeline on a survey.
    Decide {
        #[arg(long)]
        survey: PathBuf,
        #[arg(long)]
        lts: PathBuf,
        /// Write the result here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
    /// Entropy sweep: case 1 grows {s0..sk}, case 2 slides a singleton.
    Sweep {
        #[arg(long)]
        lts: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        case: u8,
    },
    /// Run a comparison method on a survey.
    Baseline {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        survey: PathBuf,
        #[arg(long)]
        lts: PathBuf,
    },
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(v).map_err(|source| Error::Json {
        path: "<output>".into(),
        source,
    })
}

fn execute(cli: Cli) -> Result<Vec<u8>, Error> {
    let cfg = Config::resolve(cli.config.as_deref())?;
    let load = |p: &Path| pipeline::load_lts(p);
    match cli.command {
        Command::Parse { phrase, lts } => {
            let lts = load(&lts)?;
            let cle = parse_cle(&phrase, &lts)?;
            let h = cle.transform(lts.g())?;
            let labels: Vec<&str> = h.indices().map(|k| lts.terms()[k].label.as_str()).collect();
            let out = serde_json::json!({
                "cle": cle,
                "canonical": cle.render(&lts)?,
                "indices": h.indices().collect::<Vec<_>>(),
                "terms": labels,
            });
            Ok(format!("{}\n", to_json(&out)?).into_bytes())
        }
        Command::Envelope { phrase, lts, geometry } => {
            let lts = load(&lts)?;
            let builder = EnvelopeBuilder::new(&lts, cfg.envelope_config()?)?;
            let cle = parse_cle(&phrase, &lts)?;
            let rep = builder.represent(&cle)?;
            if geometry {
                return Ok(pipeline::fou_csv(&rep.fou(&builder.config().grid)).into_bytes());
            }
            let nine = t2hflts::baselines::NineParamIT2::from_representation(&rep);
            let entropy = builder.entropy(&cle)?;
            let out = serde_json::json!({
                "cle": cle,
                "envelope": rep.is_envelope(),
                "umf": nine.upper,
                "lmf": nine.lower,
                "lmf_height": nine.lower_heights[0],
                "entropy": entropy,
            });
            Ok(format!("{}\n", to_json(&out)?).into_bytes())
        }
        Command::Decide { survey, lts, out, format } => {
            let lts = load(&lts)?;
            let survey = pipeline::load_survey(&survey)?;
            let format = match format {
                OutFormat::Json => Format::Json,
                OutFormat::Table => Format::Table,
                OutFormat::Geometry => Format::Geometry,
            };
            let opts = RunOptions {
                geometry: format == Format::Geometry,
            };
            let result = pipeline::run_with(&survey, &lts, &cfg, opts)?;
            let bytes = pipeline::emit(&result, format)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, &bytes).map_err(|source| Error::Io {
                        path: path.display().to_string(),
                        source,
                    })?;
                    Ok(Vec::new())
                }
                None => Ok(bytes),
            }
        }
        Command::Sweep { lts, case } => {
            let lts = load(&lts)?;
            let case = SweepCase::from_number(case).expect("clap restricts the case");
            Ok(pipeline::sweep_csv(&pipeline::sweep(&lts, &cfg, case)?).into_bytes())
        }
        Command::Baseline { method, survey, lts } => {
            let lts = load(&lts)?;
            let survey = pipeline::load_survey(&survey)?;
            let text = match method {
                Method::Topsis => to_json(&pipeline::run_topsis(&survey, &lts, &cfg)?)?,
                Method::Wlq => to_json(&pipeline::run_wlq(&survey, &lts, &cfg)?)?,
            };
            Ok(format!("{text}\n").into_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(bytes) => {
            let _ = std::io::stdout().write_all(&bytes);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let top = e.to_string();
            eprintln!("error: {top}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                let msg = s.to_string();
                if !top.contains(&msg) {
                    eprintln!("  caused by: {msg}");
                }
                source = s.source();
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
