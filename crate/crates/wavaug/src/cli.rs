//! The `wavaug` command line.
//!
//! Exit codes: 0 on success, 1 when anything failed (including single items
//! of a batch), 2 on a usage or configuration error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use wavaug_core::policy::{
    application_stream, apply_policy, sample_policy, sampling_stream, DEFAULT_N,
};
use wavaug_core::{Policy, SearchSpace, SeedPlan};

use crate::batch::{
    run_augment, run_features, AugmentOptions, FeatureInput, FeatureOptions, RunReport, StepRecord,
};
use crate::config::{Config, ResizeSpec, SCHEMA_HELP};
use crate::dataset::{ingest, Layout};
use crate::error::Error;
use crate::wav::{read_wav, write_wav};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wavaug",
    version,
    about = "Seeded random audio augmentation and mel features"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a sampled policy as one JSON object.
    Sample(SampleArgs),
    /// Augment a dataset and write a manifest.
    Augment(AugmentArgs),
    /// Export mel-spectrogram features as ARAF tensors.
    Features(FeatureArgs),
    /// Apply an explicit policy to one file.
    Preview(PreviewArgs),
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AugmentArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_enum, default_value_t = Layout::Flat)]
    layout: Layout,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    copies: u32,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
}

#[derive(Debug, Args)]
struct FeatureArgs {
    /// A directory of WAVs or an augmentation `manifest.jsonl`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long)]
    n_fft: Option<usize>,
    #[arg(long)]
    hop: Option<usize>,
    #[arg(long)]
    n_mels: Option<usize>,
    /// Output image size, e.g. `32x32`.
    #[arg(long)]
    resize: Option<ResizeSpec>,
    #[arg(long)]
    png: bool,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
}

#[derive(Debug, Args)]
struct PreviewArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Steps as `kind:magnitude,kind:magnitude`.
    #[arg(long)]
    policy: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failed {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        Failed::Run(e)
    }
}

fn usage(e: impl std::fmt::Display) -> Failed {
    Failed::Usage(e.to_string())
}

fn load_config(path: Option<&Path>) -> Result<Config, Failed> {
    match path {
        Some(p) => Config::load(p).map_err(|e| match e {
            Error::Io { .. } => Failed::Run(e),
            other => usage(other),
        }),
        None => Ok(Config::default()),
    }
}

#[derive(Serialize)]
struct SampleOutput {
    seed: u64,
    n: usize,
    steps: Vec<StepRecord>,
}

fn steps_of(policy: &Policy) -> Vec<StepRecord> {
    policy
        .steps()
        .iter()
        .map(|s| StepRecord {
            kind: s.kind.name().to_string(),
            magnitude: s.magnitude,
        })
        .collect()
}

fn sample(args: SampleArgs) -> Result<i32, Failed> {
    let cfg = load_config(args.config.as_deref())?;
    let space = cfg.space().map_err(usage)?;
    let n = args.n.or(cfg.n).unwrap_or(DEFAULT_N);
    let seed = args.seed.or(cfg.seed).unwrap_or(0);
    let policy = sample_policy(&space, n, &mut sampling_stream(seed)).map_err(usage)?;
    let out = SampleOutput {
        seed,
        n,
        steps: steps_of(&policy),
    };
    println!(
        "{}",
        serde_json::to_string(&out).expect("policy serializes")
    );
    Ok(EXIT_OK)
}

fn report(r: &RunReport) -> i32 {
    println!("{}", serde_json::to_string(r).expect("report serializes"));
    for f in &r.failures {
        match f.copy {
            Some(c) => eprintln!("wavaug: {} (copy {c}): {}", f.path, f.error),
            None => eprintln!("wavaug: {}: {}", f.path, f.error),
        }
    }
    if r.failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

fn augment(args: AugmentArgs) -> Result<i32, Failed> {
    let cfg = load_config(args.config.as_deref())?;
    let space: SearchSpace = cfg.space().map_err(usage)?;
    let n = args.n.or(cfg.n).unwrap_or(DEFAULT_N);
    if n > space.len() {
        return Err(usage(wavaug_core::Error::InvalidN {
            n,
            len: space.len(),
        }));
    }
    let opts = AugmentOptions {
        space,
        n,
        copies: args.copies,
        seed_plan: SeedPlan::new(args.seed.or(cfg.seed).unwrap_or(0)),
        workers: args.workers as usize,
    };
    let manifest = ingest(&args.input, args.layout)?;
    Ok(report(&run_augment(&manifest, &opts, &args.output)?))
}

fn features(args: FeatureArgs) -> Result<i32, Failed> {
    let cfg = load_config(args.config.as_deref())?;
    let mut mel = cfg.mel_params();
    mel.n_fft = args.n_fft.unwrap_or(mel.n_fft);
    mel.hop = args.hop.unwrap_or(mel.hop);
    mel.n_mels = args.n_mels.unwrap_or(mel.n_mels);
    let opts = FeatureOptions {
        mel,
        resize: Some(args.resize.or(cfg.resize()).unwrap_or_default()),
        png: args.png,
        workers: args.workers as usize,
    };
    let input = FeatureInput::from_path(&args.input);
    Ok(report(&run_features(&input, &opts, &args.output)?))
}

fn preview(args: PreviewArgs) -> Result<i32, Failed> {
    let policy: Policy = args.policy.parse().map_err(usage)?;
    let w = read_wav(&args.input)?;
    let out = apply_policy(&w, &policy, &mut application_stream(args.seed)).map_err(Error::from)?;
    write_wav(&args.output, &out)?;
    Ok(EXIT_OK)
}

/// Parse `argv` (including the program name) and run; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Sample(a) => sample(a),
        Command::Augment(a) => augment(a),
        Command::Features(a) => features(a),
        Command::Preview(a) => preview(a),
    };
    match result {
        Ok(code) => code,
        Err(Failed::Usage(msg)) => {
            eprintln!("wavaug: {msg}\n\n{SCHEMA_HELP}");
            EXIT_USAGE
        }
        Err(Failed::Run(e)) => {
            eprintln!("wavaug: {}: {e}", e.name());
            EXIT_FAILURE
        }
    }
}
