//! Batch augmentation and feature export.
//!
//! Work is split per record and run on a bounded rayon pool. Each
//! (record, copy) pair gets its own seed from [`SeedPlan`], and results are
//! merged back in record order, so output bytes do not depend on the worker
//! count.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wavaug_core::dsp::mel_features;
use wavaug_core::policy::{application_stream, apply_policy, sample_policy, sampling_stream};
use wavaug_core::{MelParams, Policy, PolicyStep, SearchSpace, SeedPlan};

use crate::araf;
use crate::config::ResizeSpec;
use crate::dataset::{find_wavs, DatasetManifest, Record};
use crate::error::{Error, Result};
use crate::png;
use crate::wav::{read_wav, write_wav};

pub const MANIFEST_FILE: &str = "manifest.jsonl";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub kind: String,
    pub magnitude: f64,
}

/// One line of `manifest.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestLine {
    pub source: String,
    pub output: String,
    pub label: String,
    pub steps: Vec<StepRecord>,
    pub seed: u64,
}

impl ManifestLine {
    pub fn policy(&self) -> Result<Policy> {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                Ok(PolicyStep {
                    kind: s.kind.parse()?,
                    magnitude: s.magnitude,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Policy::new(steps)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub path: String,
    pub copy: Option<u32>,
    pub error: String,
}

impl Failure {
    fn new(path: &str, copy: Option<u32>, e: &Error) -> Self {
        Self {
            path: path.to_string(),
            copy,
            error: format!("{}: {e}", e.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub inputs_processed: usize,
    pub outputs_written: usize,
    pub failures: Vec<Failure>,
    pub wall_time: f64,
    pub master_seed: u64,
}

#[derive(Debug, Clone)]
pub struct AugmentOptions {
    pub space: SearchSpace,
    pub n: usize,
    pub copies: u32,
    pub seed_plan: SeedPlan,
    pub workers: usize,
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(wavaug_core::Error::InvalidParams("workers must be at least 1").into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))
}

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

fn file_stem(rel: &str) -> &str {
    let name = rel.rsplit('/').next().unwrap_or(rel);
    name.rsplit_once('.').map_or(name, |(stem, _)| stem)
}

/// Relative output path of one augmented copy.
pub fn output_name(record: &Record, copy: u32) -> String {
    format!(
        "{}/{}__c{copy}.wav",
        record.label,
        file_stem(&record.source_path)
    )
}

#[derive(Default)]
struct RecordOutcome {
    lines: Vec<ManifestLine>,
    failures: Vec<Failure>,
}

fn augment_record(
    manifest: &DatasetManifest,
    record: &Record,
    opts: &AugmentOptions,
    out_dir: &Path,
) -> RecordOutcome {
    let mut outcome = RecordOutcome::default();
    let input = match read_wav(manifest.absolute(record)) {
        Ok(w) => w,
        Err(e) => {
            outcome.failures = (0..opts.copies)
                .map(|c| Failure::new(&record.source_path, Some(c), &e))
                .collect();
            return outcome;
        }
    };
    for copy in 0..opts.copies {
        let seed = opts.seed_plan.derive(&record.source_path, copy as u64);
        let output = output_name(record, copy);
        let result = (|| -> Result<Policy> {
            let policy = sample_policy(&opts.space, opts.n, &mut sampling_stream(seed))?;
            let out = apply_policy(&input, &policy, &mut application_stream(seed))?;
            let path = out_dir.join(&output);
            create_dir(path.parent().expect("output has a label directory"))?;
            write_wav(&path, &out)?;
            Ok(policy)
        })();
        match result {
            Ok(policy) => outcome.lines.push(ManifestLine {
                source: record.source_path.clone(),
                output,
                label: record.label.clone(),
                steps: policy
                    .steps()
                    .iter()
                    .map(|s| StepRecord {
                        kind: s.kind.name().to_string(),
                        magnitude: s.magnitude,
                    })
                    .collect(),
                seed,
            }),
            Err(e) => outcome
                .failures
                .push(Failure::new(&record.source_path, Some(copy), &e)),
        }
    }
    outcome
}

/// Augment every record `copies` times into `out_dir` and write
/// `manifest.jsonl`.
pub fn run_augment(
    manifest: &DatasetManifest,
    opts: &AugmentOptions,
    out_dir: &Path,
) -> Result<RunReport> {
    let started = Instant::now();
    if opts.copies == 0 {
        return Err(wavaug_core::Error::InvalidParams("copies must be at least 1").into());
    }
    if opts.n > opts.space.len() {
        return Err(wavaug_core::Error::InvalidN {
            n: opts.n,
            len: opts.space.len(),
        }
        .into());
    }
    create_dir(out_dir)?;
    let outcomes: Vec<RecordOutcome> = pool(opts.workers)?.install(|| {
        manifest
            .records
            .par_iter()
            .map(|r| augment_record(manifest, r, opts, out_dir))
            .collect()
    });

    let manifest_path = out_dir.join(MANIFEST_FILE);
    let file = File::create(&manifest_path).map_err(|e| Error::io(&manifest_path, e))?;
    let mut writer = BufWriter::new(file);
    let mut report = RunReport {
        inputs_processed: manifest.len(),
        outputs_written: 0,
        failures: Vec::new(),
        wall_time: 0.0,
        master_seed: opts.seed_plan.master_seed,
    };
    for outcome in outcomes {
        for line in &outcome.lines {
            let json = serde_json::to_string(line).expect("manifest lines serialize");
            writeln!(writer, "{json}").map_err(|e| Error::io(&manifest_path, e))?;
        }
        report.outputs_written += outcome.lines.len();
        report.failures.extend(outcome.failures);
    }
    writer.flush().map_err(|e| Error::io(&manifest_path, e))?;
    report.wall_time = started.elapsed().as_secs_f64();
    Ok(report)
}

pub fn read_manifest(path: impl AsRef<Path>) -> Result<Vec<ManifestLine>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut lines = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed = serde_json::from_str(&line)
            .map_err(|e| Error::Config(format!("{}:{}: {e}", path.display(), i + 1)))?;
        lines.push(parsed);
    }
    Ok(lines)
}

#[derive(Debug, Clone)]
pub struct FeatureOptions {
    pub mel: MelParams,
    pub resize: Option<ResizeSpec>,
    pub png: bool,
    pub workers: usize,
}

impl Default for FeatureOptions {
    fn default() -> Self {
        Self {
            mel: MelParams::default(),
            resize: Some(ResizeSpec::default()),
            png: false,
            workers: 1,
        }
    }
}

/// Where `run_features` finds its WAVs.
#[derive(Debug, Clone)]
pub enum FeatureInput {
    /// Every `.wav` under a directory.
    Dir(PathBuf),
    /// The outputs listed in an augmentation `manifest.jsonl`.
    Manifest(PathBuf),
}

impl FeatureInput {
    pub fn from_path(path: impl Into<PathBuf>) -> Self {
        let path = path.into();
        if path.is_file() && path.extension().is_some_and(|e| e == "jsonl") {
            FeatureInput::Manifest(path)
        } else {
            FeatureInput::Dir(path)
        }
    }

    /// `(base directory, relative wav paths)`.
    fn resolve(&self) -> Result<(PathBuf, Vec<String>)> {
        match self {
            FeatureInput::Dir(dir) => {
                if !dir.is_dir() {
                    return Err(Error::io(
                        dir,
                        std::io::Error::new(std::io::ErrorKind::NotFound, "not a directory"),
                    ));
                }
                Ok((dir.clone(), find_wavs(dir)?))
            }
            FeatureInput::Manifest(path) => {
                let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
                let files = read_manifest(path)?.into_iter().map(|l| l.output).collect();
                Ok((base, files))
            }
        }
    }
}

fn replace_extension(rel: &str, ext: &str) -> String {
    let (dir, name) = match rel.rsplit_once('/') {
        Some((d, n)) => (Some(d), n),
        None => (None, rel),
    };
    let stem = name.rsplit_once('.').map_or(name, |(s, _)| s);
    match dir {
        Some(d) => format!("{d}/{stem}.{ext}"),
        None => format!("{stem}.{ext}"),
    }
}

fn feature_file(base: &Path, rel: &str, opts: &FeatureOptions, out_dir: &Path) -> Result<()> {
    let w = read_wav(base.join(rel))?;
    let img = mel_features(&w, &opts.mel, opts.resize.map(|r| (r.rows, r.cols)))?;
    let target = out_dir.join(replace_extension(rel, "araf"));
    create_dir(target.parent().unwrap_or(out_dir))?;
    araf::write(&target, &araf::Tensor::from(&img))?;
    if opts.png {
        png::write_preview(out_dir.join(replace_extension(rel, "png")), &img)?;
    }
    Ok(())
}

/// Mel features for every input WAV, mirrored into `out_dir` as `.araf`
/// (and `.png` when asked).
pub fn run_features(
    input: &FeatureInput,
    opts: &FeatureOptions,
    out_dir: &Path,
) -> Result<RunReport> {
    let started = Instant::now();
    let (base, files) = input.resolve()?;
    create_dir(out_dir)?;
    let results: Vec<Option<Failure>> = pool(opts.workers)?.install(|| {
        files
            .par_iter()
            .map(|rel| {
                feature_file(&base, rel, opts, out_dir)
                    .err()
                    .map(|e| Failure::new(rel, None, &e))
            })
            .collect()
    });
    let failures: Vec<Failure> = results.into_iter().flatten().collect();
    Ok(RunReport {
        inputs_processed: files.len(),
        outputs_written: files.len() - failures.len(),
        failures,
        wall_time: started.elapsed().as_secs_f64(),
        master_seed: 0,
    })
}
