//! Uniform policy sampling over a search space of augmentations.
//!
//! A policy is `n` distinct kinds drawn uniformly without replacement, each
//! paired with the magnitude configured for it in the search space, and
//! applied in the order they were drawn.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::augment::{self, AugmentationKind, MagnitudeSpec};
use crate::error::{Error, Result};
use crate::rng::{fnv1a64, splitmix64, RandomSource};
use crate::signal::Waveform;

/// Policy size when none is configured.
pub const DEFAULT_N: usize = 2;

/// One enabled kind with the magnitude it is applied at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceEntry {
    pub spec: MagnitudeSpec,
    pub magnitude: f64,
}

impl SpaceEntry {
    pub fn kind(&self) -> AugmentationKind {
        self.spec.kind
    }
}

/// Enabled kinds in canonical order, no duplicates, never empty.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    entries: Vec<SpaceEntry>,
}

impl Default for SearchSpace {
    fn default() -> Self {
        Self {
            entries: AugmentationKind::DEFAULT
                .iter()
                .map(|k| SpaceEntry {
                    spec: k.spec(),
                    magnitude: k.spec().default,
                })
                .collect(),
        }
    }
}

impl SearchSpace {
    /// Build from `(kind, magnitude)` pairs in any order.
    pub fn new(items: impl IntoIterator<Item = (AugmentationKind, f64)>) -> Result<Self> {
        let mut entries: Vec<SpaceEntry> = Vec::new();
        for (kind, magnitude) in items {
            if entries.iter().any(|e| e.kind() == kind) {
                return Err(Error::DuplicateKind(kind));
            }
            let spec = kind.spec();
            spec.check(magnitude)?;
            entries.push(SpaceEntry { spec, magnitude });
        }
        if entries.is_empty() {
            return Err(Error::EmptySearchSpace);
        }
        entries.sort_by_key(|e| e.kind());
        Ok(Self { entries })
    }

    /// Every kind at its default magnitude.
    pub fn all() -> Self {
        Self::new(AugmentationKind::ALL.iter().map(|k| (*k, k.spec().default)))
            .expect("defaults are valid")
    }

    pub fn entries(&self) -> &[SpaceEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn kinds(&self) -> impl Iterator<Item = AugmentationKind> + '_ {
        self.entries.iter().map(|e| e.kind())
    }
}

/// One configured augmentation, as it appears in a config document.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AugmentationSetting {
    pub kind: String,
    pub magnitude: Option<f64>,
    /// Normalised strength in `[0, 1]`, mapped onto the kind's range.
    pub level: Option<f64>,
}

/// Search-space part of a config document. `None` means the default space.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpaceConfig {
    pub augmentations: Option<Vec<AugmentationSetting>>,
}

/// Resolve a config into a search space.
pub fn space_from_config(cfg: &SpaceConfig) -> Result<SearchSpace> {
    let Some(settings) = &cfg.augmentations else {
        return Ok(SearchSpace::default());
    };
    let mut items = Vec::with_capacity(settings.len());
    for s in settings {
        let kind: AugmentationKind = s.kind.parse()?;
        let spec = kind.spec();
        let magnitude = match (s.magnitude, s.level) {
            (Some(_), Some(_)) => return Err(Error::ConflictingMagnitude(kind)),
            (Some(m), None) => spec.check(m)?,
            (None, Some(level)) => spec.from_level(level)?,
            (None, None) => spec.default,
        };
        items.push((kind, magnitude));
    }
    SearchSpace::new(items)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicyStep {
    pub kind: AugmentationKind,
    pub magnitude: f64,
}

/// Ordered augmentation steps.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Policy {
    steps: Vec<PolicyStep>,
}

impl Policy {
    pub fn new(steps: Vec<PolicyStep>) -> Result<Self> {
        for s in &steps {
            s.kind.spec().check(s.magnitude)?;
        }
        Ok(Self { steps })
    }

    pub fn steps(&self) -> &[PolicyStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// `kind:magnitude` pairs joined by commas; shortest round-trip formatting.
impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", s.kind, s.magnitude)?;
        }
        Ok(())
    }
}

/// Parses `"stretch:1.4,noise:20"`. A bare kind name takes its default
/// magnitude; the empty string is the empty policy.
impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Policy::default());
        }
        let mut steps = Vec::new();
        for part in s.split(',') {
            let (name, magnitude) = match part.split_once(':') {
                Some((name, m)) => (name.trim(), Some(m.trim())),
                None => (part.trim(), None),
            };
            let kind: AugmentationKind = name.parse()?;
            let magnitude = match magnitude {
                Some(m) => m
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidParams("policy magnitude is not a number"))?,
                None => kind.spec().default,
            };
            steps.push(PolicyStep { kind, magnitude });
        }
        Policy::new(steps)
    }
}

/// Draw `n` distinct kinds uniformly from `space`.
///
/// Partial Fisher-Yates over the canonical entry order: for `i in 0..n`,
/// swap position `i` with `i + next_below(len - i)`; the first `n` positions
/// are the policy, in that order. Consumes exactly `n` draws.
pub fn sample_policy(space: &SearchSpace, n: usize, rng: &mut RandomSource) -> Result<Policy> {
    let len = space.len();
    if n > len {
        return Err(Error::InvalidN { n, len });
    }
    let mut order: Vec<&SpaceEntry> = space.entries.iter().collect();
    for i in 0..n {
        let j = i + rng.next_below((len - i) as u64) as usize;
        order.swap(i, j);
    }
    Ok(Policy {
        steps: order[..n]
            .iter()
            .map(|e| PolicyStep {
                kind: e.kind(),
                magnitude: e.magnitude,
            })
            .collect(),
    })
}

/// Apply the steps in order.
///
/// Each step gets its own stream forked from `rng` (one parent draw per
/// step), so how many draws one operator uses never shifts what the next one
/// sees. Any step error aborts the whole application.
pub fn apply_policy(w: &Waveform, p: &Policy, rng: &mut RandomSource) -> Result<Waveform> {
    let mut current = w.clone();
    for step in &p.steps {
        let mut child = rng.fork();
        current = augment::apply(step.kind, &current, step.magnitude, &mut child)?;
    }
    Ok(current)
}

const APPLICATION_SALT: u64 = 0xD1B5_4A32_D192_ED03;

/// Stream used to sample the policy for a work item seed.
pub fn sampling_stream(seed: u64) -> RandomSource {
    RandomSource::new(seed)
}

/// Stream used to apply a policy for a work item seed. Independent of the
/// sampling stream, so an explicit policy replayed with the same seed
/// reproduces a sampled run exactly.
pub fn application_stream(seed: u64) -> RandomSource {
    RandomSource::new(splitmix64(seed ^ APPLICATION_SALT))
}

/// Sample a policy from `seed` and apply it.
pub fn augment_with_seed(
    w: &Waveform,
    space: &SearchSpace,
    n: usize,
    seed: u64,
) -> Result<(Policy, Waveform)> {
    let policy = sample_policy(space, n, &mut sampling_stream(seed))?;
    let out = apply_policy(w, &policy, &mut application_stream(seed))?;
    Ok((policy, out))
}

/// Per-(file, copy) seed derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedPlan {
    pub master_seed: u64,
}

impl SeedPlan {
    pub fn new(master_seed: u64) -> Self {
        Self { master_seed }
    }

    /// `splitmix64(fnv1a64(path) ^ master ^ copy * 0x9E3779B97F4A7C15)`.
    pub fn derive(&self, path: &str, copy_index: u64) -> u64 {
        splitmix64(
            fnv1a64(path.as_bytes())
                ^ self.master_seed
                ^ copy_index.wrapping_mul(0x9E37_79B9_7F4A_7C15),
        )
    }
}
