//! Dataset ingestion.
//!
//! Three layouts are understood:
//!
//! * `fsdd`: files named `{digit}_{speaker}_{index}.wav`; the label is the
//!   leading digit token.
//! * `urbansound8k`: files under `fold1` .. `fold10`; labels come from the
//!   `class` column of the metadata CSV, keyed by `slice_file_name`.
//! * `flat`: `<root>/<label>/<file>.wav`; the label is the parent directory.
//!
//! Records are sorted by their path relative to the root, with `/` as the
//! separator, so a manifest is identical on every platform.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use walkdir::WalkDir;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Layout {
    Fsdd,
    #[value(name = "urbansound8k")]
    UrbanSound8k,
    Flat,
}

impl Layout {
    pub fn name(self) -> &'static str {
        match self {
            Layout::Fsdd => "fsdd",
            Layout::UrbanSound8k => "urbansound8k",
            Layout::Flat => "flat",
        }
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Layout {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fsdd" => Ok(Layout::Fsdd),
            "urbansound8k" => Ok(Layout::UrbanSound8k),
            "flat" => Ok(Layout::Flat),
            _ => Err(format!("unknown layout {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    /// Path relative to the dataset root, `/`-separated.
    pub source_path: String,
    pub label: String,
    pub fold: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetManifest {
    pub root: PathBuf,
    pub layout: Layout,
    pub records: Vec<Record>,
}

impl DatasetManifest {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn absolute(&self, record: &Record) -> PathBuf {
        self.root.join(&record.source_path)
    }
}

/// Every `.wav` under `root` (case-insensitive extension), as sorted
/// `/`-separated relative paths.
pub fn find_wavs(root: &Path) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for entry in WalkDir::new(root).follow_links(true) {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(root).to_path_buf();
            Error::io(path, e.into())
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let is_wav = entry
            .path()
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("wav"));
        if !is_wav {
            continue;
        }
        let rel = entry.path().strip_prefix(root).unwrap_or(entry.path());
        let parts: Vec<String> = rel
            .components()
            .map(|c| c.as_os_str().to_string_lossy().into_owned())
            .collect();
        out.push(parts.join("/"));
    }
    out.sort();
    Ok(out)
}

pub fn ingest(root: impl AsRef<Path>, layout: Layout) -> Result<DatasetManifest> {
    let root = root.as_ref();
    if !root.is_dir() {
        return Err(Error::io(
            root,
            std::io::Error::new(
                std::io::ErrorKind::NotFound,
                "dataset root is not a directory",
            ),
        ));
    }
    let files = find_wavs(root)?;
    let records = match layout {
        Layout::Fsdd => files
            .iter()
            .map(|f| fsdd_record(root, f))
            .collect::<Result<_>>()?,
        Layout::Flat => files
            .iter()
            .map(|f| flat_record(root, f))
            .collect::<Result<_>>()?,
        Layout::UrbanSound8k if files.is_empty() => Vec::new(),
        Layout::UrbanSound8k => {
            let classes = load_urbansound_metadata(root)?;
            files
                .iter()
                .map(|f| urbansound_record(root, f, &classes))
                .collect::<Result<_>>()?
        }
    };
    Ok(DatasetManifest {
        root: root.to_path_buf(),
        layout,
        records,
    })
}

fn file_name(rel: &str) -> &str {
    rel.rsplit('/').next().unwrap_or(rel)
}

fn parent_name(rel: &str) -> Option<&str> {
    let mut parts = rel.rsplit('/');
    parts.next();
    parts.next()
}

fn mismatch(root: &Path, rel: &str, layout: Layout, reason: &'static str) -> Error {
    Error::LayoutMismatch {
        path: root.join(rel),
        layout: layout.name(),
        reason,
    }
}

fn fsdd_record(root: &Path, rel: &str) -> Result<Record> {
    let name = file_name(rel);
    let stem = &name[..name.len() - 4];
    let tokens: Vec<&str> = stem.split('_').collect();
    let ok = tokens.len() == 3
        && tokens.iter().all(|t| !t.is_empty())
        && tokens[0].bytes().all(|b| b.is_ascii_digit())
        && tokens[2].bytes().all(|b| b.is_ascii_digit());
    if !ok {
        return Err(mismatch(
            root,
            rel,
            Layout::Fsdd,
            "expected {digit}_{speaker}_{index}.wav",
        ));
    }
    Ok(Record {
        source_path: rel.to_string(),
        label: tokens[0].to_string(),
        fold: None,
    })
}

fn flat_record(root: &Path, rel: &str) -> Result<Record> {
    match parent_name(rel) {
        Some(label) if !label.is_empty() => Ok(Record {
            source_path: rel.to_string(),
            label: label.to_string(),
            fold: None,
        }),
        _ => Err(mismatch(
            root,
            rel,
            Layout::Flat,
            "expected <label>/<file>.wav",
        )),
    }
}

fn parse_fold(dir: &str) -> Option<u8> {
    let n: u8 = dir.strip_prefix("fold")?.parse().ok()?;
    (1..=10).contains(&n).then_some(n)
}

fn urbansound_record(root: &Path, rel: &str, classes: &HashMap<String, String>) -> Result<Record> {
    let fold = parent_name(rel).and_then(parse_fold).ok_or_else(|| {
        mismatch(
            root,
            rel,
            Layout::UrbanSound8k,
            "expected fold1..fold10/<file>.wav",
        )
    })?;
    let name = file_name(rel);
    let label = classes
        .get(name)
        .filter(|c| !c.is_empty())
        .ok_or_else(|| Error::MissingMetadata(format!("no class for {name}")))?;
    Ok(Record {
        source_path: rel.to_string(),
        label: label.clone(),
        fold: Some(fold),
    })
}

/// Locate the metadata CSV: `UrbanSound8K.csv` in the root or a `metadata`
/// directory beside or inside it, else the first CSV in those places.
fn find_metadata(root: &Path) -> Option<PathBuf> {
    let mut dirs = vec![root.to_path_buf(), root.join("metadata")];
    if let Some(parent) = root.parent() {
        dirs.push(parent.join("metadata"));
    }
    for dir in &dirs {
        let named = dir.join("UrbanSound8K.csv");
        if named.is_file() {
            return Some(named);
        }
    }
    for dir in &dirs {
        let Ok(entries) = std::fs::read_dir(dir) else {
            continue;
        };
        let mut csvs: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")))
            .collect();
        csvs.sort();
        if let Some(first) = csvs.into_iter().next() {
            return Some(first);
        }
    }
    None
}

fn load_urbansound_metadata(root: &Path) -> Result<HashMap<String, String>> {
    let path = find_metadata(root).ok_or_else(|| {
        Error::MissingMetadata(format!("no metadata CSV near {}", root.display()))
    })?;
    let bad = |msg: String| Error::MissingMetadata(format!("{}: {msg}", path.display()));
    let mut reader = csv::Reader::from_path(&path).map_err(|e| bad(e.to_string()))?;
    let headers = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| bad(format!("no `{name}` column")))
    };
    let (file_col, class_col) = (col("slice_file_name")?, col("class")?);
    let mut map = HashMap::new();
    for row in reader.records() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        if let (Some(f), Some(c)) = (row.get(file_col), row.get(class_col)) {
            map.insert(f.trim().to_string(), c.trim().to_string());
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn touch(root: &Path, rel: &str) {
        let p = root.join(rel);
        fs::create_dir_all(p.parent().unwrap()).unwrap();
        fs::write(p, b"").unwrap();
    }

    #[test]
    fn fsdd_labels() {
        let dir = tempfile::tempdir().unwrap();
        touch(dir.path(), "7_jackson_0.wav");
        touch(dir.path(), "0_theo_12.WAV");
        touch(dir.path(), "notes.txt");
        let m = ingest(dir.path(), Layout::Fsdd).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.records[0].source_path, "0_theo_12.WAV");
        assert_eq!(m.records[0].label, "0");
        assert_eq!(m.records[1].label, "7");
        assert!(m.records.iter().all(|r| r.fold.is_none()));
    }

    #[test]
    fn fsdd_rejects_other_names() {
        let dir = tempfile::tempdir().unwrap();
        touch(dir.path(), "hello.wav");
        let e = ingest(dir.path(), Layout::Fsdd).unwrap_err();
        assert_eq!(e.name(), "LayoutMismatch");
    }

    #[test]
    fn urbansound_folds() {
        let dir = tempfile::tempdir().unwrap();
        touch(dir.path(), "fold3/x.wav");
        touch(dir.path(), "fold10/y.wav");
        fs::write(
            dir.path().join("UrbanSound8K.csv"),
            "slice_file_name,fsID,start,end,salience,fold,classID,class\n\
             x.wav,1,0,4,1,3,8,siren\ny.wav,2,0,4,1,10,3,dog_bark\n",
        )
        .unwrap();
        let m = ingest(dir.path(), Layout::UrbanSound8k).unwrap();
        assert_eq!(
            m.records,
            vec![
                Record {
                    source_path: "fold10/y.wav".into(),
                    label: "dog_bark".into(),
                    fold: Some(10)
                },
                Record {
                    source_path: "fold3/x.wav".into(),
                    label: "siren".into(),
                    fold: Some(3)
                },
            ]
        );
    }

    #[test]
    fn urbansound_metadata_beside_audio() {
        let dir = tempfile::tempdir().unwrap();
        touch(dir.path(), "audio/fold1/a.wav");
        fs::create_dir_all(dir.path().join("metadata")).unwrap();
        fs::write(
            dir.path().join("metadata/meta.csv"),
            "slice_file_name,class\na.wav,engine_idling\n",
        )
        .unwrap();
        let m = ingest(dir.path().join("audio"), Layout::UrbanSound8k).unwrap();
        assert_eq!(m.records[0].label, "engine_idling");
        assert_eq!(m.records[0].fold, Some(1));
    }

    #[test]
    fn urbansound_errors() {
        let dir = tempfile::tempdir().unwrap();
        touch(dir.path(), "fold1/a.wav");
        assert_eq!(
            ingest(dir.path(), Layout::UrbanSound8k).unwrap_err().name(),
            "MissingMetadata"
        );
        fs::write(
            dir.path().join("UrbanSound8K.csv"),
            "slice_file_name,class\nb.wav,siren\n",
        )
        .unwrap();
        assert_eq!(
            ingest(dir.path(), Layout::UrbanSound8k).unwrap_err().name(),
            "MissingMetadata"
        );
        fs::write(
            dir.path().join("UrbanSound8K.csv"),
            "slice_file_name,class\na.wav,siren\nb.wav,siren\n",
        )
        .unwrap();
        touch(dir.path(), "fold11/b.wav");
        assert_eq!(
            ingest(dir.path(), Layout::UrbanSound8k).unwrap_err().name(),
            "LayoutMismatch"
        );
    }

    #[test]
    fn flat_labels() {
        let dir = tempfile::tempdir().unwrap();
        touch(dir.path(), "cat/1.wav");
        touch(dir.path(), "dog/sub/2.wav");
        let m = ingest(dir.path(), Layout::Flat).unwrap();
        let labels: Vec<_> = m.records.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, vec!["cat", "sub"]);
        touch(dir.path(), "loose.wav");
        assert_eq!(
            ingest(dir.path(), Layout::Flat).unwrap_err().name(),
            "LayoutMismatch"
        );
    }

    #[test]
    fn empty_directory() {
        let dir = tempfile::tempdir().unwrap();
        for layout in [Layout::Fsdd, Layout::UrbanSound8k, Layout::Flat] {
            assert!(ingest(dir.path(), layout).unwrap().is_empty());
        }
    }

    #[test]
    fn missing_root() {
        assert_eq!(
            ingest("/nonexistent/wavaug", Layout::Flat)
                .unwrap_err()
                .name(),
            "IoError"
        );
    }
}
