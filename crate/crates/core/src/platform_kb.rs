//! Target-platform repository: component type registry, source-platform
//! function signatures, the header corpus and historical library selections.
//!
//! A repository is a directory holding three structured text files
//! (`components`, `source_functions`, `history`) plus a `headers/` directory
//! of raw `.h` files. The repository is immutable after load; only the
//! history store is mutated (single writer) and persisted atomically.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::recommender::token_multiset;

pub const COMPONENTS_FILE: &str = "components";
pub const SOURCE_FUNCTIONS_FILE: &str = "source_functions";
pub const HISTORY_FILE: &str = "history";
pub const HEADERS_DIR: &str = "headers";

#[derive(Debug, Error)]
pub enum RepoError {
    #[error("missing repository file: {path}")]
    MissingFile { path: PathBuf },
    #[error("{file}:{line}: malformed record: {message}")]
    MalformedRecord {
        file: PathBuf,
        line: usize,
        message: String,
    },
    #[error("duplicate match key {key:?} in {file}")]
    DuplicateMatchKey { key: String, file: PathBuf },
    #[error("failed to persist {path}: {source}")]
    PersistenceFailure {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// Functional classification of a hardware component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentType {
    Board,
    Input,
    Output,
    Passive,
}

impl std::fmt::Display for ComponentType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ComponentType::Board => "board",
            ComponentType::Input => "input",
            ComponentType::Output => "output",
            ComponentType::Passive => "passive",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinRole {
    pub role: String,
    pub count: u32,
}

/// One registry entry mapping Fritzing identifiers and titles to a
/// canonical component name and type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    #[serde(rename = "match")]
    pub match_keys: Vec<String>,
    pub name: String,
    #[serde(rename = "type")]
    pub ctype: ComponentType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pins: Option<Vec<PinRole>>,
}

/// A source-platform library function and its signature text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceFunctionRecord {
    pub name: String,
    pub signature: String,
    #[serde(rename = "header")]
    pub origin_header: String,
}

/// One header file of the target-platform corpus, tokenized at load time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeaderDocument {
    pub library_name: String,
    pub raw_text: String,
    pub token_multiset: BTreeMap<String, u32>,
}

impl HeaderDocument {
    pub fn new(library_name: String, raw_text: String) -> Self {
        let token_multiset = token_multiset(&raw_text);
        HeaderDocument {
            library_name,
            raw_text,
            token_multiset,
        }
    }
}

/// Counts of past library selections per component, persisted as a nested
/// text map. All mutations go through [`HistoryStore::record_selection`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HistoryStore {
    counts: BTreeMap<String, BTreeMap<String, u64>>,
}

impl HistoryStore {
    pub fn count(&self, component: &str, library: &str) -> u64 {
        self.counts
            .get(component)
            .and_then(|libs| libs.get(library))
            .copied()
            .unwrap_or(0)
    }

    /// Increments the selection count for (component, library) by exactly 1.
    pub fn record_selection(&mut self, component: &str, library: &str) {
        *self
            .counts
            .entry(component.to_string())
            .or_default()
            .entry(library.to_string())
            .or_insert(0) += 1;
    }

    pub fn components(&self) -> impl Iterator<Item = (&String, &BTreeMap<String, u64>)> {
        self.counts.iter()
    }

    pub fn load(path: &Path) -> Result<Self, RepoError> {
        let text = read_file(path)?;
        let counts: BTreeMap<String, BTreeMap<String, u64>> =
            toml::from_str(&text).map_err(|e| malformed(path, &text, &e))?;
        Ok(HistoryStore { counts })
    }

    /// Persists the store atomically (write to a temp file, then rename).
    pub fn save(&self, path: &Path) -> Result<(), RepoError> {
        let body = toml::to_string(&self.counts).expect("history serializes");
        write_atomic(path, &body)
    }
}

/// Board-level metadata for the target platform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlatformTarget {
    pub id: String,
    pub runtime_header: String,
    pub output_extension: String,
}

/// The loaded repository. Immutable after load and safe to share read-only.
#[derive(Debug, Clone, PartialEq)]
pub struct PlatformRepository {
    pub target: PlatformTarget,
    pub components: Vec<ComponentRecord>,
    pub source_functions: Vec<SourceFunctionRecord>,
    pub headers: Vec<HeaderDocument>,
    pub history: HistoryStore,
}

impl PlatformRepository {
    /// Resolves a Fritzing module identifier or component title to a
    /// registry record: first an exact match on any match key, then a
    /// case-insensitive substring match on the canonical name.
    pub fn lookup_component(&self, key: &str) -> Option<&ComponentRecord> {
        if let Some(record) = self
            .components
            .iter()
            .find(|r| r.match_keys.iter().any(|k| k == key))
        {
            return Some(record);
        }
        let key_lower = key.to_lowercase();
        self.components
            .iter()
            .find(|r| key_lower.contains(&r.name.to_lowercase()))
    }

    /// `None` means the component type is unknown; callers decide whether
    /// that is fatal.
    pub fn lookup_component_type(&self, key: &str) -> Option<ComponentType> {
        self.lookup_component(key).map(|r| r.ctype)
    }

    pub fn lookup_source_signature(&self, fn_name: &str) -> Option<&SourceFunctionRecord> {
        self.source_functions.iter().find(|r| r.name == fn_name)
    }

    /// Header names owned by the source platform; includes naming them are
    /// dropped during migration.
    pub fn origin_headers(&self) -> BTreeSet<&str> {
        self.source_functions
            .iter()
            .map(|r| r.origin_header.as_str())
            .collect()
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ComponentsFileModel {
    target: String,
    runtime_header: String,
    #[serde(default = "default_output_extension")]
    output_extension: String,
    #[serde(rename = "component", default)]
    components: Vec<ComponentRecord>,
}

fn default_output_extension() -> String {
    "ino".to_string()
}

#[derive(Debug, Serialize, Deserialize)]
struct SourceFunctionsFileModel {
    #[serde(rename = "function", default)]
    functions: Vec<SourceFunctionRecord>,
}

pub fn load_repository(dir: &Path) -> Result<PlatformRepository, RepoError> {
    let components_path = dir.join(COMPONENTS_FILE);
    let components_text = read_file(&components_path)?;
    let components_file: ComponentsFileModel = toml::from_str(&components_text)
        .map_err(|e| malformed(&components_path, &components_text, &e))?;
    validate_components(&components_file, &components_path, &components_text)?;

    let functions_path = dir.join(SOURCE_FUNCTIONS_FILE);
    let functions_text = read_file(&functions_path)?;
    let functions_file: SourceFunctionsFileModel = toml::from_str(&functions_text)
        .map_err(|e| malformed(&functions_path, &functions_text, &e))?;
    validate_functions(&functions_file, &functions_path, &functions_text)?;

    let history = HistoryStore::load(&dir.join(HISTORY_FILE))?;
    let headers = load_headers(&dir.join(HEADERS_DIR))?;

    Ok(PlatformRepository {
        target: PlatformTarget {
            id: components_file.target,
            runtime_header: components_file.runtime_header,
            output_extension: components_file.output_extension,
        },
        components: components_file.components,
        source_functions: functions_file.functions,
        headers,
        history,
    })
}

/// Writes all repository files under `dir`, creating it if needed.
/// `load_repository(save_repository(R))` is structurally equal to `R`
/// provided header names are unique and sorted (load sorts by file name).
pub fn save_repository(repo: &PlatformRepository, dir: &Path) -> Result<(), RepoError> {
    fs::create_dir_all(dir).map_err(|e| persistence(dir, e))?;
    let components_file = ComponentsFileModel {
        target: repo.target.id.clone(),
        runtime_header: repo.target.runtime_header.clone(),
        output_extension: repo.target.output_extension.clone(),
        components: repo.components.clone(),
    };
    write_atomic(
        &dir.join(COMPONENTS_FILE),
        &toml::to_string(&components_file).expect("components serialize"),
    )?;
    let functions_file = SourceFunctionsFileModel {
        functions: repo.source_functions.clone(),
    };
    write_atomic(
        &dir.join(SOURCE_FUNCTIONS_FILE),
        &toml::to_string(&functions_file).expect("functions serialize"),
    )?;
    repo.history.save(&dir.join(HISTORY_FILE))?;
    let headers_dir = dir.join(HEADERS_DIR);
    fs::create_dir_all(&headers_dir).map_err(|e| persistence(&headers_dir, e))?;
    for doc in &repo.headers {
        let path = headers_dir.join(format!("{}.h", doc.library_name));
        write_atomic(&path, &doc.raw_text)?;
    }
    Ok(())
}

fn load_headers(dir: &Path) -> Result<Vec<HeaderDocument>, RepoError> {
    let entries = fs::read_dir(dir).map_err(|e| {
        if e.kind() == io::ErrorKind::NotFound {
            RepoError::MissingFile {
                path: dir.to_path_buf(),
            }
        } else {
            RepoError::Io {
                path: dir.to_path_buf(),
                source: e,
            }
        }
    })?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "h"))
        .collect();
    paths.sort();
    let mut headers = Vec::with_capacity(paths.len());
    for path in paths {
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let text = read_file(&path)?;
        headers.push(HeaderDocument::new(stem, text));
    }
    Ok(headers)
}

fn validate_components(
    file: &ComponentsFileModel,
    path: &Path,
    text: &str,
) -> Result<(), RepoError> {
    let mut seen_keys: BTreeSet<&str> = BTreeSet::new();
    let mut board_seen = false;
    for (idx, record) in file.components.iter().enumerate() {
        if record.match_keys.is_empty() {
            return Err(RepoError::MalformedRecord {
                file: path.to_path_buf(),
                line: nth_record_line(text, idx),
                message: format!("component {:?} has no match keys", record.name),
            });
        }
        if record.name.is_empty() {
            return Err(RepoError::MalformedRecord {
                file: path.to_path_buf(),
                line: nth_record_line(text, idx),
                message: "component has an empty canonical name".to_string(),
            });
        }
        for key in &record.match_keys {
            if !seen_keys.insert(key) {
                return Err(RepoError::DuplicateMatchKey {
                    key: key.clone(),
                    file: path.to_path_buf(),
                });
            }
        }
        if record.ctype == ComponentType::Board {
            if board_seen {
                return Err(RepoError::MalformedRecord {
                    file: path.to_path_buf(),
                    line: nth_record_line(text, idx),
                    message: format!(
                        "component {:?} declares a second board for target {:?}",
                        record.name, file.target
                    ),
                });
            }
            board_seen = true;
        }
    }
    Ok(())
}

fn validate_functions(
    file: &SourceFunctionsFileModel,
    path: &Path,
    text: &str,
) -> Result<(), RepoError> {
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for (idx, record) in file.functions.iter().enumerate() {
        if !seen.insert(&record.name) {
            return Err(RepoError::MalformedRecord {
                file: path.to_path_buf(),
                line: nth_function_line(text, idx),
                message: format!("duplicate source function {:?}", record.name),
            });
        }
    }
    Ok(())
}

/// Line (1-based) of the `idx`-th `[[component]]` section header.
fn nth_record_line(text: &str, idx: usize) -> usize {
    nth_section_line(text, "[[component]]", idx)
}

fn nth_function_line(text: &str, idx: usize) -> usize {
    nth_section_line(text, "[[function]]", idx)
}

fn nth_section_line(text: &str, header: &str, idx: usize) -> usize {
    text.lines()
        .enumerate()
        .filter(|(_, l)| l.trim() == header)
        .nth(idx)
        .map(|(i, _)| i + 1)
        .unwrap_or(0)
}

fn read_file(path: &Path) -> Result<String, RepoError> {
    fs::read_to_string(path).map_err(|e| {
        if e.kind() == io::ErrorKind::NotFound {
            RepoError::MissingFile {
                path: path.to_path_buf(),
            }
        } else {
            RepoError::Io {
                path: path.to_path_buf(),
                source: e,
            }
        }
    })
}

fn malformed(path: &Path, text: &str, err: &toml::de::Error) -> RepoError {
    let line = err
        .span()
        .map(|span| text[..span.start.min(text.len())].matches('\n').count() + 1)
        .unwrap_or(0);
    RepoError::MalformedRecord {
        file: path.to_path_buf(),
        line,
        message: err.message().to_string(),
    }
}

fn write_atomic(path: &Path, content: &str) -> Result<(), RepoError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, content)
        .and_then(|()| fs::rename(&tmp, path))
        .map_err(|e| persistence(path, e))
}

fn persistence(path: &Path, source: io::Error) -> RepoError {
    RepoError::PersistenceFailure {
        path: path.to_path_buf(),
        source,
    }
}
