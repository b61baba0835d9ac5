//! Library recommendation: TFIDF scoring of target-platform headers against
//! component names, combined with historical selection counts.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::platform_kb::{HeaderDocument, HistoryStore};

/// Default number of entries returned per ranked list.
pub const DEFAULT_TOP_K: usize = 5;
/// Default weight of the history term in the combined score.
pub const DEFAULT_HISTORY_WEIGHT: f64 = 1.0;

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("header corpus is empty; nothing to rank against")]
    EmptyCorpus,
}

/// Splits `text` into lowercase terms. Boundaries are non-alphanumeric
/// characters, camelCase humps and letter/digit transitions; one-character
/// tokens are dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    let flush = |buf: &mut String, out: &mut Vec<String>| {
        if buf.chars().count() >= 2 {
            out.push(buf.to_lowercase());
        }
        buf.clear();
    };
    for (i, &c) in chars.iter().enumerate() {
        if !c.is_alphanumeric() {
            flush(&mut current, &mut tokens);
            continue;
        }
        if let Some(&prev) = i.checked_sub(1).and_then(|p| chars.get(p)) {
            if prev.is_alphanumeric() {
                let next_lower = chars.get(i + 1).is_some_and(|n| n.is_lowercase());
                let hump = (prev.is_lowercase() && c.is_uppercase())
                    || (prev.is_uppercase() && c.is_uppercase() && next_lower);
                let letter_digit = (prev.is_numeric() && !c.is_numeric())
                    || (!prev.is_numeric() && c.is_numeric());
                if hump || letter_digit {
                    flush(&mut current, &mut tokens);
                }
            }
        }
        current.extend(c.to_lowercase());
    }
    flush(&mut current, &mut tokens);
    tokens
}

/// Token counts for a piece of text, as stored on [`HeaderDocument`].
pub fn token_multiset(text: &str) -> BTreeMap<String, u32> {
    let mut counts = BTreeMap::new();
    for token in tokenize(text) {
        *counts.entry(token).or_insert(0) += 1;
    }
    counts
}

/// Per-header term statistics: document count, document frequency and
/// per-document term frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct LibraryIndex {
    n_docs: usize,
    libraries: Vec<String>,
    df: BTreeMap<String, u32>,
    /// term -> library -> occurrence count (absent means 0)
    tf: BTreeMap<String, BTreeMap<String, u32>>,
}

impl LibraryIndex {
    pub fn doc_count(&self) -> usize {
        self.n_docs
    }

    pub fn libraries(&self) -> &[String] {
        &self.libraries
    }

    pub fn contains_library(&self, name: &str) -> bool {
        self.libraries.iter().any(|l| l == name)
    }

    pub fn doc_freq(&self, term: &str) -> u32 {
        self.df.get(term).copied().unwrap_or(0)
    }

    pub fn term_count(&self, term: &str, library: &str) -> u32 {
        self.tf
            .get(term)
            .and_then(|per_lib| per_lib.get(library))
            .copied()
            .unwrap_or(0)
    }
}

/// Query terms derived from a component name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentQuery {
    pub component_title: String,
    pub terms: Vec<String>,
}

impl ComponentQuery {
    pub fn new(component_title: &str) -> Self {
        ComponentQuery {
            component_title: component_title.to_string(),
            terms: tokenize(component_title),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedEntry {
    pub library: String,
    pub tfidf: f64,
    pub history: u64,
    pub combined: f64,
}

/// Candidate libraries for one component, sorted by combined score
/// descending with lexicographic tie-breaking.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    pub component: String,
    pub entries: Vec<RankedEntry>,
}

pub fn build_index(headers: &[HeaderDocument]) -> Result<LibraryIndex, IndexError> {
    if headers.is_empty() {
        return Err(IndexError::EmptyCorpus);
    }
    let mut df: BTreeMap<String, u32> = BTreeMap::new();
    let mut tf: BTreeMap<String, BTreeMap<String, u32>> = BTreeMap::new();
    for doc in headers {
        for (term, count) in &doc.token_multiset {
            *df.entry(term.clone()).or_insert(0) += 1;
            tf.entry(term.clone())
                .or_default()
                .insert(doc.library_name.clone(), *count);
        }
    }
    Ok(LibraryIndex {
        n_docs: headers.len(),
        libraries: headers.iter().map(|d| d.library_name.clone()).collect(),
        df,
        tf,
    })
}

/// Sum over query terms t with tf(t, library) >= 1 of
/// `(1 + log10 tf) * log10(N / df_t)`. Terms absent from the library
/// contribute 0; a term present in every document contributes exactly 0.
pub fn tfidf(query: &ComponentQuery, library: &str, index: &LibraryIndex) -> f64 {
    query
        .terms
        .iter()
        .map(|term| {
            let tf = index.term_count(term, library);
            if tf == 0 {
                return 0.0;
            }
            let df = index.doc_freq(term);
            (1.0 + f64::from(tf).log10()) * (index.n_docs as f64 / f64::from(df)).log10()
        })
        .sum()
}

/// Ranks every library in the corpus for `component_title`, combining TFIDF
/// with a log-damped historical count, and returns the top `top_k` entries.
pub fn rank(
    component_title: &str,
    index: &LibraryIndex,
    history: &HistoryStore,
    top_k: usize,
    history_weight: f64,
) -> RankedList {
    let query = ComponentQuery::new(component_title);
    let mut entries: Vec<RankedEntry> = index
        .libraries
        .iter()
        .map(|library| {
            let score = tfidf(&query, library, index);
            let hist = history.count(component_title, library);
            RankedEntry {
                library: library.clone(),
                tfidf: score,
                history: hist,
                combined: score + history_weight * (1.0 + hist as f64).log10(),
            }
        })
        .collect();
    entries.sort_by(|a, b| {
        b.combined
            .partial_cmp(&a.combined)
            .expect("scores are finite")
            .then_with(|| a.library.cmp(&b.library))
    });
    entries.truncate(top_k);
    RankedList {
        component: component_title.to_string(),
        entries,
    }
}
