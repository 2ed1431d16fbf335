//! Plain-text figure transcriptions.
//!
//! ```text
//! # comment
//! 5
//! 0; γ; α; β; 1
//! 0 < γ
//! ...
//! ```
//!
//! The first data line is the node count, the second the `;`-separated
//! labels, and every further line a covering pair `lower < upper`.

use std::collections::HashMap;

use crate::error::CatalogError;
use crate::lattice::FiniteLattice;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureTranscription {
    pub labels: Vec<String>,
    pub covers: Vec<(usize, usize)>,
}

impl FigureTranscription {
    pub fn to_lattice(&self, name: &str) -> Result<FiniteLattice, CatalogError> {
        FiniteLattice::from_covers(self.labels.clone(), &self.covers).map_err(|source| CatalogError::NotALattice {
            name: name.to_string(),
            source,
        })
    }
}

pub fn parse_figure(text: &str) -> Result<FigureTranscription, CatalogError> {
    let err = |line: usize, message: String| CatalogError::Transcription { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (count_line, count_text) = lines.next().ok_or_else(|| err(1, "missing node count".into()))?;
    let count: usize = count_text
        .parse()
        .map_err(|_| err(count_line, format!("bad node count `{count_text}`")))?;

    let (label_line, label_text) = lines.next().ok_or_else(|| err(count_line, "missing label list".into()))?;
    let labels: Vec<String> = label_text.split(';').map(|l| l.trim().to_string()).collect();
    if labels.len() != count {
        return Err(err(
            label_line,
            format!("{} labels for {count} nodes", labels.len()),
        ));
    }
    let mut index = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() {
            return Err(err(label_line, "empty label".into()));
        }
        if index.insert(l.clone(), i).is_some() {
            return Err(err(label_line, format!("duplicate label `{l}`")));
        }
    }

    let mut covers = Vec::new();
    for (line, text) in lines {
        let (lo, hi) = text
            .split_once('<')
            .ok_or_else(|| err(line, format!("expected `lower < upper`, got `{text}`")))?;
        let lookup = |s: &str| {
            index
                .get(s.trim())
                .copied()
                .ok_or_else(|| err(line, format!("unknown label `{}`", s.trim())))
        };
        covers.push((lookup(lo)?, lookup(hi)?));
    }
    Ok(FigureTranscription { labels, covers })
}
