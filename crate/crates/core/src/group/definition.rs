//! Group-definition documents.
//!
//! A definition is a TOML document:
//!
//! ```toml
//! name = "pg"
//! rank = 2                # rank r of the free lattice Z^r
//! torsion = []            # invariant factors of F, e.g. [2, 2]
//!
//! [[generator]]
//! matrix = [[1, 0], [0, -1]]      # point part acting on Z^r (required)
//! translation = ["1/2", 0]        # rational translation in Q^r (default 0)
//! torsion_matrix = []             # automorphism of F (default identity)
//! torsion_translation = []        # translation in F as residues (default 0)
//! label = [0, 1, 2]               # optional permutation tag
//! ```
//!
//! The lattice `Z^r × F` is always part of the group, so pure lattice
//! translations need not be listed. The optional `label` permutation tags a
//! generator with an abstract point-group element; it is only needed when
//! the point group acts non-faithfully on `Z^r × F` (all tags of one
//! document must have the same length). Errors are reported with the line
//! and column where the offending item starts.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalEntry {
    Int(i64),
    Text(String),
}

impl From<i64> for RationalEntry {
    fn from(v: i64) -> Self {
        RationalEntry::Int(v)
    }
}

impl From<&str> for RationalEntry {
    fn from(v: &str) -> Self {
        RationalEntry::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub translation: Vec<RationalEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion_matrix: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion_translation: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Vec<usize>>,
}

impl GeneratorSpec {
    pub fn new(matrix: &[&[i64]]) -> Self {
        GeneratorSpec {
            matrix: matrix.iter().map(|r| r.to_vec()).collect(),
            translation: Vec::new(),
            torsion_matrix: None,
            torsion_translation: Vec::new(),
            label: None,
        }
    }

    pub fn translation<T: Into<RationalEntry>>(mut self, t: impl IntoIterator<Item = T>) -> Self {
        self.translation = t.into_iter().map(Into::into).collect();
        self
    }

    pub fn torsion_matrix(mut self, m: &[&[i64]]) -> Self {
        self.torsion_matrix = Some(m.iter().map(|r| r.to_vec()).collect());
        self
    }

    pub fn torsion_translation(mut self, t: &[i64]) -> Self {
        self.torsion_translation = t.to_vec();
        self
    }

    pub fn label(mut self, perm: &[usize]) -> Self {
        self.label = Some(perm.to_vec());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDefinition {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
    #[serde(default, rename = "generator")]
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDefinition {
    #[serde(default)]
    name: Option<String>,
    rank: usize,
    #[serde(default)]
    torsion: Vec<u64>,
    #[serde(default)]
    generator: Vec<toml::Spanned<GeneratorSpec>>,
}

/// 1-based line and column of a byte offset.
pub(crate) fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(offset, |nl| offset - nl - 1) + 1;
    (line, column)
}

fn positional(text: &str, span: Option<Range<usize>>, message: String) -> Error {
    let (line, column) = span.map_or((1, 1), |s| line_column(text, s.start));
    Error::Parse {
        line,
        column,
        message,
    }
}

impl GroupDefinition {
    pub fn new(rank: usize, torsion: &[u64]) -> Self {
        GroupDefinition {
            name: None,
            rank,
            torsion: torsion.to_vec(),
            generators: Vec::new(),
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn generator(mut self, g: GeneratorSpec) -> Self {
        self.generators.push(g);
        self
    }

    /// Parses a definition document, checking shapes of every generator.
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawDefinition = toml::from_str(text).map_err(|e| {
            let message = e.message().to_string();
            positional(text, e.span(), message)
        })?;
        let t = raw.torsion.len();
        let mut tag_len = None;
        for g in &raw.generator {
            let span = Some(g.span());
            let spec = g.get_ref();
            let err = |m: String| positional(text, span.clone(), m);
            if spec.matrix.len() != raw.rank || spec.matrix.iter().any(|r| r.len() != raw.rank) {
                return Err(err(format!("generator matrix must be {0}x{0}", raw.rank)));
            }
            if !spec.translation.is_empty() && spec.translation.len() != raw.rank {
                return Err(err(format!("translation must have {} entries", raw.rank)));
            }
            for entry in &spec.translation {
                if let RationalEntry::Text(s) = entry {
                    crate::linalg::mod1::parse_rational(s)
                        .map_err(|m| err(format!("translation entry `{s}`: {m}")))?;
                }
            }
            if let Some(tm) = &spec.torsion_matrix {
                if tm.len() != t || tm.iter().any(|r| r.len() != t) {
                    return Err(err(format!("torsion_matrix must be {t}x{t}")));
                }
            }
            if !spec.torsion_translation.is_empty() && spec.torsion_translation.len() != t {
                return Err(err(format!("torsion_translation must have {t} entries")));
            }
            if let Some(label) = &spec.label {
                let mut sorted = label.clone();
                sorted.sort_unstable();
                if sorted.iter().enumerate().any(|(i, &x)| i != x) {
                    return Err(err("label must be a permutation of 0..n".into()));
                }
                match tag_len {
                    None => tag_len = Some(label.len()),
                    Some(n) if n != label.len() => {
                        return Err(err(format!(
                            "label must have length {n} like earlier labels"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(GroupDefinition {
            name: raw.name,
            rank: raw.rank,
            torsion: raw.torsion,
            generators: raw
                .generator
                .into_iter()
                .map(toml::Spanned::into_inner)
                .collect(),
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("definition serializes")
    }
}
