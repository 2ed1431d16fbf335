//! The algebra document: a TOML file holding a finite algebra and named
//! partitions of its universe.
//!
//! ```toml
//! format = "conlat-algebra/1"
//! elements = ["u0", "u1", "v0"]   # optional; otherwise give `size`
//! size = 3
//!
//! [[operations]]
//! name = "f"
//! arity = 1
//! table = [1, 0, 2]
//!
//! [partitions]
//! beta = [["u0", "u1"], ["v0"]]
//! gamma = [[0], [1], [2]]
//! ```
//!
//! Blocks list elements by name (strings) or by 0-based index (integers) and
//! must cover the universe exactly, singletons included.

use std::collections::BTreeMap;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use crate::algebra::{FiniteAlgebra, Operation};
use crate::error::{AlgebraError, DocumentError};
use crate::partition::Partition;

/// Value of the `format` header line.
pub const FORMAT_HEADER: &str = "conlat-algebra/1";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format: Spanned<String>,
    size: Option<Spanned<usize>>,
    elements: Option<Spanned<Vec<String>>>,
    #[serde(default)]
    operations: Vec<Spanned<RawOperation>>,
    #[serde(default)]
    partitions: BTreeMap<String, Spanned<Vec<Vec<ElementRef>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOperation {
    name: String,
    arity: usize,
    table: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ElementRef {
    Index(usize),
    Name(String),
}

/// A parsed and validated algebra document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub algebra: FiniteAlgebra,
    /// Display names of the elements, when the document gives them.
    pub element_names: Option<Vec<String>>,
    pub partitions: BTreeMap<String, Partition>,
}

fn line_of(text: &str, span: Range<usize>) -> usize {
    text[..span.start.min(text.len())].matches('\n').count() + 1
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let raw: RawDocument = toml::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.span().map(|s| line_of(text, s)).unwrap_or(1),
            message: e.message().to_string(),
        })?;
        if raw.format.get_ref() != FORMAT_HEADER {
            return Err(DocumentError::Header {
                line: line_of(text, raw.format.span()),
                found: raw.format.into_inner(),
            });
        }

        let names = raw.elements.as_ref().map(|e| e.get_ref().clone());
        let size = match (&raw.size, &raw.elements) {
            (Some(s), Some(e)) if *s.get_ref() != e.get_ref().len() => {
                return Err(DocumentError::Universe {
                    line: line_of(text, s.span()),
                    message: format!("size {} but {} element names", s.get_ref(), e.get_ref().len()),
                })
            }
            (Some(s), _) => *s.get_ref(),
            (None, Some(e)) => e.get_ref().len(),
            (None, None) => {
                return Err(DocumentError::Universe {
                    line: 1,
                    message: "give `size` or `elements`".into(),
                })
            }
        };
        if let Some(e) = &raw.elements {
            let mut seen = BTreeMap::new();
            for (i, n) in e.get_ref().iter().enumerate() {
                if let Some(j) = seen.insert(n.as_str(), i) {
                    return Err(DocumentError::Universe {
                        line: line_of(text, e.span()),
                        message: format!("element name `{n}` used for {j} and {i}"),
                    });
                }
            }
        }

        let mut ops = Vec::with_capacity(raw.operations.len());
        for op in &raw.operations {
            let line = line_of(text, op.span());
            let raw_op = op.get_ref();
            let o = Operation::new(&raw_op.name, raw_op.arity, raw_op.table.clone());
            // validate one at a time so the error points at this table
            if let Err(source) = FiniteAlgebra::new(size, vec![o.clone()]) {
                return Err(DocumentError::Operation {
                    line,
                    name: raw_op.name.clone(),
                    source,
                });
            }
            ops.push(o);
        }
        let algebra = FiniteAlgebra::new(size, ops).map_err(|source| DocumentError::Operation {
            line: 1,
            name: "(universe)".into(),
            source,
        })?;

        let display = |i: usize| match &names {
            Some(n) => n[i].clone(),
            None => i.to_string(),
        };
        let mut partitions = BTreeMap::new();
        for (pname, blocks) in &raw.partitions {
            let line = line_of(text, blocks.span());
            let err = |message: String| DocumentError::Partition {
                line,
                name: pname.clone(),
                message,
            };
            let mut resolved = Vec::with_capacity(blocks.get_ref().len());
            for block in blocks.get_ref() {
                let mut b = Vec::with_capacity(block.len());
                for e in block {
                    let i = match e {
                        ElementRef::Index(i) => *i,
                        ElementRef::Name(n) => names
                            .as_ref()
                            .and_then(|names| names.iter().position(|m| m == n))
                            .ok_or_else(|| err(format!("unknown element `{n}`")))?,
                    };
                    b.push(i);
                }
                resolved.push(b);
            }
            let p = Partition::from_blocks(size, &resolved).map_err(|e| {
                err(match e {
                    AlgebraError::BlockOverlap { element } => {
                        format!("element `{}` appears in more than one block", display(element))
                    }
                    AlgebraError::BlockGap { element } => {
                        format!("element `{}` is in no block", display(element))
                    }
                    other => other.to_string(),
                })
            })?;
            partitions.insert(pname.clone(), p);
        }
        Ok(AlgebraDocument {
            algebra,
            element_names: names,
            partitions,
        })
    }

    pub fn size(&self) -> usize {
        self.algebra.size()
    }

    pub fn partition(&self, name: &str) -> Result<&Partition, DocumentError> {
        self.partitions
            .get(name)
            .ok_or_else(|| DocumentError::MissingPartition(name.to_string()))
    }

    /// Name of element `i`.
    pub fn element_name(&self, i: usize) -> String {
        match &self.element_names {
            Some(n) => n[i].clone(),
            None => i.to_string(),
        }
    }

    /// Renders a partition of this universe as `|a,b|c|` using element names.
    pub fn show(&self, p: &Partition) -> String {
        match &self.element_names {
            Some(n) if p.size() == n.len() => p.display_with(n),
            _ => p.to_string(),
        }
    }

    /// Serializes to the document format; `parse(to_toml(d)) == d`.
    pub fn to_toml(&self) -> String {
        let quote = |s: &str| toml::Value::String(s.to_string()).to_string();
        let mut out = format!("format = {}\nsize = {}\n", quote(FORMAT_HEADER), self.size());
        if let Some(names) = &self.element_names {
            let list: Vec<String> = names.iter().map(|n| quote(n)).collect();
            out.push_str(&format!("elements = [{}]\n", list.join(", ")));
        }
        for op in self.algebra.operations() {
            let table: Vec<String> = op.table().map(|v| v.to_string()).collect();
            out.push_str(&format!(
                "\n[[operations]]\nname = {}\narity = {}\ntable = [{}]\n",
                quote(op.name()),
                op.arity(),
                table.join(", ")
            ));
        }
        if !self.partitions.is_empty() {
            out.push_str("\n[partitions]\n");
            for (name, p) in &self.partitions {
                let key = if !name.is_empty()
                    && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
                {
                    name.clone()
                } else {
                    quote(name)
                };
                let blocks: Vec<String> = p
                    .blocks()
                    .iter()
                    .map(|b| {
                        let items: Vec<String> = b
                            .iter()
                            .map(|&i| match &self.element_names {
                                Some(n) => quote(&n[i]),
                                None => i.to_string(),
                            })
                            .collect();
                        format!("[{}]", items.join(", "))
                    })
                    .collect();
                out.push_str(&format!("{key} = [{}]\n", blocks.join(", ")));
            }
        }
        out
    }
}

pub fn parse_algebra(text: &str) -> Result<AlgebraDocument, DocumentError> {
    AlgebraDocument::parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const WITNESS: &str = r#"
format = "conlat-algebra/1"
size = 4

[partitions]
beta = [[0, 2], [1, 3]]
gamma = [[0, 1], [2], [3]]
alpha = [[0, 1], [2, 3]]
"#;

    #[test]
    fn parses_the_four_element_witness() {
        let d = parse_algebra(WITNESS).unwrap();
        assert_eq!(d.size(), 4);
        assert_eq!(d.partition("beta").unwrap().to_string(), "|0,2|1,3|");
        assert!(matches!(d.partition("delta"), Err(DocumentError::MissingPartition(_))));
    }

    #[test]
    fn overlap_is_located() {
        let text = "format = \"conlat-algebra/1\"\nsize = 3\n[partitions]\nbad = [[0, 1], [1, 2]]\n";
        match parse_algebra(text) {
            Err(DocumentError::Partition { line, name, message }) => {
                assert_eq!(line, 4);
                assert_eq!(name, "bad");
                assert!(message.contains("more than one block"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gap_and_unknown_names() {
        let text = "format = \"conlat-algebra/1\"\nelements = [\"a\", \"b\", \"c\"]\n[partitions]\np = [[\"a\", \"b\"]]\n";
        let e = parse_algebra(text).unwrap_err();
        assert!(e.to_string().contains("element `c` is in no block"), "{e}");
        let text = "format = \"conlat-algebra/1\"\nelements = [\"a\", \"b\"]\n[partitions]\np = [[\"a\", \"z\"]]\n";
        assert!(parse_algebra(text).unwrap_err().to_string().contains("unknown element `z`"));
    }

    #[test]
    fn operation_errors_are_located() {
        let text = "format = \"conlat-algebra/1\"\nsize = 2\n\n[[operations]]\nname = \"f\"\narity = 2\ntable = [0, 1, 1]\n";
        match parse_algebra(text) {
            Err(DocumentError::Operation { line, name, source }) => {
                assert_eq!(line, 4);
                assert_eq!(name, "f");
                assert!(matches!(source, AlgebraError::TableLength { expected: 4, found: 3, .. }));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn header_and_syntax_errors() {
        assert!(matches!(
            parse_algebra("format = \"other/2\"\nsize = 1\n"),
            Err(DocumentError::Header { line: 1, .. })
        ));
        assert!(matches!(
            parse_algebra("format = \"conlat-algebra/1\"\nsize = = 1\n"),
            Err(DocumentError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_algebra("format = \"conlat-algebra/1\"\n"),
            Err(DocumentError::Universe { .. })
        ));
    }

    #[test]
    fn round_trip() {
        let text = r#"
format = "conlat-algebra/1"
elements = ["x", "y", "z w", "1"]

[[operations]]
name = "f"
arity = 1
table = [1, 0, 3, 2]

[partitions]
"γ⁰" = [["x", "y"], ["z w"], ["1"]]
alpha = [[0, 1], [2, 3]]
"#;
        let d = parse_algebra(text).unwrap();
        let again = parse_algebra(&d.to_toml()).unwrap();
        assert_eq!(d, again);
        // the string "1" names element 3, the integer 1 is element 1
        assert_eq!(d.show(d.partition("γ⁰").unwrap()), "|x,y|z w|1|");
    }
}
