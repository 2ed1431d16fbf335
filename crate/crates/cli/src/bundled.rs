//! The bundled pentagon examples and their expected classes.

use conlat_core::catalog::{CatalogId, Family};
use conlat_core::document::AlgebraDocument;
use conlat_core::freese::patterns::N5Labels;

pub struct BundledExample {
    pub name: &'static str,
    pub text: &'static str,
    pub expected: CatalogId,
    /// Step at which the γ-chain stops.
    pub stabilized_at: usize,
    /// Whether the chain ends on α.
    pub reaches_alpha: bool,
}

pub const EXAMPLES: [BundledExample; 2] = [
    BundledExample {
        name: "ex_n5_m2",
        text: include_str!("../data/ex_n5_m2.toml"),
        expected: CatalogId::Member(Family::M, 2),
        stabilized_at: 1,
        reaches_alpha: false,
    },
    BundledExample {
        name: "ex_n5_k2",
        text: include_str!("../data/ex_n5_k2.toml"),
        expected: CatalogId::Member(Family::K, 2),
        stabilized_at: 2,
        reaches_alpha: true,
    },
];

impl BundledExample {
    pub fn document(&self) -> AlgebraDocument {
        AlgebraDocument::parse(self.text).expect("bundled documents parse")
    }

    pub fn labels(&self, doc: &AlgebraDocument) -> N5Labels {
        let get = |n: &str| doc.partition(n).expect("bundled documents name α, β, γ").clone();
        N5Labels {
            alpha: get("alpha"),
            beta: get("beta"),
            gamma: get("gamma"),
        }
    }
}

/// Looks up a bundled example by name.
pub fn example(name: &str) -> Option<&'static BundledExample> {
    EXAMPLES.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_documents_parse() {
        for e in &EXAMPLES {
            let d = e.document();
            let l = e.labels(&d);
            assert!(l.gamma.refines(&l.alpha));
        }
        assert_eq!(example("ex_n5_m2").unwrap().document().size(), 10);
        assert_eq!(example("ex_n5_k2").unwrap().document().size(), 9);
    }
}
