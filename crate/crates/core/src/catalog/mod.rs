//! Named lattices: fixed figures read from transcription files and four
//! parametric families built programmatically.

mod families;
mod transcription;

pub use families::{family_lattice, Family};
use families::member_identity_failures;
pub use transcription::{parse_figure, FigureTranscription};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::CatalogError;
use crate::lattice::{are_isomorphic, FiniteLattice};

const N5_TEXT: &str = include_str!("../../figures/n5.txt");
const D1_TEXT: &str = include_str!("../../figures/d1.txt");
const D2_TEXT: &str = include_str!("../../figures/d2.txt");
const M1_TEXT: &str = include_str!("../../figures/m1.txt");
const K_TEXT: &str = include_str!("../../figures/k.txt");
const L14_TEXT: &str = include_str!("../../figures/l14.txt");
const D13_TEXT: &str = include_str!("../../figures/d13.txt");

/// Hand transcriptions of small family members, kept to cross-check the
/// generator.
pub const HAND_TRANSCRIPTIONS: [(Family, usize, &str); 4] = [
    (Family::K, 2, include_str!("../../figures/k2.txt")),
    (Family::M, 2, include_str!("../../figures/m2.txt")),
    (Family::S, 1, include_str!("../../figures/s1.txt")),
    (Family::SStar, 1, include_str!("../../figures/s_star1.txt")),
];

/// Identifier of a catalog entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogId {
    N5,
    D1,
    D2,
    M1,
    K,
    L14,
    D13,
    /// Member of a parametric family; the index is at least 1.
    Member(Family, usize),
}

impl CatalogId {
    /// Resolves a catalog name and optional parameter. Family names take a
    /// parameter; `K` without one is the fixed figure.
    pub fn resolve(name: &str, param: Option<usize>) -> Result<Self, CatalogError> {
        let fixed = match name {
            "N5" => Some(CatalogId::N5),
            "D1" => Some(CatalogId::D1),
            "D2" => Some(CatalogId::D2),
            "M1" => Some(CatalogId::M1),
            "L14" => Some(CatalogId::L14),
            "D13" => Some(CatalogId::D13),
            _ => None,
        };
        if let Some(id) = fixed {
            return match param {
                None => Ok(id),
                Some(_) => Err(CatalogError::ParamNotAllowed(name.to_string())),
            };
        }
        let family = match name {
            "M" => Family::M,
            "K" => Family::K,
            "S" => Family::S,
            "S*" | "S_star" | "Sstar" => Family::SStar,
            _ => return Err(CatalogError::UnknownName(name.to_string())),
        };
        match (family, param) {
            (Family::K, None) => Ok(CatalogId::K),
            (_, None) => Err(CatalogError::ParamRequired(name.to_string())),
            (_, Some(0)) => Err(CatalogError::ParamOutOfRange {
                name: name.to_string(),
                param: 0,
            }),
            (f, Some(i)) => Ok(CatalogId::Member(f, i)),
        }
    }

    pub fn build(self) -> Result<CatalogEntry, CatalogError> {
        let (lattice, aliases): (FiniteLattice, &[(&str, &str)]) = match self {
            CatalogId::N5 => (fixed("N5", N5_TEXT)?, &[]),
            CatalogId::D1 => (fixed("D1", D1_TEXT)?, &[]),
            CatalogId::D2 => (fixed("D2", D2_TEXT)?, &[]),
            CatalogId::M1 => (fixed("M1", M1_TEXT)?, &[("β₁", "β₀")]),
            CatalogId::K => (fixed("K", K_TEXT)?, &[("β₁", "β₀")]),
            CatalogId::L14 => (fixed("L14", L14_TEXT)?, &[("γ₁", "γ₀"), ("α₁", "α₀")]),
            CatalogId::D13 => (fixed("D13", D13_TEXT)?, &[("μ₁", "μ₀"), ("δ₁", "δ₀"), ("β₁", "β₀")]),
            CatalogId::Member(f, i) => {
                if i == 0 {
                    return Err(CatalogError::ParamOutOfRange {
                        name: f.to_string(),
                        param: 0,
                    });
                }
                (family_lattice(f, i), f.aliases())
            }
        };
        let mut landmarks: BTreeMap<String, usize> =
            lattice.labels().iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        for &(alias, target) in aliases {
            if let Some(&t) = landmarks.get(target) {
                landmarks.entry(alias.to_string()).or_insert(t);
            }
        }
        Ok(CatalogEntry {
            id: self,
            lattice,
            landmarks,
        })
    }

    /// The family and index, for family members.
    pub fn member(self) -> Option<(Family, usize)> {
        match self {
            CatalogId::Member(f, i) => Some((f, i)),
            _ => None,
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogId::N5 => f.write_str("N5"),
            CatalogId::D1 => f.write_str("D1"),
            CatalogId::D2 => f.write_str("D2"),
            CatalogId::M1 => f.write_str("M1"),
            CatalogId::K => f.write_str("K"),
            CatalogId::L14 => f.write_str("L14"),
            CatalogId::D13 => f.write_str("D13"),
            CatalogId::Member(fam, i) => write!(f, "{fam}_{i}"),
        }
    }
}

impl FromStr for CatalogId {
    type Err = CatalogError;

    /// Accepts `N5`, `K`, `K_2`, `K:2`, `K(2)`, `S*_1`, `S_star(3)` and the
    /// like.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let unknown = || CatalogError::UnknownName(s.to_string());
        if let Some(open) = s.find('(') {
            let inner = s[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
            let param = inner.trim().parse().map_err(|_| unknown())?;
            return CatalogId::resolve(&s[..open], Some(param));
        }
        for sep in [':', '_'] {
            if let Some(pos) = s.rfind(sep) {
                if let Ok(param) = s[pos + 1..].parse::<usize>() {
                    return CatalogId::resolve(&s[..pos], Some(param));
                }
            }
        }
        CatalogId::resolve(s, None)
    }
}

/// A catalog lattice together with its landmark names.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: CatalogId,
    pub lattice: FiniteLattice,
    landmarks: BTreeMap<String, usize>,
}

impl CatalogEntry {
    pub fn name(&self) -> String {
        self.id.to_string()
    }

    /// Element carrying the landmark `name`, including aliases such as
    /// `α₁` for the merged node `α₀` in L14.
    pub fn landmark(&self, name: &str) -> Option<usize> {
        self.landmarks.get(name).copied()
    }

    pub fn landmarks(&self) -> &BTreeMap<String, usize> {
        &self.landmarks
    }

    /// Landmark identities that fail in the lattice: every label `x∧y` must be
    /// the meet of the landmarks `x` and `y`, and family members must satisfy
    /// their tier identities.
    pub fn landmark_identity_failures(&self) -> Vec<String> {
        let l = &self.lattice;
        let mut failures = Vec::new();
        for (i, label) in l.labels().iter().enumerate() {
            let parts: Vec<&str> = label.split('∧').collect();
            if parts.len() != 2 {
                continue;
            }
            if let (Some(a), Some(b)) = (self.landmark(parts[0]), self.landmark(parts[1])) {
                if l.meet(a, b) != i {
                    failures.push(format!("{label} is not the meet of its parts"));
                }
            }
        }
        if let CatalogId::Member(f, p) = self.id {
            failures.extend(member_identity_failures(f, p, l));
        }
        failures
    }
}

/// Builds a catalog entry by name; see [`CatalogId::resolve`].
pub fn build(name: &str, param: Option<usize>) -> Result<CatalogEntry, CatalogError> {
    CatalogId::resolve(name, param)?.build()
}

/// Fixed entries, then `M_i, K_i, S_i, S*_i` for each `i` in `1..=max_index`.
pub fn list_entries(max_index: usize) -> Vec<CatalogId> {
    let mut out = vec![
        CatalogId::N5,
        CatalogId::D1,
        CatalogId::D2,
        CatalogId::M1,
        CatalogId::K,
        CatalogId::L14,
        CatalogId::D13,
    ];
    for i in 1..=max_index {
        for f in Family::ALL {
            out.push(CatalogId::Member(f, i));
        }
    }
    out
}

/// Finds a catalog entry isomorphic to `l`, trying family members before
/// fixed figures. Only candidates of the right size are built.
pub fn identify(l: &FiniteLattice) -> Option<CatalogId> {
    let n = l.len();
    let mut candidates = Vec::new();
    for f in Family::ALL {
        let base = f.size(0);
        if n > base && (n - base).is_multiple_of(6) {
            candidates.push(CatalogId::Member(f, (n - base) / 6));
        }
    }
    candidates.extend(list_entries(0));
    candidates.into_iter().find(|id| {
        id.build()
            .map(|e| e.lattice.len() == n && are_isomorphic(l, &e.lattice).is_some())
            .unwrap_or(false)
    })
}

fn fixed(name: &str, text: &str) -> Result<FiniteLattice, CatalogError> {
    parse_figure(text)?.to_lattice(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_entries_are_lattices_of_expected_size() {
        let sizes = [
            (CatalogId::N5, 5),
            (CatalogId::D1, 7),
            (CatalogId::D2, 7),
            (CatalogId::M1, 11),
            (CatalogId::K, 14),
            (CatalogId::L14, 9),
            (CatalogId::D13, 13),
        ];
        for (id, n) in sizes {
            let e = id.build().unwrap();
            assert_eq!(e.lattice.len(), n, "{id}");
            e.lattice.check_axioms().unwrap();
        }
    }

    #[test]
    fn d2_is_dual_of_d1() {
        let d1 = CatalogId::D1.build().unwrap().lattice;
        let d2 = CatalogId::D2.build().unwrap().lattice;
        assert!(are_isomorphic(&d1.dual(), &d2).is_some());
        assert!(are_isomorphic(&d1, &d2).is_none());
    }

    #[test]
    fn generator_matches_fixed_figures_exactly() {
        let m1 = CatalogId::M1.build().unwrap().lattice;
        let gen = family_lattice(Family::M, 1);
        let mut a: Vec<_> = m1.labels().to_vec();
        let mut b: Vec<_> = gen.labels().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert!(are_isomorphic(&m1, &gen).is_some());
        let k = CatalogId::K.build().unwrap().lattice;
        assert!(are_isomorphic(&k, &family_lattice(Family::K, 1)).is_some());
    }

    #[test]
    fn parse_names() {
        assert_eq!("N5".parse::<CatalogId>().unwrap(), CatalogId::N5);
        assert_eq!("K".parse::<CatalogId>().unwrap(), CatalogId::K);
        assert_eq!("K_2".parse::<CatalogId>().unwrap(), CatalogId::Member(Family::K, 2));
        assert_eq!("S*:3".parse::<CatalogId>().unwrap(), CatalogId::Member(Family::SStar, 3));
        assert_eq!("S_star(1)".parse::<CatalogId>().unwrap(), CatalogId::Member(Family::SStar, 1));
        assert_eq!("M(4)".parse::<CatalogId>().unwrap(), CatalogId::Member(Family::M, 4));
        assert!(matches!("M".parse::<CatalogId>(), Err(CatalogError::ParamRequired(_))));
        assert!(matches!("M_0".parse::<CatalogId>(), Err(CatalogError::ParamOutOfRange { .. })));
        assert!(matches!("N5_2".parse::<CatalogId>(), Err(CatalogError::ParamNotAllowed(_))));
        assert!(matches!("Q7".parse::<CatalogId>(), Err(CatalogError::UnknownName(_))));
        for id in list_entries(3) {
            assert_eq!(id.to_string().parse::<CatalogId>().unwrap(), id);
        }
    }

    #[test]
    fn landmark_aliases() {
        let l14 = CatalogId::L14.build().unwrap();
        assert_eq!(l14.landmark("α₁"), l14.landmark("α₀"));
        assert!(l14.landmark("α₀").is_some());
        let s = build("S", Some(2)).unwrap();
        assert_eq!(s.landmark("μ₁"), s.landmark("μ₀"));
    }

    #[test]
    fn identify_prefers_family_members() {
        assert_eq!(identify(&family_lattice(Family::K, 1)), Some(CatalogId::Member(Family::K, 1)));
        assert_eq!(identify(&family_lattice(Family::S, 3)), Some(CatalogId::Member(Family::S, 3)));
        let d13 = CatalogId::D13.build().unwrap().lattice;
        assert_eq!(identify(&d13), Some(CatalogId::D13));
        assert_eq!(identify(&FiniteLattice::boolean(3)), None);
    }

    #[test]
    fn landmark_identities_hold() {
        for id in list_entries(3) {
            let e = id.build().unwrap();
            assert!(e.landmark_identity_failures().is_empty(), "{id}: {:?}", e.landmark_identity_failures());
        }
        let broken = CatalogEntry {
            id: CatalogId::Member(Family::K, 1),
            lattice: FiniteLattice::chain(3).unwrap(),
            landmarks: BTreeMap::new(),
        };
        assert!(!broken.landmark_identity_failures().is_empty());
    }

    #[test]
    fn list_order() {
        let ids = list_entries(1);
        assert_eq!(ids.len(), 11);
        assert_eq!(ids[7], CatalogId::Member(Family::M, 1));
        assert_eq!(ids[10], CatalogId::Member(Family::SStar, 1));
    }
}
