//! The four parametric families.
//!
//! Member `p` of every family has two side chains `c_s^0 < .. < c_s^(p-1)`
//! topped by an outer element `O_s`, a centre column of meets
//! `c_0^j ∧ c_1^j`, and one square `(c_0^j ∧ c_1^(j+1), c_0^(j+1) ∧ c_1^j,
//! θ_j)` between consecutive centre elements. K and S* add a final square
//! below `O_0 ∧ O_1`; M and S do not. K and M use chain letter γ under α,
//! S and S* use δ under γ and carry an extra cap (μ, α, β).

use std::collections::HashMap;
use std::fmt;

use crate::lattice::FiniteLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    M,
    K,
    S,
    SStar,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::M, Family::K, Family::S, Family::SStar];

    /// Whether the top tier carries the extra square.
    pub fn has_top_square(self) -> bool {
        matches!(self, Family::K | Family::SStar)
    }

    /// Number of elements of member `p`.
    pub fn size(self, p: usize) -> usize {
        let base = match self {
            Family::M => 5,
            Family::K => 8,
            Family::S => 7,
            Family::SStar => 10,
        };
        base + 6 * p
    }

    fn letters(self) -> (&'static str, &'static str) {
        match self {
            Family::M | Family::K => ("γ", "α"),
            Family::S | Family::SStar => ("δ", "γ"),
        }
    }

    pub(crate) fn aliases(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Family::M | Family::K => &[("β₁", "β₀")],
            Family::S | Family::SStar => &[("μ₁", "μ₀"), ("α₁", "α₀"), ("β₁", "β₀")],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::M => "M",
            Family::K => "K",
            Family::S => "S",
            Family::SStar => "S*",
        })
    }
}

fn sub(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

fn sup(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| match c {
            '1' => '¹',
            '2' => '²',
            '3' => '³',
            d => char::from_u32('⁰' as u32 + d.to_digit(10).unwrap()).unwrap(),
        })
        .collect()
}

struct Builder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
}

impl Builder {
    fn node(&mut self, label: String) -> usize {
        let i = self.labels.len();
        self.index.insert(label.clone(), i);
        self.labels.push(label);
        i
    }

    fn cover(&mut self, lo: usize, hi: usize) {
        self.covers.push((lo, hi));
    }
}

/// Member `p >= 1` of `family`.
///
/// # Panics
/// If `p == 0`.
pub fn family_lattice(family: Family, p: usize) -> FiniteLattice {
    assert!(p >= 1, "family index starts at 1");
    let top_tier = p - 1;
    let (c, o) = family.letters();
    let side = |s: usize, j: usize| {
        if j == 0 {
            format!("{c}{}", sub(s))
        } else {
            format!("{c}{}{}", sub(s), sup(j))
        }
    };
    let meet = |a: &str, b: &str| format!("{a}∧{b}");

    let mut b = Builder {
        labels: Vec::new(),
        index: HashMap::new(),
        covers: Vec::new(),
    };
    let zero = b.node("0".into());
    let eta = [b.node("η₀".into()), b.node("η₁".into())];
    let centre: Vec<usize> = (0..=top_tier)
        .map(|j| b.node(meet(&side(0, j), &side(1, j))))
        .collect();
    let outer_meet = b.node(format!("{o}₀∧{o}₁"));
    let mut chains = [Vec::new(), Vec::new()];
    for (s, chain) in chains.iter_mut().enumerate() {
        for j in 0..=top_tier {
            chain.push(b.node(side(s, j)));
        }
    }
    let outer = [b.node(format!("{o}₀")), b.node(format!("{o}₁"))];

    b.cover(zero, centre[0]);
    for s in 0..2 {
        b.cover(zero, eta[s]);
        b.cover(eta[s], chains[s][0]);
        for j in 0..top_tier {
            b.cover(chains[s][j], chains[s][j + 1]);
        }
        b.cover(chains[s][top_tier], outer[s]);
        b.cover(outer_meet, outer[s]);
    }
    for j in 0..top_tier {
        let left = b.node(meet(&side(0, j), &side(1, j + 1)));
        let right = b.node(meet(&side(0, j + 1), &side(1, j)));
        let theta = b.node(format!("θ{}", sub(j)));
        b.cover(centre[j], left);
        b.cover(centre[j], right);
        b.cover(left, chains[0][j]);
        b.cover(right, chains[1][j]);
        b.cover(left, theta);
        b.cover(right, theta);
        b.cover(theta, centre[j + 1]);
    }
    let cc = centre[top_tier];
    if family.has_top_square() {
        let left = b.node(meet(&side(0, top_tier), &format!("{o}₁")));
        let right = b.node(meet(&format!("{o}₀"), &side(1, top_tier)));
        let theta = b.node(format!("θ{}", sub(top_tier)));
        b.cover(cc, left);
        b.cover(cc, right);
        b.cover(left, chains[0][top_tier]);
        b.cover(right, chains[1][top_tier]);
        b.cover(left, theta);
        b.cover(right, theta);
        b.cover(theta, outer_meet);
    } else {
        b.cover(cc, chains[0][top_tier]);
        b.cover(cc, chains[1][top_tier]);
        b.cover(cc, outer_meet);
    }

    let one = match family {
        Family::M | Family::K => {
            let beta = b.node("β₀".into());
            let one = b.node("1".into());
            b.cover(eta[0], beta);
            b.cover(eta[1], beta);
            b.cover(beta, one);
            one
        }
        Family::S | Family::SStar => {
            let mu = b.node("μ₀".into());
            let beta = b.node("β₀".into());
            let alpha = b.node("α₀".into());
            let one = b.node("1".into());
            b.cover(eta[0], mu);
            b.cover(eta[1], mu);
            b.cover(mu, beta);
            b.cover(mu, alpha);
            b.cover(alpha, one);
            b.cover(beta, one);
            // β₀ = δ₀ ∨ δ₁ lies above every side-chain element, and above
            // γ₀, γ₁ once the chain reaches γ.
            let below_beta = if family == Family::SStar {
                outer
            } else {
                [chains[0][top_tier], chains[1][top_tier]]
            };
            for x in below_beta {
                b.cover(x, beta);
            }
            one
        }
    };
    if family != Family::SStar {
        for o in outer {
            b.cover(o, one);
        }
    }
    debug_assert!(b.index.len() == b.labels.len());

    FiniteLattice::from_covers(b.labels, &b.covers).expect("family member is a lattice")
}

/// Identities the drawn tiers of member `p` must satisfy: each `θⱼ` is the
/// join of its two skew meets and the η's join to the cap element above them.
pub(crate) fn member_identity_failures(family: Family, p: usize, l: &FiniteLattice) -> Vec<String> {
    let (c, o) = family.letters();
    let side = |s: usize, j: usize| {
        if j == 0 {
            format!("{c}{}", sub(s))
        } else {
            format!("{c}{}{}", sub(s), sup(j))
        }
    };
    let at = |name: &str| l.index_of(name);
    let mut failures = Vec::new();
    let join_failure = |target: &str, a: usize, b: usize| match at(target) {
        Some(t) if l.join(a, b) == t => None,
        Some(t) => Some(format!("{target} is {} not {}", l.label(t), l.label(l.join(a, b)))),
        None => Some(format!("missing landmark {target}")),
    };
    let meet_of = |a: &str, b: &str| Some(l.meet(at(a)?, at(b)?));
    let top_tier = p - 1;
    for j in 0..=top_tier {
        let (left, right) = if j < top_tier {
            (meet_of(&side(0, j), &side(1, j + 1)), meet_of(&side(0, j + 1), &side(1, j)))
        } else if family.has_top_square() {
            (meet_of(&side(0, j), &format!("{o}₁")), meet_of(&format!("{o}₀"), &side(1, j)))
        } else {
            continue;
        };
        match (left, right) {
            (Some(a), Some(b)) => failures.extend(join_failure(&format!("θ{}", sub(j)), a, b)),
            _ => failures.push(format!("missing side-chain landmarks at tier {j}")),
        }
    }
    let cap = match family {
        Family::M | Family::K => "β₀",
        Family::S | Family::SStar => "μ₀",
    };
    if let (Some(e0), Some(e1)) = (at("η₀"), at("η₁")) {
        failures.extend(join_failure(cap, e0, e1));
    }
    failures
}
