//! Space identifiers and the canonical Picard-group basis of each space.
//!
//! Boundary indices are kept in a canonical form implementing the
//! identification `Delta_{i:T} = Delta_{g-i:T^c}` (pointed spaces) and
//! `Delta_{i:c} = Delta_{g-i:n-c}` (symmetric products).

use crate::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceKind {
    Base,
    Pointed,
    Symmetric,
}

/// Which moduli space a class or curve lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpaceId {
    pub kind: SpaceKind,
    pub genus: u32,
    pub markings: u32,
}

impl SpaceId {
    pub fn base(g: u32) -> Result<Self> {
        Self::new(SpaceKind::Base, g, 0)
    }

    pub fn pointed(g: u32, n: u32) -> Result<Self> {
        Self::new(SpaceKind::Pointed, g, n)
    }

    pub fn symmetric(g: u32, n: u32) -> Result<Self> {
        Self::new(SpaceKind::Symmetric, g, n)
    }

    pub fn new(kind: SpaceKind, genus: u32, markings: u32) -> Result<Self> {
        if genus < 2 {
            return Err(Error::Invalid(format!("genus {genus} < 2")));
        }
        match kind {
            SpaceKind::Base if markings != 0 => {
                return Err(Error::Invalid("base space with markings".into()))
            }
            SpaceKind::Pointed | SpaceKind::Symmetric if markings < 1 => {
                return Err(Error::Invalid("pointed space needs markings >= 1".into()))
            }
            _ => {}
        }
        Ok(SpaceId { kind, genus, markings })
    }

    pub fn is_symmetric(&self) -> bool {
        self.kind == SpaceKind::Symmetric
    }

    pub fn is_base(&self) -> bool {
        self.kind == SpaceKind::Base
    }

    pub fn half_genus(&self) -> u32 {
        self.genus / 2
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SpaceKind::Base => write!(f, "Mbar_{}", self.genus),
            SpaceKind::Pointed => write!(f, "Mbar_{{{},{}}}", self.genus, self.markings),
            SpaceKind::Symmetric => write!(f, "Cbar_{{{},{}}}", self.genus, self.markings),
        }
    }
}

/// One generator of the rational Picard group, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gen {
    Lambda,
    Psi(u32),
    PsiSym,
    DeltaIrr,
    DeltaBase(u32),
    BoundaryPointed { i: u32, t: BTreeSet<u32> },
    BoundarySym { i: u32, c: u32 },
}

impl Gen {
    pub fn boundary_pointed(i: u32, labels: &[u32]) -> Gen {
        Gen::BoundaryPointed { i, t: labels.iter().copied().collect() }
    }

    /// Deterministic basis order: lambda, psi block, delta_irr, boundary
    /// block by (i, #T, lexicographic T) resp. (i, c).
    fn sort_key(&self) -> (u8, u32, u32, Vec<u32>) {
        match self {
            Gen::Lambda => (0, 0, 0, vec![]),
            Gen::Psi(i) => (1, *i, 0, vec![]),
            Gen::PsiSym => (1, 0, 0, vec![]),
            Gen::DeltaIrr => (2, 0, 0, vec![]),
            Gen::DeltaBase(i) => (3, *i, 0, vec![]),
            Gen::BoundaryPointed { i, t } => {
                (3, *i, t.len() as u32, t.iter().copied().collect())
            }
            Gen::BoundarySym { i, c } => (3, *i, *c, vec![]),
        }
    }

    /// Serialized token in the grammar of the `picard` CLI.
    pub fn token(&self, space: &SpaceId) -> String {
        let sym = space.is_symmetric();
        match self {
            Gen::Lambda => if sym { "Lt".into() } else { "L".into() },
            Gen::Psi(i) => format!("psi[{i}]"),
            Gen::PsiSym => "psit".into(),
            Gen::DeltaIrr => if sym { "dt_irr".into() } else { "d_irr".into() },
            Gen::DeltaBase(i) => format!("d[{i}]"),
            Gen::BoundaryPointed { i, t } => {
                let labels: Vec<String> = t.iter().map(|l| l.to_string()).collect();
                format!("d[{}:{{{}}}]", i, labels.join(","))
            }
            Gen::BoundarySym { i, c } => format!("dt[{i}:{c}]"),
        }
    }

    /// Checks that the element belongs to `space` and is canonical.
    pub fn validate(&self, space: &SpaceId) -> Result<()> {
        let bad = |g: &Gen| {
            Err(Error::InvalidBasisElement { gen: g.token(space), space: space.to_string() })
        };
        let g = space.genus;
        let n = space.markings;
        match (self, space.kind) {
            (Gen::Lambda, _) | (Gen::DeltaIrr, _) => Ok(()),
            (Gen::Psi(i), SpaceKind::Pointed) if *i >= 1 && *i <= n => Ok(()),
            (Gen::PsiSym, SpaceKind::Symmetric) => Ok(()),
            (Gen::DeltaBase(i), SpaceKind::Base) if *i >= 1 && *i <= g / 2 => Ok(()),
            (Gen::BoundaryPointed { i, t }, SpaceKind::Pointed) => {
                if t.iter().any(|l| *l < 1 || *l > n) {
                    return bad(self);
                }
                match canonicalize(space, *i as i64, t) {
                    Ok(c) if &c == self => Ok(()),
                    _ => bad(self),
                }
            }
            (Gen::BoundarySym { i, c }, SpaceKind::Symmetric) => {
                match canonicalize_sym(space, *i as i64, *c as i64) {
                    Ok(cc) if &cc == self => Ok(()),
                    _ => bad(self),
                }
            }
            _ => bad(self),
        }
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gen {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

fn complement(t: &BTreeSet<u32>, n: u32) -> BTreeSet<u32> {
    (1..=n).filter(|l| !t.contains(l)).collect()
}

/// Canonical representative of the boundary pair `(i, T)` on a pointed or
/// base space. Prefers `i < g-i`; at `i = g-i` the smaller label set wins
/// (by cardinality, then lexicographically). Unstable configurations
/// ((0, T) with #T < 2 in canonical form) are rejected.
pub fn canonicalize(space: &SpaceId, i: i64, t: &BTreeSet<u32>) -> Result<Gen> {
    let g = space.genus as i64;
    if i < 0 || i > g {
        return Err(Error::IndexOutOfRange { i, g: space.genus });
    }
    if space.is_symmetric() {
        return Err(Error::SpaceMismatch {
            expected: "pointed or base space".into(),
            got: space.to_string(),
        });
    }
    let n = space.markings;
    if t.iter().any(|l| *l < 1 || *l > n) {
        return Err(Error::Invalid(format!("labels outside 1..{n}")));
    }
    let tc = complement(t, n);
    let (ci, ct) = if i < g - i {
        (i, t.clone())
    } else if i > g - i {
        (g - i, tc)
    } else if t.len() < tc.len() || (t.len() == tc.len() && *t <= tc) {
        (i, t.clone())
    } else {
        (i, tc)
    };
    if ci == 0 && ct.len() < 2 {
        return Err(Error::ForbiddenBoundary { card: ct.len() });
    }
    if space.is_base() {
        Ok(Gen::DeltaBase(ci as u32))
    } else {
        Ok(Gen::BoundaryPointed { i: ci as u32, t: ct })
    }
}

/// Canonical representative of `(i, c)` on a symmetric product.
pub fn canonicalize_sym(space: &SpaceId, i: i64, c: i64) -> Result<Gen> {
    let g = space.genus as i64;
    let n = space.markings as i64;
    if i < 0 || i > g {
        return Err(Error::IndexOutOfRange { i, g: space.genus });
    }
    if !space.is_symmetric() {
        return Err(Error::SpaceMismatch {
            expected: "symmetric space".into(),
            got: space.to_string(),
        });
    }
    if c < 0 || c > n {
        return Err(Error::Invalid(format!("cardinality {c} outside 0..{n}")));
    }
    let (ci, cc) = if i < g - i {
        (i, c)
    } else if i > g - i {
        (g - i, n - c)
    } else {
        (i, c.min(n - c))
    };
    if ci == 0 && cc < 2 {
        return Err(Error::ForbiddenBoundary { card: cc as usize });
    }
    Ok(Gen::BoundarySym { i: ci as u32, c: cc as u32 })
}

/// All subsets of `{1..n}` as label sets.
pub fn subsets(n: u32) -> impl Iterator<Item = BTreeSet<u32>> {
    assert!(n <= 20, "label sets limited to n <= 20");
    (0u32..(1 << n)).map(move |mask| {
        (1..=n).filter(|l| mask & (1 << (l - 1)) != 0).collect()
    })
}

/// Canonical label sets of size `c` for boundary index `i` on a pointed
/// space (skips the non-canonical half at 2i = g).
pub fn canonical_sets(space: &SpaceId, i: u32, c: u32) -> Vec<BTreeSet<u32>> {
    subsets(space.markings)
        .filter(|t| t.len() as u32 == c)
        .filter(|t| matches!(canonicalize(space, i as i64, t), Ok(Gen::BoundaryPointed { i: ci, t: ct }) if ci == i && ct == *t))
        .collect()
}

/// Ordered canonical basis of the rational Picard group of `space`.
pub fn enumerate_basis(space: &SpaceId) -> Vec<Gen> {
    let g = space.genus;
    let n = space.markings;
    let mut out = vec![Gen::Lambda];
    match space.kind {
        SpaceKind::Base => {
            out.push(Gen::DeltaIrr);
            out.extend((1..=g / 2).map(Gen::DeltaBase));
        }
        SpaceKind::Pointed => {
            out.extend((1..=n).map(Gen::Psi));
            out.push(Gen::DeltaIrr);
            let mut boundary: Vec<Gen> = (0..=g / 2)
                .flat_map(|i| {
                    subsets(n)
                        .filter_map(move |t| canonicalize(space, i as i64, &t).ok())
                        .filter(move |gen| matches!(gen, Gen::BoundaryPointed { i: ci, .. } if *ci == i))
                })
                .collect();
            boundary.sort();
            boundary.dedup();
            out.extend(boundary);
        }
        SpaceKind::Symmetric => {
            out.push(Gen::PsiSym);
            out.push(Gen::DeltaIrr);
            let mut boundary: Vec<Gen> = (0..=g / 2)
                .flat_map(|i| {
                    (0..=n).filter_map(move |c| {
                        match canonicalize_sym(space, i as i64, c as i64) {
                            Ok(gen @ Gen::BoundarySym { i: ci, .. }) if ci == i => Some(gen),
                            _ => None,
                        }
                    })
                })
                .collect();
            boundary.sort();
            boundary.dedup();
            out.extend(boundary);
        }
    }
    out
}
