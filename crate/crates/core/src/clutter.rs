//! Clutters, minors and chordality in the sense of simplicial vertices.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{minimal_elements, SqfIdeal};
use crate::varset::{VarSet, MAX_VARS};

/// Default limit on the number of active vertices for [`Clutter::is_chordal`].
pub const CHORDAL_MAX_VERTICES: usize = 12;

/// A set system on the active vertices whose edges form an antichain.
///
/// Minor operations shrink `active` but keep the vertex labels, so every
/// minor of a clutter on `1..=n` is again indexed inside `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Clutter {
    n: usize,
    active: VarSet,
    edges: Vec<VarSet>,
}

impl Clutter {
    /// Clutter on vertices `1..=n`. Edges must be nonempty and pairwise incomparable.
    pub fn new(n: usize, edges: impl IntoIterator<Item = VarSet>) -> Result<Self> {
        if !(1..=MAX_VARS).contains(&n) {
            return Err(Error::AmbientOutOfRange(n));
        }
        Self::with_active(n, VarSet::full(n), edges)
    }

    pub fn from_indices<S: AsRef<[usize]>>(n: usize, edges: &[S]) -> Result<Self> {
        let mut sets = Vec::with_capacity(edges.len());
        for e in edges {
            for &i in e.as_ref() {
                if !(1..=n).contains(&i) {
                    return Err(Error::VariableOutOfRange { index: i, n });
                }
            }
            sets.push(VarSet::from_indices(e.as_ref().iter().copied()).unwrap());
        }
        Self::new(n, sets)
    }

    /// Clutter whose vertex set is `active ⊆ {1..n}`.
    pub fn with_active(
        n: usize,
        active: VarSet,
        edges: impl IntoIterator<Item = VarSet>,
    ) -> Result<Self> {
        if !(1..=MAX_VARS).contains(&n) {
            return Err(Error::AmbientOutOfRange(n));
        }
        if !active.is_subset(VarSet::full(n)) {
            return Err(Error::VariableOutOfRange {
                index: active.last().unwrap_or(0),
                n,
            });
        }
        let mut edges: Vec<VarSet> = edges.into_iter().collect();
        edges.sort();
        edges.dedup();
        for e in &edges {
            if e.is_empty() {
                return Err(Error::EmptyEdge);
            }
            if !e.is_subset(active) {
                let v = e.difference(active).first().unwrap();
                return Err(if v > n {
                    Error::VariableOutOfRange { index: v, n }
                } else {
                    Error::InactiveVertex(v)
                });
            }
        }
        for a in &edges {
            for b in &edges {
                if a != b && a.is_subset(*b) {
                    return Err(Error::NotAntichain(format!("{a:?}"), format!("{b:?}")));
                }
            }
        }
        Ok(Clutter { n, active, edges })
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VarSet {
        self.active
    }

    pub fn edges(&self) -> &[VarSet] {
        &self.edges
    }

    /// True when contraction produced the empty edge.
    pub fn has_empty_edge(&self) -> bool {
        self.edges.first().is_some_and(|e| e.is_empty())
    }

    /// Smallest edge size, `None` when there are no edges.
    pub fn min_edge_cardinality(&self) -> Option<usize> {
        self.edges.iter().map(|e| e.len()).min()
    }

    fn check_active(&self, v: usize) -> Result<()> {
        if self.active.contains(v) {
            Ok(())
        } else {
            Err(Error::InactiveVertex(v))
        }
    }

    /// `C ∖ v`: drop `v` and every edge through it.
    pub fn deletion(&self, v: usize) -> Result<Clutter> {
        self.check_active(v)?;
        Ok(Clutter {
            n: self.n,
            active: self.active.without(v),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|e| !e.contains(v))
                .collect(),
        })
    }

    /// `C / v`: drop `v` from every edge and keep the minimal results.
    pub fn contraction(&self, v: usize) -> Result<Clutter> {
        self.check_active(v)?;
        Ok(Clutter {
            n: self.n,
            active: self.active.without(v),
            edges: minimal_elements(self.edges.iter().map(|e| e.without(v)).collect()),
        })
    }

    /// Deletes `key.deleted` and contracts `key.contracted` in one pass.
    pub fn minor(&self, key: &MinorKey) -> Result<Clutter> {
        if !key.deleted.is_disjoint(key.contracted) {
            return Err(Error::Internal(format!(
                "minor key deletes and contracts {:?}",
                key.deleted.intersection(key.contracted)
            )));
        }
        if let Some(v) = key
            .deleted
            .union(key.contracted)
            .difference(self.active)
            .first()
        {
            return Err(Error::InactiveVertex(v));
        }
        Ok(self.minor_unchecked(key.deleted, key.contracted))
    }

    fn minor_unchecked(&self, deleted: VarSet, contracted: VarSet) -> Clutter {
        let residues = self
            .edges
            .iter()
            .filter(|e| e.is_disjoint(deleted))
            .map(|e| e.difference(contracted))
            .collect();
        Clutter {
            n: self.n,
            active: self.active.difference(deleted.union(contracted)),
            edges: minimal_elements(residues),
        }
    }

    /// Any two edges through `v` have a third edge inside their union minus `v`.
    pub fn is_simplicial(&self, v: usize) -> bool {
        if !self.active.contains(v) {
            return false;
        }
        let through: Vec<VarSet> = self
            .edges
            .iter()
            .copied()
            .filter(|e| e.contains(v))
            .collect();
        for (k, &e1) in through.iter().enumerate() {
            for &e2 in &through[k + 1..] {
                let hull = e1.union(e2).without(v);
                if !self.edges.iter().any(|e3| e3.is_subset(hull)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn simplicial_vertices(&self) -> Vec<usize> {
        self.active
            .iter()
            .filter(|&v| self.is_simplicial(v))
            .collect()
    }

    /// Minors with the empty edge, without edges, or without vertices pass vacuously.
    fn is_degenerate(&self) -> bool {
        self.edges.is_empty() || self.active.is_empty() || self.has_empty_edge()
    }

    /// Decides chordality with the default vertex limit.
    pub fn is_chordal(&self) -> Result<ChordalityCertificate> {
        self.is_chordal_with_limit(CHORDAL_MAX_VERTICES)
    }

    /// Breadth-first walk over every minor, keyed by the disjoint pair
    /// (deleted, contracted). The first minor without a simplicial vertex is
    /// returned as the witness; BFS order makes it one with fewest removals.
    pub fn is_chordal_with_limit(&self, limit: usize) -> Result<ChordalityCertificate> {
        if self.active.len() > limit {
            return Err(Error::CapExceeded {
                what: "chordality check on vertex set",
                size: self.active.len(),
                limit,
            });
        }
        let root = MinorKey::default();
        let mut seen: HashSet<MinorKey> = HashSet::new();
        let mut queue = VecDeque::new();
        let mut choices = Vec::new();
        seen.insert(root);
        queue.push_back(root);
        while let Some(key) = queue.pop_front() {
            let minor = self.minor_unchecked(key.deleted, key.contracted);
            let choice = if minor.is_degenerate() {
                None
            } else {
                match minor.active.iter().find(|&v| minor.is_simplicial(v)) {
                    Some(v) => Some(v),
                    None => return Ok(ChordalityCertificate::NotChordal { witness: key }),
                }
            };
            choices.push((key, choice));
            for v in minor.active.iter() {
                for child in [
                    MinorKey {
                        deleted: key.deleted.with(v),
                        contracted: key.contracted,
                    },
                    MinorKey {
                        deleted: key.deleted,
                        contracted: key.contracted.with(v),
                    },
                ] {
                    if seen.insert(child) {
                        queue.push_back(child);
                    }
                }
            }
        }
        choices.sort();
        Ok(ChordalityCertificate::Chordal { choices })
    }

    /// `c_d(C)`: all `d`-subsets of the vertex set that are not edges.
    pub fn d_complement(&self, d: usize) -> Result<Clutter> {
        if d == 0 {
            return Err(Error::InvalidDegree);
        }
        let mut edges: Vec<VarSet> = self
            .active
            .subsets_of_size(d)
            .filter(|s| self.edges.binary_search(s).is_err())
            .collect();
        edges.sort();
        Ok(Clutter {
            n: self.n,
            active: self.active,
            edges,
        })
    }

    /// `I(C) = (x_e : e ∈ E(C))`.
    pub fn edge_ideal(&self) -> Result<SqfIdeal> {
        if self.has_empty_edge() {
            return Err(Error::EmptyEdge);
        }
        SqfIdeal::new(self.n, self.edges.iter().copied())
    }

    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    fn require_graph(&self) -> Result<()> {
        match self.edges.iter().find(|e| e.len() != 2) {
            Some(e) => Err(Error::NotAGraph(format!("{e:?}"))),
            None => Ok(()),
        }
    }

    /// Graph chordality by repeatedly removing a vertex whose neighbourhood is complete.
    pub fn graph_is_chordal(&self) -> Result<bool> {
        self.require_graph()?;
        let adjacent = |a: usize, b: usize| {
            let pair = VarSet::singleton(a).with(b);
            self.edges.binary_search(&pair).is_ok()
        };
        let mut remaining = self.active;
        while !remaining.is_empty() {
            let simplicial = remaining.iter().find(|&v| {
                let nbrs: Vec<usize> = remaining
                    .iter()
                    .filter(|&w| w != v && adjacent(v, w))
                    .collect();
                nbrs.iter()
                    .enumerate()
                    .all(|(k, &a)| nbrs[k + 1..].iter().all(|&b| adjacent(a, b)))
            });
            match simplicial {
                Some(v) => remaining = remaining.without(v),
                None => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Complementary graph on the same vertex set.
    pub fn complement_graph(&self) -> Result<Clutter> {
        self.require_graph()?;
        self.d_complement(2)
    }

    pub fn to_index_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|e| e.to_vec()).collect()
    }
}

impl fmt::Display for Clutter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            for v in e.iter() {
                write!(f, "{v}")?;
            }
        }
        write!(f, "}} on {:?}", self.active)
    }
}

/// A minor addressed by the vertices deleted and the vertices contracted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct MinorKey {
    pub deleted: VarSet,
    pub contracted: VarSet,
}

impl Serialize for MinorKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            deleted: Vec<usize>,
            contracted: Vec<usize>,
        }
        Repr {
            deleted: self.deleted.to_vec(),
            contracted: self.contracted.to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MinorKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            deleted: Vec<usize>,
            contracted: Vec<usize>,
        }
        let r = Repr::deserialize(d)?;
        let conv = |v: Vec<usize>| {
            VarSet::from_indices(v)
                .ok_or_else(|| serde::de::Error::custom("vertex index out of range"))
        };
        Ok(MinorKey {
            deleted: conv(r.deleted)?,
            contracted: conv(r.contracted)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChordalityCertificate {
    /// Every minor with the simplicial vertex found for it; `None` marks a
    /// degenerate minor that passes vacuously.
    Chordal {
        choices: Vec<(MinorKey, Option<usize>)>,
    },
    /// A minor with no simplicial vertex.
    NotChordal { witness: MinorKey },
}

impl ChordalityCertificate {
    pub fn is_chordal(&self) -> bool {
        matches!(self, ChordalityCertificate::Chordal { .. })
    }

    /// Re-checks the certificate against `clutter` without trusting the search.
    pub fn verify(&self, clutter: &Clutter) -> bool {
        match self {
            ChordalityCertificate::NotChordal { witness } => match clutter.minor(witness) {
                Ok(m) => !m.is_degenerate() && m.simplicial_vertices().is_empty(),
                Err(_) => false,
            },
            ChordalityCertificate::Chordal { choices } => {
                // every disjoint (deleted, contracted) pair of vertices is a minor
                let expected = 3usize.pow(clutter.active.len() as u32);
                let keys: HashSet<MinorKey> = choices.iter().map(|(k, _)| *k).collect();
                if keys.len() != expected || choices.len() != expected {
                    return false;
                }
                choices
                    .iter()
                    .all(|(key, choice)| match clutter.minor(key) {
                        Ok(m) => match choice {
                            Some(v) => m.is_simplicial(*v),
                            None => m.is_degenerate(),
                        },
                        Err(_) => false,
                    })
            }
        }
    }
}
