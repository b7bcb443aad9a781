//! Schmitt–Vogel numbers: witness checking, an exact solver over ordered
//! partitions of the minimal generators, and the witness transports under
//! localization and variable elimination.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::{MonomialPrime, SqfIdeal};
use crate::varset::VarSet;

/// Default limit on `|G(I)|` for [`sv_number`].
pub const SV_MAX_GENERATORS: usize = 12;

/// Levels `P_1, …, P_r` of monomials of an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvWitness {
    ambient: usize,
    levels: Vec<Vec<VarSet>>,
}

impl SvWitness {
    pub fn new(ambient: usize, levels: Vec<Vec<VarSet>>) -> Self {
        SvWitness { ambient, levels }
    }

    pub fn from_indices(ambient: usize, levels: &[Vec<Vec<usize>>]) -> Result<Self> {
        let full = VarSet::full(ambient);
        let mut out = Vec::with_capacity(levels.len());
        for level in levels {
            let mut l = Vec::with_capacity(level.len());
            for m in level {
                let s = VarSet::from_indices(m.iter().copied())
                    .filter(|s| s.is_subset(full))
                    .ok_or_else(|| {
                        Error::InvalidWitness(format!(
                            "monomial {m:?} is outside {ambient} variables"
                        ))
                    })?;
                l.push(s);
            }
            out.push(l);
        }
        Ok(SvWitness::new(ambient, out))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn levels(&self) -> &[Vec<VarSet>] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn to_index_lists(&self) -> Vec<Vec<Vec<usize>>> {
        self.levels
            .iter()
            .map(|l| l.iter().map(|m| m.to_vec()).collect())
            .collect()
    }
}

impl fmt::Display for SvWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, level) in self.levels.iter().enumerate() {
            if k > 0 {
                write!(f, " | ")?;
            }
            write!(f, "P{}: ", k + 1)?;
            for (j, m) in level.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

/// First condition broken by a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SvViolation {
    /// `|P_1| ≠ 1`.
    FirstLevelSize(usize),
    /// No earlier element divides `u · u''` for this pair in level `level` (1-based).
    Pair { level: usize, u: VarSet, u2: VarSet },
    /// A minimal generator is missing from the union of the levels.
    MissingGenerator(VarSet),
}

impl fmt::Display for SvViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SvViolation::FirstLevelSize(s) => write!(f, "first level has {s} elements"),
            SvViolation::Pair { level, u, u2 } => {
                write!(f, "no earlier element divides {u}*{u2} in level {level}")
            }
            SvViolation::MissingGenerator(g) => write!(f, "generator {g} is not in any level"),
        }
    }
}

/// `d | a·b` for squarefree `a`, `b`, `d`.
///
/// `a·b` has exponents at most 2 and `d` at most 1, so divisibility only
/// sees whether each variable of `d` occurs in `a` or in `b`.
#[inline]
fn divides_product(d: VarSet, a: VarSet, b: VarSet) -> bool {
    d.is_subset(a.union(b))
}

/// Checks the three defining conditions. Monomials outside `Mon(I)` are an error,
/// failed conditions are reported as `Ok(Some(violation))`.
pub fn check_sv_witness(ideal: &SqfIdeal, witness: &SvWitness) -> Result<Option<SvViolation>> {
    if witness.ambient != ideal.ambient() {
        return Err(Error::MixedAmbient(ideal.ambient(), witness.ambient));
    }
    for level in &witness.levels {
        if let Some(m) = level.iter().find(|&&m| !ideal.contains(m)) {
            return Err(Error::InvalidWitness(format!(
                "{m} is not a monomial of {ideal}"
            )));
        }
    }
    let first = witness.levels.first().map_or(0, |l| distinct(l).len());
    if first != 1 {
        return Ok(Some(SvViolation::FirstLevelSize(first)));
    }
    for (idx, level) in witness.levels.iter().enumerate().skip(1) {
        let earlier = &witness.levels[..idx];
        let level = distinct(level);
        for (a, &u) in level.iter().enumerate() {
            for &u2 in &level[a + 1..] {
                let covered = earlier.iter().flatten().any(|&d| divides_product(d, u, u2));
                if !covered {
                    return Ok(Some(SvViolation::Pair {
                        level: idx + 1,
                        u,
                        u2,
                    }));
                }
            }
        }
    }
    if let Some(&g) = ideal
        .generators()
        .iter()
        .find(|g| !witness.levels.iter().flatten().any(|m| m == *g))
    {
        return Ok(Some(SvViolation::MissingGenerator(g)));
    }
    Ok(None)
}

fn distinct(level: &[VarSet]) -> Vec<VarSet> {
    let mut v = level.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Result of the restricted solver: the least `r` over witnesses whose levels
/// partition `G(I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvResult {
    pub restricted: usize,
    pub witness: SvWitness,
}

pub fn sv_number(ideal: &SqfIdeal) -> Result<SvResult> {
    sv_number_with_limit(ideal, SV_MAX_GENERATORS)
}

/// Exact minimum over ordered partitions of `G(I)`.
///
/// Whether a pair may share the next level depends only on the set of
/// generators already placed, so the search is a memoized recursion over
/// placed sets. Placing more generators never hurts later levels, hence
/// each level is taken to be a maximal clique of the pairs allowed so far.
pub fn sv_number_with_limit(ideal: &SqfIdeal, limit: usize) -> Result<SvResult> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let gens = ideal.generators();
    let t = gens.len();
    if t > limit.min(63) {
        return Err(Error::CapExceeded {
            what: "Schmitt-Vogel search over generators",
            size: t,
            limit,
        });
    }
    let mut solver = SvSolver {
        gens,
        all: (1u64 << t) - 1,
        memo: HashMap::new(),
    };
    let mut best: Option<(usize, usize)> = None;
    for g in 0..t {
        let r = 1 + solver.levels_needed(1 << g);
        if best.is_none_or(|(b, _)| r < b) {
            best = Some((r, g));
        }
    }
    let (restricted, first) = best.expect("nonzero ideal has a generator");

    let mut levels = vec![vec![gens[first]]];
    let mut placed = 1u64 << first;
    while placed != solver.all {
        let next = solver.memo[&placed].1;
        levels.push(bits(next).map(|b| gens[b]).collect());
        placed |= next;
    }
    let witness = SvWitness::new(ideal.ambient(), levels);
    debug_assert_eq!(witness.len(), restricted);
    Ok(SvResult {
        restricted,
        witness,
    })
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |b| mask & (1 << b) != 0)
}

struct SvSolver<'a> {
    gens: &'a [VarSet],
    all: u64,
    /// placed set -> (levels still needed, next level)
    memo: HashMap<u64, (usize, u64)>,
}

impl SvSolver<'_> {
    fn levels_needed(&mut self, placed: u64) -> usize {
        if placed == self.all {
            return 0;
        }
        if let Some(&(r, _)) = self.memo.get(&placed) {
            return r;
        }
        let remaining = self.all & !placed;
        let compatible = |a: usize, b: usize| {
            bits(placed).any(|p| divides_product(self.gens[p], self.gens[a], self.gens[b]))
        };
        let mut adjacency = vec![0u64; self.gens.len()];
        for a in bits(remaining) {
            for b in bits(remaining) {
                if a != b && compatible(a, b) {
                    adjacency[a] |= 1 << b;
                }
            }
        }
        let mut cliques = Vec::new();
        maximal_cliques(&adjacency, 0, remaining, 0, &mut cliques);
        cliques.sort_unstable();
        let mut best = (usize::MAX, 0u64);
        for q in cliques {
            let r = 1 + self.levels_needed(placed | q);
            if r < best.0 {
                best = (r, q);
            }
        }
        self.memo.insert(placed, best);
        best.0
    }
}

/// Bron–Kerbosch with pivoting over bitmask adjacency.
fn maximal_cliques(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| (p & adj[u]).count_ones())
        .unwrap();
    for v in bits(p & !adj[pivot]).collect::<Vec<_>>() {
        maximal_cliques(adj, r | (1 << v), p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Applies `x_i ↦ 1` for the variables of `prime` to every level.
///
/// Repeated images are kept only at their first occurrence and emptied levels
/// are dropped; the result is a witness for `I(P)` with at most as many levels.
pub fn transport_localize(
    ideal: &SqfIdeal,
    witness: &SvWitness,
    prime: &MonomialPrime,
) -> Result<SvWitness> {
    require_valid(ideal, witness)?;
    let mut seen: Vec<VarSet> = Vec::new();
    let mut levels = Vec::new();
    for level in &witness.levels {
        let mut out = Vec::new();
        for m in level {
            let image = m.difference(prime.variables());
            if !seen.contains(&image) {
                seen.push(image);
                out.push(image);
            }
        }
        if !out.is_empty() {
            levels.push(out);
        }
    }
    Ok(SvWitness::new(witness.ambient, levels))
}

/// Drops every monomial divisible by a variable `x_i` of the single element
/// of `P_1`, using the lowest such `i`. Returns `i` and a witness for
/// `I ∩ S'` whose length is at most `r - 1`.
pub fn transport_eliminate(ideal: &SqfIdeal, witness: &SvWitness) -> Result<(usize, SvWitness)> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    require_valid(ideal, witness)?;
    let u = witness.levels[0][0];
    let i = u
        .first()
        .ok_or_else(|| Error::InvalidWitness("first level is the unit monomial".into()))?;
    let levels = witness
        .levels
        .iter()
        .map(|l| {
            l.iter()
                .copied()
                .filter(|m| !m.contains(i))
                .collect::<Vec<_>>()
        })
        .filter(|l| !l.is_empty())
        .collect();
    Ok((i, SvWitness::new(witness.ambient, levels)))
}

fn require_valid(ideal: &SqfIdeal, witness: &SvWitness) -> Result<()> {
    match check_sv_witness(ideal, witness)? {
        None => Ok(()),
        Some(v) => Err(Error::InvalidWitness(v.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[usize]]) -> SqfIdeal {
        SqfIdeal::from_indices(n, gens).unwrap()
    }

    fn witness(n: usize, levels: &[&[&[usize]]]) -> SvWitness {
        let l: Vec<Vec<Vec<usize>>> = levels
            .iter()
            .map(|lv| lv.iter().map(|m| m.to_vec()).collect())
            .collect();
        SvWitness::from_indices(n, &l).unwrap()
    }

    fn example_one() -> SqfIdeal {
        // (xy, xz, yzt) with x, y, z, t = x1, x2, x3, x4
        ideal(4, &[&[1, 2], &[1, 3], &[2, 3, 4]])
    }

    fn example_two_witness() -> SvWitness {
        witness(
            5,
            &[
                &[&[1, 2, 3]],
                &[&[1, 2, 4], &[1, 3, 4], &[2, 3, 4]],
                &[
                    &[1, 2, 5],
                    &[1, 3, 5],
                    &[1, 4, 5],
                    &[2, 3, 5],
                    &[2, 4, 5],
                    &[3, 4, 5],
                ],
            ],
        )
    }

    #[test]
    fn check_examples() {
        let w = witness(4, &[&[&[1, 2]], &[&[1, 3], &[2, 3, 4]]]);
        assert_eq!(check_sv_witness(&example_one(), &w).unwrap(), None);

        let veronese = SqfIdeal::squarefree_veronese(5, 3).unwrap();
        assert_eq!(
            check_sv_witness(&veronese, &example_two_witness()).unwrap(),
            None
        );

        let w = witness(4, &[&[&[1, 2], &[1, 3]], &[&[2, 3, 4]]]);
        assert_eq!(
            check_sv_witness(&example_one(), &w).unwrap(),
            Some(SvViolation::FirstLevelSize(2))
        );
    }

    #[test]
    fn check_reports_pairs_and_missing_generators() {
        let w = witness(4, &[&[&[1, 3]], &[&[1, 2], &[2, 3, 4]]]);
        // x1x3 divides x1x2 * x2x3x4 = x1 x2^2 x3 x4
        assert_eq!(check_sv_witness(&example_one(), &w).unwrap(), None);

        let w = witness(4, &[&[&[2, 3, 4]], &[&[1, 2], &[1, 3]]]);
        assert_eq!(
            check_sv_witness(&example_one(), &w).unwrap(),
            Some(SvViolation::Pair {
                level: 2,
                u: VarSet::from_indices([1, 2]).unwrap(),
                u2: VarSet::from_indices([1, 3]).unwrap(),
            })
        );

        let w = witness(4, &[&[&[1, 2]], &[&[1, 3]]]);
        assert!(matches!(
            check_sv_witness(&example_one(), &w).unwrap(),
            Some(SvViolation::MissingGenerator(_))
        ));
    }

    #[test]
    fn non_members_are_an_error() {
        let w = witness(4, &[&[&[1]], &[&[1, 3], &[2, 3, 4]]]);
        assert!(matches!(
            check_sv_witness(&example_one(), &w),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn non_generators_of_mon_i_are_accepted() {
        // x1x2x4 is in I but not a minimal generator
        let w = witness(4, &[&[&[1, 2]], &[&[1, 3], &[2, 3, 4], &[1, 2, 4]]]);
        assert_eq!(check_sv_witness(&example_one(), &w).unwrap(), None);
    }

    #[test]
    fn solver_examples() {
        let r = sv_number(&ideal(3, &[&[1, 2, 3]])).unwrap();
        assert_eq!(r.restricted, 1);

        let r = sv_number(&example_one()).unwrap();
        assert_eq!(r.restricted, 2);
        assert_eq!(check_sv_witness(&example_one(), &r.witness).unwrap(), None);

        let veronese = SqfIdeal::squarefree_veronese(5, 3).unwrap();
        let r = sv_number(&veronese).unwrap();
        assert_eq!(r.restricted, 3);
        assert_eq!(check_sv_witness(&veronese, &r.witness).unwrap(), None);

        assert_eq!(
            sv_number(&SqfIdeal::zero(3).unwrap()),
            Err(Error::ZeroIdeal)
        );
    }

    #[test]
    fn solver_cap() {
        let big = SqfIdeal::squarefree_veronese(6, 3).unwrap();
        assert!(matches!(sv_number(&big), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn localize_examples() {
        let w = witness(4, &[&[&[1, 2]], &[&[1, 3], &[2, 3, 4]]]);
        let p = MonomialPrime::principal(4, 1).unwrap();
        let out = transport_localize(&example_one(), &w, &p).unwrap();
        let local = example_one().localize(&p).unwrap();
        assert_eq!(check_sv_witness(&local, &out).unwrap(), None);
        assert!(out.len() <= 2);

        let none = MonomialPrime::new(4, VarSet::EMPTY).unwrap();
        assert_eq!(transport_localize(&example_one(), &w, &none).unwrap(), w);

        let all = MonomialPrime::new(4, VarSet::full(4)).unwrap();
        let out = transport_localize(&example_one(), &w, &all).unwrap();
        let unit = example_one().localize(&all).unwrap();
        assert!(unit.is_unit());
        assert_eq!(check_sv_witness(&unit, &out).unwrap(), None);
    }

    #[test]
    fn eliminate_examples() {
        let w = witness(4, &[&[&[1, 2]], &[&[1, 3], &[2, 3, 4]]]);
        let (i, out) = transport_eliminate(&example_one(), &w).unwrap();
        assert_eq!(i, 1);
        assert_eq!(out, witness(4, &[&[&[2, 3, 4]]]));
        let reduced = example_one().eliminate_variable(1).unwrap();
        assert_eq!(check_sv_witness(&reduced, &out).unwrap(), None);

        let principal = ideal(3, &[&[2, 3]]);
        let w = witness(3, &[&[&[2, 3]]]);
        let (i, out) = transport_eliminate(&principal, &w).unwrap();
        assert_eq!(i, 2);
        assert!(out.is_empty());

        let veronese = SqfIdeal::squarefree_veronese(5, 3).unwrap();
        let (i, out) = transport_eliminate(&veronese, &example_two_witness()).unwrap();
        assert_eq!(i, 1);
        assert!(out.len() <= 2);
        let reduced = veronese.eliminate_variable(1).unwrap();
        assert_eq!(check_sv_witness(&reduced, &out).unwrap(), None);
    }
}
