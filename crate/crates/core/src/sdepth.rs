//! Stanley depth of `I` and `S/I` through interval partitions.
//!
//! A Stanley decomposition of a squarefree module corresponds to a partition
//! of its characteristic poset into intervals `[σ, τ]`, the interval standing
//! for the Stanley space `x_σ K[x_j : j ∈ τ]`. The Stanley depth is the
//! largest `k` for which a partition with every `|τ| ≥ k` exists.
//!
//! The decision procedure relies on two reductions that keep the search
//! complete:
//!
//! * an interval `[σ, τ]` with `|τ| > max(k, |σ|)` splits into
//!   `[σ, τ ∖ j]` and `[σ ∪ j, τ]`, so tops can be taken of size exactly
//!   `k` and elements of size `≥ k` not yet covered become singletons;
//! * the uncovered element of smallest size cannot sit above another
//!   uncovered element, so it is the bottom of its interval.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::SqfIdeal;
use crate::varset::VarSet;

/// Default limit on the number of active variables for the exact solver.
pub const SDEPTH_MAX_VARIABLES: usize = 7;

/// Which module the poset describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    /// The ideal `I`: supports `σ` with `x_σ ∈ I`.
    Ideal,
    /// The quotient `S/I`: supports `σ` with `x_σ ∉ I`.
    Quotient,
}

impl std::str::FromStr for ModuleKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ideal" => Ok(ModuleKind::Ideal),
            "quotient" => Ok(ModuleKind::Quotient),
            other => Err(format!(
                "unknown kind '{other}', expected ideal or quotient"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoset {
    kind: ModuleKind,
    active: VarSet,
    ground: Vec<VarSet>,
}

impl CharPoset {
    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn active(&self) -> VarSet {
        self.active
    }

    /// Elements sorted by size, then lexicographically.
    pub fn ground(&self) -> &[VarSet] {
        &self.ground
    }

    pub fn contains(&self, sigma: VarSet) -> bool {
        self.ground
            .binary_search_by(|g| order_key(*g).cmp(&order_key(sigma)))
            .is_ok()
    }
}

fn order_key(s: VarSet) -> (usize, VarSet) {
    (s.len(), s)
}

/// Characteristic poset of `I` or `S/I` over the ring on `active`.
pub fn char_poset(ideal: &SqfIdeal, kind: ModuleKind, active: VarSet) -> Result<CharPoset> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if kind == ModuleKind::Ideal && ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if !ideal.support().is_subset(active) || !active.is_subset(VarSet::full(ideal.ambient())) {
        return Err(Error::ActiveTooSmall {
            active: format!("{active:?}"),
            support: format!("{:?}", ideal.support()),
        });
    }
    let mut ground: Vec<VarSet> = active
        .subsets()
        .filter(|&s| ideal.contains(s) == (kind == ModuleKind::Ideal))
        .collect();
    ground.sort_by_key(|s| order_key(*s));
    Ok(CharPoset {
        kind,
        active,
        ground,
    })
}

/// Disjoint intervals `[σ, τ]` covering a characteristic poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalPartition {
    pub intervals: Vec<(VarSet, VarSet)>,
}

impl IntervalPartition {
    /// Smallest top size, i.e. the Stanley depth of the decomposition.
    pub fn min_top(&self) -> Option<usize> {
        self.intervals.iter().map(|(_, t)| t.len()).min()
    }

    /// Checks that the intervals lie in the poset and cover each element exactly once.
    pub fn validate(&self, poset: &CharPoset) -> std::result::Result<(), String> {
        let mut seen: HashSet<VarSet> = HashSet::new();
        for &(bottom, top) in &self.intervals {
            if !bottom.is_subset(top) {
                return Err(format!("{bottom:?} is not below {top:?}"));
            }
            for free in top.difference(bottom).subsets() {
                let rho = bottom.union(free);
                if !poset.contains(rho) {
                    return Err(format!(
                        "{rho:?} in [{bottom:?}, {top:?}] is outside the poset"
                    ));
                }
                if !seen.insert(rho) {
                    return Err(format!("{rho:?} is covered twice"));
                }
            }
        }
        if seen.len() != poset.ground.len() {
            return Err(format!(
                "{} of {} poset elements covered",
                seen.len(),
                poset.ground.len()
            ));
        }
        Ok(())
    }

    pub fn to_index_lists(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        self.intervals
            .iter()
            .map(|(s, t)| (s.to_vec(), t.to_vec()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdepthResult {
    pub value: usize,
    pub certificate: IntervalPartition,
    /// The solver refuted `value + 1` (always true unless `value` is the ring dimension).
    pub maximality_certified: bool,
}

/// Search state in local coordinates: bit `b` stands for the `b`-th active variable.
struct Solver<'a> {
    m: usize,
    k: usize,
    in_ground: Vec<bool>,
    /// Candidate tops of size `k` for each element of size below `k`.
    tops: Vec<Vec<u32>>,
    covered: Vec<u64>,
    chosen: Vec<(u32, u32)>,
    dead: HashSet<Vec<u64>>,
    poset: &'a CharPoset,
}

fn to_local(active: VarSet, s: VarSet) -> u32 {
    let mut out = 0u32;
    for (b, v) in active.iter().enumerate() {
        if s.contains(v) {
            out |= 1 << b;
        }
    }
    out
}

fn to_global(active: VarSet, s: u32) -> VarSet {
    let mut out = VarSet::EMPTY;
    for (b, v) in active.iter().enumerate() {
        if s & (1 << b) != 0 {
            out = out.with(v);
        }
    }
    out
}

fn submasks(s: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(s);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & s) };
        Some(cur)
    })
}

impl<'a> Solver<'a> {
    fn new(poset: &'a CharPoset, k: usize) -> Self {
        let m = poset.active.len();
        let size = 1usize << m;
        let mut in_ground = vec![false; size];
        for &g in &poset.ground {
            in_ground[to_local(poset.active, g) as usize] = true;
        }
        let full = (size - 1) as u32;
        let mut tops = vec![Vec::new(); size];
        for sigma in 0..size as u32 {
            let c = sigma.count_ones() as usize;
            if !in_ground[sigma as usize] || c >= k {
                continue;
            }
            for extra in submasks(full & !sigma) {
                if extra.count_ones() as usize == k - c && in_ground[(sigma | extra) as usize] {
                    tops[sigma as usize].push(sigma | extra);
                }
            }
            tops[sigma as usize].sort_unstable();
        }
        Solver {
            m,
            k,
            in_ground,
            tops,
            covered: vec![0; size.div_ceil(64)],
            chosen: Vec::new(),
            dead: HashSet::new(),
            poset,
        }
    }

    #[inline]
    fn is_covered(&self, s: u32) -> bool {
        self.covered[(s / 64) as usize] & (1 << (s % 64)) != 0
    }

    #[inline]
    fn toggle(&mut self, s: u32) {
        self.covered[(s / 64) as usize] ^= 1 << (s % 64);
    }

    fn interval_free(&self, bottom: u32, top: u32) -> bool {
        submasks(top & !bottom).all(|f| !self.is_covered(bottom | f))
    }

    fn toggle_interval(&mut self, bottom: u32, top: u32) {
        for f in submasks(top & !bottom) {
            self.toggle(bottom | f);
        }
    }

    fn run(&mut self) -> bool {
        let size = 1u32 << self.m;
        // An element below k with no top at all sinks the search immediately.
        for s in 0..size {
            if self.in_ground[s as usize]
                && (s.count_ones() as usize) < self.k
                && self.tops[s as usize].is_empty()
            {
                return false;
            }
        }
        self.search()
    }

    fn search(&mut self) -> bool {
        let size = 1u32 << self.m;
        let pending = |s: u32| {
            (s.count_ones() as usize) < self.k && self.in_ground[s as usize] && !self.is_covered(s)
        };
        let Some(min_size) = (0..size)
            .filter(|&s| pending(s))
            .map(|s| s.count_ones())
            .min()
        else {
            return true;
        };
        let mut best: Option<(u32, usize)> = None;
        for s in 0..size {
            if s.count_ones() != min_size || !pending(s) {
                continue;
            }
            let options = self.tops[s as usize]
                .iter()
                .filter(|&&t| self.interval_free(s, t))
                .count();
            if options == 0 {
                return false;
            }
            if best.is_none_or(|(_, o)| options < o) {
                best = Some((s, options));
            }
        }
        let Some((bottom, _)) = best else {
            return true;
        };
        if self.dead.contains(&self.covered) {
            return false;
        }
        let candidates: Vec<u32> = self.tops[bottom as usize]
            .iter()
            .copied()
            .filter(|&t| self.interval_free(bottom, t))
            .collect();
        for top in candidates {
            self.toggle_interval(bottom, top);
            self.chosen.push((bottom, top));
            if self.search() {
                return true;
            }
            self.chosen.pop();
            self.toggle_interval(bottom, top);
        }
        self.dead.insert(self.covered.clone());
        false
    }

    fn partition(&self) -> IntervalPartition {
        let active = self.poset.active;
        let mut intervals: Vec<(VarSet, VarSet)> = self
            .chosen
            .iter()
            .map(|&(b, t)| (to_global(active, b), to_global(active, t)))
            .collect();
        for s in 0..(1u32 << self.m) {
            if self.in_ground[s as usize] && !self.is_covered(s) {
                let g = to_global(active, s);
                intervals.push((g, g));
            }
        }
        intervals.sort_by_key(|(b, t)| (order_key(*b), *t));
        IntervalPartition { intervals }
    }
}

/// A partition of `poset` into intervals with every top of size at least `k`, if one exists.
pub fn decide_sdepth(poset: &CharPoset, k: usize) -> Option<IntervalPartition> {
    if k > poset.active.len() {
        return None;
    }
    let mut solver = Solver::new(poset, k);
    solver.run().then(|| solver.partition())
}

pub fn sdepth(ideal: &SqfIdeal, kind: ModuleKind, active: VarSet) -> Result<SdepthResult> {
    sdepth_with_limit(ideal, kind, active, SDEPTH_MAX_VARIABLES)
}

/// Largest `k` accepted by [`decide_sdepth`], searching downward from the ring dimension.
pub fn sdepth_with_limit(
    ideal: &SqfIdeal,
    kind: ModuleKind,
    active: VarSet,
    limit: usize,
) -> Result<SdepthResult> {
    let poset = char_poset(ideal, kind, active)?;
    let m = active.len();
    if m > limit {
        return Err(Error::CapExceeded {
            what: "Stanley depth search over active variables",
            size: m,
            limit,
        });
    }
    for k in (0..=m).rev() {
        if let Some(certificate) = decide_sdepth(&poset, k) {
            certificate
                .validate(&poset)
                .map_err(|e| Error::Internal(format!("solver produced a bad partition: {e}")))?;
            return Ok(SdepthResult {
                value: k,
                certificate,
                maximality_certified: k < m,
            });
        }
    }
    Err(Error::Internal("no interval partition at k = 0".into()))
}
