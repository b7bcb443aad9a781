//! Linear quotient orders and the projective dimension they determine.

use std::collections::HashSet;

use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::ideal::{minimal_elements, SqfIdeal};
use crate::varset::VarSet;

/// An order `u_1 ≻ … ≻ u_t` on the minimal generators whose successive colons
/// `(u_1, …, u_{i-1}) : u_i` are generated by variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LqOrder {
    ambient: usize,
    order: Vec<VarSet>,
    colon_counts: Vec<usize>,
}

impl LqOrder {
    pub fn order(&self) -> &[VarSet] {
        &self.order
    }

    /// `n_2, …, n_t`: number of variables generating each colon.
    pub fn colon_counts(&self) -> &[usize] {
        &self.colon_counts
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// `pd(S/I) = max n_i + 1`; a principal ideal has projective dimension 1.
    pub fn projective_dimension(&self) -> usize {
        self.colon_counts.iter().copied().max().unwrap_or(0) + 1
    }

    /// `depth(S/I) = m - pd(S/I)` for a ring with `active_variables` variables.
    pub fn depth(&self, active_variables: usize) -> Result<usize> {
        let pd = self.projective_dimension();
        active_variables
            .checked_sub(pd)
            .ok_or_else(|| Error::ActiveTooSmall {
                active: active_variables.to_string(),
                support: format!("projective dimension {pd}"),
            })
    }
}

/// Free function form of [`LqOrder::projective_dimension`].
pub fn pd_from_lq(lq: &LqOrder) -> usize {
    lq.projective_dimension()
}

/// Free function form of [`LqOrder::depth`].
pub fn depth_from_lq(lq: &LqOrder, active_variables: usize) -> Result<usize> {
    lq.depth(active_variables)
}

/// Outcome of testing a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LqVerdict {
    Valid(LqOrder),
    /// First 1-based position whose colon is not generated by variables.
    Fails {
        position: usize,
        colon: SqfIdeal,
    },
}

impl LqVerdict {
    pub fn into_order(self) -> Option<LqOrder> {
        match self {
            LqVerdict::Valid(o) => Some(o),
            LqVerdict::Fails { .. } => None,
        }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, LqVerdict::Valid(_))
    }
}

fn colon_supports(prefix: &[VarSet], u: VarSet) -> Vec<VarSet> {
    minimal_elements(prefix.iter().map(|p| p.difference(u)).collect())
}

fn linear_count(colon: &[VarSet]) -> Option<usize> {
    colon.iter().all(|g| g.len() == 1).then_some(colon.len())
}

/// `(u_1, …, u_{i-1}) : u_i` for the 1-based position `i ≥ 2`.
pub fn colon_prev(ambient: usize, order: &[VarSet], i: usize) -> Result<SqfIdeal> {
    if i < 2 || i > order.len() {
        return Err(Error::PositionOutOfRange(i, order.len()));
    }
    SqfIdeal::new(ambient, colon_supports(&order[..i - 1], order[i - 1]))
}

/// Tests whether `ideal` has linear quotients with respect to `order`.
pub fn check_lq_order(ideal: &SqfIdeal, order: &[VarSet]) -> Result<LqVerdict> {
    let mut sorted = order.to_vec();
    sorted.sort();
    if sorted != ideal.generators() {
        return Err(Error::NotAPermutation);
    }
    let mut counts = Vec::with_capacity(order.len().saturating_sub(1));
    for i in 1..order.len() {
        let colon = colon_supports(&order[..i], order[i]);
        match linear_count(&colon) {
            Some(c) => counts.push(c),
            None => {
                return Ok(LqVerdict::Fails {
                    position: i + 1,
                    colon: SqfIdeal::new(ideal.ambient(), colon)?,
                })
            }
        }
    }
    Ok(LqVerdict::Valid(LqOrder {
        ambient: ideal.ambient(),
        order: order.to_vec(),
        colon_counts: counts,
    }))
}

/// Searches for any linear quotient order.
///
/// Backtracks over prefixes; a prefix is extended only by generators whose
/// colon against it is generated by variables. Whether a prefix can be
/// completed depends only on its set of generators, so dead sets are cached.
pub fn find_lq_order(ideal: &SqfIdeal) -> Result<Option<LqOrder>> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let gens = ideal.generators();
    if gens.len() > 64 {
        return Err(Error::CapExceeded {
            what: "linear quotient search over generators",
            size: gens.len(),
            limit: 64,
        });
    }
    let mut prefix = Vec::with_capacity(gens.len());
    let mut dead = HashSet::new();
    if extend(gens, &mut prefix, 0, &mut dead) {
        let order: Vec<VarSet> = prefix.iter().map(|&k| gens[k]).collect();
        return check_lq_order(ideal, &order).map(LqVerdict::into_order);
    }
    Ok(None)
}

fn extend(gens: &[VarSet], prefix: &mut Vec<usize>, used: u64, dead: &mut HashSet<u64>) -> bool {
    if prefix.len() == gens.len() {
        return true;
    }
    if dead.contains(&used) {
        return false;
    }
    let placed: Vec<VarSet> = prefix.iter().map(|&k| gens[k]).collect();
    for (k, &g) in gens.iter().enumerate() {
        if used & (1 << k) != 0 {
            continue;
        }
        if !placed.is_empty() && linear_count(&colon_supports(&placed, g)).is_none() {
            continue;
        }
        prefix.push(k);
        if extend(gens, prefix, used | (1 << k), dead) {
            return true;
        }
        prefix.pop();
    }
    dead.insert(used);
    false
}

/// The order built by peeling a simplicial vertex off a chordal clutter.
///
/// For `I = I(c_d(C))` and the lowest simplicial vertex `v`, the generators
/// divisible by `x_v` come first, ordered recursively through
/// `c_{d-1}(C / v)`, followed by the rest ordered through `c_d(C ∖ v)`.
pub fn chordal_lq_order(clutter: &Clutter, d: usize) -> Result<LqOrder> {
    if d == 0 {
        return Err(Error::InvalidDegree);
    }
    if let Some(min) = clutter.min_edge_cardinality() {
        if min < d {
            return Err(Error::EdgeTooSmall { min, d });
        }
    }
    if !clutter.is_chordal()?.is_chordal() {
        return Err(Error::NotChordal);
    }
    let ideal = clutter.d_complement(d)?.edge_ideal()?;
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let order = peel(clutter, d)?;
    match check_lq_order(&ideal, &order)? {
        LqVerdict::Valid(lq) => Ok(lq),
        LqVerdict::Fails { position, colon } => Err(Error::Internal(format!(
            "simplicial order fails at position {position}: colon {colon}"
        ))),
    }
}

fn peel(clutter: &Clutter, d: usize) -> Result<Vec<VarSet>> {
    let gens = clutter.d_complement(d)?.edge_ideal()?.generators().to_vec();
    if gens.is_empty() || d == 1 || clutter.vertices().len() <= 1 {
        return Ok(gens);
    }
    let v = clutter
        .vertices()
        .iter()
        .find(|&v| clutter.is_simplicial(v))
        .ok_or(Error::NotChordal)?;
    let mut order: Vec<VarSet> = peel(&clutter.contraction(v)?, d - 1)?
        .into_iter()
        .map(|g| g.with(v))
        .collect();
    order.extend(peel(&clutter.deletion(v)?, d)?);

    let mut check = order.clone();
    check.sort();
    if check != gens {
        return Err(Error::Internal(format!(
            "peeling vertex {v} of {clutter} with d = {d} does not reproduce the generators"
        )));
    }
    Ok(order)
}
