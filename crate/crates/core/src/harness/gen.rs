//! Seeded instance generation.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clutter::{ChordalityCertificate, Clutter};
use crate::error::Result;
use crate::ideal::{minimal_elements, polarize, GenMonomial, SqfIdeal};
use crate::varset::VarSet;

/// Largest vertex count accepted by [`generate_chordal_clutters`].
pub const GEN_MAX_VERTICES: usize = 7;

/// Inclusion probability for each candidate edge of a random clutter.
pub const EDGE_PROBABILITY: f64 = 0.5;

fn rng_for(seed: u64, stream: u64, a: usize, b: usize) -> ChaCha8Rng {
    let mix = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(stream << 48)
        .wrapping_add((a as u64) << 24)
        .wrapping_add(b as u64);
    ChaCha8Rng::seed_from_u64(mix)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GenStats {
    pub n: usize,
    pub d: usize,
    pub requested: usize,
    pub emitted: usize,
    pub attempts: usize,
}

/// Chordal clutters on `n` vertices with every edge of size at least `d`.
///
/// For `d = 2` half of the request comes from chordal graphs grown by
/// attaching each new vertex to a clique, the rest (and everything for other
/// `d`) from random clutters filtered by the chordality check. Duplicates are
/// dropped, so fewer than `count` clutters may come back.
pub fn generate_chordal_clutters(
    n: usize,
    d: usize,
    count: usize,
    seed: u64,
) -> Result<(Vec<(Clutter, ChordalityCertificate)>, GenStats)> {
    if n == 0 || n > GEN_MAX_VERTICES {
        return Err(crate::Error::CapExceeded {
            what: "clutter generation on vertex count",
            size: n,
            limit: GEN_MAX_VERTICES,
        });
    }
    if d == 0 {
        return Err(crate::Error::InvalidDegree);
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    let max_attempts = 40 * count.max(1);

    if d == 2 {
        let mut rng = rng_for(seed, 1, n, d);
        let target = count / 2;
        while out.len() < target && attempts < max_attempts {
            attempts += 1;
            let c = random_chordal_graph(n, &mut rng)?;
            let cert = c.is_chordal()?;
            if cert.is_chordal() && seen.insert(c.clone()) {
                out.push((c, cert));
            }
        }
    }

    let mut rng = rng_for(seed, 2, n, d);
    let candidates: Vec<VarSet> = VarSet::full(n).subsets().filter(|s| s.len() >= d).collect();
    let mut candidates = candidates;
    candidates.sort();
    while out.len() < count && attempts < max_attempts {
        attempts += 1;
        let picked: Vec<VarSet> = candidates
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(EDGE_PROBABILITY))
            .collect();
        let c = Clutter::new(n, minimal_elements(picked))?;
        if seen.contains(&c) {
            continue;
        }
        let cert = c.is_chordal()?;
        if cert.is_chordal() {
            seen.insert(c.clone());
            out.push((c, cert));
        }
    }
    let stats = GenStats {
        n,
        d,
        requested: count,
        emitted: out.len(),
        attempts,
    };
    Ok((out, stats))
}

/// Grows a chordal graph: every new vertex is joined to a clique of the old ones.
pub fn random_chordal_graph<R: Rng>(n: usize, rng: &mut R) -> Result<Clutter> {
    let mut edges: Vec<VarSet> = Vec::new();
    let adjacent =
        |edges: &[VarSet], a: usize, b: usize| edges.contains(&VarSet::singleton(a).with(b));
    for v in 2..=n {
        let mut older: Vec<usize> = (1..v).collect();
        older.shuffle(rng);
        let mut clique: Vec<usize> = Vec::new();
        for u in older {
            if clique.iter().all(|&w| adjacent(&edges, u, w)) && rng.gen_bool(EDGE_PROBABILITY) {
                clique.push(u);
            }
        }
        edges.extend(clique.into_iter().map(|u| VarSet::singleton(u).with(v)));
    }
    Clutter::new(n, edges)
}

/// Random squarefree ideal with at most `max_generators` minimal generators.
pub fn random_ideal<R: Rng>(n: usize, max_generators: usize, rng: &mut R) -> Result<SqfIdeal> {
    let t = rng.gen_range(1..=max_generators);
    let full = VarSet::full(n).mask();
    let gens: Vec<VarSet> = (0..t)
        .map(|_| loop {
            let s = VarSet::from_mask(rng.gen::<u64>() & full);
            if !s.is_empty() {
                break s;
            }
        })
        .collect();
    SqfIdeal::new(n, gens)
}

/// Seeded batch of distinct random squarefree ideals in `2..=max_n` variables.
pub fn random_ideals(
    count: usize,
    max_n: usize,
    max_generators: usize,
    seed: u64,
) -> Result<Vec<SqfIdeal>> {
    let mut rng = rng_for(seed, 3, max_n, max_generators);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count.max(1) {
        attempts += 1;
        let n = rng.gen_range(2..=max_n.max(2));
        let ideal = random_ideal(n, max_generators, &mut rng)?;
        if seen.insert(ideal.clone()) {
            out.push(ideal);
        }
    }
    Ok(out)
}

/// A quadratic monomial ideal whose polarization is an edge ideal with chordal complement.
#[derive(Clone, Debug)]
pub struct QuadraticInstance {
    pub n: usize,
    pub generators: Vec<GenMonomial>,
    pub polarized: SqfIdeal,
    /// Complement of the polarized edge graph; chordal by construction of the filter.
    pub complement: Clutter,
}

/// Random quadratic ideals (squares allowed) in `n` variables kept when the
/// complement of the polarized graph is chordal.
pub fn generate_quadratic(n: usize, count: usize, seed: u64) -> Result<Vec<QuadraticInstance>> {
    let mut rng = rng_for(seed, 4, n, 2);
    let mut monomials = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut e = vec![0u32; n];
            e[i] += 1;
            e[j] += 1;
            monomials.push(GenMonomial::new(e)?);
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 40 * count.max(1) {
        attempts += 1;
        let gens: Vec<GenMonomial> = monomials
            .iter()
            .filter(|_| rng.gen_bool(EDGE_PROBABILITY))
            .cloned()
            .collect();
        if gens.is_empty() || gens.iter().all(|g| g.is_squarefree()) {
            continue;
        }
        let p = polarize(n, &gens)?;
        if !seen.insert(p.ideal.clone()) {
            continue;
        }
        let graph = Clutter::new(p.ideal.ambient(), p.ideal.generators().iter().copied())?;
        let complement = graph.complement_graph()?;
        if complement.graph_is_chordal()? {
            out.push(QuadraticInstance {
                n,
                generators: gens,
                polarized: p.ideal,
                complement,
            });
        }
    }
    Ok(out)
}
