#![allow(dead_code)]

use stanley::sdepth::CharPoset;
use stanley::VarSet;

/// Stanley depth by enumerating every interval partition of the poset.
///
/// The first uncovered element in (size, lex) order has all its proper
/// subsets in the poset already covered, so it must be the bottom of its
/// interval; every top above it is tried. No bound-based pruning.
pub fn brute_force_sdepth(poset: &CharPoset) -> usize {
    let ground = poset.ground().to_vec();
    let mut covered = vec![false; ground.len()];
    let mut best = None;
    enumerate(poset, &ground, &mut covered, usize::MAX, &mut best);
    best.expect("every poset has the partition into singletons")
}

fn enumerate(
    poset: &CharPoset,
    ground: &[VarSet],
    covered: &mut Vec<bool>,
    current_min: usize,
    best: &mut Option<usize>,
) {
    let Some(first) = covered.iter().position(|c| !c) else {
        let value = if current_min == usize::MAX {
            poset.active().len()
        } else {
            current_min
        };
        *best = Some(best.map_or(value, |b: usize| b.max(value)));
        return;
    };
    let bottom = ground[first];
    for (t, &top) in ground.iter().enumerate() {
        if !bottom.is_subset(top) || covered[t] {
            continue;
        }
        let members: Vec<usize> = ground
            .iter()
            .enumerate()
            .filter(|(_, &s)| bottom.is_subset(s) && s.is_subset(top))
            .map(|(k, _)| k)
            .collect();
        // intervals lie inside the poset and avoid covered elements
        let interval_size = 1usize << (top.len() - bottom.len());
        if members.len() != interval_size || members.iter().any(|&k| covered[k]) {
            continue;
        }
        for &k in &members {
            covered[k] = true;
        }
        enumerate(poset, ground, covered, current_min.min(top.len()), best);
        for &k in &members {
            covered[k] = false;
        }
    }
}
