//! Depth of `S/I` from the Stanley–Reisner complex via Hochster's formula.
//!
//! `β_{i,σ}(S/I) = dim H̃_{|σ|-i-1}(Δ_σ)`, so `pd(S/I)` is the largest `i`
//! reached by any nonvanishing reduced homology of an induced subcomplex,
//! and `depth(S/I) = m - pd(S/I)`. This module never looks at generator
//! orders, which keeps it independent of the linear-quotient route.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::SqfIdeal;
use crate::linalg::Matrix;
use crate::scalar::{Field, Fp, Scalar};
use crate::varset::VarSet;

/// Default limit on the number of active variables swept by the oracle.
pub const DEPTH_MAX_VARIABLES: usize = 14;

pub type Gf32003 = Fp<32003>;

fn check_active(ideal: &SqfIdeal, active: VarSet) -> Result<()> {
    if ideal.support().is_subset(active) && active.is_subset(VarSet::full(ideal.ambient())) {
        Ok(())
    } else {
        Err(Error::ActiveTooSmall {
            active: format!("{active:?}"),
            support: format!("{:?}", ideal.support()),
        })
    }
}

/// Stanley–Reisner complex of a proper squarefree ideal on the active variables.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    active: VarSet,
    nonfaces: Vec<VarSet>,
}

impl SimplicialComplex {
    pub fn vertices(&self) -> VarSet {
        self.active
    }

    /// `σ` is a face iff `x_σ ∉ I`.
    pub fn is_face(&self, sigma: VarSet) -> bool {
        sigma.is_subset(self.active) && !self.nonfaces.iter().any(|g| g.is_subset(sigma))
    }

    /// Faces of `Δ_σ` grouped by cardinality (index 0 holds the empty face).
    pub fn faces_by_size(&self, sigma: VarSet) -> Vec<Vec<VarSet>> {
        let mut by_size = vec![Vec::new(); sigma.len() + 1];
        for f in sigma.subsets() {
            if self.is_face(f) {
                by_size[f.len()].push(f);
            }
        }
        for layer in &mut by_size {
            layer.sort();
        }
        while by_size.len() > 1 && by_size.last().is_some_and(|l| l.is_empty()) {
            by_size.pop();
        }
        by_size
    }

    /// All faces of the complex.
    pub fn faces(&self) -> Vec<VarSet> {
        self.faces_by_size(self.active)
            .into_iter()
            .flatten()
            .collect()
    }

    /// Ranks of `H̃_k(Δ_σ)` for `k = -1, 0, 1, …`; entry `j` holds dimension `j - 1`.
    pub fn reduced_homology_ranks(&self, sigma: VarSet, field: Field) -> Vec<usize> {
        match field {
            Field::Rational => self.reduced_homology::<BigInt>(sigma),
            Field::Prime => self.reduced_homology::<Gf32003>(sigma),
        }
    }

    pub fn reduced_homology<T: Scalar>(&self, sigma: VarSet) -> Vec<usize> {
        let faces = self.faces_by_size(sigma);
        if faces[0].is_empty() {
            // void complex
            return Vec::new();
        }
        // boundary_rank[s] = rank of the map from faces of size s to size s - 1
        let mut boundary_rank = vec![0usize; faces.len() + 1];
        for s in 1..faces.len() {
            boundary_rank[s] = boundary_matrix::<T>(&faces[s - 1], &faces[s]).rank();
        }
        (0..faces.len())
            .map(|s| faces[s].len() - boundary_rank[s] - boundary_rank[s + 1])
            .collect()
    }
}

fn boundary_matrix<T: Scalar>(lower: &[VarSet], upper: &[VarSet]) -> Matrix<T> {
    let mut m = Matrix::zeros(lower.len(), upper.len());
    for (col, face) in upper.iter().enumerate() {
        for (pos, v) in face.iter().enumerate() {
            let row = lower
                .binary_search(&face.without(v))
                .expect("faces are closed under taking subsets");
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            m.set(row, col, T::from_i64(sign));
        }
    }
    m
}

/// Stanley–Reisner complex of `ideal` on all of its ambient variables.
pub fn stanley_reisner(ideal: &SqfIdeal) -> Result<SimplicialComplex> {
    stanley_reisner_on(ideal, VarSet::full(ideal.ambient()))
}

pub fn stanley_reisner_on(ideal: &SqfIdeal, active: VarSet) -> Result<SimplicialComplex> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    check_active(ideal, active)?;
    Ok(SimplicialComplex {
        active,
        nonfaces: ideal.generators().to_vec(),
    })
}

/// Largest homological degree contributed by `Δ_σ`, if any.
fn hochster_degree<T: Scalar>(complex: &SimplicialComplex, sigma: VarSet) -> Option<usize> {
    // A vertex of σ lying in no nonface inside σ is a cone point of Δ_σ.
    let covered = complex
        .nonfaces
        .iter()
        .filter(|g| g.is_subset(sigma))
        .fold(VarSet::EMPTY, |acc, g| acc.union(*g));
    if covered != sigma {
        return None;
    }
    let ranks = complex.reduced_homology::<T>(sigma);
    ranks
        .iter()
        .enumerate()
        .filter(|(_, &r)| r > 0)
        // entry j is H̃_{j-1}, giving i = |σ| - (j - 1) - 1 = |σ| - j
        .map(|(j, _)| sigma.len() - j)
        .max()
}

fn projective_dimension_with<T: Scalar + Send + Sync>(complex: &SimplicialComplex) -> usize {
    let subsets: Vec<VarSet> = complex.active.subsets().collect();
    subsets
        .par_iter()
        .filter_map(|&sigma| hochster_degree::<T>(complex, sigma))
        .max()
        .unwrap_or(0)
}

/// Depth data for `S/I` over a polynomial ring on `active` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub pd: usize,
    pub depth_quotient: usize,
    /// `depth(I) = depth(S/I) + 1`, absent for the zero ideal.
    pub depth_ideal: Option<usize>,
}

pub fn depth_report(ideal: &SqfIdeal, active: VarSet, field: Field) -> Result<DepthReport> {
    depth_report_with_limit(ideal, active, field, DEPTH_MAX_VARIABLES)
}

pub fn depth_report_with_limit(
    ideal: &SqfIdeal,
    active: VarSet,
    field: Field,
    limit: usize,
) -> Result<DepthReport> {
    let complex = stanley_reisner_on(ideal, active)?;
    if active.len() > limit {
        return Err(Error::CapExceeded {
            what: "Hochster sweep over active variables",
            size: active.len(),
            limit,
        });
    }
    let pd = match field {
        Field::Rational => projective_dimension_with::<BigInt>(&complex),
        Field::Prime => projective_dimension_with::<Gf32003>(&complex),
    };
    let depth_quotient = active.len() - pd;
    Ok(DepthReport {
        pd,
        depth_quotient,
        depth_ideal: (!ideal.is_zero()).then_some(depth_quotient + 1),
    })
}

/// `depth(S/I)` with `S` the polynomial ring on `active`.
pub fn depth_quotient(ideal: &SqfIdeal, active: VarSet, field: Field) -> Result<usize> {
    Ok(depth_report(ideal, active, field)?.depth_quotient)
}

/// `depth(I) = depth(S/I) + 1`.
pub fn depth_ideal(ideal: &SqfIdeal, active: VarSet, field: Field) -> Result<usize> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Ok(depth_quotient(ideal, active, field)? + 1)
}

/// Induced subcomplexes whose homology ranks differ between `Q` and `GF(32003)`.
pub fn field_disagreements(ideal: &SqfIdeal, active: VarSet) -> Result<Vec<VarSet>> {
    let complex = stanley_reisner_on(ideal, active)?;
    let mut out: Vec<VarSet> = active
        .subsets()
        .filter(|&s| {
            complex.reduced_homology::<BigInt>(s) != complex.reduced_homology::<Gf32003>(s)
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[usize]]) -> SqfIdeal {
        SqfIdeal::from_indices(n, gens).unwrap()
    }

    fn full(i: &SqfIdeal) -> VarSet {
        VarSet::full(i.ambient())
    }

    #[test]
    fn stanley_reisner_examples() {
        let c = stanley_reisner(&ideal(2, &[&[1, 2]])).unwrap();
        let faces: Vec<Vec<usize>> = c.faces().iter().map(|f| f.to_vec()).collect();
        assert_eq!(faces, vec![vec![], vec![1], vec![2]]);

        let c = stanley_reisner(&SqfIdeal::zero(2).unwrap()).unwrap();
        assert_eq!(c.faces().len(), 4);

        let c = stanley_reisner(&ideal(3, &[&[1, 2], &[1, 3], &[2, 3]])).unwrap();
        assert_eq!(c.faces().len(), 4);
        assert!(c.faces().iter().all(|f| f.len() <= 1));

        assert!(matches!(
            stanley_reisner(&SqfIdeal::unit(2).unwrap()),
            Err(Error::UnitIdeal)
        ));
    }

    #[test]
    fn homology_examples() {
        let simplex = stanley_reisner(&SqfIdeal::zero(3).unwrap()).unwrap();
        assert!(simplex
            .reduced_homology_ranks(VarSet::full(3), Field::Rational)
            .iter()
            .all(|&r| r == 0));

        let points = stanley_reisner(&ideal(2, &[&[1, 2]])).unwrap();
        assert_eq!(
            points.reduced_homology_ranks(VarSet::full(2), Field::Rational),
            vec![0, 1]
        );

        let hollow = stanley_reisner(&ideal(3, &[&[1, 2, 3]])).unwrap();
        assert_eq!(
            hollow.reduced_homology_ranks(VarSet::full(3), Field::Rational),
            vec![0, 0, 1]
        );

        // {∅} has H̃_{-1} of rank one
        assert_eq!(
            points.reduced_homology_ranks(VarSet::EMPTY, Field::Rational),
            vec![1]
        );
    }

    #[test]
    fn depth_examples() {
        for n in 1..=6 {
            let p = ideal(n, &[&[1]]);
            assert_eq!(
                depth_quotient(&p, full(&p), Field::Rational).unwrap(),
                n - 1
            );
            assert_eq!(depth_ideal(&p, full(&p), Field::Rational).unwrap(), n);
        }
        let m3 = SqfIdeal::maximal(3).unwrap();
        assert_eq!(depth_quotient(&m3, full(&m3), Field::Rational).unwrap(), 0);
        let m2 = SqfIdeal::maximal(2).unwrap();
        assert_eq!(depth_ideal(&m2, full(&m2), Field::Rational).unwrap(), 1);

        let tri = ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let r = depth_report(&tri, full(&tri), Field::Rational).unwrap();
        assert_eq!(
            r,
            DepthReport {
                pd: 2,
                depth_quotient: 1,
                depth_ideal: Some(2)
            }
        );

        let z = SqfIdeal::zero(4).unwrap();
        let r = depth_report(&z, full(&z), Field::Prime).unwrap();
        assert_eq!(r.depth_quotient, 4);
        assert_eq!(r.depth_ideal, None);
        assert_eq!(
            depth_ideal(&z, full(&z), Field::Rational),
            Err(Error::ZeroIdeal)
        );
    }

    #[test]
    fn active_set_must_cover_support() {
        let i = ideal(4, &[&[1, 2]]);
        let r = depth_quotient(&i, VarSet::from_indices([1]).unwrap(), Field::Rational);
        assert!(matches!(r, Err(Error::ActiveTooSmall { .. })));
        // dropping an unused variable is allowed
        let r = depth_quotient(
            &i,
            VarSet::from_indices([1, 2, 3]).unwrap(),
            Field::Rational,
        );
        assert_eq!(r.unwrap(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let i = ideal(15, &[&[1, 2]]);
        assert!(matches!(
            depth_quotient(&i, full(&i), Field::Rational),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(
            depth_report_with_limit(&i, full(&i), Field::Prime, 15)
                .unwrap()
                .depth_quotient,
            14
        );
    }

    #[test]
    fn fields_agree_on_small_complexes() {
        let i = ideal(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5]]);
        assert!(field_disagreements(&i, full(&i)).unwrap().is_empty());
    }
}
