//! Squarefree monomials and monomial ideals.
//!
//! An ideal is stored through its minimal generators, each a [`VarSet`]
//! support. Operations that remove a variable (elimination, localization)
//! keep the ambient index space: the removed variable simply stops
//! appearing in generators.

use std::fmt;

use crate::error::{Error, Result};
use crate::varset::{VarSet, MAX_VARS};

fn check_ambient(n: usize) -> Result<()> {
    if (1..=MAX_VARS).contains(&n) {
        Ok(())
    } else {
        Err(Error::AmbientOutOfRange(n))
    }
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if (1..=n).contains(&i) {
        Ok(())
    } else {
        Err(Error::VariableOutOfRange { index: i, n })
    }
}

/// The squarefree monomial `x_σ = ∏_{i∈σ} x_i` in `n` variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SqfMonomial {
    n: usize,
    support: VarSet,
}

impl SqfMonomial {
    pub fn new(n: usize, support: VarSet) -> Result<Self> {
        check_ambient(n)?;
        if !support.is_subset(VarSet::full(n)) {
            return Err(Error::VariableOutOfRange {
                index: support.last().unwrap_or(0),
                n,
            });
        }
        Ok(SqfMonomial { n, support })
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        for &i in indices {
            check_index(n, i)?;
        }
        Self::new(n, VarSet::from_indices(indices.iter().copied()).unwrap())
    }

    pub fn one(n: usize) -> Result<Self> {
        Self::new(n, VarSet::EMPTY)
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// The set of variables dividing the monomial.
    pub fn support(&self) -> VarSet {
        self.support
    }

    pub fn degree(&self) -> usize {
        self.support.len()
    }

    pub fn divides(&self, other: &SqfMonomial) -> bool {
        self.support.is_subset(other.support)
    }
}

impl fmt::Display for SqfMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.support.fmt(f)
    }
}

/// Sorts, dedups and drops every support that strictly contains another.
pub(crate) fn minimal_elements(mut sets: Vec<VarSet>) -> Vec<VarSet> {
    sets.sort_by_key(|s| (s.len(), s.mask()));
    sets.dedup();
    let mut kept: Vec<VarSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// A squarefree monomial ideal given by its minimal generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SqfIdeal {
    n: usize,
    gens: Vec<VarSet>,
}

impl SqfIdeal {
    /// Ideal generated by the given supports; redundant generators are removed.
    pub fn new(n: usize, supports: impl IntoIterator<Item = VarSet>) -> Result<Self> {
        check_ambient(n)?;
        let full = VarSet::full(n);
        let sets: Vec<VarSet> = supports.into_iter().collect();
        if let Some(bad) = sets.iter().find(|s| !s.is_subset(full)) {
            return Err(Error::VariableOutOfRange {
                index: bad.difference(full).first().unwrap_or(0),
                n,
            });
        }
        Ok(SqfIdeal {
            n,
            gens: minimal_elements(sets),
        })
    }

    /// Convenience constructor from 1-based index lists.
    pub fn from_indices<S: AsRef<[usize]>>(n: usize, gens: &[S]) -> Result<Self> {
        let mut sets = Vec::with_capacity(gens.len());
        for g in gens {
            for &i in g.as_ref() {
                check_index(n, i)?;
            }
            sets.push(VarSet::from_indices(g.as_ref().iter().copied()).unwrap());
        }
        Self::new(n, sets)
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    pub fn unit(n: usize) -> Result<Self> {
        Self::new(n, [VarSet::EMPTY])
    }

    /// `(x_1, ..., x_n)`.
    pub fn maximal(n: usize) -> Result<Self> {
        Self::new(n, (1..=n).map(VarSet::singleton))
    }

    /// All squarefree monomials of degree `d` in `n` variables.
    pub fn squarefree_veronese(n: usize, d: usize) -> Result<Self> {
        check_ambient(n)?;
        Self::new(n, VarSet::full(n).subsets_of_size(d))
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Minimal generator supports in lexicographic order.
    pub fn generators(&self) -> &[VarSet] {
        &self.gens
    }

    pub fn monomials(&self) -> Vec<SqfMonomial> {
        self.gens
            .iter()
            .map(|&support| SqfMonomial { n: self.n, support })
            .collect()
    }

    /// Number of minimal generators.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    /// No generators; the same as [`SqfIdeal::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_empty()
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    /// Whether `x_σ` lies in the ideal.
    pub fn contains(&self, sigma: VarSet) -> bool {
        self.gens.iter().any(|g| g.is_subset(sigma))
    }

    /// Union of the generator supports.
    pub fn support(&self) -> VarSet {
        self.gens.iter().fold(VarSet::EMPTY, |acc, g| acc.union(*g))
    }

    /// Largest generator degree, 0 for the zero ideal.
    pub fn max_degree(&self) -> usize {
        self.gens.iter().map(|g| g.len()).max().unwrap_or(0)
    }

    /// Ideal containment `self ⊆ other`.
    pub fn is_subideal_of(&self, other: &SqfIdeal) -> bool {
        self.gens.iter().all(|&g| other.contains(g))
    }

    /// `(I : x_i)`.
    pub fn colon_by_variable(&self, i: usize) -> Result<SqfIdeal> {
        check_index(self.n, i)?;
        let gens = self.gens.iter().map(|g| g.without(i)).collect();
        Ok(SqfIdeal {
            n: self.n,
            gens: minimal_elements(gens),
        })
    }

    /// `I ∩ S'` where `S'` omits `x_i`: the generators not divisible by `x_i`.
    pub fn eliminate_variable(&self, i: usize) -> Result<SqfIdeal> {
        check_index(self.n, i)?;
        Ok(SqfIdeal {
            n: self.n,
            gens: self
                .gens
                .iter()
                .copied()
                .filter(|g| !g.contains(i))
                .collect(),
        })
    }

    /// Image of the ideal under `x_i ↦ 1` for the variables of `prime`.
    pub fn localize(&self, prime: &MonomialPrime) -> Result<SqfIdeal> {
        if prime.n != self.n {
            return Err(Error::MixedAmbient(self.n, prime.n));
        }
        let gens = self.gens.iter().map(|g| g.difference(prime.vars)).collect();
        Ok(SqfIdeal {
            n: self.n,
            gens: minimal_elements(gens),
        })
    }

    /// Same generators in a larger ring.
    pub fn with_ambient(&self, n: usize) -> Result<SqfIdeal> {
        check_ambient(n)?;
        if !self.support().is_subset(VarSet::full(n)) {
            return Err(Error::VariableOutOfRange {
                index: self.support().last().unwrap_or(0),
                n,
            });
        }
        Ok(SqfIdeal {
            n,
            gens: self.gens.clone(),
        })
    }

    /// Generator index lists, as written in the JSON format.
    pub fn to_index_lists(&self) -> Vec<Vec<usize>> {
        self.gens.iter().map(|g| g.to_vec()).collect()
    }
}

impl fmt::Display for SqfIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Divisibility-minimal elements of `monomials` as an ideal in `n` variables.
pub fn minimalize(n: usize, monomials: &[SqfMonomial]) -> Result<SqfIdeal> {
    if let Some(m) = monomials.iter().find(|m| m.n != n) {
        return Err(Error::MixedAmbient(n, m.n));
    }
    SqfIdeal::new(n, monomials.iter().map(|m| m.support))
}

/// A prime generated by a set of variables. The empty set stands for the zero prime.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MonomialPrime {
    n: usize,
    vars: VarSet,
}

impl MonomialPrime {
    pub fn new(n: usize, vars: VarSet) -> Result<Self> {
        check_ambient(n)?;
        if !vars.is_subset(VarSet::full(n)) {
            return Err(Error::VariableOutOfRange {
                index: vars.last().unwrap_or(0),
                n,
            });
        }
        Ok(MonomialPrime { n, vars })
    }

    pub fn principal(n: usize, i: usize) -> Result<Self> {
        check_index(n, i)?;
        Self::new(n, VarSet::singleton(i))
    }

    pub fn variables(&self) -> VarSet {
        self.vars
    }
}

/// A monomial with arbitrary nonnegative exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GenMonomial {
    exponents: Vec<u32>,
}

impl GenMonomial {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        check_ambient(exponents.len())?;
        Ok(GenMonomial { exponents })
    }

    pub fn ambient(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &GenMonomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }
}

/// Result of polarizing a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub ideal: SqfIdeal,
    /// `labels[k]` is the pair `(i, j)` of the new variable `x_{k+1} = x_{i,j}`.
    pub labels: Vec<(usize, usize)>,
}

/// Polarizes the ideal generated by `gens`.
///
/// `x_i^a` becomes `x_{i,1} ⋯ x_{i,a}`; the new variables are the pairs
/// `(i, j)` in lexicographic order, one for each `j` up to the largest
/// exponent of `x_i`. The zero ideal polarizes to the zero ideal in the
/// input ring.
pub fn polarize(n: usize, gens: &[GenMonomial]) -> Result<Polarization> {
    check_ambient(n)?;
    if let Some(g) = gens.iter().find(|g| g.ambient() != n) {
        return Err(Error::MixedAmbient(n, g.ambient()));
    }
    let minimal: Vec<&GenMonomial> = gens
        .iter()
        .enumerate()
        .filter(|(k, g)| {
            !gens
                .iter()
                .enumerate()
                .any(|(j, h)| h.divides(g) && (h != *g || j < *k))
        })
        .map(|(_, g)| g)
        .collect();
    if minimal.is_empty() {
        return Ok(Polarization {
            ideal: SqfIdeal::zero(n)?,
            labels: Vec::new(),
        });
    }

    let mut max_exp = vec![0u32; n];
    for g in &minimal {
        for (m, &e) in max_exp.iter_mut().zip(g.exponents()) {
            *m = (*m).max(e);
        }
    }
    let mut offsets = Vec::with_capacity(n);
    let mut labels = Vec::new();
    for (i, &m) in max_exp.iter().enumerate() {
        offsets.push(labels.len());
        labels.extend((1..=m as usize).map(|j| (i + 1, j)));
    }
    let total = labels.len().max(1);
    if total > MAX_VARS {
        return Err(Error::AmbientOutOfRange(total));
    }

    let supports = minimal.iter().map(|g| {
        let mut s = VarSet::EMPTY;
        for (i, &e) in g.exponents().iter().enumerate() {
            for j in 0..e as usize {
                s = s.with(offsets[i] + j + 1);
            }
        }
        s
    });
    Ok(Polarization {
        ideal: SqfIdeal::new(total, supports)?,
        labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[usize]]) -> SqfIdeal {
        SqfIdeal::from_indices(n, gens).unwrap()
    }

    #[test]
    fn minimalize_examples() {
        let m = |n, ix: &[usize]| SqfMonomial::from_indices(n, ix).unwrap();
        assert_eq!(
            minimalize(2, &[m(2, &[1]), m(2, &[1, 2])]).unwrap(),
            ideal(2, &[&[1]])
        );
        let tri = [m(3, &[1, 2]), m(3, &[1, 3]), m(3, &[2, 3])];
        assert_eq!(minimalize(3, &tri).unwrap().len(), 3);
        assert_eq!(
            minimalize(3, &[m(3, &[1, 2]), m(3, &[2, 3]), m(3, &[1, 2, 3])]).unwrap(),
            ideal(3, &[&[1, 2], &[2, 3]])
        );
        assert_eq!(
            minimalize(3, &[m(3, &[1]), m(2, &[1])]),
            Err(Error::MixedAmbient(3, 2))
        );
    }

    #[test]
    fn colon_examples() {
        let i = ideal(4, &[&[1, 2], &[1, 3], &[2, 3, 4]]);
        assert_eq!(i.colon_by_variable(1).unwrap(), ideal(4, &[&[2], &[3]]));
        let j = ideal(3, &[&[2, 3]]);
        assert_eq!(j.colon_by_variable(1).unwrap(), j);
        let z = SqfIdeal::zero(3).unwrap();
        assert!(z.colon_by_variable(2).unwrap().is_zero());
        assert!(i.colon_by_variable(5).is_err());
    }

    #[test]
    fn elimination_examples() {
        let i = ideal(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(i.eliminate_variable(1).unwrap(), ideal(3, &[&[2, 3]]));
        let j = ideal(3, &[&[1, 2]]);
        assert_eq!(j.eliminate_variable(3).unwrap(), j);
        assert!(ideal(3, &[&[1, 2], &[1, 3]])
            .eliminate_variable(1)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn localization_examples() {
        let i = ideal(4, &[&[1, 2], &[1, 3], &[2, 3, 4]]);
        let p = MonomialPrime::principal(4, 1).unwrap();
        assert_eq!(i.localize(&p).unwrap(), ideal(4, &[&[2], &[3]]));
        let j = ideal(2, &[&[1, 2]]);
        let both = MonomialPrime::new(2, VarSet::full(2)).unwrap();
        assert!(j.localize(&both).unwrap().is_unit());
        let none = MonomialPrime::new(4, VarSet::EMPTY).unwrap();
        assert_eq!(i.localize(&none).unwrap(), i);
    }

    #[test]
    fn polarize_examples() {
        let sq = GenMonomial::new(vec![2]).unwrap();
        let p = polarize(1, std::slice::from_ref(&sq)).unwrap();
        assert_eq!(p.ideal, ideal(2, &[&[1, 2]]));
        assert_eq!(p.labels, vec![(1, 1), (1, 2)]);

        let xy = GenMonomial::new(vec![1, 1]).unwrap();
        let p = polarize(2, std::slice::from_ref(&xy)).unwrap();
        assert_eq!(p.ideal, ideal(2, &[&[1, 2]]));

        let sq2 = GenMonomial::new(vec![2, 0]).unwrap();
        let p = polarize(2, &[sq2, xy]).unwrap();
        // x_{1,1} x_{1,2} and x_{1,1} x_2 with x_2 the third slot.
        assert_eq!(p.ideal, ideal(3, &[&[1, 2], &[1, 3]]));
        assert_eq!(p.labels, vec![(1, 1), (1, 2), (2, 1)]);

        assert!(polarize(2, &[]).unwrap().ideal.is_zero());
    }

    #[test]
    fn support_examples() {
        let m = SqfMonomial::from_indices(4, &[1, 3]).unwrap();
        assert_eq!(m.support().to_vec(), vec![1, 3]);
        assert!(SqfMonomial::one(3).unwrap().support().is_empty());
        assert_eq!(
            SqfMonomial::from_indices(3, &[1, 2, 3]).unwrap().support(),
            VarSet::full(3)
        );
    }

    #[test]
    fn unit_and_zero() {
        assert!(SqfIdeal::unit(3).unwrap().is_unit());
        assert!(SqfIdeal::zero(3).unwrap().is_zero());
        // the unit generator absorbs everything
        let u = SqfIdeal::new(3, [VarSet::EMPTY, VarSet::singleton(2)]).unwrap();
        assert!(u.is_unit());
    }
}
