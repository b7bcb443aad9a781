//! JSON file formats for ideals, clutters and witnesses.
//!
//! ```json
//! {"n": 4, "generators": [[1,2],[1,3],[2,3,4]]}
//! {"n": 2, "generators": [{"exps": [2,1]}]}
//! {"n": 4, "edges": [[1,2],[2,3]]}
//! ```
//!
//! Index lists are 1-based and written sorted.

use serde::{Deserialize, Serialize};

use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::ideal::{GenMonomial, SqfIdeal};
use crate::sv::SvWitness;
use crate::varset::VarSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonomialJson {
    Indices(Vec<usize>),
    Exponents { exps: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub n: usize,
    pub generators: Vec<MonomialJson>,
}

/// A parsed ideal file: squarefree when every generator is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedIdeal {
    Squarefree(SqfIdeal),
    General {
        n: usize,
        generators: Vec<GenMonomial>,
    },
}

fn exps_to_support(n: usize, exps: &[u32]) -> Result<Option<VarSet>> {
    if exps.len() != n {
        return Err(Error::MixedAmbient(n, exps.len()));
    }
    if exps.iter().any(|&e| e > 1) {
        return Ok(None);
    }
    Ok(VarSet::from_indices(
        exps.iter()
            .enumerate()
            .filter(|(_, &e)| e == 1)
            .map(|(i, _)| i + 1),
    ))
}

fn indices_to_support(n: usize, ix: &[usize]) -> Result<VarSet> {
    if let Some(&bad) = ix.iter().find(|&&i| !(1..=n).contains(&i)) {
        return Err(Error::VariableOutOfRange { index: bad, n });
    }
    Ok(VarSet::from_indices(ix.iter().copied()).unwrap())
}

impl IdealJson {
    pub fn from_ideal(ideal: &SqfIdeal) -> Self {
        IdealJson {
            n: ideal.ambient(),
            generators: ideal
                .to_index_lists()
                .into_iter()
                .map(MonomialJson::Indices)
                .collect(),
        }
    }

    pub fn from_general(n: usize, gens: &[GenMonomial]) -> Self {
        IdealJson {
            n,
            generators: gens
                .iter()
                .map(|g| MonomialJson::Exponents {
                    exps: g.exponents().to_vec(),
                })
                .collect(),
        }
    }

    pub fn parse(&self) -> Result<ParsedIdeal> {
        let mut supports = Vec::new();
        let mut general = false;
        for g in &self.generators {
            match g {
                MonomialJson::Indices(ix) => supports.push(Some(indices_to_support(self.n, ix)?)),
                MonomialJson::Exponents { exps } => {
                    let s = exps_to_support(self.n, exps)?;
                    general |= s.is_none();
                    supports.push(s);
                }
            }
        }
        if !general {
            return Ok(ParsedIdeal::Squarefree(SqfIdeal::new(
                self.n,
                supports.into_iter().flatten(),
            )?));
        }
        let generators = self
            .generators
            .iter()
            .map(|g| match g {
                MonomialJson::Indices(ix) => {
                    let mut e = vec![0u32; self.n];
                    for &i in ix {
                        e[i - 1] = 1;
                    }
                    GenMonomial::new(e)
                }
                MonomialJson::Exponents { exps } => GenMonomial::new(exps.clone()),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ParsedIdeal::General {
            n: self.n,
            generators,
        })
    }

    pub fn to_squarefree(&self) -> Result<SqfIdeal> {
        match self.parse()? {
            ParsedIdeal::Squarefree(i) => Ok(i),
            ParsedIdeal::General { .. } => Err(Error::NotSquarefree),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClutterJson {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl ClutterJson {
    pub fn from_clutter(c: &Clutter) -> Self {
        ClutterJson {
            n: c.ambient(),
            edges: c.to_index_lists(),
        }
    }

    pub fn to_clutter(&self) -> Result<Clutter> {
        Clutter::from_indices(self.n, &self.edges)
    }
}

/// Witness files: a list of levels, each a list of index sets or `{"exps": [...]}`.
pub type WitnessJson = Vec<Vec<MonomialJson>>;

pub fn witness_to_json(w: &SvWitness) -> WitnessJson {
    w.to_index_lists()
        .into_iter()
        .map(|l| l.into_iter().map(MonomialJson::Indices).collect())
        .collect()
}

/// Witness monomials must be squarefree.
pub fn witness_from_json(n: usize, levels: &WitnessJson) -> Result<SvWitness> {
    let mut out = Vec::with_capacity(levels.len());
    for level in levels {
        let mut l = Vec::with_capacity(level.len());
        for m in level {
            let s = match m {
                MonomialJson::Indices(ix) => {
                    indices_to_support(n, ix).map_err(|e| Error::InvalidWitness(e.to_string()))?
                }
                MonomialJson::Exponents { exps } => exps_to_support(n, exps)
                    .map_err(|e| Error::InvalidWitness(e.to_string()))?
                    .ok_or_else(|| {
                        Error::InvalidWitness(format!(
                            "witness monomial {exps:?} is not squarefree"
                        ))
                    })?,
            };
            l.push(s);
        }
        out.push(l);
    }
    Ok(SvWitness::new(n, out))
}
