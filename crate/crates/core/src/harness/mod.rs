//! Verification sweeps: seeded instance generation, per-instance checks of
//! the depth and Stanley depth inequalities, and JSON reports.
//!
//! Every check records both sides of the inequality it tests, so a report
//! shows the slack as well as the verdict. A failing check makes
//! [`VerificationReport::first_failure`] return a [`Bundle`] that replays the
//! failing instance through `stanley verify --input`.

pub mod gen;
mod verify;

use serde::{Deserialize, Serialize};

use crate::clutter::{ChordalityCertificate, Clutter};
use crate::error::{Error, Result};
use crate::ideal::{polarize, SqfIdeal};
use crate::io::{ClutterJson, IdealJson, ParsedIdeal};
use crate::scalar::Field;

pub use gen::{generate_chordal_clutters, random_ideals, GenStats};
pub use verify::{
    evaluate, main_instances, run_sweep, run_worked_examples, smain_instances, verify_main,
    verify_smain, worked_examples,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Generated,
    Example,
    File,
    Quadratic,
}

/// A squarefree ideal, optionally presented as `I(c_d(C))` for a clutter `C`,
/// or as the polarization of a quadratic monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub id: String,
    pub source: Source,
    pub clutter: Option<Clutter>,
    pub d: Option<usize>,
    pub ideal: SqfIdeal,
    /// Original generators before polarization.
    pub quadratic: Option<IdealJson>,
}

impl Instance {
    pub fn from_ideal(id: impl Into<String>, source: Source, ideal: SqfIdeal) -> Self {
        Instance {
            id: id.into(),
            source,
            clutter: None,
            d: None,
            ideal,
            quadratic: None,
        }
    }

    /// `I(c_d(C))` together with its presentation.
    pub fn from_clutter(
        id: impl Into<String>,
        source: Source,
        clutter: Clutter,
        d: usize,
    ) -> Result<Self> {
        let ideal = clutter.d_complement(d)?.edge_ideal()?;
        Ok(Instance {
            id: id.into(),
            source,
            clutter: Some(clutter),
            d: Some(d),
            ideal,
            quadratic: None,
        })
    }

    pub fn to_json(&self) -> InstanceJson {
        InstanceJson {
            id: self.id.clone(),
            source: self.source,
            clutter: self.clutter.as_ref().map(ClutterJson::from_clutter),
            d: self.d,
            ideal: Some(IdealJson::from_ideal(&self.ideal)),
            quadratic: self.quadratic.clone(),
        }
    }
}

/// File form of an [`Instance`]. Either `ideal` or `clutter` + `d` must be
/// given; when both are, they must agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub id: String,
    pub source: Source,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clutter: Option<ClutterJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadratic: Option<IdealJson>,
}

impl InstanceJson {
    pub fn to_instance(&self) -> Result<Instance> {
        let clutter = self
            .clutter
            .as_ref()
            .map(ClutterJson::to_clutter)
            .transpose()?;
        let from_clutter = match (&clutter, self.d) {
            (Some(c), Some(d)) => Some(c.d_complement(d)?.edge_ideal()?),
            (None, None) => None,
            _ => return Err(Error::Internal("instance needs both clutter and d".into())),
        };
        let from_ideal = match &self.ideal {
            Some(j) => Some(match j.parse()? {
                ParsedIdeal::Squarefree(i) => i,
                ParsedIdeal::General { n, generators } => polarize(n, &generators)?.ideal,
            }),
            None => None,
        };
        let ideal = match (from_clutter, from_ideal) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Internal(format!(
                    "instance {}: ideal {b} differs from I(c_d(C)) = {a}",
                    self.id
                )))
            }
            (Some(a), _) => a,
            (None, Some(b)) => b,
            (None, None) => {
                return Err(Error::Internal(format!(
                    "instance {} has no ideal",
                    self.id
                )))
            }
        };
        Ok(Instance {
            id: self.id.clone(),
            source: self.source,
            clutter,
            d: self.d,
            ideal,
            quadratic: self.quadratic.clone(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "==")]
    Eq,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "==",
        })
    }
}

/// One tested relation `lhs relation rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: i64,
    pub relation: Relation,
    pub rhs: i64,
    pub pass: bool,
    /// `lhs - rhs` for `>=`, `rhs - lhs` for `<=`, `0` or `1` mismatch for `==`.
    pub slack: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: i64, relation: Relation, rhs: i64) -> Self {
        let (pass, slack) = match relation {
            Relation::Ge => (lhs >= rhs, lhs - rhs),
            Relation::Le => (lhs <= rhs, rhs - lhs),
            Relation::Eq => (lhs == rhs, (lhs - rhs).abs()),
        };
        Check {
            name: name.into(),
            lhs,
            relation,
            rhs,
            pass,
            slack,
            detail: None,
        }
    }

    /// A yes/no property, recorded as `1 == 1` or `0 == 1`.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Check::new(name, ok as i64, Relation::Eq, 1)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Certificates behind a record's numbers, kept out of the report and
/// written only into reproduction bundles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificates {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chordality: Option<ChordalityCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lq_order: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sdepth_quotient: Option<Vec<(Vec<usize>, Vec<usize>)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sdepth_ideal: Option<Vec<(Vec<usize>, Vec<usize>)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sv_witness: Option<Vec<Vec<Vec<usize>>>>,
}

/// Everything computed for one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub source: Source,
    pub n: usize,
    /// Number of variables the invariants are computed over.
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clutter: Option<ClutterJson>,
    pub ideal: IdealJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chordal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth_quotient: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth_ideal: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth_lq: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sdepth_quotient: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sdepth_ideal: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sv_restricted: Option<usize>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notices: Vec<String>,
    #[serde(default)]
    pub skipped: bool,
    #[serde(skip)]
    pub certificates: Certificates,
}

impl Record {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Section {
    Examples,
    Main,
    Smain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub field: Field,
    /// Largest ring size in the generated sweeps.
    pub max_n: usize,
    /// Clutters requested per `(n, d)` cell of the chordal sweep.
    pub clutters_per_cell: usize,
    /// Quadratic ideals requested per variable count (2 and 3).
    pub quadratic_per_n: usize,
    pub smain_count: usize,
    pub smain_max_generators: usize,
    /// Compute over the generator support and check the free-variable shifts.
    pub trim: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            field: Field::Rational,
            max_n: 6,
            clutters_per_cell: 16,
            quadratic_per_n: 8,
            smain_count: 200,
            smain_max_generators: 8,
            trim: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub main_instances: usize,
    pub main_skipped: usize,
    pub smain_instances: usize,
    pub smain_skipped: usize,
    pub example_instances: usize,
    pub checks: usize,
    pub failed_checks: usize,
    pub failing_instances: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: VerifyConfig,
    pub generation: Vec<GenStats>,
    pub examples: Vec<Record>,
    pub main: Vec<Record>,
    pub smain: Vec<Record>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(
        config: VerifyConfig,
        generation: Vec<GenStats>,
        examples: Vec<Record>,
        main: Vec<Record>,
        smain: Vec<Record>,
    ) -> Self {
        let all = || examples.iter().chain(&main).chain(&smain);
        let summary = Summary {
            main_instances: main.iter().filter(|r| !r.skipped).count(),
            main_skipped: main.iter().filter(|r| r.skipped).count(),
            smain_instances: smain.iter().filter(|r| !r.skipped).count(),
            smain_skipped: smain.iter().filter(|r| r.skipped).count(),
            example_instances: examples.len(),
            checks: all().map(|r| r.checks.len()).sum(),
            failed_checks: all().map(|r| r.failures().count()).sum(),
            failing_instances: all()
                .filter(|r| !r.passed())
                .map(|r| r.id.clone())
                .collect(),
        };
        VerificationReport {
            config,
            generation,
            examples,
            main,
            smain,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed_checks == 0
    }

    pub fn records(&self) -> impl Iterator<Item = (Section, &Record)> {
        self.examples
            .iter()
            .map(|r| (Section::Examples, r))
            .chain(self.main.iter().map(|r| (Section::Main, r)))
            .chain(self.smain.iter().map(|r| (Section::Smain, r)))
    }

    /// Reproduction bundle for the first failing record, if any.
    pub fn first_failure(&self, instances: &[(Section, Instance)]) -> Option<Bundle> {
        let (section, record) = self.records().find(|(_, r)| !r.passed())?;
        let (_, instance) = instances
            .iter()
            .find(|(s, i)| *s == section && i.id == record.id)?;
        Some(Bundle::new(section, &self.config, instance, record))
    }
}

/// A self-contained reproduction of one failing instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub section: Section,
    pub config: VerifyConfig,
    pub instance: InstanceJson,
    pub record: Record,
    pub certificates: Certificates,
}

impl Bundle {
    pub fn new(
        section: Section,
        config: &VerifyConfig,
        instance: &Instance,
        record: &Record,
    ) -> Self {
        Bundle {
            section,
            config: config.clone(),
            instance: instance.to_json(),
            record: record.clone(),
            certificates: record.certificates.clone(),
        }
    }

    /// Re-evaluates the bundled instance under the bundled configuration.
    pub fn replay(&self) -> Result<Record> {
        let instance = self.instance.to_instance()?;
        Ok(evaluate(self.section, &instance, &self.config))
    }
}
