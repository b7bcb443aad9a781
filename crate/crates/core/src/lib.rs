//! Exact computations for squarefree monomial ideals: chordal clutters and
//! their d-complements, linear quotients, depth through Hochster's formula,
//! Stanley depth through interval partitions, and Schmitt–Vogel numbers.
//!
//! Variables are indexed from 1. Supports are [`VarSet`] bitmasks, so the
//! ambient ring has at most 64 variables; the exact solvers carry much
//! smaller desk-scale limits that can be raised per call.

pub mod clutter;
pub mod depth;
pub mod error;
pub mod harness;
pub mod ideal;
pub mod io;
pub mod linalg;
pub mod lq;
pub mod scalar;
pub mod sdepth;
pub mod sv;
pub mod varset;

pub use clutter::{ChordalityCertificate, Clutter, MinorKey};
pub use depth::{depth_ideal, depth_quotient, depth_report, stanley_reisner, DepthReport};
pub use error::{Error, Result};
pub use ideal::{minimalize, polarize, GenMonomial, MonomialPrime, SqfIdeal, SqfMonomial};
pub use lq::{check_lq_order, chordal_lq_order, find_lq_order, LqOrder, LqVerdict};
pub use scalar::{Field, Fp, Scalar};
pub use sdepth::{char_poset, decide_sdepth, sdepth, IntervalPartition, ModuleKind, SdepthResult};
pub use sv::{check_sv_witness, sv_number, transport_eliminate, transport_localize, SvWitness};
pub use varset::VarSet;

/// Rank computations over the rationals, by fraction-free integer elimination.
pub type RationalMatrix = linalg::Matrix<num_bigint::BigInt>;
/// Rank computations over `GF(32003)`.
pub type PrimeFieldMatrix = linalg::Matrix<depth::Gf32003>;
