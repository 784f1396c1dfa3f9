//! Exact, certificate-producing single-step forcing over a countable atomless
//! algebra of subsets of ω.
//!
//! The ground algebra is the algebra of finite unions of half-open dyadic
//! intervals of `[0, 1)`, read as subsets of ω through a fixed enumeration of
//! the dyadic points. Conditions are pairs of disjoint elements outside a
//! point-evaluation ultrafilter; a descending chain meeting requested dense
//! sets on demand yields a generic set `g`, and the verifier produces
//! checkable evidence that `g` is new, destroys the ultrafilter, and keeps the
//! designated maximal ideal-independent family and free sequence maximal.

pub mod dyadic;
pub mod engine;
pub mod error;
pub mod extenders;
pub mod families;
pub mod interval_set;
pub(crate) mod nat_serde;
pub mod poset;
pub mod random;
pub mod report;
pub mod session;
pub mod tower;
pub mod ultrafilter;
pub mod verifier;

pub use dyadic::{decode, encode, encode_nat, Dyadic};
pub use engine::{ChainState, ExtElement};
pub use error::{Error, ParseError, Result};
pub use extenders::{Certificate, DenseSet, Ground, Request, Witnesses};
pub use families::{
    free_oracle, ideal_oracle, is_free_sequence, is_ideal_independent, Annuli, FreeOracleAnswer,
    FreeSeq, IdealFamily, IdealOracleAnswer, InitialSegments,
};
pub use interval_set::{set, Interval, IntervalSet};
pub use poset::{derived_parts, leq, star_extend, Condition, DerivedParts};
pub use ultrafilter::{atomless_split, PointUltrafilter};
pub use verifier::{Claim, Outcome, Verdict};
