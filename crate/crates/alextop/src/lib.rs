//! Finite Alexandroff topologies driven by point-closure data.
//!
//! The crate models three interchangeable presentations of the same
//! structure on a finite carrier:
//!
//! * a **point-closure map** sending each point to the closure of its
//!   singleton ([`PointClosureMap`]),
//! * the **T0 Alexandroff topology** it generates ([`FiniteTopology`]),
//!   reached through a Kuratowski [`ClosureOperator`] on all subsets, and
//! * the **equidistant quasi-metric** whose open balls recover that
//!   topology ([`QuasiMetric`], with exact rational distances).
//!
//! Conversions in every direction are provided, each validating its input
//! and reporting axiom violations with explicit witnesses. The [`oracle`]
//! module checks the structural claims behind those conversions by
//! exhaustive enumeration on carriers of up to five points, and [`json`]
//! fixes a wire format for all three presentations.
//!
//! Carriers are capped at 64 points so subsets fit in one machine word;
//! the exhaustive machinery is far more restrictive (see
//! [`oracle::MAX_FAST_POINTS`]).

mod carrier;
mod closure_map;
pub mod json;
pub mod oracle;
mod qmetric;
mod relation;
mod report;
mod topology;

pub use carrier::{CarrierError, PointSubset, PointUniverse, SetFamily, MAX_POINTS};
pub use closure_map::{
    ClosureMapViolation, ClosureOperator, KuratowskiViolation, PointClosureMap, SynthError,
    MAX_TABLE_POINTS,
};
pub use oracle::{
    census, enumerate_closure_maps, enumerate_t0, enumerate_topologies, verify, CensusReport,
    OracleError, TheoremCertificate, TheoremId,
};
pub use qmetric::{
    EquidistanceReport, MetricError, MetricViolation, QuasiMetric, Rational,
};
pub use relation::Relation;
pub use report::ValidationReport;
pub use topology::{check_topology_axioms, is_topology, FamilyViolation, FiniteTopology, TopologyError};
