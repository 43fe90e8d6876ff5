//! Finite topologies as explicit families of open sets.
//!
//! On a finite carrier every topology is closed under arbitrary unions and
//! intersections as soon as it is closed under the pairwise ones, so the
//! axioms checked here are: contains the empty set, contains the carrier,
//! closed under pairwise union and pairwise intersection.

use std::sync::Arc;
use thiserror::Error;

use crate::carrier::{same_universe, PointSubset, PointUniverse, SetFamily};
use crate::relation::Relation;
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("set family is not a topology")]
    NotATopology,
    #[error("operands belong to different carriers")]
    UniverseMismatch,
    #[error("point index {index} out of range for a carrier of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operation requires a nonempty subset")]
    EmptySubset,
}

/// A failed topology axiom, with the earliest witnesses in canonical order.
/// Witness sets are given by indicator word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyViolation {
    MissingEmptySet,
    MissingCarrier,
    UnionMissing { a: u64, b: u64 },
    IntersectionMissing { a: u64, b: u64 },
}

/// Does the family satisfy the (finite-carrier) topology axioms?
pub fn is_topology(family: &SetFamily) -> bool {
    let words: Vec<u64> = family.words().collect();
    let full = family.universe().full_word();
    if words.binary_search(&0).is_err() || words.binary_search(&full).is_err() {
        return false;
    }
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if words.binary_search(&(words[i] | words[j])).is_err() {
                return false;
            }
            if words.binary_search(&(words[i] & words[j])).is_err() {
                return false;
            }
        }
    }
    true
}

/// Like [`is_topology`], but reports one violation per failed axiom, each
/// with the first witness pair in canonical order.
pub fn check_topology_axioms(family: &SetFamily) -> ValidationReport<FamilyViolation> {
    let words: Vec<u64> = family.words().collect();
    let full = family.universe().full_word();
    let mut violations = Vec::new();
    if words.binary_search(&0).is_err() {
        violations.push(FamilyViolation::MissingEmptySet);
    }
    if words.binary_search(&full).is_err() {
        violations.push(FamilyViolation::MissingCarrier);
    }
    let first_missing = |combine: fn(u64, u64) -> u64| {
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                if words.binary_search(&combine(words[i], words[j])).is_err() {
                    return Some((words[i], words[j]));
                }
            }
        }
        None
    };
    if let Some((a, b)) = first_missing(|a, b| a | b) {
        violations.push(FamilyViolation::UnionMissing { a, b });
    }
    if let Some((a, b)) = first_missing(|a, b| a & b) {
        violations.push(FamilyViolation::IntersectionMissing { a, b });
    }
    ValidationReport::from_violations(violations)
}

/// A finite topology: a set family that passed [`is_topology`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    opens: SetFamily,
}

impl FiniteTopology {
    pub fn new(opens: SetFamily) -> Result<Self, TopologyError> {
        if is_topology(&opens) {
            Ok(FiniteTopology { opens })
        } else {
            Err(TopologyError::NotATopology)
        }
    }

    pub fn opens(&self) -> &SetFamily {
        &self.opens
    }

    pub fn universe(&self) -> &Arc<PointUniverse> {
        self.opens.universe()
    }

    /// Smallest closed superset of `a`: the intersection of every complement
    /// of an open set that contains `a`.
    pub fn closure(&self, a: &PointSubset) -> Result<PointSubset, TopologyError> {
        if !same_universe(self.universe(), a.universe()) {
            return Err(TopologyError::UniverseMismatch);
        }
        Ok(PointSubset::from_word_unchecked(self.universe(), self.closure_word(a.word())))
    }

    pub fn point_closure(&self, x: usize) -> Result<PointSubset, TopologyError> {
        let n = self.universe().len();
        if x >= n {
            return Err(TopologyError::IndexOutOfRange { index: x, len: n });
        }
        Ok(PointSubset::from_word_unchecked(self.universe(), self.closure_word(1 << x)))
    }

    /// Closures of all singletons, in point order.
    pub fn point_closures(&self) -> Vec<PointSubset> {
        (0..self.universe().len())
            .map(|x| PointSubset::from_word_unchecked(self.universe(), self.closure_word(1 << x)))
            .collect()
    }

    pub(crate) fn closure_word(&self, a: u64) -> u64 {
        let full = self.universe().full_word();
        let mut acc = full;
        for open in self.opens.words() {
            let closed = full & !open;
            if a & !closed == 0 {
                acc &= closed;
            }
        }
        acc
    }

    pub(crate) fn point_closure_words(&self) -> Vec<u64> {
        (0..self.universe().len()).map(|x| self.closure_word(1 << x)).collect()
    }

    /// T0 via open sets: every pair of distinct points is separated by an
    /// open set containing exactly one of them.
    pub fn is_t0_separation(&self) -> bool {
        let n = self.universe().len();
        for x in 0..n {
            for y in x + 1..n {
                let separated =
                    self.opens.words().any(|open| (open >> x & 1) != (open >> y & 1));
                if !separated {
                    return false;
                }
            }
        }
        true
    }

    /// T0 via closures: distinct points have distinct singleton closures.
    pub fn is_t0_closures(&self) -> bool {
        let mut closures = self.point_closure_words();
        closures.sort_unstable();
        closures.windows(2).all(|w| w[0] != w[1])
    }

    /// Does the closure of `a` equal the union of the closures of its
    /// points? (Defined for nonempty `a`; true on every finite topology.)
    pub fn alexandroff_closure_identity(&self, a: &PointSubset) -> Result<bool, TopologyError> {
        if !same_universe(self.universe(), a.universe()) {
            return Err(TopologyError::UniverseMismatch);
        }
        if a.is_empty() {
            return Err(TopologyError::EmptySubset);
        }
        let pointwise = a.indices().fold(0u64, |acc, x| acc | self.closure_word(1 << x));
        Ok(self.closure_word(a.word()) == pointwise)
    }

    /// Specialization order: `(x, y)` related iff `x` lies in the closure
    /// of `{y}`. A preorder in general, a partial order exactly when T0.
    pub fn specialization_order(&self) -> Relation {
        let closures = self.point_closure_words();
        Relation::from_fn(self.universe().len(), |x, y| closures[y] >> x & 1 == 1)
    }

    /// Is every open set of `base` open here?
    pub fn is_finer_than(&self, base: &FiniteTopology) -> Result<bool, TopologyError> {
        if !same_universe(self.universe(), base.universe()) {
            return Err(TopologyError::UniverseMismatch);
        }
        Ok(base.opens.words().all(|w| self.opens.contains_word(w)))
    }

    /// Do both topologies assign every point the same singleton closure?
    pub fn closures_equivalent(&self, other: &FiniteTopology) -> Result<bool, TopologyError> {
        if !same_universe(self.universe(), other.universe()) {
            return Err(TopologyError::UniverseMismatch);
        }
        Ok(self.point_closure_words() == other.point_closure_words())
    }
}
