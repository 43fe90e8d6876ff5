//! Point-closure maps and their extension to full closure operators.
//!
//! A point-closure map assigns each point a candidate closure of its
//! singleton. It extends to the closure operator of a (unique, T0,
//! finest-possible) topology exactly when it is injective, extensive
//! (`x ∈ cl1(x)`) and hereditary (`y ∈ cl1(x)` forces `cl1(y) ⊆ cl1(x)`).
//! The extension sends the empty set to itself and any other subset to the
//! union of the images of its points.

use std::sync::Arc;
use thiserror::Error;

use crate::carrier::{same_universe, PointSubset, PointUniverse, SetFamily};
use crate::relation::Relation;
use crate::report::ValidationReport;
use crate::topology::FiniteTopology;

/// Largest carrier for which a closure operator is tabulated over all
/// `2^n` subsets.
pub const MAX_TABLE_POINTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("expected {expected} point images, got {got}")]
    ImageCountMismatch { expected: usize, got: usize },
    #[error("operands belong to different carriers")]
    UniverseMismatch,
    #[error("point-closure map fails validation")]
    InvalidMap(ValidationReport<ClosureMapViolation>),
    #[error("operator violates the closure axioms")]
    NotClosureOperator(ValidationReport<KuratowskiViolation>),
    #[error("carrier of {n} points exceeds the tabulation limit of {max}", max = MAX_TABLE_POINTS)]
    TableTooLarge { n: usize },
    #[error("table has {got} entries, expected 2^{n}")]
    TableSizeMismatch { n: usize, got: usize },
    #[error("table entry {word:#x} has bits beyond the carrier")]
    TableEntryOutOfRange { word: u64 },
}

/// A failed point-closure-map condition, with the earliest witnesses in
/// point-index order. At most one violation is reported per condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureMapViolation {
    /// Points `x < y` have equal images.
    NotInjective { x: usize, y: usize },
    /// `x` is missing from its own image.
    NotExtensive { x: usize },
    /// `y` lies in the image of `x` but the image of `y` is not contained
    /// in the image of `x`.
    NotHereditary { x: usize, y: usize },
}

/// A failed closure axiom, with the earliest witness subsets (by indicator
/// word). At most one violation is reported per axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KuratowskiViolation {
    /// The empty set is not sent to itself.
    EmptySetNotFixed,
    /// `set` is not contained in its closure.
    NotExtensive { set: u64 },
    /// Applying the operator twice moves `set` further.
    NotIdempotent { set: u64 },
    /// The closure of `a ∪ b` differs from the union of the closures.
    NotAdditive { a: u64, b: u64 },
}

/// An assignment of a candidate singleton closure to every point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointClosureMap {
    universe: Arc<PointUniverse>,
    images: Vec<PointSubset>,
}

impl PointClosureMap {
    pub fn new(
        universe: &Arc<PointUniverse>,
        images: Vec<PointSubset>,
    ) -> Result<Self, SynthError> {
        if images.len() != universe.len() {
            return Err(SynthError::ImageCountMismatch {
                expected: universe.len(),
                got: images.len(),
            });
        }
        if images.iter().any(|s| !same_universe(universe, s.universe())) {
            return Err(SynthError::UniverseMismatch);
        }
        Ok(PointClosureMap { universe: Arc::clone(universe), images })
    }

    pub fn from_words(
        universe: &Arc<PointUniverse>,
        words: &[u64],
    ) -> Result<Self, SynthError> {
        let full = universe.full_word();
        if words.len() != universe.len() {
            return Err(SynthError::ImageCountMismatch {
                expected: universe.len(),
                got: words.len(),
            });
        }
        if let Some(&word) = words.iter().find(|&&w| w & !full != 0) {
            return Err(SynthError::TableEntryOutOfRange { word });
        }
        let images = words
            .iter()
            .map(|&w| PointSubset::from_word_unchecked(universe, w))
            .collect();
        Ok(PointClosureMap { universe: Arc::clone(universe), images })
    }

    /// The map `x ↦ closure({x})` of a topology. Always valid.
    pub fn from_topology(t: &FiniteTopology) -> Self {
        PointClosureMap { universe: Arc::clone(t.universe()), images: t.point_closures() }
    }

    pub fn universe(&self) -> &Arc<PointUniverse> {
        &self.universe
    }

    pub fn image(&self, x: usize) -> &PointSubset {
        &self.images[x]
    }

    pub fn images(&self) -> &[PointSubset] {
        &self.images
    }

    pub(crate) fn image_words(&self) -> Vec<u64> {
        self.images.iter().map(PointSubset::word).collect()
    }

    /// Check injectivity, extensivity and heredity, reporting the first
    /// witness (in point-index order) for each condition that fails.
    pub fn validate(&self) -> ValidationReport<ClosureMapViolation> {
        let words = self.image_words();
        let n = words.len();
        let mut violations = Vec::new();
        'injective: for x in 0..n {
            for y in x + 1..n {
                if words[x] == words[y] {
                    violations.push(ClosureMapViolation::NotInjective { x, y });
                    break 'injective;
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| words[x] >> x & 1 == 0) {
            violations.push(ClosureMapViolation::NotExtensive { x });
        }
        'hereditary: for x in 0..n {
            for y in 0..n {
                if words[x] >> y & 1 == 1 && words[y] & !words[x] != 0 {
                    violations.push(ClosureMapViolation::NotHereditary { x, y });
                    break 'hereditary;
                }
            }
        }
        ValidationReport::from_violations(violations)
    }

    pub fn is_valid(&self) -> bool {
        is_valid_image_words(&self.image_words())
    }

    /// Extension of the map to an arbitrary subset: the empty set maps to
    /// itself, anything else to the union of its points' images. Defined
    /// only for valid maps.
    pub fn extend(&self, a: &PointSubset) -> Result<PointSubset, SynthError> {
        if !same_universe(&self.universe, a.universe()) {
            return Err(SynthError::UniverseMismatch);
        }
        let report = self.validate();
        if !report.is_valid() {
            return Err(SynthError::InvalidMap(report));
        }
        let word = a
            .indices()
            .fold(0u64, |acc, x| acc | self.images[x].word());
        Ok(PointSubset::from_word_unchecked(&self.universe, word))
    }

    /// Membership relation `(x, y)` related iff `x` lies in the image of
    /// `y`; the map is valid exactly when this is a partial order.
    pub fn membership_relation(&self) -> Relation {
        let words = self.image_words();
        Relation::from_fn(self.universe.len(), |x, y| words[y] >> x & 1 == 1)
    }

    /// The unique topology whose singleton closures are the images of a
    /// valid map: opens are the complements of the fixed points of the
    /// extension.
    pub fn synthesize(&self) -> Result<FiniteTopology, SynthError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(SynthError::InvalidMap(report));
        }
        ClosureOperator::from_point_images(self).map(|op| op.fixed_point_topology())
    }
}

/// Word-level validity check used when scanning large map spaces; agrees
/// with `PointClosureMap::validate` by exhaustive test.
pub(crate) fn is_valid_image_words(words: &[u64]) -> bool {
    let n = words.len();
    for x in 0..n {
        if words[x] >> x & 1 == 0 {
            return false;
        }
        for y in x + 1..n {
            if words[x] == words[y] {
                return false;
            }
        }
        for y in 0..n {
            if words[x] >> y & 1 == 1 && words[y] & !words[x] != 0 {
                return false;
            }
        }
    }
    true
}

/// A closure operator tabulated over every subset of a small carrier
/// (indexed by indicator word).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureOperator {
    universe: Arc<PointUniverse>,
    table: Vec<u64>,
}

impl ClosureOperator {
    fn check_size(universe: &Arc<PointUniverse>) -> Result<usize, SynthError> {
        let n = universe.len();
        if n > MAX_TABLE_POINTS {
            return Err(SynthError::TableTooLarge { n });
        }
        Ok(1usize << n)
    }

    /// Tabulate an arbitrary function of subsets. Entries must stay within
    /// the carrier; no closure axiom is assumed.
    pub fn from_fn(
        universe: &Arc<PointUniverse>,
        mut f: impl FnMut(u64) -> u64,
    ) -> Result<Self, SynthError> {
        let size = Self::check_size(universe)?;
        let full = universe.full_word();
        let mut table = Vec::with_capacity(size);
        for a in 0..size as u64 {
            let word = f(a);
            if word & !full != 0 {
                return Err(SynthError::TableEntryOutOfRange { word });
            }
            table.push(word);
        }
        Ok(ClosureOperator { universe: Arc::clone(universe), table })
    }

    /// Tabulate the union-extension of a point-closure map. The map need
    /// not be valid; the axiom check below tells the cases apart.
    pub fn from_point_images(map: &PointClosureMap) -> Result<Self, SynthError> {
        let size = Self::check_size(map.universe())?;
        let words = map.image_words();
        let mut table = vec![0u64; size];
        for a in 1..size {
            // Union over members, built from the next-smaller subset.
            let x = a.trailing_zeros() as usize;
            table[a] = table[a & (a - 1)] | words[x];
        }
        Ok(ClosureOperator { universe: Arc::clone(map.universe()), table })
    }

    /// Tabulate `closure(t, ·)`.
    pub fn from_topology(t: &FiniteTopology) -> Result<Self, SynthError> {
        let size = Self::check_size(t.universe())?;
        let table = (0..size as u64).map(|a| t.closure_word(a)).collect();
        Ok(ClosureOperator { universe: Arc::clone(t.universe()), table })
    }

    pub fn universe(&self) -> &Arc<PointUniverse> {
        &self.universe
    }

    pub fn apply(&self, a: &PointSubset) -> Result<PointSubset, SynthError> {
        if !same_universe(&self.universe, a.universe()) {
            return Err(SynthError::UniverseMismatch);
        }
        Ok(PointSubset::from_word_unchecked(&self.universe, self.table[a.word() as usize]))
    }

    pub fn apply_word(&self, a: u64) -> u64 {
        self.table[a as usize]
    }

    /// Check the four closure axioms: empty set fixed, extensive,
    /// idempotent, additive over pairwise unions. One violation per failed
    /// axiom, witnessed by the first subset(s) in canonical order.
    pub fn check_kuratowski(&self) -> ValidationReport<KuratowskiViolation> {
        let size = self.table.len();
        let mut violations = Vec::new();
        if self.table[0] != 0 {
            violations.push(KuratowskiViolation::EmptySetNotFixed);
        }
        if let Some(a) = (0..size).find(|&a| (a as u64) & !self.table[a] != 0) {
            violations.push(KuratowskiViolation::NotExtensive { set: a as u64 });
        }
        if let Some(a) = (0..size).find(|&a| self.table[self.table[a] as usize] != self.table[a]) {
            violations.push(KuratowskiViolation::NotIdempotent { set: a as u64 });
        }
        'additive: for a in 0..size {
            for b in 0..size {
                if self.table[a | b] != self.table[a] | self.table[b] {
                    violations.push(KuratowskiViolation::NotAdditive { a: a as u64, b: b as u64 });
                    break 'additive;
                }
            }
        }
        ValidationReport::from_violations(violations)
    }

    /// The topology whose closed sets are the fixed points of a closure
    /// operator. Errors when the axioms fail.
    pub fn to_topology(&self) -> Result<FiniteTopology, SynthError> {
        let report = self.check_kuratowski();
        if !report.is_valid() {
            return Err(SynthError::NotClosureOperator(report));
        }
        Ok(self.fixed_point_topology())
    }

    /// Fixed points taken as closed sets, complemented into opens. Yields a
    /// topology whenever the closure axioms hold.
    pub(crate) fn fixed_point_topology(&self) -> FiniteTopology {
        let full = self.universe.full_word();
        let opens = (0..self.table.len())
            .filter(|&a| self.table[a] == a as u64)
            .map(|a| full & !(a as u64));
        let family = SetFamily::from_words(&self.universe, opens)
            .expect("complements of closed sets stay within the carrier");
        FiniteTopology::new(family)
            .expect("fixed points of a closure operator are the closed sets of a topology")
    }
}
