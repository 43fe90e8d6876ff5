//! Finite labeled carriers and their subsets.
//!
//! A carrier is an ordered list of distinct point labels; a subset is stored
//! as a single indicator word (point `i` lives at bit `i`), so every set
//! operation is a machine-word operation. Families of subsets are kept
//! deduplicated and sorted by indicator word, which fixes a canonical order
//! for everything built on top of them.

use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Hard cap on carrier size: a subset must fit in one 64-bit word.
pub const MAX_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CarrierError {
    #[error("carrier has {n} points, maximum is {max}", max = MAX_POINTS)]
    TooManyPoints { n: usize },
    #[error("duplicate point label {label:?}")]
    DuplicateLabel { label: String },
    #[error("unknown point label {label:?}")]
    UnknownLabel { label: String },
    #[error("point index {index} out of range for a carrier of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("indicator word {word:#x} has bits beyond a carrier of {len} points")]
    WordOutOfRange { word: u64, len: usize },
    #[error("operands belong to different carriers")]
    UniverseMismatch,
}

/// An ordered set of distinct point labels. May be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointUniverse {
    labels: Vec<String>,
}

impl PointUniverse {
    pub fn new<I, S>(labels: I) -> Result<Self, CarrierError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_POINTS {
            return Err(CarrierError::TooManyPoints { n: labels.len() });
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(CarrierError::DuplicateLabel { label: label.clone() });
            }
        }
        Ok(PointUniverse { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Label of point `i`. Panics if `i` is out of range.
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Indicator word of the whole carrier.
    pub fn full_word(&self) -> u64 {
        if self.labels.is_empty() {
            0
        } else {
            u64::MAX >> (64 - self.labels.len())
        }
    }
}

/// True when both handles denote the same carrier (pointer fast path,
/// label comparison otherwise).
pub(crate) fn same_universe(a: &Arc<PointUniverse>, b: &Arc<PointUniverse>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A subset of a carrier, stored as one indicator word.
#[derive(Debug, Clone)]
pub struct PointSubset {
    universe: Arc<PointUniverse>,
    bits: u64,
}

impl PointSubset {
    pub fn empty(universe: &Arc<PointUniverse>) -> Self {
        PointSubset { universe: Arc::clone(universe), bits: 0 }
    }

    pub fn full(universe: &Arc<PointUniverse>) -> Self {
        PointSubset { universe: Arc::clone(universe), bits: universe.full_word() }
    }

    pub fn singleton(universe: &Arc<PointUniverse>, i: usize) -> Result<Self, CarrierError> {
        if i >= universe.len() {
            return Err(CarrierError::IndexOutOfRange { index: i, len: universe.len() });
        }
        Ok(PointSubset { universe: Arc::clone(universe), bits: 1 << i })
    }

    pub fn from_word(universe: &Arc<PointUniverse>, word: u64) -> Result<Self, CarrierError> {
        if word & !universe.full_word() != 0 {
            return Err(CarrierError::WordOutOfRange { word, len: universe.len() });
        }
        Ok(PointSubset { universe: Arc::clone(universe), bits: word })
    }

    /// `from_word` for words already known to fit the carrier.
    pub(crate) fn from_word_unchecked(universe: &Arc<PointUniverse>, word: u64) -> Self {
        debug_assert_eq!(word & !universe.full_word(), 0);
        PointSubset { universe: Arc::clone(universe), bits: word }
    }

    pub fn from_indices(
        universe: &Arc<PointUniverse>,
        indices: &[usize],
    ) -> Result<Self, CarrierError> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= universe.len() {
                return Err(CarrierError::IndexOutOfRange { index: i, len: universe.len() });
            }
            bits |= 1 << i;
        }
        Ok(PointSubset { universe: Arc::clone(universe), bits })
    }

    pub fn from_labels<'a, I>(universe: &Arc<PointUniverse>, labels: I) -> Result<Self, CarrierError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut bits = 0u64;
        for label in labels {
            match universe.index_of(label) {
                Some(i) => bits |= 1 << i,
                None => return Err(CarrierError::UnknownLabel { label: label.to_string() }),
            }
        }
        Ok(PointSubset { universe: Arc::clone(universe), bits })
    }

    pub fn universe(&self) -> &Arc<PointUniverse> {
        &self.universe
    }

    pub fn word(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe.len() && self.bits >> i & 1 == 1
    }

    /// Member indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Member labels in carrier order.
    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.indices().map(|i| self.universe.label(i))
    }

    pub fn is_subset_of(&self, other: &PointSubset) -> bool {
        self.assert_same_universe(other);
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &PointSubset) -> PointSubset {
        self.assert_same_universe(other);
        PointSubset { universe: Arc::clone(&self.universe), bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &PointSubset) -> PointSubset {
        self.assert_same_universe(other);
        PointSubset { universe: Arc::clone(&self.universe), bits: self.bits & other.bits }
    }

    pub fn difference(&self, other: &PointSubset) -> PointSubset {
        self.assert_same_universe(other);
        PointSubset { universe: Arc::clone(&self.universe), bits: self.bits & !other.bits }
    }

    pub fn complement(&self) -> PointSubset {
        PointSubset {
            universe: Arc::clone(&self.universe),
            bits: self.universe.full_word() & !self.bits,
        }
    }

    fn assert_same_universe(&self, other: &PointSubset) {
        assert!(
            same_universe(&self.universe, &other.universe),
            "point subsets belong to different carriers"
        );
    }
}

impl PartialEq for PointSubset {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && same_universe(&self.universe, &other.universe)
    }
}

impl Eq for PointSubset {}

impl fmt::Display for PointSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, label) in self.labels().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{label}")?;
        }
        write!(f, "}}")
    }
}

/// A finite collection of subsets of one carrier, deduplicated and sorted
/// by indicator word (the canonical order used everywhere).
#[derive(Debug, Clone)]
pub struct SetFamily {
    universe: Arc<PointUniverse>,
    sets: Vec<PointSubset>,
}

impl SetFamily {
    pub fn new<I>(universe: &Arc<PointUniverse>, sets: I) -> Result<Self, CarrierError>
    where
        I: IntoIterator<Item = PointSubset>,
    {
        let mut out: Vec<PointSubset> = Vec::new();
        for set in sets {
            if !same_universe(universe, set.universe()) {
                return Err(CarrierError::UniverseMismatch);
            }
            out.push(set);
        }
        out.sort_by_key(PointSubset::word);
        out.dedup_by_key(|s| s.word());
        Ok(SetFamily { universe: Arc::clone(universe), sets: out })
    }

    pub fn from_words<I>(universe: &Arc<PointUniverse>, words: I) -> Result<Self, CarrierError>
    where
        I: IntoIterator<Item = u64>,
    {
        let sets = words
            .into_iter()
            .map(|w| PointSubset::from_word(universe, w))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(universe, sets)
    }

    pub fn universe(&self) -> &Arc<PointUniverse> {
        &self.universe
    }

    /// Member subsets in canonical order.
    pub fn sets(&self) -> &[PointSubset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Indicator words of the members, in increasing order.
    pub fn words(&self) -> impl Iterator<Item = u64> + '_ {
        self.sets.iter().map(PointSubset::word)
    }

    pub fn contains_word(&self, word: u64) -> bool {
        self.sets.binary_search_by_key(&word, PointSubset::word).is_ok()
    }

    pub fn contains(&self, set: &PointSubset) -> bool {
        same_universe(&self.universe, set.universe()) && self.contains_word(set.word())
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe)
            && self.sets.len() == other.sets.len()
            && self.words().eq(other.words())
    }
}

impl Eq for SetFamily {}
