//! Exhaustive enumeration and verification on small carriers.
//!
//! Everything here is brute force on purpose: set families are scanned as
//! family words (bit `s` marks the presence of the subset whose indicator
//! word is `s`), in ascending family-word order, and each candidate is
//! checked directly against the axioms. Closure maps are scanned in
//! lexicographic order of their image-word tuples (first point most
//! significant). Carriers up to four points enumerate in well under a
//! second; five points (2^32 family candidates) is gated behind
//! `allow_slow` and may take minutes. Large scans are partitioned across
//! threads in a way that keeps the output order deterministic.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::carrier::{PointUniverse, SetFamily};
use crate::closure_map::{is_valid_image_words, PointClosureMap};
use crate::json;
use crate::qmetric::{QuasiMetric, Rational};
use crate::topology::FiniteTopology;

/// Largest carrier enumerated without the slow gate.
pub const MAX_FAST_POINTS: usize = 4;
/// Largest carrier enumerated at all.
pub const MAX_SLOW_POINTS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("carrier of {n} points is beyond the oracle range (maximum {max})", max = MAX_SLOW_POINTS)]
    UnsupportedSize { n: usize },
    #[error("exhaustive enumeration at n = {n} is long-running; pass allow_slow to run it")]
    SlowEnumeration { n: usize },
    #[error("unknown theorem id {token:?}")]
    UnknownTheorem { token: String },
}

fn check_range(n: usize, allow_slow: bool) -> Result<(), OracleError> {
    if n > MAX_SLOW_POINTS {
        Err(OracleError::UnsupportedSize { n })
    } else if n > MAX_FAST_POINTS && !allow_slow {
        Err(OracleError::SlowEnumeration { n })
    } else {
        Ok(())
    }
}

/// Carrier with single-letter labels `a`, `b`, `c`, ...
pub fn small_universe(n: usize) -> Arc<PointUniverse> {
    assert!(n <= 26, "letter labels run out past 26 points");
    let labels = (0..n).map(|i| ((b'a' + i as u8) as char).to_string());
    Arc::new(PointUniverse::new(labels).expect("letter labels are distinct"))
}

/// Topology axioms checked directly on a family word over the subsets of
/// an `n`-point carrier. Agrees with [`is_topology`] on materialized
/// families (asserted exhaustively in tests).
fn family_word_is_topology(word: u64, n: usize) -> bool {
    let carrier = (1u64 << n) - 1;
    if word & 1 == 0 || word >> carrier & 1 == 0 {
        return false;
    }
    let mut members = [0u8; 64];
    let mut count = 0;
    let mut rest = word;
    while rest != 0 {
        members[count] = rest.trailing_zeros() as u8;
        count += 1;
        rest &= rest - 1;
    }
    for i in 0..count {
        for j in i + 1..count {
            let (s, t) = (members[i] as u64, members[j] as u64);
            if word >> (s | t) & 1 == 0 || word >> (s & t) & 1 == 0 {
                return false;
            }
        }
    }
    true
}

const SCAN_CHUNK: u64 = 1 << 24;
const PARALLEL_THRESHOLD: u64 = 1 << 20;

/// Streams the family words of all topologies on `n` points in ascending
/// order. Every candidate family containing the empty set and the carrier
/// is visited; large ranges are scanned in parallel subranges whose
/// results are concatenated in range order.
struct FamilyScan {
    n: usize,
    subsets: u32,
    next_mid: u64,
    end_mid: u64,
    buffer: VecDeque<u64>,
}

impl FamilyScan {
    fn new(n: usize) -> Self {
        let subsets = 1u32 << n;
        // The low bit (empty set) and high bit (carrier) are forced; only
        // the middle bits vary.
        let end_mid = if subsets == 1 { 1 } else { 1u64 << (subsets - 2) };
        FamilyScan { n, subsets, next_mid: 0, end_mid, buffer: VecDeque::new() }
    }

    fn family_word(n: usize, subsets: u32, mid: u64) -> u64 {
        if subsets == 1 {
            1
        } else {
            debug_assert!(n >= 1);
            1 | mid << 1 | 1u64 << (subsets - 1)
        }
    }

    fn scan_range(n: usize, subsets: u32, mids: std::ops::Range<u64>) -> Vec<u64> {
        mids.map(|mid| Self::family_word(n, subsets, mid))
            .filter(|&word| family_word_is_topology(word, n))
            .collect()
    }
}

impl Iterator for FamilyScan {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if let Some(word) = self.buffer.pop_front() {
                return Some(word);
            }
            if self.next_mid >= self.end_mid {
                return None;
            }
            let chunk_end = (self.next_mid + SCAN_CHUNK).min(self.end_mid);
            let (n, subsets) = (self.n, self.subsets);
            let found = if chunk_end - self.next_mid >= PARALLEL_THRESHOLD {
                let pieces = 256;
                let width = (chunk_end - self.next_mid).div_ceil(pieces);
                let ranges: Vec<_> = (0..pieces)
                    .map(|i| {
                        let lo = self.next_mid + i * width;
                        lo.min(chunk_end)..(lo + width).min(chunk_end)
                    })
                    .collect();
                ranges
                    .into_par_iter()
                    .map(|r| Self::scan_range(n, subsets, r))
                    .collect::<Vec<_>>()
                    .concat()
            } else {
                Self::scan_range(n, subsets, self.next_mid..chunk_end)
            };
            self.buffer = found.into();
            self.next_mid = chunk_end;
        }
    }
}

fn materialize(universe: &Arc<PointUniverse>, family_word: u64, n: usize) -> FiniteTopology {
    let members = (0..1u64 << n).filter(|&s| family_word >> s & 1 == 1);
    let family =
        SetFamily::from_words(universe, members).expect("subset indices fit the carrier");
    FiniteTopology::new(family).expect("scanned family passed the topology axioms")
}

/// All topologies on `n` letter-labeled points, each exactly once, in
/// ascending family-word order.
pub fn enumerate_topologies(
    n: usize,
    allow_slow: bool,
) -> Result<impl Iterator<Item = FiniteTopology>, OracleError> {
    check_range(n, allow_slow)?;
    let universe = small_universe(n);
    Ok(FamilyScan::new(n).map(move |word| materialize(&universe, word, n)))
}

/// The T0 sub-stream of [`enumerate_topologies`], filtered by distinctness
/// of singleton closures.
pub fn enumerate_t0(
    n: usize,
    allow_slow: bool,
) -> Result<impl Iterator<Item = FiniteTopology>, OracleError> {
    Ok(enumerate_topologies(n, allow_slow)?.filter(FiniteTopology::is_t0_closures))
}

fn map_space(n: usize) -> u64 {
    1u64 << (n * n)
}

fn decode_map_words(k: u64, n: usize, buf: &mut [u64; 8]) {
    if n == 0 {
        return;
    }
    let mask = (1u64 << n) - 1;
    for (x, slot) in buf.iter_mut().enumerate().take(n) {
        *slot = k >> ((n - 1 - x) * n) & mask;
    }
}

/// All `(2^n)^n` point-closure maps on `n` letter-labeled points (valid or
/// not), in lexicographic image-tuple order.
pub fn enumerate_closure_maps(
    n: usize,
    allow_slow: bool,
) -> Result<impl Iterator<Item = PointClosureMap>, OracleError> {
    check_range(n, allow_slow)?;
    let universe = small_universe(n);
    Ok((0..map_space(n)).map(move |k| {
        let mut buf = [0u64; 8];
        decode_map_words(k, n, &mut buf);
        PointClosureMap::from_words(&universe, &buf[..n]).expect("image words fit the carrier")
    }))
}

fn count_valid_maps(n: usize) -> u64 {
    let passes = |k: u64| {
        let mut buf = [0u64; 8];
        decode_map_words(k, n, &mut buf);
        is_valid_image_words(&buf[..n])
    };
    let total = map_space(n);
    if total >= PARALLEL_THRESHOLD {
        (0..total).into_par_iter().filter(|&k| passes(k)).count() as u64
    } else {
        (0..total).filter(|&k| passes(k)).count() as u64
    }
}

/// Exhaustive counts over all set families and closure maps on `n` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub n: usize,
    /// All set families over the carrier: `2^(2^n)`.
    pub total_families: u64,
    pub topologies: u64,
    pub t0_topologies: u64,
    pub valid_closure_maps: u64,
    pub elapsed: Duration,
}

impl CensusReport {
    pub fn to_value(&self, include_timing: bool) -> Value {
        let mut map = Map::new();
        map.insert("n".into(), self.n.into());
        map.insert("total_families".into(), self.total_families.into());
        map.insert("topologies".into(), self.topologies.into());
        map.insert("t0_topologies".into(), self.t0_topologies.into());
        map.insert("valid_closure_maps".into(), self.valid_closure_maps.into());
        if include_timing {
            map.insert("elapsed_ms".into(), (self.elapsed.as_millis() as u64).into());
        }
        Value::Object(map)
    }
}

pub fn census(n: usize, allow_slow: bool) -> Result<CensusReport, OracleError> {
    check_range(n, allow_slow)?;
    let start = Instant::now();
    let mut topologies = 0u64;
    let mut t0_topologies = 0u64;
    for t in enumerate_topologies(n, allow_slow)? {
        topologies += 1;
        if t.is_t0_closures() {
            t0_topologies += 1;
        }
    }
    Ok(CensusReport {
        n,
        total_families: 1u64 << (1u32 << n),
        topologies,
        t0_topologies,
        valid_closure_maps: count_valid_maps(n),
        elapsed: start.elapsed(),
    })
}

/// The named checks the oracle can run exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// Valid closure maps and T0 topologies determine each other; both
    /// round trips are identities.
    MapTopologyCorrespondence,
    /// Every T0 topology is the ball topology of its own equidistant
    /// quasi-metric, which satisfies all quasi-metric axioms.
    EquidistantMetrization,
    /// The open-set and closure characterizations of T0 agree.
    T0CharacterizationsAgree,
    /// The closure of a nonempty set is the union of its point closures.
    ClosureUnionIdentity,
    /// Every closure-fingerprint class of T0 topologies is a singleton
    /// whose member is simultaneously the synthesized topology, at least
    /// as fine as every class member, and recovered from its quasi-metric.
    ClassCollapse,
    /// Distinct T0 topologies have distinct closure fingerprints.
    DistinctFingerprints,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::MapTopologyCorrespondence,
        TheoremId::EquidistantMetrization,
        TheoremId::T0CharacterizationsAgree,
        TheoremId::ClosureUnionIdentity,
        TheoremId::ClassCollapse,
        TheoremId::DistinctFingerprints,
    ];

    /// The id used on the wire and on the command line.
    pub fn token(self) -> &'static str {
        match self {
            TheoremId::MapTopologyCorrespondence => "T3.1",
            TheoremId::EquidistantMetrization => "T3.4",
            TheoremId::T0CharacterizationsAgree => "P2.1",
            TheoremId::ClosureUnionIdentity => "P2.3",
            TheoremId::ClassCollapse => "C3.4",
            TheoremId::DistinctFingerprints => "E3.5",
        }
    }

    pub fn describes(self) -> &'static str {
        match self {
            TheoremId::MapTopologyCorrespondence => {
                "closure maps and T0 topologies round-trip both ways"
            }
            TheoremId::EquidistantMetrization => {
                "every T0 topology is the ball topology of its equidistant quasi-metric"
            }
            TheoremId::T0CharacterizationsAgree => {
                "open-set separation agrees with closure distinctness"
            }
            TheoremId::ClosureUnionIdentity => {
                "closures of nonempty sets are unions of point closures"
            }
            TheoremId::ClassCollapse => {
                "closure-fingerprint classes are singletons carrying all three structures"
            }
            TheoremId::DistinctFingerprints => {
                "distinct T0 topologies have distinct closure fingerprints"
            }
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for TheoremId {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.token() == s)
            .ok_or_else(|| OracleError::UnknownTheorem { token: s.to_string() })
    }
}

/// Outcome of one exhaustive campaign. `passed` holds exactly when no
/// counterexample was found; a counterexample is the first failing
/// instance in enumeration order, serialized so it can be re-checked in
/// isolation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCertificate {
    pub theorem: TheoremId,
    pub n: usize,
    pub instances_checked: u64,
    pub passed: bool,
    pub counterexample: Option<Value>,
    pub elapsed: Duration,
}

impl TheoremCertificate {
    pub fn to_value(&self, include_timing: bool) -> Value {
        let mut map = Map::new();
        map.insert("theorem".into(), self.theorem.token().into());
        map.insert("n".into(), self.n.into());
        map.insert("instances_checked".into(), self.instances_checked.into());
        map.insert("passed".into(), self.passed.into());
        map.insert(
            "counterexample".into(),
            self.counterexample.clone().unwrap_or(Value::Null),
        );
        if include_timing {
            map.insert("elapsed_ms".into(), (self.elapsed.as_millis() as u64).into());
        }
        Value::Object(map)
    }
}

/// Run `passes` over every item, stopping at the first failure. Returns
/// the number of instances checked (including a failing one) and the
/// serialized failure, if any.
fn scan_instances<T>(
    items: impl IntoIterator<Item = T>,
    mut passes: impl FnMut(&T) -> bool,
    serialize: impl Fn(&T) -> Value,
) -> (u64, Option<Value>) {
    let mut checked = 0;
    for item in items {
        checked += 1;
        if !passes(&item) {
            return (checked, Some(serialize(&item)));
        }
    }
    (checked, None)
}

pub fn verify(
    theorem: TheoremId,
    n: usize,
    allow_slow: bool,
) -> Result<TheoremCertificate, OracleError> {
    check_range(n, allow_slow)?;
    let start = Instant::now();
    let (instances_checked, counterexample) = match theorem {
        TheoremId::MapTopologyCorrespondence => verify_correspondence(n, allow_slow)?,
        TheoremId::EquidistantMetrization => verify_metrization(n, allow_slow)?,
        TheoremId::T0CharacterizationsAgree => verify_t0_agreement(n, allow_slow)?,
        TheoremId::ClosureUnionIdentity => verify_closure_union(n, allow_slow)?,
        TheoremId::ClassCollapse => verify_class_collapse(n, allow_slow)?,
        TheoremId::DistinctFingerprints => verify_distinct_fingerprints(n, allow_slow)?,
    };
    Ok(TheoremCertificate {
        theorem,
        n,
        instances_checked,
        passed: counterexample.is_none(),
        counterexample,
        elapsed: start.elapsed(),
    })
}

/// Both round trips: every valid map is the point-closure map of the
/// topology it synthesizes, and every T0 topology is synthesized back from
/// its point-closure map. Instances are valid maps plus T0 topologies.
fn verify_correspondence(
    n: usize,
    allow_slow: bool,
) -> Result<(u64, Option<Value>), OracleError> {
    let valid_maps = enumerate_closure_maps(n, allow_slow)?.filter(|m| m.is_valid());
    let (map_side, failure) = scan_instances(
        valid_maps,
        |m| match m.synthesize() {
            Ok(t) => PointClosureMap::from_topology(&t) == *m,
            Err(_) => false,
        },
        json::closure_map_value,
    );
    if failure.is_some() {
        return Ok((map_side, failure));
    }
    let (topology_side, failure) = scan_instances(
        enumerate_t0(n, allow_slow)?,
        |t| {
            let m = PointClosureMap::from_topology(t);
            m.validate().is_valid() && m.synthesize().map(|s| s == *t).unwrap_or(false)
        },
        json::topology_value,
    );
    Ok((map_side + topology_side, failure))
}

fn verify_metrization(n: usize, allow_slow: bool) -> Result<(u64, Option<Value>), OracleError> {
    let one = Rational::one();
    Ok(scan_instances(
        enumerate_t0(n, allow_slow)?,
        |t| {
            let d = match QuasiMetric::from_topology(t, &one) {
                Ok(d) => d,
                Err(_) => return false,
            };
            if !d.validate().is_valid() {
                return false;
            }
            let report = d.equidistance();
            let expected = if d.entries().iter().all(Zero::is_zero) {
                None
            } else {
                Some(one.clone())
            };
            report.equidistant
                && report.value == expected
                && d.ball_topology().map(|b| b == *t).unwrap_or(false)
        },
        json::topology_value,
    ))
}

fn verify_t0_agreement(n: usize, allow_slow: bool) -> Result<(u64, Option<Value>), OracleError> {
    Ok(scan_instances(
        enumerate_topologies(n, allow_slow)?,
        |t| t.is_t0_separation() == t.is_t0_closures(),
        json::topology_value,
    ))
}

/// Instances are (topology, nonempty subset) pairs.
fn verify_closure_union(n: usize, allow_slow: bool) -> Result<(u64, Option<Value>), OracleError> {
    let full = small_universe(n).full_word();
    let pairs = enumerate_topologies(n, allow_slow)?
        .flat_map(move |t| (1..=full).map(move |word| (t.clone(), word)));
    Ok(scan_instances(
        pairs,
        |(t, word)| {
            let a = crate::carrier::PointSubset::from_word(t.universe(), *word)
                .expect("subset word fits the carrier");
            t.alexandroff_closure_identity(&a).unwrap_or(false)
        },
        |(t, word)| {
            let a = crate::carrier::PointSubset::from_word(t.universe(), *word)
                .expect("subset word fits the carrier");
            json!({"topology": json::topology_value(t), "subset": json::subset_value(&a)})
        },
    ))
}

fn verify_class_collapse(n: usize, allow_slow: bool) -> Result<(u64, Option<Value>), OracleError> {
    let topologies: Vec<FiniteTopology> = enumerate_t0(n, allow_slow)?.collect();
    let fingerprints: Vec<Vec<u64>> =
        topologies.iter().map(FiniteTopology::point_closure_words).collect();
    let one = Rational::one();
    Ok(scan_instances(
        0..topologies.len(),
        |&i| {
            let t = &topologies[i];
            // The fingerprint class of t must be {t} alone ...
            let class: Vec<usize> =
                (0..topologies.len()).filter(|&j| fingerprints[j] == fingerprints[i]).collect();
            if class != [i] {
                return false;
            }
            // ... and its member carries all three structures at once.
            let synthesized = match PointClosureMap::from_topology(t).synthesize() {
                Ok(s) => s,
                Err(_) => return false,
            };
            synthesized == *t
                && synthesized.is_finer_than(t).unwrap_or(false)
                && QuasiMetric::from_topology(t, &one)
                    .ok()
                    .and_then(|d| d.ball_topology().ok())
                    .is_some_and(|b| b == *t)
        },
        |&i| json::topology_value(&topologies[i]),
    ))
}

fn verify_distinct_fingerprints(
    n: usize,
    allow_slow: bool,
) -> Result<(u64, Option<Value>), OracleError> {
    let mut seen: HashMap<Vec<u64>, FiniteTopology> = HashMap::new();
    let mut checked = 0;
    for t in enumerate_t0(n, allow_slow)? {
        checked += 1;
        if let Some(previous) = seen.insert(t.point_closure_words(), t.clone()) {
            let pair = json!({
                "first": json::topology_value(&previous),
                "second": json::topology_value(&t),
            });
            return Ok((checked, Some(pair)));
        }
    }
    Ok((checked, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::is_topology;

    const TOPOLOGY_COUNTS: [u64; 5] = [1, 1, 4, 29, 355];
    const T0_COUNTS: [u64; 5] = [1, 1, 3, 19, 219];

    #[test]
    fn census_matches_the_known_counts() {
        for n in 0..=4 {
            let report = census(n, false).unwrap();
            assert_eq!(report.total_families, 1u64 << (1u32 << n), "n = {n}");
            assert_eq!(report.topologies, TOPOLOGY_COUNTS[n], "n = {n}");
            assert_eq!(report.t0_topologies, T0_COUNTS[n], "n = {n}");
            assert_eq!(report.valid_closure_maps, T0_COUNTS[n], "n = {n}");
        }
    }

    #[test]
    fn word_level_check_agrees_with_the_family_check() {
        for n in 0..=3usize {
            let universe = small_universe(n);
            let subsets = 1u32 << n;
            for family_word in 0..1u64 << subsets {
                let members = (0..u64::from(subsets)).filter(|&s| family_word >> s & 1 == 1);
                let family = SetFamily::from_words(&universe, members).unwrap();
                assert_eq!(
                    family_word_is_topology(family_word, n),
                    is_topology(&family),
                    "n = {n}, family word {family_word:#b}"
                );
            }
        }
    }

    #[test]
    fn streams_are_deterministic_and_duplicate_free() {
        let first: Vec<Vec<u64>> = enumerate_topologies(3, false)
            .unwrap()
            .map(|t| t.opens().words().collect())
            .collect();
        let second: Vec<Vec<u64>> = enumerate_topologies(3, false)
            .unwrap()
            .map(|t| t.opens().words().collect())
            .collect();
        assert_eq!(first, second);
        assert_eq!(first.len(), 29);
        let distinct: std::collections::HashSet<_> = first.iter().collect();
        assert_eq!(distinct.len(), 29);
    }

    #[test]
    fn map_stream_is_exhaustive_and_ordered() {
        let maps: Vec<PointClosureMap> = enumerate_closure_maps(2, false).unwrap().collect();
        assert_eq!(maps.len(), 16);
        assert_eq!(maps.iter().filter(|m| m.is_valid()).count(), 3);
        // First map sends both points to the empty set; last to the carrier.
        assert_eq!(maps[0].image(0).word(), 0);
        assert_eq!(maps[15].image(0).word(), 0b11);
        assert_eq!(maps[15].image(1).word(), 0b11);
    }

    #[test]
    fn oracle_range_is_gated() {
        assert_eq!(
            enumerate_topologies(5, false).err(),
            Some(OracleError::SlowEnumeration { n: 5 })
        );
        assert_eq!(census(5, false).err(), Some(OracleError::SlowEnumeration { n: 5 }));
        assert_eq!(
            enumerate_topologies(6, true).err(),
            Some(OracleError::UnsupportedSize { n: 6 })
        );
        assert_eq!(
            verify(TheoremId::T0CharacterizationsAgree, 6, true).err(),
            Some(OracleError::UnsupportedSize { n: 6 })
        );
    }

    #[test]
    fn all_campaigns_pass_on_three_points() {
        let expected_instances = [
            (TheoremId::MapTopologyCorrespondence, 38),
            (TheoremId::EquidistantMetrization, 19),
            (TheoremId::T0CharacterizationsAgree, 29),
            (TheoremId::ClosureUnionIdentity, 203),
            (TheoremId::ClassCollapse, 19),
            (TheoremId::DistinctFingerprints, 19),
        ];
        for (theorem, instances) in expected_instances {
            let cert = verify(theorem, 3, false).unwrap();
            assert!(cert.passed, "{theorem} failed: {:?}", cert.counterexample);
            assert_eq!(cert.instances_checked, instances, "{theorem}");
            assert_eq!(cert.counterexample, None);
        }
    }

    #[test]
    fn campaigns_handle_degenerate_carriers() {
        for n in 0..=1 {
            for theorem in TheoremId::ALL {
                let cert = verify(theorem, n, false).unwrap();
                assert!(cert.passed, "{theorem} at n = {n}");
            }
        }
        // No nonempty subsets exist over the empty carrier.
        let cert = verify(TheoremId::ClosureUnionIdentity, 0, false).unwrap();
        assert_eq!(cert.instances_checked, 0);
    }

    #[test]
    fn scanner_reports_the_first_failure() {
        let (checked, failure) =
            scan_instances([1, 2, 3], |&x| x != 2, |&x| json!({ "value": x }));
        assert_eq!(checked, 2);
        assert_eq!(failure, Some(json!({"value": 2})));
        let (checked, failure) = scan_instances([1, 3], |&x| x != 2, |&x| json!(x));
        assert_eq!((checked, failure), (2, None));
    }

    #[test]
    fn theorem_tokens_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.token().parse::<TheoremId>().unwrap(), id);
        }
        assert_eq!(
            "T9.9".parse::<TheoremId>().err(),
            Some(OracleError::UnknownTheorem { token: "T9.9".into() })
        );
    }

    #[test]
    fn certificate_serialization_mirrors_the_fields() {
        let cert = verify(TheoremId::T0CharacterizationsAgree, 2, false).unwrap();
        let with_timing = cert.to_value(true);
        assert_eq!(with_timing["theorem"], "P2.1");
        assert_eq!(with_timing["n"], 2);
        assert_eq!(with_timing["instances_checked"], 4);
        assert_eq!(with_timing["passed"], true);
        assert_eq!(with_timing["counterexample"], Value::Null);
        assert!(with_timing.get("elapsed_ms").is_some());
        let without = cert.to_value(false);
        assert!(without.get("elapsed_ms").is_none());

        let report = census(2, false).unwrap();
        let value = report.to_value(false);
        assert_eq!(
            serde_json::to_string(&value).unwrap(),
            r#"{"n":2,"total_families":16,"topologies":4,"t0_topologies":3,"valid_closure_maps":3}"#
        );
    }

    /// Every singleton closed forces the discrete topology on a finite
    /// carrier.
    #[test]
    fn finite_t1_collapses_to_discrete() {
        fn is_t1(t: &FiniteTopology) -> bool {
            (0..t.universe().len()).all(|x| t.point_closure(x).unwrap().word() == 1 << x)
        }
        for n in 0..=4usize {
            let mut seen = 0;
            for t in enumerate_topologies(n, false).unwrap() {
                if is_t1(&t) {
                    seen += 1;
                    assert_eq!(t.opens().len(), 1 << n, "discrete has every subset open");
                }
            }
            assert_eq!(seen, 1, "exactly one T1 topology at n = {n}");
        }
    }

    #[test]
    fn letter_universe_labels() {
        let u = small_universe(3);
        assert_eq!(u.labels(), &["a".to_string(), "b".into(), "c".into()]);
    }
}
