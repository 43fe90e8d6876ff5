//! Quasi-metrics on finite carriers, with exact rational distances.
//!
//! A quasi-metric keeps the triangle inequality and a zero diagonal but
//! drops symmetry; points are separated in the T0 style (`d(x,y) = d(y,x)
//! = 0` forces `x = y`). Distance matrices are stored row-major with the
//! row as the first argument: `dist[x][y] = d(x, y)`.

use std::sync::Arc;
use thiserror::Error;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::carrier::{same_universe, PointSubset, PointUniverse, SetFamily};
use crate::report::ValidationReport;
use crate::topology::FiniteTopology;

/// Exact rational scalar used for all distances.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("distance matrix has {got} entries, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("negative distance at row {row}, column {col}")]
    NegativeEntry { row: usize, col: usize },
    #[error("quasi-metric fails validation")]
    Invalid(ValidationReport<MetricViolation>),
    #[error("ball radius must be positive")]
    NonpositiveRadius,
    #[error("distance constant must be positive")]
    NonpositiveConstant,
    #[error("point index {index} out of range for a carrier of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operation requires a nonempty subset")]
    EmptySubset,
    #[error("operands belong to different carriers")]
    UniverseMismatch,
    #[error("topology is not T0")]
    NotT0,
}

/// A failed quasi-metric axiom. Validation reports every witness, grouped
/// by axiom, each group in lexicographic index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricViolation {
    /// `d(x, x)` is nonzero.
    NonzeroDiagonal { x: usize },
    /// `d(from, to) > d(from, via) + d(via, to)`.
    Triangle { from: usize, to: usize, via: usize },
    /// `from ≠ to` but both `d(from, to)` and `d(to, from)` vanish.
    Separation { from: usize, to: usize },
}

/// Whether all nonzero distances share one value, and that value if so.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquidistanceReport {
    pub equidistant: bool,
    /// The shared nonzero distance; absent when every distance is zero
    /// (vacuously equidistant) or when `equidistant` is false.
    pub value: Option<Rational>,
}

/// A nonnegative rational distance matrix over a carrier. The triangle
/// inequality, zero diagonal and separation are checked by [`validate`],
/// not at construction, so invalid inputs stay representable for
/// diagnosis.
///
/// [`validate`]: QuasiMetric::validate
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiMetric {
    universe: Arc<PointUniverse>,
    dist: Vec<Rational>,
}

impl QuasiMetric {
    pub fn new(universe: &Arc<PointUniverse>, dist: Vec<Rational>) -> Result<Self, MetricError> {
        let n = universe.len();
        if dist.len() != n * n {
            return Err(MetricError::ShapeMismatch { expected: n * n, got: dist.len() });
        }
        for (k, d) in dist.iter().enumerate() {
            if d.is_negative() {
                return Err(MetricError::NegativeEntry { row: k / n, col: k % n });
            }
        }
        Ok(QuasiMetric { universe: Arc::clone(universe), dist })
    }

    pub fn from_rows(
        universe: &Arc<PointUniverse>,
        rows: Vec<Vec<Rational>>,
    ) -> Result<Self, MetricError> {
        let n = universe.len();
        let got: usize = rows.iter().map(Vec::len).sum();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(MetricError::ShapeMismatch { expected: n * n, got });
        }
        Self::new(universe, rows.into_iter().flatten().collect())
    }

    /// The equidistant quasi-metric of a T0 topology: distance zero from
    /// `x` to `y` when `x` lies in the closure of `{y}`, the constant
    /// otherwise.
    pub fn from_topology(t: &FiniteTopology, constant: &Rational) -> Result<Self, MetricError> {
        if !constant.is_positive() {
            return Err(MetricError::NonpositiveConstant);
        }
        if !t.is_t0_closures() {
            return Err(MetricError::NotT0);
        }
        let n = t.universe().len();
        let closures = t.point_closure_words();
        let mut dist = Vec::with_capacity(n * n);
        for x in 0..n {
            for closure in &closures {
                if closure >> x & 1 == 1 {
                    dist.push(Rational::zero());
                } else {
                    dist.push(constant.clone());
                }
            }
        }
        Ok(QuasiMetric { universe: Arc::clone(t.universe()), dist })
    }

    pub fn universe(&self) -> &Arc<PointUniverse> {
        &self.universe
    }

    /// `d(from, to)`. Panics if an index is out of range.
    pub fn distance(&self, from: usize, to: usize) -> &Rational {
        let n = self.universe.len();
        assert!(from < n && to < n, "point index out of range");
        &self.dist[from * n + to]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.dist
    }

    /// Check the quasi-metric axioms, reporting every violation: nonzero
    /// diagonal entries, then failed triangle inequalities, then
    /// inseparable pairs, each group in index order.
    pub fn validate(&self) -> ValidationReport<MetricViolation> {
        let n = self.universe.len();
        let d = |x: usize, y: usize| &self.dist[x * n + y];
        let mut violations = Vec::new();
        for x in 0..n {
            if !d(x, x).is_zero() {
                violations.push(MetricViolation::NonzeroDiagonal { x });
            }
        }
        for from in 0..n {
            for to in 0..n {
                for via in 0..n {
                    if *d(from, to) > d(from, via) + d(via, to) {
                        violations.push(MetricViolation::Triangle { from, to, via });
                    }
                }
            }
        }
        for from in 0..n {
            for to in from + 1..n {
                if d(from, to).is_zero() && d(to, from).is_zero() {
                    violations.push(MetricViolation::Separation { from, to });
                }
            }
        }
        ValidationReport::from_violations(violations)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Whether the nonzero distances share a single value.
    pub fn equidistance(&self) -> EquidistanceReport {
        let mut value: Option<&Rational> = None;
        for entry in &self.dist {
            if entry.is_zero() {
                continue;
            }
            match value {
                None => value = Some(entry),
                Some(v) if v == entry => {}
                Some(_) => return EquidistanceReport { equidistant: false, value: None },
            }
        }
        EquidistanceReport { equidistant: true, value: value.cloned() }
    }

    /// The open ball `{y : d(center, y) < radius}`.
    pub fn open_ball(&self, center: usize, radius: &Rational) -> Result<PointSubset, MetricError> {
        let n = self.universe.len();
        if center >= n {
            return Err(MetricError::IndexOutOfRange { index: center, len: n });
        }
        if !radius.is_positive() {
            return Err(MetricError::NonpositiveRadius);
        }
        let mut bits = 0u64;
        for y in 0..n {
            if self.dist[center * n + y] < *radius {
                bits |= 1 << y;
            }
        }
        Ok(PointSubset::from_word_unchecked(&self.universe, bits))
    }

    /// The topology generated by the open balls. Every distinct ball
    /// arises at some radius among the distinct positive entries plus one
    /// value beyond the maximum, so those radii suffice; the balls are then
    /// closed under pairwise union and intersection together with the
    /// empty set and the carrier.
    pub fn ball_topology(&self) -> Result<FiniteTopology, MetricError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(MetricError::Invalid(report));
        }
        let n = self.universe.len();
        let mut radii: std::collections::BTreeSet<Rational> =
            self.dist.iter().filter(|d| d.is_positive()).cloned().collect();
        let beyond = self.dist.iter().max().cloned().unwrap_or_else(Rational::zero)
            + Rational::one();
        radii.insert(beyond);

        let mut words = std::collections::BTreeSet::new();
        words.insert(0u64);
        words.insert(self.universe.full_word());
        for center in 0..n {
            for radius in &radii {
                words.insert(self.open_ball(center, radius)?.word());
            }
        }
        loop {
            let snapshot: Vec<u64> = words.iter().copied().collect();
            let before = words.len();
            for i in 0..snapshot.len() {
                for j in i + 1..snapshot.len() {
                    words.insert(snapshot[i] | snapshot[j]);
                    words.insert(snapshot[i] & snapshot[j]);
                }
            }
            if words.len() == before {
                break;
            }
        }
        let family = SetFamily::from_words(&self.universe, words)
            .expect("ball words stay within the carrier");
        Ok(FiniteTopology::new(family)
            .expect("a family closed under union and intersection with the empty set and the carrier is a topology"))
    }

    /// `min {d(x, a) : a ∈ set}` — the distance from a point to a set.
    pub fn distance_to_set(&self, x: usize, set: &PointSubset) -> Result<Rational, MetricError> {
        let n = self.universe.len();
        if !same_universe(&self.universe, set.universe()) {
            return Err(MetricError::UniverseMismatch);
        }
        if x >= n {
            return Err(MetricError::IndexOutOfRange { index: x, len: n });
        }
        set.indices()
            .map(|a| self.dist[x * n + a].clone())
            .min()
            .ok_or(MetricError::EmptySubset)
    }

    /// `{x : d(x, set) = 0}` — the closure of `set` in the ball topology,
    /// computed from distances alone.
    pub fn set_closure(&self, set: &PointSubset) -> Result<PointSubset, MetricError> {
        if set.is_empty() {
            return Err(MetricError::EmptySubset);
        }
        let n = self.universe.len();
        let mut bits = 0u64;
        for x in 0..n {
            if self.distance_to_set(x, set)?.is_zero() {
                bits |= 1 << x;
            }
        }
        Ok(PointSubset::from_word_unchecked(&self.universe, bits))
    }

    /// Entrywise maximum of `d(x, y)` and `d(y, x)`; symmetric by
    /// construction.
    pub fn symmetrize_max(&self) -> QuasiMetric {
        let n = self.universe.len();
        let dist = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                self.dist[x * n + y].clone().max(self.dist[y * n + x].clone())
            })
            .collect();
        QuasiMetric { universe: Arc::clone(&self.universe), dist }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::SetFamily;

    fn universe(labels: &[&str]) -> Arc<PointUniverse> {
        Arc::new(PointUniverse::new(labels.iter().copied()).unwrap())
    }

    fn rat(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn ratio(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn metric(u: &Arc<PointUniverse>, entries: &[i64]) -> QuasiMetric {
        QuasiMetric::new(u, entries.iter().map(|&e| rat(e)).collect()).unwrap()
    }

    /// Quasi-metric of the Sierpiński space: d(a,b) = 0, d(b,a) = 1.
    fn sierpinski_metric() -> QuasiMetric {
        metric(&universe(&["a", "b"]), &[0, 0, 1, 0])
    }

    fn sierpinski_topology() -> FiniteTopology {
        let u = universe(&["a", "b"]);
        FiniteTopology::new(SetFamily::from_words(&u, [0b00, 0b10, 0b11]).unwrap()).unwrap()
    }

    #[test]
    fn construction_checks_shape_and_sign() {
        let u = universe(&["a", "b"]);
        assert_eq!(
            QuasiMetric::new(&u, vec![rat(0); 3]),
            Err(MetricError::ShapeMismatch { expected: 4, got: 3 })
        );
        assert_eq!(
            QuasiMetric::new(&u, vec![rat(0), rat(-1), rat(1), rat(0)]),
            Err(MetricError::NegativeEntry { row: 0, col: 1 })
        );
    }

    #[test]
    fn sierpinski_metric_is_valid() {
        assert!(sierpinski_metric().validate().is_valid());
    }

    #[test]
    fn triangle_violation_names_the_first_triple() {
        let u = universe(&["a", "b", "c"]);
        let m = metric(&u, &[0, 1, 3, 1, 0, 1, 3, 1, 0]);
        assert_eq!(
            m.validate().violations(),
            &[
                MetricViolation::Triangle { from: 0, to: 2, via: 1 },
                MetricViolation::Triangle { from: 2, to: 0, via: 1 },
            ]
        );
    }

    #[test]
    fn diagonal_and_separation_violations() {
        let u = universe(&["a", "b"]);
        let m = metric(&u, &[0, 0, 0, 2]);
        let report = m.validate();
        assert!(report.violations().contains(&MetricViolation::NonzeroDiagonal { x: 1 }));
        assert!(report.violations().contains(&MetricViolation::Separation { from: 0, to: 1 }));
    }

    #[test]
    fn equidistance_reports() {
        let zero = metric(&universe(&["a"]), &[0]);
        assert_eq!(
            zero.equidistance(),
            EquidistanceReport { equidistant: true, value: None }
        );
        assert_eq!(
            sierpinski_metric().equidistance(),
            EquidistanceReport { equidistant: true, value: Some(rat(1)) }
        );
        let mixed = metric(&universe(&["a", "b"]), &[0, 1, 2, 0]);
        assert_eq!(
            mixed.equidistance(),
            EquidistanceReport { equidistant: false, value: None }
        );
    }

    #[test]
    fn open_balls_use_strict_inequality_from_the_center() {
        let m = sierpinski_metric();
        assert_eq!(m.open_ball(0, &ratio(1, 2)).unwrap().word(), 0b11);
        assert_eq!(m.open_ball(1, &ratio(1, 2)).unwrap().word(), 0b10);
        assert_eq!(m.open_ball(1, &rat(1)).unwrap().word(), 0b10);
        assert_eq!(m.open_ball(1, &rat(2)).unwrap().word(), 0b11);
        assert_eq!(m.open_ball(0, &rat(0)), Err(MetricError::NonpositiveRadius));
        assert_eq!(
            m.open_ball(9, &rat(1)),
            Err(MetricError::IndexOutOfRange { index: 9, len: 2 })
        );
    }

    #[test]
    fn ball_topology_of_sierpinski_metric_is_sierpinski() {
        let t = sierpinski_metric().ball_topology().unwrap();
        assert_eq!(t, sierpinski_topology());
    }

    #[test]
    fn ball_topology_requires_a_valid_metric() {
        let u = universe(&["a", "b"]);
        let m = metric(&u, &[0, 0, 0, 0]);
        assert!(matches!(m.ball_topology(), Err(MetricError::Invalid(_))));
    }

    #[test]
    fn from_topology_matches_the_membership_rule() {
        let t = sierpinski_topology();
        let m = QuasiMetric::from_topology(&t, &rat(1)).unwrap();
        assert_eq!(m, sierpinski_metric());
        assert_eq!(m.ball_topology().unwrap(), t);
    }

    #[test]
    fn from_topology_rejects_bad_inputs() {
        let u = universe(&["a", "b"]);
        let indiscrete =
            FiniteTopology::new(SetFamily::from_words(&u, [0b00, 0b11]).unwrap()).unwrap();
        assert_eq!(
            QuasiMetric::from_topology(&indiscrete, &rat(1)),
            Err(MetricError::NotT0)
        );
        assert_eq!(
            QuasiMetric::from_topology(&sierpinski_topology(), &rat(0)),
            Err(MetricError::NonpositiveConstant)
        );
    }

    #[test]
    fn constant_choice_does_not_change_the_ball_topology() {
        let t = sierpinski_topology();
        let m1 = QuasiMetric::from_topology(&t, &rat(1)).unwrap();
        let m2 = QuasiMetric::from_topology(&t, &ratio(7, 3)).unwrap();
        assert_eq!(m1.ball_topology().unwrap(), m2.ball_topology().unwrap());
    }

    #[test]
    fn set_distance_is_the_minimum_over_members() {
        let u = universe(&["a", "b", "c"]);
        let m = metric(&u, &[0, 1, 2, 1, 0, 1, 2, 1, 0]);
        let bc = PointSubset::from_word(&u, 0b110).unwrap();
        assert_eq!(m.distance_to_set(0, &bc).unwrap(), rat(1));
        assert_eq!(m.distance_to_set(2, &bc).unwrap(), rat(0));
        let empty = PointSubset::empty(&u);
        assert_eq!(m.distance_to_set(0, &empty), Err(MetricError::EmptySubset));
    }

    #[test]
    fn zero_distance_points_form_the_ball_topology_closure() {
        let m = sierpinski_metric();
        let t = m.ball_topology().unwrap();
        let u = m.universe();
        for word in 1..=u.full_word() {
            let a = PointSubset::from_word(u, word).unwrap();
            assert_eq!(m.set_closure(&a).unwrap(), t.closure(&a).unwrap());
        }
    }

    #[test]
    fn max_symmetrization_is_symmetric_and_valid() {
        let s = sierpinski_metric().symmetrize_max();
        assert_eq!(s.distance(0, 1), &rat(1));
        assert_eq!(s.distance(1, 0), &rat(1));
        assert!(s.validate().is_valid());
        assert_eq!(
            s.equidistance(),
            EquidistanceReport { equidistant: true, value: Some(rat(1)) }
        );
    }
}
