//! The acceptance suite: eight exhaustive criteria over small carriers
//! plus the frozen CLI bytes. Each test prints one pass/fail line (visible
//! with `cargo test --test acceptance -- --nocapture`).

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::time::Instant;

use alextop::{
    census, enumerate_closure_maps, enumerate_t0, enumerate_topologies, verify, ClosureOperator,
    KuratowskiViolation, PointClosureMap, PointSubset, PointUniverse, QuasiMetric, Rational,
    TheoremId,
};
use num_traits::One;

const TOPOLOGY_COUNTS: [u64; 5] = [1, 1, 4, 29, 355];
const T0_COUNTS: [u64; 5] = [1, 1, 3, 19, 219];

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn criterion(number: usize, summary: &str, check: impl FnOnce() -> Result<(), String>) {
    match check() {
        Ok(()) => println!("acceptance {number}: PASS — {summary}"),
        Err(reason) => {
            println!("acceptance {number}: FAIL — {summary}: {reason}");
            panic!("acceptance {number} failed: {reason}");
        }
    }
}

#[test]
fn acceptance_1_census() {
    criterion(1, "census counts 1/1/4/29/355 and 1/1/3/19/219 in under 10 s", || {
        let start = Instant::now();
        for (n, (&expected_all, &expected_t0)) in
            TOPOLOGY_COUNTS.iter().zip(&T0_COUNTS).enumerate()
        {
            let topologies = enumerate_topologies(n, false).unwrap().count() as u64;
            ensure!(
                topologies == expected_all,
                "expected {expected_all} topologies at n = {n}, found {topologies}"
            );
            let t0 = enumerate_t0(n, false).unwrap().count() as u64;
            ensure!(t0 == expected_t0, "expected {expected_t0} T0 topologies at n = {n}, found {t0}");
        }
        let elapsed = start.elapsed();
        ensure!(elapsed.as_secs() < 10, "census took {elapsed:?}, over the 10 s budget");
        Ok(())
    });
}

#[test]
fn acceptance_2_map_topology_bijection() {
    criterion(2, "valid maps equal T0 counts and both round trips are identities (n ≤ 4)", || {
        for (n, &expected) in T0_COUNTS.iter().enumerate() {
            let report = census(n, false).unwrap();
            ensure!(
                report.valid_closure_maps == expected,
                "expected {expected} valid maps at n = {n}, found {}",
                report.valid_closure_maps
            );
            let certificate = verify(TheoremId::MapTopologyCorrespondence, n, false).unwrap();
            ensure!(
                certificate.passed,
                "round trip failed at n = {n}: {:?}",
                certificate.counterexample
            );
            ensure!(
                certificate.instances_checked == 2 * expected,
                "expected {} instances at n = {n}, checked {}",
                2 * expected,
                certificate.instances_checked
            );
        }
        Ok(())
    });
}

#[test]
fn acceptance_3_equidistant_metrization() {
    criterion(3, "all 219 four-point T0 topologies metrize and round-trip at t = 1", || {
        let certificate = verify(TheoremId::EquidistantMetrization, 4, false).unwrap();
        ensure!(certificate.passed, "counterexample: {:?}", certificate.counterexample);
        ensure!(
            certificate.instances_checked == 219,
            "expected 219 instances, checked {}",
            certificate.instances_checked
        );
        Ok(())
    });
}

#[test]
fn acceptance_4_t0_characterizations() {
    criterion(4, "open-set and closure T0 tests agree on all 355 four-point topologies", || {
        let certificate = verify(TheoremId::T0CharacterizationsAgree, 4, false).unwrap();
        ensure!(certificate.passed, "counterexample: {:?}", certificate.counterexample);
        ensure!(
            certificate.instances_checked == 355,
            "expected 355 instances, checked {}",
            certificate.instances_checked
        );
        Ok(())
    });
}

#[test]
fn acceptance_5_closure_identity_and_fingerprints() {
    criterion(
        5,
        "closure identity on every nonempty subset (n ≤ 4); 219 distinct fingerprints whose classes are singletons",
        || {
            let pair_counts = [0u64, 1, 12, 203, 5325];
            for (n, &pairs) in pair_counts.iter().enumerate() {
                let certificate = verify(TheoremId::ClosureUnionIdentity, n, false).unwrap();
                ensure!(
                    certificate.passed,
                    "closure identity failed at n = {n}: {:?}",
                    certificate.counterexample
                );
                ensure!(
                    certificate.instances_checked == pairs,
                    "expected {pairs} (topology, subset) pairs at n = {n}, checked {}",
                    certificate.instances_checked
                );
            }
            for theorem in [TheoremId::DistinctFingerprints, TheoremId::ClassCollapse] {
                let certificate = verify(theorem, 4, false).unwrap();
                ensure!(
                    certificate.passed,
                    "{theorem} failed: {:?}",
                    certificate.counterexample
                );
                ensure!(
                    certificate.instances_checked == 219,
                    "{theorem}: expected 219 instances, checked {}",
                    certificate.instances_checked
                );
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_6_kuratowski_suite() {
    criterion(6, "extensions of valid maps satisfy the closure axioms; seeded non-examples are rejected with their witnesses", || {
        for n in 0..=4usize {
            for map in enumerate_closure_maps(n, false).unwrap().filter(|m| m.is_valid()) {
                let operator = ClosureOperator::from_point_images(&map).unwrap();
                let report = operator.check_kuratowski();
                ensure!(
                    report.is_valid(),
                    "operator of a valid map failed at n = {n}: {:?}",
                    report.violations()
                );
            }
        }

        // Non-example 1: send every subset (including ∅) to the carrier.
        let u = two_points();
        let carrier = u.full_word();
        let constant_full = ClosureOperator::from_fn(&u, |_| carrier).unwrap();
        let violations = constant_full.check_kuratowski().violations().to_vec();
        ensure!(
            violations == vec![KuratowskiViolation::EmptySetNotFixed],
            "constant-to-carrier operator: expected the empty-set witness, got {violations:?}"
        );

        // Non-example 2: a non-hereditary map (c's image contains b, but
        // b's image is not inside c's) extends to a non-idempotent
        // operator, caught at the subset {c}.
        let u = three_points();
        let map = PointClosureMap::from_words(&u, &[0b001, 0b011, 0b110]).unwrap();
        ensure!(!map.is_valid(), "the seeded map should be invalid");
        let operator = ClosureOperator::from_point_images(&map).unwrap();
        let violations = operator.check_kuratowski().violations().to_vec();
        ensure!(
            violations == vec![KuratowskiViolation::NotIdempotent { set: 0b100 }],
            "non-hereditary extension: expected the {{c}} idempotence witness, got {violations:?}"
        );
        Ok(())
    });
}

#[test]
fn acceptance_7_distance_closure() {
    criterion(7, "distance-zero closure equals topological closure for every metric and nonempty subset (n ≤ 4)", || {
        let one = Rational::one();
        for n in 0..=4usize {
            for topology in enumerate_t0(n, false).unwrap() {
                let metric = QuasiMetric::from_topology(&topology, &one).unwrap();
                let ball_topology = metric.ball_topology().unwrap();
                let full = topology.universe().full_word();
                for word in 1..=full {
                    let subset = PointSubset::from_word(topology.universe(), word).unwrap();
                    let via_distance = metric.set_closure(&subset).unwrap();
                    let via_topology = ball_topology.closure(&subset).unwrap();
                    ensure!(
                        via_distance == via_topology,
                        "closures disagree at n = {n}, subset {subset}: {via_distance} vs {via_topology}"
                    );
                }
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_8_cli_goldens() {
    criterion(8, "CLI outputs are byte-identical to the fixtures and the pipeline composes", || {
        for example in ["sierpinski", "chain3"] {
            let input = golden(&format!("{example}_map.json"));
            let input = input.to_str().unwrap();
            let cases = [
                (vec!["validate", input], format!("{example}_validate.json")),
                (vec!["synthesize", input], format!("{example}_opens.json")),
                (vec!["qmetric", input], format!("{example}_qmetric.json")),
                (vec!["hasse", input], format!("{example}_hasse.dot")),
            ];
            for (args, expected) in cases {
                let produced = cli_stdout(&args, None)?;
                let frozen = read_golden(&format!("expected/{expected}"))?;
                ensure!(produced == frozen, "alextop {args:?} diverged from {expected}");
            }
            let metric = read_golden(&format!("expected/{example}_qmetric.json"))?;
            let balls = cli_stdout(&["balls", "-"], Some(&metric))?;
            let opens = read_golden(&format!("expected/{example}_opens.json"))?;
            ensure!(balls == opens, "balls on the {example} metric diverged from the fixture");

            // synthesize | qmetric | balls reproduces the synthesize bytes.
            let synthesized = cli_stdout(&["synthesize", input], None)?;
            let piped_metric = cli_stdout(&["qmetric", "-"], Some(&synthesized))?;
            let recovered = cli_stdout(&["balls", "-"], Some(&piped_metric))?;
            ensure!(recovered == synthesized, "{example} pipeline did not round-trip");
        }
        Ok(())
    });
}

fn two_points() -> std::sync::Arc<PointUniverse> {
    std::sync::Arc::new(PointUniverse::new(["a", "b"]).unwrap())
}

fn three_points() -> std::sync::Arc<PointUniverse> {
    std::sync::Arc::new(PointUniverse::new(["a", "b", "c"]).unwrap())
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn read_golden(name: &str) -> Result<String, String> {
    std::fs::read_to_string(golden(name)).map_err(|e| format!("fixture {name}: {e}"))
}

fn cli_stdout(args: &[&str], stdin: Option<&str>) -> Result<String, String> {
    let mut child = Command::new(env!("CARGO_BIN_EXE_alextop"))
        .args(args)
        .stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() })
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| format!("spawn: {e}"))?;
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(text.as_bytes())
            .map_err(|e| format!("stdin: {e}"))?;
    }
    let output = child.wait_with_output().map_err(|e| format!("wait: {e}"))?;
    if !output.status.success() {
        return Err(format!(
            "alextop {args:?} exited with {:?}: {}",
            output.status.code(),
            String::from_utf8_lossy(&output.stderr)
        ));
    }
    String::from_utf8(output.stdout).map_err(|e| format!("non-utf8 output: {e}"))
}
