mod common;

use std::collections::BTreeSet;

use common::random_complex;
use proptest::prelude::*;
use strip_ph::complex::{parse_json, parse_text, serialize_json, serialize_text, FilteredComplex};
use strip_ph::f2::{boundary_matrix, AdditionCounter, BoundaryMatrix};
use strip_ph::generators::{generate, Variant};
use strip_ph::realization::{
    clique_complex, flag_check, one_skeleton, verify_realization, DeltaSchedule, FilteredGraph,
};
use strip_ph::reduction::{
    betti_numbers, diagram, extract_pairs, reduce, Algorithm, ReductionResult, ReductionStep,
};

fn run_all(c: &FilteredComplex) -> Vec<ReductionResult> {
    let d = boundary_matrix(c);
    Algorithm::ALL.iter().map(|&a| reduce(a, &d, c).unwrap()).collect()
}

/// Re-applies the recorded steps to `d` and returns the resulting matrix
/// and total cost.
fn replay(d: &BoundaryMatrix, steps: &[ReductionStep]) -> (BoundaryMatrix, AdditionCounter) {
    let mut m = d.clone();
    let mut counter = AdditionCounter::new();
    for step in steps {
        match *step {
            ReductionStep::Add { source, target, cost } => {
                assert!(source < target, "left-to-right additions only");
                let src = m.columns[source - 1].clone();
                let before = counter.field_additions;
                m.columns[target - 1].add_assign(&src, &mut counter);
                assert_eq!(counter.field_additions - before, cost);
            }
            ReductionStep::Clear { column } => m.columns[column - 1].clear(),
        }
    }
    (m, counter)
}

fn edge_levels(c: &FilteredComplex) -> BTreeSet<(Vec<usize>, u64)> {
    c.iter()
        .filter(|(_, s, _)| s.dimension() == 1)
        .map(|(_, s, l)| (s.vertices().to_vec(), l))
        .collect()
}

fn check_complex(c: &FilteredComplex) -> Result<(), TestCaseError> {
    let d = boundary_matrix(c);
    let results = run_all(c);
    for r in &results {
        prop_assert_eq!(&r.pivots, &results[0].pivots, "{} pairing differs", r.algorithm);

        let lows: Vec<usize> = r.reduced.lows().into_iter().filter(|&l| l != 0).collect();
        let distinct: BTreeSet<usize> = lows.iter().copied().collect();
        prop_assert_eq!(lows.len(), distinct.len(), "{} left repeated lows", r.algorithm);

        let (replayed, counter) = replay(&d, &r.steps);
        prop_assert_eq!(&replayed.columns, &r.reduced.columns);
        prop_assert_eq!(counter, r.counter);
    }
    let dgm = diagram(&extract_pairs(&results[0], c).unwrap(), None);
    let top = c.max_dimension().unwrap_or(0);
    for &level in c.levels() {
        let betti = betti_numbers(c, level);
        for (p, &b) in betti.iter().enumerate().take(top + 1) {
            prop_assert_eq!(dgm.alive_at(p, level), b, "dimension {} at level {}", p, level);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 300,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn algorithms_agree_on_random_complexes(seed in any::<u64>()) {
        check_complex(&random_complex(seed))?;
    }

    #[test]
    fn text_and_json_round_trip(seed in any::<u64>()) {
        let c = random_complex(seed);
        prop_assert_eq!(parse_text(&serialize_text(&c)).unwrap(), c.clone());
        prop_assert_eq!(parse_json(&serialize_json(&c)).unwrap(), c);
    }

    #[test]
    fn boundary_of_boundary_vanishes(seed in any::<u64>()) {
        let c = random_complex(seed);
        let d = boundary_matrix(&c).to_dense();
        let n = d.len();
        for i in 0..n {
            for j in 0..n {
                let s: u8 = (0..n).map(|k| d[i][k] & d[k][j]).fold(0, |a, b| a ^ b);
                prop_assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn clique_complexes_are_flag(seed in any::<u64>()) {
        let c = random_complex(seed);
        let cl = clique_complex(&one_skeleton(&c), 2).unwrap();
        prop_assert!(cl.validate().is_ok());
        prop_assert!(flag_check(&cl).is_flag);
        prop_assert_eq!(edge_levels(&cl), edge_levels(&c));
    }

    #[test]
    fn random_graphs_realize(
        n in 2usize..7,
        raw in proptest::collection::vec(proptest::option::of(1u64..6), 21),
        schedule in prop_oneof![Just(DeltaSchedule::Linear), Just(DeltaSchedule::Geometric)],
    ) {
        let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        let edges: Vec<_> = pairs.zip(&raw).filter_map(|(e, l)| l.map(|l| (e, l))).collect();
        let g = FilteredGraph::with_positions(n, edges).unwrap();
        let report = verify_realization(&g, schedule).unwrap();
        prop_assert!(report.is_ok(), "{:?}", report.mismatches());
        prop_assert!(report.gershgorin_row_sum <= 0.5);
    }
}

#[test]
fn algorithms_agree_on_strip_complexes() {
    for variant in [Variant::Strip, Variant::Modified] {
        for n in 1..=6 {
            check_complex(&generate(variant, n).unwrap().complex).unwrap();
        }
    }
}

#[test]
fn twist_never_costs_more_on_strips() {
    for n in 1..=40 {
        let c = generate(Variant::Strip, n).unwrap().complex;
        let [standard, twist, lookahead] = <[ReductionResult; 3]>::try_from(run_all(&c)).ok().unwrap();
        assert!(twist.counter.field_additions <= standard.counter.field_additions, "n = {n}");
        assert_eq!(lookahead.counter, standard.counter, "n = {n}");
    }
}

#[test]
fn strip_diagrams_have_one_essential_class() {
    for variant in [Variant::Strip, Variant::Modified] {
        for n in 1..=10 {
            let c = generate(variant, n).unwrap().complex;
            let r = reduce(Algorithm::Standard, &boundary_matrix(&c), &c).unwrap();
            let pairs = extract_pairs(&r, &c).unwrap();
            let essential: Vec<_> = pairs.iter().filter(|p| p.death_index.is_none()).collect();
            assert_eq!(essential.len(), 1);
            assert_eq!(essential[0].dimension, 0);
        }
    }
}
