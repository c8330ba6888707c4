use std::sync::Arc;

use transop::fixpoint::{enumerate_fixpoints, StepKind};
use transop::oracle::{self, enumerate_unit_maps, enumerate_zero_maps, naive, state_names, OracleConfig, PosetMode};
use transop::order::{compose_galois, is_galois_pair, FinitePoset, GaloisPair, MonotoneMap};
use transop::{recoverability, Elem, Lattice, Proposition, PropositionPoset, Relation, TransitionFrame};

fn boolean(n: usize) -> Arc<PropositionPoset> {
    Arc::new(PropositionPoset::boolean_power(Arc::new(Lattice::chain2()), state_names(n)).unwrap())
}

fn constants(n: usize) -> Arc<PropositionPoset> {
    let l = Arc::new(Lattice::chain2());
    let rows = vec![
        Proposition::new("0", vec![l.bottom(); n]),
        Proposition::new("1", vec![l.top(); n]),
    ];
    Arc::new(PropositionPoset::new(l, state_names(n), rows).unwrap())
}

#[test]
fn adjunction_suites_on_small_state_sets() {
    let config = OracleConfig::default();
    for n in 1..=2 {
        let up = oracle::verify_upper_adjunction(&config, n).unwrap();
        assert!(up.passed(), "{}", up.summary_line());
        let low = oracle::verify_lower_adjunction(&config, n).unwrap();
        assert!(low.passed(), "{}", low.summary_line());
    }
    let up = oracle::verify_upper_adjunction(&config, 2).unwrap();
    assert_eq!(
        up.summary_line(),
        "upper-adjunction n=2 |B|=4: PASS (16 relations, 25 maps)"
    );
    assert_eq!(up.checks, 16 * 25);
    let low = oracle::verify_lower_adjunction(&config, 2).unwrap();
    assert_eq!(
        low.summary_line(),
        "lower-adjunction n=2 |B|=4: PASS (16 relations, 25 maps)"
    );
}

#[test]
fn map_counts() {
    assert_eq!(enumerate_unit_maps(&boolean(2), 1 << 24).unwrap().len(), 25);
    assert_eq!(enumerate_zero_maps(&boolean(2), 1 << 24).unwrap().len(), 25);
    assert_eq!(enumerate_unit_maps(&boolean(3), 1 << 24).unwrap().len(), 6859);
    assert_eq!(enumerate_unit_maps(&constants(1), 1 << 24).unwrap().len(), 2);
    assert_eq!(enumerate_unit_maps(&constants(2), 1 << 24).unwrap().len(), 4);
}

#[test]
fn suites_on_other_lattices() {
    for (lattice, mode, n) in [
        (Lattice::diamond(), PosetMode::FullPower, 1),
        (Lattice::chain(3), PosetMode::FullPower, 1),
        (Lattice::chain(3), PosetMode::BooleanPower, 2),
        (Lattice::diamond(), PosetMode::BooleanPower, 2),
        (Lattice::diamond(), PosetMode::FullPower, 2),
    ] {
        let config = OracleConfig {
            lattice: Arc::new(lattice),
            poset_mode: mode,
            ..OracleConfig::default()
        };
        let up = oracle::verify_upper_adjunction(&config, n).unwrap();
        assert!(up.passed(), "{}", up.summary_line());
        let low = oracle::verify_lower_adjunction(&config, n).unwrap();
        assert!(low.passed(), "{}", low.summary_line());
        let laws = oracle::verify_induction_laws(&config, n).unwrap();
        assert!(laws.passed(), "{}", laws.summary_lines());
    }
}

#[test]
fn sampled_regime_at_four_states() {
    let config = OracleConfig {
        max_states: 4,
        samples: 60,
        ..OracleConfig::default()
    };
    let up = oracle::verify_upper_adjunction(&config, 4).unwrap();
    assert!(up.sampled && up.passed());
    assert_eq!((up.relations, up.maps), (60, 60));
    let laws = oracle::verify_induction_laws(&config, 4).unwrap();
    assert!(laws.sampled && laws.passed(), "{}", laws.summary_lines());
    // identical seeds give identical reports
    let again = oracle::verify_upper_adjunction(&config, 4).unwrap();
    assert_eq!(up.summary_line(), again.summary_line());
}

#[test]
fn explicit_poset_mode() {
    let config = OracleConfig {
        poset_mode: PosetMode::Explicit(constants(2)),
        ..OracleConfig::default()
    };
    let up = oracle::verify_upper_adjunction(&config, 2).unwrap();
    assert!(up.passed());
    assert_eq!(up.maps, 4);
    assert!(oracle::verify_upper_adjunction(&config, 1).is_err());
}

#[test]
fn engine_matches_direct_evaluation() {
    for lattice in [Lattice::chain2(), Lattice::chain(3), Lattice::diamond()] {
        let config = OracleConfig {
            lattice: Arc::new(lattice),
            seed: 11,
            ..OracleConfig::default()
        };
        let check = oracle::cross_check_engine(&config, 3, 100).unwrap();
        assert_eq!(check.instances, 100);
        assert_eq!(check.mismatches, 0);
    }
}

/// `℘(S×S)` ordered by inclusion, as masks `0..2^(n²)`.
fn relation_poset(n: usize) -> Arc<FinitePoset> {
    let count = 1u64 << (n * n);
    let names = (0..count).map(|m| format!("{m}")).collect();
    Arc::new(FinitePoset::from_order(names, |i, j| i & !j == 0).unwrap())
}

fn map_poset(maps: &[Vec<Vec<Elem>>], l: &Lattice, reversed: bool) -> Arc<FinitePoset> {
    let names = (0..maps.len()).map(|i| format!("m{i}")).collect();
    Arc::new(
        FinitePoset::from_order(names, |i, j| {
            if reversed {
                naive::table_leq(l, &maps[j], &maps[i])
            } else {
                naive::table_leq(l, &maps[i], &maps[j])
            }
        })
        .unwrap(),
    )
}

#[test]
fn relation_operator_connections_as_finite_galois_pairs() {
    let n = 2;
    let b = boolean(n);
    let l = b.lattice().clone();
    let rows: Vec<Vec<Elem>> = b.rows().iter().map(|r| r.values.clone()).collect();
    let rels = relation_poset(n);
    let masks: Vec<u64> = (0..1u64 << (n * n)).collect();

    let inv_graph: Vec<usize> = masks.iter().map(|&m| naive::inverse(m, n) as usize).collect();
    let inv = MonotoneMap::new(rels.clone(), rels.clone(), inv_graph.clone()).unwrap();
    let inverse_pair = GaloisPair {
        lower: inv.clone(),
        upper: inv,
    };
    assert!(inverse_pair.report().unwrap().holds());

    // (φ, ψ) with Map₁ ordered by ⊑
    let uppers = enumerate_unit_maps(&b, 1 << 24).unwrap();
    let map1 = map_poset(&uppers, &l, true);
    let find = |maps: &[Vec<Vec<Elem>>], t: &Vec<Vec<Elem>>| maps.iter().position(|m| m == t).unwrap();
    let phi_graph: Vec<usize> = masks
        .iter()
        .map(|&m| find(&uppers, &naive::upper(&l, &rows, n, m)))
        .collect();
    let psi_graph: Vec<usize> = uppers
        .iter()
        .map(|t| naive::induced_upper(&l, &rows, t, n) as usize)
        .collect();
    let phi = MonotoneMap::new(rels.clone(), map1.clone(), phi_graph).unwrap();
    let psi = MonotoneMap::new(map1.clone(), rels.clone(), psi_graph).unwrap();
    let report = is_galois_pair(&phi, &psi).unwrap();
    assert!(report.holds() && report.consistent());
    let upper_pair = GaloisPair { lower: phi, upper: psi };

    // (Φ, Ψ) with Map₀ ordered pointwise
    let lowers = enumerate_zero_maps(&b, 1 << 24).unwrap();
    let map0 = map_poset(&lowers, &l, false);
    let big_phi_graph: Vec<usize> = masks
        .iter()
        .map(|&m| find(&lowers, &naive::lower(&l, &rows, n, m)))
        .collect();
    let big_psi_graph: Vec<usize> = lowers
        .iter()
        .map(|p| naive::induced_lower(&l, &rows, p, n) as usize)
        .collect();
    let big_phi = MonotoneMap::new(rels.clone(), map0.clone(), big_phi_graph).unwrap();
    let big_psi = MonotoneMap::new(map0.clone(), rels.clone(), big_psi_graph).unwrap();
    assert!(is_galois_pair(&big_phi, &big_psi).unwrap().holds());
    let lower_pair = GaloisPair {
        lower: big_phi,
        upper: big_psi,
    };

    for pair in [&upper_pair, &lower_pair] {
        let composed = compose_galois(&inverse_pair, pair).unwrap();
        assert!(composed.report().unwrap().holds());
        // composing with identities changes nothing
        let id = GaloisPair::identity(rels.clone());
        let same = compose_galois(&id, pair).unwrap();
        assert_eq!(same.lower.graph(), pair.lower.graph());
        assert_eq!(same.upper.graph(), pair.upper.graph());
    }
}

#[test]
fn fixpoints_with_boolean_power() {
    for n in 1..=3 {
        let b = boolean(n);
        for kind in [StepKind::Upper, StepKind::Lower] {
            let fixed = enumerate_fixpoints(&b, &b, kind, 3).unwrap();
            assert_eq!(fixed.len(), 1 << (n * n));
        }
    }
}

#[test]
fn fixpoints_with_constants_only() {
    let b = constants(2);
    let fixed: Vec<u64> = enumerate_fixpoints(&b, &b, StepKind::Upper, 3)
        .unwrap()
        .iter()
        .map(Relation::to_mask)
        .collect();
    // every row empty or full
    assert_eq!(fixed, vec![0b0000, 0b0011, 0b1100, 0b1111]);
    let lower: Vec<u64> = enumerate_fixpoints(&b, &b, StepKind::Lower, 3)
        .unwrap()
        .iter()
        .map(Relation::to_mask)
        .collect();
    // every column empty or full
    assert_eq!(lower, vec![0b0000, 0b0101, 0b1010, 0b1111]);
    assert!(enumerate_fixpoints(&b, &b, StepKind::Upper, 1).is_err());
}

#[test]
fn full_powers_recover_every_relation() {
    for lattice in [
        Lattice::chain2(),
        Lattice::chain(3),
        Lattice::chain(4),
        Lattice::diamond(),
    ] {
        let l = Arc::new(lattice);
        for n in 1..=2 {
            let full = Arc::new(PropositionPoset::full_power(l.clone(), state_names(n)).unwrap());
            for mask in 0..1u64 << (n * n) {
                let frame = TransitionFrame::with_relation(state_names(n), Relation::from_mask(n, mask)).unwrap();
                let report = recoverability(&frame, &full, &full).unwrap();
                assert!(report.recovered(), "{} n={n} mask={mask}", l.name());
            }
        }
    }
}

#[test]
fn extremal_relations_with_only_constants() {
    let b = constants(3);
    for r in [Relation::empty(3), Relation::full(3)] {
        let frame = TransitionFrame::with_relation(state_names(3), r).unwrap();
        assert!(recoverability(&frame, &b, &b).unwrap().recovered());
    }
}
