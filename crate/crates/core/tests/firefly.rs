//! Golden values for the bundled firefly-box systems.

use std::path::PathBuf;
use std::sync::Arc;

use transop::fixpoint::{iterate, step, Schedule, StepKind};
use transop::frame::{relation_compare, RelationOrder};
use transop::induction::{
    recoverability, transfer_check, uniform_witness_lower, uniform_witness_upper, WitnessOutcome,
};
use transop::operator::{adjunction_holds, codomain_closed, operator_compare, OperatorOrder};
use transop::order::{lower_adjoint, FinitePoset, MonotoneMap};
use transop::system::read_system;
use transop::{
    induced_lower, induced_upper, lower_operator, upper_operator, Elem, OperatorTable, PropositionPoset, Relation,
    SystemDescription,
};

fn fixture(name: &str) -> SystemDescription {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    read_system(&path).unwrap()
}

/// A row name of `b` or a tuple such as `(1,0,1,0,1)`.
fn value(b: &PropositionPoset, spec: &str) -> Vec<Elem> {
    if let Some(inner) = spec.strip_prefix('(') {
        inner
            .trim_end_matches(')')
            .split(',')
            .map(|v| b.lattice().element(v).unwrap())
            .collect()
    } else {
        b.vector(b.index_of(spec).unwrap()).to_vec()
    }
}

fn relation(sys: &SystemDescription, pairs: &[(u8, u8)]) -> Relation {
    let n = sys.states().len();
    Relation::from_pairs(n, pairs.iter().map(|&(s, t)| (s as usize - 1, t as usize - 1)))
}

fn check_table(table: &OperatorTable, expected: &[(&str, &str)]) {
    let b = table.domain();
    assert_eq!(expected.len(), b.len());
    for (row, want) in expected {
        assert_eq!(
            table.entry_named(row).unwrap(),
            value(b, want).as_slice(),
            "entry for {row}"
        );
    }
}

const R1: &[(u8, u8)] = &[(1, 2), (2, 3), (3, 2), (3, 5), (4, 3), (4, 5), (5, 5)];
const R1_LOWER: &[(u8, u8)] = &[
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 2),
    (3, 3),
    (3, 5),
    (4, 2),
    (4, 3),
    (4, 5),
    (5, 5),
];
const R: &[(u8, u8)] = &[(1, 2), (2, 3), (3, 2), (3, 4), (4, 3), (4, 5), (5, 3), (5, 5)];
const R3: &[(u8, u8)] = &[
    (1, 2),
    (2, 3),
    (3, 1),
    (3, 2),
    (3, 3),
    (3, 4),
    (4, 3),
    (4, 5),
    (5, 3),
    (5, 5),
];
const R4: &[(u8, u8)] = &[
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 2),
    (3, 3),
    (3, 4),
    (4, 2),
    (4, 3),
    (4, 5),
    (5, 3),
    (5, 5),
];
const R5: &[(u8, u8)] = &[
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 1),
    (3, 2),
    (3, 3),
    (3, 4),
    (4, 2),
    (4, 3),
    (4, 5),
    (5, 3),
    (5, 5),
];

#[test]
fn firefly_parses() {
    let sys = fixture("firefly.system");
    assert_eq!(sys.b.len(), 12);
    assert_eq!(sys.states().len(), 5);
    assert_eq!(sys.relation().len(), 7);
    assert_eq!(sys.hasse.len(), 22);
    assert_eq!(*sys.relation(), relation(&sys, R1));
    assert_eq!(sys.frame.successors("s3").unwrap(), ["s2", "s5"]);
    assert_eq!(sys.frame.predecessors("s5").unwrap(), ["s3", "s4", "s5"]);
    let sys3 = fixture("firefly3.system");
    assert_eq!(sys3.frame.predecessors("s3").unwrap(), ["s2", "s4", "s5"]);
}

#[test]
fn lattice_of_propositions() {
    let sys = fixture("firefly.system");
    let b = &sys.b;
    let l = b.lattice();
    let meet: Vec<Elem> = value(b, "l'")
        .iter()
        .zip(value(b, "r'"))
        .map(|(&x, y)| l.meet2(x, y))
        .collect();
    assert_eq!(b.label(&meet), "n");
    let join: Vec<Elem> = value(b, "l")
        .iter()
        .zip(value(b, "r"))
        .map(|(&x, y)| l.join2(x, y))
        .collect();
    assert_eq!(b.label(&join), "n'");
    let order = b.to_poset();
    let atoms: Vec<&str> = order
        .covers()
        .into_iter()
        .filter(|&(lo, _)| lo == b.zero())
        .map(|(_, hi)| b.name(hi))
        .collect();
    assert_eq!(atoms, ["l", "r", "n", "f", "b"]);
}

#[test]
fn first_relation_upper_table() {
    let sys = fixture("firefly.system");
    let t = upper_operator(&sys.frame, &sys.b).unwrap();
    check_table(
        &t,
        &[
            ("0", "0"),
            ("1", "1"),
            ("l", "(1,0,0,0,0)"),
            // follows from the definition: s2's only successor s3 has l'(s3) = 1
            ("l'", "(0,1,0,1,1)"),
            ("r", "(0,1,0,0,0)"),
            ("r'", "(1,0,1,0,1)"),
            ("n", "n"),
            ("n'", "l"),
            ("f", "0"),
            ("f'", "1"),
            ("b", "l"),
            ("b'", "n"),
        ],
    );
    let outside: Vec<&str> = codomain_closed(&t, &sys.b)
        .unwrap()
        .into_iter()
        .map(|i| sys.b.name(i))
        .collect();
    assert_eq!(outside, ["l", "r", "l'", "r'"]);
}

#[test]
fn first_relation_lower_table() {
    let sys = fixture("firefly.system");
    let p = lower_operator(&sys.frame, &sys.a).unwrap();
    let mut expected = vec![("0", "0"), ("l", "b"), ("n", "n")];
    for row in ["1", "l'", "r", "r'", "n'", "f", "f'", "b", "b'"] {
        expected.push((row, "f'"));
    }
    check_table(&p, &expected);
    assert!(codomain_closed(&p, &sys.b).unwrap().is_empty());
    let t = upper_operator(&sys.frame, &sys.b).unwrap();
    assert_eq!(adjunction_holds(&p, &t).unwrap(), None);
}

#[test]
fn first_relation_induction() {
    let sys = fixture("firefly.system");
    let t = upper_operator(&sys.frame, &sys.b).unwrap();
    let p = lower_operator(&sys.frame, &sys.a).unwrap();
    assert_eq!(induced_upper(&t), relation(&sys, R1));
    assert_eq!(induced_lower(&p), relation(&sys, R1_LOWER));
    let (order, delta) = relation_compare(sys.relation(), &relation(&sys, R1_LOWER)).unwrap();
    assert_eq!(order, RelationOrder::Subset);
    assert_eq!(delta.added, vec![(0, 2), (1, 1), (2, 2), (3, 1)]);

    let report = recoverability(&sys.frame, &sys.a, &sys.b).unwrap();
    assert!(report.upper_recovered);
    assert!(!report.lower_recovered);
    assert_eq!(report.lower_delta.added, vec![(0, 2), (1, 1), (2, 2), (3, 1)]);
}

#[test]
fn lower_adjoint_of_the_upper_operator_is_the_lower_operator() {
    // On the full power 2^S the upper operator is a map between finite
    // posets; its lower adjoint must be the lower operator.
    let sys = fixture("firefly.system");
    let full = Arc::new(PropositionPoset::full_power(sys.lattice().clone(), sys.states().clone()).unwrap());
    let t = upper_operator(&sys.frame, &full).unwrap();
    let p = lower_operator(&sys.frame, &full).unwrap();
    let order = Arc::new(full.to_poset());
    let graph = |table: &OperatorTable| -> Vec<usize> {
        table
            .entries()
            .iter()
            .map(|v| full.index_of_vector(v).unwrap())
            .collect()
    };
    let t_map = MonotoneMap::new(order.clone(), order.clone(), graph(&t)).unwrap();
    let adjoint = lower_adjoint(&t_map)
        .unwrap()
        .expect("meet-preserving maps have lower adjoints");
    assert_eq!(adjoint.graph(), graph(&p).as_slice());

    let listed = lower_operator(&sys.frame, &sys.a).unwrap();
    for (i, row) in sys.a.rows().iter().enumerate() {
        let image = adjoint.apply(full.index_of_vector(&row.values).unwrap());
        assert_eq!(full.vector(image), listed.entry(i));
    }
}

#[test]
fn hasse_section_matches_the_table() {
    let sys = fixture("firefly.system");
    let names: Vec<&str> = sys.b.rows().iter().map(|r| r.name.as_str()).collect();
    let covers: Vec<(&str, &str)> = sys.hasse.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let abstract_order = FinitePoset::from_covers(&names, &covers).unwrap();
    let identity: Vec<usize> = (0..12).collect();
    let report = transop::order::is_order_reflecting_embedding(&abstract_order, &sys.b, &identity).unwrap();
    assert!(report.holds);
}

#[test]
fn second_relation_is_recovered_both_ways() {
    let sys = fixture("firefly-r2.system");
    assert_eq!(*sys.relation(), relation(&sys, R1_LOWER));
    let t = upper_operator(&sys.frame, &sys.b).unwrap();
    check_table(
        &t,
        &[
            ("0", "0"),
            ("1", "1"),
            ("l", "0"),
            ("l'", "n"),
            ("r", "0"),
            ("r'", "n"),
            ("n", "n"),
            ("n'", "l"),
            ("f", "0"),
            ("f'", "1"),
            ("b", "l"),
            ("b'", "n"),
        ],
    );
    let report = recoverability(&sys.frame, &sys.a, &sys.b).unwrap();
    assert!(report.upper_recovered && report.lower_recovered);

    let transfer = transfer_check(&sys.frame, &sys.a, &sys.b).unwrap();
    assert!(transfer.upper_image_in_a && transfer.lower_image_in_b);
    assert!(transfer.upper_transfer_applies() && transfer.consistent());

    let up = uniform_witness_upper(&sys.frame, &sys.b).unwrap();
    let low = uniform_witness_lower(&sys.frame, &sys.a).unwrap();
    assert!(up.certified() && low.certified());
}

#[test]
fn first_relation_witnesses_and_transfer() {
    let sys = fixture("firefly.system");
    let low = uniform_witness_lower(&sys.frame, &sys.a).unwrap();
    assert_eq!(low.outcomes[1], WitnessOutcome::Missing);
    let transfer = transfer_check(&sys.frame, &sys.a, &sys.b).unwrap();
    assert!(!transfer.upper_image_in_a);
    assert!(!transfer.upper_transfer_applies());
    assert!(transfer.consistent());

    let full = sys.with_relation(Relation::full(5)).unwrap();
    let low = uniform_witness_lower(&full.frame, &full.a).unwrap();
    assert!(low.outcomes.iter().all(|o| *o == WitnessOutcome::Vacuous));
}

#[test]
fn third_relation_tables() {
    let sys = fixture("firefly3.system");
    let t = upper_operator(&sys.frame, &sys.b).unwrap();
    check_table(
        &t,
        &[
            ("0", "0"),
            ("1", "1"),
            ("l", "(1,0,0,0,0)"),
            // the same definition-following correction as for the first relation
            ("l'", "(0,1,0,1,1)"),
            ("r", "(0,1,0,0,0)"),
            ("r'", "(1,0,0,0,0)"),
            ("n", "0"),
            ("n'", "(1,1,1,0,0)"),
            ("f", "0"),
            ("f'", "(1,1,0,1,1)"),
            ("b", "l"),
            ("b'", "0"),
        ],
    );
    let p = lower_operator(&sys.frame, &sys.a).unwrap();
    check_table(
        &p,
        &[
            ("0", "0"),
            ("1", "(0,1,1,1,1)"),
            ("l", "b"),
            ("l'", "(0,1,1,1,1)"),
            ("r", "(0,1,1,1,1)"),
            ("r'", "f'"),
            ("n", "(0,0,1,0,1)"),
            ("n'", "(0,1,1,1,1)"),
            ("f", "f'"),
            ("f'", "(0,1,1,1,1)"),
            ("b", "(0,1,1,1,0)"),
            ("b'", "f'"),
        ],
    );
    assert_eq!(adjunction_holds(&p, &t).unwrap(), None);
    assert_eq!(induced_upper(&t), relation(&sys, R3));
    assert_eq!(induced_lower(&p), relation(&sys, R4));

    let up = uniform_witness_upper(&sys.frame, &sys.b).unwrap();
    assert_eq!(up.outcomes[0], WitnessOutcome::Missing);
}

#[test]
fn third_relation_derived_operators() {
    let sys = fixture("firefly3.system");
    let at = |pairs: &[(u8, u8)]| sys.with_relation(relation(&sys, pairs)).unwrap();

    let s3 = at(R3);
    let p3 = lower_operator(&s3.frame, &s3.a).unwrap();
    let p_expected = [
        ("0", "0"),
        ("1", "1"),
        ("l", "b"),
        ("l'", "1"),
        ("r", "1"),
        ("r'", "f'"),
        ("n", "(0,0,1,0,1)"),
        ("n'", "1"),
        ("f", "f'"),
        ("f'", "1"),
        ("b", "n'"),
        ("b'", "f'"),
    ];
    check_table(&p3, &p_expected);
    let t = upper_operator(&sys.frame, &sys.b).unwrap();
    assert_eq!(upper_operator(&s3.frame, &s3.b).unwrap(), t);

    let s4 = at(R4);
    let t4 = upper_operator(&s4.frame, &s4.b).unwrap();
    check_table(
        &t4,
        &[
            ("0", "0"),
            ("1", "1"),
            ("l", "0"),
            // s5's successors are s3 and s5, where l' is 1
            ("l'", "n"),
            ("r", "0"),
            ("r'", "0"),
            ("n", "0"),
            ("n'", "(1,1,1,0,0)"),
            ("f", "0"),
            ("f'", "(1,1,0,1,1)"),
            ("b", "l"),
            ("b'", "0"),
        ],
    );
    assert!(t4.pointwise_leq(&t) && t4 != t);
    // T_R ⊑ T_{R4} in the reversed order on upper operators
    assert_eq!(operator_compare(&t, &t4).unwrap(), OperatorOrder::Below);
    assert_eq!(induced_upper(&t4), relation(&sys, R5));

    let s5 = at(R5);
    let p5 = lower_operator(&s5.frame, &s5.a).unwrap();
    check_table(&p5, &p_expected);
    assert_eq!(operator_compare(&p3, &p5).unwrap(), OperatorOrder::Equal);
    assert_eq!(upper_operator(&s5.frame, &s5.b).unwrap(), t4);
    assert_eq!(induced_lower(&p5), relation(&sys, R5));
}

#[test]
fn third_relation_iterations() {
    let sys = fixture("firefly3.system");
    let (a, b) = (&sys.a, &sys.b);
    assert_eq!(step(&sys.frame, a, b, StepKind::Upper).unwrap(), relation(&sys, R3));
    assert_eq!(step(&sys.frame, a, b, StepKind::Lower).unwrap(), relation(&sys, R4));

    let upper_first = iterate(&sys.frame, a, b, Schedule::Alternating { first: StepKind::Upper }, 27).unwrap();
    assert!(upper_first.converged);
    let chain: Vec<Relation> = upper_first.chain().into_iter().cloned().collect();
    assert_eq!(chain, vec![relation(&sys, R), relation(&sys, R3), relation(&sys, R5)]);
    let added = relation(&sys, R5).difference(&relation(&sys, R3));
    assert_eq!(added, relation(&sys, &[(1, 3), (2, 2), (4, 2)]));

    let lower_first = iterate(&sys.frame, a, b, Schedule::Alternating { first: StepKind::Lower }, 27).unwrap();
    assert!(lower_first.converged);
    let chain: Vec<Relation> = lower_first.chain().into_iter().cloned().collect();
    assert_eq!(chain, vec![relation(&sys, R), relation(&sys, R4), relation(&sys, R5)]);
    assert_eq!(lower_first.productive_steps(), 2);
    assert_eq!(lower_first.steps_taken, 4);
    assert_eq!(upper_first.final_relation(), lower_first.final_relation());
}

#[test]
fn first_relation_lower_only_iteration() {
    let sys = fixture("firefly.system");
    let trace = iterate(&sys.frame, &sys.a, &sys.b, Schedule::LowerOnly, 10).unwrap();
    assert!(trace.converged);
    assert_eq!(
        trace.relations,
        vec![relation(&sys, R1), relation(&sys, R1_LOWER), relation(&sys, R1_LOWER)]
    );
}

#[test]
fn empty_relation_is_recovered() {
    for name in ["firefly.system", "firefly3.system"] {
        let sys = fixture(name).with_relation(Relation::empty(5)).unwrap();
        let report = recoverability(&sys.frame, &sys.a, &sys.b).unwrap();
        assert!(report.upper_recovered && report.lower_recovered);
    }
}
