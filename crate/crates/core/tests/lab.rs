use lasker_core::doc::mset_to_doc;
use lasker_core::lab::{
    generate_corpus, rerun, run_suite, Corpus, CorpusSpec, LabConfig, Mutation, Outcome, Property, Status, Suite,
    SuiteReport,
};
use lasker_core::lab::checks::DividedHypothesis;
use lasker_core::{MultiplicativeSet, RingSpec};

fn small_spec() -> CorpusSpec {
    CorpusSpec {
        moduli: (2..=16).collect(),
        product_max_size: 12,
        idealizations: vec![(4, 2)],
        poly_quotients: vec![(2, vec![0, 0, 1])],
        integer_bound: 60,
        integer_samples: 3,
        ..CorpusSpec::default()
    }
}

fn only(spec: RingSpec) -> Corpus {
    let mut corpus = generate_corpus(&CorpusSpec::empty()).unwrap();
    let full = generate_corpus(&CorpusSpec::default()).unwrap();
    corpus.entries = full.entries.into_iter().filter(|e| e.spec == spec).collect();
    assert_eq!(corpus.entries.len(), 1, "{spec:?} not in the default corpus");
    corpus
}

fn without_time(mut r: SuiteReport) -> SuiteReport {
    r.wall_time_ms = 0;
    r
}

#[test]
fn default_corpus_size() {
    let corpus = generate_corpus(&CorpusSpec::default()).unwrap();
    assert!(corpus.entries.len() >= 40);
    assert!(corpus.pair_count() >= 150);
    assert!(corpus.skipped.is_empty());
    for e in &corpus.entries {
        assert!(e.ring.finite().unwrap().verify_axioms().is_ok());
        assert!(e.msets.iter().all(|s| s.ring().same_ring(&e.ring)));
    }
}

#[test]
fn size_cap_four() {
    let spec = CorpusSpec {
        size_cap: 4,
        ..CorpusSpec::default()
    };
    let corpus = generate_corpus(&spec).unwrap();
    let kept: Vec<RingSpec> = corpus.entries.iter().map(|e| e.spec.clone()).collect();
    assert_eq!(
        kept,
        vec![
            RingSpec::zmod(2),
            RingSpec::zmod(3),
            RingSpec::zmod(4),
            RingSpec::product([RingSpec::zmod(2), RingSpec::zmod(2)]),
        ]
    );
}

#[test]
fn corpus_is_deterministic() {
    let a = generate_corpus(&CorpusSpec::default()).unwrap();
    let b = generate_corpus(&CorpusSpec::default()).unwrap();
    let view = |c: &Corpus| {
        c.entries
            .iter()
            .map(|e| (e.spec.clone(), e.msets.iter().map(mset_to_doc).collect::<Vec<_>>()))
            .collect::<Vec<_>>()
    };
    assert_eq!(view(&a), view(&b));
    let moduli = |c: &Corpus| c.integers.iter().map(|i| i.moduli.clone()).collect::<Vec<_>>();
    assert_eq!(moduli(&a), moduli(&b));
    let reseeded = generate_corpus(&CorpusSpec {
        seed: 7,
        ..CorpusSpec::default()
    })
    .unwrap();
    assert_ne!(moduli(&a), moduli(&reseeded));
}

#[test]
fn empty_corpus_is_vacuous() {
    let corpus = generate_corpus(&CorpusSpec::empty()).unwrap();
    for suite in Suite::ALL {
        let r = run_suite(suite, &corpus, &LabConfig::default());
        assert_eq!(r.instances, 0);
        assert_eq!(r.status, Status::Vacuous, "{suite:?}");
        assert_eq!(r.status.exit_code(), 2);
    }
}

#[test]
fn small_corpus_passes_and_reproduces() {
    let corpus = generate_corpus(&small_spec()).unwrap();
    for suite in Suite::ALL {
        let a = run_suite(suite, &corpus, &LabConfig::default());
        assert_eq!(a.status, Status::Pass, "{}", a.text());
        assert!(a.instances > 0);
        let b = run_suite(suite, &corpus, &LabConfig::default());
        assert_eq!(without_time(a), without_time(b));
    }
}

#[test]
fn mutation_is_caught_and_reruns() {
    let corpus = generate_corpus(&small_spec()).unwrap();
    let mutated = LabConfig {
        mutation: Mutation::NegateSPrimary,
    };
    let r = run_suite(Suite::Intersection, &corpus, &mutated);
    assert_eq!(r.status, Status::Fail);
    assert!(r.failures > 0);
    assert!(!r.counterexamples.is_empty());
    for cx in &r.counterexamples {
        let json = serde_json::to_string(cx).unwrap();
        let back = serde_json::from_str(&json).unwrap();
        assert_eq!(cx, &back);
        assert!(matches!(rerun(&back, &mutated).unwrap(), Outcome::Fails(_)));
        assert_ne!(rerun(&back, &LabConfig::default()).unwrap(), rerun(&back, &mutated).unwrap());
    }
    let main = run_suite(Suite::MainTheorem, &corpus, &mutated);
    assert_eq!(main.status, Status::Fail);
}

#[test]
fn report_json_round_trip() {
    let corpus = generate_corpus(&small_spec()).unwrap();
    let r = run_suite(Suite::NilPrimary, &corpus, &LabConfig::default());
    let back: SuiteReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(r, back);
    assert!(r.text().contains("0 counterexamples"));
}

#[test]
fn zmod8_nil_ideals() {
    let corpus = only(RingSpec::zmod(8));
    let r = run_suite(Suite::NilPrimary, &corpus, &LabConfig::default());
    assert_eq!(r.status, Status::Pass);
    // (0), (4), (2) for each of the corpus sets: {1}, {1,3}, {1,5}, {1,7}, units
    let sets = corpus.entries[0].msets.len() as u64;
    assert_eq!(r.clauses[&Property::NilPrimary], 3 * sets);
}

#[test]
fn zmod4_divided_converse() {
    let corpus = only(RingSpec::zmod(4));
    let r = run_suite(Suite::QuotientTransfer, &corpus, &LabConfig::default());
    assert_eq!(r.status, Status::Pass);
    // local with nil maximal ideal: the hypothesis holds and the
    // conclusion quantifies over no ideal
    let e = &corpus.entries[0];
    let trivial = MultiplicativeSet::trivial(&e.ring);
    assert!(DividedHypothesis::derive(&e.ring, &trivial).unwrap().holds);
    assert!(!r.clauses.contains_key(&Property::QuotientDivided));
}

#[test]
fn idealization_exercises_divided_converse() {
    let corpus = only(RingSpec::idealization(RingSpec::zmod(4), 2, None));
    let r = run_suite(Suite::QuotientTransfer, &corpus, &LabConfig::default());
    assert_eq!(r.status, Status::Pass);
    // local with nil maximal ideal: the hypothesis holds and the
    // conclusion quantifies over no ideal
    let e = &corpus.entries[0];
    let trivial = MultiplicativeSet::trivial(&e.ring);
    assert!(DividedHypothesis::derive(&e.ring, &trivial).unwrap().holds);
    assert!(!r.clauses.contains_key(&Property::QuotientDivided));
}

#[test]
fn reduced_ring_quotient_by_zero_only() {
    let corpus = only(RingSpec::zmod(6));
    let r = run_suite(Suite::QuotientTransfer, &corpus, &LabConfig::default());
    assert_eq!(r.status, Status::Pass);
    // Nil = (0), so clause (a) sees the nonzero ideals and clause (b)
    // additionally sees (0) once per set
    let sets = corpus.entries[0].msets.len() as u64;
    let a = r.clauses.get(&Property::QuotientNil).copied().unwrap_or(0);
    assert_eq!(a + sets, r.clauses[&Property::QuotientReduced]);
}

#[test]
fn divided_converse_on_reduced_ring() {
    // Nil = (0) is divided
    let corpus = only(RingSpec::zmod(6));
    let r = run_suite(Suite::QuotientTransfer, &corpus, &LabConfig::default());
    assert_eq!(r.status, Status::Pass);
    assert!(r.clauses[&Property::QuotientDivided] > 0);
}

#[test]
fn fields_are_flagged_vacuous_for_main_theorem() {
    let corpus = only(RingSpec::zmod(7));
    let r = run_suite(Suite::MainTheorem, &corpus, &LabConfig::default());
    assert_eq!(r.status, Status::Vacuous);
    assert_eq!(r.vacuous_pairs.len(), corpus.pair_count());
}
