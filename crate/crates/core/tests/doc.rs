use lasker_core::decompose::{decompose_finite, decompose_integers};
use lasker_core::doc::*;
use lasker_core::ideal::enumerate_ideals;
use lasker_core::ring::{construct_ring, RingSpec};
use lasker_core::{Ideal, MultiplicativeSet, Ring};
use serde_json::json;

fn rings() -> Vec<Ring> {
    [
        RingSpec::zmod(12),
        RingSpec::product([RingSpec::zmod(2), RingSpec::zmod(4)]),
        RingSpec::poly_quot(2, vec![0, 0, 1]),
        RingSpec::idealization(RingSpec::zmod(4), 2, None),
    ]
    .iter()
    .map(|s| construct_ring(s).unwrap())
    .collect()
}

#[test]
fn ideals_round_trip() {
    for ring in rings() {
        for i in enumerate_ideals(&ring).unwrap() {
            let doc = ideal_to_doc(&i);
            let text = serde_json::to_string(&doc).unwrap();
            let back: IdealDoc = serde_json::from_str(&text).unwrap();
            assert_eq!(ideal_from_doc(&ring, &back).unwrap(), i, "{text}");
        }
    }
    let doc: IdealDoc = serde_json::from_value(json!({"n": 84})).unwrap();
    let i = ideal_from_doc(&Ring::Integers, &doc).unwrap();
    assert_eq!(i, Ideal::integers(84u32));
    assert_eq!(ideal_to_doc(&i), doc);
}

#[test]
fn msets_round_trip() {
    for ring in rings() {
        for doc in [json!({"gens": []}), json!({"unit_group": true})] {
            let doc: MsetDoc = serde_json::from_value(doc).unwrap();
            let s = mset_from_doc(&ring, &doc).unwrap();
            let again = mset_from_doc(&ring, &mset_to_doc(&s)).unwrap();
            assert_eq!(s.finite_elements(), again.finite_elements());
        }
    }
    for doc in [
        json!({"primes": [2, 5], "units": true}),
        json!({"primes": []}),
        json!({"complement_of_prime": 7}),
    ] {
        let parsed: MsetDoc = serde_json::from_value(doc.clone()).unwrap();
        let s = mset_from_doc(&Ring::Integers, &parsed).unwrap();
        let out = serde_json::to_value(mset_to_doc(&s)).unwrap();
        let reparsed: MsetDoc = serde_json::from_value(out).unwrap();
        assert_eq!(reparsed, parsed);
    }
}

#[test]
fn unknown_fields_are_rejected() {
    assert!(serde_json::from_value::<IdealDoc>(json!({"gens": [1], "extra": 0})).is_err());
    assert!(serde_json::from_value::<MsetDoc>(json!({"primes": [2], "colour": 1})).is_err());
    assert!(serde_json::from_value::<DecompositionDoc>(json!({"target": {"n": 6}})).is_err());
}

#[test]
fn decompositions_round_trip() {
    for ring in rings() {
        let s = MultiplicativeSet::trivial(&ring);
        for i in enumerate_ideals(&ring).unwrap().into_iter().filter(|i| i.is_proper()) {
            let Some(d) = decompose_finite(&i, &s).unwrap() else { continue };
            let doc = decomposition_to_doc(&d);
            let back: DecompositionDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
            assert_eq!(decomposition_from_doc(&ring, &s, &back).unwrap(), d);
        }
    }
    let s = MultiplicativeSet::complement_of_prime(5).unwrap();
    let d = decompose_integers(&Ideal::integers(360u32), &s).unwrap();
    let doc = decomposition_to_doc(&d);
    assert_eq!(decomposition_from_doc(&Ring::Integers, &s, &doc).unwrap(), d);
}

#[test]
fn bare_components_are_completed() {
    let ring = construct_ring(&RingSpec::zmod(12)).unwrap();
    let s = MultiplicativeSet::trivial(&ring);
    let doc: DecompositionDoc = serde_json::from_value(json!({
        "target": {"gens": [0]},
        "components": [{"Q": {"gens": [4]}}, {"Q": {"gens": [3]}}],
    }))
    .unwrap();
    let d = decomposition_from_doc(&ring, &s, &doc).unwrap();
    assert!(d.minimal.is_minimal());
    let full = decomposition_to_doc(&d);
    assert_eq!(full.components[0].p, Some(IdealDoc::Gens { gens: vec![json!(2)] }));
    assert_eq!(full.components[0].s, Some(json!(1)));
}

#[test]
fn certificates_round_trip_and_read() {
    let ring = construct_ring(&RingSpec::zmod(12)).unwrap();
    for name in PREDICATES {
        for i in enumerate_ideals(&ring).unwrap().into_iter().filter(|i| i.is_proper()) {
            let cert = run_predicate(name, &ring, Some(&i), None).unwrap();
            let back: CertificateDoc = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
            assert_eq!(back, cert);
            assert!(cert.text().starts_with(&display_name(name)), "{}", cert.text());
        }
    }
    let i = Ideal::integers(6u32);
    let s = MultiplicativeSet::complement_of_prime(3).unwrap();
    let cert = run_predicate("s-primary", &Ring::Integers, Some(&i), Some(&s)).unwrap();
    assert_eq!(cert.text(), "S-primary: YES (witness s=2)");
    assert!(run_predicate("s-primary", &ring, None, None).is_err());
    assert!(run_predicate("bogus", &ring, Some(&enumerate_ideals(&ring).unwrap()[0]), None).is_err());
}
