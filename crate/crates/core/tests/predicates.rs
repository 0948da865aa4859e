use lasker_core::ideal::{self, ideal_from_payloads, Ideal, MultiplicativeSet};
use lasker_core::predicates::{self, recheck};
use lasker_core::ring::{construct_ring, Ring, RingSpec};
use lasker_core::Error;
use num_bigint::BigInt;
use serde_json::json;

fn zmod(n: u64) -> Ring {
    construct_ring(&RingSpec::zmod(n)).unwrap()
}

fn ideal(r: &Ring, gens: &[i64]) -> Ideal {
    ideal_from_payloads(r, &gens.iter().map(|&g| json!(g)).collect::<Vec<_>>()).unwrap()
}

fn boolean(n: usize) -> Ring {
    construct_ring(&RingSpec::product(vec![RingSpec::zmod(2); n])).unwrap()
}

fn e1(n: usize) -> serde_json::Value {
    json!((0..n).map(|k| i64::from(k == 0)).collect::<Vec<_>>())
}

/// Brute-force primary check on Z/n: pairs of residues, radical by powers.
fn primary_oracle(n: u64, q: u64) -> bool {
    let in_q = |x: u64| x % q == 0;
    let in_rad = |x: u64| (1..=n).any(|k| in_q((0..k).fold(1u64, |acc, _| acc * x % n)));
    (0..n).all(|a| (0..n).all(|b| !in_q(a * b % n) || in_q(a) || in_rad(b)))
}

#[test]
fn nonnil_examples() {
    let r4 = zmod(4);
    assert!(!predicates::is_nonnil(&ideal(&r4, &[2])));
    let r12 = zmod(12);
    assert!(predicates::is_nonnil(&ideal(&r12, &[3])));
    assert!(predicates::is_nonnil(&Ideal::integers(7u32)));
    assert!(!predicates::is_nonnil(&Ideal::integers(0u32)));
}

#[test]
fn classical_primary_and_prime() {
    let r = zmod(12);
    assert!(predicates::is_primary(&ideal(&r, &[4])).unwrap());
    assert!(primary_oracle(12, 4));
    assert!(!predicates::is_primary(&Ideal::integers(6u32)).unwrap());
    assert!(predicates::is_prime_ideal(&Ideal::integers(0u32)).unwrap());
    assert!(predicates::is_prime_ideal(&Ideal::integers(7u32)).unwrap());
    assert!(!predicates::is_prime_ideal(&Ideal::integers(9u32)).unwrap());
    assert!(predicates::is_primary(&Ideal::integers(9u32)).unwrap());
    assert!(matches!(
        predicates::is_primary(&ideal::unit_ideal(&r)),
        Err(Error::ImproperIdeal)
    ));
}

#[test]
fn primary_matches_oracle_on_small_moduli() {
    for n in 2..=30u64 {
        let r = zmod(n);
        for d in (2..=n).filter(|d| n % d == 0) {
            let q = ideal(&r, &[d as i64]);
            assert_eq!(predicates::is_primary(&q).unwrap(), primary_oracle(n, d), "({d}) in Z/{n}");
        }
        assert_eq!(
            predicates::is_primary(&Ideal::integers(n)).unwrap(),
            primary_oracle(n, n),
            "{n}Z"
        );
    }
}

#[test]
fn six_z_is_s_primary_outside_three() {
    let s = MultiplicativeSet::complement_of_prime(3).unwrap();
    let q = Ideal::integers(6u32);
    let cert = predicates::is_s_primary(&q, &s).unwrap();
    assert!(cert.verdict);
    let w = cert.witness.clone().unwrap();
    assert_eq!(w.as_integer().unwrap() % 6, BigInt::from(2));
    recheck::s_primary(&q, &s, &cert).unwrap();
    let prime = predicates::is_s_prime(&Ideal::integers(3u32), &s).unwrap();
    assert!(prime.verdict);
    assert_eq!(prime.witness, Some(Ring::Integers.one()));
}

#[test]
fn meeting_s_is_an_error() {
    let s = MultiplicativeSet::complement_of_prime(3).unwrap();
    assert!(matches!(
        predicates::is_s_primary(&Ideal::integers(4u32), &s),
        Err(Error::MeetsMultiplicativeSet)
    ));
    assert!(matches!(
        predicates::is_s_prime(&Ideal::integers(10u32), &s),
        Err(Error::MeetsMultiplicativeSet)
    ));
}

#[test]
fn boolean_zero_ideal() {
    for n in 2..=4 {
        let r = boolean(n);
        let s = MultiplicativeSet::closure_of_payloads(&r, &[e1(n)]).unwrap();
        assert_eq!(s.len(), Some(2));
        let zero = ideal::zero_ideal(&r);
        let cert = predicates::is_s_primary(&zero, &s).unwrap();
        assert!(cert.verdict);
        assert_eq!(r.payload(cert.witness.as_ref().unwrap()).unwrap(), e1(n));
        recheck::s_primary(&zero, &s, &cert).unwrap();
        let prime = predicates::is_s_prime(&zero, &s).unwrap();
        assert!(prime.verdict);
        recheck::s_prime(&zero, &s, &prime).unwrap();
        assert!(!predicates::is_primary(&zero).unwrap());
    }
}

#[test]
fn refutations_cover_all_candidates() {
    let r = zmod(12);
    let s = MultiplicativeSet::closure_of_payloads(&r, &[json!(5)]).unwrap();
    let zero = ideal::zero_ideal(&r);
    let cert = predicates::is_s_primary(&zero, &s).unwrap();
    assert!(!cert.verdict);
    assert_eq!(cert.refutations.len(), 2);
    assert!(cert.counterexample.is_some());
    recheck::s_primary(&zero, &s, &cert).unwrap();
    let z = Ideal::integers(12u32);
    let t = MultiplicativeSet::prime_set(&[5], true).unwrap();
    let cert = predicates::is_s_primary(&z, &t).unwrap();
    assert!(!cert.verdict);
    recheck::s_primary(&z, &t, &cert).unwrap();
}

#[test]
fn tampered_certificates_are_rejected() {
    let s = MultiplicativeSet::complement_of_prime(3).unwrap();
    let q = Ideal::integers(6u32);
    let mut cert = predicates::is_s_primary(&q, &s).unwrap();
    cert.witness = Some(Ring::Integers.one());
    assert!(recheck::s_primary(&q, &s, &cert).is_err());
    cert.witness = Some(Ring::Integers.from_i64(3).unwrap());
    assert!(recheck::s_primary(&q, &s, &cert).is_err());

    let r = zmod(12);
    let one = MultiplicativeSet::trivial(&r);
    let zero = ideal::zero_ideal(&r);
    let mut cert = predicates::is_s_primary(&zero, &one).unwrap();
    cert.refutations[0].b = r.zero();
    assert!(recheck::s_primary(&zero, &one, &cert).is_err());
}

#[test]
fn irreducibility_examples() {
    assert!(!predicates::is_irreducible(&Ideal::integers(6u32)).unwrap());
    assert!(predicates::is_irreducible(&Ideal::integers(4u32)).unwrap());
    assert!(predicates::is_irreducible(&Ideal::integers(0u32)).unwrap());
    let s = MultiplicativeSet::complement_of_prime(3).unwrap();
    let six = Ideal::integers(6u32);
    let cert = predicates::is_s_irreducible(&six, &s).unwrap();
    assert!(cert.verdict);
    recheck::s_irreducible(&six, &s, &cert).unwrap();

    let r = zmod(12);
    let one = MultiplicativeSet::trivial(&r);
    let zero = ideal::zero_ideal(&r);
    assert!(!predicates::is_irreducible(&zero).unwrap());
    let cert = predicates::is_s_irreducible(&zero, &one).unwrap();
    assert!(!cert.verdict);
    let cx = cert.counterexample.clone().unwrap();
    assert_eq!(ideal::ideal_intersect(&cx.i, &cx.j).unwrap(), zero);
    recheck::s_irreducible(&zero, &one, &cert).unwrap();
}

#[test]
fn maximal_ideals_are_irreducible() {
    for n in [12u64, 30, 36] {
        let r = zmod(n);
        let all = ideal::enumerate_ideals(&r).unwrap();
        let unit = ideal::unit_ideal(&r);
        for m in all.iter().filter(|m| m.is_proper()) {
            let maximal = all
                .iter()
                .all(|j| !m.is_subset(j).unwrap() || *j == *m || *j == unit);
            if maximal {
                assert!(predicates::is_irreducible(m).unwrap());
            }
        }
    }
}

#[test]
fn integer_s_irreducible_agrees_with_recheck() {
    let sets = [
        MultiplicativeSet::complement_of_prime(2).unwrap(),
        MultiplicativeSet::complement_of_prime(3).unwrap(),
        MultiplicativeSet::prime_set(&[], false).unwrap(),
        MultiplicativeSet::prime_set(&[2], false).unwrap(),
        MultiplicativeSet::prime_set(&[3, 5], true).unwrap(),
    ];
    for s in &sets {
        for n in 2..=90u64 {
            let q = Ideal::integers(n);
            if !ideal::disjoint_from(&q, s).unwrap() {
                continue;
            }
            let cert = predicates::is_s_irreducible(&q, s).unwrap();
            recheck::s_irreducible(&q, s, &cert).unwrap_or_else(|e| panic!("{n}Z, {}: {e}", s.describe()));
            let primary = predicates::is_s_primary(&q, s).unwrap();
            recheck::s_primary(&q, s, &primary).unwrap();
            if cert.verdict {
                assert!(primary.verdict, "{n}Z S-irreducible but not S-primary");
            }
        }
    }
}

#[test]
fn degeneration_with_trivial_s() {
    let rings = [
        zmod(24),
        zmod(36),
        construct_ring(&RingSpec::product([RingSpec::zmod(4), RingSpec::zmod(2)])).unwrap(),
        construct_ring(&RingSpec::idealization(RingSpec::zmod(4), 2, None)).unwrap(),
    ];
    for r in &rings {
        let one = MultiplicativeSet::trivial(r);
        for q in ideal::enumerate_ideals(r).unwrap().iter().filter(|q| q.is_proper()) {
            let sp = predicates::is_s_primary(q, &one).unwrap();
            let prime = predicates::is_s_prime(q, &one).unwrap();
            let irr = predicates::is_s_irreducible(q, &one).unwrap();
            recheck::s_primary(q, &one, &sp).unwrap();
            recheck::s_prime(q, &one, &prime).unwrap();
            recheck::s_irreducible(q, &one, &irr).unwrap();
            assert_eq!(irr.verdict, predicates::is_irreducible(q).unwrap(), "{q:?}");
            if sp.verdict {
                let rad = ideal::radical(q);
                assert!(predicates::is_s_prime(&rad, &one).unwrap().verdict);
            }
        }
    }
}

#[test]
fn monotone_in_s() {
    let r = zmod(60);
    let small = MultiplicativeSet::trivial(&r);
    let large = MultiplicativeSet::closure_of_payloads(&r, &[json!(7), json!(11)]).unwrap();
    for q in ideal::enumerate_ideals(&r).unwrap().iter().filter(|q| q.is_proper()) {
        if !ideal::disjoint_from(q, &large).unwrap() {
            continue;
        }
        if predicates::is_s_primary(q, &small).unwrap().verdict {
            assert!(predicates::is_s_primary(q, &large).unwrap().verdict);
        }
    }
}

#[test]
fn finiteness_certificates() {
    let r = zmod(8);
    let one = MultiplicativeSet::trivial(&r);
    let two = ideal(&r, &[2]);
    let cert = predicates::is_s_finite(&two, &one).unwrap();
    assert_eq!(cert.j.as_ref(), Some(&two));
    assert_eq!(cert.s, Some(r.one()));
    recheck::s_finite(&two, &one, &cert).unwrap();

    let sft = predicates::is_sft(&two).unwrap();
    assert_eq!((sft.n, sft.j.as_ref()), (Some(1), Some(&two)));
    recheck::sft(&two, None, &sft).unwrap();
    let s_sft = predicates::is_s_sft(&two, &one).unwrap();
    recheck::sft(&two, Some(&one), &s_sft).unwrap();
    assert_eq!(predicates::sft_exponent(&two, &ideal(&r, &[4])).unwrap(), Some(2));
    assert_eq!(predicates::sft_exponent(&two, &ideal::zero_ideal(&r)).unwrap(), Some(3));

    let twelve = Ideal::integers(12u32);
    let cert = predicates::is_sft(&twelve).unwrap();
    assert_eq!((cert.n, cert.j.as_ref()), (Some(1), Some(&twelve)));
    recheck::sft(&twelve, None, &cert).unwrap();
    assert_eq!(predicates::sft_exponent(&Ideal::integers(6u32), &Ideal::integers(72u32)).unwrap(), Some(3));
    assert_eq!(predicates::sft_exponent(&Ideal::integers(2u32), &Ideal::integers(6u32)).unwrap(), None);

    let s3 = MultiplicativeSet::complement_of_prime(3).unwrap();
    let cert = predicates::is_s_finite(&twelve, &s3).unwrap();
    recheck::s_finite(&twelve, &s3, &cert).unwrap();
}

#[test]
fn radically_s_finite_examples() {
    let s3 = MultiplicativeSet::complement_of_prime(3).unwrap();
    let five = Ideal::integers(5u32);
    let cert = predicates::is_radically_s_finite(&five, &s3).unwrap();
    assert!(cert.verdict);
    recheck::radically_s_finite(&five, &s3, &cert).unwrap();
    let mut alt = cert.clone();
    alt.j = Some(Ideal::integers(25u32));
    recheck::radically_s_finite(&five, &s3, &alt).unwrap();
    alt.j = Some(Ideal::integers(10u32));
    assert!(recheck::radically_s_finite(&five, &s3, &alt).is_err());

    let r = zmod(12);
    let s = MultiplicativeSet::closure_of_payloads(&r, &[json!(5)]).unwrap();
    for i in ideal::enumerate_ideals(&r).unwrap() {
        let cert = predicates::is_radically_s_finite(&i, &s).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.j.as_ref(), Some(&i));
        recheck::radically_s_finite(&i, &s, &cert).unwrap();
    }
}

#[test]
fn spectrum_of_z12() {
    let r = zmod(12);
    let one = MultiplicativeSet::trivial(&r);
    let report = predicates::has_s_noetherian_spectrum(&r, &one).unwrap();
    assert!(report.verdict);
    let primes: Vec<Ideal> = report.primes.iter().map(|(p, _)| p.clone()).collect();
    // canonical order lists the smaller ideal (3) first
    assert_eq!(primes, vec![ideal(&r, &[3]), ideal(&r, &[2])]);
    for (p, cert) in &report.primes {
        recheck::radically_s_finite(p, &one, cert).unwrap();
    }
    assert!(predicates::has_s_noetherian_spectrum(&Ring::Integers, &MultiplicativeSet::complement_of_prime(3).unwrap()).is_err());
}
