// Residue-based verdicts for nZ against direct evaluation on actual
// integers well beyond the modulus.

use lasker_core::ideal::disjoint_from;
use lasker_core::predicates::{is_s_primary, s_primary_witness_fails};
use lasker_core::{Ideal, MultiplicativeSet, Ring, RingElement};
use proptest::prelude::*;

fn rad(mut n: u64) -> u64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out *= p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out * n
    } else {
        out
    }
}

#[derive(Clone, Debug)]
enum Shape {
    Complement(u64),
    Primes(Vec<u64>),
}

impl Shape {
    fn mset(&self) -> MultiplicativeSet {
        match self {
            Shape::Complement(p) => MultiplicativeSet::complement_of_prime(*p).unwrap(),
            Shape::Primes(ps) => MultiplicativeSet::prime_set(ps, false).unwrap(),
        }
    }

    /// An actual member of S built from the raw draws.
    fn member(&self, x: u64, exps: &[u32]) -> u64 {
        match self {
            Shape::Complement(p) if x % p == 0 => x + 1,
            Shape::Complement(_) => x,
            Shape::Primes(ps) => ps.iter().zip(exps).map(|(p, &e)| p.pow(e)).product(),
        }
    }
}

fn shape() -> impl Strategy<Value = Shape> {
    prop_oneof![
        prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(Shape::Complement),
        prop::sample::subsequence(vec![2u64, 3, 5, 7], 0..=3).prop_map(Shape::Primes),
    ]
}

fn int(v: u64) -> RingElement {
    Ring::Integers.from_i64(v as i64).unwrap()
}

/// `ab in nZ`, `sa ∉ nZ`, `sb ∉ rad(n)Z` on the integers themselves.
fn violates(n: u64, s: u64, a: u64, b: u64) -> bool {
    let (n, s, a, b) = (n as u128, s as u128, a as u128, b as u128);
    (a * b) % n == 0 && (s * a) % n != 0 && (s * b) % rad(n as u64) as u128 != 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn residue_verdict_matches_direct_evaluation(
        n in 2u64..=200,
        shape in shape(),
        x in 1u64..=2000,
        exps in prop::collection::vec(0u32..4, 3),
        a in 0u64..=2000,
        k in 1u64..=10,
    ) {
        let q = Ideal::integers(n);
        let s = shape.mset();
        prop_assume!(disjoint_from(&q, &s).unwrap());
        let cert = is_s_primary(&q, &s).unwrap();
        let member = shape.member(x, &exps);
        let a = a % (10 * n) + 1;
        // b with ab in nZ
        let b = n / num_integer::gcd(n, a) * k;
        match &cert.witness {
            Some(w) => {
                let w = u64::try_from(w.as_integer().unwrap().clone()).unwrap();
                prop_assert!(!violates(n, w, a, b));
                prop_assert!(s_primary_witness_fails(&q, &int(w)).unwrap().is_none());
            }
            None => {
                let found = s_primary_witness_fails(&q, &int(member)).unwrap();
                prop_assert!(found.is_some(), "{} has no refutation for n = {}", member, n);
            }
        }
        if let Some((fa, fb)) = s_primary_witness_fails(&q, &int(member)).unwrap() {
            let fa = u64::try_from(fa).unwrap();
            let fb = u64::try_from(fb).unwrap();
            prop_assert!(violates(n, member, fa, fb));
            // the violation persists on lifts of the residues
            prop_assert!(violates(n, member, fa + n * k, fb + n * k));
        } else {
            prop_assert!(!violates(n, member, a, b));
        }
    }
}
