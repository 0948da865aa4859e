//! Exact decision procedures for ideals `nZ` of the integers.
//!
//! Membership of `ab` and `sa` in `nZ` and of `sb` in `rad(n)Z` depends only
//! on residues mod `n`, and `s` only through its residue, so the infinite
//! quantifiers reduce to residues `0..n` and the residues attained by `S`.
//! For fixed `s` the pairs collapse further: `ab ≡ 0 (mod n)` means `b` is a
//! multiple of `n / gcd(a, n)`, and whether some `a` with `gcd(a, n) = g`
//! has `sa ≢ 0` is decided by `a = g`. Hence `s` works iff every proper
//! divisor `g` of `n` with `sg ≢ 0 (mod n)` has `s(n/g) ≡ 0 (mod t)`, where
//! `t` is `rad(n)` (S-primary) or `n` (S-prime), and the smallest failing `g`
//! with `b = n/g` is the lexicographically first violating pair.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{
    IrreducibilityCertificate, IrreducibilityCounterexample, Refutation, SFiniteCertificate,
    SPrimaryCertificate, Universe,
};
use crate::error::{Error, Result};
use crate::ideal::{zz, Ideal, MultiplicativeSet, ResidueClasses};
use crate::ring::{Ring, RingElement};

/// Largest modulus whose residues are enumerated.
pub const RESIDUE_LIMIT: u64 = 1 << 20;

fn modulus(q: &Ideal) -> Result<u64> {
    let n = q.generator().expect("ideal of the integers");
    n.to_u64()
        .filter(|&n| n <= RESIDUE_LIMIT)
        .ok_or_else(|| Error::Unsupported(format!("residue enumeration modulo {n}")))
}

fn int(x: u64) -> RingElement {
    RingElement::Integer(BigInt::from(x))
}

fn domain_universe() -> Universe {
    Universe {
        description: "Z is a domain: ab = 0 forces a = 0".into(),
        candidates: 1,
    }
}

/// First `(a, b)` violating the condition for the residue `s`.
fn violation(n: u64, t: u64, divisors: &[u64], s: u64) -> Option<(u64, u64)> {
    divisors
        .iter()
        .filter(|&&g| g != n)
        .find(|&&g| {
            (s as u128 * g as u128) % n as u128 != 0 && (s as u128 * (n / g) as u128) % t as u128 != 0
        })
        .map(|&g| (g, n / g))
}

pub(super) fn s_primary(q: &Ideal, target: &Ideal, s: &MultiplicativeSet) -> Result<SPrimaryCertificate> {
    if q.is_zero() {
        return Ok(SPrimaryCertificate {
            verdict: true,
            witness: Some(int(1)),
            counterexample: None,
            refutations: vec![],
            universe: domain_universe(),
        });
    }
    let n = modulus(q)?;
    let t = target.generator().and_then(|t| t.to_u64()).expect("target divides into u64");
    let divisors = zz::divisors_u64(n);
    let classes = ResidueClasses::of(s.repr(), n)?;
    let mut refutations = Vec::new();
    let mut witness = None;
    for (res, rep) in &classes.classes {
        match violation(n, t, &divisors, *res) {
            Some((a, b)) => refutations.push(Refutation {
                s: RingElement::Integer(rep.clone()),
                a: int(a),
                b: int(b),
            }),
            None => {
                witness = Some(RingElement::Integer(rep.clone()));
                break;
            }
        }
    }
    let tried = refutations.len() + usize::from(witness.is_some());
    Ok(SPrimaryCertificate {
        verdict: witness.is_some(),
        counterexample: match witness {
            Some(_) => None,
            None => refutations.first().map(|f| (f.a.clone(), f.b.clone())),
        },
        witness,
        refutations,
        universe: Universe {
            description: format!(
                "residues a, b mod {n}; s over {} residue classes of S mod {n}",
                classes.classes.len()
            ),
            candidates: tried as u64,
        },
    })
}

/// For an actual element `s`, the first residue pair `(a, b)` with
/// `ab in Q`, `sa ∉ Q`, `sb ∉ rad(Q)`, or `None` when `s` is a witness.
pub fn s_primary_witness_fails(q: &Ideal, s: &RingElement) -> Result<Option<(BigInt, BigInt)>> {
    let s = q.ring().integer_of(s)?;
    if q.is_zero() {
        return Ok(None);
    }
    let n = modulus(q)?;
    let t = zz::radical_u64(n);
    let res = s.mod_floor(&BigInt::from(n)).to_u64().expect("residue fits");
    Ok(violation(n, t, &zz::divisors_u64(n), res).map(|(a, b)| (BigInt::from(a), BigInt::from(b))))
}

pub(super) fn irreducible(q: &Ideal) -> bool {
    let n = q.generator().expect("ideal of the integers");
    n.is_zero() || zz::factorize(n).len() == 1
}

/// `I = aZ`, `J = bZ` with `Q ⊆ I ∩ J` range over divisors of `n`. The
/// hypothesis `n | s·lcm(a, b)` and the conclusion `n | ss'a` depend on `s`
/// mod `n`; `n | ss'a` asks for some `s'` divisible by `d = n / gcd(n, sa)`,
/// and since `d | n` that is a property of the residue of `s'` mod `n`.
pub(super) fn s_irreducible(q: &Ideal, s: &MultiplicativeSet) -> Result<IrreducibilityCertificate> {
    if q.is_zero() {
        return Ok(IrreducibilityCertificate {
            verdict: true,
            counterexample: None,
            universe: domain_universe(),
        });
    }
    let n = modulus(q)?;
    let divisors = zz::divisors_u64(n);
    let classes = ResidueClasses::of(s.repr(), n)?;
    let reachable = |d: u64| classes.classes.iter().any(|(r, _)| r % d == 0);
    let divisible: std::collections::HashMap<u64, bool> =
        divisors.iter().map(|&d| (d, reachable(d))).collect();
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % n as u128) as u64;
    let needs = |s: u64, a: u64| n / n.gcd(&mulmod(s, a));
    let proper: Vec<u64> = divisors.iter().copied().filter(|&d| d != n).collect();
    let mut counterexample = None;
    'search: for (k, &a) in proper.iter().enumerate() {
        for &b in &proper[k + 1..] {
            if a % b == 0 || b % a == 0 {
                continue;
            }
            let l = a.lcm(&b) % n;
            for (res, rep) in &classes.classes {
                if mulmod(*res, l) != 0 {
                    continue;
                }
                if !divisible[&needs(*res, a)] && !divisible[&needs(*res, b)] {
                    counterexample = Some(IrreducibilityCounterexample {
                        i: Ideal::integers(a),
                        j: Ideal::integers(b),
                        s: RingElement::Integer(rep.clone()),
                    });
                    break 'search;
                }
            }
        }
    }
    Ok(IrreducibilityCertificate {
        verdict: counterexample.is_none(),
        counterexample,
        universe: Universe {
            description: format!(
                "{} divisor ideals of {n}; s, s' over {} residue classes mod {n}",
                divisors.len(),
                classes.classes.len()
            ),
            candidates: classes.classes.len() as u64,
        },
    })
}

pub(super) fn trivially_finite(i: &Ideal, description: &str) -> SFiniteCertificate {
    SFiniteCertificate {
        verdict: true,
        s: Some(Ring::Integers.one()),
        j: Some(i.clone()),
        n: None,
        universe: Universe {
            description: format!("principal ideal: {description}"),
            candidates: 1,
        },
    }
}

/// `x^k in fZ` for all `x in mZ` iff `f | m^k`.
pub(super) fn sft_exponent(i: &Ideal, f: &Ideal) -> Option<u64> {
    let m = i.generator().expect("ideal of the integers");
    let f = f.generator().expect("ideal of the integers");
    if m.is_zero() {
        return Some(1);
    }
    if f.is_zero() {
        return None;
    }
    let mut k = 1u64;
    for (p, e) in zz::factorize(f) {
        let v = zz::valuation(m, p.to_u64()?);
        if v == 0 {
            return None;
        }
        k = k.max(u64::from(e.div_ceil(v)));
    }
    Some(k)
}
