//! Independent verification of certificates straight from the definitions.
//!
//! Nothing here calls the searches or the ideal lattice code: finite rings
//! are checked with raw table loops and the integers by brute force over
//! residues, so a bug in a search cannot certify itself. The one shared
//! input is the list of ideals used to re-run a positive S-irreducible
//! verdict, and each listed ideal is re-validated here.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{IrreducibilityCertificate, SFiniteCertificate, SPrimaryCertificate};
use crate::ideal::{Ideal, MsetRepr, MultiplicativeSet};
use crate::ring::{FiniteRing, Ring, RingElement};

/// Largest modulus for the quadratic residue brute force.
pub const BRUTE_FORCE_LIMIT: u64 = 4000;

type Check = std::result::Result<(), String>;

fn fail<T>(msg: impl Into<String>) -> std::result::Result<T, String> {
    Err(msg.into())
}

fn members(i: &Ideal) -> Vec<bool> {
    let set = i.members().expect("finite ideal");
    (0..set.universe()).map(|x| set.contains(x)).collect()
}

fn raw_radical(r: &FiniteRing, q: &[bool]) -> Vec<bool> {
    (0..r.size())
        .map(|a| {
            let mut x = a;
            for _ in 0..=r.size() {
                if q[x] {
                    return true;
                }
                x = r.mul(x, a);
            }
            false
        })
        .collect()
}

fn index(e: &RingElement) -> usize {
    e.index().expect("finite element")
}

fn modulus(i: &Ideal) -> std::result::Result<u64, String> {
    let n = i
        .generator()
        .and_then(|n| n.to_u64())
        .ok_or("generator too large")?;
    if n > BRUTE_FORCE_LIMIT {
        return fail(format!("modulus {n} above the brute-force limit"));
    }
    Ok(n)
}

fn residue(x: &BigInt, n: u64) -> u64 {
    x.mod_floor(&BigInt::from(n)).to_u64().expect("residue")
}

fn trial_radical(n: u64) -> u64 {
    let mut rest = n;
    let mut out = 1;
    let mut d = 2;
    while d * d <= rest {
        if rest % d == 0 {
            out *= d;
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        out *= rest;
    }
    out
}

fn in_integer_set(repr: &MsetRepr, x: &BigInt) -> bool {
    match repr {
        MsetRepr::Finite { .. } => false,
        MsetRepr::PrimeSet { primes, units } => {
            if x.is_zero() || (x.is_negative() && !units) {
                return false;
            }
            let mut rest = x.abs();
            for &p in primes {
                while (&rest % p).is_zero() {
                    rest /= p;
                }
            }
            rest.is_one()
        }
        MsetRepr::ComplementOfPrime(p) => !(x % *p).is_zero(),
    }
}

/// Residues mod `n` attained by members of an integer multiplicative set.
fn attained_residues(repr: &MsetRepr, n: u64) -> Vec<bool> {
    let mut seen = vec![false; n as usize];
    match repr {
        MsetRepr::ComplementOfPrime(p) => {
            for x in 1..=n * (p + 1) {
                if x % p != 0 {
                    seen[(x % n) as usize] = true;
                }
            }
        }
        MsetRepr::PrimeSet { primes, units } => {
            seen[(1 % n) as usize] = true;
            let mut changed = true;
            while changed {
                changed = false;
                for r in 0..n {
                    if !seen[r as usize] {
                        continue;
                    }
                    for &p in primes {
                        let x = ((r as u128 * p as u128) % n as u128) as usize;
                        if !seen[x] {
                            seen[x] = true;
                            changed = true;
                        }
                    }
                }
            }
            if *units {
                let positive = seen.clone();
                for r in (0..n).filter(|&r| positive[r as usize]) {
                    seen[((n - r) % n) as usize] = true;
                }
            }
        }
        MsetRepr::Finite { .. } => {}
    }
    seen
}

fn primary_violation_finite(r: &FiniteRing, q: &[bool], target: &[bool], s: usize) -> Option<(usize, usize)> {
    for a in 0..r.size() {
        for b in 0..r.size() {
            if q[r.mul(a, b)] && !q[r.mul(s, a)] && !target[r.mul(s, b)] {
                return Some((a, b));
            }
        }
    }
    None
}

fn primary_violation_integers(n: u64, t: u64, s: u64) -> Option<(u64, u64)> {
    let m = |x: u64, y: u64| (x as u128 * y as u128) as u128;
    for a in 0..n {
        for b in 0..n {
            if m(a, b) % n as u128 == 0 && m(s, a) % n as u128 != 0 && m(s, b) % t as u128 != 0 {
                return Some((a, b));
            }
        }
    }
    None
}

fn recheck_primary_like(q: &Ideal, s: &MultiplicativeSet, cert: &SPrimaryCertificate, prime: bool) -> Check {
    match q.ring() {
        Ring::Finite(r) => {
            let qm = members(q);
            let target = if prime { qm.clone() } else { raw_radical(r, &qm) };
            let elems = s.finite_elements().ok_or("finite ring needs a finite S")?;
            if cert.verdict {
                let w = index(cert.witness.as_ref().ok_or("verdict true without witness")?);
                if !elems.contains(&w) {
                    return fail("witness not in S");
                }
                if let Some((a, b)) = primary_violation_finite(r, &qm, &target, w) {
                    return fail(format!("witness refuted by ({a}, {b})"));
                }
            } else {
                let mut covered: Vec<usize> = cert.refutations.iter().map(|f| index(&f.s)).collect();
                covered.sort_unstable();
                covered.dedup();
                if covered != elems {
                    return fail("refutations do not cover S");
                }
            }
            for f in &cert.refutations {
                let (c, a, b) = (index(&f.s), index(&f.a), index(&f.b));
                if !(qm[r.mul(a, b)] && !qm[r.mul(c, a)] && !target[r.mul(c, b)]) {
                    return fail(format!("recorded pair ({a}, {b}) does not refute s = {c}"));
                }
            }
            Ok(())
        }
        Ring::Integers => {
            let gen = q.generator().expect("integer ideal");
            if gen.is_zero() {
                let w = cert.witness.as_ref().and_then(|w| w.as_integer()).ok_or("missing witness")?;
                if !cert.verdict || !in_integer_set(s.repr(), w) {
                    return fail("0Z is S-primary with any witness in S");
                }
                for a in -12i64..=12 {
                    for b in -12i64..=12 {
                        if a * b == 0 && !(w * a).is_zero() && !(w * b).is_zero() {
                            return fail("domain argument refuted");
                        }
                    }
                }
                return Ok(());
            }
            let n = modulus(q)?;
            let t = if prime { n } else { trial_radical(n) };
            let int = |e: &RingElement| e.as_integer().cloned().ok_or("not an integer");
            if cert.verdict {
                let w = int(cert.witness.as_ref().ok_or("verdict true without witness")?)?;
                if !in_integer_set(s.repr(), &w) {
                    return fail(format!("witness {w} not in S"));
                }
                if let Some((a, b)) = primary_violation_integers(n, t, residue(&w, n)) {
                    return fail(format!("witness {w} refuted by ({a}, {b})"));
                }
            } else {
                let attained = attained_residues(s.repr(), n);
                let mut covered = vec![false; n as usize];
                for f in &cert.refutations {
                    covered[residue(&int(&f.s)?, n) as usize] = true;
                }
                if attained.iter().zip(&covered).any(|(&a, &c)| a && !c) {
                    return fail("refutations do not cover every residue class of S");
                }
            }
            for f in &cert.refutations {
                let (c, a, b) = (int(&f.s)?, int(&f.a)?, int(&f.b)?);
                if !in_integer_set(s.repr(), &c) {
                    return fail(format!("refuted candidate {c} not in S"));
                }
                let holds = (&a * &b) % n == BigInt::zero()
                    && (&c * &a) % n != BigInt::zero()
                    && (&c * &b) % t != BigInt::zero();
                if !holds {
                    return fail(format!("recorded pair ({a}, {b}) does not refute s = {c}"));
                }
            }
            Ok(())
        }
    }
}

pub fn s_primary(q: &Ideal, s: &MultiplicativeSet, cert: &SPrimaryCertificate) -> Check {
    recheck_primary_like(q, s, cert, false)
}

pub fn s_prime(p: &Ideal, s: &MultiplicativeSet, cert: &SPrimaryCertificate) -> Check {
    recheck_primary_like(p, s, cert, true)
}

fn scaled_inside(r: &FiniteRing, s: usize, i: &[bool], j: &[bool]) -> bool {
    (0..r.size()).all(|x| !i[x] || j[r.mul(s, x)])
}

fn is_raw_ideal(r: &FiniteRing, i: &[bool]) -> bool {
    i[r.zero()]
        && (0..r.size()).all(|a| {
            !i[a] || (0..r.size()).all(|b| (!i[b] || i[r.add(a, b)]) && i[r.mul(a, b)])
        })
}

/// Checks a counterexample triple, or when the verdict is true re-runs the
/// definition over every pair of ideals (finite rings) or divisor ideals
/// and residues (integers).
pub fn s_irreducible(q: &Ideal, s: &MultiplicativeSet, cert: &IrreducibilityCertificate) -> Check {
    match q.ring() {
        Ring::Finite(r) => {
            let qm = members(q);
            let elems = s.finite_elements().ok_or("finite ring needs a finite S")?;
            let refutes = |i: &[bool], j: &[bool], c: usize| {
                let meet: Vec<bool> = i.iter().zip(j).map(|(x, y)| *x && *y).collect();
                let hyp = (0..r.size()).all(|x| !qm[x] || meet[x]) && scaled_inside(r, c, &meet, &qm);
                hyp && elems.iter().all(|&d| {
                    let cd = r.mul(c, d);
                    !scaled_inside(r, cd, i, &qm) && !scaled_inside(r, cd, j, &qm)
                })
            };
            match &cert.counterexample {
                Some(cx) => {
                    let (i, j) = (members(&cx.i), members(&cx.j));
                    if cert.verdict || !is_raw_ideal(r, &i) || !is_raw_ideal(r, &j) {
                        return fail("malformed counterexample");
                    }
                    if refutes(&i, &j, index(&cx.s)) {
                        Ok(())
                    } else {
                        fail("counterexample triple satisfies the conclusion")
                    }
                }
                None => {
                    let all: Vec<Vec<bool>> = crate::ideal::enumerate_ideals(q.ring())
                        .map_err(|e| e.to_string())?
                        .iter()
                        .map(members)
                        .collect();
                    if let Some(bad) = all.iter().position(|i| !is_raw_ideal(r, i)) {
                        return fail(format!("listed ideal {bad} is not an ideal"));
                    }
                    for i in &all {
                        for j in &all {
                            if let Some(&c) = elems.iter().find(|&&c| refutes(i, j, c)) {
                                return fail(format!("missed counterexample with s = {c}"));
                            }
                        }
                    }
                    Ok(())
                }
            }
        }
        Ring::Integers => {
            let gen = q.generator().expect("integer ideal");
            if gen.is_zero() {
                return if cert.verdict { Ok(()) } else { fail("0Z is S-irreducible") };
            }
            let n = modulus(q)?;
            let attained = attained_residues(s.repr(), n);
            let residues: Vec<u64> = (0..n).filter(|&r| attained[r as usize]).collect();
            let refutes = |a: u64, b: u64, c: u64| {
                let l = a.lcm(&b);
                let hyp = (c as u128 * l as u128) % n as u128 == 0;
                hyp && residues.iter().all(|&d| {
                    let cd = c as u128 * d as u128;
                    (cd * a as u128) % n as u128 != 0 && (cd * b as u128) % n as u128 != 0
                })
            };
            match &cert.counterexample {
                Some(cx) => {
                    let a = cx.i.generator().and_then(|x| x.to_u64()).ok_or("bad I")?;
                    let b = cx.j.generator().and_then(|x| x.to_u64()).ok_or("bad J")?;
                    let c = cx.s.as_integer().ok_or("bad s")?;
                    if cert.verdict || a == 0 || b == 0 || n % a != 0 || n % b != 0 {
                        return fail("malformed counterexample");
                    }
                    if !in_integer_set(s.repr(), c) {
                        return fail("counterexample s not in S");
                    }
                    if refutes(a, b, residue(c, n)) {
                        Ok(())
                    } else {
                        fail("counterexample triple satisfies the conclusion")
                    }
                }
                None => {
                    let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
                    for &a in &divs {
                        for &b in &divs {
                            if let Some(c) = residues.iter().find(|&&c| refutes(a, b, c)) {
                                return fail(format!("missed counterexample ({a}Z, {b}Z, s = {c})"));
                            }
                        }
                    }
                    Ok(())
                }
            }
        }
    }
}

fn integer_s(cert: &SFiniteCertificate, s: Option<&MultiplicativeSet>) -> std::result::Result<BigInt, String> {
    match (&cert.s, s) {
        (Some(e), Some(set)) => {
            let v = e.as_integer().cloned().ok_or("not an integer")?;
            if in_integer_set(set.repr(), &v) {
                Ok(v)
            } else {
                fail("s not in S")
            }
        }
        (Some(e), None) => e.as_integer().cloned().ok_or_else(|| "not an integer".into()),
        (None, _) => Ok(BigInt::one()),
    }
}

fn finite_s(cert: &SFiniteCertificate, s: Option<&MultiplicativeSet>) -> std::result::Result<usize, String> {
    match (&cert.s, s) {
        (Some(e), Some(set)) => {
            let c = index(e);
            if set.finite_elements().is_some_and(|el| el.contains(&c)) {
                Ok(c)
            } else {
                fail("s not in S")
            }
        }
        (Some(e), None) => Ok(index(e)),
        (None, _) => Ok(usize::MAX),
    }
}

fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        (b % a).is_zero()
    }
}

/// `sI ⊆ J ⊆ I`.
pub fn s_finite(i: &Ideal, s: &MultiplicativeSet, cert: &SFiniteCertificate) -> Check {
    if !cert.verdict {
        return fail("S-finite verdict is always true here");
    }
    let j = cert.j.as_ref().ok_or("missing J")?;
    match i.ring() {
        Ring::Finite(r) => {
            let c = finite_s(cert, Some(s))?;
            let (im, jm) = (members(i), members(j));
            if !is_raw_ideal(r, &jm) {
                return fail("J is not an ideal");
            }
            if !scaled_inside(r, c, &im, &jm) || jm.iter().zip(&im).any(|(x, y)| *x && !y) {
                return fail("sI ⊆ J ⊆ I fails");
            }
            Ok(())
        }
        Ring::Integers => {
            let c = integer_s(cert, Some(s))?;
            let m = BigInt::from(i.generator().expect("integer ideal").clone());
            let f = BigInt::from(j.generator().expect("integer ideal").clone());
            if divides(&f, &(&c * &m)) && divides(&m, &f) {
                Ok(())
            } else {
                fail("sI ⊆ J ⊆ I fails")
            }
        }
    }
}

/// `F ⊆ I` and `x^n in F` for every `x in I`; with `S`, also `F` S-finite
/// through the recorded `s` (and `F` itself).
pub fn sft(i: &Ideal, s: Option<&MultiplicativeSet>, cert: &SFiniteCertificate) -> Check {
    if !cert.verdict {
        return fail("SFT verdict is always true here");
    }
    let f = cert.j.as_ref().ok_or("missing F")?;
    let n = cert.n.ok_or("missing exponent")?;
    match i.ring() {
        Ring::Finite(r) => {
            let (im, fm) = (members(i), members(f));
            if !is_raw_ideal(r, &fm) || fm.iter().zip(&im).any(|(x, y)| *x && !y) {
                return fail("F is not an ideal inside I");
            }
            for x in (0..r.size()).filter(|&x| im[x]) {
                let mut p = r.one();
                for _ in 0..n {
                    p = r.mul(p, x);
                }
                if !fm[p] {
                    return fail(format!("x^{n} outside F for x = {x}"));
                }
            }
            if s.is_some() {
                let c = finite_s(cert, s)?;
                if !scaled_inside(r, c, &fm, &fm) {
                    return fail("F not S-finite through s");
                }
            }
            Ok(())
        }
        Ring::Integers => {
            let m = BigInt::from(i.generator().expect("integer ideal").clone());
            let fg = BigInt::from(f.generator().expect("integer ideal").clone());
            integer_s(cert, s)?;
            let power = num_traits::pow(m.clone(), n as usize);
            if divides(&m, &fg) && divides(&fg, &power) {
                Ok(())
            } else {
                fail("F ⊆ I with x^n in F fails")
            }
        }
    }
}

/// `sI ⊆ √J ⊆ √I`.
pub fn radically_s_finite(i: &Ideal, s: &MultiplicativeSet, cert: &SFiniteCertificate) -> Check {
    if !cert.verdict {
        return Ok(());
    }
    let j = cert.j.as_ref().ok_or("missing J")?;
    match i.ring() {
        Ring::Finite(r) => {
            let c = finite_s(cert, Some(s))?;
            let (im, jm) = (members(i), members(j));
            let (ri, rj) = (raw_radical(r, &im), raw_radical(r, &jm));
            if !is_raw_ideal(r, &jm) {
                return fail("J is not an ideal");
            }
            if !scaled_inside(r, c, &im, &rj) || rj.iter().zip(&ri).any(|(x, y)| *x && !y) {
                return fail("sI ⊆ √J ⊆ √I fails");
            }
            Ok(())
        }
        Ring::Integers => {
            let c = integer_s(cert, Some(s))?;
            let m = i.generator().and_then(|x| x.to_u64()).ok_or("generator too large")?;
            let f = j.generator().and_then(|x| x.to_u64()).ok_or("generator too large")?;
            let rad = |x: u64| if x == 0 { 0 } else { trial_radical(x) };
            let (ri, rj) = (BigInt::from(rad(m)), BigInt::from(rad(f)));
            if divides(&rj, &(&c * BigInt::from(m))) && divides(&ri, &rj) {
                Ok(())
            } else {
                fail("sI ⊆ √J ⊆ √I fails")
            }
        }
    }
}
