//! Decision procedures for the S-relative ideal predicates. Every procedure
//! returns a certificate that [`recheck`] can verify against the raw
//! definition without reusing the search code.

mod finite;
mod integers;
pub mod recheck;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{self, Ideal, IdealRepr, MultiplicativeSet};
use crate::ring::{Ring, RingElement};

pub use integers::s_primary_witness_fails;

/// What a search examined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Universe {
    pub description: String,
    /// Candidate witnesses tried, in canonical order.
    pub candidates: u64,
}

/// A candidate `s` together with the pair `(a, b)` that rules it out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub s: RingElement,
    pub a: RingElement,
    pub b: RingElement,
}

/// Result of an S-prime or S-primary check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPrimaryCertificate {
    pub verdict: bool,
    pub witness: Option<RingElement>,
    /// Refutation of the first candidate when the verdict is false.
    pub counterexample: Option<(RingElement, RingElement)>,
    /// One entry per candidate tried before the witness (all candidates
    /// when the verdict is false).
    pub refutations: Vec<Refutation>,
    pub universe: Universe,
}

/// Result of an S-finite, SFT, S-SFT or radically S-finite check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFiniteCertificate {
    pub verdict: bool,
    pub s: Option<RingElement>,
    /// The finitely generated ideal `J` (S-finite, radical) or `F` (SFT).
    pub j: Option<Ideal>,
    /// Exponent for the SFT variants.
    pub n: Option<u64>,
    pub universe: Universe,
}

/// Hypothesis triple `(I, J, s)` with no `s'` completing the S-irreducible
/// conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityCounterexample {
    pub i: Ideal,
    pub j: Ideal,
    pub s: RingElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    pub verdict: bool,
    pub counterexample: Option<IrreducibilityCounterexample>,
    pub universe: Universe,
}

/// Per-prime certificates for the S-Noetherian spectrum property.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub verdict: bool,
    pub primes: Vec<(Ideal, SFiniteCertificate)>,
}

fn check_ring(i: &Ideal, s: &MultiplicativeSet) -> Result<()> {
    if i.ring().same_ring(s.ring()) {
        Ok(())
    } else {
        Err(Error::CrossRing)
    }
}

fn relative_preconditions(i: &Ideal, s: &MultiplicativeSet) -> Result<()> {
    check_ring(i, s)?;
    i.require_proper()?;
    ideal::require_disjoint(i, s)
}

/// `I` is not contained in `Nil(R)`.
pub fn is_nonnil(i: &Ideal) -> bool {
    match i.repr() {
        IdealRepr::Finite(set) => !set.is_subset(ideal::nilradical(i.ring()).set()),
        IdealRepr::Principal(n) => !num_traits::Zero::is_zero(n),
    }
}

pub fn is_prime_ideal(p: &Ideal) -> Result<bool> {
    let one = MultiplicativeSet::trivial(p.ring());
    Ok(is_s_prime(p, &one)?.verdict)
}

pub fn is_primary(q: &Ideal) -> Result<bool> {
    let one = MultiplicativeSet::trivial(q.ring());
    Ok(is_s_primary(q, &one)?.verdict)
}

/// Some `s` in `S` with `ab in P => sa in P or sb in P`.
pub fn is_s_prime(p: &Ideal, s: &MultiplicativeSet) -> Result<SPrimaryCertificate> {
    relative_preconditions(p, s)?;
    match p.ring() {
        Ring::Finite(_) => Ok(finite::s_primary(p, p, s)),
        Ring::Integers => integers::s_primary(p, p, s),
    }
}

/// Some `s` in `S` with `ab in Q => sa in Q or sb in rad(Q)`, over ordered
/// pairs exactly as quantified.
pub fn is_s_primary(q: &Ideal, s: &MultiplicativeSet) -> Result<SPrimaryCertificate> {
    relative_preconditions(q, s)?;
    let rad = ideal::radical(q);
    match q.ring() {
        Ring::Finite(_) => Ok(finite::s_primary(q, &rad, s)),
        Ring::Integers => integers::s_primary(q, &rad, s),
    }
}

/// `Q` is not the intersection of two strictly larger ideals.
pub fn is_irreducible(q: &Ideal) -> Result<bool> {
    q.require_proper()?;
    match q.ring() {
        Ring::Finite(_) => Ok(finite::irreducible(q)),
        Ring::Integers => Ok(integers::irreducible(q)),
    }
}

pub fn is_s_irreducible(q: &Ideal, s: &MultiplicativeSet) -> Result<IrreducibilityCertificate> {
    relative_preconditions(q, s)?;
    match q.ring() {
        Ring::Finite(_) => Ok(finite::s_irreducible(q, s)),
        Ring::Integers => integers::s_irreducible(q, s),
    }
}

/// `sI ⊆ J ⊆ I` for some finitely generated `J` and `s` in `S`.
pub fn is_s_finite(i: &Ideal, s: &MultiplicativeSet) -> Result<SFiniteCertificate> {
    check_ring(i, s)?;
    match i.ring() {
        Ring::Finite(_) => Ok(finite::s_finite(i, s)),
        Ring::Integers => Ok(integers::trivially_finite(i, "J = I, s = 1")),
    }
}

/// Finitely generated `F ⊆ I` and `n` with `x^n in F` for all `x in I`.
pub fn is_sft(i: &Ideal) -> Result<SFiniteCertificate> {
    match i.ring() {
        Ring::Finite(_) => Ok(finite::sft(i, None)),
        Ring::Integers => {
            let mut cert = integers::trivially_finite(i, "F = I, n = 1");
            cert.s = None;
            cert.n = Some(1);
            Ok(cert)
        }
    }
}

/// As [`is_sft`] with `F` only required to be S-finite; the certificate's
/// `s` is the one certifying `F`.
pub fn is_s_sft(i: &Ideal, s: &MultiplicativeSet) -> Result<SFiniteCertificate> {
    check_ring(i, s)?;
    match i.ring() {
        Ring::Finite(_) => Ok(finite::sft(i, Some(s))),
        Ring::Integers => {
            let mut cert = integers::trivially_finite(i, "F = I, n = 1, s = 1");
            cert.n = Some(1);
            Ok(cert)
        }
    }
}

/// Smallest `n` with `x^n in F` for every `x in I`, if any. Finite rings
/// search `n <= |R|`; for `mZ ⊇ fZ` the bound is the largest exponent in `f`.
pub fn sft_exponent(i: &Ideal, f: &Ideal) -> Result<Option<u64>> {
    if !f.is_subset(i)? {
        return Err(Error::Precondition("F must be contained in I".into()));
    }
    match i.ring() {
        Ring::Finite(_) => Ok(finite::sft_exponent(i, f)),
        Ring::Integers => Ok(integers::sft_exponent(i, f)),
    }
}

/// `sI ⊆ √J ⊆ √I` for some finitely generated `J` and `s` in `S`.
pub fn is_radically_s_finite(i: &Ideal, s: &MultiplicativeSet) -> Result<SFiniteCertificate> {
    check_ring(i, s)?;
    match i.ring() {
        Ring::Finite(_) => Ok(finite::radically_s_finite(i, s)),
        Ring::Integers => Ok(integers::trivially_finite(i, "J = I, s = 1")),
    }
}

/// Prime ideals of a finite ring in canonical order.
pub fn prime_ideals(ring: &Ring) -> Result<Vec<Ideal>> {
    let mut out = Vec::new();
    for i in ideal::enumerate_ideals(ring)? {
        if i.is_proper() && is_prime_ideal(&i)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// Every prime ideal is radically S-finite.
pub fn has_s_noetherian_spectrum(ring: &Ring, s: &MultiplicativeSet) -> Result<SpectrumReport> {
    ring.require_finite("has_s_noetherian_spectrum")?;
    let mut primes = Vec::new();
    for p in prime_ideals(ring)? {
        let cert = is_radically_s_finite(&p, s)?;
        primes.push((p, cert));
    }
    Ok(SpectrumReport {
        verdict: primes.iter().all(|(_, c)| c.verdict),
        primes,
    })
}

/// `s` alone satisfies the S-primary condition for `Q` (membership of `s`
/// in any particular `S` is not checked).
pub fn is_s_primary_witness(q: &Ideal, s: &RingElement) -> Result<bool> {
    q.require_proper()?;
    match q.ring() {
        Ring::Finite(_) => Ok(finite::witness_holds(q, q.ring().index_of(s)?)),
        Ring::Integers => Ok(integers::s_primary_witness_fails(q, s)?.is_none()),
    }
}
