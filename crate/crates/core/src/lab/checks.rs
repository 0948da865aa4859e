//! One function per property. Each takes a single instance, re-derives its
//! hypotheses from the raw predicates and reports the outcome; the suite
//! drivers and counterexample reruns share these functions.

use num_integer::Integer;
use num_bigint::BigUint;
use num_traits::One;

use super::{Mutation, Outcome, Property};
use crate::decompose::{self, Decomposition};
use crate::error::Result;
use crate::ideal::{self, Ideal, MultiplicativeSet};
use crate::predicates::{self, recheck};
use crate::ring::{Ring, RingElement, RingMap};

/// Predicate access for the suites, with the optional corruption used to
/// check that the suites can fail.
#[derive(Clone, Copy, Debug, Default)]
pub struct Checker {
    pub mutation: Mutation,
}

impl Checker {
    pub fn s_primary(&self, q: &Ideal, s: &MultiplicativeSet) -> Result<bool> {
        let v = predicates::is_s_primary(q, s)?.verdict;
        Ok(v != (self.mutation == Mutation::NegateSPrimary))
    }

    pub fn primary(&self, q: &Ideal) -> Result<bool> {
        self.s_primary(q, &MultiplicativeSet::trivial(q.ring()))
    }

    pub fn decomposes(&self, i: &Ideal, s: &MultiplicativeSet) -> Result<bool> {
        Ok(decompose::decompose_finite(i, s)?.is_some())
    }
}

/// A single instance: ring, multiplicative set, ideals and elements of the
/// ring. Ideals of derived rings are carried as contractions to `R`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub ring: Ring,
    pub mset: MultiplicativeSet,
    pub ideals: Vec<Ideal>,
    pub elements: Vec<RingElement>,
}

fn verdict(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Holds
    } else {
        Outcome::Fails(msg())
    }
}

pub(super) fn nonnil_candidate(i: &Ideal, s: &MultiplicativeSet) -> Result<bool> {
    Ok(i.is_proper() && predicates::is_nonnil(i) && ideal::disjoint_from(i, s)?)
}

/// Proper ideals disjoint from `S`, optionally also nonnil.
pub(super) fn candidates(ring: &Ring, s: &MultiplicativeSet, nonnil: bool) -> Result<Vec<Ideal>> {
    let mut out = Vec::new();
    for i in ideal::enumerate_ideals(ring)? {
        if i.is_proper() && (!nonnil || predicates::is_nonnil(&i)) && ideal::disjoint_from(&i, s)? {
            out.push(i);
        }
    }
    Ok(out)
}

pub fn check(property: Property, c: &Checker, inst: &Instance) -> Result<Outcome> {
    let s = &inst.mset;
    let ids = &inst.ideals;
    match property {
        Property::IntersectionClosure => intersection_closure(c, ids, s),
        Property::IntersectionMeet => intersection_meet(c, &ids[0], &ids[1], s),
        Property::QuotientNil | Property::QuotientReduced | Property::QuotientNonnil => {
            let base = &ids[0];
            let hyp = match property {
                Property::QuotientNil => base.is_subset(&ideal::nilradical(&inst.ring))?,
                Property::QuotientReduced => *base == ideal::nilradical(&inst.ring),
                _ => nonnil_candidate(base, s)?,
            };
            if !hyp || !base.is_proper() {
                return Ok(Outcome::NotApplicable);
            }
            let q = Quotient::new(base, s)?;
            q.clause(c, &ids[1], property == Property::QuotientNil)
        }
        Property::QuotientDivided => {
            let hyp = DividedHypothesis::derive(&inst.ring, s)?;
            hyp.clause(c, &ids[0], s)
        }
        Property::NilPrimary => {
            if !nil_primary_applies(&inst.ring, s)? {
                return Ok(Outcome::NotApplicable);
            }
            nil_primary(c, &ids[0], s)
        }
        Property::Spectrum => spectrum(c, &inst.ring, s),
        Property::SpectrumIntegers => spectrum_integers(&ids[0], s),
        Property::LocalizationImage => {
            let (l, map) = ideal::localize(&inst.ring, s)?;
            localization_image(c, &ids[0], s, &l, &map)
        }
        Property::LocalizationDecompose => {
            let (l, map) = ideal::localize(&inst.ring, s)?;
            localization_decompose(c, &ids[0], &l, &map)
        }
        Property::MainDecompose => main_decompose(&ids[0], s),
        Property::MainIrreducible => main_irreducible(c, &ids[0], s),
        Property::MainMinimal => main_minimal(&ids[0], s),
        Property::MainSMaximal => main_s_maximal(&candidates(&inst.ring, s, true)?, s),
        Property::MainIntegers => main_integers(c, &ids[0], s),
        Property::ColonSplit => colon_split(&ids[0], &inst.elements[0]),
    }
}

pub(super) fn intersection_closure(c: &Checker, qs: &[Ideal], s: &MultiplicativeSet) -> Result<Outcome> {
    let mut key = None;
    for q in qs {
        if !q.is_proper() || !ideal::disjoint_from(q, s)? || !c.s_primary(q, s)? {
            return Ok(Outcome::NotApplicable);
        }
        let k = ideal::saturation(&ideal::radical(q), s)?;
        if key.get_or_insert_with(|| k.clone()) != &k {
            return Ok(Outcome::NotApplicable);
        }
    }
    let key = key.expect("nonempty set");
    let meet = ideal::intersect_all(qs[0].ring(), qs)?;
    if !c.s_primary(&meet, s)? {
        return Ok(Outcome::Fails(format!("intersection {meet:?} is not S-primary")));
    }
    let k = ideal::saturation(&ideal::radical(&meet), s)?;
    Ok(verdict(k == key, || {
        format!("S(rad) of the intersection is {k:?}, expected {key:?}")
    }))
}

pub(super) fn intersection_meet(c: &Checker, q: &Ideal, j: &Ideal, s: &MultiplicativeSet) -> Result<Outcome> {
    if !q.is_proper() || !ideal::disjoint_from(q, s)? || ideal::disjoint_from(j, s)? || !c.primary(q)? {
        return Ok(Outcome::NotApplicable);
    }
    let meet = ideal::ideal_intersect(q, j)?;
    if !c.s_primary(&meet, s)? {
        return Ok(Outcome::Fails(format!("{meet:?} is not S-primary")));
    }
    let rad = ideal::radical(&meet);
    let expected = ideal::ideal_intersect(&ideal::radical(q), &ideal::radical(j))?;
    Ok(verdict(rad == expected, || {
        format!("rad(Q ∩ J) = {rad:?}, rad Q ∩ rad J = {expected:?}")
    }))
}

/// `R/I` with the image of `S`.
pub struct Quotient {
    pub ring: Ring,
    pub map: RingMap,
    pub mset: MultiplicativeSet,
}

impl Quotient {
    pub fn new(i: &Ideal, s: &MultiplicativeSet) -> Result<Self> {
        let (ring, map) = ideal::quotient_ring(i.ring(), i)?;
        let mset = s.image(&map)?;
        Ok(Quotient { ring, map, mset })
    }

    /// Ideals of the quotient the clause quantifies over, as contractions.
    pub fn targets(&self, nonnil: bool) -> Result<Vec<Ideal>> {
        candidates(&self.ring, &self.mset, nonnil)?
            .iter()
            .map(|k| ideal::preimage_ideal(&self.map, k))
            .collect()
    }

    pub fn clause(&self, c: &Checker, contraction: &Ideal, nonnil: bool) -> Result<Outcome> {
        let k = ideal::image_ideal(&self.map, contraction)?;
        if !k.is_proper() || (nonnil && !predicates::is_nonnil(&k)) || !ideal::disjoint_from(&k, &self.mset)? {
            return Ok(Outcome::NotApplicable);
        }
        Ok(verdict(c.decomposes(&k, &self.mset)?, || {
            format!("{k:?} in {} has no S-primary decomposition", self.ring.describe())
        }))
    }
}

/// Hypothesis of the divided-nilradical converse: `Nil(R)` divided and
/// every ideal of `R/Nil(R)` disjoint from the image of `S` decomposes.
pub struct DividedHypothesis {
    pub holds: bool,
}

impl DividedHypothesis {
    pub fn derive(ring: &Ring, s: &MultiplicativeSet) -> Result<Self> {
        let nil = ideal::nilradical(ring);
        if !ideal::is_divided(&nil) {
            return Ok(DividedHypothesis { holds: false });
        }
        let q = Quotient::new(&nil, s)?;
        let c = Checker::default();
        for k in candidates(&q.ring, &q.mset, false)? {
            if !c.decomposes(&k, &q.mset)? {
                return Ok(DividedHypothesis { holds: false });
            }
        }
        Ok(DividedHypothesis { holds: true })
    }

    pub fn clause(&self, c: &Checker, i: &Ideal, s: &MultiplicativeSet) -> Result<Outcome> {
        if !self.holds || !nonnil_candidate(i, s)? {
            return Ok(Outcome::NotApplicable);
        }
        Ok(verdict(c.decomposes(i, s)?, || format!("{i:?} has no S-primary decomposition")))
    }
}

pub(super) fn nil_primary_applies(ring: &Ring, s: &MultiplicativeSet) -> Result<bool> {
    let nil = ideal::nilradical(ring);
    Ok(nil.is_proper()
        && ideal::disjoint_from(&nil, s)?
        && ideal::is_divided(&nil)
        && predicates::is_prime_ideal(&nil)?)
}

pub(super) fn nil_primary(c: &Checker, i: &Ideal, s: &MultiplicativeSet) -> Result<Outcome> {
    if !i.is_subset(&ideal::nilradical(i.ring()))? {
        return Ok(Outcome::NotApplicable);
    }
    let d = c.decomposes(i, s)?;
    let p = c.s_primary(i, s)?;
    Ok(verdict(d == p, || {
        format!("{i:?}: decomposable = {d}, S-primary = {p}")
    }))
}

pub(super) fn spectrum(c: &Checker, ring: &Ring, s: &MultiplicativeSet) -> Result<Outcome> {
    let nil = ideal::nilradical(ring);
    if !nil.is_proper() || !ideal::disjoint_from(&nil, s)? || !c.decomposes(&nil, s)? {
        return Ok(Outcome::NotApplicable);
    }
    for i in candidates(ring, s, true)? {
        if !c.decomposes(&i, s)? {
            return Ok(Outcome::NotApplicable);
        }
    }
    let report = predicates::has_s_noetherian_spectrum(ring, s)?;
    for (p, cert) in &report.primes {
        if !cert.verdict {
            return Ok(Outcome::Fails(format!("{p:?} is not radically S-finite")));
        }
        if let Err(e) = recheck::radically_s_finite(p, s, cert) {
            return Ok(Outcome::Fails(format!("certificate for {p:?} rejected: {e}")));
        }
    }
    Ok(verdict(report.verdict, || "spectrum verdict false".into()))
}

pub(super) fn spectrum_integers(p: &Ideal, s: &MultiplicativeSet) -> Result<Outcome> {
    if !predicates::is_prime_ideal(p)? {
        return Ok(Outcome::NotApplicable);
    }
    let cert = predicates::is_radically_s_finite(p, s)?;
    if let Err(e) = recheck::radically_s_finite(p, s, &cert) {
        return Ok(Outcome::Fails(format!("certificate rejected: {e}")));
    }
    Ok(verdict(cert.verdict, || format!("{p:?} is not radically S-finite")))
}

pub(super) fn localization_image(
    c: &Checker,
    q: &Ideal,
    s: &MultiplicativeSet,
    l: &Ring,
    map: &RingMap,
) -> Result<Outcome> {
    if !q.is_proper() || !ideal::disjoint_from(q, s)? || !c.s_primary(q, s)? {
        return Ok(Outcome::NotApplicable);
    }
    let image = ideal::image_ideal(map, q)?;
    if !image.is_proper() {
        return Ok(Outcome::Fails(format!("image of {q:?} in {} is improper", l.describe())));
    }
    Ok(verdict(c.primary(&image)?, || {
        format!("image {image:?} of {q:?} is not primary")
    }))
}

pub(super) fn localization_decompose(c: &Checker, contraction: &Ideal, l: &Ring, map: &RingMap) -> Result<Outcome> {
    let k = ideal::image_ideal(map, contraction)?;
    if !k.is_proper() || !predicates::is_nonnil(&k) {
        return Ok(Outcome::NotApplicable);
    }
    let one = MultiplicativeSet::trivial(l);
    Ok(verdict(c.decomposes(&k, &one)?, || {
        format!("{k:?} in {} has no primary decomposition", l.describe())
    }))
}

pub(super) fn main_decompose(i: &Ideal, s: &MultiplicativeSet) -> Result<Outcome> {
    if !nonnil_candidate(i, s)? {
        return Ok(Outcome::NotApplicable);
    }
    match decompose::decompose_finite(i, s)? {
        None => Ok(Outcome::Fails(format!("no S-primary decomposition of {i:?}"))),
        Some(d) => Ok(match decompose::validate(&d, s) {
            Ok(()) => Outcome::Holds,
            Err(e) => Outcome::Fails(format!("decomposition of {i:?} invalid: {e}")),
        }),
    }
}

pub(super) fn main_irreducible(c: &Checker, i: &Ideal, s: &MultiplicativeSet) -> Result<Outcome> {
    if !nonnil_candidate(i, s)? || !predicates::is_s_irreducible(i, s)?.verdict {
        return Ok(Outcome::NotApplicable);
    }
    Ok(verdict(c.s_primary(i, s)?, || {
        format!("{i:?} is S-irreducible but not S-primary")
    }))
}

fn minimal_and_stable(i: &Ideal, s: &MultiplicativeSet, input: &Decomposition, label: &str) -> Result<Option<String>> {
    let m = match decompose::minimalize(i, s, input) {
        Ok(m) => m,
        Err(e) => return Ok(Some(format!("minimalize failed on the {label} input: {e}"))),
    };
    let report = decompose::verify_minimality(&m, s)?;
    if !report.is_minimal() || !report.forms_agree {
        return Ok(Some(format!("minimalized {label} input is not minimal: {report:?}")));
    }
    let again = decompose::minimalize(i, s, &m)?;
    if again.components != m.components {
        return Ok(Some(format!("minimalize is not idempotent on the {label} input")));
    }
    Ok(None)
}

pub(super) fn main_minimal(i: &Ideal, s: &MultiplicativeSet) -> Result<Outcome> {
    if !nonnil_candidate(i, s)? {
        return Ok(Outcome::NotApplicable);
    }
    let Some(d) = decompose::decompose_finite(i, s)? else {
        return Ok(Outcome::Fails(format!("no S-primary decomposition of {i:?}")));
    };
    if let Some(msg) = minimal_and_stable(i, s, &d, "searched")? {
        return Ok(Outcome::Fails(msg));
    }
    // every S-primary ideal over I: valid but usually far from minimal
    let mut all = Vec::new();
    for q in candidates(i.ring(), s, false)? {
        if i.is_subset(&q)? && predicates::is_s_primary(&q, s)?.verdict {
            all.push(q);
        }
    }
    let padded = Decomposition::from_ideals(i, all, s)?;
    Ok(match minimal_and_stable(i, s, &padded, "padded")? {
        Some(msg) => Outcome::Fails(msg),
        None => Outcome::Holds,
    })
}

pub(super) fn main_s_maximal(family: &[Ideal], s: &MultiplicativeSet) -> Result<Outcome> {
    if family.is_empty() {
        return Ok(Outcome::NotApplicable);
    }
    let Some((i, w)) = decompose::find_s_maximal(family, s)? else {
        return Ok(Outcome::Fails("no S-maximal element".into()));
    };
    if !s.contains(&w)? {
        return Ok(Outcome::Fails("returned s is outside S".into()));
    }
    let colon = ideal::colon_element(&i, &w)?;
    for j in family {
        if i.is_subset(j)? && !j.is_subset(&colon)? {
            return Ok(Outcome::Fails(format!("s{j:?} is not inside {i:?}")));
        }
    }
    Ok(Outcome::Holds)
}

pub(super) fn main_integers(c: &Checker, i: &Ideal, s: &MultiplicativeSet) -> Result<Outcome> {
    let Some(n) = i.generator().cloned() else {
        return Ok(Outcome::NotApplicable);
    };
    if n <= BigUint::one() || !ideal::disjoint_from(i, s)? {
        return Ok(Outcome::NotApplicable);
    }
    let d = decompose::decompose_integers(i, s)?;
    let mut lcm = BigUint::one();
    for comp in &d.components {
        let cert = predicates::is_s_primary(&comp.q, s)?;
        if !c.s_primary(&comp.q, s)? {
            return Ok(Outcome::Fails(format!("component {:?} is not S-primary", comp.q)));
        }
        let g = comp.q.generator().expect("integer ideal");
        if *g <= BigUint::from(recheck::BRUTE_FORCE_LIMIT) {
            if let Err(e) = recheck::s_primary(&comp.q, s, &cert) {
                return Ok(Outcome::Fails(format!("component {:?} rejected: {e}", comp.q)));
            }
        }
        lcm = lcm.lcm(g);
    }
    if lcm != n {
        return Ok(Outcome::Fails(format!("lcm of the components is {lcm}, expected {n}")));
    }
    let m = decompose::minimalize(i, s, &d)?;
    Ok(verdict(m.minimal.is_minimal() && m.minimal.forms_agree, || {
        format!("minimalized decomposition of {i:?} is not minimal")
    }))
}

pub(super) fn colon_split(i: &Ideal, s: &RingElement) -> Result<Outcome> {
    match decompose::colon_split_identity(i, s) {
        Ok(split) => Ok(verdict(split.holds, || {
            format!("({:?}) ∩ ({:?}) differs from {i:?}", split.left, split.right)
        })),
        Err(crate::Error::Precondition(_)) => Ok(Outcome::NotApplicable),
        Err(e) => Err(e),
    }
}
