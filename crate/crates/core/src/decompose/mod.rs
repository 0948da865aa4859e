//! S-primary decompositions: exhaustive search in finite rings, the
//! factorization construction in the integers, minimalization and the
//! minimality report.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ideal::{
    self, ideal_intersect, ideal_sum, intersect_all, principal, saturation, zz, Ideal, MsetRepr,
    MultiplicativeSet,
};
use crate::predicates::{self, is_s_primary};
use crate::ring::{Ring, RingElement};

/// `Q` with its radical `P` and the witness `s` of the S-primary condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub q: Ideal,
    pub p: Ideal,
    pub s: RingElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub target: Ideal,
    pub components: Vec<Component>,
    pub minimal: MinimalityReport,
}

/// Both minimality conditions, the second in its two stated forms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MinimalityReport {
    /// The saturated radicals `S(P_i)` are pairwise distinct.
    pub distinct_radicals: bool,
    /// No `S(Q_i)` contains the intersection of the other `S(Q_j)`.
    pub irredundant: bool,
    /// No `S(Q_i)` contains the intersection of the other `Q_j`.
    pub irredundant_unsaturated: bool,
    pub forms_agree: bool,
    /// Index pairs with equal saturated radicals.
    pub radical_clashes: Vec<(usize, usize)>,
    pub redundant: Vec<usize>,
    pub redundant_unsaturated: Vec<usize>,
}

impl Decomposition {
    /// Builds a decomposition from bare components, computing radicals and
    /// S-primary witnesses. Does not check that the components meet in
    /// `target`; see [`validate`].
    pub fn from_ideals(target: &Ideal, qs: Vec<Ideal>, s: &MultiplicativeSet) -> Result<Self> {
        let components = qs
            .into_iter()
            .map(|q| {
                component(q, s).map_err(|e| match e {
                    Error::PostVerification(m) => Error::InvalidDecomposition(m),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        assemble(target, components, s)
    }
}

impl MinimalityReport {
    pub fn is_minimal(&self) -> bool {
        self.distinct_radicals && self.irredundant
    }
}

fn same_ring(i: &Ideal, s: &MultiplicativeSet) -> Result<()> {
    if i.ring().same_ring(s.ring()) {
        Ok(())
    } else {
        Err(Error::CrossRing)
    }
}

fn component(q: Ideal, s: &MultiplicativeSet) -> Result<Component> {
    let cert = is_s_primary(&q, s)?;
    let witness = cert
        .witness
        .ok_or_else(|| Error::PostVerification(format!("{q:?} is not S-primary")))?;
    Ok(Component {
        p: ideal::radical(&q),
        q,
        s: witness,
    })
}

fn assemble(target: &Ideal, components: Vec<Component>, s: &MultiplicativeSet) -> Result<Decomposition> {
    let mut d = Decomposition {
        target: target.clone(),
        components,
        minimal: MinimalityReport::default(),
    };
    d.minimal = verify_minimality(&d, s)?;
    Ok(d)
}

/// Checks that `d` is an S-primary decomposition of its target.
pub fn validate(d: &Decomposition, s: &MultiplicativeSet) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidDecomposition(m));
    same_ring(&d.target, s)?;
    d.target.require_proper()?;
    ideal::require_disjoint(&d.target, s)?;
    if d.components.is_empty() {
        return bad("no components".into());
    }
    for (k, c) in d.components.iter().enumerate() {
        if !c.q.ring().same_ring(d.target.ring()) {
            return Err(Error::CrossRing);
        }
        if !c.q.is_proper() || !ideal::disjoint_from(&c.q, s)? {
            return bad(format!("component {k} is improper or meets S"));
        }
        if c.p != ideal::radical(&c.q) {
            return bad(format!("component {k}: P is not the radical of Q"));
        }
        if !s.contains(&c.s)? {
            return bad(format!("component {k}: witness not in S"));
        }
        if !predicates::is_s_primary_witness(&c.q, &c.s)? {
            return bad(format!("component {k}: witness fails the S-primary condition"));
        }
    }
    let meet = intersect_all(d.target.ring(), d.components.iter().map(|c| &c.q))?;
    if meet != d.target {
        return bad(format!(
            "components intersect to {meet:?}, not {:?}",
            d.target
        ));
    }
    Ok(())
}

/// Smallest decomposition of `I` into S-primary ideals over `I`, searching
/// subsets by increasing size in canonical order. `Ok(None)` when no subset
/// intersects to `I`.
pub fn decompose_finite(i: &Ideal, s: &MultiplicativeSet) -> Result<Option<Decomposition>> {
    same_ring(i, s)?;
    let ring = i.ring();
    ring.require_finite("decompose_finite")?;
    i.require_proper()?;
    ideal::require_disjoint(i, s)?;
    let mut candidates = Vec::new();
    for j in ideal::enumerate_ideals(ring)? {
        if !j.is_proper() || !i.is_subset(&j)? || !ideal::disjoint_from(&j, s)? {
            continue;
        }
        let cert = is_s_primary(&j, s)?;
        if let Some(w) = cert.witness {
            candidates.push(Component {
                p: ideal::radical(&j),
                q: j,
                s: w,
            });
        }
    }
    let all = candidates.iter().map(|c| c.q.set());
    let universe = ring.size().expect("finite ring");
    let mut meet = crate::elemset::ElemSet::full(universe);
    for q in all {
        meet.intersect_with(q);
    }
    if meet != *i.set() {
        return Ok(None);
    }
    for k in 1..=candidates.len() {
        let found = candidates.iter().combinations(k).find(|subset| {
            let mut m = crate::elemset::ElemSet::full(universe);
            for c in subset {
                m.intersect_with(c.q.set());
            }
            m == *i.set()
        });
        if let Some(subset) = found {
            let components = subset.into_iter().cloned().collect();
            return assemble(i, components, s).map(Some);
        }
    }
    unreachable!("the full candidate list intersects to I")
}

/// Prime factors `q` of `n` lying outside the primes allowed in `S`.
fn outside_s(s: &MultiplicativeSet, q: &BigUint) -> Result<bool> {
    match s.repr() {
        MsetRepr::PrimeSet { primes, .. } => Ok(!primes.iter().any(|&p| BigUint::from(p) == *q)),
        MsetRepr::ComplementOfPrime(p) => Ok(BigUint::from(*p) == *q),
        MsetRepr::Finite { .. } => Err(Error::Unsupported(
            "finite multiplicative set on the integers".into(),
        )),
    }
}

/// `nZ = ∩ (u q^f)Z` where `u` collects the prime powers of `n` whose prime
/// divides some element of `S` and `q^f` runs over the rest.
pub fn decompose_integers(i: &Ideal, s: &MultiplicativeSet) -> Result<Decomposition> {
    same_ring(i, s)?;
    let n = i
        .generator()
        .ok_or_else(|| Error::Unsupported("decompose_integers needs an ideal of Z".into()))?
        .clone();
    i.require_proper()?;
    ideal::require_disjoint(i, s)?;
    if n.is_zero() {
        return assemble(i, vec![component(i.clone(), s)?], s);
    }
    let mut u = BigUint::one();
    let mut rest = Vec::new();
    for (q, e) in zz::factorize(&n) {
        let pe = num_traits::pow(q.clone(), e as usize);
        if outside_s(s, &q)? {
            rest.push(pe);
        } else {
            u *= pe;
        }
    }
    if rest.is_empty() {
        return Err(Error::MeetsMultiplicativeSet);
    }
    let components = rest
        .into_iter()
        .map(|qf| component(Ideal::integers(&u * qf), s))
        .collect::<Result<Vec<_>>>()?;
    let lcm = components
        .iter()
        .fold(BigUint::one(), |acc, c| zz::lcm(&acc, c.q.generator().expect("integer ideal")));
    if lcm != n {
        return Err(Error::PostVerification(format!("component lcm {lcm} differs from {n}")));
    }
    assemble(i, components, s)
}

/// Ring-level product of the witnesses.
fn witness_product(ring: &Ring, comps: &[Component]) -> Result<RingElement> {
    comps
        .iter()
        .try_fold(ring.one(), |acc, c| ring.mul(&acc, &c.s))
}

/// Candidate `s*` in search order: the product of the witnesses, then (for
/// the integers) the product of the parts of each generator that `S`
/// saturates away, then every element of a finite `S`.
fn saturator_candidates(d: &Decomposition, s: &MultiplicativeSet) -> Result<Vec<RingElement>> {
    let ring = d.target.ring();
    let seed = witness_product(ring, &d.components)?;
    let mut out = vec![seed.clone()];
    match ring {
        Ring::Finite(_) => out.extend(s.elements()?),
        Ring::Integers => {
            let mut t = BigUint::one();
            for c in &d.components {
                for ideal in [&c.q, &c.p] {
                    let g = ideal.generator().expect("integer ideal");
                    if g.is_zero() {
                        continue;
                    }
                    let sat = saturation(ideal, s)?;
                    t = zz::lcm(&t, &(g / sat.generator().expect("integer ideal")));
                }
            }
            let t = RingElement::Integer(BigInt::from(t));
            out.push(ring.mul(&seed, &t)?);
            out.push(t);
        }
    }
    Ok(out)
}

fn saturates_all(comps: &[Component], s: &MultiplicativeSet, cand: &RingElement) -> Result<bool> {
    for c in comps {
        let colon = ideal::colon_element(&c.q, cand)?;
        if colon != saturation(&c.q, s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rewrites a valid decomposition into a minimal one: pick `s*` with
/// `S(Q_i) = (Q_i : s*)` for every component, group components by `S(P_i)`,
/// drop groups whose saturation contains the intersection of the other
/// groups' saturations, and emit `S(I'_t) ∩ (I + Rs*)`.
pub fn minimalize(i: &Ideal, s: &MultiplicativeSet, input: &Decomposition) -> Result<Decomposition> {
    if input.target != *i {
        return Err(Error::InvalidDecomposition("decomposition of a different ideal".into()));
    }
    validate(input, s)?;
    let mut star = None;
    for cand in saturator_candidates(input, s)? {
        if s.contains(&cand)? && saturates_all(&input.components, s, &cand)? {
            star = Some(cand);
            break;
        }
    }
    let star = star.ok_or(Error::NoSaturatingElement)?;

    // groups keyed by S(P_i), in order of first appearance
    let mut keys: Vec<Ideal> = Vec::new();
    let mut groups: Vec<Vec<&Component>> = Vec::new();
    for c in &input.components {
        let key = saturation(&c.p, s)?;
        match keys.iter().position(|k| *k == key) {
            Some(g) => groups[g].push(c),
            None => {
                keys.push(key);
                groups.push(vec![c]);
            }
        }
    }
    let ring = i.ring();
    let mut saturated = Vec::new();
    for g in &groups {
        let meet = intersect_all(ring, g.iter().map(|c| &c.q))?;
        saturated.push(saturation(&meet, s)?);
    }
    let mut kept: Vec<bool> = vec![true; saturated.len()];
    for t in 0..saturated.len() {
        let others = intersect_all(
            ring,
            (0..saturated.len())
                .filter(|&u| u != t && kept[u])
                .map(|u| &saturated[u]),
        )?;
        if others.is_subset(&saturated[t])? {
            kept[t] = false;
        }
    }
    let tail = ideal_sum(i, &principal(ring, &star)?)?;
    let mut components = Vec::new();
    for (t, sat) in saturated.iter().enumerate().filter(|(t, _)| kept[*t]) {
        let q = ideal_intersect(sat, &tail)?;
        let comp = component(q, s).map_err(|e| match e {
            Error::PostVerification(m) => Error::PostVerification(format!("group {t}: {m}")),
            other => other,
        })?;
        components.push(comp);
    }
    let out = assemble(i, components, s)?;
    validate(&out, s).map_err(|e| Error::PostVerification(e.to_string()))?;
    if !out.minimal.is_minimal() {
        return Err(Error::PostVerification(format!(
            "result is not minimal: {:?}",
            out.minimal
        )));
    }
    Ok(out)
}

/// Evaluates both minimality conditions of `d`.
pub fn verify_minimality(d: &Decomposition, s: &MultiplicativeSet) -> Result<MinimalityReport> {
    let ring = d.target.ring();
    let comps = &d.components;
    let sat_p = comps
        .iter()
        .map(|c| saturation(&c.p, s))
        .collect::<Result<Vec<_>>>()?;
    let sat_q = comps
        .iter()
        .map(|c| saturation(&c.q, s))
        .collect::<Result<Vec<_>>>()?;
    let radical_clashes: Vec<(usize, usize)> = (0..comps.len())
        .tuple_combinations()
        .filter(|&(a, b)| sat_p[a] == sat_p[b])
        .collect();
    let mut redundant = Vec::new();
    let mut redundant_unsaturated = Vec::new();
    for k in 0..comps.len() {
        let others_sat = intersect_all(ring, (0..comps.len()).filter(|&j| j != k).map(|j| &sat_q[j]))?;
        let others = intersect_all(ring, (0..comps.len()).filter(|&j| j != k).map(|j| &comps[j].q))?;
        if others_sat.is_subset(&sat_q[k])? {
            redundant.push(k);
        }
        if others.is_subset(&sat_q[k])? {
            redundant_unsaturated.push(k);
        }
    }
    Ok(MinimalityReport {
        distinct_radicals: radical_clashes.is_empty(),
        irredundant: redundant.is_empty(),
        irredundant_unsaturated: redundant_unsaturated.is_empty(),
        forms_agree: redundant == redundant_unsaturated,
        radical_clashes,
        redundant,
        redundant_unsaturated,
    })
}

/// `(I : s)`, `I + Rs` and whether they intersect to `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonSplit {
    pub left: Ideal,
    pub right: Ideal,
    pub holds: bool,
}

/// Requires `(I : s) = (I : s^2)`; otherwise a precondition error.
pub fn colon_split_identity(i: &Ideal, s: &RingElement) -> Result<ColonSplit> {
    let ring = i.ring();
    let left = ideal::colon_element(i, s)?;
    let squared = ideal::colon_element(i, &ring.mul(s, s)?)?;
    if left != squared {
        return Err(Error::Precondition(format!(
            "(I : s) = {left:?} differs from (I : s^2) = {squared:?}"
        )));
    }
    let right = ideal_sum(i, &principal(ring, s)?)?;
    let holds = ideal_intersect(&left, &right)? == *i;
    Ok(ColonSplit { left, right, holds })
}

/// First `I` in `family` with some `s` in `S` (canonical order) such that
/// every `J ⊇ I` in the family has `sJ ⊆ I`.
pub fn find_s_maximal(family: &[Ideal], s: &MultiplicativeSet) -> Result<Option<(Ideal, RingElement)>> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    first.ring().require_finite("find_s_maximal")?;
    let elems = s.elements()?;
    for i in family {
        same_ring(i, s)?;
        let above: Vec<&Ideal> = family
            .iter()
            .filter(|j| i.is_subset(j).unwrap_or(false))
            .collect();
        for c in &elems {
            let colon = ideal::colon_element(i, c)?;
            if above.iter().all(|j| j.is_subset(&colon).unwrap_or(false)) {
                return Ok(Some((i.clone(), c.clone())));
            }
        }
    }
    Ok(None)
}
