//! Ideals and multiplicative sets: generation, lattice operations, colon,
//! radical, saturation and exhaustive enumeration.

pub(crate) mod lattice;
pub(crate) mod mset;
pub mod zz;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::Value;

pub use mset::{MsetRepr, MultiplicativeSet, ResidueClasses};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::ring::build::{localization, quotient, BuildOptions};
use crate::ring::{integer_payload, Ring, RingElement, RingMap, RingSpec};

/// An ideal of a [`Ring`]: a membership mask for finite rings, a single
/// non-negative generator `n` (the ideal `nZ`) for the integers.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    repr: IdealRepr,
    gens: OnceLock<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IdealRepr {
    Finite(ElemSet),
    Principal(BigUint),
}

impl Ideal {
    pub(crate) fn from_set(ring: &Ring, set: ElemSet) -> Ideal {
        Ideal {
            ring: ring.clone(),
            repr: IdealRepr::Finite(set),
            gens: OnceLock::new(),
        }
    }

    /// The ideal `nZ` of the integers.
    pub fn integers(n: impl Into<BigUint>) -> Ideal {
        Ideal {
            ring: Ring::Integers,
            repr: IdealRepr::Principal(n.into()),
            gens: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn repr(&self) -> &IdealRepr {
        &self.repr
    }

    pub fn members(&self) -> Option<&ElemSet> {
        match &self.repr {
            IdealRepr::Finite(s) => Some(s),
            IdealRepr::Principal(_) => None,
        }
    }

    pub(crate) fn set(&self) -> &ElemSet {
        self.members().expect("finite ideal")
    }

    /// Generator `n` of `nZ`.
    pub fn generator(&self) -> Option<&BigUint> {
        match &self.repr {
            IdealRepr::Principal(n) => Some(n),
            IdealRepr::Finite(_) => None,
        }
    }

    /// Generating set of a finite ideal, as element indices.
    pub fn generator_indices(&self) -> Vec<usize> {
        match (&self.repr, &self.ring) {
            (IdealRepr::Finite(s), Ring::Finite(r)) => {
                self.gens.get_or_init(|| lattice::generators(r, s)).clone()
            }
            _ => vec![],
        }
    }

    /// Generators as ring elements; for `nZ` the single element `n`.
    pub fn generators(&self) -> Vec<RingElement> {
        match &self.repr {
            IdealRepr::Finite(_) => self
                .generator_indices()
                .into_iter()
                .map(|i| self.ring.elem(i))
                .collect(),
            IdealRepr::Principal(n) => vec![RingElement::Integer(BigInt::from(n.clone()))],
        }
    }

    pub fn generator_payloads(&self) -> Vec<Value> {
        match (&self.repr, &self.ring) {
            (IdealRepr::Finite(_), Ring::Finite(r)) => self
                .generator_indices()
                .into_iter()
                .map(|i| r.label(i).clone())
                .collect(),
            (IdealRepr::Principal(n), _) => vec![integer_payload(&BigInt::from(n.clone()))],
            _ => unreachable!("representation matches ring"),
        }
    }

    /// Number of elements, `None` for nonzero ideals of the integers.
    pub fn cardinality(&self) -> Option<usize> {
        match &self.repr {
            IdealRepr::Finite(s) => Some(s.len()),
            IdealRepr::Principal(n) if n.is_zero() => Some(1),
            IdealRepr::Principal(_) => None,
        }
    }

    pub fn contains(&self, e: &RingElement) -> Result<bool> {
        match &self.repr {
            IdealRepr::Finite(s) => Ok(s.contains(self.ring.index_of(e)?)),
            IdealRepr::Principal(n) => {
                let x = self.ring.integer_of(e)?;
                Ok(if n.is_zero() {
                    x.is_zero()
                } else {
                    (x.magnitude() % n).is_zero()
                })
            }
        }
    }

    pub fn is_proper(&self) -> bool {
        match (&self.repr, &self.ring) {
            (IdealRepr::Finite(s), Ring::Finite(r)) => !s.contains(r.one()),
            (IdealRepr::Principal(n), _) => !n.is_one(),
            _ => unreachable!("representation matches ring"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            IdealRepr::Finite(s) => s.len() == 1,
            IdealRepr::Principal(n) => n.is_zero(),
        }
    }

    /// `self` is contained in `other`.
    pub fn is_subset(&self, other: &Ideal) -> Result<bool> {
        match (&self.repr, &other.repr) {
            (IdealRepr::Finite(a), IdealRepr::Finite(b)) if self.ring.same_ring(&other.ring) => {
                Ok(a.is_subset(b))
            }
            (IdealRepr::Principal(a), IdealRepr::Principal(b)) => Ok(if b.is_zero() {
                a.is_zero()
            } else {
                (a % b).is_zero()
            }),
            _ => Err(Error::CrossRing),
        }
    }

    pub(crate) fn require_proper(&self) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(Error::ImproperIdeal)
        }
    }

    pub fn describe(&self) -> String {
        match &self.repr {
            IdealRepr::Principal(n) => format!("{n}Z"),
            IdealRepr::Finite(_) => {
                let gens: Vec<String> = self.generator_payloads().iter().map(|g| g.to_string()).collect();
                if gens.is_empty() {
                    return "(0)".into();
                }
                format!("({})", gens.join(", "))
            }
        }
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.repr == other.repr
    }
}

impl Eq for Ideal {}

impl Hash for Ideal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.id().hash(state);
        self.repr.hash(state);
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn same_ring(i: &Ideal, j: &Ideal) -> Result<()> {
    if i.ring.same_ring(&j.ring) {
        Ok(())
    } else {
        Err(Error::CrossRing)
    }
}

pub fn zero_ideal(ring: &Ring) -> Ideal {
    match ring {
        Ring::Finite(r) => Ideal::from_set(ring, lattice::zero(r)),
        Ring::Integers => Ideal::integers(0u32),
    }
}

pub fn unit_ideal(ring: &Ring) -> Ideal {
    match ring {
        Ring::Finite(r) => Ideal::from_set(ring, lattice::whole(r)),
        Ring::Integers => Ideal::integers(1u32),
    }
}

/// Smallest ideal containing `gens`.
pub fn ideal_generate(ring: &Ring, gens: &[RingElement]) -> Result<Ideal> {
    match ring {
        Ring::Finite(r) => {
            let idx = gens
                .iter()
                .map(|g| ring.index_of(g))
                .collect::<Result<Vec<_>>>()?;
            Ok(Ideal::from_set(ring, lattice::generate(r, &idx)))
        }
        Ring::Integers => {
            let mut g = BigUint::zero();
            for x in gens {
                g = g.gcd(ring.integer_of(x)?.magnitude());
            }
            Ok(Ideal::integers(g))
        }
    }
}

pub fn ideal_from_payloads(ring: &Ring, gens: &[Value]) -> Result<Ideal> {
    let elems = gens
        .iter()
        .map(|g| ring.element(g))
        .collect::<Result<Vec<_>>>()?;
    ideal_generate(ring, &elems)
}

/// Principal ideal `aR`.
pub fn principal(ring: &Ring, a: &RingElement) -> Result<Ideal> {
    ideal_generate(ring, std::slice::from_ref(a))
}

pub fn ideal_sum(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    Ok(match (&i.repr, &j.repr, &i.ring) {
        (IdealRepr::Finite(a), IdealRepr::Finite(b), Ring::Finite(r)) => {
            Ideal::from_set(&i.ring, lattice::sum(r, a, b))
        }
        (IdealRepr::Principal(a), IdealRepr::Principal(b), _) => Ideal::integers(a.gcd(b)),
        _ => return Err(Error::CrossRing),
    })
}

pub fn ideal_intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    Ok(match (&i.repr, &j.repr) {
        (IdealRepr::Finite(a), IdealRepr::Finite(b)) => Ideal::from_set(&i.ring, a.intersection(b)),
        (IdealRepr::Principal(a), IdealRepr::Principal(b)) => Ideal::integers(zz::lcm(a, b)),
        _ => return Err(Error::CrossRing),
    })
}

/// Intersection of a list; the unit ideal for an empty list.
pub fn intersect_all<'a>(ring: &Ring, ideals: impl IntoIterator<Item = &'a Ideal>) -> Result<Ideal> {
    ideals
        .into_iter()
        .try_fold(unit_ideal(ring), |acc, q| ideal_intersect(&acc, q))
}

pub fn ideal_product(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    Ok(match (&i.repr, &j.repr, &i.ring) {
        (IdealRepr::Finite(a), IdealRepr::Finite(b), Ring::Finite(r)) => {
            Ideal::from_set(&i.ring, lattice::product(r, a, b))
        }
        (IdealRepr::Principal(a), IdealRepr::Principal(b), _) => Ideal::integers(a * b),
        _ => return Err(Error::CrossRing),
    })
}

/// Right-hand side of a colon ideal.
#[derive(Clone, Debug)]
pub enum ColonBy<'a> {
    Element(&'a RingElement),
    Ideal(&'a Ideal),
}

/// `(I : s) = {a : sa in I}` or `(I : J) = {a : aJ in I}`.
pub fn ideal_colon(i: &Ideal, by: ColonBy<'_>) -> Result<Ideal> {
    match by {
        ColonBy::Element(s) => colon_element(i, s),
        ColonBy::Ideal(j) => {
            same_ring(i, j)?;
            match (&i.repr, &j.repr, &i.ring) {
                (IdealRepr::Finite(a), IdealRepr::Finite(b), Ring::Finite(r)) => {
                    Ok(Ideal::from_set(&i.ring, lattice::colon_ideal(r, a, b)))
                }
                (IdealRepr::Principal(n), IdealRepr::Principal(m), _) => {
                    Ok(Ideal::integers(zz::colon(n, m)))
                }
                _ => Err(Error::CrossRing),
            }
        }
    }
}

pub fn colon_element(i: &Ideal, s: &RingElement) -> Result<Ideal> {
    match (&i.repr, &i.ring) {
        (IdealRepr::Finite(a), Ring::Finite(r)) => Ok(Ideal::from_set(
            &i.ring,
            lattice::colon_elem(r, a, i.ring.index_of(s)?),
        )),
        (IdealRepr::Principal(n), _) => Ok(Ideal::integers(zz::colon(
            n,
            i.ring.integer_of(s)?.magnitude(),
        ))),
        _ => unreachable!("representation matches ring"),
    }
}

/// `{a : a^k in I for some k}`.
pub fn radical(i: &Ideal) -> Ideal {
    match (&i.repr, &i.ring) {
        (IdealRepr::Finite(a), Ring::Finite(r)) => Ideal::from_set(&i.ring, lattice::radical(r, a)),
        (IdealRepr::Principal(n), _) => Ideal::integers(zz::radical(n)),
        _ => unreachable!("representation matches ring"),
    }
}

/// `S(I) = {a : sa in I for some s in S}`.
pub fn saturation(i: &Ideal, s: &MultiplicativeSet) -> Result<Ideal> {
    if !i.ring.same_ring(s.ring()) {
        return Err(Error::CrossRing);
    }
    match (&i.repr, s.repr(), &i.ring) {
        (IdealRepr::Finite(a), MsetRepr::Finite { elements, .. }, Ring::Finite(r)) => {
            Ok(Ideal::from_set(&i.ring, lattice::saturation(r, a, elements)))
        }
        (IdealRepr::Principal(n), MsetRepr::PrimeSet { primes, .. }, _) => {
            if n.is_zero() {
                return Ok(i.clone());
            }
            let (_, outside) = zz::split_by(n, |p| primes.iter().any(|&q| BigUint::from(q) == *p));
            Ok(Ideal::integers(outside))
        }
        (IdealRepr::Principal(n), MsetRepr::ComplementOfPrime(p), _) => {
            if n.is_zero() {
                return Ok(i.clone());
            }
            let e = zz::valuation(n, *p);
            Ok(Ideal::integers(num_traits::pow(BigUint::from(*p), e as usize)))
        }
        _ => Err(Error::CrossRing),
    }
}

/// Every ideal of a finite ring, ordered by cardinality then membership mask.
pub fn enumerate_ideals(ring: &Ring) -> Result<Vec<Ideal>> {
    let r = ring.require_finite("enumerate_ideals")?;
    Ok(r.ideal_cache()
        .iter()
        .map(|s| Ideal::from_set(ring, s.clone()))
        .collect())
}

/// `Nil(R)`, the radical of the zero ideal.
pub fn nilradical(ring: &Ring) -> Ideal {
    match ring {
        Ring::Finite(r) => Ideal::from_set(ring, r.nilradical_cache().clone()),
        Ring::Integers => Ideal::integers(0u32),
    }
}

/// `I` is divided: `I` is contained in `aR` for every `a` outside `I`.
pub fn is_divided(i: &Ideal) -> bool {
    match (&i.repr, &i.ring) {
        (IdealRepr::Finite(set), Ring::Finite(r)) => (0..r.size())
            .filter(|&a| !set.contains(a))
            .all(|a| set.is_subset(&lattice::principal(r, a))),
        // nZ lies in aZ for every a outside nZ only when nothing is outside
        // (n = 1) or n = 0; for n >= 2 take a = n + 1.
        (IdealRepr::Principal(n), _) => n.is_zero() || n.is_one(),
        _ => unreachable!("representation matches ring"),
    }
}

/// `I` and `S` have no common element.
pub fn disjoint_from(i: &Ideal, s: &MultiplicativeSet) -> Result<bool> {
    if !i.ring.same_ring(s.ring()) {
        return Err(Error::CrossRing);
    }
    Ok(match (&i.repr, s.repr()) {
        (IdealRepr::Finite(a), MsetRepr::Finite { members, .. }) => a.is_disjoint(members),
        (IdealRepr::Principal(n), MsetRepr::PrimeSet { primes, .. }) => {
            n.is_zero()
                || zz::factorize(n)
                    .iter()
                    .any(|(p, _)| !primes.iter().any(|&q| BigUint::from(q) == *p))
        }
        (IdealRepr::Principal(n), MsetRepr::ComplementOfPrime(p)) => (n % BigUint::from(*p)).is_zero(),
        _ => return Err(Error::CrossRing),
    })
}

pub(crate) fn require_disjoint(i: &Ideal, s: &MultiplicativeSet) -> Result<()> {
    if disjoint_from(i, s)? {
        Ok(())
    } else {
        Err(Error::MeetsMultiplicativeSet)
    }
}

/// `R / I` together with the projection `R -> R/I`.
pub fn quotient_ring(ring: &Ring, i: &Ideal) -> Result<(Ring, RingMap)> {
    quotient_ring_with(ring, i, &BuildOptions::default())
}

pub fn quotient_ring_with(ring: &Ring, i: &Ideal, opts: &BuildOptions) -> Result<(Ring, RingMap)> {
    let r = ring.require_finite("quotient_ring")?;
    if !ring.same_ring(&i.ring) {
        return Err(Error::CrossRing);
    }
    i.require_proper()?;
    let spec = RingSpec::quotient(r.spec().clone(), i.generator_payloads());
    let (q, projection) = quotient(spec, r, i.set(), opts)?;
    let target = Ring::Finite(std::sync::Arc::new(q));
    Ok((target.clone(), RingMap::new(ring.clone(), target, projection)))
}

/// `S^-1 R` together with the canonical map `a -> a/1`.
pub fn localize(ring: &Ring, s: &MultiplicativeSet) -> Result<(Ring, RingMap)> {
    localize_with(ring, s, &BuildOptions::default())
}

pub fn localize_with(ring: &Ring, s: &MultiplicativeSet, opts: &BuildOptions) -> Result<(Ring, RingMap)> {
    let r = ring.require_finite("localize")?;
    if !ring.same_ring(s.ring()) {
        return Err(Error::CrossRing);
    }
    let members = s.finite_members().expect("finite ring has a finite multiplicative set");
    let gens = s
        .generators()
        .expect("finite multiplicative set")
        .iter()
        .map(|&g| r.label(g).clone())
        .collect();
    let spec = RingSpec::localization(r.spec().clone(), gens);
    let (loc, canonical) = localization(spec, r, members, opts)?;
    let target = Ring::Finite(std::sync::Arc::new(loc));
    Ok((target.clone(), RingMap::new(ring.clone(), target, canonical)))
}

/// Ideal of the target generated by the image of `i`.
pub fn image_ideal(map: &RingMap, i: &Ideal) -> Result<Ideal> {
    if !map.source().same_ring(&i.ring) {
        return Err(Error::CrossRing);
    }
    let t = map.target().require_finite("image ideal")?;
    let images: Vec<usize> = i.set().iter().map(|a| map.image_index(a)).collect();
    Ok(Ideal::from_set(map.target(), lattice::generate(t, &images)))
}

/// `{a : f(a) in J}`.
pub fn preimage_ideal(map: &RingMap, j: &Ideal) -> Result<Ideal> {
    if !map.target().same_ring(&j.ring) {
        return Err(Error::CrossRing);
    }
    let s = map.source().require_finite("preimage ideal")?;
    let set = ElemSet::from_indices(
        s.size(),
        (0..s.size()).filter(|&a| j.set().contains(map.image_index(a))),
    );
    Ok(Ideal::from_set(map.source(), set))
}
