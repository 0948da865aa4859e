use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::zz;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::ring::{FiniteRing, Ring, RingElement, RingMap};

/// A multiplicatively closed subset containing 1.
#[derive(Clone, Debug)]
pub struct MultiplicativeSet {
    ring: Ring,
    repr: MsetRepr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MsetRepr {
    /// Explicit closed set; `elements` is sorted by index.
    Finite {
        members: ElemSet,
        elements: Vec<usize>,
        gens: Vec<usize>,
    },
    /// Integers whose prime factors all lie in `primes`; negative ones too
    /// when `units` is set.
    PrimeSet { primes: Vec<u64>, units: bool },
    /// The complement of the prime ideal `pZ`.
    ComplementOfPrime(u64),
}

/// Smallest multiplicatively closed set containing `gens` and 1. Reports the
/// generator chain whose product is zero if the closure reaches 0.
pub(crate) fn closure(r: &FiniteRing, gens: &[usize]) -> Result<ElemSet> {
    let n = r.size();
    // parent[x] = (previous element, generator used)
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut members = ElemSet::from_indices(n, [r.one()]);
    let mut queue = VecDeque::from([r.one()]);
    let chain_to = |parent: &[Option<(usize, usize)>], mut x: usize| {
        let mut chain = Vec::new();
        while let Some((prev, g)) = parent[x] {
            chain.push(r.label(g).clone());
            x = prev;
        }
        chain.reverse();
        chain
    };
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = r.mul(x, g);
            if y == r.zero() {
                let mut chain = chain_to(&parent, x);
                chain.push(r.label(g).clone());
                return Err(Error::ZeroInClosure { chain });
            }
            if !members.contains(y) {
                members.insert(y);
                parent[y] = Some((x, g));
                queue.push_back(y);
            }
        }
    }
    Ok(members)
}

impl MultiplicativeSet {
    fn finite(ring: Ring, members: ElemSet, gens: Vec<usize>) -> Self {
        let elements = members.to_vec();
        MultiplicativeSet {
            ring,
            repr: MsetRepr::Finite {
                members,
                elements,
                gens,
            },
        }
    }

    /// `mset_closure`: the multiplicative set generated by `gens` in a finite ring.
    pub fn closure(ring: &Ring, gens: &[RingElement]) -> Result<Self> {
        let r = ring.require_finite("mset_closure")?;
        let idx = gens
            .iter()
            .map(|g| ring.index_of(g))
            .collect::<Result<Vec<_>>>()?;
        let members = closure(r, &idx)?;
        Ok(Self::finite(ring.clone(), members, idx))
    }

    pub fn closure_of_payloads(ring: &Ring, gens: &[Value]) -> Result<Self> {
        let elems = gens
            .iter()
            .map(|g| ring.element(g))
            .collect::<Result<Vec<_>>>()?;
        Self::closure(ring, &elems)
    }

    /// `{1}`; for the integers this is the prime set with no primes.
    pub fn trivial(ring: &Ring) -> Self {
        match ring {
            Ring::Finite(r) => {
                Self::finite(ring.clone(), ElemSet::from_indices(r.size(), [r.one()]), vec![])
            }
            Ring::Integers => MultiplicativeSet {
                ring: Ring::Integers,
                repr: MsetRepr::PrimeSet {
                    primes: vec![],
                    units: false,
                },
            },
        }
    }

    pub fn unit_group(ring: &Ring) -> Result<Self> {
        match ring {
            Ring::Finite(r) => {
                let units: Vec<usize> = (0..r.size()).filter(|&a| r.is_unit(a)).collect();
                let members = ElemSet::from_indices(r.size(), units.iter().copied());
                Ok(Self::finite(ring.clone(), members, units))
            }
            Ring::Integers => Self::prime_set(&[], true),
        }
    }

    /// An explicit element set, checked to contain 1, avoid 0 and be closed.
    pub fn from_members(ring: &Ring, members: ElemSet) -> Result<Self> {
        let r = ring.require_finite("multiplicative set")?;
        if !members.contains(r.one()) {
            return Err(Error::InvalidMultiplicativeSet("does not contain 1".into()));
        }
        if members.contains(r.zero()) {
            return Err(Error::InvalidMultiplicativeSet("contains 0".into()));
        }
        let elems = members.to_vec();
        for &a in &elems {
            for &b in &elems {
                if !members.contains(r.mul(a, b)) {
                    return Err(Error::InvalidMultiplicativeSet(format!(
                        "not closed: {} * {}",
                        r.label(a),
                        r.label(b)
                    )));
                }
            }
        }
        Ok(Self::finite(ring.clone(), members, elems))
    }

    pub fn prime_set(primes: &[u64], units: bool) -> Result<Self> {
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        if let Some(bad) = primes.iter().find(|&&p| !zz::is_prime(p)) {
            return Err(Error::InvalidMultiplicativeSet(format!("{bad} is not prime")));
        }
        Ok(MultiplicativeSet {
            ring: Ring::Integers,
            repr: MsetRepr::PrimeSet { primes, units },
        })
    }

    pub fn complement_of_prime(p: u64) -> Result<Self> {
        if !zz::is_prime(p) {
            return Err(Error::InvalidMultiplicativeSet(format!("{p} is not prime")));
        }
        Ok(MultiplicativeSet {
            ring: Ring::Integers,
            repr: MsetRepr::ComplementOfPrime(p),
        })
    }

    /// `{f(s) : s in S}` for a ring map `f`.
    pub fn image(&self, map: &RingMap) -> Result<Self> {
        if !self.ring.same_ring(map.source()) {
            return Err(Error::CrossRing);
        }
        let target = map.target().require_finite("image of a multiplicative set")?;
        let MsetRepr::Finite { elements, gens, .. } = &self.repr else {
            return Err(Error::InfiniteRing("image of a multiplicative set"));
        };
        let members = ElemSet::from_indices(
            target.size(),
            elements.iter().map(|&s| map.image_index(s)),
        );
        if members.contains(target.zero()) {
            return Err(Error::InvalidMultiplicativeSet("image contains 0".into()));
        }
        let gens = gens.iter().map(|&g| map.image_index(g)).collect();
        Ok(Self::finite(map.target().clone(), members, gens))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn repr(&self) -> &MsetRepr {
        &self.repr
    }

    /// Members in index order (finite rings only).
    pub fn finite_elements(&self) -> Option<&[usize]> {
        match &self.repr {
            MsetRepr::Finite { elements, .. } => Some(elements),
            _ => None,
        }
    }

    pub(crate) fn finite_members(&self) -> Option<&ElemSet> {
        match &self.repr {
            MsetRepr::Finite { members, .. } => Some(members),
            _ => None,
        }
    }

    pub fn generators(&self) -> Option<&[usize]> {
        match &self.repr {
            MsetRepr::Finite { gens, .. } => Some(gens),
            _ => None,
        }
    }

    pub fn len(&self) -> Option<usize> {
        self.finite_elements().map(|e| e.len())
    }

    pub fn is_trivial(&self) -> bool {
        match &self.repr {
            MsetRepr::Finite { elements, .. } => elements.len() == 1,
            MsetRepr::PrimeSet { primes, units } => primes.is_empty() && !units,
            MsetRepr::ComplementOfPrime(_) => false,
        }
    }

    /// Elements as ring elements, in index order (finite rings only).
    pub fn elements(&self) -> Result<Vec<RingElement>> {
        let elems = self
            .finite_elements()
            .ok_or(Error::InfiniteRing("listing a multiplicative set"))?;
        Ok(elems.iter().map(|&i| self.ring.elem(i)).collect())
    }

    pub fn contains(&self, e: &RingElement) -> Result<bool> {
        match &self.repr {
            MsetRepr::Finite { members, .. } => Ok(members.contains(self.ring.index_of(e)?)),
            _ => Ok(integer_in_set(&self.repr, self.ring.integer_of(e)?)),
        }
    }

    pub fn describe(&self) -> String {
        match &self.repr {
            MsetRepr::Finite { elements, .. } => {
                let r = self.ring.finite().expect("finite representation");
                let items: Vec<String> = elements.iter().map(|&i| r.label(i).to_string()).collect();
                format!("{{{}}}", items.join(", "))
            }
            MsetRepr::PrimeSet { primes, units } => {
                let sign = if *units { "+-" } else { "" };
                format!("{sign}<{primes:?}>")
            }
            MsetRepr::ComplementOfPrime(p) => format!("Z \\ {p}Z"),
        }
    }
}

pub(crate) fn integer_in_set(repr: &MsetRepr, x: &BigInt) -> bool {
    match repr {
        MsetRepr::Finite { .. } => false,
        MsetRepr::PrimeSet { primes, units } => {
            if x.is_zero() || (x.is_negative() && !units) {
                return false;
            }
            let mut rest = x.magnitude().clone();
            for &p in primes {
                let p = BigUint::from(p);
                while (&rest % &p).is_zero() {
                    rest /= &p;
                }
            }
            rest.is_one()
        }
        MsetRepr::ComplementOfPrime(p) => !(x.magnitude() % BigUint::from(*p)).is_zero(),
    }
}

/// Residues mod `n` attained by an integer multiplicative set, each paired
/// with an actual member of the set lying in that class.
#[derive(Clone, Debug)]
pub struct ResidueClasses {
    pub modulus: u64,
    /// Sorted by residue.
    pub classes: Vec<(u64, BigInt)>,
}

impl ResidueClasses {
    pub fn of(repr: &MsetRepr, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Unsupported("residues modulo 0".into()));
        }
        let mut classes = match repr {
            MsetRepr::Finite { .. } => {
                return Err(Error::Unsupported("residues of a finite multiplicative set".into()))
            }
            MsetRepr::PrimeSet { primes, units } => {
                let mut step: Vec<(u64, BigInt)> = primes
                    .iter()
                    .map(|&p| (p % n, BigInt::from(p)))
                    .collect();
                if *units {
                    step.push(((n - 1) % n, BigInt::from(-1)));
                }
                let mut rep: Vec<Option<BigInt>> = vec![None; n as usize];
                rep[(1 % n) as usize] = Some(BigInt::one());
                let mut queue = VecDeque::from([1 % n]);
                while let Some(r) = queue.pop_front() {
                    let x = rep[r as usize].clone().expect("queued residues have a representative");
                    for (g, gv) in &step {
                        let next = ((r as u128 * *g as u128) % n as u128) as u64;
                        if rep[next as usize].is_none() {
                            rep[next as usize] = Some(&x * gv);
                            queue.push_back(next);
                        }
                    }
                }
                rep.into_iter()
                    .enumerate()
                    .filter_map(|(r, x)| x.map(|x| (r as u64, x)))
                    .collect::<Vec<_>>()
            }
            MsetRepr::ComplementOfPrime(p) => {
                let p = *p;
                (0..n)
                    .filter_map(|r| {
                        // smallest positive x = r (mod n) outside pZ, if any
                        (0..=p)
                            .map(|k| r + k * n)
                            .find(|&x| x > 0 && x % p != 0)
                            .map(|x| (r, BigInt::from(x)))
                    })
                    .collect()
            }
        };
        classes.sort_by_key(|(r, _)| *r);
        Ok(ResidueClasses {
            modulus: n,
            classes,
        })
    }

    pub fn contains_residue(&self, r: u64) -> bool {
        self.classes.binary_search_by_key(&r, |(x, _)| *x).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{construct_ring, RingSpec};
    use serde_json::json;

    fn zmod(n: u64) -> Ring {
        construct_ring(&RingSpec::zmod(n)).unwrap()
    }

    #[test]
    fn closure_examples() {
        let r = zmod(12);
        let s = MultiplicativeSet::closure_of_payloads(&r, &[json!(5)]).unwrap();
        assert_eq!(s.finite_elements().unwrap(), &[1, 5]);
        let t = MultiplicativeSet::closure(&r, &[]).unwrap();
        assert_eq!(t.finite_elements().unwrap(), &[1]);
        match MultiplicativeSet::closure_of_payloads(&r, &[json!(6)]) {
            Err(Error::ZeroInClosure { chain }) => assert_eq!(chain, vec![json!(6), json!(6)]),
            other => panic!("expected zero in closure, got {other:?}"),
        }
    }

    #[test]
    fn integer_membership() {
        let s = MultiplicativeSet::complement_of_prime(3).unwrap();
        assert!(s.contains(&RingElement::Integer(4.into())).unwrap());
        assert!(!s.contains(&RingElement::Integer(6.into())).unwrap());
        let t = MultiplicativeSet::prime_set(&[2, 5], false).unwrap();
        assert!(t.contains(&RingElement::Integer(40.into())).unwrap());
        assert!(!t.contains(&RingElement::Integer((-40).into())).unwrap());
        assert!(!t.contains(&RingElement::Integer(0.into())).unwrap());
        assert!(MultiplicativeSet::prime_set(&[4], true).is_err());
    }

    #[test]
    fn residues_of_complement() {
        let s = MultiplicativeSet::complement_of_prime(3).unwrap();
        let res = ResidueClasses::of(s.repr(), 6).unwrap();
        let rs: Vec<u64> = res.classes.iter().map(|c| c.0).collect();
        assert_eq!(rs, vec![1, 2, 4, 5]);
        // 3 does not divide 4, so every residue mod 4 is attained
        let all = ResidueClasses::of(s.repr(), 4).unwrap();
        assert_eq!(all.classes.len(), 4);
        assert_eq!(all.classes[0].1, BigInt::from(4));
        assert_eq!(all.classes[3].1, BigInt::from(7));
    }

    #[test]
    fn residues_of_prime_set() {
        let s = MultiplicativeSet::prime_set(&[2], true).unwrap();
        let res = ResidueClasses::of(s.repr(), 36).unwrap();
        for (r, x) in &res.classes {
            assert_eq!(BigInt::from(*r), num_integer::Integer::mod_floor(x, &BigInt::from(36)));
            assert!(integer_in_set(s.repr(), x));
        }
        assert!(res.contains_residue(35));
        assert!(!res.contains_residue(0));
    }
}
