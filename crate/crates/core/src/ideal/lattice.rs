//! Ideal arithmetic on membership bitmasks of a finite ring.

use std::collections::HashSet;

use crate::elemset::ElemSet;
use crate::ring::FiniteRing;

pub fn zero(r: &FiniteRing) -> ElemSet {
    ElemSet::from_indices(r.size(), [r.zero()])
}

pub fn whole(r: &FiniteRing) -> ElemSet {
    ElemSet::full(r.size())
}

/// `aR`, which is already closed under addition.
pub fn principal(r: &FiniteRing, a: usize) -> ElemSet {
    ElemSet::from_indices(r.size(), r.mul_row(a).iter().map(|&x| x as usize))
}

pub fn sum(r: &FiniteRing, i: &ElemSet, j: &ElemSet) -> ElemSet {
    if i.is_subset(j) {
        return j.clone();
    }
    if j.is_subset(i) {
        return i.clone();
    }
    let right = j.to_vec();
    let mut out = ElemSet::empty(r.size());
    for a in i.iter() {
        for &b in &right {
            out.insert(r.add(a, b));
        }
    }
    out
}

pub fn generate(r: &FiniteRing, gens: &[usize]) -> ElemSet {
    gens.iter()
        .fold(zero(r), |acc, &g| sum(r, &acc, &principal(r, g)))
}

pub fn product(r: &FiniteRing, i: &ElemSet, j: &ElemSet) -> ElemSet {
    let right = j.to_vec();
    let mut products = ElemSet::empty(r.size());
    for a in i.iter() {
        for &b in &right {
            products.insert(r.mul(a, b));
        }
    }
    generate(r, &products.to_vec())
}

/// `(I : s) = {a : sa in I}`.
pub fn colon_elem(r: &FiniteRing, i: &ElemSet, s: usize) -> ElemSet {
    let row = r.mul_row(s);
    ElemSet::from_indices(
        r.size(),
        (0..r.size()).filter(|&a| i.contains(row[a] as usize)),
    )
}

/// `(I : J) = {a : aJ in I}`.
pub fn colon_ideal(r: &FiniteRing, i: &ElemSet, j: &ElemSet) -> ElemSet {
    j.iter().fold(whole(r), |acc, b| acc.intersection(&colon_elem(r, i, b)))
}

/// Powers up to `|R|` suffice: the sequence `a, a^2, ...` is eventually
/// periodic with preperiod below `|R|`, and an ideal containing some
/// power contains all later ones.
pub fn radical(r: &FiniteRing, i: &ElemSet) -> ElemSet {
    let n = r.size();
    let mut out = ElemSet::empty(n);
    for a in 0..n {
        let mut x = a;
        for _ in 0..n {
            if i.contains(x) {
                out.insert(a);
                break;
            }
            x = r.mul(x, a);
        }
    }
    out
}

/// `S(I)`: union of `(I : s)` over the elements of `S`.
pub fn saturation(r: &FiniteRing, i: &ElemSet, mset: &[usize]) -> ElemSet {
    let mut out = ElemSet::empty(r.size());
    for &s in mset {
        out.union_with(&colon_elem(r, i, s));
    }
    out
}

#[cfg(test)]
pub fn is_ideal(r: &FiniteRing, set: &ElemSet) -> bool {
    if !set.contains(r.zero()) {
        return false;
    }
    let members = set.to_vec();
    members.iter().all(|&a| {
        members.iter().all(|&b| set.contains(r.add(a, b)))
            && (0..r.size()).all(|x| set.contains(r.mul(a, x)))
    })
}

/// Greedy generating set: scan members in index order and keep those not
/// already generated.
pub fn generators(r: &FiniteRing, i: &ElemSet) -> Vec<usize> {
    let mut current = zero(r);
    let mut gens = Vec::new();
    for a in i.iter() {
        if !current.contains(a) {
            current = sum(r, &current, &principal(r, a));
            gens.push(a);
        }
        if current == *i {
            break;
        }
    }
    gens
}

/// All ideals: principal ideals closed under pairwise sums, sorted by
/// cardinality and then by membership mask.
pub fn enumerate(r: &FiniteRing) -> Vec<ElemSet> {
    let mut known: HashSet<ElemSet> = HashSet::new();
    let mut all: Vec<ElemSet> = Vec::new();
    for a in 0..r.size() {
        let p = principal(r, a);
        if known.insert(p.clone()) {
            all.push(p);
        }
    }
    let mut frontier = 0;
    while frontier < all.len() {
        let x = all[frontier].clone();
        for k in 0..all.len() {
            let s = sum(r, &x, &all[k]);
            if known.insert(s.clone()) {
                all.push(s);
            }
        }
        frontier += 1;
    }
    all.sort();
    all
}
