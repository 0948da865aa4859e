//! Table-driven searches for finite rings.
//!
//! For the S-primary condition with fixed `s`: `ab in Q` means `b in (Q:a)`,
//! so `s` works iff every `a` with `sa ∉ Q` has `(Q:a) ⊆ (rad Q : s)`. The
//! first failing `a` and the first `b` outside that colon give the
//! lexicographically first violating pair.

use std::collections::HashSet;

use super::{
    IrreducibilityCertificate, IrreducibilityCounterexample, Refutation, SFiniteCertificate,
    SPrimaryCertificate, Universe,
};
use crate::elemset::ElemSet;
use crate::ideal::lattice;
use crate::ideal::{Ideal, MultiplicativeSet};
use crate::ring::FiniteRing;

fn colons(r: &FiniteRing, q: &ElemSet) -> Vec<ElemSet> {
    (0..r.size()).map(|a| lattice::colon_elem(r, q, a)).collect()
}

/// First `(a, b)` with `ab in Q`, `sa ∉ Q`, `sb ∉ target`.
fn violation(r: &FiniteRing, q: &ElemSet, cols: &[ElemSet], target: &ElemSet, s: usize) -> Option<(usize, usize)> {
    let bound = lattice::colon_elem(r, target, s);
    let row = r.mul_row(s);
    (0..r.size())
        .filter(|&a| !q.contains(row[a] as usize))
        .find_map(|a| cols[a].first_outside(&bound).map(|b| (a, b)))
}

pub(super) fn s_primary(q: &Ideal, target: &Ideal, s: &MultiplicativeSet) -> SPrimaryCertificate {
    let ring = q.ring();
    let r = ring.finite().expect("finite ring");
    let cols = colons(r, q.set());
    let candidates = s.finite_elements().expect("finite multiplicative set");
    let mut refutations = Vec::new();
    let mut witness = None;
    for &c in candidates {
        match violation(r, q.set(), &cols, target.set(), c) {
            Some((a, b)) => refutations.push(Refutation {
                s: ring.elem(c),
                a: ring.elem(a),
                b: ring.elem(b),
            }),
            None => {
                witness = Some(ring.elem(c));
                break;
            }
        }
    }
    let tried = refutations.len() + usize::from(witness.is_some());
    SPrimaryCertificate {
        verdict: witness.is_some(),
        counterexample: match witness {
            Some(_) => None,
            None => refutations.first().map(|f| (f.a.clone(), f.b.clone())),
        },
        witness,
        refutations,
        universe: Universe {
            description: format!(
                "all {} ordered pairs of {}; s over {} elements of S",
                r.size() * r.size(),
                ring.describe(),
                candidates.len()
            ),
            candidates: tried as u64,
        },
    }
}

fn ideals_above(r: &FiniteRing, q: &ElemSet) -> Vec<ElemSet> {
    r.ideal_cache()
        .iter()
        .filter(|i| q.is_subset(i))
        .cloned()
        .collect()
}

pub(super) fn irreducible(q: &Ideal) -> bool {
    let r = q.ring().finite().expect("finite ring");
    let above: Vec<ElemSet> = ideals_above(r, q.set())
        .into_iter()
        .filter(|i| i != q.set())
        .collect();
    !above.iter().enumerate().any(|(k, i)| {
        above[k + 1..]
            .iter()
            .any(|j| i.intersection(j) == *q.set())
    })
}

/// Comparable pairs satisfy the conclusion with `s' = 1` (the smaller ideal
/// is the intersection and lies in `(Q:s)`), as do pairs containing `Q`
/// itself, so only incomparable pairs strictly above `Q` are searched.
pub(super) fn s_irreducible(q: &Ideal, s: &MultiplicativeSet) -> IrreducibilityCertificate {
    let ring = q.ring();
    let r = ring.finite().expect("finite ring");
    let qs = q.set();
    let elems = s.finite_elements().expect("finite multiplicative set");
    let above: Vec<ElemSet> = ideals_above(r, qs).into_iter().filter(|i| i != qs).collect();
    let hyp: Vec<ElemSet> = elems.iter().map(|&c| lattice::colon_elem(r, qs, c)).collect();
    // distinct (Q : ss') for each s
    let conclusions: Vec<Vec<ElemSet>> = elems
        .iter()
        .map(|&c| {
            let mut seen = HashSet::new();
            elems
                .iter()
                .map(|&d| lattice::colon_elem(r, qs, r.mul(c, d)))
                .filter(|x| seen.insert(x.clone()))
                .collect()
        })
        .collect();
    let mut counterexample = None;
    'search: for (k, i) in above.iter().enumerate() {
        for j in &above[k + 1..] {
            if i.is_subset(j) || j.is_subset(i) {
                continue;
            }
            let meet = i.intersection(j);
            for (t, &c) in elems.iter().enumerate() {
                if !meet.is_subset(&hyp[t]) {
                    continue;
                }
                let ok = conclusions[t]
                    .iter()
                    .any(|col| i.is_subset(col) || j.is_subset(col));
                if !ok {
                    counterexample = Some(IrreducibilityCounterexample {
                        i: Ideal::from_set(ring, i.clone()),
                        j: Ideal::from_set(ring, j.clone()),
                        s: ring.elem(c),
                    });
                    break 'search;
                }
            }
        }
    }
    IrreducibilityCertificate {
        verdict: counterexample.is_none(),
        counterexample,
        universe: Universe {
            description: format!(
                "{} ideals above Q in {}; s, s' over {} elements of S",
                above.len() + 1,
                ring.describe(),
                elems.len()
            ),
            candidates: elems.len() as u64,
        },
    }
}

/// Ideals contained in `I`, with `I` first and then canonical order.
fn ideals_below(r: &FiniteRing, i: &ElemSet) -> Vec<ElemSet> {
    std::iter::once(i.clone())
        .chain(r.ideal_cache().iter().filter(|j| j.is_subset(i) && *j != i).cloned())
        .collect()
}

fn scale(r: &FiniteRing, s: usize, i: &ElemSet) -> ElemSet {
    ElemSet::from_indices(r.size(), i.iter().map(|a| r.mul(s, a)))
}

pub(super) fn s_finite(i: &Ideal, s: &MultiplicativeSet) -> SFiniteCertificate {
    let ring = i.ring();
    let r = ring.finite().expect("finite ring");
    let elems = s.finite_elements().expect("finite multiplicative set");
    let below = ideals_below(r, i.set());
    let mut tried = 0u64;
    for &c in elems {
        tried += 1;
        let si = scale(r, c, i.set());
        if let Some(j) = below.iter().find(|j| si.is_subset(j)) {
            return SFiniteCertificate {
                verdict: true,
                s: Some(ring.elem(c)),
                j: Some(Ideal::from_set(ring, j.clone())),
                n: None,
                universe: Universe {
                    description: format!("{} ideals J ⊆ I in {}", below.len(), ring.describe()),
                    candidates: tried,
                },
            };
        }
    }
    unreachable!("J = I, s = 1 always works")
}

fn powers_land_in(r: &FiniteRing, i: &ElemSet, f: &ElemSet, n: u64) -> bool {
    i.iter().all(|x| f.contains(r.pow(x, n)))
}

pub(super) fn sft_exponent(i: &Ideal, f: &Ideal) -> Option<u64> {
    let r = i.ring().finite().expect("finite ring");
    (1..=r.size() as u64).find(|&n| powers_land_in(r, i.set(), f.set(), n))
}

/// Smallest `n` first, then `F` with `F = I` first. With `S` given, `F`
/// must be S-finite and the certificate records its `s`.
pub(super) fn sft(i: &Ideal, s: Option<&MultiplicativeSet>) -> SFiniteCertificate {
    let ring = i.ring();
    let r = ring.finite().expect("finite ring");
    let below = ideals_below(r, i.set());
    for n in 1..=r.size() as u64 {
        for f in &below {
            if !powers_land_in(r, i.set(), f, n) {
                continue;
            }
            let f_ideal = Ideal::from_set(ring, f.clone());
            let witness = match s {
                Some(s) => s_finite(&f_ideal, s).s,
                None => None,
            };
            return SFiniteCertificate {
                verdict: true,
                s: witness,
                j: Some(f_ideal),
                n: Some(n),
                universe: Universe {
                    description: format!(
                        "n up to {}, {} ideals F ⊆ I in {}",
                        r.size(),
                        below.len(),
                        ring.describe()
                    ),
                    candidates: n,
                },
            };
        }
    }
    unreachable!("F = I, n = 1 always works")
}

pub(super) fn radically_s_finite(i: &Ideal, s: &MultiplicativeSet) -> SFiniteCertificate {
    let ring = i.ring();
    let r = ring.finite().expect("finite ring");
    let elems = s.finite_elements().expect("finite multiplicative set");
    let rad_i = lattice::radical(r, i.set());
    let candidates: Vec<ElemSet> = std::iter::once(i.set().clone())
        .chain(r.ideal_cache().iter().filter(|j| *j != i.set()).cloned())
        .collect();
    let radicals: Vec<ElemSet> = candidates.iter().map(|j| lattice::radical(r, j)).collect();
    let mut tried = 0u64;
    for &c in elems {
        tried += 1;
        let si = scale(r, c, i.set());
        let found = radicals
            .iter()
            .position(|rj| si.is_subset(rj) && rj.is_subset(&rad_i));
        if let Some(k) = found {
            return SFiniteCertificate {
                verdict: true,
                s: Some(ring.elem(c)),
                j: Some(Ideal::from_set(ring, candidates[k].clone())),
                n: None,
                universe: Universe {
                    description: format!("{} ideals J of {}", candidates.len(), ring.describe()),
                    candidates: tried,
                },
            };
        }
    }
    SFiniteCertificate {
        verdict: false,
        s: None,
        j: None,
        n: None,
        universe: Universe {
            description: format!("{} ideals J of {}", candidates.len(), ring.describe()),
            candidates: tried,
        },
    }
}

pub(super) fn witness_holds(q: &Ideal, s: usize) -> bool {
    let r = q.ring().finite().expect("finite ring");
    let rad = lattice::radical(r, q.set());
    violation(r, q.set(), &colons(r, q.set()), &rad, s).is_none()
}
