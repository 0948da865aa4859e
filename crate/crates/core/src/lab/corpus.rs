use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MultiplicativeSet;
use crate::ring::{construct_ring_with, BuildOptions, Ring, RingSpec, DEFAULT_SIZE_CAP};

/// Which multiplicative sets accompany each ring. Duplicates (by member
/// set) are dropped, keeping the first occurrence in the order
/// `{1}`, closures of single elements, unit group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MsetPolicy {
    pub trivial: bool,
    pub singletons: bool,
    pub unit_group: bool,
}

impl Default for MsetPolicy {
    fn default() -> Self {
        MsetPolicy {
            trivial: true,
            singletons: true,
            unit_group: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusSpec {
    /// `zmod(n)` for each listed modulus.
    pub moduli: Vec<u64>,
    /// Products `zmod(p^a) x zmod(q^b)` of at most this size; 0 disables.
    pub product_max_size: u64,
    /// `zmod(n)(+)Z/m` with the reduction action, as `(n, m)`.
    pub idealizations: Vec<(u64, u64)>,
    /// `F_p[x]/(f)` with ascending coefficients.
    pub poly_quotients: Vec<(u64, Vec<i64>)>,
    /// Rings above this size are left out.
    pub size_cap: usize,
    pub mset_policy: MsetPolicy,
    pub seed: u64,
    /// Integer instances `nZ` for `2 <= n <= integer_bound`.
    pub integer_bound: u64,
    /// Extra seeded `n` in `(integer_bound, 10 * integer_bound]` per set.
    pub integer_samples: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            moduli: (2..=60).collect(),
            product_max_size: 64,
            idealizations: vec![(4, 2), (9, 3), (8, 4)],
            poly_quotients: vec![
                (2, vec![0, 0, 0, 1]),
                (3, vec![0, 0, 1]),
                (2, vec![1, 1, 0, 1]),
                (2, vec![0, 0, 1, 1]),
            ],
            size_cap: DEFAULT_SIZE_CAP,
            mset_policy: MsetPolicy::default(),
            seed: 0,
            integer_bound: 1000,
            integer_samples: 20,
        }
    }
}

impl CorpusSpec {
    pub fn empty() -> Self {
        CorpusSpec {
            moduli: vec![],
            product_max_size: 0,
            idealizations: vec![],
            poly_quotients: vec![],
            integer_bound: 0,
            integer_samples: 0,
            ..CorpusSpec::default()
        }
    }

    /// Ring specifications in corpus order, before the size cap.
    pub fn ring_specs(&self) -> Vec<RingSpec> {
        let mut out: Vec<RingSpec> = self.moduli.iter().map(|&n| RingSpec::zmod(n)).collect();
        if self.product_max_size >= 4 {
            let pps = prime_powers(self.product_max_size / 2);
            for (k, &a) in pps.iter().enumerate() {
                for &b in &pps[k..] {
                    if a * b <= self.product_max_size {
                        out.push(RingSpec::product([RingSpec::zmod(a), RingSpec::zmod(b)]));
                    }
                }
            }
        }
        for &(n, m) in &self.idealizations {
            out.push(RingSpec::idealization(RingSpec::zmod(n), m, None));
        }
        for (p, f) in &self.poly_quotients {
            out.push(RingSpec::poly_quot(*p, f.clone()));
        }
        out
    }
}

fn prime_powers(limit: u64) -> Vec<u64> {
    (2..=limit)
        .filter(|&q| {
            let p = (2..=q).find(|d| q % d == 0).expect("q >= 2");
            let mut r = q;
            while r % p == 0 {
                r /= p;
            }
            r == 1
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub spec: RingSpec,
    pub ring: Ring,
    pub msets: Vec<MultiplicativeSet>,
}

#[derive(Clone, Debug)]
pub struct IntegerCase {
    pub mset: MultiplicativeSet,
    pub moduli: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub spec: CorpusSpec,
    pub entries: Vec<CorpusEntry>,
    /// Rings left out by the size cap.
    pub skipped: Vec<RingSpec>,
    pub integers: Vec<IntegerCase>,
}

impl Corpus {
    pub fn pairs(&self) -> Vec<(&CorpusEntry, &MultiplicativeSet)> {
        self.entries
            .iter()
            .flat_map(|e| e.msets.iter().map(move |s| (e, s)))
            .collect()
    }

    pub fn pair_count(&self) -> usize {
        self.entries.iter().map(|e| e.msets.len()).sum()
    }
}

pub fn corpus_msets(ring: &Ring, policy: &MsetPolicy) -> Result<Vec<MultiplicativeSet>> {
    let r = ring.require_finite("corpus multiplicative sets")?;
    let mut candidates = Vec::new();
    if policy.trivial {
        candidates.push(MultiplicativeSet::trivial(ring));
    }
    if policy.singletons {
        for g in 0..r.size() {
            match MultiplicativeSet::closure(ring, &[ring.elem(g)]) {
                Ok(s) => candidates.push(s),
                Err(Error::ZeroInClosure { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    if policy.unit_group {
        candidates.push(MultiplicativeSet::unit_group(ring)?);
    }
    let mut seen = std::collections::HashSet::new();
    Ok(candidates
        .into_iter()
        .filter(|s| seen.insert(s.finite_elements().expect("finite").to_vec()))
        .collect())
}

/// Integer multiplicative sets exercised by the lab: complements of small
/// primes and sets generated by a few primes.
pub fn integer_msets() -> Vec<MultiplicativeSet> {
    let mut out: Vec<MultiplicativeSet> = [2, 3, 5, 7]
        .iter()
        .map(|&p| MultiplicativeSet::complement_of_prime(p).expect("prime"))
        .collect();
    for primes in [&[][..], &[2], &[3], &[2, 3], &[2, 5]] {
        out.push(MultiplicativeSet::prime_set(primes, false).expect("primes"));
    }
    out
}

pub fn generate_corpus(spec: &CorpusSpec) -> Result<Corpus> {
    let opts = BuildOptions {
        size_cap: spec.size_cap,
    };
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for rs in spec.ring_specs() {
        match construct_ring_with(&rs, &opts) {
            Ok(ring) => {
                let msets = corpus_msets(&ring, &spec.mset_policy)?;
                entries.push(CorpusEntry {
                    spec: rs,
                    ring,
                    msets,
                });
            }
            Err(Error::SizeCap { .. }) => skipped.push(rs),
            Err(e) => return Err(e),
        }
    }
    let mut integers = Vec::new();
    if spec.integer_bound >= 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        for mset in integer_msets() {
            let mut moduli: Vec<u64> = (2..=spec.integer_bound).collect();
            for _ in 0..spec.integer_samples {
                moduli.push(rng.gen_range(spec.integer_bound + 1..=10 * spec.integer_bound));
            }
            integers.push(IntegerCase { mset, moduli });
        }
    }
    Ok(Corpus {
        spec: spec.clone(),
        entries,
        skipped,
        integers,
    })
}
