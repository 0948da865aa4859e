use std::sync::Arc;

use serde_json::Value;

use super::{FiniteRing, Ring, RingSpec, Structure};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::ideal::{lattice, mset};

pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Tables are indexed with `u16`.
const HARD_SIZE_LIMIT: usize = u16::MAX as usize;

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub size_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

impl BuildOptions {
    fn check(&self, size: u128) -> Result<usize> {
        let cap = self.size_cap.min(HARD_SIZE_LIMIT);
        if size > cap as u128 {
            return Err(Error::SizeCap {
                size,
                cap: self.size_cap,
            });
        }
        Ok(size as usize)
    }
}

pub fn construct_ring(spec: &RingSpec) -> Result<Ring> {
    construct_ring_with(spec, &BuildOptions::default())
}

pub fn construct_ring_with(spec: &RingSpec, opts: &BuildOptions) -> Result<Ring> {
    match spec {
        RingSpec::Integers => Ok(Ring::Integers),
        _ => Ok(Ring::Finite(build_finite(spec, opts)?)),
    }
}

pub(crate) fn build_finite(spec: &RingSpec, opts: &BuildOptions) -> Result<Arc<FiniteRing>> {
    let ring = match spec {
        RingSpec::Zmod { n } => zmod(*n, opts)?,
        RingSpec::Product { factors } => {
            if factors.is_empty() {
                return Err(Error::InvalidSpec("product of no factors".into()));
            }
            let built = factors
                .iter()
                .map(|f| build_finite(f, opts))
                .collect::<Result<Vec<_>>>()?;
            product(spec.clone(), built, opts)?
        }
        RingSpec::PolyQuot {
            p,
            f,
            require_irreducible,
        } => poly_quot(spec.clone(), *p, f, *require_irreducible, opts)?,
        RingSpec::Quotient { base, ideal_gens } => {
            let base = build_finite(base, opts)?;
            let gens = ideal_gens
                .iter()
                .map(|g| base.parse_element(g))
                .collect::<Result<Vec<_>>>()?;
            let ideal = lattice::generate(&base, &gens);
            quotient(spec.clone(), &base, &ideal, opts)?.0
        }
        RingSpec::Idealization { base, m, action } => {
            let base = build_finite(base, opts)?;
            idealization(spec.clone(), base, *m, action.as_deref(), opts)?
        }
        RingSpec::Localization { base, mset_gens } => {
            let base = build_finite(base, opts)?;
            let gens = mset_gens
                .iter()
                .map(|g| base.parse_element(g))
                .collect::<Result<Vec<_>>>()?;
            let closure = mset::closure(&base, &gens)?;
            localization(spec.clone(), &base, &closure, opts)?.0
        }
        RingSpec::Integers => {
            return Err(Error::InvalidSpec(
                "the integers cannot appear inside a finite construction".into(),
            ))
        }
    };
    ring.verify_axioms()?;
    Ok(Arc::new(ring))
}

fn zmod(n: u64, opts: &BuildOptions) -> Result<FiniteRing> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!("zmod modulus {n} is below 2")));
    }
    let n = opts.check(n as u128)?;
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push(((a + b) % n) as u16);
            mul.push(((a * b) % n) as u16);
        }
    }
    let labels = (0..n).map(Value::from).collect();
    FiniteRing::from_tables(
        RingSpec::Zmod { n: n as u64 },
        labels,
        add,
        mul,
        Structure::Zmod { n },
    )
}

fn product(spec: RingSpec, factors: Vec<Arc<FiniteRing>>, opts: &BuildOptions) -> Result<FiniteRing> {
    let size = opts.check(factors.iter().map(|f| f.size() as u128).product())?;
    // first factor is the most significant digit
    let digits = |mut index: usize| {
        let mut out = vec![0; factors.len()];
        for (k, f) in factors.iter().enumerate().rev() {
            out[k] = index % f.size();
            index /= f.size();
        }
        out
    };
    let compose = |parts: &[usize]| {
        parts
            .iter()
            .zip(&factors)
            .fold(0, |acc, (&d, f)| acc * f.size() + d)
    };
    let all_digits: Vec<Vec<usize>> = (0..size).map(digits).collect();
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    let mut scratch_add = vec![0; factors.len()];
    let mut scratch_mul = vec![0; factors.len()];
    for a in &all_digits {
        for b in &all_digits {
            for (k, f) in factors.iter().enumerate() {
                scratch_add[k] = f.add(a[k], b[k]);
                scratch_mul[k] = f.mul(a[k], b[k]);
            }
            add.push(compose(&scratch_add) as u16);
            mul.push(compose(&scratch_mul) as u16);
        }
    }
    let labels = all_digits
        .iter()
        .map(|d| {
            Value::Array(
                d.iter()
                    .zip(&factors)
                    .map(|(&i, f)| f.label(i).clone())
                    .collect(),
            )
        })
        .collect();
    FiniteRing::from_tables(spec, labels, add, mul, Structure::Product { factors })
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Remainder of `a` modulo the monic polynomial `f` over F_p; coefficient
/// vectors run from the constant term upwards.
fn poly_rem(a: &[usize], f: &[usize], p: usize) -> Vec<usize> {
    let deg = f.len() - 1;
    let mut r = a.to_vec();
    while r.len() > deg {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - deg;
            for (i, &c) in f[..deg].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * c) % p;
            }
        }
    }
    r
}

fn is_irreducible_poly(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        // monic divisors of degree d
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_quot(
    spec: RingSpec,
    p: u64,
    f: &[i64],
    require_irreducible: bool,
    opts: &BuildOptions,
) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(Error::InvalidSpec(format!("{p} is not prime")));
    }
    let pu = p as usize;
    let f: Vec<usize> = f.iter().map(|&c| c.rem_euclid(p as i64) as usize).collect();
    if f.len() < 2 {
        return Err(Error::InvalidSpec("modulus polynomial must have degree >= 1".into()));
    }
    if *f.last().unwrap() != 1 {
        return Err(Error::InvalidSpec("modulus polynomial is not monic".into()));
    }
    if require_irreducible && !is_irreducible_poly(&f, pu) {
        return Err(Error::InvalidSpec("modulus polynomial is reducible".into()));
    }
    let degree = f.len() - 1;
    let size = opts.check((p as u128).pow(degree as u32))?;
    let coeffs = |mut index: usize| {
        let mut out = Vec::with_capacity(degree);
        for _ in 0..degree {
            out.push(index % pu);
            index /= pu;
        }
        out
    };
    let encode = |c: &[usize]| c.iter().rev().fold(0, |acc, &d| acc * pu + d);
    let all: Vec<Vec<usize>> = (0..size).map(coeffs).collect();
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    let mut prod = vec![0; 2 * degree - 1];
    for a in &all {
        for b in &all {
            let sum: Vec<usize> = a.iter().zip(b).map(|(x, y)| (x + y) % pu).collect();
            add.push(encode(&sum) as u16);
            prod.iter_mut().for_each(|c| *c = 0);
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % pu;
                }
            }
            mul.push(encode(&poly_rem(&prod, &f, pu)) as u16);
        }
    }
    let labels = all
        .iter()
        .map(|c| Value::Array(c.iter().map(|&x| Value::from(x)).collect()))
        .collect();
    FiniteRing::from_tables(spec, labels, add, mul, Structure::PolyQuot { p: pu, degree })
}

/// `base / ideal`, with cosets numbered by their smallest member. Returns the
/// ring and the projection table.
pub(crate) fn quotient(
    spec: RingSpec,
    base: &Arc<FiniteRing>,
    ideal: &ElemSet,
    opts: &BuildOptions,
) -> Result<(FiniteRing, Vec<usize>)> {
    if ideal.contains(base.one()) {
        return Err(Error::ImproperIdeal);
    }
    let n = base.size();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class[x] == usize::MAX {
            let c = reps.len();
            for i in ideal.iter() {
                class[base.add(x, i)] = c;
            }
            reps.push(x);
        }
    }
    let size = opts.check(reps.len() as u128)?;
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for &a in &reps {
        for &b in &reps {
            add.push(class[base.add(a, b)] as u16);
            mul.push(class[base.mul(a, b)] as u16);
        }
    }
    let labels = reps.iter().map(|&r| base.label(r).clone()).collect();
    let ring = FiniteRing::from_tables(
        spec,
        labels,
        add,
        mul,
        Structure::Quotient {
            base: base.clone(),
            projection: class.clone(),
        },
    )?;
    Ok((ring, class))
}

fn idealization(
    spec: RingSpec,
    base: Arc<FiniteRing>,
    m: u64,
    action: Option<&[i64]>,
    opts: &BuildOptions,
) -> Result<FiniteRing> {
    if m < 2 {
        return Err(Error::InvalidSpec(format!("module modulus {m} is below 2")));
    }
    let size = opts.check(base.size() as u128 * m as u128)?;
    let m = m as usize;
    let phi: Vec<usize> = match action {
        Some(images) => {
            if images.len() != base.size() {
                return Err(Error::NotHomomorphism(format!(
                    "expected {} images, got {}",
                    base.size(),
                    images.len()
                )));
            }
            images.iter().map(|&v| v.rem_euclid(m as i64) as usize).collect()
        }
        None => match base.structure {
            Structure::Zmod { n } if n % m == 0 => (0..n).map(|r| r % m).collect(),
            _ => {
                return Err(Error::InvalidSpec(
                    "an action map is required unless the base is zmod(n) with m | n".into(),
                ))
            }
        },
    };
    if phi[base.one()] != 1 % m {
        return Err(Error::NotHomomorphism("1 does not map to 1".into()));
    }
    for a in 0..base.size() {
        for b in 0..base.size() {
            if phi[base.add(a, b)] != (phi[a] + phi[b]) % m {
                return Err(Error::NotHomomorphism(format!(
                    "not additive at ({}, {})",
                    base.label(a),
                    base.label(b)
                )));
            }
            if phi[base.mul(a, b)] != (phi[a] * phi[b]) % m {
                return Err(Error::NotHomomorphism(format!(
                    "not multiplicative at ({}, {})",
                    base.label(a),
                    base.label(b)
                )));
            }
        }
    }
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for i in 0..size {
        let (r, x) = (i / m, i % m);
        for j in 0..size {
            let (s, y) = (j / m, j % m);
            add.push((base.add(r, s) * m + (x + y) % m) as u16);
            // (r, x)(s, y) = (rs, r.y + s.x)
            let module = (phi[r] * y + phi[s] * x) % m;
            mul.push((base.mul(r, s) * m + module) as u16);
        }
    }
    let labels = (0..size)
        .map(|i| Value::Array(vec![base.label(i / m).clone(), Value::from(i % m)]))
        .collect();
    FiniteRing::from_tables(spec, labels, add, mul, Structure::Idealization { base, m })
}

/// `S^-1 base`. Fractions `a/s` and `a'/s'` are identified iff `as' - a's`
/// is killed by some element of `S`. Classes are numbered by their smallest
/// pair `(a, s)`. Returns the ring and the canonical map `a -> a/1`.
pub(crate) fn localization(
    spec: RingSpec,
    base: &Arc<FiniteRing>,
    mset: &ElemSet,
    opts: &BuildOptions,
) -> Result<(FiniteRing, Vec<usize>)> {
    let n = base.size();
    let dens = mset.to_vec();
    let k = dens.len();
    // r ~ 0 iff t r = 0 for some t in S
    let killed: Vec<bool> = (0..n)
        .map(|r| dens.iter().any(|&t| base.mul(t, r) == base.zero()))
        .collect();
    let mut class_of = vec![usize::MAX; n * k];
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for a in 0..n {
        for (si, &s) in dens.iter().enumerate() {
            let found = reps.iter().position(|&(a2, s2)| {
                killed[base.sub(base.mul(a, s2), base.mul(a2, s))]
            });
            class_of[a * k + si] = match found {
                Some(c) => c,
                None => {
                    reps.push((a, s));
                    reps.len() - 1
                }
            };
        }
    }
    let size = opts.check(reps.len() as u128)?;
    let pos = |s: usize| dens.binary_search(&s).expect("closed under products");
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for &(a, s) in &reps {
        for &(b, t) in &reps {
            let den = pos(base.mul(s, t));
            let num_sum = base.add(base.mul(a, t), base.mul(b, s));
            add.push(class_of[num_sum * k + den] as u16);
            mul.push(class_of[base.mul(a, b) * k + den] as u16);
        }
    }
    let labels = reps
        .iter()
        .map(|&(a, s)| Value::Array(vec![base.label(a).clone(), base.label(s).clone()]))
        .collect();
    let one_pos = pos(base.one());
    let canonical: Vec<usize> = (0..n).map(|a| class_of[a * k + one_pos]).collect();
    let ring = FiniteRing::from_tables(
        spec,
        labels,
        add,
        mul,
        Structure::Localization {
            base: base.clone(),
            denominators: dens,
            class_of,
        },
    )?;
    Ok((ring, canonical))
}
