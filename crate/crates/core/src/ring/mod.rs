//! Commutative rings with identity: explicit finite rings stored as
//! operation tables, and the symbolic integer ring.

pub(crate) mod build;
mod spec;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

pub use build::{construct_ring, construct_ring_with, BuildOptions, DEFAULT_SIZE_CAP};
pub use spec::RingSpec;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};

/// Rings up to this size get the cubic associativity and distributivity checks.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 64;

pub(crate) const INTEGERS_ID: u64 = 0;

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_RING_ID.fetch_add(1, Ordering::Relaxed)
}

/// Handle to an immutable commutative ring with identity.
#[derive(Clone)]
pub enum Ring {
    Finite(Arc<FiniteRing>),
    Integers,
}

/// An element of a [`Ring`], always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingElement {
    /// Index into the element table of the finite ring `ring`.
    Finite { ring: u64, index: usize },
    Integer(BigInt),
}

impl RingElement {
    pub fn index(&self) -> Option<usize> {
        match self {
            RingElement::Finite { index, .. } => Some(*index),
            RingElement::Integer(_) => None,
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            RingElement::Integer(v) => Some(v),
            RingElement::Finite { .. } => None,
        }
    }
}

/// How the element tables of a finite ring were produced; needed to read and
/// write element payloads.
#[derive(Debug)]
pub(crate) enum Structure {
    Zmod {
        n: usize,
    },
    Product {
        factors: Vec<Arc<FiniteRing>>,
    },
    PolyQuot {
        p: usize,
        degree: usize,
    },
    Quotient {
        base: Arc<FiniteRing>,
        projection: Vec<usize>,
    },
    Idealization {
        base: Arc<FiniteRing>,
        m: usize,
    },
    Localization {
        base: Arc<FiniteRing>,
        denominators: Vec<usize>,
        /// class of the pair (a, denominators[k]) at `a * denominators.len() + k`
        class_of: Vec<usize>,
    },
}

/// A finite commutative ring with explicit addition and multiplication tables.
pub struct FiniteRing {
    id: u64,
    spec: RingSpec,
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: usize,
    one: usize,
    labels: Vec<Value>,
    pub(crate) structure: Structure,
    ideals: OnceLock<Arc<Vec<ElemSet>>>,
    nilradical: OnceLock<ElemSet>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("id", &self.id)
            .field("ring", &self.spec.describe())
            .field("size", &self.size)
            .finish()
    }
}

impl FiniteRing {
    pub(crate) fn from_tables(
        spec: RingSpec,
        labels: Vec<Value>,
        add: Vec<u16>,
        mul: Vec<u16>,
        structure: Structure,
    ) -> Result<FiniteRing> {
        let size = labels.len();
        debug_assert_eq!(add.len(), size * size);
        debug_assert_eq!(mul.len(), size * size);
        let zero = (0..size)
            .find(|&z| (0..size).all(|a| add[z * size + a] as usize == a))
            .ok_or_else(|| Error::AxiomViolation("no additive identity".into()))?;
        let one = (0..size)
            .find(|&u| (0..size).all(|a| mul[u * size + a] as usize == a))
            .ok_or_else(|| Error::AxiomViolation("no multiplicative identity".into()))?;
        let mut neg = vec![0u16; size];
        for a in 0..size {
            let inv = (0..size)
                .find(|&b| add[a * size + b] as usize == zero)
                .ok_or_else(|| Error::AxiomViolation(format!("element {a} has no negative")))?;
            neg[a] = inv as u16;
        }
        Ok(FiniteRing {
            id: fresh_id(),
            spec,
            size,
            add,
            mul,
            neg,
            zero,
            one,
            labels,
            structure,
            ideals: OnceLock::new(),
            nilradical: OnceLock::new(),
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, mut exp: u64) -> usize {
        let mut base = a;
        let mut acc = self.one;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Row of the multiplication table: `a * r` for every `r`.
    pub(crate) fn mul_row(&self, a: usize) -> &[u16] {
        &self.mul[a * self.size..(a + 1) * self.size]
    }

    pub fn label(&self, index: usize) -> &Value {
        &self.labels[index]
    }

    pub fn labels(&self) -> &[Value] {
        &self.labels
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.mul_row(a).iter().any(|&x| x as usize == self.one)
    }

    /// Cached list of every ideal in canonical order.
    pub(crate) fn ideal_cache(&self) -> &Arc<Vec<ElemSet>> {
        self.ideals
            .get_or_init(|| Arc::new(crate::ideal::lattice::enumerate(self)))
    }

    pub(crate) fn nilradical_cache(&self) -> &ElemSet {
        self.nilradical.get_or_init(|| {
            let zero = ElemSet::from_indices(self.size, [self.zero]);
            crate::ideal::lattice::radical(self, &zero)
        })
    }

    /// Parses an element payload, normalizing it to canonical form.
    pub fn parse_element(&self, payload: &Value) -> Result<usize> {
        let bad = |reason: &str| Error::InvalidElement {
            payload: payload.clone(),
            reason: reason.to_string(),
        };
        match &self.structure {
            Structure::Zmod { n } => {
                let v = payload.as_i64().ok_or_else(|| bad("expected an integer"))?;
                Ok(v.rem_euclid(*n as i64) as usize)
            }
            Structure::Product { factors } => {
                let parts = payload.as_array().ok_or_else(|| bad("expected a tuple"))?;
                if parts.len() != factors.len() {
                    return Err(bad("tuple length does not match the number of factors"));
                }
                let mut index = 0;
                for (factor, part) in factors.iter().zip(parts) {
                    index = index * factor.size + factor.parse_element(part)?;
                }
                Ok(index)
            }
            Structure::PolyQuot { p, degree } => {
                let coeffs: Vec<i64> = match payload {
                    Value::Number(_) => vec![payload.as_i64().ok_or_else(|| bad("not an integer"))?],
                    Value::Array(items) => items
                        .iter()
                        .map(|c| c.as_i64().ok_or_else(|| bad("coefficients must be integers")))
                        .collect::<Result<_>>()?,
                    _ => return Err(bad("expected a coefficient list")),
                };
                if coeffs.len() > *degree {
                    return Err(bad("coefficient list longer than the modulus degree"));
                }
                let mut index = 0;
                for &c in coeffs.iter().rev() {
                    index = index * p + c.rem_euclid(*p as i64) as usize;
                }
                Ok(index)
            }
            Structure::Quotient { base, projection } => Ok(projection[base.parse_element(payload)?]),
            Structure::Idealization { base, m } => {
                let parts = payload
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| bad("expected a pair [r, m]"))?;
                let r = base.parse_element(&parts[0])?;
                let x = parts[1].as_i64().ok_or_else(|| bad("module part must be an integer"))?;
                Ok(r * m + x.rem_euclid(*m as i64) as usize)
            }
            Structure::Localization {
                base,
                denominators,
                class_of,
            } => {
                if let Some(parts) = payload.as_array().filter(|p| p.len() == 2) {
                    if let (Ok(a), Ok(s)) = (base.parse_element(&parts[0]), base.parse_element(&parts[1])) {
                        if let Ok(k) = denominators.binary_search(&s) {
                            return Ok(class_of[a * denominators.len() + k]);
                        }
                    }
                }
                let a = base.parse_element(payload)?;
                let k = denominators
                    .binary_search(&base.one)
                    .expect("multiplicative sets contain 1");
                Ok(class_of[a * denominators.len() + k])
            }
        }
    }

    /// Checks the commutative ring axioms. Associativity and distributivity
    /// are verified exhaustively only up to [`EXHAUSTIVE_AXIOM_LIMIT`].
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.size;
        let fail = |what: String| Err(Error::AxiomViolation(what));
        for a in 0..n {
            if self.add(self.zero, a) != a || self.mul(self.one, a) != a {
                return fail(format!("identity law fails at {}", self.labels[a]));
            }
            if self.add(a, self.neg(a)) != self.zero {
                return fail(format!("no additive inverse for {}", self.labels[a]));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail(format!(
                        "commutativity fails at ({}, {})",
                        self.labels[a], self.labels[b]
                    ));
                }
            }
        }
        if n <= EXHAUSTIVE_AXIOM_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab_sum = self.add(a, b);
                    let ab_prod = self.mul(a, b);
                    for c in 0..n {
                        if self.add(ab_sum, c) != self.add(a, self.add(b, c)) {
                            return fail("additive associativity".into());
                        }
                        if self.mul(ab_prod, c) != self.mul(a, self.mul(b, c)) {
                            return fail("multiplicative associativity".into());
                        }
                        if self.mul(a, self.add(b, c)) != self.add(ab_prod, self.mul(a, c)) {
                            return fail("distributivity".into());
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl Ring {
    pub fn id(&self) -> u64 {
        match self {
            Ring::Finite(r) => r.id,
            Ring::Integers => INTEGERS_ID,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ring::Finite(_))
    }

    pub fn finite(&self) -> Option<&Arc<FiniteRing>> {
        match self {
            Ring::Finite(r) => Some(r),
            Ring::Integers => None,
        }
    }

    pub(crate) fn require_finite(&self, op: &'static str) -> Result<&Arc<FiniteRing>> {
        self.finite().ok_or(Error::InfiniteRing(op))
    }

    /// Number of elements, or `None` for the integers.
    pub fn size(&self) -> Option<usize> {
        self.finite().map(|r| r.size)
    }

    pub fn spec(&self) -> RingSpec {
        match self {
            Ring::Finite(r) => r.spec.clone(),
            Ring::Integers => RingSpec::Integers,
        }
    }

    pub fn describe(&self) -> String {
        self.spec().describe()
    }

    pub fn same_ring(&self, other: &Ring) -> bool {
        self.id() == other.id()
    }

    pub(crate) fn elem(&self, index: usize) -> RingElement {
        RingElement::Finite {
            ring: self.id(),
            index,
        }
    }

    pub fn zero(&self) -> RingElement {
        match self {
            Ring::Finite(r) => self.elem(r.zero),
            Ring::Integers => RingElement::Integer(BigInt::zero()),
        }
    }

    pub fn one(&self) -> RingElement {
        match self {
            Ring::Finite(r) => self.elem(r.one),
            Ring::Integers => RingElement::Integer(BigInt::one()),
        }
    }

    pub fn element(&self, payload: &Value) -> Result<RingElement> {
        match self {
            Ring::Finite(r) => Ok(self.elem(r.parse_element(payload)?)),
            Ring::Integers => parse_integer(payload).map(RingElement::Integer),
        }
    }

    pub fn from_i64(&self, v: i64) -> Result<RingElement> {
        self.element(&Value::from(v))
    }

    pub fn payload(&self, e: &RingElement) -> Result<Value> {
        match (self, e) {
            (Ring::Finite(r), RingElement::Finite { ring, index }) if *ring == r.id => {
                Ok(r.labels[*index].clone())
            }
            (Ring::Integers, RingElement::Integer(v)) => Ok(integer_payload(v)),
            _ => Err(Error::CrossRing),
        }
    }

    pub(crate) fn index_of(&self, e: &RingElement) -> Result<usize> {
        match (self, e) {
            (Ring::Finite(r), RingElement::Finite { ring, index }) if *ring == r.id => Ok(*index),
            _ => Err(Error::CrossRing),
        }
    }

    pub(crate) fn integer_of<'a>(&self, e: &'a RingElement) -> Result<&'a BigInt> {
        match (self, e) {
            (Ring::Integers, RingElement::Integer(v)) => Ok(v),
            _ => Err(Error::CrossRing),
        }
    }

    fn binary(
        &self,
        a: &RingElement,
        b: &RingElement,
        finite: impl Fn(&FiniteRing, usize, usize) -> usize,
        integer: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<RingElement> {
        match self {
            Ring::Finite(r) => {
                let (i, j) = (self.index_of(a)?, self.index_of(b)?);
                Ok(self.elem(finite(r, i, j)))
            }
            Ring::Integers => Ok(RingElement::Integer(integer(
                self.integer_of(a)?,
                self.integer_of(b)?,
            ))),
        }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.binary(a, b, FiniteRing::add, |x, y| x + y)
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.binary(a, b, FiniteRing::mul, |x, y| x * y)
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.binary(a, b, FiniteRing::sub, |x, y| x - y)
    }

    pub fn neg(&self, a: &RingElement) -> Result<RingElement> {
        match self {
            Ring::Finite(r) => Ok(self.elem(r.neg(self.index_of(a)?))),
            Ring::Integers => Ok(RingElement::Integer(-self.integer_of(a)?.clone())),
        }
    }

    pub fn pow(&self, a: &RingElement, exp: u64) -> Result<RingElement> {
        match self {
            Ring::Finite(r) => Ok(self.elem(r.pow(self.index_of(a)?, exp))),
            Ring::Integers => {
                let exp = u32::try_from(exp)
                    .map_err(|_| Error::Unsupported("integer exponent above u32".into()))?;
                Ok(RingElement::Integer(num_traits::pow::Pow::pow(
                    self.integer_of(a)?,
                    exp,
                )))
            }
        }
    }

    /// Every element exactly once, in index order.
    pub fn elements(&self) -> Result<Vec<RingElement>> {
        let r = self.require_finite("enumerate_elements")?;
        Ok((0..r.size).map(|i| self.elem(i)).collect())
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Finite(r) => write!(f, "{} [{} elements]", r.spec.describe(), r.size),
            Ring::Integers => f.write_str("Z"),
        }
    }
}

pub(crate) fn parse_integer(payload: &Value) -> Result<BigInt> {
    let bad = || Error::InvalidElement {
        payload: payload.clone(),
        reason: "expected an integer".into(),
    };
    match payload {
        Value::Number(n) => {
            if let Some(v) = n.as_i64() {
                Ok(BigInt::from(v))
            } else if let Some(v) = n.as_u64() {
                Ok(BigInt::from(v))
            } else {
                Err(bad())
            }
        }
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| bad()),
        _ => Err(bad()),
    }
}

/// Integers that fit in `i64` serialize as JSON numbers, larger ones as
/// decimal strings.
pub(crate) fn integer_payload(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(small) => Value::from(small),
        None => Value::String(v.to_string()),
    }
}

/// A ring homomorphism between finite rings, stored as an image table.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Ring,
    target: Ring,
    images: Vec<usize>,
}

impl RingMap {
    pub(crate) fn new(source: Ring, target: Ring, images: Vec<usize>) -> Self {
        RingMap {
            source,
            target,
            images,
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub(crate) fn image_index(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn apply(&self, e: &RingElement) -> Result<RingElement> {
        let i = self.source.index_of(e)?;
        Ok(self.target.elem(self.images[i]))
    }

    /// Exhaustive check over all element pairs.
    pub fn is_homomorphism(&self) -> bool {
        let (Some(s), Some(t)) = (self.source.finite(), self.target.finite()) else {
            return false;
        };
        if self.images[s.one()] != t.one() {
            return false;
        }
        (0..s.size()).all(|a| {
            (0..s.size()).all(|b| {
                self.images[s.add(a, b)] == t.add(self.images[a], self.images[b])
                    && self.images[s.mul(a, b)] == t.mul(self.images[a], self.images[b])
            })
        })
    }
}

/// True iff the finite rings have identical tables under the index bijection
/// `map`. Used to compare constructions such as `Z/12 / (4)` and `Z/4`.
pub fn is_isomorphism(a: &FiniteRing, b: &FiniteRing, map: &[usize]) -> bool {
    if a.size() != b.size() || map.len() != a.size() {
        return false;
    }
    let mut seen = vec![false; b.size()];
    for &m in map {
        if m >= b.size() || std::mem::replace(&mut seen[m], true) {
            return false;
        }
    }
    map[a.one()] == b.one()
        && (0..a.size()).all(|x| {
            (0..a.size()).all(|y| {
                map[a.add(x, y)] == b.add(map[x], map[y]) && map[a.mul(x, y)] == b.mul(map[x], map[y])
            })
        })
}
