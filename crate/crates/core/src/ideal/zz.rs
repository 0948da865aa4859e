//! Number theory for principal ideals of the integers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Prime factorization by trial division, smallest prime first. `n` must
/// be nonzero; `1` factors as the empty product.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    if let Some(small) = n.to_u64() {
        return factorize_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut d = BigUint::from(2u32);
    while &d * &d <= rest {
        let mut e = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1u32;
    }
    if !rest.is_one() {
        out.push((rest, 1));
    }
    out
}

pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n != 0, "cannot factor zero");
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && factorize_u64(p) == [(p, 1)]
}

/// Squarefree kernel; `rad(0) = 0`.
pub fn radical(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    factorize(n).into_iter().map(|(p, _)| p).product()
}

pub fn radical_u64(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    factorize_u64(n).into_iter().map(|(p, _)| p).product()
}

/// Exponent of the prime `p` in `n`; `n` nonzero.
pub fn valuation(n: &BigUint, p: u64) -> u32 {
    let p = BigUint::from(p);
    let mut rest = n.clone();
    let mut e = 0;
    while !rest.is_zero() && (&rest % &p).is_zero() {
        rest /= &p;
        e += 1;
    }
    e
}

/// Splits nonzero `n` as `(inside, outside)` where `inside` collects the
/// prime powers whose prime satisfies `pred`.
pub fn split_by(n: &BigUint, pred: impl Fn(&BigUint) -> bool) -> (BigUint, BigUint) {
    let mut inside = BigUint::one();
    let mut outside = BigUint::one();
    for (p, e) in factorize(n) {
        let pe = num_traits::pow(p.clone(), e as usize);
        if pred(&p) {
            inside *= pe;
        } else {
            outside *= pe;
        }
    }
    (inside, outside)
}

/// `n / gcd(n, s)` with `s` taken in absolute value; `(n : 0)` is the unit
/// ideal.
pub fn colon(n: &BigUint, s: &BigUint) -> BigUint {
    if s.is_zero() {
        return BigUint::one();
    }
    n / n.gcd(s)
}

pub fn lcm(a: &BigUint, b: &BigUint) -> BigUint {
    if a.is_zero() || b.is_zero() {
        BigUint::zero()
    } else {
        a.lcm(b)
    }
}

pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let upper: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|q| !out.contains(q)).collect();
    out.extend(upper);
    out
}
