//! Dense polynomials over ℚ, little-endian coefficient order, plus the
//! cyclotomic polynomials used as moduli.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Poly = Vec<BigRational>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Quotient and remainder of `num` by a nonzero `den`.
pub(crate) fn divrem(num: &[BigRational], den: &[BigRational]) -> (Poly, Poly) {
    let mut rem: Poly = num.to_vec();
    trim(&mut rem);
    let mut den: Poly = den.to_vec();
    trim(&mut den);
    assert!(!den.is_empty(), "polynomial division by zero");
    let dd = den.len() - 1;
    let lead_inv = den[dd].recip();
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    while rem.len() > dd {
        let top = rem.len() - 1;
        let c = &rem[top] * &lead_inv;
        let shift = top - dd;
        for (t, d) in den.iter().enumerate() {
            let v = &rem[shift + t] - &c * d;
            rem[shift + t] = v;
        }
        quot[shift] = c;
        trim(&mut rem);
        if rem.len() <= dd {
            break;
        }
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    out
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm; `None`
/// when the two are not coprime.
pub(crate) fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Poly> {
    let mut r0: Poly = m.to_vec();
    let mut r1: Poly = divrem(a, m).1;
    let mut s0: Poly = Vec::new();
    let mut s1: Poly = vec![BigRational::one()];
    trim(&mut r0);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd; it must be a nonzero constant.
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let mut inv: Poly = s0.into_iter().map(|x| x * &c).collect();
    inv = divrem(&inv, m).1;
    Some(inv)
}

/// Reduces an arbitrary polynomial modulo the monic integer polynomial
/// `modulus` (given with its leading 1), returning exactly `deg` coefficients.
pub(crate) fn reduce_monic(mut p: Poly, modulus: &[i64]) -> Poly {
    let deg = modulus.len() - 1;
    while p.len() > deg {
        let top = p.len() - 1;
        let c = p.pop().expect("nonempty");
        if !c.is_zero() {
            let shift = top - deg;
            for (t, m) in modulus.iter().take(deg).enumerate() {
                if *m != 0 {
                    p[shift + t] -= &c * BigRational::from_integer(BigInt::from(*m));
                }
            }
        }
    }
    p.resize(deg, BigRational::zero());
    p
}

fn phi_cache() -> &'static Mutex<BTreeMap<u32, Arc<[i64]>>> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, Arc<[i64]>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// The n-th cyclotomic polynomial, obtained by dividing xⁿ − 1 by Φ_d for
/// every proper divisor d of n.
pub fn cyclotomic_polynomial(n: u32) -> Arc<[i64]> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = phi_cache().lock().expect("cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    let mut num: Poly = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d: Poly = cyclotomic_polynomial(d)
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect();
            let (q, r) = divrem(&num, &phi_d);
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    let coeffs: Arc<[i64]> = num
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            let v = c.to_integer();
            assert!(v.abs() < BigInt::from(i64::MAX), "cyclotomic coefficient overflow");
            i64::try_from(v).expect("fits")
        })
        .collect::<Vec<_>>()
        .into();
    phi_cache()
        .lock()
        .expect("cache poisoned")
        .insert(n, Arc::clone(&coeffs));
    coeffs
}

/// Euler's totient, the degree of Φ_n.
pub fn euler_phi(n: u32) -> usize {
    let mut result = n as u64;
    let mut m = n as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}
