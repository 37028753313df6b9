use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{self, cyclotomic_polynomial, euler_phi};
use super::CycError;

/// An element of ℚ(ζₙ), stored in the power basis 1, ζ, …, ζ^{φ(n)−1}
/// reduced modulo Φₙ.
///
/// The representation is canonical for a fixed conductor. Values with
/// different conductors are compared and combined in ℚ(ζ_lcm).
#[derive(Clone, Debug)]
pub struct CycNumber {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycNumber {
    fn from_poly(conductor: u32, p: Vec<BigRational>) -> Self {
        let coeffs = poly::reduce_monic(p, &cyclotomic_polynomial(conductor));
        Self { conductor, coeffs }
    }

    /// Builds an element from power-basis coordinates; shorter vectors are
    /// zero-padded, longer ones are reduced modulo Φₙ.
    pub fn from_coeffs(conductor: u32, coeffs: Vec<BigRational>) -> Result<Self, CycError> {
        if conductor == 0 {
            return Err(CycError::ZeroConductor);
        }
        Ok(Self::from_poly(conductor, coeffs))
    }

    pub fn zero(conductor: u32) -> Self {
        assert!(conductor > 0, "conductor must be positive");
        Self { conductor, coeffs: vec![BigRational::zero(); euler_phi(conductor)] }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_rational(conductor: u32, q: BigRational) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(conductor: u32, v: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses `self` in ℚ(ζₘ); requires conductor | m.
    pub fn embed(&self, m: u32) -> Result<Self, CycError> {
        if m == 0 || !m.is_multiple_of(self.conductor) {
            return Err(CycError::NotDivisible { from: self.conductor, to: m });
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        let step = (m / self.conductor) as usize;
        let mut p = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        Ok(Self::from_poly(m, p))
    }

    fn lift_pair(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let l = self.conductor.lcm(&other.conductor);
        (self.embed(l).expect("lcm"), other.embed(l).expect("lcm"))
    }

    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.conductor, q.recip()));
        }
        let modulus: Vec<BigRational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let inv = poly::inverse_mod(&self.coeffs, &modulus).ok_or(CycError::DivisionByZero)?;
        Ok(Self::from_poly(self.conductor, inv))
    }

    /// Complex conjugation, ζ ↦ ζ^{n−1}.
    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        let mut p = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p[(i * (n - 1)) % n] += c;
            }
        }
        Self::from_poly(self.conductor, p)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self, CycError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.conductor);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }
}

/// ζₙ^k in canonical form.
pub fn root_of_unity(n: u32, k: i64) -> Result<CycNumber, CycError> {
    if n == 0 {
        return Err(CycError::ZeroConductor);
    }
    let e = k.rem_euclid(n as i64) as usize;
    let mut p = vec![BigRational::zero(); e + 1];
    p[e] = BigRational::one();
    Ok(CycNumber::from_poly(n, p))
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.lift_pair(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNumber {}

impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        let (mut a, b) = self.lift_pair(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        let (mut a, b) = self.lift_pair(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        if let Some(q) = self.as_rational() {
            return scaled(rhs, q, self.conductor);
        }
        if let Some(q) = rhs.as_rational() {
            return scaled(self, q, rhs.conductor);
        }
        let (a, b) = self.lift_pair(rhs);
        CycNumber::from_poly(a.conductor, poly::mul(&a.coeffs, &b.coeffs))
    }
}

fn scaled(a: &CycNumber, q: &BigRational, other: u32) -> CycNumber {
    let mut out = a.clone();
    if !q.is_one() {
        out.coeffs.iter_mut().for_each(|c| *c *= q);
    }
    out.embed(a.conductor.lcm(&other)).expect("lcm")
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match i {
                0 => format!("{c}"),
                1 => format!("{c}*z{}", self.conductor),
                _ => format!("{c}*z{}^{i}", self.conductor),
            };
            if !first && !term.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{term}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
