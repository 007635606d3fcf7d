//! Pluggable coefficient fields for the polynomial layer: `Q`, `F_p`,
//! `Q(sqrt d)` and `F_p(sqrt d)` (the latter only when `d` is a non-residue,
//! so the quotient ring is a genuine field).

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numbers::{is_prime, mul_mod, reduce_rational_mod, sqrt_mod, FpElem, MAX_PRIME};

/// A computable field. The handle carries the field parameters (modulus,
/// adjoined square root); elements are plain data.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Integer image in the field.
    fn from_integer(&self, n: i64) -> Self::Elem;

    /// Image of a rational; `None` when the denominator is not invertible
    /// (the bad-prime condition in finite characteristic).
    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem>;

    /// Image of `a + b sqrt(d)`; `None` when the field has no such root.
    fn from_quad(&self, a: &BigRational, b: &BigRational) -> Option<Self::Elem>;

    /// Field characteristic; `None` means characteristic zero.
    fn characteristic(&self) -> Option<u64>;

    /// Inverse Frobenius `x -> x^(1/p)`; only meaningful in characteristic p.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem;

    fn format_elem(&self, a: &Self::Elem) -> String;

    /// True when the printed form needs parentheses inside a product.
    fn elem_needs_parens(&self, a: &Self::Elem) -> bool;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::NotInvertible)
        } else {
            Ok(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_integer(&self, n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }
    fn from_rational(&self, r: &BigRational) -> Option<BigRational> {
        Some(r.clone())
    }
    fn from_quad(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        if b.is_zero() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn characteristic(&self) -> Option<u64> {
        None
    }
    fn pth_root(&self, _a: &BigRational) -> BigRational {
        unreachable!("pth_root is only defined in positive characteristic")
    }
    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn elem_needs_parens(&self, _a: &BigRational) -> bool {
        false
    }
}

/// The prime field `F_p` with `p < 2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn elem(&self, v: i64) -> FpElem {
        FpElem::reduce(v, self.p)
    }
}

impl Field for PrimeField {
    type Elem = FpElem;

    fn zero(&self) -> FpElem {
        FpElem {
            value: 0,
            modulus: self.p,
        }
    }
    fn one(&self) -> FpElem {
        FpElem {
            value: 1 % self.p,
            modulus: self.p,
        }
    }
    fn add(&self, a: &FpElem, b: &FpElem) -> FpElem {
        a.add(b)
    }
    fn sub(&self, a: &FpElem, b: &FpElem) -> FpElem {
        a.sub(b)
    }
    fn mul(&self, a: &FpElem, b: &FpElem) -> FpElem {
        a.mul(b)
    }
    fn neg(&self, a: &FpElem) -> FpElem {
        a.neg()
    }
    fn inv(&self, a: &FpElem) -> Result<FpElem> {
        a.inv()
    }
    fn is_zero(&self, a: &FpElem) -> bool {
        a.is_zero()
    }
    fn from_integer(&self, n: i64) -> FpElem {
        FpElem::reduce(n, self.p)
    }
    fn from_rational(&self, r: &BigRational) -> Option<FpElem> {
        reduce_rational_mod(r, self.p).map(|v| FpElem {
            value: v,
            modulus: self.p,
        })
    }
    fn from_quad(&self, a: &BigRational, b: &BigRational) -> Option<FpElem> {
        if b.is_zero() {
            self.from_rational(a)
        } else {
            None
        }
    }
    fn characteristic(&self) -> Option<u64> {
        Some(self.p)
    }
    fn pth_root(&self, a: &FpElem) -> FpElem {
        // Frobenius is the identity on the prime field
        *a
    }
    fn format_elem(&self, a: &FpElem) -> String {
        a.value.to_string()
    }
    fn elem_needs_parens(&self, _a: &FpElem) -> bool {
        false
    }
}

/// The quadratic field `Q(sqrt d)` for square-free `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadRationals {
    pub d: i64,
}

impl QuadRationals {
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_square_free(d) {
            return Err(Error::NotQuadElement(d));
        }
        Ok(QuadRationals { d })
    }
}

pub fn is_square_free(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            n /= f;
            if n % f == 0 {
                return false;
            }
        }
        f += 1;
    }
    true
}

/// Element wrapper so `Eq + Hash` hold (BigRational is already both).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub a: BigRational,
    pub b: BigRational,
}

impl Field for QuadRationals {
    type Elem = QuadElem;

    fn zero(&self) -> QuadElem {
        QuadElem {
            a: BigRational::zero(),
            b: BigRational::zero(),
        }
    }
    fn one(&self) -> QuadElem {
        QuadElem {
            a: BigRational::one(),
            b: BigRational::zero(),
        }
    }
    fn add(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem {
            a: &x.a + &y.a,
            b: &x.b + &y.b,
        }
    }
    fn sub(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem {
            a: &x.a - &y.a,
            b: &x.b - &y.b,
        }
    }
    fn mul(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        let d = BigRational::from(BigInt::from(self.d));
        QuadElem {
            a: &x.a * &y.a + &x.b * &y.b * &d,
            b: &x.a * &y.b + &x.b * &y.a,
        }
    }
    fn neg(&self, x: &QuadElem) -> QuadElem {
        QuadElem {
            a: -x.a.clone(),
            b: -x.b.clone(),
        }
    }
    fn inv(&self, x: &QuadElem) -> Result<QuadElem> {
        let d = BigRational::from(BigInt::from(self.d));
        let norm = &x.a * &x.a - &x.b * &x.b * &d;
        if norm.is_zero() {
            // d square-free guarantees this only happens at 0
            return Err(Error::NotInvertible);
        }
        Ok(QuadElem {
            a: &x.a / &norm,
            b: -(&x.b / &norm),
        })
    }
    fn is_zero(&self, x: &QuadElem) -> bool {
        x.a.is_zero() && x.b.is_zero()
    }
    fn from_integer(&self, n: i64) -> QuadElem {
        QuadElem {
            a: BigRational::from(BigInt::from(n)),
            b: BigRational::zero(),
        }
    }
    fn from_rational(&self, r: &BigRational) -> Option<QuadElem> {
        Some(QuadElem {
            a: r.clone(),
            b: BigRational::zero(),
        })
    }
    fn from_quad(&self, a: &BigRational, b: &BigRational) -> Option<QuadElem> {
        Some(QuadElem {
            a: a.clone(),
            b: b.clone(),
        })
    }
    fn characteristic(&self) -> Option<u64> {
        None
    }
    fn pth_root(&self, _a: &QuadElem) -> QuadElem {
        unreachable!("pth_root is only defined in positive characteristic")
    }
    /// Grammar-parseable expanded form `a + b*s` (no common-denominator
    /// wrapping; that form is only for standalone lifted values).
    fn format_elem(&self, x: &QuadElem) -> String {
        let s_part = |b: &BigRational| -> String {
            if b.is_one() {
                "s".to_string()
            } else if (-b).is_one() {
                "-s".to_string()
            } else {
                format!("{}*s", b)
            }
        };
        if x.b.is_zero() {
            x.a.to_string()
        } else if x.a.is_zero() {
            s_part(&x.b)
        } else if x.b.is_negative() {
            format!(
                "{} - {}",
                x.a,
                s_part(&-x.b.clone()).trim_start_matches('-')
            )
        } else {
            format!("{} + {}", x.a, s_part(&x.b))
        }
    }
    fn elem_needs_parens(&self, x: &QuadElem) -> bool {
        !x.a.is_zero() && !x.b.is_zero()
    }
}

/// `F_p(sqrt d) = F_p[s]/(s^2 - d)`, requiring `d` to be a non-residue mod
/// `p` so the quotient is the field with `p^2` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadPrimeField {
    pub p: u64,
    /// reduced representative of d in [0, p)
    pub d: u64,
}

impl QuadPrimeField {
    pub fn new(p: u64, d: i64) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let dr = base.from_integer(d);
        if dr.is_zero() || sqrt_mod(d, p).is_some() {
            // splitting primes embed into F_p directly; reject to keep the
            // ring a field
            return Err(Error::InvalidSearchSpec(format!(
                "sqrt {} already exists in GF({}); use field GF {} instead",
                d, p, p
            )));
        }
        Ok(QuadPrimeField { p, d: dr.value })
    }

    fn base(&self) -> PrimeField {
        PrimeField { p: self.p }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpQuadElem {
    pub a: u64,
    pub b: u64,
}

impl Field for QuadPrimeField {
    type Elem = FpQuadElem;

    fn zero(&self) -> FpQuadElem {
        FpQuadElem { a: 0, b: 0 }
    }
    fn one(&self) -> FpQuadElem {
        FpQuadElem { a: 1 % self.p, b: 0 }
    }
    fn add(&self, x: &FpQuadElem, y: &FpQuadElem) -> FpQuadElem {
        let p = self.p;
        FpQuadElem {
            a: (x.a + y.a) % p,
            b: (x.b + y.b) % p,
        }
    }
    fn sub(&self, x: &FpQuadElem, y: &FpQuadElem) -> FpQuadElem {
        let p = self.p;
        FpQuadElem {
            a: (x.a + p - y.a) % p,
            b: (x.b + p - y.b) % p,
        }
    }
    fn mul(&self, x: &FpQuadElem, y: &FpQuadElem) -> FpQuadElem {
        let p = self.p;
        let a = (mul_mod(x.a, y.a, p) + mul_mod(mul_mod(x.b, y.b, p), self.d, p)) % p;
        let b = (mul_mod(x.a, y.b, p) + mul_mod(x.b, y.a, p)) % p;
        FpQuadElem { a, b }
    }
    fn neg(&self, x: &FpQuadElem) -> FpQuadElem {
        let p = self.p;
        FpQuadElem {
            a: if x.a == 0 { 0 } else { p - x.a },
            b: if x.b == 0 { 0 } else { p - x.b },
        }
    }
    fn inv(&self, x: &FpQuadElem) -> Result<FpQuadElem> {
        let p = self.p;
        // norm = a^2 - d b^2 is nonzero for nonzero x since d is a non-residue
        let norm = (mul_mod(x.a, x.a, p) + p - mul_mod(mul_mod(x.b, x.b, p), self.d, p) % p) % p;
        if norm == 0 {
            return Err(Error::NotInvertible);
        }
        let ninv = FpElem {
            value: norm,
            modulus: p,
        }
        .inv()?
        .value;
        Ok(FpQuadElem {
            a: mul_mod(x.a, ninv, p),
            b: mul_mod(if x.b == 0 { 0 } else { p - x.b }, ninv, p),
        })
    }
    fn is_zero(&self, x: &FpQuadElem) -> bool {
        x.a == 0 && x.b == 0
    }
    fn from_integer(&self, n: i64) -> FpQuadElem {
        FpQuadElem {
            a: FpElem::reduce(n, self.p).value,
            b: 0,
        }
    }
    fn from_rational(&self, r: &BigRational) -> Option<FpQuadElem> {
        reduce_rational_mod(r, self.p).map(|a| FpQuadElem { a, b: 0 })
    }
    fn from_quad(&self, a: &BigRational, b: &BigRational) -> Option<FpQuadElem> {
        Some(FpQuadElem {
            a: reduce_rational_mod(a, self.p)?,
            b: reduce_rational_mod(b, self.p)?,
        })
    }
    fn characteristic(&self) -> Option<u64> {
        Some(self.p)
    }
    fn pth_root(&self, x: &FpQuadElem) -> FpQuadElem {
        // x^(1/p) = x^p in F_{p^2}
        self.pow(x, self.p)
    }
    fn format_elem(&self, x: &FpQuadElem) -> String {
        if x.b == 0 {
            x.a.to_string()
        } else if x.a == 0 {
            if x.b == 1 {
                "s".to_string()
            } else {
                format!("{}*s", x.b)
            }
        } else if x.b == 1 {
            format!("{} + s", x.a)
        } else {
            format!("{} + {}*s", x.a, x.b)
        }
    }
    fn elem_needs_parens(&self, x: &FpQuadElem) -> bool {
        x.a != 0 && x.b != 0
    }
}

impl QuadPrimeField {
    pub fn pow(&self, x: &FpQuadElem, mut e: u64) -> FpQuadElem {
        let mut base = *x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn base_field(&self) -> PrimeField {
        self.base()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_basic() {
        let f = Rationals;
        let a = f.from_rational(&BigRational::new(BigInt::from(3), BigInt::from(4))).unwrap();
        let b = f.from_integer(2);
        assert_eq!(f.format_elem(&f.mul(&a, &b)), "3/2");
        assert_eq!(f.format_elem(&f.one()), "1");
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn prime_field_ops() {
        let f = PrimeField::new(101).unwrap();
        let a = f.from_integer(-5);
        assert_eq!(a.value, 96);
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), f.one());
        assert!(PrimeField::new(100).is_err());
    }

    #[test]
    fn quad_rationals_inverse() {
        let f = QuadRationals::new(-7).unwrap();
        let x = f
            .from_quad(
                &BigRational::new(BigInt::from(1), BigInt::from(2)),
                &BigRational::new(BigInt::from(-3), BigInt::from(5)),
            )
            .unwrap();
        let inv = f.inv(&x).unwrap();
        assert!(f.is_one(&f.mul(&x, &inv)));
        assert!(QuadRationals::new(12).is_err(), "12 = 4*3 is not square-free");
        assert!(QuadRationals::new(1).is_err());
    }

    #[test]
    fn quad_prime_field_is_field() {
        // -7 is a non-residue mod 13 (squares mod 13: 1,4,9,3,12,10)
        assert!(sqrt_mod(-7, 13).is_none());
        let f = QuadPrimeField::new(13, -7).unwrap();
        for a in 0..13u64 {
            for b in 0..13u64 {
                let x = FpQuadElem { a, b };
                if f.is_zero(&x) {
                    assert!(f.inv(&x).is_err());
                } else {
                    let inv = f.inv(&x).unwrap();
                    assert!(f.is_one(&f.mul(&x, &inv)), "{:?}", x);
                }
            }
        }
        // split prime rejected: -7 = 4 mod 11 is a square
        assert!(QuadPrimeField::new(11, -7).is_err());
    }

    #[test]
    fn quad_prime_field_frobenius() {
        let f = QuadPrimeField::new(13, -7).unwrap();
        let x = FpQuadElem { a: 5, b: 9 };
        let r = f.pth_root(&x);
        let mut back = r;
        // p-th power returns the original
        back = f.pow(&back, 13);
        assert_eq!(back, x);
    }
}
