//! Dense univariate polynomial helpers for the zero-dimensional radical:
//! Euclidean gcd, derivatives, p-th roots in characteristic p, and the
//! squarefree part via the factorization-free recursion
//! `rad(f) = lcm(rad(f / gcd(f, f')), rad(gcd(f, f')))`.

use crate::field::Field;
use crate::polyring::{Monomial, Poly, Ring};

/// Coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<F: Field> {
    pub coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().map(|c| field.is_zero(c)).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn monic(&self, field: &F) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = field.inv(lc).expect("nonzero leading coefficient");
                UniPoly {
                    coeffs: self.coeffs.iter().map(|c| field.mul(c, &inv)).collect(),
                }
            }
        }
    }

    pub fn mul(&self, field: &F, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = field.mul(a, b);
                out[i + j] = field.add(&out[i + j], &t);
            }
        }
        UniPoly::new(field, out)
    }

    pub fn div_rem(&self, field: &F, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let dr = rhs.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < rhs.coeffs.len() {
            return (UniPoly::zero(), self.clone());
        }
        let mut quo = vec![field.zero(); rem.len() - dr];
        let lc_inv = field.inv(rhs.leading().unwrap()).expect("nonzero divisor");
        for k in (dr..rem.len()).rev() {
            if field.is_zero(&rem[k]) {
                continue;
            }
            let q = field.mul(&rem[k], &lc_inv);
            quo[k - dr] = q.clone();
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = field.mul(&q, b);
                rem[k - dr + j] = field.sub(&rem[k - dr + j], &t);
            }
        }
        (UniPoly::new(field, quo), UniPoly::new(field, rem))
    }

    pub fn gcd(&self, field: &F, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn derivative(&self, field: &F) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| field.mul(c, &field.from_integer(i as i64)))
            .collect();
        UniPoly::new(field, out)
    }

    /// `f(x) = g(x^p)` gives `g` with coefficient-wise inverse Frobenius.
    /// Only valid when every exponent with a nonzero coefficient is a
    /// multiple of `p`.
    pub fn pth_root(&self, field: &F, p: u64) -> Self {
        let p = p as usize;
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            debug_assert_eq!(i % p, 0, "derivative-zero polynomial has p-step exponents");
            let j = i / p;
            while out.len() <= j {
                out.push(field.zero());
            }
            out[j] = field.pth_root(c);
        }
        UniPoly::new(field, out)
    }

    /// Squarefree part (the radical), valid in any characteristic the field
    /// supports. Monic output.
    pub fn radical(&self, field: &F) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        if self.degree() == Some(0) {
            return UniPoly {
                coeffs: vec![field.one()],
            };
        }
        let deriv = self.derivative(field);
        if deriv.is_zero() {
            let p = field
                .characteristic()
                .expect("zero derivative of a nonconstant forces characteristic p");
            return self.pth_root(field, p).radical(field);
        }
        let g = self.gcd(field, &deriv);
        if g.degree() == Some(0) {
            return self.monic(field);
        }
        let (quot, rem) = self.div_rem(field, &g);
        debug_assert!(rem.is_zero());
        let ra = quot.radical(field);
        let rg = g.radical(field);
        // lcm(ra, rg)
        let common = ra.gcd(field, &rg);
        let (lcm, rem) = ra.mul(field, &rg).div_rem(field, &common);
        debug_assert!(rem.is_zero());
        lcm.monic(field)
    }

    /// Read off a univariate in variable `var` of a multivariate ring.
    pub fn to_multivariate(&self, ring: &Ring<F>, var: usize) -> Poly<F> {
        let arity = ring.arity();
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !ring.field().is_zero(c))
            .map(|(i, c)| {
                let mut m = vec![0u32; arity];
                m[var] = i as u32;
                (c.clone(), Monomial(m))
            })
            .collect();
        ring.poly_from_terms(terms)
    }
}
