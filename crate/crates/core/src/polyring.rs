//! Sparse multivariate polynomials over a pluggable coefficient field, with
//! grevlex, lex and block elimination orders.
//!
//! Polynomials are immutable values in canonical form: terms strictly
//! decreasing in the ring order, no zero coefficients, and the zero
//! polynomial has an empty term list.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// A total, multiplicative well-ordering on exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Eliminates the first `k` variables: compares the first block first,
    /// grevlex within each block.
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex_cmp(&a.0, &b.0),
            MonomialOrder::Lex => lex_cmp(&a.0, &b.0),
            MonomialOrder::Block(k) => {
                let k = k.min(a.0.len());
                grevlex_cmp(&a.0[..k], &b.0[..k]).then_with(|| grevlex_cmp(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Block(k) => write!(f, "block {}", k),
        }
    }
}

fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for i in (0..a.len()).rev() {
                if a[i] != b[i] {
                    // smaller exponent on the later variable wins
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        }
        other => other,
    }
}

fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    for i in 0..a.len() {
        if a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    Ordering::Equal
}

/// An exponent vector of length equal to the ring arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(&a, &b)| a <= b)
    }

    pub fn div(&self, rhs: &Monomial) -> Option<Monomial> {
        if rhs.divides(self) {
            Some(Monomial(
                self.0
                    .iter()
                    .zip(&rhs.0)
                    .map(|(&a, &b)| a - b)
                    .collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(&a, &b)| a == 0 || b == 0)
    }
}

#[derive(Debug)]
struct RingData<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// A polynomial ring descriptor: field, named variables and monomial order.
/// Cheap to clone; rings compare by content.
#[derive(Debug)]
pub struct Ring<F: Field>(Arc<RingData<F>>);

impl<F: Field> Clone for Ring<F> {
    fn clone(&self) -> Self {
        Ring(Arc::clone(&self.0))
    }
}

impl<F: Field> PartialEq for Ring<F> {
    fn eq(&self, other: &Self) -> bool {
        self.0.field == other.0.field
            && self.0.vars == other.0.vars
            && self.0.order == other.0.order
    }
}
impl<F: Field> Eq for Ring<F> {}

impl<F: Field> Ring<F> {
    pub fn new(field: F, vars: Vec<String>, order: MonomialOrder) -> Self {
        Ring(Arc::new(RingData { field, vars, order }))
    }

    pub fn field(&self) -> &F {
        &self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn arity(&self) -> usize {
        self.0.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    /// Same ring with a different order (for elimination passes).
    pub fn with_order(&self, order: MonomialOrder) -> Ring<F> {
        Ring::new(self.0.field.clone(), self.0.vars.clone(), order)
    }

    /// Ring with one auxiliary variable prepended (for the intersection
    /// construction).
    pub fn with_prepended_var(&self, name: &str) -> Ring<F> {
        let mut vars = vec![name.to_string()];
        vars.extend(self.0.vars.iter().cloned());
        Ring::new(self.0.field.clone(), vars, self.0.order)
    }

    pub fn zero(&self) -> Poly<F> {
        Poly {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F> {
        if self.0.field.is_zero(&c) {
            self.zero()
        } else {
            Poly {
                ring: self.clone(),
                terms: vec![(c, Monomial::one(self.arity()))],
            }
        }
    }

    pub fn one(&self) -> Poly<F> {
        self.constant(self.0.field.one())
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        Poly {
            ring: self.clone(),
            terms: vec![(self.0.field.one(), Monomial::var(self.arity(), i))],
        }
    }

    pub fn monomial(&self, c: F::Elem, m: Monomial) -> Poly<F> {
        assert_eq!(m.0.len(), self.arity());
        if self.0.field.is_zero(&c) {
            self.zero()
        } else {
            Poly {
                ring: self.clone(),
                terms: vec![(c, m)],
            }
        }
    }

    /// Build from an arbitrary term list, normalizing to canonical form.
    pub fn poly_from_terms(&self, terms: Vec<(F::Elem, Monomial)>) -> Poly<F> {
        let mut terms = terms;
        for (_, m) in &terms {
            assert_eq!(m.0.len(), self.arity(), "monomial arity mismatch");
        }
        let order = self.0.order;
        terms.sort_by(|a, b| order.cmp(&b.1, &a.1));
        let mut out: Vec<(F::Elem, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            if let Some(last) = out.last_mut() {
                if last.1 == m {
                    last.0 = self.0.field.add(&last.0, &c);
                    continue;
                }
            }
            out.push((c, m));
        }
        out.retain(|(c, _)| !self.0.field.is_zero(c));
        Poly {
            ring: self.clone(),
            terms: out,
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }
}

/// A sparse polynomial in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F: Field> {
    ring: Ring<F>,
    terms: Vec<(F::Elem, Monomial)>,
}

impl<F: Field> Poly<F> {
    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn terms(&self) -> &[(F::Elem, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Maximal term under the ring order. Errors on the zero polynomial.
    pub fn leading_term(&self) -> Result<(&F::Elem, &Monomial)> {
        self.terms
            .first()
            .map(|(c, m)| (c, m))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(_, m)| m)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((_, m0)) => {
                let d = self.terms.iter().map(|(_, m)| m.degree()).max().unwrap_or(0);
                let _ = m0;
                self.terms.iter().all(|(_, m)| m.degree() == d)
            }
        }
    }

    pub fn check_same_ring(&self, rhs: &Poly<F>) -> Result<()> {
        if self.ring == rhs.ring {
            Ok(())
        } else {
            Err(Error::IncompatibleRings)
        }
    }

    pub fn add(&self, rhs: &Poly<F>) -> Result<Poly<F>> {
        self.check_same_ring(rhs)?;
        Ok(self.merge(rhs, false))
    }

    pub fn sub(&self, rhs: &Poly<F>) -> Result<Poly<F>> {
        self.check_same_ring(rhs)?;
        Ok(self.merge(rhs, true))
    }

    fn merge(&self, rhs: &Poly<F>, negate_rhs: bool) -> Poly<F> {
        let field = self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let take_left = if i >= self.terms.len() {
                false
            } else if j >= rhs.terms.len() {
                true
            } else {
                match order.cmp(&self.terms[i].1, &rhs.terms[j].1) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => {
                        let r = if negate_rhs {
                            field.sub(&self.terms[i].0, &rhs.terms[j].0)
                        } else {
                            field.add(&self.terms[i].0, &rhs.terms[j].0)
                        };
                        if !field.is_zero(&r) {
                            out.push((r, self.terms[i].1.clone()));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                }
            };
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else {
                let (c, m) = &rhs.terms[j];
                let c = if negate_rhs { field.neg(c) } else { c.clone() };
                out.push((c, m.clone()));
                j += 1;
            }
        }
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Poly<F> {
        let field = self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(c, m)| (field.neg(c), m.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Poly<F>) -> Result<Poly<F>> {
        self.check_same_ring(rhs)?;
        let field = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ca, ma) in &self.terms {
            for (cb, mb) in &rhs.terms {
                terms.push((field.mul(ca, cb), ma.mul(mb)));
            }
        }
        Ok(self.ring.poly_from_terms(terms))
    }

    pub fn scale(&self, c: &F::Elem) -> Poly<F> {
        let field = self.ring.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, m)| (field.mul(a, c), m.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Poly<F> {
        let field = self.ring.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, mm)| (field.mul(a, c), mm.mul(m)))
                .collect(),
        }
    }

    /// Monic rescale (leading coefficient 1). Identity on the zero poly.
    pub fn monic(&self) -> Poly<F> {
        match self.terms.first() {
            None => self.clone(),
            Some((lc, _)) => {
                let inv = self
                    .ring
                    .field()
                    .inv(lc)
                    .expect("leading coefficient of a nonzero polynomial");
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Result<Poly<F>> {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Poly<F> {
        let field = self.ring.field();
        let mut terms = Vec::new();
        for (c, m) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            terms.push((field.mul(c, &field.from_integer(e as i64)), m2));
        }
        self.ring.poly_from_terms(terms)
    }

    /// Replace each variable by a degree-at-most-1 image in the target ring.
    pub fn substitute_linear(&self, images: &[Poly<F>]) -> Result<Poly<F>> {
        if images.len() != self.ring.arity() {
            return Err(Error::ArityMismatch {
                expected: self.ring.arity(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring().clone(),
            None => self.ring.clone(),
        };
        for img in images {
            if img.ring() != &target {
                return Err(Error::IncompatibleRings);
            }
            if img.total_degree().unwrap_or(0) > 1 {
                return Err(Error::NonLinearImage);
            }
        }
        let field = target.field();
        let mut acc = target.zero();
        for (c, m) in &self.terms {
            let mut term = target.constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e)?)?;
                }
            }
            let _ = field;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Exact value at a point.
    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.ring.arity() {
            return Err(Error::ArityMismatch {
                expected: self.ring.arity(),
                got: point.len(),
            });
        }
        let field = self.ring.field();
        let mut acc = field.zero();
        for (c, m) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v = field.mul(&v, &point[i]);
                }
            }
            acc = field.add(&acc, &v);
        }
        Ok(acc)
    }

    /// Coefficient-wise transport into another ring with the same variables.
    /// `None` if any coefficient fails to map (bad prime).
    pub fn convert<G, M>(&self, target: &Ring<G>, map: M) -> Option<Poly<G>>
    where
        G: Field,
        M: Fn(&F::Elem) -> Option<G::Elem>,
    {
        assert_eq!(target.arity(), self.ring.arity());
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            terms.push((map(c)?, m.clone()));
        }
        Some(target.poly_from_terms(terms))
    }

    /// Homogenize sanity: max variable index actually used.
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(_, m)| m.0[i] > 0)
    }

    pub fn constant_coefficient(&self) -> F::Elem {
        self.terms
            .iter()
            .find(|(_, m)| m.is_one())
            .map(|(c, _)| c.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// Exact ring arithmetic in canonical form; errors on a ring mismatch.
pub fn ring_arith<F: Field>(f: &Poly<F>, g: &Poly<F>, op: RingOp) -> Result<Poly<F>> {
    match op {
        RingOp::Add => f.add(g),
        RingOp::Sub => f.sub(g),
        RingOp::Mul => f.mul(g),
    }
}

/// All monomials of exact degree `d` in `arity` variables, in decreasing
/// grevlex-compatible enumeration (deterministic).
pub fn monomials_of_degree(arity: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; arity];
    fn rec(i: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == current.len() {
            current[i] = remaining;
            out.push(Monomial(current.clone()));
            current[i] = 0;
            return;
        }
        for e in (0..=remaining).rev() {
            current[i] = e;
            rec(i + 1, remaining - e, current, out);
        }
        current[i] = 0;
    }
    if arity == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(0, d, &mut current, &mut out);
    out
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        let vars = self.ring.vars();
        let mut first = true;
        for (c, m) in &self.terms {
            let mon = format_monomial(vars, m);
            let cs = field.format_elem(c);
            let piece = if m.is_one() {
                if field.elem_needs_parens(c) {
                    format!("({})", cs)
                } else {
                    cs.clone()
                }
            } else if field.is_one(c) {
                mon
            } else if cs == "-1" {
                format!("-{}", mon)
            } else if field.elem_needs_parens(c) {
                format!("({})*{}", cs, mon)
            } else {
                format!("{}*{}", cs, mon)
            };
            if first {
                write!(f, "{}", piece)?;
                first = false;
            } else if let Some(stripped) = piece.strip_prefix('-') {
                write!(f, " - {}", stripped)?;
            } else {
                write!(f, " + {}", piece)?;
            }
        }
        Ok(())
    }
}

fn format_monomial(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 1 {
            parts.push(vars[i].clone());
        } else if e > 1 {
            parts.push(format!("{}^{}", vars[i], e));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
