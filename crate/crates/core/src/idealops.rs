//! Ideal-level operations: quotient, saturation, elimination, intersection,
//! Hilbert dimension/degree, and the reduced-subscheme degree of
//! zero-dimensional ideals.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, ideal_membership, normal_form, GroebnerBasis, GroebnerConfig};
use crate::linalg::dependency_on_last;
use crate::polyring::{Monomial, MonomialOrder, Poly, Ring};
use crate::univar::UniPoly;

/// A polynomial ideal with per-order Groebner basis caching. The cache is
/// write-once per order and shared across clones.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Poly<F>>,
    config: GroebnerConfig,
    cache: Arc<RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis<F>>>>>,
}

impl<F: Field> PartialEq for Ideal<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: Ring<F>, gens: Vec<Poly<F>>) -> Self {
        Ideal {
            ring,
            gens,
            config: GroebnerConfig::default(),
            cache: Arc::new(RwLock::new(HashMap::new())),
        }
    }

    pub fn with_config(mut self, config: GroebnerConfig) -> Self {
        self.config = config;
        self
    }

    pub fn config(&self) -> GroebnerConfig {
        self.config
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    /// Reduced Groebner basis under the given order, from cache when
    /// available (last writer wins on identical values).
    pub fn groebner_basis(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(gb) = self.cache.read().expect("cache lock").get(&order) {
            return Ok(Arc::clone(gb));
        }
        let gb = Arc::new(buchberger(&self.gens, order, &self.config)?);
        self.cache
            .write()
            .expect("cache lock")
            .insert(order, Arc::clone(&gb));
        Ok(gb)
    }

    pub fn gb(&self) -> Result<Arc<GroebnerBasis<F>>> {
        self.groebner_basis(self.ring.order())
    }

    pub fn contains(&self, f: &Poly<F>) -> Result<bool> {
        let gb = self.gb()?;
        ideal_membership(f, &gb)
    }

    /// Ideal equality by double membership against both reduced bases.
    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::IncompatibleRings);
        }
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every generator of `other` lies in `self` (so V(self) is a subscheme
    /// of V(other)).
    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }
}

fn aux_var_name<F: Field>(ring: &Ring<F>) -> String {
    let mut name = "t".to_string();
    let mut i = 0;
    while ring.vars().contains(&name) {
        name = format!("t{}", i);
        i += 1;
    }
    name
}

fn prepend_zero_exponent<F: Field>(p: &Poly<F>, target: &Ring<F>) -> Poly<F> {
    let terms = p
        .terms()
        .iter()
        .map(|(c, m)| {
            let mut e = Vec::with_capacity(m.0.len() + 1);
            e.push(0);
            e.extend_from_slice(&m.0);
            (c.clone(), Monomial(e))
        })
        .collect();
    target.poly_from_terms(terms)
}

fn strip_first_exponent<F: Field>(p: &Poly<F>, target: &Ring<F>) -> Poly<F> {
    let terms = p
        .terms()
        .iter()
        .map(|(c, m)| {
            debug_assert_eq!(m.0[0], 0);
            (c.clone(), Monomial(m.0[1..].to_vec()))
        })
        .collect();
    target.poly_from_terms(terms)
}

/// `I ∩ J` via the auxiliary variable construction `t I + (1 - t) J`,
/// eliminating `t` by a block order.
pub fn intersect<F: Field>(lhs: &Ideal<F>, rhs: &Ideal<F>) -> Result<Ideal<F>> {
    if lhs.ring() != rhs.ring() {
        return Err(Error::IncompatibleRings);
    }
    let ring = lhs.ring().clone();
    if lhs.is_zero_ideal() || rhs.is_zero_ideal() {
        let zero = ring.zero();
        return Ok(Ideal::new(ring, vec![zero]).with_config(lhs.config));
    }
    let ext = ring
        .with_prepended_var(&aux_var_name(&ring))
        .with_order(MonomialOrder::Block(1));
    let t = ext.var(0);
    let one_minus_t = ext.one().sub(&t)?;
    let mut gens = Vec::new();
    for g in lhs.generators() {
        gens.push(t.mul(&prepend_zero_exponent(g, &ext))?);
    }
    for g in rhs.generators() {
        gens.push(one_minus_t.mul(&prepend_zero_exponent(g, &ext))?);
    }
    let gb = buchberger(&gens, MonomialOrder::Block(1), &lhs.config)?;
    let kept: Vec<Poly<F>> = gb
        .polys()
        .iter()
        .filter(|p| !p.uses_var(0))
        .map(|p| strip_first_exponent(p, &ring))
        .collect();
    let kept = if kept.is_empty() {
        vec![ring.zero()]
    } else {
        kept
    };
    Ok(Ideal::new(ring, kept).with_config(lhs.config))
}

/// Exact division `f / g` when `g` divides `f`; `None` otherwise.
pub fn divide_exact<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Option<Poly<F>> {
    if g.is_zero() {
        return None;
    }
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let (gc, gm) = g.leading_term().ok()?;
    let (gc, gm) = (gc.clone(), gm.clone());
    let mut p = f.clone();
    let mut quo_terms = Vec::new();
    while !p.is_zero() {
        let (pc, pm) = p.leading_term().ok()?;
        let q_mon = pm.div(&gm)?;
        let q_coef = field.div(pc, &gc).ok()?;
        p = p.sub(&g.mul_term(&q_coef, &q_mon)).ok()?;
        quo_terms.push((q_coef, q_mon));
    }
    Some(ring.poly_from_terms(quo_terms))
}

/// Ideal quotient `I : J`, computed as the intersection over generators `g`
/// of `J` of `(I ∩ (g)) / g`.
pub fn quotient<F: Field>(ideal: &Ideal<F>, by: &Ideal<F>) -> Result<Ideal<F>> {
    if ideal.ring() != by.ring() {
        return Err(Error::IncompatibleRings);
    }
    let ring = ideal.ring().clone();
    let nonzero: Vec<&Poly<F>> = by.generators().iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::QuotientByZeroIdeal);
    }
    let mut acc: Option<Ideal<F>> = None;
    for g in nonzero {
        let principal = Ideal::new(ring.clone(), vec![g.clone()]).with_config(ideal.config);
        let meet = intersect(ideal, &principal)?;
        let divided: Vec<Poly<F>> = meet
            .generators()
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| divide_exact(p, g).expect("members of I ∩ (g) are divisible by g"))
            .collect();
        let divided = if divided.is_empty() {
            vec![ring.zero()]
        } else {
            divided
        };
        let q = Ideal::new(ring.clone(), divided).with_config(ideal.config);
        acc = Some(match acc {
            None => q,
            Some(prev) => intersect(&prev, &q)?,
        });
    }
    Ok(acc.expect("at least one generator"))
}

/// Saturation `I : J^∞`: iterate the quotient until it stabilizes
/// (equality checked by double membership).
pub fn saturate<F: Field>(ideal: &Ideal<F>, by: &Ideal<F>) -> Result<Ideal<F>> {
    let mut current = ideal.clone();
    loop {
        let next = quotient(&current, by)?;
        if next.equals(&current)? {
            return Ok(next);
        }
        current = next;
    }
}

/// `I ∩ k[x_{k+1}, ..., x_n]` via a block order; the result lives in the
/// same ring but its generators are free of the first `k` variables.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, k: usize) -> Result<Ideal<F>> {
    let ring = ideal.ring().clone();
    if k >= ring.arity() {
        return Err(Error::ArityMismatch {
            expected: ring.arity(),
            got: k,
        });
    }
    if k == 0 {
        return Ok(ideal.clone());
    }
    let gb = ideal.groebner_basis(MonomialOrder::Block(k))?;
    let kept: Vec<Poly<F>> = gb
        .polys()
        .iter()
        .filter(|p| (0..k).all(|i| !p.uses_var(i)))
        .map(|p| ring.poly_from_terms(p.terms().to_vec()))
        .collect();
    let kept = if kept.is_empty() {
        vec![ring.zero()]
    } else {
        kept
    };
    Ok(Ideal::new(ring, kept).with_config(ideal.config()))
}

/// Projective dimension and degree of a homogeneous ideal, read off the
/// Hilbert series of its leading-term ideal. The empty scheme reports
/// dimension -1 and degree 0.
pub fn hilbert_data<F: Field>(ideal: &Ideal<F>) -> Result<(i64, u64)> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let gb = ideal.gb()?;
    let n = ideal.ring().arity();
    let lt: Vec<Monomial> = gb.leading_monomials();
    let numerator = hilbert_numerator(&minimalize_monomials(lt));
    if numerator.iter().all(|&c| c == 0) {
        // leading term ideal is the whole ring
        return Ok((-1, 0));
    }
    let mut nn = numerator;
    let mut cancelled = 0usize;
    while eval_at_one(&nn) == 0 {
        nn = divide_by_one_minus_t(&nn);
        cancelled += 1;
    }
    let krull = n as i64 - cancelled as i64;
    if krull <= 0 {
        return Ok((-1, 0));
    }
    let degree = eval_at_one(&nn);
    debug_assert!(degree > 0, "multiplicity is positive");
    Ok((krull - 1, degree as u64))
}

fn minimalize_monomials(mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort_by_key(|m| m.degree());
    monos.dedup();
    let mut keep: Vec<Monomial> = Vec::new();
    for m in monos {
        if !keep.iter().any(|k| k.divides(&m)) {
            keep.push(m);
        }
    }
    keep
}

/// Numerator of the Hilbert series of `R/(monomial ideal)` over the full
/// `(1-t)^n` denominator; standard pivot-variable recursion.
fn hilbert_numerator(gens: &[Monomial]) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    let arity = gens[0].0.len();
    // variable occurring most often; supports the coprime base case
    let mut counts = vec![0usize; arity];
    for m in gens {
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let (pivot_var, &max_count) = counts
        .iter()
        .enumerate()
        .max_by_key(|&(i, &c)| (c, std::cmp::Reverse(i)))
        .expect("nonempty");
    if max_count <= 1 {
        // pairwise coprime generators: product formula
        let mut acc = vec![1i64];
        for m in gens {
            acc = poly_mul(&acc, &one_minus_t_pow(m.degree() as usize));
        }
        return acc;
    }
    // split at x = pivot_var: N(I) = N(I + (x)) + t * N(I : x)
    let x = Monomial::var(arity, pivot_var);
    let mut plus: Vec<Monomial> = gens
        .iter()
        .filter(|m| m.0[pivot_var] == 0)
        .cloned()
        .collect();
    plus.push(x.clone());
    let quo: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            if m.0[pivot_var] > 0 {
                let mut e = m.0.clone();
                e[pivot_var] -= 1;
                Monomial(e)
            } else {
                m.clone()
            }
        })
        .collect();
    let a = hilbert_numerator(&minimalize_monomials(plus));
    let b = hilbert_numerator(&minimalize_monomials(quo));
    poly_add(&a, &shift(&b, 1))
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn shift(a: &[i64], k: usize) -> Vec<i64> {
    let mut out = vec![0i64; k];
    out.extend_from_slice(a);
    out
}

fn one_minus_t_pow(d: usize) -> Vec<i64> {
    let mut v = vec![0i64; d + 1];
    v[0] = 1;
    v[d] = -1;
    v
}

fn eval_at_one(a: &[i64]) -> i64 {
    a.iter().sum()
}

fn divide_by_one_minus_t(a: &[i64]) -> Vec<i64> {
    // N(t) = (1 - t) Q(t): q_k = n_k + q_{k-1}
    let mut out = Vec::with_capacity(a.len().saturating_sub(1));
    let mut carry = 0i64;
    for (i, &c) in a.iter().enumerate() {
        if i + 1 == a.len() {
            debug_assert_eq!(carry + c, 0, "exact division by (1 - t)");
            break;
        }
        carry += c;
        out.push(carry);
    }
    if out.is_empty() {
        vec![0]
    } else {
        out
    }
}

/// Staircase (monomials outside the leading term ideal). `None` when the
/// ideal is not zero-dimensional in the affine sense (some variable lacks a
/// pure power among the leading terms).
pub fn staircase<F: Field>(gb: &GroebnerBasis<F>, arity: usize) -> Option<Vec<Monomial>> {
    let lt = gb.leading_monomials();
    if lt.iter().any(|m| m.is_one()) {
        return Some(Vec::new());
    }
    let mut bounds = vec![None::<u32>; arity];
    for m in &lt {
        let support: Vec<usize> = (0..arity).filter(|&i| m.0[i] > 0).collect();
        if support.len() == 1 {
            let i = support[0];
            let e = m.0[i];
            bounds[i] = Some(bounds[i].map_or(e, |b| b.min(e)));
        }
    }
    if gb.polys().is_empty() {
        return if arity == 0 {
            Some(vec![Monomial(Vec::new())])
        } else {
            None
        };
    }
    let bounds: Option<Vec<u32>> = bounds.into_iter().collect();
    let bounds = bounds?;
    let mut out = Vec::new();
    let mut current = vec![0u32; arity];
    fn rec(
        i: usize,
        bounds: &[u32],
        lt: &[Monomial],
        current: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        // prune: monomial already divisible by a leading term supported on
        // the assigned prefix
        let assigned = |m: &Monomial| (i..current.len()).all(|j| m.0[j] == 0);
        if lt
            .iter()
            .filter(|m| assigned(m))
            .any(|m| (0..i).all(|j| m.0[j] <= current[j]))
        {
            return;
        }
        if i == current.len() {
            out.push(Monomial(current.clone()));
            return;
        }
        for e in 0..bounds[i] {
            current[i] = e;
            rec(i + 1, bounds, lt, current, out);
        }
        current[i] = 0;
    }
    rec(0, &bounds, &lt, &mut current, &mut out);
    Some(out)
}

/// Affine vector-space dimension of `R/I` for a zero-dimensional ideal.
pub fn affine_degree<F: Field>(ideal: &Ideal<F>) -> Result<usize> {
    let gb = ideal.gb()?;
    let st =
        staircase(&gb, ideal.ring().arity()).ok_or(Error::RadicalRequiresZeroDimensional)?;
    Ok(st.len())
}

/// Radical of a zero-dimensional affine ideal by Seidenberg: add the
/// squarefree part of the minimal polynomial of every variable, then re-run
/// the basis.
pub fn zero_dim_radical<F: Field>(ideal: &Ideal<F>) -> Result<Ideal<F>> {
    let ring = ideal.ring().clone();
    let field = ring.field().clone();
    let gb = ideal.gb()?;
    if gb.is_unit_ideal() {
        return Ok(ideal.clone());
    }
    let st = staircase(&gb, ring.arity()).ok_or(Error::RadicalRequiresZeroDimensional)?;
    let basis_index: HashMap<Monomial, usize> = st
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let dim = st.len();
    let mut extra: Vec<Poly<F>> = Vec::new();
    for var in 0..ring.arity() {
        // vectors of successive powers of x_var in the quotient ring
        let mut vectors: Vec<Vec<F::Elem>> = Vec::new();
        let mut power = ring.one();
        let min_poly: UniPoly<F> = loop {
            let nf = normal_form(&power, gb.polys())?;
            let mut coords = vec![field.zero(); dim];
            for (c, m) in nf.terms() {
                let idx = basis_index
                    .get(m)
                    .expect("normal form lies in the staircase span");
                coords[*idx] = c.clone();
            }
            vectors.push(coords);
            if let Some(dep) = dependency_on_last(&field, &vectors) {
                break UniPoly::new(&field, dep);
            }
            power = power.mul(&ring.var(var))?;
        };
        let rad = min_poly.radical(&field);
        if rad.degree() != min_poly.degree() {
            extra.push(rad.to_multivariate(&ring, var));
        }
    }
    if extra.is_empty() {
        return Ok(ideal.clone());
    }
    let mut gens = ideal.generators().to_vec();
    gens.extend(extra);
    Ok(Ideal::new(ring, gens).with_config(ideal.config()))
}

/// Degree of the reduced subscheme (points over the algebraic closure,
/// multiplicity stripped).
///
/// Ideals that are zero-dimensional in the affine sense are counted
/// directly; otherwise a homogeneous ideal cutting a zero-dimensional
/// projective scheme is counted per affine chart, each point in the chart
/// of its first nonzero coordinate.
pub fn reduced_degree<F: Field>(ideal: &Ideal<F>) -> Result<usize> {
    let gb = ideal.gb()?;
    if staircase(&gb, ideal.ring().arity()).is_some() {
        let rad = zero_dim_radical(ideal)?;
        return affine_degree(&rad);
    }
    if !ideal.is_homogeneous() {
        return Err(Error::RadicalRequiresZeroDimensional);
    }
    let (dim, _) = hilbert_data(ideal)?;
    if dim != 0 {
        return Err(Error::RadicalRequiresZeroDimensional);
    }
    let mut total = 0usize;
    for chart in 0..ideal.ring().arity() {
        let chart_ideal = dehomogenize_chart(ideal, chart)?;
        let rad = zero_dim_radical(&chart_ideal)?;
        total += affine_degree(&rad)?;
    }
    Ok(total)
}

/// Scheme-theoretic degree of a zero-dimensional ideal (with multiplicity).
pub fn scheme_degree<F: Field>(ideal: &Ideal<F>) -> Result<usize> {
    let gb = ideal.gb()?;
    if staircase(&gb, ideal.ring().arity()).is_some() {
        return affine_degree(ideal);
    }
    if !ideal.is_homogeneous() {
        return Err(Error::RadicalRequiresZeroDimensional);
    }
    let (dim, deg) = hilbert_data(ideal)?;
    if dim != 0 {
        return Err(Error::RadicalRequiresZeroDimensional);
    }
    Ok(deg as usize)
}

/// Chart `i`: substitute `x_i = 1`, pin `x_j = 0` for `j < i` (each
/// projective point is counted in the chart of its first nonzero
/// coordinate), and pin the spent variables so the chart ideal is
/// zero-dimensional in the full ring.
fn dehomogenize_chart<F: Field>(ideal: &Ideal<F>, chart: usize) -> Result<Ideal<F>> {
    let ring = ideal.ring().clone();
    let images: Vec<Poly<F>> = (0..ring.arity())
        .map(|j| {
            if j < chart {
                ring.zero()
            } else if j == chart {
                ring.one()
            } else {
                ring.var(j)
            }
        })
        .collect();
    let mut gens: Vec<Poly<F>> = Vec::new();
    for g in ideal.generators() {
        gens.push(g.substitute_linear(&images)?);
    }
    for j in 0..=chart {
        gens.push(ring.var(j));
    }
    Ok(Ideal::new(ring, gens).with_config(ideal.config()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::parse_poly;

    fn qring(vars: &[&str]) -> Ring<Rationals> {
        Ring::new(
            Rationals,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
    }

    fn ideal(r: &Ring<Rationals>, gens: &[&str]) -> Ideal<Rationals> {
        Ideal::new(
            r.clone(),
            gens.iter().map(|s| parse_poly(r, s).unwrap()).collect(),
        )
    }

    #[test]
    fn intersect_examples() {
        let r = qring(&["x", "y"]);
        let i = ideal(&r, &["x"]);
        let j = ideal(&r, &["y"]);
        let meet = intersect(&i, &j).unwrap();
        assert!(meet.equals(&ideal(&r, &["x*y"])).unwrap());

        let meet_self = intersect(&i, &i).unwrap();
        assert!(meet_self.equals(&i).unwrap());

        // oracle for (x^2) ∩ (x*y) = (x^2*y): membership both ways
        let a = ideal(&r, &["x^2"]);
        let b = ideal(&r, &["x*y"]);
        let meet = intersect(&a, &b).unwrap();
        assert!(meet.equals(&ideal(&r, &["x^2*y"])).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let r = qring(&["x", "y"]);
        let q = quotient(&ideal(&r, &["x^2*y"]), &ideal(&r, &["x"])).unwrap();
        assert!(q.equals(&ideal(&r, &["x*y"])).unwrap());

        // the doubled-divisor pattern on a principal ideal
        let r3 = qring(&["x", "y", "z"]);
        let conic_sq = ideal(&r3, &["(x^2 + y^2 - z^2)^2"]);
        let conic = ideal(&r3, &["x^2 + y^2 - z^2"]);
        let q = quotient(&conic_sq, &conic).unwrap();
        assert!(q.equals(&conic).unwrap());

        // oracle: f y in (x^2, x y) iff x | f
        let q = quotient(&ideal(&r, &["x^2", "x*y"]), &ideal(&r, &["y"])).unwrap();
        assert!(q.equals(&ideal(&r, &["x"])).unwrap());

        assert_eq!(
            quotient(&ideal(&r, &["x"]), &Ideal::new(r.clone(), vec![r.zero()])),
            Err(Error::QuotientByZeroIdeal)
        );
    }

    #[test]
    fn quotient_absorbs_and_random_products() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let f101 = PrimeField::new(101).unwrap();
        let r = Ring::new(
            f101,
            vec!["x".into(), "y".into()],
            MonomialOrder::Grevlex,
        );
        for _ in 0..10 {
            let rand_monic = |rng: &mut rand_chacha::ChaCha8Rng| loop {
                let terms: Vec<_> = (0..rng.gen_range(1..4))
                    .map(|_| {
                        (
                            f101.from_integer(rng.gen_range(1..101)),
                            Monomial(vec![rng.gen_range(0..3), rng.gen_range(0..3)]),
                        )
                    })
                    .collect();
                let p: Poly<PrimeField> = r.poly_from_terms(terms);
                if !p.is_zero() {
                    break p.monic();
                }
            };
            let f = rand_monic(&mut rng);
            let g = rand_monic(&mut rng);
            let fg = f.mul(&g).unwrap();
            let q = quotient(
                &Ideal::new(r.clone(), vec![fg]),
                &Ideal::new(r.clone(), vec![f.clone()]),
            )
            .unwrap();
            let expect = Ideal::new(r.clone(), vec![g.clone()]);
            assert!(q.equals(&expect).unwrap(), "({}*{}):({})", f, g, f);
            // absorption: (I : J) contains I
            let i = Ideal::new(r.clone(), vec![f.mul(&g).unwrap()]);
            let qq = quotient(&i, &Ideal::new(r.clone(), vec![f.clone()])).unwrap();
            assert!(qq.contains_ideal(&i).unwrap());
        }
    }

    #[test]
    fn saturate_examples() {
        let r = qring(&["x", "y"]);
        let i = ideal(&r, &["x^2", "x*y"]);
        let s = saturate(&i, &ideal(&r, &["y"])).unwrap();
        assert!(s.equals(&ideal(&r, &["x"])).unwrap());

        let s = saturate(&i, &ideal(&r, &["1"])).unwrap();
        assert!(s.equals(&i).unwrap());

        let x = ideal(&r, &["x"]);
        let s = saturate(&x, &x).unwrap();
        assert!(s.equals(&ideal(&r, &["1"])).unwrap());

        // idempotence
        let s1 = saturate(&i, &ideal(&r, &["y"])).unwrap();
        let s2 = saturate(&s1, &ideal(&r, &["y"])).unwrap();
        assert!(s1.equals(&s2).unwrap());
    }

    #[test]
    fn eliminate_examples() {
        let r = qring(&["x", "y", "z"]);
        let cubic = ideal(&r, &["y - x^2", "z - x^3"]);
        let elim = eliminate(&cubic, 1).unwrap();
        let rel = parse_poly(&r, "y^3 - z^2").unwrap();
        assert!(elim.contains(&rel).unwrap());
        for g in elim.generators() {
            assert!(!g.uses_var(0));
        }

        let line = ideal(&r, &["x - y"]);
        let e = eliminate(&line, 1).unwrap();
        assert!(e.is_zero_ideal());

        let same = eliminate(&cubic, 0).unwrap();
        assert!(same.equals(&cubic).unwrap());
    }

    #[test]
    fn hilbert_examples() {
        // hyperplane in P^3
        let r4 = qring(&["x0", "x1", "x2", "x3"]);
        let h = ideal(&r4, &["x0"]);
        assert_eq!(hilbert_data(&h).unwrap(), (2, 1));

        // twisted cubic in P^3: dim 1, degree 3
        let tc = ideal(&r4, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
        assert_eq!(hilbert_data(&tc).unwrap(), (1, 3));

        // point in P^2
        let r3 = qring(&["x", "y", "z"]);
        let pt = ideal(&r3, &["x", "y"]);
        assert_eq!(hilbert_data(&pt).unwrap(), (0, 1));

        // unit ideal: empty scheme
        let unit = ideal(&r3, &["1"]);
        assert_eq!(hilbert_data(&unit).unwrap(), (-1, 0));

        // whole space P^2
        let whole = Ideal::new(r3.clone(), vec![r3.zero()]);
        assert_eq!(hilbert_data(&whole).unwrap(), (2, 1));

        let affine = ideal(&r3, &["x - 1"]);
        assert_eq!(hilbert_data(&affine), Err(Error::NotHomogeneous));
    }

    #[test]
    fn hilbert_twisted_cubic_matches_monomial_count_oracle() {
        // oracle: count standard monomials degree by degree; Hilbert
        // polynomial of the twisted cubic is 3t + 1
        let r4 = qring(&["x0", "x1", "x2", "x3"]);
        let tc = ideal(&r4, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
        let gb = tc.gb().unwrap();
        let lt = gb.leading_monomials();
        for d in 2..=8u32 {
            let count = crate::polyring::monomials_of_degree(4, d)
                .into_iter()
                .filter(|m| !lt.iter().any(|l| l.divides(m)))
                .count();
            assert_eq!(count as u32, 3 * d + 1);
        }
    }

    #[test]
    fn radical_examples() {
        let r = qring(&["x", "y"]);
        let fat = ideal(&r, &["x^2", "y"]);
        let rad = zero_dim_radical(&fat).unwrap();
        assert!(rad.equals(&ideal(&r, &["x", "y"])).unwrap());

        let sqfree = ideal(&r, &["x^2 - 1", "y"]);
        let rad = zero_dim_radical(&sqfree).unwrap();
        assert!(rad.equals(&sqfree).unwrap());

        // ((x-1)^2 (x-2), y - x): degree drops 3 -> 2
        let i = ideal(&r, &["(x - 1)^2*(x - 2)", "y - x"]);
        assert_eq!(affine_degree(&i).unwrap(), 3);
        let rad = zero_dim_radical(&i).unwrap();
        assert_eq!(affine_degree(&rad).unwrap(), 2);
        assert!(rad
            .equals(&ideal(&r, &["(x - 1)*(x - 2)", "y - x"]))
            .unwrap());

        // positive dimensional input is rejected
        let curve = ideal(&r, &["x*y - 1"]);
        assert_eq!(
            zero_dim_radical(&curve),
            Err(Error::RadicalRequiresZeroDimensional)
        );
    }

    #[test]
    fn radical_char_p_frobenius_pattern() {
        let f5 = PrimeField::new(5).unwrap();
        let r = Ring::new(f5, vec!["x".into(), "y".into()], MonomialOrder::Grevlex);
        // x^5 - 1 = (x-1)^5 over F_5
        let gens = vec![
            parse_poly(&r, "x^5 - 1").unwrap(),
            parse_poly(&r, "y").unwrap(),
        ];
        let i = Ideal::new(r.clone(), gens);
        assert_eq!(affine_degree(&i).unwrap(), 5);
        let rad = zero_dim_radical(&i).unwrap();
        assert_eq!(affine_degree(&rad).unwrap(), 1);
        let expect = Ideal::new(
            r.clone(),
            vec![
                parse_poly(&r, "x - 1").unwrap(),
                parse_poly(&r, "y").unwrap(),
            ],
        );
        assert!(rad.equals(&expect).unwrap());
    }

    #[test]
    fn reduced_degree_examples() {
        let r = qring(&["x", "y"]);
        assert_eq!(reduced_degree(&ideal(&r, &["x^2", "y"])).unwrap(), 1);

        let four = ideal(&r, &["x^2 - 1", "y^2 - 1"]);
        assert_eq!(reduced_degree(&four).unwrap(), 4);

        // double conic against a transverse line in P^2: scheme degree 4,
        // two distinct points
        let r3 = qring(&["x", "y", "z"]);
        let slice = ideal(&r3, &["(x^2 + y^2 - z^2)^2", "y"]);
        assert_eq!(scheme_degree(&slice).unwrap(), 4);
        assert_eq!(reduced_degree(&slice).unwrap(), 2);
    }

    #[test]
    fn reduced_degree_counts_points_at_infinity() {
        // V(x*y) ∩ V(z) in P^2 (coords x, y, z): points (1:0:0) and (0:1:0)
        let r3 = qring(&["x", "y", "z"]);
        let i = ideal(&r3, &["x*y", "z"]);
        assert_eq!(reduced_degree(&i).unwrap(), 2);
        // doubled structure collapses
        let i2 = ideal(&r3, &["x^2*y^2", "z"]);
        assert_eq!(reduced_degree(&i2).unwrap(), 2);
    }

    #[test]
    fn reduced_degree_leq_scheme_degree() {
        let r = qring(&["x", "y"]);
        for gens in [
            vec!["x^3", "y^2"],
            vec!["x^2 - 1", "y"],
            vec!["(x - 1)*(x - 2)*(x - 3)", "y - x^2"],
        ] {
            let i = ideal(&r, &gens.iter().map(|s| *s).collect::<Vec<_>>());
            let rd = reduced_degree(&i).unwrap();
            let sd = scheme_degree(&i).unwrap();
            assert!(rd <= sd, "{:?}: {} > {}", gens, rd, sd);
            let rad = zero_dim_radical(&i).unwrap();
            let is_radical_already = rad.equals(&i).unwrap();
            assert_eq!(rd == sd, is_radical_already);
        }
    }

    #[test]
    fn degree_of_products_of_generic_lines() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let r3 = qring(&["x", "y", "z"]);
        for _ in 0..5 {
            let c = rng.gen_range(1..=4usize);
            let mut form = r3.one();
            let mut used = std::collections::HashSet::new();
            let mut made = 0;
            while made < c {
                let (a, b) = (rng.gen_range(1..20i64), rng.gen_range(1..20i64));
                if !used.insert((a, b)) {
                    continue;
                }
                let line = parse_poly(&r3, &format!("x + {}*y + {}*z", a, b)).unwrap();
                form = form.mul(&line).unwrap();
                made += 1;
            }
            let i = Ideal::new(r3.clone(), vec![form]);
            let (dim, deg) = hilbert_data(&i).unwrap();
            assert_eq!((dim, deg), (1, c as u64));
        }
    }

    #[test]
    fn multi_prime_consistency() {
        // twisted cubic reduced mod five good primes: hilbert data and
        // reduced slice degrees agree everywhere
        let primes = [5u64, 7, 11, 13, 17];
        let r4 = qring(&["x0", "x1", "x2", "x3"]);
        let tc_q = ideal(&r4, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
        let (dim_q, deg_q) = hilbert_data(&tc_q).unwrap();
        let slice_q = ideal(
            &r4,
            &[
                "x0*x2 - x1^2",
                "x1*x3 - x2^2",
                "x0*x3 - x1*x2",
                "x0 - x3",
            ],
        );
        let rdeg_q = reduced_degree(&slice_q).unwrap();
        for &p in &primes {
            let fp = PrimeField::new(p).unwrap();
            let rp = Ring::new(
                fp,
                vec!["x0".into(), "x1".into(), "x2".into(), "x3".into()],
                MonomialOrder::Grevlex,
            );
            let conv = |i: &Ideal<Rationals>| {
                Ideal::new(
                    rp.clone(),
                    i.generators()
                        .iter()
                        .map(|g| g.convert(&rp, |c| fp.from_rational(c)).unwrap())
                        .collect(),
                )
            };
            assert_eq!(hilbert_data(&conv(&tc_q)).unwrap(), (dim_q, deg_q));
            assert_eq!(reduced_degree(&conv(&slice_q)).unwrap(), rdeg_q);
        }
    }

    #[test]
    fn gb_cache_is_shared_and_stable() {
        let r = qring(&["x", "y"]);
        let i = ideal(&r, &["x^2 - y", "x*y - 1"]);
        let gb1 = i.gb().unwrap();
        let clone = i.clone();
        let gb2 = clone.gb().unwrap();
        assert!(Arc::ptr_eq(&gb1, &gb2));
    }
}
