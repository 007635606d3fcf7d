//! Buchberger's algorithm with the coprime and chain criteria, multivariate
//! division, reduced bases and ideal membership.
//!
//! Everything is deterministic: the pair queue is ordered by
//! (lcm degree, lcm monomial, generator indices), divisors are tried in
//! listed order, and the final basis is the unique reduced one sorted by
//! leading monomial.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::polyring::{Monomial, MonomialOrder, Poly, Ring};

/// Limits for basis computations. The degree cap aborts runaway runs with a
/// clear error instead of hanging.
#[derive(Clone, Copy, Debug, Default)]
pub struct GroebnerConfig {
    pub degree_cap: Option<u32>,
}

/// A reduced Groebner basis: monic generators, pairwise in normal form,
/// sorted ascending by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    polys: Vec<Poly<F>>,
    order: MonomialOrder,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn polys(&self) -> &[Poly<F>] {
        &self.polys
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// The basis cuts out the whole ring (contains a nonzero constant).
    pub fn is_unit_ideal(&self) -> bool {
        self.polys
            .iter()
            .any(|p| p.leading_monomial().map(|m| m.is_one()).unwrap_or(false))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .filter_map(|p| p.leading_monomial().cloned())
            .collect()
    }
}

/// Remainder of `f` on division by `basis`: no term of the result is
/// divisible by any basis leading monomial. Divisors are tried in listed
/// order, so the result is deterministic.
pub fn normal_form<F: Field>(f: &Poly<F>, basis: &[Poly<F>]) -> Result<Poly<F>> {
    let ring = f.ring().clone();
    for g in basis {
        f.check_same_ring(g)?;
    }
    let field = ring.field().clone();
    let mut p = f.clone();
    let mut remainder: Vec<(F::Elem, Monomial)> = Vec::new();
    'outer: while !p.is_zero() {
        let (lc, lm) = {
            let (c, m) = p.leading_term()?;
            (c.clone(), m.clone())
        };
        for g in basis {
            if g.is_zero() {
                continue;
            }
            let (gc, gm) = g.leading_term()?;
            if let Some(q) = lm.div(gm) {
                let c = field.div(&lc, gc)?;
                p = p.sub(&g.mul_term(&c, &q))?;
                continue 'outer;
            }
        }
        // leading term irreducible: move it to the remainder
        remainder.push((lc.clone(), lm.clone()));
        p = p.sub(&ring.monomial(lc, lm))?;
    }
    Ok(ring.poly_from_terms(remainder))
}

/// The canonical cancellation of two leading terms.
pub fn s_polynomial<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<Poly<F>> {
    f.check_same_ring(g)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.ring().field().clone();
    let (fc, fm) = f.leading_term()?;
    let (gc, gm) = g.leading_term()?;
    let lcm = fm.lcm(gm);
    let uf = lcm.div(fm).expect("lcm divisible by both");
    let ug = lcm.div(gm).expect("lcm divisible by both");
    let a = f.mul_term(&field.inv(fc)?, &uf);
    let b = g.mul_term(&field.inv(gc)?, &ug);
    a.sub(&b)
}

/// Pair queue entry; orders by (lcm degree, lcm monomial, indices).
#[derive(Clone, Debug, PartialEq, Eq)]
struct Pair {
    deg: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
    order: MonomialOrder,
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| self.order.cmp(&self.lcm, &other.lcm))
            .then_with(|| self.i.cmp(&other.i))
            .then_with(|| self.j.cmp(&other.j))
    }
}

/// Reduced Groebner basis of the generated ideal under the given order.
///
/// Zero generators are dropped; the zero ideal yields the empty basis.
pub fn buchberger<F: Field>(
    generators: &[Poly<F>],
    order: MonomialOrder,
    config: &GroebnerConfig,
) -> Result<GroebnerBasis<F>> {
    let mut gens: Vec<Poly<F>> = generators.iter().filter(|p| !p.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(GroebnerBasis {
            polys: Vec::new(),
            order,
        });
    }
    let base_ring = gens[0].ring().clone();
    for g in &gens {
        g.check_same_ring(&gens[0])?;
    }
    let work_ring = if base_ring.order() == order {
        base_ring.clone()
    } else {
        base_ring.with_order(order)
    };
    if work_ring != base_ring {
        gens = gens
            .iter()
            .map(|g| reinterpret(g, &work_ring))
            .collect();
    }

    let mut basis: Vec<Poly<F>> = Vec::new();
    for g in gens {
        basis.push(g.monic());
    }

    let mut queue: BTreeSet<Pair> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let add_pairs = |basis: &[Poly<F>],
                         new_idx: usize,
                         queue: &mut BTreeSet<Pair>,
                         pending: &mut HashSet<(usize, usize)>| {
        let lm_new = basis[new_idx].leading_monomial().unwrap().clone();
        for t in 0..new_idx {
            let lm_t = basis[t].leading_monomial().unwrap();
            // coprime-leading-term criterion
            if lm_t.coprime(&lm_new) {
                continue;
            }
            let lcm = lm_t.lcm(&lm_new);
            queue.insert(Pair {
                deg: lcm.degree(),
                lcm,
                i: t,
                j: new_idx,
                order,
            });
            pending.insert((t, new_idx));
        }
    };
    for idx in 1..basis.len() {
        add_pairs(&basis, idx, &mut queue, &mut pending);
    }

    while let Some(pair) = queue.pop_first() {
        pending.remove(&(pair.i, pair.j));
        // chain (lcm) criterion: some other basis element divides the lcm and
        // both connecting pairs have already left the queue
        let chain = (0..basis.len()).any(|k| {
            if k == pair.i || k == pair.j {
                return false;
            }
            let lm_k = basis[k].leading_monomial().unwrap();
            lm_k.divides(&pair.lcm)
                && !pending.contains(&key(pair.i, k))
                && !pending.contains(&key(pair.j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[pair.i], &basis[pair.j])?;
        let r = normal_form(&s, &basis)?;
        if r.is_zero() {
            continue;
        }
        if let Some(cap) = config.degree_cap {
            if r.total_degree().unwrap_or(0) > cap {
                return Err(Error::DegreeCapExceeded(cap));
            }
        }
        basis.push(r.monic());
        let new_idx = basis.len() - 1;
        add_pairs(&basis, new_idx, &mut queue, &mut pending);
    }

    let polys = reduce_basis(basis)?;
    Ok(GroebnerBasis { polys, order })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Move a polynomial into a ring that differs only in monomial order.
fn reinterpret<F: Field>(p: &Poly<F>, target: &Ring<F>) -> Poly<F> {
    target.poly_from_terms(p.terms().to_vec())
}

/// Minimize then interreduce: unique reduced basis, sorted ascending by
/// leading monomial.
fn reduce_basis<F: Field>(mut basis: Vec<Poly<F>>) -> Result<Vec<Poly<F>>> {
    basis.retain(|p| !p.is_zero());
    if basis.is_empty() {
        return Ok(basis);
    }
    let order = basis[0].ring().order();
    // minimization: drop any element whose leading monomial is divisible by
    // another kept element's leading monomial
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lm_i = basis[i].leading_monomial().unwrap().clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lm_j = basis[j].leading_monomial().unwrap();
            if lm_j.divides(&lm_i) && (*lm_j != lm_i || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut reduced: Vec<Poly<F>> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| if k { Some(p) } else { None })
        .collect();
    // interreduce tails to a fixpoint
    loop {
        let mut changed = false;
        for i in 0..reduced.len() {
            let others: Vec<Poly<F>> = reduced
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let r = normal_form(&reduced[i], &others)?.monic();
            if r != reduced[i] {
                reduced[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    reduced.retain(|p| !p.is_zero());
    reduced.sort_by(|a, b| {
        order.cmp(
            a.leading_monomial().unwrap(),
            b.leading_monomial().unwrap(),
        )
    });
    Ok(reduced)
}

/// True iff `normal_form(f, basis) = 0`.
pub fn ideal_membership<F: Field>(f: &Poly<F>, gb: &GroebnerBasis<F>) -> Result<bool> {
    if gb.polys.is_empty() {
        return Ok(f.is_zero());
    }
    let target = gb.polys[0].ring().clone();
    let f = if f.ring() == &target {
        f.clone()
    } else if f.ring().vars() == target.vars() && f.ring().field() == target.field() {
        reinterpret(f, &target)
    } else {
        return Err(Error::IncompatibleRings);
    };
    Ok(normal_form(&f, &gb.polys)?.is_zero())
}

/// Exhaustive check that every S-polynomial of basis pairs reduces to zero.
pub fn is_groebner_basis<F: Field>(polys: &[Poly<F>]) -> Result<bool> {
    for i in 0..polys.len() {
        for j in (i + 1)..polys.len() {
            let s = s_polynomial(&polys[i], &polys[j])?;
            if !normal_form(&s, polys)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::parse_poly;

    fn qring(vars: &[&str], order: MonomialOrder) -> Ring<Rationals> {
        Ring::new(
            Rationals,
            vars.iter().map(|s| s.to_string()).collect(),
            order,
        )
    }

    fn qp(r: &Ring<Rationals>, s: &str) -> Poly<Rationals> {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let r = qring(&["x", "y"], MonomialOrder::Grevlex);
        let f = qp(&r, "x^2*y + x - 1");
        assert!(normal_form(&f, &[f.clone()]).unwrap().is_zero());

        let g = qp(&r, "x^2 - 1");
        let nf = normal_form(&qp(&r, "x^2*y"), &[g]).unwrap();
        assert_eq!(nf, qp(&r, "y"));

        let nf = normal_form(&qp(&r, "x"), &[qp(&r, "y")]).unwrap();
        assert_eq!(nf, qp(&r, "x"));
    }

    #[test]
    fn normal_form_divisor_order_is_respected() {
        let r = qring(&["x", "y"], MonomialOrder::Grevlex);
        let f = qp(&r, "x*y");
        let a = qp(&r, "x - 1");
        let b = qp(&r, "y - 2");
        let nf_ab = normal_form(&f, &[a.clone(), b.clone()]).unwrap();
        let nf_ba = normal_form(&f, &[b, a]).unwrap();
        // both are valid remainders (here they agree as full reductions)
        assert_eq!(nf_ab, qp(&r, "2"));
        assert_eq!(nf_ba, qp(&r, "2"));
    }

    #[test]
    fn s_polynomial_examples() {
        let r = qring(&["x", "y"], MonomialOrder::Grevlex);
        let f = qp(&r, "x^2 - y");
        assert!(s_polynomial(&f, &f).unwrap().is_zero());

        let g = qp(&r, "x*y - 1");
        // hand expansion: y*(x^2 - y) - x*(x*y - 1) = x - y^2
        assert_eq!(s_polynomial(&f, &g).unwrap(), qp(&r, "x - y^2"));

        // coprime leading monomials reduce to zero against the pair
        let a = qp(&r, "x^2 + y");
        let b = qp(&r, "y^2 + 1");
        let s = s_polynomial(&a, &b).unwrap();
        assert!(normal_form(&s, &[a, b]).unwrap().is_zero());

        assert_eq!(
            s_polynomial(&r.zero(), &f),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn buchberger_single_generator() {
        let r = qring(&["x", "y"], MonomialOrder::Grevlex);
        let gb = buchberger(&[qp(&r, "x")], MonomialOrder::Grevlex, &Default::default()).unwrap();
        assert_eq!(gb.polys(), &[qp(&r, "x")]);
    }

    #[test]
    fn buchberger_textbook_pair() {
        let r = qring(&["x", "y"], MonomialOrder::Grevlex);
        let gens = [qp(&r, "x^2 - y"), qp(&r, "x*y - 1")];
        let gb = buchberger(&gens, MonomialOrder::Grevlex, &Default::default()).unwrap();
        let expect = vec![qp(&r, "y^2 - x"), qp(&r, "x*y - 1"), qp(&r, "x^2 - y")];
        assert_eq!(gb.polys(), expect.as_slice());
        assert!(is_groebner_basis(gb.polys()).unwrap());
    }

    #[test]
    fn zero_ideal_empty_basis() {
        let r = qring(&["x"], MonomialOrder::Grevlex);
        let gb = buchberger(&[r.zero()], MonomialOrder::Grevlex, &Default::default()).unwrap();
        assert!(gb.is_empty());
    }

    #[test]
    fn twisted_cubic_chart_elimination() {
        let r = qring(&["x", "y", "z"], MonomialOrder::Block(1));
        let gens = [qp(&r, "y - x^2"), qp(&r, "z - x^3")];
        let gb = buchberger(&gens, MonomialOrder::Block(1), &Default::default()).unwrap();
        let x_free: Vec<_> = gb.polys().iter().filter(|p| !p.uses_var(0)).collect();
        assert!(!x_free.is_empty());
        // oracle: parametrization t -> (t, t^2, t^3); x-free members must
        // vanish identically as polynomials in t
        for g in &x_free {
            let mut t_coeffs = std::collections::HashMap::<u32, num_rational::BigRational>::new();
            for (c, m) in g.terms() {
                let t_deg = 2 * m.0[1] + 3 * m.0[2];
                let entry = t_coeffs
                    .entry(t_deg)
                    .or_insert_with(|| num_rational::BigRational::from_integer(0.into()));
                *entry += c.clone();
            }
            assert!(
                t_coeffs.values().all(num_traits::Zero::is_zero),
                "{} does not vanish on the twisted cubic",
                g
            );
        }
        // y^3 - z^2 is among the relations
        let rel = qp(&r, "y^3 - z^2");
        assert!(ideal_membership(&rel, &gb).unwrap());
    }

    #[test]
    fn membership_examples() {
        let r = qring(&["x", "y"], MonomialOrder::Grevlex);
        let gens = [qp(&r, "x"), qp(&r, "y")];
        let gb = buchberger(&gens, MonomialOrder::Grevlex, &Default::default()).unwrap();
        assert!(ideal_membership(&gens[0], &gb).unwrap());
        assert!(!ideal_membership(&qp(&r, "1"), &gb).unwrap());

        let gbx = buchberger(&[qp(&r, "x")], MonomialOrder::Grevlex, &Default::default()).unwrap();
        assert!(ideal_membership(&qp(&r, "x^2 + x"), &gbx).unwrap());
    }

    #[test]
    fn idempotence_and_permutation_invariance() {
        let f101 = PrimeField::new(101).unwrap();
        let r = Ring::new(
            f101,
            vec!["x".into(), "y".into(), "z".into()],
            MonomialOrder::Grevlex,
        );
        let gens = [
            parse_poly(&r, "x^2*y - z^2").unwrap(),
            parse_poly(&r, "x*z - y^2").unwrap(),
            parse_poly(&r, "y^3 + x - 7").unwrap(),
        ];
        let gb = buchberger(&gens, MonomialOrder::Grevlex, &Default::default()).unwrap();
        let again = buchberger(gb.polys(), MonomialOrder::Grevlex, &Default::default()).unwrap();
        assert_eq!(gb.polys(), again.polys());

        let perms: [[usize; 3]; 3] = [[2, 0, 1], [1, 2, 0], [2, 1, 0]];
        for perm in perms {
            let shuffled: Vec<_> = perm.iter().map(|&i| gens[i].clone()).collect();
            let gb2 = buchberger(&shuffled, MonomialOrder::Grevlex, &Default::default()).unwrap();
            assert_eq!(gb.polys(), gb2.polys());
        }
        // ideal equality both directions
        for g in &gens {
            assert!(ideal_membership(g, &gb).unwrap());
        }
        let orig = buchberger(&gens, MonomialOrder::Grevlex, &Default::default()).unwrap();
        for b in orig.polys() {
            assert!(ideal_membership(b, &gb).unwrap());
        }
    }

    #[test]
    fn degree_cap_aborts() {
        let r = qring(&["x", "y"], MonomialOrder::Grevlex);
        let gens = [qp(&r, "x^2 - y"), qp(&r, "x*y - 1")];
        let config = GroebnerConfig { degree_cap: Some(1) };
        assert_eq!(
            buchberger(&gens, MonomialOrder::Grevlex, &config),
            Err(Error::DegreeCapExceeded(1))
        );
    }

    #[test]
    fn s_polys_reduce_for_random_f101_ideals() {
        // a small smoke version of the full acceptance sweep
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let f101 = PrimeField::new(101).unwrap();
        let r = Ring::new(
            f101,
            vec!["x".into(), "y".into(), "z".into()],
            MonomialOrder::Grevlex,
        );
        for _ in 0..20 {
            let ngens = rng.gen_range(1..=4);
            let gens: Vec<_> = (0..ngens)
                .map(|_| {
                    let nterms = rng.gen_range(1..=4);
                    let terms: Vec<_> = (0..nterms)
                        .map(|_| {
                            let c = f101.from_integer(rng.gen_range(1..101));
                            let m = Monomial(vec![
                                rng.gen_range(0..3),
                                rng.gen_range(0..3),
                                rng.gen_range(0..2),
                            ]);
                            (c, m)
                        })
                        .collect();
                    r.poly_from_terms(terms)
                })
                .filter(|p: &Poly<PrimeField>| !p.is_zero())
                .collect();
            if gens.is_empty() {
                continue;
            }
            let gb = buchberger(&gens, MonomialOrder::Grevlex, &Default::default()).unwrap();
            assert!(is_groebner_basis(gb.polys()).unwrap());
        }
    }
}
