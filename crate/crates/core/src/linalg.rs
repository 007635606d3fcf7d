//! Exact dense linear algebra over a coefficient field: reduced row echelon
//! form, kernel bases and span membership. Elimination is deterministic
//! (leftmost pivot, first eligible row), so results are canonical.

use crate::field::Field;

/// Reduced row echelon form in place. Returns the pivot column of each
/// (nonzero) row, in order.
pub fn rref<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(sel) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, sel);
        let inv = field
            .inv(&rows[rank][col])
            .expect("pivot entry is nonzero");
        for c in col..ncols {
            rows[rank][c] = field.mul(&rows[rank][c], &inv);
        }
        for r in 0..rows.len() {
            if r != rank && !field.is_zero(&rows[r][col]) {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let t = field.mul(&factor, &rows[rank][c]);
                    rows[r][c] = field.sub(&rows[r][c], &t);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// Canonical kernel basis of the matrix (one vector per free column, with a
/// 1 in that column), ordered by free column index.
pub fn kernel_basis<F: Field>(
    field: &F,
    mut rows: Vec<Vec<F::Elem>>,
    ncols: usize,
) -> Vec<Vec<F::Elem>> {
    for r in &rows {
        debug_assert_eq!(r.len(), ncols);
    }
    let pivots = rref(field, &mut rows);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (ri, &pc) in pivots.iter().enumerate() {
            // pivot row: x_pc + sum coeff * x_free = 0
            v[pc] = field.neg(&rows[ri][free]);
        }
        basis.push(v);
    }
    basis
}

/// Is `v` in the row span? `rows` must already be in RREF with `pivots`.
pub fn in_row_span<F: Field>(
    field: &F,
    rows: &[Vec<F::Elem>],
    pivots: &[usize],
    v: &[F::Elem],
) -> bool {
    let mut v = v.to_vec();
    for (ri, &pc) in pivots.iter().enumerate() {
        if !field.is_zero(&v[pc]) {
            let factor = v[pc].clone();
            for c in 0..v.len() {
                let t = field.mul(&factor, &rows[ri][c]);
                v[c] = field.sub(&v[c], &t);
            }
        }
    }
    v.iter().all(|e| field.is_zero(e))
}

/// First linear dependency among the listed vectors: coefficients `c` with
/// `sum c_i v_i = 0` and the last coefficient equal to 1, if the last vector
/// depends on the earlier ones.
pub fn dependency_on_last<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> Option<Vec<F::Elem>> {
    let k = vectors.len();
    if k == 0 {
        return None;
    }
    let dim = vectors[0].len();
    // columns are the vectors; kernel vectors are dependencies
    let mut rows = vec![vec![field.zero(); k]; dim];
    for (j, v) in vectors.iter().enumerate() {
        for (i, e) in v.iter().enumerate() {
            rows[i][j] = e.clone();
        }
    }
    let kernel = kernel_basis(field, rows, k);
    for dep in kernel {
        if !field.is_zero(&dep[k - 1]) {
            let inv = field.inv(&dep[k - 1]).ok()?;
            return Some(dep.iter().map(|c| field.mul(c, &inv)).collect());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rref_and_kernel() {
        let f = PrimeField::new(101).unwrap();
        let e = |v: i64| f.from_integer(v);
        let rows = vec![
            vec![e(1), e(2), e(3)],
            vec![e(2), e(4), e(6)],
            vec![e(0), e(1), e(1)],
        ];
        let kern = kernel_basis(&f, rows, 3);
        assert_eq!(kern.len(), 1);
        // check the kernel vector annihilates the original rows
        let orig = [[1i64, 2, 3], [2, 4, 6], [0, 1, 1]];
        for row in orig {
            let mut acc = f.zero();
            for (c, k) in row.iter().zip(&kern[0]) {
                acc = f.add(&acc, &f.mul(&e(*c), k));
            }
            assert!(f.is_zero(&acc));
        }
    }

    #[test]
    fn span_membership() {
        let f = Rationals;
        let e = |v: i64| f.from_integer(v);
        let mut rows = vec![vec![e(1), e(0), e(1)], vec![e(0), e(1), e(2)]];
        let pivots = rref(&f, &mut rows);
        assert!(in_row_span(&f, &rows, &pivots, &[e(2), e(3), e(8)]));
        assert!(!in_row_span(&f, &rows, &pivots, &[e(0), e(0), e(1)]));
    }

    #[test]
    fn dependency_detects_minimal_relation() {
        let f = Rationals;
        let e = |v: i64| f.from_integer(v);
        let v0 = vec![e(1), e(0)];
        let v1 = vec![e(0), e(1)];
        let v2 = vec![e(2), e(3)];
        assert!(dependency_on_last(&f, &[v0.clone(), v1.clone()]).is_none());
        // v2 = 2 v0 + 3 v1, so -2 v0 - 3 v1 + v2 = 0
        let dep = dependency_on_last(&f, &[v0, v1, v2]).unwrap();
        assert_eq!(dep[0], e(-2));
        assert_eq!(dep[1], e(-3));
        assert_eq!(dep[2], e(1));
    }
}
