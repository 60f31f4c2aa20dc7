//! Dense linear algebra over the small fields of [`Field`].

use super::field::Field;

/// Row-reduced echelon form of `rows`, returned together with the pivot column
/// of every nonzero row. Pivots are only taken among the first `cols` columns;
/// any trailing columns are carried along by the row operations.
pub fn rref(f: &Field, rows: &[Vec<u8>], cols: usize) -> (Vec<Vec<u8>>, Vec<usize>) {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let s = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, s);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let k = m[i][c];
                for j in 0..m[r].len() {
                    let v = f.mul(k, m[r][j]);
                    m[i][j] = f.sub(m[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(f: &Field, rows: &[Vec<u8>], cols: usize) -> usize {
    rref(f, rows, cols).1.len()
}

/// Basis of `{x : M x = 0}` for the matrix with the given rows.
pub fn kernel(f: &Field, rows: &[Vec<u8>], cols: usize) -> Vec<Vec<u8>> {
    let (m, pivots) = rref(f, rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u8; cols];
            v[fc] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

/// Outcome of solving an affine system `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// A particular solution with every free variable set to zero.
    Unique(Vec<u8>),
    /// Indices of equations whose combination yields `0 = nonzero`.
    Inconsistent(Vec<usize>),
}

/// Solve `A x = b`. Each equation is `(coefficients, rhs)`.
pub fn solve(f: &Field, equations: &[(Vec<u8>, u8)], vars: usize) -> Solution {
    // Augment with rhs and an identity block tracking row provenance.
    let n = equations.len();
    let rows: Vec<Vec<u8>> = equations
        .iter()
        .enumerate()
        .map(|(i, (coef, rhs))| {
            let mut r = coef.clone();
            r.push(*rhs);
            r.extend((0..n).map(|j| u8::from(i == j)));
            r
        })
        .collect();
    let (m, pivots) = rref(f, &rows, vars + 1);
    if let Some(i) = pivots.iter().position(|&c| c == vars) {
        let used = (0..n).filter(|&j| m[i][vars + 1 + j] != 0).collect();
        return Solution::Inconsistent(used);
    }
    let mut x = vec![0u8; vars];
    for (row, &pc) in m.iter().zip(&pivots) {
        x[pc] = row[vars];
    }
    Solution::Unique(x)
}

/// Apply the matrix (given as columns = images of basis vectors) to `v`.
pub fn apply_columns(f: &Field, columns: &[Vec<u8>], out_dim: usize, v: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; out_dim];
    for (col, &coef) in columns.iter().zip(v) {
        if coef == 0 {
            continue;
        }
        for (o, &c) in out.iter_mut().zip(col) {
            *o = f.add(*o, f.mul(coef, c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = Field::get(3).unwrap();
        let rows = vec![vec![1, 2, 0, 1], vec![0, 1, 1, 2]];
        let k = kernel(f, &rows, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                assert_eq!(f.dot(r, v), 0);
            }
        }
    }

    #[test]
    fn inconsistent_system_reports_participating_rows() {
        let f = Field::get(2).unwrap();
        let eqs = vec![(vec![1, 0], 1), (vec![0, 1], 0), (vec![1, 1], 0)];
        match solve(f, &eqs, 2) {
            Solution::Inconsistent(rows) => assert_eq!(rows, vec![0, 1, 2]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn consistent_system_is_solved_with_zero_free_variables() {
        let f = Field::get(5).unwrap();
        let eqs = vec![(vec![2, 0, 1], 3)];
        let Solution::Unique(x) = solve(f, &eqs, 3) else { panic!() };
        assert_eq!(f.add(f.mul(2, x[0]), x[2]), 3);
        assert_eq!(x[1], 0);
    }
}
