//! Integer matrices and the exact integer linear algebra behind lattice
//! reduction: Bareiss determinants, Hermite and Smith normal forms, and LLL
//! reduction with respect to an integral quadratic form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{PolytopeError, Result};

/// Dense rectangular matrix with `i64` entries. Algorithms promote to
/// arbitrary precision internally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(PolytopeError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(PolytopeError::Shape("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == i64::from(r == c)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(PolytopeError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += i128::from(self.get(i, k)) * i128::from(other.get(k, j));
                }
                out.set(
                    i,
                    j,
                    i64::try_from(acc).map_err(|_| PolytopeError::Overflow)?,
                );
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(PolytopeError::Shape(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|i| {
                let acc: i128 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| i128::from(a) * i128::from(b))
                    .sum();
                i64::try_from(acc).map_err(|_| PolytopeError::Overflow)
            })
            .collect()
    }

    /// Row vector times matrix: `v * self`.
    pub fn vec_mul(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.rows {
            return Err(PolytopeError::Shape(format!(
                "vector of length {} for {} rows",
                v.len(),
                self.rows
            )));
        }
        (0..self.cols)
            .map(|j| {
                let acc: i128 = (0..self.rows)
                    .map(|i| i128::from(v[i]) * i128::from(self.get(i, j)))
                    .sum();
                i64::try_from(acc).map_err(|_| PolytopeError::Overflow)
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    fn to_big(&self) -> BigMat {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn from_big(m: &BigMat, cols: usize) -> Result<Self> {
        let data = m
            .iter()
            .flat_map(|row| row.iter())
            .map(|x| x.to_i64().ok_or(PolytopeError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Self::new(m.len(), cols, data)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|r| self.row(r)))
            .finish()
    }
}

type BigMat = Vec<Vec<BigInt>>;

fn identity_big(n: usize) -> BigMat {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect()
}

/// `row[target] -= q * row[source]`
fn row_axpy(m: &mut BigMat, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src) {
        *t -= q * s;
    }
}

/// `col[target] -= q * col[source]`
fn col_axpy(m: &mut BigMat, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let s = row[source].clone();
        row[target] -= q * s;
    }
}

fn swap_cols(m: &mut BigMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_bareiss(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(PolytopeError::Shape(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    Ok(det_big(m.to_big()))
}

fn det_big(mut a: BigMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Row Hermite normal form: returns `(H, U)` with `H = U * M`, `U` unimodular,
/// `H` in row echelon form with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`. Zero rows sit at the bottom.
pub fn hnf(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let (h, u, _) = hnf_big(m.to_big(), m.cols);
    Ok((
        IntMatrix::from_big(&h, m.cols)?,
        IntMatrix::from_big(&u, m.rows)?,
    ))
}

/// Rank of an integer matrix.
pub fn rank(m: &IntMatrix) -> usize {
    hnf_big(m.to_big(), m.cols).2
}

fn hnf_big(mut h: BigMat, cols: usize) -> (BigMat, BigMat, usize) {
    let rows = h.len();
    let mut u = identity_big(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let pivot = (r..rows)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&a, &b| h[a][c].abs().cmp(&h[b][c].abs()));
            let Some(p) = pivot else { break };
            h.swap(p, r);
            u.swap(p, r);
            let mut clean = true;
            for i in r + 1..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                if !h[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut().chain(u[r].iter_mut()) {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        r += 1;
    }
    (h, u, r)
}

/// Smith normal form with both transforms and the inverse of the right one.
pub(crate) struct Smith {
    pub diagonal: Vec<BigInt>,
    pub right: BigMat,
    pub right_inv: BigMat,
}

/// Computes `U * A * V = diag(d_1, ..., d_r, 0, ...)` with `d_i | d_{i+1}`.
/// Only `V`, `V^-1` and the diagonal are kept.
pub(crate) fn smith(a: &IntMatrix) -> Smith {
    let mut m = a.to_big();
    let (rows, cols) = (a.rows, a.cols);
    let mut v = identity_big(cols);
    let mut v_inv = identity_big(cols);
    let mut diagonal = Vec::new();

    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(pi, t);
        swap_cols(&mut m, pj, t);
        swap_cols(&mut v, pj, t);
        v_inv.swap(pj, t);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                row_axpy(&mut m, i, t, &q);
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                col_axpy(&mut m, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                // inverse of the column operation acts on rows of V^-1
                row_axpy(&mut v_inv, t, j, &-q);
                clean &= m[t][j].is_zero();
            }
            if !clean {
                // bring the smallest remainder in row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    m.swap(best.0, t);
                } else if best.1 != t {
                    swap_cols(&mut m, best.1, t);
                    swap_cols(&mut v, best.1, t);
                    v_inv.swap(best.1, t);
                }
                continue;
            }
            let bad_row =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&m[t][t])));
            match bad_row {
                Some(i) => {
                    // row_t += row_i brings a non-multiple into row t
                    let minus_one = -BigInt::one();
                    row_axpy(&mut m, t, i, &minus_one);
                }
                None => break,
            }
        }
        diagonal.push(m[t][t].abs());
        t += 1;
    }
    Smith {
        diagonal,
        right: v,
        right_inv: v_inv,
    }
}

/// LLL-reduces the standard basis of `Z^d` with respect to the positive
/// definite form `gram`. Returns `(W, W^-1)`; the columns of `W` are the
/// reduced basis vectors.
pub(crate) fn lll_gram(gram: &[Vec<BigInt>]) -> (BigMat, BigMat) {
    let d = gram.len();
    let mut w = identity_big(d);
    let mut inv = identity_big(d);
    // Gram matrix of the current basis, kept in sync with every basis update
    let mut g: BigMat = gram.to_vec();

    let gso = |g: &BigMat| -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let mut mu = vec![vec![BigRational::zero(); d]; d];
        let mut norms: Vec<BigRational> = Vec::with_capacity(d);
        for i in 0..d {
            for j in 0..i {
                let mut val = BigRational::from_integer(g[i][j].clone());
                for l in 0..j {
                    val -= &mu[j][l] * &mu[i][l] * &norms[l];
                }
                mu[i][j] = val / &norms[j];
            }
            let mut n = BigRational::from_integer(g[i][i].clone());
            for l in 0..i {
                n -= &mu[i][l] * &mu[i][l] * &norms[l];
            }
            norms.push(n);
        }
        (mu, norms)
    };

    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let (mut mu, mut norms) = gso(&g);
    let mut k = 1;
    while k < d {
        for j in (0..k).rev() {
            if mu[k][j].abs() <= half {
                continue;
            }
            let q = mu[k][j].round().to_integer();
            // b_k -= q b_j: column k of W, row j of W^-1, and the Gram matrix
            col_axpy(&mut w, k, j, &q);
            row_axpy(&mut inv, j, k, &-&q);
            row_axpy(&mut g, k, j, &q);
            col_axpy(&mut g, k, j, &q);
            let qr = BigRational::from_integer(q);
            let (head, tail) = mu.split_at_mut(k);
            for (target, source) in tail[0][..j].iter_mut().zip(&head[j][..j]) {
                *target -= &qr * source;
            }
            mu[k][j] -= &qr;
        }
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if norms[k] >= rhs {
            k += 1;
        } else {
            swap_cols(&mut w, k, k - 1);
            inv.swap(k, k - 1);
            g.swap(k, k - 1);
            swap_cols(&mut g, k, k - 1);
            (mu, norms) = gso(&g);
            k = (k - 1).max(1);
        }
    }
    (w, inv)
}

pub(crate) fn big_to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(PolytopeError::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Cofactor expansion, independent of the elimination path.
    fn det_cofactor(m: &[Vec<i64>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * i128::from(m[0][c]) * det_cofactor(&minor)
            })
            .sum()
    }

    #[test]
    fn determinants() {
        assert_eq!(det_bareiss(&IntMatrix::identity(3)).unwrap(), BigInt::one());
        assert_eq!(
            det_bareiss(&mat(&[&[0, 1], &[1, 0]])).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            det_bareiss(&mat(&[&[2, 4], &[1, 2]])).unwrap(),
            BigInt::zero()
        );
        assert!(det_bareiss(&IntMatrix::zeros(2, 3)).is_err());
        assert_eq!(det_bareiss(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::one());
    }

    #[test]
    fn hermite_examples() {
        let (h, u) = hnf(&IntMatrix::identity(2)).unwrap();
        assert!(h.is_identity() && u.is_identity());
        let d = mat(&[&[2, 0], &[0, 3]]);
        let (h, u) = hnf(&d).unwrap();
        assert_eq!(h, d);
        assert!(u.is_identity());

        // differences of {(1,-1,0), (2,-2,0), (0,0,-4)} from the first point
        let diffs = mat(&[&[1, -1, 0], &[-1, 1, -4]]);
        let (h, u) = hnf(&diffs).unwrap();
        assert_eq!(rank(&diffs), 2);
        assert_eq!(u.mul(&diffs).unwrap(), h);
        assert_eq!(h, mat(&[&[1, -1, 0], &[0, 0, 4]]));
    }

    #[test]
    fn smith_of_diagonal() {
        let s = smith(&mat(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        let s = smith(&mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(
            s.diagonal,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
    }

    fn to_matrix(m: &BigMat) -> IntMatrix {
        IntMatrix::from_big(m, m.first().map_or(0, Vec::len)).unwrap()
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(entries in proptest::collection::vec(-9i64..=9, 16)) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(<[i64]>::to_vec).collect();
            let m = IntMatrix::from_rows(&rows).unwrap();
            prop_assert_eq!(det_bareiss(&m).unwrap(), BigInt::from(det_cofactor(&rows)));
        }

        #[test]
        fn hnf_is_unimodular_transform(entries in proptest::collection::vec(-9i64..=9, 12)) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(<[i64]>::to_vec).collect();
            let m = IntMatrix::from_rows(&rows).unwrap();
            let (h, u) = hnf(&m).unwrap();
            prop_assert_eq!(u.mul(&m).unwrap(), h);
            prop_assert_eq!(det_bareiss(&u).unwrap().abs(), BigInt::one());
        }

        #[test]
        fn smith_transforms_are_inverse(entries in proptest::collection::vec(-9i64..=9, 12)) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(<[i64]>::to_vec).collect();
            let m = IntMatrix::from_rows(&rows).unwrap();
            let s = smith(&m);
            let v = to_matrix(&s.right);
            let v_inv = to_matrix(&s.right_inv);
            prop_assert!(v.mul(&v_inv).unwrap().is_identity());
            // A * V has zero columns beyond the rank
            let av = m.mul(&v).unwrap();
            for j in s.diagonal.len()..4 {
                prop_assert!((0..3).all(|i| av.get(i, j) == 0));
            }
            for w in s.diagonal.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }

        #[test]
        fn lll_returns_unimodular_pair(entries in proptest::collection::vec(-30i64..=30, 9)) {
            // Gram matrix G = B^T B of a random nonsingular B
            let rows: Vec<Vec<i64>> = entries.chunks(3).map(<[i64]>::to_vec).collect();
            let b = IntMatrix::from_rows(&rows).unwrap();
            prop_assume!(!det_bareiss(&b).unwrap().is_zero());
            let g = b.transpose().mul(&b).unwrap();
            let gram: Vec<Vec<BigInt>> = g.to_rows().into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect()).collect();
            let (w, w_inv) = lll_gram(&gram);
            prop_assert!(to_matrix(&w).mul(&to_matrix(&w_inv)).unwrap().is_identity());
        }
    }
}
