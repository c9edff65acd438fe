//! Small square matrices over the F2 Laurent ring.

use std::fmt;

use thiserror::Error;

use crate::laurent::{
    ExponentVector, LaurentError, LaurentPoly, MonomialSubstitution, VariableList,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("supplied inverse does not satisfy U * U_inv = Id")]
    InverseCheckFailed,
    #[error("zero matrix has no monomial factorization")]
    ZeroMatrix,
    #[error("row {row} out of range for size {size}")]
    RowOutOfRange { row: usize, size: usize },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

pub type Result<T> = std::result::Result<T, MatrixError>;

/// A `d x d` matrix of Laurent polynomials sharing one variable list.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    vars: VariableList,
    size: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(vars: &VariableList, size: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if size == 0 || entries.len() != size * size {
            return Err(MatrixError::EntryCount {
                expected: size * size,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|e| e.vars() != vars) {
            return Err(LaurentError::VariableMismatch {
                left: vars.to_string(),
                right: bad.vars().to_string(),
            }
            .into());
        }
        Ok(Self {
            vars: vars.clone(),
            size,
            entries,
        })
    }

    pub fn from_rows(vars: &VariableList, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let size = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != size) {
            return Err(MatrixError::EntryCount {
                expected: size,
                found: bad.len(),
            });
        }
        Self::new(vars, size, rows.into_iter().flatten().collect())
    }

    /// Parses each entry with [`crate::laurent::parse_poly`].
    pub fn parse(vars: &VariableList, rows: &[&[&str]]) -> std::result::Result<Self, String> {
        let parsed = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|text| crate::laurent::parse_poly(text, vars).map_err(|e| e.to_string()))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::from_rows(vars, parsed).map_err(|e| e.to_string())
    }

    pub fn identity(vars: &VariableList, size: usize) -> Self {
        let entries = (0..size * size)
            .map(|i| {
                if i / size == i % size {
                    LaurentPoly::one(vars)
                } else {
                    LaurentPoly::zero(vars)
                }
            })
            .collect();
        Self {
            vars: vars.clone(),
            size,
            entries,
        }
    }

    pub fn vars(&self) -> &VariableList {
        &self.vars
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.size + col]
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, e)| {
            if i / self.size == i % self.size {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(MatrixError::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        if self.vars != other.vars {
            return Err(LaurentError::VariableMismatch {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            }
            .into());
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let d = self.size;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = LaurentPoly::zero(&self.vars);
                for k in 0..d {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b)?)?;
                }
                entries.push(acc);
            }
        }
        Ok(Self {
            vars: self.vars.clone(),
            size: d,
            entries,
        })
    }

    /// `self^n` by repeated squaring; `A^0 = Id`.
    pub fn pow(&self, mut n: u64) -> Result<Self> {
        let mut result = Self::identity(&self.vars, self.size);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Matrix times column vector.
    pub fn apply(&self, column: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
        if column.len() != self.size {
            return Err(MatrixError::SizeMismatch {
                left: self.size,
                right: column.len(),
            });
        }
        (0..self.size)
            .map(|i| {
                let mut acc = LaurentPoly::zero(&self.vars);
                for (k, c) in column.iter().enumerate() {
                    acc = acc.add(&self.get(i, k).mul(c)?)?;
                }
                Ok(acc)
            })
            .collect()
    }

    /// Returns `U_inv * self * U` after checking that `U * U_inv = Id`.
    pub fn conjugate(&self, u: &Self, u_inv: &Self) -> Result<Self> {
        self.check_compatible(u)?;
        self.check_compatible(u_inv)?;
        if !u.mul(u_inv)?.is_identity() {
            return Err(MatrixError::InverseCheckFailed);
        }
        u_inv.mul(self)?.mul(u)
    }

    /// Multiplies every entry by the monomial with exponent `scalar`.
    pub fn scale(&self, scalar: &ExponentVector) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.shift(scalar))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self {
            vars: self.vars.clone(),
            size: self.size,
            entries,
        })
    }

    /// Applies a monomial substitution to every entry.
    pub fn substitute(&self, sigma: &MonomialSubstitution) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.substitute(sigma))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self {
            vars: sigma.target().clone(),
            size: self.size,
            entries,
        })
    }

    /// Pulls a unit monomial out of the matrix so that the reduced matrix has
    /// the constant `1` in at least one entry.
    ///
    /// The scalar is taken from the single-monomial entry closest to the
    /// bottom-right corner (scanning rows bottom to top, columns right to
    /// left). Without single-monomial entries, the smallest term of the first
    /// nonzero entry is used.
    pub fn factor_monomial(&self) -> Result<MonomialFactorization> {
        if self.is_zero() {
            return Err(MatrixError::ZeroMatrix);
        }
        let scalar = self
            .entries
            .iter()
            .rev()
            .find_map(|e| e.as_monomial().cloned())
            .or_else(|| self.entries.iter().find_map(|e| e.terms().next().cloned()))
            .ok_or(MatrixError::ZeroMatrix)?;
        let reduced = self.scale(&scalar.checked_neg()?)?;
        Ok(MonomialFactorization { scalar, reduced })
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.size {
            if i > 0 {
                f.write_str("; ")?;
            }
            f.write_str("[")?;
            for j in 0..self.size {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        write!(f, "] over {:?}", self.vars)
    }
}

/// `matrix = monomial(scalar) * reduced`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialFactorization {
    pub scalar: ExponentVector,
    pub reduced: LaurentMatrix,
}

impl MonomialFactorization {
    pub fn expand(&self) -> Result<LaurentMatrix> {
        self.reduced.scale(&self.scalar)
    }
}

/// Entry `row` of `N * M1^n * e_1`.
pub fn orbit_value(
    n_matrix: &LaurentMatrix,
    step: &LaurentMatrix,
    n: u64,
    row: usize,
) -> Result<LaurentPoly> {
    n_matrix.check_compatible(step)?;
    if row >= n_matrix.size {
        return Err(MatrixError::RowOutOfRange {
            row,
            size: n_matrix.size,
        });
    }
    let power = step.pow(n)?;
    let first_column: Vec<LaurentPoly> = (0..power.size).map(|i| power.get(i, 0).clone()).collect();
    let mut acc = LaurentPoly::zero(&n_matrix.vars);
    for (k, c) in first_column.iter().enumerate() {
        acc = acc.add(&n_matrix.get(row, k).mul(c)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;
    use proptest::prelude::*;

    fn xy() -> VariableList {
        VariableList::new(["x", "y"]).unwrap()
    }

    fn m(rows: &[&[&str]]) -> LaurentMatrix {
        LaurentMatrix::parse(&xy(), rows).unwrap()
    }

    fn alpha_matrix() -> LaurentMatrix {
        m(&[&["x + y", "1"], &["x", "1"]])
    }

    #[test]
    fn products() {
        let a = alpha_matrix();
        let id = LaurentMatrix::identity(&xy(), 2);
        assert_eq!(id.mul(&a).unwrap(), a);
        let b = m(&[&["x", "1"], &["x", "1"]]);
        assert_eq!(
            b.mul(&b).unwrap(),
            m(&[&["x^2 + x", "x + 1"], &["x^2 + x", "x + 1"]])
        );
        let swap = m(&[&["0", "1"], &["1", "0"]]);
        assert!(swap.pow(2).unwrap().is_identity());
        assert!(a.pow(0).unwrap().is_identity());
    }

    #[test]
    fn size_mismatch_rejected() {
        let a = alpha_matrix();
        let id3 = LaurentMatrix::identity(&xy(), 3);
        assert!(matches!(a.mul(&id3), Err(MatrixError::SizeMismatch { .. })));
    }

    #[test]
    fn alpha_powers() {
        let v = xy();
        let a = alpha_matrix();
        assert_eq!(
            *a.pow(2).unwrap().get(0, 0),
            parse_poly("x^2 + y^2 + x", &v).unwrap()
        );
        assert_eq!(
            *a.pow(3).unwrap().get(0, 0),
            parse_poly("x^3 + x^2*y + x*y^2 + y^3 + x", &v).unwrap()
        );
        let restricted = m(&[&["y", "1"], &["0", "1"]]);
        for n in 1..8u64 {
            let y_n = LaurentPoly::monomial(&v, ExponentVector::from([0, n as i64])).unwrap();
            assert_eq!(*restricted.pow(n).unwrap().get(0, 0), y_n);
        }
    }

    #[test]
    fn alpha_entry_contains_hull_terms() {
        let v = xy();
        let a = alpha_matrix();
        let mut power = a.clone();
        for n in 1..=40i64 {
            let entry = power.get(0, 0);
            assert!(entry.contains(&ExponentVector::from([1, 0])), "n={n}");
            assert!(entry.contains(&ExponentVector::from([n, 0])), "n={n}");
            assert!(entry.contains(&ExponentVector::from([0, n])), "n={n}");
            for k in 0..n {
                assert!(
                    !entry.contains(&ExponentVector::from([0, k])),
                    "n={n} k={k}"
                );
            }
            assert_eq!(entry.vars(), &v);
            power = power.mul(&a).unwrap();
        }
    }

    #[test]
    fn conjugation() {
        let v = xy();
        let a = alpha_matrix();
        let id = LaurentMatrix::identity(&v, 2);
        assert_eq!(a.conjugate(&id, &id).unwrap(), a);
        let u = m(&[&["1", "0"], &["0", "y"]]);
        let u_inv = m(&[&["1", "0"], &["0", "y^-1"]]);
        assert_eq!(
            a.conjugate(&u, &u_inv).unwrap(),
            m(&[&["x + y", "y"], &["x*y^-1", "1"]])
        );
        assert_eq!(a.conjugate(&u, &u), Err(MatrixError::InverseCheckFailed));
    }

    #[test]
    fn monomial_factorization() {
        let v = xy();
        let id = LaurentMatrix::identity(&v, 2);
        let f = id.factor_monomial().unwrap();
        assert!(f.scalar.is_zero());
        assert_eq!(f.reduced, id);

        let a = m(&[&["x^2", "x^3"], &["x^4", "x^2"]]);
        let f = a.factor_monomial().unwrap();
        assert_eq!(f.scalar, ExponentVector::from([2, 0]));
        assert_eq!(f.reduced, m(&[&["1", "x"], &["x^2", "1"]]));
        assert_eq!(f.expand().unwrap(), a);

        let zero = m(&[&["0", "0"], &["0", "0"]]);
        assert_eq!(zero.factor_monomial(), Err(MatrixError::ZeroMatrix));

        let dense = m(&[&["x + y", "x + 1"], &["0", "0"]]);
        let f = dense.factor_monomial().unwrap();
        assert_eq!(f.expand().unwrap(), dense);
        assert!(f
            .reduced
            .entries()
            .iter()
            .any(|e| e.contains(&ExponentVector::zero(2))));
    }

    #[test]
    fn orbit_values() {
        let v = xy();
        let n_mat = m(&[&["y", "1"], &["x", "0"]]);
        let step = alpha_matrix();
        assert_eq!(
            orbit_value(&n_mat, &step, 0, 1).unwrap(),
            parse_poly("x", &v).unwrap()
        );
        assert_eq!(
            orbit_value(&n_mat, &step, 0, 0).unwrap(),
            parse_poly("y", &v).unwrap()
        );
        // one more step equals applying M1 to the previous first column
        for n in 1..6 {
            let prev = step.pow(n - 1).unwrap();
            let col: Vec<_> = (0..2).map(|i| prev.get(i, 0).clone()).collect();
            let next = n_mat.apply(&step.apply(&col).unwrap()).unwrap();
            assert_eq!(orbit_value(&n_mat, &step, n, 1).unwrap(), next[1]);
        }
        assert!(matches!(
            orbit_value(&n_mat, &step, 1, 2),
            Err(MatrixError::RowOutOfRange { .. })
        ));
    }

    fn small_poly(vars: &VariableList) -> impl Strategy<Value = LaurentPoly> {
        let k = vars.len();
        let vars = vars.clone();
        proptest::collection::vec(proptest::collection::vec(-2i64..=2, k), 0..4).prop_map(
            move |terms| {
                LaurentPoly::from_terms(&vars, terms.into_iter().map(ExponentVector::new)).unwrap()
            },
        )
    }

    fn small_matrix() -> impl Strategy<Value = LaurentMatrix> {
        let v = xy();
        proptest::collection::vec(small_poly(&v), 4)
            .prop_map(move |entries| LaurentMatrix::new(&xy(), 2, entries).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn power_law(a in small_matrix(), p in 0u64..=5, q in 0u64..=5) {
            prop_assert_eq!(a.pow(p + q).unwrap(), a.pow(p).unwrap().mul(&a.pow(q).unwrap()).unwrap());
        }

        #[test]
        fn factorization_round_trips(a in small_matrix()) {
            prop_assume!(!a.is_zero());
            let f = a.factor_monomial().unwrap();
            prop_assert_eq!(f.expand().unwrap(), a);
        }
    }
}
