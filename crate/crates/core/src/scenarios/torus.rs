//! Augmented values of degree-zero chords of (2, n) torus knots.
//!
//! Pinching at crossing `i` gives an `n`-term value. After eliminating `s_i`
//! with the relation `s_1 s_2 ... s_n = 1` and translating by `(1, ..., 1)`,
//! the `n - 1` non-constant exponents form the rows of a matrix `S` with
//! `|det S| = 1`, so the Newton polytope is a standard simplex.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Result, ScenarioError};
use crate::laurent::{ExponentVector, LaurentPoly, MonomialSubstitution, VariableList};
use crate::polytope::{det_bareiss, newton_polytope, IntMatrix};

/// One pinch position of a (2, n) torus knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusInstance {
    pub n: usize,
    pub i: usize,
    /// `s_1, ..., s_n` without `s_i`.
    pub vars: VariableList,
    pub value: LaurentPoly,
    /// Translated exponents; rows ordered `j = i-1, ..., 1, i+1, ..., n`,
    /// columns `s_{i-1}, ..., s_1, s_{i+1}, ..., s_n`.
    pub s: IntMatrix,
    pub s_inv: IntMatrix,
}

impl TorusInstance {
    pub fn det_s(&self) -> Result<BigInt> {
        Ok(det_bareiss(&self.s)?)
    }

    pub fn inverse_verified(&self) -> Result<bool> {
        Ok(self.s.mul(&self.s_inv)?.is_identity())
    }
}

/// The exponent vector over `s_1..s_n` of the term contributed by chord end
/// `j` (the constant-like term `s_i` for `j == i`).
fn term(n: usize, i: usize, j: usize) -> ExponentVector {
    let mut e = vec![0i64; n];
    if j == i {
        e[i - 1] = 1;
    } else {
        e[j - 1] = -1;
        let between = if j < i { j + 1..i } else { i + 1..j };
        for k in between {
            e[k - 1] = -2;
        }
    }
    ExponentVector::new(e)
}

/// `D_m`: zero diagonal, `1` above and `-1` below.
fn d_block(m: usize, r: usize, c: usize) -> i64 {
    debug_assert!(r < m && c < m);
    match c.cmp(&r) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Inverse of `[[D_a, O], [O, D_b]]` for even `a + b`: diagonal blocks with
/// zero diagonal, `(-1)^(c-r)` above and `(-1)^(r-c+1)` below; off-diagonal
/// blocks `(-1)^(r+c)` in block-local indices.
fn block_inverse(a: usize, b: usize) -> IntMatrix {
    let size = a + b;
    let mut m = IntMatrix::zeros(size, size);
    for r in 0..size {
        for c in 0..size {
            let (top, left) = (r < a, c < a);
            let (lr, lc) = (if top { r } else { r - a }, if left { c } else { c - a });
            let v = if top == left {
                match lc.cmp(&lr) {
                    std::cmp::Ordering::Greater => sign(lc - lr),
                    std::cmp::Ordering::Less => sign(lr - lc + 1),
                    std::cmp::Ordering::Equal => 0,
                }
            } else {
                sign(lr + lc)
            };
            m.set(r, c, v);
        }
    }
    m
}

/// Block matrix `[[D_a, O], [O, D_b]]` with all-ones off-diagonal blocks.
pub fn block_matrix(a: usize, b: usize) -> IntMatrix {
    let size = a + b;
    let mut m = IntMatrix::zeros(size, size);
    for r in 0..size {
        for c in 0..size {
            let v = match (r < a, c < a) {
                (true, true) => d_block(a, r, c),
                (false, false) => d_block(b, r - a, c - a),
                _ => 1,
            };
            m.set(r, c, v);
        }
    }
    m
}

/// Builds the value at pinch index `i` (1-based) and its matrices.
pub fn torus_value(n: usize, i: usize) -> Result<TorusInstance> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(ScenarioError::InvalidInput(format!(
            "n must be odd and at least 3, got {n}"
        )));
    }
    if i == 0 || i > n {
        return Err(ScenarioError::InvalidInput(format!(
            "pinch index must be in 1..={n}, got {i}"
        )));
    }
    let full_vars = VariableList::new((1..=n).map(|k| format!("s{k}")))?;
    let vars = VariableList::new((1..=n).filter(|&k| k != i).map(|k| format!("s{k}")))?;
    // column of s_k among the remaining variables
    let column = |k: usize| if k < i { k - 1 } else { k - 2 };
    let images = (1..=n)
        .map(|k| {
            if k == i {
                ExponentVector::new(vec![-1; n - 1])
            } else {
                ExponentVector::unit(n - 1, column(k))
            }
        })
        .collect();
    let eliminate = MonomialSubstitution::new(&full_vars, &vars, images)?;

    let full = LaurentPoly::from_terms(&full_vars, (1..=n).map(|j| term(n, i, j)))?;
    let value = full.substitute(&eliminate)?;
    if value.monomial_count() != n {
        return Err(ScenarioError::Construction(format!(
            "value has {} monomials, expected {n}",
            value.monomial_count()
        )));
    }

    let ones = ExponentVector::new(vec![1; n - 1]);
    let translated = |j: usize| -> Result<Vec<i64>> {
        Ok(eliminate
            .image_of(&term(n, i, j))?
            .checked_add(&ones)?
            .into_vec())
    };
    if translated(i)?.iter().any(|&x| x != 0) {
        return Err(ScenarioError::Construction(
            "s_i term does not translate to the origin".into(),
        ));
    }
    let order: Vec<usize> = (1..i).rev().chain(i + 1..=n).collect();
    let rows = order
        .iter()
        .map(|&j| {
            let point = translated(j)?;
            Ok(order.iter().map(|&k| point[column(k)]).collect())
        })
        .collect::<Result<Vec<Vec<i64>>>>()?;
    let s = IntMatrix::from_rows(&rows)?;
    let s_inv = block_inverse(i - 1, n - i);

    let t = TorusInstance {
        n,
        i,
        vars,
        value,
        s,
        s_inv,
    };
    if !t.inverse_verified()? {
        return Err(ScenarioError::Construction(format!(
            "S * S_inv is not the identity at n = {n}, i = {i}"
        )));
    }
    Ok(t)
}

/// True iff the value's Newton polytope is a unimodular `(n-1)`-simplex.
pub fn torus_simplex_check(t: &TorusInstance) -> Result<bool> {
    let p = newton_polytope(&t.value)?;
    if p.intrinsic_dim() + 1 != t.n || !p.is_simplex() {
        return Ok(false);
    }
    Ok(p.is_simplex_unimodular_standard()?)
}

/// `|det S| == 1`.
pub fn det_is_unit(t: &TorusInstance) -> Result<bool> {
    Ok(t.det_s()?.abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;

    #[test]
    fn three_two_by_hand() {
        let t = torus_value(3, 2).unwrap();
        assert_eq!(t.vars.names(), ["s1", "s3"]);
        let expected = parse_poly("s1^-1*s3^-1 + s1^-1 + s3^-1", &t.vars).unwrap();
        assert_eq!(t.value, expected);
        let mut points: Vec<Vec<i64>> = t
            .value
            .terms()
            .map(|e| e.as_slice().iter().map(|x| x + 1).collect())
            .collect();
        points.sort();
        assert_eq!(points, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert!(torus_simplex_check(&t).unwrap());
        assert_eq!(
            newton_polytope(&t.value)
                .unwrap()
                .normalized_volume()
                .unwrap(),
            1
        );
    }

    #[test]
    fn first_crossing_uses_right_sum_only() {
        let t = torus_value(3, 1).unwrap();
        assert_eq!(t.value.monomial_count(), 3);
        assert!(torus_simplex_check(&t).unwrap());
    }

    #[test]
    fn matrices_for_small_knots() {
        for n in [3, 5, 7, 9, 11, 13] {
            for i in 1..=n {
                let t = torus_value(n, i).unwrap();
                assert_eq!(t.s, block_matrix(i - 1, n - i), "n={n} i={i}");
                assert!(det_is_unit(&t).unwrap());
                assert!(t.inverse_verified().unwrap());
                assert!(torus_simplex_check(&t).unwrap(), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn perturbed_value_is_not_standard() {
        let mut t = torus_value(5, 2).unwrap();
        let terms: Vec<ExponentVector> = t
            .value
            .terms()
            .enumerate()
            .map(|(k, e)| {
                if k == 0 {
                    e.checked_scale(2).unwrap()
                } else {
                    e.clone()
                }
            })
            .collect();
        t.value = LaurentPoly::from_terms(&t.vars, terms).unwrap();
        assert!(!torus_simplex_check(&t).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            torus_value(4, 1),
            Err(ScenarioError::InvalidInput(_))
        ));
        assert!(matches!(
            torus_value(1, 1),
            Err(ScenarioError::InvalidInput(_))
        ));
        assert!(matches!(
            torus_value(5, 0),
            Err(ScenarioError::InvalidInput(_))
        ));
        assert!(matches!(
            torus_value(5, 6),
            Err(ScenarioError::InvalidInput(_))
        ));
    }
}
