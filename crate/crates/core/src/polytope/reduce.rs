//! Affine lattice reduction: re-express a point set in coordinates of the
//! lattice `(aff(P) - v0) ∩ Z^k`, so lattice points of the ambient lattice in
//! the hull correspond one-to-one to lattice points of `Z^d`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::intmat::{big_to_i64, hnf, lll_gram, smith, IntMatrix};
use super::Result;
use crate::laurent::ExponentVector;

/// The affine map between ambient and reduced coordinates.
///
/// `ambient = base + reduced * basis` and `reduced = (ambient - base) * coords`
/// on the affine hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineReduction {
    pub base: ExponentVector,
    /// `d x k`; rows form a basis of the saturated difference lattice.
    pub basis: IntMatrix,
    /// `k x d`; left inverse of `basis` on the difference lattice.
    pub coords: IntMatrix,
}

impl AffineReduction {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn to_reduced(&self, ambient: &ExponentVector) -> Result<Vec<i64>> {
        let diff: Vec<i64> = ambient
            .as_slice()
            .iter()
            .zip(self.base.as_slice())
            .map(|(a, b)| a.checked_sub(*b).ok_or(super::PolytopeError::Overflow))
            .collect::<Result<_>>()?;
        self.coords.vec_mul(&diff)
    }

    pub fn to_ambient(&self, reduced: &[i64]) -> Result<ExponentVector> {
        let offset = self.basis.vec_mul(reduced)?;
        offset
            .iter()
            .zip(self.base.as_slice())
            .map(|(a, b)| a.checked_add(*b).ok_or(super::PolytopeError::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(ExponentVector::new)
    }
}

/// Result of [`lattice_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub dim: usize,
    /// Reduced coordinates of the input points, in input order.
    pub points: Vec<Vec<i64>>,
    pub map: AffineReduction,
}

/// Reduces a nonempty point set to its intrinsic lattice.
///
/// The base point is the first input point. The difference vectors are
/// brought to Hermite form, the resulting row lattice is saturated through
/// its Smith form, and the basis is finally LLL-reduced with respect to the
/// spread of the points so that reduced coordinates stay small.
pub fn lattice_reduce(points: &[ExponentVector]) -> Result<Reduced> {
    let first = points
        .first()
        .ok_or_else(|| super::PolytopeError::Shape("empty point set".into()))?;
    let k = first.len();
    if points.iter().any(|p| p.len() != k) {
        return Err(super::PolytopeError::Shape("points of mixed length".into()));
    }
    let base = first.clone();
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| {
            p.as_slice()
                .iter()
                .zip(base.as_slice())
                .map(|(a, b)| a.checked_sub(*b).ok_or(super::PolytopeError::Overflow))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    if diffs.iter().all(|d| d.iter().all(|&x| x == 0)) {
        return Ok(Reduced {
            dim: 0,
            points: vec![Vec::new(); points.len()],
            map: AffineReduction {
                base,
                basis: IntMatrix::zeros(0, k),
                coords: IntMatrix::zeros(k, 0),
            },
        });
    }

    let (h, _) = hnf(&IntMatrix::from_rows(&diffs)?)?;
    let independent: Vec<Vec<i64>> = h
        .to_rows()
        .into_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    let dim = independent.len();
    let s = smith(&IntMatrix::from_rows(&independent)?);
    debug_assert_eq!(s.diagonal.len(), dim);

    // saturated basis: first `dim` rows of V^-1; coordinates: first `dim` columns of V
    let mut basis = IntMatrix::zeros(dim, k);
    let mut coords = IntMatrix::zeros(k, dim);
    for i in 0..dim {
        for j in 0..k {
            basis.set(i, j, big_to_i64(&s.right_inv[i][j])?);
            coords.set(j, i, big_to_i64(&s.right[j][i])?);
        }
    }

    let raw: Vec<Vec<i64>> = std::iter::once(Ok(vec![0; dim]))
        .chain(diffs.iter().map(|d| coords.vec_mul(d)))
        .collect::<Result<_>>()?;

    // Spread form G = m * sum c^T c - (sum c)^T (sum c) is positive definite
    // because the points affinely span the reduced lattice.
    let m = BigInt::from(raw.len());
    let mut sum = vec![BigInt::zero(); dim];
    let mut second = vec![vec![BigInt::zero(); dim]; dim];
    for c in &raw {
        for i in 0..dim {
            sum[i] += c[i];
            for j in 0..dim {
                second[i][j] += BigInt::from(c[i]) * c[j];
            }
        }
    }
    let gram: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| &m * &second[i][j] - &sum[i] * &sum[j])
                .collect()
        })
        .collect();
    let (w, w_inv) = lll_gram(&gram);
    let to_mat = |big: &Vec<Vec<BigInt>>| -> Result<IntMatrix> {
        let rows = big
            .iter()
            .map(|r| r.iter().map(big_to_i64).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_rows(&rows)
    };
    let w = to_mat(&w)?;
    let w_inv = to_mat(&w_inv)?;

    let coords = coords.mul(&w)?;
    let basis = w_inv.mul(&basis)?;
    let reduced = raw
        .iter()
        .map(|c| w.vec_mul(c))
        .collect::<Result<Vec<_>>>()?;

    Ok(Reduced {
        dim,
        points: reduced,
        map: AffineReduction {
            base,
            basis,
            coords,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(list: &[&[i64]]) -> Vec<ExponentVector> {
        list.iter()
            .map(|p| ExponentVector::new(p.to_vec()))
            .collect()
    }

    #[test]
    fn singleton_is_zero_dimensional() {
        let r = lattice_reduce(&pts(&[&[0, 0]])).unwrap();
        assert_eq!(r.dim, 0);
        let r = lattice_reduce(&pts(&[&[3, 4], &[3, 4]])).unwrap();
        assert_eq!(r.dim, 0);
    }

    #[test]
    fn plane_in_four_space() {
        let r = lattice_reduce(&pts(&[&[1, -1, 0, 0], &[2, -2, 0, 0], &[0, 0, -2, 0]])).unwrap();
        assert_eq!(r.dim, 2);
    }

    #[test]
    fn collinear_points_use_primitive_step() {
        let input = pts(&[&[0, 0], &[2, 2], &[4, 4]]);
        let r = lattice_reduce(&input).unwrap();
        assert_eq!(r.dim, 1);
        let mut coords: Vec<i64> = r.points.iter().map(|c| c[0]).collect();
        let flip = coords[1] < 0;
        if flip {
            coords.iter_mut().for_each(|c| *c = -*c);
        }
        assert_eq!(coords, vec![0, 2, 4]);
        let step = r.basis_row();
        assert!(step == vec![1, 1] || step == vec![-1, -1]);
    }

    #[test]
    fn round_trips_through_the_map() {
        let input = pts(&[&[1, 0, 0], &[3, 0, 0], &[0, 0, 6], &[1, 1, 1]]);
        let r = lattice_reduce(&input).unwrap();
        assert_eq!(r.dim, 3);
        for (p, c) in input.iter().zip(&r.points) {
            assert_eq!(r.map.to_ambient(c).unwrap(), *p);
            assert_eq!(r.map.to_reduced(p).unwrap(), *c);
        }
    }

    impl Reduced {
        fn basis_row(&self) -> Vec<i64> {
            self.map.basis.row(0).to_vec()
        }
    }
}
