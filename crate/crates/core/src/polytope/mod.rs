//! Newton polytopes and unimodular-invariant lattice fingerprints.
//!
//! Every polytope is first reduced to its intrinsic lattice (see
//! [`lattice_reduce`]); hulls, facets and lattice point counts are computed in
//! those reduced coordinates. Full support covers intrinsic dimension up to 3;
//! higher dimensions are accepted only for simplices.

mod count;
mod hull;
mod intmat;
mod reduce;

pub use count::PointCounts;
pub use hull::Facet;
pub use intmat::{det_bareiss, hnf, rank, IntMatrix};
pub use reduce::{lattice_reduce, AffineReduction, Reduced};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::laurent::{ExponentVector, LaurentError, LaurentPoly, VariableList};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("the zero polynomial has no Newton polytope")]
    ZeroPolynomial,
    #[error("intrinsic dimension {dim} with {points} points is only supported for simplices")]
    UnsupportedDimension { dim: usize, points: usize },
    #[error("polytope is not a simplex")]
    NotSimplex,
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("integer overflow")]
    Overflow,
    #[error("lattice point enumeration too large")]
    TooLarge,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

pub type Result<T> = std::result::Result<T, PolytopeError>;

/// Convex hull of a finite subset of `Z^k`, with its intrinsic lattice data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    ambient_dim: usize,
    /// Hull vertices in ambient coordinates, sorted lexicographically.
    vertices: Vec<ExponentVector>,
    /// The same vertices in reduced coordinates, in matching order.
    reduced_vertices: Vec<Vec<i64>>,
    reduction: AffineReduction,
    facets: Vec<Facet>,
}

impl LatticePolytope {
    /// Hull of a nonempty point set.
    pub fn from_points<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = ExponentVector>,
    {
        let mut points: Vec<ExponentVector> = points.into_iter().collect();
        points.sort();
        points.dedup();
        let ambient_dim = points
            .first()
            .ok_or_else(|| PolytopeError::Shape("empty point set".into()))?
            .len();
        let reduced = lattice_reduce(&points)?;
        let h = hull::hull(&reduced.points, reduced.dim)?;
        let mut vertices: Vec<(ExponentVector, Vec<i64>)> = h
            .vertices
            .iter()
            .map(|&i| (points[i].clone(), reduced.points[i].clone()))
            .collect();
        vertices.sort();
        let (vertices, reduced_vertices) = vertices.into_iter().unzip();
        Ok(Self {
            ambient_dim,
            vertices,
            reduced_vertices,
            reduction: reduced.map,
            facets: h.facets,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn intrinsic_dim(&self) -> usize {
        self.reduction.dim()
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    pub fn reduced_vertices(&self) -> &[Vec<i64>] {
        &self.reduced_vertices
    }

    pub fn reduction(&self) -> &AffineReduction {
        &self.reduction
    }

    /// Facet inequalities `normal . y <= offset` in reduced coordinates.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.intrinsic_dim() + 1
    }

    /// Whether an ambient point lies in the polytope.
    pub fn contains(&self, point: &ExponentVector) -> Result<bool> {
        if point.len() != self.ambient_dim {
            return Ok(false);
        }
        let reduced = self.reduction.to_reduced(point)?;
        if self.reduction.to_ambient(&reduced)? != *point {
            return Ok(false);
        }
        Ok(match self.intrinsic_dim() {
            0 => true,
            _ => self.facets.iter().all(|f| f.contains(&reduced)),
        })
    }

    /// `(total, boundary, interior)` lattice points.
    ///
    /// In dimension 1 the boundary is the two endpoints; a point has one
    /// boundary point and no interior.
    pub fn count_lattice_points(&self) -> Result<PointCounts> {
        match self.intrinsic_dim() {
            0 => Ok((1, 1, 0)),
            d if d <= 3 || self.is_simplex() => {
                count::scan(&self.reduced_vertices, &self.facets, d)
            }
            d => Err(PolytopeError::UnsupportedDimension {
                dim: d,
                points: self.vertices.len(),
            }),
        }
    }

    /// `d!` times the Euclidean volume in the intrinsic lattice.
    pub fn normalized_volume(&self) -> Result<u64> {
        let v = &self.reduced_vertices;
        let vol: i128 = match self.intrinsic_dim() {
            0 => 0,
            1 => (v[1][0] - v[0][0]).abs().into(),
            2 => hull::polygon_double_area(v, &hull::polygon_order(v)),
            3 => {
                let h = hull::Hull {
                    vertices: (0..v.len()).collect(),
                    facets: self.facets.clone(),
                };
                hull::polyhedron_six_volume(v, &h)
            }
            _ if self.is_simplex() => hull::simplex_volume(v)?
                .to_i128()
                .ok_or(PolytopeError::Overflow)?,
            d => {
                return Err(PolytopeError::UnsupportedDimension {
                    dim: d,
                    points: v.len(),
                })
            }
        };
        u64::try_from(vol).map_err(|_| PolytopeError::Overflow)
    }

    pub fn fingerprint(&self) -> Result<Fingerprint> {
        let (total, boundary, interior) = self.count_lattice_points()?;
        Ok(Fingerprint {
            intrinsic_dim: self.intrinsic_dim(),
            total,
            boundary,
            interior,
            normalized_volume: Some(self.normalized_volume()?),
        })
    }

    /// True iff the simplex's edge vectors form a lattice basis, i.e. the
    /// simplex is unimodularly equivalent to the standard one.
    pub fn is_simplex_unimodular_standard(&self) -> Result<bool> {
        if !self.is_simplex() {
            return Err(PolytopeError::NotSimplex);
        }
        Ok(hull::simplex_volume(&self.reduced_vertices)?.is_one() || self.intrinsic_dim() == 0)
    }
}

/// Newton polytope of a nonzero polynomial.
pub fn newton_polytope(p: &LaurentPoly) -> Result<LatticePolytope> {
    if p.is_zero() {
        return Err(PolytopeError::ZeroPolynomial);
    }
    LatticePolytope::from_points(p.terms().cloned())
}

/// Invariants of a lattice polytope under affine unimodular maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub intrinsic_dim: usize,
    pub total: u64,
    pub boundary: u64,
    pub interior: u64,
    pub normalized_volume: Option<u64>,
}

impl Fingerprint {
    /// Pick's identity `2A = 2I + B - 2` for polygons; vacuous otherwise.
    pub fn satisfies_pick(&self) -> bool {
        if self.intrinsic_dim != 2 {
            return true;
        }
        self.normalized_volume
            .is_some_and(|v| v + 2 == 2 * self.interior + self.boundary)
    }
}

/// Fingerprint plus the hull vertices, in the field order of the JSON report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FingerprintRecord {
    pub intrinsic_dim: usize,
    pub total: u64,
    pub boundary: u64,
    pub interior: u64,
    pub normalized_volume: Option<u64>,
    pub vertices: Vec<Vec<i64>>,
}

impl FingerprintRecord {
    pub fn new(fingerprint: Fingerprint, polytope: &LatticePolytope) -> Self {
        Self {
            intrinsic_dim: fingerprint.intrinsic_dim,
            total: fingerprint.total,
            boundary: fingerprint.boundary,
            interior: fingerprint.interior,
            normalized_volume: fingerprint.normalized_volume,
            vertices: polytope
                .vertices()
                .iter()
                .map(|v| v.as_slice().to_vec())
                .collect(),
        }
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint {
            intrinsic_dim: self.intrinsic_dim,
            total: self.total,
            boundary: self.boundary,
            interior: self.interior,
            normalized_volume: self.normalized_volume,
        }
    }
}

pub fn fingerprint(p: &LaurentPoly) -> Result<Fingerprint> {
    newton_polytope(p)?.fingerprint()
}

pub fn fingerprint_record(p: &LaurentPoly) -> Result<FingerprintRecord> {
    let polytope = newton_polytope(p)?;
    Ok(FingerprintRecord::new(polytope.fingerprint()?, &polytope))
}

/// Sends each exponent `(a, b)` of a bivariate polynomial to
/// `(a, b, iota(a, b))` in `Z^(2 + rows(iota))`.
pub fn embed(p: &LaurentPoly, iota: &IntMatrix, target: &VariableList) -> Result<LaurentPoly> {
    if p.vars().len() != 2 || iota.cols() != 2 || target.len() != 2 + iota.rows() {
        return Err(PolytopeError::Shape(format!(
            "embed needs 2 source variables, a {}x2 map and {} target variables",
            iota.rows(),
            2 + iota.rows()
        )));
    }
    Ok(p.map_exponents(target, |a| {
        let mut out = a.as_slice().to_vec();
        out.extend(
            iota.mul_vec(a.as_slice())
                .map_err(|_| LaurentError::Overflow)?,
        );
        Ok(ExponentVector::new(out))
    })?)
}

/// Applies `alpha -> A alpha + t` to every exponent. `A` must be unimodular.
pub fn apply_unimodular(p: &LaurentPoly, a: &IntMatrix, t: &ExponentVector) -> Result<LaurentPoly> {
    let k = p.vars().len();
    if a.rows() != k || a.cols() != k || t.len() != k {
        return Err(PolytopeError::Shape(format!(
            "expected a {k}x{k} matrix and a translation of length {k}"
        )));
    }
    let det = det_bareiss(a)?;
    if det.abs() != BigInt::one() {
        return Err(PolytopeError::NotUnimodular(det.to_string()));
    }
    Ok(p.map_exponents(p.vars(), |alpha| {
        let image = a
            .mul_vec(alpha.as_slice())
            .map_err(|_| LaurentError::Overflow)?;
        ExponentVector::new(image).checked_add(t)
    })?)
}
