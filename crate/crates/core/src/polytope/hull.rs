//! Exact convex hulls in reduced coordinates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::intmat::{big_to_i64, det_bareiss, IntMatrix};
use super::{PolytopeError, Result};

/// Half-space `normal . y <= offset` in reduced coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn slack(&self, y: &[i64]) -> i128 {
        i128::from(self.offset)
            - self
                .normal
                .iter()
                .zip(y)
                .map(|(&a, &b)| i128::from(a) * i128::from(b))
                .sum::<i128>()
    }

    pub fn contains(&self, y: &[i64]) -> bool {
        self.slack(y) >= 0
    }

    pub fn is_tight(&self, y: &[i64]) -> bool {
        self.slack(y) == 0
    }
}

pub(crate) struct Hull {
    /// Indices into the input point list, sorted.
    pub vertices: Vec<usize>,
    pub facets: Vec<Facet>,
}

fn gcd_normalize(normal: Vec<i128>, offset: i128) -> Result<Facet> {
    let g = normal.iter().fold(0i128, |g, &x| g.gcd(&x));
    let g = if g == 0 { 1 } else { g };
    let cast = |x: i128| i64::try_from(x / g).map_err(|_| PolytopeError::Overflow);
    Ok(Facet {
        normal: normal.iter().map(|&x| cast(x)).collect::<Result<_>>()?,
        offset: cast(offset)?,
    })
}

fn cross2(o: &[i64], a: &[i64], b: &[i64]) -> i128 {
    (i128::from(a[0]) - i128::from(o[0])) * (i128::from(b[1]) - i128::from(o[1]))
        - (i128::from(a[1]) - i128::from(o[1])) * (i128::from(b[0]) - i128::from(o[0]))
}

/// Andrew's monotone chain. Returns vertex indices in counter-clockwise
/// order with collinear points dropped.
pub(crate) fn polygon_order(points: &[Vec<i64>]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a].cmp(&points[b]));
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && cross2(
                &points[lower[lower.len() - 2]],
                &points[lower[lower.len() - 1]],
                &points[i],
            ) <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && cross2(
                &points[upper[upper.len() - 2]],
                &points[upper[upper.len() - 1]],
                &points[i],
            ) <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn hull_1d(points: &[Vec<i64>]) -> Hull {
    let (lo, hi) = points.iter().enumerate().fold((0, 0), |(lo, hi), (i, p)| {
        (
            if p[0] < points[lo][0] { i } else { lo },
            if p[0] > points[hi][0] { i } else { hi },
        )
    });
    let mut vertices = vec![lo, hi];
    vertices.sort_unstable();
    Hull {
        vertices,
        facets: vec![
            Facet {
                normal: vec![-1],
                offset: -points[lo][0],
            },
            Facet {
                normal: vec![1],
                offset: points[hi][0],
            },
        ],
    }
}

fn hull_2d(points: &[Vec<i64>]) -> Result<Hull> {
    let ring = polygon_order(points);
    let mut facets = Vec::with_capacity(ring.len());
    for (pos, &a) in ring.iter().enumerate() {
        let b = ring[(pos + 1) % ring.len()];
        let (p, q) = (&points[a], &points[b]);
        let dx = i128::from(q[0]) - i128::from(p[0]);
        let dy = i128::from(q[1]) - i128::from(p[1]);
        // counter-clockwise ring: outward normal is the right-hand normal
        let normal = vec![dy, -dx];
        let offset = dy * i128::from(p[0]) - dx * i128::from(p[1]);
        facets.push(gcd_normalize(normal, offset)?);
    }
    let mut vertices = ring;
    vertices.sort_unstable();
    Ok(Hull { vertices, facets })
}

fn sub3(a: &[i64], b: &[i64]) -> [i128; 3] {
    [
        i128::from(a[0]) - i128::from(b[0]),
        i128::from(a[1]) - i128::from(b[1]),
        i128::from(a[2]) - i128::from(b[2]),
    ]
}

fn cross3(u: [i128; 3], v: [i128; 3]) -> [i128; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn dot3(u: [i128; 3], v: &[i64]) -> i128 {
    u[0] * i128::from(v[0]) + u[1] * i128::from(v[1]) + u[2] * i128::from(v[2])
}

/// Facet enumeration by supporting planes through point triples, then
/// vertices as the points whose tight facet normals span `R^3`.
fn hull_3d(points: &[Vec<i64>]) -> Result<Hull> {
    let n = points.len();
    let mut facets = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let normal = cross3(sub3(&points[b], &points[a]), sub3(&points[c], &points[a]));
                if normal == [0, 0, 0] {
                    continue;
                }
                let offset = dot3(normal, &points[a]);
                let (mut above, mut below) = (false, false);
                for p in points {
                    let s = dot3(normal, p) - offset;
                    above |= s > 0;
                    below |= s < 0;
                    if above && below {
                        break;
                    }
                }
                if above && below {
                    continue;
                }
                let facet = if above {
                    gcd_normalize(normal.iter().map(|x| -x).collect(), -offset)?
                } else {
                    gcd_normalize(normal.to_vec(), offset)?
                };
                facets.insert(facet);
            }
        }
    }
    let facets: Vec<Facet> = facets.into_iter().collect();
    let mut vertices = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            continue;
        }
        let tight: Vec<&Facet> = facets.iter().filter(|f| f.is_tight(p)).collect();
        if spans_space(&tight) {
            vertices.push(i);
        }
    }
    Ok(Hull { vertices, facets })
}

fn spans_space(normals: &[&Facet]) -> bool {
    for a in 0..normals.len() {
        for b in a + 1..normals.len() {
            let u = cross3(
                [
                    normals[a].normal[0].into(),
                    normals[a].normal[1].into(),
                    normals[a].normal[2].into(),
                ],
                [
                    normals[b].normal[0].into(),
                    normals[b].normal[1].into(),
                    normals[b].normal[2].into(),
                ],
            );
            if u == [0, 0, 0] {
                continue;
            }
            if normals[b + 1..].iter().any(|f| dot3(u, &f.normal) != 0) {
                return true;
            }
        }
    }
    false
}

/// Facets of a simplex given by `d + 1` affinely independent points in `Z^d`.
pub(crate) fn simplex_facets(points: &[Vec<i64>]) -> Result<Vec<Facet>> {
    let d = points.len() - 1;
    let mut facets = Vec::with_capacity(d + 1);
    for omit in 0..=d {
        let others: Vec<&Vec<i64>> = points
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != omit)
            .map(|(_, p)| p)
            .collect();
        let anchor = others[0];
        let diffs: Vec<Vec<i64>> = others[1..]
            .iter()
            .map(|p| p.iter().zip(anchor).map(|(a, b)| a - b).collect())
            .collect();
        // generalized cross product: cofactors of the (d-1) x d difference matrix
        let mut normal: Vec<BigInt> = Vec::with_capacity(d);
        for col in 0..d {
            let minor: Vec<Vec<i64>> = diffs
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != col)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let m = IntMatrix::from_rows(&minor).unwrap_or_else(|_| IntMatrix::zeros(0, 0));
            let det = det_bareiss(&m)?;
            normal.push(if col % 2 == 0 { det } else { -det });
        }
        if normal.iter().all(Zero::is_zero) {
            return Err(PolytopeError::NotSimplex);
        }
        let dot = |p: &[i64]| -> BigInt {
            normal
                .iter()
                .zip(p)
                .map(|(a, &b)| a * BigInt::from(b))
                .sum()
        };
        let offset = dot(anchor);
        let (normal, offset) = if dot(&points[omit]) > offset {
            (normal.iter().map(|x| -x).collect::<Vec<_>>(), -offset)
        } else {
            (normal, offset)
        };
        let g = normal.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        facets.push(Facet {
            normal: normal
                .iter()
                .map(|x| big_to_i64(&(x / &g)))
                .collect::<Result<_>>()?,
            offset: big_to_i64(&(offset / &g))?,
        });
    }
    Ok(facets)
}

/// Computes the hull of distinct reduced points spanning `Z^d`.
pub(crate) fn hull(points: &[Vec<i64>], dim: usize) -> Result<Hull> {
    match dim {
        0 => Ok(Hull {
            vertices: vec![0],
            facets: Vec::new(),
        }),
        1 => Ok(hull_1d(points)),
        2 => hull_2d(points),
        3 => hull_3d(points),
        _ if points.len() == dim + 1 => Ok(Hull {
            vertices: (0..points.len()).collect(),
            facets: simplex_facets(points)?,
        }),
        _ => Err(PolytopeError::UnsupportedDimension {
            dim,
            points: points.len(),
        }),
    }
}

/// Twice the area of a convex polygon given in ring order.
pub(crate) fn polygon_double_area(points: &[Vec<i64>], ring: &[usize]) -> i128 {
    if ring.len() < 3 {
        return 0;
    }
    (1..ring.len() - 1)
        .map(|i| cross2(&points[ring[0]], &points[ring[i]], &points[ring[i + 1]]))
        .sum::<i128>()
        .abs()
}

/// Six times the volume of a 3-polytope, by fanning each facet from a fixed
/// vertex.
pub(crate) fn polyhedron_six_volume(points: &[Vec<i64>], hull: &Hull) -> i128 {
    let origin = &points[hull.vertices[0]];
    let mut total = 0i128;
    for facet in &hull.facets {
        if facet.is_tight(origin) {
            continue;
        }
        let on_facet: Vec<&Vec<i64>> = hull
            .vertices
            .iter()
            .map(|&i| &points[i])
            .filter(|p| facet.is_tight(p))
            .collect();
        // project along the largest normal component to order the polygon
        let drop = (0..3)
            .max_by_key(|&j| facet.normal[j].unsigned_abs())
            .unwrap_or(0);
        let projected: Vec<Vec<i64>> = on_facet
            .iter()
            .map(|p| (0..3).filter(|&j| j != drop).map(|j| p[j]).collect())
            .collect();
        let ring = polygon_order(&projected);
        for i in 1..ring.len().saturating_sub(1) {
            let a = sub3(on_facet[ring[0]], origin);
            let b = sub3(on_facet[ring[i]], origin);
            let c = sub3(on_facet[ring[i + 1]], origin);
            let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]);
            total += det.abs();
        }
    }
    total
}

/// `|det|` of the edge matrix of a simplex.
pub(crate) fn simplex_volume(points: &[Vec<i64>]) -> Result<BigInt> {
    let base = &points[0];
    let rows: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    if rows.is_empty() {
        return Ok(BigInt::zero());
    }
    Ok(det_bareiss(&IntMatrix::from_rows(&rows)?)?.abs())
}
