//! Lattice point enumeration in reduced coordinates.

use std::collections::BTreeSet;

use num_integer::Integer;

use super::hull::Facet;
use super::{PolytopeError, Result};

/// `(total, boundary, interior)`.
pub type PointCounts = (u64, u64, u64);

/// Refuse enumerations larger than this many candidate cells.
const ENUMERATION_LIMIT: u128 = 1 << 32;

/// Scans the bounding box of the first `d - 1` coordinates and solves the
/// facet inequalities for the last coordinate exactly.
pub(crate) fn scan(vertices: &[Vec<i64>], facets: &[Facet], dim: usize) -> Result<PointCounts> {
    debug_assert!(dim >= 1);
    let lo: Vec<i64> = (0..dim)
        .map(|j| vertices.iter().map(|v| v[j]).min().unwrap_or(0))
        .collect();
    let hi: Vec<i64> = (0..dim)
        .map(|j| vertices.iter().map(|v| v[j]).max().unwrap_or(0))
        .collect();
    let cells: u128 = (0..dim - 1)
        .map(|j| (i128::from(hi[j]) - i128::from(lo[j]) + 1) as u128)
        .product();
    if cells > ENUMERATION_LIMIT {
        return Err(PolytopeError::TooLarge);
    }

    let last = dim - 1;
    let mut prefix = lo[..last].to_vec();
    let (mut total, mut boundary) = (0u64, 0u64);
    loop {
        let (t, b) = count_fiber(facets, &prefix, last, lo[last], hi[last]);
        total += t;
        boundary += b;
        // odometer over the prefix box
        let mut j = 0;
        loop {
            if j == last {
                return Ok((total, boundary, total - boundary));
            }
            if prefix[j] < hi[j] {
                prefix[j] += 1;
                break;
            }
            prefix[j] = lo[j];
            j += 1;
        }
    }
}

/// Counts `(points, boundary points)` on the line `{prefix} x Z`.
fn count_fiber(facets: &[Facet], prefix: &[i64], last: usize, lo: i64, hi: i64) -> (u64, u64) {
    let mut lower = i128::from(lo);
    let mut upper = i128::from(hi);
    for f in facets {
        let rest = i128::from(f.offset)
            - f.normal[..last]
                .iter()
                .zip(prefix)
                .map(|(&a, &b)| i128::from(a) * i128::from(b))
                .sum::<i128>();
        let a = i128::from(f.normal[last]);
        match a.signum() {
            1 => upper = upper.min(Integer::div_floor(&rest, &a)),
            -1 => lower = lower.max(Integer::div_ceil(&rest, &a)),
            _ if rest < 0 => return (0, 0),
            _ => {}
        }
    }
    if lower > upper {
        return (0, 0);
    }
    let len = (upper - lower + 1) as u64;
    let mut tight_values = BTreeSet::new();
    for f in facets {
        let rest = i128::from(f.offset)
            - f.normal[..last]
                .iter()
                .zip(prefix)
                .map(|(&a, &b)| i128::from(a) * i128::from(b))
                .sum::<i128>();
        let a = i128::from(f.normal[last]);
        if a == 0 {
            if rest == 0 {
                return (len, len);
            }
        } else if rest % a == 0 {
            let y = rest / a;
            if (lower..=upper).contains(&y) {
                tight_values.insert(y);
            }
        }
    }
    (len, tight_values.len() as u64)
}

/// Counts lattice points of a simplex via barycentric numerators: a point is
/// `v0 + (a / D) E` with `E` the edge matrix, `D = |det E|`, `a >= 0` and
/// `sum a <= D`.
#[cfg(test)]
pub(crate) fn simplex(vertices: &[Vec<i64>]) -> Result<PointCounts> {
    let d = vertices.len() - 1;
    let base = &vertices[0];
    let edges: Vec<Vec<i64>> = vertices[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    use num_traits::ToPrimitive;

    let e = super::intmat::IntMatrix::from_rows(&edges)?;
    let det = super::intmat::det_bareiss(&e)?
        .to_i64()
        .ok_or(PolytopeError::Overflow)?
        .unsigned_abs();
    if det == 0 {
        return Err(PolytopeError::NotSimplex);
    }
    // C(det + d, d) candidates
    let mut candidates: u128 = 1;
    for i in 1..=d as u128 {
        candidates = candidates * (u128::from(det) + i) / i;
        if candidates > ENUMERATION_LIMIT {
            return Err(PolytopeError::TooLarge);
        }
    }
    let det_i = det as i128;
    let mut numerators = vec![0i64; d];
    let (mut total, mut boundary) = (0u64, 0u64);
    loop {
        let sum: i64 = numerators.iter().sum();
        if i128::from(sum) <= det_i {
            let integral = (0..d).all(|j| {
                let coord: i128 = numerators
                    .iter()
                    .zip(&edges)
                    .map(|(&a, row)| i128::from(a) * i128::from(row[j]))
                    .sum();
                coord % det_i == 0
            });
            if integral {
                total += 1;
                if numerators.contains(&0) || i128::from(sum) == det_i {
                    boundary += 1;
                }
            }
        }
        let mut j = 0;
        loop {
            if j == d {
                return Ok((total, boundary, total - boundary));
            }
            if (numerators[j] as u64) < det {
                numerators[j] += 1;
                if numerators.iter().sum::<i64>() as u64 <= det {
                    break;
                }
            }
            numerators[j] = 0;
            j += 1;
        }
    }
}
