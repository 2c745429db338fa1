//! Planar convex hulls via Andrew's monotone chain.

use super::Vector;
use crate::{Error, Result};

/// Cross product of `b - a` and `c - a` in the plane.
#[inline]
fn cross2(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Indices of the convex hull of `pts`, counterclockwise starting at the
/// lexicographic minimum. The chain itself runs on exact predicates;
/// afterwards, ring vertices whose height over the chord of their
/// neighbors is below `tol` are filtered out, so near-collinear points
/// are dropped without the chain ever popping a true corner. (A
/// tolerance inside the chain is unsound: coordinate noise can split a
/// vertical run across the sort order, and an epsilon pop then removes
/// extreme points lying beyond the chord.)
pub(crate) fn ring_indices(pts: &[(f64, f64)], tol: f64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| {
        pts[i]
            .0
            .partial_cmp(&pts[j].0)
            .unwrap()
            .then(pts[i].1.partial_cmp(&pts[j].1).unwrap())
    });

    let keep_turn = |chain: &[usize], p: usize| -> bool {
        let o = pts[chain[chain.len() - 2]];
        let a = pts[chain[chain.len() - 1]];
        cross2(o, a, pts[p]) > 0.0
    };

    let mut lower: Vec<usize> = Vec::with_capacity(order.len());
    for &i in &order {
        while lower.len() >= 2 && !keep_turn(&lower, i) {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::with_capacity(order.len());
    for &i in order.iter().rev() {
        while upper.len() >= 2 && !keep_turn(&upper, i) {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    let mut ring = lower;
    ring.extend(upper);

    loop {
        let mut removed = false;
        let mut i = 0;
        while ring.len() > 3 && i < ring.len() {
            let n = ring.len();
            let prev = pts[ring[(i + n - 1) % n]];
            let cur = pts[ring[i]];
            let next = pts[ring[(i + 1) % n]];
            let chord = ((next.0 - prev.0).powi(2) + (next.1 - prev.1).powi(2)).sqrt();
            if cross2(prev, cur, next).abs() <= tol * chord.max(1e-300) {
                ring.remove(i);
                removed = true;
            } else {
                i += 1;
            }
        }
        if !removed {
            break;
        }
    }
    ring
}

/// Convex hull of 2D vectors, counterclockwise from the lexicographic
/// minimum, with near-collinear vertices dropped at tolerance `tol`.
/// The starting vertex is chosen with coordinate ties resolved at
/// tolerance, so the rotation survives floating-point noise.
pub(crate) fn hull_ccw(points: &[Vector], tol: f64) -> Result<Vec<Vector>> {
    let coords: Vec<(f64, f64)> = points
        .iter()
        .map(|p| {
            let s = p.as_slice();
            (s[0], s[1])
        })
        .collect();
    let ring = ring_indices(&coords, tol);
    if ring.len() < 3 {
        return Err(Error::DegenerateInput(
            "points are collinear within tolerance".into(),
        ));
    }
    let mut verts: Vec<Vector> = ring.into_iter().map(|i| points[i]).collect();
    let start = (0..verts.len())
        .min_by(|&a, &b| verts[a].lex_cmp_tol(&verts[b], super::GEOM_TOL))
        .unwrap();
    verts.rotate_left(start);
    Ok(verts)
}
