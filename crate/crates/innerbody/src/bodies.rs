//! Ready-made bodies: boxes, simplices, regular polygons, seeded random
//! hulls, circumscribed (tangential) bodies, and polytopal stand-ins for
//! the Euclidean ball.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::polytope::{minkowski_sum_points, Body, Halfspace, Vector};
use crate::{Error, Result};

/// Axis-aligned box centered at the origin with the given full side
/// lengths (one per dimension).
pub fn box_centered(sides: &[f64]) -> Result<Body> {
    let dim = sides.len();
    if !(dim == 2 || dim == 3) {
        return Err(Error::InvalidInput(format!(
            "box needs 2 or 3 side lengths, got {dim}"
        )));
    }
    if sides.iter().any(|s| !(*s > 0.0)) {
        return Err(Error::InvalidInput("box sides must be positive".into()));
    }
    let h: Vec<f64> = sides.iter().map(|s| s / 2.0).collect();
    let mut pts = Vec::new();
    if dim == 2 {
        for &sx in &[-1.0, 1.0] {
            for &sy in &[-1.0, 1.0] {
                pts.push(Vector::new2(sx * h[0], sy * h[1]));
            }
        }
    } else {
        for &sx in &[-1.0, 1.0] {
            for &sy in &[-1.0, 1.0] {
                for &sz in &[-1.0, 1.0] {
                    pts.push(Vector::new3(sx * h[0], sy * h[1], sz * h[2]));
                }
            }
        }
    }
    Body::from_points(dim, &pts)
}

/// `[-1,1]^dim`.
pub fn unit_cube(dim: usize) -> Result<Body> {
    box_centered(&vec![2.0; dim])
}

/// Cross-polytope: hull of `±e_i`.
pub fn cross_polytope(dim: usize) -> Result<Body> {
    let mut pts = Vec::new();
    for i in 0..dim {
        for s in [-1.0, 1.0] {
            let mut c = vec![0.0; dim];
            c[i] = s;
            pts.push(Vector::from_slice(&c)?);
        }
    }
    Body::from_points(dim, &pts)
}

/// Standard simplex: hull of the origin and the unit basis vectors.
pub fn simplex(dim: usize) -> Result<Body> {
    let mut pts = vec![Vector::zero(dim)];
    for i in 0..dim {
        let mut c = vec![0.0; dim];
        c[i] = 1.0;
        pts.push(Vector::from_slice(&c)?);
    }
    Body::from_points(dim, &pts)
}

/// Regular m-gon inscribed in the unit circle, one vertex at angle 0.
pub fn regular_polygon(m: usize) -> Result<Body> {
    if m < 3 {
        return Err(Error::InvalidInput(format!(
            "polygon needs at least 3 vertices, got {m}"
        )));
    }
    let pts: Vec<Vector> = (0..m)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / m as f64;
            Vector::new2(t.cos(), t.sin())
        })
        .collect();
    Body::from_points(2, &pts)
}

/// Hull of `m` points drawn uniformly from `[-1,1]^dim`; resamples until
/// the hull is full-dimensional with width/diameter at least 0.05.
pub fn random_hull(dim: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Body> {
    if m < dim + 1 {
        return Err(Error::InvalidInput(format!(
            "random hull needs at least {} points, got {m}",
            dim + 1
        )));
    }
    for _ in 0..256 {
        let pts: Vec<Vector> = (0..m)
            .map(|_| {
                let c: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
                Vector::from_slice(&c).unwrap()
            })
            .collect();
        match Body::from_points(dim, &pts) {
            Ok(b) if b.min_width() >= 0.05 * b.diameter() => return Ok(b),
            _ => continue,
        }
    }
    Err(Error::NumericalFailure(
        "random hull generation kept degenerating".into(),
    ))
}

/// Tangential body of `k` by construction: intersection of
/// `{x·ν <= h_k(ν)}` over the given outward normals.
pub fn circumscribed(k: &Body, normals: &[Vector]) -> Result<Body> {
    let mut hs = Vec::with_capacity(normals.len());
    for n in normals {
        let unit = n.normalized()?;
        hs.push(Halfspace::from_unit(unit, k.support(&unit)?));
    }
    match Body::from_halfspaces(k.dim(), hs) {
        Err(Error::EmptyOrUnbounded) => Err(Error::InvalidInput(
            "circumscribed normals must positively span the space".into(),
        )),
        other => other,
    }
}

/// Polytopal stand-in for the Euclidean unit ball: a regular 64-gon in
/// 2D, a thrice-subdivided icosahedron (642 vertices) in 3D. Support
/// deficit is below 4e-3 in 3D and ~1.2e-3 in 2D.
pub fn ball_surrogate(dim: usize) -> Result<Body> {
    match dim {
        2 => regular_polygon(64),
        3 => {
            let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
            let mut verts = Vec::new();
            for &a in &[-1.0, 1.0] {
                for &b in &[-phi, phi] {
                    verts.push(Vector::new3(0.0, a, b));
                    verts.push(Vector::new3(a, b, 0.0));
                    verts.push(Vector::new3(b, 0.0, a));
                }
            }
            let normalize =
                |v: Vector| -> Vector { v * (1.0 / v.norm()) };
            let mut verts: Vec<Vector> = verts.into_iter().map(normalize).collect();
            for _ in 0..3 {
                let body = Body::from_points(3, &verts)?;
                let mut next = verts.clone();
                // Midpoint refinement along facet cycles, projected back
                // to the sphere.
                for f in body.facets() {
                    let cycle: Vec<&Vector> = body
                        .vertices()
                        .iter()
                        .filter(|v| (f.normal.dot(v) - f.offset).abs() < 1e-9)
                        .collect();
                    for (i, a) in cycle.iter().enumerate() {
                        for b in cycle.iter().skip(i + 1) {
                            next.push(normalize((**a + **b) * 0.5));
                        }
                    }
                }
                verts = next;
            }
            Body::from_points(3, &verts)
        }
        d => Err(Error::InvalidInput(format!(
            "ball surrogate only exists in 2D and 3D, got {d}"
        ))),
    }
}

/// Translate a body so its volume centroid sits at the origin.
pub fn centered_at_centroid(b: &Body) -> Result<Body> {
    b.translate(&-b.centroid())
}

/// Minkowski sum of a body and a scaled copy of another (`a + t·b`).
pub fn dilate(a: &Body, b: &Body, t: f64) -> Result<Body> {
    if t == 0.0 {
        return Ok(a.clone());
    }
    let scaled: Vec<Vector> = b.vertices().iter().map(|v| *v * t).collect();
    let pts = minkowski_sum_points(a.vertices(), &scaled);
    Body::from_points(a.dim(), &pts)
}
