//! Incremental 3D convex hull with visible-facet horizon repair and
//! coplanar-facet merging.
//!
//! Points are inserted farthest-first; each insertion removes the facets
//! that see the point and stitches new triangles along the horizon. After
//! all insertions, triangles are merged into maximal planar facets (plane
//! tolerance 1e-9 on unit-scale data) and each facet's vertex cycle is
//! recovered by a planar hull in facet coordinates, so points interior to
//! a facet or on an edge never survive as vertices.

use std::collections::{HashMap, HashSet};

use super::{hull2d, Vector};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct Face3 {
    pub normal: Vector,
    pub offset: f64,
    /// Vertex cycle as indices into [`Hull3::points`], counterclockwise
    /// seen from outside.
    pub cycle: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Hull3 {
    pub points: Vec<Vector>,
    pub faces: Vec<Face3>,
}

#[derive(Clone, Copy)]
struct Tri {
    v: [usize; 3],
    n: Vector,
    off: f64,
}

fn tri_from(pts: &[Vector], a: usize, b: usize, c: usize, interior: &Vector) -> Option<Tri> {
    let n = (pts[b] - pts[a]).cross(&(pts[c] - pts[a]));
    let len = n.norm();
    if len < 1e-300 {
        return None;
    }
    let mut n = n * (1.0 / len);
    let mut v = [a, b, c];
    let mut off = (n.dot(&pts[a]) + n.dot(&pts[b]) + n.dot(&pts[c])) / 3.0;
    if n.dot(interior) > off {
        n = -n;
        off = -off;
        v.swap(1, 2);
    }
    Some(Tri { v, n, off })
}

fn insert_point(tris: &mut Vec<Tri>, pts: &[Vector], p: usize, interior: &Vector, eps: f64) -> bool {
    let x = pts[p];
    let visible: Vec<usize> = tris
        .iter()
        .enumerate()
        .filter(|(_, t)| t.n.dot(&x) - t.off > eps)
        .map(|(i, _)| i)
        .collect();
    if visible.is_empty() {
        return false;
    }
    let mut directed: HashSet<(usize, usize)> = HashSet::new();
    for &fi in &visible {
        let [a, b, c] = tris[fi].v;
        directed.insert((a, b));
        directed.insert((b, c));
        directed.insert((c, a));
    }
    let mut horizon: Vec<(usize, usize)> = Vec::new();
    for &fi in &visible {
        let [a, b, c] = tris[fi].v;
        for (u, v) in [(a, b), (b, c), (c, a)] {
            if !directed.contains(&(v, u)) {
                horizon.push((u, v));
            }
        }
    }
    let dead: HashSet<usize> = visible.into_iter().collect();
    let mut next: Vec<Tri> = tris
        .iter()
        .enumerate()
        .filter(|(i, _)| !dead.contains(i))
        .map(|(_, t)| *t)
        .collect();
    for (u, v) in horizon {
        if let Some(t) = tri_from(pts, u, v, p, interior) {
            next.push(t);
        }
    }
    *tris = next;
    true
}

fn initial_simplex(pts: &[Vector], eps: f64) -> Result<[usize; 4]> {
    let degenerate = || Error::DegenerateInput("points lie on a common plane within tolerance".into());
    let i0 = (0..pts.len())
        .min_by(|&a, &b| pts[a].lex_cmp(&pts[b]))
        .unwrap();
    let i1 = (0..pts.len())
        .max_by(|&a, &b| {
            pts[a]
                .dist(&pts[i0])
                .partial_cmp(&pts[b].dist(&pts[i0]))
                .unwrap()
        })
        .unwrap();
    if pts[i1].dist(&pts[i0]) <= eps {
        return Err(degenerate());
    }
    let d = pts[i1] - pts[i0];
    let dlen = d.norm();
    let line_height = |i: usize| (pts[i] - pts[i0]).cross(&d).norm() / dlen;
    let i2 = (0..pts.len())
        .max_by(|&a, &b| line_height(a).partial_cmp(&line_height(b)).unwrap())
        .unwrap();
    if line_height(i2) <= eps {
        return Err(degenerate());
    }
    let n = (pts[i1] - pts[i0]).cross(&(pts[i2] - pts[i0]));
    let n = n * (1.0 / n.norm());
    let plane_height = |i: usize| (n.dot(&pts[i]) - n.dot(&pts[i0])).abs();
    let i3 = (0..pts.len())
        .max_by(|&a, &b| plane_height(a).partial_cmp(&plane_height(b)).unwrap())
        .unwrap();
    if plane_height(i3) <= eps {
        return Err(degenerate());
    }
    Ok([i0, i1, i2, i3])
}

struct DisjointSet(Vec<usize>);

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet((0..n).collect())
    }
    fn find(&mut self, i: usize) -> usize {
        if self.0[i] != i {
            let r = self.find(self.0[i]);
            self.0[i] = r;
        }
        self.0[i]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Merge triangles into maximal planar facets and extract vertex cycles.
fn merge_faces(tris: &[Tri], pts: &[Vector], plane_tol: f64) -> Result<Vec<Face3>> {
    let mut edge_owner: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, t) in tris.iter().enumerate() {
        let [a, b, c] = t.v;
        for (u, v) in [(a, b), (b, c), (c, a)] {
            let key = (u.min(v), u.max(v));
            edge_owner.entry(key).or_default().push(i);
        }
    }
    let on_plane = |t: &Tri, other: &Tri| -> bool {
        other
            .v
            .iter()
            .all(|&vi| (t.n.dot(&pts[vi]) - t.off).abs() <= plane_tol)
    };
    let mut ds = DisjointSet::new(tris.len());
    for owners in edge_owner.values() {
        if owners.len() == 2 {
            let (i, j) = (owners[0], owners[1]);
            if on_plane(&tris[i], &tris[j]) || on_plane(&tris[j], &tris[i]) {
                ds.union(i, j);
            }
        }
    }

    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..tris.len() {
        let r = ds.find(i);
        groups.entry(r).or_default().push(i);
    }

    let mut faces = Vec::with_capacity(groups.len());
    for members in groups.values() {
        // Area-weighted normal: sum of unnormalized cross products.
        let mut nsum = Vector::new3(0.0, 0.0, 0.0);
        for &mi in members {
            let [a, b, c] = tris[mi].v;
            nsum = nsum + (pts[b] - pts[a]).cross(&(pts[c] - pts[a]));
        }
        let nlen = nsum.norm();
        if nlen < 1e-300 {
            continue;
        }
        let normal = nsum * (1.0 / nlen);
        let mut verts: Vec<usize> = members
            .iter()
            .flat_map(|&mi| tris[mi].v.iter().copied())
            .collect();
        verts.sort_unstable();
        verts.dedup();
        let offset = verts.iter().map(|&vi| normal.dot(&pts[vi])).sum::<f64>() / verts.len() as f64;

        // Facet-plane coordinates with (u, v, normal) right-handed, so a
        // counterclockwise planar ring is counterclockwise from outside.
        let ns = normal.as_slice();
        let seed = if ns[0].abs() <= ns[1].abs() && ns[0].abs() <= ns[2].abs() {
            Vector::new3(1.0, 0.0, 0.0)
        } else if ns[1].abs() <= ns[2].abs() {
            Vector::new3(0.0, 1.0, 0.0)
        } else {
            Vector::new3(0.0, 0.0, 1.0)
        };
        let u = {
            let raw = seed - normal * normal.dot(&seed);
            raw * (1.0 / raw.norm())
        };
        let v = normal.cross(&u);
        let planar: Vec<(f64, f64)> = verts
            .iter()
            .map(|&vi| (u.dot(&pts[vi]), v.dot(&pts[vi])))
            .collect();
        let ring = hull2d::ring_indices(&planar, 1e-9);
        if ring.len() < 3 {
            return Err(Error::DegenerateInput("degenerate facet cycle".into()));
        }
        let cycle: Vec<usize> = ring.into_iter().map(|ri| verts[ri]).collect();
        faces.push(Face3 {
            normal,
            offset,
            cycle,
        });
    }
    Ok(faces)
}

pub(crate) fn hull3(input: &[Vector]) -> Result<Hull3> {
    // Dedup within geometric tolerance, keeping first occurrences.
    let mut pts: Vec<Vector> = Vec::with_capacity(input.len());
    for p in input {
        if !pts.iter().any(|q| q.dist(p) <= 1e-9) {
            pts.push(*p);
        }
    }
    if pts.len() < 4 {
        return Err(Error::DegenerateInput(
            "need at least 4 distinct points in 3D".into(),
        ));
    }
    let scale = pts
        .iter()
        .flat_map(|p| p.as_slice().iter())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let eps = 1e-9 * scale.max(1.0);

    let [i0, i1, i2, i3] = initial_simplex(&pts, eps)?;
    let interior = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) * 0.25;
    let mut tris: Vec<Tri> = Vec::new();
    for (a, b, c) in [(i0, i1, i2), (i0, i1, i3), (i0, i2, i3), (i1, i2, i3)] {
        tris.push(tri_from(&pts, a, b, c, &interior).ok_or_else(|| {
            Error::DegenerateInput("degenerate initial simplex".into())
        })?);
    }

    let seeds: HashSet<usize> = [i0, i1, i2, i3].into_iter().collect();
    let mut order: Vec<usize> = (0..pts.len()).filter(|i| !seeds.contains(i)).collect();
    order.sort_by(|&a, &b| {
        pts[b]
            .dist(&interior)
            .partial_cmp(&pts[a].dist(&interior))
            .unwrap()
    });
    for &p in &order {
        insert_point(&mut tris, &pts, p, &interior, eps);
    }

    // Repair sweeps: reinsert anything still left outside.
    for _round in 0..4 {
        let mut dirty = false;
        for p in 0..pts.len() {
            let worst = tris
                .iter()
                .map(|t| t.n.dot(&pts[p]) - t.off)
                .fold(f64::NEG_INFINITY, f64::max);
            if worst > 10.0 * eps {
                dirty = true;
                insert_point(&mut tris, &pts, p, &interior, eps);
            }
        }
        if !dirty {
            let faces = merge_faces(&tris, &pts, 1e-9 * scale.max(1.0))?;
            return Ok(Hull3 { points: pts, faces });
        }
    }
    Err(Error::NumericalFailure(
        "3D hull failed to converge to a containing surface".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_corners() -> Vec<Vector> {
        let mut v = Vec::new();
        for &x in &[-1.0, 1.0] {
            for &y in &[-1.0, 1.0] {
                for &z in &[-1.0, 1.0] {
                    v.push(Vector::new3(x, y, z));
                }
            }
        }
        v
    }

    #[test]
    fn cube_merges_to_six_facets() {
        let mut pts = cube_corners();
        pts.push(Vector::new3(0.0, 0.0, 0.0)); // interior
        pts.push(Vector::new3(1.0, 0.0, 0.0)); // facet interior
        pts.push(Vector::new3(1.0, 1.0, 0.0)); // edge midpoint
        let h = hull3(&pts).unwrap();
        assert_eq!(h.faces.len(), 6);
        let mut verts: HashSet<usize> = HashSet::new();
        for f in &h.faces {
            assert_eq!(f.cycle.len(), 4);
            verts.extend(f.cycle.iter().copied());
        }
        assert_eq!(verts.len(), 8);
    }

    #[test]
    fn simplex_faces() {
        let pts = vec![
            Vector::new3(0.0, 0.0, 0.0),
            Vector::new3(1.0, 0.0, 0.0),
            Vector::new3(0.0, 1.0, 0.0),
            Vector::new3(0.0, 0.0, 1.0),
        ];
        let h = hull3(&pts).unwrap();
        assert_eq!(h.faces.len(), 4);
    }

    #[test]
    fn coplanar_input_rejected() {
        let pts = vec![
            Vector::new3(0.0, 0.0, 0.0),
            Vector::new3(1.0, 0.0, 0.0),
            Vector::new3(0.0, 1.0, 0.0),
            Vector::new3(1.0, 1.0, 0.0),
        ];
        assert!(matches!(hull3(&pts), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn outward_orientation_and_containment() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let pts: Vec<Vector> = (0..40)
                .map(|_| {
                    Vector::new3(
                        rng.gen_range(-1.0..1.0),
                        rng.gen_range(-1.0..1.0),
                        rng.gen_range(-1.0..1.0),
                    )
                })
                .collect();
            let h = hull3(&pts).unwrap();
            for p in &h.points {
                for f in &h.faces {
                    assert!(f.normal.dot(p) <= f.offset + 1e-7);
                }
            }
        }
    }
}
