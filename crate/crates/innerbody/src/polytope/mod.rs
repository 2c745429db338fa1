//! Polytope representations and the basic convex-geometry operations.
//!
//! A [`Body`] carries both a vertex description ([`VPolytope`]) and a
//! facet description ([`HPolytope`]) of the same polytope, together with
//! its volume and per-facet surface measures. The two representations are
//! linked by [`hrep_from_vrep`] (hull facets) and [`vrep_from_hrep`]
//! (interior-point translation, polar dual points `a/(b - a·x0)`, dual
//! hull, dual-facet-to-vertex mapping).
//!
//! Everything is restricted to dimensions 2 and 3 and works on bodies of
//! diameter roughly in `[0.1, 100]` with absolute geometric tolerance
//! 1e-9.

mod hull2d;
mod hull3d;

use std::cmp::Ordering;

use crate::linprog::{self, LPStatus, LinearProgram};
use crate::{Error, Result};

/// Absolute geometric tolerance on unit-scale data.
pub const GEOM_TOL: f64 = 1e-9;

/// A point or direction in 2 or 3 dimensions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector {
    dim: usize,
    c: [f64; 3],
}

impl Vector {
    pub fn new2(x: f64, y: f64) -> Self {
        Vector {
            dim: 2,
            c: [x, y, 0.0],
        }
    }

    pub fn new3(x: f64, y: f64, z: f64) -> Self {
        Vector {
            dim: 3,
            c: [x, y, z],
        }
    }

    pub fn from_slice(s: &[f64]) -> Result<Self> {
        match s {
            [x, y] => Ok(Vector::new2(*x, *y)),
            [x, y, z] => Ok(Vector::new3(*x, *y, *z)),
            _ => Err(Error::InvalidInput(format!(
                "vectors must have 2 or 3 coordinates, got {}",
                s.len()
            ))),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Vector {
            dim,
            c: [0.0; 3],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c[..self.dim]
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.as_slice().to_vec()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.c[0] * other.c[0] + self.c[1] * other.c[1] + self.c[2] * other.c[2]
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: &Vector) -> f64 {
        (*self - *other).norm()
    }

    pub fn normalized(&self) -> Result<Vector> {
        let len = self.norm();
        if len < 1e-12 {
            return Err(Error::ZeroDirection);
        }
        Ok(*self * (1.0 / len))
    }

    /// 3D cross product.
    pub fn cross(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim, 3);
        debug_assert_eq!(other.dim, 3);
        Vector::new3(
            self.c[1] * other.c[2] - self.c[2] * other.c[1],
            self.c[2] * other.c[0] - self.c[0] * other.c[2],
            self.c[0] * other.c[1] - self.c[1] * other.c[0],
        )
    }

    pub fn lex_cmp(&self, other: &Vector) -> Ordering {
        for i in 0..self.dim {
            match self.c[i].partial_cmp(&other.c[i]) {
                Some(Ordering::Equal) | None => continue,
                Some(o) => return o,
            }
        }
        Ordering::Equal
    }

    /// Lexicographic comparison that treats coordinates within `tol` as
    /// tied, so canonical orderings survive floating-point noise on
    /// vertices that share a coordinate.
    pub(crate) fn lex_cmp_tol(&self, other: &Vector, tol: f64) -> Ordering {
        for i in 0..self.dim {
            let d = self.c[i] - other.c[i];
            if d < -tol {
                return Ordering::Less;
            }
            if d > tol {
                return Ordering::Greater;
            }
        }
        Ordering::Equal
    }
}

/// Insertion sort with a caller-supplied comparison; tolerates the
/// near-tie comparators used for canonical ordering, which are not
/// strict total orders.
pub(crate) fn insertion_sort_by<T>(items: &mut [T], cmp: impl Fn(&T, &T) -> Ordering) {
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && cmp(&items[j - 1], &items[j]) == Ordering::Greater {
            items.swap(j - 1, j);
            j -= 1;
        }
    }
}

impl std::ops::Add for Vector {
    type Output = Vector;
    fn add(self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        Vector {
            dim: self.dim,
            c: [
                self.c[0] + rhs.c[0],
                self.c[1] + rhs.c[1],
                self.c[2] + rhs.c[2],
            ],
        }
    }
}

impl std::ops::Sub for Vector {
    type Output = Vector;
    fn sub(self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        Vector {
            dim: self.dim,
            c: [
                self.c[0] - rhs.c[0],
                self.c[1] - rhs.c[1],
                self.c[2] - rhs.c[2],
            ],
        }
    }
}

impl std::ops::Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector {
            dim: self.dim,
            c: [-self.c[0], -self.c[1], -self.c[2]],
        }
    }
}

impl std::ops::Mul<f64> for Vector {
    type Output = Vector;
    fn mul(self, rhs: f64) -> Vector {
        Vector {
            dim: self.dim,
            c: [self.c[0] * rhs, self.c[1] * rhs, self.c[2] * rhs],
        }
    }
}

/// Closed halfspace `normal · x <= offset` with unit Euclidean normal.
#[derive(Clone, Copy, Debug)]
pub struct Halfspace {
    normal: Vector,
    offset: f64,
}

impl Halfspace {
    /// Build from any nonzero normal; normal and offset are rescaled so
    /// the stored normal has unit length.
    pub fn new(normal: Vector, offset: f64) -> Result<Self> {
        let len = normal.norm();
        if len < 1e-12 {
            return Err(Error::ZeroDirection);
        }
        Ok(Halfspace {
            normal: normal * (1.0 / len),
            offset: offset / len,
        })
    }

    pub(crate) fn from_unit(normal: Vector, offset: f64) -> Self {
        debug_assert!((normal.norm() - 1.0).abs() < 1e-9);
        Halfspace { normal, offset }
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Signed violation `normal · x - offset` (nonpositive inside).
    pub fn eval(&self, x: &Vector) -> f64 {
        self.normal.dot(x) - self.offset
    }
}

/// Bounded intersection of halfspaces.
#[derive(Clone, Debug)]
pub struct HPolytope {
    dim: usize,
    halfspaces: Vec<Halfspace>,
}

impl HPolytope {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        check_dim(dim)?;
        for h in &halfspaces {
            if h.normal.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: h.normal.dim(),
                });
            }
        }
        Ok(HPolytope { dim, halfspaces })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.halfspaces.iter().all(|h| h.eval(x) <= tol)
    }

    /// Merge halfspaces with near-identical normals, keeping the smaller
    /// offset.
    pub fn merged_duplicates(&self) -> HPolytope {
        let mut out: Vec<Halfspace> = Vec::with_capacity(self.halfspaces.len());
        for h in &self.halfspaces {
            if let Some(existing) = out
                .iter_mut()
                .find(|g| (*g.normal() - *h.normal()).norm() < GEOM_TOL)
            {
                if h.offset < existing.offset {
                    existing.offset = h.offset;
                }
            } else {
                out.push(*h);
            }
        }
        HPolytope {
            dim: self.dim,
            halfspaces: out,
        }
    }

    /// Canonical form: duplicate normals merged, then constraints that an
    /// LP proves strictly redundant (max of `a·x` over the others below
    /// `b - 1e-9`) dropped.
    pub fn canonicalized(&self) -> Result<HPolytope> {
        let merged = self.merged_duplicates();
        let hs = &merged.halfspaces;
        let mut keep = vec![true; hs.len()];
        for i in 0..hs.len() {
            let rows: Vec<Vec<f64>> = hs
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i && keep[*j])
                .map(|(_, h)| h.normal.to_vec())
                .collect();
            if rows.is_empty() {
                continue;
            }
            let rhs: Vec<f64> = hs
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i && keep[*j])
                .map(|(_, h)| h.offset)
                .collect();
            let lp = LinearProgram {
                objective: hs[i].normal.to_vec(),
                constraint_rows: rows,
                rhs,
            };
            let res = linprog::solve(&lp)?;
            if res.status == LPStatus::Optimal && res.value.unwrap() < hs[i].offset - GEOM_TOL {
                keep[i] = false;
            }
        }
        Ok(HPolytope {
            dim: merged.dim,
            halfspaces: hs
                .iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(h, _)| *h)
                .collect(),
        })
    }
}

/// Finite vertex set in canonical order: counterclockwise from the
/// lexicographic minimum in 2D, lexicographically sorted in 3D.
#[derive(Clone, Debug)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Vector>,
}

impl VPolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }
}

/// One facet of a [`Body`]: outward unit normal, plane offset, and
/// surface measure (edge length in 2D, polygon area in 3D).
#[derive(Clone, Copy, Debug)]
pub struct Facet {
    pub normal: Vector,
    pub offset: f64,
    pub measure: f64,
}

/// A convex polytope with nonempty interior, carrying both
/// representations plus cached volume, facet measures, and centroid.
#[derive(Clone, Debug)]
pub struct Body {
    vrep: VPolytope,
    hrep: HPolytope,
    volume: f64,
    facets: Vec<Facet>,
    centroid: Vector,
    diameter: f64,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 3 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "dimension must be 2 or 3, got {dim}"
        )))
    }
}

/// Extreme points of the hull of `points`, canonically ordered.
pub fn convex_hull(points: &[Vector], dim: usize) -> Result<VPolytope> {
    check_dim(dim)?;
    if points.len() < dim + 1 {
        return Err(Error::DegenerateInput(format!(
            "need at least {} points, got {}",
            dim + 1,
            points.len()
        )));
    }
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
        if !p.as_slice().iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
    }
    let vertices = match dim {
        2 => hull2d::hull_ccw(points, GEOM_TOL)?,
        _ => {
            let h = hull3d::hull3(points)?;
            let mut idx: Vec<usize> = h
                .faces
                .iter()
                .flat_map(|f| f.cycle.iter().copied())
                .collect();
            idx.sort_unstable();
            idx.dedup();
            let mut verts: Vec<Vector> = idx.into_iter().map(|i| h.points[i]).collect();
            insertion_sort_by(&mut verts, |a, b| a.lex_cmp_tol(b, GEOM_TOL));
            verts
        }
    };
    Ok(VPolytope { dim, vertices })
}

/// One halfspace per facet of the hull of `v`'s vertices.
pub fn hrep_from_vrep(v: &VPolytope) -> Result<HPolytope> {
    let body = Body::from_points(v.dim, &v.vertices)?;
    Ok(body.hrep)
}

/// Vertex set of a bounded halfspace intersection, via the polar dual:
/// translate an interior point to the origin, take the hull of the dual
/// points `a_i / (b_i - a_i·x0)`, and map each dual facet back to a
/// primal vertex.
pub fn vrep_from_hrep(h: &HPolytope) -> Result<VPolytope> {
    let ip = match interior_point(h) {
        Ok(ip) => ip,
        Err(Error::Empty) | Err(Error::Unbounded) => return Err(Error::EmptyOrUnbounded),
        Err(e) => return Err(e),
    };
    let x0 = ip.point;
    let dual: Vec<Vector> = h
        .halfspaces
        .iter()
        .map(|hs| {
            let b = hs.offset - hs.normal.dot(&x0);
            debug_assert!(b > 0.0);
            hs.normal * (1.0 / b)
        })
        .collect();
    let dual_scale = dual
        .iter()
        .flat_map(|p| p.as_slice().iter())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let c_tol = 1e-12 * dual_scale.max(1.0);

    let mut verts: Vec<Vector> = Vec::new();
    let mut push_vertex = |u: Vector, c: f64| -> Result<()> {
        if c <= c_tol {
            return Err(Error::EmptyOrUnbounded);
        }
        let v = u * (1.0 / c) + x0;
        if !verts.iter().any(|q: &Vector| q.dist(&v) <= GEOM_TOL) {
            verts.push(v);
        }
        Ok(())
    };
    match h.dim {
        2 => {
            let ring = hull2d::hull_ccw(&dual, 1e-12 * dual_scale.max(1.0))
                .map_err(|_| Error::EmptyOrUnbounded)?;
            for i in 0..ring.len() {
                let p = ring[i];
                let q = ring[(i + 1) % ring.len()];
                let e = q - p;
                let n = Vector::new2(e.as_slice()[1], -e.as_slice()[0]).normalized()?;
                let c = 0.5 * (n.dot(&p) + n.dot(&q));
                push_vertex(n, c)?;
            }
        }
        _ => {
            let hull = hull3d::hull3(&dual).map_err(|e| match e {
                Error::DegenerateInput(_) => Error::EmptyOrUnbounded,
                other => other,
            })?;
            for f in &hull.faces {
                push_vertex(f.normal, f.offset)?;
            }
        }
    }
    if verts.len() < h.dim + 1 {
        return Err(Error::EmptyOrUnbounded);
    }
    // Canonical ordering, reusing the hull machinery (the points are
    // already in convex position).
    convex_hull(&verts, h.dim)
}

/// An interior point with its Chebyshev-style slack.
#[derive(Clone, Debug)]
pub struct InteriorPoint {
    pub point: Vector,
    pub slack: f64,
}

/// Deepest point of a halfspace intersection: maximize `s` subject to
/// `a_i·x + s <= b_i`. Fails with [`Error::Empty`] when the optimal slack
/// is below tolerance and [`Error::Unbounded`] when arbitrarily deep
/// points exist.
pub fn interior_point(h: &HPolytope) -> Result<InteriorPoint> {
    let dim = h.dim;
    if h.halfspaces.is_empty() {
        return Err(Error::Unbounded);
    }
    let mut objective = vec![0.0; dim + 1];
    objective[dim] = 1.0;
    let rows: Vec<Vec<f64>> = h
        .halfspaces
        .iter()
        .map(|hs| {
            let mut row = hs.normal.to_vec();
            row.push(1.0);
            row
        })
        .collect();
    let rhs: Vec<f64> = h.halfspaces.iter().map(|hs| hs.offset).collect();
    let lp = LinearProgram {
        objective,
        constraint_rows: rows,
        rhs,
    };
    let res = linprog::solve(&lp)?;
    match res.status {
        LPStatus::Unbounded => Err(Error::Unbounded),
        LPStatus::Infeasible => Err(Error::NumericalFailure(
            "interior-point LP reported infeasible".into(),
        )),
        LPStatus::Optimal => {
            let p = res.point.unwrap();
            let slack = res.value.unwrap();
            if slack <= GEOM_TOL {
                return Err(Error::Empty);
            }
            Ok(InteriorPoint {
                point: Vector::from_slice(&p[..dim])?,
                slack,
            })
        }
    }
}

/// Geometry shared by the `Body` constructors: canonical vertices,
/// facets, volume, and centroid of the hull of `points`.
struct HullGeometry {
    vertices: Vec<Vector>,
    facets: Vec<Facet>,
    volume: f64,
    centroid: Vector,
}

fn hull_geometry(dim: usize, points: &[Vector]) -> Result<HullGeometry> {
    // Volume and centroid fans are anchored at the vertex mean rather
    // than the origin: for a small body far from the origin the raw
    // shoelace cancels catastrophically, and the relative volume error
    // leaks into homothety ratios.
    match dim {
        2 => {
            let ring = hull2d::hull_ccw(points, GEOM_TOL)?;
            let n = ring.len();
            let anchor = ring.iter().fold(Vector::zero(2), |a, v| a + *v) * (1.0 / n as f64);
            let mut facets = Vec::with_capacity(n);
            let mut area2 = 0.0;
            let mut cx = 0.0;
            let mut cy = 0.0;
            for i in 0..n {
                let p = ring[i];
                let q = ring[(i + 1) % n];
                let (px, py) = {
                    let d = p - anchor;
                    (d.as_slice()[0], d.as_slice()[1])
                };
                let (qx, qy) = {
                    let d = q - anchor;
                    (d.as_slice()[0], d.as_slice()[1])
                };
                let e = q - p;
                let len = e.norm();
                let normal = Vector::new2(e.as_slice()[1] / len, -e.as_slice()[0] / len);
                let offset = 0.5 * (normal.dot(&p) + normal.dot(&q));
                facets.push(Facet {
                    normal,
                    offset,
                    measure: len,
                });
                let w = px * qy - qx * py;
                area2 += w;
                cx += (px + qx) * w;
                cy += (py + qy) * w;
            }
            let volume = 0.5 * area2;
            if volume <= 0.0 {
                return Err(Error::DegenerateInput("hull has nonpositive area".into()));
            }
            let centroid = anchor + Vector::new2(cx / (3.0 * area2), cy / (3.0 * area2));
            Ok(HullGeometry {
                vertices: ring,
                facets,
                volume,
                centroid,
            })
        }
        _ => {
            let hull = hull3d::hull3(points)?;
            let anchor = {
                let mut idx: Vec<usize> = hull
                    .faces
                    .iter()
                    .flat_map(|f| f.cycle.iter().copied())
                    .collect();
                idx.sort_unstable();
                idx.dedup();
                let m = idx.len() as f64;
                idx.into_iter()
                    .fold(Vector::zero(3), |a, i| a + hull.points[i])
                    * (1.0 / m)
            };
            let mut volume6 = 0.0;
            let mut csum = Vector::new3(0.0, 0.0, 0.0);
            let mut facets = Vec::with_capacity(hull.faces.len());
            for f in &hull.faces {
                let w0 = hull.points[f.cycle[0]] - anchor;
                let mut area_vec = Vector::new3(0.0, 0.0, 0.0);
                for t in 1..f.cycle.len() - 1 {
                    let wa = hull.points[f.cycle[t]] - anchor;
                    let wb = hull.points[f.cycle[t + 1]] - anchor;
                    area_vec = area_vec + (wa - w0).cross(&(wb - w0));
                    let det = w0.dot(&wa.cross(&wb));
                    volume6 += det;
                    csum = csum + (w0 + wa + wb) * det;
                }
                facets.push(Facet {
                    normal: f.normal,
                    offset: f.offset,
                    measure: 0.5 * area_vec.norm(),
                });
            }
            let volume = volume6 / 6.0;
            if volume <= 0.0 {
                return Err(Error::DegenerateInput("hull has nonpositive volume".into()));
            }
            let centroid = anchor + csum * (1.0 / (4.0 * volume6));
            let mut idx: Vec<usize> = hull
                .faces
                .iter()
                .flat_map(|f| f.cycle.iter().copied())
                .collect();
            idx.sort_unstable();
            idx.dedup();
            let mut vertices: Vec<Vector> = idx.into_iter().map(|i| hull.points[i]).collect();
            insertion_sort_by(&mut vertices, |a, b| a.lex_cmp_tol(b, GEOM_TOL));
            insertion_sort_by(&mut facets, |a, b| {
                a.normal
                    .lex_cmp_tol(&b.normal, GEOM_TOL)
                    .then(a.offset.total_cmp(&b.offset))
            });
            Ok(HullGeometry {
                vertices,
                facets,
                volume,
                centroid,
            })
        }
    }
}

impl Body {
    /// Body from a point cloud: hull, facets, volume.
    pub fn from_points(dim: usize, points: &[Vector]) -> Result<Body> {
        check_dim(dim)?;
        if points.len() < dim + 1 {
            return Err(Error::DegenerateInput(format!(
                "need at least {} points, got {}",
                dim + 1,
                points.len()
            )));
        }
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            if !p.as_slice().iter().all(|v| v.is_finite()) {
                return Err(Error::InvalidInput("non-finite coordinate".into()));
            }
        }
        let geom = hull_geometry(dim, points)?;
        let hrep = HPolytope {
            dim,
            halfspaces: geom
                .facets
                .iter()
                .map(|f| Halfspace::from_unit(f.normal, f.offset))
                .collect(),
        };
        let mut diameter = 0.0f64;
        for (i, a) in geom.vertices.iter().enumerate() {
            for b in geom.vertices.iter().skip(i + 1) {
                diameter = diameter.max(a.dist(b));
            }
        }
        Ok(Body {
            vrep: VPolytope {
                dim,
                vertices: geom.vertices,
            },
            hrep,
            volume: geom.volume,
            facets: geom.facets,
            centroid: geom.centroid,
            diameter,
        })
    }

    /// Body from halfspaces: duplicates merged, vertices recovered through
    /// the polar dual, facets re-derived from the hull (which prunes
    /// redundant constraints).
    pub fn from_halfspaces(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Body> {
        let h = HPolytope::new(dim, halfspaces)?.merged_duplicates();
        let v = vrep_from_hrep(&h)?;
        Body::from_points(dim, v.vertices())
    }

    pub fn from_hpolytope(h: &HPolytope) -> Result<Body> {
        Body::from_halfspaces(h.dim, h.halfspaces.clone())
    }

    pub fn dim(&self) -> usize {
        self.vrep.dim
    }

    pub fn vrep(&self) -> &VPolytope {
        &self.vrep
    }

    pub fn hrep(&self) -> &HPolytope {
        &self.hrep
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vrep.vertices
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Volume centroid.
    pub fn centroid(&self) -> Vector {
        self.centroid
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Smallest facet-normal width `h(n) + h(-n)`.
    pub fn min_width(&self) -> f64 {
        self.facets
            .iter()
            .map(|f| {
                let up = self.support_unchecked(&f.normal);
                let down = self.support_unchecked(&-f.normal);
                up + down
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.hrep.contains(x, tol)
    }

    fn support_unchecked(&self, dir: &Vector) -> f64 {
        self.vrep
            .vertices
            .iter()
            .map(|v| v.dot(dir))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Support function `h(ξ) = max_v ξ·v`; positively 1-homogeneous.
    pub fn support(&self, xi: &Vector) -> Result<f64> {
        if xi.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: xi.dim(),
            });
        }
        if xi.norm() < 1e-12 {
            return Err(Error::ZeroDirection);
        }
        Ok(self.support_unchecked(xi))
    }

    /// Gauge function `ρ(x) = max_i (a_i·x)/b_i`, clamped at zero.
    /// Requires the origin in the interior (all offsets positive).
    pub fn gauge(&self, x: &Vector) -> Result<f64> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        if self.hrep.halfspaces.iter().any(|h| h.offset <= 1e-12) {
            return Err(Error::OriginNotInterior);
        }
        let rho = self
            .hrep
            .halfspaces
            .iter()
            .map(|h| h.normal.dot(x) / h.offset)
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(rho.max(0.0))
    }

    /// Hull of all pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &Body) -> Result<Body> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let sums = minkowski_sum_points(self.vertices(), other.vertices());
        Body::from_points(self.dim(), &sums)
    }

    /// Homothety `x ↦ ratio·x + shift`.
    pub fn scale_translate(&self, ratio: f64, shift: &Vector) -> Result<Body> {
        if !(ratio > 0.0) {
            return Err(Error::NonpositiveRatio(ratio));
        }
        if shift.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: shift.dim(),
            });
        }
        let mapped: Vec<Vector> = self
            .vertices()
            .iter()
            .map(|v| *v * ratio + *shift)
            .collect();
        Body::from_points(self.dim(), &mapped)
    }

    pub fn translate(&self, shift: &Vector) -> Result<Body> {
        self.scale_translate(1.0, shift)
    }

    /// Check the representation invariants (vertices inside all
    /// halfspaces, facets touched by enough vertices, positive volume).
    pub fn validate(&self) -> Result<()> {
        if !(self.volume > 0.0) {
            return Err(Error::DegenerateInput("nonpositive volume".into()));
        }
        for v in self.vertices() {
            for h in self.hrep.halfspaces() {
                if h.eval(v) > GEOM_TOL {
                    return Err(Error::DegenerateInput(format!(
                        "vertex violates halfspace by {:.3e}",
                        h.eval(v)
                    )));
                }
            }
        }
        for f in &self.facets {
            let touching = self
                .vertices()
                .iter()
                .filter(|v| (f.normal.dot(v) - f.offset).abs() <= 1e-7 * self.diameter.max(1.0))
                .count();
            if touching < self.dim() {
                return Err(Error::DegenerateInput(format!(
                    "facet touched by only {touching} vertices"
                )));
            }
        }
        Ok(())
    }
}

/// All pairwise sums of two vertex sets.
pub fn minkowski_sum_points(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            out.push(*p + *q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    pub(crate) fn unit_square() -> Body {
        Body::from_points(
            2,
            &[
                Vector::new2(-1.0, -1.0),
                Vector::new2(1.0, -1.0),
                Vector::new2(1.0, 1.0),
                Vector::new2(-1.0, 1.0),
            ],
        )
        .unwrap()
    }

    fn diamond() -> Body {
        Body::from_points(
            2,
            &[
                Vector::new2(1.0, 0.0),
                Vector::new2(-1.0, 0.0),
                Vector::new2(0.0, 1.0),
                Vector::new2(0.0, -1.0),
            ],
        )
        .unwrap()
    }

    fn triangle_t() -> Body {
        Body::from_points(
            2,
            &[
                Vector::new2(-1.0, -1.0),
                Vector::new2(3.0, -1.0),
                Vector::new2(-1.0, 3.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn hull_drops_interior_point() {
        let hull = convex_hull(
            &[
                Vector::new2(0.0, 0.0),
                Vector::new2(1.0, 0.0),
                Vector::new2(0.0, 1.0),
                Vector::new2(0.2, 0.2),
            ],
            2,
        )
        .unwrap();
        assert_eq!(hull.vertices().len(), 3);
    }

    #[test]
    fn hull_cube_with_center() {
        let mut pts = Vec::new();
        for &x in &[0.0, 1.0] {
            for &y in &[0.0, 1.0] {
                for &z in &[0.0, 1.0] {
                    pts.push(Vector::new3(x, y, z));
                }
            }
        }
        pts.push(Vector::new3(0.5, 0.5, 0.5));
        let hull = convex_hull(&pts, 3).unwrap();
        assert_eq!(hull.vertices().len(), 8);
    }

    #[test]
    fn hull_extremeness_oracle_on_disk_points() {
        // No hull vertex may lie in the hull of the others: checked via
        // the pairwise halfplane test (some edge separates it).
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let pts: Vec<Vector> = (0..100)
            .map(|_| {
                let r = rng.gen_range(0.0f64..1.0).sqrt();
                let t = rng.gen_range(0.0..std::f64::consts::TAU);
                Vector::new2(r * t.cos(), r * t.sin())
            })
            .collect();
        let hull = convex_hull(&pts, 2).unwrap();
        let verts = hull.vertices();
        for i in 0..verts.len() {
            let others: Vec<Vector> = verts
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| *v)
                .collect();
            let inside_all = Body::from_points(2, &others)
                .map(|b| b.contains(&verts[i], -1e-12))
                .unwrap_or(false);
            assert!(!inside_all, "vertex {i} lies in hull of the others");
        }
    }

    #[test]
    fn hrep_of_unit_square() {
        let sq = unit_square();
        assert_eq!(sq.hrep().halfspaces().len(), 4);
        for h in sq.hrep().halfspaces() {
            assert_relative_eq!(h.offset(), 1.0, max_relative = 1e-12);
            let n = h.normal().as_slice();
            assert!((n[0].abs() - 1.0).abs() < 1e-12 || (n[1].abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn simplex_has_four_facets() {
        let s = Body::from_points(
            3,
            &[
                Vector::new3(0.0, 0.0, 0.0),
                Vector::new3(1.0, 0.0, 0.0),
                Vector::new3(0.0, 1.0, 0.0),
                Vector::new3(0.0, 0.0, 1.0),
            ],
        )
        .unwrap();
        assert_eq!(s.facets().len(), 4);
        assert_relative_eq!(s.volume(), 1.0 / 6.0, max_relative = 1e-12);
    }

    #[test]
    fn vrep_from_hrep_square_with_redundant() {
        let hs = vec![
            Halfspace::new(Vector::new2(1.0, 0.0), 1.0).unwrap(),
            Halfspace::new(Vector::new2(-1.0, 0.0), 1.0).unwrap(),
            Halfspace::new(Vector::new2(0.0, 1.0), 1.0).unwrap(),
            Halfspace::new(Vector::new2(0.0, -1.0), 1.0).unwrap(),
            Halfspace::new(Vector::new2(1.0, 0.0), 5.0).unwrap(), // redundant
        ];
        let h = HPolytope::new(2, hs).unwrap();
        let v = vrep_from_hrep(&h).unwrap();
        assert_eq!(v.vertices().len(), 4);
        for corner in v.vertices() {
            let s = corner.as_slice();
            assert!((s[0].abs() - 1.0).abs() < 1e-9 && (s[1].abs() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn round_trip_random_2d() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let pts: Vec<Vector> = (0..12)
                .map(|_| Vector::new2(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect();
            let Ok(v) = convex_hull(&pts, 2) else { continue };
            let h = hrep_from_vrep(&v).unwrap();
            let v2 = vrep_from_hrep(&h).unwrap();
            assert_eq!(v.vertices().len(), v2.vertices().len());
            for (a, b) in v.vertices().iter().zip(v2.vertices()) {
                assert!(a.dist(b) <= 1e-9, "round trip moved a vertex by {}", a.dist(b));
            }
        }
    }

    #[test]
    fn round_trip_random_3d() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let pts: Vec<Vector> = (0..12)
                .map(|_| {
                    Vector::new3(
                        rng.gen_range(-2.0..2.0),
                        rng.gen_range(-2.0..2.0),
                        rng.gen_range(-2.0..2.0),
                    )
                })
                .collect();
            let Ok(v) = convex_hull(&pts, 3) else { continue };
            let h = hrep_from_vrep(&v).unwrap();
            let v2 = vrep_from_hrep(&h).unwrap();
            assert_eq!(v.vertices().len(), v2.vertices().len());
            for (a, b) in v.vertices().iter().zip(v2.vertices()) {
                assert!(a.dist(b) <= 1e-8, "round trip moved a vertex by {}", a.dist(b));
            }
        }
    }

    #[test]
    fn interior_point_of_square_is_center() {
        let sq = unit_square();
        let ip = interior_point(sq.hrep()).unwrap();
        assert_relative_eq!(ip.slack, 1.0, max_relative = 1e-9);
        assert!(ip.point.norm() < 1e-9);
    }

    #[test]
    fn interior_point_empty_band() {
        let h = HPolytope::new(
            2,
            vec![
                Halfspace::new(Vector::new2(1.0, 0.0), 0.0).unwrap(),
                Halfspace::new(Vector::new2(-1.0, 0.0), 0.0).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(interior_point(&h), Err(Error::Empty)));
    }

    #[test]
    fn interior_point_rectangle_slack_matches_bisection_oracle() {
        // Oracle: bisect on s, testing feasibility of the shrunk system by
        // brute-force pairwise line intersections.
        let rect = Body::from_points(
            2,
            &[
                Vector::new2(-2.0, -1.0),
                Vector::new2(2.0, -1.0),
                Vector::new2(2.0, 1.0),
                Vector::new2(-2.0, 1.0),
            ],
        )
        .unwrap();
        let hs = rect.hrep().halfspaces();
        let feasible = |s: f64| -> bool {
            let m = hs.len();
            for i in 0..m {
                for j in (i + 1)..m {
                    let ni = hs[i].normal().as_slice();
                    let nj = hs[j].normal().as_slice();
                    let det = ni[0] * nj[1] - ni[1] * nj[0];
                    if det.abs() < 1e-12 {
                        continue;
                    }
                    let bi = hs[i].offset() - s;
                    let bj = hs[j].offset() - s;
                    let x = (bi * nj[1] - bj * ni[1]) / det;
                    let y = (bj * ni[0] - bi * nj[0]) / det;
                    let p = Vector::new2(x, y);
                    if hs.iter().all(|h| h.normal().dot(&p) <= h.offset() - s + 1e-12) {
                        return true;
                    }
                }
            }
            false
        };
        let (mut lo, mut hi) = (0.0, 4.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if feasible(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let ip = interior_point(rect.hrep()).unwrap();
        assert!((ip.slack - lo).abs() < 1e-9);
        let p = ip.point.as_slice();
        assert!(p[1].abs() < 1e-9 && p[0].abs() <= 1.0 + 1e-9);
    }

    #[test]
    fn volume_examples() {
        assert_relative_eq!(unit_square().volume(), 4.0, max_relative = 1e-12);
        assert_relative_eq!(triangle_t().volume(), 8.0, max_relative = 1e-12);
    }

    #[test]
    fn support_examples() {
        let sq = unit_square();
        assert_relative_eq!(sq.support(&Vector::new2(1.0, 1.0)).unwrap(), 2.0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_relative_eq!(
            sq.support(&Vector::new2(s, s)).unwrap(),
            std::f64::consts::SQRT_2,
            max_relative = 1e-12
        );
        assert_relative_eq!(diamond().support(&Vector::new2(1.0, 0.0)).unwrap(), 1.0);
        assert!(matches!(
            sq.support(&Vector::new2(0.0, 0.0)),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn gauge_examples() {
        let sq = unit_square();
        assert_relative_eq!(sq.gauge(&Vector::new2(2.0, 0.0)).unwrap(), 2.0);
        assert_relative_eq!(sq.gauge(&Vector::new2(0.0, 0.0)).unwrap(), 0.0);
        assert_relative_eq!(
            diamond().gauge(&Vector::new2(0.5, 0.5)).unwrap(),
            1.0,
            max_relative = 1e-12
        );
        // A body away from the origin rejects gauge evaluation.
        let shifted = sq.translate(&Vector::new2(10.0, 0.0)).unwrap();
        assert!(matches!(
            shifted.gauge(&Vector::new2(1.0, 0.0)),
            Err(Error::OriginNotInterior)
        ));
    }

    #[test]
    fn gauge_membership_duality() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let d = diamond();
        for _ in 0..200 {
            let x = Vector::new2(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            let rho = d.gauge(&x).unwrap();
            if (rho - 1.0).abs() < 1e-9 {
                continue; // boundary band
            }
            assert_eq!(rho <= 1.0, d.contains(&x, 1e-9));
        }
    }

    #[test]
    fn minkowski_square_plus_square() {
        let unit = Body::from_points(
            2,
            &[
                Vector::new2(0.0, 0.0),
                Vector::new2(1.0, 0.0),
                Vector::new2(1.0, 1.0),
                Vector::new2(0.0, 1.0),
            ],
        )
        .unwrap();
        let s = unit.minkowski_sum(&unit).unwrap();
        assert_relative_eq!(s.volume(), 4.0, max_relative = 1e-12);
        assert_relative_eq!(s.support(&Vector::new2(1.0, 0.0)).unwrap(), 2.0);
    }

    #[test]
    fn minkowski_triangle_plus_square_volume() {
        // V(T + tK) = 8 + 16 t + 4 t^2 at t = 1.
        let t = triangle_t();
        let sum = t.minkowski_sum(&unit_square()).unwrap();
        assert_relative_eq!(sum.volume(), 28.0, max_relative = 1e-10);
    }

    #[test]
    fn minkowski_with_point_translates() {
        let t = triangle_t();
        let p = Vector::new2(0.3, -0.7);
        let sums = minkowski_sum_points(t.vertices(), &[p]);
        let moved = Body::from_points(2, &sums).unwrap();
        let expect = t.translate(&p).unwrap();
        for (a, b) in moved.vertices().iter().zip(expect.vertices()) {
            assert!(a.dist(b) < 1e-12);
        }
    }

    #[test]
    fn support_additivity_on_random_directions() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
        let a = triangle_t();
        let b = unit_square();
        let sum = a.minkowski_sum(&b).unwrap();
        for _ in 0..100 {
            let t = rng.gen_range(0.0..std::f64::consts::TAU);
            let xi = Vector::new2(t.cos(), t.sin());
            let lhs = sum.support(&xi).unwrap();
            let rhs = a.support(&xi).unwrap() + b.support(&xi).unwrap();
            assert!((lhs - rhs).abs() <= 1e-9);
        }
    }

    #[test]
    fn scale_translate_volume_and_composition() {
        let sq = unit_square();
        let doubled = sq.scale_translate(2.0, &Vector::zero(2)).unwrap();
        assert_relative_eq!(doubled.volume(), 16.0, max_relative = 1e-12);

        let shift = Vector::new2(1.0, 0.0);
        let once = sq.scale_translate(0.5, &shift).unwrap();
        let twice = once.scale_translate(0.5, &shift).unwrap();
        let composed = sq
            .scale_translate(0.25, &(shift * 0.5 + shift))
            .unwrap();
        for (a, b) in twice.vertices().iter().zip(composed.vertices()) {
            assert!(a.dist(b) < 1e-12);
        }
        assert!(matches!(
            sq.scale_translate(0.0, &Vector::zero(2)),
            Err(Error::NonpositiveRatio(_))
        ));
    }

    #[test]
    fn brunn_minkowski_sanity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for dim in [2usize, 3] {
            for _ in 0..20 {
                let sample = |rng: &mut rand_chacha::ChaCha8Rng| -> Body {
                    loop {
                        let pts: Vec<Vector> = (0..10)
                            .map(|_| {
                                let coords: Vec<f64> =
                                    (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
                                Vector::from_slice(&coords).unwrap()
                            })
                            .collect();
                        if let Ok(b) = Body::from_points(dim, &pts) {
                            return b;
                        }
                    }
                };
                let a = sample(&mut rng);
                let b = sample(&mut rng);
                let s = a.minkowski_sum(&b).unwrap();
                let d = dim as f64;
                let lhs = s.volume().powf(1.0 / d);
                let rhs = a.volume().powf(1.0 / d) + b.volume().powf(1.0 / d);
                assert!(lhs >= rhs - 1e-7, "BM violated: {lhs} < {rhs}");
            }
        }
    }

    #[test]
    fn canonicalized_removes_redundant() {
        let hs = vec![
            Halfspace::new(Vector::new2(1.0, 0.0), 1.0).unwrap(),
            Halfspace::new(Vector::new2(-1.0, 0.0), 1.0).unwrap(),
            Halfspace::new(Vector::new2(0.0, 1.0), 1.0).unwrap(),
            Halfspace::new(Vector::new2(0.0, -1.0), 1.0).unwrap(),
            Halfspace::new(Vector::new2(2.0, 0.0), 10.0).unwrap(), // dup normal, larger offset
            Halfspace::new(Vector::new2(1.0, 1.0), 5.0).unwrap(),  // redundant
        ];
        let h = HPolytope::new(2, hs).unwrap();
        let canon = h.canonicalized().unwrap();
        assert_eq!(canon.halfspaces().len(), 4);
    }

    #[test]
    fn body_validates() {
        unit_square().validate().unwrap();
        triangle_t().validate().unwrap();
        let cube = Body::from_points(
            3,
            &{
                let mut v = Vec::new();
                for &x in &[-1.0, 1.0] {
                    for &y in &[-1.0, 1.0] {
                        for &z in &[-1.0, 1.0] {
                            v.push(Vector::new3(x, y, z));
                        }
                    }
                }
                v
            },
        )
        .unwrap();
        cube.validate().unwrap();
        assert_relative_eq!(cube.volume(), 8.0, max_relative = 1e-12);
        assert_relative_eq!(cube.centroid().norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn triangle_area_half_base_height() {
        // (-1,-1),(3,-1),(-1,3): base 4, height 4.
        assert_relative_eq!(triangle_t().volume(), 8.0, max_relative = 1e-12);
    }
}
