//! Inner parallel bodies, relative inradius, and the anisotropic
//! distance function.
//!
//! For polytopal `Ω` the erosion `Ω ∼ λK = {x : x + λK ⊆ Ω}` keeps Ω's
//! facet normals and pulls each offset in by `λ·h_K(a_i)`, which is exact
//! for any convex `K`. The relative inradius is the largest `λ` with a
//! nonempty erosion, obtained from one LP over `(x, λ)`.

use crate::polytope::{interior_point, Body, HPolytope, Halfspace, Vector, GEOM_TOL};
use crate::{Error, Result};

/// Relative inradius and a point realizing it.
#[derive(Clone, Debug)]
pub struct Inradius {
    pub r: f64,
    pub incenter: Vector,
}

fn check_pair(omega: &Body, k: &Body) -> Result<()> {
    if omega.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: omega.dim(),
            got: k.dim(),
        });
    }
    Ok(())
}

/// Reduced-offset halfspaces of `Ω ∼ λK`.
fn eroded_halfspaces(omega: &Body, k: &Body, lambda: f64) -> Vec<Halfspace> {
    omega
        .facets()
        .iter()
        .map(|f| {
            let shrink = lambda
                * k.vertices()
                    .iter()
                    .map(|v| v.dot(&f.normal))
                    .fold(f64::NEG_INFINITY, f64::max);
            Halfspace::from_unit(f.normal, f.offset - shrink)
        })
        .collect()
}

/// Inner parallel body `Ω ∼ λK`, or `None` when the erosion is empty.
///
/// `λ = 0` returns `Ω` itself. Redundant constraints of the eroded body
/// are pruned when the vertex representation is rebuilt.
pub fn inner_parallel(omega: &Body, k: &Body, lambda: f64) -> Result<Option<Body>> {
    check_pair(omega, k)?;
    if lambda < 0.0 {
        return Err(Error::NegativeLambda(lambda));
    }
    if lambda == 0.0 {
        return Ok(Some(omega.clone()));
    }
    let hs = eroded_halfspaces(omega, k, lambda);
    let hp = HPolytope::new(omega.dim(), hs)?;
    match interior_point(&hp) {
        Err(Error::Empty) => return Ok(None),
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    match Body::from_hpolytope(&hp) {
        Ok(b) => Ok(Some(b)),
        Err(Error::EmptyOrUnbounded) | Err(Error::DegenerateInput(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Relative inradius: maximize `λ` over `(x, λ)` subject to
/// `a_i·x + λ h_K(a_i) <= b_i`.
pub fn inradius(omega: &Body, k: &Body) -> Result<Inradius> {
    check_pair(omega, k)?;
    let dim = omega.dim();
    let mut objective = vec![0.0; dim + 1];
    objective[dim] = 1.0;
    let mut rows = Vec::with_capacity(omega.facets().len());
    let mut rhs = Vec::with_capacity(omega.facets().len());
    for f in omega.facets() {
        let mut row = f.normal.to_vec();
        row.push(k.support(&f.normal)?);
        rows.push(row);
        rhs.push(f.offset);
    }
    let lp = crate::linprog::LinearProgram {
        objective,
        constraint_rows: rows,
        rhs,
    };
    let res = crate::linprog::solve(&lp)?;
    if res.status != crate::linprog::LPStatus::Optimal {
        return Err(Error::NumericalFailure(format!(
            "inradius LP ended with status {:?}",
            res.status
        )));
    }
    let p = res.point.unwrap();
    Ok(Inradius {
        r: res.value.unwrap(),
        incenter: Vector::from_slice(&p[..dim])?,
    })
}

/// Anisotropic distance from `x` to the boundary of `Ω`, measured by the
/// gauge of `K`: `min_i (b_i - a_i·x) / h_K(a_i)`.
///
/// Requires the origin interior to `K` (pre-translate `K` if necessary)
/// and `x ∈ Ω`.
pub fn distance(omega: &Body, k: &Body, x: &Vector) -> Result<f64> {
    check_pair(omega, k)?;
    if x.dim() != omega.dim() {
        return Err(Error::DimensionMismatch {
            expected: omega.dim(),
            got: x.dim(),
        });
    }
    if k.hrep().halfspaces().iter().any(|h| h.offset() <= 1e-12) {
        return Err(Error::OriginNotInterior);
    }
    if !omega.contains(x, GEOM_TOL) {
        return Err(Error::PointOutside);
    }
    let mut d = f64::INFINITY;
    for f in omega.facets() {
        let h = k.support(&f.normal)?;
        debug_assert!(h > 0.0);
        d = d.min((f.offset - f.normal.dot(x)) / h);
    }
    Ok(d.max(0.0))
}

/// An erosion family `λ ↦ Ω ∼ λK` with its inradius precomputed.
#[derive(Clone, Debug)]
pub struct ErosionFamily {
    pub omega: Body,
    pub gauge_body: Body,
    pub inradius: f64,
    pub incenter: Vector,
}

impl ErosionFamily {
    /// Requires the origin interior to the gauge body.
    pub fn new(omega: Body, gauge_body: Body) -> Result<Self> {
        check_pair(&omega, &gauge_body)?;
        if gauge_body
            .hrep()
            .halfspaces()
            .iter()
            .any(|h| h.offset() <= 1e-12)
        {
            return Err(Error::OriginNotInterior);
        }
        let inr = inradius(&omega, &gauge_body)?;
        if !(inr.r > 0.0) {
            return Err(Error::DegenerateInput("nonpositive inradius".into()));
        }
        Ok(ErosionFamily {
            omega,
            gauge_body,
            inradius: inr.r,
            incenter: inr.incenter,
        })
    }

    pub fn eroded(&self, lambda: f64) -> Result<Option<Body>> {
        inner_parallel(&self.omega, &self.gauge_body, lambda)
    }
}
