//! Equality-case machinery: homothety detection, form bodies, and
//! tangential-body certificates.
//!
//! A polytope `Ω` is a tangential body of `K` when every facet plane of
//! `Ω` supports `K`. Tangentiality is homothety-invariant, so "homothetic
//! to a tangential body of `K`" reduces to the solvability of the linear
//! facet system `ν_i·x + ρ·h_K(ν_i) = b_i` over all facets `i` — solved
//! here in the least-squares sense with a residual certificate.

use serde::Serialize;

use crate::dense::least_squares;
use crate::erosion::{inner_parallel, inradius};
use crate::functionals::CurveFamily;
use crate::polytope::{Body, Halfspace, Vector};
use crate::{Error, Result};

/// A map `x ↦ ratio·x + shift` carrying one body onto another.
#[derive(Clone, Debug)]
pub struct Homothety {
    pub ratio: f64,
    pub shift: Vector,
}

/// Witness that every facet plane of `Ω` supports `ratio·K + center`.
#[derive(Clone, Debug, Serialize)]
pub struct TangentialCertificate {
    #[serde(serialize_with = "serialize_vector")]
    pub center: Vector,
    pub ratio: f64,
    pub residual: f64,
}

fn serialize_vector<S: serde::Serializer>(v: &Vector, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.to_vec().serialize(s)
}

/// Equality-case report for a pair `(Ω, K)` and its computed curve.
#[derive(Clone, Debug, Serialize)]
pub struct EqualityReport {
    /// Does the perimeter lower bound hold with equality at the grid
    /// midpoint (relative tolerance 1e-7)?
    pub equality_mid: bool,
    /// Earliest grid λ after which ψ is constant within 1e-9, if any.
    pub psi_constant_from: Option<f64>,
    pub tangential: Option<TangentialCertificate>,
    /// Are the tail erosions homothetic to `Ω ∼ λ*K`?
    pub tail_homothetic: bool,
}

/// Detect a homothety mapping `B` onto `A` by matching canonically
/// ordered vertex sets at absolute tolerance `tol`.
pub fn detect_homothety_with_tolerance(a: &Body, b: &Body, tol: f64) -> Option<Homothety> {
    if a.dim() != b.dim() || a.vertices().len() != b.vertices().len() {
        return None;
    }
    let ratio = (a.volume() / b.volume()).powf(1.0 / a.dim() as f64);
    let shift = a.centroid() - b.centroid() * ratio;
    // Homotheties preserve both canonical orders (lexicographic, and
    // counterclockwise-from-lex-min), so matching is pointwise.
    for (va, vb) in a.vertices().iter().zip(b.vertices()) {
        let mapped = *vb * ratio + shift;
        if va.dist(&mapped) > tol {
            return None;
        }
    }
    Some(Homothety { ratio, shift })
}

/// Homothety detection at the standard tolerance `1e-8·diameter(A)`.
pub fn detect_homothety(a: &Body, b: &Body) -> Option<Homothety> {
    detect_homothety_with_tolerance(a, b, 1e-8 * a.diameter())
}

/// Form body: intersection of the unit-offset halfspaces along `C`'s
/// facet normals.
pub fn form_body(c: &Body) -> Result<Body> {
    let hs: Vec<Halfspace> = c
        .facets()
        .iter()
        .map(|f| Halfspace::from_unit(f.normal, 1.0))
        .collect();
    match Body::from_halfspaces(c.dim(), hs) {
        Ok(b) => Ok(b),
        Err(Error::EmptyOrUnbounded) => Err(Error::Unbounded),
        Err(e) => Err(e),
    }
}

/// Solve the facet system `ν_i·x + ρ·h_K(ν_i) = b_i` by least squares; a
/// certificate is returned when the residual stays below
/// `1e-8·max|b_i|` and the ratio is positive.
pub fn tangential_feasibility(omega: &Body, k: &Body) -> Option<TangentialCertificate> {
    if omega.dim() != k.dim() {
        return None;
    }
    let dim = omega.dim();
    let mut rows = Vec::with_capacity(omega.facets().len());
    let mut rhs = Vec::with_capacity(omega.facets().len());
    for f in omega.facets() {
        let mut row = f.normal.to_vec();
        row.push(k.support(&f.normal).ok()?);
        rows.push(row);
        rhs.push(f.offset);
    }
    let sol = least_squares(&rows, &rhs)?;
    let center = Vector::from_slice(&sol[..dim]).ok()?;
    let ratio = sol[dim];
    let residual = rows
        .iter()
        .zip(&rhs)
        .map(|(row, &b)| {
            let lhs: f64 = row.iter().zip(sol.iter()).map(|(a, x)| a * x).sum();
            (lhs - b).abs()
        })
        .fold(0.0f64, f64::max);
    let scale = rhs.iter().fold(0.0f64, |m, b| m.max(b.abs()));
    if residual <= 1e-8 * scale.max(1e-12) && ratio > 1e-9 {
        Some(TangentialCertificate {
            center,
            ratio,
            residual,
        })
    } else {
        None
    }
}

/// Classify the equality structure of a pair against its computed curve:
/// perimeter-bound equality at the grid midpoint, the onset of a constant
/// quotient, the tangential certificate, and homothety of the tail
/// erosions.
pub fn classify_equality(omega: &Body, k: &Body, family: &CurveFamily) -> Result<EqualityReport> {
    let inr = inradius(omega, k)?;
    let n = omega.dim() as f64;
    let s = &family.samples;
    let mid = &s[s.len() / 2];
    let p0 = s[0].p;
    let bound = (1.0 - mid.lambda / inr.r).max(0.0).powf(n - 1.0) * p0;
    let equality_mid = (mid.p - bound).abs() <= 1e-7 * bound.abs().max(1e-12 * p0);

    let psi_constant_from = family.psi_constant_from(1e-9);

    let tangential = tangential_feasibility(omega, k);

    let tail_homothetic = match psi_constant_from {
        None => false,
        Some(lstar) => {
            let base = inner_parallel(omega, k, lstar)?
                .ok_or_else(|| Error::NumericalFailure("empty erosion at λ*".into()))?;
            let tail: Vec<f64> = s
                .iter()
                .map(|cs| cs.lambda)
                .filter(|&l| l > lstar + 0.5 * family.grid_step)
                .collect();
            let step = (tail.len() / 8).max(1);
            tail.iter()
                .step_by(step)
                .all(|&l| match inner_parallel(omega, k, l) {
                    Ok(Some(b)) => detect_homothety(&base, &b).is_some(),
                    _ => false,
                })
        }
    };

    Ok(EqualityReport {
        equality_mid,
        psi_constant_from,
        tangential,
        tail_homothetic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::curve_family;
    use approx::assert_relative_eq;

    fn square() -> Body {
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

    fn rect() -> Body {
        Body::from_points(
            2,
            &[
                Vector::new2(-2.0, -1.0),
                Vector::new2(2.0, -1.0),
                Vector::new2(2.0, 1.0),
                Vector::new2(-2.0, 1.0),
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

    #[test]
    fn homothety_constructed() {
        let t = triangle_t();
        let a = t.scale_translate(2.0, &Vector::new2(1.0, 1.0)).unwrap();
        let h = detect_homothety(&a, &t).unwrap();
        assert_relative_eq!(h.ratio, 2.0, max_relative = 1e-10);
        assert!(h.shift.dist(&Vector::new2(1.0, 1.0)) < 1e-9);
    }

    #[test]
    fn homothety_rejects_different_aspect() {
        assert!(detect_homothety(&square(), &rect()).is_none());
    }

    #[test]
    fn homothety_of_eroded_triangle() {
        let t = triangle_t();
        let e = inner_parallel(&t, &square(), 0.5).unwrap().unwrap();
        let h = detect_homothety(&e, &t).unwrap();
        assert_relative_eq!(h.ratio, 0.5, max_relative = 1e-9);
    }

    #[test]
    fn homothety_reflexive_and_inverse() {
        let t = triangle_t();
        let h = detect_homothety(&t, &t).unwrap();
        assert_relative_eq!(h.ratio, 1.0, max_relative = 1e-12);
        assert!(h.shift.norm() < 1e-10);

        let a = t.scale_translate(1.7, &Vector::new2(-0.3, 0.4)).unwrap();
        let fwd = detect_homothety(&a, &t).unwrap();
        let bwd = detect_homothety(&t, &a).unwrap();
        assert_relative_eq!(fwd.ratio * bwd.ratio, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn form_body_of_square_is_square() {
        let f = form_body(&square()).unwrap();
        assert_eq!(f.vertices().len(), 4);
        for v in f.vertices() {
            let s = v.as_slice();
            assert!((s[0].abs() - 1.0).abs() < 1e-9 && (s[1].abs() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn form_body_of_rect_is_square() {
        // Same normal set as the square.
        let f = form_body(&rect()).unwrap();
        assert_eq!(f.vertices().len(), 4);
        assert_relative_eq!(f.volume(), 4.0, max_relative = 1e-9);
    }

    #[test]
    fn form_body_of_triangle() {
        // Lines -x = 1, -y = 1, (x+y)/√2 = 1.
        let f = form_body(&triangle_t()).unwrap();
        assert_eq!(f.vertices().len(), 3);
        let s2 = std::f64::consts::SQRT_2;
        let expect = [
            Vector::new2(-1.0, -1.0),
            Vector::new2(-1.0, s2 + 1.0),
            Vector::new2(s2 + 1.0, -1.0),
        ];
        for e in &expect {
            assert!(
                f.vertices().iter().any(|v| v.dist(e) < 1e-8),
                "missing vertex {e:?}"
            );
        }
    }

    #[test]
    fn certificate_triangle_square() {
        let c = tangential_feasibility(&triangle_t(), &square()).unwrap();
        assert!(c.center.norm() < 1e-9);
        assert_relative_eq!(c.ratio, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn certificate_rect_square_none() {
        // Hand elimination forces ρ = 2 and ρ = 1 simultaneously.
        assert!(tangential_feasibility(&rect(), &square()).is_none());
    }

    #[test]
    fn certificate_self() {
        let sq = square();
        let c = tangential_feasibility(&sq, &sq).unwrap();
        assert!(c.center.norm() < 1e-9);
        assert_relative_eq!(c.ratio, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn certificate_square_diamond() {
        let c = tangential_feasibility(&square(), &diamond()).unwrap();
        assert!(c.center.norm() < 1e-9);
        assert_relative_eq!(c.ratio, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn classify_triangle_square() {
        let t = triangle_t();
        let sq = square();
        let fam = curve_family(&t, &sq, 33).unwrap();
        let rep = classify_equality(&t, &sq, &fam).unwrap();
        assert!(rep.equality_mid);
        assert_eq!(rep.psi_constant_from, Some(0.0));
        assert!(rep.tangential.is_some());
        assert!(rep.tail_homothetic);
    }

    #[test]
    fn classify_rect_square() {
        let r = rect();
        let sq = square();
        let fam = curve_family(&r, &sq, 33).unwrap();
        let rep = classify_equality(&r, &sq, &fam).unwrap();
        assert!(!rep.equality_mid);
        assert_eq!(rep.psi_constant_from, None);
        assert!(rep.tangential.is_none());
        assert!(!rep.tail_homothetic);
    }

    #[test]
    fn report_serializes_with_expected_keys() {
        let t = triangle_t();
        let sq = square();
        let fam = curve_family(&t, &sq, 33).unwrap();
        let rep = classify_equality(&t, &sq, &fam).unwrap();
        let json = serde_json::to_value(&rep).unwrap();
        for key in ["equality_mid", "psi_constant_from", "tangential", "tail_homothetic"] {
            assert!(json.get(key).is_some(), "missing key {key}");
        }
    }
}
