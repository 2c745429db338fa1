//! Anisotropic perimeter, Steiner coefficients, mixed-volume curves, and
//! the isoperimetric quotient.
//!
//! Two independent routes to the perimeter are kept side by side: the
//! boundary integral `Σ h_K(ν_i)·measure_i` over facets, and `n·w₁` from
//! the Steiner polynomial of `t ↦ V(C + tK)` interpolated at the integer
//! nodes `t = 0..n`. Their agreement is one of the standing consistency
//! checks.

use crate::dense::{binomial, solve_full_pivot};
use crate::erosion::{inner_parallel, inradius};
use crate::polytope::Body;
use crate::{Error, Result};

/// Coefficients `w` with `V(C + tK) = Σ_i binom(n,i)·w[i]·t^i`.
#[derive(Clone, Debug)]
pub struct SteinerCoefficients {
    pub dim: usize,
    pub w: Vec<f64>,
}

/// One λ-row of the curve family.
#[derive(Clone, Copy, Debug)]
pub struct CurveSample {
    pub lambda: f64,
    /// Volume of the eroded body.
    pub v: f64,
    /// Anisotropic perimeter (facet sum).
    pub p: f64,
    /// First mixed volume of the eroded body against `K`.
    pub v1: f64,
    /// `v^(1/n)`.
    pub f0: f64,
    /// `v1^(1/(n-1))`.
    pub f1: f64,
    /// Isoperimetric quotient `v / p^(n/(n-1))`.
    pub psi: f64,
    /// `p² + n/(n-1)·v·p'₊`, with `p'₊` the grid forward difference
    /// (backward at the last grid point).
    pub xi: f64,
}

/// Samples over a uniform λ grid on `[0, (1 - 1e-3)·r]`.
#[derive(Clone, Debug)]
pub struct CurveFamily {
    pub samples: Vec<CurveSample>,
    pub grid_step: f64,
    pub dim: usize,
}

/// Boundary integral `Σ_facets h_K(ν)·measure`.
pub fn aniso_perimeter(c: &Body, k: &Body) -> Result<f64> {
    if c.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.dim(),
            got: k.dim(),
        });
    }
    let mut per = 0.0;
    for f in c.facets() {
        per += k.support(&f.normal)? * f.measure;
    }
    Ok(per)
}

/// Volumes of `C + tK` at `t = 0..n`, solved for binomial-weighted
/// Steiner coefficients.
pub fn steiner_coefficients(c: &Body, k: &Body) -> Result<SteinerCoefficients> {
    if c.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.dim(),
            got: k.dim(),
        });
    }
    let n = c.dim();
    let mut vols = Vec::with_capacity(n + 1);
    vols.push(c.volume());
    for t in 1..=n {
        let scaled = k.scale_translate(t as f64, &crate::polytope::Vector::zero(n))?;
        vols.push(c.minkowski_sum(&scaled)?.volume());
    }
    // Vandermonde system for the monomial coefficients of the volume
    // polynomial; perfectly conditioned at this size.
    let a: Vec<Vec<f64>> = (0..=n)
        .map(|t| (0..=n).map(|j| (t as f64).powi(j as i32)).collect())
        .collect();
    let coeffs = solve_full_pivot(&a, &vols, 1e-12)
        .ok_or_else(|| Error::NumericalFailure("Steiner interpolation failed".into()))?;
    let w = (0..=n).map(|i| coeffs[i] / binomial(n, i)).collect();
    Ok(SteinerCoefficients { dim: n, w })
}

/// `n·w₁`; must agree with [`aniso_perimeter`] on valid bodies.
pub fn perimeter_via_mixed(c: &Body, k: &Body) -> Result<f64> {
    let s = steiner_coefficients(c, k)?;
    Ok(s.dim as f64 * s.w[1])
}

/// Evaluate `v`, `p`, `v1` and derived quantities on a uniform λ grid.
///
/// The grid stops at `(1 - 1e-3)·r` to keep the eroded bodies
/// full-dimensional; `p'₊` is a forward difference on the grid (backward
/// at the last point). Near facet-extinction values of λ the grid-step
/// difference averages across the slope jump; callers that need the
/// pointwise right derivative should difference with a much smaller step
/// (the verification suites do).
pub fn curve_family(omega: &Body, k: &Body, grid_points: usize) -> Result<CurveFamily> {
    if grid_points < 8 {
        return Err(Error::InvalidInput(format!(
            "grid needs at least 8 points, got {grid_points}"
        )));
    }
    let inr = inradius(omega, k)?;
    if !(inr.r > 0.0) {
        return Err(Error::DegenerateInput("nonpositive inradius".into()));
    }
    let lambda_max = (1.0 - 1e-3) * inr.r;
    let h = lambda_max / (grid_points - 1) as f64;

    let mut rows: Vec<(f64, f64, f64, f64)> = Vec::with_capacity(grid_points);
    for j in 0..grid_points {
        let lambda = h * j as f64;
        let body = inner_parallel(omega, k, lambda)?.ok_or_else(|| {
            Error::NumericalFailure(format!("erosion unexpectedly empty at λ={lambda}"))
        })?;
        let v = body.volume();
        let p = aniso_perimeter(&body, k)?;
        let v1 = steiner_coefficients(&body, k)?.w[1];
        rows.push((lambda, v, p, v1));
    }
    Ok(assemble_family(&rows, h, omega.dim()))
}

/// Derive `f0`, `f1`, `psi`, `xi` from raw `(λ, v, p, v1)` rows.
pub(crate) fn assemble_family(rows: &[(f64, f64, f64, f64)], h: f64, dim: usize) -> CurveFamily {
    let g = rows.len();
    let n = dim as f64;
    let c = n / (n - 1.0);
    let samples = rows
        .iter()
        .enumerate()
        .map(|(j, &(lambda, v, p, v1))| {
            let dp = if j + 1 < g {
                (rows[j + 1].2 - p) / h
            } else {
                (p - rows[j - 1].2) / h
            };
            CurveSample {
                lambda,
                v,
                p,
                v1,
                f0: v.powf(1.0 / n),
                f1: v1.powf(1.0 / (n - 1.0)),
                psi: v / p.powf(c),
                xi: p * p + c * v * dp,
            }
        })
        .collect();
    CurveFamily {
        samples,
        grid_step: h,
        dim,
    }
}

/// Max relative residual of the grid central-difference volume
/// derivative against `-n·v1` over interior grid points. Exact up to
/// rounding when the volume curve is a single polynomial; at
/// facet-extinction kinks the grid-step truncation dominates the
/// residual.
pub fn check_derivative_identity(family: &CurveFamily) -> f64 {
    let s = &family.samples;
    if s.is_empty() {
        return 0.0;
    }
    let n = family.dim as f64;
    let h = family.grid_step;
    let mut worst: f64 = 0.0;
    for j in 1..s.len().saturating_sub(1) {
        let dv = (s[j + 1].v - s[j - 1].v) / (2.0 * h);
        let target = -n * s[j].v1;
        let denom = target.abs().max(1e-12 * s[0].p.abs());
        worst = worst.max((dv - target).abs() / denom);
    }
    worst
}

impl CurveFamily {
    /// CSV with 15 significant digits per field.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,v,p,v1,f0,f1,psi,xi\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                sig15(s.lambda),
                sig15(s.v),
                sig15(s.p),
                sig15(s.v1),
                sig15(s.f0),
                sig15(s.f1),
                sig15(s.psi),
                sig15(s.xi)
            ));
        }
        out
    }

    /// Earliest grid λ after which consecutive ψ values stay within
    /// `tol`, or `None` when the last step still moves.
    pub fn psi_constant_from(&self, tol: f64) -> Option<f64> {
        let s = &self.samples;
        if s.len() < 2 {
            return None;
        }
        let mut start = s.len() - 1;
        for j in (0..s.len() - 1).rev() {
            if (s[j + 1].psi - s[j].psi).abs() <= tol {
                start = j;
            } else {
                break;
            }
        }
        if start == s.len() - 1 {
            None
        } else {
            Some(s[start].lambda)
        }
    }
}

/// 15 significant digits.
pub(crate) fn sig15(x: f64) -> String {
    format!("{:.14e}", x)
}
