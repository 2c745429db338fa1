//! Command frontend: body generation, curve CSV output, distance tables,
//! and the theorem-verification suites. The `innerbody` binary is a thin
//! argument parser over these functions.

pub mod verify;

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bodies;
use crate::bodyfile;
use crate::erosion::{distance, inner_parallel, inradius};
use crate::functionals::{curve_family, sig15};
use crate::polytope::{Body, Vector};
use crate::{Error, Result};

pub use verify::{Suite, SuiteReport};

/// Run configuration shared by the commands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub grid_points: usize,
    /// Geometric tolerance (absolute, unit-scale data).
    pub tol_geom: f64,
    /// Tolerance for the main verification checks.
    pub tol_check: f64,
    pub dim: usize,
    /// Test hook: multiply computed perimeters by this factor inside the
    /// verification corpus to prove the suites catch a corrupted value.
    pub perimeter_fault: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            grid_points: 65,
            tol_geom: 1e-9,
            tol_check: 1e-7,
            dim: 2,
            perimeter_fault: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 8 {
            return Err(Error::InvalidInput(format!(
                "grid must have at least 8 points, got {}",
                self.grid_points
            )));
        }
        if !(self.tol_geom > 0.0) || !(self.tol_check > 0.0) {
            return Err(Error::InvalidInput("tolerances must be positive".into()));
        }
        if self.dim != 2 && self.dim != 3 {
            return Err(Error::InvalidInput(format!(
                "dim must be 2 or 3, got {}",
                self.dim
            )));
        }
        Ok(())
    }
}

/// Body kinds the `gen` command can produce.
#[derive(Clone, Debug)]
pub enum GenKind {
    /// Axis-aligned box with the given full side lengths.
    Box(Vec<f64>),
    /// Standard simplex in `config.dim`.
    Simplex,
    /// Regular m-gon inscribed in the unit circle (2D).
    RegularPolygon(usize),
    /// Seeded hull of m uniform points in `config.dim`.
    RandomHull(usize),
    /// Tangential body of the body in the file, circumscribed along the
    /// given outward normals.
    Circumscribed {
        k: Body,
        normals: Vec<Vector>,
    },
}

/// Generate a body and return its JSON file content.
pub fn cmd_gen(kind: &GenKind, config: &RunConfig) -> Result<String> {
    config.validate()?;
    let body = match kind {
        GenKind::Box(sides) => bodies::box_centered(sides)?,
        GenKind::Simplex => bodies::simplex(config.dim)?,
        GenKind::RegularPolygon(m) => bodies::regular_polygon(*m)?,
        GenKind::RandomHull(m) => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            bodies::random_hull(config.dim, *m, &mut rng)?
        }
        GenKind::Circumscribed { k, normals } => bodies::circumscribed(k, normals)?,
    };
    Ok(bodyfile::body_to_json(&body))
}

/// Load a pair of body files; the gauge body is recentered so the origin
/// is interior.
pub fn load_pair(omega_path: &Path, k_path: &Path) -> Result<(Body, Body)> {
    let omega = bodyfile::load_body(omega_path)?;
    let k_raw = bodyfile::load_body(k_path)?;
    if omega.dim() != k_raw.dim() {
        return Err(Error::DimensionMismatch {
            expected: omega.dim(),
            got: k_raw.dim(),
        });
    }
    let k = bodies::centered_at_centroid(&k_raw)?;
    Ok((omega, k))
}

/// Curve CSV with a trailing comment carrying inradius and incenter.
pub fn cmd_curve(omega_path: &Path, k_path: &Path, config: &RunConfig) -> Result<String> {
    config.validate()?;
    let (omega, k) = load_pair(omega_path, k_path)?;
    let family = curve_family(&omega, &k, config.grid_points)?;
    let inr = inradius(&omega, &k)?;
    let mut out = family.to_csv();
    let coords: Vec<String> = inr.incenter.as_slice().iter().map(|c| sig15(*c)).collect();
    out.push_str(&format!(
        "# inradius={} incenter=({})\n",
        sig15(inr.r),
        coords.join(",")
    ));
    Ok(out)
}

/// Distance table: one CSV row per input point with the anisotropic
/// distance and a flag cross-checking the erosion-membership identity.
pub fn cmd_dist(omega_path: &Path, k_path: &Path, points_path: &Path) -> Result<String> {
    let (omega, k) = load_pair(omega_path, k_path)?;
    let text = std::fs::read_to_string(points_path)?;
    let points = bodyfile::points_from_json(&text)?;
    let dim = omega.dim();
    let mut out = String::new();
    let coord_names: Vec<String> = (0..dim).map(|i| format!("x{i}")).collect();
    out.push_str(&coord_names.join(","));
    out.push_str(",distance,levelset\n");
    for p in &points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
        let d = distance(&omega, &k, p)?;
        let eps = 1e-6;
        let inner_ok = match inner_parallel(&omega, &k, (d - eps).max(0.0))? {
            Some(b) => b.contains(p, 1e-9),
            None => false,
        };
        let outer_ok = match inner_parallel(&omega, &k, d + eps)? {
            Some(b) => !b.contains(p, -1e-9),
            None => true,
        };
        let flag = if inner_ok && outer_ok { "ok" } else { "mismatch" };
        let coords: Vec<String> = p.as_slice().iter().map(|c| sig15(*c)).collect();
        out.push_str(&format!("{},{},{}\n", coords.join(","), sig15(d), flag));
    }
    Ok(out)
}

/// Run a verification suite over the built-in examples plus the seeded
/// random corpus (200 pairs in 2D, 50 in 3D).
pub fn cmd_verify(suite: Suite, config: &RunConfig) -> Result<SuiteReport> {
    config.validate()?;
    verify::run_suite(suite, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_box_example() {
        let cfg = RunConfig::default();
        let json = cmd_gen(&GenKind::Box(vec![4.0, 2.0]), &cfg).unwrap();
        let body = bodyfile::body_from_json(&json).unwrap();
        assert_eq!(body.dim(), 2);
        assert!((body.volume() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn gen_random_hull_deterministic() {
        let cfg = RunConfig {
            seed: 7,
            ..RunConfig::default()
        };
        let a = cmd_gen(&GenKind::RandomHull(20), &cfg).unwrap();
        let b = cmd_gen(&GenKind::RandomHull(20), &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gen_circumscribed_triangle() {
        let cfg = RunConfig::default();
        let k = bodies::unit_cube(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let json = cmd_gen(
            &GenKind::Circumscribed {
                k,
                normals: vec![
                    Vector::new2(-1.0, 0.0),
                    Vector::new2(0.0, -1.0),
                    Vector::new2(s, s),
                ],
            },
            &cfg,
        )
        .unwrap();
        let body = bodyfile::body_from_json(&json).unwrap();
        assert!((body.volume() - 8.0).abs() < 1e-9);
    }

    #[test]
    fn curve_command_psi_column() {
        let dir = tempfile::tempdir().unwrap();
        let t_path = dir.path().join("t.json");
        let k_path = dir.path().join("k.json");
        let t = Body::from_points(
            2,
            &[
                Vector::new2(-1.0, -1.0),
                Vector::new2(3.0, -1.0),
                Vector::new2(-1.0, 3.0),
            ],
        )
        .unwrap();
        bodyfile::save_body(&t, &t_path).unwrap();
        bodyfile::save_body(&bodies::unit_cube(2).unwrap(), &k_path).unwrap();
        let cfg = RunConfig {
            grid_points: 17,
            ..RunConfig::default()
        };
        let csv = cmd_curve(&t_path, &k_path, &cfg).unwrap();
        let mut lines = csv.lines();
        let header = lines.next().unwrap();
        let psi_col = header.split(',').position(|c| c == "psi").unwrap();
        let mut rows = 0;
        for line in lines {
            if line.starts_with('#') {
                assert!(line.contains("inradius="));
                continue;
            }
            let psi: f64 = line.split(',').nth(psi_col).unwrap().parse().unwrap();
            assert!((psi - 0.03125).abs() < 1e-9);
            rows += 1;
        }
        assert_eq!(rows, 17);
    }

    #[test]
    fn dist_command_flags_ok() {
        let dir = tempfile::tempdir().unwrap();
        let o_path = dir.path().join("rect.json");
        let k_path = dir.path().join("k.json");
        let p_path = dir.path().join("pts.json");
        bodyfile::save_body(&bodies::box_centered(&[4.0, 2.0]).unwrap(), &o_path).unwrap();
        bodyfile::save_body(&bodies::unit_cube(2).unwrap(), &k_path).unwrap();
        std::fs::write(&p_path, "[[0.0, 0.0], [2.0, 0.0]]").unwrap();
        let csv = cmd_dist(&o_path, &k_path, &p_path).unwrap();
        let rows: Vec<&str> = csv.lines().skip(1).collect();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].ends_with(",ok"));
        let d0: f64 = rows[0].split(',').nth(2).unwrap().parse().unwrap();
        assert!((d0 - 1.0).abs() < 1e-9);
        let d1: f64 = rows[1].split(',').nth(2).unwrap().parse().unwrap();
        assert!(d1.abs() < 1e-9);
    }

    #[test]
    fn dist_command_rejects_outside_points() {
        let dir = tempfile::tempdir().unwrap();
        let o_path = dir.path().join("rect.json");
        let k_path = dir.path().join("k.json");
        let p_path = dir.path().join("pts.json");
        bodyfile::save_body(&bodies::box_centered(&[4.0, 2.0]).unwrap(), &o_path).unwrap();
        bodyfile::save_body(&bodies::unit_cube(2).unwrap(), &k_path).unwrap();
        std::fs::write(&p_path, "[[9.0, 0.0]]").unwrap();
        assert!(matches!(
            cmd_dist(&o_path, &k_path, &p_path),
            Err(Error::PointOutside)
        ));
    }
}
