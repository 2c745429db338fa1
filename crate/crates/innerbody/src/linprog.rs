//! Small dense linear programs.
//!
//! Everything geometric in this crate funnels through LPs with at most a
//! few dozen constraints and a handful of variables (interior points,
//! relative inradii, redundancy tests). A dense two-phase tableau simplex
//! with Bland's rule is the right tool at that scale: deterministic,
//! immune to cycling on the degenerate instances tangency produces, and
//! simple enough to audit.
//!
//! Variables are free; the solver splits them into nonnegative pairs
//! internally. Constraints are all of the form `row · x ≤ rhs`.

use crate::{Error, Result};

/// `maximize objective · x` subject to `constraint_rows[i] · x ≤ rhs[i]`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraint_rows: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LPStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LPResult {
    pub status: LPStatus,
    /// Present iff `status == Optimal`.
    pub point: Option<Vec<f64>>,
    /// Present iff `status == Optimal`; always equals `objective · point`.
    pub value: Option<f64>,
}

const PIVOT_TOL: f64 = 1e-10;
const FEAS_TOL: f64 = 1e-9;

struct Tableau {
    rows: Vec<Vec<f64>>, // k rows of length num_cols (structural + slack + artificial)
    rhs: Vec<f64>,       // nonnegative throughout
    basis: Vec<usize>,   // basic column per row
    num_cols: usize,
    art_start: usize, // columns >= art_start are artificial
}

impl Tableau {
    /// One simplex phase on the given cost vector (maximization). Bland's
    /// rule everywhere: lowest eligible entering column, lowest basic
    /// index on ratio ties. Returns `Ok(true)` at optimality, `Ok(false)`
    /// on an unbounded ray.
    fn run(&mut self, cost: &[f64], iter_cap: usize) -> Result<bool> {
        let k = self.rows.len();
        // Reduced costs: c_j - c_B^T B^{-1} A_j, maintained densely.
        let mut red = cost.to_vec();
        let mut obj_shift = 0.0;
        for r in 0..k {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                for c in 0..self.num_cols {
                    red[c] -= cb * self.rows[r][c];
                }
                obj_shift += cb * self.rhs[r];
            }
        }
        let _ = obj_shift;

        for _ in 0..iter_cap {
            // Entering: lowest index with positive reduced cost.
            let mut enter = None;
            for (c, &rc) in red.iter().enumerate() {
                if rc > PIVOT_TOL {
                    enter = Some(c);
                    break;
                }
            }
            let Some(enter) = enter else {
                return Ok(true);
            };
            // Leaving: min ratio; ties resolved by lowest basic variable index.
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..k {
                let a = self.rows[r][enter];
                if a > PIVOT_TOL {
                    let ratio = self.rhs[r] / a;
                    match leave {
                        None => leave = Some((r, ratio)),
                        Some((lr, lratio)) => {
                            if ratio < lratio - 1e-12
                                || (ratio < lratio + 1e-12 && self.basis[r] < self.basis[lr])
                            {
                                leave = Some((r, ratio));
                            }
                        }
                    }
                }
            }
            let Some((leave, _)) = leave else {
                return Ok(false);
            };
            self.pivot(leave, enter, &mut red);
        }
        Err(Error::NumericalFailure(
            "simplex iteration cap exceeded".into(),
        ))
    }

    fn pivot(&mut self, row: usize, col: usize, red: &mut [f64]) {
        let piv = self.rows[row][col];
        for c in 0..self.num_cols {
            self.rows[row][c] /= piv;
        }
        self.rhs[row] /= piv;
        for r in 0..self.rows.len() {
            if r == row {
                continue;
            }
            let f = self.rows[r][col];
            if f == 0.0 {
                continue;
            }
            for c in 0..self.num_cols {
                self.rows[r][c] -= f * self.rows[row][c];
            }
            self.rhs[r] -= f * self.rhs[row];
            if self.rhs[r] < 0.0 && self.rhs[r] > -1e-12 {
                self.rhs[r] = 0.0;
            }
        }
        let f = red[col];
        if f != 0.0 {
            for c in 0..self.num_cols {
                red[c] -= f * self.rows[row][c];
            }
        }
        self.basis[row] = col;
    }
}

/// Solve a small dense LP with free variables.
///
/// `Infeasible` and `Unbounded` are ordinary results; only a stalled
/// pivot sequence is an error.
pub fn solve(lp: &LinearProgram) -> Result<LPResult> {
    let m = lp.objective.len();
    let k = lp.constraint_rows.len();
    if m == 0 || k == 0 {
        return Err(Error::InvalidInput("LP needs >= 1 variable and row".into()));
    }
    for row in &lp.constraint_rows {
        if row.len() != m {
            return Err(Error::InvalidInput("ragged constraint matrix".into()));
        }
    }
    if !lp
        .objective
        .iter()
        .chain(lp.constraint_rows.iter().flatten())
        .chain(lp.rhs.iter())
        .all(|v| v.is_finite())
    {
        return Err(Error::InvalidInput("non-finite LP entry".into()));
    }

    // Free variables become differences of nonnegative pairs: columns
    // 2j (positive part) and 2j+1 (negative part). One slack per row;
    // rows with negative rhs are negated and get an artificial.
    let n_split = 2 * m;
    let n_art = lp.rhs.iter().filter(|&&b| b < 0.0).count();
    let num_cols = n_split + k + n_art;
    let art_start = n_split + k;

    let mut rows = Vec::with_capacity(k);
    let mut rhs = Vec::with_capacity(k);
    let mut basis = Vec::with_capacity(k);
    let mut art_used = 0usize;
    for i in 0..k {
        let mut row = vec![0.0; num_cols];
        let neg = lp.rhs[i] < 0.0;
        let sign = if neg { -1.0 } else { 1.0 };
        for j in 0..m {
            row[2 * j] = sign * lp.constraint_rows[i][j];
            row[2 * j + 1] = -sign * lp.constraint_rows[i][j];
        }
        row[n_split + i] = sign; // slack
        if neg {
            let a = art_start + art_used;
            row[a] = 1.0;
            basis.push(a);
            art_used += 1;
        } else {
            basis.push(n_split + i);
        }
        rows.push(row);
        rhs.push(sign * lp.rhs[i]);
    }

    let mut tab = Tableau {
        rows,
        rhs,
        basis,
        num_cols,
        art_start,
    };
    let iter_cap = 10 * (k + num_cols).max(50);

    if n_art > 0 {
        // Phase one: drive sum of artificials to zero.
        let mut cost1 = vec![0.0; num_cols];
        for c in art_start..num_cols {
            cost1[c] = -1.0;
        }
        let optimal = tab.run(&cost1, iter_cap)?;
        debug_assert!(optimal, "phase one is always bounded");
        let infeas: f64 = (0..k)
            .filter(|&r| tab.basis[r] >= art_start)
            .map(|r| tab.rhs[r])
            .sum();
        if infeas > FEAS_TOL {
            return Ok(LPResult {
                status: LPStatus::Infeasible,
                point: None,
                value: None,
            });
        }
        // Pivot remaining (zero-level) artificials out of the basis.
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] >= tab.art_start {
                let mut done = false;
                for c in 0..tab.art_start {
                    if tab.rows[r][c].abs() > PIVOT_TOL {
                        let mut dummy = vec![0.0; tab.num_cols];
                        tab.pivot(r, c, &mut dummy);
                        done = true;
                        break;
                    }
                }
                if !done {
                    // Redundant row; drop it.
                    tab.rows.remove(r);
                    tab.rhs.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
            r += 1;
        }
        // Freeze artificial columns at zero for phase two.
        for row in tab.rows.iter_mut() {
            for c in tab.art_start..tab.num_cols {
                row[c] = 0.0;
            }
        }
    }

    let mut cost2 = vec![0.0; num_cols];
    for j in 0..m {
        cost2[2 * j] = lp.objective[j];
        cost2[2 * j + 1] = -lp.objective[j];
    }
    if !tab.run(&cost2, iter_cap)? {
        return Ok(LPResult {
            status: LPStatus::Unbounded,
            point: None,
            value: None,
        });
    }

    let mut split = vec![0.0; n_split];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n_split {
            split[b] = tab.rhs[r];
        }
    }
    let point: Vec<f64> = (0..m).map(|j| split[2 * j] - split[2 * j + 1]).collect();
    let value = lp
        .objective
        .iter()
        .zip(point.iter())
        .map(|(c, x)| c * x)
        .sum();
    Ok(LPResult {
        status: LPStatus::Optimal,
        point: Some(point),
        value: Some(value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(obj: &[f64], rows: &[&[f64]], rhs: &[f64]) -> LinearProgram {
        LinearProgram {
            objective: obj.to_vec(),
            constraint_rows: rows.iter().map(|r| r.to_vec()).collect(),
            rhs: rhs.to_vec(),
        }
    }

    fn feasibility_residual(lp: &LinearProgram, x: &[f64]) -> f64 {
        lp.constraint_rows
            .iter()
            .zip(lp.rhs.iter())
            .map(|(row, &b)| {
                let ax: f64 = row.iter().zip(x).map(|(a, v)| a * v).sum();
                (ax - b).max(0.0)
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn single_bound() {
        let p = lp(&[1.0], &[&[1.0]], &[5.0]);
        let r = solve(&p).unwrap();
        assert_eq!(r.status, LPStatus::Optimal);
        assert!((r.value.unwrap() - 5.0).abs() < 1e-10);
    }

    #[test]
    fn infeasible_pair() {
        // x <= -1 and -x <= -2 (i.e. x >= 2) cannot both hold.
        let p = lp(&[1.0], &[&[1.0], &[-1.0]], &[-1.0, -2.0]);
        let r = solve(&p).unwrap();
        assert_eq!(r.status, LPStatus::Infeasible);
    }

    #[test]
    fn unbounded_ray() {
        let p = lp(&[1.0, 0.0], &[&[0.0, 1.0]], &[1.0]);
        let r = solve(&p).unwrap();
        assert_eq!(r.status, LPStatus::Unbounded);
    }

    #[test]
    fn negative_rhs_needs_phase_one() {
        // maximize -x subject to -x <= -3  =>  x >= 3, optimum x = 3.
        let p = lp(&[-1.0], &[&[-1.0]], &[-3.0]);
        let r = solve(&p).unwrap();
        assert_eq!(r.status, LPStatus::Optimal);
        assert!((r.point.as_ref().unwrap()[0] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn chebyshev_center_of_band() {
        // maximize s with x + s <= 1, -x + s <= 1: s* = 1 at x = 0.
        let p = lp(&[0.0, 1.0], &[&[1.0, 1.0], &[-1.0, 1.0]], &[1.0, 1.0]);
        let r = solve(&p).unwrap();
        assert_eq!(r.status, LPStatus::Optimal);
        assert!((r.value.unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn optimal_results_are_feasible_and_consistent() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..200 {
            let m = rng.gen_range(1..=4);
            let k = rng.gen_range(1..=8);
            let mut rows: Vec<Vec<f64>> = Vec::new();
            let mut rhs = Vec::new();
            // Box constraints keep the instance bounded and feasible at 0.
            for j in 0..m {
                let mut lo = vec![0.0; m];
                lo[j] = -1.0;
                let mut hi = vec![0.0; m];
                hi[j] = 1.0;
                rows.push(hi);
                rhs.push(rng.gen_range(0.1..2.0));
                rows.push(lo);
                rhs.push(rng.gen_range(0.1..2.0));
            }
            for _ in 0..k {
                rows.push((0..m).map(|_| rng.gen_range(-1.0..1.0)).collect());
                rhs.push(rng.gen_range(0.0..2.0));
            }
            let p = LinearProgram {
                objective: (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                constraint_rows: rows,
                rhs,
            };
            let r = solve(&p).unwrap();
            assert_eq!(r.status, LPStatus::Optimal);
            let x = r.point.unwrap();
            assert!(feasibility_residual(&p, &x) <= 1e-8);
            let recomputed: f64 = p.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
            assert!((recomputed - r.value.unwrap()).abs() <= 1e-10);
        }
    }

    #[test]
    fn duality_on_random_bounded_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        for _ in 0..60 {
            let m = rng.gen_range(1..=3);
            let mut rows: Vec<Vec<f64>> = Vec::new();
            let mut rhs = Vec::new();
            for j in 0..m {
                let mut lo = vec![0.0; m];
                lo[j] = -1.0;
                let mut hi = vec![0.0; m];
                hi[j] = 1.0;
                rows.push(hi);
                rhs.push(rng.gen_range(0.5..2.0));
                rows.push(lo);
                rhs.push(rng.gen_range(0.5..2.0));
            }
            for _ in 0..rng.gen_range(0..4) {
                rows.push((0..m).map(|_| rng.gen_range(-1.0..1.0)).collect());
                rhs.push(rng.gen_range(0.2..2.0));
            }
            let obj: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let primal = LinearProgram {
                objective: obj.clone(),
                constraint_rows: rows.clone(),
                rhs: rhs.clone(),
            };
            let pr = solve(&primal).unwrap();
            if pr.status != LPStatus::Optimal {
                continue;
            }
            // Dual of  max c·x s.t. Ax <= b, x free:
            //   min b·y  s.t. A^T y = c, y >= 0,
            // expressed below with equalities as inequality pairs and
            // y >= 0 as -y <= 0.
            let kk = rows.len();
            let mut drows: Vec<Vec<f64>> = Vec::new();
            let mut drhs = Vec::new();
            for j in 0..m {
                let col: Vec<f64> = (0..kk).map(|i| rows[i][j]).collect();
                drows.push(col.clone());
                drhs.push(obj[j]);
                drows.push(col.iter().map(|v| -v).collect());
                drhs.push(-obj[j]);
            }
            for i in 0..kk {
                let mut e = vec![0.0; kk];
                e[i] = -1.0;
                drows.push(e);
                drhs.push(0.0);
            }
            let dual = LinearProgram {
                objective: rhs.iter().map(|v| -v).collect(),
                constraint_rows: drows,
                rhs: drhs,
            };
            let dr = solve(&dual).unwrap();
            assert_eq!(dr.status, LPStatus::Optimal);
            let dual_opt = -dr.value.unwrap();
            assert!(
                (pr.value.unwrap() - dual_opt).abs() <= 1e-6,
                "duality gap: primal {} dual {}",
                pr.value.unwrap(),
                dual_opt
            );
            checked += 1;
        }
        assert!(checked >= 30, "too few bounded instances checked");
    }

    #[test]
    fn deterministic_resolve() {
        let p = lp(
            &[1.0, 2.0],
            &[&[1.0, 1.0], &[1.0, -1.0], &[-1.0, 0.0]],
            &[2.0, 1.0, 0.5],
        );
        let a = solve(&p).unwrap();
        let b = solve(&p).unwrap();
        assert_eq!(a.point, b.point);
        assert_eq!(a.value, b.value);
    }
}
