//! Small dense linear-program feasibility solver.
//!
//! Finds `x >= 0` satisfying a stack of inequality rows `row . x >= rhs`
//! plus one equality row, or reports infeasibility. Two-phase dense simplex:
//! phase one minimizes the total artificial infeasibility under Bland's
//! anti-cycling rule; a phase-one optimum above the tolerance means the
//! system is infeasible, otherwise the basic solution is already feasible
//! and no second phase is needed.

use crate::error::{Error, Result};
use std::fmt;

/// Default feasibility tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Upper bound on dense tableau cells; larger programs are refused rather
/// than thrashing (the tableau carries one slack and up to one artificial
/// column per row, so memory grows quadratically in the row count).
const MAX_TABLEAU_CELLS: usize = 64_000_000;

/// Reduced-cost threshold for entering columns.
const ENTER_EPS: f64 = 1e-10;
/// Minimum magnitude of an acceptable pivot element.
const PIVOT_EPS: f64 = 1e-10;

/// `row . x >= rhs` for all inequality rows, `equality.0 . x = equality.1`,
/// and `x >= 0` componentwise.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityProblem {
    num_vars: usize,
    inequalities: Vec<(Vec<f64>, f64)>,
    equality: (Vec<f64>, f64),
}

/// Solver verdict. `residual` is the phase-one optimum (total remaining
/// artificial infeasibility), reported on both sides for diagnostics near
/// the boundary.
#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible { x: Vec<f64>, residual: f64 },
    Infeasible { residual: f64 },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }
}

/// A constraint violated by a candidate point, found by the independent
/// re-check.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Inequality { row: usize, by: f64 },
    Equality { by: f64 },
    Nonnegativity { var: usize, by: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Inequality { row, by } => {
                write!(f, "inequality row {row} violated by {by:e}")
            }
            Violation::Equality { by } => write!(f, "equality row violated by {by:e}"),
            Violation::Nonnegativity { var, by } => {
                write!(f, "variable {var} negative by {by:e}")
            }
        }
    }
}

impl FeasibilityProblem {
    pub fn new(
        num_vars: usize,
        inequalities: Vec<(Vec<f64>, f64)>,
        equality: (Vec<f64>, f64),
    ) -> Result<Self> {
        let check_row = |coeffs: &[f64], rhs: f64, what: &str| -> Result<()> {
            if coeffs.len() != num_vars {
                return Err(Error::InvalidArgument(format!(
                    "{what} has {} coefficients, expected {num_vars}",
                    coeffs.len()
                )));
            }
            if coeffs.iter().any(|c| !c.is_finite()) || !rhs.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "{what} has non-finite entries"
                )));
            }
            Ok(())
        };
        for (k, (coeffs, rhs)) in inequalities.iter().enumerate() {
            check_row(coeffs, *rhs, &format!("inequality row {k}"))?;
        }
        check_row(&equality.0, equality.1, "equality row")?;
        Ok(FeasibilityProblem {
            num_vars,
            inequalities,
            equality,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_inequalities(&self) -> usize {
        self.inequalities.len()
    }

    /// Independent constraint re-check by plain dot products: every
    /// inequality may fall short of its rhs by at most `tol`, the equality
    /// may be off by at most `tol`, and variables may not be negative.
    pub fn check(&self, x: &[f64], tol: f64) -> std::result::Result<(), Violation> {
        assert_eq!(x.len(), self.num_vars, "solution length mismatch");
        for (var, &v) in x.iter().enumerate() {
            if v < -tol {
                return Err(Violation::Nonnegativity { var, by: -v });
            }
        }
        for (row, (coeffs, rhs)) in self.inequalities.iter().enumerate() {
            let lhs: f64 = coeffs.iter().zip(x).map(|(c, v)| c * v).sum();
            if lhs < rhs - tol {
                return Err(Violation::Inequality { row, by: rhs - lhs });
            }
        }
        let lhs: f64 = self.equality.0.iter().zip(x).map(|(c, v)| c * v).sum();
        if (lhs - self.equality.1).abs() > tol {
            return Err(Violation::Equality {
                by: (lhs - self.equality.1).abs(),
            });
        }
        Ok(())
    }
}

/// Solve for any feasible point, or report infeasibility.
///
/// Feasible solutions are re-checked through [`FeasibilityProblem::check`]
/// before being returned; a re-check failure is reported as a solver
/// failure, as is pivot exhaustion (both distinct from infeasibility).
pub fn solve_feasibility(problem: &FeasibilityProblem, tol: f64) -> Result<Feasibility> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let m = problem.num_vars;
    let num_ineq = problem.inequalities.len();
    let num_rows = num_ineq + 1;

    // Column layout: structural | one slack/surplus per inequality |
    // artificials | rhs. Artificials are needed on rows whose rhs is
    // nonnegative after sign normalization (their surplus enters with -1
    // and cannot start basic) and on the equality row.
    let num_art = problem
        .inequalities
        .iter()
        .filter(|(_, rhs)| *rhs >= 0.0)
        .count()
        + 1;
    let num_cols = m + num_ineq + num_art + 1;
    let cells = (num_rows + 1) * num_cols;
    if cells > MAX_TABLEAU_CELLS {
        return Err(Error::LpTooLarge {
            rows: num_rows,
            cols: num_cols,
        });
    }

    let rhs_col = num_cols - 1;
    let mut tableau = vec![0.0f64; (num_rows + 1) * num_cols];
    let mut basis = vec![0usize; num_rows];

    let mut next_art = m + num_ineq;
    for (r, (coeffs, rhs)) in problem.inequalities.iter().enumerate() {
        let flip = *rhs < 0.0;
        let sign = if flip { -1.0 } else { 1.0 };
        for (j, &c) in coeffs.iter().enumerate() {
            tableau[r * num_cols + j] = sign * c;
        }
        tableau[r * num_cols + rhs_col] = sign * rhs;
        // Surplus (>= rows keep -1) turns into a slack (+1) on flipped rows.
        tableau[r * num_cols + m + r] = if flip { 1.0 } else { -1.0 };
        if flip {
            basis[r] = m + r;
        } else {
            tableau[r * num_cols + next_art] = 1.0;
            basis[r] = next_art;
            next_art += 1;
        }
    }
    {
        let r = num_ineq;
        let (coeffs, rhs) = &problem.equality;
        let sign = if *rhs < 0.0 { -1.0 } else { 1.0 };
        for (j, &c) in coeffs.iter().enumerate() {
            tableau[r * num_cols + j] = sign * c;
        }
        tableau[r * num_cols + rhs_col] = sign * rhs;
        tableau[r * num_cols + next_art] = 1.0;
        basis[r] = next_art;
    }

    // Phase-one objective: minimize the artificial sum. Reduced costs start
    // as cost row (1 on artificials) minus the sum of artificial-basic rows.
    let obj = num_rows;
    for j in m + num_ineq..num_cols - 1 {
        tableau[obj * num_cols + j] = 1.0;
    }
    for r in 0..num_rows {
        if basis[r] >= m + num_ineq {
            for j in 0..num_cols {
                tableau[obj * num_cols + j] -= tableau[r * num_cols + j];
            }
        }
    }

    // Artificials never re-enter; Bland's rule over the remaining columns.
    let enterable = m + num_ineq;
    let max_pivots = 1000 + 50 * (num_rows + m);
    let mut pivots = 0usize;
    loop {
        let mut entering = None;
        for j in 0..enterable {
            if tableau[obj * num_cols + j] < -ENTER_EPS {
                entering = Some(j);
                break;
            }
        }
        let Some(col) = entering else { break };

        let mut leaving: Option<(usize, f64)> = None;
        for r in 0..num_rows {
            let coeff = tableau[r * num_cols + col];
            if coeff > PIVOT_EPS {
                let ratio = tableau[r * num_cols + rhs_col] / coeff;
                let better = match leaving {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < lratio - 1e-12 || (ratio <= lratio + 1e-12 && basis[r] < basis[lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
        }
        let Some((row, _)) = leaving else {
            // Unbounded descent cannot happen for a sum of nonnegative
            // artificials; treat as numerical breakdown.
            return Err(Error::SolverFailure(
                "phase-one column with no positive pivot entry".into(),
            ));
        };

        pivots += 1;
        if pivots > max_pivots {
            return Err(Error::SolverFailure(format!(
                "pivot budget exhausted after {pivots} pivots"
            )));
        }

        let pivot = tableau[row * num_cols + col];
        for j in 0..num_cols {
            tableau[row * num_cols + j] /= pivot;
        }
        for r in 0..=num_rows {
            if r == row {
                continue;
            }
            let factor = tableau[r * num_cols + col];
            if factor != 0.0 {
                for j in 0..num_cols {
                    tableau[r * num_cols + j] -= factor * tableau[row * num_cols + j];
                }
            }
        }
        basis[row] = col;
    }

    // Objective row rhs holds -z at optimality.
    let residual = -tableau[obj * num_cols + rhs_col];
    let residual = residual.max(0.0);
    if residual > tol {
        return Ok(Feasibility::Infeasible { residual });
    }

    let mut x = vec![0.0f64; m];
    for r in 0..num_rows {
        if basis[r] < m {
            x[basis[r]] = tableau[r * num_cols + rhs_col].max(0.0);
        }
    }
    if let Err(violation) = problem.check(&x, tol) {
        return Err(Error::SolverFailure(format!(
            "solution failed the independent re-check: {violation}"
        )));
    }
    Ok(Feasibility::Feasible { x, residual })
}
