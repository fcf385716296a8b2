//! Impurity-parameter maximization of a pair concurrence.
//!
//! A coarse grid scan locates the best cell, then golden-section search
//! refines along each axis inside the neighbouring grid cells. This is a
//! heuristic: the objective has kinks at level crossings and may have several
//! local maxima, and nothing guarantees the global one is found.

use crate::entanglement::{concurrence, partial_trace_pair};
use crate::error::{Error, Result};
use crate::thermal::Temperature;

use super::scenario::{linspace, Scenario};

/// `(√5 − 1) / 2`
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TemperatureSearch {
    Fixed(f64),
    Range(f64, f64),
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Coarse grid points per axis.
    pub grid_points: usize,
    /// Golden-section stops once the bracket is narrower than this.
    pub tolerance: f64,
    /// Alternating axis refinements (only matters for a temperature range).
    pub rounds: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            grid_points: 61,
            tolerance: 1e-6,
            rounds: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanPoint {
    pub j: f64,
    pub temperature: f64,
    pub concurrence: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Optimum {
    pub j: f64,
    pub temperature: f64,
    pub concurrence: f64,
    pub evaluations: usize,
    /// Best point of the coarse scan, before refinement.
    pub grid_best: ScanPoint,
    /// The coarse scan, `J`-major.
    pub scan: Vec<ScanPoint>,
}

/// Maximizes `f` on `[lo, hi]` assuming it is unimodal there.
///
/// Returns the best point evaluated and the number of evaluations. The
/// endpoints themselves are never evaluated.
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64, usize)>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo <= hi) || !(tol > 0.0) {
        return Err(Error::input(format!(
            "bad golden-section bracket [{lo}, {hi}]"
        )));
    }
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut evals = 2;
    let mut best = if f2 > f1 { (x2, f2) } else { (x1, f1) };
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
            if f1 > best.1 {
                best = (x1, f1);
            }
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
            if f2 > best.1 {
                best = (x2, f2);
            }
        }
        evals += 1;
    }
    Ok((best.0, best.1, evals))
}

/// Concurrence of `pair` for scan parameter `j` at temperature `t`.
pub fn evaluate(s: &Scenario, pair: (usize, usize), j: f64, t: f64) -> Result<f64> {
    let rho = s.chain(j)?.thermal_state(Temperature::new(t)?)?;
    Ok(concurrence(&partial_trace_pair(&rho, pair.0, pair.1)?)?.value)
}

pub fn maximize_concurrence(
    s: &Scenario,
    pair: (usize, usize),
    j_bounds: (f64, f64),
    t: TemperatureSearch,
) -> Result<Optimum> {
    maximize_concurrence_with(s, pair, j_bounds, t, SearchOptions::default())
}

pub fn maximize_concurrence_with(
    s: &Scenario,
    pair: (usize, usize),
    j_bounds: (f64, f64),
    t: TemperatureSearch,
    opts: SearchOptions,
) -> Result<Optimum> {
    let (j_lo, j_hi) = j_bounds;
    if !(j_lo.is_finite() && j_hi.is_finite() && 0.0 <= j_lo && j_lo <= j_hi) {
        return Err(Error::input(format!(
            "J bounds [{j_lo}, {j_hi}] must be finite, >= 0, ordered"
        )));
    }
    let j_grid = linspace(j_lo, j_hi, opts.grid_points)?;
    let t_grid = match t {
        TemperatureSearch::Fixed(t) => {
            Temperature::new(t)?;
            vec![t]
        }
        TemperatureSearch::Range(lo, hi) => {
            Temperature::new(lo)?;
            Temperature::new(hi)?;
            linspace(lo, hi, opts.grid_points)?
        }
    };

    let mut evaluations = 0usize;
    let mut scan = Vec::with_capacity(j_grid.len() * t_grid.len());
    for &j in &j_grid {
        for &temperature in &t_grid {
            let concurrence = evaluate(s, pair, j, temperature)?;
            evaluations += 1;
            scan.push(ScanPoint {
                j,
                temperature,
                concurrence,
            });
        }
    }
    let (best_idx, grid_best) = scan
        .iter()
        .copied()
        .enumerate()
        .fold(None, |acc: Option<(usize, ScanPoint)>, (k, p)| match acc {
            Some((_, b)) if b.concurrence >= p.concurrence => acc,
            _ => Some((k, p)),
        })
        .expect("nonempty scan");
    let (ji, ti) = (best_idx / t_grid.len(), best_idx % t_grid.len());
    let neighbourhood =
        |grid: &[f64], k: usize| (grid[k.saturating_sub(1)], grid[(k + 1).min(grid.len() - 1)]);

    let mut best = grid_best;
    let j_cell = neighbourhood(&j_grid, ji);
    let t_cell = neighbourhood(&t_grid, ti);
    let rounds = if t_grid.len() > 1 { opts.rounds } else { 1 };
    for _ in 0..rounds {
        let before = best.concurrence;
        if j_cell.1 > j_cell.0 {
            let t = best.temperature;
            let (j, c, e) = golden_section_max(
                |j| evaluate(s, pair, j, t),
                j_cell.0,
                j_cell.1,
                opts.tolerance,
            )?;
            evaluations += e;
            if c > best.concurrence {
                best = ScanPoint {
                    j,
                    temperature: t,
                    concurrence: c,
                };
            }
        }
        if t_cell.1 > t_cell.0 {
            let j = best.j;
            let (t, c, e) = golden_section_max(
                |t| evaluate(s, pair, j, t),
                t_cell.0,
                t_cell.1,
                opts.tolerance,
            )?;
            evaluations += e;
            if c > best.concurrence {
                best = ScanPoint {
                    j,
                    temperature: t,
                    concurrence: c,
                };
            }
        }
        if best.concurrence <= before {
            break;
        }
    }

    Ok(Optimum {
        j: best.j,
        temperature: best.temperature,
        concurrence: best.concurrence,
        evaluations,
        grid_best,
        scan,
    })
}
