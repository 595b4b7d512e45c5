//! Deterministic univariate maximization: coarse grid, then golden-section
//! refinement, with a flat-objective tie-break to the smallest abscissa and
//! exact snapping to a domain endpoint when the refinement cannot beat it.
//!
//! The objectives here are quadrature values, so comparisons below the
//! quadrature noise floor are meaningless; `noise` is the caller's estimate
//! of that floor.

use crate::error::Result;

#[derive(Debug, Clone, Copy)]
pub(crate) struct MaxResult {
    pub x: f64,
    pub value: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximize `f` over [lo, hi].
///
/// * `grid` — number of coarse subdivisions (grid+1 evaluations).
/// * `x_tol` — final bracket width.
/// * `noise` — absolute value resolution; spreads below it count as flat.
pub(crate) fn grid_golden_max(
    mut f: impl FnMut(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    grid: usize,
    x_tol: f64,
    noise: f64,
) -> Result<MaxResult> {
    let h = (hi - lo) / grid as f64;
    let mut best_i = 0usize;
    let mut best = f64::NEG_INFINITY;
    let mut worst = f64::INFINITY;
    let mut v_lo = 0.0;
    let mut v_hi = 0.0;
    for i in 0..=grid {
        let x = if i == grid { hi } else { lo + i as f64 * h };
        let v = f(x)?;
        if i == 0 {
            v_lo = v;
        }
        if i == grid {
            v_hi = v;
        }
        if v > best {
            best = v;
            best_i = i;
        }
        if v < worst {
            worst = v;
        }
    }

    // Flat objective: smallest abscissa wins.
    if best - worst <= noise {
        return Ok(MaxResult { x: lo, value: v_lo });
    }

    let a = if best_i == 0 { lo } else { lo + (best_i - 1) as f64 * h };
    let b = if best_i >= grid { hi } else { lo + (best_i + 1) as f64 * h };
    let refined = golden_max(&mut f, a, b, x_tol)?;

    // Snap to a domain endpoint the refinement cannot beat beyond noise.
    if best_i == 0 && v_lo >= refined.value - noise {
        return Ok(MaxResult { x: lo, value: v_lo });
    }
    if best_i == grid && v_hi >= refined.value - noise {
        return Ok(MaxResult { x: hi, value: v_hi });
    }
    Ok(refined)
}

fn golden_max(
    f: &mut impl FnMut(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    x_tol: f64,
) -> Result<MaxResult> {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > x_tol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
        if x2 <= x1 {
            break; // interval below floating resolution
        }
    }
    // smallest abscissa on ties
    Ok(if f1 >= f2 {
        MaxResult { x: x1, value: f1 }
    } else {
        MaxResult { x: x2, value: f2 }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_maximum() {
        let r = grid_golden_max(|x| Ok(-(x - 0.3).powi(2)), 0.0, 1.0, 128, 1e-12, 1e-15).unwrap();
        assert!((r.x - 0.3).abs() < 1e-9);
    }

    #[test]
    fn flat_ties_to_smallest() {
        let r = grid_golden_max(|_| Ok(1.0), 0.0, 1.0, 128, 1e-12, 1e-12).unwrap();
        assert_eq!(r.x, 0.0);
    }

    #[test]
    fn boundary_snap_right() {
        // shallow increasing profile; max at the right endpoint exactly
        let r = grid_golden_max(|x| Ok(1.0 + 1e-6 * x), 0.0, 1.0, 128, 1e-10, 1e-12).unwrap();
        assert_eq!(r.x, 1.0);
    }

    #[test]
    fn boundary_snap_left_on_decreasing() {
        let r = grid_golden_max(|x| Ok(-x), 0.0, 1.0, 128, 1e-10, 1e-14).unwrap();
        assert_eq!(r.x, 0.0);
    }
}
