//! Kink-aware adaptive 1-D integration.
//!
//! Integrands of the form |cos(beta - (n+1)phi)|^gamma * w(phi) are analytic
//! between the zeros of the cosine, so each panel carries a fixed-order
//! Gauss-Legendre rule (order 21, with an embedded order-10 evaluation as the
//! error gauge) and refinement proceeds by bisecting the worst panel. Panels
//! never straddle a supplied breakpoint.

use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::LazyLock;

use crate::error::{Error, Result};

/// Tolerances and budget for one integral.
#[derive(Debug, Clone)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-11,
            max_panels: 4096,
        }
    }
}

impl QuadratureConfig {
    /// Config with both tolerances set to `tol` (abs gets `tol/10`).
    pub fn with_tol(tol: f64) -> Self {
        QuadratureConfig {
            abs_tol: tol * 0.1,
            rel_tol: tol,
            max_panels: 4096,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if self.max_panels < 8 {
            return Err(Error::domain("max_panels must be at least 8"));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Converged integral: value, error estimate and the number of leaf panels.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: f64,
    pub err_estimate: f64,
    pub panels: usize,
}

/// Nodes and weights of a Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    /// Newton iteration on the Legendre recurrence; standard cosine initial
    /// guesses converge in a handful of steps to full precision.
    fn new(order: usize) -> Self {
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // evaluate P_n(x) and P_n'(x)
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = pk;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussRule { nodes, weights }
    }
}

static GL21: LazyLock<GaussRule> = LazyLock::new(|| GaussRule::new(21));
static GL10: LazyLock<GaussRule> = LazyLock::new(|| GaussRule::new(10));

/// Merge tolerance for breakpoints that collide with an endpoint or with
/// each other (guards against zero-width panels from kink roundoff).
const BREAK_MERGE: f64 = 1e-14;

/// All zeros of cos(beta - (n+1)phi) strictly inside (a, b), ascending.
pub fn kink_points(beta: f64, n: u32, a: f64, b: f64) -> Vec<f64> {
    let np1 = f64::from(n) + 1.0;
    // beta - (n+1)phi = pi/2 + k pi  =>  phi = (beta - pi/2 - k pi)/(n+1)
    let k_lo = ((beta - PI / 2.0 - b * np1) / PI).floor() as i64 - 1;
    let k_hi = ((beta - PI / 2.0 - a * np1) / PI).ceil() as i64 + 1;
    let mut out = Vec::new();
    for k in k_lo..=k_hi {
        let phi = (beta - PI / 2.0 - k as f64 * PI) / np1;
        if phi - a > BREAK_MERGE && b - phi > BREAK_MERGE {
            out.push(phi);
        }
    }
    out.sort_by(|x, y| x.partial_cmp(y).expect("finite kinks"));
    out.dedup_by(|x, y| (*x - *y).abs() <= BREAK_MERGE);
    out
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

/// Heap ordering: worst error first, ties broken by left endpoint.
struct ByErr(Panel);

impl PartialEq for ByErr {
    fn eq(&self, other: &Self) -> bool {
        self.0.err == other.0.err && self.0.a == other.0.a
    }
}
impl Eq for ByErr {}
impl PartialOrd for ByErr {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByErr {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .err
            .total_cmp(&other.0.err)
            .then(other.0.a.total_cmp(&self.0.a))
    }
}

fn eval_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Panel {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut hi = 0.0;
    for (x, w) in GL21.nodes.iter().zip(&GL21.weights) {
        hi += w * f(mid + half * x);
    }
    let mut lo = 0.0;
    for (x, w) in GL10.nodes.iter().zip(&GL10.weights) {
        lo += w * f(mid + half * x);
    }
    let value = hi * half;
    let err = ((hi - lo) * half).abs().max(f64::EPSILON * value.abs());
    Panel { a, b, value, err }
}

/// Adaptive panel integration of `f` over [a, b] with panels split at the
/// supplied breakpoints. Breakpoints must lie inside (a, b); values within
/// 1e-14 of an endpoint or of each other are merged away.
pub fn integrate_panels(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if !(a < b) {
        return Err(Error::domain(format!(
            "integration interval must satisfy a < b, got [{a}, {b}]"
        )));
    }
    cfg.validate()?;

    let mut edges = vec![a];
    let mut last = a;
    for &p in breakpoints {
        if p - last > BREAK_MERGE && b - p > BREAK_MERGE {
            edges.push(p);
            last = p;
        }
    }
    edges.push(b);

    // One extra bisection adjacent to each interior breakpoint: at gamma = 1
    // the integrand is Lipschitz but not C^1 there.
    let n_edges = edges.len();
    let mut seeds = Vec::new();
    for i in 0..n_edges - 1 {
        let (lo, hi) = (edges[i], edges[i + 1]);
        if n_edges > 2 {
            let mid = 0.5 * (lo + hi);
            seeds.push((lo, mid));
            seeds.push((mid, hi));
        } else {
            seeds.push((lo, hi));
        }
    }

    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new(); // panels too narrow to bisect
    let mut count = 0usize;
    for (lo, hi) in seeds {
        heap.push(ByErr(eval_panel(&f, lo, hi)));
        count += 1;
    }

    loop {
        let value: f64 = heap.iter().map(|p| p.0.value).sum::<f64>()
            + frozen.iter().map(|p| p.value).sum::<f64>();
        let err: f64 = heap.iter().map(|p| p.0.err).sum::<f64>()
            + frozen.iter().map(|p| p.err).sum::<f64>();
        if err <= cfg.target(value) {
            break;
        }
        if count + 1 > cfg.max_panels {
            let (value, err_estimate, panels) = finish(heap, frozen);
            return Err(Error::Convergence {
                value,
                err_estimate,
                panels,
            });
        }
        let worst = match heap.pop() {
            Some(p) => p.0,
            None => {
                let (value, err_estimate, panels) = finish(heap, frozen);
                return Err(Error::Convergence {
                    value,
                    err_estimate,
                    panels,
                });
            }
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            frozen.push(worst);
            continue;
        }
        heap.push(ByErr(eval_panel(&f, worst.a, mid)));
        heap.push(ByErr(eval_panel(&f, mid, worst.b)));
        count += 1;
    }

    let (value, err_estimate, panels) = finish(heap, frozen);
    Ok(QuadratureResult {
        value,
        err_estimate,
        panels,
    })
}

/// Deterministic reduction: sum leaf panels in left-to-right order.
fn finish(heap: BinaryHeap<ByErr>, frozen: Vec<Panel>) -> (f64, f64, usize) {
    let mut panels: Vec<Panel> = heap.into_iter().map(|p| p.0).collect();
    panels.extend(frozen);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().map(|p| p.value).sum();
    let err = panels.iter().map(|p| p.err).sum();
    (value, err, panels.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

    #[test]
    fn kinks_n6_beta0() {
        let ks = kink_points(0.0, 6, -FRAC_PI_2, FRAC_PI_2);
        let expect: Vec<f64> = [-5.0, -3.0, -1.0, 1.0, 3.0, 5.0]
            .iter()
            .map(|k| k * PI / 14.0)
            .collect();
        assert_eq!(ks.len(), 6);
        for (a, e) in ks.iter().zip(&expect) {
            assert!((a - e).abs() < 1e-14, "{a} vs {e}");
        }
    }

    #[test]
    fn kinks_endpoint_exclusive() {
        // phi = ±pi/2 are endpoints for n = 0, beta = 0
        assert!(kink_points(0.0, 0, -FRAC_PI_2, FRAC_PI_2).is_empty());
    }

    #[test]
    fn kinks_n1_beta_pi_2() {
        let ks = kink_points(FRAC_PI_2, 1, -FRAC_PI_2, FRAC_PI_2);
        assert_eq!(ks.len(), 1);
        assert!(ks[0].abs() < 1e-15);
    }

    #[test]
    fn cos_squared() {
        let cfg = QuadratureConfig::default();
        let r = integrate_panels(|x| x.cos() * x.cos(), -FRAC_PI_2, FRAC_PI_2, &[], &cfg).unwrap();
        assert!((r.value - FRAC_PI_2).abs() < 1e-12);
        assert!(r.err_estimate <= cfg.target(r.value));
    }

    #[test]
    fn abs_cos_with_kinks() {
        // |cos phi| over a wider interval, kinks at ±pi/2 from the kink solver
        let cfg = QuadratureConfig::default();
        let ks = kink_points(0.0, 0, -2.0, 2.0);
        let r = integrate_panels(|x| x.cos().abs(), -2.0, 2.0, &ks, &cfg).unwrap();
        // int_{-2}^{2} |cos| = 2 (sin(pi/2) + (sin(pi/2) - sin 2)) = 4 - 2 sin 2
        assert!((r.value - (4.0 - 2.0 * (2.0f64).sin())).abs() < 1e-12);
    }

    #[test]
    fn abs_cos3_times_cos() {
        // the alpha = 0 integral inside K_{2,inf}; piecewise antiderivative
        // sin(2phi)/4 + sin(4phi)/8 summed over sign intervals gives 3*sqrt(3)/4
        let cfg = QuadratureConfig::default();
        let ks = kink_points(0.0, 2, -FRAC_PI_2, FRAC_PI_2);
        let r = integrate_panels(
            |x| (3.0 * x).cos().abs() * x.cos(),
            -FRAC_PI_2,
            FRAC_PI_2,
            &ks,
            &cfg,
        )
        .unwrap();
        assert!((r.value - 3.0 * 3.0f64.sqrt() / 4.0).abs() < 1e-12);
    }

    #[test]
    fn odd_function_is_zero() {
        let cfg = QuadratureConfig::default();
        let r = integrate_panels(|x| x * x.cos(), -FRAC_PI_2, FRAC_PI_2, &[], &cfg).unwrap();
        assert!(r.value.abs() <= cfg.abs_tol);
    }

    #[test]
    fn convergence_error_carries_best_value() {
        let cfg = QuadratureConfig {
            abs_tol: 1e-300,
            rel_tol: 1e-300,
            max_panels: 16,
        };
        let e = integrate_panels(|x: f64| x.abs().powf(0.31), -1.0, 1.0, &[], &cfg).unwrap_err();
        match e {
            Error::Convergence { value, panels, .. } => {
                assert!((value - 2.0 / 1.31).abs() < 1e-2);
                assert!(panels <= 17);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn doubling_rel_tol_never_costs_more() {
        let f = |x: f64| (7.0 * x).cos().abs() * x.cos().powi(4);
        let ks = kink_points(0.0, 6, -FRAC_PI_2, FRAC_PI_2);
        let mut prev = usize::MAX;
        for k in 0..6 {
            let cfg = QuadratureConfig {
                abs_tol: 1e-15,
                rel_tol: 1e-12 * 2f64.powi(k),
                max_panels: 4096,
            };
            let r = integrate_panels(f, -FRAC_PI_2, FRAC_PI_2, &ks, &cfg).unwrap();
            assert!(r.panels <= prev, "panel count must not grow with rel_tol");
            prev = r.panels;
        }
    }
}
