//! End-to-end verification of the half-plane estimate: evaluate f^{(n)}(z)
//! directly from a boundary density through the differentiated Schwarz
//! integral, construct densities that saturate the Hoelder step of the kernel
//! bound, and map the constants to the unit disk.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::{BufRead, Write};

use num_complex::Complex64;

use crate::constants::{k_alpha_eval, k_sharp, ConstantQuery, ConstantResult, ExponentP};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_panels, kink_points, QuadratureConfig};
use crate::specfun::{factorial, ln_factorial};

/// A point strictly inside the upper half-plane.
#[derive(Debug, Clone, Copy)]
pub struct HalfPlanePoint {
    re: f64,
    im: f64,
}

impl HalfPlanePoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() || im <= 0.0 {
            return Err(Error::domain(format!(
                "half-plane point needs finite re and im > 0, got {re} + {im}i"
            )));
        }
        Ok(HalfPlanePoint { re, im })
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// A real boundary density sampled uniformly on [-T, T], with the locations
/// of its jumps (if any) recorded so integration panels can align to them.
/// Between samples the density is read piecewise-linearly, except across a
/// recorded jump, where each side extends its sample value to the jump point.
#[derive(Debug, Clone)]
pub struct BoundaryDensity {
    half_width: f64,
    samples: Vec<f64>,
    jumps: Vec<f64>,
    p: ExponentP,
    norm_p: f64,
}

impl BoundaryDensity {
    /// Density from uniform samples over [-T, T] (endpoints included).
    pub fn from_samples(half_width: f64, samples: Vec<f64>, p: ExponentP) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::domain("support half-width must be positive"));
        }
        if samples.len() < 2 {
            return Err(Error::domain("a density needs at least 2 samples"));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("density samples must be finite"));
        }
        let norm_p = discrete_norm(&samples, step(half_width, samples.len()), &p);
        Ok(BoundaryDensity {
            half_width,
            samples,
            jumps: Vec::new(),
            p,
            norm_p,
        })
    }

    /// Record jump locations (sorted, strictly inside the support).
    pub fn with_jumps(mut self, mut jumps: Vec<f64>) -> Self {
        jumps.retain(|t| t.abs() < self.half_width);
        jumps.sort_by(|a, b| a.total_cmp(b));
        jumps.dedup();
        self.jumps = jumps;
        self
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn jumps(&self) -> &[f64] {
        &self.jumps
    }

    pub fn exponent(&self) -> &ExponentP {
        &self.p
    }

    /// The discrete L^p norm of the samples (sup of |samples| at p = inf).
    pub fn norm_p(&self) -> f64 {
        self.norm_p
    }

    pub fn grid_step(&self) -> f64 {
        step(self.half_width, self.samples.len())
    }

    /// Rescale samples so norm_p becomes 1.
    fn normalized(mut self) -> Self {
        if self.norm_p > 0.0 && self.norm_p.is_finite() {
            for v in &mut self.samples {
                *v /= self.norm_p;
            }
            self.norm_p = discrete_norm(&self.samples, self.grid_step(), &self.p);
        }
        self
    }

    /// Write as CSV with header `t,u`, strictly increasing t, 17 significant digits.
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "t,u")?;
        let dt = self.grid_step();
        for (i, v) in self.samples.iter().enumerate() {
            let t = -self.half_width + i as f64 * dt;
            writeln!(w, "{t:.16e},{v:.16e}")?;
        }
        Ok(())
    }

    /// Read a `t,u` CSV produced by [`write_csv`] (or compatible: uniform,
    /// strictly increasing, symmetric support).
    pub fn read_csv(r: impl BufRead, p: ExponentP) -> Result<Self> {
        let mut ts = Vec::new();
        let mut us = Vec::new();
        for (idx, line) in r.lines().enumerate() {
            let line = line.map_err(|e| Error::Parse(format!("csv read failed: {e}")))?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if idx == 0 {
                if line != "t,u" {
                    return Err(Error::Parse(format!(
                        "expected header 't,u', got {line:?}"
                    )));
                }
                continue;
            }
            let (t, u) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad csv row: {line:?}")))?;
            let t: f64 = t
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad t value: {t:?}")))?;
            let u: f64 = u
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad u value: {u:?}")))?;
            ts.push(t);
            us.push(u);
        }
        if ts.len() < 2 {
            return Err(Error::Parse("density csv needs at least 2 rows".into()));
        }
        let dt = ts[1] - ts[0];
        if !(dt > 0.0) {
            return Err(Error::Parse("t column must be strictly increasing".into()));
        }
        for i in 1..ts.len() {
            let expect = ts[0] + i as f64 * dt;
            if (ts[i] - expect).abs() > 1e-9 * dt.max(1.0) {
                return Err(Error::Parse(format!(
                    "t column must be uniformly spaced; row {i} is {} but expected {expect}",
                    ts[i]
                )));
            }
        }
        let half = ts[ts.len() - 1];
        if (ts[0] + half).abs() > 1e-9 * half.abs().max(1.0) {
            return Err(Error::Parse(
                "density support must be symmetric around 0".into(),
            ));
        }
        BoundaryDensity::from_samples(half, us, p)
    }
}

fn step(half_width: f64, n: usize) -> f64 {
    2.0 * half_width / (n as f64 - 1.0)
}

/// Trapezoid-weighted discrete L^p norm of the samples; sup norm at p = inf.
fn discrete_norm(samples: &[f64], dt: f64, p: &ExponentP) -> f64 {
    match *p {
        ExponentP::Infinite => samples.iter().fold(0.0f64, |m, v| m.max(v.abs())),
        _ => {
            let pv = p.value();
            let n = samples.len();
            let mut acc = 0.0;
            for (i, v) in samples.iter().enumerate() {
                let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
                acc += w * v.abs().powf(pv);
            }
            (acc * dt).powf(1.0 / pv)
        }
    }
}

/// f^{(n)}(z) from a truncated boundary density, with a rigorous-style
/// truncation tail bound for n >= 1 (infinite for n = 0, whose tail decays
/// too slowly to bound from the samples alone).
#[derive(Debug, Clone, Copy)]
pub struct SchwarzEval {
    pub value: Complex64,
    pub err_estimate: f64,
    pub tail_bound: f64,
}

const GL5_X: [f64; 5] = [
    -0.906_179_845_938_663_9,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_663_9,
];
const GL5_W: [f64; 5] = [
    0.236_926_885_056_189_08,
    0.478_628_670_499_366_47,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_47,
    0.236_926_885_056_189_08,
];
const GL3_X: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
const GL3_W: [f64; 3] = [
    0.555_555_555_555_555_6,
    0.888_888_888_888_888_9,
    0.555_555_555_555_555_6,
];

/// n-th derivative of the Schwarz integral at z: (n!/(pi i)) int u(t) (t-z)^{-(n+1)} dt,
/// truncated to the density's support. Sample intervals are integrated with a
/// 5-point Gauss rule (3-point embedded as the error gauge), split exactly at
/// recorded jumps.
pub fn schwarz_derivative(
    u: &BoundaryDensity,
    n: u32,
    z: HalfPlanePoint,
    _cfg: &QuadratureConfig,
) -> Result<SchwarzEval> {
    let zc = z.to_complex();
    let ln_pref = ln_factorial(u64::from(n)) - PI.ln();
    if !ln_pref.is_finite() || ln_pref > 700.0 {
        return Err(Error::domain(
            "derivative order too large for a direct evaluation",
        ));
    }
    let pref = ln_pref.exp();
    // n!/(pi i) = -i n!/pi
    let coeff = Complex64::new(0.0, -pref);
    let kernel = |t: f64| {
        let w = (Complex64::new(t, 0.0) - zc).inv();
        let mut acc = w;
        for _ in 0..n {
            acc *= w;
        }
        acc
    };

    let dt = u.grid_step();
    let t0 = -u.half_width();
    let samples = u.samples();
    let mut jumps = u.jumps().iter().copied().peekable();

    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let seg = |a: f64, b: f64, ua: f64, ub: f64, total: &mut Complex64, err: &mut f64| {
        if b <= a {
            return;
        }
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let slope = (ub - ua) / (b - a);
        let mut hi = Complex64::new(0.0, 0.0);
        for (x, w) in GL5_X.iter().zip(&GL5_W) {
            let t = mid + half * x;
            hi += w * (ua + slope * (t - a)) * kernel(t);
        }
        let mut lo = Complex64::new(0.0, 0.0);
        for (x, w) in GL3_X.iter().zip(&GL3_W) {
            let t = mid + half * x;
            lo += w * (ua + slope * (t - a)) * kernel(t);
        }
        *total += hi * half;
        *err += (hi - lo).norm() * half;
    };

    for i in 0..samples.len() - 1 {
        let a = t0 + i as f64 * dt;
        let b = t0 + (i + 1) as f64 * dt;
        while let Some(&j) = jumps.peek() {
            if j <= a {
                jumps.next();
            } else {
                break;
            }
        }
        match jumps.peek() {
            Some(&j) if j < b => {
                // constant extension on each side of the jump
                seg(a, j, samples[i], samples[i], &mut total, &mut err);
                seg(j, b, samples[i + 1], samples[i + 1], &mut total, &mut err);
            }
            _ => seg(a, b, samples[i], samples[i + 1], &mut total, &mut err),
        }
    }

    let sup = u
        .samples()
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let margin = u.half_width() - z.re().abs();
    let tail_bound = if n >= 1 && margin > 0.0 {
        pref * sup * 2.0 / (f64::from(n) * margin.powi(n as i32))
    } else {
        f64::INFINITY
    };

    Ok(SchwarzEval {
        value: coeff * total,
        err_estimate: pref * err,
        tail_bound,
    })
}

/// The boundary density saturating the Hoelder step against the kernel
/// g(t) = Re{ e^{i alpha} (n!/(pi i)) (t - z)^{-(n+1)} }: sign(g) for p = inf,
/// |g|^{q-1} sign(g) (normalized) for finite p. Jump locations are the images
/// t = Re z + Im z tan(phi_k) of the kink angles.
pub fn extremal_density(
    n: u32,
    p: &ExponentP,
    alpha: f64,
    z: HalfPlanePoint,
    half_width: f64,
    samples: usize,
) -> Result<BoundaryDensity> {
    ConstantQuery::new(n, *p).validate()?;
    if p.is_one() {
        return Err(Error::inadmissible(
            "p = 1 has an infinite conjugate exponent; no Hoelder-saturating density here",
        ));
    }
    let q = p.q();
    let zc = z.to_complex();
    let pref = Complex64::new(0.0, -factorial(u64::from(n)) / PI) * Complex64::from_polar(1.0, alpha);
    let g = |t: f64| {
        let w = (Complex64::new(t, 0.0) - zc).inv();
        let mut acc = w;
        for _ in 0..n {
            acc *= w;
        }
        (pref * acc).re
    };
    let dt = step(half_width, samples);
    let mut vals = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = -half_width + i as f64 * dt;
        let gv = g(t);
        let v = if p.is_infinite() {
            if gv >= 0.0 {
                1.0
            } else {
                -1.0
            }
        } else {
            gv.abs().powf(q - 1.0) * gv.signum()
        };
        vals.push(v);
    }

    // jumps (p = inf) / kernel zeros: t = x + y tan(phi_k)
    let beta = alpha + f64::from(n) * FRAC_PI_2;
    let jumps: Vec<f64> = kink_points(beta, n, -FRAC_PI_2, FRAC_PI_2)
        .into_iter()
        .map(|phi| z.re() + z.im() * phi.tan())
        .collect();

    let d = BoundaryDensity::from_samples(half_width, vals, *p)?.with_jumps(jumps);
    Ok(if p.is_infinite() { d } else { d.normalized() })
}

/// Report of one sharpness run (also the JSON payload shape).
#[derive(Debug, Clone, Copy)]
pub struct SharpnessReport {
    /// Attained normalized value (Im z)^{n+1/p} |Re{e^{i alpha} f^{(n)}(z)}| / ||u||_p.
    pub lhs: f64,
    /// The bound K_{n,p}(alpha).
    pub rhs: f64,
    pub ratio: f64,
    pub ok: bool,
    pub tail_bound: f64,
}

/// Build the extremal density at z = i, push it through the Schwarz integral
/// and compare with K_{n,p}(alpha). The attained value must never exceed the
/// bound (up to 1e-6 relative) and approaches it as T and N grow.
pub fn sharpness_ratio(
    n: u32,
    p: &ExponentP,
    alpha: f64,
    half_width: f64,
    samples: usize,
    cfg: &QuadratureConfig,
) -> Result<SharpnessReport> {
    let z = HalfPlanePoint::new(0.0, 1.0)?;
    let u = extremal_density(n, p, alpha, z, half_width, samples)?;
    density_report(&u, n, alpha, cfg)
}

/// The same report for an arbitrary boundary density, evaluated at z = i.
pub fn density_report(
    u: &BoundaryDensity,
    n: u32,
    alpha: f64,
    cfg: &QuadratureConfig,
) -> Result<SharpnessReport> {
    let z = HalfPlanePoint::new(0.0, 1.0)?;
    let eval = schwarz_derivative(u, n, z, cfg)?;
    let attained = (Complex64::from_polar(1.0, alpha) * eval.value).re.abs();
    // Im z = 1, so the (Im z)^{n + 1/p} factor is 1.
    let lhs = attained / u.norm_p();
    let rhs = k_alpha_eval(n, u.exponent(), alpha, cfg)?.ln_value.exp();
    Ok(SharpnessReport {
        lhs,
        rhs,
        ratio: lhs / rhs,
        ok: lhs <= rhs * (1.0 + 1e-6),
        tail_bound: eval.tail_bound,
    })
}

/// Sharp constant of the unit-disk analogue: C_{n,p} = 2^{n + 1/p} K_{n,p}.
pub fn disk_constant(n: u32, p: &ExponentP, cfg: &QuadratureConfig) -> Result<f64> {
    let k = k_sharp(&ConstantQuery::new(n, *p), cfg)?;
    Ok(2f64.powf(f64::from(n) + p.recip()) * k.value)
}

/// Same in log space, with the underlying constant attached.
pub fn disk_constant_ln(n: u32, p: &ExponentP, cfg: &QuadratureConfig) -> Result<(f64, ConstantResult)> {
    let k = k_sharp(&ConstantQuery::new(n, *p), cfg)?;
    Ok(((f64::from(n) + p.recip()) * std::f64::consts::LN_2 + k.ln_value, k))
}

/// A real trigonometric polynomial a_0 + sum a_k cos kt + b_k sin kt on the circle.
#[derive(Debug, Clone, Default)]
pub struct TrigPoly {
    /// cos coefficients; index k holds the coefficient of cos(kt), index 0 the constant.
    pub cos: Vec<f64>,
    /// sin coefficients; index k holds the coefficient of sin(kt) (index 0 unused).
    pub sin: Vec<f64>,
}

impl TrigPoly {
    pub fn constant(c: f64) -> Self {
        TrigPoly {
            cos: vec![c],
            sin: vec![],
        }
    }

    pub fn cosine(k: u32, amp: f64) -> Self {
        let mut cos = vec![0.0; k as usize + 1];
        cos[k as usize] = amp;
        TrigPoly { cos, sin: vec![] }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for (k, a) in self.cos.iter().enumerate() {
            acc += a * (k as f64 * t).cos();
        }
        for (k, b) in self.sin.iter().enumerate().skip(1) {
            acc += b * (k as f64 * t).sin();
        }
        acc
    }

    /// Unnormalized circle L^p norm: (int_0^{2pi} |u|^p dt)^{1/p}, sup for p = inf.
    fn norm(&self, p: &ExponentP, cfg: &QuadratureConfig) -> Result<f64> {
        match *p {
            ExponentP::Infinite => {
                let grid = 4096;
                let mut best = 0.0f64;
                let mut best_t = 0.0;
                for i in 0..grid {
                    let t = 2.0 * PI * i as f64 / grid as f64;
                    let v = self.eval(t).abs();
                    if v > best {
                        best = v;
                        best_t = t;
                    }
                }
                let h = 2.0 * PI / grid as f64;
                let r = crate::search::grid_golden_max(
                    |t| Ok(self.eval(t).abs()),
                    best_t - h,
                    best_t + h,
                    16,
                    1e-12,
                    0.0,
                )?;
                Ok(r.value.max(best))
            }
            _ => {
                let pv = p.value();
                let r = integrate_panels(
                    |t| self.eval(t).abs().powf(pv),
                    0.0,
                    2.0 * PI,
                    &[],
                    cfg,
                )?;
                Ok(r.value.powf(1.0 / pv))
            }
        }
    }
}

/// Report of one disk verification (same JSON keys as the half-plane report;
/// tail_bound is 0 since the circle integral is not truncated).
#[derive(Debug, Clone, Copy)]
pub struct DiskReport {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub ok: bool,
    pub tail_bound: f64,
}

/// Check |f^{(n)}(z)| <= C_{n,p}/(1-|z|^2)^{n+1/p} ||u||_p for a trig-poly
/// boundary density on the unit circle, building f from the Schwarz kernel.
pub fn disk_verify(
    u: &TrigPoly,
    n: u32,
    p: &ExponentP,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<DiskReport> {
    let r2 = z.norm_sqr();
    if !(r2 < 1.0) {
        return Err(Error::domain(format!(
            "disk_verify needs |z| < 1, got |z| = {}",
            r2.sqrt()
        )));
    }
    // kernel: (e^{it}+z)/(e^{it}-z) for n = 0, else 2 n! e^{it}/(e^{it}-z)^{n+1}
    let deriv = |t: f64| -> Complex64 {
        let e = Complex64::from_polar(1.0, t);
        if n == 0 {
            (e + z) / (e - z)
        } else {
            let d = (e - z).inv();
            let mut acc = d;
            for _ in 0..n {
                acc *= d;
            }
            2.0 * factorial(u64::from(n)) * e * acc
        }
    };
    let re = integrate_panels(|t| (u.eval(t) * deriv(t)).re, 0.0, 2.0 * PI, &[], cfg)?;
    let im = integrate_panels(|t| (u.eval(t) * deriv(t)).im, 0.0, 2.0 * PI, &[], cfg)?;
    let fn_z = Complex64::new(re.value, im.value) / (2.0 * PI);
    let lhs = fn_z.norm();

    let c_np = disk_constant(n, p, cfg)?;
    let norm = u.norm(p, cfg)?;
    let rhs = c_np / (1.0 - r2).powf(f64::from(n) + p.recip()) * norm;
    Ok(DiskReport {
        lhs,
        rhs,
        ratio: if rhs > 0.0 { lhs / rhs } else { f64::INFINITY },
        ok: lhs <= rhs * (1.0 + 1e-9),
        tail_bound: 0.0,
    })
}
