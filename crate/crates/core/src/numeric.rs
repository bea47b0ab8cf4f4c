//! Quadrature and finite-difference kernels.
//!
//! [`integrate`] is a globally adaptive 15-point Gauss–Kronrod scheme. Panels
//! are bisected worst-first; near an open endpoint this produces a geometric
//! sequence of shrinking panels, which resolves integrable power-law blowup and
//! exposes non-integrable blowup as [`Error::NonConvergence`]. No abscissa is
//! ever placed on an open endpoint.

use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{Error, Result};

/// Default absolute quadrature tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Panel budget. Never below 1000 so that divergence is declared only after a
/// deterministic amount of refinement.
pub const DEFAULT_MAX_PANELS: usize = 2000;

/// A real interval with independently open or closed ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub open_lo: bool,
    pub open_hi: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, open_lo: bool, open_hi: bool) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || !(lo < hi) {
            return Err(Error::InvalidArgument("interval requires lo < hi"));
        }
        Ok(Interval {
            lo,
            hi,
            open_lo,
            open_hi,
        })
    }

    pub fn open(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.open_lo { x > self.lo } else { x >= self.lo };
        let below = if self.open_hi { x < self.hi } else { x <= self.hi };
        above && below
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub(crate) fn check(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::DomainViolation {
                value: x,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error estimate, never negative.
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    pub tol: f64,
    pub max_panels: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        IntegrateOptions {
            tol: DEFAULT_TOL,
            max_panels: DEFAULT_MAX_PANELS,
        }
    }
}

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    magnitude: f64,
    /// Bisection would put a node on (or past) an open endpoint.
    frozen: bool,
}

fn nodes_clear(iv: &Interval, a: f64, b: f64) -> bool {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    if !(a < c && c < b) {
        return false;
    }
    let left = c - h * XGK[0];
    let right = c + h * XGK[0];
    let lo_ok = if iv.open_lo { left > iv.lo } else { left >= iv.lo };
    let hi_ok = if iv.open_hi { right < iv.hi } else { right <= iv.hi };
    lo_ok && hi_ok && left < right
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut res_k = WGK[7] * fc;
    let mut res_g = WG[3] * fc;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * h;
    res_abs *= h.abs();
    res_asc *= h.abs();
    let mut error = ((res_k - res_g) * h).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.is_finite() || !error.is_finite() {
        error = f64::INFINITY;
    }
    Panel {
        a,
        b,
        value,
        error,
        magnitude: res_abs,
        frozen: false,
    }
}

/// `∫_iv f` to absolute tolerance `tol`, with the default panel budget.
pub fn integrate<F: Fn(f64) -> f64>(f: F, iv: Interval, tol: f64) -> Result<QuadratureResult> {
    integrate_with(
        f,
        iv,
        IntegrateOptions {
            tol,
            ..IntegrateOptions::default()
        },
    )
}

/// Adaptive integration over a finite interval.
///
/// Convergence is declared when the summed panel error is below
/// `max(tol, 100·ε·∫|f|)`; the second term is the floating-point floor and
/// only matters for integrals whose magnitude exceeds `tol/ε`.
pub fn integrate_with<F: Fn(f64) -> f64>(
    f: F,
    iv: Interval,
    opts: IntegrateOptions,
) -> Result<QuadratureResult> {
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    if !iv.lo.is_finite() || !iv.hi.is_finite() {
        return Err(Error::InvalidArgument("integration interval must be finite"));
    }
    if !nodes_clear(&iv, iv.lo, iv.hi) {
        return Err(Error::InvalidArgument("interval too narrow to integrate"));
    }
    let max_panels = opts.max_panels.max(1);
    let mut panels: Vec<Panel> = Vec::with_capacity(64);
    panels.push(gauss_kronrod(&f, iv.lo, iv.hi));
    let mut evaluations = 15;

    loop {
        let (mut value, mut error, mut magnitude) = (0.0, 0.0, 0.0);
        for p in &panels {
            value += p.value;
            error += p.error;
            magnitude += p.magnitude;
        }
        let target = opts.tol.max(100.0 * f64::EPSILON * magnitude);
        if error <= target && value.is_finite() {
            return Ok(QuadratureResult {
                value,
                error_estimate: error,
                evaluations,
            });
        }

        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.frozen)
            .max_by(|(_, x), (_, y)| x.error.total_cmp(&y.error))
            .map(|(i, _)| i);
        let Some(worst) = worst.filter(|_| panels.len() < max_panels) else {
            return Err(Error::NonConvergence {
                value,
                error_estimate: error,
                panels: panels.len(),
            });
        };

        let Panel { a, b, .. } = panels[worst];
        let m = 0.5 * (a + b);
        if !(nodes_clear(&iv, a, m) && nodes_clear(&iv, m, b)) {
            panels[worst].frozen = true;
            continue;
        }
        panels[worst] = gauss_kronrod(&f, a, m);
        panels.push(gauss_kronrod(&f, m, b));
        evaluations += 30;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeOrder {
    First,
    Second,
}

/// Step actually used by [`derivative`] for a given hint.
pub fn derivative_step(r: f64, order: DerivativeOrder, step_hint: f64) -> f64 {
    let scale = r.abs().max(1.0);
    let floor = match order {
        DerivativeOrder::First => f64::EPSILON.cbrt() * scale,
        DerivativeOrder::Second => f64::EPSILON.sqrt().sqrt() * scale,
    };
    let h = if step_hint.is_finite() { step_hint.max(floor) } else { floor };
    // Make r + h exactly representable so the stencil is symmetric.
    (r + h) - r
}

/// Central-difference derivative of order one or two, O(h²) accurate.
///
/// Every stencil point must lie inside `domain`.
pub fn derivative<F: Fn(f64) -> f64>(
    f: F,
    r: f64,
    order: DerivativeOrder,
    step_hint: f64,
    domain: &Interval,
) -> Result<f64> {
    let h = derivative_step(r, order, step_hint);
    domain.check(r - h)?;
    domain.check(r + h)?;
    Ok(match order {
        DerivativeOrder::First => (f(r + h) - f(r - h)) / (2.0 * h),
        DerivativeOrder::Second => (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h),
    })
}
