//! Tabulated antiderivatives of `1/Θ`.
//!
//! Each entry is a rational combination of a few elementary basis functions,
//! stored symbolically so that a row can be printed, perturbed and re-checked.
//! In the hyperbolic rows every `sin`, `cos`, `tan`, `cot` becomes the
//! corresponding hyperbolic function; the coefficients are stored as written.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Float;

use crate::space::{Family, SpaceModel, TrigKind};

/// Basis functions of `r`. `s`, `c` stand for `sin`/`cos` or `sinh`/`cosh`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `s(r)^{-n}`
    RecipSinPow(u32),
    /// `c(r)^{-n}`
    RecipCosPow(u32),
    /// `log(s(r)/c(r))`
    LogTan,
    /// `s(r/2)^{-2}`
    RecipSinHalfSq,
    /// `c(r/2)^{-2}`
    RecipCosHalfSq,
    /// `log(s(r/2)/c(r/2))`
    LogTanHalf,
    /// `c(r)/s(r)`
    Cot,
    /// `c(r)/s(r)^3`
    CotRecipSinSq,
    /// `log r` (flat rows)
    Log,
    /// `r^n` (flat rows)
    Pow(i32),
}

fn sc(trig: TrigKind, x: f64) -> (f64, f64) {
    match trig {
        TrigKind::Circular => (x.sin(), x.cos()),
        TrigKind::Hyperbolic => (x.sinh(), x.cosh()),
        TrigKind::Polynomial => (x, 1.0),
    }
}

impl Basis {
    pub fn eval(self, trig: TrigKind, r: f64) -> f64 {
        match self {
            Basis::Log => r.ln(),
            Basis::Pow(n) => r.powi(n),
            Basis::RecipSinPow(n) => sc(trig, r).0.powi(-(n as i32)),
            Basis::RecipCosPow(n) => sc(trig, r).1.powi(-(n as i32)),
            Basis::LogTan => {
                let (s, c) = sc(trig, r);
                (s / c).ln()
            }
            Basis::RecipSinHalfSq => sc(trig, 0.5 * r).0.powi(-2),
            Basis::RecipCosHalfSq => sc(trig, 0.5 * r).1.powi(-2),
            Basis::LogTanHalf => {
                let (s, c) = sc(trig, 0.5 * r);
                (s / c).ln()
            }
            Basis::Cot => {
                let (s, c) = sc(trig, r);
                c / s
            }
            Basis::CotRecipSinSq => {
                let (s, c) = sc(trig, r);
                c / (s * s * s)
            }
        }
    }

    /// `d/dr` of [`eval`](Self::eval), from `s′ = c` and `c′ = ∓s`.
    pub fn derivative(self, trig: TrigKind, r: f64) -> f64 {
        // c′ = sgn·s
        let sgn = match trig {
            TrigKind::Circular => -1.0,
            TrigKind::Hyperbolic => 1.0,
            TrigKind::Polynomial => 0.0,
        };
        match self {
            Basis::Log => r.recip(),
            Basis::Pow(n) => f64::from(n) * r.powi(n - 1),
            Basis::RecipSinPow(n) => {
                let (s, c) = sc(trig, r);
                -f64::from(n) * c * s.powi(-(n as i32) - 1)
            }
            Basis::RecipCosPow(n) => {
                let (s, c) = sc(trig, r);
                -f64::from(n) * sgn * s * c.powi(-(n as i32) - 1)
            }
            Basis::LogTan => {
                let (s, c) = sc(trig, r);
                (c * c - sgn * s * s) / (s * c)
            }
            Basis::RecipSinHalfSq => {
                let (s, c) = sc(trig, 0.5 * r);
                -c / (s * s * s)
            }
            Basis::RecipCosHalfSq => {
                let (s, c) = sc(trig, 0.5 * r);
                -sgn * s / (c * c * c)
            }
            Basis::LogTanHalf => {
                let (s, c) = sc(trig, 0.5 * r);
                0.5 * (c * c - sgn * s * s) / (s * c)
            }
            Basis::Cot => {
                let (s, c) = sc(trig, r);
                (sgn * s * s - c * c) / (s * s)
            }
            Basis::CotRecipSinSq => {
                let (s, c) = sc(trig, r);
                let s2 = s * s;
                sgn / s2 - 3.0 * c * c / (s2 * s2)
            }
        }
    }

    fn write(self, trig: TrigKind, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = if trig == TrigKind::Hyperbolic { "h" } else { "" };
        match self {
            Basis::RecipSinPow(n) => write!(f, "sin{h}(r)^-{n}"),
            Basis::RecipCosPow(n) => write!(f, "cos{h}(r)^-{n}"),
            Basis::LogTan => write!(f, "log(tan{h}(r))"),
            Basis::RecipSinHalfSq => write!(f, "sin{h}(r/2)^-2"),
            Basis::RecipCosHalfSq => write!(f, "cos{h}(r/2)^-2"),
            Basis::LogTanHalf => write!(f, "log(tan{h}(r/2))"),
            Basis::Cot => write!(f, "cot{h}(r)"),
            Basis::CotRecipSinSq => write!(f, "cot{h}(r)*sin{h}(r)^-2"),
            Basis::Log => f.write_str("log(r)"),
            Basis::Pow(n) => write!(f, "r^{n}"),
        }
    }
}

/// `num/den · basis`
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub num: i32,
    pub den: u32,
    pub basis: Basis,
}

impl Term {
    pub fn coefficient(&self) -> f64 {
        f64::from(self.num) / f64::from(self.den)
    }
}

/// `scale · Σ terms`, with an exact rational scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub trig: TrigKind,
    pub scale: (i32, u32),
    pub terms: Vec<Term>,
}

impl ClosedForm {
    pub fn eval(&self, r: f64) -> f64 {
        let sum: f64 = self
            .terms
            .iter()
            .map(|t| t.coefficient() * t.basis.eval(self.trig, r))
            .sum();
        f64::from(self.scale.0) / f64::from(self.scale.1) * sum
    }

    /// Term-by-term analytic `d/dr`.
    pub fn derivative(&self, r: f64) -> f64 {
        let sum: f64 = self
            .terms
            .iter()
            .map(|t| t.coefficient() * t.basis.derivative(self.trig, r))
            .sum();
        f64::from(self.scale.0) / f64::from(self.scale.1) * sum
    }

    /// Largest absolute term, used as the cancellation scale of [`eval`](Self::eval).
    pub fn magnitude(&self, r: f64) -> f64 {
        let s = (f64::from(self.scale.0) / f64::from(self.scale.1)).abs();
        self.terms
            .iter()
            .map(|t| (t.coefficient() * t.basis.eval(self.trig, r)).abs() * s)
            .fold(0.0, f64::max)
    }

    pub fn with_term_negated(&self, i: usize) -> ClosedForm {
        let mut out = self.clone();
        out.terms[i].num = -out.terms[i].num;
        out
    }

    pub fn with_scale(&self, num: i32, den: u32) -> ClosedForm {
        let (n0, d0) = self.scale;
        let (n, d) = (i64::from(n0) * i64::from(num), i64::from(d0) * i64::from(den));
        let g = gcd(n.unsigned_abs(), d.unsigned_abs()).max(1) as i64;
        let mut out = self.clone();
        out.scale = ((n / g) as i32, (d / g) as u32);
        out
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sn, sd) = self.scale;
        let scaled = (sn, sd) != (1, 1);
        if scaled {
            if sd == 1 {
                write!(f, "{sn}*(")?;
            } else {
                write!(f, "{sn}/{sd}*(")?;
            }
        }
        for (i, t) in self.terms.iter().enumerate() {
            let sign = if t.num < 0 { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            let sign_sep = if i > 0 { " " } else { "" };
            write!(f, "{sep}{sign}{sign_sep}")?;
            let n = t.num.unsigned_abs();
            match (n, t.den) {
                (1, 1) => {}
                (n, 1) => write!(f, "{n}*")?,
                (n, d) => write!(f, "{n}/{d}*")?,
            }
            t.basis.write(self.trig, f)?;
        }
        if scaled {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn t(num: i32, den: u32, basis: Basis) -> Term {
    Term { num, den, basis }
}

/// The tabulated antiderivative of `1/Θ` for `model`, if it has one.
///
/// Covered: spheres of dimension 2 to 5, `ℂP²`–`ℂP⁴`, `ℍP²`–`ℍP⁴`, `𝕆P²`,
/// the hyperbolic duals of all of these, and flat space of any dimension.
pub fn closed_form(model: SpaceModel) -> Option<ClosedForm> {
    use Basis::*;
    use Family::*;
    let rs = RecipSinPow;
    let rc = RecipCosPow;
    let m = model.dimension();
    let k = model.projective_index().unwrap_or(0);
    let trig = model.density_profile().trig_kind;
    let (scale, terms) = match (model.family(), m, k) {
        (Euclidean, 2, _) => ((1, 1), vec![t(1, 1, Log)]),
        (Euclidean, m, _) => ((1, 1), vec![t(-1, m - 2, Pow(2 - m as i32))]),

        (Sphere, 2, _) => ((1, 1), vec![t(1, 1, LogTanHalf)]),
        (Sphere, 3, _) => ((1, 1), vec![t(-1, 1, Cot)]),
        (Sphere, 4, _) => (
            (1, 1),
            vec![t(-1, 8, RecipSinHalfSq), t(1, 8, RecipCosHalfSq), t(1, 2, LogTanHalf)],
        ),
        (Sphere, 5, _) => ((1, 1), vec![t(-2, 3, Cot), t(-1, 3, CotRecipSinSq)]),
        (ComplexProjective, _, 2) => ((1, 1), vec![t(-1, 2, rs(2)), t(1, 1, LogTan)]),
        (ComplexProjective, _, 3) => (
            (1, 1),
            vec![t(-1, 4, rs(4)), t(-1, 2, rs(2)), t(1, 1, LogTan)],
        ),
        (ComplexProjective, _, 4) => (
            (1, 1),
            vec![t(-1, 6, rs(6)), t(-1, 4, rs(4)), t(-1, 2, rs(2)), t(1, 1, LogTan)],
        ),
        (QuaternionProjective, _, 2) => (
            (1, 2),
            vec![
                t(-1, 3, rs(6)),
                t(-1, 1, rs(4)),
                t(-3, 1, rs(2)),
                t(1, 1, rc(2)),
                t(8, 1, LogTan),
            ],
        ),
        (QuaternionProjective, _, 3) => (
            (1, 2),
            vec![
                t(-1, 5, rs(10)),
                t(-1, 2, rs(8)),
                t(-1, 1, rs(6)),
                t(-2, 1, rs(4)),
                t(-5, 1, rs(2)),
                t(1, 1, rc(2)),
                t(12, 1, LogTan),
            ],
        ),
        (QuaternionProjective, _, 4) => (
            (1, 2),
            vec![
                t(-1, 7, rs(14)),
                t(-1, 3, rs(12)),
                t(-3, 5, rs(10)),
                t(-1, 1, rs(8)),
                t(-5, 3, rs(6)),
                t(-3, 1, rs(4)),
                t(-7, 1, rs(2)),
                t(1, 1, rc(2)),
                t(16, 1, LogTan),
            ],
        ),
        (OctonionPlane, _, _) => (
            (1, 1),
            vec![
                t(-1, 14, rs(14)),
                t(-1, 3, rs(12)),
                t(-1, 1, rs(10)),
                t(-5, 2, rs(8)),
                t(-35, 6, rs(6)),
                t(-14, 1, rs(4)),
                t(-42, 1, rs(2)),
                t(1, 6, rc(6)),
                t(2, 1, rc(4)),
                t(18, 1, rc(2)),
                t(120, 1, LogTan),
            ],
        ),

        (HyperbolicSpace, 2, _) => ((1, 1), vec![t(1, 1, LogTanHalf)]),
        (HyperbolicSpace, 3, _) => ((1, 1), vec![t(-1, 1, Cot)]),
        (HyperbolicSpace, 4, _) => (
            (1, 1),
            vec![t(-1, 8, RecipSinHalfSq), t(-1, 8, RecipCosHalfSq), t(-1, 2, LogTanHalf)],
        ),
        (HyperbolicSpace, 5, _) => ((1, 1), vec![t(2, 3, Cot), t(-1, 3, CotRecipSinSq)]),
        (ComplexHyperbolic, _, 2) => ((1, 1), vec![t(-1, 2, rs(2)), t(-1, 1, LogTan)]),
        (ComplexHyperbolic, _, 3) => (
            (1, 1),
            vec![t(-1, 4, rs(4)), t(1, 2, rs(2)), t(1, 1, LogTan)],
        ),
        (ComplexHyperbolic, _, 4) => (
            (1, 1),
            vec![t(-1, 6, rs(6)), t(1, 4, rs(4)), t(-1, 2, rs(2)), t(-1, 1, LogTan)],
        ),
        (QuaternionHyperbolic, _, 2) => (
            (1, 2),
            vec![
                t(-1, 3, rs(6)),
                t(1, 1, rs(4)),
                t(-3, 1, rs(2)),
                t(-1, 1, rc(2)),
                t(-8, 1, LogTan),
            ],
        ),
        (QuaternionHyperbolic, _, 3) => (
            (1, 1),
            vec![
                t(-1, 10, rs(10)),
                t(1, 4, rs(8)),
                t(-1, 2, rs(6)),
                t(1, 1, rs(4)),
                t(-5, 2, rs(2)),
                t(-1, 2, rc(2)),
                t(-6, 1, LogTan),
            ],
        ),
        (QuaternionHyperbolic, _, 4) => (
            (1, 2),
            vec![
                t(-1, 7, rs(14)),
                t(1, 3, rs(12)),
                t(-3, 5, rs(10)),
                t(1, 1, rs(8)),
                t(-5, 3, rs(6)),
                t(3, 1, rs(4)),
                t(-7, 1, rs(2)),
                t(-1, 1, rc(2)),
                t(-16, 1, LogTan),
            ],
        ),
        (OctonionHyperbolic, _, _) => (
            (1, 1),
            vec![
                t(-1, 14, rs(14)),
                t(1, 3, rs(12)),
                t(-1, 1, rs(10)),
                t(5, 2, rs(8)),
                t(-35, 6, rs(6)),
                t(14, 1, rs(4)),
                t(-42, 1, rs(2)),
                t(-1, 6, rc(6)),
                t(-2, 1, rc(4)),
                t(-18, 1, rc(2)),
                t(-120, 1, LogTan),
            ],
        ),
        _ => return None,
    };
    Some(ClosedForm { trig, scale, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use approx::assert_relative_eq;

    fn m(id: &str) -> SpaceModel {
        id.parse().unwrap()
    }

    #[test]
    fn coverage() {
        let covered = [
            "S2", "S3", "S4", "S5", "CP2", "CP3", "CP4", "HP2", "HP3", "HP4", "OP2", "hS2", "hS3",
            "hS4", "hS5", "hCP2", "hCP3", "hCP4", "hHP2", "hHP3", "hHP4", "hOP2", "E2", "E3",
            "E7",
        ];
        for id in covered {
            assert!(closed_form(m(id)).is_some(), "{id}");
        }
        for id in ["S6", "S9", "CP1", "CP5", "HP1", "hS6", "hCP1"] {
            assert!(closed_form(m(id)).is_none(), "{id}");
        }
    }

    #[test]
    fn basis_derivatives_match_central_differences() {
        use Basis::*;
        let all = [
            RecipSinPow(1),
            RecipSinPow(6),
            RecipCosPow(2),
            RecipCosPow(5),
            LogTan,
            RecipSinHalfSq,
            RecipCosHalfSq,
            LogTanHalf,
            Cot,
            CotRecipSinSq,
            Log,
            Pow(-3),
            Pow(2),
        ];
        let h = 1e-5;
        for trig in [TrigKind::Circular, TrigKind::Hyperbolic, TrigKind::Polynomial] {
            for b in all {
                for r in [0.3, 0.7, 1.2] {
                    let fd = |h: f64| (b.eval(trig, r + h) - b.eval(trig, r - h)) / (2.0 * h);
                    let richardson = (4.0 * fd(h) - fd(2.0 * h)) / 3.0;
                    let exact = b.derivative(trig, r);
                    assert_relative_eq!(exact, richardson, max_relative = 1e-8, epsilon = 1e-8);
                }
            }
        }
    }

    #[test]
    fn analytic_derivative_is_phi1() {
        for id in ["S2", "S5", "CP3", "HP4", "OP2", "hS4", "hCP4", "hHP3", "hOP2", "E2", "E5"] {
            let model = m(id);
            let cf = closed_form(model).unwrap();
            let scale = cf.scale.0.abs() as f64 / cf.scale.1 as f64;
            for r in crate::harmonic::verification_grid(model) {
                let phi1 = crate::harmonic::phi1(model, r).unwrap();
                // Relative to the largest term, since the terms cancel at large r.
                let size = cf
                    .terms
                    .iter()
                    .map(|t| (t.coefficient() * t.basis.derivative(cf.trig, r)).abs() * scale)
                    .fold(phi1, f64::max);
                let gap = (cf.derivative(r) - phi1).abs();
                assert!(gap <= 1e-13 * size, "{id} r={r}: {gap:e} vs {size:e}");
            }
        }
    }

    #[test]
    fn printed_forms() {
        assert_eq!(closed_form(m("S3")).unwrap().to_string(), "-cot(r)");
        assert_eq!(
            closed_form(m("hCP2")).unwrap().to_string(),
            "-1/2*sinh(r)^-2 - log(tanh(r))"
        );
        assert_eq!(
            closed_form(m("HP2")).unwrap().to_string(),
            "1/2*(-1/3*sin(r)^-6 - sin(r)^-4 - 3*sin(r)^-2 + cos(r)^-2 + 8*log(tan(r)))"
        );
        assert_eq!(closed_form(m("E4")).unwrap().to_string(), "-1/2*r^-2");
    }

    #[test]
    fn direct_values() {
        use core::f64::consts::FRAC_PI_2;
        assert_eq!(closed_form(m("S3")).unwrap().eval(FRAC_PI_2).abs() < 1e-16, true);
        assert!(closed_form(m("S2")).unwrap().eval(FRAC_PI_2).abs() < 1e-15);
        // -coth(1), 30-digit reference
        assert_relative_eq!(
            closed_form(m("hS3")).unwrap().eval(1.0),
            -1.313_035_285_499_331_303_636_161_246_93,
            max_relative = 1e-15
        );
    }

    #[test]
    fn rescaling_reduces() {
        let cf = closed_form(m("HP2")).unwrap();
        assert_eq!(cf.with_scale(2, 1).scale, (1, 1));
        assert_eq!(cf.with_scale(-4, 3).scale, (-2, 3));
        assert_eq!(cf.with_term_negated(0).terms[0].num, 1);
    }
}
