//! Closed forms for the flat quotients.

use num_traits::Float;

use crate::error::{Error, Result};

/// Injectivity radius of the open Klein bottle `ℝ²/⟨(x, y) ↦ (x + 1, −y)⟩` at
/// `(0, a)`: `½·min(2, √(1 + 4a²))`. Even in `a`.
pub fn klein_injectivity_closed(a: f64) -> f64 {
    0.5 * (1.0 + 4.0 * a * a).sqrt().min(2.0)
}

/// The open region `−1 < x < 1`, `1 + 2x + 4ay > 0`, `1 − 2x + 4ay > 0` on which
/// the distance to `(0, a)` in the Klein bottle is smooth.
pub fn klein_fundamental_region(a: f64, q: [f64; 2]) -> bool {
    let [x, y] = q;
    -1.0 < x && x < 1.0 && 1.0 + 2.0 * x + 4.0 * a * y > 0.0 && 1.0 - 2.0 * x + 4.0 * a * y > 0.0
}

/// `log(x² + y²)` on the shifted unit square `(−δ, 1 − δ)²` minus the origin.
///
/// This is a harmonic function on a fundamental domain of `ℝ²/ℤ²`. It is radial
/// about the image of the origin only when the square is centred there.
pub fn flat_radial_extension(delta: f64, q: [f64; 2]) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument("delta must lie in (0, 1)"));
    }
    let (lo, hi) = (-delta, 1.0 - delta);
    for c in q {
        if !(c > lo && c < hi) {
            return Err(Error::DomainViolation { value: c, lo, hi });
        }
    }
    let s = q[0] * q[0] + q[1] * q[1];
    if s == 0.0 {
        return Err(Error::DomainViolation {
            value: 0.0,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    Ok(s.ln())
}

/// Five-point Laplacian `Σ f(q ± h eᵢ) − 4 f(q)` divided by `h²`.
pub fn five_point_laplacian<F: Fn([f64; 2]) -> Result<f64>>(f: F, q: [f64; 2], h: f64) -> Result<f64> {
    let [x, y] = q;
    let centre = f(q)?;
    let sum = f([x + h, y])? + f([x - h, y])? + f([x, y + h])? + f([x, y - h])?;
    Ok((sum - 4.0 * centre) / (h * h))
}

/// Five-point Laplacian at spacings `h` and `2h` combined by one Richardson
/// step, cancelling the `O(h²)` truncation term.
pub fn harmonicity_residual<F: Fn([f64; 2]) -> Result<f64>>(f: F, q: [f64; 2], h: f64) -> Result<f64> {
    let fine = five_point_laplacian(&f, q, h)?;
    let coarse = five_point_laplacian(&f, q, 2.0 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

fn reduce(c: f64, delta: f64) -> f64 {
    // Representative of c mod 1 in [−δ, 1 − δ).
    c - (c + delta).floor()
}

/// How far [`flat_radial_extension`] is from being invariant under the two
/// coordinate reflections fixing the origin, with reflected points reduced mod
/// `ℤ²` back into `(−δ, 1 − δ)²`.
///
/// Returns the largest change over a `resolution × resolution` grid of cell
/// centres, skipping points whose image lands on the square's boundary. A
/// radial function must give zero.
pub fn radial_symmetry_defect(delta: f64, resolution: usize) -> Result<f64> {
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be positive"));
    }
    let h = 1.0 / resolution as f64;
    let mut worst: f64 = 0.0;
    for i in 0..resolution {
        for j in 0..resolution {
            let q = [-delta + (i as f64 + 0.5) * h, -delta + (j as f64 + 0.5) * h];
            let Ok(v) = flat_radial_extension(delta, q) else { continue };
            for image in [[-q[0], q[1]], [q[0], -q[1]]] {
                let r = [reduce(image[0], delta), reduce(image[1], delta)];
                if let Ok(w) = flat_radial_extension(delta, r) {
                    worst = worst.max((v - w).abs());
                }
            }
        }
    }
    Ok(worst)
}
