//! Γ at integers and half-integers, and unit-sphere volumes.

use core::f64::consts::PI;
use num_traits::Float;

/// `Γ(twice / 2)` for `twice ≥ 1`, by exact recursion from `Γ(1) = 1` or
/// `Γ(1/2) = √π`.
pub fn gamma_half(twice: u32) -> f64 {
    assert!(twice >= 1, "Γ has a pole at 0");
    let (mut x, mut acc) = if twice % 2 == 0 { (1.0, 1.0) } else { (0.5, PI.sqrt()) };
    let target = f64::from(twice) / 2.0;
    while x < target {
        acc *= x;
        x += 1.0;
    }
    acc
}

/// Volume of the round unit sphere `Sⁿ ⊂ ℝⁿ⁺¹`, `2π^{(n+1)/2} / Γ((n+1)/2)`.
pub fn unit_sphere_volume(n: u32) -> f64 {
    let half = (n + 1) / 2;
    let mut pi_pow = PI.powi(half as i32);
    if (n + 1) % 2 == 1 {
        pi_pow *= PI.sqrt();
    }
    2.0 * pi_pow / gamma_half(n + 1)
}
