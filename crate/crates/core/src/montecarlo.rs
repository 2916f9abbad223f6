//! Seeded Monte Carlo area estimates by rejection sampling in a disk.
//!
//! Used to cross-check the quadrature-based areas with membership tests
//! written directly against the curve equations.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polar::{ComplexPoint, PolarCurve};

pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaEstimate {
    pub area: f64,
    /// One standard deviation of the estimate.
    pub sigma: f64,
    pub samples: usize,
    pub hits: usize,
}

impl AreaEstimate {
    /// Whether `value` lies within `k` standard deviations of the estimate.
    pub fn agrees_with(&self, value: f64, k: f64) -> bool {
        (self.area - value).abs() <= k * self.sigma
    }
}

/// Estimates the area of `{z : inside(z)}`, assumed to lie in the disk
/// `|z| ≤ radius`, from `samples` uniform points of that disk.
pub fn estimate_area<F>(inside: F, radius: f64, samples: usize, seed: u64) -> AreaEstimate
where
    F: Fn(ComplexPoint) -> bool,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted = 0;
    let mut hits = 0;
    while accepted < samples {
        let z = Complex64::new(rng.random_range(-radius..radius), rng.random_range(-radius..radius));
        if z.norm_sqr() > radius * radius {
            continue;
        }
        accepted += 1;
        if inside(z) {
            hits += 1;
        }
    }
    let disk = PI * radius * radius;
    let p = hits as f64 / samples.max(1) as f64;
    AreaEstimate {
        area: disk * p,
        sigma: disk * (p * (1.0 - p) / samples.max(1) as f64).sqrt(),
        samples,
        hits,
    }
}

/// Membership in the region bounded by the whole polar graph of `c`, whose
/// period is `period_n·π`: `z = ρe^{iψ}` is inside when some representation
/// `(−1)^n f(ψ + nπ)` of the direction `ψ` reaches at least `ρ`.
pub fn inside_polar_region(c: &PolarCurve, period_n: u32, z: ComplexPoint) -> bool {
    let rho = z.norm();
    let psi = z.im.atan2(z.re);
    (0..2 * period_n).any(|n| {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let r = sign * c.radius_or_nan(psi + n as f64 * PI);
        r >= rho
    })
}
