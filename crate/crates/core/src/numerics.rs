//! Grid-bracketed root finding and adaptive Simpson quadrature.

use std::f64::consts::TAU;

use thiserror::Error;

/// Default absolute tolerance for roots and integrals.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default root-scan grid density, in samples per full turn of the domain.
pub const GRID_PER_TURN: usize = 2048;
/// A grid-local minimum of `|f|` below this counts as a (tangential) zero.
pub const TANGENT_THRESHOLD: f64 = 1e-8;
/// Recursion cap for adaptive Simpson.
pub const MAX_DEPTH: u32 = 40;

/// Sign-change brackets whose refined point still has `|f|` above this are poles.
const RESIDUAL_CAP: f64 = 1e-8;
/// Fixed number of initial Simpson panels.
const INITIAL_PANELS: usize = 16;
const FD_STEP: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("root grid needs at least 2 intervals, got {0}")]
    GridTooSmall(usize),
    #[error("invalid interval [{0}, {1}]")]
    InvalidInterval(f64, f64),
    #[error("function is not finite at interval endpoint {0}")]
    NonFiniteEndpoint(f64),
    #[error("integrand is not finite at {0}")]
    NonFiniteSample(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub residual: f64,
}

/// Strictly increasing roots, each with `|f(x)|`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RootList(Vec<Root>);

impl RootList {
    pub fn iter(&self) -> std::slice::Iter<'_, Root> {
        self.0.iter()
    }

    pub fn xs(&self) -> Vec<f64> {
        self.0.iter().map(|r| r.x).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl IntoIterator for RootList {
    type Item = Root;
    type IntoIter = std::vec::IntoIter<Root>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// Grid size for `[a, b]` at the default density (never fewer than 16 intervals).
pub fn default_grid(a: f64, b: f64) -> usize {
    (((b - a).abs() / TAU) * GRID_PER_TURN as f64).ceil().max(16.0) as usize
}

/// Finds the zeros of `f` on the half-open interval `[a, b)`.
///
/// Sign changes between grid points are refined by bisection; sign changes
/// whose refined point does not bring `|f|` down are treated as poles and
/// dropped. Zeros where `f` touches the axis without crossing are picked up
/// at grid-local minima of `|f|`. Non-finite interior samples break the scan.
/// Roots closer than `10 * tol` are merged.
pub fn find_roots<F>(f: F, a: f64, b: f64, grid_n: usize, tol: f64) -> Result<RootList, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if grid_n < 2 {
        return Err(NumericsError::GridTooSmall(grid_n));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(NumericsError::InvalidInterval(a, b));
    }
    let xs: Vec<f64> = (0..=grid_n)
        .map(|i| {
            if i == grid_n {
                b
            } else {
                a + (b - a) * i as f64 / grid_n as f64
            }
        })
        .collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    if !ys[0].is_finite() {
        return Err(NumericsError::NonFiniteEndpoint(a));
    }
    if !ys[grid_n].is_finite() {
        return Err(NumericsError::NonFiniteEndpoint(b));
    }

    let mut found = Vec::new();
    for i in 0..=grid_n {
        let y = ys[i];
        if !y.is_finite() {
            continue;
        }
        if y == 0.0 {
            found.push(Root {
                x: xs[i],
                residual: 0.0,
            });
            continue;
        }
        if i < grid_n && ys[i + 1].is_finite() && y.signum() != ys[i + 1].signum() && ys[i + 1] != 0.0 {
            let x = bisect(&f, xs[i], xs[i + 1], y);
            let residual = f(x).abs();
            if residual < RESIDUAL_CAP {
                found.push(Root { x, residual });
            }
        }
        let left = if i > 0 { ys[i - 1] } else { f64::NAN };
        let right = if i < grid_n { ys[i + 1] } else { f64::NAN };
        let is_local_min =
            (!left.is_finite() || y.abs() <= left.abs()) && (!right.is_finite() || y.abs() <= right.abs());
        let no_crossing =
            (!left.is_finite() || left.signum() == y.signum()) && (!right.is_finite() || right.signum() == y.signum());
        if is_local_min && no_crossing {
            let lo = if i > 0 { xs[i - 1] } else { xs[i] };
            let hi = if i < grid_n { xs[i + 1] } else { xs[i] };
            let x = refine_tangent(&f, lo, hi, xs[i], y.signum());
            let residual = f(x).abs();
            if residual < TANGENT_THRESHOLD {
                found.push(Root { x, residual });
            }
        }
    }

    found.retain(|r| r.x < b - 10.0 * tol);
    found.sort_by(|p, q| p.x.total_cmp(&q.x));
    let mut roots: Vec<Root> = Vec::with_capacity(found.len());
    for root in found {
        match roots.last_mut() {
            Some(last) if root.x - last.x < 10.0 * tol => {
                if root.residual < last.residual {
                    *last = root;
                }
            }
            _ => roots.push(root),
        }
    }
    Ok(RootList(roots))
}

/// Bisects a sign change down to adjacent floating-point values.
fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let lo_sign = f_lo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (flo, fhi) = (f(lo).abs(), f(hi).abs());
    if flo <= fhi {
        lo
    } else {
        hi
    }
}

/// Locates the minimum of `|f|` near a grid point by bisecting the sign of a
/// central-difference slope. Falls back to the grid point when the slope does
/// not bracket.
fn refine_tangent<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, grid_x: f64, sign: f64) -> f64 {
    if lo == hi {
        return grid_x;
    }
    // slope of |f| ~ sign * f'
    let slope = |x: f64| sign * (f(x + FD_STEP) - f(x - FD_STEP));
    let (mut a, mut b) = (lo, hi);
    let (sa, sb) = (slope(a), slope(b));
    if !(sa < 0.0 && sb > 0.0) {
        return grid_x;
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let s = slope(mid);
        if !s.is_finite() {
            return grid_x;
        }
        if s < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let x = 0.5 * (a + b);
    if f(x).abs() <= f(grid_x).abs() {
        x
    } else {
        grid_x
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` (reversed bounds negate).
///
/// The interval is first cut into a fixed number of panels, so the result is
/// a pure function of `(f, a, b, tol)`.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if !a.is_finite() || !b.is_finite() {
        return Err(NumericsError::InvalidInterval(a, b));
    }
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return integrate(f, b, a, tol).map(|v| -v);
    }
    let sample = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(NumericsError::NonFiniteSample(x))
        }
    };
    let panel_tol = tol / INITIAL_PANELS as f64;
    let width = (b - a) / INITIAL_PANELS as f64;
    let mut total = 0.0;
    let mut left = a;
    let mut f_left = sample(a)?;
    for k in 1..=INITIAL_PANELS {
        let right = if k == INITIAL_PANELS { b } else { a + width * k as f64 };
        let f_right = sample(right)?;
        let mid = 0.5 * (left + right);
        let f_mid = sample(mid)?;
        let whole = (right - left) / 6.0 * (f_left + 4.0 * f_mid + f_right);
        total += simpson(
            &sample,
            [left, mid, right],
            [f_left, f_mid, f_right],
            whole,
            panel_tol,
            0,
        )?;
        left = right;
        f_left = f_right;
    }
    Ok(total)
}

fn simpson<S>(sample: &S, x: [f64; 3], y: [f64; 3], whole: f64, tol: f64, depth: u32) -> Result<f64, NumericsError>
where
    S: Fn(f64) -> Result<f64, NumericsError>,
{
    let [a, m, b] = x;
    let [fa, fm, fb] = y;
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = sample(lm)?;
    let frm = sample(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth >= MAX_DEPTH || delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    Ok(simpson(sample, [a, lm, m], [fa, flm, fm], left, tol / 2.0, depth + 1)?
        + simpson(sample, [m, rm, b], [fm, frm, fb], right, tol / 2.0, depth + 1)?)
}
