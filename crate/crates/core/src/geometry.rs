//! Distances between sampled parametric curves.

use num_complex::Complex64;

const REFINE_CANDIDATES: usize = 4;
const GOLDEN_ITERATIONS: usize = 90;

/// A parametric curve `t ↦ z(t)` on `[start, end]`; `None` marks a point
/// where the curve is undefined.
pub struct CurveSampler<'a> {
    eval: &'a dyn Fn(f64) -> Option<Complex64>,
    start: f64,
    end: f64,
    ts: Vec<f64>,
    points: Vec<Option<Complex64>>,
}

impl<'a> CurveSampler<'a> {
    pub fn new(eval: &'a dyn Fn(f64) -> Option<Complex64>, start: f64, end: f64, samples: usize) -> Self {
        let samples = samples.max(2);
        let ts: Vec<f64> = (0..samples)
            .map(|i| start + (end - start) * i as f64 / (samples - 1) as f64)
            .collect();
        let points = ts.iter().map(|&t| eval(t)).collect();
        CurveSampler {
            eval,
            start,
            end,
            ts,
            points,
        }
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.points.iter().flatten().copied()
    }

    /// Distance from `p` to the curve, refined past the sample spacing by a
    /// golden-section search around the closest coarse samples.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        let coarse: Vec<f64> = self
            .points
            .iter()
            .map(|q| q.map_or(f64::INFINITY, |q| (q - p).norm()))
            .collect();
        let n = coarse.len();
        let mut minima: Vec<usize> = (0..n)
            .filter(|&j| {
                coarse[j].is_finite()
                    && (j == 0 || coarse[j] <= coarse[j - 1])
                    && (j + 1 == n || coarse[j] <= coarse[j + 1])
            })
            .collect();
        minima.sort_by(|&a, &b| coarse[a].total_cmp(&coarse[b]));
        minima.truncate(REFINE_CANDIDATES);

        let dist = |t: f64| (self.eval)(t).map_or(f64::INFINITY, |q| (q - p).norm());
        let mut best = minima.first().map_or(f64::INFINITY, |&j| coarse[j]);
        for j in minima {
            let lo = if j > 0 { self.ts[j - 1] } else { self.start };
            let hi = if j + 1 < n { self.ts[j + 1] } else { self.end };
            best = best.min(golden_min(&dist, lo, hi));
        }
        best
    }
}

fn golden_min<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..GOLDEN_ITERATIONS {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    fc.min(fd).min(f(0.5 * (a + b)))
}

/// Largest distance from a sample of `from` to the curve `to`.
pub fn directed_hausdorff(from: &CurveSampler<'_>, to: &CurveSampler<'_>) -> f64 {
    from.points().map(|p| to.distance_to(p)).fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between two sampled curves.
pub fn hausdorff(a: &CurveSampler<'_>, b: &CurveSampler<'_>) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}
