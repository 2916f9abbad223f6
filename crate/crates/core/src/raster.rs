//! Intersection counting by dense sampling of two polar graphs.
//!
//! An independent check on the intersection solver: both curves are sampled
//! over their periods, samples of one curve near the other are collected and
//! grouped into clusters, and each cluster is one common point.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::polar::{polar_period, PolarCurve, DEFAULT_MAX_PERIOD};
use crate::{Error, Result};

pub const DEFAULT_SAMPLES: usize = 20_000;
/// Samples of the two curves closer than this count as coincident.
pub const NEAR: f64 = 1e-3;

fn sample(c: &PolarCurve, samples: usize) -> Result<Vec<Complex64>> {
    let n = polar_period(c, DEFAULT_MAX_PERIOD)?.ok_or(Error::UnknownPeriod {
        max_n: DEFAULT_MAX_PERIOD,
    })?;
    let end = n as f64 * PI;
    Ok((0..samples)
        .filter_map(|j| c.point(end * j as f64 / samples as f64).ok())
        .collect())
}

fn cell(z: Complex64, size: f64) -> (i64, i64) {
    ((z.re / size).floor() as i64, (z.im / size).floor() as i64)
}

fn grid(points: &[Complex64], size: f64) -> HashMap<(i64, i64), Vec<usize>> {
    let mut map: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, &z) in points.iter().enumerate() {
        map.entry(cell(z, size)).or_default().push(i);
    }
    map
}

fn neighbours<'a>(
    map: &'a HashMap<(i64, i64), Vec<usize>>,
    z: Complex64,
    size: f64,
) -> impl Iterator<Item = usize> + 'a {
    let (cx, cy) = cell(z, size);
    (-1..=1)
        .flat_map(move |dx| (-1..=1).map(move |dy| (cx + dx, cy + dy)))
        .filter_map(|k| map.get(&k))
        .flatten()
        .copied()
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut root = i;
    while parent[root] != root {
        root = parent[root];
    }
    parent[i] = root;
    root
}

fn max_step(points: &[Complex64]) -> f64 {
    points.windows(2).map(|w| (w[1] - w[0]).norm()).fold(0.0, f64::max)
}

/// Number of clusters of near-coincident samples from the two curves.
///
/// Samples of the first curve within `NEAR` of the second are linked when
/// closer than `NEAR` or than the sample spacing, so a run along one curve
/// stays one cluster where the curves leave the origin quickly.
/// The origin, when both curves pass through it, is one of the clusters.
pub fn sampled_intersection_count(c1: &PolarCurve, c2: &PolarCurve, samples: usize) -> Result<usize> {
    let a = sample(c1, samples)?;
    let b = sample(c2, samples)?;
    let gb = grid(&b, NEAR);
    let close: Vec<Complex64> = a
        .iter()
        .filter(|&&z| neighbours(&gb, z, NEAR).any(|j| (b[j] - z).norm() < NEAR))
        .copied()
        .collect();
    let link = NEAR.max(1.5 * max_step(&a).max(max_step(&b)));
    let gc = grid(&close, link);
    let mut parent: Vec<usize> = (0..close.len()).collect();
    for (i, &z) in close.iter().enumerate() {
        for j in neighbours(&gc, z, link) {
            if (close[j] - z).norm() < link {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    Ok((0..close.len()).filter(|&i| find(&mut parent, i) == i).count())
}
