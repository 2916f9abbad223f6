//! Areas of polar regions `0 ≤ r ≤ f(θ), θ ∈ [a, b]` and of their
//! intersections.
//!
//! Every region here is star-shaped about the origin: along a direction `ψ`
//! it is a radial segment `[0, f]`. Unions and intersections of such regions
//! reduce to the pointwise max and min of the boundary radii, so the work is
//! locating the angles where the active boundary changes and integrating
//! `½ r²` between them.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use crate::expr::{Expr, Params};
use crate::numerics::{default_grid, find_roots, integrate, DEFAULT_TOL};
use crate::polar::{positive_pieces, Piece, PolarCurve};
use crate::{Error, Result};

/// Boundaries may dip this far below zero (rounding at their zeros).
pub const BOUNDARY_SLACK: f64 = 1e-9;
const VALIDATION_SAMPLES: usize = 1024;
/// Offset used to classify a root of `f − g` as a crossing or a touch.
const PROBE: f64 = 1e-4;
const MIN_WIDTH: f64 = 1e-12;

/// The region `{(r, θ) : 0 ≤ r ≤ f(θ), θ ∈ [start, end]}` with `f ≥ 0` there
/// and `end − start ≤ 2π`.
#[derive(Debug, Clone)]
pub struct SectorRegion {
    boundary: PolarCurve,
    start: f64,
    end: f64,
}

impl SectorRegion {
    pub fn new(boundary: PolarCurve, start: f64, end: f64) -> Result<Self> {
        if !(start < end) || end - start > TAU + 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "sector [{start}, {end}] must be non-empty and at most 2π wide"
            )));
        }
        for j in 0..=VALIDATION_SAMPLES {
            let theta = start + (end - start) * j as f64 / VALIDATION_SAMPLES as f64;
            let value = boundary.radius(theta)?;
            if value < -BOUNDARY_SLACK {
                return Err(Error::NegativeBoundary { theta, value });
            }
        }
        Ok(SectorRegion { boundary, start, end })
    }

    /// Region from an expression string with parameters.
    pub fn parse(text: &str, params: &Params, start: f64, end: f64) -> Result<Self> {
        Self::new(PolarCurve::parse_with(text, params)?, start, end)
    }

    /// Regions for a non-negative piece, cut into sectors no wider than 2π.
    pub fn from_piece(piece: &Piece) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        let mut lo = piece.start;
        while lo < piece.end - MIN_WIDTH {
            let hi = (lo + TAU).min(piece.end);
            out.push(SectorRegion::new(piece.curve.clone(), lo, hi)?);
            lo = hi;
        }
        Ok(out)
    }

    pub fn boundary(&self) -> &PolarCurve {
        &self.boundary
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn radius(&self, theta: f64) -> Result<f64> {
        self.boundary.radius(theta)
    }

    /// The region rotated counterclockwise by `angle`.
    pub fn rotated(&self, angle: f64) -> Result<Self> {
        let boundary = self.boundary.reparameterized(angle, 1.0);
        SectorRegion::new(boundary, self.start + angle, self.end + angle)
    }

    fn sort_key(&self) -> (f64, f64, String, String) {
        (
            self.start,
            self.end,
            self.boundary.expr().to_string(),
            format!("{:?}", self.boundary.params()),
        )
    }
}

fn compare_regions(a: &SectorRegion, b: &SectorRegion) -> Ordering {
    let (ka, kb) = (a.sort_key(), b.sort_key());
    ka.0.total_cmp(&kb.0)
        .then(ka.1.total_cmp(&kb.1))
        .then_with(|| ka.2.cmp(&kb.2))
        .then_with(|| ka.3.cmp(&kb.3))
}

/// `½ ∫ f(θ)² dθ` over the region's interval.
pub fn loop_area(region: &SectorRegion) -> Result<f64> {
    let f = |x: f64| region.boundary.radius_or_nan(x).powi(2);
    Ok(0.5 * integrate(f, region.start, region.end, DEFAULT_TOL)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionOverlap {
    pub area: f64,
    /// Directions `ψ ∈ [0, 2π)` where two boundaries cross.
    pub crossings: Vec<f64>,
    /// Directions where two boundaries touch without crossing.
    pub touches: Vec<f64>,
}

/// Part of a region over directions `ψ ∈ [lo, hi] ⊂ [0, 2π]`, evaluated at `ψ + shift`.
struct Arc<'a> {
    region: &'a SectorRegion,
    set: usize,
    lo: f64,
    hi: f64,
    shift: f64,
}

impl Arc<'_> {
    fn radius(&self, psi: f64) -> f64 {
        self.region.boundary.radius_or_nan(psi + self.shift)
    }

    fn covers(&self, psi: f64) -> bool {
        self.lo <= psi && psi <= self.hi
    }
}

fn arcs_of(region: &SectorRegion, set: usize) -> Vec<Arc<'_>> {
    let first = (region.start / TAU).floor() as i64;
    let last = (region.end / TAU).floor() as i64;
    (first..=last)
        .filter_map(|k| {
            let shift = k as f64 * TAU;
            let lo = region.start.max(shift) - shift;
            let hi = region.end.min(shift + TAU) - shift;
            (hi - lo > MIN_WIDTH).then_some(Arc {
                region,
                set,
                lo,
                hi,
                shift,
            })
        })
        .collect()
}

struct Subdivision {
    cuts: Vec<f64>,
    crossings: Vec<f64>,
    touches: Vec<f64>,
}

fn subdivide(arcs: &[Arc<'_>]) -> Result<Subdivision> {
    let mut cuts: Vec<f64> = arcs.iter().flat_map(|a| [a.lo, a.hi]).collect();
    let mut crossings = Vec::new();
    let mut touches = Vec::new();
    for (i, p) in arcs.iter().enumerate() {
        for q in &arcs[i + 1..] {
            let lo = p.lo.max(q.lo);
            let hi = p.hi.min(q.hi);
            if hi - lo <= MIN_WIDTH {
                continue;
            }
            let h = |psi: f64| p.radius(psi) - q.radius(psi);
            let coincident = (0..=64).all(|k| h(lo + (hi - lo) * k as f64 / 64.0).abs() < 1e-12);
            if coincident {
                continue;
            }
            for root in find_roots(h, lo, hi, default_grid(lo, hi), DEFAULT_TOL)? {
                let x = root.x;
                if x <= lo + MIN_WIDTH {
                    continue;
                }
                let left = h((x - PROBE).max(lo));
                let right = h((x + PROBE).min(hi));
                if left.signum() != right.signum() {
                    crossings.push(x);
                } else {
                    touches.push(x);
                }
                cuts.push(x);
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|b, a| (*b - *a).abs() < MIN_WIDTH);
    crossings.sort_by(f64::total_cmp);
    touches.sort_by(f64::total_cmp);
    Ok(Subdivision {
        cuts,
        crossings,
        touches,
    })
}

/// Integrates `½ r²` of the arc chosen by `pick` on each piece of the subdivision.
fn envelope_area<P>(arcs: &[Arc<'_>], cuts: &[f64], pick: P) -> Result<f64>
where
    P: for<'b> Fn(&'b [Arc<'b>], f64) -> Option<&'b Arc<'b>>,
{
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (u, v) = (w[0], w[1]);
        if v - u <= MIN_WIDTH {
            continue;
        }
        if let Some(arc) = pick(arcs, 0.5 * (u + v)) {
            let f = |psi: f64| arc.radius(psi).powi(2);
            total += 0.5 * integrate(f, u, v, DEFAULT_TOL)?;
        }
    }
    Ok(total)
}

fn outermost<'b>(arcs: &'b [Arc<'b>], set: usize, psi: f64) -> Option<&'b Arc<'b>> {
    arcs.iter()
        .filter(|a| a.set == set && a.covers(psi))
        .max_by(|a, b| a.radius(psi).total_cmp(&b.radius(psi)))
}

/// Area of `(A₁ ∪ … ∪ Aₘ) ∩ (B₁ ∪ … ∪ Bₙ)`.
pub fn union_intersection(a: &[SectorRegion], b: &[SectorRegion]) -> Result<RegionOverlap> {
    let mut arcs: Vec<Arc<'_>> = a.iter().flat_map(|r| arcs_of(r, 0)).collect();
    arcs.extend(b.iter().flat_map(|r| arcs_of(r, 1)));
    let sub = subdivide(&arcs)?;
    let area = envelope_area(&arcs, &sub.cuts, |arcs, psi| {
        let pa = outermost(arcs, 0, psi)?;
        let pb = outermost(arcs, 1, psi)?;
        Some(if pb.radius(psi) < pa.radius(psi) { pb } else { pa })
    })?;
    Ok(RegionOverlap {
        area,
        crossings: sub.crossings,
        touches: sub.touches,
    })
}

/// Area of the union of the given regions.
pub fn union_area(regions: &[SectorRegion]) -> Result<f64> {
    let arcs: Vec<Arc<'_>> = regions.iter().flat_map(|r| arcs_of(r, 0)).collect();
    let sub = subdivide(&arcs)?;
    envelope_area(&arcs, &sub.cuts, |arcs, psi| outermost(arcs, 0, psi))
}

/// Intersection of two sector regions, with the crossing and touching
/// directions of their boundaries. The result does not depend on argument order.
pub fn region_intersection(a: &SectorRegion, b: &SectorRegion) -> Result<RegionOverlap> {
    let (first, second) = if compare_regions(a, b) == Ordering::Greater {
        (b, a)
    } else {
        (a, b)
    };
    union_intersection(std::slice::from_ref(first), std::slice::from_ref(second))
}

pub fn region_intersection_area(a: &SectorRegion, b: &SectorRegion) -> Result<f64> {
    Ok(region_intersection(a, b)?.area)
}

/// Sector regions covering everything the polar graph of `c` bounds on its domain.
pub fn curve_regions(c: &PolarCurve) -> Result<Vec<SectorRegion>> {
    let decomposition = positive_pieces(c)?;
    let mut out = Vec::new();
    for piece in decomposition.distinct() {
        out.extend(SectorRegion::from_piece(piece)?);
    }
    Ok(out)
}

/// Area bounded by the polar graph of `c`.
pub fn curve_region_area(c: &PolarCurve) -> Result<f64> {
    union_area(&curve_regions(c)?)
}

/// Area common to the regions bounded by two polar graphs.
pub fn curve_intersection(c1: &PolarCurve, c2: &PolarCurve) -> Result<RegionOverlap> {
    union_intersection(&curve_regions(c1)?, &curve_regions(c2)?)
}

/// Area common to the regions bounded by `r = sin Nθ` and `r = cos Nθ`.
///
/// One petal pair is computed over `[0, π/2N]` and replicated N times for
/// odd N and 2N times for even N.
pub fn rose_intersection_area(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("rose index must be positive".into()));
    }
    let k = n as f64;
    let params = Params::from([("N".to_string(), k)]);
    let sine = SectorRegion::parse("sin(N*t)", &params, 0.0, PI / k)?;
    let cosine = SectorRegion::parse("cos(N*t)", &params, -PI / (2.0 * k), PI / (2.0 * k))?;
    let sector = region_intersection_area(&sine, &cosine)?;
    let copies = if n % 2 == 1 { k } else { 2.0 * k };
    Ok(sector * copies)
}

/// Loop geometry of the limaçons `r = 1 − λ sin θ` and `r = 1 + λ cos θ`, λ > 1.
#[derive(Debug, Clone)]
pub struct LimaconAnalysis {
    pub lambda: f64,
    /// `arcsin(1/λ)`, where `1 − λ sin θ` vanishes.
    pub theta0: f64,
    /// `arccos(−1/λ)`, where `1 + λ cos θ` vanishes; equals `π/2 + θ₀`.
    pub phi0: f64,
    /// Large loop of `r = 1 − λ sin θ` on `[π − θ₀, θ₀ + 2π]`.
    pub large_loop: SectorRegion,
    /// Small loop of `r = 1 + λ cos θ`, written `r = λ cos θ − 1` on
    /// `[θ₀ + 3π/2, 5π/2 − θ₀]`.
    pub small_loop: SectorRegion,
    /// Whether the small loop lies inside the large loop (`θ₀ ≥ π/4`).
    pub contained: bool,
    /// Crossing angle of the two boundaries when not contained.
    pub theta1: Option<f64>,
}

pub fn limacon_analysis(lambda: f64) -> Result<LimaconAnalysis> {
    if !(lambda > 1.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!("limaçon needs λ > 1, got {lambda}")));
    }
    let theta0 = (1.0 / lambda).asin();
    let phi0 = (-1.0 / lambda).acos();
    let params = Params::from([("lambda".to_string(), lambda)]);
    let large_loop = SectorRegion::parse("1 - lambda*sin(t)", &params, PI - theta0, theta0 + TAU)?;
    let small_loop = SectorRegion::parse(
        "lambda*cos(t) - 1",
        &params,
        theta0 + 1.5 * PI,
        3.0 * PI - (theta0 + FRAC_PI_2),
    )?;
    let contained = theta0 >= FRAC_PI_4;
    let theta1 = (!contained).then(|| (1.0 / lambda - (0.5 - 1.0 / (lambda * lambda)).sqrt()).asin());
    Ok(LimaconAnalysis {
        lambda,
        theta0,
        phi0,
        large_loop,
        small_loop,
        contained,
        theta1,
    })
}

/// Area inside both the large loop of `1 − λ sin θ` and the small loop of
/// `1 + λ cos θ`.
pub fn limacon_common_area(lambda: f64) -> Result<f64> {
    let analysis = limacon_analysis(lambda)?;
    let Some(theta1) = analysis.theta1 else {
        return loop_area(&analysis.small_loop);
    };
    // the common part lies in θ₀ + 3π/2 < θ < θ₀ + 2π; the small loop is
    // inner up to the crossing, the large loop after it
    let lo = analysis.theta0 + 1.5 * PI;
    let hi = analysis.theta0 + TAU;
    let split = theta1 + TAU;
    let small = |x: f64| analysis.small_loop.boundary.radius_or_nan(x).powi(2);
    let large = |x: f64| analysis.large_loop.boundary.radius_or_nan(x).powi(2);
    Ok(0.5 * (integrate(small, lo, split, DEFAULT_TOL)? + integrate(large, split, hi, DEFAULT_TOL)?))
}

/// A sector region bounded by a constant radius, handy for tests and the CLI.
pub fn disk_sector(radius: f64, start: f64, end: f64) -> Result<SectorRegion> {
    SectorRegion::new(PolarCurve::new(Expr::Const(radius), Params::new())?, start, end)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::{estimate_area, DEFAULT_SEED};

    fn region(text: &str, a: f64, b: f64) -> SectorRegion {
        SectorRegion::parse(text, &Params::new(), a, b).unwrap()
    }

    const LENS: f64 = PI / 8.0 - 0.25;

    #[test]
    fn loop_areas() {
        let half_disk = region("cos(t)", -FRAC_PI_2, FRAC_PI_2);
        assert!((loop_area(&half_disk).unwrap() - PI / 4.0).abs() < 1e-10);
        assert!((loop_area(&disk_sector(1.0, 0.0, TAU).unwrap()).unwrap() - PI).abs() < 1e-10);
    }

    #[test]
    fn small_limacon_loop_closed_form() {
        // (2cosθ − 1)² has antiderivative 3θ + sin 2θ − 4 sin θ
        let a = limacon_analysis(2.0).unwrap();
        let anti = |x: f64| 3.0 * x + (2.0 * x).sin() - 4.0 * x.sin();
        let (lo, hi) = (a.small_loop.start(), a.small_loop.end());
        let exact = 0.5 * (anti(hi) - anti(lo));
        assert!((exact - (PI - 1.5 * 3f64.sqrt())).abs() < 1e-12);
        assert!((loop_area(&a.small_loop).unwrap() - exact).abs() < 1e-10);
    }

    #[test]
    fn sine_cosine_lens() {
        let a = region("sin(t)", 0.0, PI);
        let b = region("cos(t)", -FRAC_PI_2, FRAC_PI_2);
        let overlap = region_intersection(&a, &b).unwrap();
        assert!((overlap.area - LENS).abs() < 1e-9, "{overlap:?}");
        assert_eq!(overlap.crossings.len(), 1);
        assert!((overlap.crossings[0] - FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn identical_and_disjoint_regions() {
        let a = region("sin(t)", 0.0, PI);
        assert!((region_intersection_area(&a, &a).unwrap() - loop_area(&a).unwrap()).abs() < 1e-12);
        let p = disk_sector(1.0, 0.0, FRAC_PI_4).unwrap();
        let q = disk_sector(1.0, PI, 1.25 * PI).unwrap();
        assert_eq!(region_intersection_area(&p, &q).unwrap(), 0.0);
    }

    #[test]
    fn argument_order_does_not_matter() {
        let a = region("1 + cos(t)/2", 0.3, 4.0);
        let b = region("1.2 - sin(2*t)/3", -1.0, 2.5);
        let ab = region_intersection_area(&a, &b).unwrap();
        let ba = region_intersection_area(&b, &a).unwrap();
        assert_eq!(ab.to_bits(), ba.to_bits());
        assert!(ab <= loop_area(&a).unwrap().min(loop_area(&b).unwrap()) + 1e-9);
    }

    #[test]
    fn wrapped_intervals_overlap_correctly() {
        // [3π/2, 5π/2] and [0, π/2] share the quarter [0, π/2]
        let a = disk_sector(1.0, 1.5 * PI, 2.5 * PI).unwrap();
        let b = disk_sector(2.0, 0.0, FRAC_PI_2).unwrap();
        let area = region_intersection_area(&a, &b).unwrap();
        assert!((area - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn touching_boundaries_are_reported() {
        // 1 and 1 + (θ−1)² touch at θ = 1
        let a = disk_sector(1.0, 0.0, 2.0).unwrap();
        let b = region("1 + (t - 1)^2", 0.0, 2.0);
        let overlap = region_intersection(&a, &b).unwrap();
        assert_eq!(overlap.touches.len(), 1);
        assert!(overlap.crossings.is_empty());
        assert!((overlap.area - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rotation_leaves_areas_unchanged() {
        let a = region("sin(t)", 0.0, PI);
        let b = region("cos(t)", -FRAC_PI_2, FRAC_PI_2);
        for angle in [0.4, 2.0, -1.3] {
            let ra = a.rotated(angle).unwrap();
            let rb = b.rotated(angle).unwrap();
            let area = region_intersection_area(&ra, &rb).unwrap();
            assert!((area - LENS).abs() < 1e-9, "{angle}: {area}");
        }
    }

    #[test]
    fn rose_areas() {
        for n in 1..=6 {
            let expected = if n % 2 == 1 { LENS } else { 2.0 * LENS };
            let got = rose_intersection_area(n).unwrap();
            assert!((got - expected).abs() < 1e-8, "N = {n}: {got}");
        }
        assert!(rose_intersection_area(0).is_err());
    }

    #[test]
    fn whole_curve_lens_matches_sector_lens() {
        let s = PolarCurve::parse("sin(theta)").unwrap();
        let c = PolarCurve::parse("cos(theta)").unwrap();
        let area = curve_intersection(&s, &c).unwrap().area;
        assert!((area - LENS).abs() < 1e-9);
        assert!((curve_region_area(&s).unwrap() - PI / 4.0).abs() < 1e-9);
    }

    #[test]
    fn limacon_geometry() {
        let a = limacon_analysis(2.0).unwrap();
        assert!((a.phi0 - a.theta0 - FRAC_PI_2).abs() < 1e-12);
        assert!(!a.contained);
        let t1 = a.theta1.unwrap();
        assert!(t1.abs() < 1e-15);
        let lambda = 2.0;
        assert!((1.0 - lambda * t1.sin() - 1.0).abs() < 1e-15);
        assert!((lambda * t1.cos() - 1.0 - 1.0).abs() < 1e-15);

        let a = limacon_analysis(3.0).unwrap();
        let t1 = a.theta1.unwrap();
        assert!((3.0 * (t1.cos() + t1.sin()) - 2.0).abs() < 1e-9);
        // independent route: root of λ(cos θ + sin θ) − 2 in (−π/4, π/4)
        let roots = find_roots(
            |x| 3.0 * (x.cos() + x.sin()) - 2.0,
            -FRAC_PI_4,
            FRAC_PI_4,
            256,
            DEFAULT_TOL,
        )
        .unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots.xs()[0] - t1).abs() < 1e-9);

        let boundary = 2f64.sqrt();
        assert!(limacon_analysis(boundary - 1e-6).unwrap().contained);
        assert!(!limacon_analysis(boundary + 1e-6).unwrap().contained);
        assert!(limacon_analysis(1.0).is_err());
    }

    #[test]
    fn limacon_common_area_routes_agree() {
        for lambda in [1.2, 2.0, 3.0, 5.5] {
            let a = limacon_analysis(lambda).unwrap();
            let direct = limacon_common_area(lambda).unwrap();
            let generic = region_intersection_area(&a.large_loop, &a.small_loop).unwrap();
            assert!((direct - generic).abs() < 1e-9, "λ = {lambda}: {direct} vs {generic}");
        }
        let contained = limacon_analysis(1.2).unwrap();
        assert_eq!(
            limacon_common_area(1.2).unwrap(),
            loop_area(&contained.small_loop).unwrap()
        );
        assert!(limacon_common_area(1.001).unwrap() < 1e-3);
    }

    #[test]
    fn limacon_area_against_monte_carlo() {
        let lambda = 2.0;
        let inside = |z: num_complex::Complex64| {
            let (rho, psi) = (z.norm(), z.im.atan2(z.re));
            rho <= 1.0 - lambda * psi.sin() && rho <= lambda * psi.cos() - 1.0
        };
        let est = estimate_area(inside, lambda + 1.0, 200_000, DEFAULT_SEED);
        let area = limacon_common_area(lambda).unwrap();
        assert!(est.agrees_with(area, 3.0), "{est:?} vs {area}");
    }
}
