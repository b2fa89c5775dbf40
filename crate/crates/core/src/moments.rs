//! Moment integrals of Re/Im log zeta over [T, 2T]: direct evaluation via
//! Riemann-Siegel and the counting function, and the P+Z route, with the
//! mixed-moment breakdown on shared samples.
//!
//! The integration grid is zero-aware: cells are delimited by consecutive
//! ordinates, Gauss-Legendre inside, with geometric refinement toward cell
//! endpoints for the real part (logarithmic singularities).

use crate::error::{Error, Result};
use crate::quad::GaussRule;
use crate::util::pairwise_sum;
use crate::zerodata::ZeroSet;
use crate::zetaeval::{self, PrimeSumCoeffs};
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Re,
    Im,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    Pz,
}

#[derive(Clone, Copy, Debug)]
pub struct MomentResult {
    pub t: f64,
    pub k: u32,
    pub part: Part,
    pub method: Method,
    pub value: f64,
    pub quadrature_error_estimate: f64,
    pub samples: u64,
}

/// Geometric endpoint refinement: subdivision ratio 1/4 down to width 1e-8.
const REFINE_RATIO: f64 = 0.25;
const REFINE_FLOOR: f64 = 1e-8;

/// Build the sample nodes and weights for one cell [a, b]. For singular
/// cells the endpoints are approached geometrically; the interior gets a
/// fixed Gauss rule.
fn cell_nodes(a: f64, b: f64, singular: bool, out: &mut Vec<(f64, f64)>) {
    let g8 = gauss8();
    let g4 = gauss4();
    let w = b - a;
    if !singular || w < 16.0 * REFINE_FLOOR {
        let c = 0.5 * (a + b);
        let h = 0.5 * w;
        for (&x, &wt) in g8.nodes.iter().zip(&g8.weights) {
            out.push((c + h * x, wt * h));
        }
        return;
    }
    // central block [a + w/4, b - w/4]
    let (mut lo, mut hi) = (a + 0.25 * w, b - 0.25 * w);
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    for (&x, &wt) in g8.nodes.iter().zip(&g8.weights) {
        out.push((c + h * x, wt * h));
    }
    // geometric panels toward each endpoint
    let mut width = 0.25 * w;
    while width > REFINE_FLOOR {
        let next = width * REFINE_RATIO;
        // left: [a + next, a + width], right: [b - width, b - next]
        for (plo, phi) in [(a + next, a + width), (b - width, b - next)] {
            let c = 0.5 * (plo + phi);
            let h = 0.5 * (phi - plo);
            for (&x, &wt) in g4.nodes.iter().zip(&g4.weights) {
                out.push((c + h * x, wt * h));
            }
        }
        width = next;
        lo = a + width;
        hi = b - width;
    }
    // the last slivers [a, a+width], [b-width, b]: integrable log tails;
    // a midpoint rule is enough at width <= 1e-8
    out.push((a + 0.5 * width, width));
    out.push((b - 0.5 * width, width));
    let _ = (lo, hi);
}

fn gauss8() -> &'static GaussRule {
    static R: std::sync::OnceLock<GaussRule> = std::sync::OnceLock::new();
    R.get_or_init(|| GaussRule::new(8))
}

fn gauss4() -> &'static GaussRule {
    static R: std::sync::OnceLock<GaussRule> = std::sync::OnceLock::new();
    R.get_or_init(|| GaussRule::new(4))
}

/// Cell list for [T, 2T]: boundaries at T, the covered ordinates, 2T.
fn cells(t: f64, zs: &ZeroSet) -> Vec<(f64, f64)> {
    let (lo, hi) = zs.index_range(t, 2.0 * t);
    let mut edges = Vec::with_capacity(hi - lo + 2);
    edges.push(t);
    edges.extend_from_slice(&zs.ordinates[lo..hi]);
    edges.push(2.0 * t);
    edges.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Integrand samples for the moment integrals: the sampler maps (cell, t)
/// to the integrand value(s); cells integrate independently and reduce
/// pairwise. The sampler's first argument lets PZ-type integrands hold
/// per-cell state (the batched zero sums).
fn integrate_cells<S, C, F>(
    t: f64,
    zs: &ZeroSet,
    singular: bool,
    cell_setup: S,
    sampler: F,
) -> (Vec<f64>, u64, f64)
where
    S: Fn(f64, f64) -> C + Sync,
    C: Sync,
    F: Fn(&C, f64) -> Vec<f64> + Sync,
{
    let cell_list = cells(t, zs);
    let n_out = {
        let c0 = cell_setup(t, t + 0.25);
        sampler(&c0, t + 0.125).len()
    };
    let results: Vec<(Vec<f64>, u64, f64)> = cell_list
        .par_chunks(64)
        .map(|chunk| {
            let mut nodes = Vec::new();
            let mut acc = vec![0.0; n_out];
            let mut count = 0u64;
            let mut err = 0.0;
            for &(a, b) in chunk {
                let ctx = cell_setup(a, b);
                nodes.clear();
                cell_nodes(a, b, singular, &mut nodes);
                // error estimate: compare against a coarse 4-point rule on
                // the plain cell
                let g4 = gauss4();
                let c = 0.5 * (a + b);
                let h = 0.5 * (b - a);
                let mut coarse = vec![0.0; n_out];
                for (&x, &wt) in g4.nodes.iter().zip(&g4.weights) {
                    let vals = sampler(&ctx, c + h * x);
                    for (s, v) in coarse.iter_mut().zip(&vals) {
                        *s += wt * h * v;
                    }
                }
                let mut fine = vec![0.0; n_out];
                for &(x, wt) in nodes.iter() {
                    let vals = sampler(&ctx, x);
                    for (s, v) in fine.iter_mut().zip(&vals) {
                        *s += wt * v;
                    }
                }
                count += nodes.len() as u64;
                err += fine
                    .iter()
                    .zip(&coarse)
                    .map(|(f, c)| (f - c).abs())
                    .fold(0.0f64, f64::max)
                    * 0.05;
                for (s, v) in acc.iter_mut().zip(&fine) {
                    *s += v;
                }
            }
            (acc, count, err)
        })
        .collect();
    let mut sums = vec![Vec::new(); n_out];
    let mut samples = 0;
    let mut err = 0.0;
    for (v, c, e) in &results {
        for (i, x) in v.iter().enumerate() {
            sums[i].push(*x);
        }
        samples += c;
        err += e;
    }
    (
        sums.into_iter().map(|v| pairwise_sum(&v)).collect(),
        samples,
        err,
    )
}

/// (1/T) int_T^{2T} f(t)^k dt for f = Re or Im log zeta.
pub fn moment(
    t: f64,
    k: u32,
    part: Part,
    method: Method,
    zs: &ZeroSet,
    x: f64,
) -> Result<MomentResult> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidArgument {
            what: "moment order",
            detail: format!("k must be 1..=3, got {k}"),
        });
    }
    if 2.0 * t > zs.max_ordinate() {
        return Err(Error::Coverage {
            requested_t: t,
            max_t: zs.max_ordinate() / 2.0,
        });
    }
    let (value, samples, err) = match (part, method) {
        (Part::Re, Method::Direct) => integrate_cells(
            t,
            zs,
            true,
            |_, _| (),
            |_, tt| {
                let z = zetaeval::rs_z_unchecked(tt);
                let re = if z == 0.0 {
                    zetaeval::RE_CLIP
                } else {
                    z.abs().ln().max(zetaeval::RE_CLIP)
                };
                vec![re.powi(k as i32)]
            },
        ),
        (Part::Im, Method::Direct) => integrate_cells(
            t,
            zs,
            false,
            |_, _| (),
            |_, tt| {
                let n = zs.count_leq(tt) as f64;
                let s = n - zetaeval::rs_theta(tt).unwrap() / PI - 1.0;
                vec![(PI * s).powi(k as i32)]
            },
        ),
        (Part::Re, Method::Pz) | (Part::Im, Method::Pz) => {
            if x < 2.0 || x > t {
                return Err(Error::Domain {
                    what: "moment pz cutoff x",
                    value: x,
                });
            }
            let coeffs = PrimeSumCoeffs::build(x)?;
            let re_part = part == Part::Re;
            integrate_cells(
                t,
                zs,
                re_part,
                |a, b| zetaeval::CellZeroSums::build(a, b, x, zs, zetaeval::ZERO_SUM_CUT),
                |ctx, tt| {
                    let (zr, zi) = ctx.eval(tt);
                    let v = if re_part {
                        coeffs.p_re(tt) + zr
                    } else {
                        coeffs.p_im(tt) + zi
                    };
                    vec![v.powi(k as i32)]
                },
            )
        }
    };
    Ok(MomentResult {
        t,
        k,
        part,
        method,
        value: value[0] / t,
        quadrature_error_estimate: err / t,
        samples,
    })
}

/// The four mixed third-moment integrals {P^3, P^2 Z, P Z^2, Z^3} plus the
/// recombined (P+Z)^3, all on shared samples, for both parts.
#[derive(Clone, Copy, Debug)]
pub struct MixedMoments {
    pub t: f64,
    pub x: f64,
    pub beta: f64,
    pub re_p3: f64,
    pub re_p2z: f64,
    pub re_pz2: f64,
    pub re_z3: f64,
    pub re_total: f64,
    pub im_p3: f64,
    pub im_p2z: f64,
    pub im_pz2: f64,
    pub im_z3: f64,
    pub im_total: f64,
    pub quadrature_error_estimate: f64,
    pub samples: u64,
    /// set when x exceeds the strictest proposition range T^{1/4}
    pub range_warning: Option<&'static str>,
}

pub fn mixed_moments(t: f64, x: f64, zs: &ZeroSet) -> Result<MixedMoments> {
    if 2.0 * t > zs.max_ordinate() {
        return Err(Error::Coverage {
            requested_t: t,
            max_t: zs.max_ordinate() / 2.0,
        });
    }
    if x < 2.0 || x > t {
        return Err(Error::Domain {
            what: "mixed_moments x",
            value: x,
        });
    }
    let coeffs = PrimeSumCoeffs::build(x)?;
    let (vals, samples, err) = integrate_cells(
        t,
        zs,
        true,
        |a, b| zetaeval::CellZeroSums::build(a, b, x, zs, zetaeval::ZERO_SUM_CUT),
        |ctx, tt| {
            let p_re = coeffs.p_re(tt);
            let p_im = coeffs.p_im(tt);
            let (z_re, z_im) = ctx.eval(tt);
            vec![
                p_re.powi(3),
                p_re * p_re * z_re,
                p_re * z_re * z_re,
                z_re.powi(3),
                (p_re + z_re).powi(3),
                p_im.powi(3),
                p_im * p_im * z_im,
                p_im * z_im * z_im,
                z_im.powi(3),
                (p_im + z_im).powi(3),
            ]
        },
    );
    let range_warning = if x > t.powf(0.25) {
        Some("x exceeds T^{1/4}, outside the strictest stated range of the mixed-moment propositions")
    } else {
        None
    };
    Ok(MixedMoments {
        t,
        x,
        beta: x.ln() / t.ln(),
        re_p3: vals[0] / t,
        re_p2z: vals[1] / t,
        re_pz2: vals[2] / t,
        re_z3: vals[3] / t,
        re_total: vals[4] / t,
        im_p3: vals[5] / t,
        im_p2z: vals[6] / t,
        im_pz2: vals[7] / t,
        im_z3: vals[8] / t,
        im_total: vals[9] / t,
        quadrature_error_estimate: err / t,
        samples,
        range_warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> ZeroSet {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zeros_10k.txt");
        crate::zerodata::load_zeros(path).expect("fixture zeros present")
    }

    #[test]
    fn first_im_moment_vanishes() {
        let zs = fixture();
        let m = moment(3000.0, 1, Part::Im, Method::Direct, &zs, 0.0).unwrap();
        assert!(m.value.abs() < 0.05, "mean pi S = {}", m.value);
    }

    #[test]
    fn second_im_moment_matches_prediction_scale() {
        let zs = fixture();
        let t = 4000.0;
        let m = moment(t, 2, Part::Im, Method::Direct, &zs, 0.0).unwrap();
        let pred = crate::predictions::moment_predictions(t).second_im;
        assert!((m.value - pred).abs() < 0.25, "{} vs {pred}", m.value);
    }

    #[test]
    fn re_second_moment_nonnegative_and_stable() {
        let zs = fixture();
        let m = moment(2500.0, 2, Part::Re, Method::Direct, &zs, 0.0).unwrap();
        assert!(m.value > 0.0);
        assert!(m.quadrature_error_estimate < 0.05);
    }

    #[test]
    fn direct_vs_pz_third_moment() {
        let zs = fixture();
        let t = 3500.0;
        let d = moment(t, 3, Part::Re, Method::Direct, &zs, 0.0).unwrap();
        let p = moment(t, 3, Part::Re, Method::Pz, &zs, 500.0).unwrap();
        assert!(
            (d.value - p.value).abs() < 0.05,
            "direct {} vs pz {}",
            d.value,
            p.value
        );
    }

    #[test]
    fn mixed_identity_exact_on_shared_samples() {
        let zs = fixture();
        let m = mixed_moments(3000.0, 200.0, &zs).unwrap();
        let lhs = m.re_p3 + 3.0 * m.re_p2z + 3.0 * m.re_pz2 + m.re_z3;
        assert!(
            (lhs - m.re_total).abs() < 1e-12,
            "{lhs} vs {}",
            m.re_total
        );
        let lhs_im = m.im_p3 + 3.0 * m.im_p2z + 3.0 * m.im_pz2 + m.im_z3;
        assert!((lhs_im - m.im_total).abs() < 1e-12);
        assert!(m.range_warning.is_some());
    }

    #[test]
    fn coverage_and_domain_errors() {
        let zs = fixture();
        assert!(moment(9000.0, 2, Part::Im, Method::Direct, &zs, 0.0).is_err());
        assert!(moment(3000.0, 5, Part::Im, Method::Direct, &zs, 0.0).is_err());
        assert!(mixed_moments(3000.0, 1.0, &zs).is_err());
    }
}
