//! Regenerate the bundled zero-ordinate fixtures.
//!
//! Scans the Riemann-Siegel Z for sign changes on a grid finer than the
//! smallest known gap in range, refines each bracket against the
//! Euler-Maclaurin evaluator, and validates the result against the counting
//! function before writing. Published tables (see scripts/fetch_zeros.sh)
//! are the canonical source; this tool exists so the repository's fixtures
//! are self-contained and license-clean.
//!
//! Usage: genzeros --count 100000 --out data/zeros_100k.txt.gz

use anyhow::{bail, Context, Result};
use std::f64::consts::PI;
use zetalab::zetaeval::{rs_theta, rs_z_unchecked, z_em};

fn main() -> Result<()> {
    let mut count: usize = 10_000;
    let mut out = String::from("zeros.txt");
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        match a.as_str() {
            "--count" => count = args.next().context("--count value")?.parse()?,
            "--out" => out = args.next().context("--out value")?,
            other => bail!("unknown flag {other}"),
        }
    }
    let zeros = compute_zeros(count)?;
    validate(&zeros)?;
    zetalab::zerodata::write_zeros_file(
        &out,
        &zeros,
        "Riemann zeta zero ordinates; computed by Riemann-Siegel scan + Euler-Maclaurin refinement, verified against the counting function",
    )?;
    eprintln!("wrote {} ordinates to {out}", zeros.len());
    Ok(())
}

/// Height below which the main-sum formula is too short to trust; use the
/// Euler-Maclaurin route there (it is cheap at low heights anyway).
const EM_CUT: f64 = 400.0;

fn z_eval(t: f64) -> f64 {
    if t < EM_CUT {
        z_em(t).expect("t below theta floor")
    } else {
        rs_z_unchecked(t)
    }
}

fn compute_zeros(count: usize) -> Result<Vec<f64>> {
    // invert N(t) ~ theta(t)/pi + 1 for the needed height, with margin
    let mut t_max = 100.0f64;
    while rs_theta(t_max).unwrap() / PI + 1.0 < count as f64 + 20.0 {
        t_max *= 1.05;
    }
    eprintln!("scanning up to t ~ {t_max:.0} for {count} zeros");
    let mut zeros = Vec::with_capacity(count + 16);
    let mut t = 14.0f64;
    let mut prev_v = z_eval(t);
    while zeros.len() < count + 8 && t < t_max * 1.2 {
        let mean_gap = 2.0 * PI / (t / (2.0 * PI)).ln();
        let step = 0.02 * mean_gap;
        let next = t + step;
        let v = z_eval(next);
        if prev_v == 0.0 {
            zeros.push(t);
        } else if prev_v.signum() != v.signum() && v != 0.0 {
            zeros.push(refine(t, next));
        }
        t = next;
        prev_v = v;
    }
    if zeros.len() < count {
        bail!("scan found only {} zeros below {t_max}", zeros.len());
    }
    zeros.truncate(count);
    Ok(zeros)
}

/// Polish a bracket: secant/bisection on the cheap Riemann-Siegel Z down to
/// ~1e-9, then two Newton corrections against the Euler-Maclaurin Z. The
/// second stage removes the formula bias (~1e-5 at worst) quadratically.
fn refine(lo: f64, hi: f64) -> f64 {
    let mut a = lo;
    let mut b = hi;
    let mut fa = z_eval(a);
    let mut fb = z_eval(b);
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    for _ in 0..90 {
        if (b - a).abs() < 1e-9 {
            break;
        }
        let mut m = b - fb * (b - a) / (fb - fa);
        if !(m > a && m < b) || !m.is_finite() {
            m = 0.5 * (a + b);
        }
        let fm = z_eval(m);
        if fm == 0.0 {
            a = m;
            b = m;
            break;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    let mut root = 0.5 * (a + b);
    if root < EM_CUT {
        return root; // already refined on z_em
    }
    // Newton with the accurate evaluator; derivative from the cheap formula
    let h = 1e-4;
    for _ in 0..2 {
        let f = z_em(root).unwrap();
        let d = (z_eval(root + h) - z_eval(root - h)) / (2.0 * h);
        if d == 0.0 {
            break;
        }
        let step = (f / d).clamp(-4e-3, 4e-3);
        root -= step;
        if step.abs() < 5e-12 {
            break;
        }
    }
    root
}

fn validate(zeros: &[f64]) -> Result<()> {
    for w in zeros.windows(2) {
        if w[1] <= w[0] {
            bail!("non-monotone ordinates near {}", w[0]);
        }
    }
    // first zeros against published values
    let known = [
        14.134725142,
        21.022039639,
        25.010857580,
        30.424876126,
        32.935061588,
    ];
    for (i, &k) in known.iter().enumerate() {
        if (zeros[i] - k).abs() > 2e-6 {
            bail!("zero {} = {} deviates from the published {k}", i + 1, zeros[i]);
        }
    }
    // counting-function consistency at midpoints: S stays in the known band
    // and does not drift (a missed zero shifts S by 1 permanently)
    let mut window_sum = 0.0;
    let mut window_n = 0usize;
    for k in (200..zeros.len().saturating_sub(1)).step_by(7) {
        let mid = 0.5 * (zeros[k] + zeros[k + 1]);
        let s = (k + 1) as f64 - rs_theta(mid).unwrap() / PI - 1.0;
        if s.abs() > 3.2 {
            bail!("S({mid}) = {s} out of band; zero list inconsistent near index {k}");
        }
        window_sum += s;
        window_n += 1;
        if window_n == 400 {
            let mean = window_sum / window_n as f64;
            if mean.abs() > 0.35 {
                bail!("mean S = {mean} over a 400-sample window near index {k}; drift suggests a missed zero");
            }
            window_sum = 0.0;
            window_n = 0;
        }
    }
    eprintln!("validation passed: {} zeros, S(t) checks clean", zeros.len());
    Ok(())
}
