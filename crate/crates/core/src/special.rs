//! Small special-function helpers: the sine integral and the oscillatory
//! tail integrals built from it.

use std::f64::consts::{FRAC_PI_2, PI};

/// Sine integral Si(x) = int_0^x sin(t)/t dt.
///
/// Power series up to |x| = 16, asymptotic auxiliary-function expansion
/// beyond; both branches are good to ~1e-9 or better.
pub fn sine_integral(x: f64) -> f64 {
    if x < 0.0 {
        return -sine_integral(-x);
    }
    if x == 0.0 {
        return 0.0;
    }
    if x <= 20.0 {
        // sum (-1)^k x^{2k+1} / ((2k+1)(2k+1)!)
        let x2 = x * x;
        let mut term = x;
        let mut acc = x;
        for k in 1..120 {
            let k2 = 2.0 * k as f64;
            term *= -x2 / (k2 * (k2 + 1.0));
            let contrib = term / (k2 + 1.0);
            acc += contrib;
            if contrib.abs() < 1e-18 {
                break;
            }
        }
        return acc;
    }
    // Si(x) = pi/2 - f(x) cos x - g(x) sin x with asymptotic f, g.
    let inv2 = 1.0 / (x * x);
    let mut f = 0.0;
    let mut term = 1.0 / x;
    let mut k = 0u32;
    loop {
        f += term;
        let next = term * -((2 * k + 1) as f64) * ((2 * k + 2) as f64) * inv2;
        if next.abs() >= term.abs() || k > 12 {
            break;
        }
        term = next;
        k += 1;
    }
    let mut g = 0.0;
    let mut term_g = inv2;
    let mut k = 0u32;
    loop {
        g += term_g;
        let next = term_g * -((2 * k + 2) as f64) * ((2 * k + 3) as f64) * inv2;
        if next.abs() >= term_g.abs() || k > 12 {
            break;
        }
        term_g = next;
        k += 1;
    }
    FRAC_PI_2 - x.cos() * f - x.sin() * g
}

/// int_{t0}^inf cos(omega t) / t^2 dt  (t0 > 0).
pub fn cos_tail_over_t2(omega: f64, t0: f64) -> f64 {
    let w = omega.abs();
    if w * t0 < 1e-300 {
        return 1.0 / t0;
    }
    let z = w * t0;
    w * (z.cos() / z - (FRAC_PI_2 - sine_integral(z)))
}

/// int_{t0}^inf cos(omega t) / t^4 dt  (t0 > 0).
pub fn cos_tail_over_t4(omega: f64, t0: f64) -> f64 {
    let w = omega.abs();
    if w * t0 < 1e-300 {
        return 1.0 / (3.0 * t0.powi(3));
    }
    let z = w * t0;
    let phi2 = z.cos() / z - (FRAC_PI_2 - sine_integral(z));
    let sin3 = z.sin() / (2.0 * z * z) + 0.5 * phi2;
    w.powi(3) * (z.cos() / (3.0 * z.powi(3)) - sin3 / 3.0)
}

/// Log-gamma for positive real argument.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.5772156649015328606;

pub const TWO_PI: f64 = 2.0 * PI;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;

    fn si_by_quadrature(x: f64) -> f64 {
        let breaks: Vec<f64> = (1..((x / PI) as usize + 1)).map(|k| k as f64 * PI).collect();
        quad::integrate_with_breakpoints(
            &|t: f64| if t == 0.0 { 1.0 } else { t.sin() / t },
            0.0,
            x,
            &breaks,
            1e-13,
        )
        .value
    }

    #[test]
    fn sine_integral_matches_quadrature() {
        for &x in &[0.3, 1.0, 5.0, 12.0, 15.9, 16.1, 25.0, 60.0, 300.0] {
            let si = sine_integral(x);
            let q = si_by_quadrature(x);
            assert!((si - q).abs() < 2e-9, "Si({x}): {si} vs {q}");
        }
        assert!((sine_integral(1e9) - FRAC_PI_2).abs() < 1e-8);
        assert_eq!(sine_integral(-3.0), -sine_integral(3.0));
    }

    #[test]
    fn cos_tails_match_quadrature() {
        // Compare the analytic tail difference over a finite stretch against
        // direct quadrature of that stretch.
        for &(w, t0) in &[(0.5, 30.0), (3.0, 20.0), (0.01, 50.0), (0.0, 40.0)] {
            let end = t0 * 80.0;
            let exact2 = cos_tail_over_t2(w, t0) - cos_tail_over_t2(w, end);
            let exact4 = cos_tail_over_t4(w, t0) - cos_tail_over_t4(w, end);
            let breaks: Vec<f64> = if w > 0.0 {
                let step = PI / w;
                (1..)
                    .map(|k| t0 + k as f64 * step)
                    .take_while(|&t| t < end)
                    .collect()
            } else {
                vec![]
            };
            let q2 =
                quad::integrate_with_breakpoints(&|t: f64| (w * t).cos() / (t * t), t0, end, &breaks, 1e-13)
                    .value;
            let q4 =
                quad::integrate_with_breakpoints(&|t: f64| (w * t).cos() / t.powi(4), t0, end, &breaks, 1e-14)
                    .value;
            assert!((exact2 - q2).abs() < 1e-8, "t2 w={w}: {exact2} vs {q2}");
            assert!((exact4 - q4).abs() < 1e-9, "t4 w={w}: {exact4} vs {q4}");
        }
    }
}
