//! Conjectural and theorem right-hand sides as computable functions: the
//! pair/twisted/triple correlation predictions, the second- and third-moment
//! constants, the mixed-moment integrals, and the unitary-group limits.

use crate::arithmetic::{self, PrimePower};
use crate::correlations::{TestKernel, TestKernel2};
use crate::error::{Error, Result};
use crate::kernels::{self, min1};
use crate::quad;
use crate::special::{ln_gamma, EULER_GAMMA};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// c_Z = -pi^2/4, the random-matrix third-derivative constant.
pub const C_Z: f64 = -(PI * PI) / 4.0;

/// Cached cubic prime constant at the default truncation.
pub fn c_p_default() -> f64 {
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(|| arithmetic::c_p_constant(1_000_000, 64).unwrap().0)
}

/// Montgomery prediction F(alpha) ~ T^{-2|alpha|} log T + min(|alpha|, 1).
pub fn predict_f(alpha: f64, t: f64) -> f64 {
    let l = t.ln();
    (-2.0 * alpha.abs() * l).exp() * l + min1(alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistedRegime {
    Strong,
    Intermediate,
}

/// A breakpointed alpha -> value prediction.
pub struct PiecewisePrediction {
    pub breakpoints: Vec<f64>,
    pub n: u64,
    pub t: f64,
    pub regime: TwistedRegime,
}

impl PiecewisePrediction {
    pub fn new(n: &PrimePower, t: f64, regime: TwistedRegime) -> PiecewisePrediction {
        let l = t.ln();
        let beta = n.log_n() / l;
        let lam = n.lambda / l;
        PiecewisePrediction {
            breakpoints: vec![-1.0 - lam, -1.0, -beta, 0.0, 1.0 - beta, 1.0 - beta + lam],
            n: n.n,
            t,
            regime,
        }
    }

    pub fn eval(&self, alpha: f64) -> Result<f64> {
        let pp = PrimePower::new(self.n)?;
        predict_f_twisted(alpha, &pp, self.t, self.regime)
    }
}

/// The twisted pair correlation prediction.
///
/// Strong regime: the three-case piecewise main terms with the O(1) slack
/// rendered as zero and the spike sums subtracted; the symmetry
/// F_n(alpha) = F_n(-alpha - log n / log T) extends the printed cases to the
/// whole line. Intermediate regime: the trapezoid ramp, clamped to [0, 1].
pub fn predict_f_twisted(
    alpha: f64,
    n: &PrimePower,
    t: f64,
    regime: TwistedRegime,
) -> Result<f64> {
    if !alpha.is_finite() || t <= std::f64::consts::E {
        return Err(Error::Domain {
            what: "predict_f_twisted",
            value: alpha,
        });
    }
    let l = t.ln();
    let beta = n.log_n() / l;
    match regime {
        TwistedRegime::Intermediate => {
            Ok((l / n.lambda * (alpha - 1.0 + beta)).min(1.0).clamp(0.0, 1.0))
        }
        TwistedRegime::Strong => {
            // canonical representative on the right of the symmetry axis
            let a = if alpha < -beta / 2.0 { -alpha - beta } else { alpha };
            if a <= 0.0 {
                // [-log n/log T, 0]
                let (_, r2) = arithmetic::r_spikes(a, n, t);
                let nta = n.n as f64 * t.powf(a);
                Ok(t.powf(2.0 * a) * l + l / (nta * nta) - r2)
            } else if a < 1.0 - beta {
                let (r1, _) = arithmetic::r_spikes(a, n, t);
                Ok(t.powf(-2.0 * a) * (l + l / (n.n as f64 * n.n as f64)) - r1)
            } else {
                Ok((l / n.lambda * (a - 1.0 + beta)).min(1.0).clamp(0.0, 1.0))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjectureKind {
    Pair,
    TwistedPair,
    Triple,
}

fn support_or_reject(k: &TestKernel) -> Result<f64> {
    k.r_hat_support.ok_or(Error::KernelDecay {
        exponent: k.decay_exponent,
    })
}

/// Pair correlation RHS: r-hat(0) + int r-hat(a) min(|a|,1) da.
pub fn pair_rhs(kernel: &TestKernel) -> Result<f64> {
    let a_max = support_or_reject(kernel)?;
    let rh = kernel.r_hat.clone();
    let smooth = quad::integrate_with_breakpoints(
        &|a: f64| rh(a) * min1(a),
        -a_max,
        a_max,
        &[-1.0, 0.0, 1.0],
        1e-9,
    )
    .value;
    Ok((kernel.r_hat)(0.0) + smooth)
}

/// Twisted pair RHS:
/// (r-hat(0) + r-hat(-log n/log T))/2 + int sym(a) m_n(a) da
/// with sym(a) = (r-hat(a) + r-hat(-a - log n/log T))/2.
pub fn twisted_pair_rhs(kernel: &TestKernel, n: &PrimePower, t: f64) -> Result<f64> {
    let a_max = support_or_reject(kernel)?;
    let l = t.ln();
    let beta = n.log_n() / l;
    let lam = n.lambda / l;
    let rh = kernel.r_hat.clone();
    let sym = move |a: f64| 0.5 * (rh(a) + rh(-a - beta));
    let delta_part = sym(0.0);
    let lo = (-a_max - beta).min(-1.0 - lam) - 0.5;
    let hi = a_max.max(1.0 - beta + lam) + 0.5;
    let n_copy = *n;
    let integrand = move |a: f64| sym(a) * kernels::m_weight(a, &n_copy, t).unwrap_or(0.0);
    let breaks = [
        -1.0 - lam,
        -1.0,
        -beta,
        0.0,
        1.0 - beta,
        1.0 - beta + lam,
        -a_max,
        a_max,
        -a_max - beta,
        a_max - beta,
    ];
    let smooth = quad::integrate_with_breakpoints(&integrand, lo, hi, &breaks, 1e-9).value;
    Ok(delta_part + smooth)
}

/// Twisted pair RHS routed through the hexagon function via the identity
/// (Lambda(n)/log T) m_n(a) = H_*(a, Lambda(n)/log T) for prime n.
pub fn twisted_rhs_via_hexagon(kernel: &TestKernel, n: &PrimePower, t: f64) -> Result<f64> {
    if n.a != 1 {
        return Err(Error::InvalidArgument {
            what: "twisted_rhs_via_hexagon",
            detail: format!("identity route requires a prime twist, got {}", n.n),
        });
    }
    let a_max = support_or_reject(kernel)?;
    let l = t.ln();
    let beta = n.log_n() / l;
    let b = n.lambda / l;
    let rh = kernel.r_hat.clone();
    let sym = move |a: f64| 0.5 * (rh(a) + rh(-a - beta));
    let delta_part = sym(0.0);
    let lo = -a_max - beta - 1.5;
    let hi = a_max + 1.5;
    let integrand = move |a: f64| sym(a) * kernels::hexagon(a, b).h_star * (l / n.lambda);
    let breaks = [
        -1.0 - b,
        -1.0,
        -beta,
        0.0,
        1.0 - b,
        1.0,
        -a_max,
        a_max,
        -a_max - beta,
        a_max - beta,
    ];
    let smooth = quad::integrate_with_breakpoints(&integrand, lo, hi, &breaks, 1e-9).value;
    Ok(delta_part + smooth)
}

/// Triple correlation RHS: the four delta atoms of H_delta evaluated exactly
/// plus the 2D quadrature of r-hat against H_*.
pub fn triple_rhs(kernel2d: &TestKernel2) -> Result<f64> {
    let a_max = kernel2d.r_hat_support.ok_or(Error::KernelDecay {
        exponent: kernel2d.decay_exponent,
    })?;
    let rh = &kernel2d.r_hat;
    let mut total = 0.0;
    for atom in kernels::h_delta_decomposition() {
        total += match atom.location {
            kernels::DeltaAtomLocation::Origin => rh(0.0, 0.0),
            kernels::DeltaAtomLocation::AtAZero => {
                let rh2 = kernel2d.r_hat.clone();
                let c = atom.coefficient;
                quad::integrate_with_breakpoints(
                    &move |b: f64| rh2(0.0, b) * c(b),
                    -a_max,
                    a_max,
                    &[-1.0, 0.0, 1.0],
                    1e-9,
                )
                .value
            }
            kernels::DeltaAtomLocation::AtBZero => {
                let rh2 = kernel2d.r_hat.clone();
                let c = atom.coefficient;
                quad::integrate_with_breakpoints(
                    &move |a: f64| rh2(a, 0.0) * c(a),
                    -a_max,
                    a_max,
                    &[-1.0, 0.0, 1.0],
                    1e-9,
                )
                .value
            }
            kernels::DeltaAtomLocation::AtAPlusBZero => {
                let rh2 = kernel2d.r_hat.clone();
                let c = atom.coefficient;
                quad::integrate_with_breakpoints(
                    &move |a: f64| rh2(a, -a) * c(a),
                    -a_max,
                    a_max,
                    &[-1.0, 0.0, 1.0],
                    1e-9,
                )
                .value
            }
        };
    }
    // smooth part: iterated quadrature with kink-aware breakpoints
    let rh2 = kernel2d.r_hat.clone();
    let inner = move |a: f64| {
        let rh3 = rh2.clone();
        let f = move |b: f64| rh3(a, b) * kernels::hexagon(a, b).h_star;
        let breaks = [
            0.0,
            1.0,
            -1.0,
            -a,
            -a + 1.0,
            -a - 1.0,
            (2.0 - a.abs() - a) / 2.0,
            -(2.0 - a.abs() + a) / 2.0,
            1.0 - a,
            -1.0 - a,
        ];
        quad::integrate_with_breakpoints(&f, -a_max - 0.25, a_max + 0.25, &breaks, 2e-10).value
    };
    let outer = quad::integrate_with_breakpoints(
        &inner,
        -a_max - 0.25,
        a_max + 0.25,
        &[-2.0, -1.0, 0.0, 1.0, 2.0],
        1e-8,
    )
    .value;
    Ok(total + outer)
}

/// Dispatch over conjecture kinds; `n` is 1 for the untwisted statistics.
pub fn conjecture_rhs(
    kind: ConjectureKind,
    kernel: Option<&TestKernel>,
    kernel2d: Option<&TestKernel2>,
    n: u64,
    t: f64,
) -> Result<f64> {
    match kind {
        ConjectureKind::Pair => pair_rhs(kernel.ok_or(Error::InvalidArgument {
            what: "conjecture_rhs",
            detail: "pair kind needs a 1D kernel".into(),
        })?),
        ConjectureKind::TwistedPair => {
            let pp = PrimePower::new(n)?;
            twisted_pair_rhs(
                kernel.ok_or(Error::InvalidArgument {
                    what: "conjecture_rhs",
                    detail: "twisted kind needs a 1D kernel".into(),
                })?,
                &pp,
                t,
            )
        }
        ConjectureKind::Triple => triple_rhs(kernel2d.ok_or(Error::InvalidArgument {
            what: "conjecture_rhs",
            detail: "triple kind needs a 2D kernel".into(),
        })?),
    }
}

/// Error-band rendering of the conjectures' O(.) terms at a given run scale.
pub fn tolerance_band(kind: ConjectureKind, n: u64, t: f64, alpha: Option<f64>) -> f64 {
    let l = t.ln();
    match kind {
        ConjectureKind::Pair | ConjectureKind::Triple => 1.0 / l,
        ConjectureKind::TwistedPair => {
            // E_n = (a-1) log q / log T + 1/log T, plus the T^{-2 alpha}-scale
            // O(1) of the strong form when alpha is pinned
            let extra = match (PrimePower::new(n), alpha) {
                (Ok(pp), Some(a)) => {
                    (pp.a as f64 - 1.0) * pp.lambda / l
                        + (-2.0 * a.abs() * l).exp() * (1.0 + 1.0 / (pp.n * pp.n) as f64)
                }
                (Ok(pp), None) => (pp.a as f64 - 1.0) * pp.lambda / l,
                _ => 0.0,
            };
            extra + 1.0 / l
        }
    }
}

/// Second/third moment predictions at height T.
#[derive(Clone, Copy, Debug)]
pub struct MomentPredictions {
    pub second_re: f64,
    pub second_im: f64,
    pub third_re: f64,
    pub third_im: f64,
}

pub fn moment_predictions(t: f64) -> MomentPredictions {
    let second = 0.5 * t.ln().ln() + (EULER_GAMMA + 1.0) / 2.0 + goldston_sum_default();
    MomentPredictions {
        second_re: second,
        second_im: second,
        third_re: c_p_default() + C_Z,
        third_im: 0.0,
    }
}

fn goldston_sum_default() -> f64 {
    static G: OnceLock<f64> = OnceLock::new();
    *G.get_or_init(|| arithmetic::goldston_prime_sum(1_000_000))
}

/// Mixed-moment predictions as functions of beta = log x / log T.
#[derive(Clone, Copy, Debug)]
pub struct MixedMomentPredictions {
    pub beta: f64,
    /// the shared integral I(beta)
    pub i_beta: f64,
    pub p3: f64,
    pub p2z: f64,
    pub pz2: f64,
    pub z3: f64,
}

/// I(beta) = int_0^beta (g(b/beta)/beta - 1/b) L(b) db; the integrand tends
/// to -1 at 0.
pub fn mixed_moment_integral(beta: f64) -> Result<f64> {
    if !(0.0 < beta && beta <= 1.0) {
        return Err(Error::Domain {
            what: "mixed_moment_integral beta",
            value: beta,
        });
    }
    let integrand = |b: f64| {
        if b < 1e-12 {
            return -1.0;
        }
        let g = kernels::eval_aux(kernels::AuxFunctionKind::GRe, b / beta).unwrap();
        let l = kernels::l_func(b).unwrap();
        g / beta * l - l / b
    };
    Ok(quad::integrate(&integrand, 0.0, beta, 1e-9).value)
}

pub fn mixed_moment_predictions(beta: f64) -> Result<MixedMomentPredictions> {
    let i_beta = mixed_moment_integral(beta)?;
    Ok(MixedMomentPredictions {
        beta,
        i_beta,
        p3: c_p_default(),
        p2z: 0.0,
        pz2: 0.5 * i_beta,
        z3: C_Z - 1.5 * i_beta,
    })
}

/// Characteristic-polynomial moment M_N(s) and the Euler-product factor a(s).
pub fn keating_snaith(s: f64, n: u32, p_max: u64) -> Result<(f64, f64)> {
    if s <= -0.5 {
        return Err(Error::Domain {
            what: "keating_snaith s",
            value: s,
        });
    }
    if n < 1 {
        return Err(Error::InvalidArgument {
            what: "keating_snaith",
            detail: "N must be at least 1".into(),
        });
    }
    let mut log_m = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        log_m += ln_gamma(jf) + ln_gamma(jf + 2.0 * s) - 2.0 * ln_gamma(jf + s);
    }
    let primes = arithmetic::primes_up_to(p_max);
    let logs: Vec<f64> = primes
        .iter()
        .map(|&p| {
            let pf = p as f64;
            // sum_m ((s)_m / m!)^2 p^{-m}
            let mut coeff = 1.0f64; // (s)_m / m!
            let mut acc = 1.0f64;
            let mut pw = 1.0f64;
            for m in 0..200u32 {
                coeff *= (s + m as f64) / (m as f64 + 1.0);
                pw /= pf;
                let term = coeff * coeff * pw;
                acc += term;
                if term.abs() < 1e-18 * acc.abs() {
                    break;
                }
            }
            s * s * (1.0 - 1.0 / pf).ln() + acc.ln()
        })
        .collect();
    let log_a = crate::util::pairwise_sum(&logs);
    Ok((log_m.exp(), log_a.exp()))
}

/// Central third finite difference with Richardson extrapolation; the spec's
/// step scan is {1e-1, 3e-2, 1e-2}; pass the evaluated f.
pub fn third_derivative_fd<F: Fn(f64) -> f64>(f: F, h: f64) -> f64 {
    let d3 = |h: f64| {
        (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h * h * h)
    };
    let a = d3(h);
    let b = d3(h / 2.0);
    (4.0 * b - a) / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predict_f_values() {
        let t = 1e6;
        assert!((predict_f(0.0, t) - t.ln()).abs() < 1e-12);
        assert!((predict_f(2.0, t) - 1.0).abs() < 1e-9);
        let e10 = 10f64.exp();
        let v = predict_f(0.5, e10.powi(1));
        assert!((v - ((-10.0f64).exp() * 10.0 + 0.5)).abs() < 1e-12);
    }

    #[test]
    fn intermediate_prediction_shape() {
        let n = PrimePower::new(8).unwrap();
        let t = 1e5f64;
        let l = t.ln();
        let beta = n.log_n() / l;
        let at0 = predict_f_twisted(1.0 - beta, &n, t, TwistedRegime::Intermediate).unwrap();
        assert_eq!(at0, 0.0);
        let at1 =
            predict_f_twisted(1.0 - (n.log_n() - n.lambda) / l, &n, t, TwistedRegime::Intermediate)
                .unwrap();
        assert!((at1 - 1.0).abs() < 1e-12);
        // continuity and monotonicity on a grid
        let mut prev = -1.0;
        for i in 0..400 {
            let a = -2.0 + i as f64 * 0.015;
            let v = predict_f_twisted(a, &n, t, TwistedRegime::Intermediate).unwrap();
            assert!((0.0..=1.0).contains(&v));
            assert!(v >= prev - 1e-14);
            prev = v;
        }
    }

    #[test]
    fn strong_prediction_symmetry() {
        let t = 3e4f64;
        for nn in [2u64, 3, 9] {
            let n = PrimePower::new(nn).unwrap();
            let beta = n.log_n() / t.ln();
            for &alpha in &[-1.5, -0.9, -0.3, -0.05, 0.0, 0.1, 0.6, 1.2] {
                let a = predict_f_twisted(alpha, &n, t, TwistedRegime::Strong).unwrap();
                let b =
                    predict_f_twisted(-alpha - beta, &n, t, TwistedRegime::Strong).unwrap();
                assert!((a - b).abs() < 1e-10, "n={nn} alpha={alpha}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn strong_small_alpha_value() {
        // alpha -> 0+ with n = 2: log T + log T / 4 - r1(0+, 2)
        let t = 1e5;
        let n = PrimePower::new(2).unwrap();
        let v = predict_f_twisted(1e-9, &n, t, TwistedRegime::Strong).unwrap();
        let (r1, _) = arithmetic::r_spikes(1e-9, &n, t);
        let main = t.ln() * 1.25;
        assert!((v - (main - r1)).abs() < 1e-6, "{v} vs {}", main - r1);
    }

    #[test]
    fn pair_rhs_closed_form() {
        // triangular r-hat on [-1,1], peak 1: 1 + 2 int_0^1 (1-a) a da = 4/3
        let k = TestKernel::fejer(1.0);
        let v = pair_rhs(&k).unwrap();
        assert!((v - (1.0 + 1.0 / 3.0)).abs() < 1e-8, "{v}");
    }

    #[test]
    fn twisted_rhs_delta_only_when_support_is_clear() {
        // r-hat supported inside (-1, 1 - log n/log T): m_n vanishes there
        // and only the delta evaluations survive.
        let t = 1e8;
        let n = PrimePower::new(3).unwrap();
        let k = TestKernel::fejer(0.5);
        let v = twisted_pair_rhs(&k, &n, t).unwrap();
        let beta = n.log_n() / t.ln();
        let expect = 0.5 * ((k.r_hat)(0.0) + (k.r_hat)(-beta));
        assert!((v - expect).abs() < 1e-8, "{v} vs {expect}");
    }

    #[test]
    fn m_n_and_hexagon_routes_agree() {
        let t = 31_622.0;
        let k = TestKernel::fejer(1.0);
        for q in [2u64, 5, 13] {
            let n = PrimePower::new(q).unwrap();
            let a = twisted_pair_rhs(&k, &n, t).unwrap();
            let b = twisted_rhs_via_hexagon(&k, &n, t).unwrap();
            assert!((a - b).abs() < 1e-8, "q={q}: {a} vs {b}");
        }
    }

    #[test]
    fn triple_rhs_monte_carlo_cross_check() {
        let k2 = TestKernel2::separable(&TestKernel::fejer(1.0));
        let exact = triple_rhs(&k2).unwrap();
        // seeded xorshift Monte Carlo over the support square for the smooth
        // part, plus exact atoms
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let a_max = 1.25;
        let samples = 4_000_000;
        let mut acc = 0.0;
        for _ in 0..samples {
            let a = (2.0 * rng() - 1.0) * a_max;
            let b = (2.0 * rng() - 1.0) * a_max;
            acc += (k2.r_hat)(a, b) * kernels::hexagon(a, b).h_star;
        }
        let area = (2.0 * a_max) * (2.0 * a_max);
        let smooth_mc = acc / samples as f64 * area;
        let mut atoms = (k2.r_hat)(0.0, 0.0);
        let breaks = [-1.0, 0.0, 1.0];
        let rh = k2.r_hat.clone();
        atoms += quad::integrate_with_breakpoints(&|b: f64| rh(0.0, b) * min1(b), -1.25, 1.25, &breaks, 1e-10).value;
        let rh = k2.r_hat.clone();
        atoms += quad::integrate_with_breakpoints(&|a: f64| rh(a, 0.0) * min1(a), -1.25, 1.25, &breaks, 1e-10).value;
        let rh = k2.r_hat.clone();
        atoms += quad::integrate_with_breakpoints(&|a: f64| rh(a, -a) * min1(a), -1.25, 1.25, &breaks, 1e-10).value;
        let mc_total = atoms + smooth_mc;
        assert!(
            (exact - mc_total).abs() < 1e-3,
            "quadrature {exact} vs MC {mc_total}"
        );
    }

    #[test]
    fn moment_prediction_structure() {
        let m1 = moment_predictions(1e4);
        let m2 = moment_predictions(1e6);
        assert_eq!(m1.third_im, 0.0);
        assert!((m1.third_re - (c_p_default() - PI * PI / 4.0)).abs() < 1e-12);
        // only the loglog term moves the second moment
        let d = m2.second_re - m1.second_re;
        let expect = 0.5 * ((1e6f64).ln().ln() - (1e4f64).ln().ln());
        assert!((d - expect).abs() < 1e-12);
        assert!((m1.third_re + 2.236).abs() < 0.01, "{}", m1.third_re);
    }

    #[test]
    fn mixed_moment_combination_cancels() {
        for &beta in &[0.05, 0.25, 0.6, 1.0] {
            let m = mixed_moment_predictions(beta).unwrap();
            let combo = m.p3 + 3.0 * m.p2z + 3.0 * m.pz2 + m.z3;
            assert!(
                (combo - (c_p_default() + C_Z)).abs() < 1e-14,
                "beta={beta}"
            );
        }
    }

    #[test]
    fn mixed_moment_integral_small_beta_finite() {
        let i1 = mixed_moment_integral(1e-3).unwrap();
        assert!(i1.abs() < 0.01, "I(0+) should vanish, got {i1}");
        let i2 = mixed_moment_integral(0.5).unwrap();
        assert!(i2.is_finite() && i2 < 0.0);
    }

    #[test]
    fn keating_snaith_at_zero() {
        let (m, a) = keating_snaith(0.0, 64, 10_000).unwrap();
        assert!((m - 1.0).abs() < 1e-12);
        assert!((a - 1.0).abs() < 1e-12);
        assert!(keating_snaith(-0.6, 8, 1000).is_err());
    }

    #[test]
    fn keating_snaith_third_derivative_constants() {
        // (1/8) M_N'''(0) -> -pi^2/4, monotone in N
        let mut prev = f64::INFINITY;
        for &n in &[50u32, 200, 800] {
            let fd = third_derivative_fd(|s| keating_snaith(s, n, 2).unwrap().0, 0.02) / 8.0;
            assert!(fd < prev);
            prev = fd;
            if n == 800 {
                assert!((fd - C_Z).abs() < 0.02, "N=800: {fd} vs {C_Z}");
            }
        }
        // (1/8) a'''(0) -> c_P
        let fd_a =
            third_derivative_fd(|s| keating_snaith(s, 1, 200_000).unwrap().1, 0.02) / 8.0;
        assert!(
            (fd_a - c_p_default()).abs() < 1e-3,
            "{fd_a} vs {}",
            c_p_default()
        );
    }
}
