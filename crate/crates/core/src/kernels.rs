//! The auxiliary special functions and correlation kernels: the Fourier pair
//! (h, h-hat) and its odd companion, the hexagon function of the triple
//! correlation density, the trapezoid weight m_n, and the Cauchy windows.

use crate::arithmetic::PrimePower;
use crate::error::{Error, Result};
use crate::quad;
use crate::special::{cos_tail_over_t2, cos_tail_over_t4};
use crate::util::Complex;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// The five auxiliary functions.
///
/// `FRe`, `GRe`, `HRe` enter the real-part decomposition of log zeta,
/// `FIm`, `HIm` the imaginary-part one. `FIm` is evaluated on its even
/// extension (-2, 2) so the parity checks have something to compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxFunctionKind {
    FRe,
    GRe,
    HRe,
    FIm,
    HIm,
}

/// Arguments of the h-type kernels are kept away from the log singularity.
const U_CAP: f64 = 1e-8;

/// Evaluate the defining integral / closed form of an auxiliary function.
///
/// Quadrature-backed to 1e-10 absolute; the table-backed fast paths used by
/// the statistics live in [`h_kernel`] and [`frak_h_kernel`].
pub fn eval_aux(kind: AuxFunctionKind, u: f64) -> Result<f64> {
    match kind {
        AuxFunctionKind::FRe => {
            if u <= 0.0 || u >= 2.0 {
                return Err(Error::Domain {
                    what: "f (real-part weight)",
                    value: u,
                });
            }
            Ok(u * f_integral(u))
        }
        AuxFunctionKind::GRe => {
            if u.abs() >= 2.0 {
                return Err(Error::Domain {
                    what: "g (real-part weight)",
                    value: u,
                });
            }
            Ok(g_integral(u.abs()))
        }
        AuxFunctionKind::HRe => {
            if u == 0.0 {
                return Err(Error::Domain {
                    what: "h kernel",
                    value: u,
                });
            }
            let v = u.abs().max(U_CAP);
            Ok(v.cos() * psi_cosh(v))
        }
        AuxFunctionKind::FIm => {
            if u.abs() >= 2.0 {
                return Err(Error::Domain {
                    what: "imaginary-part prime weight",
                    value: u,
                });
            }
            Ok(frak_f(u))
        }
        AuxFunctionKind::HIm => {
            if u == 0.0 {
                return Err(Error::Domain {
                    what: "odd h kernel",
                    value: u,
                });
            }
            let v = u.abs().max(U_CAP);
            Ok(u.signum() * v.sin() * psi_sinh(v))
        }
    }
}

/// f(u) = u \int_0^inf sinh(y(1-u))/cosh(y) dy on (0, 2).
fn f_integral(u: f64) -> f64 {
    let rate = u.min(2.0 - u);
    // sinh(y(1-u))/cosh(y) written with negative exponents only.
    let integrand = |y: f64| {
        let denom = 1.0 + (-2.0 * y).exp();
        if u <= 1.0 {
            let a = 1.0 - u;
            -(-u * y).exp() * (-2.0 * a * y).exp_m1() / denom
        } else {
            let a = u - 1.0;
            (-(2.0 - u) * y).exp() * (-2.0 * a * y).exp_m1() / denom
        }
    };
    quad::integrate_exp_decay(&integrand, rate, 1e-12).value
}

/// g(u) = \int_0^inf e^{-y} cosh(uy)/cosh(y) dy on (-2, 2); even.
fn g_integral(u: f64) -> f64 {
    let rate = 2.0 - u;
    let integrand = |y: f64| {
        (-((2.0 - u) * y)).exp() * (1.0 + (-2.0 * u * y).exp()) / (1.0 + (-2.0 * y).exp())
    };
    quad::integrate_exp_decay(&integrand, rate, 1e-12).value
}

/// (pi u / 2) cot(pi u / 2), the imaginary-part prime weight; even, = 1 at 0.
fn frak_f(u: f64) -> f64 {
    let x = PI * u.abs() / 2.0;
    if x < 1e-4 {
        // x cot x = 1 - x^2/3 - x^4/45 - ...
        return 1.0 - x * x / 3.0 - x.powi(4) / 45.0;
    }
    x * x.cos() / x.sin()
}

/// psi_c(u) = \int_0^inf y sech(y) / (y^2 + u^2) dy, u > 0.
///
/// The elementary part (1/2) ln(1 + 1/u^2) is split off exactly; the smooth
/// remainders are quadratured.
pub(crate) fn psi_cosh(u: f64) -> f64 {
    0.5 * (1.0 + 1.0 / (u * u)).ln_1p_guard() + psi_cosh_resid(u)
}

// sech(y) - 1 without cancellation for small y.
fn sech_m1(y: f64) -> f64 {
    if y < 0.1 {
        let y2 = y * y;
        return y2
            * (-0.5
                + y2 * (5.0 / 24.0
                    + y2 * (-61.0 / 720.0 + y2 * (277.0 / 8064.0 - y2 * 50521.0 / 3628800.0))));
    }
    2.0 / (y.exp() + (-y).exp()) - 1.0
}

// y/sinh(y) - 1 without cancellation for small y.
fn y_over_sinh_m1(y: f64) -> f64 {
    if y < 0.1 {
        let y2 = y * y;
        return y2
            * (-1.0 / 6.0
                + y2 * (7.0 / 360.0
                    + y2 * (-31.0 / 15120.0 + y2 * (127.0 / 604800.0 - y2 * 73.0 / 3421440.0))));
    }
    y / y.sinh() - 1.0
}

fn psi_cosh_resid(u: f64) -> f64 {
    let u2 = u * u;
    // the integrand crosses over at y ~ u; force panel edges there
    let scale_breaks = [0.1 * u, u, 10.0 * u, 100.0 * u];
    let near = quad::integrate_with_breakpoints(
        &|y: f64| y * sech_m1(y) / (y * y + u2),
        0.0,
        1.0,
        &scale_breaks,
        1e-13,
    )
    .value;
    let far = quad::integrate_exp_decay(
        &|z: f64| {
            let y = 1.0 + z;
            let sech = 2.0 / (y.exp() + (-y).exp());
            y * sech / (y * y + u2)
        },
        1.0,
        1e-13,
    )
    .value;
    near + far
}

/// psi_s(u) = \int_0^inf (y / sinh y) / (y^2 + u^2) dy, u > 0.
pub(crate) fn psi_sinh(u: f64) -> f64 {
    (1.0 / u).atan() / u + psi_sinh_resid(u)
}

fn psi_sinh_resid(u: f64) -> f64 {
    let u2 = u * u;
    let scale_breaks = [0.1 * u, u, 10.0 * u, 100.0 * u];
    let near = quad::integrate_with_breakpoints(
        &|y: f64| y_over_sinh_m1(y) / (y * y + u2),
        0.0,
        1.0,
        &scale_breaks,
        1e-13,
    )
    .value;
    let far = quad::integrate_exp_decay(
        &|z: f64| {
            let y = 1.0 + z;
            (y / y.sinh()) / (y * y + u2)
        },
        1.0,
        1e-13,
    )
    .value;
    near + far
}

trait LnGuard {
    fn ln_1p_guard(self) -> f64;
}
impl LnGuard for f64 {
    // ln of an already-formed 1 + 1/u^2; plain ln is fine since the value
    // is far from 1 whenever precision matters.
    fn ln_1p_guard(self) -> f64 {
        self.ln()
    }
}

// ---------------------------------------------------------------------------
// cached fast kernels
// ---------------------------------------------------------------------------

/// Cubic (Catmull-Rom) interpolation over a uniform grid.
pub(crate) struct CachedCurve {
    lo: f64,
    step: f64,
    vals: Vec<f64>,
}

impl CachedCurve {
    pub(crate) fn build<F: Fn(f64) -> f64 + Sync>(lo: f64, hi: f64, n: usize, f: F) -> CachedCurve {
        use rayon::prelude::*;
        let step = (hi - lo) / (n - 1) as f64;
        let vals: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|i| f(lo + i as f64 * step))
            .collect();
        CachedCurve { lo, step, vals }
    }

    // virtual point with linear extension past the ends
    fn v(&self, j: isize) -> f64 {
        let n = self.vals.len() as isize;
        if j < 0 {
            2.0 * self.vals[0] - self.vals[(-j) as usize]
        } else if j >= n {
            2.0 * self.vals[(n - 1) as usize] - self.vals[(2 * (n - 1) - j) as usize]
        } else {
            self.vals[j as usize]
        }
    }

    pub(crate) fn eval(&self, x: f64) -> f64 {
        let n = self.vals.len() as isize;
        let s = (x - self.lo) / self.step;
        let i = (s.floor() as isize).clamp(0, n - 2);
        let t = s - i as f64;
        let (p0, p1, p2, p3) = (self.v(i - 1), self.v(i), self.v(i + 1), self.v(i + 2));
        0.5 * (2.0 * p1
            + t * ((p2 - p0)
                + t * ((2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) + t * (3.0 * (p1 - p2) + p3 - p0))))
    }
}

const ASYMPTOTIC_CUT: f64 = 40.0;

struct KernelTables {
    cosh_resid: CachedCurve,
    sinh_resid: CachedCurve,
    /// odd moments of sech: m_{2k+1} = int y^{2k+1} sech y dy
    m_cosh: Vec<f64>,
    /// odd moments of 1/sinh
    m_sinh: Vec<f64>,
}

fn tables() -> &'static KernelTables {
    static T: OnceLock<KernelTables> = OnceLock::new();
    T.get_or_init(|| {
        let w_lo = (1e-9f64).ln();
        let w_hi = (ASYMPTOTIC_CUT * 1.05).ln();
        let n = 6000;
        let cosh_resid = CachedCurve::build(w_lo, w_hi, n, |w| psi_cosh_resid(w.exp()));
        let sinh_resid = CachedCurve::build(w_lo, w_hi, n, |w| psi_sinh_resid(w.exp()));
        let moment = |j: i32, sinh: bool| -> f64 {
            quad::integrate_exp_decay(
                &|y: f64| {
                    if y < 1e-12 {
                        return 0.0;
                    }
                    let base = if sinh { 1.0 / y.sinh() } else { 2.0 / (y.exp() + (-y).exp()) };
                    y.powi(j) * base
                },
                0.5,
                1e-14,
            )
            .value
        };
        let m_cosh = (0..10).map(|k| moment(2 * k + 1, false)).collect();
        let m_sinh = (0..10).map(|k| moment(2 * k + 1, true)).collect();
        KernelTables {
            cosh_resid,
            sinh_resid,
            m_cosh,
            m_sinh,
        }
    })
}

fn psi_asymptotic(u: f64, moments: &[f64]) -> f64 {
    // psi(u) = sum_k (-1)^k m_{2k+1} / u^{2k+2}
    let inv2 = 1.0 / (u * u);
    let mut acc = 0.0;
    let mut pw = inv2;
    let mut prev = f64::INFINITY;
    for (k, &m) in moments.iter().enumerate() {
        let term = if k % 2 == 0 { m * pw } else { -m * pw };
        if term.abs() >= prev {
            break;
        }
        acc += term;
        prev = term.abs();
        pw *= inv2;
    }
    acc
}

pub(crate) fn psi_cosh_fast(u: f64) -> f64 {
    let t = tables();
    if u >= ASYMPTOTIC_CUT {
        return psi_asymptotic(u, &t.m_cosh);
    }
    0.5 * (1.0 + 1.0 / (u * u)).ln() + t.cosh_resid.eval(u.max(1e-9).ln())
}

pub(crate) fn psi_sinh_fast(u: f64) -> f64 {
    let t = tables();
    if u >= ASYMPTOTIC_CUT {
        return psi_asymptotic(u, &t.m_sinh);
    }
    (1.0 / u).atan() / u + t.sinh_resid.eval(u.max(1e-9).ln())
}

/// Fast h(u); table-backed, ~1e-9 absolute. Used inside zero sums.
pub fn h_kernel(u: f64) -> f64 {
    let v = u.abs().max(U_CAP);
    v.cos() * psi_cosh_fast(v)
}

/// Fast odd kernel; table-backed.
pub fn frak_h_kernel(u: f64) -> f64 {
    if u == 0.0 {
        return 0.0;
    }
    let v = u.abs().max(U_CAP);
    u.signum() * v.sin() * psi_sinh_fast(v)
}

// ---------------------------------------------------------------------------
// Fourier transforms
// ---------------------------------------------------------------------------

/// hat h(0) = pi ln 2.
pub fn h_hat0() -> f64 {
    PI * 2f64.ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HKind {
    HRe,
    HIm,
}

/// Closed-form transform of h; numerically computed transform of the odd
/// kernel (no closed form is available for the latter).
/// Convention: r-hat(a) = int r(t) e^{-2 pi i a t} dt.
pub fn h_hat(a: f64, kind: HKind) -> Complex {
    match kind {
        HKind::HRe => {
            let aa = a.abs();
            let v = if aa <= 1.0 / (2.0 * PI) {
                PI * g_closed(2.0 * PI * aa)
            } else {
                1.0 / (2.0 * aa)
            };
            Complex::new(v, 0.0)
        }
        HKind::HIm => {
            // The numerical transform has a kink at the resonance a = 1/(2 pi)
            // (where 2 pi a - 1 changes sign); interpolate separately on the
            // two sides, log-spaced on the right where the curve is steep.
            let a0 = 1.0 / (2.0 * PI);
            static LEFT: OnceLock<CachedCurve> = OnceLock::new();
            static RIGHT: OnceLock<CachedCurve> = OnceLock::new();
            let aa = a.abs();
            if aa <= a0 {
                let left = LEFT.get_or_init(|| {
                    CachedCurve::build(0.0, a0, 700, |x| {
                        fourier_transform_numeric(HKind::HIm, x).im
                    })
                });
                Complex::new(0.0, left.eval(aa) * a.signum())
            } else if aa <= 15.8 {
                let right = RIGHT.get_or_init(|| {
                    CachedCurve::build(a0.ln(), 16f64.ln(), 2400, |w| {
                        fourier_transform_numeric(HKind::HIm, w.exp()).im
                    })
                });
                Complex::new(0.0, right.eval(aa.ln()) * a.signum())
            } else {
                fourier_transform_numeric(HKind::HIm, a)
            }
        }
    }
}

/// g via its cached table (the transform needs it densely).
fn g_closed(u: f64) -> f64 {
    static CURVE: OnceLock<CachedCurve> = OnceLock::new();
    let curve = CURVE.get_or_init(|| CachedCurve::build(-1.0002, 1.0002, 2400, g_integral));
    curve.eval(u.abs())
}

/// Direct oscillatory quadrature of the Fourier transform of h (even) or of
/// the odd kernel, with analytic 1/t^2 + 1/t^4 tails beyond t0 = 200.
///
/// This is the independent route checked against the closed form.
pub fn fourier_transform_numeric(kind: HKind, a: f64) -> Complex {
    let t0 = 200.0;
    let w_minus = 2.0 * PI * a - 1.0;
    let w_plus = 2.0 * PI * a + 1.0;
    let t = tables();
    match kind {
        HKind::HRe => {
            // int_0^inf psi_c(t) [cos(w- t) + cos(w+ t)] dt
            let finite = oscillatory_panels(
                &|x| psi_cosh_fast(x.max(U_CAP)),
                w_minus,
                w_plus,
                1.0,
                t0,
                true,
            );
            let tail = t.m_cosh[0] * (cos_tail_over_t2(w_minus, t0) + cos_tail_over_t2(w_plus, t0))
                - t.m_cosh[1] * (cos_tail_over_t4(w_minus, t0) + cos_tail_over_t4(w_plus, t0));
            Complex::new(finite + tail, 0.0)
        }
        HKind::HIm => {
            // -2i * int_0^inf frak_h(t) sin(2 pi a t) dt
            //  = -i * int_0^inf psi_s(t) [cos(w- t) - cos(w+ t)] dt
            let finite = oscillatory_panels(
                &|x| psi_sinh_fast(x.max(U_CAP)),
                w_minus,
                w_plus,
                -1.0,
                t0,
                false,
            );
            let tail = t.m_sinh[0] * (cos_tail_over_t2(w_minus, t0) - cos_tail_over_t2(w_plus, t0))
                - t.m_sinh[1] * (cos_tail_over_t4(w_minus, t0) - cos_tail_over_t4(w_plus, t0));
            Complex::new(0.0, -(finite + tail))
        }
    }
}

/// Panel integration of psi(t) (cos(w1 t) + sign * cos(w2 t)) over [0, t0].
/// Panels resolve the faster oscillation; the first panel is geometrically
/// refined toward 0 when the factor psi is log-singular there.
fn oscillatory_panels<F: Fn(f64) -> f64>(
    psi: &F,
    w1: f64,
    w2: f64,
    sign: f64,
    t0: f64,
    refine_origin: bool,
) -> f64 {
    let rule = quad::GaussRule::new(12);
    let freq = w1.abs().max(w2.abs()).max(0.5);
    let width = (PI / freq / 2.0).min(t0 / 8.0);
    let integrand = |x: f64| psi(x) * ((w1 * x).cos() + sign * (w2 * x).cos());
    let mut acc = 0.0;
    let first_end = width;
    if refine_origin {
        // geometric panels [w 4^{-j-1}, w 4^{-j}]
        let mut hi = width;
        for _ in 0..24 {
            let lo = hi / 4.0;
            acc += rule.integrate(integrand, lo, hi);
            hi = lo;
        }
        // the [0, hi] leftover: psi ~ ln(1/t), mass ~ hi ln(1/hi)
        acc += rule.integrate(integrand, 0.0, hi);
    } else {
        acc += rule.integrate(integrand, 0.0, width);
    }
    let mut lo = first_end;
    while lo < t0 {
        let hi = (lo + width).min(t0);
        acc += rule.integrate(integrand, lo, hi);
        lo = hi;
    }
    acc
}

// ---------------------------------------------------------------------------
// hexagon / trapezoid weights
// ---------------------------------------------------------------------------

/// G(a,b) and H_*(a,b) of the triple correlation density.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HexagonValue {
    pub g_val: f64,
    pub h_star: f64,
}

pub fn min1(x: f64) -> f64 {
    x.abs().min(1.0)
}

/// G(a,b) = max((2 - |a| - |b| - |a+b|)/2, 0);
/// H_*(a,b) = 2G + min{|a|,1} + min{|b|,1} + min{|a+b|,1} - 2.
pub fn hexagon(a: f64, b: f64) -> HexagonValue {
    let g_val = (0.5 * (2.0 - a.abs() - b.abs() - (a + b).abs())).max(0.0);
    let h_star = 2.0 * g_val + min1(a) + min1(b) + min1(a + b) - 2.0;
    HexagonValue { g_val, h_star }
}

/// Location of a Dirac atom of the triple-correlation density H_delta.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaAtomLocation {
    /// delta(a) delta(b): point mass at the origin.
    Origin,
    /// delta(a) with a coefficient in b.
    AtAZero,
    /// delta(b) with a coefficient in a.
    AtBZero,
    /// delta(a+b) with a coefficient in a.
    AtAPlusBZero,
}

/// One atom of H_delta; `coefficient` is the density in the complementary
/// variable (identically 1 for the origin atom).
#[derive(Clone, Copy)]
pub struct DeltaAtom {
    pub location: DeltaAtomLocation,
    pub coefficient: fn(f64) -> f64,
}

/// The fixed four-atom decomposition
/// H_delta = delta(a)delta(b) + delta(a)min{|b|,1} + delta(b)min{|a|,1}
///           + delta(a+b)min{|a|,1}.
pub fn h_delta_decomposition() -> [DeltaAtom; 4] {
    fn one(_: f64) -> f64 {
        1.0
    }
    [
        DeltaAtom {
            location: DeltaAtomLocation::Origin,
            coefficient: one,
        },
        DeltaAtom {
            location: DeltaAtomLocation::AtAZero,
            coefficient: min1,
        },
        DeltaAtom {
            location: DeltaAtomLocation::AtBZero,
            coefficient: min1,
        },
        DeltaAtom {
            location: DeltaAtomLocation::AtAPlusBZero,
            coefficient: min1,
        },
    ]
}

/// The trapezoid weight of the twisted pair correlation conjecture;
/// half-open boundary convention exactly as printed.
pub fn m_weight(alpha: f64, n: &PrimePower, t: f64) -> Result<f64> {
    if t <= std::f64::consts::E {
        return Err(Error::Domain {
            what: "m_weight T",
            value: t,
        });
    }
    let l = t.ln();
    let lam = n.lambda;
    let ln_n = n.log_n();
    let v = if alpha < -1.0 - lam / l {
        1.0
    } else if alpha < -1.0 {
        (l / lam) * (-alpha - 1.0)
    } else if alpha < 1.0 - ln_n / l {
        0.0
    } else if alpha < 1.0 - (ln_n - lam) / l {
        (l / lam) * (alpha - 1.0 + ln_n / l)
    } else {
        1.0
    };
    Ok(v)
}

// ---------------------------------------------------------------------------
// Cauchy windows
// ---------------------------------------------------------------------------

/// omega(x) = 4/(4+x^2).
pub fn omega_weight(x: f64) -> f64 {
    4.0 / (4.0 + x * x)
}

/// Smooth bump: 0 off [1,2], 1 on [1+1/U, 2-1/U], C-infinity transitions.
pub fn psi_bump(s: f64, u: f64) -> Result<f64> {
    if u < 2.0 {
        return Err(Error::Domain {
            what: "psi_bump U",
            value: u,
        });
    }
    Ok(psi_bump_unchecked(s, u))
}

pub(crate) fn psi_bump_unchecked(s: f64, u: f64) -> f64 {
    if s <= 1.0 || s >= 2.0 {
        return 0.0;
    }
    let inv = 1.0 / u;
    if s >= 1.0 + inv && s <= 2.0 - inv {
        return 1.0;
    }
    let x = if s < 1.0 + inv {
        (s - 1.0) * u
    } else {
        (2.0 - s) * u
    };
    smoothstep(x)
}

fn smoothstep(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let e = |v: f64| (-1.0 / v).exp();
    e(x) / (e(x) + e(1.0 - x))
}

/// Smoothed Cauchy pair weight
/// omega_psi(γ, γ') = (2/pi) int C(t-γ) C(t-γ') psi_U(t/T) dt.
///
/// Evaluated as omega(γ-γ') minus the mass where 1 - psi_U lives; the full-
/// line product integral is the closed form omega.
pub fn omega_smoothed(gamma: f64, gamma2: f64, t_height: f64, u: f64) -> Result<f64> {
    if t_height <= 0.0 {
        return Err(Error::Domain {
            what: "omega_smoothed T",
            value: t_height,
        });
    }
    if u < 2.0 {
        return Err(Error::Domain {
            what: "omega_smoothed U",
            value: u,
        });
    }
    let cauchy = |x: f64| 1.0 / (1.0 + x * x);
    let product = |t: f64| cauchy(t - gamma) * cauchy(t - gamma2);
    // complement regions: t <= T(1+1/U) and t >= T(2-1/U)
    let lo_edge = t_height * (1.0 + 1.0 / u);
    let hi_edge = t_height * (2.0 - 1.0 / u);
    let far = 40_000.0f64.max(8.0 * t_height);
    let mut corr = 0.0;
    for (lo, hi) in [
        ((gamma.min(gamma2) - far).min(lo_edge - far), lo_edge),
        (hi_edge, (gamma.max(gamma2) + far).max(hi_edge + far)),
    ] {
        // quick bound: the product is at most C(dist to the region)
        let d1 = dist_to_interval(gamma, lo, hi);
        let d2 = dist_to_interval(gamma2, lo, hi);
        let bound = cauchy(d1).min(1.0) * PI.min((hi - lo).max(0.0));
        if bound * cauchy(d2) < 1e-14 {
            continue;
        }
        let f = |t: f64| (1.0 - psi_bump_unchecked(t / t_height, u)) * product(t);
        let breaks = [
            gamma - 4.0,
            gamma,
            gamma + 4.0,
            gamma2 - 4.0,
            gamma2,
            gamma2 + 4.0,
            t_height,
            lo_edge,
            hi_edge,
            2.0 * t_height,
        ];
        corr += quad::integrate_with_breakpoints(&f, lo, hi, &breaks, 1e-11).value;
    }
    Ok(omega_weight(gamma - gamma2) - (2.0 / PI) * corr)
}

fn dist_to_interval(x: f64, lo: f64, hi: f64) -> f64 {
    if x < lo {
        lo - x
    } else if x > hi {
        x - hi
    } else {
        0.0
    }
}

/// L(b) = ((b+1)ln(1+b) + (1-b)ln(1-b)) / b on [0, 1], by continuity at the
/// endpoints.
pub fn l_func(b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&b) {
        return Err(Error::Domain {
            what: "l_func",
            value: b,
        });
    }
    if b == 0.0 {
        return Ok(0.0);
    }
    if b == 1.0 {
        return Ok(2.0 * 2f64.ln());
    }
    if b < 0.1 {
        // sum_{k>=1} 2 b^{2k-1} / (2k (2k-1))
        let b2 = b * b;
        return Ok(b * (1.0 + b2 * (1.0 / 6.0 + b2 * (1.0 / 15.0 + b2 * (1.0 / 28.0 + b2 / 45.0)))));
    }
    Ok(((b + 1.0) * b.ln_1p() + (1.0 - b) * (-b).ln_1p()) / b)
}
