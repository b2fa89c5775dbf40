//! Command orchestration behind the CLI: statistic computation, prediction
//! comparison, and report assembly. Pure library surface so tests can drive
//! the exact same paths the binary does.

use crate::arithmetic::PrimePower;
use crate::correlations::{self, TestKernel, TestKernel2, WeightKind};
use crate::error::{Error, Result};
use crate::kernels;
use crate::moments::{self, Method, Part};
use crate::predictions::{self, ConjectureKind, TwistedRegime};
use crate::report::{Cell, Report};
use crate::util::Complex;
use crate::zerodata::{self, ZeroSet};
use crate::zetaeval;
use std::f64::consts::PI;
use std::path::PathBuf;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub zeros_path: PathBuf,
    /// window base height; defaults to the largest covered T
    pub t: Option<f64>,
    pub n_list: Vec<u64>,
    /// (lo, hi, step)
    pub alpha_grid: (f64, f64, f64),
    pub kernel: String,
    /// smoothing parameter; defaults to (log T)^2
    pub u_param: Option<f64>,
    /// prime cutoff; defaults to T^{1/4}/2 for mixed moments, 10^3 otherwise
    pub x: Option<f64>,
    pub json: bool,
    pub out_path: Option<PathBuf>,
    pub threads: usize,
    pub seed: u64,
    pub band_delta: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            zeros_path: PathBuf::from("data/zeros_10k.txt"),
            t: None,
            n_list: vec![2, 3, 4],
            alpha_grid: (0.0, 0.8, 0.05),
            kernel: "fejer".into(),
            u_param: None,
            x: None,
            json: false,
            out_path: None,
            threads: 1,
            seed: 0,
            band_delta: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Ingest,
    Pcf,
    Tpcf,
    Tcf,
    Landau,
    Moments,
    Predict,
    CompareMoments,
    CompareMixed,
    ComparePcf,
    CompareTpcf,
    Selfcheck,
}

impl Command {
    pub fn parse(cmd: &str, target: Option<&str>) -> Result<Command> {
        match (cmd, target) {
            ("ingest", _) => Ok(Command::Ingest),
            ("pcf", _) => Ok(Command::Pcf),
            ("tpcf", _) => Ok(Command::Tpcf),
            ("tcf", _) => Ok(Command::Tcf),
            ("landau", _) => Ok(Command::Landau),
            ("moments", _) => Ok(Command::Moments),
            ("predict", _) => Ok(Command::Predict),
            ("selfcheck", _) => Ok(Command::Selfcheck),
            ("compare", Some("moments")) => Ok(Command::CompareMoments),
            ("compare", Some("mixed")) => Ok(Command::CompareMixed),
            ("compare", Some("pcf")) => Ok(Command::ComparePcf),
            ("compare", Some("tpcf")) => Ok(Command::CompareTpcf),
            ("compare", other) => Err(Error::InvalidArgument {
                what: "compare target",
                detail: format!("expected moments|mixed|pcf|tpcf, got {other:?}"),
            }),
            (other, _) => Err(Error::InvalidArgument {
                what: "command",
                detail: format!("unknown command {other:?}"),
            }),
        }
    }
}

fn alpha_values(grid: (f64, f64, f64)) -> Result<Vec<f64>> {
    let (lo, hi, step) = grid;
    if step <= 0.0 || hi < lo {
        return Err(Error::InvalidArgument {
            what: "alpha grid",
            detail: format!("bad grid {grid:?}"),
        });
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| lo + i as f64 * step).collect())
}

/// Resolved per-run parameters, echoed into every report header.
struct Resolved {
    zs: ZeroSet,
    t: f64,
    window: zerodata::Window,
    u_param: f64,
    delta: f64,
}

fn resolve(cfg: &RunConfig) -> Result<Resolved> {
    let zs = zerodata::load_zeros(&cfg.zeros_path)?;
    let t = match cfg.t {
        Some(t) => t,
        None => zs.max_ordinate() / 2.0 - 1e-9,
    };
    let window = zerodata::window(&zs, t)?;
    let u_param = cfg.u_param.unwrap_or_else(|| t.ln() * t.ln());
    let delta = cfg
        .band_delta
        .unwrap_or_else(|| correlations::default_band_delta(t.ln()));
    Ok(Resolved {
        zs,
        t,
        window,
        u_param,
        delta,
    })
}

fn header(report: &mut Report, cfg: &RunConfig, r: &Resolved) {
    report.config("zeros", cfg.zeros_path.display());
    report.config("T", r.t);
    report.config("window_count", r.window.count());
    report.config("band_delta", r.delta);
    report.config("U", r.u_param);
    report.config(
        "x",
        cfg.x.unwrap_or_else(|| (r.t.powf(0.25) / 2.0).max(2.0)),
    );
    report.config(
        "alpha_grid",
        format!(
            "{}:{}:{}",
            cfg.alpha_grid.0, cfg.alpha_grid.1, cfg.alpha_grid.2
        ),
    );
    report.config("kernel", &cfg.kernel);
    // the thread count is deliberately not echoed: reports are
    // byte-identical across thread counts and the header must agree
    report.config("seed", cfg.seed);
}

/// Execute a command; the returned report is deterministic for a fixed
/// config, independent of the thread count.
pub fn run(cmd: Command, cfg: &RunConfig) -> Result<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument {
            what: "thread pool",
            detail: e.to_string(),
        })?;
    pool.install(|| run_inner(cmd, cfg))
}

fn run_inner(cmd: Command, cfg: &RunConfig) -> Result<Report> {
    match cmd {
        Command::Ingest => ingest(cfg),
        Command::Pcf | Command::ComparePcf => pcf(cfg),
        Command::Tpcf | Command::CompareTpcf => tpcf(cfg),
        Command::Tcf => tcf(cfg),
        Command::Landau => landau(cfg),
        Command::Moments | Command::CompareMoments => moments_cmd(cfg),
        Command::CompareMixed => mixed_cmd(cfg),
        Command::Predict => predict_cmd(cfg),
        Command::Selfcheck => selfcheck(cfg),
    }
}

fn ingest(cfg: &RunConfig) -> Result<Report> {
    let r = resolve(cfg)?;
    let mut rep = Report::new("ingest");
    header(&mut rep, cfg, &r);
    rep.columns(&["field", "value"]);
    rep.row(vec![
        Cell::Text("count".into()),
        Cell::Int(r.zs.len() as i64),
    ]);
    rep.row(vec![
        Cell::Text("min_ordinate".into()),
        Cell::Num(r.zs.ordinates[0]),
    ]);
    rep.row(vec![
        Cell::Text("max_ordinate".into()),
        Cell::Num(r.zs.max_ordinate()),
    ]);
    rep.row(vec![
        Cell::Text("precision".into()),
        Cell::Int(r.zs.precision as i64),
    ]);
    rep.row(vec![
        Cell::Text("max_usable_T".into()),
        Cell::Num(r.zs.max_ordinate() / 2.0),
    ]);
    let (n, s) = zerodata::zero_counting(&r.zs, r.zs.max_ordinate() * 0.75)?;
    rep.row(vec![Cell::Text("n_at_3q".into()), Cell::Int(n as i64)]);
    rep.row(vec![Cell::Text("s_at_3q".into()), Cell::Num(s)]);
    Ok(rep)
}

fn pcf(cfg: &RunConfig) -> Result<Report> {
    let r = resolve(cfg)?;
    let alphas = alpha_values(cfg.alpha_grid)?;
    let mut rep = Report::new("pcf");
    header(&mut rep, cfg, &r);
    rep.columns(&[
        "alpha",
        "f_alpha",
        "predicted",
        "residual",
        "tolerance_band",
        "pair_count",
        "truncation_bound",
    ]);
    let l = r.t.ln();
    for &alpha in &alphas {
        let est = correlations::f_montgomery(alpha, &r.window, &r.zs, Some(r.delta))?;
        let pred = predictions::predict_f(alpha, r.t);
        // o(1) slack rendered at 1/log T on both the spike and the constant
        let band = (-2.0 * alpha.abs() * l).exp() + 1.0 / l;
        rep.row(vec![
            Cell::Num(alpha),
            Cell::Num(est.value.re),
            Cell::Num(pred),
            Cell::Num(est.value.re - pred),
            Cell::Num(band),
            Cell::Int(est.pair_count as i64),
            Cell::Num(est.truncation_error_bound),
        ]);
    }
    Ok(rep)
}

fn tpcf(cfg: &RunConfig) -> Result<Report> {
    let r = resolve(cfg)?;
    let alphas = alpha_values(cfg.alpha_grid)?;
    let mut rep = Report::new("tpcf");
    header(&mut rep, cfg, &r);
    rep.columns(&[
        "n",
        "alpha",
        "re_fn",
        "im_fn",
        "predicted",
        "residual",
        "tolerance_band",
    ]);
    for &n in &cfg.n_list {
        let pp = PrimePower::new(n)?;
        for &alpha in &alphas {
            let est = correlations::f_twisted(
                alpha,
                &pp,
                &r.window,
                &r.zs,
                WeightKind::Cauchy,
                Some(r.delta),
            )?;
            let pred = predictions::predict_f_twisted(alpha, &pp, r.t, TwistedRegime::Strong)?;
            let band =
                predictions::tolerance_band(ConjectureKind::TwistedPair, n, r.t, Some(alpha));
            rep.row(vec![
                Cell::Int(n as i64),
                Cell::Num(alpha),
                Cell::Num(est.value.re),
                Cell::Num(est.value.im),
                Cell::Num(pred),
                Cell::Num(est.value.re - pred),
                Cell::Num(band),
            ]);
        }
    }
    Ok(rep)
}

fn tcf(cfg: &RunConfig) -> Result<Report> {
    let r = resolve(cfg)?;
    let kernel = TestKernel::by_name(&cfg.kernel)?;
    let k2 = TestKernel2::separable(&kernel);
    let mut rep = Report::new("tcf");
    header(&mut rep, cfg, &r);
    rep.columns(&[
        "kernel",
        "empirical",
        "predicted",
        "residual",
        "tolerance_band",
        "triple_count",
        "truncation_bound",
    ]);
    let est = correlations::triple_sum(&k2, &r.window, &r.zs, 1e-6)?;
    let pred = predictions::triple_rhs(&k2)?;
    rep.row(vec![
        Cell::Text(k2.name.clone()),
        Cell::Num(est.value.re),
        Cell::Num(pred),
        Cell::Num(est.value.re - pred),
        Cell::Num(1.0 / r.t.ln()),
        Cell::Int(est.pair_count as i64),
        Cell::Num(est.truncation_error_bound),
    ]);
    Ok(rep)
}

fn landau(cfg: &RunConfig) -> Result<Report> {
    let r = resolve(cfg)?;
    let mut rep = Report::new("landau");
    header(&mut rep, cfg, &r);
    rep.columns(&[
        "a",
        "b",
        "empirical_re",
        "empirical_im",
        "predicted",
        "residual",
        "tolerance_band",
    ]);
    let l = r.t.ln();
    for (a, b) in [(2u64, 1u64), (3, 1), (4, 1), (3, 2), (6, 1)] {
        let (emp, pred) = correlations::landau_gonek(a, b, &r.window, &r.zs)?;
        let band = a as f64 * l * l / r.t + (r.window.count() as f64).sqrt() / r.t;
        rep.row(vec![
            Cell::Int(a as i64),
            Cell::Int(b as i64),
            Cell::Num(emp.re),
            Cell::Num(emp.im),
            Cell::Num(pred),
            Cell::Num(emp.re - pred),
            Cell::Num(band),
        ]);
    }
    Ok(rep)
}

fn moments_cmd(cfg: &RunConfig) -> Result<Report> {
    let r = resolve(cfg)?;
    let x = cfg.x.unwrap_or(1000.0).min(r.t);
    let preds = predictions::moment_predictions(r.t);
    let mut rep = Report::new("moments");
    header(&mut rep, cfg, &r);
    rep.columns(&[
        "k",
        "part",
        "method",
        "value",
        "predicted",
        "residual",
        "tolerance_band",
        "quad_error",
        "samples",
    ]);
    let l = r.t.ln();
    for (k, part, pred, band) in [
        (1, Part::Re, 0.0, 1.0 / l.ln()),
        (1, Part::Im, 0.0, 1.0 / l.ln()),
        (2, Part::Re, preds.second_re, 1.0 / l.ln()),
        (2, Part::Im, preds.second_im, 1.0 / l.ln()),
        (3, Part::Re, preds.third_re, 10.0 / l),
        (3, Part::Im, preds.third_im, 10.0 / l),
    ] {
        let m = moments::moment(r.t, k, part, Method::Direct, &r.zs, x)?;
        rep.row(vec![
            Cell::Int(k as i64),
            Cell::Text(part_name(part).into()),
            Cell::Text("direct".into()),
            Cell::Num(m.value),
            Cell::Num(pred),
            Cell::Num(m.value - pred),
            Cell::Num(band),
            Cell::Num(m.quadrature_error_estimate),
            Cell::Int(m.samples as i64),
        ]);
    }
    Ok(rep)
}

fn part_name(p: Part) -> &'static str {
    match p {
        Part::Re => "re",
        Part::Im => "im",
    }
}

fn mixed_cmd(cfg: &RunConfig) -> Result<Report> {
    let r = resolve(cfg)?;
    let x = cfg.x.unwrap_or_else(|| (r.t.powf(0.25) / 2.0).max(2.0));
    let mm = moments::mixed_moments(r.t, x, &r.zs)?;
    let preds = predictions::mixed_moment_predictions(mm.beta)?;
    let mut rep = Report::new("compare-mixed");
    header(&mut rep, cfg, &r);
    rep.config("beta", mm.beta);
    if let Some(w) = mm.range_warning {
        rep.config("range_warning", w);
    }
    rep.columns(&["term", "part", "empirical", "predicted", "residual", "tolerance_band"]);
    let band = 1.0 / x.ln();
    let rows: [(&str, &str, f64, f64); 10] = [
        ("p3", "re", mm.re_p3, preds.p3),
        ("p2z", "re", mm.re_p2z, preds.p2z),
        ("pz2", "re", mm.re_pz2, preds.pz2),
        ("z3", "re", mm.re_z3, preds.z3),
        ("total", "re", mm.re_total, preds.p3 + 3.0 * preds.pz2 + preds.z3),
        ("p3", "im", mm.im_p3, 0.0),
        ("p2z", "im", mm.im_p2z, 0.0),
        ("pz2", "im", mm.im_pz2, 0.0),
        ("z3", "im", mm.im_z3, 0.0),
        ("total", "im", mm.im_total, 0.0),
    ];
    for (term, part, emp, pred) in rows {
        rep.row(vec![
            Cell::Text(term.into()),
            Cell::Text(part.into()),
            Cell::Num(emp),
            Cell::Num(pred),
            Cell::Num(emp - pred),
            Cell::Num(band),
        ]);
    }
    Ok(rep)
}

fn predict_cmd(cfg: &RunConfig) -> Result<Report> {
    let r = resolve(cfg)?;
    let preds = predictions::moment_predictions(r.t);
    let x = cfg.x.unwrap_or_else(|| (r.t.powf(0.25) / 2.0).max(2.0));
    let beta = x.ln() / r.t.ln();
    let mixed = predictions::mixed_moment_predictions(beta.min(1.0))?;
    let mut rep = Report::new("predict");
    header(&mut rep, cfg, &r);
    rep.columns(&["quantity", "value"]);
    let items: [(&str, f64); 9] = [
        ("c_p", predictions::c_p_default()),
        ("c_z", predictions::C_Z),
        ("second_moment", preds.second_re),
        ("third_moment_re", preds.third_re),
        ("third_moment_im", preds.third_im),
        ("mixed_i_beta", mixed.i_beta),
        ("mixed_pz2", mixed.pz2),
        ("mixed_z3", mixed.z3),
        ("beta", beta),
    ];
    for (k, v) in items {
        rep.row(vec![Cell::Text(k.into()), Cell::Num(v)]);
    }
    Ok(rep)
}

fn check_row(rep: &mut Report, name: &str, residual: f64, tol: f64) -> bool {
    let pass = residual.abs() < tol;
    rep.row(vec![
        Cell::Text(name.into()),
        Cell::Text(if pass { "PASS" } else { "FAIL" }.into()),
        Cell::Num(residual),
        Cell::Num(tol),
    ]);
    pass
}

/// The kernel-identity and oracle-equivalence suites; returns a failing
/// report (mapped to a numeric-failure exit) if any check misses.
fn selfcheck(cfg: &RunConfig) -> Result<Report> {
    let r = resolve(cfg)?;
    let mut rep = Report::new("selfcheck");
    header(&mut rep, cfg, &r);
    rep.columns(&["check", "status", "residual", "tolerance"]);
    let mut ok = true;

    // g = (1-f)/u identity on a grid
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let u = 0.05 + 1.9 * (i as f64 + 0.5) / 50.0;
        let f = kernels::eval_aux(kernels::AuxFunctionKind::FRe, u)?;
        let g = kernels::eval_aux(kernels::AuxFunctionKind::GRe, u)?;
        worst = worst.max((g - (1.0 - f) / u).abs());
    }
    ok &= check_row(&mut rep, "aux_fg_identity", worst, 1e-9);

    // numerical FT of h against the closed form
    let mut worst: f64 = 0.0;
    for &a in &[0.0, 0.1, 1.0 / (2.0 * PI), 0.5, 1.0, 2.0] {
        let num = kernels::fourier_transform_numeric(kernels::HKind::HRe, a).re;
        let closed = kernels::h_hat(a, kernels::HKind::HRe).re;
        worst = worst.max((num - closed).abs());
    }
    ok &= check_row(&mut rep, "h_hat_numeric_vs_closed", worst, 1e-6);

    // m_n vs hexagon identity
    let mut worst: f64 = 0.0;
    for q in [2u64, 3, 5, 7, 101] {
        let pp = PrimePower::new(q)?;
        for &t in &[1e4f64, 1e6] {
            let lam = pp.lambda / t.ln();
            for i in 0..200 {
                let alpha = -2.5 + 5.0 * i as f64 / 199.0;
                let lhs = lam * kernels::m_weight(alpha, &pp, t)?;
                let rhs = kernels::hexagon(alpha, lam).h_star;
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    ok &= check_row(&mut rep, "m_n_hexagon_identity", worst, 1e-12);

    // banded vs brute-force twisted sum on a deterministic prefix
    let head = r.zs.head(1500);
    let wsmall = zerodata::window(&head, head.max_ordinate() / 2.0 - 1e-9)?;
    let pp = PrimePower::new(3)?;
    let alpha = 0.3;
    let banded =
        correlations::f_twisted(alpha, &pp, &wsmall, &head, WeightKind::Cauchy, Some(1e9))?;
    let gammas = &head.ordinates[wsmall.lo..wsmall.hi];
    let mut terms = Vec::new();
    for &g1 in gammas {
        for &g2 in gammas {
            let phase = Complex::cis(pp.log_n() * g1 + alpha * wsmall.l * (g1 - g2));
            terms.push(phase.scale(kernels::omega_weight(g1 - g2)));
        }
    }
    let norm = wsmall.t / (2.0 * PI) * pp.lambda / (pp.n as f64).sqrt();
    let brute = crate::util::pairwise_sum_complex(&terms).scale(-1.0 / norm);
    let rel = (banded.value - brute).abs() / brute.abs().max(1e-12);
    ok &= check_row(&mut rep, "banded_vs_brute_twisted", rel, 1e-8);

    // pair conjecture RHS closed form for the Fejer kernel
    let k = TestKernel::fejer(1.0);
    let rhs = predictions::pair_rhs(&k)?;
    ok &= check_row(&mut rep, "pair_rhs_closed_form", rhs - 4.0 / 3.0, 1e-7);

    // seeded Monte-Carlo cross-check of the triple RHS smooth part
    let k2 = TestKernel2::separable(&k);
    let exact = predictions::triple_rhs(&k2)?;
    let mc = triple_rhs_monte_carlo(&k2, cfg.seed ^ 0x9e3779b97f4a7c15, 2_000_000);
    ok &= check_row(&mut rep, "triple_rhs_quadrature_vs_mc", exact - mc, 3e-3);

    // explicit formula both sides at one deterministic point
    let t_mid = 1.5 * r.t;
    let (zero_side, prime_side) = zetaeval::explicit_formula_sides(t_mid, 50.0, &r.zs)?;
    ok &= check_row(
        &mut rep,
        "explicit_formula_identity",
        (zero_side - prime_side).abs(),
        0.05,
    );

    if !ok {
        // surface the failure as a numeric error after writing the report
        rep.config("status", "FAIL");
    } else {
        rep.config("status", "PASS");
    }
    Ok(rep)
}

/// Monte-Carlo estimate of the triple RHS (atoms exact, smooth part by
/// seeded sampling); test-grade accuracy only.
pub fn triple_rhs_monte_carlo(k2: &TestKernel2, seed: u64, samples: u64) -> f64 {
    let a_max = k2.r_hat_support.unwrap_or(2.0) + 0.25;
    let mut state = seed | 1;
    let mut rng = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut acc = 0.0;
    for _ in 0..samples {
        let a = (2.0 * rng() - 1.0) * a_max;
        let b = (2.0 * rng() - 1.0) * a_max;
        acc += (k2.r_hat)(a, b) * kernels::hexagon(a, b).h_star;
    }
    let smooth = acc / samples as f64 * (2.0 * a_max) * (2.0 * a_max);
    let mut atoms = (k2.r_hat)(0.0, 0.0);
    let breaks = [-1.0, 0.0, 1.0];
    for sel in 0..3 {
        let rh = k2.r_hat.clone();
        let f = move |v: f64| match sel {
            0 => rh(0.0, v) * kernels::min1(v),
            1 => rh(v, 0.0) * kernels::min1(v),
            _ => rh(v, -v) * kernels::min1(v),
        };
        atoms += crate::quad::integrate_with_breakpoints(&f, -a_max, a_max, &breaks, 1e-10).value;
    }
    atoms + smooth
}

/// Whether a finished report represents a failed selfcheck.
pub fn selfcheck_failed(rep: &Report) -> bool {
    rep.config
        .iter()
        .any(|(k, v)| k == "status" && v == "FAIL")
}
