use std::time::Instant;
use zetalab::moments::*;
use zetalab::zerodata;
use zetalab::zetaeval;
fn main() {
    let zs = zerodata::load_zeros("data/zeros_10k.txt").unwrap();
    // batched vs direct zero sums consistency
    let x = 500.0f64;
    let mut worst = 0.0f64;
    for i in 0..40 {
        let a = 3000.0 + i as f64 * 17.3;
        let (lo, hi) = zs.index_range(a, a + 10.0);
        let (ca, cb) = (zs.ordinates[lo], zs.ordinates[lo + 1]);
        let cell = zetaeval::CellZeroSums::build(ca, cb, x, &zs, zetaeval::ZERO_SUM_CUT);
        for f in [0.1, 0.5, 0.93] {
            let t = ca + f * (cb - ca);
            let (zr1, zi1) = cell.eval(t);
            let (zr2, zi2, _) = zetaeval::zero_sums(t, x, &zs, zetaeval::ZERO_SUM_CUT);
            worst = worst.max((zr1 - zr2).abs()).max((zi1 - zi2).abs());
        }
        let _ = hi;
    }
    eprintln!("batched vs direct worst diff: {worst:.3e}");
    let t2 = Instant::now();
    let m = moment(3500.0, 3, Part::Re, Method::Pz, &zs, 500.0).unwrap();
    eprintln!("re3 pz: {:.4} ({} samples) [{:?}]", m.value, m.samples, t2.elapsed());
    let t3 = Instant::now();
    let mm = mixed_moments(3000.0, 200.0, &zs).unwrap();
    eprintln!("mixed: p3={:.4} [{:?}]", mm.re_p3, t3.elapsed());
}
