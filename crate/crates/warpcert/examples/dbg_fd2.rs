use warpcert::params::*;
use warpcert::profiles::*;

fn main() {
    let p = FreeParams {
        m: 2, n: 3, c: 0.25,
        r: 0.016310440334678527,
        gamma: 5e-5, c3: 7.179383655050799e-6,
        big_n: 2e5, log_alpha: 6.4e5, log_t1: 3.40006962e10,
    };
    let bc = derive_base(&p).unwrap();
    let cc = derive_cap_constants(&p, &bc).unwrap();
    let cs = derive_cap_scales(&p, &bc, &cc, 1).unwrap();
    let (ub, gb) = build_cap_profiles(&p, &cc, &cs).unwrap();
    for (tag, prof, segidx) in [("expquad", &ub, 0usize), ("ppc", &gb, 1)] {
        let seg = &prof.segments[segidx];
        let (blo, bhi) = seg.canon_bounds();
        println!("== {tag} canon bounds [{blo}, {bhi}]");
        let lo = if blo == f64::NEG_INFINITY { bhi - 60.0 } else { blo };
        let len = (bhi - lo).min(60.0);
        for frac in [0.02, 0.3, 0.6, 0.98] {
            let x = lo + len * frac;
            let (f, f1, f2) = seg.canonical(x);
            let h1 = 1e-5 * len;
            let h2 = 1e-3 * len;
            let fd1 = (seg.canonical(x + h1).0 - seg.canonical(x - h1).0) / (2.0 * h1);
            let fd2 = (seg.canonical(x + h2).0 - 2.0 * f + seg.canonical(x - h2).0) / (h2 * h2);
            println!("x={x:.6e} F={f:.6e} F1={f1:.6e} fd1={fd1:.6e} d1={:.3e} F2={f2:.6e} fd2={fd2:.6e} d2={:.3e}",
                (fd1 - f1).abs(), (fd2 - f2).abs());
        }
    }
}
