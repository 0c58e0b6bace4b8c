// temporary diagnostic
use warpcert::params::*;
use warpcert::profiles::*;

fn main() {
    let p = FreeParams {
        m: 2, n: 3, c: 0.25,
        r: 0.016310440334678527,
        gamma: 5e-5,
        c3: 7.179383655050799e-6,
        big_n: 2e5,
        log_alpha: 6.4e5,
        log_t1: 3.40006962e10,
    };
    let bc = derive_base(&p).unwrap();
    let w = build_w(&p, &bc, 0.05).unwrap();
    for r in w.check_junctions() {
        println!("w junction {}: value {:.3e} d1 {:.3e} d2 {:.3e} c2={}", r.junction, r.value_rel, r.d1_rel, r.d2_rel, r.c2);
    }
    let (u, g) = build_shell_profiles(&p, &bc, 3).unwrap();
    for r in u.check_junctions() {
        println!("u junction {} ({} -> {}): value {:.3e} d1 {:.3e} d2 {:.3e} c2={}", r.junction,
            u.segments[r.junction].kind.name(), u.segments[r.junction+1].kind.name(),
            r.value_rel, r.d1_rel, r.d2_rel, r.c2);
    }
    for r in g.check_junctions() {
        println!("g junction {} ({} -> {}): value {:.3e} d1 {:.3e} d2 {:.3e}", r.junction,
            g.segments[r.junction].kind.name(), g.segments[r.junction+1].kind.name(),
            r.value_rel, r.d1_rel, r.d2_rel);
    }
    // fd per segment
    let policy = StepPolicy::default();
    for (tag, prof) in [("u", &u), ("g", &g)] {
        for j in 0..prof.segments.len() {
            let mut solo = prof.clone();
            solo.segments = vec![prof.segments[j].clone()];
            solo.junction_c2 = vec![];
            let d = solo.fd_check(600, policy);
            println!("fd {} seg {} {}: {:.3e}", tag, j, prof.segments[j].kind.name(), d);
        }
    }
}
