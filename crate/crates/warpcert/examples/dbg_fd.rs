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
    let (u, g) = build_shell_profiles(&p, &bc, 2).unwrap();
    let cs = derive_cap_scales(&p, &bc, &cc, 1).unwrap();
    let (ub, gb) = build_cap_profiles(&p, &cc, &cs).unwrap();
    let policy = StepPolicy::default();
    for (tag, prof) in [("u", &u), ("g", &g), ("ub", &ub), ("gb", &gb)] {
        for j in 0..prof.segments.len() {
            let mut solo = prof.clone();
            solo.segments = vec![prof.segments[j].clone()];
            solo.junction_c2 = vec![];
            let d = solo.fd_check(1200, policy);
            println!("fd {} seg {} {}: {:.3e}", tag, j, prof.segments[j].kind.name(), d);
        }
    }
}
