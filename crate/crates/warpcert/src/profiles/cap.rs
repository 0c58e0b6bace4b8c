//! Cap-side profile construction: the radial warp u-bar (log-quadratic
//! core continued by a shifted power law) and the equatorial warp g-bar
//! (sine arc continued by a power-plus-constant tail).

use super::segment::{
    CapSine, CoordKind, ExpQuadratic, PowerPlusConst, PowerShifted, SegKind, Segment,
};
use super::{PiecewiseProfile, ProfileKind};
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::logsc::{ln_sinc, LogSc};
use crate::params::{CapConstants, CapScales, FreeParams};

const BOUNDARY_TOL: f64 = 1e-9;

fn expect(
    what: &str,
    got: LogSc,
    want: LogSc,
    tol: f64,
) -> Result<()> {
    let rel = got.rel_diff(want);
    if rel > tol {
        return Err(Error::InconsistentScales {
            detail: format!("{what}: got {got}, want {want} (rel {rel:.3e})"),
        });
    }
    Ok(())
}

pub fn build_cap_profiles(
    p: &FreeParams,
    cc: &CapConstants,
    cs: &CapScales,
) -> Result<(PiecewiseProfile, PiecewiseProfile)> {
    let i = cs.i;
    let mk = |x_lo: f64, x_hi: f64, kind: SegKind| Segment {
        coord: CoordKind::LogTBar,
        index: i,
        x_lo,
        x_hi,
        log_t: cs.log_t,
        kind,
        d1_fudge: 1.0,
        d2_fudge: 1.0,
    };

    let ln_b = cs.ln_b.value();
    let ln_r = cs.ln_r_cap.value();
    let u_bar = PiecewiseProfile::assemble(
        ProfileKind::CapU { i },
        vec![
            mk(
                f64::NEG_INFINITY,
                ln_b,
                SegKind::ExpQuadratic(ExpQuadratic {
                    ln_l: cs.ln_l,
                    ln_b: cs.ln_b,
                    big_n: p.big_n,
                }),
            ),
            mk(
                ln_b,
                ln_r,
                SegKind::PowerShifted(PowerShifted {
                    log_t: cs.log_t,
                    ln_b: cs.ln_b,
                    c3: p.c3,
                    ln_coef: cc.c2.ln() + p.c3 / (1.0 - p.c3) * (cc.c1 * cc.c2).ln(),
                    ln_n_over_lt: Dd::new(p.big_n.ln()).sub(cc.ln_lt),
                }),
            ),
        ],
        vec![false],
    );

    let arg_d = cs.ln_l.add_f64(cs.ln_d).value();
    let ln_sin_ld = if arg_d < -20.0 {
        arg_d
    } else {
        arg_d + ln_sinc(arg_d.exp())
    };
    let g_bar = PiecewiseProfile::assemble(
        ProfileKind::CapG { i },
        vec![
            mk(
                f64::NEG_INFINITY,
                cs.ln_d,
                SegKind::CapSine(CapSine { ln_l: cs.ln_l }),
            ),
            mk(
                cs.ln_d,
                ln_r,
                SegKind::PowerPlusConst(PowerPlusConst {
                    ln_a: cc.ln_a,
                    b_coef: cs.b_coef,
                    gamma: p.gamma,
                    ln_d: cs.ln_d,
                    ln_sin_ld,
                }),
            ),
        ],
        vec![false],
    );

    verify_boundary_data(p, cc, cs, &u_bar, &g_bar)?;
    Ok((u_bar, g_bar))
}

/// The construction forces exact boundary data; verify it from the
/// assembled segments rather than trusting the algebra.
fn verify_boundary_data(
    p: &FreeParams,
    cc: &CapConstants,
    cs: &CapScales,
    u_bar: &PiecewiseProfile,
    g_bar: &PiecewiseProfile,
) -> Result<()> {
    let inv_l = LogSc::from_ln_dd(cs.ln_l.neg());

    // u-bar(b) = 1/l and slope 1/N, from both sides
    for seg in [0usize, 1] {
        let s = u_bar.sample_seg(seg, cs.ln_b);
        expect("u_bar(b)", s.value, inv_l, BOUNDARY_TOL)?;
        expect(
            "u_bar_t(b)",
            s.d1,
            LogSc::from_f64(1.0 / p.big_n),
            BOUNDARY_TOL,
        )?;
    }
    // u-bar(R) = t_i/C1, slope C2
    let s = u_bar.sample_seg(1, cs.ln_r_cap);
    expect(
        "u_bar(R)",
        s.value,
        LogSc::from_ln_dd(cs.log_t.add_f64(-cc.c1.ln())),
        BOUNDARY_TOL,
    )?;
    expect("u_bar_t(R)", s.d1, LogSc::from_f64(cc.c2), BOUNDARY_TOL)?;
    // u-bar(0) = (1/l) exp(-l b/(2N)) > 0
    let s0 = u_bar.sample_seg(0, Dd::NEG_INFINITY);
    let want = LogSc::from_ln_dd(
        cs.ln_l
            .neg()
            .add_f64(-cs.ln_lb.exp() / (2.0 * p.big_n)),
    );
    expect("u_bar(0)", s0.value, want, BOUNDARY_TOL)?;
    if s0.value.sign() <= 0 {
        return Err(Error::InconsistentScales {
            detail: "u_bar(0) not positive".into(),
        });
    }

    // g-bar(0) = 0 with slope exactly 1
    let g0 = g_bar.sample_seg(0, Dd::NEG_INFINITY);
    if !g0.value.is_zero() || g0.d1.to_f64() != 1.0 {
        return Err(Error::InconsistentScales {
            detail: "g_bar does not close smoothly at 0".into(),
        });
    }
    // g-bar matches across d (value by the offset definition, slope by the
    // radius equation)
    let gl = g_bar.sample_seg(0, Dd::new(cs.ln_d));
    let gr = g_bar.sample_seg(1, Dd::new(cs.ln_d));
    expect("g_bar(d)", gl.value, gr.value, BOUNDARY_TOL)?;
    expect("g_bar_t(d)", gl.d1, gr.d1, BOUNDARY_TOL)?;
    Ok(())
}
