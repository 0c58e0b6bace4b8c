//! Shell-side profile construction: the radial warp u (spherical arcs
//! joined by a smoothed min of two growth branches) and the equatorial
//! warp g (integrated from its piecewise log-derivative table).

use super::segment::{
    CoordKind, LogDerivConstant, LogDerivInverse, LogDerivRamp, LogDerivRampDown, MinLogLinear,
    SegKind, Segment, SineArc, SmoothingBridge,
};
use super::{PiecewiseProfile, ProfileKind};
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::logsc::LogSc;
use crate::params::{log_t_of, BaseConstants, FreeParams};

/// Resolved data of the smoothed-min profile w on [1+2r, alpha].
#[derive(Clone, Copy, Debug)]
pub struct WParams {
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    /// (c+1)/(2 ln(alpha/(1+2r)))
    pub q: f64,
    /// Constant term of the curved branch.
    pub a0: f64,
    /// tau-coefficient of the curved branch.
    pub b_lin: f64,
    /// Crossing of the two branches, in lambda = ln tau.
    pub lambda_star: f64,
    /// Smoothing half-width in lambda.
    pub h: f64,
    pub bridge_left: [f64; 3],
    pub bridge_right: [f64; 3],
}

fn branch_sign(a0: f64, m: f64, lambda: f64) -> f64 {
    LogSc::from_f64(a0)
        .add(LogSc::from_f64(m).mul(LogSc::from_ln(lambda)))
        .sign() as f64
}

pub(crate) fn compute_w_params(p: &FreeParams, bc: &BaseConstants, h: f64) -> Result<WParams> {
    let lambda_lo = (2.0 * p.r).ln_1p();
    let lambda_hi = p.log_alpha;
    let span = lambda_hi - lambda_lo;
    if span <= 0.0 {
        return Err(Error::CrossingNotFound {
            detail: "alpha does not exceed 1 + 2r".into(),
        });
    }
    let q = (p.c + 1.0) / (2.0 * span);
    let b_lin = bc.cos_delta - q;
    let a0 = bc.sin_delta / bc.sqrt_k - (1.0 + 2.0 * p.r) * b_lin;

    // Endpoint comparisons: curved branch below the line at 1+2r, above at
    // alpha; otherwise no crossing and the shell cannot close.
    if bc.sin_delta / bc.sqrt_k >= p.c * (1.0 + 2.0 * p.r) {
        return Err(Error::CrossingNotFound {
            detail: "curved branch does not start below the linear one".into(),
        });
    }
    let diff_sign = |lambda: f64| branch_sign(a0, b_lin - p.c + q * (lambda - lambda_lo), lambda);
    if diff_sign(lambda_hi) <= 0.0 {
        return Err(Error::CrossingNotFound {
            detail: "curved branch stays below the linear one; alpha too small".into(),
        });
    }
    let lambda_star =
        crate::solve::bisect(lambda_lo, lambda_hi, diff_sign, 1e-14, 300).map_err(|_| {
            Error::CrossingNotFound {
                detail: "sign change lost during bisection".into(),
            }
        })?;

    let room = (lambda_star - lambda_lo).min(lambda_hi - lambda_star);
    if !(h > 0.0 && h < 0.1 * room) {
        return Err(Error::OutOfRange {
            name: "h",
            detail: format!("{h} not in (0, {})", 0.1 * room),
        });
    }

    // Bridge endpoint data for v = w/tau*.
    let lam_l = lambda_star - h;
    let wt_l = bc.cos_delta + q * (lam_l - lambda_lo);
    let e_mh = (-h).exp();
    let v_l = a0 * (-lambda_star).exp() + e_mh * (b_lin + q * (lam_l - lambda_lo));
    let bridge_left = [v_l, e_mh * wt_l, e_mh * (wt_l + q)];
    let ce_h = p.c * h.exp();
    let bridge_right = [ce_h, ce_h, ce_h];

    Ok(WParams {
        lambda_lo,
        lambda_hi,
        q,
        a0,
        b_lin,
        lambda_star,
        h,
        bridge_left,
        bridge_right,
    })
}

/// The three w segments at a given scale anchor.
pub(crate) fn w_segments(p: &FreeParams, wp: &WParams, log_t: Dd, index: u32) -> Vec<Segment> {
    let mk = |coord, x_lo, x_hi, kind| Segment {
        coord,
        index,
        x_lo,
        x_hi,
        log_t,
        kind,
        d1_fudge: 1.0,
        d2_fudge: 1.0,
    };
    vec![
        mk(
            CoordKind::LogTau,
            wp.lambda_lo,
            wp.lambda_star - wp.h,
            SegKind::MinLogLinear(MinLogLinear {
                a: wp.a0,
                b: wp.b_lin,
                q: wp.q,
                lambda_ref: wp.lambda_lo,
            }),
        ),
        mk(
            CoordKind::BridgeX,
            -wp.h,
            wp.h,
            SegKind::SmoothingBridge(SmoothingBridge {
                log_tau_star: wp.lambda_star,
                h: wp.h,
                left: wp.bridge_left,
                right: wp.bridge_right,
            }),
        ),
        mk(
            CoordKind::LogTau,
            wp.lambda_star + wp.h,
            wp.lambda_hi,
            SegKind::MinLogLinear(MinLogLinear {
                a: 0.0,
                b: p.c,
                q: 0.0,
                lambda_ref: wp.lambda_lo,
            }),
        ),
    ]
}

/// Verify the slope window and the convexity-defect bound on a grid over
/// the w segments (scale-free, so checking at scale 1 covers every shell).
fn verify_w_bounds(p: &FreeParams, bc: &BaseConstants, segs: &[Segment]) -> Result<()> {
    let slope_hi = 0.5 * (1.0 + 3.0 * p.c);
    let gfac = p.gamma * (1.0 - 2.0 * p.gamma);
    let n_grid = 2048usize;
    for seg in segs {
        for k in 0..=n_grid {
            let x = seg.x_lo + (seg.x_hi - seg.x_lo) * k as f64 / n_grid as f64;
            let s = seg.sample(Dd::new(x));
            let wt = s.d1.to_f64();
            // slope window, with an ulp cushion at the exact endpoints
            if wt < bc.cos_delta * (1.0 - 1e-12) - 1e-15 || wt > slope_hi * (1.0 + 1e-12) {
                return Err(Error::BoundViolated {
                    which: "w_slope_window",
                    x,
                    detail: format!("w_t = {wt}"),
                });
            }
            // -3 w_tt/w + gamma(1-2gamma)/tau^2 > 0
            let lambda = match seg.coord {
                CoordKind::BridgeX => {
                    if let SegKind::SmoothingBridge(b) = &seg.kind {
                        b.log_tau_star + x
                    } else {
                        unreachable!()
                    }
                }
                _ => x,
            };
            let defect = LogSc::from_f64(-3.0)
                .mul(s.d2)
                .div(s.value)
                .add(LogSc::from_ln(gfac.ln() - 2.0 * lambda));
            if defect.sign() <= 0 {
                return Err(Error::BoundViolated {
                    which: "w_convexity_defect",
                    x,
                    detail: format!("defect = {defect}"),
                });
            }
        }
    }
    Ok(())
}

/// Build the smoothed-min profile w on [1+2r, alpha] at scale 1, with an
/// explicit smoothing half-width h (in ln tau).
pub fn build_w(p: &FreeParams, bc: &BaseConstants, h: f64) -> Result<PiecewiseProfile> {
    let wp = compute_w_params(p, bc, h)?;
    let segs = w_segments(p, &wp, Dd::ZERO, 0);
    verify_w_bounds(p, bc, &segs)?;
    Ok(PiecewiseProfile::assemble(
        ProfileKind::Standalone,
        segs,
        vec![true, true],
    ))
}

pub const DEFAULT_SMOOTHING_H: f64 = 0.05;

/// Build w with the default half-width, halving it (up to 10 times) if a
/// verification bound fails on the bridge.
pub fn build_w_auto(p: &FreeParams, bc: &BaseConstants) -> Result<(PiecewiseProfile, WParams)> {
    let mut h = DEFAULT_SMOOTHING_H;
    let mut last_err = None;
    for _ in 0..=10 {
        match compute_w_params(p, bc, h) {
            Ok(wp) => {
                let segs = w_segments(p, &wp, Dd::ZERO, 0);
                match verify_w_bounds(p, bc, &segs) {
                    Ok(()) => {
                        let prof = PiecewiseProfile::assemble(
                            ProfileKind::Standalone,
                            segs,
                            vec![true, true],
                        );
                        return Ok((prof, wp));
                    }
                    Err(e) => last_err = Some(e),
                }
            }
            Err(Error::OutOfRange { .. }) => {
                // h too large for the crossing position; just shrink
                last_err = Some(Error::OutOfRange {
                    name: "h",
                    detail: "auto-halving".into(),
                });
            }
            Err(e) => return Err(e),
        }
        h *= 0.5;
    }
    Err(last_err.unwrap_or(Error::CrossingNotFound {
        detail: "smoothing failed".into(),
    }))
}

/// Build the full shell profiles over [t_0, t_{i_max + 1}].
pub fn build_shell_profiles(
    p: &FreeParams,
    bc: &BaseConstants,
    i_max: u32,
) -> Result<(PiecewiseProfile, PiecewiseProfile)> {
    assert!(i_max >= 1);
    let (_, wp) = build_w_auto(p, bc)?;

    // ---- u ----
    let mut u_segs = Vec::new();
    let mut u_c2 = Vec::new();
    let sine = SineArc {
        sqrt_k: bc.sqrt_k,
        tau0: 1.0 - bc.psi,
    };
    for i in 1..=i_max {
        let log_t = log_t_of(p, i);
        let x_lo = if i == 1 { 1.0 - bc.psi } else { 1.0 };
        u_segs.push(Segment {
            coord: CoordKind::Tau,
            index: i,
            x_lo,
            x_hi: 1.0 + 2.0 * p.r,
            log_t,
            kind: SegKind::SineArc(sine),
            d1_fudge: 1.0,
            d2_fudge: 1.0,
        });
        u_c2.push(false); // arc -> curved branch is C^1 only
        let w3 = w_segments(p, &wp, log_t, i);
        u_segs.extend(w3);
        u_c2.push(true);
        u_c2.push(true);
        if i < i_max {
            u_c2.push(false); // linear branch -> next arc is C^1 only
        }
    }
    let u = PiecewiseProfile::assemble(ProfileKind::ShellU, u_segs, u_c2);

    // ---- g ----
    let gb = p.gamma * bc.beta;
    let r = p.r;
    let ks = 6.0 * gb / ((1.0 + 2.0 * r) * r);
    let kd = 6.0 * gb / r;
    let ramp_gain = gb * r / (12.0 * (1.0 + 2.0 * r));
    let lam_lo = (2.0 * r).ln_1p();
    let inv_gain = gb * (p.log_alpha - lam_lo);
    let ln_1p_r6 = (r / 6.0).ln_1p();

    let mut g_segs: Vec<Segment> = Vec::new();
    let mut g_c2 = Vec::new();
    for i in 1..=i_max {
        let log_t = log_t_of(p, i);
        let anchor = log_t.add_f64(ln_1p_r6).mul_f64(p.gamma);
        if i >= 2 {
            // ramp down from the previous period, in this shell's units
            let ln_g_lo = log_t_of(p, i - 1)
                .add_f64(ln_1p_r6)
                .mul_f64(p.gamma)
                .add_f64(ramp_gain + inv_gain);
            g_segs.push(
                Segment {
                    coord: CoordKind::Tau,
                    index: i,
                    x_lo: 1.0,
                    x_hi: 1.0 + r / 6.0,
                    log_t,
                    kind: SegKind::LogDerivRampDown(LogDerivRampDown {
                        ln_g_lo,
                        kd,
                        u_max: r / 6.0,
                    }),
                    d1_fudge: 1.0,
                    d2_fudge: 1.0,
                },
            );
            g_c2.push(false);
        }
        g_segs.push(
            Segment {
                coord: CoordKind::Tau,
                index: i,
                x_lo: if i == 1 { 1.0 - bc.psi } else { 1.0 + r / 6.0 },
                x_hi: 1.0 + 11.0 * r / 6.0,
                log_t,
                kind: SegKind::LogDerivConstant(LogDerivConstant { ln_g: anchor }),
                d1_fudge: 1.0,
                d2_fudge: 1.0,
            },
        );
        g_c2.push(false);
        g_segs.push(
            Segment {
                coord: CoordKind::Tau,
                index: i,
                x_lo: 1.0 + 11.0 * r / 6.0,
                x_hi: 1.0 + 2.0 * r,
                log_t,
                kind: SegKind::LogDerivRamp(LogDerivRamp {
                    ln_g_a: anchor,
                    ks,
                    tau_a: 1.0 + 11.0 * r / 6.0,
                }),
                d1_fudge: 1.0,
                d2_fudge: 1.0,
            },
        );
        g_c2.push(false);
        g_segs.push(
            Segment {
                coord: CoordKind::LogTau,
                index: i,
                x_lo: lam_lo,
                x_hi: p.log_alpha,
                log_t,
                kind: SegKind::LogDerivInverse(LogDerivInverse {
                    ln_g_lo: anchor.add_f64(ramp_gain),
                    gb,
                    lambda_lo: lam_lo,
                }),
                d1_fudge: 1.0,
                d2_fudge: 1.0,
            },
        );
        if i < i_max {
            g_c2.push(false);
        }
    }
    let g = PiecewiseProfile::assemble(ProfileKind::ShellG, g_segs, g_c2);
    Ok((u, g))
}
