//! Derived constants of the shell/cap construction, admissibility checks,
//! and the per-scale quantities.
//!
//! Everything scale-bearing is kept as a log-magnitude; only scale-free
//! ratios are ever materialized as plain f64. Shared anchors (ln t_i,
//! ln(l_i t_i), ...) are computed once through a single code path so that
//! identity residuals cancel instead of accumulating ulps of 1e10-sized
//! logs.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::logsc::{softplus, LogSc};
use crate::solve::{bisect, bisect_geom};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

/// The free parameters of the construction.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FreeParams {
    /// Dimension of the sphere factor carried by the radial warp (>= 2).
    pub m: u32,
    /// Dimension of the disc/equator factor (>= m, >= 3).
    pub n: u32,
    /// Slope constant in (0, 1/3).
    pub c: f64,
    /// Spherical-segment half-width, 0 < r < r_max(c).
    pub r: f64,
    /// Growth exponent of the equatorial warp, in (0, 1/4).
    pub gamma: f64,
    /// Convexity constant of the outer cap profile, 0 < C3 < 1 - C2^2.
    pub c3: f64,
    /// Cap slope-ratio constant N (real, >= 5n).
    pub big_n: f64,
    /// Natural log of the scale ratio alpha (> 0).
    pub log_alpha: f64,
    /// Natural log of the first scale t_1 (> 0).
    pub log_t1: f64,
}

/// Constants determined by (c, r) alone.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BaseConstants {
    pub k: f64,
    pub sqrt_k: f64,
    /// psi with cos(sqrt(K) psi) = c; the positive branch arccos(c)/sqrt(K).
    pub psi: f64,
    pub r_max: f64,
    /// Delta = 2 sqrt(K) r + arccos(c), in (arccos c, pi/2) for admissible r.
    pub delta: f64,
    pub cos_delta: f64,
    pub sin_delta: f64,
    /// Slope normalizer of the equatorial log-derivative table.
    pub beta: f64,
}

/// Constants shared by every cap.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CapConstants {
    pub c1: f64,
    pub c2: f64,
    /// nu = ln(N C2).
    pub ln_nc2: f64,
    /// C4 = 1 - (N C2)^{-(1-C3)/C3}; saturates to 1.0 in f64.
    pub c4: f64,
    /// ln(1 - C4) = -(1-C3)/C3 * nu, kept exactly (Dd) since |.| ~ 1e6.
    pub ln_one_minus_c4: Dd,
    /// ln C4 (0.0 once 1 - C4 underflows).
    pub ln_c4: f64,
    /// A = ((1 + r/6)/x)^gamma where x = 1/(C1 (N C2)^{1/C3}) + C4/(C1 C2 (1-C3)).
    pub a_coef: f64,
    pub ln_a: f64,
    pub ln_x: f64,
    /// ln(l_i t_i) = ln C1 + nu/C3 (scale-free, shared by every i).
    pub ln_lt: Dd,
    /// ln(s_i/t_i) where s_i = C4 t_i / (C1 C2 (1-C3)).
    pub ln_s_over_t: f64,
    /// ln(s_i l_i) (scale-free).
    pub ln_sl: Dd,
    /// Argmax location parameter of d -> d^{1-gamma} cos(l d): the root of
    /// s tan s = 1 - gamma in (0, pi/2).
    pub s_star: f64,
}

/// Per-shell scale logs; identities t_i = t_1 alpha^i etc. hold exactly here.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ShellScales {
    pub i: u32,
    pub log_t: Dd,
    pub log_r: Dd,
    pub log_psi: Dd,
    pub log_k: Dd,
}

/// Per-cap derived quantities.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CapScales {
    pub i: u32,
    pub log_t: Dd,
    /// ln l_i = ln(l t) - ln t_i (hugely negative for admissible scales).
    pub ln_l: Dd,
    /// Smallest positive root of d^{1-gamma} cos(l_i d) = gamma A.
    pub d: f64,
    pub ln_d: f64,
    /// Residual of the defining equation at d, relative to gamma A.
    pub d_residual_rel: f64,
    /// B = sin(l_i d)/l_i - A d^gamma (negative for certified scales).
    pub b_coef: f64,
    /// ln E where R_i = (1/l_i + s_i) e^{E}; E = (1/gamma) ln(1 + |B|/T).
    pub ln_e: f64,
    pub e_factor: f64,
    /// ln(l_i b_i), the normalized cap-radius window coordinate.
    pub ln_lb: f64,
    pub ln_b: Dd,
    pub ln_s: Dd,
    pub ln_r_cap: Dd,
}

/// One admissibility check with a signed slack.
#[derive(Clone, Debug, Serialize)]
pub struct ConstraintEntry {
    pub name: String,
    pub margin: f64,
    pub satisfied: bool,
    pub anchor: String,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct ConstraintReport {
    pub entries: Vec<ConstraintEntry>,
}

impl ConstraintReport {
    fn push(&mut self, name: impl Into<String>, margin: f64, anchor: &str) {
        self.entries.push(ConstraintEntry {
            name: name.into(),
            margin,
            satisfied: margin > 0.0,
            anchor: anchor.into(),
        });
    }

    pub fn all_satisfied(&self) -> bool {
        self.entries.iter().all(|e| e.satisfied)
    }

    pub fn get(&self, name: &str) -> Option<&ConstraintEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Entry with the smallest margin.
    pub fn worst(&self) -> Option<&ConstraintEntry> {
        self.entries
            .iter()
            .min_by(|a, b| a.margin.partial_cmp(&b.margin).unwrap_or(std::cmp::Ordering::Equal))
    }
}

pub fn derive_base(p: &FreeParams) -> Result<BaseConstants> {
    if !(p.c > 0.0 && p.c < 1.0 / 3.0) {
        return Err(Error::OutOfRange {
            name: "c",
            detail: format!("{} not in (0, 1/3)", p.c),
        });
    }
    let k = (1.0 - p.c * p.c) / (p.c * p.c);
    let sqrt_k = k.sqrt();
    // Branch with cos(sqrt(K) psi) = c: forced by the C^1 slope match at the
    // shell entry (slope +c, not -c).
    let psi = p.c.acos() / sqrt_k;
    let r_max = PI / (4.0 * sqrt_k) - psi / 2.0;
    if !(p.r > 0.0 && p.r < r_max) {
        return Err(Error::OutOfRange {
            name: "r",
            detail: format!("{} not in (0, r_max = {r_max})", p.r),
        });
    }
    let delta = 2.0 * sqrt_k * p.r + p.c.acos();
    let l2r = (2.0 * p.r).ln_1p();
    let denom = p.log_alpha - l2r + p.r * (1.0 + p.r) / (6.0 * (1.0 + 2.0 * p.r));
    Ok(BaseConstants {
        k,
        sqrt_k,
        psi,
        r_max,
        delta,
        cos_delta: delta.cos(),
        sin_delta: delta.sin(),
        beta: p.log_alpha / denom,
    })
}

pub fn derive_cap_constants(p: &FreeParams, bc: &BaseConstants) -> Result<CapConstants> {
    let c1 = bc.sqrt_k / (0.8 * bc.sqrt_k * p.r).sin();
    let c2 = (0.6 * bc.sqrt_k * p.r).cos();
    if !(p.c3 > 0.0 && p.c3 < 1.0 - c2 * c2) {
        return Err(Error::OutOfRange {
            name: "C3",
            detail: format!("{} not in (0, 1 - C2^2 = {})", p.c3, 1.0 - c2 * c2),
        });
    }
    if p.big_n <= 1.0 / c2 || p.big_n < 5.0 * p.n as f64 {
        return Err(Error::OutOfRange {
            name: "N",
            detail: format!("{} must exceed 1/C2 and 5n", p.big_n),
        });
    }
    let ln_nc2 = (p.big_n * c2).ln();
    let ln_one_minus_c4 = Dd::new(ln_nc2).mul_f64(-(1.0 - p.c3)).div_f64(p.c3);
    let c4 = -f64::exp_m1(ln_one_minus_c4.value().min(0.0));
    let ln_c4 = if ln_one_minus_c4.hi < -745.0 {
        0.0
    } else {
        (-f64::exp_m1(ln_one_minus_c4.value())).ln()
    };
    // ln(l t) = ln C1 + nu/C3
    let ln_lt = Dd::new(ln_nc2).div_f64(p.c3).add_f64(c1.ln());
    let ln_s_over_t = ln_c4 - (c1 * c2 * (1.0 - p.c3)).ln();
    let ln_sl = ln_lt.add_f64(ln_s_over_t);
    // x = e^{-ln(l t)} + e^{ln(s/t)}
    let a_lo = -ln_lt.value();
    let ln_x = if a_lo < ln_s_over_t {
        ln_s_over_t + softplus(a_lo - ln_s_over_t)
    } else {
        a_lo + softplus(ln_s_over_t - a_lo)
    };
    let ln_a = p.gamma * ((p.r / 6.0).ln_1p() - ln_x);
    let s_star = bisect(
        1e-12,
        FRAC_PI_2 - 1e-12,
        |s| (1.0 - p.gamma) * s.cos() - s * s.sin(),
        1e-15,
        200,
    )?;
    Ok(CapConstants {
        c1,
        c2,
        ln_nc2,
        c4,
        ln_one_minus_c4,
        ln_c4,
        a_coef: ln_a.exp(),
        ln_a,
        ln_x,
        ln_lt,
        ln_s_over_t,
        ln_sl,
        s_star,
    })
}

/// ln t_i; single code path so every module sees bit-identical anchors.
pub fn log_t_of(p: &FreeParams, i: u32) -> Dd {
    Dd::from_prod(p.log_alpha, i as f64).add_f64(p.log_t1)
}

/// ln t_0 = ln((1 - psi) t_1).
pub fn log_t0(p: &FreeParams, bc: &BaseConstants) -> Dd {
    Dd::new(p.log_t1).add_f64((-bc.psi).ln_1p())
}

pub fn derive_shell_scales(p: &FreeParams, bc: &BaseConstants, i: u32) -> ShellScales {
    debug_assert!(i >= 1);
    let log_t = log_t_of(p, i);
    ShellScales {
        i,
        log_t,
        log_r: log_t.add_f64(p.r.ln()),
        log_psi: log_t.add_f64(bc.psi.ln()),
        log_k: log_t.mul_f64(-2.0).add_f64(bc.k.ln()),
    }
}

/// Evaluate d^{1-gamma} cos(l d) - gamma A without materializing l.
fn cap_root_fn(d: f64, gamma: f64, gamma_a: f64, ln_l: f64) -> f64 {
    let ln_ld = ln_l + d.ln();
    let cos = if ln_ld < -20.0 { 1.0 } else { ln_ld.exp().cos() };
    d.powf(1.0 - gamma) * cos - gamma_a
}

pub fn derive_cap_scales(
    p: &FreeParams,
    _bc: &BaseConstants,
    cc: &CapConstants,
    i: u32,
) -> Result<CapScales> {
    debug_assert!(i >= 1);
    let log_t = log_t_of(p, i);
    let ln_l = cc.ln_lt.sub(log_t);
    let ln_l_f = ln_l.value();
    let gamma_a = p.gamma * cc.a_coef;

    // Smallest positive root of d^{1-gamma} cos(l d) = gamma A on (0, pi/(2l)).
    // The left side rises from 0, peaks at d = s*/l, and returns to 0; the
    // smallest root therefore sits left of the peak and right of the
    // cos-free seed (gamma A)^{1/(1-gamma)}.
    let d_seed = ((gamma_a.ln()) / (1.0 - p.gamma)).exp();
    let ln_dmax = cc.s_star.ln() - ln_l_f;
    let d_hump = if ln_dmax > 690.0 {
        1e299
    } else {
        ln_dmax.exp()
    };
    if d_seed >= d_hump
        || cap_root_fn(d_hump, p.gamma, gamma_a, ln_l_f) <= 0.0
    {
        return Err(Error::NoRoot {
            lo: 0.0,
            hi: d_hump,
            detail: format!("cap radius equation has no root at scale index {i}"),
        });
    }
    let lo = d_seed * (1.0 - 1e-6);
    let mut hi = d_seed * 2.0;
    while hi < d_hump && cap_root_fn(hi, p.gamma, gamma_a, ln_l_f) <= 0.0 {
        hi *= 2.0;
    }
    hi = hi.min(d_hump);
    let d = bisect_geom(lo, hi, |x| cap_root_fn(x, p.gamma, gamma_a, ln_l_f), 1e-15, 600)?;
    let d_residual_rel = (cap_root_fn(d, p.gamma, gamma_a, ln_l_f) / gamma_a).abs();
    let ln_d = d.ln();

    // B = d sinc(l d) - A d^gamma
    let ln_ld = ln_l_f + ln_d;
    let sinc_ld = if ln_ld < -20.0 { 1.0 } else { crate::logsc::sinc(ln_ld.exp()) };
    let a_d_gamma = (cc.ln_a + p.gamma * ln_d).exp();
    let b_coef = d * sinc_ld - a_d_gamma;
    if b_coef >= 0.0 {
        return Err(Error::NegativityViolated { i, b: b_coef });
    }

    // E = (1/gamma) ln(1 + |B| e^{-gamma L}), L = ln((1 + r/6) t_i).
    let gamma_lt = log_t.add_f64((p.r / 6.0).ln_1p()).mul_f64(p.gamma).value();
    let arg = (-b_coef).ln() - gamma_lt;
    let ln_e = if arg < -37.0 {
        arg - p.gamma.ln()
    } else {
        softplus(arg).ln() - p.gamma.ln()
    };
    let e_factor = if ln_e > 700.0 { f64::INFINITY } else { ln_e.exp() };

    // l b = e^E (1 + z), z = s l (1 - e^{-E}); assembled from logs so the
    // strict positivity of ln(l b) survives even when z ~ e^{-100}.
    let ln_z = if e_factor < 1e-8 {
        cc.ln_sl.value() + ln_e + (-e_factor / 2.0).ln_1p()
    } else {
        cc.ln_sl.value() + (-f64::exp_m1(-e_factor)).ln()
    };
    let ln_lb = e_factor.min(1e300) + softplus(ln_z);
    let ln_b = ln_l.neg().add_f64(ln_lb);
    let ln_s = log_t.add_f64(cc.ln_s_over_t);
    let ln_r_cap = LogSc::from_ln_dd(ln_l.neg())
        .add(LogSc::from_ln_dd(ln_s))
        .ln_abs()
        .add_f64(e_factor.min(1e300));

    Ok(CapScales {
        i,
        log_t,
        ln_l,
        d,
        ln_d,
        d_residual_rel,
        b_coef,
        ln_e,
        e_factor,
        ln_lb,
        ln_b,
        ln_s,
        ln_r_cap,
    })
}

/// Residual of N C2 (1 - C4)^{C3/(1-C3)} = 1, as |value - 1|.
pub fn c4_identity_residual(p: &FreeParams, cc: &CapConstants) -> f64 {
    let ln = cc.ln_nc2 + cc.ln_one_minus_c4.mul_f64(p.c3 / (1.0 - p.c3)).value();
    f64::exp_m1(ln).abs()
}

/// Residual of (1-C3)(R_i - b_i) + N/l_i = t_i/(C1 C2), relative; evaluated
/// in per-t_i offsets (it is i-independent there).
pub fn cap_boundary_identity_residual(p: &FreeParams, cc: &CapConstants) -> f64 {
    // lhs/t_i = (1-C3) s/t + N/(l t); rhs/t_i = 1/(C1 C2)
    let a = (1.0 - p.c3).ln() + cc.ln_s_over_t;
    let b = p.big_n.ln() - cc.ln_lt.value();
    let lhs = if a >= b { a + softplus(b - a) } else { b + softplus(a - b) };
    let rhs = -(cc.c1 * cc.c2).ln();
    f64::exp_m1(lhs - rhs).abs()
}

pub const DEFAULT_VALIDATE_IMAX: u32 = 8;

pub fn validate(p: &FreeParams) -> ConstraintReport {
    validate_with_imax(p, DEFAULT_VALIDATE_IMAX)
}

pub fn validate_with_imax(p: &FreeParams, i_max: u32) -> ConstraintReport {
    let mut rep = ConstraintReport::default();
    // integer inequalities report the integer gap, so equality satisfies
    rep.push("m_ge_2", p.m as f64 - 1.0, "dimension hypothesis");
    rep.push(
        "n_ge_m",
        p.n as f64 - p.m as f64 + 1.0,
        "dimension hypothesis",
    );
    rep.push("n_ge_3", p.n as f64 - 2.0, "dimension hypothesis");
    rep.push("c_range", p.c.min(1.0 / 3.0 - p.c), "slope constant window");
    rep.push(
        "gamma_range",
        p.gamma.min(0.25 - p.gamma),
        "growth exponent window",
    );
    rep.push("alpha_gt_1", p.log_alpha, "scale ratio above 1");
    rep.push("t1_gt_1", p.log_t1, "first scale above 1");
    rep.push(
        "N_ge_5n",
        p.big_n - 5.0 * p.n as f64,
        "cap slope-ratio floor",
    );

    let bc = match derive_base(p) {
        Ok(bc) => bc,
        Err(_) => {
            // r out of range (or c, already reported): fill what we can.
            let k = (1.0 - p.c * p.c) / (p.c * p.c);
            let r_max = if p.c > 0.0 && p.c < 1.0 {
                PI / (4.0 * k.sqrt()) - p.c.acos() / k.sqrt() / 2.0
            } else {
                f64::NAN
            };
            rep.push(
                "r_range",
                if r_max.is_finite() {
                    p.r.min(r_max - p.r)
                } else {
                    f64::NEG_INFINITY
                },
                "segment width window",
            );
            push_unavailable(&mut rep, i_max);
            return rep;
        }
    };
    rep.push("r_range", p.r.min(bc.r_max - p.r), "segment width window");

    // cos Delta >= (c+1)/ln(alpha/(1+2r))
    let lam = p.log_alpha - (2.0 * p.r).ln_1p();
    rep.push(
        "cosDelta_vs_log",
        if lam > 0.0 {
            bc.cos_delta - (p.c + 1.0) / lam
        } else {
            lam - 1.0
        },
        "first shell branch reaches the linear branch",
    );
    rep.push(
        "beta_range",
        (bc.beta - 0.5).min(2.0 - bc.beta),
        "log-derivative normalizer window",
    );

    let cc = match derive_cap_constants(p, &bc) {
        Ok(cc) => cc,
        Err(_) => {
            let c2 = (0.6 * bc.sqrt_k * p.r).cos();
            rep.push(
                "N_gt_inv_C2",
                p.big_n - 1.0 / c2,
                "cap slope-ratio vs plateau slope",
            );
            rep.push(
                "C3_range",
                p.c3.min((1.0 - c2 * c2) - p.c3),
                "outer-cap convexity window",
            );
            push_unavailable(&mut rep, i_max);
            return rep;
        }
    };
    rep.push(
        "N_gt_inv_C2",
        p.big_n - 1.0 / cc.c2,
        "cap slope-ratio vs plateau slope",
    );
    rep.push(
        "C3_range",
        p.c3.min((1.0 - cc.c2 * cc.c2) - p.c3),
        "outer-cap convexity window",
    );
    let inv_c2s = 1.0 / (cc.c2 * cc.c2) - 1.0;
    rep.push(
        "C3_le_half_curv",
        0.5 * inv_c2s - p.c3,
        "outer-cap Ricci slope condition",
    );
    rep.push(
        "gamma_le_curv",
        inv_c2s / (8.0 * (p.n as f64 - 1.0)) - p.gamma,
        "outer-cap Ricci slope condition",
    );

    for i in 1..=i_max {
        match derive_cap_scales(p, &bc, &cc, i) {
            Ok(cs) => {
                rep.push(format!("B_negative_i{i}"), -cs.b_coef, "cap offset sign");
                rep.push(
                    format!("d_root_i{i}"),
                    root_slack(p, &cc, &cs),
                    "cap radius equation solvable (log slack)",
                );
                rep.push(
                    format!("b_lower_i{i}"),
                    cs.ln_lb,
                    "cap inner radius window ln(l b) >= 0",
                );
                rep.push(
                    format!("b_upper_i{i}"),
                    std::f64::consts::LN_2 - cs.ln_lb,
                    "cap inner radius window ln(l b) <= ln 2",
                );
                rep.push(
                    format!("b_gt_d_i{i}"),
                    cs.ln_b.value() - cs.ln_d,
                    "cap inner radius beyond the sine zone (log slack)",
                );
                rep.push(
                    format!("R_gt_floor_i{i}"),
                    cs.ln_lb.exp(),
                    "cap outer radius above its floor (l b > 0)",
                );
            }
            Err(e) => {
                let neg = f64::NEG_INFINITY;
                let note = format!("not derivable: {e}");
                rep.push(format!("B_negative_i{i}"), neg, &note);
                rep.push(format!("d_root_i{i}"), neg, &note);
                rep.push(format!("b_lower_i{i}"), neg, &note);
                rep.push(format!("b_upper_i{i}"), neg, &note);
                rep.push(format!("b_gt_d_i{i}"), neg, &note);
                rep.push(format!("R_gt_floor_i{i}"), neg, &note);
            }
        }
    }
    rep
}

fn root_slack(p: &FreeParams, cc: &CapConstants, cs: &CapScales) -> f64 {
    // log of peak value over gamma A; positive iff the equation has a root
    let ln_peak = (1.0 - p.gamma) * (cc.s_star.ln() - cs.ln_l.value()) + cc.s_star.cos().ln();
    ln_peak - (p.gamma * cc.a_coef).ln()
}

fn push_unavailable(rep: &mut ConstraintReport, i_max: u32) {
    let fill: Vec<String> = [
        "cosDelta_vs_log",
        "beta_range",
        "N_gt_inv_C2",
        "C3_range",
        "C3_le_half_curv",
        "gamma_le_curv",
    ]
    .iter()
    .map(|s| s.to_string())
    .chain((1..=i_max).flat_map(|i| {
        [
            format!("B_negative_i{i}"),
            format!("d_root_i{i}"),
            format!("b_lower_i{i}"),
            format!("b_upper_i{i}"),
            format!("b_gt_d_i{i}"),
            format!("R_gt_floor_i{i}"),
        ]
    }))
    .collect();
    for name in fill {
        if rep.get(&name).is_none() {
            rep.push(name, f64::NEG_INFINITY, "not derivable from base constants");
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn sample_params() -> FreeParams {
        // A hand-pinned admissible-shaped set at moderate scales for unit
        // tests that do not need full certification.
        FreeParams {
            m: 2,
            n: 3,
            c: 0.25,
            r: 0.016310440334678527,
            gamma: 5e-5,
            c3: 7.179383655050799e-6,
            big_n: 2e5,
            log_alpha: 6.4e5,
            log_t1: 3.40006962e10,
        }
    }

    #[test]
    fn base_constants_c_quarter() {
        let p = sample_params();
        let bc = derive_base(&p).unwrap();
        assert_eq!(bc.k, 15.0);
        assert!((bc.psi - 0.3403361062586471).abs() < 1e-15);
        assert!((bc.r_max - 0.032620880669357055).abs() < 1e-15);
        // independent branch check
        assert!(((bc.sqrt_k * bc.psi).sin() - (1.0 - p.c * p.c).sqrt()).abs() < 1e-15);
        assert!(((bc.sqrt_k * bc.psi).cos() - p.c).abs() < 1e-15);
    }

    #[test]
    fn base_rejects_out_of_range() {
        let mut p = sample_params();
        p.c = 0.4;
        assert!(matches!(
            derive_base(&p),
            Err(Error::OutOfRange { name: "c", .. })
        ));
        let mut p = sample_params();
        p.r = 0.04;
        assert!(matches!(
            derive_base(&p),
            Err(Error::OutOfRange { name: "r", .. })
        ));
    }

    #[test]
    fn delta_window() {
        let p = sample_params();
        let bc = derive_base(&p).unwrap();
        assert!(bc.delta > 0.0 && bc.delta < FRAC_PI_2);
        // cos Delta <= c since Delta >= arccos c
        assert!(bc.cos_delta <= p.c + 1e-12);
        // r -> r_max would push Delta -> pi/2
        let mut q = p;
        q.r = bc.r_max * (1.0 - 1e-12);
        let bq = derive_base(&q).unwrap();
        assert!((bq.delta - FRAC_PI_2).abs() < 1e-10);
    }

    #[test]
    fn cap_constants_frozen_example() {
        let p = FreeParams {
            m: 2,
            n: 3,
            c: 0.3,
            r: 0.02,
            gamma: 1e-4,
            c3: 1e-4,
            big_n: 1e5,
            log_alpha: 1e5,
            log_t1: 1e8,
        };
        let bc = derive_base(&p).unwrap();
        let cc = derive_cap_constants(&p, &bc).unwrap();
        assert!((cc.c1 - 62.52697110760124).abs() < 1e-9);
        assert!((cc.c2 - 0.9992720883263798).abs() < 1e-15);
        assert!((1.0 - cc.c2 * cc.c2 - 1.4552934918358146e-3).abs() < 1e-15);
        // small-r limit: C1 ~ 1/(0.8 r); C3 must shrink with 1 - C2^2
        let mut q = p;
        q.r = 1e-7;
        q.c3 = 1e-15;
        let cq = derive_cap_constants(&q, &derive_base(&q).unwrap()).unwrap();
        assert!((cq.c1 * 0.8 * q.r - 1.0).abs() < 1e-9);
        assert!(cc.c2 > (0.8 * bc.sqrt_k * p.r).cos());
    }

    #[test]
    fn c4_defining_identity() {
        let p = sample_params();
        let bc = derive_base(&p).unwrap();
        let cc = derive_cap_constants(&p, &bc).unwrap();
        assert!(c4_identity_residual(&p, &cc) <= 1e-12);
        assert!(cc.c4 > 0.0 && cc.c4 <= 1.0);
        assert!(cap_boundary_identity_residual(&p, &cc) <= 1e-12);
    }

    #[test]
    fn cap_constants_rejections() {
        let p = sample_params();
        let bc = derive_base(&p).unwrap();
        let mut q = p;
        q.c3 = 0.5; // >= 1 - C2^2
        assert!(matches!(
            derive_cap_constants(&q, &bc),
            Err(Error::OutOfRange { name: "C3", .. })
        ));
        let mut q = p;
        q.big_n = 0.5;
        assert!(matches!(
            derive_cap_constants(&q, &bc),
            Err(Error::OutOfRange { name: "N", .. })
        ));
    }

    #[test]
    fn shell_scale_identities() {
        let p = sample_params();
        let bc = derive_base(&p).unwrap();
        for i in [1u32, 3, 1_000_000] {
            let ss = derive_shell_scales(&p, &bc, i);
            let expect = Dd::from_prod(p.log_alpha, i as f64).add_f64(p.log_t1);
            assert_eq!(ss.log_t.hi, expect.hi);
            assert!((ss.log_r.sub(ss.log_t).value() - p.r.ln()).abs() < 1e-12);
            assert!(
                (ss.log_k.value() - (bc.k.ln() - 2.0 * ss.log_t.value())).abs()
                    <= 1e-6 * ss.log_t.value().abs()
            );
        }
        // exact log-space example: log t1 = 30, log alpha = 2.2e5, i = 3
        let mut q = p;
        q.log_t1 = 30.0;
        q.log_alpha = 2.2e5;
        let ss = derive_shell_scales(&q, &bc, 3);
        assert_eq!(ss.log_t.value(), 30.0 + 3.0 * 2.2e5);
    }

    #[test]
    fn cap_scales_frozen_example() {
        // gamma = 5e-5, A ~ 1.0002 setting: d ~ 5.0e-5 and B ~ -0.9997
        let p = sample_params();
        let bc = derive_base(&p).unwrap();
        let cc = derive_cap_constants(&p, &bc).unwrap();
        assert!((cc.a_coef - 1.0002170989718721).abs() < 1e-12);
        let cs = derive_cap_scales(&p, &bc, &cc, 1).unwrap();
        assert!((cs.d - 4.99860962897915e-5).abs() < 1e-15);
        assert!((cs.b_coef - (-0.9996719396995406)).abs() < 1e-12);
        assert!(cs.d_residual_rel <= 1e-14);
        // independent oracle: plain-f64 bisection of x^{1-g} - gA (cos = 1 here)
        let ga = p.gamma * cc.a_coef;
        let oracle = bisect_geom(1e-8, 1.0, |x| x.powf(1.0 - p.gamma) - ga, 1e-15, 400).unwrap();
        assert!((cs.d - oracle).abs() <= 1e-12 * oracle);
    }

    #[test]
    fn cap_radius_window() {
        let p = sample_params();
        let bc = derive_base(&p).unwrap();
        let cc = derive_cap_constants(&p, &bc).unwrap();
        for i in 1..=8 {
            let cs = derive_cap_scales(&p, &bc, &cc, i).unwrap();
            assert!(cs.ln_lb > 0.0, "l b > 1 strictly at i={i}: {}", cs.ln_lb);
            assert!(cs.ln_lb < std::f64::consts::LN_2, "l b < 2 at i={i}");
            assert!(cs.ln_b.value() > cs.ln_d);
            assert!(cs.b_coef < 0.0);
            // R = b + s in log space
            let r2 = LogSc::from_ln_dd(cs.ln_b)
                .add(LogSc::from_ln_dd(cs.ln_s));
            assert!(r2.rel_diff(LogSc::from_ln_dd(cs.ln_r_cap)) < 1e-12);
        }
    }

    #[test]
    fn cap_scales_rejects_small_scales() {
        // tiny t_1: l_i huge, the sine quarter-period is shorter than the
        // seed, so there is no root
        let mut p = sample_params();
        p.log_t1 = 10.0;
        p.log_alpha = 10.0;
        let bc = derive_base(&p).unwrap();
        let cc = derive_cap_constants(&p, &bc).unwrap();
        assert!(matches!(
            derive_cap_scales(&p, &bc, &cc, 1),
            Err(Error::NoRoot { .. })
        ));
    }

    #[test]
    fn validate_flags_n_violation() {
        let mut p = sample_params();
        p.big_n = p.n as f64;
        let rep = validate(&p);
        let e = rep.get("N_ge_5n").unwrap();
        assert!(!e.satisfied);
        assert_eq!(e.margin, p.big_n - 5.0 * p.n as f64);
    }

    #[test]
    fn validate_flags_cos_delta() {
        let mut p = sample_params();
        p.c = 0.25;
        p.r = 0.005;
        p.log_alpha = 1.0;
        let rep = validate(&p);
        let e = rep.get("cosDelta_vs_log").unwrap();
        assert!(!e.satisfied);
        // frozen high-precision margin
        assert!((e.margin - (-1.0502410210314216)).abs() < 1e-12);
    }

    #[test]
    fn validate_pure_and_idempotent() {
        let p = sample_params();
        let a = validate(&p);
        let b = validate(&p);
        assert_eq!(a.entries.len(), b.entries.len());
        for (x, y) in a.entries.iter().zip(b.entries.iter()) {
            assert_eq!(x.name, y.name);
            assert!(x.margin == y.margin || (x.margin.is_nan() && y.margin.is_nan()));
        }
    }

    #[test]
    fn validate_passes_sample() {
        let rep = validate(&sample_params());
        for e in &rep.entries {
            assert!(e.satisfied, "{} failed with margin {}", e.name, e.margin);
        }
    }
}
