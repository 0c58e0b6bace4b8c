//! Piecewise-analytic warping profiles with closed-form derivatives.

mod cap;
mod segment;
mod shell;

pub use cap::build_cap_profiles;
pub use segment::{CoordKind, SegKind, SegSample, Segment};
pub use shell::{build_shell_profiles, build_w, build_w_auto, WParams};

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::logsc::LogSc;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ProfileKind {
    ShellU,
    ShellG,
    CapU { i: u32 },
    CapG { i: u32 },
    /// Unscaled single-shell profile (the raw smoothed min, scale 1).
    Standalone,
}

/// Evaluated point of a profile, in absolute units.
#[derive(Clone, Copy, Debug)]
pub struct ProfileSample {
    pub seg: usize,
    /// Local coordinate within the segment.
    pub x: f64,
    /// ln t of the sample point (best-effort f64).
    pub rho: f64,
    pub value: LogSc,
    pub d1: LogSc,
    pub d2: LogSc,
    pub one_minus_d1_sq: Option<LogSc>,
    pub at_breakpoint: bool,
}

/// Residuals at one interior junction.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct JunctionResidual {
    pub junction: usize,
    pub value_rel: f64,
    pub d1_rel: f64,
    /// Second-derivative residual; only expected small when `c2` is set.
    pub d2_rel: f64,
    pub c2: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PiecewiseProfile {
    pub kind: ProfileKind,
    pub segments: Vec<Segment>,
    /// ln t at segment boundaries, len = segments + 1 (first may be -inf).
    pub rho_breaks: Vec<f64>,
    /// Whether the junction right of segment j is expected to be C^2.
    pub junction_c2: Vec<bool>,
}

/// Finite-difference step policy. The first-derivative step is
/// `d1_frac` of the sampling window; the second-derivative step is a
/// per-kind base fraction (smooth-saturating kinds need smaller steps,
/// polynomial ones tolerate larger) scaled by `d2_scale`. Sampling keeps
/// 10 steps clear of window edges.
#[derive(Clone, Copy, Debug)]
pub struct StepPolicy {
    pub d1_frac: f64,
    pub d2_scale: f64,
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy {
            d1_frac: 1e-5,
            d2_scale: 1.0,
        }
    }
}

fn d2_base_frac(kind: &SegKind) -> f64 {
    match kind {
        SegKind::SmoothingBridge(_)
        | SegKind::LogDerivConstant(_)
        | SegKind::LogDerivRamp(_)
        | SegKind::LogDerivInverse(_)
        | SegKind::LogDerivRampDown(_) => 1e-2,
        SegKind::SineArc(_) => 1e-3,
        SegKind::ExpQuadratic(_) | SegKind::CapSine(_) => 2e-5,
        SegKind::MinLogLinear(_) | SegKind::PowerPlusConst(_) => 2e-4,
        SegKind::PowerShifted(_) => 5e-5,
    }
}

impl PiecewiseProfile {
    pub(crate) fn assemble(
        kind: ProfileKind,
        segments: Vec<Segment>,
        junction_c2: Vec<bool>,
    ) -> PiecewiseProfile {
        debug_assert_eq!(junction_c2.len() + 1, segments.len().max(1));
        let mut rho_breaks = Vec::with_capacity(segments.len() + 1);
        if let Some(first) = segments.first() {
            rho_breaks.push(rho_of(first, first.x_lo));
        }
        for s in &segments {
            rho_breaks.push(rho_of(s, s.x_hi));
        }
        PiecewiseProfile {
            kind,
            segments,
            rho_breaks,
            junction_c2,
        }
    }

    pub fn rho_lo(&self) -> f64 {
        self.rho_breaks[0]
    }

    pub fn rho_hi(&self) -> f64 {
        *self.rho_breaks.last().unwrap()
    }

    /// Sample a segment at a local coordinate.
    pub fn sample_seg(&self, seg: usize, x: Dd) -> SegSample {
        self.segments[seg].sample(x)
    }

    /// Evaluate at absolute ln t. Exactly at an interior breakpoint the
    /// right segment is used and the sample is flagged.
    pub fn eval(&self, rho: f64) -> Result<ProfileSample> {
        if !(rho >= self.rho_lo() && rho <= self.rho_hi()) {
            return Err(Error::OutOfDomain {
                x: rho,
                lo: self.rho_lo(),
                hi: self.rho_hi(),
            });
        }
        // first segment whose right end is >= rho; exact hits on a left
        // boundary belong to the right segment
        let mut seg = match self
            .rho_breaks
            .binary_search_by(|p| p.partial_cmp(&rho).unwrap())
        {
            Ok(j) => j.min(self.segments.len() - 1),
            Err(j) => (j - 1).min(self.segments.len() - 1),
        };
        if seg + 1 < self.segments.len() && rho >= self.rho_breaks[seg + 1] {
            seg += 1;
        }
        let at_breakpoint = self.rho_breaks.iter().any(|&b| b == rho);
        let s = &self.segments[seg];
        // breakpoint hits map back to the stored local coordinate exactly
        let x = if rho == self.rho_breaks[seg] {
            Dd::new(s.x_lo)
        } else if rho == self.rho_breaks[seg + 1] {
            Dd::new(s.x_hi)
        } else {
            local_of(s, rho)
        };
        let out = s.sample(x);
        Ok(ProfileSample {
            seg,
            x: x.value(),
            rho,
            value: out.value,
            d1: out.d1,
            d2: out.d2,
            one_minus_d1_sq: out.one_minus_d1_sq,
            at_breakpoint,
        })
    }

    /// Both one-sided samples at interior junction j (between segments j
    /// and j+1).
    pub fn junction_samples(&self, j: usize) -> (SegSample, SegSample) {
        let left = &self.segments[j];
        let right = &self.segments[j + 1];
        (
            left.sample(Dd::new(left.x_hi)),
            right.sample(Dd::new(right.x_lo)),
        )
    }

    /// Value/slope agreement at every interior junction; second derivative
    /// too where the construction promises C^2.
    pub fn check_junctions(&self) -> Vec<JunctionResidual> {
        (0..self.segments.len().saturating_sub(1))
            .map(|j| {
                let (l, r) = self.junction_samples(j);
                // slope residual normalized by max(|d1|, 1)
                let denom = if l.d1.abs().cmp_val(LogSc::ONE) == std::cmp::Ordering::Greater {
                    l.d1.abs()
                } else {
                    LogSc::ONE
                };
                let d1_rel = l.d1.sub(r.d1).div(denom).to_f64().abs();
                // curvature compared scale-free (t^2 d2/value), floored at 1,
                // so exact zeros meet rounding dust gracefully
                let left_seg = &self.segments[j];
                let t2 = LogSc::from_ln_dd(rho_dd_of(left_seg, left_seg.x_hi).mul_f64(2.0));
                let cl = l.d2.div(l.value).mul(t2);
                let cr = r.d2.div(r.value).mul(t2);
                let cden = cl.abs().max_val(cr.abs()).max_val(LogSc::ONE);
                let d2_rel = cl.sub(cr).div(cden).to_f64().abs();
                JunctionResidual {
                    junction: j,
                    value_rel: l.value.rel_diff(r.value),
                    d1_rel,
                    d2_rel,
                    c2: self.junction_c2[j],
                }
            })
            .collect()
    }

    /// Worst junction residual over value and slope (and curvature where
    /// C^2 is expected).
    pub fn worst_junction_residual(&self) -> f64 {
        self.check_junctions()
            .iter()
            .map(|r| {
                let base = r.value_rel.max(r.d1_rel);
                if r.c2 {
                    base.max(r.d2_rel)
                } else {
                    base
                }
            })
            .fold(0.0, f64::max)
    }

    /// Compare closed-form derivatives against central finite differences
    /// of the canonical segment functions. Returns the worst normalized
    /// deviation over all interior sample points.
    pub fn fd_check(&self, samples_per_segment: usize, policy: StepPolicy) -> f64 {
        let mut worst = 0.0f64;
        for seg in &self.segments {
            let windows = fd_windows(seg);
            let per_window = (samples_per_segment / windows.len()).max(8);
            for &(wlo, whi) in &windows {
                let wlen = whi - wlo;
                let h1 = policy.d1_frac * wlen;
                let h2 = policy.d2_scale * d2_base_frac(&seg.kind) * wlen;
                let margin = 10.0 * h1.max(h2);
                let lo = wlo + margin;
                let hi = whi - margin;
                if hi <= lo {
                    continue;
                }
                let xs: Vec<f64> = (0..per_window)
                    .map(|k| lo + (hi - lo) * (k as f64 + 0.5) / per_window as f64)
                    .collect();
                let mut max0 = 0.0f64;
                let mut max1 = 0.0f64;
                let mut max2 = 0.0f64;
                let evals: Vec<(f64, f64, f64, f64, f64, f64, f64)> = xs
                    .iter()
                    .map(|&x| {
                        let (f0, f1, f2) = seg.canonical(x);
                        let (fp1, ..) = seg.canonical(x + h1);
                        let (fm1, ..) = seg.canonical(x - h1);
                        let (fp2, ..) = seg.canonical(x + h2);
                        let (fm2, ..) = seg.canonical(x - h2);
                        max0 = max0.max(f0.abs());
                        max1 = max1.max(f1.abs());
                        max2 = max2.max(f2.abs());
                        (f1, f2, fp1, fm1, fp2, fm2, f0)
                    })
                    .collect();
                // the value scale enters the norms: differencing cannot
                // resolve derivatives below eps * |F| / h^k
                let norm1 = max1.max(max0).max(1e-30);
                let norm2 = max2.max(max1).max(max0).max(1e-30);
                for (j, (f1, f2, fp1, fm1, fp2, fm2, f0)) in evals.into_iter().enumerate() {
                    let fd1 = (fp1 - fm1) / (2.0 * h1);
                    let fd2 = (fp2 - 2.0 * f0 + fm2) / (h2 * h2);
                    let d1 = (fd1 - f1).abs() / norm1;
                    let d2 = (fd2 - f2).abs() / norm2;
                    if std::env::var("FD_DEBUG").is_ok() && d1.max(d2) > 1e-6 {
                        eprintln!("fd-debug {}: window [{wlo},{whi}] x={} d1={d1:.3e} d2={d2:.3e} f1={f1:.6e} fd1={fd1:.6e} f2={f2:.6e} fd2={fd2:.6e}", seg.kind.name(), xs[j]);
                    }
                    worst = worst.max(d1);
                    worst = worst.max(d2);
                }
            }
        }
        worst
    }

    /// Negative-control fixture: desynchronize a segment's reported
    /// derivatives from its value by constant factors.
    #[doc(hidden)]
    pub fn scale_segment_derivatives(&mut self, seg: usize, d1_factor: f64, d2_factor: f64) {
        self.segments[seg].d1_fudge *= d1_factor;
        self.segments[seg].d2_fudge *= d2_factor;
    }

    /// Plain-text segment table: kind, local interval, anchor, coefficients.
    pub fn segment_table(&self) -> String {
        let mut out = String::new();
        for (j, s) in self.segments.iter().enumerate() {
            out.push_str(&format!(
                "{j}\t{}\t{:?}\tindex={}\tx=[{:.17e}, {:.17e}]\tln_t={:.17e}\t{}\n",
                s.kind.name(),
                s.coord,
                s.index,
                s.x_lo,
                s.x_hi,
                s.log_t.value(),
                serde_json::to_string(&s.kind).unwrap_or_default(),
            ));
        }
        out
    }
}

fn rho_of(seg: &Segment, x: f64) -> f64 {
    match seg.coord {
        CoordKind::Tau => seg.log_t.value() + x.ln(),
        CoordKind::LogTau => seg.log_t.value() + x,
        CoordKind::BridgeX => {
            if let SegKind::SmoothingBridge(b) = &seg.kind {
                seg.log_t.value() + b.log_tau_star + x
            } else {
                unreachable!()
            }
        }
        CoordKind::LogTBar => x,
    }
}

fn rho_dd_of(seg: &Segment, x: f64) -> Dd {
    match seg.coord {
        CoordKind::Tau => seg.log_t.add_f64(x.ln()),
        CoordKind::LogTau => seg.log_t.add_f64(x),
        CoordKind::BridgeX => {
            if let SegKind::SmoothingBridge(b) = &seg.kind {
                seg.log_t.add_f64(b.log_tau_star).add_f64(x)
            } else {
                unreachable!()
            }
        }
        CoordKind::LogTBar => Dd::new(x),
    }
}

fn local_of(seg: &Segment, rho: f64) -> Dd {
    match seg.coord {
        CoordKind::Tau => Dd::new((Dd::new(rho).sub(seg.log_t).value()).exp()),
        CoordKind::LogTau => Dd::new(rho).sub(seg.log_t),
        CoordKind::BridgeX => {
            if let SegKind::SmoothingBridge(b) = &seg.kind {
                Dd::new(rho).sub(seg.log_t).add_f64(-b.log_tau_star)
            } else {
                unreachable!()
            }
        }
        CoordKind::LogTBar => Dd::new(rho),
    }
}

/// Sampling windows for the finite-difference oracle, in the canonical
/// coordinate: whole segment when it is short, otherwise short windows at
/// both ends and the middle (the canonical functions are asymptotically
/// affine over wide pieces).
fn fd_windows(seg: &Segment) -> Vec<(f64, f64)> {
    let (blo, bhi) = seg.canon_bounds();
    let lo = if blo == f64::NEG_INFINITY {
        bhi - 60.0
    } else {
        blo
    };
    let len = bhi - lo;
    let w = match seg.kind {
        SegKind::PowerPlusConst(_) => 0.5f64,
        SegKind::PowerShifted(_) => 40.0,
        SegKind::MinLogLinear(_) => 2.0,
        _ => len,
    };
    if len <= 3.0 * w {
        vec![(lo, bhi)]
    } else {
        let mid = 0.5 * (lo + bhi);
        vec![
            (lo, lo + w),
            (mid - 0.5 * w, mid + 0.5 * w),
            (bhi - w, bhi),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::shell::compute_w_params;
    use super::*;
    use crate::params::{
        derive_base, derive_cap_constants, derive_cap_scales, log_t_of, FreeParams,
    };

    fn sample() -> FreeParams {
        crate::params::tests::sample_params()
    }

    #[test]
    fn w_endpoint_values() {
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let w = build_w(&p, &bc, 0.05).unwrap();
        let lo = w.segments[0].sample(Dd::new(w.segments[0].x_lo));
        assert!(lo.value.rel_diff(LogSc::from_f64(bc.sin_delta / bc.sqrt_k)) < 1e-12);
        assert!((lo.d1.to_f64() - bc.cos_delta).abs() < 1e-15);
        let hi_seg = w.segments.last().unwrap();
        let hi = hi_seg.sample(Dd::new(hi_seg.x_hi));
        // w(alpha) = c alpha, slope exactly c
        assert!(
            (hi.value.ln_abs().value() - (p.c.ln() + p.log_alpha)).abs() < 1e-9,
            "ln w(alpha) = {}",
            hi.value
        );
        assert_eq!(hi.d1.to_f64(), p.c);
    }

    #[test]
    fn w_crossing_matches_asymptotic() {
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let wp = compute_w_params(&p, &bc, 0.05).unwrap();
        // first-order solution of curved = linear in lambda; the dropped
        // term is exponentially small at this alpha
        let span = p.log_alpha - wp.lambda_lo;
        let predicted = wp.lambda_lo + 1.0 + 2.0 * span * (p.c - bc.cos_delta) / (p.c + 1.0);
        assert!(
            (wp.lambda_star - predicted).abs() <= 1e-10 * predicted,
            "bisection {} vs asymptotic {predicted}",
            wp.lambda_star
        );
    }

    #[test]
    fn w_bridge_is_c2() {
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let w = build_w(&p, &bc, 0.05).unwrap();
        for r in w.check_junctions() {
            assert!(r.c2);
            assert!(r.value_rel < 1e-9, "value residual {}", r.value_rel);
            assert!(r.d1_rel < 1e-9, "slope residual {}", r.d1_rel);
            assert!(r.d2_rel < 1e-9, "curvature residual {}", r.d2_rel);
        }
    }

    #[test]
    fn u_closes_smoothly_at_origin() {
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let (u, _) = build_shell_profiles(&p, &bc, 2).unwrap();
        let s = u.eval(u.rho_lo()).unwrap();
        assert!(s.value.is_zero());
        assert_eq!(s.d1.to_f64(), 1.0);
    }

    #[test]
    fn shell_entry_slope_and_value() {
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let (u, _) = build_shell_profiles(&p, &bc, 3).unwrap();
        for i in 1..=3u32 {
            let seg = &u.segments[((i - 1) * 4) as usize];
            let s = seg.sample(Dd::new(1.0));
            let scaled = s.value.div(LogSc::from_ln_dd(log_t_of(&p, i)));
            assert!(scaled.rel_diff(LogSc::from_f64(p.c)) < 1e-13);
            assert!((s.d1.to_f64() - p.c).abs() < 1e-13);
        }
    }

    #[test]
    fn sine_second_derivative_identity() {
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let (u, _) = build_shell_profiles(&p, &bc, 2).unwrap();
        let seg = &u.segments[0];
        let s = seg.sample(Dd::new(1.0 + p.r));
        // -u_tt/u = K/t_i^2
        let ratio = s.d2.div(s.value).neg();
        let expect = bc.k.ln() - 2.0 * log_t_of(&p, 1).value();
        assert!((ratio.ln_abs().value() - expect).abs() < 1e-12);
        assert_eq!(ratio.sign(), 1);
    }

    #[test]
    fn scaled_profile_periodic_across_shells() {
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let (u, _) = build_shell_profiles(&p, &bc, 3).unwrap();
        for k in 0..=32 {
            let tau = 1.0 + 2.0 * p.r * k as f64 / 32.0;
            let s2 = u.segments[4].sample(Dd::new(tau));
            let s3 = u.segments[8].sample(Dd::new(tau));
            let v2 = s2.value.div(LogSc::from_ln_dd(log_t_of(&p, 2)));
            let v3 = s3.value.div(LogSc::from_ln_dd(log_t_of(&p, 3)));
            assert!(v2.rel_diff(v3) < 1e-14);
            assert_eq!(s2.d1.to_f64(), s3.d1.to_f64());
        }
        // w pieces share coefficients; compare mid-branch samples
        let lam = 0.5 * (u.segments[1].x_lo + u.segments[1].x_hi);
        let w2 = u.segments[5].sample(Dd::new(lam));
        let w3 = u.segments[9].sample(Dd::new(lam));
        let v2 = w2.value.div(LogSc::from_ln_dd(log_t_of(&p, 2)));
        let v3 = w3.value.div(LogSc::from_ln_dd(log_t_of(&p, 3)));
        assert!(v2.rel_diff(v3) < 1e-14);
    }

    #[test]
    fn g_flat_rows_and_anchor() {
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let (_, g) = build_shell_profiles(&p, &bc, 3).unwrap();
        // flat row of shell 2 sits at segment 3 (+1 for its ramp-down)
        let flat = &g.segments[4];
        assert_eq!(flat.kind.name(), "LogDerivConstant");
        let s = flat.sample(Dd::new(1.0 + p.r));
        assert_eq!(s.d1.sign(), 0);
        let anchor = log_t_of(&p, 2).add_f64((p.r / 6.0).ln_1p()).mul_f64(p.gamma);
        assert_eq!(s.value.ln_abs().value(), anchor.value());
        // middle row: t g_t/g = gamma beta
        let inv = &g.segments[6];
        assert_eq!(inv.kind.name(), "LogDerivInverse");
        let lam = 0.5 * (inv.x_lo + inv.x_hi);
        let sm = inv.sample(Dd::new(lam));
        let t_gt_over_g = sm
            .d1
            .div(sm.value)
            .mul(LogSc::from_ln_dd(log_t_of(&p, 2).add_f64(lam)));
        assert!(t_gt_over_g.rel_diff(LogSc::from_f64(p.gamma * bc.beta)) < 1e-12);
    }

    #[test]
    fn g_envelope_within_alpha_gamma() {
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let (_, g) = build_shell_profiles(&p, &bc, 4).unwrap();
        let bound = p.gamma * p.log_alpha * (1.0 + 1e-12);
        for seg in &g.segments {
            let lo = seg.x_lo;
            for k in 0..=64 {
                let x = lo + (seg.x_hi - lo) * k as f64 / 64.0;
                let s = seg.sample(Dd::new(x));
                let rho = match seg.coord {
                    CoordKind::Tau => seg.log_t.add_f64(x.ln()),
                    CoordKind::LogTau => seg.log_t.add_f64(x),
                    _ => unreachable!(),
                };
                // only the official envelope range t >= t_1
                if rho.value() < p.log_t1 {
                    continue;
                }
                let dev = s.value.ln_abs().sub(rho.mul_f64(p.gamma)).value();
                assert!(
                    dev.abs() <= bound,
                    "envelope violated at x={x}: {dev} vs {bound}"
                );
            }
        }
    }

    #[test]
    fn g_log_derivative_integrates_to_gamma_log_alpha() {
        // Simpson quadrature of g_t/g over one period against gamma ln(alpha)
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let (_, g) = build_shell_profiles(&p, &bc, 3).unwrap();
        let simpson = |seg: &Segment, lo: f64, hi: f64| -> f64 {
            let n = 2000usize;
            let h = (hi - lo) / n as f64;
            let f = |x: f64| seg.canonical(x).1;
            let mut acc = f(lo) + f(hi);
            for k in 1..n {
                let w = if k % 2 == 1 { 4.0 } else { 2.0 };
                acc += w * f(lo + h * k as f64);
            }
            acc * h / 3.0
        };
        // period of shell 2: flat, ramp, inverse (+ ramp-down of shell 3)
        let total = simpson(&g.segments[4], g.segments[4].x_lo, g.segments[4].x_hi)
            + simpson(&g.segments[5], g.segments[5].x_lo, g.segments[5].x_hi)
            + simpson(&g.segments[6], g.segments[6].x_lo, g.segments[6].x_hi)
            + simpson(&g.segments[7], g.segments[7].x_lo, g.segments[7].x_hi);
        let expect = p.gamma * p.log_alpha;
        assert!(
            ((total - expect) / expect).abs() < 1e-9,
            "quadrature {total} vs {expect}"
        );
    }

    #[test]
    fn junction_residuals_tiny() {
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let (u, g) = build_shell_profiles(&p, &bc, 3).unwrap();
        assert!(u.worst_junction_residual() < 1e-9, "{}", u.worst_junction_residual());
        assert!(g.worst_junction_residual() < 1e-9, "{}", g.worst_junction_residual());
    }

    #[test]
    fn fd_check_all_profiles() {
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let cc = derive_cap_constants(&p, &bc).unwrap();
        let (u, g) = build_shell_profiles(&p, &bc, 2).unwrap();
        let policy = StepPolicy::default();
        let du = u.fd_check(1200, policy);
        let dg = g.fd_check(1200, policy);
        assert!(du <= 1e-6, "u deviation {du}");
        assert!(dg <= 1e-6, "g deviation {dg}");
        let cs = derive_cap_scales(&p, &bc, &cc, 1).unwrap();
        let (ub, gb) = build_cap_profiles(&p, &cc, &cs).unwrap();
        let dub = ub.fd_check(1200, policy);
        let dgb = gb.fd_check(1200, policy);
        assert!(dub <= 1e-6, "u_bar deviation {dub}");
        assert!(dgb <= 1e-6, "g_bar deviation {dgb}");
    }

    #[test]
    fn fd_check_detects_corruption() {
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let (mut u, _) = build_shell_profiles(&p, &bc, 2).unwrap();
        u.scale_segment_derivatives(0, 1.01, 1.0);
        let dev = u.fd_check(400, StepPolicy::default());
        assert!(dev >= 1e-3, "corruption not detected: {dev}");
    }

    #[test]
    fn cap_profiles_boundary_data() {
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let cc = derive_cap_constants(&p, &bc).unwrap();
        let cs = derive_cap_scales(&p, &bc, &cc, 1).unwrap();
        let (ub, gb) = build_cap_profiles(&p, &cc, &cs).unwrap();
        // sine piece halfway: value = sin(l d/2)/l (= d/2 here)
        let s = gb.sample_seg(0, Dd::new(cs.ln_d - std::f64::consts::LN_2));
        assert!(
            s.value
                .rel_diff(LogSc::from_ln(cs.ln_d - std::f64::consts::LN_2))
                < 1e-12
        );
        // u-bar is monotone on (0, R]
        for seg in 0..2 {
            let sseg = &ub.segments[seg];
            let lo = if sseg.x_lo == f64::NEG_INFINITY {
                sseg.x_hi - 50.0
            } else {
                sseg.x_lo
            };
            for k in 0..=32 {
                let x = lo + (sseg.x_hi - lo) * k as f64 / 32.0;
                assert_eq!(sseg.sample(Dd::new(x)).d1.sign(), 1);
            }
        }
    }

    #[test]
    fn eval_breakpoint_flag_and_domain() {
        let p = sample();
        let bc = derive_base(&p).unwrap();
        let (u, _) = build_shell_profiles(&p, &bc, 2).unwrap();
        let b = u.rho_breaks[1];
        let s = u.eval(b).unwrap();
        assert!(s.at_breakpoint);
        assert_eq!(s.seg, 1);
        assert!(u.eval(u.rho_hi() + 1.0).is_err());
    }
}
