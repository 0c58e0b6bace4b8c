//! Analytic segment kinds and their closed-form value/d1/d2.
//!
//! Every segment lives in a local coordinate chosen so its numbers stay
//! O(1)-representable: tau = t/t_i for spherical arcs and the ramp rows,
//! lambda = ln(t/t_i) for the wide shell pieces, ln(t) for cap pieces.
//! `sample` returns absolute-unit quantities as signed log-scalars (value,
//! d/dt, d^2/dt^2); `canonical` returns the plain-f64 scalar function the
//! finite-difference oracle differentiates.

use crate::dd::Dd;
use crate::logsc::{ln_sinc, softplus, LogSc};
use serde::Serialize;

/// Local coordinate convention of a segment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum CoordKind {
    /// x = t/t_i (shell index attached to the segment).
    Tau,
    /// x = ln(t/t_i).
    LogTau,
    /// x = ln(t/t_i) - ln(tau*), centered on the smoothing window.
    BridgeX,
    /// x = ln(t-bar), absolute log of the cap radial coordinate.
    LogTBar,
}

/// Absolute-unit sample of one segment.
#[derive(Clone, Copy, Debug)]
pub struct SegSample {
    pub value: LogSc,
    pub d1: LogSc,
    pub d2: LogSc,
    /// Exact 1 - d1^2 where the segment has a stable closed form.
    pub one_minus_d1_sq: Option<LogSc>,
}

/// sin(sqrt(K)(tau - tau0))/sqrt(K), scaled by t_i.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SineArc {
    pub sqrt_k: f64,
    pub tau0: f64,
}

/// a + tau*(b + q ln(tau/tau_ref)) in lambda = ln tau, scaled by t_i.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MinLogLinear {
    pub a: f64,
    pub b: f64,
    pub q: f64,
    pub lambda_ref: f64,
}

/// Quintic Hermite bridge for v = w/tau* on x in [-h, h], scaled by t_i tau*.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SmoothingBridge {
    pub log_tau_star: f64,
    pub h: f64,
    /// value, d/dx, d2/dx2 of v at x = -h and x = +h.
    pub left: [f64; 3],
    pub right: [f64; 3],
}

/// ln g constant.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LogDerivConstant {
    pub ln_g: Dd,
}

/// t g_t/g ramping linearly up from 0: ln g = anchor + ks (tau - tau_a)^2 / 2.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LogDerivRamp {
    pub ln_g_a: Dd,
    pub ks: f64,
    pub tau_a: f64,
}

/// g_t/g = gb/t: ln g = anchor + gb (lambda - lambda_lo).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LogDerivInverse {
    pub ln_g_lo: Dd,
    pub gb: f64,
    pub lambda_lo: f64,
}

/// t g_t/g ramping down to 0 at tau = 1 + r/6 (own-shell units).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LogDerivRampDown {
    pub ln_g_lo: Dd,
    /// 6 gamma beta / r
    pub kd: f64,
    /// r/6
    pub u_max: f64,
}

/// ln u-bar = -ln l + (l/(2Nb)) (t-bar^2 - b^2) on [0, b].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExpQuadratic {
    pub ln_l: Dd,
    pub ln_b: Dd,
    pub big_n: f64,
}

/// u-bar = C2 (t_i/(C1 C2))^{-C3/(1-C3)} S^{1/(1-C3)} on [b, R], written in
/// per-t_i offsets so the ln t_i coefficient is exactly one.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PowerShifted {
    pub log_t: Dd,
    pub ln_b: Dd,
    pub c3: f64,
    /// ln C2 + (C3/(1-C3)) ln(C1 C2)
    pub ln_coef: f64,
    /// ln(N/(l t)) (the S/t_i offset at t-bar = b)
    pub ln_n_over_lt: Dd,
}

/// g-bar = A t-bar^gamma + B on [d, R].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PowerPlusConst {
    pub ln_a: f64,
    pub b_coef: f64,
    pub gamma: f64,
    pub ln_d: f64,
    /// ln sin(l d) (for the stable 1 - d1^2 form).
    pub ln_sin_ld: f64,
}

/// g-bar = sin(l t-bar)/l on [0, d].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CapSine {
    pub ln_l: Dd,
}

#[derive(Clone, Debug, Serialize)]
pub enum SegKind {
    SineArc(SineArc),
    MinLogLinear(MinLogLinear),
    SmoothingBridge(SmoothingBridge),
    LogDerivConstant(LogDerivConstant),
    LogDerivRamp(LogDerivRamp),
    LogDerivInverse(LogDerivInverse),
    LogDerivRampDown(LogDerivRampDown),
    ExpQuadratic(ExpQuadratic),
    PowerShifted(PowerShifted),
    PowerPlusConst(PowerPlusConst),
    CapSine(CapSine),
}

impl SegKind {
    pub fn name(&self) -> &'static str {
        match self {
            SegKind::SineArc(_) => "SineArc",
            SegKind::MinLogLinear(_) => "MinLogLinear",
            SegKind::SmoothingBridge(_) => "SmoothingBridge",
            SegKind::LogDerivConstant(_) => "LogDerivConstant",
            SegKind::LogDerivRamp(_) => "LogDerivRamp",
            SegKind::LogDerivInverse(_) => "LogDerivInverse",
            SegKind::LogDerivRampDown(_) => "LogDerivRampDown",
            SegKind::ExpQuadratic(_) => "ExpQuadratic",
            SegKind::PowerShifted(_) => "PowerShifted",
            SegKind::PowerPlusConst(_) => "PowerPlusConst",
            SegKind::CapSine(_) => "CapSine",
        }
    }
}

/// One piece of a profile: a kind plus its local interval and scale anchor.
#[derive(Clone, Debug, Serialize)]
pub struct Segment {
    pub coord: CoordKind,
    /// Shell or cap index the local coordinate refers to.
    pub index: u32,
    pub x_lo: f64,
    pub x_hi: f64,
    /// ln t_i anchor (ZERO for unscaled standalone profiles).
    pub log_t: Dd,
    pub kind: SegKind,
    pub d1_fudge: f64,
    pub d2_fudge: f64,
}

/// Quintic Hermite basis on s in [0,1]: value/d1/d2 at both ends.
fn quintic_basis(s: f64) -> [f64; 6] {
    let s2 = s * s;
    let s3 = s2 * s;
    let s4 = s3 * s;
    let s5 = s4 * s;
    [
        1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5,
        s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5,
        0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5,
        10.0 * s3 - 15.0 * s4 + 6.0 * s5,
        -4.0 * s3 + 7.0 * s4 - 3.0 * s5,
        0.5 * s3 - s4 + 0.5 * s5,
    ]
}

fn quintic_basis_d1(s: f64) -> [f64; 6] {
    let s2 = s * s;
    let s3 = s2 * s;
    let s4 = s3 * s;
    [
        -30.0 * s2 + 60.0 * s3 - 30.0 * s4,
        1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4,
        s - 4.5 * s2 + 6.0 * s3 - 2.5 * s4,
        30.0 * s2 - 60.0 * s3 + 30.0 * s4,
        -12.0 * s2 + 28.0 * s3 - 15.0 * s4,
        1.5 * s2 - 4.0 * s3 + 2.5 * s4,
    ]
}

fn quintic_basis_d2(s: f64) -> [f64; 6] {
    let s2 = s * s;
    let s3 = s2 * s;
    [
        -60.0 * s + 180.0 * s2 - 120.0 * s3,
        -36.0 * s + 96.0 * s2 - 60.0 * s3,
        1.0 - 9.0 * s + 18.0 * s2 - 10.0 * s3,
        60.0 * s - 180.0 * s2 + 120.0 * s3,
        -24.0 * s + 84.0 * s2 - 60.0 * s3,
        3.0 * s - 12.0 * s2 + 10.0 * s3,
    ]
}

impl SmoothingBridge {
    /// v(x), v'(x), v''(x) of the quintic in x in [-h, h].
    pub fn v(&self, x: f64) -> (f64, f64, f64) {
        let dl = 2.0 * self.h;
        let s = (x + self.h) / dl;
        let b0 = quintic_basis(s);
        let b1 = quintic_basis_d1(s);
        let b2 = quintic_basis_d2(s);
        let w = [
            self.left[0],
            self.left[1] * dl,
            self.left[2] * dl * dl,
            self.right[0],
            self.right[1] * dl,
            self.right[2] * dl * dl,
        ];
        let dot = |b: &[f64; 6]| (0..6).map(|k| w[k] * b[k]).sum::<f64>();
        (dot(&b0), dot(&b1) / dl, dot(&b2) / (dl * dl))
    }
}

impl Segment {
    /// Absolute-unit closed forms at local coordinate x (compensated).
    pub fn sample(&self, x: Dd) -> SegSample {
        let xf = x.value();
        let mut s = match &self.kind {
            SegKind::SineArc(k) => {
                let arg = k.sqrt_k * (xf - k.tau0);
                let sn = arg.sin();
                let v = sn / k.sqrt_k; // scaled value u/t_i
                SegSample {
                    value: LogSc::from_f64(v).mul(LogSc::from_ln_dd(self.log_t)),
                    d1: LogSc::from_f64(arg.cos()),
                    d2: LogSc::from_f64(-k.sqrt_k * sn).div(LogSc::from_ln_dd(self.log_t)),
                    one_minus_d1_sq: Some(LogSc::from_f64(sn).square()),
                }
            }
            SegKind::MinLogLinear(k) => {
                // w = a + e^lambda (b + q(lambda - lambda_ref))
                let lin = k.b + k.q * (xf - k.lambda_ref);
                let w = LogSc::from_f64(k.a)
                    .add(LogSc::from_f64(lin).mul(LogSc::from_ln_dd(x)));
                let wt = lin + k.q;
                SegSample {
                    value: w.mul(LogSc::from_ln_dd(self.log_t)),
                    d1: LogSc::from_f64(wt),
                    d2: LogSc::from_f64(k.q)
                        .div(LogSc::from_ln_dd(x.add(self.log_t))),
                    one_minus_d1_sq: None,
                }
            }
            SegKind::SmoothingBridge(k) => {
                let (v, v1, v2) = k.v(xf);
                // w = tau* v;  w_t = v' e^{-x};  w_tt = (v'' - v') e^{-2x}/tau*
                let scale = self.log_t.add_f64(k.log_tau_star);
                SegSample {
                    value: LogSc::from_f64(v).mul(LogSc::from_ln_dd(scale)),
                    d1: LogSc::from_f64(v1 * (-xf).exp()),
                    d2: LogSc::from_f64((v2 - v1) * (-2.0 * xf).exp())
                        .div(LogSc::from_ln_dd(scale)),
                    one_minus_d1_sq: None,
                }
            }
            SegKind::LogDerivConstant(k) => SegSample {
                value: LogSc::from_ln_dd(k.ln_g),
                d1: LogSc::ZERO,
                d2: LogSc::ZERO,
                one_minus_d1_sq: None,
            },
            SegKind::LogDerivRamp(k) => {
                let u = xf - k.tau_a;
                let g = LogSc::from_ln_dd(k.ln_g_a.add_f64(0.5 * k.ks * u * u));
                let slope = k.ks * u; // t g_t/g
                let curv = k.ks * (1.0 + k.ks * u * u); // t^2 g_tt/g
                SegSample {
                    value: g,
                    d1: g.mul(LogSc::from_f64(slope)).div(LogSc::from_ln_dd(self.log_t)),
                    d2: g.mul(LogSc::from_f64(curv))
                        .div(LogSc::from_ln_dd(self.log_t.mul_f64(2.0))),
                    one_minus_d1_sq: None,
                }
            }
            SegKind::LogDerivInverse(k) => {
                let g = LogSc::from_ln_dd(k.ln_g_lo.add_f64(k.gb * (xf - k.lambda_lo)));
                let rho = x.add(self.log_t); // ln t
                SegSample {
                    value: g,
                    d1: g.mul(LogSc::from_f64(k.gb)).div(LogSc::from_ln_dd(rho)),
                    d2: g
                        .mul(LogSc::from_f64(k.gb * (k.gb - 1.0)))
                        .div(LogSc::from_ln_dd(rho.mul_f64(2.0))),
                    one_minus_d1_sq: None,
                }
            }
            SegKind::LogDerivRampDown(k) => {
                let u = 1.0 + k.u_max - xf;
                let g = LogSc::from_ln_dd(
                    k.ln_g_lo
                        .add_f64(0.5 * k.kd * (k.u_max * k.u_max - u * u)),
                );
                let slope = k.kd * u; // t g_t/g
                let curv = -k.kd + slope * slope; // t^2 g_tt/g
                SegSample {
                    value: g,
                    d1: g.mul(LogSc::from_f64(slope)).div(LogSc::from_ln_dd(self.log_t)),
                    d2: g.mul(LogSc::from_f64(curv))
                        .div(LogSc::from_ln_dd(self.log_t.mul_f64(2.0))),
                    one_minus_d1_sq: None,
                }
            }
            SegKind::ExpQuadratic(k) => {
                // x = ln t-bar; q(t) = (l/(2Nb)) t^2, ln u = -ln l + q - q(b)
                let ln_2nb = (2.0 * k.big_n).ln();
                let q_t = k
                    .ln_l
                    .sub(k.ln_b)
                    .add_f64(-ln_2nb)
                    .add(x.mul_f64(2.0))
                    .value()
                    .exp();
                let q_b = k.ln_l.add(k.ln_b).add_f64(-ln_2nb).value().exp();
                let u = LogSc::from_ln_dd(k.ln_l.neg().add_f64(q_t - q_b));
                // u_t/u = l t/(N b); u_tt/u = l/(Nb) + (l t/(Nb))^2
                let s1 = k.ln_l.add(x).sub(k.ln_b).add_f64(-k.big_n.ln());
                let s0 = k.ln_l.sub(k.ln_b).add_f64(-k.big_n.ln());
                let ratio1 = LogSc::from_ln_dd(s1);
                let ratio2 = LogSc::from_ln_dd(s0).add(ratio1.square());
                SegSample {
                    value: u,
                    d1: u.mul(ratio1),
                    d2: u.mul(ratio2),
                    one_minus_d1_sq: None,
                }
            }
            SegKind::PowerShifted(k) => {
                // S/t_i = (1-C3)(t-b)/t_i + N/(l t_i)
                let delta = x.sub(k.ln_b).value();
                let ln_t_minus_b = if delta > 30.0 {
                    x.add_f64((-(-delta).exp()).ln_1p())
                } else if delta > 0.0 {
                    k.ln_b.add_f64(delta.exp_m1().ln())
                } else {
                    Dd::NEG_INFINITY
                };
                let a1 = if ln_t_minus_b.hi == f64::NEG_INFINITY {
                    LogSc::ZERO
                } else {
                    LogSc::from_ln_dd(
                        ln_t_minus_b.sub(k.log_t).add_f64((1.0 - k.c3).ln()),
                    )
                };
                let s_over_t = a1.add(LogSc::from_ln_dd(k.ln_n_over_lt));
                let em = 1.0 / (1.0 - k.c3);
                let ln_u = k
                    .log_t
                    .add_f64(k.ln_coef)
                    .add(s_over_t.ln_abs().mul_f64(em));
                let u = LogSc::from_ln_dd(ln_u);
                let s_abs = s_over_t.mul(LogSc::from_ln_dd(k.log_t));
                let d1 = u.div(s_abs);
                let d2 = d1.mul(d1).div(u).mul(LogSc::from_f64(k.c3));
                SegSample {
                    value: u,
                    d1,
                    d2,
                    one_minus_d1_sq: None,
                }
            }
            SegKind::PowerPlusConst(k) => {
                // g = A t^gamma + B, B < 0; 1 + B e^{-gamma x}/A via expm1
                let gx = Dd::from_prod(k.gamma, x.hi).add(Dd::from_prod(k.gamma, x.lo));
                let w = (-k.b_coef).ln() - gx.value() - k.ln_a;
                let one_plus_z = -f64::exp_m1(w);
                let ln_g = gx.add_f64(k.ln_a).add_f64(one_plus_z.ln());
                let g = LogSc::from_ln_dd(ln_g);
                let d1 = LogSc::from_ln_dd(
                    Dd::from_prod(k.gamma - 1.0, x.hi)
                        .add(Dd::from_prod(k.gamma - 1.0, x.lo))
                        .add_f64(k.ln_a + k.gamma.ln()),
                );
                let d2 = d1
                    .mul(LogSc::from_f64(k.gamma - 1.0))
                    .div(LogSc::from_ln_dd(x));
                // 1 - d1^2 = [1 - (t/d)^{2(gamma-1)}] + sin^2(l d) (t/d)^{2(gamma-1)}
                let two_gm1_dx = 2.0 * (k.gamma - 1.0) * (x.value() - k.ln_d);
                let term1 = LogSc::from_f64(-f64::exp_m1(two_gm1_dx));
                let term2 = LogSc::from_ln(2.0 * k.ln_sin_ld + two_gm1_dx);
                SegSample {
                    value: g,
                    d1,
                    d2,
                    one_minus_d1_sq: Some(term1.add(term2)),
                }
            }
            SegKind::CapSine(k) => {
                let ln_arg = k.ln_l.add(x);
                let (ln_value, cosv, ln_sin) = if ln_arg.hi < -20.0 {
                    (x, 1.0, ln_arg)
                } else {
                    let a = ln_arg.value().exp();
                    (
                        x.add_f64(ln_sinc(a)),
                        a.cos(),
                        ln_arg.add_f64(ln_sinc(a)),
                    )
                };
                let value = LogSc::from_ln_dd(ln_value);
                SegSample {
                    value,
                    d1: LogSc::from_f64(cosv),
                    d2: value.mul(LogSc::from_ln_dd(k.ln_l.mul_f64(2.0))).neg(),
                    one_minus_d1_sq: Some(LogSc::from_ln_dd(ln_sin.mul_f64(2.0))),
                }
            }
        };
        if self.d1_fudge != 1.0 {
            s.d1 = s.d1.mul(LogSc::from_f64(self.d1_fudge));
            s.one_minus_d1_sq = None;
        }
        if self.d2_fudge != 1.0 {
            s.d2 = s.d2.mul(LogSc::from_f64(self.d2_fudge));
        }
        s
    }

    /// The segment's canonical scalar function and its first two local
    /// derivatives, for the finite-difference oracle. O(1)-ranged by
    /// construction: scaled values for arcs and the bridge, log-values for
    /// everything that spans decades.
    pub fn canonical(&self, x: f64) -> (f64, f64, f64) {
        let (f, f1, f2) = match &self.kind {
            SegKind::SineArc(k) => {
                let arg = k.sqrt_k * (x - k.tau0);
                let v = arg.sin() / k.sqrt_k;
                (v, arg.cos(), -k.sqrt_k * arg.sin())
            }
            SegKind::MinLogLinear(k) => {
                // ln(w/tau) as a function of lambda, so the value stays O(1)
                // over the full shell (lambda reaches ln alpha); the exact
                // linear part is restored in the derivative convention
                let lin = k.b + k.q * (x - k.lambda_ref);
                let corr = k.a * (-x).exp() / lin; // a/(tau lin)
                let wt = lin + k.q;
                let denom = lin * (1.0 + corr);
                let f1 = wt / denom;
                let f2 = (wt + k.q) / denom - f1 * f1;
                (lin.ln() + corr.ln_1p(), f1 - 1.0, f2)
            }
            SegKind::SmoothingBridge(k) => {
                let (v, v1, v2) = k.v(x);
                (v, v1, v2)
            }
            SegKind::LogDerivConstant(_) => (0.0, 0.0, 0.0),
            SegKind::LogDerivRamp(k) => {
                let u = x - k.tau_a;
                (0.5 * k.ks * u * u, k.ks * u, k.ks)
            }
            SegKind::LogDerivInverse(k) => (k.gb * (x - k.lambda_lo), k.gb, 0.0),
            SegKind::LogDerivRampDown(k) => {
                let u = 1.0 + k.u_max - x;
                (
                    0.5 * k.kd * (k.u_max * k.u_max - u * u),
                    k.kd * u,
                    -k.kd,
                )
            }
            // Cap kinds take the breakpoint-relative offset xi (see
            // `canon_bounds`): their absolute log-coordinates are ~1e10 and
            // would quantize the differencing steps away.
            SegKind::ExpQuadratic(k) => {
                // varying part of ln u-bar: q = (l b/(2N)) e^{2 xi}, xi = x - ln b
                let w = 2.0 * x + k.ln_l.add(k.ln_b).value() - (2.0 * k.big_n).ln();
                let q = w.exp();
                (q, 2.0 * q, 4.0 * q)
            }
            SegKind::PowerShifted(k) => {
                // ln(S l/N)/(1 - C3) with xi = x - ln b
                let delta = x;
                let le = if delta > 30.0 {
                    delta
                } else if delta > 0.0 {
                    delta.exp_m1().ln()
                } else {
                    f64::NEG_INFINITY
                };
                let c3c = (1.0 - k.c3).ln() + k.ln_b.sub(k.log_t).value()
                    - k.ln_n_over_lt.value();
                let t = c3c + le;
                let em = 1.0 / (1.0 - k.c3);
                let sig = 1.0 / (1.0 + (-t).exp());
                let dle = if delta > 30.0 {
                    1.0
                } else {
                    1.0 / -(-delta).exp_m1()
                };
                let f1 = em * sig * dle; // = t-bar/S
                let f2 = f1 * (1.0 - (1.0 - k.c3) * f1);
                (em * softplus(t), f1, f2)
            }
            SegKind::PowerPlusConst(k) => {
                // ln(g-bar/(A t^gamma)) with xi = x - ln d; z = B e^{-gamma x}/A.
                // 1 + z is within eps of 0 near the corner: go through expm1.
                let ln_z_d = (-k.b_coef).ln() - k.ln_a - k.gamma * k.ln_d;
                let w = ln_z_d - k.gamma * x; // ln|z|
                let one_plus_z = -f64::exp_m1(w);
                let ratio = 1.0 / one_plus_z; // A t^gamma / g
                let f1 = k.gamma * (ratio - 1.0);
                let f2 = k.gamma * k.gamma * (one_plus_z - 1.0) * ratio * ratio;
                (k.ln_a + one_plus_z.ln(), f1, f2)
            }
            SegKind::CapSine(k) => {
                // ln(g-bar e^{-x}) = ln sinc(l d e^{xi}), xi = x - ln d
                let ln_arg = k.ln_l.add_f64(self.x_hi).value() + x;
                if ln_arg < -9.0 {
                    let a2 = (2.0 * ln_arg).exp();
                    (-a2 / 6.0, -a2 / 3.0, -2.0 * a2 / 3.0)
                } else {
                    let a = ln_arg.exp();
                    let f1 = a * a.cos() / a.sin();
                    let f2 = f1 - (a / a.sin()).powi(2);
                    (ln_sinc(a), f1 - 1.0, f2)
                }
            }
        };
        (f, f1 * self.d1_fudge, f2 * self.d2_fudge)
    }

    /// Midpoint of the local interval, clamped for half-infinite pieces.
    pub fn x_mid(&self) -> f64 {
        let lo = if self.x_lo == f64::NEG_INFINITY {
            self.x_hi - 60.0
        } else {
            self.x_lo
        };
        0.5 * (lo + self.x_hi)
    }

    /// Domain of the canonical function (breakpoint-relative for cap kinds).
    pub fn canon_bounds(&self) -> (f64, f64) {
        match &self.kind {
            SegKind::ExpQuadratic(k) => (self.x_lo - k.ln_b.value(), self.x_hi - k.ln_b.value()),
            SegKind::PowerShifted(k) => (self.x_lo - k.ln_b.value(), self.x_hi - k.ln_b.value()),
            SegKind::PowerPlusConst(k) => (self.x_lo - k.ln_d, self.x_hi - k.ln_d),
            SegKind::CapSine(_) => (
                if self.x_lo == f64::NEG_INFINITY {
                    f64::NEG_INFINITY
                } else {
                    self.x_lo - self.x_hi
                },
                0.0,
            ),
            _ => (self.x_lo, self.x_hi),
        }
    }
}
