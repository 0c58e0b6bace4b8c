//! Signed log-domain scalars.
//!
//! Scale-bearing quantities here (t_i, l_i, b_i, R_i, curvature components)
//! routinely sit at e^(1e5) .. e^(1e10) and are unrepresentable as f64.
//! A `LogSc` stores sign and log-magnitude (compensated, see [`crate::dd`]);
//! products and quotients are exact log-space sums, additions go through
//! log-sum-exp.

use crate::dd::Dd;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, Debug)]
pub struct LogSc {
    sign: i8,
    ln: Dd,
}

/// ln(1 + e^x), stable over the whole line.
#[inline]
pub fn softplus(x: f64) -> f64 {
    if x > 36.0 {
        x + (-x).exp()
    } else if x < -37.0 {
        x.exp()
    } else {
        x.exp().ln_1p()
    }
}

/// sin(x)/x with the removable singularity filled in.
#[inline]
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

/// ln(sin(x)/x) for x in [0, pi).
#[inline]
pub fn ln_sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        -x2 / 6.0 * (1.0 + x2 * 7.0 / 60.0)
    } else {
        (x.sin() / x).ln()
    }
}

impl LogSc {
    pub const ZERO: LogSc = LogSc {
        sign: 0,
        ln: Dd::NEG_INFINITY,
    };
    pub const ONE: LogSc = LogSc {
        sign: 1,
        ln: Dd::ZERO,
    };

    #[inline]
    pub fn from_f64(x: f64) -> LogSc {
        if x == 0.0 {
            LogSc::ZERO
        } else {
            LogSc {
                sign: if x > 0.0 { 1 } else { -1 },
                ln: Dd::new(x.abs().ln()),
            }
        }
    }

    /// Positive value given as its natural log.
    #[inline]
    pub fn from_ln(ln: f64) -> LogSc {
        if ln == f64::NEG_INFINITY {
            return LogSc::ZERO;
        }
        LogSc {
            sign: 1,
            ln: Dd::new(ln),
        }
    }

    #[inline]
    pub fn from_ln_dd(ln: Dd) -> LogSc {
        if ln.hi == f64::NEG_INFINITY {
            return LogSc::ZERO;
        }
        LogSc { sign: 1, ln }
    }

    #[inline]
    pub fn with_sign(self, sign: i8) -> LogSc {
        if sign == 0 || self.sign == 0 {
            LogSc::ZERO
        } else {
            LogSc {
                sign: self.sign * sign,
                ln: self.ln,
            }
        }
    }

    #[inline]
    pub fn sign(self) -> i8 {
        self.sign
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// Natural log of the magnitude (NEG_INFINITY for zero).
    #[inline]
    pub fn ln_abs(self) -> Dd {
        self.ln
    }

    /// Saturating conversion: overflow becomes +-inf, underflow +-0.
    pub fn to_f64(self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let m = if self.ln.hi > 709.0 {
            f64::INFINITY
        } else {
            self.ln.hi.exp() * self.ln.lo.exp()
        };
        m * self.sign as f64
    }

    #[inline]
    pub fn neg(self) -> LogSc {
        LogSc {
            sign: -self.sign,
            ln: self.ln,
        }
    }

    #[inline]
    pub fn abs(self) -> LogSc {
        LogSc {
            sign: self.sign.abs(),
            ln: self.ln,
        }
    }

    #[inline]
    pub fn mul(self, o: LogSc) -> LogSc {
        if self.sign == 0 || o.sign == 0 {
            return LogSc::ZERO;
        }
        LogSc {
            sign: self.sign * o.sign,
            ln: self.ln.add(o.ln),
        }
    }

    #[inline]
    pub fn div(self, o: LogSc) -> LogSc {
        debug_assert!(o.sign != 0, "log-domain division by zero");
        if self.sign == 0 {
            return LogSc::ZERO;
        }
        LogSc {
            sign: self.sign * o.sign,
            ln: self.ln.sub(o.ln),
        }
    }

    #[inline]
    pub fn recip(self) -> LogSc {
        debug_assert!(self.sign != 0);
        LogSc {
            sign: self.sign,
            ln: self.ln.neg(),
        }
    }

    /// Magnitude raised to a real power; sign must be nonnegative for
    /// non-integer k, the caller is responsible.
    #[inline]
    pub fn powf(self, k: f64) -> LogSc {
        if self.sign == 0 {
            return if k == 0.0 { LogSc::ONE } else { LogSc::ZERO };
        }
        LogSc {
            sign: self.sign,
            ln: self.ln.mul_f64(k),
        }
    }

    #[inline]
    pub fn square(self) -> LogSc {
        LogSc {
            sign: self.sign.abs(),
            ln: self.ln.mul_f64(2.0),
        }
    }

    pub fn add(self, o: LogSc) -> LogSc {
        if self.sign == 0 {
            return o;
        }
        if o.sign == 0 {
            return self;
        }
        let (big, small) = if self.ln >= o.ln { (self, o) } else { (o, self) };
        let d = small.ln.sub(big.ln).value(); // <= 0
        if self.sign == o.sign {
            LogSc {
                sign: big.sign,
                ln: big.ln.add_f64(softplus(d)),
            }
        } else if d == 0.0 {
            LogSc::ZERO
        } else {
            // ln(1 - e^d), d < 0
            let inc = (-f64::exp_m1(d)).ln();
            LogSc {
                sign: big.sign,
                ln: big.ln.add_f64(inc),
            }
        }
    }

    #[inline]
    pub fn sub(self, o: LogSc) -> LogSc {
        self.add(o.neg())
    }

    pub fn cmp_val(self, o: LogSc) -> Ordering {
        match self.sign.cmp(&o.sign) {
            Ordering::Equal => {}
            ord => return ord,
        }
        if self.sign == 0 {
            return Ordering::Equal;
        }
        let mag = self.ln.partial_cmp(&o.ln).unwrap_or(Ordering::Equal);
        if self.sign > 0 {
            mag
        } else {
            mag.reverse()
        }
    }

    #[inline]
    pub fn min_val(self, o: LogSc) -> LogSc {
        if self.cmp_val(o) == Ordering::Greater {
            o
        } else {
            self
        }
    }

    #[inline]
    pub fn max_val(self, o: LogSc) -> LogSc {
        if self.cmp_val(o) == Ordering::Less {
            o
        } else {
            self
        }
    }

    /// |self/o - 1|, meaningful when both are nonzero with equal signs.
    /// Returns +inf on sign mismatch, 0 when both are zero.
    pub fn rel_diff(self, o: LogSc) -> f64 {
        if self.sign == 0 && o.sign == 0 {
            return 0.0;
        }
        if self.sign != o.sign {
            return f64::INFINITY;
        }
        let d = self.ln.sub(o.ln).value();
        f64::exp_m1(d.abs())
    }
}

impl fmt::Display for LogSc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            1 => write!(f, "exp({})", self.ln.value()),
            _ => write!(f, "-exp({})", self.ln.value()),
        }
    }
}

impl serde::Serialize for LogSc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn add_huge_scales() {
        let a = LogSc::from_ln(1.0e6);
        let b = LogSc::from_ln(1.0e6);
        let s = a.add(b);
        assert!((s.ln_abs().value() - (1.0e6 + 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn sub_to_zero_is_exact() {
        let a = LogSc::from_ln(5.0e9);
        assert!(a.sub(a).is_zero());
    }

    #[test]
    fn signed_cancellation() {
        // e^x - e^x(1 - 1e-10) = e^x * 1e-10
        let a = LogSc::from_ln(100.0);
        let b = a.mul(LogSc::from_f64(1.0 - 1e-10)).neg();
        let d = a.add(b);
        assert_eq!(d.sign(), 1);
        let expect = 100.0 + (1e-10f64).ln();
        assert!((d.ln_abs().value() - expect).abs() < 1e-5 * 1.0);
    }

    #[test]
    fn saturating_to_f64() {
        assert_eq!(LogSc::from_ln(1e7).to_f64(), f64::INFINITY);
        assert_eq!(LogSc::from_ln(-1e7).to_f64(), 0.0);
        assert_eq!(LogSc::from_ln(-1e7).neg().to_f64(), -0.0);
        assert!((LogSc::from_f64(2.5).to_f64() - 2.5).abs() < 1e-15);
    }

    #[test]
    fn display_forms() {
        assert_eq!(LogSc::ZERO.to_string(), "0");
        assert_eq!(LogSc::from_ln(3.0).to_string(), "exp(3)");
        assert_eq!(LogSc::from_ln(3.0).neg().to_string(), "-exp(3)");
    }

    proptest! {
        #[test]
        fn matches_f64_in_range(a in -1e3f64..1e3, b in -1e3f64..1e3) {
            let la = LogSc::from_f64(a);
            let lb = LogSc::from_f64(b);
            let sum = la.add(lb).to_f64();
            prop_assert!((sum - (a + b)).abs() <= 1e-12 * (a.abs() + b.abs()).max(1e-300));
            let prod = la.mul(lb).to_f64();
            prop_assert!((prod - a * b).abs() <= 1e-12 * (a * b).abs().max(1e-300));
        }

        #[test]
        fn cmp_matches_f64(a in -1e6f64..1e6, b in -1e6f64..1e6) {
            let la = LogSc::from_f64(a);
            let lb = LogSc::from_f64(b);
            prop_assert_eq!(la.cmp_val(lb), a.partial_cmp(&b).unwrap());
        }

        #[test]
        fn mul_div_roundtrip(x in 1e-6f64..1e6, y in 1e-6f64..1e6) {
            let lx = LogSc::from_f64(x);
            let ly = LogSc::from_f64(y);
            let back = lx.mul(ly).div(ly);
            prop_assert!(back.rel_diff(lx) < 1e-14);
        }
    }
}
