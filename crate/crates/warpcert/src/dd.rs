//! Compensated (double-double) floating point for log-magnitudes.
//!
//! Scale exponents in this crate reach 1e10 and beyond; a plain f64 log
//! carries only ~1e-6 absolute resolution there, which is far too coarse
//! for the 1e-12 relative identity checks. A hi/lo pair keeps ~1e-22
//! absolute resolution at that magnitude, which is plenty.

use serde::Serialize;

/// A number represented as an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    if !s.is_finite() {
        return (s, 0.0);
    }
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    if !s.is_finite() {
        return (s, 0.0);
    }
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    if !p.is_finite() {
        return (p, 0.0);
    }
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const NEG_INFINITY: Dd = Dd {
        hi: f64::NEG_INFINITY,
        lo: 0.0,
    };

    #[inline]
    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact sum of two f64, renormalized.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    /// Exact product of two f64.
    #[inline]
    pub fn from_prod(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(s, e + self.lo + o.lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, x: f64) -> Dd {
        let (s, e) = two_sum(self.hi, x);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn mul_f64(self, k: f64) -> Dd {
        let (p, e) = two_prod(self.hi, k);
        let (hi, lo) = quick_two_sum(p, e + self.lo * k);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, k: f64) -> Dd {
        let q1 = self.hi / k;
        let r = self.add(Dd::from_prod(q1, k).neg());
        let (hi, lo) = quick_two_sum(q1, r.value() / k);
        Dd { hi, lo }
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, o: &Dd) -> Option<std::cmp::Ordering> {
        match self.hi.partial_cmp(&o.hi) {
            Some(std::cmp::Ordering::Equal) => self.lo.partial_cmp(&o.lo),
            ord => ord,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_sum_recovers_small_term() {
        let big = 4.0e10;
        let small = 1.0e-13;
        let d = Dd::from_sum(big, small);
        // hi+lo must hold the small term exactly even though big+small rounds it away
        assert_eq!(d.hi, big + small); // rounded
        let back = d.sub(Dd::new(big));
        assert_eq!(back.value(), small);
    }

    #[test]
    fn mul_keeps_residual() {
        // i * log_alpha for large i must round-trip
        let la = 512345.678912345_f64;
        let i = 1.0e6_f64;
        let prod = Dd::new(la).mul_f64(i);
        // compare with exact fma residual
        let p = la * i;
        let e = la.mul_add(i, -p);
        assert_eq!(prod.hi, p);
        assert!((prod.lo - e).abs() <= f64::EPSILON * p.abs());
    }

    #[test]
    fn add_chain_associativity_error_tiny() {
        let a = Dd::new(3.8e10);
        let b = a.add_f64(1.25).add_f64(-3.8e10);
        assert!((b.value() - 1.25).abs() < 1e-20);
    }

    #[test]
    fn ordering() {
        let a = Dd::from_sum(1.0, 1e-20);
        let b = Dd::new(1.0);
        assert!(a > b);
        assert!(Dd::new(-1.0) < Dd::ZERO);
    }

    #[test]
    fn infinities_stay_clean() {
        let a = Dd::new(f64::NEG_INFINITY);
        let b = a.add_f64(5.0);
        assert_eq!(b.hi, f64::NEG_INFINITY);
        assert_eq!(b.lo, 0.0);
    }
}
