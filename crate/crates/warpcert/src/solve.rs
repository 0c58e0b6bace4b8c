//! Bracketed root finding.

use crate::error::Error;

/// Bisection on [lo, hi], requiring f(lo) and f(hi) to have opposite signs.
/// Converges to relative tolerance `rel_tol` on the root location.
pub fn bisect<F>(mut lo: f64, mut hi: f64, f: F, rel_tol: f64, max_iter: usize) -> Result<f64, Error>
where
    F: Fn(f64) -> f64,
{
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoRoot {
            lo,
            hi,
            detail: "no sign change over bracket".into(),
        });
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= rel_tol * mid.abs().max(f64::MIN_POSITIVE) {
            return Ok(mid);
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bisection with geometric midpoints, for positive brackets spanning many
/// decades. Converges to relative tolerance `rel_tol`.
pub fn bisect_geom<F>(
    mut lo: f64,
    mut hi: f64,
    f: F,
    rel_tol: f64,
    max_iter: usize,
) -> Result<f64, Error>
where
    F: Fn(f64) -> f64,
{
    debug_assert!(lo > 0.0 && hi > lo);
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoRoot {
            lo,
            hi,
            detail: "no sign change over bracket".into(),
        });
    }
    for _ in 0..max_iter {
        let mid = (0.5 * (lo.ln() + hi.ln())).exp();
        if hi - lo <= rel_tol * mid || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo.ln() + hi.ln())).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt2() {
        let r = bisect(1.0, 2.0, |x| x * x - 2.0, 1e-15, 200).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn geom_handles_wide_brackets() {
        // root at 1e-8 inside [1e-12, 1e300]
        let r = bisect_geom(1e-12, 1e300, |x| x.ln() + 8.0 * 10f64.ln(), 1e-14, 300).unwrap();
        assert!((r - 1e-8).abs() < 1e-20);
    }

    #[test]
    fn rejects_unbracketed() {
        assert!(bisect(0.0, 1.0, |x| x + 1.0, 1e-12, 100).is_err());
    }
}
