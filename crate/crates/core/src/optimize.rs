//! One-dimensional search helpers: golden-section maximization on a bracket
//! and bisection for a monotone predicate.

const INV_PHI: f64 = 0.618_033_988_749_894_8; // (√5 - 1) / 2

/// Maximizes `f` on `[lo, hi]` by golden-section search until the bracket is
/// narrower than `tol`. Returns `(x, f(x))` of the best point evaluated.
pub fn golden_section_max<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while (hi - lo).abs() > tol {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
        // Guard against stalls once the bracket reaches float resolution.
        if c >= d {
            break;
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Outcome of [`bisect_threshold`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    pub lo: f64,
    pub hi: f64,
    pub iterations: u32,
}

/// Bisects `[lo, hi]` for the transition of a predicate that is true at `lo`
/// and false at `hi` (the caller guarantees both), stopping once
/// `hi - lo <= tol`. Invariant: `below(lo)` is true and `below(hi)` is false.
pub fn bisect_threshold<E, F: FnMut(f64) -> Result<bool, E>>(
    mut below: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<Bisection, E> {
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(Bisection { lo, hi, iterations })
}
