/// The inverse golden ratio, `(√5 - 1) / 2`.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Outcome of a golden-section search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GoldenResult {
    pub x: f64,
    pub iterations: usize,
    /// Final bracket width.
    pub width: f64,
}

/// Golden-section search for the minimum of a unimodal function on `[lo, hi]`.
///
/// `less(a, b)` must report whether `f(a) < f(b)`. Taking a comparator rather
/// than `f` lets callers compare nearby points through a cancellation-free
/// difference, which resolves the minimizer to full precision instead of
/// `sqrt(eps)`.
///
/// Stops when the bracket is narrower than `rel_tol * max(|x|, 1)`.
pub fn golden_section_by<F>(lo: f64, hi: f64, rel_tol: f64, max_iter: usize, mut less: F) -> GoldenResult
where
    F: FnMut(f64, f64) -> bool,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut iterations = 0;
    while iterations < max_iter {
        let mid = 0.5 * (a + b);
        if b - a <= rel_tol * mid.abs().max(1.0) {
            break;
        }
        if less(c, d) {
            b = d;
            d = c;
            c = b - INV_PHI * (b - a);
        } else {
            a = c;
            c = d;
            d = a + INV_PHI * (b - a);
        }
        iterations += 1;
    }
    GoldenResult {
        x: 0.5 * (a + b),
        iterations,
        width: b - a,
    }
}

/// Golden-section search on plain function values.
pub fn golden_section_min<F>(f: F, lo: f64, hi: f64, rel_tol: f64, max_iter: usize) -> GoldenResult
where
    F: Fn(f64) -> f64,
{
    golden_section_by(lo, hi, rel_tol, max_iter, |a, b| f(a) < f(b))
}

/// Expands `[center - step, center + step]` geometrically until the midpoint
/// is lower than both ends. Returns the bracket, or `None` after
/// `max_expansions` doublings.
pub fn bracket_minimum<F>(center: f64, step: f64, max_expansions: usize, mut less: F) -> Option<(f64, f64)>
where
    F: FnMut(f64, f64) -> bool,
{
    let mut lo = center - step;
    let mut hi = center + step;
    let mut mid = center;
    for _ in 0..=max_expansions {
        let left_higher = less(mid, lo);
        let right_higher = less(mid, hi);
        if left_higher && right_higher {
            return Some((lo, hi));
        }
        let width = hi - lo;
        if !left_higher {
            // Descending to the left.
            mid = lo;
            lo -= width;
        } else {
            mid = hi;
            hi += width;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn finds_parabola_minimum() {
        let r = golden_section_min(|x| (x - 1.3).powi(2) + 2.0, -4.0, 7.0, 1e-10, 500);
        assert_abs_diff_eq!(r.x, 1.3, epsilon = 1e-7);
        assert!(r.width <= 1e-10 * 1.3);
    }

    #[test]
    fn reversed_bounds() {
        let r = golden_section_min(|x| (x + 2.0).powi(2), 3.0, -5.0, 1e-10, 500);
        assert_abs_diff_eq!(r.x, -2.0, epsilon = 1e-7);
    }

    #[test]
    fn iteration_cap_is_respected() {
        let r = golden_section_min(|x| x * x, -1.0, 1.0, 0.0, 10);
        assert_eq!(r.iterations, 10);
    }

    #[test]
    fn bracket_expands_toward_minimum() {
        let f = |x: f64| (x - 40.0).powi(2);
        let (lo, hi) = bracket_minimum(0.0, 1.0, 60, |a, b| f(a) < f(b)).unwrap();
        assert!(lo < 40.0 && 40.0 < hi);
        let f = |x: f64| (x + 40.0).powi(2);
        let (lo, hi) = bracket_minimum(0.0, 1.0, 60, |a, b| f(a) < f(b)).unwrap();
        assert!(lo < -40.0 && -40.0 < hi);
    }

    #[test]
    fn monotone_function_has_no_bracket() {
        assert!(bracket_minimum(0.0, 1.0, 20, |a, b| a < b).is_none());
    }
}
