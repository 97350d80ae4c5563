//! Test-only oracles, independent of the implementation paths they check.

/// Adaptive Simpson quadrature.
pub(crate) fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            recurse(f, a, m, left, tol / 2.0, depth - 1)
                + recurse(f, m, b, right, tol / 2.0, depth - 1)
        }
    }
    recurse(f, lo, hi, simpson(f, lo, hi), tol, 40)
}

/// Binomial pmf evaluated in log space; oracle helper for quadrature checks.
pub(crate) fn binomial_pmf(y: u64, n: u64, p: f64) -> f64 {
    let ln_c = crate::specfun::ln_binom(n, y);
    (ln_c + y as f64 * p.ln() + (n - y) as f64 * (-p).ln_1p()).exp()
}
