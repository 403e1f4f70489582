//! Adaptive quadrature used by the mesh generator.
//!
//! The cumulative integral that drives equidistribution must be computed
//! more accurately than the node-inversion tolerance, so the default
//! relative tolerance here is 1e-11.

use crate::error::{Error, Result};

/// Default relative tolerance for the equidistribution integrals.
pub const DEFAULT_REL_TOL: f64 = 1e-11;

const MAX_DEPTH: usize = 60;

/// Adaptive Simpson integration of `f` over `[a, b]`.
///
/// Accepts a relative tolerance; the absolute budget is derived from a
/// first coarse estimate of the integral. Returns a numerical error
/// carrying the achieved estimate if the recursion depth is exhausted.
pub fn integrate<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "non-finite integration bounds [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fm = f(0.5 * (a + b));
    let fb = f(b);
    let whole = simpson(a, b, fa, fm, fb);
    // Floor the tolerance budget so integrals that are nearly zero do not
    // demand unattainable absolute accuracy.
    let abs_tol = rel_tol * whole.abs().max(1e-300).max((b - a).abs() * fm.abs());
    let mut exhausted = false;
    let value = adaptive(f, a, b, fa, fm, fb, whole, abs_tol, MAX_DEPTH, &mut exhausted);
    if exhausted {
        return Err(Error::Numerical {
            context: "adaptive quadrature did not converge".into(),
            estimate: value,
        });
    }
    if !value.is_finite() {
        return Err(Error::Numerical {
            context: "non-finite quadrature result".into(),
            estimate: value,
        });
    }
    Ok(value)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    abs_tol: f64,
    depth: usize,
    exhausted: &mut bool,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let err = left + right - whole;
    if (b - a).abs() < f64::EPSILON * (a.abs() + b.abs()) {
        return left + right + err / 15.0;
    }
    if err.abs() <= 15.0 * abs_tol {
        // Richardson extrapolation of the two half-panel estimates. The
        // halving difference can vanish by accident (the local fourth
        // derivative changing sign), so cross-check the accepted value
        // against an unrelated rule before trusting it.
        let corrected = left + right + err / 15.0;
        if (corrected - gauss8(&f, a, b)).abs() <= 15.0 * abs_tol {
            return corrected;
        }
    }
    if depth == 0 {
        *exhausted = true;
        return left + right + err / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, 0.5 * abs_tol, depth - 1, exhausted)
        + adaptive(f, m, b, fm, frm, fb, right, 0.5 * abs_tol, depth - 1, exhausted)
}

/// Nodes and weights of 8-point Gauss-Legendre on [-1, 1].
const GL8_X: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL8_W: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// Fixed 8-point Gauss-Legendre rule; used for the short face integrals
/// of the elliptic grid solver where adaptivity would be overkill.
pub fn gauss8<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL8_X.iter().zip(GL8_W.iter()) {
        acc += w * f(c + h * x);
    }
    acc * h
}
