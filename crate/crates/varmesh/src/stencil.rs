//! Three-point central difference coefficients on uneven spacing.
//!
//! With neighbor distances h_left = x_i - x_{i-1} and h_right =
//! x_{i+1} - x_i, Taylor matching gives closed-form weights for the first
//! and second derivative at x_i. At h_left = h_right they reduce to the
//! classical central differences.

use crate::error::{Error, Result};
use crate::mesh1d::Mesh1D;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOrder {
    First,
    Second,
}

/// Weights (a, b, c) applied to (f_{i-1}, f_i, f_{i+1}).
#[derive(Debug, Clone, Copy)]
pub struct StencilCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub order: DerivOrder,
}

fn check_spacings(h_left: f64, h_right: f64) -> Result<()> {
    if !(h_left.is_finite() && h_left > 0.0 && h_right.is_finite() && h_right > 0.0) {
        return Err(Error::InvalidInput(format!(
            "spacings must be positive and finite, got h_left={h_left} h_right={h_right}"
        )));
    }
    Ok(())
}

/// First-derivative weights.
///
/// The middle weight is computed in the cancelled form
/// (h_right - h_left)/(h_right * h_left) so it is exactly zero on uniform
/// spacing; the outer weights divide the spacing ratio first so the
/// uniform case lands bit-for-bit on -1/(2h) and 1/(2h).
pub fn first_derivative_coeffs(h_left: f64, h_right: f64) -> Result<StencilCoeffs> {
    check_spacings(h_left, h_right)?;
    let sum = h_left + h_right;
    Ok(StencilCoeffs {
        a: -(h_right / h_left) / sum,
        b: (h_right - h_left) / (h_right * h_left),
        c: (h_left / h_right) / sum,
        order: DerivOrder::First,
    })
}

/// Second-derivative weights.
pub fn second_derivative_coeffs(h_left: f64, h_right: f64) -> Result<StencilCoeffs> {
    check_spacings(h_left, h_right)?;
    let sum = h_left + h_right;
    Ok(StencilCoeffs {
        a: 2.0 / (h_left * sum),
        b: -2.0 / (h_left * h_right),
        c: 2.0 / (h_right * sum),
        order: DerivOrder::Second,
    })
}

pub fn coeffs(order: DerivOrder, h_left: f64, h_right: f64) -> Result<StencilCoeffs> {
    match order {
        DerivOrder::First => first_derivative_coeffs(h_left, h_right),
        DerivOrder::Second => second_derivative_coeffs(h_left, h_right),
    }
}

impl StencilCoeffs {
    pub fn apply(&self, f_left: f64, f_mid: f64, f_right: f64) -> f64 {
        self.a * f_left + self.b * f_mid + self.c * f_right
    }
}

/// Applies the stencil of the given order to samples aligned with the mesh
/// nodes. Output covers interior nodes only (no one-sided stencils).
pub fn differentiate(mesh: &Mesh1D, samples: &[f64], order: DerivOrder) -> Result<Vec<f64>> {
    let n = mesh.num_nodes();
    if samples.len() != n {
        return Err(Error::InvalidInput(format!(
            "sample/mesh length mismatch: {} samples for {} nodes",
            samples.len(),
            n
        )));
    }
    let h = mesh.spacings();
    let mut out = Vec::with_capacity(n - 2);
    for i in 1..n - 1 {
        let s = coeffs(order, h[i - 1], h[i])?;
        out.push(s.apply(samples[i - 1], samples[i], samples[i + 1]));
    }
    Ok(out)
}
