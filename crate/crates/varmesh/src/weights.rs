//! Weight (monitor) functions controlling local mesh density.
//!
//! A weight `g` is any strictly positive, bounded function of position;
//! regions where `g` is small receive a locally finer mesh. Only the shape
//! of `g` matters: the mesh construction normalizes by the total scaled
//! length, so `Constant(k)` yields the same uniform grid for every `k > 0`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Declarative description of a 1D weight function.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightSpec {
    /// g(x) = level everywhere. Produces a uniform mesh.
    Constant { level: f64 },
    /// g(x) = 1 - depth * exp(-((x - center)/width)^2).
    ///
    /// A dip centered at `center` that concentrates mesh points there;
    /// `depth` must stay below 1 so that min g = 1 - depth > 0.
    GaussianWell { depth: f64, center: f64, width: f64 },
    /// Piecewise-linear interpolation of (abscissae, values) samples.
    /// Evaluation outside the abscissae hull is a hard error.
    Table {
        abscissae: Vec<f64>,
        values: Vec<f64>,
    },
}

/// Sampled extrema and validity flags for a weight over an interval.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub min: f64,
    pub max: f64,
    pub argmin: f64,
    pub argmax: f64,
    pub positive: bool,
    pub bounded: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.positive && self.bounded
    }
}

impl WeightSpec {
    pub fn constant(level: f64) -> Result<Self> {
        if !(level.is_finite() && level > 0.0) {
            return Err(Error::Validation(format!(
                "constant weight level must be finite and positive, got {level}"
            )));
        }
        Ok(WeightSpec::Constant { level })
    }

    pub fn gaussian_well(depth: f64, center: f64, width: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&depth) {
            return Err(Error::Validation(format!(
                "gaussian well depth must lie in [0, 1), got {depth}"
            )));
        }
        if !(width.is_finite() && width > 0.0) || !center.is_finite() {
            return Err(Error::Validation(format!(
                "gaussian well needs finite center and positive width, got center={center} width={width}"
            )));
        }
        Ok(WeightSpec::GaussianWell {
            depth,
            center,
            width,
        })
    }

    pub fn table(abscissae: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let spec = WeightSpec::Table { abscissae, values };
        spec.check()?;
        Ok(spec)
    }

    /// Re-checks construction invariants; used after deserialization,
    /// where the derive bypasses the validating constructors.
    pub fn check(&self) -> Result<()> {
        match self {
            WeightSpec::Constant { level } => {
                Self::constant(*level)?;
            }
            WeightSpec::GaussianWell {
                depth,
                center,
                width,
            } => {
                Self::gaussian_well(*depth, *center, *width)?;
            }
            WeightSpec::Table { abscissae, values } => {
                if abscissae.len() < 2 || abscissae.len() != values.len() {
                    return Err(Error::Validation(format!(
                        "table weight needs >= 2 samples with matching lengths, got {} abscissae and {} values",
                        abscissae.len(),
                        values.len()
                    )));
                }
                if abscissae.windows(2).any(|w| !(w[0] < w[1])) {
                    return Err(Error::Validation(
                        "table abscissae must be strictly ascending".into(),
                    ));
                }
                if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                    return Err(Error::Validation(format!(
                        "table values must be finite and positive, got {v}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Evaluates g(x).
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite abscissa {x}")));
        }
        match self {
            WeightSpec::Constant { level } => Ok(*level),
            WeightSpec::GaussianWell {
                depth,
                center,
                width,
            } => {
                let t = (x - center) / width;
                Ok(1.0 - depth * (-t * t).exp())
            }
            WeightSpec::Table { abscissae, values } => {
                let (lo, hi) = (abscissae[0], *abscissae.last().unwrap());
                if x < lo || x > hi {
                    return Err(Error::Domain(format!(
                        "x = {x} outside table hull [{lo}, {hi}]"
                    )));
                }
                let j = match abscissae.binary_search_by(|a| a.partial_cmp(&x).unwrap()) {
                    Ok(j) => return Ok(values[j]),
                    Err(j) => j,
                };
                let (x0, x1) = (abscissae[j - 1], abscissae[j]);
                let (v0, v1) = (values[j - 1], values[j]);
                Ok(v0 + (v1 - v0) * (x - x0) / (x1 - x0))
            }
        }
    }

    /// Samples g densely over `[a, b]` and reports extrema plus
    /// positivity/boundedness flags. Specs whose sampled min is <= 0 are
    /// reported invalid rather than erroring, so callers can inspect where
    /// the violation occurs.
    pub fn validate(&self, domain: [f64; 2], samples: usize) -> Result<ValidationReport> {
        let [a, b] = domain;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInput(format!("empty domain [{a}, {b}]")));
        }
        if samples < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 validation samples, got {samples}"
            )));
        }
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut argmin = a;
        let mut argmax = a;
        for i in 0..samples {
            let x = a + (b - a) * i as f64 / (samples - 1) as f64;
            let v = self.evaluate(x)?;
            if v < min {
                min = v;
                argmin = x;
            }
            if v > max {
                max = v;
                argmax = x;
            }
        }
        Ok(ValidationReport {
            min,
            max,
            argmin,
            argmax,
            positive: min > 0.0,
            bounded: max.is_finite(),
        })
    }
}
