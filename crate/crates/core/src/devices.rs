//! Frequency-dependent device responses.
//!
//! Phase modulators, beam-splitter angles and polarization-rotator angles are
//! all modelled as a real function of angular frequency returning radians.

use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use crate::spectral::FrequencyGrid;
use crate::{Error, Result};

/// A phase `φ(ω)` or angle `θ(ω)` in radians as a function of angular frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "ResponseRepr")]
pub enum FrequencyResponse {
    Constant {
        value: f64,
    },
    /// `value_at_ref + slope·(ω − ref_frequency)`.
    #[serde(rename = "linear")]
    LinearDetuning {
        value_at_ref: f64,
        slope: f64,
        ref_frequency: f64,
    },
    /// Dispersive fiber phase `βL + ½β₂Ω²L − ⅙β₃Ω³L` with `Ω = ω − carrier`.
    #[serde(rename = "fiber")]
    FiberDispersion {
        beta: f64,
        beta2: f64,
        beta3: f64,
        length: f64,
        carrier: f64,
    },
    /// Per-bin values looked up at the nearest bin of `grid`.
    Sampled {
        grid: FrequencyGrid,
        values: Vec<f64>,
    },
    /// Pointwise sum of responses, e.g. a modulator cascaded with a fiber.
    Sum {
        terms: Vec<FrequencyResponse>,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum ResponseRepr {
    Constant {
        value: f64,
    },
    Linear {
        value_at_ref: f64,
        slope: f64,
        ref_frequency: f64,
    },
    Fiber {
        beta: f64,
        beta2: f64,
        beta3: f64,
        length: f64,
        carrier: f64,
    },
    Sampled {
        grid: FrequencyGrid,
        values: Vec<f64>,
    },
    Sum {
        terms: Vec<FrequencyResponse>,
    },
}

impl TryFrom<ResponseRepr> for FrequencyResponse {
    type Error = Error;

    fn try_from(repr: ResponseRepr) -> Result<Self> {
        let r = match repr {
            ResponseRepr::Constant { value } => FrequencyResponse::Constant { value },
            ResponseRepr::Linear {
                value_at_ref,
                slope,
                ref_frequency,
            } => FrequencyResponse::LinearDetuning {
                value_at_ref,
                slope,
                ref_frequency,
            },
            ResponseRepr::Fiber {
                beta,
                beta2,
                beta3,
                length,
                carrier,
            } => FrequencyResponse::FiberDispersion {
                beta,
                beta2,
                beta3,
                length,
                carrier,
            },
            ResponseRepr::Sampled { grid, values } => FrequencyResponse::Sampled { grid, values },
            ResponseRepr::Sum { terms } => FrequencyResponse::Sum { terms },
        };
        r.validate()?;
        Ok(r)
    }
}

impl FrequencyResponse {
    pub fn constant(value: f64) -> Self {
        FrequencyResponse::Constant { value }
    }

    pub fn linear(value_at_ref: f64, slope: f64, ref_frequency: f64) -> Self {
        FrequencyResponse::LinearDetuning {
            value_at_ref,
            slope,
            ref_frequency,
        }
    }

    pub fn fiber(beta: f64, beta2: f64, beta3: f64, length: f64, carrier: f64) -> Result<Self> {
        let r = FrequencyResponse::FiberDispersion {
            beta,
            beta2,
            beta3,
            length,
            carrier,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn sampled(grid: FrequencyGrid, values: Vec<f64>) -> Result<Self> {
        let r = FrequencyResponse::Sampled { grid, values };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidResponse(format!(
                    "{name} must be finite, got {v}"
                )))
            }
        };
        match self {
            FrequencyResponse::Constant { value } => finite("value", *value),
            FrequencyResponse::LinearDetuning {
                value_at_ref,
                slope,
                ref_frequency,
            } => {
                finite("value_at_ref", *value_at_ref)?;
                finite("slope", *slope)?;
                finite("ref_frequency", *ref_frequency)
            }
            FrequencyResponse::FiberDispersion {
                beta,
                beta2,
                beta3,
                length,
                carrier,
            } => {
                finite("beta", *beta)?;
                finite("beta2", *beta2)?;
                finite("beta3", *beta3)?;
                finite("length", *length)?;
                finite("carrier", *carrier)?;
                if *length < 0.0 {
                    return Err(Error::InvalidResponse(format!(
                        "fiber length must be non-negative, got {length}"
                    )));
                }
                Ok(())
            }
            FrequencyResponse::Sampled { grid, values } => {
                if values.len() != grid.n_bins() {
                    return Err(Error::InvalidResponse(format!(
                        "sampled response has {} values for {} bins",
                        values.len(),
                        grid.n_bins()
                    )));
                }
                values.iter().try_for_each(|v| finite("sampled value", *v))
            }
            FrequencyResponse::Sum { terms } => terms.iter().try_for_each(|t| t.validate()),
        }
    }

    /// Evaluates the response at `omega > 0`.
    pub fn eval(&self, omega: f64) -> Result<f64> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidFrequency(omega));
        }
        Ok(self.eval_unchecked(omega))
    }

    fn eval_unchecked(&self, omega: f64) -> f64 {
        match self {
            FrequencyResponse::Constant { value } => *value,
            FrequencyResponse::LinearDetuning {
                value_at_ref,
                slope,
                ref_frequency,
            } => value_at_ref + slope * (omega - ref_frequency),
            FrequencyResponse::FiberDispersion {
                beta,
                beta2,
                beta3,
                length,
                carrier,
            } => {
                let d = omega - carrier;
                beta * length + 0.5 * beta2 * d * d * length - beta3 * d * d * d * length / 6.0
            }
            FrequencyResponse::Sampled { grid, values } => values[grid.nearest_bin(omega) - 1],
            FrequencyResponse::Sum { terms } => terms.iter().map(|t| t.eval_unchecked(omega)).sum(),
        }
    }

    /// Values at every bin of `grid`, `θ_k = r(kω_s)`.
    pub fn on_grid(&self, grid: &FrequencyGrid) -> Result<Vec<f64>> {
        grid.bins().map(|(_, w)| self.eval(w)).collect()
    }
}

/// Angle of a lossless 50:50 beam splitter, `θ = π/4`.
pub fn balanced_bs_angle() -> FrequencyResponse {
    FrequencyResponse::constant(FRAC_PI_4)
}

/// Pointwise sum `r1(ω) + r2(ω)`.
pub fn add(r1: &FrequencyResponse, r2: &FrequencyResponse) -> Result<FrequencyResponse> {
    use FrequencyResponse::*;
    match (r1, r2) {
        (Constant { value: a }, Constant { value: b }) => Ok(FrequencyResponse::constant(a + b)),
        (
            Sampled {
                grid: g1,
                values: v1,
            },
            Sampled {
                grid: g2,
                values: v2,
            },
        ) => {
            if g1 != g2 {
                return Err(Error::GridMismatch);
            }
            let values = v1.iter().zip(v2).map(|(a, b)| a + b).collect();
            FrequencyResponse::sampled(*g1, values)
        }
        _ => {
            let mut terms = Vec::new();
            for r in [r1, r2] {
                match r {
                    Sum { terms: inner } => terms.extend(inner.iter().cloned()),
                    other => terms.push(other.clone()),
                }
            }
            Ok(Sum { terms })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_fiber_values() {
        assert_eq!(FrequencyResponse::constant(0.7).eval(123.0).unwrap(), 0.7);
        let f = FrequencyResponse::fiber(2.0, 0.0, 0.0, 3.0, 50.0).unwrap();
        assert_eq!(f.eval(17.0).unwrap(), 6.0);
        let f = FrequencyResponse::fiber(0.0, 2.0, 0.0, 1.0, 50.0).unwrap();
        assert_eq!(f.eval(53.0).unwrap(), 9.0);
        // third-order term enters with a minus sign
        let f = FrequencyResponse::fiber(0.0, 0.0, 6.0, 1.0, 50.0).unwrap();
        assert_eq!(f.eval(52.0).unwrap(), -8.0);
    }

    #[test]
    fn zero_length_fiber_is_silent() {
        let f = FrequencyResponse::fiber(3.0, 1.5, -0.4, 0.0, 10.0).unwrap();
        for w in [0.1, 5.0, 10.0, 1e6] {
            assert_eq!(f.eval(w).unwrap(), 0.0);
        }
    }

    #[test]
    fn non_positive_frequency_rejected() {
        let r = FrequencyResponse::constant(1.0);
        assert_eq!(r.eval(0.0), Err(Error::InvalidFrequency(0.0)));
        assert!(r.eval(-1.0).is_err());
        assert!(r.eval(f64::NAN).is_err());
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(FrequencyResponse::fiber(0.0, 0.0, 0.0, -1.0, 1.0).is_err());
        let g = FrequencyGrid::new(1.0, 3).unwrap();
        assert!(FrequencyResponse::sampled(g, vec![0.0; 2]).is_err());
        assert!(FrequencyResponse::constant(f64::INFINITY)
            .validate()
            .is_err());
    }

    #[test]
    fn sampled_uses_nearest_bin() {
        let g = FrequencyGrid::new(1.0, 3).unwrap();
        let r = FrequencyResponse::sampled(g, vec![0.1, 0.2, 0.3]).unwrap();
        assert_eq!(r.eval(0.2).unwrap(), 0.1);
        assert_eq!(r.eval(1.6).unwrap(), 0.2);
        assert_eq!(r.eval(2.4).unwrap(), 0.2);
        assert_eq!(r.eval(99.0).unwrap(), 0.3);
    }

    #[test]
    fn balanced_angle() {
        let r = balanced_bs_angle();
        assert_eq!(r, FrequencyResponse::constant(FRAC_PI_4));
        assert!((r.eval(5.0).unwrap().cos() - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-15);
    }

    #[test]
    fn add_cases() {
        let s = add(
            &FrequencyResponse::constant(0.5),
            &FrequencyResponse::constant(0.25),
        )
        .unwrap();
        assert_eq!(s, FrequencyResponse::constant(0.75));

        let g = FrequencyGrid::new(1.0, 2).unwrap();
        let h = FrequencyGrid::new(2.0, 2).unwrap();
        let a = FrequencyResponse::sampled(g, vec![1.0, 2.0]).unwrap();
        let b = FrequencyResponse::sampled(g, vec![0.5, 0.5]).unwrap();
        assert_eq!(add(&a, &b).unwrap().eval(2.0).unwrap(), 2.5);
        let c = FrequencyResponse::sampled(h, vec![0.5, 0.5]).unwrap();
        assert_eq!(add(&a, &c), Err(Error::GridMismatch));

        let nested = add(
            &add(&a, &FrequencyResponse::linear(0.0, 1.0, 1.0)).unwrap(),
            &b,
        )
        .unwrap();
        match &nested {
            FrequencyResponse::Sum { terms } => assert_eq!(terms.len(), 3),
            other => panic!("expected a sum, got {other:?}"),
        }
        assert_eq!(nested.eval(2.0).unwrap(), 2.0 + 1.0 + 0.5);
    }

    #[test]
    fn toml_round_trip() {
        let src = r#"
            kind = "sum"
            [[terms]]
            kind = "fiber"
            beta = 1.0
            beta2 = 0.5
            beta3 = 0.0
            length = 2.0
            carrier = 10.0
            [[terms]]
            kind = "linear"
            value_at_ref = 0.1
            slope = 0.01
            ref_frequency = 10.0
        "#;
        let r: FrequencyResponse = toml::from_str(src).unwrap();
        let back: FrequencyResponse = toml::from_str(&toml::to_string(&r).unwrap()).unwrap();
        assert_eq!(r, back);
        assert!(toml::from_str::<FrequencyResponse>(
            "kind = \"fiber\"\nbeta=0.0\nbeta2=0.0\nbeta3=0.0\nlength=-1.0\ncarrier=1.0"
        )
        .is_err());
        assert!(
            toml::from_str::<FrequencyResponse>("kind = \"constant\"\nvalue = 1.0\nextra = 2")
                .is_err()
        );
    }
}
