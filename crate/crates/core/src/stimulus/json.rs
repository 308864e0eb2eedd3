//! The stimulus description file format.
//!
//! ```json
//! {"type": "sum", "parts": [
//!   {"type": "trig", "c0": 1.0, "terms": [{"a": 0.0, "b": 0.5, "lambda": 6.283185307179586}]},
//!   {"type": "piecewise", "breakpoints": [0, 0.5, 1], "values": [2, 0],
//!    "extension": {"kind": "periodic"}}
//! ]}
//! ```

use serde::{Deserialize, Serialize};

use super::{
    Extension, PiecewiseConstant, Stimulus, StimulusError, StimulusSum, TrigPolynomial, TrigTerm,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum StimulusSpec {
    Trig {
        c0: f64,
        #[serde(default)]
        terms: Vec<TermSpec>,
    },
    Piecewise {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
        extension: ExtensionSpec,
    },
    Sum {
        parts: Vec<StimulusSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    #[serde(default)]
    pub a: f64,
    #[serde(default)]
    pub b: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ExtensionSpec {
    Periodic,
    Tails { left: f64, right: f64 },
}

pub(super) fn parse(text: &str) -> Result<Stimulus, StimulusError> {
    let spec: StimulusSpec = serde_json::from_str(text).map_err(|e| StimulusError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Stimulus::try_from(&spec)
}

impl TryFrom<&StimulusSpec> for Stimulus {
    type Error = StimulusError;

    fn try_from(spec: &StimulusSpec) -> Result<Self, Self::Error> {
        match spec {
            StimulusSpec::Trig { c0, terms } => {
                let terms = terms
                    .iter()
                    .map(|t| TrigTerm::new(t.a, t.b, t.lambda))
                    .collect();
                Ok(TrigPolynomial::new(*c0, terms)?.into())
            }
            StimulusSpec::Piecewise {
                breakpoints,
                values,
                extension,
            } => {
                let extension = match extension {
                    ExtensionSpec::Periodic => Extension::Periodic,
                    ExtensionSpec::Tails { left, right } => Extension::Tails {
                        left: *left,
                        right: *right,
                    },
                };
                Ok(PiecewiseConstant::new(breakpoints.clone(), values.clone(), extension)?.into())
            }
            StimulusSpec::Sum { parts } => {
                let parts = parts
                    .iter()
                    .enumerate()
                    .map(|(i, p)| Stimulus::try_from(p).map_err(|e| e.within(&format!("parts[{i}]"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(StimulusSum::new(parts)?.into())
            }
        }
    }
}

impl From<&Stimulus> for StimulusSpec {
    fn from(stimulus: &Stimulus) -> Self {
        match stimulus {
            Stimulus::Trig(p) => StimulusSpec::Trig {
                c0: p.constant_term(),
                terms: p
                    .terms()
                    .iter()
                    .map(|t| TermSpec {
                        a: t.cos_amplitude,
                        b: t.sin_amplitude,
                        lambda: t.frequency,
                    })
                    .collect(),
            },
            Stimulus::Piecewise(p) => StimulusSpec::Piecewise {
                breakpoints: p.breakpoints().to_vec(),
                values: p.values().to_vec(),
                extension: match p.extension() {
                    Extension::Periodic => ExtensionSpec::Periodic,
                    Extension::Tails { left, right } => ExtensionSpec::Tails { left, right },
                },
            },
            Stimulus::Sum(s) => StimulusSpec::Sum {
                parts: s.parts().iter().map(StimulusSpec::from).collect(),
            },
        }
    }
}
