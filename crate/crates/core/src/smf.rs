//! Standard Meadow Form trees and their collapse in the generic model.
//!
//! A level-0 form is `p/q`; a level `k+1` form is `0_p * P + 1_p * Q`. In the
//! Zariski-generic model a guard only ever selects one branch: `P` when the
//! pivot is the zero polynomial (`0_0 = 1`), `Q` otherwise.

use serde_json::{json, Value};
use thiserror::Error;

use crate::poly::{PolyTermJson, Polynomial};
use crate::syntax::parse_term;
use crate::term::MeadowTerm;
use crate::ztc::{poly_to_term, Normalizer, RatNF};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmfNode {
    Level0 {
        p: Polynomial,
        q: Polynomial,
    },
    Guard {
        pivot: Polynomial,
        zero: Box<SmfNode>,
        unit: Box<SmfNode>,
    },
}

#[derive(Debug, Error)]
pub enum SmfError {
    #[error("SMF schema violation at {path}: {message}")]
    Schema { path: String, message: String },
}

fn schema(path: &str, message: impl Into<String>) -> SmfError {
    SmfError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

impl SmfNode {
    pub fn level0(p: Polynomial, q: Polynomial) -> Self {
        SmfNode::Level0 { p, q }
    }

    pub fn guard(pivot: Polynomial, zero: SmfNode, unit: SmfNode) -> Self {
        SmfNode::Guard {
            pivot,
            zero: Box::new(zero),
            unit: Box::new(unit),
        }
    }

    pub fn level(&self) -> usize {
        match self {
            SmfNode::Level0 { .. } => 0,
            SmfNode::Guard { zero, unit, .. } => 1 + zero.level().max(unit.level()),
        }
    }

    /// Collapses the tree to a level-0 normal form.
    pub fn collapse(&self) -> RatNF {
        match self {
            SmfNode::Level0 { p, q } => RatNF::quot(p.clone(), q.clone()),
            SmfNode::Guard { pivot, zero, unit } => {
                if pivot.is_zero() {
                    zero.collapse()
                } else {
                    unit.collapse()
                }
            }
        }
    }

    /// Literal expansion into `p * q^-1` and `0_p * P + 1_p * Q`.
    pub fn to_term(&self) -> MeadowTerm {
        match self {
            SmfNode::Level0 { p, q } => {
                MeadowTerm::mul(poly_to_term(p), MeadowTerm::inv(poly_to_term(q)))
            }
            SmfNode::Guard { pivot, zero, unit } => {
                let g = poly_to_term(pivot);
                MeadowTerm::add(
                    MeadowTerm::mul(MeadowTerm::pseudo_zero(g.clone()), zero.to_term()),
                    MeadowTerm::mul(MeadowTerm::pseudo_unit(g), unit.to_term()),
                )
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SmfNode::Level0 { p, q } => json!({"kind": "level0", "p": p, "q": q}),
            SmfNode::Guard { pivot, zero, unit } => json!({
                "kind": "guard",
                "pivot": pivot,
                "zero": zero.to_json(),
                "unit": unit.to_json(),
            }),
        }
    }

    /// Reads the SMF JSON encoding. Polynomial fields are either the
    /// polynomial JSON term list or a string holding a division-free
    /// expression such as `"8 - X1*X3^2"`.
    pub fn from_json(value: &Value, nvars: usize) -> Result<Self, SmfError> {
        Self::from_json_at(value, nvars, "$")
    }

    fn from_json_at(value: &Value, nvars: usize, path: &str) -> Result<Self, SmfError> {
        let obj = value
            .as_object()
            .ok_or_else(|| schema(path, "expected an object"))?;
        let field = |name: &str| {
            obj.get(name)
                .ok_or_else(|| schema(path, format!("missing field `{name}`")))
        };
        let kind = field("kind")?
            .as_str()
            .ok_or_else(|| schema(path, "`kind` must be a string"))?;
        match kind {
            "level0" => Ok(SmfNode::Level0 {
                p: poly_field(field("p")?, nvars, &format!("{path}.p"))?,
                q: poly_field(field("q")?, nvars, &format!("{path}.q"))?,
            }),
            "guard" => Ok(SmfNode::Guard {
                pivot: poly_field(field("pivot")?, nvars, &format!("{path}.pivot"))?,
                zero: Box::new(Self::from_json_at(
                    field("zero")?,
                    nvars,
                    &format!("{path}.zero"),
                )?),
                unit: Box::new(Self::from_json_at(
                    field("unit")?,
                    nvars,
                    &format!("{path}.unit"),
                )?),
            }),
            other => Err(schema(path, format!("unknown kind `{other}`"))),
        }
    }
}

fn poly_field(value: &Value, nvars: usize, path: &str) -> Result<Polynomial, SmfError> {
    match value {
        Value::String(src) => {
            let t = parse_term(src, Some(nvars)).map_err(|e| schema(path, e.to_string()))?;
            Normalizer::new(nvars)
                .polynomial(&t)
                .map_err(|e| schema(path, e.to_string()))
        }
        Value::Array(_) => {
            let terms: Vec<PolyTermJson> =
                serde_json::from_value(value.clone()).map_err(|e| schema(path, e.to_string()))?;
            Polynomial::from_json_terms(nvars, &terms).map_err(|e| schema(path, e.to_string()))
        }
        _ => Err(schema(
            path,
            "expected a polynomial term list or expression string",
        )),
    }
}

/// The level-1 example `0_{1-X1} * (2 X1 / X2) + 1_{1-X1} * ((1 + X2 - 2 X1 X3) / (8 - X1 X3^2))`.
pub fn worked_example() -> SmfNode {
    let poly = |src: &str| {
        Normalizer::new(3)
            .polynomial(&parse_term(src, Some(3)).expect("valid literal"))
            .expect("polynomial literal")
    };
    SmfNode::guard(
        poly("1 - X1"),
        SmfNode::level0(poly("2*X1"), poly("X2")),
        SmfNode::level0(poly("1 + X2 - 2*X1*X3"), poly("8 - X1*X3^2")),
    )
}
