//! Terms over the signature `(0, 1, X_i, +, *, -, ^-1, d/dX_i)`.
//!
//! Only the nine core constructors exist in [`MeadowTerm`]; every piece of
//! notation (division, subtraction, numerals, integer powers, pseudo units
//! and pseudo zeros) is desugared by the helper constructors below.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MeadowTerm {
    Zero,
    One,
    /// Formal variable `X_i`, `i` counted from 1.
    Var(usize),
    /// Schematic variable of an axiom; never normalized.
    MetaVar(String),
    Add(Box<MeadowTerm>, Box<MeadowTerm>),
    Mul(Box<MeadowTerm>, Box<MeadowTerm>),
    Neg(Box<MeadowTerm>),
    Inv(Box<MeadowTerm>),
    /// Partial derivative with respect to `X_i`.
    Diff(usize, Box<MeadowTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("unbound metavariable `{0}`")]
    UnboundMetaVar(String),
    #[error("variable index {index} out of range 1..={nvars}")]
    VarIndexOutOfRange { index: usize, nvars: usize },
    #[error("malformed term JSON: {0}")]
    Json(String),
}

use MeadowTerm::*;

#[allow(clippy::should_implement_trait)]
impl MeadowTerm {
    pub fn var(i: usize) -> Self {
        Var(i)
    }

    pub fn meta(name: &str) -> Self {
        MetaVar(name.to_string())
    }

    pub fn add(a: MeadowTerm, b: MeadowTerm) -> Self {
        Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: MeadowTerm, b: MeadowTerm) -> Self {
        Mul(Box::new(a), Box::new(b))
    }

    pub fn neg(a: MeadowTerm) -> Self {
        Neg(Box::new(a))
    }

    pub fn inv(a: MeadowTerm) -> Self {
        Inv(Box::new(a))
    }

    pub fn diff(i: usize, a: MeadowTerm) -> Self {
        Diff(i, Box::new(a))
    }

    /// `a - b`, i.e. `a + (-b)`.
    pub fn sub(a: MeadowTerm, b: MeadowTerm) -> Self {
        Self::add(a, Self::neg(b))
    }

    /// `a / b`, i.e. `a * b^-1`.
    pub fn div(a: MeadowTerm, b: MeadowTerm) -> Self {
        Self::mul(a, Self::inv(b))
    }

    /// Pseudo unit `1_t = t * t^-1`.
    pub fn pseudo_unit(t: MeadowTerm) -> Self {
        Self::mul(t.clone(), Self::inv(t))
    }

    /// Pseudo zero `0_t = 1 - 1_t`.
    pub fn pseudo_zero(t: MeadowTerm) -> Self {
        Self::sub(One, Self::pseudo_unit(t))
    }

    /// Numeral built by balanced doubling: `2m = m * (1 + 1)`,
    /// `2m + 1 = 2m + 1`, negatives wrap the positive numeral in `Neg`.
    pub fn numeral(k: i64) -> Self {
        if k < 0 {
            return Self::neg(Self::natural(k.unsigned_abs()));
        }
        Self::natural(k as u64)
    }

    fn natural(k: u64) -> Self {
        match k {
            0 => Zero,
            1 => One,
            2 => Self::add(One, One),
            _ if k.is_multiple_of(2) => Self::mul(Self::natural(k / 2), Self::add(One, One)),
            _ => Self::add(Self::natural(k - 1), One),
        }
    }

    /// `t^k` as the left-nested product `((t * t) * t) ...`; `t^0 = 1` and
    /// negative exponents invert the positive power.
    pub fn int_pow(t: MeadowTerm, k: i64) -> Self {
        if k < 0 {
            return Self::inv(Self::int_pow(t, -k));
        }
        if k == 0 {
            return One;
        }
        let mut acc = t.clone();
        for _ in 1..k {
            acc = Self::mul(acc, t.clone());
        }
        acc
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            Zero | One | Var(_) | MetaVar(_) => 1,
            Add(a, b) | Mul(a, b) => 1 + a.size() + b.size(),
            Neg(a) | Inv(a) | Diff(_, a) => 1 + a.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Zero | One | Var(_) | MetaVar(_) => 0,
            Add(a, b) | Mul(a, b) => 1 + a.depth().max(b.depth()),
            Neg(a) | Inv(a) | Diff(_, a) => 1 + a.depth(),
        }
    }

    pub fn metavars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_metavars(&mut out);
        out
    }

    fn collect_metavars(&self, out: &mut BTreeSet<String>) {
        match self {
            MetaVar(name) => {
                out.insert(name.clone());
            }
            Zero | One | Var(_) => {}
            Add(a, b) | Mul(a, b) => {
                a.collect_metavars(out);
                b.collect_metavars(out);
            }
            Neg(a) | Inv(a) | Diff(_, a) => a.collect_metavars(out),
        }
    }

    pub fn has_metavar(&self) -> bool {
        self.any(&|t| matches!(t, MetaVar(_)))
    }

    pub fn has_var(&self) -> bool {
        self.any(&|t| matches!(t, Var(_)))
    }

    pub fn has_diff(&self) -> bool {
        self.any(&|t| matches!(t, Diff(..)))
    }

    fn any(&self, pred: &dyn Fn(&MeadowTerm) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            Zero | One | Var(_) | MetaVar(_) => false,
            Add(a, b) | Mul(a, b) => a.any(pred) || b.any(pred),
            Neg(a) | Inv(a) | Diff(_, a) => a.any(pred),
        }
    }

    /// Checks every `Var` and `Diff` index against `1..=nvars`.
    pub fn check_indices(&self, nvars: usize) -> Result<(), TermError> {
        match self {
            Var(i) | Diff(i, _) if *i == 0 || *i > nvars => {
                Err(TermError::VarIndexOutOfRange { index: *i, nvars })
            }
            Zero | One | Var(_) | MetaVar(_) => Ok(()),
            Add(a, b) | Mul(a, b) => {
                a.check_indices(nvars)?;
                b.check_indices(nvars)
            }
            Neg(a) | Inv(a) | Diff(_, a) => a.check_indices(nvars),
        }
    }

    /// Simultaneous replacement of metavariables.
    pub fn substitute(&self, sigma: &BTreeMap<String, MeadowTerm>) -> Result<Self, TermError> {
        Ok(match self {
            MetaVar(name) => sigma
                .get(name)
                .cloned()
                .ok_or_else(|| TermError::UnboundMetaVar(name.clone()))?,
            Zero => Zero,
            One => One,
            Var(i) => Var(*i),
            Add(a, b) => Self::add(a.substitute(sigma)?, b.substitute(sigma)?),
            Mul(a, b) => Self::mul(a.substitute(sigma)?, b.substitute(sigma)?),
            Neg(a) => Self::neg(a.substitute(sigma)?),
            Inv(a) => Self::inv(a.substitute(sigma)?),
            Diff(i, a) => Self::diff(*i, a.substitute(sigma)?),
        })
    }

    pub fn to_json(&self) -> TermJson {
        let node = |op: &str| TermJson {
            op: op.to_string(),
            operands: Vec::new(),
            index: None,
            name: None,
        };
        match self {
            Zero => node("zero"),
            One => node("one"),
            Var(i) => TermJson {
                index: Some(*i),
                ..node("var")
            },
            MetaVar(name) => TermJson {
                name: Some(name.clone()),
                ..node("metavar")
            },
            Add(a, b) => TermJson {
                operands: vec![a.to_json(), b.to_json()],
                ..node("add")
            },
            Mul(a, b) => TermJson {
                operands: vec![a.to_json(), b.to_json()],
                ..node("mul")
            },
            Neg(a) => TermJson {
                operands: vec![a.to_json()],
                ..node("neg")
            },
            Inv(a) => TermJson {
                operands: vec![a.to_json()],
                ..node("inv")
            },
            Diff(i, a) => TermJson {
                operands: vec![a.to_json()],
                index: Some(*i),
                ..node("diff")
            },
        }
    }

    pub fn from_json(json: &TermJson) -> Result<Self, TermError> {
        let arity = |k: usize| -> Result<(), TermError> {
            if json.operands.len() == k {
                Ok(())
            } else {
                Err(TermError::Json(format!(
                    "`{}` takes {k} operands, got {}",
                    json.op,
                    json.operands.len()
                )))
            }
        };
        let index = || {
            json.index
                .ok_or_else(|| TermError::Json(format!("`{}` needs an index", json.op)))
        };
        let operand = |k: usize| Self::from_json(&json.operands[k]);
        Ok(match json.op.as_str() {
            "zero" => {
                arity(0)?;
                Zero
            }
            "one" => {
                arity(0)?;
                One
            }
            "var" => {
                arity(0)?;
                Var(index()?)
            }
            "metavar" => {
                arity(0)?;
                MetaVar(
                    json.name
                        .clone()
                        .ok_or_else(|| TermError::Json("`metavar` needs a name".into()))?,
                )
            }
            "add" => {
                arity(2)?;
                Self::add(operand(0)?, operand(1)?)
            }
            "mul" => {
                arity(2)?;
                Self::mul(operand(0)?, operand(1)?)
            }
            "neg" => {
                arity(1)?;
                Self::neg(operand(0)?)
            }
            "inv" => {
                arity(1)?;
                Self::inv(operand(0)?)
            }
            "diff" => {
                arity(1)?;
                Self::diff(index()?, operand(0)?)
            }
            other => return Err(TermError::Json(format!("unknown op `{other}`"))),
        })
    }
}

impl fmt::Display for MeadowTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self))
    }
}

/// Serialized AST node: `{"op": ..., "operands": [...], "index": i, "name": s}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub op: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operands: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub lhs: MeadowTerm,
    pub rhs: MeadowTerm,
}

impl Equation {
    pub fn new(name: impl Into<String>, lhs: MeadowTerm, rhs: MeadowTerm) -> Self {
        Equation {
            name: name.into(),
            lhs,
            rhs,
        }
    }

    /// Metavariables of both sides.
    pub fn metavars(&self) -> BTreeSet<String> {
        let mut vars = self.lhs.metavars();
        vars.extend(self.rhs.metavars());
        vars
    }

    pub fn has_diff(&self) -> bool {
        self.lhs.has_diff() || self.rhs.has_diff()
    }

    pub fn instantiate(
        &self,
        sigma: &BTreeMap<String, MeadowTerm>,
    ) -> Result<(MeadowTerm, MeadowTerm), TermError> {
        Ok((self.lhs.substitute(sigma)?, self.rhs.substitute(sigma)?))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// One layer of a [`Context`], seen from the hole outwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Frame {
    /// `[] + r`
    AddLeft(MeadowTerm),
    /// `l + []`
    AddRight(MeadowTerm),
    MulLeft(MeadowTerm),
    MulRight(MeadowTerm),
    Neg,
    Inv,
    Diff(usize),
}

/// A term with exactly one hole. `frames[0]` is the outermost layer; the
/// empty frame list is the trivial context `[]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Context {
    pub frames: Vec<Frame>,
}

/// Placeholder name used when a context is displayed.
pub const HOLE: &str = "□";

impl Context {
    pub fn hole() -> Self {
        Context::default()
    }

    pub fn new(frames: Vec<Frame>) -> Self {
        Context { frames }
    }

    pub fn depth(&self) -> usize {
        self.frames.len()
    }

    pub fn plug(&self, t: MeadowTerm) -> MeadowTerm {
        self.frames
            .iter()
            .rev()
            .fold(t, |inner, frame| match frame {
                Frame::AddLeft(r) => MeadowTerm::add(inner, r.clone()),
                Frame::AddRight(l) => MeadowTerm::add(l.clone(), inner),
                Frame::MulLeft(r) => MeadowTerm::mul(inner, r.clone()),
                Frame::MulRight(l) => MeadowTerm::mul(l.clone(), inner),
                Frame::Neg => MeadowTerm::neg(inner),
                Frame::Inv => MeadowTerm::inv(inner),
                Frame::Diff(i) => MeadowTerm::diff(*i, inner),
            })
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.plug(MetaVar(HOLE.to_string())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(pairs: &[(&str, MeadowTerm)]) -> BTreeMap<String, MeadowTerm> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    #[test]
    fn substitute_examples() {
        let x = MeadowTerm::meta("x");
        let y = MeadowTerm::meta("y");
        let t = MeadowTerm::pseudo_unit(x.clone());
        assert_eq!(
            t.substitute(&sigma(&[("x", Var(1))])).unwrap(),
            MeadowTerm::mul(Var(1), MeadowTerm::inv(Var(1)))
        );

        let s = MeadowTerm::add(x.clone(), y.clone());
        assert_eq!(
            s.substitute(&sigma(&[("x", Zero), ("y", Zero)])).unwrap(),
            MeadowTerm::add(Zero, Zero)
        );

        let d = MeadowTerm::diff(1, MeadowTerm::mul(x.clone(), y.clone()));
        let got = d
            .substitute(&sigma(&[
                ("x", Var(1)),
                ("y", MeadowTerm::div(One, Var(2))),
            ]))
            .unwrap();
        assert_eq!(
            got,
            MeadowTerm::diff(
                1,
                MeadowTerm::mul(Var(1), MeadowTerm::mul(One, MeadowTerm::inv(Var(2))))
            )
        );
    }

    #[test]
    fn substitute_reports_unbound() {
        let t = MeadowTerm::add(MeadowTerm::meta("x"), MeadowTerm::meta("y"));
        assert_eq!(
            t.substitute(&sigma(&[("x", One)])),
            Err(TermError::UnboundMetaVar("y".into()))
        );
    }

    #[test]
    fn plug_examples() {
        let c = Context::new(vec![Frame::Diff(1)]);
        assert_eq!(c.plug(Var(2)), MeadowTerm::diff(1, Var(2)));

        let t = MeadowTerm::mul(Var(1), Var(3));
        assert_eq!(Context::hole().plug(t.clone()), t);

        let c = Context::new(vec![Frame::AddLeft(Var(1)), Frame::Inv]);
        assert_eq!(c.plug(Zero), MeadowTerm::add(MeadowTerm::inv(Zero), Var(1)));
        assert_eq!(c.to_string(), "□^-1 + X1");
    }

    #[test]
    fn sugar() {
        assert_eq!(
            MeadowTerm::pseudo_unit(Var(1)),
            MeadowTerm::mul(Var(1), MeadowTerm::inv(Var(1)))
        );
        assert_eq!(
            MeadowTerm::pseudo_zero(Var(1)),
            MeadowTerm::add(One, MeadowTerm::neg(MeadowTerm::pseudo_unit(Var(1))))
        );
        assert_eq!(MeadowTerm::numeral(0), Zero);
        assert_eq!(MeadowTerm::numeral(1), One);
        assert_eq!(MeadowTerm::numeral(-1), MeadowTerm::neg(One));
        assert_eq!(
            MeadowTerm::int_pow(Var(1), -2),
            MeadowTerm::inv(MeadowTerm::mul(Var(1), Var(1)))
        );
        assert_eq!(MeadowTerm::int_pow(Var(1), 0), One);
        assert_eq!(MeadowTerm::int_pow(Var(1), 1), Var(1));
    }

    fn closed_value(t: &MeadowTerm) -> i64 {
        match t {
            Zero => 0,
            One => 1,
            Add(a, b) => closed_value(a) + closed_value(b),
            Mul(a, b) => closed_value(a) * closed_value(b),
            Neg(a) => -closed_value(a),
            other => panic!("not a numeral node: {other:?}"),
        }
    }

    #[test]
    fn numerals_are_logarithmic() {
        for k in -300..=300 {
            let t = MeadowTerm::numeral(k);
            assert_eq!(closed_value(&t), k);
        }
        for k in [1_000_i64, 1 << 20, 123_456_789, i64::MAX] {
            let t = MeadowTerm::numeral(k);
            let bits = 64 - k.leading_zeros() as usize;
            assert!(
                t.size() <= 6 * bits + 2,
                "numeral({k}) has size {}",
                t.size()
            );
        }
        assert_eq!(closed_value(&MeadowTerm::numeral(8)), 8);
        assert!(MeadowTerm::numeral(i64::MIN).size() < 400);
    }

    #[test]
    fn json_shape() {
        let t = MeadowTerm::diff(2, MeadowTerm::add(Var(1), MeadowTerm::meta("x")));
        let json = serde_json::to_value(t.to_json()).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "op": "diff", "index": 2,
                "operands": [{"op": "add", "operands": [
                    {"op": "var", "index": 1},
                    {"op": "metavar", "name": "x"}
                ]}]
            })
        );
        let back: TermJson = serde_json::from_value(json).unwrap();
        assert_eq!(MeadowTerm::from_json(&back).unwrap(), t);

        let bad: TermJson = serde_json::from_value(serde_json::json!({"op": "add"})).unwrap();
        assert!(MeadowTerm::from_json(&bad).is_err());
    }

    #[test]
    fn index_checks() {
        let t = MeadowTerm::diff(4, Var(1));
        assert_eq!(
            t.check_indices(3),
            Err(TermError::VarIndexOutOfRange { index: 4, nvars: 3 })
        );
        assert!(Var(3).check_indices(3).is_ok());
        assert!(Var(0).check_indices(3).is_err());
    }
}
