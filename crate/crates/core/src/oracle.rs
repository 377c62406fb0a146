//! Pointwise zero-totalised evaluation, used as an independent check on the
//! symbolic normal forms.
//!
//! Two semantics meet here. Raw evaluation of a term at a point follows the
//! zero-totalised field rules (`0^-1 = 0`) and disagrees with the generic
//! model at bad points: `X1 * X1^-1` is `0` at `X1 = 0` but equals `1`
//! generically. [`random_point_check`] therefore only compares at points
//! that avoid every recorded bad-set polynomial.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use thiserror::Error;

use crate::poly::Coefficient;
use crate::report::{CheckMode, CheckReport, Failure};
use crate::term::{Equation, MeadowTerm};
use crate::ztc::{NormalizeError, Normalizer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("differentiation cannot be evaluated pointwise")]
    DiffUnsupported,
    #[error("unbound metavariable `{0}`")]
    UnboundMetaVar(String),
    #[error("variable X{index} is not assigned (point has {assigned} coordinates)")]
    Unassigned { index: usize, assigned: usize },
    #[error("enumeration of {needed} assignments exceeds the budget of {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("equation has {0} metavariables; at most 3 are enumerated")]
    TooManyMetaVars(usize),
    #[error("malformed point: {0}")]
    BadPoint(String),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
}

/// A field whose inverse is made total by `0^-1 = 0`.
pub trait ZeroTotalField {
    type Elem: Clone + PartialEq + fmt::Display;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// The rationals with `0^-1 = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl ZeroTotalField for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::zero()
        } else {
            a.recip()
        }
    }
}

/// The integers modulo a prime, with `0^-1 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, EvalError> {
        let prime = p >= 2
            && (2..)
                .take_while(|d| d * d <= p)
                .all(|d| !p.is_multiple_of(d));
        if !prime {
            return Err(EvalError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((u128::from(a) * u128::from(b)) % u128::from(self.p)) as u64
    }
}

impl ZeroTotalField for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((u128::from(*a) + u128::from(*b)) % u128::from(self.p)) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulmod(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2), which also sends 0 to 0
        let (mut base, mut exp, mut acc) = (*a % self.p, self.p - 2, 1 % self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mulmod(acc, base);
            }
            base = self.mulmod(base, base);
            exp >>= 1;
        }
        if a.is_multiple_of(self.p) {
            0
        } else {
            acc
        }
    }
}

/// Zero-totalised evaluation. `vars[i - 1]` is the value of `X_i`.
pub fn eval_term<F: ZeroTotalField>(
    field: &F,
    t: &MeadowTerm,
    vars: &[F::Elem],
    metas: &BTreeMap<String, F::Elem>,
) -> Result<F::Elem, EvalError> {
    let go = |a: &MeadowTerm| eval_term(field, a, vars, metas);
    Ok(match t {
        MeadowTerm::Zero => field.zero(),
        MeadowTerm::One => field.one(),
        MeadowTerm::Var(i) => {
            vars.get(i.wrapping_sub(1))
                .cloned()
                .ok_or(EvalError::Unassigned {
                    index: *i,
                    assigned: vars.len(),
                })?
        }
        MeadowTerm::MetaVar(name) => metas
            .get(name)
            .cloned()
            .ok_or_else(|| EvalError::UnboundMetaVar(name.clone()))?,
        MeadowTerm::Add(a, b) => field.add(&go(a)?, &go(b)?),
        MeadowTerm::Mul(a, b) => field.mul(&go(a)?, &go(b)?),
        MeadowTerm::Neg(a) => field.neg(&go(a)?),
        MeadowTerm::Inv(a) => field.inv(&go(a)?),
        MeadowTerm::Diff(..) => return Err(EvalError::DiffUnsupported),
    })
}

/// Exact rational assignment of `X1..Xn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point(pub Vec<Coefficient>);

impl Point {
    /// Parses `X1=0,X2=5,X3=-1/2`. Every variable must be assigned exactly
    /// once.
    pub fn parse(src: &str, nvars: usize) -> Result<Self, EvalError> {
        let mut coords: Vec<Option<Coefficient>> = vec![None; nvars];
        for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| EvalError::BadPoint(format!("`{part}` is not var=value")))?;
            let index: usize = name
                .trim()
                .strip_prefix('X')
                .and_then(|d| d.parse().ok())
                .filter(|&i| i >= 1 && i <= nvars)
                .ok_or_else(|| EvalError::BadPoint(format!("bad variable `{}`", name.trim())))?;
            let value = parse_rational(value.trim())
                .ok_or_else(|| EvalError::BadPoint(format!("bad rational `{}`", value.trim())))?;
            if coords[index - 1].replace(value).is_some() {
                return Err(EvalError::BadPoint(format!("X{index} assigned twice")));
            }
        }
        let coords = coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or(EvalError::Unassigned {
                    index: i + 1,
                    assigned: nvars,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Point(coords))
    }

    pub fn to_json(&self) -> Value {
        let map: serde_json::Map<String, Value> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("X{}", i + 1), Value::from(format_rational(c))))
            .collect();
        Value::Object(map)
    }
}

pub fn parse_rational(s: &str) -> Option<Coefficient> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<BigInt>().ok()?,
            d.trim().parse::<BigInt>().ok()?,
        ),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    (!den.is_zero()).then(|| Coefficient::new(num, den))
}

/// `num/den`, or just `num` for integers.
pub fn format_rational(c: &Coefficient) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Sampling parameters for [`random_point_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointSampling {
    pub trials: usize,
    pub seed: u64,
    /// Numerators are drawn from `[-num_height, num_height]`.
    pub num_height: i64,
    /// Denominators are drawn from `[1, den_height]`.
    pub den_height: i64,
    pub retries: usize,
}

impl Default for PointSampling {
    fn default() -> Self {
        PointSampling {
            trials: 20,
            seed: 0,
            num_height: 1_000_000,
            den_height: 1_000,
            retries: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concordance {
    pub decided_equal: bool,
    pub agree: usize,
    pub disagree: usize,
    pub inconclusive: usize,
    /// Points where raw zero-totalised evaluation of a side differed from
    /// its normal form although the point avoids the bad set.
    pub raw_mismatch: usize,
    pub first_disagreement: Option<Point>,
}

impl Concordance {
    /// True when sampling contradicts the symbolic verdict: a disagreement
    /// for a pair decided equal, a pair decided unequal on which every
    /// conclusive sample agrees, or a raw/normal-form mismatch.
    pub fn hard_failure(&self) -> bool {
        let sampled_equal = self.disagree == 0;
        let conclusive = self.agree + self.disagree > 0;
        self.raw_mismatch > 0 || (conclusive && sampled_equal != self.decided_equal)
    }
}

fn random_rational<R: Rng>(rng: &mut R, cfg: &PointSampling) -> Coefficient {
    let num = rng.gen_range(-cfg.num_height..=cfg.num_height);
    let den = rng.gen_range(1..=cfg.den_height);
    Coefficient::new(num.into(), den.into())
}

/// Compares `t` and `r` at random rational points of the generic locus.
pub fn random_point_check(
    normalizer: &Normalizer,
    t: &MeadowTerm,
    r: &MeadowTerm,
    cfg: &PointSampling,
) -> Result<Concordance, EvalError> {
    let a = normalizer.normalize(t)?;
    let b = normalizer.normalize(r)?;
    let decided_equal = normalizer.nf_eq(&a.nf, &b.nf)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Concordance {
        decided_equal,
        agree: 0,
        disagree: 0,
        inconclusive: 0,
        raw_mismatch: 0,
        first_disagreement: None,
    };
    let no_metas = BTreeMap::new();
    for _ in 0..cfg.trials {
        let mut sampled = None;
        for _ in 0..=cfg.retries {
            let point: Vec<Coefficient> = (0..normalizer.nvars)
                .map(|_| random_rational(&mut rng, cfg))
                .collect();
            if a.badset.avoids(&point) && b.badset.avoids(&point) {
                if let (Some(va), Some(vb)) = (a.nf.eval(&point), b.nf.eval(&point)) {
                    sampled = Some((point, va, vb));
                    break;
                }
            }
        }
        let Some((point, va, vb)) = sampled else {
            out.inconclusive += 1;
            continue;
        };
        let mut side_value =
            |term: &MeadowTerm, nf_value: Coefficient| -> Result<Coefficient, EvalError> {
                if term.has_diff() {
                    return Ok(nf_value);
                }
                let raw = eval_term(&Rationals, term, &point, &no_metas)?;
                if raw != nf_value {
                    out.raw_mismatch += 1;
                }
                Ok(raw)
            };
        let va = side_value(t, va)?;
        let vb = side_value(r, vb)?;
        if va == vb {
            out.agree += 1;
        } else {
            out.disagree += 1;
            if out.first_disagreement.is_none() {
                out.first_disagreement = Some(Point(point));
            }
        }
    }
    Ok(out)
}

/// Upper bound on enumerated assignments.
pub const EXHAUSTIVE_BUDGET: u128 = 1_000_000;

/// Checks `eq` under every assignment of its metavariables (and of any
/// formal variables it mentions, `X1..Xn`) to elements of the prime field.
pub fn exhaustive_fp_check(eq: &Equation, p: u64, nvars: usize) -> Result<CheckReport, EvalError> {
    if eq.has_diff() {
        return Err(EvalError::DiffUnsupported);
    }
    let field = PrimeField::new(p)?;
    let metas: Vec<String> = eq.metavars().into_iter().collect();
    if metas.len() > 3 {
        return Err(EvalError::TooManyMetaVars(metas.len()));
    }
    let mentions_vars = eq.lhs.has_var() || eq.rhs.has_var();
    let var_slots = if mentions_vars { nvars } else { 0 };
    let slots = metas.len() + var_slots;
    let needed = u128::from(p).pow(slots as u32);
    if needed > EXHAUSTIVE_BUDGET {
        return Err(EvalError::Budget {
            needed,
            budget: EXHAUSTIVE_BUDGET,
        });
    }
    let mut failures = Vec::new();
    let mut digits = vec![0u64; slots];
    for trial in 0..needed as usize {
        let mut rest = trial as u64;
        for d in digits.iter_mut() {
            *d = rest % p;
            rest /= p;
        }
        let env: BTreeMap<String, u64> =
            metas.iter().cloned().zip(digits.iter().copied()).collect();
        let vars = &digits[metas.len()..];
        let lhs = eval_term(&field, &eq.lhs, vars, &env)?;
        let rhs = eval_term(&field, &eq.rhs, vars, &env)?;
        if lhs != rhs {
            let mut subst: BTreeMap<String, String> = env
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect();
            for (i, v) in vars.iter().enumerate() {
                subst.insert(format!("X{}", i + 1), v.to_string());
            }
            failures.push(Failure {
                trial,
                subst,
                lhs: Value::from(lhs),
                rhs: Value::from(rhs),
            });
        }
    }
    Ok(CheckReport {
        name: format!("{} @ F{p}", eq.name),
        mode: CheckMode::Exhaustive,
        trials: needed as usize,
        skipped: 0,
        failures,
        seed: 0,
    })
}
