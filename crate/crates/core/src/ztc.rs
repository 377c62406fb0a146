//! Normal forms in the Zariski-generic term model.
//!
//! Every closed term denotes either `0` or a quotient `p/q` of two nonzero
//! polynomials, valid on the Zariski-open set where the recorded bad-set
//! polynomials do not vanish. Quotients are never reduced; equality of
//! classes is decided by cross-multiplication.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poly::{Coefficient, PolyError, Polynomial, DEFAULT_MONOMIAL_BUDGET};
use crate::term::{MeadowTerm, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("metavariable `{0}` cannot be normalized")]
    MetaVar(String),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("not a polynomial: {0}")]
    NotPolynomial(String),
}

/// `Zero`, or `num/den` with both polynomials nonzero (not in lowest terms).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatNF {
    Zero,
    Quot { num: Polynomial, den: Polynomial },
}

impl RatNF {
    /// Builds `num/den`, collapsing to `Zero` when either side vanishes
    /// (`p * 0^-1 = 0`).
    pub fn quot(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() || den.is_zero() {
            RatNF::Zero
        } else {
            RatNF::Quot { num, den }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RatNF::Zero)
    }

    pub fn den(&self) -> Option<&Polynomial> {
        match self {
            RatNF::Zero => None,
            RatNF::Quot { den, .. } => Some(den),
        }
    }

    /// Value at a point where the denominator does not vanish; `None` if it
    /// does.
    pub fn eval(&self, point: &[Coefficient]) -> Option<Coefficient> {
        match self {
            RatNF::Zero => Some(Coefficient::from_integer(0.into())),
            RatNF::Quot { num, den } => {
                let d = den.eval(point);
                if d == Coefficient::from_integer(0.into()) {
                    None
                } else {
                    Some(num.eval(point) / d)
                }
            }
        }
    }

    /// The class as a term: `p * q^-1` with `p` and `q` spelled out as sums
    /// of monomials.
    pub fn to_term(&self) -> MeadowTerm {
        match self {
            RatNF::Zero => MeadowTerm::Zero,
            RatNF::Quot { num, den } => {
                MeadowTerm::mul(poly_to_term(num), MeadowTerm::inv(poly_to_term(den)))
            }
        }
    }

    /// Text rendering. With `clear_denominators`, numerator and denominator
    /// are scaled by the common denominator of all their coefficients.
    pub fn render(&self, clear_denominators: bool) -> String {
        match self {
            RatNF::Zero => "0".to_string(),
            RatNF::Quot { num, den } => {
                let (num, den) = if clear_denominators {
                    let lcm =
                        num_integer::Integer::lcm(&num.denominator_lcm(), &den.denominator_lcm());
                    let k = Coefficient::from_integer(lcm);
                    (num.scale(&k), den.scale(&k))
                } else {
                    (num.clone(), den.clone())
                };
                if den.is_one() {
                    return num.render();
                }
                format!("{} / {}", paren(&num), paren(&den))
            }
        }
    }
}

fn paren(p: &Polynomial) -> String {
    let text = p.render();
    if text.chars().all(|c| c.is_ascii_alphanumeric()) {
        text
    } else {
        format!("({text})")
    }
}

impl fmt::Display for RatNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// Spells a polynomial out as a term using numerals and integer powers.
pub fn poly_to_term(p: &Polynomial) -> MeadowTerm {
    use num_traits::{One, Signed};
    let mut acc: Option<MeadowTerm> = None;
    // ascending order so the constant comes first, as in the text rendering
    for (m, c) in p.terms().rev() {
        let mut factors: Vec<MeadowTerm> = Vec::new();
        let magnitude = c.abs();
        if !magnitude.is_one() || m.is_one() {
            factors.push(coefficient_term(&magnitude));
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                factors.push(MeadowTerm::int_pow(MeadowTerm::Var(i + 1), i64::from(e)));
            }
        }
        let mono = factors
            .into_iter()
            .reduce(MeadowTerm::mul)
            .expect("at least one factor");
        acc = Some(match acc {
            None if c.is_negative() => MeadowTerm::neg(mono),
            None => mono,
            Some(prev) if c.is_negative() => MeadowTerm::sub(prev, mono),
            Some(prev) => MeadowTerm::add(prev, mono),
        });
    }
    acc.unwrap_or(MeadowTerm::Zero)
}

fn coefficient_term(c: &Coefficient) -> MeadowTerm {
    let int_term = |k: &num_bigint::BigInt| -> MeadowTerm {
        match i64::try_from(k) {
            Ok(v) => MeadowTerm::numeral(v),
            // split oversized integers into base-2^62 digits
            Err(_) => {
                let base = num_bigint::BigInt::from(1_i64 << 62);
                let (hi, lo) = num_integer::Integer::div_rem(k, &base);
                MeadowTerm::add(
                    MeadowTerm::mul(
                        coefficient_term(&Coefficient::from_integer(hi)),
                        MeadowTerm::numeral(1_i64 << 62),
                    ),
                    MeadowTerm::numeral(i64::try_from(&lo).expect("digit fits")),
                )
            }
        }
    };
    if c.is_integer() {
        int_term(c.numer())
    } else {
        MeadowTerm::div(int_term(c.numer()), int_term(c.denom()))
    }
}

/// Finite set of nonzero, nonconstant polynomials; denotes the Zariski-open
/// set on which none of them vanish. Deduplicated syntactically, kept in
/// insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BadSet {
    polys: Vec<Polynomial>,
}

impl BadSet {
    pub fn new() -> Self {
        BadSet::default()
    }

    /// Records `p`. Nonzero constants never vanish and are skipped.
    pub fn insert(&mut self, p: &Polynomial) {
        debug_assert!(!p.is_zero(), "the zero polynomial cannot enter a bad set");
        if p.is_constant() || self.polys.contains(p) {
            return;
        }
        self.polys.push(p.clone());
    }

    pub fn extend(&mut self, other: &BadSet) {
        for p in &other.polys {
            self.insert(p);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Polynomial> {
        self.polys.iter()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// True iff no member vanishes at `point`.
    pub fn avoids(&self, point: &[Coefficient]) -> bool {
        use num_traits::Zero;
        self.polys.iter().all(|p| !p.eval(point).is_zero())
    }
}

/// A normal form together with the bad set it is valid away from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub nf: RatNF,
    pub badset: BadSet,
}

impl Serialize for Normalized {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        match &self.nf {
            RatNF::Zero => {
                map.serialize_entry("kind", "zero")?;
            }
            RatNF::Quot { num, den } => {
                map.serialize_entry("kind", "quot")?;
                map.serialize_entry("num", num)?;
                map.serialize_entry("den", den)?;
            }
        }
        map.serialize_entry("badset", &self.badset.polys)?;
        map.end()
    }
}

impl Serialize for RatNF {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        match self {
            RatNF::Zero => map.serialize_entry("kind", "zero")?,
            RatNF::Quot { num, den } => {
                map.serialize_entry("kind", "quot")?;
                map.serialize_entry("num", num)?;
                map.serialize_entry("den", den)?;
            }
        }
        map.end()
    }
}

/// Interprets terms in `Q[X1..Xn]`-quotients. Holds the ambient variable
/// count and the monomial budget applied to every intermediate polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Normalizer {
    pub nvars: usize,
    pub budget: usize,
}

impl Normalizer {
    pub fn new(nvars: usize) -> Self {
        Normalizer {
            nvars,
            budget: DEFAULT_MONOMIAL_BUDGET,
        }
    }

    pub fn with_budget(nvars: usize, budget: usize) -> Self {
        Normalizer { nvars, budget }
    }

    pub fn normalize(&self, t: &MeadowTerm) -> Result<Normalized, NormalizeError> {
        let mut badset = BadSet::new();
        let nf = self.go(t, &mut badset)?;
        Ok(Normalized { nf, badset })
    }

    fn quot(&self, num: Polynomial, den: Polynomial, badset: &mut BadSet) -> RatNF {
        let nf = RatNF::quot(num, den);
        if let Some(den) = nf.den() {
            badset.insert(den);
        }
        nf
    }

    fn go(&self, t: &MeadowTerm, badset: &mut BadSet) -> Result<RatNF, NormalizeError> {
        let n = self.nvars;
        let b = self.budget;
        Ok(match t {
            MeadowTerm::Zero => RatNF::Zero,
            MeadowTerm::One => RatNF::quot(Polynomial::one(n), Polynomial::one(n)),
            MeadowTerm::Var(i) => RatNF::quot(Polynomial::var(n, *i)?, Polynomial::one(n)),
            MeadowTerm::MetaVar(name) => return Err(NormalizeError::MetaVar(name.clone())),
            MeadowTerm::Neg(a) => match self.go(a, badset)? {
                RatNF::Zero => RatNF::Zero,
                RatNF::Quot { num, den } => RatNF::Quot {
                    num: num.neg(),
                    den,
                },
            },
            MeadowTerm::Add(a, c) => {
                let left = self.go(a, badset)?;
                let right = self.go(c, badset)?;
                match (left, right) {
                    (RatNF::Zero, x) | (x, RatNF::Zero) => x,
                    (RatNF::Quot { num: p, den: q }, RatNF::Quot { num: p2, den: q2 }) => {
                        let num = p
                            .mul_within(&q2, b)?
                            .add_within(&p2.mul_within(&q, b)?, b)?;
                        if num.is_zero() {
                            RatNF::Zero
                        } else {
                            self.quot(num, q.mul_within(&q2, b)?, badset)
                        }
                    }
                }
            }
            MeadowTerm::Mul(a, c) => {
                let left = self.go(a, badset)?;
                let right = self.go(c, badset)?;
                match (left, right) {
                    (RatNF::Zero, _) | (_, RatNF::Zero) => RatNF::Zero,
                    (RatNF::Quot { num: p, den: q }, RatNF::Quot { num: p2, den: q2 }) => {
                        self.quot(p.mul_within(&p2, b)?, q.mul_within(&q2, b)?, badset)
                    }
                }
            }
            MeadowTerm::Inv(a) => match self.go(a, badset)? {
                RatNF::Zero => RatNF::Zero,
                RatNF::Quot { num, den } => self.quot(den, num, badset),
            },
            MeadowTerm::Diff(i, a) => match self.go(a, badset)? {
                RatNF::Zero => RatNF::Zero,
                RatNF::Quot { num: p, den: q } => {
                    let dp = p.partial(*i)?;
                    let dq = q.partial(*i)?;
                    let num = dp
                        .mul_within(&q, b)?
                        .sub_within(&p.mul_within(&dq, b)?, b)?;
                    if num.is_zero() {
                        RatNF::Zero
                    } else {
                        self.quot(num, q.mul_within(&q, b)?, badset)
                    }
                }
            },
        })
    }

    /// Decides `t ≡ r` in the generic model by cross-multiplication.
    pub fn decide_eq(&self, t: &MeadowTerm, r: &MeadowTerm) -> Result<bool, NormalizeError> {
        let a = self.normalize(t)?;
        let c = self.normalize(r)?;
        self.nf_eq(&a.nf, &c.nf)
    }

    pub fn nf_eq(&self, a: &RatNF, c: &RatNF) -> Result<bool, NormalizeError> {
        Ok(match (a, c) {
            (RatNF::Zero, RatNF::Zero) => true,
            (RatNF::Zero, _) | (_, RatNF::Zero) => false,
            (RatNF::Quot { num: p, den: q }, RatNF::Quot { num: p2, den: q2 }) => {
                let lhs = p.mul_within(q2, self.budget)?;
                let rhs = p2.mul_within(q, self.budget)?;
                lhs == rhs
            }
        })
    }

    pub fn is_ztc_zero(&self, t: &MeadowTerm) -> Result<bool, NormalizeError> {
        Ok(self.normalize(t)?.nf.is_zero())
    }

    /// Normalizes `t` and requires the result to be a polynomial, i.e. to
    /// have a constant denominator.
    pub fn polynomial(&self, t: &MeadowTerm) -> Result<Polynomial, NormalizeError> {
        match self.normalize(t)?.nf {
            RatNF::Zero => Ok(Polynomial::zero(self.nvars)),
            RatNF::Quot { num, den } => match den.as_constant() {
                Some(c) => Ok(num.scale(&(Coefficient::from_integer(1.into()) / c))),
                None => Err(NormalizeError::NotPolynomial(t.to_string())),
            },
        }
    }
}

/// Quotient-rule derivative of a normal form, outside of any term.
pub fn diff_nf(nf: &RatNF, index: usize, budget: usize) -> Result<RatNF, PolyError> {
    Ok(match nf {
        RatNF::Zero => RatNF::Zero,
        RatNF::Quot { num: p, den: q } => {
            let num = p
                .partial(index)?
                .mul_within(q, budget)?
                .sub_within(&p.mul_within(&q.partial(index)?, budget)?, budget)?;
            RatNF::quot(num, q.mul_within(q, budget)?)
        }
    })
}
