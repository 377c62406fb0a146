//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] lives in a fixed ambient ring `Q[X1, ..., Xn]`. Terms are
//! kept in a `BTreeMap` keyed by [`Monomial`] under graded-lexicographic
//! order with `X1 > X2 > ... > Xn`, and zero coefficients are never stored,
//! so two polynomials are equal exactly when their maps are equal. This is
//! what makes the zero test a plain emptiness check.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational coefficient. `BigRational` keeps `den > 0` and
/// `gcd(num, den) = 1`, and represents zero as `0/1`.
pub type Coefficient = BigRational;

/// Default cap on the number of stored terms of any intermediate polynomial.
pub const DEFAULT_MONOMIAL_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("variable index X{index} out of range 1..={nvars}")]
    VarIndexOutOfRange { index: usize, nvars: usize },
    #[error("monomial budget exceeded: {size} terms > limit {limit}")]
    BudgetExceeded { size: usize, limit: usize },
}

/// Exponent vector `(e1, ..., en)` standing for `X1^e1 * ... * Xn^en`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // graded first, then lex with X1 most significant
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "X{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Coefficient::one())
    }

    pub fn constant(nvars: usize, c: Coefficient) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(nvars), c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_int(nvars: usize, k: i64) -> Self {
        Self::constant(nvars, Coefficient::from_integer(BigInt::from(k)))
    }

    /// The formal variable `X_index`, with `index` counted from 1.
    pub fn var(nvars: usize, index: usize) -> Result<Self, PolyError> {
        if index == 0 || index > nvars {
            return Err(PolyError::VarIndexOutOfRange { index, nvars });
        }
        let mut exps = vec![0; nvars];
        exps[index - 1] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), Coefficient::one());
        Ok(Polynomial { nvars, terms })
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, Coefficient)>,
    {
        let mut map: BTreeMap<Monomial, Coefficient> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(PolyError::VarCountMismatch {
                    left: nvars,
                    right: m.nvars(),
                });
            }
            *map.entry(m).or_insert_with(Coefficient::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Polynomial { nvars, terms: map })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff every coefficient vanishes, i.e. the term map is empty.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (including zero), else `None`.
    pub fn as_constant(&self) -> Option<Coefficient> {
        match self.terms.len() {
            0 => Some(Coefficient::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coefficient {
        self.terms.get(m).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    fn check_nvars(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    fn check_budget(self, budget: usize) -> Result<Self, PolyError> {
        if self.terms.len() > budget {
            return Err(PolyError::BudgetExceeded {
                size: self.terms.len(),
                limit: budget,
            });
        }
        Ok(self)
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.add_within(other, DEFAULT_MONOMIAL_BUDGET)
    }

    pub fn add_within(&self, other: &Self, budget: usize) -> Result<Self, PolyError> {
        self.check_nvars(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(acc) => {
                    *acc += c;
                    if acc.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms,
        }
        .check_budget(budget)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.sub_within(other, DEFAULT_MONOMIAL_BUDGET)
    }

    pub fn sub_within(&self, other: &Self, budget: usize) -> Result<Self, PolyError> {
        self.add_within(&other.neg(), budget)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Coefficient) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.mul_within(other, DEFAULT_MONOMIAL_BUDGET)
    }

    pub fn mul_within(&self, other: &Self, budget: usize) -> Result<Self, PolyError> {
        self.check_nvars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let mut acc: HashMap<Monomial, Coefficient> =
            HashMap::with_capacity(self.len().saturating_mul(other.len()).min(budget + 1));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Coefficient::zero) += ca * cb;
            }
            if acc.len() > budget.saturating_mul(4) {
                // bail out early instead of materializing a huge accumulator
                return Err(PolyError::BudgetExceeded {
                    size: acc.len(),
                    limit: budget,
                });
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial {
            nvars: self.nvars,
            terms,
        }
        .check_budget(budget)
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: u32) -> Result<Self, PolyError> {
        self.pow_within(k, DEFAULT_MONOMIAL_BUDGET)
    }

    pub fn pow_within(&self, mut k: u32, budget: usize) -> Result<Self, PolyError> {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_within(&base, budget)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_within(&base, budget)?;
            }
        }
        Ok(result)
    }

    /// Formal partial derivative with respect to `X_index` (1-based).
    pub fn partial(&self, index: usize) -> Result<Self, PolyError> {
        if index == 0 || index > self.nvars {
            return Err(PolyError::VarIndexOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let k = index - 1;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[k] = e - 1;
            terms.insert(
                Monomial(exps),
                c * Coefficient::from_integer(BigInt::from(e)),
            );
        }
        Ok(Polynomial {
            nvars: self.nvars,
            terms,
        })
    }

    /// Exact value at a rational point. The point must assign all `nvars`
    /// variables.
    pub fn eval(&self, point: &[Coefficient]) -> Coefficient {
        assert_eq!(
            point.len(),
            self.nvars,
            "evaluation point must assign every variable"
        );
        let mut powers: Vec<Vec<Coefficient>> = vec![vec![Coefficient::one()]; self.nvars];
        let mut sum = Coefficient::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &point[i];
                    table.push(next);
                }
                value *= &table[e as usize];
            }
            sum += value;
        }
        sum
    }

    /// Least common multiple of all coefficient denominators (1 for zero).
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Text rendering: constant term first, increasing total degree, ties
    /// broken with `X1` before `X2`. Coefficient 1 is elided.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut ordered: Vec<(&Monomial, &Coefficient)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| b.0.cmp(&a.0)));
        let mut out = String::new();
        for (idx, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&magnitude.to_string());
            } else if magnitude.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{magnitude}*{m}"));
            }
        }
        out
    }

    pub fn to_json_terms(&self) -> Vec<PolyTermJson> {
        self.terms()
            .map(|(m, c)| PolyTermJson {
                exponents: m.0.clone(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(nvars: usize, terms: &[PolyTermJson]) -> Result<Self, PolyJsonError> {
        let mut pairs = Vec::with_capacity(terms.len());
        for t in terms {
            if t.exponents.len() != nvars {
                return Err(PolyJsonError::Arity {
                    expected: nvars,
                    found: t.exponents.len(),
                });
            }
            let num: BigInt = t
                .num
                .parse()
                .map_err(|_| PolyJsonError::BadInteger(t.num.clone()))?;
            let den: BigInt = t
                .den
                .parse()
                .map_err(|_| PolyJsonError::BadInteger(t.den.clone()))?;
            if den.is_zero() {
                return Err(PolyJsonError::ZeroDenominator);
            }
            pairs.push((Monomial(t.exponents.clone()), Coefficient::new(num, den)));
        }
        Ok(Self::from_terms(nvars, pairs).expect("arity checked above"))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(serializer)
    }
}

/// One entry of the polynomial JSON encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub exponents: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyJsonError {
    #[error("exponent vector has length {found}, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("not an integer: {0:?}")]
    BadInteger(String),
    #[error("zero denominator")]
    ZeroDenominator,
}
