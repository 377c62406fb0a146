//! Model checking of equations and propagation properties against the
//! generic normal-form model.
//!
//! Equations are checked by instantiating their metavariables from a pool
//! that always mixes degenerate elements (`0`, `1`, terms that collapse to
//! zero, pseudo units) with fresh variables and random terms: a check over
//! generic substitutions alone would accept `x * x^-1 = 1`.
//!
//! Trials run in parallel. Every trial draws from its own seeded stream, so
//! reports depend only on `(seed, nvars, trials, max_depth)`.

pub mod catalog;
pub mod gen;

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde_json::Value;
use thiserror::Error;

pub use catalog::{catalog, negative_controls, CatalogEntry, Suite};
pub use gen::{label_salt, NodeWeights, TermGen};

use crate::poly::PolyError;
use crate::report::{CheckMode, CheckReport, Failure};
use crate::syntax::parse_term;
use crate::term::{Context, Equation, Frame, MeadowTerm, TermError};
use crate::ztc::{NormalizeError, Normalizer, RatNF};

pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("equation {name}: {source}")]
    Term { name: String, source: TermError },
    #[error("equation {name} cannot be checked: {source}")]
    Normalize {
        name: String,
        source: NormalizeError,
    },
}

/// Result of a single trial.
enum Outcome {
    Pass,
    Skip,
    Fail(Failure),
}

fn budget_skip(e: &NormalizeError) -> bool {
    matches!(e, NormalizeError::Poly(PolyError::BudgetExceeded { .. }))
}

fn nf_json(nf: &RatNF) -> Value {
    serde_json::to_value(nf).expect("normal form serializes")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verifier {
    pub normalizer: Normalizer,
    pub gen: TermGen,
    pub trials: usize,
}

impl Verifier {
    pub fn new(nvars: usize, seed: u64) -> Self {
        Verifier {
            normalizer: Normalizer::new(nvars),
            gen: TermGen::new(nvars, seed),
            trials: DEFAULT_TRIALS,
        }
    }

    pub fn nvars(&self) -> usize {
        self.normalizer.nvars
    }

    /// Compares both sides; `Ok(None)` when they agree.
    fn compare(
        &self,
        lhs: &MeadowTerm,
        rhs: &MeadowTerm,
    ) -> Result<Option<(RatNF, RatNF)>, NormalizeError> {
        let a = self.normalizer.normalize(lhs)?.nf;
        let b = self.normalizer.normalize(rhs)?.nf;
        Ok(if self.normalizer.nf_eq(&a, &b)? {
            None
        } else {
            Some((a, b))
        })
    }

    fn run_trials<F>(&self, count: usize, trial: F) -> Result<(usize, Vec<Failure>), VerifyError>
    where
        F: Fn(usize) -> Result<Outcome, VerifyError> + Sync,
    {
        let outcomes: Vec<Result<Outcome, VerifyError>> =
            (0..count).into_par_iter().map(&trial).collect();
        let mut skipped = 0;
        let mut failures = Vec::new();
        for outcome in outcomes {
            match outcome? {
                Outcome::Pass => {}
                Outcome::Skip => skipped += 1,
                Outcome::Fail(f) => failures.push(f),
            }
        }
        Ok((skipped, failures))
    }

    /// A generic stand-in for the `k`-th metavariable: distinct variables
    /// first, shifted copies once they run out.
    fn generic_term(&self, k: usize) -> MeadowTerm {
        let n = self.nvars();
        let var = MeadowTerm::Var(k % n + 1);
        match k / n {
            0 => var,
            shift => MeadowTerm::add(var, MeadowTerm::numeral(shift as i64)),
        }
    }

    fn zero_term<R: Rng>(&self, rng: &mut R) -> MeadowTerm {
        let x = self.gen.var(rng);
        let choices = [
            MeadowTerm::sub(x.clone(), x.clone()),
            MeadowTerm::inv(MeadowTerm::mul(x.clone(), MeadowTerm::Zero)),
            MeadowTerm::pseudo_zero(x.clone()),
            MeadowTerm::diff(1, MeadowTerm::pseudo_unit(x.clone())),
            MeadowTerm::sub(MeadowTerm::pseudo_unit(x), MeadowTerm::One),
        ];
        choices.choose(rng).cloned().expect("nonempty")
    }

    fn pseudo_unit<R: Rng>(&self, rng: &mut R) -> MeadowTerm {
        if rng.gen_bool(0.5) {
            MeadowTerm::pseudo_unit(self.gen.var(rng))
        } else {
            MeadowTerm::pseudo_unit(self.gen.term(rng, 2))
        }
    }

    /// Substitution for one trial. Trial 0 is generic, trials 1-4 send
    /// every metavariable to `0`, `1`, a zero-collapsing term and a pseudo
    /// unit respectively, later trials mix the pool per metavariable.
    pub fn substitution(
        &self,
        metas: &[String],
        salt: u64,
        trial: usize,
    ) -> BTreeMap<String, MeadowTerm> {
        let mut rng = self.gen.rng(salt, trial);
        let depth = self.gen.max_depth.saturating_sub(2).max(1);
        metas
            .iter()
            .enumerate()
            .map(|(k, name)| {
                let kind = match trial {
                    0..=4 => trial,
                    _ => *[0, 1, 1, 2, 2, 3, 4, 5, 5, 5, 5, 5]
                        .choose(&mut rng)
                        .expect("nonempty"),
                };
                let value = match kind {
                    0 => self.generic_term(k),
                    1 => MeadowTerm::Zero,
                    2 => MeadowTerm::One,
                    3 => self.zero_term(&mut rng),
                    4 => self.pseudo_unit(&mut rng),
                    _ => {
                        if rng.gen_bool(0.2) {
                            self.gen.var(&mut rng)
                        } else {
                            self.gen.term(&mut rng, depth)
                        }
                    }
                };
                (name.clone(), value)
            })
            .collect()
    }

    /// Checks `eq` on `self.trials` substitutions (one, if it has no
    /// metavariables).
    pub fn check_equation(&self, eq: &Equation) -> Result<CheckReport, VerifyError> {
        let term_err = |source| VerifyError::Term {
            name: eq.name.clone(),
            source,
        };
        eq.lhs.check_indices(self.nvars()).map_err(term_err)?;
        eq.rhs.check_indices(self.nvars()).map_err(term_err)?;
        let metas: Vec<String> = eq.metavars().into_iter().collect();
        let salt = label_salt(&eq.name);
        let (mode, count) = if metas.is_empty() {
            (CheckMode::Symbolic, 1)
        } else {
            (CheckMode::Randomized, self.trials)
        };
        let (skipped, failures) = self.run_trials(count, |trial| {
            let sigma = self.substitution(&metas, salt, trial);
            let (lhs, rhs) = eq.instantiate(&sigma).map_err(term_err)?;
            match self.compare(&lhs, &rhs) {
                Ok(None) => Ok(Outcome::Pass),
                Ok(Some((a, b))) => Ok(Outcome::Fail(Failure {
                    trial,
                    subst: sigma
                        .iter()
                        .map(|(k, v)| (k.clone(), v.to_string()))
                        .collect(),
                    lhs: nf_json(&a),
                    rhs: nf_json(&b),
                })),
                Err(e) if budget_skip(&e) => Ok(Outcome::Skip),
                Err(source) => Err(VerifyError::Normalize {
                    name: eq.name.clone(),
                    source,
                }),
            }
        })?;
        Ok(CheckReport {
            name: eq.name.clone(),
            mode,
            trials: count,
            skipped,
            failures,
            seed: self.gen.seed,
        })
    }

    fn check_propagation(&self, zeros: bool) -> Result<CheckReport, VerifyError> {
        let name = if zeros {
            "propagation-pseudo-zero"
        } else {
            "propagation-pseudo-unit"
        };
        let guard = |t: &MeadowTerm| {
            if zeros {
                MeadowTerm::pseudo_zero(t.clone())
            } else {
                MeadowTerm::pseudo_unit(t.clone())
            }
        };
        let salt = label_salt(name);
        let x = MeadowTerm::Var;
        let n = self.nvars();
        let fixed: Vec<(Context, MeadowTerm, MeadowTerm)> = if zeros {
            vec![
                (
                    Context::new(vec![Frame::Diff(1)]),
                    x(1),
                    MeadowTerm::mul(x(1), x(2.min(n))),
                ),
                (
                    Context::new(vec![Frame::Diff(1)]),
                    MeadowTerm::sub(x(1), x(1)),
                    x(1),
                ),
                (Context::new(vec![Frame::MulLeft(x(2.min(n)))]), x(1), x(1)),
            ]
        } else {
            vec![
                (Context::new(vec![Frame::Diff(1)]), x(2.min(n)), x(1)),
                (
                    Context::hole(),
                    MeadowTerm::add(x(1), MeadowTerm::One),
                    x(1),
                ),
                (
                    Context::new(vec![Frame::Diff(1), Frame::Inv]),
                    MeadowTerm::sub(x(1), x(1)),
                    x(1),
                ),
            ]
        };
        let depth = self.gen.max_depth;
        let side = depth.saturating_sub(2).max(1);
        let (skipped, failures) = self.run_trials(self.trials, |trial| {
            let (c, t, r) = match fixed.get(trial) {
                Some(case) => case.clone(),
                None => {
                    let mut rng = self.gen.rng(salt, trial);
                    let t = self.gen.term(&mut rng, side);
                    let r = self.gen.term(&mut rng, side);
                    let c = self.gen.context(&mut rng, depth);
                    (c, t, r)
                }
            };
            let g = guard(&t);
            let lhs = MeadowTerm::mul(g.clone(), c.plug(r.clone()));
            let rhs = MeadowTerm::mul(g.clone(), c.plug(MeadowTerm::mul(g, r.clone())));
            Ok(match self.compare(&lhs, &rhs) {
                Ok(None) => Outcome::Pass,
                Ok(Some((a, b))) => Outcome::Fail(Failure {
                    trial,
                    subst: [
                        ("C".to_string(), c.to_string()),
                        ("r".to_string(), r.to_string()),
                        ("t".to_string(), t.to_string()),
                    ]
                    .into(),
                    lhs: nf_json(&a),
                    rhs: nf_json(&b),
                }),
                Err(_) => Outcome::Skip,
            })
        })?;
        Ok(CheckReport {
            name: name.to_string(),
            mode: CheckMode::Randomized,
            trials: self.trials,
            skipped,
            failures,
            seed: self.gen.seed,
        })
    }

    /// `1_t * C[r] = 1_t * C[1_t * r]` for random `t`, `r` and contexts `C`.
    pub fn check_propagation_units(&self) -> Result<CheckReport, VerifyError> {
        self.check_propagation(false)
    }

    /// `0_t * C[r] = 0_t * C[0_t * r]` for random `t`, `r` and contexts `C`.
    pub fn check_propagation_zeros(&self) -> Result<CheckReport, VerifyError> {
        self.check_propagation(true)
    }

    /// Draws a term that does not collapse to zero, or `None` after a few
    /// attempts.
    pub fn nonzero_term<R: Rng>(&self, rng: &mut R, depth: usize) -> Option<MeadowTerm> {
        (0..20).find_map(|_| {
            let t = self.gen.term(rng, depth);
            matches!(self.normalizer.is_ztc_zero(&t), Ok(false)).then_some(t)
        })
    }

    /// Cancellation `t != 0 and t*u = t*v  =>  u = v`, plus `t * t^-1 = 1`
    /// for the same nonzero `t`. `v` is either `u` or `u + w * 0_t`.
    pub fn check_cancellation(&self) -> Result<CheckReport, VerifyError> {
        let name = "cancellation";
        let salt = label_salt(name);
        let depth = self.gen.max_depth;
        let x = MeadowTerm::Var;
        let n = self.nvars();
        let fixed = [
            (x(1), x(2.min(n)), x(2.min(n))),
            (
                MeadowTerm::pseudo_unit(x(1)),
                x(1),
                MeadowTerm::add(
                    x(1),
                    MeadowTerm::mul(x(n), MeadowTerm::pseudo_zero(MeadowTerm::pseudo_unit(x(1)))),
                ),
            ),
        ];
        let (skipped, failures) = self.run_trials(self.trials, |trial| {
            let (t, u, v) = match fixed.get(trial) {
                Some(case) => case.clone(),
                None => {
                    let mut rng = self.gen.rng(salt, trial);
                    let Some(t) = self.nonzero_term(&mut rng, depth) else {
                        return Ok(Outcome::Skip);
                    };
                    let u = self.gen.term(&mut rng, depth.saturating_sub(2).max(1));
                    let v = if trial % 2 == 0 {
                        u.clone()
                    } else {
                        let w = self.gen.term(&mut rng, 2);
                        MeadowTerm::add(
                            u.clone(),
                            MeadowTerm::mul(w, MeadowTerm::pseudo_zero(t.clone())),
                        )
                    };
                    (t, u, v)
                }
            };
            let subst = || -> BTreeMap<String, String> {
                [
                    ("t".to_string(), t.to_string()),
                    ("u".to_string(), u.to_string()),
                    ("v".to_string(), v.to_string()),
                ]
                .into()
            };
            let premise = self.compare(
                &MeadowTerm::mul(t.clone(), u.clone()),
                &MeadowTerm::mul(t.clone(), v.clone()),
            );
            match premise {
                Ok(None) => {}
                _ => return Ok(Outcome::Skip),
            }
            let checks = [
                (u.clone(), v.clone()),
                (MeadowTerm::pseudo_unit(t.clone()), MeadowTerm::One),
            ];
            for (lhs, rhs) in checks {
                match self.compare(&lhs, &rhs) {
                    Ok(None) => {}
                    Ok(Some((a, b))) => {
                        return Ok(Outcome::Fail(Failure {
                            trial,
                            subst: subst(),
                            lhs: nf_json(&a),
                            rhs: nf_json(&b),
                        }))
                    }
                    Err(_) => return Ok(Outcome::Skip),
                }
            }
            Ok(Outcome::Pass)
        })?;
        Ok(CheckReport {
            name: name.to_string(),
            mode: CheckMode::Randomized,
            trials: self.trials,
            skipped,
            failures,
            seed: self.gen.seed,
        })
    }

    /// One report per catalog entry in the selected suites, followed by the
    /// property checks.
    pub fn run_suites(&self, suites: &[Suite]) -> Result<Vec<CheckReport>, VerifyError> {
        let mut reports = Vec::new();
        for entry in catalog(self.nvars()) {
            if suites.contains(&entry.suite) {
                reports.push(self.check_equation(&entry.equation)?);
            }
        }
        if suites.contains(&Suite::Propagation) {
            reports.push(self.check_propagation_units()?);
            reports.push(self.check_propagation_zeros()?);
        }
        if suites.contains(&Suite::Cancellation) {
            reports.push(self.check_cancellation()?);
        }
        Ok(reports)
    }
}

/// Every suite with default trials and depth.
pub fn run_full_suite(nvars: usize, seed: u64) -> Result<Vec<CheckReport>, VerifyError> {
    Verifier::new(nvars, seed).run_suites(&Suite::ALL)
}

/// Parses a term for a check and panics on malformed literals; used for the
/// fixed cases above and in tests.
pub fn term(src: &str, nvars: usize) -> MeadowTerm {
    parse_term(src, Some(nvars)).unwrap_or_else(|e| panic!("{}", e.render(src)))
}
