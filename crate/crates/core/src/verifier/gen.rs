//! Seeded random generation of terms, contexts and SMF trees.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::{Coefficient, Monomial, Polynomial};
use crate::smf::SmfNode;
use crate::term::{Context, Frame, MeadowTerm};

/// Relative constructor weights. The `diff` weight is halved at every
/// level below the root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeWeights {
    pub zero: f64,
    pub one: f64,
    pub var: f64,
    pub numeral: f64,
    pub add: f64,
    pub mul: f64,
    pub neg: f64,
    pub inv: f64,
    pub diff: f64,
}

impl Default for NodeWeights {
    fn default() -> Self {
        NodeWeights {
            zero: 0.6,
            one: 1.0,
            var: 4.0,
            numeral: 0.6,
            add: 2.0,
            mul: 2.0,
            neg: 0.8,
            inv: 1.2,
            diff: 1.2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Node {
    Zero,
    One,
    Var,
    Numeral,
    Add,
    Mul,
    Neg,
    Inv,
    Diff,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermGen {
    pub seed: u64,
    pub nvars: usize,
    pub max_depth: usize,
    pub weights: NodeWeights,
}

pub const DEFAULT_MAX_DEPTH: usize = 5;

/// Stable 64-bit tag for a label, used to give every check its own stream.
pub fn label_salt(label: &str) -> u64 {
    // FNV-1a
    label.bytes().fold(0xcbf2_9ce4_8422_2325_u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

impl TermGen {
    pub fn new(nvars: usize, seed: u64) -> Self {
        TermGen {
            seed,
            nvars,
            max_depth: DEFAULT_MAX_DEPTH,
            weights: NodeWeights::default(),
        }
    }

    pub fn with_max_depth(mut self, max_depth: usize) -> Self {
        self.max_depth = max_depth;
        self
    }

    /// Independent, reproducible stream for trial `trial` of the check
    /// labelled by `salt`.
    pub fn rng(&self, salt: u64, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ salt);
        rng.set_stream(trial as u64);
        rng
    }

    pub fn var<R: Rng>(&self, rng: &mut R) -> MeadowTerm {
        MeadowTerm::Var(rng.gen_range(1..=self.nvars))
    }

    /// Random metavariable-free term of depth at most `max_depth`.
    pub fn term<R: Rng>(&self, rng: &mut R, max_depth: usize) -> MeadowTerm {
        self.term_at(rng, 0, max_depth)
    }

    fn term_at<R: Rng>(&self, rng: &mut R, level: usize, max_depth: usize) -> MeadowTerm {
        let w = &self.weights;
        let mut choices = vec![
            (Node::Zero, w.zero),
            (Node::One, w.one),
            (Node::Var, w.var),
            (Node::Numeral, w.numeral),
        ];
        if level < max_depth {
            let diff = w.diff * 0.5_f64.powi(level as i32);
            choices.extend([
                (Node::Add, w.add),
                (Node::Mul, w.mul),
                (Node::Neg, w.neg),
                (Node::Inv, w.inv),
                (Node::Diff, diff),
            ]);
        }
        let node = choices
            .choose_weighted(rng, |(_, weight)| *weight)
            .map(|(n, _)| *n)
            .unwrap_or(Node::Var);
        let sub = |rng: &mut R| self.term_at(rng, level + 1, max_depth);
        match node {
            Node::Zero => MeadowTerm::Zero,
            Node::One => MeadowTerm::One,
            Node::Var => self.var(rng),
            Node::Numeral => {
                let k = MeadowTerm::numeral(rng.gen_range(2..=9));
                if level + k.depth() <= max_depth {
                    k
                } else {
                    MeadowTerm::One
                }
            }
            Node::Add => {
                let a = sub(rng);
                MeadowTerm::add(a, sub(rng))
            }
            Node::Mul => {
                let a = sub(rng);
                MeadowTerm::mul(a, sub(rng))
            }
            Node::Neg => MeadowTerm::neg(sub(rng)),
            Node::Inv => MeadowTerm::inv(sub(rng)),
            Node::Diff => {
                let i = rng.gen_range(1..=self.nvars);
                MeadowTerm::diff(i, sub(rng))
            }
        }
    }

    /// Random one-hole context with at most `max_depth` layers; side terms
    /// are kept shallow.
    pub fn context<R: Rng>(&self, rng: &mut R, max_depth: usize) -> Context {
        let layers = rng.gen_range(0..=max_depth);
        let side_depth = 2;
        let frames = (0..layers)
            .map(|_| match rng.gen_range(0..7) {
                0 => Frame::AddLeft(self.term(rng, side_depth)),
                1 => Frame::AddRight(self.term(rng, side_depth)),
                2 => Frame::MulLeft(self.term(rng, side_depth)),
                3 => Frame::MulRight(self.term(rng, side_depth)),
                4 => Frame::Neg,
                5 => Frame::Inv,
                _ => Frame::Diff(rng.gen_range(1..=self.nvars)),
            })
            .collect();
        Context::new(frames)
    }

    /// Random polynomial with small integer coefficients; zero with
    /// probability about `zero_bias`.
    pub fn polynomial<R: Rng>(&self, rng: &mut R, zero_bias: f64) -> Polynomial {
        if rng.gen_bool(zero_bias) {
            return Polynomial::zero(self.nvars);
        }
        let terms = rng.gen_range(1..=3);
        let pairs = (0..terms).map(|_| {
            let exps: Vec<u32> = (0..self.nvars).map(|_| rng.gen_range(0..=2)).collect();
            let c: i64 = rng.gen_range(-5..=5);
            (
                Monomial::from_exponents(exps),
                Coefficient::from_integer(c.into()),
            )
        });
        let pairs: Vec<_> = pairs.collect();
        let p = Polynomial::from_terms(self.nvars, pairs).expect("arity matches");
        if p.is_zero() {
            Polynomial::one(self.nvars)
        } else {
            p
        }
    }

    /// Random SMF tree of level at most `max_level`.
    pub fn smf<R: Rng>(&self, rng: &mut R, max_level: usize) -> SmfNode {
        if max_level == 0 || rng.gen_bool(0.3) {
            return SmfNode::level0(self.polynomial(rng, 0.15), self.polynomial(rng, 0.1));
        }
        SmfNode::guard(
            self.polynomial(rng, 0.25),
            self.smf(rng, max_level - 1),
            self.smf(rng, max_level - 1),
        )
    }

    /// Deterministic batch of `count` terms for seed-level reproducibility.
    pub fn terms(&self, salt: u64, count: usize) -> Vec<MeadowTerm> {
        (0..count)
            .map(|i| self.term(&mut self.rng(salt, i), self.max_depth))
            .collect()
    }
}
