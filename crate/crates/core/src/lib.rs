//! Differential meadows: terms over a zero-totalised field with partial
//! derivations, a decision procedure for their equational theory based on
//! rational normal forms, and tools to test axioms against it.
//!
//! ```
//! use meadow_core::{parse_term, Normalizer};
//!
//! let n = Normalizer::new(3);
//! let a = parse_term("1/X1 + 1/X2", Some(3)).unwrap();
//! let b = parse_term("(X1 + X2)/(X1 * X2)", Some(3)).unwrap();
//! assert!(n.decide_eq(&a, &b).unwrap());
//! ```

pub mod oracle;
pub mod poly;
pub mod report;
pub mod smf;
pub mod syntax;
pub mod term;
pub mod verifier;
pub mod ztc;

pub use oracle::{eval_term, EvalError, Point, PrimeField, Rationals, ZeroTotalField};
pub use poly::{Coefficient, Monomial, PolyError, Polynomial, DEFAULT_MONOMIAL_BUDGET};
pub use report::{CheckMode, CheckReport, Failure};
pub use smf::{SmfError, SmfNode};
pub use syntax::{parse_equation, parse_term, print_term, ParseError, SourceSpan};
pub use term::{Context, Equation, Frame, MeadowTerm, TermError};
pub use verifier::{run_full_suite, Suite, Verifier};
pub use ztc::{BadSet, NormalizeError, Normalized, Normalizer, RatNF};
