//! The axioms and identities the verifier checks, written in concrete
//! syntax and parsed on construction.

use std::fmt;

use crate::syntax::parse_equation;
use crate::term::Equation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// Commutative ring with unit, Refl and RIL.
    Md,
    /// Identities derivable from the meadow axioms.
    Derived,
    /// Differential axioms D1..D5, the inverse-derivative identity and the
    /// pseudo-unit commutation used for propagation.
    De,
    Propagation,
    Cancellation,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Md,
        Suite::Derived,
        Suite::De,
        Suite::Propagation,
        Suite::Cancellation,
    ];

    pub fn parse(name: &str) -> Option<Vec<Suite>> {
        Some(match name {
            "md" => vec![Suite::Md],
            "derived" => vec![Suite::Derived],
            "de" => vec![Suite::De],
            "propagation" => vec![Suite::Propagation],
            "cancellation" => vec![Suite::Cancellation],
            "all" => Suite::ALL.to_vec(),
            _ => return None,
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Md => "md",
            Suite::Derived => "derived",
            Suite::De => "de",
            Suite::Propagation => "propagation",
            Suite::Cancellation => "cancellation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub suite: Suite,
    pub equation: Equation,
}

const MD: [(&str, &str); 10] = [
    ("add-assoc", "(x + y) + z = x + (y + z)"),
    ("add-comm", "x + y = y + x"),
    ("add-zero", "x + 0 = x"),
    ("add-inverse", "x + (-x) = 0"),
    ("mul-assoc", "(x * y) * z = x * (y * z)"),
    ("mul-comm", "x * y = y * x"),
    ("mul-one", "1 * x = x"),
    ("distrib", "x * (y + z) = x * y + x * z"),
    ("Refl", "(x^-1)^-1 = x"),
    ("RIL", "x * (x * x^-1) = x"),
];

const DERIVED_IDENTITIES: [(&str, &str); 6] = [
    ("inv-zero", "0^-1 = 0"),
    ("mul-zero", "0 * x = 0"),
    ("inv-neg", "(-x)^-1 = -(x^-1)"),
    ("mul-neg", "x * -y = -(x * y)"),
    ("inv-mul", "(x * y)^-1 = x^-1 * y^-1"),
    ("neg-neg", "-(-x) = x"),
];

fn parsed(name: String, src: &str, nvars: usize) -> Equation {
    parse_equation(&name, src, Some(nvars))
        .unwrap_or_else(|e| panic!("catalog entry {name} does not parse: {}", e.render(src)))
}

/// The ten meadow axioms.
pub fn md_axioms() -> Vec<Equation> {
    MD.iter()
        .map(|(name, src)| parsed(name.to_string(), src, 1))
        .collect()
}

pub fn derived_identities() -> Vec<Equation> {
    DERIVED_IDENTITIES
        .iter()
        .map(|(name, src)| parsed(name.to_string(), src, 1))
        .collect()
}

/// D1..D3 for every `i`, then `n` D4 and `n(n-1)` D5 instances, the
/// inverse-derivative identity and the pseudo-unit commutation
/// `d/dXi(1_t * r) = 1_t * d/dXi(r)`.
pub fn de_axioms(nvars: usize) -> Vec<Equation> {
    let mut out = Vec::new();
    let schemes = [
        ("D1", "D[{i}](x + y) = D[{i}](x) + D[{i}](y)"),
        ("D2", "D[{i}](x * y) = D[{i}](x) * y + x * D[{i}](y)"),
        ("D3", "D[{i}](x * x^-1) = 0"),
    ];
    for (name, scheme) in schemes {
        for i in 1..=nvars {
            let src = scheme.replace("{i}", &i.to_string());
            out.push(parsed(format!("{name}[i={i}]"), &src, nvars));
        }
    }
    for i in 1..=nvars {
        out.push(parsed(
            format!("D4[i={i}]"),
            &format!("D[{i}](X{i}) = 1"),
            nvars,
        ));
    }
    for i in 1..=nvars {
        for j in (1..=nvars).filter(|&j| j != i) {
            out.push(parsed(
                format!("D5[i={i},j={j}]"),
                &format!("D[{i}](X{j}) = 0"),
                nvars,
            ));
        }
    }
    for i in 1..=nvars {
        out.push(parsed(
            format!("Prop[i={i}]"),
            &format!("D[{i}](1/x) = -(1/x^2) * D[{i}](x)"),
            nvars,
        ));
    }
    for i in 1..=nvars {
        out.push(parsed(
            format!("Cor1[i={i}]"),
            &format!("D[{i}]((t/t) * r) = (t/t) * D[{i}](r)"),
            nvars,
        ));
    }
    out
}

pub fn catalog(nvars: usize) -> Vec<CatalogEntry> {
    let tag = |suite: Suite| move |equation: Equation| CatalogEntry { suite, equation };
    md_axioms()
        .into_iter()
        .map(tag(Suite::Md))
        .chain(derived_identities().into_iter().map(tag(Suite::Derived)))
        .chain(de_axioms(nvars).into_iter().map(tag(Suite::De)))
        .collect()
}

/// Equations that must fail: the field inverse law stated as an equation,
/// and the inverse-derivative identity with its sign dropped.
pub fn negative_controls() -> Vec<Equation> {
    vec![
        parsed("IL-as-equation".into(), "x * x^-1 = 1", 1),
        parsed(
            "Prop-sign-flipped[i=1]".into(),
            "D[1](1/x) = (1/x^2) * D[1](x)",
            1,
        ),
    ]
}
