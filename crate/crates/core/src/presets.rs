//! Built-in example manifolds: two-generator presentations of closed
//! hyperbolic 3-manifolds together with their known trace-field polynomials.

use crate::arith::UniPoly;
use crate::error::{Error, Result};
use crate::presentation::{parse_presentation, GroupPresentation};

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    /// `None` when only the trace field is known.
    pub presentation: Option<&'static str>,
    /// Trace-field polynomial, ascending integer coefficients.
    pub trace_field: &'static [i64],
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "weeks",
        description: "Weeks manifold m003(-3,1)",
        presentation: Some("gens: a b; rels: ababaBa^2B, bababAb^2A"),
        trace_field: &[-1, -1, 0, 1],
    },
    Preset {
        name: "meyerhoff",
        description: "Meyerhoff manifold m004(5,1)",
        presentation: Some("gens: a b; rels: aBAbABabb, aBAbaaaaaabAB"),
        trace_field: &[-1, 3, 1, -3, 1],
    },
    Preset {
        name: "m010m12",
        description: "m010(-1,2)",
        presentation: Some("gens: a b; rels: aBa^3Babab, ab^2A^2b^2aB"),
        trace_field: &[4, 0, -2, 0, 1],
    },
    Preset {
        name: "m003m43",
        description: "m003(-4,3)",
        presentation: Some("gens: a b; rels: a^2bAb^3Ab, aba^2B^2a^2b"),
        trace_field: &[1, 2, -2, -1, 1],
    },
    Preset {
        name: "m003m34",
        description: "m003(-3,4)",
        presentation: Some("gens: a b; rels: ab^3abA^2b, abABAbabABa^2b^2a^2BAb"),
        trace_field: &[-1, 0, -1, 0, 0, 0, 1],
    },
    Preset {
        name: "m004m61",
        description: "m004(6,1), trace field only",
        presentation: None,
        trace_field: &[-4, 0, 14, 0, -7, 0, 1],
    },
];

/// Presets that carry a presentation.
pub const PRESENTED: &[&str] = &["weeks", "meyerhoff", "m010m12", "m003m43", "m003m34"];

pub fn find(name: &str) -> Result<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!(
            "unknown preset '{name}' (known: {})",
            PRESETS.iter().map(|p| p.name).collect::<Vec<_>>().join(", ")
        ),
    })
}

pub fn presentation(name: &str) -> Result<GroupPresentation> {
    let p = find(name)?;
    match p.presentation {
        Some(text) => parse_presentation(text),
        None => Err(Error::Parse {
            pos: 0,
            msg: format!("preset '{name}' has no known presentation; only its trace field is tabulated"),
        }),
    }
}

pub fn trace_field(name: &str) -> Result<UniPoly> {
    Ok(UniPoly::from_ints(find(name)?.trace_field))
}
