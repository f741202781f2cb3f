//! End-to-end analysis of one presentation, collected into a serializable
//! report. Polynomials are stored as ascending coefficient strings so the
//! report is exact.

use serde::{Deserialize, Serialize};

use crate::arith::real::Real;
use crate::arith::UniPoly;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, filter_irreducible, solve_zero_dim_with, AlgebraicComponent, MonomialOrder, SolveOptions};
use crate::holonomy::{solve_holonomy, HolonomyReport};
use crate::number_field::{field_isomorphism, invariant_trace_field, Isomorphism, NumberField, Subfield};
use crate::presentation::{abelianization, GroupPresentation};
use crate::trace::{char_ideal, reducibility_locus};
use crate::zeta::{compare_zeta, special_value_check, ZetaComparisonReport};

pub const SCHEMA_VERSION: u32 = 1;

/// Prime bound of the Euler product used for special values.
pub const SPECIAL_VALUE_PRIME_BOUND: u64 = 100_000;

fn poly_json(p: &UniPoly) -> Vec<String> {
    p.to_strings()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub field_poly: Vec<String>,
    pub coords: Vec<Vec<String>>,
    pub irreducible: bool,
    pub multiplicity_free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldReport {
    pub poly: Vec<String>,
    pub degree: usize,
    pub discriminant: String,
    pub signature: (usize, usize),
}

impl FieldReport {
    fn new(k: &NumberField) -> Self {
        FieldReport {
            poly: poly_json(&k.h),
            degree: k.degree,
            discriminant: k.disc_h.to_string(),
            signature: k.signature,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantFieldReport {
    pub field: FieldReport,
    /// Image of the subfield generator in the trace field.
    pub embedding: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCountCheck {
    pub trace_degree: usize,
    pub invariant_degree: usize,
    pub h1_c2_order: u64,
    /// `[K : invK] = #H¹(π, C₂)`.
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsomorphismVerdict {
    Certified,
    FingerprintOnly,
    NotIsomorphic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceCheck {
    pub reference_poly: Vec<String>,
    pub verdict: IsomorphismVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialValueReport {
    pub volume: String,
    pub zeta_2: String,
    pub ratio: String,
    pub nearest_rational: String,
    pub residual: String,
    pub warning: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HolonomySolutionReport {
    pub base_field: Vec<String>,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub r: Vec<String>,
    pub x_min_poly: Vec<String>,
    pub y_min_poly: Vec<String>,
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterClassReport {
    pub solutions: Vec<usize>,
    pub field_poly: Vec<String>,
    pub character: Vec<Vec<String>>,
    pub candidate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HolonomyBlock {
    pub solutions: Vec<HolonomySolutionReport>,
    pub classes: Vec<CharacterClassReport>,
}

impl HolonomyBlock {
    pub fn new(rep: &HolonomyReport) -> Self {
        HolonomyBlock {
            solutions: rep
                .solutions
                .iter()
                .map(|s| HolonomySolutionReport {
                    base_field: poly_json(&s.base_field.h),
                    x: poly_json(&s.x),
                    y: poly_json(&s.y),
                    r: poly_json(&s.r),
                    x_min_poly: poly_json(&s.x_min_poly()),
                    y_min_poly: poly_json(&s.y_min_poly()),
                    irreducible: s.is_irreducible,
                })
                .collect(),
            classes: rep
                .classes
                .iter()
                .map(|c| CharacterClassReport {
                    solutions: c.solutions.clone(),
                    field_poly: poly_json(&c.character.field_poly),
                    character: c.character.coords.iter().map(poly_json).collect(),
                    candidate: c.candidate,
                })
                .collect(),
        }
    }
}

/// Every stage is optional so that partial runs share one format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub schema: u32,
    pub presentation: String,
    pub components: Vec<ComponentReport>,
    /// Indices into `components`.
    pub canonical_candidates: Vec<usize>,
    pub canonical: Option<usize>,
    pub trace_field: Option<FieldReport>,
    pub reference: Option<ReferenceCheck>,
    pub invariant_factors: Vec<i64>,
    pub h1_c2_order: u64,
    pub invariant_trace_field: Option<InvariantFieldReport>,
    pub component_count: Option<ComponentCountCheck>,
    pub zeta: Option<ZetaComparisonReport>,
    pub special_value: Option<SpecialValueReport>,
    pub holonomy: Option<HolonomyBlock>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    CharacterVariety,
    TraceField,
    Zeta,
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub stage: Stage,
    pub prime_bound: u64,
    /// Forces the canonical component (index into the component list).
    pub component: Option<usize>,
    /// Volume for the special-value check.
    pub volume: Option<Real>,
    /// Trace-field polynomial to certify against.
    pub reference: Option<UniPoly>,
    pub seed: u64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            stage: Stage::Zeta,
            prime_bound: 100,
            component: None,
            volume: None,
            reference: None,
            seed: SolveOptions::default().seed,
        }
    }
}

/// Components of the character variety, with the irreducible ones flagged.
pub fn character_variety(pres: &GroupPresentation, seed: u64) -> Result<Vec<(AlgebraicComponent, bool)>> {
    let ideal = char_ideal(pres)?;
    log::info!("character ideal: {} generators", ideal.generators.len());
    let gb = buchberger(&ideal.generators, &MonomialOrder::grevlex(3));
    log::info!("Gröbner basis: {} elements", gb.polys.len());
    // prefer z = tr ab, then x, as the field generator
    let opts = SolveOptions { seed, prefer: vec![2, 0, 1], ..Default::default() };
    let comps = solve_zero_dim_with(&gb, &opts)?;
    let irreducible = filter_irreducible(&comps, &reducibility_locus());
    log::info!("{} components, {} irreducible", comps.len(), irreducible.len());
    Ok(comps.into_iter().map(|c| {
        let irr = irreducible.contains(&c);
        (c, irr)
    }).collect())
}

/// Irreducible components whose trace field, or failing that invariant
/// trace field, has exactly one complex place. A lone irreducible component
/// is always the candidate.
pub fn canonical_candidates(comps: &[(AlgebraicComponent, bool)], h1_c2_order: u64) -> Vec<usize> {
    let irr: Vec<usize> = comps.iter().enumerate().filter(|(_, c)| c.1).map(|(i, _)| i).collect();
    if irr.len() <= 1 {
        return irr;
    }
    irr.into_iter()
        .filter(|&i| {
            let Ok(k) = NumberField::new(comps[i].0.field_poly.clone()) else { return false };
            k.complex_places() == 1
                || invariant_trace_field(&k, &comps[i].0, h1_c2_order).is_ok_and(|s| s.field.complex_places() == 1)
        })
        .collect()
}

fn verdict(iso: &Isomorphism) -> IsomorphismVerdict {
    match iso {
        Isomorphism::Certified { .. } => IsomorphismVerdict::Certified,
        Isomorphism::FingerprintOnly => IsomorphismVerdict::FingerprintOnly,
        Isomorphism::NotIsomorphic => IsomorphismVerdict::NotIsomorphic,
    }
}

pub fn analyze(pres: &GroupPresentation, opts: &PipelineOptions) -> Result<PipelineReport> {
    let ab = abelianization(pres);
    let comps = character_variety(pres, opts.seed)?;
    let mut report = PipelineReport {
        schema: SCHEMA_VERSION,
        presentation: pres.to_string(),
        components: comps
            .iter()
            .map(|(c, irr)| ComponentReport {
                field_poly: poly_json(&c.field_poly),
                coords: c.coords.iter().map(poly_json).collect(),
                irreducible: *irr,
                multiplicity_free: c.multiplicity_free,
            })
            .collect(),
        canonical_candidates: canonical_candidates(&comps, ab.h1_c2_order),
        canonical: None,
        trace_field: None,
        reference: None,
        invariant_factors: ab.invariant_factors.clone(),
        h1_c2_order: ab.h1_c2_order,
        invariant_trace_field: None,
        component_count: None,
        zeta: None,
        special_value: None,
        holonomy: None,
    };
    if opts.stage == Stage::CharacterVariety {
        return Ok(report);
    }

    let idx = match opts.component {
        Some(i) if i < comps.len() => i,
        Some(i) => return Err(Error::Domain(format!("component {i} out of range (have {})", comps.len()))),
        None => match report.canonical_candidates.as_slice() {
            [i] => *i,
            [] => return Err(Error::Inconsistent("no irreducible zero-dimensional component".into())),
            many => return Err(Error::Ambiguous(many.to_vec())),
        },
    };
    report.canonical = Some(idx);
    let comp = &comps[idx].0;
    let k = NumberField::new(comp.field_poly.clone())?;
    report.trace_field = Some(FieldReport::new(&k));
    if let Some(reference) = &opts.reference {
        let l = NumberField::new(reference.clone())?;
        report.reference = Some(ReferenceCheck {
            reference_poly: poly_json(reference),
            verdict: verdict(&field_isomorphism(&k, &l)),
        });
    }

    let inv: Subfield = invariant_trace_field(&k, comp, ab.h1_c2_order)?;
    log::info!("invariant trace field {}", inv.field.h);
    report.component_count = Some(ComponentCountCheck {
        trace_degree: k.degree,
        invariant_degree: inv.field.degree,
        h1_c2_order: ab.h1_c2_order,
        pass: inv.field.degree as u64 * ab.h1_c2_order == k.degree as u64,
    });
    report.invariant_trace_field =
        Some(InvariantFieldReport { field: FieldReport::new(&inv.field), embedding: poly_json(&inv.embedding) });
    if opts.stage == Stage::TraceField {
        return Ok(report);
    }

    log::info!("comparing local zeta factors for p ≤ {}", opts.prime_bound);
    report.zeta = Some(compare_zeta(comp, &k, opts.prime_bound)?);
    if let Some(volume) = &opts.volume {
        let sv = special_value_check(&inv.field, volume, SPECIAL_VALUE_PRIME_BOUND)?;
        report.special_value = Some(SpecialValueReport {
            volume: volume.to_decimal(12),
            zeta_2: sv.zeta_2.to_decimal(20),
            ratio: sv.ratio.to_decimal(20),
            nearest_rational: sv.nearest_rational.to_string(),
            residual: sv.residual.to_decimal(20),
            warning: sv.warning,
        });
    }
    Ok(report)
}

pub fn holonomy_report(pres: &GroupPresentation) -> Result<PipelineReport> {
    let ab = abelianization(pres);
    let rep = solve_holonomy(pres)?;
    Ok(PipelineReport {
        schema: SCHEMA_VERSION,
        presentation: pres.to_string(),
        components: Vec::new(),
        canonical_candidates: Vec::new(),
        canonical: None,
        trace_field: None,
        reference: None,
        invariant_factors: ab.invariant_factors,
        h1_c2_order: ab.h1_c2_order,
        invariant_trace_field: None,
        component_count: None,
        zeta: None,
        special_value: None,
        holonomy: Some(HolonomyBlock::new(&rep)),
    })
}
