use std::fmt::Write;

use charzeta_core::arith::UniPoly;
use charzeta_core::pipeline::{FieldReport, IsomorphismVerdict, PipelineReport};
use charzeta_core::zeta::Verdict;

fn poly(coeffs: &[String]) -> String {
    UniPoly::from_strings(coeffs).map_or_else(|| format!("{coeffs:?}"), |p| p.to_string())
}

fn field(f: &FieldReport) -> String {
    format!(
        "ℚ[T]/({}), degree {}, disc(h) = {}, signature ({}, {})",
        poly(&f.poly),
        f.degree,
        f.discriminant,
        f.signature.0,
        f.signature.1
    )
}

/// Human-readable rendering of whatever stages the report contains.
pub fn text(r: &PipelineReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "presentation: {}", r.presentation);
    let _ = writeln!(w, "abelianization invariant factors: {:?}, #H¹(π, C₂) = {}", r.invariant_factors, r.h1_c2_order);
    if !r.components.is_empty() {
        let _ = writeln!(w, "components ({}):", r.components.len());
        for (i, c) in r.components.iter().enumerate() {
            let coords: Vec<String> = c.coords.iter().map(|p| poly(p)).collect();
            let _ = writeln!(
                w,
                "  [{i}] {:<12} h = {}   (x, y, z) = ({})",
                if c.irreducible { "irreducible" } else { "reducible" },
                poly(&c.field_poly),
                coords.join(", ")
            );
        }
        let _ = writeln!(w, "canonical candidates: {:?}", r.canonical_candidates);
    }
    if let Some(i) = r.canonical {
        let _ = writeln!(w, "canonical component: [{i}]");
    }
    if let Some(k) = &r.trace_field {
        let _ = writeln!(w, "trace field: {}", field(k));
    }
    if let Some(rc) = &r.reference {
        let verdict = match rc.verdict {
            IsomorphismVerdict::Certified => "isomorphic (certified)",
            IsomorphismVerdict::FingerprintOnly => "splitting fingerprints agree (no certificate)",
            IsomorphismVerdict::NotIsomorphic => "NOT isomorphic",
        };
        let _ = writeln!(w, "tabulated field {}: {verdict}", poly(&rc.reference_poly));
    }
    if let Some(inv) = &r.invariant_trace_field {
        let _ = writeln!(w, "invariant trace field: {}", field(&inv.field));
        let _ = writeln!(w, "  generator ↦ {}", poly(&inv.embedding));
    }
    if let Some(cc) = &r.component_count {
        let _ = writeln!(
            w,
            "[K : invK] = {} / {}, #H¹ = {}: {}",
            cc.trace_degree,
            cc.invariant_degree,
            cc.h1_c2_order,
            if cc.pass { "pass" } else { "FAIL" }
        );
    }
    if let Some(z) = &r.zeta {
        let count = |v: Verdict| z.primes.iter().filter(|c| c.verdict == v).count();
        let _ = writeln!(
            w,
            "zeta comparison, p ≤ {}: {} match, {} mismatch, {} skipped; bad set {:?}",
            z.prime_bound,
            count(Verdict::Match),
            count(Verdict::Mismatch),
            count(Verdict::SkippedBad),
            z.bad_set
        );
        for c in z.primes.iter().filter(|c| c.verdict != Verdict::Match) {
            let _ = writeln!(
                w,
                "  p = {}: {:?}, scheme {:?}, Dedekind {:?}",
                c.p,
                c.verdict,
                c.scheme_factor.as_ref().map(|f| &f.degrees),
                c.dedekind_factor.degrees
            );
        }
        let _ = writeln!(w, "theorem holds: {}", z.theorem_holds);
    }
    if let Some(sv) = &r.special_value {
        let _ = writeln!(w, "special value: ζ(invK, 2) ≈ {}", sv.zeta_2);
        let _ = writeln!(w, "  ratio ≈ {}, nearest rational {}, residual {}", sv.ratio, sv.nearest_rational, sv.residual);
        if let Some(warn) = &sv.warning {
            let _ = writeln!(w, "  warning: {warn}");
        }
    }
    if let Some(h) = &r.holonomy {
        let _ = writeln!(w, "Riley-form solutions ({}):", h.solutions.len());
        for (i, s) in h.solutions.iter().enumerate() {
            let _ = writeln!(
                w,
                "  [{i}] {:<12} field {}: x root of {}, y root of {}, r = {}",
                if s.irreducible { "irreducible" } else { "reducible" },
                poly(&s.base_field),
                poly(&s.x_min_poly).replace('T', "z"),
                poly(&s.y_min_poly).replace('T', "z"),
                poly(&s.r)
            );
        }
        for c in &h.classes {
            let coords: Vec<String> = c.character.iter().map(|p| poly(p)).collect();
            let _ = writeln!(
                w,
                "  character of {:?}: ({}) over ℚ[T]/({}){}",
                c.solutions,
                coords.join(", "),
                poly(&c.field_poly),
                if c.candidate { ", holonomy candidate" } else { "" }
            );
        }
    }
    out
}
