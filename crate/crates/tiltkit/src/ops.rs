//! The subcommands as functions from a JSON payload to a JSON result.

use serde_json::{json, Value};

use tiltkit_core::b::{add, butterfly_equal, classify_morphism, cokernel_b, compose, kernel_b, long_exact_sequence, BObject, Butterfly};
use tiltkit_core::ctilt::{h_functor, qprime, CObject};
use tiltkit_core::decorated::{cone, dec_cohomology, free_cover_complex, hh_functor, is_compatible, ChainComplexA, DecComplex, DecMap};
use tiltkit_core::dg::{
    dg_quotient, enrich_check, hom_complex_dec, hom_group_b, rhom, semi_projective_replace, strict_hom_complex,
};
use tiltkit_core::tot::{g_inverse, link, roof, tot, BComplex};
use tiltkit_core::{hom_group, FgGroup, GroupMap};

use crate::error::CliError;
use crate::json::{canonical, matrix_of, strings, Json, Rows};

fn field(v: &Value, name: &str) -> Result<Value, CliError> {
    v.get(name).cloned().ok_or_else(|| CliError::Invalid(format!("missing field {name:?}")))
}

fn pair<A: Json, B: Json>(v: &Value, a: &str, b: &str) -> Result<(A, B), CliError> {
    Ok((A::from_value(field(v, a)?)?, B::from_value(field(v, b)?)?))
}

fn b_object_summary(o: &BObject) -> Value {
    let (nf, _) = o.normal_form();
    json!({
        "object": o.to_value(),
        "normal_form": nf.to_value(),
        "h_m1": canonical(o.h_m1().as_group()),
        "h_0": canonical(&o.h_0().0),
    })
}

/// The seven terms followed by the closing zero.
fn arrow_chain(groups: &[FgGroup]) -> String {
    let mut parts: Vec<String> = groups.iter().map(|g| g.to_string()).collect();
    parts.push("0".into());
    parts.join(" → ")
}

pub const COMMANDS: [&str; 31] = [
    "group snf",
    "group hom",
    "b validate",
    "b compose",
    "b add",
    "b equal",
    "b kernel",
    "b cokernel",
    "b classify",
    "b les",
    "dec cohomology",
    "dec compatible",
    "dec cone",
    "dec hh",
    "dec freecover",
    "tot",
    "g",
    "link",
    "roof",
    "c validate",
    "c h",
    "c qprime",
    "dg hom",
    "dg strict-hom",
    "dg rhom",
    "dg check-enrich",
    "dg quotient",
    "dg replace",
    "dg hom-b",
    "gen",
    "verify",
];

/// Runs one data command on its JSON input.
pub fn run(command: &str, input: &Value) -> Result<Value, CliError> {
    let v = input.clone();
    Ok(match command {
        "group snf" => {
            let rows: Rows = serde_json::from_value(field(&v, "matrix")?).map_err(|e| CliError::Invalid(e.to_string()))?;
            let m = matrix_of(&rows, None)?;
            let snf = m.snf();
            json!({ "diagonal": strings(&snf.diagonal()), "canonical": canonical(&FgGroup::new(m)) })
        }
        "group hom" => {
            let (g, h): (FgGroup, FgGroup) = pair(&v, "src", "dst")?;
            let space = hom_group(&g, &h);
            json!({
                "group": canonical(space.group()),
                "generators": space.generators().iter().map(Json::to_value).collect::<Vec<_>>(),
            })
        }
        "b validate" => {
            let o = BObject::from_value(v)?;
            let mut out = b_object_summary(&o);
            out["valid"] = json!(true);
            out["in_torsion_prime"] = json!(o.in_torsion_prime());
            out["in_free_prime"] = json!(o.in_free_prime());
            out
        }
        "b compose" => {
            let (p, q): (Butterfly, Butterfly) = pair(&v, "p", "q")?;
            compose(&p, &q)?.to_value()
        }
        "b add" => {
            let (p, q): (Butterfly, Butterfly) = pair(&v, "p", "q")?;
            add(&p, &q)?.to_value()
        }
        "b equal" => {
            let (p, q): (Butterfly, Butterfly) = pair(&v, "p", "q")?;
            json!({ "equal": butterfly_equal(&p, &q)? })
        }
        "b kernel" => {
            let p = Butterfly::from_value(v)?;
            let (k, incl) = kernel_b(&p);
            let mut out = b_object_summary(&k);
            out["inclusion"] = incl.to_value();
            out
        }
        "b cokernel" => {
            let p = Butterfly::from_value(v)?;
            let (c, proj) = cokernel_b(&p);
            let mut out = b_object_summary(&c);
            out["projection"] = proj.to_value();
            out
        }
        "b classify" => {
            let c = classify_morphism(&Butterfly::from_value(v)?);
            json!({
                "is_mono": c.is_mono,
                "is_epi": c.is_epi,
                "is_iso": c.is_iso,
                "inverse": c.inverse.map(|i| i.to_value()),
            })
        }
        "b les" => {
            let les = long_exact_sequence(&Butterfly::from_value(v)?)?;
            json!({
                "sequence": arrow_chain(&les.groups),
                "groups": les.groups.iter().map(canonical).collect::<Vec<_>>(),
                "maps": les.maps.iter().map(Json::to_value).collect::<Vec<_>>(),
            })
        }
        "dec cohomology" => {
            let d = DecComplex::from_value(v)?;
            let h = dec_cohomology(&d);
            let degrees: Vec<Value> = if d.is_empty() {
                Vec::new()
            } else {
                (h.start..=h.end())
                    .map(|n| json!({ "n": n, "h_m1": canonical(&h.h_m1(n)), "h_0": canonical(&h.h_0(n)) }))
                    .collect()
            };
            json!({ "degrees": degrees, "compatible": is_compatible(&d) })
        }
        "dec compatible" => json!({ "compatible": is_compatible(&DecComplex::from_value(v)?) }),
        "dec cone" => cone(&DecMap::from_value(v)?).to_value(),
        "dec hh" => {
            let c = ChainComplexA::from_value(v)?;
            let terms: Vec<Value> = hh_functor(&c)
                .iter()
                .map(|t| {
                    let mut s = b_object_summary(&t.object);
                    s["degree"] = json!(t.degree);
                    s
                })
                .collect();
            json!({ "terms": terms })
        }
        "dec freecover" => {
            let fc = free_cover_complex(&DecComplex::from_value(v)?);
            json!({ "cover": fc.cover.to_value(), "map": fc.map.to_value(), "qis": fc.map.chain_map().is_qis() })
        }
        "tot" => tot(&BComplex::from_value(v)?).to_value(),
        "g" => g_inverse(&DecComplex::from_value(v)?)?.to_value(),
        "link" => {
            let (p, q): (Butterfly, Butterfly) = pair(&v, "p", "q")?;
            json!({ "link": link(&p, &q)?.map(|m: GroupMap| m.to_value()) })
        }
        "roof" => {
            let r = roof(&Butterfly::from_value(v)?);
            json!({ "object": r.obj.to_value(), "s": r.s.to_value(), "g": r.g.to_value() })
        }
        "c validate" => {
            let c = CObject::from_value(v)?;
            json!({ "valid": true, "h": canonical(&h_functor(&c).0) })
        }
        "c h" => {
            let (h, q) = h_functor(&CObject::from_value(v)?);
            json!({ "group": canonical(&h), "presentation": h.to_value(), "quotient": q.to_value() })
        }
        "c qprime" => {
            let q = qprime(&FgGroup::from_value(v)?);
            json!({
                "object": q.object.to_value(),
                "cover": q.cover.to_value(),
                "witness": q.witness.to_value(),
                "h": canonical(q.witness.src()),
            })
        }
        "dg hom" => {
            let (x, y): (DecComplex, DecComplex) = pair(&v, "x", "y")?;
            let h = hom_complex_dec(&x, &y);
            let degrees: Vec<Value> = (h.start()..=h.end())
                .map(|k| json!({ "k": k, "hom": canonical(h.degree(k).hom.as_group()), "m": canonical(h.degree(k).m.as_group()) }))
                .collect();
            json!({ "degrees": degrees, "enrich": enrich_check(&h) })
        }
        "dg quotient" => {
            let (x, y): (DecComplex, DecComplex) = pair(&v, "x", "y")?;
            let q = dg_quotient(&hom_complex_dec(&x, &y))?;
            complex_summary(&q.complex)
        }
        "dg check-enrich" => {
            let (x, y): (DecComplex, DecComplex) = pair(&v, "x", "y")?;
            json!({ "holds": enrich_check(&hom_complex_dec(&x, &y)) })
        }
        "dg strict-hom" => {
            let (x, y): (BComplex, BComplex) = pair(&v, "x", "y")?;
            complex_summary(&strict_hom_complex(&x, &y)?.complex())
        }
        "dg rhom" => {
            let (x, y): (BComplex, BComplex) = pair(&v, "x", "y")?;
            let r = rhom(&x, &y)?;
            let mut out = complex_summary(&r.strict.complex());
            out["replacement"] = r.replacement.to_value();
            out
        }
        "dg replace" => {
            let sp = semi_projective_replace(&BObject::from_value(v)?);
            json!({ "object": sp.object.to_value(), "iso": sp.iso.to_value() })
        }
        "dg hom-b" => {
            let (x, y): (BObject, BObject) = pair(&v, "x", "y")?;
            json!({ "group": canonical(&hom_group_b(&x, &y).group) })
        }
        other => return Err(CliError::Usage(format!("unknown command {other:?}"))),
    })
}

/// Per-degree canonical forms of the terms and cohomology of a complex.
fn complex_summary(c: &ChainComplexA) -> Value {
    let degrees: Vec<Value> = if c.is_empty() {
        Vec::new()
    } else {
        (c.start()..=c.end())
            .map(|k| json!({ "k": k, "term": canonical(&c.term(k)), "cohomology": canonical(&c.cohomology(k).group) }))
            .collect()
    };
    json!({ "degrees": degrees })
}
