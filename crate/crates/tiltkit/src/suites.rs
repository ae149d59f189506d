//! Randomized verification suites and their reports.
//!
//! Every trial draws from its own counter-based stream, so trials run in
//! parallel and the report is merged back in trial order.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use tiltkit_core::b::{
    add, butterfly_equal, classify_morphism, cokernel_b, compose, image_factorization, is_zero_morphism, kernel_b,
    long_exact_sequence, negate, BObject, Butterfly,
};
use tiltkit_core::ctilt::{h_functor, qprime, qprime_natural};
use tiltkit_core::decorated::{
    classify_map, free_cover_complex, hh_functor, hh_ses, is_compatible, loes_witness, DecComplex, DecMap, FreeCover,
};
use tiltkit_core::dg::{
    dg_equivalence, enrich_check, full_hom_complex, hom_complex_dec, hom_group_b, inclusion_is_iso, is_semi_projective,
    rhom_matches_full, semi_projective_complex, semi_projective_replace, strict_hom_complex, HomB,
};
use tiltkit_core::tot::{
    b_complex_cohomology, cohisom_holds, g_inverse, g_map, is_b_qis, link, roof_chain, tot, tot_map, unit_iso, BChainMap,
};
use tiltkit_core::{hom_group, torsion_decompose, BigInt, FgGroup, GroupMap, IntMatrix, Subgroup};

use crate::error::CliError;
use crate::examples::WORKED;
use crate::gen::{tag, Gen, GeneratorConfig};
use crate::json::Json;

pub const SUITES: [&str; 13] = [
    "torsion-axioms",
    "b-laws",
    "kernel-cokernel",
    "classify-oracle",
    "long-exact",
    "tot-roundtrip",
    "cohisom",
    "cohofcoh",
    "enrich",
    "dgeq",
    "cotilting-cover",
    "hrs2",
    "worked-examples",
];

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub clause: String,
    /// `{"command", "input"}` replays the failing computation; extra keys
    /// carry whatever else the clause needed.
    pub counterexample: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub failures: Vec<Failure>,
    pub duration_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Violation {
    clause: String,
    counterexample: Value,
}

type Trial = Result<(), Violation>;

fn fail(clause: &str, counterexample: Value) -> Violation {
    Violation { clause: clause.into(), counterexample }
}

fn ensure(cond: bool, clause: &str, ce: impl FnOnce() -> Value) -> Trial {
    if cond {
        Ok(())
    } else {
        Err(fail(clause, ce()))
    }
}

fn replay(command: &str, input: Value) -> Value {
    json!({ "command": command, "input": input })
}

/// Lifts a core error into a violation of `clause`.
trait OrViolate<T> {
    fn or_violate(self, clause: &str, ce: impl FnOnce() -> Value) -> Result<T, Violation>;
}

impl<T> OrViolate<T> for tiltkit_core::Result<T> {
    fn or_violate(self, clause: &str, ce: impl FnOnce() -> Value) -> Result<T, Violation> {
        self.map_err(|e| {
            let mut v = ce();
            v["error"] = json!(e.to_string());
            fail(clause, v)
        })
    }
}

fn bf_pair(p: &Butterfly, q: &Butterfly) -> Value {
    json!({ "p": p.to_value(), "q": q.to_value() })
}

fn equal(p: &Butterfly, q: &Butterfly, clause: &str) -> Trial {
    let eq = butterfly_equal(p, q).or_violate(clause, || replay("b equal", bf_pair(p, q)))?;
    ensure(eq, clause, || replay("b equal", bf_pair(p, q)))
}

/// Trial count for a suite under `cfg`; the heavier suites run on a fixed
/// fraction of the base count.
pub fn trial_count(name: &str, cfg: &GeneratorConfig) -> usize {
    match name {
        "enrich" | "dgeq" | "cotilting-cover" | "hrs2" => cfg.trials.div_ceil(2),
        "worked-examples" => WORKED.len(),
        _ => cfg.trials,
    }
}

pub fn run_suite(name: &str, cfg: &GeneratorConfig) -> Result<VerificationReport, CliError> {
    run_trials(name, cfg, None)
}

/// Runs the suite, or only trial `only` of it when given. A single trial
/// draws exactly the instance it draws in the full run.
pub fn run_trials(name: &str, cfg: &GeneratorConfig, only: Option<usize>) -> Result<VerificationReport, CliError> {
    let body: fn(&mut Gen, usize) -> Trial = match name {
        "torsion-axioms" => torsion_axioms,
        "b-laws" => b_laws,
        "kernel-cokernel" => kernel_cokernel,
        "classify-oracle" => classify_oracle,
        "long-exact" => long_exact,
        "tot-roundtrip" => tot_roundtrip,
        "cohisom" => cohisom,
        "cohofcoh" => cohofcoh,
        "enrich" => enrich,
        "dgeq" => dgeq,
        "cotilting-cover" => cotilting_cover,
        "hrs2" => hrs2,
        "worked-examples" => worked_examples,
        other => return Err(CliError::UnknownSuite(other.into())),
    };
    let started = Instant::now();
    let total = trial_count(name, cfg);
    let indices: Vec<usize> = match only {
        Some(i) if i >= total => return Err(CliError::Usage(format!("trial {i} is out of range; {name} runs {total}"))),
        Some(i) => vec![i],
        None => (0..total).collect(),
    };
    let trials = indices.len();
    let suite_tag = tag(name);
    let failures: Vec<Failure> = indices
        .into_par_iter()
        .map(|i| {
            let mut g = Gen::for_trial(cfg.seed, suite_tag, i as u64, cfg.bounds);
            match catch_unwind(AssertUnwindSafe(|| body(&mut g, i))) {
                Ok(Ok(())) => None,
                Ok(Err(v)) => Some(Failure { trial: i, clause: v.clause, counterexample: v.counterexample }),
                Err(panic) => {
                    let msg = panic
                        .downcast_ref::<&str>()
                        .map(|s| s.to_string())
                        .or_else(|| panic.downcast_ref::<String>().cloned())
                        .unwrap_or_else(|| "panic".into());
                    Some(Failure {
                        trial: i,
                        clause: "panicked".into(),
                        counterexample: json!({
                            "panic": msg,
                            "replay": format!("tiltkit --seed {} --trials {} --bounds {} verify --suite {name} --trial {i}", cfg.seed, cfg.trials, cfg.bounds),
                        }),
                    })
                }
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(VerificationReport {
        suite: name.into(),
        seed: cfg.seed,
        trials,
        failures,
        duration_ms: started.elapsed().as_millis() as u64,
    })
}

fn group_pair(a: &FgGroup, b: &FgGroup) -> Value {
    json!({ "src": a.to_value(), "dst": b.to_value() })
}

fn torsion_axioms(g: &mut Gen, _: usize) -> Trial {
    let (t, f) = (g.finite_group(), g.free_group());
    ensure(hom_group(&t, &f).group().is_trivial(), "Hom(T, F) = 0", || replay("group hom", group_pair(&t, &f)))?;

    let s = g.subgroup(&f);
    ensure(s.as_group().is_free(), "subgroups of free groups are free", || {
        json!({ "ambient": f.to_value(), "generators": crate::json::subgroup_to(&s) })
    })?;

    let t2 = g.finite_group();
    let s2 = g.subgroup(&t2);
    ensure(s2.quotient().0.is_torsion(), "quotients of torsion groups are torsion", || {
        json!({ "ambient": t2.to_value(), "generators": crate::json::subgroup_to(&s2) })
    })?;

    // E = coker [[R_A, X], [0, R_C]] contains S = image of the A-coordinates with E/S ≅ C.
    let (a, c) = (g.group(), g.group());
    let (na, nc) = (a.ambient_rank(), c.ambient_rank());
    let (ra, rc) = (a.relations().cols(), c.relations().cols());
    let mut rel = IntMatrix::zeros(na + nc, ra + rc);
    rel.set_block(0, 0, a.relations());
    rel.set_block(na, ra, c.relations());
    let x = IntMatrix::from_vec(na, rc, (0..na * rc).map(|_| BigInt::from(g.entry())).collect());
    rel.set_block(0, ra, &x);
    let e = FgGroup::new(rel);
    let first = IntMatrix::vstack(na, &[&IntMatrix::identity(na), &IntMatrix::zeros(nc, na)]);
    let sub = Subgroup::new(&e, &first);
    let quot = sub.quotient().0;
    let ce = || json!({ "extension": e.to_value(), "sub": sub.as_group().to_value(), "quotient": quot.to_value() });
    ensure(quot.is_isomorphic(&c), "E/S recovers C", ce)?;
    ensure(
        e.is_torsion() == (sub.as_group().is_torsion() && quot.is_torsion()),
        "torsion is closed under extensions and subobjects",
        ce,
    )?;
    ensure(
        !(sub.as_group().is_free() && quot.is_free()) || e.is_free(),
        "free is closed under extensions",
        ce,
    )?;
    ensure(!e.is_free() || sub.as_group().is_free(), "subgroups of free groups are free", ce)?;

    let h = g.group();
    let td = torsion_decompose(&h);
    let ce = || json!({ "group": h.to_value() });
    ensure(td.t_part.as_group().is_torsion(), "torsion part is torsion", ce)?;
    ensure(td.f_quotient.is_free(), "torsion-free quotient is free", ce)?;
    ensure(td.quotient.is_epi() && td.quotient.kernel() == td.t_part, "0 → tA → A → A/tA → 0 is exact", ce)
}

fn b_laws(g: &mut Gen, _: usize) -> Trial {
    let (x, y, z, w) = (g.b_object(), g.b_object(), g.b_object(), g.b_object());
    let (p, p2, p3) = (g.butterfly(&x, &y), g.butterfly(&x, &y), g.butterfly(&x, &y));
    let (q, q2) = (g.butterfly(&y, &z), g.butterfly(&y, &z));
    let r = g.butterfly(&z, &w);
    let c = |a: &Butterfly, b: &Butterfly| compose(a, b).or_violate("composable", || replay("b compose", bf_pair(a, b)));
    let s = |a: &Butterfly, b: &Butterfly| add(a, b).or_violate("addable", || replay("b add", bf_pair(a, b)));

    equal(&c(&c(&p, &q)?, &r)?, &c(&p, &c(&q, &r)?)?, "composition is associative")?;
    equal(&c(&Butterfly::identity(&x), &p)?, &p, "left identity")?;
    equal(&c(&p, &Butterfly::identity(&y))?, &p, "right identity")?;
    equal(&s(&p, &p2)?, &s(&p2, &p)?, "addition is commutative")?;
    equal(&s(&s(&p, &p2)?, &p3)?, &s(&p, &s(&p2, &p3)?)?, "addition is associative")?;
    equal(&s(&p, &Butterfly::zero(&x, &y))?, &p, "zero is neutral")?;
    let cancel = s(&p, &negate(&p))?;
    ensure(is_zero_morphism(&cancel), "p + (-p) = 0", || replay("b add", bf_pair(&p, &negate(&p))))?;
    equal(&c(&s(&p, &p2)?, &q)?, &s(&c(&p, &q)?, &c(&p2, &q)?)?, "composition is additive on the left")?;
    equal(&c(&p, &s(&q, &q2)?)?, &s(&c(&p, &q)?, &c(&p, &q2)?)?, "composition is additive on the right")
}

/// The map `Hom_B(a, b) → Hom_B(a', b')` induced on class groups by `f`.
fn induced(from: &HomB, to: &HomB, f: impl Fn(&Butterfly) -> tiltkit_core::Result<Butterfly>) -> tiltkit_core::Result<GroupMap> {
    let n = from.group.ambient_rank();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![BigInt::from(0); n];
        e[i] = BigInt::from(1);
        cols.push(to.class_of(&f(&from.representative(&e))?)?);
    }
    GroupMap::new(from.group.clone(), to.group.clone(), IntMatrix::from_columns(to.group.ambient_rank(), &cols))
}

fn kernel_cokernel(g: &mut Gen, _: usize) -> Trial {
    let (x, y) = (g.b_object(), g.b_object());
    let p = g.butterfly(&x, &y);
    let ce = || replay("b kernel", p.to_value());
    let (k, incl) = kernel_b(&p);
    let (c, proj) = cokernel_b(&p);
    ensure(is_zero_morphism(&compose(&incl, &p).or_violate("k then p", ce)?), "p ∘ k = 0", ce)?;
    ensure(is_zero_morphism(&compose(&p, &proj).or_violate("p then c", ce)?), "c ∘ p = 0", ce)?;

    for _ in 0..3 {
        // kernel: Hom(W, K) → Hom(W, X) is injective with image the maps killed by p
        let w = g.b_object();
        let (wk, wx) = (hom_group_b(&w, &k), hom_group_b(&w, &x));
        let k_star = induced(&wk, &wx, |t| compose(t, &incl)).or_violate("k_* is defined", ce)?;
        let ce_w = || json!({ "command": "b kernel", "input": p.to_value(), "test_source": w.to_value() });
        ensure(k_star.is_mono(), "Hom(W, ker p) → Hom(W, X) is injective", ce_w)?;
        let t = if g.coin(1.0 / 3.0) { compose(&g.butterfly(&w, &k), &incl).or_violate("s ∘ k", ce_w)? } else { g.butterfly(&w, &x) };
        let killed = is_zero_morphism(&compose(&t, &p).or_violate("p ∘ t", ce_w)?);
        let factors = k_star.image().contains(&wx.class_of(&t).or_violate("class of t", ce_w)?);
        ensure(killed == factors, "t factors through ker p exactly when p ∘ t = 0", || {
            json!({ "command": "b kernel", "input": p.to_value(), "test": t.to_value() })
        })?;

        // cokernel: Hom(C, W) → Hom(Y, W) is injective with image the maps killing p
        let w = g.b_object();
        let (cw, yw) = (hom_group_b(&c, &w), hom_group_b(&y, &w));
        let c_star = induced(&cw, &yw, |u| compose(&proj, u)).or_violate("c^* is defined", ce)?;
        let ce_w = || json!({ "command": "b cokernel", "input": p.to_value(), "test_target": w.to_value() });
        ensure(c_star.is_mono(), "Hom(coker p, W) → Hom(Y, W) is injective", ce_w)?;
        let t = if g.coin(1.0 / 3.0) { compose(&proj, &g.butterfly(&c, &w)).or_violate("c then s", ce_w)? } else { g.butterfly(&y, &w) };
        let killed = is_zero_morphism(&compose(&p, &t).or_violate("t ∘ p", ce_w)?);
        let factors = c_star.image().contains(&yw.class_of(&t).or_violate("class of t", ce_w)?);
        ensure(killed == factors, "t factors through coker p exactly when t ∘ p = 0", || {
            json!({ "command": "b cokernel", "input": p.to_value(), "test": t.to_value() })
        })?;
    }

    let im = image_factorization(&p);
    let recomposed = compose(&compose(&im.epi, &im.iso).or_violate("epi then iso", ce)?, &im.mono).or_violate("then mono", ce)?;
    equal(&recomposed, &p, "epi–iso–mono factorization recomposes to p")?;
    ensure(classify_morphism(&im.epi).is_epi, "coimage map is epi", ce)?;
    ensure(classify_morphism(&im.iso).is_iso, "coimage → image is iso", ce)?;
    ensure(classify_morphism(&im.mono).is_mono, "image map is mono", ce)
}

fn classify_oracle(g: &mut Gen, i: usize) -> Trial {
    let x = g.b_object();
    // every fourth instance is an isomorphism onto a semi-projective replacement
    let p = if i % 4 == 3 {
        semi_projective_replace(&x).iso.butterfly().flip()
    } else {
        let y = g.b_object();
        g.butterfly(&x, &y)
    };
    let ce = || replay("b classify", p.to_value());
    let cl = classify_morphism(&p);
    let (k, incl) = kernel_b(&p);
    let (c, proj) = cokernel_b(&p);
    ensure(cl.is_mono == k.is_zero_object(), "mono ⇔ zero kernel", ce)?;
    ensure(cl.is_epi == c.is_zero_object(), "epi ⇔ zero cokernel", ce)?;
    ensure(cl.is_iso == (cl.is_mono && cl.is_epi), "iso ⇔ mono and epi", ce)?;
    ensure(cl.is_iso == cl.inverse.is_some(), "iso ⇔ an inverse exists", ce)?;
    if let Some(inv) = &cl.inverse {
        equal(&compose(&p, inv).or_violate("p then inverse", ce)?, &Butterfly::identity(p.src()), "inverse ∘ p = 1")?;
        equal(&compose(inv, &p).or_violate("inverse then p", ce)?, &Butterfly::identity(p.dst()), "p ∘ inverse = 1")?;
    }
    ensure(classify_morphism(&incl).is_mono, "kernel inclusion is mono", ce)?;
    ensure(classify_morphism(&proj).is_epi, "cokernel projection is epi", ce)
}

fn long_exact(g: &mut Gen, _: usize) -> Trial {
    let (x, y) = (g.b_object(), g.b_object());
    let p = g.butterfly(&x, &y);
    let ce = || replay("b les", p.to_value());
    let les = long_exact_sequence(&p).or_violate("seven-term sequence is exact", ce)?;
    ensure(les.first_failure().is_none(), "seven-term sequence is exact", ce)?;
    for w in les.maps.windows(2) {
        ensure(w[1].after(&w[0]).is_zero(), "consecutive maps compose to zero", ce)?;
    }
    let (k, _) = kernel_b(&p);
    let (c, _) = cokernel_b(&p);
    ensure(les.groups[0].is_isomorphic(k.h_m1().as_group()), "leftmost term is H⁻¹ of the kernel", ce)?;
    ensure(les.groups[6].is_isomorphic(&c.h_0().0), "rightmost term is H⁰ of the cokernel", ce)?;

    let cx = g.chain_complex();
    if !cx.is_empty() {
        for n in cx.start() - 1..=cx.end() + 1 {
            ensure(hh_ses(&cx, n).is_exact(), "0 → H⁰ℍ^{n-1} → H^n → H⁻¹ℍ^n → 0 is exact", || {
                json!({ "command": "dec hh", "input": cx.to_value(), "degree": n })
            })?;
        }
    }
    Ok(())
}

fn strict_chain_equal(a: &BChainMap, b: &BChainMap, clause: &str) -> Trial {
    let (lo, hi) = (a.range().0.min(b.range().0), a.range().1.max(b.range().1));
    for n in lo..=hi {
        equal(&a.comp(n), &b.comp(n), clause)?;
    }
    Ok(())
}

fn tot_roundtrip(g: &mut Gen, _: usize) -> Trial {
    let d = g.dec_complex_compatible();
    let ce = || replay("g", d.to_value());
    let x = g_inverse(&d).or_violate("compatible complexes have a G", ce)?;
    ensure(tot(&x).trimmed() == d, "Tot ∘ G = 1", ce)?;

    let xb = g.b_complex();
    let ce = || replay("tot", xb.to_value());
    let u = unit_iso(&xb).or_violate("unit is defined", ce)?;
    for n in u.range().0..=u.range().1 {
        ensure(classify_morphism(&u.comp(n)).is_iso, "unit components are isomorphisms", ce)?;
    }

    let f = g.b_chain_map();
    let ce = || json!({ "command": "tot", "input": f.src().to_value(), "map": f.to_value() });
    let (ux, uy) = (unit_iso(f.src()).or_violate("unit", ce)?, unit_iso(f.dst()).or_violate("unit", ce)?);
    let gtf = g_map(&tot_map(&f).or_violate("Tot on maps", ce)?).or_violate("G on maps", ce)?;
    let (lo, hi) = (f.range().0.min(ux.range().0).min(uy.range().0), f.range().1.max(ux.range().1).max(uy.range().1));
    for n in lo..=hi {
        let left = compose(&f.comp(n), &uy.comp(n)).or_violate("composable", ce)?;
        let right = compose(&ux.comp(n), &gtf.comp(n)).or_violate("composable", ce)?;
        equal(&left, &right, "the unit is natural")?;
    }
    strict_chain_equal(&gtf, &g_map(&tot_map(&gtf).or_violate("Tot", ce)?).or_violate("G", ce)?, "G ∘ Tot is idempotent on maps")?;

    let (d1, d2) = (g.dec_complex_compatible(), g.dec_complex_compatible());
    let (phi, psi) = (g.dec_map(&d1, &d2), g.dec_map(&d1, &d2));
    let ce = || json!({ "phi": phi.to_value(), "psi": psi.to_value() });
    let gphi = g_map(&phi).or_violate("G on maps", ce)?;
    let back = tot_map(&gphi).or_violate("Tot on maps", ce)?;
    let (lo, hi) = phi.chain_map().range();
    for n in lo.min(back.chain_map().range().0)..=hi.max(back.chain_map().range().1) {
        ensure(back.comp(n).lift() == phi.comp(n).lift() || back.comp(n).sub(&phi.comp(n)).is_zero(), "Tot ∘ G = 1 on maps", ce)?;
    }
    let gsum = g_map(&phi.add(&psi)).or_violate("G on maps", ce)?;
    let gpsi = g_map(&psi).or_violate("G on maps", ce)?;
    for n in gsum.range().0..=gsum.range().1 {
        let rhs = add(&gphi.comp(n), &gpsi.comp(n)).or_violate("addable", ce)?;
        equal(&gsum.comp(n), &rhs, "G is additive")?;
    }

    let (a, b) = (g.b_object(), g.b_object());
    let p = g.butterfly(&a, &b);
    let q = if g.coin(0.5) { cokernel_b(&p).1 } else { let c = g.b_object(); g.butterfly(&b, &c) };
    let ce = || replay("link", bf_pair(&p, &q));
    let l = link(&p, &q).or_violate("link is defined on composable pairs", ce)?;
    let zero = is_zero_morphism(&compose(&p, &q).or_violate("composable", ce)?);
    ensure(l.is_some() == zero, "a link exists exactly when q ∘ p = 0", ce)?;

    let ce = || replay("tot", xb.to_value());
    if !xb.is_empty() {
        for n in xb.start() - 1..=xb.end() {
            ensure(xb.link(n + 1).after(&xb.link(n)).is_zero(), "δ² = 0", ce)?;
        }
    }
    Ok(())
}

fn cohisom(g: &mut Gen, _: usize) -> Trial {
    let x = g.b_complex();
    let ce = || replay("tot", x.to_value());
    ensure(cohisom_holds(&x), "H^{i,n}(Tot X) ≅ H^i(X^n)", ce)?;
    let dt = tot(&x);
    let hh = hh_functor(&dt.forget());
    for bc in b_complex_cohomology(&x) {
        let o = &bc.object;
        let matched = hh.iter().find(|t| t.degree == bc.degree).map(|t| &t.object).cloned().unwrap_or_else(BObject::zero);
        ensure(
            o.h_m1().as_group().is_isomorphic(matched.h_m1().as_group()) && o.h_0().0.is_isomorphic(&matched.h_0().0),
            "ℍ^n(X) agrees with the heart cohomology of Tot X",
            || json!({ "command": "dec hh", "input": dt.forget().to_value(), "degree": bc.degree }),
        )?;
    }

    let f = g.b_chain_map();
    let ce = || json!({ "map": f.to_value() });
    let mut maps = vec![f.clone(), unit_iso(f.src()).or_violate("unit", ce)?];
    let rc = roof_chain(&f).or_violate("strict roofs", ce)?;
    maps.extend([rc.s, rc.g, rc.t, rc.h]);
    for m in &maps {
        let b = is_b_qis(m).or_violate("ℍ on maps", || json!({ "map": m.to_value() }))?;
        let a = tot_map(m).or_violate("Tot on maps", || json!({ "map": m.to_value() }))?.chain_map().is_qis();
        ensure(a == b, "Tot preserves and reflects quasi-isomorphisms", || json!({ "map": m.to_value() }))?;
    }
    Ok(())
}

fn cohofcoh(g: &mut Gen, i: usize) -> Trial {
    let d = if i.is_multiple_of(2) { g.dec_complex_arbitrary() } else { g.dec_complex_compatible() };
    let ce = || replay("dec cohomology", d.to_value());
    ensure(loes_witness(&d).verdict, "long exact sequence of decorated cohomology", ce)?;

    let e = if g.coin(0.5) { d.clone() } else { g.dec_complex_arbitrary() };
    let fc = free_cover_complex(&d);
    let maps: Vec<DecMap> = vec![g.dec_map(&d, &e), DecMap::identity(&d), fc.map];
    for m in &maps {
        let c = classify_map(m);
        ensure(!c.is_sis || c.is_qis, "strict quasi-isomorphisms are quasi-isomorphisms", || replay("dec cone", m.to_value()))?;
    }
    Ok(())
}

fn short_length(g: &mut Gen) -> usize {
    1 + g.below(3)
}

fn enrich(g: &mut Gen, _: usize) -> Trial {
    let (lx, ly) = (short_length(g), short_length(g));
    let x = g.dec_complex_compatible_of_length(lx);
    let y = g.dec_complex_compatible_of_length(ly);
    let ce = || replay("dg check-enrich", json!({ "x": x.to_value(), "y": y.to_value() }));
    let h = hom_complex_dec(&x, &y);
    ensure(h.is_complex(), "Hom complex has d² = 0", ce)?;
    ensure(enrich_check(&h), "d maps the decorated subcomplex into itself", ce)
}

fn dgeq(g: &mut Gen, i: usize) -> Trial {
    if i.is_multiple_of(2) {
        let (lx, ly) = (short_length(g), short_length(g));
        let x = g.dec_complex_compatible_of_length(lx);
        let y = g.dec_complex_compatible_of_length(ly);
        let ce = || replay("dg quotient", json!({ "x": x.to_value(), "y": y.to_value() }));
        let eq = dg_equivalence(&x, &y).or_violate("DG comparison is defined", ce)?;
        ensure(eq.kernel_matches.iter().all(|(_, ok)| *ok), "kernel of the comparison is 𝓜 + d𝓜", ce)?;
        ensure(eq.iso.iter().all(|(_, ok)| *ok), "comparison is a degreewise isomorphism", ce)?;
        ensure(eq.chain_map && eq.holds(), "comparison is a chain map", ce)
    } else {
        let (lx, ly) = (short_length(g), short_length(g));
        let x = g.b_complex_of_length(lx);
        let y = g.b_complex_of_length(ly);
        let ce = || replay("dg rhom", json!({ "x": x.to_value(), "y": y.to_value() }));
        let (p, _) = semi_projective_complex(&x).or_violate("semi-projective replacement", ce)?;
        ensure(is_semi_projective(&p), "replacement is semi-projective", ce)?;
        let s = strict_hom_complex(&p, &y).or_violate("strict Hom", ce)?;
        let f = full_hom_complex(&p, &y).or_violate("full Hom", ce)?;
        ensure(inclusion_is_iso(&s, &f).or_violate("comparison map", ce)?, "strict Hom ≅ Hom_B from a semi-projective source", ce)?;
        ensure(rhom_matches_full(&x, &y).or_violate("RHom", ce)?, "RHom computes Hom_B", ce)
    }
}

fn cotilting_cover(g: &mut Gen, _: usize) -> Trial {
    // Cover shape holds for any decoration; compatibility of the pulled-back
    // decoration needs a compatible source.
    cover_shape(&g.dec_complex_arbitrary())?;
    let d = g.dec_complex_compatible();
    let fc = cover_shape(&d)?;
    ensure(is_compatible(&fc.cover), "pulled-back decoration is compatible", || replay("dec freecover", d.to_value()))
}

fn cover_shape(d: &DecComplex) -> Result<FreeCover, Violation> {
    let ce = || replay("dec freecover", d.to_value());
    let fc = free_cover_complex(d);
    let cover = &fc.cover;
    if !cover.is_empty() {
        for n in cover.start()..=cover.end() {
            ensure(cover.term(n).is_free(), "cover terms are free", ce)?;
        }
    }
    if !d.is_empty() {
        for n in d.start()..=d.end() {
            ensure(fc.map.comp(n).is_epi(), "cover is degreewise epi", ce)?;
        }
    }
    ensure(fc.map.chain_map().is_qis(), "cover is a quasi-isomorphism", ce)?;
    Ok(fc)
}

fn hrs2(g: &mut Gen, _: usize) -> Trial {
    let a = g.group();
    let ce = || replay("c qprime", a.to_value());
    let qa = qprime(&a);
    ensure(qa.witness.is_iso(), "H(Q′A) → A is an isomorphism", ce)?;
    ensure(qa.witness.dst().relations() == a.relations(), "witness lands in A", ce)?;
    ensure(h_functor(&qa.object).0.is_isomorphic(&a), "H(Q′A) ≅ A", ce)?;

    let b = g.group();
    let f = g.hom(&a, &b);
    let qb = qprime(&b);
    ensure(qprime_natural(&f, &qa, &qb), "Q′ is natural", || json!({ "command": "c qprime", "input": a.to_value(), "map": f.to_value() }))
}

fn worked_examples(_: &mut Gen, i: usize) -> Trial {
    let ex = &WORKED[i];
    let input = ex.input();
    let ce = || replay(ex.command, input.clone());
    let out = crate::ops::run(ex.command, &input).map_err(|e| {
        let mut v = ce();
        v["error"] = json!(e.to_string());
        fail(ex.name, v)
    })?;
    for (pointer, want) in ex.expected() {
        let got = out.pointer(&pointer).cloned().unwrap_or(Value::Null);
        ensure(got == want, ex.name, || {
            let mut v = ce();
            v["pointer"] = json!(pointer);
            v["expected"] = want.clone();
            v["actual"] = got.clone();
            v
        })?;
    }
    Ok(())
}
