use anyhow::{anyhow, bail, Result};
use relcalc::builders;
use relcalc::exactness::{
    barr_kock_instance, check_barr_kock, check_goursat_pushout, check_regular_pushout_comparison,
    induced_kernel_map, verify_3x3, ComparisonDefect, ForkDefect, PushoutCheck,
};
use relcalc::finset::Partition;
use relcalc::permutability::{
    check_algebra_permutability, check_permutability, difunctionality_sweep, find_maltsev_term,
    find_quaternary_pair, goursat_image_sweep, reflexive_subalgebra_sweep, verify_schema, Identity,
    PermReport, Schema, SearchStatus, StartsWith, SweepReport, TermSearchResult,
};
use relcalc::ualg::SubalgebraSearch;
use relcalc::{Algebra, Carrier, Congruence, Error, FinFn, Rel, Term};
use serde_json::{json, Map, Value};

use crate::format::{algebra_json, function_json, pairs_json, Object, Workspace};
use crate::report::{Report, Status};

/// An element as reported: its label when the carrier has labels.
fn elem(c: &Carrier, i: usize) -> Value {
    match c.labels() {
        Some(l) => Value::String(l[i].clone()),
        None => json!(i),
    }
}

fn blocks_json(c: &Carrier, p: &Partition) -> Value {
    Value::Array(
        p.blocks()
            .iter()
            .map(|b| Value::Array(b.iter().map(|&x| elem(c, x)).collect()))
            .collect(),
    )
}

fn parse_element(c: &Carrier, s: &str) -> Result<usize> {
    if let Some(i) = c.lookup(s) {
        return Ok(i);
    }
    match s.parse::<usize>() {
        Ok(i) if i < c.size() => Ok(i),
        _ => bail!("`{s}` is not an element of the carrier"),
    }
}

pub fn compose(ws: &Workspace, r: &str, s: &str) -> Result<Report> {
    let out = ws.relation(r)?.compose(ws.relation(s)?)?;
    let mut rep = Report::new("compose");
    rep.set("first", r)
        .set("second", s)
        .set("dom", out.dom())
        .set("cod", out.cod())
        .set("pairs", pairs_json(&out));
    Ok(rep)
}

fn flags_json(r: &Rel) -> Value {
    let f = r.classify();
    let mut m = Map::new();
    for (k, v) in [
        ("reflexive", f.reflexive),
        ("symmetric", f.symmetric),
        ("transitive", f.transitive),
        ("equivalence", f.equivalence),
    ] {
        m.insert(k.into(), v.map_or(Value::Null, Value::Bool));
    }
    m.insert("difunctional".into(), f.difunctional.into());
    Value::Object(m)
}

pub fn classify(ws: &Workspace, name: &str) -> Result<Report> {
    let r = ws.relation(name)?;
    let mut rep = Report::new("classify");
    rep.set("relation", name)
        .set("dom", r.dom())
        .set("cod", r.cod())
        .set("flags", flags_json(r));
    Ok(rep)
}

pub fn factorize(ws: &Workspace, name: &str) -> Result<Report> {
    let f = ws.function(name)?;
    let (q, m) = f.image_factorize();
    let mut rep = Report::new("factorize");
    rep.set("function", name)
        .set("image_size", q.cod())
        .set("quotient", function_json(&q))
        .set("inclusion", function_json(&m));
    Ok(rep)
}

pub fn kernel_pair(ws: &Workspace, name: &str) -> Result<Report> {
    let f = ws.function(name)?;
    let kp = f.kernel_pair_tabulated();
    let mut rep = Report::new("kernel-pair");
    rep.set("function", name)
        .set("size", kp.size())
        .set("pairs", pairs_json(&kp.to_rel()))
        .set(
            "blocks",
            json!(f
                .fibers()
                .into_iter()
                .filter(|b| !b.is_empty())
                .collect::<Vec<_>>()),
        );
    Ok(rep)
}

pub fn pullback(ws: &Workspace, f: &str, g: &str) -> Result<Report> {
    let pb = FinFn::pullback(ws.function(f)?, ws.function(g)?)?;
    let mut rep = Report::new("pullback");
    rep.set("f", f).set("g", g).set("size", pb.size()).set(
        "pairs",
        json!(pb.pairs.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>()),
    );
    Ok(rep)
}

pub fn coequalize(ws: &Workspace, u: &str, v: &str) -> Result<Report> {
    let q = FinFn::coequalizer(ws.function(u)?, ws.function(v)?)?;
    let mut rep = Report::new("coequalize");
    rep.set("u", u)
        .set("v", v)
        .set("quotient", function_json(&q));
    Ok(rep)
}

pub fn congruences(ws: &Workspace, algebra: Option<&str>, bound: usize) -> Result<Report> {
    let (name, alg) = ws.algebra(algebra)?;
    let all = Congruence::all(alg, bound)?;
    let mut rep = Report::new("congruences");
    rep.set("algebra", name).set("count", all.len()).set(
        "congruences",
        Value::Array(
            all.iter()
                .map(|c| blocks_json(alg.carrier(), c.partition()))
                .collect(),
        ),
    );
    Ok(rep)
}

pub fn gen_congruence(ws: &Workspace, algebra: Option<&str>, pairs: &[String]) -> Result<Report> {
    let (name, alg) = ws.algebra(algebra)?;
    let parsed = pairs
        .iter()
        .map(|p| {
            let (a, b) = p
                .split_once(',')
                .ok_or_else(|| anyhow!("pair `{p}` must look like `x,y`"))?;
            Ok((
                parse_element(alg.carrier(), a.trim())?,
                parse_element(alg.carrier(), b.trim())?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = Congruence::generated(alg, &parsed)?;
    let mut rep = Report::new("gen-congruence");
    rep.set("algebra", name)
        .set(
            "generators",
            json!(parsed.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>()),
        )
        .set("blocks", blocks_json(alg.carrier(), c.partition()));
    Ok(rep)
}

fn perm_json(alg: &Algebra, p: &PermReport, names: Option<(&str, &str)>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("scope".into(), "congruences of the algebra".into());
    m.insert("level".into(), p.level.into());
    m.insert("pairs_checked".into(), p.pairs_checked.into());
    m.insert("holds".into(), p.holds.into());
    if let Some(w) = &p.witness {
        let (rn, sn) = names.unwrap_or(("R", "S"));
        let factors = |first: &str, second: &str| -> Value {
            (0..p.level)
                .map(|i| if i % 2 == 0 { first } else { second })
                .collect::<Vec<_>>()
                .into()
        };
        let (inside, outside) = match w.found_in {
            StartsWith::R => (factors(rn, sn), factors(sn, rn)),
            StartsWith::S => (factors(sn, rn), factors(rn, sn)),
        };
        let c = alg.carrier();
        m.insert(
            "witness".into(),
            json!({
                "R": blocks_json(c, w.r.partition()),
                "S": blocks_json(c, w.s.partition()),
                "pair": [w.pair.0, w.pair.1],
                "pair_labels": [elem(c, w.pair.0), elem(c, w.pair.1)],
                "in_composite": inside,
                "not_in_composite": outside,
            }),
        );
    }
    m
}

pub fn check_perm(
    ws: &Workspace,
    algebra: Option<&str>,
    level: usize,
    pair: Option<&[String]>,
    bound: usize,
) -> Result<Report> {
    let mut rep = Report::new("check-permutability");
    let (alg_name, alg, result, names) = match pair {
        Some([r, s]) => {
            let (an, rc) = ws.congruence(r)?;
            let (bn, sc) = ws.congruence(s)?;
            if an != bn || algebra.is_some_and(|a| a != an) {
                bail!("congruences `{r}` and `{s}` must belong to the same algebra");
            }
            let (alg_name, alg) = ws.algebra(Some(an))?;
            (
                alg_name,
                alg,
                check_permutability(alg, rc, sc, level)?,
                Some((r.as_str(), s.as_str())),
            )
        }
        Some(_) => bail!("--pair takes two congruence names"),
        None => {
            let (alg_name, alg) = ws.algebra(algebra)?;
            (
                alg_name,
                alg,
                check_algebra_permutability(alg, level, bound)?,
                None,
            )
        }
    };
    rep.set("algebra", alg_name);
    rep.fields.extend(perm_json(alg, &result, names));
    rep.status = Status::of(result.holds);
    Ok(rep)
}

fn search_json(res: &TermSearchResult) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("scope".into(), "variety generated by the algebra".into());
    let status = match res.status {
        SearchStatus::Found => "found",
        SearchStatus::AbsentConfirmed => "absent-confirmed",
        SearchStatus::BudgetExceeded => "budget-exceeded",
    };
    m.insert("result".into(), status.into());
    m.insert("clone_size".into(), res.clone_size.into());
    m.insert(
        "terms".into(),
        res.terms
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .into(),
    );
    m
}

fn search_status(res: &TermSearchResult) -> Status {
    match res.status {
        SearchStatus::Found => Status::Pass,
        SearchStatus::AbsentConfirmed => Status::Fail,
        SearchStatus::BudgetExceeded => Status::Inconclusive,
    }
}

pub fn find_term(
    ws: &Workspace,
    algebra: Option<&str>,
    quaternary: bool,
    budget: usize,
) -> Result<Report> {
    let (name, alg) = ws.algebra(algebra)?;
    let res = if quaternary {
        find_quaternary_pair(alg, budget)?
    } else {
        find_maltsev_term(alg, budget)?
    };
    let mut rep = Report::new("find-term");
    rep.set("algebra", name)
        .set("kind", if quaternary { "quaternary" } else { "maltsev" })
        .set("budget", budget);
    rep.fields.extend(search_json(&res));
    rep.status = search_status(&res);
    Ok(rep)
}

pub fn verify(
    ws: &Workspace,
    algebra: Option<&str>,
    schema: &str,
    terms: &[String],
    equations: &[String],
) -> Result<Report> {
    let (name, alg) = ws.algebra(algebra)?;
    let terms = terms
        .iter()
        .map(|t| Term::parse(t))
        .collect::<relcalc::Result<Vec<_>>>()?;
    let schema = match (schema, terms.as_slice()) {
        ("maltsev", [p]) => Schema::Maltsev(p.clone()),
        ("quaternary", [p, q]) => Schema::Quaternary(p.clone(), q.clone()),
        ("quasigroup-axioms", []) => Schema::QuasigroupAxioms,
        ("implication-axioms", []) => Schema::ImplicationAxioms,
        ("implication-unit", []) => Schema::ImplicationUnit,
        ("heyting-maltsev", []) => Schema::HeytingMaltsev(None),
        ("heyting-maltsev", [p]) => Schema::HeytingMaltsev(Some(p.clone())),
        ("custom", []) => Schema::Custom(
            equations
                .iter()
                .map(|e| {
                    let (l, r) = e
                        .split_once('=')
                        .ok_or_else(|| anyhow!("equation `{e}` needs `=`"))?;
                    Ok(Identity::new(
                        e.trim(),
                        Term::parse(l.trim())?,
                        Term::parse(r.trim())?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        (s, t) => bail!("schema `{s}` does not take {} term(s)", t.len()),
    };
    let violation = verify_schema(alg, &schema)?;
    let mut rep = Report::new("verify-schema");
    rep.set("algebra", name).set("schema", schema.name());
    rep.set(
        "identities",
        schema
            .identities()?
            .iter()
            .map(|i| format!("{} = {}", i.lhs, i.rhs))
            .collect::<Vec<_>>(),
    );
    rep.set("holds", violation.is_none());
    if let Some(v) = violation {
        rep.set(
            "violation",
            json!({"identity": v.identity, "assignment": v.assignment, "lhs": v.lhs, "rhs": v.rhs}),
        );
    }
    rep.status = Status::of(rep.fields["holds"] == true);
    Ok(rep)
}

fn sweep_json(s: &SweepReport) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("scope".into(), "relations in the algebra".into());
    m.insert("checked".into(), s.checked.into());
    m.insert("failures".into(), s.failures.into());
    m.insert("exhaustive".into(), s.exhaustive.into());
    m.insert(
        "max_generators".into(),
        s.max_generators.map_or(Value::Null, Value::from),
    );
    if let Some(w) = &s.witness {
        m.insert(
            "witness".into(),
            json!({
                "relation": pairs_json(&w.relation),
                "present": w.present.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
                "missing": [w.missing.0, w.missing.1],
            }),
        );
    }
    m
}

pub fn sweep(
    ws: &Workspace,
    algebra: Option<&str>,
    which: &str,
    with: Option<&str>,
    max_generators: Option<usize>,
    bound: usize,
) -> Result<Report> {
    let (name, alg) = ws.algebra(algebra)?;
    let mut rep = Report::new("sweep");
    rep.set("algebra", name).set("which", which);
    let search = |size: usize| match max_generators {
        Some(cap) => SubalgebraSearch {
            max_generators: Some(cap),
            ..SubalgebraSearch::default_for(size)
        },
        None => SubalgebraSearch::default_for(size),
    };
    let clean = match which {
        "difunctional" => {
            let (other_name, other) = match with {
                Some(w) => ws.algebra(Some(w))?,
                None => (name, alg),
            };
            rep.set("with", other_name);
            let s = difunctionality_sweep(alg, other, search(alg.size() * other.size()))?;
            rep.fields.extend(sweep_json(&s));
            s.clean()
        }
        "reflexive" => {
            let s = reflexive_subalgebra_sweep(alg, search(alg.size() * alg.size()))?;
            rep.fields.extend(sweep_json(&s));
            s.clean()
        }
        "goursat-image" => {
            let s = goursat_image_sweep(alg, bound)?;
            rep.set("scope", "quotients and congruences of the algebra")
                .set("checked", s.checked)
                .set("failures", s.failures);
            if let Some(w) = &s.witness {
                let c = alg.carrier();
                rep.set(
                    "witness",
                    json!({
                        "kernel": blocks_json(c, w.kernel.partition()),
                        "relation": blocks_json(c, w.relation.partition()),
                        "triple": [w.triple.0, w.triple.1, w.triple.2],
                    }),
                );
            }
            s.clean()
        }
        other => bail!("unknown sweep `{other}`"),
    };
    rep.status = Status::of(clean);
    Ok(rep)
}

fn fork_defect_json(d: &ForkDefect) -> Value {
    match *d {
        ForkDefect::LegsNotJointlyInjective(a, b) => {
            json!({"clause": d.clause(), "same_legs": [a, b]})
        }
        ForkDefect::KernelPairMissing(a, b) => {
            json!({"clause": d.clause(), "missing_pair": [a, b]})
        }
        ForkDefect::KernelPairExtra(a, b) => json!({"clause": d.clause(), "extra_pair": [a, b]}),
        ForkDefect::NotSurjective(y) => json!({"clause": d.clause(), "missed": y}),
    }
}

fn comparison_json(d: &ComparisonDefect) -> Value {
    match *d {
        ComparisonDefect::NotInjective(a, b) => json!({"not_injective": [a, b]}),
        ComparisonDefect::NotSurjective((x, b)) => json!({"missed_pair": [x, b]}),
    }
}

fn pushout_json(p: &PushoutCheck) -> Value {
    json!({"holds": p.holds(), "missing": p.missing.map(|(a, b)| vec![a, b])})
}

/// The diagram check on one named object; rejected inputs become errors.
pub fn check(ws: &Workspace, which: &str, name: Option<&str>) -> Result<Report> {
    let mut rep = Report::new("check");
    rep.set("which", which);
    let kind = match which {
        "exact-fork" => "fork",
        "barr-kock" => "barr-kock",
        "goursat-pushout" | "regular-pushout" => "split-square",
        "three-by-three" => "grid3x3",
        other => bail!("unknown check `{other}`"),
    };
    let entry = ws.diagram(kind, name)?;
    rep.set("diagram", entry.name.as_str());
    let ok = match (&entry.object, which) {
        (Object::Fork(fork), _) => {
            let d = fork.defect();
            rep.set("exact", d.is_none());
            if let Some(d) = d {
                rep.set("defect", fork_defect_json(&d));
            }
            d.is_none()
        }
        (Object::BarrKock(bk), _) => {
            let v = match &bk.v {
                Some(v) => v.clone(),
                None => induced_kernel_map(&bk.u, &bk.f, &bk.g)?,
            };
            let verdict = check_barr_kock(&v, &bk.u, &bk.w, &bk.f, &bk.g)?;
            rep.set("premises", "hold").set("pullback", verdict.holds());
            rep.set("second_square_pullback", verdict.second_square_pullback);
            if let Some(d) = &verdict.conclusion {
                rep.set("comparison", comparison_json(d));
            }
            verdict.holds()
        }
        (Object::SplitSquare(sq), "goursat-pushout") => {
            let p = check_goursat_pushout(sq);
            rep.set("goursat_pushout", pushout_json(&p));
            p.holds()
        }
        (Object::SplitSquare(sq), _) => {
            let p = check_regular_pushout_comparison(sq);
            rep.set("comparison_surjective", pushout_json(&p));
            p.holds()
        }
        (Object::Grid(g), _) => {
            let v = verify_3x3(g)?;
            rep.set("columns_ok", v.columns_ok)
                .set("middle_row_ok", v.middle_row_ok)
                .set("upper_exact", v.upper_exact)
                .set("lower_exact", v.lower_exact)
                .set("lemma_consistent", v.lemma_consistent);
            if let Some(d) = &v.upper_defect {
                rep.set("upper_defect", fork_defect_json(d));
            }
            if let Some(d) = &v.lower_defect {
                rep.set("lower_defect", fork_defect_json(d));
            }
            v.lemma_consistent
        }
        _ => unreachable!(),
    };
    rep.status = Status::of(ok);
    Ok(rep)
}

/// Seeded Barr–Kock harness: `count` instances with valid premises.
pub fn barr_kock_harness(seed: u64, count: usize, max_size: usize) -> Result<Report> {
    let (mut valid, mut rejected, mut failures, mut index) = (0usize, 0usize, 0usize, 0u64);
    let mut first_failure = None;
    while valid < count {
        let i = barr_kock_instance(seed, index, max_size);
        match check_barr_kock(&i.v, &i.u, &i.w, &i.f, &i.g) {
            Ok(v) => {
                valid += 1;
                if !v.holds() || !v.second_square_pullback {
                    failures += 1;
                    first_failure.get_or_insert(index);
                }
            }
            Err(Error::Rejected(_)) => rejected += 1,
            Err(e) => return Err(e.into()),
        }
        index += 1;
    }
    let mut rep = Report::new("check");
    rep.set("which", "barr-kock")
        .set("seed", seed)
        .set("max_size", max_size)
        .set("valid", valid)
        .set("rejected", rejected)
        .set("failures", failures);
    if let Some(i) = first_failure {
        rep.set("first_failure_index", i);
    }
    rep.status = Status::of(failures == 0);
    Ok(rep)
}

pub fn build(builder: &str, param: usize, name: Option<&str>) -> Result<Value> {
    let alg = builders::by_name(builder, param)?;
    let default = format!("{builder}-{param}");
    Ok(algebra_json(name.unwrap_or(&default), &alg))
}

/// Summary of every object in a workspace. Diagram checks are included;
/// rejected diagrams are listed with the reason.
pub fn report(ws: &Workspace, budget: usize, bound: usize) -> Result<Report> {
    let mut rep = Report::new("report");
    let mut items = Vec::new();
    for e in ws.entries() {
        let mut m = Map::new();
        m.insert("name".into(), e.name.clone().into());
        m.insert("kind".into(), e.object.kind().into());
        m.insert("source".into(), e.provenance.to_string().into());
        match &e.object {
            Object::Algebra(alg) => {
                m.insert("size".into(), alg.size().into());
                let ops: Vec<String> = alg
                    .signature()
                    .ops()
                    .iter()
                    .map(|o| format!("{}/{}", o.name, o.arity))
                    .collect();
                m.insert("ops".into(), ops.into());
                match Congruence::all(alg, bound) {
                    Ok(all) => {
                        m.insert("congruences".into(), all.len().into());
                        for level in [2, 3] {
                            let p = check_algebra_permutability(alg, level, bound)?;
                            m.insert(format!("{level}-permutable"), p.holds.into());
                        }
                    }
                    Err(err) => {
                        m.insert("congruences".into(), err.to_string().into());
                    }
                }
                if alg.size() > 0 {
                    for (key, res) in [
                        ("maltsev_term", find_maltsev_term(alg, budget)),
                        ("quaternary_pair", find_quaternary_pair(alg, budget)),
                    ] {
                        let v = match res {
                            Ok(r) => Value::Object(search_json(&r)),
                            Err(err) => err.to_string().into(),
                        };
                        m.insert(key.into(), v);
                    }
                }
            }
            Object::Relation(r) => {
                m.insert("size".into(), r.len().into());
                m.insert("flags".into(), flags_json(r));
            }
            Object::Function(f) => {
                m.insert("injective".into(), f.is_injective().into());
                m.insert("surjective".into(), f.is_surjective().into());
            }
            Object::Congruence {
                algebra,
                congruence,
            } => {
                let (_, alg) = ws.algebra(Some(algebra))?;
                m.insert("algebra".into(), algebra.clone().into());
                m.insert(
                    "blocks".into(),
                    blocks_json(alg.carrier(), congruence.partition()),
                );
            }
            Object::Fork(_) | Object::BarrKock(_) | Object::SplitSquare(_) | Object::Grid(_) => {
                let which: &[&str] = match &e.object {
                    Object::Fork(_) => &["exact-fork"],
                    Object::BarrKock(_) => &["barr-kock"],
                    Object::SplitSquare(_) => &["regular-pushout", "goursat-pushout"],
                    _ => &["three-by-three"],
                };
                for w in which {
                    let v = match check(ws, w, Some(&e.name)) {
                        Ok(r) => r.status.as_str().into(),
                        Err(err) => format!("rejected: {err}").into(),
                    };
                    m.insert((*w).into(), v);
                }
            }
        }
        items.push(Value::Object(m));
    }
    rep.set("objects", items);
    Ok(rep)
}
