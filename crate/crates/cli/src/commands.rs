use std::fmt::Write;

use serde_json::{json, Value};
use ybd_core::classical_limit::{
    build_delta_r, build_r0, check_bd, check_cybe, compare_up_to_flip, r_from_r_jet, FlipComparison,
};
use ybd_core::deformations::{
    build_p1, check_constraints, gauge_fix, second_order_obstruction, solve_constraints, solve_first_order_with,
    DeformationSpec,
};
use ybd_core::esoteric::{build_esoteric_r, check_esoteric, esoteric_coeffs, esoteric_relations, RelationMatch};
use ybd_core::par::Exec;
use ybd_core::relations::{antiplane_relations, cross_relations, degree3_dims, plane_relations, render};
use ybd_core::scalars::{format_scalar, rational_to_json, scalar_to_json};
use ybd_core::standard_p::{
    build_standard_p, check_braid, check_hecke, check_sl_condition, check_braid_factors, convert_p_r, pair_report_json,
    residual_json, triple_report_json, BraidForm, ParamSet,
};
use ybd_core::{Cyc, PairOp, Ring};

use crate::cli::*;
use crate::input::{self, Failure, Res};

pub struct Outcome {
    pub text: String,
    pub report: Value,
    pub pass: bool,
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn done(text: String, report: Value) -> Res<Outcome> {
    Ok(Outcome { text, report, pass: true })
}

fn checked(text: String, report: Value, pass: bool) -> Res<Outcome> {
    Ok(Outcome { text, report, pass })
}

fn op_text(op: &PairOp) -> String {
    let mut s = String::new();
    for (i, o, v) in op.iter() {
        let _ = writeln!(s, "[in {:?}, out {:?}] = {}", i, o, format_scalar(v));
    }
    s
}

fn optional_spec(a: &SpecArgs) -> Res<Option<DeformationSpec>> {
    if a.file.is_none() && !a.principal && !a.exceptional {
        Ok(None)
    } else {
        input::spec(a).map(Some)
    }
}

pub fn run(cmd: &Command, exec: Exec) -> Res<Outcome> {
    match cmd {
        Command::Params(c) => params(c),
        Command::Build(c) => build(c),
        Command::Check(c) => check(c),
        Command::Relations(a) => relations(a),
        Command::Deform(c) => deform(c, exec),
        Command::Classical(c) => classical(c),
        Command::Esoteric(c) => esoteric(c),
    }
}

fn params(c: &ParamsCmd) -> Res<Outcome> {
    match c {
        ParamsCmd::Validate(f) => {
            let p = input::params(&f.params)?;
            done(format!("params: valid (n = {})\n", p.n()), json!({ "valid": true, "params": p.to_json() }))
        }
        ParamsCmd::Show(f) => {
            let p = input::params(&f.params)?;
            let mut text = format!("n = {}\na = {}\n", p.n(), format_scalar(p.a()));
            for ((i, j), v) in p.q_upper() {
                let _ = writeln!(text, "q^{{{i}{j}}} = {}   q^{{{j}{i}}} = {}", format_scalar(v), format_scalar(&p.q(*j, *i)));
            }
            done(text, p.to_json())
        }
        ParamsCmd::Random { n, a, bound, seed } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let p = ParamSet::random(*n, input::scalar("a", a)?, (*bound).max(1), &mut rng)?;
            done(serde_json::to_string_pretty(&p.to_json()).unwrap_or_default() + "\n", p.to_json())
        }
    }
}

fn build(c: &BuildCmd) -> Res<Outcome> {
    let op = match c {
        BuildCmd::Standard { params, form } => {
            let p = build_standard_p(&input::params(&params.params)?);
            if *form == Form::R {
                convert_p_r(&p)
            } else {
                p
            }
        }
        BuildCmd::Esoteric { spec, form } => {
            let r = build_esoteric_r(&input::esoteric(spec)?)?;
            if *form == Form::P {
                convert_p_r(&r)
            } else {
                r
            }
        }
    };
    done(op_text(&op), op.to_json())
}

fn check(c: &CheckCmd) -> Res<Outcome> {
    match c {
        CheckCmd::Hecke(f) => {
            let pr = input::params(&f.params)?;
            let r = check_hecke(&build_standard_p(&pr), pr.a())?;
            checked(format!("hecke: {}\n", verdict(r.pass)), pair_report_json(&r), r.pass)
        }
        CheckCmd::Braid { params, form } => {
            let p = build_standard_p(&input::params(&params.params)?);
            let r = match form {
                BraidFormArg::Braid => check_braid(&p, BraidForm::Braid),
                BraidFormArg::Qybe => check_braid(&convert_p_r(&p), BraidForm::Qybe),
            };
            let name = if *form == BraidFormArg::Braid { "braid" } else { "qybe" };
            checked(format!("{name}: {}\n", verdict(r.pass)), triple_report_json(&r), r.pass)
        }
        CheckCmd::Theorem2(f) => {
            let pr = input::params(&f.params)?;
            let r = check_braid_factors(&build_standard_p(&pr), pr.a())?;
            let report = json!({
                "pass": r.pass,
                "minus_one_entries": residual_json(&r.minus_one),
                "plus_a_entries": residual_json(&r.plus_a),
            });
            checked(format!("braid (P12 - 1) and braid (P12 + a): {}\n", verdict(r.pass)), report, r.pass)
        }
        CheckCmd::Sl(f) => {
            let r = check_sl_condition(&input::params(&f.params)?);
            let mut text = format!("sl: {}\n", verdict(r.pass));
            let per_j: Vec<Value> = r
                .per_j
                .iter()
                .map(|(j, ok, ratio)| {
                    let _ = writeln!(text, "  j={j}: ratio {}", format_scalar(ratio));
                    json!({ "j": j, "pass": ok, "ratio": scalar_to_json(ratio) })
                })
                .collect();
            checked(text, json!({ "pass": r.pass, "per_j": per_j }), r.pass)
        }
        CheckCmd::Cybe { op, classical, spec } => {
            let r = match (op, classical) {
                (Some(path), _) => input::operator(path)?,
                (None, Some(path)) => r_from_r_jet(&input::classical(path)?, optional_spec(spec)?.as_ref())?,
                (None, None) => return Err(Failure::input("give --op FILE or --classical FILE")),
            };
            let rep = check_cybe(&r);
            checked(format!("cybe: {}\n", verdict(rep.pass)), triple_report_json(&rep), rep.pass)
        }
        CheckCmd::Bd { classical, spec } => {
            let rep = check_bd(&input::classical(&classical.classical)?, &input::spec(spec)?)?;
            let mut text = format!("bd: {}\n", verdict(rep.pass));
            let per_m: Vec<Value> = rep
                .per_m
                .iter()
                .map(|(m, lhs, rhs)| {
                    let _ = writeln!(text, "  m={m}: {lhs} (expected {rhs})");
                    json!({ "m": m, "lhs": rational_to_json(lhs), "rhs": rational_to_json(rhs), "pass": lhs == rhs })
                })
                .collect();
            checked(text, json!({ "pass": rep.pass, "per_m": per_m }), rep.pass)
        }
    }
}

fn relations(a: &RelationsArgs) -> Res<Outcome> {
    let pr = input::params(&a.params.params)?;
    let p = build_standard_p(&pr);
    let mut text = String::new();
    let mut report = serde_json::Map::new();
    let mut section = |name: &str, rels: Vec<ybd_core::relations::Relation>| {
        let _ = writeln!(text, "# {name}");
        text += &render(&rels);
        report.insert(name.into(), json!(rels.iter().map(|r| r.to_string()).collect::<Vec<_>>()));
    };
    if matches!(a.sector, Sector::Plane | Sector::All) {
        section("plane", plane_relations(&p));
    }
    if matches!(a.sector, Sector::Antiplane | Sector::All) {
        section("antiplane", antiplane_relations(&p, pr.a())?);
    }
    if matches!(a.sector, Sector::Cross | Sector::All) {
        section("cross", cross_relations(&p, pr.a())?);
    }
    if a.dims {
        let (d_plane, d_anti) = degree3_dims(&p, pr.a())?;
        let _ = writeln!(text, "# degree 3: plane {d_plane}, antiplane {d_anti}");
        report.insert("degree3".into(), json!({ "plane": d_plane, "antiplane": d_anti }));
    }
    done(text, Value::Object(report))
}

fn deform(c: &DeformCmd, exec: Exec) -> Res<Outcome> {
    match c {
        DeformCmd::Build { params, spec } => {
            let p1 = build_p1(&input::params(&params.params)?, &input::spec(spec)?)?;
            done(op_text(&p1), p1.to_json())
        }
        DeformCmd::Check { params, spec } => {
            let pr = input::params(&params.params)?;
            let spec = input::spec(spec)?;
            let cons = check_constraints(&pr, &spec)?;
            let mut text = format!("constraints: {}\n", verdict(cons.pass));
            let per_m: Vec<Value> = cons
                .per_m
                .iter()
                .map(|(m, r)| {
                    let _ = writeln!(text, "  m={m}: ratio {}", format_scalar(r));
                    json!({ "m": m, "ratio": scalar_to_json(r) })
                })
                .collect();
            let class4 = cons.class4.as_ref().map(|c| {
                let _ = writeln!(
                    text,
                    "  (x,y,u,v) = ({}, {}, {}, {}): {}",
                    format_scalar(&c.x),
                    format_scalar(&c.y),
                    format_scalar(&c.u),
                    format_scalar(&c.v),
                    verdict(c.pass)
                );
                json!({ "x": scalar_to_json(&c.x), "y": scalar_to_json(&c.y), "u": scalar_to_json(&c.u), "v": scalar_to_json(&c.v), "pass": c.pass })
            });
            let p = build_standard_p(&pr);
            let p1 = build_p1(&pr, &spec)?;
            let mut exact = Vec::new();
            let mut all = cons.pass;
            for eps in [1, -1, 5] {
                let q = p.add(&p1.scale(&Cyc::from_int(eps)))?;
                let braid = check_braid(&q, BraidForm::Braid).pass;
                let hecke = check_hecke(&q, pr.a())?.pass;
                all &= braid && hecke;
                let _ = writeln!(text, "  eps={eps}: braid {} hecke {}", verdict(braid), verdict(hecke));
                exact.push(json!({ "eps": eps, "braid": braid, "hecke": hecke }));
            }
            let report = json!({ "pass": all, "constraints": { "pass": cons.pass, "per_m": per_m, "class4": class4 }, "exact": exact });
            checked(text, report, all)
        }
        DeformCmd::Solve { n, spec } => {
            let fam = solve_constraints(*n, &input::spec(spec)?)?;
            done(fam.describe(), fam.to_json())
        }
        DeformCmd::FirstOrder(f) => {
            let pr = input::params(&f.params)?;
            let b = solve_first_order_with(&pr, exec)?;
            let text = format!(
                "solutions: {}\ntrivial: {}\nessential: {}\nbraid-only kernel: {}\nhecke automatic: {}\n",
                b.basis.len(),
                b.trivial_dim,
                b.essential_dim,
                b.braid_kernel_dim,
                b.hecke_for_free
            );
            let report = json!({
                "n": pr.n(),
                "solution_dim": b.basis.len(),
                "trivial_dim": b.trivial_dim,
                "essential_dim": b.essential_dim,
                "braid_kernel_dim": b.braid_kernel_dim,
                "hecke_for_free": b.hecke_for_free,
                "essential": b.essential.iter().map(PairOp::to_json).collect::<Vec<_>>(),
            });
            done(text, report)
        }
        DeformCmd::GaugeFix { params, p1 } => {
            let fixed = gauge_fix(&input::params(&params.params)?, &input::operator(p1)?)?;
            done(op_text(&fixed), fixed.to_json())
        }
        DeformCmd::Obstruction { params, p1 } => {
            let pr = input::params(&params.params)?;
            let p1 = match p1 {
                Some(path) => input::operator(path)?,
                None => solve_first_order_with(&pr, exec)?
                    .essential
                    .into_iter()
                    .next()
                    .ok_or_else(|| Failure::input("no essential first-order direction at these parameters"))?,
            };
            let ob = second_order_obstruction(&pr, &p1)?;
            let text = format!("second order: {}\n", if ob.solvable { "solvable" } else { "obstructed" });
            let report = json!({ "solvable": ob.solvable, "p1": p1.to_json(), "p2": ob.p2.as_ref().map(PairOp::to_json) });
            done(text, report)
        }
    }
}

fn classical(c: &ClassicalCmd) -> Res<Outcome> {
    match c {
        ClassicalCmd::R0(f) => {
            let r = build_r0(&input::classical(&f.classical)?);
            done(op_text(&r), r.to_json())
        }
        ClassicalCmd::DeltaR { n, spec } => {
            let d = build_delta_r(*n, &input::spec(spec)?)?;
            done(op_text(&d), d.to_json())
        }
        ClassicalCmd::Extract { classical, spec } => {
            let cp = input::classical(&classical.classical)?;
            let spec = optional_spec(spec)?;
            let r = r_from_r_jet(&cp, spec.as_ref())?;
            let mut expected = build_r0(&cp);
            if let Some(s) = &spec {
                let eps = Cyc::rational(cp.epsilon.clone()).mul_ref(&s.amplitude);
                expected = expected.add(&build_delta_r(cp.n(), s)?.scale(&eps))?;
            }
            let cmp = compare_up_to_flip(&r, &expected)?;
            let cybe = check_cybe(&r).pass;
            let pass = cybe && cmp != FlipComparison::Different;
            let text = format!("{}r0 + eps dr: {}\ncybe: {}\n", op_text(&r), cmp.as_str(), verdict(cybe));
            checked(text, json!({ "r": r.to_json(), "comparison": cmp.as_str(), "cybe": cybe, "pass": pass }), pass)
        }
    }
}

fn matches_json(ms: &[RelationMatch], text: &mut String) -> Vec<Value> {
    ms.iter()
        .map(|m| {
            let _ = writeln!(text, "  {}: {} [{}]", m.label, m.relation, if m.holds { "holds" } else { "does not hold" });
            json!({ "label": m.label, "relation": m.relation.to_string(), "holds": m.holds })
        })
        .collect()
}

fn esoteric(c: &EsotericCmd) -> Res<Outcome> {
    match c {
        EsotericCmd::Check(a) => {
            let spec = input::esoteric(a)?;
            let r = check_esoteric(&spec)?;
            let text = format!("braid: {}\nhecke: {}\n", verdict(r.braid.pass), verdict(r.hecke.pass));
            let report = json!({
                "pass": r.pass,
                "spec": spec.to_json(),
                "braid": triple_report_json(&r.braid),
                "hecke": pair_report_json(&r.hecke),
            });
            checked(text, report, r.pass)
        }
        EsotericCmd::Relations(a) => {
            let spec = input::esoteric(a)?;
            let r = esoteric_relations(&spec)?;
            let mut text = String::from("expected forms:\n");
            let deformed = matches_json(&r.deformed, &mut text);
            text += "alternative forms:\n";
            let alternatives = matches_json(&r.alternatives, &mut text);
            let _ = writeln!(
                text,
                "span equality: plane {} antiplane {} cross {}",
                r.plane_equal, r.antiplane_equal, r.cross_equal
            );
            let report = json!({
                "pass": r.pass,
                "deformed": deformed,
                "alternatives": alternatives,
                "plane_equal": r.plane_equal,
                "antiplane_equal": r.antiplane_equal,
                "cross_equal": r.cross_equal,
            });
            checked(text, report, r.pass)
        }
        EsotericCmd::Coeffs(a) => {
            let spec = input::esoteric(a)?;
            let c = esoteric_coeffs(&spec)?;
            let mut text = String::new();
            for (i, m) in c.mu_prime.iter().enumerate() {
                let _ = writeln!(text, "mu'_{} = {}", i + 1, format_scalar(m));
            }
            for ((i, j), l) in &c.lambda {
                let _ = writeln!(
                    text,
                    "lambda_{i}{j} = {}   lambda'_{i}{j} = {}",
                    format_scalar(l),
                    format_scalar(&c.lambda_prime[&(*i, *j)])
                );
            }
            let pairs = |m: &std::collections::BTreeMap<(u8, u8), Cyc>| {
                m.iter().map(|((i, j), v)| json!({ "i": i, "j": j, "val": scalar_to_json(v) })).collect::<Vec<_>>()
            };
            let report = json!({
                "mu_prime": c.mu_prime.iter().map(scalar_to_json).collect::<Vec<_>>(),
                "lambda": pairs(&c.lambda),
                "lambda_prime": pairs(&c.lambda_prime),
            });
            done(text, report)
        }
    }
}
