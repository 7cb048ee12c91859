use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};

use ratknot_core::census::{self, Rho};
use ratknot_core::conway::{even_form_of, to_positive_form};
use ratknot_core::homology::{realize_module, solve_det_congruence};
use ratknot_core::polyinv::{self, LaurentPoly};
use ratknot_core::trivial::{
    certify_unknotting_one, family_knot, make_wn, parse_signs, verify_n_trivial_structure, Sign, ViolationKind,
};
use ratknot_core::verify::{self, VerifyConfig};
use ratknot_core::{ConwaySeq, ExtRational, MirrorMode, RationalKnot, TwistParams};

use crate::output::{num, str, Report};
use crate::{CliError, Command, Entries, Global};

type Result<T> = std::result::Result<T, CliError>;

fn int(text: &str, what: &str) -> Result<BigInt> {
    text.trim().parse().map_err(|_| CliError::Usage(format!("{what}: expected an integer, found {text:?}")))
}

fn sequence(e: &Entries) -> Result<ConwaySeq> {
    Ok(e.joined().parse()?)
}

fn params(e: &Entries) -> Result<TwistParams> {
    let values = e.items.iter().map(|s| int(s, "twist parameter")).collect::<Result<Vec<_>>>()?;
    Ok(TwistParams::new(values)?)
}

fn knot(e: &Entries) -> Result<RationalKnot> {
    Ok(e.joined().parse()?)
}

fn poly(p: &LaurentPoly, var: &str) -> Value {
    let terms: Vec<Value> = p.terms().map(|(e, c)| json!([e, num(c)])).collect();
    json!({ "text": p.display_in(var), "terms": terms })
}

fn knot_json(k: &RationalKnot) -> Value {
    json!({ "name": str(k), "p": num(k.p()), "q": num(k.q()) })
}

fn seq_json(a: &ConwaySeq) -> Value {
    Value::Array(a.entries().iter().map(num).collect())
}

pub fn run(cmd: &Command, g: &Global) -> Result<Report> {
    match cmd {
        Command::IfEval(e) => {
            let a = sequence(e)?;
            let f = a.if_eval();
            Ok(Report::new("if-eval", f.to_string(), json!({ "sequence": seq_json(&a), "value": str(&f) })))
        }
        Command::Fraction(e) => {
            let a = sequence(e)?;
            let f = a.tangle_fraction();
            Ok(Report::new("fraction", f.to_string(), json!({ "sequence": seq_json(&a), "fraction": str(&f) })))
        }
        Command::PositiveForm { fraction } => {
            let f: ExtRational = fraction.parse()?;
            let a = to_positive_form(&f)?;
            Ok(Report::new(
                "positive-form",
                a.to_string(),
                json!({ "fraction": str(&f), "sequence": seq_json(&a), "crossings": num(&a.crossing_sum()) }),
            ))
        }
        Command::EvenForm { fraction, up_to_mirror } => {
            let f: ExtRational = fraction.parse()?;
            let mode = if *up_to_mirror { MirrorMode::UpToMirror } else { MirrorMode::Strict };
            let e = even_form_of(&f, mode)?;
            Ok(Report::new(
                "even-form",
                e.to_string(),
                json!({ "fraction": str(&f), "sequence": seq_json(&e), "genus": e.len() / 2 }),
            ))
        }
        Command::Wn(e) => {
            let t = params(e)?;
            let w = make_wn(&t);
            Ok(Report::new(
                "wn",
                w.to_string(),
                json!({ "n": t.depth(), "sequence": seq_json(&w), "length": w.len(), "fraction": str(&w.tangle_fraction()) }),
            ))
        }
        Command::VerifyTrivial { params: e, trials } => {
            let t = params(e)?;
            let r = verify_n_trivial_structure(&t, *trials, g.seed);
            let mut text = format!("{} fraction checks over {} random vectors: ", r.checks, r.trials);
            text.push_str(if r.passed() { "no violations" } else { "VIOLATIONS" });
            if let Some(nontrivial) = r.nontrivial {
                let _ = write!(text, "\ninput parameters give a {} tangle", if nontrivial { "non-trivial" } else { "trivial" });
            }
            let violations: Vec<Value> = r
                .violations
                .iter()
                .map(|v| {
                    let kind = match v.kind {
                        ViolationKind::NotVanishing { index } => format!("zeroing a_{index} left fraction {}", v.fraction),
                        ViolationKind::Trivial => "all parameters non-zero but the tangle is trivial".into(),
                    };
                    let _ = write!(text, "\n  {:?}: {kind}", v.params.iter().map(ToString::to_string).collect::<Vec<_>>());
                    json!({ "params": v.params.iter().map(num).collect::<Vec<_>>(), "violation": kind })
                })
                .collect();
            Ok(Report::new(
                "verify-trivial",
                text,
                json!({
                    "params": t.params().iter().map(num).collect::<Vec<_>>(),
                    "trials": r.trials,
                    "checks": r.checks,
                    "nontrivial": r.nontrivial,
                    "violations": violations,
                }),
            )
            .with_ok(r.passed() && r.nontrivial != Some(false)))
        }
        Command::Family { params: e, c } => {
            let t = params(e)?;
            let c = int(c, "c")?;
            let k = family_knot(&t, &c)?;
            let mut a = make_wn(&t);
            a.push(c.clone());
            let genus = polyinv::genus_rational(&k);
            let unknotting = t.params().last().is_some_and(|x| x.magnitude() == &2u8.into());
            let certified = if unknotting { Some(certify_unknotting_one(&t, &c)?) } else { None };
            let mut text = format!("{k}\nsequence {a}\ndeterminant {}\ngenus {genus}", k.p());
            if let Some(u) = certified {
                let _ = write!(text, "\nunknotting number one certified: {u}");
            }
            Ok(Report::new(
                "family",
                text,
                json!({
                    "knot": knot_json(&k),
                    "sequence": seq_json(&a),
                    "genus": genus,
                    "unknotting_one": certified,
                }),
            )
            .with_ok(certified != Some(false)))
        }
        Command::Invariants { knot: e, degree } => {
            let k = knot(e)?;
            let degree = (*degree).max(3);
            let v = polyinv::jones(&k);
            let (delta, nabla) = polyinv::alexander_conway(&k);
            let sigma = polyinv::signature(&k);
            let genus = polyinv::genus_rational(&k);
            let data = polyinv::vassiliev_extract(&k, degree)?;
            let taylor: Vec<String> = data.jones_taylor.iter().map(ToString::to_string).collect();
            let text = format!(
                "{k}\ndeterminant {}\nJones V(t) = {}\nAlexander Δ(t) = {}\nConway ∇(z) = {}\nsignature {sigma}\ngenus {genus}\nv2 {}\nv3 {}\nV(e^x) Taylor u_0..u_{degree}: {}",
                k.p(),
                v.display_in("t"),
                delta.display_in("t"),
                nabla.display_in("z"),
                data.v2,
                data.v3,
                taylor.join(", ")
            );
            Ok(Report::new(
                "invariants",
                text,
                json!({
                    "knot": knot_json(&k),
                    "determinant": num(k.p()),
                    "jones": poly(&v, "t"),
                    "alexander": poly(&delta, "t"),
                    "conway": poly(&nabla, "z"),
                    "signature": sigma,
                    "genus": genus,
                    "v2": num(&data.v2),
                    "v3": str(&data.v3),
                    "jones_taylor": taylor,
                }),
            ))
        }
        Command::Similar { knot: e, degree } => {
            let k = knot(e)?;
            let r = polyinv::vassiliev::similarity_report(&k, *degree)?;
            let verdict = if r.holds() { "passes" } else { "fails" };
            let mut text = format!("{k} {verdict} the degree-{} test", r.degree);
            if !r.jones_failures.is_empty() {
                let _ = write!(text, "\n  u_k ≠ 0 for k in {:?}", r.jones_failures);
            }
            if !r.conway_failures.is_empty() {
                let _ = write!(text, "\n  z^k coefficient ≠ 0 for k in {:?}", r.conway_failures);
            }
            let _ = write!(text, "\nnote: {}", r.scope());
            Ok(Report::new(
                "similar",
                text,
                json!({
                    "knot": knot_json(&k),
                    "degree": r.degree,
                    "holds": r.holds(),
                    "jones_failures": r.jones_failures,
                    "conway_failures": r.conway_failures,
                    "scope": r.scope(),
                }),
            )
            .with_ok(r.holds()))
        }
        Command::DetSolve { p, k, n, signs } => {
            let p = int(p, "p")?;
            let k = int(k, "k")?;
            let signs = match signs {
                Some(s) => parse_signs(s)?,
                None => vec![Sign::Plus; *n],
            };
            if signs.len() != *n {
                return Err(CliError::Usage(format!("--signs has {} entries but --n is {n}", signs.len())));
            }
            let sol = solve_det_congruence(&p, &k, *n, &signs)?;
            let text = format!(
                "s = {}\ndet = {}\nsequence {}\nknot {}\nunknotting number one: {}",
                sol.s, sol.det, sol.sequence, sol.knot, sol.unknotting_one
            );
            Ok(Report::new(
                "det-solve",
                text,
                json!({
                    "p": num(&p),
                    "k": num(&k),
                    "n": n,
                    "signs": signs.iter().map(ToString::to_string).collect::<String>(),
                    "s": num(&sol.s),
                    "det": num(&sol.det),
                    "sequence": seq_json(&sol.sequence),
                    "knot": knot_json(&sol.knot),
                    "unknotting_one": sol.unknotting_one,
                }),
            )
            .with_ok(sol.unknotting_one))
        }
        Command::RealizeHomology { p, orders, n } => {
            let p = int(p, "p")?;
            let orders = orders.iter().map(|d| int(d, "order")).collect::<Result<Vec<_>>>()?;
            let r = realize_module(&p, &orders, *n)?;
            let mut text = format!("{}\ntarget   {}\nachieved {}", r.knot, r.target, r.achieved);
            for part in &r.parts {
                let _ = write!(text, "\n  {} from {} (det {})", part.knot, part.sequence, part.det);
            }
            let parts: Vec<Value> = r
                .parts
                .iter()
                .map(|s| json!({ "knot": knot_json(&s.knot), "sequence": seq_json(&s.sequence), "det": num(&s.det), "s": num(&s.s) }))
                .collect();
            Ok(Report::new(
                "realize-homology",
                text,
                json!({
                    "p": num(&p),
                    "n": n,
                    "knot": str(&r.knot),
                    "summands": parts,
                    "target": str(&r.target),
                    "achieved": str(&r.achieved),
                    "verified": r.verified(),
                }),
            )
            .with_ok(r.verified()))
        }
        Command::Census { max_k, rho, enumerate } => census_report(g, *max_k, rho, *enumerate),
        Command::VerifyAll { n } => {
            if *n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            let reports = verify::run_all(&VerifyConfig { seed: g.seed, depth: *n });
            let ok = reports.iter().all(|r| r.passed());
            let mut text: Vec<String> = reports.iter().map(ToString::to_string).collect();
            let failed = reports.iter().filter(|r| !r.passed()).count();
            text.push(format!("{} passed, {failed} failed", reports.len() - failed));
            let criteria: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "id": r.id,
                        "title": r.title,
                        "passed": r.passed(),
                        "limit_ms": r.limit.as_millis() as u64,
                        "detail": r.detail,
                    })
                })
                .collect();
            let rows = reports
                .iter()
                .map(|r| vec![r.id.to_string(), r.title.to_string(), r.passed().to_string(), r.detail.clone()])
                .collect();
            Ok(Report::new("verify-paper", text.join("\n"), json!({ "n": n, "criteria": criteria }))
                .with_ok(ok)
                .with_csv(vec!["id", "criterion", "pass", "detail"], rows))
        }
    }
}

fn census_report(g: &Global, max_k: u64, rho: &str, enumerate: Option<u64>) -> Result<Report> {
    if max_k == 0 {
        return Err(CliError::Usage("--max-k must be positive".into()));
    }
    let rho: Rho = rho.parse()?;
    let path = g.cache.clone().unwrap_or_else(census::default_cache_path);
    let (table, _) = census::load_or_compute(&path, max_k)?;
    let report = census::asymptotic_check(&table, max_k, &rho)?;
    let k0 = report.k0.map_or_else(|| "none".to_string(), |k| k.to_string());
    let mut text = format!(
        "d_k for 1 <= k <= {max_k}; recursion {}\nd_k >= exp({} (ln k)^2) for all k in [{k0}, {max_k}] ({} failing k)",
        if table.first_inconsistency().is_none() { "re-verified" } else { "BROKEN" },
        report.rho,
        report.failures
    );
    let mut json = json!({
        "max_k": max_k,
        "rho": str(&report.rho),
        "k0": report.k0,
        "failures": report.failures,
        "rows": report.rows.iter().map(|r| json!({ "k": r.k, "d_k": num(&r.d), "bound": num(&r.bound), "pass": r.pass })).collect::<Vec<_>>(),
    });
    if let Some(limit) = enumerate {
        if limit > max_k {
            return Err(CliError::Usage(format!("--enumerate {limit} exceeds --max-k {max_k}")));
        }
        let rows = census::compare_enumeration(&table, limit)?;
        let differing: Vec<u64> = rows.iter().filter(|r| !r.agrees()).map(|r| r.k).collect();
        let _ = write!(text, "\nenumeration differs from the recursion at k = {differing:?}");
        json["enumeration"] =
            rows.iter().map(|r| json!({ "k": r.k, "enumerated": r.enumerated, "recursion": num(&r.recursion) })).collect();
    }
    let rows = report
        .rows
        .iter()
        .map(|r| vec![r.k.to_string(), r.d.to_string(), r.bound.to_string(), r.pass.to_string()])
        .collect();
    Ok(Report::new("census", text, json)
        .with_ok(table.first_inconsistency().is_none())
        .with_csv(vec!["k", "d_k", "bound", "pass"], rows))
}
