//! Command-line front end. `run` parses arguments, dispatches on the verb and
//! returns the process exit status: 0 success, 1 verification failure, 2 usage.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::combinat::{enumerate_subsets, Permutation, Subset};
use crate::envelope::{find_representative, gkm_check, stab, verify_axioms, AxiomReport, GKMClass};
use crate::error::Error;
use crate::exactalg::json::{lfp_to_json, matrix_to_json, poly_to_json, rf_to_json};
use crate::exactalg::{parse_poly, Polynomial};
use crate::fixedpoints::VersionTag;
use crate::rmatrix::{check_matrix, closed_form_r, geometric_r, yang_baxter_check, yangian_identification, yangian_r};
use crate::suite::{run_suite, SuiteConfig};
use crate::weightfn::{weight_function, WeightFunctionSpec};

#[derive(Parser, Debug)]
#[command(name = "superstab", version, about = "Super weight functions, stable envelopes and R-matrices")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Emit W^(r)_{σ,I}.
    Weight(Params),
    /// Emit the restrictions of W^(r)_{σ,I} to every fixed point.
    Restrict(Params),
    /// Check the stable envelope axioms for κ^(r)_{σ,I}.
    Axioms(Params),
    /// Check the GKM conditions for a tuple (--class) or for κ^(r)_{σ,I}.
    Gkm(Params),
    /// Emit a closed-form, Yangian or geometric R-matrix.
    Rmatrix(Params),
    /// Verify the Yang-Baxter equation.
    Yangbaxter(Params),
    /// Compare the Yangian and geometric R-matrices.
    YangianCompare(Params),
    /// Find a polynomial in t, z, h restricting to a given tuple.
    Representative(Params),
    /// Run the acceptance suite.
    Suite(Params),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Closed,
    ClosedCheck,
    Yangian,
    YangianCheck,
    Geometric,
}

#[derive(Args, Debug, Clone)]
struct Params {
    /// Version: 00, 10, 01 or 11.
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Inferred from --subset when omitted.
    #[arg(long)]
    k: Option<usize>,
    /// One-line notation, e.g. 2,3,1. Defaults to the identity.
    #[arg(long)]
    sigma: Option<String>,
    /// Comma list, or "none" for the empty set.
    #[arg(long)]
    subset: Option<String>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long = "degree-bound")]
    degree_bound: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long = "max-n", default_value_t = 4)]
    max_n: usize,
    #[arg(long, default_value_t = SuiteConfig::default().seed)]
    seed: u64,
    /// Polynomials separated by ';', one per k-subset in lexicographic order.
    #[arg(long)]
    class: Option<String>,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Emit the weight function as a single rational function.
    #[arg(long)]
    expand: bool,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardViolation { .. } | Error::Parse(_) | Error::Domain(_) | Error::SizeMismatch(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let mut buf = String::new();
    let outcome = dispatch(&cli.verb, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "usage error: {m}");
            2
        }
        Err(Failure::Compute(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn dispatch(verb: &Verb, out: &mut String) -> Outcome {
    match verb {
        Verb::Weight(p) => weight(p, out),
        Verb::Restrict(p) => restrict(p, out),
        Verb::Axioms(p) => axioms(p, out),
        Verb::Gkm(p) => gkm(p, out),
        Verb::Rmatrix(p) => rmatrix(p, out),
        Verb::Yangbaxter(p) => yangbaxter(p, out),
        Verb::YangianCompare(p) => yangian_compare(p, out),
        Verb::Representative(p) => representative(p, out),
        Verb::Suite(p) => suite(p, out),
    }
}

fn usage(verb: &str, msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("{verb}: {msg}"))
}

fn version(verb: &str, p: &Params) -> Result<VersionTag, Failure> {
    let r = p.r.as_deref().ok_or_else(|| usage(verb, "--r is required"))?;
    Ok(r.parse()?)
}

fn versions(p: &Params) -> Result<Vec<VersionTag>, Failure> {
    match &p.r {
        Some(r) => Ok(vec![r.parse()?]),
        None => Ok(VersionTag::ALL.to_vec()),
    }
}

fn need_n(verb: &str, p: &Params) -> Result<usize, Failure> {
    p.n.ok_or_else(|| usage(verb, "--n is required"))
}

fn sigma(verb: &str, p: &Params, n: usize) -> Result<Permutation, Failure> {
    let s = match p.sigma.as_deref() {
        None | Some("id") => Permutation::identity(n),
        Some(s) => Permutation::parse(s)?,
    };
    if s.n() != n {
        return Err(usage(verb, format!("--sigma {s} is not a permutation of 1..{n}")));
    }
    Ok(s)
}

fn spec(verb: &str, p: &Params) -> Result<WeightFunctionSpec, Failure> {
    let r = version(verb, p)?;
    let n = need_n(verb, p)?;
    let sub = p.subset.as_deref().ok_or_else(|| usage(verb, "--subset is required"))?;
    let subset = Subset::parse(n, sub)?;
    if let Some(k) = p.k {
        if k != subset.k() {
            return Err(usage(verb, format!("--k {k} disagrees with --subset {sub}")));
        }
    }
    let sigma = sigma(verb, p, n)?;
    Ok(WeightFunctionSpec::new(r, sigma, subset)?)
}

fn subset_key(s: &Subset) -> String {
    if s.k() == 0 {
        "none".into()
    } else {
        s.elems().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn json_line(out: &mut String, v: &Value) {
    out.push_str(&serde_json::to_string_pretty(v).expect("serializable"));
    out.push('\n');
}

fn weight(p: &Params, out: &mut String) -> Outcome {
    let s = spec("weight", p)?;
    let w = weight_function(&s);
    let (k, n) = (s.k(), s.n());
    match (p.format, p.expand) {
        (Format::Text, false) => out.push_str(&format!("{w}\n")),
        (Format::Text, true) => out.push_str(&format!("{}\n", w.to_ratfun())),
        (Format::Latex, false) => {
            let parts: Vec<String> = w.terms().iter().map(|t| t.to_latex()).collect();
            out.push_str(&format!("{}\n", if parts.is_empty() { "0".into() } else { parts.join(" + ") }));
        }
        (Format::Latex, true) => out.push_str(&format!("{}\n", w.to_ratfun().to_latex())),
        (Format::Json, false) => json_line(
            out,
            &json!({
                "r": s.r.as_str(), "n": n, "k": k, "sigma": s.sigma.to_string(), "subset": subset_key(&s.subset),
                "terms": w.terms().iter().map(lfp_to_json).collect::<Vec<_>>(),
            }),
        ),
        (Format::Json, true) => json_line(out, &rf_to_json(&w.to_ratfun(), k, n)),
    }
    Ok(true)
}

fn restrict(p: &Params, out: &mut String) -> Outcome {
    let s = spec("restrict", p)?;
    let c = stab(&s)?;
    emit_class(&c.gkm, p.format, out);
    Ok(true)
}

fn emit_class(c: &GKMClass, format: Format, out: &mut String) {
    match format {
        Format::Text => {
            for (j, v) in c.components() {
                out.push_str(&format!("{j}: {v}\n"));
            }
        }
        Format::Latex => {
            let parts: Vec<String> = c.components().values().map(Polynomial::to_latex).collect();
            out.push_str(&format!("\\left( {} \\right)\n", parts.join(",\\ ")));
        }
        Format::Json => {
            let map: serde_json::Map<String, Value> =
                c.components().iter().map(|(j, v)| (subset_key(j), poly_to_json(v, 0, c.n()))).collect();
            json_line(out, &Value::Object(map));
        }
    }
}

fn axiom_json(rep: &AxiomReport) -> Value {
    let map: serde_json::Map<String, Value> = rep
        .checks()
        .iter()
        .map(|(name, c)| (name.to_string(), json!({ "pass": c.pass, "witness": c.witness })))
        .collect();
    Value::Object(map)
}

fn axioms(p: &Params, out: &mut String) -> Outcome {
    let s = spec("axioms", p)?;
    let rep = verify_axioms(&stab(&s)?);
    match p.format {
        Format::Json => json_line(out, &axiom_json(&rep)),
        _ => {
            for (name, c) in rep.checks() {
                let tag = if c.pass { "pass" } else { "FAIL" };
                out.push_str(&format!("{name} {tag}{}\n", if c.witness.is_empty() { String::new() } else { format!(": {}", c.witness) }));
            }
        }
    }
    Ok(rep.all_pass())
}

/// The tuple from `--class`, or `κ^(r)_{σ,I}` when no tuple is given.
fn class_input(verb: &str, p: &Params) -> Result<GKMClass, Failure> {
    match &p.class {
        Some(text) => {
            let n = need_n(verb, p)?;
            let k = p.k.ok_or_else(|| usage(verb, "--k is required with --class"))?;
            let polys = text.split(';').map(|x| parse_poly(x.trim())).collect::<Result<Vec<_>, _>>()?;
            let expected = enumerate_subsets(n, k)?.len();
            if polys.len() != expected {
                return Err(usage(verb, format!("--class has {} entries, expected {expected}", polys.len())));
            }
            Ok(GKMClass::from_list(n, k, polys)?)
        }
        None => Ok(stab(&spec(verb, p)?)?.gkm),
    }
}

fn gkm(p: &Params, out: &mut String) -> Outcome {
    let c = class_input("gkm", p)?;
    let bad = gkm_check(&c);
    match p.format {
        Format::Json => {
            let v: Vec<Value> = bad
                .iter()
                .map(|b| json!({ "left": subset_key(&b.left), "right": subset_key(&b.right), "i": b.i, "j": b.j }))
                .collect();
            json_line(out, &json!({ "pass": bad.is_empty(), "violations": v }));
        }
        _ if bad.is_empty() => out.push_str("GKM conditions hold\n"),
        _ => {
            for b in &bad {
                out.push_str(&format!("z{} - z{} does not divide the difference at {} and {}\n", b.i, b.j, b.left, b.right));
            }
        }
    }
    Ok(bad.is_empty())
}

fn small_labels() -> Vec<String> {
    ["v1⊗v1", "v1⊗v2", "v2⊗v1", "v2⊗v2"].map(String::from).to_vec()
}

fn rmatrix(p: &Params, out: &mut String) -> Outcome {
    let r = version("rmatrix", p)?;
    let kind = p.kind.unwrap_or(if p.n.is_some() { Kind::Geometric } else { Kind::Closed });
    if kind == Kind::Geometric {
        let n = need_n("rmatrix", p)?;
        let a = p.a.ok_or_else(|| usage("rmatrix", "--a is required for geometric R-matrices"))?;
        if a == 0 || a >= n {
            return Err(usage("rmatrix", format!("--a must lie in 1..{}", n.saturating_sub(1))));
        }
        let g = geometric_r(r, n, &sigma("rmatrix", p, n)?, a)?;
        match p.format {
            Format::Text => out.push_str(&g.to_string()),
            Format::Latex => out.push_str(&format!("{}\n", g.to_latex())),
            Format::Json => json_line(out, &matrix_to_json(g.matrix(), &g.labels(), n)),
        }
        return Ok(true);
    }
    let m = match kind {
        Kind::Closed => closed_form_r(r),
        Kind::ClosedCheck => check_matrix(&closed_form_r(r)),
        Kind::Yangian => yangian_r(r).0,
        _ => yangian_r(r).1,
    };
    match p.format {
        Format::Text => out.push_str(&m.to_string()),
        Format::Latex => out.push_str(&format!("{}\n", m.to_latex())),
        Format::Json => json_line(out, &matrix_to_json(&m.entries, &small_labels(), 0)),
    }
    Ok(true)
}

fn yangbaxter(p: &Params, out: &mut String) -> Outcome {
    let mut rows = Vec::new();
    for r in versions(p)? {
        rows.push((r, "geometric", yang_baxter_check(&closed_form_r(r))?));
        rows.push((r, "yangian", yang_baxter_check(&yangian_r(r).0)?));
    }
    let all = rows.iter().all(|x| x.2);
    match p.format {
        Format::Json => {
            let v: Vec<Value> =
                rows.iter().map(|(r, f, ok)| json!({ "r": r.as_str(), "flavor": f, "pass": ok })).collect();
            json_line(out, &Value::Array(v));
        }
        _ => {
            for (r, f, ok) in &rows {
                out.push_str(&format!("{f} r={r}: {}\n", if *ok { "pass" } else { "FAIL" }));
            }
        }
    }
    Ok(all)
}

fn yangian_compare(p: &Params, out: &mut String) -> Outcome {
    let mut all = true;
    let mut items = Vec::new();
    for r in versions(p)? {
        let rep = yangian_identification(r)?;
        all &= rep.agrees();
        match p.format {
            Format::Json => items.push(json!({
                "r": r.as_str(),
                "agrees": rep.agrees(),
                "mismatches": rep.mismatches.iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
                "conjugate_agrees": rep.conjugate_agrees,
                "yangian": matrix_to_json(&rep.yangian, &small_labels(), 0),
                "geometric": matrix_to_json(&rep.geometric, &small_labels(), 0),
            })),
            _ => {
                let status = if rep.agrees() { "agree" } else { "DIFFER" };
                out.push_str(&format!("r={r}: {status}\n"));
                for (i, j) in &rep.mismatches {
                    out.push_str(&format!(
                        "  entry ({},{}): Yangian {}  geometric {}\n",
                        i + 1,
                        j + 1,
                        rep.yangian.get(*i, *j),
                        rep.geometric.get(*i, *j)
                    ));
                }
                if !rep.agrees() {
                    out.push_str(&format!("  agree after diag(1,1,-1,1) conjugation: {}\n", rep.conjugate_agrees));
                }
            }
        }
    }
    if p.format == Format::Json {
        json_line(out, &Value::Array(items));
    }
    Ok(all)
}

fn representative(p: &Params, out: &mut String) -> Outcome {
    let bound = p.degree_bound.ok_or_else(|| usage("representative", "--degree-bound is required"))?;
    let c = class_input("representative", p)?;
    let f = find_representative(&c, bound)?;
    match p.format {
        Format::Text => out.push_str(&format!("{f}\n")),
        Format::Latex => out.push_str(&format!("{}\n", f.to_latex())),
        Format::Json => json_line(out, &poly_to_json(&f, c.k(), c.n())),
    }
    Ok(true)
}

fn suite(p: &Params, out: &mut String) -> Outcome {
    if p.max_n < 2 {
        return Err(usage("suite", "--max-n must be at least 2"));
    }
    let results = run_suite(&SuiteConfig { max_n: p.max_n, seed: p.seed });
    match p.format {
        Format::Json => {
            let v: Vec<Value> = results
                .iter()
                .map(|c| json!({ "id": c.id, "title": c.title, "pass": c.pass, "detail": c.detail }))
                .collect();
            json_line(out, &Value::Array(v));
        }
        Format::Text => {
            for c in &results {
                out.push_str(&format!("{:>2}  {}  {}: {}\n", c.id, if c.pass { "PASS" } else { "FAIL" }, c.title, c.detail));
            }
        }
        Format::Latex => {
            out.push_str("\\begin{tabular}{rll}\n");
            for c in &results {
                out.push_str(&format!("{} & {} & {} \\\\\n", c.id, c.title, if c.pass { "pass" } else { "fail" }));
            }
            out.push_str("\\end{tabular}\n");
        }
    }
    Ok(results.iter().all(|c| c.pass))
}
