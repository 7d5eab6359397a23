use serde_json::Value;
use superstab::cli::run;
use superstab::envelope::stab;
use superstab::exactalg::json::{lfp_from_json, matrix_from_json, poly_from_json, rf_from_json};
use superstab::exactalg::{parse_poly, Polynomial, VarId};
use superstab::fixedpoints::VersionTag;
use superstab::rmatrix::closed_form_r;
use superstab::weightfn::{parse_spec, weight_function, SymmetrizedRF};

fn call(args: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("superstab").chain(args.split_whitespace());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &str) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn weight_text_example() {
    let (code, out, _) = call("weight --r 00 --n 2 --sigma 1,2 --subset 1 --format text");
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "z2 - t1");
}

#[test]
fn weight_json_round_trip() {
    for (r, sigma, subset) in [("11", "2,1", "1,2"), ("01", "3,1,2", "2"), ("00", "1,2,3", "1,3")] {
        let n = sigma.split(',').count();
        let v = json(&format!("weight --r {r} --n {n} --sigma {sigma} --subset {subset} --format json"));
        let terms = v["terms"].as_array().unwrap().iter().map(|t| lfp_from_json(t).unwrap()).collect();
        let k = v["k"].as_u64().unwrap() as usize;
        let back = SymmetrizedRF::from_terms(terms, k);
        let w = weight_function(&parse_spec(r, n, sigma, subset).unwrap());
        assert_eq!(back.terms(), w.terms());

        let e = json(&format!("weight --r {r} --n {n} --sigma {sigma} --subset {subset} --format json --expand"));
        assert_eq!(rf_from_json(&e).unwrap(), w.to_ratfun());
    }
}

#[test]
fn restrict_json_matches_projective_tuple() {
    let v = json("restrict --r 01 --n 4 --sigma 1,2,3,4 --subset 2 --format json");
    let obj = v.as_object().unwrap();
    assert_eq!(obj.keys().collect::<Vec<_>>(), ["1", "2", "3", "4"]);
    let expected = [
        "h*(z3 - z1)*(z4 - z1)*(z3 - z2 + h)*(z4 - z2 + h)*(z4 - z3 + h)",
        "(z3 - z2)*(z4 - z2)*(z2 - z1 + h)*(z3 - z1 + h)*(z4 - z1 + h)*(z4 - z3 + h)",
        "0",
        "0",
    ];
    for (key, want) in ["1", "2", "3", "4"].iter().zip(expected) {
        assert_eq!(poly_from_json(&obj[*key]).unwrap(), parse_poly(want).unwrap(), "J={key}");
    }
    let c = stab(&parse_spec("01", 4, "1,2,3,4", "2").unwrap()).unwrap();
    for (j, p) in c.gkm.components() {
        let key = j.elems()[0].to_string();
        assert_eq!(&poly_from_json(&obj[&key]).unwrap(), p);
    }
}

#[test]
fn rmatrix_json_round_trip() {
    for r in VersionTag::ALL {
        let v = json(&format!("rmatrix --r {r} --format json"));
        assert_eq!(matrix_from_json(&v).unwrap(), closed_form_r(r).entries);
    }
}

#[test]
fn geometric_rmatrix_latex() {
    let (code, out, _) = call("rmatrix --r 10 --n 2 --sigma 2,1 --a 1 --format latex");
    assert_eq!(code, 0);
    assert!(out.starts_with("\\begin{bmatrix}"));
    assert!(out.contains("\\hbar"));
}

#[test]
fn axioms_report_json() {
    let v = json("axioms --r 11 --n 3 --sigma 2,3,1 --subset 1,3 --format json");
    for a in ["A0", "A1", "A2", "A3"] {
        assert_eq!(v[a]["pass"], Value::Bool(true), "{a}");
    }
}

#[test]
fn gkm_verdicts() {
    let (code, _, _) = call("gkm --r 10 --n 3 --sigma 3,1,2 --subset 2");
    assert_eq!(code, 0);
    let (code, out, _) = call("gkm --n 2 --k 1 --class z2-z1;1 --format json");
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], Value::Bool(false));
    assert_eq!(v["violations"].as_array().unwrap().len(), 1);
}

#[test]
fn representative_restricts_correctly() {
    let v = json("representative --r 00 --n 3 --sigma 2,1,3 --subset 1,3 --degree-bound 2 --format json");
    let f = poly_from_json(&v).unwrap();
    let spec = parse_spec("00", 3, "2,1,3", "1,3").unwrap();
    let c = stab(&spec).unwrap();
    for (j, want) in c.gkm.components() {
        let binds: Vec<_> = j
            .elems()
            .iter()
            .enumerate()
            .map(|(a, &b)| (VarId::t(a + 1), Polynomial::var(VarId::z(b))))
            .collect();
        assert_eq!(&f.substitute(&binds), want, "J={j}");
    }
    let (code, _, err) = call("representative --r 00 --n 3 --sigma 2,1,3 --subset 1,3 --degree-bound 1");
    assert_eq!(code, 1, "{err}");
}

#[test]
fn yang_baxter_and_comparison_exit_codes() {
    assert_eq!(call("yangbaxter").0, 0);
    assert_eq!(call("yangian-compare --r 11").0, 0);
    let (code, out, _) = call("yangian-compare --r 01");
    assert_eq!(code, 1);
    assert!(out.contains("conjugation: true"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        "weight --r 00 --n 2",
        "weight --r 02 --n 2 --subset 1",
        "weight --r 00 --n 2 --subset 3",
        "weight --r 00 --n 2 --subset 1 --k 2",
        "weight --r 00 --n 3 --sigma 2,1 --subset 1",
        "restrict --r 00 --n 9 --subset 1",
        "rmatrix --r 00 --n 2 --a 2",
        "representative --r 00 --n 2 --subset 1",
        "frobnicate",
    ] {
        let (code, _, err) = call(args);
        assert_eq!(code, 2, "{args}: {err}");
        assert!(!err.is_empty(), "{args}");
    }
    assert_eq!(call("--help").0, 0);
}

#[test]
fn guard_is_named() {
    let (code, _, err) = call("rmatrix --r 00 --n 4 --a 1");
    assert_eq!(code, 2);
    assert!(err.contains("guard"), "{err}");
}

#[test]
fn deterministic_output() {
    let a = call("restrict --r 11 --n 3 --sigma 3,2,1 --subset 1,2 --format json");
    let b = call("restrict --r 11 --n 3 --sigma 3,2,1 --subset 1,2 --format json");
    assert_eq!(a, b);
}

#[test]
fn fast_suite_tier() {
    let (code, out, _) = call("suite --max-n 2 --format json");
    let v: Value = serde_json::from_str(&out).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 13);
    let failing: Vec<u64> =
        rows.iter().filter(|r| r["pass"] == Value::Bool(false)).map(|r| r["id"].as_u64().unwrap()).collect();
    assert_eq!(code, i32::from(!failing.is_empty()));
}
