use std::path::PathBuf;
use std::process::Command;

use adeq::{parse_equation, render_equation, run, Outcome};
use proptest::prelude::*;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn adeq(args: &[&str]) -> Outcome {
    run(std::iter::once("adeq").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (u8, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = adeq(&full);
    let v = serde_json::from_str(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {:?} {:?}", out.stdout, out.stderr));
    (out.code, v)
}

#[test]
fn verify_two_exponential_example() {
    let (code, v) = json(&["verify", "--eq", &data("two_exp.eq"), "--ansatz", &data("two_exp.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "verify");
    let (code, v) = json(&["verify", "--eq", &data("two_exp.eq"), "--ansatz", &data("two_exp_bad.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "fail");
    assert!(!v["witness"].as_array().unwrap().is_empty());
}

#[test]
fn homogenize_mixed_degrees() {
    let (code, v) = json(&["homogenize", "--eq", &data("mixed_degrees.eq")]);
    assert_eq!(code, 0);
    let degrees: Vec<u64> =
        v["parts"].as_array().unwrap().iter().map(|p| p["degree"].as_u64().unwrap()).collect();
    assert_eq!(degrees, [21, 10]);
    let pairs: Vec<Vec<(u64, u64)>> = v["parts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            p["terms"]
                .as_array()
                .unwrap()
                .iter()
                .map(|t| (t["p"].as_u64().unwrap(), t["q"].as_u64().unwrap()))
                .collect()
        })
        .collect();
    assert_eq!(pairs, [vec![(16, 5), (12, 9), (11, 10)], vec![(3, 7), (2, 8)]]);
}

#[test]
fn scan_q_big() {
    let (code, v) = json(&["scan", "--eq", &data("q_big.eq"), "--max-order", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["max_nontrivial_order"], 1);
    assert_eq!(v["consistent_with_bound"], true);
    assert_eq!(v["counts"]["inconclusive"], 0);
}

#[test]
fn check_reports_conditions() {
    let (code, v) = json(&["check", "--eq", &data("two_exp.eq")]);
    assert_eq!((code, &v["verdict"]), (0, &Value::from("pass")));
    let (code, v) = json(&["check", "--eq", &data("degenerate.eq")]);
    assert_eq!(code, 1);
    assert_eq!(v["conditions"]["duplicate_p"], serde_json::json!([2]));
    let (code, v) = json(&["check", "--equation", "f1(x^3)*g1(x)^4 + f2(x^4)*g2(x)^3 = 0"]);
    assert_eq!(code, 1);
    assert_eq!(v["conditions"]["c3_p_not_q"], false);
}

#[test]
fn expand_routes_agree() {
    let (code, v) = json(&["expand", "--p", "3", "--order", "2", "--exp", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["routes_agree"], true);
    assert_eq!(v["coefficient_mass"], "9");
}

#[test]
fn constraints_of_generic_ansatz() {
    let dir = std::env::temp_dir().join(format!("adeq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("generic.json");
    std::fs::write(
        &path,
        r#"{"functions":[
            {"name":"f1","terms":[{"coeff":"a"}]},
            {"name":"g1","terms":[{"coeff":"b"}]},
            {"name":"f2","terms":[{"coeff":"c"}]},
            {"name":"g2","terms":[{"coeff":"e"}]}]}"#,
    )
    .unwrap();
    let (code, v) = json(&["constraints", "--eq", &data("q_big.eq"), "--ansatz", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 1);
    assert_eq!(v["constraints"][0]["poly"], "a*b^6 + c*e^5");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn classify_and_two_exponential() {
    let (code, v) = json(&["classify", "--eq", &data("case_a.eq")]);
    assert_eq!(code, 0);
    let ids: Vec<&str> = v["families"].as_array().unwrap().iter().map(|f| f["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["A", "C"]);
    assert_eq!(v["two_exponential"]["id"], "none");
    let (_, v) = json(&["classify", "--eq", &data("two_exp.eq")]);
    assert_eq!(v["two_exponential"]["id"], "two-exponential");
    assert_eq!(v["two_exponential"]["verified"], true);
    let (code, _) = json(&["classify", "--equation", "f(x)*g(x)^2 + f2(x^2)*g2(x)^1 + f3(x^3)*g3(x) = 0"]);
    assert_eq!(code, 1);
}

#[test]
fn sample_checks() {
    let (code, v) = json(&[
        "sample-check", "--eq", &data("two_exp.eq"), "--models", &data("two_exp_models.json"), "--seed", "42",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["residuals"].as_array().unwrap().len(), 20);
    let (code, _) = json(&[
        "sample-check", "--eq", &data("derivation.eq"), "--ansatz", &data("derivation.json"), "--seed", "5",
    ]);
    assert_eq!(code, 0);
    let (code, v) = json(&[
        "sample-check", "--eq", &data("two_exp.eq"), "--ansatz", &data("two_exp_bad.json"), "--seed", "5",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["first_failure"], 0);
    // seed is mandatory
    assert_eq!(adeq(&["sample-check", "--eq", &data("two_exp.eq"), "--models", &data("two_exp_models.json")]).code, 2);
}

#[test]
fn polarize_models() {
    let (code, v) = json(&["polarize", "--models", &data("polar3.json"), "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["tuples"].as_array().unwrap().len(), 20);
    let (code, v) = json(&["polarize", "--models", &data("polar3.json"), "--seed", "7", "--m", "4", "--samples", "3"]);
    assert_eq!(code, 0);
    assert!(v["tuples"].as_array().unwrap().iter().all(|t| t["value"] == "0"));
}

#[test]
fn corollaries() {
    let (code, v) = json(&["corollary", "--kind", "kappa-ff", "--p", "2", "--q", "4", "--n", "5", "--kappa", "2"]);
    assert_eq!(code, 0);
    assert!(v["members"].as_array().unwrap().is_empty());
    assert_eq!(v["scan"]["found"], 0);
    assert!(v["notes"][0].as_str().unwrap().contains("unrepresentable over Q"));
    let (_, v) = json(&["corollary", "--kind", "kappa-ff", "--p", "2", "--q", "4", "--n", "5", "--kappa", "1"]);
    assert!(!v["members"].as_array().unwrap().is_empty());
    let (code, v) = json(&["corollary", "--kind", "proportional", "--eq", &data("q_big.eq"), "--c", "1,-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["families"][0]["verified"], true);
    let (code, _) = json(&["corollary", "--kind", "kappa-fg", "--p", "2", "--q", "3", "--n", "5", "--kappa", "1"]);
    assert_eq!(code, 2);
    let (code, _) = json(&["corollary", "--kind", "proportional", "--eq", &data("q_big.eq"), "--c", "1,x"]);
    assert_eq!(code, 2);
}

#[test]
fn usage_errors() {
    assert_eq!(adeq(&[]).code, 2);
    assert_eq!(adeq(&["frobnicate"]).code, 2);
    assert_eq!(adeq(&["check"]).code, 2);
    assert_eq!(adeq(&["check", "--eq", "/nonexistent/file.eq"]).code, 2);
    let bad = adeq(&["check", "--equation", "f1(x^0)*g1(x) = 0"]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("line 1, column 6"), "{}", bad.stderr);
    let out = adeq(&["--json", "verify", "--eq", &data("two_exp.eq"), "--ansatz", &data("two_exp.eq")]);
    assert_eq!(out.code, 2);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "usage");
    let help = adeq(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("scan"));
}

#[test]
fn binary_matches_library() {
    let args = ["--json", "verify", "--eq", &data("two_exp.eq"), "--ansatz", &data("two_exp.json")];
    let out = Command::new(env!("CARGO_BIN_EXE_adeq")).args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), adeq(&args).stdout);
    let out = Command::new(env!("CARGO_BIN_EXE_adeq")).args(["check", "--equation", "f(x) = 0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

fn command_matrix() -> Vec<Vec<String>> {
    let d = |s: &str| data(s);
    let rows: Vec<Vec<String>> = vec![
        vec!["check".into(), "--eq".into(), d("mixed_degrees.eq")],
        vec!["homogenize".into(), "--eq".into(), d("mixed_degrees.eq")],
        vec!["expand".into(), "--p".into(), "4".into(), "--order".into(), "3".into()],
        vec!["constraints".into(), "--eq".into(), d("two_exp.eq"), "--ansatz".into(), d("two_exp_bad.json")],
        vec!["verify".into(), "--eq".into(), d("two_exp.eq"), "--ansatz".into(), d("two_exp.json")],
        vec!["classify".into(), "--eq".into(), d("case_a.eq")],
        vec!["scan".into(), "--eq".into(), d("case_a.eq"), "--max-order".into(), "2".into()],
        vec!["sample-check".into(), "--eq".into(), d("two_exp.eq"), "--models".into(), d("two_exp_models.json"), "--seed".into(), "9".into()],
        vec!["polarize".into(), "--models".into(), d("polar3.json"), "--seed".into(), "9".into(), "--samples".into(), "4".into()],
        vec!["corollary".into(), "--kind".into(), "kappa-fg".into(), "--p".into(), "1".into(), "--q".into(), "2".into(), "--n".into(), "5".into(), "--kappa".into(), "3".into()],
    ];
    rows
}

#[test]
fn byte_identical_reruns() {
    for row in command_matrix() {
        for flag in [None, Some("--json"), Some("--pretty")] {
            let args: Vec<&str> = flag.into_iter().chain(row.iter().map(String::as_str)).collect();
            let a = adeq(&args);
            let b = adeq(&args);
            assert_eq!(a, b, "{args:?}");
            assert!(a.code <= 1, "{args:?}: {}", a.stderr);
        }
    }
    let args: Vec<String> = command_matrix()[7].clone();
    let one = Command::new(env!("CARGO_BIN_EXE_adeq")).args(&args).output().unwrap();
    let two = Command::new(env!("CARGO_BIN_EXE_adeq")).args(&args).output().unwrap();
    assert_eq!(one.stdout, two.stdout);
}

/// Thirty inputs covering signs, coefficients, omitted exponents, shared
/// names, comments and line breaks.
const CORPUS: [&str; 30] = [
    "f(x)*g(x) = 0",
    "f(x^2)*g(x)^3 = 0",
    "f1(x^3)*g1(x)^4 + f2(x^2)*g2(x)^5 = 0",
    "f(x^2)*g(x)^3 - 2*f(x^4)*g(x)^1 = 0",
    "-f(x)*g(x)^2 + h(x^2)*k(x) = 0",
    "3/2*f(x)*g(x) = 0",
    "-7/3*f(x^5)*g(x)^2 + 1/4*h(x^3)*k(x)^4 = 0",
    "f(x) g(x) = 0",
    "f(x^2) g(x)^3 + h(x) k(x)^4 = 0",
    "f(x)*f(x) = 0",
    "f(x^2)*f(x)^3 - f(x^2)*f(x)^3 = 0",
    "a(x^16)*b(x)^5 + c(x^12)*d(x)^9 + e(x^11)*h(x)^10 + k(x^3)*l(x)^7 + m(x^2)*n(x)^8 = 0",
    "f_1(x)*g_1(x)^6 + f_2(x^2)*g_2(x)^5 = 0",
    "  f(x)  *  g(x) ^ 2   =   0  ",
    "f(x)*g(x)\n + h(x^2)*k(x) = 0",
    "# comment line\nf(x)*g(x) = 0",
    "f(x)*g(x) = 0 # trailing comment",
    "10*f(x)*g(x) - 10*h(x)*k(x) = 0",
    "-1*f(x)*g(x) = 0",
    "12/8*f(x)*g(x)^2 = 0",
    "-3/-4*f(x)*g(x) = 0",
    "F(x^9)*G(x)^9 = 0",
    "f(x^1)*g(x)^1 = 0",
    "phi(x^2)*psi(x)^3 + psi(x)*phi(x)^4 = 0",
    "f(x^100)*g(x)^100 = 0",
    "f(x)*g(x) + f(x)*g(x) + f(x)*g(x) = 0",
    "2*f(x^3)*g(x)^4 - 1*f2(x^2)*g2(x)^5 + f3(x)*g3(x)^6 = 0",
    "\n\nf(x)*g(x)\n=\n0\n",
    "f9(x^7)*g9(x) - 5/7*f8(x)*g8(x)^7 = 0",
    "x1(x^2)*y1(x)^2 = 0",
];

#[test]
fn round_trip_corpus() {
    for text in CORPUS {
        let Ok(spec) = parse_equation(text) else {
            // the only intentionally odd entry uses a negative denominator
            assert_eq!(text, "-3/-4*f(x)*g(x) = 0");
            continue;
        };
        let rendered = render_equation(&spec);
        let again = parse_equation(&rendered).unwrap_or_else(|e| panic!("{rendered}: {e}"));
        assert_eq!(again, spec, "{text} -> {rendered}");
        assert_eq!(render_equation(&again), rendered);
    }
}

fn fname() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["f", "g", "h", "f1", "g2", "phi"]).prop_map(String::from)
}

fn join(parts: impl Iterator<Item = (i64, String)>) -> String {
    let mut out = String::new();
    for (i, (n, rest)) in parts.enumerate() {
        let sign = match (i, n < 0) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        out.push_str(&format!("{sign}{}{rest}", n.abs()));
    }
    out
}

fn term() -> impl Strategy<Value = (i64, i64, String, u32, String, u32)> {
    (-9i64..=9, 1i64..=5, fname(), 1u32..=9, fname(), 1u32..=9).prop_filter("nonzero", |t| t.0 != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_equations_round_trip(terms in prop::collection::vec(term(), 1..6)) {
        let text = join(terms.iter().map(|(n, d, f, p, g, q)| (*n, format!("/{d}*{f}(x^{p})*{g}(x)^{q}"))));
        let text = format!("{text} = 0");
        let spec = parse_equation(&text).unwrap();
        prop_assert_eq!(spec.len(), terms.len());
        let again = parse_equation(&render_equation(&spec)).unwrap();
        prop_assert_eq!(again, spec);
    }

    #[test]
    fn exit_codes_follow_contract(
        terms in prop::collection::vec(term(), 1..4),
        mangle in 0usize..6,
        cmd in 0usize..4,
    ) {
        let mut text = join(terms.iter().map(|(n, _, f, p, g, q)| (*n, format!("*{f}(x^{p})*{g}(x)^{q}"))));
        let broken = match mangle {
            0 => { text.push_str(" = 1"); true }
            1 => { text = text.replacen("(x^", "(x^-", 1); text.push_str(" = 0"); true }
            2 => { text = text.replacen('*', "**", 1); text.push_str(" = 0"); true }
            _ => { text.push_str(" = 0"); false }
        };
        let args: Vec<&str> = match cmd {
            0 => vec!["--json", "check", "--equation", &text],
            1 => vec!["--json", "homogenize", "--equation", &text],
            2 => vec!["--json", "classify", "--equation", &text],
            _ => vec!["--json", "scan", "--equation", &text, "--max-order", "1", "--grid", "1"],
        };
        let out = adeq(&args);
        if broken {
            prop_assert_eq!(out.code, 2);
            prop_assert!(out.stderr.starts_with("error: "));
        } else {
            prop_assert!(out.code <= 2);
            let v: Value = serde_json::from_str(&out.stdout).unwrap();
            prop_assert_eq!(&v["schema_version"], 1);
            match out.code {
                0 => prop_assert!(v.get("error").is_none()),
                1 => prop_assert!(v.get("error").is_some() || v.get("verdict") == Some(&Value::from("fail"))
                        || v.get("consistent_with_bound") == Some(&Value::Bool(false))),
                _ => prop_assert_eq!(&v["error"]["kind"], "usage"),
            }
            if cmd == 1 {
                prop_assert_eq!(out.code, 0);
            }
        }
    }
}
