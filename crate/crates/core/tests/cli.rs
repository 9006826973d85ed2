//! End-to-end tests of the `onerel` binary: exit codes, documented examples and
//! golden outputs. Set `UPDATE_GOLDEN=1` to rewrite the golden files.

use std::path::PathBuf;
use std::process::Command;

fn onerel(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_onerel"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const PI2: &str = "baa(ba)^2=a";
const M0: &str = "b^2a^2=a";

#[test]
fn pair_exit_codes() {
    let (code, out, _) = onerel(&["pair", "--relation", PI2, "--u", "ab^2a^2a", "--v", "ba^2baa", "--fuel", "100"]);
    assert_eq!((code, out.as_str()), (0, "Equal(6)\n"));
    let (code, out, _) = onerel(&["pair", "--relation", PI2, "--u", "abab", "--v", "abab"]);
    assert_eq!((code, out.as_str()), (0, "Equal(0)\n"));
    let (code, out, _) = onerel(&["pair", "--relation", M0, "--u", "b^2ab^2ab^2", "--v", "a", "--fuel", "10"]);
    assert_eq!((code, out.as_str()), (1, "NotEqual\n"));
    let (code, out, _) = onerel(&["pair", "--relation", PI2, "--u", "ab^2a^2a", "--v", "ba^2baa", "--fuel", "3"]);
    assert_eq!(code, 2);
    assert!(out.starts_with("OutOfFuel(3 steps"));
}

#[test]
fn usage_errors_exit_above_two() {
    for args in [
        &["pair", "--relation", "ab=aa", "--u", "a", "--v", "a"][..],
        &["pair", "--relation", PI2, "--u", "ac", "--v", "a"],
        &["pair", "--u", "a", "--v", "a"],
        &["sigma", "--n", "1"],
        &["sigma", "--n", "2", "--k-max", "9", "--verify-naive"],
        &["bogus"],
        &["collatz", "--n", "2", "--m", "-1", "--mm", "1"],
    ] {
        let (code, _, err) = onerel(args);
        assert!(code > 2, "{args:?} exited {code}");
        assert!(!err.is_empty(), "{args:?} wrote nothing to stderr");
    }
}

#[test]
fn sigma_examples() {
    let (code, out, _) = onerel(&["sigma", "--n", "2", "--k-max", "7"]);
    assert_eq!(code, 0);
    assert!(out.lines().last().unwrap().contains("sigma=21870"));
    let (code, out, _) = onerel(&["sigma", "--n", "4", "--k-max", "4", "--verify-macro"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last().unwrap(), "k=4 sigma=34966 phases=4375+17484+13107 verified=macro");
    let (code, out, _) = onerel(&["sigma", "--n", "2", "--k-max", "1", "--verify-naive"]);
    assert_eq!((code, out.as_str()), (0, "k=1 sigma=6 phases=1+4+1 verified=naive\n"));
}

#[test]
fn collatz_examples() {
    let (code, out, _) = onerel(&["collatz", "--n", "2", "--m", "2", "--mm", "1"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("Terminated(2, (0, 21))\n"));
    let (_, out, _) = onerel(&["collatz", "--n", "2", "--m", "0", "--mm", "7"]);
    assert_eq!(out, "0: (0, 7)\nTerminated(0, (0, 7))\n");
    let (_, out, _) = onerel(&["collatz", "--n", "3", "--m", "5", "--mm", "5", "--format", "csv"]);
    assert!(out.starts_with("step,m,n\n0,5,5\n1,2,2\n"));
}

#[test]
fn jsonl_trace_is_one_object_per_line() {
    let (code, out, _) = onerel(&["pair", "--n", "2", "--u", "abbaaa", "--v", "baabaa", "--trace", "--format", "jsonl"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 7);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v.get("step").is_some() && v.get("pair").is_some());
    }
}

fn fixtures() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("m0_decompose_1", vec!["decompose", "--relation", M0, "--word", "bbbbabbaabbab"]),
        ("m0_decompose_2", vec!["decompose", "--relation", M0, "--word", "bbabbababab"]),
        ("m0_decompose_3", vec!["decompose", "--relation", M0, "--word", "bbabbabb"]),
        ("m0_run_trace", vec!["run", "--relation", M0, "--word", "bbbbabbaabbab", "--trace"]),
        ("m0_run_ba", vec!["run", "--relation", M0, "--word", "ba", "--fuel", "6", "--trace", "--compact"]),
        ("pi2_pair_k1", vec!["pair", "--n", "2", "--u", "abbaaa", "--v", "baabaa", "--trace"]),
        ("pi2_pair_k2", vec!["pair", "--n", "2", "--u", "ab^4a^4a", "--v", "b^3a^4baa", "--trace"]),
        ("pi2_pair_k3_jsonl", vec!["pair", "--n", "2", "--u", "ab^6a^6a", "--v", "b^5a^6baa", "--trace", "--format", "jsonl"]),
        ("pi2_run_trace", vec!["run", "--n", "2", "--word", "bbaaa", "--fuel", "4", "--trace", "--compact"]),
        ("pi2_sigma_csv", vec!["sigma", "--n", "2", "--k-max", "7", "--format", "csv"]),
        ("pi2_sequences_csv", vec!["sequences", "--n", "2", "--format", "csv"]),
        ("pi2_macro_k3", vec!["macro", "--n", "2", "--k", "3", "--verify-naive"]),
        ("pi2_macro_k3_jsonl", vec!["macro", "--n", "2", "--k", "3", "--format", "jsonl"]),
        ("pi2_oracle_k1", vec!["oracle", "--n", "2", "--u", "abbaaa", "--v", "baabaa", "--max-depth", "6"]),
        ("pi2_dehn_csv", vec!["dehn", "--n", "2", "--from", "8", "--length", "12", "--format", "csv"]),
        ("pi2_classify", vec!["classify", "--n", "2"]),
        ("collatz_n2", vec!["collatz", "--n", "2", "--m", "6", "--mm", "9", "--format", "csv"]),
    ]
}

#[test]
fn golden_outputs_are_stable() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in fixtures() {
        let (code, first, _) = onerel(&args);
        let (code2, second, _) = onerel(&args);
        assert_eq!((code, &first), (code2, &second), "{name} is not deterministic");
        let path = dir.join(format!("{name}.txt"));
        let recorded = format!("$ onerel {}\n# exit {code}\n{first}", args.join(" "));
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &recorded).unwrap();
        } else {
            let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {path:?}"));
            assert_eq!(recorded, want, "{name} differs from its golden file");
        }
    }
}
