use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn qrsl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrsl")).args(args).env_remove("QRSL_JOBS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = qrsl(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn jsonl(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).expect("one JSON object per line")).collect()
}

/// Splits an aligned table on runs of two or more spaces.
fn table_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .take_while(|l| !l.is_empty())
        .map(|l| l.split("  ").map(str::trim).filter(|c| !c.is_empty()).map(String::from).collect())
        .collect()
}

fn idl_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".idl").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn list_counts_every_kind() {
    let recs = jsonl(&ok(&["list", "--format", "jsonl"]));
    let count = |k: &str| recs.iter().filter(|r| r["kind"] == k).count();
    assert_eq!((count("identity"), count("relation"), count("theorem")), (12, 6, 12));
    assert_eq!(count("combination"), 1);
}

#[test]
fn list_grep_finds_the_mod_36_identities() {
    let recs = jsonl(&ok(&["list", "--grep", "36", "--format", "jsonl"]));
    let mut ids: Vec<&str> =
        recs.iter().filter(|r| r["kind"] == "identity").map(|r| r["name"].as_str().unwrap()).collect();
    ids.sort();
    assert_eq!(ids, ["new36", "ram36", "slater124", "slater125"]);
}

#[test]
fn list_table_matches_jsonl() {
    let table = table_rows(&ok(&["list"]));
    let recs = jsonl(&ok(&["list", "--format", "jsonl"]));
    assert_eq!(table[0], ["kind", "name", "label"]);
    assert_eq!(table.len() - 1, recs.len());
    for (row, rec) in table[1..].iter().zip(&recs) {
        assert_eq!(row, &[&rec["kind"], &rec["name"], &rec["label"]].map(|v| v.as_str().unwrap().to_string()));
    }
}

#[test]
fn expand_golden() {
    assert_eq!(ok(&["expand", "--builtin", "rr1", "--side", "rhs", "--order", "9"]), "1,1,1,1,2,2,3,3,4,5\n");
    assert_eq!(ok(&["expand", "--builtin", "rr1", "--order", "9"]), "1,1,1,1,2,2,3,3,4,5\n");
    assert_eq!(ok(&["expand", "--expr", "1 / pochinf(q^1; q^1)", "--order", "4"]), "1,1,2,3,5\n");
    assert_eq!(ok(&["expand", "--builtin", "new36", "--order", "0"]), "1\n");
    assert_eq!(ok(&["expand", "--expr", "sum(j>=0) q^(j^2+j) / poch(q^1; q^1; j)", "--order", "6"]), "1,0,1,1,1,1,2\n");
}

#[test]
fn expand_shifted_product_lines_up_with_sum() {
    for name in ["slater125", "m18-4"] {
        let lhs = ok(&["expand", "--builtin", name, "--order", "40"]);
        assert_eq!(lhs, ok(&["expand", "--builtin", name, "--side", "rhs", "--order", "40"]), "{name}");
    }
}

#[test]
fn expand_formats_agree() {
    let args = ["expand", "--builtin", "ram12", "--side", "rhs", "--order", "12"];
    let line = ok(&args);
    let recs = jsonl(&ok(&[&args[..], &["--format", "jsonl"]].concat()));
    let csv = ok(&[&args[..], &["--format", "csv"]].concat());
    let from_json: Vec<&str> = recs.iter().map(|r| r["coeff"].as_str().unwrap()).collect();
    assert_eq!(line.trim_end(), from_json.join(","));
    let from_csv: Vec<&str> = csv.lines().skip(1).map(|l| l.split_once(',').unwrap().1).collect();
    assert_eq!(from_csv, from_json);
    assert!(recs.iter().enumerate().all(|(n, r)| r["n"] == n && r["target"] == "ram12" && r["side"] == "rhs"));
}

#[test]
fn expand_bivariate_rows() {
    let text = ok(&["expand", "--builtin", "aram12", "--order", "3"]);
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("a^0: 1,0,0,0\n"));
}

#[test]
fn expand_file_needs_a_name_when_ambiguous() {
    let f = idl_file(
        "identity a : sum(j>=0) q^(j^2) / poch(q^1; q^1; j) == resprod(5; 1,4)\n\
         identity b : sum(j>=0) q^(j^2+j) / poch(q^1; q^1; j) == resprod(5; 2,3)\n",
    );
    let path = f.path().to_str().unwrap();
    assert_eq!(qrsl(&["expand", "--file", path]).status.code(), Some(2));
    assert_eq!(ok(&["expand", "--file", path, "--name", "b", "--side", "rhs", "--order", "6"]), "1,0,1,1,1,1,2\n");
}

#[test]
fn count_golden() {
    assert_eq!(ok(&["count", "ram36-signed", "6"]), "3\n");
    assert_eq!(ok(&["count", "s-count", "--l", "1", "--n", "2"]), "1\n");
    assert_eq!(ok(&["count", "partitions", "4"]), "5\n");
    assert_eq!(
        ok(&["count", "rr1-gap2", "10"]),
        ok(&["count", "residues", "10", "--modulus", "5", "--residues", "1,4"])
    );
    assert_eq!(ok(&["count", "rr2-gap2-no1", "10"]), ok(&["count", "gap2", "10", "--min-part", "2"]));
    assert_eq!(ok(&["count", "rr2-gap2-no1", "10"]), "4\n");
    assert_eq!(
        ok(&["count", "partitions", "--n-max", "5", "--format", "csv"]),
        "n,count\n0,1\n1,1\n2,2\n3,3\n4,5\n5,7\n"
    );
}

#[test]
fn count_show_lists_members() {
    let recs = jsonl(&ok(&["count", "ram36-signed", "6", "--show", "--format", "jsonl"]));
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[0]["positive"], "(4,2)");
    assert_eq!(recs[0]["negative"], "()");
}

#[test]
fn count_graded_without_l_covers_every_length() {
    let recs = jsonl(&ok(&["count", "t-count", "--n", "4", "--format", "jsonl"]));
    assert_eq!(recs.len(), 5);
    assert!(recs.iter().enumerate().all(|(l, r)| r["l"] == l && r["n"] == 4));
}

#[test]
fn crosscheck_shifted_theorem() {
    let text = ok(&["crosscheck", "m18-4-comb", "--n-max", "20"]);
    assert!(text.starts_with("m18-4-comb (proof, n <= 20): pass\n"), "{text}");
    assert!(text.contains("shift d=2"));
    let recs = jsonl(&ok(&["crosscheck", "m18-4-comb", "--n-max", "20", "--format", "jsonl"]));
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["status"], "pass");
    assert_eq!(recs[0]["rows"].as_array().unwrap().len(), 21);
}

#[test]
fn crosscheck_csv_golden() {
    assert_eq!(
        ok(&["crosscheck", "rr1-comb", "--n-max", "5", "--format", "csv"]),
        "theorem,variant,shift,n,l,lhs_count,rhs_count,sum_coeff,product_coeff,agrees\n\
         rr1-comb,proof,0,0,,1,1,1,1,yes\n\
         rr1-comb,proof,0,1,,1,1,1,1,yes\n\
         rr1-comb,proof,0,2,,1,1,1,1,yes\n\
         rr1-comb,proof,0,3,,1,1,1,1,yes\n\
         rr1-comb,proof,0,4,,2,2,2,2,yes\n\
         rr1-comb,proof,0,5,,2,2,2,2,yes\n"
    );
}

#[test]
fn crosscheck_table_matches_jsonl() {
    let text = ok(&["crosscheck", "aslater110-comb", "--n-max", "6"]);
    let rec = &jsonl(&ok(&["crosscheck", "aslater110-comb", "--n-max", "6", "--format", "jsonl"]))[0];
    let rows = table_rows(text.split_once('\n').unwrap().1);
    let json_rows = rec["rows"].as_array().unwrap();
    assert_eq!(rows.len() - 1, json_rows.len());
    for (row, j) in rows[1..].iter().zip(json_rows) {
        let cell = |v: &Value| match v {
            Value::Null => "-".to_string(),
            Value::String(s) => s.clone(),
            v => v.to_string(),
        };
        let expected =
            [&j["n"], &j["l"], &j["lhs_count"], &j["rhs_count"], &j["sum_coeff"], &j["product_coeff"]].map(cell);
        assert_eq!(row[..6], expected);
        assert_eq!(row[6], "yes");
    }
}

#[test]
fn as_stated_readings_fail_with_exit_1() {
    let o = qrsl(&["crosscheck", "m18-2-comb", "--n-max", "6", "--as-stated", "--format", "jsonl"]);
    assert_eq!(o.status.code(), Some(1));
    let rec = &jsonl(&stdout(&o))[0];
    assert_eq!((rec["status"].as_str(), rec["variant"].as_str()), (Some("fail"), Some("as-stated")));
    assert_eq!(qrsl(&["crosscheck", "m18-4-comb", "--n-max", "10", "--as-stated"]).status.code(), Some(0));
}

#[test]
fn verify_small_orders() {
    ok(&["verify", "--builtin", "new36", "--order", "0"]);
    let recs = jsonl(&ok(&["verify", "--builtin", "rr1,arr1,new36-chain", "--order", "20", "--format", "jsonl"]));
    let names: Vec<&str> = recs.iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        ["rr1", "arr1", "arr1@a=1 sum vs rr1", "arr1@a=1 product vs rr1", "new36-chain-sum", "new36-chain-product"]
    );
}

#[test]
fn verify_all_at_order_200() {
    let recs = jsonl(&ok(&["verify", "--builtin", "all", "--order", "200", "--format", "jsonl"]));
    assert!(recs.iter().all(|r| r["status"] == "pass" && r["order"] == 200));
    assert_eq!(recs.len(), 12 + 6 + 2 * 4 + 2);
}

#[test]
fn verify_table_matches_jsonl() {
    let args = ["verify", "--builtin", "rr2,ram12", "--order", "30"];
    let mut f = idl_file("identity off : sum(j>=0) q^(j^2) / poch(q^1; q^1; j) == resprod(5; 1,3)\n");
    f.flush().unwrap();
    for args in [args.to_vec(), vec!["verify", "--file", f.path().to_str().unwrap(), "--order", "30"]] {
        let table = table_rows(&stdout(&qrsl(&args)));
        let recs = jsonl(&stdout(&qrsl(&[&args[..], &["--format", "jsonl"]].concat())));
        assert_eq!(table[0], ["name", "order", "status", "n", "l", "lhs", "rhs", "millis", "detail"]);
        for (row, r) in table[1..].iter().zip(&recs) {
            let m = &r["mismatch"];
            let s = |v: &Value| {
                v.as_str().map_or_else(|| if v.is_null() { "-".into() } else { v.to_string() }, String::from)
            };
            let expected = [&r["name"], &r["order"], &r["status"], &m["n"], &m["l"], &m["lhs"], &m["rhs"]].map(s);
            assert_eq!(row[..7], expected);
        }
    }
}

#[test]
fn mismatch_exits_1() {
    let f = idl_file("identity off : sum(j>=0) q^(j^2) / poch(q^1; q^1; j) == resprod(5; 1,3)\n");
    let o = qrsl(&["verify", "--file", f.path().to_str().unwrap(), "--format", "jsonl"]);
    assert_eq!(o.status.code(), Some(1));
    let rec = &jsonl(&stdout(&o))[0];
    assert_eq!(rec["status"], "fail");
    assert_eq!(rec["mismatch"]["n"], 3);
}

#[test]
fn parse_errors_exit_2_with_position() {
    let f = idl_file("# two lines\nidentity x : sum(j>=0) q^(j^2) / poch(q^1; q^1 j) == 1\n");
    let o = qrsl(&["verify", "--file", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains(&format!("{}:2:48:", f.path().display())), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--builtin", "nope"][..],
        &["verify"],
        &["verify", "--builtin", "rr1", "--file", "x.idl"],
        &["verify", "--file", "/nonexistent/x.idl"],
        &["--jobs", "0", "list"],
        &["frobnicate"],
        &["expand", "--expr", "pochinf(q^1; q^1"],
        &["expand", "--builtin", "rr9"],
        &["count", "nonsense", "3"],
        &["count", "residues", "3"],
        &["count", "partitions", "3", "--n", "4"],
        &["crosscheck", "rr3-comb"],
    ] {
        assert_eq!(qrsl(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_independent_of_jobs() {
    let strip = |text: String| -> Vec<Value> {
        jsonl(&text)
            .into_iter()
            .map(|mut r| {
                r.as_object_mut().unwrap().remove("millis");
                r
            })
            .collect()
    };
    let run =
        |jobs: &str| strip(ok(&["verify", "--builtin", "all", "--order", "25", "--format", "jsonl", "--jobs", jobs]));
    let one = run("1");
    assert_eq!(one, run("4"));
    let env = Command::new(env!("CARGO_BIN_EXE_qrsl"))
        .args(["verify", "--builtin", "all", "--order", "25", "--format", "jsonl"])
        .env("QRSL_JOBS", "3")
        .output()
        .unwrap();
    assert_eq!(strip(String::from_utf8(env.stdout).unwrap()), one);
    let cross = |jobs: &str| ok(&["crosscheck", "all", "--n-max", "10", "--format", "csv", "--jobs", jobs]);
    assert_eq!(cross("1"), cross("3"));
}
