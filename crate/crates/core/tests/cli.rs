use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sds::designs::{verify_sds, SdsParams, Strictness};
use sds::document::SignedSetDocument;

fn sds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sds"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sds-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn construct(name: &str, args: &[&str]) -> (SignedSetDocument, PathBuf) {
    let o = sds(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = stdout(&o);
    (
        SignedSetDocument::parse(&text).unwrap(),
        write_tmp(name, &text),
    )
}

fn verify_line(path: &Path) -> (Option<i32>, String) {
    let o = sds(&["verify", path.to_str().unwrap()]);
    (
        o.status.code(),
        stdout(&o).lines().next().unwrap_or_default().to_string(),
    )
}

#[test]
fn construct_and_verify_each_family() {
    let cases: [(&str, &[&str], SdsParams, &str); 4] = [
        (
            "paley.json",
            &["construct", "paley", "--q", "13"],
            SdsParams {
                v: 13,
                k: 12,
                lambda: -1,
            },
            "SDS (13,12,-1), strict, root 0",
        ),
        (
            "golay.json",
            &["construct", "golay"],
            SdsParams {
                v: 243,
                k: 242,
                lambda: 161,
            },
            "SDS (243,242,161), strict, root 198",
        ),
        (
            "product.json",
            &["construct", "product3", "--m", "2"],
            SdsParams {
                v: 243,
                k: 82,
                lambda: 1,
            },
            "SDS (243,82,1), strict, root 18",
        ),
        (
            "cyclo.json",
            &[
                "construct",
                "cyclotomic",
                "--q",
                "13",
                "--case",
                "4",
                "--i",
                "0",
                "--j",
                "2",
            ],
            SdsParams {
                v: 13,
                k: 9,
                lambda: 0,
            },
            "SDS (13,9,0), strict, root 3",
        ),
    ];
    for (name, args, params, line) in cases {
        let (doc, path) = construct(name, args);
        assert_eq!(doc.declared(), Some(params));
        let back = SignedSetDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(back.signed_set().unwrap(), doc.signed_set().unwrap());
        assert_eq!(
            verify_sds(&back.element().unwrap(), Strictness::Strict).unwrap(),
            params
        );
        assert_eq!(verify_line(&path), (Some(0), line.to_string()));
    }
}

#[test]
fn relaxed_product_reports_violations() {
    let (_, path) = construct(
        "relaxed.json",
        &[
            "construct",
            "product3",
            "--m",
            "2",
            "--x1",
            "1,0",
            "--dprime",
            "nonsquares",
        ],
    );
    let (code, line) = verify_line(&path);
    assert_eq!(code, Some(0));
    assert!(
        line.starts_with("relaxed SDS (243,82,1); strictness violated at 4 elements"),
        "{line}"
    );
}

#[test]
fn paley_with_explicit_w() {
    let (doc, _) = construct(
        "paley-w.json",
        &["construct", "paley", "--q", "9", "--w", "1,1"],
    );
    assert_eq!(doc.group.field.as_ref().unwrap().w, vec![1, 1]);
    assert_eq!(
        sds(&["construct", "paley", "--q", "9", "--w", "2,0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn sequence_and_weighing_exports() {
    let (_, paley) = construct("p13.json", &["construct", "paley", "--q", "13"]);
    let o = sds(&["sequence", paley.to_str().unwrap(), "--acf"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "0+-++----++-+");
    assert_eq!(lines[1], "0 12");
    for (tau, l) in lines[2..14].iter().enumerate() {
        assert_eq!(*l, format!("{} -1", tau + 1));
    }
    assert_eq!(lines[14], "two-level: yes");
    assert_eq!(
        sds(&["weighing", paley.to_str().unwrap()]).status.code(),
        Some(3)
    );

    let (_, c4) = construct(
        "c4.json",
        &[
            "construct",
            "cyclotomic",
            "--q",
            "13",
            "--case",
            "4",
            "--i",
            "0",
            "--j",
            "2",
        ],
    );
    let o = sds(&["weighing", c4.to_str().unwrap(), "--dense"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("13 9 "));
    assert_eq!(text.lines().count(), 14);

    let (_, golay) = construct("golay2.json", &["construct", "golay"]);
    assert_eq!(
        sds(&["sequence", golay.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn exit_codes() {
    let (doc, _) = construct("base.json", &["construct", "paley", "--q", "13"]);
    let mut overlap = doc.clone();
    overlap.negative.push(overlap.positive[0].clone());
    let path = write_tmp("overlap.json", &serde_json::to_string(&overlap).unwrap());
    assert_eq!(verify_line(&path).0, Some(2));
    let mut out_of_range = doc.clone();
    out_of_range.positive.push(vec![13]);
    let path = write_tmp("range.json", &serde_json::to_string(&out_of_range).unwrap());
    assert_eq!(verify_line(&path).0, Some(2));
    assert_eq!(verify_line(&write_tmp("junk.json", "not json")).0, Some(2));

    let mut not_sds = doc.clone();
    not_sds.negative.pop();
    not_sds.params = None;
    let path = write_tmp("notsds.json", &serde_json::to_string(&not_sds).unwrap());
    let (code, line) = verify_line(&path);
    assert_eq!(code, Some(1));
    assert!(line.starts_with("not an SDS"), "{line}");

    assert_eq!(
        sds(&["construct", "paley", "--q", "15"]).status.code(),
        Some(2)
    );
    assert_eq!(
        sds(&["construct", "paley", "--q", "7"]).status.code(),
        Some(3)
    );
    assert_eq!(
        sds(&["construct", "product3", "--m", "3"]).status.code(),
        Some(3)
    );
    assert_eq!(
        sds(&[
            "construct",
            "cyclotomic",
            "--q",
            "13",
            "--case",
            "6a",
            "--i",
            "0",
            "--j",
            "1"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        sds(&[
            "construct",
            "cyclotomic",
            "--q",
            "17",
            "--case",
            "5",
            "--i",
            "0"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        sds(&["construct", "cyclotomic", "--q", "13", "--case", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sds(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        sds(&["feasible", "--v", "7", "--k", "6", "--lambda", "1"])
            .status
            .code(),
        Some(1)
    );
    let o = sds(&[
        "feasible",
        "--v",
        "13",
        "--k",
        "12",
        "--lambda",
        "-1",
        "--positive",
        "6",
        "--negative",
        "6",
    ]);
    assert_eq!(
        (o.status.code(), stdout(&o).trim().to_string()),
        (Some(0), "feasible, root 0".to_string())
    );
}

#[test]
fn classify_outputs() {
    let o = sds(&["classify", "--q", "13", "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text
        .lines()
        .any(|l| l.starts_with("q=13 case=4 i=0 j=2 ") && l.contains("verified=(13,9,0)")));
    let o = sds(&["classify", "--q", "29"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .lines()
        .any(|l| l.starts_with("5 ") && l.contains("(29,8,1)")));
    let o = Command::new(env!("CARGO_BIN_EXE_sds"))
        .args(["classify", "--max-q", "60", "--format", "records"])
        .env("SDS_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let qs: Vec<u64> = stdout(&o)
        .lines()
        .filter_map(|l| {
            l.strip_prefix("q=")?
                .split_whitespace()
                .next()?
                .parse()
                .ok()
        })
        .collect();
    assert!(qs.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(sds(&["classify", "--q", "7"]).status.code(), Some(3));
    assert_eq!(sds(&["classify"]).status.code(), Some(2));
}
