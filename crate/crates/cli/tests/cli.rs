use fracrelax::relaxation::{relax_classical, relax_fractional};
use fracrelax::ModelParams;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracrelax"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Header and numeric rows of a CSV produced by the tool.
fn table(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# fracrelax "));
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn kv(path: &Path) -> std::collections::HashMap<String, String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(2)
        .map(|l| {
            let (k, v) = l.split_once(',').unwrap();
            (k.to_string(), v.to_string())
        })
        .collect()
}

#[test]
fn eval_debye_is_exponential() {
    let (header, rows) = table(&stdout(&[
        "eval", "--model", "debye", "--gamma", "1", "--tmax", "10", "--points", "400",
    ]));
    assert_eq!(header, ["t", "phi"]);
    assert_eq!(rows.len(), 400);
    assert_eq!((rows[0][0], rows[399][0]), (0.01, 10.0));
    for r in rows {
        assert!((r[1] - (-r[0]).exp()).abs() <= 1e-15, "t = {}", r[0]);
    }
}

#[test]
fn eval_matches_library() {
    let (_, rows) = table(&stdout(&[
        "eval", "--model", "hn", "--alpha", "0.5", "--beta", "0.5", "--gamma", "0.8",
    ]));
    let p = ModelParams::havriliak_negami(0.5, 0.5, 1.0)
        .unwrap()
        .with_gamma(0.8)
        .unwrap();
    for r in rows {
        assert_eq!(r[1], relax_fractional(&p, r[0]).unwrap());
    }
}

#[test]
fn gamma_sweep_gives_one_column_per_value() {
    let (header, rows) = table(&stdout(&[
        "eval",
        "--model",
        "cc",
        "--alpha",
        "0.5",
        "--sweep",
        "gamma=0.25,0.5,0.75,1.0",
    ]));
    assert_eq!(
        header,
        [
            "t",
            "phi[gamma=0.25]",
            "phi[gamma=0.5]",
            "phi[gamma=0.75]",
            "phi[gamma=1]"
        ]
    );
    let cc = ModelParams::cole_cole(0.5, 1.0).unwrap();
    for r in rows {
        assert_eq!(r.len(), 5);
        assert!((r[4] - relax_classical(&cc, r[0]).unwrap()).abs() <= 1e-15);
    }
}

#[test]
fn spectrum_properties() {
    let (header, debye) = table(&stdout(&["spectrum", "--model", "debye"]));
    assert_eq!(header, ["omega", "eps_real", "eps_imag"]);
    assert_eq!(debye.len(), 61);
    let peak = (0..61)
        .max_by(|&i, &j| debye[i][2].total_cmp(&debye[j][2]))
        .unwrap();
    assert_eq!(debye[peak][0], 1.0);

    // HN with both exponents 1 is Debye, digit for digit
    let hn = stdout(&["spectrum", "--model", "hn"]);
    let d = stdout(&["spectrum", "--model", "debye"]);
    assert_eq!(
        hn.lines().skip(1).collect::<Vec<_>>(),
        d.lines().skip(1).collect::<Vec<_>>()
    );

    let (_, cc) = table(&stdout(&["spectrum", "--model", "cc", "--alpha", "0.5"]));
    for i in 0..61 {
        assert!(
            (cc[i][2] - cc[60 - i][2]).abs() <= 1e-10,
            "omega {}",
            cc[i][0]
        );
    }
}

#[test]
fn output_is_deterministic_with_provenance() {
    let args = [
        "spectrum", "--model", "hn", "--alpha", "0.7", "--beta", "0.6", "--noise", "0.01",
        "--seed", "42",
    ];
    let a = run(&args).stdout;
    assert_eq!(a, run(&args).stdout);
    let text = String::from_utf8(a).unwrap();
    assert!(!text.contains('\r'));
    assert_eq!(
        text.lines().next().unwrap(),
        format!("# fracrelax {}", args.join(" "))
    );
}

#[test]
fn solve_reports_error_column() {
    let (header, rows) = table(&stdout(&[
        "solve", "--model", "cc", "--alpha", "0.5", "--gamma", "0.6", "--steps", "256",
    ]));
    assert_eq!(header, ["t", "phi", "error"]);
    assert_eq!(rows.len(), 256);
    assert_eq!(rows[0][0], 5.0 / 256.0);
    assert!(rows.iter().all(|r| r[2].abs() < 1e-3));
}

#[test]
fn ml_and_kernel_tables() {
    let (_, rows) = table(&stdout(&[
        "ml", "--a", "1", "--negate", "--tmin", "0.5", "--tmax", "2", "--points", "4", "--linear",
    ]));
    for r in rows {
        // default --tol is 1e-12 relative
        assert!((r[1] - r[0].exp()).abs() <= 1e-12 * r[0].exp());
    }
    let (header, rows) = table(&stdout(&[
        "kernel", "--model", "debye", "--sigma", "2", "--points", "3",
    ]));
    assert_eq!(header, ["t", "kernel"]);
    assert!(rows.iter().all(|r| r[1] == 0.5));
}

#[test]
fn invalid_flags_exit_2() {
    for args in [
        &["eval", "--model", "debye", "--alpha", "0.5"][..],
        &["eval", "--model", "cc", "--alpha", "1.5"],
        &["eval", "--model", "cc", "--points", "1"],
        &["eval", "--model", "cc", "--tmin", "0", "--geometric"],
        &[
            "eval",
            "--model",
            "cc",
            "--alpha",
            "0.5",
            "--gamma",
            "0.5",
            "--classical",
        ],
        &["eval", "--model", "xx"],
        &["eval", "--model", "cc", "--sweep", "delta=1"],
        &["verify", "--suite", "everything"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn fit_recovers_synthetic_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("hn.csv");
    let res = dir.path().join("fit.csv");
    let d = data.to_str().unwrap();
    stdout(&[
        "spectrum",
        "--model",
        "hn",
        "--alpha",
        "0.7",
        "--beta",
        "0.6",
        "--sigma",
        "2",
        "--eps-static",
        "10",
        "--eps-inf",
        "2",
        "--points",
        "60",
        "--out",
        d,
    ]);
    let report = stdout(&[
        "fit",
        d,
        "--model",
        "hn",
        "--alpha",
        "0.5",
        "--beta",
        "0.5",
        "--sigma",
        "1",
        "--out",
        res.to_str().unwrap(),
    ]);
    assert!(report.contains("converged      true"));
    let kv = kv(&res);
    for (k, want) in [
        ("alpha", 0.7),
        ("beta", 0.6),
        ("sigma", 2.0),
        ("eps_static", 10.0),
        ("eps_inf", 2.0),
    ] {
        let got: f64 = kv[k].parse().unwrap();
        assert!(((got - want) / want).abs() <= 1e-4, "{k}: {got}");
    }
}

#[test]
fn misspecified_fit_reports_large_rss() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("hn.csv");
    let res = dir.path().join("fit.csv");
    let d = data.to_str().unwrap();
    stdout(&[
        "spectrum",
        "--model",
        "hn",
        "--alpha",
        "0.8",
        "--beta",
        "0.3",
        "--eps-static",
        "10",
        "--eps-inf",
        "2",
        "--out",
        d,
    ]);
    stdout(&[
        "fit",
        d,
        "--model",
        "debye",
        "--strict",
        "--out",
        res.to_str().unwrap(),
    ]);
    let kv = kv(&res);
    assert_eq!(kv["converged"], "true");
    assert!(kv["rss"].parse::<f64>().unwrap() > 1e-2);
}

#[test]
fn bad_input_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let out = run(&["fit", empty.to_str().unwrap(), "--model", "debye"]);
    assert_eq!(out.status.code(), Some(3));

    let bad = dir.path().join("bad.csv");
    std::fs::write(
        &bad,
        "# data\nomega,eps_real,eps_imag\n1,2,0.5\n2,abc,0.4\n",
    )
    .unwrap();
    let out = run(&["fit", bad.to_str().unwrap(), "--model", "debye"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let out = run(&[
        "fit",
        dir.path().join("missing.csv").to_str().unwrap(),
        "--model",
        "debye",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_subsets_and_tolerance() {
    let text = stdout(&["verify", "--suite", "reductions"]);
    assert!(text.contains("[reductions]"));
    assert!(!text.contains("[oracle]"));
    let text = stdout(&[
        "verify",
        "--suite",
        "recurrence,monotonicity",
        "--tol",
        "1e-2",
    ]);
    assert!(text.contains("[recurrence]") && text.contains("[monotonicity]"));
    assert!(text.contains("all suites passed"));
}
