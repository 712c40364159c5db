use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }
}

fn fracrheo(args: &[&str]) -> Output {
    fracrheo_with_env(args, &[])
}

fn fracrheo_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fracrheo"));
    cmd.args(args).env_remove("FRACRHEO_TOL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Data rows of a CSV document, skipping comments and the header line.
fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect()
}

fn comments(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| l.starts_with('#')).collect()
}

#[test]
fn springpot_relaxation_at_unit_time() {
    let ws = Workspace::new();
    let cfg = ws.file(
        "sb.cfg",
        "# springpot\nmodel = scott_blair\nK = 1\nq = 0.5\n",
    );
    let out = fracrheo(&[
        "eval",
        p(&cfg),
        "--function",
        "relaxation",
        "--tmin",
        "0.5",
        "--tmax",
        "1.5",
        "--points",
        "3",
        "--spacing",
        "linear",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let data = rows(&text);
    assert_eq!(data.len(), 3);
    assert_eq!(data[1][0], 1.0);
    assert!((data[1][1] - 0.564_189_583_547_756_3).abs() < 1e-15);
    let header = comments(&text).join("\n");
    assert!(header.contains("# provenance: eq"), "{header}");
    assert!(header.contains("# model:") && header.contains("# excluded singular terms: none"));
}

#[test]
fn spring_inerter_series_relaxation_goes_negative() {
    let ws = Workspace::new();
    let cfg = ws.file(
        "fm.cfg",
        "model = frac_maxwell\nKp = 4\np = 0\nKq = 1\nq = 2\n",
    );
    // ω_R = 2, so (0, 10/ω_R] is (0, 5].
    let out = fracrheo(&[
        "eval",
        p(&cfg),
        "--function",
        "relaxation",
        "--tmin",
        "0",
        "--tmax",
        "5",
        "--points",
        "200",
        "--spacing",
        "linear",
    ]);
    assert_eq!(code(&out), 0);
    assert!(rows(&stdout(&out)).iter().any(|r| r[1] < 0.0));
}

#[test]
fn excluded_delta_terms_are_listed() {
    let ws = Workspace::new();
    let cfg = ws.file("kv.cfg", "model = kelvin_voigt\nG = 1\neta = 2\n");
    let out = fracrheo(&["eval", p(&cfg), "--function", "relaxation", "--points", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let data = rows(&text);
    assert_eq!((data[0][0], data[3][0]), (0.01, 10.0));
    assert!(
        text.contains("# excluded singular terms: 2.0000000000000000e0 * d^0 delta(t)"),
        "{text}"
    );
}

#[test]
fn frequency_examples() {
    let ws = Workspace::new();
    let hooke = ws.file("h.cfg", "model = hookean\nG = 1\n");
    let out = fracrheo(&["freq", p(&hooke), "--function", "modulus", "--points", "7"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "omega,re,im"));
    for r in rows(&text) {
        assert_eq!((r[1], r[2]), (1.0, 0.0));
    }
    let newton = ws.file("n.cfg", "model = scott_blair\nK = 1\nq = 1\n");
    let out = fracrheo(&[
        "freq",
        p(&newton),
        "--function",
        "viscosity",
        "--points",
        "7",
    ]);
    for r in rows(&stdout(&out)) {
        assert!((r[1] - 1.0).abs() < 1e-15 && r[2].abs() < 1e-15);
    }
    let kv = ws.file("kv.cfg", "model = kelvin_voigt\nG = 1\neta = 1\n");
    let out = fracrheo(&[
        "freq",
        p(&kv),
        "--function",
        "modulus",
        "--wmin",
        "2",
        "--wmax",
        "2",
        "--points",
        "1",
    ]);
    let r = &rows(&stdout(&out))[0];
    assert_eq!(r[0], 2.0);
    assert!((r[1] - 1.0).abs() < 1e-15 && (r[2] - 2.0).abs() < 1e-15);
    let general = ws.file(
        "g.cfg",
        "model = general\na = 1, 0\na = 0.5, 0.3\nb = 2, 0.8\n",
    );
    let out = fracrheo(&[
        "freq",
        p(&general),
        "--function",
        "compliance",
        "--points",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(rows(&stdout(&out)).len(), 3);
}

#[test]
fn step_stress_into_kelvin_voigt_creeps() {
    let ws = Workspace::new();
    let cfg = ws.file("kv.cfg", "model = kelvin_voigt\nG = 2\neta = 3\n");
    let signal: String = std::iter::once("t,value".to_string())
        .chain((0..=100).map(|j| format!("{},0", j as f64 * 0.05)))
        .collect::<Vec<_>>()
        .join("\n");
    let input = ws.file("zero.csv", &signal);
    let out = fracrheo(&[
        "convolve",
        p(&cfg),
        "--input",
        p(&input),
        "--direction",
        "strain-from-stress",
        "--step-amplitude",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(comments(&text).iter().any(|l| l.starts_with("# scheme:")));
    assert!(comments(&text)
        .iter()
        .any(|l| l.len() > "# provenance: ".len() && l.starts_with("# provenance: ")));
    let data = rows(&text);
    assert_eq!(data.len(), 101);
    for r in &data {
        assert!((r[1] - (1.0 - (-r[0] / 1.5).exp()) / 2.0).abs() < 1e-12);
    }
}

#[test]
fn ramp_strain_into_springpot_gives_a_power_law() {
    let ws = Workspace::new();
    let cfg = ws.file("sb.cfg", "model = scott_blair\nK = 1\nq = 0.5\n");
    let signal: String = (0..=200)
        .map(|j| {
            let t = j as f64 * 0.01;
            format!("{t},{t}\n")
        })
        .collect();
    let input = ws.file("ramp.csv", &signal);
    let out = fracrheo(&[
        "convolve",
        p(&cfg),
        "--input",
        p(&input),
        "--direction",
        "stress-from-strain",
    ]);
    assert_eq!(code(&out), 0);
    for r in rows(&stdout(&out)) {
        // ∫ t^{-1/2}/Γ(1/2) dξ = t^{1/2}/Γ(3/2)
        let want = 2.0 * r[0].sqrt() / std::f64::consts::PI.sqrt();
        assert!((r[1] - want).abs() < 1e-12, "t = {}", r[0]);
    }
}

#[test]
fn empty_signal_gives_empty_output() {
    let ws = Workspace::new();
    let cfg = ws.file("m.cfg", "model = maxwell\nG = 1\neta = 1\n");
    let input = ws.file("empty.csv", "# nothing recorded\nt,value\n");
    let out = fracrheo(&[
        "convolve",
        p(&cfg),
        "--input",
        p(&input),
        "--direction",
        "stress-from-strain",
    ]);
    assert_eq!(code(&out), 0);
    assert!(rows(&stdout(&out)).is_empty());
}

#[test]
fn csv_output_round_trips_bit_exactly() {
    let ws = Workspace::new();
    let cfg = ws.file(
        "fm.cfg",
        "model = frac_maxwell\nKp = 1.3\np = 0.2\nKq = 0.7\nq = 0.9\n",
    );
    let out = fracrheo(&[
        "eval",
        p(&cfg),
        "--function",
        "creep",
        "--tmin",
        "0",
        "--tmax",
        "3",
        "--points",
        "31",
        "--spacing",
        "linear",
    ]);
    let text = stdout(&out);
    let first = rows(&text);
    assert_eq!(first.len(), 31);
    // Re-ingested values carry the same bits as the in-memory evaluation.
    let model = fracrheo::models::RheoModel::frac_maxwell(1.3, 0.2, 0.7, 0.9).unwrap();
    let kernel = fracrheo::models::creep_compliance(&model).unwrap();
    let times: Vec<f64> = (0..31).map(|i| 3.0 * (i as f64 / 30.0)).collect();
    let direct = fracrheo::models::evaluate_kernel(&kernel, &times).values;
    let parsed = fracrheo::cli::parse_csv(&text).unwrap();
    for (i, ((t, v), r)) in parsed.iter().zip(&first).enumerate() {
        assert_eq!((*t, *v), (r[0], r[1]));
        assert_eq!(t.to_bits(), times[i].to_bits());
        assert_eq!(v.to_bits(), direct[i].to_bits());
        assert_eq!(
            fracrheo::cli::fmt_num(*v).parse::<f64>().unwrap().to_bits(),
            v.to_bits()
        );
    }
}

#[test]
fn exit_codes() {
    let ws = Workspace::new();
    let good = ws.file("sb.cfg", "model = scott_blair\nK = 1\nq = 0.5\n");
    let general = ws.file("g.cfg", "model = general\na = 1, 0\nb = 1, 0.5\n");
    let bad = ws.file("bad.cfg", "model = scott_blair\nK = 1\nq = half\n");

    let out = fracrheo(&["eval", p(&bad), "--function", "memory"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(
        code(&fracrheo(&["eval", p(&good), "--function", "nonsense"])),
        2
    );
    assert_eq!(code(&fracrheo(&["frobnicate"])), 2);
    assert_eq!(
        code(&fracrheo(&[
            "eval",
            p(&good),
            "--function",
            "relaxation",
            "--tmin",
            "0"
        ])),
        2
    );
    assert_eq!(
        code(&fracrheo(&["eval", p(&general), "--function", "memory"])),
        3
    );

    let uneven = ws.file("uneven.csv", "t,value\n0,0\n0.1,1\n0.25,2\n");
    let args = |input: &Path| {
        fracrheo(&[
            "convolve",
            p(&good),
            "--input",
            p(input),
            "--direction",
            "stress-from-strain",
        ])
    };
    assert_eq!(code(&args(&uneven)), 4);
    let late = ws.file("late.csv", "t,value\n0.1,0\n0.2,1\n");
    assert_eq!(code(&args(&late)), 4);
    let nan = ws.file("nan.csv", "t,value\n0,0\n0.1,nan\n0.2,1\n");
    assert_eq!(code(&args(&nan)), 5);
    let inf = ws.file("inf.csv", "t,value\n0,0\n0.1,inf\n");
    assert_eq!(code(&args(&inf)), 5);
    let jump = ws.file("jump.csv", "t,value\n0,1\n0.1,1\n");
    assert_eq!(code(&args(&jump)), 2);
    assert_eq!(code(&fracrheo(&["--help"])), 0);
}

#[test]
fn validate_limits_honours_the_tolerance_override() {
    let out = fracrheo(&["validate", "--suite", "limits"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("10 of 10 checks passed"));
    let out = fracrheo_with_env(
        &["validate", "--suite", "limits"],
        &[("FRACRHEO_TOL", "1e-30")],
    );
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL"));
    let out = fracrheo_with_env(
        &["validate", "--suite", "limits"],
        &[("FRACRHEO_TOL", "-1")],
    );
    assert_eq!(code(&out), 2);
    assert_eq!(code(&fracrheo(&["validate", "--suite", "everything"])), 2);
}

#[test]
fn validate_all_passes_with_json_summary() {
    let out = fracrheo(&["validate", "--suite", "all", "--json"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["failed"], 0);
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks.len(), doc["total"].as_u64().unwrap() as usize);
    for suite in ["ml", "gl", "interconversion", "limits", "laplace"] {
        assert!(checks.iter().any(|c| c["suite"] == suite), "{suite}");
    }
}
