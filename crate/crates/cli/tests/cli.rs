use std::path::Path;
use std::process::{Command, Output};

fn wmst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmst")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in:\n{text}"))
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("instance_id"))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

/// a/b → (a, b)
fn frac(s: &str) -> (i64, i64) {
    let (a, b) = s.split_once('/').unwrap_or((s, "1"));
    (a.parse().unwrap(), b.parse().unwrap())
}

#[test]
fn gen_ftp_lb_prints_error_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = wmst(&["gen", "ftp-lb", "--k", "3", "--l", "3", "-o", &path(dir.path(), "f.json")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "eta"), "12/1");
    assert_eq!(field(&text, "epsilon"), "3/1");
    assert!(text.starts_with("# config: {"));
    assert!(text.contains("\"seed\"") || text.contains("\"k\":\"3/1\""));
    assert!(dir.path().join("f.order").exists());
}

#[test]
fn gen_random_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(dir.path(), "a.json"), path(dir.path(), "b.json"));
    for p in [&a, &b] {
        assert!(wmst(&["gen", "random", "--n", "6", "--seed", "7", "-o", p]).status.success());
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    // load and re-serialize without change
    let inst: wmst::Instance = wmst::io::read_instance(Path::new(&a)).unwrap();
    assert_eq!(wmst::io::instance_to_json(&inst).into_bytes(), x);
}

#[test]
fn gen_ro_lb_prints_opt() {
    let dir = tempfile::tempdir().unwrap();
    let out = wmst(&["gen", "ro-lb", "--k", "2", "--delta", "1/2", "--l", "1", "-o", &path(dir.path(), "r.json")]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "opt"), "3/2");
    // decimals are exact too
    let out = wmst(&["gen", "ro-lb", "--k", "2", "--delta", "0.5", "--l", "1", "-o", &path(dir.path(), "d.json")]);
    assert_eq!(field(&stdout(&out), "opt"), "3/2");
}

#[test]
fn run_reports_costs_and_bound() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "f.json");
    wmst(&["gen", "ftp-lb", "--k", "3", "--l", "3", "-o", &inst]);
    for order in ["id", "seed:11"] {
        let out = wmst(&["run", "ftp", &inst, "--order", order, "--checked"]);
        assert!(out.status.success());
        let text = stdout(&out);
        assert_eq!(field(&text, "cost"), "22/1 (22)");
        assert_eq!(field(&text, "ratio"), "11/2 (5.5)");
        assert!(text.contains(": holds"));
    }
    let given = format!("given:{}", path(dir.path(), "f.order"));
    let trace = path(dir.path(), "g.trace");
    let out = wmst(&["run", "gftp", &inst, "--order", &given, "--checked", "--trace-out", &trace]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "cost"), "22/1 (22)");
    assert_eq!(std::fs::read_to_string(&trace).unwrap().lines().count(), 7);
}

#[test]
fn run_with_perfect_predictions_has_ratio_one() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "p.json");
    std::fs::write(
        &inst,
        r#"{"n": 3, "edges": [
            {"u": 0, "v": 1, "predicted": "2", "actual": "2"},
            {"u": 1, "v": 2, "predicted": "1/3", "actual": "1/3"},
            {"u": 0, "v": 2, "predicted": "0.5", "actual": "1/2"}]}"#,
    )
    .unwrap();
    let out = wmst(&["run", "gftp", &inst, "--order", "seed:3"]);
    assert_eq!(field(&stdout(&out), "ratio"), "1/1 (1)");
}

#[test]
fn run_rejects_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "bad.json");
    std::fs::write(&inst, r#"{"n": 3, "edges": [{"u": 0, "v": 1, "predicted": "1", "actual": "1"}]}"#).unwrap();
    let out = wmst(&["run", "ftp", &inst]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));
    let good = path(dir.path(), "f.json");
    wmst(&["gen", "ftp-lb", "--k", "2", "--l", "1", "-o", &good]);
    assert_eq!(wmst(&["run", "ftp", &good, "--order", "sideways"]).status.code(), Some(2));
}

#[test]
fn ro_exact_and_monte_carlo() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "r.json");
    wmst(&["gen", "ro-lb", "--k", "2", "--delta", "1/2", "--l", "1", "-o", &inst]);
    let out = wmst(&["ro", "gftp", &inst, "--exact"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][4], "7/2");
    assert_eq!(rows[0][3], "exact");

    let out = wmst(&["ro", "ftp", &inst, "--trials", "500", "--seed", "4"]);
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows[0][5], "0");
    assert_eq!(rows[0][4], "11/2");

    let big = path(dir.path(), "big.json");
    wmst(&["gen", "ro-lb", "--k", "2", "--delta", "1/2", "--l", "5", "-o", &big]);
    let out = wmst(&["ro", "gftp", &big, "--exact"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too large"));
}

#[test]
fn ro_monte_carlo_on_the_separating_family() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "r.json");
    wmst(&["gen", "ro-lb", "--k", "4", "--delta", "1/2", "--l", "20", "-o", &inst]);
    let out = wmst(&["ro", "gftp", &inst, "--trials", "20000", "--seed", "1"]);
    assert!(out.status.success());
    let row = &csv_rows(&stdout(&out))[0];
    let (ratio, stderr): (f64, f64) = (row[9].parse().unwrap(), row[5].parse().unwrap());
    let (opt_n, opt_d) = frac(&row[6]);
    let se = stderr / (opt_n as f64 / opt_d as f64);
    // lower curve uses ε = k = 4
    let lower = 1.0 + 4.0 * (1.0 - 0.5 / 20.5);
    let upper: f64 = row[11].parse().unwrap();
    assert!(ratio >= lower - 3.0 * se && ratio <= upper + 3.0 * se, "{row:?}");
}

#[test]
fn sweep_ftp_lb_matches_closed_form() {
    let out = wmst(&["sweep", "ftp-lb", "--k", "2,3,4", "--l", "1,2,4,8", "--algs", "ftp", "--trials", "20"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# config: "));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 12);
    let mut i = 0;
    for k in [2i64, 3, 4] {
        for l in [1i64, 2, 4, 8] {
            let row = &rows[i];
            i += 1;
            assert_eq!(row[0], format!("ftp-lb[k={k}/1;l={l}]"));
            // mean/opt = 1 + (2 − 2/(ℓ+1))ε exactly, ε = k
            let (mn, md) = frac(&row[4]);
            let (on, od) = frac(&row[6]);
            assert_eq!(frac(&row[8]), (k, 1));
            // mean/opt as a fraction vs (ℓ+1 + 2ℓk)/(ℓ+1)
            assert_eq!(mn * od * (l + 1), (l + 1 + 2 * l * k) * md * on, "{row:?}");
        }
    }
}

#[test]
fn sweep_ro_lb_separates_the_algorithms() {
    let out = wmst(&["sweep", "ro-lb", "--k", "2,4", "--delta", "1/2", "--l", "1,3", "--trials", "2000", "--seed", "5", "--exact"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 8);
    for pair in rows.chunks(2) {
        assert_eq!(pair[0][1], "ftp");
        assert_eq!(pair[1][1], "gftp");
        let (f, g): (f64, f64) = (pair[0][9].parse().unwrap(), pair[1][9].parse().unwrap());
        assert!(g < f, "{pair:?}");
    }
    // deterministic given the seed
    let again = wmst(&["sweep", "ro-lb", "--k", "2,4", "--delta", "1/2", "--l", "1,3", "--trials", "2000", "--seed", "5", "--exact"]);
    assert_eq!(again.stdout, out.stdout);
}

#[test]
fn sweep_output_does_not_depend_on_thread_count() {
    let args = ["sweep", "random", "--n", "5,7", "--instances", "2", "--trials", "300", "--seed", "2"];
    let one = Command::new(env!("CARGO_BIN_EXE_wmst")).args(args).env("WMST_THREADS", "1").output().unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_wmst")).args(args).env("WMST_THREADS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(csv_rows(&stdout(&one)).len(), 8);
}

#[test]
fn sweep_with_empty_grid_is_a_usage_error() {
    let out = wmst(&["sweep", "ftp-lb", "--algs", "ftp"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty grid"));
}

#[test]
fn gen_games_write_order_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "g.json");
    let out = wmst(&["gen", "general-lb", "--k", "3", "--l", "2", "--alg", "gftp", "--checked", "-o", &inst]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "game gap"), "10/1 (10)");
    assert_eq!(field(&text, "eta"), "21/1");
    // replaying the recorded order reproduces the trace
    let trace = path(dir.path(), "replay.trace");
    let given = format!("given:{}", path(dir.path(), "g.order"));
    assert!(wmst(&["run", "gftp", &inst, "--order", &given, "--trace-out", &trace]).status.success());
    assert_eq!(std::fs::read(&trace).unwrap(), std::fs::read(path(dir.path(), "g.trace")).unwrap());

    let out = wmst(&["gen", "eta2", "--k", "8", "-o", &path(dir.path(), "e.json")]);
    let text = stdout(&out);
    assert_eq!(field(&text, "eta2"), "0/1");
    assert_eq!(field(&text, "game ratio"), "9/2 (4.5)");
}

#[test]
fn selftest_passes() {
    let out = wmst(&["selftest", "--scale", "200", "--checked"]);
    let text = stdout(&out);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("selftest: all campaigns passed"));
}
