use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ris(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ris"))
        .args(args)
        .output()
        .unwrap()
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn pathloss_prints_diagnostics() {
    let o = ris(&[
        "pathloss",
        configs().join("scenario.toml").to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    for key in ["loss_db", "normalized_db", "elements"] {
        assert!(text.contains(key), "missing {key} in {text}");
    }
}

#[test]
fn pathloss_per_element_lists_every_element() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.toml");
    fs::write(
        &path,
        "wavelength_m = 0.1\n[ris]\nrows = 2\ncols = 3\n[tx]\nr_m = 5.0\n[rx]\nr_m = 7.0\npsi_deg = 20.0\n",
    )
    .unwrap();
    let o = ris(&["pathloss", path.to_str().unwrap(), "--per-element"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("elements             6"), "{text}");
}

#[test]
fn config_errors_exit_with_code_2_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    fs::write(
        &path,
        "[ris]\nrows = 2\ncols = 2\n[tx]\nr_m = 5.0\n[rx]\nr_m = 5.0\n",
    )
    .unwrap();
    let o = ris(&["pathloss", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("wavelength_m"));

    fs::write(&path, "wavelength_m = 0.1\ncolour = 1\n[ris]\nrows = 2\ncols = 2\n[tx]\nr_m = 5.0\n[rx]\nr_m = 5.0\n").unwrap();
    let o = ris(&["pathloss", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
}

#[test]
fn sweep_cap_exits_with_code_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o.csv");
    let o = ris(&[
        "sweep",
        configs().join("sweep_near.toml").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--max-per-side",
        "50",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!out.exists());
}

#[test]
fn sweep_csv_is_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("small.toml");
    fs::write(
        &spec,
        "wavelength_m = 1.0\n[sweep]\nr_lambda = [50.0, 500.0]\npsi_deg = [0.0, 60.0]\n\
         side_lambda = [5.0, 7.5, 10.0]\nstrategies = [\"focusing\", \"beamforming\", \"far\"]\n",
    )
    .unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("t{threads}.csv"));
        let o = ris(&[
            "sweep",
            spec.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--threads",
            threads,
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push(fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let text = String::from_utf8(outputs.remove(0)).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("side_lambda,psi_s_deg,r_over_lambda,strategy,N,loss_db,normalized_db")
    );
    assert_eq!(lines.count(), 2 * 2 * 3 * 3);
    assert!(!text.contains('\r'));
}

#[test]
fn tables_write_all_cells() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = ris(&[
        "tables",
        "--case",
        "minimum",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 1 + 12);
    // 60 GHz, 0.1 km, minimum case: 141.4 wavelengths after rounding
    assert!(text.lines().any(|l| l.contains(",141.4")), "{text}");
}

#[test]
fn size_reports_side_length() {
    let o = ris(&[
        "size", "--freq", "28e9", "--fe", "1000", "--ui", "0.5", "--us", "0.5", "--eps", "0.5",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("side_m"), "{text}");
    assert!(text.contains("4.74"), "{text}");
}

#[test]
fn validate_passes() {
    let o = ris(&["validate"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
