//! Black-box tests of the `varmesh` binary: exit codes, CSV shapes, and
//! the manifest round trip.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_varmesh"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["mesh1d", "--help"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out").to_str().unwrap().to_string();

    // unknown subcommand / missing args
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    // unreadable config
    assert_eq!(
        run(&["mesh1d", "--config", "/no/such/file.toml", "--out", &out]).status.code(),
        Some(1)
    );
    // unknown key in config
    let cfg = write(dir.path(), "bad.toml", "nonsense = true\n");
    assert_eq!(
        run(&["mesh1d", "--config", &cfg, "--out", &out]).status.code(),
        Some(1)
    );
    // section for the requested subcommand missing
    let cfg = write(dir.path(), "only_stencil.toml", "[stencil]\nh_left = 1.0\nh_right = 2.0\n");
    assert_eq!(
        run(&["mesh1d", "--config", &cfg, "--out", &out]).status.code(),
        Some(1)
    );
}

#[test]
fn validation_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out").to_str().unwrap().to_string();

    // negative spacing
    let cfg = write(dir.path(), "neg.toml", "[stencil]\nh_left = -1.0\nh_right = 2.0\n");
    assert_eq!(
        run(&["stencil", "--config", &cfg, "--out", &out]).status.code(),
        Some(2)
    );
    // weight not positive on the domain
    let cfg = write(
        dir.path(),
        "depth.toml",
        "[mesh1d]\ndomain = [-1.0, 1.0]\nsegments = 10\nweight = { type = \"gaussian_well\", depth = 1.5, center = 0.0, width = 1.0 }\n",
    );
    assert_eq!(
        run(&["mesh1d", "--config", &cfg, "--out", &out]).status.code(),
        Some(2)
    );
    // table weight evaluated outside its abscissae
    let cfg = write(
        dir.path(),
        "table.toml",
        "[mesh1d]\ndomain = [0.0, 2.0]\nsegments = 10\nweight = { type = \"table\", abscissae = [0.0, 1.0], values = [1.0, 2.0] }\n",
    );
    assert_eq!(
        run(&["mesh1d", "--config", &cfg, "--out", &out]).status.code(),
        Some(2)
    );
}

#[test]
fn convergence_failure_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out").to_str().unwrap().to_string();
    // harmonic solver with a zero outer-iteration budget cannot converge
    let cfg = write(
        dir.path(),
        "stuck.toml",
        concat!(
            "[mesh2d]\nsolver = \"harmonic\"\nmax_iter = 0\n",
            "domain_x = [-25.0, 25.0]\ndomain_y = [-25.0, 25.0]\n",
            "nodes_x = 9\nnodes_y = 9\n",
            "weight_x = { type = \"gaussian_well\", depth = 0.9, center = 0.0, width = 50.0 }\n",
            "weight_y = { type = \"gaussian_well\", depth = 0.9, center = 0.0, width = 50.0 }\n",
        ),
    );
    assert_eq!(
        run(&["mesh2d", "--config", &cfg, "--out", &out]).status.code(),
        Some(3)
    );
}

#[test]
fn mesh1d_csv_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let cfg = write(
        dir.path(),
        "m1.toml",
        "[mesh1d]\ndomain = [-25.0, 25.0]\nnodes = 11\nweight = { type = \"gaussian_well\", depth = 0.9, center = 0.0, width = 50.0 }\n",
    );
    let st = run(&["mesh1d", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(st.status.code(), Some(0));
    let csv = std::fs::read_to_string(out.join("mesh1d.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "i,x_i,h_i");
    assert_eq!(lines.len(), 12); // header + 11 nodes
    assert!(lines[1].starts_with("0,-25,"));
    // last node has no trailing spacing
    assert!(lines[11].ends_with(','), "last line: {}", lines[11]);
    // nodes strictly increasing and round-trippable
    let xs: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(xs[10], 25.0);
}

#[test]
fn stencil_csv_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let cfg = write(dir.path(), "st.toml", "[stencil]\nh_left = 1.0\nh_right = 2.0\n");
    let st = run(&["stencil", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(st.status.code(), Some(0));
    let csv = std::fs::read_to_string(out.join("stencil.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "order,a,b,c");
    let row1: Vec<f64> = lines[1].split(',').skip(1).map(|v| v.parse().unwrap()).collect();
    let row2: Vec<f64> = lines[2].split(',').skip(1).map(|v| v.parse().unwrap()).collect();
    assert!((row1[0] + 2.0 / 3.0).abs() < 1e-15);
    assert!((row1[1] - 0.5).abs() < 1e-15);
    assert!((row1[2] - 1.0 / 6.0).abs() < 1e-15);
    assert!((row2[0] - 2.0 / 3.0).abs() < 1e-15);
    assert!((row2[1] + 1.0).abs() < 1e-15);
    assert!((row2[2] - 1.0 / 3.0).abs() < 1e-15);
}

#[test]
fn manifest_round_trip_reproduces_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "ho.toml",
        "[solve_ho]\nnodes = 18\nmesh = \"variable\"\nk = 3\n",
    );
    let out1 = dir.path().join("a");
    let out2 = dir.path().join("b");
    let st = run(&["solve-ho", "--config", &cfg, "--out", out1.to_str().unwrap()]);
    assert_eq!(st.status.code(), Some(0));
    // rerun from the emitted manifest
    let manifest = out1.join("manifest.toml");
    let st = run(&[
        "solve-ho",
        "--config",
        manifest.to_str().unwrap(),
        "--out",
        out2.to_str().unwrap(),
    ]);
    assert_eq!(st.status.code(), Some(0));
    for entry in std::fs::read_dir(&out1).unwrap() {
        let name = entry.unwrap().file_name();
        let a = std::fs::read(out1.join(&name)).unwrap();
        let b = std::fs::read(out2.join(&name)).unwrap();
        assert_eq!(a, b, "{name:?} differs after manifest round trip");
    }
}

#[test]
fn seed_flag_overrides_config_and_lands_in_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "seeded.toml",
        "seed = 1\n\n[solve_ho]\nnodes = 12\nmesh = \"uniform\"\nk = 3\n",
    );
    let out = dir.path().join("out");
    let st = run(&[
        "solve-ho", "--config", &cfg, "--out", out.to_str().unwrap(), "--seed", "42",
    ]);
    assert_eq!(st.status.code(), Some(0));
    let manifest = std::fs::read_to_string(out.join("manifest.toml")).unwrap();
    assert!(manifest.contains("seed = 42"), "manifest:\n{manifest}");
}

#[test]
fn solve_ho_outputs_both_meshes_and_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "both.toml", "[solve_ho]\nnodes = 16\nk = 3\n");
    let out = dir.path().join("out");
    let st = run(&["solve-ho", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(st.status.code(), Some(0));
    for f in [
        "spectrum_uniform.csv",
        "spectrum_variable.csv",
        "comparison.csv",
        "psi_uniform_0.csv",
        "psi_variable_0.csv",
        "manifest.toml",
    ] {
        assert!(out.join(f).exists(), "missing {f}");
    }
    let spec = std::fs::read_to_string(out.join("spectrum_variable.csv")).unwrap();
    assert!(spec.starts_with("index,energy_MeV,abs_error_MeV"));
    assert_eq!(spec.lines().count(), 4);
    let psi = std::fs::read_to_string(out.join("psi_variable_0.csv")).unwrap();
    assert!(psi.starts_with("i,j,x,y,psi"));
    // one row per interior node (boundary values are pinned to zero)
    assert_eq!(psi.lines().count(), 1 + 14 * 14);
}
