//! Acceptance suite: one line per criterion, then a single assertion over all of them.

use std::fs;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use heisenberg_besov::besov::{k2_functional, standard_params};
use heisenberg_besov::config::RunConfig;
use heisenberg_besov::gelfand::{GelfandGrid, GridSpec, SpectralFunction};
use heisenberg_besov::num_complex::Complex;
use heisenberg_besov::selftest::{
    check_calderon, check_convolution, check_eigenvalue, check_equivalence, check_inversion, check_isometry,
    check_plancherel, Check,
};

struct Line {
    id: &'static str,
    title: &'static str,
    passed: bool,
    summary: String,
    seconds: f64,
    budget: f64,
}

fn from_check(id: &'static str, title: &'static str, budget: f64, c: Check) -> Line {
    Line {
        id,
        title,
        passed: c.passed && c.seconds <= budget,
        summary: format!("measured {:.3e} vs limit {:.1e}; {}", c.measured, c.limit, c.detail),
        seconds: c.seconds,
        budget,
    }
}

/// Golden-section search along each coordinate in turn, until a sweep stops improving.
fn coordinate_search(obj: impl Fn(&[f64]) -> f64, x: &mut [f64], half_width: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..20 {
        let before = obj(x);
        for i in 0..x.len() {
            let mut at = |v: f64| {
                x[i] = v;
                obj(x)
            };
            let (mut a, mut b) = (-half_width, half_width);
            let (mut c, mut d) = (b - ratio * (b - a), a + ratio * (b - a));
            let (mut fc, mut fd) = (at(c), at(d));
            while b - a > 1e-13 * half_width {
                if fc < fd {
                    (b, d, fd) = (d, c, fc);
                    c = b - ratio * (b - a);
                    fc = at(c);
                } else {
                    (a, c, fc) = (c, d, fd);
                    d = a + ratio * (b - a);
                    fd = at(d);
                }
            }
            x[i] = 0.5 * (a + b);
        }
        if (before - obj(x)).abs() <= 1e-16 * before {
            break;
        }
    }
    obj(x)
}

fn k2_oracle() -> Line {
    let start = Instant::now();
    let grid = Arc::new(
        GelfandGrid::new(GridSpec { lambda_min: 1.0, lambda_max: 2f64.sqrt(), m_max: 0, ..GridSpec::default() }).unwrap(),
    );
    let values: Vec<Complex<f64>> =
        (0..grid.len()).map(|i| Complex::new((1.3 * i as f64).sin(), (0.7 * i as f64 + 0.2).cos())).collect();
    let f = SpectralFunction::from_values(&grid, values);
    let r = 4;
    let mut worst = 0.0f64;
    for t in [0.05, 0.3, 1.0, 4.0] {
        let obj = |x: &[f64]| -> f64 {
            (0..grid.len())
                .map(|i| {
                    let g = Complex::new(x[2 * i], x[2 * i + 1]);
                    let c = t * t * (1.0 + grid.xi(i, 0).powi(r));
                    grid.mu_weights()[i] * ((f.values[i] - g).norm_sqr() + c * g.norm_sqr())
                })
                .sum()
        };
        let mut x = vec![0.0; 2 * grid.len()];
        let brute = coordinate_search(obj, &mut x, 2.0);
        let closed = k2_functional(&f, t, r as u32).powi(2);
        worst = worst.max((brute - closed).abs() / closed);
    }
    let seconds = start.elapsed().as_secs_f64();
    Line {
        id: "AC8",
        title: "K-functional surrogate vs brute-force minimizer",
        passed: grid.len() == 10 && worst <= 1e-8 && seconds <= 1.0,
        summary: format!("max relative gap {worst:.2e} over 4 values of t (limit 1e-8)"),
        seconds,
        budget: 1.0,
    }
}

fn cli_contracts() -> Line {
    let start = Instant::now();
    let tmp = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_hbesov");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let dir = |name: &str| tmp.path().join(name).to_str().unwrap().to_string();
    // a lighter mesh keeps the reruns inside the time budget; the contract does not depend on size
    let small = tmp.path().join("small.json");
    fs::write(&small, r#"{"n_r": 32, "n_t": 128}"#).unwrap();
    let small = small.to_str().unwrap().to_string();
    let mut ok = true;
    let mut notes = Vec::new();
    for d in ["a", "b"] {
        ok &= run(&["kernel", "--band", "1", "--config", &small, "--out", &dir(d)]).status.success();
        ok &= run(&["besov", "--config", &small, "--out", &dir(d)]).status.success();
    }
    for name in ["kernel_psi_1.csv", "kernel_psi_1_profile.csv", "kernel_psi_1.manifest.json", "besov_report.csv", "besov_summary.json"] {
        let same = fs::read(tmp.path().join("a").join(name)).ok() == fs::read(tmp.path().join("b").join(name)).ok();
        if !same {
            notes.push(format!("{name} differs"));
        }
        ok &= same;
    }
    let cfg = tmp.path().join("tight.json");
    fs::write(&cfg, r#"{"n_r": 32, "n_t": 128, "ratio_bound": 1.5}"#).unwrap();
    let violated = run(&["besov", "--config", cfg.to_str().unwrap(), "--out", &dir("c")]).status.code();
    let bad_band = run(&["kernel", "--band", "9", "--out", &dir("c")]).status.code();
    ok &= violated == Some(1) && bad_band == Some(2);
    let seconds = start.elapsed().as_secs_f64();
    Line {
        id: "AC9",
        title: "CLI determinism and exit status",
        passed: ok && seconds <= 10.0,
        summary: format!(
            "5 artifacts byte-identical across reruns: {}; bound violation exit {violated:?}, bad band exit {bad_band:?}",
            if notes.is_empty() { "yes".to_string() } else { notes.join(", ") }
        ),
        seconds,
        budget: 10.0,
    }
}

#[test]
fn acceptance() {
    let cfg = RunConfig::default();
    let grid = cfg.grid().unwrap();
    let mesh = cfg.mesh().unwrap();
    let part = cfg.partition().unwrap();
    let budget = u128::from(cfg.convolution_budget);
    let lines = vec![
        from_check("AC1", "Plancherel isometry", 10.0, check_plancherel(&grid, &mesh, 1e-3).unwrap()),
        from_check("AC2", "Inversion round trips", 20.0, check_inversion(&grid, &mesh, 1e-3, 1e-2).unwrap()),
        from_check("AC3", "Convolution theorem vs 16^3 oracle", 60.0, check_convolution(&grid, &mesh, budget, 5e-2).unwrap()),
        from_check("AC4", "Sub-Laplacian eigenvalue law", 30.0, check_eigenvalue(1e-2).unwrap()),
        from_check("AC5", "Calderon identity", 5.0, check_calderon(&grid, &part, 1e-10).unwrap()),
        from_check("AC6", "Admissibility and isometry constant", 20.0, check_isometry(&grid, &part, 1e-2).unwrap()),
        from_check(
            "AC7",
            "Besov norm equivalence",
            120.0,
            check_equivalence(&grid, &mesh, &part, &standard_params(), 100.0, 1e-6).unwrap(),
        ),
        k2_oracle(),
        cli_contracts(),
    ];
    println!();
    for l in &lines {
        println!(
            "{} [{}] {}: {} ({:.2} s, budget {:.0} s)",
            l.id,
            if l.passed { "PASS" } else { "FAIL" },
            l.title,
            l.summary,
            l.seconds,
            l.budget
        );
    }
    let failed: Vec<&str> = lines.iter().filter(|l| !l.passed).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
}
