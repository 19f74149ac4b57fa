#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use distortion_risk::{DistortionSpec, MomentTarget, ProblemSpec, ReferenceDistribution, Solver};

pub fn std_normal_spec(g: DistortionSpec, delta: f64, eps: Option<f64>, n: usize) -> ProblemSpec {
    ProblemSpec::new(
        ReferenceDistribution::normal(0.0, 1.0).unwrap(),
        g,
        MomentTarget::new(0.0, 1.0).unwrap(),
        delta,
        eps,
        n,
    )
    .unwrap()
}

pub fn solver(g: DistortionSpec, delta: f64, eps: Option<f64>, n: usize) -> Solver {
    Solver::new(&std_normal_spec(g, delta, eps, n)).unwrap()
}

pub fn cvar() -> DistortionSpec {
    DistortionSpec::Cvar { alpha: 0.7 }
}

pub fn dp5() -> DistortionSpec {
    DistortionSpec::DualPower { beta: 5.0 }
}

/// `g(x) = 3x^2 - 2x^3`: increasing but neither concave nor convex, so its
/// weights rise then fall.
pub fn smoothstep_g(x: f64) -> f64 {
    3.0 * x * x - 2.0 * x * x * x
}

pub fn cell_weights(g: impl Fn(f64) -> f64, n: usize) -> Vec<f64> {
    let nf = n as f64;
    (1..=n)
        .map(|i| nf * (g(1.0 - (i - 1) as f64 / nf) - g(1.0 - i as f64 / nf)))
        .collect()
}

pub fn smoothstep(n: usize) -> DistortionSpec {
    DistortionSpec::GammaTable {
        weights: cell_weights(smoothstep_g, n),
    }
}

pub fn write_smoothstep_csv(path: &Path, n: usize) {
    let mut s = String::from("gamma\n");
    for w in cell_weights(smoothstep_g, n) {
        s.push_str(&format!("{w}\n"));
    }
    std::fs::write(path, s).unwrap();
}

pub fn drisk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drisk"))
        .args(args)
        .output()
        .expect("run drisk")
}

pub fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub x: f64,
    pub regime: String,
    pub value: Option<f64>,
    pub dist: Option<f64>,
    pub threshold: Option<f64>,
}

pub fn parse_sweep(csv_text: &str) -> Vec<Row> {
    let mut lines = csv_text.lines();
    assert_eq!(
        lines.next(),
        Some("axis_value,regime,value,achieved_distance_sq,delta_star_or_eps_star")
    );
    let opt = |s: &str| if s.is_empty() { None } else { Some(s.parse::<f64>().unwrap()) };
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 5, "{l}");
            Row {
                x: f[0].parse().unwrap(),
                regime: f[1].to_string(),
                value: opt(f[2]),
                dist: opt(f[3]),
                threshold: opt(f[4]),
            }
        })
        .collect()
}

pub fn sweep(args: &[&str]) -> Vec<Row> {
    let mut all = vec!["sweep", "--reference", "normal:0,1", "--mu", "0", "--sigma", "1"];
    all.extend_from_slice(args);
    let out = drisk(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    parse_sweep(&String::from_utf8(out.stdout).unwrap())
}
