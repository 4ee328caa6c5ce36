use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mvgb::cameras::CameraFile;
use mvgb::checks;
use mvgb::degeneration::{explore_specialization, verify_degeneration};
use mvgb::exactalg::{parse_rational, Rational};
use mvgb::groebner::IdealPresentation;
use mvgb::hilbscheme::census;
use mvgb::monomial::{hilbert_closed_form, MonomialIdeal};
use mvgb::polyring::{for_each_composition, Polynomial, Ring, TermOrder};
use mvgb::tangent::tangent_dim;
use mvgb::toric;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "mvgb", version, about = "Exact computations with multiview ideals")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ideals built from camera files.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Reduced Gröbner basis of an ideal file.
    Gb {
        file: PathBuf,
        #[arg(long, default_value = "lex")]
        order: String,
    },
    /// Normal form of a polynomial modulo an ideal file.
    Nf {
        file: PathBuf,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "lex")]
        order: String,
    },
    /// Eliminate all variables except the listed ones.
    Elim {
        file: PathBuf,
        /// Comma-separated variables to keep.
        #[arg(long)]
        keep: String,
    },
    /// Multigraded Hilbert function values.
    Hilb(HilbArgs),
    /// Minimal primes of a squarefree monomial ideal.
    Decompose { file: PathBuf },
    /// Tangent space dimension at a monomial ideal.
    Tangent {
        #[arg(long = "ideal")]
        ideal_flag: Option<PathBuf>,
        file: Option<PathBuf>,
    },
    /// The collinear degeneration.
    #[command(subcommand)]
    Degeneration(DegenerationCmd),
    /// The toric Gröbner fan.
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Monomial points of the multigraded Hilbert scheme.
    #[command(subcommand)]
    Hilbscheme(HilbschemeCmd),
    /// Acceptance checks.
    #[command(subcommand)]
    Check(CheckCmd),
}

#[derive(Subcommand)]
enum IdealCmd {
    /// Maximal minors of a camera file, one generator per line.
    FromCameras {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct HilbArgs {
    file: PathBuf,
    /// Multidegree, e.g. `1,1`.
    #[arg(long, conflicts_with = "box_size")]
    u: Option<String>,
    /// Every multidegree with entries at most K.
    #[arg(long = "box")]
    box_size: Option<u32>,
}

#[derive(Subcommand)]
enum DegenerationCmd {
    Verify {
        #[arg(long)]
        n: usize,
    },
    /// Specialize the parameter to a rational value.
    Explore {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: String,
    },
}

#[derive(Subcommand)]
enum ToricCmd {
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        classes: bool,
        #[arg(long)]
        dual_graphs: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HilbschemeCmd {
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tangent: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    All {
        #[arg(long, default_value_t = 7)]
        n_max: usize,
    },
}

enum Failure {
    Input(String),
    Verification(Value),
}

type Outcome = Result<Value, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn report(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    v
}

/// Verification result: the report on success, the report as witness otherwise.
fn verdict(passed: bool, v: Value) -> Outcome {
    let v = report(v);
    if passed {
        Ok(v)
    } else {
        Err(Failure::Verification(v))
    }
}

/// Number of cameras implied by the variable names in `text`.
fn infer_cameras(text: &str) -> usize {
    let b = text.as_bytes();
    let mut n = 2;
    for (i, &c) in b.iter().enumerate() {
        if matches!(c, b'x' | b'y' | b'z') && (i == 0 || !b[i - 1].is_ascii_alphanumeric()) {
            let digits: String = text[i + 1..].chars().take_while(char::is_ascii_digit).collect();
            if let Ok(k) = digits.parse::<usize>() {
                n = n.max(k);
            }
        }
    }
    n
}

/// Reads a camera file (JSON) or a list of polynomials, one per line.
fn read_ideal(path: &Path) -> Result<IdealPresentation<Rational>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        return Ok(CameraFile::read(path).map_err(input)?.minors_ideal());
    }
    let ring = Ring::new(infer_cameras(&text));
    let gens = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| Polynomial::parse(l, &ring).map_err(input))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IdealPresentation::new(ring, gens))
}

fn read_monomial_ideal(path: &Path) -> Result<MonomialIdeal, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        let ideal = CameraFile::read(path).map_err(input)?.minors_ideal();
        return Ok(ideal.initial_ideal(&TermOrder::lex(&ideal.ring)));
    }
    MonomialIdeal::parse(&text, Ring::new(infer_cameras(&text))).map_err(input)
}

fn poly_lines(polys: &[Polynomial<Rational>], ring: &Ring) -> Vec<String> {
    polys.iter().map(|p| p.display(ring)).collect()
}

fn parse_list(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| input(format!("bad multidegree entry `{t}`"))))
        .collect()
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Ideal(IdealCmd::FromCameras { file, out }) => {
            let cams = CameraFile::read(&file).map_err(input)?;
            let ideal = cams.minors_ideal();
            let lines = poly_lines(ideal.gens(), &ideal.ring);
            if let Some(out) = out {
                write(&out, &(lines.join("\n") + "\n"))?;
            }
            Ok(report(json!({"n": cams.n(), "generators": lines})))
        }
        Command::Gb { file, order } => {
            let ideal = read_ideal(&file)?;
            let order = TermOrder::parse(&order, &ideal.ring).map_err(input)?;
            let gb = ideal.gb(&order);
            Ok(report(json!({
                "order": order.to_spec(&ideal.ring),
                "basis": poly_lines(&gb, &ideal.ring),
                "initial_ideal": ideal.initial_ideal(&order).to_json().generators,
            })))
        }
        Command::Nf { file, poly, order } => {
            let ideal = read_ideal(&file)?;
            let order = TermOrder::parse(&order, &ideal.ring).map_err(input)?;
            let p = Polynomial::parse(&poly, &ideal.ring).map_err(input)?;
            let nf = ideal.normal_form(&p, &order);
            Ok(report(json!({"normal_form": nf.display(&ideal.ring), "member": nf.is_zero()})))
        }
        Command::Elim { file, keep } => {
            let ideal = read_ideal(&file)?;
            let keep = keep
                .split(',')
                .map(|v| ideal.ring.parse_var(v.trim()).map_err(input))
                .collect::<Result<Vec<_>, _>>()?;
            let e = ideal.eliminate(&keep);
            Ok(report(json!({"generators": poly_lines(e.gens(), &e.ring)})))
        }
        Command::Hilb(args) => {
            let ideal = read_ideal(&args.file)?;
            let n = ideal.ring.n;
            let degrees: Vec<Vec<u32>> = match (&args.u, args.box_size) {
                (Some(u), None) => vec![parse_list(u)?],
                (None, Some(k)) => {
                    let mut all = Vec::new();
                    for d in 0..=k * n as u32 {
                        for_each_composition(d, n, &mut |c| {
                            if c.iter().all(|&a| a <= k) {
                                all.push(c.to_vec());
                            }
                        });
                    }
                    all
                }
                _ => return Err(input("give exactly one of --u and --box")),
            };
            if let Some(u) = degrees.iter().find(|u| u.len() != n) {
                return Err(input(format!("multidegree {u:?} needs {n} entries")));
            }
            if degrees.len() == 1 {
                let u = &degrees[0];
                return Ok(report(json!({"u": u, "value": ideal.hilbert_value(u)})));
            }
            let values: Vec<Value> = degrees
                .iter()
                .map(|u| json!({"u": u, "value": ideal.hilbert_value(u), "multiview": hilbert_closed_form(u)}))
                .collect();
            let agrees = values.iter().all(|v| v["value"] == v["multiview"]);
            Ok(report(json!({"values": values, "matches_multiview": agrees})))
        }
        Command::Decompose { file } => {
            let m = read_monomial_ideal(&file)?;
            let primes = m.minimal_prime_ideals().map_err(input)?;
            let list: Vec<Vec<String>> = primes.iter().map(|p| p.to_json().generators).collect();
            Ok(report(json!({"count": list.len(), "primes": list})))
        }
        Command::Tangent { ideal_flag, file } => {
            let path = ideal_flag.or(file).ok_or_else(|| input("missing ideal file"))?;
            let m = read_monomial_ideal(&path)?;
            Ok(report(json!({"generators": m.len(), "tangent_dim": tangent_dim(&m)})))
        }
        Command::Degeneration(DegenerationCmd::Verify { n }) => {
            if n < 2 {
                return Err(input("need n >= 2"));
            }
            let r = verify_degeneration(n);
            let passed = r.passed();
            verdict(passed, json!({"passed": passed, "report": r}))
        }
        Command::Degeneration(DegenerationCmd::Explore { n, eps }) => {
            if n < 2 {
                return Err(input("need n >= 2"));
            }
            let e = parse_rational(&eps).ok_or_else(|| input(format!("bad rational `{eps}`")))?;
            let r = explore_specialization(n, &e);
            Ok(report(json!({"n": n, "eps": eps, "report": r})))
        }
        Command::Toric(ToricCmd::Enumerate { n, classes, dual_graphs }) => {
            if !(3..=4).contains(&n) {
                return Err(input("toric enumeration supports n = 3 and n = 4"));
            }
            let (rep, _) = toric::enumerate(n, toric::node_cap()).map_err(input)?;
            if let Some(out) = dual_graphs {
                let graphs = rep
                    .classes
                    .iter()
                    .map(|c| {
                        let ideal = MonomialIdeal::parse(&c.representative.join(","), Ring::new(n)).map_err(input)?;
                        let cx = toric::mixed_subdivision(&ideal).map_err(input)?;
                        Ok(json!({"representative": c.representative, "complex": cx.to_json(), "edges": cx.dual_graph()}))
                    })
                    .collect::<Result<Vec<_>, Failure>>()?;
                let text = serde_json::to_string_pretty(&report(json!({"n": n, "classes": graphs}))).unwrap();
                write(&out, &text)?;
            }
            let mut v = json!({
                "n": n,
                "initial_ideals": rep.initial_ideals,
                "classes": rep.classes.len(),
                "toric_generators": rep.toric_generators,
                "all_squarefree": rep.all_squarefree,
                "cells_ok": rep.cells_ok,
            });
            if classes {
                v["class_table"] = json!(rep.classes);
            }
            verdict(rep.all_squarefree && rep.cells_ok, v)
        }
        Command::Hilbscheme(HilbschemeCmd::Census { n, tangent, out }) => {
            if !(2..=3).contains(&n) {
                return Err(input("the census covers n = 2 and n = 3"));
            }
            let c = census(n);
            fs::create_dir_all(&out).map_err(|e| input(format!("{}: {e}", out.display())))?;
            write(&out.join("ideals.txt"), &c.canonical_text())?;
            let classes = serde_json::to_string_pretty(&report(json!({"n": n, "classes": c.classes}))).unwrap();
            write(&out.join("classes.json"), &classes)?;
            if tangent {
                let dims: Vec<Value> = c
                    .classes
                    .iter()
                    .map(|k| json!({"representative": k.representative, "size": k.size, "tangent_dim": k.tangent_dim}))
                    .collect();
                let text = serde_json::to_string_pretty(&report(json!({"n": n, "classes": dims}))).unwrap();
                write(&out.join("tangent.json"), &text)?;
            }
            Ok(report(json!({
                "n": n,
                "ideals": c.ideals,
                "classes": c.classes.len(),
                "sha256": c.sha256,
            })))
        }
        Command::Check(CheckCmd::All { n_max }) => {
            let results = checks::run_all(n_max);
            for r in &results {
                eprintln!("{}", r.line());
            }
            let passed = results.iter().all(|r| r.passed);
            verdict(passed, json!({"n_max": n_max, "passed": passed, "criteria": results}))
        }
    }
}

/// Exit code and stdout text of a finished command; input errors go to stderr.
fn finish(outcome: Outcome) -> (u8, String) {
    match outcome {
        Ok(v) => (0, serde_json::to_string_pretty(&v).unwrap()),
        Err(Failure::Verification(v)) => (1, serde_json::to_string_pretty(&v).unwrap()),
        Err(Failure::Input(msg)) => (2, format!("error: {msg}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let (code, text) = finish(run(cli.command));
    if code == 2 {
        eprintln!("{text}");
    } else {
        println!("{text}");
    }
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mvgb(args: &[&str]) -> (u8, Value) {
        let cli = Cli::try_parse_from(std::iter::once("mvgb").chain(args.iter().copied())).unwrap();
        let (code, text) = finish(run(cli.command));
        (code, serde_json::from_str(&text).unwrap_or(Value::String(text)))
    }

    const PAIR: &str = r#"{"n": 2, "cameras": [[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
                                         [[1, 0, 0, 1], [0, 1, 0, "1/2"], [0, 0, 1, 0]]]}"#;

    #[test]
    fn hilbert_value_of_m2() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("m2.txt");
        fs::write(&f, "x1*x2\n").unwrap();
        let (code, v) = mvgb(&["hilb", f.to_str().unwrap(), "--u", "1,1"]);
        assert_eq!(code, 0);
        assert_eq!(v["value"], 8);
        assert_eq!(v["schema_version"], 1);
        let (code, v) = mvgb(&["hilb", f.to_str().unwrap(), "--box", "3"]);
        assert_eq!(code, 0);
        assert_eq!(v["matches_multiview"], true);
        assert_eq!(v["values"].as_array().unwrap().len(), 16);
    }

    #[test]
    fn toric_three_cameras() {
        let (code, v) = mvgb(&["toric", "enumerate", "--n", "3"]);
        assert_eq!(code, 0);
        assert_eq!(v["initial_ideals"], 20);
        assert_eq!(v["classes"], 3);
    }

    #[test]
    fn cameras_to_ideal_and_back() {
        let dir = tempfile::tempdir().unwrap();
        let cams = dir.path().join("cams.json");
        let ideal = dir.path().join("ideal.txt");
        fs::write(&cams, PAIR).unwrap();
        let (code, v) = mvgb(&["ideal", "from-cameras", cams.to_str().unwrap(), "--out", ideal.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(v["generators"].as_array().unwrap().len(), 1);
        let text = fs::read_to_string(&ideal).unwrap();
        let (code, v) = mvgb(&["nf", ideal.to_str().unwrap(), "--poly", text.trim()]);
        assert_eq!(code, 0);
        assert_eq!(v["member"], true);
        let (code, v) = mvgb(&["gb", ideal.to_str().unwrap(), "--order", "lex:z1>y1"]);
        assert_eq!(code, 0);
        assert_eq!(v["initial_ideal"][0], "x2*z1");
    }

    #[test]
    fn decompose_and_tangent() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("m3.txt");
        fs::write(&f, "x1*x2, x1*x3, x2*x3, x1*y2*y3, x2*y1*y3, x3*y1*y2").unwrap();
        let (code, v) = mvgb(&["decompose", f.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(v["count"], 7);
        let (code, v) = mvgb(&["tangent", f.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(v["tangent_dim"], 21);
    }

    #[test]
    fn census_writes_artifacts() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("h2");
        let (code, v) = mvgb(&["hilbscheme", "census", "--n", "2", "--tangent", "--out", out.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(v["ideals"], 9);
        assert_eq!(fs::read_to_string(out.join("ideals.txt")).unwrap().lines().count(), 9);
        let t: Value = serde_json::from_str(&fs::read_to_string(out.join("tangent.json")).unwrap()).unwrap();
        assert_eq!(t["classes"][0]["tangent_dim"], 8);
        assert!(out.join("classes.json").exists());
    }

    #[test]
    fn degeneration_report() {
        let (code, v) = mvgb(&["degeneration", "verify", "--n", "3"]);
        assert_eq!(code, 0);
        assert_eq!(v["passed"], true);
    }

    #[test]
    fn input_errors_exit_2() {
        let dir = tempfile::tempdir().unwrap();
        let (code, _) = mvgb(&["gb", dir.path().join("missing").to_str().unwrap()]);
        assert_eq!(code, 2);

        let bad = dir.path().join("bad.json");
        fs::write(&bad, r#"{"n": 2, "cameras": [[[1, 0, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0]],
                                                  [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 0]]]}"#)
            .unwrap();
        let (code, v) = mvgb(&["ideal", "from-cameras", bad.to_str().unwrap()]);
        assert_eq!(code, 2);
        assert!(v.as_str().unwrap().contains("rank 3"));

        let cams = dir.path().join("cams.json");
        fs::write(&cams, PAIR).unwrap();
        assert_eq!(mvgb(&["gb", cams.to_str().unwrap(), "--order", "revlex"]).0, 2);
        assert_eq!(mvgb(&["toric", "enumerate", "--n", "5"]).0, 2);
        assert!(Cli::try_parse_from(["mvgb", "frobnicate"]).is_err());
    }
}
