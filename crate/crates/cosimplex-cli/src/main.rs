//! Command-line surface: validate JSON-described objects, compute
//! cohomology through three independent pipelines, enumerate torsors and
//! cosimplicial functor groupoids, and run the seeded verification suites.
//!
//! Exit codes: 0 pass, 2 validation failure, 3 parse error, 4 budget
//! exceeded, 5 usage error.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use cosimplex::cosab::{cn_subcomplex, cohomology_h, derived_limit_cobar, CnCut};
use cosimplex::error::Error;
use cosimplex::json::{parse_bundle, ParsedBundle};
use cosimplex::postnikov::{k_invariant_ab, normalize_dk};
use cosimplex::torsor::enumerate_torsors;
use cosimplex::torsor::hdelta::{h_delta_with_cap, theorem12_check};
use cosimplex::verify::run_suite;

#[derive(Parser)]
#[command(name = "cosimplex", version, disable_help_subcommand = true)]
#[command(about = "Exact computations with truncated cosimplicial spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy)]
enum OutputMode {
    Table,
    Json,
}

/// The two output flags; `--table` is the default.
#[derive(clap::Args, Clone, Copy)]
struct OutputFlags {
    /// machine-readable JSON with sorted keys
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// human-readable table (default)
    #[arg(long)]
    table: bool,
}

impl OutputFlags {
    fn mode(&self) -> OutputMode {
        if self.json {
            OutputMode::Json
        } else {
            OutputMode::Table
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a bundle against the full (co)simplicial identity suite
    Check {
        path: PathBuf,
    },
    /// Cohomology of a cosimplicial abelian group through the Moore,
    /// normalized and derived-limit pipelines
    Cohomology {
        path: PathBuf,
        /// inclusive degree range, e.g. 0..2
        #[arg(long)]
        degrees: String,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Enumerate torsors of a cosimplicial groupoid and compare with the
    /// functor groupoid
    Torsors {
        path: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// The groupoid of cosimplicial functors of a cosimplicial groupoid
    Hdelta {
        path: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Run a named seeded verification suite
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        count: usize,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Eilenberg-Mac Lane model report for a diagram bundle
    EmModel {
        path: PathBuf,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// k-invariant fibre sequence report for a simplicial abelian group
    KInvariant {
        path: PathBuf,
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        output: OutputFlags,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version requests are successes, anything else is usage
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 5,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(run(cli));
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 3,
        Error::CapExceeded(_) => 4,
        _ => 2,
    }
}

fn budget(cap: Option<usize>) -> usize {
    cap.or_else(|| {
        std::env::var("COSIMPLEX_BUDGET")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(1_000_000)
}

fn load(path: &PathBuf) -> Result<ParsedBundle, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_bundle(&text)
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Check { path } => match load(&path) {
            Ok(b) => {
                println!("ok: valid {} bundle", b.kind());
                0
            }
            Err(e) => {
                println!("{}", e);
                exit_code(&e)
            }
        },
        Command::Cohomology { path, degrees, output } => {
            let bundle = match load(&path) {
                Ok(ParsedBundle::CosimpAb(a)) => a,
                Ok(other) => {
                    println!("expected a cosimplicial-ab bundle, got {}", other.kind());
                    return 2;
                }
                Err(e) => {
                    println!("{}", e);
                    return exit_code(&e);
                }
            };
            let Some((lo, hi)) = parse_range(&degrees) else {
                println!("--degrees must look like a..b");
                return 5;
            };
            cmd_cohomology(&bundle, lo, hi, output.mode())
        }
        Command::Torsors { path, cap, output } => {
            let h = match load(&path) {
                Ok(ParsedBundle::CosimpGpd(h)) => h,
                Ok(other) => {
                    println!("expected a cosimplicial-gpd bundle, got {}", other.kind());
                    return 2;
                }
                Err(e) => {
                    println!("{}", e);
                    return exit_code(&e);
                }
            };
            cmd_torsors(&h, budget(cap), output.mode())
        }
        Command::Hdelta { path, cap, output } => {
            let h = match load(&path) {
                Ok(ParsedBundle::CosimpGpd(h)) => h,
                Ok(other) => {
                    println!("expected a cosimplicial-gpd bundle, got {}", other.kind());
                    return 2;
                }
                Err(e) => {
                    println!("{}", e);
                    return exit_code(&e);
                }
            };
            cmd_hdelta(&h, budget(cap), output.mode())
        }
        Command::Verify { suite, seed, count, output } => match run_suite(&suite, seed, count) {
            Ok(report) => {
                match output.mode() {
                    OutputMode::Json => {
                        let cases: Vec<Value> = report
                            .cases
                            .iter()
                            .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
                            .collect();
                        print_json(&json!({
                            "suite": report.suite,
                            "seed": report.seed,
                            "count": report.count,
                            "pass": report.passed(),
                            "cases": cases,
                        }));
                    }
                    OutputMode::Table => {
                        for c in &report.cases {
                            println!(
                                "{} {} ({})",
                                if c.pass { "PASS" } else { "FAIL" },
                                c.name,
                                c.detail
                            );
                        }
                        println!(
                            "suite {} seed {} count {}: {}",
                            report.suite,
                            report.seed,
                            report.count,
                            if report.passed() { "PASS" } else { "FAIL" }
                        );
                    }
                }
                if report.passed() {
                    0
                } else {
                    2
                }
            }
            Err(e) => {
                println!("{}", e);
                5
            }
        },
        Command::EmModel { path, output } => {
            let bundle = match load(&path) {
                Ok(ParsedBundle::Diagram(d)) => d,
                Ok(other) => {
                    println!("expected a diagram-bundle, got {}", other.kind());
                    return 2;
                }
                Err(e) => {
                    println!("{}", e);
                    return exit_code(&e);
                }
            };
            match cosimplex::postnikov::em_model(
                &bundle.u,
                &bundle.v,
                &bundle.include,
                &bundle.project,
                &bundle.f,
                bundle.degree,
            ) {
                Ok(em) => {
                    match output.mode() {
                        OutputMode::Json => {
                            let reports: Vec<Value> = em
                                .reports
                                .iter()
                                .map(|r| {
                                    json!({
                                        "object": r.object,
                                        "p_iso": r.p_iso,
                                        "hurewicz_iso": r.hurewicz_iso,
                                        "quotient_iso": r.quotient_iso,
                                        "section_iso": r.section_iso,
                                    })
                                })
                                .collect();
                            let coeffs: Vec<String> = em
                                .coefficients
                                .iter()
                                .map(|g| g.invariant_factors().to_string())
                                .collect();
                            print_json(&json!({
                                "window": [0, em.window],
                                "pass": em.pass(),
                                "coefficients": coeffs,
                                "objects": reports,
                            }));
                        }
                        OutputMode::Table => {
                            println!("window: degrees 0..={}", em.window);
                            for (r, g) in em.reports.iter().zip(&em.coefficients) {
                                println!(
                                    "object {}: p {} hurewicz {} quotient {} section {} | H_n = {}",
                                    r.object,
                                    pf(r.p_iso),
                                    pf(r.hurewicz_iso),
                                    pf(r.quotient_iso),
                                    pf(r.section_iso),
                                    g.invariant_factors()
                                );
                            }
                            println!("em-model: {}", pf(em.pass()));
                        }
                    }
                    if em.pass() {
                        0
                    } else {
                        2
                    }
                }
                Err(e) => {
                    println!("{}", e);
                    exit_code(&e)
                }
            }
        }
        Command::KInvariant { path, degree, output } => {
            let a = match load(&path) {
                Ok(ParsedBundle::SimpAb(a)) => a,
                Ok(other) => {
                    println!("expected a simplicial-ab bundle, got {}", other.kind());
                    return 2;
                }
                Err(e) => {
                    println!("{}", e);
                    return exit_code(&e);
                }
            };
            match k_invariant_ab(&a, degree) {
                Ok(ki) => {
                    let (zc, _) = normalize_dk(&ki.target);
                    let top = zc
                        .homology(degree + 1)
                        .map(|g| g.invariant_factors().to_string())
                        .unwrap_or_else(|_| "n/a".into());
                    match output.mode() {
                        OutputMode::Json => print_json(&json!({
                            "degree": degree,
                            "window": [0, ki.window],
                            "exact": ki.exact,
                            "top_homology_matches": ki.top_homology_matches,
                            "target_top_homology": top,
                        })),
                        OutputMode::Table => {
                            println!("degree {}: window 0..={}", degree, ki.window);
                            println!("exactness: {}", pf(ki.exact));
                            println!("H_(n+1)(target) = {} (matches H_n(P_n): {})",
                                top, pf(ki.top_homology_matches));
                        }
                    }
                    if ki.exact && ki.top_homology_matches {
                        0
                    } else {
                        2
                    }
                }
                Err(e) => {
                    println!("{}", e);
                    exit_code(&e)
                }
            }
        }
    }
}

fn pf(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn parse_range(s: &str) -> Option<(usize, usize)> {
    let (a, b) = s.split_once("..")?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_cohomology(
    a: &cosimplex::cosab::TruncCosimpAb,
    lo: usize,
    hi: usize,
    output: OutputMode,
) -> i32 {
    let n_top = a.trunc();
    let mut rows = Vec::new();
    let mut mismatch = false;
    for n in lo..=hi {
        let moore = if n < n_top {
            Some(cohomology_h(a, n))
        } else {
            None
        };
        let cn = if n < n_top {
            Some(cn_subcomplex(a, CnCut::All).and_then(|(c, _)| c.cohomology(n as i64)))
        } else {
            None
        };
        let cobar = if n + 2 <= n_top {
            Some(derived_limit_cobar(a, n))
        } else {
            None
        };
        let fmt = |r: &Option<cosimplex::error::Result<cosimplex::fgab::FgAbGroup>>| match r {
            None => "n/a".to_string(),
            Some(Ok(g)) => g.invariant_factors().to_string(),
            Some(Err(e)) => format!("error: {e}"),
        };
        let (m, c, b) = (fmt(&moore), fmt(&cn), fmt(&cobar));
        let defined: Vec<&String> = [&m, &c, &b]
            .into_iter()
            .filter(|s| s.as_str() != "n/a")
            .collect();
        let agree = defined.windows(2).all(|w| w[0] == w[1]);
        if !agree {
            mismatch = true;
        }
        rows.push((n, m, c, b, agree));
    }
    match output {
        OutputMode::Json => {
            let rows_json: Vec<Value> = rows
                .iter()
                .map(|(n, m, c, b, agree)| {
                    json!({ "degree": n, "moore": m, "normalized": c, "derived_limit": b, "agree": agree })
                })
                .collect();
            print_json(&json!({ "rows": rows_json, "mismatch": mismatch }));
        }
        OutputMode::Table => {
            println!("{:<8}{:<16}{:<16}{:<16}agree", "degree", "moore", "normalized", "cobar");
            for (n, m, c, b, agree) in &rows {
                println!("{:<8}{:<16}{:<16}{:<16}{}", n, m, c, b, if *agree { "yes" } else { "MISMATCH" });
            }
            if hi + 1 > n_top {
                println!("warning: degrees beyond the truncation margin are n/a");
            }
        }
    }
    if mismatch {
        2
    } else {
        0
    }
}

fn cmd_torsors(h: &cosimplex::torsor::TruncCosimpGpd, cap: usize, output: OutputMode) -> i32 {
    let inv = match enumerate_torsors(h, cap) {
        Ok(i) => i,
        Err(e) => {
            println!("{}", e);
            return exit_code(&e);
        }
    };
    let report = match theorem12_check(h, cap) {
        Ok(r) => r,
        Err(e) => {
            println!("{}", e);
            return exit_code(&e);
        }
    };
    match output {
        OutputMode::Json => {
            let reps: Vec<Value> = inv
                .representatives
                .iter()
                .map(|x| json!({ "level_sizes": x.total().level_sizes() }))
                .collect();
            print_json(&json!({
                "torsors_found": inv.total_found,
                "pi0_torsors": inv.pi0,
                "pi0_hdelta": report.hdelta_pi0,
                "hdelta_objects": report.hdelta_objects,
                "hdelta_morphisms": report.hdelta_morphisms,
                "stabilized": report.stabilized,
                "theorem12": report.pass(),
                "representatives": reps,
            }));
        }
        OutputMode::Table => {
            println!("torsors found: {} in {} isomorphism classes", inv.total_found, inv.pi0);
            for (k, x) in inv.representatives.iter().enumerate() {
                println!("  class {}: total level sizes {:?}", k, x.total().level_sizes());
            }
            println!(
                "functor groupoid: {} objects, {} morphisms, pi0 = {}",
                report.hdelta_objects, report.hdelta_morphisms, report.hdelta_pi0
            );
            println!(
                "stabilized: {}",
                match report.stabilized {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "n/a",
                }
            );
            println!("comparison (torsors vs functors): {}", pf(report.pass()));
        }
    }
    0
}

fn cmd_hdelta(h: &cosimplex::torsor::TruncCosimpGpd, cap: usize, output: OutputMode) -> i32 {
    let hd = match h_delta_with_cap(h, cap) {
        Ok(hd) => hd,
        Err(e) => {
            println!("{}", e);
            return exit_code(&e);
        }
    };
    match output {
        OutputMode::Json => {
            print_json(&json!({
                "objects": hd.groupoid.objects().labels(),
                "object_count": hd.groupoid.objects().len(),
                "morphism_count": hd.groupoid.morphisms().len(),
                "pi0": hd.groupoid.pi0_count(),
                "stabilized": hd.stabilized,
            }));
        }
        OutputMode::Table => {
            println!(
                "functor groupoid: {} objects, {} morphisms, pi0 = {}",
                hd.groupoid.objects().len(),
                hd.groupoid.morphisms().len(),
                hd.groupoid.pi0_count()
            );
            for label in hd.groupoid.objects().labels() {
                println!("  object {}", label);
            }
            println!(
                "stabilized: {}",
                match hd.stabilized {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "n/a",
                }
            );
        }
    }
    0
}
