//! Command-line surface: exact Steenrod arithmetic, characteristic
//! classes, Ext charts, spectral-sequence verdicts, manifold
//! classification, and the self-test harness.
//!
//! Exit codes: 0 success, 1 computation failure, 2 usage error.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use mb13::charclass::{self, CharClassRecord, ManifoldInvariants};
use mb13::chart::ExportFormat;
use mb13::classifier;
use mb13::graded::{cpn_module, thom_module, GradedModule};
use mb13::resolution::{minimal_resolution, ResolveOptions};
use mb13::selftest::{self, Depth};
use mb13::sseq;
use mb13::steenrod::{adem_reduce, basis_in_degree, AlgebraProfile, SquareWord};

#[derive(Parser)]
#[command(
    name = "mb13",
    about = "Bordism-theoretic classification toolkit for 13-manifolds with the \
             cohomology of CP^3 x S^7",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Steenrod algebra arithmetic in the admissible basis
    Steenrod {
        #[command(subcommand)]
        command: SteenrodCommand,
    },
    /// Characteristic classes of xi = -s*H over CP^4
    Charclass {
        /// Coefficient of the first Pontryagin class p1(M) = s x^2
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        /// Output format: text or json
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Minimal resolutions and Ext charts
    Ext {
        #[command(subcommand)]
        command: ExtCommand,
    },
    /// Spectral-sequence pages and primary verdicts
    Sseq {
        #[command(subcommand)]
        command: SseqCommand,
    },
    /// Classification verdicts for pairs of manifolds
    Classify(ClassifyArgs),
    /// Replay the pipeline's computations
    Selftest {
        /// quick or full
        #[arg(long, default_value = "quick")]
        depth: String,
    },
}

#[derive(Subcommand)]
enum SteenrodCommand {
    /// Expand a square word in the admissible basis, one monomial per line
    Reduce {
        /// Word such as "Sq(2,2)" or "2,2"
        word: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Admissible monomials of a degree admitted by a profile
    Basis {
        /// A (full algebra) or A2 / A(n) (subalgebra)
        profile: String,
        degree: u32,
        #[arg(long, default_value = "text")]
        format: String,
    },
}

#[derive(Subcommand)]
enum ExtCommand {
    /// Compute a minimal resolution and export the chart
    Resolve {
        /// builtin module (trivial | cp4 | thom:<s>) or a path to a
        /// gen/sq presentation file
        #[arg(long)]
        module: String,
        /// A (full algebra) or A2
        #[arg(long, default_value = "A2")]
        profile: String,
        #[arg(long, default_value_t = 8)]
        smax: u32,
        #[arg(long, default_value_t = 30)]
        tmax: u32,
        /// Chart stem bound; defaults to the trusted corner tmax - 2*smax
        #[arg(long)]
        stem_max: Option<u32>,
        #[arg(long, default_value = "ascii")]
        format: String,
        /// Write the document here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Force single-threaded linear algebra
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Subcommand)]
enum SseqCommand {
    /// Case tag, page survivors, Adams d2 kills, and primary verdicts
    Verdict {
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Render E1-page stems of the algebraic AHSS
    Page {
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        /// 12, 13, 14, or "all"
        #[arg(long, default_value = "all")]
        stem: String,
        #[arg(long, default_value = "ascii")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct ClassifyArgs {
    #[command(subcommand)]
    command: Option<ClassifyCommand>,
    /// p1-coefficient of the first manifold
    #[arg(long, allow_negative_numbers = true)]
    s1: Option<i64>,
    /// p1-coefficient of the second manifold
    #[arg(long, allow_negative_numbers = true)]
    s2: Option<i64>,
    /// Print the spin analysis alongside the verdict
    #[arg(long)]
    spin_check: bool,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum ClassifyCommand {
    /// Realize p1 = s x^2 as the total space of an S^7-bundle over CP^3
    Realize {
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Fiber-homotopy comparison of two bundles by p1-coefficient
    Fiber {
        #[arg(long, allow_negative_numbers = true)]
        k1: i64,
        #[arg(long, allow_negative_numbers = true)]
        k2: i64,
        #[arg(long, default_value = "text")]
        format: String,
    },
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes (e.g. `mb13 ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit(document: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, document)
            .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(document.as_bytes())?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Steenrod { command } => match command {
            SteenrodCommand::Reduce { word, format } => {
                let parsed = SquareWord::from_str(&word)?;
                let reduced = adem_reduce(&parsed);
                let terms: Vec<String> = reduced.terms().map(|t| t.to_string()).collect();
                match format.as_str() {
                    "json" => println!("{}", serde_json::to_string(&terms)?),
                    "text" => {
                        if terms.is_empty() {
                            println!("0");
                        } else {
                            for term in &terms {
                                println!("{term}");
                            }
                        }
                    }
                    other => anyhow::bail!("unknown format {other:?}"),
                }
            }
            SteenrodCommand::Basis {
                profile,
                degree,
                format,
            } => {
                let profile = AlgebraProfile::from_str(&profile)?;
                let words: Vec<String> = basis_in_degree(profile, degree)
                    .iter()
                    .map(|w| w.to_string())
                    .collect();
                match format.as_str() {
                    "json" => println!("{}", serde_json::to_string(&words)?),
                    "text" => {
                        for word in &words {
                            println!("{word}");
                        }
                    }
                    other => anyhow::bail!("unknown format {other:?}"),
                }
            }
        },
        Command::Charclass { s, format } => {
            let record = CharClassRecord::for_s(s);
            let json = serde_json::to_string(&record)?;
            match format.as_str() {
                "json" => println!("{json}"),
                "text" => {
                    let b = charclass::characteristic_classes(s, 4);
                    println!("xi = {}(-H) over CP^4", s);
                    println!("  c(xi)  = {}", b.total_chern);
                    println!("  c1(xi) = {}", b.c1);
                    println!("  c2(xi) = {}", b.c2);
                    println!("  p1(xi) = {}", b.p1);
                    println!("  w(xi)  = {} (mod 2)", b.w);
                    println!("  case   : {}", charclass::case_of(s));
                    println!("{json}");
                }
                other => anyhow::bail!("unknown format {other:?}"),
            }
        }
        Command::Ext { command } => match command {
            ExtCommand::Resolve {
                module,
                profile,
                smax,
                tmax,
                stem_max,
                format,
                out,
                sequential,
            } => {
                let profile = AlgebraProfile::from_str(&profile)?;
                let m = load_module(&module, tmax)?;
                let format = ExportFormat::from_str(&format)?;
                let res = minimal_resolution(
                    &m,
                    profile,
                    smax,
                    tmax,
                    ResolveOptions { sequential },
                );
                let stem_max = stem_max.unwrap_or_else(|| tmax.saturating_sub(2 * smax));
                let labels = (profile == AlgebraProfile::Subalgebra(2)
                    && m.rank() == 1
                    && m.degree(0) == 0)
                    .then(mb13::data::chart_label_table);
                let mut chart = res.to_chart(smax, stem_max, labels.as_ref())?;
                chart.canonicalize();
                emit(&chart.export(format), out.as_ref())?;
            }
        },
        Command::Sseq { command } => match command {
            SseqCommand::Verdict { s, format } => {
                let report = sseq::verdict(s)?;
                let json = serde_json::to_string(&report)?;
                match format.as_str() {
                    "json" => println!("{json}"),
                    "text" => {
                        println!("s = {s}: {}", report.case);
                        println!(
                            "  AAHSS survivors, stem 13: {}",
                            join_or_none(&report.aahss_survivors_stem13)
                        );
                        println!(
                            "  AAHSS survivors, stem 14: {}",
                            join_or_none(&report.aahss_survivors_stem14)
                        );
                        for (src, tgt) in &report.adams_d2_kills {
                            println!("  Adams d2 kills: {src} -> {tgt}");
                        }
                        match &report.two_primary {
                            sseq::TwoPrimaryVerdict::Zero => {
                                println!("  2-primary pi_13(MB) = 0")
                            }
                            sseq::TwoPrimaryVerdict::Z2 { generator } => {
                                println!("  2-primary pi_13(MB) = Z/2 <{generator}>")
                            }
                        }
                        match report.three_primary {
                            sseq::ThreePrimaryVerdict::Zero => {
                                println!("  3-primary pi_13(MB) = 0")
                            }
                            sseq::ThreePrimaryVerdict::AtMostZ3 => {
                                println!("  3-primary pi_13(MB) = Z/3 or 0 (undetermined)")
                            }
                        }
                        println!("{json}");
                    }
                    other => anyhow::bail!("unknown format {other:?}"),
                }
            }
            SseqCommand::Page {
                s,
                stem,
                format,
                out,
            } => {
                let stems: Vec<u32> = match stem.as_str() {
                    "all" => vec![12, 13, 14],
                    other => {
                        let n: u32 = other
                            .parse()
                            .map_err(|_| anyhow::anyhow!("bad stem {other:?}"))?;
                        anyhow::ensure!(
                            (12..=14).contains(&n),
                            "page stems are 12, 13, 14 (or all)"
                        );
                        vec![n]
                    }
                };
                let format = ExportFormat::from_str(&format)?;
                let m = thom_module(s, 4, 8)?;
                let chart = sseq::page_chart(&m, &stems);
                emit(&chart.export(format), out.as_ref())?;
            }
        },
        Command::Classify(args) => match args.command {
            Some(ClassifyCommand::Realize { s, format }) => {
                let r = classifier::bundle_realization(s)?;
                let curvature = classifier::curvature_annotation(s)?;
                match format.as_str() {
                    "json" => println!(
                        "{}",
                        serde_json::json!({
                            "s": r.s,
                            "k": r.fibration.p1_coefficient,
                            "smooth": r.smooth,
                            "annotation": r.annotation,
                            "curvature": curvature,
                        })
                    ),
                    "text" => {
                        println!("p1 = {s}x^2 is realized by: {}", r.annotation);
                        println!("{curvature}");
                    }
                    other => anyhow::bail!("unknown format {other:?}"),
                }
            }
            Some(ClassifyCommand::Fiber { k1, k2, format }) => {
                let equivalent = classifier::fiber_homotopy_equivalent(
                    classifier::FibrationClass::new(k1),
                    classifier::FibrationClass::new(k2),
                );
                match format.as_str() {
                    "json" => println!(
                        "{}",
                        serde_json::json!({
                            "k1": k1, "k2": k2, "fiber_homotopy_equivalent": equivalent,
                        })
                    ),
                    "text" => {
                        let verdict = if equivalent { "are" } else { "are not" };
                        println!(
                            "S^7-bundles with p1 = {k1}x^2 and {k2}x^2 {verdict} fiber \
                             homotopy equivalent (criterion: p1 mod 24)"
                        );
                    }
                    other => anyhow::bail!("unknown format {other:?}"),
                }
            }
            None => {
                let (Some(s1), Some(s2)) = (args.s1, args.s2) else {
                    anyhow::bail!("classify needs --s1 and --s2 (or a subcommand)");
                };
                let a = ManifoldInvariants::from_p1_coefficient(s1);
                let b = ManifoldInvariants::from_p1_coefficient(s2);
                if args.spin_check {
                    for m in [a, b] {
                        println!(
                            "w2(M) = {}x mod 2 -> {}",
                            m.s.rem_euclid(2),
                            if m.spin { "spin" } else { "nonspin" }
                        );
                    }
                }
                let verdict = classifier::classify(a, b, true)?;
                let json = serde_json::json!({
                    "relation": verdict.relation,
                    "justifications": verdict.justification,
                });
                match args.format.as_str() {
                    "json" => println!("{json}"),
                    "text" => {
                        println!(
                            "M(p1 = {s1}x^2) and M'(p1 = {s2}x^2) are {}",
                            verdict.relation
                        );
                        for j in &verdict.justification {
                            println!("  - {j}");
                        }
                        println!("{json}");
                    }
                    other => anyhow::bail!("unknown format {other:?}"),
                }
            }
        },
        Command::Selftest { depth } => {
            let depth = Depth::from_str(&depth)?;
            let report = selftest::run(depth);
            print!("{}", report.render_text());
            if !report.passed() {
                anyhow::bail!("self-test failed");
            }
        }
    }
    Ok(())
}

fn join_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".to_string()
    } else {
        items.join(", ")
    }
}

fn load_module(spec: &str, cap: u32) -> anyhow::Result<GradedModule> {
    match spec {
        "trivial" => Ok(GradedModule::with_basis(&[("1".to_string(), 0)], cap)),
        "cp4" => Ok(cpn_module(4, 8)),
        other => {
            if let Some(s) = other.strip_prefix("thom:") {
                let s: i64 = s.parse().map_err(|_| {
                    anyhow::anyhow!("bad thom parameter in {other:?}; expected thom:<s>")
                })?;
                return Ok(thom_module(s, 4, 8)?.into_module());
            }
            let text = std::fs::read_to_string(other)
                .map_err(|e| anyhow::anyhow!("cannot read module file {other:?}: {e}"))?;
            Ok(GradedModule::from_text(&text)?)
        }
    }
}
