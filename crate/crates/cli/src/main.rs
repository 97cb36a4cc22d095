//! `eigenprod`: runs the section verifications and exposes the exact and field-level queries.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hmf_eigenprod::exact::dedekind_zeta_neg;
use hmf_eigenprod::hmf::verify_sqrt5_identity;
use hmf_eigenprod::interval::PrecisionPolicy;
use hmf_eigenprod::quadfield::{field_descriptor, fundamental_unit_norm, real_class_number, squarefree_part};
use hmf_eigenprod::verifier::{
    exact_identity_scan, run_section, verdict_text, Fixtures, SectionId, Verdict, VerificationReport, VerifierConfig, VerifierError,
};
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_FIXTURES: u8 = 4;
const EXIT_SURVIVORS: u8 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "eigenprod",
    version,
    about = "Certified verification of Hecke eigenform product identities for Hilbert modular forms"
)]
struct Cli {
    /// Base precision in bits for interval evaluation.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    /// Precision ceiling in bits for escalation.
    #[arg(long, global = true, default_value_t = 1024)]
    precision_ceiling: u32,
    /// Largest discriminant enumerated for candidate universes.
    #[arg(long, global = true, default_value_t = 4000)]
    d_limit: i64,
    /// Largest degree swept in the totally real section.
    #[arg(long, global = true, default_value_t = 64)]
    n_max: u32,
    /// Fixtures document; defaults to the bundled one.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Markdown)]
    format: Format,
    /// Directory for report and table files.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one section verification, or all of them.
    Verify {
        /// all, s3-unequal, s3-equal, s4-inert, s4-noninert or s5
        section: String,
    },
    /// Exact ζ_F(1−k) for the real quadratic field of discriminant D.
    Zeta { d: i64, k: usize },
    /// Invariants of the real quadratic field of discriminant D.
    Field { d: i64 },
    /// Exact identity scan over narrow-class-number-one D <= d-limit and weights <= k-limit.
    Scan { d_limit: i64, k_limit: u32 },
    /// Coefficient-by-coefficient check of E4 = 60·E2² over Q(√5).
    DemoSqrt5 { trace_bound: i64 },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

type CliResult = Result<u8, (u8, String)>;

fn usage(msg: impl ToString) -> (u8, String) {
    (EXIT_USAGE, msg.to_string())
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Verify { section } => cmd_verify(cli, section),
        Command::Zeta { d, k } => {
            let v = dedekind_zeta_neg(*d, *k).map_err(usage)?;
            match cli.format {
                Format::Json => println!("{}", json!({ "discriminant": d, "k": k, "value": v.to_string() })),
                _ => println!("{v}"),
            }
            Ok(0)
        }
        Command::Field { d } => cmd_field(cli, *d),
        Command::Scan { d_limit, k_limit } => {
            if *k_limit < 2 {
                return Err(usage("k-limit must be at least 2"));
            }
            let triples = exact_identity_scan(*d_limit, *k_limit).map_err(usage)?;
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&triples).expect("serializes")),
                Format::Csv => {
                    println!("D,k1,k2");
                    for t in &triples {
                        println!("{},{},{}", t.d, t.k1, t.k2);
                    }
                }
                Format::Markdown => {
                    for t in &triples {
                        println!("{t}");
                    }
                    if triples.is_empty() {
                        println!("no surviving triples");
                    }
                }
            }
            Ok(0)
        }
        Command::DemoSqrt5 { trace_bound } => cmd_demo(cli, *trace_bound),
    }
}

fn cmd_field(cli: &Cli, d: i64) -> CliResult {
    let f = field_descriptor(d).map_err(usage)?;
    let h = real_class_number(d).map_err(usage)?;
    let unit = fundamental_unit_norm(squarefree_part(d)).map_err(usage)?;
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "discriminant": f.discriminant,
                "d": f.d,
                "two_splitting": f.two_splitting,
                "class_number": h,
                "narrow_class_number": f.narrow_class_number,
                "fundamental_unit_norm": unit,
            }))
            .expect("serializes")
        ),
        _ => {
            println!("field: Q(√{})", f.d);
            println!("discriminant: {}", f.discriminant);
            println!("splitting of 2: {:?}", f.two_splitting);
            println!("class number: {h}");
            println!("narrow class number: {}", f.narrow_class_number);
            println!("norm of fundamental unit: {unit}");
        }
    }
    Ok(0)
}

fn cmd_demo(cli: &Cli, trace_bound: i64) -> CliResult {
    if trace_bound < 0 {
        return Err(usage("trace bound must be nonnegative"));
    }
    match verify_sqrt5_identity(trace_bound) {
        Ok(r) => {
            if cli.format == Format::Json {
                println!("{}", serde_json::to_string_pretty(&r).expect("serializes"));
                return Ok(0);
            }
            println!("1/(2 c0(E2)) = {} (expected scalar {})", r.derived_scalar, r.scalar);
            for c in &r.checks {
                let sign = if c.y < 0 { '-' } else { '+' };
                println!(
                    "nu = {} {sign} {}ω  trace {:>3}  norm {:>4}:  60·c(E2²) = {}  c(E4) = {}",
                    c.x,
                    c.y.abs(),
                    c.trace,
                    c.norm,
                    c.lhs,
                    c.rhs
                );
            }
            println!("{} coefficients with trace <= {}", r.checked, r.trace_bound);
            println!("all coefficients verified: E4 = 60*E2^2");
            Ok(0)
        }
        Err(e) => Err((EXIT_MISMATCH, e.to_string())),
    }
}

fn config(cli: &Cli) -> Result<VerifierConfig, (u8, String)> {
    let fixtures = match &cli.fixtures {
        Some(p) => Fixtures::load(p).map_err(|e| (EXIT_FIXTURES, e.to_string()))?,
        None => Fixtures::bundled(),
    };
    let cfg = VerifierConfig {
        policy: PrecisionPolicy {
            base: cli.precision,
            ceiling: cli.precision_ceiling,
        },
        d_limit: cli.d_limit,
        n_max: cli.n_max,
        fixtures,
        extra_discriminants: Vec::new(),
    };
    cfg.validate().map_err(usage)?;
    Ok(cfg)
}

fn error_code(e: &VerifierError) -> u8 {
    match e {
        VerifierError::Fixtures(_) | VerifierError::MissingFixture(_) => EXIT_FIXTURES,
        _ => EXIT_USAGE,
    }
}

fn cmd_verify(cli: &Cli, section: &str) -> CliResult {
    let sections: Vec<SectionId> = if section == "all" {
        SectionId::ALL.to_vec()
    } else {
        vec![SectionId::parse(section).ok_or_else(|| usage(format!("unknown section '{section}'")))?]
    };
    let cfg = config(cli)?;

    let results: Vec<Result<VerificationReport, VerifierError>> = std::thread::scope(|s| {
        let handles: Vec<_> = sections
            .iter()
            .map(|&id| {
                let cfg = &cfg;
                s.spawn(move || run_section(id, cfg))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("section job panicked")).collect()
    });
    let mut reports = Vec::new();
    for r in results {
        reports.push(r.map_err(|e| (error_code(&e), e.to_string()))?);
    }

    for r in &reports {
        eprintln!(
            "{}: {} ({} decisions, {} inconclusive, max {} bits)",
            r.section,
            verdict_text(r.verdict),
            r.decisions.total,
            r.decisions.inconclusive,
            r.decisions.max_precision_used
        );
        for t in r.tables.iter().filter(|t| t.primary) {
            let m = match t.matches_golden {
                Some(true) => "matches the golden table",
                Some(false) => "DIFFERS from the golden table",
                None => "no golden table",
            };
            eprintln!("  {}: {m}", t.table.id);
        }
    }

    match &cli.out_dir {
        Some(dir) => write_outputs(dir, cli.format, &reports).map_err(|e| usage(format!("{}: {e}", dir.display())))?,
        None => print!("{}", render(cli.format, &reports)),
    }

    let code = if reports.iter().any(|r| r.golden_mismatch()) {
        EXIT_MISMATCH
    } else if reports.iter().any(|r| r.verdict == Verdict::Inconclusive || r.decisions.inconclusive > 0) {
        EXIT_INCONCLUSIVE
    } else if reports.iter().any(|r| r.verdict != Verdict::NoIdentityExists) {
        EXIT_SURVIVORS
    } else {
        0
    };
    Ok(code)
}

fn render(format: Format, reports: &[VerificationReport]) -> String {
    match format {
        Format::Json if reports.len() == 1 => format!("{}\n", reports[0].to_json()),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(reports).expect("serializes")),
        Format::Markdown => reports.iter().map(|r| r.to_markdown()).collect::<Vec<_>>().join("\n"),
        Format::Csv => {
            let mut out = String::new();
            for r in reports {
                for t in r.tables.iter().filter(|t| t.primary) {
                    out.push_str(&format!("# {}\n{}", t.table.id, t.table.to_csv()));
                }
            }
            out
        }
    }
}

fn write_outputs(dir: &Path, format: Format, reports: &[VerificationReport]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for r in reports {
        let (ext, body) = match format {
            Format::Json | Format::Csv => ("json", r.to_json() + "\n"),
            Format::Markdown => ("md", r.to_markdown()),
        };
        std::fs::write(dir.join(format!("{}.{ext}", r.section)), body)?;
        for t in r.tables.iter().filter(|t| t.primary) {
            let (ext, body) = match format {
                Format::Markdown => ("md", t.table.to_markdown()),
                _ => ("csv", t.table.to_csv()),
            };
            std::fs::write(dir.join(format!("{}.{ext}", t.table.id)), body)?;
        }
    }
    Ok(())
}
