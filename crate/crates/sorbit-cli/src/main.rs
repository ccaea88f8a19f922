//! Command-line front end: root systems, Weyl groups, divided differences,
//! the coinvariant algebra, Morse data, and the verification suite.
//!
//! Exit codes: 0 on success (all requested checks pass), 1 when a
//! verification fails, 2 on usage or input errors, 3 on internal consistency
//! failures.

mod context;
mod output;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use sorbit::rat::format_rat;
use sorbit::{
    perfectness_witness, verify_coinvariant_agreement, Coinvariants, DivDiff, Error,
    MorseProfile, OrbitCounting, Polynomial, Result,
};

use context::{parse_indices, Context, GlobalOpts};
use output::{
    emit_json, int_matrix, int_str, rat_matrix, rat_vec, roots_value, series_text, system_value,
    u64_vec, usize_vec, word_vec, OutputFormat,
};

#[derive(Parser)]
#[command(
    name = "sorbit",
    version,
    about = "Exact cohomology of Weyl-group orbits: root systems, divided differences, \
             coinvariant algebras, and Morse censuses, all over exact rationals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Subcommand)]
enum Command {
    /// Print the root system: Cartan and Gram matrices, positive roots
    Roots,
    /// Enumerate the Weyl group: order, length census, longest element
    Weyl,
    /// Divided-difference operators
    #[command(subcommand)]
    Divdiff(DivdiffCmd),
    /// The coinvariant algebra of the Weyl group
    #[command(subcommand)]
    Coinv(CoinvCmd),
    /// Morse data of the orbit of the base point
    #[command(subcommand)]
    Morse(MorseCmd),
    /// Verification suites
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum DivdiffCmd {
    /// Apply the operator of a word to a polynomial
    Apply {
        /// 1-based simple-reflection indices, e.g. 1,2,1
        #[arg(long)]
        word: String,
        /// Polynomial in g1..gl, e.g. "g1^2*g2 + 1/2*g2^3"
        #[arg(long)]
        poly: String,
    },
}

#[derive(Subcommand)]
enum CoinvCmd {
    /// Graded dimensions of the coinvariant algebra (three-way checked)
    Series,
    /// Harmonic basis of one degree
    Basis {
        #[arg(long)]
        degree: usize,
    },
    /// Invariant series of a parabolic stabilizer
    Invariants {
        /// 1-based indices of the vanishing simple-root coordinates, e.g. 1,3
        #[arg(long, value_name = "CSV", default_value = "")]
        stabilizer: String,
    },
}

#[derive(Subcommand)]
enum MorseCmd {
    /// Orbit points, indices and Betti numbers of the base point
    Betti {
        /// Census counts every group element (stabilizer repetition) instead
        /// of every distinct orbit point
        #[arg(long)]
        repeat_stabilizer: bool,
    },
    /// Cross-check the Morse census against the coinvariant series
    Verify,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run the full fixed-order verification suite
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Inconsistency(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let ctx = cli.opts.build()?;
    let format = cli.opts.format;
    match &cli.command {
        Command::Roots => cmd_roots(&ctx, format),
        Command::Weyl => cmd_weyl(&ctx, format),
        Command::Divdiff(DivdiffCmd::Apply { word, poly }) => {
            cmd_divdiff_apply(&ctx, format, word, poly)
        }
        Command::Coinv(sub) => cmd_coinv(&ctx, format, sub),
        Command::Morse(sub) => cmd_morse(&cli.opts, &ctx, format, sub),
        Command::Verify(VerifyCmd::All) => cmd_verify_all(&cli.opts, &ctx, format),
    }
}

fn cmd_roots(ctx: &Context, format: OutputFormat) -> Result<ExitCode> {
    let rs = &ctx.rs;
    match format {
        OutputFormat::Json => {
            let mults = rs
                .multiplicities()
                .map(|t| u64_vec(&t.values().iter().map(|&m| m as u64).collect::<Vec<_>>()));
            emit_json(&json!({
                "system": system_value(rs),
                "cartan": int_matrix(&sorbit::linalg::IntMatrix::from_rows(
                    rs.cartan().to_vec()
                )),
                "gram": rat_matrix(rs.gram()),
                "degrees": rs.degrees().map(usize_vec),
                "positive_roots": roots_value(rs.positive_roots()),
                "multiplicities": mults,
            }));
        }
        OutputFormat::Text => {
            println!(
                "root system {} (rank {}, {} positive roots, {})",
                rs.name(),
                rs.rank(),
                rs.num_positive_roots(),
                if rs.is_reduced() { "reduced" } else { "non-reduced" }
            );
            println!("cartan:");
            for row in rs.cartan() {
                println!("  {row:?}");
            }
            println!("gram:");
            for row in rs.gram() {
                let cells: Vec<String> = row.iter().map(format_rat).collect();
                println!("  [{}]", cells.join(", "));
            }
            if let Some(d) = rs.degrees() {
                println!(
                    "degrees: {}",
                    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
                );
            }
            println!("positive roots:");
            for (i, a) in rs.positive_roots().iter().enumerate() {
                let mult = rs
                    .multiplicities()
                    .map(|t| format!("  m = {}", t.of(i)))
                    .unwrap_or_default();
                println!("  {a:?}{mult}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_weyl(ctx: &Context, format: OutputFormat) -> Result<ExitCode> {
    let weyl = &ctx.weyl;
    let census = weyl.length_census();
    let w0 = weyl.longest_element();
    match format {
        OutputFormat::Json => emit_json(&json!({
            "system": system_value(&ctx.rs),
            "order": int_str(weyl.order()),
            "length_census": u64_vec(&census),
            "longest": {
                "length": int_str(w0.length()),
                "word": word_vec(w0.word()),
                "reduced_words": int_str(weyl.reduced_word_count(weyl.longest_index())),
            },
        })),
        OutputFormat::Text => {
            println!("Weyl group of {}: order {}", ctx.rs.name(), weyl.order());
            println!("length census: {}", series_text(&census));
            println!(
                "longest element: length {}, word {:?}, {} reduced words",
                w0.length(),
                w0.word().iter().map(|g| g + 1).collect::<Vec<_>>(),
                weyl.reduced_word_count(weyl.longest_index())
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_divdiff_apply(
    ctx: &Context,
    format: OutputFormat,
    word: &str,
    poly: &str,
) -> Result<ExitCode> {
    let rs = &ctx.rs;
    let word = parse_indices(word, rs.rank(), "generator")?;
    let f = Polynomial::parse(poly, rs.rank())?;
    let dd = DivDiff::new(rs);
    let result = dd.delta_word(&word, &f)?;
    match format {
        OutputFormat::Json => emit_json(&json!({
            "system": system_value(rs),
            "word": word_vec(&word),
            "input": f.to_string(),
            "result": result.to_string(),
        })),
        OutputFormat::Text => println!("{result}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_coinv(ctx: &Context, format: OutputFormat, sub: &CoinvCmd) -> Result<ExitCode> {
    let rs = &ctx.rs;
    let coinv = Coinvariants::with_cap(rs, &ctx.weyl, ctx.cap);
    match sub {
        CoinvCmd::Series => {
            let census = coinv.poincare_series()?;
            match format {
                OutputFormat::Json => emit_json(&json!({
                    "system": system_value(rs),
                    "series": u64_vec(&census),
                    "total": int_str(census.iter().sum::<u64>()),
                })),
                OutputFormat::Text => println!("{}", series_text(&census)),
            }
        }
        CoinvCmd::Basis { degree } => {
            let n = rs.num_positive_roots();
            if *degree > n {
                return Err(Error::InvalidInput(format!(
                    "--degree {degree} exceeds the top degree {n}"
                )));
            }
            let basis = coinv.harmonic_basis(*degree)?;
            let members = ctx.weyl.elements_of_length(n - degree);
            match format {
                OutputFormat::Json => {
                    let classes: Vec<_> = members
                        .iter()
                        .zip(basis.iter())
                        .map(|(&i, p)| {
                            json!({
                                "word": word_vec(ctx.weyl.element(i).word()),
                                "polynomial": p.to_string(),
                            })
                        })
                        .collect();
                    emit_json(&json!({
                        "system": system_value(rs),
                        "degree": int_str(*degree),
                        "classes": classes,
                    }));
                }
                OutputFormat::Text => {
                    for (&i, p) in members.iter().zip(basis.iter()) {
                        let word: Vec<usize> =
                            ctx.weyl.element(i).word().iter().map(|g| g + 1).collect();
                        println!("{word:?}: {p}");
                    }
                }
            }
        }
        CoinvCmd::Invariants { stabilizer } => {
            let gens = parse_indices(stabilizer, rs.rank(), "stabilizer")?;
            let sub = ctx.weyl.parabolic(&gens);
            let series = coinv.invariant_quotient_series(&sub)?;
            match format {
                OutputFormat::Json => emit_json(&json!({
                    "system": system_value(rs),
                    "stabilizer_generators": word_vec(sub.generator_indices()),
                    "stabilizer_order": int_str(sub.order()),
                    "series": u64_vec(&series),
                    "total": int_str(series.iter().sum::<u64>()),
                })),
                OutputFormat::Text => {
                    println!(
                        "stabilizer order {}; invariant series {}; total {}",
                        sub.order(),
                        series_text(&series),
                        series.iter().sum::<u64>()
                    );
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_morse(
    opts: &GlobalOpts,
    ctx: &Context,
    format: OutputFormat,
    sub: &MorseCmd,
) -> Result<ExitCode> {
    let rs = &ctx.rs;
    let x0 = opts.x0(rs.rank())?;
    match sub {
        MorseCmd::Betti { repeat_stabilizer } => {
            let counting = if *repeat_stabilizer {
                OrbitCounting::WithStabilizerRepetition
            } else {
                OrbitCounting::Distinct
            };
            let profile = MorseProfile::compute_with(rs, &ctx.weyl, &x0, counting)?;
            let indices: Vec<u64> = profile.points().iter().map(|p| p.index as u64).collect();
            match format {
                OutputFormat::Json => {
                    let points: Vec<_> = profile
                        .points()
                        .iter()
                        .map(|p| {
                            json!({
                                "values": rat_vec(&p.values),
                                "index": int_str(p.index),
                                "representative_word":
                                    word_vec(ctx.weyl.element(p.representative).word()),
                            })
                        })
                        .collect();
                    emit_json(&json!({
                        "system": system_value(rs),
                        "x0": rat_vec(&x0),
                        "orbit_size": int_str(profile.orbit_size()),
                        "stabilizer_order": int_str(profile.stabilizer_order()),
                        "points": points,
                        "indices": u64_vec(&indices),
                        "betti": u64_vec(profile.betti()),
                        "total": int_str(profile.total()),
                    }));
                }
                OutputFormat::Text => {
                    println!(
                        "orbit of {:?}: {} points, stabilizer order {}",
                        x0.iter().map(format_rat).collect::<Vec<_>>(),
                        profile.orbit_size(),
                        profile.stabilizer_order()
                    );
                    println!("betti: {}", series_text(profile.betti()));
                    println!("total: {}", profile.total());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        MorseCmd::Verify => {
            let coinv = Coinvariants::with_cap(rs, &ctx.weyl, ctx.cap);
            let report = verify_coinvariant_agreement(rs, &ctx.weyl, &coinv, &x0)?;
            let pass = report.pass();
            // the perfectness scan rides along when the hypothesis applies
            let perfectness = perfectness_witness(rs, &ctx.weyl, &x0)?;
            let indices: Vec<u64> = {
                let profile = MorseProfile::compute(rs, &ctx.weyl, &x0)?;
                profile.points().iter().map(|p| p.index as u64).collect()
            };
            match format {
                OutputFormat::Json => emit_json(&json!({
                    "system": system_value(rs),
                    "x0": rat_vec(&x0),
                    "orbit_size": int_str(report.orbit_size),
                    "stabilizer_order": int_str(report.stabilizer_order),
                    "indices": u64_vec(&indices),
                    "betti": u64_vec(&report.morse_series),
                    "coinvariant_series": u64_vec(&report.stretched_series),
                    "quotient_series": u64_vec(&report.quotient_series),
                    "perfectness_violations": int_str(perfectness.violations.len()),
                    "pass": pass && perfectness.pass(),
                })),
                OutputFormat::Text => {
                    println!("orbit size: {}", report.orbit_size);
                    println!("morse census:       {}", series_text(&report.morse_series));
                    println!(
                        "coinvariant series: {}",
                        series_text(&report.stretched_series)
                    );
                    println!(
                        "perfectness violations: {}",
                        perfectness.violations.len()
                    );
                    println!("pass: {}", pass && perfectness.pass());
                }
            }
            Ok(if pass && perfectness.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn cmd_verify_all(opts: &GlobalOpts, ctx: &Context, format: OutputFormat) -> Result<ExitCode> {
    let x0 = opts.x0(ctx.rs.rank())?;
    let report = verify::run_all(ctx, &x0)?;
    match format {
        OutputFormat::Json => {
            let mut value = report.to_json(ctx, &x0);
            value["summary"] = verify::checks_summary(&report);
            emit_json(&value);
        }
        OutputFormat::Text => report.print_text(),
    }
    Ok(if report.overall_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
