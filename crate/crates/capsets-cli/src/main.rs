//! Command-line front end for the capsets library: verification of
//! certificate files, construction of the bundled certificates, exact
//! size accounting and bound evaluation, and the SAT encode/decode
//! workflow.
//!
//! Exit codes are part of the contract: 0 means verified or succeeded,
//! 1 means a verification ran to completion and failed (the witness is
//! always printed), 2 means the request itself was unusable (unknown
//! flags, unreadable or malformed files, out-of-domain parameters).

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use capsets::bounds::{self, BoundReport};
use capsets::construction::{build_edel6, extended_product, ExtendableTriple, ProductOutcome};
use capsets::meta::is_meta_extendable;
use capsets::patterns::{
    build_chain, build_low_weight, is_admissible, is_constant_weight, is_recursively_admissible,
    PatternSet,
};
use capsets::plan::BuildPlan;
use capsets::satgen::{self, ConstraintProfile, OracleOutcome, SolverResponse};
use capsets::{is_cap_set, is_extendable, Budget, CapVerdict, Error, ExtendVerdict, VectorSet};

#[derive(Parser)]
#[command(
    name = "capsets",
    version,
    about = "Build, verify and bound cap-set constructions over GF(3)",
    propagate_version = true
)]
struct Cli {
    /// Report format (verdicts and tables).
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Reserved for future randomized features; every current algorithm
    /// is deterministic and ignores it.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify a certificate against its defining property.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Construct a bundled certificate.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Extended product of an admissible set with an extendable collection.
    Extend(ExtendArgs),
    /// Exact sizes and high-precision lower bounds.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// CNF generation and model decoding for admissible-set search.
    Sat {
        #[command(subcommand)]
        cmd: SatCmd,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Check that a file of vectors is a cap set.
    Cap { file: PathBuf },
    /// Check that a file of patterns is admissible (optionally more).
    Admissible {
        file: PathBuf,
        /// Additionally require recursive admissibility.
        #[arg(long)]
        recursive: bool,
        /// Additionally require a complete constant-weight set I(m,w).
        #[arg(long, num_args = 2, value_names = ["M", "W"])]
        constant_weight: Option<Vec<usize>>,
    },
    /// Check that three cap-set files form an extendable collection.
    Extendable {
        a0: PathBuf,
        a1: PathBuf,
        a2: PathBuf,
    },
    /// Check that three admissible-set files form a meta-extendable
    /// collection.
    Meta {
        s0: PathBuf,
        s1: PathBuf,
        s2: PathBuf,
    },
}

#[derive(Subcommand)]
enum BuildCmd {
    /// The extendable collection in GF(3)^6 seeded by a (6,3,2)-design.
    ///
    /// With -o PREFIX, writes PREFIX.a0, PREFIX.a1 and PREFIX.a2.
    Edel6 {
        #[arg(short, long, value_name = "PREFIX")]
        output: Option<PathBuf>,
    },
    /// The recursively admissible chain of length m and weight m-1.
    Chain {
        m: usize,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// A complete constant-weight admissible set of weight 2 or 3, by
    /// exhaustive search.
    Lowweight {
        m: usize,
        w: usize,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ExtendArgs {
    /// Admissible-set file steering the product.
    file: PathBuf,
    /// The collection: `edel6`, or three cap-set files A0 A1 A2.
    #[arg(long, num_args = 1..=3, required = true, value_name = "TRIPLE")]
    triple: Vec<String>,
    /// Write the materialized cap set here.
    #[arg(short, long, value_name = "FILE", conflicts_with = "count_only")]
    output: Option<PathBuf>,
    /// Report dimension and exact size only; never materialize.
    #[arg(long)]
    count_only: bool,
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Evaluate the bound certified by a build plan.
    Plan {
        planfile: PathBuf,
        /// Significant digits of the printed bound (truncated).
        #[arg(long, default_value_t = bounds::DEFAULT_DIGITS)]
        digits: usize,
        /// Append the full decimal cap-set size to each row.
        #[arg(long)]
        exact: bool,
    },
    /// Reproduce the bound tables for the bundled constructions.
    Tables {
        #[arg(long)]
        exact: bool,
    },
    /// Asymptotic ceiling of the construction over one collection:
    /// optimal weight fraction and (a0+a1)^(1/n).
    Limit {
        n: usize,
        a0: u64,
        a1: u64,
        #[arg(long, default_value_t = bounds::DEFAULT_DIGITS)]
        digits: usize,
    },
}

#[derive(Subcommand)]
enum SatCmd {
    /// Emit the DIMACS instance "I(m,w) exists".
    Encode {
        m: usize,
        w: usize,
        /// Symmetry-breaking profile: none, i11_7, i11_6 or i10_6.
        #[arg(long, default_value = "none")]
        profile: String,
        #[arg(short, long, value_name = "FILE", required = true)]
        output: PathBuf,
    },
    /// Decode a solver model into a verified admissible-set file.
    Decode {
        /// Solver output: SAT-competition `s`/`v` lines, or a bare
        /// literal list.
        model_file: PathBuf,
        /// The instance the model solves.
        #[arg(long, num_args = 2, value_names = ["M", "W"], required = true)]
        instance: Vec<usize>,
        #[arg(short, long, value_name = "FILE", required = true)]
        output: PathBuf,
    },
    /// Solver-free existence check by exhaustive backtracking.
    Oracle { m: usize, w: usize },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 0 for --help/--version and 2 for usage errors.
        Err(e) => e.exit(),
    };
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: &Cli) -> capsets::Result<i32> {
    match &cli.cmd {
        Cmd::Verify(v) => run_verify(v, cli.format),
        Cmd::Build(b) => run_build(b, cli.format),
        Cmd::Extend(e) => run_extend(e, cli.format),
        Cmd::Bound(b) => run_bound(b, cli.format),
        Cmd::Sat { cmd } => run_sat(cmd, cli.format),
    }
}

/// Prints a verdict in the selected format and returns the exit code.
/// The witness is always part of the output when the verdict fails.
fn report_verdict(format: Format, pass: bool, detail: &str, witness: Option<&str>) -> i32 {
    match format {
        Format::Human => {
            if pass {
                println!("PASS: {detail}");
            } else {
                println!("FAIL: {}", witness.unwrap_or(detail));
            }
        }
        Format::Tsv => {
            if pass {
                println!("pass\t{detail}");
            } else {
                println!("fail\t{}", witness.unwrap_or(detail));
            }
        }
        Format::Json => {
            let payload = if pass {
                serde_json::json!({ "verdict": "pass", "detail": detail })
            } else {
                serde_json::json!({ "verdict": "fail", "witness": witness.unwrap_or(detail) })
            };
            println!("{payload}");
        }
    }
    if pass {
        0
    } else {
        1
    }
}

/// Prefixes `path` onto any error from `op`, so "no such file" names
/// the file.
fn at_path<T>(path: &Path, op: impl FnOnce() -> capsets::Result<T>) -> capsets::Result<T> {
    op().map_err(|e| Error::Domain(format!("{}: {e}", path.display())))
}

fn read_set(path: &Path) -> capsets::Result<VectorSet> {
    at_path(path, || Ok(VectorSet::read_file(path)?.0))
}

fn run_verify(cmd: &VerifyCmd, format: Format) -> capsets::Result<i32> {
    match cmd {
        VerifyCmd::Cap { file } => {
            let set = read_set(file)?;
            match is_cap_set(&set) {
                CapVerdict::Pass => Ok(report_verdict(
                    format,
                    true,
                    &format!("cap set of size {} in GF(3)^{}", set.len(), set.dim()),
                    None,
                )),
                CapVerdict::Counterexample { x, y, z } => Ok(report_verdict(
                    format,
                    false,
                    "zero-sum triple",
                    Some(&format!("{x}+{y}+{z}=0")),
                )),
            }
        }
        VerifyCmd::Admissible {
            file,
            recursive,
            constant_weight,
        } => {
            let set = read_set(file)?;
            let s = PatternSet::new(set);
            if let Some(mw) = constant_weight {
                let (m, w) = (mw[0], mw[1]);
                let verdict = is_constant_weight(&s, m, w);
                return Ok(report_verdict(
                    format,
                    verdict.is_pass(),
                    &format!("complete constant-weight admissible set I({m},{w})"),
                    Some(&verdict.describe()),
                ));
            }
            if *recursive {
                let verdict = is_recursively_admissible(&s);
                return Ok(report_verdict(
                    format,
                    verdict.is_pass(),
                    &format!("recursively admissible set of size {}", s.len()),
                    Some(&verdict.describe()),
                ));
            }
            let verdict = is_admissible(&s);
            Ok(report_verdict(
                format,
                verdict.is_pass(),
                &format!("admissible set of size {}", s.len()),
                Some(&verdict.describe()),
            ))
        }
        VerifyCmd::Extendable { a0, a1, a2 } => {
            let (a0, a1, a2) = (read_set(a0)?, read_set(a1)?, read_set(a2)?);
            let verdict = is_extendable(&a0, &a1, &a2)?;
            let witness = describe_extend(&verdict);
            Ok(report_verdict(
                format,
                verdict.is_pass(),
                &format!(
                    "extendable collection in GF(3)^{} with sizes {}/{}/{}",
                    a0.dim(),
                    a0.len(),
                    a1.len(),
                    a2.len()
                ),
                Some(&witness),
            ))
        }
        VerifyCmd::Meta { s0, s1, s2 } => {
            let s0 = PatternSet::new(read_set(s0)?);
            let s1 = PatternSet::new(read_set(s1)?);
            let s2 = PatternSet::new(read_set(s2)?);
            let verdict = is_meta_extendable(&s0, &s1, &s2)?;
            Ok(report_verdict(
                format,
                verdict.is_pass(),
                &format!(
                    "meta-extendable collection of length {} with sizes {}/{}/{}",
                    s0.m(),
                    s0.len(),
                    s1.len(),
                    s2.len()
                ),
                Some(&verdict.describe()),
            ))
        }
    }
}

fn describe_extend(v: &ExtendVerdict) -> String {
    match v {
        ExtendVerdict::Pass => "pass".into(),
        ExtendVerdict::NotCap { which, verdict } => {
            let name = ["A0", "A1", "A2"][*which];
            match verdict {
                CapVerdict::Counterexample { x, y, z } => {
                    format!("{name} is not a cap set: {x}+{y}+{z}=0")
                }
                CapVerdict::Pass => unreachable!("NotCap always carries a counterexample"),
            }
        }
        ExtendVerdict::Condition1 { x, y, z } => {
            format!("condition 1 fails: {x}+{y}+{z}=0 with x,y in A0, z in A1 u A2")
        }
        ExtendVerdict::Condition2 { x, y, z } => {
            format!("condition 2 fails: {x}+{y}+{z}=0 with x in A0, y in A1, z in A2")
        }
    }
}

/// Writes or prints a built pattern set, with the admissible header.
fn deliver_patterns(s: &PatternSet, output: Option<&Path>, what: &str) -> capsets::Result<i32> {
    match output {
        Some(path) => {
            s.set().write_file(path, true)?;
            println!("wrote {what} ({} vectors) to {}", s.len(), path.display());
        }
        None => print!("{}", s.set().to_file_string(true)),
    }
    Ok(0)
}

fn run_build(cmd: &BuildCmd, _format: Format) -> capsets::Result<i32> {
    match cmd {
        BuildCmd::Edel6 { output } => {
            let triple = build_edel6();
            match output {
                Some(prefix) => {
                    let paths = edel6_paths(prefix);
                    triple.a0().write_file(&paths[0], false)?;
                    triple.a1().write_file(&paths[1], false)?;
                    triple.a2().write_file(&paths[2], false)?;
                    println!(
                        "wrote extendable collection (sizes {}/{}/{}) to {}, {}, {}",
                        triple.a0().len(),
                        triple.a1().len(),
                        triple.a2().len(),
                        paths[0].display(),
                        paths[1].display(),
                        paths[2].display(),
                    );
                }
                None => {
                    for (name, set) in [
                        ("A0", triple.a0()),
                        ("A1", triple.a1()),
                        ("A2", triple.a2()),
                    ] {
                        println!("# {name} ({} vectors)", set.len());
                        print!("{}", set.to_file_string(false));
                    }
                }
            }
            Ok(0)
        }
        BuildCmd::Chain { m, output } => {
            let s = build_chain(*m)?;
            deliver_patterns(&s, output.as_deref(), &format!("chain({m})"))
        }
        BuildCmd::Lowweight { m, w, output } => {
            let s = build_low_weight(*m, *w)?;
            deliver_patterns(&s, output.as_deref(), &format!("I({m},{w})"))
        }
    }
}

/// File names used by `build edel6 -o PREFIX` and `extend --triple`.
fn edel6_paths(prefix: &Path) -> [PathBuf; 3] {
    let base = prefix.as_os_str().to_string_lossy();
    [
        PathBuf::from(format!("{base}.a0")),
        PathBuf::from(format!("{base}.a1")),
        PathBuf::from(format!("{base}.a2")),
    ]
}

fn load_triple(spec: &[String]) -> capsets::Result<ExtendableTriple> {
    match spec {
        [kw] if kw == "edel6" => Ok(build_edel6()),
        [a0, a1, a2] => ExtendableTriple::certify(
            read_set(Path::new(a0))?,
            read_set(Path::new(a1))?,
            read_set(Path::new(a2))?,
        ),
        _ => Err(Error::Domain(
            "--triple takes `edel6` or three cap-set files".into(),
        )),
    }
}

fn run_extend(args: &ExtendArgs, format: Format) -> capsets::Result<i32> {
    let s = PatternSet::new(read_set(&args.file)?);
    let triple = load_triple(&args.triple)?;
    if args.count_only {
        let verdict = is_admissible(&s);
        if !verdict.is_pass() {
            return Err(Error::NotAdmissible(verdict.describe()));
        }
        let size = capsets::construction::extended_product_count(&s, &triple);
        let dim = triple.dim() * s.m();
        emit_count(format, "extended-product", dim, &size.to_string());
        return Ok(0);
    }
    match extended_product(&s, &triple, Budget::from_env())? {
        ProductOutcome::Materialized(set) => match &args.output {
            Some(path) => {
                set.write_file(path, false)?;
                println!(
                    "wrote cap set of size {} in GF(3)^{} to {}",
                    set.len(),
                    set.dim(),
                    path.display()
                );
                Ok(0)
            }
            None => {
                print!("{}", set.to_file_string(false));
                Ok(0)
            }
        },
        ProductOutcome::CountOnly { dim, size } => {
            if args.output.is_some() {
                return Err(Error::BudgetExceeded {
                    count: size,
                    budget: Budget::from_env().0,
                });
            }
            emit_count(format, "extended-product", dim, &size.to_string());
            Ok(0)
        }
    }
}

fn emit_count(format: Format, what: &str, dim: usize, size: &str) {
    match format {
        Format::Human => println!("{what}: dimension {dim}, exact size {size}"),
        Format::Tsv => println!("{what}\t{dim}\t{size}"),
        Format::Json => println!(
            "{}",
            serde_json::json!({ "construction": what, "dimension": dim, "size": size })
        ),
    }
}

/// One `bound` table row: plan, dimension, number of decimal digits of
/// the exact size, bound (and optionally the full size).
fn emit_bound_row(format: Format, report: &BoundReport, exact: bool) {
    let digits = report.size.to_string();
    match format {
        Format::Human | Format::Tsv => {
            let mut line = format!(
                "{}\t{}\t{}\t{}",
                report.provenance,
                report.dimension,
                digits.len(),
                report.bound
            );
            if exact {
                line.push('\t');
                line.push_str(&digits);
            }
            println!("{line}");
        }
        Format::Json => {
            let mut obj = serde_json::json!({
                "plan": report.provenance,
                "dimension": report.dimension,
                "size_digits": digits.len(),
                "bound": report.bound,
            });
            if exact {
                obj["size"] = serde_json::Value::String(digits);
            }
            println!("{obj}");
        }
    }
}

fn run_bound(cmd: &BoundCmd, format: Format) -> capsets::Result<i32> {
    match cmd {
        BoundCmd::Plan {
            planfile,
            digits,
            exact,
        } => {
            let plan = at_path(planfile, || BuildPlan::read_file(planfile))?;
            plan.validate()?;
            let report = bounds::bound_for_plan(&plan, *digits)?;
            emit_bound_row(format, &report, *exact);
            Ok(0)
        }
        BoundCmd::Tables { exact } => {
            for row in bounds::reproduce_tables()? {
                let mut report = row.report;
                if row.hypothetical {
                    report.provenance = format!("{} [hypothetical]", report.provenance);
                }
                emit_bound_row(format, &report, *exact);
            }
            Ok(0)
        }
        BoundCmd::Limit { n, a0, a1, digits } => {
            let report = bounds::asymptotic_limit(*n, *a0, *a1, *digits)?;
            let (p, q) = report.alpha;
            match format {
                Format::Human => {
                    println!("optimal weight fraction: {p}/{q}");
                    println!("limit: {}", report.limit);
                }
                Format::Tsv => println!("{p}/{q}\t{}", report.limit),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "alpha": format!("{p}/{q}"),
                        "limit": report.limit,
                    })
                ),
            }
            Ok(0)
        }
    }
}

fn run_sat(cmd: &SatCmd, format: Format) -> capsets::Result<i32> {
    match cmd {
        SatCmd::Encode {
            m,
            w,
            profile,
            output,
        } => {
            let profile: ConstraintProfile = profile.parse()?;
            let (f, map) = satgen::encode(*m, *w, profile)?;
            std::fs::write(output, satgen::emit_dimacs(&f, &map))?;
            match format {
                Format::Human => println!(
                    "wrote instance ({m},{w}) profile {profile}: {} variables, {} clauses to {}",
                    f.num_vars(),
                    f.num_clauses(),
                    output.display()
                ),
                Format::Tsv => {
                    println!("{m}\t{w}\t{profile}\t{}\t{}", f.num_vars(), f.num_clauses())
                }
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "m": m, "w": w, "profile": profile.to_string(),
                        "variables": f.num_vars(), "clauses": f.num_clauses(),
                    })
                ),
            }
            Ok(0)
        }
        SatCmd::Decode {
            model_file,
            instance,
            output,
        } => {
            let (m, w) = (instance[0], instance[1]);
            let text = at_path(model_file, || Ok(std::fs::read_to_string(model_file)?))?;
            let model = match satgen::parse_solver_output(&text)? {
                SolverResponse::Satisfiable(model) => model,
                SolverResponse::Unsatisfiable => {
                    return Err(Error::Domain(
                        "solver reported UNSATISFIABLE; there is no model to decode".into(),
                    ));
                }
            };
            let (_, map) = satgen::encode(m, w, ConstraintProfile::None)?;
            match satgen::decode_model(&model, &map) {
                Ok(s) => {
                    s.set().write_file(output, true)?;
                    Ok(report_verdict(
                        format,
                        true,
                        &format!(
                            "decoded and verified I({m},{w}) ({} vectors), written to {}",
                            s.len(),
                            output.display()
                        ),
                        None,
                    ))
                }
                Err(Error::EncoderBug(msg)) => Ok(report_verdict(format, false, "", Some(&msg))),
                Err(e) => Err(e),
            }
        }
        SatCmd::Oracle { m, w } => match satgen::brute_force_admissible(*m, *w)? {
            OracleOutcome::Found(s) => Ok(report_verdict(
                format,
                true,
                &format!("I({},{}) exists ({} vectors)", m, w, s.len()),
                None,
            )),
            OracleOutcome::Nonexistent => Ok(report_verdict(
                format,
                false,
                "",
                Some(&format!("search space exhausted: no I({m},{w}) exists")),
            )),
            OracleOutcome::Inconclusive => Err(Error::Domain(format!(
                "oracle node budget exhausted on ({m},{w}); the instance is too large \
                 for the solver-free oracle"
            ))),
        },
    }
}
