//! `keyl`: command-line front end for the partition, tableau, Clebsch-Gordan and moment verifiers.
//!
//! Exit codes: 0 success, 1 an identity check failed, 2 usage or input error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use keyl::clebsch_gordan::{cg_insert, one_step, verify_cg_unitarity};
use keyl::dense::verify_dense;
use keyl::moments::{
    verify_block_equalities, verify_complement_cg, verify_diagonal_expression, verify_first_moment, verify_main_lemma,
    verify_mcorr_decomposition, verify_p2_star, verify_partial_sums, verify_row_height, verify_variance,
    variance_bound_check,
    BLOCK_TOLERANCE,
};
use keyl::partitions::{donate, enumerate_partitions, staircase, staircase_r};
use keyl::report::RationalJson;
use keyl::rsk::{histogram, sample_shapes, tv_distance};
use keyl::schur_stats::{dim_hook_content, dim_sp, dim_weyl, schur_poly, verify_dimensions, wss_distribution};
use keyl::tableaux::{enumerate_ssyt, enumerate_syt};
use keyl::yor::{perm_matrix, Permutation};
use keyl::{Partition, Rational, Report, SpectrumQ, Ssyt};
use serde_json::{json, Value};

const SCHEMA: &str = "1";

#[derive(Parser, Debug)]
#[command(name = "keyl", version, about = "Exact verifiers for the debiased Keyl estimator")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Master seed for all randomness.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Residual threshold for floating-point checks (main-lemma 2×2 blocks, dense checks, sampler TV).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Size {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List partitions of n with at most d rows, or the SSYT/SYT of a shape.
    Enumerate {
        #[arg(value_enum, default_value_t = EnumKind::Partitions)]
        kind: EnumKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Block decomposition of a partition.
    Blocks {
        #[arg(long)]
        lambda: String,
    },
    /// Box donation λ ↦ λ↑.
    Donate {
        #[arg(long)]
        lambda: String,
    },
    /// Staircase donation, or its rank-r variant with --rank.
    Staircase {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// dim S_λ and dim V_λ^d (Weyl and hook-content).
    Dims {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Exact s_λ(α).
    SchurPoly {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        alpha: String,
    },
    /// Exact weak Schur sampling distribution.
    Wss {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
    },
    /// RSK sampling histogram and TV distance to the exact distribution.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
    },
    /// Clebsch-Gordan coefficients.
    Cg {
        #[command(subcommand)]
        what: CgCommand,
    },
    /// Young's orthogonal form κ_λ(π).
    Yor {
        #[arg(long)]
        lambda: String,
        /// Cycle notation such as "(1 2)(3 4)" or one-line "2,1,3".
        #[arg(long)]
        perm: String,
    },
    /// Run one identity suite over all shapes up to (n, d).
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        #[command(flatten)]
        size: Size,
        /// Spectrum for `variance`, e.g. "1/2,1/3,1/6"; random spectra when absent.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Dense-matrix checks.
    Dense {
        #[command(subcommand)]
        what: DenseCommand,
    },
    /// Every suite at its acceptance size.
    All,
}

#[derive(Subcommand, Debug)]
enum CgCommand {
    /// Insert letter k into T, listing every output tableau and coefficient.
    Insert {
        /// Rows as JSON, e.g. "[[1,2],[2],[3]]".
        #[arg(long)]
        tableau: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
    },
    /// c^λ_{k→i} for the highest-weight tableau of λ.
    OneStep {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        i: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DenseCommand {
    /// Schur transform unitarity, Schur-Weyl blocks, Jucys-Murphy and unbiased trace.
    SchurCheck {
        #[command(flatten)]
        size: Size,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EnumKind {
    Partitions,
    Ssyt,
    Syt,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VerifyKind {
    Dimensions,
    CgUnitarity,
    FirstMoment,
    PartialSums,
    DiagonalExpression,
    MainLemma,
    BlockEqualities,
    #[value(name = "mcorr-decomp")]
    McorrDecomposition,
    Variance,
    Statistics,
    #[value(name = "complement-cg")]
    Complement,
}

impl VerifyKind {
    /// Largest (n, d) accepted.
    fn cap(self) -> (usize, usize) {
        match self {
            VerifyKind::Dimensions => (12, 8),
            VerifyKind::CgUnitarity => (7, 5),
            VerifyKind::FirstMoment => (10, 6),
            VerifyKind::PartialSums => (8, 5),
            VerifyKind::DiagonalExpression => (8, 5),
            VerifyKind::MainLemma => (6, 5),
            VerifyKind::BlockEqualities => (10, 6),
            VerifyKind::McorrDecomposition => (20, 10),
            VerifyKind::Variance => (8, 4),
            VerifyKind::Statistics => (10, 5),
            VerifyKind::Complement => (5, 4),
        }
    }

    /// The size used by `all`.
    fn acceptance_size(self) -> (usize, usize) {
        match self {
            VerifyKind::Dimensions => (8, 5),
            VerifyKind::CgUnitarity => (5, 4),
            VerifyKind::FirstMoment => (8, 5),
            VerifyKind::PartialSums => (6, 4),
            VerifyKind::DiagonalExpression => (6, 4),
            VerifyKind::MainLemma => (5, 4),
            VerifyKind::BlockEqualities => (6, 4),
            VerifyKind::McorrDecomposition => (8, 5),
            VerifyKind::Variance => (6, 3),
            VerifyKind::Statistics => (8, 4),
            VerifyKind::Complement => (4, 3),
        }
    }
}

/// Usage-level failure: exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn input<T>(r: keyl::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| usage(e.to_string()))
}

fn parse_lambda(text: &str, d: Option<usize>) -> anyhow::Result<Partition> {
    let p: Partition = input(text.parse())?;
    match d {
        Some(d) => input(p.with_d(d)),
        None => Ok(p),
    }
}

fn rational(q: &Rational) -> Value {
    serde_json::to_value(RationalJson::from(q)).expect("plain strings")
}

/// Result of a command: text lines, JSON body, and whether every check passed.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn plain(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }

    fn report(r: &Report) -> Self {
        let mut text = r.summary();
        for rec in &r.records {
            text.push_str(&format!("\n  {}: lhs={} rhs={} residual={:e}", rec.index, rec.lhs, rec.rhs, rec.residual));
        }
        Output { text, json: serde_json::to_value(r).expect("report serializes"), ok: r.passed }
    }
}

fn verify(
    kind: VerifyKind,
    n: usize,
    d: usize,
    alpha: Option<&str>,
    seed: u64,
    tolerance: Option<f64>,
) -> anyhow::Result<Report> {
    let (max_n, max_d) = kind.cap();
    if n > max_n || d > max_d || d == 0 {
        return Err(usage(format!(
            "verify {} supports 1 ≤ d ≤ {max_d} and n ≤ {max_n}; got n={n}, d={d}",
            kind.to_possible_value().expect("no skipped variants").get_name()
        )));
    }
    Ok(match kind {
        VerifyKind::Dimensions => verify_dimensions(n, d),
        VerifyKind::CgUnitarity => verify_cg_unitarity(n, d),
        VerifyKind::FirstMoment => verify_first_moment(n, d, 5, seed),
        VerifyKind::PartialSums => verify_partial_sums(n, d),
        VerifyKind::DiagonalExpression => verify_diagonal_expression(n, d),
        VerifyKind::MainLemma => verify_main_lemma(n, d, tolerance.unwrap_or(BLOCK_TOLERANCE)),
        VerifyKind::BlockEqualities => verify_block_equalities(n, d),
        VerifyKind::McorrDecomposition => verify_mcorr_decomposition(n, d),
        VerifyKind::Variance => match alpha {
            Some(text) => {
                let alpha = input(SpectrumQ::parse(text))?;
                Report::new("variance")
                    .param("n", n)
                    .param("alpha", text)
                    .param("seed", seed)
                    .merge_all((1..=n).map(|nn| variance_bound_check(nn, &alpha, 5, seed)))
            }
            None => verify_variance(n, d, 10, seed),
        },
        VerifyKind::Statistics => Report::new("statistics")
            .param("n", n)
            .param("d", d)
            .param("seed", seed)
            .merge_all([verify_p2_star(n, d, 10, seed), verify_row_height(n)]),
        VerifyKind::Complement => verify_complement_cg(n, d),
    })
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let seed = cli.seed;
    Ok(match &cli.command {
        Command::Enumerate { kind, n, d, lambda } => match kind {
            EnumKind::Partitions => {
                let (Some(n), Some(d)) = (n, d) else { return Err(usage("enumerate partitions needs --n and --d")) };
                let parts = enumerate_partitions(*n, *d);
                let text = parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\n");
                Output::plain(text, json!({ "partitions": parts }))
            }
            EnumKind::Ssyt | EnumKind::Syt => {
                let Some(lambda) = lambda else { return Err(usage("enumerate ssyt/syt needs --lambda")) };
                let lam = parse_lambda(lambda, *d)?;
                if matches!(kind, EnumKind::Ssyt) {
                    let all = enumerate_ssyt(&lam);
                    let text = all.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("\n");
                    Output::plain(text, json!({ "lambda": lam, "ssyt": all }))
                } else {
                    let all = enumerate_syt(&lam);
                    let text = all.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("\n");
                    Output::plain(text, json!({ "lambda": lam, "syt": all }))
                }
            }
        },
        Command::Blocks { lambda } => {
            let lam = parse_lambda(lambda, None)?;
            let blocks = lam.blocks();
            let text = blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ");
            Output::plain(text, json!({ "lambda": lam, "blocks": blocks }))
        }
        Command::Donate { lambda } => {
            let lam = parse_lambda(lambda, None)?;
            let out = donate(&lam);
            Output::plain(join(&out.0), json!({ "lambda": lam, "donate": out.0 }))
        }
        Command::Staircase { lambda, rank } => {
            let lam = parse_lambda(lambda, None)?;
            let out = match rank {
                Some(r) => input(staircase_r(&lam, *r))?,
                None => staircase(&lam),
            };
            Output::plain(join(&out.0), json!({ "lambda": lam, "rank": rank, "staircase": out.0 }))
        }
        Command::Dims { lambda, d } => {
            let lam = parse_lambda(lambda, *d)?;
            let dd = lam.d();
            let sp = dim_sp(&lam);
            let weyl = input(dim_weyl(&lam, dd))?;
            let hook = input(dim_hook_content(&lam, dd))?;
            let ok = weyl == hook;
            Output {
                text: format!("dim S_λ = {sp}\ndim V_λ^{dd} = {weyl} (Weyl) = {hook} (hook-content)"),
                json: json!({ "lambda": lam, "d": dd, "dim_sp": sp.to_string(), "dim_weyl": weyl.to_string(), "dim_hook_content": hook.to_string() }),
                ok,
            }
        }
        Command::SchurPoly { lambda, alpha } => {
            let alpha = input(SpectrumQ::parse(alpha))?;
            let lam = parse_lambda(lambda, None)?;
            let v: Rational = schur_poly(&lam, alpha.values());
            Output::plain(v.to_string(), json!({ "lambda": lam, "value": rational(&v) }))
        }
        Command::Wss { n, alpha } => {
            let alpha = input(SpectrumQ::parse(alpha))?;
            let dist = wss_distribution(*n, &alpha);
            let text = dist.entries().iter().map(|(l, p)| format!("{l} {p}")).collect::<Vec<_>>().join("\n");
            let entries: Vec<Value> =
                dist.entries().iter().map(|(l, p)| json!({ "lambda": l, "prob": rational(p) })).collect();
            let total = dist.total();
            let ok = total == Rational::from_integer(1.into());
            Output { text, json: json!({ "n": n, "entries": entries, "total": rational(&total) }), ok }
        }
        Command::Sample { n, alpha, count } => {
            let spectrum = input(SpectrumQ::parse(alpha))?;
            let exact = wss_distribution(*n, &spectrum);
            let samples = sample_shapes(*n, &spectrum, *count, seed);
            let hist = histogram(&samples);
            let tv = tv_distance(&hist, &exact);
            let limit = cli.tolerance.unwrap_or(0.02);
            let mut text: Vec<String> = hist.iter().map(|(l, c)| format!("{l} {c}")).collect();
            text.push(format!("tv={tv:.6}"));
            let counts: Vec<Value> = hist.iter().map(|(l, c)| json!({ "lambda": l, "count": c })).collect();
            Output {
                text: text.join("\n"),
                json: json!({ "n": n, "count": count, "seed": seed, "histogram": counts, "tv": tv, "tolerance": limit }),
                ok: tv <= limit,
            }
        }
        Command::Cg { what } => match what {
            CgCommand::Insert { tableau, k, d } => {
                let rows: Vec<Vec<usize>> =
                    serde_json::from_str(tableau).map_err(|e| usage(format!("--tableau: {e}")))?;
                let t = input(Ssyt::from_rows(rows, *d))?;
                if *k == 0 || k > d {
                    return Err(usage(format!("letter {k} outside 1..={d}")));
                }
                let out = cg_insert(&t, *k);
                let text = out.iter().map(|(s, c)| format!("{s} {c}")).collect::<Vec<_>>().join("\n");
                let items: Vec<Value> = out.iter().map(|(s, c)| json!({ "tableau": s, "coefficient": c })).collect();
                Output::plain(text, json!({ "tableau": t, "k": k, "outputs": items }))
            }
            CgCommand::OneStep { lambda, k, i } => {
                let lam = parse_lambda(lambda, None)?;
                let c = one_step(&lam, *k, *i);
                Output::plain(c.to_string(), json!({ "lambda": lam, "k": k, "i": i, "coefficient": c }))
            }
        },
        Command::Yor { lambda, perm } => {
            let lam = parse_lambda(lambda, None)?;
            let n = lam.size();
            let pi = if perm.trim_start().starts_with('(') || perm.trim() == "e" {
                input(Permutation::parse_cycles(perm, n))?
            } else {
                input(perm.parse::<Permutation>())?
            };
            let m = input(perm_matrix::<f64>(&lam, &pi))?;
            let basis = enumerate_syt(&lam);
            let rows: Vec<Vec<f64>> = (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect();
            let text = rows
                .iter()
                .map(|r| r.iter().map(|x| format!("{x:>10.6}")).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("\n");
            Output::plain(text, json!({ "lambda": lam, "perm": pi.to_string(), "basis": basis, "matrix": rows }))
        }
        Command::Verify { kind, size, alpha } => {
            Output::report(&verify(*kind, size.n, size.d, alpha.as_deref(), seed, cli.tolerance)?)
        }
        Command::Dense { what } => match what {
            DenseCommand::SchurCheck { size, samples } => {
                Output::report(&input(verify_dense(size.n, size.d, *samples, seed, cli.tolerance))?)
            }
        },
        Command::All => {
            let kinds = [
                VerifyKind::Dimensions,
                VerifyKind::CgUnitarity,
                VerifyKind::FirstMoment,
                VerifyKind::PartialSums,
                VerifyKind::DiagonalExpression,
                VerifyKind::MainLemma,
                VerifyKind::BlockEqualities,
                VerifyKind::McorrDecomposition,
                VerifyKind::Variance,
                VerifyKind::Statistics,
                VerifyKind::Complement,
            ];
            let mut reports = Vec::new();
            for kind in kinds {
                let (n, d) = kind.acceptance_size();
                reports.push(verify(kind, n, d, None, seed, cli.tolerance)?);
            }
            reports.push(input(verify_dense(4, 3, 20, seed, cli.tolerance))?);
            let ok = reports.iter().all(|r| r.passed);
            let text = reports.iter().map(Report::summary).collect::<Vec<_>>().join("\n");
            Output { text, json: json!({ "suites": reports }), ok }
        }
    })
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Enumerate { .. } => "enumerate",
        Command::Blocks { .. } => "blocks",
        Command::Donate { .. } => "donate",
        Command::Staircase { .. } => "staircase",
        Command::Dims { .. } => "dims",
        Command::SchurPoly { .. } => "schur-poly",
        Command::Wss { .. } => "wss",
        Command::Sample { .. } => "sample",
        Command::Cg { .. } => "cg",
        Command::Yor { .. } => "yor",
        Command::Verify { .. } => "verify",
        Command::Dense { .. } => "dense",
        Command::All => "all",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let mut body = json!({ "schema": SCHEMA, "command": command_name(&cli.command), "passed": out.ok });
                body["result"] = out.json;
                println!("{}", serde_json::to_string_pretty(&body).expect("JSON serializes"));
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
