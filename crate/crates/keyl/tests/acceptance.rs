//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Each criterion passes only if its identities hold at the stated tolerance
//! and it finishes within its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use keyl::dense::verify_dense;
use keyl::moments::{
    BLOCK_TOLERANCE,
    verify_complement_cg, verify_diagonal_expression, verify_first_moment, verify_main_lemma,
    verify_mcorr_decomposition, verify_p2_star, verify_partial_sums, verify_row_height, verify_variance,
};
use keyl::partitions::{donate, staircase};
use keyl::rsk::{histogram, sample_shapes, tv_distance};
use keyl::schur_stats::{verify_dimensions, wss_distribution};
use keyl::{clebsch_gordan::verify_cg_unitarity, Partition, Report, SpectrumQ};

const SEED: u64 = 20240601;

struct Outcome {
    report: Report,
    extra: String,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, extra: String::new() }
    }
}

fn figures() -> Outcome {
    let mut r = Report::new("figures");
    let a = Partition::from_parts(&[4, 4, 2, 1, 0], 5).unwrap();
    let got = donate(&a).0;
    r.check(|| "donate (4,4,2,1,0)".into(), got == [7, 7, 2, -1, -4], || format!("{got:?}"), || "[7, 7, 2, -1, -4]".into(), 0.0);
    let b = Partition::from_parts(&[3, 3, 3, 2, 1, 1], 6).unwrap();
    let got = staircase(&b).0;
    r.check(|| "staircase (3,3,3,2,1,1)".into(), got == [8, 6, 4, 1, -2, -4], || format!("{got:?}"), || "[8, 6, 4, 1, -2, -4]".into(), 0.0);
    r.into()
}

fn rsk() -> Outcome {
    let alpha = SpectrumQ::parse("1/2,1/3,1/6").unwrap();
    let exact = wss_distribution(4, &alpha);
    let samples = sample_shapes(4, &alpha, 100_000, SEED);
    let again = sample_shapes(4, &alpha, 100_000, SEED);
    let tv = tv_distance(&histogram(&samples), &exact);
    let mut r = Report::new("rsk");
    r.check(|| "tv ≤ 0.02".into(), tv <= 0.02, || format!("{tv:.5}"), || "0.02".into(), tv);
    r.check(|| "deterministic".into(), samples == again, || "run 1".into(), || "run 2".into(), 0.0);
    Outcome { report: r, extra: format!(" tv={tv:.5}") }
}

fn main() -> ExitCode {
    type Job = (&'static str, Duration, Box<dyn Fn() -> Outcome>);
    let secs = Duration::from_secs;
    let jobs: Vec<Job> = vec![
        ("donation figures", Duration::from_millis(1), Box::new(figures)),
        ("dimension cross-check n≤8 d≤5", secs(10), Box::new(|| verify_dimensions(8, 5).into())),
        ("CG unitarity + insertion n≤5 d≤4", secs(60), Box::new(|| verify_cg_unitarity(5, 4).into())),
        ("first moment n≤8 d≤5", secs(120), Box::new(|| verify_first_moment(8, 5, 5, SEED).into())),
        ("partial sums n≤6 d≤4", secs(300), Box::new(|| verify_partial_sums(6, 4).into())),
        (
            "diagonal expression n≤6 d≤4, main lemma n≤5 d≤4",
            secs(600),
            Box::new(|| Report::new("diag+main").merge_all([verify_diagonal_expression(6, 4), verify_main_lemma(5, 4, BLOCK_TOLERANCE)]).into()),
        ),
        ("M_corr decomposition n≤8 d≤5", secs(600), Box::new(|| verify_mcorr_decomposition(8, 5).into())),
        (
            "statistics: p2*, E[ℓ], variance",
            secs(600),
            Box::new(|| {
                Report::new("statistics")
                    .merge_all([verify_p2_star(8, 4, 10, SEED), verify_row_height(10), verify_variance(6, 3, 10, SEED)])
                    .into()
            }),
        ),
        ("RSK sampler TV n=4 d=3", secs(600), Box::new(rsk)),
        ("dense Schur-Weyl / JM / trace n≤4 d≤3", secs(600), Box::new(|| verify_dense(4, 3, 20, SEED, None).unwrap().into())),
        ("complement lemma n≤4 d≤3", secs(600), Box::new(|| verify_complement_cg(4, 3).into())),
    ];
    let mut failed = 0;
    for (number, (name, budget, run)) in jobs.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *budget;
        let ok = out.report.passed && in_time;
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {:>2} {:<52} checked={} violations={} max_residual={:.3e} time={:.3}s budget={}s{}{}",
            if ok { "PASS" } else { "FAIL" },
            number + 1,
            name,
            out.report.checked,
            out.report.violations,
            out.report.max_residual,
            elapsed.as_secs_f64(),
            budget.as_secs_f64(),
            out.extra,
            if in_time { "" } else { " (over time budget)" },
        );
        for rec in out.report.records.iter().take(5) {
            println!("       {}: lhs={} rhs={} residual={:e}", rec.index, rec.lhs, rec.rhs, rec.residual);
        }
    }
    println!("acceptance: {} of {} criteria passed", jobs.len() - failed, jobs.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
