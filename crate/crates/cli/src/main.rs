//! `mccfm`: exact confusion-matrix metrics from the command line, plus a
//! mechanical proof that MCC converges to the Fowlkes-Mallows index as true
//! negatives grow without bound.
//!
//! Every value printed is computed in exact arithmetic; decimals are
//! truncated renderings of exact rationals and surds, so output is
//! byte-deterministic.
//!
//! Exit codes: 0 success, 1 usage error, 2 input parse error, 3 a metric was
//! undefined under `--strict`, 4 verification failure.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand};
use num_bigint::BigUint;

use mccfm_core::detect::{evaluate_dataset, DetectionDataset};
use mccfm_core::exact::{Rational, Surd};
use mccfm_core::metrics::{
    convergence_table, mcc as mcc_of, MccStatus, MetricReport, PartialCounts,
};
use mccfm_core::symbolic::{LimitResult, Verdict};
use mccfm_core::verify::{verify_limit, RewriteChain};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_STRICT_UNDEFINED: u8 = 3;
const EXIT_VERIFY_FAILED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "mccfm",
    version,
    about = "Exact confusion-matrix metrics and MCC limit verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute ppv, tpr, f1, fm, and mcc from confusion counts
    Metrics(MetricsArgs),
    /// Verify symbolically that MCC tends to the Fowlkes-Mallows index as tn grows
    VerifyLimit {
        /// Also print the rewrite chain and vanishing-term limits
        #[arg(long)]
        show_steps: bool,
    },
    /// Tabulate MCC, FM, and a certified |MCC - FM| bound over a list of tn values
    Converge(ConvergeArgs),
    /// Evaluate detection predictions against ground truth from a JSON file
    DetectEval(DetectEvalArgs),
}

#[derive(clap::Args)]
struct MetricsArgs {
    /// True positives
    #[arg(long)]
    tp: BigUint,
    /// False positives
    #[arg(long)]
    fp: BigUint,
    /// False negatives
    #[arg(long = "fn")]
    fn_: BigUint,
    /// True negatives; MCC is not computable without them
    #[arg(long)]
    tn: Option<BigUint>,
    /// Decimal digits in rendered values
    #[arg(long, default_value_t = 6)]
    digits: u32,
    /// Report an undefined MCC as exactly 0 instead of "undefined"
    #[arg(long)]
    undefined_mcc_as_zero: bool,
    /// Fail (exit 3) if any reported metric is undefined
    #[arg(long)]
    strict: bool,
}

#[derive(clap::Args)]
struct ConvergeArgs {
    /// True positives
    #[arg(long)]
    tp: BigUint,
    /// False positives
    #[arg(long)]
    fp: BigUint,
    /// False negatives
    #[arg(long = "fn")]
    fn_: BigUint,
    /// Comma-separated true-negative counts, one table row each
    #[arg(long)]
    tn_list: String,
    /// Decimal digits in rendered values
    #[arg(long, default_value_t = 6)]
    digits: u32,
}

#[derive(clap::Args)]
struct DetectEvalArgs {
    /// Path to the JSON dataset document
    #[arg(long)]
    input: std::path::PathBuf,
    /// IoU required to match a prediction to a ground truth, in (0, 1]
    #[arg(long)]
    iou_threshold: String,
    /// Decimal digits in rendered values
    #[arg(long, default_value_t = 6)]
    digits: u32,
}

/// A failure to report on standard error, with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

/// Successful command output plus the exit code it earned (strict mode and
/// verification verdicts can exit nonzero after printing).
struct Output {
    stdout: String,
    code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests arrive as "errors" but are neither
            // usage mistakes nor failures.
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            e.print().expect("writing clap output");
            return ExitCode::from(code);
        }
    };

    let result = match cli.command {
        Command::Metrics(args) => run_metrics(args),
        Command::VerifyLimit { show_steps } => run_verify_limit(show_steps),
        Command::Converge(args) => run_converge(args),
        Command::DetectEval(args) => run_detect_eval(args),
    };

    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("{}: {}", Cli::command().get_name(), f.message);
            ExitCode::from(f.code)
        }
    }
}

fn rational_field(value: Option<&Rational>, digits: u32) -> String {
    match value {
        Some(v) => format!("exact={} decimal={}", v, v.to_decimal(digits)),
        None => "undefined".to_string(),
    }
}

fn surd_field(value: Option<&Surd>, digits: u32) -> String {
    match value {
        Some(v) => format!("exact={} decimal={}", v, v.to_decimal(digits)),
        None => "undefined".to_string(),
    }
}

fn run_metrics(args: MetricsArgs) -> Result<Output, Failure> {
    let digits = args.digits;
    let mut out = String::new();

    writeln!(out, "tp: {}", args.tp).unwrap();
    writeln!(out, "fp: {}", args.fp).unwrap();
    writeln!(out, "fn: {}", args.fn_).unwrap();
    match &args.tn {
        Some(tn) => writeln!(out, "tn: {tn}").unwrap(),
        None => writeln!(out, "tn: absent").unwrap(),
    }

    let partial = PartialCounts::new(args.tp, args.fp, args.fn_);
    let report = match &args.tn {
        Some(tn) => MetricReport::from_matrix(&partial.with_tn(tn.clone())),
        None => MetricReport::from_partial(&partial),
    };

    writeln!(out, "ppv: {}", rational_field(report.ppv.as_ref(), digits)).unwrap();
    writeln!(out, "tpr: {}", rational_field(report.tpr.as_ref(), digits)).unwrap();
    writeln!(out, "f1: {}", rational_field(report.f1.as_ref(), digits)).unwrap();
    writeln!(out, "fm: {}", surd_field(report.fm.as_ref(), digits)).unwrap();

    let mut undefined =
        report.ppv.is_none() || report.tpr.is_none() || report.f1.is_none() || report.fm.is_none();
    match &report.mcc {
        MccStatus::Defined(v) => writeln!(out, "mcc: {}", surd_field(Some(v), digits)).unwrap(),
        MccStatus::Undefined if args.undefined_mcc_as_zero => {
            let zero = Surd::zero();
            writeln!(out, "mcc: {}", surd_field(Some(&zero), digits)).unwrap();
        }
        MccStatus::Undefined => {
            undefined = true;
            writeln!(out, "mcc: undefined").unwrap();
        }
        MccStatus::NotComputable => writeln!(out, "mcc: not-computable (TN absent)").unwrap(),
    }

    let code = if args.strict && undefined {
        EXIT_STRICT_UNDEFINED
    } else {
        0
    };
    Ok(Output { stdout: out, code })
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Equal => "equal",
        Verdict::NotEqual => "not-equal",
        Verdict::Indeterminate => "indeterminate",
    }
}

fn run_verify_limit(show_steps: bool) -> Result<Output, Failure> {
    let v = verify_limit();
    let ctx = &v.ctx;
    let mut out = String::new();

    writeln!(out, "mcc: {}", v.mcc.display(ctx)).unwrap();
    writeln!(out, "fm: {}", v.fm.display(ctx)).unwrap();
    writeln!(out, "claim: {}", v.claim.display(ctx)).unwrap();
    match &v.limit {
        LimitResult::Finite(l) => {
            writeln!(out, "limit of mcc as tn -> infinity: {}", l.display(ctx)).unwrap()
        }
        other => writeln!(out, "limit of mcc as tn -> infinity: {other:?}").unwrap(),
    }

    let mut verdicts = vec![v.limit_vs_claim, v.limit_vs_fm, v.claim_vs_fm];

    if show_steps {
        let chain = RewriteChain::build();
        writeln!(out, "rewrite chain:").unwrap();
        for (i, stage) in chain.stages.iter().enumerate() {
            writeln!(
                out,
                "  step {} ({}): {}",
                i + 1,
                stage.label,
                stage.form.display(ctx)
            )
            .unwrap();
        }
        for (i, verdict) in chain.adjacent.iter().enumerate() {
            writeln!(
                out,
                "  step {} = step {}: {}",
                i + 1,
                i + 2,
                verdict_word(*verdict)
            )
            .unwrap();
            verdicts.push(*verdict);
        }
        writeln!(out, "vanishing terms:").unwrap();
        for (text, limit) in &chain.vanishing {
            let (rendered, vanished) = match limit {
                LimitResult::Finite(l) => (l.display(ctx).to_string(), l.is_zero()),
                other => (format!("{other:?}"), false),
            };
            writeln!(out, "  limit of {text}: {rendered}").unwrap();
            verdicts.push(if vanished {
                Verdict::Equal
            } else {
                Verdict::NotEqual
            });
        }
    }

    writeln!(
        out,
        "check limit = claim: {}",
        verdict_word(v.limit_vs_claim)
    )
    .unwrap();
    writeln!(out, "check limit = fm: {}", verdict_word(v.limit_vs_fm)).unwrap();
    writeln!(out, "check claim = fm: {}", verdict_word(v.claim_vs_fm)).unwrap();

    let (word, code) = if verdicts.contains(&Verdict::NotEqual) {
        ("REFUTED", EXIT_VERIFY_FAILED)
    } else if verdicts.contains(&Verdict::Indeterminate) {
        ("INDETERMINATE", EXIT_VERIFY_FAILED)
    } else {
        ("VERIFIED", 0)
    };
    writeln!(out, "{word}").unwrap();
    Ok(Output { stdout: out, code })
}

fn parse_tn_list(text: &str) -> Result<Vec<BigUint>, Failure> {
    let malformed =
        |detail: &str| Failure::new(EXIT_USAGE, format!("malformed --tn-list: {detail}"));
    if text.is_empty() {
        return Err(malformed("list is empty"));
    }
    text.split(',')
        .map(|part| {
            part.parse::<BigUint>()
                .map_err(|_| malformed(&format!("{part:?} is not a nonnegative integer")))
        })
        .collect()
}

fn run_converge(args: ConvergeArgs) -> Result<Output, Failure> {
    let digits = args.digits;
    let tn_values = parse_tn_list(&args.tn_list)?;
    let partial = PartialCounts::new(args.tp, args.fp, args.fn_);

    let mut out = String::new();
    writeln!(out, "tn,mcc,fm,gap_upper_bound").unwrap();

    match convergence_table(&partial, &tn_values, digits) {
        Ok(rows) => {
            let fm_text = mccfm_core::metrics::fm(&partial)
                .expect("table exists only when fm is defined")
                .to_decimal(digits);
            for row in rows {
                let mcc_text = match &row.mcc {
                    Some(m) => m.to_decimal(digits),
                    None => "undefined".to_string(),
                };
                let gap_text = match &row.gap {
                    Some(gap) => gap.hi().to_decimal(digits),
                    None => "undefined".to_string(),
                };
                writeln!(out, "{},{mcc_text},{fm_text},{gap_text}", row.tn).unwrap();
            }
        }
        // No FM value means no limit to converge to: MCC is undefined at
        // every tn too (a zero marginal), so all columns are markers.
        Err(_) => {
            for tn in tn_values {
                debug_assert!(mcc_of(&partial.with_tn(tn.clone())).is_none());
                writeln!(out, "{tn},undefined,undefined,undefined").unwrap();
            }
        }
    }
    Ok(Output::ok(out))
}

fn run_detect_eval(args: DetectEvalArgs) -> Result<Output, Failure> {
    let digits = args.digits;
    let threshold = Rational::from_decimal_str(&args.iou_threshold)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("bad --iou-threshold: {e}")))?;

    let text = std::fs::read_to_string(&args.input).map_err(|e| {
        Failure::new(
            EXIT_PARSE,
            format!("cannot read {}: {e}", args.input.display()),
        )
    })?;
    let dataset = DetectionDataset::from_json_str(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", args.input.display())))?;

    let eval = evaluate_dataset(&dataset, &threshold)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("bad --iou-threshold: {e}")))?;

    let mut out = String::new();
    writeln!(out, "tp: {}", eval.counts.tp).unwrap();
    writeln!(out, "fp: {}", eval.counts.fp).unwrap();
    writeln!(out, "fn: {}", eval.counts.fn_).unwrap();
    writeln!(
        out,
        "ppv: {}",
        rational_field(eval.report.ppv.as_ref(), digits)
    )
    .unwrap();
    writeln!(
        out,
        "tpr: {}",
        rational_field(eval.report.tpr.as_ref(), digits)
    )
    .unwrap();
    writeln!(
        out,
        "f1: {}",
        rational_field(eval.report.f1.as_ref(), digits)
    )
    .unwrap();
    writeln!(out, "fm: {}", surd_field(eval.report.fm.as_ref(), digits)).unwrap();
    writeln!(
        out,
        "mcc: not-computable (TN unbounded in open-world detection)"
    )
    .unwrap();
    Ok(Output::ok(out))
}
