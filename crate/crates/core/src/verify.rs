//! Mechanical verification that MCC tends to the Fowlkes-Mallows index as
//! the true-negative count grows without bound.
//!
//! Everything here is exact: the definitions are parsed into canonical
//! `(P/Q)*sqrt(R)` forms, the limit is taken by degree comparison, and the
//! resulting identities are decided by cross-squaring with sign analysis.
//! There are no tolerances and no floating point anywhere in the argument.

use crate::symbolic::{
    canonicalize, is_identically_equal, limit_at_infinity, parse, Context, LimitResult, SurdExpr,
    SymbolicError, Verdict,
};

/// Matthews correlation coefficient over the four confusion counts.
pub const MCC_TEXT: &str = "(tp*tn - fp*fn) / sqrt((tp+fp)*(tp+fn)*(tn+fp)*(tn+fn))";

/// Fowlkes-Mallows index: the geometric mean of precision and recall.
pub const FM_TEXT: &str = "sqrt((tp/(tp+fp)) * (tp/(tp+fn)))";

/// The closed form that both the MCC limit and FM are claimed to equal.
pub const LIMIT_CLAIM_TEXT: &str = "tp / sqrt((tp+fp)*(tp+fn))";

/// Rewrite stages taking the MCC ratio to a form whose behavior as
/// tn grows is readable term by term. Each stage is identically equal to
/// every other wherever defined (tn > 0); only the final stage makes the
/// vanishing terms explicit.
pub const REWRITE_STAGES: [(&str, &str); 4] = [
    ("definition", MCC_TEXT),
    (
        "numerator and denominator scaled by 1/tn",
        "((1/tn)*(tp*tn - fp*fn)) / ((1/tn)*sqrt((tp+fp)*(tp+fn)*(tn+fp)*(tn+fn)))",
    ),
    (
        "scale distributed across the factors",
        "(tp - fp*(fn/tn)) / sqrt((tp+fp)*(tp+fn)*((tn+fp)/tn)*((tn+fn)/tn))",
    ),
    (
        "tn/tn cancelled",
        "(tp - fp*(fn/tn)) / sqrt((tp+fp)*(tp+fn)*(1 + fp/tn)*(1 + fn/tn))",
    ),
];

/// Terms of the final stage whose individual limits vanish, justifying the
/// simplification to the claimed closed form.
pub const VANISHING_TERMS: [&str; 3] = ["fn/tn", "fp/tn", "(fn*fp)/tn"];

fn canonical(ctx: &Context, text: &str) -> Result<SurdExpr, SymbolicError> {
    let expr = parse(text).unwrap_or_else(|e| panic!("expression {text:?} does not lex: {e}"));
    canonicalize(ctx, &expr)
}

/// Outcome of checking the convergence claim end to end.
#[derive(Debug, Clone)]
pub struct LimitVerification {
    pub ctx: Context,
    /// Canonical MCC.
    pub mcc: SurdExpr,
    /// Canonical FM.
    pub fm: SurdExpr,
    /// Canonical form of the claimed closed-form limit.
    pub claim: SurdExpr,
    /// Symbolic limit of the MCC as tn grows without bound.
    pub limit: LimitResult,
    pub claim_vs_fm: Verdict,
    pub limit_vs_claim: Verdict,
    pub limit_vs_fm: Verdict,
}

impl LimitVerification {
    /// `Equal` only when every check passed; `NotEqual` dominates
    /// `Indeterminate`.
    pub fn verdict(&self) -> Verdict {
        let checks = [self.claim_vs_fm, self.limit_vs_claim, self.limit_vs_fm];
        if checks.contains(&Verdict::NotEqual) {
            Verdict::NotEqual
        } else if checks.contains(&Verdict::Indeterminate) {
            Verdict::Indeterminate
        } else {
            Verdict::Equal
        }
    }
}

/// Runs the standard verification: build MCC and FM from their definitions,
/// take the symbolic limit, and check it against FM and the claimed closed
/// form.
pub fn verify_limit() -> LimitVerification {
    verify_limit_against(LIMIT_CLAIM_TEXT).expect("built-in claim is well-formed")
}

/// Same as [`verify_limit`] but with a caller-supplied claim expression, so
/// a wrong claim can be shown to come back refuted.
///
/// The claim must be lexically valid (this panics on a syntax error);
/// semantic problems such as unknown symbols or nested radicals come back as
/// errors.
pub fn verify_limit_against(claim_text: &str) -> Result<LimitVerification, SymbolicError> {
    let ctx = Context::confusion_counts();
    let tn = ctx.symbol("tn").expect("tn is a confusion count");

    let mcc = canonical(&ctx, MCC_TEXT)?;
    let fm = canonical(&ctx, FM_TEXT)?;
    let claim = canonical(&ctx, claim_text)?;

    let limit = limit_at_infinity(&mcc, tn);
    let (limit_vs_claim, limit_vs_fm) = match &limit {
        LimitResult::Finite(l) => (
            is_identically_equal(l, &claim),
            is_identically_equal(l, &fm),
        ),
        // A diverging or sign-indeterminate limit cannot equal any finite
        // canonical form.
        _ => (Verdict::NotEqual, Verdict::NotEqual),
    };

    Ok(LimitVerification {
        claim_vs_fm: is_identically_equal(&claim, &fm),
        limit_vs_claim,
        limit_vs_fm,
        ctx,
        mcc,
        fm,
        claim,
        limit,
    })
}

/// One parsed rewrite stage with its canonical form.
#[derive(Debug, Clone)]
pub struct RewriteStage {
    pub label: &'static str,
    pub text: &'static str,
    pub form: SurdExpr,
}

/// The rewrite chain behind the limit, with the verdicts tying it together.
#[derive(Debug, Clone)]
pub struct RewriteChain {
    pub ctx: Context,
    pub stages: Vec<RewriteStage>,
    /// Verdict for each adjacent stage pair, in order.
    pub adjacent: Vec<Verdict>,
    /// Each vanishing term with its symbolic limit.
    pub vanishing: Vec<(&'static str, LimitResult)>,
}

impl RewriteChain {
    pub fn build() -> Self {
        let ctx = Context::confusion_counts();
        let tn = ctx.symbol("tn").expect("tn is a confusion count");

        let stages: Vec<RewriteStage> = REWRITE_STAGES
            .iter()
            .map(|(label, text)| RewriteStage {
                label,
                text,
                form: canonical(&ctx, text).expect("built-in stages are well-formed"),
            })
            .collect();
        let adjacent = stages
            .windows(2)
            .map(|w| is_identically_equal(&w[0].form, &w[1].form))
            .collect();
        let vanishing = VANISHING_TERMS
            .iter()
            .map(|text| {
                let form = canonical(&ctx, text).expect("built-in terms are well-formed");
                (*text, limit_at_infinity(&form, tn))
            })
            .collect();

        Self {
            ctx,
            stages,
            adjacent,
            vanishing,
        }
    }

    /// `i`-th stage identically equal to the `j`-th?
    pub fn compare_stages(&self, i: usize, j: usize) -> Verdict {
        is_identically_equal(&self.stages[i].form, &self.stages[j].form)
    }

    pub fn all_adjacent_equal(&self) -> bool {
        self.adjacent.iter().all(|v| *v == Verdict::Equal)
    }

    pub fn all_terms_vanish(&self) -> bool {
        self.vanishing.iter().all(|(_, l)| match l {
            LimitResult::Finite(f) => f.is_zero(),
            _ => false,
        })
    }
}
