//! Randomized cross-checks of the symbolic layer against independent
//! evaluation: canonical forms must agree pointwise with direct tree
//! evaluation, radical combination must be value-preserving, and the MCC
//! approaches its limit value monotonically from below.

use mccfm_core::exact::Rational;
use mccfm_core::symbolic::{canonicalize, limit_at_infinity, Context, Expr, LimitResult, Verdict};
use mccfm_core::verify::{verify_limit, RewriteChain};
use num_bigint::{BigInt, BigUint};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 4] = ["tp", "tn", "fp", "fn"];

/// Direct rational evaluation of the syntax tree, written with no reference
/// to the canonicalizer. `None` marks a division by zero at this point.
fn eval_tree(e: &Expr, values: &[i64; 4]) -> Option<Rational> {
    let int = |v: i64| Rational::from_int(v);
    match e {
        Expr::Symbol(name) => {
            let at = NAMES.iter().position(|n| n == name).expect("known symbol");
            Some(int(values[at]))
        }
        Expr::Integer(v) => Some(Rational::new(BigInt::from(v.clone()), BigInt::from(1)).unwrap()),
        Expr::Neg(a) => Some(-eval_tree(a, values)?),
        Expr::Add(a, b) => Some(&eval_tree(a, values)? + &eval_tree(b, values)?),
        Expr::Sub(a, b) => Some(&eval_tree(a, values)? - &eval_tree(b, values)?),
        Expr::Mul(a, b) => Some(&eval_tree(a, values)? * &eval_tree(b, values)?),
        Expr::Div(a, b) => eval_tree(a, values)?.checked_div(&eval_tree(b, values)?),
        Expr::Sqrt(_) => panic!("radical-free trees only"),
    }
}

/// A random expression using the full radical-free grammar.
fn random_tree(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    let leaf = depth == 0 || rng.random_bool(0.3);
    if leaf {
        if rng.random_bool(0.5) {
            Expr::symbol(NAMES[rng.random_range(0..NAMES.len())])
        } else {
            Expr::integer(rng.random_range(0..=9))
        }
    } else {
        let a = Box::new(random_tree(rng, depth - 1));
        let b = Box::new(random_tree(rng, depth - 1));
        match rng.random_range(0..5) {
            0 => Expr::Add(a, b),
            1 => Expr::Sub(a, b),
            2 => Expr::Mul(a, b),
            3 => Expr::Div(a, b),
            _ => Expr::Neg(a),
        }
    }
}

/// A random expression that is positive at every all-positive assignment:
/// sums and products of symbols and positive constants.
fn random_positive_tree(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    let leaf = depth == 0 || rng.random_bool(0.35);
    if leaf {
        if rng.random_bool(0.5) {
            Expr::symbol(NAMES[rng.random_range(0..NAMES.len())])
        } else {
            Expr::integer(rng.random_range(1..=9))
        }
    } else {
        let a = Box::new(random_positive_tree(rng, depth - 1));
        let b = Box::new(random_positive_tree(rng, depth - 1));
        if rng.random_bool(0.5) {
            Expr::Add(a, b)
        } else {
            Expr::Mul(a, b)
        }
    }
}

#[test]
fn canonical_forms_agree_with_direct_tree_evaluation() {
    let ctx = Context::confusion_counts();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);

    let mut checked = 0;
    while checked < 200 {
        let tree = random_tree(&mut rng, 4);
        let Ok(form) = canonicalize(&ctx, &tree) else {
            // A syntactically zero denominator; not a value to compare.
            continue;
        };
        let mut assignments = 0;
        let mut attempts = 0;
        while assignments < 10 {
            attempts += 1;
            assert!(attempts < 10_000, "generator starved of valid assignments");
            let values: [i64; 4] = std::array::from_fn(|_| rng.random_range(0..=15));
            let Some(expected) = eval_tree(&tree, &values) else {
                continue;
            };
            let unsigned: Vec<BigUint> = values.iter().map(|&v| BigUint::from(v as u64)).collect();
            let got = form
                .evaluate_at(&unsigned)
                .expect("point with nonzero tree denominators is not singular");
            assert_eq!(
                got.as_rational(),
                Some(&expected),
                "tree {tree:?} at {values:?}"
            );
            assignments += 1;
        }
        checked += 1;
    }
}

#[test]
fn radical_products_combine_without_changing_values() {
    let ctx = Context::confusion_counts();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);

    for _ in 0..120 {
        let a = random_positive_tree(&mut rng, 3);
        let b = random_positive_tree(&mut rng, 3);
        let split = canonicalize(
            &ctx,
            &Expr::Mul(
                Box::new(Expr::Sqrt(Box::new(a.clone()))),
                Box::new(Expr::Sqrt(Box::new(b.clone()))),
            ),
        )
        .unwrap();
        let joined = canonicalize(
            &ctx,
            &Expr::Sqrt(Box::new(Expr::Mul(Box::new(a), Box::new(b)))),
        )
        .unwrap();
        for _ in 0..6 {
            let values: Vec<BigUint> = (0..4)
                .map(|_| BigUint::from(rng.random_range(1u64..=20)))
                .collect();
            assert_eq!(
                split.evaluate_at(&values).unwrap(),
                joined.evaluate_at(&values).unwrap()
            );
        }
    }
}

#[test]
fn rewrite_stages_are_pairwise_equal() {
    let chain = RewriteChain::build();
    for i in 0..chain.stages.len() {
        for j in i + 1..chain.stages.len() {
            assert_eq!(
                chain.compare_stages(i, j),
                Verdict::Equal,
                "{} vs {}",
                chain.stages[i].label,
                chain.stages[j].label
            );
        }
    }
    assert!(chain.all_terms_vanish());
}

#[test]
fn mcc_climbs_to_its_limit_value_as_tn_grows() {
    let v = verify_limit();
    let LimitResult::Finite(limit_form) = &v.limit else {
        panic!("limit should be finite");
    };
    let tn_at = |k: u32| BigUint::from(10u32).pow(k);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);

    for _ in 0..60 {
        let tp = rng.random_range(1u64..=100);
        let fp = rng.random_range(0u64..=100);
        let fn_ = rng.random_range(0u64..=100);
        let point = |k: u32| -> Vec<BigUint> {
            vec![
                BigUint::from(tp),
                tn_at(k),
                BigUint::from(fp),
                BigUint::from(fn_),
            ]
        };
        let at = |k: u32| v.mcc.evaluate_at(&point(k)).unwrap();
        let target = limit_form.evaluate_at(&point(6)).unwrap();

        let (a6, a9, a12) = (at(6), at(9), at(12));
        // The limit value bounds every finite-tn MCC from above, so the
        // distances |MCC - limit| are target minus value.
        assert!(a6 <= target);
        assert!(a9 <= target);
        assert!(a12 <= target);
        if fp == 0 && fn_ == 0 {
            // Perfect-precision, perfect-recall corner: already at the limit.
            assert_eq!(a6, target);
            assert_eq!(a9, target);
            assert_eq!(a12, target);
        } else {
            // Shared reference point, so strictly shrinking distance is
            // exactly the chain of strict increases.
            assert!(a6 < a9, "tp={tp} fp={fp} fn={fn_}");
            assert!(a9 < a12, "tp={tp} fp={fp} fn={fn_}");
            assert!(a12 < target, "tp={tp} fp={fp} fn={fn_}");
        }
    }
}

#[test]
fn limit_of_each_vanishing_term_is_zero() {
    let ctx = Context::confusion_counts();
    let tn = ctx.symbol("tn").unwrap();
    for text in ["fn/tn", "fp/tn", "(fn*fp)/tn"] {
        let form = canonicalize(&ctx, &mccfm_core::symbolic::parse(text).unwrap()).unwrap();
        match limit_at_infinity(&form, tn) {
            LimitResult::Finite(l) => assert!(l.is_zero(), "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
}
