//! Acceptance suite: one PASS/FAIL line per criterion over the full grid.
//! Run with `cargo test -p demazure-core --test acceptance -- --nocapture`.

use std::time::Instant;

use demazure_core::verify::{grid_lambdas, run_suite, Scope, Statement, TypeContext};
use demazure_core::{CheckReport, TypeLabel};

struct Outcome {
    criterion: usize,
    title: &'static str,
    gating: bool,
    reports: Vec<CheckReport>,
    seconds: f64,
}

impl Outcome {
    fn passed(&self) -> bool {
        !self.reports.is_empty() && self.reports.iter().all(CheckReport::passed)
    }

    fn line(&self) -> String {
        let tag = match (self.passed(), self.gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (non-gating)",
        };
        format!(
            "{tag} criterion {:>2}: {} [{} checks, {:.2}s]",
            self.criterion,
            self.title,
            self.reports.len(),
            self.seconds
        )
    }
}

fn contexts() -> Vec<TypeContext> {
    TypeLabel::ALL.into_iter().map(TypeContext::new).collect()
}

fn run(
    criterion: usize,
    title: &'static str,
    gating: bool,
    body: impl FnOnce() -> Vec<CheckReport>,
) -> Outcome {
    let start = Instant::now();
    let reports = body();
    Outcome {
        criterion,
        title,
        gating,
        reports,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn suites(ctxs: &[TypeContext], statements: &[Statement]) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for ctx in ctxs {
        let scope = Scope::grid(ctx.label());
        for &st in statements {
            out.extend(
                run_suite(ctx, st, &scope)
                    .unwrap_or_else(|e| panic!("{st} on {}: {e}", ctx.label())),
            );
        }
    }
    out
}

#[test]
fn acceptance() {
    let ctxs = contexts();
    let a2: Vec<TypeContext> = vec![TypeContext::new(TypeLabel::A2)];
    let mut outcomes = vec![
        run(
            1,
            "refined Demazure formula, every word, every lambda",
            true,
            || suites(&ctxs, &[Statement::RefinedFormula]),
        ),
        run(
            2,
            "full-crystal recovery against Weyl dimension and Freudenthal",
            true,
            || suites(&ctxs, &[Statement::FullCrystal]),
        ),
        run(
            3,
            "string property, trichotomy and last-letter closure",
            true,
            || suites(&ctxs, &[Statement::StringProperty]),
        ),
        run(4, "reduced-word independence", true, || {
            suites(&ctxs, &[Statement::WordIndependence])
        }),
        run(5, "star suite and B(∞) Demazure statements", true, || {
            suites(
                &ctxs,
                &[
                    Statement::Star,
                    Statement::StarInverse,
                    Statement::StarUnion,
                    Statement::RaisingClosure,
                    Statement::StarRecursion,
                    Statement::StringClosure,
                    Statement::StarCommutation,
                    Statement::RaisingStar,
                ],
            )
        }),
        run(6, "Psi embedding identities and injectivity", true, || {
            // Every type at depth 6, G2 included.
            ctxs.iter()
                .flat_map(|ctx| {
                    let scope = Scope {
                        depth: 6,
                        ..Scope::grid(ctx.label())
                    };
                    run_suite(ctx, Statement::Psi, &scope).unwrap()
                })
                .collect()
        }),
        run(
            7,
            "crystal axioms, normality, tensor associativity",
            true,
            || suites(&ctxs, &[Statement::Axioms]),
        ),
        run(
            8,
            "character-map intertwining with algebraic Demazure operators",
            true,
            || suites(&ctxs, &[Statement::Intertwining]),
        ),
        run(9, "explicit lowest element of A2 crystals", true, || {
            suites(&a2, &[Statement::LowestWitness])
        }),
        run(10, "depth-truncation stability", true, || {
            suites(&ctxs, &[Statement::Truncation, Statement::Iota])
        }),
    ];
    outcomes.push(run(
        11,
        "braid-witness report at the largest grid weight",
        false,
        || {
            let mut out = Vec::new();
            for t in [TypeLabel::A2, TypeLabel::B2, TypeLabel::G2] {
                let ctx = TypeContext::new(t);
                let top = grid_lambdas(t)
                    .into_iter()
                    .max_by_key(|l| l.0.iter().sum::<i64>())
                    .unwrap();
                let scope = Scope {
                    lambdas: vec![top],
                    ..Scope::grid(t)
                };
                let reports = run_suite(&ctx, Statement::Braid, &scope).unwrap();
                for r in &reports {
                    println!("  {r}");
                }
                out.extend(reports);
            }
            out
        },
    ));

    println!();
    for o in &outcomes {
        println!("{}", o.line());
        for r in o.reports.iter().filter(|r| !r.passed()).take(5) {
            println!("  {r}");
        }
    }
    let failed: Vec<usize> = outcomes
        .iter()
        .filter(|o| o.gating && !o.passed())
        .map(|o| o.criterion)
        .collect();
    assert!(failed.is_empty(), "gating criteria failed: {failed:?}");
}
