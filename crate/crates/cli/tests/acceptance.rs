//! Acceptance gate: one line per criterion, nonzero exit if any fails.
//!
//! Every check is exact; the only tolerances are the wall-clock limits below.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use prelie::blowup::{delta, delta_tree};
use prelie::bridge::{lie_kernel_basis, lyndon_bracket_vectors, lyndon_span, verify_lemma, ComponentSpec};
use prelie::freelie::{eval_in_prelie, xi_element, BracketExpr};
use prelie::scalars::subspaces_equal;
use prelie::suite::{run_suite, SuiteKind};
use prelie::trees::{enumerate_special_trees, enumerate_trees, parse_tree, Mode};

const ENUMERATION_LIMIT: Duration = Duration::from_secs(60);
const KERNEL_N6_LIMIT: Duration = Duration::from_secs(600);

type Verdict = Result<String, String>;

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn require(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn spec_err(e: prelie::Error) -> String {
    e.to_string()
}

fn enumeration() -> Verdict {
    let start = Instant::now();
    let mut trees = Vec::new();
    let mut special = Vec::new();
    for n in 1..=6usize {
        trees.push(enumerate_trees(n, Mode::Multilinear).map_err(spec_err)?.len());
        special.push(enumerate_special_trees(n, Mode::Multilinear).map_err(spec_err)?.len());
    }
    let elapsed = start.elapsed();
    let expected_trees = [1, 2, 9, 64, 625, 7776];
    let expected_special = [2, 9, 64, 625, 7776, 117649];
    require(
        trees == expected_trees && special == expected_special && elapsed < ENUMERATION_LIMIT,
        format!(
            "|Tr_n| = {}; |Tr1_n| = {}; {:.2}s (limit {}s)",
            join(&trees),
            join(&special),
            elapsed.as_secs_f64(),
            ENUMERATION_LIMIT.as_secs()
        ),
    )
}

fn delta_formulas() -> Verdict {
    let cases: [(&str, &[(i64, &str)]); 4] = [
        ("1", &[]),
        ("1(2)", &[(1, "@(1,2)")]),
        ("1(2(3))", &[(1, "@(1,2(3))"), (1, "1(@(2,3))")]),
        (
            "1(2,3)",
            &[(1, "@(2,1(3))"), (1, "@(3,1(2))"), (1, "@(1,2,3)"), (-1, "1(@(2,3))")],
        ),
    ];
    for (tree, expected) in cases {
        let got = delta_tree(&parse_tree(tree).map_err(spec_err)?).map_err(spec_err)?;
        let mut got: Vec<(String, String)> = got.iter().map(|(t, c)| (t.to_string(), c.to_string())).collect();
        let mut want: Vec<(String, String)> = expected
            .iter()
            .map(|(c, s)| (parse_tree(s).unwrap().to_string(), c.to_string()))
            .collect();
        got.sort();
        want.sort();
        if got != want {
            return Err(format!("delta({tree}) = {got:?}, expected {want:?}"));
        }
    }
    Ok("4 formulas reproduced term for term (0, 1, 2, 3+1 terms)".into())
}

fn xi_certificate() -> Verdict {
    let xi = xi_element(1, 2, 3).map_err(spec_err)?;
    let in_kernel = delta(&xi).map_err(spec_err)?.is_zero();
    let l = BracketExpr::letter;
    let nested = eval_in_prelie(&BracketExpr::bracket(l(1), BracketExpr::bracket(l(2), l(3)))).map_err(spec_err)?;
    require(
        in_kernel && xi == nested,
        format!("delta(xi) = 0: {in_kernel}; xi = eval([1,[2,3]]): {}", xi == nested),
    )
}

fn multilinear_kernel() -> Verdict {
    let mut dims = Vec::new();
    let mut n6 = Duration::ZERO;
    for n in 2..=6 {
        let start = Instant::now();
        dims.push(
            lie_kernel_basis(ComponentSpec::multilinear(n).map_err(spec_err)?)
                .map_err(spec_err)?
                .dim(),
        );
        if n == 6 {
            n6 = start.elapsed();
        }
    }
    require(
        dims == [1, 2, 6, 24, 120] && n6 < KERNEL_N6_LIMIT,
        format!(
            "dim ker = {} for n = 2..6; n = 6 in {:.2}s (limit {}s)",
            join(&dims),
            n6.as_secs_f64(),
            KERNEL_N6_LIMIT.as_secs()
        ),
    )
}

fn graded_kernel() -> Verdict {
    let dims = |m: u32| -> Result<Vec<usize>, String> {
        (1..=5)
            .map(|n| {
                Ok(lie_kernel_basis(ComponentSpec::alphabet(m, n).map_err(spec_err)?)
                    .map_err(spec_err)?
                    .dim())
            })
            .collect()
    };
    let (one, two) = (dims(1)?, dims(2)?);
    require(
        one == [1, 0, 0, 0, 0] && two == [2, 1, 2, 3, 6],
        format!("alphabet(1): {}; alphabet(2): {}", join(&one), join(&two)),
    )
}

fn primitive_route() -> Verdict {
    let mut summary = Vec::new();
    let mut ok = true;
    for n in 1..=5 {
        let r = verify_lemma(ComponentSpec::multilinear(n).map_err(spec_err)?).map_err(spec_err)?;
        ok &= r.p_injective && r.image_is_primitive;
        summary.push(format!("{}->{}={}", r.kernel_dim, r.image_dim, r.primitive_dim));
    }
    require(
        ok,
        format!("dim ker -> dim p(ker) = dim primitives: {}", summary.join(" ")),
    )
}

fn lyndon_route() -> Verdict {
    let mut checked = 0;
    for n in 1..=5 {
        for spec in [ComponentSpec::multilinear(n), ComponentSpec::alphabet(2, n)] {
            let spec = spec.map_err(spec_err)?;
            let kernel = lie_kernel_basis(spec).map_err(spec_err)?;
            if !subspaces_equal(&lyndon_span(spec).map_err(spec_err)?, &kernel).map_err(spec_err)? {
                return Err(format!("span differs from kernel for {spec:?}"));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} components equal (multilinear and alphabet(2), n = 1..5)"
    ))
}

fn property_suites() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for kind in [SuiteKind::Square, SuiteKind::Leibniz, SuiteKind::Prelie] {
        let r = run_suite(kind, 5).map_err(spec_err)?;
        ok &= r.passed();
        let cases: usize = r.checks.iter().map(|c| c.cases).sum();
        let failed: Vec<&str> = r
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name.as_str())
            .collect();
        parts.push(format!(
            "{kind} {cases} cases{}",
            if failed.is_empty() {
                String::new()
            } else {
                format!(" FAILED {failed:?}")
            }
        ));
        if kind == SuiteKind::Square {
            let basis = r.checks.iter().find(|c| c.name == "basis trees").map_or(0, |c| c.cases);
            let random = r
                .checks
                .iter()
                .find(|c| c.name == "random vectors")
                .map_or(0, |c| c.cases);
            ok &= basis == 64 + 9 + 2 + 1 && random == 100;
        }
    }
    let mut brackets = 0;
    for n in 1..=6 {
        for spec in [ComponentSpec::multilinear(n), ComponentSpec::alphabet(2, n)] {
            for x in lyndon_bracket_vectors(spec.map_err(spec_err)?).map_err(spec_err)? {
                ok &= delta(&x).map_err(spec_err)?.is_zero();
                brackets += 1;
            }
        }
    }
    parts.push(format!("delta on {brackets} Lyndon bracketings"));
    require(ok, parts.join("; "))
}

fn determinism() -> Verdict {
    let run = |threads: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_prelie"))
            .args(["--threads", threads, "verify", "all", "--max-n", "5"])
            .output()
            .map_err(|e| e.to_string())?;
        if out.status.code() != Some(0) {
            return Err(format!("exit {:?} with {threads} threads", out.status.code()));
        }
        Ok(out.stdout)
    };
    let (a, b) = (run("1")?, run("4")?);
    require(
        a == b,
        format!("1 vs 4 threads: {} bytes each, identical: {}", a.len(), a == b),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("enumeration counts", enumeration),
        ("delta worked examples", delta_formulas),
        ("xi certificate", xi_certificate),
        ("multilinear kernel dimensions", multilinear_kernel),
        ("graded kernel dimensions", graded_kernel),
        ("primitive-element route", primitive_route),
        ("Lyndon route", lyndon_route),
        ("property suites", property_suites),
        ("determinism across thread counts", determinism),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
