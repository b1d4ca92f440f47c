//! Built-in self-checks. Expected values are written out here rather than
//! recomputed, so a regression in the library shows up as a failed row.

use polyaut::derivations::{nagata_delta, nagata_derivation, nagata_map, DEFAULT_LND_BOUND};
use polyaut::ffperm::{
    fiberwise_experiment, map_to_permutation, parity_experiment, random_tame_word, Parity, PointTable,
};
use polyaut::fixedspace::{fixed_dimension_profile, fixed_space};
use polyaut::gradings::{derivation_degree, solve_gradings, WeightVector};
use polyaut::linearize::{build_shift_linearization, l_b};
use polyaut::maps::tame_identity_witness;
use polyaut::{AutWord, Derivation, Field, PolyMap, PolyRing, Result, Scalar};
use serde_json::{json, Value};

use crate::report::CommandResult;

pub const SUITES: [&str; 5] = ["nagata", "gradings", "fixedspace", "parity", "tame"];

struct Check {
    name: String,
    ok: bool,
    detail: String,
}

impl Check {
    fn new(name: impl Into<String>, outcome: Result<(bool, String)>) -> Check {
        let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        Check {
            name: name.into(),
            ok,
            detail,
        }
    }
}

fn q() -> Field {
    Field::Rationals
}

fn rat(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

fn eq_check<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> (bool, String) {
    if got == want {
        (true, format!("{got:?}"))
    } else {
        (false, format!("got {got:?}, expected {want:?}"))
    }
}

fn nagata_suite() -> Vec<Check> {
    let field = q();
    let r = PolyRing::rationals(3);
    let mut checks = vec![
        Check::new(
            "derivation is locally nilpotent, indices (3,2,1)",
            (|| {
                let cert = nagata_derivation(&field)?.verify_lnd(DEFAULT_LND_BOUND)?;
                Ok(eq_check(cert.indices, vec![3, 2, 1]))
            })(),
        ),
        Check::new(
            "closed form of N",
            (|| {
                let n = nagata_map(&field, &field.one())?;
                let want = PolyMap::parse(&r, "(X - 2*Y*(X*Z + Y^2) - Z*(X*Z + Y^2)^2, Y + Z*(X*Z + Y^2), Z)")?;
                Ok(eq_check(n.to_string(), want.to_string()))
            })(),
        ),
        Check::new(
            "N fixes Z and XZ + Y^2",
            (|| {
                let n = nagata_map(&field, &field.one())?;
                let delta = nagata_delta(&r);
                let z = r.var(2);
                Ok((n.pullback(&delta)? == delta && n.pullback(&z)? == z, String::new()))
            })(),
        ),
    ];

    // L = (aX, bY, cZ) with ac = b^2 conjugates exp(λD) to exp(λD/(bc)).
    let d = nagata_derivation(&field).expect("rationals");
    let diagonals = [(1, 1, 1), (4, 2, 1), (1, 2, 4), (9, 3, 1), (8, 4, 2)];
    let lambdas = [rat(1, 1), rat(-1, 1), rat(1, 2), rat(3, 1), rat(-2, 7)];
    let mut held = 0;
    let mut first_failure = String::new();
    for &(a, b, c) in &diagonals {
        for lam in &lambdas {
            let outcome = (|| -> Result<bool> {
                let l = PolyMap::diagonal(&r, &[rat(a, 1), rat(b, 1), rat(c, 1)])?;
                let l_inv = PolyMap::diagonal(&r, &[rat(1, a), rat(1, b), rat(1, c)])?;
                let lhs = l_inv.endo_product(&d.exp(lam, DEFAULT_LND_BOUND)?)?.endo_product(&l)?;
                let rhs = d.exp(&field.mul(lam, &rat(1, b * c)), DEFAULT_LND_BOUND)?;
                Ok(lhs == rhs)
            })();
            match outcome {
                Ok(true) => held += 1,
                other if first_failure.is_empty() => {
                    first_failure = format!("fails for diag({a},{b},{c}), lambda {}: {other:?}", field.format(lam));
                }
                _ => {}
            }
        }
    }
    let total = diagonals.len() * lambdas.len();
    checks.push(Check {
        name: format!("{held}/{total} conjugation identities hold"),
        ok: held == total,
        detail: first_failure,
    });

    checks.push(Check::new(
        "2I shift-linearizes N with mu = -4/3",
        (|| {
            let two = PolyMap::diagonal(&r, &[rat(2, 1), rat(2, 1), rat(2, 1)])?;
            let rep = build_shift_linearization(&two, &d, &field.one(), DEFAULT_LND_BOUND)?;
            let (ok, detail) = eq_check(rep.conjugator.clone(), Some(rat(-4, 3)));
            Ok((ok && rep.verified && rep.conjugation_scalar == rat(1, 4), detail))
        })(),
    ));
    checks.push(Check::new(
        "L_2 = (8X, 2Y, Z/2) is degenerate",
        (|| {
            let rep = build_shift_linearization(&l_b(&field, &rat(2, 1))?, &d, &field.one(), DEFAULT_LND_BOUND)?;
            Ok((rep.degenerate && rep.conjugator.is_none(), String::new()))
        })(),
    ));
    checks.push(Check::new(
        "N over GF(3) is locally nilpotent with (3,2,1)",
        (|| {
            let g3 = Field::finite(3)?;
            let cert = nagata_derivation(&g3)?.verify_lnd(DEFAULT_LND_BOUND)?;
            Ok(eq_check(cert.indices, vec![3, 2, 1]))
        })(),
    ));
    checks
}

fn gradings_suite() -> Vec<Check> {
    let w = |v: &[i64]| WeightVector::from_ints(v);
    let k = |n: i64| num_rational::BigRational::from_integer(n.into());
    vec![
        Check::new(
            "Nagata grading space is spanned by (1,0,-1|-1), (0,1,2|3)",
            (|| {
                let sol = solve_gradings(&nagata_derivation(&q())?);
                Ok((
                    sol.dimension() == 2 && sol.same_span(&[(w(&[1, 0, -1]), k(-1)), (w(&[0, 1, 2]), k(3))]),
                    format!("dimension {}", sol.dimension()),
                ))
            })(),
        ),
        Check::new(
            "weights (s, t, 2t-s) give degree 3t-s",
            (|| {
                let nd = nagata_derivation(&q())?;
                for (s, t) in [(1, 0), (0, 1), (3, 1), (2, 5), (-4, 7)] {
                    let got = derivation_degree(&nd, &w(&[s, t, 2 * t - s]))?;
                    if got != k(3 * t - s) {
                        return Ok((false, format!("(s,t)=({s},{t}) gives {got}")));
                    }
                }
                Ok((true, String::new()))
            })(),
        ),
        Check::new(
            "d/dX on k[X] has degree -1 for weight 1",
            Ok(eq_check(
                solve_gradings(&Derivation::partial(&PolyRing::rationals(1), 0)).basis,
                vec![(w(&[1]), k(-1))],
            )),
        ),
        Check::new(
            "zero derivation admits every grading",
            Ok(eq_check(
                solve_gradings(&Derivation::zero(&PolyRing::rationals(2))).dimension(),
                3,
            )),
        ),
    ]
}

/// Monomials of degree ≤ d in three variables with `3α + β - γ = 0`.
fn weight_zero_count(d: u32) -> usize {
    let mut count = 0;
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                if 3 * a + b == c {
                    count += 1;
                }
            }
        }
    }
    count
}

fn fixedspace_suite() -> Vec<Check> {
    let field = q();
    let r = PolyRing::rationals(3);
    vec![
        Check::new(
            "profile of L_2 up to degree 4 matches monomial count",
            (|| {
                let oracle: Vec<usize> = (0..=4).map(weight_zero_count).collect();
                Ok(eq_check(fixed_dimension_profile(&l_b(&field, &rat(2, 1))?, 4)?, oracle))
            })(),
        ),
        Check::new(
            "profile of L_2 N up to degree 4 is (1,1,1,1,2)",
            (|| {
                let l2n = l_b(&field, &rat(2, 1))?.endo_product(&nagata_map(&field, &field.one())?)?;
                Ok(eq_check(fixed_dimension_profile(&l2n, 4)?, vec![1, 1, 1, 1, 2]))
            })(),
        ),
        Check::new(
            "fixed space of N contains Z, XZ + Y^2 and their product",
            (|| {
                let n = nagata_map(&field, &field.one())?;
                let e = fixed_space(&n, 4)?;
                let delta = nagata_delta(&r);
                let z = r.var(2);
                let zd = &z * &delta;
                Ok((
                    e.contains(&z)? && e.contains(&delta)? && e.contains(&zd)?,
                    format!("dimension {}", e.dimension()),
                ))
            })(),
        ),
        Check::new(
            "every basis element of the fixed space of N is fixed",
            (|| {
                let n = nagata_map(&field, &field.one())?;
                for p in fixed_space(&n, 4)?.basis {
                    if n.pullback(&p)? != p {
                        return Ok((false, p.to_string()));
                    }
                }
                Ok((true, String::new()))
            })(),
        ),
    ]
}

fn parity_suite() -> Vec<Check> {
    vec![
        Check::new(
            "N over GF(3) is an even permutation of 27 points",
            (|| {
                let g3 = Field::finite(3)?;
                let perm = map_to_permutation(&nagata_map(&g3, &g3.one())?, &PointTable::new(&g3, 3)?)?;
                Ok(eq_check((perm.len(), perm.sign()), (27, Parity::Even)))
            })(),
        ),
        Check::new(
            "X + 1 over GF(2) is a transposition",
            (|| {
                let g2 = Field::finite(2)?;
                let r = PolyRing::new(g2.clone(), 1);
                let perm = map_to_permutation(&PolyMap::parse(&r, "(X + 1)")?, &PointTable::new(&g2, 1)?)?;
                Ok(eq_check(perm.sign(), Parity::Odd))
            })(),
        ),
        Check::new(
            "200 tame words over GF(4)^2 are all even",
            (|| {
                let rep = parity_experiment(&Field::finite(4)?, 2, 200, 0, 5, 3)?;
                Ok(eq_check((rep.even, rep.odd), (200, 0)))
            })(),
        ),
        Check::new(
            "50 fibrewise words over GF(4)^3 are all even",
            (|| {
                let rep = fiberwise_experiment(&Field::finite(4)?, 50, 0, 5, 3)?;
                Ok(eq_check((rep.even, rep.odd), (50, 0)))
            })(),
        ),
        Check::new(
            "tame words over GF(3)^2 reach both parities",
            (|| {
                let rep = parity_experiment(&Field::finite(3)?, 2, 200, 0, 5, 3)?;
                Ok((
                    rep.even > 0 && rep.odd > 0,
                    format!("{} even, {} odd", rep.even, rep.odd),
                ))
            })(),
        ),
    ]
}

fn tame_suite() -> Vec<Check> {
    vec![
        Check::new(
            "E_f = L^-1 E_-2f L E_2f for f = Y^2 + Z",
            (|| {
                let r = PolyRing::rationals(3);
                let (lhs, rhs) = tame_identity_witness(&r.parse("Y^2 + Z")?)?;
                Ok((lhs == rhs, lhs.to_string()))
            })(),
        ),
        Check::new(
            "a word times its inverse is the identity",
            (|| {
                let r = PolyRing::rationals(3);
                let w = AutWord::parse(&r, "E[1; Y^2 - 3*Z] A[2,0,0,1,1,0,0,0,1; 1,0,-1] EXP[1/2; nagata]")?;
                Ok((w.concat(&w.inverse())?.realize()?.is_identity(), String::new()))
            })(),
        ),
        Check::new(
            "seeded word over GF(4)^2 is reproducible",
            (|| {
                let r = PolyRing::new(Field::finite(4)?, 2);
                let w = random_tame_word(1, &r, 5, 3)?;
                Ok(eq_check(
                w.to_string(),
                "A[t+1,t,t+1,1;0,1] A[0,t,1,t;0,t] E[2;t+1] E[2;(t+1)*X^3 + (t+1)*X^2 + t*X] E[1;Y^2 + (t+1)*Y + (t+1)]"
                    .to_string(),
            ))
            })(),
        ),
    ]
}

fn run_suite(name: &str) -> Vec<Check> {
    match name {
        "nagata" => nagata_suite(),
        "gradings" => gradings_suite(),
        "fixedspace" => fixedspace_suite(),
        "parity" => parity_suite(),
        "tame" => tame_suite(),
        _ => unreachable!("suite names are validated by the argument parser"),
    }
}

pub fn verify(suite: &str) -> CommandResult {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut text = String::new();
    let mut suites = Vec::new();
    let mut all_ok = true;
    for name in names {
        let checks = run_suite(name);
        let passed = checks.iter().filter(|c| c.ok).count();
        all_ok &= passed == checks.len();
        text.push_str(&format!("[{name}] {passed}/{} checks passed\n", checks.len()));
        for c in &checks {
            let mark = if c.ok { "PASS" } else { "FAIL" };
            if c.ok || c.detail.is_empty() {
                text.push_str(&format!("  {mark}  {}\n", c.name));
            } else {
                text.push_str(&format!("  {mark}  {}  ({})\n", c.name, c.detail));
            }
        }
        suites.push(json!({
            "name": name,
            "passed": passed,
            "total": checks.len(),
            "checks": checks
                .iter()
                .map(|c| json!({ "name": c.name, "ok": c.ok, "detail": c.detail }))
                .collect::<Vec<Value>>(),
        }));
    }
    text.push_str(if all_ok {
        "all checks passed\n"
    } else {
        "SOME CHECKS FAILED\n"
    });
    let json = json!({ "suite": suite, "allPassed": all_ok, "suites": suites });
    if all_ok {
        CommandResult::ok("verify", text, json)
    } else {
        CommandResult::failed("verify", text, json)
    }
}
