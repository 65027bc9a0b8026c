//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Uses a plain `main` so the report is printed without
//! `--nocapture`.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use spectral_cone::horn::{check_horn, horn_sets, redundant_horn_inequalities, HornTriple};
use spectral_cone::inequalities::{
    basic_system, check_spectra, dual_closed_candidate_system, large_db_audit, pruned_system,
    SpectralInequality, Spectrum,
};
use spectral_cone::majorization::{block_sum, flattening_implies, WeightedInequality};
use spectral_cone::numeric::{
    dim2_realize, hermitian_eigenvalues, necessity_trials, partial_trace, random_hermitian,
    summarize, HermitianMatrix, Realization, SpectrumKind, TrialOptions,
};
use spectral_cone::partition::{partitions_of, Partition};
use spectral_cone::phi::{phi_multiplicity, phi_star_expansion, phi_star_schur, PhiContext};
use spectral_cone::schubert::{duality_pairing, CohomologyClass, GrassContext};
use spectral_cone::symfun::{character, zmu, Basis, SymExpansion};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn bits(s: &str) -> spectral_cone::partition::BinaryString {
    s.parse().unwrap()
}

fn le(lhs: &str, rhs: &str) -> SpectralInequality {
    SpectralInequality::new(bits(lhs), bits(rhs)).unwrap()
}

fn ge(lhs: &str, rhs: &str) -> SpectralInequality {
    SpectralInequality::from_ge(bits(lhs), bits(rhs)).unwrap()
}

fn spec(v: &[f64]) -> Spectrum {
    Spectrum::new(v.to_vec()).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

type Row<'a> = (usize, &'a [usize], &'a [(&'a [usize], i64)]);

fn c1_phi_tables() -> Outcome {
    let table: [Row; 6] = [
        (2, &[1], &[(&[1], 2)]),
        (2, &[2], &[(&[2], 3), (&[1, 1], 1)]),
        (2, &[1, 1], &[(&[1, 1], 3), (&[2], 1)]),
        (3, &[1], &[(&[1], 3)]),
        (3, &[2], &[(&[2], 6), (&[1, 1], 3)]),
        (3, &[1, 1], &[(&[1, 1], 6), (&[2], 3)]),
    ];
    for (d_b, pi, want) in table {
        // Gr(2,4) holds every weight-2 class, so nothing is truncated away
        let pc = PhiContext::new(4, d_b, 2).map_err(fail)?;
        let got = phi_star_schur(&part(pi), pc).map_err(fail)?;
        let expected = CohomologyClass::from_terms(
            pc.target(),
            want.iter().map(|&(a, c)| (part(a), BigInt::from(c))),
        )
        .map_err(fail)?;
        ensure!(
            got == expected,
            "d_B={d_b} pi={pi:?}: got {}",
            got.to_json()
        );
    }
    Ok("six identities exact".into())
}

fn c2_pruned_3_2() -> Outcome {
    let got = pruned_system(3, 2).map_err(fail)?.as_set();
    let want: BTreeSet<_> = [
        le("100", "110000"),
        ge("001", "000011"),
        le("001", "011000"),
        ge("100", "000110"),
    ]
    .into_iter()
    .collect();
    ensure!(got == want, "got {got:?}");
    Ok("4 inequalities plus trace".into())
}

fn c3_pruned_3_3() -> Outcome {
    let got = pruned_system(3, 3).map_err(fail)?;
    let basic = basic_system(3, 3).map_err(fail)?;
    ensure!(got.len() == 2, "{} inequalities survive", got.len());
    ensure!(
        got.as_set() == basic.as_set(),
        "survivors are not the basic pair"
    );
    Ok("only the basic pair survives".into())
}

fn c4_redundancy_witness() -> Outcome {
    let pruned = pruned_system(3, 2).map_err(fail)?;
    for q in [le("010", "101000"), le("001", "100100")] {
        ensure!(pruned.implies(&q).map_err(fail)?, "{q} not implied");
    }
    let lambda = spec(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    let third = 1.0 / 3.0;
    let reduced = spec(&[third, third, third]);
    let basic = basic_system(3, 2).map_err(fail)?;
    let report = check_spectra(&lambda, &reduced, &basic, 1e-9).map_err(fail)?;
    ensure!(report.passed(), "witness fails the basic system");
    let slack = le("001", "011000").slack(lambda.values(), reduced.values());
    ensure!(slack <= -1e-9, "witness does not violate, slack {slack}");
    Ok(format!("two redundant, witness slack {slack:.4}"))
}

fn c5_large_db_audit() -> Outcome {
    for (a, b) in [(2, 2), (2, 3), (3, 5), (4, 8)] {
        ensure!(
            large_db_audit(a, b).map_err(fail)?,
            "audit fails at ({a},{b})"
        );
    }
    Ok("(2,2) (2,3) (3,5) (4,8)".into())
}

fn c6_only_basic() -> Outcome {
    for (a, b) in [(3, 3), (4, 4)] {
        let got = pruned_system(a, b).map_err(fail)?;
        let basic = basic_system(a, b).map_err(fail)?;
        ensure!(
            got.as_set() == basic.as_set(),
            "({a},{b}) keeps {} inequalities",
            got.len()
        );
    }
    Ok("(3,3) and (4,4) basic only".into())
}

fn c7_monte_carlo() -> Outcome {
    let opts = TrialOptions {
        kind: SpectrumKind::Hermitian,
        tol: 1e-9,
    };
    let mut lines = Vec::new();
    for (a, b, n) in [
        (2, 2, 1000),
        (3, 2, 1000),
        (3, 3, 1000),
        (4, 2, 1000),
        (4, 4, 200),
    ] {
        let system = dual_closed_candidate_system(a, b).map_err(fail)?;
        let records = necessity_trials(a, b, n, 2024, &system, opts).map_err(fail)?;
        let s = summarize(&records, opts.tol);
        ensure!(
            s.failed_trials == 0,
            "({a},{b}): {} failed trials",
            s.failed_trials
        );
        lines.push(format!("({a},{b})x{n}:{}", system.len()));
    }
    let mut bad = pruned_system(2, 2).map_err(fail)?;
    bad.push(le("10", "0110")).map_err(fail)?;
    let records = necessity_trials(2, 2, 100, 2024, &bad, opts).map_err(fail)?;
    let caught = summarize(&records, opts.tol).failed_trials;
    ensure!(caught > 0, "negative control never violated");
    Ok(format!("{}; control caught {caught}/100", lines.join(" ")))
}

fn c8_dim2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let d_b = rng.random_range(2..=5);
        let mut lambda: Vec<f64> = (0..2 * d_b).map(|_| rng.random::<f64>()).collect();
        let total: f64 = lambda.iter().sum();
        lambda.iter_mut().for_each(|x| *x /= total);
        lambda.sort_by(|a, b| b.total_cmp(a));
        let alpha = block_sum(&lambda, d_b).map_err(fail)?;
        let u: f64 = rng.random_range(0.5..=1.0);
        let top = alpha[1] + u * (alpha[0] - alpha[1]);
        let reduced = vec![top, alpha[0] + alpha[1] - top];
        let r = dim2_realize(&spec(&lambda), &spec(&reduced)).map_err(fail)?;
        let Realization::Realized { matrix, .. } = r else {
            return Err(format!("{lambda:?} / {reduced:?} not realized"));
        };
        let joint = hermitian_eigenvalues(&matrix).map_err(fail)?;
        let part_tr = partial_trace(&matrix, 2, d_b).map_err(fail)?;
        let marg = hermitian_eigenvalues(&part_tr).map_err(fail)?;
        for (x, y) in joint.values().iter().zip(&lambda) {
            worst = worst.max((x - y).abs());
        }
        for (x, y) in marg.values().iter().zip(&reduced) {
            worst = worst.max((x - y).abs());
        }
    }
    ensure!(worst.abs() <= 1e-9, "max deviation {worst:e}");
    Ok(format!("100 pairs, max deviation {worst:.1e}"))
}

fn c9_symmetric_functions() -> Outcome {
    for n in 0..=6 {
        for lambda in partitions_of(n) {
            let s = SymExpansion::basis_element(Basis::Schur, lambda.clone());
            let w = s.omega().map_err(fail)?;
            let conj = SymExpansion::basis_element(Basis::Schur, lambda.conjugate());
            ensure!(w == conj, "omega(s_{lambda}) != s_{}", lambda.conjugate());
            ensure!(
                w.omega().map_err(fail)? == s,
                "omega not an involution at {lambda}"
            );
            let back = s.to_power_sum().map_err(fail)?.to_schur().map_err(fail)?;
            ensure!(back == s, "s/p roundtrip fails at {lambda}");
        }
    }
    for n in 1..=5 {
        for lambda in partitions_of(n) {
            for mu in partitions_of(n) {
                let got = character(&lambda, &mu).map_err(fail)?;
                let want = character_oracle(&lambda, &mu);
                ensure!(got == want, "chi^{lambda}_{mu}: {got} vs {want}");
            }
        }
    }
    for n in 1..=6 {
        let parts = partitions_of(n);
        for a in &parts {
            for b in &parts {
                let mut sum = BigRational::zero();
                for mu in &parts {
                    let c = character(a, mu).map_err(fail)? * character(b, mu).map_err(fail)?;
                    sum += BigRational::new(BigInt::from(c), zmu(mu));
                }
                let want = if a == b {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                ensure!(sum == want, "orthogonality fails for {a}, {b}");
            }
        }
        let ones = Partition::column(n);
        let sq: i64 = parts
            .iter()
            .map(|l| character(l, &ones).map(|c| c * c))
            .sum::<Result<i64, _>>()
            .map_err(fail)?;
        let fact: i64 = (1..=n as i64).product();
        ensure!(
            sq == fact,
            "sum of squared dimensions {sq} != {fact} at n={n}"
        );
    }
    Ok("omega, roundtrip, characters, orthogonality".into())
}

fn c10_schubert() -> Outcome {
    for (k, n) in [(2, 4), (2, 5), (3, 6)] {
        let ctx = GrassContext::new(k, n).map_err(fail)?;
        let cells = partitions_in_box(k, n - k);
        let dim = k * (n - k);
        for a in &cells {
            let mut row_sum = 0;
            for b in cells.iter().filter(|b| a.weight() + b.weight() == dim) {
                let got = duality_pairing(a, b, ctx).map_err(fail)?;
                let want = i64::from(*b == box_complement(a, k, n - k));
                ensure!(got == want, "pairing {a},{b} in Gr({k},{n}): {got}");
                row_sum += got;
            }
            ensure!(
                row_sum == 1,
                "row {a} of the pairing matrix sums to {row_sum}"
            );
        }
    }
    let mut products = 0;
    for (k, n) in [(2, 4), (2, 5)] {
        let ctx = GrassContext::new(k, n).map_err(fail)?;
        let cells = partitions_in_box(k, n - k);
        for a in &cells {
            for b in &cells {
                let got = CohomologyClass::schubert(ctx, a.clone())
                    .and_then(|x| x.multiply(&CohomologyClass::schubert(ctx, b.clone())?))
                    .map_err(fail)?;
                for nu in &cells {
                    let want = lr_coefficient(a, b, nu);
                    ensure!(
                        got.coefficient(nu) == BigInt::from(want),
                        "Gr({k},{n}) {a}*{b} at {nu}: {} vs {want}",
                        got.coefficient(nu)
                    );
                }
                products += 1;
            }
        }
    }
    Ok(format!("pairing permutation matrices, {products} products"))
}

fn c11_phi_routes() -> Outcome {
    let mut checked = 0;
    for d_b in 1..=4 {
        // source box 6·d_B × 6·d_B holds every partition of weight ≤ 6
        let pc = PhiContext::new(12, d_b, 6).map_err(fail)?;
        for w in 0..=6 {
            for pi in partitions_of(w) {
                let expansion = phi_star_expansion(&pi, pc).map_err(fail)?;
                ensure!(expansion.is_integral(), "non-integral phi*(s_{pi})");
                for nu in partitions_of(w) {
                    let c = expansion.coefficient(&nu);
                    let m = phi_multiplicity(&pi, &nu, d_b).map_err(fail)?;
                    ensure!(
                        c == BigRational::from_integer(m.clone()),
                        "pi={pi} nu={nu} d_B={d_b}"
                    );
                    ensure!(m >= BigInt::zero(), "negative multiplicity");
                    if d_b == 1 {
                        let id = if pi == nu {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        };
                        ensure!(m == id, "d_B=1 is not the identity at {pi},{nu}");
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} coefficients agree"))
}

fn c12_horn() -> Outcome {
    let t = |i: &[usize], j: &[usize], k: &[usize]| {
        HornTriple::new(i.to_vec(), j.to_vec(), k.to_vec()).unwrap()
    };
    let t12 = horn_sets(1, 2).map_err(fail)?;
    let hand1 = [
        t(&[1], &[1], &[1]),
        t(&[1], &[2], &[2]),
        t(&[2], &[1], &[2]),
    ];
    ensure!(
        t12.iter().collect::<BTreeSet<_>>() == hand1.iter().collect(),
        "T_1^2 = {t12:?}"
    );
    ensure!(
        horn_sets(2, 2).map_err(fail)? == vec![t(&[1, 2], &[1, 2], &[1, 2])],
        "T_2^2 mismatch"
    );
    for n in 1..=4 {
        for r in 1..=n {
            let got: BTreeSet<_> = horn_sets(r, n)
                .map_err(fail)?
                .iter()
                .map(triple_key)
                .collect();
            ensure!(
                got == horn_oracle(r, n),
                "T_{r}^{n} differs from the recursion"
            );
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 2..=4 {
        for _ in 0..1000 {
            let a = random_hermitian(n, &mut rng);
            let b = random_hermitian(n, &mut rng);
            let c = HermitianMatrix::symmetrized(&(a.matrix() + b.matrix()));
            let (ea, eb, ec) = (
                hermitian_eigenvalues(&a).map_err(fail)?,
                hermitian_eigenvalues(&b).map_err(fail)?,
                hermitian_eigenvalues(&c).map_err(fail)?,
            );
            let report = check_horn(&ea, &eb, &ec, 1e-9).map_err(fail)?;
            ensure!(
                report.passed(),
                "Horn violation at n={n}: {:?}",
                report.violations
            );
        }
    }
    for n in 2..=5 {
        let red = redundant_horn_inequalities(n).map_err(fail)?;
        ensure!(red.is_empty(), "n={n} has redundant {red:?}");
    }
    let red6 = redundant_horn_inequalities(6).map_err(fail)?;
    ensure!(!red6.is_empty(), "no redundant inequality at n=6");
    Ok(format!("n=6 redundant: {}", red6.len()))
}

fn c13_flattening() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let n = rng.random_range(1..=4);
        let mut p: Vec<BigRational> = (0..n).map(|_| rat(rng.random_range(0..20), 7)).collect();
        p.sort_by(|a, b| b.cmp(a));
        let mut perms: Vec<Vec<usize>> = Vec::new();
        for _ in 0..3 {
            let mut s: Vec<usize> = (0..n).collect();
            s.shuffle(&mut rng);
            perms.push(s);
        }
        let weights: Vec<BigRational> = (0..3).map(|_| rat(rng.random_range(1..5), 1)).collect();
        let total = weights.iter().fold(BigRational::zero(), |a, w| a + w);
        let q: Vec<BigRational> = (0..n)
            .map(|i| {
                perms
                    .iter()
                    .zip(&weights)
                    .fold(BigRational::zero(), |a, (s, w)| a + w * &p[s[i]])
                    / &total
            })
            .collect();
        let mut ineqs = Vec::new();
        for _ in 0..3 {
            let block_sums: Vec<BigRational> =
                (0..n).map(|_| rat(rng.random_range(0..10), 3)).collect();
            ineqs.push(WeightedInequality {
                lhs: rat(rng.random_range(0..30), 5),
                block_sums,
            });
        }
        // one inequality tight at the worst reordering of p
        let block_sums: Vec<BigRational> = (0..n).map(|i| rat(i as i64 + 1, 1)).collect();
        let ascending: Vec<BigRational> = p.iter().rev().cloned().collect();
        let lhs = block_sums
            .iter()
            .zip(&ascending)
            .fold(BigRational::zero(), |a, (x, y)| a + x * y);
        ineqs.push(WeightedInequality { lhs, block_sums });
        ensure!(
            flattening_implies(&p, &q, &ineqs).map_err(fail)?,
            "fails for p={p:?} q={q:?}"
        );
    }
    Ok("200 pairs, identity and implication exact".into())
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            name: "phi* golden tables",
            budget: secs(1),
            run: c1_phi_tables,
        },
        Criterion {
            name: "pruned system (3,2)",
            budget: secs(5),
            run: c2_pruned_3_2,
        },
        Criterion {
            name: "pruned system (3,3)",
            budget: secs(5),
            run: c3_pruned_3_3,
        },
        Criterion {
            name: "redundancy witnesses",
            budget: secs(60),
            run: c4_redundancy_witness,
        },
        Criterion {
            name: "large d_B audit",
            budget: secs(120),
            run: c5_large_db_audit,
        },
        Criterion {
            name: "basic-only spot check",
            budget: secs(600),
            run: c6_only_basic,
        },
        Criterion {
            name: "Monte Carlo necessity",
            budget: secs(120),
            run: c7_monte_carlo,
        },
        Criterion {
            name: "d_A=2 sufficiency",
            budget: secs(10),
            run: c8_dim2,
        },
        Criterion {
            name: "symmetric functions",
            budget: secs(30),
            run: c9_symmetric_functions,
        },
        Criterion {
            name: "Schubert calculus",
            budget: secs(30),
            run: c10_schubert,
        },
        Criterion {
            name: "phi* route agreement",
            budget: secs(60),
            run: c11_phi_routes,
        },
        Criterion {
            name: "Horn suite",
            budget: secs(900),
            run: c12_horn,
        },
        Criterion {
            name: "flattening property",
            budget: secs(10),
            run: c13_flattening,
        },
    ];
    let mut failures = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match result {
            Ok(detail) if took > c.budget => Err(format!("{detail}; over budget {:?}", c.budget)),
            other => other,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if result.is_err() {
            failures += 1;
        }
        println!(
            "{tag} {:>2} {:<24} {:>9.3}s  {detail}",
            i + 1,
            c.name,
            took.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
