use std::fmt::Write as _;

use serde::Serialize;
use spectral_cone::horn::{
    check_horn, horn_inequalities, redundant_horn_inequalities, HornReport, HornTriple,
};
use spectral_cone::inequalities::{
    basic_system, check_spectra, dual_closed_candidate_system, generate_candidates_with_provenance,
    pruned_system, InequalityJson, InequalitySystem, Spectrum, SystemJson,
};
use spectral_cone::numeric::{
    dim2_realize, hermitian_eigenvalues, necessity_trials, partial_trace, summarize, Complex64,
    Realization, SpectrumKind, TrialOptions,
};
use spectral_cone::partition::Partition;
use spectral_cone::phi::{phi_star_expansion, phi_star_schur, PhiContext};
use spectral_cone::schubert::ClassJson;
use spectral_cone::symfun::ExpansionJson;

use crate::args::{
    CheckArgs, Cli, Command, Dim2Args, Format, HornArgs, InequalitiesArgs, PhiStarArgs,
    SystemChoice, VerifyArgs,
};
use crate::{input, Failure, Outcome, FINDINGS, OK};

const THREADS_VAR: &str = "SPECTRAL_CONE_THREADS";

pub fn run(cli: Cli) -> Result<Outcome, Failure> {
    let f = cli.format;
    match cli.command {
        Command::Inequalities(a) => inequalities(a, f),
        Command::PhiStar(a) => phi_star(a, f),
        Command::Horn(a) => horn(a, f),
        Command::Check(a) => check(a, f),
        Command::Verify(a) => with_thread_cap(|| verify(a, f)),
        Command::Dim2(a) => dim2(a, f),
    }
}

fn json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(|e| Failure::Internal(e.to_string()))
}

fn done(stdout: String, status: u8) -> Result<Outcome, Failure> {
    Ok(Outcome { stdout, status })
}

fn with_thread_cap<F>(f: F) -> Result<Outcome, Failure>
where
    F: FnOnce() -> Result<Outcome, Failure> + Send,
{
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return f();
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::Usage(format!(
            "{THREADS_VAR} must be a positive integer, got {raw:?}"
        ))
    })?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| Failure::Internal(e.to_string()))?;
    pool.install(f)
}

fn system_text(s: &InequalitySystem) -> String {
    let mut out = String::new();
    for q in s.inequalities() {
        let _ = writeln!(out, "{q}");
    }
    let _ = writeln!(out, "trace: sum(t) = sum(l)");
    out
}

fn inequalities(a: InequalitiesArgs, f: Format) -> Result<Outcome, Failure> {
    let (d_a, d_b) = a.dims.get();
    if a.raw {
        let cands = generate_candidates_with_provenance(d_a, d_b)?;
        let out = match f {
            Format::Json => {
                let raw = SystemJson {
                    d_a,
                    d_b,
                    trace: true,
                    inequalities: cands.iter().map(InequalityJson::from).collect(),
                };
                json(&raw)? + "\n"
            }
            Format::Text => {
                let mut out = String::new();
                for c in &cands {
                    let _ = writeln!(
                        out,
                        "k={} nu={} pi={} coeff={}  {}",
                        c.k,
                        c.nu,
                        c.pi,
                        c.coefficient,
                        c.inequality.le_text()
                    );
                }
                out
            }
        };
        return done(out, OK);
    }
    let s = pruned_system(d_a, d_b)?;
    let out = match f {
        Format::Json => s.to_json() + "\n",
        Format::Text => system_text(&s),
    };
    done(out, OK)
}

#[derive(Serialize)]
struct PhiStarOut {
    #[serde(rename = "d_A")]
    d_a: usize,
    #[serde(rename = "d_B")]
    d_b: usize,
    k: usize,
    pi: Partition,
    expansion: ExpansionJson,
    class: ClassJson,
}

fn phi_star(a: PhiStarArgs, f: Format) -> Result<Outcome, Failure> {
    let (d_a, d_b) = a.dims.get();
    let pi: Partition = a.pi.parse()?;
    let pc = PhiContext::new(d_a, d_b, a.k as usize)?;
    let expansion = phi_star_expansion(&pi, pc)?;
    let class = phi_star_schur(&pi, pc)?;
    let out = match f {
        Format::Json => {
            json(&PhiStarOut {
                d_a,
                d_b,
                k: pc.k(),
                pi,
                expansion: ExpansionJson::from(&expansion),
                class: class.to_json_value(),
            })? + "\n"
        }
        Format::Text => format!(
            "expansion: {expansion}\nclass in {}: {class}\n",
            pc.target()
        ),
    };
    done(out, OK)
}

#[derive(Serialize)]
struct HornOut {
    n: usize,
    trace: bool,
    inequalities: Vec<HornTriple>,
}

#[derive(Serialize)]
struct RedundantOut {
    n: usize,
    redundant: Vec<HornTriple>,
}

#[derive(serde::Deserialize)]
struct HornInput {
    alpha: Vec<f64>,
    beta: Vec<f64>,
    gamma: Vec<f64>,
}

fn horn_report_text(r: &HornReport) -> String {
    let mut out = format!(
        "checked {} inequalities; trace gap {:e}; {}\n",
        r.checked,
        r.trace_gap,
        if r.passed() { "pass" } else { "FAIL" }
    );
    for v in &r.violations {
        let _ = writeln!(out, "violated: {} (slack {:e})", v.triple, v.slack);
    }
    out
}

fn horn(a: HornArgs, f: Format) -> Result<Outcome, Failure> {
    let n = a.n as usize;
    if let Some(path) = &a.check {
        let raw: HornInput = serde_json::from_str(&input::read_file(path, "check")?)
            .map_err(|e| Failure::Usage(format!("--check: {e}")))?;
        let spec = |v: Vec<f64>| Spectrum::sorted(v).map_err(Failure::from);
        let (alpha, beta, gamma) = (spec(raw.alpha)?, spec(raw.beta)?, spec(raw.gamma)?);
        if alpha.len() != n {
            return Err(Failure::Usage(format!(
                "--check: spectra have length {}, expected {n}",
                alpha.len()
            )));
        }
        let report = check_horn(&alpha, &beta, &gamma, a.tol)?;
        let out = match f {
            Format::Json => json(&report)? + "\n",
            Format::Text => horn_report_text(&report),
        };
        return done(out, if report.passed() { OK } else { FINDINGS });
    }
    if a.redundant {
        let redundant = redundant_horn_inequalities(n)?;
        let out = match f {
            Format::Json => json(&RedundantOut { n, redundant })? + "\n",
            Format::Text => redundant.iter().map(|t| format!("{t}\n")).collect(),
        };
        return done(out, OK);
    }
    let inequalities = horn_inequalities(n)?;
    let out = match f {
        Format::Json => {
            json(&HornOut {
                n,
                trace: true,
                inequalities,
            })? + "\n"
        }
        Format::Text => {
            let mut out: String = inequalities.iter().map(|t| format!("{t}\n")).collect();
            out.push_str("trace: sum(g) = sum(a) + sum(b)\n");
            out
        }
    };
    done(out, OK)
}

fn chosen_system(
    choice: SystemChoice,
    d_a: usize,
    d_b: usize,
) -> Result<InequalitySystem, Failure> {
    Ok(match choice {
        SystemChoice::Basic => basic_system(d_a, d_b)?,
        SystemChoice::Candidates => dual_closed_candidate_system(d_a, d_b)?,
        SystemChoice::Pruned => pruned_system(d_a, d_b)?,
    })
}

fn check(a: CheckArgs, f: Format) -> Result<Outcome, Failure> {
    let (d_a, d_b) = a.dims.get();
    let lambda = input::spectrum(&a.spectrum, "spectrum")?;
    let reduced = input::spectrum(&a.reduced, "reduced")?;
    let system = chosen_system(a.system, d_a, d_b)?;
    let report = check_spectra(&lambda, &reduced, &system, a.tol)?;
    let out = match f {
        Format::Json => json(&report)? + "\n",
        Format::Text => {
            let mut out = format!(
                "checked {} inequalities; trace gap {:e}; {}\n",
                system.len(),
                report.trace_gap,
                if report.passed() { "pass" } else { "FAIL" }
            );
            for v in &report.violations {
                let _ = writeln!(out, "violated: {} (slack {:e})", v.inequality, v.slack);
            }
            out
        }
    };
    done(out, if report.passed() { OK } else { FINDINGS })
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a spectral_cone::numeric::TrialSummary,
    inequalities: Vec<String>,
}

fn verify(a: VerifyArgs, f: Format) -> Result<Outcome, Failure> {
    let (d_a, d_b) = a.dims.get();
    let system = chosen_system(a.system, d_a, d_b)?;
    let opts = TrialOptions {
        kind: if a.density {
            SpectrumKind::Density
        } else {
            SpectrumKind::Hermitian
        },
        tol: a.tol,
    };
    let records = necessity_trials(d_a, d_b, a.trials, a.seed, &system, opts)?;
    let summary = summarize(&records, a.tol);
    let mut out = String::new();
    match f {
        Format::Json => {
            for r in &records {
                out.push_str(&json(r)?);
                out.push('\n');
            }
            let line = SummaryLine {
                summary: &summary,
                inequalities: system
                    .inequalities()
                    .iter()
                    .map(|q| q.to_string())
                    .collect(),
            };
            out.push_str(&json(&line)?);
            out.push('\n');
        }
        Format::Text => {
            for r in records.iter().filter(|r| !r.passed(a.tol)) {
                let _ = writeln!(
                    out,
                    "trial {} (seed {}): violated {:?}",
                    r.trial, r.seed, r.violations
                );
            }
            let _ = writeln!(
                out,
                "{} trials, {} failed",
                summary.trials, summary.failed_trials
            );
            for (q, s) in system.inequalities().iter().zip(&summary.min_slack) {
                let _ = writeln!(out, "min slack {s:+.3e}  {q}");
            }
        }
    }
    done(
        out,
        if summary.failed_trials == 0 {
            OK
        } else {
            FINDINGS
        },
    )
}

#[derive(Serialize)]
struct MatrixJson {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct Dim2Out {
    feasible: bool,
    #[serde(rename = "d_B")]
    d_b: usize,
    t: f64,
    spectrum: Vec<f64>,
    reduced: Vec<f64>,
    matrix: MatrixJson,
}

fn dim2(a: Dim2Args, f: Format) -> Result<Outcome, Failure> {
    let d_b = a.d_b as usize;
    let lambda = input::spectrum(&a.spectrum, "spectrum")?;
    let target = input::spectrum(&a.target, "target")?;
    if lambda.len() != 2 * d_b {
        return Err(Failure::Usage(format!(
            "--spectrum has {} entries, expected 2·d_B = {}",
            lambda.len(),
            2 * d_b
        )));
    }
    match dim2_realize(&lambda, &target)? {
        r @ Realization::Infeasible { .. } => {
            let out = match (f, &r) {
                (Format::Json, _) => r.infeasibility_json().unwrap_or_default() + "\n",
                (Format::Text, Realization::Infeasible { reason }) => {
                    format!("infeasible: {reason}\n")
                }
                _ => unreachable!(),
            };
            done(out, FINDINGS)
        }
        Realization::Realized { matrix, t } => {
            let achieved = hermitian_eigenvalues(&matrix)?;
            let reduced = hermitian_eigenvalues(&partial_trace(&matrix, 2, d_b)?)?;
            let m = matrix.matrix();
            let n = m.dim();
            let grid = |part: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
                (0..n)
                    .map(|i| (0..n).map(|j| part(&m[(i, j)])).collect())
                    .collect()
            };
            let out = match f {
                Format::Json => {
                    json(&Dim2Out {
                        feasible: true,
                        d_b,
                        t,
                        spectrum: achieved.values().to_vec(),
                        reduced: reduced.values().to_vec(),
                        matrix: MatrixJson {
                            re: grid(|z| z.re),
                            im: grid(|z| z.im),
                        },
                    })? + "\n"
                }
                Format::Text => {
                    let mut out = format!(
                        "t = {t:.12}\nspectrum: {:?}\nreduced: {:?}\n",
                        achieved.values(),
                        reduced.values()
                    );
                    for i in 0..n {
                        let row: Vec<String> =
                            (0..n).map(|j| format!("{:+.6}", m[(i, j)].re)).collect();
                        let _ = writeln!(out, "{}", row.join(" "));
                    }
                    out
                }
            };
            done(out, OK)
        }
    }
}
