//! Horn's inequalities for the spectra `α, β, γ` of Hermitian `X`, `Y` and
//! `X + Y` (all non-increasing): `Σ_K γ_k ≤ Σ_I α_i + Σ_J β_j` for every
//! `(I, J, K) ∈ T_r^n`, `r < n`, plus `Σγ = Σα + Σβ`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inequalities::Spectrum;
use crate::lp::{Cone, LinearForm};

/// Index sets are 1-based and sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HornTriple {
    pub r: usize,
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
}

impl HornTriple {
    pub fn new(i: Vec<usize>, j: Vec<usize>, k: Vec<usize>) -> Result<Self> {
        let r = i.len();
        if j.len() != r || k.len() != r {
            return Err(Error::LengthMismatch {
                expected: r,
                got: if j.len() != r { j.len() } else { k.len() },
            });
        }
        for set in [&i, &j, &k] {
            if set.contains(&0) || set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Precondition(format!(
                    "index set {set:?} must be strictly increasing and 1-based"
                )));
            }
        }
        Ok(Self { r, i, j, k })
    }

    /// `Σ I + Σ J = Σ K + r(r+1)/2`.
    pub fn balanced(&self) -> bool {
        let s = |v: &[usize]| v.iter().sum::<usize>();
        s(&self.i) + s(&self.j) == s(&self.k) + self.r * (self.r + 1) / 2
    }

    /// `Σ_I α + Σ_J β − Σ_K γ`; negative means violated.
    pub fn slack(&self, alpha: &[f64], beta: &[f64], gamma: &[f64]) -> f64 {
        let pick = |set: &[usize], v: &[f64]| set.iter().map(|&x| v[x - 1]).sum::<f64>();
        pick(&self.i, alpha) + pick(&self.j, beta) - pick(&self.k, gamma)
    }

    /// `γ_K − α_I − β_J` over the variables `(α, β, γ)`.
    pub fn linear_form(&self, n: usize) -> LinearForm {
        let mut g = vec![BigRational::zero(); 3 * n];
        for &x in &self.i {
            g[x - 1] -= BigRational::one();
        }
        for &x in &self.j {
            g[n + x - 1] -= BigRational::one();
        }
        for &x in &self.k {
            g[2 * n + x - 1] += BigRational::one();
        }
        g
    }
}

impl fmt::Display for HornTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |tag: &str, v: &[usize]| {
            v.iter()
                .map(|x| format!("{tag}{x}"))
                .collect::<Vec<_>>()
                .join("+")
        };
        write!(
            f,
            "{} <= {}+{}",
            join("g", &self.k),
            join("a", &self.i),
            join("b", &self.j)
        )
    }
}

/// Strictly increasing `r`-subsets of `{1..n}` in lexicographic order.
pub(crate) fn subsets(r: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < r - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, r, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, r, n, &mut Vec::new(), &mut out);
    out
}

/// All balanced triples of `r`-subsets of `{1..n}`, in `(I, J, K)` order.
pub fn balanced_triples(r: usize, n: usize) -> Vec<HornTriple> {
    let sets = subsets(r, n);
    let sum = |v: &[usize]| v.iter().sum::<usize>();
    let shift = r * (r + 1) / 2;
    let mut by_sum: HashMap<usize, Vec<&Vec<usize>>> = HashMap::new();
    for k in &sets {
        by_sum.entry(sum(k)).or_default().push(k);
    }
    let mut out = Vec::new();
    for i in &sets {
        for j in &sets {
            let target = sum(i) + sum(j);
            if target < shift {
                continue;
            }
            if let Some(ks) = by_sum.get(&(target - shift)) {
                for &k in ks {
                    out.push(HornTriple {
                        r,
                        i: i.clone(),
                        j: j.clone(),
                        k: k.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Whether `t` satisfies every sub-inequality indexed by `T_p^r`, `p < r`.
fn passes_subinequalities(t: &HornTriple, lower: &[Arc<Vec<HornTriple>>]) -> bool {
    lower.iter().flat_map(|s| s.iter()).all(|sub| {
        let pick = |set: &[usize], from: &[usize]| set.iter().map(|&x| from[x - 1]).sum::<usize>();
        pick(&sub.i, &t.i) + pick(&sub.j, &t.j) <= pick(&sub.k, &t.k) + sub.r * (sub.r + 1) / 2
    })
}

type Memo = RwLock<HashMap<(usize, usize), Arc<Vec<HornTriple>>>>;

static MEMO: LazyLock<Memo> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// `T_r^n`, sorted by `(I, J, K)`.
pub fn horn_sets(r: usize, n: usize) -> Result<Vec<HornTriple>> {
    if r == 0 || r > n {
        return Err(Error::Precondition(format!(
            "need 1 <= r <= n, got r={r}, n={n}"
        )));
    }
    Ok(horn_sets_shared(r, n).as_ref().clone())
}

fn horn_sets_shared(r: usize, n: usize) -> Arc<Vec<HornTriple>> {
    if let Some(hit) = MEMO.read().expect("memo lock").get(&(r, n)) {
        return hit.clone();
    }
    let lower: Vec<_> = (1..r).map(|p| horn_sets_shared(p, r)).collect();
    let set: Vec<HornTriple> = balanced_triples(r, n)
        .into_iter()
        .filter(|t| passes_subinequalities(t, &lower))
        .collect();
    // A concurrent caller may have raced us; both computed the same value.
    MEMO.write()
        .expect("memo lock")
        .entry((r, n))
        .or_insert_with(|| Arc::new(set))
        .clone()
}

/// `T_r^n` for `r = 1..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornSystem {
    pub n: usize,
    pub triples: Vec<Vec<HornTriple>>,
}

impl HornSystem {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("n must be positive".into()));
        }
        let triples = (1..=n).map(|r| horn_sets(r, n)).collect::<Result<_>>()?;
        Ok(Self { n, triples })
    }

    /// `T_r^n`.
    pub fn level(&self, r: usize) -> &[HornTriple] {
        &self.triples[r - 1]
    }

    /// One triple per inequality, `r < n`.
    pub fn inequalities(&self) -> Vec<HornTriple> {
        self.triples[..self.n - 1]
            .iter()
            .flatten()
            .cloned()
            .collect()
    }
}

/// Triples of `T_r^n` for all `r < n`; the trace condition is implicit.
pub fn horn_inequalities(n: usize) -> Result<Vec<HornTriple>> {
    Ok(HornSystem::new(n)?.inequalities())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HornViolation {
    pub triple: HornTriple,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HornReport {
    /// `Σγ − Σα − Σβ`.
    pub trace_gap: f64,
    pub trace_ok: bool,
    pub checked: usize,
    pub violations: Vec<HornViolation>,
}

impl HornReport {
    pub fn passed(&self) -> bool {
        self.trace_ok && self.violations.is_empty()
    }
}

pub fn check_horn(
    alpha: &Spectrum,
    beta: &Spectrum,
    gamma: &Spectrum,
    tol: f64,
) -> Result<HornReport> {
    let n = alpha.len();
    for s in [beta, gamma] {
        if s.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: s.len(),
            });
        }
    }
    let trace_gap = gamma.trace() - alpha.trace() - beta.trace();
    let triples = if n == 0 {
        Vec::new()
    } else {
        horn_inequalities(n)?
    };
    let violations = triples
        .iter()
        .filter_map(|t| {
            let slack = t.slack(alpha.values(), beta.values(), gamma.values());
            (slack < -tol).then(|| HornViolation {
                triple: t.clone(),
                slack,
            })
        })
        .collect();
    Ok(HornReport {
        trace_gap,
        trace_ok: trace_gap.abs() <= tol,
        checked: triples.len(),
        violations,
    })
}

/// Ordering chains, trace equality and the given inequalities over
/// `(α, β, γ)`; returns the cone and the index of the first triple.
pub fn horn_cone(n: usize, triples: &[HornTriple]) -> (Cone, usize) {
    let dim = 3 * n;
    let mut cone = Cone::new(dim);
    for block in 0..3 {
        for i in 0..n.saturating_sub(1) {
            let mut g = vec![BigRational::zero(); dim];
            g[block * n + i] = -BigRational::one();
            g[block * n + i + 1] = BigRational::one();
            cone.push_inequality(g);
        }
    }
    let trace: LinearForm = (0..dim)
        .map(|x| BigRational::from_integer(BigInt::from(if x < 2 * n { 1 } else { -1 })))
        .collect();
    cone.push_equality(trace);
    let offset = cone.inequalities().len();
    for t in triples {
        cone.push_inequality(t.linear_form(n));
    }
    (cone, offset)
}

/// Horn inequalities implied by the remaining ones (each tested against
/// all others, not greedily).
pub fn redundant_horn_inequalities(n: usize) -> Result<Vec<HornTriple>> {
    let triples = horn_inequalities(n)?;
    let (cone, offset) = horn_cone(n, &triples);
    let mut out = Vec::new();
    for (idx, t) in triples.iter().enumerate() {
        if cone.is_redundant_by_certificate(offset + idx)? {
            out.push(t.clone());
        }
    }
    Ok(out)
}
