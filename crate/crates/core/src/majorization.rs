//! Majorization, block flattening, the Nielsen convertibility test, and an
//! exact check that weighted inequalities valid for every reordering of a
//! weight vector `p` stay valid for any `q ≺ p`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

const TOL: f64 = 1e-12;

fn sorted_desc(v: &[f64], len: usize) -> Vec<f64> {
    let mut out = v.to_vec();
    out.resize(len, 0.0);
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

/// `q ≺ p`. Shorter vectors are padded with zeros. Partial sums are compared
/// with an absolute tolerance of `1e-12` times the largest magnitude.
pub fn majorizes(p: &[f64], q: &[f64]) -> bool {
    let scale = p.iter().chain(q).fold(1.0f64, |m, v| m.max(v.abs()));
    majorizes_with_tol(p, q, TOL * scale * (p.len().max(q.len()) as f64))
}

pub fn majorizes_with_tol(p: &[f64], q: &[f64], tol: f64) -> bool {
    let n = p.len().max(q.len());
    let (p, q) = (sorted_desc(p, n), sorted_desc(q, n));
    let (mut sp, mut sq) = (0.0, 0.0);
    for i in 0..n {
        sp += p[i];
        sq += q[i];
        if sq > sp + tol {
            return false;
        }
    }
    (sp - sq).abs() <= tol
}

fn sorted_desc_exact(v: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = v.to_vec();
    out.resize(len, BigRational::zero());
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Exact `q ≺ p`.
pub fn majorizes_exact(p: &[BigRational], q: &[BigRational]) -> bool {
    let n = p.len().max(q.len());
    let (p, q) = (sorted_desc_exact(p, n), sorted_desc_exact(q, n));
    let (mut sp, mut sq) = (BigRational::zero(), BigRational::zero());
    for i in 0..n {
        sp += &p[i];
        sq += &q[i];
        if sq > sp {
            return false;
        }
    }
    sp == sq
}

/// Sums successive blocks of `n` entries; a shorter final block is summed
/// as it stands.
pub fn block_sum(v: &[f64], n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Precondition("block size must be positive".into()));
    }
    Ok(v.chunks(n).map(|c| c.iter().sum()).collect())
}

/// Whether a pure state with Schmidt coefficients `src` can be converted to
/// one with Schmidt coefficients `dst` by LOCC: `src ≺ dst`.
pub fn nielsen_feasible(src: &[f64], dst: &[f64]) -> Result<bool> {
    if let Some(v) = src.iter().chain(dst).find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::NegativeEntry(*v));
    }
    Ok(majorizes(dst, src))
}

/// A doubly stochastic matrix `D` (row-major, exact) with `q = D p`, built
/// from T-transforms. Requires `q ≺ p` and equal lengths.
pub fn doubly_stochastic_between(
    p: &[BigRational],
    q: &[BigRational],
) -> Result<Vec<Vec<BigRational>>> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    if !majorizes_exact(p, q) {
        return Err(Error::NotMajorized("q is not majorized by p".into()));
    }
    let n = p.len();
    let order = |v: &[BigRational]| {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| v[b].cmp(&v[a]).then(a.cmp(&b)));
        idx
    };
    let (po, qo) = (order(p), order(q));
    let mut x: Vec<BigRational> = po.iter().map(|&i| p[i].clone()).collect();
    let y: Vec<BigRational> = qo.iter().map(|&i| q[i].clone()).collect();

    // Accumulate D' with y = D' x on the sorted vectors.
    let mut d = identity(n);
    while x != y {
        let j = (0..n)
            .rev()
            .find(|&j| x[j] > y[j])
            .expect("x != y with equal totals");
        let k = (j + 1..n)
            .find(|&k| x[k] < y[k])
            .ok_or_else(|| Error::Internal("T-transform step".into()))?;
        let delta = (&x[j] - &y[j]).min(&y[k] - &x[k]);
        let t = &delta / (&x[j] - &x[k]);
        let one_minus = BigRational::from_integer(1.into()) - &t;
        let (xj, xk) = (x[j].clone(), x[k].clone());
        x[j] = &one_minus * &xj + &t * &xk;
        x[k] = &t * &xj + &one_minus * &xk;
        // D' ← T D': rows j and k mix
        let (rj, rk) = (d[j].clone(), d[k].clone());
        for c in 0..n {
            d[j][c] = &one_minus * &rj[c] + &t * &rk[c];
            d[k][c] = &t * &rj[c] + &one_minus * &rk[c];
        }
    }

    // q = Qᵀ D' P p with P, Q the sorting permutations.
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for (a, &qi) in qo.iter().enumerate() {
        for (b, &pi) in po.iter().enumerate() {
            out[qi][pi] = d[a][b].clone();
        }
    }
    Ok(out)
}

fn identity(n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(((i == j) as i64).into()))
                .collect()
        })
        .collect()
}

/// Writes a doubly stochastic matrix as `Σ c_σ P_σ` with `(P_σ)_{i,σ(i)} = 1`,
/// peeling one permutation at a time.
pub fn birkhoff_decomposition(d: &[Vec<BigRational>]) -> Result<Vec<(Vec<usize>, BigRational)>> {
    let n = d.len();
    let mut m: Vec<Vec<BigRational>> = d.to_vec();
    if m.iter().flatten().any(|v| v.is_negative()) {
        return Err(Error::Precondition("matrix has a negative entry".into()));
    }
    let mut out = Vec::new();
    while m.iter().flatten().any(|v| !v.is_zero()) {
        let sigma = perfect_matching(&m)
            .ok_or_else(|| Error::Precondition("matrix is not doubly stochastic".into()))?;
        let c = (0..n).map(|i| m[i][sigma[i]].clone()).min().expect("n > 0");
        for i in 0..n {
            m[i][sigma[i]] -= &c;
        }
        out.push((sigma, c));
    }
    Ok(out)
}

/// A permutation supported on the positive entries (Kuhn's augmenting paths).
fn perfect_matching(m: &[Vec<BigRational>]) -> Option<Vec<usize>> {
    let n = m.len();
    let mut col_owner: Vec<Option<usize>> = vec![None; n];
    fn augment(
        row: usize,
        m: &[Vec<BigRational>],
        seen: &mut [bool],
        col_owner: &mut [Option<usize>],
    ) -> bool {
        for c in 0..m.len() {
            if m[row][c].is_positive() && !seen[c] {
                seen[c] = true;
                if col_owner[c].is_none_or(|r| augment(r, m, seen, col_owner)) {
                    col_owner[c] = Some(row);
                    return true;
                }
            }
        }
        false
    }
    for row in 0..n {
        let mut seen = vec![false; n];
        if !augment(row, m, &mut seen, &mut col_owner) {
            return None;
        }
    }
    let mut sigma = vec![0; n];
    for (c, r) in col_owner.iter().enumerate() {
        sigma[r.expect("perfect matching")] = c;
    }
    Some(sigma)
}

/// `Σ_K μ_k ≤ Σ_i w_i · block_sums[i]`, with `lhs = Σ_K μ_k` and
/// `block_sums[i] = Σ_{j∈J_i} λ_j` already evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedInequality {
    pub lhs: BigRational,
    pub block_sums: Vec<BigRational>,
}

impl WeightedInequality {
    pub fn rhs(&self, weights: &[BigRational]) -> BigRational {
        self.block_sums
            .iter()
            .zip(weights)
            .fold(BigRational::zero(), |acc, (s, w)| acc + s * w)
    }

    pub fn holds(&self, weights: &[BigRational]) -> bool {
        self.lhs <= self.rhs(weights)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// For `q ≺ p`: writes `q_i = Σ_σ c_σ p_{σ(i)}`, checks the identity
/// exactly, and for every inequality checks that `rhs(q) = Σ c_σ rhs(p∘σ)`
/// and that validity under all reorderings of `p` gives validity at `q`.
pub fn flattening_implies(
    p: &[BigRational],
    q: &[BigRational],
    inequalities: &[WeightedInequality],
) -> Result<bool> {
    let n = p.len();
    if let Some(ineq) = inequalities.iter().find(|i| i.block_sums.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            got: ineq.block_sums.len(),
        });
    }
    let d = doubly_stochastic_between(p, q)?;
    let parts = birkhoff_decomposition(&d)?;
    let reorder =
        |sigma: &[usize]| -> Vec<BigRational> { sigma.iter().map(|&s| p[s].clone()).collect() };

    let total = parts
        .iter()
        .fold(BigRational::zero(), |acc, (_, c)| acc + c);
    if total != BigRational::from_integer(1.into()) || parts.iter().any(|(_, c)| !c.is_positive()) {
        return Ok(false);
    }
    for (i, qi) in q.iter().enumerate() {
        let mixed = parts
            .iter()
            .fold(BigRational::zero(), |acc, (s, c)| acc + c * &p[s[i]]);
        if &mixed != qi {
            return Ok(false);
        }
    }

    let all = permutations(n);
    for ineq in inequalities {
        let combined = parts.iter().fold(BigRational::zero(), |acc, (s, c)| {
            acc + c * ineq.rhs(&reorder(s))
        });
        if combined != ineq.rhs(q) {
            return Ok(false);
        }
        let hypothesis = all.iter().all(|s| ineq.holds(&reorder(s)));
        if hypothesis && !ineq.holds(q) {
            return Ok(false);
        }
    }
    Ok(true)
}
