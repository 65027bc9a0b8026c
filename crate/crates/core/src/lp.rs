//! Exact rational simplex for problems whose origin is feasible, and the
//! boxed-cone redundancy test built on it.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Outcome of [`maximize`].
#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        value: BigRational,
        point: Vec<BigRational>,
    },
    Unbounded,
}

/// Maximizes `c·x` subject to `A x ≤ b`, `x ≥ 0`, where every `b_i ≥ 0`.
///
/// Uses a dictionary (exchange) tableau with Bland's smallest-index rule for
/// both entering and leaving variables, so degenerate problems terminate.
pub fn maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> Result<LpOutcome> {
    let m = a.len();
    let n = c.len();
    if b.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            got: b.len(),
        });
    }
    if let Some(row) = a.iter().find(|r| r.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            got: row.len(),
        });
    }
    if b.iter().any(|v| v.is_negative()) {
        return Err(Error::Precondition(
            "origin must be feasible (b >= 0)".into(),
        ));
    }

    // Labels 0..n are structural variables, n..n+m are slacks.
    let mut col_label: Vec<usize> = (0..n).collect();
    let mut row_label: Vec<usize> = (n..n + m).collect();
    let mut rows: Vec<Vec<BigRational>> = a.to_vec();
    let mut rhs: Vec<BigRational> = b.to_vec();
    let mut obj: Vec<BigRational> = c.to_vec();
    let mut value = BigRational::zero();

    loop {
        let entering = (0..n)
            .filter(|&j| obj[j].is_positive())
            .min_by_key(|&j| col_label[j]);
        let Some(s) = entering else { break };

        let mut leaving: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if !rows[i][s].is_positive() {
                continue;
            }
            let ratio = &rhs[i] / &rows[i][s];
            let better = match &leaving {
                None => true,
                Some((r, best)) => {
                    ratio < *best || (ratio == *best && row_label[i] < row_label[*r])
                }
            };
            if better {
                leaving = Some((i, ratio));
            }
        }
        let Some((r, _)) = leaving else {
            return Ok(LpOutcome::Unbounded);
        };

        pivot(&mut rows, &mut rhs, &mut obj, &mut value, r, s);
        std::mem::swap(&mut row_label[r], &mut col_label[s]);
    }

    let mut point = vec![BigRational::zero(); n];
    for (i, &label) in row_label.iter().enumerate() {
        if label < n {
            point[label] = rhs[i].clone();
        }
    }
    Ok(LpOutcome::Optimal { value, point })
}

fn pivot(
    rows: &mut [Vec<BigRational>],
    rhs: &mut [BigRational],
    obj: &mut [BigRational],
    value: &mut BigRational,
    r: usize,
    s: usize,
) {
    let n = obj.len();
    let inv = BigRational::one() / &rows[r][s];
    for (j, x) in rows[r].iter_mut().enumerate() {
        if j != s && !x.is_zero() {
            *x *= &inv;
        }
    }
    rows[r][s] = inv.clone();
    rhs[r] *= &inv;

    let (pivot_row, pivot_rhs) = (rows[r].clone(), rhs[r].clone());
    for (i, row) in rows.iter_mut().enumerate() {
        if i == r || row[s].is_zero() {
            continue;
        }
        let factor = row[s].clone();
        for j in 0..n {
            if j != s && !pivot_row[j].is_zero() {
                row[j] -= &factor * &pivot_row[j];
            }
        }
        row[s] = -&factor * &inv;
        rhs[i] -= &factor * &pivot_rhs;
    }

    let factor = obj[s].clone();
    if !factor.is_zero() {
        for j in 0..n {
            if j != s && !pivot_row[j].is_zero() {
                obj[j] -= &factor * &pivot_row[j];
            }
        }
        obj[s] = -&factor * &inv;
        *value += &factor * &pivot_rhs;
    }
}

/// A linear form `Σ coeffs[j]·x_j` over free variables.
pub type LinearForm = Vec<BigRational>;

/// A polyhedral cone `{x : g(x) ≤ 0 for g in inequalities, e(x) = 0 for e in
/// equalities}` in `dim` free variables.
#[derive(Clone, Debug, Default)]
pub struct Cone {
    dim: usize,
    inequalities: Vec<LinearForm>,
    equalities: Vec<LinearForm>,
}

impl Cone {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            inequalities: Vec::new(),
            equalities: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `g(x) ≤ 0`.
    pub fn push_inequality(&mut self, g: LinearForm) {
        debug_assert_eq!(g.len(), self.dim);
        self.inequalities.push(g);
    }

    /// Adds `e(x) = 0`.
    pub fn push_equality(&mut self, e: LinearForm) {
        debug_assert_eq!(e.len(), self.dim);
        self.equalities.push(e);
    }

    pub fn inequalities(&self) -> &[LinearForm] {
        &self.inequalities
    }

    /// Maximum of `f` over the cone intersected with the box `|x_j| ≤ 1`.
    /// The cone contains the origin, so the result is always `≥ 0`; it is
    /// zero exactly when `f ≤ 0` is implied by the cone's constraints.
    pub fn boxed_maximum(&self, f: &LinearForm) -> Result<BigRational> {
        self.boxed_maximum_excluding(f, None)
    }

    /// As [`Cone::boxed_maximum`] with inequality `skip` left out.
    pub fn boxed_maximum_excluding(
        &self,
        f: &LinearForm,
        skip: Option<usize>,
    ) -> Result<BigRational> {
        if f.len() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: f.len(),
            });
        }
        let reduction = Reduction::new(self.dim, &self.equalities)?;
        let d = reduction.free.len();

        // Split every free variable y = u - v with 0 ≤ u, v ≤ 1.
        let split = |form: &[BigRational]| -> Vec<BigRational> {
            let reduced = reduction.apply(form);
            let mut row = Vec::with_capacity(2 * d);
            row.extend(reduced.iter().cloned());
            row.extend(reduced.iter().map(|v| -v));
            row
        };

        let mut a = Vec::new();
        let mut b = Vec::new();
        for (i, g) in self.inequalities.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            a.push(split(g));
            b.push(BigRational::zero());
        }
        for j in 0..2 * d {
            let mut row = vec![BigRational::zero(); 2 * d];
            row[j] = BigRational::one();
            a.push(row);
            b.push(BigRational::one());
        }
        // eliminated variables stay inside the box as well
        for &p in &reduction.pivots {
            let mut unit = vec![BigRational::zero(); self.dim];
            unit[p] = BigRational::one();
            let row = split(&unit);
            a.push(row.iter().map(|v| -v).collect());
            a.push(row);
            b.push(BigRational::one());
            b.push(BigRational::one());
        }
        match maximize(&a, &b, &split(f))? {
            LpOutcome::Optimal { value, .. } => Ok(value),
            LpOutcome::Unbounded => Err(Error::Internal("boxed LP reported unbounded".into())),
        }
    }

    /// Whether `f ≤ 0` follows from the cone's constraints.
    pub fn implies(&self, f: &LinearForm) -> Result<bool> {
        Ok(self.boxed_maximum(f)?.is_zero())
    }

    /// Whether inequality `index` follows from the others.
    pub fn is_redundant(&self, index: usize) -> Result<bool> {
        let g = &self.inequalities[index];
        Ok(self.boxed_maximum_excluding(g, Some(index))?.is_zero())
    }

    /// Farkas form of [`Cone::implies`]: `f ≤ 0` is implied iff `f` is a
    /// nonnegative combination of the inequality forms plus a combination of
    /// the equalities. The LP has one row per variable, which is much
    /// smaller than the boxed primal when there are many inequalities.
    pub fn implies_by_certificate(&self, f: &LinearForm) -> Result<bool> {
        self.certificate_excluding(f, None)
    }

    /// Farkas form of [`Cone::is_redundant`].
    pub fn is_redundant_by_certificate(&self, index: usize) -> Result<bool> {
        self.certificate_excluding(&self.inequalities[index], Some(index))
    }

    fn certificate_excluding(&self, f: &LinearForm, skip: Option<usize>) -> Result<bool> {
        if f.len() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: f.len(),
            });
        }
        let negated: Vec<LinearForm> = self
            .equalities
            .iter()
            .map(|e| e.iter().map(|v| -v).collect())
            .collect();
        let generators: Vec<&LinearForm> = self
            .inequalities
            .iter()
            .enumerate()
            .filter(|&(i, _)| Some(i) != skip)
            .map(|(_, g)| g)
            .chain(self.equalities.iter())
            .chain(negated.iter())
            .collect();

        // Rows `Σ_j y_j g_j[r] ≤ |f[r]|` after flipping signs so the right
        // side is nonnegative; all rows are tight iff `Σ_j y_j g_j = f`.
        let mut a = Vec::with_capacity(self.dim);
        let mut b = Vec::with_capacity(self.dim);
        for r in 0..self.dim {
            let flip = f[r].is_negative();
            a.push(
                generators
                    .iter()
                    .map(|g| if flip { -&g[r] } else { g[r].clone() })
                    .collect::<Vec<_>>(),
            );
            b.push(f[r].abs());
        }
        let c: Vec<BigRational> = (0..generators.len())
            .map(|j| a.iter().fold(BigRational::zero(), |acc, row| acc + &row[j]))
            .collect();
        let target = b.iter().fold(BigRational::zero(), |acc, v| acc + v);
        match maximize(&a, &b, &c)? {
            LpOutcome::Optimal { value, .. } => Ok(value == target),
            LpOutcome::Unbounded => {
                Err(Error::Internal("certificate LP reported unbounded".into()))
            }
        }
    }
}

/// Elimination of equality constraints: each equality solves for one
/// pivot variable in terms of the remaining free ones.
struct Reduction {
    dim: usize,
    pivots: Vec<usize>,
    free: Vec<usize>,
    /// For each pivot, its expression as a form over all `dim` variables
    /// (zero on pivots).
    substitutions: Vec<LinearForm>,
}

impl Reduction {
    fn new(dim: usize, equalities: &[LinearForm]) -> Result<Self> {
        let mut pivots = Vec::new();
        let mut substitutions: Vec<LinearForm> = Vec::new();
        for e in equalities {
            let mut e = e.clone();
            for (p, sub) in pivots.iter().zip(&substitutions) {
                substitute(&mut e, *p, sub);
            }
            let Some(p) = (0..dim).rev().find(|&j| !e[j].is_zero()) else {
                continue;
            };
            // x_p = -Σ_{j≠p} e_j / e_p · x_j
            let scale = -BigRational::one() / &e[p];
            let mut sub: LinearForm = e.iter().map(|v| v * &scale).collect();
            sub[p] = BigRational::zero();
            for s in substitutions.iter_mut() {
                substitute(s, p, &sub);
            }
            pivots.push(p);
            substitutions.push(sub);
        }
        let free = (0..dim).filter(|j| !pivots.contains(j)).collect();
        Ok(Self {
            dim,
            pivots,
            free,
            substitutions,
        })
    }

    /// Rewrites a form over all variables as a form over the free ones.
    fn apply(&self, form: &[BigRational]) -> Vec<BigRational> {
        debug_assert_eq!(form.len(), self.dim);
        let mut full = form.to_vec();
        for (p, sub) in self.pivots.iter().zip(&self.substitutions) {
            substitute(&mut full, *p, sub);
        }
        self.free.iter().map(|&j| full[j].clone()).collect()
    }
}

fn substitute(form: &mut [BigRational], p: usize, sub: &[BigRational]) {
    if form[p].is_zero() {
        return;
    }
    let c = std::mem::replace(&mut form[p], BigRational::zero());
    for (f, s) in form.iter_mut().zip(sub) {
        if !s.is_zero() {
            *f += &c * s;
        }
    }
}
