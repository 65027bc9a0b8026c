//! Linear inequalities between the spectrum `λ` of a Hermitian operator on
//! `A ⊗ B` (length `d_A·d_B`) and the spectrum `λ̃` of its partial trace
//! (length `d_A`), all in non-increasing order.
//!
//! An inequality is stored as a pair of 0/1 masks meaning
//! `Σ lhs_i λ̃_i ≤ Σ rhs_j λ_j`. Every system also carries the ordering
//! chains and the trace equality `Σ λ̃ = Σ λ`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{Cone, LinearForm};
use crate::partition::{BinaryString, Partition, Rectangle};
use crate::phi::{phi_star_schur, PhiContext};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectralInequality {
    lhs: BinaryString,
    rhs: BinaryString,
}

impl SpectralInequality {
    /// Requires `weight(rhs) = d_B · weight(lhs)` where `d_B = len(rhs) / len(lhs)`.
    pub fn new(lhs: BinaryString, rhs: BinaryString) -> Result<Self> {
        if lhs.is_empty() || !rhs.len().is_multiple_of(lhs.len()) {
            return Err(Error::InvalidDimensions(format!(
                "mask lengths {} and {} are not d_A and d_A*d_B",
                lhs.len(),
                rhs.len()
            )));
        }
        let d_b = rhs.len() / lhs.len();
        if lhs.weight() * d_b != rhs.weight() {
            return Err(Error::WeightMismatch(lhs.weight() * d_b, rhs.weight()));
        }
        Ok(Self { lhs, rhs })
    }

    /// Reads `Σ lhs λ̃ ≥ Σ rhs λ` and rewrites it in `≤` form through the
    /// trace equality.
    pub fn from_ge(lhs: BinaryString, rhs: BinaryString) -> Result<Self> {
        Self::new(complement(&lhs), complement(&rhs))
    }

    /// `Σ_{i≤k} λ̃_i ≤ Σ_{i≤k·d_B} λ_i`.
    pub fn basic(d_a: usize, d_b: usize, k: usize) -> Self {
        Self {
            lhs: prefix(d_a, k),
            rhs: prefix(d_a * d_b, k * d_b),
        }
    }

    pub fn lhs(&self) -> &BinaryString {
        &self.lhs
    }

    pub fn rhs(&self) -> &BinaryString {
        &self.rhs
    }

    pub fn d_a(&self) -> usize {
        self.lhs.len()
    }

    pub fn d_b(&self) -> usize {
        self.rhs.len() / self.lhs.len()
    }

    /// The same inequality in `≥` form: `Σ_{i∉lhs} λ̃_i ≥ Σ_{j∉rhs} λ_j`.
    pub fn ge_masks(&self) -> (BinaryString, BinaryString) {
        (complement(&self.lhs), complement(&self.rhs))
    }

    /// The inequality obtained by applying this one to `−ρ_AB`: sorting
    /// negated spectra reverses the index order, and the trace equality
    /// turns the resulting `≥` back into `≤` form.
    pub fn dual(&self) -> Self {
        Self {
            lhs: complement(&reverse(&self.lhs)),
            rhs: complement(&reverse(&self.rhs)),
        }
    }

    /// `lhs·λ̃ − rhs·λ` over the variables `(λ̃, λ)`.
    pub fn linear_form(&self) -> LinearForm {
        let unit = |b: bool, s: i64| BigRational::from_integer(BigInt::from(if b { s } else { 0 }));
        self.lhs
            .bits()
            .iter()
            .map(|&b| unit(b, 1))
            .chain(self.rhs.bits().iter().map(|&b| unit(b, -1)))
            .collect()
    }

    /// `Σ rhs λ − Σ lhs λ̃`; negative means violated.
    pub fn slack(&self, lambda: &[f64], reduced: &[f64]) -> f64 {
        let pick = |mask: &BinaryString, v: &[f64]| -> f64 {
            mask.bits()
                .iter()
                .zip(v)
                .filter(|(&b, _)| b)
                .map(|(_, x)| x)
                .sum()
        };
        pick(&self.rhs, lambda) - pick(&self.lhs, reduced)
    }

    /// `t2 <= 1+3`.
    pub fn le_text(&self) -> String {
        format!("{} <= {}", indices(&self.lhs, "t"), indices(&self.rhs, ""))
    }

    /// `t1 >= 4+5`.
    pub fn ge_text(&self) -> String {
        let (l, r) = self.ge_masks();
        format!("{} >= {}", indices(&l, "t"), indices(&r, ""))
    }
}

/// Uses whichever of the two equivalent forms has fewer `λ̃` terms.
impl fmt::Display for SpectralInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if 2 * self.lhs.weight() > self.d_a() {
            f.write_str(&self.ge_text())
        } else {
            f.write_str(&self.le_text())
        }
    }
}

impl fmt::Debug for SpectralInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.lhs, self.rhs)
    }
}

fn prefix(n: usize, k: usize) -> BinaryString {
    BinaryString::new((0..n).map(|i| i < k).collect())
}

fn complement(s: &BinaryString) -> BinaryString {
    BinaryString::new(s.bits().iter().map(|b| !b).collect())
}

fn reverse(s: &BinaryString) -> BinaryString {
    BinaryString::new(s.bits().iter().rev().copied().collect())
}

fn indices(s: &BinaryString, tag: &str) -> String {
    let ones = s.ones();
    if ones.is_empty() {
        return "0".into();
    }
    ones.iter()
        .map(|i| format!("{tag}{i}"))
        .collect::<Vec<_>>()
        .join("+")
}

/// A candidate together with the Schubert data that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub k: usize,
    pub nu: Partition,
    pub pi: Partition,
    /// Coefficient of `σ_ν` in `φ*(σ_π)`.
    pub coefficient: BigInt,
    pub inequality: SpectralInequality,
}

/// Inequalities for fixed `(d_A, d_B)`; ordering chains and the trace
/// equality are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalitySystem {
    d_a: usize,
    d_b: usize,
    inequalities: Vec<SpectralInequality>,
}

impl InequalitySystem {
    pub fn new(d_a: usize, d_b: usize) -> Result<Self> {
        if d_a == 0 || d_b == 0 {
            return Err(Error::InvalidDimensions(format!("d_A={d_a}, d_B={d_b}")));
        }
        Ok(Self {
            d_a,
            d_b,
            inequalities: Vec::new(),
        })
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn inequalities(&self) -> &[SpectralInequality] {
        &self.inequalities
    }

    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    pub fn contains(&self, q: &SpectralInequality) -> bool {
        self.inequalities.contains(q)
    }

    /// Appends `q` unless already present; returns whether it was added.
    pub fn push(&mut self, q: SpectralInequality) -> Result<bool> {
        if q.d_a() != self.d_a || q.d_b() != self.d_b {
            return Err(Error::ContextMismatch(q.d_a(), q.d_b(), self.d_a, self.d_b));
        }
        if self.contains(&q) {
            return Ok(false);
        }
        self.inequalities.push(q);
        Ok(true)
    }

    pub fn as_set(&self) -> BTreeSet<SpectralInequality> {
        self.inequalities.iter().cloned().collect()
    }

    /// Ordering chains, trace equality and every inequality of the system,
    /// over the variables `(λ̃_1..λ̃_{d_A}, λ_1..λ_{d_A d_B})`. Returns the
    /// cone and the index of the first system inequality.
    pub fn cone(&self) -> (Cone, usize) {
        let (mut cone, offset) = structural_cone(self.d_a, self.d_b);
        for q in &self.inequalities {
            cone.push_inequality(q.linear_form());
        }
        (cone, offset)
    }

    /// Whether `q` follows from this system.
    pub fn implies(&self, q: &SpectralInequality) -> Result<bool> {
        self.cone().0.implies(&q.linear_form())
    }

    /// Whether member `index` follows from the other members.
    pub fn is_redundant(&self, index: usize) -> Result<bool> {
        let (cone, offset) = self.cone();
        cone.is_redundant(offset + index)
    }

    /// Both systems cut out the same region.
    pub fn equivalent_to(&self, other: &Self) -> Result<bool> {
        for q in &other.inequalities {
            if !self.implies(q)? {
                return Ok(false);
            }
        }
        for q in &self.inequalities {
            if !other.implies(q)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json_value(&self) -> SystemJson {
        SystemJson {
            d_a: self.d_a,
            d_b: self.d_b,
            trace: true,
            inequalities: self.inequalities.iter().map(InequalityJson::from).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("system serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SystemJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.to_system()
    }
}

fn structural_cone(d_a: usize, d_b: usize) -> (Cone, usize) {
    let n = d_a * d_b;
    let dim = d_a + n;
    let mut cone = Cone::new(dim);
    let mut chain = |first: usize, len: usize| {
        for i in first..first + len - 1 {
            let mut g = vec![BigRational::zero(); dim];
            g[i] = -BigRational::one();
            g[i + 1] = BigRational::one();
            cone.push_inequality(g);
        }
    };
    chain(0, d_a);
    chain(d_a, n);
    let trace: LinearForm = (0..dim)
        .map(|i| {
            if i < d_a {
                BigRational::one()
            } else {
                -BigRational::one()
            }
        })
        .collect();
    cone.push_equality(trace);
    let offset = cone.inequalities().len();
    (cone, offset)
}

/// `Σ_{i≤k} λ̃_i ≤ Σ_{i≤k d_B} λ_i` for `k = 1..d_A−1`; the `k = d_A` case is
/// the trace equality.
pub fn basic_system(d_a: usize, d_b: usize) -> Result<InequalitySystem> {
    let mut s = InequalitySystem::new(d_a, d_b)?;
    for k in 1..d_a {
        s.push(SpectralInequality::basic(d_a, d_b, k))?;
    }
    Ok(s)
}

/// Every `(ν, π)` with `σ_ν` in `φ*(σ_π)`, for `k ≤ d_A/2`, sorted by
/// `(k, ν, π)`. The same inequality may arise from several pairs.
pub fn generate_candidates_with_provenance(d_a: usize, d_b: usize) -> Result<Vec<Candidate>> {
    if d_a < 2 || d_b == 0 {
        return Err(Error::InvalidDimensions(format!(
            "need d_A >= 2, d_B >= 1; got {d_a}, {d_b}"
        )));
    }
    let mut out = Vec::new();
    for k in 1..=d_a / 2 {
        let pc = PhiContext::new(d_a, d_b, k)?;
        let target = Rectangle {
            rows: k,
            cols: d_a - k,
        };
        let source = Rectangle {
            rows: k * d_b,
            cols: (d_a - k) * d_b,
        };
        for w in 0..=target.area() {
            for pi in source.partitions_of_weight(w) {
                let image = phi_star_schur(&pi, pc)?;
                for (nu, c) in image.terms() {
                    if c.is_zero() {
                        continue;
                    }
                    let inequality = SpectralInequality::new(
                        nu.to_binary_string(d_a, k)?,
                        pi.to_binary_string(d_a * d_b, k * d_b)?,
                    )?;
                    out.push(Candidate {
                        k,
                        nu: nu.clone(),
                        pi: pi.clone(),
                        coefficient: c.clone(),
                        inequality,
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| (a.k, &a.nu, &a.pi).cmp(&(b.k, &b.nu, &b.pi)));
    Ok(out)
}

/// Distinct candidate inequalities in `(k, ν, π)` order.
pub fn generate_candidates(d_a: usize, d_b: usize) -> Result<Vec<SpectralInequality>> {
    let mut seen = BTreeSet::new();
    Ok(generate_candidates_with_provenance(d_a, d_b)?
        .into_iter()
        .filter_map(|c| seen.insert(c.inequality.clone()).then_some(c.inequality))
        .collect())
}

pub fn dualize(q: &SpectralInequality) -> SpectralInequality {
    q.dual()
}

/// Drops members implied by the rest, then adds the duals of the survivors
/// and drops again. Basic inequalities are never dropped; among equivalent
/// members the earliest one is kept.
pub fn prune(system: &InequalitySystem) -> Result<InequalitySystem> {
    let protected = basic_system(system.d_a, system.d_b)?.as_set();
    let first = drop_redundant(system, &protected)?;
    let mut closed = first.clone();
    for q in first.inequalities() {
        closed.push(q.dual())?;
    }
    drop_redundant(&closed, &protected)
}

fn drop_redundant(
    system: &InequalitySystem,
    protected: &BTreeSet<SpectralInequality>,
) -> Result<InequalitySystem> {
    // Walk from the back so that the earliest of several equivalent members survives.
    let mut keep = vec![true; system.len()];
    let (full, offset) = system.cone();
    for i in (0..system.len()).rev() {
        if protected.contains(&system.inequalities[i]) {
            continue;
        }
        let mut cone = structural_cone(system.d_a, system.d_b).0;
        for (j, g) in full.inequalities()[offset..].iter().enumerate() {
            if j != i && keep[j] {
                cone.push_inequality(g.clone());
            }
        }
        if cone.implies(&system.inequalities[i].linear_form())? {
            keep[i] = false;
        }
    }
    let mut out = InequalitySystem::new(system.d_a, system.d_b)?;
    for (q, k) in system.inequalities.iter().zip(keep) {
        if k {
            out.push(q.clone())?;
        }
    }
    Ok(out)
}

/// Basic inequalities followed by the candidates, in canonical order.
pub fn candidate_system(d_a: usize, d_b: usize) -> Result<InequalitySystem> {
    let mut s = basic_system(d_a, d_b)?;
    for q in generate_candidates(d_a, d_b)? {
        s.push(q)?;
    }
    Ok(s)
}

/// The candidate system together with the dual of every member.
pub fn dual_closed_candidate_system(d_a: usize, d_b: usize) -> Result<InequalitySystem> {
    let s = candidate_system(d_a, d_b)?;
    let mut out = s.clone();
    for q in s.inequalities() {
        out.push(q.dual())?;
    }
    Ok(out)
}

pub fn pruned_system(d_a: usize, d_b: usize) -> Result<InequalitySystem> {
    prune(&candidate_system(d_a, d_b)?)
}

/// For `d_B ≥ d_A²/2` every candidate and its dual should follow from the
/// basic inequalities. Returns whether that holds.
pub fn large_db_audit(d_a: usize, d_b: usize) -> Result<bool> {
    if 2 * d_b < d_a * d_a {
        return Err(Error::Precondition(format!(
            "need d_B >= d_A^2/2, got d_A={d_a}, d_B={d_b}"
        )));
    }
    let basic = basic_system(d_a, d_b)?;
    let cone = basic.cone().0;
    for q in generate_candidates(d_a, d_b)? {
        for r in [q.dual(), q] {
            if !cone.implies(&r.linear_form())? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Eigenvalues in non-increasing order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Rejects non-finite or increasing input.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse("spectrum has a non-finite entry".into()));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(
                "spectrum must be non-increasing".into(),
            ));
        }
        Ok(Self(values))
    }

    /// Sorts into non-increasing order; rejects non-finite input.
    pub fn sorted(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse("spectrum has a non-finite entry".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn trace(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<f64>> for Spectrum {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Spectrum::new(v)
    }
}

impl From<Spectrum> for Vec<f64> {
    fn from(s: Spectrum) -> Self {
        s.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub inequality: String,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectraReport {
    /// `Σ λ̃ − Σ λ`.
    pub trace_gap: f64,
    pub trace_ok: bool,
    pub slacks: Vec<f64>,
    pub violations: Vec<Violation>,
}

impl SpectraReport {
    pub fn passed(&self) -> bool {
        self.trace_ok && self.violations.is_empty()
    }
}

pub fn check_spectra(
    lambda: &Spectrum,
    reduced: &Spectrum,
    system: &InequalitySystem,
    tol: f64,
) -> Result<SpectraReport> {
    let n = system.d_a * system.d_b;
    if lambda.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: lambda.len(),
        });
    }
    if reduced.len() != system.d_a {
        return Err(Error::LengthMismatch {
            expected: system.d_a,
            got: reduced.len(),
        });
    }
    let trace_gap = reduced.trace() - lambda.trace();
    let mut slacks = Vec::with_capacity(system.len());
    let mut violations = Vec::new();
    for (index, q) in system.inequalities.iter().enumerate() {
        let slack = q.slack(lambda.values(), reduced.values());
        if slack < -tol {
            violations.push(Violation {
                index,
                inequality: q.to_string(),
                slack,
            });
        }
        slacks.push(slack);
    }
    Ok(SpectraReport {
        trace_gap,
        trace_ok: trace_gap.abs() <= tol,
        slacks,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "le")]
    Le,
    #[serde(rename = "ge")]
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityJson {
    pub lhs: Vec<u8>,
    pub rhs: Vec<u8>,
    pub sense: Sense,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Partition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Partition>,
}

impl From<&SpectralInequality> for InequalityJson {
    fn from(q: &SpectralInequality) -> Self {
        let bits = |s: &BinaryString| s.bits().iter().map(|&b| b as u8).collect();
        Self {
            lhs: bits(&q.lhs),
            rhs: bits(&q.rhs),
            sense: Sense::Le,
            nu: None,
            pi: None,
        }
    }
}

impl From<&Candidate> for InequalityJson {
    fn from(c: &Candidate) -> Self {
        Self {
            nu: Some(c.nu.clone()),
            pi: Some(c.pi.clone()),
            ..Self::from(&c.inequality)
        }
    }
}

impl InequalityJson {
    pub fn to_inequality(&self) -> Result<SpectralInequality> {
        let mask = |v: &[u8]| -> Result<BinaryString> {
            v.iter()
                .map(|&b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    _ => Err(Error::InvalidBinaryString(format!("{v:?}"))),
                })
                .collect::<Result<Vec<_>>>()
                .map(BinaryString::new)
        };
        let (l, r) = (mask(&self.lhs)?, mask(&self.rhs)?);
        match self.sense {
            Sense::Le => SpectralInequality::new(l, r),
            Sense::Ge => SpectralInequality::from_ge(l, r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    #[serde(rename = "d_A")]
    pub d_a: usize,
    #[serde(rename = "d_B")]
    pub d_b: usize,
    pub trace: bool,
    pub inequalities: Vec<InequalityJson>,
}

impl SystemJson {
    pub fn to_system(&self) -> Result<InequalitySystem> {
        let mut s = InequalitySystem::new(self.d_a, self.d_b)?;
        for q in &self.inequalities {
            s.push(q.to_inequality()?)?;
        }
        Ok(s)
    }
}
