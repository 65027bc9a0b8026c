//! Exact arithmetic in the ring of symmetric functions.
//!
//! Expansions are sparse maps from partitions to rationals in one of the
//! five classical bases. Conversions route through the power-sum basis,
//! where multiplication is concatenation of partitions.

mod characters;
mod json;
mod pieri;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use characters::{character, dimension, zmu};
pub use json::{ExpansionJson, JsonInt, TermJson};
pub use pieri::{horizontal_strips, jacobi_trudi, pieri_multiply, vertical_strips, StripKind};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// Monomial symmetric functions. Output-only and experimental.
    Monomial,
    Elementary,
    Complete,
    PowerSum,
    Schur,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::Monomial => "m",
            Basis::Elementary => "e",
            Basis::Complete => "h",
            Basis::PowerSum => "p",
            Basis::Schur => "s",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        Ok(match tag {
            "m" => Basis::Monomial,
            "e" => Basis::Elementary,
            "h" => Basis::Complete,
            "p" => Basis::PowerSum,
            "s" => Basis::Schur,
            other => return Err(Error::Parse(format!("unknown basis tag {other:?}"))),
        })
    }
}

/// A finite rational combination of basis elements indexed by partitions.
#[derive(Clone, PartialEq, Eq)]
pub struct SymExpansion {
    basis: Basis,
    terms: BTreeMap<Partition, BigRational>,
    inhomogeneous: bool,
}

impl SymExpansion {
    pub fn zero(basis: Basis) -> Self {
        Self {
            basis,
            terms: BTreeMap::new(),
            inhomogeneous: false,
        }
    }

    /// An expansion allowed to mix weights.
    pub fn zero_inhomogeneous(basis: Basis) -> Self {
        Self {
            inhomogeneous: true,
            ..Self::zero(basis)
        }
    }

    /// A single basis element with coefficient one.
    pub fn basis_element(basis: Basis, index: Partition) -> Self {
        let mut x = Self::zero(basis);
        x.terms.insert(index, BigRational::one());
        x
    }

    pub fn from_terms<I>(basis: Basis, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, BigRational)>,
    {
        let mut x = Self::zero(basis);
        for (p, c) in terms {
            x.add_term(p, c)?;
        }
        Ok(x)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_inhomogeneous(&self) -> bool {
        self.inhomogeneous
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common weight of all terms; `None` for zero or mixed expansions.
    pub fn weight(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Partition::weight);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: &Partition) -> BigRational {
        self.terms
            .get(index)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Adds `c` to the coefficient of `index`, dropping it if it cancels.
    pub fn add_term(&mut self, index: Partition, c: BigRational) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if !self.inhomogeneous {
            if let Some(first) = self.terms.keys().next() {
                if first.weight() != index.weight() {
                    return Err(Error::WeightMismatch(first.weight(), index.weight()));
                }
            }
        }
        self.add_term_unchecked(index, c);
        Ok(())
    }

    fn add_term_unchecked(&mut self, index: Partition, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(index) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.empty_like(self.basis);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::UnsupportedBasis(
                "addition of expansions in different bases",
            ));
        }
        let mut out = self.clone();
        out.inhomogeneous |= other.inhomogeneous;
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn map_coefficients<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&Partition, &BigRational) -> BigRational,
    {
        let mut out = self.empty_like(self.basis);
        for (p, c) in &self.terms {
            out.add_term_unchecked(p.clone(), f(p, c));
        }
        out
    }

    /// Rewrites the expansion in the power-sum basis.
    pub fn to_power_sum(&self) -> Result<Self> {
        let mut out = self.empty_like(Basis::PowerSum);
        for (index, c) in &self.terms {
            let image = match self.basis {
                Basis::PowerSum => Self::basis_element(Basis::PowerSum, index.clone()),
                Basis::Schur => schur_to_power(index),
                Basis::Complete | Basis::Elementary => {
                    let mut acc = Self::basis_element(Basis::PowerSum, Partition::empty());
                    for &k in index.parts() {
                        let factor = if self.basis == Basis::Complete {
                            complete_to_power(k)
                        } else {
                            elementary_to_power(k)
                        };
                        acc = power_product(&acc, &factor);
                    }
                    acc
                }
                Basis::Monomial => {
                    return Err(Error::UnsupportedBasis("monomial basis is output-only"))
                }
            };
            for (p, v) in image.terms {
                out.add_term_unchecked(p, v * c);
            }
        }
        Ok(out)
    }

    /// Rewrites the expansion in the Schur basis (through power sums).
    pub fn to_schur(&self) -> Result<Self> {
        if self.basis == Basis::Schur {
            return Ok(self.clone());
        }
        let p = self.to_power_sum()?;
        let mut out = self.empty_like(Basis::Schur);
        for (mu, c) in &p.terms {
            for (lam, v) in power_to_schur(mu).terms {
                out.add_term_unchecked(lam, v * c);
            }
        }
        Ok(out)
    }

    /// Experimental: monomial expansion obtained by expanding each power sum
    /// directly into monomials. Exponential in the weight; meant for small
    /// expansions only.
    pub fn to_monomial(&self) -> Result<Self> {
        let p = self.to_power_sum()?;
        let mut out = self.empty_like(Basis::Monomial);
        for (mu, c) in &p.terms {
            for (lam, count) in power_to_monomial(mu) {
                out.add_term_unchecked(lam, BigRational::from_integer(count.into()) * c);
            }
        }
        Ok(out)
    }

    /// Rewrites the expansion in basis `target`.
    pub fn convert(&self, target: Basis) -> Result<Self> {
        if target == self.basis {
            return Ok(self.clone());
        }
        match target {
            Basis::PowerSum => self.to_power_sum(),
            Basis::Schur => self.to_schur(),
            Basis::Monomial => self.to_monomial(),
            Basis::Complete => self.to_schur()?.schur_to_complete(),
            Basis::Elementary => {
                // ω(x) = Σ c_α h_α  implies  x = Σ c_α e_α
                let mut out = self.to_schur()?.omega()?.schur_to_complete()?;
                out.basis = Basis::Elementary;
                Ok(out)
            }
        }
    }

    fn schur_to_complete(&self) -> Result<Self> {
        let mut out = self.empty_like(Basis::Complete);
        for (lam, c) in &self.terms {
            for (p, v) in jacobi_trudi(lam).terms {
                out.add_term_unchecked(p, v * c);
            }
        }
        Ok(out)
    }

    /// The involution ω: `e_α ↔ h_α`, `p_μ ↦ ε_μ p_μ`, `s_λ ↦ s_{λ'}`.
    pub fn omega(&self) -> Result<Self> {
        let mut out = self.empty_like(match self.basis {
            Basis::Elementary => Basis::Complete,
            Basis::Complete => Basis::Elementary,
            b => b,
        });
        for (p, c) in &self.terms {
            match self.basis {
                Basis::Elementary | Basis::Complete => out.add_term_unchecked(p.clone(), c.clone()),
                Basis::PowerSum => {
                    let c = if (p.weight() - p.length()) % 2 == 0 {
                        c.clone()
                    } else {
                        -c
                    };
                    out.add_term_unchecked(p.clone(), c);
                }
                Basis::Schur => out.add_term_unchecked(p.conjugate(), c.clone()),
                Basis::Monomial => {
                    return Err(Error::UnsupportedBasis(
                        "ω is not closed on the monomial basis",
                    ))
                }
            }
        }
        Ok(out)
    }

    /// Product of two Schur expansions. The second factor is expanded in `h`
    /// by Jacobi–Trudi and applied through repeated Pieri steps.
    pub fn multiply_schur(&self, other: &Self) -> Result<Self> {
        if self.basis != Basis::Schur || other.basis != Basis::Schur {
            return Err(Error::UnsupportedBasis(
                "multiply_schur expects Schur expansions",
            ));
        }
        let mut out = Self {
            basis: Basis::Schur,
            terms: BTreeMap::new(),
            inhomogeneous: self.inhomogeneous || other.inhomogeneous,
        };
        for (beta, cb) in &other.terms {
            for (gamma, cg) in jacobi_trudi(beta).terms {
                let mut acc = self.clone();
                for &k in gamma.parts() {
                    acc = pieri_multiply(&acc, StripKind::Horizontal, k)?;
                }
                let scale = cb * cg;
                for (p, v) in acc.terms {
                    out.add_term_unchecked(p, v * &scale);
                }
            }
        }
        Ok(out)
    }

    fn empty_like(&self, basis: Basis) -> Self {
        Self {
            basis,
            terms: BTreeMap::new(),
            inhomogeneous: self.inhomogeneous,
        }
    }
}

impl fmt::Display for SymExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}·")?;
            }
            write!(f, "{}{}", self.basis.tag(), p)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn rational(n: i64, d: &BigInt) -> BigRational {
    BigRational::new(BigInt::from(n), d.clone())
}

/// `s_λ = Σ_μ χ^λ_μ / z(μ) · p_μ`.
pub fn schur_to_power(lambda: &Partition) -> SymExpansion {
    let mut out = SymExpansion::zero(Basis::PowerSum);
    for mu in partitions_of(lambda.weight()) {
        let chi = character(lambda, &mu).expect("weights agree");
        out.add_term_unchecked(mu.clone(), rational(chi, &zmu(&mu)));
    }
    out
}

/// `p_μ = Σ_λ χ^λ_μ · s_λ`.
pub fn power_to_schur(mu: &Partition) -> SymExpansion {
    let mut out = SymExpansion::zero(Basis::Schur);
    for lam in partitions_of(mu.weight()) {
        let chi = character(&lam, mu).expect("weights agree");
        out.add_term_unchecked(lam, BigRational::from_integer(chi.into()));
    }
    out
}

/// `h_n = Σ_μ p_μ / z(μ)`.
fn complete_to_power(n: usize) -> SymExpansion {
    let mut out = SymExpansion::zero(Basis::PowerSum);
    for mu in partitions_of(n) {
        out.add_term_unchecked(mu.clone(), rational(1, &zmu(&mu)));
    }
    out
}

/// `e_n = Σ_μ ε_μ p_μ / z(μ)`.
fn elementary_to_power(n: usize) -> SymExpansion {
    let mut out = SymExpansion::zero(Basis::PowerSum);
    for mu in partitions_of(n) {
        let sign = if (n - mu.length()).is_multiple_of(2) {
            1
        } else {
            -1
        };
        out.add_term_unchecked(mu.clone(), rational(sign, &zmu(&mu)));
    }
    out
}

fn power_product(a: &SymExpansion, b: &SymExpansion) -> SymExpansion {
    let mut out = SymExpansion {
        basis: Basis::PowerSum,
        terms: BTreeMap::new(),
        inhomogeneous: a.inhomogeneous || b.inhomogeneous,
    };
    for (pa, ca) in &a.terms {
        for (pb, cb) in &b.terms {
            let mut parts = pa.parts().to_vec();
            parts.extend_from_slice(pb.parts());
            out.add_term_unchecked(Partition::from_unsorted(parts), ca * cb);
        }
    }
    out
}

/// Coefficients of `p_μ` in the monomial basis: the number of ways to drop
/// the parts of `μ` into rows so that the row sums read `λ`.
fn power_to_monomial(mu: &Partition) -> BTreeMap<Partition, i64> {
    let parts = mu.parts();
    let n = parts.len();
    let mut out = BTreeMap::new();
    // Assign each part a row index in 0..n; count assignments whose row sums
    // form a weakly decreasing vector.
    let mut assign = vec![0usize; n];
    loop {
        let mut rows = vec![0usize; n];
        for (i, &r) in assign.iter().enumerate() {
            rows[r] += parts[i];
        }
        if let Ok(lam) = Partition::new(rows) {
            // row sums must be decreasing as a vector, including interior zeros
            *out.entry(lam).or_insert(0) += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            assign[i] += 1;
            if assign[i] < n {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}
