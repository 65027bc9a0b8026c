//! Integral cohomology of the Grassmannian `Gr(k,n)` in the Schubert basis.
//!
//! Classes are indexed by partitions in the `k × (n-k)` rectangle. Products
//! lift to symmetric functions, multiply there, and truncate back.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{Partition, Rectangle};
use crate::symfun::{Basis, JsonInt, SymExpansion, TermJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrassContext {
    k: usize,
    n: usize,
}

impl GrassContext {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidDimensions(format!(
                "Gr({k},{n}) needs 1 <= k <= n"
            )));
        }
        Ok(Self { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The `k × (n-k)` rectangle of Schubert cell indices.
    pub fn rectangle(&self) -> Rectangle {
        Rectangle {
            rows: self.k,
            cols: self.n - self.k,
        }
    }

    pub fn dimension(&self) -> usize {
        self.k * (self.n - self.k)
    }

    /// Index of the point class.
    pub fn point(&self) -> Partition {
        self.rectangle().full()
    }

    pub fn contains(&self, alpha: &Partition) -> bool {
        alpha.fits_in(self.rectangle())
    }

    fn check(&self, alpha: &Partition) -> Result<()> {
        if self.contains(alpha) {
            Ok(())
        } else {
            Err(Error::NotInRectangle {
                partition: alpha.to_string(),
                rows: self.k,
                cols: self.n - self.k,
            })
        }
    }
}

impl fmt::Display for GrassContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({},{})", self.k, self.n)
    }
}

/// An integer combination of Schubert classes `σ_α`.
#[derive(Clone, PartialEq, Eq)]
pub struct CohomologyClass {
    ctx: GrassContext,
    terms: BTreeMap<Partition, BigInt>,
}

impl CohomologyClass {
    pub fn zero(ctx: GrassContext) -> Self {
        Self {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: GrassContext) -> Self {
        Self::schubert(ctx, Partition::empty()).expect("empty partition fits")
    }

    /// The single Schubert class `σ_α`.
    pub fn schubert(ctx: GrassContext, alpha: Partition) -> Result<Self> {
        ctx.check(&alpha)?;
        let mut terms = BTreeMap::new();
        terms.insert(alpha, BigInt::one());
        Ok(Self { ctx, terms })
    }

    pub fn from_terms<I>(ctx: GrassContext, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, BigInt)>,
    {
        let mut out = Self::zero(ctx);
        for (p, c) in terms {
            ctx.check(&p)?;
            out.add(p, c);
        }
        Ok(out)
    }

    fn add(&mut self, p: Partition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn context(&self) -> GrassContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &Partition) -> BigInt {
        self.terms.get(alpha).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of the point class.
    pub fn degree(&self) -> BigInt {
        self.coefficient(&self.ctx.point())
    }

    /// The class as a Schur expansion (the canonical lift).
    pub fn lift(&self) -> SymExpansion {
        let mut x = SymExpansion::zero_inhomogeneous(Basis::Schur);
        for (p, c) in &self.terms {
            x.add_term(p.clone(), BigRational::from_integer(c.clone()))
                .expect("inhomogeneous expansions accept any weight");
        }
        x
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(
                self.ctx.k,
                self.ctx.n,
                other.ctx.k,
                other.ctx.n,
            ));
        }
        let product = self.lift().multiply_schur(&other.lift())?;
        truncate_unchecked_weight(&product, self.ctx)
    }

    pub fn to_json_value(&self) -> ClassJson {
        ClassJson {
            k: self.ctx.k,
            n: self.ctx.n,
            basis: "s".to_string(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(p, c)| TermJson {
                    partition: p.clone(),
                    num: JsonInt(c.clone()),
                    den: JsonInt(BigInt::one()),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("class serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ClassJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.basis != "s" {
            return Err(Error::Parse(format!(
                "cohomology classes use basis s, got {:?}",
                raw.basis
            )));
        }
        let ctx = GrassContext::new(raw.k, raw.n)?;
        let mut out = Self::zero(ctx);
        for t in raw.terms {
            if !t.den.0.is_one() {
                return Err(Error::NonIntegral(format!("{}/{}", t.num.0, t.den.0)));
            }
            ctx.check(&t.partition)?;
            out.add(t.partition, t.num.0);
        }
        Ok(out)
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "σ{p}")?;
            } else {
                write!(f, "{c}·σ{p}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.ctx, self)
    }
}

/// JSON form: the expansion format with a `k`, `n` header.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub k: usize,
    pub n: usize,
    pub basis: String,
    pub terms: Vec<TermJson>,
}

/// Keeps the terms of a homogeneous Schur expansion that fit the rectangle
/// of `ctx`.
pub fn truncate(x: &SymExpansion, ctx: GrassContext) -> Result<CohomologyClass> {
    if x.weight().is_none() && !x.is_zero() {
        return Err(Error::Precondition(
            "truncate expects a homogeneous expansion".into(),
        ));
    }
    truncate_unchecked_weight(x, ctx)
}

fn truncate_unchecked_weight(x: &SymExpansion, ctx: GrassContext) -> Result<CohomologyClass> {
    if x.basis() != Basis::Schur {
        return Err(Error::UnsupportedBasis(
            "truncation expects a Schur expansion",
        ));
    }
    let mut out = CohomologyClass::zero(ctx);
    for (p, c) in x.terms() {
        if !c.is_integer() {
            return Err(Error::NonIntegral(c.to_string()));
        }
        if ctx.contains(p) {
            out.add(p.clone(), c.to_integer());
        }
    }
    Ok(out)
}

/// Intersection number of `σ_α` and `σ_β` at complementary weights.
pub fn duality_pairing(alpha: &Partition, beta: &Partition, ctx: GrassContext) -> Result<i64> {
    ctx.check(alpha)?;
    ctx.check(beta)?;
    if alpha.weight() + beta.weight() != ctx.dimension() {
        return Err(Error::WeightMismatch(
            alpha.weight() + beta.weight(),
            ctx.dimension(),
        ));
    }
    Ok(i64::from(*beta == alpha.complement(ctx.rectangle())?))
}

/// Nonvanishing test for Schubert varieties indexed by dimension: the cells
/// labelled `α` and `ν` meet iff `ν` contains the complement of `α`. In the
/// codimension indexing used by [`CohomologyClass`] this is
/// `σ_{α^∨} · σ_{ν^∨} ≠ 0`.
pub fn product_nonzero_with(alpha: &Partition, nu: &Partition, ctx: GrassContext) -> Result<bool> {
    ctx.check(alpha)?;
    ctx.check(nu)?;
    Ok(nu.contains(&alpha.complement(ctx.rectangle())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn gr(k: usize, n: usize) -> GrassContext {
        GrassContext::new(k, n).unwrap()
    }

    fn sigma(ctx: GrassContext, a: &[usize]) -> CohomologyClass {
        CohomologyClass::schubert(ctx, p(a)).unwrap()
    }

    fn class(ctx: GrassContext, terms: &[(&[usize], i64)]) -> CohomologyClass {
        CohomologyClass::from_terms(ctx, terms.iter().map(|&(a, c)| (p(a), BigInt::from(c))))
            .unwrap()
    }

    #[test]
    fn truncate_examples() {
        let s11 = SymExpansion::basis_element(Basis::Schur, p(&[1, 1]));
        assert!(truncate(&s11, gr(1, 3)).unwrap().is_zero());
        let s2 = SymExpansion::basis_element(Basis::Schur, p(&[2]));
        assert_eq!(truncate(&s2, gr(1, 3)).unwrap(), sigma(gr(1, 3), &[2]));
        assert!(truncate(&SymExpansion::zero(Basis::Schur), gr(2, 4))
            .unwrap()
            .is_zero());
        let half = SymExpansion::from_terms(
            Basis::Schur,
            [(p(&[1]), BigRational::new(1.into(), 2.into()))],
        )
        .unwrap();
        assert!(matches!(
            truncate(&half, gr(2, 4)),
            Err(Error::NonIntegral(_))
        ));
    }

    #[test]
    fn multiply_examples() {
        let g = gr(2, 4);
        assert_eq!(
            sigma(g, &[1]).multiply(&sigma(g, &[1])).unwrap(),
            class(g, &[(&[2], 1), (&[1, 1], 1)])
        );
        // (2) and (1,1) are each self-complementary in the 2×2 box
        assert!(sigma(g, &[2])
            .multiply(&sigma(g, &[1, 1]))
            .unwrap()
            .is_zero());
        assert_eq!(
            sigma(g, &[1, 1]).multiply(&sigma(g, &[1, 1])).unwrap(),
            sigma(g, &[2, 2])
        );
        let x = class(g, &[(&[2, 1], 3), (&[1], -2)]);
        assert_eq!(CohomologyClass::one(g).multiply(&x).unwrap(), x);
        assert!(sigma(g, &[1]).multiply(&sigma(gr(2, 5), &[1])).is_err());
        assert_eq!(
            sigma(g, &[2]).multiply(&sigma(g, &[2])).unwrap(),
            sigma(g, &[2, 2])
        );
        assert!(sigma(g, &[2])
            .multiply(&sigma(g, &[2, 1]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn duality_examples() {
        let g = gr(2, 4);
        assert_eq!(duality_pairing(&p(&[2, 1]), &p(&[1]), g).unwrap(), 1);
        assert_eq!(duality_pairing(&p(&[2]), &p(&[2]), g).unwrap(), 1);
        assert_eq!(duality_pairing(&p(&[2]), &p(&[1, 1]), g).unwrap(), 0);
        assert_eq!(
            duality_pairing(&p(&[2, 2]), &Partition::empty(), g).unwrap(),
            1
        );
        assert!(duality_pairing(&p(&[2]), &p(&[1]), g).is_err());
    }

    #[test]
    fn nonzero_product_examples() {
        let g = gr(2, 4);
        let a = p(&[1]);
        assert!(product_nonzero_with(&a, &a.complement(g.rectangle()).unwrap(), g).unwrap());
        assert!(!product_nonzero_with(&a, &Partition::empty(), g).unwrap());
        assert!(product_nonzero_with(&p(&[1]), &p(&[2, 1]), g).unwrap());
        assert!(!product_nonzero_with(&p(&[1]), &p(&[2]), g).unwrap());
    }

    /// The criterion agrees with the product of the complementary classes.
    #[test]
    fn nonzero_product_matches_multiplication() {
        for (k, n) in [(2, 4), (2, 5), (3, 6)] {
            let g = gr(k, n);
            let rect = g.rectangle();
            let all = rect.all_partitions();
            for a in &all {
                for nu in &all {
                    let a_dual = a.complement(rect).unwrap();
                    let nu_dual = nu.complement(rect).unwrap();
                    let prod = sigma(g, a_dual.parts())
                        .multiply(&sigma(g, nu_dual.parts()))
                        .unwrap();
                    assert_eq!(
                        product_nonzero_with(a, nu, g).unwrap(),
                        !prod.is_zero(),
                        "{a} {nu}"
                    );
                }
            }
        }
    }

    #[test]
    fn json_with_context_header() {
        let g = gr(2, 4);
        let x = class(g, &[(&[2], 1), (&[1, 1], 3)]);
        assert_eq!(
            x.to_json(),
            r#"{"k":2,"n":4,"basis":"s","terms":[{"partition":[2],"num":1,"den":1},{"partition":[1,1],"num":3,"den":1}]}"#
        );
        assert_eq!(CohomologyClass::from_json(&x.to_json()).unwrap(), x);
        assert!(CohomologyClass::from_json(
            r#"{"k":2,"n":4,"basis":"s","terms":[{"partition":[3],"num":1,"den":1}]}"#
        )
        .is_err());
    }
}
