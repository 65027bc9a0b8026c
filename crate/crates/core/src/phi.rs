//! The pullback `φ*: H*(Gr(k·d_B, d_A·d_B)) → H*(Gr(k, d_A))` induced by
//! `V ↦ V ⊗ B`.
//!
//! On power sums it is `p_μ ↦ d_B^{ℓ(μ)} p_μ`; Schur classes are pulled back
//! by passing through the power-sum basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::schubert::{truncate, CohomologyClass, GrassContext};
use crate::symfun::{character, schur_to_power, zmu, SymExpansion};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PhiContext {
    d_a: usize,
    d_b: usize,
    k: usize,
}

impl PhiContext {
    pub fn new(d_a: usize, d_b: usize, k: usize) -> Result<Self> {
        if d_a == 0 || d_b == 0 || k == 0 || k > d_a {
            return Err(Error::InvalidDimensions(format!(
                "need d_A, d_B >= 1 and 1 <= k <= d_A, got d_A={d_a}, d_B={d_b}, k={k}"
            )));
        }
        Ok(Self { d_a, d_b, k })
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `Gr(k·d_B, d_A·d_B)`.
    pub fn source(&self) -> GrassContext {
        GrassContext::new(self.k * self.d_b, self.d_a * self.d_b).expect("validated in new")
    }

    /// `Gr(k, d_A)`.
    pub fn target(&self) -> GrassContext {
        GrassContext::new(self.k, self.d_a).expect("validated in new")
    }
}

/// `φ*(s_π)` in the full ring of symmetric functions, before truncation to
/// the target Grassmannian. Coefficients are checked to be nonnegative
/// integers.
pub fn phi_star_expansion(pi: &Partition, pc: PhiContext) -> Result<SymExpansion> {
    if !pc.source().contains(pi) {
        return Err(Error::NotInRectangle {
            partition: pi.to_string(),
            rows: pc.source().rectangle().rows,
            cols: pc.source().rectangle().cols,
        });
    }
    scaled_power_route(pi, pc.d_b)
}

fn scaled_power_route(pi: &Partition, d_b: usize) -> Result<SymExpansion> {
    let d_b = BigInt::from(d_b);
    let scaled = schur_to_power(pi)
        .map_coefficients(|mu, c| c * BigRational::from_integer(d_b.pow(mu.length() as u32)));
    let out = scaled.to_schur()?;
    if let Some((nu, c)) = out
        .terms()
        .find(|(_, c)| !c.is_integer() || c.is_negative())
    {
        return Err(Error::Internal(format!(
            "pullback of s_{pi} has coefficient {c} on s_{nu}; expected a nonnegative integer"
        )));
    }
    Ok(out)
}

/// `φ*(σ_π)` as a class in `H*(Gr(k, d_A))`.
pub fn phi_star_schur(pi: &Partition, pc: PhiContext) -> Result<CohomologyClass> {
    truncate(&phi_star_expansion(pi, pc)?, pc.target())
}

/// Multiplicity of `s_ν` in `φ*(s_π)` from characters:
/// `Σ_μ χ^π_μ χ^ν_μ d_B^{ℓ(μ)} / z(μ)`.
pub fn phi_multiplicity(pi: &Partition, nu: &Partition, d_b: usize) -> Result<BigInt> {
    if pi.weight() != nu.weight() {
        return Err(Error::WeightMismatch(pi.weight(), nu.weight()));
    }
    let d_b = BigInt::from(d_b);
    let mut total = BigRational::zero();
    for mu in partitions_of(pi.weight()) {
        let chi = character(pi, &mu)? * character(nu, &mu)?;
        if chi == 0 {
            continue;
        }
        let num = BigInt::from(chi) * d_b.pow(mu.length() as u32);
        total += BigRational::new(num, zmu(&mu));
    }
    if !total.is_integer() || total.is_negative() {
        return Err(Error::Internal(format!(
            "multiplicity of s_{nu} in φ*(s_{pi}) is {total}"
        )));
    }
    Ok(total.to_integer())
}
