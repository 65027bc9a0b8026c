use num_complex::Complex64;
use serde::Serialize;

use super::{ComplexMatrix, HermitianMatrix};
use crate::error::{Error, Result};
use crate::inequalities::Spectrum;
use crate::majorization::{block_sum, majorizes_with_tol};

#[derive(Clone, Debug, PartialEq)]
pub enum Realization {
    /// `matrix` has spectrum `λ` and its partial trace over `B` has
    /// spectrum `λ̃`; `t` is the rotation angle used.
    Realized {
        matrix: HermitianMatrix,
        t: f64,
    },
    Infeasible {
        reason: String,
    },
}

#[derive(Serialize)]
struct InfeasibleJson<'a> {
    feasible: bool,
    reason: &'a str,
}

impl Realization {
    pub fn is_realized(&self) -> bool {
        matches!(self, Realization::Realized { .. })
    }

    pub fn infeasibility_json(&self) -> Option<String> {
        match self {
            Realization::Infeasible { reason } => Some(
                serde_json::to_string(&InfeasibleJson {
                    feasible: false,
                    reason,
                })
                .expect("serializes"),
            ),
            Realization::Realized { .. } => None,
        }
    }
}

/// Builds an operator on `C² ⊗ C^{d_B}` with spectrum `λ` (length `2·d_B`)
/// whose partial trace has spectrum `λ̃` (length 2), whenever
/// `λ̃ ≺ (α_1, α_2)` for the block sums `α_1 ≥ α_2` of `λ`.
///
/// Starts from `Σ λ_{i,j} |i j⟩⟨i j|` with the largest `d_B` eigenvalues on
/// `|0⟩_A`, then rotates each plane `{|0, j⟩, |1, j+1 mod d_B⟩}` by the same
/// real angle `t`. The pairing keeps the partial trace diagonal, equal to
/// `diag(α_1 cos²t + α_2 sin²t, α_2 cos²t + α_1 sin²t)`.
pub fn dim2_realize(lambda: &Spectrum, reduced: &Spectrum) -> Result<Realization> {
    if reduced.len() != 2 {
        return Err(Error::LengthMismatch {
            expected: 2,
            got: reduced.len(),
        });
    }
    if lambda.is_empty() || !lambda.len().is_multiple_of(2) {
        return Err(Error::InvalidDimensions(format!(
            "joint spectrum has length {}, expected 2·d_B",
            lambda.len()
        )));
    }
    let d_b = lambda.len() / 2;
    let scale = lambda
        .values()
        .iter()
        .chain(reduced.values())
        .fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-12 * scale * lambda.len() as f64;

    let alpha = block_sum(lambda.values(), d_b)?;
    let (a1, a2) = (alpha[0], alpha[1]);
    if !majorizes_with_tol(&alpha, reduced.values(), tol) {
        return Ok(Realization::Infeasible {
            reason: format!(
                "reduced spectrum {:?} is not majorized by block sums {:?}",
                reduced.values(),
                alpha
            ),
        });
    }

    let sigma = HermitianMatrix::from_real_diagonal(lambda.values());
    if d_b == 1 {
        // No room to rotate: the partial trace is the operator itself.
        let same = lambda
            .values()
            .iter()
            .zip(reduced.values())
            .all(|(x, y)| (x - y).abs() <= tol);
        return Ok(if same {
            Realization::Realized {
                matrix: sigma,
                t: 0.0,
            }
        } else {
            Realization::Infeasible {
                reason: "with d_B = 1 the reduced spectrum must equal the joint spectrum".into(),
            }
        });
    }

    let cos2 = if (a1 - a2).abs() <= tol {
        1.0
    } else {
        ((reduced.values()[0] - a2) / (a1 - a2)).clamp(0.0, 1.0)
    };
    let t = cos2.sqrt().acos();
    let (c, s) = (t.cos(), t.sin());

    let mut u = ComplexMatrix::zeros(2 * d_b);
    for j in 0..d_b {
        let top = j;
        let bottom = d_b + (j + 1) % d_b;
        u[(top, top)] = Complex64::new(c, 0.0);
        u[(bottom, top)] = Complex64::new(s, 0.0);
        u[(top, bottom)] = Complex64::new(-s, 0.0);
        u[(bottom, bottom)] = Complex64::new(c, 0.0);
    }
    Ok(Realization::Realized {
        matrix: sigma.conjugate_by(&u),
        t,
    })
}
