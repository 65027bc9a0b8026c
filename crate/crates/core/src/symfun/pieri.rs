//! Pieri rules and the Jacobi–Trudi determinant.

use num_rational::BigRational;

use super::{Basis, SymExpansion};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Which strip a Pieri step adds: `Horizontal` for multiplication by `h_k`
/// (no two new boxes in a column), `Vertical` for `e_k` (no two in a row).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StripKind {
    Horizontal,
    Vertical,
}

/// All `β ⊇ α` with `β/α` a horizontal strip of size `k`.
pub fn horizontal_strips(alpha: &Partition, k: usize) -> Vec<Partition> {
    let len = alpha.length() + 1;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    grow_row(alpha, 0, len, k, &mut cur, &mut out);
    out
}

fn grow_row(
    alpha: &Partition,
    row: usize,
    len: usize,
    left: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if row == len {
        if left == 0 {
            out.push(Partition::new(cur.clone()).expect("interlacing keeps parts sorted"));
        }
        return;
    }
    let base = alpha.part(row);
    // β_row may grow up to α_{row-1}; the first row is unbounded.
    let cap = if row == 0 {
        base + left
    } else {
        alpha.part(row - 1).min(base + left)
    };
    for b in (base..=cap).rev() {
        cur.push(b);
        grow_row(alpha, row + 1, len, left - (b - base), cur, out);
        cur.pop();
    }
}

/// All `β ⊇ α` with `β/α` a vertical strip of size `k`.
pub fn vertical_strips(alpha: &Partition, k: usize) -> Vec<Partition> {
    horizontal_strips(&alpha.conjugate(), k)
        .into_iter()
        .map(|b| b.conjugate())
        .collect()
}

/// Multiplies a Schur expansion by `h_k` (horizontal) or `e_k` (vertical).
pub fn pieri_multiply(x: &SymExpansion, kind: StripKind, k: usize) -> Result<SymExpansion> {
    if x.basis() != Basis::Schur {
        return Err(Error::UnsupportedBasis(
            "Pieri rule expects a Schur expansion",
        ));
    }
    let mut out = SymExpansion::zero(Basis::Schur);
    out.inhomogeneous = x.is_inhomogeneous();
    for (alpha, c) in x.terms() {
        let grown = match kind {
            StripKind::Horizontal => horizontal_strips(alpha, k),
            StripKind::Vertical => vertical_strips(alpha, k),
        };
        for beta in grown {
            out.add_term_unchecked(beta, c.clone());
        }
    }
    Ok(out)
}

/// `s_α = det(h_{α_i - i + j})` expanded into products of complete
/// symmetric functions.
pub fn jacobi_trudi(alpha: &Partition) -> SymExpansion {
    let n = alpha.length();
    let mut out = SymExpansion::zero(Basis::Complete);
    let mut used = vec![false; n];
    let mut factors = Vec::with_capacity(n);
    expand_det(alpha, 0, &mut used, &mut factors, 1, &mut out);
    out
}

fn expand_det(
    alpha: &Partition,
    row: usize,
    used: &mut [bool],
    factors: &mut Vec<usize>,
    sign: i64,
    out: &mut SymExpansion,
) {
    let n = used.len();
    if row == n {
        let index = Partition::from_unsorted(factors.clone());
        out.add_term_unchecked(index, BigRational::from_integer(sign.into()));
        return;
    }
    let mut inversions_before = 0;
    for col in 0..n {
        if used[col] {
            continue;
        }
        // entry (row, col) is h_{α_row - row + col}
        let idx = alpha.part(row) as isize - row as isize + col as isize;
        if idx >= 0 {
            // columns still free to the left of `col` form inversions with it
            let s = if inversions_before % 2 == 0 {
                sign
            } else {
                -sign
            };
            used[col] = true;
            factors.push(idx as usize);
            expand_det(alpha, row + 1, used, factors, s, out);
            factors.pop();
            used[col] = false;
        }
        inversions_before += 1;
    }
}
