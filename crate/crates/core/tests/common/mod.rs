//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use spectral_cone::horn::HornTriple;
use spectral_cone::partition::Partition;

pub fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

/// All partitions fitting in `rows × cols`, any weight.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    fn go(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition::from_unsorted(cur.clone()));
        if cur.len() == rows {
            return;
        }
        for x in 1..=max {
            cur.push(x);
            go(rows, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, cols, &mut Vec::new(), &mut out);
    out
}

/// 180° rotation of the unfilled part of the box.
pub fn box_complement(alpha: &Partition, rows: usize, cols: usize) -> Partition {
    let parts: Vec<usize> = (0..rows).map(|i| cols - alpha.part(rows - 1 - i)).collect();
    Partition::from_unsorted(parts)
}

/// Littlewood–Richardson coefficient `c^ν_{λμ}` by counting LR tableaux of
/// shape `ν/λ` and content `μ`: semistandard, with reverse reading word a
/// lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !nu.contains(lambda) || nu.weight() != lambda.weight() + mu.weight() {
        return 0;
    }
    // cells in reading order: top row first, right to left within a row
    let mut cells = Vec::new();
    for r in 0..nu.length() {
        for c in (lambda.part(r)..nu.part(r)).rev() {
            cells.push((r, c));
        }
    }
    let rows = nu.length();
    let width = nu.part(0);
    let mut grid = vec![vec![0usize; width]; rows];
    let mut content = vec![0usize; mu.length()];

    fn fill(
        idx: usize,
        cells: &[(usize, usize)],
        lambda: &Partition,
        mu: &Partition,
        grid: &mut Vec<Vec<usize>>,
        content: &mut Vec<usize>,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let mut total = 0;
        for v in 1..=mu.length() {
            if content[v - 1] == mu.part(v - 1) {
                continue;
            }
            // lattice: after placing v, count(v) ≤ count(v−1)
            if v > 1 && content[v - 1] + 1 > content[v - 2] {
                continue;
            }
            let right = grid[r].get(c + 1).copied().unwrap_or(0);
            if right != 0 && v > right {
                continue;
            }
            if r > 0 && c >= lambda.part(r - 1) {
                // the cell above lies in the skew shape and was filled earlier
                if v <= grid[r - 1][c] {
                    continue;
                }
            }
            grid[r][c] = v;
            content[v - 1] += 1;
            total += fill(idx + 1, cells, lambda, mu, grid, content);
            content[v - 1] -= 1;
            grid[r][c] = 0;
        }
        total
    }
    fill(0, &cells, lambda, mu, &mut grid, &mut content)
}

/// Trace of a permutation of cycle type `mu` on the permutation module of
/// the composition `alpha`: the number of row assignments of `{1..n}`, with
/// row sizes `alpha`, that are constant on each cycle.
pub fn young_permutation_character(alpha: &[i64], mu: &Partition) -> i64 {
    if alpha.iter().any(|&a| a < 0) {
        return 0;
    }
    let cycles = mu.parts();
    fn go(i: usize, cycles: &[usize], room: &mut Vec<i64>) -> i64 {
        if i == cycles.len() {
            return i64::from(room.iter().all(|&x| x == 0));
        }
        let mut total = 0;
        for r in 0..room.len() {
            if room[r] >= cycles[i] as i64 {
                room[r] -= cycles[i] as i64;
                total += go(i + 1, cycles, room);
                room[r] += cycles[i] as i64;
            }
        }
        total
    }
    go(0, cycles, &mut alpha.to_vec())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Irreducible character from permutation characters via the determinantal
/// formula `χ^λ = Σ_w sgn(w) ξ^{λ + δ − w(δ)}`.
pub fn character_oracle(lambda: &Partition, mu: &Partition) -> i64 {
    let l = lambda.length().max(1);
    permutations(l)
        .iter()
        .map(|w| {
            let alpha: Vec<i64> = (0..l)
                .map(|i| lambda.part(i) as i64 - i as i64 + w[i] as i64)
                .collect();
            sign(w) * young_permutation_character(&alpha, mu)
        })
        .sum()
}

fn subsets(r: usize, n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == r)
        .map(|m| (1..=n).filter(|&x| m & (1 << (x - 1)) != 0).collect())
        .collect()
}

/// `T_r^n` straight from the recursive definition, without memoization.
pub fn horn_oracle(r: usize, n: usize) -> BTreeSet<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let sets = subsets(r, n);
    let lower: Vec<_> = (1..r).map(|p| (p, horn_oracle(p, r))).collect();
    let mut out = BTreeSet::new();
    for i in &sets {
        for j in &sets {
            for k in &sets {
                let s = |v: &Vec<usize>| v.iter().sum::<usize>();
                if s(i) + s(j) != s(k) + r * (r + 1) / 2 {
                    continue;
                }
                let ok = lower.iter().all(|(p, ts)| {
                    ts.iter().all(|(f, g, h)| {
                        let pick = |set: &[usize], from: &[usize]| {
                            set.iter().map(|&x| from[x - 1]).sum::<usize>()
                        };
                        pick(f, i) + pick(g, j) <= pick(h, k) + p * (p + 1) / 2
                    })
                });
                if ok {
                    out.insert((i.clone(), j.clone(), k.clone()));
                }
            }
        }
    }
    out
}

pub fn triple_key(t: &HornTriple) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    (t.i.clone(), t.j.clone(), t.k.clone())
}
