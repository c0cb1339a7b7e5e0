//! Smith normal form over the integers, used to count `Z/p`-ranks of
//! finitely presented abelian groups.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Diagonal of the Smith normal form of `m` (rows x cols), including zeros,
/// of length `min(rows, cols)`.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut r0 = 0;
    let mut c0 = 0;
    while r0 < rows && c0 < cols {
        // pivot: smallest non-zero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for r in r0..rows {
            for c in c0..cols {
                if !m[r][c].is_zero()
                    && best.is_none_or(|(br, bc)| m[r][c].abs() < m[br][bc].abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        m.swap(r0, pr);
        for row in m.iter_mut() {
            row.swap(c0, pc);
        }
        let mut done = false;
        while !done {
            done = true;
            for r in r0 + 1..rows {
                if m[r][c0].is_zero() {
                    continue;
                }
                let q = m[r][c0].div_floor(&m[r0][c0]);
                for c in c0..cols {
                    let v = &m[r0][c] * &q;
                    m[r][c] -= v;
                }
                if !m[r][c0].is_zero() {
                    m.swap(r0, r);
                    done = false;
                }
            }
            for c in c0 + 1..cols {
                if m[r0][c].is_zero() {
                    continue;
                }
                let q = m[r0][c].div_floor(&m[r0][c0]);
                for row in m.iter_mut().skip(r0) {
                    let v = &row[c0] * &q;
                    row[c] -= v;
                }
                if !m[r0][c].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(c0, c);
                    }
                    done = false;
                }
            }
            if done {
                // divisibility: fold any entry not divisible by the pivot back in
                let p = m[r0][c0].clone();
                'outer: for r in r0 + 1..rows {
                    for c in c0 + 1..cols {
                        if !(&m[r][c] % &p).is_zero() {
                            for cc in c0..cols {
                                let v = m[r][cc].clone();
                                m[r0][cc] += v;
                            }
                            done = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        diag.push(m[r0][c0].abs());
        r0 += 1;
        c0 += 1;
    }
    while diag.len() < rows.min(cols) {
        diag.push(BigInt::zero());
    }
    diag
}

/// Dimension over `Z/p` of `Z^cols / rowspan(m)` tensored with `Z/p`.
pub fn rank_mod_p(m: Vec<Vec<BigInt>>, cols: usize, p: u64) -> usize {
    let diag = smith_diagonal(m);
    let p = BigInt::from(p);
    let divisible = diag.iter().filter(|d| (*d % &p).is_zero()).count();
    divisible + cols.saturating_sub(diag.len())
}
