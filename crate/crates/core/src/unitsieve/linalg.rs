//! Linear algebra over `F_7` on exponent vectors of length 5.

use super::character::{ELL, RANK};

const P: u8 = ELL as u8;

fn inv(a: u8) -> u8 {
    (1..P).find(|b| (a as u32 * *b as u32) % P as u32 == 1).expect("nonzero residue")
}

/// Row-reduce in place; returns the pivot columns among the first `ncols`.
fn reduce(rows: &mut [Vec<u8>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let s = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = (*x as u32 * s as u32 % P as u32) as u8;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let m = rows[k][c] as u32;
                for j in 0..rows[k].len() {
                    rows[k][j] = ((rows[k][j] as u32 + (P as u32 - m) * rows[r][j] as u32) % P as u32) as u8;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(mut rows: Vec<Vec<u8>>, ncols: usize) -> usize {
    reduce(&mut rows, ncols).len()
}

/// Solution set `{particular + span(kernel)}` of `sum_a e_a m_a = r` over all rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    pub particular: [u8; RANK],
    pub kernel: Vec<[u8; RANK]>,
}

impl AffineSpace {
    /// Every point, `7^dim` of them.
    pub fn points(&self) -> Vec<[u8; RANK]> {
        let mut out = vec![self.particular];
        for k in &self.kernel {
            let mut next = Vec::with_capacity(out.len() * P as usize);
            for base in &out {
                for t in 0..P {
                    let mut v = *base;
                    for i in 0..RANK {
                        v[i] = ((v[i] as u32 + t as u32 * k[i] as u32) % P as u32) as u8;
                    }
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }
}

/// Solve the system with rows `(coefficients, rhs)`; `None` when inconsistent.
pub fn solve_affine(system: &[([u8; RANK], u8)]) -> Option<AffineSpace> {
    let mut rows: Vec<Vec<u8>> = system
        .iter()
        .map(|(m, r)| m.iter().copied().chain(std::iter::once(*r % P)).collect())
        .collect();
    let pivots = reduce(&mut rows, RANK);
    if rows.iter().skip(pivots.len()).any(|row| row[RANK] != 0) {
        return None;
    }
    let mut particular = [0u8; RANK];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = rows[i][RANK];
    }
    let free: Vec<usize> = (0..RANK).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = [0u8; RANK];
            v[f] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = (P - rows[i][f]) % P;
            }
            v
        })
        .collect();
    Some(AffineSpace { particular, kernel })
}
