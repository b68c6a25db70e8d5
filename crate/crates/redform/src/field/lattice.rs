use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::denom_lcm;
use super::Q;

/// Integer row echelon form on the first `ncols` columns using unimodular
/// row operations. Returns the rank.
fn echelon(rows: &mut [Vec<BigInt>], ncols: usize) -> usize {
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| rows[i][c].abs() < rows[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c].div_floor(&rows[r][c]);
                let pivot = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot = rows[r].clone();
        for row in rows.iter_mut().take(r) {
            let f = row[c].div_floor(&pivot[c]);
            if f.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x -= &f * p;
            }
        }
        r += 1;
    }
    r
}

/// Row-style Hermite normal form; zero rows are dropped.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let n = rows[0].len();
    let mut m = rows.to_vec();
    let r = echelon(&mut m, n);
    m.truncate(r);
    m
}

/// Basis of the integer kernel `{v ∈ ℤⁿ : M·v = 0}` of an integer matrix
/// given by rows, in Hermite normal form.
pub fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    let mut aug: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut v: Vec<BigInt> = rows.iter().map(|r| r[j].clone()).collect();
            v.extend((0..n).map(|k| {
                if k == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            v
        })
        .collect();
    let rank = echelon(&mut aug, m);
    let ker: Vec<Vec<BigInt>> = aug[rank..].iter().map(|r| r[m..].to_vec()).collect();
    hermite_normal_form(&ker)
}

/// Basis of `{e ∈ ℤⁿ : Σ eᵢ·valuesᵢ = 0}`.
pub fn integer_relation_lattice(values: &[Q]) -> Vec<Vec<BigInt>> {
    let l = denom_lcm(values.iter());
    let row: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Q::from(l.clone())).to_integer())
        .collect();
    integer_kernel(&[row], values.len())
}
