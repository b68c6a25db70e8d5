use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Const, Differential, Matrix, RatFunc, Ring, UPoly};
use crate::{Error, Result};

/// Scalar operator `Σ aᵢ ∂^i` equivalent to a first-order system.
#[derive(Clone, Debug)]
pub struct CyclicVector {
    /// `a₀, …, a_m`, with `a_m = 1`.
    pub coeffs: Vec<RatFunc>,
    /// Rows `u, u∂, …, u∂^{m-1}`: `T·Y = (y, y', …, y^(m-1))` with `y = u·Y`.
    pub transform: Matrix<RatFunc>,
}

/// Krylov rows `r₀ = seed`, `r_{j+1} = r_j·A + r_j'` up to the first linear
/// dependency `r_s = Σ αⱼ rⱼ`.
#[derive(Clone, Debug)]
pub(crate) struct Krylov {
    pub rows: Vec<Vec<RatFunc>>,
    pub alpha: Vec<RatFunc>,
}

pub(crate) fn krylov(a: &Matrix<RatFunc>, seed: Vec<RatFunc>) -> Krylov {
    let m = a.rows();
    let mut rows = vec![seed];
    loop {
        let last = rows.last().unwrap();
        let mut next = Matrix::from_rows(vec![last.clone()]).mul(a).row(0);
        for (v, d) in next.iter_mut().zip(last) {
            *v = v.add(&d.derivative());
        }
        let basis = Matrix::from_cols(&rows);
        if let Some(alpha) = basis.solve(&next) {
            return Krylov { rows, alpha };
        }
        rows.push(next);
        assert!(rows.len() <= m, "Krylov sequence longer than the dimension");
    }
}

impl CyclicVector {
    /// Applies the scalar operator to `y`.
    pub fn apply(&self, y: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut d = y.clone();
        for a in &self.coeffs {
            acc = acc.add(&a.mul(&d));
            d = d.derivative();
        }
        acc
    }
}

fn candidate_seed(k: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<RatFunc> {
    match k {
        0 => (0..m)
            .map(|i| {
                if i == 0 {
                    RatFunc::one()
                } else {
                    RatFunc::zero()
                }
            })
            .collect(),
        1 => vec![RatFunc::one(); m],
        _ => (0..m)
            .map(|_| {
                let c: Vec<Const> = (0..=m).map(|_| Const::int(rng.gen_range(-3..=3))).collect();
                RatFunc::from_poly(UPoly::new(c))
            })
            .collect(),
    }
}

/// Finds a cyclic vector for `Y' = A·Y`: `e₁`, then `e₁+…+e_m`, then seeded
/// random polynomial combinations.
pub fn cyclic_vector(a: &Matrix<RatFunc>, seed: u64) -> Result<CyclicVector> {
    const ATTEMPTS: usize = 24;
    let m = a.rows();
    if m == 0 || !a.is_square() {
        return Err(Error::Contract(
            "cyclic_vector needs a nonempty square matrix".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..ATTEMPTS {
        let u = candidate_seed(k, m, &mut rng);
        if u.iter().all(|v| v.is_zero()) {
            continue;
        }
        let kr = krylov(a, u);
        if kr.rows.len() < m {
            continue;
        }
        let mut coeffs: Vec<RatFunc> = kr.alpha.iter().map(|v| v.neg()).collect();
        coeffs.push(RatFunc::one());
        return Ok(CyclicVector {
            coeffs,
            transform: Matrix::from_rows(kr.rows),
        });
    }
    Err(Error::CyclicVectorNotFound(ATTEMPTS))
}
