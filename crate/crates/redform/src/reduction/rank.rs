use super::ledger::{dedup, Component};
use crate::field::{Const, Field, MPoly, Matrix, Ring};
use crate::{Error, Result};

/// A component together with the rank the matrix has on it.
#[derive(Clone, Debug, PartialEq)]
pub struct RankComponent {
    pub component: Component,
    pub rank: usize,
}

struct Search {
    cap: usize,
    best: usize,
    found: Vec<Component>,
    nodes: usize,
}

fn complexity(p: &MPoly) -> (usize, u32) {
    (p.num_terms(), p.total_degree())
}

fn eliminate(rows: &[Vec<Const>], pi: usize, pj: usize) -> Vec<Vec<Const>> {
    let p = &rows[pi][pj];
    let mut out = Vec::with_capacity(rows.len().saturating_sub(1));
    for (k, r) in rows.iter().enumerate() {
        if k == pi {
            continue;
        }
        let f = r[pj].div(p);
        let nr: Vec<Const> = r
            .iter()
            .zip(&rows[pi])
            .enumerate()
            .filter(|(j, _)| *j != pj)
            .map(|(_, (a, b))| {
                if f.is_zero() {
                    a.clone()
                } else {
                    a.sub(&f.mul(b))
                }
            })
            .collect();
        out.push(nr);
    }
    out
}

impl Search {
    fn run(&mut self, rows: Vec<Vec<Const>>, comp: Component, rank: usize) -> Result<()> {
        if rank > self.best {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > 64 * self.cap {
            return Err(Error::ComponentExplosion(self.cap));
        }
        let mut cur: Vec<Vec<Const>> = Vec::with_capacity(rows.len());
        for r in &rows {
            let mut nr = Vec::with_capacity(r.len());
            for e in r {
                let Some(v) = comp.apply(e) else {
                    return Ok(());
                };
                if !v.is_zero() && comp.is_zero_on(&v.numer()) {
                    nr.push(Const::zero());
                } else {
                    nr.push(v);
                }
            }
            cur.push(nr);
        }
        let mut known = None;
        let mut cand: Option<(usize, usize, MPoly)> = None;
        'outer: for (i, r) in cur.iter().enumerate() {
            for (j, e) in r.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let n = e.numer();
                if comp.is_nonzero_on(&n) {
                    known = Some((i, j));
                    break 'outer;
                }
                if cand
                    .as_ref()
                    .is_none_or(|(_, _, c)| complexity(&n) < complexity(c))
                {
                    cand = Some((i, j, n));
                }
            }
        }
        if let Some((i, j)) = known {
            return self.run(eliminate(&cur, i, j), comp, rank + 1);
        }
        let Some((i, j, p)) = cand else {
            if rank < self.best {
                self.best = rank;
                self.found.clear();
            }
            self.found.push(comp);
            dedup(&mut self.found);
            if self.found.len() > self.cap {
                return Err(Error::ComponentExplosion(self.cap));
            }
            return Ok(());
        };
        for c in comp.add_equation(&p) {
            self.run(cur.clone(), c, rank)?;
        }
        if let Some(c) = comp.add_inequation(&p) {
            self.run(eliminate(&cur, i, j), c, rank + 1)?;
        }
        Ok(())
    }
}

/// Components of `comp` on which `m` has the smallest possible rank.
pub fn rank_minimize(
    m: &Matrix<Const>,
    comp: &Component,
    cap: usize,
) -> Result<Vec<RankComponent>> {
    let mut s = Search {
        cap,
        best: usize::MAX,
        found: Vec::new(),
        nodes: 0,
    };
    s.run(m.to_rows(), comp.clone(), 0)?;
    Ok(s.found
        .into_iter()
        .map(|component| RankComponent {
            component,
            rank: s.best,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    fn t(i: usize) -> Const {
        Const::param(i)
    }

    #[test]
    fn single_parameter_entry() {
        let m = Matrix::from_rows(vec![vec![t(0)]]);
        let r = rank_minimize(&m, &Component::free(), 64).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].rank, 0);
        assert_eq!(r[0].component.fixed[&0], Const::zero());
    }

    #[test]
    fn constant_full_rank() {
        let m = Matrix::from_rows(vec![
            vec![Const::int(1), Const::int(2)],
            vec![Const::int(3), Const::int(4)],
        ]);
        let r = rank_minimize(&m, &Component::free(), 64).unwrap();
        assert_eq!(
            r,
            vec![RankComponent {
                component: Component::free(),
                rank: 2
            }]
        );
    }

    #[test]
    fn two_branches_of_minimal_rank() {
        // Rows (0, 2a−1, 0, −2b) and (a, 0, −b, 0): rank 1 exactly when b = 0 and a ∈ {0, 1/2}.
        let (a, b) = (t(0), t(1));
        let two = Const::int(2);
        let m = Matrix::from_rows(vec![
            vec![
                Const::zero(),
                two.mul(&a).sub(&Const::one()),
                Const::zero(),
                two.mul(&b).neg(),
            ],
            vec![a.clone(), Const::zero(), b.neg(), Const::zero()],
        ]);
        let r = rank_minimize(&m, &Component::free(), 64).unwrap();
        assert_eq!(r.len(), 2);
        let mut vals: Vec<_> = r
            .iter()
            .map(|c| {
                assert_eq!(c.rank, 1);
                assert_eq!(c.component.fixed[&1], Const::zero());
                c.component.fixed[&0].as_rational().unwrap().clone()
            })
            .collect();
        vals.sort();
        assert_eq!(vals, vec![q(0, 1), q(1, 2)]);
    }

    #[test]
    fn cap_is_enforced() {
        let m = Matrix::from_rows(vec![vec![t(0).mul(&t(1)).mul(&t(2))]]);
        assert!(matches!(
            rank_minimize(&m, &Component::free(), 1),
            Err(Error::ComponentExplosion(1))
        ));
    }
}
