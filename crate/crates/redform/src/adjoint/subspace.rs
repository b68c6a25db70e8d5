use crate::field::{in_span, span_basis, span_rank, Const, Matrix, Ring};

/// Subspace of `𝒞^N` given by an explicit independent basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstSubspace {
    ambient: usize,
    basis: Vec<Vec<Const>>,
}

impl ConstSubspace {
    /// Span of `vecs`, keeping the first independent ones in order.
    pub fn new(ambient: usize, vecs: &[Vec<Const>]) -> Self {
        let mut basis: Vec<Vec<Const>> = Vec::new();
        for v in vecs {
            assert_eq!(v.len(), ambient, "vector length mismatch");
            if !in_span(&basis, v) {
                basis.push(v.clone());
            }
        }
        ConstSubspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        ConstSubspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let id = Matrix::<Const>::identity(ambient);
        ConstSubspace {
            ambient,
            basis: id.to_rows(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Const>] {
        &self.basis
    }

    /// Basis vectors as columns.
    pub fn matrix(&self) -> Matrix<Const> {
        if self.basis.is_empty() {
            return Matrix::zeros(self.ambient, 0);
        }
        Matrix::from_cols(&self.basis)
    }

    pub fn contains(&self, v: &[Const]) -> bool {
        in_span(&self.basis, v)
    }

    pub fn contains_space(&self, o: &ConstSubspace) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_span(&self, o: &ConstSubspace) -> bool {
        self.dim() == o.dim() && self.contains_space(o)
    }

    pub fn sum(&self, o: &ConstSubspace) -> ConstSubspace {
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        ConstSubspace::new(self.ambient, &v)
    }

    /// Coordinates of `v` in this basis.
    pub fn coords(&self, v: &[Const]) -> Option<Vec<Const>> {
        if self.basis.is_empty() {
            return v.iter().all(|x| x.is_zero()).then(Vec::new);
        }
        self.matrix().solve(v)
    }

    /// Reduced row-echelon basis of the span.
    pub fn echelon_basis(&self) -> Vec<Vec<Const>> {
        span_basis(&self.basis, self.ambient)
    }

    pub fn is_stable(&self, gens: &[Matrix<Const>]) -> bool {
        gens.iter()
            .all(|g| self.basis.iter().all(|v| self.contains(&g.mul_vec(v))))
    }

    /// Matrices `Tᵢ` with `gᵢ·B = B·Tᵢ` on a stable subspace.
    pub fn restrict(&self, gens: &[Matrix<Const>]) -> Vec<Matrix<Const>> {
        let b = self.matrix();
        gens.iter()
            .map(|g| {
                let img = g.mul(&b);
                b.solve_matrix(&img).expect("subspace is not stable")
            })
            .collect()
    }

    /// Maps coordinates in this basis to ambient vectors.
    pub fn lift(&self, c: &[Const]) -> Vec<Const> {
        let mut out = vec![Const::zero(); self.ambient];
        for (v, a) in self.basis.iter().zip(c) {
            if a.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(v) {
                *o = o.add(&a.mul(x));
            }
        }
        out
    }
}

/// Smallest subspace containing `vecs` and stable under every generator.
pub fn spin(ambient: usize, vecs: &[Vec<Const>], gens: &[Matrix<Const>]) -> ConstSubspace {
    let mut basis: Vec<Vec<Const>> = Vec::new();
    let mut queue: Vec<Vec<Const>> = vecs.to_vec();
    while let Some(v) = queue.pop() {
        if in_span(&basis, &v) {
            continue;
        }
        for g in gens {
            queue.push(g.mul_vec(&v));
        }
        basis.push(v);
    }
    ConstSubspace::new(ambient, &span_basis(&basis, ambient))
}

/// `W / U` for stable `U ⊆ W`, represented by a complement of `U` in `W`
/// drawn from the echelon basis of `W`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub sub: ConstSubspace,
    pub complement: ConstSubspace,
    /// Action of each generator on complement coordinates modulo `sub`.
    pub actions: Vec<Matrix<Const>>,
    joint: Matrix<Const>,
}

impl Quotient {
    pub fn new(w: &ConstSubspace, sub: &ConstSubspace, gens: &[Matrix<Const>]) -> Self {
        let n = w.ambient();
        let mut comp: Vec<Vec<Const>> = Vec::new();
        let mut all: Vec<Vec<Const>> = sub.basis().to_vec();
        for v in w.echelon_basis() {
            if !in_span(&all, &v) {
                all.push(v.clone());
                comp.push(v);
            }
        }
        let complement = ConstSubspace {
            ambient: n,
            basis: comp,
        };
        let mut cols = complement.basis.clone();
        cols.extend(sub.basis().iter().cloned());
        let joint = if cols.is_empty() {
            Matrix::zeros(n, 0)
        } else {
            Matrix::from_cols(&cols)
        };
        let mut q = Quotient {
            sub: sub.clone(),
            complement,
            actions: Vec::new(),
            joint,
        };
        q.actions = gens
            .iter()
            .map(|g| {
                let cols: Vec<Vec<Const>> = q
                    .complement
                    .basis
                    .iter()
                    .map(|c| q.project(&g.mul_vec(c)))
                    .collect();
                let d = q.dim();
                if d == 0 {
                    Matrix::zeros(0, 0)
                } else {
                    Matrix::from_cols(&cols)
                }
            })
            .collect();
        q
    }

    pub fn dim(&self) -> usize {
        self.complement.dim()
    }

    /// Quotient coordinates of an ambient vector of `W`.
    pub fn project(&self, v: &[Const]) -> Vec<Const> {
        let x = self
            .joint
            .solve(v)
            .expect("vector outside the quotient's space");
        x[..self.dim()].to_vec()
    }

    /// Lift through the complement.
    pub fn lift(&self, q: &[Const]) -> Vec<Const> {
        self.complement.lift(q)
    }
}

/// Rank of a family of vectors.
pub fn rank_of(vecs: &[Vec<Const>]) -> usize {
    span_rank(vecs)
}
