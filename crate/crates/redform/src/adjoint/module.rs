use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::subspace::{spin, ConstSubspace};
use crate::diffsys::wei_norman;
use crate::field::{in_span, rational_roots, span_basis, Const, Matrix, RatFunc, Ring};
use crate::{Error, Result};

const RANDOM_TRIES: usize = 24;

/// Basis of `{E : E·Ψᵢ = Ψᵢ·E ∀i}`.
#[derive(Clone, Debug)]
pub struct Eigenring {
    pub basis: Vec<Matrix<Const>>,
}

impl Eigenring {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, m: &Matrix<Const>) -> bool {
        let vs: Vec<Vec<Const>> = self.basis.iter().map(|b| b.vec_rows()).collect();
        in_span(&vs, &m.vec_rows())
    }
}

/// Commutant of constant matrices, restricting the kernel one generator at
/// a time.
pub fn eigenring(gens: &[Matrix<Const>], n: usize) -> Eigenring {
    let mut basis: Vec<Matrix<Const>> = (0..n * n)
        .map(|k| Matrix::unit(n, n, k / n, k % n))
        .collect();
    for g in gens {
        if basis.is_empty() {
            break;
        }
        let cols: Vec<Vec<Const>> = basis
            .iter()
            .map(|e| e.mul(g).sub(&g.mul(e)).vec_rows())
            .collect();
        let ker = Matrix::from_cols(&cols).kernel();
        basis = ker.iter().map(|c| combine(&basis, c)).collect();
    }
    Eigenring { basis }
}

fn combine(ms: &[Matrix<Const>], c: &[Const]) -> Matrix<Const> {
    let (r, k) = (ms[0].rows(), ms[0].cols());
    let mut acc = Matrix::zeros(r, k);
    for (m, a) in ms.iter().zip(c) {
        if !a.is_zero() {
            acc = acc.add(&m.scale(a));
        }
    }
    acc
}

fn trace_mul(a: &Matrix<Const>, b: &Matrix<Const>) -> Const {
    let n = a.rows();
    let mut acc = Const::zero();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (a.get(i, j), b.get(j, i));
            if !x.is_zero() && !y.is_zero() {
                acc = acc.add(&x.mul(y));
            }
        }
    }
    acc
}

/// Radical `{a : tr(a·b) = 0 ∀b}` of a matrix algebra given by a basis.
pub fn trace_radical(alg: &[Matrix<Const>]) -> Vec<Matrix<Const>> {
    if alg.is_empty() {
        return Vec::new();
    }
    let k = alg.len();
    let gram = Matrix::from_fn(k, k, |i, j| trace_mul(&alg[i], &alg[j]));
    gram.kernel().iter().map(|c| combine(alg, c)).collect()
}

/// Associative algebra with identity generated by `gens`.
pub fn algebra_closure(gens: &[Matrix<Const>], n: usize) -> Vec<Matrix<Const>> {
    let id = Matrix::<Const>::identity(n);
    let mut basis: Vec<Matrix<Const>> = Vec::new();
    let mut vecs: Vec<Vec<Const>> = Vec::new();
    let mut queue = vec![id];
    queue.extend(gens.iter().cloned());
    while let Some(m) = queue.pop() {
        let v = m.vec_rows();
        if in_span(&vecs, &v) {
            continue;
        }
        for g in gens {
            queue.push(m.mul(g));
        }
        vecs.push(v);
        basis.push(m);
    }
    basis
}

/// Basis of intertwiners `L` (`d_v×d_u`) with `L·Sᵢ = Tᵢ·L`.
pub fn hom_space(
    s: &[Matrix<Const>],
    t: &[Matrix<Const>],
    du: usize,
    dv: usize,
) -> Vec<Matrix<Const>> {
    let nunk = du * dv;
    if nunk == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<Const>> = Vec::new();
    for (si, ti) in s.iter().zip(t) {
        // (L·S − T·L)[r][c] = Σ_k L[r][k]·S[k][c] − Σ_k T[r][k]·L[k][c]
        for r in 0..dv {
            for c in 0..du {
                let mut row = vec![Const::zero(); nunk];
                for k in 0..du {
                    let v = si.get(k, c);
                    if !v.is_zero() {
                        row[r * du + k] = row[r * du + k].add(v);
                    }
                }
                for k in 0..dv {
                    let v = ti.get(r, k);
                    if !v.is_zero() {
                        row[k * du + c] = row[k * du + c].sub(v);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let ker = if rows.is_empty() {
        Matrix::<Const>::identity(nunk).to_rows()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    ker.iter()
        .map(|v| Matrix::from_vec_rows(dv, du, v))
        .collect()
}

/// `Hom_𝓡(U, V)` for stable subspaces of the same ambient space.
pub fn hom_between(
    u: &ConstSubspace,
    v: &ConstSubspace,
    gens: &[Matrix<Const>],
) -> Vec<Matrix<Const>> {
    hom_space(&u.restrict(gens), &v.restrict(gens), u.dim(), v.dim())
}

fn is_nilpotent(m: &Matrix<Const>) -> bool {
    m.pow(m.rows().max(1)).is_zero()
}

/// Whether two indecomposable modules are isomorphic: some `g∘f` is a unit
/// of the local ring `End(U)`.
pub fn isomorphic_indecomposables(
    su: &[Matrix<Const>],
    sv: &[Matrix<Const>],
    du: usize,
    dv: usize,
) -> bool {
    if du != dv {
        return false;
    }
    let uv = hom_space(su, sv, du, dv);
    if uv.is_empty() {
        return false;
    }
    let vu = hom_space(sv, su, dv, du);
    uv.iter()
        .any(|f| vu.iter().any(|g| !is_nilpotent(&g.mul(f))))
}

/// Candidate eigenring elements: basis elements, then random combinations.
fn candidates(basis: &[Matrix<Const>], rng: &mut ChaCha8Rng) -> Vec<Matrix<Const>> {
    let mut out: Vec<Matrix<Const>> = basis.to_vec();
    if basis.len() > 1 {
        for _ in 0..RANDOM_TRIES {
            let c: Vec<Const> = basis
                .iter()
                .map(|_| Const::int(rng.gen_range(-5..=5)))
                .collect();
            out.push(combine(basis, &c));
        }
    }
    out
}

fn rational_eigenvalues(e: &Matrix<Const>) -> Result<Vec<Const>> {
    let cp = e.char_poly();
    if !cp.is_rational() {
        return Err(Error::ParametricUnsupported(
            "eigenring element with parameter-dependent entries".into(),
        ));
    }
    Ok(rational_roots(&cp)?.into_iter().map(Const::rat).collect())
}

/// Kernel and image bases of a power of `E − λ`.
type FittingPair = (Vec<Vec<Const>>, Vec<Vec<Const>>);

fn fitting_split(e: &Matrix<Const>, lam: &Const) -> Option<FittingPair> {
    let n = e.rows();
    let shifted = e.sub(&Matrix::identity(n).scale(lam));
    let p = shifted.pow(n);
    let ker = p.kernel();
    if ker.is_empty() || ker.len() == n {
        return None;
    }
    let img = span_basis(&p.to_cols(), n);
    Some((ker, img))
}

/// Splits a module given by generator matrices into indecomposables, as
/// bases in its own coordinates.
fn decompose_coords(
    gens: &[Matrix<Const>],
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<Vec<Const>>>> {
    if d == 0 {
        return Ok(Vec::new());
    }
    let end = eigenring(gens, d);
    let rad = trace_radical(&end.basis);
    if end.dim() - rad.len() == 1 {
        return Ok(vec![Matrix::<Const>::identity(d).to_rows()]);
    }
    for e in candidates(&end.basis, rng) {
        for lam in rational_eigenvalues(&e)? {
            let Some((ker, img)) = fitting_split(&e, &lam) else {
                continue;
            };
            let mut out = Vec::new();
            for part in [ker, img] {
                let sub = ConstSubspace::new(d, &part);
                let rs = sub.restrict(gens);
                for piece in decompose_coords(&rs, sub.dim(), rng)? {
                    out.push(piece.iter().map(|c| sub.lift(c)).collect());
                }
            }
            return Ok(out);
        }
    }
    Err(Error::AlgebraicExtensionRequired(
        "no eigenring element with a rational eigenvalue splits the module".into(),
    ))
}

/// Indecomposable summands of a stable subspace.
pub fn indecomposable_summands(
    v: &ConstSubspace,
    gens: &[Matrix<Const>],
    seed: u64,
) -> Result<Vec<ConstSubspace>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rs = v.restrict(gens);
    let pieces = decompose_coords(&rs, v.dim(), &mut rng)?;
    Ok(pieces
        .iter()
        .map(|p| {
            let amb: Vec<Vec<Const>> = p.iter().map(|c| v.lift(c)).collect();
            ConstSubspace::new(v.ambient(), &amb)
        })
        .collect())
}

/// Sum of all summands isomorphic to one indecomposable.
#[derive(Clone, Debug)]
pub struct IsotypicalBlock {
    pub space: ConstSubspace,
    pub pieces: Vec<ConstSubspace>,
}

impl IsotypicalBlock {
    pub fn multiplicity(&self) -> usize {
        self.pieces.len()
    }
}

/// Krull–Schmidt decomposition grouped by isomorphism class, blocks sorted
/// by decreasing dimension.
pub fn isotypical_decomposition(gens: &[Matrix<Const>], n: usize) -> Result<Vec<IsotypicalBlock>> {
    isotypical_decomposition_seeded(gens, n, 0)
}

/// [`isotypical_decomposition`] with an explicit seed for the splitting search.
pub fn isotypical_decomposition_seeded(
    gens: &[Matrix<Const>],
    n: usize,
    seed: u64,
) -> Result<Vec<IsotypicalBlock>> {
    let whole = ConstSubspace::full(n);
    let pieces = indecomposable_summands(&whole, gens, seed)?;
    let mut groups: Vec<(Vec<Matrix<Const>>, Vec<ConstSubspace>)> = Vec::new();
    for p in pieces {
        let rp = p.restrict(gens);
        let hit = groups
            .iter_mut()
            .find(|(r0, g)| isomorphic_indecomposables(r0, &rp, g[0].dim(), p.dim()));
        match hit {
            Some((_, g)) => g.push(p),
            None => groups.push((rp, vec![p])),
        }
    }
    let mut blocks: Vec<IsotypicalBlock> = groups
        .into_iter()
        .map(|(_, pieces)| {
            let mut space = ConstSubspace::zero(n);
            for p in &pieces {
                space = space.sum(p);
            }
            IsotypicalBlock { space, pieces }
        })
        .collect();
    blocks.sort_by_key(|b| std::cmp::Reverse(b.space.dim()));
    Ok(blocks)
}

/// Minimal nonzero stable subspace of a stable `V`.
pub fn irreducible_submodule(v: &ConstSubspace, gens: &[Matrix<Const>]) -> Result<ConstSubspace> {
    if v.dim() == 0 {
        return Err(Error::Contract(
            "irreducible_submodule of the zero space".into(),
        ));
    }
    let rs = v.restrict(gens);
    let coords = irreducible_coords(&rs, v.dim(), &mut ChaCha8Rng::seed_from_u64(0))?;
    let amb: Vec<Vec<Const>> = coords.iter().map(|c| v.lift(c)).collect();
    Ok(ConstSubspace::new(v.ambient(), &amb))
}

fn irreducible_coords(
    gens: &[Matrix<Const>],
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<Const>>> {
    // Socle: common kernel of the radical of the generated algebra.
    let alg = algebra_closure(gens, d);
    let rad = trace_radical(&alg);
    let soc: Vec<Vec<Const>> = if rad.is_empty() {
        Matrix::<Const>::identity(d).to_rows()
    } else {
        let mut stacked = rad[0].clone();
        for r in &rad[1..] {
            stacked = stacked.vstack(r);
        }
        stacked.kernel()
    };
    let sub = ConstSubspace::new(d, &soc);
    if sub.dim() < d {
        let rs = sub.restrict(gens);
        let inner = irreducible_coords(&rs, sub.dim(), rng)?;
        return Ok(inner.iter().map(|c| sub.lift(c)).collect());
    }
    // Semisimple: split eigenspaces of the endomorphism ring.
    let end = eigenring(gens, d);
    if end.dim() == 1 {
        return Ok(soc);
    }
    for e in candidates(&end.basis, rng) {
        for lam in rational_eigenvalues(&e)? {
            let ker = e.sub(&Matrix::identity(d).scale(&lam)).kernel();
            if ker.is_empty() || ker.len() == d {
                continue;
            }
            let sub = ConstSubspace::new(d, &ker);
            let rs = sub.restrict(gens);
            let inner = irreducible_coords(&rs, sub.dim(), rng)?;
            return Ok(inner.iter().map(|c| sub.lift(c)).collect());
        }
    }
    Err(Error::AlgebraicExtensionRequired(
        "semisimple module whose endomorphisms have no rational eigenvalue".into(),
    ))
}

/// Whether a stable subspace has no proper nonzero stable subspace.
pub fn is_irreducible(v: &ConstSubspace, gens: &[Matrix<Const>]) -> Result<bool> {
    Ok(v.dim() > 0 && irreducible_submodule(v, gens)?.dim() == v.dim())
}

/// Smallest constant stable subspace whose `𝐤`-span contains the given
/// vectors over `Q(x)`.
pub fn associated_psi_space(
    ambient: usize,
    vecs: &[Vec<RatFunc>],
    gens: &[Matrix<Const>],
) -> ConstSubspace {
    let mut consts: Vec<Vec<Const>> = Vec::new();
    for v in vecs {
        let col = Matrix::column_vector(v.clone());
        for g in wei_norman(&col).gens {
            consts.push(g.col(0));
        }
    }
    spin(ambient, &consts, gens)
}

/// Scaled inverse check used when transporting bases.
pub(crate) fn is_invertible(m: &Matrix<Const>) -> bool {
    m.is_square() && !m.det().is_zero()
}

/// Some invertible element of `span(homs)`, if any.
pub(crate) fn invertible_hom(homs: &[Matrix<Const>], seed: u64) -> Option<Matrix<Const>> {
    if let Some(h) = homs.iter().find(|h| is_invertible(h)) {
        return Some(h.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let c: Vec<Const> = homs
            .iter()
            .map(|_| Const::int(rng.gen_range(-5..=5)))
            .collect();
        if homs.is_empty() {
            return None;
        }
        let h = combine(homs, &c);
        if is_invertible(&h) {
            return Some(h);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix<Const> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&a| Const::int(a)).collect())
                .collect(),
        )
    }

    #[test]
    fn eigenring_of_identity_is_full() {
        let e = eigenring(&[Matrix::identity(3)], 3);
        assert_eq!(e.dim(), 9);
    }

    #[test]
    fn eigenring_of_jordan_block() {
        let j = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let e = eigenring(&[j], 3);
        assert_eq!(e.dim(), 3);
        assert!(e.contains(&Matrix::identity(3)));
    }

    #[test]
    fn nilpotent_line() {
        let n = m(&[&[0, 1], &[0, 0]]);
        let u = irreducible_submodule(&ConstSubspace::full(2), &[n]).unwrap();
        assert_eq!(
            u,
            ConstSubspace::new(2, &[vec![Const::int(1), Const::int(0)]])
        );
    }

    #[test]
    fn diagonal_splits_into_isotypical_blocks() {
        let d = m(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]);
        let blocks = isotypical_decomposition(&[d], 3).unwrap();
        let dims: Vec<usize> = blocks.iter().map(|b| b.space.dim()).collect();
        assert_eq!(dims, vec![2, 1]);
        assert_eq!(blocks[0].multiplicity(), 2);
    }

    #[test]
    fn rotation_needs_extension() {
        let r = m(&[&[0, -1], &[1, 0]]);
        let res = irreducible_submodule(&ConstSubspace::full(2), std::slice::from_ref(&r));
        // The rotation is irreducible over the rationals but End has dimension 2.
        assert!(matches!(res, Err(Error::AlgebraicExtensionRequired(_))));
        let blocks = isotypical_decomposition(&[r], 2);
        assert!(matches!(blocks, Err(Error::AlgebraicExtensionRequired(_))));
    }

    #[test]
    fn schur_dimensions() {
        let a = m(&[&[1]]);
        let b = m(&[&[2]]);
        assert_eq!(hom_space(std::slice::from_ref(&a), std::slice::from_ref(&a), 1, 1).len(), 1);
        assert_eq!(hom_space(&[a], &[b], 1, 1).len(), 0);
    }

    #[test]
    fn constant_kernel_vector() {
        let z = m(&[&[0, 0], &[0, 0]]);
        let v = vec![RatFunc::int(3), RatFunc::int(0)];
        let s = associated_psi_space(2, &[v], &[z]);
        assert_eq!(s.dim(), 1);
    }
}
