mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{load, mat, rf};
use redform::diffsys::{DiffSystem, GaugeMatrix};
use redform::field::{q, Const, Matrix, RatFunc, Ring, Q};
use redform::reduction::{reduce_full, reduce_two_block, ReductionOptions};

fn opts() -> ReductionOptions {
    ReductionOptions::default()
}

fn lower_left(sys: &DiffSystem) -> Matrix<RatFunc> {
    let n1 = sys.partition()[0];
    sys.matrix().submatrix(n1, 0, sys.dim() - n1, n1)
}

#[test]
fn so3xsl2_reduces_to_diagonal() {
    let sys = load("so3xsl2");
    let r = reduce_full(&sys, &opts()).unwrap();
    assert!(lower_left(&r.a_red).is_zero());
    let reference = mat(&[
        &["1", "0", "0", "0", "0"],
        &["0", "1", "0", "0", "0"],
        &["0", "0", "1", "0", "0"],
        &["1", "1/x", "0", "1", "0"],
        &["-1/(x-1)", "0", "0", "0", "1"],
    ]);
    assert_eq!(r.p.inverse(), &reference);
    assert_eq!(sys.gauge(&r.p).unwrap(), r.a_red);
}

#[test]
fn so3xb2_keeps_bottom_level() {
    let r = reduce_full(&load("so3xb2"), &opts()).unwrap();
    let cut = &r.cuts[0];
    assert_eq!(cut.levels.len(), 2);
    let top = &cut.levels[0];
    assert_eq!(top.level, 2);
    assert_eq!(top.solutions, vec![vec![rf("1"), rf("-x"), rf("-1-x")]]);
    let bottom = &cut.levels[1];
    assert_eq!(bottom.level, 1);
    assert_eq!(bottom.removed(), 0);
    let reference = mat(&[
        &["0", "1", "x", "0", "0"],
        &["-1", "0", "0", "0", "0"],
        &["-x", "0", "0", "0", "0"],
        &["2+x", "x", "x", "x", "1"],
        &["0", "0", "0", "0", "-x"],
    ]);
    assert_eq!(r.a_red.matrix(), &reference);
    assert_eq!(r.lie_basis.dim(), 8);
}

#[test]
fn b3xb2_residue_and_free_parameter() {
    let sys = load("b3xb2");
    let r = reduce_two_block(&sys, &opts()).unwrap();
    let cut = &r.cuts[0];
    let dims: Vec<usize> = cut.blocks.iter().map(|b| b.dim).collect();
    assert_eq!(dims, vec![4, 2]);
    assert_eq!(r.lie_basis.dim(), 6);
    let ours = mat(&[
        &["1", "x", "0", "0", "0"],
        &["0", "-1-x", "0", "0", "0"],
        &["0", "0", "x", "0", "0"],
        &["0", "1-x", "0", "x", "1"],
        &["0", "-(x^2-x-1)/x", "0", "0", "-x"],
    ]);
    assert_eq!(r.a_red.matrix(), &ours);
    // The reference reduced form uses the lift E41 + E42 and differs by the constant gauge Id − E42.
    let reference = mat(&[
        &["1", "x", "0", "0", "0"],
        &["0", "-1-x", "0", "0", "0"],
        &["0", "0", "x", "0", "0"],
        &["0", "x+2", "0", "x", "1"],
        &["0", "-(x^2-x-1)/x", "0", "0", "-x"],
    ]);
    let shift = GaugeMatrix::from_sub(3, &mat(&[&["0", "-1", "0"], &["0", "0", "0"]]));
    assert_eq!(r.a_red.gauge(&shift).unwrap().matrix(), &reference);

    assert_eq!(cut.ledger.names.len(), 1);
    let mut seen = BTreeSet::new();
    for v in [q(0, 1), q(1, 1), q(-7, 3)] {
        let (b, s) = cut.specialize(&BTreeMap::from([(0, v)])).unwrap();
        let g = GaugeMatrix::from_sub(3, &b);
        assert_eq!(lower_left(&sys.gauge(&g).unwrap()), s);
        seen.insert(format!("{s:?}"));
    }
    assert_eq!(seen.len(), 1);
}

#[test]
fn nilpotent_matches_reference_reduction() {
    let sys = load("nilpotent");
    let r = reduce_full(&sys, &opts()).unwrap();
    assert_eq!(r.a_red, load("nilpotent_reduced"));
    assert_eq!(r.lie_basis.dim(), 5);
    let cut = &r.cuts[0];
    let dims: Vec<usize> = cut.blocks.iter().map(|b| b.dim).collect();
    assert_eq!(dims, vec![10, 5, 1]);
    let eq1 = cut
        .levels
        .iter()
        .find(|l| l.block == 0 && l.level == 3)
        .unwrap();
    assert_eq!((eq1.rank, eq1.components), (1, 2));
    // Projections of every explored component onto the two level-4 parameters.
    let led = &cut.ledger;
    let (i1, i2) = (
        led.index_of("c1_4_1_1").unwrap(),
        led.index_of("c1_4_2_1").unwrap(),
    );
    let pairs: BTreeSet<(Q, Q)> = led
        .components
        .iter()
        .map(|c| {
            let v = |i: usize| c.fixed[&i].as_rational().unwrap().clone();
            (v(i2), v(i1))
        })
        .collect();
    assert_eq!(
        pairs,
        BTreeSet::from([(q(0, 1), q(0, 1)), (q(1, 2), q(0, 1))])
    );
    let reference_inverse = mat(&[
        &["1", "0", "0", "0", "0", "0", "0", "0"],
        &["0", "1", "0", "0", "0", "0", "0", "0"],
        &["0", "0", "1", "0", "0", "0", "0", "0"],
        &["0", "0", "0", "1", "0", "0", "0", "0"],
        &[
            "-1/x+3/4",
            "3/2-2/x",
            "1/2-7/(2*x)",
            "0",
            "1",
            "0",
            "0",
            "0",
        ],
        &[
            "1/2",
            "1/x-3/4",
            "1/(2*x)",
            "-1/2-5/(2*x)",
            "0",
            "1",
            "0",
            "0",
        ],
        &["1", "1", "1/x-5/4", "-5/2+2/x", "0", "0", "1", "0"],
        &["-1/2", "1", "1/2", "-1/x+5/4", "0", "0", "0", "1"],
    ]);
    assert_eq!(r.p.inverse(), &reference_inverse);
}

#[test]
fn single_block_is_untouched() {
    let a = mat(&[&["x", "1"], &["0", "1/x"]]);
    let sys = DiffSystem::single_block(a).unwrap();
    let r = reduce_full(&sys, &opts()).unwrap();
    assert!(r.p.matrix().is_identity());
    assert_eq!(r.a_red, sys);
    assert!(r.cuts.is_empty());
}

#[test]
fn three_blocks_reduce_from_the_corner() {
    let a = mat(&[&["0", "0", "0"], &["1", "0", "0"], &["2*x", "1/x", "0"]]);
    let sys = DiffSystem::new(a, vec![1, 1, 1]).unwrap();
    let r = reduce_full(&sys, &opts()).unwrap();
    let expected = mat(&[&["0", "0", "0"], &["0", "0", "0"], &["0", "1/x", "0"]]);
    assert_eq!(r.a_red.matrix(), &expected);
    assert_eq!(sys.gauge(&r.p).unwrap(), r.a_red);
    assert_eq!(r.cuts.len(), 2);
    assert_eq!(r.lie_basis.dim(), 1);
    let fixed: Vec<&Const> = r.ledger.components[0].fixed.values().collect();
    assert!(fixed.iter().all(|c| c.is_zero()));
}
