mod common;

use common::load;
use redform::field::{Const, Matrix};
use redform::lie::{algebraic_envelope, lie_of_matrix};

#[test]
fn nilpotent_reduced_envelope_is_five_dimensional() {
    let red = load("nilpotent_reduced");
    let l = lie_of_matrix(red.matrix()).unwrap();
    assert_eq!(l.dim(), 5);
}

#[test]
fn nilpotent_original_envelope() {
    let l = lie_of_matrix(load("nilpotent").matrix()).unwrap();
    println!("original envelope dimension {}", l.dim());
    assert_eq!(l.dim(), 9);
}

#[test]
fn zero_matrix_envelope() {
    let z = Matrix::<Const>::zeros(3, 3);
    assert_eq!(algebraic_envelope(&[z], 3).unwrap().dim(), 0);
}
