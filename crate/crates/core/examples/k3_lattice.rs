//! Lattice-side analysis of the K3 fibre with Gram matrix [[4,6],[6,4]].

use conelab::lattice::{
    certify_no_norm, disc_action, discriminant_group, element_order, evaluate_at_slope, find_norm_vectors,
    is_isometry, positive_cone_boundary, torelli_check, IntLattice,
};
use conelab::linalg::IntMatrix;
use num_bigint::BigInt;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = IntLattice::new(IntMatrix::from([[4, 6], [6, 4]]))?;
    let minus_two = BigInt::from(-2);

    let found = find_norm_vectors(&l, &minus_two, 50);
    println!("(-2)-vectors with |x_i| <= 50: {}", found.len());
    match certify_no_norm(&l, &minus_two, 16) {
        Some(m) => println!("x.x = -2 has no solution modulo {m}"),
        None => println!("no modular certificate up to 16"),
    }

    let d = discriminant_group(&l);
    let factors: Vec<String> = d.factors.iter().map(ToString::to_string).collect();
    println!("discriminant group: Z/{} (order {})", factors.join(" + Z/"), d.order);

    let (lo, hi) = positive_cone_boundary(&l)?;
    println!("positive cone between slopes {lo} and {hi}");
    println!("norm at the lower slope: {}", evaluate_at_slope(&l, &lo)?);

    let m = IntMatrix::from([[21, 8], [-8, -3]]);
    println!("M = {m}");
    println!("  isometry: {}", is_isometry(&l, &m)?);
    println!("  {}", element_order(&m)?);
    println!("  acts on L*/L by {}", disc_action(&l, &m)?.kind);
    println!("  Torelli: {}", torelli_check(&l, &m, &found)?);
    Ok(())
}
