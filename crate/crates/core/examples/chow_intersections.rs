//! Intersection numbers on the blowup of P1 x P3 along a curve cut out by
//! two members of |H|, H = L1 + 2 L2.

use conelab::chow::{base_curve_class, curve_genus, fiber_gram, parse_class, top_value, ChowClass, ChowRing};
use num_bigint::BigInt;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // L1^2 = 0, L2^4 = 0, L1 L2^3 = 1
    let ring = ChowRing::new(
        vec!["L1".into(), "L2".into()],
        4,
        vec![vec![2, 0], vec![0, 4]],
        vec![(vec![1, 3], BigInt::from(1))],
    )?;
    let h = parse_class("L1 + 2*L2", &ring)?;

    let h4 = h.power(4);
    println!("H^4 = {h4} = {}", top_value(&h4)?);

    let basis = [ChowClass::var(&ring, 0), ChowClass::var(&ring, 1)];
    println!("fibre Gram matrix: {}", fiber_gram(&basis, &h)?);
    println!("base curve H^3 = {}", base_curve_class(&h)?);
    println!("genus of the base curve: {}", curve_genus(&h)?);

    let e = parse_class("(L1 + L2)^2 * (3*L2 - L1)^2", &ring)?;
    println!("(L1 + L2)^2 (3 L2 - L1)^2 = {}", top_value(&e)?);
    Ok(())
}
