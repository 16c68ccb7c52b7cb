//! Polyhedral cone operations: a movable cone from its inequalities, duals,
//! and a two-dimensional covering by images of nef cones.

use conelab::cone::{covers, dual, fmt_vec, quotient_image, Cone};
use conelab::linalg::{ivec, IntMatrix, RatMatrix};

fn rows(rs: &[&[i64]]) -> Vec<Vec<num_bigint::BigInt>> {
    rs.iter().map(|r| ivec(r)).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // coordinates (L1, L2, -F)
    let movable = Cone::from_facets(3, &rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 1, -2], &[2, 1, -4]]))?;
    println!("movable cone: {movable}");
    println!("its dual: {}", dual(&movable, &RatMatrix::identity(3))?);

    // nef cones of three models in (L1, L2, F), pushed to the fibre by L_i + F
    let q = IntMatrix::from([[1, 0, 1], [0, 1, 1]]).to_rat();
    let models = [
        rows(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, -1]]),
        rows(&[&[1, 1, -1], &[0, 1, 0], &[0, 4, -1]]),
        rows(&[&[1, 1, -1], &[1, 0, 0], &[4, 0, -1]]),
    ];
    let mut images = Vec::new();
    for (i, m) in models.iter().enumerate() {
        let image = quotient_image(&Cone::from_rays(3, m)?, &q)?;
        println!("image of nef cone {i}: {image}");
        images.push(image);
    }
    let domain = Cone::from_rays(2, &rows(&[&[-1, 3], &[3, -1]]))?;
    let verdict = covers(&domain, &images)?;
    println!("domain {domain} covered: {}", verdict.covered);

    let partial = covers(&domain, &images[..2])?;
    if let Some(w) = partial.witness {
        println!("without the last model, {} is uncovered", fmt_vec(&w));
    }
    Ok(())
}
