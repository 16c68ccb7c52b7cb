//! Dirichlet domain of <M132, H12, S4> acting on the rank-4 lattice with
//! zero diagonal and 2 off the diagonal.

use conelab::cone::{dirichlet_domain, fmt_vec};
use conelab::lattice::{translation_isometry, IntLattice};
use conelab::linalg::{ivec, IntMatrix};

fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.clone();
        let first = rest.remove(i);
        for mut p in permutations(rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = IntLattice::new(IntMatrix::from([[0, 2, 2, 2], [2, 0, 2, 2], [2, 2, 0, 2], [2, 2, 2, 0]]))?;

    // translation by L3 - L2 on the elliptic fibration with fibre class L1
    let m132 = translation_isometry(&l, &ivec(&[1, 0, 0, 0]), &ivec(&[0, -1, 1, 0]))?;
    println!("M132 = {m132}");
    let h12 = IntMatrix::from([[1, 0, 2, 2], [0, 1, 2, 2], [0, 0, -1, 0], [0, 0, 0, -1]]);

    let mut gens = vec![("M132".to_string(), m132), ("H12".to_string(), h12)];
    for p in permutations((0..4).collect()) {
        let rows: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| i64::from(p[j] == i)).collect()).collect();
        let label = p.iter().map(|i| (i + 1).to_string()).collect::<String>();
        gens.push((format!("s{label}"), IntMatrix::from_i64_rows(&rows)?));
    }

    let d = dirichlet_domain(&l, &ivec(&[1, 1, 1, 1]), &gens, 2, true)?;
    println!("{} group elements of word length <= 2", d.words);
    for p in &d.positivity {
        println!("  ray {}  norm {}", fmt_vec(&p.ray), p.norm);
    }
    println!("all rays in the closed positive cone: {}", d.all_rays_positive());
    Ok(())
}
