// Certify elements of the algebra in the upper cluster algebra, and see how
// inverting a frozen variable changes the answer.

use std::error::Error;

use pcgl::cluster::{upper_membership, ClusterData};
use pcgl::expr::Expr;
use pcgl::presets::build_matrix_poisson;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cd = ClusterData::new(&build_matrix_poisson(2, 2))?;
    let seeds = cd.gamma_seeds()?;
    let cases: [(&str, &[usize]); 4] = [
        ("t22", &[]),
        ("t11*t22 - t12*t21", &[]),
        ("y4^-1", &[]),
        ("y4^-1", &[3]),
    ];
    for (elem, inv) in cases {
        let cert = upper_membership(&cd, &seeds, &Expr::parse(elem)?, inv)?;
        let inv1: Vec<usize> = inv.iter().map(|i| i + 1).collect();
        println!("{elem:<20} inv={inv1:?} certified={}", cert.certified);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
