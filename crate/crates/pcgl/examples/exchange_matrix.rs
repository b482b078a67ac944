// Solve for the initial exchange matrix and inspect the compatible pair.

use std::error::Error;

use pcgl::cluster::{check_compatible, ClusterData};
use pcgl::presets::build_matrix_poisson;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cd = ClusterData::new(&build_matrix_poisson(3, 3))?;
    let seed = cd.initial_seed()?;
    println!(
        "ex = {:?}",
        seed.btilde.ex.iter().map(|k| k + 1).collect::<Vec<_>>()
    );
    for (i, row) in seed.btilde.rows.iter().enumerate() {
        println!("{:>3} {:?}", i + 1, row);
    }
    let beta = check_compatible(&seed.r, &seed.btilde)?;
    println!(
        "diagonal of B^T r: {:?}",
        beta.iter().map(|b| b.to_string()).collect::<Vec<_>>()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
