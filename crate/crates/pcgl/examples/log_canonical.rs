// Brackets of the cluster variables of every seed are scalar multiples of
// their products.

use std::error::Error;

use pcgl::cluster::{check_log_canonical, ClusterData};
use pcgl::presets::build_matrix_poisson;
use pcgl::symmetric::one_line;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cd = ClusterData::new(&build_matrix_poisson(2, 3))?;
    for seed in cd.gamma_seeds()? {
        let pairs = check_log_canonical(&cd.sym.p, &seed)?;
        println!("{}: {pairs} brackets match r", one_line(&seed.tau));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
