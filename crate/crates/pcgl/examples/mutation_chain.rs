// Walk `Gamma_N` and confirm each adjacent pair of seeds is either equal
// or related by one mutation.

use std::error::Error;

use pcgl::cluster::{ClusterData, LinkBranch};
use pcgl::presets::build_matrix_poisson;
use pcgl::symmetric::one_line;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cd = ClusterData::new(&build_matrix_poisson(2, 3))?;
    let report = cd.chain_verify()?;
    for link in report.links.iter().filter(|l| l.branch == LinkBranch::Mutation) {
        println!(
            "{} -> {}: mutation at {}",
            one_line(&link.tau),
            one_line(&link.tau_prime),
            link.k_bullet.map_or(0, |k| k + 1)
        );
    }
    println!(
        "{} links, all verified: {}",
        report.links.len(),
        report.all_verified
    );
    assert!(report.all_verified);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
