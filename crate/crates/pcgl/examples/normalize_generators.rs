// Scaling a generator breaks the normalization `pi = 1`; rescaling restores it.

use std::error::Error;

use pcgl::arith::q;
use pcgl::presets::build_matrix_poisson;
use pcgl::symmetric::{rescale_generators, SymmetricCgl};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = build_matrix_poisson(2, 2);
    // Substitute x2 := 3 x2.
    let skewed = p.rescaled(&[q(1, 1), q(1, 3), q(1, 1), q(1, 1)])?;
    let s = SymmetricCgl::new(&skewed)?;
    println!("pi_[1,4] before: {}", s.u_element_and_pi(0, 1)?.pi);
    let r = rescale_generators(&s)?;
    let gamma: Vec<String> = r.gamma.iter().map(|g| g.to_string()).collect();
    println!("gamma = [{}]", gamma.join(", "));
    let after = SymmetricCgl::new(&r.presentation)?;
    println!("pi_[1,4] after: {}", after.u_element_and_pi(0, 1)?.pi);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
