// Reverse-order data, the permutations of `Gamma_N`, and interval primes.

use std::error::Error;

use pcgl::presets::build_matrix_poisson;
use pcgl::symmetric::{compute_d_integers, gamma_chain, one_line, SymmetricCgl};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let s = SymmetricCgl::new(&build_matrix_poisson(2, 3))?;
    let d = compute_d_integers(&s.p, &s.eta, &s.lambda_star)?;
    println!(
        "lambda* = {:?}, d = {:?}",
        s.lambda_star.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        d.d
    );

    let chain = gamma_chain(s.n());
    for tau in chain.elements.iter().take(5) {
        let seq = s.y_sequence_for_tau(tau)?;
        let polys: Vec<String> = seq.iter().map(|ip| s.p.render(&ip.poly)).collect();
        println!("{} -> {}", one_line(tau), polys.join(", "));
    }
    let u = s.u_element_and_pi(0, 1)?;
    println!("u_[1,5] = {} with pi = {}", s.p.render(&u.u), u.pi);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
