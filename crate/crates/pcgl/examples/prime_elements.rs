// Level sets and homogeneous Poisson-prime elements of the matrix algebra:
// every `y_k` is a solid minor ending at the corresponding entry.

use std::error::Error;

use pcgl::cgl::{certify_prime_sequence, compute_eta_and_primes};
use pcgl::presets::{build_matrix_poisson, matrix_index, solid_minor};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (m, n) = (2, 3);
    let p = build_matrix_poisson(m, n);
    let (eta, primes) = compute_eta_and_primes(&p)?;
    let cert = certify_prime_sequence(&p, &eta, &primes)?;
    println!("rank {} with {} pair checks", eta.rank, cert.pair_checks);
    for r in 1..=m {
        for c in 1..=n {
            let k = matrix_index(n, r - 1, c - 1);
            let l = r.min(c);
            let minor = solid_minor(m, n, (r + 1 - l, r), (c + 1 - l, c))?;
            assert_eq!(primes.y[k], minor);
            println!("y{} = {}", k + 1, p.render(&primes.y[k]));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
