// Matrix and compatible-pair mutation on a small hand-made pair.

use std::error::Error;

use pcgl::arith::linalg::from_int;
use pcgl::cluster::{check_compatible, mutate_matrix, mutate_pair, CompatiblePair, ExchangeMatrix};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let b = ExchangeMatrix::new(vec![0], vec![vec![0], vec![-1], vec![-1], vec![1]])?;
    let r = from_int(&[
        vec![0, 1, 1, 0],
        vec![-1, 0, 0, 0],
        vec![-1, 0, 0, 0],
        vec![0, 0, 0, 0],
    ]);
    println!(
        "beta = {:?}",
        check_compatible(&r, &b)?
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
    );
    let pair = CompatiblePair { r, btilde: b.clone() };
    let once = mutate_pair(&pair, 0)?;
    println!("mu_1(B) = {:?}", once.btilde.rows);
    assert_eq!(mutate_pair(&once, 0)?, pair);
    assert_eq!(mutate_matrix(&mutate_matrix(&b, 0)?, 0)?, b);
    println!("mutation is an involution on this pair");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
