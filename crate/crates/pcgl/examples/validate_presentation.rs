// Load a presentation from JSON, check its axioms, and see a failing input.

use std::error::Error;

use pcgl::io::{parse_presentation, presentation_to_json};
use pcgl::poisson::validate_algebra;
use pcgl::presets::build_matrix_poisson;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let text = presentation_to_json(&build_matrix_poisson(2, 2));
    let p = parse_presentation(&text)?;
    let report = validate_algebra(&p, None);
    println!(
        "2x2 matrices: jacobi={} nilpotent={} homogeneous={}",
        report.jacobi, report.nilpotent, report.homogeneous
    );
    assert!(report.is_ok());

    // Two commuting generators where h_2 kills x_2: lambda_2 = 0.
    let bad = r#"{
        "n_gens": 2, "torus_rank": 2,
        "weights": [[1, 0], [0, 1]],
        "h": [["1", "0"], ["0", "0"]],
        "delta": []
    }"#;
    let report = validate_algebra(&parse_presentation(bad)?, None);
    for e in &report.failures {
        println!("rejected: [{}] {e}", e.code());
    }
    assert!(!report.is_ok());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
