//! Every runnable example doubles as a test.

macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(
    validate_presentation,
    "validate_presentation.rs",
    validate_presentation_runs
);
example!(prime_elements, "prime_elements.rs", prime_elements_runs);
example!(
    symmetric_structure,
    "symmetric_structure.rs",
    symmetric_structure_runs
);
example!(
    normalize_generators,
    "normalize_generators.rs",
    normalize_generators_runs
);
example!(exchange_matrix, "exchange_matrix.rs", exchange_matrix_runs);
example!(mutation_chain, "mutation_chain.rs", mutation_chain_runs);
example!(log_canonical, "log_canonical.rs", log_canonical_runs);
example!(upper_membership, "upper_membership.rs", upper_membership_runs);
example!(pair_mutation, "pair_mutation.rs", pair_mutation_runs);
