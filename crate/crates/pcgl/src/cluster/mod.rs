//! Seeds, exchange matrices, compatible pairs and the verification of the
//! cluster structure along `Gamma_N`.

pub mod mutation;
pub mod seeds;

pub use mutation::{
    bt_r, check_compatible, e_matrix, f_matrix, mutate_matrix, mutate_pair, mutate_r_with, CompatiblePair,
    ExchangeMatrix,
};
pub use seeds::{
    check_log_canonical, express_in_cluster, laurent_phenomenon, mutate_seed, solve_btilde, upper_membership,
    verify_one_step, ChainReport, ClusterData, LinkBranch, LinkReport, MembershipCertificate,
    MembershipWitness, Seed, TauSeedBundle,
};
