use pcgl::arith::linalg;
use pcgl::cluster::*;
use pcgl::expr::Expr;
use pcgl::presets::{build_matrix_poisson, matrix_index, solid_minor};
use pcgl::symmetric::gamma_chain;
use pcgl::{Laurent, PcglError};

fn v(xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|x| x - 1).collect()
}

fn m22() -> ClusterData {
    ClusterData::new(&build_matrix_poisson(2, 2)).unwrap()
}

#[test]
fn initial_exchange_matrix_two_by_two() {
    let cd = m22();
    let b = cd.initial_seed().unwrap();
    assert_eq!(b.btilde.ex, vec![0]);
    assert_eq!(b.btilde.rows, vec![vec![0], vec![-1], vec![-1], vec![1]]);
    assert!(cd.gamma.iter().all(|g| *g == pcgl::arith::qi(1)));
}

#[test]
fn oracle_solve_matches_hand_column() {
    // Independent check: b = (0,-1,-1,1) satisfies Omega_r(b, e_j) = 2 delta_j1
    // and has total weight zero.
    let cd = m22();
    let b = cd.initial_seed().unwrap();
    let col = [0i64, -1, -1, 1];
    for j in 0..4 {
        let s: pcgl::Q = (0..4).map(|i| pcgl::arith::qi(col[i]) * &b.r[i][j]).sum();
        assert_eq!(s, pcgl::arith::qi(if j == 0 { 2 } else { 0 }));
    }
    for t in 0..4 {
        let w: i64 = (0..4).map(|k| col[k] * b.weights[k][t]).sum();
        assert_eq!(w, 0);
    }
}

#[test]
fn seed_for_rotated_tau() {
    let cd = m22();
    let p = &cd.sym.p;
    let initial = cd.initial_seed().unwrap();
    let b = cd.seed_for_tau(&v(&[2, 3, 4, 1])).unwrap();
    let det = solid_minor(2, 2, (1, 2), (1, 2)).unwrap();
    assert_eq!(b.ytilde, vec![p.x(3), p.x(1), p.x(2), det]);
    let y = |i| Laurent::var(4, i);
    let first = initial.express(&b.ytilde[0]).unwrap();
    let want = (&y(3) + &(&y(1) * &y(2))).exact_divide(&y(0)).unwrap();
    assert_eq!(first, want);
    assert_eq!(cd.seed_for_tau(&v(&[2, 3, 1, 4])).unwrap().ytilde, initial.ytilde);
}

#[test]
fn links_in_two_by_two() {
    let cd = m22();
    let report = cd.chain_verify().unwrap();
    assert!(report.all_verified, "{:?}", report.links);
    assert_eq!(report.links.len(), 6);
    let first = &report.links[0];
    assert_eq!(first.branch, LinkBranch::Equal);
    let mutation: Vec<_> = report
        .links
        .iter()
        .filter(|l| l.branch == LinkBranch::Mutation)
        .collect();
    assert_eq!(mutation[0].tau, v(&[2, 3, 1, 4]));
    assert_eq!(mutation[0].k_bullet, Some(0));
}

#[test]
fn chain_two_by_three() {
    let cd = ClusterData::new(&build_matrix_poisson(2, 3)).unwrap();
    let report = cd.chain_verify().unwrap();
    assert_eq!(report.links.len(), 15);
    assert!(
        report.all_verified,
        "{:?}",
        report.links.iter().find(|l| !l.verified)
    );
}

#[test]
fn log_canonical_two_by_three() {
    let cd = ClusterData::new(&build_matrix_poisson(2, 3)).unwrap();
    for b in cd.gamma_seeds().unwrap() {
        assert_eq!(check_log_canonical(&cd.sym.p, &b).unwrap(), 15);
    }
}

#[test]
fn membership_two_by_two() {
    let cd = m22();
    let seeds = cd.gamma_seeds().unwrap();
    for j in 1..=4 {
        let f = Expr::parse(&format!("x{j}")).unwrap();
        assert!(upper_membership(&cd, &seeds, &f, &[]).unwrap().certified);
    }
    let f = Expr::parse("y4^-1").unwrap();
    let c = upper_membership(&cd, &seeds, &f, &[]).unwrap();
    assert!(!c.certified);
    assert!(matches!(
        c.witnesses[0].failure,
        Some(PcglError::NotInRing { var: 3 })
    ));
    assert!(upper_membership(&cd, &seeds, &f, &[3]).unwrap().certified);
    let f = Expr::parse("t11*t22 - t12*t21 + 1").unwrap();
    assert!(upper_membership(&cd, &seeds, &f, &[]).unwrap().certified);
}

#[test]
fn initial_support_pattern_three_by_three() {
    let (m, n) = (3, 3);
    let cd = ClusterData::new(&build_matrix_poisson(m, n)).unwrap();
    let b = cd.initial_seed().unwrap();
    for r in 0..m {
        for c in 0..n {
            for r2 in 0..m - 1 {
                for c2 in 0..n - 1 {
                    let i = matrix_index(n, r, c);
                    let k = matrix_index(n, r2, c2);
                    let dr = r as i64 - r2 as i64;
                    let dc = c as i64 - c2 as i64;
                    let adjacent = (dr == 0 && dc.abs() == 1)
                        || (dc == 0 && dr.abs() == 1)
                        || (dr == dc && dr.abs() == 1);
                    let e = b.btilde.entry(i, k);
                    assert_eq!(e != 0, adjacent, "entry ({i},{k})");
                    assert!(e.abs() <= 1);
                }
            }
        }
    }
    assert_eq!(b.btilde.rank(), 4);
    let _ = linalg::rank(&b.r);
}

#[test]
fn seed_mutation_matches_chain() {
    let cd = m22();
    let initial = cd.initial_seed().unwrap();
    let chain = gamma_chain(4);
    let seeds: Vec<_> = chain
        .elements
        .iter()
        .map(|t| cd.seed_for_tau(t).unwrap())
        .collect();
    let s0 = Seed::from_bundle(&initial, &seeds[2]).unwrap();
    s0.check_invariants().unwrap();
    let s1 = mutate_seed(&s0, 0).unwrap();
    assert_eq!(s1, Seed::from_bundle(&initial, &seeds[3]).unwrap());
    assert_eq!(mutate_seed(&s1, 0).unwrap(), s0);
}
