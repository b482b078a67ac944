//! Derived values checked against oracles that do not share code paths with
//! the library: a permutation-expansion determinant, the bracket engine,
//! brute-force enumeration and a recursion on permuted presentations.

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use pcgl::arith::{q, qi};
use pcgl::cgl::{alpha_q_matrices, compute_eta_and_primes, EtaData};
use pcgl::cluster::{
    check_compatible, express_in_cluster, laurent_phenomenon, mutate_pair, mutate_r_with, ClusterData,
    CompatiblePair, ExchangeMatrix,
};
use pcgl::expr::Expr;
use pcgl::presets::{build_affine_space, build_matrix_poisson, matrix_index};
use pcgl::symmetric::{d_integers_for, enumerate_xi, gamma_chain, permuted_presentation, SymmetricCgl};
use pcgl::{ExpVec, Laurent, Presentation, Q};

/// Shapes with at most nine entries.
fn small_shapes() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for m in 1..=9 {
        for n in 1..=9 {
            if m * n <= 9 {
                v.push((m, n));
            }
        }
    }
    v
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                s = -s;
            }
        }
    }
    s
}

/// Determinant of the `l x l` block of `t` ending at 0-based `(r, c)`, by
/// summing over all permutations.
fn leibniz_minor(m: usize, n: usize, r: usize, c: usize) -> Laurent {
    let l = r.min(c) + 1;
    let (r0, c0) = (r + 1 - l, c + 1 - l);
    let mut out = Laurent::zero(m * n);
    for p in permutations(l) {
        let mut e = ExpVec::zero(m * n);
        for (a, &b) in p.iter().enumerate() {
            e.0[matrix_index(n, r0 + a, c0 + b)] += 1;
        }
        out.add_term(e, qi(sign(&p)));
    }
    out
}

fn level_partition(labels: &[i64]) -> BTreeSet<Vec<usize>> {
    let mut by: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, &l) in labels.iter().enumerate() {
        by.entry(l).or_default().push(k);
    }
    by.into_values().collect()
}

fn eta_partition(eta: &EtaData) -> BTreeSet<Vec<usize>> {
    level_partition(&eta.eta.iter().map(|&x| x as i64).collect::<Vec<_>>())
}

#[test]
fn prime_sequence_is_solid_minors_for_every_small_shape() {
    for (m, n) in small_shapes() {
        let p = build_matrix_poisson(m, n);
        let (_, seq) = compute_eta_and_primes(&p).unwrap();
        for r in 0..m {
            for c in 0..n {
                assert_eq!(
                    seq.y[matrix_index(n, r, c)],
                    leibniz_minor(m, n, r, c),
                    "{m}x{n} entry ({}, {})",
                    r + 1,
                    c + 1
                );
            }
        }
    }
}

#[test]
fn three_by_three_determinant_has_six_terms() {
    let d = leibniz_minor(3, 3, 2, 2);
    assert_eq!(d.len(), 6);
    let (_, seq) = compute_eta_and_primes(&build_matrix_poisson(3, 3)).unwrap();
    assert_eq!(seq.y[8], d);
}

#[test]
fn level_sets_are_diagonals() {
    for (m, n) in small_shapes() {
        let (eta, _) = compute_eta_and_primes(&build_matrix_poisson(m, n)).unwrap();
        let want: Vec<i64> = (0..m * n).map(|k| (k % n) as i64 - (k / n) as i64).collect();
        assert_eq!(eta_partition(&eta), level_partition(&want), "{m}x{n}");
        assert_eq!(eta.rank, m + n - 1);
        let frozen = (0..m * n).filter(|&k| eta.succ[k].is_none()).count();
        let fresh = (0..m * n).filter(|&k| eta.pred[k].is_none()).count();
        assert_eq!(frozen, fresh);
    }
}

/// `{a, b} / (a b)` when it is a scalar.
fn log_bracket(p: &Presentation, a: &Laurent, b: &Laurent) -> Q {
    let quotient = p.bracket(a, b).exact_divide(&(a * b)).unwrap();
    quotient.as_constant().expect("bracket is a scalar multiple")
}

#[test]
fn q_matrix_matches_bracket_engine() {
    for (m, n) in [(2, 2), (2, 3), (3, 2)] {
        let p = build_matrix_poisson(m, n);
        let (eta, seq) = compute_eta_and_primes(&p).unwrap();
        let qd = alpha_q_matrices(&p, &eta);
        for k in 0..p.n() {
            for j in 0..p.n() {
                assert_eq!(
                    log_bracket(&p, &seq.y[k], &seq.y[j]),
                    qd.q[k][j],
                    "q_{k}{j} in {m}x{n}"
                );
            }
        }
    }
    let p = build_matrix_poisson(2, 2);
    let (eta, _) = compute_eta_and_primes(&p).unwrap();
    let qd = alpha_q_matrices(&p, &eta);
    assert_eq!(qd.q[1][0], q(-1, 1));
    assert_eq!(qd.q[2][0], q(-1, 1));
    assert_eq!(qd.q[2][1], qi(0));
}

#[test]
fn alpha_matches_bracket_engine() {
    let p = build_matrix_poisson(2, 3);
    let (eta, seq) = compute_eta_and_primes(&p).unwrap();
    let qd = alpha_q_matrices(&p, &eta);
    let mut checked = 0;
    for j in 0..p.n() {
        for k in j + 1..p.n() {
            if eta.succ[j].is_some_and(|s| s <= k) {
                continue;
            }
            assert_eq!(log_bracket(&p, &seq.y[j], &p.x(k)), -qd.alpha[k][j].clone());
            checked += 1;
        }
    }
    assert!(checked > 10);
}

#[test]
fn u_elements_are_products_of_neighbours() {
    for (m, n) in small_shapes() {
        let s = SymmetricCgl::new(&build_matrix_poisson(m, n)).unwrap();
        for r in 0..m.saturating_sub(1) {
            for c in 0..n.saturating_sub(1) {
                let i = matrix_index(n, r, c);
                let u = s.u_element_and_pi(i, 1).unwrap();
                let want = &s.p.x(matrix_index(n, r, c + 1)) * &s.p.x(matrix_index(n, r + 1, c));
                assert_eq!(u.u, want);
            }
        }
        for u in s.all_u_elements().unwrap() {
            assert_eq!(u.pi, qi(1), "{m}x{n} pi at ({}, {})", u.i + 1, u.m);
        }
    }
}

/// For every `tau` in `Xi_N`, the selected interval primes equal the prime
/// sequence of the presentation adjoining generators in the order `tau`.
fn cross_check_permuted(p: &Presentation) -> usize {
    let s = SymmetricCgl::new(p).unwrap();
    let n = s.n();
    let mut count = 0;
    for tau in enumerate_xi(n).unwrap() {
        let permuted = permuted_presentation(&s, &tau).unwrap();
        let (_, seq) = compute_eta_and_primes(&permuted).unwrap();
        let back: Vec<Laurent> = (0..n).map(|a| Laurent::var(n, tau[a])).collect();
        let selected = s.y_sequence_for_tau(&tau).unwrap();
        for a in 0..n {
            let oracle = seq.y[a].substitute(&back).unwrap();
            assert_eq!(selected[a].poly, oracle, "tau {tau:?}, position {a}");
        }
        count += 1;
    }
    count
}

#[test]
fn tau_sequences_match_permuted_recursion() {
    assert_eq!(cross_check_permuted(&build_matrix_poisson(2, 2)), 8);
    assert_eq!(cross_check_permuted(&build_matrix_poisson(2, 3)), 32);
    assert_eq!(cross_check_permuted(&build_matrix_poisson(3, 2)), 32);
    let qm = pcgl::arith::linalg::from_int(&[
        vec![0, 1, -2, 1],
        vec![-1, 0, 3, 0],
        vec![2, -3, 0, 1],
        vec![-1, 0, -1, 0],
    ]);
    assert_eq!(cross_check_permuted(&build_affine_space(&qm).unwrap()), 8);
}

#[test]
fn brute_force_compatible_three_by_one_pairs() {
    let range = -2i64..=2;
    let mut found = 0;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                // r = [[0, a, b], [-a, 0, c], [-b, -c, 0]]
                let r = pcgl::arith::linalg::from_int(&[vec![0, a, b], vec![-a, 0, c], vec![-b, -c, 0]]);
                for col in itertools_product(&[-2, -1, 0, 1, 2], 3) {
                    let dot = |j: usize| -> i64 {
                        let rr = [[0, a, b], [-a, 0, c], [-b, -c, 0]];
                        (0..3).map(|i| col[i] * rr[i][j]).sum()
                    };
                    let oracle = dot(0) != 0 && dot(1) == 0 && dot(2) == 0;
                    let bt = ExchangeMatrix::new(vec![0], col.iter().map(|&x| vec![x]).collect()).unwrap();
                    assert_eq!(
                        check_compatible(&r, &bt).is_ok(),
                        oracle,
                        "r=({a},{b},{c}) b={col:?}"
                    );
                    if !oracle {
                        continue;
                    }
                    found += 1;
                    assert_eq!(
                        mutate_r_with(&r, &bt, 0, 1).unwrap(),
                        mutate_r_with(&r, &bt, 0, -1).unwrap()
                    );
                    let pair = CompatiblePair {
                        r: r.clone(),
                        btilde: bt,
                    };
                    let once = mutate_pair(&pair, 0).unwrap();
                    assert_eq!(mutate_pair(&once, 0).unwrap(), pair);
                }
            }
        }
    }
    assert!(found > 20, "only {found} compatible pairs");
}

fn itertools_product(values: &[i64], len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                values.iter().map(move |&x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

#[test]
fn d_integers_for_two_classes() {
    let eta = EtaData::from_pred(vec![None, None, Some(0), Some(1)]);
    let ls = vec![qi(2), qi(3), qi(-2), qi(-3)];
    let d = d_integers_for(&eta, &ls).unwrap();
    assert_eq!(d.scale, qi(1));
    assert_eq!(d.for_index(&eta, 0), 2);
    assert_eq!(d.for_index(&eta, 1), 3);
}

#[test]
fn generator_in_initial_cluster() {
    let cd = ClusterData::new(&build_matrix_poisson(2, 2)).unwrap();
    let initial = cd.initial_seed().unwrap();
    let x4 = express_in_cluster(&cd, &initial, &Expr::parse("x4").unwrap()).unwrap();
    let y = |i| Laurent::var(4, i);
    let want = (&y(3) + &(&y(1) * &y(2))).exact_divide(&y(0)).unwrap();
    assert_eq!(x4, want);
    // Back-substitution oracle: y1 * x4 - y2 * y3 = y4.
    assert_eq!(&(&y(0) * &x4) - &(&y(1) * &y(2)), y(3));
}

#[test]
fn last_prime_is_a_cluster_monomial_in_every_gamma_seed() {
    let cd = ClusterData::new(&build_matrix_poisson(2, 2)).unwrap();
    let f = Expr::parse("y4").unwrap();
    for tau in gamma_chain(4).elements {
        let b = cd.seed_for_tau(&tau).unwrap();
        let g = express_in_cluster(&cd, &b, &f).unwrap();
        assert!(g.is_monomial(), "tau {tau:?}");
        assert!(g
            .terms()
            .all(|(e, _)| e.0.iter().enumerate().all(|(j, &a)| !cd.is_frozen(j) || a >= 0)));
    }
}

#[test]
fn laurent_phenomenon_between_gamma_seeds() {
    for (m, n) in [(2, 2), (2, 3)] {
        let cd = ClusterData::new(&build_matrix_poisson(m, n)).unwrap();
        let seeds = cd.gamma_seeds().unwrap();
        let pairs = laurent_phenomenon(&cd, &seeds).unwrap();
        let k = seeds.len();
        assert_eq!(pairs, k * k * m * n, "{m}x{n}");
    }
}
