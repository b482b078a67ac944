//! Structural properties shared by the property tests and the acceptance run.
//! Each property runs a fixed number of random cases through proptest.

#![allow(clippy::needless_range_loop)]

use std::sync::OnceLock;

use pcgl::arith::linalg::{from_int, QMatrix};
use pcgl::arith::{format_rational, parse_rational, q, qi};
use pcgl::cgl::{cauchon_theta, certify_prime_sequence, compute_eta_and_primes};
use pcgl::cluster::{
    bt_r, check_compatible, mutate_matrix, mutate_pair, mutate_r_with, mutate_seed, ClusterData,
    CompatiblePair, ExchangeMatrix, Seed, TauSeedBundle,
};
use pcgl::poisson::validate_algebra;
use pcgl::presets::{build_affine_space, build_matrix_poisson};
use pcgl::symmetric::{is_xi, rescale_generators, SymmetricCgl, UElementData};
use pcgl::{ExpVec, Laurent, Presentation, Q};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub const CASES: u32 = 128;

pub fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

/// Declares a property as a function that runs it on a fresh runner.
macro_rules! property {
    ($name:ident, $strategy:expr, |$pat:pat_param| $body:block) => {
        pub fn $name() -> Result<(), String> {
            runner()
                .run(&$strategy, |$pat| {
                    $body
                    Ok(())
                })
                .map_err(|e| e.to_string())
        }
    };
}

fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| q(a, b))
}

fn nonzero_rational() -> impl Strategy<Value = Q> {
    (1i64..=5, 1i64..=4, any::<bool>()).prop_map(|(a, b, neg)| q(if neg { -a } else { a }, b))
}

fn laurent(nvars: usize, lo: i64, hi: i64, max_terms: usize) -> impl Strategy<Value = Laurent> {
    prop::collection::vec((rational(), prop::collection::vec(lo..=hi, nvars)), 0..=max_terms)
        .prop_map(move |terms| Laurent::from_terms(nvars, terms.into_iter().map(|(c, e)| (c, ExpVec(e)))))
}

fn polynomial(nvars: usize) -> impl Strategy<Value = Laurent> {
    laurent(nvars, 0, 2, 3)
}

fn nonzero(s: impl Strategy<Value = Laurent>) -> impl Strategy<Value = Laurent> {
    s.prop_filter("nonzero", |f| !f.is_zero())
}

/// A polynomial in the first `k` generators of an algebra with `n` generators.
fn poly_in_prefix(n: usize, k: usize) -> impl Strategy<Value = Laurent> {
    prop::collection::vec((rational(), prop::collection::vec(0i64..=2, k)), 1..=3).prop_map(move |terms| {
        Laurent::from_terms(
            n,
            terms.into_iter().map(|(c, mut e)| {
                e.resize(n, 0);
                (c, ExpVec(e))
            }),
        )
    })
}

fn skew_int_matrix(n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-bound..=bound, n * (n - 1) / 2).prop_map(move |upper| {
        let mut m = vec![vec![0i64; n]; n];
        let mut it = upper.into_iter();
        for a in 0..n {
            for b in a + 1..n {
                let v = it.next().unwrap();
                m[a][b] = v;
                m[b][a] = -v;
            }
        }
        m
    })
}

fn gamma_vec(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(nonzero_rational(), n)
}

struct Fixture {
    cd: ClusterData,
    seeds: Vec<TauSeedBundle>,
    initial: TauSeedBundle,
}

fn fixture(m: usize, n: usize) -> Fixture {
    let cd = ClusterData::new(&build_matrix_poisson(m, n)).unwrap();
    let seeds = cd.gamma_seeds().unwrap();
    let initial = cd.initial_seed().unwrap();
    Fixture { cd, seeds, initial }
}

fn m23() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| fixture(2, 3))
}

fn m33() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| fixture(3, 3))
}

fn m33_presentation() -> &'static Presentation {
    static P: OnceLock<Presentation> = OnceLock::new();
    P.get_or_init(|| build_matrix_poisson(3, 3))
}

pub fn prefixes_are_intervals(tau: &[usize]) -> bool {
    (1..=tau.len()).all(|k| {
        let pre = &tau[..k];
        let lo = *pre.iter().min().unwrap();
        let hi = *pre.iter().max().unwrap();
        hi - lo + 1 == k
    })
}

/// `pi` and `f` of `[i, s^m(i)]`, with `pi = 1` and `f = 0` for `m = 0`.
fn pi_f(s: &SymmetricCgl, i: usize, m: usize) -> (Q, ExpVec) {
    if m == 0 {
        (qi(1), ExpVec::zero(s.n()))
    } else {
        let UElementData { pi, f, .. } = s.u_element_and_pi(i, m).unwrap();
        (pi, f)
    }
}

fn add(a: &ExpVec, b: &ExpVec) -> ExpVec {
    ExpVec(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
}

property!(rational_text_round_trip, rational(), |x| {
    prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
});

property!(
    ring_axioms,
    (laurent(3, -2, 2, 3), laurent(3, -2, 2, 3), laurent(3, -2, 2, 3)),
    |(f, g, h)| {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) - &g, f);
    }
);

property!(
    leading_exponent_is_additive,
    (nonzero(laurent(3, -2, 2, 3)), nonzero(laurent(3, -2, 2, 3))),
    |(f, g)| {
        let fg = &f * &g;
        let (_, ef) = f.leading_term().unwrap();
        let (_, eg) = g.leading_term().unwrap();
        let (_, efg) = fg.leading_term().unwrap();
        prop_assert_eq!(efg.clone(), add(ef, eg));
    }
);

property!(
    exact_division_inverts_multiplication,
    (laurent(3, -1, 2, 3), nonzero(laurent(3, -1, 2, 3))),
    |(f, g)| {
        prop_assert_eq!((&f * &g).exact_divide(&g).unwrap(), f);
    }
);

property!(
    derivation_leibniz,
    (
        prop::collection::vec(polynomial(3), 3),
        laurent(3, -1, 2, 3),
        laurent(3, -1, 2, 3)
    ),
    |(images, f, g)| {
        let d = |x: &Laurent| x.apply_derivation(&images);
        prop_assert_eq!(d(&(&f * &g)), &(&d(&f) * &g) + &(&f * &d(&g)));
    }
);

property!(
    substitution_is_a_homomorphism,
    (
        prop::collection::vec(polynomial(3), 3),
        polynomial(3),
        polynomial(3)
    ),
    |(images, f, g)| {
        let s = |x: &Laurent| x.substitute(&images).unwrap();
        prop_assert_eq!(s(&(&f * &g)), &s(&f) * &s(&g));
        prop_assert_eq!(s(&(&f + &g)), &s(&f) + &s(&g));
    }
);

property!(
    random_affine_spaces_are_symmetric_cgl,
    skew_int_matrix(4, 3),
    |qm| {
        let p = build_affine_space(&from_int(&qm)).unwrap();
        let report = validate_algebra(&p, None);
        prop_assert!(report.jacobi && report.is_ok(), "{:?}", report.failures);
        let (eta, seq) = compute_eta_and_primes(&p).unwrap();
        certify_prime_sequence(&p, &eta, &seq).unwrap();
        prop_assert_eq!(eta.rank, 4);
        prop_assert!(SymmetricCgl::new(&p).is_ok());
    }
);

property!(
    jacobi_on_rescaled_presets,
    (
        prop::sample::select(vec![(1, 3), (2, 2), (2, 3), (3, 2), (3, 3), (2, 4)]),
        prop::collection::vec(nonzero_rational(), 9)
    ),
    |((m, n), seed)| {
        let p = build_matrix_poisson(m, n);
        let gamma: Vec<Q> = seed.into_iter().cycle().take(p.n()).collect();
        let p = p.rescaled(&gamma).unwrap();
        let report = validate_algebra(&p, None);
        prop_assert!(report.jacobi && report.is_ok(), "{:?}", report.failures);
        let (eta, seq) = compute_eta_and_primes(&p).unwrap();
        certify_prime_sequence(&p, &eta, &seq).unwrap();
        let frozen = eta.succ.iter().filter(|s| s.is_none()).count();
        let fresh = eta.pred.iter().filter(|s| s.is_none()).count();
        prop_assert_eq!(frozen, fresh);
        prop_assert_eq!(eta.rank, m + n - 1);
    }
);

property!(
    jacobi_on_random_elements,
    (polynomial(4), polynomial(4), polynomial(4)),
    |(f, g, h)| {
        let p = build_matrix_poisson(2, 2);
        let b = |a: &Laurent, c: &Laurent| p.bracket(a, c);
        let cyc = &(&b(&f, &b(&g, &h)) + &b(&g, &b(&h, &f))) + &b(&h, &b(&f, &g));
        prop_assert!(cyc.is_zero());
        prop_assert_eq!(b(&f, &(&g * &h)), &(&b(&f, &g) * &h) + &(&g * &b(&f, &h)));
    }
);

property!(
    bracket_respects_the_grading,
    (
        prop::collection::vec(0i64..=2, 6),
        prop::collection::vec(0i64..=2, 6)
    ),
    |(a, c)| {
        let p = build_matrix_poisson(2, 3);
        let f = Laurent::monomial(6, qi(1), ExpVec(a));
        let g = Laurent::monomial(6, qi(1), ExpVec(c));
        let br = p.bracket(&f, &g);
        if !br.is_zero() {
            let wf = p.weight_of(&f).unwrap();
            let wg = p.weight_of(&g).unwrap();
            let want: Vec<i64> = wf.iter().zip(&wg).map(|(x, y)| x + y).collect();
            prop_assert_eq!(p.weight_of(&br).unwrap(), want);
        }
    }
);

property!(
    cauchon_identity,
    (1usize..9).prop_flat_map(|k| (Just(k), poly_in_prefix(9, k))),
    |(k, f)| {
        let p = m33_presentation();
        let theta = cauchon_theta(p, k, &f).unwrap();
        let lhs = p.bracket(&p.x(k), &theta);
        let rhs = &cauchon_theta(p, k, &p.sigma(k, &f)).unwrap() * &p.x(k);
        prop_assert_eq!(lhs, rhs);
    }
);

property!(pi_and_f_cocycle, gamma_vec(9), |gamma| {
    // pi[s(i), s^m(i)] pi[i, s^{m+1}(i)] = pi[i, s^m(i)] pi[s(i), s^{m+1}(i)]
    // and the same with f added instead of pi multiplied.
    let s = SymmetricCgl::new(&m33_presentation().rescaled(&gamma).unwrap()).unwrap();
    let mut checked = 0;
    for i in 0..s.n() {
        let Some(si) = s.eta.succ[i] else { continue };
        let mut m = 1;
        while s.interval_prime(i, m + 1).is_ok() {
            let (p1, f1) = pi_f(&s, si, m - 1);
            let (p2, f2) = pi_f(&s, i, m + 1);
            let (p3, f3) = pi_f(&s, i, m);
            let (p4, f4) = pi_f(&s, si, m);
            prop_assert_eq!(&p1 * &p2, &p3 * &p4);
            prop_assert_eq!(add(&f1, &f2), add(&f3, &f4));
            checked += 1;
            m += 1;
        }
    }
    prop_assert!(checked > 0);
});

property!(rescaling_restores_normalization, gamma_vec(6), |gamma| {
    let base = &m23().cd;
    let skewed = build_matrix_poisson(2, 3).rescaled(&gamma).unwrap();
    let s = SymmetricCgl::new(&skewed).unwrap();
    let r = rescale_generators(&s).unwrap();
    let after = SymmetricCgl::new(&r.presentation).unwrap();
    for u in after.all_u_elements().unwrap() {
        prop_assert_eq!(u.pi, qi(1));
    }
    let cd = ClusterData::new(&skewed).unwrap();
    prop_assert_eq!(
        cd.initial_seed().unwrap().btilde,
        base.initial_seed().unwrap().btilde
    );
});

property!(
    xi_is_the_interval_prefix_set,
    (1usize..=7).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle()),
    |tau| {
        prop_assert_eq!(is_xi(&tau), prefixes_are_intervals(&tau));
    }
);

property!(
    matrix_mutation_is_an_involution,
    (2usize..=4).prop_flat_map(|n| (
        skew_int_matrix(n, 3),
        prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=2),
        0..n,
    )),
    |(core, frozen, k)| {
        let n = core.len();
        let mut rows = core.clone();
        rows.extend(frozen);
        let b = ExchangeMatrix::new((0..n).collect(), rows).unwrap();
        let once = mutate_matrix(&b, k).unwrap();
        prop_assert!(once.is_skew_symmetrized_by(|_| 1));
        prop_assert_eq!(mutate_matrix(&once, k).unwrap(), b);
    }
);

property!(
    random_mutation_walks,
    (0usize..16, prop::collection::vec(0usize..2, 1..=5)),
    |(which, walk)| {
        let f = m23();
        let start = &f.seeds[which % f.seeds.len()];
        let ex = f.cd.ex().to_vec();
        let mut pair = start.pair();
        let mut seed = Seed::from_bundle(&f.initial, start).unwrap();
        for step in walk {
            let k = ex[step % ex.len()];
            let plus = mutate_r_with(&pair.r, &pair.btilde, k, 1).unwrap();
            let minus = mutate_r_with(&pair.r, &pair.btilde, k, -1).unwrap();
            prop_assert_eq!(&plus, &minus);
            let next = mutate_pair(&pair, k).unwrap();
            prop_assert_eq!(bt_r(&next.r, &next.btilde), bt_r(&pair.r, &pair.btilde));
            prop_assert_eq!(&mutate_pair(&next, k).unwrap(), &pair);
            let next_seed = mutate_seed(&seed, k).unwrap();
            prop_assert_eq!(&mutate_seed(&next_seed, k).unwrap(), &seed);
            prop_assert!(next_seed.vars.iter().all(|v| !v.is_zero()));
            pair = next;
            seed = next_seed;
        }
        prop_assert!(check_compatible(&pair.r, &pair.btilde).is_ok());
    }
);

property!(
    mutation_walks_three_by_three,
    (0usize..64, prop::collection::vec(0usize..4, 1..=4)),
    |(which, walk)| {
        let f = m33();
        let start = &f.seeds[which % f.seeds.len()];
        let ex = f.cd.ex().to_vec();
        let mut pair: CompatiblePair = start.pair();
        let beta = check_compatible(&pair.r, &pair.btilde).unwrap();
        for step in walk {
            let k = ex[step % ex.len()];
            let next = mutate_pair(&pair, k).unwrap();
            prop_assert_eq!(check_compatible(&next.r, &next.btilde).unwrap(), beta.clone());
            prop_assert_eq!(&mutate_pair(&next, k).unwrap(), &pair);
            pair = next;
        }
    }
);

property!(
    r_mutation_sign_independence_on_random_pairs,
    (
        (-3i64..=3, -3i64..=3, -3i64..=3),
        prop::collection::vec(-3i64..=3, 3)
    ),
    |((a, b, c), col)| {
        let r: QMatrix = from_int(&[vec![0, a, b], vec![-a, 0, c], vec![-b, -c, 0]]);
        let bt = ExchangeMatrix::new(vec![0], col.iter().map(|&x| vec![x]).collect()).unwrap();
        if check_compatible(&r, &bt).is_ok() {
            prop_assert_eq!(
                mutate_r_with(&r, &bt, 0, 1).unwrap(),
                mutate_r_with(&r, &bt, 0, -1).unwrap()
            );
        }
    }
);

pub type Property = fn() -> Result<(), String>;

pub const ALL: &[(&str, Property)] = &[
    ("rational_text_round_trip", rational_text_round_trip),
    ("ring_axioms", ring_axioms),
    ("leading_exponent_is_additive", leading_exponent_is_additive),
    (
        "exact_division_inverts_multiplication",
        exact_division_inverts_multiplication,
    ),
    ("derivation_leibniz", derivation_leibniz),
    ("substitution_is_a_homomorphism", substitution_is_a_homomorphism),
    (
        "random_affine_spaces_are_symmetric_cgl",
        random_affine_spaces_are_symmetric_cgl,
    ),
    ("jacobi_on_rescaled_presets", jacobi_on_rescaled_presets),
    ("jacobi_on_random_elements", jacobi_on_random_elements),
    ("bracket_respects_the_grading", bracket_respects_the_grading),
    ("cauchon_identity", cauchon_identity),
    ("pi_and_f_cocycle", pi_and_f_cocycle),
    (
        "rescaling_restores_normalization",
        rescaling_restores_normalization,
    ),
    ("xi_is_the_interval_prefix_set", xi_is_the_interval_prefix_set),
    (
        "matrix_mutation_is_an_involution",
        matrix_mutation_is_an_involution,
    ),
    ("random_mutation_walks", random_mutation_walks),
    ("mutation_walks_three_by_three", mutation_walks_three_by_three),
    (
        "r_mutation_sign_independence_on_random_pairs",
        r_mutation_sign_independence_on_random_pairs,
    ),
];
