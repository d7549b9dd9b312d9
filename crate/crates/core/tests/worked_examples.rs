//! The worked examples: named games checked against hand-computed values or
//! brute-force oracles that do not go through the code under test.

use eqcert::certify::{
    certify_cce_with_weights, certify_unique_ircp, certify_unique_pure_cce, check_enforcement, classify_extreme_ne,
    classify_unique_cce, combinatorics_bound, conv_ne_vs_ircp, dominating_lottery, is_gue, is_quasi_strict,
    is_strict_fractional_gue, quasi_strictness_certificate, CceClassification, Certification, EnforcementVerdict,
    HullComparison,
};
use eqcert::contest::{
    band_functions, band_mix, cournot, local_potential, ratio_band_check, tullock_closed_form, tullock_game,
    uniform_grid, ContestSpec, Cost, CournotSpec, Success,
};
use eqcert::dynamics::external_regret;
use eqcert::generators::*;
use eqcert::linalg::rank;
use eqcert::lp::enumerate_vertices;
use eqcert::polytope::{build, enumerate_pure_ne, is_nash, mixed_ne_2x2, Concept, Membership, Singleton};
use eqcert::rational::{int, rat};
use eqcert::zerosum::{build_lemma3_auxiliary, build_theorem1_auxiliary, maximin, minimax_dual, theorem1_row_profile};
use eqcert::{Game, JointDistribution, MixedAction, Profile, Rational};
use num_traits::{One, Signed, Zero};

fn park(t: Rational) -> Game {
    parking(3, &int(1), &rat(1, 4), &t).unwrap()
}

fn idx(g: &Game, p: &[usize]) -> usize {
    g.profile_index(p).unwrap()
}

fn point(g: &Game, p: &[usize]) -> JointDistribution {
    JointDistribution::point_mass(idx(g, p))
}

fn member(g: &Game, c: Concept, mu: &JointDistribution) -> bool {
    build(g, c).membership(mu).is_member()
}

/// Brute-force pure Nash check straight from the payoff tensor.
fn brute_pure_ne(g: &Game) -> Vec<usize> {
    (0..g.num_profiles())
        .filter(|&k| {
            (0..g.num_players()).all(|i| (0..g.num_actions(i)).all(|a| g.payoff_at(i, g.deviate(k, i, a)) <= g.payoff_at(i, k)))
        })
        .collect()
}

/// The three enforcement-game conditions, evaluated directly.
fn enforcement_by_hand(g: &Game, star: usize) -> bool {
    let n = g.num_players();
    let zero = (0..n).all(|i| g.payoff_at(i, star).is_zero());
    let guarantee = (0..g.num_profiles())
        .all(|k| (0..n).all(|i| g.action_at(k, i) != g.action_at(star, i) || !g.payoff_at(i, k).is_negative()));
    let welfare = (0..g.num_profiles())
        .filter(|&k| k != star)
        .all(|k| (0..n).fold(Rational::zero(), |s, i| s + g.payoff_at(i, k)).is_negative());
    zero && guarantee && welfare
}

fn expected(g: &Game, mu: &JointDistribution) -> Vec<Rational> {
    (0..g.num_players()).map(|i| g.expected_payoff(i, mu)).collect()
}

#[test]
fn profile_indexing_and_symmetry() {
    let g = zero_game(&[2, 2, 2]).unwrap();
    let order: Vec<Vec<usize>> = g.profiles().map(|p| p.actions().to_vec()).collect();
    assert_eq!(order[5], vec![1, 0, 1]);
    assert_eq!(idx(&g, &[1, 0, 1]), 5);

    let mp = matching_pennies();
    assert_ne!(mp.payoff(0, &[0, 1]), mp.payoff(1, &[1, 0]));
    assert!(!mp.is_symmetric());
    let p = park(rat(3, 5));
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(p.payoff(0, &[a, b]), p.payoff(1, &[b, a]));
        }
    }
    assert!(p.is_symmetric());
}

#[test]
fn parking_matrix_entries() {
    let g = park(rat(3, 5));
    assert_eq!((g.payoff(0, &[1, 2]), g.payoff(1, &[1, 2])), (&rat(3, 5), &rat(4, 5)));
    assert_eq!((g.payoff(0, &[0, 0]), g.payoff(1, &[0, 0])), (&rat(3, 4), &rat(3, 4)));
    // Illegal parkers alone against a payer are fined for sure, together with probability 1/2.
    assert_eq!(g.payoff(0, &[1, 0]), &rat(2, 5));
    assert_eq!(g.payoff(0, &[2, 2]), &rat(7, 10));
    let t3 = table3();
    assert_eq!((t3.payoff(0, &[1, 1]), t3.payoff(1, &[1, 1])), (&int(2), &int(-1)));
}

#[test]
fn parking_is_an_enforcement_game_after_an_affine_shift() {
    for t in [rat(11, 20), rat(3, 5), rat(7, 10), rat(3, 4)] {
        let g = park(t.clone()).affine_transform(&[int(1), int(1)], &[rat(-3, 4), rat(-3, 4)]).unwrap();
        assert!(enforcement_by_hand(&g, 0), "t = {t}");
        assert_eq!(check_enforcement(&g), EnforcementVerdict::Yes(Profile(vec![0, 0])));
    }
    let low = park(rat(2, 5)).affine_transform(&[int(1), int(1)], &[rat(-3, 4), rat(-3, 4)]).unwrap();
    assert!(!enforcement_by_hand(&low, 0));

    let pd = prisoners_dilemma().affine_transform(&[int(1), int(1)], &[int(-1), int(-1)]).unwrap();
    // (c,c) becomes (1,1): welfare +2 at a profile other than (d,d).
    assert_eq!(pd.payoff(0, &[0, 0]) + pd.payoff(1, &[0, 0]), int(2));
    assert!(matches!(check_enforcement(&pd), EnforcementVerdict::No(_)));
}

#[test]
fn reduced_games_by_hand() {
    let pd = prisoners_dilemma();
    let r = pd.reduce_at(&Profile(vec![1, 1])).unwrap();
    assert_eq!(r.payoffs_of(0), &[int(-1), int(-1), int(0), int(0)]);
    assert_eq!(r.payoffs_of(1), &[int(-1), int(0), int(-1), int(0)]);
    for k in 0..3 {
        assert!((r.payoff_at(0, k) + r.payoff_at(1, k)).is_negative());
    }

    let g = park(rat(3, 5));
    let r = g.reduce_at(&Profile(vec![0, 0])).unwrap();
    for k in 0..g.num_profiles() {
        for i in 0..2 {
            let anchor = g.deviate(k, i, 0);
            assert_eq!(r.payoff_at(i, k), &(g.payoff_at(i, k) - g.payoff_at(i, anchor)));
        }
    }
}

#[test]
fn maximin_levels() {
    let rps = rock_paper_scissors();
    for i in 0..2 {
        let m = maximin(&rps, i);
        assert_eq!(m.value, int(0));
        assert_eq!(m.strategy.weights, vec![rat(1, 3); 3]);
    }
    let g = park(rat(3, 5));
    for i in 0..2 {
        let m = maximin(&g, i);
        assert_eq!(m.value, rat(3, 4));
        assert_eq!(m.strategy.is_pure(), Some(0));
        assert_eq!(minimax_dual(&g, i).0, rat(3, 4));
    }
    // PD by hand: with weight p on d the row earns 2 + p against c and p against d.
    let pd = prisoners_dilemma();
    let brute = (0..=100).map(|k| rat(k, 100)).map(|p| (int(2) + &p).min(p)).max().unwrap();
    for i in 0..2 {
        let m = maximin(&pd, i);
        assert_eq!(m.value, brute);
        assert_eq!(m.strategy.is_pure(), Some(1));
    }
    let mp = matching_pennies();
    for i in 0..2 {
        assert_eq!(maximin(&mp, i).value, int(0));
        assert_eq!(minimax_dual(&mp, i).0, int(0));
    }
}

#[test]
fn auxiliary_games() {
    let g = park(rat(3, 5));
    let aux = build_theorem1_auxiliary(&g, &Profile(vec![0, 0])).unwrap();
    assert_eq!((aux.num_rows(), aux.num_cols()), (15, 2));
    assert!(aux.solve().unwrap().value.is_negative());

    let pd = prisoners_dilemma();
    let dd = Profile(vec![1, 1]);
    let aux = build_theorem1_auxiliary(&pd, &dd).unwrap();
    assert_eq!((aux.num_rows(), aux.num_cols()), (3, 2));
    let cc = (0..3).find(|&r| theorem1_row_profile(&pd, &dd, r) == 0).unwrap();
    assert_eq!(aux.payoff[cc], vec![int(1), int(1)]);
    assert!(!aux.solve().unwrap().value.is_negative());

    let mp = matching_pennies();
    let l3 = build_lemma3_auxiliary(&mp);
    assert_eq!((l3.num_rows(), l3.num_cols()), (4, 4));
    let s = l3.solve().unwrap();
    assert_eq!(s.value, int(0));
    assert_eq!(s.row_strategy, vec![rat(1, 4); 4]);
    let s = build_lemma3_auxiliary(&pd).solve().unwrap();
    assert_eq!(s.value, int(0));
    assert_eq!(s.row_strategy, vec![int(0), int(0), int(0), int(1)]);
}

#[test]
fn rock_paper_scissors_memberships() {
    let g = rock_paper_scissors();
    let diagonal = JointDistribution::uniform(&[idx(&g, &[0, 0]), idx(&g, &[1, 1]), idx(&g, &[2, 2])]);
    assert!(member(&g, Concept::Cce, &diagonal));
    assert!(!member(&g, Concept::Ce, &diagonal));
    let swap = JointDistribution::uniform(&[idx(&g, &[0, 1]), idx(&g, &[1, 0])]);
    assert!(member(&g, Concept::Ircp, &swap));
    assert!(!member(&g, Concept::Cce, &swap));
    assert_eq!(expected(&g, &diagonal), vec![int(0), int(0)]);
    for i in 0..2 {
        assert_eq!(external_regret(&g, i, &diagonal), int(0));
    }

    let uniform = JointDistribution::uniform(&(0..9).collect::<Vec<_>>());
    assert_eq!(build(&g, Concept::Ce).is_singleton().unwrap(), Singleton::Singleton(uniform.clone()));
    match build(&g, Concept::Cce).is_singleton().unwrap() {
        Singleton::NotSingleton(a, b) => {
            assert_ne!(a, b);
            assert!(member(&g, Concept::Cce, &a) && member(&g, Concept::Cce, &b));
        }
        other => panic!("{other:?}"),
    }
    // The mixed equilibrium is the midpoint of two IRCP members.
    assert!(member(&g, Concept::Ircp, &uniform));
    assert!(!build(&g, Concept::Ircp).is_extreme_point(&uniform).unwrap());
    let rotated = JointDistribution::uniform(&[idx(&g, &[0, 2]), idx(&g, &[2, 0])]);
    let mid = swap.mix(&rotated, &rat(1, 2)).unwrap();
    assert!(member(&g, Concept::Ircp, &mid));
}

#[test]
fn prisoners_dilemma_memberships() {
    let g = prisoners_dilemma();
    let cc = point(&g, &[0, 0]);
    match build(&g, Concept::Cce).membership(&cc) {
        Membership::Violations(v) => {
            assert_eq!(v.len(), 2);
            assert!(v.iter().all(|x| x.slack == int(-1)));
        }
        Membership::Member => panic!("(c,c) is not a CCE"),
    }
    assert_eq!(external_regret(&g, 0, &cc), int(1));
    assert!(member(&g, Concept::Ircp, &cc));
    assert!(member(&g, Concept::Ircp, &cc.mix(&point(&g, &[1, 1]), &rat(1, 3)).unwrap()));

    let mp = matching_pennies();
    let uniform = JointDistribution::uniform(&[0, 1, 2, 3]);
    assert!(member(&mp, Concept::Cce, &uniform));
}

#[test]
fn coordinate_bounds() {
    let mp = matching_pennies();
    for p in mp.profiles() {
        assert_eq!(build(&mp, Concept::Cce).coordinate_bounds(&p).unwrap(), (rat(1, 4), rat(1, 4)));
    }
    let pd = prisoners_dilemma();
    assert_eq!(build(&pd, Concept::Cce).coordinate_bounds(&Profile(vec![1, 1])).unwrap(), (int(1), int(1)));
    let t2 = table2();
    assert_eq!(build(&t2, Concept::Ircp).coordinate_bounds(&Profile(vec![0, 1])).unwrap(), (int(0), int(0)));
}

#[test]
fn vertex_oracle_on_small_polytopes() {
    let mp = matching_pennies();
    let v = enumerate_vertices(&build(&mp, Concept::Cce).to_lp()).unwrap();
    assert_eq!(v, vec![vec![rat(1, 4); 4]]);
    assert_eq!(build(&mp, Concept::Cce).is_singleton().unwrap(), Singleton::Singleton(JointDistribution::uniform(&[0, 1, 2, 3])));

    let g = park(rat(3, 5));
    assert_eq!(build(&g, Concept::Ircp).is_singleton().unwrap(), Singleton::Singleton(point(&g, &[0, 0])));

    let rps = rock_paper_scissors();
    let cce = build(&rps, Concept::Cce);
    let vertices = enumerate_vertices(&cce.to_lp()).unwrap();
    assert!(vertices.len() > 1);
    for x in vertices {
        let mu = JointDistribution::from_dense(&x).unwrap();
        assert!(cce.is_extreme_point(&mu).unwrap());
        assert!(cce.winkler_support_bound(&mu).unwrap().bound_holds);
    }
}

#[test]
fn winkler_count_for_matching_pennies() {
    let mp = matching_pennies();
    let uniform = JointDistribution::uniform(&[0, 1, 2, 3]);
    // Deviation gains over profiles HH, HT, TH, TT, all binding at the uniform point.
    let rows = vec![
        vec![int(0), int(0), int(2), int(-2)],
        vec![int(-2), int(2), int(0), int(0)],
        vec![int(0), int(-2), int(0), int(2)],
        vec![int(2), int(0), int(-2), int(0)],
    ];
    assert_eq!(rank(&rows), 3);
    let w = build(&mp, Concept::Cce).winkler_support_bound(&uniform).unwrap();
    assert_eq!(w.support_size, 4);
    assert_eq!(w.active_rank, 3);
    assert!(w.bound_holds);
}

#[test]
fn pure_equilibria_lists() {
    let pd = prisoners_dilemma();
    assert_eq!(brute_pure_ne(&pd), vec![3]);
    assert_eq!(enumerate_pure_ne(&pd), vec![(Profile(vec![1, 1]), true)]);
    let t2 = table2();
    assert_eq!(brute_pure_ne(&t2), vec![0, 3]);
    // Player 1 ties between a1 and b1 against b2, so only (b1,b2) is non-strict.
    assert_eq!(enumerate_pure_ne(&t2), vec![(Profile(vec![0, 0]), true), (Profile(vec![1, 1]), false)]);
    assert!(is_quasi_strict(&t2, &point(&t2, &[0, 0])).unwrap());
    assert!(!is_quasi_strict(&t2, &point(&t2, &[1, 1])).unwrap());
    assert_eq!(mixed_ne_2x2(&pd).unwrap(), vec![point(&pd, &[1, 1])]);
}

#[test]
fn matching_pennies_type_closed_form() {
    for seed in 0..20 {
        let [a, b, c, d, e, f, g, h] = random_mp_type_params(seed);
        let game = mp_type(&a, &b, &c, &d, &e, &f, &g, &h).unwrap();
        let p = (&g - &h) / ((&g - &h) + (&f - &e));
        let q = (&d - &b) / ((&a - &c) + (&d - &b));
        let ne = JointDistribution::product(
            &game,
            &[
                MixedAction::new(0, vec![p.clone(), Rational::one() - &p]).unwrap(),
                MixedAction::new(1, vec![q.clone(), Rational::one() - &q]).unwrap(),
            ],
        )
        .unwrap();
        assert!(is_nash(&game, &ne).unwrap());
        assert_eq!(mixed_ne_2x2(&game).unwrap(), vec![ne.clone()]);
        match classify_unique_cce(&game).unwrap() {
            CceClassification::UniqueMixed2x2 { ne: found, .. } => assert_eq!(found, ne),
            other => panic!("seed {seed}: {other:?}"),
        }
        assert!(is_quasi_strict(&game, &ne).unwrap());
        assert_eq!(classify_extreme_ne(&game, &ne).unwrap(), (true, true));
    }
}

#[test]
fn certification_outcomes() {
    let g = park(rat(3, 5));
    for c in [certify_unique_ircp(&g).unwrap(), certify_unique_pure_cce(&g).unwrap()] {
        assert_eq!(c.certificate().unwrap().a_star, Profile(vec![0, 0]));
    }

    let low = park(rat(2, 5));
    let r = certify_unique_ircp(&low).unwrap();
    let refutation = r.refutation().expect("t below 2c is refuted");
    refutation.verify(&low).unwrap();
    // Both at the same location: each is caught with probability 1/2, so earns 4/5 > 3/4.
    let same = point(&low, &[1, 1]);
    assert_eq!(expected(&low, &same), vec![rat(4, 5), rat(4, 5)]);
    assert!(member(&low, Concept::Ircp, &same));
    let dominating = [&refutation.witness_a, &refutation.witness_b]
        .into_iter()
        .any(|w| expected(&low, w).iter().all(|u| u >= &rat(3, 4)) && w != &point(&low, &[0, 0]));
    assert!(dominating);

    let pd = prisoners_dilemma();
    let r = certify_unique_ircp(&pd).unwrap();
    let r = r.refutation().unwrap();
    let mut pair = vec![r.witness_a.clone(), r.witness_b.clone()];
    pair.sort_by_key(|m| m.support());
    assert_eq!(pair, vec![point(&pd, &[0, 0]), point(&pd, &[1, 1])]);

    let c = certify_unique_pure_cce(&pd).unwrap();
    assert_eq!(c.certificate().unwrap().a_star, Profile(vec![1, 1]));
    let by_hand = certify_cce_with_weights(&pd, &Profile(vec![1, 1]), &[int(1), int(1)]).unwrap().unwrap();
    assert_eq!(by_hand.slack, int(1));
    assert!(matches!(classify_unique_cce(&pd).unwrap(), CceClassification::UniquePure { .. }));

    let mp = matching_pennies();
    assert!(matches!(certify_unique_pure_cce(&mp).unwrap(), Certification::UniqueMixed(_)));
}

#[test]
fn symmetric_unique_cce_is_pure() {
    let mut pure = 0;
    for seed in 0..40 {
        let g = random_symmetric_game(3, 2, seed, -3, 3).unwrap();
        assert!(g.is_symmetric());
        match classify_unique_cce(&g).unwrap() {
            CceClassification::UniquePure { .. } => pure += 1,
            CceClassification::UniqueMixed2x2 { .. } => panic!("seed {seed}: symmetric game with a mixed unique CCE"),
            CceClassification::NotUnique(_) => {}
        }
    }
    assert!(pure > 0);
}

#[test]
fn quasi_strictness_certificates() {
    let mp = matching_pennies();
    let q = quasi_strictness_certificate(&mp, &JointDistribution::uniform(&[0, 1, 2, 3])).unwrap();
    assert!(q.eta.iter().all(Signed::is_positive));
    for s in &q.sigma {
        assert_eq!(s.weights, vec![rat(1, 2), rat(1, 2)]);
    }
    let pd = prisoners_dilemma();
    let q = quasi_strictness_certificate(&pd, &point(&pd, &[1, 1])).unwrap();
    for s in &q.sigma {
        assert_eq!(s.is_pure(), Some(1));
    }
}

#[test]
fn combinatorics_examples() {
    assert!(combinatorics_bound(&[2, 2]).unwrap());
    assert!(combinatorics_bound(&[2, 3]).unwrap());
    assert!(!combinatorics_bound(&[2, 2, 2]).unwrap());
    assert!(!combinatorics_bound(&[3, 3]).unwrap());
}

#[test]
fn two_by_three_equilibrium_is_not_extreme() {
    // Matching pennies on the first two columns, a null third column.
    let g = Game::new(
        None,
        vec![vec!["x".into(), "y".into()], vec!["p".into(), "q".into(), "r".into()]],
        vec![
            vec![int(1), int(-1), int(0), int(-1), int(1), int(0)],
            vec![int(-1), int(1), int(0), int(1), int(-1), int(0)],
        ],
    )
    .unwrap();
    let ne = JointDistribution::product(
        &g,
        &[MixedAction::new(0, vec![rat(1, 2); 2]).unwrap(), MixedAction::new(1, vec![rat(1, 3); 3]).unwrap()],
    )
    .unwrap();
    assert!(is_nash(&g, &ne).unwrap());
    assert!(is_quasi_strict(&g, &ne).unwrap());
    // 2/3 of the 2x2 equilibrium plus 1/3 of the row mix against r.
    let two_by_two = JointDistribution::uniform(&[0, 1, 3, 4]);
    let against_r = JointDistribution::uniform(&[2, 5]);
    assert!(is_nash(&g, &two_by_two).unwrap() && is_nash(&g, &against_r).unwrap());
    assert_eq!(two_by_two.mix(&against_r, &rat(1, 3)).unwrap(), ne);
    assert_eq!(classify_extreme_ne(&g, &ne).unwrap(), (false, false));
}

#[test]
fn hull_comparisons() {
    let t2 = table2();
    assert_eq!(conv_ne_vs_ircp(&t2, &[point(&t2, &[0, 0]), point(&t2, &[1, 1])]).unwrap(), HullComparison::Equal);
    let pd = prisoners_dilemma();
    assert_eq!(conv_ne_vs_ircp(&pd, &[point(&pd, &[1, 1])]).unwrap(), HullComparison::ProperSubset(point(&pd, &[0, 0])));
    let z = zero_game(&[2, 2]).unwrap();
    let all: Vec<JointDistribution> = (0..4).map(JointDistribution::point_mass).collect();
    assert_eq!(brute_pure_ne(&z), vec![0, 1, 2, 3]);
    assert_eq!(conv_ne_vs_ircp(&z, &all).unwrap(), HullComparison::Equal);
}

#[test]
fn guaranteed_utility_examples() {
    let t3 = table3();
    let a = Profile(vec![0, 0]);
    assert!(is_gue(&t3, &a).unwrap());
    assert!(!is_gue(&t3, &Profile(vec![1, 1])).unwrap());
    assert_eq!(t3.payoff(0, &[1, 0]), &int(-1));
    assert!(!is_strict_fractional_gue(&t3, &a).unwrap());
    let mu = JointDistribution::uniform(&[idx(&t3, &[1, 1]), idx(&t3, &[2, 2])]);
    assert_eq!(expected(&t3, &mu), vec![rat(1, 2), rat(1, 2)]);
    let (lottery, payoffs) = dominating_lottery(&t3, &a).unwrap().unwrap();
    assert_eq!(expected(&t3, &lottery), payoffs);
    assert!(payoffs.iter().all(|u| u >= &rat(1, 2)));
    for c in [Concept::Cce, Concept::Ircp] {
        assert!(member(&t3, c, &mu) && member(&t3, c, &point(&t3, &[0, 0])));
        assert!(matches!(build(&t3, c).is_singleton().unwrap(), Singleton::NotSingleton(..)));
    }

    let pd = prisoners_dilemma();
    assert!(!is_gue(&pd, &Profile(vec![1, 1])).unwrap());
    assert!(!is_strict_fractional_gue(&pd, &Profile(vec![1, 1])).unwrap());

    let g = park(rat(3, 5));
    assert!(is_strict_fractional_gue(&g, &Profile(vec![0, 0])).unwrap());
    assert!(dominating_lottery(&g, &Profile(vec![0, 0])).unwrap().is_none());
    assert!(certify_unique_ircp(&g).unwrap().certificate().is_some());
}

#[test]
fn tullock_potential_by_hand() {
    // u_i = x_i/(x_1+x_2) - x_i with a* = (1/4,1/4): at (1/8,1/8) each player
    // earns 3/8 and 5/12 after moving back to 1/4.
    let x = [rat(1, 8), rat(1, 8)];
    assert_eq!(tullock_closed_form(&x), rat(-1, 12));
    let spec = ContestSpec::standard_tullock();
    assert_eq!(local_potential(&spec, &[rat(1, 4), rat(1, 4)], &x, &[int(1), int(1)]).unwrap(), rat(-1, 12));
}

#[test]
fn tullock_grid_game() {
    let grid = vec![vec![rat(1, 8), rat(1, 4), rat(3, 8), rat(1, 2)]; 2];
    let g = tullock_game(&[int(1), int(1)], &grid).unwrap();
    assert_eq!(g.shape(), vec![4, 4]);
    assert_eq!(brute_pure_ne(&g), vec![5]);
    let star = Profile(vec![1, 1]);
    let cert = certify_cce_with_weights(&g, &star, &[int(1), int(1)]).unwrap().unwrap();
    assert_eq!(cert.a_star, star);
    assert_eq!(certify_unique_pure_cce(&g).unwrap().certificate().unwrap().a_star, star);
    assert_eq!(build(&g, Concept::Cce).is_singleton().unwrap(), Singleton::Singleton(JointDistribution::point_mass(5)));
}

#[test]
fn cournot_with_three_firms() {
    // u_i = a_i (1 - sum a) - a_i^2/2; the first-order condition 1 - 5a = 0 gives a = 1/5.
    let spec = CournotSpec { alpha: int(1), beta: int(1), costs: vec![Cost::Power { coef: rat(1, 2), exp: int(2) }; 3] };
    let g = cournot(&spec, &vec![uniform_grid(0, 4, 10); 3]).unwrap();
    let star = idx(&g, &[2, 2, 2]);
    assert_eq!(brute_pure_ne(&g), vec![star]);
    let cert = certify_cce_with_weights(&g, &Profile(vec![2, 2, 2]), &[int(1), int(1), int(1)]).unwrap();
    assert!(cert.is_some());
    assert_eq!(certify_unique_pure_cce(&g).unwrap().certificate().unwrap().a_star, Profile(vec![2, 2, 2]));
}

#[test]
fn band_mixtures_stay_in_the_band() {
    let c = rat(1, 4);
    let grid: Vec<Rational> = (1..400).map(|k| rat(k, 400)).collect();
    let (upper, lower) = band_functions(&c).unwrap();
    // The band is open: its edges sit on the boundary.
    assert!(!ratio_band_check(&upper, &c, &grid).unwrap());
    assert!(!ratio_band_check(&lower, &c, &grid).unwrap());
    assert!(!ratio_band_check(&band_mix(&c, &rat(0, 1)).unwrap(), &c, &grid).unwrap());
    for eps in [rat(1, 1000), rat(1, 100), rat(1, 10)] {
        assert!(ratio_band_check(&band_mix(&c, &eps).unwrap(), &c, &grid).unwrap(), "eps = {eps}");
    }
    assert!(ratio_band_check(&Success::Tullock { r: int(1) }, &c, &grid).unwrap());
    assert!(!ratio_band_check(&Success::Tullock { r: int(3) }, &c, &grid).unwrap());
}
