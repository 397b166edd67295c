//! Randomized laws over machines and subsets with degrees in steps of `1/D`.

use ifsa_core::group::{cyclic, klein4, symmetric};
use ifsa_core::harness::oracle::{classical_normal, classical_subgroup};
use ifsa_core::ifs::{identity_condition_degree, normal_degree, subgroup_degree};
use ifsa_core::machine::compose;
use ifsa_core::truthval::strong_conj;
use ifsa_core::{Evaluator, FiniteGroup, IFSubset, Machine, Matrix, StructureMode, TruthValue, Word};
use proptest::prelude::*;

const D: u32 = 4;

fn groups() -> Vec<FiniteGroup> {
    vec![cyclic(2).unwrap(), cyclic(3).unwrap(), klein4(), symmetric(3).unwrap()]
}

/// A consistent `(μ, ν)` pair of numerators: `k + j <= D`.
fn pair() -> impl Strategy<Value = (u32, u32)> {
    (0..=D).prop_flat_map(|k| (Just(k), 0..=D - k))
}

fn tv(k: u32) -> TruthValue {
    TruthValue::frac(k, D)
}

fn subset(n: usize) -> impl Strategy<Value = IFSubset> {
    prop::collection::vec(pair(), n).prop_map(move |ps| {
        IFSubset::new(n, ps.iter().map(|p| tv(p.0)).collect(), ps.iter().map(|p| tv(p.1)).collect()).unwrap()
    })
}

fn matrices(n: usize) -> impl Strategy<Value = (Matrix, Matrix)> {
    prop::collection::vec(pair(), n * n).prop_map(move |ps| {
        (Matrix::from_fn(n, |r, c| tv(ps[r * n + c].0)), Matrix::from_fn(n, |r, c| tv(ps[r * n + c].1)))
    })
}

fn group_index() -> impl Strategy<Value = usize> {
    0..groups().len()
}

/// A two-letter machine over one of the sample groups, with no structure.
fn machine() -> impl Strategy<Value = Machine> {
    group_index().prop_flat_map(|gi| {
        let g = groups().swap_remove(gi);
        let n = g.order();
        (matrices(n), matrices(n)).prop_map(move |((a0, b0), (a1, b1))| {
            Machine::new(g.clone(), vec!["u".into(), "v".into()], vec![a0, a1], vec![b0, b1], tv(2), StructureMode::None)
                .unwrap()
        })
    })
}

fn machine_and_subset() -> impl Strategy<Value = (Machine, IFSubset)> {
    machine().prop_flat_map(|m| {
        let n = m.states();
        (Just(m), subset(n))
    })
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..2, 0..4).prop_map(Word)
}

fn group_and_subset() -> impl Strategy<Value = (FiniteGroup, IFSubset)> {
    group_index().prop_flat_map(|gi| {
        let g = groups().swap_remove(gi);
        let n = g.order();
        (Just(g), subset(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn extension_splits_over_concatenation(m in machine(), u in word(), v in word()) {
        let whole = m.extend_word(&u.concat(&v)).unwrap();
        let split = compose(&m.extend_word(&u).unwrap(), &m.extend_word(&v).unwrap()).unwrap();
        prop_assert_eq!(whole.a_star, split.a_star);
        prop_assert_eq!(whole.b_star, split.b_star);
    }

    #[test]
    fn composition_is_associative(m in machine(), u in word(), v in word(), w in word()) {
        let (p, q, r) = (m.extend_word(&u).unwrap(), m.extend_word(&v).unwrap(), m.extend_word(&w).unwrap());
        let left = compose(&compose(&p, &q).unwrap(), &r).unwrap();
        let right = compose(&p, &compose(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(left.a_star, right.a_star);
        prop_assert_eq!(left.b_star, right.b_star);
    }

    #[test]
    fn empty_word_is_a_two_sided_unit(m in machine(), u in word()) {
        let e = m.empty_word_matrices();
        let p = m.extend_word(&u).unwrap();
        for q in [compose(&e, &p).unwrap(), compose(&p, &e).unwrap()] {
            prop_assert_eq!(&q.a_star, &p.a_star);
            prop_assert_eq!(&q.b_star, &p.b_star);
        }
    }

    #[test]
    fn extended_words_stay_consistent(m in machine(), u in word()) {
        let p = m.extend_word(&u).unwrap();
        prop_assert_eq!(p.consistency_violation(), None);
    }

    #[test]
    fn subgroup_degree_one_matches_classical_checker((g, s) in group_and_subset()) {
        let deg = subgroup_degree(&g, &s).unwrap().overall;
        prop_assert_eq!(deg.is_one(), classical_subgroup(&g, &s));
        prop_assert_eq!(normal_degree(&g, &s).unwrap().is_one(), classical_normal(&g, &s));
    }

    #[test]
    fn normality_is_free_on_abelian_groups((g, s) in group_and_subset()) {
        if g.is_abelian() {
            prop_assert!(normal_degree(&g, &s).unwrap().is_one());
        }
    }

    #[test]
    fn identity_degree_is_bounded_by_chaining((g, s) in group_and_subset()) {
        let sub = subgroup_degree(&g, &s).unwrap().overall;
        let id = identity_condition_degree(&g, &s).unwrap();
        prop_assert!(id >= strong_conj(sub, sub));
        if sub.is_one() {
            prop_assert!(id.is_one());
        }
    }

    #[test]
    fn epsilon_bounds_transition_conditions((m, s) in machine_and_subset()) {
        let ev = Evaluator::default();
        let sub = ev.subsemi(&m, &s).unwrap();
        let eps = ev.kernel_epsilon(&m, &s).unwrap();
        // Condition (ii) at alpha = e is the first epsilon condition, and (iii)
        // at alpha = e is the second, so the bound holds componentwise.
        prop_assert!(sub.degree("subsemi.ii").unwrap() <= eps.degree("epsilon.i").unwrap());
        prop_assert!(sub.degree("subsemi.iii").unwrap() <= eps.degree("epsilon.ii").unwrap());
    }

    #[test]
    fn starred_degrees_never_exceed_single_letter_degrees((m, s) in machine_and_subset()) {
        let ev = Evaluator::default();
        // Every one-letter word is among the starred instantiations.
        let sub = ev.subsemi(&m, &s).unwrap();
        let letters = sub.degree("subsemi.ii").unwrap().min(sub.degree("subsemi.iii").unwrap());
        prop_assert!(ev.subsemi_star(&m, &s, 2).unwrap().overall <= letters);
        let ker = ev.kernel(&m, &s).unwrap();
        let letters = ker.degree("kernel.ii").unwrap().min(ker.degree("kernel.iii").unwrap());
        prop_assert!(ev.kernel_star(&m, &s, 2).unwrap().overall <= letters);
    }

    #[test]
    fn degree_one_is_preserved_by_star((m, s) in machine_and_subset()) {
        let ev = Evaluator::default();
        if ev.subsemi(&m, &s).unwrap().overall.is_one() {
            prop_assert!(ev.subsemi_star(&m, &s, 3).unwrap().overall.is_one());
        }
        if ev.kernel(&m, &s).unwrap().overall.is_one() {
            prop_assert!(ev.kernel_star(&m, &s, 3).unwrap().overall.is_one());
        }
    }
}
