mod common;

use std::collections::BTreeSet;

use common::*;
use mindeg::actions::{coset_action, ActionView};
use mindeg::fixity::*;
use mindeg::structure::{all_block_systems, sylow2, BlockSystem};
use mindeg::{Error, Limits, PermGroup, Permutation, Ratio};
use proptest::prelude::*;

fn brute_mindeg(els: &[Permutation]) -> usize {
    els.iter()
        .filter(|x| !x.is_identity())
        .map(|x| x.degree() - fixed(x))
        .min()
        .unwrap_or(els[0].degree())
}

fn sample_groups() -> Vec<PermGroup> {
    vec![
        PermGroup::symmetric(4),
        PermGroup::alternating(5),
        PermGroup::cyclic(7),
        group(4, &["(1,2,3,4)", "(1,3)"]),
        group(6, &["(1,2,3)", "(1,2)", "(1,4)(2,5)(3,6)"]),
        group(9, &["(1,2,3)", "(1,4,7)(2,5,8)(3,6,9)"]),
        group(8, &["(1,2)(3,4)(5,6)(7,8)", "(1,3)(2,4)(5,7)(6,8)", "(1,5)(2,6)(3,7)(4,8)"]),
    ]
}

#[test]
fn profiles_match_enumeration() {
    for g in sample_groups() {
        let els = elements(&g);
        let prof = fixity_profile(&g).unwrap();
        let n = g.degree() as u128;
        assert_eq!(prof.degree, n);
        assert_eq!(prof.mindeg, brute_mindeg(&els) as u128);
        assert_eq!(prof.mindeg + prof.fixity, n);
        let max_fix = els.iter().filter(|x| !x.is_identity()).map(fixed).max().unwrap();
        assert_eq!(prof.max_fpr, Ratio::new(max_fix as u128, n));
        // Every element's fixed-point count appears on its class row.
        let sizes: u128 = prof.classes.iter().map(|c| c.size).sum();
        assert_eq!(sizes, els.len() as u128);
        let per_class: BTreeSet<(u64, u128)> = prof.classes.iter().map(|c| (c.element_order, c.fix_count)).collect();
        for x in &els {
            assert!(per_class.contains(&(x.order(), fixed(x) as u128)));
        }
        if let Some(a) = prof.argmax_class {
            assert_eq!(prof.classes[a].fix_count, prof.fixity);
        }
    }
}

#[test]
fn direct_ratio_and_membership() {
    let g = PermGroup::symmetric(4);
    assert_eq!(fpr_direct(&g, &p(4, "(1,2)")).unwrap(), Ratio::new(1, 2));
    assert_eq!(fpr_direct(&g, &p(4, "(1,2,3,4)")).unwrap(), Ratio::zero());
    let a4 = PermGroup::alternating(4);
    assert!(matches!(fpr_direct(&a4, &p(4, "(1,2)")), Err(Error::NotInGroup)));
}

#[test]
fn coset_formula_matches_explicit_action() {
    let limits = Limits::default();
    let cases = [
        (PermGroup::symmetric(5), group(5, &["(1,2)(3,4)", "(1,3)(2,4)"])),
        (PermGroup::symmetric(5), group(5, &["(1,2,3)"])),
        (PermGroup::alternating(6), group(6, &["(1,2)(3,4)"])),
        (PermGroup::symmetric(4), PermGroup::trivial(4)),
    ];
    for (g, h) in cases {
        let act = coset_action(&g, &h).unwrap();
        let prof = coset_fixity_profile(&g, &h, &limits).unwrap();
        for (row, c) in prof.classes.iter().zip(g.conjugacy_classes().unwrap().iter()) {
            let img = act.image_of(&c.rep).unwrap();
            assert_eq!(row.fix_count, fixed(&img) as u128);
            assert_eq!(fpr_coset_formula(&g, &h, &c.rep).unwrap(), fpr_direct(&act.image, &img).unwrap());
        }
    }
    let bad = group(5, &["(1,2)"]);
    assert!(matches!(
        fpr_coset_formula(&PermGroup::alternating(5), &bad, &p(5, "(1,2,3)")),
        Err(Error::NotSubgroup)
    ));
}

#[test]
fn view_profiles_agree() {
    let limits = Limits::default();
    let g = PermGroup::symmetric(6);
    let h = sylow2(&g).unwrap();
    let formula = view_profile(&ActionView::cosets(&g, &h, &limits).unwrap(), &limits).unwrap();
    let explicit = fixity_profile(&coset_action(&g, &h).unwrap().image).unwrap();
    assert_eq!(formula.degree, explicit.degree);
    assert_eq!(formula.mindeg, explicit.mindeg);
    assert_eq!(formula.max_fpr, explicit.max_fpr);
}

#[test]
fn monotonicity_on_every_system() {
    for g in sample_groups().into_iter().filter(|g| g.is_transitive()) {
        for sys in all_block_systems(&g).unwrap() {
            let r = check_block_monotonicity(&g, &sys).unwrap();
            assert_eq!(r.violations, 0);
            for x in elements(&g) {
                let d = fix_decomposition(&g, &sys, &x).unwrap();
                assert_eq!(d.total, fixed(&x));
                // Σ₂ blocks are fixed pointwise, Σ₁ blocks only setwise.
                for &b in &d.sigma2 {
                    assert!(sys.block(b).iter().all(|&y| x.image(y) == y));
                }
                for &b in &d.sigma1 {
                    assert!(sys.block(b).iter().any(|&y| x.image(y) != y));
                }
            }
        }
    }
    let g = PermGroup::symmetric(4);
    let sys = BlockSystem::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
    assert!(matches!(check_block_monotonicity(&g, &sys), Err(Error::NotInvariant)));
}

#[test]
fn refinement_of_fixed_blocks() {
    // Blocks of size 2 for the dihedral group of order 8 on 4 points.
    let g = group(4, &["(1,2,3,4)", "(1,3)"]);
    let sys = BlockSystem::from_blocks(4, &[vec![0, 2], vec![1, 3]]).unwrap();
    let d = fix_decomposition(&g, &sys, &p(4, "(1,3)")).unwrap();
    assert_eq!((d.sigma1.len(), d.sigma2.len(), d.total), (1, 1, 2));
    let d = fix_decomposition(&g, &sys, &p(4, "(1,3)(2,4)")).unwrap();
    assert_eq!((d.sigma1.len(), d.sigma2.len(), d.total), (2, 0, 0));
}

/// Unitriangular matrices over F_2 whose difference from I has rank one.
fn unitriangular_transvections(n: usize) -> u128 {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u32..1 << slots.len())
        .filter(|mask| {
            let mut rows = vec![0u32; n];
            for (k, &(i, j)) in slots.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    rows[i] |= 1 << j;
                }
            }
            // Rank one: non-zero, and all non-zero rows equal.
            let nz: Vec<u32> = rows.into_iter().filter(|&r| r != 0).collect();
            !nz.is_empty() && nz.iter().all(|&r| r == nz[0])
        })
        .count() as u128
}

#[test]
fn transvection_counts() {
    for n in 2..=6 {
        assert_eq!(transvection_count(n as u32).unwrap(), unitriangular_transvections(n));
    }
    for n in 2..=40 {
        assert_eq!(transvection_count(n).unwrap(), transvection_count_recursive(n).unwrap());
    }
    assert_eq!(transvection_count(2).unwrap(), 1);
    assert!(transvection_count(1).is_err());
    assert!(transvection_count_recursive(0).is_err());
    assert!(transvection_count(500).unwrap_err().is_resource());
}

#[test]
fn hypotheses_and_verdicts() {
    let limits = Limits::default();
    let s4 = PermGroup::symmetric(4);
    let h = check_hypotheses(&ActionView::Explicit(s4.clone()), &limits).unwrap();
    assert!(h.transitive && !h.stabiliser_2group);
    // Sym(4) on the cosets of a transposition: 2-group stabiliser, O2 = V4.
    let view = ActionView::cosets(&s4, &group(4, &["(1,2)"]), &limits).unwrap();
    let h = check_hypotheses(&view, &limits).unwrap();
    assert!(h.transitive && h.stabiliser_2group && !h.o2_trivial);
    assert_eq!(h.violated(), Some("O2 is not trivial"));

    let intransitive = group(5, &["(1,2)"]);
    let h = check_hypotheses(&ActionView::Explicit(intransitive), &limits).unwrap();
    assert!(!h.transitive && !h.all());

    // A transposition moves 2 of 4 points: the bound fails, with a witness.
    let b = theorem_bound_check(&s4).unwrap();
    assert!(matches!(b.verdict, Verdict::Skip { .. }));
    match bound_verdict(&b.profile) {
        Verdict::Fail { witness_class, witness } => {
            assert_eq!(b.profile.classes[witness_class].fix_count, 2);
            assert_eq!(witness, b.profile.classes[witness_class].rep);
        }
        v => panic!("expected FAIL, got {v:?}"),
    }
    let pass = theorem_bound_check(&PermGroup::cyclic(5)).unwrap();
    assert_eq!(pass.verdict, Verdict::Pass);
    assert!(pass.hypotheses.all());
}

#[test]
fn verdicts_serialise_with_status_tag() {
    let v = serde_json::to_value(Verdict::Skip { reason: "x".into() }).unwrap();
    assert_eq!(v["status"], "SKIP");
    let v = serde_json::to_value(Verdict::Pass).unwrap();
    assert_eq!(v["status"], "PASS");
    let r = serde_json::to_value(Ratio::new(2, 6)).unwrap();
    assert_eq!(r, serde_json::json!({"num": 1, "den": 3}));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// The bound verdict agrees with the integer inequality on random subgroups
    /// of Sym(6).
    #[test]
    fn bound_matches_integers(seed in 0u64..100_000) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let s = PermGroup::symmetric(6);
        let g = PermGroup::with_degree(6, vec![s.random_element(&mut rng), s.random_element(&mut rng)]).unwrap();
        let b = theorem_bound_check(&g).unwrap();
        let m = brute_mindeg(&elements(&g)) as u128;
        prop_assert_eq!(b.profile.mindeg, m);
        prop_assert_eq!(bound_verdict(&b.profile) == Verdict::Pass, 3 * m >= 12);
    }

    #[test]
    fn ratios_are_reduced(a in 0u128..1000, b in 1u128..1000) {
        let r = Ratio::new(a, b);
        prop_assert_eq!(num_gcd(r.num(), r.den()), 1);
        prop_assert_eq!(r.to_string().parse::<Ratio>().unwrap(), r);
    }
}

fn num_gcd(a: u128, b: u128) -> u128 {
    if b == 0 { a.max(1) } else { num_gcd(b, a % b) }
}
