mod common;

use std::collections::{BTreeSet, HashSet};

use common::*;
use mindeg::actions::*;
use mindeg::structure::{all_block_systems, sylow2, BlockSystem};
use mindeg::{Error, Limits, PermGroup, Permutation};
use proptest::prelude::*;

/// Right cosets of `h` in `g` as element sets.
fn brute_cosets(g_els: &[Permutation], h_els: &[Permutation]) -> Vec<BTreeSet<Permutation>> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut out = Vec::new();
    for g in g_els {
        if seen.contains(g) {
            continue;
        }
        let c: BTreeSet<Permutation> = h_els.iter().map(|h| h.compose(g).unwrap()).collect();
        seen.extend(c.iter().cloned());
        out.push(c);
    }
    out
}

fn brute_coset_fix(cosets: &[BTreeSet<Permutation>], x: &Permutation) -> usize {
    cosets
        .iter()
        .filter(|c| {
            let g = c.iter().next().unwrap();
            c.contains(&g.compose(x).unwrap())
        })
        .count()
}

fn pairs() -> Vec<(PermGroup, PermGroup)> {
    let s4 = PermGroup::symmetric(4);
    let a5 = PermGroup::alternating(5);
    let d5 = group(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]);
    vec![
        (s4.clone(), group(4, &["(1,2)"])),
        (s4.clone(), group(4, &["(1,2)(3,4)", "(1,3)(2,4)"])),
        (s4.clone(), sylow2(&s4).unwrap()),
        (a5.clone(), group(5, &["(1,2,3)"])),
        (a5.clone(), sylow2(&a5).unwrap()),
        (a5.clone(), PermGroup::trivial(5)),
        (PermGroup::symmetric(5), d5),
    ]
}

#[test]
fn coset_action_matches_enumeration() {
    for (g, h) in pairs() {
        let act = coset_action(&g, &h).unwrap();
        let (ge, he) = (elements(&g), elements(&h));
        let cosets = brute_cosets(&ge, &he);
        assert_eq!(act.degree(), cosets.len());
        assert!(act.image.is_transitive());
        for x in &ge {
            let img = act.image_of(x).unwrap();
            assert_eq!(fixed(&img), brute_coset_fix(&cosets, x), "fix of {x}");
        }
        // The image has order |G : core|.
        let kernel: Vec<&Permutation> = ge
            .iter()
            .filter(|x| brute_coset_fix(&cosets, x) == cosets.len())
            .collect();
        assert_eq!(act.kernel.order(), kernel.len() as u128);
        assert_eq!(act.image.order() * act.kernel.order(), g.order());
        assert_eq!(act.is_faithful(), kernel.len() == 1);
    }
}

#[test]
fn coset_of_is_constant_on_cosets() {
    let g = PermGroup::symmetric(4);
    let h = group(4, &["(1,2,3)"]);
    let act = coset_action(&g, &h).unwrap();
    for x in elements(&g) {
        let c = act.coset_of(&x).unwrap();
        for y in elements(&h) {
            assert_eq!(act.coset_of(&y.compose(&x).unwrap()), Some(c));
        }
    }
    assert!(coset_action(&g, &group(5, &["(1,5)"])).is_err());
    assert!(matches!(
        coset_action(&PermGroup::alternating(4), &group(4, &["(1,2)"])),
        Err(Error::NotSubgroup)
    ));
}

#[test]
fn imprimitive_wreath_products() {
    let t = PermGroup::symmetric(3);
    let w = wreath_imprimitive(&t, 2).unwrap();
    assert_eq!(w.degree(), 6);
    assert_eq!(w.order(), 6 * 6 * 2);
    let blocks = BlockSystem::from_blocks(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
    assert!(blocks.is_invariant(&w));
    let c = wreath_imprimitive(&PermGroup::cyclic(2), 3).unwrap();
    assert_eq!(c.order(), 8 * 6);
}

#[test]
fn product_action_coordinates() {
    let d = 3;
    let a = vec![p(3, "(1,2)"), p(3, "(1,2,3)")];
    let sigma = p(2, "(1,2)");
    let x = product_action_element(d, &a, &sigma).unwrap();
    for idx in 0..9 {
        let c = tuple_coords(d, 2, idx);
        assert_eq!(tuple_index(d, &c), idx);
        let img = tuple_coords(d, 2, x.image(idx));
        // Coordinate i moves to position σ(i), transformed by a_i.
        for i in 0..2 {
            assert_eq!(img[sigma.image(i)], a[i].image(c[i]));
        }
    }
}

#[test]
fn product_action_orders() {
    for (t, ell) in [(PermGroup::symmetric(3), 2), (PermGroup::cyclic(3), 3), (PermGroup::alternating(4), 2)] {
        let w = wreath_product_action(&t, ell).unwrap();
        assert_eq!(w.degree(), t.degree().pow(ell as u32));
        let fact: u128 = (1..=ell as u128).product();
        assert_eq!(w.order(), t.order().pow(ell as u32) * fact);
        assert!(w.is_transitive());
    }
}

#[test]
fn holomorph_orders_and_linearity() {
    let q = vec![linear_map(5, 1, &[vec![2]]).unwrap()];
    let g = holomorph_affine(5, 1, &q).unwrap();
    assert_eq!(g.order(), 20);
    let gens = vec![
        linear_map(3, 2, &[vec![0, 2], vec![1, 0]]).unwrap(),
        linear_map(3, 2, &[vec![1, 1], vec![1, 2]]).unwrap(),
    ];
    let g = holomorph_affine(3, 2, &gens).unwrap();
    assert_eq!(g.order(), 9 * 8);
    assert!(g.stabilizer(0).generators().iter().all(|x| is_linear(3, 2, x)));
    // An element moving 0 splits into a translation and a linear part.
    let t = affine_parts(3, 2, &elements(&g).into_iter().find(|x| x.image(0) != 0).unwrap());
    assert!(t.0 != 0);
    assert!(is_linear(3, 2, &t.1));
    // Q must be a 2-group, p odd.
    let bad = linear_map(7, 1, &[vec![3]]).unwrap();
    assert!(holomorph_affine(7, 1, &[bad]).is_err());
    assert!(holomorph_affine(2, 1, &[]).is_err());
}

#[test]
fn linear_maps_respect_addition() {
    let (p, d) = (5u64, 2);
    let m = vec![vec![2, 1], vec![3, 3]];
    let g = linear_map(p, d, &m).unwrap();
    let n = 25usize;
    let add = |a: usize, b: usize| {
        let (a0, a1, b0, b1) = (a % 5, a / 5, b % 5, b / 5);
        (a0 + b0) % 5 + 5 * ((a1 + b1) % 5)
    };
    for a in 0..n {
        for b in 0..n {
            assert_eq!(g.image(add(a, b)), add(g.image(a), g.image(b)));
        }
    }
    // Fixed vectors: the null space of M − I has size p^(2 − rank).
    let fixed_brute = (0..n).filter(|&v| g.image(v) == v).count();
    assert_eq!(fixed_vectors(&g), fixed_brute);
}

#[test]
fn mobius_groups() {
    for &q in SUPPORTED_Q.iter() {
        for flavor in [MobiusFlavor::PSL, MobiusFlavor::PGL, MobiusFlavor::PGammaL] {
            let g = mobius_action(q, flavor).unwrap();
            assert_eq!(g.degree(), q as usize + 1);
            assert_eq!(g.order(), mobius_order(q, flavor), "q = {q}, {flavor:?}");
        }
        let pgl = mobius_action(q, MobiusFlavor::PGL).unwrap();
        assert_eq!(pgl.order(), (q as u128 + 1) * q as u128 * (q as u128 - 1));
        // Sharply 3-transitive: the stabiliser of three points is trivial.
        assert!(pgl.pointwise_stabilizer(&[0, 1, 2]).is_trivial());
    }
    assert!(mobius_action(6, MobiusFlavor::PSL).is_err());
    assert_eq!(mobius_action(8, MobiusFlavor::PGammaL).unwrap().order(), 1512);
}

#[test]
fn field_arithmetic_against_integers() {
    for q in [5u32, 7, 11, 13] {
        let f = Field::new(q).unwrap();
        for a in 0..q {
            for b in 0..q {
                assert_eq!(f.add(a, b), (a + b) % q);
                assert_eq!(f.mul(a, b), a * b % q);
            }
        }
    }
    let f = Field::new(9).unwrap();
    assert_eq!(f.characteristic(), 3);
    for a in 1..9 {
        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        assert_eq!(f.frobenius(f.frobenius(a)), a);
    }
}

#[test]
fn catalog_parsing_and_errors() {
    let src = r#"
[[group]]
name = "D4"
degree = 4
generators = ["(1,2,3,4)", "(1,3)"]
expected_order = 8
tags = ["dihedral"]
"#;
    let entries = parse_catalog(src).unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0].actions, vec!["natural", "sylow2"]);
    assert_eq!(realize(&entries[0]).unwrap().order(), 8);

    let wrong = src.replace("expected_order = 8", "expected_order = \"9\"");
    let e = parse_catalog(&wrong).unwrap();
    assert!(matches!(realize(&e[0]), Err(Error::OrderMismatch { expected: 9, actual: 8, .. })));

    let bad = src.replace("(1,3)", "(1,3,3)");
    match parse_catalog(&bad) {
        Err(Error::Catalog { line, .. }) => assert_eq!(line, 5),
        other => panic!("expected a located error, got {other:?}"),
    }
    let unknown = src.replace("tags", "labels");
    assert!(matches!(parse_catalog(&unknown), Err(Error::Catalog { .. })));
    let out_of_range = src.replace("(1,3)", "(1,7)");
    assert!(matches!(parse_catalog(&out_of_range), Err(Error::Catalog { line: 5, .. })));
}

#[test]
fn bundled_catalog_realises() {
    for e in bundled_catalog() {
        let g = realize(&e).unwrap();
        assert_eq!(g.degree(), e.degree, "{}", e.name);
        for a in &e.actions {
            a.parse::<ActionSpec>().unwrap();
        }
    }
}

#[test]
fn group_expressions() {
    let cases = [
        ("Sym(5)", 120u128),
        ("Alt(6)", 360),
        ("C(7)", 7),
        ("D(6)", 12),
        ("PSL(2,7)", 168),
        ("PGL(2,5)", 120),
        ("Wr(Sym(2),3)", 48),
        ("PWr(Sym(3),2)", 72),
        ("Cosets(Sym(4),sylow2)", 6),
        ("Cosets(Alt(5),stab:1)", 60),
        ("Hol(5,[[2]])", 20),
        ("Gens(4,(1,2,3,4),(1,3))", 8),
        ("M11", 7920),
    ];
    for (text, order) in cases {
        assert_eq!(resolve(text, &[]).unwrap().order(), order, "{text}");
    }
    assert_eq!(resolve("Cosets(Sym(4),sylow2)", &[]).unwrap().degree(), 3);
    assert!(matches!(resolve("Nope(3)", &[]), Err(Error::UnknownGroup(_))));
    assert!(resolve("Sym(x)", &[]).is_err());
}

#[test]
fn action_specs() {
    for s in ["natural", "sylow2", "cosets:stab:1,2", "cosets:(1,2);(3,4)"] {
        let spec: ActionSpec = s.parse().unwrap();
        assert_eq!(spec.to_string().parse::<ActionSpec>().unwrap(), spec);
    }
    assert!("cosets:".parse::<ActionSpec>().is_err());
    assert!("bogus".parse::<ActionSpec>().is_err());
    let g = PermGroup::symmetric(4);
    let h = SubgroupSpec::Stabilizer(vec![0]).realize(&g).unwrap();
    assert_eq!(h.order(), 6);
    assert!(SubgroupSpec::Generators(vec!["(1,2)".into()]).realize(&PermGroup::alternating(4)).is_err());
}

#[test]
fn views_agree_with_explicit_actions() {
    let limits = Limits::default();
    for (g, h) in pairs() {
        let view = ActionView::cosets(&g, &h, &limits).unwrap();
        let explicit = coset_action(&g, &h).unwrap();
        assert_eq!(view.degree(), explicit.degree() as u128);
        assert!(view.is_transitive());
        assert_eq!(view.point_stabilizer().order() * view.degree(), view.group().order());
        assert_eq!(view.explicit(&limits).unwrap().order(), explicit.image.order());
    }
}

#[test]
fn block_systems_of_coset_actions_are_overgroups() {
    // Systems of G on H\G correspond to subgroups between H and G.
    let g = PermGroup::symmetric(4);
    let h = group(4, &["(1,2)"]);
    let act = coset_action(&g, &h).unwrap();
    let systems = all_block_systems(&act.image).unwrap();
    let brute = brute_block_systems(&act.image);
    assert_eq!(systems.len(), brute.len() + 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_cyclic_subgroups_of_s5(seed in 0u64..10_000) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = PermGroup::symmetric(5);
        let x = g.random_element(&mut rng);
        let h = PermGroup::with_degree(5, vec![x]).unwrap();
        let act = coset_action(&g, &h).unwrap();
        prop_assert_eq!(act.degree() as u128, 120 / h.order());
        let cosets = brute_cosets(&elements(&g), &elements(&h));
        for y in g.generators() {
            prop_assert_eq!(fixed(&act.image_of(y).unwrap()), brute_coset_fix(&cosets, y));
        }
    }
}
