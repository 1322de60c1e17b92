mod common;

use std::collections::BTreeMap;

use clspace_core::correspondence::frame_to_space;
use clspace_core::search::{find_model, pad_witness};
use clspace_core::{
    delta_family, gen, parse, BitopSpace, FiniteSpace, FrameClass, Formula, Relation, Schema, Subset,
    Verdict, VisserModel,
};
use proptest::prelude::*;

use common::{full, opens_of};

fn formula_strategy(vars: u32, depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Top),
        Just(Formula::Bot),
        (0..vars).prop_map(Formula::Var),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            inner.clone().prop_map(Formula::boxed),
            inner.clone().prop_map(Formula::dia),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::rhd(a, b)),
        ]
    })
}

fn topology_strategy(max: usize) -> impl Strategy<Value = FiniteSpace> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(0u32..1 << n, 0..=n + 1).prop_map(move |gens| {
            let gens: Vec<Subset> = gens.into_iter().map(|g| Subset::from_bits(n, g)).collect();
            FiniteSpace::generate(n, &gens).unwrap()
        })
    })
}

fn model_strategy(max: usize, vars: u32) -> impl Strategy<Value = VisserModel> {
    (any::<u64>(), 1..=max).prop_map(move |(seed, n)| {
        let mut rng = gen::rng(seed);
        let frame = gen::visser_frame(&mut rng, n);
        VisserModel::new(frame, gen::valuation(&mut rng, vars, n)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn render_parse_round_trip(f in formula_strategy(4, 6)) {
        let text = f.render();
        prop_assert_eq!(parse(&text).unwrap(), f.clone());
        prop_assert_eq!(parse(&text).unwrap().render(), text);
    }

    #[test]
    fn variables_are_exact(f in formula_strategy(5, 5)) {
        let mut seen = std::collections::BTreeSet::new();
        fn walk(f: &Formula, seen: &mut std::collections::BTreeSet<u32>) {
            match f {
                Formula::Var(i) => { seen.insert(*i); }
                Formula::Top | Formula::Bot => {}
                Formula::Neg(a) | Formula::Box(a) | Formula::Dia(a) => walk(a, seen),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Rhd(a, b) => {
                    walk(a, seen);
                    walk(b, seen);
                }
            }
        }
        walk(&f, &mut seen);
        prop_assert_eq!(f.variables(), seen);
    }

    #[test]
    fn instantiate_commutes_with_text(a in formula_strategy(2, 3), b in formula_strategy(2, 3), c in formula_strategy(2, 3)) {
        for schema in Schema::library() {
            let map: BTreeMap<char, Formula> =
                [('p', a.clone()), ('q', b.clone()), ('r', c.clone())].into_iter().collect();
            let direct = schema.instantiate(&map).unwrap();
            prop_assert_eq!(parse(&direct.render()).unwrap(), direct);
        }
    }

    #[test]
    fn derived_set_matches_oracle(t in topology_strategy(6), y in any::<u32>()) {
        let n = t.size();
        let y = Subset::from_bits(n, y);
        let opens = opens_of(&t);
        prop_assert_eq!(t.derived_set(y).unwrap().bits(), common::derived(n, &opens, y.bits()));
        let cd = !common::derived(n, &opens, !y.bits() & full(n)) & full(n);
        prop_assert_eq!(t.co_derived_set(y).unwrap().bits(), cd);
    }

    #[test]
    fn derived_set_laws(t in topology_strategy(6), y in any::<u32>(), z in any::<u32>()) {
        let n = t.size();
        let (y, z) = (Subset::from_bits(n, y), Subset::from_bits(n, z));
        let d = |s: Subset| t.derived_set(s).unwrap();
        prop_assert!(d(Subset::empty(n)).is_empty());
        prop_assert_eq!(d(y.union(z)), d(y).union(d(z)));
        prop_assert!(d(y.intersection(z)).is_subset_of(d(y)));
        if t.is_scattered() {
            prop_assert!(d(d(y)).is_subset_of(d(y)));
            if !y.is_empty() {
                prop_assert!(!y.difference(d(y)).is_empty());
            }
        }
    }

    #[test]
    fn generate_matches_fixpoint(n in 1usize..=6, gens in prop::collection::vec(any::<u32>(), 0..6)) {
        let gens: Vec<u32> = gens.into_iter().map(|g| g & full(n)).collect();
        let subsets: Vec<Subset> = gens.iter().map(|&g| Subset::from_bits(n, g)).collect();
        let t = FiniteSpace::generate(n, &subsets).unwrap();
        let oracle = common::closure_fixpoint(n, &gens);
        prop_assert_eq!(opens_of(&t), oracle.iter().copied().collect::<Vec<_>>());
        prop_assert!(common::is_topology(n, &oracle));
        let family: Vec<Subset> = oracle.iter().map(|&u| Subset::from_bits(n, u)).collect();
        prop_assert_eq!(FiniteSpace::from_opens(n, &family).unwrap(), t);
    }

    #[test]
    fn scattered_matches_oracle(t in topology_strategy(7)) {
        prop_assert_eq!(t.is_scattered(), common::scattered(t.size(), &opens_of(&t)));
    }

    #[test]
    fn e_set_routes_agree(a in topology_strategy(5), seed in any::<u64>(), y in any::<u32>(), z in any::<u32>()) {
        let n = a.size();
        let b = gen::topology(&mut gen::rng(seed), n);
        let sp = BitopSpace::new(a.clone(), b.clone()).unwrap();
        let (y, z) = (Subset::from_bits(n, y), Subset::from_bits(n, z));
        let oracle = common::e_def(n, &opens_of(&a), &opens_of(&b), y.bits(), z.bits());
        prop_assert_eq!(sp.e_set(y, z).unwrap().bits(), oracle);
        prop_assert_eq!(sp.e_set_local(y, z).unwrap().bits(), oracle);
    }

    #[test]
    fn eval_matches_oracle(seed in any::<u64>(), n in 1usize..=5, f in formula_strategy(3, 4)) {
        let mut rng = gen::rng(seed);
        let sp = gen::bitop_space(&mut rng, n);
        let v = gen::valuation(&mut rng, 3, n);
        let oracle = common::eval(n, &opens_of(sp.tau0()), &opens_of(sp.tau1()), &common::valuation_map(&v), &f);
        prop_assert_eq!(sp.eval(&v, &f).unwrap().bits(), oracle);
    }

    #[test]
    fn frame_forcing_matches_space(m in model_strategy(4, 3), f in formula_strategy(3, 4)) {
        let truth = frame_to_space(&m.frame).eval(&m.valuation, &f).unwrap();
        prop_assert_eq!(m.truth_set(&f).unwrap(), truth);
    }

    #[test]
    fn box_as_rhd_preserves_truth(m in model_strategy(3, 2), f in formula_strategy(2, 4)) {
        let g = f.box_as_rhd();
        prop_assert!(!g.contains_unary_modality());
        prop_assert_eq!(m.truth_set(&f).unwrap(), m.truth_set(&g).unwrap());
    }

    #[test]
    fn cl_spaces_validate_cl(seed in any::<u64>(), n in 1usize..=4) {
        let sp = gen::cl_space(&mut gen::rng(seed), n);
        for name in ["K", "GL", "J1", "J2", "J3", "J4"] {
            let f = Schema::get(name).unwrap().instance();
            prop_assert!(sp.is_valid(&f).unwrap(), "{} on {:?}", name, sp);
            // guarded by []F the instance stays valid
            let guarded = Formula::imp(Formula::boxed(Formula::Bot), f);
            prop_assert!(sp.is_valid(&guarded).unwrap());
        }
    }

    #[test]
    fn valid_agrees_with_oracle(seed in any::<u64>(), n in 1usize..=3, f in formula_strategy(2, 3)) {
        let sp = gen::bitop_space(&mut gen::rng(seed), n);
        prop_assert_eq!(
            sp.is_valid(&f).unwrap(),
            common::valid(n, &opens_of(sp.tau0()), &opens_of(sp.tau1()), &f)
        );
    }

    #[test]
    fn relation_closures(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = gen::rng(seed);
        let r = gen::strict_order(&mut rng, n);
        prop_assert!(r.is_transitive() && r.is_acyclic() && r.is_irreflexive());
        let s = gen::preorder(&mut rng, n);
        prop_assert!(s.is_reflexive() && s.is_transitive());
        prop_assert_eq!(s.reflexive_transitive_closure(), s.clone());
        if n <= 5 {
            prop_assert_eq!(Relation::from_code(n, s.code()), s);
        }
    }
}

#[test]
fn delta_prefixes_satisfiable() {
    for n in 0..=3 {
        let gamma = delta_family(n);
        let r = find_model(&gamma, FrameClass::Cl, n + 2).unwrap();
        assert_eq!(r.verdict, Verdict::Satisfiable, "Δ_{n}");
        let w = r.witness.unwrap();
        assert_eq!(w.model.frame.size(), n + 2);
        for f in &gamma {
            assert!(w.model.forces(w.point, f).unwrap());
        }
        // satisfiable at size n + 2 stays satisfiable with a padding point
        let padded = pad_witness(&w.model).unwrap();
        for f in &gamma {
            assert!(padded.forces(w.point, f).unwrap());
        }
    }
}

#[test]
fn gl_validity_on_all_small_frames() {
    for n in 1..=3 {
        for f in clspace_core::frames::all_frames(n) {
            for name in ["K", "GL", "J1", "J2", "J3", "J4"] {
                let axiom = Schema::get(name).unwrap().instance();
                assert!(clspace_core::frames::is_valid_on_frame(&f, &axiom).unwrap(), "{name} {f:?}");
            }
        }
    }
}
