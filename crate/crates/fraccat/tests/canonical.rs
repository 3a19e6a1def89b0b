mod common;

use fraccat::bf_oracle::iso_comma;
use fraccat::canonical::{ac_equivalent, from_twocell, to_twocell, AlmostCanonical};
use fraccat::cli::parse;
use fraccat::coherence::{enumerate_triples, InstancePool, Sampler};
use fraccat::fincat::{all_nat_transfs, compose_functors, duplicate_objects, Functor};
use fraccat::fractions::{cells_equivalent, identity_cell, uw_on_1, TwoCell};
use proptest::prelude::*;

use common::cat;

fn z2_triples() -> (AlmostCanonical, AlmostCanonical) {
    let z2 = cat("Z2");
    let id = Functor::identity(&z2);
    let fr = uw_on_1(&id);
    let ts = all_nat_transfs(&id, &id);
    let e = AlmostCanonical::new(fr.clone(), fr.clone(), id.clone(), ts[0].clone()).unwrap();
    let s = AlmostCanonical::new(fr.clone(), fr, id, ts[1].clone()).unwrap();
    (e, s)
}

#[test]
fn the_choice_is_the_iso_comma_of_the_w_legs() {
    let doc = parse(include_str!("data/worked.cat")).unwrap();
    let g = TwoCell::from(doc.cell("sigma").unwrap().clone());
    let a = from_twocell(&g).unwrap();
    let sq = iso_comma(g.src().w(), g.tgt().w()).unwrap();
    assert_eq!(a.choice.proj_w, sq.proj_w);
    assert_eq!(a.choice.proj_f, sq.proj_f);
    assert_eq!(a.choice.filler, sq.filler);
    a.validate().unwrap();
}

#[test]
fn ac_equivalent_examples() {
    let (e, s) = z2_triples();
    assert!(ac_equivalent(&e, &e).unwrap());
    assert!(!ac_equivalent(&e, &s).unwrap());

    // Precomposition with an equivalence u and σ = id.
    let u = duplicate_objects(e.apex3(), &[3]);
    let moved = AlmostCanonical::new(
        e.src_fr.clone(),
        e.tgt_fr.clone(),
        compose_functors(&e.t, &u).unwrap(),
        e.phi.pre(&u).unwrap(),
    )
    .unwrap();
    assert!(ac_equivalent(&e, &moved).unwrap());
    assert!(!ac_equivalent(&s, &moved).unwrap());
    let sigma = fraccat::fincat::NatTransf::identity(&compose_functors(&e.t, &u).unwrap());
    e.verify_relation(&moved, &u, &Functor::identity(u.dom()), &sigma).unwrap();
}

#[test]
fn identity_triple_gives_identity_cell() {
    let (e, _) = z2_triples();
    let g = to_twocell(&e);
    assert!(cells_equivalent(&g.rep, &identity_cell(&e.src_fr).rep).unwrap());
    let back = from_twocell(&identity_cell(&e.src_fr)).unwrap();
    assert!(ac_equivalent(&back, &e).unwrap());
}

#[test]
fn triples_need_t_in_w() {
    let i2 = cat("I2");
    let id = Functor::identity(&i2);
    let fr = uw_on_1(&id);
    let d2 = cat("D2");
    // D2 → I2 hitting both objects is not full.
    let t = fraccat::fincat::all_functors(&d2, &i2).into_iter().find(|f| f.obj(0) != f.obj(1)).unwrap();
    let phi = fraccat::fincat::NatTransf::identity(&t);
    let err = AlmostCanonical::new(fr.clone(), fr, t, phi).unwrap_err();
    assert!(matches!(err, fraccat::Error::NotInW(_)), "{err}");
}

#[test]
fn bijection_on_the_worked_example() {
    let doc = parse(include_str!("data/worked.cat")).unwrap();
    let pool = InstancePool::fixtures(0);
    let (f, g) = (doc.fraction("f").unwrap(), doc.fraction("g").unwrap());
    let triples = enumerate_triples(&pool, f, g).unwrap();
    assert!(!triples.is_empty());
    let mut families: Vec<Vec<usize>> = Vec::new();
    for a in &triples {
        let n = to_twocell(a);
        assert!(ac_equivalent(&from_twocell(&n).unwrap(), a).unwrap());
        families.push(common::family(&n.rep));
        for b in &triples {
            assert_eq!(ac_equivalent(a, b).unwrap(), common::same_class(&n.rep, &to_twocell(b).rep));
        }
    }
    families.sort();
    families.dedup();
    // Every 2-cell f ⇒ g is hit.
    assert_eq!(families.len(), common::count_cells(f, g));
    assert_eq!(families.len(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trips((seed, trial) in (0u64..4, 0usize..10_000)) {
        let pool = InstancePool::fixtures(seed);
        let mut s = Sampler::new(&pool, "prop-canonical", trial);
        let f1 = s.fraction(None, None);
        let (_, g) = s.cell_from(&f1).unwrap();
        let a = from_twocell(&g).unwrap();
        a.validate().unwrap();
        let n = to_twocell(&a);
        prop_assert!(cells_equivalent(&n.rep, &g.rep).unwrap());
        prop_assert!(common::same_class(&n.rep, &g.rep));
        let again = from_twocell(&n).unwrap();
        prop_assert!(ac_equivalent(&again, &a).unwrap());
    }
}
