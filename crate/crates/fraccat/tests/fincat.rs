mod common;

use std::sync::Arc;

use fraccat::fincat::fixtures::{self, point, to_point};
use fraccat::fincat::{
    all_functors, all_nat_transfs, compose_functors, conjugate, duplicate_objects, is_invertible_nat, vcompose_nat,
    whisker, CategoryBuilder, FinCategory, Functor, NatTransf, Side,
};
use fraccat::Error;
use proptest::prelude::*;

use common::cat;

fn nat(src: &Functor, tgt: &Functor, comps: &[&str]) -> NatTransf {
    let c = src.cod();
    NatTransf::new(src.clone(), tgt.clone(), comps.iter().map(|m| c.mor_by_name(m).unwrap()).collect()).unwrap()
}

#[test]
fn builder_rejects_bad_tables() {
    let mut b = CategoryBuilder::new("bad");
    b.object("x").unwrap();
    b.morphism("s", "x", "x").unwrap();
    // s.s is never given.
    assert!(matches!(b.build(), Err(Error::InvalidCategory(_))));

    let mut b = CategoryBuilder::new("bad");
    b.object("x").unwrap();
    assert!(b.object("x").is_err());
    assert!(b.morphism("m", "x", "y").is_err());
}

#[test]
fn builder_rejects_non_associative_tables() {
    let mut b = CategoryBuilder::new("M");
    b.object("x").unwrap();
    b.morphism("s", "x", "x").unwrap();
    b.morphism("t", "x", "x").unwrap();
    // t.s = s and s.t = t but s.s = id: (t.s).s = s.s = id, t.(s.s) = t.
    b.comp("s", "s", "id_x").unwrap();
    b.comp("t", "t", "t").unwrap();
    b.comp("t", "s", "s").unwrap();
    b.comp("s", "t", "t").unwrap();
    assert!(b.build().is_err());
}

#[test]
fn empty_category_is_valid() {
    let c = CategoryBuilder::new("E").build().unwrap();
    assert_eq!(c.num_objects(), 0);
    c.validate().unwrap();
    let e = Arc::new(c);
    let f = Functor::identity(&e);
    assert!(fraccat::bf_oracle::in_w(&f));
}

#[test]
fn fixtures_are_valid() {
    for c in fixtures::all() {
        c.validate().unwrap();
    }
    assert_eq!(cat("I2").num_morphisms(), 4);
    assert_eq!(cat("Z2").num_morphisms(), 2);
    assert!(cat("I2").is_groupoid());
    assert!(!cat("ARR").is_groupoid());
}

#[test]
fn compose_functors_examples() {
    let pt = fixtures::pt();
    let id = Functor::identity(&pt);
    assert_eq!(compose_functors(&id, &id).unwrap(), id);

    let i2 = cat("I2");
    let k = compose_functors(&point(&i2, "a"), &to_point(&i2)).unwrap();
    assert_eq!(k, Functor::constant(&i2, &i2, i2.obj_by_name("a").unwrap()));
    for m in 0..i2.num_morphisms() {
        assert_eq!(k.mor(m), i2.id(0));
    }

    let f = to_point(&i2);
    assert_eq!(compose_functors(&f, &Functor::identity(&i2)).unwrap(), f);
    assert!(matches!(compose_functors(&f, &f), Err(Error::DomainMismatch(_))));
}

#[test]
fn vcompose_nat_examples() {
    let z2 = cat("Z2");
    let id = Functor::identity(&z2);
    let s = nat(&id, &id, &["s"]);
    let e = vcompose_nat(&s, &s).unwrap();
    assert_eq!(e.components(), &[z2.id(0)]);
    assert!(e.is_identity());

    let one = NatTransf::identity(&id);
    assert_eq!(vcompose_nat(&one, &one).unwrap(), one);
    assert_eq!(vcompose_nat(&s.inv().unwrap(), &s).unwrap(), one);
}

#[test]
fn vcompose_nat_rejects_mismatched_boundaries() {
    let i2 = cat("I2");
    let (a, b) = (point(&i2, "a"), point(&i2, "b"));
    let ab = nat(&a, &b, &["ab"]);
    assert!(matches!(vcompose_nat(&ab, &ab), Err(Error::BoundaryMismatch(_))));
}

#[test]
fn whisker_examples() {
    let i2 = cat("I2");
    let (a, b) = (point(&i2, "a"), point(&i2, "b"));
    let ab = nat(&a, &b, &["ab"]);
    assert_eq!(whisker(&Functor::identity(&i2), &ab, Side::Left).unwrap(), ab);

    // Right whiskering by I2 → PT evaluates the single component at both objects.
    let c = to_point(&i2);
    let r = whisker(&c, &ab, Side::Right).unwrap();
    assert_eq!(r.components(), &[i2.mor_by_name("ab").unwrap(); 2]);

    // A constant functor sends every component to an identity.
    let z2 = cat("Z2");
    let k = Functor::constant(&i2, &z2, 0);
    let l = whisker(&k, &ab, Side::Left).unwrap();
    assert!(l.is_identity());
}

#[test]
fn is_invertible_nat_examples() {
    let arr = cat("ARR");
    let (p0, p1) = (point(&arr, "0"), point(&arr, "1"));
    assert!(!is_invertible_nat(&nat(&p0, &p1, &["u"])));
    assert!(is_invertible_nat(&NatTransf::identity(&p0)));
    let z2 = cat("Z2");
    let id = Functor::identity(&z2);
    assert!(is_invertible_nat(&nat(&id, &id, &["s"])));
}

#[test]
fn naturality_is_enforced() {
    let z2 = cat("Z2");
    let i2 = cat("I2");
    let twist = Functor::new(i2.clone(), z2.clone(), vec![0, 0], {
        let mut m = vec![0; i2.num_morphisms()];
        for (i, mm) in i2.morphisms().iter().enumerate() {
            m[i] = if mm.src == mm.tgt { z2.id(0) } else { z2.mor_by_name("s").unwrap() };
        }
        m
    })
    .unwrap();
    let k = Functor::constant(&i2, &z2, 0);
    let s = z2.mor_by_name("s").unwrap();
    assert!(matches!(NatTransf::new(twist.clone(), k.clone(), vec![s, s]), Err(Error::NotNatural(_))));
    assert!(NatTransf::new(twist, k, vec![z2.id(0), s]).is_ok());
}

#[test]
fn functor_validation_rejects_non_functorial_maps() {
    let arr = cat("ARR");
    let pt = fixtures::pt();
    // u must go to a morphism between the images of its ends.
    assert!(Functor::new(arr.clone(), arr.clone(), vec![1, 0], vec![arr.id(1), arr.id(0), 2]).is_err());
    assert!(Functor::new(pt, arr.clone(), vec![5], vec![0]).is_err());
}

#[test]
fn all_functors_counts() {
    // Frozen from hand enumeration: functors ARR → ARR are the monotone maps.
    assert_eq!(all_functors(&cat("ARR"), &cat("ARR")).len(), 3);
    assert_eq!(all_functors(&cat("Z2"), &cat("Z2")).len(), 2);
    assert_eq!(all_functors(&cat("I2"), &cat("Z2")).len(), 2);
    assert_eq!(all_functors(&cat("D2"), &cat("I2")).len(), 4);
    for a in fixtures::all() {
        for b in fixtures::all() {
            for f in all_functors(&a, &b) {
                f.validate().unwrap();
            }
        }
    }
}

#[test]
fn all_nat_transfs_matches_brute_force() {
    for a in fixtures::all() {
        for b in fixtures::all() {
            let fs = all_functors(&a, &b);
            for f in &fs {
                for g in &fs {
                    let mut kernel: Vec<Vec<usize>> =
                        all_nat_transfs(f, g).iter().map(|t| t.components().to_vec()).collect();
                    let mut oracle: Vec<Vec<usize>> =
                        common::nat_transfs(f, g).iter().map(|t| t.components().to_vec()).collect();
                    kernel.sort();
                    oracle.sort();
                    assert_eq!(kernel, oracle);
                }
            }
        }
    }
}

#[test]
fn duplicate_objects_is_an_equivalence() {
    for c in fixtures::all() {
        let mult: Vec<usize> = c.objects().map(|x| 1 + x % 2 + 1).collect();
        let d = duplicate_objects(&c, &mult);
        d.validate().unwrap();
        d.dom().validate().unwrap();
        assert!(common::equivalence(&d));
        assert_eq!(d.dom().num_objects(), mult.iter().sum::<usize>());
    }
}

#[test]
fn conjugate_gives_an_isomorphic_functor() {
    let i2 = cat("I2");
    let f = point(&i2, "a");
    let (g, theta) = conjugate(&f, &[i2.mor_by_name("ab").unwrap()]).unwrap();
    assert_eq!(g, point(&i2, "b"));
    theta.validate().unwrap();
    assert!(theta.is_invertible());
    let arr = cat("ARR");
    assert!(conjugate(&point(&arr, "0"), &[arr.mor_by_name("u").unwrap()]).is_err());
}

fn fixture_functor() -> impl Strategy<Value = Functor> {
    let fs: Vec<Functor> = fixtures::all()
        .iter()
        .flat_map(|a| fixtures::all().into_iter().flat_map(move |b| all_functors(a, &b)))
        .collect();
    prop::sample::select(fs)
}

fn functors_from(c: &Arc<FinCategory>) -> Vec<Functor> {
    fixtures::all().iter().flat_map(|b| all_functors(c, b)).collect()
}

proptest! {
    #[test]
    fn composition_is_associative_and_unital(f in fixture_functor(), i in 0usize..64, j in 0usize..64) {
        let gs = functors_from(f.cod());
        let g = &gs[i % gs.len()];
        let hs = functors_from(g.cod());
        let h = &hs[j % hs.len()];
        let left = compose_functors(h, &compose_functors(g, &f).unwrap()).unwrap();
        let right = compose_functors(&compose_functors(h, g).unwrap(), &f).unwrap();
        prop_assert_eq!(&left, &right);
        left.validate().unwrap();
        prop_assert_eq!(compose_functors(&Functor::identity(f.cod()), &f).unwrap(), f.clone());
    }

    #[test]
    fn whiskering_interchanges_with_vertical_composition(f in fixture_functor(), i in 0usize..64, j in 0usize..64) {
        // (H∘β)·(H∘α) = H∘(β·α) and (β·α)∘K = (β∘K)·(α∘K).
        let gs = functors_from(f.dom()).into_iter().filter(|g| fraccat::fincat::same_cat(g.cod(), f.cod())).collect::<Vec<_>>();
        let g = &gs[i % gs.len()];
        let alphas = all_nat_transfs(&f, g);
        let betas = all_nat_transfs(g, g);
        if let (Some(a), Some(b)) = (alphas.first(), betas.get(j % betas.len().max(1))) {
            let hs = functors_from(f.cod());
            let h = &hs[j % hs.len()];
            let ba = vcompose_nat(b, a).unwrap();
            let lhs = whisker(h, &ba, Side::Left).unwrap();
            let rhs = vcompose_nat(&whisker(h, b, Side::Left).unwrap(), &whisker(h, a, Side::Left).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let ks: Vec<Functor> = fixtures::all().iter().flat_map(|c| all_functors(c, f.dom())).collect();
            let k = &ks[i % ks.len()];
            let lhs = whisker(k, &ba, Side::Right).unwrap();
            let rhs = vcompose_nat(&whisker(k, b, Side::Right).unwrap(), &whisker(k, a, Side::Right).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inverses_compose_to_identities(f in fixture_functor()) {
        for t in all_nat_transfs(&f, &f) {
            match t.inverse() {
                Some(u) => {
                    prop_assert!(vcompose_nat(&u, &t).unwrap().is_identity());
                    prop_assert!(vcompose_nat(&t, &u).unwrap().is_identity());
                }
                None => prop_assert!(t.components().iter().any(|&m| common::inverse(f.cod(), m).is_none())),
            }
        }
    }
}
