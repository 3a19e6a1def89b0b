mod common;

use fraccat::bf_oracle::{
    bf4_witness, in_w, is_essentially_surjective, is_fully_faithful, iso_comma, lemma_bf3_relaxed, lemma_bf3_skeletal,
    lemma_bf4_relaxed, lemma_cancel, lemma_w_section, lift_along, skeleton,
};
use fraccat::fincat::fixtures::{self, point, to_point};
use fraccat::fincat::{
    all_functors, all_nat_transfs, compose_functors, duplicate_objects, whisker, Functor, NatTransf, Side,
};
use fraccat::fractions::bf6_check;
use fraccat::Error;

use common::cat;

fn w_members() -> Vec<Functor> {
    let mut out = Vec::new();
    for a in fixtures::all() {
        for b in fixtures::all() {
            out.extend(all_functors(&a, &b).into_iter().filter(in_w));
        }
        out.push(duplicate_objects(&a, &vec![2; a.num_objects()]));
    }
    out
}

#[test]
fn in_w_examples() {
    for c in fixtures::all() {
        assert!(in_w(&Functor::identity(&c)));
    }
    let i2 = to_point(&cat("I2"));
    assert!(is_fully_faithful(&i2) && is_essentially_surjective(&i2) && in_w(&i2));
    let d2 = to_point(&cat("D2"));
    assert!(!is_fully_faithful(&d2));
    assert!(is_essentially_surjective(&d2));
    assert!(!in_w(&d2));
    let z = point(&cat("Z2"), "o");
    assert!(!in_w(&z));
    let a = point(&cat("ARR"), "0");
    assert!(is_fully_faithful(&a) && !is_essentially_surjective(&a));
}

#[test]
fn iso_comma_identity_conventions() {
    let i2 = cat("I2");
    let f = to_point(&i2);
    let id_pt = Functor::identity(&fixtures::pt());
    let sq = iso_comma(&f, &id_pt).unwrap();
    assert!(fraccat::fincat::same_cat(&sq.apex, &i2));
    assert!(sq.proj_w.is_identity());
    assert_eq!(sq.proj_f, f);
    assert!(sq.filler.is_identity());

    let w = to_point(&i2);
    let sq = iso_comma(&Functor::identity(&fixtures::pt()), &w).unwrap();
    assert_eq!(sq.proj_w, w);
    assert!(sq.proj_f.is_identity());

    let sq = iso_comma(&id_pt, &id_pt).unwrap();
    assert_eq!(sq.apex.num_objects(), 1);
    assert!(sq.proj_w.is_identity() && sq.proj_f.is_identity());
}

#[test]
fn iso_comma_errors() {
    let d2 = to_point(&cat("D2"));
    let f = to_point(&cat("I2"));
    assert!(matches!(iso_comma(&f, &d2), Err(Error::NotInW(_))));
    let g = point(&cat("Z2"), "o");
    assert!(matches!(iso_comma(&g, &f), Err(Error::BoundaryMismatch(_))));
}

#[test]
fn iso_comma_soundness_on_all_fixture_pairs() {
    let ws = w_members();
    let mut n = 0;
    for a in fixtures::all() {
        for b in fixtures::all() {
            for f in all_functors(&a, &b) {
                for v in ws.iter().filter(|v| fraccat::fincat::same_cat(v.cod(), &b)) {
                    let sq = iso_comma(&f, v).unwrap();
                    sq.validate(&f, v).unwrap();
                    assert!(sq.filler.is_invertible());
                    assert!(in_w(&sq.proj_w));
                    n += 1;
                }
            }
        }
    }
    assert!(n > 100);
}

#[test]
fn objects_of_the_iso_comma_are_ordered_lexicographically() {
    let i2 = cat("I2");
    let f = duplicate_objects(&i2, &[2, 1]);
    let v = duplicate_objects(&i2, &[1, 2]);
    let sq = iso_comma(&f, &v).unwrap();
    let keys: Vec<(usize, usize, usize)> =
        (0..sq.apex.num_objects()).map(|x| (sq.proj_w.obj(x), sq.proj_f.obj(x), sq.filler.component(x))).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(keys, common::iso_comma_shape(&f, &v).objects);
}

#[test]
fn bf4_witness_examples() {
    let i2 = cat("I2");
    // w = id: β = α.
    let (a, b) = (point(&i2, "a"), point(&i2, "b"));
    let ab = all_nat_transfs(&a, &b).pop().unwrap();
    let wit = bf4_witness(&Functor::identity(&i2), &a, &b, &ab).unwrap();
    assert!(wit.v.is_identity());
    assert_eq!(wit.beta, ab);

    // α = identity: β = identity.
    let c = to_point(&i2);
    let ca = compose_functors(&c, &a).unwrap();
    let wit = bf4_witness(&c, &a, &a, &NatTransf::identity(&ca)).unwrap();
    assert!(wit.beta.is_identity());

    // w: I2 → PT, α the unique transformation between the composites into
    // PT: β is the unique arrow a → b of I2.
    let alpha = all_nat_transfs(&ca, &compose_functors(&c, &b).unwrap()).pop().unwrap();
    let wit = bf4_witness(&c, &a, &b, &alpha).unwrap();
    assert_eq!(wit.beta.components(), &[i2.mor_by_name("ab").unwrap()]);
    assert_eq!(whisker(&c, &wit.beta, Side::Left).unwrap(), alpha);
}

#[test]
fn bf4_witness_soundness_exhaustive() {
    let ws = w_members();
    let mut n = 0;
    for w in ws.iter().filter(|w| w.dom().num_objects() <= 3) {
        for x in fixtures::all() {
            let fs = all_functors(&x, w.dom());
            for f1 in &fs {
                for f2 in &fs {
                    let (wf1, wf2) = (compose_functors(w, f1).unwrap(), compose_functors(w, f2).unwrap());
                    for alpha in all_nat_transfs(&wf1, &wf2) {
                        let wit = bf4_witness(w, f1, f2, &alpha).unwrap();
                        assert!(in_w(&wit.v));
                        assert_eq!(whisker(w, &wit.beta, Side::Left).unwrap(), alpha.pre(&wit.v).unwrap());
                        assert_eq!(wit.beta.is_invertible(), alpha.is_invertible());
                        n += 1;
                    }
                }
            }
        }
    }
    assert!(n > 200);
}

#[test]
fn bf4_witness_rejects_non_members() {
    let d2 = to_point(&cat("D2"));
    let a = point(&cat("D2"), "a");
    let t = NatTransf::identity(&compose_functors(&d2, &a).unwrap());
    assert!(matches!(bf4_witness(&d2, &a, &a, &t), Err(Error::NotInW(_))));
}

#[test]
fn lemma_cancel_examples() {
    let i2 = cat("I2");
    let c = to_point(&i2);
    let (a, b) = (point(&i2, "a"), point(&i2, "b"));
    let g = all_nat_transfs(&a, &b).pop().unwrap();
    assert!(lemma_cancel(&c, &g, &g).unwrap().is_identity());

    // Distinct whiskerings: the hypothesis fails.
    let z2 = cat("Z2");
    let id = Functor::identity(&z2);
    let ts = all_nat_transfs(&id, &id);
    assert_eq!(ts.len(), 2);
    assert!(matches!(lemma_cancel(&id, &ts[0], &ts[1]), Err(Error::HypothesisFailed(_))));
}

#[test]
fn whiskering_by_a_member_of_w_is_injective() {
    // For z ∈ W, γ∘z = γ'∘z forces γ = γ'.
    let ws = w_members();
    for z in ws.iter().filter(|z| z.cod().num_objects() <= 2) {
        for b in fixtures::all() {
            let fs = all_functors(z.cod(), &b);
            for f in &fs {
                for g in &fs {
                    let ts = all_nat_transfs(f, g);
                    for (i, t) in ts.iter().enumerate() {
                        for u in &ts[i + 1..] {
                            assert_ne!(t.pre(z).unwrap(), u.pre(z).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn bf5_closure_under_invertible_two_cells() {
    let ws = w_members();
    for w in &ws {
        for v in all_functors(w.dom(), w.cod()) {
            if all_nat_transfs(&v, w).iter().any(NatTransf::is_invertible) {
                assert!(in_w(&v));
            }
        }
    }
}

#[test]
fn lemma_bf3_relaxed_examples() {
    let i2 = cat("I2");
    let c = to_point(&i2);
    let f = to_point(&cat("Z2"));
    let id = Functor::identity(&fixtures::pt());
    // z = id reduces to the iso-comma.
    let sq = lemma_bf3_relaxed(&c, &id, &f).unwrap();
    let ic = iso_comma(&f, &c).unwrap();
    assert_eq!(sq.proj_w, ic.proj_w);
    assert_eq!(sq.proj_f, ic.proj_f);
    assert_eq!(sq.filler, ic.filler);

    // w: PT → I2 is not in W, but c∘w is.
    let w = point(&i2, "a");
    let g = Functor::identity(&i2);
    for sq in [lemma_bf3_relaxed(&w, &c, &g).unwrap(), lemma_bf3_skeletal(&w, &c, &g).unwrap()] {
        sq.validate(&g, &w).unwrap();
        assert!(in_w(&sq.proj_w));
    }
    assert!(lemma_bf3_relaxed(&w, &to_point(&cat("D2")), &g).is_err());
}

#[test]
fn lemma_bf4_relaxed_examples() {
    let i2 = cat("I2");
    let c = to_point(&i2);
    let (a, b) = (point(&i2, "a"), point(&i2, "b"));
    let id_pt = Functor::identity(&fixtures::pt());
    let alpha = all_nat_transfs(&compose_functors(&c, &a).unwrap(), &compose_functors(&c, &b).unwrap())
        .pop()
        .unwrap();
    let plain = bf4_witness(&c, &a, &b, &alpha).unwrap();
    let relaxed = lemma_bf4_relaxed(&c, &id_pt, &a, &b, &alpha).unwrap();
    assert_eq!(plain.beta.pre(&relaxed.v).unwrap(), relaxed.beta);

    // w = a: PT → I2 is not in W, c∘a is; α: a ⇒ a identity gives β identity.
    let p = Functor::identity(&fixtures::pt());
    let one = NatTransf::identity(&a);
    let wit = lemma_bf4_relaxed(&a, &c, &p, &p, &one).unwrap();
    assert!(wit.beta.is_identity());
    assert!(in_w(&wit.v));
}

#[test]
fn lemma_w_section_examples() {
    let i2 = cat("I2");
    let c = to_point(&i2);
    let id = Functor::identity(&i2);
    assert!(lemma_w_section(&c, &Functor::identity(&fixtures::pt())).unwrap().is_identity());
    assert!(lemma_w_section(&id, &id).unwrap().is_identity());
    let a = point(&i2, "a");
    let v = lemma_w_section(&a, &c).unwrap();
    assert!(in_w(&compose_functors(&a, &v).unwrap()));
    // Here a itself is in W, so the identity works.
    assert!(v.is_identity());
}

#[test]
fn lemma_w_section_on_a_non_member() {
    // D2 → I2 (a ↦ a, b ↦ b) is not full; composed with I2 → PT it is not
    // in W either, so the lemma's hypothesis fails.
    let d2 = cat("D2");
    let i2 = cat("I2");
    let incl = all_functors(&d2, &i2).into_iter().find(|f| f.obj(0) != f.obj(1)).unwrap();
    assert!(!in_w(&incl));
    assert!(matches!(lemma_w_section(&incl, &to_point(&i2)), Err(Error::NotInW(_))));
}

#[test]
fn skeleton_is_an_equivalence_onto_representatives() {
    for c in fixtures::all() {
        let k = skeleton(&c);
        assert!(common::equivalence(&k));
        let dup = duplicate_objects(&c, &vec![3; c.num_objects()]);
        let k = skeleton(dup.dom());
        assert_eq!(k.dom().num_objects(), skeleton(&c).dom().num_objects());
        assert!(common::equivalence(&k));
    }
    assert!(skeleton(&cat("Z2")).is_identity());
    assert_eq!(skeleton(&cat("I2")).dom().num_objects(), 1);
}

#[test]
fn lift_along_gives_a_square_with_w_leg() {
    let ws = w_members();
    for w in ws.iter().filter(|w| w.dom().num_objects() <= 4) {
        for a in fixtures::all() {
            for f in all_functors(&a, w.cod()) {
                let sq = lift_along(w, &f).unwrap();
                sq.validate(&f, w).unwrap();
                assert!(in_w(&sq.proj_w));
            }
        }
    }
}

#[test]
fn bf6_examples() {
    let i2 = cat("I2");
    let z2 = cat("Z2");
    let id = Functor::identity(&z2);
    // t = id: ρ = φ.
    for phi in all_nat_transfs(&id, &id) {
        let (z, rho) = bf6_check(&id, &id, &id, &phi).unwrap();
        assert!(z.is_identity());
        assert_eq!(rho, phi);
    }
    // t: I2 → PT, φ: f1∘t ⇒ f2∘t; ρ's component is φ's component at either object.
    let t = to_point(&i2);
    let f = point(&z2, "o");
    let ft = compose_functors(&f, &t).unwrap();
    for phi in all_nat_transfs(&ft, &ft) {
        let (_, rho) = bf6_check(&f, &f, &t, &phi).unwrap();
        assert_eq!(rho.components(), &[phi.component(0)]);
        assert_eq!(rho.components(), &[phi.component(1)]);
        assert_eq!(rho.pre(&t).unwrap(), phi);
    }
    // φ identity: ρ identity.
    let (_, rho) = bf6_check(&f, &f, &t, &NatTransf::identity(&ft)).unwrap();
    assert!(rho.is_identity());
    assert!(matches!(bf6_check(&f, &f, &to_point(&cat("D2")), &NatTransf::identity(&compose_functors(&f, &to_point(&cat("D2"))).unwrap())), Err(Error::NotInW(_))));
}
