//! An independent oracle for tests. It works from the raw morphism lists
//! and composition tables only.
//!
//! A fraction `(w, f): A -/-> B` is modelled by the functor `f∘s: A → B`,
//! where `s` is a quasi-inverse of `w` chosen by scanning. A 2-cell is
//! modelled by its family of components `Φ_a: f¹s¹(a) → f²s²(a)`. Two cell
//! diagrams define the same 2-cell exactly when their families agree.
#![allow(dead_code)]

pub mod golden;

use std::sync::Arc;

use fraccat::fincat::{FinCategory, Functor, MorId, NatTransf, ObjId};
use fraccat::fractions::{CellDiagram, Fraction};

/// All morphisms `x → y`, found by scanning the morphism list.
pub fn hom(c: &FinCategory, x: ObjId, y: ObjId) -> Vec<MorId> {
    c.morphisms().iter().enumerate().filter(|(_, m)| m.src == x && m.tgt == y).map(|(i, _)| i).collect()
}

/// A two-sided inverse of `m`, by scanning.
pub fn inverse(c: &FinCategory, m: MorId) -> Option<MorId> {
    let (x, y) = (c.morphisms()[m].src, c.morphisms()[m].tgt);
    hom(c, y, x).into_iter().find(|&n| c.compose(n, m) == c.id(x) && c.compose(m, n) == c.id(y))
}

pub fn isos(c: &FinCategory, x: ObjId, y: ObjId) -> Vec<MorId> {
    hom(c, x, y).into_iter().filter(|&m| inverse(c, m).is_some()).collect()
}

pub fn fully_faithful(f: &Functor) -> bool {
    let (d, c) = (f.dom(), f.cod());
    for x in 0..d.num_objects() {
        for y in 0..d.num_objects() {
            let mut image: Vec<MorId> = hom(d, x, y).into_iter().map(|m| f.mor(m)).collect();
            image.sort_unstable();
            let mut target = hom(c, f.obj(x), f.obj(y));
            target.sort_unstable();
            if image != target {
                return false;
            }
        }
    }
    true
}

pub fn essentially_surjective(f: &Functor) -> bool {
    let (d, c) = (f.dom(), f.cod());
    (0..c.num_objects()).all(|y| (0..d.num_objects()).any(|x| !isos(c, f.obj(x), y).is_empty()))
}

pub fn equivalence(f: &Functor) -> bool {
    fully_faithful(f) && essentially_surjective(f)
}

/// The iso-comma of `f` and `v`: objects `(a, b, φ)` with `φ: f(a) ≅ v(b)`
/// in lexicographic order, and the size of every hom-set.
pub struct CommaShape {
    pub objects: Vec<(ObjId, ObjId, MorId)>,
    pub hom_sizes: Vec<Vec<usize>>,
}

pub fn iso_comma_shape(f: &Functor, v: &Functor) -> CommaShape {
    let (a, b, c) = (f.dom(), v.dom(), f.cod());
    let mut objects = Vec::new();
    for x in 0..a.num_objects() {
        for y in 0..b.num_objects() {
            for phi in isos(c, f.obj(x), v.obj(y)) {
                objects.push((x, y, phi));
            }
        }
    }
    let hom_sizes = objects
        .iter()
        .map(|&(x, y, phi)| {
            objects
                .iter()
                .map(|&(x2, y2, phi2)| {
                    let mut n = 0;
                    for m in hom(a, x, x2) {
                        for k in hom(b, y, y2) {
                            if c.compose(phi2, f.mor(m)) == c.compose(v.mor(k), phi) {
                                n += 1;
                            }
                        }
                    }
                    n
                })
                .collect()
        })
        .collect();
    CommaShape { objects, hom_sizes }
}

/// A chosen quasi-inverse of `w`: for every object `a` of the codomain an
/// object `x` of the domain and an iso `ι: w(x) → a`, the identity when
/// `a` has a strict preimage.
pub struct Section {
    pub w: Functor,
    pub pick: Vec<(ObjId, MorId)>,
}

impl Section {
    pub fn new(w: &Functor) -> Self {
        let (d, c) = (w.dom(), w.cod());
        let pick = (0..c.num_objects())
            .map(|a| {
                let strict = (0..d.num_objects()).find(|&x| w.obj(x) == a).map(|x| (x, c.id(a)));
                strict
                    .or_else(|| (0..d.num_objects()).find_map(|x| isos(c, w.obj(x), a).first().map(|&i| (x, i))))
                    .expect("w is essentially surjective")
            })
            .collect();
        Section { w: w.clone(), pick }
    }

    /// The unique `u: x → y` with `w(u) = m`.
    pub fn lift(&self, x: ObjId, y: ObjId, m: MorId) -> MorId {
        let hits: Vec<MorId> = hom(self.w.dom(), x, y).into_iter().filter(|&u| self.w.mor(u) == m).collect();
        assert_eq!(hits.len(), 1, "w is fully faithful");
        hits[0]
    }

    /// The quasi-inverse on a morphism `m: a → a'`.
    pub fn on_mor(&self, m: MorId) -> MorId {
        let c = self.w.cod();
        let (a, a2) = (c.morphisms()[m].src, c.morphisms()[m].tgt);
        let (x, i) = self.pick[a];
        let (x2, i2) = self.pick[a2];
        let back = inverse(c, i2).unwrap();
        self.lift(x, x2, c.compose(back, c.compose(m, i)))
    }
}

/// The functor `f∘s` modelling a fraction, as object and morphism maps.
pub struct Model {
    pub obj: Vec<ObjId>,
    pub mor: Vec<MorId>,
}

pub fn model(fr: &Fraction) -> Model {
    let s = Section::new(fr.w());
    let src = fr.src();
    Model {
        obj: (0..src.num_objects()).map(|a| fr.f().obj(s.pick[a].0)).collect(),
        mor: (0..src.num_morphisms()).map(|m| fr.f().mor(s.on_mor(m))).collect(),
    }
}

/// The component family `Φ` of a cell diagram.
pub fn family(d: &CellDiagram) -> Vec<MorId> {
    let a_cat = d.src_fr.src().clone();
    let b_cat = d.src_fr.tgt().clone();
    let apex = d.v1.dom().clone();
    let (w1, f1, w2, f2) = (d.src_fr.w(), d.src_fr.f(), d.tgt_fr.w(), d.tgt_fr.f());
    let (s1, s2) = (Section::new(w1), Section::new(w2));
    (0..a_cat.num_objects())
        .map(|a| {
            let (q, theta) = (0..apex.num_objects())
                .find_map(|q| isos(&a_cat, w1.obj(d.v1.obj(q)), a).first().map(|&t| (q, t)))
                .expect("w1∘v1 is essentially surjective");
            let (x, iota) = s1.pick[a];
            let (y, kappa) = s2.pick[a];
            let u1 = s1.lift(d.v1.obj(q), x, a_cat.compose(inverse(&a_cat, iota).unwrap(), theta));
            let alpha_inv = inverse(&a_cat, d.alpha.component(q)).unwrap();
            let to_a = a_cat.compose(theta, alpha_inv);
            let u2 = s2.lift(d.v2.obj(q), y, a_cat.compose(inverse(&a_cat, kappa).unwrap(), to_a));
            let back = inverse(&b_cat, f1.mor(u1)).unwrap();
            b_cat.compose(f2.mor(u2), b_cat.compose(d.beta.component(q), back))
        })
        .collect()
}

/// Whether two cell diagrams with the same boundary define the same 2-cell.
pub fn same_class(d1: &CellDiagram, d2: &CellDiagram) -> bool {
    family(d1) == family(d2)
}

/// Whether the 2-cell of `d` is invertible.
pub fn invertible(d: &CellDiagram) -> bool {
    let b = d.src_fr.tgt();
    family(d).into_iter().all(|m| inverse(b, m).is_some())
}

/// The number of 2-cells `f1 ⇒ f2`: natural transformations between the
/// two model functors, counted by brute force.
pub fn count_cells(f1: &Fraction, f2: &Fraction) -> usize {
    let (a, b) = (f1.src(), f1.tgt());
    let (m1, m2) = (model(f1), model(f2));
    let choices: Vec<Vec<MorId>> = (0..a.num_objects()).map(|x| hom(b, m1.obj[x], m2.obj[x])).collect();
    let mut count = 0;
    let mut pick = vec![0usize; choices.len()];
    if choices.iter().any(Vec::is_empty) {
        return 0;
    }
    loop {
        let comps: Vec<MorId> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        let natural = a.morphisms().iter().enumerate().all(|(m, mm)| {
            b.compose(comps[mm.tgt], m1.mor[m]) == b.compose(m2.mor[m], comps[mm.src])
        });
        if natural {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == pick.len() {
                return count;
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// All natural transformations `F ⇒ G`, by brute force over components.
pub fn nat_transfs(f: &Functor, g: &Functor) -> Vec<NatTransf> {
    let (d, c) = (f.dom(), f.cod());
    let mut partial: Vec<Vec<MorId>> = vec![Vec::new()];
    for x in 0..d.num_objects() {
        let hs = hom(c, f.obj(x), g.obj(x));
        partial = partial.into_iter().flat_map(|p| hs.iter().map(move |&m| [p.clone(), vec![m]].concat())).collect();
    }
    partial
        .into_iter()
        .filter(|comps| {
            d.morphisms().iter().enumerate().all(|(m, mm)| {
                c.compose(comps[mm.tgt], f.mor(m)) == c.compose(g.mor(m), comps[mm.src])
            })
        })
        .map(|comps| NatTransf::new_unchecked(f.clone(), g.clone(), comps))
        .collect()
}

pub fn cat(name: &str) -> Arc<FinCategory> {
    fraccat::fincat::fixtures::all().into_iter().find(|c| c.name() == name).expect("fixture exists")
}
