//! Membership in `W` and canonical witnesses for the fraction axioms.
//!
//! `W` is the class of equivalences of finite categories. The fixed choice
//! of squares for BF3 is the iso-comma construction, and BF4 is witnessed by
//! descent along the fully faithful leg, so every witness here is a
//! deterministic function of its inputs.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{
    compose_functors, fcomp, same_cat, whisker, FinCategory, Functor, MorId, Morphism, NatTransf, ObjId, Side,
};

/// Fully faithful: every hom-set map is a bijection.
pub fn is_fully_faithful(f: &Functor) -> bool {
    let (d, c) = (f.dom(), f.cod());
    let mut seen = vec![usize::MAX; c.num_morphisms()];
    for x in d.objects() {
        for y in d.objects() {
            let src = d.hom(x, y);
            if src.len() != c.hom(f.obj(x), f.obj(y)).len() {
                return false;
            }
            let stamp = x * d.num_objects() + y;
            for &m in src {
                let fm = f.mor(m);
                if seen[fm] == stamp {
                    return false;
                }
                seen[fm] = stamp;
            }
        }
    }
    true
}

/// Essentially surjective: every codomain object is isomorphic to an image.
pub fn is_essentially_surjective(f: &Functor) -> bool {
    let c = f.cod();
    let mut hit = vec![false; c.num_objects()];
    for &y in f.obj_map() {
        hit[c.iso_class(y)] = true;
    }
    c.objects().all(|y| hit[c.iso_class(y)])
}

/// Membership in `W`: fully faithful and essentially surjective.
pub fn in_w(f: &Functor) -> bool {
    f.is_identity() || (is_essentially_surjective(f) && is_fully_faithful(f))
}

fn require_w(f: &Functor, what: &str) -> Result<()> {
    if in_w(f) {
        Ok(())
    } else {
        Err(Error::NotInW(format!(
            "{what}: {} -> {} is not an equivalence",
            f.dom().name(),
            f.cod().name()
        )))
    }
}

/// A square `filler: f∘proj_w ⇒ v∘proj_f` with invertible filler.
#[derive(Clone, Debug)]
pub struct IsoCommaSquare {
    pub apex: Arc<FinCategory>,
    pub proj_w: Functor,
    pub proj_f: Functor,
    pub filler: NatTransf,
}

impl IsoCommaSquare {
    /// Checks that this is a square over `(f, v)` with invertible filler.
    pub fn validate(&self, f: &Functor, v: &Functor) -> Result<()> {
        if *self.filler.src_f() != compose_functors(f, &self.proj_w)?
            || *self.filler.tgt_f() != compose_functors(v, &self.proj_f)?
        {
            return Err(Error::BoundaryMismatch("square filler has the wrong boundary".into()));
        }
        self.filler.validate()?;
        if !self.filler.is_invertible() {
            return Err(Error::HypothesisFailed("square filler is not invertible".into()));
        }
        Ok(())
    }
}

/// The canonical iso-comma square of `f: A' → B` and `v: B' → B`.
///
/// Objects are triples `(a, b', φ)` with `φ: f(a) → v(b')` invertible, and
/// morphisms are pairs `(m, n)` with `v(n)∘φ = φ₁∘f(m)`. When `v` is an
/// identity the square is `(A', id, f, id)`; when `f` is an identity it is
/// `(B', v, id, id)`.
pub fn iso_comma(f: &Functor, v: &Functor) -> Result<IsoCommaSquare> {
    if !same_cat(f.cod(), v.cod()) {
        return Err(Error::BoundaryMismatch("iso_comma: legs have different codomains".into()));
    }
    require_w(v, "iso_comma")?;
    Ok(iso_comma_raw(f, v))
}

/// [`iso_comma`] without the membership check on `v`.
pub(crate) fn iso_comma_raw(f: &Functor, v: &Functor) -> IsoCommaSquare {
    if v.is_identity() {
        return IsoCommaSquare {
            apex: f.dom().clone(),
            proj_w: Functor::identity(f.dom()),
            proj_f: f.clone(),
            filler: NatTransf::identity(f),
        };
    }
    if f.is_identity() {
        return IsoCommaSquare {
            apex: v.dom().clone(),
            proj_w: v.clone(),
            proj_f: Functor::identity(v.dom()),
            filler: NatTransf::identity(v),
        };
    }
    let (a, b, bb) = (f.dom(), v.dom(), f.cod());

    let mut objects: Vec<(ObjId, ObjId, MorId)> = Vec::new();
    let mut buckets: HashMap<(ObjId, ObjId), Vec<usize>> = HashMap::new();
    for x in a.objects() {
        for y in b.objects() {
            for phi in bb.isos(f.obj(x), v.obj(y)) {
                buckets.entry((x, y)).or_default().push(objects.len());
                objects.push((x, y, phi));
            }
        }
    }
    let obj_names: Vec<String> = objects
        .iter()
        .map(|&(x, y, phi)| format!("({},{},{})", a.obj_name(x), b.obj_name(y), bb.mor_name(phi)))
        .collect();

    let mut morphisms: Vec<Morphism> = Vec::new();
    let mut pairs: Vec<(MorId, MorId)> = Vec::new();
    let mut index: HashMap<(usize, MorId, MorId), Vec<MorId>> = HashMap::new();
    let mut identity = vec![0; objects.len()];
    let mut used_names: HashMap<String, ()> = HashMap::new();
    for (i, &(x, y, phi)) in objects.iter().enumerate() {
        for &m in a.outgoing(x) {
            for &n in b.outgoing(y) {
                let lhs = bb.compose(v.mor(n), phi);
                let Some(targets) = buckets.get(&(a.tgt(m), b.tgt(n))) else { continue };
                for &j in targets {
                    let phi1 = objects[j].2;
                    if bb.compose(phi1, f.mor(m)) != lhs {
                        continue;
                    }
                    let k = morphisms.len();
                    let base = format!("({},{})", a.mor_name(m), b.mor_name(n));
                    let name = [
                        base.clone(),
                        format!("{base}@{}", obj_names[i]),
                        format!("{base}@{}->{}", obj_names[i], obj_names[j]),
                    ]
                    .into_iter()
                    .find(|s| !used_names.contains_key(s))
                    .expect("source, target and pair determine a morphism");
                    used_names.insert(name.clone(), ());
                    if m == a.id(x) && n == b.id(y) && i == j {
                        identity[i] = k;
                    }
                    index.entry((i, m, n)).or_default().push(k);
                    morphisms.push(Morphism { name, src: i, tgt: j });
                    pairs.push((m, n));
                }
            }
        }
    }

    let name = format!("({} / {})", a.name(), b.name());
    let apex = FinCategory::from_parts(name, obj_names, morphisms.clone(), identity, |g, h| {
        let (m1, n1) = pairs[h];
        let (m2, n2) = pairs[g];
        let src = morphisms[h].src;
        let tgt = morphisms[g].tgt;
        index
            .get(&(src, a.compose(m2, m1), b.compose(n2, n1)))?
            .iter()
            .copied()
            .find(|&k| morphisms[k].tgt == tgt)
    })
    .expect("iso-comma composition is closed");
    let apex = Arc::new(apex);

    let proj_w = Functor::new_unchecked(
        apex.clone(),
        a.clone(),
        objects.iter().map(|o| o.0).collect(),
        pairs.iter().map(|p| p.0).collect(),
    );
    let proj_f = Functor::new_unchecked(
        apex.clone(),
        b.clone(),
        objects.iter().map(|o| o.1).collect(),
        pairs.iter().map(|p| p.1).collect(),
    );
    let filler = NatTransf::new_unchecked(
        compose_functors(f, &proj_w).expect("typed"),
        compose_functors(v, &proj_f).expect("typed"),
        objects.iter().map(|o| o.2).collect(),
    );
    IsoCommaSquare { apex, proj_w, proj_f, filler }
}

/// The full subcategory on the least object of each isomorphism class,
/// with its inclusion. The inclusion is the identity when `cat` is already
/// skeletal.
pub fn skeleton(cat: &Arc<FinCategory>) -> Functor {
    let reps: Vec<ObjId> = cat.objects().filter(|&x| cat.iso_class(x) == x).collect();
    if reps.len() == cat.num_objects() {
        return Functor::identity(cat);
    }
    let mut new_id = vec![usize::MAX; cat.num_objects()];
    for (i, &x) in reps.iter().enumerate() {
        new_id[x] = i;
    }
    let mut mor_map = Vec::new();
    let mut back = vec![usize::MAX; cat.num_morphisms()];
    let mut morphisms = Vec::new();
    for &x in &reps {
        for &y in &reps {
            for &m in cat.hom(x, y) {
                back[m] = morphisms.len();
                mor_map.push(m);
                morphisms.push(Morphism { name: cat.mor_name(m).to_string(), src: new_id[x], tgt: new_id[y] });
            }
        }
    }
    let identity = reps.iter().map(|&x| back[cat.id(x)]).collect();
    let objects = reps.iter().map(|&x| cat.obj_name(x).to_string()).collect();
    let sub = FinCategory::from_parts(format!("sk {}", cat.name()), objects, morphisms, identity, |g, f| {
        Some(back[cat.compose(mor_map[g], mor_map[f])])
    })
    .expect("full subcategories are closed under composition");
    Functor::new_unchecked(Arc::new(sub), cat.clone(), reps, mor_map)
}

/// A square over `(f, v)` with skeletal apex: the iso-comma of `f` and `v`
/// restricted to skeleta of their domains, then to a skeleton of the result.
/// Its apex is equivalent to that of [`iso_comma`] but usually much smaller.
/// An identity leg gives the same square as [`iso_comma`].
pub fn skeletal_square(f: &Functor, v: &Functor) -> Result<IsoCommaSquare> {
    if !same_cat(f.cod(), v.cod()) {
        return Err(Error::BoundaryMismatch("skeletal_square: legs have different codomains".into()));
    }
    require_w(v, "skeletal_square")?;
    Ok(skeletal_square_raw(f, v))
}

pub(crate) fn skeletal_square_raw(f: &Functor, v: &Functor) -> IsoCommaSquare {
    if f.is_identity() || v.is_identity() {
        return iso_comma_raw(f, v);
    }
    let (i, j) = (skeleton(f.dom()), skeleton(v.dom()));
    let fi = compose_functors(f, &i).expect("typed");
    let vj = compose_functors(v, &j).expect("typed");
    let sq = iso_comma_raw(&fi, &vj);
    let k = skeleton(&sq.apex);
    IsoCommaSquare {
        apex: k.dom().clone(),
        proj_w: fcomp(&[&i, &sq.proj_w, &k]).expect("typed"),
        proj_f: fcomp(&[&j, &sq.proj_f, &k]).expect("typed"),
        filler: sq.filler.pre(&k).expect("typed"),
    }
}

/// A BF4 witness: `v: apex → C` in `W` and `beta: f¹∘v ⇒ f²∘v`.
#[derive(Clone, Debug)]
pub struct BF4Witness {
    pub apex: Arc<FinCategory>,
    pub v: Functor,
    pub beta: NatTransf,
}

/// The unique `β: f1 ⇒ f2` with `w∘β = α`, for `w` fully faithful.
pub fn descend(w: &Functor, f1: &Functor, f2: &Functor, alpha: &NatTransf) -> Result<NatTransf> {
    if *alpha.src_f() != compose_functors(w, f1)? || *alpha.tgt_f() != compose_functors(w, f2)? {
        return Err(Error::BoundaryMismatch("descend: α is not of type w∘f1 ⇒ w∘f2".into()));
    }
    let b = w.dom();
    let components = f1
        .dom()
        .objects()
        .map(|c| {
            let target = alpha.component(c);
            b.hom(f1.obj(c), f2.obj(c))
                .iter()
                .copied()
                .find(|&m| w.mor(m) == target)
                .ok_or_else(|| Error::HypothesisFailed("descend: w is not full".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NatTransf::new_unchecked(f1.clone(), f2.clone(), components))
}

/// BF4 for `w ∈ W`: returns `v = id` and the unique lift of `α` through `w`.
pub fn bf4_witness(w: &Functor, f1: &Functor, f2: &Functor, alpha: &NatTransf) -> Result<BF4Witness> {
    require_w(w, "bf4_witness")?;
    let beta = descend(w, f1, f2, alpha)?;
    Ok(BF4Witness { apex: f1.dom().clone(), v: Functor::identity(f1.dom()), beta })
}

/// Given `w∘γ = w∘γ'` with `w ∈ W`, returns `u ∈ W` with `γ∘u = γ'∘u`.
/// Since `w` is faithful this forces `γ = γ'`, and `u` is the identity.
pub fn lemma_cancel(w: &Functor, gamma: &NatTransf, gamma_p: &NatTransf) -> Result<Functor> {
    require_w(w, "lemma_cancel")?;
    if whisker(w, gamma, Side::Left)? != whisker(w, gamma_p, Side::Left)? {
        return Err(Error::HypothesisFailed("lemma_cancel: whiskered 2-cells differ".into()));
    }
    if gamma != gamma_p {
        return Err(Error::HypothesisFailed("lemma_cancel: w is not faithful".into()));
    }
    Ok(Functor::identity(gamma.dom()))
}

/// A square over `(f, w)` with a `W`-leg, for `w: A → B`, `f: C → B`, given
/// only that `z` and `z∘w` are in `W`: iso-comma of `(z∘f, z∘w)`, then BF4
/// along `z`.
pub fn lemma_bf3_relaxed(w: &Functor, z: &Functor, f: &Functor) -> Result<IsoCommaSquare> {
    bf3_relaxed_with(w, z, f, iso_comma_raw)
}

/// [`lemma_bf3_relaxed`] starting from [`skeletal_square`].
pub fn lemma_bf3_skeletal(w: &Functor, z: &Functor, f: &Functor) -> Result<IsoCommaSquare> {
    bf3_relaxed_with(w, z, f, skeletal_square_raw)
}

fn bf3_relaxed_with(
    w: &Functor,
    z: &Functor,
    f: &Functor,
    square: fn(&Functor, &Functor) -> IsoCommaSquare,
) -> Result<IsoCommaSquare> {
    require_w(z, "lemma_bf3_relaxed")?;
    let zw = compose_functors(z, w)?;
    require_w(&zw, "lemma_bf3_relaxed")?;
    let zf = compose_functors(z, f)?;
    let sq = square(&zf, &zw);
    let ft = compose_functors(f, &sq.proj_w)?;
    let wg = compose_functors(w, &sq.proj_f)?;
    let bf4 = bf4_witness(z, &ft, &wg, &sq.filler)?;
    let proj_w = compose_functors(&sq.proj_w, &bf4.v)?;
    let proj_f = compose_functors(&sq.proj_f, &bf4.v)?;
    Ok(IsoCommaSquare { apex: bf4.apex, proj_w, proj_f, filler: bf4.beta })
}

/// BF4 for `w: B → A` under the weaker hypothesis that `z` and `z∘w` are in
/// `W`: descend `z∘α` along `z∘w`, then cancel `z`.
pub fn lemma_bf4_relaxed(
    w: &Functor,
    z: &Functor,
    f1: &Functor,
    f2: &Functor,
    alpha: &NatTransf,
) -> Result<BF4Witness> {
    require_w(z, "lemma_bf4_relaxed")?;
    let zw = compose_functors(z, w)?;
    require_w(&zw, "lemma_bf4_relaxed")?;
    let z_alpha = whisker(z, alpha, Side::Left)?;
    let first = bf4_witness(&zw, f1, f2, &z_alpha)?;
    let lhs = alpha.pre(&first.v)?;
    let rhs = first.beta.post(w)?;
    let u = lemma_cancel(z, &lhs, &rhs)?;
    Ok(BF4Witness {
        apex: u.dom().clone(),
        v: compose_functors(&first.v, &u)?,
        beta: first.beta.pre(&u)?,
    })
}

/// For `w: C → B` and `z: B → A` with `z`, `z∘w` in `W`, returns `v: D → C`
/// with `w∘v ∈ W`.
pub fn lemma_w_section(w: &Functor, z: &Functor) -> Result<Functor> {
    require_w(z, "lemma_w_section")?;
    let zw = compose_functors(z, w)?;
    require_w(&zw, "lemma_w_section")?;
    if in_w(w) {
        return Ok(Functor::identity(w.dom()));
    }
    let sq = iso_comma_raw(z, &zw);
    let wq = compose_functors(w, &sq.proj_f)?;
    let bf4 = bf4_witness(z, &sq.proj_w, &wq, &sq.filler)?;
    let v = compose_functors(&sq.proj_f, &bf4.v)?;
    require_w(&compose_functors(w, &v)?, "lemma_w_section")?;
    Ok(v)
}

/// A square over `(f, w)` for `w ∈ W` whose apex is `dom f` itself: the
/// `W`-leg is the identity and `f` is lifted through `w` along the first
/// available isomorphism at each object.
pub fn lift_along(w: &Functor, f: &Functor) -> Result<IsoCommaSquare> {
    require_w(w, "lift_along")?;
    let (b, a, c) = (w.dom(), w.cod(), f.dom());
    let mut obj_map = Vec::with_capacity(c.num_objects());
    let mut isos = Vec::with_capacity(c.num_objects());
    for x in c.objects() {
        let (y, phi) = b
            .objects()
            .find_map(|y| a.isos(f.obj(x), w.obj(y)).next().map(|phi| (y, phi)))
            .ok_or_else(|| Error::NotInW("lift_along: w is not essentially surjective".into()))?;
        obj_map.push(y);
        isos.push(phi);
    }
    let mor_map = c
        .morphisms()
        .iter()
        .enumerate()
        .map(|(m, mm)| {
            let back = a.inverse(isos[mm.src]).expect("chosen map is an isomorphism");
            let target = a.compose(isos[mm.tgt], a.compose(f.mor(m), back));
            b.hom(obj_map[mm.src], obj_map[mm.tgt])
                .iter()
                .copied()
                .find(|&n| w.mor(n) == target)
                .ok_or_else(|| Error::NotInW("lift_along: w is not full".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let lifted = Functor::new_unchecked(c.clone(), b.clone(), obj_map, mor_map);
    let filler = NatTransf::new_unchecked(f.clone(), compose_functors(w, &lifted)?, isos);
    Ok(IsoCommaSquare { apex: c.clone(), proj_w: Functor::identity(c), proj_f: lifted, filler })
}

/// For `t: A' → A` in `W` and `φ: f1∘t ⇒ f2∘t`, the unique `ρ: f1 ⇒ f2`
/// with `ρ∘t = φ`. Components are transported along the first isomorphism
/// from an image object.
pub fn descend_along(t: &Functor, f1: &Functor, f2: &Functor, phi: &NatTransf) -> Result<NatTransf> {
    require_w(t, "descend_along")?;
    if *phi.src_f() != compose_functors(f1, t)? || *phi.tgt_f() != compose_functors(f2, t)? {
        return Err(Error::BoundaryMismatch("descend_along: φ is not of type f1∘t ⇒ f2∘t".into()));
    }
    let (a, aa, b) = (t.cod(), t.dom(), f1.cod());
    let components = a
        .objects()
        .map(|x| {
            let (xp, theta) = aa
                .objects()
                .find_map(|xp| a.isos(t.obj(xp), x).next().map(|th| (xp, th)))
                .ok_or_else(|| Error::NotInW("descend_along: t is not essentially surjective".into()))?;
            let back = b.inverse(f1.mor(theta)).expect("functors preserve isomorphisms");
            Ok(b.compose(f2.mor(theta), b.compose(phi.component(xp), back)))
        })
        .collect::<Result<Vec<_>>>()?;
    let rho = NatTransf::new_unchecked(f1.clone(), f2.clone(), components);
    if rho.pre(t)? != *phi {
        return Err(Error::HypothesisFailed("descend_along: φ is not natural".into()));
    }
    Ok(rho)
}
