//! Finite categories, functors and natural transformations.
//!
//! This is the strict base 2-category. Objects and morphisms are dense
//! integer ids in declaration order. Composition is stored as a flat table
//! indexed by `(f, position of g among the morphisms out of tgt(f))`, so only
//! composable pairs take up space.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

#[derive(Clone, Debug)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<MorId>,
    homs: Vec<Vec<MorId>>,
    outgoing: Vec<Vec<MorId>>,
    out_pos: Vec<usize>,
    comp_start: Vec<usize>,
    comp_data: Vec<MorId>,
    inverse: Vec<Option<MorId>>,
    iso_class: Vec<ObjId>,
    obj_index: HashMap<String, ObjId>,
    mor_index: HashMap<String, MorId>,
    fingerprint: u64,
}

impl PartialEq for FinCategory {
    /// Structural equality. The display name of the category is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.comp_data == other.comp_data
    }
}

impl Eq for FinCategory {}

/// Pointer equality first, structural equality otherwise.
pub fn same_cat(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FinCategory {
    /// Assembles a category from its parts. `compose(g, f)` must return the
    /// composite `g∘f` for every composable pair. Unit and associativity laws
    /// are not checked here; see [`FinCategory::validate`].
    pub fn from_parts(
        name: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<MorId>,
        mut compose: impl FnMut(MorId, MorId) -> Option<MorId>,
    ) -> Result<Self> {
        let name = name.into();
        let n = objects.len();
        if identity.len() != n {
            return Err(Error::InvalidCategory(format!(
                "{name}: {} identities for {n} objects",
                identity.len()
            )));
        }
        let mut obj_index = HashMap::with_capacity(n);
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(Error::InvalidCategory(format!("{name}: duplicate object `{o}`")));
            }
        }
        let mut mor_index = HashMap::with_capacity(morphisms.len());
        for (i, m) in morphisms.iter().enumerate() {
            if m.src >= n || m.tgt >= n {
                return Err(Error::InvalidCategory(format!(
                    "{name}: morphism `{}` has an undeclared endpoint",
                    m.name
                )));
            }
            if mor_index.insert(m.name.clone(), i).is_some() {
                return Err(Error::InvalidCategory(format!(
                    "{name}: duplicate morphism `{}`",
                    m.name
                )));
            }
        }
        for (x, &i) in identity.iter().enumerate() {
            match morphisms.get(i) {
                Some(m) if m.src == x && m.tgt == x => {}
                _ => {
                    return Err(Error::InvalidCategory(format!(
                        "{name}: bad identity for object `{}`",
                        objects[x]
                    )))
                }
            }
        }

        let mut homs = vec![Vec::new(); n * n];
        let mut outgoing = vec![Vec::new(); n];
        let mut out_pos = vec![0; morphisms.len()];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.src * n + m.tgt].push(i);
            out_pos[i] = outgoing[m.src].len();
            outgoing[m.src].push(i);
        }

        let mut comp_start = Vec::with_capacity(morphisms.len() + 1);
        let mut comp_data = Vec::new();
        for (f, mf) in morphisms.iter().enumerate() {
            comp_start.push(comp_data.len());
            for &g in &outgoing[mf.tgt] {
                let h = compose(g, f).ok_or_else(|| {
                    Error::InvalidCategory(format!(
                        "{name}: composite {}.{} undefined",
                        morphisms[g].name, mf.name
                    ))
                })?;
                let ok = morphisms
                    .get(h)
                    .is_some_and(|mh| mh.src == mf.src && mh.tgt == morphisms[g].tgt);
                if !ok {
                    return Err(Error::InvalidCategory(format!(
                        "{name}: composite {}.{} has the wrong type",
                        morphisms[g].name, mf.name
                    )));
                }
                comp_data.push(h);
            }
        }
        comp_start.push(comp_data.len());

        let mut hasher = DefaultHasher::new();
        objects.hash(&mut hasher);
        morphisms.hash(&mut hasher);
        comp_data.hash(&mut hasher);
        let fingerprint = hasher.finish();

        let mut cat = FinCategory {
            name,
            objects,
            morphisms,
            identity,
            homs,
            outgoing,
            out_pos,
            comp_start,
            comp_data,
            inverse: Vec::new(),
            iso_class: Vec::new(),
            obj_index,
            mor_index,
            fingerprint,
        };
        cat.inverse = (0..cat.morphisms.len()).map(|m| cat.find_inverse(m)).collect();
        cat.iso_class = cat.compute_iso_classes();
        Ok(cat)
    }

    fn find_inverse(&self, m: MorId) -> Option<MorId> {
        let Morphism { src, tgt, .. } = self.morphisms[m];
        self.hom(tgt, src)
            .iter()
            .copied()
            .find(|&k| self.compose(k, m) == self.identity[src] && self.compose(m, k) == self.identity[tgt])
    }

    fn compute_iso_classes(&self) -> Vec<ObjId> {
        let n = self.objects.len();
        let mut class: Vec<ObjId> = (0..n).collect();
        for x in 0..n {
            if class[x] != x {
                continue;
            }
            for (y, cy) in class.iter_mut().enumerate().skip(x + 1) {
                if *cy == y && self.hom(x, y).iter().any(|&m| self.inverse[m].is_some()) {
                    *cy = x;
                }
            }
        }
        class
    }

    /// Checks that identities are two-sided units and that composition is
    /// associative.
    pub fn validate(&self) -> Result<()> {
        for (m, mm) in self.morphisms.iter().enumerate() {
            if self.compose(self.identity[mm.tgt], m) != m || self.compose(m, self.identity[mm.src]) != m {
                return Err(Error::InvalidCategory(format!(
                    "{}: identity is not a unit for `{}`",
                    self.name, mm.name
                )));
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in self.outgoing(self.tgt(f)) {
                let gf = self.compose(g, f);
                for &h in self.outgoing(self.tgt(g)) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(Error::InvalidCategory(format!(
                            "{}: composition is not associative at ({}, {}, {})",
                            self.name,
                            self.mor_name(h),
                            self.mor_name(g),
                            self.mor_name(f)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.objects.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn obj_name(&self, x: ObjId) -> &str {
        &self.objects[x]
    }

    pub fn mor_name(&self, m: MorId) -> &str {
        &self.morphisms[m].name
    }

    pub fn obj_by_name(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn mor_by_name(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.morphisms[m].src
    }

    pub fn tgt(&self, m: MorId) -> ObjId {
        self.morphisms[m].tgt
    }

    pub fn id(&self, x: ObjId) -> MorId {
        self.identity[x]
    }

    pub fn is_identity_mor(&self, m: MorId) -> bool {
        self.identity[self.src(m)] == m
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn outgoing(&self, x: ObjId) -> &[MorId] {
        &self.outgoing[x]
    }

    /// `g∘f`. Panics if the pair is not composable.
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!(
                "{}: `{}` and `{}` are not composable",
                self.name,
                self.mor_name(g),
                self.mor_name(f)
            )
        })
    }

    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.tgt(f) != self.src(g) {
            return None;
        }
        Some(self.comp_data[self.comp_start[f] + self.out_pos[g]])
    }

    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        self.inverse[m]
    }

    pub fn is_iso(&self, m: MorId) -> bool {
        self.inverse[m].is_some()
    }

    /// Isomorphisms from `x` to `y`, in id order.
    pub fn isos(&self, x: ObjId, y: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.hom(x, y).iter().copied().filter(|&m| self.is_iso(m))
    }

    /// Smallest object id isomorphic to `x`.
    pub fn iso_class(&self, x: ObjId) -> ObjId {
        self.iso_class[x]
    }

    pub fn is_groupoid(&self) -> bool {
        self.inverse.iter().all(Option::is_some)
    }

    pub fn with_name(&self, name: impl Into<String>) -> FinCategory {
        FinCategory { name: name.into(), ..self.clone() }
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} objects, {} morphisms)",
            self.name,
            self.objects.len(),
            self.morphisms.len()
        )
    }
}

/// Name-based construction of small categories. Identities are added
/// automatically as `id_<object>` and compose as units; every other
/// composite must be declared.
#[derive(Debug, Default)]
pub struct CategoryBuilder {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<MorId>,
    comps: HashMap<(MorId, MorId), MorId>,
    mor_index: HashMap<String, MorId>,
    obj_index: HashMap<String, ObjId>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CategoryBuilder { name: name.into(), ..Default::default() }
    }

    pub fn object(&mut self, name: &str) -> Result<ObjId> {
        if self.obj_index.contains_key(name) {
            return Err(Error::InvalidCategory(format!("{}: duplicate object `{name}`", self.name)));
        }
        let x = self.objects.len();
        self.objects.push(name.to_string());
        self.obj_index.insert(name.to_string(), x);
        let id = self.push_morphism(&format!("id_{name}"), x, x)?;
        self.identity.push(id);
        Ok(x)
    }

    pub fn morphism(&mut self, name: &str, src: &str, tgt: &str) -> Result<MorId> {
        let s = self.lookup_obj(src)?;
        let t = self.lookup_obj(tgt)?;
        self.push_morphism(name, s, t)
    }

    fn push_morphism(&mut self, name: &str, src: ObjId, tgt: ObjId) -> Result<MorId> {
        if self.mor_index.contains_key(name) {
            return Err(Error::InvalidCategory(format!("{}: duplicate morphism `{name}`", self.name)));
        }
        let m = self.morphisms.len();
        self.morphisms.push(Morphism { name: name.to_string(), src, tgt });
        self.mor_index.insert(name.to_string(), m);
        Ok(m)
    }

    fn lookup_obj(&self, name: &str) -> Result<ObjId> {
        self.obj_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidCategory(format!("{}: unknown object `{name}`", self.name)))
    }

    fn lookup_mor(&self, name: &str) -> Result<MorId> {
        self.mor_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidCategory(format!("{}: unknown morphism `{name}`", self.name)))
    }

    /// Declares `g.f = h`.
    pub fn comp(&mut self, g: &str, f: &str, h: &str) -> Result<()> {
        let (g, f, h) = (self.lookup_mor(g)?, self.lookup_mor(f)?, self.lookup_mor(h)?);
        let (mg, mf, mh) = (&self.morphisms[g], &self.morphisms[f], &self.morphisms[h]);
        if mf.tgt != mg.src || mh.src != mf.src || mh.tgt != mg.tgt {
            return Err(Error::InvalidCategory(format!(
                "{}: composite {}.{} = {} is ill-typed",
                self.name, mg.name, mf.name, mh.name
            )));
        }
        if let Some(&old) = self.comps.get(&(g, f)) {
            if old != h {
                return Err(Error::InvalidCategory(format!(
                    "{}: conflicting composites for {}.{}",
                    self.name, mg.name, mf.name
                )));
            }
        }
        self.comps.insert((g, f), h);
        Ok(())
    }

    /// Builds and fully validates the category.
    pub fn build(self) -> Result<FinCategory> {
        let CategoryBuilder { name, objects, morphisms, identity, comps, .. } = self;
        let is_id = |m: MorId| identity[morphisms[m].src] == m;
        let cat = FinCategory::from_parts(name, objects.clone(), morphisms.clone(), identity.clone(), |g, f| {
            if is_id(g) {
                Some(f)
            } else if is_id(f) {
                Some(g)
            } else {
                comps.get(&(g, f)).copied()
            }
        })?;
        for (&(g, f), &h) in &comps {
            if (is_id(g) && h != f) || (is_id(f) && h != g) {
                return Err(Error::InvalidCategory(format!(
                    "{}: declared composite {}.{} contradicts the unit law",
                    cat.name(),
                    cat.mor_name(g),
                    cat.mor_name(f)
                )));
            }
        }
        cat.validate()?;
        Ok(cat)
    }
}

#[derive(Clone, Debug)]
pub struct Functor {
    dom: Arc<FinCategory>,
    cod: Arc<FinCategory>,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && same_cat(&self.dom, &other.dom)
            && same_cat(&self.cod, &other.cod)
    }
}

impl Eq for Functor {}

impl Functor {
    /// Builds a functor and checks functoriality exhaustively.
    pub fn new(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<Self> {
        let f = Functor::new_unchecked(dom, cod, obj_map, mor_map);
        f.validate()?;
        Ok(f)
    }

    /// Builds a functor without checking functoriality. Used by constructions
    /// that are functorial by design.
    pub fn new_unchecked(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Self {
        Functor { dom, cod, obj_map, mor_map }
    }

    pub fn identity(cat: &Arc<FinCategory>) -> Self {
        Functor {
            dom: cat.clone(),
            cod: cat.clone(),
            obj_map: cat.objects().collect(),
            mor_map: (0..cat.num_morphisms()).collect(),
        }
    }

    /// The functor sending everything to the object `y` and its identity.
    pub fn constant(dom: &Arc<FinCategory>, cod: &Arc<FinCategory>, y: ObjId) -> Self {
        Functor {
            dom: dom.clone(),
            cod: cod.clone(),
            obj_map: vec![y; dom.num_objects()],
            mor_map: vec![cod.id(y); dom.num_morphisms()],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (d, c) = (&*self.dom, &*self.cod);
        if self.obj_map.len() != d.num_objects() || self.mor_map.len() != d.num_morphisms() {
            return Err(Error::InvalidFunctor("maps do not cover the domain".into()));
        }
        if let Some(&y) = self.obj_map.iter().find(|&&y| y >= c.num_objects()) {
            return Err(Error::InvalidFunctor(format!("object id {y} is not in the codomain")));
        }
        if let Some(&m) = self.mor_map.iter().find(|&&m| m >= c.num_morphisms()) {
            return Err(Error::InvalidFunctor(format!("morphism id {m} is not in the codomain")));
        }
        for (m, mm) in d.morphisms().iter().enumerate() {
            let fm = self.mor_map[m];
            if c.src(fm) != self.obj_map[mm.src] || c.tgt(fm) != self.obj_map[mm.tgt] {
                return Err(Error::InvalidFunctor(format!(
                    "image of `{}` has the wrong endpoints",
                    mm.name
                )));
            }
        }
        for x in d.objects() {
            if self.mor_map[d.id(x)] != c.id(self.obj_map[x]) {
                return Err(Error::InvalidFunctor(format!(
                    "identity of `{}` is not preserved",
                    d.obj_name(x)
                )));
            }
        }
        for f in 0..d.num_morphisms() {
            for &g in d.outgoing(d.tgt(f)) {
                if self.mor_map[d.compose(g, f)] != c.compose(self.mor_map[g], self.mor_map[f]) {
                    return Err(Error::InvalidFunctor(format!(
                        "composite {}.{} is not preserved",
                        d.mor_name(g),
                        d.mor_name(f)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dom(&self) -> &Arc<FinCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCategory> {
        &self.cod
    }

    pub fn obj(&self, x: ObjId) -> ObjId {
        self.obj_map[x]
    }

    pub fn mor(&self, m: MorId) -> MorId {
        self.mor_map[m]
    }

    pub fn obj_map(&self) -> &[ObjId] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[MorId] {
        &self.mor_map
    }

    pub fn is_identity(&self) -> bool {
        self.obj_map.iter().enumerate().all(|(i, &x)| i == x)
            && self.mor_map.iter().enumerate().all(|(i, &m)| i == m)
            && same_cat(&self.dom, &self.cod)
    }

    /// `self∘f`.
    pub fn after(&self, f: &Functor) -> Result<Functor> {
        compose_functors(self, f)
    }
}

/// Strict composite `g∘f`.
pub fn compose_functors(g: &Functor, f: &Functor) -> Result<Functor> {
    if !same_cat(&f.cod, &g.dom) {
        return Err(Error::DomainMismatch(format!(
            "cannot compose {} -> {} after {} -> {}",
            g.dom.name(),
            g.cod.name(),
            f.dom.name(),
            f.cod.name()
        )));
    }
    Ok(Functor {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        obj_map: f.obj_map.iter().map(|&x| g.obj_map[x]).collect(),
        mor_map: f.mor_map.iter().map(|&m| g.mor_map[m]).collect(),
    })
}

/// Composite of a chain written in the usual order: `fcomp(&[h, g, f])` is `h∘g∘f`.
pub fn fcomp(chain: &[&Functor]) -> Result<Functor> {
    let (last, rest) = chain.split_last().expect("empty functor chain");
    rest.iter().rev().try_fold((*last).clone(), |acc, g| compose_functors(g, &acc))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransf {
    src: Functor,
    tgt: Functor,
    components: Vec<MorId>,
}

impl NatTransf {
    /// Builds a transformation and checks naturality.
    pub fn new(src: Functor, tgt: Functor, components: Vec<MorId>) -> Result<Self> {
        if !same_cat(&src.dom, &tgt.dom) || !same_cat(&src.cod, &tgt.cod) {
            return Err(Error::BoundaryMismatch("functors have different domains or codomains".into()));
        }
        let t = NatTransf { src, tgt, components };
        t.validate()?;
        Ok(t)
    }

    pub fn new_unchecked(src: Functor, tgt: Functor, components: Vec<MorId>) -> Self {
        NatTransf { src, tgt, components }
    }

    pub fn identity(f: &Functor) -> Self {
        let components = f.obj_map.iter().map(|&y| f.cod.id(y)).collect();
        NatTransf { src: f.clone(), tgt: f.clone(), components }
    }

    pub fn validate(&self) -> Result<()> {
        let (d, c) = (self.src.dom(), self.src.cod());
        if self.components.len() != d.num_objects() {
            return Err(Error::NotNatural("wrong number of components".into()));
        }
        for x in d.objects() {
            let k = self.components[x];
            if k >= c.num_morphisms() || c.src(k) != self.src.obj(x) || c.tgt(k) != self.tgt.obj(x) {
                return Err(Error::NotNatural(format!(
                    "component at object {} has the wrong type",
                    d.obj_name(x)
                )));
            }
        }
        for (m, mm) in d.morphisms().iter().enumerate() {
            let lhs = c.compose(self.components[mm.tgt], self.src.mor(m));
            let rhs = c.compose(self.tgt.mor(m), self.components[mm.src]);
            if lhs != rhs {
                return Err(Error::NotNatural(format!("square for `{}` does not commute", mm.name)));
            }
        }
        Ok(())
    }

    pub fn src_f(&self) -> &Functor {
        &self.src
    }

    pub fn tgt_f(&self) -> &Functor {
        &self.tgt
    }

    pub fn components(&self) -> &[MorId] {
        &self.components
    }

    pub fn component(&self, x: ObjId) -> MorId {
        self.components[x]
    }

    pub fn dom(&self) -> &Arc<FinCategory> {
        self.src.dom()
    }

    pub fn cod(&self) -> &Arc<FinCategory> {
        self.src.cod()
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && self.components.iter().all(|&k| self.cod().is_identity_mor(k))
    }

    pub fn is_invertible(&self) -> bool {
        is_invertible_nat(self)
    }

    pub fn inverse(&self) -> Option<NatTransf> {
        let c = self.cod();
        let components = self.components.iter().map(|&k| c.inverse(k)).collect::<Option<Vec<_>>>()?;
        Some(NatTransf { src: self.tgt.clone(), tgt: self.src.clone(), components })
    }

    /// Inverse, or an error naming the transformation's role.
    pub fn inv(&self) -> Result<NatTransf> {
        self.inverse()
            .ok_or_else(|| Error::HypothesisFailed("expected an invertible 2-cell".into()))
    }

    /// `F∘self`.
    pub fn post(&self, f: &Functor) -> Result<NatTransf> {
        whisker(f, self, Side::Left)
    }

    /// `self∘G`.
    pub fn pre(&self, g: &Functor) -> Result<NatTransf> {
        whisker(g, self, Side::Right)
    }
}

pub fn is_invertible_nat(alpha: &NatTransf) -> bool {
    let c = alpha.cod();
    alpha.components.iter().all(|&k| c.is_iso(k))
}

/// `β∘α`, vertical composition.
pub fn vcompose_nat(beta: &NatTransf, alpha: &NatTransf) -> Result<NatTransf> {
    if alpha.tgt != beta.src {
        return Err(Error::BoundaryMismatch("target of α is not the source of β".into()));
    }
    let c = alpha.cod();
    let components = alpha
        .components
        .iter()
        .zip(&beta.components)
        .map(|(&a, &b)| c.compose(b, a))
        .collect();
    Ok(NatTransf { src: alpha.src.clone(), tgt: beta.tgt.clone(), components })
}

/// Vertical composite of a chain written in the usual order:
/// `vchain(&[c, b, a])` is `c·b·a`, with `a` applied first.
pub fn vchain(chain: &[&NatTransf]) -> Result<NatTransf> {
    let (last, rest) = chain.split_last().expect("empty 2-cell chain");
    rest.iter().rev().try_fold((*last).clone(), |acc, b| vcompose_nat(b, &acc))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `F∘α`: apply the functor to every component.
    Left,
    /// `α∘G`: evaluate α at image objects.
    Right,
}

pub fn whisker(f_or_g: &Functor, alpha: &NatTransf, side: Side) -> Result<NatTransf> {
    match side {
        Side::Left => {
            let f = f_or_g;
            if !same_cat(&f.dom, alpha.cod()) {
                return Err(Error::BoundaryMismatch("left whisker: functor domain differs".into()));
            }
            Ok(NatTransf {
                src: compose_functors(f, &alpha.src)?,
                tgt: compose_functors(f, &alpha.tgt)?,
                components: alpha.components.iter().map(|&k| f.mor(k)).collect(),
            })
        }
        Side::Right => {
            let g = f_or_g;
            if !same_cat(&g.cod, alpha.dom()) {
                return Err(Error::BoundaryMismatch("right whisker: functor codomain differs".into()));
            }
            Ok(NatTransf {
                src: compose_functors(&alpha.src, g)?,
                tgt: compose_functors(&alpha.tgt, g)?,
                components: g.obj_map.iter().map(|&x| alpha.components[x]).collect(),
            })
        }
    }
}

/// All functors `dom → cod`, in lexicographic order of their maps.
pub fn all_functors(dom: &Arc<FinCategory>, cod: &Arc<FinCategory>) -> Vec<Functor> {
    let n = dom.num_objects();
    let mut out = Vec::new();
    let mut obj_map = vec![0; n];
    if n > 0 && cod.num_objects() == 0 {
        return out;
    }
    let non_id: Vec<MorId> = (0..dom.num_morphisms()).filter(|&m| !dom.is_identity_mor(m)).collect();
    loop {
        let mut mor_map = vec![usize::MAX; dom.num_morphisms()];
        for x in dom.objects() {
            mor_map[dom.id(x)] = cod.id(obj_map[x]);
        }
        extend_functor(dom, cod, &obj_map, &non_id, 0, &mut mor_map, &mut out);
        // Odometer over object maps.
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            obj_map[i] += 1;
            if obj_map[i] < cod.num_objects() {
                break;
            }
            obj_map[i] = 0;
            i += 1;
        }
    }
}

fn extend_functor(
    dom: &Arc<FinCategory>,
    cod: &Arc<FinCategory>,
    obj_map: &[ObjId],
    non_id: &[MorId],
    k: usize,
    mor_map: &mut Vec<MorId>,
    out: &mut Vec<Functor>,
) {
    if k == non_id.len() {
        let f = Functor::new_unchecked(dom.clone(), cod.clone(), obj_map.to_vec(), mor_map.clone());
        if f.validate().is_ok() {
            out.push(f);
        }
        return;
    }
    let m = non_id[k];
    let candidates = cod.hom(obj_map[dom.src(m)], obj_map[dom.tgt(m)]).to_vec();
    for c in candidates {
        mor_map[m] = c;
        if composites_consistent(dom, cod, mor_map, m) {
            extend_functor(dom, cod, obj_map, non_id, k + 1, mor_map, out);
        }
    }
    mor_map[m] = usize::MAX;
}

fn composites_consistent(dom: &FinCategory, cod: &FinCategory, mor_map: &[MorId], m: MorId) -> bool {
    let assigned = |x: MorId| mor_map[x] != usize::MAX;
    for f in 0..dom.num_morphisms() {
        if !assigned(f) {
            continue;
        }
        for &g in dom.outgoing(dom.tgt(f)) {
            if (g != m && f != m) || !assigned(g) {
                continue;
            }
            let h = dom.compose(g, f);
            if assigned(h) && cod.compose(mor_map[g], mor_map[f]) != mor_map[h] {
                return false;
            }
        }
    }
    true
}

/// All natural transformations `src ⇒ tgt`, in lexicographic order of their
/// components.
pub fn all_nat_transfs(src: &Functor, tgt: &Functor) -> Vec<NatTransf> {
    let d = src.dom().clone();
    let c = src.cod().clone();
    let n = d.num_objects();
    let mut out = Vec::new();
    let mut comps = vec![usize::MAX; n];
    fn go(
        x: usize,
        d: &FinCategory,
        c: &FinCategory,
        src: &Functor,
        tgt: &Functor,
        comps: &mut Vec<MorId>,
        out: &mut Vec<NatTransf>,
    ) {
        if x == d.num_objects() {
            out.push(NatTransf::new_unchecked(src.clone(), tgt.clone(), comps.clone()));
            return;
        }
        for &k in c.hom(src.obj(x), tgt.obj(x)) {
            comps[x] = k;
            let ok = d.morphisms().iter().enumerate().all(|(m, mm)| {
                if mm.src > x || mm.tgt > x {
                    return true;
                }
                c.compose(comps[mm.tgt], src.mor(m)) == c.compose(tgt.mor(m), comps[mm.src])
            });
            if ok {
                go(x + 1, d, c, src, tgt, comps, out);
            }
        }
        comps[x] = usize::MAX;
    }
    if n == 0 {
        out.push(NatTransf::new_unchecked(src.clone(), tgt.clone(), Vec::new()));
        return out;
    }
    go(0, &d, &c, src, tgt, &mut comps, &mut out);
    out
}

/// The category with object `x` repeated `mult[x]` times, together with the
/// projection back to `cat`. The projection is an equivalence whenever every
/// multiplicity is positive.
pub fn duplicate_objects(cat: &Arc<FinCategory>, mult: &[usize]) -> Functor {
    let mut objects = Vec::new();
    let mut base_obj = Vec::new();
    for x in cat.objects() {
        for i in 0..mult[x] {
            objects.push(if mult[x] == 1 {
                cat.obj_name(x).to_string()
            } else {
                format!("{}#{}", cat.obj_name(x), i)
            });
            base_obj.push(x);
        }
    }
    let mut morphisms = Vec::new();
    let mut base_mor = Vec::new();
    let mut index = HashMap::new();
    for (p, &x) in base_obj.iter().enumerate() {
        for (q, &y) in base_obj.iter().enumerate() {
            for &m in cat.hom(x, y) {
                let name = if mult[x] == 1 && mult[y] == 1 {
                    cat.mor_name(m).to_string()
                } else {
                    format!("{}[{}>{}]", cat.mor_name(m), objects[p], objects[q])
                };
                index.insert((p, q, m), morphisms.len());
                morphisms.push(Morphism { name, src: p, tgt: q });
                base_mor.push(m);
            }
        }
    }
    let identity: Vec<MorId> = base_obj
        .iter()
        .enumerate()
        .map(|(p, &x)| index[&(p, p, cat.id(x))])
        .collect();
    let name = format!("{}'", cat.name());
    let dup = FinCategory::from_parts(name, objects, morphisms.clone(), identity, |g, f| {
        let h = cat.compose(base_mor[g], base_mor[f]);
        index.get(&(morphisms[f].src, morphisms[g].tgt, h)).copied()
    })
    .expect("duplicating objects yields a category");
    Functor::new_unchecked(Arc::new(dup), cat.clone(), base_obj, base_mor)
}

/// Given `F` and, for every object `x`, an isomorphism `iso[x]: F(x) → y_x`,
/// returns the conjugated functor `F'` and the invertible `θ: F ⇒ F'`.
pub fn conjugate(f: &Functor, iso: &[MorId]) -> Result<(Functor, NatTransf)> {
    let c = f.cod();
    let mut obj_map = Vec::with_capacity(iso.len());
    for (x, &k) in iso.iter().enumerate() {
        if c.src(k) != f.obj(x) || !c.is_iso(k) {
            return Err(Error::HypothesisFailed("conjugating map is not an isomorphism out of F(x)".into()));
        }
        obj_map.push(c.tgt(k));
    }
    let d = f.dom();
    let mor_map = d
        .morphisms()
        .iter()
        .enumerate()
        .map(|(m, mm)| {
            let back = c.inverse(iso[mm.src]).expect("checked above");
            c.compose(iso[mm.tgt], c.compose(f.mor(m), back))
        })
        .collect();
    let g = Functor::new_unchecked(d.clone(), c.clone(), obj_map, mor_map);
    let theta = NatTransf::new_unchecked(f.clone(), g.clone(), iso.to_vec());
    Ok((g, theta))
}

/// Small named categories used throughout the tests and the worked examples.
pub mod fixtures {
    use super::*;

    fn build(b: CategoryBuilder) -> Arc<FinCategory> {
        Arc::new(b.build().expect("fixture is a valid category"))
    }

    /// The terminal category: one object `p`.
    pub fn pt() -> Arc<FinCategory> {
        let mut b = CategoryBuilder::new("PT");
        b.object("p").unwrap();
        build(b)
    }

    /// Two objects `a`, `b` and only identities.
    pub fn d2() -> Arc<FinCategory> {
        let mut b = CategoryBuilder::new("D2");
        b.object("a").unwrap();
        b.object("b").unwrap();
        build(b)
    }

    /// Two uniquely isomorphic objects `a`, `b` with `ab: a → b`, `ba: b → a`.
    pub fn i2() -> Arc<FinCategory> {
        let mut b = CategoryBuilder::new("I2");
        b.object("a").unwrap();
        b.object("b").unwrap();
        b.morphism("ab", "a", "b").unwrap();
        b.morphism("ba", "b", "a").unwrap();
        b.comp("ba", "ab", "id_a").unwrap();
        b.comp("ab", "ba", "id_b").unwrap();
        build(b)
    }

    /// One object `o` with automorphisms `id_o` and `s`, `s.s = id_o`.
    pub fn z2() -> Arc<FinCategory> {
        let mut b = CategoryBuilder::new("Z2");
        b.object("o").unwrap();
        b.morphism("s", "o", "o").unwrap();
        b.comp("s", "s", "id_o").unwrap();
        build(b)
    }

    /// The arrow category `0 → 1` with the single arrow `u`.
    pub fn arr() -> Arc<FinCategory> {
        let mut b = CategoryBuilder::new("ARR");
        b.object("0").unwrap();
        b.object("1").unwrap();
        b.morphism("u", "0", "1").unwrap();
        build(b)
    }

    pub fn all() -> Vec<Arc<FinCategory>> {
        vec![pt(), d2(), i2(), z2(), arr()]
    }

    /// The functor `PT → cat` picking the object named `obj`.
    pub fn point(cat: &Arc<FinCategory>, obj: &str) -> Functor {
        let y = cat.obj_by_name(obj).expect("object exists");
        Functor::constant(&pt(), cat, y)
    }

    /// The unique functor `cat → PT`.
    pub fn to_point(cat: &Arc<FinCategory>) -> Functor {
        Functor::constant(cat, &pt(), 0)
    }
}
