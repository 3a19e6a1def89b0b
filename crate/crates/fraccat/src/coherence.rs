//! Law checking over a pool of small categories.
//!
//! Every law is a list of independent trials. Trial `i` of law `L` draws its
//! randomness from its own ChaCha stream derived from `(seed, L, i)`, so a
//! failing trial can be replayed on its own with [`replay`].

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bf_oracle::{
    bf4_witness, in_w, iso_comma, iso_comma_raw, lemma_bf3_relaxed, lemma_bf3_skeletal, lift_along, skeletal_square_raw,
    IsoCommaSquare,
};
use crate::canonical::{ac_equivalent, from_twocell, to_twocell, AlmostCanonical};
use crate::error::Result;
use crate::fincat::{
    all_functors, all_nat_transfs, compose_functors, conjugate, duplicate_objects, fixtures, same_cat, FinCategory,
    Functor, NatTransf,
};
use crate::fractions::{
    associator, bf6_check, cells_equivalent, compose_fractions, hcomp, hcomp_other, identity_cell, uw_on_2, vcomp,
    whisker_post, whisker_pre, AssocSetup, CellDiagram, Fraction, PostWhiskerSetup, PreWhiskerSetup, TwoCell,
    VCompSetup, VCompWitness,
};
use crate::fractions::{invert, is_invertible};

/// Fixture categories and every functor among them.
#[derive(Clone, Debug)]
pub struct InstancePool {
    pub categories: Vec<Arc<FinCategory>>,
    pub functors: Vec<Functor>,
    pub w_members: Vec<Functor>,
    pub seed: u64,
}

impl InstancePool {
    pub fn new(categories: Vec<Arc<FinCategory>>, seed: u64) -> Self {
        let mut functors = Vec::new();
        for a in &categories {
            for b in &categories {
                functors.extend(all_functors(a, b));
            }
        }
        let w_members = functors.iter().filter(|f| in_w(f)).cloned().collect();
        InstancePool { categories, functors, w_members, seed }
    }

    /// PT, D2, I2, Z2 and ARR.
    pub fn fixtures(seed: u64) -> Self {
        Self::new(fixtures::all(), seed)
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    pub fn category(&self, name: &str) -> Option<&Arc<FinCategory>> {
        self.categories.iter().find(|c| c.name() == name)
    }

    pub fn functors_between<'a>(
        &'a self,
        a: &'a Arc<FinCategory>,
        b: &'a Arc<FinCategory>,
    ) -> impl Iterator<Item = &'a Functor> + 'a {
        self.functors.iter().filter(move |f| same_cat(f.dom(), a) && same_cat(f.cod(), b))
    }

    pub fn w_into<'a>(&'a self, b: &'a Arc<FinCategory>) -> impl Iterator<Item = &'a Functor> + 'a {
        self.w_members.iter().filter(move |f| same_cat(f.cod(), b))
    }

    fn contains(&self, c: &Arc<FinCategory>) -> bool {
        self.categories.iter().any(|x| same_cat(x, c))
    }
}

/// Outcome of one law over all its trials.
#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub law: String,
    pub trials: usize,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{}: {} ({} trials, {} failures)", self.law, status, self.trials, self.failures.len())?;
        for fail in &self.failures {
            write!(f, "\n  {fail}")?;
        }
        Ok(())
    }
}

/// Which composition a choice-independence check exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Assoc,
    VComp,
    Pre,
    Post,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::Assoc, Op::VComp, Op::Pre, Op::Post];

    pub fn name(self) -> &'static str {
        match self {
            Op::Assoc => "assoc",
            Op::VComp => "vcomp",
            Op::Pre => "pre",
            Op::Post => "post",
        }
    }
}

/// Random instances drawn from a pool.
pub struct Sampler<'a> {
    pool: &'a InstancePool,
    rng: ChaCha8Rng,
}

const RETRIES: usize = 24;

impl<'a> Sampler<'a> {
    /// The stream for trial `trial` of the law named `law`.
    pub fn new(pool: &'a InstancePool, law: &str, trial: usize) -> Self {
        let tag = law.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        let mut rng = ChaCha8Rng::seed_from_u64(pool.seed ^ tag);
        rng.set_stream(trial as u64);
        Sampler { pool, rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn coin(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    pub fn category(&mut self) -> Arc<FinCategory> {
        self.pool.categories.choose(&mut self.rng).expect("pool is not empty").clone()
    }

    /// A random `e: X → cat` in `W`: a pool member, preferably not an
    /// identity, or a projection duplicating some objects of `cat`.
    pub fn equivalence_into(&mut self, cat: &Arc<FinCategory>) -> Functor {
        if cat.num_objects() <= 3 && self.coin(0.3) {
            let mult: Vec<usize> = cat.objects().map(|_| if self.coin(0.35) { 2 } else { 1 }).collect();
            return duplicate_objects(cat, &mult);
        }
        if !self.pool.contains(cat) {
            return Functor::identity(cat);
        }
        let all: Vec<&Functor> = self.pool.w_into(cat).collect();
        let non_id: Vec<&Functor> = all.iter().copied().filter(|f| !f.is_identity()).collect();
        let pick = if !non_id.is_empty() && self.coin(0.75) { non_id } else { all };
        (*pick.choose(&mut self.rng).expect("identity is always a member")).clone()
    }

    pub fn functor(&mut self, dom: &Arc<FinCategory>, cod: &Arc<FinCategory>) -> Option<Functor> {
        let options: Vec<Functor> = if self.pool.contains(dom) && self.pool.contains(cod) {
            self.pool.functors_between(dom, cod).cloned().collect()
        } else {
            all_functors(dom, cod)
        };
        options.choose(&mut self.rng).cloned()
    }

    /// A fraction `src → tgt`; either end is random when `None`.
    pub fn fraction(&mut self, src: Option<&Arc<FinCategory>>, tgt: Option<&Arc<FinCategory>>) -> Fraction {
        let src = src.cloned().unwrap_or_else(|| self.category());
        let tgt = tgt.cloned().unwrap_or_else(|| self.category());
        let w = self.equivalence_into(&src);
        let f = self.functor(w.dom(), &tgt).expect("functors into a nonempty category exist");
        Fraction::new(w, f).expect("sampled leg is an equivalence")
    }

    /// `F'` isomorphic to `F` by randomly chosen isomorphisms at each object.
    pub fn conjugated(&mut self, f: &Functor) -> (Functor, NatTransf) {
        let c = f.cod().clone();
        let isos: Vec<_> = f
            .dom()
            .objects()
            .map(|x| {
                let fx = f.obj(x);
                if self.coin(0.5) {
                    return c.id(fx);
                }
                let all: Vec<_> = c.objects().flat_map(|y| c.isos(fx, y).collect::<Vec<_>>()).collect();
                *all.choose(&mut self.rng).expect("identity is an isomorphism")
            })
            .collect();
        conjugate(f, &isos).expect("chosen maps are isomorphisms")
    }

    /// Perturbs a square over `(x, y)`: precomposition with an equivalence
    /// and conjugation of either projection.
    pub fn perturb_square(&mut self, x: &Functor, y: &Functor, mut sq: IsoCommaSquare) -> IsoCommaSquare {
        if sq.apex.num_objects() <= 4 && self.coin(0.4) {
            let e = self.equivalence_into(&sq.apex.clone());
            sq = IsoCommaSquare {
                apex: e.dom().clone(),
                proj_w: compose_functors(&sq.proj_w, &e).expect("typed"),
                proj_f: compose_functors(&sq.proj_f, &e).expect("typed"),
                filler: sq.filler.pre(&e).expect("typed"),
            };
        }
        if self.coin(0.5) {
            let (pf, theta) = self.conjugated(&sq.proj_f);
            let filler = theta.post(y).and_then(|t| crate::fincat::vcompose_nat(&t, &sq.filler));
            sq = IsoCommaSquare { filler: filler.expect("typed"), proj_f: pf, ..sq };
        }
        if self.coin(0.5) {
            let (pw, theta) = self.conjugated(&sq.proj_w);
            let back = theta.inv().and_then(|t| t.post(x)).expect("typed");
            let filler = crate::fincat::vcompose_nat(&sq.filler, &back).expect("typed");
            sq = IsoCommaSquare { filler, proj_w: pw, ..sq };
        }
        sq
    }

    /// A random square over `(x, y)` with a `W`-leg. When `y ∉ W`, `z` must
    /// satisfy `z∘y ∈ W`.
    pub fn square(&mut self, x: &Functor, y: &Functor, z: Option<&Functor>) -> Result<IsoCommaSquare> {
        let base = if in_w(y) {
            let small = x.dom().num_objects() * y.dom().num_objects() <= 36;
            match self.rng.random_range(0..3) {
                0 if small => iso_comma_raw(x, y),
                0 | 1 => skeletal_square_raw(x, y),
                _ => lift_along(y, x)?,
            }
        } else {
            let z = z.expect("a leg outside W needs a correcting equivalence");
            let small = x.dom().num_objects() * y.dom().num_objects() <= 36;
            if small && self.coin(0.5) {
                lemma_bf3_relaxed(y, z, x)?
            } else {
                lemma_bf3_skeletal(y, z, x)?
            }
        };
        Ok(self.perturb_square(x, y, base))
    }

    /// A random representative of some 2-cell `f1 ⇒ f2`, if one exists.
    pub fn cell(&mut self, f1: &Fraction, f2: &Fraction) -> Result<Option<TwoCell>> {
        for _ in 0..4 {
            let sq = self.square(f1.w(), f2.w(), None)?;
            let src = compose_functors(f1.f(), &sq.proj_w)?;
            let tgt = compose_functors(f2.f(), &sq.proj_f)?;
            let betas = all_nat_transfs(&src, &tgt);
            if let Some(beta) = betas.choose(&mut self.rng) {
                let d = CellDiagram::new(f1.clone(), f2.clone(), sq.proj_w, sq.proj_f, sq.filler, beta.clone())?;
                return Ok(Some(TwoCell::from(d)));
            }
        }
        Ok(None)
    }

    /// A fraction parallel to `f1` admitting a 2-cell from `f1`, and that cell.
    pub fn cell_from(&mut self, f1: &Fraction) -> Result<(Fraction, TwoCell)> {
        for _ in 0..RETRIES {
            let f2 = self.fraction(Some(f1.src()), Some(f1.tgt()));
            if let Some(c) = self.cell(f1, &f2)? {
                return Ok((f2, c));
            }
        }
        let c = identity_cell(f1);
        Ok((f1.clone(), c))
    }

    /// The same class, represented differently: precomposed with an
    /// equivalence and with `v¹`, `v²` conjugated.
    pub fn rerepresent(&mut self, g: &TwoCell) -> Result<TwoCell> {
        let mut d = g.rep.clone();
        if d.apex3().num_objects() <= 4 && self.coin(0.5) {
            let e = self.equivalence_into(&d.apex3().clone());
            d = d.precompose(&e)?;
        }
        let (w1, f1) = (d.src_fr.w().clone(), d.src_fr.f().clone());
        let (w2, f2) = (d.tgt_fr.w().clone(), d.tgt_fr.f().clone());
        if self.coin(0.5) {
            let (v1, theta) = self.conjugated(&d.v1);
            let inv = theta.inv()?;
            d.alpha = crate::fincat::vcompose_nat(&d.alpha, &inv.post(&w1)?)?;
            d.beta = crate::fincat::vcompose_nat(&d.beta, &inv.post(&f1)?)?;
            d.v1 = v1;
        }
        if self.coin(0.5) {
            let (v2, theta) = self.conjugated(&d.v2);
            d.alpha = crate::fincat::vcompose_nat(&theta.post(&w2)?, &d.alpha)?;
            d.beta = crate::fincat::vcompose_nat(&theta.post(&f2)?, &d.beta)?;
            d.v2 = v2;
        }
        d.validate()?;
        Ok(TwoCell::from(d))
    }
}

type Trial = fn(&mut Sampler<'_>) -> Result<Option<String>>;

fn run_law(pool: &InstancePool, law: &str, trials: usize, trial: Trial) -> LawReport {
    let start = Instant::now();
    let trials = if pool.is_empty() { 0 } else { trials };
    let failures = (0..trials)
        .filter_map(|i| run_one(pool, law, i, trial).map(|msg| format!("trial {i}: {msg}")))
        .collect();
    LawReport { law: law.to_string(), trials, failures, elapsed: start.elapsed() }
}

fn run_one(pool: &InstancePool, law: &str, i: usize, trial: Trial) -> Option<String> {
    let mut s = Sampler::new(pool, law, i);
    match trial(&mut s) {
        Ok(outcome) => outcome,
        Err(e) => Some(format!("error: {e}")),
    }
}

fn fail_unless(ok: bool, msg: impl FnOnce() -> String) -> Option<String> {
    if ok {
        None
    } else {
        Some(msg())
    }
}

/// Composable fractions `A₀ → A₁ → … → A_n`.
fn chain_of(s: &mut Sampler<'_>, n: usize) -> Vec<Fraction> {
    let mut out: Vec<Fraction> = Vec::with_capacity(n);
    for _ in 0..n {
        let src = out.last().map(|f| f.tgt().clone());
        out.push(s.fraction(src.as_ref(), None));
    }
    out
}

fn pentagon_trial(s: &mut Sampler<'_>) -> Result<Option<String>> {
    let fs = chain_of(s, 4);
    let (f, g, h, k) = (&fs[0], &fs[1], &fs[2], &fs[3]);
    let (gf, hg, kh) = (compose_fractions(g, f)?, compose_fractions(h, g)?, compose_fractions(k, h)?);
    let top = vcomp(&associator(&kh, g, f, None)?, &associator(k, h, &gf, None)?, None)?;
    let a = whisker_post(k, &associator(h, g, f, None)?, None)?;
    let b = associator(k, &hg, f, None)?;
    let c = whisker_pre(&associator(k, h, g, None)?, f, None)?;
    let bottom = vcomp(&c, &vcomp(&b, &a, None)?, None)?;
    Ok(fail_unless(cells_equivalent(&top.rep, &bottom.rep)?, || {
        format!("pentagon fails on {f} ; {g} ; {h} ; {k}")
    }))
}

pub fn check_pentagon(pool: &InstancePool, trials: usize) -> LawReport {
    run_law(pool, "pentagon", trials, pentagon_trial)
}

fn triangle_trial(s: &mut Sampler<'_>) -> Result<Option<String>> {
    let fs = chain_of(s, 2);
    let (f, g) = (&fs[0], &fs[1]);
    let id = Fraction::identity(f.tgt());
    let a = associator(g, &id, f, None)?;
    let gf = compose_fractions(g, f)?;
    Ok(fail_unless(cells_equivalent(&a.rep, &identity_cell(&gf).rep)?, || {
        format!("associator through an identity is not the identity on {f} ; {g}")
    }))
}

/// Associators with an identity in the middle are identities.
pub fn check_triangle(pool: &InstancePool, trials: usize) -> LawReport {
    run_law(pool, "triangle", trials, triangle_trial)
}

fn interchange_trial(s: &mut Sampler<'_>) -> Result<Option<String>> {
    let f1 = s.fraction(None, None);
    let (f2, gamma) = s.cell_from(&f1)?;
    let (_, gamma2) = s.cell_from(&f2)?;
    let g1 = s.fraction(Some(f1.tgt()), None);
    let (g2, delta) = s.cell_from(&g1)?;
    let (_, delta2) = s.cell_from(&g2)?;
    let lhs = hcomp(&vcomp(&delta2, &delta, None)?, &vcomp(&gamma2, &gamma, None)?)?;
    let rhs = vcomp(&hcomp(&delta2, &gamma2)?, &hcomp(&delta, &gamma)?, None)?;
    if !cells_equivalent(&lhs.rep, &rhs.rep)? {
        return Ok(Some(format!("interchange fails over {f1} and {g1}")));
    }
    let other = hcomp_other(&delta, &gamma)?;
    Ok(fail_unless(cells_equivalent(&hcomp(&delta, &gamma)?.rep, &other.rep)?, || {
        format!("the two horizontal composites differ over {f1} and {g1}")
    }))
}

pub fn check_interchange(pool: &InstancePool, trials: usize) -> LawReport {
    run_law(pool, "interchange", trials, interchange_trial)
}

fn choice_assoc(s: &mut Sampler<'_>) -> Result<Option<String>> {
    let fs = chain_of(s, 3);
    let setup = AssocSetup::new(&fs[2], &fs[1], &fs[0])?;
    let canonical = setup.cell(&setup.canonical_witness()?)?;
    let (x, y) = setup.cospan()?;
    let sq = s.square(&x, &y, None)?;
    let other = setup.cell(&setup.complete(sq)?)?;
    Ok(fail_unless(cells_equivalent(&canonical.rep, &other.rep)?, || {
        format!("associator depends on the witness for {} ; {} ; {}", fs[0], fs[1], fs[2])
    }))
}

fn choice_vcomp(s: &mut Sampler<'_>) -> Result<Option<String>> {
    let f1 = s.fraction(None, None);
    let (f2, g1) = s.cell_from(&f1)?;
    let (_, g2) = s.cell_from(&f2)?;
    let (g1r, g2r) = (s.rerepresent(&g1)?, s.rerepresent(&g2)?);
    let canonical = vcomp(&g2, &g1, None)?;
    let setup = VCompSetup::new(&g2r, &g1r)?;
    let (u2, u3) = setup.cospan();
    let sq = s.square(u2, u3, Some(setup.g1.tgt_fr.w()))?;
    let other = setup.compose(&VCompWitness::from(sq))?;
    Ok(fail_unless(cells_equivalent(&canonical.rep, &other.rep)?, || {
        format!("vertical composite depends on the witness over {f1}")
    }))
}

fn choice_pre(s: &mut Sampler<'_>) -> Result<Option<String>> {
    let fs = chain_of(s, 2);
    let (f, g1) = (&fs[0], &fs[1]);
    let (_, delta) = s.cell_from(g1)?;
    let canonical = whisker_pre(&delta, f, None)?;
    let delta_r = s.rerepresent(&delta)?;
    let setup = PreWhiskerSetup::new(&delta_r, f)?;
    let mut sigma = Vec::with_capacity(2);
    for m in 0..2 {
        let (fm, um) = setup.sigma_cospan(m);
        let z = if m == 0 { setup.delta.src_fr.w() } else { setup.delta.tgt_fr.w() };
        sigma.push(s.square(fm, um, Some(z))?);
    }
    let sigma: [IsoCommaSquare; 2] = sigma.try_into().expect("two squares");
    let (x, y) = setup.comparison_cospan(&sigma)?;
    let comparison = s.square(&x, &y, None)?;
    let other = setup.compose(&setup.complete(sigma, comparison)?)?;
    Ok(fail_unless(cells_equivalent(&canonical.rep, &other.rep)?, || {
        format!("left whiskering depends on the witness for {f} ; {g1}")
    }))
}

fn choice_post(s: &mut Sampler<'_>) -> Result<Option<String>> {
    let fs = chain_of(s, 2);
    let (f1, g) = (&fs[0], &fs[1]);
    let (_, gamma) = s.cell_from(f1)?;
    let canonical = whisker_post(g, &gamma, None)?;
    let gamma_r = s.rerepresent(&gamma)?;
    let setup = PostWhiskerSetup::new(g, &gamma_r)?;
    let mut eta = Vec::with_capacity(2);
    for m in 0..2 {
        let (x, y) = setup.eta_cospan(m);
        eta.push(s.square(x, y, None)?);
    }
    let eta: [IsoCommaSquare; 2] = eta.try_into().expect("two squares");
    let (x, y) = setup.eta3_cospan(&eta);
    let eta3 = s.square(x, y, None)?;
    let other = setup.compose(&setup.complete(eta, eta3)?)?;
    Ok(fail_unless(cells_equivalent(&canonical.rep, &other.rep)?, || {
        format!("right whiskering depends on the witness for {f1} ; {g}")
    }))
}

/// Two independently built witness bundles give the same 2-cell. The second
/// bundle is also applied to re-represented inputs where the operation
/// takes 2-cells.
pub fn check_choice_independence(pool: &InstancePool, trials: usize, op: Op) -> LawReport {
    let trial: Trial = match op {
        Op::Assoc => choice_assoc,
        Op::VComp => choice_vcomp,
        Op::Pre => choice_pre,
        Op::Post => choice_post,
    };
    run_law(pool, &format!("choice-{}", op.name()), trials, trial)
}

/// Every 2-cell `f1 ⇒ f2` over the fixed choice square `iso_comma(w¹, w²)`.
/// Every class has such a representative.
pub fn enumerate_cells(f1: &Fraction, f2: &Fraction) -> Result<Vec<TwoCell>> {
    let sq = iso_comma(f1.w(), f2.w())?;
    let src = compose_functors(f1.f(), &sq.proj_w)?;
    let tgt = compose_functors(f2.f(), &sq.proj_f)?;
    all_nat_transfs(&src, &tgt)
        .into_iter()
        .map(|beta| {
            let d = CellDiagram::new(f1.clone(), f2.clone(), sq.proj_w.clone(), sq.proj_f.clone(), sq.filler.clone(), beta)?;
            Ok(TwoCell::from(d))
        })
        .collect()
}

/// Fractions `a → b` whose apex is a pool category with at most
/// `max_apex_objects` objects.
pub fn small_fractions(pool: &InstancePool, a: &Arc<FinCategory>, b: &Arc<FinCategory>, max_apex_objects: usize) -> Vec<Fraction> {
    let mut out = Vec::new();
    for w in pool.w_into(a) {
        if w.dom().num_objects() > max_apex_objects {
            continue;
        }
        for f in pool.functors_between(w.dom(), b) {
            out.push(Fraction::new(w.clone(), f.clone()).expect("w is in W"));
        }
    }
    out
}

/// Whether some enumerated `Γ': f2 ⇒ f1` is a two-sided inverse of `g`.
pub fn brute_force_invertible(g: &TwoCell) -> Result<bool> {
    let id_src = identity_cell(g.src());
    let id_tgt = identity_cell(g.tgt());
    for cand in enumerate_cells(g.tgt(), g.src())? {
        if cells_equivalent(&vcomp(&cand, g, None)?.rep, &id_src.rep)?
            && cells_equivalent(&vcomp(g, &cand, None)?.rep, &id_tgt.rep)?
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The boundary pairs checked exhaustively: `PT → ARR` and `PT → Z2`.
fn exhaustive_boundaries(pool: &InstancePool) -> Vec<(Arc<FinCategory>, Arc<FinCategory>)> {
    let mut out = Vec::new();
    if let Some(pt) = pool.category("PT") {
        for name in ["ARR", "Z2"] {
            if let Some(b) = pool.category(name) {
                out.push((pt.clone(), b.clone()));
            }
        }
    }
    out
}

/// All 2-cells between fractions with apex of at most two objects, over the
/// exhaustive boundary pairs.
pub fn exhaustive_cells(pool: &InstancePool) -> Result<Vec<TwoCell>> {
    let mut out = Vec::new();
    for (a, b) in exhaustive_boundaries(pool) {
        let frs = small_fractions(pool, &a, &b, 2);
        for f1 in &frs {
            for f2 in &frs {
                out.extend(enumerate_cells(f1, f2)?);
            }
        }
    }
    Ok(out)
}

fn invertibility_mismatch(g: &TwoCell) -> Result<Option<String>> {
    let fast = is_invertible(g)?;
    let brute = brute_force_invertible(g)?;
    if fast != brute {
        return Ok(Some(format!(
            "is_invertible = {fast} but brute force = {brute} for a 2-cell {} => {}",
            g.src(),
            g.tgt()
        )));
    }
    if fast {
        let inv = invert(g)?;
        let back = vcomp(&inv, g, None)?;
        if !cells_equivalent(&back.rep, &identity_cell(g.src()).rep)? {
            return Ok(Some(format!("invert does not produce an inverse for {} => {}", g.src(), g.tgt())));
        }
    }
    Ok(None)
}

fn invertibility_trial(s: &mut Sampler<'_>) -> Result<Option<String>> {
    let f1 = s.fraction(None, None);
    let (_, g) = s.cell_from(&f1)?;
    invertibility_mismatch(&g)
}

/// `is_invertible` against brute-force inverse search: exhaustively over the
/// small boundary pairs, then on `trials` sampled 2-cells. The trial count
/// reported includes the exhaustive part.
pub fn check_invertibility_criterion(pool: &InstancePool, trials: usize) -> LawReport {
    let start = Instant::now();
    let mut report = run_law(pool, "invertibility", trials, invertibility_trial);
    let mut count = 0;
    match exhaustive_cells(pool) {
        Ok(cells) => {
            for (i, g) in cells.iter().enumerate() {
                count += 1;
                match invertibility_mismatch(g) {
                    Ok(None) => {}
                    Ok(Some(msg)) => report.failures.push(format!("exhaustive {i}: {msg}")),
                    Err(e) => report.failures.push(format!("exhaustive {i}: error: {e}")),
                }
            }
        }
        Err(e) => report.failures.push(format!("enumeration failed: {e}")),
    }
    report.trials += count;
    report.elapsed = start.elapsed();
    report
}

fn bijection_roundtrip(g: &TwoCell) -> Result<Option<String>> {
    let a = from_twocell(g)?;
    let back = to_twocell(&a);
    if !cells_equivalent(&back.rep, &g.rep)? {
        return Ok(Some(format!("N(from(G)) differs from G for {} => {}", g.src(), g.tgt())));
    }
    let again = from_twocell(&back)?;
    if !ac_equivalent(&again, &a)? {
        return Ok(Some(format!("from(N(a)) differs from a for {} => {}", g.src(), g.tgt())));
    }
    if a.apex3().num_objects() > g.rep.apex3().num_objects().max(a.choice.apex.num_objects()) {
        return Ok(Some("normal form is larger than its inputs".into()));
    }
    Ok(None)
}

fn bijection_trial(s: &mut Sampler<'_>) -> Result<Option<String>> {
    let f1 = s.fraction(None, None);
    let (f2, g) = s.cell_from(&f1)?;
    let g = s.rerepresent(&g)?;
    let h = match s.cell(&f1, &f2)? {
        Some(h) if s.coin(0.7) => h,
        _ => s.rerepresent(&g)?,
    };
    if let Some(msg) = bijection_roundtrip(&g)? {
        return Ok(Some(msg));
    }
    let (a, b) = (from_twocell(&g)?, from_twocell(&h)?);
    let lhs = ac_equivalent(&a, &b)?;
    let rhs = cells_equivalent(&g.rep, &h.rep)?;
    Ok(fail_unless(lhs == rhs, || format!("ac_equivalent = {lhs} but cells_equivalent = {rhs} over {f1}")))
}

/// Triples `(E, t, φ)` over the choice for `(f1, f2)`, with `t` the identity or
/// a `W`-functor from a pool category.
pub fn enumerate_triples(pool: &InstancePool, f1: &Fraction, f2: &Fraction) -> Result<Vec<AlmostCanonical>> {
    let choice = iso_comma(f1.w(), f2.w())?;
    let e = choice.apex.clone();
    let mut ts = vec![Functor::identity(&e)];
    if e.num_objects() <= 4 {
        for c in &pool.categories {
            ts.extend(all_functors(c, &e).into_iter().filter(in_w));
        }
    }
    let mut out = Vec::new();
    for t in ts {
        let src = compose_functors(&compose_functors(f1.f(), &choice.proj_w)?, &t)?;
        let tgt = compose_functors(&compose_functors(f2.f(), &choice.proj_f)?, &t)?;
        for phi in all_nat_transfs(&src, &tgt) {
            out.push(AlmostCanonical::new(f1.clone(), f2.clone(), t.clone(), phi)?);
        }
    }
    Ok(out)
}

/// The correspondence between almost-canonical triples and 2-cells:
/// exhaustive round trips over the small boundary pairs, injectivity on
/// enumerated triples, then `trials` sampled pairs comparing the two
/// equivalence relations.
pub fn check_appendix_bijection(pool: &InstancePool, trials: usize) -> LawReport {
    let start = Instant::now();
    let mut report = run_law(pool, "appendix-bijection", trials, bijection_trial);
    let mut count = 0;
    let result: Result<()> = (|| {
        for (a, b) in exhaustive_boundaries(pool) {
            let frs = small_fractions(pool, &a, &b, 2);
            for f1 in &frs {
                for f2 in &frs {
                    for g in enumerate_cells(f1, f2)? {
                        count += 1;
                        if let Some(msg) = bijection_roundtrip(&g)? {
                            report.failures.push(format!("exhaustive: {msg}"));
                        }
                    }
                    let triples = enumerate_triples(pool, f1, f2)?;
                    let images: Vec<TwoCell> = triples.iter().map(to_twocell).collect();
                    for i in 0..triples.len() {
                        for j in i..triples.len() {
                            count += 1;
                            let lhs = ac_equivalent(&triples[i], &triples[j])?;
                            let rhs = cells_equivalent(&images[i].rep, &images[j].rep)?;
                            let direct = triples[i].t == triples[j].t && triples[i].phi == triples[j].phi;
                            if lhs != rhs || (direct && !lhs) {
                                report.failures.push(format!("exhaustive: triples {i}, {j} over {f1} => {f2}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })();
    if let Err(e) = result {
        report.failures.push(format!("enumeration failed: {e}"));
    }
    report.trials += count;
    report.elapsed = start.elapsed();
    report
}

/// Candidate `z: X → A³` for the lemma's conditions (ii) and (iii).
fn z_candidates(pool: &InstancePool, apex: &Arc<FinCategory>) -> Vec<Functor> {
    let mut out = vec![Functor::identity(apex), crate::bf_oracle::skeleton(apex)];
    if apex.num_objects() <= 4 {
        for c in &pool.categories {
            out.extend(all_functors(c, apex));
        }
    }
    out
}

fn tri_equivalence_trial(s: &mut Sampler<'_>) -> Result<Option<String>> {
    let f1 = s.fraction(None, None);
    let (f2, g) = s.cell_from(&f1)?;
    let d = s.rerepresent(&g)?.rep;
    let src = compose_functors(f1.f(), &d.v1)?;
    let tgt = compose_functors(f2.f(), &d.v2)?;
    let betas = all_nat_transfs(&src, &tgt);
    let gamma_p = betas.choose(s.rng()).expect("d.beta is one of them").clone();
    let dp = CellDiagram { beta: gamma_p.clone(), ..d.clone() };
    let (gamma, apex) = (&d.beta, d.apex3().clone());
    let first = cells_equivalent(&d, &dp)?;
    let zs = z_candidates(s.pool, &apex);
    let merges = |z: &Functor| -> Result<bool> { Ok(gamma.pre(z)? == gamma_p.pre(z)?) };
    let mut second = false;
    let mut third = false;
    for z in &zs {
        if merges(z)? {
            second |= in_w(z);
            third |= in_w(&compose_functors(&d.v1, z)?);
        }
    }
    Ok(fail_unless(first == second && second == third, || {
        format!("conditions disagree ({first}, {second}, {third}) over {f1} => {f2}")
    }))
}

/// The three characterizations of equality for 2-cells sharing all but the
/// last 2-cell agree.
pub fn check_lemma_tri_equivalence(pool: &InstancePool, trials: usize) -> LawReport {
    run_law(pool, "lemma-tri-equivalence", trials, tri_equivalence_trial)
}

fn equivalence_relation_trial(s: &mut Sampler<'_>) -> Result<Option<String>> {
    let f1 = s.fraction(None, None);
    let (f2, c0) = s.cell_from(&f1)?;
    // Distinct last 2-cells over the fixed choice are distinct classes.
    let over_choice = enumerate_cells(&f1, &f2)?;
    let base = if over_choice.len() >= 2 {
        let picked: Vec<&TwoCell> = over_choice.choose_multiple(s.rng(), 2).collect();
        [picked[0].clone(), picked[1].clone()]
    } else {
        let c1 = s.cell(&f1, &f2)?.unwrap_or_else(|| c0.clone());
        [c0, c1]
    };
    let mut picks = Vec::with_capacity(3);
    for _ in 0..3 {
        let i = s.rng().random_range(0..2);
        picks.push(s.rerepresent(&base[i])?);
    }
    let eq = |a: &TwoCell, b: &TwoCell| cells_equivalent(&a.rep, &b.rep);
    for a in &picks {
        if !eq(a, a)? {
            return Ok(Some(format!("not reflexive over {f1} => {f2}")));
        }
    }
    let (a, b, c) = (&picks[0], &picks[1], &picks[2]);
    let (ab, ba, bc, ac) = (eq(a, b)?, eq(b, a)?, eq(b, c)?, eq(a, c)?);
    if ab != ba {
        return Ok(Some(format!("not symmetric over {f1} => {f2}")));
    }
    Ok(fail_unless(!(ab && bc) || ac, || format!("not transitive over {f1} => {f2}")))
}

/// Reflexivity, symmetry and transitivity of `cells_equivalent` on
/// re-represented samples; each trial checks three pairs.
pub fn check_equivalence_relation(pool: &InstancePool, trials: usize) -> LawReport {
    run_law(pool, "equivalence-relation", trials, equivalence_relation_trial)
}

fn uw_trial(s: &mut Sampler<'_>) -> Result<Option<String>> {
    let a = s.category();
    let b = s.category();
    let t = s.equivalence_into(&a);
    let f1 = s.functor(&a, &b).expect("functors into a nonempty category exist");
    let f2 = s.functor(&a, &b).expect("functors into a nonempty category exist");
    let src = compose_functors(&f1, &t)?;
    let tgt = compose_functors(&f2, &t)?;
    if let Some(phi) = all_nat_transfs(&src, &tgt).choose(s.rng()) {
        let (z, rho) = bf6_check(&f1, &f2, &t, phi)?;
        if !in_w(&z) || rho.pre(&compose_functors(&t, &z)?)? != phi.pre(&z)? {
            return Ok(Some(format!("BF6 fails for t: {} -> {}", t.dom().name(), t.cod().name())));
        }
    }
    let rhos = all_nat_transfs(&f1, &f2);
    if rhos.is_empty() {
        return Ok(None);
    }
    let r1 = rhos.choose(s.rng()).expect("nonempty").clone();
    let r2 = rhos.choose(s.rng()).expect("nonempty").clone();
    let same_image = cells_equivalent(&uw_on_2(&r1).rep, &uw_on_2(&r2).rep)?;
    let equalized = z_candidates(s.pool, &a)
        .iter()
        .filter(|u| in_w(u))
        .any(|u| r1.pre(u).ok() == r2.pre(u).ok());
    if same_image != equalized || same_image != (r1 == r2) {
        return Ok(Some(format!("U_W is not 2-faithful modulo W on {} -> {}", a.name(), b.name())));
    }
    let rhos3 = all_nat_transfs(&f2, &f2);
    let r3 = rhos3.choose(s.rng()).expect("the identity exists").clone();
    let composite = crate::fincat::vcompose_nat(&r3, &r1)?;
    let lhs = uw_on_2(&composite);
    let rhs = vcomp(&uw_on_2(&r3), &uw_on_2(&r1), None)?;
    Ok(fail_unless(cells_equivalent(&lhs.rep, &rhs.rep)?, || {
        format!("U_W does not preserve vertical composition on {} -> {}", a.name(), b.name())
    }))
}

/// BF6 on sampled `(f1, f2, t, φ)`, 2-faithfulness modulo `W` and
/// preservation of vertical composition by `U_W`.
pub fn check_uw_laws(pool: &InstancePool, trials: usize) -> LawReport {
    run_law(pool, "uw-laws", trials, uw_trial)
}

/// BF1, BF2, BF5, and soundness of the canonical BF3 and BF4 witnesses,
/// exhaustively over the pool. Each checked instance counts as a trial.
pub fn check_bf_axioms(pool: &InstancePool) -> LawReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for c in &pool.categories {
        count += 1;
        if !in_w(&Functor::identity(c)) {
            failures.push(format!("BF1: identity on {} is not in W", c.name()));
        }
    }
    for v in &pool.w_members {
        for w in &pool.w_members {
            if same_cat(w.cod(), v.dom()) {
                count += 1;
                if !compose_functors(v, w).map(|vw| in_w(&vw)).unwrap_or(false) {
                    failures.push(format!("BF2: composite through {} is not in W", v.dom().name()));
                }
            }
        }
    }
    for w in &pool.functors {
        for v in pool.functors_between(w.dom(), w.cod()) {
            if all_nat_transfs(v, w).iter().any(|a| a.is_invertible()) {
                count += 1;
                if in_w(w) != in_w(v) {
                    failures.push(format!("BF5: W is not closed under isomorphism on {} -> {}", w.dom().name(), w.cod().name()));
                }
            }
        }
    }
    for v in &pool.w_members {
        for f in pool.functors.iter().filter(|f| same_cat(f.cod(), v.cod())) {
            count += 1;
            let ok = iso_comma(f, v).is_ok_and(|sq| sq.validate(f, v).is_ok() && in_w(&sq.proj_w));
            if !ok {
                failures.push(format!("BF3: iso-comma over {} is unsound", v.cod().name()));
            }
        }
    }
    for w in &pool.w_members {
        for c in &pool.categories {
            for f1 in pool.functors_between(c, w.dom()) {
                for f2 in pool.functors_between(c, w.dom()) {
                    let (wf1, wf2) = (compose_functors(w, f1).expect("typed"), compose_functors(w, f2).expect("typed"));
                    for alpha in all_nat_transfs(&wf1, &wf2) {
                        count += 1;
                        let ok = bf4_witness(w, f1, f2, &alpha).is_ok_and(|b| {
                            in_w(&b.v)
                                && b.beta.post(w).ok() == alpha.pre(&b.v).ok()
                                && (!alpha.is_invertible() || b.beta.is_invertible())
                        });
                        if !ok {
                            failures.push(format!("BF4: witness unsound for {} -> {}", c.name(), w.cod().name()));
                        }
                    }
                }
            }
        }
    }
    LawReport { law: "bf-axioms".into(), trials: count, failures, elapsed: start.elapsed() }
}

/// Names accepted by [`check_law`].
pub const LAWS: [&str; 13] = [
    "bf-axioms",
    "equivalence-relation",
    "lemma-tri-equivalence",
    "choice-assoc",
    "choice-vcomp",
    "choice-pre",
    "choice-post",
    "pentagon",
    "triangle",
    "interchange",
    "invertibility",
    "appendix-bijection",
    "uw-laws",
];

/// Runs the law named `law`, or `None` if the name is unknown.
pub fn check_law(pool: &InstancePool, law: &str, trials: usize) -> Option<LawReport> {
    Some(match law {
        "bf-axioms" => check_bf_axioms(pool),
        "equivalence-relation" => check_equivalence_relation(pool, trials),
        "lemma-tri-equivalence" => check_lemma_tri_equivalence(pool, trials),
        "choice-assoc" => check_choice_independence(pool, trials, Op::Assoc),
        "choice-vcomp" => check_choice_independence(pool, trials, Op::VComp),
        "choice-pre" => check_choice_independence(pool, trials, Op::Pre),
        "choice-post" => check_choice_independence(pool, trials, Op::Post),
        "pentagon" => check_pentagon(pool, trials),
        "triangle" => check_triangle(pool, trials),
        "interchange" => check_interchange(pool, trials),
        "invertibility" => check_invertibility_criterion(pool, trials),
        "appendix-bijection" => check_appendix_bijection(pool, trials),
        "uw-laws" => check_uw_laws(pool, trials),
        _ => return None,
    })
}

/// Replays a single sampled trial of `law`; `None` means it passes.
pub fn replay(pool: &InstancePool, law: &str, trial: usize) -> Option<String> {
    let f: Trial = match law {
        "equivalence-relation" => equivalence_relation_trial,
        "lemma-tri-equivalence" => tri_equivalence_trial,
        "choice-assoc" => choice_assoc,
        "choice-vcomp" => choice_vcomp,
        "choice-pre" => choice_pre,
        "choice-post" => choice_post,
        "pentagon" => pentagon_trial,
        "triangle" => triangle_trial,
        "interchange" => interchange_trial,
        "invertibility" => invertibility_trial,
        "appendix-bijection" => bijection_trial,
        "uw-laws" => uw_trial,
        _ => return Some(format!("unknown or non-sampled law `{law}`")),
    };
    run_one(pool, law, trial, f)
}
