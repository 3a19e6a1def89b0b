//! Deciding equality of 2-cells through a common refinement.

use std::sync::Arc;

use super::{chain, comp, require_eq, require_invertible, require_in_w, CellDiagram, Fraction, TwoCell};
use crate::bf_oracle::{bf4_witness, iso_comma, lemma_bf3_skeletal, lemma_w_section, lift_along};
use crate::error::{Error, Result};
use crate::fincat::{compose_functors, same_cat, FinCategory, Functor, NatTransf};

/// How the first square of the refinement is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefineStrategy {
    /// `Square` for small inputs, otherwise the cheaper lift.
    Auto,
    /// Section of `p` followed by the relaxed BF3 square on `(p, r)`.
    Square,
    /// Keep the second apex and lift `r` through `p`.
    LiftLeft,
    /// Keep the first apex and lift `p` through `r`.
    LiftRight,
}

/// Above this product of morphism counts `Auto` stops using the iso-comma
/// square, whose apex grows with the product of the two apexes.
const SQUARE_LIMIT: usize = 2048;

/// Two representatives rewritten over shared data `(A³, v¹, v², α)`, so that
/// they differ at most in their last 2-cells `gamma` and `gamma_p`.
#[derive(Clone, Debug)]
pub struct CommonRefinement {
    pub src_fr: Fraction,
    pub tgt_fr: Fraction,
    pub apex3: Arc<FinCategory>,
    pub v1: Functor,
    pub v2: Functor,
    pub alpha: NatTransf,
    pub gamma: NatTransf,
    pub gamma_p: NatTransf,
    /// `t1: A³ → E`, into the apex of the first representative.
    pub t1: Functor,
    /// `t2: A³ → F`, into the apex of the second representative.
    pub t2: Functor,
    /// `eps: p∘t1 ⇒ r∘t2`.
    pub eps: NatTransf,
    /// `kappa: s∘t2 ⇒ q∘t1`.
    pub kappa: NatTransf,
}

impl CommonRefinement {
    pub fn left(&self) -> CellDiagram {
        self.diagram(&self.gamma)
    }

    pub fn right(&self) -> CellDiagram {
        self.diagram(&self.gamma_p)
    }

    fn diagram(&self, beta: &NatTransf) -> CellDiagram {
        CellDiagram::new_unchecked(
            self.src_fr.clone(),
            self.tgt_fr.clone(),
            self.v1.clone(),
            self.v2.clone(),
            self.alpha.clone(),
            beta.clone(),
        )
    }

    pub fn agree(&self) -> bool {
        self.gamma == self.gamma_p
    }

    /// The data `(A⁴, z, z', σ¹, σ²)` relating the two inputs.
    pub fn witness(&self) -> RefinementWitness {
        RefinementWitness {
            apex4: self.apex3.clone(),
            z: self.t1.clone(),
            zp: self.t2.clone(),
            sigma1: self.eps.inverse().expect("eps is invertible"),
            sigma2: self.kappa.inverse().expect("kappa is invertible"),
        }
    }
}

/// Data `(A⁴, z, z', σ¹, σ²)` with `σ¹: v'¹z' ⇒ v¹z` and `σ²: v²z ⇒ v'²z'`
/// exhibiting two representatives as the same 2-cell.
#[derive(Clone, Debug)]
pub struct RefinementWitness {
    pub apex4: Arc<FinCategory>,
    pub z: Functor,
    pub zp: Functor,
    pub sigma1: NatTransf,
    pub sigma2: NatTransf,
}

impl RefinementWitness {
    /// Checks every condition relating `d` and `dp` through this witness.
    pub fn verify(&self, d: &CellDiagram, dp: &CellDiagram) -> Result<()> {
        let (w1, f1) = (d.src_fr.w(), d.src_fr.f());
        let (w2, f2) = (d.tgt_fr.w(), d.tgt_fr.f());
        require_in_w(&comp(&[w1, &d.v1, &self.z])?, "w1.v1.z")?;
        require_invertible(&self.sigma1, "sigma1")?;
        require_invertible(&self.sigma2, "sigma2")?;
        let lhs = chain(&[&self.sigma2.post(w2)?, &d.alpha.pre(&self.z)?, &self.sigma1.post(w1)?])?;
        require_eq(&lhs, &dp.alpha.pre(&self.zp)?, "alpha pasting")?;
        let lhs = chain(&[&self.sigma2.post(f2)?, &d.beta.pre(&self.z)?, &self.sigma1.post(f1)?])?;
        require_eq(&lhs, &dp.beta.pre(&self.zp)?, "beta pasting")
    }
}

fn same_boundary(d1: &CellDiagram, d2: &CellDiagram) -> Result<()> {
    if d1.src_fr != d2.src_fr || d1.tgt_fr != d2.tgt_fr {
        return Err(Error::BoundaryMismatch("2-cells have different boundaries".into()));
    }
    Ok(())
}

struct FirstStep {
    t1: Functor,
    t2: Functor,
    eps: NatTransf,
}

/// `t1: G → E`, `t2: G → F` and `eps: p∘t1 ⇒ r∘t2` with `p∘t1 ∈ W`.
fn first_step(w1: &Functor, p: &Functor, r: &Functor, strategy: RefineStrategy) -> Result<FirstStep> {
    let strategy = match strategy {
        RefineStrategy::Auto => {
            let (e, f) = (p.dom().num_morphisms(), r.dom().num_morphisms());
            if e * f <= SQUARE_LIMIT {
                RefineStrategy::Square
            } else if f <= e {
                RefineStrategy::LiftLeft
            } else {
                RefineStrategy::LiftRight
            }
        }
        s => s,
    };
    match strategy {
        RefineStrategy::Square | RefineStrategy::Auto => {
            let v = lemma_w_section(p, w1)?;
            let pv = compose_functors(p, &v)?;
            let sq = lemma_bf3_skeletal(r, w1, &pv)?;
            Ok(FirstStep { t1: compose_functors(&v, &sq.proj_w)?, t2: sq.proj_f, eps: sq.filler })
        }
        RefineStrategy::LiftLeft => {
            let sq = lift_along(p, r)?;
            Ok(FirstStep { t1: sq.proj_f, t2: sq.proj_w, eps: sq.filler.inv()? })
        }
        RefineStrategy::LiftRight => {
            let sq = lift_along(r, p)?;
            Ok(FirstStep { t1: sq.proj_w, t2: sq.proj_f, eps: sq.filler })
        }
    }
}

/// The first representative's shared part `(p, q, ς)`.
struct Head<'a> {
    p: &'a Functor,
    q: &'a Functor,
    sigma: &'a NatTransf,
}

/// Refines `(E, p, q, ς)` against `(F, r, s, η, μ)`.
///
/// First a square `eps: p∘t1 ⇒ r∘t2` with `p∘t1 ∈ W`. Then `kappa: s∘t2 ⇒
/// q∘t1` is the descent along `w²` of `(ς t1)·(w¹ eps)⁻¹·(η t2)⁻¹`, so the
/// comparison square is the identity and no second iso-comma is needed.
/// Returns the refinement with `gamma` left as the transported `μ`.
fn refine_head(head: Head<'_>, d2: &CellDiagram, strategy: RefineStrategy) -> Result<CommonRefinement> {
    let (w1, f1) = (d2.src_fr.w(), d2.src_fr.f());
    let (w2, f2) = (d2.tgt_fr.w(), d2.tgt_fr.f());
    let Head { p, q, sigma } = head;
    let (r, s, eta, mu) = (&d2.v1, &d2.v2, &d2.alpha, &d2.beta);

    let FirstStep { t1, t2, eps } = first_step(w1, p, r, strategy)?;
    let st2 = compose_functors(s, &t2)?;
    let qt1 = compose_functors(q, &t1)?;
    let to_descend = chain(&[&sigma.pre(&t1)?, &eps.post(w1)?.inv()?, &eta.pre(&t2)?.inv()?])?;
    let bf4 = bf4_witness(w2, &st2, &qt1, &to_descend)?;
    let kappa = bf4.beta;

    let gamma_p = chain(&[&kappa.post(f2)?, &mu.pre(&t2)?, &eps.post(f1)?])?;
    Ok(CommonRefinement {
        src_fr: d2.src_fr.clone(),
        tgt_fr: d2.tgt_fr.clone(),
        apex3: t1.dom().clone(),
        v1: compose_functors(p, &t1)?,
        v2: qt1,
        alpha: sigma.pre(&t1)?,
        gamma: gamma_p.clone(),
        gamma_p,
        t1,
        t2,
        eps,
        kappa,
    })
}

/// Refines `(E, p, q, ς, ψ)` and `(F, r, s, η, μ)` to shared `(A³, v¹, v², α)`.
fn refine(d1: &CellDiagram, d2: &CellDiagram, strategy: RefineStrategy) -> Result<CommonRefinement> {
    same_boundary(d1, d2)?;
    let head = Head { p: &d1.v1, q: &d1.v2, sigma: &d1.alpha };
    let mut cr = refine_head(head, d2, strategy)?;
    cr.gamma = d1.beta.pre(&cr.t1)?;
    Ok(cr)
}

pub fn common_refine(g: &TwoCell, gp: &TwoCell) -> Result<CommonRefinement> {
    refine(&g.rep, &gp.rep, RefineStrategy::Auto)
}

pub fn common_refine_with(g: &TwoCell, gp: &TwoCell, strategy: RefineStrategy) -> Result<CommonRefinement> {
    refine(&g.rep, &gp.rep, strategy)
}

/// Whether two representatives define the same 2-cell. After refinement the
/// two last 2-cells must agree after some `z ∈ W`; whiskering by an
/// equivalence is injective, so this is the test `gamma == gamma_p`.
pub fn cells_equivalent(d1: &CellDiagram, d2: &CellDiagram) -> Result<bool> {
    cells_equivalent_with(d1, d2, RefineStrategy::Auto).map(|(eq, _)| eq)
}

/// As [`cells_equivalent`], also returning a verified witness when equal.
pub fn cells_equivalent_with(
    d1: &CellDiagram,
    d2: &CellDiagram,
    strategy: RefineStrategy,
) -> Result<(bool, Option<RefinementWitness>)> {
    if d1 == d2 {
        let id = Functor::identity(d1.apex3());
        let witness = RefinementWitness {
            apex4: d1.apex3().clone(),
            z: id.clone(),
            zp: id,
            sigma1: NatTransf::identity(&d1.v1),
            sigma2: NatTransf::identity(&d1.v2),
        };
        return Ok((true, Some(witness)));
    }
    let cr = refine(d1, d2, strategy)?;
    if cr.agree() {
        Ok((true, Some(cr.witness())))
    } else {
        Ok((false, None))
    }
}

/// A representative `(A³, p∘t, q∘t, ς∘t, φ)` over the fixed choice
/// `(E, p, q, ς) = iso_comma(w¹, w²)`.
pub fn normalize_to_choice(g: &TwoCell) -> Result<CellDiagram> {
    normalize_with(g, RefineStrategy::Auto).map(|(d, _)| d)
}

/// Normal form together with the map `t` into the choice apex.
pub(crate) fn normalize_with(g: &TwoCell, strategy: RefineStrategy) -> Result<(CellDiagram, Functor)> {
    let d = &g.rep;
    let choice = iso_comma(d.src_fr.w(), d.tgt_fr.w())?;
    if same_cat(d.apex3(), &choice.apex)
        && d.v1 == choice.proj_w
        && d.v2 == choice.proj_f
        && d.alpha == choice.filler
    {
        return Ok((d.clone(), Functor::identity(d.apex3())));
    }
    let strategy = match strategy {
        RefineStrategy::Auto => {
            let (e, f) = (choice.apex.num_morphisms(), d.apex3().num_morphisms());
            if e * f <= SQUARE_LIMIT {
                RefineStrategy::Square
            } else {
                RefineStrategy::LiftLeft
            }
        }
        s => s,
    };
    let head = Head { p: &choice.proj_w, q: &choice.proj_f, sigma: &choice.filler };
    let cr = refine_head(head, d, strategy)?;
    Ok((cr.right(), cr.t1))
}
