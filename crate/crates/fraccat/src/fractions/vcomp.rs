//! Vertical and horizontal composition of 2-cells.

use std::sync::Arc;

use super::{
    chain, comp, require_in_w, require_invertible, whisker_post, whisker_pre, CellDiagram, Square, TwoCell,
};
use crate::bf_oracle::lemma_bf3_skeletal;
use crate::error::{Error, Result};
use crate::fincat::{compose_functors, same_cat, FinCategory, Functor, NatTransf};

/// `t1: C → A⁴` in `W`, `t2: C → A⁵` and invertible `rho: u²∘t1 ⇒ u³∘t2`.
#[derive(Clone, Debug)]
pub struct VCompWitness {
    pub apex_c: Arc<FinCategory>,
    pub t1: Functor,
    pub t2: Functor,
    pub rho: NatTransf,
}

impl From<Square> for VCompWitness {
    fn from(sq: Square) -> Self {
        VCompWitness { apex_c: sq.apex, t1: sq.proj_w, t2: sq.proj_f, rho: sq.filler }
    }
}

/// The composable pair `Γ¹ = [A⁴, u¹, u², α¹, β¹]`, `Γ² = [A⁵, u³, u⁴, α², β²]`.
#[derive(Clone, Debug)]
pub struct VCompSetup {
    pub g1: CellDiagram,
    pub g2: CellDiagram,
}

impl VCompSetup {
    pub fn new(g2: &TwoCell, g1: &TwoCell) -> Result<Self> {
        if g1.tgt() != g2.src() {
            return Err(Error::BoundaryMismatch("vcomp: target of Γ1 is not the source of Γ2".into()));
        }
        Ok(VCompSetup { g1: g1.rep.clone(), g2: g2.rep.clone() })
    }

    /// The cospan `(u², u³)` over which the witness square lives.
    pub fn cospan(&self) -> (&Functor, &Functor) {
        (&self.g1.v2, &self.g2.v1)
    }

    /// The square obtained from the relaxed BF3 lemma on `(u², u³)` with `z = w²`.
    pub fn canonical_witness(&self) -> Result<VCompWitness> {
        let w2 = self.g1.tgt_fr.w();
        let (u2, u3) = self.cospan();
        Ok(lemma_bf3_skeletal(u3, w2, u2)?.into())
    }

    pub fn validate(&self, wit: &VCompWitness) -> Result<()> {
        let (u2, u3) = self.cospan();
        if !same_cat(wit.t1.cod(), self.g1.apex3()) || !same_cat(wit.t2.cod(), self.g2.apex3()) {
            return Err(Error::InvalidWitness("t1/t2 have the wrong codomain".into()));
        }
        require_in_w(&wit.t1, "t1")?;
        require_invertible(&wit.rho, "rho")?;
        if *wit.rho.src_f() != compose_functors(u2, &wit.t1)? || *wit.rho.tgt_f() != compose_functors(u3, &wit.t2)? {
            return Err(Error::InvalidWitness("rho is not of type u2.t1 => u3.t2".into()));
        }
        Ok(())
    }

    /// `[C, u¹t¹, u⁴t², (α² t²)·(w² ρ)·(α¹ t¹), (β² t²)·(f² ρ)·(β¹ t¹)]`.
    pub fn compose(&self, wit: &VCompWitness) -> Result<TwoCell> {
        self.validate(wit)?;
        let (g1, g2) = (&self.g1, &self.g2);
        let (w2, f2) = (g1.tgt_fr.w(), g1.tgt_fr.f());
        let (t1, t2, rho) = (&wit.t1, &wit.t2, &wit.rho);
        let xi = chain(&[&g2.alpha.pre(t2)?, &rho.post(w2)?, &g1.alpha.pre(t1)?])?;
        let gamma = chain(&[&g2.beta.pre(t2)?, &rho.post(f2)?, &g1.beta.pre(t1)?])?;
        Ok(TwoCell::from(CellDiagram::new_unchecked(
            g1.src_fr.clone(),
            g2.tgt_fr.clone(),
            comp(&[&g1.v1, t1])?,
            comp(&[&g2.v2, t2])?,
            xi,
            gamma,
        )))
    }
}

/// `Γ2∘Γ1`, using `witness` or the canonical one.
pub fn vcomp(g2: &TwoCell, g1: &TwoCell, witness: Option<&VCompWitness>) -> Result<TwoCell> {
    let setup = VCompSetup::new(g2, g1)?;
    match witness {
        Some(w) => setup.compose(w),
        None => setup.compose(&setup.canonical_witness()?),
    }
}

/// `Δ * Γ = (g² ∘ Γ)·(Δ ∘ f¹)` for `Γ: f¹ ⇒ f²` and `Δ: g¹ ⇒ g²`.
pub fn hcomp(delta: &TwoCell, gamma: &TwoCell) -> Result<TwoCell> {
    let pre = whisker_pre(delta, gamma.src(), None)?;
    let post = whisker_post(delta.tgt(), gamma, None)?;
    vcomp(&post, &pre, None)
}

/// The other bracketing `(Δ ∘ f²)·(g¹ ∘ Γ)`.
pub fn hcomp_other(delta: &TwoCell, gamma: &TwoCell) -> Result<TwoCell> {
    let post = whisker_post(delta.src(), gamma, None)?;
    let pre = whisker_pre(delta, gamma.tgt(), None)?;
    vcomp(&pre, &post, None)
}
