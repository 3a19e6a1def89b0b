//! Almost-canonical representatives of 2-cells.
//!
//! For parallel fractions `(A¹, w¹, f¹)` and `(A², w², f²)` let
//! `(E, p, q, ς)` be the fixed square `iso_comma(w¹, w²)`. A triple
//! `(A³, t, φ)` with `t: A³ → E` in `W` and `φ: f¹pt ⇒ f²qt` determines the
//! 2-cell `[A³, pt, qt, ςt, φ]`, and every 2-cell arises this way.

use std::sync::Arc;

use crate::bf_oracle::{in_w, iso_comma, lemma_w_section, IsoCommaSquare};
use crate::error::{Error, Result};
use crate::fincat::{compose_functors, fcomp, same_cat, vchain, FinCategory, Functor, NatTransf};
use crate::fractions::{cells_equivalent, normalize_with, CellDiagram, Fraction, RefineStrategy, TwoCell};

#[derive(Clone, Debug)]
pub struct AlmostCanonical {
    pub src_fr: Fraction,
    pub tgt_fr: Fraction,
    pub choice: IsoCommaSquare,
    pub t: Functor,
    pub phi: NatTransf,
}

impl AlmostCanonical {
    pub fn new(src_fr: Fraction, tgt_fr: Fraction, t: Functor, phi: NatTransf) -> Result<Self> {
        let choice = iso_comma(src_fr.w(), tgt_fr.w())?;
        let a = AlmostCanonical { src_fr, tgt_fr, choice, t, phi };
        a.validate()?;
        Ok(a)
    }

    pub fn apex3(&self) -> &Arc<FinCategory> {
        self.t.dom()
    }

    pub fn validate(&self) -> Result<()> {
        if !same_cat(self.t.cod(), &self.choice.apex) {
            return Err(Error::BoundaryMismatch("t does not land in the choice apex".into()));
        }
        if !in_w(&self.t) {
            return Err(Error::NotInW("t is not an equivalence".into()));
        }
        let src = fcomp(&[self.src_fr.f(), &self.choice.proj_w, &self.t])?;
        let tgt = fcomp(&[self.tgt_fr.f(), &self.choice.proj_f, &self.t])?;
        if *self.phi.src_f() != src || *self.phi.tgt_f() != tgt {
            return Err(Error::BoundaryMismatch("phi is not of type f1.p.t => f2.q.t".into()));
        }
        self.phi.validate()
    }

    /// The triple `(A⁴, u, u', σ)` relating `self` to `other`, checked
    /// directly: `u ∈ W`, `σ: t∘u ⇒ t'∘u'` invertible, and
    /// `(f²qσ)·(φu)·(f¹pσ⁻¹) = φ'u'`.
    pub fn verify_relation(&self, other: &AlmostCanonical, u: &Functor, up: &Functor, sigma: &NatTransf) -> Result<()> {
        if !in_w(u) {
            return Err(Error::InvalidWitness("u is not in W".into()));
        }
        let sigma_inv = sigma.inverse().ok_or_else(|| Error::InvalidWitness("sigma is not invertible".into()))?;
        let f1p = compose_functors(self.src_fr.f(), &self.choice.proj_w)?;
        let f2q = compose_functors(self.tgt_fr.f(), &self.choice.proj_f)?;
        let lhs = vchain(&[&sigma.post(&f2q)?, &self.phi.pre(u)?, &sigma_inv.post(&f1p)?])?;
        if lhs != other.phi.pre(up)? {
            return Err(Error::InvalidWitness("pasting condition fails".into()));
        }
        Ok(())
    }
}

/// `[A³, p∘t, q∘t, ς∘t, φ]`.
pub fn to_twocell(a: &AlmostCanonical) -> TwoCell {
    let c = &a.choice;
    let diagram = CellDiagram::new(
        a.src_fr.clone(),
        a.tgt_fr.clone(),
        compose_functors(&c.proj_w, &a.t).expect("t lands in the choice apex"),
        compose_functors(&c.proj_f, &a.t).expect("t lands in the choice apex"),
        c.filler.pre(&a.t).expect("t lands in the choice apex"),
        a.phi.clone(),
    )
    .expect("an almost-canonical triple induces a valid diagram");
    TwoCell::from(diagram)
}

/// Normalizes `g` over the fixed choice, then upgrades `t` into `W`.
pub fn from_twocell(g: &TwoCell) -> Result<AlmostCanonical> {
    let choice = iso_comma(g.src().w(), g.tgt().w())?;
    let (n, t) = normalize_with(g, RefineStrategy::Auto)?;
    let r = lemma_w_section(&t, &choice.proj_w)?;
    let t = compose_functors(&t, &r)?;
    let phi = n.beta.pre(&r)?;
    AlmostCanonical::new(g.src().clone(), g.tgt().clone(), t, phi)
}

/// Decided through the induced 2-cells.
pub fn ac_equivalent(a: &AlmostCanonical, b: &AlmostCanonical) -> Result<bool> {
    if a.src_fr != b.src_fr || a.tgt_fr != b.tgt_fr {
        return Err(Error::BoundaryMismatch("triples have different boundaries".into()));
    }
    cells_equivalent(&to_twocell(a).rep, &to_twocell(b).rep)
}
