//! Associators and unitors.

use std::sync::Arc;

use super::{
    chain, comp, compose_with_square, identity_cell, require_eq, require_in_w, require_invertible, require_square,
    CellDiagram, Fraction, Square, TwoCell,
};
use crate::bf_oracle::{bf4_witness, skeletal_square};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, Functor, NatTransf};

/// `u⁴: A⁴ → A²`, `u⁵: A⁴ → A³`, `gamma: u¹u²u⁴ ⇒ u³u⁵` and the induced
/// `omega: f¹u²u⁴ ⇒ v¹f²u⁵`, `rho: l u⁴ ⇒ g¹f²u⁵`.
#[derive(Clone, Debug)]
pub struct AssocWitness {
    pub apex4: Arc<FinCategory>,
    pub u4: Functor,
    pub u5: Functor,
    pub gamma: NatTransf,
    pub omega: NatTransf,
    pub rho: NatTransf,
}

/// The four chosen squares behind `h∘(g∘f)` and `(h∘g)∘f`, for
/// `f = (A', u, f)`, `g = (B', v, g)`, `h = (C', w, h)`:
///
/// * `delta: f u¹ ⇒ v f¹` defines `g∘f`,
/// * `sigma: g f¹ u² ⇒ w l` defines `h∘(g∘f)`,
/// * `xi: g v¹ ⇒ w g¹` defines `h∘g`,
/// * `eta: f u³ ⇒ v v¹ f²` defines `(h∘g)∘f`.
#[derive(Clone, Debug)]
pub struct AssocSetup {
    pub h: Fraction,
    pub g: Fraction,
    pub f: Fraction,
    pub delta: Square,
    pub sigma: Square,
    pub xi: Square,
    pub eta: Square,
    pub src: Fraction,
    pub tgt: Fraction,
}

impl AssocSetup {
    pub fn new(h: &Fraction, g: &Fraction, f: &Fraction) -> Result<Self> {
        let (gf, delta) = compose_with_square(g, f)?;
        let (src, sigma) = compose_with_square(h, &gf)?;
        let (hg, xi) = compose_with_square(h, g)?;
        let (tgt, eta) = compose_with_square(&hg, f)?;
        Ok(AssocSetup { h: h.clone(), g: g.clone(), f: f.clone(), delta, sigma, xi, eta, src, tgt })
    }

    /// The cospan `(u¹u², u³)` over which `gamma` lives.
    pub fn cospan(&self) -> Result<(Functor, Functor)> {
        Ok((comp(&[&self.delta.proj_w, &self.sigma.proj_w])?, self.eta.proj_w.clone()))
    }

    /// Completes a square over [`AssocSetup::cospan`] to a witness by
    /// descending `(η u⁵)·(f γ)·(δ⁻¹ u²u⁴)` along `v` and
    /// `(ξ f²u⁵)·(g ω)·(σ⁻¹ u⁴)` along `w`.
    pub fn complete(&self, sq: Square) -> Result<AssocWitness> {
        let (u4, u5, gamma) = (sq.proj_w, sq.proj_f, sq.filler);
        let omega_target = self.omega_target(&u4, &u5, &gamma)?;
        let f1u2u4 = comp(&[&self.delta.proj_f, &self.sigma.proj_w, &u4])?;
        let v1f2u5 = comp(&[&self.xi.proj_w, &self.eta.proj_f, &u5])?;
        let omega = bf4_witness(self.g.w(), &f1u2u4, &v1f2u5, &omega_target)?.beta;
        let rho_target = self.rho_target(&u4, &u5, &omega)?;
        let lu4 = comp(&[&self.sigma.proj_f, &u4])?;
        let g1f2u5 = comp(&[&self.xi.proj_f, &self.eta.proj_f, &u5])?;
        let rho = bf4_witness(self.h.w(), &lu4, &g1f2u5, &rho_target)?.beta;
        Ok(AssocWitness { apex4: u4.dom().clone(), u4, u5, gamma, omega, rho })
    }

    fn omega_target(&self, u4: &Functor, u5: &Functor, gamma: &NatTransf) -> Result<NatTransf> {
        let u2u4 = comp(&[&self.sigma.proj_w, u4])?;
        chain(&[&self.eta.filler.pre(u5)?, &gamma.post(self.f.f())?, &self.delta.filler.inv()?.pre(&u2u4)?])
    }

    fn rho_target(&self, u4: &Functor, u5: &Functor, omega: &NatTransf) -> Result<NatTransf> {
        let f2u5 = comp(&[&self.eta.proj_f, u5])?;
        chain(&[&self.xi.filler.pre(&f2u5)?, &omega.post(self.g.f())?, &self.sigma.filler.inv()?.pre(u4)?])
    }

    /// `A⁴` is the skeletal square over `(u¹u², u³)`.
    pub fn canonical_witness(&self) -> Result<AssocWitness> {
        let (x, y) = self.cospan()?;
        self.complete(skeletal_square(&x, &y)?)
    }

    pub fn validate(&self, wit: &AssocWitness) -> Result<()> {
        let (x, y) = self.cospan()?;
        let sq = Square {
            apex: wit.apex4.clone(),
            proj_w: wit.u4.clone(),
            proj_f: wit.u5.clone(),
            filler: wit.gamma.clone(),
        };
        require_square(&sq, &x, &y, "gamma")?;
        require_in_w(&comp(&[self.f.w(), &x, &wit.u4])?, "u.u1.u2.u4")?;
        require_invertible(&wit.omega, "omega")?;
        require_invertible(&wit.rho, "rho")?;
        let target = self.omega_target(&wit.u4, &wit.u5, &wit.gamma)?;
        require_eq(&wit.omega.post(self.g.w())?, &target, "omega constraint")?;
        let target = self.rho_target(&wit.u4, &wit.u5, &wit.omega)?;
        require_eq(&wit.rho.post(self.h.w())?, &target, "rho constraint")
    }

    /// `[A⁴, u⁴, u⁵, u∘γ, h∘ρ]`.
    pub fn cell(&self, wit: &AssocWitness) -> Result<TwoCell> {
        self.validate(wit)?;
        let diagram = CellDiagram::new(
            self.src.clone(),
            self.tgt.clone(),
            wit.u4.clone(),
            wit.u5.clone(),
            wit.gamma.post(self.f.w())?,
            wit.rho.post(self.h.f())?,
        )?;
        Ok(TwoCell::from(diagram))
    }
}

/// The associator `h∘(g∘f) ⇒ (h∘g)∘f`, using `witness` or the canonical one.
pub fn associator(h: &Fraction, g: &Fraction, f: &Fraction, witness: Option<&AssocWitness>) -> Result<TwoCell> {
    let setup = AssocSetup::new(h, g, f)?;
    match witness {
        Some(w) => setup.cell(w),
        None => setup.cell(&setup.canonical_witness()?),
    }
}

/// Left and right unitors of `f`. Composition with identity fractions is
/// strictly unital, so both are identity 2-cells.
pub fn unitors(f: &Fraction) -> Result<(TwoCell, TwoCell)> {
    let left = super::compose_fractions(&Fraction::identity(f.tgt()), f)?;
    let right = super::compose_fractions(f, &Fraction::identity(f.src()))?;
    if left != *f || right != *f {
        return Err(Error::HypothesisFailed("composition with an identity is not strict".into()));
    }
    Ok((identity_cell(f), identity_cell(f)))
}
