//! Whiskering a 2-cell by a fraction on either side.

use super::{
    chain, comp, compose_with_square, require_eq, require_in_w, require_square, CellDiagram, Fraction, Square,
    TwoCell,
};
use crate::bf_oracle::{bf4_witness, lemma_bf3_skeletal, skeletal_square};
use crate::error::{Error, Result};
use crate::fincat::{same_cat, Functor, NatTransf};

/// Data for `Δ∘f` with `f = (A', w, f)` and `Δ = [B³, u¹, u², α, β]: g¹ ⇒ g²`.
///
/// `sq[m]` is the chosen square `ρᵐ: f∘wᵐ ⇒ vᵐ∘fᵐ` defining `gᵐ∘f`.
#[derive(Clone, Debug)]
pub struct PreWhiskerSetup {
    pub delta: CellDiagram,
    pub f: Fraction,
    pub sq: [Square; 2],
    pub src: Fraction,
    pub tgt: Fraction,
}

/// Squares `σᵐ: fᵐ∘tᵐ ⇒ uᵐ∘hᵐ`, the comparison `φ: wⁱtⁱt³ ⇒ w²t²t⁴`
/// (stored as a square over `(w¹t¹, w²t²)`) and the filler `δ: h¹t³ ⇒ h²t⁴`.
#[derive(Clone, Debug)]
pub struct PreWhiskerWitness {
    pub sigma: [Square; 2],
    pub comparison: Square,
    pub delta: NatTransf,
}

impl PreWhiskerSetup {
    pub fn new(delta: &TwoCell, f: &Fraction) -> Result<Self> {
        if !same_cat(f.tgt(), delta.src().src()) {
            return Err(Error::BoundaryMismatch("whisker_pre: fraction does not end where Δ starts".into()));
        }
        let (src, sq1) = compose_with_square(delta.src(), f)?;
        let (tgt, sq2) = compose_with_square(delta.tgt(), f)?;
        Ok(PreWhiskerSetup { delta: delta.rep.clone(), f: f.clone(), sq: [sq1, sq2], src, tgt })
    }

    fn g(&self, m: usize) -> &Fraction {
        if m == 0 {
            &self.delta.src_fr
        } else {
            &self.delta.tgt_fr
        }
    }

    fn u(&self, m: usize) -> &Functor {
        if m == 0 {
            &self.delta.v1
        } else {
            &self.delta.v2
        }
    }

    /// The cospan `(fᵐ, uᵐ)` for the square `σᵐ`.
    pub fn sigma_cospan(&self, m: usize) -> (&Functor, &Functor) {
        (&self.sq[m].proj_f, self.u(m))
    }

    /// Relaxed BF3 on `(fᵐ, uᵐ)` with `z = vᵐ`.
    pub fn canonical_sigma(&self, m: usize) -> Result<Square> {
        let (fm, um) = self.sigma_cospan(m);
        lemma_bf3_skeletal(um, self.g(m).w(), fm)
    }

    /// The cospan `(w¹t¹, w²t²)` for the comparison square.
    pub fn comparison_cospan(&self, sigma: &[Square; 2]) -> Result<(Functor, Functor)> {
        Ok((
            comp(&[&self.sq[0].proj_w, &sigma[0].proj_w])?,
            comp(&[&self.sq[1].proj_w, &sigma[1].proj_w])?,
        ))
    }

    /// Fills in `δ` by descent along `v¹u¹` of
    /// `(α⁻¹ h²t⁴)·(v²σ² t⁴)·(ρ² t²t⁴)·(f φ)·((ρ¹)⁻¹ t¹t³)·(v¹(σ¹)⁻¹ t³)`.
    pub fn complete(&self, sigma: [Square; 2], comparison: Square) -> Result<PreWhiskerWitness> {
        let target = self.delta_target(&sigma, &comparison)?;
        let v1u1 = comp(&[self.g(0).w(), self.u(0)])?;
        let h1t3 = comp(&[&sigma[0].proj_f, &comparison.proj_w])?;
        let h2t4 = comp(&[&sigma[1].proj_f, &comparison.proj_f])?;
        let delta = bf4_witness(&v1u1, &h1t3, &h2t4, &target)?.beta;
        Ok(PreWhiskerWitness { sigma, comparison, delta })
    }

    fn delta_target(&self, sigma: &[Square; 2], cmp: &Square) -> Result<NatTransf> {
        let d = &self.delta;
        let (v1, v2) = (self.g(0).w(), self.g(1).w());
        let (t3, t4) = (&cmp.proj_w, &cmp.proj_f);
        let (t1, t2) = (&sigma[0].proj_w, &sigma[1].proj_w);
        let h2t4 = comp(&[&sigma[1].proj_f, t4])?;
        let t1t3 = comp(&[t1, t3])?;
        let t2t4 = comp(&[t2, t4])?;
        chain(&[
            &d.alpha.inv()?.pre(&h2t4)?,
            &sigma[1].filler.pre(t4)?.post(v2)?,
            &self.sq[1].filler.pre(&t2t4)?,
            &cmp.filler.post(self.f.f())?,
            &self.sq[0].filler.inv()?.pre(&t1t3)?,
            &sigma[0].filler.inv()?.pre(t3)?.post(v1)?,
        ])
    }

    pub fn canonical_witness(&self) -> Result<PreWhiskerWitness> {
        let sigma = [self.canonical_sigma(0)?, self.canonical_sigma(1)?];
        let (x, y) = self.comparison_cospan(&sigma)?;
        let comparison = skeletal_square(&x, &y)?;
        self.complete(sigma, comparison)
    }

    pub fn validate(&self, wit: &PreWhiskerWitness) -> Result<()> {
        for m in 0..2 {
            let (fm, um) = self.sigma_cospan(m);
            require_square(&wit.sigma[m], fm, um, "sigma")?;
            require_in_w(&wit.sigma[m].proj_w, "t (sigma square)")?;
        }
        let (x, y) = self.comparison_cospan(&wit.sigma)?;
        require_square(&wit.comparison, &x, &y, "comparison")?;
        require_in_w(&wit.comparison.proj_w, "t3")?;
        let v1u1 = comp(&[self.g(0).w(), self.u(0)])?;
        let target = self.delta_target(&wit.sigma, &wit.comparison)?;
        require_eq(&wit.delta.post(&v1u1)?, &target, "delta constraint")
    }

    /// `[D⁵, t¹t³, t²t⁴, w∘φ, ξ]` with
    /// `ξ = (g²(σ²)⁻¹ t⁴)·(β h²t⁴)·(g¹u¹δ)·(g¹σ¹ t³)`.
    pub fn compose(&self, wit: &PreWhiskerWitness) -> Result<TwoCell> {
        self.validate(wit)?;
        let d = &self.delta;
        let (g1, g2) = (self.g(0).f(), self.g(1).f());
        let (t3, t4) = (&wit.comparison.proj_w, &wit.comparison.proj_f);
        let [s1, s2] = &wit.sigma;
        let h2t4 = comp(&[&s2.proj_f, t4])?;
        let g1u1 = comp(&[g1, self.u(0)])?;
        let xi = chain(&[
            &s2.filler.inv()?.pre(t4)?.post(g2)?,
            &d.beta.pre(&h2t4)?,
            &wit.delta.post(&g1u1)?,
            &s1.filler.pre(t3)?.post(g1)?,
        ])?;
        let diagram = CellDiagram::new(
            self.src.clone(),
            self.tgt.clone(),
            comp(&[&s1.proj_w, t3])?,
            comp(&[&s2.proj_w, t4])?,
            wit.comparison.filler.post(self.f.w())?,
            xi,
        )?;
        Ok(TwoCell::from(diagram))
    }
}

/// `Δ∘f`, using `witness` or the canonical one.
pub fn whisker_pre(delta: &TwoCell, f: &Fraction, witness: Option<&PreWhiskerWitness>) -> Result<TwoCell> {
    let setup = PreWhiskerSetup::new(delta, f)?;
    match witness {
        Some(w) => setup.compose(w),
        None => setup.compose(&setup.canonical_witness()?),
    }
}

/// Data for `g∘Γ` with `g = (B', u, g)` and `Γ = [A³, v¹, v², α, β]: f¹ ⇒ f²`.
///
/// `sq[m]` is the chosen square `ρᵐ: fᵐ∘uᵐ ⇒ u∘hᵐ` defining `g∘fᵐ`.
#[derive(Clone, Debug)]
pub struct PostWhiskerSetup {
    pub g: Fraction,
    pub gamma: CellDiagram,
    pub sq: [Square; 2],
    pub src: Fraction,
    pub tgt: Fraction,
}

/// Squares `η¹: v¹u³ ⇒ u¹u⁴`, `η²: v²u⁵ ⇒ u²u⁶`, `η³: u³u⁷ ⇒ u⁵u⁸` and
/// the filler `λ: h¹u⁴u⁷ ⇒ h²u⁶u⁸`.
#[derive(Clone, Debug)]
pub struct PostWhiskerWitness {
    pub eta: [Square; 2],
    pub eta3: Square,
    pub lambda: NatTransf,
}

impl PostWhiskerSetup {
    pub fn new(g: &Fraction, gamma: &TwoCell) -> Result<Self> {
        if !same_cat(g.src(), gamma.src().tgt()) {
            return Err(Error::BoundaryMismatch("whisker_post: Γ does not end where the fraction starts".into()));
        }
        let (src, sq1) = compose_with_square(g, gamma.src())?;
        let (tgt, sq2) = compose_with_square(g, gamma.tgt())?;
        Ok(PostWhiskerSetup { g: g.clone(), gamma: gamma.rep.clone(), sq: [sq1, sq2], src, tgt })
    }

    fn fr(&self, m: usize) -> &Fraction {
        if m == 0 {
            &self.gamma.src_fr
        } else {
            &self.gamma.tgt_fr
        }
    }

    fn v(&self, m: usize) -> &Functor {
        if m == 0 {
            &self.gamma.v1
        } else {
            &self.gamma.v2
        }
    }

    /// The cospan `(vᵐ, uᵐ)` for the square `ηᵐ`.
    pub fn eta_cospan(&self, m: usize) -> (&Functor, &Functor) {
        (self.v(m), &self.sq[m].proj_w)
    }

    /// The cospan `(u³, u⁵)` for the square `η³`.
    pub fn eta3_cospan<'a>(&self, eta: &'a [Square; 2]) -> (&'a Functor, &'a Functor) {
        (&eta[0].proj_w, &eta[1].proj_w)
    }

    /// Fills in `λ` by descent along `u` of
    /// `(ρ² u⁶u⁸)·(f²η² u⁸)·(β u⁵u⁸)·(f¹v¹η³)·(f¹(η¹)⁻¹u⁷)·((ρ¹)⁻¹ u⁴u⁷)`.
    pub fn complete(&self, eta: [Square; 2], eta3: Square) -> Result<PostWhiskerWitness> {
        let target = self.lambda_target(&eta, &eta3)?;
        let h1u4u7 = comp(&[&self.sq[0].proj_f, &eta[0].proj_f, &eta3.proj_w])?;
        let h2u6u8 = comp(&[&self.sq[1].proj_f, &eta[1].proj_f, &eta3.proj_f])?;
        let lambda = bf4_witness(self.g.w(), &h1u4u7, &h2u6u8, &target)?.beta;
        Ok(PostWhiskerWitness { eta, eta3, lambda })
    }

    fn lambda_target(&self, eta: &[Square; 2], eta3: &Square) -> Result<NatTransf> {
        let (f1, f2) = (self.fr(0).f(), self.fr(1).f());
        let (u4, u5, u6) = (&eta[0].proj_f, &eta[1].proj_w, &eta[1].proj_f);
        let (u7, u8) = (&eta3.proj_w, &eta3.proj_f);
        let f1v1 = comp(&[f1, self.v(0)])?;
        chain(&[
            &self.sq[1].filler.pre(&comp(&[u6, u8])?)?,
            &eta[1].filler.pre(u8)?.post(f2)?,
            &self.gamma.beta.pre(&comp(&[u5, u8])?)?,
            &eta3.filler.post(&f1v1)?,
            &eta[0].filler.inv()?.pre(u7)?.post(f1)?,
            &self.sq[0].filler.inv()?.pre(&comp(&[u4, u7])?)?,
        ])
    }

    pub fn canonical_witness(&self) -> Result<PostWhiskerWitness> {
        let eta = [
            skeletal_square(self.eta_cospan(0).0, self.eta_cospan(0).1)?,
            skeletal_square(self.eta_cospan(1).0, self.eta_cospan(1).1)?,
        ];
        let (x, y) = self.eta3_cospan(&eta);
        let eta3 = skeletal_square(x, y)?;
        self.complete(eta, eta3)
    }

    pub fn validate(&self, wit: &PostWhiskerWitness) -> Result<()> {
        for m in 0..2 {
            let (x, y) = self.eta_cospan(m);
            require_square(&wit.eta[m], x, y, "eta")?;
            require_in_w(&wit.eta[m].proj_w, "u3/u5")?;
        }
        let (x, y) = self.eta3_cospan(&wit.eta);
        require_square(&wit.eta3, x, y, "eta3")?;
        require_in_w(&wit.eta3.proj_w, "u7")?;
        let target = self.lambda_target(&wit.eta, &wit.eta3)?;
        require_eq(&wit.lambda.post(self.g.w())?, &target, "lambda constraint")
    }

    /// `[D⁵, u⁴u⁷, u⁶u⁸, μ, g∘λ]` with
    /// `μ = (w²η² u⁸)·(α u⁵u⁸)·(w¹v¹η³)·(w¹(η¹)⁻¹ u⁷)`.
    pub fn compose(&self, wit: &PostWhiskerWitness) -> Result<TwoCell> {
        self.validate(wit)?;
        let (w1, w2) = (self.fr(0).w(), self.fr(1).w());
        let [e1, e2] = &wit.eta;
        let (u7, u8) = (&wit.eta3.proj_w, &wit.eta3.proj_f);
        let w1v1 = comp(&[w1, self.v(0)])?;
        let mu = chain(&[
            &e2.filler.pre(u8)?.post(w2)?,
            &self.gamma.alpha.pre(&comp(&[&e2.proj_w, u8])?)?,
            &wit.eta3.filler.post(&w1v1)?,
            &e1.filler.inv()?.pre(u7)?.post(w1)?,
        ])?;
        let diagram = CellDiagram::new(
            self.src.clone(),
            self.tgt.clone(),
            comp(&[&e1.proj_f, u7])?,
            comp(&[&e2.proj_f, u8])?,
            mu,
            wit.lambda.post(self.g.f())?,
        )?;
        Ok(TwoCell::from(diagram))
    }
}

/// `g∘Γ`, using `witness` or the canonical one.
pub fn whisker_post(g: &Fraction, gamma: &TwoCell, witness: Option<&PostWhiskerWitness>) -> Result<TwoCell> {
    let setup = PostWhiskerSetup::new(g, gamma)?;
    match witness {
        Some(w) => setup.compose(w),
        None => setup.compose(&setup.canonical_witness()?),
    }
}
