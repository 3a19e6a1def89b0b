//! The bicategory of fractions: fraction 1-cells, 2-cells as classes of cell
//! diagrams, and every composition the localization needs.

mod assoc;
mod equiv;
mod invert;
mod vcomp;
mod whisker;

use std::fmt;
use std::sync::Arc;

use crate::bf_oracle::{descend_along, in_w, iso_comma_raw, IsoCommaSquare};
use crate::error::{Error, Result};
use crate::fincat::{compose_functors, fcomp, same_cat, FinCategory, Functor, NatTransf};

pub use assoc::{associator, unitors, AssocSetup, AssocWitness};
pub use equiv::{
    cells_equivalent, cells_equivalent_with, common_refine, common_refine_with, normalize_to_choice,
    CommonRefinement, RefineStrategy, RefinementWitness,
};
pub(crate) use equiv::normalize_with;
pub use invert::{invert, is_invertible, is_invertible_search};
pub use vcomp::{hcomp, hcomp_other, vcomp, VCompSetup, VCompWitness};
pub use whisker::{
    whisker_post, whisker_pre, PostWhiskerSetup, PostWhiskerWitness, PreWhiskerSetup, PreWhiskerWitness,
};

/// A square over a cospan `(x, y)`: `filler: x∘proj_w ⇒ y∘proj_f`. Witness
/// bundles are made of these.
pub type Square = IsoCommaSquare;

/// A 1-cell `(A', w, f)` from `src = cod w` to `tgt = cod f`, with `w ∈ W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    w: Functor,
    f: Functor,
}

impl Fraction {
    pub fn new(w: Functor, f: Functor) -> Result<Self> {
        if !same_cat(w.dom(), f.dom()) {
            return Err(Error::DomainMismatch("fraction legs have different domains".into()));
        }
        if !in_w(&w) {
            return Err(Error::NotInW(format!(
                "fraction leg {} -> {} is not an equivalence",
                w.dom().name(),
                w.cod().name()
            )));
        }
        Ok(Fraction { w, f })
    }

    pub(crate) fn new_unchecked(w: Functor, f: Functor) -> Self {
        Fraction { w, f }
    }

    /// The identity fraction `(A, id, id)`.
    pub fn identity(cat: &Arc<FinCategory>) -> Self {
        Fraction { w: Functor::identity(cat), f: Functor::identity(cat) }
    }

    pub fn src(&self) -> &Arc<FinCategory> {
        self.w.cod()
    }

    pub fn tgt(&self) -> &Arc<FinCategory> {
        self.f.cod()
    }

    pub fn apex(&self) -> &Arc<FinCategory> {
        self.w.dom()
    }

    pub fn w(&self) -> &Functor {
        &self.w
    }

    pub fn f(&self) -> &Functor {
        &self.f
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <- {} -> {}", self.src().name(), self.apex().name(), self.tgt().name())
    }
}

/// `g∘f` together with the chosen square over `(f.f, g.w)` it was built from.
pub(crate) fn compose_with_square(g: &Fraction, f: &Fraction) -> Result<(Fraction, Square)> {
    if !same_cat(f.tgt(), g.src()) {
        return Err(Error::BoundaryMismatch(format!(
            "cannot compose fractions {} and {}",
            g, f
        )));
    }
    let sq = iso_comma_raw(&f.f, &g.w);
    let w = compose_functors(&f.w, &sq.proj_w)?;
    let ff = compose_functors(&g.f, &sq.proj_f)?;
    Ok((Fraction::new_unchecked(w, ff), sq))
}

/// `g∘f = (A'', w∘v', g∘f')` using the fixed square over `(f.f, g.w)`.
pub fn compose_fractions(g: &Fraction, f: &Fraction) -> Result<Fraction> {
    compose_with_square(g, f).map(|(fr, _)| fr)
}

/// A representative `(A³, v¹, v², α, β)` of a 2-cell `src_fr ⇒ tgt_fr`, with
/// `α: w¹v¹ ⇒ w²v²` invertible, `β: f¹v¹ ⇒ f²v²` and `w¹v¹ ∈ W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDiagram {
    pub src_fr: Fraction,
    pub tgt_fr: Fraction,
    pub v1: Functor,
    pub v2: Functor,
    pub alpha: NatTransf,
    pub beta: NatTransf,
}

impl CellDiagram {
    pub fn new(
        src_fr: Fraction,
        tgt_fr: Fraction,
        v1: Functor,
        v2: Functor,
        alpha: NatTransf,
        beta: NatTransf,
    ) -> Result<Self> {
        let d = CellDiagram { src_fr, tgt_fr, v1, v2, alpha, beta };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn new_unchecked(
        src_fr: Fraction,
        tgt_fr: Fraction,
        v1: Functor,
        v2: Functor,
        alpha: NatTransf,
        beta: NatTransf,
    ) -> Self {
        let d = CellDiagram { src_fr, tgt_fr, v1, v2, alpha, beta };
        debug_assert_eq!(d.validate(), Ok(()));
        d
    }

    pub fn apex3(&self) -> &Arc<FinCategory> {
        self.v1.dom()
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.src_fr, &self.tgt_fr);
        if !same_cat(s.src(), t.src()) || !same_cat(s.tgt(), t.tgt()) {
            return Err(Error::BoundaryMismatch("fractions are not parallel".into()));
        }
        if !same_cat(self.v1.dom(), self.v2.dom()) {
            return Err(Error::BoundaryMismatch("v1 and v2 have different domains".into()));
        }
        let w1v1 = compose_functors(&s.w, &self.v1)?;
        let w2v2 = compose_functors(&t.w, &self.v2)?;
        if *self.alpha.src_f() != w1v1 || *self.alpha.tgt_f() != w2v2 {
            return Err(Error::BoundaryMismatch("alpha is not of type w1.v1 => w2.v2".into()));
        }
        if *self.beta.src_f() != compose_functors(&s.f, &self.v1)?
            || *self.beta.tgt_f() != compose_functors(&t.f, &self.v2)?
        {
            return Err(Error::BoundaryMismatch("beta is not of type f1.v1 => f2.v2".into()));
        }
        self.alpha.validate()?;
        self.beta.validate()?;
        if !self.alpha.is_invertible() {
            return Err(Error::HypothesisFailed("alpha is not invertible".into()));
        }
        if !in_w(&w1v1) {
            return Err(Error::NotInW("w1.v1 is not an equivalence".into()));
        }
        Ok(())
    }

    /// The same class, re-represented along `e: X → A³`.
    pub fn precompose(&self, e: &Functor) -> Result<CellDiagram> {
        Ok(CellDiagram {
            src_fr: self.src_fr.clone(),
            tgt_fr: self.tgt_fr.clone(),
            v1: compose_functors(&self.v1, e)?,
            v2: compose_functors(&self.v2, e)?,
            alpha: self.alpha.pre(e)?,
            beta: self.beta.pre(e)?,
        })
    }
}

/// A 2-cell of the localization, given by any representative. Equality of
/// 2-cells is [`cells_equivalent`], never structural equality.
#[derive(Clone, Debug)]
pub struct TwoCell {
    pub rep: CellDiagram,
}

impl From<CellDiagram> for TwoCell {
    fn from(rep: CellDiagram) -> Self {
        TwoCell { rep }
    }
}

impl TwoCell {
    pub fn src(&self) -> &Fraction {
        &self.rep.src_fr
    }

    pub fn tgt(&self) -> &Fraction {
        &self.rep.tgt_fr
    }

    pub fn equivalent(&self, other: &TwoCell) -> Result<bool> {
        cells_equivalent(&self.rep, &other.rep)
    }
}

/// The identity 2-cell `[A', id, id, i_w, i_f]`.
pub fn identity_cell(f: &Fraction) -> TwoCell {
    let id = Functor::identity(f.apex());
    TwoCell::from(CellDiagram::new_unchecked(
        f.clone(),
        f.clone(),
        id.clone(),
        id,
        NatTransf::identity(&f.w),
        NatTransf::identity(&f.f),
    ))
}

/// `U_W(f) = (A, id, f)`.
pub fn uw_on_1(f: &Functor) -> Fraction {
    Fraction::new_unchecked(Functor::identity(f.dom()), f.clone())
}

/// `U_W(ρ) = [A, id, id, i, ρ]`.
pub fn uw_on_2(rho: &NatTransf) -> TwoCell {
    let id = Functor::identity(rho.dom());
    TwoCell::from(CellDiagram::new_unchecked(
        uw_on_1(rho.src_f()),
        uw_on_1(rho.tgt_f()),
        id.clone(),
        id.clone(),
        NatTransf::identity(&id),
        rho.clone(),
    ))
}

/// BF6 in the model: for `t ∈ W` and `φ: f1∘t ⇒ f2∘t`, returns `z = id` and
/// the unique `ρ: f1 ⇒ f2` with `φ = ρ∘t`.
pub fn bf6_check(f1: &Functor, f2: &Functor, t: &Functor, phi: &NatTransf) -> Result<(Functor, NatTransf)> {
    let rho = descend_along(t, f1, f2, phi)?;
    Ok((Functor::identity(t.dom()), rho))
}

/// The comparison 2-cell `U_W(g)∘U_W(f) ⇒ U_W(g∘f)`. Under the identity-leg
/// convention the two fractions coincide and this is the identity.
pub fn uw_compositor(g: &Functor, f: &Functor) -> Result<TwoCell> {
    let lhs = compose_fractions(&uw_on_1(g), &uw_on_1(f))?;
    let rhs = uw_on_1(&compose_functors(g, f)?);
    if lhs != rhs {
        return Err(Error::HypothesisFailed("U_W composite differs from the image of the composite".into()));
    }
    Ok(identity_cell(&lhs))
}

/// Checks a pasting equality between two 2-cells and names the constraint on
/// failure.
pub(crate) fn require_eq(lhs: &NatTransf, rhs: &NatTransf, what: &str) -> Result<()> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::InvalidWitness(format!("{what} does not hold")))
    }
}

pub(crate) fn require_invertible(t: &NatTransf, what: &str) -> Result<()> {
    if t.is_invertible() {
        Ok(())
    } else {
        Err(Error::InvalidWitness(format!("{what} is not invertible")))
    }
}

pub(crate) fn require_in_w(f: &Functor, what: &str) -> Result<()> {
    if in_w(f) {
        Ok(())
    } else {
        Err(Error::InvalidWitness(format!("{what} is not in W")))
    }
}

/// Checks that `sq` is a square over `(x, y)` with invertible filler.
pub(crate) fn require_square(sq: &Square, x: &Functor, y: &Functor, what: &str) -> Result<()> {
    sq.validate(x, y)
        .map_err(|e| Error::InvalidWitness(format!("{what}: {e}")))
}

pub(crate) fn chain(cells: &[&NatTransf]) -> Result<NatTransf> {
    crate::fincat::vchain(cells)
}

pub(crate) fn comp(fs: &[&Functor]) -> Result<Functor> {
    fcomp(fs)
}

