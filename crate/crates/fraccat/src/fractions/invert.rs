//! Invertibility of 2-cells.

use super::{compose_functors, normalize_to_choice, CellDiagram, TwoCell};
use crate::bf_oracle::in_w;
use crate::error::{Error, Result};
use crate::fincat::{all_functors, fixtures, Functor};

/// Candidate refinements `u: X → A³`: the identity, plus every functor from a
/// fixture category when the apex is small.
pub(crate) fn refinement_candidates(d: &CellDiagram) -> Vec<Functor> {
    let apex = d.apex3();
    let mut out = vec![Functor::identity(apex)];
    if apex.num_objects() <= 6 {
        for x in fixtures::all() {
            out.extend(all_functors(&x, apex));
        }
    }
    out
}

/// Searches for `u` with `w¹∘v¹∘u ∈ W` and `β∘u` invertible.
pub fn is_invertible_search(d: &CellDiagram) -> Result<bool> {
    for u in refinement_candidates(d) {
        let w1v1u = compose_functors(&compose_functors(d.src_fr.w(), &d.v1)?, &u)?;
        if in_w(&w1v1u) && d.beta.pre(&u)?.is_invertible() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn invertible_rep(g: &TwoCell) -> Result<Option<CellDiagram>> {
    if g.rep.beta.is_invertible() {
        return Ok(Some(g.rep.clone()));
    }
    let n = normalize_to_choice(g)?;
    if n.beta.is_invertible() {
        return Ok(Some(n));
    }
    Ok(None)
}

/// Whether some representative has invertible last 2-cell: checked on the
/// given representative, on the normal form, and by a bounded search over
/// refinements.
pub fn is_invertible(g: &TwoCell) -> Result<bool> {
    if invertible_rep(g)?.is_some() {
        return Ok(true);
    }
    is_invertible_search(&g.rep)
}

/// `[A³, v², v¹, α⁻¹, β⁻¹]` for a representative with invertible `β`.
pub fn invert(g: &TwoCell) -> Result<TwoCell> {
    let d = invertible_rep(g)?.ok_or(Error::NotInvertible)?;
    Ok(TwoCell::from(CellDiagram::new_unchecked(
        d.tgt_fr.clone(),
        d.src_fr.clone(),
        d.v2.clone(),
        d.v1.clone(),
        d.alpha.inv()?,
        d.beta.inv()?,
    )))
}
