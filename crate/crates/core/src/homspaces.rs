//! Morphism spaces between entwined objects and isomorphism search.

use std::sync::Arc;

use thiserror::Error;

use crate::entwining::EntwinedObject;
use crate::exactlin::{inverse, rank, volume, ExactError, LinMap, Residual, Scalar, SolutionSpace};
use crate::search::{search_space, NoReason, Search, SearchConfig};

/// Which intertwining equations a morphism must satisfy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    pub right_a: bool,
    pub left_a: bool,
    pub right_c: bool,
    pub left_c: bool,
}

impl ConstraintSet {
    /// Morphisms of entwined modules.
    pub fn entwined() -> Self {
        ConstraintSet {
            right_a: true,
            right_c: true,
            ..Self::default()
        }
    }

    /// Entwined morphisms that also respect a left `A`-action.
    pub fn with_left_a() -> Self {
        ConstraintSet {
            left_a: true,
            ..Self::entwined()
        }
    }

    /// Entwined morphisms that also respect a left `C`-coaction.
    pub fn with_left_c() -> Self {
        ConstraintSet {
            left_c: true,
            ..Self::entwined()
        }
    }

    pub fn right_linear() -> Self {
        ConstraintSet {
            right_a: true,
            ..Self::default()
        }
    }

    pub fn right_colinear() -> Self {
        ConstraintSet {
            right_c: true,
            ..Self::default()
        }
    }
}

#[derive(Debug, Error)]
pub enum HomError {
    #[error("constraint {0} needs a structure missing on one of the objects")]
    Unsupported(&'static str),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Residual maps of every flagged intertwining equation for `f: X → Y`.
pub fn morphism_residuals(
    x: &EntwinedObject,
    y: &EntwinedObject,
    f: &LinMap,
    cs: ConstraintSet,
) -> Vec<LinMap> {
    let f = f.reshape(&[x.dim], &[y.dim]);
    let mut out = Vec::new();
    if cs.right_a {
        out.push(x.action.then(&f).sub(&y.action.precompose(0, &f)));
    }
    if cs.right_c {
        out.push(f.then(&y.coaction).sub(&x.coaction.on(0, &f)));
    }
    if cs.left_a {
        if let (Some(lx), Some(ly)) = (&x.left_action, &y.left_action) {
            out.push(lx.then(&f).sub(&ly.precompose(1, &f)));
        }
    }
    if cs.left_c {
        if let (Some(lx), Some(ly)) = (&x.left_coaction, &y.left_coaction) {
            out.push(f.then(ly).sub(&lx.on(1, &f)));
        }
    }
    out
}

fn supported(x: &EntwinedObject, y: &EntwinedObject, cs: ConstraintSet) -> Result<(), HomError> {
    if cs.left_a && (x.left_action.is_none() || y.left_action.is_none()) {
        return Err(HomError::Unsupported("left A-linearity"));
    }
    if cs.left_c && (x.left_coaction.is_none() || y.left_coaction.is_none()) {
        return Err(HomError::Unsupported("left C-colinearity"));
    }
    Ok(())
}

/// Basis of all maps `X → Y` satisfying the flagged equations.
pub fn hom_basis(
    x: &EntwinedObject,
    y: &EntwinedObject,
    cs: ConstraintSet,
) -> Result<SolutionSpace, HomError> {
    supported(x, y, cs)?;
    let field = x.action.field();
    let (xc, yc) = (x.clone(), y.clone());
    let residual: Residual = Arc::new(move |f: &LinMap| morphism_residuals(&xc, &yc, f, cs));
    let label = format!("Hom({}, {})", x.label, y.label);
    Ok(SolutionSpace::solve(
        label,
        field,
        &[x.dim],
        &[y.dim],
        residual,
    )?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Mutually inverse morphisms, both verified.
    Yes {
        forward: LinMap,
        backward: LinMap,
    },
    No(NoReason),
    ProbablyNo {
        trials: u64,
        seed: u64,
    },
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes { .. })
    }

    /// Verdict for the reversed pair, reusing the witnesses.
    pub fn reversed(&self) -> IsoVerdict {
        match self {
            IsoVerdict::Yes { forward, backward } => IsoVerdict::Yes {
                forward: backward.clone(),
                backward: forward.clone(),
            },
            IsoVerdict::No(NoReason::DimensionMismatch { source, target }) => {
                IsoVerdict::No(NoReason::DimensionMismatch {
                    source: *target,
                    target: *source,
                })
            }
            other => other.clone(),
        }
    }
}

fn stacked_rank(basis: &[LinMap], n: usize, columns: bool) -> usize {
    let field = basis[0].field();
    let k = basis.len();
    let m = if columns {
        LinMap::from_fn(field, &[k * n], &[n], |r, c| {
            basis[c / n].get(r, c % n).clone()
        })
    } else {
        LinMap::from_fn(field, &[n], &[k * n], |r, c| {
            basis[r / n].get(r % n, c).clone()
        })
    };
    rank(&m)
}

/// Verifies `f` and `g` are mutually inverse morphisms.
pub fn verify_iso(
    x: &EntwinedObject,
    y: &EntwinedObject,
    f: &LinMap,
    g: &LinMap,
    cs: ConstraintSet,
) -> bool {
    let field = f.field();
    let f = f.reshape(&[x.dim], &[y.dim]);
    let g = g.reshape(&[y.dim], &[x.dim]);
    f.then(&g) == LinMap::identity(field, &[x.dim])
        && g.then(&f) == LinMap::identity(field, &[y.dim])
        && morphism_residuals(x, y, &f, cs).iter().all(LinMap::is_zero)
        && morphism_residuals(y, x, &g, cs).iter().all(LinMap::is_zero)
}

/// Decides whether `X ≅ Y` under the constraints.
pub fn iso_exists(
    x: &EntwinedObject,
    y: &EntwinedObject,
    cs: ConstraintSet,
    cfg: &SearchConfig,
) -> Result<IsoVerdict, HomError> {
    supported(x, y, cs)?;
    if x.dim != y.dim {
        return Ok(IsoVerdict::No(NoReason::DimensionMismatch {
            source: x.dim,
            target: y.dim,
        }));
    }
    let hom = hom_basis(x, y, cs)?;
    let verdict = invertible_in(&hom, cfg);
    if let IsoVerdict::Yes { forward, backward } = &verdict {
        if !verify_iso(x, y, forward, backward, cs) {
            return Err(
                ExactError::Internal("isomorphism witness failed verification".into()).into(),
            );
        }
    }
    Ok(verdict)
}

/// Searches a space of square maps for an invertible element.
///
/// Rank certificates rule out spaces whose stacked columns or rows are deficient.
/// A `Yes` carries the element and its inverse, both unverified against any further structure.
pub fn invertible_in(hom: &SolutionSpace, cfg: &SearchConfig) -> IsoVerdict {
    let (n, m) = (volume(hom.dom()), volume(hom.cod()));
    if n != m {
        return IsoVerdict::No(NoReason::DimensionMismatch {
            source: n,
            target: m,
        });
    }
    if n == 0 {
        let zero = hom.combine(&vec![hom.field().zero(); hom.dim()]);
        return IsoVerdict::Yes {
            backward: zero.transpose(),
            forward: zero,
        };
    }
    if hom.dim() == 0 {
        return IsoVerdict::No(NoReason::Exhausted { candidates: 0 });
    }
    for columns in [true, false] {
        let r = stacked_rank(hom.basis(), n, columns);
        if r < n {
            return IsoVerdict::No(NoReason::RankCertificate { rank: r, dim: n });
        }
    }
    let pred = |s: &[Scalar]| {
        let f = hom.combine(s);
        inverse(&f.flat())
    };
    match search_space(hom.field(), hom.dim(), cfg, &pred) {
        Search::Found { coords, value, .. } => IsoVerdict::Yes {
            forward: hom.combine(&coords),
            backward: value.reshape(hom.cod(), hom.dom()),
        },
        Search::Exhausted { candidates } => IsoVerdict::No(NoReason::Exhausted { candidates }),
        Search::Undecided { candidates, seed } => IsoVerdict::ProbablyNo {
            trials: candidates,
            seed,
        },
    }
}
