//! Entwining structures, Doi-Hopf data, entwined modules and the standard objects.

use crate::exactlin::{inverse, rank, Field, LinMap, Scalar};
use crate::homspaces::{morphism_residuals, ConstraintSet};
use crate::structures::{
    check_action, check_coaction, check_comodule_algebra, check_module_coalgebra, ActionData,
    AlgebraData, BialgebraData, CoactionData, CoalgebraData, Side, StructureError,
    ValidationReport,
};

/// Algebra `A`, coalgebra `C` and `ψ: C⊗A → A⊗C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entwining {
    a: AlgebraData,
    c: CoalgebraData,
    psi: LinMap,
}

impl Entwining {
    /// Validated constructor.
    pub fn new(a: AlgebraData, c: CoalgebraData, psi: LinMap) -> Result<Self, StructureError> {
        let e = Entwining::unchecked(a, c, psi)?;
        e.check().into_result()?;
        Ok(e)
    }

    /// Shape-checked constructor that skips the axioms (for mutation studies).
    pub fn unchecked(
        a: AlgebraData,
        c: CoalgebraData,
        psi: LinMap,
    ) -> Result<Self, StructureError> {
        let (na, nc) = (a.dim(), c.dim());
        if a.field() != c.field() || psi.field() != a.field() {
            return Err(StructureError::Shape(
                "structures over different fields".into(),
            ));
        }
        if psi.dom() != [nc, na] || psi.cod() != [na, nc] {
            return Err(StructureError::Shape(format!(
                "entwining map has shape {:?} -> {:?}, expected [{nc}, {na}] -> [{na}, {nc}]",
                psi.dom(),
                psi.cod()
            )));
        }
        Ok(Entwining { a, c, psi })
    }

    /// `psi[c][a][a2][c2]` is the coefficient of `e_a2⊗e_c2` in `ψ(e_c⊗e_a)`.
    pub fn psi_from_table(
        field: Field,
        na: usize,
        nc: usize,
        t: &[Vec<Vec<Vec<Scalar>>>],
    ) -> Result<LinMap, StructureError> {
        let ok = t.len() == nc
            && t.iter().all(|x| {
                x.len() == na
                    && x.iter()
                        .all(|y| y.len() == na && y.iter().all(|z| z.len() == nc))
            });
        if !ok {
            return Err(StructureError::Shape(format!(
                "psi table is not {nc}x{na}x{na}x{nc}"
            )));
        }
        Ok(LinMap::from_fn(field, &[nc, na], &[na, nc], |r, col| {
            t[col / na][col % na][r / nc][r % nc].clone()
        }))
    }

    pub fn psi_table(&self) -> Vec<Vec<Vec<Vec<Scalar>>>> {
        let (na, nc) = (self.na(), self.nc());
        (0..nc)
            .map(|c| {
                (0..na)
                    .map(|a| {
                        (0..na)
                            .map(|a2| {
                                (0..nc)
                                    .map(|c2| self.psi.get(a2 * nc + c2, c * na + a).clone())
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// `ψ(c⊗a) = a⊗c`.
    pub fn flip(a: AlgebraData, c: CoalgebraData) -> Self {
        let psi = LinMap::swap(a.field(), c.dim(), a.dim());
        Entwining { a, c, psi }
    }

    pub fn a(&self) -> &AlgebraData {
        &self.a
    }

    pub fn c(&self) -> &CoalgebraData {
        &self.c
    }

    pub fn psi(&self) -> &LinMap {
        &self.psi
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn na(&self) -> usize {
        self.a.dim()
    }

    pub fn nc(&self) -> usize {
        self.c.dim()
    }

    pub fn check(&self) -> ValidationReport {
        let (na, nc) = (self.na(), self.nc());
        let (m, u) = (self.a.mult(), self.a.unit());
        let (d, e) = (self.c.comult(), self.c.counit());
        let psi = &self.psi;
        let mut r = ValidationReport::new("entwining");
        r.absorb(self.a.check());
        r.absorb(self.c.check());
        r.equal(
            "multiplicativity",
            &LinMap::identity_on(self.field(), &[nc, na, na], 1, m).on(0, psi),
            &LinMap::identity_on(self.field(), &[nc, na, na], 0, psi)
                .on(1, psi)
                .on(0, m),
        );
        r.equal(
            "counit",
            &LinMap::identity_on(self.field(), &[nc, na], 0, psi).on(1, e),
            &LinMap::identity_on(self.field(), &[nc, na], 0, e),
        );
        r.equal(
            "comultiplicativity",
            &LinMap::identity_on(self.field(), &[nc, na], 0, psi).on(1, d),
            &LinMap::identity_on(self.field(), &[nc, na], 0, d)
                .on(1, psi)
                .on(0, psi),
        );
        r.equal(
            "unit",
            &LinMap::identity_on(self.field(), &[nc], 1, u).on(0, psi),
            &LinMap::identity_on(self.field(), &[nc], 0, u),
        );
        r
    }

    /// Same algebra and coalgebra with another map, shape-checked only.
    pub fn with_psi(&self, psi: LinMap) -> Result<Self, StructureError> {
        Entwining::unchecked(self.a.clone(), self.c.clone(), psi)
    }
}

/// Bialgebra `H`, right `H`-comodule algebra `A` and right `H`-module coalgebra `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoiHopfDatum {
    pub h: BialgebraData,
    pub a: AlgebraData,
    /// `A → A⊗H`.
    pub coaction: LinMap,
    pub c: CoalgebraData,
    /// `C⊗H → C`.
    pub action: LinMap,
}

impl DoiHopfDatum {
    pub fn check(&self) -> ValidationReport {
        let mut r = ValidationReport::new("doi-hopf datum");
        r.absorb(self.h.check());
        r.absorb(self.a.check());
        r.absorb(self.c.check());
        r.absorb(check_comodule_algebra(&self.h, &self.a, &self.coaction));
        r.absorb(check_module_coalgebra(&self.h, &self.c, &self.action));
        r
    }
}

/// `ψ(c⊗a) = a₍₀₎⊗c·a₍₁₎`; rejects invalid data with the sub-validator report.
pub fn from_doi_hopf(d: &DoiHopfDatum) -> Result<Entwining, StructureError> {
    d.check().into_result()?;
    let (na, nc) = (d.a.dim(), d.c.dim());
    let psi = LinMap::identity(d.a.field(), &[nc, na])
        .on(1, &d.coaction)
        .permute(&[1, 0, 2])
        .on(1, &d.action);
    Entwining::new(d.a.clone(), d.c.clone(), psi)
}

/// Finite-dimensional space with right `A`-action and right `C`-coaction,
/// optionally a left `A`-action or a left `C`-coaction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntwinedObject {
    pub label: String,
    pub dim: usize,
    /// `M⊗A → M`.
    pub action: LinMap,
    /// `M → M⊗C`.
    pub coaction: LinMap,
    /// `A⊗M → M`.
    pub left_action: Option<LinMap>,
    /// `M → C⊗M`.
    pub left_coaction: Option<LinMap>,
}

impl EntwinedObject {
    pub fn supports(&self, cs: ConstraintSet) -> bool {
        (!cs.left_a || self.left_action.is_some()) && (!cs.left_c || self.left_coaction.is_some())
    }
}

/// `m⊗a ↦ m₀·a_ψ ⊗ m₁^ψ`, accumulated over nonzero entries only.
fn twisted_compatibility(e: &Entwining, m: &EntwinedObject) -> LinMap {
    let (f, na, nc, d) = (e.field(), e.na(), e.nc(), m.dim);
    let rows = d * nc;
    let mut data = vec![f.zero(); d * na * rows];
    for col in 0..d * na {
        let (mi, a) = (col / na, col % na);
        for (r, x) in m
            .coaction
            .column(mi)
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
        {
            let (m0, c) = (r / nc, r % nc);
            for (s, y) in e
                .psi()
                .column(c * na + a)
                .iter()
                .enumerate()
                .filter(|(_, y)| !y.is_zero())
            {
                let (a2, c2) = (s / nc, s % nc);
                let xy = x * y;
                for (t, z) in m
                    .action
                    .column(m0 * na + a2)
                    .iter()
                    .enumerate()
                    .filter(|(_, z)| !z.is_zero())
                {
                    let slot = &mut data[col * rows + t * nc + c2];
                    *slot = &*slot + &(&xy * z);
                }
            }
        }
    }
    LinMap::from_fn(f, &[d, na], &[d, nc], |r, c| data[c * rows + r].clone())
}

pub fn check_entwined_object(e: &Entwining, m: &EntwinedObject) -> ValidationReport {
    let (na, nc, d) = (e.na(), e.nc(), m.dim);
    let mut r = ValidationReport::new(format!("entwined object {}", m.label));
    let shapes_ok = m.action.dom() == [d, na]
        && m.action.cod() == [d]
        && m.coaction.dom() == [d]
        && m.coaction.cod() == [d, nc]
        && m.left_action
            .as_ref()
            .is_none_or(|l| l.dom() == [na, d] && l.cod() == [d])
        && m.left_coaction
            .as_ref()
            .is_none_or(|l| l.dom() == [d] && l.cod() == [nc, d]);
    if !shapes_ok {
        r.failures.push(crate::structures::Failure {
            axiom: "structure map shapes".into(),
            input: vec![],
            output: vec![],
            residual: e.field().one(),
        });
        return r;
    }
    r.absorb(check_action(
        e.a(),
        &ActionData {
            side: Side::Right,
            map: m.action.clone(),
        },
    ));
    r.absorb(check_coaction(
        e.c(),
        &CoactionData {
            side: Side::Right,
            map: m.coaction.clone(),
        },
    ));
    r.equal(
        "compatibility",
        &m.action.then(&m.coaction),
        &twisted_compatibility(e, m),
    );
    if let Some(l) = &m.left_action {
        r.absorb(check_action(
            e.a(),
            &ActionData {
                side: Side::Left,
                map: l.clone(),
            },
        ));
        r.equal(
            "left and right actions commute",
            &l.precompose(1, &m.action),
            &m.action.precompose(0, l),
        );
        r.equal(
            "left action is colinear",
            &l.then(&m.coaction),
            &LinMap::identity_on(e.field(), &[na, d], 1, &m.coaction).on(0, l),
        );
    }
    if let Some(l) = &m.left_coaction {
        r.absorb(check_coaction(
            e.c(),
            &CoactionData {
                side: Side::Left,
                map: l.clone(),
            },
        ));
        r.equal(
            "left coaction is right linear",
            &m.action.then(l),
            &LinMap::identity_on(e.field(), &[d, na], 0, l).on(1, &m.action),
        );
        r.equal(
            "left and right coactions commute",
            &l.on(1, &m.coaction),
            &m.coaction.on(0, l),
        );
    }
    r
}

fn flat_object(
    label: &str,
    e: &Entwining,
    legs: &[usize],
    action: LinMap,
    coaction: LinMap,
    left_action: Option<LinMap>,
    left_coaction: Option<LinMap>,
) -> EntwinedObject {
    let (na, nc) = (e.na(), e.nc());
    let d: usize = legs.iter().product();
    EntwinedObject {
        label: label.to_string(),
        dim: d,
        action: action.reshape(&[d, na], &[d]),
        coaction: coaction.reshape(&[d], &[d, nc]),
        left_action: left_action.map(|l| l.reshape(&[na, d], &[d])),
        left_coaction: left_coaction.map(|l| l.reshape(&[d], &[nc, d])),
    }
}

fn validated(e: &Entwining, m: EntwinedObject) -> Result<EntwinedObject, StructureError> {
    check_entwined_object(e, &m).into_result()?;
    Ok(m)
}

/// `A⊗C` with `(a⊗c)b = ab_ψ⊗c^ψ`, coaction `a⊗Δ(c)`, left action `b(a⊗c) = ba⊗c`.
pub fn std_object_ac(e: &Entwining) -> Result<EntwinedObject, StructureError> {
    let (na, nc) = (e.na(), e.nc());
    let m = e.a().mult();
    let obj = flat_object(
        "A⊗C",
        e,
        &[na, nc],
        LinMap::identity_on(e.field(), &[na, nc, na], 1, e.psi()).on(0, m),
        LinMap::identity_on(e.field(), &[na, nc], 1, e.c().comult()),
        Some(LinMap::identity_on(e.field(), &[na, na, nc], 0, m)),
        None,
    );
    validated(e, obj)
}

/// `C⊗A` with `(c⊗a)b = c⊗ab`, coaction `c₍₁₎⊗a_ψ⊗c₍₂₎^ψ`, left coaction `Δ(c)⊗a`.
pub fn std_object_ca(e: &Entwining) -> Result<EntwinedObject, StructureError> {
    let (na, nc) = (e.na(), e.nc());
    let d = e.c().comult();
    let obj = flat_object(
        "C⊗A",
        e,
        &[nc, na],
        LinMap::identity_on(e.field(), &[nc, na, na], 1, e.a().mult()),
        LinMap::identity_on(e.field(), &[nc, na], 0, d).on(1, e.psi()),
        None,
        Some(LinMap::identity_on(e.field(), &[nc, na], 0, d)),
    );
    validated(e, obj)
}

/// `A⊗C* → C*⊗A`, `b⊗eᵧ* ↦ Σᵢ ⟨eᵧ*, eᵢ^ψ⟩ eᵢ*⊗b_ψ`.
pub fn twisted_dual_flip(e: &Entwining) -> LinMap {
    let (na, nc) = (e.na(), e.nc());
    let psi = e.psi();
    LinMap::from_fn(e.field(), &[na, nc], &[nc, na], |r, c| {
        let (i, a2) = (r / na, r % na);
        let (b, g) = (c / nc, c % nc);
        psi.get(a2 * nc + g, i * na + b).clone()
    })
}

/// `C* → C*⊗C`, `c* ↦ Σᵢ eᵢ**c*⊗eᵢ`.
fn dual_coaction_seed(c: &CoalgebraData) -> LinMap {
    let n = c.dim();
    let d = c.comult();
    LinMap::from_fn(c.field(), &[n], &[n, n], |r, g| {
        let (k, i) = (r / n, r % n);
        d.get(i * n + g, k).clone()
    })
}

/// `C*⊗A` with the actions and coaction making it an object with left `A`-action.
pub fn std_object_cstar_a(e: &Entwining) -> Result<EntwinedObject, StructureError> {
    let (na, nc) = (e.na(), e.nc());
    let m = e.a().mult();
    let obj = flat_object(
        "C*⊗A",
        e,
        &[nc, na],
        LinMap::identity_on(e.field(), &[nc, na, na], 1, m),
        LinMap::identity_on(e.field(), &[nc, na], 0, &dual_coaction_seed(e.c())).on(1, e.psi()),
        Some(LinMap::identity_on(e.field(), &[na, nc, na], 0, &twisted_dual_flip(e)).on(1, m)),
        None,
    );
    validated(e, obj)
}

/// Right action of `A` on `A*`: `(a*·x)(y) = a*(xy)`.
pub fn dual_right_action(a: &AlgebraData) -> LinMap {
    let n = a.dim();
    let m = a.mult();
    LinMap::from_fn(a.field(), &[n, n], &[n], |i, col| {
        let (g, x) = (col / n, col % n);
        m.get(g, x * n + i).clone()
    })
}

/// `C⊗A* → C⊗A*`, `eⱼ⊗eᵧ* ↦ Σᵢ ⟨eᵧ*, (aᵢ)_ψ⟩ eⱼ^ψ⊗aᵢ*`.
fn twisted_left_seed(e: &Entwining) -> LinMap {
    let (na, nc) = (e.na(), e.nc());
    let psi = e.psi();
    LinMap::from_fn(e.field(), &[nc, na], &[nc, na], |r, col| {
        let (c2, i) = (r / na, r % na);
        let (j, g) = (col / na, col % na);
        psi.get(g * nc + c2, j * na + i).clone()
    })
}

/// `A*⊗C` with the structure making it an object with left `C`-coaction.
pub fn std_object_astar_c(e: &Entwining) -> Result<EntwinedObject, StructureError> {
    let (na, nc) = (e.na(), e.nc());
    let d = e.c().comult();
    let obj = flat_object(
        "A*⊗C",
        e,
        &[na, nc],
        LinMap::identity_on(e.field(), &[na, nc, na], 1, e.psi()).on(0, &dual_right_action(e.a())),
        LinMap::identity_on(e.field(), &[na, nc], 1, d),
        None,
        Some(
            LinMap::identity_on(e.field(), &[na, nc], 1, d)
                .permute(&[1, 0, 2])
                .on(0, &twisted_left_seed(e)),
        ),
    );
    validated(e, obj)
}

/// `M⊗C` for a right `A`-module `M`: `(m⊗c)a = ma_ψ⊗c^ψ`, coaction `m⊗Δ(c)`.
pub fn coinduced(e: &Entwining, dim: usize, action: &LinMap) -> EntwinedObject {
    let (na, nc) = (e.na(), e.nc());
    flat_object(
        "G(M)",
        e,
        &[dim, nc],
        LinMap::identity_on(e.field(), &[dim, nc, na], 1, e.psi()).on(0, action),
        LinMap::identity_on(e.field(), &[dim, nc], 1, e.c().comult()),
        None,
        None,
    )
}

/// `N⊗A` for a right `C`-comodule `N`: `(n⊗a)b = n⊗ab`, coaction `n₀⊗a_ψ⊗n₁^ψ`.
pub fn induced(e: &Entwining, dim: usize, coaction: &LinMap) -> EntwinedObject {
    let na = e.na();
    flat_object(
        "F'(N)",
        e,
        &[dim, na],
        LinMap::identity_on(e.field(), &[dim, na, na], 1, e.a().mult()),
        LinMap::identity_on(e.field(), &[dim, na], 0, coaction).on(1, e.psi()),
        None,
        None,
    )
}

/// Inverse of ψ together with the verification of its left-left entwining laws.
#[derive(Clone, Debug)]
pub enum PsiInverse {
    Invertible { phi: LinMap, laws: ValidationReport },
    Singular { rank: usize },
}

pub fn invert_psi(e: &Entwining) -> PsiInverse {
    let Some(phi) = inverse(e.psi()) else {
        return PsiInverse::Singular {
            rank: rank(&e.psi().flat()),
        };
    };
    let (na, nc) = (e.na(), e.nc());
    let (d, eps) = (e.c().comult(), e.c().counit());
    let mut laws = ValidationReport::new("inverse entwining");
    laws.equal(
        "counit",
        &LinMap::identity_on(e.field(), &[na, nc], 0, &phi).on(0, eps),
        &LinMap::identity_on(e.field(), &[na, nc], 1, eps),
    );
    laws.equal(
        "comultiplicativity",
        &LinMap::identity_on(e.field(), &[na, nc], 0, &phi).on(0, d),
        &LinMap::identity_on(e.field(), &[na, nc], 1, d)
            .on(0, &phi)
            .on(1, &phi),
    );
    PsiInverse::Invertible { phi, laws }
}

/// Triangle identities and unit/counit naturality data for both adjunctions.
pub fn adjunction_check(e: &Entwining, samples: &[EntwinedObject]) -> ValidationReport {
    let (f, na, nc) = (e.field(), e.na(), e.nc());
    let mut r = ValidationReport::new("adjunctions");
    for m in samples {
        let d = m.dim;
        let tag = |s: &str| format!("{}: {s}", m.label);
        let id = LinMap::identity(f, &[d]);

        // (F, G): unit ρ_M: M → M⊗C, counit N⊗C → N.
        let gm = coinduced(e, d, &m.action);
        let rep = check_entwined_object(e, &gm);
        if !rep.is_valid() {
            r.absorb(rep);
        }
        let unit = m.coaction.reshape(&[d], &[d * nc]);
        let rights = ConstraintSet::entwined();
        for res in morphism_residuals(m, &gm, &unit, rights) {
            r.vanishes(&tag("unit of (F,G) is a morphism"), &res);
        }
        let counit =
            LinMap::identity_on(e.field(), &[d, nc], 1, e.c().counit()).reshape(&[d * nc], &[d]);
        for res in morphism_residuals(&gm, m, &counit, ConstraintSet::right_linear()) {
            r.vanishes(&tag("counit of (F,G) is A-linear"), &res);
        }
        r.equal(&tag("triangle F"), &unit.then(&counit), &id);
        let gg = gm.coaction.reshape(&[d * nc], &[d * nc * nc]);
        let g_counit = LinMap::identity_on(e.field(), &[d, nc, nc], 1, e.c().counit())
            .reshape(&[d * nc * nc], &[d * nc]);
        r.equal(
            &tag("triangle G"),
            &gg.then(&g_counit),
            &LinMap::identity(f, &[d * nc]),
        );

        // (F', G'): unit n ↦ n⊗1, counit m⊗a ↦ ma.
        let fn_ = induced(e, d, &m.coaction);
        let rep = check_entwined_object(e, &fn_);
        if !rep.is_valid() {
            r.absorb(rep);
        }
        let eta = id.on(1, e.a().unit()).reshape(&[d], &[d * na]);
        for res in morphism_residuals(m, &fn_, &eta, ConstraintSet::right_colinear()) {
            r.vanishes(&tag("unit of (F',G') is colinear"), &res);
        }
        let mu = m.action.reshape(&[d * na], &[d]);
        for res in morphism_residuals(&fn_, m, &mu, rights) {
            r.vanishes(&tag("counit of (F',G') is a morphism"), &res);
        }
        r.equal(&tag("triangle G'"), &eta.then(&mu), &id);
        let f_eta = LinMap::identity_on(e.field(), &[d, na], 1, e.a().unit())
            .permute(&[0, 2, 1])
            .reshape(&[d * na], &[d * na * na]);
        let f_mu = LinMap::identity_on(e.field(), &[d, na, na], 1, e.a().mult())
            .reshape(&[d * na * na], &[d * na]);
        r.equal(
            &tag("triangle F'"),
            &f_eta.then(&f_mu),
            &LinMap::identity(f, &[d * na]),
        );
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::homspaces::{hom_basis, morphism_residuals};

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn samples(f: Field) -> Vec<Entwining> {
        vec![
            Entwining::flip(group_algebra(f, 2), grouplike_coalgebra(f, 2)),
            Entwining::flip(matrix_algebra(f), dual_numbers_coalgebra(f)),
            doi_hopf_entwining(&regular_doi_hopf(&group_bialgebra(f, 2))),
            doi_hopf_entwining(&graded_matrix_doi_hopf(f)),
            doi_hopf_entwining(&regular_doi_hopf(&sweedler_bialgebra(f))),
        ]
    }

    #[test]
    fn flip_and_doi_hopf_entwinings_are_valid() {
        for f in [Field::Rational, f2(), Field::prime(3).unwrap()] {
            for e in samples(f) {
                assert!(e.check().is_valid(), "{}", e.check());
            }
        }
    }

    #[test]
    fn regular_group_entwining_sends_g_g_to_g_1() {
        let e = doi_hopf_entwining(&regular_doi_hopf(&group_bialgebra(Field::Rational, 2)));
        let t = e.psi_table();
        assert!(t[1][1][1][0].is_one());
        assert!(t[1][1][1][1].is_zero());
        assert!(t[1][1][0][0].is_zero());
    }

    #[test]
    fn trivial_datum_gives_flip() {
        let f = Field::Rational;
        let (a, c) = (matrix_algebra(f), grouplike_coalgebra(f, 3));
        let e = doi_hopf_entwining(&trivial_doi_hopf(&a, &c));
        assert_eq!(e, Entwining::flip(a, c));
    }

    #[test]
    fn toggled_flip_is_rejected_with_axiom_name() {
        let f = f2();
        let e = Entwining::flip(group_algebra(f, 2), grouplike_coalgebra(f, 2));
        let mut psi = e.psi().clone();
        let v = psi.get(1, 2) + &f.one();
        psi.set(1, 2, v);
        let bad = e.with_psi(psi).unwrap();
        let report = bad.check();
        assert!(!report.is_valid());
        assert!(report
            .failures
            .iter()
            .any(|x| x.axiom.contains("unit") || x.axiom.contains("multiplicativity")));
    }

    #[test]
    fn standard_objects_validate_and_psi_is_a_morphism() {
        for f in [Field::Rational, f2()] {
            for e in samples(f) {
                let ac = std_object_ac(&e).unwrap();
                let ca = std_object_ca(&e).unwrap();
                std_object_cstar_a(&e).unwrap();
                std_object_astar_c(&e).unwrap();
                let res = morphism_residuals(&ca, &ac, e.psi(), ConstraintSet::entwined());
                assert!(res.iter().all(LinMap::is_zero));
            }
        }
    }

    #[test]
    fn group_likes_coaction_on_dual_tensor() {
        let f = Field::Rational;
        let e = Entwining::flip(trivial_algebra(f), grouplike_coalgebra(f, 2));
        let obj = std_object_cstar_a(&e).unwrap();
        // gᵢ*⊗1 ↦ gᵢ*⊗1⊗gᵢ
        for i in 0..2 {
            let v = obj.coaction.column(i);
            for (r, s) in v.iter().enumerate() {
                assert_eq!(s.is_one(), r == i * 2 + i);
            }
        }
    }

    #[test]
    fn cotwisted_coaction_is_rejected() {
        let f = Field::Rational;
        let e = doi_hopf_entwining(&regular_doi_hopf(&sweedler_bialgebra(f)));
        let mut ac = std_object_ac(&e).unwrap();
        let n = e.nc();
        let cop = e.c().comult().then(&LinMap::swap(f, n, n));
        ac.coaction =
            LinMap::identity_on(f, &[e.na(), n], 1, &cop).reshape(&[ac.dim], &[ac.dim, n]);
        assert!(!check_entwined_object(&e, &ac).is_valid());
    }

    #[test]
    fn inverse_entwining_laws() {
        for e in samples(Field::Rational) {
            match invert_psi(&e) {
                PsiInverse::Invertible { laws, .. } => assert!(laws.is_valid(), "{laws}"),
                PsiInverse::Singular { rank } => panic!("rank {rank}"),
            }
        }
        let e = samples(f2()).remove(0);
        let PsiInverse::Invertible { phi, .. } = invert_psi(&e) else {
            panic!()
        };
        assert_eq!(phi, LinMap::swap(f2(), 2, 2));
    }

    #[test]
    fn adjunction_triangles_on_standard_objects() {
        for e in samples(Field::prime(3).unwrap()) {
            let objs = vec![std_object_ac(&e).unwrap(), std_object_ca(&e).unwrap()];
            let r = adjunction_check(&e, &objs);
            assert!(r.is_valid(), "{r}");
        }
    }

    #[test]
    fn corrupted_coaction_breaks_adjunction() {
        let f = Field::Rational;
        let e = doi_hopf_entwining(&regular_doi_hopf(&group_bialgebra(f, 2)));
        let mut ca = std_object_ca(&e).unwrap();
        ca.coaction = ca.coaction.scale(&f.int(2));
        assert!(!adjunction_check(&e, &[ca]).is_valid());
    }

    #[test]
    fn sparse_compatibility_matches_dense_composite() {
        for e in samples(f2()) {
            for m in [std_object_ac(&e).unwrap(), std_object_ca(&e).unwrap()] {
                let dense = LinMap::identity_on(e.field(), &[m.dim, e.na()], 0, &m.coaction)
                    .on(1, e.psi())
                    .on(0, &m.action);
                assert_eq!(twisted_compatibility(&e, &m), dense);
            }
        }
    }

    #[test]
    fn identity_is_an_endomorphism() {
        let e = samples(f2()).remove(2);
        let ac = std_object_ac(&e).unwrap();
        let hom = hom_basis(&ac, &ac, ConstraintSet::with_left_a()).unwrap();
        assert!(hom.contains(&LinMap::identity(f2(), &[ac.dim])));
    }
}
