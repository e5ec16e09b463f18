//! The functor forgetting the action, its adjoint `•⊗A`, and their witnesses.

use std::sync::Arc;

use crate::coforget::Strategy;
use crate::entwining::{
    invert_psi, std_object_astar_c, std_object_ca, EntwinedObject, Entwining, PsiInverse,
};
use crate::error::{Error, Result};
use crate::exactlin::{Field, LinMap, Residual, SolutionSpace};
use crate::homspaces::{iso_exists, morphism_residuals, ConstraintSet, IsoVerdict};
use crate::search::{linear_verdict, Bilinear, BilinearOutcome, SearchConfig, Verdict};
use crate::structures::{AlgebraData, ValidationReport};

/// Normalized witnesses with the mutually inverse comparison maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusWitness {
    /// `ϑ: C⊗A → k`.
    pub theta: LinMap,
    /// `C → A⊗A`.
    pub casimir: LinMap,
    /// `A*⊗C → C⊗A` built from the Casimir map.
    pub omega: LinMap,
    /// `C⊗A → A*⊗C` built from `ϑ`.
    pub omegabar: LinMap,
}

/// Finite dual basis of `A`: `a = Σᵢ ⟨fᵢ, a⟩ aᵢ`.
#[derive(Clone, Debug)]
pub struct ADualBasis {
    /// `aᵢ`, each of shape `[] → [A]`.
    pub elements: Vec<LinMap>,
    /// `fᵢ`, each of shape `[A] → []`.
    pub functionals: Vec<LinMap>,
}

/// Precomputed spaces and objects for one entwining.
#[derive(Clone, Debug)]
pub struct Actforget {
    e: Entwining,
    v1: SolutionSpace,
    w1: SolutionSpace,
    astar_c: EntwinedObject,
    ca: EntwinedObject,
}

fn eps_one(e: &Entwining) -> LinMap {
    e.c().counit().on(0, e.a().unit())
}

/// Residual of `ϑ(c₍₁₎⊗a_ψ)c₍₂₎^ψ = ϑ(c₍₂₎⊗a)c₍₁₎`.
pub fn theta_residuals(e: &Entwining, theta: &LinMap) -> Vec<LinMap> {
    let ca = LinMap::identity_on(e.field(), &[e.nc(), e.na()], 0, e.c().comult());
    let lhs = ca.on(1, e.psi()).on(0, theta);
    let rhs = ca.on(1, theta);
    vec![lhs.sub(&rhs)]
}

/// Residuals of the colinearity and centralizing conditions on `c ↦ e¹(c)⊗e²(c)`.
pub fn casimir_residuals(e: &Entwining, w: &LinMap) -> Vec<LinMap> {
    let (f, na, nc) = (e.field(), e.na(), e.nc());
    let (d, psi, m) = (e.c().comult(), e.psi(), e.a().mult());
    let colinear = d.on(0, w).sub(&d.on(1, w).on(0, psi).on(1, psi));
    let ca = LinMap::identity(f, &[nc, na]);
    let central = ca.on(0, w).on(1, m).sub(&ca.on(0, psi).on(1, w).on(0, m));
    vec![colinear, central]
}

/// `c ↦ ϑ(c₍₁₎⊗e¹(c₍₂₎))e²(c₍₂₎)` and `c ↦ ϑ(c₍₁₎^ψ⊗e²(c₍₂₎))e¹(c₍₂₎)_ψ`.
pub fn normalizations(e: &Entwining, theta: &LinMap, w: &LinMap) -> [LinMap; 2] {
    let split = e.c().comult().on(1, w);
    [split.on(0, theta), split.on(0, e.psi()).on(1, theta)]
}

/// `Ω(a*⊗c) = ⟨a*, e¹(c₍₂₎)_ψ⟩ c₍₁₎^ψ⊗e²(c₍₂₎)`, as a map on `[A*, C] → [C, A]`.
pub fn casimir_to_omega(e: &Entwining, w: &LinMap) -> LinMap {
    let (f, na, nc) = (e.field(), e.na(), e.nc());
    LinMap::identity(f, &[na, nc])
        .on(1, e.c().comult())
        .on(2, w)
        .on(1, e.psi())
        .on(0, &LinMap::evaluation(f, na))
}

/// `e(c) = Σᵢ aᵢ⊗(ε⊗I)Ω(aᵢ*⊗c)`.
pub fn omega_to_casimir(e: &Entwining, omega: &LinMap) -> LinMap {
    let (f, na, nc) = (e.field(), e.na(), e.nc());
    let omega = omega.reshape(&[na, nc], &[nc, na]);
    LinMap::identity(f, &[nc])
        .on(0, &LinMap::coevaluation(f, na))
        .on(1, &omega)
        .on(1, e.c().counit())
}

/// `Ω̄(c⊗a) = Σᵢ ϑ(c₍₁₎⊗a_ψaᵢ) aᵢ*⊗c₍₂₎^ψ`, as a map on `[C, A] → [A*, C]`.
pub fn theta_to_omegabar(e: &Entwining, theta: &LinMap) -> LinMap {
    let (f, na, nc) = (e.field(), e.na(), e.nc());
    LinMap::identity(f, &[nc, na])
        .on(0, e.c().comult())
        .on(1, e.psi())
        .on(2, &LinMap::coevaluation(f, na))
        .on(1, e.a().mult())
        .on(0, theta)
}

/// `ϑ(c⊗a) = ⟨Ω̄(c⊗a), 1⊗ε⟩`.
pub fn omegabar_to_theta(e: &Entwining, omegabar: &LinMap) -> LinMap {
    let (f, na, nc) = (e.field(), e.na(), e.nc());
    let at_one = LinMap::functional(f, &[na], e.a().unit().to_vec());
    omegabar
        .reshape(&[nc, na], &[na, nc])
        .on(0, &at_one)
        .on(0, e.c().counit())
}

fn flat_square(x: &LinMap, n: usize) -> LinMap {
    x.reshape(&[n], &[n])
}

impl Actforget {
    pub fn new(e: &Entwining) -> Result<Self> {
        let (f, na, nc) = (e.field(), e.na(), e.nc());
        let ev = e.clone();
        let theta_res: Residual = Arc::new(move |t: &LinMap| theta_residuals(&ev, t));
        let v1 = SolutionSpace::solve("V1'", f, &[nc, na], &[], theta_res)?;
        let ew = e.clone();
        let w_res: Residual = Arc::new(move |w: &LinMap| casimir_residuals(&ew, w));
        let w1 = SolutionSpace::solve("W1'", f, &[nc], &[na, na], w_res)?;
        Ok(Actforget {
            e: e.clone(),
            v1,
            w1,
            astar_c: std_object_astar_c(e)?,
            ca: std_object_ca(e)?,
        })
    }

    pub fn entwining(&self) -> &Entwining {
        &self.e
    }

    pub fn v1(&self) -> &SolutionSpace {
        &self.v1
    }

    pub fn w1(&self) -> &SolutionSpace {
        &self.w1
    }

    /// `A*⊗C` and `C⊗A` as objects with a left `C`-coaction.
    pub fn objects(&self) -> (&EntwinedObject, &EntwinedObject) {
        (&self.astar_c, &self.ca)
    }

    fn expect(&self, ok: bool, what: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::Verification(what.to_string()))
        }
    }

    /// `ϑ ∈ V₁'` with `ϑ(c⊗1) = ε(c)`.
    pub fn fprime_separable(&self) -> Result<Verdict<LinMap>> {
        let at_one = LinMap::identity_on(self.e.field(), &[self.e.nc()], 1, self.e.a().unit());
        let eps = self.e.c().counit().clone();
        let theta = self
            .v1
            .affine_solve(&|t| vec![at_one.then(t)], std::slice::from_ref(&eps))?;
        let v = linear_verdict(theta);
        if let Verdict::Yes(t) = &v {
            self.expect(
                self.v1.contains(t) && at_one.then(t) == eps,
                "ϑ(c⊗1) = ε(c)",
            )?;
        }
        Ok(v)
    }

    /// Casimir map in `W₁'` with `e¹(c)e²(c) = ε(c)1`.
    pub fn gprime_separable(&self) -> Result<Verdict<LinMap>> {
        let m = self.e.a().mult();
        let target = eps_one(&self.e);
        let w = self
            .w1
            .affine_solve(&|w| vec![w.then(m)], std::slice::from_ref(&target))?;
        let v = linear_verdict(w);
        if let Verdict::Yes(w) = &v {
            self.expect(
                self.w1.contains(w) && w.then(m) == target,
                "e¹(c)e²(c) = ε(c)1",
            )?;
        }
        Ok(v)
    }

    /// Checks every defining property of a Frobenius witness exactly.
    pub fn verify(&self, w: &FrobeniusWitness) -> ValidationReport {
        let e = &self.e;
        let mut r = ValidationReport::new("action-forgetting Frobenius witness");
        for res in theta_residuals(e, &w.theta) {
            r.vanishes("theta condition", &res);
        }
        for res in casimir_residuals(e, &w.casimir) {
            r.vanishes("casimir conditions", &res);
        }
        let target = eps_one(e);
        let [x, y] = normalizations(e, &w.theta, &w.casimir);
        r.equal("normalization through first factor", &x, &target);
        r.equal("normalization through second factor", &y, &target);
        let n = self.ca.dim;
        let (omega, omegabar) = (flat_square(&w.omega, n), flat_square(&w.omegabar, n));
        let id = LinMap::identity(e.field(), &[n]);
        r.equal("omega after omegabar", &omegabar.then(&omega), &id);
        r.equal("omegabar after omega", &omega.then(&omegabar), &id);
        let cs = ConstraintSet::with_left_c();
        for res in morphism_residuals(&self.ca, &self.astar_c, &omegabar, cs) {
            r.vanishes("omegabar is a morphism", &res);
        }
        for res in morphism_residuals(&self.astar_c, &self.ca, &omega, cs) {
            r.vanishes("omega is a morphism", &res);
        }
        r
    }

    /// Completes `(ϑ, e)` with the comparison maps and verifies everything.
    pub fn witness(&self, theta: LinMap, casimir: LinMap) -> Result<FrobeniusWitness> {
        let w = FrobeniusWitness {
            omega: casimir_to_omega(&self.e, &casimir),
            omegabar: theta_to_omegabar(&self.e, &theta),
            theta,
            casimir,
        };
        let report = self.verify(&w);
        if report.is_valid() {
            Ok(w)
        } else {
            Err(Error::Verification(report.to_string()))
        }
    }

    /// Decides whether forgetting the action and `•⊗A` form a Frobenius pair.
    pub fn frobenius(
        &self,
        strategy: Strategy,
        cfg: &SearchConfig,
    ) -> Result<Verdict<FrobeniusWitness>> {
        match strategy {
            Strategy::Witness => self.frobenius_by_witness(cfg),
            Strategy::Isomorphism => self.frobenius_by_iso(cfg),
        }
    }

    fn frobenius_by_witness(&self, cfg: &SearchConfig) -> Result<Verdict<FrobeniusWitness>> {
        let e = &self.e;
        let target = eps_one(e);
        let mut tvec = target.to_vec();
        tvec.extend(target.to_vec());
        let (wb, tb) = (self.w1.basis(), self.v1.basis());
        let problem = Bilinear::new(e.field(), wb.len(), tb.len(), tvec, |j, i| {
            let [x, y] = normalizations(e, &tb[i], &wb[j]);
            let mut v = x.to_vec();
            v.extend(y.to_vec());
            v
        });
        Ok(match problem.solve(cfg) {
            BilinearOutcome::Found { outer, inner, .. } => {
                Verdict::Yes(self.witness(self.v1.combine(&inner), self.w1.combine(&outer))?)
            }
            BilinearOutcome::Infeasible(r) => Verdict::No(r),
            BilinearOutcome::Undecided { candidates, seed } => {
                Verdict::Unknown { candidates, seed }
            }
        })
    }

    fn frobenius_by_iso(&self, cfg: &SearchConfig) -> Result<Verdict<FrobeniusWitness>> {
        let e = &self.e;
        let (na, nc) = (e.na(), e.nc());
        Ok(
            match iso_exists(&self.ca, &self.astar_c, ConstraintSet::with_left_c(), cfg)? {
                IsoVerdict::Yes { forward, backward } => {
                    let omegabar = forward.reshape(&[nc, na], &[na, nc]);
                    let omega = backward.reshape(&[na, nc], &[nc, na]);
                    let theta = omegabar_to_theta(e, &omegabar);
                    let casimir = omega_to_casimir(e, &omega);
                    self.expect(
                        theta_to_omegabar(e, &theta) == omegabar
                            && casimir_to_omega(e, &casimir) == omega,
                        "isomorphism pair is the image of (ϑ, e)",
                    )?;
                    Verdict::Yes(self.witness(theta, casimir)?)
                }
                IsoVerdict::No(r) => Verdict::No(r),
                IsoVerdict::ProbablyNo { trials, seed } => Verdict::Unknown {
                    candidates: trials,
                    seed,
                },
            },
        )
    }

    /// Dual basis of `A` from Frobenius witnesses, using `ψ⁻¹` and an element `c` with `ε(c) = 1`.
    ///
    /// Writing `c₍₁₎⊗e(c₍₂₎) = Σᵢ cᵢ⊗bᵢ⊗aᵢ`, the functionals are `a ↦ ϑ(cᵢ^φ⊗a_φbᵢ)`.
    pub fn dual_basis_a(&self, theta: &LinMap, casimir: &LinMap) -> Result<ADualBasis> {
        let e = &self.e;
        let (f, na, nc) = (e.field(), e.na(), e.nc());
        let target = eps_one(e);
        let [x, y] = normalizations(e, theta, casimir);
        if x != target || y != target {
            return Err(Error::Contract(
                "witnesses fail the Frobenius normalization".into(),
            ));
        }
        let phi = match invert_psi(e) {
            PsiInverse::Invertible { phi, .. } => phi,
            PsiInverse::Singular { rank } => {
                return Err(Error::Contract(format!(
                    "entwining map is singular (rank {rank})"
                )))
            }
        };
        let c = counit_preimage(e)?;
        let expanded = c.then(e.c().comult()).on(1, casimir);
        let m = e.a().mult();
        let mut db = ADualBasis {
            elements: Vec::new(),
            functionals: Vec::new(),
        };
        for (flat, coeff) in expanded.coeffs().iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let (k, j, l) = (flat / (na * na), (flat / na) % na, flat % na);
            let functional = LinMap::identity(f, &[na])
                .on(1, &LinMap::basis_element(f, &[nc], k))
                .on(0, &phi)
                .on(2, &LinMap::basis_element(f, &[na], j))
                .on(1, m)
                .on(0, theta)
                .scale(coeff);
            db.functionals.push(functional);
            db.elements.push(LinMap::basis_element(f, &[na], l));
        }
        self.expect(db.resolves_identity(e.a()), "dual basis of A")?;
        Ok(db)
    }
}

/// An element `c` with `ε(c) = 1`, as a map `[] → [C]`.
fn counit_preimage(e: &Entwining) -> Result<LinMap> {
    let f: Field = e.field();
    let eps = e.c().counit_vec();
    let (k, v) = eps
        .iter()
        .enumerate()
        .find(|(_, s)| !s.is_zero())
        .ok_or_else(|| Error::Contract("counit vanishes".into()))?;
    let mut coeffs = vec![f.zero(); eps.len()];
    coeffs[k] = v.inv().expect("nonzero scalar is invertible");
    Ok(LinMap::element(f, &[eps.len()], coeffs))
}

impl ADualBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `Σᵢ ⟨fᵢ, a⟩ aᵢ = a` on every basis vector.
    pub fn resolves_identity(&self, a: &AlgebraData) -> bool {
        let (f, n) = (a.field(), a.dim());
        let total = self
            .functionals
            .iter()
            .zip(&self.elements)
            .fold(LinMap::zero(f, &[n], &[n]), |acc, (fi, ai)| {
                acc.add(&fi.on(0, ai))
            });
        total == LinMap::identity(f, &[n])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    fn flip_k(f: Field, c: crate::structures::CoalgebraData) -> Actforget {
        Actforget::new(&Entwining::flip(trivial_algebra(f), c)).unwrap()
    }

    fn ones(f: Field, dom: &[usize], cod: &[usize]) -> LinMap {
        LinMap::from_fn(f, dom, cod, |_, _| f.one())
    }

    #[test]
    fn trivial_algebra_over_grouplikes() {
        let f = Field::Rational;
        let af = flip_k(f, grouplike_coalgebra(f, 2));
        assert_eq!(af.v1().dim(), 2);
        assert_eq!(af.w1().dim(), 2);
        assert!(af.fprime_separable().unwrap().is_yes());
        assert!(af.gprime_separable().unwrap().is_yes());
        // ϑ(gᵢ⊗1) = 1, e(gᵢ) = 1⊗1
        let w = af
            .witness(ones(f, &[2, 1], &[]), ones(f, &[2], &[1, 1]))
            .unwrap();
        for i in 0..2 {
            let col: Vec<bool> = w.omega.column(i).iter().map(|s| s.is_one()).collect();
            assert_eq!(col, (0..2).map(|r| r == i).collect::<Vec<_>>());
            let col: Vec<bool> = w.omegabar.column(i).iter().map(|s| s.is_one()).collect();
            assert_eq!(col, (0..2).map(|r| r == i).collect::<Vec<_>>());
        }
        let db = af.dual_basis_a(&w.theta, &w.casimir).unwrap();
        assert!(db.resolves_identity(af.entwining().a()));
        assert!(af.frobenius(Strategy::Witness, &cfg()).unwrap().is_yes());
    }

    #[test]
    fn trivial_case_is_one_dimensional() {
        let f = Field::prime(5).unwrap();
        let af = flip_k(f, trivial_coalgebra(f));
        assert_eq!(af.v1().dim(), 1);
        assert_eq!(af.w1().dim(), 1);
        let w = af.frobenius(Strategy::Isomorphism, &cfg()).unwrap();
        let w = w.witness().unwrap();
        let db = af.dual_basis_a(&w.theta, &w.casimir).unwrap();
        assert_eq!(db.len(), 1);
    }

    #[test]
    fn flip_with_matrix_algebra_has_dual_basis() {
        let f = Field::Rational;
        let af = Actforget::new(&Entwining::flip(
            matrix_algebra(f),
            grouplike_coalgebra(f, 2),
        ))
        .unwrap();
        let w = af.frobenius(Strategy::Witness, &cfg()).unwrap();
        let w = w.witness().expect("matrix algebra is Frobenius");
        let db = af.dual_basis_a(&w.theta, &w.casimir).unwrap();
        assert!(db.len() >= 4);
    }

    #[test]
    fn routes_agree_on_small_fields() {
        for f in [Field::prime(2).unwrap(), Field::prime(3).unwrap()] {
            let es = vec![
                Entwining::flip(trivial_algebra(f), grouplike_coalgebra(f, 2)),
                Entwining::flip(dual_numbers_algebra(f), trivial_coalgebra(f)),
                Entwining::flip(group_algebra(f, 2), dual_numbers_coalgebra(f)),
                doi_hopf_entwining(&regular_doi_hopf(&group_bialgebra(f, 2))),
                doi_hopf_entwining(&graded_matrix_doi_hopf(f)),
            ];
            for e in es {
                let af = Actforget::new(&e).unwrap();
                let a = af.frobenius(Strategy::Witness, &cfg()).unwrap();
                let b = af.frobenius(Strategy::Isomorphism, &cfg()).unwrap();
                assert_eq!(a.kind(), b.kind(), "{a:?} vs {b:?}");
                assert_ne!(a.kind(), "unknown");
                if let Verdict::Yes(w) = a {
                    if matches!(invert_psi(&e), PsiInverse::Invertible { .. }) {
                        af.dual_basis_a(&w.theta, &w.casimir).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn converters_round_trip_and_land_in_hom() {
        let f = Field::prime(3).unwrap();
        let e = doi_hopf_entwining(&regular_doi_hopf(&group_bialgebra(f, 2)));
        let af = Actforget::new(&e).unwrap();
        let (astar_c, ca) = af.objects();
        let cs = ConstraintSet::with_left_c();
        for t in af.v1().basis() {
            let ob = theta_to_omegabar(&e, t);
            assert!(morphism_residuals(ca, astar_c, &ob, cs)
                .iter()
                .all(LinMap::is_zero));
            assert_eq!(&omegabar_to_theta(&e, &ob), t);
        }
        for w in af.w1().basis() {
            let o = casimir_to_omega(&e, w);
            assert!(morphism_residuals(astar_c, ca, &o, cs)
                .iter()
                .all(LinMap::is_zero));
            assert_eq!(&omega_to_casimir(&e, &o), w);
        }
    }
}
