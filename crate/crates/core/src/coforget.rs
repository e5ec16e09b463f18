//! The functor forgetting the coaction, its adjoint `•⊗C`, and their witnesses.

use std::sync::Arc;

use crate::entwining::{std_object_ac, std_object_cstar_a, EntwinedObject, Entwining};
use crate::error::{Error, Result};
use crate::exactlin::{LinMap, Residual, SolutionSpace};
use crate::homspaces::{iso_exists, morphism_residuals, ConstraintSet, IsoVerdict};
use crate::search::{linear_verdict, Bilinear, BilinearOutcome, SearchConfig, Verdict};
use crate::structures::ValidationReport;

/// Which characterization decides a Frobenius question.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Bilinear search for normalized witnesses.
    Witness,
    /// Isomorphism of the two standard objects.
    Isomorphism,
}

/// Normalized witnesses with the mutually inverse comparison maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusWitness {
    /// `θ: C⊗C → A`.
    pub theta: LinMap,
    /// `z ∈ A⊗C`.
    pub z: LinMap,
    /// `C*⊗A → A⊗C` built from `z`.
    pub phi: LinMap,
    /// `A⊗C → C*⊗A` built from `θ`.
    pub phibar: LinMap,
}

/// Dual basis of `A⊗C` as a left `A`-module: `x = Σₖ σₖ(x)·(1⊗eₖ)`.
#[derive(Clone, Debug)]
pub struct AcDualBasis {
    /// Elements `1⊗eₖ` of `A⊗C`.
    pub elements: Vec<LinMap>,
    /// Left `A`-linear maps `σₖ: A⊗C → A`.
    pub functionals: Vec<LinMap>,
}

/// Precomputed spaces and objects for one entwining.
#[derive(Clone, Debug)]
pub struct Coforget {
    e: Entwining,
    v1: SolutionSpace,
    w1: SolutionSpace,
    ac: EntwinedObject,
    cstar_a: EntwinedObject,
}

fn eps_one(e: &Entwining) -> LinMap {
    e.c().counit().on(0, e.a().unit())
}

/// Residuals of the two defining conditions of `θ`.
pub fn theta_residuals(e: &Entwining, theta: &LinMap) -> Vec<LinMap> {
    let (na, nc) = (e.na(), e.nc());
    let (m, psi) = (e.a().mult(), e.psi());
    let cca = LinMap::identity(e.field(), &[nc, nc, na]);
    let lhs = cca.on(0, theta).on(0, m);
    let rhs = cca.on(1, psi).on(0, psi).on(1, theta).on(0, m);
    let d = e.c().comult();
    let cc = LinMap::identity(e.field(), &[nc, nc]);
    let lhs2 = cc.on(1, d).on(0, theta);
    let rhs2 = cc.on(0, d).on(1, theta).on(0, psi);
    vec![lhs.sub(&rhs), lhs2.sub(&rhs2)]
}

/// Residual of `az = za` for `z ∈ A⊗C`.
pub fn casimir_residuals(e: &Entwining, z: &LinMap) -> Vec<LinMap> {
    let a1 = LinMap::identity(e.field(), &[e.na()]);
    let m = e.a().mult();
    let lhs = a1.on(1, z).on(0, m);
    let rhs = a1.on(0, z).on(1, e.psi()).on(0, m);
    vec![lhs.sub(&rhs)]
}

/// `d ↦ Σₗ aₗθ(cₗ⊗d)` and `d ↦ Σₗ aₗ_ψ θ(d^ψ⊗cₗ)`.
pub fn normalizations(e: &Entwining, theta: &LinMap, z: &LinMap) -> [LinMap; 2] {
    let c1 = LinMap::identity(e.field(), &[e.nc()]);
    let m = e.a().mult();
    [
        c1.on(0, z).on(1, theta).on(0, m),
        c1.on(1, z).on(0, e.psi()).on(1, theta).on(0, m),
    ]
}

/// `φ̄(a⊗c) = Σᵢ eᵢ*⊗a_ψθ(eᵢ^ψ⊗c)`, as a map on `[A, C] → [C*, A]`.
pub fn theta_to_phibar(e: &Entwining, theta: &LinMap) -> LinMap {
    let (f, na, nc) = (e.field(), e.na(), e.nc());
    LinMap::identity(f, &[na, nc])
        .on(0, &LinMap::coevaluation(f, nc))
        .on(1, e.psi())
        .on(2, theta)
        .on(1, e.a().mult())
}

/// `φ(c*⊗a) = Σₗ aₗa_ψ⊗⟨c*, cₗ₍₂₎⟩cₗ₍₁₎^ψ`, as a map on `[C*, A] → [A, C]`.
pub fn z_to_phi(e: &Entwining, z: &LinMap) -> LinMap {
    let (f, na, nc) = (e.field(), e.na(), e.nc());
    LinMap::identity(f, &[nc, na])
        .on(0, z)
        .on(1, e.c().comult())
        .on(2, &LinMap::evaluation(f, nc))
        .on(1, e.psi())
        .on(0, e.a().mult())
}

/// `θ(d⊗c) = φ̄(1⊗c)(d)`.
pub fn phibar_to_theta(e: &Entwining, phibar: &LinMap) -> LinMap {
    let (f, na, nc) = (e.field(), e.na(), e.nc());
    let phibar = phibar.reshape(&[na, nc], &[nc, na]);
    LinMap::identity(f, &[nc, nc])
        .on(1, e.a().unit())
        .on(1, &phibar)
        .on(0, &LinMap::evaluation(f, nc))
}

/// `z = φ(ε⊗1)`.
pub fn phi_to_z(e: &Entwining, phi: &LinMap) -> LinMap {
    let (f, na, nc) = (e.field(), e.na(), e.nc());
    let phi = phi.reshape(&[nc, na], &[na, nc]);
    let eps = LinMap::element(f, &[nc], e.c().counit_vec());
    eps.tensor(e.a().unit()).then(&phi)
}

fn flat_square(x: &LinMap, n: usize) -> LinMap {
    x.reshape(&[n], &[n])
}

impl Coforget {
    pub fn new(e: &Entwining) -> Result<Self> {
        let (f, na, nc) = (e.field(), e.na(), e.nc());
        let ev = e.clone();
        let theta_res: Residual = Arc::new(move |t: &LinMap| theta_residuals(&ev, t));
        let v1 = SolutionSpace::solve("V1", f, &[nc, nc], &[na], theta_res)?;
        let ew = e.clone();
        let z_res: Residual = Arc::new(move |z: &LinMap| casimir_residuals(&ew, z));
        let w1 = SolutionSpace::solve("W1", f, &[], &[na, nc], z_res)?;
        Ok(Coforget {
            e: e.clone(),
            v1,
            w1,
            ac: std_object_ac(e)?,
            cstar_a: std_object_cstar_a(e)?,
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

    /// `A⊗C` and `C*⊗A` as objects with a left `A`-action.
    pub fn objects(&self) -> (&EntwinedObject, &EntwinedObject) {
        (&self.ac, &self.cstar_a)
    }

    /// `θ ∈ V₁` with `θ∘Δ = ε·1`.
    pub fn f_separable(&self) -> Result<Verdict<LinMap>> {
        let d = self.e.c().comult();
        let target = eps_one(&self.e);
        let theta = self.v1.affine_solve(&|t| vec![d.then(t)], &[target])?;
        let v = linear_verdict(theta);
        if let Verdict::Yes(t) = &v {
            self.expect(
                self.v1.contains(t) && d.then(t) == eps_one(&self.e),
                "θ∘Δ = ε",
            )?;
        }
        Ok(v)
    }

    /// `z ∈ W₁` with `Σ ε(cₗ)aₗ = 1`.
    pub fn g_separable(&self) -> Result<Verdict<LinMap>> {
        let eps = self.e.c().counit();
        let unit = self.e.a().unit().clone();
        let z = self
            .w1
            .affine_solve(&|z| vec![z.on(1, eps)], std::slice::from_ref(&unit))?;
        let v = linear_verdict(z);
        if let Verdict::Yes(z) = &v {
            self.expect(self.w1.contains(z) && z.on(1, eps) == unit, "Σ ε(cₗ)aₗ = 1")?;
        }
        Ok(v)
    }

    fn expect(&self, ok: bool, what: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::Verification(what.to_string()))
        }
    }

    /// Checks every defining property of a Frobenius witness exactly.
    pub fn verify(&self, w: &FrobeniusWitness) -> ValidationReport {
        let e = &self.e;
        let mut r = ValidationReport::new("coaction-forgetting Frobenius witness");
        for res in theta_residuals(e, &w.theta) {
            r.vanishes("theta conditions", &res);
        }
        for res in casimir_residuals(e, &w.z) {
            r.vanishes("z commutes with A", &res);
        }
        let target = eps_one(e);
        let [na_, nb_] = normalizations(e, &w.theta, &w.z);
        r.equal("normalization through z then theta", &na_, &target);
        r.equal("normalization through theta twisted", &nb_, &target);
        let n = self.ac.dim;
        let (phi, phibar) = (flat_square(&w.phi, n), flat_square(&w.phibar, n));
        r.equal(
            "phi after phibar",
            &phibar.then(&phi),
            &LinMap::identity(e.field(), &[n]),
        );
        r.equal(
            "phibar after phi",
            &phi.then(&phibar),
            &LinMap::identity(e.field(), &[n]),
        );
        for res in morphism_residuals(
            &self.ac,
            &self.cstar_a,
            &phibar,
            ConstraintSet::with_left_a(),
        ) {
            r.vanishes("phibar is a morphism", &res);
        }
        for res in morphism_residuals(&self.cstar_a, &self.ac, &phi, ConstraintSet::with_left_a()) {
            r.vanishes("phi is a morphism", &res);
        }
        r
    }

    /// Completes `(θ, z)` with the comparison maps and verifies everything.
    pub fn witness(&self, theta: LinMap, z: LinMap) -> Result<FrobeniusWitness> {
        let w = FrobeniusWitness {
            phi: z_to_phi(&self.e, &z),
            phibar: theta_to_phibar(&self.e, &theta),
            theta,
            z,
        };
        let report = self.verify(&w);
        if report.is_valid() {
            Ok(w)
        } else {
            Err(Error::Verification(report.to_string()))
        }
    }

    /// Decides whether forgetting the coaction and `•⊗C` form a Frobenius pair.
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
        let (zb, tb) = (self.w1.basis(), self.v1.basis());
        let problem = Bilinear::new(e.field(), zb.len(), tb.len(), tvec, |j, i| {
            let [x, y] = normalizations(e, &tb[i], &zb[j]);
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
            match iso_exists(&self.ac, &self.cstar_a, ConstraintSet::with_left_a(), cfg)? {
                IsoVerdict::Yes { forward, backward } => {
                    let phibar = forward.reshape(&[na, nc], &[nc, na]);
                    let phi = backward.reshape(&[nc, na], &[na, nc]);
                    let theta = phibar_to_theta(e, &phibar);
                    let z = phi_to_z(e, &phi);
                    self.expect(
                        theta_to_phibar(e, &theta) == phibar && z_to_phi(e, &z) == phi,
                        "isomorphism pair is the image of (θ, z)",
                    )?;
                    Verdict::Yes(self.witness(theta, z)?)
                }
                IsoVerdict::No(r) => Verdict::No(r),
                IsoVerdict::ProbablyNo { trials, seed } => Verdict::Unknown {
                    candidates: trials,
                    seed,
                },
            },
        )
    }

    /// `σₖ(a⊗d) = Σ a·aₗ_ψ θ(d^ψ⊗cₗ₍₁₎)⟨eₖ*, cₗ₍₂₎⟩` with elements `1⊗eₖ`.
    pub fn dual_basis_ac(&self, theta: &LinMap, z: &LinMap) -> Result<AcDualBasis> {
        let e = &self.e;
        let (f, na, nc) = (e.field(), e.na(), e.nc());
        let target = eps_one(e);
        let [x, y] = normalizations(e, theta, z);
        if x != target || y != target {
            return Err(Error::Contract(
                "witnesses fail the Frobenius normalization".into(),
            ));
        }
        let m = e.a().mult();
        let sigma = LinMap::identity(f, &[na, nc])
            .on(2, z)
            .on(3, e.c().comult())
            .on(1, e.psi())
            .on(2, theta)
            .on(1, m)
            .on(0, m);
        let functionals = (0..nc)
            .map(|k| sigma.on(1, &basis_functional(f, nc, k)))
            .collect();
        let elements = (0..nc)
            .map(|k| e.a().unit().tensor(&LinMap::basis_element(f, &[nc], k)))
            .collect();
        let db = AcDualBasis {
            elements,
            functionals,
        };
        self.expect(db.resolves_identity(e), "dual basis of A⊗C")?;
        Ok(db)
    }
}

fn basis_functional(f: crate::exactlin::Field, n: usize, k: usize) -> LinMap {
    let mut v = vec![f.zero(); n];
    v[k] = f.one();
    LinMap::functional(f, &[n], v)
}

impl AcDualBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `Σₖ σₖ(x)·xₖ = x` and every `σₖ` is left `A`-linear.
    pub fn resolves_identity(&self, e: &Entwining) -> bool {
        let (f, na, nc) = (e.field(), e.na(), e.nc());
        let m = e.a().mult();
        let zero = LinMap::zero(f, &[na, nc], &[na, nc]);
        let total = self
            .functionals
            .iter()
            .zip(&self.elements)
            .fold(zero, |acc, (s, x)| {
                let act = LinMap::identity_on(f, &[na], 1, x).on(0, m);
                acc.add(&s.then(&act))
            });
        let linear = self.functionals.iter().all(|s| {
            let aac = LinMap::identity(f, &[na, na, nc]);
            aac.on(0, m).on(0, s) == aac.on(1, s).on(0, m)
        });
        linear && total == LinMap::identity(f, &[na, nc])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::exactlin::Field;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    fn flip_k(f: Field, c: crate::structures::CoalgebraData) -> Coforget {
        Coforget::new(&Entwining::flip(trivial_algebra(f), c)).unwrap()
    }

    fn theta_from(f: Field, nc: usize, vals: &[(usize, usize, i64)]) -> LinMap {
        let mut t = LinMap::zero(f, &[nc, nc], &[1]);
        for &(i, j, v) in vals {
            t.set(0, i * nc + j, f.int(v));
        }
        t
    }

    #[test]
    fn trivial_case_is_one_dimensional_and_frobenius() {
        let f = Field::Rational;
        let cf = flip_k(f, trivial_coalgebra(f));
        assert_eq!(cf.v1().dim(), 1);
        assert!(cf.f_separable().unwrap().is_yes());
        let w = cf.frobenius(Strategy::Witness, &cfg()).unwrap();
        let w = w.witness().unwrap();
        assert!(w.theta.get(0, 0).is_one() && w.z.get(0, 0).is_one());
    }

    #[test]
    fn grouplike_coalgebra_is_separable_and_frobenius() {
        let f = Field::Rational;
        let cf = flip_k(f, grouplike_coalgebra(f, 2));
        assert_eq!(cf.v1().dim(), 2);
        let theta = cf.f_separable().unwrap();
        assert_eq!(
            theta.witness().unwrap(),
            &theta_from(f, 2, &[(0, 0, 1), (1, 1, 1)])
        );
        let z = LinMap::element(f, &[1, 2], vec![f.one(), f.one()]);
        let w = cf
            .witness(theta_from(f, 2, &[(0, 0, 1), (1, 1, 1)]), z)
            .unwrap();
        for i in 0..2 {
            // phibar(1⊗gᵢ) = gᵢ*⊗1 and phi(gᵢ*⊗1) = 1⊗gᵢ
            let col: Vec<bool> = w.phibar.column(i).iter().map(|s| s.is_one()).collect();
            assert_eq!(col, (0..2).map(|r| r == i).collect::<Vec<_>>());
            let col: Vec<bool> = w.phi.column(i).iter().map(|s| s.is_one()).collect();
            assert_eq!(col, (0..2).map(|r| r == i).collect::<Vec<_>>());
        }
        let db = cf.dual_basis_ac(&w.theta, &w.z).unwrap();
        assert_eq!(db.len(), 2);
    }

    #[test]
    fn dual_numbers_coalgebra_is_frobenius_but_not_separable() {
        let f = Field::Rational;
        let cf = flip_k(f, dual_numbers_coalgebra(f));
        assert_eq!(cf.v1().dim(), 2);
        assert!(cf.f_separable().unwrap().is_no());
        let theta = theta_from(f, 2, &[(0, 1, 1), (1, 0, 1)]);
        let z = LinMap::element(f, &[1, 2], vec![f.zero(), f.one()]);
        let w = cf.witness(theta, z).unwrap();
        cf.dual_basis_ac(&w.theta, &w.z).unwrap();
        assert!(cf.frobenius(Strategy::Witness, &cfg()).unwrap().is_yes());
        assert!(cf
            .frobenius(Strategy::Isomorphism, &cfg())
            .unwrap()
            .is_yes());
    }

    #[test]
    fn regular_group_datum_centralizer_and_separability() {
        let q = Field::Rational;
        let cf = Coforget::new(&doi_hopf_entwining(&regular_doi_hopf(&group_bialgebra(
            q, 2,
        ))))
        .unwrap();
        assert_eq!(cf.w1().dim(), 2);
        for v in [[1, 1, 0, 0], [0, 0, 1, 1]] {
            let z = LinMap::element(q, &[2, 2], v.iter().map(|&x| q.int(x)).collect());
            assert!(cf.w1().contains(&z));
        }
        let z = cf.g_separable().unwrap();
        let half = crate::exactlin::Scalar::parse(q, "1/2").unwrap();
        assert_eq!(
            z.witness().unwrap().coeffs(),
            &[half.clone(), half, q.zero(), q.zero()]
        );
        let f2 = Field::prime(2).unwrap();
        let cf = Coforget::new(&doi_hopf_entwining(&regular_doi_hopf(&group_bialgebra(
            f2, 2,
        ))))
        .unwrap();
        assert!(cf.g_separable().unwrap().is_no());
    }

    #[test]
    fn routes_agree_on_small_fields() {
        for f in [Field::prime(2).unwrap(), Field::prime(3).unwrap()] {
            let es = vec![
                Entwining::flip(trivial_algebra(f), grouplike_coalgebra(f, 2)),
                Entwining::flip(trivial_algebra(f), dual_numbers_coalgebra(f)),
                Entwining::flip(group_algebra(f, 2), dual_numbers_coalgebra(f)),
                doi_hopf_entwining(&regular_doi_hopf(&group_bialgebra(f, 2))),
                doi_hopf_entwining(&graded_matrix_doi_hopf(f)),
            ];
            for e in es {
                let cf = Coforget::new(&e).unwrap();
                let a = cf.frobenius(Strategy::Witness, &cfg()).unwrap();
                let b = cf.frobenius(Strategy::Isomorphism, &cfg()).unwrap();
                assert_eq!(a.kind(), b.kind(), "{a:?} vs {b:?}");
                assert_ne!(a.kind(), "unknown");
            }
        }
    }

    #[test]
    fn converters_round_trip_on_bases() {
        let f = Field::prime(3).unwrap();
        let e = doi_hopf_entwining(&regular_doi_hopf(&group_bialgebra(f, 2)));
        let cf = Coforget::new(&e).unwrap();
        for t in cf.v1().basis() {
            assert_eq!(&phibar_to_theta(&e, &theta_to_phibar(&e, t)), t);
        }
        for z in cf.w1().basis() {
            assert_eq!(&phi_to_z(&e, &z_to_phi(&e, z)), z);
        }
    }
}
