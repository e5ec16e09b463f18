//! Factorization structures `R: A⊗B → B⊗A`, the smash product `B#A`, and its
//! extensions over `A` and over `B`.

use std::sync::Arc;

use crate::coforget::{Coforget, Strategy};
use crate::entwining::Entwining;
use crate::error::{Error, Result};
use crate::exactlin::{Field, LinMap, Residual, SolutionSpace};
use crate::ringext::{Extension, RingExtension};
use crate::search::{linear_verdict, Bilinear, BilinearOutcome, SearchConfig, Verdict};
use crate::structures::{AlgebraData, CoalgebraData, StructureError, ValidationReport};

/// Algebras `B`, `A` with `R(a⊗b) = b_R⊗a_R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    b: AlgebraData,
    a: AlgebraData,
    rmap: LinMap,
}

impl Factorization {
    pub fn new(
        b: AlgebraData,
        a: AlgebraData,
        rmap: LinMap,
    ) -> std::result::Result<Self, StructureError> {
        let f = Self::unchecked(b, a, rmap)?;
        f.check().into_result()?;
        Ok(f)
    }

    /// Shape-checked only.
    pub fn unchecked(
        b: AlgebraData,
        a: AlgebraData,
        rmap: LinMap,
    ) -> std::result::Result<Self, StructureError> {
        let (nb, na) = (b.dim(), a.dim());
        if rmap.dom() != [na, nb]
            || rmap.cod() != [nb, na]
            || a.field() != b.field()
            || rmap.field() != a.field()
        {
            return Err(StructureError::Shape(format!(
                "factorization map has shape {:?} -> {:?}, expected [{na}, {nb}] -> [{nb}, {na}]",
                rmap.dom(),
                rmap.cod()
            )));
        }
        Ok(Factorization { b, a, rmap })
    }

    /// `R(a⊗b) = b⊗a`.
    pub fn flip(b: AlgebraData, a: AlgebraData) -> Self {
        let rmap = LinMap::swap(a.field(), a.dim(), b.dim());
        Factorization { b, a, rmap }
    }

    pub fn b(&self) -> &AlgebraData {
        &self.b
    }

    pub fn a(&self) -> &AlgebraData {
        &self.a
    }

    pub fn rmap(&self) -> &LinMap {
        &self.rmap
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn nb(&self) -> usize {
        self.b.dim()
    }

    pub fn na(&self) -> usize {
        self.a.dim()
    }

    fn id(&self, shape: &[usize]) -> LinMap {
        LinMap::identity(self.field(), shape)
    }

    pub fn check(&self) -> ValidationReport {
        let (na, nb) = (self.na(), self.nb());
        let (ma, mb, r) = (self.a.mult(), self.b.mult(), &self.rmap);
        let mut rep = ValidationReport::new("factorization");
        rep.equal(
            "multiplicative in A",
            &LinMap::identity_on(self.field(), &[na, na, nb], 0, ma).then(r),
            &LinMap::identity_on(self.field(), &[na, na, nb], 1, r)
                .on(0, r)
                .on(1, ma),
        );
        rep.equal(
            "multiplicative in B",
            &LinMap::identity_on(self.field(), &[na, nb, nb], 1, mb).then(r),
            &LinMap::identity_on(self.field(), &[na, nb, nb], 0, r)
                .on(1, r)
                .on(0, mb),
        );
        rep.equal(
            "unit of B",
            &LinMap::identity_on(self.field(), &[na], 1, self.b.unit()).then(r),
            &LinMap::identity_on(self.field(), &[na], 0, self.b.unit()),
        );
        rep.equal(
            "unit of A",
            &LinMap::identity_on(self.field(), &[nb], 0, self.a.unit()).then(r),
            &LinMap::identity_on(self.field(), &[nb], 1, self.a.unit()),
        );
        rep
    }

    /// Multiplication and unit of `B#A` on the flat space `B⊗A`, without validation.
    pub fn smash_tables(&self) -> (LinMap, LinMap) {
        let (na, nb) = (self.na(), self.nb());
        let n = na * nb;
        let mult = LinMap::identity_on(self.field(), &[nb, na, nb, na], 1, &self.rmap)
            .on(0, self.b.mult())
            .on(1, self.a.mult())
            .reshape(&[n, n], &[n]);
        let unit = self.b.unit().tensor(self.a.unit()).reshape(&[], &[n]);
        (mult, unit)
    }

    /// `(b#a)(d#c) = bd_R#a_Rc` with unit `1#1`, rejected unless the axioms hold.
    pub fn smash_product(&self) -> Result<AlgebraData> {
        self.check().into_result()?;
        let (mult, unit) = self.smash_tables();
        let s = AlgebraData::new(mult, unit)?;
        s.check().into_result()?;
        Ok(s)
    }

    /// `A → B#A`, `a ↦ 1#a`.
    pub fn a_embedding(&self) -> LinMap {
        self.b
            .unit()
            .tensor(&self.id(&[self.na()]))
            .reshape(&[self.na()], &[self.nb() * self.na()])
    }

    /// `B#A` as an extension of `A`.
    pub fn extension_over_a(&self) -> Result<RingExtension> {
        Ok(RingExtension::new(
            self.a.clone(),
            self.smash_product()?,
            self.a_embedding(),
        )?)
    }

    /// `(Aᵒᵖ, Bᵒᵖ, R̃)` with `R̃(b⊗a) = a_R⊗b_R`.
    pub fn op_dual(&self) -> Factorization {
        let (na, nb) = (self.na(), self.nb());
        let f = self.field();
        let rmap = LinMap::swap(f, nb, na)
            .then(&self.rmap)
            .then(&LinMap::swap(f, nb, na));
        Factorization {
            b: self.a.opposite(),
            a: self.b.opposite(),
            rmap,
        }
    }

    /// Swap `b⊗a ↦ a⊗b`, verified as an algebra isomorphism `B#A ≅ (Aᵒᵖ#Bᵒᵖ)ᵒᵖ`.
    pub fn op_dual_isomorphism(&self) -> Result<LinMap> {
        let (na, nb) = (self.na(), self.nb());
        let n = na * nb;
        let sigma = LinMap::swap(self.field(), nb, na).reshape(&[n], &[n]);
        let here = self.smash_product()?;
        let there = self.op_dual().smash_product()?.opposite();
        let ok = here.mult().then(&sigma) == sigma.tensor(&sigma).then(there.mult())
            && here.unit().then(&sigma) == *there.unit();
        if ok {
            Ok(sigma)
        } else {
            Err(Error::Verification(
                "op-dual smash product isomorphism".into(),
            ))
        }
    }
}

/// Residual of `aκ(b) = κ(b_R)a_R`.
pub fn kappa_residuals(x: &Factorization, kappa: &LinMap) -> Vec<LinMap> {
    let ab = x.id(&[x.na(), x.nb()]);
    let ma = x.a.mult();
    vec![ab.on(1, kappa).then(ma).sub(&x.rmap.on(0, kappa).then(ma))]
}

/// Residuals of commutation with `b#1` and with `1#a` for `b¹⊗b²⊗a²`.
pub fn casimir_residuals(x: &Factorization, e: &LinMap) -> Vec<LinMap> {
    let (ma, mb, r) = (x.a.mult(), x.b.mult(), &x.rmap);
    let b1 = x.id(&[x.nb()]);
    let with_b = b1.on(1, e).on(0, mb).sub(&b1.on(0, e).on(2, r).on(1, mb));
    let a1 = x.id(&[x.na()]);
    let with_a = a1
        .on(1, e)
        .on(0, r)
        .on(1, r)
        .on(2, ma)
        .sub(&a1.on(0, e).on(2, ma));
    vec![with_b, with_a]
}

/// `b²_R⊗κ(b¹)_Ra²` and `b¹⊗κ(b²)a²`.
pub fn normalizations(x: &Factorization, kappa: &LinMap, e: &LinMap) -> [LinMap; 2] {
    let ma = x.a.mult();
    [
        e.on(0, kappa).on(0, &x.rmap).on(1, ma),
        e.on(1, kappa).on(1, ma),
    ]
}

/// Witnesses of Frobenius for `B#A/A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashWitness {
    /// `κ: B → A`.
    pub kappa: LinMap,
    /// `b¹⊗b²⊗a²`.
    pub casimir: LinMap,
}

/// Verdicts for `B#A` over one of its factors.
#[derive(Clone, Debug)]
pub struct SmashReport {
    pub split: Verdict<LinMap>,
    pub separable: Verdict<LinMap>,
    pub frobenius: Verdict<SmashWitness>,
    /// Verdict kinds of the same three questions asked of the extension `A → B#A`,
    /// Frobenius by the bimodule route.
    pub extension: [&'static str; 3],
}

impl SmashReport {
    pub fn consistent(&self) -> bool {
        self.extension
            == [
                self.split.kind(),
                self.separable.kind(),
                self.frobenius.kind(),
            ]
    }
}

/// Precomputed spaces for `B#A` over `A`.
#[derive(Clone, Debug)]
pub struct SmashOverA {
    x: Factorization,
    v3: SolutionSpace,
    w3: SolutionSpace,
}

impl SmashOverA {
    pub fn new(x: &Factorization) -> Result<Self> {
        x.check().into_result()?;
        let (f, na, nb) = (x.field(), x.na(), x.nb());
        let xv = x.clone();
        let v_res: Residual = Arc::new(move |k: &LinMap| kappa_residuals(&xv, k));
        let v3 = SolutionSpace::solve("V3", f, &[nb], &[na], v_res)?;
        let xw = x.clone();
        let w_res: Residual = Arc::new(move |e: &LinMap| casimir_residuals(&xw, e));
        let w3 = SolutionSpace::solve("W3", f, &[], &[nb, nb, na], w_res)?;
        Ok(SmashOverA {
            x: x.clone(),
            v3,
            w3,
        })
    }

    pub fn factorization(&self) -> &Factorization {
        &self.x
    }

    pub fn v3(&self) -> &SolutionSpace {
        &self.v3
    }

    pub fn w3(&self) -> &SolutionSpace {
        &self.w3
    }

    fn one_one(&self) -> LinMap {
        self.x.b.unit().tensor(self.x.a.unit())
    }

    /// `κ ∈ V₃` with `κ(1) = 1`.
    pub fn split(&self) -> Result<Verdict<LinMap>> {
        let (ub, ua) = (self.x.b.unit(), self.x.a.unit().clone());
        let k = self
            .v3
            .affine_solve(&|k| vec![ub.then(k)], std::slice::from_ref(&ua))?;
        let v = linear_verdict(k);
        if let Verdict::Yes(k) = &v {
            expect(self.v3.contains(k) && ub.then(k) == ua, "κ(1) = 1")?;
        }
        Ok(v)
    }

    /// `e ∈ W₃` with `b¹b²⊗a² = 1⊗1`.
    pub fn separable(&self) -> Result<Verdict<LinMap>> {
        let (mb, target) = (self.x.b.mult(), self.one_one());
        let e = self
            .w3
            .affine_solve(&|e| vec![e.on(0, mb)], std::slice::from_ref(&target))?;
        let v = linear_verdict(e);
        if let Verdict::Yes(e) = &v {
            expect(
                self.w3.contains(e) && e.on(0, mb) == target,
                "b¹b²⊗a² = 1⊗1",
            )?;
        }
        Ok(v)
    }

    pub fn verify(&self, w: &SmashWitness) -> ValidationReport {
        let mut r = ValidationReport::new("smash Frobenius witness");
        for res in kappa_residuals(&self.x, &w.kappa) {
            r.vanishes("kappa condition", &res);
        }
        for res in casimir_residuals(&self.x, &w.casimir) {
            r.vanishes("casimir conditions", &res);
        }
        let target = self.one_one();
        let [p, q] = normalizations(&self.x, &w.kappa, &w.casimir);
        r.equal("kappa on first factor", &p, &target);
        r.equal("kappa on second factor", &q, &target);
        r
    }

    pub fn frobenius(&self, cfg: &SearchConfig) -> Result<Verdict<SmashWitness>> {
        let target = self.one_one().to_vec();
        let target = [target.clone(), target].concat();
        let (eb, kb) = (self.w3.basis(), self.v3.basis());
        let problem = Bilinear::new(self.x.field(), eb.len(), kb.len(), target, |j, i| {
            let [p, q] = normalizations(&self.x, &kb[i], &eb[j]);
            [p.to_vec(), q.to_vec()].concat()
        });
        Ok(match problem.solve(cfg) {
            BilinearOutcome::Found { outer, inner, .. } => {
                let w = SmashWitness {
                    kappa: self.v3.combine(&inner),
                    casimir: self.w3.combine(&outer),
                };
                let report = self.verify(&w);
                if !report.is_valid() {
                    return Err(Error::Verification(report.to_string()));
                }
                Verdict::Yes(w)
            }
            BilinearOutcome::Infeasible(r) => Verdict::No(r),
            BilinearOutcome::Undecided { candidates, seed } => {
                Verdict::Unknown { candidates, seed }
            }
        })
    }

    /// `(b#a)⊗(d#c) ↦ b⊗d_R⊗a_Rc` from quotient coordinates of `(B#A)⊗_A(B#A)`.
    pub fn gamma(&self, ext: &Extension, e: &LinMap) -> LinMap {
        let (na, nb) = (self.x.na(), self.x.nb());
        e.then(&ext.tensor().section)
            .reshape(&[], &[nb, na, nb, na])
            .on(1, &self.x.rmap)
            .on(2, self.x.a.mult())
    }

    /// `b⊗d⊗c ↦ (b#1)⊗(d#c)`, in quotient coordinates.
    pub fn gamma_inverse(&self, ext: &Extension, e: &LinMap) -> LinMap {
        let (na, nb) = (self.x.na(), self.x.nb());
        let n = na * nb;
        e.on(1, self.x.a.unit())
            .reshape(&[], &[n, n])
            .then(&ext.tensor().projection)
    }

    /// All three verdicts, compared against the extension `A → B#A`.
    pub fn report(&self, cfg: &SearchConfig) -> Result<SmashReport> {
        let ext = Extension::new(&self.x.extension_over_a()?)?;
        Ok(SmashReport {
            split: self.split()?,
            separable: self.separable()?,
            frobenius: self.frobenius(cfg)?,
            extension: [
                ext.split()?.kind(),
                ext.separable()?.kind(),
                ext.frobenius(Strategy::Isomorphism, cfg)?.kind(),
            ],
        })
    }
}

fn expect(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Verification(what.to_string()))
    }
}

/// Verdicts for `B#A` over `A`.
pub fn smash_over_a(x: &Factorization, cfg: &SearchConfig) -> Result<SmashReport> {
    SmashOverA::new(x)?.report(cfg)
}

/// Verdicts for `B#A` over `B`, through `(Aᵒᵖ#Bᵒᵖ)ᵒᵖ ≅ B#A`.
pub fn smash_over_b(x: &Factorization, cfg: &SearchConfig) -> Result<SmashReport> {
    x.op_dual_isomorphism()?;
    SmashOverA::new(&x.op_dual())?.report(cfg)
}

/// `(C*)ᵒᵖ`: `(f·g)(c) = g(c₍₁₎)f(c₍₂₎)`, unit `ε`.
pub fn dual_algebra_op(c: &CoalgebraData) -> AlgebraData {
    let (f, n) = (c.field(), c.dim());
    let d = c.comult();
    let mult = LinMap::from_fn(f, &[n, n], &[n], |k, col| {
        let (i, j) = (col / n, col % n);
        d.get(j * n + i, k).clone()
    });
    let unit = LinMap::element(f, &[n], c.counit_vec());
    AlgebraData::new(mult, unit).expect("dual algebra")
}

/// `R(a⊗c*) = Σᵢ ⟨c*, cᵢ^ψ⟩ cᵢ*⊗a_ψ` on `B = (C*)ᵒᵖ`.
pub fn entwining_to_factorization(e: &Entwining) -> Result<Factorization> {
    let (na, nc) = (e.na(), e.nc());
    let psi = e.psi();
    let rmap = LinMap::from_fn(e.field(), &[na, nc], &[nc, na], |row, col| {
        let (i, a2) = (row / na, row % na);
        let (a, j) = (col / nc, col % nc);
        psi.get(a2 * nc + j, i * na + a).clone()
    });
    Ok(Factorization::new(
        dual_algebra_op(e.c()),
        e.a().clone(),
        rmap,
    )?)
}

/// `ψ(c⊗a) = Σᵢ ⟨(cᵢ*)_R, c⟩ cᵢ⊗a_R`, for `B` presented as `(C*)ᵒᵖ`.
pub fn factorization_to_entwining(x: &Factorization, c: &CoalgebraData) -> Result<Entwining> {
    if *x.b() != dual_algebra_op(c) {
        return Err(Error::Contract(
            "first factor is not the opposite dual of the given coalgebra".into(),
        ));
    }
    let (na, nc) = (x.na(), c.dim());
    let r = x.rmap();
    let psi = LinMap::from_fn(x.field(), &[nc, na], &[na, nc], |row, col| {
        let (a2, i) = (row / nc, row % nc);
        let (k, a) = (col / na, col % na);
        r.get(k * na + a2, a * nc + i).clone()
    });
    Ok(Entwining::new(x.a().clone(), c.clone(), psi)?)
}

/// Verdicts of the coaction-forgetting Frobenius question and of `(C*)ᵒᵖ#A/A`.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub entwined: Verdict<()>,
    pub smash: Verdict<()>,
}

impl CrossCheck {
    pub fn agree(&self) -> bool {
        self.entwined.kind() == self.smash.kind()
    }
}

pub fn cross_check_frobenius(e: &Entwining, cfg: &SearchConfig) -> Result<CrossCheck> {
    let entwined = Coforget::new(e)?.frobenius(Strategy::Witness, cfg)?.shape();
    cross_check_against(e, entwined, cfg)
}

/// Same comparison with the entwined verdict already computed.
pub fn cross_check_against(
    e: &Entwining,
    entwined: Verdict<()>,
    cfg: &SearchConfig,
) -> Result<CrossCheck> {
    let smash = SmashOverA::new(&entwining_to_factorization(e)?)?
        .frobenius(cfg)?
        .shape();
    Ok(CrossCheck { entwined, smash })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn flip_smash_is_tensor_product() {
        let f = Field::prime(3).unwrap();
        let x = Factorization::flip(group_algebra(f, 2), group_algebra(f, 2));
        let s = x.smash_product().unwrap();
        assert_eq!(
            s,
            algebra_tensor(&group_algebra(f, 2), &group_algebra(f, 2))
        );
        assert_eq!(
            x.op_dual(),
            Factorization::flip(group_algebra(f, 2), group_algebra(f, 2))
        );
        assert_eq!(x.op_dual().op_dual(), x);
    }

    #[test]
    fn toggled_flip_is_rejected() {
        let f = Field::prime(2).unwrap();
        let x = Factorization::flip(group_algebra(f, 2), dual_numbers_algebra(f));
        let mut r = x.rmap().clone();
        let v = r.get(3, 3) + &f.one();
        r.set(3, 3, v);
        let bad = Factorization::unchecked(x.b().clone(), x.a().clone(), r).unwrap();
        assert!(!bad.check().is_valid());
        assert!(bad.smash_product().is_err());
    }

    #[test]
    fn group_algebra_over_scalars_matches_extension() {
        for (f, sep) in [(Field::Rational, "yes"), (Field::prime(2).unwrap(), "no")] {
            let x = Factorization::flip(group_algebra(f, 2), trivial_algebra(f));
            let rep = smash_over_a(&x, &cfg()).unwrap();
            assert_eq!(rep.separable.kind(), sep);
            assert!(rep.split.is_yes() && rep.frobenius.is_yes());
            assert!(rep.consistent(), "{rep:?}");
        }
    }

    #[test]
    fn matrices_over_scalars_are_separable_and_frobenius() {
        let f = Field::prime(2).unwrap();
        let rep = smash_over_a(
            &Factorization::flip(matrix_algebra(f), trivial_algebra(f)),
            &cfg(),
        )
        .unwrap();
        assert!(rep.separable.is_yes() && rep.frobenius.is_yes() && rep.consistent());
    }

    #[test]
    fn dictionary_round_trips() {
        for f in [Field::Rational, Field::prime(2).unwrap()] {
            let es = [
                Entwining::flip(trivial_algebra(f), grouplike_coalgebra(f, 2)),
                doi_hopf_entwining(&regular_doi_hopf(&group_bialgebra(f, 2))),
                doi_hopf_entwining(&graded_matrix_doi_hopf(f)),
                doi_hopf_entwining(&regular_doi_hopf(&sweedler_bialgebra(f))),
            ];
            for e in es {
                let x = entwining_to_factorization(&e).unwrap();
                let back = factorization_to_entwining(&x, e.c()).unwrap();
                assert_eq!(back.psi(), e.psi());
                assert_eq!(entwining_to_factorization(&back).unwrap(), x);
                x.op_dual_isomorphism().unwrap();
            }
        }
    }

    #[test]
    fn flip_entwining_gives_flip_factorization() {
        let f = Field::prime(3).unwrap();
        let e = Entwining::flip(group_algebra(f, 2), dual_numbers_coalgebra(f));
        let x = entwining_to_factorization(&e).unwrap();
        assert_eq!(x.rmap(), &LinMap::swap(f, 2, 2));
        assert!(factorization_to_entwining(&x, &grouplike_coalgebra(f, 2)).is_err());
    }

    #[test]
    fn gamma_identifies_casimir_spaces() {
        let f = Field::prime(3).unwrap();
        let x = entwining_to_factorization(&doi_hopf_entwining(&regular_doi_hopf(
            &group_bialgebra(f, 2),
        )))
        .unwrap();
        let s = SmashOverA::new(&x).unwrap();
        let ext = Extension::new(&x.extension_over_a().unwrap()).unwrap();
        assert_eq!(s.v3().dim(), ext.v1().dim());
        assert_eq!(s.w3().dim(), ext.w1().dim());
        for e in ext.w1().basis() {
            let g = s.gamma(&ext, e);
            assert!(s.w3().contains(&g));
            assert_eq!(&s.gamma_inverse(&ext, &g), e);
        }
    }

    #[test]
    fn cross_check_on_small_entwinings() {
        for f in [Field::prime(2).unwrap(), Field::prime(3).unwrap()] {
            let es = [
                Entwining::flip(trivial_algebra(f), grouplike_coalgebra(f, 2)),
                Entwining::flip(trivial_algebra(f), dual_numbers_coalgebra(f)),
                doi_hopf_entwining(&regular_doi_hopf(&group_bialgebra(f, 2))),
            ];
            for e in es {
                let c = cross_check_frobenius(&e, &cfg()).unwrap();
                assert!(c.agree(), "{c:?}");
            }
        }
    }

    #[test]
    fn over_b_uses_the_opposite_factorization() {
        let f = Field::Rational;
        let x = Factorization::flip(trivial_algebra(f), group_algebra(f, 3));
        let rep = smash_over_b(&x, &cfg()).unwrap();
        assert!(rep.separable.is_yes() && rep.consistent());
    }
}
