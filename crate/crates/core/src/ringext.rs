//! Algebra extensions `R → S`: conditional expectations, Casimir elements in `S⊗_R S`,
//! and the split, separable and Frobenius verdicts.

use std::sync::Arc;

use crate::coforget::Strategy;
use crate::error::{Error, Result};
use crate::exactlin::{
    from_columns, kernel, solve_linear, Field, LinMap, Residual, Scalar, SolutionSpace,
};
use crate::homspaces::{invertible_in, IsoVerdict};
use crate::search::{linear_verdict, Bilinear, BilinearOutcome, NoReason, SearchConfig, Verdict};
use crate::structures::{AlgebraData, StructureError, ValidationReport};

/// A unital algebra map `i: R → S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingExtension {
    r: AlgebraData,
    s: AlgebraData,
    i: LinMap,
}

impl RingExtension {
    pub fn new(
        r: AlgebraData,
        s: AlgebraData,
        i: LinMap,
    ) -> std::result::Result<Self, StructureError> {
        let x = Self::unchecked(r, s, i)?;
        x.check().into_result()?;
        Ok(x)
    }

    /// Shape-checked only.
    pub fn unchecked(
        r: AlgebraData,
        s: AlgebraData,
        i: LinMap,
    ) -> std::result::Result<Self, StructureError> {
        if i.dom() != [r.dim()]
            || i.cod() != [s.dim()]
            || r.field() != s.field()
            || i.field() != r.field()
        {
            return Err(StructureError::Shape(format!(
                "extension map has shape {:?} -> {:?}, expected [{}] -> [{}]",
                i.dom(),
                i.cod(),
                r.dim(),
                s.dim()
            )));
        }
        Ok(RingExtension { r, s, i })
    }

    /// `k → S` through the unit.
    pub fn over_scalars(s: AlgebraData) -> Self {
        let f = s.field();
        let r = AlgebraData::new(
            LinMap::identity(f, &[1]).reshape(&[1, 1], &[1]),
            LinMap::element(f, &[1], vec![f.one()]),
        )
        .expect("ground field");
        let i = s.unit().reshape(&[1], &[s.dim()]);
        RingExtension { r, s, i }
    }

    pub fn identity(a: AlgebraData) -> Self {
        let i = LinMap::identity(a.field(), &[a.dim()]);
        RingExtension {
            r: a.clone(),
            s: a,
            i,
        }
    }

    pub fn base(&self) -> &AlgebraData {
        &self.r
    }

    pub fn top(&self) -> &AlgebraData {
        &self.s
    }

    pub fn map(&self) -> &LinMap {
        &self.i
    }

    pub fn field(&self) -> Field {
        self.r.field()
    }

    pub fn check(&self) -> ValidationReport {
        let mut rep = ValidationReport::new("algebra map");
        rep.equal("unit", &self.r.unit().then(&self.i), self.s.unit());
        let rr = LinMap::identity(self.field(), &[self.r.dim(), self.r.dim()]);
        rep.equal(
            "multiplicative",
            &rr.on(0, self.r.mult()).then(&self.i),
            &rr.on(0, &self.i).on(1, &self.i).on(0, self.s.mult()),
        );
        rep
    }
}

/// `S⊗_R S` as a quotient of `S⊗S` with a chosen section.
#[derive(Clone, Debug)]
pub struct TensorOverBase {
    /// `[S, S] → [Q]`, kernel spanned by `s·i(r)⊗t − s⊗i(r)·t`.
    pub projection: LinMap,
    /// `[Q] → [S, S]` with `projection ∘ section = id`.
    pub section: LinMap,
}

impl TensorOverBase {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }
}

/// Computes the balanced tensor square of `S` over `R`.
pub fn tensor_over_base(x: &RingExtension) -> Result<TensorOverBase> {
    let (f, nr, ns) = (x.field(), x.r.dim(), x.s.dim());
    let m = x.s.mult();
    let srs = LinMap::identity_on(f, &[ns, nr, ns], 1, &x.i);
    let relations = srs.on(0, m).sub(&srs.on(1, m));
    let annihilator = kernel(&relations.transpose().flat());
    let q = annihilator.len();
    let projection = LinMap::from_fn(f, &[ns, ns], &[q], |r, c| annihilator[r][c].clone());
    let flat = projection.flat();
    let mut cols = Vec::with_capacity(q);
    for k in 0..q {
        let mut target = vec![f.zero(); q];
        target[k] = f.one();
        let sol = solve_linear(&flat, &target)?;
        cols.push(
            sol.particular
                .ok_or_else(|| Error::Verification("quotient map is not onto".into()))?,
        );
    }
    let section = from_columns(f, ns * ns, &cols).reshape(&[q], &[ns, ns]);
    if section.then(&projection) != LinMap::identity(f, &[q]) {
        return Err(Error::Verification(
            "section of the balanced tensor square".into(),
        ));
    }
    Ok(TensorOverBase {
        projection,
        section,
    })
}

/// An `(R, S)`-bimodule on a flat space.
///
/// On `Hom_R(S,R)` the actions are `(r·f·s)(t) = r·f(st)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub label: String,
    pub dim: usize,
    /// `[R, M] → [M]`.
    pub left: LinMap,
    /// `[M, S] → [M]`.
    pub right: LinMap,
}

/// Residuals of left `R`- and right `S`-linearity of `f: X → Y`.
pub fn bimodule_residuals(x: &Bimodule, y: &Bimodule, f: &LinMap) -> Vec<LinMap> {
    let field = f.field();
    let f = f.reshape(&[x.dim], &[y.dim]);
    let (nr, ns) = (x.left.dom()[0], x.right.dom()[1]);
    let left = x
        .left
        .then(&f)
        .sub(&LinMap::identity_on(field, &[nr, x.dim], 1, &f).then(&y.left));
    let right = x
        .right
        .then(&f)
        .sub(&LinMap::identity_on(field, &[x.dim, ns], 0, &f).then(&y.right));
    vec![left, right]
}

fn bimodule_hom(x: &Bimodule, y: &Bimodule) -> Result<SolutionSpace> {
    let (xc, yc) = (x.clone(), y.clone());
    let res: Residual = Arc::new(move |f: &LinMap| bimodule_residuals(&xc, &yc, f));
    let label = format!("Hom({}, {})", x.label, y.label);
    Ok(SolutionSpace::solve(
        label,
        x.left.field(),
        &[x.dim],
        &[y.dim],
        res,
    )?)
}

/// Normalized witnesses with the mutually inverse bimodule maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionWitness {
    /// `S → R`, an `R`-bimodule map.
    pub expectation: LinMap,
    /// Element of `S⊗_R S` in quotient coordinates.
    pub casimir: LinMap,
    /// `Hom_R(S,R) → S`, in coordinates of the dual basis space.
    pub phi: LinMap,
    /// `S → Hom_R(S,R)`.
    pub phibar: LinMap,
}

/// Dual basis of `S` as a right `R`-module: `s = Σᵢ sᵢ·fᵢ(s)`.
#[derive(Clone, Debug)]
pub struct SDualBasis {
    /// `sᵢ`, each `[] → [S]`.
    pub elements: Vec<LinMap>,
    /// Right `R`-linear `fᵢ: [S] → [R]`.
    pub functionals: Vec<LinMap>,
}

/// Precomputed spaces for one extension.
#[derive(Clone, Debug)]
pub struct Extension {
    x: RingExtension,
    tensor: TensorOverBase,
    v1: SolutionSpace,
    w1: SolutionSpace,
    dual: SolutionSpace,
    dual_module: Bimodule,
    regular: Bimodule,
    projective: Option<SDualBasis>,
}

fn right_linear_residual(x: &RingExtension, g: &LinMap) -> LinMap {
    let (f, nr, ns) = (x.field(), x.r.dim(), x.s.dim());
    let sr = LinMap::identity(f, &[ns, nr]);
    sr.on(1, &x.i)
        .on(0, x.s.mult())
        .then(g)
        .sub(&sr.on(0, g).on(0, x.r.mult()))
}

fn left_linear_residual(x: &RingExtension, g: &LinMap) -> LinMap {
    let (f, nr, ns) = (x.field(), x.r.dim(), x.s.dim());
    let rs = LinMap::identity(f, &[nr, ns]);
    rs.on(0, &x.i)
        .on(0, x.s.mult())
        .then(g)
        .sub(&rs.on(1, g).on(0, x.r.mult()))
}

impl Extension {
    pub fn new(x: &RingExtension) -> Result<Self> {
        let (f, nr, ns) = (x.field(), x.r.dim(), x.s.dim());
        let tensor = tensor_over_base(x)?;
        let xv = x.clone();
        let v_res: Residual = Arc::new(move |g: &LinMap| {
            vec![left_linear_residual(&xv, g), right_linear_residual(&xv, g)]
        });
        let v1 = SolutionSpace::solve("V1", f, &[ns], &[nr], v_res)?;
        let (xw, tw) = (x.clone(), tensor.clone());
        let w_res: Residual = Arc::new(move |e: &LinMap| casimir_residuals(&xw, &tw, e));
        let w1 = SolutionSpace::solve("W1", f, &[], &[tensor.dim()], w_res)?;
        let xd = x.clone();
        let d_res: Residual = Arc::new(move |g: &LinMap| vec![right_linear_residual(&xd, g)]);
        let dual = SolutionSpace::solve("Hom_R(S,R)", f, &[ns], &[nr], d_res)?;
        let dual_module = dual_bimodule(x, &dual)?;
        let regular = Bimodule {
            label: "S".into(),
            dim: ns,
            left: LinMap::identity_on(f, &[nr, ns], 0, &x.i).then(x.s.mult()),
            right: x.s.mult().clone(),
        };
        let projective = projective_basis(x, &dual)?;
        Ok(Extension {
            x: x.clone(),
            tensor,
            v1,
            w1,
            dual,
            dual_module,
            regular,
            projective,
        })
    }

    pub fn extension(&self) -> &RingExtension {
        &self.x
    }

    pub fn tensor(&self) -> &TensorOverBase {
        &self.tensor
    }

    /// Conditional expectations, i.e. `R`-bimodule maps `S → R`.
    pub fn v1(&self) -> &SolutionSpace {
        &self.v1
    }

    /// Casimir elements of `S⊗_R S`.
    pub fn w1(&self) -> &SolutionSpace {
        &self.w1
    }

    /// Right `R`-linear maps `S → R`.
    pub fn dual(&self) -> &SolutionSpace {
        &self.dual
    }

    /// `Hom_R(S,R)` and `S` as `(R, S)`-bimodules.
    pub fn bimodules(&self) -> (&Bimodule, &Bimodule) {
        (&self.dual_module, &self.regular)
    }

    /// A dual basis of `S` over `R` built from a `k`-basis, when `S` is projective.
    pub fn projective_basis(&self) -> Option<&SDualBasis> {
        self.projective.as_ref()
    }

    fn expect(&self, ok: bool, what: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::Verification(what.to_string()))
        }
    }

    /// Representative in `S⊗S` of a quotient element.
    pub fn lift(&self, e: &LinMap) -> LinMap {
        e.then(&self.tensor.section)
    }

    /// Expectation with `ν̄(1) = 1`.
    pub fn split(&self) -> Result<Verdict<LinMap>> {
        let (one_s, one_r) = (self.x.s.unit(), self.x.r.unit().clone());
        let nu = self
            .v1
            .affine_solve(&|g| vec![one_s.then(g)], std::slice::from_ref(&one_r))?;
        let v = linear_verdict(nu);
        if let Verdict::Yes(g) = &v {
            self.expect(self.v1.contains(g) && one_s.then(g) == one_r, "ν̄(1) = 1")?;
        }
        Ok(v)
    }

    /// Casimir element with `e¹e² = 1`.
    pub fn separable(&self) -> Result<Verdict<LinMap>> {
        let m = self.x.s.mult();
        let one = self.x.s.unit().clone();
        let e = self
            .w1
            .affine_solve(&|e| vec![self.lift(e).then(m)], std::slice::from_ref(&one))?;
        let v = linear_verdict(e);
        if let Verdict::Yes(e) = &v {
            self.expect(
                self.w1.contains(e) && self.lift(e).then(m) == one,
                "e¹e² = 1",
            )?;
        }
        Ok(v)
    }

    /// `ν̄(e¹)e²` and `e¹ν̄(e²)`.
    pub fn normalizations(&self, nu: &LinMap, e: &LinMap) -> [LinMap; 2] {
        let (i, m) = (&self.x.i, self.x.s.mult());
        let lifted = self.lift(e);
        [
            lifted.on(0, nu).on(0, i).then(m),
            lifted.on(1, nu).on(1, i).then(m),
        ]
    }

    /// `φ̄(s) = (t ↦ ν̄(st))`, as a map `[S] → [dual coordinates]`.
    pub fn expectation_to_phibar(&self, nu: &LinMap) -> Result<LinMap> {
        let (f, ns) = (self.x.field(), self.x.s.dim());
        let mut cols = Vec::with_capacity(ns);
        for j in 0..ns {
            let g = LinMap::identity(f, &[ns])
                .on(0, &self.x.s.basis(j))
                .then(self.x.s.mult())
                .then(nu);
            let coords = self
                .dual
                .coordinates(&g)
                .ok_or_else(|| Error::Contract("expectation is not right R-linear".into()))?;
            cols.push(coords);
        }
        Ok(from_columns(f, self.dual.dim(), &cols))
    }

    /// `ν̄ = φ̄(1)`.
    pub fn phibar_to_expectation(&self, phibar: &LinMap) -> LinMap {
        let coords = self.x.s.unit().then(phibar).to_vec();
        self.dual.combine(&coords)
    }

    /// `φ(f) = f(e¹)e²`.
    pub fn casimir_to_phi(&self, e: &LinMap) -> LinMap {
        let (f, ns) = (self.x.field(), self.x.s.dim());
        let lifted = self.lift(e);
        let cols: Vec<Vec<Scalar>> = self
            .dual
            .basis()
            .iter()
            .map(|g| {
                lifted
                    .on(0, g)
                    .on(0, &self.x.i)
                    .then(self.x.s.mult())
                    .to_vec()
            })
            .collect();
        from_columns(f, ns, &cols)
    }

    /// `e = Σᵢ sᵢ⊗φ(fᵢ)` through the projective dual basis.
    pub fn phi_to_casimir(&self, phi: &LinMap) -> Result<LinMap> {
        let (f, ns) = (self.x.field(), self.x.s.dim());
        let db = self
            .projective
            .as_ref()
            .ok_or_else(|| Error::Contract("S has no finite dual basis over R".into()))?;
        let mut sum = LinMap::zero(f, &[], &[ns, ns]);
        for (s, g) in db.elements.iter().zip(&db.functionals) {
            let coords = self.dual.coordinates(g).ok_or_else(|| {
                Error::Verification("dual basis functional outside Hom_R(S,R)".into())
            })?;
            let image = LinMap::element(f, &[ns], phi.apply(&coords));
            sum = sum.add(&s.tensor(&image));
        }
        Ok(sum.then(&self.tensor.projection))
    }

    /// Checks every defining property of a Frobenius witness exactly.
    pub fn verify(&self, w: &ExtensionWitness) -> ValidationReport {
        let mut r = ValidationReport::new("extension Frobenius witness");
        for res in self.v1.residual(&w.expectation) {
            r.vanishes("expectation is R-bilinear", &res);
        }
        for res in self.w1.residual(&w.casimir) {
            r.vanishes("casimir commutes with S", &res);
        }
        let one = self.x.s.unit();
        let [a, b] = self.normalizations(&w.expectation, &w.casimir);
        r.equal("expectation on first factor", &a, one);
        r.equal("expectation on second factor", &b, one);
        let f = self.x.field();
        let (h, ns) = (self.dual.dim(), self.x.s.dim());
        if w.phi.dom() != [h] || w.phibar.cod() != [h] {
            r.vanishes(
                "comparison maps have dual coordinates",
                &LinMap::identity(f, &[1]),
            );
            return r;
        }
        r.equal(
            "phi after phibar",
            &w.phibar.then(&w.phi),
            &LinMap::identity(f, &[ns]),
        );
        r.equal(
            "phibar after phi",
            &w.phi.then(&w.phibar),
            &LinMap::identity(f, &[h]),
        );
        for res in bimodule_residuals(&self.regular, &self.dual_module, &w.phibar) {
            r.vanishes("phibar is a bimodule map", &res);
        }
        for res in bimodule_residuals(&self.dual_module, &self.regular, &w.phi) {
            r.vanishes("phi is a bimodule map", &res);
        }
        r
    }

    /// Completes `(ν̄, e)` with the comparison maps and verifies everything.
    pub fn witness(&self, expectation: LinMap, casimir: LinMap) -> Result<ExtensionWitness> {
        let w = ExtensionWitness {
            phi: self.casimir_to_phi(&casimir),
            phibar: self.expectation_to_phibar(&expectation)?,
            expectation,
            casimir,
        };
        let report = self.verify(&w);
        if report.is_valid() {
            Ok(w)
        } else {
            Err(Error::Verification(report.to_string()))
        }
    }

    /// Decides whether `S/R` is a Frobenius extension.
    pub fn frobenius(
        &self,
        strategy: Strategy,
        cfg: &SearchConfig,
    ) -> Result<Verdict<ExtensionWitness>> {
        match strategy {
            Strategy::Witness => self.frobenius_by_witness(cfg),
            Strategy::Isomorphism => self.frobenius_by_iso(cfg),
        }
    }

    fn frobenius_by_witness(&self, cfg: &SearchConfig) -> Result<Verdict<ExtensionWitness>> {
        let one = self.x.s.unit().to_vec();
        let target = [one.clone(), one].concat();
        let (eb, nb) = (self.w1.basis(), self.v1.basis());
        let problem = Bilinear::new(self.x.field(), eb.len(), nb.len(), target, |j, i| {
            let [a, b] = self.normalizations(&nb[i], &eb[j]);
            [a.to_vec(), b.to_vec()].concat()
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

    fn frobenius_by_iso(&self, cfg: &SearchConfig) -> Result<Verdict<ExtensionWitness>> {
        if self.projective.is_none() {
            return Ok(Verdict::No(NoReason::NotProjective));
        }
        let hom = bimodule_hom(&self.regular, &self.dual_module)?;
        Ok(match invertible_in(&hom, cfg) {
            IsoVerdict::Yes { forward, backward } => {
                let phibar = forward.reshape(&[self.regular.dim], &[self.dual_module.dim]);
                let phi = backward.reshape(&[self.dual_module.dim], &[self.regular.dim]);
                let nu = self.phibar_to_expectation(&phibar);
                let e = self.phi_to_casimir(&phi)?;
                self.expect(
                    self.expectation_to_phibar(&nu)? == phibar && self.casimir_to_phi(&e) == phi,
                    "isomorphism pair is the image of (ν̄, e)",
                )?;
                Verdict::Yes(self.witness(nu, e)?)
            }
            IsoVerdict::No(r) => Verdict::No(r),
            IsoVerdict::ProbablyNo { trials, seed } => Verdict::Unknown {
                candidates: trials,
                seed,
            },
        })
    }

    /// The dual basis `{e¹, ν̄(e²·−)}` of `S` over `R`.
    pub fn dual_basis_s(&self, nu: &LinMap, e: &LinMap) -> Result<SDualBasis> {
        let one = self.x.s.unit();
        let [a, b] = self.normalizations(nu, e);
        if &a != one || &b != one {
            return Err(Error::Contract(
                "witnesses fail the Frobenius normalization".into(),
            ));
        }
        let (f, ns) = (self.x.field(), self.x.s.dim());
        let lifted = self.lift(e);
        let mut db = SDualBasis {
            elements: Vec::new(),
            functionals: Vec::new(),
        };
        for (flat, c) in lifted.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (j, l) = (flat / ns, flat % ns);
            db.elements.push(self.x.s.basis(j).scale(c));
            db.functionals.push(
                LinMap::identity(f, &[ns])
                    .on(0, &self.x.s.basis(l))
                    .then(self.x.s.mult())
                    .then(nu),
            );
        }
        self.expect(db.resolves_identity(&self.x), "dual basis of S over R")?;
        Ok(db)
    }
}

/// Residual of `s·e = e·s` in `S⊗_R S`.
pub fn casimir_residuals(x: &RingExtension, t: &TensorOverBase, e: &LinMap) -> Vec<LinMap> {
    let (f, ns) = (x.field(), x.s.dim());
    let lifted = e.then(&t.section);
    let m = x.s.mult();
    let s1 = LinMap::identity(f, &[ns]);
    let left = s1.on(1, &lifted).on(0, m);
    let right = s1.on(0, &lifted).on(1, m);
    vec![left.sub(&right).then(&t.projection)]
}

fn dual_bimodule(x: &RingExtension, dual: &SolutionSpace) -> Result<Bimodule> {
    let (f, nr, ns, h) = (x.field(), x.r.dim(), x.s.dim(), dual.dim());
    let coords = |g: &LinMap| {
        dual.coordinates(g).ok_or_else(|| {
            Error::Verification("Hom_R(S,R) is not closed under the bimodule action".into())
        })
    };
    let mut left = Vec::with_capacity(nr * h);
    for a in 0..nr {
        for g in dual.basis() {
            left.push(coords(&g.on(0, &x.r.basis(a)).then(x.r.mult()))?);
        }
    }
    let mut right = Vec::with_capacity(h * ns);
    for g in dual.basis() {
        for b in 0..ns {
            let shifted = LinMap::identity_on(f, &[ns], 0, &x.s.basis(b))
                .then(x.s.mult())
                .then(g);
            right.push(coords(&shifted)?);
        }
    }
    Ok(Bimodule {
        label: "Hom_R(S,R)".into(),
        dim: h,
        left: from_columns(f, h, &left).reshape(&[nr, h], &[h]),
        right: from_columns(f, h, &right).reshape(&[h, ns], &[h]),
    })
}

/// Solves `s = Σⱼ sⱼ·i(fⱼ(s))` for right `R`-linear `fⱼ`, with `sⱼ` the `k`-basis of `S`.
fn projective_basis(x: &RingExtension, dual: &SolutionSpace) -> Result<Option<SDualBasis>> {
    let (f, ns) = (x.field(), x.s.dim());
    let mut cols = Vec::new();
    for j in 0..ns {
        for g in dual.basis() {
            cols.push(g.then(&x.i).on(0, &x.s.basis(j)).then(x.s.mult()).to_vec());
        }
    }
    let target = LinMap::identity(f, &[ns]).to_vec();
    if cols.is_empty() {
        return Ok(None);
    }
    let sol = solve_linear(&from_columns(f, target.len(), &cols), &target)?;
    let Some(c) = sol.particular else {
        return Ok(None);
    };
    let h = dual.dim();
    let db = SDualBasis {
        elements: (0..ns).map(|j| x.s.basis(j)).collect(),
        functionals: (0..ns)
            .map(|j| dual.combine(&c[j * h..(j + 1) * h]))
            .collect(),
    };
    if !db.resolves_identity(x) {
        return Err(Error::Verification("projective dual basis".into()));
    }
    Ok(Some(db))
}

impl SDualBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `Σᵢ sᵢ·i(fᵢ(s)) = s` and every `fᵢ` is right `R`-linear.
    pub fn resolves_identity(&self, x: &RingExtension) -> bool {
        let (f, ns) = (x.field(), x.s.dim());
        let total = self
            .elements
            .iter()
            .zip(&self.functionals)
            .fold(LinMap::zero(f, &[ns], &[ns]), |acc, (s, g)| {
                acc.add(&g.then(&x.i).on(0, s).then(x.s.mult()))
            });
        let linear = self
            .functionals
            .iter()
            .all(|g| right_linear_residual(x, g).is_zero());
        linear && total == LinMap::identity(f, &[ns])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    fn ext(x: RingExtension) -> Extension {
        Extension::new(&x).unwrap()
    }

    fn tensor_element(x: &Extension, terms: &[(usize, usize, i64)]) -> LinMap {
        let s = x.extension().top();
        let f = s.field();
        let sum = terms.iter().fold(
            LinMap::zero(f, &[], &[s.dim(), s.dim()]),
            |acc, &(a, b, c)| acc.add(&s.basis(a).tensor(&s.basis(b)).scale(&f.int(c))),
        );
        sum.then(&x.tensor().projection)
    }

    #[test]
    fn quotient_dimensions() {
        let f = Field::Rational;
        assert_eq!(
            ext(RingExtension::over_scalars(matrix_algebra(f)))
                .tensor()
                .dim(),
            16
        );
        assert_eq!(
            ext(RingExtension::identity(group_algebra(f, 3)))
                .tensor()
                .dim(),
            3
        );
        assert_eq!(
            ext(RingExtension::identity(dual_numbers_algebra(f)))
                .tensor()
                .dim(),
            2
        );
    }

    #[test]
    fn matrices_over_scalars() {
        for f in [Field::Rational, Field::prime(2).unwrap()] {
            let x = ext(RingExtension::over_scalars(matrix_algebra(f)));
            assert_eq!(x.v1().dim(), 4);
            assert!(x.split().unwrap().is_yes());
            // Σᵢ eᵢ₁⊗e₁ᵢ and Σᵢⱼ eᵢⱼ⊗eⱼᵢ, basis index 2i + j for eᵢⱼ
            let e1 = tensor_element(&x, &[(0, 0, 1), (2, 1, 1)]);
            let e2 = tensor_element(&x, &[(0, 0, 1), (1, 2, 1), (2, 1, 1), (3, 3, 1)]);
            assert!(x.w1().contains(&e1) && x.w1().contains(&e2));
            assert!(x.separable().unwrap().is_yes());
            let trace = LinMap::functional(f, &[4], vec![f.one(), f.zero(), f.zero(), f.one()])
                .reshape(&[4], &[1]);
            let w = x.witness(trace, e2).unwrap();
            assert_eq!(x.dual_basis_s(&w.expectation, &w.casimir).unwrap().len(), 4);
        }
    }

    #[test]
    fn group_algebra_in_characteristic_two() {
        let f = Field::prime(2).unwrap();
        let x = ext(RingExtension::over_scalars(group_algebra(f, 2)));
        assert_eq!(x.v1().dim(), 2);
        assert!(x.split().unwrap().is_yes());
        assert!(x.separable().unwrap().is_no());
        let e = tensor_element(&x, &[(0, 0, 1), (1, 1, 1)]);
        let nu = LinMap::functional(f, &[2], vec![f.one(), f.zero()]).reshape(&[2], &[1]);
        let w = x.witness(nu, e).unwrap();
        assert_eq!(x.dual_basis_s(&w.expectation, &w.casimir).unwrap().len(), 2);
        for s in [Strategy::Witness, Strategy::Isomorphism] {
            assert!(x.frobenius(s, &cfg()).unwrap().is_yes());
        }
    }

    #[test]
    fn maschke_over_rationals() {
        let q = Field::Rational;
        let x = ext(RingExtension::over_scalars(group_algebra(q, 2)));
        let e = x.separable().unwrap();
        let half = Scalar::parse(q, "1/2").unwrap();
        assert_eq!(
            x.lift(e.witness().unwrap()).coeffs(),
            &[half.clone(), q.zero(), q.zero(), half]
        );
    }

    #[test]
    fn identity_extension_is_trivially_frobenius() {
        let f = Field::prime(3).unwrap();
        let x = ext(RingExtension::identity(dual_numbers_algebra(f)));
        assert!(x.split().unwrap().is_yes());
        assert!(x.separable().unwrap().is_yes());
        let w = x.frobenius(Strategy::Isomorphism, &cfg()).unwrap();
        let w = w.witness().unwrap();
        let db = x.dual_basis_s(&w.expectation, &w.casimir).unwrap();
        assert!(db.resolves_identity(x.extension()));
    }

    #[test]
    fn collapsed_diagonal_map_is_not_projective() {
        let f = Field::prime(2).unwrap();
        let x = ext(diagonal_group_in_matrices(f));
        assert!(x.projective_basis().is_none());
        assert_eq!(
            x.frobenius(Strategy::Isomorphism, &cfg()).unwrap(),
            Verdict::No(NoReason::NotProjective)
        );
        assert!(x.frobenius(Strategy::Witness, &cfg()).unwrap().is_no());
    }

    #[test]
    fn routes_agree_and_converters_round_trip() {
        for f in [Field::prime(2).unwrap(), Field::prime(3).unwrap()] {
            for x in corpus_extensions(f) {
                let x = ext(x);
                let a = x.frobenius(Strategy::Witness, &cfg()).unwrap();
                let b = x.frobenius(Strategy::Isomorphism, &cfg()).unwrap();
                assert_eq!(a.kind(), b.kind(), "{a:?} vs {b:?}");
                assert_ne!(a.kind(), "unknown");
                for nu in x.v1().basis() {
                    let pb = x.expectation_to_phibar(nu).unwrap();
                    assert!(bimodule_residuals(&x.regular, &x.dual_module, &pb)
                        .iter()
                        .all(LinMap::is_zero));
                    assert_eq!(&x.phibar_to_expectation(&pb), nu);
                }
                if x.projective_basis().is_some() {
                    for e in x.w1().basis() {
                        let p = x.casimir_to_phi(e);
                        assert!(bimodule_residuals(&x.dual_module, &x.regular, &p)
                            .iter()
                            .all(LinMap::is_zero));
                        assert_eq!(&x.phi_to_casimir(&p).unwrap(), e);
                    }
                }
            }
        }
    }
}
