//! Structure-constant algebras, coalgebras, bialgebras, (co)actions and their validators.

use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{Field, LinMap, Scalar};

/// One failed axiom, located at a basis input and output coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub axiom: String,
    pub input: Vec<usize>,
    pub output: Vec<usize>,
    pub residual: Scalar,
}

/// Witness-carrying result of a validator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport {
            subject: subject.into(),
            failures: Vec::new(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records a failure unless `lhs == rhs` exactly.
    pub fn equal(&mut self, axiom: &str, lhs: &LinMap, rhs: &LinMap) -> bool {
        if lhs == rhs {
            return true;
        }
        self.vanishes(axiom, &lhs.sub(rhs))
    }

    pub fn vanishes(&mut self, axiom: &str, m: &LinMap) -> bool {
        match m.first_nonzero() {
            None => true,
            Some((output, input, residual)) => {
                self.failures.push(Failure {
                    axiom: axiom.to_string(),
                    input,
                    output,
                    residual,
                });
                false
            }
        }
    }

    pub fn absorb(&mut self, other: ValidationReport) {
        for mut f in other.failures {
            f.axiom = format!("{}: {}", other.subject, f.axiom);
            self.failures.push(f);
        }
    }

    pub fn into_result(self) -> Result<(), StructureError> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(StructureError::Invalid(Box::new(self)))
        }
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            return write!(f, "{}: valid", self.subject);
        }
        write!(f, "{}: {} failure(s)", self.subject, self.failures.len())?;
        for x in &self.failures {
            write!(
                f,
                "\n  {} at input {:?}, output {:?}: residual {}",
                x.axiom, x.input, x.output, x.residual
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Error)]
pub enum StructureError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("{0}")]
    Invalid(Box<ValidationReport>),
}

fn shape_err<T>(msg: String) -> Result<T, StructureError> {
    Err(StructureError::Shape(msg))
}

/// Associative unital algebra: `mult: A⊗A → A`, `unit: k → A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraData {
    mult: LinMap,
    unit: LinMap,
}

impl AlgebraData {
    pub fn new(mult: LinMap, unit: LinMap) -> Result<Self, StructureError> {
        let n = unit.rows();
        if n == 0 {
            return shape_err("algebra of dimension 0".into());
        }
        if mult.dom() != [n, n] || mult.cod() != [n] {
            return shape_err(format!(
                "multiplication has shape {:?} -> {:?}",
                mult.dom(),
                mult.cod()
            ));
        }
        if !unit.dom().is_empty() || unit.cod() != [n] || unit.field() != mult.field() {
            return shape_err("unit is not an element of the algebra".into());
        }
        Ok(AlgebraData { mult, unit })
    }

    /// `mult[i][j][k]` is the coefficient of `e_k` in `e_i·e_j`.
    pub fn from_tables(
        field: Field,
        mult: &[Vec<Vec<Scalar>>],
        unit: &[Scalar],
    ) -> Result<Self, StructureError> {
        let n = unit.len();
        if mult.len() != n
            || mult
                .iter()
                .any(|r| r.len() != n || r.iter().any(|c| c.len() != n))
        {
            return shape_err(format!("multiplication table is not {n}x{n}x{n}"));
        }
        let m = LinMap::from_fn(field, &[n, n], &[n], |k, c| mult[c / n][c % n][k].clone());
        AlgebraData::new(m, LinMap::element(field, &[n], unit.to_vec()))
    }

    pub fn field(&self) -> Field {
        self.mult.field()
    }

    pub fn dim(&self) -> usize {
        self.unit.rows()
    }

    pub fn mult(&self) -> &LinMap {
        &self.mult
    }

    pub fn unit(&self) -> &LinMap {
        &self.unit
    }

    pub fn mult_table(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| self.mult.get(k, i * n + j).clone())
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn product(&self, x: &LinMap, y: &LinMap) -> LinMap {
        x.tensor(y).then(&self.mult)
    }

    pub fn basis(&self, i: usize) -> LinMap {
        LinMap::basis_element(self.field(), &[self.dim()], i)
    }

    /// Multiplication with the factors swapped.
    pub fn opposite(&self) -> AlgebraData {
        let n = self.dim();
        AlgebraData {
            mult: LinMap::swap(self.field(), n, n).then(&self.mult),
            unit: self.unit.clone(),
        }
    }

    pub fn check(&self) -> ValidationReport {
        let (f, n) = (self.field(), self.dim());
        let mut r = ValidationReport::new("algebra");
        r.equal(
            "associativity",
            &self.mult.precompose(0, &self.mult),
            &self.mult.precompose(1, &self.mult),
        );
        let id = LinMap::identity(f, &[n]);
        r.equal("left unit", &id.on(0, &self.unit).on(0, &self.mult), &id);
        r.equal("right unit", &id.on(1, &self.unit).on(0, &self.mult), &id);
        r
    }
}

/// Coassociative counital coalgebra: `comult: C → C⊗C`, `counit: C → k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraData {
    comult: LinMap,
    counit: LinMap,
}

impl CoalgebraData {
    pub fn new(comult: LinMap, counit: LinMap) -> Result<Self, StructureError> {
        let n = counit.cols();
        if n == 0 {
            return shape_err("coalgebra of dimension 0".into());
        }
        if comult.dom() != [n] || comult.cod() != [n, n] {
            return shape_err(format!(
                "comultiplication has shape {:?} -> {:?}",
                comult.dom(),
                comult.cod()
            ));
        }
        if counit.dom() != [n] || !counit.cod().is_empty() || counit.field() != comult.field() {
            return shape_err("counit is not a functional on the coalgebra".into());
        }
        Ok(CoalgebraData { comult, counit })
    }

    /// `comult[i][j][k]` is the coefficient of `e_j⊗e_k` in `Δ(e_i)`.
    pub fn from_tables(
        field: Field,
        comult: &[Vec<Vec<Scalar>>],
        counit: &[Scalar],
    ) -> Result<Self, StructureError> {
        let n = counit.len();
        if comult.len() != n
            || comult
                .iter()
                .any(|r| r.len() != n || r.iter().any(|c| c.len() != n))
        {
            return shape_err(format!("comultiplication table is not {n}x{n}x{n}"));
        }
        let d = LinMap::from_fn(field, &[n], &[n, n], |r, i| comult[i][r / n][r % n].clone());
        CoalgebraData::new(d, LinMap::functional(field, &[n], counit.to_vec()))
    }

    pub fn field(&self) -> Field {
        self.comult.field()
    }

    pub fn dim(&self) -> usize {
        self.counit.cols()
    }

    pub fn comult(&self) -> &LinMap {
        &self.comult
    }

    pub fn counit(&self) -> &LinMap {
        &self.counit
    }

    pub fn comult_table(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| self.comult.get(j * n + k, i).clone())
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn counit_vec(&self) -> Vec<Scalar> {
        (0..self.dim())
            .map(|i| self.counit.get(0, i).clone())
            .collect()
    }

    pub fn basis(&self, i: usize) -> LinMap {
        LinMap::basis_element(self.field(), &[self.dim()], i)
    }

    /// Comultiplication with the tensor factors swapped.
    pub fn coopposite(&self) -> CoalgebraData {
        let n = self.dim();
        CoalgebraData {
            comult: self.comult.then(&LinMap::swap(self.field(), n, n)),
            counit: self.counit.clone(),
        }
    }

    pub fn check(&self) -> ValidationReport {
        let (f, n) = (self.field(), self.dim());
        let mut r = ValidationReport::new("coalgebra");
        let id = LinMap::identity(f, &[n]);
        let d = id.on(0, &self.comult);
        r.equal(
            "coassociativity",
            &d.on(0, &self.comult),
            &d.on(1, &self.comult),
        );
        r.equal("left counit", &d.on(0, &self.counit), &id);
        r.equal("right counit", &d.on(1, &self.counit), &id);
        r
    }
}

/// Algebra and coalgebra on one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgebraData {
    pub algebra: AlgebraData,
    pub coalgebra: CoalgebraData,
}

impl BialgebraData {
    pub fn new(algebra: AlgebraData, coalgebra: CoalgebraData) -> Result<Self, StructureError> {
        if algebra.dim() != coalgebra.dim() || algebra.field() != coalgebra.field() {
            return shape_err("algebra and coalgebra live on different spaces".into());
        }
        Ok(BialgebraData { algebra, coalgebra })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn check(&self) -> ValidationReport {
        let (f, n) = (self.field(), self.dim());
        let (m, u) = (self.algebra.mult(), self.algebra.unit());
        let (d, e) = (self.coalgebra.comult(), self.coalgebra.counit());
        let mut r = ValidationReport::new("bialgebra");
        r.absorb(self.algebra.check());
        r.absorb(self.coalgebra.check());
        let id2 = LinMap::identity(f, &[n, n]);
        r.equal(
            "comultiplication is multiplicative",
            &id2.on(0, m).on(0, d),
            &id2.on(0, d)
                .on(2, d)
                .permute(&[0, 2, 1, 3])
                .on(0, m)
                .on(1, m),
        );
        r.equal("comultiplication is unital", &u.on(0, d), &u.tensor(u));
        r.equal(
            "counit is multiplicative",
            &id2.on(0, m).on(0, e),
            &id2.on(0, e).on(0, e),
        );
        r.equal("counit is unital", &u.then(e), &LinMap::identity(f, &[]));
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Action `M⊗X → M` (right) or `X⊗M → M` (left) of an algebra `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionData {
    pub side: Side,
    pub map: LinMap,
}

/// Coaction `M → M⊗X` (right) or `M → X⊗M` (left) of a coalgebra `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoactionData {
    pub side: Side,
    pub map: LinMap,
}

impl ActionData {
    pub fn module_dim(&self) -> usize {
        match self.side {
            Side::Right => self.map.dom()[0],
            Side::Left => self.map.dom()[1],
        }
    }
}

impl CoactionData {
    pub fn comodule_dim(&self) -> usize {
        self.map.dom()[0]
    }
}

pub fn check_action(x: &AlgebraData, act: &ActionData) -> ValidationReport {
    let (f, n) = (x.field(), x.dim());
    let mut r = ValidationReport::new(match act.side {
        Side::Right => "right module",
        Side::Left => "left module",
    });
    let d = act.map.cod().first().copied().unwrap_or(0);
    let ok = act.map.cod().len() == 1
        && match act.side {
            Side::Right => act.map.dom() == [d, n],
            Side::Left => act.map.dom() == [n, d],
        };
    if !ok {
        r.failures.push(shape_failure("action shape"));
        return r;
    }
    let id = LinMap::identity(f, &[d]);
    match act.side {
        Side::Right => {
            r.equal(
                "associativity",
                &act.map.precompose(0, &act.map),
                &act.map.precompose(1, x.mult()),
            );
            r.equal("unit", &act.map.precompose(1, x.unit()), &id);
        }
        Side::Left => {
            r.equal(
                "associativity",
                &act.map.precompose(1, &act.map),
                &act.map.precompose(0, x.mult()),
            );
            r.equal("unit", &act.map.precompose(0, x.unit()), &id);
        }
    }
    r
}

pub fn check_coaction(x: &CoalgebraData, co: &CoactionData) -> ValidationReport {
    let (f, n) = (x.field(), x.dim());
    let mut r = ValidationReport::new(match co.side {
        Side::Right => "right comodule",
        Side::Left => "left comodule",
    });
    let d = co.map.dom().first().copied().unwrap_or(0);
    let ok = co.map.dom().len() == 1
        && match co.side {
            Side::Right => co.map.cod() == [d, n],
            Side::Left => co.map.cod() == [n, d],
        };
    if !ok {
        r.failures.push(shape_failure("coaction shape"));
        return r;
    }
    let id = LinMap::identity(f, &[d]);
    let rho = &co.map;
    match co.side {
        Side::Right => {
            r.equal(
                "coassociativity",
                &rho.on(0, &co.map),
                &rho.on(1, x.comult()),
            );
            r.equal("counit", &rho.on(1, x.counit()), &id);
        }
        Side::Left => {
            r.equal(
                "coassociativity",
                &rho.on(1, &co.map),
                &rho.on(0, x.comult()),
            );
            r.equal("counit", &rho.on(0, x.counit()), &id);
        }
    }
    r
}

fn shape_failure(axiom: &str) -> Failure {
    Failure {
        axiom: axiom.to_string(),
        input: vec![],
        output: vec![],
        residual: Field::Rational.one(),
    }
}

/// `A` is a right `H`-comodule algebra through `rho: A → A⊗H`.
pub fn check_comodule_algebra(
    h: &BialgebraData,
    a: &AlgebraData,
    rho: &LinMap,
) -> ValidationReport {
    let mut r = ValidationReport::new("comodule algebra");
    let (na, nh) = (a.dim(), h.dim());
    if rho.dom() != [na] || rho.cod() != [na, nh] {
        r.failures.push(shape_failure("coaction shape"));
        return r;
    }
    r.absorb(check_coaction(
        &h.coalgebra,
        &CoactionData {
            side: Side::Right,
            map: rho.clone(),
        },
    ));
    let id2 = LinMap::identity(a.field(), &[na, na]);
    r.equal(
        "coaction is multiplicative",
        &id2.on(0, a.mult()).on(0, rho),
        &id2.on(0, rho)
            .on(2, rho)
            .permute(&[0, 2, 1, 3])
            .on(0, a.mult())
            .on(1, h.algebra.mult()),
    );
    r.equal(
        "coaction is unital",
        &a.unit().on(0, rho),
        &a.unit().tensor(h.algebra.unit()),
    );
    r
}

/// `C` is a right `H`-module coalgebra through `act: C⊗H → C`.
pub fn check_module_coalgebra(
    h: &BialgebraData,
    c: &CoalgebraData,
    act: &LinMap,
) -> ValidationReport {
    let mut r = ValidationReport::new("module coalgebra");
    let (nc, nh) = (c.dim(), h.dim());
    if act.dom() != [nc, nh] || act.cod() != [nc] {
        r.failures.push(shape_failure("action shape"));
        return r;
    }
    r.absorb(check_action(
        &h.algebra,
        &ActionData {
            side: Side::Right,
            map: act.clone(),
        },
    ));
    let id2 = LinMap::identity(c.field(), &[nc, nh]);
    r.equal(
        "comultiplication is H-linear",
        &id2.on(0, act).on(0, c.comult()),
        &id2.on(0, c.comult())
            .on(2, h.coalgebra.comult())
            .permute(&[0, 2, 1, 3])
            .on(0, act)
            .on(1, act),
    );
    r.equal(
        "counit is H-linear",
        &id2.on(0, act).on(0, c.counit()),
        &id2.on(0, c.counit()).on(0, h.coalgebra.counit()),
    );
    r
}

/// Convolution algebra `C*` (or its opposite) in the coordinate dual basis.
pub fn dual_algebra(c: &CoalgebraData, op: bool) -> AlgebraData {
    let (f, n) = (c.field(), c.dim());
    let d = c.comult();
    let mult = LinMap::from_fn(f, &[n, n], &[n], |k, col| {
        let (i, j) = if op {
            (col % n, col / n)
        } else {
            (col / n, col % n)
        };
        d.get(i * n + j, k).clone()
    });
    let unit = LinMap::element(f, &[n], c.counit_vec());
    AlgebraData { mult, unit }
}

/// Dual coalgebra `A*` of a finite-dimensional algebra.
pub fn dual_coalgebra(a: &AlgebraData) -> CoalgebraData {
    let (f, n) = (a.field(), a.dim());
    let m = a.mult();
    let comult = LinMap::from_fn(f, &[n], &[n, n], |r, k| m.get(k, r).clone());
    let counit = LinMap::functional(
        f,
        &[n],
        (0..n).map(|i| a.unit().get(i, 0).clone()).collect(),
    );
    CoalgebraData { comult, counit }
}

/// Finite family `{xᵢ, fᵢ}`; the meaning of the resolution depends on the module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasis {
    pub elements: Vec<LinMap>,
    pub functionals: Vec<LinMap>,
}

impl DualBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Coordinate dual basis `{eᵢ, eᵢ*}` of `k^n`.
    pub fn coordinate(field: Field, n: usize) -> Self {
        DualBasis {
            elements: (0..n)
                .map(|i| LinMap::basis_element(field, &[n], i))
                .collect(),
            functionals: (0..n)
                .map(|i| {
                    let mut v = vec![field.zero(); n];
                    v[i] = field.one();
                    LinMap::functional(field, &[n], v)
                })
                .collect(),
        }
    }

    /// `Σᵢ xᵢ⟨fᵢ, -⟩` for a vector-space dual basis with scalar functionals.
    pub fn vector_resolution(&self) -> Option<LinMap> {
        let first = self.elements.first()?;
        let n = first.rows();
        let f = first.field();
        let mut acc = LinMap::zero(f, &[n], &[n]);
        for (x, phi) in self.elements.iter().zip(&self.functionals) {
            acc = acc.add(&phi.tensor(x).reshape(&[n], &[n]));
        }
        Some(acc)
    }

    pub fn resolves_identity(&self) -> bool {
        match self.vector_resolution() {
            Some(m) => m == LinMap::identity(m.field(), &[m.rows()]),
            None => false,
        }
    }

    /// The coalgebra identity `Σ Δ(dᵢ)⊗dᵢ* = Σ dᵢ⊗dⱼ⊗dᵢ**dⱼ*`.
    pub fn check_coalgebra_identity(&self, c: &CoalgebraData) -> ValidationReport {
        let (f, n) = (c.field(), c.dim());
        let mut r = ValidationReport::new("coalgebra dual basis");
        let conv = |x: &LinMap, y: &LinMap| {
            LinMap::identity_on(f, &[n], 0, c.comult())
                .on(0, x)
                .on(0, y)
        };
        let as_vec = |phi: &LinMap| phi.transpose().reshape(&[], &[n]);
        let mut lhs = LinMap::zero(f, &[], &[n, n, n]);
        for (d, phi) in self.elements.iter().zip(&self.functionals) {
            lhs = lhs.add(&d.then(c.comult()).tensor(&as_vec(phi)));
        }
        let mut rhs = LinMap::zero(f, &[], &[n, n, n]);
        for (di, pi) in self.elements.iter().zip(&self.functionals) {
            for (dj, pj) in self.elements.iter().zip(&self.functionals) {
                rhs = rhs.add(&di.tensor(dj).tensor(&as_vec(&conv(pi, pj))));
            }
        }
        r.equal("dual basis identity", &lhs, &rhs);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kc2(f: Field) -> AlgebraData {
        let (o, z) = (f.one(), f.zero());
        let mult = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]],
        ];
        AlgebraData::from_tables(f, &mult, &[o, z]).unwrap()
    }

    fn dn(f: Field, eps_x: i64) -> CoalgebraData {
        let (o, z) = (f.one(), f.zero());
        let comult = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), z.clone()]],
            vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]],
        ];
        CoalgebraData::from_tables(f, &comult, &[o, f.int(eps_x)]).unwrap()
    }

    #[test]
    fn group_algebra_valid() {
        assert!(kc2(Field::Rational).check().is_valid());
    }

    #[test]
    fn square_of_generator_zeroed_is_still_an_algebra() {
        let f = Field::Rational;
        let mut t = kc2(f).mult_table();
        t[1][1][0] = f.zero();
        let a = AlgebraData::from_tables(f, &t, &[f.one(), f.zero()]).unwrap();
        assert!(a.check().is_valid());
    }

    #[test]
    fn broken_unit_row_reports_unit_witness() {
        let f = Field::Rational;
        let mut t = kc2(f).mult_table();
        t[0][1][1] = f.zero();
        let a = AlgebraData::from_tables(f, &t, &[f.one(), f.zero()]).unwrap();
        let r = a.check();
        let w = r.failures.iter().find(|x| x.axiom == "left unit").unwrap();
        assert_eq!(w.input, vec![1]);
        assert_eq!(w.output, vec![1]);
    }

    #[test]
    fn dual_numbers_coalgebra() {
        let f = Field::Rational;
        assert!(dn(f, 0).check().is_valid());
        let bad = dn(f, 1).check();
        assert!(bad.failures.iter().any(|x| x.axiom.contains("counit")));
    }

    #[test]
    fn dual_of_dual_numbers_is_truncated_polynomials() {
        let f = Field::Rational;
        let a = dual_algebra(&dn(f, 0), false);
        assert!(a.check().is_valid());
        let t = a.basis(1);
        assert!(a.product(&t, &t).is_zero());
        assert_eq!(a.unit(), &a.basis(0));
        assert!(dual_coalgebra(&a).check().is_valid());
        assert_eq!(dual_coalgebra(&a), dn(f, 0));
    }

    #[test]
    fn coordinate_dual_basis_identity() {
        let f = Field::prime(3).unwrap();
        let c = dn(f, 0);
        let db = DualBasis::coordinate(f, 2);
        assert!(db.resolves_identity());
        assert!(db.check_coalgebra_identity(&c).is_valid());
    }

    #[test]
    fn dimension_zero_rejected() {
        let f = Field::Rational;
        assert!(AlgebraData::from_tables(f, &[], &[]).is_err());
    }
}
