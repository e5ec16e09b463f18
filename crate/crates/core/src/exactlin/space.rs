use std::fmt;
use std::sync::Arc;

use super::{from_columns, solve_linear, volume, ExactError, Field, LinMap, Scalar};

/// Linear constraint evaluator: every output map must vanish.
pub type Residual = Arc<dyn Fn(&LinMap) -> Vec<LinMap> + Send + Sync>;

/// Solution set of a homogeneous linear condition on maps of a fixed shape.
#[derive(Clone)]
pub struct SolutionSpace {
    label: String,
    field: Field,
    dom: Vec<usize>,
    cod: Vec<usize>,
    basis: Vec<LinMap>,
    residual: Residual,
}

impl fmt::Debug for SolutionSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SolutionSpace")
            .field("label", &self.label)
            .field("dom", &self.dom)
            .field("cod", &self.cod)
            .field("dim", &self.basis.len())
            .finish()
    }
}

fn probe(field: Field, dom: &[usize], cod: &[usize], j: usize) -> LinMap {
    let n = volume(dom) * volume(cod);
    let mut v = vec![field.zero(); n];
    v[j] = field.one();
    LinMap::from_vec(field, dom, cod, &v)
}

fn stack(outs: &[LinMap]) -> Vec<Scalar> {
    outs.iter().flat_map(|m| m.to_vec()).collect()
}

/// Matrix of a linear map on `Hom(dom, cod)`, built by probing unit vectors.
pub fn matrix_of(
    field: Field,
    dom: &[usize],
    cod: &[usize],
    map: &dyn Fn(&LinMap) -> Vec<LinMap>,
) -> LinMap {
    let n = volume(dom) * volume(cod);
    let cols: Vec<Vec<Scalar>> = (0..n)
        .map(|j| stack(&map(&probe(field, dom, cod, j))))
        .collect();
    let rows = cols.first().map_or_else(
        || stack(&map(&LinMap::zero(field, dom, cod))).len(),
        Vec::len,
    );
    from_columns(field, rows, &cols)
}

impl SolutionSpace {
    /// Kernel of a linear residual on maps `dom → cod`.
    pub fn solve(
        label: impl Into<String>,
        field: Field,
        dom: &[usize],
        cod: &[usize],
        residual: Residual,
    ) -> Result<Self, ExactError> {
        let label = label.into();
        let zero = LinMap::zero(field, dom, cod);
        if residual(&zero).iter().any(|m| !m.is_zero()) {
            return Err(ExactError::Internal(format!(
                "{label}: residual is not homogeneous"
            )));
        }
        let m = matrix_of(field, dom, cod, residual.as_ref());
        let sol = solve_linear(&m, &vec![field.zero(); m.rows()])?;
        let basis: Vec<LinMap> = sol
            .kernel
            .iter()
            .map(|v| LinMap::from_vec(field, dom, cod, v))
            .collect();
        for b in &basis {
            if residual(b).iter().any(|m| !m.is_zero()) {
                return Err(ExactError::Internal(format!(
                    "{label}: basis element fails residual"
                )));
            }
        }
        Ok(SolutionSpace {
            label,
            field,
            dom: dom.to_vec(),
            cod: cod.to_vec(),
            basis,
            residual,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dom(&self) -> &[usize] {
        &self.dom
    }

    pub fn cod(&self) -> &[usize] {
        &self.cod
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LinMap] {
        &self.basis
    }

    pub fn residual(&self, x: &LinMap) -> Vec<LinMap> {
        (self.residual)(x)
    }

    /// Exact membership test through the defining residual.
    pub fn contains(&self, x: &LinMap) -> bool {
        x.dom() == self.dom.as_slice()
            && x.cod() == self.cod.as_slice()
            && self.residual(x).iter().all(LinMap::is_zero)
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> LinMap {
        LinMap::combination(
            &LinMap::zero(self.field, &self.dom, &self.cod),
            coeffs,
            &self.basis,
        )
    }

    /// Coordinates of `x` in the basis, if `x` lies in the span.
    pub fn coordinates(&self, x: &LinMap) -> Option<Vec<Scalar>> {
        let cols: Vec<Vec<Scalar>> = self.basis.iter().map(LinMap::to_vec).collect();
        let target = x.to_vec();
        let m = from_columns(self.field, target.len(), &cols);
        solve_linear(&m, &target).ok()?.particular
    }

    /// Some element `x` of the space with `map(x) = target`, for a linear `map`.
    pub fn affine_solve(
        &self,
        map: &dyn Fn(&LinMap) -> Vec<LinMap>,
        target: &[LinMap],
    ) -> Result<Option<LinMap>, ExactError> {
        let want = stack(target);
        let cols: Vec<Vec<Scalar>> = self.basis.iter().map(|b| stack(&map(b))).collect();
        let m = from_columns(self.field, want.len(), &cols);
        let sol = solve_linear(&m, &want)?;
        Ok(sol.particular.map(|c| self.combine(&c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutant_of_a_diagonal_matrix() {
        let f = Field::Rational;
        let d = LinMap::from_rows(f, &[vec![f.one(), f.zero()], vec![f.zero(), f.int(2)]], 2);
        let res: Residual = Arc::new(move |x: &LinMap| vec![x.then(&d).sub(&d.then(x))]);
        let s = SolutionSpace::solve("commutant", f, &[2], &[2], res).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&LinMap::identity(f, &[2])));
        let c = s.coordinates(&LinMap::identity(f, &[2])).unwrap();
        assert_eq!(s.combine(&c), LinMap::identity(f, &[2]));
        let trace = |x: &LinMap| vec![LinMap::element(f, &[], vec![x.get(0, 0) + x.get(1, 1)])];
        let hit = s
            .affine_solve(&trace, &[LinMap::element(f, &[], vec![f.int(3)])])
            .unwrap()
            .unwrap();
        assert_eq!(hit.get(0, 0) + hit.get(1, 1), f.int(3));
    }

    #[test]
    fn inhomogeneous_residual_rejected() {
        let f = Field::Rational;
        let res: Residual = Arc::new(move |x: &LinMap| vec![x.add(&LinMap::identity(f, &[1]))]);
        assert!(SolutionSpace::solve("bad", f, &[1], &[1], res).is_err());
    }
}
