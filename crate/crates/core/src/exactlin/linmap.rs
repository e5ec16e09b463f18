use std::fmt;

use super::{Field, Scalar};

/// Row-major flattening of a multi-index over `shape`.
pub fn flatten(shape: &[usize], idx: &[usize]) -> usize {
    debug_assert_eq!(shape.len(), idx.len());
    idx.iter().zip(shape).fold(0, |acc, (&i, &d)| {
        debug_assert!(i < d);
        acc * d + i
    })
}

/// Inverse of [`flatten`].
pub fn unflatten(shape: &[usize], mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; shape.len()];
    for (slot, &d) in out.iter_mut().zip(shape).rev() {
        *slot = flat % d;
        flat /= d;
    }
    out
}

pub fn volume(shape: &[usize]) -> usize {
    shape.iter().product()
}

/// Linear map between tensor products of coordinate spaces.
///
/// `dom` and `cod` list the factor dimensions; a map with empty `dom` is an
/// element of the codomain, one with empty `cod` is a functional. Storage is
/// dense and column-major: entry (row, col) lives at `col * rows + row`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinMap {
    field: Field,
    dom: Vec<usize>,
    cod: Vec<usize>,
    data: Vec<Scalar>,
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinMap[{:?} -> {:?}]", self.dom, self.cod)?;
        for r in 0..self.rows() {
            write!(f, "\n  ")?;
            for c in 0..self.cols() {
                write!(f, "{:>6}", self.get(r, c).to_string())?;
            }
        }
        Ok(())
    }
}

impl LinMap {
    pub fn zero(field: Field, dom: &[usize], cod: &[usize]) -> Self {
        LinMap {
            field,
            dom: dom.to_vec(),
            cod: cod.to_vec(),
            data: vec![field.zero(); volume(dom) * volume(cod)],
        }
    }

    pub fn identity(field: Field, shape: &[usize]) -> Self {
        let mut m = LinMap::zero(field, shape, shape);
        for i in 0..volume(shape) {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: Field,
        dom: &[usize],
        cod: &[usize],
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let rows = volume(cod);
        let cols = volume(dom);
        let mut data = Vec::with_capacity(rows * cols);
        for c in 0..cols {
            for r in 0..rows {
                data.push(f(r, c));
            }
        }
        LinMap {
            field,
            dom: dom.to_vec(),
            cod: cod.to_vec(),
            data,
        }
    }

    /// Matrix with a single domain and codomain leg, from row vectors.
    pub fn from_rows(field: Field, rows: &[Vec<Scalar>], cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        LinMap::from_fn(field, &[cols], &[rows.len()], |r, c| rows[r][c].clone())
    }

    /// Element of the space with the given shape.
    pub fn element(field: Field, shape: &[usize], coeffs: Vec<Scalar>) -> Self {
        assert_eq!(coeffs.len(), volume(shape), "element length mismatch");
        LinMap {
            field,
            dom: vec![],
            cod: shape.to_vec(),
            data: coeffs,
        }
    }

    pub fn basis_element(field: Field, shape: &[usize], idx: usize) -> Self {
        let mut v = vec![field.zero(); volume(shape)];
        v[idx] = field.one();
        LinMap::element(field, shape, v)
    }

    /// Functional with the given coefficients.
    pub fn functional(field: Field, shape: &[usize], coeffs: Vec<Scalar>) -> Self {
        assert_eq!(coeffs.len(), volume(shape), "functional length mismatch");
        LinMap {
            field,
            dom: shape.to_vec(),
            cod: vec![],
            data: coeffs,
        }
    }

    /// Evaluation pairing `V* ⊗ V → k` in the coordinate dual basis.
    pub fn evaluation(field: Field, n: usize) -> Self {
        LinMap::from_fn(field, &[n, n], &[], |_, c| {
            if c / n == c % n {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    /// Coevaluation `k → V ⊗ V*`, the element `Σ eᵢ⊗eᵢ*`.
    pub fn coevaluation(field: Field, n: usize) -> Self {
        LinMap::from_fn(field, &[], &[n, n], |r, _| {
            if r / n == r % n {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    /// The flip `V⊗W → W⊗V`.
    pub fn swap(field: Field, v: usize, w: usize) -> Self {
        LinMap::identity(field, &[v, w]).permute(&[1, 0])
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

    pub fn rows(&self) -> usize {
        volume(&self.cod)
    }

    pub fn cols(&self) -> usize {
        volume(&self.dom)
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.data[col * self.rows() + row]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "scalar from another field");
        let rows = self.rows();
        self.data[col * rows + row] = v;
    }

    pub fn entry(&self, row: &[usize], col: &[usize]) -> &Scalar {
        self.get(flatten(&self.cod, row), flatten(&self.dom, col))
    }

    pub fn column(&self, col: usize) -> &[Scalar] {
        let rows = self.rows();
        &self.data[col * rows..(col + 1) * rows]
    }

    /// Coefficients of an element (a map with empty domain).
    pub fn coeffs(&self) -> &[Scalar] {
        assert!(
            self.dom.is_empty(),
            "coeffs() on a map that is not an element"
        );
        &self.data
    }

    /// Row-major flattening `row * cols + col`, the coordinates used for unknowns.
    pub fn to_vec(&self) -> Vec<Scalar> {
        let (rows, cols) = (self.rows(), self.cols());
        let mut out = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                out.push(self.get(r, c).clone());
            }
        }
        out
    }

    pub fn from_vec(field: Field, dom: &[usize], cod: &[usize], v: &[Scalar]) -> Self {
        let cols = volume(dom);
        assert_eq!(v.len(), cols * volume(cod), "vector length mismatch");
        LinMap::from_fn(field, dom, cod, |r, c| v[r * cols + c].clone())
    }

    pub fn reshape(&self, dom: &[usize], cod: &[usize]) -> Self {
        assert_eq!(volume(dom), self.cols(), "reshape changes domain size");
        assert_eq!(volume(cod), self.rows(), "reshape changes codomain size");
        LinMap {
            field: self.field,
            dom: dom.to_vec(),
            cod: cod.to_vec(),
            data: self.data.clone(),
        }
    }

    /// Collapses domain and codomain to single legs.
    pub fn flat(&self) -> Self {
        self.reshape(&[self.cols()], &[self.rows()])
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &LinMap) -> LinMap {
        assert_eq!(
            g.cols(),
            self.rows(),
            "composition size mismatch: {:?} then {:?}",
            self.cod,
            g.dom
        );
        let rows = g.rows();
        let mut out = LinMap::zero(self.field, &self.dom, &g.cod);
        for c in 0..self.cols() {
            let col = self.column(c);
            let dst = &mut out.data[c * rows..(c + 1) * rows];
            for (k, x) in col.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (r, y) in g.column(k).iter().enumerate() {
                    if !y.is_zero() {
                        dst[r] = &dst[r] + &(x * y);
                    }
                }
            }
        }
        out
    }

    /// Kronecker product; `(f⊗g)(x⊗y) = f(x)⊗g(y)`.
    pub fn tensor(&self, g: &LinMap) -> LinMap {
        let dom: Vec<usize> = self.dom.iter().chain(&g.dom).copied().collect();
        let cod: Vec<usize> = self.cod.iter().chain(&g.cod).copied().collect();
        let (gr, gc) = (g.rows(), g.cols());
        LinMap::from_fn(self.field, &dom, &cod, |r, c| {
            self.get(r / gr, c / gc) * g.get(r % gr, c % gc)
        })
    }

    /// Post-composes with `id ⊗ f ⊗ id`, where `f` acts on the codomain legs
    /// starting at `pos`. A map with empty domain is inserted as new legs.
    /// Same as `identity(field, shape).on(pos, f)` without the dense identity.
    pub fn identity_on(field: Field, shape: &[usize], pos: usize, f: &LinMap) -> LinMap {
        let k = f.dom.len();
        assert!(pos + k <= shape.len(), "leg position out of range");
        assert_eq!(&shape[pos..pos + k], f.dom.as_slice(), "legs do not match");
        let mid_in = volume(&f.dom);
        let post = volume(&shape[pos + k..]);
        let mid_out = f.rows();
        let cod: Vec<usize> = shape[..pos]
            .iter()
            .chain(&f.cod)
            .chain(&shape[pos + k..])
            .copied()
            .collect();
        let rows = volume(&cod);
        let mut out = LinMap::zero(field, shape, &cod);
        for c in 0..volume(shape) {
            let (hi, lo) = (c / (mid_in * post), c % post);
            let mid = (c / post) % mid_in;
            let dst = &mut out.data[c * rows..(c + 1) * rows];
            for (m, y) in f.column(mid).iter().enumerate() {
                if !y.is_zero() {
                    dst[(hi * mid_out + m) * post + lo] = y.clone();
                }
            }
        }
        out
    }

    /// `self ∘ (id ⊗ f ⊗ id)`, with `f` landing on the domain legs starting at `pos`.
    /// Same as `identity_on(field, shape, pos, f).then(self)` without the intermediate.
    pub fn precompose(&self, pos: usize, f: &LinMap) -> LinMap {
        let k = f.cod.len();
        assert!(pos + k <= self.dom.len(), "leg position out of range");
        assert_eq!(
            &self.dom[pos..pos + k],
            f.cod.as_slice(),
            "legs do not match"
        );
        let mid_in = f.cols();
        let mid_out = f.rows();
        let post = volume(&self.dom[pos + k..]);
        let dom: Vec<usize> = self.dom[..pos]
            .iter()
            .chain(&f.dom)
            .chain(&self.dom[pos + k..])
            .copied()
            .collect();
        let rows = self.rows();
        let mut out = LinMap::zero(self.field, &dom, &self.cod);
        for c in 0..volume(&dom) {
            let (hi, lo) = (c / (mid_in * post), c % post);
            let mid = (c / post) % mid_in;
            let dst = &mut out.data[c * rows..(c + 1) * rows];
            for (m, y) in f.column(mid).iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                for (r, x) in self
                    .column((hi * mid_out + m) * post + lo)
                    .iter()
                    .enumerate()
                {
                    if !x.is_zero() {
                        dst[r] = &dst[r] + &(y * x);
                    }
                }
            }
        }
        out
    }

    pub fn on(&self, pos: usize, f: &LinMap) -> LinMap {
        let k = f.dom.len();
        assert!(pos + k <= self.cod.len(), "leg position out of range");
        assert_eq!(
            &self.cod[pos..pos + k],
            f.dom.as_slice(),
            "legs {:?} at {pos} do not match {:?}",
            self.cod,
            f.dom
        );
        let pre = volume(&self.cod[..pos]);
        let mid_in = volume(&f.dom);
        let post = volume(&self.cod[pos + k..]);
        let mid_out = f.rows();
        let cod: Vec<usize> = self.cod[..pos]
            .iter()
            .chain(&f.cod)
            .chain(&self.cod[pos + k..])
            .copied()
            .collect();
        let rows = pre * mid_out * post;
        let mut out = LinMap::zero(self.field, &self.dom, &cod);
        for c in 0..self.cols() {
            let dst = &mut out.data[c * rows..(c + 1) * rows];
            for (r, x) in self.column(c).iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let (hi, lo) = (r / (mid_in * post), r % post);
                let mid = (r / post) % mid_in;
                for (m, y) in f.column(mid).iter().enumerate() {
                    if !y.is_zero() {
                        let t = (hi * mid_out + m) * post + lo;
                        dst[t] = &dst[t] + &(x * y);
                    }
                }
            }
        }
        out
    }

    /// Reorders codomain legs: new leg `i` is old leg `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> LinMap {
        let n = self.cod.len();
        assert_eq!(perm.len(), n, "permutation length");
        let mut seen = vec![false; n];
        for &p in perm {
            assert!(p < n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let cod: Vec<usize> = perm.iter().map(|&p| self.cod[p]).collect();
        let rows = self.rows();
        let target: Vec<usize> = (0..rows)
            .map(|r| {
                let old = unflatten(&self.cod, r);
                let new: Vec<usize> = perm.iter().map(|&p| old[p]).collect();
                flatten(&cod, &new)
            })
            .collect();
        let mut out = LinMap::zero(self.field, &self.dom, &cod);
        for c in 0..self.cols() {
            for r in 0..rows {
                let x = self.get(r, c);
                if !x.is_zero() {
                    out.data[c * rows + target[r]] = x.clone();
                }
            }
        }
        out
    }

    /// Swaps domain and codomain (matrix transpose).
    pub fn transpose(&self) -> LinMap {
        LinMap::from_fn(self.field, &self.cod, &self.dom, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols(), "apply length mismatch");
        let mut out = vec![self.field.zero(); self.rows()];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, y) in self.column(c).iter().enumerate() {
                if !y.is_zero() {
                    out[r] = &out[r] + &(x * y);
                }
            }
        }
        out
    }

    /// Image of the element `v` as an element of the codomain.
    pub fn eval(&self, v: &LinMap) -> LinMap {
        v.then(self)
    }

    fn zip(&self, other: &LinMap, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> LinMap {
        assert_eq!(self.dom, other.dom, "domain shapes differ");
        assert_eq!(self.cod, other.cod, "codomain shapes differ");
        LinMap {
            field: self.field,
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &LinMap) -> LinMap {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &LinMap) -> LinMap {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> LinMap {
        LinMap {
            field: self.field,
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// First nonzero entry in column order, as (row index, column index, value).
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Vec<usize>, Scalar)> {
        let rows = self.rows();
        self.data
            .iter()
            .enumerate()
            .find(|(_, x)| !x.is_zero())
            .map(|(i, x)| {
                (
                    unflatten(&self.cod, i % rows),
                    unflatten(&self.dom, i / rows),
                    x.clone(),
                )
            })
    }

    /// Linear combination `Σ cᵢ·mapsᵢ` of maps sharing a shape.
    pub fn combination(template: &LinMap, coeffs: &[Scalar], maps: &[LinMap]) -> LinMap {
        assert_eq!(coeffs.len(), maps.len(), "coefficient count");
        let mut acc = LinMap::zero(template.field, &template.dom, &template.cod);
        for (c, m) in coeffs.iter().zip(maps) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }

    /// Pointwise string rendering, rows of the flattened matrix.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows())
            .map(|r| {
                (0..self.cols())
                    .map(|c| self.get(r, c).to_string())
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn mat(rows: &[&[i64]]) -> LinMap {
        let f = q();
        let r: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| f.int(x)).collect())
            .collect();
        LinMap::from_rows(f, &r, rows[0].len())
    }

    #[test]
    fn flatten_round_trip() {
        let shape = [2, 3, 4];
        for i in 0..24 {
            assert_eq!(flatten(&shape, &unflatten(&shape, i)), i);
        }
        assert_eq!(flatten(&shape, &[1, 2, 3]), 23);
    }

    #[test]
    fn identity_tensor_identity() {
        let i2 = LinMap::identity(q(), &[2]);
        let i3 = LinMap::identity(q(), &[3]);
        assert_eq!(i2.tensor(&i3).flat(), LinMap::identity(q(), &[6]));
    }

    #[test]
    fn swap_tensor_trivial() {
        let s = mat(&[&[0, 1], &[1, 0]]);
        let t = s.tensor(&LinMap::identity(q(), &[1]));
        assert_eq!(t.dom(), &[2, 1]);
        assert_eq!(t.flat(), s);
    }

    #[test]
    fn scalar_tensor() {
        assert_eq!(
            mat(&[&[2]]).tensor(&mat(&[&[3]])),
            mat(&[&[6]]).reshape(&[1, 1], &[1, 1])
        );
    }

    #[test]
    fn tensor_acts_on_pure_tensors() {
        let f = mat(&[&[1, 2], &[3, 4], &[0, 1]]);
        let g = mat(&[&[0, 5], &[7, 1]]);
        let fg = f.tensor(&g);
        for i in 0..2 {
            for j in 0..2 {
                let x = LinMap::basis_element(q(), &[2], i);
                let y = LinMap::basis_element(q(), &[2], j);
                let lhs = fg.eval(&x.tensor(&y));
                let rhs = f.eval(&x).tensor(&g.eval(&y));
                assert_eq!(lhs.coeffs(), rhs.coeffs());
            }
        }
    }

    #[test]
    fn on_matches_kronecker() {
        let f = mat(&[&[1, 2], &[3, 4], &[0, 1]]);
        let base = LinMap::identity(q(), &[2, 2, 3]);
        let via_on = base.on(1, &f);
        let id2 = LinMap::identity(q(), &[2]);
        let id3 = LinMap::identity(q(), &[3]);
        assert_eq!(via_on, LinMap::identity_on(q(), &[2, 2, 3], 1, &f));
        let kron = id2.tensor(&f).tensor(&id3);
        assert_eq!(via_on.flat(), kron.flat());
    }

    #[test]
    fn precompose_matches_then() {
        let f = mat(&[&[1, 2], &[3, 4], &[0, 1]]);
        let g = LinMap::from_fn(q(), &[2, 3, 2], &[2], |r, c| {
            q().int(((r * 5 + c * 3) % 7) as i64 - 3)
        });
        let expected = LinMap::identity_on(q(), &[2, 2, 2], 1, &f).then(&g);
        assert_eq!(g.precompose(1, &f), expected);
    }

    #[test]
    fn insertion_and_contraction() {
        let f = q();
        let coev = LinMap::coevaluation(f, 3);
        let ev = LinMap::evaluation(f, 3);
        // (ev ⊗ id)(id ⊗ coev) = id  (snake identity)
        let snake = LinMap::identity(f, &[3]).on(1, &coev).on(0, &ev);
        assert_eq!(snake, LinMap::identity(f, &[3]));
    }

    #[test]
    fn permute_is_swap() {
        let f = q();
        let x = LinMap::basis_element(f, &[2], 1).tensor(&LinMap::basis_element(f, &[3], 2));
        let y = x.permute(&[1, 0]);
        assert_eq!(y.cod(), &[3, 2]);
        assert!(y.entry(&[2, 1], &[]).is_one());
        assert_eq!(
            LinMap::swap(f, 2, 3).then(&LinMap::swap(f, 3, 2)),
            LinMap::identity(f, &[2, 3])
        );
    }

    #[test]
    fn vec_round_trip() {
        let m = mat(&[&[1, 2, 3], &[4, 5, 6]]);
        let v = m.to_vec();
        assert_eq!(v[1], q().int(2));
        assert_eq!(LinMap::from_vec(q(), &[3], &[2], &v), m);
    }
}
