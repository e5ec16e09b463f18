use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{add_mod, inv_mod, mul_mod, sub_mod};
use super::{ExactError, Field, LinMap, Scalar};

/// Field arithmetic on an unboxed element type.
pub(crate) trait Arith {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn add(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn sub(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn inv(&self, x: &Self::E) -> Self::E;
    fn lift(&self, s: &Scalar) -> Self::E;
    fn lower(&self, x: &Self::E) -> Scalar;
}

pub(crate) struct QArith;

impl Arith for QArith {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }
    fn sub(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x - y
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
    fn inv(&self, x: &BigRational) -> BigRational {
        x.recip()
    }
    fn lift(&self, s: &Scalar) -> BigRational {
        s.as_rational().expect("rational scalar").clone()
    }
    fn lower(&self, x: &BigRational) -> Scalar {
        Scalar::Q(x.clone())
    }
}

pub(crate) struct PArith(pub u64);

impl Arith for PArith {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        add_mod(*x, *y, self.0)
    }
    fn sub(&self, x: &u64, y: &u64) -> u64 {
        sub_mod(*x, *y, self.0)
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        mul_mod(*x, *y, self.0)
    }
    fn inv(&self, x: &u64) -> u64 {
        inv_mod(*x, self.0).expect("pivot is a unit")
    }
    fn lift(&self, s: &Scalar) -> u64 {
        s.residue().expect("prime-field scalar")
    }
    fn lower(&self, x: &u64) -> Scalar {
        Scalar::Fp { v: *x, p: self.0 }
    }
}

/// Reduced row echelon form; pivot is the first nonzero entry in column order.
pub(crate) struct Rref<E> {
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
}

pub(crate) fn rref<A: Arith>(a: &A, mut m: Vec<Vec<A::E>>, ncols: usize) -> Rref<A::E> {
    m.retain(|r| r.iter().any(|x| !a.is_zero(x)));
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top >= m.len() {
            break;
        }
        let Some(found) = (top..m.len()).find(|&r| !a.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(top, found);
        let inv = a.inv(&m[top][col]);
        for x in m[top][col..].iter_mut() {
            *x = a.mul(x, &inv);
        }
        let (head, tail) = m.split_at_mut(top);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            if a.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for j in col..ncols {
                if !a.is_zero(&pivot_row[j]) {
                    row[j] = a.sub(&row[j], &a.mul(&factor, &pivot_row[j]));
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    m.truncate(top);
    Rref { rows: m, pivots }
}

/// Outcome of `solve_linear`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinSolution {
    pub particular: Option<Vec<Scalar>>,
    pub kernel: Vec<Vec<Scalar>>,
    pub rank: usize,
}

fn solve_in<A: Arith>(a: &A, m: &LinMap, b: &[Scalar]) -> Result<LinSolution, ExactError> {
    let (r, c) = (m.rows(), m.cols());
    let aug: Vec<Vec<A::E>> = (0..r)
        .map(|i| {
            let mut row: Vec<A::E> = (0..c).map(|j| a.lift(m.get(i, j))).collect();
            row.push(a.lift(&b[i]));
            row
        })
        .collect();
    let red = rref(a, aug, c + 1);
    let consistent = red.pivots.last() != Some(&c);
    let pivots: Vec<usize> = red.pivots.iter().copied().filter(|&p| p < c).collect();
    let rank = pivots.len();
    let mut is_pivot = vec![false; c];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let kernel: Vec<Vec<A::E>> = (0..c)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![a.zero(); c];
            v[f] = a.one();
            for (row, &p) in red.rows.iter().zip(&pivots) {
                v[p] = a.sub(&a.zero(), &row[f]);
            }
            v
        })
        .collect();
    let particular = consistent.then(|| {
        let mut x = vec![a.zero(); c];
        for (row, &p) in red.rows.iter().zip(&pivots) {
            x[p] = row[c].clone();
        }
        x
    });

    let residual = |x: &[A::E], rhs: Option<&[Scalar]>| -> bool {
        (0..r).all(|i| {
            let mut acc = a.zero();
            for (j, xj) in x.iter().enumerate() {
                if !a.is_zero(xj) {
                    acc = a.add(&acc, &a.mul(&a.lift(m.get(i, j)), xj));
                }
            }
            let want = rhs.map(|b| a.lift(&b[i])).unwrap_or_else(|| a.zero());
            a.is_zero(&a.sub(&acc, &want))
        })
    };
    if let Some(x) = &particular {
        if !residual(x, Some(b)) {
            return Err(ExactError::Internal(
                "particular solution fails substitution".into(),
            ));
        }
    }
    if !kernel.iter().all(|k| residual(k, None)) {
        return Err(ExactError::Internal(
            "kernel vector fails substitution".into(),
        ));
    }
    let lower = |v: &Vec<A::E>| v.iter().map(|x| a.lower(x)).collect::<Vec<_>>();
    Ok(LinSolution {
        particular: particular.as_ref().map(lower),
        kernel: kernel.iter().map(lower).collect(),
        rank,
    })
}

/// Solves `M x = b` exactly, returning a particular solution when consistent
/// and a basis of `ker M` in every case. Both are verified by substitution.
pub fn solve_linear(m: &LinMap, b: &[Scalar]) -> Result<LinSolution, ExactError> {
    if b.len() != m.rows() {
        return Err(ExactError::Shape(format!(
            "right-hand side has {} entries, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    if let Some(s) = b.iter().find(|s| s.field() != m.field()) {
        return Err(ExactError::Shape(format!(
            "scalar {s} is not in {}",
            m.field()
        )));
    }
    match m.field() {
        Field::Rational => solve_in(&QArith, m, b),
        Field::Prime { p } => solve_in(&PArith(p), m, b),
    }
}

pub fn kernel(m: &LinMap) -> Vec<Vec<Scalar>> {
    let zero = vec![m.field().zero(); m.rows()];
    solve_linear(m, &zero).expect("homogeneous system").kernel
}

fn rank_in<A: Arith>(a: &A, m: &LinMap) -> usize {
    let rows = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| a.lift(m.get(i, j))).collect())
        .collect();
    rref(a, rows, m.cols()).pivots.len()
}

pub fn rank(m: &LinMap) -> usize {
    match m.field() {
        Field::Rational => rank_in(&QArith, m),
        Field::Prime { p } => rank_in(&PArith(p), m),
    }
}

fn inverse_in<A: Arith>(a: &A, m: &LinMap) -> Option<LinMap> {
    let n = m.rows();
    let rows = (0..n)
        .map(|i| {
            let mut row: Vec<A::E> = (0..n).map(|j| a.lift(m.get(i, j))).collect();
            row.extend((0..n).map(|j| if i == j { a.one() } else { a.zero() }));
            row
        })
        .collect();
    let red = rref(a, rows, 2 * n);
    if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(LinMap::from_fn(m.field(), m.cod(), m.dom(), |r, c| {
        a.lower(&red.rows[r][n + c])
    }))
}

/// Two-sided inverse of a square map, with domain and codomain shapes swapped.
pub fn inverse(m: &LinMap) -> Option<LinMap> {
    if m.rows() != m.cols() {
        return None;
    }
    if m.rows() == 0 {
        return Some(m.transpose());
    }
    let inv = match m.field() {
        Field::Rational => inverse_in(&QArith, m),
        Field::Prime { p } => inverse_in(&PArith(p), m),
    }?;
    let ok = m.then(&inv).flat() == LinMap::identity(m.field(), &[m.cols()])
        && inv.then(m).flat() == LinMap::identity(m.field(), &[m.rows()]);
    ok.then_some(inv)
}

/// Matrix whose columns are the given vectors.
pub fn from_columns(field: Field, nrows: usize, cols: &[Vec<Scalar>]) -> LinMap {
    LinMap::from_fn(field, &[cols.len()], &[nrows], |r, c| cols[c][r].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(f: Field, rows: &[&[i64]]) -> LinMap {
        let r: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| f.int(x)).collect())
            .collect();
        LinMap::from_rows(f, &r, rows[0].len())
    }

    #[test]
    fn identity_system() {
        let f = Field::Rational;
        let s = solve_linear(&mat(f, &[&[1]]), &[f.one()]).unwrap();
        assert_eq!(s.particular, Some(vec![f.one()]));
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn zero_system() {
        let f = Field::Rational;
        let s = solve_linear(&mat(f, &[&[0, 0], &[0, 0]]), &[f.zero(), f.zero()]).unwrap();
        assert_eq!(s.particular, Some(vec![f.zero(), f.zero()]));
        assert_eq!(s.kernel.len(), 2);
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn inconsistent_row() {
        let f = Field::Rational;
        let s = solve_linear(&mat(f, &[&[2, 0], &[0, 0]]), &[f.one(), f.one()]).unwrap();
        assert!(s.particular.is_none());
        assert_eq!(s.kernel.len(), 1);
    }

    #[test]
    fn shape_mismatch_is_error() {
        let f = Field::Rational;
        assert!(matches!(
            solve_linear(&mat(f, &[&[1, 2]]), &[f.one(), f.one()]),
            Err(ExactError::Shape(_))
        ));
    }

    #[test]
    fn mod_p_inverse() {
        let f = Field::prime(7).unwrap();
        let m = mat(f, &[&[2, 3], &[1, 4]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.then(&inv), LinMap::identity(f, &[2]));
        assert!(inverse(&mat(f, &[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn characteristic_matters() {
        let m2 = mat(Field::prime(2).unwrap(), &[&[1, 1], &[1, -1]]);
        let mq = mat(Field::Rational, &[&[1, 1], &[1, -1]]);
        assert_eq!(rank(&m2), 1);
        assert_eq!(rank(&mq), 2);
    }
}
