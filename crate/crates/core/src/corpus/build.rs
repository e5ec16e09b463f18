//! Structure-constant builders for the named examples.

use crate::entwining::{from_doi_hopf, DoiHopfDatum, Entwining};
use crate::exactlin::{Field, LinMap, Scalar};
use crate::ringext::RingExtension;
use crate::structures::{AlgebraData, BialgebraData, CoalgebraData};

fn table3(f: Field, n: usize, entry: impl Fn(usize, usize, usize) -> i64) -> Vec<Vec<Vec<Scalar>>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| f.int(entry(i, j, k))).collect())
                .collect()
        })
        .collect()
}

fn unit_vec(f: Field, n: usize, idx: usize) -> Vec<Scalar> {
    (0..n)
        .map(|i| if i == idx { f.one() } else { f.zero() })
        .collect()
}

/// The ground field as a one-dimensional algebra.
pub fn trivial_algebra(f: Field) -> AlgebraData {
    group_algebra(f, 1)
}

/// Group algebra of the cyclic group of order `n`, basis `1, g, …, gⁿ⁻¹`.
pub fn group_algebra(f: Field, n: usize) -> AlgebraData {
    let m = table3(f, n, |i, j, k| i64::from((i + j) % n == k));
    AlgebraData::from_tables(f, &m, &unit_vec(f, n, 0)).expect("group algebra")
}

/// 2×2 matrices, basis `e11, e12, e21, e22`.
pub fn matrix_algebra(f: Field) -> AlgebraData {
    let m = table3(f, 4, |x, y, z| {
        let (i, j, k, l) = (x / 2, x % 2, y / 2, y % 2);
        i64::from(j == k && z == 2 * i + l)
    });
    let mut u = vec![f.zero(); 4];
    u[0] = f.one();
    u[3] = f.one();
    AlgebraData::from_tables(f, &m, &u).expect("matrix algebra")
}

/// `k[x]/(x²)`, basis `1, x`.
pub fn dual_numbers_algebra(f: Field) -> AlgebraData {
    let m = table3(f, 2, |i, j, k| i64::from(i + j == k));
    AlgebraData::from_tables(f, &m, &unit_vec(f, 2, 0)).expect("dual numbers")
}

pub fn trivial_coalgebra(f: Field) -> CoalgebraData {
    grouplike_coalgebra(f, 1)
}

/// `n` group-like elements: `Δ(gᵢ) = gᵢ⊗gᵢ`, `ε(gᵢ) = 1`.
pub fn grouplike_coalgebra(f: Field, n: usize) -> CoalgebraData {
    let d = table3(f, n, |i, j, k| i64::from(i == j && j == k));
    CoalgebraData::from_tables(f, &d, &vec![f.one(); n]).expect("group-like coalgebra")
}

/// Basis `g, x` with `Δ(g) = g⊗g`, `Δ(x) = g⊗x + x⊗g`, `ε(g) = 1`, `ε(x) = 0`.
pub fn dual_numbers_coalgebra(f: Field) -> CoalgebraData {
    let d = table3(f, 2, |i, j, k| i64::from(j + k == i));
    CoalgebraData::from_tables(f, &d, &unit_vec(f, 2, 0)).expect("dual numbers coalgebra")
}

/// Group bialgebra of the cyclic group of order `n`.
pub fn group_bialgebra(f: Field, n: usize) -> BialgebraData {
    BialgebraData::new(group_algebra(f, n), grouplike_coalgebra(f, n)).expect("group bialgebra")
}

/// Sweedler's four-dimensional Hopf algebra, basis `1, g, x, gx`:
/// `g² = 1`, `x² = 0`, `xg = −gx`, `Δ(g) = g⊗g`, `Δ(x) = x⊗1 + g⊗x`.
pub fn sweedler_bialgebra(f: Field) -> BialgebraData {
    // basis index a + 2b for gᵃxᵇ
    let m = table3(f, 4, |p, q, r| {
        let (a, b, c, d) = (p % 2, p / 2, q % 2, q / 2);
        if b + d >= 2 || r != (a + c) % 2 + 2 * (b + d) {
            return 0;
        }
        if b * c == 1 {
            -1
        } else {
            1
        }
    });
    let algebra = AlgebraData::from_tables(f, &m, &unit_vec(f, 4, 0)).expect("sweedler algebra");
    let hh = algebra_tensor(&algebra, &algebra);
    let g = tensor_basis(f, 4, &[(1, 1, 1)]);
    let x = tensor_basis(f, 4, &[(2, 0, 1), (1, 2, 1)]);
    let one = tensor_basis(f, 4, &[(0, 0, 1)]);
    let mut cols = Vec::new();
    for idx in 0..4 {
        let (a, b) = (idx % 2, idx / 2);
        let mut v = one.clone();
        if a == 1 {
            v = hh.product(&v, &g);
        }
        if b == 1 {
            v = hh.product(&v, &x);
        }
        cols.push(v.coeffs().to_vec());
    }
    let comult = LinMap::from_fn(f, &[4], &[4, 4], |r, c| cols[c][r].clone());
    let counit = LinMap::functional(f, &[4], vec![f.one(), f.one(), f.zero(), f.zero()]);
    let coalgebra = CoalgebraData::new(comult, counit).expect("sweedler coalgebra");
    BialgebraData::new(algebra, coalgebra).expect("sweedler bialgebra")
}

fn tensor_basis(f: Field, n: usize, terms: &[(usize, usize, i64)]) -> LinMap {
    let mut v = vec![f.zero(); n * n];
    for &(i, j, c) in terms {
        v[i * n + j] = &v[i * n + j] + &f.int(c);
    }
    LinMap::element(f, &[n * n], v)
}

/// Tensor product algebra `X⊗Y` on the flattened space.
pub fn algebra_tensor(x: &AlgebraData, y: &AlgebraData) -> AlgebraData {
    let f = x.field();
    let (nx, ny) = (x.dim(), y.dim());
    let mult = LinMap::identity(f, &[nx, ny, nx, ny])
        .permute(&[0, 2, 1, 3])
        .on(0, x.mult())
        .on(1, y.mult())
        .reshape(&[nx * ny, nx * ny], &[nx * ny]);
    let unit = x.unit().tensor(y.unit()).reshape(&[], &[nx * ny]);
    AlgebraData::new(mult, unit).expect("tensor algebra")
}

/// Regular Doi-Hopf datum `(H, H, H)`: coaction `Δ`, action by multiplication.
pub fn regular_doi_hopf(h: &BialgebraData) -> DoiHopfDatum {
    DoiHopfDatum {
        h: h.clone(),
        a: h.algebra.clone(),
        coaction: h.coalgebra.comult().clone(),
        c: h.coalgebra.clone(),
        action: h.algebra.mult().clone(),
    }
}

/// `M₂(k)` graded by `C₂` (diagonal even, off-diagonal odd) over `kC₂`, with `C = kC₂`.
pub fn graded_matrix_doi_hopf(f: Field) -> DoiHopfDatum {
    let h = group_bialgebra(f, 2);
    let a = matrix_algebra(f);
    let coaction = LinMap::from_fn(f, &[4], &[4, 2], |r, c| {
        let (i, j) = (c / 2, c % 2);
        let degree = (i + j) % 2;
        if r == c * 2 + degree {
            f.one()
        } else {
            f.zero()
        }
    });
    DoiHopfDatum {
        c: h.coalgebra.clone(),
        action: h.algebra.mult().clone(),
        h,
        a,
        coaction,
    }
}

/// Trivial datum over `H = k`: the entwining is the flip.
pub fn trivial_doi_hopf(a: &AlgebraData, c: &CoalgebraData) -> DoiHopfDatum {
    let f = a.field();
    let h =
        BialgebraData::new(trivial_algebra(f), trivial_coalgebra(f)).expect("trivial bialgebra");
    let (na, nc) = (a.dim(), c.dim());
    DoiHopfDatum {
        h,
        a: a.clone(),
        coaction: LinMap::identity(f, &[na]).reshape(&[na], &[na, 1]),
        c: c.clone(),
        action: LinMap::identity(f, &[nc]).reshape(&[nc, 1], &[nc]),
    }
}

pub fn doi_hopf_entwining(d: &DoiHopfDatum) -> Entwining {
    from_doi_hopf(d).expect("corpus datum is valid")
}

/// `kC₂ → M₂(k)`, `g ↦ diag(1, −1)`. In characteristic 2 this collapses `g` to `1`.
pub fn diagonal_group_in_matrices(f: Field) -> RingExtension {
    let i = LinMap::from_fn(f, &[2], &[4], |r, c| match (r, c) {
        (0, _) => f.one(),
        (3, 0) => f.one(),
        (3, 1) => f.int(-1),
        _ => f.zero(),
    });
    RingExtension::new(group_algebra(f, 2), matrix_algebra(f), i).expect("diagonal embedding")
}

/// The algebra extensions used across tests and the suite.
pub fn corpus_extensions(f: Field) -> Vec<RingExtension> {
    vec![
        RingExtension::over_scalars(group_algebra(f, 2)),
        RingExtension::over_scalars(group_algebra(f, 3)),
        RingExtension::over_scalars(matrix_algebra(f)),
        RingExtension::over_scalars(dual_numbers_algebra(f)),
        RingExtension::identity(group_algebra(f, 2)),
        diagonal_group_in_matrices(f),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_pass_validators() {
        for f in [
            Field::Rational,
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
        ] {
            for a in [
                trivial_algebra(f),
                group_algebra(f, 2),
                group_algebra(f, 3),
                matrix_algebra(f),
                dual_numbers_algebra(f),
            ] {
                assert!(a.check().is_valid());
            }
            for c in [grouplike_coalgebra(f, 3), dual_numbers_coalgebra(f)] {
                assert!(c.check().is_valid());
            }
            let h = sweedler_bialgebra(f);
            assert!(h.check().is_valid(), "{}", h.check());
            assert!(group_bialgebra(f, 3).check().is_valid());
        }
    }

    #[test]
    fn sweedler_comultiplication_of_gx() {
        let f = Field::Rational;
        let h = sweedler_bialgebra(f);
        let d = h.coalgebra.comult_table();
        // Δ(gx) = gx⊗g + 1⊗gx
        assert!(d[3][3][1].is_one());
        assert!(d[3][0][3].is_one());
        let nonzero = d[3].iter().flatten().filter(|s| !s.is_zero()).count();
        assert_eq!(nonzero, 2);
    }
}
