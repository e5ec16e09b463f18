//! Seeded generators: Doi-Hopf data by rejection sampling, and raw factorization maps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::entwining::DoiHopfDatum;
use crate::exactlin::{Field, LinMap, Scalar};
use crate::smash::Factorization;
use crate::structures::{
    check_comodule_algebra, check_module_coalgebra, AlgebraData, BialgebraData, CoalgebraData,
};

use super::build::*;

/// Attempts per sampled map before giving up.
pub const ATTEMPT_BUDGET: usize = 4096;

fn random_scalar(f: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match f.modulus() {
        Some(p) => f.int(rng.gen_range(0..p) as i64),
        None => f.int(rng.gen_range(-1..=1)),
    }
}

fn bialgebra_of_dim(f: Field, n: usize) -> Option<BialgebraData> {
    match n {
        1 => Some(
            BialgebraData::new(trivial_algebra(f), trivial_coalgebra(f)).expect("ground field"),
        ),
        2 | 3 => Some(group_bialgebra(f, n)),
        4 => Some(sweedler_bialgebra(f)),
        _ => None,
    }
}

fn algebra_of_dim(f: Field, n: usize, rng: &mut ChaCha8Rng) -> Option<AlgebraData> {
    match n {
        1 => Some(trivial_algebra(f)),
        2 if rng.gen_bool(0.5) => Some(dual_numbers_algebra(f)),
        2 | 3 => Some(group_algebra(f, n)),
        4 => Some(matrix_algebra(f)),
        _ => None,
    }
}

fn coalgebra_of_dim(f: Field, n: usize, rng: &mut ChaCha8Rng) -> Option<CoalgebraData> {
    match n {
        1 => Some(trivial_coalgebra(f)),
        2 if rng.gen_bool(0.5) => Some(dual_numbers_coalgebra(f)),
        2..=4 => Some(grouplike_coalgebra(f, n)),
        _ => None,
    }
}

/// Random Doi-Hopf datum with `(dim H, dim A, dim C) = dims` on fixed small structures.
///
/// The coaction is forced on the unit of `A` and the action is forced on the unit of
/// `H`; the remaining constants are sampled until the sub-validators pass.
pub fn random_doi_hopf(
    dims: (usize, usize, usize),
    field: Field,
    seed: u64,
) -> Option<DoiHopfDatum> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = bialgebra_of_dim(field, dims.0)?;
    let a = algebra_of_dim(field, dims.1, &mut rng)?;
    let c = coalgebra_of_dim(field, dims.2, &mut rng)?;
    let (nh, na, nc) = (dims.0, dims.1, dims.2);
    let one_h = h.algebra.unit().clone();
    let unit_a = a.unit().clone();

    let forced_coaction = unit_a.tensor(&one_h);
    let mut coaction = None;
    for _ in 0..ATTEMPT_BUDGET {
        let cand = LinMap::from_fn(field, &[na], &[na, nh], |_, _| {
            random_scalar(field, &mut rng)
        });
        let cand = fix_on_unit(&cand, &unit_a, &forced_coaction);
        if check_comodule_algebra(&h, &a, &cand).is_valid() {
            coaction = Some(cand);
            break;
        }
    }
    let coaction = coaction?;

    let mut action = None;
    for _ in 0..ATTEMPT_BUDGET {
        let cand = LinMap::from_fn(field, &[nc, nh], &[nc], |r, col| {
            if col % nh == 0 {
                if r == col / nh {
                    field.one()
                } else {
                    field.zero()
                }
            } else {
                random_scalar(field, &mut rng)
            }
        });
        if check_module_coalgebra(&h, &c, &cand).is_valid() {
            action = Some(cand);
            break;
        }
    }
    Some(DoiHopfDatum {
        h,
        a,
        coaction,
        c,
        action: action?,
    })
}

/// Adjusts `m` so that `m(u) = target`, changing one column where `u` is supported.
fn fix_on_unit(m: &LinMap, u: &LinMap, target: &LinMap) -> LinMap {
    let coeffs = u.coeffs();
    let Some(j) = coeffs.iter().position(|x| !x.is_zero()) else {
        return m.clone();
    };
    let inv = coeffs[j].inv().expect("nonzero");
    let current = u.then(m);
    let mut out = m.clone();
    for r in 0..m.rows() {
        let delta = &(target.get(r, 0) - current.get(r, 0)) * &inv;
        let v = m.get(r, j) + &delta;
        out.set(r, j, v);
    }
    out
}

/// Raw map `A⊗B → B⊗A` on `B, A ∈ {kC₂, k[x]/(x²)}` over `field`.
///
/// With `unital`, the images of `a⊗1` and `1⊗b` are forced to the flip; otherwise
/// every constant is random.
pub fn random_factorization(field: Field, seed: u64, unital: bool) -> Factorization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.5) {
            group_algebra(field, 2)
        } else {
            dual_numbers_algebra(field)
        }
    };
    let b = pick(&mut rng);
    let a = pick(&mut rng);
    let rmap = LinMap::from_fn(field, &[2, 2], &[2, 2], |row, col| {
        let (ia, ib) = (col / 2, col % 2);
        let (ob, oa) = (row / 2, row % 2);
        if unital && (ia == 0 || ib == 0) {
            if ob == ib && oa == ia {
                field.one()
            } else {
                field.zero()
            }
        } else {
            random_scalar(field, &mut rng)
        }
    });
    Factorization::unchecked(b, a, rmap).expect("shape")
}

/// The seeded family used for the associativity equivalence: alternating raw and unital maps.
pub fn random_factorizations(field: Field, count: usize, seed: u64) -> Vec<Factorization> {
    (0..count)
        .map(|i| random_factorization(field, seed.wrapping_add(i as u64), i % 2 == 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entwining::from_doi_hopf;

    #[test]
    fn trivial_bialgebra_always_succeeds() {
        for seed in 0..5 {
            let d = random_doi_hopf((1, 2, 2), Field::prime(3).unwrap(), seed).expect("H = k");
            assert!(from_doi_hopf(&d).is_ok());
        }
    }

    #[test]
    fn generator_is_deterministic() {
        let f = Field::prime(2).unwrap();
        assert_eq!(
            random_doi_hopf((2, 2, 2), f, 1),
            random_doi_hopf((2, 2, 2), f, 1)
        );
        assert_eq!(
            random_factorization(f, 9, false),
            random_factorization(f, 9, false)
        );
    }

    #[test]
    fn sampled_data_induce_entwinings() {
        let f = Field::prime(2).unwrap();
        let mut found = 0;
        for seed in 0..20 {
            if let Some(d) = random_doi_hopf((2, 2, 2), f, seed) {
                let e = from_doi_hopf(&d).expect("valid datum");
                assert!(e.check().is_valid());
                found += 1;
            }
        }
        assert!(found > 0);
    }
}
