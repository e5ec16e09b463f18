//! Candidate enumeration over solution-space coordinates and the bilinear witness search.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exactlin::{from_columns, solve_linear, Field, LinMap, Scalar};

/// Budget knobs shared by every search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Largest number of candidates enumerated exhaustively.
    pub enum_budget: u64,
    /// Seeded random candidates tried after the deterministic stage.
    pub trials: u64,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            enum_budget: 1 << 16,
            trials: 64,
            seed: 0,
            parallel: parallel_from_env(),
        }
    }
}

/// `false` when `ENTWINE_NO_PARALLEL=1`.
pub fn parallel_from_env() -> bool {
    std::env::var("ENTWINE_NO_PARALLEL").map_or(true, |v| v.trim() != "1")
}

/// Why a definitive negative answer was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NoReason {
    /// The normalization system is inconsistent.
    LinearInfeasible,
    /// The target is outside the span of every bilinear product.
    LinearizationInfeasible,
    /// Every candidate up to scalars was tried.
    Exhausted {
        candidates: u64,
    },
    DimensionMismatch {
        source: usize,
        target: usize,
    },
    /// All morphisms factor through a proper subspace.
    RankCertificate {
        rank: usize,
        dim: usize,
    },
    /// The module has no finite dual basis over the base algebra.
    NotProjective,
}

/// Three-valued answer carrying a witness on `Yes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Yes(W),
    No(NoReason),
    /// Search budget exhausted without a definitive answer.
    Unknown {
        candidates: u64,
        seed: u64,
    },
}

impl<W> Verdict<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No(_) => "no",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Yes(w) => Some(w),
            _ => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Yes(w) => Verdict::Yes(f(w)),
            Verdict::No(r) => Verdict::No(r),
            Verdict::Unknown { candidates, seed } => Verdict::Unknown { candidates, seed },
        }
    }

    /// Same kind, dropping the witness.
    pub fn shape(&self) -> Verdict<()> {
        match self {
            Verdict::Yes(_) => Verdict::Yes(()),
            Verdict::No(r) => Verdict::No(r.clone()),
            Verdict::Unknown { candidates, seed } => Verdict::Unknown {
                candidates: *candidates,
                seed: *seed,
            },
        }
    }
}

/// Linear feasibility verdict: `Yes` with a solution or `No` by inconsistency.
pub fn linear_verdict(sol: Option<LinMap>) -> Verdict<LinMap> {
    match sol {
        Some(x) => Verdict::Yes(x),
        None => Verdict::No(NoReason::LinearInfeasible),
    }
}

/// Result of a candidate search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found {
        coords: Vec<Scalar>,
        value: T,
        candidates: u64,
    },
    Exhausted {
        candidates: u64,
    },
    Undecided {
        candidates: u64,
        seed: u64,
    },
}

fn projective_count(q: u64, d: usize) -> Option<u64> {
    // (q^d - 1) / (q - 1) points with first nonzero coordinate 1
    let mut total: u64 = 0;
    let mut block: u64 = 1;
    for _ in 0..d {
        total = total.checked_add(block)?;
        block = block.checked_mul(q)?;
    }
    Some(total)
}

/// Index-th point of projective space over a digit alphabet, leading coordinate 1.
fn projective_point(digits: &[Scalar], d: usize, mut index: u64) -> Vec<Scalar> {
    let q = digits.len() as u64;
    let zero = digits[0].clone();
    let mut lead = 0;
    let mut block = q.checked_pow((d - 1) as u32).unwrap_or(u64::MAX);
    while index >= block {
        index -= block;
        lead += 1;
        block /= q;
    }
    let mut v = vec![zero; d];
    v[lead] = digits[1].clone();
    for pos in (lead + 1..d).rev() {
        v[pos] = digits[(index % q) as usize].clone();
        index /= q;
    }
    v
}

fn random_point(field: Field, d: usize, seed: u64, index: u64) -> Vec<Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    loop {
        let v: Vec<Scalar> = (0..d)
            .map(|_| match field {
                Field::Rational => field.int(rng.gen_range(-8..=8)),
                Field::Prime { p } => Scalar::Fp {
                    v: rng.gen_range(0..p),
                    p,
                },
            })
            .collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn first_hit<T: Send>(
    count: u64,
    parallel: bool,
    point: &(dyn Fn(u64) -> Vec<Scalar> + Sync),
    pred: &(dyn Fn(&[Scalar]) -> Option<T> + Sync),
) -> Option<(Vec<Scalar>, T)> {
    let eval = |i: u64| {
        let v = point(i);
        pred(&v).map(|t| (v, t))
    };
    if parallel {
        (0..count).into_par_iter().find_map_first(eval)
    } else {
        (0..count).find_map(eval)
    }
}

/// Searches nonzero coordinate vectors of length `d` (up to scalars) for one accepted by `pred`.
///
/// Over 𝔽p within budget the enumeration is exhaustive; otherwise a deterministic
/// `{0, ±1}` grid (over ℚ) is followed by seeded random candidates.
pub fn search_space<T: Send>(
    field: Field,
    d: usize,
    cfg: &SearchConfig,
    pred: &(dyn Fn(&[Scalar]) -> Option<T> + Sync),
) -> Search<T> {
    if d == 0 {
        return Search::Exhausted { candidates: 0 };
    }
    if let Field::Prime { p } = field {
        if let Some(n) = projective_count(p, d).filter(|&n| n <= cfg.enum_budget) {
            let digits = field.elements().expect("finite field");
            return match first_hit(n, cfg.parallel, &|i| projective_point(&digits, d, i), pred) {
                Some((coords, value)) => Search::Found {
                    coords,
                    value,
                    candidates: n,
                },
                None => Search::Exhausted { candidates: n },
            };
        }
    }
    let mut tried = 0;
    if field == Field::Rational {
        let digits = vec![field.zero(), field.one(), field.int(-1)];
        let n = projective_count(3, d).map_or(cfg.enum_budget, |n| n.min(cfg.enum_budget));
        tried += n;
        if let Some((coords, value)) =
            first_hit(n, cfg.parallel, &|i| projective_point(&digits, d, i), pred)
        {
            return Search::Found {
                coords,
                value,
                candidates: tried,
            };
        }
    }
    let seed = cfg.seed;
    tried += cfg.trials;
    match first_hit(
        cfg.trials,
        cfg.parallel,
        &|i| random_point(field, d, seed, i),
        pred,
    ) {
        Some((coords, value)) => Search::Found {
            coords,
            value,
            candidates: tried,
        },
        None => Search::Undecided {
            candidates: tried,
            seed,
        },
    }
}

/// `Σ_j s_j Σ_i t_i B(x_j, y_i) = target` for a bilinear `B`; `slices[j]` has column `i` equal to `B(x_j, y_i)`.
#[derive(Clone, Debug)]
pub struct Bilinear {
    pub field: Field,
    pub outer_dim: usize,
    pub inner_dim: usize,
    pub slices: Vec<LinMap>,
    pub target: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BilinearOutcome {
    Found {
        outer: Vec<Scalar>,
        inner: Vec<Scalar>,
        candidates: u64,
    },
    Infeasible(NoReason),
    Undecided {
        candidates: u64,
        seed: u64,
    },
}

impl Bilinear {
    /// Builds the slices by evaluating `pair(j, i)`.
    pub fn new(
        field: Field,
        outer_dim: usize,
        inner_dim: usize,
        target: Vec<Scalar>,
        pair: impl Fn(usize, usize) -> Vec<Scalar>,
    ) -> Self {
        let rows = target.len();
        let slices = (0..outer_dim)
            .map(|j| {
                let cols: Vec<Vec<Scalar>> = (0..inner_dim).map(|i| pair(j, i)).collect();
                from_columns(field, rows, &cols)
            })
            .collect();
        Bilinear {
            field,
            outer_dim,
            inner_dim,
            slices,
            target,
        }
    }

    fn pencil(&self, s: &[Scalar]) -> LinMap {
        let zero = LinMap::zero(self.field, &[self.inner_dim], &[self.target.len()]);
        LinMap::combination(&zero, s, &self.slices)
    }

    fn solve_inner(&self, s: &[Scalar]) -> Option<Vec<Scalar>> {
        solve_linear(&self.pencil(s), &self.target).ok()?.particular
    }

    pub fn solve(&self, cfg: &SearchConfig) -> BilinearOutcome {
        let f = self.field;
        let rows = self.target.len();
        if self.target.iter().all(Scalar::is_zero) {
            return BilinearOutcome::Found {
                outer: vec![f.zero(); self.outer_dim],
                inner: vec![f.zero(); self.inner_dim],
                candidates: 0,
            };
        }
        let all: Vec<Vec<Scalar>> = self
            .slices
            .iter()
            .flat_map(|m| {
                (0..m.cols())
                    .map(|c| m.column(c).to_vec())
                    .collect::<Vec<_>>()
            })
            .collect();
        let lin = from_columns(f, rows, &all);
        if solve_linear(&lin, &self.target).map_or(true, |s| s.particular.is_none()) {
            return BilinearOutcome::Infeasible(NoReason::LinearizationInfeasible);
        }
        if self.outer_dim == 1 {
            return match self.solve_inner(&[f.one()]) {
                Some(inner) => BilinearOutcome::Found {
                    outer: vec![f.one()],
                    inner,
                    candidates: 1,
                },
                None => BilinearOutcome::Infeasible(NoReason::LinearInfeasible),
            };
        }
        if self.inner_dim == 1 {
            let cols: Vec<Vec<Scalar>> = self.slices.iter().map(|m| m.column(0).to_vec()).collect();
            let m = from_columns(f, rows, &cols);
            return match solve_linear(&m, &self.target)
                .ok()
                .and_then(|s| s.particular)
            {
                Some(outer) => BilinearOutcome::Found {
                    outer,
                    inner: vec![f.one()],
                    candidates: 1,
                },
                None => BilinearOutcome::Infeasible(NoReason::LinearInfeasible),
            };
        }
        match search_space(f, self.outer_dim, cfg, &|s| self.solve_inner(s)) {
            Search::Found {
                coords,
                value,
                candidates,
            } => BilinearOutcome::Found {
                outer: coords,
                inner: value,
                candidates,
            },
            Search::Exhausted { candidates } => {
                BilinearOutcome::Infeasible(NoReason::Exhausted { candidates })
            }
            Search::Undecided { candidates, seed } => {
                BilinearOutcome::Undecided { candidates, seed }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_points_are_distinct_and_normalized() {
        let f = Field::prime(3).unwrap();
        let digits = f.elements().unwrap();
        let n = projective_count(3, 3).unwrap();
        assert_eq!(n, 13);
        let pts: Vec<Vec<Scalar>> = (0..n).map(|i| projective_point(&digits, 3, i)).collect();
        for (i, p) in pts.iter().enumerate() {
            assert!(p.iter().find(|x| !x.is_zero()).unwrap().is_one());
            assert!(pts[..i].iter().all(|q| q != p));
        }
    }

    #[test]
    fn bilinear_product_equal_to_one() {
        // s0 t0 - s1 t1 = 1 over F2 needs s = (1, 0) or (0, 1) with matching t
        let f = Field::prime(2).unwrap();
        let b = Bilinear::new(f, 2, 2, vec![f.one()], |j, i| {
            vec![if i == j { f.one() } else { f.zero() }]
        });
        let cfg = SearchConfig::default();
        match b.solve(&cfg) {
            BilinearOutcome::Found { outer, inner, .. } => {
                let v = &(&outer[0] * &inner[0]) + &(&outer[1] * &inner[1]);
                assert!(v.is_one());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn linearization_detects_unreachable_targets() {
        let f = Field::Rational;
        let b = Bilinear::new(f, 2, 2, vec![f.zero(), f.one()], |_, _| {
            vec![f.one(), f.zero()]
        });
        assert_eq!(
            b.solve(&SearchConfig::default()),
            BilinearOutcome::Infeasible(NoReason::LinearizationInfeasible)
        );
    }

    #[test]
    fn serial_and_parallel_agree() {
        let f = Field::prime(5).unwrap();
        let pred = |s: &[Scalar]| (s[2].residue() == Some(3) && s[1].is_zero()).then_some(());
        let mut cfg = SearchConfig {
            parallel: true,
            ..SearchConfig::default()
        };
        let a = search_space(f, 3, &cfg, &pred);
        cfg.parallel = false;
        assert_eq!(a, search_space(f, 3, &cfg, &pred));
    }
}
