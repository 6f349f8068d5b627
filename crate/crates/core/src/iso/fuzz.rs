use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{iso_invariants, isomorphic_dim1_nilpotent, IsoError, IsoInvariants};
use crate::algebra::StructureConstants;
use crate::linalg::{GMatrix, Matrix};
use crate::scalar::GaussRational;

/// A random invertible matrix with small Gaussian-integer entries, mostly
/// real.
pub fn random_invertible<R: Rng>(n: usize, rng: &mut R) -> Matrix {
    loop {
        let rows: Vec<Vec<GaussRational>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let re = rng.gen_range(-3..=3);
                        let im = if rng.gen_bool(0.2) { rng.gen_range(-1..=1) } else { 0 };
                        GaussRational::from_parts((re, 1), (im, 1))
                    })
                    .collect()
            })
            .collect();
        let m = GMatrix::from_rows(rows);
        if !m.determinant().is_zero() {
            return m.to_scalar();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzFailure {
    pub trial: usize,
    pub reason: String,
    pub basis_change: Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: usize,
    pub invariants: IsoInvariants,
    /// Whether the congruence-based isomorphism check was exercised.
    pub isomorphism_checked: bool,
    pub witnesses_found: usize,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Applies `trials` random basis changes; each must preserve the invariants
/// and, for nilpotent algebras with `dim A² = 1`, be recognized as an
/// isomorphism (with any witness re-verified). Trial `k` draws from its own
/// stream of `seed`, so the report does not depend on scheduling.
pub fn random_basis_fuzz(
    a: &StructureConstants,
    trials: usize,
    seed: u64,
) -> Result<FuzzReport, IsoError> {
    if !a.is_constant() {
        return Err(IsoError::PreconditionFailed(
            "fuzzing needs constant parameters; substitute values first".into(),
        ));
    }
    let base = iso_invariants(a);
    let eligible = base.pencil.is_some();
    let outcomes: Vec<(Option<FuzzFailure>, bool)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let p = random_invertible(a.dim(), &mut rng);
            let fail = |reason: String| {
                Some(FuzzFailure {
                    trial,
                    reason,
                    basis_change: p.clone(),
                })
            };
            let b = match a.change_of_basis(&p) {
                Ok(b) => b,
                Err(e) => return (fail(e.to_string()), false),
            };
            if iso_invariants(&b) != base {
                return (fail("invariants changed".into()), false);
            }
            if !eligible {
                return (None, false);
            }
            match isomorphic_dim1_nilpotent(a, &b, seed ^ trial as u64) {
                Ok(v) if !v.isomorphic => (fail("basis change judged non-isomorphic".into()), false),
                Ok(v) => match v.witness {
                    Some(w) if !a.change_of_basis(&w).is_ok_and(|x| x.same_products(&b)) => {
                        (fail("witness does not verify".into()), true)
                    }
                    Some(_) => (None, true),
                    None => (None, false),
                },
                Err(e) => (fail(e.to_string()), false),
            }
        })
        .collect();
    Ok(FuzzReport {
        seed,
        trials,
        invariants: base,
        isomorphism_checked: eligible,
        witnesses_found: outcomes.iter().filter(|(_, w)| *w).count(),
        failures: outcomes.into_iter().filter_map(|(f, _)| f).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{dim3_solvable_table, paper_items};

    #[test]
    fn table_entry_survives() {
        let a = &paper_items(5).unwrap()[3];
        let r = random_basis_fuzz(a, 10, 42).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.isomorphism_checked);
        assert!(r.witnesses_found > 0);
    }

    #[test]
    fn solvable_family_invariants_constant() {
        let a = &dim3_solvable_table()[3].algebra;
        let r = random_basis_fuzz(a, 20, 3).unwrap();
        assert!(r.passed());
        assert!(!r.isomorphism_checked);
    }

    #[test]
    fn deterministic() {
        let a = &paper_items(4).unwrap()[1];
        let x = serde_json::to_string(&random_basis_fuzz(a, 5, 9).unwrap()).unwrap();
        let y = serde_json::to_string(&random_basis_fuzz(a, 5, 9).unwrap()).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn parametric_input_is_rejected() {
        let a = paper_items(4).unwrap()[4].clone();
        assert!(!a.is_constant());
        assert!(matches!(
            random_basis_fuzz(&a, 1, 0),
            Err(IsoError::PreconditionFailed(_))
        ));
    }
}
