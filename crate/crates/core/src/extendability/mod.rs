//! Submodular extendability of partial functions.
//!
//! Feasibility is decided exactly over a field (no tolerances). A feasible
//! answer carries the completed function; an infeasible one carries
//! nonnegative multipliers over the square constraints whose combination
//! cancels every variable and leaves a negative constant.

mod certificate;
mod distance;
mod quadratic;
mod simplex;
mod system;

use std::collections::BTreeMap;

pub use certificate::{check_path_certificate, verify_path_certificate, CertificateCheck, EdgeRef, PathCertificate};
pub use distance::{distance_to_monotone, distance_to_submodular, nonincreasing_extension, Distance};
pub use system::{extension_system, Constraint, ConstraintSystem};

use crate::error::{Error, Result};
use crate::functions::{PartialFunction, TotalFunction};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibilityResult<T> {
    Feasible {
        /// One value per system variable.
        witness: Vec<T>,
        extension: TotalFunction<T>,
    },
    Infeasible {
        /// `(constraint index, multiplier)`, multipliers positive.
        farkas: Vec<(usize, T)>,
    },
}

impl<T> FeasibilityResult<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible { .. })
    }

    pub fn extension(&self) -> Option<&TotalFunction<T>> {
        match self {
            FeasibilityResult::Feasible { extension, .. } => Some(extension),
            FeasibilityResult::Infeasible { .. } => None,
        }
    }

    pub fn farkas(&self) -> Option<&[(usize, T)]> {
        match self {
            FeasibilityResult::Feasible { .. } => None,
            FeasibilityResult::Infeasible { farkas } => Some(farkas),
        }
    }
}

/// The constant left after combining constraints `a_k·v − b_k >= 0` with
/// multipliers `y`: `−Σ y_k b_k`, provided every variable cancels and all
/// multipliers are nonnegative. `None` when the combination is not a
/// valid Farkas combination.
pub fn farkas_constant<T: Field>(sys: &ConstraintSystem<T>, farkas: &[(usize, T)]) -> Option<T> {
    let mut coefficients: BTreeMap<usize, T> = BTreeMap::new();
    let mut constant = T::zero();
    for (k, y) in farkas {
        if y.is_negative() {
            return None;
        }
        let c = sys.constraints().get(*k)?;
        for &(var, coeff) in &c.terms {
            let entry = coefficients.entry(var).or_insert_with(T::zero);
            *entry = if coeff > 0 {
                entry.clone() + y.clone()
            } else {
                entry.clone() - y.clone()
            };
        }
        constant = constant - y.clone() * c.rhs.clone();
    }
    coefficients.values().all(|c| c.is_zero()).then_some(constant)
}

/// True iff `farkas` proves `sys` infeasible.
pub fn verify_farkas<T: Field>(sys: &ConstraintSystem<T>, farkas: &[(usize, T)]) -> bool {
    farkas_constant(sys, farkas).is_some_and(|c| c.is_negative())
}

/// Decides the system. A quadratic extension is tried first; otherwise
/// the full system goes to the simplex. Both answers are re-checked
/// before returning, and a failed re-check is reported as
/// [`Error::Internal`].
pub fn solve_feasibility<T: Field>(sys: &ConstraintSystem<T>) -> Result<FeasibilityResult<T>> {
    if sys.violated_constants().next().is_none() {
        if let Some(witness) = quadratic::quadratic_witness(sys) {
            let extension = sys.complete(&witness);
            if extension.is_submodular() {
                return Ok(FeasibilityResult::Feasible { witness, extension });
            }
        }
    }
    match simplex::solve(sys) {
        simplex::Outcome::Farkas(farkas) => {
            if !verify_farkas(sys, &farkas) {
                return Err(Error::Internal("Farkas multipliers failed re-verification".into()));
            }
            Ok(FeasibilityResult::Infeasible { farkas })
        }
        simplex::Outcome::Witness(witness) => {
            let extension = sys.complete(&witness);
            if !extension.is_submodular() {
                return Err(Error::Internal("completed function is not submodular".into()));
            }
            Ok(FeasibilityResult::Feasible { witness, extension })
        }
    }
}

pub fn is_extendable<T: Field>(pf: &PartialFunction<T>) -> Result<(bool, FeasibilityResult<T>)> {
    let result = solve_feasibility(&extension_system(pf)?)?;
    Ok((result.is_feasible(), result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::{Point, Square};
    use crate::Rational;

    fn r(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    fn p(s: &str) -> Point {
        s.parse().unwrap()
    }

    #[test]
    fn diagonal_pair_system() {
        let pf = PartialFunction::from_pairs(2, [(p("00"), r(0)), (p("11"), r(1))]).unwrap();
        let sys = extension_system(&pf).unwrap();
        assert_eq!(sys.variables(), [p("10"), p("01")]);
        assert_eq!(sys.constraints().len(), 1);
        assert_eq!(sys.constraints()[0].rhs, r(1));
        let (ok, result) = is_extendable(&pf).unwrap();
        assert!(ok);
        let g = result.extension().unwrap();
        assert!(g.value(p("01")).clone() + g.value(p("10")).clone() >= r(1));
    }

    #[test]
    fn total_functions() {
        let sub = TotalFunction::from_fn(3, |x| r(-(x.level() as i64 * x.level() as i64))).unwrap();
        let sys = extension_system(&sub.to_partial()).unwrap();
        assert!(sys.variables().is_empty());
        assert_eq!(sys.constraints().len(), 6);
        assert!(solve_feasibility(&sys).unwrap().is_feasible());

        let bad = TotalFunction::from_fn(2, |x| if x.bits() == 0b11 { r(1) } else { r(0) }).unwrap();
        let sys = extension_system(&bad.to_partial()).unwrap();
        let result = solve_feasibility(&sys).unwrap();
        assert_eq!(result.farkas().unwrap(), &[(0, r(1))]);
        assert_eq!(farkas_constant(&sys, result.farkas().unwrap()), Some(r(-1)));
    }

    #[test]
    fn empty_and_single_point() {
        for n in 1..5 {
            let pf = PartialFunction::<Rational>::empty(n).unwrap();
            assert!(is_extendable(&pf).unwrap().0);
        }
        let pf = PartialFunction::from_pairs(4, [(p("0110"), r(5))]).unwrap();
        let (ok, result) = is_extendable(&pf).unwrap();
        assert!(ok);
        assert_eq!(result.extension().unwrap().value(p("0110")), &r(5));
    }

    #[test]
    fn non_extendable_from_a_path_pair() {
        // coordinate 2 gains 0 at 000 but 1 at 101
        let pf = PartialFunction::from_pairs(
            3,
            [(p("000"), r(0)), (p("010"), r(0)), (p("111"), r(1)), (p("101"), r(0))],
        )
        .unwrap();
        let (ok, result) = is_extendable(&pf).unwrap();
        assert!(!ok);
        let sys = extension_system(&pf).unwrap();
        assert!(verify_farkas(&sys, result.farkas().unwrap()));
    }

    #[test]
    fn farkas_checker_rejects_bad_combinations() {
        let pf = PartialFunction::from_pairs(2, [(p("00"), r(0)), (p("11"), r(1))]).unwrap();
        let sys = extension_system(&pf).unwrap();
        // variables survive
        assert!(!verify_farkas(&sys, &[(0, r(1))]));
        assert!(!verify_farkas(&sys, &[(0, r(-1))]));
        assert!(!verify_farkas(&sys, &[(7, r(1))]));
        assert_eq!(sys.constraints()[0].square, Square::new(p("00"), 1, 2).unwrap());
    }

    #[test]
    fn integer_field_agrees() {
        use num_rational::Ratio;
        let pf = PartialFunction::from_pairs(
            3,
            [
                (p("000"), Ratio::<i64>::from_integer(0)),
                (p("111"), Ratio::from_integer(3)),
                (p("100"), Ratio::from_integer(1)),
            ],
        )
        .unwrap();
        let (ok, result) = is_extendable(&pf).unwrap();
        assert!(ok);
        assert!(result.extension().unwrap().is_submodular());
    }
}
