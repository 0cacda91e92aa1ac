//! Presolve: look for an extension of the form
//! `c + Σ u_i x_i + Σ_{i<j} w_ij x_i x_j` with every `w_ij <= 0`.
//! Such a function has deficit `w_ij` on every square over `(i, j)`, so it
//! is submodular. Sparse data often extends inside this family, and the
//! fit is a small exact LP in `1 + n + n(n-1)/2` unknowns.

use super::simplex::{solve_rows, LinearRow, Outcome};
use super::system::ConstraintSystem;
use crate::hypercube::Point;
use crate::scalar::Field;

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // pairs (i, j), i < j, 0-based, in lexicographic order
    1 + n + i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn monomials(n: usize, p: Point) -> Vec<usize> {
    let ones: Vec<usize> = (0..n).filter(|&i| p.get(i + 1)).collect();
    let mut out = vec![0];
    out.extend(ones.iter().map(|i| 1 + i));
    for (a, &i) in ones.iter().enumerate() {
        for &j in &ones[a + 1..] {
            out.push(pair_index(n, i, j));
        }
    }
    out
}

/// Values for the system variables if a quadratic extension exists.
pub(crate) fn quadratic_witness<T: Field>(sys: &ConstraintSystem<T>) -> Option<Vec<T>> {
    let n = sys.dim();
    let unknowns = 1 + n + n * n.saturating_sub(1) / 2;
    let mut rows = Vec::new();
    for (p, value) in sys.partial().iter() {
        let terms: Vec<(usize, T)> = monomials(n, p).into_iter().map(|m| (m, T::one())).collect();
        rows.push(LinearRow {
            terms: terms.iter().map(|(m, _)| (*m, -T::one())).collect(),
            rhs: -value.clone(),
        });
        rows.push(LinearRow {
            terms,
            rhs: value.clone(),
        });
    }
    for w in 1 + n..unknowns {
        rows.push(LinearRow {
            terms: vec![(w, -T::one())],
            rhs: T::zero(),
        });
    }
    let initial = vec![true; rows.len()];
    let Outcome::Witness(coeffs) = solve_rows(unknowns, &rows, &initial) else {
        return None;
    };
    Some(
        sys.variables()
            .iter()
            .map(|&p| {
                monomials(n, p)
                    .into_iter()
                    .fold(T::zero(), |acc, m| acc + coeffs[m].clone())
            })
            .collect(),
    )
}
