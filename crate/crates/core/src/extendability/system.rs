use crate::error::Result;
use crate::functions::{PartialFunction, TotalFunction};
use crate::hypercube::{all_squares, Point, Square};
use crate::scalar::Scalar;

/// `Σ coeff·v(var) >= rhs` for one square, after substituting the defined
/// corners. The unsubstituted form is
/// `v(x+e_i) + v(x+e_j) − v(x) − v(x+e_i+e_j) >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint<T> {
    pub square: Square,
    /// `(variable index, ±1)`
    pub terms: Vec<(usize, i8)>,
    pub rhs: T,
}

impl<T: Scalar> Constraint<T> {
    /// All four corners defined.
    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    /// Left-hand side minus right-hand side at `values`.
    pub fn slack(&self, values: &[T]) -> T {
        let mut lhs = T::zero();
        for &(var, c) in &self.terms {
            if c > 0 {
                lhs = lhs + values[var].clone();
            } else {
                lhs = lhs - values[var].clone();
            }
        }
        lhs - self.rhs.clone()
    }
}

/// The square-inequality system whose solutions are exactly the submodular
/// extensions of a partial function. Variables are the undefined points.
#[derive(Clone, Debug)]
pub struct ConstraintSystem<T> {
    partial: PartialFunction<T>,
    variables: Vec<Point>,
    var_of: Vec<Option<usize>>,
    constraints: Vec<Constraint<T>>,
}

impl<T: Scalar> ConstraintSystem<T> {
    pub fn dim(&self) -> usize {
        self.partial.dim()
    }

    pub fn partial(&self) -> &PartialFunction<T> {
        &self.partial
    }

    /// Undefined points, in index order.
    pub fn variables(&self) -> &[Point] {
        &self.variables
    }

    pub fn variable_of(&self, x: Point) -> Option<usize> {
        self.var_of.get(x.index()).copied().flatten()
    }

    /// One per square, in canonical square order.
    pub fn constraints(&self) -> &[Constraint<T>] {
        &self.constraints
    }

    /// Constant constraints that fail outright.
    pub fn violated_constants(&self) -> impl Iterator<Item = (usize, &Constraint<T>)> + '_ {
        self.constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_constant() && c.rhs.is_positive())
    }

    /// Fill the undefined points with `values` (one per variable).
    pub fn complete(&self, values: &[T]) -> TotalFunction<T> {
        let dim = self.dim();
        let slots = self.partial.slots();
        TotalFunction::new(
            dim,
            (0..1usize << dim)
                .map(|i| match &slots[i] {
                    Some(v) => v.clone(),
                    None => values[self.var_of[i].expect("undefined point has a variable")].clone(),
                })
                .collect(),
        )
        .expect("table has 2^n entries")
    }
}

/// Builds the extension system of `pf`. Below dimension 2 there are no
/// squares and the system has no constraints.
pub fn extension_system<T: Scalar>(pf: &PartialFunction<T>) -> Result<ConstraintSystem<T>> {
    let dim = pf.dim();
    let squares = if dim >= 2 { Some(all_squares(dim)?) } else { None };
    let slots = pf.slots();
    let mut variables = Vec::new();
    let mut var_of = vec![None; slots.len()];
    for (i, slot) in slots.iter().enumerate() {
        if slot.is_none() {
            var_of[i] = Some(variables.len());
            variables.push(Point::from_index(dim, i));
        }
    }
    let constraints = squares
        .into_iter()
        .flatten()
        .map(|sq| {
            let [x, xi, xj, xij] = sq.corners();
            let mut terms = Vec::new();
            let mut rhs = T::zero();
            for (p, c) in [(xi, 1i8), (xj, 1), (x, -1), (xij, -1)] {
                match &slots[p.index()] {
                    Some(v) if c > 0 => rhs = rhs - v.clone(),
                    Some(v) => rhs = rhs + v.clone(),
                    None => terms.push((var_of[p.index()].unwrap(), c)),
                }
            }
            Constraint { square: sq, terms, rhs }
        })
        .collect();
    Ok(ConstraintSystem {
        partial: pf.clone(),
        variables,
        var_of,
        constraints,
    })
}
