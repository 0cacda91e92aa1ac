//! Total and partial functions on the hypercube, with the local
//! submodularity and monotonicity predicates.

use std::thread;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::hypercube::{all_squares, check_coord, check_dim, same_dim, square_count, Point, Square, Squares};
use crate::scalar::Scalar;

/// Exhaustive scans above this many squares are split across threads.
const PARALLEL_SCAN_THRESHOLD: u64 = 1 << 16;

/// A value for every point of {0,1}^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TotalFunction<T> {
    dim: usize,
    values: Vec<T>,
}

impl<T: Scalar> TotalFunction<T> {
    /// `values[k]` is the value at the point with index `k`.
    pub fn new(dim: usize, values: Vec<T>) -> Result<Self> {
        check_dim(dim)?;
        if values.len() != 1 << dim {
            return Err(Error::InvalidParameter(format!(
                "expected {} values for dimension {dim}, got {}",
                1usize << dim,
                values.len()
            )));
        }
        Ok(TotalFunction { dim, values })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(Point) -> T) -> Result<Self> {
        let values = Point::all(dim)?.map(&mut f).collect();
        Ok(TotalFunction { dim, values })
    }

    pub fn constant(dim: usize, value: T) -> Result<Self> {
        TotalFunction::from_fn(dim, |_| value.clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    /// Panics if `x` has a different dimension.
    pub fn value(&self, x: Point) -> &T {
        assert_eq!(x.dim(), self.dim, "point dimension does not match function");
        &self.values[x.index()]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = Point> + '_ {
        let dim = self.dim;
        (0..self.values.len()).map(move |i| Point::from_index(dim, i))
    }

    /// A copy with `x` mapped to `value`.
    pub fn with_value(&self, x: Point, value: T) -> Result<Self> {
        same_dim(self.dim, x.dim())?;
        let mut values = self.values.clone();
        values[x.index()] = value;
        Ok(TotalFunction { dim: self.dim, values })
    }

    pub fn map(&self, mut f: impl FnMut(Point, &T) -> T) -> Self {
        let values = self.points().zip(&self.values).map(|(p, v)| f(p, v)).collect();
        TotalFunction { dim: self.dim, values }
    }

    /// `f + Σ a_i x_i + b`, with `coeffs[i-1] = a_i`.
    pub fn add_linear(&self, coeffs: &[T], constant: &T) -> Result<Self> {
        same_dim(self.dim, coeffs.len())?;
        Ok(self.map(|p, v| {
            let mut out = v.clone() + constant.clone();
            for c in 1..=self.dim {
                if p.get(c) {
                    out = out + coeffs[c - 1].clone();
                }
            }
            out
        }))
    }

    /// ∂_i f(x) = f(x + e_i) − f(x), defined when `x_i = 0`.
    pub fn marginal(&self, coord: usize, x: Point) -> Result<T> {
        same_dim(self.dim, x.dim())?;
        check_coord(self.dim, coord)?;
        if x.get(coord) {
            return Err(Error::CoordinateSet {
                coord,
                point: x.to_string(),
            });
        }
        Ok(self.value(x.with(coord)).clone() - self.value(x).clone())
    }

    /// f(x) + f(x+e_i+e_j) − f(x+e_i) − f(x+e_j); the square is violated iff
    /// this is strictly positive.
    pub fn deficit(&self, sq: &Square) -> Result<T> {
        same_dim(self.dim, sq.dim())?;
        Ok(self.deficit_unchecked(sq))
    }

    fn deficit_unchecked(&self, sq: &Square) -> T {
        let [x, xi, xj, xij] = sq.corners();
        let v = |p: Point| self.values[p.index()].clone();
        v(x) + v(xij) - v(xi) - v(xj)
    }

    pub fn is_violated(&self, sq: &Square) -> Result<bool> {
        Ok(self.deficit(sq)?.is_positive())
    }

    fn scan(&self, range: Squares, keep: bool) -> (u64, Vec<Square>) {
        let mut count = 0;
        let mut witnesses = Vec::new();
        for sq in range {
            if self.deficit_unchecked(&sq).is_positive() {
                count += 1;
                if keep {
                    witnesses.push(sq);
                }
            }
        }
        (count, witnesses)
    }

    /// Exhaustive count of violated squares. Witnesses are collected only
    /// when asked for, in [`all_squares`] order.
    pub fn violated_census(&self, witnesses: bool) -> Result<Census> {
        let n = self.dim;
        all_squares(n)?;
        let total = square_count(n);
        let workers = thread::available_parallelism().map_or(1, |w| w.get()) as u64;
        let (count, list) = if total < PARALLEL_SCAN_THRESHOLD || workers == 1 {
            self.scan(Squares::range(n, 0, total)?, witnesses)
        } else {
            let chunk = total.div_ceil(workers);
            thread::scope(|s| {
                let handles: Vec<_> = (0..workers)
                    .map(|w| {
                        let range = Squares::range(n, w * chunk, (w + 1) * chunk).expect("dimension already validated");
                        s.spawn(move || self.scan(range, witnesses))
                    })
                    .collect();
                let mut count = 0;
                let mut list = Vec::new();
                for h in handles {
                    let (c, mut l) = h.join().expect("census worker panicked");
                    count += c;
                    list.append(&mut l);
                }
                (count, list)
            })
        };
        Ok(Census {
            count,
            total,
            witnesses: witnesses.then_some(list),
        })
    }

    /// The first violated square in [`all_squares`] order.
    pub fn first_violated(&self) -> Option<Square> {
        let squares = all_squares(self.dim).ok()?;
        squares.into_iter().find(|sq| self.deficit_unchecked(sq).is_positive())
    }

    /// No violated square. For n = 1 there are no squares and every
    /// function is submodular.
    pub fn is_submodular(&self) -> bool {
        if self.dim < 2 {
            return true;
        }
        self.first_violated().is_none()
    }

    /// Every marginal value is `<= 0`.
    pub fn is_monotone_nonincreasing(&self) -> bool {
        self.points().all(|x| {
            x.zeros()
                .all(|c| self.values[x.with(c).index()] <= self.values[x.index()])
        })
    }

    pub fn to_partial(&self) -> PartialFunction<T> {
        PartialFunction {
            dim: self.dim,
            values: self.values.iter().cloned().map(Some).collect(),
            defined: self.values.len(),
        }
    }
}

/// Result of an exhaustive violated-square scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub count: u64,
    /// Number of squares in the cube, C(n,2)·2^(n-2).
    pub total: u64,
    pub witnesses: Option<Vec<Square>>,
}

impl Census {
    /// count / C(n,2)·2^(n-2), exactly.
    pub fn density(&self) -> BigRational {
        BigRational::new(BigInt::from(self.count), BigInt::from(self.total))
    }
}

/// Values on a subset D(f) of the hypercube.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialFunction<T> {
    dim: usize,
    values: Vec<Option<T>>,
    defined: usize,
}

impl<T: Scalar> PartialFunction<T> {
    /// The everywhere-undefined function.
    pub fn empty(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(PartialFunction {
            dim,
            values: vec![None; 1 << dim],
            defined: 0,
        })
    }

    /// Fails on duplicate points or dimension mismatch.
    pub fn from_pairs(dim: usize, pairs: impl IntoIterator<Item = (Point, T)>) -> Result<Self> {
        let mut f = PartialFunction::empty(dim)?;
        for (p, v) in pairs {
            f.define(p, v)?;
        }
        Ok(f)
    }

    /// Adds a value at a previously undefined point.
    pub fn define(&mut self, x: Point, value: T) -> Result<()> {
        same_dim(self.dim, x.dim())?;
        let slot = &mut self.values[x.index()];
        if slot.is_some() {
            return Err(Error::InvalidParameter(format!("point {x} is defined twice")));
        }
        *slot = Some(value);
        self.defined += 1;
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// |D(f)|
    pub fn len(&self) -> usize {
        self.defined
    }

    pub fn is_empty(&self) -> bool {
        self.defined == 0
    }

    pub fn get(&self, x: Point) -> Option<&T> {
        if x.dim() != self.dim {
            return None;
        }
        self.values[x.index()].as_ref()
    }

    pub fn is_defined(&self, x: Point) -> bool {
        self.get(x).is_some()
    }

    /// D(f) in index order.
    pub fn domain(&self) -> Vec<Point> {
        self.iter().map(|(p, _)| p).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Point, &T)> + '_ {
        let dim = self.dim;
        self.values
            .iter()
            .enumerate()
            .filter_map(move |(i, v)| v.as_ref().map(|v| (Point::from_index(dim, i), v)))
    }

    /// f|_A; requires A ⊆ D(f).
    pub fn restrict(&self, keep: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut out = PartialFunction::empty(self.dim)?;
        for p in keep {
            let v = self.get(p).ok_or_else(|| Error::Undefined(p.to_string()))?;
            if !out.is_defined(p) {
                out.define(p, v.clone())?;
            }
        }
        Ok(out)
    }

    /// f restricted to D(f) minus `x`.
    pub fn without(&self, x: Point) -> Result<Self> {
        if !self.is_defined(x) {
            return Err(Error::Undefined(x.to_string()));
        }
        let mut out = self.clone();
        out.values[x.index()] = None;
        out.defined -= 1;
        Ok(out)
    }

    /// Some when every point is defined.
    pub fn to_total(&self) -> Option<TotalFunction<T>> {
        let values: Option<Vec<T>> = self.values.iter().cloned().collect();
        values.map(|values| TotalFunction { dim: self.dim, values })
    }

    pub(crate) fn slots(&self) -> &[Option<T>] {
        &self.values
    }
}
