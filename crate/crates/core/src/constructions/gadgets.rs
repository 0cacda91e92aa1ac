use rand::Rng;

use crate::error::Result;
use crate::functions::TotalFunction;
use crate::hypercube::{check_dim, Point};
use crate::scalar::Scalar;
use crate::tester::ValueOracle;

use super::lattice::Lattice;

/// The (n+2)-dimensional function with one violated square per lattice
/// member.
///
/// Coordinates 1 and 2 are the special bits `(a, b)`; the lattice
/// coordinates follow as 3..n+2. Values:
/// `f(0,0,x) = ||x||_1`, `f(1,1,x) = 1 − ||x||_1`,
/// `f(0,1,x) = f(1,0,x) = d_L(x)`.
pub fn gadget<T: Scalar>(lattice: &Lattice) -> Result<TotalFunction<T>> {
    let n = lattice.dim();
    check_dim(n + 2)?;
    let dist = lattice.distances();
    TotalFunction::from_fn(n + 2, |p| {
        let bits = p.index();
        let x = bits >> 2;
        let level = x.count_ones() as i64;
        let value = match bits & 0b11 {
            0b00 => level,
            0b11 => 1 - level,
            _ => dist[x] as i64,
        };
        T::from_int(value)
    })
}

/// `g(x, z) = f(x)` for `z` in {0,1}^k; the new coordinates are n+1..n+k.
pub fn add_dummy_dims<T: Scalar>(f: &TotalFunction<T>, extra: usize) -> Result<TotalFunction<T>> {
    let n = f.dim();
    check_dim(n + extra)?;
    let low = (1usize << n) - 1;
    TotalFunction::from_fn(n + extra, |p| f.values()[p.index() & low].clone())
}

/// Oracle form of [`add_dummy_dims`] that never materializes the padded
/// table.
#[derive(Clone, Debug)]
pub struct DummyDims<O> {
    inner: O,
    extra: usize,
}

impl<O> DummyDims<O> {
    pub fn new<T>(inner: O, extra: usize) -> Result<Self>
    where
        O: ValueOracle<T>,
    {
        check_dim(inner.dim() + extra)?;
        Ok(DummyDims { inner, extra })
    }
}

impl<T, O: ValueOracle<T>> ValueOracle<T> for DummyDims<O> {
    fn dim(&self) -> usize {
        self.inner.dim() + self.extra
    }

    fn value(&self, x: Point) -> T {
        let n = self.inner.dim();
        self.inner.value(Point::from_index(n, x.index() & ((1 << n) - 1)))
    }
}

/// Monotonicity-to-submodularity reduction on n+1 coordinates.
///
/// The new coordinate is placed first: `g(0,x) = h(x)` and
/// `g(1,x) = f(x) + h(x)` with `h(x) = f(0)·||x||_1·(n − ||x||_1)`. If `f`
/// is non-increasing and `f >= -f(0)` everywhere (for instance `f >= 0`),
/// then `g` is submodular. Without the lower bound the slack `2·f(0)` that
/// `h` adds to every square can be too small.
pub fn reduce_monotone<T: Scalar>(f: &TotalFunction<T>) -> Result<TotalFunction<T>> {
    let n = f.dim();
    check_dim(n + 1)?;
    let origin = f.values()[0].clone();
    TotalFunction::from_fn(n + 1, |p| {
        let x = p.index() >> 1;
        let k = x.count_ones() as i64;
        let h = origin.clone() * T::from_int(k * (n as i64 - k));
        if p.index() & 1 == 1 {
            f.values()[x].clone() + h
        } else {
            h
        }
    })
}

/// `f(x) = max over y >= x of r(y)` for random integers `r(y)` in
/// `[lo, hi]`, which is non-increasing by construction.
pub fn random_nonincreasing<T: Scalar>(n: usize, lo: i64, hi: i64, rng: &mut impl Rng) -> Result<TotalFunction<T>> {
    check_dim(n)?;
    let size = 1usize << n;
    let mut vals: Vec<i64> = (0..size).map(|_| rng.gen_range(lo..=hi)).collect();
    for x in (0..size).rev() {
        for c in 0..n {
            let y = x | 1 << c;
            if y != x && vals[y] > vals[x] {
                vals[x] = vals[y];
            }
        }
    }
    TotalFunction::new(n, vals.into_iter().map(T::from_int).collect())
}
