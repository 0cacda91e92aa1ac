//! The one-sided violated-square tester.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so a report can
//! be replayed from its seed and mode.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::functions::TotalFunction;
use crate::hypercube::{check_dim, square_at, square_count, Point, Square};
use crate::scalar::Scalar;

/// Value access to a function on {0,1}^n.
pub trait ValueOracle<T> {
    fn dim(&self) -> usize;
    fn value(&self, x: Point) -> T;
}

impl<T: Scalar> ValueOracle<T> for TotalFunction<T> {
    fn dim(&self) -> usize {
        TotalFunction::dim(self)
    }

    fn value(&self, x: Point) -> T {
        TotalFunction::value(self, x).clone()
    }
}

impl<T, O: ValueOracle<T> + ?Sized> ValueOracle<T> for &O {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn value(&self, x: Point) -> T {
        (**self).value(x)
    }
}

/// An oracle backed by a closure.
pub struct FnOracle<F> {
    dim: usize,
    f: F,
}

impl<F> FnOracle<F> {
    pub fn new(dim: usize, f: F) -> Result<Self> {
        check_dim(dim)?;
        Ok(FnOracle { dim, f })
    }
}

impl<T, F: Fn(Point) -> T> ValueOracle<T> for FnOracle<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: Point) -> T {
        (self.f)(x)
    }
}

struct Counting<'a, O> {
    inner: &'a O,
    queries: Cell<u64>,
}

impl<O> Counting<'_, O> {
    fn query<T>(&self, x: Point) -> T
    where
        O: ValueOracle<T>,
    {
        self.queries.set(self.queries.get() + 1);
        self.inner.value(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SamplingMode {
    /// Exactly uniform over all C(n,2)·2^(n-2) squares.
    UniformSquare,
    /// Uniform `x`, resampled until it has two zero coordinates, then a
    /// uniform pair of its zero coordinates. Squares whose bottom has many
    /// zeros are drawn less often.
    PointFirst,
}

impl SamplingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SamplingMode::UniformSquare => "uniform-square",
            SamplingMode::PointFirst => "point-first",
        }
    }
}

impl fmt::Display for SamplingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SamplingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform-square" => Ok(SamplingMode::UniformSquare),
            "point-first" => Ok(SamplingMode::PointFirst),
            _ => Err(Error::InvalidParameter(format!(
                "unknown sampling mode {s:?} (expected uniform-square or point-first)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TesterReport {
    pub verdict: Verdict,
    pub queries_used: u64,
    /// Squares actually tested; at most `q`.
    pub samples_drawn: u64,
    /// Points rejected by [`SamplingMode::PointFirst`] for having fewer
    /// than two zero coordinates.
    pub rejections: u64,
    /// The violated square behind a NO.
    pub witness: Option<Square>,
    pub seed: u64,
    pub mode: SamplingMode,
}

fn sample_square(n: usize, mode: SamplingMode, rng: &mut ChaCha8Rng, rejections: &mut u64) -> Square {
    match mode {
        SamplingMode::UniformSquare => square_at(n, rng.gen_range(0..square_count(n))),
        SamplingMode::PointFirst => loop {
            let x = Point::from_index(n, rng.gen_range(0..1usize << n));
            let zeros: Vec<usize> = x.zeros().collect();
            if zeros.len() < 2 {
                *rejections += 1;
                continue;
            }
            let a = rng.gen_range(0..zeros.len());
            let mut b = rng.gen_range(0..zeros.len() - 1);
            if b >= a {
                b += 1;
            }
            return Square::new(x, zeros[a], zeros[b]).expect("both coordinates are zero");
        },
    }
}

/// Tests up to `q` random squares and answers NO at the first violated one.
pub fn run_tester<T: Scalar, O: ValueOracle<T>>(
    oracle: &O,
    q: u64,
    seed: u64,
    mode: SamplingMode,
) -> Result<TesterReport> {
    let n = oracle.dim();
    check_dim(n)?;
    if n < 2 {
        return Err(Error::InvalidDimension {
            dim: n,
            reason: "the tester needs at least 2 coordinates",
        });
    }
    if q < 1 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counting = Counting {
        inner: oracle,
        queries: Cell::new(0),
    };
    let mut rejections = 0;
    let mut witness = None;
    let mut samples = 0;
    while samples < q {
        let sq = sample_square(n, mode, &mut rng, &mut rejections);
        samples += 1;
        let [x, xi, xj, xij] = sq.corners();
        let lhs: T = counting.query::<T>(x) + counting.query::<T>(xij);
        let rhs: T = counting.query::<T>(xi) + counting.query::<T>(xj);
        if lhs > rhs {
            witness = Some(sq);
            break;
        }
    }
    Ok(TesterReport {
        verdict: if witness.is_some() { Verdict::No } else { Verdict::Yes },
        queries_used: counting.queries.get(),
        samples_drawn: samples,
        rejections,
        witness,
        seed,
        mode,
    })
}
