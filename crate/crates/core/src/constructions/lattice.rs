use std::collections::{BTreeSet, VecDeque};

use rand::Rng;

use crate::error::{Error, Result};
use crate::functions::TotalFunction;
use crate::hypercube::{check_dim, same_dim, Point};
use crate::scalar::Scalar;

/// A nonempty set of points closed under coordinate-wise min and max.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    members: Vec<Point>,
}

impl Lattice {
    /// Checks closure; use [`lattice_closure`] to generate one.
    pub fn new(dim: usize, members: impl IntoIterator<Item = Point>) -> Result<Self> {
        check_dim(dim)?;
        let set: BTreeSet<Point> = members.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptySeeds);
        }
        for p in &set {
            same_dim(dim, p.dim())?;
        }
        for &u in &set {
            for &v in &set {
                if !set.contains(&u.meet(v)) || !set.contains(&u.join(v)) {
                    return Err(Error::NotALattice(format!(
                        "{u} and {v} have no meet or join in the set"
                    )));
                }
            }
        }
        Ok(Lattice {
            dim,
            members: set.into_iter().collect(),
        })
    }

    pub fn singleton(x: Point) -> Self {
        Lattice {
            dim: x.dim(),
            members: vec![x],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Members in increasing index order.
    pub fn members(&self) -> &[Point] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: Point) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Closure of `count` uniformly random seeds.
    pub fn random(dim: usize, count: usize, rng: &mut impl Rng) -> Result<Self> {
        check_dim(dim)?;
        let seeds: Vec<Point> = (0..count)
            .map(|_| Point::from_index(dim, rng.gen_range(0..1usize << dim)))
            .collect();
        lattice_closure(seeds, dim)
    }

    /// Hamming distance to every point, by breadth-first search from the
    /// members.
    pub fn distances(&self) -> Vec<u32> {
        let size = 1usize << self.dim;
        let mut dist = vec![u32::MAX; size];
        let mut queue = VecDeque::new();
        for p in &self.members {
            dist[p.index()] = 0;
            queue.push_back(p.index());
        }
        while let Some(x) = queue.pop_front() {
            for c in 0..self.dim {
                let y = x ^ 1 << c;
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

/// Smallest lattice containing `seeds`.
pub fn lattice_closure(seeds: impl IntoIterator<Item = Point>, dim: usize) -> Result<Lattice> {
    check_dim(dim)?;
    let mut members = BTreeSet::new();
    let mut work = Vec::new();
    for s in seeds {
        same_dim(dim, s.dim())?;
        if members.insert(s) {
            work.push(s);
        }
    }
    if members.is_empty() {
        return Err(Error::EmptySeeds);
    }
    let mut all: Vec<Point> = members.iter().copied().collect();
    while let Some(u) = work.pop() {
        let mut fresh = Vec::new();
        for &v in &all {
            for w in [u.meet(v), u.join(v)] {
                if members.insert(w) {
                    fresh.push(w);
                }
            }
        }
        all.extend(&fresh);
        work.extend(fresh);
    }
    Ok(Lattice {
        dim,
        members: members.into_iter().collect(),
    })
}

/// d_L(x) = min over y in L of ||x − y||_1.
pub fn lattice_distance_fn<T: Scalar>(lattice: &Lattice) -> TotalFunction<T> {
    let dist = lattice.distances();
    TotalFunction::new(lattice.dim, dist.into_iter().map(|d| T::from_int(d as i64)).collect())
        .expect("distance table has 2^n entries")
}

/// { x : x_{2i-1} = x_{2i} for all i }, a copy of the (n/2)-cube.
pub fn paired_lattice(n: usize) -> Result<Lattice> {
    check_dim(n)?;
    if n % 2 == 1 {
        return Err(Error::InvalidParameter(format!("paired lattice needs even n, got {n}")));
    }
    let members = (0..1u32 << (n / 2)).map(|half| {
        let mut bits = 0;
        for k in 0..n / 2 {
            if half >> k & 1 == 1 {
                bits |= 0b11 << (2 * k);
            }
        }
        Point::from_index(n, bits)
    });
    Ok(Lattice {
        dim: n,
        members: members.collect::<BTreeSet<_>>().into_iter().collect(),
    })
}
