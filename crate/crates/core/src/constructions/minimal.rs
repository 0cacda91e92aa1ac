//! The minimally non-extendable partial function on n = 2m + 4 coordinates.
//!
//! Points are laid out as `(b1, b2, b3, b4, S, T)`: four control bits at
//! coordinates 1..4, an m-bit block `S` at 5..m+4 and an m-bit block `T` at
//! m+5..2m+4. A closed walk of 3-step chunks is driven by a reflected Gray
//! code circuit `H` of the m-cube, keeping `T` equal to the complement of
//! `S` at every 4-chunk boundary. Each pair of circuit steps `R → S' → T'`
//! contributes four chunks:
//!
//! ```text
//! up    1, 2, advance R → S'        (upward in whichever block grows)
//! down  2, 3, advance other block   (downward)
//! up    3, 4, advance S' → T'
//! down  4, 1, advance other block
//! ```
//!
//! When a circuit step removes an element the upward move happens in the
//! complement block instead, so every odd chunk stays upward.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::extendability::{EdgeRef, PathCertificate};
use crate::functions::PartialFunction;
use crate::hypercube::{edge_precedes, Direction, Edge, Point};
use crate::scalar::Scalar;

/// The closed walk, as consecutive 3-edge chunks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChunkCycle {
    pub m: usize,
    pub n: usize,
    pub chunks: Vec<[Edge; 3]>,
}

impl ChunkCycle {
    /// Number of chunks M.
    pub fn len(&self) -> usize {
        self.chunks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chunks.is_empty()
    }

    /// Every point of the cycle once, starting at the base point.
    pub fn points(&self) -> Vec<Point> {
        self.chunks.iter().flatten().map(|e| e.from()).collect()
    }

    /// The path P_i: the first two edges of chunk `i` (0-based), as points.
    pub fn path(&self, i: usize) -> [Point; 3] {
        let [a, b, _] = self.chunks[i];
        [a.from(), a.to(), b.to()]
    }

    /// Checks simplicity, chunk directions, the parallel-edge linking
    /// between consecutive chunks and the level range.
    pub fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Construction(msg));
        let count = self.chunks.len();
        if !count.is_multiple_of(2) || count < 1 << self.m {
            return fail(format!("{count} chunks for m = {}", self.m));
        }
        let edges: Vec<Edge> = self.chunks.iter().flatten().copied().collect();
        for (k, e) in edges.iter().enumerate() {
            let next = edges[(k + 1) % edges.len()];
            if e.to() != next.from() {
                return fail(format!("edge {k} does not continue into edge {}", k + 1));
            }
        }
        let points = self.points();
        let distinct: HashSet<_> = points.iter().collect();
        if distinct.len() != points.len() {
            return fail("cycle revisits a point".into());
        }
        for (i, chunk) in self.chunks.iter().enumerate() {
            let want = if i % 2 == 0 { Direction::Up } else { Direction::Down };
            if chunk.iter().any(|e| e.direction != want) {
                return fail(format!("chunk {} is not all {want:?}", i + 1));
            }
            let second = chunk[1];
            let first = self.chunks[(i + 1) % count][0];
            let linked = if i % 2 == 0 {
                edge_precedes(&second, &first)?
            } else {
                edge_precedes(&first, &second)?
            };
            if !linked {
                return fail(format!(
                    "chunk {} is not linked to chunk {}",
                    i + 1,
                    (i + 1) % count + 1
                ));
            }
        }
        let (lo, hi) = (self.m + 1, self.m + 4);
        if let Some(p) = points.iter().find(|p| p.level() < lo || p.level() > hi) {
            return fail(format!("point {p} has level {} outside {lo}..={hi}", p.level()));
        }
        Ok(())
    }
}

/// The construction's three outputs plus the base value used.
#[derive(Clone, Debug)]
pub struct MinimalNonextendable<T> {
    pub cycle: ChunkCycle,
    pub function: PartialFunction<T>,
    pub certificate: PathCertificate,
    pub base_value: T,
}

fn gray(k: usize) -> u32 {
    (k ^ (k >> 1)) as u32
}

struct Walker {
    n: usize,
    m: usize,
    at: Point,
    edges: Vec<Edge>,
}

impl Walker {
    fn step(&mut self, coord: usize) -> Result<()> {
        let next = self.at.flip(coord);
        self.edges.push(Edge::between(self.at, next)?);
        self.at = next;
        Ok(())
    }

    fn block_coord(&self, block: usize, bit: u32) -> usize {
        debug_assert!(self.n == 2 * self.m + 4);
        4 + block * self.m + bit as usize + 1
    }

    /// Moves along the circuit step `from → to`: in block S if that adds an
    /// element, otherwise in the complement block T. Returns the block
    /// that must later make the matching downward move.
    fn advance_up(&mut self, from: u32, to: u32) -> Result<usize> {
        let bit = (from ^ to).trailing_zeros();
        let (up, down) = if to & !from != 0 { (0, 1) } else { (1, 0) };
        self.step(self.block_coord(up, bit))?;
        Ok(down)
    }

    fn advance_down(&mut self, block: usize, from: u32, to: u32) -> Result<()> {
        let bit = (from ^ to).trailing_zeros();
        self.step(self.block_coord(block, bit))
    }
}

/// Builds the cycle, the partial function with base value `v`, and its
/// path certificate, for m >= 2.
pub fn build_minimal_nonextendable<T: Scalar>(m: usize, v: T) -> Result<MinimalNonextendable<T>> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m must be at least 2, got {m}")));
    }
    let n = 2 * m + 4;
    if n > crate::hypercube::MAX_DIM {
        return Err(Error::InvalidParameter(format!("m = {m} gives dimension {n} > 24")));
    }
    let circuit = 1usize << m;
    let full = (1u32 << m) - 1;
    let start = 0b0100 | (full << (4 + m));
    let mut w = Walker {
        n,
        m,
        at: Point::new(n, start)?,
        edges: Vec::new(),
    };
    for pair in 0..circuit / 2 {
        let r = gray(2 * pair);
        let s = gray(2 * pair + 1);
        let t = gray((2 * pair + 2) % circuit);
        w.step(1)?;
        w.step(2)?;
        let other = w.advance_up(r, s)?;
        w.step(2)?;
        w.step(3)?;
        w.advance_down(other, r, s)?;
        w.step(3)?;
        w.step(4)?;
        let other = w.advance_up(s, t)?;
        w.step(4)?;
        w.step(1)?;
        w.advance_down(other, s, t)?;
    }
    let chunks: Vec<[Edge; 3]> = w.edges.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
    let cycle = ChunkCycle { m, n, chunks };
    cycle.check()?;

    let one = T::one();
    let two = one.clone() + one.clone();
    let mut function = PartialFunction::empty(n)?;
    let mut paths = Vec::with_capacity(cycle.len());
    for i in 0..cycle.len() {
        let path = cycle.path(i);
        let (start, end) = (path[0], path[2]);
        // chunk 1 gets the odd +1 so the total comes out at -1
        let (start_val, end_val) = match i {
            0 => (v.clone(), v.clone() + one.clone()),
            _ if i % 2 == 0 => (v.clone(), v.clone() + two.clone()),
            _ => (v.clone() + two.clone(), v.clone()),
        };
        function
            .define(start, start_val)
            .and_then(|_| function.define(end, end_val))
            .map_err(|_| Error::Construction(format!("path {} reuses an endpoint", i + 1)))?;
        paths.push(path.to_vec());
    }
    check_sparse_domain(&function)?;

    let count = cycle.len();
    let matching = (0..count)
        .map(|i| {
            let here = EdgeRef { path: i, edge: 1 };
            let next = EdgeRef {
                path: (i + 1) % count,
                edge: 0,
            };
            if i % 2 == 0 {
                (here, next)
            } else {
                (next, here)
            }
        })
        .collect();
    let certificate = PathCertificate {
        dim: n,
        paths,
        matching: Some(matching),
    };
    Ok(MinimalNonextendable {
        cycle,
        function,
        certificate,
        base_value: v,
    })
}

/// Every defined point has at most one defined neighbour. Three corners of
/// a square always include one adjacent to the other two, so this also
/// bounds every square to at most two defined points.
fn check_sparse_domain<T: Scalar>(f: &PartialFunction<T>) -> Result<()> {
    for (p, _) in f.iter() {
        let neighbours = (1..=f.dim()).filter(|&c| f.is_defined(p.flip(c))).count();
        if neighbours > 1 {
            return Err(Error::Construction(format!("{p} has {neighbours} defined neighbours")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::all_squares;
    use crate::Rational;

    #[test]
    fn sizes() {
        for m in 2..=5 {
            let inst = build_minimal_nonextendable(m, Rational::from_int(0)).unwrap();
            assert_eq!(inst.cycle.n, 2 * m + 4);
            assert_eq!(inst.cycle.len(), 1 << (m + 1));
            assert_eq!(inst.function.len(), 2 * inst.cycle.len());
            assert!(inst.function.len() >= 2 << m);
        }
        let inst = build_minimal_nonextendable(2, Rational::from_int(0)).unwrap();
        assert_eq!(inst.cycle.len(), 8);
        assert_eq!(inst.function.len(), 16);
    }

    #[test]
    fn rejects_small_m() {
        assert!(build_minimal_nonextendable(1, Rational::from_int(0)).is_err());
        assert!(build_minimal_nonextendable(0, Rational::from_int(0)).is_err());
        assert!(build_minimal_nonextendable(11, Rational::from_int(0)).is_err());
    }

    #[test]
    fn starts_at_base_point() {
        let inst = build_minimal_nonextendable(3, Rational::from_int(0)).unwrap();
        assert_eq!(inst.cycle.points()[0].to_string(), "0010000111");
    }

    #[test]
    fn squares_hold_at_most_two_defined_points() {
        for m in 2..=3 {
            let inst = build_minimal_nonextendable(m, Rational::from_int(0)).unwrap();
            for sq in all_squares(inst.cycle.n).unwrap() {
                let defined = sq.corners().iter().filter(|&&c| inst.function.is_defined(c)).count();
                assert!(defined <= 2);
            }
        }
    }

    #[test]
    fn check_catches_broken_cycles() {
        let inst = build_minimal_nonextendable(2, Rational::from_int(0)).unwrap();
        let mut broken = inst.cycle.clone();
        broken.chunks.swap(0, 2);
        assert!(broken.check().is_err());
        let mut odd = inst.cycle.clone();
        odd.chunks.pop();
        assert!(odd.check().is_err());
    }

    #[test]
    fn certificate_value_is_minus_one() {
        for v in [0, 7, -3] {
            let inst = build_minimal_nonextendable(2, Rational::from_int(v)).unwrap();
            let total: Rational = inst
                .certificate
                .paths
                .iter()
                .map(|p| {
                    inst.function.get(*p.last().unwrap()).unwrap().clone() - inst.function.get(p[0]).unwrap().clone()
                })
                .sum();
            assert_eq!(total, Rational::from_int(-1));
        }
    }
}
