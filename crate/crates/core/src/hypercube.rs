//! Points, edges and squares of the boolean hypercube {0,1}^n.
//!
//! Coordinates are 1-based. Coordinate `i` lives in machine bit `i - 1`, and
//! the textual bitstring form writes coordinate 1 leftmost, so `"10"` is the
//! point with `x_1 = 1, x_2 = 0`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported dimension (dense tables of 2^24 values).
pub const MAX_DIM: usize = 24;

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        Err(Error::InvalidDimension {
            dim,
            reason: "dimension must be at least 1",
        })
    } else if dim > MAX_DIM {
        Err(Error::InvalidDimension {
            dim,
            reason: "dimension exceeds 24",
        })
    } else {
        Ok(())
    }
}

pub(crate) fn same_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

/// A vertex of {0,1}^n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    // ordering is by dimension, then by bit pattern
    dim: u8,
    bits: u32,
}

impl Point {
    pub fn new(dim: usize, bits: u32) -> Result<Self> {
        check_dim(dim)?;
        if dim < 32 && bits >> dim != 0 {
            return Err(Error::InvalidParameter(format!(
                "bits {bits:#b} exceed dimension {dim}"
            )));
        }
        Ok(Point { dim: dim as u8, bits })
    }

    /// Caller guarantees `dim` is valid and `bits < 2^dim`.
    pub(crate) fn from_index(dim: usize, index: usize) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&dim) && index < 1usize << dim);
        Point {
            dim: dim as u8,
            bits: index as u32,
        }
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Point::new(dim, 0)
    }

    pub fn ones(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Point {
            dim: dim as u8,
            bits: ((1u64 << dim) - 1) as u32,
        })
    }

    /// The canonical basis vector e_i.
    pub fn basis(dim: usize, coord: usize) -> Result<Self> {
        check_dim(dim)?;
        check_coord(dim, coord)?;
        Ok(Point {
            dim: dim as u8,
            bits: 1 << (coord - 1),
        })
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Index into a dense table of 2^n values.
    pub fn index(self) -> usize {
        self.bits as usize
    }

    /// ||x||_1
    pub fn level(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn get(self, coord: usize) -> bool {
        debug_assert!(coord >= 1 && coord <= self.dim());
        self.bits >> (coord - 1) & 1 == 1
    }

    pub fn with(self, coord: usize) -> Point {
        debug_assert!(coord >= 1 && coord <= self.dim());
        Point {
            bits: self.bits | 1 << (coord - 1),
            ..self
        }
    }

    pub fn without(self, coord: usize) -> Point {
        debug_assert!(coord >= 1 && coord <= self.dim());
        Point {
            bits: self.bits & !(1 << (coord - 1)),
            ..self
        }
    }

    pub fn flip(self, coord: usize) -> Point {
        debug_assert!(coord >= 1 && coord <= self.dim());
        Point {
            bits: self.bits ^ 1 << (coord - 1),
            ..self
        }
    }

    pub fn meet(self, other: Point) -> Point {
        debug_assert_eq!(self.dim, other.dim);
        Point {
            bits: self.bits & other.bits,
            ..self
        }
    }

    pub fn join(self, other: Point) -> Point {
        debug_assert_eq!(self.dim, other.dim);
        Point {
            bits: self.bits | other.bits,
            ..self
        }
    }

    pub fn complement(self) -> Point {
        Point {
            bits: !self.bits & mask(self.dim()),
            ..self
        }
    }

    pub fn hamming(self, other: Point) -> usize {
        (self.bits ^ other.bits).count_ones() as usize
    }

    /// Coordinate-wise `self <= other`, without the dimension check.
    pub fn le(self, other: Point) -> bool {
        self.bits & !other.bits == 0
    }

    /// Coordinates (1-based) where the point is zero.
    pub fn zeros(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (1..=self.dim()).filter(move |&c| bits >> (c - 1) & 1 == 0)
    }

    /// All 2^n points of dimension `dim` in index order.
    pub fn all(dim: usize) -> Result<impl ExactSizeIterator<Item = Point>> {
        check_dim(dim)?;
        Ok((0..1usize << dim).map(move |i| Point::from_index(dim, i)))
    }

    /// Parses a bitstring, coordinate 1 first.
    pub fn parse(text: &str) -> Result<Point> {
        let dim = text.len();
        check_dim(dim).map_err(|_| Error::InvalidParameter(format!("bitstring {text:?} has unsupported length")))?;
        let mut bits = 0u32;
        for (k, b) in text.bytes().enumerate() {
            match b {
                b'0' => {}
                b'1' => bits |= 1 << k,
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "bitstring {text:?} contains {:?}",
                        b as char
                    )))
                }
            }
        }
        Ok(Point { dim: dim as u8, bits })
    }
}

pub(crate) fn mask(dim: usize) -> u32 {
    ((1u64 << dim) - 1) as u32
}

pub(crate) fn check_coord(dim: usize, coord: usize) -> Result<()> {
    if coord == 0 || coord > dim {
        Err(Error::CoordinateOutOfRange { coord, dim })
    } else {
        Ok(())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 1..=self.dim() {
            f.write_str(if self.get(c) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point({self})")
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Point::parse(s)
    }
}

/// Coordinate-wise `x <= y`.
pub fn dominates(x: Point, y: Point) -> Result<bool> {
    same_dim(x.dim(), y.dim())?;
    Ok(x.le(y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Up,
    Down,
}

/// The hypercube edge {lower, lower + e_coord}, with a traversal direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub lower: Point,
    pub coord: usize,
    pub direction: Direction,
}

impl Edge {
    pub fn new(lower: Point, coord: usize, direction: Direction) -> Result<Self> {
        check_coord(lower.dim(), coord)?;
        if lower.get(coord) {
            return Err(Error::CoordinateSet {
                coord,
                point: lower.to_string(),
            });
        }
        Ok(Edge {
            lower,
            coord,
            direction,
        })
    }

    /// The directed edge traversed when walking from `from` to `to`.
    pub fn between(from: Point, to: Point) -> Result<Self> {
        same_dim(from.dim(), to.dim())?;
        let diff = from.bits() ^ to.bits();
        if diff.count_ones() != 1 {
            return Err(Error::MalformedWalk(format!("{from} and {to} are not adjacent")));
        }
        let coord = diff.trailing_zeros() as usize + 1;
        if to.get(coord) {
            Ok(Edge {
                lower: from,
                coord,
                direction: Direction::Up,
            })
        } else {
            Ok(Edge {
                lower: to,
                coord,
                direction: Direction::Down,
            })
        }
    }

    pub fn upper(&self) -> Point {
        self.lower.with(self.coord)
    }

    pub fn from(&self) -> Point {
        match self.direction {
            Direction::Up => self.lower,
            Direction::Down => self.upper(),
        }
    }

    pub fn to(&self) -> Point {
        match self.direction {
            Direction::Up => self.upper(),
            Direction::Down => self.lower,
        }
    }
}

/// `e ⪯ e'`: both edges flip the same coordinate and `lower(e) <= lower(e')`.
/// Direction is ignored.
pub fn edge_precedes(e: &Edge, other: &Edge) -> Result<bool> {
    same_dim(e.lower.dim(), other.lower.dim())?;
    Ok(e.coord == other.coord && e.lower.le(other.lower))
}

/// The square {x, x+e_i, x+e_j, x+e_i+e_j}, stored canonically with `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    bottom: Point,
    i: usize,
    j: usize,
}

impl Square {
    /// Accepts the coordinates in either order.
    pub fn new(bottom: Point, i: usize, j: usize) -> Result<Self> {
        let dim = bottom.dim();
        check_coord(dim, i)?;
        check_coord(dim, j)?;
        if i == j {
            return Err(Error::InvalidSquare(format!("coordinates must differ, got {i} twice")));
        }
        if bottom.get(i) || bottom.get(j) {
            return Err(Error::InvalidSquare(format!(
                "bottom {bottom} must have coordinates {i} and {j} clear"
            )));
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        Ok(Square { bottom, i, j })
    }

    pub fn bottom(&self) -> Point {
        self.bottom
    }

    pub fn coords(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn dim(&self) -> usize {
        self.bottom.dim()
    }

    pub fn top(&self) -> Point {
        self.bottom.with(self.i).with(self.j)
    }

    /// `[x, x+e_i, x+e_j, x+e_i+e_j]`
    pub fn corners(&self) -> [Point; 4] {
        let x = self.bottom;
        [x, x.with(self.i), x.with(self.j), x.with(self.i).with(self.j)]
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.bottom, self.i, self.j)
    }
}

impl fmt::Debug for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Square({self})")
    }
}

/// C(n,2)·2^(n-2).
pub fn square_count(n: usize) -> u64 {
    if n < 2 {
        return 0;
    }
    let pairs = (n * (n - 1) / 2) as u64;
    pairs << (n - 2)
}

fn insert_zero(bits: u32, pos: u32) -> u32 {
    let low = bits & ((1 << pos) - 1);
    let high = (bits >> pos) << (pos + 1);
    low | high
}

/// Every square of {0,1}^n exactly once.
///
/// Order: coordinate pairs `(i, j)` lexicographically, then bottoms by
/// increasing index. The sequence has `square_count(n)` items and
/// [`square_at`] gives random access into it, so scans can be split into
/// index ranges.
pub fn all_squares(n: usize) -> Result<Squares> {
    check_dim(n)?;
    if n < 2 {
        return Err(Error::InvalidDimension {
            dim: n,
            reason: "squares need at least 2 coordinates",
        });
    }
    Ok(Squares {
        n,
        next: 0,
        end: square_count(n),
    })
}

/// The square at position `index` of [`all_squares`].
pub fn square_at(n: usize, index: u64) -> Square {
    let per_pair = 1u64 << (n - 2);
    let mut pair = index / per_pair;
    let offset = (index % per_pair) as u32;
    let mut i = 1;
    while pair >= (n - i) as u64 {
        pair -= (n - i) as u64;
        i += 1;
    }
    let j = i + 1 + pair as usize;
    let bits = insert_zero(insert_zero(offset, (i - 1) as u32), (j - 1) as u32);
    Square {
        bottom: Point::from_index(n, bits as usize),
        i,
        j,
    }
}

fn remove_bit(bits: u32, pos: u32) -> u32 {
    let low = bits & ((1 << pos) - 1);
    let high = (bits >> (pos + 1)) << pos;
    low | high
}

/// Position of `sq` in [`all_squares`]; inverse of [`square_at`].
pub fn square_index(sq: &Square) -> u64 {
    let n = sq.dim();
    let (i, j) = sq.coords();
    let before: usize = (1..i).map(|a| n - a).sum();
    let pair = (before + (j - i - 1)) as u64;
    let offset = remove_bit(remove_bit(sq.bottom().bits(), (j - 1) as u32), (i - 1) as u32);
    (pair << (n - 2)) + offset as u64
}

#[derive(Clone, Debug)]
pub struct Squares {
    n: usize,
    next: u64,
    end: u64,
}

impl Squares {
    /// Restrict the enumeration to positions `start..end`.
    pub fn range(n: usize, start: u64, end: u64) -> Result<Squares> {
        let all = all_squares(n)?;
        Ok(Squares {
            n,
            next: start.min(all.end),
            end: end.min(all.end),
        })
    }
}

impl Iterator for Squares {
    type Item = Square;

    fn next(&mut self) -> Option<Square> {
        if self.next >= self.end {
            return None;
        }
        let sq = square_at(self.n, self.next);
        self.next += 1;
        Some(sq)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Squares {}
