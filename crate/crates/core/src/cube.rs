//! Geometry of the Boolean n-cube: vertices, intervals (subcubes), directions.
//!
//! A vertex is an n-bit index; bit `j` of the index holds coordinate `x_{j+1}`.
//! An interval is stored as two n-bit masks: the set of fixed coordinate
//! positions and the values at those positions (zero elsewhere). Interval
//! equality is mask equality. Rendered output is 1-based (`x1..xn`) to match
//! the usual convention; storage is 0-based.

use std::fmt;
use std::str::FromStr;

use crate::error::{RdnfError, Result};

/// Largest dimension accepted by enumeration-bearing types. `3^24` subcube
/// patterns is already past desk scale; the cap keeps masks in `u32` and
/// memory bounded.
pub const N_MAX_ENUM: usize = 24;

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > N_MAX_ENUM {
        return Err(RdnfError::DimensionCap { n, max: N_MAX_ENUM });
    }
    Ok(())
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// A point of the n-cube, identified by its integer index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    n: usize,
    index: u32,
}

impl Vertex {
    pub fn new(n: usize, index: u32) -> Result<Self> {
        check_dim(n)?;
        if u64::from(index) >= 1u64 << n {
            return Err(RdnfError::IndexOutOfRange {
                index: u64::from(index),
                limit: 1u64 << n,
            });
        }
        Ok(Vertex { n, index })
    }

    /// Builds a vertex from its coordinate tuple `(x1, .., xn)`.
    pub fn from_coords(coords: &[bool]) -> Result<Self> {
        check_dim(coords.len())?;
        let mut index = 0u32;
        for (j, &c) in coords.iter().enumerate() {
            if c {
                index |= 1 << j;
            }
        }
        Ok(Vertex {
            n: coords.len(),
            index,
        })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Coordinate `x_{j+1}` for 0-based position `j`.
    pub fn coord(&self, j: usize) -> bool {
        debug_assert!(j < self.n);
        (self.index >> j) & 1 == 1
    }

    /// Number of coordinates equal to 1.
    pub fn weight(&self) -> u32 {
        self.index.count_ones()
    }

    /// Hamming distance between two vertices of the same cube.
    pub fn hamming(&self, other: &Vertex) -> Result<u32> {
        if self.n != other.n {
            return Err(RdnfError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok((self.index ^ other.index).count_ones())
    }

    /// All vertices at Hamming distance exactly `k`, in ascending index order.
    pub fn layer(&self, k: usize) -> Result<Vec<Vertex>> {
        if k > self.n {
            return Err(RdnfError::KOutOfRange { k, n: self.n });
        }
        let mut out: Vec<Vertex> = subsets_of_weight(self.n, k)
            .map(|d| Vertex {
                n: self.n,
                index: self.index ^ d,
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

/// Iterates all n-bit masks of population count `k`, ascending (Gosper's hack).
fn subsets_of_weight(n: usize, k: usize) -> impl Iterator<Item = u32> {
    let limit = 1u64 << n;
    let first: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut cur = Some(first);
    std::iter::from_fn(move || {
        let v = cur?;
        if v >= limit {
            cur = None;
            return None;
        }
        cur = if v == 0 {
            None
        } else {
            let c = v & v.wrapping_neg();
            let r = v + c;
            Some((((r ^ v) >> 2) / c) | r)
        };
        Some(v as u32)
    })
}

/// A subcube of the n-cube: the set of fixed coordinate positions together
/// with the fixed values. The free coordinates span a cube of dimension
/// `k = n - rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    n: usize,
    fixed: u32,
    values: u32,
}

impl Interval {
    /// Builds an interval from the mask of fixed positions and the values at
    /// those positions. Value bits outside `fixed` must be zero.
    pub fn new(n: usize, fixed: u32, values: u32) -> Result<Self> {
        check_dim(n)?;
        let m = full_mask(n);
        if fixed & !m != 0 || values & !fixed != 0 {
            return Err(RdnfError::Parse(format!(
                "invalid interval masks fixed={fixed:b} values={values:b} for n={n}"
            )));
        }
        Ok(Interval { n, fixed, values })
    }

    /// The whole cube: no fixed coordinates.
    pub fn full_cube(n: usize) -> Result<Self> {
        Interval::new(n, 0, 0)
    }

    /// The single-vertex interval.
    pub fn from_vertex(v: Vertex) -> Self {
        Interval {
            n: v.n,
            fixed: full_mask(v.n),
            values: v.index,
        }
    }

    /// Smallest interval containing both vertices: fixes exactly the
    /// coordinates on which they agree, to the shared values.
    pub fn stretch(a: Vertex, b: Vertex) -> Result<Self> {
        if a.n != b.n {
            return Err(RdnfError::DimensionMismatch {
                left: a.n,
                right: b.n,
            });
        }
        let fixed = !(a.index ^ b.index) & full_mask(a.n);
        Ok(Interval {
            n: a.n,
            fixed,
            values: a.index & fixed,
        })
    }

    pub fn dimension_ambient(&self) -> usize {
        self.n
    }

    /// Number of fixed coordinates (the rank of the conjunction).
    pub fn rank(&self) -> usize {
        self.fixed.count_ones() as usize
    }

    /// Dimension of the subcube: `n - rank`.
    pub fn dimension(&self) -> usize {
        self.n - self.rank()
    }

    pub fn fixed_mask(&self) -> u32 {
        self.fixed
    }

    pub fn values_mask(&self) -> u32 {
        self.values
    }

    pub fn direction(&self) -> Direction {
        Direction {
            n: self.n,
            fixed: self.fixed,
        }
    }

    /// Vertex with all free coordinates set to 0.
    pub fn min_vertex(&self) -> Vertex {
        Vertex {
            n: self.n,
            index: self.values,
        }
    }

    /// Vertex with all free coordinates set to 1.
    pub fn max_vertex(&self) -> Vertex {
        Vertex {
            n: self.n,
            index: self.values | (full_mask(self.n) & !self.fixed),
        }
    }

    /// The `2^k` vertices of the interval in ascending index order.
    pub fn vertices(&self) -> Vec<Vertex> {
        let free = full_mask(self.n) & !self.fixed;
        let mut out = Vec::with_capacity(1usize << self.dimension());
        let mut s = 0u32;
        loop {
            out.push(Vertex {
                n: self.n,
                index: self.values | s,
            });
            // next submask of `free` in ascending numeric order
            s = ((s | !free).wrapping_add(1)) & free;
            if s == 0 {
                break;
            }
        }
        out
    }

    /// True iff the vertex matches the fixed values.
    pub fn covers(&self, v: Vertex) -> Result<bool> {
        if self.n != v.n {
            return Err(RdnfError::DimensionMismatch {
                left: self.n,
                right: v.n,
            });
        }
        Ok(v.index & self.fixed == self.values)
    }

    /// True iff every vertex of `other` is a vertex of `self`.
    pub fn contains(&self, other: &Interval) -> bool {
        self.n == other.n
            && self.fixed & !other.fixed == 0
            && other.values & self.fixed == self.values
    }

    /// The `n - k` intervals of the same direction whose values differ in
    /// exactly one fixed coordinate, ordered by that coordinate.
    pub fn neighbors(&self) -> Vec<Interval> {
        let mut out = Vec::with_capacity(self.rank());
        let mut m = self.fixed;
        while m != 0 {
            let bit = m & m.wrapping_neg();
            out.push(Interval {
                n: self.n,
                fixed: self.fixed,
                values: self.values ^ bit,
            });
            m &= !bit;
        }
        out
    }

    /// Frees the unique coordinate on which two neighbor intervals differ.
    pub fn join(&self, other: &Interval) -> Result<Interval> {
        if self.n != other.n {
            return Err(RdnfError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let diff = self.values ^ other.values;
        if self.fixed != other.fixed || diff.count_ones() != 1 {
            return Err(RdnfError::NotNeighbors);
        }
        let fixed = self.fixed & !diff;
        Ok(Interval {
            n: self.n,
            fixed,
            values: self.values & fixed,
        })
    }
}

/// Ternary rendering: position `j` of the string describes `x_{j+1}` as
/// '0', '1' or '-' (free).
impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.n {
            let c = if self.fixed >> j & 1 == 0 {
                '-'
            } else if self.values >> j & 1 == 1 {
                '1'
            } else {
                '0'
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Interval {
    type Err = RdnfError;

    fn from_str(s: &str) -> Result<Self> {
        let n = s.chars().count();
        check_dim(n)?;
        let (mut fixed, mut values) = (0u32, 0u32);
        for (j, c) in s.chars().enumerate() {
            match c {
                '-' => {}
                '0' => fixed |= 1 << j,
                '1' => {
                    fixed |= 1 << j;
                    values |= 1 << j;
                }
                other => {
                    return Err(RdnfError::Parse(format!(
                        "invalid ternary character {other:?} in {s:?}"
                    )))
                }
            }
        }
        Ok(Interval { n, fixed, values })
    }
}

/// A family of intervals sharing the same set of fixed coordinate positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Direction {
    n: usize,
    fixed: u32,
}

impl Direction {
    pub fn new(n: usize, fixed: u32) -> Result<Self> {
        check_dim(n)?;
        if fixed & !full_mask(n) != 0 {
            return Err(RdnfError::Parse(format!(
                "fixed mask {fixed:b} exceeds n={n}"
            )));
        }
        Ok(Direction { n, fixed })
    }

    pub fn rank(&self) -> usize {
        self.fixed.count_ones() as usize
    }

    /// All `2^rank` intervals of this direction, ascending by value mask.
    pub fn intervals(&self) -> Vec<Interval> {
        let n = self.n;
        let fixed = self.fixed;
        let mut out = Vec::with_capacity(1usize << self.rank());
        let mut s = 0u32;
        loop {
            out.push(Interval {
                n,
                fixed,
                values: s,
            });
            s = ((s | !fixed).wrapping_add(1)) & fixed;
            if s == 0 {
                break;
            }
        }
        out
    }

    /// All directions of rank `r` in the n-cube.
    pub fn all_of_rank(n: usize, r: usize) -> Result<Vec<Direction>> {
        check_dim(n)?;
        if r > n {
            return Err(RdnfError::KOutOfRange { k: r, n });
        }
        Ok(subsets_of_weight(n, r)
            .map(|fixed| Direction { n, fixed })
            .collect())
    }
}

/// True iff some interval of the sequence covers the vertex.
pub fn dnf_covers(dnf: &[Interval], v: Vertex) -> Result<bool> {
    for iv in dnf {
        if iv.covers(v)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exact binomial coefficient, or an overflow error.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul(u128::from(n - i))
            .ok_or(RdnfError::Overflow("binomial coefficient"))?;
        acc /= u128::from(i + 1);
    }
    Ok(acc)
}

/// Number of k-dimensional intervals of the n-cube: `C(n,k) * 2^(n-k)`.
pub fn count_intervals(n: usize, k: usize) -> Result<u128> {
    if k > n {
        return Err(RdnfError::KOutOfRange { k, n });
    }
    let c = binomial(n as u64, k as u64)?;
    let shift = (n - k) as u32;
    if shift >= 128 {
        return Err(RdnfError::Overflow("interval count"));
    }
    c.checked_shl(shift)
        .ok_or(RdnfError::Overflow("interval count"))
}
