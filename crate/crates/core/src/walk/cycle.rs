use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The cycle graph `C_N`, vertices labelled `0..N` clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    size: usize,
}

/// A vertex of a [`Cycle`]. Always in `0..N` for the cycle it was made from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleIndex(usize);

impl Cycle {
    pub fn new(size: usize) -> Result<Self> {
        if size < 3 {
            return Err(Error::CycleTooSmall(size));
        }
        Ok(Cycle { size })
    }

    #[inline]
    pub fn size(self) -> usize {
        self.size
    }

    pub fn index(self, value: usize) -> Result<CycleIndex> {
        if value < self.size {
            Ok(CycleIndex(value))
        } else {
            Err(Error::OutOfRange {
                index: value,
                size: self.size,
            })
        }
    }

    /// Clockwise neighbour, `(N-1) + 1 == 0`.
    #[inline]
    pub fn next(self, x: CycleIndex) -> CycleIndex {
        CycleIndex(if x.0 + 1 == self.size { 0 } else { x.0 + 1 })
    }

    /// Anti-clockwise neighbour, `0 - 1 == N-1`.
    #[inline]
    pub fn prev(self, x: CycleIndex) -> CycleIndex {
        CycleIndex(if x.0 == 0 { self.size - 1 } else { x.0 - 1 })
    }

    /// Vertex reached from `x` by a signed number of clockwise moves.
    pub fn offset(self, x: CycleIndex, by: isize) -> CycleIndex {
        let n = self.size as isize;
        CycleIndex((x.0 as isize + by).rem_euclid(n) as usize)
    }

    /// Signed displacement from `from` to `to`, represented in `(-N/2, N/2]`.
    pub fn displacement(self, from: CycleIndex, to: CycleIndex) -> isize {
        let n = self.size as isize;
        let d = (to.0 as isize - from.0 as isize).rem_euclid(n);
        if 2 * d > n {
            d - n
        } else {
            d
        }
    }

    pub fn vertices(self) -> impl Iterator<Item = CycleIndex> {
        (0..self.size).map(CycleIndex)
    }
}

impl CycleIndex {
    #[inline]
    pub fn value(self) -> usize {
        self.0
    }
}

impl From<CycleIndex> for usize {
    fn from(x: CycleIndex) -> usize {
        x.0
    }
}

impl std::fmt::Display for CycleIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}
