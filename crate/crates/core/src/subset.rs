//! Subsets of a small finite carrier, stored as bitmasks.

use std::fmt;

use crate::error::{Error, Result};

/// Largest carrier this crate handles; every subset fits in one `u32`.
pub const MAX_POINTS: usize = 16;

/// A subset of the carrier `{0, …, width-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    bits: u32,
    width: u8,
}

#[inline]
pub(crate) fn full_mask(width: usize) -> u32 {
    if width >= 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

impl Subset {
    pub fn empty(width: usize) -> Self {
        debug_assert!(width <= MAX_POINTS);
        Subset {
            bits: 0,
            width: width as u8,
        }
    }

    pub fn full(width: usize) -> Self {
        Subset {
            bits: full_mask(width),
            width: width as u8,
        }
    }

    /// Bits above `width` are discarded.
    pub fn from_bits(width: usize, bits: u32) -> Self {
        Subset {
            bits: bits & full_mask(width),
            width: width as u8,
        }
    }

    pub fn singleton(width: usize, point: usize) -> Self {
        debug_assert!(point < width);
        Subset::from_bits(width, 1 << point)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(width: usize, points: I) -> Result<Self> {
        let mut bits = 0;
        for p in points {
            if p >= width {
                return Err(Error::PointOutOfRange {
                    point: p,
                    size: width,
                });
            }
            bits |= 1 << p;
        }
        Ok(Subset::from_bits(width, bits))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn width(self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn contains(self, point: usize) -> bool {
        point < self.width() && self.bits >> point & 1 == 1
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self.bits == full_mask(self.width())
    }

    pub fn with(self, point: usize) -> Self {
        Subset::from_bits(self.width(), self.bits | 1 << point)
    }

    pub fn without(self, point: usize) -> Self {
        Subset::from_bits(self.width(), self.bits & !(1 << point))
    }

    pub fn union(self, other: Subset) -> Self {
        debug_assert_eq!(self.width, other.width);
        Subset::from_bits(self.width(), self.bits | other.bits)
    }

    pub fn intersection(self, other: Subset) -> Self {
        debug_assert_eq!(self.width, other.width);
        Subset::from_bits(self.width(), self.bits & other.bits)
    }

    pub fn difference(self, other: Subset) -> Self {
        debug_assert_eq!(self.width, other.width);
        Subset::from_bits(self.width(), self.bits & !other.bits)
    }

    pub fn complement(self) -> Self {
        Subset::from_bits(self.width(), !self.bits)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.width()).filter(move |&i| bits >> i & 1 == 1)
    }

    pub fn points(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of a carrier of the given width, in increasing bitmask order.
    pub fn all(width: usize) -> impl Iterator<Item = Subset> {
        (0..=full_mask(width)).map(move |b| Subset::from_bits(width, b))
    }

    pub(crate) fn check_width(self, expected: usize) -> Result<Self> {
        if self.width() == expected {
            Ok(self)
        } else {
            Err(Error::WidthMismatch {
                expected,
                found: self.width(),
            })
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.width)
    }
}
