//! Input text, output containers and the per-iteration working state shared by
//! every construction routine.
//!
//! A text is a byte string terminated by a unique sentinel that compares
//! smaller than every other byte in it. Positions and ranks are zero-based and
//! absolute (indices into the whole buffer).

use std::fmt::Debug;
use std::ops::{Deref, DerefMut};

use num_traits::{NumCast, PrimInt, Unsigned};

use crate::error::{Error, Result};

/// Default sentinel byte.
pub const DEFAULT_SENTINEL: u8 = 0x00;

/// Unsigned integer type used to store LCP values.
pub trait LcpWord: PrimInt + Unsigned + Debug + Default + Send + Sync + 'static {
    /// Converts an LCP value known to fit.
    #[inline]
    fn from_usize(v: usize) -> Self {
        <Self as NumCast>::from(v).expect("value exceeds LCP word range")
    }

    #[inline]
    fn as_usize(self) -> usize {
        self.to_usize().expect("LCP word exceeds usize")
    }

    #[inline]
    fn as_u64(self) -> u64 {
        self.to_u64().expect("LCP word exceeds u64")
    }

    /// Whether every value in `0..=max` is representable.
    fn holds(max: usize) -> bool {
        <Self as NumCast>::from(max).is_some()
    }
}

impl<T: PrimInt + Unsigned + Debug + Default + Send + Sync + 'static> LcpWord for T {}

/// A byte string ending in a unique, minimal sentinel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedText {
    bytes: Vec<u8>,
    sentinel: u8,
}

impl ValidatedText {
    /// Validates `raw` against `sentinel`.
    ///
    /// With `auto_append_sentinel` the sentinel must not occur in `raw` and is
    /// pushed onto the end; otherwise `raw` must already end with it.
    pub fn new(mut raw: Vec<u8>, sentinel: u8, auto_append_sentinel: bool) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        if auto_append_sentinel {
            if let Some(position) = raw.iter().position(|&b| b == sentinel) {
                return Err(Error::SentinelCollision { sentinel, position });
            }
            raw.push(sentinel);
        } else {
            let n = raw.len();
            if raw[n - 1] != sentinel {
                return Err(Error::SentinelMisplaced {
                    sentinel,
                    position: raw.iter().position(|&b| b == sentinel),
                });
            }
            if let Some(position) = raw[..n - 1].iter().position(|&b| b == sentinel) {
                return Err(Error::SentinelMisplaced {
                    sentinel,
                    position: Some(position),
                });
            }
            if n < 2 {
                return Err(Error::EmptyInput);
            }
        }
        if let Some(position) = raw.iter().position(|&b| b < sentinel) {
            return Err(Error::SentinelNotMinimal {
                sentinel,
                byte: raw[position],
                position,
            });
        }
        Ok(Self {
            bytes: raw,
            sentinel,
        })
    }

    /// Shorthand for `new(raw, DEFAULT_SENTINEL, true)`.
    pub fn with_appended_sentinel(raw: impl Into<Vec<u8>>) -> Result<Self> {
        Self::new(raw.into(), DEFAULT_SENTINEL, true)
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    /// Always false: a validated text holds at least two bytes.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sentinel(&self) -> u8 {
        self.sentinel
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    /// Splits into the raw buffer and sentinel for in-place construction.
    pub(crate) fn into_parts(self) -> (Vec<u8>, u8) {
        (self.bytes, self.sentinel)
    }
}

/// A Burrows-Wheeler transform produced in the buffer that held the text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bwt {
    bytes: Vec<u8>,
    dollar_pos: usize,
    sentinel: u8,
}

impl Bwt {
    pub(crate) fn from_parts(bytes: Vec<u8>, dollar_pos: usize, sentinel: u8) -> Self {
        debug_assert_eq!(bytes[dollar_pos], sentinel);
        Self {
            bytes,
            dollar_pos,
            sentinel,
        }
    }

    /// Row holding the sentinel, i.e. the rank of the whole text.
    pub fn dollar_pos(&self) -> usize {
        self.dollar_pos
    }

    pub fn sentinel(&self) -> u8 {
        self.sentinel
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }
}

/// LCP values in suffix-array order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LcpArray<W = usize> {
    values: Vec<W>,
}

impl<W: LcpWord> LcpArray<W> {
    /// Zero-filled storage for a text of length `n`.
    pub fn zeroed(n: usize) -> Self {
        Self {
            values: vec![W::zero(); n],
        }
    }

    pub fn from_vec(values: Vec<W>) -> Self {
        Self { values }
    }

    pub fn into_vec(self) -> Vec<W> {
        self.values
    }

    /// Values widened to `usize`, handy for comparisons across word types.
    pub fn to_usize_vec(&self) -> Vec<usize> {
        self.values.iter().map(|v| v.as_usize()).collect()
    }
}

impl<W> Deref for LcpArray<W> {
    type Target = [W];

    fn deref(&self) -> &[W] {
        &self.values
    }
}

impl<W> DerefMut for LcpArray<W> {
    fn deref_mut(&mut self) -> &mut [W] {
        &mut self.values
    }
}

/// Working set of one induction step.
///
/// `p_a1`/`p_b1` are `None` when the scan found no occurrence of `bytes[s]`
/// (the corresponding lcp is then 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StepState {
    pub s: usize,
    pub p: usize,
    pub r: usize,
    pub p_a1: Option<usize>,
    pub p_b1: Option<usize>,
    pub ell_a: usize,
    pub ell_b: usize,
}
