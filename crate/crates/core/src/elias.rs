//! Elias γ and δ codes over an MSB-first bit sequence.
//!
//! γ(ℓ) is ℓ written in binary, preceded by ⌊log₂ℓ⌋ zero bits. δ(ℓ) is
//! γ(⌊log₂ℓ⌋ + 1) followed by the ⌊log₂ℓ⌋ low bits of ℓ. Decoding either
//! takes one leading-zero count and at most three word reads, independent of
//! the value.

use crate::error::{Error, Result};
use crate::text::LcpWord;

const WORD: usize = 64;

/// Growable bit sequence, most significant bit first.
///
/// Bit `i` lives in word `i / 64` at bit `63 - i % 64`. Bits past `len` in
/// the last word are kept zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitSeq {
    words: Vec<u64>,
    len: usize,
}

impl BitSeq {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(WORD)),
            len: 0,
        }
    }

    /// `len` zero bits.
    pub fn zeroed(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] >> (WORD - 1 - i % WORD) & 1 == 1
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u64, width: usize) {
        let new_len = self.len + width;
        let needed = new_len.div_ceil(WORD);
        if needed > self.words.len() {
            self.words.resize(needed, 0);
        }
        let at = self.len;
        self.len = new_len;
        self.write_bits(at, width, value);
    }

    /// Reads `width <= 64` bits starting at `offset`.
    #[inline]
    pub fn read_bits(&self, offset: usize, width: usize) -> u64 {
        debug_assert!(width <= WORD && offset + width <= self.len);
        if width == 0 {
            return 0;
        }
        let w = offset / WORD;
        let b = offset % WORD;
        let mut v = self.words[w] << b;
        if b + width > WORD {
            v |= self.words[w + 1] >> (WORD - b);
        }
        v >> (WORD - width)
    }

    /// Overwrites `width <= 64` bits starting at `offset` with the low bits
    /// of `value`.
    #[inline]
    pub fn write_bits(&mut self, offset: usize, width: usize, value: u64) {
        debug_assert!(width <= WORD && offset + width <= self.len);
        if width == 0 {
            return;
        }
        let aligned = value << (WORD - width);
        let mask = !0u64 << (WORD - width);
        let w = offset / WORD;
        let b = offset % WORD;
        self.words[w] = (self.words[w] & !(mask >> b)) | (aligned >> b);
        if b + width > WORD {
            let shift = WORD - b;
            self.words[w + 1] = (self.words[w + 1] & !(mask << shift)) | (aligned << shift);
        }
    }

    /// Number of consecutive zero bits from `offset`, stopping at the first
    /// one-bit or at the end of the sequence.
    #[inline]
    pub fn zeros_from(&self, offset: usize) -> usize {
        let mut at = offset;
        while at < self.len {
            let width = (self.len - at).min(WORD);
            let window = self.read_bits(at, width) << (WORD - width);
            let lz = window.leading_zeros() as usize;
            if lz < width {
                return at + lz - offset;
            }
            at += width;
        }
        self.len - offset
    }

    /// Moves `len` bits from `src` to `dst` within the sequence, handling
    /// overlap in either direction, one word per iteration.
    pub fn copy_within(&mut self, src: usize, len: usize, dst: usize) {
        debug_assert!(src + len <= self.len && dst + len <= self.len);
        if src == dst || len == 0 {
            return;
        }
        if dst < src {
            let mut k = 0;
            while k < len {
                let width = (len - k).min(WORD);
                let v = self.read_bits(src + k, width);
                self.write_bits(dst + k, width, v);
                k += width;
            }
        } else {
            let mut k = len;
            while k > 0 {
                let width = k.min(WORD);
                k -= width;
                let v = self.read_bits(src + k, width);
                self.write_bits(dst + k, width, v);
            }
        }
    }

    /// Copies `len` bits of `other` starting at `src` to `dst` in `self`.
    pub fn copy_from(&mut self, other: &BitSeq, src: usize, len: usize, dst: usize) {
        let mut k = 0;
        while k < len {
            let width = (len - k).min(WORD);
            self.write_bits(dst + k, width, other.read_bits(src + k, width));
            k += width;
        }
    }

    /// Shortens to `len` bits, clearing everything past it.
    pub fn truncate(&mut self, len: usize) {
        if len >= self.len {
            return;
        }
        self.len = len;
        self.words.truncate(len.div_ceil(WORD));
        if !len.is_multiple_of(WORD) {
            let last = self.words.len() - 1;
            self.words[last] &= !0u64 << (WORD - len % WORD);
        }
    }

    /// Bits as a string of '0'/'1'.
    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bit_string(s: &str) -> Option<Self> {
        let mut seq = Self::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => seq.push_bits(0, 1),
                '1' => seq.push_bits(1, 1),
                _ => return None,
            }
        }
        Some(seq)
    }

    /// Packed big-endian bytes, last byte zero-padded.
    pub fn to_bytes(&self) -> Vec<u8> {
        let nbytes = self.len.div_ceil(8);
        self.words
            .iter()
            .flat_map(|w| w.to_be_bytes())
            .take(nbytes)
            .collect()
    }

    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::Format(format!(
                "{} payload bytes cannot hold exactly {len} bits",
                bytes.len()
            )));
        }
        let mut words: Vec<u64> = bytes
            .chunks(8)
            .map(|c| {
                let mut buf = [0u8; 8];
                buf[..c.len()].copy_from_slice(c);
                u64::from_be_bytes(buf)
            })
            .collect();
        if !len.is_multiple_of(WORD) {
            if let Some(last) = words.last_mut() {
                if *last & !(!0u64 << (WORD - len % WORD)) != 0 {
                    return Err(Error::Format("nonzero padding bits".into()));
                }
                *last &= !0u64 << (WORD - len % WORD);
            }
        }
        Ok(Self { words, len })
    }

    /// 8-byte little-endian bit length followed by [`BitSeq::to_bytes`].
    pub fn serialize(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.len.div_ceil(8));
        out.extend_from_slice(&(self.len as u64).to_le_bytes());
        out.extend_from_slice(&self.to_bytes());
        out
    }

    /// Parses [`BitSeq::serialize`] output from the front of `bytes`,
    /// returning the sequence and the number of bytes consumed.
    pub fn deserialize(bytes: &[u8]) -> Result<(Self, usize)> {
        let header: [u8; 8] = bytes
            .get(..8)
            .and_then(|h| h.try_into().ok())
            .ok_or_else(|| Error::Format("missing bit-length header".into()))?;
        let len = usize::try_from(u64::from_le_bytes(header))
            .map_err(|_| Error::Format("bit length overflows usize".into()))?;
        let nbytes = len.div_ceil(8);
        let payload = bytes
            .get(8..8 + nbytes)
            .ok_or_else(|| Error::Format("bit payload truncated".into()))?;
        Ok((Self::from_bytes(payload, len)?, 8 + nbytes))
    }
}

/// Read position in a [`BitSeq`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BitCursor {
    pub offset: usize,
}

impl BitCursor {
    pub fn new(offset: usize) -> Self {
        Self { offset }
    }
}

#[inline]
fn floor_log2(v: u64) -> usize {
    (63 - v.leading_zeros()) as usize
}

fn positive<W: LcpWord>(value: W) -> Result<u64> {
    let v = value.as_u64();
    if v == 0 {
        Err(Error::NonPositiveValue)
    } else {
        Ok(v)
    }
}

/// Length of γ(ℓ): 2⌊log₂ℓ⌋ + 1.
pub fn code_len_gamma<W: LcpWord>(value: W) -> Result<usize> {
    Ok(2 * floor_log2(positive(value)?) + 1)
}

/// Length of δ(ℓ): 2⌊log₂(⌊log₂ℓ⌋ + 1)⌋ + 1 + ⌊log₂ℓ⌋.
pub fn code_len_delta<W: LcpWord>(value: W) -> Result<usize> {
    Ok(delta_len(positive(value)?))
}

#[inline]
pub(crate) fn delta_len(v: u64) -> usize {
    let l = floor_log2(v);
    2 * floor_log2(l as u64 + 1) + 1 + l
}

pub fn gamma_encode<W: LcpWord>(seq: &mut BitSeq, value: W) -> Result<usize> {
    let v = positive(value)?;
    let l = floor_log2(v);
    seq.push_bits(0, l);
    seq.push_bits(v, l + 1);
    Ok(2 * l + 1)
}

pub fn delta_encode<W: LcpWord>(seq: &mut BitSeq, value: W) -> Result<usize> {
    let v = positive(value)?;
    let l = floor_log2(v);
    let head = l as u64 + 1;
    seq.push_bits(head, 2 * floor_log2(head) + 1);
    seq.push_bits(v, l);
    Ok(delta_len(v))
}

/// Writes δ(v) over existing bits at `offset`, returning its length.
#[inline]
pub(crate) fn write_delta_at(seq: &mut BitSeq, offset: usize, v: u64) -> usize {
    debug_assert!(v > 0);
    let l = floor_log2(v);
    let head = l as u64 + 1;
    let head_len = 2 * floor_log2(head) + 1;
    seq.write_bits(offset, head_len, head);
    seq.write_bits(offset + head_len, l, v);
    head_len + l
}

pub fn gamma_decode(seq: &BitSeq, cursor: &mut BitCursor) -> Result<u64> {
    let start = cursor.offset;
    let zeros = seq.zeros_from(start);
    if start + zeros >= seq.len() || zeros >= WORD {
        return Err(Error::MalformedUnary { offset: start });
    }
    let end = start + 2 * zeros + 1;
    if end > seq.len() {
        return Err(Error::TruncatedCode { offset: start });
    }
    let v = seq.read_bits(start + zeros, zeros + 1);
    cursor.offset = end;
    Ok(v)
}

pub fn delta_decode(seq: &BitSeq, cursor: &mut BitCursor) -> Result<u64> {
    let start = cursor.offset;
    let mut at = *cursor;
    let head = gamma_decode(seq, &mut at)?;
    if head > WORD as u64 {
        return Err(Error::MalformedUnary { offset: start });
    }
    let l = (head - 1) as usize;
    if at.offset + l > seq.len() {
        return Err(Error::TruncatedCode { offset: start });
    }
    let low = seq.read_bits(at.offset, l);
    cursor.offset = at.offset + l;
    Ok(if l == 0 { 1 } else { (1u64 << l) | low })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gamma_bits(v: u64) -> String {
        let mut s = BitSeq::new();
        gamma_encode(&mut s, v).unwrap();
        s.to_bit_string()
    }

    fn delta_bits(v: u64) -> String {
        let mut s = BitSeq::new();
        delta_encode(&mut s, v).unwrap();
        s.to_bit_string()
    }

    #[test]
    fn worked_codewords() {
        assert_eq!(gamma_bits(4), "00100");
        assert_eq!(gamma_bits(1), "1");
        assert_eq!(delta_bits(9), "00100001");
        assert_eq!(delta_bits(1), "1");
        assert_eq!(code_len_delta(9u64), Ok(8));
        assert_eq!(code_len_delta(1u64), Ok(1));
    }

    #[test]
    fn decode_worked_codewords() {
        let s = BitSeq::from_bit_string("00100").unwrap();
        assert_eq!(gamma_decode(&s, &mut BitCursor::new(0)), Ok(4));
        let s = BitSeq::from_bit_string("00100001").unwrap();
        let mut c = BitCursor::new(0);
        assert_eq!(delta_decode(&s, &mut c), Ok(9));
        assert_eq!(c.offset, 8);
        let s = BitSeq::from_bit_string("1").unwrap();
        assert_eq!(delta_decode(&s, &mut BitCursor::new(0)), Ok(1));
        assert_eq!(gamma_decode(&s, &mut BitCursor::new(0)), Ok(1));
    }

    #[test]
    fn zero_is_rejected() {
        let mut s = BitSeq::new();
        assert_eq!(gamma_encode(&mut s, 0u32), Err(Error::NonPositiveValue));
        assert_eq!(delta_encode(&mut s, 0u64), Err(Error::NonPositiveValue));
        assert_eq!(code_len_delta(0usize), Err(Error::NonPositiveValue));
        assert!(s.is_empty());
    }

    #[test]
    fn decode_errors() {
        let s = BitSeq::from_bit_string("000").unwrap();
        assert_eq!(
            gamma_decode(&s, &mut BitCursor::new(0)),
            Err(Error::MalformedUnary { offset: 0 })
        );
        let s = BitSeq::from_bit_string("0010").unwrap();
        assert_eq!(
            gamma_decode(&s, &mut BitCursor::new(0)),
            Err(Error::TruncatedCode { offset: 0 })
        );
        // γ(4) head promises 3 low bits, only 2 present.
        let s = BitSeq::from_bit_string("0010000").unwrap();
        assert_eq!(
            delta_decode(&s, &mut BitCursor::new(0)),
            Err(Error::TruncatedCode { offset: 0 })
        );
    }

    #[test]
    fn concatenated_stream() {
        let mut s = BitSeq::new();
        for v in [3u64, 1, 7] {
            delta_encode(&mut s, v).unwrap();
        }
        let mut c = BitCursor::default();
        let got: Vec<u64> = (0..3).map(|_| delta_decode(&s, &mut c).unwrap()).collect();
        assert_eq!(got, [3, 1, 7]);
        assert_eq!(c.offset, s.len());
    }

    #[test]
    fn exhaustive_small_values() {
        for v in 1..=4096u64 {
            let mut s = BitSeq::new();
            let gl = gamma_encode(&mut s, v).unwrap();
            let dl = delta_encode(&mut s, v).unwrap();
            assert_eq!(gl, code_len_gamma(v).unwrap());
            assert_eq!(dl, code_len_delta(v).unwrap());
            assert_eq!(s.len(), gl + dl);
            let mut c = BitCursor::default();
            assert_eq!(gamma_decode(&s, &mut c), Ok(v));
            assert_eq!(delta_decode(&s, &mut c), Ok(v));
            assert_eq!(c.offset, s.len());
        }
    }

    #[test]
    fn extreme_values() {
        for v in [u64::MAX, 1 << 63, (1 << 63) - 1, u32::MAX as u64 + 1] {
            let mut s = BitSeq::new();
            gamma_encode(&mut s, v).unwrap();
            delta_encode(&mut s, v).unwrap();
            let mut c = BitCursor::default();
            assert_eq!(gamma_decode(&s, &mut c), Ok(v));
            assert_eq!(delta_decode(&s, &mut c), Ok(v));
        }
    }

    #[test]
    fn write_at_matches_append() {
        let mut a = BitSeq::new();
        let mut b = BitSeq::zeroed(200);
        let mut at = 3;
        for v in [1u64, 9, 1000, 2, 77777] {
            delta_encode(&mut a, v).unwrap();
            at += write_delta_at(&mut b, at, v);
        }
        let mut c = BitCursor::new(3);
        for v in [1u64, 9, 1000, 2, 77777] {
            assert_eq!(delta_decode(&b, &mut c), Ok(v));
        }
        assert_eq!(c.offset - 3, a.len());
    }

    #[test]
    fn copy_within_both_directions() {
        let pattern = "1011001110001111000011111000001";
        let mut s = BitSeq::zeroed(300);
        let src = BitSeq::from_bit_string(&pattern.repeat(4)).unwrap();
        s.copy_from(&src, 0, src.len(), 100);
        s.copy_within(100, src.len(), 37);
        let moved: String = (37..37 + src.len())
            .map(|i| if s.get(i) { '1' } else { '0' })
            .collect();
        assert_eq!(moved, src.to_bit_string());
        s.copy_within(37, src.len(), 160);
        let moved: String = (160..160 + src.len())
            .map(|i| if s.get(i) { '1' } else { '0' })
            .collect();
        assert_eq!(moved, src.to_bit_string());
    }

    #[test]
    fn serialization_layout() {
        let s = BitSeq::from_bit_string("00100001101").unwrap();
        let bytes = s.serialize();
        assert_eq!(&bytes[..8], &11u64.to_le_bytes());
        assert_eq!(&bytes[8..], &[0b0010_0001, 0b1010_0000]);
        let (back, used) = BitSeq::deserialize(&bytes).unwrap();
        assert_eq!(back, s);
        assert_eq!(used, bytes.len());
        assert!(BitSeq::deserialize(&bytes[..9]).is_err());
        let mut dirty = bytes.clone();
        dirty[9] |= 1;
        assert!(BitSeq::deserialize(&dirty).is_err());
    }

    #[test]
    fn truncate_clears_tail() {
        let mut s = BitSeq::from_bit_string(&"1".repeat(70)).unwrap();
        s.truncate(5);
        assert_eq!(s.words(), &[0xF800_0000_0000_0000]);
    }

    proptest! {
        #[test]
        fn delta_stream_round_trips(values in prop::collection::vec(1u64..=u64::MAX, 0..200)) {
            let mut s = BitSeq::new();
            let mut total = 0;
            for &v in &values {
                total += delta_encode(&mut s, v).unwrap();
            }
            prop_assert_eq!(s.len(), total);
            let mut c = BitCursor::default();
            for &v in &values {
                prop_assert_eq!(delta_decode(&s, &mut c).unwrap(), v);
            }
            prop_assert_eq!(c.offset, s.len());
        }

        #[test]
        fn gamma_stream_round_trips(values in prop::collection::vec(1u64..(1 << 20), 0..200)) {
            let mut s = BitSeq::new();
            for &v in &values {
                gamma_encode(&mut s, v).unwrap();
            }
            let mut c = BitCursor::default();
            for &v in &values {
                prop_assert_eq!(gamma_decode(&s, &mut c).unwrap(), v);
            }
            prop_assert_eq!(c.offset, s.len());
        }
    }
}
