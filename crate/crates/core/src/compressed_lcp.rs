//! In-place BWT with the LCP array emitted directly as Elias-δ codes.
//!
//! The stream holds δ(lcp + 1) for every row of the current region, in row
//! order. During construction the codes are right-aligned in the buffer: the
//! region occupies `[b_start, len)` and grows leftward into free headroom.
//! Inserting `T_s` at rank `r` replaces the single code of row `r + 1` by the
//! two codes for rows `r` and `r + 1`, so only the bits left of that code
//! move. Two bit offsets persist across iterations: `b_start`, where the
//! region's first code begins, and `e_p`, just past the code of the row
//! holding the sentinel.

use crate::bwt_lcp::NeighborScan;
use crate::elias::{delta_decode, delta_len, write_delta_at, BitCursor, BitSeq};
use crate::error::{Error, Result};
use crate::inplace_bwt::{step1_find_sentinel, step2_rank, step3_step4_place_and_shift};
use crate::probe::{NoProbe, Probe};
use crate::text::{Bwt, LcpArray, LcpWord, StepState, ValidatedText};

/// LCP array as a concatenation of δ(lcp + 1) codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitLcp {
    stream: BitSeq,
    b_start: usize,
    e_p: Option<usize>,
    cap: usize,
    growth_events: usize,
}

impl BitLcp {
    /// Wraps a stream holding exactly the codes, starting at bit 0.
    pub fn from_stream(stream: BitSeq) -> Self {
        let cap = stream.len();
        Self {
            stream,
            b_start: 0,
            e_p: None,
            cap,
            growth_events: 0,
        }
    }

    /// Base state of a build over a text of length `n >= 2`: rows `n-2` and
    /// `n-1` both have lcp 0, so the region is δ(1)δ(1) = "11".
    pub fn for_text_len(n: usize, options: CompressedOptions) -> Result<Self> {
        let (initial, cap) = options.resolve(n);
        if initial < 2 {
            return Err(Error::CapacityExhausted { needed: 2, cap });
        }
        let mut stream = BitSeq::zeroed(initial);
        stream.write_bits(initial - 2, 2, 0b11);
        Ok(Self {
            stream,
            b_start: initial - 2,
            e_p: Some(initial),
            cap,
            growth_events: 0,
        })
    }

    /// Underlying buffer, including any headroom before [`BitLcp::b_start`].
    pub fn stream(&self) -> &BitSeq {
        &self.stream
    }

    pub fn into_stream(self) -> BitSeq {
        self.stream
    }

    /// Bits taken by the codes.
    pub fn len_bits(&self) -> usize {
        self.stream.len() - self.b_start
    }

    /// Offset of the first code.
    pub fn b_start(&self) -> usize {
        self.b_start
    }

    /// Offset just past the code of the sentinel's row; `None` for streams
    /// not produced by a build.
    pub fn e_p(&self) -> Option<usize> {
        self.e_p
    }

    /// How many times the buffer had to be enlarged during the build.
    pub fn growth_events(&self) -> usize {
        self.growth_events
    }

    /// Decodes every code from `b_start` to the end, without the +1 offset.
    pub fn decode_all(&self) -> Result<Vec<u64>> {
        let mut cursor = BitCursor::new(self.b_start);
        let mut out = Vec::new();
        while cursor.offset < self.stream.len() {
            out.push(delta_decode(&self.stream, &mut cursor)? - 1);
        }
        Ok(out)
    }

    /// Decodes the stream, which must hold exactly `n` codes.
    pub fn decode_lcp<W: LcpWord>(&self, n: usize) -> Result<LcpArray<W>> {
        let values = self.decode_all()?;
        if values.len() != n {
            return Err(Error::CountMismatch {
                expected: n,
                got: values.len(),
            });
        }
        values
            .into_iter()
            .map(|v| W::from(v).ok_or(Error::WordTooNarrow { needed: v as usize }))
            .collect::<Result<Vec<W>>>()
            .map(LcpArray::from_vec)
    }

    #[inline]
    fn next(&self, cursor: &mut BitCursor) -> u64 {
        delta_decode(&self.stream, cursor).expect("corrupt compressed LCP stream")
    }

    /// Makes at least `extra` free bits in front of `b_start`.
    fn reserve_front(&mut self, extra: usize) -> Result<()> {
        if self.b_start >= extra {
            return Ok(());
        }
        let used = self.len_bits();
        let needed = used + extra;
        if needed > self.cap {
            return Err(Error::CapacityExhausted {
                needed,
                cap: self.cap,
            });
        }
        let old_len = self.stream.len();
        let new_len = (old_len * 2).max(needed).min(self.cap);
        let mut grown = BitSeq::zeroed(new_len);
        grown.copy_from(&self.stream, self.b_start, used, new_len - used);
        let moved = new_len - old_len;
        self.stream = grown;
        self.b_start += moved;
        self.e_p = self.e_p.map(|e| e + moved);
        self.growth_events += 1;
        Ok(())
    }

    /// Moves the codes to bit 0 and drops the headroom, without reallocating.
    fn compact(&mut self) {
        let used = self.len_bits();
        let shift = self.b_start;
        self.stream.copy_within(shift, used, 0);
        self.stream.truncate(used);
        self.b_start = 0;
        self.e_p = self.e_p.map(|e| e - shift);
    }
}

/// Buffer sizing for the compressed build.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompressedOptions {
    /// Initial buffer size in bits. Default: `2n + 1024`.
    pub initial_bits: Option<usize>,
    /// Hard cap in bits. Default: `n · |δ(n)| + 64`, which bounds the codes
    /// of any LCP array of a length-`n` text.
    pub max_bits: Option<usize>,
}

impl CompressedOptions {
    fn resolve(&self, n: usize) -> (usize, usize) {
        let cap = self
            .max_bits
            .unwrap_or_else(|| n * delta_len(n as u64) + 64);
        let initial = self.initial_bits.unwrap_or(2 * n + 1024).min(cap);
        (initial, cap)
    }
}

/// Predecessor scan over the compressed region.
///
/// Codes decode forward only, so the text is scanned backward first and the
/// rmq is evaluated afterwards by decoding from `b_start`. `ell` is 0 when
/// `bytes[s]` does not occur in `bytes[s+1..p]`.
pub fn c_step2a(bytes: &[u8], lcp: &BitLcp, s: usize, p: usize) -> NeighborScan<u64> {
    let c = bytes[s];
    let mut i = p - 1;
    while bytes[i] != c {
        i -= 1;
    }
    let comparisons = (p - i) as u64;
    if i == s {
        return NeighborScan {
            position: None,
            ell: 0,
            comparisons,
        };
    }
    let mut cursor = BitCursor::new(lcp.b_start);
    // Rows s+1..=i are skipped; rows i+1..=p hold the rmq range.
    for _ in s + 1..=i {
        lcp.next(&mut cursor);
    }
    let mut min = u64::MAX;
    for _ in i + 1..=p {
        min = min.min(lcp.next(&mut cursor));
    }
    debug_assert_eq!(Some(cursor.offset), lcp.e_p);
    // Decoded values carry the +1 already.
    NeighborScan {
        position: Some(i),
        ell: min,
        comparisons,
    }
}

/// Successor scan, decoding from `e_p` in lockstep with the text scan.
pub fn c_step2b(bytes: &[u8], lcp: &BitLcp, s: usize, p: usize) -> NeighborScan<u64> {
    let n = bytes.len();
    let c = bytes[s];
    let mut cursor = BitCursor::new(lcp.e_p.expect("e_p is tracked during builds"));
    let mut min = u64::MAX;
    for (i, &b) in bytes.iter().enumerate().skip(p + 1) {
        min = min.min(lcp.next(&mut cursor));
        if b == c {
            return NeighborScan {
                position: Some(i),
                ell: min,
                comparisons: (i - p) as u64,
            };
        }
    }
    NeighborScan {
        position: None,
        ell: 0,
        comparisons: (n - 1 - p) as u64,
    }
}

/// Inserts the codes for rows `r` and `r + 1` of a text of length `n`.
///
/// The code of old row `r + 1` is replaced by δ(ell_a+1)δ(ell_b+1) and the
/// codes of rows `s+1..=r` move left by the net length difference, which
/// also renumbers them one row down. When `r` is the last row only
/// δ(ell_a+1) is inserted. Afterwards `e_p` points past the code of row `r`.
pub fn c_step4a(
    lcp: &mut BitLcp,
    n: usize,
    s: usize,
    r: usize,
    ell_a: u64,
    ell_b: u64,
) -> Result<()> {
    let la = delta_len(ell_a + 1);
    let mut cursor = BitCursor::new(lcp.b_start);
    for _ in s + 1..=r {
        lcp.next(&mut cursor);
    }
    let prefix = cursor.offset - lcp.b_start;
    let has_b = r + 1 < n;
    let (new_len, old_len) = if has_b {
        let b_next = cursor.offset;
        lcp.next(&mut cursor);
        (la + delta_len(ell_b + 1), cursor.offset - b_next)
    } else {
        (la, 0)
    };

    let delta = new_len as isize - old_len as isize;
    if delta > 0 {
        lcp.reserve_front(delta as usize)?;
    }
    let src = lcp.b_start;
    let dst = src.checked_add_signed(-delta).expect("shift below bit 0");
    lcp.stream.copy_within(src, prefix, dst);
    lcp.b_start = dst;
    let at = dst + prefix;
    write_delta_at(&mut lcp.stream, at, ell_a + 1);
    if has_b {
        write_delta_at(&mut lcp.stream, at + la, ell_b + 1);
    }
    lcp.e_p = Some(at + la);
    Ok(())
}

/// Replaces the text with its BWT and returns the LCP array as δ-codes.
pub fn build_bwt_lcp_compressed(text: ValidatedText) -> Result<(Bwt, BitLcp)> {
    build_bwt_lcp_compressed_with(text, CompressedOptions::default(), &mut NoProbe)
}

pub fn build_bwt_lcp_compressed_with<P: Probe>(
    text: ValidatedText,
    options: CompressedOptions,
    probe: &mut P,
) -> Result<(Bwt, BitLcp)> {
    let (mut bytes, sentinel) = text.into_parts();
    let n = bytes.len();
    let mut lcp = BitLcp::for_text_len(n, options)?;

    let mut r = n - 1;
    for s in (0..n - 2).rev() {
        let p = step1_find_sentinel(&bytes, sentinel, s, r);
        r = step2_rank(&bytes, s, p);
        let a = c_step2a(&bytes, &lcp, s, p);
        let b = c_step2b(&bytes, &lcp, s, p);
        probe.comparisons((n - 1 - s) as u64 + a.comparisons + b.comparisons);
        step3_step4_place_and_shift(&mut bytes, sentinel, s, p, r);
        c_step4a(&mut lcp, n, s, r, a.ell, b.ell)?;
        probe.compressed_step(
            &StepState {
                s,
                p,
                r,
                p_a1: a.position,
                p_b1: b.position,
                ell_a: a.ell as usize,
                ell_b: b.ell as usize,
            },
            &bytes,
            &lcp,
        );
    }
    lcp.compact();
    Ok((Bwt::from_parts(bytes, r, sentinel), lcp))
}
