//! Simultaneous in-place BWT and LCP construction.
//!
//! Extends the in-place BWT induction: when `T_s` is inserted at rank `r`,
//! only the two lcp values next to it change. Both are obtained from the
//! current BWT and LCP region by scanning outward from the sentinel for the
//! first occurrence of `T[s]`, folding the running minimum of the visited lcp
//! values on the way (that minimum is the rmq between the two rows).
//!
//! Working state beyond the BWT loop is four words: the two neighbor
//! positions and their lcp values.

use crate::error::{Error, Result};
use crate::inplace_bwt::{step1_find_sentinel, step2_rank, step3_step4_place_and_shift};
use crate::probe::{NoProbe, Probe};
use crate::text::{Bwt, LcpArray, LcpWord, StepState, ValidatedText};

/// Result of one neighbor scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeighborScan<W> {
    /// Position of the first `T[s]` met by the scan, `None` if there is none.
    pub position: Option<usize>,
    /// lcp of `T_s` with the neighbor suffix.
    pub ell: W,
    /// Symbols compared.
    pub comparisons: u64,
}

/// lcp of `T_s` with its predecessor among `T_{s+1}..T_{n-1}`.
///
/// Scans `bytes[s+1..p]` backward from `p - 1`. The scan stops at `s` at the
/// latest, since `bytes[s]` is the symbol being searched.
#[inline]
pub fn step2a_ell_a<W: LcpWord>(bytes: &[u8], lcp: &[W], s: usize, p: usize) -> NeighborScan<W> {
    let c = bytes[s];
    let mut i = p - 1;
    let mut min = lcp[p];
    while bytes[i] != c {
        if lcp[i] < min {
            min = lcp[i];
        }
        i -= 1;
    }
    let comparisons = (p - i) as u64;
    if i == s {
        NeighborScan {
            position: None,
            ell: W::zero(),
            comparisons,
        }
    } else {
        NeighborScan {
            position: Some(i),
            ell: min + W::one(),
            comparisons,
        }
    }
}

/// lcp of `T_s` with its successor among `T_{s+1}..T_{n-1}`.
///
/// Scans `bytes[p+1..n]` forward.
#[inline]
pub fn step2b_ell_b<W: LcpWord>(bytes: &[u8], lcp: &[W], s: usize, p: usize) -> NeighborScan<W> {
    let n = bytes.len();
    let c = bytes[s];
    let mut i = p + 1;
    if i == n {
        return NeighborScan {
            position: None,
            ell: W::zero(),
            comparisons: 0,
        };
    }
    let mut min = lcp[i];
    loop {
        if bytes[i] == c {
            return NeighborScan {
                position: Some(i),
                ell: min + W::one(),
                comparisons: (i - p) as u64,
            };
        }
        i += 1;
        if i == n {
            return NeighborScan {
                position: None,
                ell: W::zero(),
                comparisons: (n - 1 - p) as u64,
            };
        }
        if lcp[i] < min {
            min = lcp[i];
        }
    }
}

/// Shifts `lcp[s+1..=r]` one position left, stores `ell_a` at `r` and, when
/// `r + 1 < n`, `ell_b` at `r + 1`.
#[inline]
pub fn step4a_shift_and_store<W: LcpWord>(lcp: &mut [W], s: usize, r: usize, ell_a: W, ell_b: W) {
    lcp.copy_within(s + 1..=r, s);
    lcp[r] = ell_a;
    if r + 1 < lcp.len() {
        lcp[r + 1] = ell_b;
    }
}

/// Replaces the text with its BWT and fills `lcp` with its LCP array.
///
/// `lcp` is output storage and must have the text's length.
pub fn build_bwt_lcp<W: LcpWord>(text: ValidatedText, lcp: &mut LcpArray<W>) -> Result<Bwt> {
    build_bwt_lcp_with(text, lcp, &mut NoProbe)
}

pub fn build_bwt_lcp_with<W: LcpWord, P: Probe>(
    text: ValidatedText,
    lcp: &mut LcpArray<W>,
    probe: &mut P,
) -> Result<Bwt> {
    let (mut bytes, sentinel) = text.into_parts();
    let dollar = bwt_lcp_inplace(&mut bytes, sentinel, lcp, probe)?;
    Ok(Bwt::from_parts(bytes, dollar, sentinel))
}

/// Allocates the LCP storage and runs [`build_bwt_lcp`].
pub fn bwt_lcp<W: LcpWord>(text: ValidatedText) -> Result<(Bwt, LcpArray<W>)> {
    let mut lcp = LcpArray::zeroed(text.len());
    let bwt = build_bwt_lcp(text, &mut lcp)?;
    Ok((bwt, lcp))
}

/// Slice-level driver. `bytes` must satisfy the [`ValidatedText`] invariants
/// for `sentinel`. Returns the final sentinel position.
pub fn bwt_lcp_inplace<W: LcpWord, P: Probe>(
    bytes: &mut [u8],
    sentinel: u8,
    lcp: &mut [W],
    probe: &mut P,
) -> Result<usize> {
    let n = bytes.len();
    if lcp.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: lcp.len(),
        });
    }
    if !W::holds(n.saturating_sub(1)) {
        return Err(Error::WordTooNarrow { needed: n - 1 });
    }
    debug_assert!(n >= 2 && bytes[n - 1] == sentinel);

    lcp[n - 1] = W::zero();
    lcp[n - 2] = W::zero();
    let mut r = n - 1;
    for s in (0..n - 2).rev() {
        let p = step1_find_sentinel(bytes, sentinel, s, r);
        r = step2_rank(bytes, s, p);
        let a = step2a_ell_a(bytes, lcp, s, p);
        let b = step2b_ell_b(bytes, lcp, s, p);
        probe.comparisons((n - 1 - s) as u64 + a.comparisons + b.comparisons);
        step3_step4_place_and_shift(bytes, sentinel, s, p, r);
        step4a_shift_and_store(lcp, s, r, a.ell, b.ell);
        probe.lcp_step(
            &StepState {
                s,
                p,
                r,
                p_a1: a.position,
                p_b1: b.position,
                ell_a: a.ell.as_usize(),
                ell_b: b.ell.as_usize(),
            },
            bytes,
            lcp,
        );
    }
    Ok(r)
}
