//! In-place BWT construction by induction on suffix length.
//!
//! After iteration `s` the slice `bytes[s..n]` holds the BWT of the suffix
//! `T_s`, with the sentinel marking the row of `T_s` itself. Each iteration
//! finds where the previous suffix sits, ranks the new one by counting, then
//! inserts it with a one-position shift. O(n²) time, a handful of words of
//! working state.

use crate::probe::{NoProbe, Probe};
use crate::text::{Bwt, StepState, ValidatedText};

/// Position of the sentinel in the region `bytes[s+1..n]`.
///
/// The sentinel always sits where the previous iteration inserted its suffix,
/// so this is just `carried_r` (`n - 1` before the first iteration).
#[inline]
pub fn step1_find_sentinel(bytes: &[u8], sentinel: u8, s: usize, carried_r: usize) -> usize {
    debug_assert_eq!(
        carried_r,
        rescan_sentinel(bytes, sentinel, s),
        "carried rank disagrees with sentinel position"
    );
    carried_r
}

/// Literal scan for the sentinel in `bytes[s+1..n]`.
pub fn rescan_sentinel(bytes: &[u8], sentinel: u8, s: usize) -> usize {
    s + 1
        + bytes[s + 1..]
            .iter()
            .position(|&b| b == sentinel)
            .expect("region holds no sentinel")
}

/// Absolute rank `r` of `T_s` among `T_s..T_{n-1}`.
///
/// Counts symbols `<= c` before the sentinel and `< c` from it onward, where
/// `c = bytes[s]`.
#[inline]
pub fn step2_rank(bytes: &[u8], s: usize, p: usize) -> usize {
    let c = bytes[s];
    let before = bytes[s + 1..p].iter().filter(|&&b| b <= c).count();
    let after = bytes[p..].iter().filter(|&&b| b < c).count();
    s + before + after
}

/// Writes `bytes[s]` over the sentinel at `p`, shifts `bytes[s+1..=r]` one
/// position left and puts the sentinel at `r`.
#[inline]
pub fn step3_step4_place_and_shift(bytes: &mut [u8], sentinel: u8, s: usize, p: usize, r: usize) {
    bytes[p] = bytes[s];
    bytes.copy_within(s + 1..=r, s);
    bytes[r] = sentinel;
}

/// Replaces the text with its BWT.
pub fn build_bwt_inplace(text: ValidatedText) -> Bwt {
    build_bwt_inplace_with(text, &mut NoProbe)
}

pub fn build_bwt_inplace_with<P: Probe>(text: ValidatedText, probe: &mut P) -> Bwt {
    let (mut bytes, sentinel) = text.into_parts();
    let dollar = bwt_inplace(&mut bytes, sentinel, probe);
    Bwt::from_parts(bytes, dollar, sentinel)
}

/// Slice-level driver. `bytes` must satisfy the [`ValidatedText`] invariants
/// for `sentinel`. Returns the final sentinel position.
pub fn bwt_inplace<P: Probe>(bytes: &mut [u8], sentinel: u8, probe: &mut P) -> usize {
    let n = bytes.len();
    debug_assert!(n >= 2 && bytes[n - 1] == sentinel);
    let mut r = n - 1;
    for s in (0..n.saturating_sub(2)).rev() {
        let p = step1_find_sentinel(bytes, sentinel, s, r);
        r = step2_rank(bytes, s, p);
        probe.comparisons((n - 1 - s) as u64);
        step3_step4_place_and_shift(bytes, sentinel, s, p, r);
        probe.bwt_step(
            &StepState {
                s,
                p,
                r,
                ..StepState::default()
            },
            bytes,
        );
    }
    r
}
