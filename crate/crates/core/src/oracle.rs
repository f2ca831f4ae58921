//! Brute-force suffix array, LCP, BWT, rmq and BWT inversion.
//!
//! These are the ground truth for every test of the in-place builders. They
//! allocate freely and make no attempt at speed.

use crate::error::{Error, Result};

/// Suffix array, LCP array and BWT of one text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleIndex {
    pub sa: Vec<usize>,
    pub lcp: Vec<usize>,
    pub bwt: Vec<u8>,
}

impl OracleIndex {
    /// `text` must end in a unique, minimal sentinel.
    pub fn build(text: &[u8]) -> Self {
        let sa = naive_sa(text);
        let lcp = naive_lcp(text, &sa);
        let bwt = bwt_from_sa(text, &sa);
        Self { sa, lcp, bwt }
    }

    /// Row of the whole text, where the BWT holds the sentinel.
    pub fn dollar_pos(&self) -> usize {
        self.sa.iter().position(|&i| i == 0).unwrap_or(0)
    }
}

/// Suffix start positions in lexicographic order, by comparison sort.
pub fn naive_sa(text: &[u8]) -> Vec<usize> {
    let mut sa: Vec<usize> = (0..text.len()).collect();
    sa.sort_by(|&a, &b| text[a..].cmp(&text[b..]));
    sa
}

/// Length of the longest common prefix of two strings.
pub fn lcp_of(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

pub fn naive_lcp(text: &[u8], sa: &[usize]) -> Vec<usize> {
    let mut lcp = vec![0; sa.len()];
    for i in 1..sa.len() {
        lcp[i] = lcp_of(&text[sa[i]..], &text[sa[i - 1]..]);
    }
    lcp
}

/// `bwt[i] = text[sa[i] - 1]`, or the sentinel (last byte) when `sa[i] = 0`.
pub fn bwt_from_sa(text: &[u8], sa: &[usize]) -> Vec<u8> {
    let last = *text.last().expect("empty text");
    sa.iter()
        .map(|&i| if i == 0 { last } else { text[i - 1] })
        .collect()
}

/// Minimum of `lcp[i+1..=j]`.
pub fn rmq_naive(lcp: &[usize], i: usize, j: usize) -> Result<usize> {
    if i >= j || j >= lcp.len() {
        return Err(Error::BadRange {
            i,
            j,
            len: lcp.len(),
        });
    }
    Ok(*lcp[i + 1..=j].iter().min().unwrap())
}

/// Reconstructs the text from its BWT by LF-mapping.
///
/// The byte at `dollar_pos` is taken as the sentinel; it must be unique and
/// smaller than every other byte.
pub fn invert_bwt(bwt: &[u8], dollar_pos: usize) -> Result<Vec<u8>> {
    let n = bwt.len();
    if n == 0 {
        return Err(Error::MalformedBwt("empty"));
    }
    if dollar_pos >= n {
        return Err(Error::MalformedBwt("sentinel position out of range"));
    }
    let sentinel = bwt[dollar_pos];
    for (i, &b) in bwt.iter().enumerate() {
        if i != dollar_pos && b <= sentinel {
            return Err(Error::MalformedBwt(
                "sentinel is not the unique minimal byte",
            ));
        }
    }

    let mut counts = [0usize; 256];
    for &b in bwt {
        counts[b as usize] += 1;
    }
    let mut first = [0usize; 256];
    let mut acc = 0;
    for (c, &k) in counts.iter().enumerate() {
        first[c] = acc;
        acc += k;
    }
    // occ[i] = occurrences of bwt[i] in bwt[..i]
    let mut seen = [0usize; 256];
    let occ: Vec<usize> = bwt
        .iter()
        .map(|&b| {
            let k = seen[b as usize];
            seen[b as usize] += 1;
            k
        })
        .collect();
    let lf = |i: usize| first[bwt[i] as usize] + occ[i];

    let mut text = vec![0u8; n];
    text[n - 1] = sentinel;
    // Row 0 is the suffix made of the sentinel alone.
    let mut row = 0;
    for k in (0..n - 1).rev() {
        if row == dollar_pos {
            return Err(Error::MalformedBwt("LF cycle shorter than the text"));
        }
        text[k] = bwt[row];
        row = lf(row);
    }
    if row != dollar_pos {
        return Err(Error::MalformedBwt("LF cycle does not close"));
    }
    Ok(text)
}
