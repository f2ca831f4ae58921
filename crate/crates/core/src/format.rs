//! On-disk formats for LCP arrays and run reports.
//!
//! * text: one decimal value per line;
//! * `LCPW`: magic, 8-byte little-endian `n`, then `n` little-endian u64s;
//! * `LCP2`: magic, version byte, 8-byte little-endian `n`, then the
//!   serialized δ-code stream (8-byte little-endian bit length followed by
//!   the bits packed big-endian, last byte zero-padded).

use std::fmt::Write as _;

use crate::compressed_lcp::BitLcp;
use crate::elias::BitSeq;
use crate::error::{Error, Result};
use crate::text::LcpWord;

pub const LCPW_MAGIC: &[u8; 4] = b"LCPW";
pub const LCP2_MAGIC: &[u8; 4] = b"LCP2";
pub const LCP2_VERSION: u8 = 1;

pub fn lcp_to_text<W: LcpWord>(lcp: &[W]) -> String {
    let mut out = String::with_capacity(lcp.len() * 3);
    for v in lcp {
        writeln!(out, "{}", v.as_u64()).unwrap();
    }
    out
}

pub fn lcp_from_text(s: &str) -> Result<Vec<u64>> {
    s.split_ascii_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|e| Error::Format(format!("bad LCP value {tok:?}: {e}")))
        })
        .collect()
}

pub fn encode_lcpw<W: LcpWord>(lcp: &[W]) -> Vec<u8> {
    let mut out = Vec::with_capacity(12 + 8 * lcp.len());
    out.extend_from_slice(LCPW_MAGIC);
    out.extend_from_slice(&(lcp.len() as u64).to_le_bytes());
    for v in lcp {
        out.extend_from_slice(&v.as_u64().to_le_bytes());
    }
    out
}

fn read_u64(bytes: &[u8], at: usize) -> Result<u64> {
    bytes
        .get(at..at + 8)
        .map(|b| u64::from_le_bytes(b.try_into().unwrap()))
        .ok_or_else(|| Error::Format("unexpected end of file".into()))
}

fn read_len(bytes: &[u8], at: usize) -> Result<usize> {
    usize::try_from(read_u64(bytes, at)?)
        .map_err(|_| Error::Format("length overflows usize".into()))
}

pub fn decode_lcpw(bytes: &[u8]) -> Result<Vec<u64>> {
    if bytes.get(..4) != Some(LCPW_MAGIC) {
        return Err(Error::Format("missing LCPW magic".into()));
    }
    let n = read_len(bytes, 4)?;
    let body = &bytes[12..];
    if n.checked_mul(8) != Some(body.len()) {
        return Err(Error::Format(format!(
            "LCPW header says {n} values, payload has {} bytes",
            body.len()
        )));
    }
    Ok(body
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect())
}

/// Serializes a built stream; `n` is the number of codes it holds.
pub fn encode_lcp2(lcp: &BitLcp, n: usize) -> Vec<u8> {
    let mut compact = BitSeq::zeroed(lcp.len_bits());
    compact.copy_from(lcp.stream(), lcp.b_start(), lcp.len_bits(), 0);
    let mut out = Vec::with_capacity(13 + 8 + lcp.len_bits().div_ceil(8));
    out.extend_from_slice(LCP2_MAGIC);
    out.push(LCP2_VERSION);
    out.extend_from_slice(&(n as u64).to_le_bytes());
    out.extend_from_slice(&compact.serialize());
    out
}

/// Parses an `LCP2` file into the code count and stream.
pub fn decode_lcp2(bytes: &[u8]) -> Result<(usize, BitLcp)> {
    if bytes.get(..4) != Some(LCP2_MAGIC) {
        return Err(Error::Format("missing LCP2 magic".into()));
    }
    match bytes.get(4) {
        Some(&LCP2_VERSION) => {}
        Some(v) => return Err(Error::Format(format!("unsupported LCP2 version {v}"))),
        None => return Err(Error::Format("unexpected end of file".into())),
    }
    let n = read_len(bytes, 5)?;
    let (stream, used) = BitSeq::deserialize(&bytes[13..])?;
    if 13 + used != bytes.len() {
        return Err(Error::Format("trailing bytes after LCP2 stream".into()));
    }
    Ok((n, BitLcp::from_stream(stream)))
}

/// Reads any of the three LCP formats, recognized by magic.
pub fn read_any_lcp(bytes: &[u8]) -> Result<Vec<u64>> {
    match bytes.get(..4) {
        Some(m) if m == LCPW_MAGIC => decode_lcpw(bytes),
        Some(m) if m == LCP2_MAGIC => {
            let (n, lcp) = decode_lcp2(bytes)?;
            Ok(lcp.decode_lcp::<u64>(n)?.into_vec())
        }
        _ => {
            let s = std::str::from_utf8(bytes)
                .map_err(|_| Error::Format("unrecognized LCP file".into()))?;
            lcp_from_text(s)
        }
    }
}

/// Summary of one build.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunReport {
    pub variant: String,
    pub input_len: usize,
    pub dollar_pos: usize,
    pub elapsed_seconds: f64,
    /// Heap allocations made during the build call (0 unless the binary
    /// installs the counting allocator).
    pub loop_allocations: u64,
    pub bwt_bytes: usize,
    pub lcp_words: Option<usize>,
    pub lcp_bits: Option<usize>,
    pub growth_events: usize,
    pub comparisons: u64,
}

impl RunReport {
    /// Flat `key=value` lines.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "variant={}", self.variant).unwrap();
        writeln!(out, "input_len={}", self.input_len).unwrap();
        writeln!(out, "dollar_pos={}", self.dollar_pos).unwrap();
        writeln!(out, "elapsed_seconds={:.6}", self.elapsed_seconds).unwrap();
        writeln!(out, "loop_allocations={}", self.loop_allocations).unwrap();
        writeln!(out, "bwt_bytes={}", self.bwt_bytes).unwrap();
        if let Some(w) = self.lcp_words {
            writeln!(out, "lcp_words={w}").unwrap();
        }
        if let Some(b) = self.lcp_bits {
            writeln!(out, "lcp_bits={b}").unwrap();
        }
        writeln!(out, "growth_events={}", self.growth_events).unwrap();
        writeln!(out, "comparisons={}", self.comparisons).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compressed_lcp::build_bwt_lcp_compressed;
    use crate::text::ValidatedText;

    #[test]
    fn text_format() {
        assert_eq!(lcp_to_text(&[0u32, 0, 1, 3]), "0\n0\n1\n3\n");
        assert_eq!(lcp_from_text("0\n0\n1\n3\n").unwrap(), [0, 0, 1, 3]);
        assert!(lcp_from_text("1 x").is_err());
    }

    #[test]
    fn lcpw_layout() {
        let bytes = encode_lcpw(&[0u32, 2]);
        assert_eq!(&bytes[..4], b"LCPW");
        assert_eq!(&bytes[4..12], &2u64.to_le_bytes());
        assert_eq!(&bytes[12..20], &0u64.to_le_bytes());
        assert_eq!(&bytes[20..], &2u64.to_le_bytes());
        assert_eq!(decode_lcpw(&bytes).unwrap(), [0, 2]);
        assert!(decode_lcpw(&bytes[..19]).is_err());
        assert!(decode_lcpw(b"LCPX").is_err());
    }

    #[test]
    fn lcp2_layout() {
        let t = ValidatedText::new(b"x$".to_vec(), b'$', false).unwrap();
        let (_, lcp) = build_bwt_lcp_compressed(t).unwrap();
        let bytes = encode_lcp2(&lcp, 2);
        let mut expected = b"LCP2".to_vec();
        expected.push(1);
        expected.extend_from_slice(&2u64.to_le_bytes());
        expected.extend_from_slice(&2u64.to_le_bytes());
        expected.push(0b1100_0000);
        assert_eq!(bytes, expected);
        let (n, back) = decode_lcp2(&bytes).unwrap();
        assert_eq!(n, 2);
        assert_eq!(back.decode_all().unwrap(), [0, 0]);
        assert_eq!(read_any_lcp(&bytes).unwrap(), [0, 0]);

        let mut bad = bytes.clone();
        bad[4] = 9;
        assert!(decode_lcp2(&bad).is_err());
        bad = bytes.clone();
        bad.push(0);
        assert!(decode_lcp2(&bad).is_err());
    }

    #[test]
    fn report_lines() {
        let r = RunReport {
            variant: "bwt-lcp".into(),
            input_len: 7,
            lcp_words: Some(7),
            ..Default::default()
        };
        let kv = r.to_kv();
        assert!(kv.contains("variant=bwt-lcp\n"));
        assert!(kv.contains("lcp_words=7\n"));
        assert!(!kv.contains("lcp_bits"));
    }
}
