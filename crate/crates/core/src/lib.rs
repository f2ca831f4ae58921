//! In-place construction of the Burrows-Wheeler transform together with the
//! LCP array, using a constant number of working variables beyond the text
//! and the output.
//!
//! * [`inplace_bwt`]: BWT only, overwriting the text.
//! * [`bwt_lcp`]: BWT plus an uncompressed LCP array in caller storage.
//! * [`compressed_lcp`]: BWT plus the LCP array as Elias-δ codes.
//! * [`oracle`]: brute-force reference used by the tests and `verify`.
//!
//! ```
//! use bwtlcp::{bwt_lcp::bwt_lcp, ValidatedText};
//!
//! let text = ValidatedText::new(b"BANANA".to_vec(), b'$', true).unwrap();
//! let (bwt, lcp) = bwt_lcp::<u32>(text).unwrap();
//! assert_eq!(bwt.as_bytes(), b"ANNB$AA");
//! assert_eq!(&lcp[..], [0, 0, 1, 3, 0, 0, 2]);
//! ```

pub mod bwt_lcp;
pub mod cli;
pub mod compressed_lcp;
pub mod elias;
pub mod error;
pub mod format;
pub mod inplace_bwt;
pub mod oracle;
pub mod probe;
pub mod text;

pub use compressed_lcp::{BitLcp, CompressedOptions};
pub use elias::{BitCursor, BitSeq};
pub use error::{Error, Result};
pub use text::{Bwt, LcpArray, LcpWord, StepState, ValidatedText, DEFAULT_SENTINEL};

/// LCP array with 32-bit entries (texts shorter than 2³² bytes).
pub type LcpArray32 = LcpArray<u32>;
/// LCP array with 64-bit entries.
pub type LcpArray64 = LcpArray<u64>;
/// LCP array with machine-word entries.
pub type LcpArrayUsize = LcpArray<usize>;
