//! Step-by-step invariants checked against the brute-force oracle.

use bwtlcp::bwt_lcp::{build_bwt_lcp_with, bwt_lcp};
use bwtlcp::compressed_lcp::{build_bwt_lcp_compressed_with, CompressedOptions};
use bwtlcp::elias::code_len_delta;
use bwtlcp::inplace_bwt::{build_bwt_inplace_with, rescan_sentinel};
use bwtlcp::oracle::{lcp_of, OracleIndex};
use bwtlcp::probe::Probe;
use bwtlcp::{BitLcp, LcpArray, LcpWord, StepState, ValidatedText};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SENTINEL: u8 = b'$';

fn strings_over(alphabet: &[u8], max_len: usize) -> Vec<Vec<u8>> {
    let mut all = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

fn text(body: &[u8]) -> ValidatedText {
    ValidatedText::new(body.to_vec(), SENTINEL, true).unwrap()
}

fn sorted(mut v: Vec<u8>) -> Vec<u8> {
    v.sort_unstable();
    v
}

fn check_bounds(st: &StepState, n: usize) {
    assert!(st.s < st.p && st.p < n, "{st:?}");
    assert!(st.s <= st.r && st.r < n, "{st:?}");
    if let Some(a) = st.p_a1 {
        assert!(st.s < a && a < st.p, "{st:?}");
    }
    if let Some(b) = st.p_b1 {
        assert!(st.p < b && b < n, "{st:?}");
    }
}

/// Checks the BWT-only loop invariants after each step.
struct BwtChecker {
    original: Vec<u8>,
    steps: usize,
}

impl Probe for BwtChecker {
    fn bwt_step(&mut self, st: &StepState, bytes: &[u8]) {
        let n = bytes.len();
        let s = st.s;
        check_bounds(st, n);
        let suffix = &self.original[s..];
        let oracle = OracleIndex::build(suffix);
        assert_eq!(
            &bytes[s..],
            oracle.bwt.as_slice(),
            "s={s} text={:?}",
            self.original
        );
        assert_eq!(sorted(bytes[s..].to_vec()), sorted(suffix.to_vec()));
        let sentinels = bytes[s..].iter().filter(|&&b| b == SENTINEL).count();
        assert_eq!(sentinels, 1);
        assert_eq!(bytes[st.r], SENTINEL);
        if s > 0 {
            assert_eq!(rescan_sentinel(bytes, SENTINEL, s - 1), st.r);
        }
        self.steps += 1;
    }
}

#[test]
fn bwt_loop_invariant_on_binary_strings() {
    for w in strings_over(b"AB", 10) {
        let t = text(&w);
        let mut checker = BwtChecker {
            original: t.as_bytes().to_vec(),
            steps: 0,
        };
        let n = t.len();
        build_bwt_inplace_with(t, &mut checker);
        assert_eq!(checker.steps, n - 2);
    }
}

/// Checks BWT and LCP region against the oracle of the current suffix.
struct FullStateChecker {
    original: Vec<u8>,
}

impl Probe for FullStateChecker {
    fn lcp_step<W: LcpWord>(&mut self, st: &StepState, bytes: &[u8], lcp: &[W]) {
        let s = st.s;
        check_bounds(st, bytes.len());
        let suffix = &self.original[s..];
        let oracle = OracleIndex::build(suffix);
        assert_eq!(&bytes[s..], oracle.bwt.as_slice());
        let region: Vec<usize> = lcp[s..].iter().map(|v| v.as_usize()).collect();
        assert_eq!(region, oracle.lcp, "s={s} text={:?}", self.original);

        // ell_a and ell_b by direct prefix comparison with the neighbours of
        // the newly inserted suffix.
        let rank = st.r - s;
        assert_eq!(oracle.sa[rank], 0);
        let pred = &suffix[oracle.sa[rank - 1]..];
        assert_eq!(st.ell_a, lcp_of(suffix, pred));
        let succ = oracle
            .sa
            .get(rank + 1)
            .map_or(0, |&j| lcp_of(suffix, &suffix[j..]));
        assert_eq!(st.ell_b, succ);
    }
}

#[test]
fn full_state_invariant_on_ternary_strings() {
    for w in strings_over(b"ABC", 9) {
        let t = text(&w);
        let mut lcp = LcpArray::<u16>::zeroed(t.len());
        let mut checker = FullStateChecker {
            original: t.as_bytes().to_vec(),
        };
        build_bwt_lcp_with(t, &mut lcp, &mut checker).unwrap();
    }
}

/// Compares the compressed stream with the oracle after every step.
struct LockstepChecker {
    original: Vec<u8>,
}

impl Probe for LockstepChecker {
    fn compressed_step(&mut self, st: &StepState, bytes: &[u8], lcp: &BitLcp) {
        let s = st.s;
        let oracle = OracleIndex::build(&self.original[s..]);
        assert_eq!(&bytes[s..], oracle.bwt.as_slice());
        let decoded: Vec<usize> = lcp
            .decode_all()
            .unwrap()
            .into_iter()
            .map(|v| v as usize)
            .collect();
        assert_eq!(decoded, oracle.lcp, "s={s} text={:?}", self.original);
        let bits: usize = oracle
            .lcp
            .iter()
            .map(|&v| code_len_delta(v as u64 + 1).unwrap())
            .sum();
        assert_eq!(lcp.len_bits(), bits);
    }
}

#[test]
fn compressed_lockstep_on_binary_strings() {
    for w in strings_over(b"AB", 10) {
        let t = text(&w);
        let mut checker = LockstepChecker {
            original: t.as_bytes().to_vec(),
        };
        build_bwt_lcp_compressed_with(t, CompressedOptions::default(), &mut checker).unwrap();
    }
}

#[test]
fn compressed_lockstep_with_tiny_buffer() {
    let options = CompressedOptions {
        initial_bits: Some(2),
        max_bits: None,
    };
    for w in strings_over(b"ABC", 6) {
        let t = text(&w);
        let mut checker = LockstepChecker {
            original: t.as_bytes().to_vec(),
        };
        build_bwt_lcp_compressed_with(t, options, &mut checker).unwrap();
    }
}

#[test]
fn final_output_on_random_byte_strings() {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=256);
        let body: Vec<u8> = (0..n - 1).map(|_| rng.gen_range(1..=255u8)).collect();
        let t = ValidatedText::new(body, 0, true).unwrap();
        let oracle = OracleIndex::build(t.as_bytes());
        let (bwt, lcp) = bwt_lcp::<u32>(t).unwrap();
        assert_eq!(bwt.as_bytes(), oracle.bwt.as_slice());
        assert_eq!(bwt.dollar_pos(), oracle.dollar_pos());
        let lcp = lcp.to_usize_vec();
        assert_eq!(lcp, oracle.lcp);
        assert_eq!(lcp[0], 0);
        for (i, &v) in lcp.iter().enumerate().skip(1) {
            assert!(v <= n - 1 - oracle.sa[i].max(oracle.sa[i - 1]));
        }
    }
}

#[test]
fn average_code_length_on_random_text() {
    let n = 10_000usize;
    let mut rng = ChaCha8Rng::seed_from_u64(357);
    let body: Vec<u8> = (0..n - 1).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect();
    let (_, lcp) = bwtlcp::compressed_lcp::build_bwt_lcp_compressed(text(&body)).unwrap();
    let mean = lcp.len_bits() as f64 / n as f64;
    let ll = (n as f64).log2() + 2.0;
    let bound = 2.0 * ll.log2() + ll.log2() + 1.0;
    assert!(mean <= bound, "mean code length {mean} > {bound}");
}
