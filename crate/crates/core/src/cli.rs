//! Command-line front end.
//!
//! Exit codes are stable: see [`CliError::exit_code`].

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bwt_lcp::build_bwt_lcp_with;
use crate::compressed_lcp::{build_bwt_lcp_compressed_with, CompressedOptions};
use crate::elias::code_len_delta;
use crate::error::Error;
use crate::format::{encode_lcp2, encode_lcpw, lcp_to_text, read_any_lcp, RunReport};
use crate::inplace_bwt::build_bwt_inplace_with;
use crate::oracle::{invert_bwt, OracleIndex};
use crate::probe::{count_allocations, ComparisonCounter};
use crate::text::{LcpArray, ValidatedText, DEFAULT_SENTINEL};

pub const DEFAULT_MAX_INPUT: usize = 1 << 20;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("input is {len} bytes, limit is {max} (raise it with --max-input)")]
    InputTooLarge { len: usize, max: usize },
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0} verification check(s) failed")]
    VerifyFailed(usize),
}

impl CliError {
    /// 0 success, 1 verification failure, 2 usage (clap), 3 I/O,
    /// 4 empty input, 5 misplaced sentinel, 6 sentinel collision,
    /// 7 sentinel not minimal, 8 input too large, 9 malformed file or
    /// stream, 10 malformed BWT, 11 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Io { .. } => 3,
            CliError::InputTooLarge { .. } => 8,
            CliError::Core(e) => match e {
                Error::EmptyInput => 4,
                Error::SentinelMisplaced { .. } => 5,
                Error::SentinelCollision { .. } => 6,
                Error::SentinelNotMinimal { .. } => 7,
                Error::Format(_)
                | Error::TruncatedCode { .. }
                | Error::MalformedUnary { .. }
                | Error::CountMismatch { .. } => 9,
                Error::MalformedBwt(_) => 10,
                _ => 11,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bwtlcp",
    version,
    about = "In-place BWT and LCP array construction"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct InputArgs {
    /// Input file, or `-` for stdin.
    pub input: PathBuf,
    /// Append the sentinel instead of expecting it as the last byte.
    #[arg(long)]
    pub append_sentinel: bool,
    /// Sentinel byte: a single character, a decimal value or `0x..`.
    #[arg(long, value_parser = parse_sentinel, default_value = "0")]
    pub sentinel: u8,
    /// Largest accepted input in bytes.
    #[arg(long, default_value_t = DEFAULT_MAX_INPUT)]
    pub max_input: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LcpFormat {
    /// One decimal value per line.
    Text,
    /// `LCPW` little-endian 64-bit words.
    Binary,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the BWT and LCP array.
    Build {
        #[command(flatten)]
        input: InputArgs,
        /// Emit the LCP array as an Elias-δ stream (`LCP2` file).
        #[arg(long)]
        compressed: bool,
        /// BWT output file; stdout when omitted.
        #[arg(long)]
        out_bwt: Option<PathBuf>,
        /// LCP output file.
        #[arg(long)]
        out_lcp: Option<PathBuf>,
        /// Format of the uncompressed LCP output.
        #[arg(long, value_enum, default_value_t = LcpFormat::Text)]
        lcp_format: LcpFormat,
        /// Write a key=value run report here.
        #[arg(long)]
        emit_report: Option<PathBuf>,
    },
    /// Run every builder against the brute-force oracle.
    Verify {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Reconstruct the text from a BWT file.
    Invert { bwt: PathBuf, dollar_pos: usize },
    /// Decode an LCP file (text, LCPW or LCP2) to one value per line.
    Inspect { lcp: PathBuf },
    /// Time the builders on random texts.
    Bench {
        /// Comma-separated text lengths (sentinel included).
        #[arg(long, value_delimiter = ',', default_values_t = [1024usize, 2048, 4096, 8192])]
        sizes: Vec<usize>,
        /// Alphabet size, 1..=255.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u16).range(1..=255))]
        alphabet: u16,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// CSV output file; stdout when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn parse_sentinel(s: &str) -> Result<u8, String> {
    if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        return u8::from_str_radix(hex, 16).map_err(|e| e.to_string());
    }
    if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
        return s.parse::<u8>().map_err(|e| e.to_string());
    }
    match s.as_bytes() {
        [b] => Ok(*b),
        _ => Err(format!(
            "expected one character, a number or 0x.., got {s:?}"
        )),
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).map_err(io_err(path))?;
        Ok(buf)
    } else {
        fs::read(path).map_err(io_err(path))
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(io_err(path))
}

fn load_text(args: &InputArgs) -> Result<ValidatedText, CliError> {
    let raw = read_input(&args.input)?;
    if raw.len() > args.max_input {
        return Err(CliError::InputTooLarge {
            len: raw.len(),
            max: args.max_input,
        });
    }
    Ok(ValidatedText::new(
        raw,
        args.sentinel,
        args.append_sentinel,
    )?)
}

/// Runs one command, writing primary output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let stdout = Path::new("<stdout>");
    match cli.command {
        Command::Build {
            input,
            compressed,
            out_bwt,
            out_lcp,
            lcp_format,
            emit_report,
        } => {
            let text = load_text(&input)?;
            let n = text.len();
            let mut counter = ComparisonCounter::default();
            let mut report = RunReport {
                input_len: n,
                bwt_bytes: n,
                ..Default::default()
            };
            let started = Instant::now();
            let (bwt, lcp_bytes) = if compressed {
                let (built, allocs) = count_allocations(|| {
                    build_bwt_lcp_compressed_with(text, CompressedOptions::default(), &mut counter)
                });
                report.elapsed_seconds = started.elapsed().as_secs_f64();
                let (bwt, lcp) = built?;
                report.variant = "bwt-lcp-compressed".into();
                report.loop_allocations = allocs;
                report.lcp_bits = Some(lcp.len_bits());
                report.growth_events = lcp.growth_events();
                (bwt, encode_lcp2(&lcp, n))
            } else {
                let mut lcp = LcpArray::<u64>::zeroed(n);
                let (built, allocs) =
                    count_allocations(|| build_bwt_lcp_with(text, &mut lcp, &mut counter));
                report.elapsed_seconds = started.elapsed().as_secs_f64();
                let bwt = built?;
                report.variant = "bwt-lcp".into();
                report.loop_allocations = allocs;
                report.lcp_words = Some(n);
                let bytes = match lcp_format {
                    LcpFormat::Text => lcp_to_text(&lcp).into_bytes(),
                    LcpFormat::Binary => encode_lcpw(&lcp),
                };
                (bwt, bytes)
            };
            report.dollar_pos = bwt.dollar_pos();
            report.comparisons = counter.comparisons;

            match &out_bwt {
                Some(p) => write_file(p, bwt.as_bytes())?,
                None => out.write_all(bwt.as_bytes()).map_err(io_err(stdout))?,
            }
            if let Some(p) = &out_lcp {
                write_file(p, &lcp_bytes)?;
            }
            if let Some(p) = &emit_report {
                write_file(p, report.to_kv().as_bytes())?;
            }
            Ok(())
        }
        Command::Verify { input } => {
            let text = load_text(&input)?;
            let failures = verify(&text, out).map_err(io_err(stdout))?;
            if failures == 0 {
                Ok(())
            } else {
                Err(CliError::VerifyFailed(failures))
            }
        }
        Command::Invert { bwt, dollar_pos } => {
            let bytes = read_input(&bwt)?;
            let text = invert_bwt(&bytes, dollar_pos)?;
            out.write_all(&text).map_err(io_err(stdout))
        }
        Command::Inspect { lcp } => {
            let bytes = read_input(&lcp)?;
            let values = read_any_lcp(&bytes)?;
            out.write_all(lcp_to_text(&values).as_bytes())
                .map_err(io_err(stdout))
        }
        Command::Bench {
            sizes,
            alphabet,
            seed,
            csv,
        } => {
            let table = bench(&sizes, alphabet as u8, seed)?;
            match &csv {
                Some(p) => write_file(p, table.as_bytes()),
                None => out.write_all(table.as_bytes()).map_err(io_err(stdout)),
            }
        }
    }
}

/// Runs every builder and the oracle on `text`, printing one PASS/FAIL line
/// per check. Returns the number of failed checks.
pub fn verify(text: &ValidatedText, out: &mut dyn Write) -> io::Result<usize> {
    let n = text.len();
    let raw = text.as_bytes();
    let oracle = OracleIndex::build(raw);

    let plain = build_bwt_inplace_with(text.clone(), &mut crate::probe::NoProbe);
    let mut lcp = LcpArray::<u64>::zeroed(n);
    let with_lcp = build_bwt_lcp_with(text.clone(), &mut lcp, &mut crate::probe::NoProbe);
    let packed = build_bwt_lcp_compressed_with(
        text.clone(),
        CompressedOptions::default(),
        &mut crate::probe::NoProbe,
    );
    let oracle_lcp: Vec<u64> = oracle.lcp.iter().map(|&v| v as u64).collect();

    let mut checks: Vec<(&str, bool)> = vec![
        ("inplace-bwt", plain.as_bytes() == oracle.bwt.as_slice()),
        (
            "inplace-dollar-pos",
            plain.dollar_pos() == oracle.dollar_pos(),
        ),
    ];
    match &with_lcp {
        Ok(bwt) => {
            checks.push(("bwt-lcp-bwt", bwt.as_bytes() == oracle.bwt.as_slice()));
            checks.push(("bwt-lcp-lcp", lcp[..] == oracle_lcp[..]));
        }
        Err(_) => checks.push(("bwt-lcp", false)),
    }
    match &packed {
        Ok((bwt, bits)) => {
            checks.push(("compressed-bwt", bwt.as_bytes() == oracle.bwt.as_slice()));
            let decoded = bits.decode_lcp::<u64>(n);
            checks.push((
                "compressed-lcp",
                decoded.map(|d| d.into_vec() == oracle_lcp).unwrap_or(false),
            ));
            let expected_bits: usize = oracle
                .lcp
                .iter()
                .map(|&v| code_len_delta(v + 1).unwrap())
                .sum();
            checks.push(("compressed-length", bits.len_bits() == expected_bits));
        }
        Err(_) => checks.push(("compressed", false)),
    }
    checks.push((
        "invert-roundtrip",
        invert_bwt(plain.as_bytes(), plain.dollar_pos()).as_deref() == Ok(raw),
    ));

    let mut failures = 0;
    for (name, ok) in checks {
        writeln!(out, "{} {name}", if ok { "PASS" } else { "FAIL" })?;
        failures += usize::from(!ok);
    }
    Ok(failures)
}

/// Random text of `n - 1` symbols from `1..=alphabet` plus a 0 sentinel.
pub fn random_text(n: usize, alphabet: u8, rng: &mut impl Rng) -> ValidatedText {
    let raw: Vec<u8> = (0..n.saturating_sub(1).max(1))
        .map(|_| rng.gen_range(1..=alphabet))
        .collect();
    ValidatedText::new(raw, DEFAULT_SENTINEL, true).expect("random text is valid")
}

/// CSV rows `n,variant,seconds,comparisons,output_bits` for every size and
/// builder, deterministic in `seed` except for the timings.
pub fn bench(sizes: &[usize], alphabet: u8, seed: u64) -> Result<String, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut csv = String::from("n,variant,seconds,comparisons,output_bits\n");
    for &size in sizes {
        let text = random_text(size, alphabet, &mut rng);
        let n = text.len();

        let mut c = ComparisonCounter::default();
        let t = Instant::now();
        build_bwt_inplace_with(text.clone(), &mut c);
        let secs = t.elapsed().as_secs_f64();
        csv.push_str(&format!("{n},bwt,{secs:.6},{},{}\n", c.comparisons, 8 * n));

        let mut c = ComparisonCounter::default();
        let mut lcp = LcpArray::<u64>::zeroed(n);
        let t = Instant::now();
        build_bwt_lcp_with(text.clone(), &mut lcp, &mut c)?;
        let secs = t.elapsed().as_secs_f64();
        csv.push_str(&format!(
            "{n},bwt-lcp,{secs:.6},{},{}\n",
            c.comparisons,
            8 * n + 64 * n
        ));

        let mut c = ComparisonCounter::default();
        let t = Instant::now();
        let (_, bits) = build_bwt_lcp_compressed_with(text, CompressedOptions::default(), &mut c)?;
        let secs = t.elapsed().as_secs_f64();
        csv.push_str(&format!(
            "{n},bwt-lcp-compressed,{secs:.6},{},{}\n",
            c.comparisons,
            8 * n + bits.len_bits()
        ));
    }
    Ok(csv)
}
