//! Instrumentation hooks for the construction loops.
//!
//! All hooks default to no-ops, so the uninstrumented builds monomorphize to
//! the bare loops. [`CountingAllocator`] lets a binary observe heap traffic
//! of a build when installed as the global allocator.

use std::alloc::{GlobalAlloc, Layout, System};
use std::cell::Cell;

use crate::compressed_lcp::BitLcp;
use crate::text::{LcpWord, StepState};

/// Observer of the induction loops.
///
/// `bytes` and `lcp` are the whole buffers; the active region after step `s`
/// is `s..n`.
pub trait Probe {
    /// `count` symbol comparisons were performed.
    #[inline]
    fn comparisons(&mut self, _count: u64) {}

    /// Called after an iteration of the BWT-only build.
    #[inline]
    fn bwt_step(&mut self, _state: &StepState, _bytes: &[u8]) {}

    /// Called after an iteration of the BWT+LCP build.
    #[inline]
    fn lcp_step<W: LcpWord>(&mut self, _state: &StepState, _bytes: &[u8], _lcp: &[W]) {}

    /// Called after an iteration of the compressed build.
    #[inline]
    fn compressed_step(&mut self, _state: &StepState, _bytes: &[u8], _lcp: &BitLcp) {}
}

/// Probe that observes nothing.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoProbe;

impl Probe for NoProbe {}

/// Counts symbol comparisons only.
#[derive(Debug, Default, Clone, Copy)]
pub struct ComparisonCounter {
    pub comparisons: u64,
}

impl Probe for ComparisonCounter {
    #[inline]
    fn comparisons(&mut self, count: u64) {
        self.comparisons += count;
    }
}

/// Records every [`StepState`] of a run.
#[derive(Debug, Default, Clone)]
pub struct StepRecorder {
    pub steps: Vec<StepState>,
}

impl Probe for StepRecorder {
    fn bwt_step(&mut self, state: &StepState, _bytes: &[u8]) {
        self.steps.push(*state);
    }

    fn lcp_step<W: LcpWord>(&mut self, state: &StepState, _bytes: &[u8], _lcp: &[W]) {
        self.steps.push(*state);
    }

    fn compressed_step(&mut self, state: &StepState, _bytes: &[u8], _lcp: &BitLcp) {
        self.steps.push(*state);
    }
}

thread_local! {
    static ARMED: Cell<bool> = const { Cell::new(false) };
    static ALLOCATIONS: Cell<u64> = const { Cell::new(0) };
}

/// System allocator wrapper that counts allocations made by threads inside
/// [`count_allocations`].
pub struct CountingAllocator;

unsafe impl GlobalAlloc for CountingAllocator {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        note_allocation();
        System.alloc(layout)
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        note_allocation();
        System.alloc_zeroed(layout)
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        note_allocation();
        System.realloc(ptr, layout, new_size)
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout)
    }
}

#[inline]
fn note_allocation() {
    if ARMED.try_with(Cell::get).unwrap_or(false) {
        let _ = ALLOCATIONS.try_with(|c| c.set(c.get() + 1));
    }
}

/// Runs `f` and returns how many heap allocations (including reallocations)
/// the current thread made meanwhile.
///
/// Always reports 0 unless [`CountingAllocator`] is the global allocator.
pub fn count_allocations<R>(f: impl FnOnce() -> R) -> (R, u64) {
    let before = ALLOCATIONS.with(Cell::get);
    let was_armed = ARMED.with(|a| a.replace(true));
    let out = f();
    ARMED.with(|a| a.set(was_armed));
    let after = ALLOCATIONS.with(Cell::get);
    (out, after - before)
}
