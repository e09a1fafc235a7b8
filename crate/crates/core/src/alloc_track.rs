//! Per-thread allocation accounting.
//!
//! [`TrackingAllocator`] wraps another allocator and keeps, for every thread,
//! the number of live bytes it allocated and the high-water mark of that
//! number. [`measure`] uses this to report the peak auxiliary memory of a
//! closure. Counters are thread-local so concurrently running tests do not
//! see each other's allocations.

use std::alloc::{GlobalAlloc, Layout};
use std::cell::Cell;
use std::sync::atomic::{AtomicBool, Ordering};

thread_local! {
    static LIVE: Cell<isize> = const { Cell::new(0) };
    static PEAK: Cell<isize> = const { Cell::new(0) };
}

static INSTALLED: AtomicBool = AtomicBool::new(false);

pub struct TrackingAllocator<A> {
    inner: A,
}

impl<A> TrackingAllocator<A> {
    pub const fn new(inner: A) -> Self {
        Self { inner }
    }
}

#[inline]
fn record(delta: isize) {
    let _ = LIVE.try_with(|live| {
        let now = live.get() + delta;
        live.set(now);
        let _ = PEAK.try_with(|peak| {
            if now > peak.get() {
                peak.set(now);
            }
        });
    });
}

unsafe impl<A: GlobalAlloc> GlobalAlloc for TrackingAllocator<A> {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let ptr = self.inner.alloc(layout);
        if !ptr.is_null() {
            INSTALLED.store(true, Ordering::Relaxed);
            record(layout.size() as isize);
        }
        ptr
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        let ptr = self.inner.alloc_zeroed(layout);
        if !ptr.is_null() {
            INSTALLED.store(true, Ordering::Relaxed);
            record(layout.size() as isize);
        }
        ptr
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        self.inner.dealloc(ptr, layout);
        record(-(layout.size() as isize));
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        let new_ptr = self.inner.realloc(ptr, layout, new_size);
        if !new_ptr.is_null() {
            record(new_size as isize - layout.size() as isize);
        }
        new_ptr
    }
}

/// True once a [`TrackingAllocator`] has served at least one allocation, i.e.
/// it is installed as the global allocator.
pub fn is_installed() -> bool {
    INSTALLED.load(Ordering::Relaxed)
}

/// Bytes currently allocated (and not yet freed) by this thread.
pub fn live_bytes() -> isize {
    LIVE.with(Cell::get)
}

/// Runs `f` and returns its result with the peak number of bytes it had
/// allocated at any point, relative to the live bytes when it started.
/// Memory still held by the returned value counts towards the peak.
pub fn measure<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let baseline = live_bytes();
    PEAK.with(|p| p.set(baseline));
    let out = f();
    let peak = PEAK.with(Cell::get);
    (out, (peak - baseline).max(0) as u64)
}

#[cfg(all(test, feature = "global-tracking"))]
mod tests {
    use super::*;

    #[test]
    fn counts_a_vector_allocation() {
        let (v, peak) = measure(|| vec![0u64; 1000]);
        assert!(is_installed());
        assert_eq!(v.len(), 1000);
        assert_eq!(peak, 8000);
    }

    #[test]
    fn peak_survives_frees() {
        let ((), peak) = measure(|| {
            let a = vec![1u8; 4096];
            drop(a);
            let b = vec![1u8; 1024];
            drop(b);
        });
        assert_eq!(peak, 4096);
    }

    #[test]
    fn growth_is_tracked_through_realloc() {
        let (v, peak) = measure(|| {
            let mut v: Vec<u32> = Vec::with_capacity(1);
            v.extend(0..100u32);
            v.shrink_to_fit();
            v
        });
        assert_eq!(v.capacity(), 100);
        assert!(peak >= 400);
    }

    #[test]
    fn nothing_allocated_reports_zero() {
        let (x, peak) = measure(|| 1 + 1);
        assert_eq!(x, 2);
        assert_eq!(peak, 0);
    }
}
