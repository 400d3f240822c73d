// Recursive traversals over terms run through this so that very deep
// residuals (a long K4 chain nests one level per step) cannot exhaust the
// thread stack.

const RED_ZONE: usize = 128 * 1024;
const SEGMENT: usize = 4 * 1024 * 1024;

#[inline]
pub(crate) fn guarded<R>(f: impl FnOnce() -> R) -> R {
    stacker::maybe_grow(RED_ZONE, SEGMENT, f)
}
