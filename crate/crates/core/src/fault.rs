//! Deliberate sign faults used to check that the verification suites are not
//! vacuous. The active fault is thread-local and defaults to `Fault::None`.

use std::cell::Cell;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    None,
    /// `q~` uses `a_i + a_{i+1}` instead of `a_i - a_{i+1}`.
    QtildeSign,
    /// `T~_a` averages with `zeta^(+m a)` instead of `zeta^(-m a)`.
    TProjectorSign,
    /// The correction series in the congruent `psi_*` flips its sign.
    StarCorrectionSign,
}

thread_local! {
    static ACTIVE: Cell<Fault> = const { Cell::new(Fault::None) };
}

pub fn active() -> Fault {
    ACTIVE.with(|f| f.get())
}

pub fn is(f: Fault) -> bool {
    active() == f
}

/// Run `body` with `fault` active, restoring the previous state afterwards.
pub fn with_fault<T>(fault: Fault, body: impl FnOnce() -> T) -> T {
    struct Restore(Fault);
    impl Drop for Restore {
        fn drop(&mut self) {
            ACTIVE.with(|f| f.set(self.0));
        }
    }
    let _guard = Restore(active());
    ACTIVE.with(|f| f.set(fault));
    body()
}
