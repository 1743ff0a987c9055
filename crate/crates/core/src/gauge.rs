//! Live element-slot accounting.
//!
//! Every [`ElementSet`](crate::ElementSet) and every per-element scratch
//! vector used by the enumeration engines stores its items in a
//! [`SlotVec`]. While a [`Meter`] is armed on the current thread, newly
//! created slot vectors are counted, and the meter records the peak number of
//! live counted slots. Vectors created while the meter is disarmed (or paused
//! around a sink call) are never counted, so callers can keep copies of the
//! output without inflating the measurement.

use std::cell::Cell;
use std::ops::Deref;

#[derive(Clone, Copy, Default)]
struct GaugeState {
    armed: bool,
    live: usize,
    peak: usize,
}

thread_local! {
    static GAUGE: Cell<GaugeState> = Cell::new(GaugeState::default());
}

fn with_state<R>(f: impl FnOnce(&mut GaugeState) -> R) -> R {
    GAUGE.with(|cell| {
        let mut state = cell.get();
        let out = f(&mut state);
        cell.set(state);
        out
    })
}

fn charge(n: usize) {
    if n == 0 {
        return;
    }
    with_state(|s| {
        s.live += n;
        if s.armed && s.live > s.peak {
            s.peak = s.live;
        }
    });
}

fn release(n: usize) {
    if n == 0 {
        return;
    }
    with_state(|s| s.live = s.live.saturating_sub(n));
}

fn armed() -> bool {
    with_state(|s| s.armed)
}

/// Arms slot counting on the current thread until dropped.
pub struct Meter {
    baseline: usize,
    was_armed: bool,
    prev_peak: usize,
}

impl Meter {
    pub fn start() -> Self {
        with_state(|s| {
            let meter = Meter {
                baseline: s.live,
                was_armed: s.armed,
                prev_peak: s.peak,
            };
            s.armed = true;
            s.peak = s.live;
            meter
        })
    }

    /// Peak number of counted slots alive at once since `start`, net of
    /// whatever was already live when the meter started.
    pub fn peak(&self) -> usize {
        with_state(|s| s.peak.saturating_sub(self.baseline))
    }

    pub fn live(&self) -> usize {
        with_state(|s| s.live.saturating_sub(self.baseline))
    }
}

impl Drop for Meter {
    fn drop(&mut self) {
        let (was_armed, prev_peak) = (self.was_armed, self.prev_peak);
        with_state(|s| {
            s.armed = was_armed;
            s.peak = s.peak.max(prev_peak);
        });
    }
}

/// Runs `f` with counting suspended for newly created vectors.
pub fn paused<R>(f: impl FnOnce() -> R) -> R {
    struct Restore(bool);
    impl Drop for Restore {
        fn drop(&mut self) {
            let armed = self.0;
            with_state(|s| s.armed = armed);
        }
    }
    let _restore = Restore(with_state(|s| std::mem::replace(&mut s.armed, false)));
    f()
}

/// A `Vec` whose length is reported to the thread's gauge.
#[derive(Debug)]
pub struct SlotVec<T> {
    items: Vec<T>,
    counted: bool,
}

impl<T> SlotVec<T> {
    pub fn new() -> Self {
        Self::from_vec(Vec::new())
    }

    pub fn with_capacity(cap: usize) -> Self {
        Self::from_vec(Vec::with_capacity(cap))
    }

    pub fn from_vec(items: Vec<T>) -> Self {
        let counted = armed();
        if counted {
            charge(items.len());
        }
        SlotVec { items, counted }
    }

    pub fn push(&mut self, item: T) {
        if self.counted {
            charge(1);
        }
        self.items.push(item);
    }

    pub fn insert(&mut self, index: usize, item: T) {
        if self.counted {
            charge(1);
        }
        self.items.insert(index, item);
    }

    pub fn truncate(&mut self, len: usize) {
        if len < self.items.len() {
            if self.counted {
                release(self.items.len() - len);
            }
            self.items.truncate(len);
        }
    }

    pub fn clear(&mut self) {
        self.truncate(0);
    }

    pub fn into_vec(mut self) -> Vec<T> {
        if self.counted {
            release(self.items.len());
            self.counted = false;
        }
        std::mem::take(&mut self.items)
    }
}

impl<T> Default for SlotVec<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Clone> Clone for SlotVec<T> {
    fn clone(&self) -> Self {
        Self::from_vec(self.items.clone())
    }
}

impl<T> Deref for SlotVec<T> {
    type Target = [T];

    fn deref(&self) -> &[T] {
        &self.items
    }
}

impl<T> Drop for SlotVec<T> {
    fn drop(&mut self) {
        if self.counted {
            release(self.items.len());
        }
    }
}
