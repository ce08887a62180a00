//! Fork-join execution with a logical work/span meter.
//!
//! The meter counts abstract unit operations rather than wall-clock time, so
//! depth claims can be checked on any machine and are independent of how many
//! worker threads actually ran. Units are documented at each charging site:
//! one edge relaxation, one adjacency scan step, one heap pop, or one
//! machine-word boolean-matrix operation.
//!
//! Composition rules:
//! * sequential: work and span both add;
//! * parallel: work adds, span takes the maximum over the tasks, plus
//!   `barrier` units for the fork/join itself, where `barrier = ⌈log₂ n⌉`.

use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CostMeter {
    work: u64,
    span: u64,
    /// Barrier units lying on the critical path; `span ≤ work + sync` always.
    sync: u64,
    barrier: u64,
}

pub fn barrier_units(n: usize) -> u64 {
    let n = n.max(2) as u64;
    (64 - (n - 1).leading_zeros()) as u64
}

impl CostMeter {
    pub fn new(n: usize) -> Self {
        Self::with_barrier(barrier_units(n))
    }

    pub fn with_barrier(barrier: u64) -> Self {
        CostMeter { work: 0, span: 0, sync: 0, barrier }
    }

    /// A zeroed meter with the same barrier cost, for a child task.
    pub fn fork(&self) -> Self {
        Self::with_barrier(self.barrier)
    }

    pub fn work(&self) -> u64 {
        self.work
    }

    pub fn span(&self) -> u64 {
        self.span
    }

    pub fn sync(&self) -> u64 {
        self.sync
    }

    pub fn barrier(&self) -> u64 {
        self.barrier
    }

    /// Sequential work: `units` operations on the critical path.
    pub fn charge(&mut self, units: u64) {
        self.work += units;
        self.span += units;
    }

    /// One data-parallel round of `work` independent unit tasks followed by a
    /// join: span grows by `1 + barrier`.
    pub fn charge_round(&mut self, work: u64) {
        self.work += work;
        self.span += work.min(1) + self.barrier;
        self.sync += self.barrier;
    }

    /// Sequential composition with an already-metered computation.
    pub fn then(&mut self, other: &CostMeter) {
        self.work += other.work;
        self.span += other.span;
        self.sync += other.sync;
    }

    /// Parallel composition: the given meters ran as independent tasks.
    pub fn join<'a, I>(&mut self, tasks: I)
    where
        I: IntoIterator<Item = &'a CostMeter>,
    {
        let mut any = false;
        let mut crit: Option<&CostMeter> = None;
        for t in tasks {
            any = true;
            self.work += t.work;
            if crit.is_none_or(|c| (t.span, t.sync) > (c.span, c.sync)) {
                crit = Some(t);
            }
        }
        if !any {
            return;
        }
        let crit = crit.expect("non-empty");
        self.span += crit.span + self.barrier;
        self.sync += crit.sync + self.barrier;
    }
}

/// Run independent tasks as a fork-join block.
///
/// Each task receives its own sub-meter; results come back in task order and
/// the sub-meters are joined into `meter`. A panicking task propagates after
/// the join.
pub fn scoped_parallel<T, F>(meter: &mut CostMeter, tasks: Vec<F>) -> Vec<T>
where
    T: Send,
    F: FnOnce(&mut CostMeter) -> T + Send,
{
    let proto = meter.fork();
    let out: Vec<(T, CostMeter)> = tasks
        .into_par_iter()
        .map(|task| {
            let mut m = proto;
            let r = task(&mut m);
            (r, m)
        })
        .collect();
    meter.join(out.iter().map(|(_, m)| m));
    out.into_iter().map(|(r, _)| r).collect()
}

/// `scoped_parallel` over a slice of inputs with one shared task body.
pub fn parallel_map<I, T, F>(meter: &mut CostMeter, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I, &mut CostMeter) -> T + Sync,
{
    let proto = meter.fork();
    let out: Vec<(T, CostMeter)> = items
        .par_iter()
        .map(|it| {
            let mut m = proto;
            let r = f(it, &mut m);
            (r, m)
        })
        .collect();
    meter.join(out.iter().map(|(_, m)| m));
    out.into_iter().map(|(r, _)| r).collect()
}

#[cfg(test)]
mod tests {
    type Task = Box<dyn FnOnce(&mut CostMeter) + Send>;

    use super::*;

    #[test]
    fn barrier_is_ceil_log2() {
        assert_eq!(barrier_units(1), 1);
        assert_eq!(barrier_units(2), 1);
        assert_eq!(barrier_units(3), 2);
        assert_eq!(barrier_units(4096), 12);
        assert_eq!(barrier_units(4097), 13);
    }

    #[test]
    fn single_task() {
        let mut m = CostMeter::with_barrier(3);
        let tasks: Vec<Task> = vec![Box::new(|m| m.charge(10))];
        scoped_parallel(&mut m, tasks);
        assert_eq!((m.work(), m.span()), (10, 13));
    }

    #[test]
    fn eight_identical_tasks() {
        let mut m = CostMeter::with_barrier(3);
        let tasks: Vec<_> = (0..8).map(|_| |m: &mut CostMeter| m.charge(10)).collect();
        scoped_parallel(&mut m, tasks);
        assert_eq!((m.work(), m.span()), (80, 13));
    }

    #[test]
    fn results_keep_task_order() {
        let mut m = CostMeter::new(16);
        let r = parallel_map(&mut m, &[3u64, 1, 2], |&x, m| {
            m.charge(x);
            x * 10
        });
        assert_eq!(r, vec![30, 10, 20]);
        assert_eq!(m.work(), 6);
        assert_eq!(m.span(), 3 + m.barrier());
    }

    #[test]
    fn empty_join_is_free() {
        let mut m = CostMeter::new(8);
        let tasks: Vec<fn(&mut CostMeter)> = Vec::new();
        scoped_parallel(&mut m, tasks);
        assert_eq!(m, CostMeter::new(8));
    }

    #[test]
    #[should_panic(expected = "boom")]
    fn task_panic_propagates() {
        let mut m = CostMeter::new(8);
        let tasks: Vec<Task> =
            vec![Box::new(|m| m.charge(1)), Box::new(|_| panic!("boom"))];
        scoped_parallel(&mut m, tasks);
    }

    #[test]
    fn span_never_exceeds_work_plus_sync() {
        let mut m = CostMeter::new(100);
        m.charge_round(5);
        let mut inner = m.fork();
        inner.charge(7);
        inner.charge_round(0);
        m.join([&inner, &m.fork()]);
        m.then(&inner);
        assert!(m.span() <= m.work() + m.sync());
    }
}
