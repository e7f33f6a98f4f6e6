use super::{Symbol, Word};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Affine stage exponent `c(n) = per_stage * n + base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Growth {
    pub per_stage: u64,
    pub base: u64,
}

impl Growth {
    pub fn constant(b: u64) -> Growth {
        Growth {
            per_stage: 0,
            base: b,
        }
    }

    pub fn linear() -> Growth {
        Growth {
            per_stage: 1,
            base: 0,
        }
    }

    pub fn eval(self, n: u64) -> u64 {
        self.per_stage * n + self.base
    }

    /// Least stage `n >= 1` with `c(n) >= want` (None when the run never grows
    /// that far).
    fn stage_reaching(self, want: u64) -> Option<u64> {
        if self.base >= want {
            return Some(1);
        }
        if self.per_stage == 0 {
            return None;
        }
        Some((want - self.base).div_ceil(self.per_stage))
    }
}

/// One element of a stage template: a literal word or a parameterised run
/// `s^{c(n)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Template {
    Lit(Word),
    Run { sym: Symbol, len: Growth },
}

impl Template {
    fn eval_into(&self, n: u64, out: &mut Word) {
        match self {
            Template::Lit(w) => out.extend(w),
            Template::Run { sym, len } => {
                for _ in 0..len.eval(n) {
                    out.push(*sym);
                }
            }
        }
    }

    fn reversed(&self) -> Template {
        match self {
            Template::Lit(w) => Template::Lit(w.reversed()),
            run => run.clone(),
        }
    }
}

/// The eventual shape of an infinite tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TailForm {
    /// `period` repeated forever.
    Periodic { period: Word },
    /// Stage words `w_1 w_2 w_3 ...`, where `w_n` evaluates the templates at n.
    Staged { stages: Vec<Template> },
}

/// A one-sided infinite symbol stream: `transient` then the tail form, read
/// outward from the origin.
///
/// Rays are direction-agnostic; [`SeqPoint`] reads one left-to-right, while
/// [`LeftTail`] stores the mirrored ray and re-reverses on extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub transient: Word,
    pub form: TailForm,
}

impl Ray {
    pub fn periodic(transient: Word, period: Word) -> Result<Ray> {
        if period.is_empty() {
            return Err(Error::Invalid("period must be nonempty".into()));
        }
        Ok(Ray {
            transient,
            form: TailForm::Periodic { period },
        })
    }

    pub fn staged(transient: Word, stages: Vec<Template>) -> Result<Ray> {
        if stages.is_empty() {
            return Err(Error::Invalid(
                "schedule must have at least one template".into(),
            ));
        }
        // every stage word must be nonempty
        let probe = Ray {
            transient: Word::empty(),
            form: TailForm::Staged {
                stages: stages.clone(),
            },
        };
        if probe.stage_word(1).is_empty() {
            return Err(Error::Invalid("stage words must be nonempty".into()));
        }
        Ok(Ray {
            transient,
            form: TailForm::Staged { stages },
        })
    }

    pub fn stage_word(&self, n: u64) -> Word {
        match &self.form {
            TailForm::Periodic { period } => period.clone(),
            TailForm::Staged { stages } => {
                let mut w = Word::empty();
                for t in stages {
                    t.eval_into(n, &mut w);
                }
                w
            }
        }
    }

    /// First `len` symbols starting `start` symbols away from the origin.
    pub fn materialize_range(&self, start: u64, len: usize) -> Word {
        let mut out = Word::empty();
        if len == 0 {
            return out;
        }
        let end = start + len as u64;
        let mut pos = 0u64;
        let grab = |w: &Word, pos: &mut u64, out: &mut Word| -> bool {
            for &s in w.symbols() {
                if *pos >= end {
                    return true;
                }
                if *pos >= start {
                    out.push(s);
                }
                *pos += 1;
            }
            false
        };
        if grab(&self.transient, &mut pos, &mut out) {
            return out;
        }
        let mut n = 1u64;
        loop {
            let w = self.stage_word(n);
            if grab(&w, &mut pos, &mut out) {
                return out;
            }
            n += 1;
        }
    }

    pub fn materialize(&self, len: usize) -> Word {
        self.materialize_range(0, len)
    }

    /// Least stage from which the per-stage window contribution at length
    /// `len` is constant: every growing run has reached length `len`.
    fn stable_stage(&self, len: usize) -> u64 {
        match &self.form {
            TailForm::Periodic { .. } => 1,
            TailForm::Staged { stages } => {
                let mut m = 1;
                for t in stages {
                    if let Template::Run { len: g, .. } = t {
                        if g.per_stage > 0 {
                            if let Some(n) = g.stage_reaching(len as u64) {
                                m = m.max(n);
                            }
                        }
                    }
                }
                m
            }
        }
    }

    /// The set of `len`-windows occurring infinitely often in the stream.
    ///
    /// Exact: once every growing run is at least `len` long, each stage and
    /// each stage junction contributes the same window set, so scanning one
    /// stable stage pair suffices. With no growing runs the tail is periodic
    /// and one full cycle is scanned.
    pub fn limit_windows(&self, len: usize) -> BTreeSet<Word> {
        assert!(len >= 1, "window length must be at least 1");
        match &self.form {
            TailForm::Periodic { period } => {
                let reps = 2 + (len - 1).div_ceil(period.len());
                let mut w = Word::empty();
                for _ in 0..reps {
                    w.extend(period);
                }
                w.factors(len)
            }
            TailForm::Staged { .. } => {
                let m = self.stable_stage(len);
                let mut scan = self.stage_word(m);
                scan.extend(&self.stage_word(m + 1));
                let next = self.stage_word(m + 2);
                scan.extend(&next.prefix(len - 1));
                scan.factors(len)
            }
        }
    }

    /// Every `len`-window that occurs anywhere in the stream.
    ///
    /// Beyond the stable stage no new windows appear, so a finite prefix scan
    /// is exact.
    pub fn all_windows(&self, len: usize) -> BTreeSet<Word> {
        assert!(len >= 1);
        let mut scan = self.transient.clone();
        match &self.form {
            TailForm::Periodic { period } => {
                let reps = 2 + (len - 1).div_ceil(period.len());
                for _ in 0..reps {
                    scan.extend(period);
                }
            }
            TailForm::Staged { .. } => {
                let m = self.stable_stage(len);
                for n in 1..=(m + 1) {
                    scan.extend(&self.stage_word(n));
                }
                scan.extend(&self.stage_word(m + 2).prefix(len - 1));
            }
        }
        scan.factors(len)
    }
}

/// A one-sided point `x_0 x_1 x_2 ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqPoint {
    pub ray: Ray,
}

impl SeqPoint {
    pub fn periodic(transient: Word, period: Word) -> Result<SeqPoint> {
        Ok(SeqPoint {
            ray: Ray::periodic(transient, period)?,
        })
    }

    pub fn scheduled(transient: Word, stages: Vec<Template>) -> Result<SeqPoint> {
        Ok(SeqPoint {
            ray: Ray::staged(transient, stages)?,
        })
    }

    /// Constant point `s^inf`.
    pub fn constant(sym: Symbol) -> SeqPoint {
        SeqPoint {
            ray: Ray::periodic(Word::empty(), Word::repeated(sym, 1)).unwrap(),
        }
    }

    pub fn window(&self, start: u64, len: usize) -> Word {
        self.ray.materialize_range(start, len)
    }
}

/// The left half `... x_{-3} x_{-2} x_{-1}` of a two-sided point, or the
/// 0-th-coordinate stream of a backward trajectory.
///
/// Constructors take everything in reading order: the denoted left-infinite
/// word is `... W_2 W_1 T` with `T` (the transient) adjacent to the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftTail {
    mirrored: Ray,
}

impl LeftTail {
    pub fn periodic(period: Word, transient: Word) -> Result<LeftTail> {
        Ok(LeftTail {
            mirrored: Ray::periodic(transient.reversed(), period.reversed())?,
        })
    }

    pub fn scheduled(stages: Vec<Template>, transient: Word) -> Result<LeftTail> {
        let rev: Vec<Template> = stages.iter().rev().map(Template::reversed).collect();
        Ok(LeftTail {
            mirrored: Ray::staged(transient.reversed(), rev)?,
        })
    }

    pub fn constant(sym: Symbol) -> LeftTail {
        LeftTail::periodic(Word::repeated(sym, 1), Word::empty()).unwrap()
    }

    pub fn from_mirrored(ray: Ray) -> LeftTail {
        LeftTail { mirrored: ray }
    }

    /// Symbol at position `-1 - j` (j symbols left of the origin).
    pub fn symbol_out(&self, j: u64) -> Symbol {
        self.mirrored.materialize_range(j, 1)[0]
    }

    /// The window of length `len` whose leftmost symbol sits at position
    /// `start < 0`, in reading order. Requires `start + len <= 0`.
    pub fn window(&self, start: i64, len: usize) -> Word {
        assert!(start < 0 && start + len as i64 <= 0);
        let j = (-(start + len as i64)) as u64;
        self.mirrored.materialize_range(j, len).reversed()
    }

    /// Windows occurring infinitely often (arbitrarily far left), in reading
    /// order.
    pub fn limit_windows(&self, len: usize) -> BTreeSet<Word> {
        self.mirrored
            .limit_windows(len)
            .iter()
            .map(Word::reversed)
            .collect()
    }

    pub fn all_windows(&self, len: usize) -> BTreeSet<Word> {
        self.mirrored
            .all_windows(len)
            .iter()
            .map(Word::reversed)
            .collect()
    }
}

/// A two-sided point: left tail on indices `i < 0`, `center` starting at 0,
/// then the right ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSidedPoint {
    pub left: LeftTail,
    pub center: Word,
    pub right: Ray,
}

impl TwoSidedPoint {
    pub fn new(left: LeftTail, center: Word, right: Ray) -> TwoSidedPoint {
        TwoSidedPoint {
            left,
            center,
            right,
        }
    }

    pub fn symbol(&self, i: i64) -> Symbol {
        if i < 0 {
            self.left.symbol_out((-i - 1) as u64)
        } else {
            let i = i as u64;
            let c = self.center.len() as u64;
            if i < c {
                self.center.symbols()[i as usize]
            } else {
                self.right.materialize_range(i - c, 1)[0]
            }
        }
    }

    pub fn window(&self, start: i64, len: usize) -> Word {
        let mut out = Word::empty();
        let end = start + len as i64;
        if start < 0 {
            let left_len = ((-start).min(len as i64)) as usize;
            out.extend(&self.left.window(start, left_len));
        }
        if end > 0 {
            let from = start.max(0) as u64;
            let c = self.center.len() as u64;
            let right_len = (end - start.max(0)) as usize;
            if from < c {
                let take = ((c - from) as usize).min(right_len);
                out.extend(&self.center.factor(from as usize, take));
                if right_len > take {
                    out.extend(&self.right.materialize_range(0, right_len - take));
                }
            } else {
                out.extend(&self.right.materialize_range(from - c, right_len));
            }
        }
        out
    }

    /// Windows occurring infinitely often in the right tail (the center
    /// junction occurs once and does not contribute).
    pub fn omega_tail_windows(&self, len: usize) -> BTreeSet<Word> {
        self.right.limit_windows(len)
    }

    /// Windows occurring infinitely often in the left tail.
    pub fn alpha_tail_windows(&self, len: usize) -> BTreeSet<Word> {
        self.left.limit_windows(len)
    }
}

/// Anything a symbolic pseudo-orbit entry can be: a window-addressable point.
pub trait SymbolicPoint {
    /// Window starting at `start` (negative indices only for two-sided
    /// points).
    fn try_window(&self, start: i64, len: usize) -> Result<Word>;
}

impl SymbolicPoint for SeqPoint {
    fn try_window(&self, start: i64, len: usize) -> Result<Word> {
        if start < 0 {
            return Err(Error::OutOfSide { index: start });
        }
        Ok(self.window(start as u64, len))
    }
}

impl SymbolicPoint for TwoSidedPoint {
    fn try_window(&self, start: i64, len: usize) -> Result<Word> {
        Ok(self.window(start, len))
    }
}
