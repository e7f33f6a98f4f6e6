//! Pseudo-orbits in shift spaces, exact shadowing constructions in shifts of
//! finite type (forward, backward, two-sided), and finite-horizon witness
//! checkers for the backward orbital shadowing variants.
//!
//! The delta(epsilon) contract is `delta <= 2^-(k+m)` for `epsilon = 2^-k`
//! in an SFT of memory m: under it the diagonal word (the 0-th coordinate of
//! each entry) is admissible and epsilon-tracks the pseudo-orbit, so the
//! shadow is built outright rather than searched for. Witness checkers never
//! claim universal properties: a missing witness within the horizon refutes
//! nothing.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::limits::{sampled_tail_windows, Stabilization, WindowSet};
use crate::rng::SplitMix64;
use crate::symbolic::{
    Alphabet, BlockGraph, LeftTail, Ray, SeqPoint, Sft, SymbolicPoint, TailForm, TwoSidedPoint,
    Word,
};
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
    TwoSided,
}

/// A finite delta-pseudo-orbit of finitely described points.
///
/// `entries[j]` is the point at index `start + j`; forward orbits start at
/// 0, backward orbits end at 0, two-sided orbits straddle it.
#[derive(Debug, Clone)]
pub struct PseudoOrbit<P> {
    pub direction: Direction,
    pub start: i64,
    pub entries: Vec<P>,
    /// `2^-delta_exp` jump tolerance; agreement is checked on indices
    /// `0..=delta_exp` (one-sided) or `|i| <= delta_exp` (two-sided).
    pub delta_exp: u32,
}

impl<P: SymbolicPoint> PseudoOrbit<P> {
    pub fn forward(entries: Vec<P>, delta_exp: u32) -> Result<Self> {
        Self::new(Direction::Forward, 0, entries, delta_exp)
    }

    pub fn backward(entries: Vec<P>, delta_exp: u32) -> Result<Self> {
        let start = -(entries.len() as i64 - 1);
        Self::new(Direction::Backward, start, entries, delta_exp)
    }

    pub fn two_sided(start: i64, entries: Vec<P>, delta_exp: u32) -> Result<Self> {
        Self::new(Direction::TwoSided, start, entries, delta_exp)
    }

    fn new(direction: Direction, start: i64, entries: Vec<P>, delta_exp: u32) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::Invalid(
                "a pseudo-orbit needs at least two entries".into(),
            ));
        }
        if direction == Direction::TwoSided
            && !(start <= 0 && start + entries.len() as i64 > 0)
        {
            return Err(Error::Invalid(
                "two-sided pseudo-orbits must straddle index 0".into(),
            ));
        }
        Ok(PseudoOrbit {
            direction,
            start,
            entries,
            delta_exp,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn end(&self) -> i64 {
        self.start + self.entries.len() as i64 - 1
    }

    pub fn delta(&self) -> Dyadic {
        Dyadic::Pow(self.delta_exp)
    }
}

/// Outcome of a delta-certificate check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoVerdict {
    Ok,
    /// First index i with `d(sigma(x_i), x_{i+1}) >= delta`.
    FailedAt(i64),
}

impl PoVerdict {
    pub fn is_ok(self) -> bool {
        matches!(self, PoVerdict::Ok)
    }
}

/// The one comparison underlying every delta check:
/// `d(sigma(x), y) < 2^-j` iff the windows that j dictates agree.
fn sigma_step_agrees<P: SymbolicPoint>(x: &P, y: &P, j: u32, two_sided: bool) -> Result<bool> {
    if two_sided {
        let len = 2 * j as usize + 1;
        Ok(x.try_window(1 - j as i64, len)? == y.try_window(-(j as i64), len)?)
    } else {
        let len = j as usize + 1;
        Ok(x.try_window(1, len)? == y.try_window(0, len)?)
    }
}

/// Check the delta-certificate of a pseudo-orbit: every consecutive pair
/// must satisfy the dyadic agreement the declared delta dictates.
pub fn verify_pseudo_orbit<P: SymbolicPoint>(po: &PseudoOrbit<P>) -> Result<PoVerdict> {
    let two_sided = po.direction == Direction::TwoSided;
    for (j, pair) in po.entries.windows(2).enumerate() {
        if !sigma_step_agrees(&pair[0], &pair[1], po.delta_exp, two_sided)? {
            return Ok(PoVerdict::FailedAt(po.start + j as i64));
        }
    }
    Ok(PoVerdict::Ok)
}

/// A shadowing certificate: per covered index, the verified agreement depth
/// (matching symbols one-sided, matching radii two-sided). Depth `d`
/// certifies distance at most `2^-d`, so `epsilon = 2^-k` needs `d >= k+1`
/// everywhere.
#[derive(Debug, Clone)]
pub struct ShadowCertificate {
    pub epsilon_exp: u32,
    pub range: (i64, i64),
    pub depths: Vec<u32>,
}

impl ShadowCertificate {
    pub fn epsilon(&self) -> Dyadic {
        Dyadic::Pow(self.epsilon_exp)
    }

    /// A certificate verifies at its own epsilon and at any coarser one.
    pub fn holds_at(&self, epsilon_exp: u32) -> bool {
        self.depths.iter().all(|&d| d > epsilon_exp)
    }
}

/// The shadow of a forward pseudo-orbit.
#[derive(Debug, Clone)]
pub struct ForwardShadow {
    pub shadow: SeqPoint,
    pub cert: ShadowCertificate,
}

/// A backward trajectory in a one-sided shift: the suffixes of one
/// left-infinite extension of `base`. Consecutive points satisfy the shift
/// relation exactly, because they are tails of one stream.
#[derive(Debug, Clone)]
pub struct BackwardTrajectory {
    pub left: LeftTail,
    pub base: SeqPoint,
}

impl BackwardTrajectory {
    /// Window of the trajectory point at index `-r`.
    pub fn point_window(&self, r: u64, start: u64, len: usize) -> Word {
        let mut out = Word::empty();
        let end = start + len as u64;
        if start < r {
            // stream positions start - r .. min(end, r) - r, all negative
            let take = (r.min(end) - start) as usize;
            out.extend(&self.left.window(start as i64 - r as i64, take));
        }
        if end > r {
            let from = start.max(r) - r;
            out.extend(&self.base.window(from, (end - start.max(r)) as usize));
        }
        out
    }

    /// The stream of 0-th coordinates left of the base; its limit windows
    /// are the alpha windows of the trajectory.
    pub fn coordinate_tail(&self) -> LeftTail {
        self.left.clone()
    }
}

/// The shadow of a backward pseudo-orbit: a genuine backward trajectory.
#[derive(Debug, Clone)]
pub struct BackwardShadow {
    pub trajectory: BackwardTrajectory,
    pub cert: ShadowCertificate,
}

/// The shadow of a two-sided pseudo-orbit: a full trajectory.
#[derive(Debug, Clone)]
pub struct TwoSidedShadow {
    pub shadow: TwoSidedPoint,
    pub cert: ShadowCertificate,
}

fn lasts(g: &BlockGraph, path: &[usize]) -> Word {
    path.iter()
        .map(|&v| *g.vertices()[v].symbols().last().unwrap())
        .collect()
}

fn firsts(g: &BlockGraph, path: &[usize]) -> Word {
    path.iter().map(|&v| g.vertices()[v].symbols()[0]).collect()
}

/// Deterministic admissible completion from a context vertex: follow the
/// smallest successor (resp. predecessor) until a vertex repeats. Returns
/// the pre-periodic emissions and the period, in outward order.
fn completion(core: &BlockGraph, v: usize, forward: bool) -> (Word, Word) {
    let (approach, cycle) = core.greedy_cycle(v, forward);
    let emit = |path: &[usize]| {
        if forward {
            lasts(core, path)
        } else {
            firsts(core, path)
        }
    };
    if approach.is_empty() {
        let mut rotated: Vec<usize> = cycle[1..].to_vec();
        rotated.push(cycle[0]);
        (Word::empty(), emit(&rotated))
    } else {
        (emit(&approach[1..]), emit(&cycle))
    }
}

fn context_vertex(sft: &Sft, w: &Word) -> Result<usize> {
    sft.core()
        .vertex_index(w)
        .ok_or_else(|| Error::Invalid("context word not in the trimmed core".into()))
}

fn gate(sft: &Sft, delta_exp: u32, epsilon_exp: u32) -> Result<()> {
    let required = epsilon_exp + sft.memory() as u32;
    if delta_exp < required {
        return Err(Error::DeltaTooLarge {
            delta: Dyadic::Pow(delta_exp).to_string(),
            k: epsilon_exp,
            memory: sft.memory(),
            required,
        });
    }
    Ok(())
}

/// How much of an eventually periodic point must be probed to certify it
/// admissible forever: the transient plus two periods plus the memory.
fn periodic_probe_len(p: &SeqPoint, sft: &Sft) -> Option<usize> {
    match &p.ray.form {
        TailForm::Periodic { period } => {
            Some(p.ray.transient.len() + 2 * period.len() + sft.memory() + 1)
        }
        TailForm::Staged { .. } => None,
    }
}

/// Certify a point admissible: a full proof for eventually periodic points,
/// a deep finite probe otherwise.
fn check_point_admissible(sft: &Sft, p: &SeqPoint, fallback_probe: usize) -> Result<()> {
    let probe = periodic_probe_len(p, sft).unwrap_or(fallback_probe);
    if !sft.is_admissible(&p.window(0, probe)) {
        return Err(Error::Invalid("point leaves the subshift".into()));
    }
    Ok(())
}

fn common_prefix(a: &Word, b: &Word) -> u32 {
    a.symbols()
        .iter()
        .zip(b.symbols())
        .take_while(|(x, y)| x == y)
        .count() as u32
}

/// Number of verified agreement radii around the center of two equal-length
/// windows whose middle sits at `cap`.
fn common_radius(a: &Word, b: &Word, cap: usize) -> u32 {
    if a.symbols()[cap] != b.symbols()[cap] {
        return 0;
    }
    let mut d = 1usize;
    while d <= cap
        && a.symbols()[cap - d] == b.symbols()[cap - d]
        && a.symbols()[cap + d] == b.symbols()[cap + d]
    {
        d += 1;
    }
    d as u32
}

/// Re-verify a forward shadow independently of its construction: the shadow
/// must be admissible forever and `sigma^i(shadow)` must agree with entry i
/// to at least the depth epsilon demands, at every covered index.
pub fn verify_forward_shadow(
    sft: &Sft,
    po: &PseudoOrbit<SeqPoint>,
    shadow: &SeqPoint,
    epsilon_exp: u32,
) -> Result<ShadowCertificate> {
    let cap = po.delta_exp + sft.memory() as u32 + epsilon_exp + 4;
    check_point_admissible(sft, shadow, (po.len() + cap as usize) * 2)?;
    let mut depths = Vec::with_capacity(po.len());
    for (i, entry) in po.entries.iter().enumerate() {
        let zw = shadow.window(i as u64, cap as usize);
        let ew = entry.window(0, cap as usize);
        let depth = common_prefix(&zw, &ew);
        if depth < epsilon_exp + 1 {
            return Err(Error::Invalid(format!(
                "shadow strays from entry {i}: depth {depth} < {}",
                epsilon_exp + 1
            )));
        }
        depths.push(depth);
    }
    Ok(ShadowCertificate {
        epsilon_exp,
        range: (po.start, po.end()),
        depths,
    })
}

/// Shadow a forward pseudo-orbit at `epsilon = 2^-k` by the diagonal
/// construction: symbol i of the shadow is the 0-th coordinate of entry i;
/// past the range the shadow follows the final entry for memory + k symbols
/// and then the first admissible cycle in canonical vertex order.
pub fn shadow_forward(
    sft: &Sft,
    po: &PseudoOrbit<SeqPoint>,
    epsilon_exp: u32,
) -> Result<ForwardShadow> {
    if po.direction != Direction::Forward {
        return Err(Error::Invalid("expected a forward pseudo-orbit".into()));
    }
    gate(sft, po.delta_exp, epsilon_exp)?;
    if let PoVerdict::FailedAt(i) = verify_pseudo_orbit(po)? {
        return Err(Error::Invalid(format!(
            "delta certificate fails at index {i}"
        )));
    }
    let t = sft.context();
    let pad = sft.memory() + epsilon_exp as usize + t;
    let mut transient: Word = po.entries.iter().map(|p| p.window(0, 1)[0]).collect();
    transient.extend(&po.entries.last().unwrap().window(1, pad));
    let v = context_vertex(sft, &transient.suffix(t))?;
    let (prefix, period) = completion(sft.core(), v, true);
    transient.extend(&prefix);
    let shadow = SeqPoint::periodic(transient, period)?;
    let cert = verify_forward_shadow(sft, po, &shadow, epsilon_exp)?;
    Ok(ForwardShadow { shadow, cert })
}

/// Re-verify a backward shadow: the trajectory's stream must be admissible
/// around the covered range and the point at each covered index must agree
/// with the entry there to the depth epsilon demands.
pub fn verify_backward_shadow(
    sft: &Sft,
    po: &PseudoOrbit<SeqPoint>,
    trajectory: &BackwardTrajectory,
    epsilon_exp: u32,
) -> Result<ShadowCertificate> {
    let n = po.len() as u64;
    let cap = po.delta_exp + sft.memory() as u32 + epsilon_exp + 4;
    let base_probe =
        periodic_probe_len(&trajectory.base, sft).unwrap_or(2 * (n as usize + cap as usize));
    let deep = n + 2 * sft.context() as u64 + 8;
    let probe = trajectory.point_window(deep, 0, deep as usize + base_probe);
    if !sft.is_admissible(&probe) {
        return Err(Error::Invalid("backward shadow leaves the subshift".into()));
    }
    let mut depths = Vec::with_capacity(po.len());
    for (j, entry) in po.entries.iter().enumerate() {
        let r = n - 1 - j as u64;
        let zw = trajectory.point_window(r, 0, cap as usize);
        let ew = entry.window(0, cap as usize);
        let depth = common_prefix(&zw, &ew);
        if depth < epsilon_exp + 1 {
            return Err(Error::Invalid(format!(
                "backward shadow strays at index {}: depth {depth}",
                po.start + j as i64
            )));
        }
        depths.push(depth);
    }
    Ok(ShadowCertificate {
        epsilon_exp,
        range: (po.start, po.end()),
        depths,
    })
}

/// Shadow a backward pseudo-orbit: the mirror of [`shadow_forward`] on left
/// tails. The base of the returned trajectory is the final entry itself and
/// each trajectory point maps to the next under the shift, exactly.
pub fn shadow_backward(
    sft: &Sft,
    po: &PseudoOrbit<SeqPoint>,
    epsilon_exp: u32,
) -> Result<BackwardShadow> {
    if po.direction != Direction::Backward {
        return Err(Error::Invalid("expected a backward pseudo-orbit".into()));
    }
    gate(sft, po.delta_exp, epsilon_exp)?;
    if let PoVerdict::FailedAt(i) = verify_pseudo_orbit(po)? {
        return Err(Error::Invalid(format!(
            "delta certificate fails at index {i}"
        )));
    }
    let t = sft.context();
    let base = po.entries.last().unwrap().clone();
    // prepended diagonal: 0-th coordinates of x_{-(n-1)} .. x_{-1}
    let prepend: Word = po.entries[..po.len() - 1]
        .iter()
        .map(|p| p.window(0, 1)[0])
        .collect();
    let known = prepend.concat(&base.window(0, t));
    let v = context_vertex(sft, &known.prefix(t))?;
    let (approach_out, period_out) = completion(sft.core(), v, false);
    let mut transient_out = prepend.reversed();
    transient_out.extend(&approach_out);
    let left = LeftTail::from_mirrored(Ray::periodic(transient_out, period_out)?);
    let trajectory = BackwardTrajectory { left, base };
    let cert = verify_backward_shadow(sft, po, &trajectory, epsilon_exp)?;
    Ok(BackwardShadow { trajectory, cert })
}

/// Re-verify a two-sided shadow.
pub fn verify_two_sided_shadow(
    sft: &Sft,
    po: &PseudoOrbit<TwoSidedPoint>,
    shadow: &TwoSidedPoint,
    epsilon_exp: u32,
) -> Result<ShadowCertificate> {
    let cap = po.delta_exp + sft.memory() as u32 + epsilon_exp + 4;
    let reach = po.len() as i64 + 4 * cap as i64 + 64;
    let probe = shadow.window(-reach, 2 * reach as usize);
    if !sft.is_admissible(&probe) {
        return Err(Error::Invalid(
            "two-sided shadow leaves the subshift".into(),
        ));
    }
    let mut depths = Vec::with_capacity(po.len());
    for (j, entry) in po.entries.iter().enumerate() {
        let i = po.start + j as i64;
        let len = 2 * cap as usize + 1;
        let zw = shadow.window(i - cap as i64, len);
        let ew = entry.window(-(cap as i64), len);
        let depth = common_radius(&zw, &ew, cap as usize);
        if depth < epsilon_exp + 1 {
            return Err(Error::Invalid(format!(
                "two-sided shadow strays at index {i}: radius {depth}"
            )));
        }
        depths.push(depth);
    }
    Ok(ShadowCertificate {
        epsilon_exp,
        range: (po.start, po.end()),
        depths,
    })
}

/// Shadow a two-sided pseudo-orbit by the diagonal construction, padding
/// with the extreme entries' own tails before entering canonical cycles on
/// both sides. The output is a full trajectory of the subshift.
pub fn shadow_two_sided(
    sft: &Sft,
    po: &PseudoOrbit<TwoSidedPoint>,
    epsilon_exp: u32,
) -> Result<TwoSidedShadow> {
    if po.direction != Direction::TwoSided {
        return Err(Error::Invalid("expected a two-sided pseudo-orbit".into()));
    }
    gate(sft, po.delta_exp, epsilon_exp)?;
    if let PoVerdict::FailedAt(i) = verify_pseudo_orbit(po)? {
        return Err(Error::Invalid(format!(
            "delta certificate fails at index {i}"
        )));
    }
    let t = sft.context();
    let pad = sft.memory() + epsilon_exp as usize + t;
    let diag: Word = po.entries.iter().map(|p| p.window(0, 1)[0]).collect();
    let split = (-po.start) as usize; // diag[split] sits at index 0

    // indices >= 0: diagonal from 0, the last entry's right tail, forward cycle
    let mut right_word = diag.factor(split, diag.len() - split);
    right_word.extend(&po.entries.last().unwrap().window(1, pad));
    let v = context_vertex(sft, &right_word.suffix(t))?;
    let (fwd_prefix, fwd_period) = completion(sft.core(), v, true);
    right_word.extend(&fwd_prefix);
    let right_ray = Ray::periodic(right_word, fwd_period)?;

    // indices < 0: diagonal below 0, the first entry's left tail, backward cycle
    let left_read = diag.prefix(split);
    let left_pad_read = po.entries[0].window(-(pad as i64), pad);
    let mut left_out = left_read.reversed();
    left_out.extend(&left_pad_read.reversed());
    let vl = context_vertex(sft, &left_pad_read.prefix(t))?;
    let (back_approach, back_period) = completion(sft.core(), vl, false);
    left_out.extend(&back_approach);
    let left = LeftTail::from_mirrored(Ray::periodic(left_out, back_period)?);

    let shadow = TwoSidedPoint::new(left, Word::empty(), right_ray);
    let cert = verify_two_sided_shadow(sft, po, &shadow, epsilon_exp)?;
    Ok(TwoSidedShadow { shadow, cert })
}

/// A backward tail: either a finitely described backward trajectory or an
/// explicit finite stretch of points, `entries[last]` sitting at index 0.
#[derive(Debug, Clone)]
pub enum BackwardTail {
    Trajectory(BackwardTrajectory),
    Points(Vec<SeqPoint>),
}

impl BackwardTail {
    /// Prefix (length `len`) of the point at index `-r`, when described.
    pub fn point_prefix(&self, r: u64, len: usize) -> Option<Word> {
        match self {
            BackwardTail::Trajectory(t) => Some(t.point_window(r, 0, len)),
            BackwardTail::Points(entries) => {
                let n = entries.len() as u64;
                if r >= n {
                    None
                } else {
                    Some(entries[(n - 1 - r) as usize].window(0, len))
                }
            }
        }
    }

    /// `{ prefix of x_{-r} : n_lo <= r <= n_hi }`: the resolution projection
    /// of the tail segment.
    pub fn prefix_set(&self, n_lo: u64, n_hi: u64, len: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for r in n_lo..=n_hi {
            if let Some(w) = self.point_prefix(r, len) {
                out.insert(w);
            }
        }
        out
    }
}

/// Backward cofinal orbital shadowing witness: the least `N` in
/// `[k_floor, horizon]` such that the resolution-`k_res` projections of the
/// two tails beyond `-N` agree, certifying `d_H < epsilon = 2^-eps_exp`
/// at that resolution. `None` is not a refutation: this is a finite-horizon
/// semi-decision.
pub fn cofinal_orbital_witness(
    po: &BackwardTail,
    traj: &BackwardTail,
    eps_exp: u32,
    k_floor: u64,
    horizon: u64,
    k_res: u32,
) -> Result<Option<u64>> {
    if k_res < eps_exp {
        return Err(Error::Invalid(format!(
            "resolution {k_res} cannot certify epsilon 2^-{eps_exp}"
        )));
    }
    let len = k_res as usize + 1;
    for n in k_floor..=horizon {
        if po.prefix_set(n, horizon, len) == traj.prefix_set(n, horizon, len) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Backward eventual strong orbital shadowing witness: the least `K` such
/// that every `N` in `[K, horizon]` passes the projection agreement.
pub fn eventual_strong_orbital_witness(
    po: &BackwardTail,
    traj: &BackwardTail,
    eps_exp: u32,
    horizon: u64,
    k_res: u32,
) -> Result<Option<u64>> {
    if k_res < eps_exp {
        return Err(Error::Invalid(format!(
            "resolution {k_res} cannot certify epsilon 2^-{eps_exp}"
        )));
    }
    let len = k_res as usize + 1;
    let mut last_fail: Option<u64> = None;
    for n in 0..=horizon {
        if po.prefix_set(n, horizon, len) != traj.prefix_set(n, horizon, len) {
            last_fail = Some(n);
        }
    }
    match last_fail {
        None => Ok(Some(0)),
        Some(f) if f < horizon => Ok(Some(f + 1)),
        Some(_) => Ok(None),
    }
}

/// Certificate that a backward points-list is an asymptotic pseudo-orbit
/// over the listed range: jump i (between entries i and i+1, oldest first)
/// must stay below `2^-schedule[i]`, with exponents non-increasing along the
/// list (delta shrinking into the past).
pub fn verify_backward_asymptotic(entries: &[SeqPoint], schedule: &[u32]) -> Result<PoVerdict> {
    if schedule.len() + 1 != entries.len() {
        return Err(Error::Invalid(
            "schedule must have one exponent per jump".into(),
        ));
    }
    if schedule.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Invalid(
            "delta schedule must shrink into the past".into(),
        ));
    }
    for (i, pair) in entries.windows(2).enumerate() {
        if !sigma_step_agrees(&pair[0], &pair[1], schedule[i], false)? {
            return Ok(PoVerdict::FailedAt(i as i64 - entries.len() as i64 + 1));
        }
    }
    Ok(PoVerdict::Ok)
}

/// Backward orbital limit shadowing witness: do the alpha window sets of the
/// pseudo-orbit tail and the trajectory tail agree at length `len`?
/// Trajectory tails are read exactly; point-list tails are scanned under the
/// stabilisation policy and stabilisation failures propagate.
pub fn backward_orbital_limit_witness(
    alphabet: &Arc<Alphabet>,
    po: &BackwardTail,
    traj: &BackwardTail,
    len: usize,
    policy: Stabilization,
) -> Result<bool> {
    let alpha = |tail: &BackwardTail| -> Result<WindowSet> {
        match tail {
            BackwardTail::Trajectory(t) => WindowSet::new(
                alphabet.clone(),
                len,
                t.coordinate_tail().limit_windows(len),
            ),
            BackwardTail::Points(entries) => {
                let word: Word = entries
                    .iter()
                    .map(|p| p.window(0, 1)[0])
                    .collect::<Word>()
                    .reversed();
                sampled_tail_windows(alphabet, &word, len, policy)
            }
        }
    };
    Ok(alpha(po)?.words() == alpha(traj)?.words())
}

/// A random admissible point of the subshift: a seeded walk on the trimmed
/// core closed off by the canonical cycle.
pub fn random_point(sft: &Sft, rng: &mut SplitMix64, walk_len: usize) -> SeqPoint {
    let core = sft.core();
    let mut v = rng.below(core.vertex_count());
    let mut word = core.vertices()[v].clone();
    for _ in 0..walk_len {
        let succ = core.successors(v);
        v = succ[rng.below(succ.len())];
        word.push(*core.vertices()[v].symbols().last().unwrap());
    }
    let (prefix, period) = completion(core, v, true);
    word.extend(&prefix);
    SeqPoint::periodic(word, period).expect("nonempty period")
}

/// Extend an admissible prefix (at least context long, taken from a genuine
/// point) into a full point by a seeded walk plus canonical cycle.
pub fn complete_point(
    sft: &Sft,
    prefix: &Word,
    rng: &mut SplitMix64,
    walk_len: usize,
) -> Result<SeqPoint> {
    let t = sft.context();
    if prefix.len() < t {
        return Err(Error::Invalid("prefix shorter than the context".into()));
    }
    let mut v = context_vertex(sft, &prefix.suffix(t))?;
    let mut word = prefix.clone();
    for _ in 0..walk_len {
        let succ = sft.core().successors(v);
        v = succ[rng.below(succ.len())];
        word.push(*sft.core().vertices()[v].symbols().last().unwrap());
    }
    let (tail_prefix, period) = completion(sft.core(), v, true);
    word.extend(&tail_prefix);
    SeqPoint::periodic(word, period)
}

/// A seeded random delta-pseudo-orbit (`delta = 2^-delta_exp`) of the given
/// direction and length: each next entry copies the shifted previous entry
/// to depth `delta_exp + 1` and then wanders freely.
pub fn random_pseudo_orbit(
    sft: &Sft,
    rng: &mut SplitMix64,
    len: usize,
    delta_exp: u32,
    direction: Direction,
) -> Result<PseudoOrbit<SeqPoint>> {
    let depth = delta_exp as usize + 1;
    let mut entries = Vec::with_capacity(len);
    entries.push(random_point(sft, rng, depth + 4));
    for _ in 1..len {
        let carry = entries.last().unwrap().window(1, depth.max(sft.context()));
        entries.push(complete_point(sft, &carry, rng, 4)?);
    }
    match direction {
        Direction::Forward => PseudoOrbit::forward(entries, delta_exp),
        Direction::Backward => PseudoOrbit::backward(entries, delta_exp),
        Direction::TwoSided => Err(Error::Invalid(
            "use random_two_sided_pseudo_orbit for two-sided orbits".into(),
        )),
    }
}

/// Seeded random two-sided pseudo-orbit straddling index 0.
pub fn random_two_sided_pseudo_orbit(
    sft: &Sft,
    rng: &mut SplitMix64,
    len: usize,
    delta_exp: u32,
) -> Result<PseudoOrbit<TwoSidedPoint>> {
    let radius = delta_exp as usize + 1 + sft.context();
    let mut entries = Vec::with_capacity(len);
    entries.push(random_two_sided_point(sft, rng, radius)?);
    for _ in 1..len {
        let central = entries
            .last()
            .unwrap()
            .window(1 - radius as i64, 2 * radius);
        entries.push(two_sided_from_central(sft, &central, radius as i64, rng)?);
    }
    let start = -((len / 2) as i64);
    PseudoOrbit::two_sided(start, entries, delta_exp)
}

fn random_two_sided_point(sft: &Sft, rng: &mut SplitMix64, radius: usize) -> Result<TwoSidedPoint> {
    let p = random_point(sft, rng, 2 * radius + 4);
    let central = p.window(0, 2 * radius);
    two_sided_from_central(sft, &central, radius as i64, rng)
}

/// Build a two-sided point whose window starting at index `-anchor` is
/// `central`, completed admissibly on both sides (seeded walk forward,
/// canonical completion backward).
fn two_sided_from_central(
    sft: &Sft,
    central: &Word,
    anchor: i64,
    rng: &mut SplitMix64,
) -> Result<TwoSidedPoint> {
    let t = sft.context();
    if central.len() < t + anchor as usize || anchor < 0 {
        return Err(Error::Invalid("central word too short".into()));
    }
    let right_part = central.factor(anchor as usize, central.len() - anchor as usize);
    let left_read = central.prefix(anchor as usize);
    let right = complete_point(sft, &right_part, rng, 4)?;
    let vl = context_vertex(sft, &central.prefix(t))?;
    let (back_approach, back_period) = completion(sft.core(), vl, false);
    let mut left_out = left_read.reversed();
    left_out.extend(&back_approach);
    let left = LeftTail::from_mirrored(Ray::periodic(left_out, back_period)?);
    Ok(TwoSidedPoint::new(left, Word::empty(), right.ray))
}
