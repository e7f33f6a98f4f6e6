use super::map::{verify_pseudo_orbit_num, PiecewiseMap, PseudoOrbitNum, RatInterval};
use super::rat::Rat;
use crate::error::{Error, Result};

/// Iteration cap for the certificate construction: within the documented
/// delta margin the squaring run needs a handful of entries and the descent
/// at most ~12 (each step at least doubles the distance from 0 until it
/// passes 3/4).
const STEP_BUDGET: usize = 400;

/// Smallest admissible delta exponent. The descent squares its operands, so
/// the exact numerators double in bit length every step; 2^-10 keeps the
/// certificate's rationals under ~50 kilobits, beyond which exact
/// verification stops being cheap.
const MIN_DELTA_EXP: u32 = 10;

/// The machine-checked obligations of a shadowing falsification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obligation {
    /// The constructed orbit is a delta-pseudo-orbit, exactly.
    DeltaCertificate,
    /// `[0, 1]` is forward invariant under the map (exact range analysis).
    UnitIntervalInvariant,
    /// Every domain point within epsilon of the start lies in `[0, 1]`.
    EpsilonBallInUnitInterval,
    /// The final entry sits below -3/4, hence farther than epsilon from
    /// `[0, 1]`.
    FinalEntrySeparated,
}

impl Obligation {
    pub const ALL: [Obligation; 4] = [
        Obligation::DeltaCertificate,
        Obligation::UnitIntervalInvariant,
        Obligation::EpsilonBallInUnitInterval,
        Obligation::FinalEntrySeparated,
    ];

    pub fn describe(self) -> &'static str {
        match self {
            Obligation::DeltaCertificate => "pseudo-orbit satisfies its delta certificate",
            Obligation::UnitIntervalInvariant => "[0,1] is forward invariant",
            Obligation::EpsilonBallInUnitInterval => "epsilon-ball of the start stays in [0,1]",
            Obligation::FinalEntrySeparated => "final entry is separated from [0,1] by epsilon",
        }
    }
}

/// A delta-pseudo-orbit that no point can epsilon-shadow, with its four
/// exactly checkable obligations. Any shadowing candidate must start within
/// epsilon of the first entry, hence inside the forward-invariant `[0, 1]`,
/// while the pseudo-orbit ends farther than epsilon below it.
#[derive(Debug, Clone)]
pub struct FalsificationCert {
    pub epsilon: Rat,
    pub delta: Rat,
    pub start: Rat,
    pub pseudo_orbit: PseudoOrbitNum,
}

impl FalsificationCert {
    pub fn final_entry(&self) -> &Rat {
        self.pseudo_orbit.entries.last().unwrap()
    }

    /// Re-check every obligation against the map, from scratch.
    pub fn verify(&self, map: &PiecewiseMap) -> Result<Vec<(Obligation, bool)>> {
        let unit = RatInterval::closed(Rat::zero(), Rat::one());
        let delta_ok = verify_pseudo_orbit_num(map, &self.pseudo_orbit)?.is_ok()
            && self.pseudo_orbit.delta == self.delta
            && self.pseudo_orbit.entries.first() == Some(&self.start);
        let invariant_ok = map
            .pieces()
            .iter()
            .all(|p| match p.domain.intersect(&unit) {
                None => true,
                Some(sub) => {
                    let hull = p.image_hull(&sub);
                    hull.lo >= unit.lo && hull.hi <= unit.hi
                }
            });
        let ball_ok = &self.start - &self.epsilon >= Rat::zero()
            && map.domain().hi <= Rat::one()
            && self.start <= Rat::one();
        let fin = self.final_entry();
        let separated_ok = fin < &Rat::frac(-3, 4) && fin.abs() > self.epsilon;
        Ok(vec![
            (Obligation::DeltaCertificate, delta_ok),
            (Obligation::UnitIntervalInvariant, invariant_ok),
            (Obligation::EpsilonBallInUnitInterval, ball_ok),
            (Obligation::FinalEntrySeparated, separated_ok),
        ])
    }

    pub fn all_verified(&self, map: &PiecewiseMap) -> Result<bool> {
        Ok(self.verify(map)?.iter().all(|&(_, ok)| ok))
    }

    /// What the verified obligations jointly establish.
    pub fn conclusion(&self) -> String {
        format!(
            "no point {}-shadows this {}-pseudo-orbit",
            self.epsilon, self.delta
        )
    }
}

/// Construct the falsification pseudo-orbit: exact squaring iterates from
/// 3/4 down below delta, a jump to 0, a jump to `-delta/2`, then exact
/// iterates of the left piece until the value passes -3/4. Requires
/// `0 < delta < 1/4`; iterate counts above the documented budget (which
/// cannot happen for `delta >= 2^-64`) are an error.
pub fn falsify_shadowing(
    map: &PiecewiseMap,
    epsilon: &Rat,
    delta: &Rat,
) -> Result<FalsificationCert> {
    if !(delta >= &Rat::pow2_neg(MIN_DELTA_EXP) && delta < &Rat::frac(1, 4)) {
        return Err(Error::Invalid(format!(
            "delta {delta} outside the documented margin [2^-{MIN_DELTA_EXP}, 1/4)"
        )));
    }
    if !(epsilon > &Rat::zero() && epsilon <= &Rat::frac(3, 4)) {
        return Err(Error::Invalid(format!(
            "epsilon {epsilon} outside the documented margin (0, 3/4]"
        )));
    }
    let start = Rat::frac(3, 4);
    let mut entries = vec![start.clone()];
    while entries.last().unwrap() >= delta {
        if entries.len() > STEP_BUDGET {
            return Err(Error::IterationBudget("squaring down below delta".into()));
        }
        let next = map.eval(entries.last().unwrap())?;
        entries.push(next);
    }
    entries.push(Rat::zero());
    entries.push(-(delta / &Rat::int(2)));
    while entries.last().unwrap() >= &Rat::frac(-3, 4) {
        if entries.len() > 2 * STEP_BUDGET {
            return Err(Error::IterationBudget("descending past -3/4".into()));
        }
        let next = map.eval(entries.last().unwrap())?;
        entries.push(next);
    }
    let pseudo_orbit = PseudoOrbitNum {
        entries,
        delta: delta.clone(),
    };
    Ok(FalsificationCert {
        epsilon: epsilon.clone(),
        delta: delta.clone(),
        start,
        pseudo_orbit,
    })
}
