use super::rat::Rat;
use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

/// A rational interval with explicit endpoint membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl RatInterval {
    pub fn closed(lo: Rat, hi: Rat) -> RatInterval {
        RatInterval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn point(x: Rat) -> RatInterval {
        RatInterval::closed(x.clone(), x)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above = x > &self.lo || (x == &self.lo && self.lo_closed);
        let below = x < &self.hi || (x == &self.hi && self.hi_closed);
        above && below
    }

    pub fn intersect(&self, other: &RatInterval) -> Option<RatInterval> {
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo.clone(), self.lo_closed)
        } else if self.lo < other.lo {
            (other.lo.clone(), other.lo_closed)
        } else {
            (self.lo.clone(), self.lo_closed && other.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (self.hi.clone(), self.hi_closed)
        } else if self.hi > other.hi {
            (other.hi.clone(), other.hi_closed)
        } else {
            (self.hi.clone(), self.hi_closed && other.hi_closed)
        };
        let out = RatInterval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        };
        if out.is_empty() {
            None
        } else {
            Some(out)
        }
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' },
        )
    }
}

/// One piece of a piecewise map: a polynomial of degree at most 2 on a
/// rational interval.
#[derive(Debug, Clone)]
pub struct Piece {
    pub domain: RatInterval,
    /// `c0 + c1 x + c2 x^2`.
    pub coeffs: [Rat; 3],
}

impl Piece {
    pub fn is_affine(&self) -> bool {
        self.coeffs[2].is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.is_affine() && self.coeffs[1].is_zero()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        &self.coeffs[0] + &(x * &(&self.coeffs[1] + &(x * &self.coeffs[2])))
    }

    /// Exact closed hull of the image of `sub` (a subinterval of the piece
    /// domain) under the piece polynomial: endpoint values, plus the vertex
    /// value when the quadratic's vertex lies inside.
    pub fn image_hull(&self, sub: &RatInterval) -> RatInterval {
        let a = self.eval(&sub.lo);
        let b = self.eval(&sub.hi);
        let mut lo = a.clone().min(b.clone());
        let mut hi = a.max(b);
        if !self.coeffs[2].is_zero() {
            let vertex = &(-&self.coeffs[1]) / &(&Rat::int(2) * &self.coeffs[2]);
            if vertex > sub.lo && vertex < sub.hi {
                let v = self.eval(&vertex);
                lo = lo.min(v.clone());
                hi = hi.max(v);
            }
        }
        RatInterval::closed(lo, hi)
    }
}

/// Preimage of a point: exact affine solutions plus, for constant pieces,
/// whole flagged intervals.
#[derive(Debug, Clone, Default)]
pub struct PreimageSet {
    pub points: BTreeSet<Rat>,
    pub intervals: Vec<RatInterval>,
}

impl PreimageSet {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.intervals.is_empty()
    }
}

/// An interval self-map with rational polynomial pieces partitioning a
/// closed domain. Construction validates the partition, continuity at the
/// internal boundaries and that the exact range stays inside the domain.
#[derive(Debug, Clone)]
pub struct PiecewiseMap {
    pieces: Vec<Piece>,
}

impl PiecewiseMap {
    pub fn new(pieces: Vec<Piece>) -> Result<PiecewiseMap> {
        if pieces.is_empty() {
            return Err(Error::Invalid("a map needs at least one piece".into()));
        }
        for p in &pieces {
            if p.domain.is_empty() || p.domain.is_degenerate() {
                return Err(Error::Invalid("piece domains must be nondegenerate".into()));
            }
        }
        for w in pieces.windows(2) {
            if w[0].domain.hi != w[1].domain.lo {
                return Err(Error::Invalid("piece domains must be contiguous".into()));
            }
            if w[0].domain.hi_closed == w[1].domain.lo_closed {
                return Err(Error::Invalid(
                    "exactly one side must own each internal boundary".into(),
                ));
            }
            // the maps handled here are continuous; validate it
            if w[0].eval(&w[0].domain.hi) != w[1].eval(&w[1].domain.lo) {
                return Err(Error::Invalid(format!(
                    "discontinuity at {}",
                    w[0].domain.hi
                )));
            }
        }
        let first = &pieces[0].domain;
        let last = &pieces[pieces.len() - 1].domain;
        if !first.lo_closed || !last.hi_closed {
            return Err(Error::Invalid(
                "the domain must be a closed interval".into(),
            ));
        }
        let domain = RatInterval::closed(first.lo.clone(), last.hi.clone());
        for p in &pieces {
            let hull = p.image_hull(&p.domain);
            if hull.lo < domain.lo || hull.hi > domain.hi {
                return Err(Error::Invalid(format!(
                    "piece over {} maps outside the domain",
                    p.domain
                )));
            }
        }
        Ok(PiecewiseMap { pieces })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn domain(&self) -> RatInterval {
        RatInterval::closed(
            self.pieces[0].domain.lo.clone(),
            self.pieces[self.pieces.len() - 1].domain.hi.clone(),
        )
    }

    pub fn all_affine(&self) -> Result<()> {
        for p in &self.pieces {
            if !p.is_affine() {
                return Err(Error::UnsupportedPiece {
                    lo: p.domain.lo.to_string(),
                    hi: p.domain.hi.to_string(),
                });
            }
        }
        Ok(())
    }

    fn owning_piece(&self, x: &Rat) -> Result<&Piece> {
        self.pieces
            .iter()
            .find(|p| p.domain.contains(x))
            .ok_or_else(|| Error::OutsideDomain(x.to_string()))
    }

    /// Exact evaluation.
    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        Ok(self.owning_piece(x)?.eval(x))
    }

    /// The exact orbit `x, f(x), ..., f^n(x)`.
    pub fn orbit(&self, x: &Rat, n: usize) -> Result<Vec<Rat>> {
        let mut out = vec![x.clone()];
        for _ in 0..n {
            let next = self.eval(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }

    /// Exact solution set of `f(x) = y`. Affine pieces contribute isolated
    /// points; constant pieces hitting `y` contribute their whole domain as
    /// a flagged interval. Quadratic pieces are rejected (roots leave the
    /// rationals).
    pub fn preimages(&self, y: &Rat) -> Result<PreimageSet> {
        self.all_affine()?;
        let mut out = PreimageSet::default();
        for p in &self.pieces {
            if p.is_constant() {
                if &p.coeffs[0] == y {
                    out.intervals.push(p.domain.clone());
                }
            } else {
                let x = &(y - &p.coeffs[0]) / &p.coeffs[1];
                if p.domain.contains(&x) {
                    out.points.insert(x);
                }
            }
        }
        Ok(out)
    }

    /// Exact preimage of an interval as a union of intervals (affine pieces
    /// only).
    pub fn preimage_of_interval(&self, target: &RatInterval) -> Result<Vec<RatInterval>> {
        self.all_affine()?;
        let mut out = Vec::new();
        for p in &self.pieces {
            if p.is_constant() {
                if target.contains(&p.coeffs[0]) {
                    out.push(p.domain.clone());
                }
                continue;
            }
            let increasing = p.coeffs[1] > Rat::zero();
            let inv = |v: &Rat| -> Rat { &(v - &p.coeffs[0]) / &p.coeffs[1] };
            let (lo, hi, lo_closed, hi_closed) = if increasing {
                (
                    inv(&target.lo),
                    inv(&target.hi),
                    target.lo_closed,
                    target.hi_closed,
                )
            } else {
                (
                    inv(&target.hi),
                    inv(&target.lo),
                    target.hi_closed,
                    target.lo_closed,
                )
            };
            let candidate = RatInterval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            };
            if let Some(hit) = candidate.intersect(&p.domain) {
                out.push(hit);
            }
        }
        Ok(out)
    }

    /// Serialise in the text format: one piece per line,
    /// `lo,hi,loClosed,hiClosed,c0,c1,c2`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.pieces {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                p.domain.lo,
                p.domain.hi,
                p.domain.lo_closed,
                p.domain.hi_closed,
                p.coeffs[0],
                p.coeffs[1],
                p.coeffs[2],
            ));
        }
        out
    }

    /// Parse the text format; `#` comments and blank lines are skipped and
    /// failures carry 1-based line numbers.
    pub fn parse(text: &str) -> Result<PiecewiseMap> {
        let mut pieces = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: idx + 1,
                msg: msg.to_string(),
            };
            let parts: Vec<&str> = line.split(',').map(str::trim).collect();
            if parts.len() != 7 {
                return Err(err("expected lo,hi,loClosed,hiClosed,c0,c1,c2"));
            }
            let rat = |s: &str| -> Result<Rat> {
                s.parse().map_err(|_| err(&format!("bad rational `{s}`")))
            };
            let flag = |s: &str| -> Result<bool> {
                match s {
                    "true" => Ok(true),
                    "false" => Ok(false),
                    _ => Err(err(&format!("bad boolean `{s}`"))),
                }
            };
            pieces.push(Piece {
                domain: RatInterval {
                    lo: rat(parts[0])?,
                    hi: rat(parts[1])?,
                    lo_closed: flag(parts[2])?,
                    hi_closed: flag(parts[3])?,
                },
                coeffs: [rat(parts[4])?, rat(parts[5])?, rat(parts[6])?],
            });
        }
        PiecewiseMap::new(pieces)
    }
}

/// A finite delta-pseudo-orbit of exact rationals.
#[derive(Debug, Clone)]
pub struct PseudoOrbitNum {
    pub entries: Vec<Rat>,
    pub delta: Rat,
}

/// Outcome of the exact delta check on a numeric pseudo-orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumVerdict {
    Ok,
    FailedAt(usize),
}

impl NumVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, NumVerdict::Ok)
    }
}

/// Exact check that `|f(x_i) - x_{i+1}| < delta` for every step; reports the
/// first failing index otherwise.
pub fn verify_pseudo_orbit_num(map: &PiecewiseMap, po: &PseudoOrbitNum) -> Result<NumVerdict> {
    for (i, pair) in po.entries.windows(2).enumerate() {
        let jump = (&map.eval(&pair[0])? - &pair[1]).abs();
        if jump >= po.delta {
            return Ok(NumVerdict::FailedAt(i));
        }
    }
    Ok(NumVerdict::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn plateau_map() -> PiecewiseMap {
        // 2x+1 on [-1,-1/2), 0 on [-1/2,1/2), 2x-1 on [1/2,1]
        PiecewiseMap::parse(
            "-1,-1/2,true,false,1,2,0\n-1/2,1/2,true,false,0,0,0\n1/2,1,true,true,-1,2,0",
        )
        .unwrap()
    }

    pub(crate) fn vee_map() -> PiecewiseMap {
        // 2x+2 on [-1,0), 2-2x on [0,1), 2x-2 on [1,2]
        PiecewiseMap::parse("-1,0,true,false,2,2,0\n0,1,true,false,2,-2,0\n1,2,true,true,-2,2,0")
            .unwrap()
    }

    pub(crate) fn square_map() -> PiecewiseMap {
        // (x+1)^2 - 1 on [-1,0), x^2 on [0,1]
        PiecewiseMap::parse("-1,0,true,false,0,2,1\n0,1,true,true,0,0,1").unwrap()
    }

    #[test]
    fn eval_on_the_worked_maps() {
        assert_eq!(vee_map().eval(&Rat::frac(1, 2)).unwrap(), Rat::int(1));
        assert_eq!(square_map().eval(&Rat::zero()).unwrap(), Rat::zero());
        assert_eq!(plateau_map().eval(&Rat::frac(1, 4)).unwrap(), Rat::zero());
    }

    #[test]
    fn preimages_of_the_vee_map() {
        let m = vee_map();
        let p = m.preimages(&Rat::zero()).unwrap();
        assert!(p.intervals.is_empty());
        let pts: Vec<String> = p.points.iter().map(Rat::to_string).collect();
        assert_eq!(pts, vec!["-1", "1"]);
        let p2 = m.preimages(&Rat::int(2)).unwrap();
        let pts: Vec<String> = p2.points.iter().map(Rat::to_string).collect();
        assert_eq!(pts, vec!["0", "2"]);
    }

    #[test]
    fn constant_piece_preimage_is_an_interval() {
        let m = plateau_map();
        let p = m.preimages(&Rat::zero()).unwrap();
        assert_eq!(p.intervals.len(), 1);
        assert_eq!(
            p.intervals[0],
            RatInterval {
                lo: Rat::frac(-1, 2),
                hi: Rat::frac(1, 2),
                lo_closed: true,
                hi_closed: false,
            }
        );
        // 2x+1 = 0 at -1/2 is outside its half-open piece; 2x-1 = 0 at 1/2 is in
        let pts: Vec<String> = p.points.iter().map(Rat::to_string).collect();
        assert_eq!(pts, vec!["1/2"]);
    }

    #[test]
    fn quadratic_pieces_reject_preimages() {
        match square_map().preimages(&Rat::zero()) {
            Err(Error::UnsupportedPiece { .. }) => {}
            other => panic!("expected unsupported piece, got {other:?}"),
        }
    }

    #[test]
    fn interval_preimage_of_plateau() {
        let m = plateau_map();
        let levels = m
            .preimage_of_interval(&RatInterval::closed(Rat::frac(-1, 2), Rat::frac(1, 2)))
            .unwrap();
        // left piece pulls [-1/2, 0) back to [-3/4, -1/2); the plateau hits 0;
        // the right piece pulls [0, 1/2] back to [1/2, 3/4]
        assert_eq!(levels.len(), 3);
        assert_eq!(levels[0].to_string(), "[-3/4, -1/2)");
        assert_eq!(levels[1].to_string(), "[-1/2, 1/2)");
        assert_eq!(levels[2].to_string(), "[1/2, 3/4]");
    }

    #[test]
    fn pseudo_orbit_verification_is_exact() {
        let m = square_map();
        let orbit = m.orbit(&Rat::frac(3, 4), 3).unwrap();
        let po = PseudoOrbitNum {
            entries: orbit,
            delta: Rat::frac(1, 1000),
        };
        assert!(verify_pseudo_orbit_num(&m, &po).unwrap().is_ok());
        let po = PseudoOrbitNum {
            entries: vec![Rat::frac(3, 4), Rat::frac(1, 2)],
            delta: Rat::frac(1, 100),
        };
        assert_eq!(
            verify_pseudo_orbit_num(&m, &po).unwrap(),
            NumVerdict::FailedAt(0)
        );
    }

    #[test]
    fn discontinuous_or_escaping_maps_rejected() {
        assert!(PiecewiseMap::parse("0,1,true,false,0,1,0\n1,2,true,true,5,0,0").is_err());
        assert!(PiecewiseMap::parse("0,1,true,true,0,3,0").is_err());
    }

    #[test]
    fn range_analysis_validates_invariance() {
        // x^2 keeps [0,1] inside; used by the falsification obligations
        let m = square_map();
        let p = &m.pieces()[1];
        let hull = p.image_hull(&RatInterval::closed(Rat::zero(), Rat::one()));
        assert_eq!(hull, RatInterval::closed(Rat::zero(), Rat::one()));
    }
}
