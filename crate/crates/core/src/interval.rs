//! Exact interval sets over the rationals: normalized disjoint lists of
//! intervals with open/closed rational endpoints (or ±∞), closed under
//! union, intersection and complement. All comparisons are exact.

use std::fmt;

use num_traits::Zero;

use crate::q::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lo {
    NegInf,
    At(Q, bool), // (value, closed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hi {
    PosInf,
    At(Q, bool),
}

/// A nonempty interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Lo,
    pub hi: Hi,
}

impl Interval {
    pub fn open(a: Q, b: Q) -> Option<Interval> {
        if a < b {
            Some(Interval {
                lo: Lo::At(a, false),
                hi: Hi::At(b, false),
            })
        } else {
            None
        }
    }

    pub fn closed(a: Q, b: Q) -> Option<Interval> {
        if a <= b {
            Some(Interval {
                lo: Lo::At(a, true),
                hi: Hi::At(b, true),
            })
        } else {
            None
        }
    }

    pub fn point(a: Q) -> Interval {
        Interval {
            lo: Lo::At(a.clone(), true),
            hi: Hi::At(a, true),
        }
    }

    pub fn all() -> Interval {
        Interval {
            lo: Lo::NegInf,
            hi: Hi::PosInf,
        }
    }

    fn is_valid(lo: &Lo, hi: &Hi) -> bool {
        match (lo, hi) {
            (Lo::NegInf, _) | (_, Hi::PosInf) => true,
            (Lo::At(a, ac), Hi::At(b, bc)) => a < b || (a == b && *ac && *bc),
        }
    }

    pub fn contains(&self, x: &Q) -> bool {
        let lo_ok = match &self.lo {
            Lo::NegInf => true,
            Lo::At(a, closed) => {
                if *closed {
                    a <= x
                } else {
                    a < x
                }
            }
        };
        let hi_ok = match &self.hi {
            Hi::PosInf => true,
            Hi::At(b, closed) => {
                if *closed {
                    x <= b
                } else {
                    x < b
                }
            }
        };
        lo_ok && hi_ok
    }
}

/// A normalized finite union of disjoint, non-touching intervals, sorted by
/// lower endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

fn lo_le(a: &Lo, b: &Lo) -> bool {
    // a ≤ b as lower bounds (NegInf least; closed beats open at equal value)
    match (a, b) {
        (Lo::NegInf, _) => true,
        (_, Lo::NegInf) => false,
        (Lo::At(x, xc), Lo::At(y, yc)) => x < y || (x == y && (*xc || !*yc)),
    }
}

fn hi_ge(a: &Hi, b: &Hi) -> bool {
    // a ≥ b as upper bounds
    match (a, b) {
        (Hi::PosInf, _) => true,
        (_, Hi::PosInf) => false,
        (Hi::At(x, xc), Hi::At(y, yc)) => x > y || (x == y && (*xc || !*yc)),
    }
}

/// Do two intervals overlap or touch without a gap (so their union is one
/// interval)?
fn mergeable(a: &Interval, b: &Interval) -> bool {
    // order so a.lo ≤ b.lo
    let (first, second) = if lo_le(&a.lo, &b.lo) { (a, b) } else { (b, a) };
    match (&first.hi, &second.lo) {
        (Hi::PosInf, _) => true,
        (Hi::At(x, xc), Lo::At(y, yc)) => x > y || (x == y && (*xc || *yc)),
        (Hi::At(_, _), Lo::NegInf) => true,
    }
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet { parts: vec![] }
    }

    pub fn all() -> IntervalSet {
        IntervalSet {
            parts: vec![Interval::all()],
        }
    }

    pub fn from_interval(iv: Interval) -> IntervalSet {
        IntervalSet { parts: vec![iv] }
    }

    pub fn from_intervals(ivs: impl IntoIterator<Item = Interval>) -> IntervalSet {
        let mut out = IntervalSet::empty();
        for iv in ivs {
            out = out.union(&IntervalSet::from_interval(iv));
        }
        out
    }

    /// The open ball `(c − r, c + r)`; empty when `r ≤ 0`.
    pub fn open_ball(center: &Q, radius: &Q) -> IntervalSet {
        if radius <= &Q::zero() {
            return IntervalSet::empty();
        }
        IntervalSet::from_interval(
            Interval::open(center - radius, center + radius).expect("radius positive"),
        )
    }

    /// `{y : |y − c| ≥ r}` — the exact 0-part of a complemented ball.
    pub fn closed_ball_complement(center: &Q, radius: &Q) -> IntervalSet {
        IntervalSet::open_ball(center, radius).complement()
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.parts.iter().any(|iv| iv.contains(x))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut parts: Vec<Interval> = self.parts.iter().chain(&other.parts).cloned().collect();
        parts.sort_by(|a, b| {
            if a.lo == b.lo {
                std::cmp::Ordering::Equal
            } else if lo_le(&a.lo, &b.lo) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let mut merged: Vec<Interval> = Vec::new();
        for iv in parts {
            match merged.last_mut() {
                Some(last) if mergeable(last, &iv) => {
                    if !hi_ge(&last.hi, &iv.hi) {
                        last.hi = iv.hi;
                    }
                }
                _ => merged.push(iv),
            }
        }
        IntervalSet { parts: merged }
    }

    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut cursor = Lo::NegInf;
        for iv in &self.parts {
            // gap between cursor and iv.lo
            let gap_hi = match &iv.lo {
                Lo::NegInf => None,
                Lo::At(v, closed) => Some(Hi::At(v.clone(), !closed)),
            };
            if let Some(hi) = gap_hi {
                if Interval::is_valid(&cursor, &hi) {
                    out.push(Interval {
                        lo: cursor.clone(),
                        hi,
                    });
                }
            }
            cursor = match &iv.hi {
                Hi::PosInf => return IntervalSet { parts: out },
                Hi::At(v, closed) => Lo::At(v.clone(), !closed),
            };
        }
        out.push(Interval {
            lo: cursor,
            hi: Hi::PosInf,
        });
        IntervalSet { parts: out }
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn set_eq(&self, other: &IntervalSet) -> bool {
        self.parts == other.parts
    }

    /// The exact preimage under `z ↦ a·z + b` with `a ≠ 0`: endpoints map
    /// through `(v − b)/a`, orientation flipping when `a < 0`.
    pub fn affine_preimage(s: &IntervalSet, a: &Q, b: &Q) -> IntervalSet {
        assert!(!num_traits::Zero::is_zero(a), "affine preimage needs a != 0");
        let pre = |v: &Q| (v - b) / a;
        let mut out = IntervalSet::empty();
        for iv in &s.parts {
            let (lo, hi) = if a > &Q::zero() {
                (
                    match &iv.lo {
                        Lo::NegInf => Lo::NegInf,
                        Lo::At(v, c) => Lo::At(pre(v), *c),
                    },
                    match &iv.hi {
                        Hi::PosInf => Hi::PosInf,
                        Hi::At(v, c) => Hi::At(pre(v), *c),
                    },
                )
            } else {
                (
                    match &iv.hi {
                        Hi::PosInf => Lo::NegInf,
                        Hi::At(v, c) => Lo::At(pre(v), *c),
                    },
                    match &iv.lo {
                        Lo::NegInf => Hi::PosInf,
                        Lo::At(v, c) => Hi::At(pre(v), *c),
                    },
                )
            };
            out = out.union(&IntervalSet::from_interval(Interval { lo, hi }));
        }
        out
    }

    /// Representative sample points: all finite endpoints, midpoints of
    /// bounded parts, and one point beyond each unbounded end. Useful for
    /// membership-oracle tests.
    pub fn probe_points(&self) -> Vec<Q> {
        let mut pts = Vec::new();
        for iv in &self.parts {
            match (&iv.lo, &iv.hi) {
                (Lo::At(a, _), Hi::At(b, _)) => {
                    pts.push(a.clone());
                    pts.push(b.clone());
                    pts.push((a + b) / Q::from_integer(2.into()));
                }
                (Lo::NegInf, Hi::At(b, _)) => {
                    pts.push(b.clone());
                    pts.push(b - Q::from_integer(1.into()));
                }
                (Lo::At(a, _), Hi::PosInf) => {
                    pts.push(a.clone());
                    pts.push(a + Q::from_integer(1.into()));
                }
                (Lo::NegInf, Hi::PosInf) => pts.push(Q::zero()),
            }
        }
        pts
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            Lo::NegInf => write!(f, "(-inf, ")?,
            Lo::At(v, true) => write!(f, "[{v}, ")?,
            Lo::At(v, false) => write!(f, "({v}, ")?,
        }
        match &self.hi {
            Hi::PosInf => write!(f, "+inf)"),
            Hi::At(v, true) => write!(f, "{v}]"),
            Hi::At(v, false) => write!(f, "{v})"),
        }
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        let strs: Vec<String> = self.parts.iter().map(|iv| iv.to_string()).collect();
        write!(f, "{}", strs.join(" u "))
    }
}
