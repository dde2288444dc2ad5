//! Effective metric spaces over exact rationals, complemented balls, moduli
//! of openness as evaluable expressions, covering-inclusion checks, and the
//! canonical metric base-moduli.
//!
//! Two space variants: validated finite distance tables (exhaustive checks)
//! and the rational line (exact interval arithmetic on ball-union normal
//! forms). All order comparisons are decidable, so every check here is
//! exact.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::carrier::{Carrier, ExtSubset};
use crate::complemented::{Complemented, CPoint};
use crate::interval::{Hi, Interval, IntervalSet, Lo};
use crate::q::{fmt_q, half, max_q, min_q, qi, Q, QRng};
use crate::Error;

/// A finite metric space given by a rational distance matrix; the induced
/// carrier has `x = y :⇔ d(x,y) = 0` and `x ≠ y :⇔ d(x,y) > 0`.
#[derive(Debug)]
pub struct FiniteMetric {
    carrier: Arc<Carrier>,
    d: Vec<Q>,
}

impl FiniteMetric {
    /// Validates `d(x,x) = 0`, nonnegativity, symmetry and the triangle
    /// inequality, all exactly; errors carry the witnessing tuple.
    pub fn validate(ids: Vec<String>, table: Vec<Vec<Q>>) -> Result<Arc<FiniteMetric>, Error> {
        let n = ids.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Model("metric table must be n x n".into()));
        }
        let d = |x: usize, y: usize| &table[x][y];
        for x in 0..n {
            if !d(x, x).is_zero() {
                return Err(Error::MetricAxiom(format!(
                    "d({id},{id}) = {} != 0",
                    fmt_q(d(x, x)),
                    id = ids[x]
                )));
            }
            for y in 0..n {
                if d(x, y) < &Q::zero() {
                    return Err(Error::MetricAxiom(format!(
                        "d({},{}) = {} < 0",
                        ids[x],
                        ids[y],
                        fmt_q(d(x, y))
                    )));
                }
                if d(x, y) != d(y, x) {
                    return Err(Error::MetricAxiom(format!(
                        "d({},{}) != d({},{})",
                        ids[x], ids[y], ids[y], ids[x]
                    )));
                }
                for z in 0..n {
                    if d(x, z) > &(d(x, y) + d(y, z)) {
                        return Err(Error::MetricAxiom(format!(
                            "triangle fails on ({},{},{})",
                            ids[x], ids[y], ids[z]
                        )));
                    }
                }
            }
        }
        let mut eq_pairs = Vec::new();
        let mut ap_pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if d(x, y).is_zero() {
                    eq_pairs.push((x, y));
                } else {
                    ap_pairs.push((x, y));
                }
            }
        }
        let carrier = Carrier::validate(ids, &eq_pairs, &ap_pairs)?;
        // the induced inequality is a tight apartness; assert the flags
        let flags = carrier.flags();
        debug_assert!(flags.tight && flags.symmetric && flags.cotransitive && flags.extensional);
        Ok(Arc::new(FiniteMetric {
            carrier,
            d: table.into_iter().flatten().collect(),
        }))
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn dist(&self, x: usize, y: usize) -> &Q {
        &self.d[x * self.carrier.len() + y]
    }

    /// `B(x, ε) = ([d_x < ε], [d_x ≥ ε])`; the disjointness certificate
    /// follows from the triangle inequality and always succeeds.
    pub fn ball(&self, center: usize, radius: &Q) -> Result<FiniteBall, Error> {
        if radius <= &Q::zero() {
            return Err(Error::NonPositiveRadius(fmt_q(radius)));
        }
        let one = ExtSubset::saturated(
            &self.carrier,
            (0..self.len()).filter(|&y| self.dist(center, y) < radius),
        );
        let zero = ExtSubset::saturated(
            &self.carrier,
            (0..self.len()).filter(|&y| self.dist(center, y) >= radius),
        );
        let subset = Complemented::new(one, zero).expect("ball parts are apart by the triangle inequality");
        Ok(FiniteBall {
            center,
            radius: radius.clone(),
            subset,
        })
    }

    /// Canonical radii around a center: the distinct positive row entries
    /// and one radius past the maximum. Every ball around the center is
    /// cs-equal to a ball with one of these radii.
    pub fn canonical_radii(&self, center: usize) -> Vec<Q> {
        let mut vals: Vec<Q> = (0..self.len())
            .map(|y| self.dist(center, y).clone())
            .filter(|v| v > &Q::zero())
            .collect();
        vals.sort();
        vals.dedup();
        let beyond = vals.last().map(|m| m + qi(1)).unwrap_or_else(|| qi(1));
        vals.push(beyond);
        vals
    }

    /// All distinct complemented balls of the space, with a canonical
    /// (center, radius) presentation each.
    pub fn canonical_balls(&self) -> Vec<FiniteBall> {
        let mut out: Vec<FiniteBall> = Vec::new();
        for x in 0..self.len() {
            for r in self.canonical_radii(x) {
                let b = self.ball(x, &r).expect("positive radius");
                if !out.iter().any(|p| p.subset.key() == b.subset.key()) {
                    out.push(b);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct FiniteBall {
    pub center: usize,
    pub radius: Q,
    pub subset: Complemented,
}

impl FiniteBall {
    /// The canonical ball modulus `op(y) = ε − d(x, y)`.
    pub fn modulus_expr(&self) -> OpExpr {
        OpExpr::ball(PointRef::Elem(self.center), self.radius.clone())
    }
}

/// A point reference inside a modulus expression: an element of a finite
/// space or a rational on the line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointRef {
    Elem(usize),
    Rat(Q),
}

/// An evaluable modulus-of-openness expression. `Table` is the
/// finite-domain escape hatch used for inverse-image moduli, where a
/// continuity transformer has been applied pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpExpr {
    Const(Q),
    /// `ε − d(center, ·)`
    RadiusMinusDist { center: PointRef, radius: Q },
    Min(Box<OpExpr>, Box<OpExpr>),
    Max(Box<OpExpr>, Box<OpExpr>),
    /// `d(anchor, ·) / 2`
    HalfDist { anchor: PointRef },
    /// `d(·, ·)/2` — the coempty-pole rule; its domain is `∅_X`, which is
    /// empty on a genuine metric space, so this is a rule object only.
    HalfSelfDist,
    Table(BTreeMap<usize, Q>),
}

impl OpExpr {
    pub fn ball(center: PointRef, radius: Q) -> OpExpr {
        OpExpr::RadiusMinusDist { center, radius }
    }

    pub fn eval_finite(&self, space: &FiniteMetric, x: usize) -> Result<Q, Error> {
        Ok(match self {
            OpExpr::Const(q) => q.clone(),
            OpExpr::RadiusMinusDist { center, radius } => match center {
                PointRef::Elem(c) => radius - space.dist(*c, x),
                PointRef::Rat(_) => {
                    return Err(Error::Model("line point in finite-space modulus".into()))
                }
            },
            OpExpr::Min(a, b) => min_q(a.eval_finite(space, x)?, b.eval_finite(space, x)?),
            OpExpr::Max(a, b) => max_q(a.eval_finite(space, x)?, b.eval_finite(space, x)?),
            OpExpr::HalfDist { anchor } => match anchor {
                PointRef::Elem(a) => half(space.dist(*a, x)),
                PointRef::Rat(_) => {
                    return Err(Error::Model("line point in finite-space modulus".into()))
                }
            },
            OpExpr::HalfSelfDist => half(space.dist(x, x)),
            OpExpr::Table(t) => t
                .get(&x)
                .cloned()
                .ok_or_else(|| Error::UnregisteredModulus(space.carrier.id(x).to_string()))?,
        })
    }

    pub fn eval_line(&self, z: &Q) -> Result<Q, Error> {
        Ok(self.to_pwa()?.eval(z))
    }

    /// The expression as a piecewise-affine function on the line.
    pub fn to_pwa(&self) -> Result<Pwa, Error> {
        Ok(match self {
            OpExpr::Const(q) => Pwa::constant(q.clone()),
            OpExpr::RadiusMinusDist { center, radius } => match center {
                PointRef::Rat(c) => Pwa::scaled_abs(c, qi(-1), radius.clone()),
                PointRef::Elem(_) => {
                    return Err(Error::Model("finite element in line modulus".into()))
                }
            },
            OpExpr::Min(a, b) => Pwa::min(&a.to_pwa()?, &b.to_pwa()?),
            OpExpr::Max(a, b) => Pwa::max(&a.to_pwa()?, &b.to_pwa()?),
            OpExpr::HalfDist { anchor } => match anchor {
                PointRef::Rat(c) => Pwa::scaled_abs(c, crate::q::q(1, 2), Q::zero()),
                PointRef::Elem(_) => {
                    return Err(Error::Model("finite element in line modulus".into()))
                }
            },
            OpExpr::HalfSelfDist => Pwa::constant(Q::zero()),
            OpExpr::Table(_) => {
                return Err(Error::Model("point table is not a line modulus".into()))
            }
        })
    }

    /// Every non-table form is a rule defined on the whole space; this is
    /// the extension side condition for union moduli.
    pub fn is_globally_evaluable(&self) -> bool {
        match self {
            OpExpr::Table(_) => false,
            OpExpr::Min(a, b) | OpExpr::Max(a, b) => {
                a.is_globally_evaluable() && b.is_globally_evaluable()
            }
            _ => true,
        }
    }

    /// Pulls the expression back along the affine map `f(x) = a·x + b`
    /// (a ≠ 0) and rescales values by `1/|a|`: the inverse-image modulus of
    /// a uniformly continuous affine map, kept in closed form.
    pub fn pull_back_affine(&self, a: &Q, b: &Q) -> Result<OpExpr, Error> {
        if a.is_zero() {
            return Err(Error::Model("affine pull-back needs a != 0".into()));
        }
        let abs_a = crate::q::abs_q(a);
        let pre = |c: &Q| (c - b) / a;
        Ok(match self {
            OpExpr::Const(q) => OpExpr::Const(q / &abs_a),
            OpExpr::RadiusMinusDist { center, radius } => match center {
                PointRef::Rat(c) => OpExpr::RadiusMinusDist {
                    center: PointRef::Rat(pre(c)),
                    radius: radius / &abs_a,
                },
                PointRef::Elem(_) => {
                    return Err(Error::Model("finite element in line modulus".into()))
                }
            },
            OpExpr::Min(x, y) => OpExpr::Min(
                Box::new(x.pull_back_affine(a, b)?),
                Box::new(y.pull_back_affine(a, b)?),
            ),
            OpExpr::Max(x, y) => OpExpr::Max(
                Box::new(x.pull_back_affine(a, b)?),
                Box::new(y.pull_back_affine(a, b)?),
            ),
            OpExpr::HalfDist { anchor } => match anchor {
                PointRef::Rat(c) => OpExpr::HalfDist {
                    anchor: PointRef::Rat(pre(c)),
                },
                PointRef::Elem(_) => {
                    return Err(Error::Model("finite element in line modulus".into()))
                }
            },
            OpExpr::HalfSelfDist => OpExpr::HalfSelfDist,
            OpExpr::Table(_) => {
                return Err(Error::Model("point table is not a line modulus".into()))
            }
        })
    }
}

/// A piecewise-affine function on the rationals: `pieces[i]` is the
/// `(slope, intercept)` on the i-th segment of the break partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pwa {
    breaks: Vec<Q>,
    pieces: Vec<(Q, Q)>,
}

impl Pwa {
    pub fn constant(c: Q) -> Pwa {
        Pwa {
            breaks: vec![],
            pieces: vec![(Q::zero(), c)],
        }
    }

    /// `offset + scale · |z − center|`.
    pub fn scaled_abs(center: &Q, scale: Q, offset: Q) -> Pwa {
        // left of center: offset + scale·(center − z)
        let left = (-scale.clone(), &offset + &scale * center);
        let right = (scale.clone(), &offset - &scale * center);
        Pwa {
            breaks: vec![center.clone()],
            pieces: vec![left, right],
        }
    }

    fn segment_index(&self, z: &Q) -> usize {
        self.breaks.partition_point(|b| b <= z)
    }

    pub fn eval(&self, z: &Q) -> Q {
        let (s, i) = &self.pieces[self.segment_index(z)];
        s * z + i
    }

    pub fn breaks(&self) -> &[Q] {
        &self.breaks
    }

    /// The affine piece valid on the open segment containing `probe`.
    fn piece_at(&self, probe: &Q) -> (Q, Q) {
        self.pieces[self.segment_index(probe)].clone()
    }

    fn probe_for_segment(breaks: &[Q], i: usize) -> Q {
        let two = qi(2);
        if breaks.is_empty() {
            Q::zero()
        } else if i == 0 {
            &breaks[0] - qi(1)
        } else if i == breaks.len() {
            &breaks[breaks.len() - 1] + qi(1)
        } else {
            (&breaks[i - 1] + &breaks[i]) / two
        }
    }

    fn merge(a: &Pwa, b: &Pwa, pick_max: bool) -> Pwa {
        let mut breaks: Vec<Q> = a.breaks.iter().chain(&b.breaks).cloned().collect();
        breaks.sort();
        breaks.dedup();
        // add crossing points interior to the merged segments
        let mut crossings = Vec::new();
        for i in 0..=breaks.len() {
            let probe = Pwa::probe_for_segment(&breaks, i);
            let (s1, i1) = a.piece_at(&probe);
            let (s2, i2) = b.piece_at(&probe);
            if s1 != s2 {
                let z = (&i2 - &i1) / (&s1 - &s2);
                let inside = (i == 0 || breaks[i - 1] < z) && (i == breaks.len() || z < breaks[i]);
                if inside {
                    crossings.push(z);
                }
            }
        }
        breaks.extend(crossings);
        breaks.sort();
        breaks.dedup();
        let mut pieces = Vec::with_capacity(breaks.len() + 1);
        for i in 0..=breaks.len() {
            let probe = Pwa::probe_for_segment(&breaks, i);
            let va = a.eval(&probe);
            let vb = b.eval(&probe);
            let take_a = if pick_max { va >= vb } else { va <= vb };
            pieces.push(if take_a {
                a.piece_at(&probe)
            } else {
                b.piece_at(&probe)
            });
        }
        Pwa { breaks, pieces }
    }

    pub fn min(a: &Pwa, b: &Pwa) -> Pwa {
        Pwa::merge(a, b, false)
    }

    pub fn max(a: &Pwa, b: &Pwa) -> Pwa {
        Pwa::merge(a, b, true)
    }
}

/// A complemented ball on the rational line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineBall {
    pub center: Q,
    pub radius: Q,
}

impl LineBall {
    pub fn new(center: Q, radius: Q) -> Result<LineBall, Error> {
        if radius <= Q::zero() {
            return Err(Error::NonPositiveRadius(fmt_q(&radius)));
        }
        Ok(LineBall { center, radius })
    }

    pub fn modulus(&self) -> OpExpr {
        OpExpr::ball(PointRef::Rat(self.center.clone()), self.radius.clone())
    }
}

/// A line open in ball-union normal form: the 1-part is a finite union of
/// open intervals, the 0-part the finite intersection of the balls'
/// complement parts. Kept exactly as interval sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineOpen {
    one: IntervalSet,
    zero: IntervalSet,
}

impl LineOpen {
    pub fn ball(b: &LineBall) -> LineOpen {
        LineOpen {
            one: IntervalSet::open_ball(&b.center, &b.radius),
            zero: IntervalSet::closed_ball_complement(&b.center, &b.radius),
        }
    }

    /// cs-union of finitely many balls: `(⋃ 1-parts, ⋂ 0-parts)`.
    pub fn from_balls(balls: &[LineBall]) -> Result<LineOpen, Error> {
        let mut it = balls.iter();
        let first = it.next().ok_or(Error::EmptyFamily)?;
        let mut acc = LineOpen::ball(first);
        for b in it {
            acc = acc.union(&LineOpen::ball(b));
        }
        Ok(acc)
    }

    pub fn union(&self, other: &LineOpen) -> LineOpen {
        LineOpen {
            one: self.one.union(&other.one),
            zero: self.zero.intersection(&other.zero),
        }
    }

    pub fn intersection(&self, other: &LineOpen) -> LineOpen {
        LineOpen {
            one: self.one.intersection(&other.one),
            zero: self.zero.union(&other.zero),
        }
    }

    pub fn one(&self) -> &IntervalSet {
        &self.one
    }

    pub fn zero(&self) -> &IntervalSet {
        &self.zero
    }

    /// Assembles a line open from already-computed parts. Used by exact
    /// preimage constructions that preserve the normal form.
    pub fn from_parts_unchecked(one: IntervalSet, zero: IntervalSet) -> LineOpen {
        LineOpen { one, zero }
    }

    /// `A ⊆ B :⇔ A¹ ⊆ B¹ & B⁰ ⊆ A⁰`, both sides exact.
    pub fn leq(&self, other: &LineOpen) -> bool {
        self.one.is_subset(&other.one) && other.zero.is_subset(&self.zero)
    }

    pub fn cs_eq(&self, other: &LineOpen) -> bool {
        self.leq(other) && other.leq(self)
    }

    /// Canonical registry key.
    pub fn key(&self) -> String {
        format!("one {} zero {}", self.one, self.zero)
    }
}

#[derive(Clone, Debug)]
pub struct LineTdReport {
    pub td_open: bool,
    /// `⋃_{x ∈ G¹} (x − op(x), x + op(x))`, computed exactly.
    pub assigned_union: IntervalSet,
    pub one_side_ok: bool,
    pub zero_side_ok: bool,
}

/// The bounded open segments of the 1-part, refined by the modulus'
/// breakpoints.
fn refined_segments(one: &IntervalSet, pwa: &Pwa) -> Result<Vec<(Q, Q)>, Error> {
    let mut segments = Vec::new();
    for part in one.parts() {
        let (a, b) = match (&part.lo, &part.hi) {
            (Lo::At(a, false), Hi::At(b, false)) => (a.clone(), b.clone()),
            _ => {
                return Err(Error::Model(
                    "line open is not in ball-union normal form".into(),
                ))
            }
        };
        let mut cuts: Vec<Q> = pwa
            .breaks()
            .iter()
            .filter(|z| **z > a && **z < b)
            .cloned()
            .collect();
        cuts.sort();
        let mut lo = a;
        for c in cuts {
            segments.push((lo.clone(), c.clone()));
            lo = c;
        }
        segments.push((lo, b));
    }
    Ok(segments)
}

/// On the open segment `(a,b)` with modulus piece `v(z) = s·z + i`:
/// positivity of `v` on the whole segment, and the exact union
/// `⋃_{z∈(a,b)} (z − v(z), z + v(z)) = (min(l(a),l(b)), max(r(a),r(b)))`.
fn segment_union(seg: &(Q, Q), piece: &(Q, Q)) -> Result<Interval, Error> {
    let (a, b) = seg;
    let (s, i) = piece;
    let v = |z: &Q| s * z + i;
    let va = v(a);
    let vb = v(b);
    let positive = va >= Q::zero() && vb >= Q::zero() && (va > Q::zero() || vb > Q::zero());
    if !positive {
        // a witness point inside the segment where the modulus is ≤ 0
        let two = qi(2);
        let witness = if va <= Q::zero() && vb <= Q::zero() {
            (a + b) / two
        } else if va <= Q::zero() {
            let root = -(i / s);
            (a + &root) / two
        } else {
            let root = -(i / s);
            (&root + b) / two
        };
        return Err(Error::InvalidModulus {
            at: fmt_q(&witness),
            value: fmt_q(&(s * &witness + i)),
        });
    }
    let l = |z: &Q| z - v(z);
    let r = |z: &Q| z + v(z);
    let lo = min_q(l(a), l(b));
    let hi = max_q(r(a), r(b));
    Interval::open(lo, hi).ok_or_else(|| Error::Model("degenerate segment union".into()))
}

/// Exact Td-openness on the line: the union of modulus-assigned balls over
/// the 1-part must stay inside the open.
pub fn check_td_open_line(open: &LineOpen, op: &OpExpr) -> Result<LineTdReport, Error> {
    let pwa = op.to_pwa()?;
    let mut assigned = IntervalSet::empty();
    for seg in refined_segments(&open.one, &pwa)? {
        let probe = (&seg.0 + &seg.1) / qi(2);
        let piece = pwa.piece_at(&probe);
        assigned = assigned.union(&IntervalSet::from_interval(segment_union(&seg, &piece)?));
    }
    let one_side_ok = assigned.is_subset(&open.one);
    let zero_side_ok = assigned.intersection(&open.zero).is_empty();
    Ok(LineTdReport {
        td_open: one_side_ok && zero_side_ok,
        assigned_union: assigned,
        one_side_ok,
        zero_side_ok,
    })
}

#[derive(Clone, Debug)]
pub struct CoveringReport {
    pub covering: bool,
    /// The covering inclusion `⋂_{y∈G¹}[d_y ≥ op(y)] ⊆ G⁰`.
    pub inclusion_ok: bool,
    /// The easy half: `G¹ ⊆ ⋃_{y∈G¹}[d_y < op(y)]`.
    pub one_covered: bool,
}

/// Exact covering check on the line: with `U` the assigned-ball union,
/// `⋂_{y∈G¹}[d_y ≥ op(y)] = comp(U)`, so the covering inclusion is
/// `comp(U) ⊆ G⁰`.
pub fn covering_check_line(open: &LineOpen, op: &OpExpr) -> Result<CoveringReport, Error> {
    let td = check_td_open_line(open, op)?;
    let inclusion_ok = td.assigned_union.complement().is_subset(&open.zero);
    let one_covered = open.one.is_subset(&td.assigned_union);
    Ok(CoveringReport {
        covering: inclusion_ok && one_covered,
        inclusion_ok,
        one_covered,
    })
}

#[derive(Clone, Debug)]
pub struct FiniteTdReport {
    pub td_open: bool,
    /// Per 1-part element: the modulus value there.
    pub values: Vec<(usize, Q)>,
}

/// Exhaustive Td-openness on a finite space: `B(x, op(x)) ⊆ G` for every
/// `x ∈ G¹`; a non-positive modulus value is an error with witness.
pub fn check_td_open_finite(
    space: &FiniteMetric,
    open: &Complemented,
    op: &OpExpr,
) -> Result<FiniteTdReport, Error> {
    if !Arc::ptr_eq(open.carrier(), space.carrier()) {
        return Err(Error::CarrierMismatch);
    }
    let mut values = Vec::new();
    let mut td_open = true;
    for x in open.one().members() {
        let v = op.eval_finite(space, x)?;
        if v <= Q::zero() {
            return Err(Error::InvalidModulus {
                at: space.carrier.id(x).to_string(),
                value: fmt_q(&v),
            });
        }
        let ball = space.ball(x, &v)?;
        td_open &= ball.subset.leq(open)?;
        values.push((x, v));
    }
    Ok(FiniteTdReport { td_open, values })
}

/// Exhaustive covering check on a finite space.
pub fn covering_check_finite(
    space: &FiniteMetric,
    open: &Complemented,
    op: &OpExpr,
) -> Result<CoveringReport, Error> {
    let td = check_td_open_finite(space, open, op)?;
    let n = space.len();
    let mut intersection_mask: u64 = space.carrier.full_mask();
    let mut union_mask: u64 = 0;
    for (y, v) in &td.values {
        let mut ge_mask = 0u64;
        let mut lt_mask = 0u64;
        for z in 0..n {
            if space.dist(*y, z) >= v {
                ge_mask |= 1 << z;
            } else {
                lt_mask |= 1 << z;
            }
        }
        intersection_mask &= ge_mask;
        union_mask |= lt_mask;
    }
    if td.values.is_empty() {
        // ⋂ over an empty index set is the whole space
        intersection_mask = space.carrier.full_mask();
    }
    let inclusion_ok = intersection_mask & !open.zero().mask() == 0;
    let one_covered = open.one().mask() & !union_mask == 0 || td.values.is_empty() && open.one().is_empty_set();
    Ok(CoveringReport {
        covering: inclusion_ok && one_covered,
        inclusion_ok,
        one_covered,
    })
}

/// Append-only modulus registry: cs-equal opens share one modulus object.
/// Registration of an already-present key returns the registered object.
#[derive(Default)]
pub struct ModulusRegistry {
    inner: Mutex<BTreeMap<String, Arc<OpExpr>>>,
}

impl ModulusRegistry {
    pub fn new() -> ModulusRegistry {
        ModulusRegistry::default()
    }

    pub fn register(&self, key: String, build: impl FnOnce() -> OpExpr) -> Arc<OpExpr> {
        let mut map = self.inner.lock().expect("registry lock");
        map.entry(key).or_insert_with(|| Arc::new(build())).clone()
    }

    pub fn get(&self, key: &str) -> Option<Arc<OpExpr>> {
        self.inner.lock().expect("registry lock").get(key).cloned()
    }

    pub fn keys(&self) -> Vec<String> {
        self.inner.lock().expect("registry lock").keys().cloned().collect()
    }
}

/// Registry key for a finite-space open.
pub fn finite_open_key(open: &Complemented) -> String {
    let (one, zero) = open.key();
    format!("finite one {one:#x} zero {zero:#x}")
}

/// The canonical combination recipes for moduli of openness.
pub fn intersection_modulus(a: &OpExpr, b: &OpExpr) -> OpExpr {
    OpExpr::Min(Box::new(a.clone()), Box::new(b.clone()))
}

/// Union modulus via the max of global extensions. Requires both operands
/// to be globally evaluable rules; on exact rationals the 1-tightness side
/// condition holds by trichotomy.
pub fn union_modulus(a: &OpExpr, b: &OpExpr) -> Result<OpExpr, Error> {
    if !a.is_globally_evaluable() || !b.is_globally_evaluable() {
        return Err(Error::SideCondition(
            "union modulus needs globally evaluable extensions".into(),
        ));
    }
    Ok(OpExpr::Max(Box::new(a.clone()), Box::new(b.clone())))
}

/// Union modulus for a pairwise-disjoint family on a finite space: the
/// value at `x` is the modulus of the unique member whose 1-part holds
/// `x`, found by search. The disjointness hypothesis
/// `Gᵢ ∩ Gⱼ ⊆ (∅_X, X)` is required, not assumed.
pub fn disjoint_union_modulus(
    space: &FiniteMetric,
    family: &[(Complemented, OpExpr)],
) -> Result<(Complemented, OpExpr), Error> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let bot = Complemented::zero_x(space.carrier());
    for (i, (g, _)) in family.iter().enumerate() {
        for (j, (h, _)) in family.iter().enumerate() {
            if i != j && !g.intersection(h)?.leq(&bot)? {
                return Err(Error::SideCondition(format!(
                    "family members {i} and {j} are not disjoint"
                )));
            }
        }
    }
    let mut union = family[0].0.clone();
    for (g, _) in &family[1..] {
        union = union.union(g)?;
    }
    let mut table = BTreeMap::new();
    for x in union.one().members() {
        // unique up to equality by disjointness; search realizes the choice
        let mut holders = family.iter().filter(|(g, _)| g.one().contains(x));
        let (_, op) = holders.next().expect("union 1-part is covered");
        debug_assert!(holders.next().is_none(), "disjointness gives uniqueness");
        table.insert(x, op.eval_finite(space, x)?);
    }
    Ok((union, OpExpr::Table(table)))
}

pub fn pole_const_one_modulus() -> OpExpr {
    OpExpr::Const(qi(1))
}

pub fn coempty_modulus() -> OpExpr {
    OpExpr::HalfSelfDist
}

pub fn copoint_modulus(anchor: PointRef) -> OpExpr {
    OpExpr::HalfDist { anchor }
}

/// The canonical metric base-moduli: `β_X(x) := B(x,1)`,
/// `β_∅(x) := B(x, d(x,x)/2)` (empty domain on a genuine metric), and
/// `β_{B,C}(z) := B(z, ζ_z)` with `ζ_z = (ε − d(x,z)) ∧ (δ − d(y,z))`.
pub struct FiniteBaseModuli<'a> {
    space: &'a FiniteMetric,
}

pub fn finite_base_moduli(space: &FiniteMetric) -> FiniteBaseModuli<'_> {
    FiniteBaseModuli { space }
}

impl<'a> FiniteBaseModuli<'a> {
    pub fn beta_x(&self, x: usize) -> FiniteBall {
        self.space.ball(x, &qi(1)).expect("radius 1 is positive")
    }

    /// `ζ_z` for the pair of balls; positive exactly on `B¹ ∩ C¹`.
    pub fn zeta(&self, b: &FiniteBall, c: &FiniteBall, z: usize) -> Q {
        min_q(
            &b.radius - self.space.dist(b.center, z),
            &c.radius - self.space.dist(c.center, z),
        )
    }

    pub fn beta_pair(&self, b: &FiniteBall, c: &FiniteBall, z: usize) -> Result<FiniteBall, Error> {
        self.space.ball(z, &self.zeta(b, c, z))
    }

    /// Base₁–Base₃ plus the three covering inclusions, exhaustively over the
    /// canonical balls. Base₂ is vacuous: `∅_X` is empty on a genuine
    /// metric space.
    pub fn validate(&self) -> Result<BaseModuliReport, Error> {
        let space = self.space;
        let mut base1 = true;
        for x in 0..space.len() {
            base1 &= self.beta_x(x).subset.one().contains(x);
        }
        // covering for β_X: ⋂_x [d_x ≥ 1] ⊆ ∅_X
        let mut inter = space.carrier.full_mask();
        for x in 0..space.len() {
            let mut ge = 0u64;
            for z in 0..space.len() {
                if space.dist(x, z) >= &qi(1) {
                    ge |= 1 << z;
                }
            }
            inter &= ge;
        }
        let covering_x = inter & !ExtSubset::empty_subset(space.carrier()).mask() == 0;
        let balls = space.canonical_balls();
        let mut base3 = true;
        let mut covering_pairs = true;
        for b in &balls {
            for c in &balls {
                let meet = b.subset.intersection(&c.subset)?;
                let mut inter = space.carrier.full_mask();
                let mut inhabited = false;
                for z in meet.one().members() {
                    inhabited = true;
                    let zeta = self.zeta(b, c, z);
                    if zeta <= Q::zero() {
                        return Err(Error::InvalidModulus {
                            at: space.carrier.id(z).to_string(),
                            value: fmt_q(&zeta),
                        });
                    }
                    let bz = self.beta_pair(b, c, z)?;
                    base3 &= bz.subset.one().contains(z) && bz.subset.leq(&meet)?;
                    let mut ge = 0u64;
                    for w in 0..space.len() {
                        if space.dist(z, w) >= &zeta {
                            ge |= 1 << w;
                        }
                    }
                    inter &= ge;
                }
                if !inhabited {
                    inter = space.carrier.full_mask();
                }
                covering_pairs &= inter & !meet.zero().mask() == 0;
            }
        }
        Ok(BaseModuliReport {
            base1,
            base2_vacuous: true,
            base3,
            covering_x,
            covering_empty: true,
            covering_pairs,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseModuliReport {
    pub base1: bool,
    /// `∅_X` is empty on a genuine metric space, so Base₂ holds vacuously.
    pub base2_vacuous: bool,
    pub base3: bool,
    pub covering_x: bool,
    pub covering_empty: bool,
    pub covering_pairs: bool,
}

impl BaseModuliReport {
    pub fn all_ok(&self) -> bool {
        self.base1 && self.base3 && self.covering_x && self.covering_pairs
    }
}

/// The line variant of the metric base-moduli. Base₁/Base₃ are checked on
/// seeded samples (counts and seed reported); the pair covering inclusion
/// is exact interval arithmetic per sampled pair; the space-covering flag
/// holds because every sample point lies in its own unit ball.
pub struct LineBaseModuli;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineBaseReport {
    pub base1: bool,
    pub base3: bool,
    pub covering_x: bool,
    /// Base₂ and its covering are vacuous: `∅_ℚ` is empty.
    pub covering_empty: bool,
    pub covering_pairs: bool,
    pub samples: usize,
    pub seed: u64,
}

impl LineBaseReport {
    pub fn all_ok(&self) -> bool {
        self.base1 && self.base3 && self.covering_x && self.covering_empty && self.covering_pairs
    }
}

impl LineBaseModuli {
    pub fn beta_x(x: &Q) -> LineBall {
        LineBall::new(x.clone(), qi(1)).expect("radius 1")
    }

    pub fn zeta(b: &LineBall, c: &LineBall, z: &Q) -> Q {
        min_q(
            &b.radius - crate::q::abs_q(&(&b.center - z)),
            &c.radius - crate::q::abs_q(&(&c.center - z)),
        )
    }

    pub fn beta_pair(b: &LineBall, c: &LineBall, z: &Q) -> Result<LineBall, Error> {
        LineBall::new(z.clone(), Self::zeta(b, c, z))
    }

    pub fn validate(samples: usize, seed: u64) -> Result<LineBaseReport, Error> {
        let mut rng = QRng::new(seed);
        let mut base1 = true;
        let mut base3 = true;
        let mut covering_x = true;
        let mut covering_pairs = true;
        for _ in 0..samples {
            let x = rng.rational(50);
            base1 &= LineOpen::ball(&Self::beta_x(&x)).one().contains(&x);
            // the β_X covering intersection excludes every point: x is in
            // its own unit ball
            covering_x &= crate::q::abs_q(&(&x - &x)) < qi(1);
            // a pair of balls with overlapping 1-parts and a sample point inside
            let b = LineBall::new(rng.rational(20), rng.positive(10))?;
            let c_center = &b.center + rng.rational(5);
            let c = LineBall::new(c_center, rng.positive(10))?;
            let meet = LineOpen::ball(&b).intersection(&LineOpen::ball(&c));
            for z in meet.one().probe_points() {
                if !meet.one().contains(&z) {
                    continue;
                }
                let zeta = Self::zeta(&b, &c, &z);
                if zeta <= Q::zero() {
                    return Err(Error::InvalidModulus {
                        at: fmt_q(&z),
                        value: fmt_q(&zeta),
                    });
                }
                let bc = Self::beta_pair(&b, &c, &z)?;
                base3 &= LineOpen::ball(&bc).leq(&meet);
            }
            // exact pair covering via interval arithmetic, when inhabited
            if !meet.one().is_empty()
                && meet.one().parts().iter().all(|p| {
                    matches!(
                        (&p.lo, &p.hi),
                        (crate::interval::Lo::At(_, false), crate::interval::Hi::At(_, false))
                    )
                })
            {
                let op = intersection_modulus(&b.modulus(), &c.modulus());
                covering_pairs &= covering_check_line(&meet, &op)?.covering;
            }
        }
        Ok(LineBaseReport {
            base1,
            base3,
            covering_x,
            covering_empty: true,
            covering_pairs,
            samples,
            seed,
        })
    }
}

/// Induced base relations on a finite metric space (the ball base): the
/// equality compares memberships across all canonical balls, the
/// inequality searches for a separating ball.
pub fn induced_ball_relations(space: &FiniteMetric) -> (Vec<bool>, Vec<bool>) {
    let n = space.len();
    let balls = space.canonical_balls();
    let mut eq = vec![false; n * n];
    let mut neq = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            eq[x * n + y] = balls
                .iter()
                .all(|b| b.subset.one().contains(x) == b.subset.one().contains(y));
            neq[x * n + y] = balls.iter().any(|b| {
                (b.subset.one().contains(x) && b.subset.zero().contains(y))
                    || (b.subset.one().contains(y) && b.subset.zero().contains(x))
            });
        }
    }
    (eq, neq)
}

/// Canonical points of a finite metric space are the carrier's canonical
/// complemented points.
pub fn canonical_point(space: &FiniteMetric, x: usize) -> CPoint {
    CPoint::canonical(space.carrier(), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q::q;

    fn two_point_space() -> Arc<FiniteMetric> {
        FiniteMetric::validate(
            vec!["a".into(), "b".into()],
            vec![vec![qi(0), qi(2)], vec![qi(2), qi(0)]],
        )
        .unwrap()
    }

    #[test]
    fn metric_validation_errors() {
        let bad = FiniteMetric::validate(
            vec!["a".into(), "b".into()],
            vec![vec![qi(0), qi(1)], vec![qi(2), qi(0)]],
        );
        assert!(matches!(bad, Err(Error::MetricAxiom(_))));
        let triangle = FiniteMetric::validate(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![qi(0), qi(1), qi(5)],
                vec![qi(1), qi(0), qi(1)],
                vec![qi(5), qi(1), qi(0)],
            ],
        );
        assert!(matches!(triangle, Err(Error::MetricAxiom(msg)) if msg.contains("triangle")));
    }

    #[test]
    fn finite_ball_and_modulus() {
        let m = two_point_space();
        let b = m.ball(0, &qi(1)).unwrap();
        assert_eq!(b.subset.one().member_ids(), vec!["a"]);
        assert_eq!(b.subset.zero().member_ids(), vec!["b"]);
        assert!(m.ball(0, &qi(0)).is_err());
        // ball modulus passes Td and covering
        let op = b.modulus_expr();
        let td = check_td_open_finite(&m, &b.subset, &op).unwrap();
        assert!(td.td_open);
        let cov = covering_check_finite(&m, &b.subset, &op).unwrap();
        assert!(cov.covering);
    }

    #[test]
    fn weak_threshold_set_fails_td() {
        // ([d_a ≤ 2], ∅) with the const-1 modulus: the boundary point b
        // cannot keep its ball inside, covering-wise the set is not Td-open
        // with op(b)=1... the 1-part is everything here so td passes; take
        // instead ([d_a < 3], [d_a ≥ 3]) restricted wrongly: use a modulus
        // too large at the boundary.
        let m = FiniteMetric::validate(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![qi(0), qi(1), qi(2)],
                vec![qi(1), qi(0), qi(1)],
                vec![qi(2), qi(1), qi(0)],
            ],
        )
        .unwrap();
        // G = ({a,b}, {c}): at b the ball B(b, 1+) reaches c
        let g = Complemented::new(
            ExtSubset::saturated(m.carrier(), [0, 1]),
            ExtSubset::saturated(m.carrier(), [2]),
        )
        .unwrap();
        let bad = OpExpr::Const(qi(2));
        let td = check_td_open_finite(&m, &g, &bad).unwrap();
        assert!(!td.td_open);
        // with op(y) = 1 − d(a,y)... not positive at b; 1/2-scaled threshold works
        let good = OpExpr::Min(
            Box::new(OpExpr::Const(qi(1))),
            Box::new(OpExpr::ball(PointRef::Elem(0), qi(2))),
        );
        let td = check_td_open_finite(&m, &g, &good).unwrap();
        assert!(td.td_open);
    }

    #[test]
    fn line_ball_td_and_covering() {
        let b = LineBall::new(qi(0), qi(1)).unwrap();
        let open = LineOpen::ball(&b);
        let op = b.modulus();
        assert_eq!(op.eval_line(&q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(op.eval_line(&qi(0)).unwrap(), qi(1));
        let td = check_td_open_line(&open, &op).unwrap();
        assert!(td.td_open);
        // the assigned union is exactly (−1, 1)
        assert!(td.assigned_union.set_eq(open.one()));
        let cov = covering_check_line(&open, &op).unwrap();
        assert!(cov.covering);
    }

    #[test]
    fn ball_inclusion_on_line() {
        // B(1/2, 1/2) ⊆ B(0,1): (0,1) ⊆ (−1,1) and complements reversed
        let small = LineOpen::ball(&LineBall::new(q(1, 2), q(1, 2)).unwrap());
        let big = LineOpen::ball(&LineBall::new(qi(0), qi(1)).unwrap());
        assert!(small.leq(&big));
        assert!(!big.leq(&small));
    }

    #[test]
    fn union_modulus_covers_two_balls() {
        let b1 = LineBall::new(qi(0), qi(1)).unwrap();
        let b2 = LineBall::new(qi(3), qi(2)).unwrap();
        let open = LineOpen::from_balls(&[b1.clone(), b2.clone()]).unwrap();
        let op = union_modulus(&b1.modulus(), &b2.modulus()).unwrap();
        // max(1−0, 2−3) = 1 at z=0
        assert_eq!(op.eval_line(&qi(0)).unwrap(), qi(1));
        let td = check_td_open_line(&open, &op).unwrap();
        assert!(td.td_open, "assigned {}", td.assigned_union);
        let cov = covering_check_line(&open, &op).unwrap();
        assert!(cov.covering);
    }

    #[test]
    fn intersection_modulus_on_line() {
        let b1 = LineBall::new(qi(0), qi(2)).unwrap();
        let b2 = LineBall::new(qi(1), qi(2)).unwrap();
        let open = LineOpen::ball(&b1).intersection(&LineOpen::ball(&b2));
        let op = intersection_modulus(&b1.modulus(), &b2.modulus());
        // min(2−1, 2−0) = 1 at z=1
        assert_eq!(op.eval_line(&qi(1)).unwrap(), qi(1));
        let td = check_td_open_line(&open, &op).unwrap();
        assert!(td.td_open);
        let cov = covering_check_line(&open, &op).unwrap();
        assert!(cov.covering);
    }

    #[test]
    fn copoint_modulus_value() {
        let op = copoint_modulus(PointRef::Rat(qi(0)));
        assert_eq!(op.eval_line(&qi(3)).unwrap(), q(3, 2));
    }

    #[test]
    fn escaping_modulus_fails_td_with_exact_union() {
        // a positive but oversized modulus pushes assigned balls outside
        let open = LineOpen::ball(&LineBall::new(qi(0), qi(1)).unwrap());
        let big = OpExpr::Const(qi(10));
        let td = check_td_open_line(&open, &big).unwrap();
        assert!(!td.td_open && !td.one_side_ok && !td.zero_side_ok);
        // the union is exactly (−11, 11): every point assigns (z−10, z+10)
        let expected = IntervalSet::open_ball(&qi(0), &qi(11));
        assert!(td.assigned_union.set_eq(&expected));
    }

    #[test]
    fn touching_balls_keep_the_hole() {
        // B(0,1) ∪ B(2,1): the 1-part has a hole at 1, and the union-max
        // modulus respects it exactly
        let b1 = LineBall::new(qi(0), qi(1)).unwrap();
        let b2 = LineBall::new(qi(2), qi(1)).unwrap();
        let open = LineOpen::from_balls(&[b1.clone(), b2.clone()]).unwrap();
        assert_eq!(open.one().parts().len(), 2);
        assert!(!open.one().contains(&qi(1)));
        let op = union_modulus(&b1.modulus(), &b2.modulus()).unwrap();
        let td = check_td_open_line(&open, &op).unwrap();
        assert!(td.td_open);
        assert!(td.assigned_union.set_eq(open.one()));
        let cov = covering_check_line(&open, &op).unwrap();
        assert!(cov.covering);
        // the zero part keeps the point 1: it is apart-from-both-balls
        assert!(open.zero().contains(&qi(1)));
    }

    #[test]
    fn invalid_modulus_has_witness() {
        let open = LineOpen::ball(&LineBall::new(qi(0), qi(1)).unwrap());
        // ε − |z − 5| is negative on (−1,1)
        let bad = OpExpr::ball(PointRef::Rat(qi(5)), qi(1));
        let err = check_td_open_line(&open, &bad).unwrap_err();
        assert!(matches!(err, Error::InvalidModulus { .. }));
    }

    #[test]
    fn ball_monotonicity_under_radius() {
        let mut rng = QRng::new(11);
        for _ in 0..50 {
            let c = rng.rational(50);
            let e1 = rng.positive(30);
            let e2 = &e1 + rng.positive(30);
            let small = LineOpen::ball(&LineBall::new(c.clone(), e1).unwrap());
            let big = LineOpen::ball(&LineBall::new(c.clone(), e2).unwrap());
            assert!(small.leq(&big));
        }
    }

    #[test]
    fn disjoint_union_modulus_by_unique_index() {
        let m = FiniteMetric::validate(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![qi(0), qi(1), qi(5)],
                vec![qi(1), qi(0), qi(5)],
                vec![qi(5), qi(5), qi(0)],
            ],
        )
        .unwrap();
        // B(a, 2) = ({a,b}, {c}) and B(c, 1) = ({c}, {a,b}) are disjoint
        let b1 = m.ball(0, &qi(2)).unwrap();
        let b2 = m.ball(2, &qi(1)).unwrap();
        let fam = vec![
            (b1.subset.clone(), b1.modulus_expr()),
            (b2.subset.clone(), b2.modulus_expr()),
        ];
        let (union, op) = disjoint_union_modulus(&m, &fam).unwrap();
        assert!(check_td_open_finite(&m, &union, &op).unwrap().td_open);
        assert!(covering_check_finite(&m, &union, &op).unwrap().covering);
        // overlapping members violate the hypothesis
        let b3 = m.ball(1, &qi(2)).unwrap();
        let fam = vec![
            (b1.subset.clone(), b1.modulus_expr()),
            (b3.subset.clone(), b3.modulus_expr()),
        ];
        assert!(matches!(
            disjoint_union_modulus(&m, &fam),
            Err(Error::SideCondition(_))
        ));
    }

    #[test]
    fn finite_base_moduli_validate() {
        let m = FiniteMetric::validate(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![qi(0), qi(1), qi(2)],
                vec![qi(1), qi(0), qi(1)],
                vec![qi(2), qi(1), qi(0)],
            ],
        )
        .unwrap();
        let bm = finite_base_moduli(&m);
        let report = bm.validate().unwrap();
        assert!(report.all_ok(), "{report:?}");
        // β_X(0) = B(0,1)
        assert_eq!(bm.beta_x(0).radius, qi(1));
    }

    #[test]
    fn line_base_moduli_zeta_example() {
        // β_{B(0,2),B(1,2)}(1) = B(1,1): ζ = min(2−1, 2−0) = 1
        let b = LineBall::new(qi(0), qi(2)).unwrap();
        let c = LineBall::new(qi(1), qi(2)).unwrap();
        let bc = LineBaseModuli::beta_pair(&b, &c, &qi(1)).unwrap();
        assert_eq!(bc.radius, qi(1));
        assert_eq!(bc.center, qi(1));
        let rep = LineBaseModuli::validate(40, 3).unwrap();
        assert!(rep.all_ok(), "{rep:?}");
    }

    #[test]
    fn induced_relations_match_metric() {
        let m = FiniteMetric::validate(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![qi(0), qi(1), qi(2)],
                vec![qi(1), qi(0), qi(1)],
                vec![qi(2), qi(1), qi(0)],
            ],
        )
        .unwrap();
        let (eq, neq) = induced_ball_relations(&m);
        let n = m.len();
        for x in 0..n {
            for y in 0..n {
                assert_eq!(eq[x * n + y], m.dist(x, y).is_zero());
                assert_eq!(neq[x * n + y], m.dist(x, y) > &Q::zero());
            }
        }
    }

    #[test]
    fn geq_part_is_neq_complement_of_lt_part() {
        // [d_x ≥ ε] = [d_x < ε]^{≠} exactly on finite tables, and balls are
        // 1-tight by rational trichotomy: ¬(d < ε) ⇒ d ≥ ε
        let m = two_point_space();
        for x in 0..m.len() {
            for r in m.canonical_radii(x) {
                let b = m.ball(x, &r).unwrap();
                assert!(b
                    .subset
                    .zero()
                    .set_eq(&b.subset.one().neq_complement())
                    .unwrap());
                assert!(b
                    .subset
                    .one()
                    .weak_complement()
                    .is_subset(b.subset.zero())
                    .unwrap());
            }
        }
    }

    #[test]
    fn order_facts_for_exact_rationals() {
        // ¬(x<y ∧ x'<y') ⇒ x≥y ∨ x'≥y' and the ∨ variant, decidable on Q
        let mut rng = QRng::new(5);
        for _ in 0..200 {
            let (x, y) = (rng.rational(40), rng.rational(40));
            let (x2, y2) = (rng.rational(40), rng.rational(40));
            if !(x < y && x2 < y2) {
                assert!(x >= y || x2 >= y2);
            }
            if !(x < y || x2 < y2) {
                assert!(x >= y && x2 >= y2);
            }
        }
    }

    #[test]
    fn registry_shares_objects() {
        let reg = ModulusRegistry::new();
        let b = LineBall::new(qi(0), qi(1)).unwrap();
        let open = LineOpen::ball(&b);
        let m1 = reg.register(open.key(), || b.modulus());
        // a cs-equal presentation must come back as the same object
        let same = LineOpen::ball(&LineBall::new(qi(0), qi(1)).unwrap());
        let m2 = reg.register(same.key(), || OpExpr::Const(qi(42)));
        assert!(Arc::ptr_eq(&m1, &m2));
    }

    #[test]
    fn registry_registration_is_atomic() {
        // concurrent registrations of one key all yield the same object
        let reg = Arc::new(ModulusRegistry::new());
        let handles: Vec<_> = (0..8)
            .map(|i| {
                let reg = reg.clone();
                std::thread::spawn(move || reg.register("shared".into(), || OpExpr::Const(qi(i))))
            })
            .collect();
        let got: Vec<Arc<OpExpr>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for m in &got[1..] {
            assert!(Arc::ptr_eq(&got[0], m));
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn pwa_strategy() -> impl Strategy<Value = Pwa> {
            let leaf = prop_oneof![
                (-30i64..30, 1i64..8).prop_map(|(n, d)| Pwa::constant(q(n, d))),
                // ±|z − c| shapes with offsets, the forms moduli produce
                (-30i64..30, 1i64..8, -10i64..10, 1i64..4, prop::bool::ANY).prop_map(
                    |(cn, cd, on, od, neg)| {
                        let scale = if neg { qi(-1) } else { qi(1) };
                        Pwa::scaled_abs(&q(cn, cd), scale, q(on, od))
                    }
                ),
            ];
            leaf.prop_recursive(3, 12, 2, |inner| {
                prop_oneof![
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Pwa::min(&a, &b)),
                    (inner.clone(), inner).prop_map(|(a, b)| Pwa::max(&a, &b)),
                ]
            })
        }

        proptest! {
            /// Piecewise-affine min/max agree with pointwise evaluation at
            /// breakpoints, midpoints, and points beyond the range.
            #[test]
            fn pwa_merge_matches_pointwise(
                a in pwa_strategy(),
                b in pwa_strategy(),
                zn in -40i64..40, zd in 1i64..8,
            ) {
                let mn = Pwa::min(&a, &b);
                let mx = Pwa::max(&a, &b);
                let mut probes: Vec<Q> = vec![q(zn, zd)];
                for brk in mn.breaks().iter().chain(mx.breaks()) {
                    probes.push(brk.clone());
                    probes.push(brk + q(1, 3));
                    probes.push(brk - q(1, 3));
                }
                for z in &probes {
                    let (va, vb) = (a.eval(z), b.eval(z));
                    prop_assert_eq!(mn.eval(z), crate::q::min_q(va.clone(), vb.clone()));
                    prop_assert_eq!(mx.eval(z), crate::q::max_q(va, vb));
                }
            }

            /// The line Td checker agrees with pointwise sampling for
            /// arbitrary (even failing) moduli over the expression
            /// alphabet, and its invalid-modulus witnesses are genuine.
            #[test]
            fn line_td_check_consistent_with_sampling(
                ballspec in prop::collection::vec((-20i64..20, 1i64..6, 1i64..20, 1i64..6), 1..4),
                opspec in prop::collection::vec((-20i64..20, 1i64..6, -10i64..20, 1i64..6, any::<bool>()), 1..4),
            ) {
                let balls: Vec<LineBall> = ballspec
                    .iter()
                    .map(|(cn, cd, rn, rd)| LineBall::new(q(*cn, *cd), q(*rn, *rd)).unwrap())
                    .collect();
                let open = LineOpen::from_balls(&balls).unwrap();
                // a random max/min tree of ball and constant leaves
                let mut op: Option<OpExpr> = None;
                for (cn, cd, rn, rd, use_max) in &opspec {
                    let leaf = if rn % 3 == 0 {
                        OpExpr::Const(q(*rn, *rd))
                    } else {
                        OpExpr::ball(PointRef::Rat(q(*cn, *cd)), q(*rn, *rd))
                    };
                    op = Some(match op {
                        None => leaf,
                        Some(prev) if *use_max => {
                            OpExpr::Max(Box::new(prev), Box::new(leaf))
                        }
                        Some(prev) => OpExpr::Min(Box::new(prev), Box::new(leaf)),
                    });
                }
                let op = op.unwrap();
                let mut samples: Vec<Q> = open.one().probe_points();
                samples.retain(|z| open.one().contains(z));
                match check_td_open_line(&open, &op) {
                    Err(Error::InvalidModulus { at, value }) => {
                        let z = crate::q::parse_q(&at).unwrap();
                        let v = crate::q::parse_q(&value).unwrap();
                        prop_assert!(open.one().contains(&z));
                        prop_assert_eq!(op.eval_line(&z).unwrap(), v.clone());
                        prop_assert!(v <= Q::zero());
                    }
                    Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
                    Ok(td) => {
                        for z in &samples {
                            let v = op.eval_line(z).unwrap();
                            // check succeeded, so the modulus is positive
                            prop_assert!(v > Q::zero());
                            let assigned =
                                LineOpen::ball(&LineBall::new(z.clone(), v).unwrap());
                            // sampled inclusion agrees with the verdict
                            if td.td_open {
                                prop_assert!(assigned.leq(&open));
                            }
                            prop_assert!(td.assigned_union.contains(z));
                        }
                    }
                }
            }

            /// Ball monotonicity in the radius, on random rational data.
            #[test]
            fn line_ball_monotone(
                cn in -50i64..50, cd in 1i64..10,
                rn in 1i64..50, rd in 1i64..10,
                sn in 1i64..50, sd in 1i64..10,
            ) {
                let c = q(cn, cd);
                let r1 = q(rn, rd);
                let r2 = &r1 + q(sn, sd);
                let small = LineOpen::ball(&LineBall::new(c.clone(), r1).unwrap());
                let big = LineOpen::ball(&LineBall::new(c, r2).unwrap());
                prop_assert!(small.leq(&big));
            }
        }
    }

    #[test]
    fn pwa_min_max() {
        let a = Pwa::scaled_abs(&qi(0), qi(-1), qi(1)); // 1 − |z|
        let b = Pwa::scaled_abs(&qi(3), qi(-1), qi(2)); // 2 − |z−3|
        let m = Pwa::max(&a, &b);
        assert_eq!(m.eval(&qi(0)), qi(1));
        assert_eq!(m.eval(&qi(3)), qi(2));
        assert_eq!(m.eval(&qi(1)), qi(0)); // max(0, 0) at the crossing
        assert_eq!(m.eval(&qi(2)), qi(1));
        let n = Pwa::min(&a, &b);
        assert_eq!(n.eval(&qi(0)), qi(-1));
    }
}
