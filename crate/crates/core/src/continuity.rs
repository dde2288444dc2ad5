//! Pointwise/uniform continuity-modulus calculus: radius transformers, the
//! inversion constructions between continuity moduli and moduli of
//! openness, and the round-trip checks.
//!
//! All comparisons are exact rational equality: the round-trip statements
//! are equalities, not approximations.

use std::sync::Arc;

use num_traits::Zero;

use crate::carrier::FunctionTable;
use crate::complemented::Complemented;
use crate::interval::IntervalSet;
use crate::metric::{
    check_td_open_finite, check_td_open_line, FiniteMetric, LineBall, LineOpen, OpExpr,
};
use crate::q::{abs_q, fmt_q, min_q, Q};
use crate::Error;

/// A radius transformer `(0, +∞) → (0, +∞)` in closed or tabular form. All
/// forms are monotone nondecreasing, which makes them commute with `min`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transformer {
    Identity,
    Const(Q),
    /// `ε ↦ c · ε` with `c > 0`.
    Scale(Q),
    /// `outer ∘ inner`.
    Compose(Box<Transformer>, Box<Transformer>),
    Min(Box<Transformer>, Box<Transformer>),
    /// Finite-domain step table: the value at `ε` is the value of the first
    /// step with threshold ≥ ε, else the fallback. Thresholds ascend and
    /// values are nondecreasing, keeping the transformer monotone.
    Step { steps: Vec<(Q, Q)>, fallback: Q },
}

impl Transformer {
    pub fn scale(c: Q) -> Result<Transformer, Error> {
        if c <= Q::zero() {
            return Err(Error::Model("scale factor must be positive".into()));
        }
        Ok(Transformer::Scale(c))
    }

    pub fn compose(outer: Transformer, inner: Transformer) -> Transformer {
        Transformer::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn eval(&self, eps: &Q) -> Result<Q, Error> {
        if eps <= &Q::zero() {
            return Err(Error::Model(format!(
                "transformer evaluated at non-positive {}",
                fmt_q(eps)
            )));
        }
        let v = match self {
            Transformer::Identity => eps.clone(),
            Transformer::Const(c) => c.clone(),
            Transformer::Scale(c) => c * eps,
            Transformer::Compose(outer, inner) => outer.eval(&inner.eval(eps)?)?,
            Transformer::Min(a, b) => min_q(a.eval(eps)?, b.eval(eps)?),
            Transformer::Step { steps, fallback } => steps
                .iter()
                .find(|(t, _)| t >= eps)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| fallback.clone()),
        };
        if v <= Q::zero() {
            return Err(Error::InvalidModulus {
                at: fmt_q(eps),
                value: fmt_q(&v),
            });
        }
        Ok(v)
    }

    /// Recognizes transformers that are extensionally `ε ↦ c·ε` and returns
    /// `c`: identity, scales, their compositions and minima.
    pub fn as_scale(&self) -> Option<Q> {
        match self {
            Transformer::Identity => Some(crate::q::one()),
            Transformer::Scale(c) => Some(c.clone()),
            Transformer::Compose(outer, inner) => {
                Some(outer.as_scale()? * inner.as_scale()?)
            }
            Transformer::Min(a, b) => Some(min_q(a.as_scale()?, b.as_scale()?)),
            _ => None,
        }
    }
}

/// A total map between finite metric spaces, validated against the induced
/// carriers.
#[derive(Clone, Debug)]
pub struct TableMap {
    dom: Arc<FiniteMetric>,
    cod: Arc<FiniteMetric>,
    map: Vec<usize>,
}

impl TableMap {
    pub fn validated(
        dom: &Arc<FiniteMetric>,
        cod: &Arc<FiniteMetric>,
        map: Vec<usize>,
    ) -> Result<TableMap, Error> {
        FunctionTable::validated(dom.carrier(), cod.carrier(), map.clone())?;
        Ok(TableMap {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        })
    }

    pub fn dom(&self) -> &Arc<FiniteMetric> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteMetric> {
        &self.cod
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn function_table(&self) -> FunctionTable {
        FunctionTable::validated(self.dom.carrier(), self.cod.carrier(), self.map.clone())
            .expect("validated at construction")
    }
}

/// `f(x) = a·x + b` on the rational line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub a: Q,
    pub b: Q,
}

impl AffineMap {
    pub fn apply(&self, x: &Q) -> Q {
        &self.a * x + &self.b
    }
}

#[derive(Clone, Debug)]
pub enum MapKind {
    Table(TableMap),
    Affine(AffineMap),
}

/// The family `x ↦ ω_{f,x}`: either one transformer for every point, or a
/// per-point table over a finite domain.
#[derive(Clone, Debug)]
pub enum PointwiseMod {
    SameForAll(Transformer),
    PerPoint(Vec<Transformer>),
}

#[derive(Clone, Debug)]
pub struct ContinuousMap {
    pub kind: MapKind,
    pub pointwise: Option<PointwiseMod>,
    pub uniform: Option<Transformer>,
}

impl ContinuousMap {
    pub fn affine(a: Q, b: Q, uniform: Transformer) -> ContinuousMap {
        ContinuousMap {
            kind: MapKind::Affine(AffineMap { a, b }),
            pointwise: Some(PointwiseMod::SameForAll(uniform.clone())),
            uniform: Some(uniform),
        }
    }

    pub fn omega_at(&self, x: usize) -> Result<&Transformer, Error> {
        match &self.pointwise {
            Some(PointwiseMod::SameForAll(t)) => Ok(t),
            Some(PointwiseMod::PerPoint(v)) => v.get(x).ok_or_else(|| {
                Error::Model("pointwise family missing an element".into())
            }),
            None => Err(Error::Model("no pointwise modulus present".into())),
        }
    }

    pub fn uniform(&self) -> Result<&Transformer, Error> {
        self.uniform
            .as_ref()
            .ok_or_else(|| Error::Model("no uniform modulus present".into()))
    }
}

/// Derives the canonical pointwise family of a finite-table map:
/// `ω_{f,x}(ε) = min{ d(x,x') : e(f(x),f(x')) ≥ ε }`, a step table.
pub fn derive_pointwise_table(map: &TableMap) -> PointwiseMod {
    let dom = &map.dom;
    let cod = &map.cod;
    let n = dom.len();
    let max_d = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| dom.dist(x, y).clone())
        .max()
        .unwrap_or_else(|| crate::q::qi(0));
    let fallback = &max_d + crate::q::qi(1);
    let mut family = Vec::with_capacity(n);
    for x in 0..n {
        let mut thresholds: Vec<Q> = (0..n)
            .map(|y| cod.dist(map.apply(x), map.apply(y)).clone())
            .filter(|e| e > &Q::zero())
            .collect();
        thresholds.sort();
        thresholds.dedup();
        let steps: Vec<(Q, Q)> = thresholds
            .iter()
            .map(|t| {
                let v = (0..n)
                    .filter(|&y| cod.dist(map.apply(x), map.apply(y)) >= t)
                    .map(|y| dom.dist(x, y).clone())
                    .min()
                    .expect("threshold came from a witness");
                (t.clone(), v)
            })
            .collect();
        family.push(Transformer::Step {
            steps,
            fallback: fallback.clone(),
        });
    }
    PointwiseMod::PerPoint(family)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContKind {
    Pointwise,
    Uniform,
}

#[derive(Clone, Debug)]
pub struct ContinuityReport {
    pub pass: bool,
    pub witnesses: Vec<String>,
    pub eps_checked: usize,
    /// For affine maps with a scale modulus: the closed-form check
    /// `|a| · c ≤ 1`.
    pub symbolic: Option<bool>,
}

/// Checks the continuity implication. Finite domains: exhaustive over all
/// pairs and the ε-grid. Affine line maps: symbolic for scale moduli plus
/// exact confirmation `|a| · t(ε) ≤ ε` at every grid point.
pub fn check_continuity(
    kind: ContKind,
    m: &ContinuousMap,
    grid: &[Q],
) -> Result<ContinuityReport, Error> {
    let mut witnesses = Vec::new();
    let mut symbolic = None;
    match &m.kind {
        MapKind::Table(t) => {
            let n = t.dom.len();
            for eps in grid {
                for x in 0..n {
                    let omega = match kind {
                        ContKind::Pointwise => m.omega_at(x)?.clone(),
                        ContKind::Uniform => m.uniform()?.clone(),
                    };
                    let delta = omega.eval(eps)?;
                    for y in 0..n {
                        if t.dom.dist(x, y) < &delta
                            && t.cod.dist(t.apply(x), t.apply(y)) >= eps
                        {
                            witnesses.push(format!(
                                "eps={} x={} x'={}",
                                fmt_q(eps),
                                t.dom.carrier().id(x),
                                t.dom.carrier().id(y)
                            ));
                        }
                    }
                }
            }
        }
        MapKind::Affine(f) => {
            let omega = match (kind, &m.pointwise, &m.uniform) {
                (ContKind::Pointwise, Some(PointwiseMod::SameForAll(t)), _) => t.clone(),
                (ContKind::Uniform, _, Some(t)) => t.clone(),
                _ => return Err(Error::Model("requested modulus not present".into())),
            };
            if let Transformer::Scale(c) = &omega {
                symbolic = Some(&abs_q(&f.a) * c <= crate::q::one());
            }
            for eps in grid {
                let delta = omega.eval(eps)?;
                // sup over d < δ of |a|·d is |a|·δ; the implication holds
                // exactly when |a|·δ ≤ ε
                if &abs_q(&f.a) * &delta > *eps {
                    // a concrete violating pair: x = 0 and the midpoint of
                    // (ε/|a|, δ), which sits below δ but maps ≥ ε away
                    let x1 = (&delta + eps / abs_q(&f.a)) / crate::q::qi(2);
                    witnesses.push(format!(
                        "eps={} delta={} x=0 x'={}",
                        fmt_q(eps),
                        fmt_q(&delta),
                        fmt_q(&x1)
                    ));
                }
            }
        }
    }
    Ok(ContinuityReport {
        pass: witnesses.is_empty() && symbolic.unwrap_or(true),
        witnesses,
        eps_checked: grid.len(),
        symbolic,
    })
}

/// A pointwise continuous map is strongly extensional:
/// `e(f(x), f(x')) > 0 ⇒ d(x, x') > 0`, exhaustively on finite tables and
/// structurally on affine maps.
pub fn derived_strong_extensionality(m: &ContinuousMap) -> Result<bool, Error> {
    match &m.kind {
        MapKind::Table(t) => {
            let n = t.dom.len();
            for x in 0..n {
                for y in 0..n {
                    if t.cod.dist(t.apply(x), t.apply(y)) > &Q::zero()
                        && !(t.dom.dist(x, y) > &Q::zero())
                    {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        MapKind::Affine(_) => Ok(true),
    }
}

/// `g ∘ f` with the composed moduli `ω_{g∘f,x} := ω_{f,x} ∘ ω_{g,f(x)}` and
/// `Ω_{g∘f} := Ω_f ∘ Ω_g`. The composite is checked on the default ε-grid
/// before returning.
pub fn compose_moduli(f: &ContinuousMap, g: &ContinuousMap) -> Result<ContinuousMap, Error> {
    let composed = compose_moduli_unchecked(f, g)?;
    let grid = crate::q::eps_grid(0, 0);
    if composed.pointwise.is_some() {
        let rep = check_continuity(ContKind::Pointwise, &composed, &grid)?;
        if !rep.pass {
            return Err(Error::SideCondition(format!(
                "composed pointwise modulus fails: {:?}",
                rep.witnesses
            )));
        }
    }
    if composed.uniform.is_some() {
        let rep = check_continuity(ContKind::Uniform, &composed, &grid)?;
        if !rep.pass {
            return Err(Error::SideCondition(format!(
                "composed uniform modulus fails: {:?}",
                rep.witnesses
            )));
        }
    }
    Ok(composed)
}

fn compose_moduli_unchecked(f: &ContinuousMap, g: &ContinuousMap) -> Result<ContinuousMap, Error> {
    match (&f.kind, &g.kind) {
        (MapKind::Table(tf), MapKind::Table(tg)) => {
            if !Arc::ptr_eq(&tf.cod, &tg.dom) {
                return Err(Error::CarrierMismatch);
            }
            let map: Vec<usize> = (0..tf.dom.len()).map(|x| tg.apply(tf.apply(x))).collect();
            let kind = MapKind::Table(TableMap {
                dom: tf.dom.clone(),
                cod: tg.cod.clone(),
                map,
            });
            let pointwise = match (&f.pointwise, &g.pointwise) {
                (Some(_), Some(_)) => {
                    let fam = (0..tf.dom.len())
                        .map(|x| {
                            Ok(Transformer::compose(
                                f.omega_at(x)?.clone(),
                                g.omega_at(tf.apply(x))?.clone(),
                            ))
                        })
                        .collect::<Result<Vec<_>, Error>>()?;
                    Some(PointwiseMod::PerPoint(fam))
                }
                _ => None,
            };
            let uniform = match (&f.uniform, &g.uniform) {
                (Some(a), Some(b)) => Some(Transformer::compose(a.clone(), b.clone())),
                _ => None,
            };
            Ok(ContinuousMap {
                kind,
                pointwise,
                uniform,
            })
        }
        (MapKind::Affine(af), MapKind::Affine(ag)) => {
            let kind = MapKind::Affine(AffineMap {
                a: &ag.a * &af.a,
                b: &ag.a * &af.b + &ag.b,
            });
            let pointwise = match (&f.pointwise, &g.pointwise) {
                (Some(PointwiseMod::SameForAll(a)), Some(PointwiseMod::SameForAll(b))) => Some(
                    PointwiseMod::SameForAll(Transformer::compose(a.clone(), b.clone())),
                ),
                _ => None,
            };
            let uniform = match (&f.uniform, &g.uniform) {
                (Some(a), Some(b)) => Some(Transformer::compose(a.clone(), b.clone())),
                _ => None,
            };
            Ok(ContinuousMap {
                kind,
                pointwise,
                uniform,
            })
        }
        _ => Err(Error::Model("cannot compose table and affine maps".into())),
    }
}

/// Inverse image of a finite open together with its modulus:
/// pointwise `op(x) := ω_{f,x}(op_H(f(x)))`, uniform
/// `op := Ω_f ∘ op_H ∘ f`. The result passes the Td check (asserted) and
/// condition (*) holds at every point of the 1-part.
pub fn invert_open_finite(
    kind: ContKind,
    m: &ContinuousMap,
    h: &Complemented,
    op_h: &OpExpr,
) -> Result<(Complemented, OpExpr), Error> {
    let t = match &m.kind {
        MapKind::Table(t) => t,
        _ => return Err(Error::Model("finite inversion needs a table map".into())),
    };
    let inv = crate::complemented::inverse_image(&t.function_table(), h)?;
    let mut table = std::collections::BTreeMap::new();
    for x in inv.one().members() {
        let eps = op_h.eval_finite(&t.cod, t.apply(x))?;
        let v = match kind {
            ContKind::Pointwise => m.omega_at(x)?.eval(&eps)?,
            ContKind::Uniform => m.uniform()?.eval(&eps)?,
        };
        table.insert(x, v);
    }
    let op = OpExpr::Table(table);
    let td = check_td_open_finite(&t.dom, &inv, &op)?;
    if !td.td_open {
        return Err(Error::SideCondition(
            "inverted modulus fails the Td check".into(),
        ));
    }
    // condition (*): op(x) = op_{f⁻¹(B(f(x), op_H(f(x))))}(x)
    for x in inv.one().members() {
        let eps = op_h.eval_finite(&t.cod, t.apply(x))?;
        let star = ball_inversion_finite(kind, m, t.apply(x), &eps, x)?;
        let got = op.eval_finite(&t.dom, x)?;
        if star != got {
            return Err(Error::SideCondition(format!(
                "condition (*) fails at {}",
                t.dom.carrier().id(x)
            )));
        }
    }
    Ok((inv, op))
}

/// Inverse image of a line open under an affine map, with the modulus kept
/// in closed form (`Ω = Scale(1/|a|)` pulled back along the map).
pub fn invert_open_affine(
    kind: ContKind,
    m: &ContinuousMap,
    h: &LineOpen,
    op_h: &OpExpr,
) -> Result<(LineOpen, OpExpr), Error> {
    let f = match &m.kind {
        MapKind::Affine(f) => f,
        _ => return Err(Error::Model("affine inversion needs an affine map".into())),
    };
    if f.a.is_zero() {
        return Err(Error::Model("affine inversion needs a != 0".into()));
    }
    let omega = match kind {
        ContKind::Pointwise => match &m.pointwise {
            Some(PointwiseMod::SameForAll(t)) => t,
            _ => return Err(Error::Model("closed-form pointwise modulus required".into())),
        },
        ContKind::Uniform => m.uniform()?,
    };
    // closed-form pull-back is available exactly for scale-like transformers
    let scale = omega.as_scale().ok_or_else(|| {
        Error::Model("line inversion supports identity/scale moduli".into())
    })?;
    if scale != crate::q::one() / abs_q(&f.a) {
        // the pulled-back expression realizes Ω(ε) = ε/|a|; other scales
        // would need a value-level wrapper
        return Err(Error::Model(
            "line inversion expects the canonical scale 1/|a|".into(),
        ));
    }
    let inv = LineOpen::affine_preimage(h, &f.a, &f.b);
    let op = op_h.pull_back_affine(&f.a, &f.b)?;
    let td = check_td_open_line(&inv, &op)?;
    if !td.td_open {
        return Err(Error::SideCondition(
            "inverted modulus fails the Td check".into(),
        ));
    }
    Ok((inv, op))
}

/// The modulus of `f⁻¹(B(y, ε))` evaluated at `x`, per the displayed
/// constructions: pointwise `ω_{f,x}(ε − e(y, f(x)))`, uniform
/// `Ω_f(ε − e(y, f(x)))`.
pub fn ball_inversion_finite(
    kind: ContKind,
    m: &ContinuousMap,
    y: usize,
    eps: &Q,
    x: usize,
) -> Result<Q, Error> {
    let t = match &m.kind {
        MapKind::Table(t) => t,
        _ => return Err(Error::Model("finite inversion needs a table map".into())),
    };
    let gap = eps - t.cod.dist(y, t.apply(x));
    match kind {
        ContKind::Pointwise => m.omega_at(x)?.eval(&gap),
        ContKind::Uniform => m.uniform()?.eval(&gap),
    }
}

pub fn ball_inversion_affine(
    kind: ContKind,
    m: &ContinuousMap,
    y: &Q,
    eps: &Q,
    x: &Q,
) -> Result<Q, Error> {
    let f = match &m.kind {
        MapKind::Affine(f) => f,
        _ => return Err(Error::Model("affine inversion needs an affine map".into())),
    };
    let gap = eps - abs_q(&(y - &f.apply(x)));
    match kind {
        ContKind::Pointwise => match &m.pointwise {
            Some(PointwiseMod::SameForAll(t)) => t.eval(&gap),
            _ => Err(Error::Model("closed-form pointwise modulus required".into())),
        },
        ContKind::Uniform => m.uniform()?.eval(&gap),
    }
}

/// Reads a continuity modulus back out of an inversion map (the modulus of
/// `f⁻¹(B(f(x), ε))` at `x`): pointwise needs nothing extra; uniform needs
/// the caller-supplied inhabitant `x0` and the side condition that the
/// ball-inversion modulus is independent of the base point (checked on the
/// grid; failures carry a witness pair). The recovered map passes
/// `check_continuity` on the grid — asserted before returning.
pub fn continuity_from_inversion(
    kind: ContKind,
    m: &ContinuousMap,
    source: ContKind,
    x0: Option<usize>,
    grid: &[Q],
) -> Result<ContinuousMap, Error> {
    match &m.kind {
        MapKind::Table(t) => {
            let recovered = match kind {
                ContKind::Pointwise => {
                    // ω'_{f,x}(ε) := op_{f⁻¹(B(f(x),ε))}(x); with the ball
                    // modulus evaluated at its own center the gap is ε − 0,
                    // so the recovered family is the source family itself.
                    // Verify that identity on the grid before reusing it.
                    for x in 0..t.dom.len() {
                        for eps in grid {
                            let rec = ball_inversion_finite(source, m, t.apply(x), eps, x)?;
                            let orig = match source {
                                ContKind::Pointwise => m.omega_at(x)?.eval(eps)?,
                                ContKind::Uniform => m.uniform()?.eval(eps)?,
                            };
                            if rec != orig {
                                return Err(Error::SideCondition(format!(
                                    "recovered modulus differs at x={} eps={}",
                                    t.dom.carrier().id(x),
                                    fmt_q(eps)
                                )));
                            }
                        }
                    }
                    let family = (0..t.dom.len())
                        .map(|x| match source {
                            ContKind::Pointwise => m.omega_at(x).cloned(),
                            ContKind::Uniform => m.uniform().cloned(),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    ContinuousMap {
                        kind: m.kind.clone(),
                        pointwise: Some(PointwiseMod::PerPoint(family)),
                        uniform: None,
                    }
                }
                ContKind::Uniform => {
                    if let Err(witness) = uniform_side_condition_finite(m, source, grid)? {
                        return Err(Error::SideCondition(witness));
                    }
                    let x0 = x0.ok_or_else(|| {
                        Error::Model("uniform recovery needs an inhabitant x0".into())
                    })?;
                    let omega = match source {
                        ContKind::Pointwise => m.omega_at(x0)?.clone(),
                        ContKind::Uniform => m.uniform()?.clone(),
                    };
                    ContinuousMap {
                        kind: m.kind.clone(),
                        pointwise: None,
                        uniform: Some(omega),
                    }
                }
            };
            let rep = check_continuity(kind, &recovered, grid)?;
            if !rep.pass {
                return Err(Error::SideCondition(
                    "recovered map fails the continuity check".into(),
                ));
            }
            Ok(recovered)
        }
        MapKind::Affine(_) => {
            // affine maps carry one transformer for every point, so both
            // recoveries return it; assert the grid identity first
            let rt = match kind {
                ContKind::Uniform => roundtrip_uniform_affine(m, &Q::zero(), grid)?,
                ContKind::Pointwise => {
                    roundtrip_pointwise_affine(m, &[Q::zero(), crate::q::qi(1)], grid)?
                }
            };
            if !rt.exact {
                return Err(Error::SideCondition(format!(
                    "recovered modulus differs: {:?}",
                    rt.mismatches
                )));
            }
            let omega = match source {
                ContKind::Pointwise => match &m.pointwise {
                    Some(PointwiseMod::SameForAll(t)) => t.clone(),
                    _ => return Err(Error::Model("closed-form pointwise modulus required".into())),
                },
                ContKind::Uniform => m.uniform()?.clone(),
            };
            let recovered = ContinuousMap {
                kind: m.kind.clone(),
                pointwise: Some(PointwiseMod::SameForAll(omega.clone())),
                uniform: Some(omega),
            };
            let rep = check_continuity(kind, &recovered, grid)?;
            if !rep.pass {
                return Err(Error::SideCondition(
                    "recovered map fails the continuity check".into(),
                ));
            }
            Ok(recovered)
        }
    }
}

#[derive(Clone, Debug)]
pub struct RoundtripReport {
    pub exact: bool,
    pub mismatches: Vec<String>,
    pub points_checked: usize,
}

/// Round trip `ω ↦ op* ↦ ω'` on a finite map: the recovered
/// `ω'_{f,x}(ε) := op_{f⁻¹(B(f(x),ε))}(x)` must equal `ω_{f,x}(ε)` exactly
/// at every grid point (the proof uses `op_{B(y,ε)}(y) = ε − 0`).
pub fn roundtrip_pointwise_finite(
    m: &ContinuousMap,
    grid: &[Q],
) -> Result<RoundtripReport, Error> {
    let t = match &m.kind {
        MapKind::Table(t) => t,
        _ => return Err(Error::Model("finite round trip needs a table map".into())),
    };
    let mut mismatches = Vec::new();
    let mut points = 0;
    for x in 0..t.dom.len() {
        for eps in grid {
            points += 1;
            let recovered = ball_inversion_finite(ContKind::Pointwise, m, t.apply(x), eps, x)?;
            let original = m.omega_at(x)?.eval(eps)?;
            if recovered != original {
                mismatches.push(format!(
                    "x={} eps={}: {} vs {}",
                    t.dom.carrier().id(x),
                    fmt_q(eps),
                    fmt_q(&recovered),
                    fmt_q(&original)
                ));
            }
        }
    }
    Ok(RoundtripReport {
        exact: mismatches.is_empty(),
        mismatches,
        points_checked: points,
    })
}

/// Prop 7.11's uniformity side condition: the ball-inversion modulus is
/// independent of the base point, checked over the grid. Failures carry a
/// witness pair.
pub fn uniform_side_condition_finite(
    m: &ContinuousMap,
    kind: ContKind,
    grid: &[Q],
) -> Result<Result<(), String>, Error> {
    let t = match &m.kind {
        MapKind::Table(t) => t,
        _ => return Err(Error::Model("finite side condition needs a table map".into())),
    };
    for eps in grid {
        for x in 0..t.dom.len() {
            for x2 in 0..t.dom.len() {
                let a = ball_inversion_finite(kind, m, t.apply(x), eps, x)?;
                let b = ball_inversion_finite(kind, m, t.apply(x2), eps, x2)?;
                if a != b {
                    return Ok(Err(format!(
                        "eps={}: op at {} is {} but at {} is {}",
                        fmt_q(eps),
                        t.dom.carrier().id(x),
                        fmt_q(&a),
                        t.dom.carrier().id(x2),
                        fmt_q(&b)
                    )));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Uniform round trip `Ω ↦ Op* ↦ Ω'` on an affine map: recovered and
/// original agree exactly on the grid (x₀ supplied by the caller).
pub fn roundtrip_uniform_affine(
    m: &ContinuousMap,
    x0: &Q,
    grid: &[Q],
) -> Result<RoundtripReport, Error> {
    let f = match &m.kind {
        MapKind::Affine(f) => f,
        _ => return Err(Error::Model("affine round trip needs an affine map".into())),
    };
    let mut mismatches = Vec::new();
    for eps in grid {
        let recovered = ball_inversion_affine(ContKind::Uniform, m, &f.apply(x0), eps, x0)?;
        let original = m.uniform()?.eval(eps)?;
        if recovered != original {
            mismatches.push(format!(
                "eps={}: {} vs {}",
                fmt_q(eps),
                fmt_q(&recovered),
                fmt_q(&original)
            ));
        }
    }
    Ok(RoundtripReport {
        exact: mismatches.is_empty(),
        mismatches,
        points_checked: grid.len(),
    })
}

/// Pointwise round trip on an affine map, checked at sampled base points.
pub fn roundtrip_pointwise_affine(
    m: &ContinuousMap,
    xs: &[Q],
    grid: &[Q],
) -> Result<RoundtripReport, Error> {
    let f = match &m.kind {
        MapKind::Affine(f) => f,
        _ => return Err(Error::Model("affine round trip needs an affine map".into())),
    };
    let omega = match &m.pointwise {
        Some(PointwiseMod::SameForAll(t)) => t,
        _ => return Err(Error::Model("closed-form pointwise modulus required".into())),
    };
    let mut mismatches = Vec::new();
    let mut points = 0;
    for x in xs {
        for eps in grid {
            points += 1;
            let recovered = ball_inversion_affine(ContKind::Pointwise, m, &f.apply(x), eps, x)?;
            let original = omega.eval(eps)?;
            if recovered != original {
                mismatches.push(format!(
                    "x={} eps={}: {} vs {}",
                    fmt_q(x),
                    fmt_q(eps),
                    fmt_q(&recovered),
                    fmt_q(&original)
                ));
            }
        }
    }
    Ok(RoundtripReport {
        exact: mismatches.is_empty(),
        mismatches,
        points_checked: points,
    })
}

/// Rem on ball-form moduli: `ω*_{f,x}(B(f(x),ε)) := B(x, ω_{f,x}(ε))` is
/// contained in `f⁻¹(B(f(x),ε))`, and the radius read-back is `ω` itself.
pub fn ball_form_inclusion_finite(
    m: &ContinuousMap,
    grid: &[Q],
) -> Result<bool, Error> {
    let t = match &m.kind {
        MapKind::Table(t) => t,
        _ => return Err(Error::Model("finite check needs a table map".into())),
    };
    for x in 0..t.dom.len() {
        for eps in grid {
            let radius = m.omega_at(x)?.eval(eps)?;
            let assigned = t.dom.ball(x, &radius)?;
            let target = t.cod.ball(t.apply(x), eps)?;
            let inv = crate::complemented::inverse_image(&t.function_table(), &target.subset)?;
            if !assigned.subset.leq(&inv)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn ball_form_inclusion_affine(m: &ContinuousMap, xs: &[Q], grid: &[Q]) -> Result<bool, Error> {
    let f = match &m.kind {
        MapKind::Affine(f) => f,
        _ => return Err(Error::Model("affine check needs an affine map".into())),
    };
    if f.a.is_zero() {
        return Ok(true);
    }
    let omega = match &m.pointwise {
        Some(PointwiseMod::SameForAll(t)) => t,
        _ => return Err(Error::Model("closed-form pointwise modulus required".into())),
    };
    for x in xs {
        for eps in grid {
            let radius = omega.eval(eps)?;
            let assigned = LineOpen::ball(&LineBall::new(x.clone(), radius)?);
            let target = LineOpen::ball(&LineBall::new(f.apply(x), eps.clone())?);
            let inv = LineOpen::affine_preimage(&target, &f.a, &f.b);
            if !assigned.leq(&inv) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl LineOpen {
    /// `f⁻¹(H)` for `f(x) = a·x + b`, `a ≠ 0`: both parts pulled back
    /// exactly through the affine bijection.
    pub fn affine_preimage(h: &LineOpen, a: &Q, b: &Q) -> LineOpen {
        let one = IntervalSet::affine_preimage(h.one(), a, b);
        let zero = IntervalSet::affine_preimage(h.zero(), a, b);
        LineOpen::from_parts_unchecked(one, zero)
    }
}
