//! The JSON model schema and its resolution into core values.
//!
//! Rationals cross the boundary as `"p/q"` strings. Resolution separates
//! input errors (malformed JSON, bad rationals, dangling references — CLI
//! exit 2) from validation failures (violated axioms, with witnesses — CLI
//! exit 1).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::carrier::{Carrier, ExtSubset, FunctionTable};
use crate::complemented::Complemented;
use crate::continuity::{AffineMap, ContinuousMap, MapKind, PointwiseMod, Transformer};
use crate::csb::{validate_base, CsBase};
use crate::formula::{parse as parse_formula, FiniteStructure, Formula};
use crate::metric::{FiniteMetric, LineBall, LineOpen, OpExpr, PointRef};
use crate::q::{fmt_q, parse_q, Q};
use crate::swap::SwapModel;
use crate::Error;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub carrier: Option<CarrierDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<LineDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subsets: Option<BTreeMap<String, Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complemented: Option<BTreeMap<String, ComplementedDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functions: Option<BTreeMap<String, FunctionDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub swap: Option<SwapDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topology: Option<TopologyDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maps: Option<Vec<MapDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formulas: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak: Option<WeakDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierDoc {
    pub elements: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equal: Option<Vec<(String, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub apart: Option<Vec<(String, String)>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricDoc {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineDoc {
    pub opens: Vec<LineOpenDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineOpenDoc {
    pub balls: Vec<BallDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub op: Option<OpExprDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallDoc {
    pub center: String,
    pub radius: String,
}

/// Expression trees for moduli of openness.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum OpExprDoc {
    Const { q: String },
    Ball { center: String, radius: String },
    Min { a: Box<OpExprDoc>, b: Box<OpExprDoc> },
    Max { a: Box<OpExprDoc>, b: Box<OpExprDoc> },
    Half { anchor: String },
    HalfSelf,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplementedDoc {
    pub one: Vec<String>,
    pub zero: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwapDoc {
    pub elements: Vec<String>,
    pub join: Vec<Vec<String>>,
    pub meet: Vec<Vec<String>>,
    pub neg: BTreeMap<String, String>,
    pub zero_of: BTreeMap<String, String>,
    pub one_of: BTreeMap<String, String>,
    pub zero: String,
    pub one: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub apart: Option<Vec<(String, String)>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyDoc {
    /// Optional inline space; defaults to the document carrier.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub space: Option<CarrierDoc>,
    /// Names from the `complemented` section or inline pairs.
    pub opens: Vec<OpenRef>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OpenRef {
    Name(String),
    Inline(ComplementedDoc),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDoc {
    pub members: Vec<OpenRef>,
    /// element id → member position in `members`.
    pub beta_x: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_empty: Option<BTreeMap<String, usize>>,
    pub beta_pairs: Vec<BetaPairDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BetaPairDoc {
    pub left: usize,
    pub right: usize,
    pub at: String,
    pub value: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub name: String,
    pub affine: AffineDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pointwise: Option<TransformerDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniform: Option<TransformerDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineDoc {
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TransformerDoc {
    Identity,
    Const { q: String },
    Scale { q: String },
    Compose {
        outer: Box<TransformerDoc>,
        inner: Box<TransformerDoc>,
    },
    Min {
        a: Box<TransformerDoc>,
        b: Box<TransformerDoc>,
    },
    Step {
        steps: Vec<(String, String)>,
        fallback: String,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakDoc {
    /// Each target: a strongly extensional function (by name) into the
    /// document's base, read as a csb-space on the same carrier.
    pub targets: Vec<String>,
}

/// A resolved document: core values with every cross-reference checked.
#[derive(Debug)]
pub struct ResolvedModel {
    pub carrier: Option<Arc<Carrier>>,
    pub metric: Option<Arc<FiniteMetric>>,
    pub line_opens: Vec<(Vec<LineBall>, LineOpen, Option<OpExpr>)>,
    pub subsets: BTreeMap<String, ExtSubset>,
    pub complemented: BTreeMap<String, Complemented>,
    pub functions: BTreeMap<String, FunctionTable>,
    pub swap: Option<SwapModel>,
    pub topology: Option<(Arc<Carrier>, Vec<Complemented>)>,
    pub base: Option<CsBase>,
    pub maps: Vec<(String, ContinuousMap)>,
    pub formulas: Vec<Formula>,
    pub structure: Option<FiniteStructure>,
    pub weak_targets: Vec<String>,
}

/// Whether an error is an input problem (exit 2) rather than a validation
/// failure (exit 1).
pub fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::BadRational(_) | Error::FormulaParse(_) | Error::Model(_) | Error::SizeCap { .. }
    )
}

pub fn parse_document(text: &str) -> Result<ModelDocument, Error> {
    serde_json::from_str(text).map_err(|e| Error::Model(format!("json: {e}")))
}

/// Extracts a carrier and a family of complemented subsets back into a
/// standalone document. Failed checks embed these in their witnesses so
/// the witnessing data re-validates independently.
pub fn extract_document(carrier: &Arc<Carrier>, family: &[Complemented]) -> ModelDocument {
    let elements: Vec<String> = carrier.ids().to_vec();
    let mut equal = Vec::new();
    let mut apart = Vec::new();
    for a in 0..carrier.len() {
        for b in 0..carrier.len() {
            if a != b && carrier.equal(a, b) {
                equal.push((elements[a].clone(), elements[b].clone()));
            }
            if carrier.apart(a, b) {
                apart.push((elements[a].clone(), elements[b].clone()));
            }
        }
    }
    let mut complemented = BTreeMap::new();
    for (i, cs) in family.iter().enumerate() {
        complemented.insert(
            format!("w{i}"),
            ComplementedDoc {
                one: cs.one().member_ids(),
                zero: cs.zero().member_ids(),
            },
        );
    }
    ModelDocument {
        version: Some("1".into()),
        carrier: Some(CarrierDoc {
            elements,
            equal: if equal.is_empty() { None } else { Some(equal) },
            apart: Some(apart),
        }),
        complemented: if complemented.is_empty() {
            None
        } else {
            Some(complemented)
        },
        ..Default::default()
    }
}

fn q_of(s: &str) -> Result<Q, Error> {
    parse_q(s)
}

fn index_of(ids: &[String], id: &str) -> Result<usize, Error> {
    ids.iter()
        .position(|x| x == id)
        .ok_or_else(|| Error::Model(format!("unknown element id {id:?}")))
}

impl OpExprDoc {
    pub fn resolve_line(&self) -> Result<OpExpr, Error> {
        Ok(match self {
            OpExprDoc::Const { q } => OpExpr::Const(q_of(q)?),
            OpExprDoc::Ball { center, radius } => OpExpr::RadiusMinusDist {
                center: PointRef::Rat(q_of(center)?),
                radius: q_of(radius)?,
            },
            OpExprDoc::Min { a, b } => OpExpr::Min(
                Box::new(a.resolve_line()?),
                Box::new(b.resolve_line()?),
            ),
            OpExprDoc::Max { a, b } => OpExpr::Max(
                Box::new(a.resolve_line()?),
                Box::new(b.resolve_line()?),
            ),
            OpExprDoc::Half { anchor } => OpExpr::HalfDist {
                anchor: PointRef::Rat(q_of(anchor)?),
            },
            OpExprDoc::HalfSelf => OpExpr::HalfSelfDist,
        })
    }

    pub fn from_expr(e: &OpExpr) -> Option<OpExprDoc> {
        Some(match e {
            OpExpr::Const(q) => OpExprDoc::Const { q: fmt_q(q) },
            OpExpr::RadiusMinusDist {
                center: PointRef::Rat(c),
                radius,
            } => OpExprDoc::Ball {
                center: fmt_q(c),
                radius: fmt_q(radius),
            },
            OpExpr::Min(a, b) => OpExprDoc::Min {
                a: Box::new(OpExprDoc::from_expr(a)?),
                b: Box::new(OpExprDoc::from_expr(b)?),
            },
            OpExpr::Max(a, b) => OpExprDoc::Max {
                a: Box::new(OpExprDoc::from_expr(a)?),
                b: Box::new(OpExprDoc::from_expr(b)?),
            },
            OpExpr::HalfDist {
                anchor: PointRef::Rat(a),
            } => OpExprDoc::Half { anchor: fmt_q(a) },
            OpExpr::HalfSelfDist => OpExprDoc::HalfSelf,
            _ => return None,
        })
    }
}

impl TransformerDoc {
    pub fn resolve(&self) -> Result<Transformer, Error> {
        Ok(match self {
            TransformerDoc::Identity => Transformer::Identity,
            TransformerDoc::Const { q } => Transformer::Const(q_of(q)?),
            TransformerDoc::Scale { q } => Transformer::scale(q_of(q)?)?,
            TransformerDoc::Compose { outer, inner } => {
                Transformer::compose(outer.resolve()?, inner.resolve()?)
            }
            TransformerDoc::Min { a, b } => {
                Transformer::Min(Box::new(a.resolve()?), Box::new(b.resolve()?))
            }
            TransformerDoc::Step { steps, fallback } => Transformer::Step {
                steps: steps
                    .iter()
                    .map(|(t, v)| Ok((q_of(t)?, q_of(v)?)))
                    .collect::<Result<_, Error>>()?,
                fallback: q_of(fallback)?,
            },
        })
    }
}

fn resolve_carrier(doc: &CarrierDoc) -> Result<Arc<Carrier>, Error> {
    let ids = doc.elements.clone();
    let pairs = |list: &Option<Vec<(String, String)>>| -> Result<Vec<(usize, usize)>, Error> {
        list.as_deref()
            .unwrap_or(&[])
            .iter()
            .map(|(a, b)| Ok((index_of(&ids, a)?, index_of(&ids, b)?)))
            .collect()
    };
    let eq = pairs(&doc.equal)?;
    let ap = pairs(&doc.apart)?;
    Carrier::validate(ids, &eq, &ap)
}

fn resolve_complemented(
    carrier: &Arc<Carrier>,
    doc: &ComplementedDoc,
) -> Result<Complemented, Error> {
    let members = |list: &[String]| -> Result<Vec<usize>, Error> {
        list.iter()
            .map(|id| {
                carrier
                    .index_of(id)
                    .ok_or_else(|| Error::Model(format!("unknown element id {id:?}")))
            })
            .collect()
    };
    let one = ExtSubset::validated(carrier, &members(&doc.one)?)?;
    let zero = ExtSubset::validated(carrier, &members(&doc.zero)?)?;
    Complemented::new(one, zero)
}

pub fn resolve(doc: &ModelDocument) -> Result<ResolvedModel, Error> {
    let carrier = doc.carrier.as_ref().map(resolve_carrier).transpose()?;
    let metric = doc
        .metric
        .as_ref()
        .map(|m| {
            let table = m
                .table
                .iter()
                .map(|row| row.iter().map(|s| q_of(s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            FiniteMetric::validate(m.elements.clone(), table)
        })
        .transpose()?;
    // the carrier every set-level section resolves against
    let set_carrier = carrier
        .clone()
        .or_else(|| metric.as_ref().map(|m| m.carrier().clone()));
    let need_carrier = || -> Result<&Arc<Carrier>, Error> {
        set_carrier
            .as_ref()
            .ok_or_else(|| Error::Model("section needs a carrier or metric".into()))
    };
    let mut line_opens = Vec::new();
    if let Some(line) = &doc.line {
        for o in &line.opens {
            let balls = o
                .balls
                .iter()
                .map(|b| LineBall::new(q_of(&b.center)?, q_of(&b.radius)?))
                .collect::<Result<Vec<_>, _>>()?;
            let open = LineOpen::from_balls(&balls)?;
            let op = o.op.as_ref().map(|e| e.resolve_line()).transpose()?;
            line_opens.push((balls, open, op));
        }
    }
    let mut subsets = BTreeMap::new();
    if let Some(subs) = &doc.subsets {
        let c = need_carrier()?;
        for (name, members) in subs {
            let idx = members
                .iter()
                .map(|id| {
                    c.index_of(id)
                        .ok_or_else(|| Error::Model(format!("unknown element id {id:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            subsets.insert(name.clone(), ExtSubset::validated(c, &idx)?);
        }
    }
    let mut complemented = BTreeMap::new();
    if let Some(cs) = &doc.complemented {
        let c = need_carrier()?;
        for (name, d) in cs {
            complemented.insert(name.clone(), resolve_complemented(c, d)?);
        }
    }
    let mut functions = BTreeMap::new();
    if let Some(fns) = &doc.functions {
        let c = need_carrier()?;
        for (name, d) in fns {
            let mut map = vec![usize::MAX; c.len()];
            for (from, to) in &d.map {
                let i = c
                    .index_of(from)
                    .ok_or_else(|| Error::Model(format!("unknown element id {from:?}")))?;
                map[i] = c
                    .index_of(to)
                    .ok_or_else(|| Error::Model(format!("unknown element id {to:?}")))?;
            }
            if map.contains(&usize::MAX) {
                return Err(Error::Model(format!("function {name:?} is not total")));
            }
            functions.insert(name.clone(), FunctionTable::validated(c, c, map)?);
        }
    }
    let swap = doc
        .swap
        .as_ref()
        .map(|s| {
            let ids = s.elements.clone();
            let n = ids.len();
            let grid = |t: &Vec<Vec<String>>| -> Result<Vec<usize>, Error> {
                if t.len() != n || t.iter().any(|r| r.len() != n) {
                    return Err(Error::Model("swap table must be n x n".into()));
                }
                t.iter()
                    .flatten()
                    .map(|id| index_of(&ids, id))
                    .collect()
            };
            let unary = |m: &BTreeMap<String, String>| -> Result<Vec<usize>, Error> {
                (0..n)
                    .map(|i| {
                        let v = m
                            .get(&ids[i])
                            .ok_or_else(|| Error::Model("unary table is not total".into()))?;
                        index_of(&ids, v)
                    })
                    .collect()
            };
            let mut neq = vec![false; n * n];
            for (a, b) in s.apart.as_deref().unwrap_or(&[]) {
                neq[index_of(&ids, a)? * n + index_of(&ids, b)?] = true;
            }
            let model = SwapModel {
                labels: ids.clone(),
                eq_class: (0..n).collect(),
                neq,
                join: grid(&s.join)?,
                meet: grid(&s.meet)?,
                neg: unary(&s.neg)?,
                zero_of: unary(&s.zero_of)?,
                one_of: unary(&s.one_of)?,
                zero: index_of(&ids, &s.zero)?,
                one: index_of(&ids, &s.one)?,
            };
            model.validate()?;
            Ok::<_, Error>(model)
        })
        .transpose()?;
    let topology = doc
        .topology
        .as_ref()
        .map(|t| {
            let space = match &t.space {
                Some(c) => resolve_carrier(c)?,
                None => need_carrier()?.clone(),
            };
            let inline_ok = t.space.is_none();
            let opens = t
                .opens
                .iter()
                .map(|r| match r {
                    OpenRef::Name(name) => {
                        if !inline_ok {
                            return Err(Error::Model(
                                "named opens need the document carrier".into(),
                            ));
                        }
                        complemented
                            .get(name)
                            .cloned()
                            .ok_or_else(|| Error::Model(format!("unknown open {name:?}")))
                    }
                    OpenRef::Inline(d) => resolve_complemented(&space, d),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok::<_, Error>((space, opens))
        })
        .transpose()?;
    let base = doc
        .base
        .as_ref()
        .map(|b| {
            let c = need_carrier()?;
            let members = b
                .members
                .iter()
                .map(|r| match r {
                    OpenRef::Name(name) => complemented
                        .get(name)
                        .cloned()
                        .ok_or_else(|| Error::Model(format!("unknown member {name:?}"))),
                    OpenRef::Inline(d) => resolve_complemented(c, d),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut beta_x = vec![usize::MAX; c.len()];
            for (id, &m) in &b.beta_x {
                let i = c
                    .index_of(id)
                    .ok_or_else(|| Error::Model(format!("unknown element id {id:?}")))?;
                if m >= members.len() {
                    return Err(Error::Model("beta_x member index out of range".into()));
                }
                beta_x[i] = m;
            }
            if beta_x.contains(&usize::MAX) {
                return Err(Error::Model("beta_x must cover every element".into()));
            }
            let mut beta_empty = BTreeMap::new();
            for (id, &m) in b.beta_empty.as_ref().unwrap_or(&BTreeMap::new()) {
                let i = c
                    .index_of(id)
                    .ok_or_else(|| Error::Model(format!("unknown element id {id:?}")))?;
                beta_empty.insert(i, m);
            }
            let mut beta_pair = BTreeMap::new();
            for p in &b.beta_pairs {
                let at = c
                    .index_of(&p.at)
                    .ok_or_else(|| Error::Model(format!("unknown element id {:?}", p.at)))?;
                beta_pair.insert((p.left, p.right, at), p.value);
            }
            validate_base(c, &members, &beta_x, &beta_empty, &beta_pair)
        })
        .transpose()?;
    let mut maps = Vec::new();
    for m in doc.maps.as_deref().unwrap_or(&[]) {
        let a = q_of(&m.affine.a)?;
        let b = q_of(&m.affine.b)?;
        let pointwise = m
            .pointwise
            .as_ref()
            .map(|t| Ok::<_, Error>(PointwiseMod::SameForAll(t.resolve()?)))
            .transpose()?;
        let uniform = m.uniform.as_ref().map(|t| t.resolve()).transpose()?;
        maps.push((
            m.name.clone(),
            ContinuousMap {
                kind: MapKind::Affine(AffineMap { a, b }),
                pointwise,
                uniform,
            },
        ));
    }
    let mut formulas = Vec::new();
    for f in doc.formulas.as_deref().unwrap_or(&[]) {
        formulas.push(parse_formula(f)?);
    }
    let structure = if doc.formulas.is_some() {
        let c = need_carrier()?.clone();
        let mut st = FiniteStructure::new().with_sort("S", c.clone());
        for (name, id) in doc.constants.as_ref().unwrap_or(&BTreeMap::new()) {
            let i = c
                .index_of(id)
                .ok_or_else(|| Error::Model(format!("unknown element id {id:?}")))?;
            st = st.with_const(name, "S", i);
        }
        Some(st)
    } else {
        None
    };
    let weak_targets = doc
        .weak
        .as_ref()
        .map(|w| w.targets.clone())
        .unwrap_or_default();
    for t in &weak_targets {
        if !functions.contains_key(t) {
            return Err(Error::Model(format!("unknown weak-target function {t:?}")));
        }
    }
    Ok(ResolvedModel {
        carrier: set_carrier,
        metric,
        line_opens,
        subsets,
        complemented,
        functions,
        swap,
        topology,
        base,
        maps,
        formulas,
        structure,
        weak_targets,
    })
}
