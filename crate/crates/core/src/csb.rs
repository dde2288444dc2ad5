//! Abstract bases with base-moduli, induced (in)equalities, csb-openness
//! with moduli, csb-continuity (plain, pointwise, uniform), products of
//! csb-spaces, and the weak csb-topology.
//!
//! Everything is finite here: bases are explicit families, moduli are
//! tables into the base, and base-element equality is cs-equality resolved
//! through deduplicated member indices.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::carrier::{Carrier, ExtSubset, FunctionTable};
use crate::complemented::{inverse_image, Complemented, CsKey};
use crate::topology::{validate_topology, CsTopology};
use crate::Error;

/// A validated base for a cs-topology: a deduplicated family with the three
/// base-moduli and their covering flags.
#[derive(Clone, Debug)]
pub struct CsBase {
    carrier: Arc<Carrier>,
    members: Vec<Complemented>,
    beta_x: Vec<usize>,
    beta_empty: BTreeMap<usize, usize>,
    beta_pair: BTreeMap<(usize, usize, usize), usize>,
    pub covering: BaseCoveringFlags,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseCoveringFlags {
    pub x: bool,
    pub empty: bool,
    pub pairs: bool,
}

impl BaseCoveringFlags {
    pub fn all(&self) -> bool {
        self.x && self.empty && self.pairs
    }
}

impl CsBase {
    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn members(&self) -> &[Complemented] {
        &self.members
    }

    pub fn member_index(&self, cs: &Complemented) -> Option<usize> {
        let key = cs.key();
        self.members.iter().position(|m| m.key() == key)
    }

    pub fn beta_x(&self, x: usize) -> usize {
        self.beta_x[x]
    }

    pub fn beta_pair(&self, i: usize, j: usize, x: usize) -> Option<usize> {
        self.beta_pair.get(&(i, j, x)).copied()
    }

    /// `𝓑(x)`: the member indices whose 1-part contains `x`.
    pub fn members_at(&self, x: usize) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i].one().contains(x))
            .collect()
    }
}

/// Validates Base₁–Base₃ for the given tables and computes the covering
/// flags from the three covering inclusions (intersections over an empty
/// index set are the whole space).
pub fn validate_base(
    carrier: &Arc<Carrier>,
    family: &[Complemented],
    beta_x: &[usize],
    beta_empty: &BTreeMap<usize, usize>,
    beta_pair: &BTreeMap<(usize, usize, usize), usize>,
) -> Result<CsBase, Error> {
    // dedup keeps the first occurrence; indices into `family` are remapped
    let mut members: Vec<Complemented> = Vec::new();
    let mut remap = Vec::with_capacity(family.len());
    for cs in family {
        if !Arc::ptr_eq(cs.carrier(), carrier) {
            return Err(Error::CarrierMismatch);
        }
        let key = cs.key();
        match members.iter().position(|m| m.key() == key) {
            Some(i) => remap.push(i),
            None => {
                members.push(cs.clone());
                remap.push(members.len() - 1);
            }
        }
    }
    let n = carrier.len();
    if beta_x.len() != n {
        return Err(Error::Model("beta_X must cover every element".into()));
    }
    let lookup = |raw: usize| -> Result<usize, Error> {
        remap
            .get(raw)
            .copied()
            .ok_or_else(|| Error::Model("beta value is not a family member".into()))
    };
    let beta_x: Vec<usize> = beta_x.iter().map(|&i| lookup(i)).collect::<Result<_, _>>()?;
    for (x, &bi) in beta_x.iter().enumerate() {
        if !members[bi].one().contains(x) {
            return Err(Error::BaseAxiom {
                axiom: "Base1".into(),
                witness: carrier.id(x).to_string(),
            });
        }
    }
    let empty = ExtSubset::empty_subset(carrier);
    let mut beta_empty_mapped = BTreeMap::new();
    for (&x, &raw) in beta_empty {
        let bi = lookup(raw)?;
        beta_empty_mapped.insert(x, bi);
    }
    for x in empty.members() {
        let bi = *beta_empty_mapped.get(&x).ok_or_else(|| Error::BaseAxiom {
            axiom: "Base2".into(),
            witness: format!("no beta_empty value at {}", carrier.id(x)),
        })?;
        let b = &members[bi];
        let pole = Complemented::zero_x(carrier);
        if !b.one().contains(x) || !b.leq(&pole)? {
            return Err(Error::BaseAxiom {
                axiom: "Base2".into(),
                witness: carrier.id(x).to_string(),
            });
        }
    }
    let mut beta_pair_mapped: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for (&(i, j, x), &raw) in beta_pair {
        let (i, j) = (lookup(i)?, lookup(j)?);
        beta_pair_mapped.insert((i, j, x), lookup(raw)?);
    }
    for i in 0..members.len() {
        for j in 0..members.len() {
            let meet = members[i].intersection(&members[j])?;
            for x in meet.one().members() {
                let bi = *beta_pair_mapped.get(&(i, j, x)).ok_or_else(|| Error::BaseAxiom {
                    axiom: "Base3".into(),
                    witness: format!(
                        "no beta value for pair ({i},{j}) at {}",
                        carrier.id(x)
                    ),
                })?;
                let b = &members[bi];
                if !b.one().contains(x) || !b.leq(&meet)? {
                    return Err(Error::BaseAxiom {
                        axiom: "Base3".into(),
                        witness: carrier.id(x).to_string(),
                    });
                }
            }
        }
    }
    // covering inclusions
    let full = carrier.full_mask();
    let mut inter = full;
    for (x, &bi) in beta_x.iter().enumerate() {
        let _ = x;
        inter &= members[bi].zero().mask();
    }
    if n == 0 {
        inter = full;
    }
    let covering_x = inter & !empty.mask() == 0;
    let mut inter_e = full;
    let mut any_e = false;
    for x in empty.members() {
        any_e = true;
        inter_e &= members[beta_empty_mapped[&x]].zero().mask();
    }
    if !any_e {
        inter_e = full;
    }
    let covering_empty = full & !inter_e == 0;
    let mut covering_pairs = true;
    for i in 0..members.len() {
        for j in 0..members.len() {
            let meet = members[i].intersection(&members[j])?;
            let mut inter = full;
            let mut any = false;
            for x in meet.one().members() {
                any = true;
                inter &= members[beta_pair_mapped[&(i, j, x)]].zero().mask();
            }
            if !any {
                inter = full;
            }
            covering_pairs &= inter & !meet.zero().mask() == 0;
        }
    }
    Ok(CsBase {
        carrier: carrier.clone(),
        members,
        beta_x,
        beta_empty: beta_empty_mapped,
        beta_pair: beta_pair_mapped,
        covering: BaseCoveringFlags {
            x: covering_x,
            empty: covering_empty,
            pairs: covering_pairs,
        },
    })
}

/// A base whose pairwise β values always exist: fills `beta_pair` with a
/// fixed rule. Used by constructions whose Base₃ witness is canonical.
pub fn base_with_rule(
    carrier: &Arc<Carrier>,
    family: &[Complemented],
    beta_x: &[usize],
    rule: impl Fn(usize, usize, usize) -> Option<usize>,
) -> Result<CsBase, Error> {
    // compute the pair table on the deduplicated family
    let mut members: Vec<Complemented> = Vec::new();
    for cs in family {
        let key = cs.key();
        if !members.iter().any(|m| m.key() == key) {
            members.push(cs.clone());
        }
    }
    let mut beta_pair = BTreeMap::new();
    for i in 0..members.len() {
        for j in 0..members.len() {
            let meet = members[i].intersection(&members[j])?;
            for x in meet.one().members() {
                if let Some(v) = rule(i, j, x) {
                    beta_pair.insert((i, j, x), v);
                }
            }
        }
    }
    let dedup_beta_x: Vec<usize> = beta_x.to_vec();
    validate_base(
        carrier,
        &members,
        &dedup_beta_x,
        &BTreeMap::new(),
        &beta_pair,
    )
}

#[derive(Clone, Debug)]
pub struct InducedRelations {
    pub eq: Vec<bool>,
    pub neq: Vec<bool>,
    pub separates: bool,
    pub co_separates: bool,
    pub cotransitive: bool,
}

/// The equality/inequality induced by the base, plus the separation flags.
/// The two sanity implications (`=_X ⇒ =_𝓑` and `≠_𝓑 ⇒ ≠_X`) are asserted.
pub fn induced_relations(base: &CsBase) -> InducedRelations {
    induced_relations_of_family(&base.carrier, &base.members)
}

/// The relations induced by any family of complemented subsets (the β
/// tables play no role in them).
pub fn induced_relations_of_family(
    c: &Arc<Carrier>,
    members: &[Complemented],
) -> InducedRelations {
    let n = c.len();
    let mut eq = vec![false; n * n];
    let mut neq = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            eq[x * n + y] = members
                .iter()
                .all(|b| b.one().contains(x) == b.one().contains(y));
            neq[x * n + y] = members.iter().any(|b| {
                (b.one().contains(x) && b.zero().contains(y))
                    || (b.one().contains(y) && b.zero().contains(x))
            });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if c.equal(x, y) {
                debug_assert!(eq[x * n + y], "=_X must imply =_B");
            }
            if neq[x * n + y] {
                debug_assert!(c.apart(x, y), "≠_B must imply ≠_X");
            }
        }
    }
    let separates = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .all(|(x, y)| !eq[x * n + y] || c.equal(x, y));
    let co_separates = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .all(|(x, y)| !c.apart(x, y) || neq[x * n + y]);
    let mut cotransitive = true;
    for x in 0..n {
        for y in 0..n {
            if !neq[x * n + y] {
                continue;
            }
            for z in 0..n {
                if !neq[z * n + x] && !neq[z * n + y] {
                    cotransitive = false;
                }
            }
        }
    }
    InducedRelations {
        eq,
        neq,
        separates,
        co_separates,
        cotransitive,
    }
}

/// A modulus of openness into the base: per point of the 1-part, a base
/// member index with `x ⋲ op(x)` and `op(x) ⊆ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsbModulus {
    pub table: BTreeMap<usize, usize>,
}

impl CsbModulus {
    pub fn at(&self, x: usize) -> Result<usize, Error> {
        self.table
            .get(&x)
            .copied()
            .ok_or_else(|| Error::UnregisteredModulus(format!("point {x}")))
    }
}

/// The generated topology with its modulus registry: cs-equal opens share
/// one modulus table, keyed by the canonical cs-key.
#[derive(Clone, Debug)]
pub struct GeneratedTopology {
    pub topology: CsTopology,
    pub moduli: BTreeMap<CsKey, CsbModulus>,
}

impl GeneratedTopology {
    pub fn modulus_of(&self, open: &Complemented) -> Result<&CsbModulus, Error> {
        self.moduli
            .get(&open.key())
            .ok_or_else(|| Error::UnregisteredModulus(format!("{:?}", open.key())))
    }

    /// Checks the modulus property `x ⋲ op(x) ∧ op(x) ⊆ G` for a base.
    pub fn verify_moduli(&self, base: &CsBase) -> Result<bool, Error> {
        for open in self.topology.opens() {
            let m = self.modulus_of(open)?;
            for x in open.one().members() {
                let b = &base.members()[m.at(x)?];
                if !b.one().contains(x) || !b.leq(open)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether a generated modulus is covering: `G = ⋃_{x∈G¹} op_G(x)`.
    /// The uninhabited case is vacuous (the union over an empty index is
    /// not formed).
    pub fn modulus_is_covering(&self, open: &Complemented, base: &CsBase) -> Result<bool, Error> {
        let m = self.modulus_of(open)?;
        let assigned: Vec<Complemented> = open
            .one()
            .members()
            .map(|x| Ok(base.members()[m.at(x)?].clone()))
            .collect::<Result<_, Error>>()?;
        if assigned.is_empty() {
            return Ok(true);
        }
        Ok(crate::complemented::family_union(&assigned)?.cs_eq(open)?)
    }
}

pub const MAX_GENERATED_FAMILY: usize = 16;

/// All T_𝓑-opens reachable from the base: the poles, the base members, and
/// the closure under pairwise intersections (Base₃ moduli) and subfamily
/// unions (least-index moduli). The result re-validates as a cs-topology.
pub fn generate_topology(base: &CsBase) -> Result<GeneratedTopology, Error> {
    let carrier = &base.carrier;
    let mut opens: Vec<Complemented> = Vec::new();
    let mut moduli: BTreeMap<CsKey, CsbModulus> = BTreeMap::new();
    let push = |opens: &mut Vec<Complemented>,
                    moduli: &mut BTreeMap<CsKey, CsbModulus>,
                    cs: Complemented,
                    m: CsbModulus|
     -> bool {
        let key = cs.key();
        if moduli.contains_key(&key) {
            return false;
        }
        moduli.insert(key, m);
        opens.push(cs);
        true
    };
    // poles: (X,∅) via β_X, (∅,X) via β_∅ (empty domain on a validated carrier)
    let top = Complemented::one_x(carrier);
    let top_mod = CsbModulus {
        table: (0..carrier.len()).map(|x| (x, base.beta_x(x))).collect(),
    };
    push(&mut opens, &mut moduli, top, top_mod);
    let bot = Complemented::zero_x(carrier);
    let bot_mod = CsbModulus {
        table: base.beta_empty.clone(),
    };
    push(&mut opens, &mut moduli, bot, bot_mod);
    // base members with the constant modulus
    for (i, b) in base.members.iter().enumerate() {
        let m = CsbModulus {
            table: b.one().members().map(|x| (x, i)).collect(),
        };
        push(&mut opens, &mut moduli, b.clone(), m);
    }
    // closure under pairwise intersections and subfamily unions
    loop {
        if opens.len() > MAX_GENERATED_FAMILY {
            return Err(Error::SizeCap {
                what: "generated topology".into(),
                cap: MAX_GENERATED_FAMILY,
                got: opens.len(),
            });
        }
        let mut added = false;
        let snapshot = opens.clone();
        // intersections with the Base₃ rule on the moduli
        for g in &snapshot {
            for h in &snapshot {
                let meet = g.intersection(h)?;
                if moduli.contains_key(&meet.key()) {
                    continue;
                }
                let mg = moduli[&g.key()].clone();
                let mh = moduli[&h.key()].clone();
                let mut table = BTreeMap::new();
                let mut ok = true;
                for x in meet.one().members() {
                    let bi = mg.at(x)?;
                    let bj = mh.at(x)?;
                    match base.beta_pair(bi, bj, x) {
                        Some(v) => {
                            table.insert(x, v);
                        }
                        None => {
                            ok = false;
                        }
                    }
                }
                if !ok {
                    return Err(Error::BaseAxiom {
                        axiom: "Base3".into(),
                        witness: "missing pair modulus during generation".into(),
                    });
                }
                added |= push(&mut opens, &mut moduli, meet, CsbModulus { table });
            }
        }
        // subfamily unions with the least-index modulus
        let k = snapshot.len();
        if k <= MAX_GENERATED_FAMILY {
            for code in 1u64..(1 << k) {
                let fam: Vec<&Complemented> = (0..k)
                    .filter(|i| code & (1 << i) != 0)
                    .map(|i| &snapshot[i])
                    .collect();
                let mut u = fam[0].clone();
                for g in &fam[1..] {
                    u = u.union(g)?;
                }
                if moduli.contains_key(&u.key()) {
                    continue;
                }
                let mut table = BTreeMap::new();
                for x in u.one().members() {
                    // least member of the subfamily whose 1-part holds x
                    let g = fam
                        .iter()
                        .find(|g| g.one().contains(x))
                        .expect("union 1-part is covered by some member");
                    table.insert(x, moduli[&g.key()].at(x)?);
                }
                added |= push(&mut opens, &mut moduli, u, CsbModulus { table });
            }
        }
        if !added {
            break;
        }
    }
    let (topology, _) = validate_topology(carrier, &opens, 0, 0)?;
    let gen = GeneratedTopology { topology, moduli };
    if !gen.verify_moduli(base)? {
        return Err(Error::SideCondition(
            "generated modulus violates the openness property".into(),
        ));
    }
    Ok(gen)
}

/// The relative base on a subset `A` (paired with `∅_X`): members
/// `(A ∩ B¹, A ∩ B⁰)` on the sub-carrier, with transported β moduli;
/// re-validated.
pub fn relative_base(base: &CsBase, a: &ExtSubset) -> Result<(Arc<Carrier>, CsBase), Error> {
    if !Arc::ptr_eq(a.carrier(), &base.carrier) {
        return Err(Error::CarrierMismatch);
    }
    let (sub, members_of_sub) = Carrier::restrict(&base.carrier, a.mask())?;
    let restrict = |s: &ExtSubset| -> ExtSubset {
        ExtSubset::saturated(
            &sub,
            members_of_sub
                .iter()
                .enumerate()
                .filter(|(_, &p)| s.contains(p))
                .map(|(i, _)| i),
        )
    };
    let relativize = |cs: &Complemented| -> Result<Complemented, Error> {
        let one = a.intersection(cs.one())?;
        let zero = a.intersection(cs.zero())?;
        Complemented::new(restrict(&one), restrict(&zero))
    };
    let rel_members: Vec<Complemented> = base
        .members
        .iter()
        .map(relativize)
        .collect::<Result<_, _>>()?;
    // transported β_X: the relativized value of the parent β at the parent point
    let beta_x: Vec<usize> = members_of_sub
        .iter()
        .map(|&p| base.beta_x(p))
        .collect();
    // parent pair entries transported pointwise
    let mut beta_pair = BTreeMap::new();
    for (&(i, j, x), &v) in &base.beta_pair {
        if let Some(sx) = members_of_sub.iter().position(|&p| p == x) {
            beta_pair.insert((i, j, sx), v);
        }
    }
    let rel = validate_base(&sub, &rel_members, &beta_x, &BTreeMap::new(), &beta_pair)?;
    Ok((sub, rel))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsbKind {
    Plain,
    Pointwise,
    Uniform,
}

/// A csb-map: a strongly extensional function together with its openness
/// inversion `op_f` (per codomain open, a modulus table for the inverse
/// image) and optional pointwise/uniform continuity moduli as tables
/// between base-member indices.
#[derive(Clone, Debug)]
pub struct CsbMap {
    pub f: FunctionTable,
    pub op_f: BTreeMap<CsKey, CsbModulus>,
    /// Per point `x`: a map `𝓒(f(x)) → 𝓑(x)` (dst member → src member).
    pub omega: Option<Vec<BTreeMap<usize, usize>>>,
    /// `Ω : 𝓒(f(X)) → 𝓑`.
    pub omega_uniform: Option<BTreeMap<usize, usize>>,
}

impl CsbMap {
    /// Derives `op_f` from a pointwise family:
    /// `op_{f⁻¹(H)}(x) := ω_{f,x}(op_H(f(x)))`.
    pub fn from_pointwise(
        f: FunctionTable,
        dst: &GeneratedTopology,
        omega: Vec<BTreeMap<usize, usize>>,
    ) -> Result<CsbMap, Error> {
        let mut op_f = BTreeMap::new();
        for h in dst.topology.opens() {
            let op_h = dst.modulus_of(h)?;
            let inv = inverse_image(&f, h)?;
            let mut table = BTreeMap::new();
            for x in inv.one().members() {
                let c = op_h.at(f.apply(x))?;
                let b = *omega[x].get(&c).ok_or_else(|| {
                    Error::Model(format!("omega at point {x} undefined on member {c}"))
                })?;
                table.insert(x, b);
            }
            op_f.insert(h.key(), CsbModulus { table });
        }
        Ok(CsbMap {
            f,
            op_f,
            omega: Some(omega),
            omega_uniform: None,
        })
    }

    /// Derives `op_f` from a uniform modulus:
    /// `op_{f⁻¹(H)} := Ω ∘ op_H ∘ f` on `f⁻¹(H¹)`.
    pub fn from_uniform(
        f: FunctionTable,
        dst: &GeneratedTopology,
        omega_uniform: BTreeMap<usize, usize>,
    ) -> Result<CsbMap, Error> {
        let mut op_f = BTreeMap::new();
        for h in dst.topology.opens() {
            let op_h = dst.modulus_of(h)?;
            let inv = inverse_image(&f, h)?;
            let mut table = BTreeMap::new();
            for x in inv.one().members() {
                let c = op_h.at(f.apply(x))?;
                let b = *omega_uniform.get(&c).ok_or_else(|| {
                    Error::Model(format!("uniform omega undefined on member {c}"))
                })?;
                table.insert(x, b);
            }
            op_f.insert(h.key(), CsbModulus { table });
        }
        let n = f.dom().len();
        let omega = Some(vec![omega_uniform.clone(); n]);
        Ok(CsbMap {
            f,
            op_f,
            omega,
            omega_uniform: Some(omega_uniform),
        })
    }

    /// `op_f` by registry lookup: `op_{f⁻¹(H)}` is the source registry's
    /// modulus of the class of `f⁻¹(H)`. Works when every inverse image is
    /// source-open.
    pub fn from_registry(
        f: FunctionTable,
        src: &GeneratedTopology,
        dst: &GeneratedTopology,
    ) -> Result<CsbMap, Error> {
        let mut op_f = BTreeMap::new();
        for h in dst.topology.opens() {
            let inv = inverse_image(&f, h)?;
            let m = src.modulus_of(&inv)?;
            op_f.insert(h.key(), m.clone());
        }
        Ok(CsbMap {
            f,
            op_f,
            omega: None,
            omega_uniform: None,
        })
    }
}

#[derive(Clone, Debug)]
pub struct CsbContinuityReport {
    pub pass: bool,
    pub witnesses: Vec<String>,
}

/// Checks csb-continuity at the requested strength. Plain: every inverse
/// image is source-open and the provided modulus satisfies the openness
/// property. Pointwise/uniform: the corresponding law at every point of
/// every `f⁻¹(H¹)` (member equality is index equality after dedup).
pub fn check_csb_continuity(
    kind: CsbKind,
    m: &CsbMap,
    src_base: &CsBase,
    src: &GeneratedTopology,
    dst: &GeneratedTopology,
) -> Result<CsbContinuityReport, Error> {
    if !m.f.classify().strongly_extensional {
        return Err(Error::MissingFunctionClass {
            required: "strongly extensional".into(),
        });
    }
    let mut witnesses = Vec::new();
    for h in dst.topology.opens() {
        let inv = inverse_image(&m.f, h)?;
        if !src.topology.contains(&inv) {
            witnesses.push(format!("inverse image of {:?} is not open", h.key()));
            continue;
        }
        let op_inv = match m.op_f.get(&h.key()) {
            Some(t) => t,
            None => {
                witnesses.push(format!("no inverted modulus for {:?}", h.key()));
                continue;
            }
        };
        let op_h = dst.modulus_of(h)?;
        for x in inv.one().members() {
            let b = &src_base.members()[op_inv.at(x)?];
            if !b.one().contains(x) || !b.leq(&inv)? {
                witnesses.push(format!("modulus not valid at point {x} for {:?}", h.key()));
            }
            match kind {
                CsbKind::Plain => {}
                CsbKind::Pointwise => {
                    let omega = m
                        .omega
                        .as_ref()
                        .ok_or_else(|| Error::Model("no pointwise modulus present".into()))?;
                    let c = op_h.at(m.f.apply(x))?;
                    match omega[x].get(&c) {
                        Some(&want) if want == op_inv.at(x)? => {}
                        _ => witnesses.push(format!(
                            "pointwise law fails at ({:?}, point {x})",
                            h.key()
                        )),
                    }
                }
                CsbKind::Uniform => {
                    let omega = m
                        .omega_uniform
                        .as_ref()
                        .ok_or_else(|| Error::Model("no uniform modulus present".into()))?;
                    let c = op_h.at(m.f.apply(x))?;
                    match omega.get(&c) {
                        Some(&want) if want == op_inv.at(x)? => {}
                        _ => witnesses.push(format!(
                            "uniform law fails at ({:?}, point {x})",
                            h.key()
                        )),
                    }
                }
            }
        }
    }
    Ok(CsbContinuityReport {
        pass: witnesses.is_empty(),
        witnesses,
    })
}

/// The pointwise law against Base₃: for every pair of codomain opens and
/// every point of the intersected inverse images, the source pair-modulus
/// over the inverted moduli equals `ω_{f,x}` of the codomain pair-modulus.
pub fn check_pointwise_beta_pairs(
    m: &CsbMap,
    src_base: &CsBase,
    dst_base: &CsBase,
    dst: &GeneratedTopology,
) -> Result<Result<(), String>, Error> {
    let omega = m
        .omega
        .as_ref()
        .ok_or_else(|| Error::Model("no pointwise modulus present".into()))?;
    for k in dst.topology.opens() {
        for l in dst.topology.opens() {
            let op_k = dst.modulus_of(k)?;
            let op_l = dst.modulus_of(l)?;
            let inv_k = inverse_image(&m.f, k)?;
            let inv_l = inverse_image(&m.f, l)?;
            let both = inv_k.one().intersection(inv_l.one())?;
            for x in both.members() {
                let fx = m.f.apply(x);
                let (ck, cl) = (op_k.at(fx)?, op_l.at(fx)?);
                let Some(rhs_target) = dst_base.beta_pair(ck, cl, fx) else {
                    continue;
                };
                let rhs = match omega[x].get(&rhs_target) {
                    Some(&b) => b,
                    None => return Ok(Err(format!("omega undefined on pair value at {x}"))),
                };
                let mk = m
                    .op_f
                    .get(&k.key())
                    .ok_or_else(|| Error::UnregisteredModulus(format!("{:?}", k.key())))?;
                let ml = m
                    .op_f
                    .get(&l.key())
                    .ok_or_else(|| Error::UnregisteredModulus(format!("{:?}", l.key())))?;
                let Some(lhs) = src_base.beta_pair(mk.at(x)?, ml.at(x)?, x) else {
                    continue;
                };
                if lhs != rhs {
                    return Ok(Err(format!(
                        "beta-pair law fails at point {x} for opens {:?}, {:?}",
                        k.key(),
                        l.key()
                    )));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Pole transport for pointwise maps: `β_X(x) = ω_{f,x}(β_Y(f(x)))` (the
/// coempty analogue is vacuous on validated carriers).
pub fn check_pointwise_pole_transport(
    m: &CsbMap,
    src_base: &CsBase,
    dst_base: &CsBase,
) -> Result<Result<(), String>, Error> {
    let omega = m
        .omega
        .as_ref()
        .ok_or_else(|| Error::Model("no pointwise modulus present".into()))?;
    #[allow(clippy::needless_range_loop)]
    for x in 0..m.f.dom().len() {
        let fx = m.f.apply(x);
        let dst_beta = dst_base.beta_x(fx);
        let Some(&carried) = omega[x].get(&dst_beta) else {
            return Ok(Err(format!("omega undefined on beta_Y at point {x}")));
        };
        if carried != src_base.beta_x(x) {
            return Ok(Err(format!("pole transport fails at point {x}")));
        }
    }
    Ok(Ok(()))
}

/// A product csb-space: the product carrier, the base `{B × C}`, and the
/// three product base-moduli. Validation is asserted.
pub struct ProductSpace {
    pub carrier: Arc<Carrier>,
    pub base: CsBase,
    /// (left member, right member) → product member index.
    pub pair_index: BTreeMap<(usize, usize), usize>,
    pub left: Arc<Carrier>,
    pub right: Arc<Carrier>,
}

pub fn product_space(a: &CsBase, b: &CsBase) -> Result<ProductSpace, Error> {
    let pc = Carrier::product(&a.carrier, &b.carrier)?;
    let nb = b.carrier.len();
    let mut members = Vec::new();
    let mut pair_index = BTreeMap::new();
    for (i, bi) in a.members.iter().enumerate() {
        for (j, cj) in b.members.iter().enumerate() {
            let prod = bi.product(cj, &pc)?;
            let key = prod.key();
            let idx = match members.iter().position(|m: &Complemented| m.key() == key) {
                Some(k) => k,
                None => {
                    members.push(prod);
                    members.len() - 1
                }
            };
            pair_index.insert((i, j), idx);
        }
    }
    let beta_x: Vec<usize> = (0..pc.len())
        .map(|p| {
            let (x, y) = (p / nb, p % nb);
            pair_index[&(a.beta_x(x), b.beta_x(y))]
        })
        .collect();
    // β over product pairs: componentwise Base₃ values
    let mut beta_pair = BTreeMap::new();
    for (&(i1, j1), &m1) in &pair_index {
        for (&(i2, j2), &m2) in &pair_index {
            let meet = members[m1].intersection(&members[m2])?;
            for p in meet.one().members() {
                let (x, y) = (p / nb, p % nb);
                let bx = a
                    .beta_pair(i1, i2, x)
                    .ok_or_else(|| Error::BaseAxiom {
                        axiom: "Base3".into(),
                        witness: "left factor missing a pair value".into(),
                    })?;
                let by = b
                    .beta_pair(j1, j2, y)
                    .ok_or_else(|| Error::BaseAxiom {
                        axiom: "Base3".into(),
                        witness: "right factor missing a pair value".into(),
                    })?;
                beta_pair.entry((m1, m2, p)).or_insert(pair_index[&(bx, by)]);
            }
        }
    }
    let base = validate_base(&pc, &members, &beta_x, &BTreeMap::new(), &beta_pair)?;
    Ok(ProductSpace {
        carrier: pc,
        base,
        pair_index,
        left: a.carrier.clone(),
        right: b.carrier.clone(),
    })
}

/// A base-modulus `β_X` is uniform when `(X, ∅_X)` is a member and
/// `β_X(x) = (X, ∅_X)` for every `x`.
pub fn has_uniform_beta_x(base: &CsBase) -> bool {
    let pole = Complemented::one_x(&base.carrier);
    match base.member_index(&pole) {
        Some(i) => base.beta_x.iter().all(|&b| b == i),
        None => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The projection of a product csb-space as a csb-map: pointwise modulus
/// `ω_{pr,(x,y)}(D) := D × β_Y(y)` (always), uniform
/// `Ω_{pr}(C) := C × (Y, ∅_Y)` when the other factor's `β` is uniform.
pub fn projection_map(
    p: &ProductSpace,
    side: Side,
    factor: &CsBase,
    other: &CsBase,
    factor_gen: &GeneratedTopology,
    want_uniform: bool,
) -> Result<CsbMap, Error> {
    let nb = p.right.len();
    let map: Vec<usize> = (0..p.carrier.len())
        .map(|q| match side {
            Side::Left => q / nb,
            Side::Right => q % nb,
        })
        .collect();
    let f = FunctionTable::validated(&p.carrier, factor.carrier(), map)?;
    // pointwise: per product point (x,y), D ↦ D × β_other(y)
    let mut omega = Vec::with_capacity(p.carrier.len());
    for q in 0..p.carrier.len() {
        let (x, y) = (q / nb, q % nb);
        let other_coord = match side {
            Side::Left => y,
            Side::Right => x,
        };
        let mut table = BTreeMap::new();
        for d in factor.members_at(match side {
            Side::Left => x,
            Side::Right => y,
        }) {
            let beta_other = other.beta_x(other_coord);
            let idx = match side {
                Side::Left => p.pair_index[&(d, beta_other)],
                Side::Right => p.pair_index[&(beta_other, d)],
            };
            table.insert(d, idx);
        }
        omega.push(table);
    }
    if want_uniform {
        if !has_uniform_beta_x(other) {
            return Err(Error::MissingFunctionClass {
                required: "uniform base-modulus on the other factor".into(),
            });
        }
        let pole_other = other
            .member_index(&Complemented::one_x(other.carrier()))
            .expect("uniform base has the pole");
        let mut table = BTreeMap::new();
        for c in 0..factor.members().len() {
            let idx = match side {
                Side::Left => p.pair_index[&(c, pole_other)],
                Side::Right => p.pair_index[&(pole_other, c)],
            };
            table.insert(c, idx);
        }
        CsbMap::from_uniform(f, factor_gen, table)
    } else {
        CsbMap::from_pointwise(f, factor_gen, omega)
    }
}

/// The weak csb-topology determined by strongly extensional maps into csb
/// targets: the base is all finite intersections of inverse images of
/// target opens, plus both poles, with uniform `β_X`, `β_∅` and
/// `β_{B,B'}(x) := B ∩ B'`; every input map comes back uniformly continuous
/// with `Ω(C) := f⁻¹(C)`.
pub fn weak_topology(
    carrier: &Arc<Carrier>,
    targets: &[(CsBase, GeneratedTopology, FunctionTable)],
) -> Result<(CsBase, GeneratedTopology, Vec<CsbMap>), Error> {
    weak_topology_anchored(carrier, targets, None)
}

/// The variant that routes `β_X` through an injective anchor map:
/// `β_X(x) := f_{i0}⁻¹(Y, ∅_Y)`. The inverse image of the 1-pole under a
/// strongly extensional map is the 1-pole, so the resulting base agrees
/// with the pole-augmented default; the anchor only changes which
/// presentation backs the modulus. Requires `targets[i0]` to be an
/// injection.
pub fn weak_topology_anchored(
    carrier: &Arc<Carrier>,
    targets: &[(CsBase, GeneratedTopology, FunctionTable)],
    anchor: Option<usize>,
) -> Result<(CsBase, GeneratedTopology, Vec<CsbMap>), Error> {
    if let Some(i0) = anchor {
        let f = &targets
            .get(i0)
            .ok_or_else(|| Error::Model("anchor index out of range".into()))?
            .2;
        if !f.classify().injection {
            return Err(Error::MissingFunctionClass {
                required: "injection (weak-topology anchor)".into(),
            });
        }
        let back = inverse_image(f, &Complemented::one_x(f.cod()))?;
        debug_assert!(back.cs_eq(&Complemented::one_x(carrier))?);
    }
    for (_, _, f) in targets {
        if !f.classify().strongly_extensional {
            return Err(Error::MissingFunctionClass {
                required: "strongly extensional".into(),
            });
        }
        if !Arc::ptr_eq(f.dom(), carrier) {
            return Err(Error::CarrierMismatch);
        }
    }
    let top = Complemented::one_x(carrier);
    let bot = Complemented::zero_x(carrier);
    let mut gens: Vec<Complemented> = vec![top.clone(), bot.clone()];
    let mut keys: BTreeSet<CsKey> = gens.iter().map(|g| g.key()).collect();
    for (_, gen, f) in targets {
        for h in gen.topology.opens() {
            let inv = inverse_image(f, h)?;
            if keys.insert(inv.key()) {
                gens.push(inv);
            }
        }
    }
    // close under pairwise intersections (= all finite intersections)
    loop {
        let mut added = Vec::new();
        for g in &gens {
            for h in &gens {
                let meet = g.intersection(h)?;
                if !keys.contains(&meet.key()) {
                    added.push(meet);
                }
            }
        }
        if added.is_empty() {
            break;
        }
        for m in added {
            if keys.insert(m.key()) {
                gens.push(m);
            }
        }
    }
    let top_idx = gens.iter().position(|g| g.key() == top.key()).expect("pole present");
    let beta_x = vec![top_idx; carrier.len()];
    let member_snapshot = gens.clone();
    let base = base_with_rule(carrier, &gens, &beta_x, |i, j, _x| {
        let meet = member_snapshot[i]
            .intersection(&member_snapshot[j])
            .expect("same carrier");
        member_snapshot.iter().position(|m| m.key() == meet.key())
    })?;
    let gen = generate_topology(&base)?;
    let mut maps = Vec::new();
    for (dst_base, dst_gen, f) in targets {
        // Ω(C) := f⁻¹(C), as a member-index table
        let mut table = BTreeMap::new();
        for (c, member) in dst_base.members().iter().enumerate() {
            let inv = inverse_image(f, member)?;
            let idx = base
                .member_index(&inv)
                .ok_or_else(|| Error::Model("inverse image missing from the weak base".into()))?;
            table.insert(c, idx);
        }
        maps.push(CsbMap::from_uniform(f.clone(), dst_gen, table)?);
    }
    Ok((base, gen, maps))
}
