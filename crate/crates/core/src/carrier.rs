//! Finite carriers `(X, =_X, ≠_X)` with validated equality/apartness
//! structure, extensional subsets and function tables.
//!
//! Equality is stored as a partition; subsets are kept saturated under the
//! equality classes, so extensionality is a constructor invariant. The
//! element cap is 64 and subsets are plain bitmasks.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::Error;

pub const MAX_ELEMENTS: usize = 64;

pub type Mask = u64;

/// The six relation properties of an inequality candidate. `inequality`
/// (no pair simultaneously equal and apart) holds on every constructed
/// carrier; the rest are recomputed eagerly at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IneqFlags {
    pub inequality: bool,
    pub extensional: bool,
    pub tight: bool,
    pub symmetric: bool,
    pub cotransitive: bool,
    pub discrete: bool,
}

#[derive(Debug)]
pub struct Carrier {
    ids: Vec<String>,
    class_of: Vec<usize>,
    apart: Vec<bool>,
    flags: IneqFlags,
}

impl Carrier {
    /// Validates an equality relation (given as pairs; the reflexive pairs
    /// are implicit) and an inequality relation (given as pairs) over the
    /// elements. Rejects non-equivalence equalities and any pair that is
    /// simultaneously equal and apart.
    pub fn validate(
        ids: Vec<String>,
        equal_pairs: &[(usize, usize)],
        apart_pairs: &[(usize, usize)],
    ) -> Result<Arc<Carrier>, Error> {
        let n = ids.len();
        if n > MAX_ELEMENTS {
            return Err(Error::SizeCap {
                what: "carrier".into(),
                cap: MAX_ELEMENTS,
                got: n,
            });
        }
        {
            let mut seen = BTreeSet::new();
            for id in &ids {
                if !seen.insert(id.clone()) {
                    return Err(Error::Model(format!("duplicate element id {id:?}")));
                }
            }
        }
        let mut eq = vec![false; n * n];
        for i in 0..n {
            eq[i * n + i] = true;
        }
        for &(a, b) in equal_pairs {
            if a >= n || b >= n {
                return Err(Error::Model("equality pair out of range".into()));
            }
            eq[a * n + b] = true;
        }
        // the given relation must itself be symmetric and transitive
        for a in 0..n {
            for b in 0..n {
                if eq[a * n + b] && !eq[b * n + a] {
                    return Err(Error::NotEquivalence {
                        reason: format!("missing symmetric pair ({}, {})", ids[b], ids[a]),
                    });
                }
                for c in 0..n {
                    if eq[a * n + b] && eq[b * n + c] && !eq[a * n + c] {
                        return Err(Error::NotEquivalence {
                            reason: format!(
                                "missing transitive pair ({}, {})",
                                ids[a], ids[c]
                            ),
                        });
                    }
                }
            }
        }
        let mut class_of = vec![usize::MAX; n];
        let mut next = 0;
        for i in 0..n {
            if class_of[i] == usize::MAX {
                for j in i..n {
                    if eq[i * n + j] {
                        class_of[j] = next;
                    }
                }
                next += 1;
            }
        }
        let mut apart = vec![false; n * n];
        for &(a, b) in apart_pairs {
            if a >= n || b >= n {
                return Err(Error::Model("inequality pair out of range".into()));
            }
            apart[a * n + b] = true;
        }
        // Ineq₁: no pair simultaneously equal and apart
        for a in 0..n {
            for b in 0..n {
                if eq[a * n + b] && apart[a * n + b] {
                    return Err(Error::Ineq1Violation {
                        x: ids[a].clone(),
                        y: ids[b].clone(),
                    });
                }
            }
        }
        let mut c = Carrier {
            ids,
            class_of,
            apart,
            flags: IneqFlags {
                inequality: true,
                extensional: false,
                tight: false,
                symmetric: false,
                cotransitive: false,
                discrete: false,
            },
        };
        c.flags = c.compute_flags();
        Ok(Arc::new(c))
    }

    /// The discrete carrier on `n` elements: trivial equality, all distinct
    /// pairs apart.
    pub fn discrete(n: usize) -> Arc<Carrier> {
        let ids: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut apart = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    apart.push((a, b));
                }
            }
        }
        Carrier::validate(ids, &[], &apart).expect("discrete carrier is valid")
    }

    /// `n` elements with trivial equality and no apart pairs at all.
    pub fn free(n: usize) -> Arc<Carrier> {
        let ids: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Carrier::validate(ids, &[], &[]).expect("free carrier is valid")
    }

    fn compute_flags(&self) -> IneqFlags {
        let n = self.len();
        let eq = |a: usize, b: usize| self.class_of[a] == self.class_of[b];
        let ap = |a: usize, b: usize| self.apart[a * n + b];
        let mut extensional = true;
        for x in 0..n {
            for x1 in 0..n {
                if !eq(x, x1) {
                    continue;
                }
                for y in 0..n {
                    for y1 in 0..n {
                        if eq(y, y1) && ap(x, y) && !ap(x1, y1) {
                            extensional = false;
                        }
                    }
                }
            }
        }
        let mut tight = true;
        let mut symmetric = true;
        let mut discrete = true;
        for a in 0..n {
            for b in 0..n {
                if !ap(a, b) && !eq(a, b) {
                    tight = false;
                }
                if ap(a, b) && !ap(b, a) {
                    symmetric = false;
                }
                if !eq(a, b) && !ap(a, b) {
                    discrete = false;
                }
            }
        }
        let mut cotransitive = true;
        for a in 0..n {
            for b in 0..n {
                if !ap(a, b) {
                    continue;
                }
                for z in 0..n {
                    if !ap(z, a) && !ap(z, b) {
                        cotransitive = false;
                    }
                }
            }
        }
        IneqFlags {
            inequality: true,
            extensional,
            tight,
            symmetric,
            cotransitive,
            discrete,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn flags(&self) -> IneqFlags {
        self.flags
    }

    pub fn equal(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn apart(&self, a: usize, b: usize) -> bool {
        self.apart[a * self.len() + b]
    }

    pub fn class_count(&self) -> usize {
        self.class_of.iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Bitmask of the equality class of `x`.
    pub fn class_mask(&self, x: usize) -> Mask {
        let mut m = 0;
        for i in 0..self.len() {
            if self.equal(i, x) {
                m |= 1 << i;
            }
        }
        m
    }

    /// Saturates a mask under the equality classes.
    pub fn saturate(&self, mask: Mask) -> Mask {
        let mut out = 0;
        for i in 0..self.len() {
            if mask & (1 << i) != 0 {
                out |= self.class_mask(i);
            }
        }
        out
    }

    pub fn full_mask(&self) -> Mask {
        if self.len() == 64 {
            !0
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// One representative per equality class, in element order.
    pub fn class_reps(&self) -> Vec<usize> {
        let mut reps = Vec::new();
        let mut seen = vec![false; self.class_count()];
        for i in 0..self.len() {
            if !seen[self.class_of[i]] {
                seen[self.class_of[i]] = true;
                reps.push(i);
            }
        }
        reps
    }

    /// The sub-carrier on the members of an extensional subset, with the
    /// inherited equality and inequality. Returns the carrier and the list
    /// of parent indices (sub index → parent index).
    pub fn restrict(parent: &Arc<Carrier>, subset_mask: Mask) -> Result<(Arc<Carrier>, Vec<usize>), Error> {
        let members: Vec<usize> = (0..parent.len())
            .filter(|i| subset_mask & (1 << i) != 0)
            .collect();
        let ids = members.iter().map(|&i| parent.id(i).to_string()).collect();
        let mut eq_pairs = Vec::new();
        let mut ap_pairs = Vec::new();
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                if parent.equal(x, y) {
                    eq_pairs.push((i, j));
                }
                if parent.apart(x, y) {
                    ap_pairs.push((i, j));
                }
            }
        }
        Ok((Carrier::validate(ids, &eq_pairs, &ap_pairs)?, members))
    }

    /// The product carrier with the componentwise equality and the canonical
    /// inequality `(x, y) ≠ (x', y') :⇔ x ≠ x' ∨ y ≠ y'`.
    pub fn product(a: &Arc<Carrier>, b: &Arc<Carrier>) -> Result<Arc<Carrier>, Error> {
        let (na, nb) = (a.len(), b.len());
        if na * nb > MAX_ELEMENTS {
            return Err(Error::SizeCap {
                what: "product carrier".into(),
                cap: MAX_ELEMENTS,
                got: na * nb,
            });
        }
        let mut ids = Vec::with_capacity(na * nb);
        for i in 0..na {
            for j in 0..nb {
                ids.push(format!("({},{})", a.id(i), b.id(j)));
            }
        }
        let idx = |i: usize, j: usize| i * nb + j;
        let mut eq_pairs = Vec::new();
        let mut ap_pairs = Vec::new();
        for i in 0..na {
            for j in 0..nb {
                for i2 in 0..na {
                    for j2 in 0..nb {
                        if a.equal(i, i2) && b.equal(j, j2) {
                            eq_pairs.push((idx(i, j), idx(i2, j2)));
                        }
                        if a.apart(i, i2) || b.apart(j, j2) {
                            ap_pairs.push((idx(i, j), idx(i2, j2)));
                        }
                    }
                }
            }
        }
        Carrier::validate(ids, &eq_pairs, &ap_pairs)
    }
}

/// An extensional subset: a bitmask closed under the carrier's equality
/// classes.
#[derive(Clone, Debug)]
pub struct ExtSubset {
    carrier: Arc<Carrier>,
    mask: Mask,
}

impl PartialEq for ExtSubset {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.carrier, &other.carrier) && self.mask == other.mask
    }
}
impl Eq for ExtSubset {}

impl ExtSubset {
    /// Builds the subset saturated under the equality classes.
    pub fn saturated(carrier: &Arc<Carrier>, members: impl IntoIterator<Item = usize>) -> ExtSubset {
        let mut mask = 0;
        for i in members {
            mask |= 1 << i;
        }
        ExtSubset {
            mask: carrier.saturate(mask),
            carrier: carrier.clone(),
        }
    }

    pub fn from_mask(carrier: &Arc<Carrier>, mask: Mask) -> ExtSubset {
        ExtSubset {
            mask: carrier.saturate(mask & carrier.full_mask()),
            carrier: carrier.clone(),
        }
    }

    /// Rejects masks not already closed under the equality classes.
    pub fn validated(carrier: &Arc<Carrier>, members: &[usize]) -> Result<ExtSubset, Error> {
        let mut mask: Mask = 0;
        for &i in members {
            mask |= 1 << i;
        }
        let sat = carrier.saturate(mask);
        if sat != mask {
            let off = sat & !mask;
            let witness = (0..carrier.len())
                .find(|i| off & (1 << i) != 0)
                .map(|i| carrier.id(i).to_string())
                .unwrap_or_default();
            return Err(Error::NotExtensional { witness });
        }
        Ok(ExtSubset {
            carrier: carrier.clone(),
            mask,
        })
    }

    /// The extensional empty subset `∅_X = {x | x ≠_X x}`. On a validated
    /// carrier Ineq₁ plus reflexivity make it literally empty; the scan stays.
    pub fn empty_subset(carrier: &Arc<Carrier>) -> ExtSubset {
        let members = (0..carrier.len()).filter(|&x| carrier.apart(x, x));
        ExtSubset::saturated(carrier, members)
    }

    pub fn full(carrier: &Arc<Carrier>) -> ExtSubset {
        ExtSubset {
            mask: carrier.full_mask(),
            carrier: carrier.clone(),
        }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn mask(&self) -> Mask {
        self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask & (1 << i) != 0
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.carrier.len()).filter(move |&i| self.contains(i))
    }

    pub fn member_ids(&self) -> Vec<String> {
        self.members().map(|i| self.carrier.id(i).to_string()).collect()
    }

    pub fn is_empty_set(&self) -> bool {
        self.mask == 0
    }

    pub fn is_subset(&self, other: &ExtSubset) -> Result<bool, Error> {
        self.same_carrier(other)?;
        Ok(self.mask & !other.mask == 0)
    }

    pub fn set_eq(&self, other: &ExtSubset) -> Result<bool, Error> {
        self.same_carrier(other)?;
        Ok(self.mask == other.mask)
    }

    fn same_carrier(&self, other: &ExtSubset) -> Result<(), Error> {
        if Arc::ptr_eq(&self.carrier, &other.carrier) {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    pub fn union(&self, other: &ExtSubset) -> Result<ExtSubset, Error> {
        self.same_carrier(other)?;
        Ok(ExtSubset {
            carrier: self.carrier.clone(),
            mask: self.mask | other.mask,
        })
    }

    pub fn intersection(&self, other: &ExtSubset) -> Result<ExtSubset, Error> {
        self.same_carrier(other)?;
        Ok(ExtSubset {
            carrier: self.carrier.clone(),
            mask: self.mask & other.mask,
        })
    }

    /// `A^{≠_X} = {x | ∀a∈A. x ≠_X a}`.
    pub fn neq_complement(&self) -> ExtSubset {
        let c = &self.carrier;
        let members = (0..c.len()).filter(|&x| self.members().all(|a| c.apart(x, a)));
        ExtSubset::saturated(c, members)
    }

    /// The weak complement `{x | ∀a∈A. ¬(x =_X a)}`, i.e. the classical
    /// evaluation of the intuitionistic `¬`. On saturated masks this is the
    /// bitwise complement.
    pub fn weak_complement(&self) -> ExtSubset {
        ExtSubset {
            carrier: self.carrier.clone(),
            mask: !self.mask & self.carrier.full_mask(),
        }
    }

    /// Classical set difference `A − B := A ∩ Bᶜ`.
    pub fn difference(&self, other: &ExtSubset) -> Result<ExtSubset, Error> {
        self.intersection(&other.weak_complement())
    }

    /// `A × C` on the product carrier (which must come from
    /// `Carrier::product` of the two operand carriers).
    pub fn product(
        &self,
        other: &ExtSubset,
        product_carrier: &Arc<Carrier>,
    ) -> Result<ExtSubset, Error> {
        let nb = other.carrier.len();
        if product_carrier.len() != self.carrier.len() * nb {
            return Err(Error::CarrierMismatch);
        }
        let members = self
            .members()
            .flat_map(|i| other.members().map(move |j| i * nb + j));
        Ok(ExtSubset::saturated(product_carrier, members))
    }
}

/// A total validated function table between carriers.
#[derive(Clone, Debug)]
pub struct FunctionTable {
    dom: Arc<Carrier>,
    cod: Arc<Carrier>,
    map: Vec<usize>,
}

/// Function-class flags per the pair-scan classification. `injection`
/// includes strong extensionality; `strong_injection` = injection + embedding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FunctionFlags {
    pub strongly_extensional: bool,
    pub injection: bool,
    pub strong_injection: bool,
    pub embedding: bool,
    pub surjection: bool,
}

impl FunctionTable {
    pub fn validated(
        dom: &Arc<Carrier>,
        cod: &Arc<Carrier>,
        map: Vec<usize>,
    ) -> Result<FunctionTable, Error> {
        if map.len() != dom.len() {
            return Err(Error::Model("function table has wrong arity".into()));
        }
        for &y in &map {
            if y >= cod.len() {
                return Err(Error::Model("function value out of range".into()));
            }
        }
        for a in 0..dom.len() {
            for b in 0..dom.len() {
                if dom.equal(a, b) && !cod.equal(map[a], map[b]) {
                    return Err(Error::NotAFunction {
                        x: dom.id(a).to_string(),
                        y: dom.id(b).to_string(),
                    });
                }
            }
        }
        Ok(FunctionTable {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        })
    }

    pub fn identity(carrier: &Arc<Carrier>) -> FunctionTable {
        FunctionTable {
            dom: carrier.clone(),
            cod: carrier.clone(),
            map: (0..carrier.len()).collect(),
        }
    }

    pub fn dom(&self) -> &Arc<Carrier> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Carrier> {
        &self.cod
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn compose(outer: &FunctionTable, inner: &FunctionTable) -> Result<FunctionTable, Error> {
        if !Arc::ptr_eq(&inner.cod, &outer.dom) {
            return Err(Error::CarrierMismatch);
        }
        Ok(FunctionTable {
            dom: inner.dom.clone(),
            cod: outer.cod.clone(),
            map: inner.map.iter().map(|&x| outer.map[x]).collect(),
        })
    }

    pub fn classify(&self) -> FunctionFlags {
        let (dn, d, c) = (self.dom.len(), &self.dom, &self.cod);
        let f = |x: usize| self.map[x];
        let mut strongly_extensional = true;
        let mut inj_raw = true;
        let mut embedding = true;
        for x in 0..dn {
            for y in 0..dn {
                if c.apart(f(x), f(y)) && !d.apart(x, y) {
                    strongly_extensional = false;
                }
                if d.apart(x, y) && !c.apart(f(x), f(y)) {
                    inj_raw = false;
                }
                if c.equal(f(x), f(y)) && !d.equal(x, y) {
                    embedding = false;
                }
            }
        }
        // injections are strongly extensional functions by definition
        let injection = strongly_extensional && inj_raw;
        let surjection = (0..c.len()).all(|y| (0..dn).any(|x| c.equal(f(x), y)));
        FunctionFlags {
            strongly_extensional,
            injection,
            strong_injection: injection && embedding,
            embedding,
            surjection,
        }
    }

    pub fn direct_image(&self, a: &ExtSubset) -> Result<ExtSubset, Error> {
        if !Arc::ptr_eq(a.carrier(), &self.dom) {
            return Err(Error::CarrierMismatch);
        }
        Ok(ExtSubset::saturated(
            &self.cod,
            a.members().map(|x| self.map[x]),
        ))
    }

    pub fn inverse_image(&self, c: &ExtSubset) -> Result<ExtSubset, Error> {
        if !Arc::ptr_eq(c.carrier(), &self.cod) {
            return Err(Error::CarrierMismatch);
        }
        Ok(ExtSubset::saturated(
            &self.dom,
            (0..self.dom.len()).filter(|&x| c.contains(self.map[x])),
        ))
    }

    /// Extensional equality of tables: `f =_{F(X,Y)} g :⇔ ∀x. f(x) =_Y g(x)`.
    pub fn ext_eq(&self, other: &FunctionTable) -> Result<bool, Error> {
        if !Arc::ptr_eq(&self.dom, &other.dom) || !Arc::ptr_eq(&self.cod, &other.cod) {
            return Err(Error::CarrierMismatch);
        }
        Ok((0..self.dom.len()).all(|x| self.cod.equal(self.map[x], other.map[x])))
    }

    /// `f ≠_{F(X,Y)} g :⇔ ∃x. f(x) ≠_Y g(x)`.
    pub fn ext_neq(&self, other: &FunctionTable) -> Result<bool, Error> {
        if !Arc::ptr_eq(&self.dom, &other.dom) || !Arc::ptr_eq(&self.cod, &other.cod) {
            return Err(Error::CarrierMismatch);
        }
        Ok((0..self.dom.len()).any(|x| self.cod.apart(self.map[x], other.map[x])))
    }
}

/// All functions `dom → cod` (as tables), in lexicographic order.
pub fn all_functions(dom: &Arc<Carrier>, cod: &Arc<Carrier>) -> Vec<FunctionTable> {
    let (n, m) = (dom.len(), cod.len());
    if m == 0 {
        return if n == 0 {
            vec![FunctionTable {
                dom: dom.clone(),
                cod: cod.clone(),
                map: vec![],
            }]
        } else {
            vec![]
        };
    }
    let mut out = Vec::new();
    let total = m.pow(n as u32);
    for code in 0..total {
        let mut rest = code;
        let mut map = Vec::with_capacity(n);
        for _ in 0..n {
            map.push(rest % m);
            rest /= m;
        }
        if let Ok(t) = FunctionTable::validated(dom, cod, map) {
            out.push(t);
        }
    }
    out
}

/// All saturated subsets of a carrier (one per set of equality classes).
pub fn all_subsets(carrier: &Arc<Carrier>) -> Vec<ExtSubset> {
    let reps = carrier.class_reps();
    let k = reps.len();
    let mut out = Vec::with_capacity(1 << k);
    for code in 0u64..(1 << k) {
        let members = reps
            .iter()
            .enumerate()
            .filter(|(i, _)| code & (1 << i) != 0)
            .map(|(_, &r)| r);
        out.push(ExtSubset::saturated(carrier, members));
    }
    out
}

/// Subset tightness taxonomy flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TightnessFlags {
    pub one_tight: bool,
    pub zero_tight: bool,
    pub neq_stable: bool,
    pub neg_stable: bool,
    pub left_cotight: bool,
    pub right_cotight: bool,
}

/// Classifies a subset by direct inclusion tests on the derived complements.
pub fn classify_tightness(a: &ExtSubset) -> TightnessFlags {
    let ac = a.weak_complement();
    let an = a.neq_complement();
    let ann = an.neq_complement();
    let anc = an.weak_complement();
    let acc = ac.weak_complement();
    let acn = ac.neq_complement();
    let sub = |x: &ExtSubset, y: &ExtSubset| x.is_subset(y).expect("same carrier");
    TightnessFlags {
        one_tight: sub(&ac, &an),
        zero_tight: sub(&anc, a),
        neq_stable: sub(&ann, a),
        neg_stable: sub(&acc, a),
        left_cotight: sub(a, &acn),
        right_cotight: sub(&acn, a),
    }
}

/// The inverse/adjoint relations of the function-pair propositions, plus the
/// conclusions the corresponding proposition guarantees when the hypothesis
/// holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairRelation {
    /// `f ∘ g = id_cod(f)`
    LeftInverse,
    /// `g ∘ f = id_dom(f)`
    RightInverse,
    /// both compositions are identities
    Inverse,
    /// `g(y) ≠_X x ⇔ y ≠_Y f(x)`
    IneqAdjoint,
}

#[derive(Clone, Debug)]
pub struct PairReport {
    pub holds: bool,
    /// (conclusion name, verified) — populated only when `holds`.
    pub conclusions: Vec<(String, bool)>,
}

pub fn check_inverse_adjoint(
    relation: PairRelation,
    f: &FunctionTable,
    g: &FunctionTable,
) -> Result<PairReport, Error> {
    if !Arc::ptr_eq(f.dom(), g.cod()) || !Arc::ptr_eq(f.cod(), g.dom()) {
        return Err(Error::CarrierMismatch);
    }
    let ff = f.classify();
    let gf = g.classify();
    let fg_is_id = FunctionTable::compose(f, g)?.ext_eq(&FunctionTable::identity(f.cod()))?;
    let gf_is_id = FunctionTable::compose(g, f)?.ext_eq(&FunctionTable::identity(f.dom()))?;
    let mut conclusions = Vec::new();
    let holds = match relation {
        PairRelation::LeftInverse => {
            let holds = fg_is_id;
            if holds {
                conclusions.push(("f surjection".into(), ff.surjection));
                conclusions.push(("g strong injection".into(), gf.strong_injection));
                if ff.injection {
                    conclusions.push(("g strongly extensional".into(), gf.strongly_extensional));
                }
                if gf.strongly_extensional && gf.surjection {
                    conclusions.push(("f injection".into(), ff.injection));
                }
            }
            holds
        }
        PairRelation::RightInverse => {
            let holds = gf_is_id;
            if holds {
                conclusions.push(("g surjection".into(), gf.surjection));
                if ff.surjection {
                    conclusions.push(("g embedding".into(), gf.embedding));
                }
                if gf.strongly_extensional {
                    conclusions.push(("f injection".into(), ff.injection));
                }
                if ff.surjection && ff.injection {
                    conclusions.push(("g strongly extensional".into(), gf.strongly_extensional));
                }
            }
            holds
        }
        PairRelation::Inverse => {
            let holds = fg_is_id && gf_is_id;
            if holds {
                conclusions.push(("f surjection".into(), ff.surjection));
                conclusions.push((
                    "g surjective strong injection".into(),
                    gf.surjection && gf.strong_injection,
                ));
                conclusions.push((
                    "f injection iff g strongly extensional".into(),
                    ff.injection == gf.strongly_extensional,
                ));
            }
            holds
        }
        PairRelation::IneqAdjoint => {
            let xc = f.dom();
            let yc = f.cod();
            let mut adj = true;
            for x in 0..xc.len() {
                for y in 0..yc.len() {
                    if xc.apart(g.apply(y), x) != yc.apart(y, f.apply(x)) {
                        adj = false;
                    }
                }
            }
            if adj {
                if ff.surjection && ff.injection {
                    conclusions.push(("g injection".into(), gf.injection));
                }
                if gf.surjection && gf.injection {
                    conclusions.push(("f injection".into(), ff.injection));
                }
                if ff.strongly_extensional && ff.surjection {
                    conclusions.push(("g strongly extensional".into(), gf.strongly_extensional));
                }
                if gf.strongly_extensional && gf.surjection {
                    conclusions.push(("f strongly extensional".into(), ff.strongly_extensional));
                }
            }
            adj
        }
    };
    Ok(PairReport { holds, conclusions })
}
