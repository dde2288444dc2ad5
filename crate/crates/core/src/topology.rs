//! cs-topological spaces over finite carriers: axiom validation,
//! closed/clopen structure, relative and quotient topologies, and
//! cs-continuity.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::carrier::{Carrier, ExtSubset, FunctionTable};
use crate::complemented::{
    enumerate_all, family_union, inverse_image, direct_image, Complemented, CsKey,
};
use crate::q::QRng;
use crate::swap::{check_swap_axioms, total_elements, SwapModel, SwapReport, TotalSubmodel};
use crate::Error;

/// A finite explicit family of complemented subsets (deduplicated up to
/// cs-equality) satisfying the three topology axioms.
#[derive(Clone, Debug)]
pub struct CsTopology {
    carrier: Arc<Carrier>,
    opens: Vec<Complemented>,
}

/// How subfamily-union closure (csTop₃) was established: exhaustively over
/// all subfamilies, or over a seeded sample when the family is too large.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyEvidence {
    pub subfamilies_checked: u64,
    pub sampled: bool,
    pub seed: u64,
}

pub const MAX_EXHAUSTIVE_SUBFAMILIES: usize = 16;

/// Validates csTop₁–₃ and returns the deduplicated topology together with
/// the closure evidence.
pub fn validate_topology(
    carrier: &Arc<Carrier>,
    family: &[Complemented],
    seed: u64,
    samples: u64,
) -> Result<(CsTopology, TopologyEvidence), Error> {
    let mut opens: Vec<Complemented> = Vec::new();
    let mut keys: BTreeSet<CsKey> = BTreeSet::new();
    for cs in family {
        if !Arc::ptr_eq(cs.carrier(), carrier) {
            return Err(Error::CarrierMismatch);
        }
        if keys.insert(cs.key()) {
            opens.push(cs.clone());
        }
    }
    let top = Complemented::one_x(carrier);
    let bot = Complemented::zero_x(carrier);
    if !keys.contains(&top.key()) {
        return Err(Error::TopologyAxiom {
            axiom: "csTop1".into(),
            witness: "(X, empty) missing".into(),
        });
    }
    if !keys.contains(&bot.key()) {
        return Err(Error::TopologyAxiom {
            axiom: "csTop1".into(),
            witness: "(empty, X) missing".into(),
        });
    }
    for g in &opens {
        for h in &opens {
            let meet = g.intersection(h)?;
            if !keys.contains(&meet.key()) {
                return Err(Error::TopologyAxiom {
                    axiom: "csTop2".into(),
                    witness: format!("{:?} ∩ {:?} not in the family", g.key(), h.key()),
                });
            }
        }
    }
    let k = opens.len();
    let evidence = if k <= MAX_EXHAUSTIVE_SUBFAMILIES {
        let mut checked = 0u64;
        for code in 1u64..(1 << k) {
            let fam: Vec<Complemented> = (0..k)
                .filter(|i| code & (1 << i) != 0)
                .map(|i| opens[i].clone())
                .collect();
            let u = family_union(&fam)?;
            checked += 1;
            if !keys.contains(&u.key()) {
                return Err(Error::TopologyAxiom {
                    axiom: "csTop3".into(),
                    witness: format!("union of subfamily {code:#b} not in the family"),
                });
            }
        }
        TopologyEvidence {
            subfamilies_checked: checked,
            sampled: false,
            seed,
        }
    } else {
        let mut rng = QRng::new(seed);
        for _ in 0..samples {
            let size = 1 + rng.usize(k);
            let fam: Vec<Complemented> = (0..size).map(|_| opens[rng.usize(k)].clone()).collect();
            let u = family_union(&fam)?;
            if !keys.contains(&u.key()) {
                return Err(Error::TopologyAxiom {
                    axiom: "csTop3".into(),
                    witness: "sampled subfamily union not in the family".into(),
                });
            }
        }
        TopologyEvidence {
            subfamilies_checked: samples,
            sampled: true,
            seed,
        }
    };
    Ok((CsTopology { carrier: carrier.clone(), opens }, evidence))
}

impl CsTopology {
    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn opens(&self) -> &[Complemented] {
        &self.opens
    }

    pub fn contains(&self, cs: &Complemented) -> bool {
        let key = cs.key();
        self.opens.iter().any(|g| g.key() == key)
    }

    /// The trivial topology `{(X,∅), (∅,X)}`.
    pub fn trivial(carrier: &Arc<Carrier>) -> CsTopology {
        CsTopology {
            carrier: carrier.clone(),
            opens: vec![Complemented::one_x(carrier), Complemented::zero_x(carrier)],
        }
    }

    /// The discrete topology: every complemented subset is open.
    pub fn discrete(carrier: &Arc<Carrier>, cap: usize) -> Result<CsTopology, Error> {
        Ok(CsTopology {
            carrier: carrier.clone(),
            opens: enumerate_all(carrier, cap)?,
        })
    }

    /// The Sierpinski topology on the 2-element discrete carrier.
    pub fn sierpinski(carrier: &Arc<Carrier>) -> Result<CsTopology, Error> {
        if carrier.len() != 2 {
            return Err(Error::Model("Sierpinski space needs 2 elements".into()));
        }
        let point = Complemented::new(
            ExtSubset::saturated(carrier, [0]),
            ExtSubset::saturated(carrier, [1]),
        )?;
        Ok(CsTopology {
            carrier: carrier.clone(),
            opens: vec![
                Complemented::one_x(carrier),
                Complemented::zero_x(carrier),
                point,
            ],
        })
    }
}

#[derive(Clone, Debug)]
pub struct ClopenReport {
    pub closed: Vec<Complemented>,
    pub clopen: Vec<Complemented>,
    pub swap: SwapReport,
    pub totals: TotalSubmodel,
}

/// `−𝒯` and the clopen family, with the swap-algebra suite run on the
/// clopens and the Boolean suite on their total elements.
pub fn closed_and_clopen(t: &CsTopology) -> Result<ClopenReport, Error> {
    let mut closed = Vec::new();
    let mut seen = BTreeSet::new();
    for g in &t.opens {
        let f = g.complement();
        if seen.insert(f.key()) {
            closed.push(f);
        }
    }
    let clopen: Vec<Complemented> = t
        .opens
        .iter()
        .filter(|g| closed.iter().any(|f| f.key() == g.key()))
        .cloned()
        .collect();
    let model = family_swap_model(&t.carrier, &clopen)?;
    let swap = check_swap_axioms(&model)?;
    let totals = total_elements(&model);
    Ok(ClopenReport {
        closed,
        clopen,
        swap,
        totals,
    })
}

/// A swap model whose elements are the given complemented subsets. The
/// family must be closed under ∪, ∩, −, 0_·, 1_· and contain both poles
/// (e.g. a field of complemented subsets).
pub fn family_swap_model(
    carrier: &Arc<Carrier>,
    family: &[Complemented],
) -> Result<SwapModel, Error> {
    let n = family.len();
    let find = |cs: &Complemented| -> Result<usize, Error> {
        family
            .iter()
            .position(|m| m.key() == cs.key())
            .ok_or_else(|| Error::Model("family is not closed under the swap operations".into()))
    };
    let mut join = vec![0; n * n];
    let mut meet = vec![0; n * n];
    let mut neq = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            join[a * n + b] = find(&family[a].union(&family[b])?)?;
            meet[a * n + b] = find(&family[a].intersection(&family[b])?)?;
            neq[a * n + b] = crate::complemented::cs_inequality(&family[a], &family[b])?;
        }
    }
    let neg = family
        .iter()
        .map(|cs| find(&cs.complement()))
        .collect::<Result<_, _>>()?;
    let zero_of = family
        .iter()
        .map(|cs| find(&crate::complemented::zero_of(cs)))
        .collect::<Result<_, _>>()?;
    let one_of = family
        .iter()
        .map(|cs| find(&crate::complemented::one_of(cs)))
        .collect::<Result<_, _>>()?;
    Ok(SwapModel {
        labels: family
            .iter()
            .map(|cs| format!("({:?},{:?})", cs.one().member_ids(), cs.zero().member_ids()))
            .collect(),
        eq_class: (0..n).collect(),
        neq,
        join,
        meet,
        neg,
        zero_of,
        one_of,
        zero: find(&Complemented::zero_x(carrier))?,
        one: find(&Complemented::one_x(carrier))?,
    })
}

/// The relative topology on the subset `A`, for `A := (A, ∅_X)`: members
/// `0_A ∪ (A ∩ G) = (A ∩ G¹, A ∩ G⁰)`, transported to the sub-carrier and
/// re-validated.
pub fn relative_topology(
    t: &CsTopology,
    a: &ExtSubset,
) -> Result<(Arc<Carrier>, CsTopology), Error> {
    if !Arc::ptr_eq(a.carrier(), &t.carrier) {
        return Err(Error::CarrierMismatch);
    }
    let (sub, members) = Carrier::restrict(&t.carrier, a.mask())?;
    let restrict = |s: &ExtSubset| -> ExtSubset {
        ExtSubset::saturated(
            &sub,
            members
                .iter()
                .enumerate()
                .filter(|(_, &x)| s.contains(x))
                .map(|(i, _)| i),
        )
    };
    let mut family = Vec::new();
    for g in &t.opens {
        let one = a.intersection(g.one())?;
        let zero = a.intersection(g.zero())?;
        family.push(Complemented::new(restrict(&one), restrict(&zero))?);
    }
    // Prop guarantees the axioms; re-validate and assert (sampled when the
    // family exceeds the exhaustive subfamily cap)
    let (rel, _) = validate_topology(&sub, &family, 0, 256)?;
    Ok((sub, rel))
}

/// The quotient topology on `Y` determined by a strongly extensional
/// `f : X → Y`: all complemented subsets of `Y` whose inverse image is open.
pub fn quotient_topology(
    t: &CsTopology,
    f: &FunctionTable,
    cap: usize,
) -> Result<CsTopology, Error> {
    if !Arc::ptr_eq(f.dom(), &t.carrier) {
        return Err(Error::CarrierMismatch);
    }
    if !f.classify().strongly_extensional {
        return Err(Error::MissingFunctionClass {
            required: "strongly extensional".into(),
        });
    }
    let mut family = Vec::new();
    for h in enumerate_all(f.cod(), cap)? {
        if t.contains(&inverse_image(f, &h)?) {
            family.push(h);
        }
    }
    let (quot, _) = validate_topology(f.cod(), &family, 0, 256)?;
    Ok(quot)
}

#[derive(Clone, Debug)]
pub struct CsContinuityReport {
    pub continuous: bool,
    /// Index into the codomain topology plus whether its inverse image is open.
    pub per_open: Vec<(usize, bool)>,
    /// cs-openness of the map (None when the direct image is unavailable,
    /// i.e. the map is not a strong injection).
    pub cs_open: Option<bool>,
    pub cs_closed: Option<bool>,
}

/// Membership check of every inverse image, per Def of cs-continuity; also
/// classifies cs-open and cs-closed maps when the direct image exists.
pub fn is_cs_continuous(
    f: &FunctionTable,
    t: &CsTopology,
    s: &CsTopology,
) -> Result<CsContinuityReport, Error> {
    if !Arc::ptr_eq(f.dom(), &t.carrier) || !Arc::ptr_eq(f.cod(), &s.carrier) {
        return Err(Error::CarrierMismatch);
    }
    if !f.classify().strongly_extensional {
        return Err(Error::MissingFunctionClass {
            required: "strongly extensional".into(),
        });
    }
    let mut per_open = Vec::new();
    let mut continuous = true;
    for (i, h) in s.opens.iter().enumerate() {
        let ok = t.contains(&inverse_image(f, h)?);
        continuous &= ok;
        per_open.push((i, ok));
    }
    let (cs_open, cs_closed) = if f.classify().strong_injection {
        let mut open_ok = true;
        for g in &t.opens {
            open_ok &= s.contains(&direct_image(f, g)?);
        }
        let mut closed_ok = true;
        for g in &t.opens {
            let image = direct_image(f, &g.complement())?;
            closed_ok &= s.opens.iter().any(|h| h.complement().key() == image.key());
        }
        (Some(open_ok), Some(closed_ok))
    } else {
        (None, None)
    };
    Ok(CsContinuityReport {
        continuous,
        per_open,
        cs_open,
        cs_closed,
    })
}

/// A homeomorphism is a pair of mutually inverse cs-continuous maps; it
/// induces a bijection between the two families of opens.
pub fn homeomorphism_check(
    f: &FunctionTable,
    g: &FunctionTable,
    t: &CsTopology,
    s: &CsTopology,
) -> Result<bool, Error> {
    let fg = FunctionTable::compose(f, g)?;
    let gf = FunctionTable::compose(g, f)?;
    if !fg.ext_eq(&FunctionTable::identity(f.cod()))?
        || !gf.ext_eq(&FunctionTable::identity(f.dom()))?
    {
        return Ok(false);
    }
    if !is_cs_continuous(f, t, s)?.continuous || !is_cs_continuous(g, s, t)?.continuous {
        return Ok(false);
    }
    // the inverse image under f maps S's opens onto T's opens bijectively
    let mut image_keys: BTreeSet<CsKey> = BTreeSet::new();
    for h in s.opens() {
        image_keys.insert(inverse_image(f, h)?.key());
    }
    let t_keys: BTreeSet<CsKey> = t.opens().iter().map(|g| g.key()).collect();
    Ok(image_keys == t_keys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_sierpinski_validate() {
        let c = Carrier::discrete(2);
        let triv = CsTopology::trivial(&c);
        let (t, ev) = validate_topology(&c, triv.opens(), 0, 0).unwrap();
        assert_eq!(t.opens().len(), 2);
        assert!(!ev.sampled);
        let si = CsTopology::sierpinski(&c).unwrap();
        let (t, _) = validate_topology(&c, si.opens(), 0, 0).unwrap();
        assert_eq!(t.opens().len(), 3);
    }

    #[test]
    fn missing_pole_fails_cstop1() {
        let c = Carrier::discrete(2);
        let fam = vec![Complemented::one_x(&c)];
        let err = validate_topology(&c, &fam, 0, 0).unwrap_err();
        assert!(matches!(err, Error::TopologyAxiom { ref axiom, .. } if axiom == "csTop1"));
    }

    #[test]
    fn discrete_topology_validates_up_to_subfamily_cap() {
        // 9 opens on discrete {0,1}: 2^9−1 subfamilies, still exhaustive
        let c = Carrier::discrete(2);
        let t = CsTopology::discrete(&c, 100).unwrap();
        let (t, ev) = validate_topology(&c, t.opens(), 0, 0).unwrap();
        assert_eq!(t.opens().len(), 9);
        assert_eq!(ev.subfamilies_checked, (1 << 9) - 1);
    }

    #[test]
    fn clopen_structure() {
        let c = Carrier::discrete(2);
        let si = CsTopology::sierpinski(&c).unwrap();
        let rep = closed_and_clopen(&si).unwrap();
        // −({0},{1}) = ({1},{0}) is not open, so clopen = the two poles
        assert_eq!(rep.clopen.len(), 2);
        assert!(rep.swap.all_axioms_pass());
        assert!(rep.swap.type_i.pass);
        assert!(rep.totals.boolean_laws_pass());

        let disc = CsTopology::discrete(&c, 100).unwrap();
        let rep = closed_and_clopen(&disc).unwrap();
        assert_eq!(rep.clopen.len(), 9);
        assert!(rep.swap.all_axioms_pass());
        assert!(rep.swap.type_i.pass);
        assert!(rep.totals.boolean_laws_pass());
    }

    #[test]
    fn relative_topology_of_full_subset_is_same() {
        let c = Carrier::discrete(2);
        let si = CsTopology::sierpinski(&c).unwrap();
        let (sub, rel) = relative_topology(&si, &ExtSubset::full(&c)).unwrap();
        assert_eq!(sub.len(), 2);
        assert_eq!(rel.opens().len(), si.opens().len());
        let keys: BTreeSet<CsKey> = rel.opens().iter().map(|g| g.key()).collect();
        let orig: BTreeSet<CsKey> = si.opens().iter().map(|g| g.key()).collect();
        assert_eq!(keys, orig);
    }

    #[test]
    fn relative_topology_of_singleton_in_sierpinski() {
        let c = Carrier::discrete(2);
        let si = CsTopology::sierpinski(&c).unwrap();
        let a = ExtSubset::saturated(&c, [0]);
        let (sub, rel) = relative_topology(&si, &a).unwrap();
        assert_eq!(sub.len(), 1);
        // members reduce to ({0} ∩ G¹, {0} ∩ G⁰)
        for g in rel.opens() {
            assert!(g.one().mask() <= 1 && g.zero().mask() <= 1);
        }
    }

    #[test]
    fn quotient_topologies() {
        let c = Carrier::discrete(2);
        let disc = CsTopology::discrete(&c, 100).unwrap();
        // identity: quotient equals the topology
        let id = FunctionTable::identity(&c);
        let q = quotient_topology(&disc, &id, 100).unwrap();
        assert_eq!(q.opens().len(), 9);
        // constant map to a singleton: full 3-element family over it
        let one = Carrier::discrete(1);
        let konst = FunctionTable::validated(&c, &one, vec![0, 0]).unwrap();
        let q = quotient_topology(&disc, &konst, 100).unwrap();
        assert_eq!(q.opens().len(), 3);
        // indicator into Sierpinski carrier: quotient contains ({0},{1})
        let s2 = Carrier::discrete(2);
        let ind = FunctionTable::validated(&c, &s2, vec![0, 1]).unwrap();
        let q = quotient_topology(&disc, &ind, 100).unwrap();
        let point = Complemented::new(
            ExtSubset::saturated(&s2, [0]),
            ExtSubset::saturated(&s2, [1]),
        )
        .unwrap();
        assert!(q.contains(&point));
    }

    #[test]
    fn continuity_checks() {
        let c = Carrier::discrete(2);
        let si = CsTopology::sierpinski(&c).unwrap();
        let disc = CsTopology::discrete(&c, 100).unwrap();
        let triv = CsTopology::trivial(&c);
        let id = FunctionTable::identity(&c);
        assert!(is_cs_continuous(&id, &si, &si).unwrap().continuous);
        // any strongly extensional map into the trivial topology is continuous
        for f in crate::carrier::all_functions(&c, &c) {
            if f.classify().strongly_extensional {
                assert!(is_cs_continuous(&f, &si, &triv).unwrap().continuous);
            }
        }
        // the indicator of {0} from the discrete space to Sierpinski
        let ind = FunctionTable::validated(&c, &c, vec![0, 1]).unwrap();
        assert!(is_cs_continuous(&ind, &disc, &si).unwrap().continuous);
    }

    #[test]
    fn homeomorphism_between_discrete_spaces() {
        let c = Carrier::discrete(2);
        let disc = CsTopology::discrete(&c, 100).unwrap();
        let swapf = FunctionTable::validated(&c, &c, vec![1, 0]).unwrap();
        assert!(homeomorphism_check(&swapf, &swapf, &disc, &disc).unwrap());
        let si = CsTopology::sierpinski(&c).unwrap();
        assert!(!homeomorphism_check(&swapf, &swapf, &si, &si).unwrap());
        // the swap bijection is cs-open and cs-closed on the discrete space
        let rep = is_cs_continuous(&swapf, &disc, &disc).unwrap();
        assert_eq!(rep.cs_open, Some(true));
        assert_eq!(rep.cs_closed, Some(true));
        // a non-strong-injection gets no image classification
        let konst = FunctionTable::validated(&c, &c, vec![0, 0]).unwrap();
        let rep = is_cs_continuous(&konst, &disc, &disc).unwrap();
        assert_eq!(rep.cs_open, None);
    }
}
