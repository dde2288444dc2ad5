//! Complemented subsets: pairs of extensional subsets with a certified
//! disjointness witness, the first-algebra operations (∪, ∩, −), points and
//! canonical points, elementhood and images.

use std::sync::Arc;

use crate::carrier::{all_subsets, Carrier, ExtSubset, FunctionTable, Mask};
use crate::Error;

/// A pair `(A¹, A⁰)` with every element of `A¹` positively apart from every
/// element of `A⁰`. Both parts are saturated, so cs-equality coincides with
/// mask equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complemented {
    one: ExtSubset,
    zero: ExtSubset,
}

/// Canonical dedup key: the two saturated masks.
pub type CsKey = (Mask, Mask);

impl Complemented {
    /// Certifies disjointness; on failure the error carries a witnessing
    /// non-apart pair.
    pub fn new(one: ExtSubset, zero: ExtSubset) -> Result<Complemented, Error> {
        if !Arc::ptr_eq(one.carrier(), zero.carrier()) {
            return Err(Error::CarrierMismatch);
        }
        let c = one.carrier().clone();
        for a in one.members() {
            for b in zero.members() {
                if !c.apart(a, b) {
                    return Err(Error::NotDisjoint {
                        x: c.id(a).to_string(),
                        y: c.id(b).to_string(),
                    });
                }
            }
        }
        Ok(Complemented { one, zero })
    }

    /// `(X, ∅_X)`.
    pub fn one_x(carrier: &Arc<Carrier>) -> Complemented {
        Complemented::new(ExtSubset::full(carrier), ExtSubset::empty_subset(carrier))
            .expect("poles are disjoint")
    }

    /// `(∅_X, X)`.
    pub fn zero_x(carrier: &Arc<Carrier>) -> Complemented {
        Complemented::new(ExtSubset::empty_subset(carrier), ExtSubset::full(carrier))
            .expect("poles are disjoint")
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        self.one.carrier()
    }

    pub fn one(&self) -> &ExtSubset {
        &self.one
    }

    pub fn zero(&self) -> &ExtSubset {
        &self.zero
    }

    pub fn key(&self) -> CsKey {
        (self.one.mask(), self.zero.mask())
    }

    /// `dom(A) := A¹ ∪ A⁰`.
    pub fn dom(&self) -> ExtSubset {
        self.one.union(&self.zero).expect("same carrier")
    }

    pub fn is_total(&self) -> bool {
        self.dom().mask() == self.carrier().full_mask()
    }

    pub fn is_inhabited(&self) -> bool {
        !self.one.is_empty_set()
    }

    /// `−A := (A⁰, A¹)`.
    pub fn complement(&self) -> Complemented {
        Complemented {
            one: self.zero.clone(),
            zero: self.one.clone(),
        }
    }

    /// `A ∪ B := (A¹ ∪ B¹, A⁰ ∩ B⁰)`. Disjointness of the result is
    /// re-certified and must succeed.
    pub fn union(&self, other: &Complemented) -> Result<Complemented, Error> {
        let one = self.one.union(&other.one)?;
        let zero = self.zero.intersection(&other.zero)?;
        Ok(Complemented::new(one, zero).expect("union of certified pairs is certified"))
    }

    /// `A ∩ B := (A¹ ∩ B¹, A⁰ ∪ B⁰)`.
    pub fn intersection(&self, other: &Complemented) -> Result<Complemented, Error> {
        let one = self.one.intersection(&other.one)?;
        let zero = self.zero.union(&other.zero)?;
        Ok(Complemented::new(one, zero).expect("intersection of certified pairs is certified"))
    }

    /// `A − B := A ∩ (−B)`.
    pub fn difference(&self, other: &Complemented) -> Result<Complemented, Error> {
        self.intersection(&other.complement())
    }

    /// `A × C := (A¹ × C¹, (A⁰ × Y) ∪ (X × C⁰))` on the product carrier.
    pub fn product(
        &self,
        other: &Complemented,
        product_carrier: &Arc<Carrier>,
    ) -> Result<Complemented, Error> {
        let one = self.one.product(&other.one, product_carrier)?;
        let left = self
            .zero
            .product(&ExtSubset::full(other.carrier()), product_carrier)?;
        let right = ExtSubset::full(self.carrier()).product(&other.zero, product_carrier)?;
        let zero = left.union(&right)?;
        Complemented::new(one, zero)
    }

    /// `A ⊆ B :⇔ A¹ ⊆ B¹ & B⁰ ⊆ A⁰`.
    pub fn leq(&self, other: &Complemented) -> Result<bool, Error> {
        Ok(self.one.is_subset(&other.one)? && other.zero.is_subset(&self.zero)?)
    }

    pub fn cs_eq(&self, other: &Complemented) -> Result<bool, Error> {
        Ok(self.leq(other)? && other.leq(self)?)
    }
}

/// The four distinguished elements of Def "zeros/ones" plus `dom(A)`.
#[derive(Clone, Debug)]
pub struct ZerosOnes {
    pub zero_x: Complemented,
    pub one_x: Complemented,
    pub zero_a: Complemented,
    pub one_a: Complemented,
    pub dom: ExtSubset,
}

pub fn zeros_ones(a: &Complemented) -> ZerosOnes {
    let c = a.carrier();
    let dom = a.dom();
    let empty = ExtSubset::empty_subset(c);
    ZerosOnes {
        zero_x: Complemented::zero_x(c),
        one_x: Complemented::one_x(c),
        zero_a: Complemented::new(empty.clone(), dom.clone()).expect("dom is self-disjoint from empty"),
        one_a: Complemented::new(dom.clone(), empty).expect("dom is self-disjoint from empty"),
        dom,
    }
}

pub fn zero_of(a: &Complemented) -> Complemented {
    zeros_ones(a).zero_a
}

pub fn one_of(a: &Complemented) -> Complemented {
    zeros_ones(a).one_a
}

/// Family union `(⋃λ¹, ⋂λ⁰)` / intersection `(⋂λ¹, ⋃λ⁰)`. Empty families
/// are rejected.
pub fn family_union(family: &[Complemented]) -> Result<Complemented, Error> {
    let mut it = family.iter();
    let first = it.next().ok_or(Error::EmptyFamily)?;
    let mut acc = first.clone();
    for a in it {
        acc = acc.union(a)?;
    }
    Ok(acc)
}

pub fn family_intersection(family: &[Complemented]) -> Result<Complemented, Error> {
    let mut it = family.iter();
    let first = it.next().ok_or(Error::EmptyFamily)?;
    let mut acc = first.clone();
    for a in it {
        acc = acc.intersection(a)?;
    }
    Ok(acc)
}

/// The partial characteristic function `χ_A : dom(A) → 2`.
pub struct Characteristic<'a> {
    subset: &'a Complemented,
}

pub fn characteristic(a: &Complemented) -> Characteristic<'_> {
    Characteristic { subset: a }
}

impl Characteristic<'_> {
    pub fn eval(&self, x: usize) -> Result<bool, Error> {
        if self.subset.one().contains(x) {
            Ok(true)
        } else if self.subset.zero().contains(x) {
            Ok(false)
        } else {
            Err(Error::OutsideDomain {
                id: self.subset.carrier().id(x).to_string(),
            })
        }
    }
}

/// A complemented point `(x, P)`: the one-part is the equality class of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPoint {
    x: usize,
    co: ExtSubset,
}

impl CPoint {
    pub fn new(carrier: &Arc<Carrier>, x: usize, co: ExtSubset) -> Result<CPoint, Error> {
        let one = ExtSubset::saturated(carrier, [x]);
        Complemented::new(one, co.clone())?;
        Ok(CPoint { x, co })
    }

    /// The canonical point `(x, {x}^{≠_X})`.
    pub fn canonical(carrier: &Arc<Carrier>, x: usize) -> CPoint {
        let co = ExtSubset::saturated(carrier, [x]).neq_complement();
        CPoint::new(carrier, x, co).expect("canonical co-part is apart from x")
    }

    pub fn element(&self) -> usize {
        self.x
    }

    pub fn co_part(&self) -> &ExtSubset {
        &self.co
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        self.co.carrier()
    }

    pub fn as_complemented(&self) -> Complemented {
        let one = ExtSubset::saturated(self.carrier(), [self.x]);
        Complemented::new(one, self.co.clone()).expect("certified at construction")
    }

    /// A potential point of `A` satisfies `A⁰ ⊆ P`.
    pub fn is_potential_point_of(&self, a: &Complemented) -> Result<bool, Error> {
        a.zero().is_subset(&self.co)
    }
}

/// Elementhood per Def of complemented points:
/// `in ⇔ x ∈ A¹ ∧ A⁰ ⊆ P`, `not_in ⇔ x ∈ A⁰ ∧ A¹ ⊆ P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Elementhood {
    pub is_in: bool,
    pub not_in: bool,
}

pub fn elementhood(p: &CPoint, a: &Complemented) -> Result<Elementhood, Error> {
    if !Arc::ptr_eq(p.carrier(), a.carrier()) {
        return Err(Error::CarrierMismatch);
    }
    Ok(Elementhood {
        is_in: a.one().contains(p.element()) && a.zero().is_subset(p.co_part())?,
        not_in: a.zero().contains(p.element()) && a.one().is_subset(p.co_part())?,
    })
}

/// `A ≠ B` via a canonical-point witness: some `x` with
/// `(x ⋲ A ∧ x ⋲̸ B) ∨ (x ⋲ B ∧ x ⋲̸ A)`. For canonical points these reduce
/// to membership in the respective parts.
pub fn cs_inequality(a: &Complemented, b: &Complemented) -> Result<bool, Error> {
    if !Arc::ptr_eq(a.carrier(), b.carrier()) {
        return Err(Error::CarrierMismatch);
    }
    for x in 0..a.carrier().len() {
        if (a.one().contains(x) && b.zero().contains(x))
            || (b.one().contains(x) && a.zero().contains(x))
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `f⁻¹(B) := (f⁻¹(B¹), f⁻¹(B⁰))`; requires `f` strongly extensional.
pub fn inverse_image(f: &FunctionTable, b: &Complemented) -> Result<Complemented, Error> {
    if !f.classify().strongly_extensional {
        return Err(Error::MissingFunctionClass {
            required: "strongly extensional".into(),
        });
    }
    let one = f.inverse_image(b.one())?;
    let zero = f.inverse_image(b.zero())?;
    Ok(Complemented::new(one, zero).expect("inverse image of certified pair is certified"))
}

/// `f(A) := (f(A¹), f(A⁰))`; requires `f` a strong injection.
pub fn direct_image(f: &FunctionTable, a: &Complemented) -> Result<Complemented, Error> {
    if !f.classify().strong_injection {
        return Err(Error::MissingFunctionClass {
            required: "strong injection".into(),
        });
    }
    let one = f.direct_image(a.one())?;
    let zero = f.direct_image(a.zero())?;
    Ok(Complemented::new(one, zero).expect("direct image of certified pair is certified"))
}

/// All complemented subsets of the carrier: pairs of saturated subsets with
/// a valid disjointness certificate. On a discrete carrier this counts 3ⁿ.
pub fn enumerate_all(carrier: &Arc<Carrier>, cap: usize) -> Result<Vec<Complemented>, Error> {
    let subsets = all_subsets(carrier);
    let mut out = Vec::new();
    for one in &subsets {
        for zero in &subsets {
            if let Ok(cs) = Complemented::new(one.clone(), zero.clone()) {
                out.push(cs);
                if out.len() > cap {
                    return Err(Error::SizeCap {
                        what: "complemented-subset enumeration".into(),
                        cap,
                        got: out.len(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// All complemented points of the carrier (one-part a singleton class,
/// co-part any saturated subset apart from it).
pub fn enumerate_points(carrier: &Arc<Carrier>) -> Vec<CPoint> {
    let mut out = Vec::new();
    for x in carrier.class_reps() {
        let apart_from_x = ExtSubset::saturated(carrier, [x]).neq_complement();
        for co in all_subsets(carrier) {
            if co.is_subset(&apart_from_x).expect("same carrier") {
                out.push(CPoint::new(carrier, x, co).expect("co-part is apart from x"));
            }
        }
    }
    out
}

/// The points of `A`: `x ∈ A¹` with `A⁰ ⊆ P`.
pub fn points_of(a: &Complemented) -> Vec<CPoint> {
    enumerate_points(a.carrier())
        .into_iter()
        .filter(|p| {
            a.one().contains(p.element())
                && a.zero().is_subset(p.co_part()).expect("same carrier")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::Carrier;

    fn discrete2() -> Arc<Carrier> {
        Carrier::discrete(2)
    }

    fn cs(c: &Arc<Carrier>, one: &[usize], zero: &[usize]) -> Complemented {
        Complemented::new(
            ExtSubset::saturated(c, one.iter().copied()),
            ExtSubset::saturated(c, zero.iter().copied()),
        )
        .unwrap()
    }

    #[test]
    fn make_and_reject() {
        let c = discrete2();
        assert!(Complemented::new(
            ExtSubset::saturated(&c, [0]),
            ExtSubset::saturated(&c, [1]),
        )
        .is_ok());
        let err = Complemented::new(
            ExtSubset::saturated(&c, [0]),
            ExtSubset::saturated(&c, [0]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotDisjoint { .. }));
    }

    #[test]
    fn rejected_on_carrier_without_inequality() {
        // scan finds ¬(0 ≠ 1)
        let c = Carrier::free(2);
        let err = Complemented::new(
            ExtSubset::saturated(&c, [0]),
            ExtSubset::saturated(&c, [1]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotDisjoint { .. }));
    }

    #[test]
    fn union_and_meet_with_complement() {
        let c = discrete2();
        let a = cs(&c, &[0], &[1]);
        let b = cs(&c, &[1], &[0]);
        let u = a.union(&b).unwrap();
        assert_eq!(u.one().member_ids(), vec!["0", "1"]);
        assert!(u.zero().is_empty_set());
        // A ∩ (−A) = 0_A
        let meet = a.intersection(&a.complement()).unwrap();
        assert!(meet.cs_eq(&zero_of(&a)).unwrap());
        assert_eq!(zeros_ones(&a).dom.mask(), c.full_mask());
    }

    #[test]
    fn complement_is_involutive_over_enumeration() {
        let c = discrete2();
        let all = enumerate_all(&c, 100).unwrap();
        assert_eq!(all.len(), 9);
        for a in &all {
            assert!(a.complement().complement().cs_eq(a).unwrap());
        }
    }

    #[test]
    fn order_poles_and_duality() {
        let c = discrete2();
        let bot = Complemented::zero_x(&c);
        let top = Complemented::one_x(&c);
        for a in enumerate_all(&c, 100).unwrap() {
            assert!(bot.leq(&a).unwrap());
            assert!(a.leq(&top).unwrap());
            assert!(a.leq(&a).unwrap());
            for b in enumerate_all(&c, 100).unwrap() {
                assert_eq!(
                    a.leq(&b).unwrap(),
                    b.complement().leq(&a.complement()).unwrap()
                );
            }
        }
    }

    #[test]
    fn zero_of_complement_is_zero_of() {
        let c = discrete2();
        for a in enumerate_all(&c, 100).unwrap() {
            assert!(zero_of(&a.complement()).cs_eq(&zero_of(&a)).unwrap());
        }
    }

    #[test]
    fn total_iff_one_a_is_one_x() {
        let c = discrete2();
        let top = Complemented::one_x(&c);
        for a in enumerate_all(&c, 100).unwrap() {
            assert_eq!(a.is_total(), one_of(&a).cs_eq(&top).unwrap());
        }
    }

    #[test]
    fn characteristic_function() {
        let c = discrete2();
        let a = cs(&c, &[0], &[1]);
        let chi = characteristic(&a);
        assert!(chi.eval(0).unwrap());
        assert!(!chi.eval(1).unwrap());
        let empty = cs(&c, &[], &[]);
        assert!(matches!(
            characteristic(&empty).eval(0),
            Err(Error::OutsideDomain { .. })
        ));
        // well-definedness over the enumeration: never both 1 and 0
        for a in enumerate_all(&c, 100).unwrap() {
            assert!(a.one().intersection(a.zero()).unwrap().is_empty_set());
        }
    }

    #[test]
    fn elementhood_of_canonical_points() {
        let c = discrete2();
        let a = cs(&c, &[0], &[1]);
        let p0 = CPoint::canonical(&c, 0);
        let e = elementhood(&p0, &a).unwrap();
        assert!(e.is_in && !e.not_in);
        let e = elementhood(&p0, &cs(&c, &[], &[0])).unwrap();
        assert!(!e.is_in && e.not_in);
        // never both, over the full point set and enumeration
        for p in enumerate_points(&c) {
            for a in enumerate_all(&c, 100).unwrap() {
                let e = elementhood(&p, &a).unwrap();
                assert!(!(e.is_in && e.not_in));
            }
        }
    }

    #[test]
    fn cs_inequality_of_poles_and_canonical_points() {
        let c = discrete2();
        assert!(cs_inequality(&Complemented::zero_x(&c), &Complemented::one_x(&c)).unwrap());
        let a = cs(&c, &[0], &[1]);
        assert!(!cs_inequality(&a, &a).unwrap());
        let c3 = Carrier::discrete(3);
        for x in 0..3 {
            for y in 0..3 {
                let px = CPoint::canonical(&c3, x).as_complemented();
                let py = CPoint::canonical(&c3, y).as_complemented();
                assert_eq!(cs_inequality(&px, &py).unwrap(), c3.apart(x, y));
            }
        }
    }

    #[test]
    fn images() {
        let c = discrete2();
        let id = FunctionTable::identity(&c);
        let a = cs(&c, &[0], &[1]);
        assert!(inverse_image(&id, &a).unwrap().cs_eq(&a).unwrap());
        // f⁻¹(−B) = −f⁻¹(B), exhaustive on maps of discrete 2 and 3
        for n in [2usize, 3] {
            let cn = Carrier::discrete(n);
            for f in crate::carrier::all_functions(&cn, &cn) {
                if !f.classify().strongly_extensional {
                    continue;
                }
                for b in enumerate_all(&cn, 100).unwrap() {
                    let lhs = inverse_image(&f, &b.complement()).unwrap();
                    let rhs = inverse_image(&f, &b).unwrap().complement();
                    assert!(lhs.cs_eq(&rhs).unwrap());
                }
            }
        }
        // strong injection: f⁻¹(f(A)) = A
        let c3 = Carrier::discrete(3);
        for f in crate::carrier::all_functions(&c3, &c3) {
            let flags = f.classify();
            if !(flags.strongly_extensional && flags.strong_injection) {
                continue;
            }
            for a in enumerate_all(&c3, 100).unwrap() {
                let back = inverse_image(&f, &direct_image(&f, &a).unwrap()).unwrap();
                assert!(back.cs_eq(&a).unwrap());
            }
        }
    }

    #[test]
    fn image_capability_errors() {
        let c = discrete2();
        let konst = FunctionTable::validated(&c, &c, vec![0, 0]).unwrap();
        let a = cs(&c, &[0], &[1]);
        assert!(matches!(
            direct_image(&konst, &a),
            Err(Error::MissingFunctionClass { .. })
        ));
    }

    #[test]
    fn family_ops() {
        let c = discrete2();
        let a = cs(&c, &[0], &[1]);
        let b = cs(&c, &[1], &[0]);
        assert!(family_union(&[]).is_err());
        assert!(family_union(std::slice::from_ref(&a)).unwrap().cs_eq(&a).unwrap());
        assert!(family_union(&[a.clone(), b.clone()])
            .unwrap()
            .cs_eq(&a.union(&b).unwrap())
            .unwrap());
        // B ∈ F ⇒ B ⊆ ⋃F, exhaustive over families of size ≤ 3
        let all = enumerate_all(&c, 100).unwrap();
        for i in 0..all.len() {
            for j in 0..all.len() {
                for k in 0..all.len() {
                    let fam = vec![all[i].clone(), all[j].clone(), all[k].clone()];
                    let u = family_union(&fam).unwrap();
                    for m in &fam {
                        assert!(m.leq(&u).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn product_of_poles() {
        let cx = discrete2();
        let cy = discrete2();
        let p = Carrier::product(&cx, &cy).unwrap();
        let lhs = Complemented::one_x(&cx)
            .product(&Complemented::one_x(&cy), &p)
            .unwrap();
        assert!(lhs.cs_eq(&Complemented::one_x(&p)).unwrap());
        // the 0-poles multiply to the product 0-pole as well
        let lhs = Complemented::zero_x(&cx)
            .product(&Complemented::zero_x(&cy), &p)
            .unwrap();
        assert!(lhs.cs_eq(&Complemented::zero_x(&p)).unwrap());
    }

    #[test]
    fn distinguished_element_laws_exhaustive() {
        // the ten laws of the empty/coempty distinguished elements, over
        // the full enumeration of discrete carriers up to 3
        for n in 1..=3 {
            let c = Carrier::discrete(n);
            let bot = Complemented::zero_x(&c);
            let top = Complemented::one_x(&c);
            let eq = |a: &Complemented, b: &Complemented| a.cs_eq(b).unwrap();
            assert!(eq(&bot.complement(), &top));
            assert!(eq(&zero_of(&bot), &bot) && eq(&one_of(&top), &top));
            for a in enumerate_all(&c, 130).unwrap() {
                let (za, oa) = (zero_of(&a), one_of(&a));
                assert!(eq(&za.complement(), &oa));
                assert!(eq(&a.union(&a.complement()).unwrap(), &oa));
                assert!(eq(&a.intersection(&a.complement()).unwrap(), &za));
                assert!(eq(&bot.union(&a).unwrap(), &a));
                assert!(eq(&za.union(&a).unwrap(), &a));
                assert!(eq(&bot.intersection(&a).unwrap(), &bot));
                assert!(eq(&za.intersection(&a).unwrap(), &za));
                assert!(eq(&top.union(&a).unwrap(), &top));
                assert!(eq(&oa.union(&a).unwrap(), &oa));
                assert!(eq(&top.intersection(&a).unwrap(), &a));
                assert!(eq(&oa.intersection(&a).unwrap(), &a));
                assert!(eq(&zero_of(&a.complement()), &za));
                assert!(eq(&zero_of(&za), &za) && eq(&zero_of(&oa), &za));
            }
        }
    }

    #[test]
    fn product_distributivity_exhaustive() {
        // products of complemented subsets distribute over union,
        // intersection and difference, and meets of rectangles are
        // rectangles of meets, on the 2 × 2 product carrier
        let cx = discrete2();
        let cy = discrete2();
        let p = Carrier::product(&cx, &cy).unwrap();
        let xs = enumerate_all(&cx, 130).unwrap();
        let ys = enumerate_all(&cy, 130).unwrap();
        for a in &xs {
            for b in &ys {
                for c in &ys {
                    let lhs = a.product(&b.union(c).unwrap(), &p).unwrap();
                    let rhs = a
                        .product(b, &p)
                        .unwrap()
                        .union(&a.product(c, &p).unwrap())
                        .unwrap();
                    assert!(lhs.cs_eq(&rhs).unwrap());
                    let lhs = a.product(&b.intersection(c).unwrap(), &p).unwrap();
                    let rhs = a
                        .product(b, &p)
                        .unwrap()
                        .intersection(&a.product(c, &p).unwrap())
                        .unwrap();
                    assert!(lhs.cs_eq(&rhs).unwrap());
                    // the difference version holds as an inclusion, and as
                    // an equality exactly when A is total: the 0-parts
                    // differ by X×C¹ against A¹×C¹ otherwise
                    let lhs = a.product(&b.difference(c).unwrap(), &p).unwrap();
                    let rhs = a
                        .product(b, &p)
                        .unwrap()
                        .difference(&a.product(c, &p).unwrap())
                        .unwrap();
                    assert!(lhs.leq(&rhs).unwrap());
                    if a.is_total() {
                        assert!(lhs.cs_eq(&rhs).unwrap());
                    }
                }
            }
        }
        for a1 in xs.iter().take(5) {
            for b1 in ys.iter().take(5) {
                for a2 in xs.iter().take(5) {
                    for b2 in ys.iter().take(5) {
                        let lhs = a1
                            .product(b1, &p)
                            .unwrap()
                            .intersection(&a2.product(b2, &p).unwrap())
                            .unwrap();
                        let rhs = a1
                            .intersection(a2)
                            .unwrap()
                            .product(&b1.intersection(b2).unwrap(), &p)
                            .unwrap();
                        assert!(lhs.cs_eq(&rhs).unwrap());
                    }
                }
            }
        }
    }
}
