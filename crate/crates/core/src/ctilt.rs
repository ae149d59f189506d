//! The second tilt `C`: objects `[K₁ ⊆ K₂ ⊆ E ⊇ M]` with `K₂ ∩ M` free and
//! `E/(K₁ + M)` finite, strict morphisms, the functor `H = K₂/K₁` and its
//! quasi-inverse `Q′` built from free covers.

use alloc::format;

use crate::b::{BObject, Butterfly};
use crate::error::{Error, Result};
use crate::group::{FgGroup, GroupMap, Subgroup};
use crate::hom::{hom_group, solve_commuting};

/// An object `[K₁ ⊆ K₂ ⊆ E ⊇ M]` of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CObject {
    e: FgGroup,
    k1: Subgroup,
    k2: Subgroup,
    m: Subgroup,
}

/// Validates the two defining conditions; the error names the one that fails.
pub fn make_c_object(e: &FgGroup, k1: Subgroup, k2: Subgroup, m: Subgroup) -> Result<CObject> {
    for (name, s) in [("K1", &k1), ("K2", &k2), ("M", &m)] {
        if s.ambient() != e {
            return Err(Error::NotCObject(format!("{name} is not a subgroup of E")));
        }
    }
    if !k1.is_subgroup_of(&k2) {
        return Err(Error::NotCObject("K1 is not contained in K2".into()));
    }
    let meet = k2.intersect(&m);
    if !meet.as_group().is_free() {
        return Err(Error::NotCObject(format!("K2 ∩ M = {} is not free", meet.as_group())));
    }
    let (q, _) = k1.sum(&m).quotient();
    if !q.is_torsion() {
        return Err(Error::NotCObject(format!("E/(K1 + M) = {q} is not finite")));
    }
    Ok(CObject { e: e.clone(), k1, k2, m })
}

impl CObject {
    pub fn e(&self) -> &FgGroup {
        &self.e
    }

    pub fn k1(&self) -> &Subgroup {
        &self.k1
    }

    pub fn k2(&self) -> &Subgroup {
        &self.k2
    }

    pub fn m(&self) -> &Subgroup {
        &self.m
    }

    /// `[0 ⊆ 0 ⊆ 0 ⊇ 0]`.
    pub fn zero() -> CObject {
        let z = FgGroup::zero();
        let s = Subgroup::zero(&z);
        CObject { e: z, k1: s.clone(), k2: s.clone(), m: s }
    }
}

/// A strict morphism: a map of middles carrying each subgroup into its
/// counterpart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMap {
    src: CObject,
    dst: CObject,
    f: GroupMap,
}

impl CMap {
    pub fn new(src: &CObject, dst: &CObject, f: GroupMap) -> Result<CMap> {
        if f.src() != &src.e || f.dst() != &dst.e {
            return Err(Error::MismatchedEndpoints("map is not between the middles".into()));
        }
        for (name, s, t) in [("K1", &src.k1, &dst.k1), ("K2", &src.k2, &dst.k2), ("M", &src.m, &dst.m)] {
            if !f.image_of(s).is_subgroup_of(t) {
                return Err(Error::PreconditionViolated(format!("map does not respect {name}")));
            }
        }
        Ok(CMap { src: src.clone(), dst: dst.clone(), f })
    }

    pub fn identity(c: &CObject) -> CMap {
        CMap { src: c.clone(), dst: c.clone(), f: GroupMap::identity(&c.e) }
    }

    pub fn src(&self) -> &CObject {
        &self.src
    }

    pub fn dst(&self) -> &CObject {
        &self.dst
    }

    pub fn map(&self) -> &GroupMap {
        &self.f
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &CMap) -> CMap {
        CMap { src: inner.src.clone(), dst: self.dst.clone(), f: self.f.after(&inner.f) }
    }

    pub fn add(&self, other: &CMap) -> CMap {
        CMap { src: self.src.clone(), dst: self.dst.clone(), f: self.f.add(&other.f) }
    }

    /// Whether the map is in the class inverted by `H`.
    pub fn is_qis(&self) -> bool {
        h_map(self).is_iso()
    }
}

/// `H(c) = K₂/K₁`, presented on the canonical generators of `K₂`, with the
/// quotient map from `K₂`.
pub fn h_functor(c: &CObject) -> (FgGroup, GroupMap) {
    let k1_in_k2 = c.k2.pull_back(&c.k1).expect("K1 lies in K2");
    k1_in_k2.quotient()
}

/// `H(f): K₂/K₁ → K₂′/K₁′`.
pub fn h_map(f: &CMap) -> GroupMap {
    let (_, q_src) = h_functor(&f.src);
    let (_, q_dst) = h_functor(&f.dst);
    let on_k2 = f.f.restrict(&f.src.k2).corestrict(&f.dst.k2).expect("map respects K2");
    q_dst.after(&on_k2).descend(&q_src).expect("map respects K1")
}

/// `Q′(A) = [ker p ⊆ F ⊆ F ⊇ F]` with a witness isomorphism `H(Q′(A)) ≅ A`.
#[derive(Clone, Debug)]
pub struct QPrime {
    pub object: CObject,
    /// The free cover `p: F ↠ A` on the ambient generators of `A`.
    pub cover: GroupMap,
    pub witness: GroupMap,
}

pub fn qprime(a: &FgGroup) -> QPrime {
    let n = a.ambient_rank();
    let f = FgGroup::free(n);
    let p = GroupMap::new(f.clone(), a.clone(), crate::matrix::IntMatrix::identity(n)).expect("free cover");
    let whole = Subgroup::whole(&f);
    let object = CObject { e: f.clone(), k1: p.kernel(), k2: whole.clone(), m: whole };
    let (_, q) = h_functor(&object);
    let witness = p.restrict(&object.k2).descend(&q).expect("ker p is K1");
    QPrime { object, cover: p, witness }
}

/// `Q′(f)` for `f: A → A′`, a lift of `f ∘ p` along `p′`.
pub fn qprime_map(f: &GroupMap, src: &QPrime, dst: &QPrime) -> Result<CMap> {
    let target = f.after(&src.cover);
    let sol = solve_commuting(src.object.e(), dst.object.e(), &[], &[(dst.cover.clone(), target)])?;
    let lift = sol.particular.ok_or_else(|| Error::TransferFailure("no lift along the free cover".into()))?;
    CMap::new(&src.object, &dst.object, lift)
}

/// Whether `w′ ∘ H(Q′(f)) = f ∘ w` and `H` kills every map into `ker p′`,
/// so `H(Q′(f))` does not depend on the chosen lift.
pub fn qprime_natural(f: &GroupMap, src: &QPrime, dst: &QPrime) -> bool {
    let Ok(lift) = qprime_map(f, src, dst) else { return false };
    let hf = h_map(&lift);
    if dst.witness.after(&hf) != f.after(&src.witness) {
        return false;
    }
    let Ok(sol) = solve_commuting(src.object.e(), dst.object.e(), &[], &[(dst.cover.clone(), GroupMap::zero(src.object.e(), f.dst()))]) else {
        return false;
    };
    sol.homogeneous.generators().columns().iter().all(|c| {
        let g = sol.space.element(c);
        CMap::new(&src.object, &dst.object, g).map(|m| h_map(&m).is_zero()).unwrap_or(false)
    })
}

/// The tilting-case functor `Q(A) = [0 ⊆ A ⊆ T ⊇ 0]` for a supplied
/// monomorphism `i: A ↪ T` with `T` finite.
pub fn q_tilting(i: &GroupMap) -> Result<(CObject, GroupMap)> {
    if !i.is_mono() {
        return Err(Error::PreconditionViolated("supplied map is not a monomorphism".into()));
    }
    if !i.dst().is_torsion() {
        return Err(Error::PreconditionViolated(format!("target {} is not finite", i.dst())));
    }
    let t = i.dst().clone();
    let zero = Subgroup::zero(&t);
    let c = make_c_object(&t, zero.clone(), i.image(), zero)?;
    let (_, q) = h_functor(&c);
    let witness = i.corestrict(&c.k2).expect("image").then(&q).inverse().expect("H(Q(A)) is A");
    Ok((c, witness))
}

/// Whether some element of `Hom(A, T)` is injective, by enumerating the Hom
/// group. `None` when the Hom group is infinite or larger than `limit`.
pub fn has_mono_into(a: &FgGroup, t: &FgGroup, limit: usize) -> Option<bool> {
    let space = hom_group(a, t);
    let elems = space.group().enumerate(limit)?;
    Some(elems.iter().any(|c| space.element(c).is_mono()))
}

/// `[im κ ⊆ ker ρ ⊆ E ⊇ im ι]` for a butterfly with `κ` mono and `ρ` epi.
pub fn from_butterfly(p: &Butterfly) -> Result<CObject> {
    if !p.kappa().is_mono() {
        return Err(Error::PreconditionViolated("kappa is not a monomorphism".into()));
    }
    if !p.rho().is_epi() {
        return Err(Error::PreconditionViolated("rho is not an epimorphism".into()));
    }
    make_c_object(p.e(), p.kappa().image(), p.rho().kernel(), p.iota().image())
}

/// The butterfly `[K₁ → E/M] → [M → E/K₂]` with middle `E`; inverse to
/// [`from_butterfly`] up to the presentations of the wings.
pub fn to_butterfly(c: &CObject) -> Butterfly {
    let (e_m, sigma) = c.m.quotient();
    let (e_k2, rho) = c.k2.quotient();
    let kappa = c.k1.inclusion().clone();
    let iota = c.m.inclusion().clone();
    let x = BObject::new_unchecked(sigma.after(&kappa));
    let y = BObject::new_unchecked(rho.after(&iota));
    debug_assert!(x.x_0() == &e_m && y.x_0() == &e_k2);
    Butterfly::new(x, y, c.e.clone(), kappa, iota, sigma, rho).expect("C objects give butterflies")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;
    use num_bigint::BigInt;

    fn sub(e: &FgGroup, cols: &[&[i64]]) -> Subgroup {
        let n = e.ambient_rank();
        let cols: Vec<Vec<BigInt>> = cols.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Subgroup::new(e, &IntMatrix::from_columns(n, &cols))
    }

    #[test]
    fn validation_examples() {
        let z = FgGroup::free(1);
        let c = make_c_object(&z, sub(&z, &[]), sub(&z, &[]), sub(&z, &[&[1]])).unwrap();
        assert!(h_functor(&c).0.is_trivial());
        let bad = make_c_object(&z, sub(&z, &[]), sub(&z, &[&[1]]), sub(&z, &[]));
        assert!(matches!(bad, Err(Error::NotCObject(ref s)) if s.contains("E/(K1 + M)")));
        let c = make_c_object(&z, sub(&z, &[&[2]]), sub(&z, &[&[1]]), sub(&z, &[&[1]])).unwrap();
        assert_eq!(h_functor(&c).0, FgGroup::cyclic(2));
        let h = h_map(&CMap::identity(&c));
        assert!(h.is_iso() && h == GroupMap::identity(h.src()));
    }

    #[test]
    fn free_intersection_condition() {
        let z2 = FgGroup::cyclic(2);
        let bad = make_c_object(&z2, sub(&z2, &[]), sub(&z2, &[&[1]]), sub(&z2, &[&[1]]));
        assert!(matches!(bad, Err(Error::NotCObject(ref s)) if s.contains("K2 ∩ M")));
        let z = FgGroup::free(1);
        let bad = make_c_object(&z, sub(&z, &[&[1]]), sub(&z, &[&[2]]), sub(&z, &[&[1]]));
        assert!(matches!(bad, Err(Error::NotCObject(ref s)) if s.contains("K1 is not")));
    }

    #[test]
    fn qprime_examples() {
        let q = qprime(&FgGroup::cyclic(2));
        let z = FgGroup::free(1);
        assert_eq!(q.object.e(), &z);
        assert_eq!(q.object.k1(), &sub(&z, &[&[2]]));
        assert!(q.object.k2().is_whole() && q.object.m().is_whole());
        assert!(q.witness.is_iso() && q.witness.dst() == &FgGroup::cyclic(2));

        let q = qprime(&z);
        assert!(q.object.k1().is_zero() && q.object.k2().is_whole());
        assert!(q.witness.is_iso());

        let q = qprime(&FgGroup::zero());
        assert_eq!(q.object, CObject::zero());
    }

    #[test]
    fn qprime_is_natural() {
        let a = FgGroup::new(IntMatrix::from_rows(2, &[&[4, 0], &[0, 0]]));
        let b = FgGroup::from_invariants(0, &[BigInt::from(2), BigInt::from(6)]);
        let (qa, qb) = (qprime(&a), qprime(&b));
        for g in hom_group(&a, &b).generators() {
            assert!(qprime_natural(g, &qa, &qb));
        }
        let f = qprime_map(&GroupMap::identity(&a), &qa, &qa).unwrap();
        assert!(f.is_qis());
    }

    #[test]
    fn only_cotilting() {
        let z = FgGroup::free(1);
        for n in 1..6 {
            assert_eq!(has_mono_into(&z, &FgGroup::cyclic(n), 100), Some(false));
        }
        assert_eq!(has_mono_into(&FgGroup::cyclic(2), &FgGroup::cyclic(4), 100), Some(true));
        let i = GroupMap::new(FgGroup::cyclic(2), FgGroup::cyclic(4), IntMatrix::from_rows(1, &[&[2]])).unwrap();
        let (c, w) = q_tilting(&i).unwrap();
        assert!(w.is_iso());
        assert!(h_functor(&c).0.is_isomorphic(&FgGroup::cyclic(2)));
    }

    #[test]
    fn butterfly_round_trip() {
        let z = FgGroup::free(1);
        let c = make_c_object(&z, sub(&z, &[&[2]]), sub(&z, &[&[1]]), sub(&z, &[&[1]])).unwrap();
        let p = to_butterfly(&c);
        assert_eq!(from_butterfly(&p).unwrap(), c);
        let z2 = FgGroup::free(2);
        let c = make_c_object(&z2, sub(&z2, &[&[3, 0]]), sub(&z2, &[&[1, 0]]), sub(&z2, &[&[1, 1]])).unwrap();
        assert_eq!(from_butterfly(&to_butterfly(&c)).unwrap(), c);
    }
}
