//! The tilted heart `B`: two-term complexes `[X⁻¹ → X⁰]` with free
//! `H⁻¹` and finite `H⁰`, and butterflies between them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{FgGroup, GroupMap, Subgroup};
use crate::hom::solve_commuting;
use crate::matrix::IntMatrix;
use num_bigint::BigInt;

/// An object `[X⁻¹ →d X⁰]` of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BObject {
    d: GroupMap,
}

impl BObject {
    /// Validates `ker d ∈ ℱ` and `coker d ∈ 𝒯`.
    pub fn new(d: GroupMap) -> Result<BObject> {
        let h_m1 = d.kernel();
        if !h_m1.as_group().is_free() {
            return Err(Error::NotBObject(format!("H^-1 = {} is not free", h_m1.as_group())));
        }
        let (h0, _) = d.cokernel();
        if !h0.is_torsion() {
            return Err(Error::NotBObject(format!("H^0 = {} is not finite", h0)));
        }
        Ok(BObject { d })
    }

    pub(crate) fn new_unchecked(d: GroupMap) -> BObject {
        debug_assert!(BObject::new(d.clone()).is_ok(), "invalid internal object");
        BObject { d }
    }

    /// `[0 → 0]`.
    pub fn zero() -> BObject {
        let z = FgGroup::zero();
        BObject { d: GroupMap::zero(&z, &z) }
    }

    pub fn d(&self) -> &GroupMap {
        &self.d
    }

    pub fn x_m1(&self) -> &FgGroup {
        self.d.src()
    }

    pub fn x_0(&self) -> &FgGroup {
        self.d.dst()
    }

    /// `H⁻¹ = ker d` as a subgroup of `X⁻¹`.
    pub fn h_m1(&self) -> Subgroup {
        self.d.kernel()
    }

    /// `H⁰ = coker d` with its quotient map from `X⁰`.
    pub fn h_0(&self) -> (FgGroup, GroupMap) {
        self.d.cokernel()
    }

    /// Both cohomology groups vanish.
    pub fn is_zero_object(&self) -> bool {
        self.h_m1().is_zero() && self.h_0().0.is_trivial()
    }

    /// Membership in `𝒯′ = ℱ[1]`, i.e. `H⁰ = 0`.
    pub fn in_torsion_prime(&self) -> bool {
        self.h_0().0.is_trivial()
    }

    /// Membership in `ℱ′ = 𝒯`, i.e. `H⁻¹ = 0`.
    pub fn in_free_prime(&self) -> bool {
        self.h_m1().is_zero()
    }

    /// Both terms in invariant-factor form, with a strict isomorphism from
    /// the result to `self`. Free generators of the degree −1 term are
    /// signed so that the first nonzero entry of their image is positive.
    pub fn normal_form(&self) -> (BObject, StrictMorphism) {
        let (n1, _, from1) = self.x_m1().normal_form();
        let (_, to0, from0) = self.x_0().normal_form();
        let mut flip = crate::matrix::IntMatrix::identity(n1.ambient_rank());
        let d = to0.after(&self.d).after(&from1);
        for j in 0..n1.free_rank() {
            let col = d.lift().column(j);
            if col.iter().find(|x| !num_traits::Zero::is_zero(*x)).is_some_and(num_traits::Signed::is_negative) {
                flip[(j, j)] = (-1).into();
            }
        }
        let flip = GroupMap::new(n1.clone(), n1.clone(), flip).expect("sign change on free generators");
        let from1 = from1.after(&flip);
        let nf = BObject::new_unchecked(to0.after(&self.d).after(&from1));
        let iso = StrictMorphism { src: nf.clone(), dst: self.clone(), f_m1: from1, f_0: from0 };
        debug_assert!(StrictMorphism::new(iso.f_m1.clone(), iso.f_0.clone(), &iso.src, &iso.dst).is_ok());
        (nf, iso)
    }

    /// Syntactically `[0 → 0]`.
    pub fn is_empty(&self) -> bool {
        self.x_m1().ambient_rank() == 0 && self.x_0().ambient_rank() == 0
    }
}

/// A strict morphism: a commuting square of group maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictMorphism {
    pub src: BObject,
    pub dst: BObject,
    pub f_m1: GroupMap,
    pub f_0: GroupMap,
}

impl StrictMorphism {
    pub fn new(f_m1: GroupMap, f_0: GroupMap, src: &BObject, dst: &BObject) -> Result<StrictMorphism> {
        if f_m1.src() != src.x_m1() || f_m1.dst() != dst.x_m1() || f_0.src() != src.x_0() || f_0.dst() != dst.x_0() {
            return Err(Error::MismatchedEndpoints("strict morphism components".into()));
        }
        if dst.d().after(&f_m1) != f_0.after(src.d()) {
            return Err(Error::NonCommutingSquare);
        }
        Ok(StrictMorphism { src: src.clone(), dst: dst.clone(), f_m1, f_0 })
    }

    pub fn identity(x: &BObject) -> StrictMorphism {
        StrictMorphism {
            src: x.clone(),
            dst: x.clone(),
            f_m1: GroupMap::identity(x.x_m1()),
            f_0: GroupMap::identity(x.x_0()),
        }
    }

    pub fn zero(x: &BObject, y: &BObject) -> StrictMorphism {
        StrictMorphism {
            src: x.clone(),
            dst: y.clone(),
            f_m1: GroupMap::zero(x.x_m1(), y.x_m1()),
            f_0: GroupMap::zero(x.x_0(), y.x_0()),
        }
    }

    pub fn after(&self, inner: &StrictMorphism) -> StrictMorphism {
        StrictMorphism {
            src: inner.src.clone(),
            dst: self.dst.clone(),
            f_m1: self.f_m1.after(&inner.f_m1),
            f_0: self.f_0.after(&inner.f_0),
        }
    }

    pub fn add(&self, other: &StrictMorphism) -> StrictMorphism {
        StrictMorphism {
            src: self.src.clone(),
            dst: self.dst.clone(),
            f_m1: self.f_m1.add(&other.f_m1),
            f_0: self.f_0.add(&other.f_0),
        }
    }

    pub fn neg(&self) -> StrictMorphism {
        StrictMorphism { src: self.src.clone(), dst: self.dst.clone(), f_m1: self.f_m1.neg(), f_0: self.f_0.neg() }
    }

    pub fn butterfly(&self) -> Butterfly {
        let x = &self.src;
        let y = &self.dst;
        let sum = FgGroup::direct_sum(&[x.x_0().clone(), y.x_m1().clone()]);
        let kappa = sum.pair(&[x.d(), &self.f_m1.neg()]);
        let iota = sum.injections[1].clone();
        let sigma = sum.projections[0].clone();
        let rho = sum.copair(&[&self.f_0, y.d()]);
        Butterfly { src: x.clone(), dst: y.clone(), e: sum.group, kappa, iota, sigma, rho }
    }
}

/// Strict butterfly of the square `(f_m1, f_0)`, with middle `X⁰ ⊕ Y⁻¹`.
pub fn make_strict(f_m1: &GroupMap, f_0: &GroupMap, src: &BObject, dst: &BObject) -> Result<Butterfly> {
    Ok(StrictMorphism::new(f_m1.clone(), f_0.clone(), src, dst)?.butterfly())
}

/// A morphism of `B`: a butterfly diagram with middle group `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Butterfly {
    src: BObject,
    dst: BObject,
    e: FgGroup,
    kappa: GroupMap,
    iota: GroupMap,
    sigma: GroupMap,
    rho: GroupMap,
}

impl Butterfly {
    /// Validates the butterfly conditions.
    pub fn new(
        src: BObject,
        dst: BObject,
        e: FgGroup,
        kappa: GroupMap,
        iota: GroupMap,
        sigma: GroupMap,
        rho: GroupMap,
    ) -> Result<Butterfly> {
        let bad = |s: &str| Err(Error::NotButterfly(String::from(s)));
        if kappa.src() != src.x_m1() || kappa.dst() != &e {
            return bad("kappa endpoints");
        }
        if iota.src() != dst.x_m1() || iota.dst() != &e {
            return bad("iota endpoints");
        }
        if sigma.src() != &e || sigma.dst() != src.x_0() {
            return bad("sigma endpoints");
        }
        if rho.src() != &e || rho.dst() != dst.x_0() {
            return bad("rho endpoints");
        }
        if &sigma.after(&kappa) != src.d() {
            return bad("sigma kappa differs from the source differential");
        }
        if &rho.after(&iota) != dst.d() {
            return bad("rho iota differs from the target differential");
        }
        if !rho.after(&kappa).is_zero() {
            return bad("rho kappa is nonzero");
        }
        if !iota.is_mono() || !sigma.is_epi() || iota.image() != sigma.kernel() {
            return bad("the sequence through iota and sigma is not short exact");
        }
        Ok(Butterfly { src, dst, e, kappa, iota, sigma, rho })
    }

    pub fn src(&self) -> &BObject {
        &self.src
    }

    pub fn dst(&self) -> &BObject {
        &self.dst
    }

    pub fn e(&self) -> &FgGroup {
        &self.e
    }

    pub fn kappa(&self) -> &GroupMap {
        &self.kappa
    }

    pub fn iota(&self) -> &GroupMap {
        &self.iota
    }

    pub fn sigma(&self) -> &GroupMap {
        &self.sigma
    }

    pub fn rho(&self) -> &GroupMap {
        &self.rho
    }

    pub fn identity(x: &BObject) -> Butterfly {
        StrictMorphism::identity(x).butterfly()
    }

    pub fn zero(x: &BObject, y: &BObject) -> Butterfly {
        StrictMorphism::zero(x, y).butterfly()
    }

    /// `q ∘ self`.
    pub fn then(&self, q: &Butterfly) -> Result<Butterfly> {
        compose(self, q)
    }

    /// The same morphism with the middle group re-presented in
    /// invariant-factor form. Chained composites otherwise pile up generators.
    pub fn with_reduced_middle(&self) -> Butterfly {
        let (nf, to, from) = self.e.normal_form();
        Butterfly {
            src: self.src.clone(),
            dst: self.dst.clone(),
            e: nf,
            kappa: to.after(&self.kappa),
            iota: to.after(&self.iota),
            sigma: self.sigma.after(&from),
            rho: self.rho.after(&from),
        }
    }

    /// Swaps the roles of source and target; the inverse when `self` is an
    /// isomorphism.
    pub fn flip(&self) -> Butterfly {
        Butterfly {
            src: self.dst.clone(),
            dst: self.src.clone(),
            e: self.e.clone(),
            kappa: self.iota.clone(),
            iota: self.kappa.clone(),
            sigma: self.rho.clone(),
            rho: self.sigma.clone(),
        }
    }
}

/// Composite `q ∘ p` through the fibre product of the middles modulo the
/// diagonal copy of `Y⁻¹`.
pub fn compose(p: &Butterfly, q: &Butterfly) -> Result<Butterfly> {
    if p.dst != q.src {
        return Err(Error::NotComposable);
    }
    let sum = FgGroup::direct_sum(&[p.e.clone(), q.e.clone()]);
    let fibre = sum.copair(&[&p.rho, &q.sigma.neg()]).kernel();
    let incl = fibre.inclusion();
    let pb = fibre.as_group();
    let into_pb = |m: &GroupMap| m.corestrict(&fibre).expect("lands in the fibre product");
    let diag = into_pb(&sum.pair(&[&p.iota, &q.kappa]));
    let (g, quot) = diag.cokernel();
    let kappa = quot.after(&into_pb(&sum.pair(&[&p.kappa, &GroupMap::zero(p.src.x_m1(), &q.e)])));
    let iota = quot.after(&into_pb(&sum.pair(&[&GroupMap::zero(q.dst.x_m1(), &p.e), &q.iota])));
    let sigma_pb = p.sigma.after(&sum.projections[0]).after(incl);
    let rho_pb = q.rho.after(&sum.projections[1]).after(incl);
    debug_assert!(sigma_pb.src() == pb);
    let sigma = GroupMap::new(g.clone(), p.src.x_0().clone(), sigma_pb.lift().clone())?;
    let rho = GroupMap::new(g.clone(), q.dst.x_0().clone(), rho_pb.lift().clone())?;
    Ok(Butterfly { src: p.src.clone(), dst: q.dst.clone(), e: g, kappa, iota, sigma, rho })
}

/// Sum of parallel butterflies through the fibre product over `X⁰` modulo
/// the antidiagonal copy of `Y⁻¹`.
pub fn add(p: &Butterfly, p2: &Butterfly) -> Result<Butterfly> {
    if p.src != p2.src || p.dst != p2.dst {
        return Err(Error::MismatchedEndpoints("addition of butterflies".into()));
    }
    let sum = FgGroup::direct_sum(&[p.e.clone(), p2.e.clone()]);
    let fibre = sum.copair(&[&p.sigma, &p2.sigma.neg()]).kernel();
    let incl = fibre.inclusion();
    let into_pb = |m: &GroupMap| m.corestrict(&fibre).expect("lands in the fibre product");
    let anti = into_pb(&sum.pair(&[&p.iota, &p2.iota.neg()]));
    let (g, quot) = anti.cokernel();
    let kappa = quot.after(&into_pb(&sum.pair(&[&p.kappa, &p2.kappa])));
    let iota = quot.after(&into_pb(&sum.pair(&[&GroupMap::zero(p.dst.x_m1(), &p.e), &p2.iota])));
    let sigma_pb = p.sigma.after(&sum.projections[0]).after(incl);
    let rho_pb = p.rho.after(&sum.projections[0]).add(&p2.rho.after(&sum.projections[1])).after(incl);
    let sigma = GroupMap::new(g.clone(), p.src.x_0().clone(), sigma_pb.lift().clone())?;
    let rho = GroupMap::new(g.clone(), p.dst.x_0().clone(), rho_pb.lift().clone())?;
    Ok(Butterfly { src: p.src.clone(), dst: p.dst.clone(), e: g, kappa, iota, sigma, rho })
}

/// `(E, κ, −ι, σ, −ρ)`.
pub fn negate(p: &Butterfly) -> Butterfly {
    Butterfly { iota: p.iota.neg(), rho: p.rho.neg(), ..p.clone() }
}

/// `n · p` as an iterated sum; negative `n` uses the negation.
pub fn scalar_multiple(p: &Butterfly, n: i64) -> Butterfly {
    let base = if n < 0 { negate(p) } else { p.clone() };
    let mut acc = Butterfly::zero(&p.src, &p.dst);
    for _ in 0..n.unsigned_abs() {
        acc = add(&acc, &base).expect("parallel butterflies");
    }
    acc
}

/// The unique isomorphism of middles `φ: E → E′` commuting with all four
/// arrows, if the butterflies are equal.
pub fn butterfly_iso(p: &Butterfly, p2: &Butterfly) -> Result<Option<GroupMap>> {
    if p.src != p2.src || p.dst != p2.dst {
        return Err(Error::MismatchedEndpoints("comparison of butterflies".into()));
    }
    let sol = solve_commuting(
        &p.e,
        &p2.e,
        &[(p.kappa.clone(), p2.kappa.clone()), (p.iota.clone(), p2.iota.clone())],
        &[(p2.sigma.clone(), p.sigma.clone()), (p2.rho.clone(), p.rho.clone())],
    )?;
    if let Some(phi) = &sol.particular {
        assert!(phi.is_iso(), "a morphism of butterflies between extensions is an isomorphism");
    }
    Ok(sol.particular)
}

pub fn butterfly_equal(p: &Butterfly, p2: &Butterfly) -> Result<bool> {
    Ok(butterfly_iso(p, p2)?.is_some())
}

/// Whether `p` is the zero morphism.
pub fn is_zero_morphism(p: &Butterfly) -> bool {
    butterfly_equal(p, &Butterfly::zero(&p.src, &p.dst)).expect("same endpoints")
}

/// Cohomology of the cone `X⁻¹ →κ E →ρ Y⁰` and the subgroup `A`.
#[derive(Clone, Debug)]
pub struct ButterflyAnalysis {
    /// `ker κ` inside `X⁻¹`.
    pub h_m2: Subgroup,
    pub ker_rho: Subgroup,
    /// `ker ρ / im κ`, presented on the generators of `ker_rho`.
    pub h_m1: FgGroup,
    /// Quotient map `ker_rho.as_group() → h_m1`.
    pub q: GroupMap,
    pub t_part: Subgroup,
    /// `A = q⁻¹(torsion of h_m1)` inside `E`.
    pub a_sub: Subgroup,
    pub h_0: FgGroup,
    pub h_0_quotient: GroupMap,
}

pub fn analyze(p: &Butterfly) -> ButterflyAnalysis {
    let h_m2 = p.kappa.kernel();
    let ker_rho = p.rho.kernel();
    let im_kappa = ker_rho.pull_back(&p.kappa.image()).expect("ρκ = 0");
    let (h_m1, q) = im_kappa.quotient();
    let t_part = Subgroup::torsion(&h_m1);
    let a_sub = ker_rho.push_forward(&q.preimage(&t_part));
    let (h_0, h_0_quotient) = p.rho.cokernel();
    ButterflyAnalysis { h_m2, ker_rho, h_m1, q, t_part, a_sub, h_0, h_0_quotient }
}

/// `ker P = [X⁻¹ →κ A]` with its inclusion `(id, σ|_A)` into the source.
pub fn kernel_b(p: &Butterfly) -> (BObject, Butterfly) {
    let an = analyze(p);
    let kappa_a = p.kappa.corestrict(&an.a_sub).expect("im κ ⊆ A");
    let k = BObject::new_unchecked(kappa_a);
    let incl = StrictMorphism {
        src: k.clone(),
        dst: p.src.clone(),
        f_m1: GroupMap::identity(p.src.x_m1()),
        f_0: p.sigma.after(an.a_sub.inclusion()),
    };
    (k, incl.butterfly())
}

/// `coker P = [E/A →ρ Y⁰]` with its projection `(q ∘ ι, id)` from the target.
pub fn cokernel_b(p: &Butterfly) -> (BObject, Butterfly) {
    let an = analyze(p);
    let (ea, quot) = an.a_sub.quotient();
    let rho_bar = GroupMap::new(ea, p.dst.x_0().clone(), p.rho.lift().clone()).expect("A ⊆ ker ρ");
    let c = BObject::new_unchecked(rho_bar);
    let proj = StrictMorphism {
        src: p.dst.clone(),
        dst: c.clone(),
        f_m1: quot.after(&p.iota),
        f_0: GroupMap::identity(p.dst.x_0()),
    };
    (c, proj.butterfly())
}

/// `P = mono ∘ iso ∘ epi` through `coim P = [A → X⁰]` and `im P = [Y⁻¹ → E/A]`.
#[derive(Clone, Debug)]
pub struct ImageFactorization {
    pub coimage: BObject,
    pub image: BObject,
    pub epi: Butterfly,
    pub iso: Butterfly,
    pub mono: Butterfly,
}

pub fn image_factorization(p: &Butterfly) -> ImageFactorization {
    let an = analyze(p);
    let a = &an.a_sub;
    let coim = BObject::new_unchecked(p.sigma.after(a.inclusion()));
    let (ea, quot) = a.quotient();
    let im = BObject::new_unchecked(quot.after(&p.iota));
    let epi = StrictMorphism {
        src: p.src.clone(),
        dst: coim.clone(),
        f_m1: p.kappa.corestrict(a).expect("im κ ⊆ A"),
        f_0: GroupMap::identity(p.src.x_0()),
    }
    .butterfly();
    let mono = StrictMorphism {
        src: im.clone(),
        dst: p.dst.clone(),
        f_m1: GroupMap::identity(p.dst.x_m1()),
        f_0: GroupMap::new(ea, p.dst.x_0().clone(), p.rho.lift().clone()).expect("A ⊆ ker ρ"),
    }
    .butterfly();
    let iso = Butterfly {
        src: coim.clone(),
        dst: im.clone(),
        e: p.e.clone(),
        kappa: a.inclusion().clone(),
        iota: p.iota.clone(),
        sigma: p.sigma.clone(),
        rho: quot,
    };
    ImageFactorization { coimage: coim, image: im, epi, iso, mono }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub is_mono: bool,
    pub is_epi: bool,
    pub is_iso: bool,
    pub inverse: Option<Butterfly>,
}

pub fn classify_morphism(p: &Butterfly) -> Classification {
    let an = analyze(p);
    let kappa_mono = an.h_m2.is_zero();
    let rho_epi = an.h_0.is_trivial();
    let is_mono = kappa_mono && an.h_m1.is_free();
    let is_epi = rho_epi && an.h_m1.is_torsion();
    let is_iso = kappa_mono && rho_epi && an.h_m1.is_trivial();
    Classification { is_mono, is_epi, is_iso, inverse: is_iso.then(|| p.flip()) }
}

/// The inverse of an isomorphism.
pub fn invert(p: &Butterfly) -> Option<Butterfly> {
    classify_morphism(p).inverse
}

/// `0 → h₋₂ → H⁻¹X → H⁻¹Y → h₋₁ → H⁰X → H⁰Y → h₀ → 0`.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub groups: Vec<FgGroup>,
    pub maps: Vec<GroupMap>,
}

impl LongExactSequence {
    /// Position of the first group where exactness fails.
    pub fn first_failure(&self) -> Option<usize> {
        if !self.maps[0].is_mono() {
            return Some(0);
        }
        for i in 1..self.maps.len() {
            if self.maps[i - 1].image() != self.maps[i].kernel() {
                return Some(i);
            }
        }
        if !self.maps[self.maps.len() - 1].is_epi() {
            return Some(self.groups.len() - 1);
        }
        None
    }
}

pub fn long_exact_sequence(p: &Butterfly) -> Result<LongExactSequence> {
    let an = analyze(p);
    let x = &p.src;
    let y = &p.dst;
    let hx = x.h_m1();
    let hy = y.h_m1();
    let (h0x, qx) = x.h_0();
    let (h0y, _) = y.h_0();

    let m1 = an.h_m2.inclusion().corestrict(&hx).expect("ker κ ⊆ ker d");
    let through_iota = p.kappa.after(hx.inclusion()).factor_through_mono(&p.iota).expect("σκ = d vanishes on ker d");
    let m2 = through_iota.corestrict(&hy).expect("lands in ker d_Y");
    let m3 = an.q.after(&p.iota.after(hy.inclusion()).corestrict(&an.ker_rho).expect("ρι = d_Y"));
    let to_h0x = qx.after(&p.sigma).after(an.ker_rho.inclusion());
    let m4 = GroupMap::new(an.h_m1.clone(), h0x.clone(), to_h0x.lift().clone())?;
    // σ need not split; lifting generators one at a time is enough, since a
    // relation of X⁰ lifts into ι(Y⁻¹), which ρ carries into im d_Y.
    let lifts: Vec<Vec<BigInt>> = (0..x.x_0().ambient_rank())
        .map(|i| p.sigma.solve_element(&x.x_0().generator(i)).expect("σ is surjective"))
        .collect();
    let lifts = IntMatrix::from_columns(p.e.ambient_rank(), &lifts);
    let m5 = GroupMap::new(h0x.clone(), h0y.clone(), p.rho.lift().mul(&lifts))?;
    let m6 = GroupMap::new(h0y.clone(), an.h_0.clone(), IntMatrix::identity(y.x_0().ambient_rank()))?;

    let groups = vec![
        an.h_m2.as_group().clone(),
        hx.as_group().clone(),
        hy.as_group().clone(),
        an.h_m1.clone(),
        h0x,
        h0y,
        an.h_0.clone(),
    ];
    let les = LongExactSequence { groups, maps: vec![m1, m2, m3, m4, m5, m6] };
    match les.first_failure() {
        Some(i) => Err(Error::ExactnessFailure(i)),
        None => Ok(les),
    }
}

/// A strict representative of `p`, when the sequence `Y⁻¹ → E → X⁰` splits.
pub fn strictify(p: &Butterfly) -> Option<StrictMorphism> {
    let section = solve_commuting(p.src.x_0(), &p.e, &[], &[(p.sigma.clone(), GroupMap::identity(p.src.x_0()))])
        .ok()?
        .particular?;
    let f_0 = p.rho.after(&section);
    let diff = section.after(p.src.d()).sub(&p.kappa);
    let f_m1 = diff.factor_through_mono(&p.iota)?;
    Some(StrictMorphism { src: p.src.clone(), dst: p.dst.clone(), f_m1, f_0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imat;

    fn z() -> FgGroup {
        FgGroup::free(1)
    }

    fn times(src: &FgGroup, dst: &FgGroup, k: i64) -> GroupMap {
        GroupMap::new(src.clone(), dst.clone(), imat![1; [k]]).unwrap()
    }

    fn obj(k: i64) -> BObject {
        BObject::new(times(&z(), &z(), k)).unwrap()
    }

    fn f24() -> Butterfly {
        make_strict(&times(&z(), &z(), 1), &times(&z(), &z(), 2), &obj(2), &obj(4)).unwrap()
    }

    #[test]
    fn validate_examples() {
        let x = obj(2);
        assert!(x.h_m1().is_zero());
        assert!(x.h_0().0.is_isomorphic(&FgGroup::cyclic(2)));
        let e = BObject::new(GroupMap::zero(&FgGroup::zero(), &z())).unwrap_err();
        assert!(matches!(e, Error::NotBObject(_)));
        let y = BObject::new(GroupMap::zero(&z(), &FgGroup::cyclic(2))).unwrap();
        assert!(y.h_m1().as_group().is_isomorphic(&z()));
        assert!(y.h_0().0.is_isomorphic(&FgGroup::cyclic(2)));
        assert!(!y.in_torsion_prime() && !y.in_free_prime());
    }

    #[test]
    fn strict_identity_shape() {
        let x = obj(2);
        let id = Butterfly::identity(&x);
        assert_eq!(id.kappa().lift(), &imat![1; [2], [-1]]);
        assert_eq!(id.rho().lift(), &imat![2; [1, 2]]);
        let zero = Butterfly::zero(&x, &obj(4));
        assert_eq!(zero.kappa().lift(), &imat![1; [2], [0]]);
        assert_eq!(zero.rho().lift(), &imat![2; [0, 4]]);
        assert!(make_strict(&times(&z(), &z(), 1), &times(&z(), &z(), 1), &obj(2), &obj(4)).is_err());
    }

    #[test]
    fn f24_kernel_cokernel_classification() {
        let p = f24();
        let an = analyze(&p);
        assert!(an.h_m2.is_zero());
        assert!(an.h_m1.is_trivial());
        assert!(an.h_0.is_isomorphic(&FgGroup::cyclic(2)));
        assert_eq!(an.a_sub, p.kappa().image());
        let (k, _) = kernel_b(&p);
        assert!(k.is_zero_object());
        let (c, _) = cokernel_b(&p);
        assert!(c.h_m1().is_zero());
        assert!(c.h_0().0.is_isomorphic(&FgGroup::cyclic(2)));
        assert!(c.x_m1().is_isomorphic(&z()) && c.x_0().is_isomorphic(&z()));
        let (nf, iso) = c.normal_form();
        assert_eq!(nf, obj(2));
        assert!(classify_morphism(&iso.butterfly()).is_iso);
        let cl = classify_morphism(&p);
        assert!(cl.is_mono && !cl.is_epi && !cl.is_iso && cl.inverse.is_none());
    }

    #[test]
    fn long_exact_sequence_without_a_splitting() {
        // [0 → Z/2] → [Z →×2 Z] through E = Z, where Z →×2 Z ↠ Z/2 does not split
        let z2 = FgGroup::cyclic(2);
        let x = BObject::new(GroupMap::zero(&FgGroup::zero(), &z2)).unwrap();
        let p = Butterfly::new(
            x,
            obj(2),
            z(),
            GroupMap::zero(&FgGroup::zero(), &z()),
            times(&z(), &z(), 2),
            times(&z(), &z2, 1),
            times(&z(), &z(), 1),
        )
        .unwrap();
        assert!(strictify(&p).is_none());
        let les = long_exact_sequence(&p).unwrap();
        assert!(les.maps[4].is_iso());
        assert!(les.groups[6].is_trivial());
    }

    #[test]
    fn f24_long_exact_sequence() {
        let les = long_exact_sequence(&f24()).unwrap();
        let expect = [0, 0, 0, 0, 2, 4, 2];
        for (g, &n) in les.groups.iter().zip(&expect) {
            if n == 0 {
                assert!(g.is_trivial());
            } else {
                assert!(g.is_isomorphic(&FgGroup::cyclic(n)));
            }
        }
    }

    #[test]
    fn identity_laws_and_equality() {
        let p = f24();
        let left = compose(&Butterfly::identity(&obj(2)), &p).unwrap();
        let right = compose(&p, &Butterfly::identity(&obj(4))).unwrap();
        assert!(butterfly_equal(&left, &p).unwrap());
        assert!(butterfly_equal(&right, &p).unwrap());
        assert!(!butterfly_equal(&p, &Butterfly::zero(&obj(2), &obj(4))).unwrap());
        let x = obj(2);
        let one = make_strict(&times(&z(), &z(), 1), &times(&z(), &z(), 1), &x, &x).unwrap();
        let other = make_strict(&times(&z(), &z(), 0), &times(&z(), &z(), 0), &x, &x).unwrap();
        assert!(!butterfly_equal(&one, &other).unwrap());
        // (3,3) - (1,1) = (2,2) = (s d, d s) with s = 1, so they agree in B
        let three = make_strict(&times(&z(), &z(), 3), &times(&z(), &z(), 3), &x, &x).unwrap();
        assert!(butterfly_equal(&one, &three).unwrap());
    }

    #[test]
    fn addition_laws() {
        let x = obj(2);
        let p = Butterfly::identity(&x);
        assert!(butterfly_equal(&add(&p, &Butterfly::zero(&x, &x)).unwrap(), &p).unwrap());
        assert!(is_zero_morphism(&add(&p, &negate(&p)).unwrap()));
        assert!(butterfly_equal(&negate(&negate(&p)), &p).unwrap());
        let two = make_strict(&times(&z(), &z(), 2), &times(&z(), &z(), 2), &x, &x).unwrap();
        assert!(butterfly_equal(&scalar_multiple(&p, 2), &two).unwrap());
        // on [Z →2 Z] twice the identity is null-homotopic
        assert!(is_zero_morphism(&two));
    }

    #[test]
    fn image_factorization_recomposes() {
        let p = f24();
        let f = image_factorization(&p);
        let c = compose(&compose(&f.epi, &f.iso).unwrap(), &f.mono).unwrap();
        assert!(butterfly_equal(&c, &p).unwrap());
        assert!(classify_morphism(&f.iso).is_iso);
        assert!(f.iso.src() == &f.coimage);
        Butterfly::new(
            f.iso.src().clone(),
            f.iso.dst().clone(),
            f.iso.e().clone(),
            f.iso.kappa().clone(),
            f.iso.iota().clone(),
            f.iso.sigma().clone(),
            f.iso.rho().clone(),
        )
        .unwrap();
    }

    #[test]
    fn zero_morphism_analysis() {
        let x = obj(2);
        let y = obj(4);
        let an = analyze(&Butterfly::zero(&x, &y));
        assert!(an.h_m2.is_zero());
        assert!(an.h_0.is_isomorphic(&FgGroup::cyclic(4)));
        // H^-1 of the cone of zero: H^0(X) ⊕ H^-1(Y) = Z/2
        assert!(an.h_m1.is_isomorphic(&FgGroup::cyclic(2)));
        let (k, _) = kernel_b(&Butterfly::zero(&x, &y));
        assert!(k.h_0().0.is_isomorphic(&FgGroup::cyclic(2)) && k.h_m1().is_zero());
    }

    #[test]
    fn strictify_split_butterflies() {
        let p = f24();
        let s = strictify(&p).unwrap();
        assert!(butterfly_equal(&s.butterfly(), &p).unwrap());
    }
}
