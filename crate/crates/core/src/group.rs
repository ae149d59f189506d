//! Finitely generated abelian groups, homomorphisms and subgroups.

use alloc::boxed::Box;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use once_cell::race::OnceBox;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::Dense;
use crate::matrix::{reduce_mod_small_lattice, IntMatrix};

/// A finitely generated abelian group `Z^n / im(R)` given by its relation
/// matrix `R`. Equality is equality of presentations.
#[derive(Clone)]
pub struct FgGroup(Arc<GroupData>);

struct GroupData {
    relations: IntMatrix,
    // Smith and echelon data are computed on first use: many groups built
    // along the way are only ever used as targets of linear systems.
    snf: OnceBox<SnfData>,
    ech: OnceBox<EchData>,
}

struct SnfData {
    u: IntMatrix,
    u_inv: IntMatrix,
    /// Order of each Smith coordinate: `0` for a free coordinate, `1` for a
    /// trivial one.
    orders: Vec<BigInt>,
    free_rank: usize,
    invariants: Vec<BigInt>,
}

struct EchData {
    lattice: IntMatrix,
    small_lattice: Option<Dense<i128>>,
    pivots: Vec<usize>,
}

impl PartialEq for FgGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.relations == other.0.relations
    }
}

impl Eq for FgGroup {}

impl FgGroup {
    /// The group presented by `relations`; the ambient rank is its row count.
    pub fn new(relations: IntMatrix) -> FgGroup {
        FgGroup(Arc::new(GroupData { relations, snf: OnceBox::new(), ech: OnceBox::new() }))
    }

    fn s(&self) -> &SnfData {
        self.0.snf.get_or_init(|| {
            let n = self.0.relations.rows();
            let snf = self.0.relations.snf();
            let diag = snf.diagonal();
            let orders: Vec<BigInt> = (0..n).map(|i| diag.get(i).cloned().unwrap_or_else(BigInt::zero)).collect();
            let free_rank = orders.iter().filter(|d| d.is_zero()).count();
            let invariants = orders.iter().filter(|d| **d > BigInt::one()).cloned().collect();
            Box::new(SnfData { u: snf.u, u_inv: snf.u_inv, orders, free_rank, invariants })
        })
    }

    fn e(&self) -> &EchData {
        self.0.ech.get_or_init(|| {
            let ech = self.0.relations.column_echelon(true);
            let lattice = ech.image_basis();
            let small_lattice = lattice.to_small();
            Box::new(EchData { lattice, small_lattice, pivots: ech.pivots })
        })
    }

    /// `Z^n` with no relations.
    pub fn free(n: usize) -> FgGroup {
        FgGroup::new(IntMatrix::zeros(n, 0))
    }

    pub fn zero() -> FgGroup {
        FgGroup::free(0)
    }

    /// `Z/d` on one generator; `d = 0` gives `Z`.
    pub fn cyclic(d: i64) -> FgGroup {
        if d == 0 {
            FgGroup::free(1)
        } else {
            FgGroup::new(crate::imat![1; [d]])
        }
    }

    /// `Z^r ⊕ Z/d_1 ⊕ ...` on `r + k` generators with diagonal relations.
    pub fn from_invariants(free_rank: usize, invariants: &[BigInt]) -> FgGroup {
        let n = free_rank + invariants.len();
        let mut r = IntMatrix::zeros(n, invariants.len());
        for (k, d) in invariants.iter().enumerate() {
            r[(free_rank + k, k)] = d.clone();
        }
        FgGroup::new(r)
    }

    pub fn ambient_rank(&self) -> usize {
        self.0.relations.rows()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.0.relations
    }

    pub fn free_rank(&self) -> usize {
        self.s().free_rank
    }

    /// Invariant factors `d_1 | d_2 | ...`, all at least 2.
    pub fn invariants(&self) -> &[BigInt] {
        &self.s().invariants
    }

    /// Membership in the torsion class (finite groups).
    pub fn is_torsion(&self) -> bool {
        self.s().free_rank == 0
    }

    /// Membership in the torsion-free class (free groups).
    pub fn is_free(&self) -> bool {
        self.s().invariants.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.is_torsion() && self.is_free()
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_torsion().then(|| self.s().invariants.iter().product())
    }

    /// Isomorphism test by canonical form.
    pub fn is_isomorphic(&self, other: &FgGroup) -> bool {
        self.s().free_rank == other.s().free_rank && self.s().invariants == other.s().invariants
    }

    /// Smith coordinate change: `u * x` gives Smith coordinates of `x`.
    pub fn smith_u(&self) -> &IntMatrix {
        &self.s().u
    }

    pub fn smith_u_inv(&self) -> &IntMatrix {
        &self.s().u_inv
    }

    pub fn smith_orders(&self) -> &[BigInt] {
        &self.s().orders
    }

    /// Canonical representative of the class of `x`.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ambient_rank(), "element has wrong length");
        let mut v = x.to_vec();
        reduce_mod_small_lattice(&self.e().lattice, self.e().small_lattice.as_ref(), &self.e().pivots, &mut v);
        v
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    pub fn elements_equal(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let d: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero_element(&d)
    }

    /// Reduces every column of `m` to its canonical representative.
    pub fn reduce_columns(&self, m: &IntMatrix) -> IntMatrix {
        assert_eq!(m.rows(), self.ambient_rank(), "matrix rows differ from ambient rank");
        if self.e().pivots.is_empty() {
            return m.clone();
        }
        let cols: Vec<Vec<BigInt>> = (0..m.cols()).map(|j| self.reduce(&m.column(j))).collect();
        IntMatrix::from_columns(m.rows(), &cols)
    }

    /// The `i`-th ambient generator.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.ambient_rank()];
        v[i] = BigInt::one();
        v
    }

    /// All elements of a finite group as canonical representatives, or
    /// `None` if the group is infinite or has more than `limit` elements.
    pub fn enumerate(&self, limit: usize) -> Option<Vec<Vec<BigInt>>> {
        let order = self.order()?;
        if order > BigInt::from(limit) {
            return None;
        }
        let n = self.ambient_rank();
        let mut out = vec![vec![BigInt::zero(); n]];
        for (i, d) in self.s().orders.iter().enumerate() {
            if *d <= BigInt::one() {
                continue;
            }
            let g: Vec<BigInt> = self.s().u_inv.column(i);
            let mut next = Vec::new();
            for base in &out {
                let mut cur = base.clone();
                let mut k = BigInt::zero();
                while k < *d {
                    next.push(self.reduce(&cur));
                    for (c, gi) in cur.iter_mut().zip(&g) {
                        *c += gi;
                    }
                    k += 1;
                }
            }
            out = next;
        }
        Some(out)
    }

    /// The invariant-factor presentation `Z^r ⊕ Z/d_1 ⊕ ...` with mutually
    /// inverse isomorphisms `self → nf` and `nf → self` through Smith
    /// coordinates.
    pub fn normal_form(&self) -> (FgGroup, GroupMap, GroupMap) {
        let orders = &self.s().orders;
        let keep: Vec<usize> = (0..orders.len())
            .filter(|&i| orders[i].is_zero())
            .chain((0..orders.len()).filter(|&i| orders[i] > BigInt::one()))
            .collect();
        let nf = FgGroup::from_invariants(self.s().free_rank, &self.s().invariants);
        let n = self.ambient_rank();
        let mut to = IntMatrix::zeros(keep.len(), n);
        let mut from = IntMatrix::zeros(n, keep.len());
        for (k, &i) in keep.iter().enumerate() {
            for j in 0..n {
                to[(k, j)] = self.s().u[(i, j)].clone();
                from[(j, k)] = self.s().u_inv[(j, i)].clone();
            }
        }
        let to = GroupMap::new(self.clone(), nf.clone(), to).expect("Smith coordinates respect relations");
        let from = GroupMap::new(nf.clone(), self.clone(), from).expect("Smith generators");
        (nf, to, from)
    }

    /// Direct sum with its injections and projections.
    pub fn direct_sum(parts: &[FgGroup]) -> DirectSum {
        let rels: Vec<&IntMatrix> = parts.iter().map(|g| g.relations()).collect();
        let group = FgGroup::new(IntMatrix::block_diag(&rels));
        DirectSum::assemble(group, parts)
    }

    /// `self ⊗ other`, generated by `e_i ⊗ f_k` at index `i·b + k`.
    pub fn tensor(&self, other: &FgGroup) -> FgGroup {
        let a = self.ambient_rank();
        let b = other.ambient_rank();
        let left = self.relations().kron(&IntMatrix::identity(b));
        let right = IntMatrix::identity(a).kron(other.relations());
        FgGroup::new(IntMatrix::hstack(a * b, &[&left, &right]))
    }
}

impl fmt::Debug for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgGroup({} | {:?})", self, self.0.relations)
    }
}

impl fmt::Display for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.s().free_rank == 1 {
            parts.push(alloc::string::String::from("Z"));
        } else if self.s().free_rank > 1 {
            parts.push(format!("Z^{}", self.s().free_rank));
        }
        for d in &self.s().invariants {
            parts.push(format!("Z/{}", d));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A direct sum `G_1 ⊕ ... ⊕ G_k` with structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgGroup,
    pub injections: Vec<GroupMap>,
    pub projections: Vec<GroupMap>,
    pub offsets: Vec<usize>,
}

impl DirectSum {
    fn assemble(group: FgGroup, parts: &[FgGroup]) -> DirectSum {
        let n = group.ambient_rank();
        let mut offsets = Vec::with_capacity(parts.len());
        let mut injections = Vec::with_capacity(parts.len());
        let mut projections = Vec::with_capacity(parts.len());
        let mut off = 0;
        for g in parts {
            let k = g.ambient_rank();
            let mut inj = IntMatrix::zeros(n, k);
            inj.set_block(off, 0, &IntMatrix::identity(k));
            injections.push(GroupMap::new_unchecked(g.clone(), group.clone(), inj.clone()));
            projections.push(GroupMap::new_unchecked(group.clone(), g.clone(), inj.transpose()));
            offsets.push(off);
            off += k;
        }
        DirectSum { group, injections, projections, offsets }
    }

    /// The map `G_1 ⊕ ... ⊕ G_k → H` restricting to `maps[i]` on `G_i`.
    pub fn copair(&self, maps: &[&GroupMap]) -> GroupMap {
        assert_eq!(maps.len(), self.injections.len());
        let dst = maps[0].dst().clone();
        let lifts: Vec<&IntMatrix> = maps.iter().map(|m| m.lift()).collect();
        GroupMap::new_unchecked(self.group.clone(), dst.clone(), IntMatrix::hstack(dst.ambient_rank(), &lifts))
    }

    /// The map `H → G_1 ⊕ ... ⊕ G_k` with components `maps[i]`.
    pub fn pair(&self, maps: &[&GroupMap]) -> GroupMap {
        assert_eq!(maps.len(), self.injections.len());
        let src = maps[0].src().clone();
        let lifts: Vec<&IntMatrix> = maps.iter().map(|m| m.lift()).collect();
        GroupMap::new_unchecked(src.clone(), self.group.clone(), IntMatrix::vstack(src.ambient_rank(), &lifts))
    }
}

/// A homomorphism given by an integer lift on ambient generators. Lifts are
/// stored reduced modulo the target relations, so equal maps compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupMap {
    src: FgGroup,
    dst: FgGroup,
    lift: IntMatrix,
}

impl GroupMap {
    /// Validated constructor.
    pub fn new(src: FgGroup, dst: FgGroup, lift: IntMatrix) -> Result<GroupMap> {
        if lift.rows() != dst.ambient_rank() || lift.cols() != src.ambient_rank() {
            return Err(Error::DimensionMismatch(format!(
                "lift is {}x{}, expected {}x{}",
                lift.rows(),
                lift.cols(),
                dst.ambient_rank(),
                src.ambient_rank()
            )));
        }
        let image = lift.mul(src.relations());
        if !dst.reduce_columns(&image).is_zero() {
            return Err(Error::IllDefined);
        }
        Ok(GroupMap::new_unchecked(src, dst, lift))
    }

    /// Constructor for lifts that are well defined by construction.
    pub(crate) fn new_unchecked(src: FgGroup, dst: FgGroup, lift: IntMatrix) -> GroupMap {
        debug_assert_eq!(lift.rows(), dst.ambient_rank());
        debug_assert_eq!(lift.cols(), src.ambient_rank());
        debug_assert!(dst.reduce_columns(&lift.mul(src.relations())).is_zero(), "ill-defined internal map");
        let lift = dst.reduce_columns(&lift);
        GroupMap { src, dst, lift }
    }

    pub fn identity(g: &FgGroup) -> GroupMap {
        GroupMap::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.ambient_rank()))
    }

    pub fn zero(src: &FgGroup, dst: &FgGroup) -> GroupMap {
        GroupMap { src: src.clone(), dst: dst.clone(), lift: IntMatrix::zeros(dst.ambient_rank(), src.ambient_rank()) }
    }

    pub fn src(&self) -> &FgGroup {
        &self.src
    }

    pub fn dst(&self) -> &FgGroup {
        &self.dst
    }

    pub fn lift(&self) -> &IntMatrix {
        &self.lift
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.dst.reduce(&self.lift.mul_vec(x))
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &GroupMap) -> GroupMap {
        assert!(inner.dst == self.src, "composition of maps with mismatched endpoints");
        GroupMap::new_unchecked(inner.src.clone(), self.dst.clone(), self.lift.mul(&inner.lift))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupMap) -> GroupMap {
        next.after(self)
    }

    pub fn add(&self, other: &GroupMap) -> GroupMap {
        assert!(self.src == other.src && self.dst == other.dst, "sum of maps with mismatched endpoints");
        GroupMap::new_unchecked(self.src.clone(), self.dst.clone(), self.lift.add(&other.lift))
    }

    pub fn sub(&self, other: &GroupMap) -> GroupMap {
        assert!(self.src == other.src && self.dst == other.dst, "difference of maps with mismatched endpoints");
        GroupMap::new_unchecked(self.src.clone(), self.dst.clone(), self.lift.sub(&other.lift))
    }

    pub fn neg(&self) -> GroupMap {
        GroupMap::new_unchecked(self.src.clone(), self.dst.clone(), self.lift.neg())
    }

    pub fn scale(&self, c: &BigInt) -> GroupMap {
        GroupMap::new_unchecked(self.src.clone(), self.dst.clone(), self.lift.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.lift.is_zero()
    }

    /// Same map with a different but equal-as-presentation endpoint check.
    pub fn same_endpoints(&self, other: &GroupMap) -> bool {
        self.src == other.src && self.dst == other.dst
    }

    pub fn kernel(&self) -> Subgroup {
        self.preimage(&Subgroup::zero(&self.dst))
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::new(&self.dst, &self.lift)
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, s: &Subgroup) -> Subgroup {
        assert!(s.ambient() == &self.src, "subgroup of the wrong group");
        Subgroup::new(&self.dst, &self.lift.mul(s.generators()))
    }

    /// Preimage of a subgroup of the target.
    pub fn preimage(&self, t: &Subgroup) -> Subgroup {
        assert!(t.ambient() == &self.dst, "subgroup of the wrong group");
        let n = self.src.ambient_rank();
        let m = self.dst.ambient_rank();
        let block = IntMatrix::hstack(m, &[&self.lift, t.generators(), self.dst.relations()]);
        let k = block.kernel_basis();
        Subgroup::new(&self.src, &k.select_rows(0..n))
    }

    /// Cokernel group with the quotient map (identity lift).
    pub fn cokernel(&self) -> (FgGroup, GroupMap) {
        let m = self.dst.ambient_rank();
        let rel = IntMatrix::hstack(m, &[self.dst.relations(), &self.lift]);
        let q = FgGroup::new(rel);
        let map = GroupMap::new_unchecked(self.dst.clone(), q.clone(), IntMatrix::identity(m));
        (q, map)
    }

    pub fn is_mono(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_epi(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// Some `x` with `self(x) = y`, if `y` is in the image.
    pub fn solve_element(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.src.ambient_rank();
        let m = self.dst.ambient_rank();
        let block = IntMatrix::hstack(m, &[&self.lift, self.dst.relations()]);
        let z = block.column_echelon(false).solve(y)?;
        Some(self.src.reduce(&z[..n]))
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GroupMap> {
        if !self.is_iso() {
            return None;
        }
        let m = self.dst.ambient_rank();
        let n = self.src.ambient_rank();
        let block = IntMatrix::hstack(m, &[&self.lift, self.dst.relations()]);
        let e = block.column_echelon(false);
        let cols: Vec<Vec<BigInt>> =
            (0..m).map(|i| e.solve(&self.dst.generator(i)).map(|z| z[..n].to_vec())).collect::<Option<_>>()?;
        Some(GroupMap::new_unchecked(self.dst.clone(), self.src.clone(), IntMatrix::from_columns(n, &cols)))
    }

    /// Factors `self` as `mono ∘ h`; requires `mono` injective with the same
    /// target and the image of `self` inside the image of `mono`.
    pub fn factor_through_mono(&self, mono: &GroupMap) -> Option<GroupMap> {
        assert!(mono.dst == self.dst, "factoring through a map with another target");
        let m = self.dst.ambient_rank();
        let k = mono.src.ambient_rank();
        let block = IntMatrix::hstack(m, &[&mono.lift, self.dst.relations()]);
        let e = block.column_echelon(false);
        let cols: Vec<Vec<BigInt>> = (0..self.src.ambient_rank())
            .map(|j| e.solve(&self.lift.column(j)).map(|z| z[..k].to_vec()))
            .collect::<Option<_>>()?;
        GroupMap::new(self.src.clone(), mono.src.clone(), IntMatrix::from_columns(k, &cols)).ok()
    }

    /// Factors `self` through a subgroup of its target.
    pub fn corestrict(&self, s: &Subgroup) -> Option<GroupMap> {
        self.factor_through_mono(s.inclusion())
    }

    /// `self ⊗ other` between tensor products of the endpoints.
    pub fn tensor(&self, other: &GroupMap) -> GroupMap {
        GroupMap::new_unchecked(
            self.src.tensor(&other.src),
            self.dst.tensor(&other.dst),
            self.lift.kron(&other.lift),
        )
    }

    /// Restriction to a subgroup of the source, as a map out of the
    /// subgroup's own presentation.
    pub fn restrict(&self, s: &Subgroup) -> GroupMap {
        self.after(s.inclusion())
    }

    /// The map `src / S → dst / T` induced by `self`, using identity lifts on
    /// the quotient presentations. Requires `self(S) ⊆ T`.
    pub fn induced_on_quotients(&self, s: &Subgroup, t: &Subgroup) -> Option<GroupMap> {
        let (qs, _) = s.quotient();
        let (qt, _) = t.quotient();
        GroupMap::new(qs, qt, self.lift.clone()).ok()
    }

    /// Descends `self` along an epimorphism `epi` with the same source:
    /// returns `h` with `h ∘ epi = self`.
    pub fn descend(&self, epi: &GroupMap) -> Option<GroupMap> {
        assert!(epi.src == self.src, "descending along a map with another source");
        let sol = crate::hom::solve_commuting(epi.dst(), self.dst(), &[(epi.clone(), self.clone())], &[]).ok()?;
        sol.particular
    }
}

impl fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupMap({} -> {}, {:?})", self.src, self.dst, self.lift)
    }
}

/// A subgroup of a presented group, stored through canonical generators.
#[derive(Clone)]
pub struct Subgroup(Arc<SubData>);

struct SubData {
    ambient: FgGroup,
    gens: IntMatrix,
    group: FgGroup,
    inclusion: GroupMap,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.ambient == other.0.ambient && self.0.gens == other.0.gens)
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// The subgroup generated by the columns of `gens`.
    pub fn new(ambient: &FgGroup, gens: &IntMatrix) -> Subgroup {
        let n = ambient.ambient_rank();
        assert_eq!(gens.rows(), n, "generator lifts have the wrong length");
        if gens.cols() == 0 {
            // same presentation as the general path: 0 × dim ker R
            let group = FgGroup::new(IntMatrix::zeros(0, ambient.relations().cols() - ambient.e().lattice.cols()));
            let gens = IntMatrix::zeros(n, 0);
            let inclusion = GroupMap { src: group.clone(), dst: ambient.clone(), lift: gens.clone() };
            return Subgroup(Arc::new(SubData { ambient: ambient.clone(), gens, group, inclusion }));
        }
        let all = IntMatrix::hstack(n, &[gens, ambient.relations()]);
        let basis = all.hermite_basis();
        let keep: Vec<Vec<BigInt>> =
            basis.columns().into_iter().filter(|c| !ambient.is_zero_element(c)).collect();
        let gens = IntMatrix::from_columns(n, &keep);
        let s = gens.cols();
        let rel_block = IntMatrix::hstack(n, &[&gens, ambient.relations()]);
        let rels = rel_block.kernel_basis().select_rows(0..s);
        let group = FgGroup::new(rels);
        let inclusion = GroupMap { src: group.clone(), dst: ambient.clone(), lift: gens.clone() };
        Subgroup(Arc::new(SubData { ambient: ambient.clone(), gens, group, inclusion }))
    }

    pub fn zero(ambient: &FgGroup) -> Subgroup {
        Subgroup::new(ambient, &IntMatrix::zeros(ambient.ambient_rank(), 0))
    }

    pub fn whole(ambient: &FgGroup) -> Subgroup {
        Subgroup::new(ambient, &IntMatrix::identity(ambient.ambient_rank()))
    }

    /// The torsion subgroup.
    pub fn torsion(ambient: &FgGroup) -> Subgroup {
        let cols: Vec<Vec<BigInt>> = ambient
            .smith_orders()
            .iter()
            .enumerate()
            .filter(|(_, d)| **d > BigInt::one())
            .map(|(i, _)| ambient.smith_u_inv().column(i))
            .collect();
        Subgroup::new(ambient, &IntMatrix::from_columns(ambient.ambient_rank(), &cols))
    }

    pub fn ambient(&self) -> &FgGroup {
        &self.0.ambient
    }

    /// Canonical generator lifts, one per column.
    pub fn generators(&self) -> &IntMatrix {
        &self.0.gens
    }

    /// The subgroup as a group in its own right, on its canonical generators.
    pub fn as_group(&self) -> &FgGroup {
        &self.0.group
    }

    pub fn inclusion(&self) -> &GroupMap {
        &self.0.inclusion
    }

    pub fn is_zero(&self) -> bool {
        self.0.gens.cols() == 0
    }

    pub fn is_whole(&self) -> bool {
        *self == Subgroup::whole(&self.0.ambient)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        let n = self.0.ambient.ambient_rank();
        let block = IntMatrix::hstack(n, &[&self.0.gens, self.0.ambient.relations()]);
        block.column_echelon(false).solve(x).is_some()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        assert!(self.0.ambient == other.0.ambient, "subgroups of different groups");
        self.sum(other) == *other
    }

    pub fn sum(&self, other: &Subgroup) -> Subgroup {
        assert!(self.0.ambient == other.0.ambient, "subgroups of different groups");
        let n = self.0.ambient.ambient_rank();
        Subgroup::new(&self.0.ambient, &IntMatrix::hstack(n, &[&self.0.gens, &other.0.gens]))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        assert!(self.0.ambient == other.0.ambient, "subgroups of different groups");
        let n = self.0.ambient.ambient_rank();
        let s = self.0.gens.cols();
        let block = IntMatrix::hstack(n, &[&self.0.gens, &other.0.gens.neg(), self.0.ambient.relations()]);
        let k = block.kernel_basis();
        Subgroup::new(&self.0.ambient, &self.0.gens.mul(&k.select_rows(0..s)))
    }

    /// Coordinates of `x` with respect to the canonical generators.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.0.ambient.ambient_rank();
        let s = self.0.gens.cols();
        let block = IntMatrix::hstack(n, &[&self.0.gens, self.0.ambient.relations()]);
        block.column_echelon(false).solve(x).map(|z| self.0.group.reduce(&z[..s]))
    }

    /// `ambient / self` on the ambient generators, with its quotient map.
    pub fn quotient(&self) -> (FgGroup, GroupMap) {
        self.0.inclusion.cokernel()
    }

    /// A subgroup of `self`-as-group, pushed into the ambient group.
    pub fn push_forward(&self, inner: &Subgroup) -> Subgroup {
        assert!(inner.ambient() == self.as_group(), "subgroup of the wrong group");
        self.0.inclusion.image_of(inner)
    }

    /// A subgroup of the ambient contained in `self`, as a subgroup of
    /// `self`-as-group.
    pub fn pull_back(&self, outer: &Subgroup) -> Option<Subgroup> {
        let k = self.0.gens.cols();
        let cols: Vec<Vec<BigInt>> =
            outer.generators().columns().iter().map(|c| self.coordinates(c)).collect::<Option<_>>()?;
        Some(Subgroup::new(self.as_group(), &IntMatrix::from_columns(k, &cols)))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({} in {}, {:?})", self.0.group, self.0.ambient, self.0.gens)
    }
}

/// The torsion sequence `0 → T → G → F → 0`.
#[derive(Clone, Debug)]
pub struct TorsionDecomposition {
    pub group: FgGroup,
    pub t_part: Subgroup,
    pub f_quotient: FgGroup,
    pub quotient: GroupMap,
}

pub fn torsion_decompose(g: &FgGroup) -> TorsionDecomposition {
    let t = Subgroup::torsion(g);
    let (f, q) = t.quotient();
    TorsionDecomposition { group: g.clone(), t_part: t, f_quotient: f, quotient: q }
}

/// Fibre product of `f: A → C` and `g: B → C` with its two projections.
pub fn pullback(f: &GroupMap, g: &GroupMap) -> Result<(FgGroup, GroupMap, GroupMap)> {
    if f.dst() != g.dst() {
        return Err(Error::MismatchedTarget);
    }
    let sum = FgGroup::direct_sum(&[f.src().clone(), g.src().clone()]);
    let diff = sum.copair(&[f, &g.neg()]);
    let k = diff.kernel();
    let p1 = sum.projections[0].after(k.inclusion());
    let p2 = sum.projections[1].after(k.inclusion());
    Ok((k.as_group().clone(), p1, p2))
}

/// Pushout of `f: C → A` and `g: C → B` with its two injections.
pub fn pushout(f: &GroupMap, g: &GroupMap) -> Result<(FgGroup, GroupMap, GroupMap)> {
    if f.src() != g.src() {
        return Err(Error::MismatchedSource);
    }
    let sum = FgGroup::direct_sum(&[f.dst().clone(), g.dst().clone()]);
    let diff = sum.pair(&[f, &g.neg()]);
    let (q, proj) = diff.cokernel();
    let i1 = proj.after(&sum.injections[0]);
    let i2 = proj.after(&sum.injections[1]);
    Ok((q, i1, i2))
}

/// Exactness of `A →f B →g C` at `B`.
pub fn is_exact_at(f: &GroupMap, g: &GroupMap) -> bool {
    f.dst() == g.src() && f.image() == g.kernel()
}

/// `gcd` with the convention `gcd(0, b) = b`.
pub(crate) fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imat;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| b(a)).collect()
    }

    #[test]
    fn canonical_forms() {
        let z = FgGroup::free(1);
        assert_eq!((z.free_rank(), z.invariants().len()), (1, 0));
        let z2 = FgGroup::cyclic(2);
        assert_eq!((z2.free_rank(), z2.invariants()), (0, &[b(2)][..]));
        let g = FgGroup::new(imat![2; [2, 0], [0, 0]]);
        assert_eq!((g.free_rank(), g.invariants()), (1, &[b(2)][..]));
        assert!(FgGroup::zero().is_trivial());
        assert_eq!(alloc::string::ToString::to_string(&g), "Z + Z/2");
    }

    #[test]
    fn make_map_examples() {
        let z = FgGroup::free(1);
        let z2 = FgGroup::cyclic(2);
        let z4 = FgGroup::cyclic(4);
        assert!(GroupMap::new(z.clone(), z2.clone(), imat![1; [1]]).is_ok());
        assert_eq!(GroupMap::new(z2.clone(), z.clone(), imat![1; [1]]), Err(Error::IllDefined));
        assert!(GroupMap::new(z4, z2, imat![1; [1]]).is_ok());
        assert!(matches!(GroupMap::new(z.clone(), z, imat![2; [1, 1]]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kernel_examples() {
        let z = FgGroup::free(1);
        assert!(GroupMap::new(z.clone(), z.clone(), imat![1; [2]]).unwrap().kernel().is_zero());
        let z4 = FgGroup::cyclic(4);
        let k = GroupMap::new(z4.clone(), z4.clone(), imat![1; [2]]).unwrap().kernel();
        assert!(k.as_group().is_isomorphic(&FgGroup::cyclic(2)));
        // enumeration oracle on Z/4: elements x with 2x = 0
        let elems = z4.enumerate(10).unwrap();
        let killed: Vec<_> = elems.iter().filter(|x| z4.is_zero_element(&[&x[0] * 2])).collect();
        assert_eq!(killed.len(), 2);
        for x in killed {
            assert!(k.contains(x));
        }
        let z2 = FgGroup::free(2);
        let p = GroupMap::new(z2.clone(), z.clone(), imat![2; [1, 0]]).unwrap();
        assert_eq!(p.kernel(), Subgroup::new(&z2, &imat![1; [0], [1]]));
    }

    #[test]
    fn cokernel_examples() {
        let z = FgGroup::free(1);
        let (c, _) = GroupMap::new(z.clone(), z.clone(), imat![1; [2]]).unwrap().cokernel();
        assert!(c.is_isomorphic(&FgGroup::cyclic(2)));
        let z6 = FgGroup::cyclic(6);
        assert!(GroupMap::identity(&z6).cokernel().0.is_trivial());
        let (c, q) = GroupMap::new(z.clone(), FgGroup::free(2), imat![1; [2], [-1]]).unwrap().cokernel();
        assert!(c.is_isomorphic(&z));
        assert!(q.is_epi());
    }

    #[test]
    fn pullback_pushout_examples() {
        let z = FgGroup::free(1);
        let two = GroupMap::new(z.clone(), z.clone(), imat![1; [2]]).unwrap();
        let three = GroupMap::new(z.clone(), z.clone(), imat![1; [3]]).unwrap();
        let (p, p1, p2) = pullback(&two, &three).unwrap();
        assert!(p.is_isomorphic(&z));
        // generated by (3, 2)
        let g = p.generator(0);
        let pair = (p1.apply(&g)[0].clone(), p2.apply(&g)[0].clone());
        assert!(pair == (b(3), b(2)) || pair == (b(-3), b(-2)));
        let (q, _, _) = pushout(&two, &two).unwrap();
        assert_eq!(q.free_rank(), 1);
        assert_eq!(q.invariants(), &[b(2)]);
        let zero = FgGroup::zero();
        let (s, _, _) = pullback(&GroupMap::zero(&z, &zero), &GroupMap::zero(&z, &zero)).unwrap();
        assert_eq!(s.free_rank(), 2);
        assert_eq!(pullback(&two, &GroupMap::zero(&z, &FgGroup::cyclic(2))).unwrap_err(), Error::MismatchedTarget);
    }

    #[test]
    fn torsion_decomposition() {
        let g = FgGroup::new(imat![2; [2, 0], [0, 0]]);
        let t = torsion_decompose(&g);
        assert!(t.t_part.as_group().is_isomorphic(&FgGroup::cyclic(2)));
        assert!(t.f_quotient.is_isomorphic(&FgGroup::free(1)));
        assert!(t.f_quotient.is_free());
        assert!(is_exact_at(t.t_part.inclusion(), &t.quotient));
        assert!(torsion_decompose(&FgGroup::cyclic(6)).f_quotient.is_trivial());
        assert!(torsion_decompose(&FgGroup::free(1)).t_part.is_zero());
    }

    #[test]
    fn subgroup_arithmetic() {
        let z = FgGroup::free(1);
        let s2 = Subgroup::new(&z, &imat![1; [2]]);
        let s3 = Subgroup::new(&z, &imat![1; [3]]);
        assert_eq!(s2.intersect(&s3), Subgroup::new(&z, &imat![1; [6]]));
        assert!(s2.sum(&s3).is_whole());
        assert!(Subgroup::new(&z, &imat![2; [4, 6]]) == s2);
        assert!(s2.contains(&v(&[-8])));
        assert!(!s2.contains(&v(&[3])));
    }

    #[test]
    fn inverse_of_iso() {
        let g = FgGroup::new(imat![2; [2, 0], [0, 0]]);
        let f = GroupMap::new(g.clone(), g.clone(), imat![2; [1, 1], [0, 1]]).unwrap();
        let inv = f.inverse().unwrap();
        assert_eq!(inv.after(&f), GroupMap::identity(&g));
        assert_eq!(f.after(&inv), GroupMap::identity(&g));
    }

    #[test]
    fn degenerate_inputs() {
        let zero = FgGroup::zero();
        let z = FgGroup::free(1);
        let f = GroupMap::zero(&zero, &z);
        assert!(f.is_mono());
        assert!(!f.is_epi());
        assert!(f.kernel().is_zero());
        assert!(Subgroup::whole(&zero).is_zero());
        assert_eq!(zero.enumerate(1).unwrap().len(), 1);
    }
}
