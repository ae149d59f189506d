//! Hom groups and linear systems whose unknowns are homomorphisms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{gcd, FgGroup, GroupMap, Subgroup};
use crate::matrix::IntMatrix;

#[derive(Clone, Debug)]
struct HomGen {
    src_coord: usize,
    dst_coord: usize,
    step: BigInt,
    order: BigInt,
}

/// `Hom(G, H)` with a diagonal presentation built from Smith coordinates of
/// both groups: one generator for each pair of nontrivial coordinates with a
/// nonzero hom between the corresponding cyclic factors.
#[derive(Clone, Debug)]
pub struct HomSpace {
    src: FgGroup,
    dst: FgGroup,
    group: FgGroup,
    gens: Vec<GroupMap>,
    index: Vec<HomGen>,
}

pub fn hom_group(g: &FgGroup, h: &FgGroup) -> HomSpace {
    HomSpace::new(g, h)
}

impl HomSpace {
    pub fn new(g: &FgGroup, h: &FgGroup) -> HomSpace {
        let mut index = Vec::new();
        let one = BigInt::one();
        for (i, a) in g.smith_orders().iter().enumerate() {
            if *a == one {
                continue;
            }
            for (j, b) in h.smith_orders().iter().enumerate() {
                if *b == one {
                    continue;
                }
                let (step, order) = if a.is_zero() {
                    (one.clone(), b.clone())
                } else if b.is_zero() {
                    continue;
                } else {
                    let d = gcd(a, b);
                    (b / &d, d)
                };
                if order == one {
                    continue;
                }
                index.push(HomGen { src_coord: i, dst_coord: j, step, order });
            }
        }
        let gens = index
            .iter()
            .map(|t| {
                let col = h.smith_u_inv().column(t.dst_coord);
                let col: Vec<BigInt> = col.iter().map(|x| x * &t.step).collect();
                let row = g.smith_u().row(t.src_coord);
                let lift = IntMatrix::column_vector(&col).mul(&IntMatrix::from_vec(1, row.len(), row.to_vec()));
                GroupMap::new_unchecked(g.clone(), h.clone(), lift)
            })
            .collect();
        let finite: Vec<(usize, &BigInt)> =
            index.iter().enumerate().filter(|(_, t)| !t.order.is_zero()).map(|(k, t)| (k, &t.order)).collect();
        let mut rel = IntMatrix::zeros(index.len(), finite.len());
        for (c, (k, d)) in finite.iter().enumerate() {
            rel[(*k, c)] = (*d).clone();
        }
        HomSpace { src: g.clone(), dst: h.clone(), group: FgGroup::new(rel), gens, index }
    }

    pub fn src(&self) -> &FgGroup {
        &self.src
    }

    pub fn dst(&self) -> &FgGroup {
        &self.dst
    }

    /// The Hom group as an abstract group on the generators below.
    pub fn group(&self) -> &FgGroup {
        &self.group
    }

    pub fn generators(&self) -> &[GroupMap] {
        &self.gens
    }

    /// The homomorphism `Σ c_k g_k`.
    pub fn element(&self, c: &[BigInt]) -> GroupMap {
        assert_eq!(c.len(), self.gens.len(), "coordinate vector has the wrong length");
        let mut lift = IntMatrix::zeros(self.dst.ambient_rank(), self.src.ambient_rank());
        for (ck, g) in c.iter().zip(&self.gens) {
            if !ck.is_zero() {
                lift = lift.add(&g.lift().scale(ck));
            }
        }
        GroupMap::new_unchecked(self.src.clone(), self.dst.clone(), lift)
    }

    /// Coordinates of `f` in the Hom group, reduced.
    pub fn coords(&self, f: &GroupMap) -> Vec<BigInt> {
        assert!(f.src() == &self.src && f.dst() == &self.dst, "map is not in this Hom group");
        let mut out = Vec::with_capacity(self.index.len());
        let mut cache: Vec<Option<Vec<BigInt>>> = vec![None; self.src.ambient_rank()];
        for t in &self.index {
            let w = cache[t.src_coord].get_or_insert_with(|| {
                let e = self.src.smith_u_inv().column(t.src_coord);
                self.dst.smith_u().mul_vec(&f.lift().mul_vec(&e))
            });
            let wj = &w[t.dst_coord];
            let b = &self.dst.smith_orders()[t.dst_coord];
            let c = if b.is_zero() {
                wj.clone()
            } else {
                let r = wj.mod_floor(b);
                debug_assert!((&r % &t.step).is_zero(), "map is not well defined");
                &r / &t.step
            };
            out.push(c);
        }
        self.group.reduce(&out)
    }
}

/// One summand `coeff · post ∘ h_block ∘ pre` of a linear equation.
#[derive(Clone, Debug)]
pub struct Term {
    pub block: usize,
    pub pre: Option<GroupMap>,
    pub post: Option<GroupMap>,
    pub coeff: BigInt,
}

impl Term {
    pub fn new(block: usize) -> Term {
        Term { block, pre: None, post: None, coeff: BigInt::one() }
    }

    pub fn pre(mut self, m: &GroupMap) -> Term {
        self.pre = Some(m.clone());
        self
    }

    pub fn post(mut self, m: &GroupMap) -> Term {
        self.post = Some(m.clone());
        self
    }

    pub fn times(mut self, c: i64) -> Term {
        self.coeff *= BigInt::from(c);
        self
    }
}

#[derive(Clone, Debug)]
struct Equation {
    src: FgGroup,
    dst: FgGroup,
    terms: Vec<Term>,
    rhs: Option<GroupMap>,
}

/// A system of equations `Σ coeff · post ∘ h_b ∘ pre = rhs` whose unknowns
/// `h_b` range over Hom groups.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    blocks: Vec<HomSpace>,
    equations: Vec<Equation>,
}

/// Solutions of a [`LinearSystem`]. Unknowns are coordinatized by the
/// direct sum `param` of the block Hom groups.
#[derive(Clone, Debug)]
pub struct SystemSolution {
    pub blocks: Vec<HomSpace>,
    pub param: FgGroup,
    pub offsets: Vec<usize>,
    pub particular: Option<Vec<GroupMap>>,
    /// Solutions of the homogeneous system, as a subgroup of `param`.
    pub homogeneous: Subgroup,
    /// The linear map whose kernel is `homogeneous`.
    pub constraint: GroupMap,
}

impl LinearSystem {
    pub fn new(blocks: Vec<HomSpace>) -> LinearSystem {
        LinearSystem { blocks, equations: Vec::new() }
    }

    pub fn blocks(&self) -> &[HomSpace] {
        &self.blocks
    }

    /// Adds an equation between maps `src → dst`; a missing `rhs` means zero.
    pub fn equation(&mut self, src: &FgGroup, dst: &FgGroup, terms: Vec<Term>, rhs: Option<GroupMap>) -> Result<()> {
        for t in &terms {
            let b = self.blocks.get(t.block).ok_or_else(|| Error::MismatchedEndpoints(format!("no block {}", t.block)))?;
            let inner_src = t.pre.as_ref().map_or(b.src(), |p| p.src());
            if let Some(p) = &t.pre {
                if p.dst() != b.src() {
                    return Err(Error::MismatchedEndpoints(format!("pre-map of block {} has the wrong target", t.block)));
                }
            }
            let outer_dst = t.post.as_ref().map_or(b.dst(), |p| p.dst());
            if let Some(p) = &t.post {
                if p.src() != b.dst() {
                    return Err(Error::MismatchedEndpoints(format!("post-map of block {} has the wrong source", t.block)));
                }
            }
            if inner_src != src || outer_dst != dst {
                return Err(Error::MismatchedEndpoints(format!("term for block {} has the wrong endpoints", t.block)));
            }
        }
        if let Some(r) = &rhs {
            if r.src() != src || r.dst() != dst {
                return Err(Error::MismatchedEndpoints("right-hand side has the wrong endpoints".into()));
            }
        }
        self.equations.push(Equation { src: src.clone(), dst: dst.clone(), terms, rhs });
        Ok(())
    }

    pub fn param(&self) -> (FgGroup, Vec<usize>) {
        let parts: Vec<FgGroup> = self.blocks.iter().map(|b| b.group().clone()).collect();
        let mut offsets = Vec::with_capacity(parts.len());
        let mut off = 0;
        for p in &parts {
            offsets.push(off);
            off += p.ambient_rank();
        }
        (FgGroup::direct_sum(&parts).group, offsets)
    }

    pub fn solve(&self) -> SystemSolution {
        let (param, offsets) = self.param();
        let np = param.ambient_rank();
        let mut row_blocks: Vec<IntMatrix> = Vec::new();
        let mut target_rels: Vec<IntMatrix> = Vec::new();
        let mut rhs: Vec<BigInt> = Vec::new();
        for eq in &self.equations {
            let nq = eq.dst.ambient_rank();
            let ns = eq.src.ambient_rank();
            let rows = nq * ns;
            let mut block = IntMatrix::zeros(rows, np);
            for t in &eq.terms {
                let hs = &self.blocks[t.block];
                for (k, g) in hs.generators().iter().enumerate() {
                    let mut lift = g.lift().clone();
                    if let Some(p) = &t.pre {
                        lift = lift.mul(p.lift());
                    }
                    if let Some(p) = &t.post {
                        lift = p.lift().mul(&lift);
                    }
                    if !t.coeff.is_one() {
                        lift = lift.scale(&t.coeff);
                    }
                    let col = offsets[t.block] + k;
                    for c in 0..ns {
                        for r in 0..nq {
                            let v = &lift[(r, c)];
                            if !v.is_zero() {
                                block[(c * nq + r, col)] += v;
                            }
                        }
                    }
                }
            }
            row_blocks.push(block);
            for _ in 0..ns {
                target_rels.push(eq.dst.relations().clone());
            }
            match &eq.rhs {
                Some(r) => {
                    for c in 0..ns {
                        rhs.extend(r.lift().column(c));
                    }
                }
                None => rhs.extend(core::iter::repeat_n(BigInt::zero(), rows)),
            }
        }
        let refs: Vec<&IntMatrix> = row_blocks.iter().collect();
        let phi = IntMatrix::vstack(np, &refs);
        let trefs: Vec<&IntMatrix> = target_rels.iter().collect();
        let target = FgGroup::new(IntMatrix::block_diag(&trefs));
        let constraint = GroupMap::new_unchecked(param.clone(), target, phi);
        let homogeneous = constraint.kernel();
        let particular = constraint.solve_element(&rhs).map(|x| split(&self.blocks, &offsets, &x));
        SystemSolution { blocks: self.blocks.clone(), param, offsets, particular, homogeneous, constraint }
    }
}

fn split(blocks: &[HomSpace], offsets: &[usize], x: &[BigInt]) -> Vec<GroupMap> {
    blocks
        .iter()
        .zip(offsets)
        .map(|(b, &o)| b.element(&x[o..o + b.group().ambient_rank()]))
        .collect()
}

impl SystemSolution {
    /// The maps described by a vector in `param`.
    pub fn maps_of(&self, x: &[BigInt]) -> Vec<GroupMap> {
        split(&self.blocks, &self.offsets, x)
    }

    /// Coordinates in `param` of a family of maps, one per block.
    pub fn coords_of(&self, maps: &[GroupMap]) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.param.ambient_rank());
        for (b, m) in self.blocks.iter().zip(maps) {
            out.extend(b.coords(m));
        }
        out
    }

    pub fn homogeneous_generators(&self) -> Vec<Vec<GroupMap>> {
        self.homogeneous.generators().columns().iter().map(|c| self.maps_of(c)).collect()
    }

    pub fn is_unique(&self) -> bool {
        self.homogeneous.is_zero()
    }
}

/// Solutions of a single-unknown commuting problem.
#[derive(Clone, Debug)]
pub struct CommutingSolution {
    pub space: HomSpace,
    pub particular: Option<GroupMap>,
    /// Solutions of the zero system, as a subgroup of `space.group()`.
    pub homogeneous: Subgroup,
}

impl CommutingSolution {
    pub fn is_unique(&self) -> bool {
        self.homogeneous.is_zero()
    }
}

/// Finds `h: src → dst` with `h ∘ a = b` for every left constraint `(a, b)`
/// and `c ∘ h = d` for every right constraint `(c, d)`.
pub fn solve_commuting(
    src: &FgGroup,
    dst: &FgGroup,
    left: &[(GroupMap, GroupMap)],
    right: &[(GroupMap, GroupMap)],
) -> Result<CommutingSolution> {
    let mut sys = LinearSystem::new(vec![HomSpace::new(src, dst)]);
    for (a, b) in left {
        if a.dst() != src || b.dst() != dst || a.src() != b.src() {
            return Err(Error::MismatchedEndpoints("left constraint".into()));
        }
        sys.equation(a.src(), dst, vec![Term::new(0).pre(a)], Some(b.clone()))?;
    }
    for (c, d) in right {
        if c.src() != dst || d.src() != src || c.dst() != d.dst() {
            return Err(Error::MismatchedEndpoints("right constraint".into()));
        }
        sys.equation(src, c.dst(), vec![Term::new(0).post(c)], Some(d.clone()))?;
    }
    let sol = sys.solve();
    let space = sol.blocks[0].clone();
    let homogeneous = sol.homogeneous.clone();
    Ok(CommutingSolution { space, particular: sol.particular.map(|mut v| v.remove(0)), homogeneous })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imat;

    /// All lifts of maps `Z/a → Z/b` with entries in `[0, b)`, filtered by
    /// well-definedness.
    fn brute_force_homs(a: i64, b: i64) -> usize {
        (0..b).filter(|x| (a * x) % b == 0).count()
    }

    #[test]
    fn hom_z4_z6() {
        let h = hom_group(&FgGroup::cyclic(4), &FgGroup::cyclic(6));
        assert!(h.group().is_isomorphic(&FgGroup::cyclic(2)));
        assert_eq!(brute_force_homs(4, 6), 2);
    }

    #[test]
    fn hom_small_cases() {
        let z = FgGroup::free(1);
        let h = FgGroup::new(imat![2; [2, 0], [0, 0]]);
        assert!(hom_group(&z, &h).group().is_isomorphic(&h));
        assert!(hom_group(&FgGroup::cyclic(2), &z).group().is_trivial());
        for a in 1..8 {
            for b in 1..8 {
                let hs = hom_group(&FgGroup::cyclic(a), &FgGroup::cyclic(b));
                let order = hs.group().order().unwrap();
                assert_eq!(order, BigInt::from(brute_force_homs(a, b)));
            }
        }
    }

    #[test]
    fn coords_round_trip() {
        let g = FgGroup::new(imat![3; [2, 4, 0], [0, 6, 0], [1, 1, 0]]);
        let h = FgGroup::new(imat![2; [4, 2], [2, 0]]);
        let hs = hom_group(&g, &h);
        for (k, gen) in hs.generators().iter().enumerate() {
            let c = hs.coords(gen);
            let mut e = vec![BigInt::zero(); hs.generators().len()];
            e[k] = BigInt::one();
            assert_eq!(c, hs.group().reduce(&e));
            assert_eq!(&hs.element(&c), gen);
        }
    }

    #[test]
    fn solve_commuting_examples() {
        let z = FgGroup::free(1);
        let s = solve_commuting(&z, &z, &[], &[]).unwrap();
        assert!(s.particular.unwrap().is_zero());
        assert!(s.homogeneous.is_whole());
        let f = GroupMap::new(z.clone(), z.clone(), imat![1; [5]]).unwrap();
        let s = solve_commuting(&z, &z, &[(GroupMap::identity(&z), f.clone())], &[]).unwrap();
        assert_eq!(s.particular.clone().unwrap(), f);
        assert!(s.is_unique());
        let two = GroupMap::new(z.clone(), z.clone(), imat![1; [2]]).unwrap();
        let six = GroupMap::new(z.clone(), z.clone(), imat![1; [6]]).unwrap();
        let s = solve_commuting(&z, &z, &[], &[(two.clone(), six)]).unwrap();
        assert_eq!(s.particular.clone().unwrap().lift(), &imat![1; [3]]);
        assert!(s.is_unique());
        let s = solve_commuting(&z, &z, &[], &[(two, f)]).unwrap();
        assert!(s.particular.is_none());
    }
}
