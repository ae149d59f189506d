//! Hom complexes. The enriched hom `𝔥om` of decorated complexes with its
//! decoration `𝓜`, the strict DG hom of complexes in `B`, Hom groups of `B`
//! computed on semi-projective replacements, and the full DG hom.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::b::{add, compose, negate, strictify, BObject, Butterfly, StrictMorphism};
use crate::decorated::{ChainComplexA, DecComplex};
use crate::error::{Error, Result};
use crate::group::{pullback, FgGroup, GroupMap, Subgroup};
use crate::hom::{HomSpace, LinearSystem, Term};
use crate::matrix::IntMatrix;
use crate::tot::{g_inverse, make_b_complex, BChainMap, BComplex};

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// The same lift between the given presentations.
fn between(m: &GroupMap, src: &FgGroup, dst: &FgGroup) -> GroupMap {
    GroupMap::new(src.clone(), dst.clone(), m.lift().clone()).expect("same group, same presentation")
}

/// A family of Hom groups coordinatized by their direct sum.
#[derive(Clone, Debug)]
struct Blocks {
    spaces: Vec<HomSpace>,
    offsets: Vec<usize>,
    group: FgGroup,
}

impl Blocks {
    fn new(spaces: Vec<HomSpace>) -> Blocks {
        let (group, offsets) = LinearSystem::new(spaces.clone()).param();
        Blocks { spaces, offsets, group }
    }

    fn system(&self) -> LinearSystem {
        LinearSystem::new(self.spaces.clone())
    }

    fn maps(&self, x: &[BigInt]) -> Vec<GroupMap> {
        self.spaces
            .iter()
            .zip(&self.offsets)
            .map(|(s, &o)| s.element(&x[o..o + s.group().ambient_rank()]))
            .collect()
    }

    fn coords(&self, maps: &[GroupMap]) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.group.ambient_rank());
        for (s, m) in self.spaces.iter().zip(maps) {
            out.extend(s.coords(&between(m, s.src(), s.dst())));
        }
        out
    }

    fn rank(&self) -> usize {
        self.group.ambient_rank()
    }
}

/// One degree of `𝔥om(x, y)`: the ambient `⊕_n Hom(E^n, F^{n+k})` and the
/// subgroups cut out by the compatibility conditions and by `𝓜`.
#[derive(Clone, Debug)]
pub struct HomDegree {
    pub k: i64,
    blocks: Blocks,
    pub hom: Subgroup,
    pub m: Subgroup,
}

impl HomDegree {
    pub fn ambient(&self) -> &FgGroup {
        &self.blocks.group
    }
}

/// `𝔥om(x, y)` with its decoration `𝓜`, on a range of degrees padded by
/// one zero degree at each end.
#[derive(Clone, Debug)]
pub struct DecoratedHomComplex {
    src: DecComplex,
    dst: DecComplex,
    start: i64,
    degrees: Vec<HomDegree>,
    /// `diffs[i]`: ambient of degree `start + i` → ambient of the next.
    diffs: Vec<GroupMap>,
}

pub fn hom_complex_dec(x: &DecComplex, y: &DecComplex) -> DecoratedHomComplex {
    if x.is_empty() || y.is_empty() {
        return build_dec_hom(x, y, 0, 0);
    }
    build_dec_hom(x, y, y.start() - x.end() - 1, y.end() - x.start() + 1)
}

fn dec_blocks(x: &DecComplex, y: &DecComplex, k: i64) -> Blocks {
    let spaces = if x.is_empty() {
        Vec::new()
    } else {
        (x.start()..=x.end()).map(|n| HomSpace::new(&x.term(n), &y.term(n + k))).collect()
    };
    Blocks::new(spaces)
}

fn dec_degree(x: &DecComplex, y: &DecComplex, k: i64) -> HomDegree {
    let blocks = dec_blocks(x, y, k);
    let mut hom = blocks.system();
    let mut m = blocks.system();
    if !x.is_empty() {
        let (a, b) = (x.start(), x.end());
        let at = |n: i64| (n - a) as usize;
        for n in a..=b {
            let mn = x.m(n);
            let (q, proj) = y.m(n + k).quotient();
            let (q1, proj1) = y.m(n + k + 1).quotient();
            hom.equation(mn.as_group(), &q, vec![Term::new(at(n)).pre(mn.inclusion()).post(&proj)], None)
                .expect("well-typed system");
            let mut terms = vec![Term::new(at(n)).pre(mn.inclusion()).post(&proj1.after(&y.diff(n + k)))];
            if n < b {
                let pre = x.diff(n).after(mn.inclusion());
                terms.push(Term::new(at(n + 1)).pre(&pre).post(&proj1).times(-sign(k)));
            }
            hom.equation(mn.as_group(), &q1, terms, None).expect("well-typed system");
            m.equation(mn.as_group(), &y.term(n + k), vec![Term::new(at(n)).pre(mn.inclusion())], None)
                .expect("well-typed system");
            m.equation(&x.term(n), &q, vec![Term::new(at(n)).post(&proj)], None).expect("well-typed system");
        }
    }
    let hom = hom.solve().homogeneous;
    let m = m.solve().homogeneous;
    debug_assert!(m.is_subgroup_of(&hom));
    HomDegree { k, blocks, hom, m }
}

fn build_dec_hom(x: &DecComplex, y: &DecComplex, lo: i64, hi: i64) -> DecoratedHomComplex {
    let degrees: Vec<HomDegree> = (lo..=hi).map(|k| dec_degree(x, y, k)).collect();
    let mut diffs = Vec::new();
    for w in degrees.windows(2) {
        let (s, t) = (&w[0], &w[1]);
        let k = s.k;
        let cols: Vec<Vec<BigInt>> = (0..s.blocks.rank())
            .map(|i| {
                let g = s.blocks.maps(&unit(s.blocks.rank(), i));
                t.blocks.coords(&dec_differential(x, y, k, &g))
            })
            .collect();
        let lift = IntMatrix::from_columns(t.blocks.rank(), &cols);
        diffs.push(GroupMap::new(s.ambient().clone(), t.ambient().clone(), lift).expect("d is well defined"));
    }
    DecoratedHomComplex { src: x.clone(), dst: y.clone(), start: lo, degrees, diffs }
}

/// `(dg)_n = δ_F g_n − (−1)^k g_{n+1} δ_E`.
fn dec_differential(x: &DecComplex, y: &DecComplex, k: i64, g: &[GroupMap]) -> Vec<GroupMap> {
    if x.is_empty() {
        return Vec::new();
    }
    let (a, b) = (x.start(), x.end());
    (a..=b)
        .map(|n| {
            let first = y.diff(n + k).after(&g[(n - a) as usize]);
            if n < b {
                let second = g[(n + 1 - a) as usize].after(&x.diff(n));
                let second = between(&second, first.src(), first.dst());
                if sign(k) == 1 {
                    first.sub(&second)
                } else {
                    first.add(&second)
                }
            } else {
                first
            }
        })
        .collect()
}

impl DecoratedHomComplex {
    pub fn src(&self) -> &DecComplex {
        &self.src
    }

    pub fn dst(&self) -> &DecComplex {
        &self.dst
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn end(&self) -> i64 {
        self.start + self.degrees.len() as i64 - 1
    }

    pub fn degree(&self, k: i64) -> &HomDegree {
        &self.degrees[(k - self.start) as usize]
    }

    /// `d` on the ambient of degree `k`; `None` at the top degree.
    pub fn d(&self, k: i64) -> Option<&GroupMap> {
        let i = k - self.start;
        (i >= 0).then(|| self.diffs.get(i as usize)).flatten()
    }

    /// The components `g_n` of an ambient element of degree `k`.
    pub fn maps_of(&self, k: i64, x: &[BigInt]) -> Vec<GroupMap> {
        self.degree(k).blocks.maps(x)
    }

    pub fn coords_of(&self, k: i64, maps: &[GroupMap]) -> Vec<BigInt> {
        self.degree(k).blocks.coords(maps)
    }

    /// `d𝓜^{k-1}` inside the ambient of degree `k`.
    fn d_of_m(&self, k: i64) -> Subgroup {
        match self.d(k - 1) {
            Some(d) => d.image_of(&self.degree(k - 1).m),
            None => Subgroup::zero(self.degree(k).ambient()),
        }
    }

    /// Whether `d` carries `𝔥om^k` into `𝔥om^{k+1}` and squares to zero.
    pub fn is_complex(&self) -> bool {
        let maps_in = self.diffs.iter().enumerate().all(|(i, d)| {
            let k = self.start + i as i64;
            d.image_of(&self.degree(k).hom).is_subgroup_of(&self.degree(k + 1).hom)
        });
        maps_in && self.diffs.windows(2).all(|w| w[1].after(&w[0]).is_zero())
    }
}

/// Whether `𝓜^k ∩ d⁻¹𝓜^{k+1} = 0` in every degree.
pub fn enrich_check(h: &DecoratedHomComplex) -> bool {
    (h.start()..h.end()).all(|k| {
        let d = h.d(k).expect("not the top degree");
        let deg = h.degree(k);
        deg.m.intersect(&d.preimage(&h.degree(k + 1).m)).is_zero()
    })
}

/// `𝔥om^k / (𝓜^k + d𝓜^{k-1})` with the induced differential.
#[derive(Clone, Debug)]
pub struct DgQuotient {
    pub complex: ChainComplexA,
    /// `𝓜^k + d𝓜^{k-1}` inside the ambient of degree `k`.
    pub denominators: Vec<Subgroup>,
}

pub fn dg_quotient(h: &DecoratedHomComplex) -> Result<DgQuotient> {
    if !enrich_check(h) {
        return Err(Error::PreconditionViolated("𝓜 ∩ d⁻¹𝓜 is nonzero".into()));
    }
    let (lo, hi) = (h.start(), h.end());
    let denominators: Vec<Subgroup> = (lo..=hi).map(|k| h.degree(k).m.sum(&h.d_of_m(k))).collect();
    let quotients: Vec<(FgGroup, GroupMap)> = (lo..=hi)
        .map(|k| {
            let deg = h.degree(k);
            deg.hom.pull_back(&denominators[(k - lo) as usize]).expect("𝓜 + d𝓜 lies in 𝔥om").quotient()
        })
        .collect();
    let mut diffs = Vec::new();
    for k in lo..hi {
        let d = h.d(k).expect("not the top degree");
        let on_hom = d.restrict(&h.degree(k).hom).corestrict(&h.degree(k + 1).hom).expect("d preserves 𝔥om");
        let (qs, qt) = (&quotients[(k - lo) as usize].0, &quotients[(k + 1 - lo) as usize].0);
        diffs.push(GroupMap::new(qs.clone(), qt.clone(), on_hom.lift().clone())?);
    }
    let terms = quotients.into_iter().map(|(g, _)| g).collect();
    Ok(DgQuotient { complex: ChainComplexA::new(lo, terms, diffs)?, denominators })
}

/// One degree of the strict hom complex: strict pairs `(h_n^{-1}, h_n^0)`
/// for every `n`, the subgroup admitting signed fillers, the null-homotopic
/// pairs, and the group of classes.
#[derive(Clone, Debug)]
pub struct StrictDegree {
    pub k: i64,
    /// Blocks `2i` and `2i + 1` hold `h^{-1}` and `h^0` of degree `a + i`.
    pairs: Blocks,
    pub fill: Subgroup,
    pub null: Subgroup,
    /// `fill + null`.
    pub sub: Subgroup,
    /// `sub / null`, presented on the generators of `sub`.
    pub group: FgGroup,
}

impl StrictDegree {
    pub fn pairs(&self) -> &FgGroup {
        &self.pairs.group
    }
}

/// `𝔥om` of strict sequences with fillers between complexes in `B`.
#[derive(Clone, Debug)]
pub struct StrictHomComplex {
    src: BComplex,
    dst: BComplex,
    start: i64,
    degrees: Vec<StrictDegree>,
    diffs: Vec<GroupMap>,
}

pub fn strict_hom_complex(x: &BComplex, y: &BComplex) -> Result<StrictHomComplex> {
    let (lo, hi) = if x.is_empty() || y.is_empty() { (0, 0) } else { (y.start() - x.end() - 1, y.end() - x.start() + 1) };
    let degrees: Vec<StrictDegree> = (lo..=hi).map(|k| strict_degree(x, y, k)).collect();
    let mut s = StrictHomComplex { src: x.clone(), dst: y.clone(), start: lo, degrees, diffs: Vec::new() };
    for k in lo..hi {
        let d = s.differential(k)?;
        s.diffs.push(d);
    }
    Ok(s)
}

fn pair_blocks(x: &BComplex, y: &BComplex, k: i64) -> Blocks {
    let mut spaces = Vec::new();
    if !x.is_empty() {
        for n in x.start()..=x.end() {
            let (s, t) = (x.object(n), y.object(n + k));
            spaces.push(HomSpace::new(s.x_m1(), t.x_m1()));
            spaces.push(HomSpace::new(s.x_0(), t.x_0()));
        }
    }
    Blocks::new(spaces)
}

fn strict_degree(x: &BComplex, y: &BComplex, k: i64) -> StrictDegree {
    let pairs = pair_blocks(x, y, k);
    let np = pairs.spaces.len();
    let mut null_gens: Vec<Vec<BigInt>> = Vec::new();
    let mut spaces = pairs.spaces.clone();
    if !x.is_empty() {
        let (a, b) = (x.start(), x.end());
        for n in a..=b + 1 {
            spaces.push(HomSpace::new(&x.middle(n), &y.middle(n + k)));
        }
        for n in a..=b {
            let (s, t) = (x.object(n), y.object(n + k));
            for h in HomSpace::new(s.x_0(), t.x_m1()).generators() {
                let mut maps: Vec<GroupMap> =
                    pairs.spaces.iter().map(|sp| GroupMap::zero(sp.src(), sp.dst())).collect();
                let i = (n - a) as usize;
                maps[2 * i] = h.after(s.d());
                maps[2 * i + 1] = t.d().after(h);
                null_gens.push(pairs.coords(&maps));
            }
        }
    }
    let mut sys = LinearSystem::new(spaces);
    if !x.is_empty() {
        let (a, b) = (x.start(), x.end());
        let (ai, bi, ui) = (|n: i64| 2 * (n - a) as usize, |n: i64| 2 * (n - a) as usize + 1, |n: i64| np + (n - a) as usize);
        for n in a..=b {
            let (s, t) = (x.object(n), y.object(n + k));
            sys.equation(
                s.x_m1(),
                t.x_0(),
                vec![Term::new(bi(n)).pre(s.d()), Term::new(ai(n)).post(t.d()).times(-1)],
                None,
            )
            .expect("well-typed system");
        }
        for n in a..=b + 1 {
            let (dx, dy) = (x.diff(n), y.diff(n + k));
            let mut terms = vec![Term::new(ui(n)).post(dy.sigma())];
            if n > a {
                terms.push(Term::new(bi(n - 1)).pre(dx.sigma()).times(-1));
            }
            sys.equation(dx.e(), dy.src().x_0(), terms, None).expect("well-typed system");
            let mut terms = vec![Term::new(ui(n)).pre(dx.iota())];
            if n <= b {
                terms.push(Term::new(ai(n)).post(dy.iota()).times(-sign(k)));
            }
            sys.equation(dx.dst().x_m1(), dy.e(), terms, None).expect("well-typed system");
        }
    }
    let sol = sys.solve();
    let full_rank = sol.param.ambient_rank();
    let mut proj = IntMatrix::zeros(pairs.rank(), full_rank);
    proj.set_block(0, 0, &IntMatrix::identity(pairs.rank()));
    let proj = GroupMap::new(sol.param.clone(), pairs.group.clone(), proj).expect("projection onto the pair blocks");
    let fill = proj.image_of(&sol.homogeneous);
    let null = Subgroup::new(&pairs.group, &IntMatrix::from_columns(pairs.rank(), &null_gens));
    let sub = fill.sum(&null);
    let (group, _) = sub.pull_back(&null).expect("null ⊆ sub").quotient();
    StrictDegree { k, pairs, fill, null, sub, group }
}

impl StrictHomComplex {
    pub fn src(&self) -> &BComplex {
        &self.src
    }

    pub fn dst(&self) -> &BComplex {
        &self.dst
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn end(&self) -> i64 {
        self.start + self.degrees.len() as i64 - 1
    }

    pub fn degree(&self, k: i64) -> &StrictDegree {
        &self.degrees[(k - self.start) as usize]
    }

    pub fn d(&self, k: i64) -> Option<&GroupMap> {
        let i = k - self.start;
        (i >= 0).then(|| self.diffs.get(i as usize)).flatten()
    }

    pub fn complex(&self) -> ChainComplexA {
        let terms = self.degrees.iter().map(|d| d.group.clone()).collect();
        ChainComplexA::new(self.start, terms, self.diffs.clone()).expect("d² = 0")
    }

    /// The strict morphisms of a pair vector of degree `k`.
    pub fn morphisms(&self, k: i64, v: &[BigInt]) -> Vec<StrictMorphism> {
        let maps = self.degree(k).pairs.maps(v);
        if self.src.is_empty() {
            return Vec::new();
        }
        (self.src.start()..=self.src.end())
            .enumerate()
            .map(|(i, n)| StrictMorphism {
                src: self.src.object(n),
                dst: self.dst.object(n + k),
                f_m1: maps[2 * i].clone(),
                f_0: maps[2 * i + 1].clone(),
            })
            .collect()
    }

    /// Representatives of a class given in coordinates of `group`.
    pub fn element(&self, k: i64, c: &[BigInt]) -> Vec<StrictMorphism> {
        let v = self.degree(k).sub.generators().mul_vec(c);
        self.morphisms(k, &v)
    }

    /// The class of a sequence of strict morphisms, if it lies in degree `k`.
    pub fn class_of(&self, k: i64, hs: &[StrictMorphism]) -> Option<Vec<BigInt>> {
        let deg = self.degree(k);
        let maps: Vec<GroupMap> = hs.iter().flat_map(|h| [h.f_m1.clone(), h.f_0.clone()]).collect();
        let c = deg.sub.coordinates(&deg.pairs.coords(&maps))?;
        Some(deg.group.reduce(&c))
    }

    /// `d(h)_n = d_Y h_n − (−1)^k h_{n+1} d_X`, computed with butterflies
    /// and strictified.
    fn differential(&self, k: i64) -> Result<GroupMap> {
        let (x, y) = (&self.src, &self.dst);
        let (s, t) = (self.degree(k), self.degree(k + 1));
        let mut cols = Vec::new();
        for j in 0..s.group.ambient_rank() {
            let h = self.element(k, &unit(s.group.ambient_rank(), j));
            let mut dh = Vec::new();
            if !x.is_empty() {
                let (a, b) = (x.start(), x.end());
                for n in a..=b {
                    let first = compose(&h[(n - a) as usize].butterfly(), &y.diff(n + k + 1))?;
                    let total = if n < b {
                        let second = compose(&x.diff(n + 1), &h[(n + 1 - a) as usize].butterfly())?;
                        add(&first, &if sign(k) == 1 { negate(&second) } else { second })?
                    } else {
                        first
                    };
                    let st = strictify(&total)
                        .ok_or_else(|| Error::TransferFailure(format!("d(h) in degree {n} has no strict representative")))?;
                    dh.push(st);
                }
            }
            let c = self
                .class_of(k + 1, &dh)
                .ok_or_else(|| Error::TransferFailure(format!("d leaves the strict hom in degree {}", k + 1)))?;
            cols.push(c);
        }
        GroupMap::new(s.group.clone(), t.group.clone(), IntMatrix::from_columns(t.group.ambient_rank(), &cols))
    }
}

/// The outcome of comparing `dg_quotient(𝔥om(D, D′))` with the strict hom
/// of `G(D)` and `G(D′)` through `𝔊(γ)_n = ((−1)^k g̲_n, ḡ_{n+1})`.
#[derive(Clone, Debug)]
pub struct DgEquivalence {
    /// Per degree: whether `ker 𝔊 = 𝓜^k + d𝓜^{k-1}`.
    pub kernel_matches: Vec<(i64, bool)>,
    /// Per degree: whether the induced map on quotients is an isomorphism.
    pub iso: Vec<(i64, bool)>,
    /// Whether the induced maps commute with the differentials.
    pub chain_map: bool,
}

impl DgEquivalence {
    pub fn holds(&self) -> bool {
        self.chain_map && self.kernel_matches.iter().all(|p| p.1) && self.iso.iter().all(|p| p.1)
    }
}

pub fn dg_equivalence(d1: &DecComplex, d2: &DecComplex) -> Result<DgEquivalence> {
    let x = g_inverse(d1)?;
    let y = g_inverse(d2)?;
    let strict = strict_hom_complex(&x, &y)?;
    let h = build_dec_hom(d1, d2, strict.start(), strict.end());
    let q = dg_quotient(&h)?;
    let mut kernel_matches = Vec::new();
    let mut iso = Vec::new();
    let mut induced = Vec::new();
    for k in h.start()..=h.end() {
        let deg = h.degree(k);
        let sd = strict.degree(k);
        let cols: Vec<Vec<BigInt>> = deg
            .hom
            .generators()
            .columns()
            .iter()
            .map(|c| {
                let g = h.maps_of(k, c);
                sd.pairs.coords(&frak_g(d1, d2, &x, &y, k, &g))
            })
            .collect();
        let gk = GroupMap::new(deg.hom.as_group().clone(), sd.pairs.group.clone(), IntMatrix::from_columns(sd.pairs.rank(), &cols))?;
        let (_, mod_null) = sd.null.quotient();
        let kernel = deg.hom.push_forward(&mod_null.after(&gk).kernel());
        kernel_matches.push((k, kernel == q.denominators[(k - h.start()) as usize]));
        let lifted: Option<Vec<Vec<BigInt>>> = cols.iter().map(|v| sd.sub.coordinates(v)).collect();
        let map = lifted.and_then(|l| {
            let lift = IntMatrix::from_columns(sd.group.ambient_rank(), &l);
            GroupMap::new(q.complex.term(k), sd.group.clone(), lift).ok()
        });
        iso.push((k, map.as_ref().is_some_and(GroupMap::is_iso)));
        induced.push(map);
    }
    let chain_map = (h.start()..h.end()).all(|k| {
        let i = (k - h.start()) as usize;
        match (&induced[i], &induced[i + 1], strict.d(k)) {
            (Some(f), Some(f1), Some(ds)) => ds.after(f) == f1.after(&q.complex.diff(k)),
            _ => false,
        }
    });
    Ok(DgEquivalence { kernel_matches, iso, chain_map })
}

/// `𝔊(γ)` as strict pairs between the objects of `x = G(d1)`, `y = G(d2)`.
fn frak_g(d1: &DecComplex, d2: &DecComplex, x: &BComplex, y: &BComplex, k: i64, g: &[GroupMap]) -> Vec<GroupMap> {
    let (a, b) = (d1.start(), d1.end());
    let g_at = |n: i64| (n >= a && n <= b).then(|| g[(n - a) as usize].clone());
    let mut out = Vec::new();
    for n in x.start()..=x.end() {
        let (s, t) = (x.object(n), y.object(n + k));
        let under = match g_at(n) {
            Some(gn) => {
                let u = gn.restrict(&d1.m(n)).corestrict(&d2.m(n + k)).expect("condition (1)");
                let u = between(&u, s.x_m1(), t.x_m1());
                if sign(k) == 1 {
                    u
                } else {
                    u.neg()
                }
            }
            None => GroupMap::zero(s.x_m1(), t.x_m1()),
        };
        let over = match g_at(n + 1) {
            Some(gn) => between(&gn, s.x_0(), t.x_0()),
            None => GroupMap::zero(s.x_0(), t.x_0()),
        };
        out.push(under);
        out.push(over);
    }
    out
}

/// A semi-projective `ℙ` (free `P⁰`) with a strict isomorphism `ℙ → X`.
#[derive(Clone, Debug)]
pub struct SemiProjective {
    pub object: BObject,
    pub iso: StrictMorphism,
}

/// `ℙ = [P ×_{X⁰} X⁻¹ → P]` for the free cover `P → X⁰` on the ambient
/// generators; `X` itself when `X⁰` already has no relations.
pub fn semi_projective_replace(x: &BObject) -> SemiProjective {
    if x.x_0().relations().is_zero() {
        return SemiProjective { object: x.clone(), iso: StrictMorphism::identity(x) };
    }
    let n = x.x_0().ambient_rank();
    let p = GroupMap::new(FgGroup::free(n), x.x_0().clone(), IntMatrix::identity(n)).expect("free cover");
    let (_, to_p, to_x) = pullback(&p, x.d()).expect("common target");
    let object = BObject::new(to_p).expect("strictly isomorphic to an object of B");
    let iso = StrictMorphism::new(to_x, p, &object, x).expect("the pullback square commutes");
    SemiProjective { object, iso }
}

/// `Hom_B(X, Y)` as strict maps `ℙ → Y` modulo null-homotopies.
#[derive(Clone, Debug)]
pub struct HomB {
    src: BObject,
    dst: BObject,
    pub replacement: SemiProjective,
    pairs: Blocks,
    pub maps: Subgroup,
    pub null: Subgroup,
    pub group: FgGroup,
}

pub fn hom_group_b(x: &BObject, y: &BObject) -> HomB {
    let replacement = semi_projective_replace(x);
    let p = &replacement.object;
    let pairs = Blocks::new(vec![HomSpace::new(p.x_m1(), y.x_m1()), HomSpace::new(p.x_0(), y.x_0())]);
    let mut sys = pairs.system();
    sys.equation(p.x_m1(), y.x_0(), vec![Term::new(1).pre(p.d()), Term::new(0).post(y.d()).times(-1)], None)
        .expect("well-typed system");
    let maps = sys.solve().homogeneous;
    let null_gens: Vec<Vec<BigInt>> = HomSpace::new(p.x_0(), y.x_m1())
        .generators()
        .iter()
        .map(|s| pairs.coords(&[s.after(p.d()), y.d().after(s)]))
        .collect();
    let null = Subgroup::new(&pairs.group, &IntMatrix::from_columns(pairs.rank(), &null_gens));
    let (group, _) = maps.pull_back(&null).expect("null-homotopic pairs are strict").quotient();
    HomB { src: x.clone(), dst: y.clone(), replacement, pairs, maps, null, group }
}

impl HomB {
    pub fn src(&self) -> &BObject {
        &self.src
    }

    pub fn dst(&self) -> &BObject {
        &self.dst
    }

    /// The strict map `ℙ → Y` of a class.
    pub fn strict_rep(&self, c: &[BigInt]) -> StrictMorphism {
        let v = self.maps.generators().mul_vec(c);
        let m = self.pairs.maps(&v);
        StrictMorphism { src: self.replacement.object.clone(), dst: self.dst.clone(), f_m1: m[0].clone(), f_0: m[1].clone() }
    }

    /// A butterfly `X → Y` representing a class.
    pub fn representative(&self, c: &[BigInt]) -> Butterfly {
        let back = self.replacement.iso.butterfly().flip();
        compose(&back, &self.strict_rep(c).butterfly()).expect("composable")
    }

    /// The class of a strict map `ℙ → Y`.
    pub fn class_of_strict(&self, s: &StrictMorphism) -> Vec<BigInt> {
        let v = self.pairs.coords(&[s.f_m1.clone(), s.f_0.clone()]);
        let c = self.maps.coordinates(&v).expect("strict pairs lie in the solution group");
        self.group.reduce(&c)
    }

    /// The class of a butterfly `X → Y`.
    pub fn class_of(&self, p: &Butterfly) -> Result<Vec<BigInt>> {
        let from_p = compose(&self.replacement.iso.butterfly(), p)?;
        let s = strictify(&from_p).ok_or_else(|| Error::TransferFailure("morphism out of ℙ is not strict".into()))?;
        Ok(self.class_of_strict(&s))
    }
}

/// `⊕_n Hom_B(^nX, ^{n+k}Y)` with the differential `d_Y h − (−1)^k h d_X`.
#[derive(Clone, Debug)]
pub struct FullHomComplex {
    src: BComplex,
    dst: BComplex,
    start: i64,
    /// `homs[i][j]`: degree `start + i`, source object `x.start() + j`.
    homs: Vec<Vec<HomB>>,
    offsets: Vec<Vec<usize>>,
    pub complex: ChainComplexA,
}

pub fn full_hom_complex(x: &BComplex, y: &BComplex) -> Result<FullHomComplex> {
    let (lo, hi) = if x.is_empty() || y.is_empty() { (0, 0) } else { (y.start() - x.end() - 1, y.end() - x.start() + 1) };
    let mut homs = Vec::new();
    let mut offsets = Vec::new();
    let mut groups = Vec::new();
    for k in lo..=hi {
        let row: Vec<HomB> = if x.is_empty() {
            Vec::new()
        } else {
            (x.start()..=x.end()).map(|n| hom_group_b(&x.object(n), &y.object(n + k))).collect()
        };
        let parts: Vec<FgGroup> = row.iter().map(|h| h.group.clone()).collect();
        let sum = FgGroup::direct_sum(&parts);
        offsets.push(sum.offsets.clone());
        groups.push(sum.group);
        homs.push(row);
    }
    let mut f = FullHomComplex { src: x.clone(), dst: y.clone(), start: lo, homs, offsets, complex: ChainComplexA::zero() };
    let mut diffs = Vec::new();
    for k in lo..hi {
        let rank = groups[(k - lo) as usize].ambient_rank();
        let mut cols = Vec::new();
        for j in 0..rank {
            cols.push(f.differential_of(k, &unit(rank, j))?);
        }
        let t = &groups[(k + 1 - lo) as usize];
        diffs.push(GroupMap::new(groups[(k - lo) as usize].clone(), t.clone(), IntMatrix::from_columns(t.ambient_rank(), &cols))?);
    }
    f.complex = ChainComplexA::new(lo, groups, diffs)?;
    Ok(f)
}

impl FullHomComplex {
    pub fn src(&self) -> &BComplex {
        &self.src
    }

    pub fn dst(&self) -> &BComplex {
        &self.dst
    }

    pub fn hom(&self, k: i64, n: i64) -> &HomB {
        &self.homs[(k - self.start) as usize][(n - self.src.start()) as usize]
    }

    fn split(&self, k: i64, c: &[BigInt]) -> Vec<Vec<BigInt>> {
        let i = (k - self.start) as usize;
        self.homs[i]
            .iter()
            .zip(&self.offsets[i])
            .map(|(h, &o)| c[o..o + h.group.ambient_rank()].to_vec())
            .collect()
    }

    /// `d(h)_n φ_n = d_Y g_n − (−1)^k g_{n+1} φ_{n+1}⁻¹ d_X φ_n` with
    /// `g_n = h_n φ_n` the strict representatives on the replacements.
    fn differential_of(&self, k: i64, c: &[BigInt]) -> Result<Vec<BigInt>> {
        let (x, y) = (&self.src, &self.dst);
        let (a, b) = (x.start(), x.end());
        let parts = self.split(k, c);
        let mut out = Vec::new();
        for n in a..=b {
            let here = self.hom(k, n);
            let g = here.strict_rep(&parts[(n - a) as usize]).butterfly();
            let first = compose(&g, &y.diff(n + k + 1))?;
            let total = if n < b {
                let next = self.hom(k, n + 1);
                let g1 = next.strict_rep(&parts[(n + 1 - a) as usize]).butterfly();
                let phi = here.replacement.iso.butterfly();
                let back = next.replacement.iso.butterfly().flip();
                let second = compose(&compose(&compose(&phi, &x.diff(n + 1))?, &back)?, &g1)?;
                add(&first, &if sign(k) == 1 { negate(&second) } else { second })?
            } else {
                first
            };
            let st = strictify(&total).ok_or_else(|| Error::TransferFailure("morphism out of ℙ is not strict".into()))?;
            out.extend(self.hom(k + 1, n).class_of_strict(&st));
        }
        Ok(self.complex_term(k + 1).reduce(&out))
    }

    fn complex_term(&self, k: i64) -> FgGroup {
        let parts: Vec<FgGroup> = self.homs[(k - self.start) as usize].iter().map(|h| h.group.clone()).collect();
        FgGroup::direct_sum(&parts).group
    }

    /// The class of a sequence of strict morphisms `^nX → ^{n+k}Y`.
    pub fn class_of_strict(&self, k: i64, hs: &[StrictMorphism]) -> Vec<BigInt> {
        let x = &self.src;
        let mut out = Vec::new();
        for (i, h) in hs.iter().enumerate() {
            let hb = self.hom(k, x.start() + i as i64);
            out.extend(hb.class_of_strict(&h.after(&hb.replacement.iso)));
        }
        self.complex.term(k).reduce(&out)
    }
}

/// The inclusion of the strict hom into the full hom, degree by degree.
pub fn strict_inclusion(s: &StrictHomComplex, f: &FullHomComplex) -> Result<Vec<GroupMap>> {
    if s.start() != f.start || s.src() != f.src() || s.dst() != f.dst() {
        return Err(Error::MismatchedEndpoints("strict and full hom of different complexes".into()));
    }
    (s.start()..=s.end())
        .map(|k| {
            let g = &s.degree(k).group;
            let cols: Vec<Vec<BigInt>> =
                (0..g.ambient_rank()).map(|j| f.class_of_strict(k, &s.element(k, &unit(g.ambient_rank(), j)))).collect();
            let t = f.complex.term(k);
            GroupMap::new(g.clone(), t.clone(), IntMatrix::from_columns(t.ambient_rank(), &cols))
        })
        .collect()
}

/// Whether the inclusion is an isomorphism of complexes.
pub fn inclusion_is_iso(s: &StrictHomComplex, f: &FullHomComplex) -> Result<bool> {
    let incl = strict_inclusion(s, f)?;
    let iso = incl.iter().all(GroupMap::is_iso);
    let chain = (s.start()..s.end()).all(|k| {
        let i = (k - s.start()) as usize;
        let ds = s.d(k).expect("not the top degree");
        ds.then(&incl[i + 1]) == f.complex.diff(k).after(&incl[i])
    });
    Ok(iso && chain)
}

/// Whether every object has a free `X⁰` presentation.
pub fn is_semi_projective(x: &BComplex) -> bool {
    x.objects().iter().all(|o| o.x_0().relations().is_zero())
}

/// A complex of semi-projectives `𝐏` with a strict isomorphism `𝐏 → 𝐗`,
/// the differentials transported along the degreewise replacements.
pub fn semi_projective_complex(x: &BComplex) -> Result<(BComplex, BChainMap)> {
    if x.is_empty() {
        return Ok((BComplex::zero(), BChainMap::identity(x)));
    }
    let reps: Vec<SemiProjective> = x.objects().iter().map(semi_projective_replace).collect();
    let objects: Vec<BObject> = reps.iter().map(|r| r.object.clone()).collect();
    let mut diffs = Vec::new();
    for (i, n) in (x.start() + 1..=x.end()).enumerate() {
        let there = compose(&reps[i].iso.butterfly(), &x.diff(n))?;
        diffs.push(compose(&there, &reps[i + 1].iso.butterfly().flip())?);
    }
    let p = make_b_complex(x.start(), objects, diffs)?;
    let iso = BChainMap::new_strict(&p, x, x.start(), reps.into_iter().map(|r| r.iso).collect())?;
    Ok((p, iso))
}

/// `𝔯𝔥om(X, Y) = 𝔥om_st(𝐏, Y)` on the semi-projective replacement.
#[derive(Clone, Debug)]
pub struct RHom {
    pub replacement: BComplex,
    pub iso: BChainMap,
    pub strict: StrictHomComplex,
}

pub fn rhom(x: &BComplex, y: &BComplex) -> Result<RHom> {
    let (replacement, iso) = semi_projective_complex(x)?;
    let strict = strict_hom_complex(&replacement, y)?;
    Ok(RHom { replacement, iso, strict })
}

/// Whether `𝔯𝔥om(X, Y) ≅ 𝔥om_Ch(B)(X, Y)`: the strict hom on `𝐏` is all
/// of the full hom on `𝐏`, which coincides with the full hom on `X`.
pub fn rhom_matches_full(x: &BComplex, y: &BComplex) -> Result<bool> {
    let r = rhom(x, y)?;
    let on_p = full_hom_complex(&r.replacement, y)?;
    let on_x = full_hom_complex(x, y)?;
    Ok(inclusion_is_iso(&r.strict, &on_p)? && on_p.complex == on_x.complex)
}

/// Whether a strict morphism is null-homotopic; equivalent to being the
/// zero morphism of `B`.
pub fn is_null_homotopic(f: &StrictMorphism) -> bool {
    let (x, y) = (&f.src, &f.dst);
    crate::hom::solve_commuting(x.x_0(), y.x_m1(), &[(x.d().clone(), f.f_m1.clone())], &[(y.d().clone(), f.f_0.clone())])
        .map(|s| s.particular.is_some())
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::b::{butterfly_equal, classify_morphism, is_zero_morphism};
    use crate::decorated::is_compatible;
    use crate::imat;
    use crate::tot::tot;

    fn z() -> FgGroup {
        FgGroup::free(1)
    }

    fn times(src: &FgGroup, dst: &FgGroup, k: i64) -> GroupMap {
        GroupMap::new(src.clone(), dst.clone(), imat![1; [k]]).unwrap()
    }

    fn obj(k: i64) -> BObject {
        BObject::new(times(&z(), &z(), k)).unwrap()
    }

    fn d1() -> DecComplex {
        let c = ChainComplexA::new(0, vec![z(), z()], vec![times(&z(), &z(), 2)]).unwrap();
        DecComplex::new(c, vec![Subgroup::whole(&z()), Subgroup::zero(&z())]).unwrap()
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn single_free_group() {
        let c = DecComplex::zero_decoration(&ChainComplexA::concentrated(z(), 0));
        let h = hom_complex_dec(&c, &c);
        for k in h.start()..=h.end() {
            let g = h.degree(k).hom.as_group().clone();
            if k == 0 {
                assert_eq!(g, z());
            } else {
                assert!(g.is_trivial());
            }
            assert!(h.degree(k).m.is_zero());
        }
        assert!(h.is_complex());
    }

    #[test]
    fn zero_to_full_is_everything() {
        let c = ChainComplexA::new(0, vec![z(), FgGroup::cyclic(3)], vec![times(&z(), &FgGroup::cyclic(3), 1)]).unwrap();
        let h = hom_complex_dec(&DecComplex::zero_decoration(&c), &DecComplex::full_decoration(&c));
        for k in h.start()..=h.end() {
            let deg = h.degree(k);
            assert!(deg.hom.is_whole() && deg.m.is_whole());
        }
    }

    #[test]
    fn d1_endomorphisms_match_enumeration() {
        let h = hom_complex_dec(&d1(), &d1());
        let deg = h.degree(0);
        assert!(deg.hom.as_group().is_isomorphic(&z()));
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                // conditions (1) and (2) on D1 reduce to 2a − 2b = 0
                let allowed = 2 * a - 2 * b == 0;
                let maps = vec![times(&z(), &z(), a), times(&z(), &z(), b)];
                assert_eq!(deg.hom.contains(&h.coords_of(0, &maps)), allowed, "({a}, {b})");
            }
        }
        assert!(enrich_check(&h));
    }

    #[test]
    fn enrich_needs_compatibility() {
        let e = ChainComplexA::concentrated(FgGroup::cyclic(2), 0);
        let x = DecComplex::zero_decoration(&e);
        let y = DecComplex::full_decoration(&e);
        assert!(is_compatible(&x) && !is_compatible(&y));
        let h = hom_complex_dec(&x, &y);
        assert!(!enrich_check(&h));
        assert!(matches!(dg_quotient(&h), Err(Error::PreconditionViolated(_))));
        let zero = hom_complex_dec(&DecComplex::zero(), &DecComplex::zero());
        assert!(enrich_check(&zero));
        assert!(dg_quotient(&zero).unwrap().complex.terms().iter().all(FgGroup::is_trivial));
    }

    #[test]
    fn dg_equivalence_on_d1() {
        let eq = dg_equivalence(&d1(), &d1()).unwrap();
        assert!(eq.holds(), "{eq:?}");
        let x = g_inverse(&d1()).unwrap();
        let s = strict_hom_complex(&x, &x).unwrap();
        let q = dg_quotient(&hom_complex_dec(&d1(), &d1())).unwrap();
        assert!(s.degree(0).group.is_isomorphic(&q.complex.term(0)));
        assert!(s.degree(0).group.is_isomorphic(&FgGroup::cyclic(2)));
    }

    #[test]
    fn strict_cycles_are_chain_maps() {
        let x = BComplex::concentrated(obj(2), 0);
        let s = strict_hom_complex(&x, &x).unwrap();
        let g = &s.degree(0).group;
        assert!(g.is_isomorphic(&FgGroup::cyclic(2)));
        for c in g.enumerate(10).unwrap() {
            let hs = s.element(0, &c);
            assert!(BChainMap::new_strict(&x, &x, 0, hs).is_ok());
        }
    }

    #[test]
    fn semi_projective_example() {
        let x = BObject::new(GroupMap::zero(&z(), &FgGroup::cyclic(2))).unwrap();
        let sp = semi_projective_replace(&x);
        assert_eq!(sp.object.d().lift(), &imat![2; [2, 0]]);
        assert_eq!(sp.object.x_0(), &z());
        assert_eq!(sp.object.x_m1(), &FgGroup::free(2));
        assert_eq!(sp.iso.f_m1.lift(), &imat![2; [0, 1]]);
        assert!(classify_morphism(&sp.iso.butterfly()).is_iso);
        assert!(sp.object.h_m1().as_group().is_isomorphic(&z()));
        assert!(sp.object.h_0().0.is_isomorphic(&FgGroup::cyclic(2)));
        let free = obj(3);
        assert_eq!(semi_projective_replace(&free).object, free);
        assert_eq!(semi_projective_replace(&BObject::zero()).object, BObject::zero());
    }

    /// Strict maps `[Z →2 Z] → [Z →0 Z/2]` with `a ∈ [-4, 4]`, modulo
    /// `a ~ a + 2s`.
    fn brute_force_classes() -> usize {
        let mut classes = Vec::new();
        for a in -4i64..=4 {
            for b in 0..2 {
                let key = (a.rem_euclid(2), b);
                if !classes.contains(&key) {
                    classes.push(key);
                }
            }
        }
        classes.len()
    }

    #[test]
    fn hom_b_examples() {
        let y = obj(2);
        assert!(hom_group_b(&BObject::zero(), &y).group.is_trivial());
        let h = hom_group_b(&y, &y);
        assert!(h.group.is_isomorphic(&FgGroup::cyclic(2)));
        let id = h.class_of(&Butterfly::identity(&y)).unwrap();
        assert!(!h.group.is_zero_element(&id));
        assert!(butterfly_equal(&h.representative(&id), &Butterfly::identity(&y)).unwrap());
        let t = BObject::new(GroupMap::zero(&FgGroup::zero(), &FgGroup::cyclic(2))).unwrap();
        let u = BObject::new(GroupMap::zero(&z(), &FgGroup::cyclic(2))).unwrap();
        let h = hom_group_b(&t, &u);
        assert_eq!(h.group.order(), Some(BigInt::from(brute_force_classes())));
        for c in h.group.enumerate(10).unwrap() {
            let zero = h.group.is_zero_element(&c);
            assert_eq!(is_zero_morphism(&h.representative(&c)), zero);
            assert_eq!(is_null_homotopic(&h.strict_rep(&c)), zero);
        }
    }

    #[test]
    fn injproj_and_rhom() {
        let x = BComplex::concentrated(obj(2), 0);
        let y = tot(&x);
        assert!(is_compatible(&y));
        let s = strict_hom_complex(&x, &x).unwrap();
        let f = full_hom_complex(&x, &x).unwrap();
        assert!(is_semi_projective(&x));
        assert!(inclusion_is_iso(&s, &f).unwrap());
        let t = BObject::new(GroupMap::zero(&z(), &FgGroup::cyclic(2))).unwrap();
        let x2 = BComplex::concentrated(t, 0);
        assert!(!is_semi_projective(&x2));
        assert!(rhom_matches_full(&x2, &x).unwrap());
        let r = rhom(&x, &x).unwrap();
        assert_eq!(r.strict.complex(), s.complex());
        let v = bi(&[1]);
        assert_eq!(v.len(), 1);
    }
}
