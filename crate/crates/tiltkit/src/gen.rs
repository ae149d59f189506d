//! Seeded random instances. Every trial draws from its own ChaCha stream,
//! keyed by the master seed and a tag and indexed by the trial number, so
//! trials can run in any order.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tiltkit_core::b::{compose, BObject, Butterfly, StrictMorphism};
use tiltkit_core::ctilt::{make_c_object, qprime, CObject};
use tiltkit_core::decorated::{dec_hom_solution, ChainComplexA, DecComplex, DecMap};
use tiltkit_core::dg::semi_projective_replace;
use tiltkit_core::tot::{g_map, make_b_complex, tot, BChainMap, BComplex};
use tiltkit_core::{FgGroup, GroupMap, HomSpace, IntMatrix, LinearSystem, Subgroup, Term};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_ambient_rank: usize,
    pub max_relations: usize,
    pub entry_bound: i64,
    pub max_complex_length: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { max_ambient_rank: 3, max_relations: 4, entry_bound: 9, max_complex_length: 4 }
    }
}

impl std::fmt::Display for Bounds {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{},{},{}", self.max_ambient_rank, self.max_relations, self.entry_bound, self.max_complex_length)
    }
}

impl Bounds {
    /// Parses `rank,rels,entry,len`.
    pub fn parse(s: &str) -> Result<Bounds, CliError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || CliError::Usage(format!("--bounds expects four positive integers rank,rels,entry,len; got {s:?}"));
        if parts.len() != 4 {
            return Err(bad());
        }
        let nums: Vec<i64> = parts.iter().map(|p| p.parse::<i64>().map_err(|_| bad())).collect::<Result<_, _>>()?;
        if nums.iter().any(|&x| x <= 0) {
            return Err(bad());
        }
        Ok(Bounds {
            max_ambient_rank: nums[0] as usize,
            max_relations: nums[1] as usize,
            entry_bound: nums[2],
            max_complex_length: nums[3] as usize,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub bounds: Bounds,
    pub trials: usize,
}

impl Default for GeneratorConfig {
    fn default() -> GeneratorConfig {
        GeneratorConfig { seed: 42, bounds: Bounds::default(), trials: 200 }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A stable 64-bit tag for a name (FNV-1a).
pub fn tag(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub struct Gen {
    rng: ChaCha8Rng,
    pub bounds: Bounds,
}

impl Gen {
    /// The stream for trial `index` of the stream family `tag`.
    pub fn for_trial(seed: u64, tag: u64, index: u64, bounds: Bounds) -> Gen {
        let mut key = [0u8; 32];
        let mut s = splitmix(seed ^ splitmix(tag));
        for chunk in key.chunks_mut(8) {
            s = splitmix(s);
            chunk.copy_from_slice(&s.to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(index);
        Gen { rng, bounds }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n.max(1))
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn entry(&mut self) -> i64 {
        let e = self.bounds.entry_bound;
        self.rng.gen_range(-e..=e)
    }

    fn small(&mut self) -> i64 {
        let e = self.bounds.entry_bound.min(3);
        self.rng.gen_range(-e..=e)
    }

    fn matrix(&mut self, rows: usize, cols: usize) -> IntMatrix {
        let data = (0..rows * cols).map(|_| BigInt::from(self.entry())).collect();
        IntMatrix::from_vec(rows, cols, data)
    }

    fn unimodular(&mut self, n: usize) -> IntMatrix {
        let mut u = IntMatrix::identity(n);
        if n < 2 {
            return u;
        }
        for _ in 0..2 * n {
            let (i, j) = (self.below(n), self.below(n));
            if i == j {
                continue;
            }
            let c = BigInt::from(self.small());
            for r in 0..n {
                let v = &u[(r, i)] + &c * &u[(r, j)];
                u[(r, i)] = v;
            }
        }
        u
    }

    /// Ambient rank in `[0, max]` with up to `max_relations` random relations.
    pub fn group(&mut self) -> FgGroup {
        let r = self.below(self.bounds.max_ambient_rank + 1);
        let k = self.below(self.bounds.max_relations + 1);
        FgGroup::new(self.matrix(r, if r == 0 { 0 } else { k }))
    }

    /// A nonzero finite group: triangular relations with nonzero diagonal.
    pub fn finite_group(&mut self) -> FgGroup {
        let r = 1 + self.below(self.bounds.max_ambient_rank);
        let extra = self.below(self.bounds.max_relations.saturating_sub(r) + 1);
        let mut m = self.matrix(r, r + extra);
        for i in 0..r {
            for j in 0..i {
                m[(i, j)] = BigInt::from(0);
            }
            let mut d = self.entry();
            while d == 0 {
                d = self.entry();
            }
            m[(i, i)] = BigInt::from(d);
        }
        FgGroup::new(m)
    }

    /// A free group, sometimes with a redundant presentation.
    pub fn free_group(&mut self) -> FgGroup {
        let r = self.below(self.bounds.max_ambient_rank + 1);
        let k = self.below(r.min(self.bounds.max_relations) + 1);
        let u = self.unimodular(r);
        FgGroup::new(u.select_cols(0..k))
    }

    /// A random element of `Hom(g, h)`.
    pub fn hom(&mut self, g: &FgGroup, h: &FgGroup) -> GroupMap {
        self.hom_in(&HomSpace::new(g, h))
    }

    pub fn hom_in(&mut self, space: &HomSpace) -> GroupMap {
        let n = space.group().ambient_rank();
        let c: Vec<BigInt> = (0..n).map(|_| BigInt::from(self.small())).collect();
        space.element(&c)
    }

    pub fn element(&mut self, g: &FgGroup) -> Vec<BigInt> {
        let v: Vec<BigInt> = (0..g.ambient_rank()).map(|_| BigInt::from(self.entry())).collect();
        g.reduce(&v)
    }

    pub fn subgroup(&mut self, g: &FgGroup) -> Subgroup {
        let k = self.below(g.ambient_rank() + 2);
        let cols: Vec<Vec<BigInt>> = (0..k).map(|_| self.element(g)).collect();
        Subgroup::new(g, &IntMatrix::from_columns(g.ambient_rank(), &cols))
    }

    /// A random combination of the homogeneous solutions of `sys`.
    fn solution(&mut self, sys: &LinearSystem) -> Vec<GroupMap> {
        let sol = sys.solve();
        let gens = sol.homogeneous.generators();
        let mut x = vec![BigInt::from(0); sol.param.ambient_rank()];
        for c in gens.columns() {
            let k = BigInt::from(self.small());
            for (xi, ci) in x.iter_mut().zip(&c) {
                *xi += &k * ci;
            }
        }
        sol.maps_of(&sol.param.reduce(&x))
    }

    pub fn b_object(&mut self) -> BObject {
        for _ in 0..24 {
            let x0 = self.group();
            let xm1 = if self.coin(0.5) { self.free_group() } else { self.group() };
            if let Ok(o) = BObject::new(self.hom(&xm1, &x0)) {
                return o;
            }
        }
        let x0 = self.finite_group();
        let xm1 = self.free_group();
        BObject::new(self.hom(&xm1, &x0)).expect("free source, finite target")
    }

    /// A random strict morphism `x → y`.
    pub fn strict(&mut self, x: &BObject, y: &BObject) -> StrictMorphism {
        let mut sys = LinearSystem::new(vec![HomSpace::new(x.x_m1(), y.x_m1()), HomSpace::new(x.x_0(), y.x_0())]);
        sys.equation(x.x_m1(), y.x_0(), vec![Term::new(1).pre(x.d()), Term::new(0).post(y.d()).times(-1)], None)
            .expect("well-typed system");
        let m = self.solution(&sys);
        StrictMorphism { src: x.clone(), dst: y.clone(), f_m1: m[0].clone(), f_0: m[1].clone() }
    }

    /// A strict morphism, or a roof `x ≅ ℙ → y` read as a butterfly, which
    /// is generally not strict.
    pub fn butterfly(&mut self, x: &BObject, y: &BObject) -> Butterfly {
        match self.below(6) {
            0 => Butterfly::zero(x, y),
            1 | 2 => self.strict(x, y).butterfly(),
            _ => {
                let sp = semi_projective_replace(x);
                let g = self.strict(&sp.object, y);
                compose(&sp.iso.butterfly().flip(), &g.butterfly()).expect("composable")
            }
        }
    }

    pub fn complex_length(&mut self) -> usize {
        1 + self.below(self.bounds.max_complex_length)
    }

    /// Objects with strict differentials whose componentwise composites
    /// vanish; some objects are then swapped for their semi-projective
    /// replacements so that transported differentials need not be strict.
    pub fn b_complex(&mut self) -> BComplex {
        let len = self.complex_length();
        self.b_complex_of_length(len)
    }

    pub fn b_complex_of_length(&mut self, len: usize) -> BComplex {
        let start = self.below(3) as i64 - 1;
        let objects: Vec<BObject> = (0..len).map(|_| self.b_object()).collect();
        let mut diffs: Vec<StrictMorphism> = Vec::new();
        for i in 0..len.saturating_sub(1) {
            let (x, y) = (&objects[i], &objects[i + 1]);
            let mut sys = LinearSystem::new(vec![HomSpace::new(x.x_m1(), y.x_m1()), HomSpace::new(x.x_0(), y.x_0())]);
            sys.equation(x.x_m1(), y.x_0(), vec![Term::new(1).pre(x.d()), Term::new(0).post(y.d()).times(-1)], None)
                .expect("well-typed system");
            if let Some(prev) = diffs.last() {
                sys.equation(prev.src.x_m1(), y.x_m1(), vec![Term::new(0).pre(&prev.f_m1)], None).expect("well-typed system");
                sys.equation(prev.src.x_0(), y.x_0(), vec![Term::new(1).pre(&prev.f_0)], None).expect("well-typed system");
            }
            let m = self.solution(&sys);
            diffs.push(StrictMorphism { src: x.clone(), dst: y.clone(), f_m1: m[0].clone(), f_0: m[1].clone() });
        }
        let swap: Vec<bool> = (0..len).map(|_| self.coin(0.3)).collect();
        let reps: Vec<(BObject, Butterfly)> = objects
            .iter()
            .zip(&swap)
            .map(|(o, &s)| {
                if s {
                    let sp = semi_projective_replace(o);
                    (sp.object, sp.iso.butterfly())
                } else {
                    (o.clone(), Butterfly::identity(o))
                }
            })
            .collect();
        let transported: Vec<Butterfly> = diffs
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let d = d.butterfly();
                if !swap[i] && !swap[i + 1] {
                    return d;
                }
                let there = compose(&reps[i].1, &d).expect("composable");
                compose(&there, &reps[i + 1].1.flip()).expect("composable")
            })
            .collect();
        make_b_complex(start, reps.into_iter().map(|r| r.0).collect(), transported).expect("composites vanish")
    }

    /// A chain complex of groups with `δ∘δ = 0` imposed degree by degree.
    pub fn chain_complex(&mut self) -> ChainComplexA {
        let len = self.complex_length();
        let start = self.below(3) as i64 - 1;
        let terms: Vec<FgGroup> = (0..len).map(|_| self.group()).collect();
        let mut diffs: Vec<GroupMap> = Vec::new();
        for i in 0..len - 1 {
            let mut sys = LinearSystem::new(vec![HomSpace::new(&terms[i], &terms[i + 1])]);
            if let Some(prev) = diffs.last() {
                sys.equation(prev.src(), &terms[i + 1], vec![Term::new(0).pre(prev)], None).expect("well-typed system");
            }
            let d = self.solution(&sys).remove(0);
            diffs.push(GroupMap::new(terms[i].clone(), terms[i + 1].clone(), d.lift().clone()).expect("same presentations"));
        }
        ChainComplexA::new(start, terms, diffs).expect("δ∘δ = 0 by construction")
    }

    pub fn dec_complex_arbitrary(&mut self) -> DecComplex {
        let c = self.chain_complex();
        let deco = c.terms().to_vec().iter().map(|g| self.subgroup(g)).collect();
        DecComplex::new(c, deco).expect("decorations live in the terms")
    }

    /// `Tot` of a random complex in `B`; compatible by construction.
    pub fn dec_complex_compatible(&mut self) -> DecComplex {
        tot(&self.b_complex()).trimmed()
    }

    pub fn dec_complex_compatible_of_length(&mut self, len: usize) -> DecComplex {
        tot(&self.b_complex_of_length(len)).trimmed()
    }

    /// A random decorated chain map; the identity now and then.
    pub fn dec_map(&mut self, x: &DecComplex, y: &DecComplex) -> DecMap {
        let (lo, sol) = dec_hom_solution(x, y);
        let gens = sol.homogeneous.generators();
        let mut v = vec![BigInt::from(0); sol.param.ambient_rank()];
        for c in gens.columns() {
            let k = BigInt::from(self.small());
            for (vi, ci) in v.iter_mut().zip(&c) {
                *vi += &k * ci;
            }
        }
        let comps = sol.maps_of(&v);
        let comps = (0..comps.len())
            .map(|i| {
                let n = lo + i as i64;
                GroupMap::new(x.term(n), y.term(n), comps[i].lift().clone()).expect("same presentations")
            })
            .collect();
        DecMap::from_components(x, y, lo, comps).expect("solutions are decorated chain maps")
    }

    /// `[K1 ⊆ K2 ⊆ E ⊇ M]` by rejection, falling back to `Q′` of a group.
    pub fn c_object(&mut self) -> CObject {
        for _ in 0..24 {
            let e = self.group();
            let k2 = self.subgroup(&e);
            let inner = self.subgroup(k2.as_group());
            let k1 = k2.push_forward(&inner);
            let m = self.subgroup(&e);
            if let Ok(c) = make_c_object(&e, k1, k2, m) {
                return c;
            }
        }
        qprime(&self.group()).object
    }

    /// A strict chain map `G(x) → G(y)` transported from a random
    /// decorated map between compatible complexes.
    pub fn b_chain_map(&mut self) -> BChainMap {
        let x = self.dec_complex_compatible();
        let y = if self.coin(0.3) { x.clone() } else { self.dec_complex_compatible() };
        let f = if x == y && self.coin(0.5) { DecMap::identity(&x) } else { self.dec_map(&x, &y) };
        g_map(&f).expect("compatible endpoints")
    }
}

pub const KINDS: [&str; 10] = [
    "group",
    "map",
    "b_object",
    "butterfly",
    "b_complex",
    "dec_complex(compatible)",
    "dec_complex(arbitrary)",
    "c_object",
    "dec_map",
    "b_chain_map",
];

/// One instance of a generator kind, as JSON.
pub fn generate_one(kind: &str, g: &mut Gen) -> Result<serde_json::Value, CliError> {
    use crate::json::Json;
    Ok(match kind {
        "group" => g.group().to_value(),
        "map" => {
            let (a, b) = (g.group(), g.group());
            g.hom(&a, &b).to_value()
        }
        "b_object" => g.b_object().to_value(),
        "butterfly" => {
            let (x, y) = (g.b_object(), g.b_object());
            g.butterfly(&x, &y).to_value()
        }
        "b_complex" => g.b_complex().to_value(),
        "dec_complex" | "dec_complex(compatible)" | "compatible" => g.dec_complex_compatible().to_value(),
        "dec_complex(arbitrary)" | "arbitrary" => g.dec_complex_arbitrary().to_value(),
        "c_object" => g.c_object().to_value(),
        "dec_map" => {
            let x = g.dec_complex_arbitrary();
            let y = if g.coin(0.5) { x.clone() } else { g.dec_complex_arbitrary() };
            g.dec_map(&x, &y).to_value()
        }
        "b_chain_map" => g.b_chain_map().to_value(),
        other => return Err(CliError::UnknownKind(other.into())),
    })
}

pub fn generate(kind: &str, cfg: &GeneratorConfig, count: usize) -> Result<Vec<serde_json::Value>, CliError> {
    (0..count as u64).map(|i| generate_one(kind, &mut Gen::for_trial(cfg.seed, tag(kind), i, cfg.bounds))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use tiltkit_core::decorated::is_compatible;

    fn gen(i: u64) -> Gen {
        Gen::for_trial(7, tag("test"), i, Bounds::default())
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let mut f = gen(3);
        let a: Vec<i64> = (0..8).map(|_| f.entry()).collect();
        let mut g = gen(3);
        let b: Vec<i64> = (0..8).map(|_| g.entry()).collect();
        let mut h = gen(4);
        let c: Vec<i64> = (0..8).map(|_| h.entry()).collect();
        assert_eq!(a, b);
        assert_ne!(b, c);
    }

    #[test]
    fn bounds_parse() {
        assert_eq!(Bounds::parse("3,4,9,4").unwrap(), Bounds::default());
        assert!(Bounds::parse("3,4,9").is_err());
        assert!(Bounds::parse("3,0,9,4").is_err());
    }

    #[test]
    fn generators_meet_their_contracts() {
        for i in 0..20 {
            let mut g = gen(i);
            assert!(g.finite_group().is_torsion());
            assert!(g.free_group().is_free());
            let o = g.b_object();
            assert!(BObject::new(o.d().clone()).is_ok());
            let d = g.dec_complex_compatible();
            assert!(is_compatible(&d));
            let x = g.b_complex();
            assert!(make_b_complex(x.start(), x.objects().to_vec(), x.interior_diffs()).is_ok() || x.is_empty());
        }
    }

    #[test]
    fn unknown_kind() {
        let cfg = GeneratorConfig::default();
        assert!(matches!(generate("nope", &cfg, 1), Err(CliError::UnknownKind(_))));
        assert_eq!(generate("group", &cfg, 3).unwrap(), generate("group", &cfg, 3).unwrap());
    }
}
