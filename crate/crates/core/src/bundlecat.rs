//! Homogeneous bundles as finite sums of blocks.
//!
//! A bundle is a list of summands, one per Galois orbit of characters. Each
//! carries either an explicit unipotent module (only on orbits with
//! `s = q = 1` in a regime where modules are available) or rank-only data:
//! the rank of the module together with the ranks of its indecomposable
//! summands when they are known.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactfield::FieldSpec;
use crate::galois::{check_insep_degree, CharacterOrbit, CharacterPoint, GaloisModule};
use crate::nilmod::{decompose, ext_dims, hom_dim, Flavor, NilModule};

/// Which kind of block data a context supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Characteristic 0: modules over the vector group.
    Additive,
    /// Ordinary (`r = g`) over a separably closed field of characteristic p.
    Unipotent,
    /// Anything else: ranks only.
    RankOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundContext {
    g: usize,
    p: u64,
    r: usize,
    sep_closed: bool,
    characters: GaloisModule,
    field: FieldSpec,
}

impl GroundContext {
    /// `p = 1` means characteristic 0. `field` defaults to `Q` or `GF(p)`.
    pub fn new(
        g: usize,
        p: u64,
        r: usize,
        sep_closed: bool,
        characters: GaloisModule,
        field: Option<FieldSpec>,
    ) -> Result<Self> {
        if g == 0 {
            return Err(Error::input("g must be at least 1"));
        }
        if p != 1 && !crate::exactfield::is_prime(p) {
            return Err(Error::input(format!("characteristic exponent {p} is neither 1 nor a prime")));
        }
        if r > g {
            return Err(Error::input(format!("p-rank {r} exceeds g = {g}")));
        }
        if let Some(cp) = characters.p() {
            if cp != p {
                return Err(Error::input(format!("character module declares p = {cp}, context p = {p}")));
            }
        }
        if sep_closed && !characters.is_trivial_action() {
            return Err(Error::input("a separably closed ground field needs a trivial Galois action"));
        }
        let field = match field {
            Some(f) => f,
            None if p == 1 => FieldSpec::rationals(),
            None => FieldSpec::prime(p)?,
        };
        let expected = if p == 1 { 0 } else { p };
        if field.characteristic() != expected {
            return Err(Error::input(format!("field {field} has the wrong characteristic for p = {p}")));
        }
        Ok(GroundContext { g, p, r, sep_closed, characters, field })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn sep_closed(&self) -> bool {
        self.sep_closed
    }

    pub fn characters(&self) -> &GaloisModule {
        &self.characters
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn regime(&self) -> Regime {
        if self.p == 1 {
            Regime::Additive
        } else if self.r == self.g && self.sep_closed {
            Regime::Unipotent
        } else {
            Regime::RankOnly
        }
    }

    pub fn flavor(&self) -> Option<Flavor> {
        match self.regime() {
            Regime::Additive => Some(Flavor::Additive),
            Regime::Unipotent => Some(Flavor::Unipotent),
            Regime::RankOnly => None,
        }
    }

    /// Whether explicit module data may sit on `orbit`.
    pub fn module_allowed(&self, orbit: &CharacterOrbit) -> bool {
        self.regime() != Regime::RankOnly && orbit.s() == 1 && orbit.q == 1
    }

    pub fn check_orbit(&self, orbit: &CharacterOrbit) -> Result<()> {
        self.characters.check_orbit(orbit)?;
        check_insep_degree(orbit.q, Some(self.p))
    }

    pub fn orbit_of(&self, x: &CharacterPoint) -> Result<CharacterOrbit> {
        check_insep_degree(x.q, Some(self.p))?;
        self.characters.orbit_of(x)
    }

    pub fn zero_orbit(&self) -> CharacterOrbit {
        CharacterOrbit { points: vec![vec![0; self.characters.orders().len()]], q: 1 }
    }

    pub fn trivial_module(&self, rank: usize) -> Option<NilModule> {
        self.flavor().map(|fl| NilModule::trivial(&self.field, fl, self.g, rank))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "g": self.g,
            "p": self.p,
            "r": self.r,
            "sep_closed": self.sep_closed,
            "characters": self.characters.to_json(),
            "field": self.field,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            g: usize,
            p: u64,
            #[serde(default)]
            r: usize,
            #[serde(default)]
            sep_closed: bool,
            characters: Value,
            #[serde(default)]
            field: Option<FieldSpec>,
        }
        let w: Wire = serde_json::from_value(v.clone()).map_err(|e| Error::input(format!("context: {e}")))?;
        let characters = GaloisModule::from_json(&w.characters)?;
        Self::new(w.g, w.p, w.r, w.sep_closed, characters, w.field)
    }
}

impl Serialize for GroundContext {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroundContext {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        GroundContext::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// The unipotent part of a block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockData {
    Module(NilModule),
    /// `summands`: ranks of the indecomposable summands, ascending, when
    /// known. All ones means semisimple.
    RankOnly { rank: usize, summands: Option<Vec<usize>> },
}

impl BlockData {
    pub fn semisimple(rank: usize) -> Self {
        BlockData::RankOnly { rank, summands: Some(vec![1; rank]) }
    }

    pub fn indecomposable(rank: usize) -> Self {
        BlockData::RankOnly { rank, summands: Some(vec![rank]) }
    }

    pub fn unknown(rank: usize) -> Self {
        BlockData::RankOnly { rank, summands: None }
    }

    pub fn rank(&self) -> usize {
        match self {
            BlockData::Module(m) => m.rank(),
            BlockData::RankOnly { rank, .. } => *rank,
        }
    }

    /// `None` when the data does not determine it.
    pub fn is_semisimple(&self) -> Option<bool> {
        match self {
            BlockData::Module(m) => Some(m.is_trivial()),
            BlockData::RankOnly { summands: Some(s), .. } => Some(s.iter().all(|&k| k == 1)),
            BlockData::RankOnly { summands: None, rank } => (*rank <= 1).then_some(true),
        }
    }

    /// Ranks of indecomposable summands, ascending.
    pub fn summand_ranks(&self) -> Option<Vec<usize>> {
        match self {
            BlockData::Module(m) => {
                let d = decompose(m, 0).ok()?;
                Some(d.summands.iter().flat_map(|s| vec![s.module.rank(); s.multiplicity]).collect())
            }
            BlockData::RankOnly { summands, rank } => {
                summands.clone().or_else(|| (*rank <= 1).then(|| vec![1; *rank]))
            }
        }
    }

    fn dual(&self) -> Self {
        match self {
            BlockData::Module(m) => BlockData::Module(m.dual()),
            other => other.clone(),
        }
    }

    fn merge(self, other: BlockData) -> BlockData {
        match (self, other) {
            (BlockData::Module(a), BlockData::Module(b)) => {
                BlockData::Module(a.direct_sum(&b).expect("modules of one context are compatible"))
            }
            (BlockData::Module(a), b) | (b, BlockData::Module(a)) if b.is_semisimple() == Some(true) => {
                let t = NilModule::trivial(a.field(), a.flavor(), a.g(), b.rank());
                BlockData::Module(a.direct_sum(&t).expect("compatible"))
            }
            (a, b) => {
                let rank = a.rank() + b.rank();
                let summands = match (a.summand_ranks(), b.summand_ranks()) {
                    (Some(mut x), Some(y)) => {
                        x.extend(y);
                        x.sort_unstable();
                        Some(x)
                    }
                    _ => None,
                };
                BlockData::RankOnly { rank, summands }
            }
        }
    }

    /// Counts used for Hom against semisimple data: number of simple
    /// composition factors in the socle and in the top.
    fn socle_top(&self) -> Option<(usize, usize)> {
        match self {
            BlockData::Module(m) => {
                let parts = m.nil_parts();
                let rad = if m.rank() == 0 {
                    0
                } else {
                    parts.iter().skip(1).fold(parts[0].clone(), |acc, n| acc.hstack(n)).rank()
                };
                Some((m.socle_dim(), m.rank() - rad))
            }
            // Rank-only indecomposables arise from induction and have a
            // simple socle and a simple top.
            BlockData::RankOnly { .. } => self.summand_ranks().map(|s| (s.len(), s.len())),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            BlockData::Module(m) => json!({"module": m.to_json()}),
            BlockData::RankOnly { rank, summands } => {
                if summands.as_ref().is_some_and(|s| s.iter().all(|&k| k == 1)) {
                    json!({"rank_only": rank})
                } else {
                    json!({"rank_only": rank, "summand_ranks": summands})
                }
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::input("block data must be an object"))?;
        if let Some(m) = obj.get("module") {
            if obj.len() != 1 {
                return Err(Error::input("module block data takes no other keys"));
            }
            return Ok(BlockData::Module(NilModule::from_json(m)?));
        }
        let rank = obj
            .get("rank_only")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::input("block data needs \"module\" or \"rank_only\""))? as usize;
        for key in obj.keys() {
            if key != "rank_only" && key != "summand_ranks" {
                return Err(Error::input(format!("unknown block data key {key:?}")));
            }
        }
        let summands = match obj.get("summand_ranks") {
            None => Some(vec![1; rank]),
            Some(Value::Null) => None,
            Some(s) => {
                let mut s: Vec<usize> =
                    serde_json::from_value(s.clone()).map_err(|e| Error::input(format!("summand_ranks: {e}")))?;
                s.sort_unstable();
                if s.iter().sum::<usize>() != rank || s.contains(&0) {
                    return Err(Error::input(format!("summand_ranks {s:?} do not partition rank {rank}")));
                }
                Some(s)
            }
        };
        Ok(BlockData::RankOnly { rank, summands })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub orbit: CharacterOrbit,
    pub data: BlockData,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogBundle {
    ctx: GroundContext,
    summands: Vec<Summand>,
}

/// One indecomposable summand type within a block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSummand {
    /// Rank of one copy as a bundle (`s · q ·` module rank).
    pub rank: usize,
    pub multiplicity: usize,
    pub indecomposable: Option<bool>,
    pub loewy_length: Option<usize>,
    pub module: Option<NilModule>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub orbit: CharacterOrbit,
    pub bundle: HomogBundle,
    pub summands: Vec<BlockSummand>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// `None` when rank-only data leaves it undetermined.
    pub semisimple: Option<bool>,
    pub unipotent: bool,
    pub essentially_finite: bool,
    /// `n` such that pulling back along multiplication by `n` trivializes
    /// the multiplicative part: the lcm of the orders of all orbit points.
    pub finiteness_exponent: u64,
    pub irreducible: bool,
}

impl HomogBundle {
    /// Validates every summand against the context and normalizes: equal
    /// orbits merged, empty summands dropped, sorted by least point.
    pub fn new(ctx: GroundContext, summands: Vec<Summand>) -> Result<Self> {
        for s in &summands {
            ctx.check_orbit(&s.orbit)?;
            if let BlockData::Module(m) = &s.data {
                if !ctx.module_allowed(&s.orbit) {
                    return Err(Error::input(format!(
                        "module data is not available on orbit {} in this context",
                        s.orbit
                    )));
                }
                if m.field() != ctx.field() || Some(m.flavor()) != ctx.flavor() || m.g() != ctx.g() {
                    return Err(Error::input(format!(
                        "module on orbit {} must be {} over {} with g = {}",
                        s.orbit,
                        ctx.flavor().expect("module regime"),
                        ctx.field(),
                        ctx.g()
                    )));
                }
                m.ensure_valid()?;
            }
        }
        Ok(Self::normalized(ctx, summands))
    }

    fn normalized(ctx: GroundContext, summands: Vec<Summand>) -> Self {
        let mut by_orbit: BTreeMap<Vec<u64>, Summand> = BTreeMap::new();
        for s in summands {
            if s.data.rank() == 0 {
                continue;
            }
            let key = s.orbit.least().to_vec();
            match by_orbit.remove(&key) {
                Some(prev) => {
                    let q = prev.orbit.q;
                    debug_assert_eq!(q, s.orbit.q, "one orbit, one inseparable degree");
                    by_orbit.insert(key, Summand { orbit: prev.orbit, data: prev.data.merge(s.data) });
                }
                None => {
                    by_orbit.insert(key, s);
                }
            }
        }
        HomogBundle { ctx, summands: by_orbit.into_values().collect() }
    }

    pub fn zero(ctx: GroundContext) -> Self {
        HomogBundle { ctx, summands: Vec::new() }
    }

    /// The irreducible bundle on `orbit`, of rank `s · q`.
    pub fn irreducible(ctx: &GroundContext, orbit: CharacterOrbit) -> Result<Self> {
        ctx.check_orbit(&orbit)?;
        let data = if ctx.module_allowed(&orbit) {
            BlockData::Module(ctx.trivial_module(1).expect("module regime"))
        } else {
            BlockData::semisimple(1)
        };
        Ok(HomogBundle { ctx: ctx.clone(), summands: vec![Summand { orbit, data }] })
    }

    /// The structure sheaf: the irreducible bundle on the zero orbit.
    pub fn structure_sheaf(ctx: &GroundContext) -> Self {
        Self::irreducible(ctx, ctx.zero_orbit()).expect("zero orbit is valid")
    }

    /// The block on the zero orbit carrying `module`.
    pub fn unipotent(ctx: &GroundContext, module: NilModule) -> Result<Self> {
        Self::new(ctx.clone(), vec![Summand { orbit: ctx.zero_orbit(), data: BlockData::Module(module) }])
    }

    pub fn context(&self) -> &GroundContext {
        &self.ctx
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn rank(&self) -> usize {
        self.summands.iter().map(|s| s.orbit.degree() * s.data.rank()).sum()
    }

    pub fn direct_sum(&self, other: &HomogBundle) -> Result<HomogBundle> {
        self.same_context(other)?;
        let mut all = self.summands.clone();
        all.extend(other.summands.iter().cloned());
        Ok(Self::normalized(self.ctx.clone(), all))
    }

    fn same_context(&self, other: &HomogBundle) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::input("bundles live over different ground contexts"));
        }
        Ok(())
    }

    /// One block per orbit, with module data split into indecomposables.
    pub fn block_decompose(&self, seed: u64) -> Result<Vec<Block>> {
        let mut out = Vec::with_capacity(self.summands.len());
        for s in &self.summands {
            let deg = s.orbit.degree();
            let summands = match &s.data {
                BlockData::Module(m) => decompose(m, seed)?
                    .summands
                    .into_iter()
                    .map(|x| BlockSummand {
                        rank: deg * x.module.rank(),
                        multiplicity: x.multiplicity,
                        indecomposable: Some(true),
                        loewy_length: Some(x.module.loewy_length()),
                        module: Some(x.module),
                    })
                    .collect(),
                BlockData::RankOnly { summands: Some(list), .. } => {
                    let mut grouped: Vec<BlockSummand> = Vec::new();
                    for &k in list {
                        match grouped.last_mut() {
                            Some(last) if last.rank == deg * k => last.multiplicity += 1,
                            _ => grouped.push(BlockSummand {
                                rank: deg * k,
                                multiplicity: 1,
                                indecomposable: Some(true),
                                loewy_length: (k == 1).then_some(1),
                                module: None,
                            }),
                        }
                    }
                    grouped
                }
                BlockData::RankOnly { rank, summands: None } => vec![BlockSummand {
                    rank: deg * rank,
                    multiplicity: 1,
                    indecomposable: (*rank == 1).then_some(true),
                    loewy_length: (*rank == 1).then_some(1),
                    module: None,
                }],
            };
            out.push(Block {
                orbit: s.orbit.clone(),
                bundle: HomogBundle { ctx: self.ctx.clone(), summands: vec![s.clone()] },
                summands,
            });
        }
        Ok(out)
    }

    pub fn dual(&self) -> HomogBundle {
        let summands = self
            .summands
            .iter()
            .map(|s| Summand { orbit: self.ctx.characters().neg_orbit(&s.orbit), data: s.data.dual() })
            .collect();
        Self::normalized(self.ctx.clone(), summands)
    }

    /// Tensor product. Orbit pairs are split into orbits of the diagonal
    /// action; each such orbit `P` maps onto the orbit `Z` of `x + y` and
    /// contributes `|P| / |Z|` times the product data there.
    pub fn tensor(&self, other: &HomogBundle) -> Result<HomogBundle> {
        self.same_context(other)?;
        if self.summands.iter().chain(&other.summands).any(|s| s.orbit.q > 1) {
            return Err(Error::unsupported("tensor product of blocks with inseparable characters (q > 1)"));
        }
        let chars = self.ctx.characters();
        let mut out = Vec::new();
        for a in &self.summands {
            for b in &other.summands {
                for (rep, size) in diagonal_orbits(chars, &a.orbit, &b.orbit) {
                    let z = chars.orbit_of(&CharacterPoint::separable(rep))?;
                    let mult = size / z.s();
                    let data = tensor_data(&self.ctx, &z, &a.data, &b.data, mult);
                    out.push(Summand { orbit: z, data });
                }
            }
        }
        Ok(Self::normalized(self.ctx.clone(), out))
    }

    /// `dim Ext^i(self, other)` for `i = 0..=max_degree`, summed over
    /// shared orbits; blocks on different orbits contribute nothing.
    pub fn hom_ext_dims(&self, other: &HomogBundle, max_degree: usize) -> Result<Vec<usize>> {
        self.same_context(other)?;
        let mut total = vec![0usize; max_degree + 1];
        for a in &self.summands {
            for b in other.summands.iter().filter(|b| b.orbit == a.orbit) {
                let dims = block_ext(&self.ctx, &a.orbit, &a.data, &b.data, max_degree)?;
                for (t, d) in total.iter_mut().zip(dims) {
                    *t += d;
                }
            }
        }
        Ok(total)
    }

    pub fn classify(&self) -> Classification {
        let chars = self.ctx.characters();
        let semisimple = self
            .summands
            .iter()
            .try_fold(true, |acc, s| s.data.is_semisimple().map(|v| acc && v));
        let exponent = self
            .summands
            .iter()
            .fold(1u64, |acc, s| num_integer::lcm(acc, chars.point_order(s.orbit.least())));
        Classification {
            semisimple,
            unipotent: self.summands.iter().all(|s| s.orbit.is_zero()),
            essentially_finite: true,
            finiteness_exponent: exponent,
            irreducible: self.summands.len() == 1 && self.summands[0].data.rank() == 1,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "context": self.ctx.to_json(),
            "summands": self.summands.iter().map(|s| json!({
                "orbit": s.orbit,
                "data": s.data.to_json(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::input("bundle must be an object"))?;
        for key in obj.keys() {
            if key != "context" && key != "summands" {
                return Err(Error::input(format!("unknown bundle key {key:?}")));
            }
        }
        let ctx = GroundContext::from_json(obj.get("context").ok_or_else(|| Error::input("bundle needs \"context\""))?)?;
        let items = obj
            .get("summands")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::input("bundle needs a \"summands\" array"))?;
        let mut summands = Vec::with_capacity(items.len());
        for item in items {
            let o: &Map<String, Value> = item.as_object().ok_or_else(|| Error::input("summand must be an object"))?;
            for key in o.keys() {
                if key != "orbit" && key != "data" {
                    return Err(Error::input(format!("unknown summand key {key:?}")));
                }
            }
            let orbit: CharacterOrbit = serde_json::from_value(
                o.get("orbit").cloned().ok_or_else(|| Error::input("summand needs \"orbit\""))?,
            )
            .map_err(|e| Error::input(format!("orbit: {e}")))?;
            let data = BlockData::from_json(o.get("data").ok_or_else(|| Error::input("summand needs \"data\""))?)?;
            summands.push(Summand { orbit, data });
        }
        Self::new(ctx, summands)
    }
}

/// Orbits of the diagonal action on `a x b`: a representative sum `x + y`
/// and the orbit size, for each.
fn diagonal_orbits(chars: &GaloisModule, a: &CharacterOrbit, b: &CharacterOrbit) -> Vec<(Vec<u64>, usize)> {
    use std::collections::HashSet;
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let index = |o: &CharacterOrbit, x: &[u64]| {
        o.points.binary_search_by(|p| p.as_slice().cmp(x)).expect("orbits are closed")
    };
    let mut out = Vec::new();
    for i in 0..a.s() {
        for j in 0..b.s() {
            if seen.contains(&(i, j)) {
                continue;
            }
            let mut stack = vec![(i, j)];
            seen.insert((i, j));
            let mut size = 0;
            while let Some((u, v)) = stack.pop() {
                size += 1;
                for g in 0..chars.gamma().len() {
                    let next = (index(a, &chars.act(g, &a.points[u])), index(b, &chars.act(g, &b.points[v])));
                    if seen.insert(next) {
                        stack.push(next);
                    }
                }
            }
            out.push((chars.add(&a.points[i], &b.points[j]), size));
        }
    }
    out
}

fn tensor_data(ctx: &GroundContext, z: &CharacterOrbit, a: &BlockData, b: &BlockData, mult: usize) -> BlockData {
    let as_module = |d: &BlockData| match d {
        BlockData::Module(m) => Some(m.clone()),
        other if ctx.module_allowed(z) && other.is_semisimple() == Some(true) => ctx.trivial_module(other.rank()),
        _ => None,
    };
    if ctx.module_allowed(z) && mult == 1 {
        if let (Some(x), Some(y)) = (as_module(a), as_module(b)) {
            return BlockData::Module(x.tensor(&y).expect("same context"));
        }
    }
    let rank = mult * a.rank() * b.rank();
    if a.is_semisimple() == Some(true) && b.is_semisimple() == Some(true) {
        BlockData::semisimple(rank)
    } else {
        BlockData::unknown(rank)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Ext dimensions between two data on one orbit.
fn block_ext(
    ctx: &GroundContext,
    orbit: &CharacterOrbit,
    a: &BlockData,
    b: &BlockData,
    max_degree: usize,
) -> Result<Vec<usize>> {
    let deg = orbit.degree();
    let as_module = |d: &BlockData| match d {
        BlockData::Module(m) => Some(m.clone()),
        other if ctx.module_allowed(orbit) && other.is_semisimple() == Some(true) => ctx.trivial_module(other.rank()),
        _ => None,
    };
    if let (Some(x), Some(y)) = (as_module(a), as_module(b)) {
        let dims = if max_degree == 0 { vec![hom_dim(&x, &y)?] } else { ext_dims(&x, &y, max_degree)? };
        return Ok(dims.into_iter().map(|d| d * deg).collect());
    }
    let sa = a.is_semisimple() == Some(true);
    let sb = b.is_semisimple() == Some(true);
    let hom = match (sa, sb) {
        (true, _) => b.socle_top().map(|(soc, _)| a.rank() * soc * deg),
        (_, true) => a.socle_top().map(|(_, top)| top * b.rank() * deg),
        _ => None,
    }
    .ok_or_else(|| Error::unsupported("Hom between non-semisimple rank-only blocks"))?;
    let mut out = vec![hom];
    if max_degree >= 1 {
        if !(sa && sb && ctx.p() == 1) {
            return Err(Error::unsupported(
                "higher Ext for rank-only blocks needs semisimple data in characteristic 0",
            ));
        }
        for i in 1..=max_degree {
            out.push(binomial(ctx.g(), i) * hom);
        }
    }
    Ok(out)
}

/// A block is semisimple iff its unipotent group is finite of order
/// `[K : L]`. `u_order = None` means infinite.
pub fn block_semisimplicity_test(u_order: Option<u64>, k_deg: u64, l_deg: u64) -> Result<bool> {
    if l_deg == 0 || !k_deg.is_multiple_of(l_deg) {
        return Err(Error::input(format!("[L:k] = {l_deg} does not divide [K:k] = {k_deg}")));
    }
    Ok(u_order == Some(k_deg / l_deg))
}
