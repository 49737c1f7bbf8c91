//! Isogeny functors: pullback (restriction) and pushforward (induction).
//!
//! An isogeny `A -> B` is described by its dual map on truncated character
//! groups, `B̂ -> Â`, and the structure of its kernel: a multiplicative
//! part (seen as the kernel of the dual map on points), an étale unipotent
//! part given by its cyclic factors, and an infinitesimal part known only
//! by its order.

use std::collections::HashSet;
use std::fmt;

use serde_json::{json, Value};

use crate::bundlecat::{BlockData, GroundContext, HomogBundle, Regime, Summand};
use crate::error::{Error, Result};
use crate::galois::{CharacterOrbit, CharacterPoint, GaloisHom, GaloisModule, HomViolation, IntMatrix};
use crate::nilmod::{decompose, NilModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyData {
    pub src: GroundContext,
    pub dst: GroundContext,
    /// Dual map from the target's characters to the source's.
    pub dual_map: IntMatrix,
    pub mult_kernel_order: u64,
    pub unip_etale_factors: Vec<u64>,
    pub infinitesimal_order: u64,
    /// Declared degree, checked against the kernel parts when present.
    pub degree: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsogenyViolation {
    ContextMismatch(String),
    DualMap(HomViolation),
    DegreeMismatch { declared: u64, computed: u64 },
    KernelSize { declared: u64, found: u64 },
    NotPPower { part: &'static str, value: u64 },
}

impl fmt::Display for IsogenyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsogenyViolation::ContextMismatch(s) => write!(f, "context mismatch: {s}"),
            IsogenyViolation::DualMap(v) => write!(f, "dual map: {v}"),
            IsogenyViolation::DegreeMismatch { declared, computed } => write!(
                f,
                "declared degree {declared} != multiplicative x unipotent x infinitesimal = {computed}"
            ),
            IsogenyViolation::KernelSize { declared, found } => write!(
                f,
                "dual map kernel has {found} points, multiplicative kernel order is {declared}"
            ),
            IsogenyViolation::NotPPower { part, value } => {
                write!(f, "{part} order {value} is not a power of the characteristic exponent")
            }
        }
    }
}

fn is_power_of(mut v: u64, p: u64) -> bool {
    if v == 0 {
        return false;
    }
    if p == 1 {
        return v == 1;
    }
    while v.is_multiple_of(p) {
        v /= p;
    }
    v == 1
}

impl IsogenyData {
    pub fn identity(ctx: &GroundContext) -> Self {
        let k = ctx.characters().orders().len();
        IsogenyData {
            src: ctx.clone(),
            dst: ctx.clone(),
            dual_map: (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect(),
            mult_kernel_order: 1,
            unip_etale_factors: Vec::new(),
            infinitesimal_order: 1,
            degree: None,
        }
    }

    /// Product of the kernel parts.
    pub fn computed_degree(&self) -> u64 {
        self.mult_kernel_order * self.unipotent_degree()
    }

    /// Order of the unipotent part of the kernel (étale and infinitesimal).
    pub fn unipotent_degree(&self) -> u64 {
        self.unip_etale_factors.iter().product::<u64>() * self.infinitesimal_order
    }

    /// Whether the dual map is separable (no unipotent kernel).
    pub fn is_separable(&self) -> bool {
        self.unipotent_degree() == 1
    }

    fn dual_hom(&self) -> Result<GaloisHom> {
        GaloisHom::new(self.dst.characters().clone(), self.src.characters().clone(), self.dual_map.clone())
    }

    /// Every violated consistency condition.
    pub fn validate(&self) -> Result<Vec<IsogenyViolation>> {
        let mut out = Vec::new();
        let (a, b) = (&self.src, &self.dst);
        if a.g() != b.g() || a.p() != b.p() || a.r() != b.r() {
            out.push(IsogenyViolation::ContextMismatch(format!(
                "(g, p, r) = ({}, {}, {}) vs ({}, {}, {})",
                a.g(),
                a.p(),
                a.r(),
                b.g(),
                b.p(),
                b.r()
            )));
        }
        if a.field() != b.field() {
            out.push(IsogenyViolation::ContextMismatch(format!("fields {} vs {}", a.field(), b.field())));
        }
        let p = a.p();
        for &f in &self.unip_etale_factors {
            if f <= 1 || !is_power_of(f, p) {
                out.push(IsogenyViolation::NotPPower { part: "unipotent etale factor", value: f });
            }
        }
        if !is_power_of(self.infinitesimal_order, p) {
            out.push(IsogenyViolation::NotPPower { part: "infinitesimal", value: self.infinitesimal_order });
        }
        if self.mult_kernel_order == 0 {
            out.push(IsogenyViolation::KernelSize { declared: 0, found: 0 });
        }
        if let Some(d) = self.degree {
            if d != self.computed_degree() {
                out.push(IsogenyViolation::DegreeMismatch { declared: d, computed: self.computed_degree() });
            }
        }
        let hv = GaloisHom::violations(b.characters(), a.characters(), &self.dual_map);
        if hv.is_empty() {
            let found = self.dual_hom()?.kernel_size()?;
            if found != self.mult_kernel_order {
                out.push(IsogenyViolation::KernelSize { declared: self.mult_kernel_order, found });
            }
        } else {
            out.extend(hv.into_iter().map(IsogenyViolation::DualMap));
        }
        Ok(out)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate()?;
        if v.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            Err(Error::input(format!("invalid isogeny: {}", msgs.join("; "))))
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "src": self.src.to_json(),
            "dst": self.dst.to_json(),
            "dual_map": self.dual_map,
            "mult_kernel_order": self.mult_kernel_order,
            "unip_etale_factors": self.unip_etale_factors,
            "infinitesimal_order": self.infinitesimal_order,
        });
        if let Some(d) = self.degree {
            v["degree"] = json!(d);
        }
        v
    }

    /// Parses and checks structure; use [`IsogenyData::validate`] for the
    /// consistency conditions.
    pub fn from_json(v: &Value) -> Result<Self> {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            src: Value,
            dst: Value,
            dual_map: IntMatrix,
            mult_kernel_order: u64,
            #[serde(default)]
            unip_etale_factors: Vec<u64>,
            #[serde(default = "one")]
            infinitesimal_order: u64,
            #[serde(default)]
            degree: Option<u64>,
        }
        fn one() -> u64 {
            1
        }
        let w: Wire = serde_json::from_value(v.clone()).map_err(|e| Error::input(format!("isogeny: {e}")))?;
        Ok(IsogenyData {
            src: GroundContext::from_json(&w.src)?,
            dst: GroundContext::from_json(&w.dst)?,
            dual_map: w.dual_map,
            mult_kernel_order: w.mult_kernel_order,
            unip_etale_factors: w.unip_etale_factors,
            infinitesimal_order: w.infinitesimal_order,
            degree: w.degree,
        })
    }
}

/// Splits `φ = φ_u ∘ φ_m` with `φ_m` separable (multiplicative kernel) and
/// `φ_u` purely inseparable on characters (unipotent kernel). The middle
/// variety's characters are identified with the target's through `φ̂_u`,
/// which is bijective on points.
pub fn factor_isogeny(iso: &IsogenyData) -> Result<(IsogenyData, IsogenyData)> {
    iso.ensure_valid()?;
    if iso.mult_kernel_order == 1 {
        return Ok((IsogenyData::identity(&iso.src), iso.clone()));
    }
    let mult = IsogenyData {
        unip_etale_factors: Vec::new(),
        infinitesimal_order: 1,
        degree: iso.degree.map(|_| iso.mult_kernel_order),
        ..iso.clone()
    };
    let unip = IsogenyData {
        src: iso.dst.clone(),
        mult_kernel_order: 1,
        degree: iso.degree.map(|_| iso.unipotent_degree()),
        ..IsogenyData::identity(&iso.dst)
    };
    let unip = IsogenyData {
        unip_etale_factors: iso.unip_etale_factors.clone(),
        infinitesimal_order: iso.infinitesimal_order,
        ..unip
    };
    Ok((mult, unip))
}

/// Whether `data` can be recorded as a module on `orbit`.
fn module_or_rank(ctx: &GroundContext, orbit: &CharacterOrbit, module: Option<NilModule>, fallback: BlockData) -> BlockData {
    match module {
        Some(m) if ctx.module_allowed(orbit) => BlockData::Module(m),
        _ => fallback,
    }
}

/// Pullback of a bundle on the target to the source.
pub fn pullback(iso: &IsogenyData, bundle: &HomogBundle) -> Result<HomogBundle> {
    iso.ensure_valid()?;
    if bundle.context() != &iso.dst {
        return Err(Error::input("bundle does not live on the isogeny's target"));
    }
    let hom = iso.dual_hom()?;
    let src = &iso.src;
    let mut out = Vec::new();
    for s in bundle.summands() {
        let x = hom.apply(&s.orbit.representative(), 1)?;
        let orbit = src.orbit_of(&x)?;
        let (dy, dx) = (s.orbit.degree(), orbit.degree());
        if dy % dx != 0 {
            return Err(Error::input(format!("orbit {} does not map onto a quotient orbit", s.orbit)));
        }
        let mult = dy / dx;
        let rank = mult * s.data.rank();
        let data = match (&s.data, s.data.is_semisimple()) {
            (_, Some(true)) => module_or_rank(src, &orbit, src.trivial_module(rank), BlockData::semisimple(rank)),
            (BlockData::Module(v), _) if iso.is_separable() => {
                let sum = (1..mult).fold(v.clone(), |acc, _| acc.direct_sum(v).expect("compatible"));
                module_or_rank(src, &orbit, Some(sum), BlockData::unknown(rank))
            }
            _ => BlockData::unknown(rank),
        };
        out.push(Summand { orbit, data });
    }
    HomogBundle::new(src.clone(), out)
}

/// One block of a pushforward: `multiplicity` copies of the bundle with
/// data `data` on `orbit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushBlock {
    pub orbit: CharacterOrbit,
    pub multiplicity: usize,
    pub data: BlockData,
    pub indecomposable: Option<bool>,
    pub loewy_length: Option<usize>,
}

impl PushBlock {
    /// Rank of one copy.
    pub fn rank(&self) -> usize {
        self.orbit.degree() * self.data.rank()
    }

    pub fn module(&self) -> Option<&NilModule> {
        match &self.data {
            BlockData::Module(m) => Some(m),
            BlockData::RankOnly { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "orbit": self.orbit,
            "rank": self.rank(),
            "multiplicity": self.multiplicity,
            "indecomposable": self.indecomposable,
            "loewy_length": self.loewy_length,
            "data": self.data.to_json(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Blocks {
    Listed(Vec<PushBlock>),
    /// One block per point `prefix ++ t`, `t` in `(Z/modulus)^dims`
    /// lexicographically, all with the same data.
    Grid { prefix: Vec<u64>, modulus: u64, dims: usize, data: BlockData, loewy_length: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushforwardReport {
    ctx: GroundContext,
    blocks: Blocks,
}

impl PushforwardReport {
    pub fn context(&self) -> &GroundContext {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        match &self.blocks {
            Blocks::Listed(v) => v.len(),
            Blocks::Grid { modulus, dims, .. } => (*modulus as usize).pow(*dims as u32),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn blocks(&self) -> Box<dyn Iterator<Item = PushBlock> + '_> {
        match &self.blocks {
            Blocks::Listed(v) => Box::new(v.iter().cloned()),
            Blocks::Grid { prefix, modulus, dims, data, loewy_length } => {
                let (modulus, dims) = (*modulus, *dims);
                Box::new((0..self.len()).map(move |mut i| {
                    let mut point = prefix.clone();
                    point.resize(prefix.len() + dims, 0);
                    for slot in point[prefix.len()..].iter_mut().rev() {
                        *slot = i as u64 % modulus;
                        i /= modulus as usize;
                    }
                    PushBlock {
                        orbit: CharacterOrbit { points: vec![point], q: 1 },
                        multiplicity: 1,
                        data: data.clone(),
                        indecomposable: Some(true),
                        loewy_length: *loewy_length,
                    }
                }))
            }
        }
    }

    /// Number of summands counted with multiplicity.
    pub fn summand_count(&self) -> usize {
        match &self.blocks {
            Blocks::Listed(v) => v.iter().map(|b| b.multiplicity).sum(),
            Blocks::Grid { .. } => self.len(),
        }
    }

    pub fn total_rank(&self) -> usize {
        match &self.blocks {
            Blocks::Listed(v) => v.iter().map(|b| b.rank() * b.multiplicity).sum(),
            Blocks::Grid { data, .. } => self.len() * data.rank(),
        }
    }

    /// The pushforward as a bundle on the target.
    pub fn to_bundle(&self) -> Result<HomogBundle> {
        let mut summands = Vec::new();
        for b in self.blocks() {
            for _ in 0..b.multiplicity {
                summands.push(Summand { orbit: b.orbit.clone(), data: b.data.clone() });
            }
        }
        HomogBundle::new(self.ctx.clone(), summands)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "context": self.ctx.to_json(),
            "blocks": self.blocks().map(|b| b.to_json()).collect::<Vec<_>>(),
            "total_rank": self.total_rank(),
        })
    }
}

/// Regular representation of `⊕ Z/n_j` with generator `j` shifting factor
/// `j`.
fn regular(ctx: &GroundContext, factors: &[u64]) -> Result<NilModule> {
    let orders: Vec<usize> = factors.iter().map(|&n| n as usize).collect();
    NilModule::regular_representation(ctx.field(), ctx.g(), &orders)
}

/// Pushforward of a bundle on the source to the target.
pub fn pushforward(iso: &IsogenyData, bundle: &HomogBundle, seed: u64) -> Result<PushforwardReport> {
    iso.ensure_valid()?;
    if bundle.context() != &iso.src {
        return Err(Error::input("bundle does not live on the isogeny's source"));
    }
    let hom = iso.dual_hom()?;
    let dst = &iso.dst;
    let chars = dst.characters();
    let u = iso.unipotent_degree() as usize;
    // Module data only for purely étale-unipotent kernels; mixed kernels
    // get ranks and indecomposability verdicts.
    let emit_modules = dst.regime() == Regime::Unipotent
        && iso.mult_kernel_order == 1
        && iso.infinitesimal_order == 1
        && iso.unip_etale_factors.len() <= dst.g();
    let reg = if u > 1 && emit_modules { Some(regular(dst, &iso.unip_etale_factors)?) } else { None };

    let mut blocks = Vec::new();
    for s in bundle.summands() {
        let fiber = orbit_fiber(&hom, iso, &s.orbit)?;
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        for y in &fiber {
            if seen.contains(y) {
                continue;
            }
            let orbit = chars.orbit_of(&CharacterPoint::new(y.clone(), s.orbit.q))?;
            seen.extend(orbit.points.iter().cloned());
            blocks.extend(push_block(dst, &orbit, &s.data, u, reg.as_ref(), seed)?);
        }
    }
    let report = PushforwardReport { ctx: dst.clone(), blocks: Blocks::Listed(blocks) };
    debug_assert_eq!(report.total_rank(), iso.computed_degree() as usize * bundle.rank());
    Ok(report)
}

/// Least character level on the target at which every point over the
/// bundle's orbits is visible: the lcm of `ord(x)` times the exponent of
/// the dual map's kernel.
pub fn required_level(iso: &IsogenyData, bundle: &HomogBundle) -> Result<u64> {
    use num_integer::Integer;
    iso.ensure_valid()?;
    let hom = iso.dual_hom()?;
    let chars = hom.src();
    let zero = vec![0; chars.orders().len()];
    let mut exponent = 1u64;
    for y in chars.elements()? {
        if hom.map_coords(&y) == zero {
            exponent = exponent.lcm(&chars.point_order(&y));
        }
    }
    let mut level = exponent;
    for s in bundle.summands() {
        for x in &s.orbit.points {
            level = level.lcm(&(hom.dst().point_order(x) * exponent));
        }
    }
    Ok(level)
}

/// Points of the target mapping into `orbit`, with a check that every point
/// of the orbit has a full fiber at the working level.
fn orbit_fiber(hom: &GaloisHom, iso: &IsogenyData, orbit: &CharacterOrbit) -> Result<Vec<Vec<u64>>> {
    let mut counts = vec![0u64; orbit.s()];
    let mut fiber = Vec::new();
    for y in hom.src().elements()? {
        let x = hom.map_coords(&y);
        if let Ok(i) = orbit.points.binary_search(&x) {
            counts[i] += 1;
            fiber.push(y);
        }
    }
    if let Some(i) = counts.iter().position(|&c| c != iso.mult_kernel_order) {
        let x = &orbit.points[i];
        let needed = hom.dst().point_order(x) * iso.mult_kernel_order;
        return Err(Error::input(format!(
            "insufficient torsion level: point {x:?} has {} preimages, expected {}; \
             the target's character level must be divisible by {needed}",
            counts[i], iso.mult_kernel_order
        )));
    }
    Ok(fiber)
}

fn push_block(
    dst: &GroundContext,
    orbit: &CharacterOrbit,
    data: &BlockData,
    u: usize,
    reg: Option<&NilModule>,
    seed: u64,
) -> Result<Vec<PushBlock>> {
    let allowed = dst.module_allowed(orbit);
    let a = data.rank();
    let module_block = |m: NilModule| -> Result<PushBlock> {
        let indecomposable = decompose(&m, seed)?.count() == 1;
        Ok(PushBlock {
            orbit: orbit.clone(),
            multiplicity: 1,
            indecomposable: Some(indecomposable),
            loewy_length: Some(m.loewy_length()),
            data: BlockData::Module(m),
        })
    };
    if data.is_semisimple() == Some(true) {
        // `a` copies of the pushforward of the irreducible bundle.
        let (copy, loewy) = if u == 1 {
            let d = module_or_rank(dst, orbit, dst.trivial_module(1), BlockData::semisimple(1));
            (d, Some(1))
        } else {
            match reg {
                Some(r) if allowed => (BlockData::Module(r.clone()), Some(r.loewy_length())),
                _ => (BlockData::indecomposable(u), None),
            }
        };
        return Ok(vec![PushBlock {
            orbit: orbit.clone(),
            multiplicity: a,
            data: copy,
            indecomposable: Some(true),
            loewy_length: loewy,
        }]);
    }
    let transported = match (data, u, reg) {
        (BlockData::Module(v), 1, _) if allowed => Some(v.clone()),
        (BlockData::Module(v), _, Some(r)) if allowed => Some(r.tensor(v)?),
        _ => None,
    };
    Ok(vec![match transported {
        Some(m) => module_block(m)?,
        None => PushBlock {
            orbit: orbit.clone(),
            multiplicity: 1,
            data: BlockData::unknown(a * u),
            indecomposable: None,
            loewy_length: None,
        },
    }])
}

/// Largest `p^(n g)` accepted by [`frobenius_pushforward`].
pub const MAX_FROBENIUS_RANK: u64 = 1 << 40;

/// Pushforward of a line bundle along the `n`-th Frobenius of an abelian
/// variety of dimension `g` and p-rank `r` over a separably closed field.
///
/// Blocks sit at `base ++ t` for `t` in `(Z/p^n)^r`, where `base` is the
/// given rational point (the origin when absent).
pub fn frobenius_pushforward(
    g: usize,
    r: usize,
    p: u64,
    n: u32,
    base: Option<(&GaloisModule, &CharacterPoint)>,
) -> Result<PushforwardReport> {
    if p == 1 {
        return Err(Error::unsupported("Frobenius pushforward needs positive characteristic"));
    }
    if !crate::exactfield::is_prime(p) {
        return Err(Error::input(format!("p = {p} is not prime")));
    }
    if g == 0 || r > g {
        return Err(Error::input(format!("need g >= 1 and 0 <= r <= g, got g = {g}, r = {r}")));
    }
    let total = p.checked_pow(n * g as u32).filter(|&t| t <= MAX_FROBENIUS_RANK);
    if total.is_none() {
        return Err(Error::input(format!("rank p^(n g) = {p}^{} is too large", n * g as u32)));
    }
    let modulus = p.pow(n);
    let (mut orders, prefix) = match base {
        Some((module, point)) => {
            module.check_point(point)?;
            if !module.is_trivial_action() {
                return Err(Error::input("base point module must carry the trivial Galois action"));
            }
            if point.q != 1 {
                return Err(Error::input("base point must be separable"));
            }
            (module.orders().to_vec(), point.coords.clone())
        }
        None => (Vec::new(), Vec::new()),
    };
    orders.extend(std::iter::repeat_n(modulus, r));
    let characters = GaloisModule::trivial_action(orders, Some(p))?;
    let ctx = GroundContext::new(g, p, r, true, characters, None)?;
    let block_rank = modulus.pow((g - r) as u32) as usize;
    let (data, loewy) = if block_rank == 1 {
        (ctx.trivial_module(1).map_or(BlockData::semisimple(1), BlockData::Module), Some(1))
    } else {
        (BlockData::indecomposable(block_rank), None)
    };
    Ok(PushforwardReport {
        ctx,
        blocks: Blocks::Grid { prefix, modulus, dims: r, data, loewy_length: loewy },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilmod::Flavor;

    fn sep_closed(p: u64, orders: Vec<u64>) -> GroundContext {
        GroundContext::new(1, p, 1, true, GaloisModule::trivial_action(orders, None).unwrap(), None).unwrap()
    }

    #[test]
    fn identity_is_valid_and_neutral() {
        let ctx = GroundContext::new(
            1,
            1,
            0,
            false,
            GaloisModule::new(vec![5], vec![vec![vec![-1]]], None).unwrap(),
            None,
        )
        .unwrap();
        let id = IsogenyData::identity(&ctx);
        assert!(id.validate().unwrap().is_empty());
        let e = HomogBundle::irreducible(&ctx, ctx.orbit_of(&CharacterPoint::separable(vec![1])).unwrap()).unwrap();
        assert_eq!(pullback(&id, &e).unwrap(), e);
        let push = pushforward(&id, &e, 0).unwrap();
        assert_eq!(push.len(), 1);
        assert_eq!(push.to_bundle().unwrap(), e);
    }

    #[test]
    fn validation_flags_each_problem() {
        let ctx = sep_closed(1, vec![6]);
        let mut iso = IsogenyData::identity(&ctx);
        iso.degree = Some(2);
        iso.dual_map = vec![vec![2]];
        iso.mult_kernel_order = 1;
        let v = iso.validate().unwrap();
        assert!(v.contains(&IsogenyViolation::DegreeMismatch { declared: 2, computed: 1 }));
        assert!(v.contains(&IsogenyViolation::KernelSize { declared: 1, found: 2 }));
        iso.mult_kernel_order = 2;
        assert!(iso.validate().unwrap().is_empty());
        iso.unip_etale_factors = vec![2];
        assert!(iso.validate().unwrap().iter().any(|x| matches!(x, IsogenyViolation::NotPPower { .. })));
    }

    #[test]
    fn multiplication_by_n() {
        // [2] on an elliptic curve in characteristic 0: degree 4, dual [2].
        let ctx = GroundContext::new(1, 1, 0, false, GaloisModule::trivial_action(vec![4, 4], None).unwrap(), None).unwrap();
        let mut iso = IsogenyData::identity(&ctx);
        iso.dual_map = vec![vec![2, 0], vec![0, 2]];
        iso.mult_kernel_order = 4;
        iso.degree = Some(4);
        assert!(iso.validate().unwrap().is_empty());
        let o = HomogBundle::structure_sheaf(&ctx);
        assert_eq!(required_level(&iso, &o).unwrap(), 2);
        let push = pushforward(&iso, &o, 0).unwrap();
        assert_eq!(push.len(), 4);
        assert_eq!(push.total_rank(), 4);
    }

    #[test]
    fn separable_degree_two() {
        let ctx = sep_closed(1, vec![2]);
        let mut iso = IsogenyData::identity(&ctx);
        iso.dual_map = vec![vec![0]];
        iso.mult_kernel_order = 2;
        let push = pushforward(&iso, &HomogBundle::structure_sheaf(&ctx), 0).unwrap();
        let orbits: Vec<Vec<Vec<u64>>> = push.blocks().map(|b| b.orbit.points).collect();
        assert_eq!(orbits, vec![vec![vec![0]], vec![vec![1]]]);
        assert!(push.blocks().all(|b| b.rank() == 1));
        assert_eq!(push.to_bundle().unwrap().classify().semisimple, Some(true));
    }

    #[test]
    fn etale_unipotent_kernel_gives_regular_representation() {
        for p in [2u64, 3] {
            for a in 1..=2u32 {
                let ctx = sep_closed(p, vec![1]);
                let mut iso = IsogenyData::identity(&ctx);
                iso.unip_etale_factors = vec![p.pow(a)];
                let push = pushforward(&iso, &HomogBundle::structure_sheaf(&ctx), 0).unwrap();
                assert_eq!(push.len(), 1);
                let b = push.blocks().next().unwrap();
                assert_eq!(b.rank(), p.pow(a) as usize);
                assert_eq!(b.indecomposable, Some(true));
                assert_eq!(b.loewy_length, Some(p.pow(a) as usize));
                assert_eq!(b.module().unwrap().flavor(), Flavor::Unipotent);
                assert_eq!(push.to_bundle().unwrap().classify().semisimple, Some(false));
            }
        }
    }

    #[test]
    fn factorization_degrees() {
        let ctx = sep_closed(3, vec![3]);
        let mut iso = IsogenyData::identity(&ctx);
        iso.dual_map = vec![vec![0]];
        iso.mult_kernel_order = 3;
        iso.infinitesimal_order = 3;
        let (m, u) = factor_isogeny(&iso).unwrap();
        assert_eq!((m.computed_degree(), u.computed_degree()), (3, 3));
        assert!(m.is_separable() && !u.is_separable());

        let mut pure = IsogenyData::identity(&ctx);
        pure.infinitesimal_order = 9;
        let (m, u) = factor_isogeny(&pure).unwrap();
        assert_eq!(m, IsogenyData::identity(&ctx));
        assert_eq!(u, pure);
        let mut sep = IsogenyData::identity(&ctx);
        sep.dual_map = vec![vec![0]];
        sep.mult_kernel_order = 3;
        let (m, u) = factor_isogeny(&sep).unwrap();
        assert_eq!(m, sep);
        assert_eq!(u, IsogenyData::identity(&ctx));
    }

    #[test]
    fn frobenius_examples() {
        let r = frobenius_pushforward(2, 1, 2, 1, None).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.blocks().all(|b| b.rank() == 2));
        assert_eq!(r.total_rank(), 4);
        assert_eq!(r.to_bundle().unwrap().classify().semisimple, Some(false));

        let ord = frobenius_pushforward(2, 2, 3, 1, None).unwrap();
        assert_eq!(ord.len(), 9);
        assert_eq!(ord.to_bundle().unwrap().classify().semisimple, Some(true));

        let id = frobenius_pushforward(3, 1, 5, 0, None).unwrap();
        assert_eq!(id.len(), 1);
        assert_eq!(id.total_rank(), 1);

        assert!(matches!(frobenius_pushforward(1, 0, 1, 1, None), Err(Error::Unsupported(_))));

        let m = GaloisModule::trivial_action(vec![7], None).unwrap();
        let l = CharacterPoint::separable(vec![3]);
        let t = frobenius_pushforward(1, 1, 2, 2, Some((&m, &l))).unwrap();
        let labels: Vec<Vec<u64>> = t.blocks().map(|b| b.orbit.points[0].clone()).collect();
        assert_eq!(labels, vec![vec![3, 0], vec![3, 1], vec![3, 2], vec![3, 3]]);
    }

    #[test]
    fn insufficient_level_is_reported() {
        // Dual map 2 on Z/4 -> Z/4: the point 1 has no preimage.
        let ctx = sep_closed(1, vec![4]);
        let mut iso = IsogenyData::identity(&ctx);
        iso.dual_map = vec![vec![2]];
        iso.mult_kernel_order = 2;
        let e = HomogBundle::irreducible(&ctx, ctx.orbit_of(&CharacterPoint::separable(vec![1])).unwrap()).unwrap();
        assert_eq!(required_level(&iso, &e).unwrap(), 8);
        let err = pushforward(&iso, &e, 0).unwrap_err().to_string();
        assert!(err.contains("divisible by 8"), "{err}");
    }
}
