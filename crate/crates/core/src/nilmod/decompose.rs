//! Krull–Schmidt decomposition and isomorphism testing.
//!
//! Splitting works in the top algebra: the image of `End(M)` in
//! `End(M / rad M)`. An endomorphism is invertible (resp. nilpotent) iff its
//! image there is, so a non-nilpotent non-invertible element of the top
//! algebra lifts to an endomorphism whose Fitting decomposition splits `M`.
//! The top algebra is local exactly when `M` is indecomposable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::hom::{hom_basis, top};
use super::NilModule;
use crate::error::{Error, Result};
use crate::exactfield::{Elem, FieldSpec, Matrix, Rational, SpanTracker, Vector};

/// Random combinations tried per splitting search.
const RANDOM_DRAWS: usize = 128;
/// Finite top algebras with at most this many elements are enumerated.
const EXHAUSTIVE_LIMIT: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub module: NilModule,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub summands: Vec<Summand>,
    /// `P` with `P^{-1} X_i P` block diagonal: each summand repeated
    /// `multiplicity` times, in order.
    pub basechange: Matrix,
}

impl DecompositionReport {
    /// Number of indecomposable summands counted with multiplicity.
    pub fn count(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    /// The block-diagonal module the basechange conjugates the input into.
    pub fn assembled(&self, field: &FieldSpec, flavor: super::Flavor, g: usize) -> NilModule {
        let mut out = NilModule::trivial(field, flavor, g, 0);
        for s in &self.summands {
            for _ in 0..s.multiplicity {
                out = out.direct_sum(&s.module).expect("summands share field, flavor and g");
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "summands": self.summands.iter().map(|s| json!({
                "module": s.module.to_json(),
                "multiplicity": s.multiplicity,
            })).collect::<Vec<_>>(),
            "basechange": self.basechange.to_json(),
        })
    }
}

/// Invariants compared before attempting an isomorphism test, and used as
/// the summand sort key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    rank: usize,
    loewy: usize,
    layers: Vec<usize>,
    socle: usize,
}

fn key(m: &NilModule) -> Key {
    let layers = m.radical_layers();
    Key { rank: m.rank(), loewy: layers.len(), layers, socle: m.socle_dim() }
}

struct Class {
    key: Key,
    rep: NilModule,
    /// Columns spanning each copy in input coordinates, already composed
    /// with an isomorphism from `rep`.
    copies: Vec<Matrix>,
}

/// Decomposes `m` into indecomposables, grouped into isomorphism classes.
pub fn decompose(m: &NilModule, seed: u64) -> Result<DecompositionReport> {
    m.ensure_valid()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(decompose_with(m, &mut rng))
}

fn decompose_with(m: &NilModule, rng: &mut ChaCha8Rng) -> DecompositionReport {
    let f = m.field().clone();
    let mut pieces = Vec::new();
    split(m, Matrix::identity(&f, m.rank()), rng, &mut pieces);

    let mut classes: Vec<Class> = Vec::new();
    for (basis, piece) in pieces {
        let k = key(&piece);
        let found = classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.key == k)
            .find_map(|(i, c)| indecomposable_iso(&c.rep, &piece).map(|z| (i, z)));
        match found {
            Some((i, z)) => classes[i].copies.push(basis.mul(&z)),
            None => classes.push(Class { key: k, rep: piece, copies: vec![basis] }),
        }
    }
    classes.sort_by(|a, b| a.key.cmp(&b.key));

    let mut columns: Vec<Vector> = Vec::with_capacity(m.rank());
    let mut summands = Vec::with_capacity(classes.len());
    for c in classes {
        for copy in &c.copies {
            columns.extend(copy.column_vectors());
        }
        summands.push(Summand { multiplicity: c.copies.len(), module: c.rep });
    }
    let basechange = Matrix::from_columns(&f, m.rank(), &columns);
    DecompositionReport { summands, basechange }
}

/// Recursively splits `m` (whose coordinates are the columns of `basis` in
/// the original module) and appends the indecomposable pieces.
fn split(m: &NilModule, basis: Matrix, rng: &mut ChaCha8Rng, out: &mut Vec<(Matrix, NilModule)>) {
    let r = m.rank();
    if r == 0 {
        return;
    }
    let Some(z) = splitting_endomorphism(m, rng) else {
        out.push((basis, m.clone()));
        return;
    };
    let f = m.field();
    let zr = z.pow(r as u64);
    let mut cols = zr.kernel_basis();
    let k = cols.len();
    cols.extend(zr.column_space());
    debug_assert!(k > 0 && k < r);
    let p = Matrix::from_columns(f, r, &cols);
    let conj = m.conjugate(&p).expect("Fitting decomposition is a direct sum");
    let (left, right) = (conj.block(0..k), conj.block(k..r));
    let bp = basis.mul(&p);
    let cols_of = |range: std::ops::Range<usize>| bp.slice(0..bp.rows(), range);
    split(&left, cols_of(0..k), rng, out);
    split(&right, cols_of(k..r), rng, out);
}

/// The top algebra of `End(m)`: independent images with their lifts.
struct TopAlgebra {
    t: usize,
    images: Vec<Matrix>,
    lifts: Vec<Matrix>,
}

fn top_algebra(m: &NilModule) -> TopAlgebra {
    let f = m.field();
    let r = m.rank();
    let parts = m.nil_parts();
    let top = top(f, r, &parts);
    let t = top.generators.len();
    let gens = Matrix::from_columns(f, r, &top.generators);
    let mut span = SpanTracker::new(f, t * t);
    let (mut images, mut lifts) = (Vec::new(), Vec::new());
    if t > 1 {
        for z in hom_basis(f, r, &parts, r, &parts) {
            let img = top.projection.mul(&z).mul(&gens);
            if span.insert(img.entries().to_vec()) {
                images.push(img);
                lifts.push(z);
            }
        }
    }
    TopAlgebra { t, images, lifts }
}

impl TopAlgebra {
    fn combine(&self, mats: &[Matrix], coeffs: &[Elem]) -> Matrix {
        let f = mats[0].field();
        let mut acc = Matrix::zeros(f, mats[0].rows(), mats[0].cols());
        for (m, c) in mats.iter().zip(coeffs) {
            if !f.is_zero(c) {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }

    /// Dimension of the semisimple quotient in characteristic 0: the rank
    /// of the trace form, whose radical is the Jacobson radical.
    fn semisimple_dim(&self) -> usize {
        let d = self.images.len();
        let f = self.images[0].field();
        let form = Matrix::from_fn(f, d, d, |i, j| self.images[i].mul(&self.images[j]).trace());
        form.rank()
    }
}

fn splits(a: &Matrix, t: usize) -> bool {
    !a.is_invertible() && !a.pow(t as u64).is_zero()
}

/// A non-nilpotent non-invertible endomorphism of `m`, if one is found.
fn splitting_endomorphism(m: &NilModule, rng: &mut ChaCha8Rng) -> Option<Matrix> {
    let alg = top_algebra(m);
    let d = alg.images.len();
    // A local top algebra of dimension 1 consists of scalars.
    if alg.t <= 1 || d <= 1 {
        return None;
    }
    let f = m.field().clone();
    let t = alg.t;
    if f.is_rationals() && alg.semisimple_dim() == 1 {
        return None;
    }
    let lift = |coeffs: &[Elem], shift: Option<&Elem>| {
        let z = alg.combine(&alg.lifts, coeffs);
        match shift {
            Some(c) => z.sub(&Matrix::identity(&f, m.rank()).scale(c)),
            None => z,
        }
    };

    if let Some(q) = f.order() {
        if let Some(total) = q.checked_pow(d as u32).filter(|&n| n <= EXHAUSTIVE_LIMIT) {
            // The top algebra contains the identity, so every shift of a
            // candidate is itself enumerated.
            for idx in 1..total {
                let coeffs = digits(idx, q, d);
                if splits(&alg.combine(&alg.images, &coeffs), t) {
                    return Some(lift(&coeffs, None));
                }
            }
            return None;
        }
    }

    let unit = |i: usize| -> Vec<Elem> { (0..d).map(|j| if i == j { f.one() } else { f.zero() }).collect() };
    let mut candidates: Vec<Vec<Elem>> = (0..d).map(unit).collect();
    for i in 0..d {
        for j in i + 1..d {
            let mut c = unit(i);
            c[j] = f.one();
            candidates.push(c);
        }
    }
    for _ in 0..RANDOM_DRAWS {
        candidates.push((0..d).map(|_| f.random(rng, 3)).collect());
    }
    for coeffs in &candidates {
        let img = alg.combine(&alg.images, coeffs);
        if splits(&img, t) {
            return Some(lift(coeffs, None));
        }
        for lambda in eigenvalue_candidates(&img) {
            let shifted = img.sub(&Matrix::identity(&f, t).scale(&lambda));
            if splits(&shifted, t) {
                return Some(lift(coeffs, Some(&lambda)));
            }
        }
    }
    None
}

fn digits(mut n: u64, base: u64, len: usize) -> Vec<Elem> {
    (0..len)
        .map(|_| {
            let d = n % base;
            n /= base;
            Elem::F(d)
        })
        .collect()
}

/// Field elements that may be eigenvalues of `a`: all elements of a small
/// finite field, or the rational roots of the characteristic polynomial.
fn eigenvalue_candidates(a: &Matrix) -> Vec<Elem> {
    let f = a.field();
    match f.order() {
        Some(q) if q <= 256 => f.elements().expect("finite").filter(|e| !f.is_zero(e)).collect(),
        Some(_) => Vec::new(),
        None => rational_roots(&a.charpoly()).into_iter().map(Elem::Q).collect(),
    }
}

/// Largest constant or leading coefficient whose divisors are enumerated.
const ROOT_SEARCH_BOUND: u64 = 1_000_000_000_000;

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Nonzero rational roots of a polynomial given least degree first.
pub(crate) fn rational_roots(poly: &[Elem]) -> Vec<Rational> {
    let rats: Vec<Rational> = poly
        .iter()
        .map(|e| match e {
            Elem::Q(r) => r.clone(),
            Elem::F(_) => panic!("rational polynomial expected"),
        })
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(&r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let Some(low) = ints.iter().position(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let Some(high) = ints.iter().rposition(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let bound = |c: &BigInt| c.abs().to_u64().filter(|&v| v <= ROOT_SEARCH_BOUND);
    let (Some(a0), Some(an)) = (bound(&ints[low]), bound(&ints[high])) else {
        return Vec::new();
    };
    let eval = |x: &Rational| {
        rats.iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc.mul(x).add(c))
    };
    let mut roots: Vec<Rational> = Vec::new();
    for num in divisors(a0) {
        for den in divisors(an) {
            if num.gcd(&den) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let (Ok(n), Ok(d)) = (i64::try_from(num), i64::try_from(den)) else {
                    continue;
                };
                let x = Rational::from_frac(sign * n, d);
                if !roots.contains(&x) && eval(&x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// An isomorphism `a -> b` between indecomposable modules, if one exists.
///
/// The products `w z` of basis elements of `Hom(b, a)` and `Hom(a, b)` span
/// an ideal of the local ring `End(a)`; it is the whole ring iff `a ≅ b`,
/// and otherwise lies in the radical. So `a ≅ b` iff some product is not
/// nilpotent, and then that `w z` is invertible and `z` is an isomorphism.
fn indecomposable_iso(a: &NilModule, b: &NilModule) -> Option<Matrix> {
    if a.rank() != b.rank() {
        return None;
    }
    let f = a.field();
    let r = a.rank();
    let (pa, pb) = (a.nil_parts(), b.nil_parts());
    let forward = hom_basis(f, r, &pa, r, &pb);
    if forward.is_empty() {
        return None;
    }
    if let Some(z) = forward.iter().find(|z| z.is_invertible()) {
        return Some(z.clone());
    }
    let backward = hom_basis(f, r, &pb, r, &pa);
    for z in &forward {
        for w in &backward {
            if !w.mul(z).pow(r as u64).is_zero() {
                return Some(z.clone());
            }
        }
    }
    None
}

/// Decides `a ≅ b`, returning an invertible intertwiner `Z` with
/// `Z X_i = Y_i Z` when they are.
///
/// Basis elements and seeded random combinations of `Hom(a, b)` are tried
/// first; otherwise both modules are decomposed and their indecomposable
/// summands matched exactly.
pub fn is_isomorphic(a: &NilModule, b: &NilModule, seed: u64) -> Result<Option<Matrix>> {
    a.ensure_compatible(b)?;
    a.ensure_valid()?;
    b.ensure_valid()?;
    if a.rank() != b.rank() {
        return Ok(None);
    }
    let f = a.field();
    let r = a.rank();
    if r == 0 {
        return Ok(Some(Matrix::zeros(f, 0, 0)));
    }
    if a.radical_layers() != b.radical_layers() || a.socle_dim() != b.socle_dim() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = hom_basis(f, r, &a.nil_parts(), r, &b.nil_parts());
    if basis.is_empty() {
        return Ok(None);
    }
    if let Some(z) = basis.iter().find(|z| z.is_invertible()) {
        return Ok(Some(z.clone()));
    }
    for _ in 0..8 {
        let z = basis
            .iter()
            .fold(Matrix::zeros(f, r, r), |acc, m| acc.add(&m.scale(&f.random(&mut rng, 1000))));
        if z.is_invertible() {
            return Ok(Some(z));
        }
    }

    let da = decompose_with(a, &mut rng);
    let db = decompose_with(b, &mut rng);
    let offsets = |d: &DecompositionReport| {
        let mut acc = 0;
        d.summands
            .iter()
            .map(|s| {
                let o = acc;
                acc += s.module.rank() * s.multiplicity;
                o
            })
            .collect::<Vec<_>>()
    };
    let (oa, ob) = (offsets(&da), offsets(&db));
    let mut used = vec![false; db.summands.len()];
    let mut phi = Matrix::zeros(f, r, r);
    for (i, sa) in da.summands.iter().enumerate() {
        let ka = key(&sa.module);
        let matched = db.summands.iter().enumerate().find_map(|(j, sb)| {
            if used[j] || sb.multiplicity != sa.multiplicity || key(&sb.module) != ka {
                return None;
            }
            indecomposable_iso(&sa.module, &sb.module).map(|z| (j, z))
        });
        let Some((j, z)) = matched else {
            return Ok(None);
        };
        used[j] = true;
        let n = sa.module.rank();
        for copy in 0..sa.multiplicity {
            let (ra, rb) = (oa[i] + copy * n, ob[j] + copy * n);
            for x in 0..n {
                for y in 0..n {
                    phi.set(rb + x, ra + y, z.get(x, y).clone());
                }
            }
        }
    }
    let pa_inv = da.basechange.inverse().ok_or_else(|| Error::input("singular basechange"))?;
    let z = db.basechange.mul(&phi).mul(&pa_inv);
    debug_assert!(super::hom::is_morphism(&z, a, b) && z.is_invertible());
    Ok(Some(z))
}
