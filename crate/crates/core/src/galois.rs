//! Finite Galois modules: truncated character groups `Z/n_1 x ... x Z/n_k`
//! with an action of a finite group given by integer matrices, their
//! orbits, and equivariant homomorphisms between them.
//!
//! A matrix `G` acts by `(G x)_i = Σ_j G_ij x_j mod n_i`. It is a well
//! defined map when `n_j G_ij ≡ 0 (mod n_i)` for all `i, j`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Integer matrix, row-major.
pub type IntMatrix = Vec<Vec<i64>>;

/// Largest group generated by the action matrices.
pub const MAX_GROUP_ORDER: usize = 100_000;
/// Largest module whose elements are enumerated (fibers, kernels, orbits).
pub const MAX_ENUMERATION: u64 = 10_000_000;

fn reduce(v: i128, n: u64) -> u64 {
    v.rem_euclid(n as i128) as u64
}

fn well_defined(m: &IntMatrix, src: &[u64], dst: &[u64]) -> std::result::Result<(), String> {
    if m.len() != dst.len() || m.iter().any(|row| row.len() != src.len()) {
        return Err(format!(
            "matrix must be {}x{}, got {}x{}",
            dst.len(),
            src.len(),
            m.len(),
            m.first().map_or(0, |r| r.len())
        ));
    }
    for (i, row) in m.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            if reduce(src[j] as i128 * e as i128, dst[i]) != 0 {
                return Err(format!(
                    "entry ({}, {}) = {e} does not define a map Z/{} -> Z/{}",
                    i + 1,
                    j + 1,
                    src[j],
                    dst[i]
                ));
            }
        }
    }
    Ok(())
}

/// Reduces row `i` modulo `dst[i]`.
fn normalize(m: &IntMatrix, dst: &[u64]) -> IntMatrix {
    m.iter()
        .zip(dst)
        .map(|(row, &n)| row.iter().map(|&e| reduce(e as i128, n) as i64).collect())
        .collect()
}

fn apply(m: &IntMatrix, x: &[u64], dst: &[u64]) -> Vec<u64> {
    m.iter()
        .zip(dst)
        .map(|(row, &n)| {
            let s: i128 = row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
            reduce(s, n)
        })
        .collect()
}

/// `a ∘ b` for maps `b: Z^(mid) -> ...`, both normalized.
fn compose(a: &IntMatrix, b: &IntMatrix, dst: &[u64]) -> IntMatrix {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .zip(dst)
        .map(|(row, &n)| {
            (0..cols)
                .map(|j| {
                    let s: i128 = row.iter().zip(b).map(|(&x, brow)| x as i128 * brow[j] as i128).sum();
                    reduce(s, n) as i64
                })
                .collect()
        })
        .collect()
}

fn identity(orders: &[u64]) -> IntMatrix {
    let k = orders.len();
    (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j && orders[i] > 1)).collect())
        .collect()
}

/// A point of a Galois module with its declared inseparable degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterPoint {
    pub coords: Vec<u64>,
    #[serde(default = "one")]
    pub q: u64,
}

fn one() -> u64 {
    1
}

impl CharacterPoint {
    pub fn new(coords: Vec<u64>, q: u64) -> Self {
        CharacterPoint { coords, q }
    }

    pub fn separable(coords: Vec<u64>) -> Self {
        CharacterPoint { coords, q: 1 }
    }
}

/// A Galois orbit, points in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterOrbit {
    pub points: Vec<Vec<u64>>,
    #[serde(default = "one")]
    pub q: u64,
}

impl CharacterOrbit {
    /// Separable degree: the orbit size.
    pub fn s(&self) -> usize {
        self.points.len()
    }

    /// `s · q`, the rank of the irreducible bundle on this orbit.
    pub fn degree(&self) -> usize {
        self.s() * self.q as usize
    }

    pub fn least(&self) -> &[u64] {
        &self.points[0]
    }

    pub fn representative(&self) -> CharacterPoint {
        CharacterPoint::new(self.points[0].clone(), self.q)
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.points.binary_search_by(|p| p.as_slice().cmp(x)).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.points.len() == 1 && self.points[0].iter().all(|&c| c == 0)
    }
}

impl fmt::Display for CharacterOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self
            .points
            .iter()
            .map(|p| format!("({})", p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", pts.join(" "))?;
        if self.q > 1 {
            write!(f, "^{}", self.q)?;
        }
        Ok(())
    }
}

/// `Z/n_1 x ... x Z/n_k` with a finite group of automorphisms.
#[derive(Clone)]
pub struct GaloisModule {
    orders: Vec<u64>,
    gamma: Vec<IntMatrix>,
    p: Option<u64>,
    group_order: usize,
}

impl PartialEq for GaloisModule {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders && self.gamma == other.gamma && self.p == other.p
    }
}

impl Eq for GaloisModule {}

impl fmt::Debug for GaloisModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisModule")
            .field("orders", &self.orders)
            .field("gamma", &self.gamma)
            .field("p", &self.p)
            .finish()
    }
}

impl GaloisModule {
    /// Validates the generators (well defined, invertible) and computes the
    /// generated group, which must have at most [`MAX_GROUP_ORDER`] elements.
    pub fn new(orders: Vec<u64>, gamma: Vec<IntMatrix>, p: Option<u64>) -> Result<Self> {
        if let Some(&n) = orders.iter().find(|&&n| n == 0) {
            return Err(Error::input(format!("cyclic orders must be positive, got {n}")));
        }
        if let Some(p) = p {
            if p != 1 && !crate::exactfield::is_prime(p) {
                return Err(Error::input(format!("p = {p} is neither 1 nor a prime")));
            }
        }
        let mut norm = Vec::with_capacity(gamma.len());
        for (i, g) in gamma.iter().enumerate() {
            well_defined(g, &orders, &orders).map_err(|e| Error::input(format!("gamma[{i}]: {e}")))?;
            norm.push(normalize(g, &orders));
        }
        let id = identity(&orders);
        for (i, g) in norm.iter().enumerate() {
            let mut power = g.clone();
            let mut k = 1;
            while power != id {
                if k >= MAX_GROUP_ORDER {
                    return Err(Error::input(format!(
                        "gamma[{i}] is not invertible (no power up to {MAX_GROUP_ORDER} is the identity)"
                    )));
                }
                power = compose(&power, g, &orders);
                k += 1;
            }
        }
        // Closure of the generated group.
        let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(h) = queue.pop_front() {
            for g in &norm {
                let next = compose(g, &h, &orders);
                if seen.insert(next.clone()) {
                    if seen.len() > MAX_GROUP_ORDER {
                        return Err(Error::input(format!(
                            "generated group has more than {MAX_GROUP_ORDER} elements"
                        )));
                    }
                    queue.push_back(next);
                }
            }
        }
        Ok(GaloisModule { orders, gamma: norm, p, group_order: seen.len() })
    }

    /// The module with trivial action.
    pub fn trivial_action(orders: Vec<u64>, p: Option<u64>) -> Result<Self> {
        Self::new(orders, Vec::new(), p)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn gamma(&self) -> &[IntMatrix] {
        &self.gamma
    }

    pub fn p(&self) -> Option<u64> {
        self.p
    }

    /// Number of elements of the acting group.
    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().try_fold(1u64, |a, &n| a.checked_mul(n)).unwrap_or(u64::MAX)
    }

    /// Exponent of the module: lcm of the cyclic orders.
    pub fn level(&self) -> u64 {
        self.orders.iter().fold(1, |a, &n| a.lcm(&n))
    }

    pub fn is_trivial_action(&self) -> bool {
        self.group_order == 1
    }

    pub fn check_coords(&self, x: &[u64]) -> Result<()> {
        if x.len() != self.orders.len() {
            return Err(Error::input(format!(
                "point has {} coordinates, module has {}",
                x.len(),
                self.orders.len()
            )));
        }
        for (i, (&c, &n)) in x.iter().zip(&self.orders).enumerate() {
            if c >= n {
                return Err(Error::input(format!("coordinate {} = {c} out of range for Z/{n}", i + 1)));
            }
        }
        Ok(())
    }

    pub fn check_point(&self, x: &CharacterPoint) -> Result<()> {
        self.check_coords(&x.coords)?;
        check_insep_degree(x.q, self.p)
    }

    pub fn act(&self, g: usize, x: &[u64]) -> Vec<u64> {
        apply(&self.gamma[g], x, &self.orders)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.orders).map(|((&x, &y), &n)| (x + y) % n).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.orders).map(|(&x, &n)| (n - x) % n).collect()
    }

    /// Additive order of a point.
    pub fn point_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.orders).fold(1, |a, (&c, &n)| a.lcm(&(n / n.gcd(&c))))
    }

    /// Orbit of `x` under the acting group, via breadth-first search over
    /// the generators.
    pub fn orbit_of(&self, x: &CharacterPoint) -> Result<CharacterOrbit> {
        self.check_point(x)?;
        Ok(CharacterOrbit { points: self.orbit_points(&x.coords), q: x.q })
    }

    fn orbit_points(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let mut seen: HashSet<Vec<u64>> = HashSet::from([x.to_vec()]);
        let mut queue = VecDeque::from([x.to_vec()]);
        while let Some(y) = queue.pop_front() {
            for g in 0..self.gamma.len() {
                let z = self.act(g, &y);
                if seen.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
        let mut points: Vec<Vec<u64>> = seen.into_iter().collect();
        points.sort();
        points
    }

    /// Checks that `orbit` is exactly one orbit of this module.
    pub fn check_orbit(&self, orbit: &CharacterOrbit) -> Result<()> {
        let Some(first) = orbit.points.first() else {
            return Err(Error::input("orbit has no points"));
        };
        self.check_coords(first)?;
        check_insep_degree(orbit.q, self.p)?;
        if self.orbit_points(first) != orbit.points {
            return Err(Error::input(format!("{orbit} is not a Galois orbit in canonical order")));
        }
        Ok(())
    }

    /// Canonical orbit of the negated points.
    pub fn neg_orbit(&self, orbit: &CharacterOrbit) -> CharacterOrbit {
        let mut points: Vec<Vec<u64>> = orbit.points.iter().map(|x| self.neg(x)).collect();
        points.sort();
        CharacterOrbit { points, q: orbit.q }
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Result<impl Iterator<Item = Vec<u64>> + '_> {
        let size = self.size();
        if size > MAX_ENUMERATION {
            return Err(Error::input(format!(
                "module of size {size} is too large to enumerate (limit {MAX_ENUMERATION})"
            )));
        }
        let mut cur: Option<Vec<u64>> = Some(vec![0; self.orders.len()]);
        Ok(std::iter::from_fn(move || {
            let out = cur.clone()?;
            let mut next = out.clone();
            let mut i = next.len();
            loop {
                if i == 0 {
                    cur = None;
                    break;
                }
                i -= 1;
                next[i] += 1;
                if next[i] < self.orders[i] {
                    cur = Some(next);
                    break;
                }
                next[i] = 0;
            }
            Some(out)
        }))
    }

    /// The orbit partition, sorted by least point.
    pub fn orbits(&self) -> Result<Vec<CharacterOrbit>> {
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut out = Vec::new();
        for x in self.elements()? {
            if seen.contains(&x) {
                continue;
            }
            let points = self.orbit_points(&x);
            seen.extend(points.iter().cloned());
            out.push(CharacterOrbit { points, q: 1 });
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({"orders": self.orders, "gamma": self.gamma, "p": self.p})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            orders: Vec<u64>,
            #[serde(default)]
            gamma: Vec<IntMatrix>,
            #[serde(default)]
            p: Option<u64>,
        }
        let w: Wire = serde_json::from_value(v.clone()).map_err(|e| Error::input(format!("Galois module: {e}")))?;
        Self::new(w.orders, w.gamma, w.p)
    }
}

impl Serialize for GaloisModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaloisModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        GaloisModule::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// `q` must be 1 in characteristic 0 and a power of `p` otherwise.
pub(crate) fn check_insep_degree(q: u64, p: Option<u64>) -> Result<()> {
    if q == 0 {
        return Err(Error::input("inseparable degree must be positive"));
    }
    match p {
        None => Ok(()),
        Some(1) if q != 1 => Err(Error::input(format!("inseparable degree {q} in characteristic 0"))),
        Some(1) => Ok(()),
        Some(p) => {
            let mut r = q;
            while r.is_multiple_of(p) {
                r /= p;
            }
            if r == 1 {
                Ok(())
            } else {
                Err(Error::input(format!("inseparable degree {q} is not a power of {p}")))
            }
        }
    }
}

/// A failed check on a candidate equivariant homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomViolation {
    Shape(String),
    NotWellDefined(String),
    GeneratorCount { src: usize, dst: usize },
    /// `f(g x) != g f(x)` for generator `generator` at basis point `point`.
    NotEquivariant { generator: usize, point: Vec<u64> },
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::Shape(s) | HomViolation::NotWellDefined(s) => write!(f, "{s}"),
            HomViolation::GeneratorCount { src, dst } => {
                write!(f, "source has {src} Galois generators, target has {dst}; they must correspond")
            }
            HomViolation::NotEquivariant { generator, point } => {
                write!(f, "not equivariant: generator {} at point {:?}", generator + 1, point)
            }
        }
    }
}

/// An equivariant homomorphism between Galois modules. Generators of the
/// two actions correspond by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisHom {
    matrix: IntMatrix,
    src: GaloisModule,
    dst: GaloisModule,
}

impl GaloisHom {
    pub fn violations(src: &GaloisModule, dst: &GaloisModule, matrix: &IntMatrix) -> Vec<HomViolation> {
        if let Err(e) = well_defined(matrix, &src.orders, &dst.orders) {
            return vec![if e.starts_with("matrix must be") {
                HomViolation::Shape(e)
            } else {
                HomViolation::NotWellDefined(e)
            }];
        }
        if src.gamma.len() != dst.gamma.len() {
            return vec![HomViolation::GeneratorCount { src: src.gamma.len(), dst: dst.gamma.len() }];
        }
        let m = normalize(matrix, &dst.orders);
        let mut out = Vec::new();
        for (g, (gs, gd)) in src.gamma.iter().zip(&dst.gamma).enumerate() {
            let lhs = compose(&m, gs, &dst.orders);
            let rhs = compose(gd, &m, &dst.orders);
            if lhs != rhs {
                let j = (0..src.orders.len())
                    .find(|&j| lhs.iter().zip(&rhs).any(|(a, b)| a[j] != b[j]))
                    .expect("matrices differ in some column");
                let mut point = vec![0; src.orders.len()];
                point[j] = 1;
                out.push(HomViolation::NotEquivariant { generator: g, point });
            }
        }
        out
    }

    pub fn new(src: GaloisModule, dst: GaloisModule, matrix: IntMatrix) -> Result<Self> {
        let v = Self::violations(&src, &dst, &matrix);
        if !v.is_empty() {
            let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            return Err(Error::input(format!("invalid homomorphism: {}", msgs.join("; "))));
        }
        let matrix = normalize(&matrix, &dst.orders);
        Ok(GaloisHom { matrix, src, dst })
    }

    pub fn identity(m: &GaloisModule) -> Self {
        GaloisHom { matrix: identity(&m.orders), src: m.clone(), dst: m.clone() }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn src(&self) -> &GaloisModule {
        &self.src
    }

    pub fn dst(&self) -> &GaloisModule {
        &self.dst
    }

    pub fn map_coords(&self, x: &[u64]) -> Vec<u64> {
        apply(&self.matrix, x, &self.dst.orders)
    }

    /// Image of `x`, its inseparable degree divided by `collapse`.
    pub fn apply(&self, x: &CharacterPoint, collapse: u64) -> Result<CharacterPoint> {
        self.src.check_point(x)?;
        if collapse == 0 || !x.q.is_multiple_of(collapse) {
            return Err(Error::input(format!(
                "inseparable collapse {collapse} does not divide q = {}",
                x.q
            )));
        }
        Ok(CharacterPoint::new(self.map_coords(&x.coords), x.q / collapse))
    }

    /// All preimages of `x`, in lexicographic order, carrying `x`'s
    /// inseparable degree.
    pub fn fiber(&self, x: &CharacterPoint) -> Result<Vec<CharacterPoint>> {
        self.dst.check_point(x)?;
        Ok(self
            .src
            .elements()?
            .filter(|y| self.map_coords(y) == x.coords)
            .map(|y| CharacterPoint::new(y, x.q))
            .collect())
    }

    /// Number of points of the kernel.
    pub fn kernel_size(&self) -> Result<u64> {
        let zero = vec![0; self.dst.orders.len()];
        Ok(self.src.elements()?.filter(|y| self.map_coords(y) == zero).count() as u64)
    }
}
