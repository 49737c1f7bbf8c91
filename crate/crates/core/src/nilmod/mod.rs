//! Finite-dimensional unipotent modules as tuples of commuting matrices.
//!
//! A module of rank `r` over `g` generators is a tuple `X_1..X_g` of
//! pairwise commuting `r x r` matrices. In the additive flavor the `X_i` are
//! nilpotent (a module over the vector group `G_a^g`); in the unipotent
//! flavor they are unipotent (a continuous module over `Z_p^g`, positive
//! characteristic only). Morphisms `(X) -> (Y)` are the matrices `Z` with
//! `Z X_i = Y_i Z`.
//!
//! Tensor products use Kronecker ordering with the left factor major.

mod decompose;
mod ext;
mod hom;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix, SpanTracker};

pub use decompose::{decompose, is_isomorphic, DecompositionReport, Summand};
pub use ext::ext_dims;
pub use hom::{hom_dim, hom_space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Commuting nilpotent generators; tensor rule `X ⊗ 1 + 1 ⊗ Y`.
    Additive,
    /// Commuting unipotent generators; tensor rule `X ⊗ Y`.
    Unipotent,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Additive => write!(f, "additive"),
            Flavor::Unipotent => write!(f, "unipotent"),
        }
    }
}

/// A failed module axiom, with 1-based generator indices in messages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NonCommuting { i: usize, j: usize },
    NotNilpotent { i: usize },
    NotUnipotent { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonCommuting { i, j } => {
                write!(f, "non-commuting: X_{} X_{} != X_{} X_{}", i + 1, j + 1, j + 1, i + 1)
            }
            Violation::NotNilpotent { i } => write!(f, "not nilpotent: X_{}", i + 1),
            Violation::NotUnipotent { i } => write!(f, "not unipotent: X_{}", i + 1),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct NilModule {
    field: FieldSpec,
    flavor: Flavor,
    g: usize,
    rank: usize,
    mats: Vec<Matrix>,
}

impl NilModule {
    /// Builds a module from its generator matrices, checking shapes only.
    /// Use [`NilModule::validate`] for the module axioms.
    pub fn new(field: FieldSpec, flavor: Flavor, mats: Vec<Matrix>) -> Result<Self> {
        let g = mats.len();
        if g == 0 {
            return Err(Error::input("a module needs at least one generator (g >= 1)"));
        }
        let rank = mats[0].rows();
        for (i, m) in mats.iter().enumerate() {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::input(format!(
                    "generator X_{} is {}x{}, expected {rank}x{rank}",
                    i + 1,
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != &field {
                return Err(Error::input(format!("generator X_{} is over {}, module over {field}", i + 1, m.field())));
            }
        }
        Ok(NilModule { field, flavor, g, rank, mats })
    }

    /// Like [`NilModule::new`] but also rejects modules that violate the
    /// axioms.
    pub fn checked(field: FieldSpec, flavor: Flavor, mats: Vec<Matrix>) -> Result<Self> {
        let m = Self::new(field, flavor, mats)?;
        m.ensure_valid()?;
        Ok(m)
    }

    /// Builds a module from its nilpotent parts `N_i` (`X_i = N_i` or
    /// `X_i = 1 + N_i`).
    pub fn from_nilpotent_parts(field: &FieldSpec, flavor: Flavor, g: usize, rank: usize, parts: Vec<Matrix>) -> Self {
        assert_eq!(parts.len(), g);
        let mats = match flavor {
            Flavor::Additive => parts,
            Flavor::Unipotent => {
                let id = Matrix::identity(field, rank);
                parts.iter().map(|n| n.add(&id)).collect()
            }
        };
        NilModule { field: field.clone(), flavor, g, rank, mats }
    }

    /// The trivial module of the given rank (all nilpotent parts zero).
    pub fn trivial(field: &FieldSpec, flavor: Flavor, g: usize, rank: usize) -> Self {
        let parts = vec![Matrix::zeros(field, rank, rank); g];
        Self::from_nilpotent_parts(field, flavor, g, rank, parts)
    }

    /// The single Jordan block `J_n` (nilpotent part with ones on the
    /// superdiagonal) for `g = 1`.
    pub fn jordan(field: &FieldSpec, flavor: Flavor, n: usize) -> Self {
        let j = Matrix::from_fn(field, n, n, |a, b| if b == a + 1 { field.one() } else { field.zero() });
        Self::from_nilpotent_parts(field, flavor, 1, n, vec![j])
    }

    /// Regular representation of `Z/n_1 x ... x Z/n_k` over a field of
    /// characteristic p, with generator `j` acting by the cyclic shift on
    /// the `j`-th factor and `g - k` further generators acting trivially.
    pub fn regular_representation(field: &FieldSpec, g: usize, orders: &[usize]) -> Result<Self> {
        if orders.len() > g {
            return Err(Error::input(format!(
                "{} cyclic factors cannot be generated by {g} generators",
                orders.len()
            )));
        }
        if field.characteristic() == 0 {
            return Err(Error::unsupported("regular representations of p-groups need characteristic p"));
        }
        let rank: usize = orders.iter().product();
        let shift = |n: usize| Matrix::from_fn(field, n, n, |a, b| if a == (b + 1) % n { field.one() } else { field.zero() });
        let mats = (0..g)
            .map(|j| {
                orders.iter().enumerate().fold(Matrix::identity(field, 1), |acc, (l, &n)| {
                    let factor = if l == j { shift(n) } else { Matrix::identity(field, n) };
                    acc.kron(&factor)
                })
            })
            .collect::<Vec<_>>();
        let mats = if rank == 0 { vec![Matrix::zeros(field, 0, 0); g] } else { mats };
        Self::new(field.clone(), Flavor::Unipotent, mats)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    /// The nilpotent parts `N_i`: `X_i` (additive) or `X_i - 1` (unipotent).
    pub fn nil_parts(&self) -> Vec<Matrix> {
        match self.flavor {
            Flavor::Additive => self.mats.clone(),
            Flavor::Unipotent => {
                let id = Matrix::identity(&self.field, self.rank);
                self.mats.iter().map(|x| x.sub(&id)).collect()
            }
        }
    }

    /// Lists every violated axiom. Errors when the flavor cannot exist over
    /// the module's field.
    pub fn validate(&self) -> Result<Vec<Violation>> {
        if self.flavor == Flavor::Unipotent && self.field.characteristic() == 0 {
            return Err(Error::input(
                "unipotent flavor requires a field of positive characteristic",
            ));
        }
        let mut out = Vec::new();
        for i in 0..self.g {
            for j in i + 1..self.g {
                if self.mats[i].mul(&self.mats[j]) != self.mats[j].mul(&self.mats[i]) {
                    out.push(Violation::NonCommuting { i, j });
                }
            }
        }
        for (i, n) in self.nil_parts().iter().enumerate() {
            if !n.pow(self.rank as u64).is_zero() {
                out.push(match self.flavor {
                    Flavor::Additive => Violation::NotNilpotent { i },
                    Flavor::Unipotent => Violation::NotUnipotent { i },
                });
            }
        }
        Ok(out)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate()?;
        if v.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            Err(Error::input(format!("module axioms violated: {}", msgs.join("; "))))
        }
    }

    fn ensure_compatible(&self, other: &NilModule) -> Result<()> {
        if self.field != other.field {
            return Err(Error::input(format!("field mismatch: {} vs {}", self.field, other.field)));
        }
        if self.flavor != other.flavor {
            return Err(Error::input(format!("flavor mismatch: {} vs {}", self.flavor, other.flavor)));
        }
        if self.g != other.g {
            return Err(Error::input(format!("generator count mismatch: {} vs {}", self.g, other.g)));
        }
        Ok(())
    }

    /// Whether every nilpotent part vanishes (a direct sum of trivial
    /// rank-1 modules).
    pub fn is_trivial(&self) -> bool {
        self.nil_parts().iter().all(|n| n.is_zero())
    }

    /// `P^{-1} X_i P` for an invertible `P`.
    pub fn conjugate(&self, p: &Matrix) -> Result<NilModule> {
        let inv = p.inverse().ok_or_else(|| Error::input("change of basis is not invertible"))?;
        Ok(NilModule {
            field: self.field.clone(),
            flavor: self.flavor,
            g: self.g,
            rank: self.rank,
            mats: self.mats.iter().map(|x| inv.mul(x).mul(p)).collect(),
        })
    }

    /// The diagonal block on coordinates `range`; meaningful when those
    /// coordinates span a submodule with a complementary submodule.
    pub(crate) fn block(&self, range: std::ops::Range<usize>) -> NilModule {
        NilModule {
            field: self.field.clone(),
            flavor: self.flavor,
            g: self.g,
            rank: range.len(),
            mats: self.mats.iter().map(|x| x.slice(range.clone(), range.clone())).collect(),
        }
    }

    pub fn direct_sum(&self, other: &NilModule) -> Result<NilModule> {
        self.ensure_compatible(other)?;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| Matrix::block_diag(&self.field, &[a, b]))
            .collect();
        Ok(NilModule { field: self.field.clone(), flavor: self.flavor, g: self.g, rank: self.rank + other.rank, mats })
    }

    pub fn tensor(&self, other: &NilModule) -> Result<NilModule> {
        self.ensure_compatible(other)?;
        let f = &self.field;
        let mats = match self.flavor {
            Flavor::Additive => {
                let ia = Matrix::identity(f, self.rank);
                let ib = Matrix::identity(f, other.rank);
                self.mats
                    .iter()
                    .zip(&other.mats)
                    .map(|(x, y)| x.kron(&ib).add(&ia.kron(y)))
                    .collect()
            }
            Flavor::Unipotent => self.mats.iter().zip(&other.mats).map(|(x, y)| x.kron(y)).collect(),
        };
        Ok(NilModule { field: f.clone(), flavor: self.flavor, g: self.g, rank: self.rank * other.rank, mats })
    }

    pub fn dual(&self) -> NilModule {
        let mats = match self.flavor {
            Flavor::Additive => self.mats.iter().map(|x| x.transpose().neg()).collect(),
            Flavor::Unipotent => self
                .mats
                .iter()
                .map(|x| x.inverse().expect("unipotent generators are invertible").transpose())
                .collect(),
        };
        NilModule { field: self.field.clone(), flavor: self.flavor, g: self.g, rank: self.rank, mats }
    }

    /// Dimensions of the radical series `M ⊇ rad M ⊇ rad^2 M ⊇ ... ⊇ 0`,
    /// ending before the first zero term.
    pub fn radical_layers(&self) -> Vec<usize> {
        let parts = self.nil_parts();
        let mut current: Vec<Vec<_>> = Matrix::identity(&self.field, self.rank).column_vectors();
        let mut dims = Vec::new();
        while !current.is_empty() {
            dims.push(current.len());
            let mut next = SpanTracker::new(&self.field, self.rank);
            for v in &current {
                for n in &parts {
                    next.insert(n.mul_vec(v));
                }
            }
            current = next.vectors().to_vec();
        }
        dims
    }

    /// Length of the radical filtration: the least `n` such that every
    /// product of `n` nilpotent parts vanishes. Zero for the zero module.
    pub fn loewy_length(&self) -> usize {
        self.radical_layers().len()
    }

    /// Dimension of the socle (common kernel of the nilpotent parts).
    pub fn socle_dim(&self) -> usize {
        if self.rank == 0 {
            return 0;
        }
        let stacked = self
            .nil_parts()
            .into_iter()
            .reduce(|a, b| a.vstack(&b))
            .expect("g >= 1");
        self.rank - stacked.rank()
    }

    /// Least `n` with `X_i^(p^n) = 1` for all `i`.
    pub fn power_order(&self) -> Result<u32> {
        if self.flavor != Flavor::Unipotent {
            return Err(Error::unsupported("power order is defined for the unipotent flavor only"));
        }
        let p = self.field.characteristic();
        if p == 0 {
            return Err(Error::input("unipotent flavor requires positive characteristic"));
        }
        let mut cur = self.mats.clone();
        let mut n = 0u32;
        while !cur.iter().all(|x| x.is_identity()) {
            if n > 64 {
                return Err(Error::input("generators are not unipotent"));
            }
            cur = cur.iter().map(|x| x.pow(p)).collect();
            n += 1;
        }
        Ok(n)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field,
            "flavor": self.flavor,
            "g": self.g,
            "rank": self.rank,
            "mats": self.mats.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::input("module must be a JSON object"))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "field" | "flavor" | "g" | "rank" | "mats") {
                return Err(Error::input(format!("unknown module key {key:?}")));
            }
        }
        let get = |k: &str| obj.get(k).ok_or_else(|| Error::input(format!("module is missing {k:?}")));
        let field: FieldSpec = serde_json::from_value(get("field")?.clone()).map_err(|e| Error::input(e.to_string()))?;
        let flavor: Flavor = serde_json::from_value(get("flavor")?.clone()).map_err(|e| Error::input(e.to_string()))?;
        let g = get("g")?.as_u64().ok_or_else(|| Error::input("\"g\" must be a non-negative integer"))? as usize;
        let rank = get("rank")?.as_u64().ok_or_else(|| Error::input("\"rank\" must be a non-negative integer"))? as usize;
        let mats = get("mats")?.as_array().ok_or_else(|| Error::input("\"mats\" must be an array"))?;
        if mats.len() != g {
            return Err(Error::input(format!("\"g\" is {g} but {} matrices given", mats.len())));
        }
        let mats = mats
            .iter()
            .map(|m| Matrix::from_json(&field, m, Some(rank)))
            .collect::<Result<Vec<_>>>()?;
        let module = NilModule::new(field, flavor, mats)?;
        if module.rank != rank {
            return Err(Error::input(format!("\"rank\" is {rank} but matrices are {0}x{0}", module.rank)));
        }
        Ok(module)
    }
}

impl fmt::Debug for NilModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NilModule({}, {}, g={}, rank={}) ", self.field, self.flavor, self.g, self.rank)?;
        f.debug_list().entries(self.mats.iter()).finish()
    }
}

impl Serialize for NilModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for NilModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        NilModule::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// `Hom(a, b) = a^∨ ⊗ b` as a module.
pub fn hom_module(a: &NilModule, b: &NilModule) -> Result<NilModule> {
    a.dual().tensor(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn unit(n: usize, i: usize, j: usize) -> Matrix {
        Matrix::unit(&q(), n, i, j)
    }

    #[test]
    fn validate_examples() {
        let m = NilModule::trivial(&q(), Flavor::Additive, 2, 1);
        assert!(m.validate().unwrap().is_empty());

        let id = NilModule::new(q(), Flavor::Additive, vec![Matrix::identity(&q(), 2)]).unwrap();
        assert_eq!(id.validate().unwrap(), vec![Violation::NotNilpotent { i: 0 }]);

        // X_1 = E_12, X_2 = E_13 + E_21 (1-based)
        let x1 = unit(3, 0, 1);
        let x2 = unit(3, 0, 2).add(&unit(3, 1, 0));
        assert_ne!(x1.mul(&x2), x2.mul(&x1));
        let m = NilModule::new(q(), Flavor::Additive, vec![x1, x2]).unwrap();
        assert!(m.validate().unwrap().contains(&Violation::NonCommuting { i: 0, j: 1 }));

        let bad = NilModule::new(q(), Flavor::Unipotent, vec![Matrix::identity(&q(), 1)]).unwrap();
        assert!(bad.validate().is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let j2 = NilModule::jordan(&q(), Flavor::Additive, 2);
        let zero = NilModule::trivial(&q(), Flavor::Additive, 1, 0);
        assert_eq!(j2.direct_sum(&zero).unwrap(), j2);
        let s = j2.direct_sum(&NilModule::jordan(&q(), Flavor::Additive, 1)).unwrap();
        assert_eq!(s.rank(), 3);
        assert_eq!(s.mats()[0], unit(3, 0, 1));
        let t3 = NilModule::trivial(&q(), Flavor::Additive, 1, 3);
        assert_eq!(j2.direct_sum(&t3).unwrap().rank(), 5);
        let gf2 = FieldSpec::prime(2).unwrap();
        assert!(j2.direct_sum(&NilModule::jordan(&gf2, Flavor::Additive, 1)).is_err());
    }

    #[test]
    fn tensor_with_unit_and_zero() {
        let j3 = NilModule::jordan(&q(), Flavor::Additive, 3);
        let one = NilModule::trivial(&q(), Flavor::Additive, 1, 1);
        assert_eq!(j3.tensor(&one).unwrap(), j3);
        let zero = NilModule::trivial(&q(), Flavor::Additive, 1, 0);
        assert_eq!(j3.tensor(&zero).unwrap().rank(), 0);
    }

    #[test]
    fn loewy_examples() {
        assert_eq!(NilModule::trivial(&q(), Flavor::Additive, 2, 3).loewy_length(), 1);
        for n in 1..6 {
            assert_eq!(NilModule::jordan(&q(), Flavor::Additive, n).loewy_length(), n);
        }
        let j2 = NilModule::jordan(&q(), Flavor::Additive, 2);
        assert_eq!(j2.tensor(&j2).unwrap().loewy_length(), 3);
        assert_eq!(NilModule::trivial(&q(), Flavor::Additive, 1, 0).loewy_length(), 0);
    }

    #[test]
    fn power_order_examples() {
        let gf2 = FieldSpec::prime(2).unwrap();
        assert_eq!(NilModule::trivial(&gf2, Flavor::Unipotent, 2, 3).power_order().unwrap(), 0);
        assert_eq!(NilModule::jordan(&gf2, Flavor::Unipotent, 2).power_order().unwrap(), 1);
        for p in [2u64, 3] {
            let f = FieldSpec::prime(p).unwrap();
            let reg = NilModule::regular_representation(&f, 1, &[(p * p) as usize]).unwrap();
            assert!(reg.validate().unwrap().is_empty());
            assert_eq!(reg.power_order().unwrap(), 2);
        }
        assert!(NilModule::jordan(&q(), Flavor::Additive, 2).power_order().is_err());
    }

    #[test]
    fn dual_formulas() {
        let j3 = NilModule::jordan(&q(), Flavor::Additive, 3);
        assert_eq!(j3.dual().mats()[0], j3.mats()[0].transpose().neg());
        assert_eq!(j3.dual().dual(), j3);
        let gf3 = FieldSpec::prime(3).unwrap();
        let u = NilModule::jordan(&gf3, Flavor::Unipotent, 3);
        let d = u.dual();
        assert!(d.validate().unwrap().is_empty());
        assert!(d.mats()[0].transpose().mul(&u.mats()[0]).is_identity());
    }

    #[test]
    fn json_round_trip() {
        let gf4 = FieldSpec::finite(2, 2, Some(vec![1, 1, 1])).unwrap();
        let m = NilModule::jordan(&gf4, Flavor::Unipotent, 2);
        let v = m.to_json();
        assert_eq!(v["mats"][0][0][1], json!([1, 0]));
        assert_eq!(NilModule::from_json(&v).unwrap(), m);
        let zero = NilModule::trivial(&q(), Flavor::Additive, 2, 0);
        assert_eq!(NilModule::from_json(&zero.to_json()).unwrap(), zero);
        let mut bad = v.clone();
        bad["rank"] = json!(3);
        assert!(NilModule::from_json(&bad).is_err());
    }
}
