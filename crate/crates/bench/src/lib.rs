//! Deterministic inputs for the benchmarks.

use hvb_core::bundlecat::{GroundContext, HomogBundle};
use hvb_core::galois::{CharacterPoint, GaloisModule};
use hvb_core::isogeny::IsogenyData;
use hvb_core::{FieldSpec, Flavor, Matrix, NilModule};

pub fn jordan_tensor(a: usize, b: usize) -> NilModule {
    let q = FieldSpec::rationals();
    NilModule::jordan(&q, Flavor::Additive, a)
        .tensor(&NilModule::jordan(&q, Flavor::Additive, b))
        .expect("same field and flavor")
}

/// A dense `n x n` rational matrix with small entries and full rank.
pub fn dense_rational(n: usize) -> Matrix {
    let q = FieldSpec::rationals();
    Matrix::from_fn(&q, n, n, |i, j| q.from_int(((i * 7 + j * 13 + i * j) % 11) as i64 - 5 + i64::from(i == j) * 20))
}

/// `J_a ⊕ J_b` over `GF(p)` in the unipotent flavor, hidden by a basis change.
pub fn hidden_sum(p: u64, a: usize, b: usize) -> NilModule {
    let f = FieldSpec::prime(p).expect("prime");
    let m = NilModule::jordan(&f, Flavor::Unipotent, a)
        .direct_sum(&NilModule::jordan(&f, Flavor::Unipotent, b))
        .expect("same field and flavor");
    let n = a + b;
    let basis = Matrix::from_fn(&f, n, n, |i, j| if i <= j { f.one() } else { f.zero() });
    m.conjugate(&basis).expect("upper unitriangular is invertible")
}

/// Multiplication by `d` on the characters of an elliptic curve in
/// characteristic 0, truncated at level `n`, with a Galois action by `u`.
pub fn multiplication_isogeny(n: u64, d: u64, u: i64) -> (IsogenyData, HomogBundle) {
    let gamma = vec![vec![vec![u, 0], vec![0, u]]];
    let chars = GaloisModule::new(vec![n, n], gamma, None).expect("valid action");
    let ctx = GroundContext::new(1, 1, 0, false, chars, None).expect("valid context");
    let mut iso = IsogenyData::identity(&ctx);
    iso.dual_map = vec![vec![d as i64, 0], vec![0, d as i64]];
    iso.mult_kernel_order = d * d;
    let x = ctx.orbit_of(&CharacterPoint::separable(vec![d % n, 0])).expect("point");
    let e = HomogBundle::irreducible(&ctx, x).expect("orbit");
    (iso, e)
}
