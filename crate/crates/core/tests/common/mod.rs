//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

use hvb_core::{FieldSpec, Flavor, Matrix, NilModule};
use rand::Rng;

/// Independent Jordan type of a single nilpotent matrix from the ranks of
/// its powers: block sizes in decreasing order.
pub fn jordan_type(n: &Matrix) -> Vec<usize> {
    let size = n.rows();
    let mut ranks = vec![size];
    let mut power = Matrix::identity(n.field(), size);
    while *ranks.last().unwrap() > 0 {
        power = power.mul(n);
        ranks.push(power.rank());
    }
    // at_least[k] = number of blocks of size >= k + 1
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for k in 0..at_least.len() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k + 1, at_least[k] - next));
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

pub fn random_matrix<R: Rng>(f: &FieldSpec, rng: &mut R, rows: usize, cols: usize, span: i64) -> Matrix {
    Matrix::from_fn(f, rows, cols, |_, _| f.random(rng, span))
}

pub fn random_invertible<R: Rng>(f: &FieldSpec, rng: &mut R, n: usize) -> Matrix {
    loop {
        let p = random_matrix(f, rng, n, n, 2);
        if p.is_invertible() {
            return p;
        }
    }
}

fn elementary(f: &FieldSpec, n: usize, pairs: &[(usize, usize)]) -> Matrix {
    Matrix::from_fn(f, n, n, |i, j| if pairs.contains(&(i, j)) { f.one() } else { f.zero() })
}

fn shift(f: &FieldSpec, n: usize) -> Matrix {
    Matrix::from_fn(f, n, n, |i, j| if j == i + 1 { f.one() } else { f.zero() })
}

/// One commuting nilpotent tuple of `g` matrices on a small piece.
fn random_piece<R: Rng>(f: &FieldSpec, rng: &mut R, g: usize, budget: usize) -> Vec<Matrix> {
    let kind = if g >= 2 && budget >= 3 { rng.gen_range(0..4) } else { 0 };
    match kind {
        // Polynomials without constant term in one Jordan block.
        0 => {
            let k = rng.gen_range(1..=budget.min(4));
            let j = shift(f, k);
            let j2 = j.mul(&j);
            (0..g)
                .map(|_| j.scale(&f.random(rng, 2)).add(&j2.scale(&f.random(rng, 2))))
                .collect()
        }
        // Two Jordan blocks tensored, one generator on each factor.
        1 => {
            let a = rng.gen_range(1..=2usize);
            let b = rng.gen_range(1..=(budget / a).clamp(1, 3));
            let ia = Matrix::identity(f, a);
            let ib = Matrix::identity(f, b);
            let mut out = vec![shift(f, a).kron(&ib), ia.kron(&shift(f, b))];
            out.truncate(g);
            while out.len() < g {
                let c = out[0].scale(&f.random(rng, 2)).add(&out[1].scale(&f.random(rng, 2)));
                out.push(c);
            }
            out
        }
        // Simple socle, two-dimensional top.
        2 => {
            let mut out = vec![elementary(f, 3, &[(0, 1)]), elementary(f, 3, &[(0, 2)])];
            while out.len() < g {
                out.push(elementary(f, 3, &[(0, 1)]).scale(&f.random(rng, 2)));
            }
            out
        }
        // Simple top, two-dimensional socle.
        _ => {
            let mut out = vec![elementary(f, 3, &[(1, 0)]), elementary(f, 3, &[(2, 0)])];
            while out.len() < g {
                out.push(elementary(f, 3, &[(2, 0)]).scale(&f.random(rng, 2)));
            }
            out
        }
    }
}

/// A random valid module: a direct sum of small pieces, conjugated by a
/// random change of basis.
pub fn random_module<R: Rng>(f: &FieldSpec, flavor: Flavor, rng: &mut R, g: usize, max_rank: usize) -> NilModule {
    let target = rng.gen_range(1..=max_rank);
    let mut parts: Vec<Vec<Matrix>> = Vec::new();
    let mut used = 0;
    while used < target {
        let piece = random_piece(f, rng, g, target - used);
        used += piece[0].rows();
        parts.push(piece);
    }
    let nil: Vec<Matrix> = (0..g)
        .map(|i| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| &p[i]).collect();
            Matrix::block_diag(f, &blocks)
        })
        .collect();
    let m = NilModule::from_nilpotent_parts(f, flavor, g, used, nil);
    let p = random_invertible(f, rng, used);
    let out = m.conjugate(&p).expect("invertible");
    out.ensure_valid().expect("generated module is valid");
    out
}

pub fn fields() -> Vec<FieldSpec> {
    vec![FieldSpec::rationals(), FieldSpec::prime(2).unwrap(), FieldSpec::prime(3).unwrap()]
}

