//! Ext groups via the Koszul complex.
//!
//! In characteristic 0, `Ext^j(a, b)` for the additive flavor is the
//! cohomology of `H ⊗ Λ^j (k^g)^*` with `H = Hom(a, b)` and differential
//! `d(h ⊗ e_S) = Σ_i N_i h ⊗ e_i ∧ e_S`.

use super::{hom_module, Flavor, NilModule};
use crate::error::{Error, Result};
use crate::exactfield::{Matrix, Vector};

fn subsets(g: usize, j: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, g: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for i in start..g {
            cur.push(i);
            go(i + 1, g, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, g, j, &mut Vec::new(), &mut out);
    out
}

/// Rank of `d^j : C^j -> C^{j+1}`.
fn differential_rank(parts: &[Matrix], n: usize, j: usize) -> usize {
    let g = parts.len();
    let f = parts[0].field();
    let src = subsets(g, j);
    let dst = subsets(g, j + 1);
    if src.is_empty() || dst.is_empty() || n == 0 {
        return 0;
    }
    let index = |s: &[usize]| dst.iter().position(|d| d == s).expect("subset");
    let cols = src.len() * n;
    let mut rows: Vec<Vector> = vec![vec![f.zero(); cols]; dst.len() * n];
    for (si, s) in src.iter().enumerate() {
        for (i, x) in parts.iter().enumerate() {
            if s.contains(&i) {
                continue;
            }
            let before = s.iter().filter(|&&l| l < i).count();
            let mut t = s.clone();
            t.push(i);
            t.sort_unstable();
            let ti = index(&t);
            for a in 0..n {
                for b in 0..n {
                    let v = x.get(a, b);
                    if f.is_zero(v) {
                        continue;
                    }
                    let v = if before % 2 == 1 { f.neg(v) } else { v.clone() };
                    let cell = &mut rows[ti * n + a][si * n + b];
                    *cell = f.add(cell, &v);
                }
            }
        }
    }
    Matrix::from_rows(f, cols, &rows).rank()
}

/// `dim Ext^j(a, b)` for `j = 0..=max_degree`.
pub fn ext_dims(a: &NilModule, b: &NilModule, max_degree: usize) -> Result<Vec<usize>> {
    a.ensure_compatible(b)?;
    if a.flavor() == Flavor::Unipotent || a.field().characteristic() != 0 {
        return Err(Error::unsupported("Ext unsupported in characteristic p"));
    }
    let h = hom_module(a, b)?;
    let parts = h.nil_parts();
    let (g, n) = (h.g(), h.rank());
    let binom = |j: usize| subsets(g, j).len();
    let ranks: Vec<usize> = (0..g).map(|j| differential_rank(&parts, n, j)).collect();
    Ok((0..=max_degree)
        .map(|j| {
            if j > g {
                return 0;
            }
            let out = if j < g { ranks[j] } else { 0 };
            let inc = if j > 0 { ranks[j - 1] } else { 0 };
            n * binom(j) - out - inc
        })
        .collect())
}
