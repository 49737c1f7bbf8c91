//! Intertwiner spaces.
//!
//! [`hom_dim`] solves the stacked linear system `Z X_i - Y_i Z = 0`
//! directly. [`hom_space`] produces an explicit basis by a spinning method:
//! a morphism is determined by its values on a set of top generators, so the
//! unknowns are those values and each linear relation found while spinning
//! the generators under the action becomes a constraint.

use crate::error::Result;
use crate::exactfield::{FieldSpec, Matrix, SpanTracker, Vector};

use super::NilModule;

/// `dim Hom(a, b)` from the `(g·s·r) x (s·r)` intertwiner system.
pub fn hom_dim(a: &NilModule, b: &NilModule) -> Result<usize> {
    a.ensure_compatible(b)?;
    let f = a.field();
    let (r, s) = (a.rank(), b.rank());
    let n = s * r;
    if n == 0 {
        return Ok(0);
    }
    let mut rows: Vec<Vector> = Vec::with_capacity(a.g() * n);
    for (x, y) in a.mats().iter().zip(b.mats()) {
        // (Z X - Y Z)[i][j] = sum_c z[i][c] X[c][j] - sum_c Y[i][c] z[c][j]
        for i in 0..s {
            for j in 0..r {
                let mut row = vec![f.zero(); n];
                for c in 0..r {
                    let v = x.get(c, j);
                    if !f.is_zero(v) {
                        row[i * r + c] = f.add(&row[i * r + c], v);
                    }
                }
                for c in 0..s {
                    let v = y.get(i, c);
                    if !f.is_zero(v) {
                        row[c * r + j] = f.sub(&row[c * r + j], v);
                    }
                }
                if row.iter().any(|e| !f.is_zero(e)) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok(n);
    }
    Ok(n - Matrix::from_rows(f, n, &rows).rank())
}

/// A complement of the radical: `generators` span `M` modulo `rad M`, and
/// `projection` sends a vector to its coordinates on them modulo `rad M`.
pub(crate) struct Top {
    pub generators: Vec<Vector>,
    pub projection: Matrix,
}

pub(crate) fn top(field: &FieldSpec, rank: usize, parts: &[Matrix]) -> Top {
    let mut span = SpanTracker::new(field, rank);
    for n in parts {
        for v in n.column_vectors() {
            span.insert(v);
        }
    }
    let rad: Vec<Vector> = span.vectors().to_vec();
    let mut generators = Vec::new();
    for v in Matrix::identity(field, rank).column_vectors() {
        if span.insert(v.clone()) {
            generators.push(v);
        }
    }
    let t = generators.len();
    let mut cols = generators.clone();
    cols.extend(rad);
    let basis = Matrix::from_columns(field, rank, &cols);
    let inv = basis.inverse().expect("generators and radical span the module");
    Top { generators, projection: inv.slice(0..t, 0..rank) }
}

/// A basis of `Hom(a, b)` as `s x r` matrices.
pub fn hom_space(a: &NilModule, b: &NilModule) -> Result<Vec<Matrix>> {
    a.ensure_compatible(b)?;
    Ok(hom_basis(a.field(), a.rank(), &a.nil_parts(), b.rank(), &b.nil_parts()))
}

/// Spinning computation of `Hom` from nilpotent parts; morphisms of the
/// modules are exactly the matrices intertwining the nilpotent parts.
pub(crate) fn hom_basis(f: &FieldSpec, r: usize, a: &[Matrix], s: usize, b: &[Matrix]) -> Vec<Matrix> {
    if r == 0 || s == 0 {
        return Vec::new();
    }
    let gens = top(f, r, a).generators;
    let t = gens.len();
    let unknowns = t * s;
    // Image of the k-th spanning vector, as a linear map from the unknowns
    // (the images of the generators, generator-major) to b.
    let mut images: Vec<Matrix> = Vec::with_capacity(r);
    let mut span = SpanTracker::new(f, r);
    for (j, v) in gens.into_iter().enumerate() {
        let inserted = span.insert(v);
        debug_assert!(inserted);
        images.push(Matrix::from_fn(f, s, unknowns, |row, col| {
            if col == j * s + row {
                f.one()
            } else {
                f.zero()
            }
        }));
    }
    let mut constraints: Vec<Vector> = Vec::new();
    let mut k = 0;
    while k < span.len() {
        for (x, y) in a.iter().zip(b) {
            let w = x.mul_vec(&span.vectors()[k]);
            let img = y.mul(&images[k]);
            match span.express(&w) {
                Some(c) => {
                    let mut rel = img;
                    for (l, cl) in c.iter().enumerate() {
                        if !f.is_zero(cl) {
                            rel = rel.sub(&images[l].scale(cl));
                        }
                    }
                    for i in 0..s {
                        let row = rel.row(i);
                        if row.iter().any(|e| !f.is_zero(e)) {
                            constraints.push(row);
                        }
                    }
                }
                None => {
                    span.insert(w);
                    images.push(img);
                }
            }
        }
        k += 1;
    }
    debug_assert_eq!(span.len(), r);
    let solutions: Vec<Vector> = if constraints.is_empty() {
        Matrix::identity(f, unknowns).column_vectors()
    } else {
        Matrix::from_rows(f, unknowns, &constraints).kernel_basis()
    };
    let basis = Matrix::from_columns(f, r, span.vectors());
    let basis_inv = basis.inverse().expect("spinning spans the module");
    solutions
        .iter()
        .map(|u| {
            let cols: Vec<Vector> = images.iter().map(|m| m.mul_vec(u)).collect();
            Matrix::from_columns(f, s, &cols).mul(&basis_inv)
        })
        .collect()
}

/// Whether `z` intertwines `a` and `b`.
pub(crate) fn is_morphism(z: &Matrix, a: &NilModule, b: &NilModule) -> bool {
    a.mats().iter().zip(b.mats()).all(|(x, y)| z.mul(x) == y.mul(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilmod::Flavor;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn jordan(n: usize) -> NilModule {
        NilModule::jordan(&q(), Flavor::Additive, n)
    }

    #[test]
    fn hom_dim_examples() {
        let triv = |r| NilModule::trivial(&q(), Flavor::Additive, 1, r);
        assert_eq!(hom_dim(&triv(2), &triv(3)).unwrap(), 6);
        assert_eq!(hom_dim(&jordan(2), &jordan(2)).unwrap(), 2);
        assert_eq!(hom_dim(&jordan(2), &triv(1)).unwrap(), 1);
        assert_eq!(hom_dim(&triv(1), &jordan(2)).unwrap(), 1);
        for m in 1..6 {
            for n in 1..6 {
                assert_eq!(hom_dim(&jordan(m), &jordan(n)).unwrap(), m.min(n));
            }
        }
    }

    #[test]
    fn spinning_agrees_with_stacked_system() {
        let a = jordan(3).direct_sum(&jordan(1)).unwrap();
        let b = jordan(2).tensor(&jordan(3)).unwrap();
        for (x, y) in [(&a, &b), (&b, &a), (&b, &b), (&a, &a)] {
            let basis = hom_space(x, y).unwrap();
            assert_eq!(basis.len(), hom_dim(x, y).unwrap());
            for z in &basis {
                assert!(is_morphism(z, x, y));
            }
            let flat: Vec<Vector> = basis.iter().map(|z| z.entries().to_vec()).collect();
            if !flat.is_empty() {
                let n = flat[0].len();
                assert_eq!(Matrix::from_rows(&q(), n, &flat).rank(), basis.len());
            }
        }
    }

    #[test]
    fn top_of_jordan_sum() {
        let m = jordan(3).direct_sum(&jordan(2)).unwrap();
        let t = top(&q(), 5, &m.nil_parts());
        assert_eq!(t.generators.len(), 2);
    }
}
