use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FqMatrix;
use crate::error::{Error, Result};
use crate::field::{factor_poly, Fq, FqPoly};

/// det(xI - M), by reduction to Hessenberg form and the row recurrence.
pub fn char_poly(m: &FqMatrix) -> Result<FqPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let f = m.field().clone();
    let n = m.rows();
    let mut h = m.clone();
    for col in 1..n.saturating_sub(1) {
        let Some(piv) = (col..n).find(|&i| !h.get(i, col - 1).is_zero()) else {
            continue;
        };
        h.swap_rows(piv, col);
        h.swap_cols(piv, col);
        let t = f.inv(h.get(col, col - 1)).expect("nonzero pivot");
        for i in col + 1..n {
            let u = f.mul(h.get(i, col - 1), t);
            if u.is_zero() {
                continue;
            }
            h.add_row_multiple(i, col, f.neg(u));
            // similarity: column col += u * column i
            for r in 0..n {
                let v = f.add(h.get(r, col), f.mul(u, h.get(r, i)));
                h.set(r, col, v);
            }
        }
    }
    let mut polys = vec![FqPoly::one(f.clone())];
    for k in 1..=n {
        let lin = FqPoly::linear(f.clone(), h.get(k - 1, k - 1));
        let mut pk = lin.mul(&polys[k - 1]);
        let mut t = f.one();
        for i in 1..k {
            t = f.mul(t, h.get(k - i, k - i - 1));
            let c = f.mul(t, h.get(k - i - 1, k - 1));
            if !c.is_zero() {
                pk = pk.sub(&polys[k - i - 1].scale(c));
            }
        }
        polys.push(pk);
    }
    Ok(polys.pop().expect("nonempty"))
}

/// p(M) by Horner's rule.
pub fn eval_poly(p: &FqPoly, m: &FqMatrix) -> FqMatrix {
    let f = m.field();
    let n = m.rows();
    let mut acc = FqMatrix::zeros(f, n, n);
    for &c in p.coeffs().iter().rev() {
        acc = acc.mul(m);
        for i in 0..n {
            let v = f.add(acc.get(i, i), c);
            acc.set(i, i, v);
        }
    }
    acc
}

/// Minimal polynomial of the vector `v` under `m`.
fn vector_min_poly(m: &FqMatrix, v: &[Fq]) -> FqPoly {
    let f = m.field().clone();
    let n = m.rows();
    // echelon rows paired with the polynomial combination that produced them
    let mut rows: Vec<(Vec<Fq>, usize, FqPoly)> = Vec::new();
    let mut cur = v.to_vec();
    let mut xpow = FqPoly::one(f.clone());
    loop {
        let mut r = cur.clone();
        let mut comb = xpow.clone();
        for (row, piv, c) in &rows {
            let a = r[*piv];
            if !a.is_zero() {
                let na = f.neg(a);
                f.axpy(&mut r, na, row);
                comb = comb.add(&c.scale(na));
            }
        }
        match r.iter().position(|a| !a.is_zero()) {
            None => return comb.monic(),
            Some(p) => {
                let inv = f.inv(r[p]).expect("nonzero");
                f.scale_in_place(&mut r, inv);
                rows.push((r, p, comb.scale(inv)));
            }
        }
        debug_assert!(rows.len() <= n);
        cur = m.mul_vec(&cur);
        xpow = xpow.mul(&FqPoly::x(f.clone()));
    }
}

/// Minimal polynomial with the default seed.
pub fn min_poly(m: &FqMatrix) -> Result<FqPoly> {
    min_poly_seeded(m, 0)
}

/// Lcm of vector minimal polynomials of seeded random vectors, confirmed by
/// substitution; falls back to the standard basis, which always suffices.
pub fn min_poly_seeded(m: &FqMatrix, seed: u64) -> Result<FqPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let f = m.field().clone();
    let n = m.rows();
    let mut acc = FqPoly::one(f.clone());
    if n == 0 {
        return Ok(acc);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..3 {
        let v: Vec<Fq> = (0..n)
            .map(|_| f.from_packed(rng.gen_range(0..f.size())).unwrap())
            .collect();
        if v.iter().all(|a| a.is_zero()) {
            continue;
        }
        acc = acc.lcm(&vector_min_poly(m, &v));
        if eval_poly(&acc, m).is_zero() {
            return Ok(acc);
        }
    }
    for i in 0..n {
        let mut e = vec![f.zero(); n];
        e[i] = f.one();
        acc = acc.lcm(&vector_min_poly(m, &e));
    }
    debug_assert!(eval_poly(&acc, m).is_zero());
    Ok(acc)
}

/// Projection onto the generalized `alpha`-eigenspace, as h(M) with
/// h = 1 mod (x - alpha)^k and h = 0 mod the cofactor of the char poly.
pub fn eigenprojector(m: &FqMatrix, alpha: Fq) -> Result<FqMatrix> {
    let chi = char_poly(m)?;
    let f = m.field().clone();
    let mult = chi.root_multiplicity(alpha);
    if mult == 0 {
        return Err(Error::NotAnEigenvalue);
    }
    if factor_poly(&chi)?
        .iter()
        .any(|(g, _)| g.degree() != Some(1))
    {
        return Err(Error::FieldTooSmall);
    }
    let a = FqPoly::linear(f.clone(), alpha).pow(mult as u64);
    let q = chi.div_exact(&a).expect("root power divides");
    let h = if q.degree() == Some(0) {
        FqPoly::one(f.clone())
    } else {
        let inv = q.inv_mod(&a).expect("coprime by construction");
        q.mul(&inv).rem(&chi)
    };
    Ok(eval_poly(&h, m))
}
