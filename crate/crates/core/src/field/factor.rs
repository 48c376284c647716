//! Squarefree, distinct-degree and equal-degree factorization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{make_field, Embedding, Field, Fq, FqPoly};
use crate::error::{Error, Result};

/// Factor `f` into monic irreducibles with multiplicities, seed 0.
pub fn factor_poly(f: &FqPoly) -> Result<Vec<(FqPoly, usize)>> {
    factor_poly_seeded(f, 0)
}

/// Factors sorted by (degree, packed coefficients); the seed only steers the
/// equal-degree splitting, never the output.
pub fn factor_poly_seeded(f: &FqPoly, seed: u64) -> Result<Vec<(FqPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (sqf, mult) in squarefree(&f.monic()) {
        for (g, d) in distinct_degree(&sqf) {
            for h in equal_degree(&g, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
    });
    Ok(out)
}

fn field_size(f: &Field) -> u128 {
    f.size() as u128
}

/// p-th root of a polynomial whose derivative vanishes.
fn pth_root(c: &FqPoly) -> FqPoly {
    let field = c.field();
    let p = field.characteristic() as usize;
    // a^(1/p) = a^(p^(k-1))
    let e = field_size(field) / p as u128;
    let coeffs = c
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&a| field.pow(a, e))
        .collect();
    FqPoly::new(field.clone(), coeffs)
}

fn squarefree(f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let field = f.field().clone();
    let one = FqPoly::one(field.clone());
    let p = field.characteristic() as usize;
    if f.degree() == Some(0) {
        return Vec::new();
    }
    let d = f.derivative();
    if d.is_zero() {
        return squarefree(&pth_root(f))
            .into_iter()
            .map(|(g, m)| (g, m * p))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while w != one {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if fac != one {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if c != one {
        out.extend(
            squarefree(&pth_root(&c))
                .into_iter()
                .map(|(g, m)| (g, m * p)),
        );
    }
    out
}

/// Splits a squarefree monic polynomial into products of same-degree irreducibles.
fn distinct_degree(f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let field = f.field().clone();
    let q = field_size(&field);
    let x = FqPoly::x(field.clone());
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.degree() != Some(0) {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, d));
    }
    out
}

fn random_poly(field: &Field, below: usize, rng: &mut ChaCha8Rng) -> FqPoly {
    let coeffs = (0..below)
        .map(|_| field.from_packed(rng.gen_range(0..field.size())).unwrap())
        .collect();
    FqPoly::new(field.clone(), coeffs)
}

/// Cantor-Zassenhaus splitting of a product of irreducibles of degree `d`.
fn equal_degree(f: &FqPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FqPoly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field().clone();
    let q = field_size(&field);
    let one = FqPoly::one(field.clone());
    loop {
        let a = random_poly(&field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if field.characteristic() == 2 {
            // absolute trace down to GF(2): a + a^2 + ... + a^(2^(kd-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..field.degree() * d {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = prod_i (a^((q-1)/2))^(q^i)
            let base = a.pow_mod((q - 1) / 2, f);
            let mut acc = base.clone();
            let mut t = base;
            for _ in 1..d {
                t = t.pow_mod(q, f);
                acc = acc.mul_mod(&t, f);
            }
            acc.sub(&one)
        };
        let g = f.gcd(&b);
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < n {
                let h = f.div_exact(&g).expect("gcd divides");
                let mut out = equal_degree(&g, d, rng);
                out.extend(equal_degree(&h, d, rng));
                return out;
            }
        }
    }
}

/// Distinct roots of `f` in its own field, ascending.
pub(crate) fn roots_of(f: &FqPoly, seed: u64) -> Result<Vec<Fq>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    let x = FqPoly::x(field.clone());
    let f = f.monic();
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let g = f.gcd(&x.pow_mod(field_size(&field), &f).sub(&x));
    if g.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots: Vec<Fq> = equal_degree(&g, 1, &mut rng)
        .into_iter()
        .map(|lin| field.neg(lin.coeff(0)))
        .collect();
    roots.sort();
    Ok(roots)
}

/// The smallest extension of f's field splitting f, and every root with
/// its multiplicity, ascending.
pub fn splitting_field_roots(f: &FqPoly) -> Result<(Field, Vec<(Fq, usize)>)> {
    let factors = factor_poly(f)?;
    let base = f.field().clone();
    let ext = factors
        .iter()
        .map(|(g, _)| g.degree().unwrap_or(1) as u64)
        .fold(1, crate::util::lcm) as usize;
    let target = if ext == 1 {
        base.clone()
    } else {
        make_field(base.characteristic(), base.degree() * ext)?
    };
    let emb = Embedding::new(&base, &target)?;
    let mut roots = Vec::new();
    for (g, m) in &factors {
        let lifted = g.map_field(&target, |c| emb.apply(c));
        for r in roots_of(&lifted, 0)? {
            roots.push((r, *m));
        }
    }
    roots.sort();
    Ok((target, roots))
}
