//! Truncated exponential and logarithm in characteristic l.

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::linalg::FqMatrix;

fn check_char(x: &FqMatrix, l: u64) -> Result<()> {
    let p = x.field().characteristic();
    if p != l {
        return Err(Error::CharacteristicMismatch { l, p });
    }
    if !x.is_square() {
        return Err(Error::NotSquare);
    }
    Ok(())
}

/// sum_{j<l} c_j X^j by Horner's rule.
fn series(x: &FqMatrix, coeffs: &[Fq]) -> FqMatrix {
    let f = x.field();
    let n = x.rows();
    let mut acc = FqMatrix::zeros(f, n, n);
    for &c in coeffs.iter().rev() {
        acc = acc.mul(x);
        for i in 0..n {
            let v = f.add(acc.get(i, i), c);
            acc.set(i, i, v);
        }
    }
    acc
}

/// I + X + X^2/2! + ... + X^(l-1)/(l-1)!, for X^l = 0.
pub fn exp_nilpotent(x: &FqMatrix, l: u64) -> Result<FqMatrix> {
    check_char(x, l)?;
    if !x.pow(l).is_zero() {
        return Err(Error::NotNilpotentToOrderL(l));
    }
    let f = x.field();
    let mut coeffs = Vec::with_capacity(l as usize);
    let mut fact = f.one();
    for j in 0..l {
        if j > 0 {
            fact = f.mul(fact, f.from_u64(j));
        }
        coeffs.push(f.inv(fact).expect("j! is a unit below l"));
    }
    Ok(series(x, &coeffs))
}

/// N - N^2/2 + N^3/3 - ... +- N^(l-1)/(l-1) with N = u - I, for N^l = 0.
pub fn log_unipotent(u: &FqMatrix, l: u64) -> Result<FqMatrix> {
    check_char(u, l)?;
    let f = u.field();
    let nmat = u.sub(&FqMatrix::identity(f, u.rows()));
    if !nmat.pow(l).is_zero() {
        return Err(Error::NotUnipotentToOrderL(l));
    }
    let mut coeffs = vec![f.zero()];
    for j in 1..l {
        let c = f.inv(f.from_u64(j)).expect("unit below l");
        coeffs.push(if j % 2 == 1 { c } else { f.neg(c) });
    }
    Ok(series(&nmat, &coeffs))
}

/// exp(aX)·exp(bX) = exp((a+b)X).
pub fn one_parameter(x: &FqMatrix, a: Fq, b: Fq, l: u64) -> Result<bool> {
    let f = x.field();
    let lhs = exp_nilpotent(&x.scale(a), l)?.mul(&exp_nilpotent(&x.scale(b), l)?);
    Ok(lhs == exp_nilpotent(&x.scale(f.add(a, b)), l)?)
}

/// g·exp(X)·g^-1 = exp(g·X·g^-1).
pub fn conjugation_equivariance(x: &FqMatrix, g: &FqMatrix, l: u64) -> Result<bool> {
    let gi = g.inverse().ok_or(Error::NotInvertible)?;
    let lhs = g.mul(&exp_nilpotent(x, l)?).mul(&gi);
    Ok(lhs == exp_nilpotent(&g.mul(x).mul(&gi), l)?)
}

/// Index of nilpotency: least k with X^k = 0, if at most `limit`.
pub fn nilpotency_index(x: &FqMatrix, limit: u64) -> Option<u64> {
    let n = x.rows();
    let mut p = FqMatrix::identity(x.field(), n);
    for k in 0..=limit {
        if p.is_zero() {
            return Some(k);
        }
        p = p.mul(x);
    }
    None
}
