use std::fmt;

use super::{Field, Fq};

/// Dense univariate polynomial over a [`super::FieldCtx`], low to high,
/// with trailing zeros stripped.
#[derive(Clone, PartialEq, Eq)]
pub struct FqPoly {
    field: Field,
    coeffs: Vec<Fq>,
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| {
                let c = self.field.format(c);
                match i {
                    0 => c,
                    1 => format!("{c}*x"),
                    _ => format!("{c}*x^{i}"),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl FqPoly {
    pub fn new(field: Field, mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        FqPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: Field, c: Fq) -> Self {
        FqPoly::new(field, vec![c])
    }

    pub fn one(field: Field) -> Self {
        let one = field.one();
        FqPoly::constant(field, one)
    }

    pub fn x(field: Field) -> Self {
        let (z, o) = (field.zero(), field.one());
        FqPoly::new(field, vec![z, o])
    }

    /// x - a
    pub fn linear(field: Field, a: Fq) -> Self {
        let c = field.neg(a);
        let o = field.one();
        FqPoly::new(field, vec![c, o])
    }

    /// Convenience constructor from signed integer coefficients.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        FqPoly::new(
            field.clone(),
            coeffs.iter().map(|&c| field.from_i64(c)).collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == self.field.one()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero lead");
        self.scale(inv)
    }

    pub fn scale(&self, a: Fq) -> Self {
        let f = &self.field;
        FqPoly::new(
            f.clone(),
            self.coeffs.iter().map(|&c| f.mul(c, a)).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        FqPoly::new(
            f.clone(),
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        FqPoly::new(
            f.clone(),
            (0..n)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            f.axpy(&mut out[i..i + other.coeffs.len()], a, &other.coeffs);
        }
        FqPoly::new(f.clone(), out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = FqPoly::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv_lead = f.inv(divisor.lead()).expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FqPoly::zero(f.clone()), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], inv_lead);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            let neg = f.neg(c);
            f.axpy(&mut rem[i - dd..=i], neg, &divisor.coeffs);
        }
        rem.truncate(dd);
        (FqPoly::new(f.clone(), quot), FqPoly::new(f.clone(), rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with g = s*self + t*other monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FqPoly::one(f.clone()), FqPoly::zero(f.clone()));
        let (mut t0, mut t1) = (FqPoly::zero(f.clone()), FqPoly::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lead()).expect("nonzero lead");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Inverse modulo `m`, if coprime.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.ext_gcd(m);
        (g.degree() == Some(0)).then(|| s.rem(m))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero(self.field.clone());
        }
        let g = self.gcd(other);
        self.div_exact(&g).expect("gcd divides").mul(other).monic()
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    /// self^e mod m.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = FqPoly::one(self.field.clone()).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        FqPoly::new(
            f.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_u64(i as u64), c))
                .collect(),
        )
    }

    pub fn eval(&self, x: Fq) -> Fq {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Applies a coefficient map into another field.
    pub fn map_field(&self, target: &Field, map: impl Fn(Fq) -> Fq) -> Self {
        FqPoly::new(
            target.clone(),
            self.coeffs.iter().map(|&c| map(c)).collect(),
        )
    }

    /// Multiplicity of the root `a`.
    pub fn root_multiplicity(&self, a: Fq) -> usize {
        let lin = FqPoly::linear(self.field.clone(), a);
        let mut g = self.clone();
        let mut m = 0;
        while !g.is_zero() {
            match g.div_exact(&lin) {
                Some(q) => {
                    g = q;
                    m += 1;
                }
                None => break,
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn division_identity() {
        let f = make_field(7, 1).unwrap();
        let a = FqPoly::from_ints(&f, &[3, 0, 5, 1, 2]);
        let b = FqPoly::from_ints(&f, &[1, 4, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_and_inverse() {
        let f = make_field(5, 1).unwrap();
        // (x-1)(x-2) and (x-1)(x-3)
        let a = FqPoly::from_ints(&f, &[-1, 1]).mul(&FqPoly::from_ints(&f, &[-2, 1]));
        let b = FqPoly::from_ints(&f, &[-1, 1]).mul(&FqPoly::from_ints(&f, &[-3, 1]));
        assert_eq!(a.gcd(&b), FqPoly::from_ints(&f, &[-1, 1]));
        let m = FqPoly::from_ints(&f, &[2, 0, 1]);
        let x = FqPoly::from_ints(&f, &[1, 1]);
        let inv = x.inv_mod(&m).unwrap();
        assert_eq!(inv.mul_mod(&x, &m), FqPoly::one(f.clone()));
    }

    #[test]
    fn derivative_in_char_p() {
        let f = make_field(3, 1).unwrap();
        let p = FqPoly::from_ints(&f, &[1, 0, 0, 1]);
        assert!(p.derivative().is_zero());
    }

    #[test]
    fn multiplicity() {
        let f = make_field(7, 1).unwrap();
        let p = FqPoly::from_ints(&f, &[-2, 1]).pow(3);
        assert_eq!(p.root_multiplicity(f.from_u64(2)), 3);
        assert_eq!(p.root_multiplicity(f.from_u64(3)), 0);
    }
}
