//! Character lattices of tori over F_l: the image of l - Fr and the bounded
//! pairing criterion for characters trivial on the F_l-points.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Default bound on enumerated lattice points.
pub const DEFAULT_BOX_CAP: u128 = 10_000_000;

fn overflow() -> Error {
    Error::Invalid("integer overflow in lattice arithmetic".into())
}

/// D = U·A·V with U, V unimodular and D diagonal, d_1 | d_2 | ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Diagonal of D (length min(rows, cols)), nonnegative.
    pub diag: Vec<i128>,
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|&&d| d != 0).count()
    }
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

struct Snf {
    a: Vec<Vec<i128>>,
    u: Option<Vec<Vec<i128>>>,
    v: Option<Vec<Vec<i128>>>,
}

impl Snf {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_t
    fn row_op(&mut self, i: usize, t: usize, q: i128) -> Result<()> {
        fn apply(m: &mut [Vec<i128>], i: usize, t: usize, q: i128) -> Result<()> {
            for c in 0..m[i].len() {
                let d = q.checked_mul(m[t][c]).ok_or_else(overflow)?;
                m[i][c] = m[i][c].checked_sub(d).ok_or_else(overflow)?;
            }
            Ok(())
        }
        apply(&mut self.a, i, t, q)?;
        if let Some(u) = &mut self.u {
            apply(u, i, t, q)?;
        }
        Ok(())
    }

    /// col_j -= q * col_t
    fn col_op(&mut self, j: usize, t: usize, q: i128) -> Result<()> {
        fn apply(m: &mut [Vec<i128>], j: usize, t: usize, q: i128) -> Result<()> {
            for row in m.iter_mut() {
                let d = q.checked_mul(row[t]).ok_or_else(overflow)?;
                row[j] = row[j].checked_sub(d).ok_or_else(overflow)?;
            }
            Ok(())
        }
        apply(&mut self.a, j, t, q)?;
        if let Some(v) = &mut self.v {
            apply(v, j, t, q)?;
        }
        Ok(())
    }

    fn run(&mut self, cols: usize) -> Result<Vec<i128>> {
        let rows = self.a.len();
        let n = rows.min(cols);
        for t in 0..n {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        let x = self.a[i][j];
                        if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else {
                    return Ok(self.diagonal(n));
                };
                self.swap_rows(t, bi);
                self.swap_cols(t, bj);
                let p = self.a[t][t];
                let mut clean = true;
                for i in t + 1..rows {
                    let q = self.a[i][t].div_euclid(p);
                    if q != 0 {
                        self.row_op(i, t, q)?;
                    }
                    clean &= self.a[i][t] == 0;
                }
                for j in t + 1..cols {
                    let q = self.a[t][j].div_euclid(p);
                    if q != 0 {
                        self.col_op(j, t, q)?;
                    }
                    clean &= self.a[t][j] == 0;
                }
                if !clean {
                    continue;
                }
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| self.a[i][j] % p != 0));
                match bad {
                    Some(i) => self.row_op(t, i, -1)?,
                    None => break,
                }
            }
            if self.a[t][t] < 0 {
                self.row_op(t, t, 2)?;
            }
        }
        Ok(self.diagonal(n))
    }

    fn diagonal(&self, n: usize) -> Vec<i128> {
        (0..n).map(|i| self.a[i][i]).collect()
    }
}

fn widen(a: &[Vec<i64>]) -> Vec<Vec<i128>> {
    a.iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect()
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> Result<SmithForm> {
    let rows = a.len();
    let mut s = Snf {
        a: widen(a),
        u: Some(identity(rows)),
        v: Some(identity(cols)),
    };
    let diag = s.run(cols)?;
    Ok(SmithForm {
        diag,
        u: s.u.expect("tracked"),
        v: s.v.expect("tracked"),
    })
}

/// Nonzero invariant factors of an integer matrix given by its rows.
pub fn invariant_factors(rows: &[Vec<i64>], cols: usize) -> Result<Vec<i128>> {
    let mut s = Snf {
        a: widen(rows),
        u: None,
        v: None,
    };
    Ok(s.run(cols)?.into_iter().filter(|&d| d != 0).collect())
}

fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Result<Vec<Vec<i128>>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).try_fold(0i128, |acc, k| {
                        row[k]
                            .checked_mul(b[k][j])
                            .and_then(|x| acc.checked_add(x))
                            .ok_or_else(overflow)
                    })
                })
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i128>]) -> Result<i128> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
            return Ok(0);
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                    .ok_or_else(overflow)?;
                a[i][j] = x / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Ok(sign * a.last().map_or(1, |r| r[n - 1]))
}

/// The sublattice A·Z^r with its Smith data.
#[derive(Debug, Clone)]
pub struct LatticeImage {
    pub matrix: Vec<Vec<i64>>,
    pub smith: SmithForm,
}

impl LatticeImage {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let cols = matrix.first().map_or(0, |r| r.len());
        let smith = smith_normal_form(&matrix, cols)?;
        Ok(LatticeImage { matrix, smith })
    }

    /// Canonical representative of mu modulo the image: coordinates of U·mu
    /// reduced modulo the diagonal.
    pub fn residue(&self, mu: &[i64]) -> Result<Vec<i128>> {
        let y = mat_mul(
            &self.smith.u,
            &mu.iter().map(|&x| vec![i128::from(x)]).collect::<Vec<_>>(),
        )?;
        Ok(y.iter()
            .enumerate()
            .map(|(i, r)| match self.smith.diag.get(i) {
                Some(&d) if d != 0 => r[0].rem_euclid(d),
                _ => r[0],
            })
            .collect())
    }
}

/// Whether mu = A·lambda has an integer solution.
pub fn in_image(mu: &[i64], lattice: &LatticeImage) -> Result<bool> {
    Ok(lattice.residue(mu)?.iter().all(|&r| r == 0))
}

/// Rank r, the Frobenius action on cocharacters, and a finite set of
/// cocharacters that must span and be Frobenius-stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusData {
    pub rank: usize,
    pub frobenius: Vec<Vec<i64>>,
    pub delta: Vec<Vec<i64>>,
}

impl TorusData {
    pub fn new(rank: usize, frobenius: Vec<Vec<i64>>, delta: Vec<Vec<i64>>) -> Result<Self> {
        if frobenius.len() != rank || frobenius.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidTorus(format!(
                "frobenius must be {rank}x{rank}"
            )));
        }
        if delta.iter().any(|d| d.len() != rank) {
            return Err(Error::InvalidTorus(format!(
                "cocharacters must have length {rank}"
            )));
        }
        let t = TorusData {
            rank,
            frobenius,
            delta,
        };
        if t.spanning_rows()?.len() != rank {
            return Err(Error::InvalidTorus("cocharacters do not span".into()));
        }
        for d in &t.delta {
            let image: Vec<i64> = t
                .frobenius
                .iter()
                .map(|row| row.iter().zip(d).map(|(a, b)| a * b).sum())
                .collect();
            if !t.delta.contains(&image) {
                return Err(Error::InvalidTorus(format!(
                    "cocharacter {d:?} maps to {image:?} outside the set"
                )));
            }
        }
        Ok(t)
    }

    /// Greedy maximal rationally independent subset of the cocharacters.
    fn spanning_rows(&self) -> Result<Vec<Vec<i64>>> {
        let mut chosen: Vec<Vec<i64>> = Vec::new();
        for d in &self.delta {
            let mut trial = chosen.clone();
            trial.push(d.clone());
            let inv = invariant_factors(&trial, self.rank)?;
            if inv.len() == trial.len() {
                chosen = trial;
            }
        }
        Ok(chosen)
    }

    /// l·I - Fr^T, acting on characters.
    pub fn lattice_image(&self, l: u64) -> Result<LatticeImage> {
        let r = self.rank;
        let m = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| if i == j { l as i64 } else { 0 } - self.frobenius[j][i])
                    .collect()
            })
            .collect();
        LatticeImage::new(m)
    }

    /// Per-coordinate bound on characters with |<mu, delta>| <= bound for
    /// every cocharacter, from an invertible subset B: mu = adj(B)·y / det B.
    fn coordinate_bounds(&self, bound: i128) -> Result<Vec<i128>> {
        let b: Vec<Vec<i128>> = widen(&self.spanning_rows()?);
        let det = determinant(&b)?.abs();
        let r = self.rank;
        let mut out = vec![0i128; r];
        for (j, slot) in out.iter_mut().enumerate() {
            let mut total = 0i128;
            for i in 0..r {
                // adj[j][i] = (-1)^(i+j) det(B without row i, column j)
                let minor: Vec<Vec<i128>> = (0..r)
                    .filter(|&x| x != i)
                    .map(|x| (0..r).filter(|&y| y != j).map(|y| b[x][y]).collect())
                    .collect();
                total = total
                    .checked_add(determinant(&minor)?.abs())
                    .ok_or_else(overflow)?;
            }
            *slot = total.checked_mul(bound).ok_or_else(overflow)? / det;
        }
        Ok(out)
    }

    /// Integer points with 2^shift·|<mu, delta>| < l - 1 for every
    /// cocharacter, in lexicographic order.
    fn points(&self, l: u64, halved: bool, cap: u128) -> Result<Vec<Vec<i64>>> {
        let lm1 = i128::from(l) - 1;
        let scale = if halved { 2 } else { 1 };
        let bound = (lm1 - 1) / scale;
        let bounds = self.coordinate_bounds(bound.max(0))?;
        let mut count: u128 = 1;
        for &b in &bounds {
            count = count
                .checked_mul((2 * b + 1) as u128)
                .ok_or(Error::BoxOverflow(u128::MAX))?;
        }
        if count > cap {
            return Err(Error::BoxOverflow(count));
        }
        let mut out = Vec::new();
        let mut mu: Vec<i64> = bounds.iter().map(|&b| -(b as i64)).collect();
        if self.rank == 0 {
            return Ok(vec![Vec::new()]);
        }
        loop {
            let inside = self.delta.iter().all(|d| {
                let p: i128 = mu
                    .iter()
                    .zip(d)
                    .map(|(&a, &b)| i128::from(a) * i128::from(b))
                    .sum();
                scale * p.abs() < lm1
            });
            if inside {
                out.push(mu.clone());
            }
            let mut k = self.rank;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                if i128::from(mu[k]) < bounds[k] {
                    mu[k] += 1;
                    for (x, &b) in mu.iter_mut().zip(&bounds).skip(k + 1) {
                        *x = -(b as i64);
                    }
                    break;
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairingVerdict {
    Holds { enumerated: usize },
    Counterexample(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationVerdict {
    Holds { enumerated: usize },
    Collision(Vec<i64>, Vec<i64>),
}

/// No nonzero character with |<mu, delta>| < l - 1 for all cocharacters lies
/// in (l - Fr)X*.
pub fn check_bounded_pairing(t: &TorusData, l: u64, cap: u128) -> Result<PairingVerdict> {
    let lattice = t.lattice_image(l)?;
    let pts = t.points(l, false, cap)?;
    for mu in &pts {
        if mu.iter().any(|&x| x != 0) && in_image(mu, &lattice)? {
            return Ok(PairingVerdict::Counterexample(mu.clone()));
        }
    }
    Ok(PairingVerdict::Holds {
        enumerated: pts.len(),
    })
}

/// Distinct characters with |<mu, delta>| < (l - 1)/2 are never congruent
/// modulo (l - Fr)X*.
pub fn half_bound_separation(t: &TorusData, l: u64, cap: u128) -> Result<SeparationVerdict> {
    let lattice = t.lattice_image(l)?;
    let pts = t.points(l, true, cap)?;
    let mut seen: HashMap<Vec<i128>, usize> = HashMap::new();
    for (i, mu) in pts.iter().enumerate() {
        if let Some(&j) = seen.get(&lattice.residue(mu)?) {
            return Ok(SeparationVerdict::Collision(pts[j].clone(), mu.clone()));
        }
        seen.insert(lattice.residue(mu)?, i);
    }
    Ok(SeparationVerdict::Holds {
        enumerated: pts.len(),
    })
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(r - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, r - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// The shipped torus instances: rank 1 to 3, Frobenius in {I, -I} or a
/// coordinate permutation, cocharacters the signed units, optionally with
/// the roots +-(e_i - e_j).
pub fn shipped_tori() -> Vec<(String, TorusData)> {
    let mut out = Vec::new();
    for r in 1..=3usize {
        let unit = |i: usize, s: i64| {
            let mut v = vec![0; r];
            v[i] = s;
            v
        };
        let units: Vec<Vec<i64>> = (0..r).flat_map(|i| [unit(i, 1), unit(i, -1)]).collect();
        let mut roots = units.clone();
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    let mut v = vec![0; r];
                    v[i] = 1;
                    v[j] = -1;
                    roots.push(v);
                }
            }
        }
        let mut frs: Vec<(String, Vec<Vec<i64>>)> = Vec::new();
        let neg: Vec<Vec<i64>> = (0..r).map(|i| unit(i, -1)).collect();
        frs.push(("-I".into(), neg));
        for p in permutations(r) {
            let m = (0..r)
                .map(|i| (0..r).map(|j| i64::from(p[j] == i)).collect())
                .collect();
            frs.push((format!("perm{p:?}"), m));
        }
        for (name, fr) in frs {
            for (dname, delta) in [("units", &units), ("units+roots", &roots)] {
                if r == 1 && dname == "units+roots" {
                    continue;
                }
                let t =
                    TorusData::new(r, fr.clone(), delta.clone()).expect("stable by construction");
                out.push((format!("rank {r}, Fr {name}, {dname}"), t));
            }
        }
    }
    out
}
