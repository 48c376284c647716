//! H^0 and H^1 of finite matrix groups.
//!
//! A 1-cocycle is determined by its values on the generators. Walking the
//! closure's spanning tree expresses f(g) linearly in those values, and
//! every non-tree edge h -> h*s of the Cayley graph contributes the relation
//! f(h*s) = f(h) + h·f(s). These relations imply the cocycle identity on all
//! pairs, which is re-checked exhaustively on small groups.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::gmodule::GModule;
use crate::group::MatGroup;
use crate::linalg::{kernel, FqMatrix, Subspace};
use crate::weights::invariant_factors;

/// Default bound on |G|·dim M.
pub const DEFAULT_UNKNOWNS_CAP: usize = 20_000;

/// Groups up to this order get the all-pairs cocycle check.
pub const EXHAUSTIVE_CHECK_ORDER: usize = 500;

#[derive(Debug, Clone)]
pub struct CocycleSpace {
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub h1_dim: usize,
    /// Cocycles representing a basis of H^1, each a |G| x dim M matrix whose
    /// row i is the value on element i.
    pub representatives: Vec<FqMatrix>,
    /// Z^1 as a space of generator-value vectors (block s is f(s)).
    pub z1: Subspace,
    pub b1: Subspace,
}

/// Fixed points: the common kernel of A_s - I.
pub fn h0(m: &GModule) -> Subspace {
    let f = m.field();
    let n = m.dim();
    let mut rows = Vec::new();
    for a in m.action() {
        rows.extend_from_slice(a.sub(&FqMatrix::identity(f, n)).data());
    }
    let stacked = FqMatrix::from_data(f, rows.len() / n.max(1), n, rows).expect("shape");
    kernel(&stacked)
}

pub fn h1(m: &GModule) -> Result<CocycleSpace> {
    h1_capped(m, DEFAULT_UNKNOWNS_CAP)
}

pub fn h1_capped(m: &GModule, cap: usize) -> Result<CocycleSpace> {
    let g = m.group();
    let order = g.order();
    let dim = m.dim();
    let needed = order.saturating_mul(dim);
    if needed > cap {
        return Err(Error::UnknownsCapExceeded { needed, cap });
    }
    let f = m.field().clone();
    let k = g.generators().len();
    let nu = k * dim;
    if nu == 0 {
        return Ok(CocycleSpace {
            z1_dim: 0,
            b1_dim: 0,
            h1_dim: 0,
            representatives: Vec::new(),
            z1: Subspace::zero(&f, 0),
            b1: Subspace::zero(&f, 0),
        });
    }
    let acts = m.element_actions();
    // lin[i]: dim x nu matrix with f(g_i) = lin[i] * x
    let mut lin: Vec<Option<FqMatrix>> = vec![None; order];
    lin[0] = Some(FqMatrix::zeros(&f, dim, nu));
    for i in 1..order {
        let (p, s) = g.tree_edge(i).expect("parent");
        let mut l = lin[p].clone().expect("parent first in BFS order");
        add_block(&mut l, &acts[p], s);
        lin[i] = Some(l);
    }
    let lin: Vec<FqMatrix> = lin.into_iter().map(|l| l.expect("filled")).collect();
    let mut constraints = Subspace::zero(&f, nu);
    'outer: for i in 0..order {
        for s in 0..k {
            let j = g.right_mul_generator(i, s);
            if g.tree_edge(j) == Some((i, s)) {
                continue;
            }
            let mut rel = lin[i].sub(&lin[j]);
            add_block(&mut rel, &acts[i], s);
            for r in 0..dim {
                constraints.insert(rel.row(r));
                if constraints.is_full() {
                    break 'outer;
                }
            }
        }
    }
    let z1 = constraints.annihilator();
    // coboundaries: x = ((A_s - I) v)_s
    let id = FqMatrix::identity(&f, dim);
    let b1 = Subspace::span(
        &f,
        nu,
        (0..dim).map(|c| {
            let mut v = Vec::with_capacity(nu);
            for a in m.action() {
                v.extend(a.sub(&id).column(c));
            }
            v
        }),
    );
    if !b1.is_subspace_of(&z1) {
        return Err(Error::InternalMismatch(
            "coboundaries are not cocycles".into(),
        ));
    }
    let mut span = b1.clone();
    let mut reps = Vec::new();
    for z in z1.basis() {
        if span.insert(z) {
            reps.push(expand(&lin, z));
        }
    }
    if order <= EXHAUSTIVE_CHECK_ORDER && !z1.is_zero() {
        let table = product_table(g);
        for z in z1.basis() {
            let vals = expand(&lin, z);
            check_cocycle(g, &table, acts, &vals)?;
        }
    }
    Ok(CocycleSpace {
        z1_dim: z1.dim(),
        b1_dim: b1.dim(),
        h1_dim: z1.dim() - b1.dim(),
        representatives: reps,
        z1,
        b1,
    })
}

/// l += a placed in column block s.
fn add_block(l: &mut FqMatrix, a: &FqMatrix, s: usize) {
    let f = l.field().clone();
    let dim = a.rows();
    for r in 0..dim {
        for c in 0..dim {
            let v = f.add(l.get(r, s * dim + c), a.get(r, c));
            l.set(r, s * dim + c, v);
        }
    }
}

fn expand(lin: &[FqMatrix], x: &[Fq]) -> FqMatrix {
    let f = lin[0].field();
    let dim = lin[0].rows();
    let rows: Vec<Vec<Fq>> = lin.iter().map(|l| l.mul_vec(x)).collect();
    FqMatrix::from_data(f, lin.len(), dim, rows.concat()).expect("shape")
}

fn product_table(g: &MatGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    (0..n)
        .map(|i| (0..n).map(|j| g.mul_index(i, j)).collect())
        .collect()
}

fn check_cocycle(
    g: &MatGroup,
    table: &[Vec<usize>],
    acts: &[FqMatrix],
    vals: &FqMatrix,
) -> Result<()> {
    let f = vals.field();
    for i in 0..g.order() {
        for j in 0..g.order() {
            let mut rhs = acts[i].mul_vec(vals.row(j));
            for (r, &a) in rhs.iter_mut().zip(vals.row(i)) {
                *r = f.add(*r, a);
            }
            if rhs != vals.row(table[i][j]) {
                return Err(Error::InternalMismatch(format!(
                    "cocycle identity fails at ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

/// Both computations of dim H^1(G, F_l) for trivial coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrivialH1 {
    pub by_cocycles: usize,
    pub by_abelianization: usize,
}

/// dim H^1(G, F_l) with trivial action, by cocycles and by the l-rank of the
/// abelianization; errors if the two disagree.
pub fn h1_trivial_coeffs(group: &std::sync::Arc<MatGroup>, cap: usize) -> Result<usize> {
    let both = h1_trivial_both(group, cap)?;
    if both.by_cocycles != both.by_abelianization {
        return Err(Error::InternalMismatch(format!(
            "trivial H^1: cocycles give {}, abelianization gives {}",
            both.by_cocycles, both.by_abelianization
        )));
    }
    Ok(both.by_cocycles)
}

pub fn h1_trivial_both(group: &std::sync::Arc<MatGroup>, cap: usize) -> Result<TrivialH1> {
    let by_cocycles = h1_capped(&GModule::trivial(group, 1), cap)?.h1_dim;
    let by_abelianization = abelianization_l_rank(group)?;
    Ok(TrivialH1 {
        by_cocycles,
        by_abelianization,
    })
}

/// Normal closure of the generator commutators.
pub fn commutator_subgroup(g: &MatGroup) -> Result<MatGroup> {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (a, x) in gens.iter().enumerate() {
        for y in &gens[a + 1..] {
            let c = x
                .mul(y)
                .mul(&x.inverse().expect("invertible"))
                .mul(&y.inverse().expect("invertible"));
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    let mut sub = g.subgroup(Vec::new())?;
    for c in comms {
        if !sub.contains(&c) {
            let mut next = sub.generators().to_vec();
            next.push(c);
            sub = g.subgroup(next)?;
        }
    }
    loop {
        let mut extra = None;
        'search: for h in gens {
            let hi = h.inverse().expect("invertible");
            for t in sub.generators() {
                let c = h.mul(t).mul(&hi);
                if !sub.contains(&c) {
                    extra = Some(c);
                    break 'search;
                }
            }
        }
        match extra {
            None => return Ok(sub),
            Some(c) => {
                let mut next = sub.generators().to_vec();
                next.push(c);
                sub = g.subgroup(next)?;
            }
        }
    }
}

/// dim_{F_l} of G^ab / l, from the Smith form of the relation lattice read
/// off the Cayley graph of G / [G, G].
pub fn abelianization_l_rank(g: &MatGroup) -> Result<usize> {
    let l = g.characteristic();
    let k = g.generators().len();
    if k == 0 {
        return Ok(0);
    }
    let derived = commutator_subgroup(g)?;
    let mut coset = vec![usize::MAX; g.order()];
    let mut ncosets = 0;
    let sub_idx: Vec<usize> = derived
        .elements()
        .iter()
        .map(|e| g.index_of(e).expect("subgroup element"))
        .collect();
    for i in 0..g.order() {
        if coset[i] != usize::MAX {
            continue;
        }
        for &n in &sub_idx {
            coset[g.mul_index(i, n)] = ncosets;
        }
        ncosets += 1;
    }
    // representative element of each coset, and its abelian word vector
    let mut rep: HashMap<usize, usize> = HashMap::new();
    let mut word: Vec<Option<Vec<i64>>> = vec![None; ncosets];
    rep.insert(coset[0], 0);
    word[coset[0]] = Some(vec![0; k]);
    let mut queue = std::collections::VecDeque::from([coset[0]]);
    let mut relations: Vec<Vec<i64>> = Vec::new();
    while let Some(c) = queue.pop_front() {
        let i = rep[&c];
        let wc = word[c].clone().expect("visited");
        for s in 0..k {
            let d = coset[g.right_mul_generator(i, s)];
            let mut w = wc.clone();
            w[s] += 1;
            match &word[d] {
                None => {
                    word[d] = Some(w);
                    rep.insert(d, g.right_mul_generator(i, s));
                    queue.push_back(d);
                }
                Some(wd) => {
                    let rel: Vec<i64> = w.iter().zip(wd).map(|(a, b)| a - b).collect();
                    if rel.iter().any(|&x| x != 0) {
                        relations.push(rel);
                    }
                }
            }
        }
    }
    let factors = invariant_factors(&relations, k)?;
    let nonunit_l = factors.iter().filter(|&&d| d % l as i128 == 0).count();
    Ok(nonunit_l + (k - factors.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::linalg::solve;
    use std::sync::Arc;

    fn group(p: u64, dim: usize, gens: &[&[&[i64]]]) -> Arc<MatGroup> {
        let f = make_field(p, 1).unwrap();
        let gens = gens.iter().map(|g| FqMatrix::from_ints(&f, g)).collect();
        Arc::new(MatGroup::closure(&f, dim, gens).unwrap())
    }

    fn sl2(p: u64) -> Arc<MatGroup> {
        group(p, 2, &[&[&[1, 1], &[0, 1]], &[&[1, 0], &[1, 1]]])
    }

    fn pm_transvection() -> Arc<MatGroup> {
        group(7, 2, &[&[&[-1, 0], &[0, -1]], &[&[1, 1], &[0, 1]]])
    }

    #[test]
    fn h0_examples() {
        let g = sl2(7);
        assert!(h0(&GModule::trivial(&g, 2)).is_full());
        assert!(h0(&GModule::ad0(&g).0).is_zero());
        let s3 = group(
            5,
            3,
            &[
                &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]],
                &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]],
            ],
        );
        let fixed = h0(&GModule::natural(&s3));
        assert_eq!(fixed.dim(), 1);
        assert!(fixed.contains(&[s3.field().one(); 3]));
    }

    #[test]
    fn h1_examples() {
        // Z/7 acting trivially: cocycles are homomorphisms to F_7
        let z7 = group(7, 2, &[&[&[1, 1], &[0, 1]]]);
        let c = h1(&GModule::trivial(&z7, 1)).unwrap();
        assert_eq!((c.z1_dim, c.b1_dim, c.h1_dim), (1, 0, 1));
        let rep = &c.representatives[0];
        // oracle: a homomorphism Z/7 -> F_7 is additive in the exponent
        let f = z7.field();
        let t = z7.generators()[0].clone();
        let gen_val = rep.get(z7.index_of(&t).unwrap(), 0);
        for e in 0..7u64 {
            let i = z7.index_of(&t.pow(e)).unwrap();
            assert_eq!(rep.get(i, 0), f.mul(f.from_u64(e), gen_val));
        }
        let s = sl2(7);
        assert_eq!(h1(&GModule::ad0(&s).0).unwrap().h1_dim, 0);
        let c4 = group(5, 2, &[&[&[0, 1], &[-1, 0]]]);
        for m in [
            GModule::natural(&c4),
            GModule::ad(&c4),
            GModule::trivial(&c4, 3),
        ] {
            assert_eq!(h1(&m).unwrap().h1_dim, 0);
        }
        assert!(matches!(
            h1_capped(&GModule::ad(&s), 100),
            Err(Error::UnknownsCapExceeded {
                needed: 1344,
                cap: 100
            })
        ));
    }

    #[test]
    fn h1_of_sl2_f5() {
        // the classical exception: H^1(SL2(F_5), ad0) is one-dimensional
        let s = sl2(5);
        assert_eq!(h1(&GModule::natural(&s)).unwrap().h1_dim, 0);
        let c = h1(&GModule::ad0(&s).0).unwrap();
        assert_eq!((c.z1_dim, c.b1_dim, c.h1_dim), (4, 3, 1));
    }

    #[test]
    fn direct_sum_additivity() {
        for g in [
            pm_transvection(),
            sl2(5),
            group(7, 2, &[&[&[1, 1], &[0, 1]]]),
        ] {
            let mods = [
                GModule::natural(&g),
                GModule::ad0(&g).0,
                GModule::trivial(&g, 1),
            ];
            for a in &mods {
                for b in &mods {
                    let sum = a.direct_sum(b).unwrap();
                    assert_eq!(
                        h1(&sum).unwrap().h1_dim,
                        h1(a).unwrap().h1_dim + h1(b).unwrap().h1_dim
                    );
                }
            }
        }
    }

    #[test]
    fn restriction_to_sylow_is_injective() {
        let mut checked = 0;
        for g in [
            pm_transvection(),
            sl2(5),
            group(7, 2, &[&[&[3, 0], &[0, 1]], &[&[1, 1], &[0, 1]]]),
        ] {
            let l = g.characteristic();
            // Sylow l-subgroup: greedy closure of l-elements up to the l-part
            let mut lpart = 1usize;
            while g.order() % (lpart * l as usize) == 0 {
                lpart *= l as usize;
            }
            let orders = g.element_orders();
            let mut sylow = g.subgroup(vec![]).unwrap();
            for (i, &o) in orders.iter().enumerate() {
                if sylow.order() == lpart {
                    break;
                }
                let mut x = o;
                while x % l == 0 {
                    x /= l;
                }
                if o > 1 && x == 1 && !sylow.contains(g.element(i)) {
                    let mut gens = sylow.generators().to_vec();
                    gens.push(g.element(i).clone());
                    let cand = g.subgroup(gens).unwrap();
                    if lpart.is_multiple_of(cand.order()) {
                        sylow = cand;
                    }
                }
            }
            assert_eq!(sylow.order(), lpart);
            for m in [
                GModule::natural(&g),
                GModule::ad0(&g).0,
                GModule::trivial(&g, 1),
            ] {
                let c = h1(&m).unwrap();
                for rep in &c.representatives {
                    // restricted cocycle is a coboundary iff f(t) = (t - 1) v
                    // is solvable over the Sylow generators
                    let f = g.field();
                    let dim = m.dim();
                    let mut a_rows = Vec::new();
                    let mut b = Vec::new();
                    for t in sylow.generators() {
                        let i = g.index_of(t).unwrap();
                        let act = m.element_action(i).sub(&FqMatrix::identity(f, dim));
                        a_rows.extend_from_slice(act.data());
                        b.extend_from_slice(rep.row(i));
                    }
                    let a = FqMatrix::from_data(f, b.len(), dim, a_rows).unwrap();
                    assert_eq!(solve(&a, &b).unwrap_err(), Error::NoSolution);
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn trivial_coefficients_two_ways() {
        let z7 = group(7, 2, &[&[&[1, 1], &[0, 1]]]);
        assert_eq!(h1_trivial_coeffs(&z7, DEFAULT_UNKNOWNS_CAP).unwrap(), 1);
        assert_eq!(h1_trivial_coeffs(&sl2(7), DEFAULT_UNKNOWNS_CAP).unwrap(), 0);
        let c6 = group(7, 1, &[&[&[3]]]);
        assert_eq!(h1_trivial_coeffs(&c6, DEFAULT_UNKNOWNS_CAP).unwrap(), 0);
        assert_eq!(
            h1_trivial_coeffs(&pm_transvection(), DEFAULT_UNKNOWNS_CAP).unwrap(),
            1
        );
        // Borel of GL2(7): abelianization has no 7-part
        let borel = group(
            7,
            2,
            &[
                &[&[3, 0], &[0, 1]],
                &[&[1, 1], &[0, 1]],
                &[&[1, 0], &[0, 3]],
            ],
        );
        let both = h1_trivial_both(&borel, DEFAULT_UNKNOWNS_CAP).unwrap();
        assert_eq!(both.by_cocycles, both.by_abelianization);
        assert_eq!(both.by_cocycles, 0);
        // elementary abelian 7^2 by two commuting transvections in dim 3
        let e49 = group(
            7,
            3,
            &[
                &[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]],
                &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]],
            ],
        );
        assert_eq!(e49.order(), 49);
        assert_eq!(h1_trivial_coeffs(&e49, DEFAULT_UNKNOWNS_CAP).unwrap(), 2);
        assert_eq!(commutator_subgroup(&sl2(7)).unwrap().order(), 336);
    }
}
