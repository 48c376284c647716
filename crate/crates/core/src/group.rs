//! Finite matrix groups enumerated by breadth-first closure.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::FqMatrix;
use crate::util::{factorize, gcd};

/// Default bound on the number of enumerated elements.
pub const DEFAULT_ORDER_CAP: usize = 200_000;

/// Default bound on direct powering when no group order is known.
pub const DEFAULT_ELEMENT_ORDER_CAP: u64 = 1 << 20;

/// A finite group given by invertible generators, with its full element list
/// in breadth-first discovery order (identity first) and the spanning tree of
/// that search.
#[derive(Debug)]
pub struct MatGroup {
    field: Field,
    dim: usize,
    generators: Vec<FqMatrix>,
    elements: Vec<FqMatrix>,
    index: HashMap<Vec<u64>, usize>,
    // (parent, generator) with elements[i] = elements[parent] * generators[generator]
    tree: Vec<Option<(usize, usize)>>,
    // right multiplication by each generator
    table: Vec<Vec<usize>>,
    orders: OnceLock<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanPair {
    pub semisimple: FqMatrix,
    pub unipotent: FqMatrix,
}

impl MatGroup {
    /// Closure with the default cap.
    pub fn closure(field: &Field, dim: usize, generators: Vec<FqMatrix>) -> Result<Self> {
        Self::closure_capped(field, dim, generators, DEFAULT_ORDER_CAP)
    }

    pub fn closure_capped(
        field: &Field,
        dim: usize,
        generators: Vec<FqMatrix>,
        cap: usize,
    ) -> Result<Self> {
        for g in &generators {
            if !Field::ptr_eq(g.field(), field) {
                return Err(Error::FieldMismatch);
            }
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator is {}x{}, expected {dim}x{dim}",
                    g.rows(),
                    g.cols()
                )));
            }
            if g.rank() != dim {
                return Err(Error::NotInvertible);
            }
        }
        let id = FqMatrix::identity(field, dim);
        let mut index = HashMap::new();
        index.insert(id.key(), 0);
        let mut elements = vec![id];
        let mut tree = vec![None];
        let mut table: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(generators.len());
            for (s, g) in generators.iter().enumerate() {
                let h = elements[i].mul(g);
                let key = h.key();
                let j = match index.get(&key) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::OrderCapExceeded(cap));
                        }
                        let j = elements.len();
                        index.insert(key, j);
                        elements.push(h);
                        tree.push(Some((i, s)));
                        queue.push_back(j);
                        j
                    }
                };
                row.push(j);
            }
            table.push(row);
        }
        Ok(MatGroup {
            field: field.clone(),
            dim,
            generators,
            elements,
            index,
            tree,
            table,
            orders: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[FqMatrix] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in discovery order; index 0 is the identity.
    pub fn elements(&self) -> &[FqMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &FqMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &FqMatrix) -> Option<usize> {
        self.index.get(&g.key()).copied()
    }

    pub fn contains(&self, g: &FqMatrix) -> bool {
        self.index_of(g).is_some()
    }

    /// Index of elements[i] * generators[s].
    pub fn right_mul_generator(&self, i: usize, s: usize) -> usize {
        self.table[i][s]
    }

    /// Spanning tree edge into element i, `None` for the identity.
    pub fn tree_edge(&self, i: usize) -> Option<(usize, usize)> {
        self.tree[i]
    }

    /// Generator indices whose product (left to right) is element i.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, s)) = self.tree[i] {
            w.push(s);
            i = p;
        }
        w.reverse();
        w
    }

    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        self.index_of(&self.elements[i].mul(&self.elements[j]))
            .expect("closed under products")
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        let inv = self.elements[i]
            .inverse()
            .expect("group elements are invertible");
        self.index_of(&inv).expect("closed under inverses")
    }

    /// Orders of all elements, by descent from the group order.
    pub fn element_orders(&self) -> &[u64] {
        self.orders.get_or_init(|| {
            let n = self.order() as u64;
            self.elements.iter().map(|g| order_dividing(g, n)).collect()
        })
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.element_orders()[i]
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn jordan_parts(&self, i: usize) -> JordanPair {
        jordan_parts_with_order(
            &self.elements[i],
            self.characteristic(),
            self.element_order(i),
        )
    }

    /// Indices of the elements of order prime to the characteristic.
    pub fn semisimple_indices(&self) -> Vec<usize> {
        let l = self.characteristic();
        self.element_orders()
            .iter()
            .enumerate()
            .filter(|(_, &o)| o % l != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Elements of order prime to the characteristic, in closure order.
    pub fn semisimple_subset(&self) -> Vec<FqMatrix> {
        self.semisimple_indices()
            .into_iter()
            .map(|i| self.elements[i].clone())
            .collect()
    }

    /// The subgroup generated by the elements of order a positive power of
    /// the characteristic. Generators are picked greedily in closure order,
    /// skipping those already in the current span; normality is verified.
    pub fn l_power_core(&self) -> Result<MatGroup> {
        let l = self.characteristic();
        let orders = self.element_orders();
        let mut core = MatGroup::closure(&self.field, self.dim, Vec::new())?;
        for (i, &o) in orders.iter().enumerate() {
            if o > 1 && is_power_of(o, l) && !core.contains(&self.elements[i]) {
                let mut gens = core.generators.clone();
                gens.push(self.elements[i].clone());
                core = MatGroup::closure(&self.field, self.dim, gens)?;
            }
        }
        if !self.normalizes(&core) {
            return Err(Error::InternalMismatch("l-power core is not normal".into()));
        }
        Ok(core)
    }

    /// Subgroup generated by the given elements of this group.
    pub fn subgroup(&self, generators: Vec<FqMatrix>) -> Result<MatGroup> {
        if generators.iter().any(|g| !self.contains(g)) {
            return Err(Error::Invalid(
                "subgroup generator outside the group".into(),
            ));
        }
        MatGroup::closure(&self.field, self.dim, generators)
    }

    /// Whether every generator of `self` conjugates `sub` into itself.
    pub fn normalizes(&self, sub: &MatGroup) -> bool {
        self.generators.iter().all(|h| {
            let hi = h.inverse().expect("invertible");
            sub.generators
                .iter()
                .all(|t| sub.contains(&h.mul(t).mul(&hi)))
        })
    }
}

fn is_power_of(mut n: u64, l: u64) -> bool {
    while n.is_multiple_of(l) {
        n /= l;
    }
    n == 1
}

/// Least N dividing `multiple` with g^N = I.
fn order_dividing(g: &FqMatrix, multiple: u64) -> u64 {
    let mut n = multiple;
    for (p, e) in factorize(multiple) {
        for _ in 0..e {
            if g.pow(n / p).is_identity() {
                n /= p;
            } else {
                break;
            }
        }
    }
    n
}

/// Order of an invertible matrix. With a known multiple of the order this
/// uses factored descent; otherwise it powers directly up to `cap`.
pub fn element_order(g: &FqMatrix, known_multiple: Option<u64>, cap: u64) -> Result<u64> {
    if !g.is_square() {
        return Err(Error::NotSquare);
    }
    if g.rank() != g.rows() {
        return Err(Error::NotInvertible);
    }
    if let Some(m) = known_multiple {
        if !g.pow(m).is_identity() {
            return Err(Error::Invalid(format!(
                "{m} is not a multiple of the order"
            )));
        }
        return Ok(order_dividing(g, m));
    }
    let mut h = g.clone();
    for n in 1..=cap {
        if h.is_identity() {
            return Ok(n);
        }
        h = h.mul(g);
    }
    Err(Error::ElementOrderCapExceeded(cap))
}

/// Semisimple and unipotent parts as powers of `g`, from its order.
pub fn jordan_parts_with_order(g: &FqMatrix, l: u64, order: u64) -> JordanPair {
    let mut la = 1;
    let mut m = order;
    while m.is_multiple_of(l) {
        m /= l;
        la *= l;
    }
    let id = FqMatrix::identity(g.field(), g.rows());
    if la == 1 {
        return JordanPair {
            semisimple: g.clone(),
            unipotent: id,
        };
    }
    if m == 1 {
        return JordanPair {
            semisimple: id,
            unipotent: g.clone(),
        };
    }
    // x = 0 mod l^a, x = 1 mod m; y = 1 - x mod order
    let x = la * mod_inverse(la % m, m) % order;
    let y = (order + 1 - x) % order;
    JordanPair {
        semisimple: g.pow(x),
        unipotent: g.pow(y),
    }
}

pub fn jordan_parts(g: &FqMatrix, l: u64) -> Result<JordanPair> {
    let order = element_order(g, None, DEFAULT_ELEMENT_ORDER_CAP)?;
    Ok(jordan_parts_with_order(g, l, order))
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    debug_assert_eq!(gcd(a, m), 1);
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m as i128) as u64
}
