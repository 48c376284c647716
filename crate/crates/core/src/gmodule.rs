//! Modules for matrix groups and Meataxe-style submodule machinery.

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{factor_poly, Field, Fq, FqPoly};
use crate::group::MatGroup;
use crate::linalg::{char_poly, eval_poly, kernel, FqMatrix, Subspace};

/// Meataxe attempts before giving up.
pub const MEATAXE_ATTEMPTS: usize = 64;

const WORDS_PER_ELEMENT: usize = 6;
const MAX_WORD_LEN: usize = 4;

/// A finite-dimensional module: one action matrix per group generator.
#[derive(Debug)]
pub struct GModule {
    group: Arc<MatGroup>,
    dim: usize,
    action: Vec<FqMatrix>,
    label: String,
    elements: OnceLock<Vec<FqMatrix>>,
}

impl Clone for GModule {
    fn clone(&self) -> Self {
        GModule {
            group: self.group.clone(),
            dim: self.dim,
            action: self.action.clone(),
            label: self.label.clone(),
            elements: OnceLock::new(),
        }
    }
}

/// An invariant subspace found by some search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmoduleWitness {
    pub subspace: Subspace,
    pub verified_invariant: bool,
}

impl SubmoduleWitness {
    fn checked(m: &GModule, subspace: Subspace) -> Self {
        let verified_invariant = m.action.iter().all(|a| subspace.is_invariant_under(a));
        SubmoduleWitness {
            subspace,
            verified_invariant,
        }
    }

    pub fn to_json(&self, module: &str) -> WitnessJson {
        WitnessJson {
            module: module.to_string(),
            basis: self
                .subspace
                .basis()
                .iter()
                .map(|v| v.iter().map(|a| a.packed()).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub module: String,
    pub basis: Vec<Vec<u64>>,
}

#[derive(Debug, Clone)]
pub enum Irreducibility {
    /// `factor` is an irreducible factor of the characteristic polynomial of
    /// `theta` whose evaluation has nullity deg(factor), and both spins of the
    /// kernel were full.
    Irreducible {
        theta: FqMatrix,
        factor: FqPoly,
    },
    Reducible(SubmoduleWitness),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }
}

/// One isomorphism type in the socle.
#[derive(Debug, Clone)]
pub struct SocleConstituent {
    pub dim: usize,
    pub multiplicity: usize,
    /// The isotypic component of the socle.
    pub component: Subspace,
}

#[derive(Debug, Clone)]
pub enum Submodules {
    /// Every socle constituent occurs once, so these are all the
    /// irreducible submodules.
    Irreducibles(Vec<SubmoduleWitness>),
    /// Some constituent occurs at least twice; the irreducible submodules
    /// form infinite-looking families and are not listed.
    MultiplicityObstruction(Vec<SocleConstituent>),
}

impl GModule {
    /// Validates shapes and the homomorphism property on every edge of the
    /// multiplication table.
    pub fn new(
        group: Arc<MatGroup>,
        dim: usize,
        action: Vec<FqMatrix>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if action.len() != group.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for {} generators",
                action.len(),
                group.generators().len()
            )));
        }
        for a in &action {
            if !Field::ptr_eq(a.field(), group.field()) {
                return Err(Error::FieldMismatch);
            }
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::DimensionMismatch(
                    "action matrices differ in shape".into(),
                ));
            }
        }
        let m = GModule::unchecked(group, dim, action, label.into());
        m.verify_homomorphism()?;
        Ok(m)
    }

    fn unchecked(group: Arc<MatGroup>, dim: usize, action: Vec<FqMatrix>, label: String) -> Self {
        GModule {
            group,
            dim,
            action,
            label,
            elements: OnceLock::new(),
        }
    }

    pub fn natural(group: &Arc<MatGroup>) -> Self {
        GModule::unchecked(
            group.clone(),
            group.dim(),
            group.generators().to_vec(),
            "V".into(),
        )
    }

    pub fn trivial(group: &Arc<MatGroup>, dim: usize) -> Self {
        let id = FqMatrix::identity(group.field(), dim);
        GModule::unchecked(
            group.clone(),
            dim,
            vec![id; group.generators().len()],
            format!("trivial^{dim}"),
        )
    }

    /// Matrices under conjugation, flattened row-major: X -> g X g^-1 acts
    /// as g ⊗ (g^-1)^T.
    pub fn ad(group: &Arc<MatGroup>) -> Self {
        let n = group.dim();
        let action = group
            .generators()
            .iter()
            .map(|g| g.kron(&g.inverse().expect("invertible").transpose()))
            .collect();
        GModule::unchecked(group.clone(), n * n, action, "ad V".into())
    }

    /// The trace-zero submodule of ad, with its inclusion as a subspace of
    /// ad (RREF basis rows, which are the images of the module's basis).
    pub fn ad0(group: &Arc<MatGroup>) -> (Self, Subspace) {
        let ad = GModule::ad(group);
        let n = group.dim();
        let trace = FqMatrix::identity(group.field(), n).flatten();
        let row = FqMatrix::from_data(group.field(), 1, n * n, trace).expect("shape");
        let inc = kernel(&row);
        let mut m = ad.restrict(&inc);
        m.label = "ad0 V".into();
        (m, inc)
    }

    pub fn group(&self) -> &Arc<MatGroup> {
        &self.group
    }

    pub fn field(&self) -> &Field {
        self.group.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn action(&self) -> &[FqMatrix] {
        &self.action
    }

    /// Action of every group element, in closure order.
    pub fn element_actions(&self) -> &[FqMatrix] {
        self.elements.get_or_init(|| {
            let g = &self.group;
            let mut out = Vec::with_capacity(g.order());
            out.push(FqMatrix::identity(self.field(), self.dim));
            for i in 1..g.order() {
                let (p, s) = g.tree_edge(i).expect("non-root has a parent");
                let a = out[p].mul(&self.action[s]);
                out.push(a);
            }
            out
        })
    }

    pub fn element_action(&self, i: usize) -> &FqMatrix {
        &self.element_actions()[i]
    }

    /// Checks act(h)·act(s) = act(h·s) on every element h and generator s.
    pub fn verify_homomorphism(&self) -> Result<()> {
        let acts = self.element_actions();
        for (i, a) in acts.iter().enumerate() {
            for (s, gen) in self.action.iter().enumerate() {
                let j = self.group.right_mul_generator(i, s);
                if a.mul(gen) != acts[j] {
                    return Err(Error::Invalid(format!(
                        "action of {} is not a homomorphism",
                        self.label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Action on an invariant subspace, in the coordinates of its RREF basis.
    pub fn restrict(&self, sub: &Subspace) -> GModule {
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Fq>> = sub
                    .basis()
                    .iter()
                    .map(|b| sub.coordinates(&a.mul_vec(b)).expect("invariant subspace"))
                    .collect();
                FqMatrix::from_columns(self.field(), sub.dim(), &cols)
            })
            .collect();
        GModule::unchecked(
            self.group.clone(),
            sub.dim(),
            action,
            format!("{} sub", self.label),
        )
    }

    /// Action on the quotient by an invariant subspace, in the basis of unit
    /// vectors at non-pivot positions.
    pub fn quotient(&self, sub: &Subspace) -> GModule {
        let free = sub.non_pivots();
        let f = self.field().clone();
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Fq>> = free
                    .iter()
                    .map(|&i| {
                        let r = sub.reduce(&a.column(i));
                        free.iter().map(|&j| r[j]).collect()
                    })
                    .collect();
                FqMatrix::from_columns(&f, free.len(), &cols)
            })
            .collect();
        GModule::unchecked(
            self.group.clone(),
            free.len(),
            action,
            format!("{} quot", self.label),
        )
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::Invalid(
                "direct sum of modules for different groups".into(),
            ));
        }
        let (a, b) = (self.dim, other.dim);
        let f = self.field().clone();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| {
                let mut m = FqMatrix::zeros(&f, a + b, a + b);
                for i in 0..a {
                    for j in 0..a {
                        m.set(i, j, x.get(i, j));
                    }
                }
                for i in 0..b {
                    for j in 0..b {
                        m.set(a + i, a + j, y.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(GModule::unchecked(
            self.group.clone(),
            a + b,
            action,
            format!("{} + {}", self.label, other.label),
        ))
    }

    /// Smallest invariant subspace containing `v`.
    pub fn spin(&self, v: &[Fq]) -> Result<SubmoduleWitness> {
        if v.iter().all(|a| a.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let s = spin_with(self.field(), self.dim, &self.action, v);
        Ok(SubmoduleWitness::checked(self, s))
    }

    pub fn is_irreducible(&self) -> Result<Irreducibility> {
        self.is_irreducible_seeded(0)
    }

    /// Randomized Norton test. Reducible verdicts carry a checked invariant
    /// subspace; irreducible verdicts carry the certifying algebra element.
    pub fn is_irreducible_seeded(&self, seed: u64) -> Result<Irreducibility> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::ZeroModule);
        }
        let f = self.field().clone();
        if n == 1 {
            return Ok(Irreducibility::Irreducible {
                theta: FqMatrix::identity(&f, 1),
                factor: FqPoly::linear(f.clone(), f.one()),
            });
        }
        let transposes: Vec<FqMatrix> = self.action.iter().map(|a| a.transpose()).collect();
        for attempt in 0..MEATAXE_ATTEMPTS {
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ attempt as u64,
            );
            let theta = self.random_algebra_element(&mut rng);
            let chi = char_poly(&theta)?;
            let mut factors = factor_poly(&chi)?;
            factors.sort_by_key(|(p, _)| p.degree());
            for (p, _) in factors {
                let deg = p.degree().expect("nonconstant factor");
                let nmat = eval_poly(&p, &theta);
                let ker = kernel(&nmat);
                for v in ker.basis() {
                    let s = spin_with(&f, n, &self.action, v);
                    if !s.is_full() {
                        return Ok(Irreducibility::Reducible(SubmoduleWitness::checked(
                            self, s,
                        )));
                    }
                }
                if ker.dim() != deg {
                    continue;
                }
                let kt = kernel(&nmat.transpose());
                let w = &kt.basis()[0];
                let st = spin_with(&f, n, &transposes, w);
                if !st.is_full() {
                    let sub = st.annihilator();
                    return Ok(Irreducibility::Reducible(SubmoduleWitness::checked(
                        self, sub,
                    )));
                }
                return Ok(Irreducibility::Irreducible { theta, factor: p });
            }
        }
        Err(Error::SeedExhausted(MEATAXE_ATTEMPTS))
    }

    fn random_algebra_element(&self, rng: &mut ChaCha8Rng) -> FqMatrix {
        let f = self.field();
        let q = f.size();
        let rand_fq = |rng: &mut ChaCha8Rng| f.from_packed(rng.gen_range(0..q)).expect("in range");
        let mut theta = FqMatrix::scalar(f, self.dim, rand_fq(rng));
        if self.action.is_empty() {
            return theta;
        }
        for _ in 0..WORDS_PER_ELEMENT {
            let len = rng.gen_range(1..=MAX_WORD_LEN);
            let mut w = self.action[rng.gen_range(0..self.action.len())].clone();
            for _ in 1..len {
                w = w.mul(&self.action[rng.gen_range(0..self.action.len())]);
            }
            theta = theta.add(&w.scale(rand_fq(rng)));
        }
        theta
    }

    /// Composition factors, by recursive splitting.
    pub fn composition_factors(&self) -> Result<Vec<GModule>> {
        if self.dim == 0 {
            return Ok(Vec::new());
        }
        match self.is_irreducible()? {
            Irreducibility::Irreducible { .. } => Ok(vec![self.clone()]),
            Irreducibility::Reducible(w) => {
                let mut out = self.restrict(&w.subspace).composition_factors()?;
                out.extend(self.quotient(&w.subspace).composition_factors()?);
                Ok(out)
            }
        }
    }

    /// Socle constituents: distinct irreducible types with their multiplicity
    /// in the socle, and for each type a basis of Hom(C, self).
    fn socle_data(&self) -> Result<Vec<(GModule, Vec<FqMatrix>, usize)>> {
        let mut types: Vec<GModule> = Vec::new();
        for c in self.composition_factors()? {
            let mut seen = false;
            for t in &types {
                if t.dim == c.dim && !hom_from_cyclic(&c, t)?.is_empty() {
                    seen = true;
                    break;
                }
            }
            if !seen {
                types.push(c);
            }
        }
        let mut out = Vec::new();
        for c in types {
            let homs = hom_from_cyclic(&c, self)?;
            if homs.is_empty() {
                continue;
            }
            let end = hom_from_cyclic(&c, &c)?.len();
            let mult = homs.len() / end;
            out.push((c, homs, mult));
        }
        Ok(out)
    }

    pub fn socle(&self) -> Result<Subspace> {
        let mut s = Subspace::zero(self.field(), self.dim);
        for (_, homs, _) in self.socle_data()? {
            for h in &homs {
                s = s.sum(&column_space(h));
            }
        }
        Ok(s)
    }

    /// All irreducible submodules when the socle is multiplicity free.
    pub fn irreducible_submodules(&self) -> Result<Submodules> {
        let data = self.socle_data()?;
        if data.iter().any(|(_, _, m)| *m >= 2) {
            return Ok(Submodules::MultiplicityObstruction(
                data.iter()
                    .map(|(c, homs, mult)| SocleConstituent {
                        dim: c.dim,
                        multiplicity: *mult,
                        component: homs
                            .iter()
                            .fold(Subspace::zero(self.field(), self.dim), |acc, h| {
                                acc.sum(&column_space(h))
                            }),
                    })
                    .collect(),
            ));
        }
        Ok(Submodules::Irreducibles(
            data.iter()
                .map(|(_, homs, _)| SubmoduleWitness::checked(self, column_space(&homs[0])))
                .collect(),
        ))
    }

    /// Decomposition into irreducible summands, or NotSemisimple.
    pub fn semisimple_decomposition(&self) -> Result<Vec<Subspace>> {
        let mut total = Subspace::zero(self.field(), self.dim);
        let mut parts = Vec::new();
        for (c, homs, _) in self.socle_data()? {
            for h in &homs {
                let img = column_space(h);
                if total.sum(&img).dim() == total.dim() + c.dim {
                    total = total.sum(&img);
                    parts.push(img);
                }
            }
        }
        if !total.is_full() {
            return Err(Error::NotSemisimple);
        }
        Ok(parts)
    }
}

fn column_space(m: &FqMatrix) -> Subspace {
    Subspace::span(m.field(), m.rows(), (0..m.cols()).map(|j| m.column(j)))
}

fn spin_with(f: &Field, n: usize, actions: &[FqMatrix], v: &[Fq]) -> Subspace {
    let mut s = Subspace::zero(f, n);
    s.insert(v);
    let mut queue = vec![v.to_vec()];
    while let Some(u) = queue.pop() {
        if s.is_full() {
            break;
        }
        for a in actions {
            let w = a.mul_vec(&u);
            if s.insert(&w) {
                queue.push(w);
            }
        }
    }
    s
}

/// Basis of Hom(C, M) as dim M x dim C matrices, for C generated by its
/// first basis vector (true for irreducible C). A map is fixed by the image x
/// of that vector; spinning records each basis word as a linear map L_j with
/// phi(v_j) = L_j x, and the relations of C among the v_j cut out x.
pub fn hom_from_cyclic(c: &GModule, m: &GModule) -> Result<Vec<FqMatrix>> {
    let f = c.field().clone();
    let (dc, dm) = (c.dim, m.dim);
    if dc == 0 {
        return Err(Error::ZeroModule);
    }
    let mut e0 = vec![f.zero(); dc];
    e0[0] = f.one();
    let mut span = Subspace::zero(&f, dc);
    span.insert(&e0);
    let mut vecs = vec![e0];
    let mut maps = vec![FqMatrix::identity(&f, dm)];
    let mut i = 0;
    while i < vecs.len() {
        for (s, a) in c.action.iter().enumerate() {
            let w = a.mul_vec(&vecs[i]);
            if span.insert(&w) {
                vecs.push(w);
                maps.push(m.action[s].mul(&maps[i]));
            }
        }
        i += 1;
    }
    if vecs.len() != dc {
        return Err(Error::Invalid(
            "module is not generated by its first basis vector".into(),
        ));
    }
    let basis = FqMatrix::from_columns(&f, dc, &vecs);
    let binv = basis.inverse().expect("spanning set of full size");
    let mut rows: Vec<Fq> = Vec::new();
    let mut nrows = 0;
    for (j, v) in vecs.iter().enumerate() {
        for (s, a) in c.action.iter().enumerate() {
            let coords = binv.mul_vec(&a.mul_vec(v));
            let mut lhs = m.action[s].mul(&maps[j]);
            for (k, &ck) in coords.iter().enumerate() {
                if !ck.is_zero() {
                    lhs = lhs.sub(&maps[k].scale(ck));
                }
            }
            rows.extend_from_slice(lhs.data());
            nrows += dm;
        }
    }
    let system = FqMatrix::from_data(&f, nrows, dm, rows)?;
    let sol = kernel(&system);
    Ok(sol
        .basis()
        .iter()
        .map(|x| {
            let images: Vec<Vec<Fq>> = maps.iter().map(|l| l.mul_vec(x)).collect();
            FqMatrix::from_columns(&f, dm, &images).mul(&binv)
        })
        .collect())
}

/// Largest irreducible summand of the natural module restricted to the
/// l-power core, with the decomposition. Irreducibility is over the field
/// of definition.
pub fn max_irreducible_dim(group: &MatGroup) -> Result<(usize, Vec<Subspace>)> {
    let core = Arc::new(group.l_power_core()?);
    let v = GModule::natural(&core);
    let parts = v.semisimple_decomposition()?;
    let d = parts.iter().map(|p| p.dim()).max().unwrap_or(0);
    Ok((d, parts))
}

/// Image of G x G' in GL(V ⊗ V'), generated by g ⊗ I and I ⊗ g'.
pub fn tensor_image(a: &MatGroup, b: &MatGroup) -> Result<MatGroup> {
    tensor_image_capped(a, b, crate::group::DEFAULT_ORDER_CAP)
}

pub fn tensor_image_capped(a: &MatGroup, b: &MatGroup, cap: usize) -> Result<MatGroup> {
    if !Field::ptr_eq(a.field(), b.field()) {
        return Err(Error::FieldMismatch);
    }
    let f = a.field();
    let ia = FqMatrix::identity(f, a.dim());
    let ib = FqMatrix::identity(f, b.dim());
    let mut gens: Vec<FqMatrix> = a.generators().iter().map(|g| g.kron(&ib)).collect();
    gens.extend(b.generators().iter().map(|h| ia.kron(h)));
    MatGroup::closure_capped(f, a.dim() * b.dim(), gens, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn group(p: u64, dim: usize, gens: &[&[&[i64]]]) -> Arc<MatGroup> {
        let f = make_field(p, 1).unwrap();
        let gens = gens.iter().map(|g| FqMatrix::from_ints(&f, g)).collect();
        Arc::new(MatGroup::closure(&f, dim, gens).unwrap())
    }

    fn sl2(p: u64) -> Arc<MatGroup> {
        group(p, 2, &[&[&[1, 1], &[0, 1]], &[&[1, 0], &[1, 1]]])
    }

    fn s3_perm(p: u64) -> Arc<MatGroup> {
        group(
            p,
            3,
            &[
                &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]],
                &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]],
            ],
        )
    }

    /// Oracle: irreducible iff the span of the full orbit of every nonzero
    /// vector is the whole space.
    fn irreducible_by_orbits(m: &GModule) -> bool {
        let f = m.field().clone();
        let q = f.size();
        let total = q.pow(m.dim() as u32);
        for code in 1..total {
            let mut c = code;
            let v: Vec<Fq> = (0..m.dim())
                .map(|_| {
                    let x = f.from_packed(c % q).unwrap();
                    c /= q;
                    x
                })
                .collect();
            let orbit = m.element_actions().iter().map(|a| a.mul_vec(&v));
            if !Subspace::span(&f, m.dim(), orbit).is_full() {
                return false;
            }
        }
        true
    }

    #[test]
    fn natural_and_trivial() {
        let f = make_field(5, 1).unwrap();
        let t = Arc::new(MatGroup::closure(&f, 3, vec![]).unwrap());
        let v = GModule::natural(&t);
        assert_eq!(v.dim(), 3);
        assert!(v.action().is_empty());
        assert_eq!(GModule::natural(&sl2(7)).dim(), 2);
    }

    #[test]
    fn ad_examples() {
        let g = group(7, 2, &[&[&[1, 0], &[0, -1]]]);
        let ad = GModule::ad(&g);
        let a = &ad.action()[0];
        let f = g.field();
        assert_eq!(
            *a,
            FqMatrix::diagonal(f, &[f.one(), f.from_i64(-1), f.from_i64(-1), f.one()])
        );
        let (ad0, inc) = GModule::ad0(&g);
        assert_eq!(ad0.dim(), 3);
        for b in inc.basis() {
            assert!(FqMatrix::unflatten(f, 2, b).trace().is_zero());
        }
        let g1 = group(5, 1, &[&[&[2]]]);
        assert_eq!(GModule::ad(&g1).dim(), 1);
        assert_eq!(GModule::ad0(&g1).0.dim(), 0);
    }

    #[test]
    fn ad_matches_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for g in [sl2(5), sl2(7), s3_perm(5)] {
            let n = g.dim();
            let f = g.field().clone();
            let ad = GModule::ad(&g);
            ad.verify_homomorphism().unwrap();
            for _ in 0..100 {
                let i = rng.gen_range(0..g.order());
                let x = FqMatrix::from_data(
                    &f,
                    n,
                    n,
                    (0..n * n)
                        .map(|_| f.from_u64(rng.gen_range(0..f.size())))
                        .collect(),
                )
                .unwrap();
                let e = g.element(i);
                let conj = e.mul(&x).mul(&e.inverse().unwrap());
                assert_eq!(ad.element_action(i).mul_vec(&x.flatten()), conj.flatten());
            }
        }
    }

    #[test]
    fn new_rejects_non_homomorphism() {
        let g = sl2(5);
        let f = g.field();
        let bogus = vec![
            FqMatrix::from_ints(f, &[&[2]]),
            FqMatrix::from_ints(f, &[&[1]]),
        ];
        assert!(matches!(
            GModule::new(g.clone(), 1, bogus, "x"),
            Err(Error::Invalid(_))
        ));
        let det = vec![
            FqMatrix::from_ints(f, &[&[1]]),
            FqMatrix::from_ints(f, &[&[1]]),
        ];
        assert!(GModule::new(g, 1, det, "det").is_ok());
    }

    #[test]
    fn meataxe_examples() {
        let g = s3_perm(5);
        let v = GModule::natural(&g);
        match v.is_irreducible().unwrap() {
            Irreducibility::Reducible(w) => {
                assert!(w.verified_invariant);
                assert!(w.subspace.dim() > 0 && w.subspace.dim() < 3);
            }
            _ => panic!("permutation module is reducible"),
        }
        let ones = vec![g.field().one(); 3];
        let line = v.spin(&ones).unwrap();
        assert_eq!(line.subspace.dim(), 1);
        let mut e1 = vec![g.field().zero(); 3];
        e1[0] = g.field().one();
        assert!(v.spin(&e1).unwrap().subspace.is_full());
        assert_eq!(
            v.spin(&[g.field().zero(); 3]).unwrap_err(),
            Error::ZeroVector
        );

        let s = sl2(7);
        assert!(GModule::natural(&s)
            .is_irreducible()
            .unwrap()
            .is_irreducible());
        let (ad0, _) = GModule::ad0(&s);
        assert!(ad0.is_irreducible().unwrap().is_irreducible());
        let one = group(7, 1, &[&[&[3]]]);
        assert!(GModule::natural(&one)
            .is_irreducible()
            .unwrap()
            .is_irreducible());
    }

    #[test]
    fn meataxe_agrees_with_orbit_oracle() {
        let f3 = make_field(3, 1).unwrap();
        let cases: Vec<GModule> = vec![
            GModule::natural(&s3_perm(3)),
            GModule::natural(&sl2(3)),
            GModule::ad(&sl2(3)),
            GModule::ad0(&sl2(3)).0,
            GModule::ad0(&sl2(5)).0,
            GModule::natural(&group(3, 2, &[&[&[0, 1], &[-1, 0]]])),
            GModule::natural(&group(3, 2, &[&[&[1, 1], &[0, 1]]])),
            GModule::natural(&group(3, 2, &[&[&[0, 1], &[1, 0]]])),
            GModule::natural(&group(
                3,
                4,
                &[&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0]]],
            )),
            GModule::natural(&group(
                3,
                4,
                &[&[&[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]],
            )),
            GModule::natural(&Arc::new(MatGroup::closure(&f3, 2, vec![]).unwrap())),
        ];
        for m in cases {
            let oracle = irreducible_by_orbits(&m);
            for seed in 0..3 {
                let verdict = m.is_irreducible_seeded(seed).unwrap();
                assert_eq!(verdict.is_irreducible(), oracle, "{}", m.label());
                if let Irreducibility::Reducible(w) = verdict {
                    assert!(w.verified_invariant);
                }
            }
        }
    }

    #[test]
    fn submodule_lists() {
        let s = sl2(7);
        let (ad0, _) = GModule::ad0(&s);
        match ad0.irreducible_submodules().unwrap() {
            Submodules::Irreducibles(ws) => {
                assert_eq!(ws.len(), 1);
                assert!(ws[0].subspace.is_full());
            }
            _ => panic!("multiplicity free"),
        }
        let f = make_field(5, 1).unwrap();
        let t = Arc::new(MatGroup::closure(&f, 2, vec![]).unwrap());
        assert!(matches!(
            GModule::natural(&t).irreducible_submodules().unwrap(),
            Submodules::MultiplicityObstruction(_)
        ));
        // permutation module of S3 over GF(5): trivial line plus a 2-dim piece
        let p = GModule::natural(&s3_perm(5));
        match p.irreducible_submodules().unwrap() {
            Submodules::Irreducibles(ws) => {
                let mut dims: Vec<usize> = ws.iter().map(|w| w.subspace.dim()).collect();
                dims.sort();
                assert_eq!(dims, vec![1, 2]);
                assert!(ws.iter().all(|w| w.verified_invariant));
            }
            _ => panic!("multiplicity free"),
        }
        // over GF(3) the permutation module is uniserial: only the ones line
        let p3 = GModule::natural(&s3_perm(3));
        match p3.irreducible_submodules().unwrap() {
            Submodules::Irreducibles(ws) => {
                assert_eq!(ws.len(), 1);
                assert_eq!(ws[0].subspace.dim(), 1);
                assert!(ws[0]
                    .subspace
                    .contains(&[make_field(3, 1).unwrap().one(); 3]));
            }
            _ => panic!("multiplicity free"),
        }
        assert!(matches!(
            p3.semisimple_decomposition().unwrap_err(),
            Error::NotSemisimple
        ));
    }

    #[test]
    fn max_irreducible_dims() {
        let f5 = make_field(5, 1).unwrap();
        let c4 = MatGroup::closure(&f5, 2, vec![FqMatrix::from_ints(&f5, &[&[0, 1], &[-1, 0]])])
            .unwrap();
        assert_eq!(max_irreducible_dim(&c4).unwrap().0, 1);
        let (d, parts) = max_irreducible_dim(&sl2(7)).unwrap();
        assert_eq!((d, parts.len()), (2, 1));
        let f7 = make_field(7, 1).unwrap();
        let h = MatGroup::closure(
            &f7,
            2,
            vec![
                FqMatrix::scalar(&f7, 2, f7.from_i64(-1)),
                FqMatrix::from_ints(&f7, &[&[1, 1], &[0, 1]]),
            ],
        )
        .unwrap();
        assert_eq!(max_irreducible_dim(&h).unwrap_err(), Error::NotSemisimple);
    }

    #[test]
    fn hom_spaces() {
        let g = s3_perm(5);
        let p = GModule::natural(&g);
        let triv = GModule::trivial(&g, 1);
        let homs = hom_from_cyclic(&triv, &p).unwrap();
        assert_eq!(homs.len(), 1);
        for h in &homs {
            for (a, b) in p.action().iter().zip(triv.action()) {
                assert_eq!(a.mul(h), h.mul(b));
            }
        }
        let sum = p.direct_sum(&p).unwrap();
        assert_eq!(hom_from_cyclic(&triv, &sum).unwrap().len(), 2);
    }

    #[test]
    fn tensor_images() {
        let f5 = make_field(5, 1).unwrap();
        // C4 by a rotation and C3 by a 3-cycle in the 2-dim deleted
        // permutation representation
        let c4 = MatGroup::closure(&f5, 2, vec![FqMatrix::from_ints(&f5, &[&[0, 1], &[-1, 0]])])
            .unwrap();
        let c3 = MatGroup::closure(
            &f5,
            2,
            vec![FqMatrix::from_ints(&f5, &[&[0, -1], &[1, -1]])],
        )
        .unwrap();
        assert_eq!(c3.order(), 3);
        let t = tensor_image(&c4, &c3).unwrap();
        assert_eq!(t.order(), 12);
        assert_eq!(t.dim(), 4);
        let trivial = MatGroup::closure(&f5, 1, vec![]).unwrap();
        let t2 = tensor_image(&trivial, &c4).unwrap();
        assert_eq!(t2.order(), 4);
    }
}
