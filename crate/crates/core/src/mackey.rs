//! Rational Mackey functors on the orbit category.
//!
//! A Mackey functor is given by a vector space `M(G/H)` for each subgroup
//! class and, for every orbit-category map `f : G/K -> G/H`, a restriction
//! `res_f : M(G/H) -> M(G/K)` and a transfer `tr_f : M(G/K) -> M(G/H)`.
//! Conjugations are the restrictions along automorphisms of orbits. Values
//! on arbitrary finite G-sets are direct sums over orbits, read through the
//! orbit charts of [`GSet`].

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::gsets::{GMap, GSet, OrbitCategory};
use crate::linalg::{QMatrix, Q};
use crate::par::Exec;
use crate::span::{compose, decompose, hom_set, Span, TripleConstraint};

#[derive(Clone)]
pub struct MackeyFunctor {
    oc: Arc<OrbitCategory>,
    dims: Vec<usize>,
    /// `res[i][j][m]`: `M(G/H_j) -> M(G/H_i)` along map `m : i -> j`.
    res: Vec<Vec<Vec<QMatrix>>>,
    /// `tr[i][j][m]`: `M(G/H_i) -> M(G/H_j)` along map `m : i -> j`.
    tr: Vec<Vec<Vec<QMatrix>>>,
}

impl PartialEq for MackeyFunctor {
    fn eq(&self, other: &Self) -> bool {
        *self.oc.group() == *other.oc.group() && self.dims == other.dims && self.res == other.res && self.tr == other.tr
    }
}

impl Eq for MackeyFunctor {}

impl fmt::Debug for MackeyFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MackeyFunctor(dims={:?})", self.dims)
    }
}

impl MackeyFunctor {
    /// Builds a functor from dimensions and a `(res, tr)` pair for every
    /// orbit-category map `(source, target, index)`, checking shapes only.
    pub fn new(
        group: Arc<FiniteGroup>,
        dims: Vec<usize>,
        maps: impl IntoIterator<Item = ((usize, usize, usize), QMatrix, QMatrix)>,
    ) -> Result<Self> {
        let oc = OrbitCategory::new(group);
        let n = oc.num_objects();
        if dims.len() != n {
            return Err(Error::MalformedMackey(format!("{} dimensions for {n} classes", dims.len())));
        }
        let mut res: Vec<Vec<Vec<Option<QMatrix>>>> =
            (0..n).map(|i| (0..n).map(|j| vec![None; oc.num_maps(i, j)]).collect()).collect();
        let mut tr = res.clone();
        for ((i, j, m), r, t) in maps {
            if i >= n || j >= n || m >= oc.num_maps(i, j) {
                return Err(Error::MalformedMackey(format!("no map {m} from class {i} to class {j}")));
            }
            if (r.rows(), r.cols()) != (dims[i], dims[j]) || (t.rows(), t.cols()) != (dims[j], dims[i]) {
                return Err(Error::MalformedMackey(format!("matrix shape for map {m} : {i} -> {j}")));
            }
            if res[i][j][m].is_some() {
                return Err(Error::MalformedMackey(format!("map {m} : {i} -> {j} given twice")));
            }
            res[i][j][m] = Some(r);
            tr[i][j][m] = Some(t);
        }
        let unwrap = |v: Vec<Vec<Vec<Option<QMatrix>>>>| -> Result<Vec<Vec<Vec<QMatrix>>>> {
            v.into_iter()
                .enumerate()
                .map(|(i, row)| {
                    row.into_iter()
                        .enumerate()
                        .map(|(j, ms)| {
                            ms.into_iter()
                                .enumerate()
                                .map(|(m, x)| {
                                    x.ok_or_else(|| Error::MalformedMackey(format!("missing map {m} : {i} -> {j}")))
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        };
        Ok(MackeyFunctor {
            dims,
            res: unwrap(res)?,
            tr: unwrap(tr)?,
            oc,
        })
    }

    fn from_parts(oc: Arc<OrbitCategory>, dims: Vec<usize>, res: Vec<Vec<Vec<QMatrix>>>, tr: Vec<Vec<Vec<QMatrix>>>) -> Self {
        MackeyFunctor { oc, dims, res, tr }
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let oc = OrbitCategory::new(group);
        let n = oc.num_objects();
        let dims = vec![0; n];
        let mats: Vec<Vec<Vec<QMatrix>>> = (0..n)
            .map(|i| (0..n).map(|j| vec![QMatrix::zeros(0, 0); oc.num_maps(i, j)]).collect())
            .collect();
        Self::from_parts(oc, dims, mats.clone(), mats)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.oc.group()
    }

    pub fn orbit_category(&self) -> &Arc<OrbitCategory> {
        &self.oc
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn res(&self, i: usize, j: usize, m: usize) -> &QMatrix {
        &self.res[i][j][m]
    }

    pub fn tr(&self, i: usize, j: usize, m: usize) -> &QMatrix {
        &self.tr[i][j][m]
    }

    pub fn set_res(&mut self, i: usize, j: usize, m: usize, x: QMatrix) -> Result<()> {
        if (x.rows(), x.cols()) != (self.dims[i], self.dims[j]) {
            return Err(Error::DimensionMismatch(format!("res along {m} : {i} -> {j}")));
        }
        self.res[i][j][m] = x;
        Ok(())
    }

    pub fn set_tr(&mut self, i: usize, j: usize, m: usize, x: QMatrix) -> Result<()> {
        if (x.rows(), x.cols()) != (self.dims[j], self.dims[i]) {
            return Err(Error::DimensionMismatch(format!("tr along {m} : {i} -> {j}")));
        }
        self.tr[i][j][m] = x;
        Ok(())
    }

    /// Every map as `((source, target, index), res, tr)`.
    pub fn maps(&self) -> Vec<((usize, usize, usize), &QMatrix, &QMatrix)> {
        let n = self.dims.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for m in 0..self.oc.num_maps(i, j) {
                    out.push(((i, j, m), &self.res[i][j][m], &self.tr[i][j][m]));
                }
            }
        }
        out
    }

    /// Dimension of `M(X)`.
    pub fn dim_of(&self, x: &GSet) -> usize {
        x.orbits().iter().map(|o| self.dims[o.class]).sum()
    }

    fn offsets(&self, x: &GSet) -> Vec<usize> {
        let mut acc = 0;
        x.orbits()
            .iter()
            .map(|o| {
                let at = acc;
                acc += self.dims[o.class];
                at
            })
            .collect()
    }

    fn check_group(&self, x: &GSet) -> Result<()> {
        if **x.group() == **self.group() {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Restriction `M(Y) -> M(X)` along `f : X -> Y`.
    pub fn restrict_along(&self, f: &GMap) -> Result<QMatrix> {
        self.check_group(f.source())?;
        let (x, y) = (f.source(), f.target());
        let (ox, oy) = (self.offsets(x), self.offsets(y));
        let mut out = QMatrix::zeros(self.dim_of(x), self.dim_of(y));
        for o in 0..x.orbits().len() {
            let (s, t, m) = self.oc.map_of_orbit(x, o, f);
            let target = y.orbit_of(f.apply(x.orbits()[o].base));
            out.set_block(ox[o], oy[target], &self.res[s][t][m]);
        }
        Ok(out)
    }

    /// Transfer `M(X) -> M(Y)` along `f : X -> Y`.
    pub fn transfer_along(&self, f: &GMap) -> Result<QMatrix> {
        self.check_group(f.source())?;
        let (x, y) = (f.source(), f.target());
        let (ox, oy) = (self.offsets(x), self.offsets(y));
        let mut out = QMatrix::zeros(self.dim_of(y), self.dim_of(x));
        for o in 0..x.orbits().len() {
            let (s, t, m) = self.oc.map_of_orbit(x, o, f);
            let target = y.orbit_of(f.apply(x.orbits()[o].base));
            out.add_block(oy[target], ox[o], &self.tr[s][t][m]);
        }
        Ok(out)
    }

    /// Restriction along the automorphism `eH ↦ nH` of `G/H_class`, for
    /// `n` in the normalizer.
    pub fn conjugation(&self, class: usize, n: usize) -> &QMatrix {
        let point = self.oc.object(class).act(n, 0);
        let m = self.oc.map_index(class, class, point).expect("n normalizes H");
        &self.res[class][class][m]
    }
}

/// `tr_fwd ∘ res_back : M(left) -> M(right)`.
pub fn evaluate_on_span(m: &MackeyFunctor, s: &Span) -> Result<QMatrix> {
    let r = m.restrict_along(&s.back_map())?;
    let t = m.transfer_along(&s.fwd_map())?;
    t.checked_mul(&r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MackeyAxiom {
    Identity,
    RestrictionFunctoriality,
    TransferFunctoriality,
    DoubleCoset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MackeyViolation {
    pub axiom: MackeyAxiom,
    /// Subgroup classes `(K, L, H)`: for the double coset formula the maps
    /// are `G/K -> G/H <- G/L`, for functoriality `G/K -> G/L -> G/H`.
    pub classes: (usize, usize, usize),
    /// Orbit-category indices of the maps involved.
    pub maps: (usize, usize),
}

impl fmt::Display for MackeyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, l, h) = self.classes;
        write!(f, "{:?} fails at (K, L, H) = (H{k}, H{l}, H{h}), maps {:?}", self.axiom, self.maps)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MackeyReport {
    pub checks: usize,
    pub failures: Vec<MackeyViolation>,
}

impl MackeyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_axioms(m: &MackeyFunctor) -> MackeyReport {
    check_axioms_with(m, Exec::default())
}

pub fn check_axioms_with(m: &MackeyFunctor, exec: Exec) -> MackeyReport {
    let oc = &m.oc;
    let n = oc.num_objects();
    let per_target = exec.map_range(n, |h| {
        let mut report = MackeyReport::default();
        let mut fail = |axiom, classes, maps| report.failures.push(MackeyViolation { axiom, classes, maps });
        let id = oc.identity_map(h);
        let eye = QMatrix::identity(m.dims[h]);
        if m.res[h][h][id] != eye {
            fail(MackeyAxiom::Identity, (h, h, h), (id, id));
        }
        if m.tr[h][h][id] != eye {
            fail(MackeyAxiom::Identity, (h, h, h), (id, id));
        }
        // chains k -f-> l -g-> h
        for k in 0..n {
            for l in 0..n {
                for f in 0..oc.num_maps(k, l) {
                    for g in 0..oc.num_maps(l, h) {
                        let gf = oc.compose(k, l, h, f, g);
                        if m.res[k][h][gf] != &m.res[k][l][f] * &m.res[l][h][g] {
                            fail(MackeyAxiom::RestrictionFunctoriality, (k, l, h), (f, g));
                        }
                        if m.tr[k][h][gf] != &m.tr[l][h][g] * &m.tr[k][l][f] {
                            fail(MackeyAxiom::TransferFunctoriality, (k, l, h), (f, g));
                        }
                    }
                }
            }
        }
        // res_f ∘ tr_g = Σ tr_a ∘ res_b over the orbits of the pullback
        for k in 0..n {
            for l in 0..n {
                for f in 0..oc.num_maps(k, h) {
                    for g in 0..oc.num_maps(l, h) {
                        let lhs = &m.res[k][h][f] * &m.tr[l][h][g];
                        let mut rhs = QMatrix::zeros(m.dims[k], m.dims[l]);
                        for (s, a, b) in oc.pullback_decomposition(k, l, h, f, g) {
                            rhs = &rhs + &(&m.tr[s][k][a] * &m.res[s][l][b]);
                        }
                        if lhs != rhs {
                            fail(MackeyAxiom::DoubleCoset, (k, l, h), (f, g));
                        }
                    }
                }
            }
        }
        let chains: usize = (0..n)
            .map(|k| (0..n).map(|l| (oc.num_maps(k, l) * oc.num_maps(l, h)) * 2 + oc.num_maps(k, h) * oc.num_maps(l, h)).sum::<usize>())
            .sum();
        report.checks = 2 + chains;
        report
    });
    let mut report = MackeyReport::default();
    for r in per_target {
        report.checks += r.checks;
        report.failures.extend(r.failures);
    }
    report
}

fn require_axioms(m: &MackeyFunctor) -> Result<()> {
    match check_axioms(m).failures.first() {
        None => Ok(()),
        Some(v) => Err(Error::AxiomFailure(v.to_string())),
    }
}

/// Least index among the `H`-conjugates of subgroup `s`.
fn canonical_in(g: &FiniteGroup, h: usize, s: usize) -> usize {
    g.subgroup(h).members().iter().map(|&x| g.conjugate_index(s, x)).min().expect("nonempty")
}

/// Basis of `A(H) ⊗ Q`: subgroups of `H` up to `H`-conjugacy, as least
/// subgroup indices, ascending.
fn burnside_basis(g: &FiniteGroup, h: usize) -> Vec<usize> {
    let sh = g.subgroup(h);
    let mut out: Vec<usize> = (0..g.subgroups().len())
        .filter(|&s| g.subgroup(s).is_subset_of(sh) && canonical_in(g, h, s) == s)
        .collect();
    out.sort_unstable();
    out
}

/// The Burnside Mackey functor, `M(G/H) = A(H) ⊗ Q`, built from the
/// formulas for restriction and induction of `H`-sets.
pub fn burnside_mackey(g: &Arc<FiniteGroup>) -> MackeyFunctor {
    let oc = OrbitCategory::new(g.clone());
    let n = oc.num_objects();
    let reps: Vec<usize> = (0..n).map(|c| g.class(c).representative).collect();
    let bases: Vec<Vec<usize>> = reps.iter().map(|&h| burnside_basis(g, h)).collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let pos = |c: usize, s: usize| bases[c].binary_search(&s).expect("canonical basis subgroup");
    let mut res = Vec::with_capacity(n);
    let mut tr = Vec::with_capacity(n);
    for i in 0..n {
        let (mut res_row, mut tr_row) = (Vec::with_capacity(n), Vec::with_capacity(n));
        for j in 0..n {
            let (k, h) = (reps[i], reps[j]);
            let (mut rs, mut ts) = (Vec::new(), Vec::new());
            for m in 0..oc.num_maps(i, j) {
                // eK ↦ xH with x⁻¹ K x ≤ H
                let x = oc.coset_reps(j)[oc.base_image(i, j, m)];
                let kp = g.conjugate_index(k, x);
                let mut r = QMatrix::zeros(dims[i], dims[j]);
                for (col, &l) in bases[j].iter().enumerate() {
                    // K' \ H / L double cosets; the K-stabilizer of the point
                    // yL is x (K' ∩ yLy⁻¹) x⁻¹
                    let hs = g.subgroup(h).members();
                    let mut seen = vec![false; g.order()];
                    for &y in hs {
                        if seen[y] {
                            continue;
                        }
                        for &a in g.subgroup(kp).members() {
                            for &b in g.subgroup(l).members() {
                                seen[g.mul(g.mul(a, y), b)] = true;
                            }
                        }
                        let ylyi = g.conjugate_index(l, g.inv(y));
                        let stab = g.intersection_index(kp, ylyi);
                        let back = g.conjugate_index(stab, g.inv(x));
                        let row = pos(i, canonical_in(g, k, back));
                        let v = r.get(row, col) + Q::from_integer(1.into());
                        r.set(row, col, v);
                    }
                }
                let mut t = QMatrix::zeros(dims[j], dims[i]);
                for (col, &l) in bases[i].iter().enumerate() {
                    let moved = g.conjugate_index(l, x);
                    t.set(pos(j, canonical_in(g, h, moved)), col, Q::from_integer(1.into()));
                }
                rs.push(r);
                ts.push(t);
            }
            res_row.push(rs);
            tr_row.push(ts);
        }
        res.push(res_row);
        tr.push(tr_row);
    }
    MackeyFunctor::from_parts(oc, dims, res, tr)
}

/// `M(G/H)` free on the basis spans `G/H => x`; restriction and transfer
/// precompose with the spans of orbit-category maps.
pub fn represented_mackey(x: &GSet) -> Result<MackeyFunctor> {
    let g = x.group().clone();
    let oc = OrbitCategory::new(g);
    let n = oc.num_objects();
    let all = TripleConstraint::all();
    let bases: Vec<Vec<Span>> = (0..n)
        .map(|c| hom_set(oc.object(c), x, &all))
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let column = |s: &Span, target: usize| -> Result<Vec<Q>> {
        let mut v = vec![Q::zero(); dims[target]];
        let coeffs = decompose(s, &bases[target])
            .ok_or_else(|| Error::MalformedMackey("span outside the hom basis".into()))?;
        for (p, c) in coeffs {
            v[p] += Q::from_integer((c as i64).into());
        }
        Ok(v)
    };
    let mut res = Vec::with_capacity(n);
    let mut tr = Vec::with_capacity(n);
    for i in 0..n {
        let (mut res_row, mut tr_row) = (Vec::new(), Vec::new());
        for j in 0..n {
            let (mut rs, mut ts) = (Vec::new(), Vec::new());
            for m in 0..oc.num_maps(i, j) {
                let f = oc.gmap(i, j, m);
                let fwd = Span::forward(&f);
                let bwd = Span::backward(&f);
                let rcols: Vec<Vec<Q>> = bases[j]
                    .iter()
                    .map(|s| column(&compose(s, &fwd)?, i))
                    .collect::<Result<_>>()?;
                let tcols: Vec<Vec<Q>> = bases[i]
                    .iter()
                    .map(|s| column(&compose(s, &bwd)?, j))
                    .collect::<Result<_>>()?;
                rs.push(QMatrix::from_columns(&rcols, dims[i]));
                ts.push(QMatrix::from_columns(&tcols, dims[j]));
            }
            res_row.push(rs);
            tr_row.push(ts);
        }
        res.push(res_row);
        tr.push(tr_row);
    }
    Ok(MackeyFunctor::from_parts(oc, dims, res, tr))
}

/// Action of a Burnside element: at level `H`, `[X]` acts through the span
/// `G/H <- G/H × X -> G/H`.
pub fn burnside_action(a: &BurnsideElement, m: &MackeyFunctor) -> Result<Vec<QMatrix>> {
    if **a.group() != **m.group() {
        return Err(Error::GroupMismatch);
    }
    let oc = &m.oc;
    let n = oc.num_objects();
    (0..n)
        .map(|h| {
            let gh = oc.object(h);
            let mut total = QMatrix::zeros(m.dims[h], m.dims[h]);
            for (c, coeff) in a.coeffs().iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let (_, p1, _) = gh.product_projections(oc.object(c))?;
                let s = Span::new(p1.clone(), p1)?;
                total = &total + &evaluate_on_span(m, &s)?.scale(coeff);
            }
            Ok(total)
        })
        .collect()
}

/// Restricts a functor to subspaces `B_H` (given by basis columns) that
/// are preserved by every restriction and transfer.
fn restrict_to(m: &MackeyFunctor, bases: &[QMatrix]) -> MackeyFunctor {
    let oc = &m.oc;
    let n = oc.num_objects();
    let dims: Vec<usize> = bases.iter().map(QMatrix::cols).collect();
    let coords = |target: &QMatrix, image: &QMatrix| -> QMatrix {
        target.solve(image).expect("subspace is preserved")
    };
    let mut res = Vec::with_capacity(n);
    let mut tr = Vec::with_capacity(n);
    for i in 0..n {
        let (mut res_row, mut tr_row) = (Vec::new(), Vec::new());
        for j in 0..n {
            let (mut rs, mut ts) = (Vec::new(), Vec::new());
            for k in 0..oc.num_maps(i, j) {
                rs.push(coords(&bases[i], &(&m.res[i][j][k] * &bases[j])));
                ts.push(coords(&bases[j], &(&m.tr[i][j][k] * &bases[i])));
            }
            res_row.push(rs);
            tr_row.push(ts);
        }
        res.push(res_row);
        tr.push(tr_row);
    }
    MackeyFunctor::from_parts(oc.clone(), dims, res, tr)
}

/// A Mackey functor piece with the level projectors that cut it out.
#[derive(Debug, Clone)]
pub struct SplitPiece {
    pub class: usize,
    pub projectors: Vec<QMatrix>,
    pub functor: MackeyFunctor,
}

/// Splits `m` along the primitive idempotents of the Burnside ring.
pub fn split(m: &MackeyFunctor) -> Result<Vec<SplitPiece>> {
    require_axioms(m)?;
    let ring = BurnsideRing::new(m.group().clone());
    ring.rational_idempotents()
        .iter()
        .enumerate()
        .map(|(class, e)| {
            let projectors = burnside_action(e, m)?;
            let bases: Vec<QMatrix> = projectors.iter().map(QMatrix::column_basis).collect();
            Ok(SplitPiece {
                class,
                functor: restrict_to(m, &bases),
                projectors,
            })
        })
        .collect()
}

/// A representation of the Weyl group `W_G H = N_G(H) / H`, one matrix per
/// group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylModule {
    pub class: usize,
    pub dim: usize,
    pub weyl: Arc<FiniteGroup>,
    pub action: Vec<QMatrix>,
}

impl WeylModule {
    /// Whether the matrices form a homomorphism from the Weyl group.
    pub fn is_representation(&self) -> bool {
        let w = &self.weyl;
        self.action[0] == QMatrix::identity(self.dim)
            && w.elements().all(|a| {
                w.elements()
                    .all(|b| self.action[w.mul(a, b)] == &self.action[a] * &self.action[b])
            })
    }
}

/// `M(G/H)` modulo the images of transfers along non-invertible maps into
/// `G/H`, with the induced action of the Weyl group through restriction
/// along the automorphisms of `G/H`.
pub fn geometric_fixed_points(m: &MackeyFunctor, class: usize) -> Result<WeylModule> {
    require_axioms(m)?;
    Ok(geometric_fixed_points_unchecked(m, class))
}

fn geometric_fixed_points_unchecked(m: &MackeyFunctor, h: usize) -> WeylModule {
    let oc = &m.oc;
    let d = m.dims[h];
    let mut images = QMatrix::zeros(d, 0);
    for k in (0..oc.num_objects()).filter(|&k| k != h) {
        for f in 0..oc.num_maps(k, h) {
            images = images.hstack(&m.tr[k][h][f]);
        }
    }
    let image = images.column_basis();
    // complete the image basis with standard vectors; the added vectors
    // span a complement that represents the quotient
    let (_, pivots) = image.hstack(&QMatrix::identity(d)).rref();
    let r = image.cols();
    let complement: Vec<usize> = pivots.iter().filter(|&&p| p >= r).map(|&p| p - r).collect();
    let mut full = image.clone();
    for &c in &complement {
        let mut e = QMatrix::zeros(d, 1);
        e.set(c, 0, Q::from_integer(1.into()));
        full = full.hstack(&e);
    }
    let full_inv = full.inverse().expect("completed basis");
    let q = complement.len();
    let class = m.group().class(h);
    let action = class
        .weyl_lifts
        .iter()
        .map(|&n| {
            let rho = m.conjugation(h, n);
            let mut out = QMatrix::zeros(q, q);
            for (col, &c) in complement.iter().enumerate() {
                let coords = full_inv.apply(&rho.column(c));
                for row in 0..q {
                    out.set(row, col, coords[r + row].clone());
                }
            }
            out
        })
        .collect();
    WeylModule {
        class: h,
        dim: q,
        weyl: class.weyl.clone(),
        action,
    }
}
