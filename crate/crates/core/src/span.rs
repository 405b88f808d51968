//! Spans of finite G-sets `X <- Z -> Y`, composed by pullback and compared
//! up to isomorphism of the apex.
//!
//! An orbit of an apex lying over `(x, y)` is classified by its orbit type:
//! the least point `b` of the G-orbit of `(x, y)` in `X × Y`, together with
//! the stabilizer of a point over `b` up to conjugation by the stabilizer of
//! `b`. A span class is the multiset of its orbit types, and the spans with
//! transitive apex (one per orbit type) form a basis of the hom-monoid.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::gsets::{equivariant_maps, pullback, GMap, GSet};
use crate::indexing::TransferSystem;
use crate::par::Exec;

/// Upper bound on the number of orbit types considered by [`hom_set`].
pub const HOM_SET_CAP: usize = 200_000;

#[derive(Clone, PartialEq, Eq)]
pub struct Span {
    left: GSet,
    apex: GSet,
    right: GSet,
    back: Vec<usize>,
    fwd: Vec<usize>,
}

impl fmt::Debug for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Span({:?} <- {:?} -> {:?}; back={:?}, fwd={:?})",
            self.left.orbit_tags(),
            self.apex.orbit_tags(),
            self.right.orbit_tags(),
            self.back,
            self.fwd
        )
    }
}

/// Orbit type of a transitive piece of a span apex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitType {
    pub left_point: usize,
    pub right_point: usize,
    /// Subgroup index of the canonical stabilizer.
    pub stabilizer: usize,
}

/// Sorted multiset of orbit types: a complete invariant of a span class.
pub type SpanKey = Vec<OrbitType>;

impl Span {
    pub fn new(back: GMap, fwd: GMap) -> Result<Self> {
        if back.source() != fwd.source() {
            return Err(Error::ObjectMismatch);
        }
        if **back.source().group() != **back.target().group()
            || **fwd.target().group() != **back.target().group()
        {
            return Err(Error::GroupMismatch);
        }
        Ok(Span {
            left: back.target().clone(),
            apex: back.source().clone(),
            right: fwd.target().clone(),
            back: back.assignment().to_vec(),
            fwd: fwd.assignment().to_vec(),
        })
    }

    /// Validating constructor from raw leg assignments.
    pub fn from_parts(left: GSet, apex: GSet, right: GSet, back: Vec<usize>, fwd: Vec<usize>) -> Result<Self> {
        let b = GMap::new(apex.clone(), left, back)?;
        let f = GMap::new(apex, right, fwd)?;
        Span::new(b, f)
    }

    pub fn identity(x: &GSet) -> Self {
        let id: Vec<usize> = (0..x.size()).collect();
        Span {
            left: x.clone(),
            apex: x.clone(),
            right: x.clone(),
            back: id.clone(),
            fwd: id,
        }
    }

    /// `X <- X -> Y` with backward leg the identity.
    pub fn forward(f: &GMap) -> Self {
        Span {
            left: f.source().clone(),
            apex: f.source().clone(),
            right: f.target().clone(),
            back: (0..f.source().size()).collect(),
            fwd: f.assignment().to_vec(),
        }
    }

    /// `Y <- X -> X` with forward leg the identity.
    pub fn backward(f: &GMap) -> Self {
        Span {
            left: f.target().clone(),
            apex: f.source().clone(),
            right: f.source().clone(),
            back: f.assignment().to_vec(),
            fwd: (0..f.source().size()).collect(),
        }
    }

    /// The span with empty apex, the zero of the hom-monoid.
    pub fn zero(x: &GSet, y: &GSet) -> Self {
        Span {
            left: x.clone(),
            apex: GSet::empty(x.group().clone()),
            right: y.clone(),
            back: Vec::new(),
            fwd: Vec::new(),
        }
    }

    pub fn left(&self) -> &GSet {
        &self.left
    }

    pub fn apex(&self) -> &GSet {
        &self.apex
    }

    pub fn right(&self) -> &GSet {
        &self.right
    }

    pub fn back(&self) -> &[usize] {
        &self.back
    }

    pub fn fwd(&self) -> &[usize] {
        &self.fwd
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.apex.group()
    }

    pub fn back_map(&self) -> GMap {
        GMap::new_unchecked(self.apex.clone(), self.left.clone(), self.back.clone())
    }

    pub fn fwd_map(&self) -> GMap {
        GMap::new_unchecked(self.apex.clone(), self.right.clone(), self.fwd.clone())
    }

    /// Same span with the apex replaced by its canonical form.
    pub fn canonical(&self) -> Span {
        let (apex, iso) = self.apex.canonicalize();
        let mut back = vec![0; apex.size()];
        let mut fwd = vec![0; apex.size()];
        for z in 0..self.apex.size() {
            back[iso[z]] = self.back[z];
            fwd[iso[z]] = self.fwd[z];
        }
        Span {
            left: self.left.clone(),
            apex,
            right: self.right.clone(),
            back,
            fwd,
        }
    }

    /// Orbit type of each apex orbit, in apex orbit order.
    pub fn orbit_types(&self) -> Vec<OrbitType> {
        let g = self.group();
        self.apex
            .orbits()
            .iter()
            .map(|o| {
                let z = o.base;
                orbit_type(g, &self.left, &self.right, self.back[z], self.fwd[z], g.class(o.class).representative)
            })
            .collect()
    }

    pub fn key(&self) -> SpanKey {
        let mut k = self.orbit_types();
        k.sort_unstable();
        k
    }

    /// Span with the coproduct of the apexes over the same boundary.
    pub fn sum(&self, other: &Span) -> Result<Span> {
        if self.left != other.left || self.right != other.right {
            return Err(Error::BoundaryMismatch);
        }
        let apex = self.apex.coproduct(&other.apex)?;
        let mut back = self.back.clone();
        back.extend_from_slice(&other.back);
        let mut fwd = self.fwd.clone();
        fwd.extend_from_slice(&other.fwd);
        Ok(Span {
            left: self.left.clone(),
            apex,
            right: self.right.clone(),
            back,
            fwd,
        })
    }
}

/// Canonical orbit type of a point over `(x, y)` with stabilizer `stab`.
fn orbit_type(g: &FiniteGroup, left: &GSet, right: &GSet, x: usize, y: usize, stab: usize) -> OrbitType {
    let ny = right.size();
    let mut best = (usize::MAX, 0);
    for e in g.elements() {
        let p = left.act(e, x) * ny + right.act(e, y);
        if p < best.0 {
            best = (p, e);
        }
    }
    let (b, e) = best;
    let (bx, by) = (b / ny, b % ny);
    // e·z lies over b and has stabilizer e S e⁻¹
    let moved = g.conjugate_index(stab, g.inv(e));
    let stabilizer = g
        .elements()
        .filter(|&c| left.act(c, bx) == bx && right.act(c, by) == by)
        .map(|c| g.conjugate_index(moved, c))
        .min()
        .expect("identity stabilizes b");
    OrbitType {
        left_point: bx,
        right_point: by,
        stabilizer,
    }
}

/// Transitive span realizing an orbit type.
fn span_of_type(g: &Arc<FiniteGroup>, left: &GSet, right: &GSet, t: OrbitType) -> Span {
    let class = g.class_of(t.stabilizer);
    let rep = g.class(class).representative;
    // x⁻¹ S x = H, so S = x H x⁻¹ and the base coset goes over x⁻¹·b
    let x = g
        .elements()
        .find(|&x| g.conjugate_index(t.stabilizer, x) == rep)
        .expect("stabilizer is conjugate to its class representative");
    let xi = g.inv(x);
    let (bx, by) = (left.act(xi, t.left_point), right.act(xi, t.right_point));
    let apex = GSet::orbit_of_class(g.clone(), class);
    let reps = crate::gsets::cosets(g, g.subgroup(rep)).0;
    let back = reps.iter().map(|&r| left.act(r, bx)).collect();
    let fwd = reps.iter().map(|&r| right.act(r, by)).collect();
    Span {
        left: left.clone(),
        apex,
        right: right.clone(),
        back,
        fwd,
    }
}

/// A class of G-maps, used for the two legs of a constrained span category.
#[derive(Clone)]
pub enum MapClass {
    All,
    Isomorphisms,
    /// Coproducts of orbit isomorphisms followed by codiagonals.
    FoldMaps,
    /// Members of the indexing system of a transfer system.
    Indexing(Arc<TransferSystem>),
    Custom(&'static str, Arc<dyn Fn(&GMap) -> bool + Send + Sync>),
}

impl fmt::Debug for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapClass::All => write!(f, "all"),
            MapClass::Isomorphisms => write!(f, "isomorphisms"),
            MapClass::FoldMaps => write!(f, "fold-maps"),
            MapClass::Indexing(t) => write!(f, "indexing({:?})", t),
            MapClass::Custom(name, _) => write!(f, "custom({name})"),
        }
    }
}

impl MapClass {
    pub fn contains(&self, m: &GMap) -> bool {
        match self {
            MapClass::All => true,
            MapClass::Isomorphisms => m.is_bijective(),
            MapClass::FoldMaps => m.is_orbitwise_iso(),
            MapClass::Indexing(t) => t.contains_map(m),
            MapClass::Custom(_, p) => p(m),
        }
    }

    pub fn name(&self) -> String {
        format!("{self:?}")
    }
}

/// Backward and forward leg classes of an adequate triple on finite G-sets.
#[derive(Debug, Clone)]
pub struct TripleConstraint {
    pub backward: MapClass,
    pub forward: MapClass,
}

impl TripleConstraint {
    pub fn all() -> Self {
        TripleConstraint {
            backward: MapClass::All,
            forward: MapClass::All,
        }
    }

    pub fn new(backward: MapClass, forward: MapClass) -> Self {
        TripleConstraint { backward, forward }
    }

    pub fn admits(&self, s: &Span) -> bool {
        self.backward.contains(&s.back_map()) && self.forward.contains(&s.fwd_map())
    }
}

/// `s2 ∘ s1`; the apex is the pullback of the inner legs, in canonical form.
pub fn compose(s2: &Span, s1: &Span) -> Result<Span> {
    if s1.right != s2.left {
        return Err(Error::ObjectMismatch);
    }
    let (p, p1, p2) = pullback(&s1.fwd_map(), &s2.back_map())?;
    let back = p1.assignment().iter().map(|&z| s1.back[z]).collect();
    let fwd = p2.assignment().iter().map(|&z| s2.fwd[z]).collect();
    Ok(Span {
        left: s1.left.clone(),
        apex: p,
        right: s2.right.clone(),
        back,
        fwd,
    }
    .canonical())
}

/// Searches for an apex isomorphism commuting with both legs, matching
/// orbits of equal class by backtracking.
pub fn spans_equivalent(s: &Span, t: &Span) -> Result<bool> {
    if s.left != t.left || s.right != t.right {
        return Err(Error::BoundaryMismatch);
    }
    if s.apex.class_multiset() != t.apex.class_multiset() {
        return Ok(false);
    }
    let g = s.group();
    let so = s.apex.orbits();
    let to = t.apex.orbits();
    // compatible[i][j]: orbit i of s can be sent isomorphically onto orbit j of t
    let compatible: Vec<Vec<bool>> = so
        .iter()
        .map(|a| {
            let rep = g.class(a.class).representative;
            to.iter()
                .map(|b| {
                    b.class == a.class
                        && b.points.iter().any(|&w| {
                            t.back[w] == s.back[a.base]
                                && t.fwd[w] == s.fwd[a.base]
                                && t.apex.stabilizer(w) == rep
                        })
                })
                .collect()
        })
        .collect();
    fn search(i: usize, compatible: &[Vec<bool>], used: &mut [bool]) -> bool {
        if i == compatible.len() {
            return true;
        }
        for j in 0..used.len() {
            if !used[j] && compatible[i][j] {
                used[j] = true;
                if search(i + 1, compatible, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    let mut used = vec![false; to.len()];
    Ok(search(0, &compatible, &mut used))
}

/// Basis of the hom-monoid `X => Y` in the constrained span category: one
/// transitive-apex span per admissible orbit type, ordered by orbit type.
/// The zero span is not listed.
pub fn hom_set(x: &GSet, y: &GSet, c: &TripleConstraint) -> Result<Vec<Span>> {
    hom_set_with(x, y, c, Exec::default())
}

pub fn hom_set_with(x: &GSet, y: &GSet, c: &TripleConstraint, exec: Exec) -> Result<Vec<Span>> {
    if **x.group() != **y.group() {
        return Err(Error::GroupMismatch);
    }
    let g = x.group().clone();
    let ny = y.size();
    // least point of each G-orbit of X × Y
    let mut seen = vec![false; x.size() * ny];
    let mut bases = Vec::new();
    for b in 0..seen.len() {
        if seen[b] {
            continue;
        }
        bases.push(b);
        for e in g.elements() {
            seen[x.act(e, b / ny) * ny + y.act(e, b % ny)] = true;
        }
    }
    let candidates: usize = bases.len() * g.subgroups().len();
    if candidates > HOM_SET_CAP {
        return Err(Error::SpanCapExceeded(HOM_SET_CAP));
    }
    let spans = exec.flat_map_range(bases.len(), |i| {
        let b = bases[i];
        let (bx, by) = (b / ny, b % ny);
        let stab: Vec<usize> = g
            .elements()
            .filter(|&e| x.act(e, bx) == bx && y.act(e, by) == by)
            .collect();
        let stab_index = g.subgroup_index(&stab).expect("stabilizer is a subgroup");
        let stab_sub = g.subgroup(stab_index);
        (0..g.subgroups().len())
            .filter(|&s| g.subgroup(s).is_subset_of(stab_sub))
            .filter(|&s| stab.iter().all(|&e| g.conjugate_index(s, e) >= s))
            .map(|s| {
                span_of_type(
                    &g,
                    x,
                    y,
                    OrbitType {
                        left_point: bx,
                        right_point: by,
                        stabilizer: s,
                    },
                )
            })
            .filter(|sp| c.admits(sp))
            .collect()
    });
    Ok(spans)
}

/// Coefficients of a span in the basis returned by [`hom_set`] with the
/// unconstrained triple: `(basis position, multiplicity)`.
pub fn decompose(s: &Span, basis: &[Span]) -> Option<Vec<(usize, usize)>> {
    let keys: Vec<OrbitType> = basis.iter().map(|b| b.orbit_types()[0]).collect();
    let mut out: Vec<(usize, usize)> = Vec::new();
    for t in s.key() {
        let pos = keys.binary_search(&t).ok()?;
        match out.last_mut() {
            Some((p, m)) if *p == pos => *m += 1,
            _ => out.push((pos, 1)),
        }
    }
    Some(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiadditiveReport {
    /// `|hom_set(x ⊔ y, z)|`.
    pub basis_sum: usize,
    pub basis_left: usize,
    pub basis_right: usize,
    /// Restriction along the coproduct inclusions is a bijection of bases.
    pub splitting_bijective: bool,
    /// Number of spans `x ⊔ y => z` with at most one orbit over each summand.
    pub product_lhs: usize,
    /// `(|hom_set(x, z)| + 1) * (|hom_set(y, z)| + 1)`.
    pub product_rhs: usize,
    pub holds: bool,
}

/// Checks `Hom(x ⊔ y, z) ≅ Hom(x, z) × Hom(y, z)`. On bases the splitting is
/// additive; on spans with at most one apex orbit per summand it is the
/// product of the two counts including the zero span.
pub fn check_semiadditive(x: &GSet, y: &GSet, z: &GSet, c: &TripleConstraint) -> Result<SemiadditiveReport> {
    let (xy, ix, iy) = x.coproduct_inclusions(y)?;
    let b_sum = hom_set(&xy, z, c)?;
    let b_left = hom_set(x, z, c)?;
    let b_right = hom_set(y, z, c)?;
    let key_left: Vec<SpanKey> = b_left.iter().map(Span::key).collect();
    let key_right: Vec<SpanKey> = b_right.iter().map(Span::key).collect();
    let fx = Span::forward(&ix);
    let fy = Span::forward(&iy);

    let mut hit_left = vec![0usize; b_left.len()];
    let mut hit_right = vec![0usize; b_right.len()];
    let mut splitting_bijective = b_sum.len() == b_left.len() + b_right.len();
    for s in &b_sum {
        let rx = compose(s, &fx)?.key();
        let ry = compose(s, &fy)?.key();
        match (rx.is_empty(), ry.is_empty()) {
            (false, true) => match key_left.iter().position(|k| *k == rx) {
                Some(p) => hit_left[p] += 1,
                None => splitting_bijective = false,
            },
            (true, false) => match key_right.iter().position(|k| *k == ry) {
                Some(p) => hit_right[p] += 1,
                None => splitting_bijective = false,
            },
            _ => splitting_bijective = false,
        }
    }
    splitting_bijective &= hit_left.iter().chain(&hit_right).all(|&h| h == 1);

    // assemble every pair (a, b) with a, b basis spans or zero, then count
    // the distinct classes that arise
    let lift = |s: &Span, inc: &GMap| -> Span {
        Span {
            left: xy.clone(),
            apex: s.apex.clone(),
            right: z.clone(),
            back: s.back.iter().map(|&p| inc.apply(p)).collect(),
            fwd: s.fwd.clone(),
        }
    };
    let zero = Span::zero(&xy, z);
    let mut left_options = vec![zero.clone()];
    left_options.extend(b_left.iter().map(|s| lift(s, &ix)));
    let mut right_options = vec![zero];
    right_options.extend(b_right.iter().map(|s| lift(s, &iy)));
    let mut assembled: Vec<SpanKey> = Vec::new();
    for a in &left_options {
        for b in &right_options {
            assembled.push(a.sum(b)?.key());
        }
    }
    let product_rhs = left_options.len() * right_options.len();
    assembled.sort();
    assembled.dedup();
    // the spans of x ⊔ y with at most one orbit over each summand, read
    // through the sum basis
    let over_left = |s: &Span| s.back.iter().all(|&p| p < x.size());
    let (sum_left, sum_right): (Vec<&Span>, Vec<&Span>) = b_sum.iter().partition(|s| over_left(s));
    let mut expected: Vec<SpanKey> = Vec::new();
    for a in std::iter::once(None).chain(sum_left.iter().map(Some)) {
        for b in std::iter::once(None).chain(sum_right.iter().map(Some)) {
            let mut k: SpanKey = Vec::new();
            if let Some(a) = a {
                k.extend(a.key());
            }
            if let Some(b) = b {
                k.extend(b.key());
            }
            k.sort_unstable();
            expected.push(k);
        }
    }
    expected.sort();
    expected.dedup();
    let product_lhs = expected.len();
    let holds = splitting_bijective && assembled == expected && product_lhs == product_rhs;
    Ok(SemiadditiveReport {
        basis_sum: b_sum.len(),
        basis_left: b_left.len(),
        basis_right: b_right.len(),
        splitting_bijective,
        product_lhs,
        product_rhs,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdequacyFailure {
    /// Corpus positions of the backward and forward maps.
    pub backward: usize,
    pub forward: usize,
    /// Pulled-back backward leg left its class.
    pub backward_fails: bool,
    /// Pulled-back forward leg left its class.
    pub forward_fails: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AdequacyReport {
    pub pairs_checked: usize,
    pub failures: Vec<AdequacyFailure>,
}

impl AdequacyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every backward `b : X -> Z` and forward `f : Y -> Z` in the corpus,
/// checks that the pullback of `b` along `f` is backward and the pullback
/// of `f` along `b` is forward.
pub fn check_adequate(c: &TripleConstraint, corpus: &[GMap]) -> AdequacyReport {
    let mut report = AdequacyReport::default();
    for (i, b) in corpus.iter().enumerate() {
        if !c.backward.contains(b) {
            continue;
        }
        for (j, f) in corpus.iter().enumerate() {
            if !c.forward.contains(f) || b.target() != f.target() {
                continue;
            }
            report.pairs_checked += 1;
            let (_, pb, pf) = pullback(b, f).expect("common target");
            // pf : P -> Y is the pullback of b; pb : P -> X that of f
            let backward_fails = !c.backward.contains(&pf);
            let forward_fails = !c.forward.contains(&pb);
            if backward_fails || forward_fails {
                report.failures.push(AdequacyFailure {
                    backward: i,
                    forward: j,
                    backward_fails,
                    forward_fails,
                });
            }
        }
    }
    report
}

/// Every equivariant map between canonical orbits and their pairwise
/// coproducts with a point orbit: a small, structured corpus for
/// [`check_adequate`].
pub fn map_corpus(g: &Arc<FiniteGroup>) -> Vec<GMap> {
    let n = g.num_classes();
    let mut objects: Vec<GSet> = (0..n).map(|c| GSet::orbit_of_class(g.clone(), c)).collect();
    for a in 0..n {
        for b in a..n {
            objects.push(GSet::from_classes(g.clone(), &[a, b]));
        }
    }
    let mut out = Vec::new();
    for s in &objects {
        for t in &objects {
            out.extend(equivariant_maps(s, t).expect("same group"));
        }
    }
    out
}
