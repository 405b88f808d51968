//! Finite G-sets and equivariant maps.
//!
//! A [`GSet`] stores its full action table together with its orbit
//! decomposition. Each orbit carries a chart: a base point whose stabilizer
//! is exactly the canonical representative `H` of its conjugacy class, and
//! the resulting identification of the orbit with the coset set `G/H`.
//! The canonical form of a G-set is the coproduct of the coset sets of its
//! orbit classes in ascending class order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// One orbit of a G-set with its chart to the canonical coset set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Conjugacy class of the stabilizers.
    pub class: usize,
    /// Points of the orbit, ascending.
    pub points: Vec<usize>,
    /// First point whose stabilizer is the class representative.
    pub base: usize,
    /// `coset_to_point[c]` is the point corresponding to coset `c` of `G/H`.
    pub coset_to_point: Vec<usize>,
}

struct Inner {
    size: usize,
    action: Vec<usize>,
    orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
    coset_of: Vec<usize>,
}

#[derive(Clone)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    inner: Arc<Inner>,
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.inner, &other.inner) || self.inner.action == other.inner.action)
            && self.inner.size == other.inner.size
            && *self.group == *other.group
    }
}

impl Eq for GSet {}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSet(|X|={}, orbits={:?})", self.size(), self.orbit_tags())
    }
}

/// Cosets of `h` ordered by least element, with the coset of each element.
pub(crate) fn cosets(g: &FiniteGroup, h: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let mut reps = Vec::new();
    let mut coset_of = vec![usize::MAX; g.order()];
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for &m in h.members() {
            coset_of[g.mul(x, m)] = idx;
        }
    }
    (reps, coset_of)
}

impl GSet {
    /// Builds a G-set from a flattened action table `action[g * size + x]`,
    /// checking the action laws.
    pub fn from_action(group: Arc<FiniteGroup>, size: usize, action: Vec<usize>) -> Result<Self> {
        let n = group.order();
        if action.len() != n * size {
            return Err(Error::InvalidGSet(format!(
                "action table has {} entries, expected {}",
                action.len(),
                n * size
            )));
        }
        if let Some(&bad) = action.iter().find(|&&p| p >= size) {
            return Err(Error::InvalidGSet(format!("point {bad} out of range")));
        }
        for x in 0..size {
            if action[x] != x {
                return Err(Error::InvalidGSet(format!("identity moves point {x}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = group.mul(a, b);
                for x in 0..size {
                    if action[ab * size + x] != action[a * size + action[b * size + x]] {
                        return Err(Error::InvalidGSet(format!(
                            "action is not compatible with the product at ({a}, {b}, {x})"
                        )));
                    }
                }
            }
        }
        Ok(Self::from_action_unchecked(group, size, action))
    }

    pub(crate) fn from_action_unchecked(group: Arc<FiniteGroup>, size: usize, action: Vec<usize>) -> Self {
        let n = group.order();
        let mut orbit_of = vec![usize::MAX; size];
        let mut coset_of = vec![usize::MAX; size];
        let mut orbits = Vec::new();
        for start in 0..size {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let mut points: Vec<usize> = (0..n).map(|g| action[g * size + start]).collect();
            points.sort_unstable();
            points.dedup();
            let stab = |x: usize| group.subgroup_where(|g| action[g * size + x] == x);
            let class = group.class_of(stab(start));
            let rep = group.class(class).representative;
            let base = *points
                .iter()
                .find(|&&x| stab(x) == rep)
                .expect("every conjugate of a stabilizer occurs in the orbit");
            let (reps, _) = cosets(&group, group.subgroup(rep));
            let coset_to_point: Vec<usize> = reps.iter().map(|&g| action[g * size + base]).collect();
            let idx = orbits.len();
            for (c, &p) in coset_to_point.iter().enumerate() {
                orbit_of[p] = idx;
                coset_of[p] = c;
            }
            orbits.push(Orbit {
                class,
                points,
                base,
                coset_to_point,
            });
        }
        GSet {
            group,
            inner: Arc::new(Inner {
                size,
                action,
                orbits,
                orbit_of,
                coset_of,
            }),
        }
    }

    /// The initial object.
    pub fn empty(group: Arc<FiniteGroup>) -> Self {
        Self::from_action_unchecked(group, 0, Vec::new())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.inner.size
    }

    pub fn is_empty(&self) -> bool {
        self.inner.size == 0
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.inner.action[g * self.inner.size + x]
    }

    pub fn action_table(&self) -> &[usize] {
        &self.inner.action
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.inner.orbits
    }

    pub fn orbit_of(&self, x: usize) -> usize {
        self.inner.orbit_of[x]
    }

    /// Position of `x` in the coset chart of its orbit.
    pub fn coset_of(&self, x: usize) -> usize {
        self.inner.coset_of[x]
    }

    /// Index of the stabilizer subgroup of `x`.
    pub fn stabilizer(&self, x: usize) -> usize {
        self.group.subgroup_where(|g| self.act(g, x) == x)
    }

    pub fn is_fixed_by(&self, x: usize, h: &Subgroup) -> bool {
        h.members().iter().all(|&g| self.act(g, x) == x)
    }

    /// `(class, multiplicity)` pairs in ascending class order.
    pub fn orbit_tags(&self) -> Vec<(usize, usize)> {
        let mut tags: BTreeMap<usize, usize> = BTreeMap::new();
        for o in self.orbits() {
            *tags.entry(o.class).or_default() += 1;
        }
        tags.into_iter().collect()
    }

    /// Orbit classes sorted ascending, with repetition.
    pub fn class_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.orbits().iter().map(|o| o.class).collect();
        v.sort_unstable();
        v
    }

    fn same_group(&self, other: &GSet) -> Result<()> {
        if *self.group == *other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Coset set `G/H`; point 0 is `H` itself and cosets are ordered by
    /// their least element.
    pub fn orbit(group: Arc<FiniteGroup>, h: &Subgroup) -> Result<Self> {
        if !group.is_subgroup(h.members()) {
            return Err(Error::NotASubgroup);
        }
        let (reps, coset_of) = cosets(&group, h);
        let size = reps.len();
        let mut action = vec![0; group.order() * size];
        for g in group.elements() {
            for (c, &r) in reps.iter().enumerate() {
                action[g * size + c] = coset_of[group.mul(g, r)];
            }
        }
        Ok(Self::from_action_unchecked(group, size, action))
    }

    /// `G/H` for the canonical representative `H` of a class.
    pub fn orbit_of_class(group: Arc<FiniteGroup>, class: usize) -> Self {
        let h = group.class_rep(class).clone();
        Self::orbit(group, &h).expect("class representatives are subgroups")
    }

    /// Coproduct of canonical orbits in the given order.
    pub fn from_classes(group: Arc<FiniteGroup>, classes: &[usize]) -> Self {
        classes.iter().fold(GSet::empty(group.clone()), |acc, &c| {
            acc.coproduct(&GSet::orbit_of_class(group.clone(), c))
                .expect("same group")
        })
    }

    /// Canonical G-set with the given `(class, multiplicity)` tags.
    pub fn from_tags(group: Arc<FiniteGroup>, tags: &[(usize, usize)]) -> Self {
        let mut classes: Vec<usize> = tags
            .iter()
            .flat_map(|&(c, m)| std::iter::repeat_n(c, m))
            .collect();
        classes.sort_unstable();
        Self::from_classes(group, &classes)
    }

    pub fn coproduct(&self, other: &GSet) -> Result<GSet> {
        self.same_group(other)?;
        let (a, b) = (self.size(), other.size());
        let size = a + b;
        let mut action = Vec::with_capacity(self.group.order() * size);
        for g in self.group.elements() {
            action.extend((0..a).map(|x| self.act(g, x)));
            action.extend((0..b).map(|y| a + other.act(g, y)));
        }
        Ok(Self::from_action_unchecked(self.group.clone(), size, action))
    }

    /// Cartesian product with the diagonal action; `(x, y)` is point
    /// `x * |Y| + y`.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        self.same_group(other)?;
        let (a, b) = (self.size(), other.size());
        let size = a * b;
        let mut action = Vec::with_capacity(self.group.order() * size);
        for g in self.group.elements() {
            for x in 0..a {
                let gx = self.act(g, x);
                action.extend((0..b).map(|y| gx * b + other.act(g, y)));
            }
        }
        Ok(Self::from_action_unchecked(self.group.clone(), size, action))
    }

    /// Number of points fixed by every element of `h`.
    pub fn fixed_point_count(&self, h: &Subgroup) -> Result<usize> {
        if !self.group.is_subgroup(h.members()) {
            return Err(Error::NotASubgroup);
        }
        Ok((0..self.size()).filter(|&x| self.is_fixed_by(x, h)).count())
    }

    pub fn fixed_points(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.is_fixed_by(x, h)).collect()
    }

    /// The canonical form and the isomorphism `self -> canonical` as a point
    /// assignment.
    pub fn canonicalize(&self) -> (GSet, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.orbits().len()).collect();
        order.sort_by_key(|&i| self.orbits()[i].class);
        let classes: Vec<usize> = order.iter().map(|&i| self.orbits()[i].class).collect();
        let canonical = GSet::from_classes(self.group.clone(), &classes);
        let mut iso = vec![0; self.size()];
        let mut offset = 0;
        for &i in &order {
            let o = &self.orbits()[i];
            for (c, &p) in o.coset_to_point.iter().enumerate() {
                iso[p] = offset + c;
            }
            offset += o.coset_to_point.len();
        }
        (canonical, iso)
    }

    pub fn is_canonical(&self) -> bool {
        self.canonicalize().0 == *self
    }

    pub fn identity(&self) -> GMap {
        GMap::new_unchecked(self.clone(), self.clone(), (0..self.size()).collect())
    }

    /// Inclusions `self -> self ⊔ other` and `other -> self ⊔ other`.
    pub fn coproduct_inclusions(&self, other: &GSet) -> Result<(GSet, GMap, GMap)> {
        let sum = self.coproduct(other)?;
        let a = self.size();
        let left = GMap::new_unchecked(self.clone(), sum.clone(), (0..a).collect());
        let right = GMap::new_unchecked(other.clone(), sum.clone(), (0..other.size()).map(|y| a + y).collect());
        Ok((sum, left, right))
    }

    /// Codiagonal `X ⊔ X -> X`.
    pub fn fold(&self) -> GMap {
        let sum = self.coproduct(self).expect("same group");
        let a = self.size();
        GMap::new_unchecked(sum, self.clone(), (0..2 * a).map(|x| x % a.max(1)).collect())
    }

    /// Projections of `self × other`.
    pub fn product_projections(&self, other: &GSet) -> Result<(GSet, GMap, GMap)> {
        let prod = self.product(other)?;
        let b = other.size();
        let p1 = GMap::new_unchecked(prod.clone(), self.clone(), (0..prod.size()).map(|p| p / b).collect());
        let p2 = GMap::new_unchecked(prod.clone(), other.clone(), (0..prod.size()).map(|p| p % b).collect());
        Ok((prod, p1, p2))
    }
}

/// An equivariant map between G-sets.
#[derive(Clone, PartialEq, Eq)]
pub struct GMap {
    source: GSet,
    target: GSet,
    assignment: Vec<usize>,
}

impl fmt::Debug for GMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GMap{:?}", self.assignment)
    }
}

impl GMap {
    pub fn new(source: GSet, target: GSet, assignment: Vec<usize>) -> Result<Self> {
        source.same_group(&target)?;
        if assignment.len() != source.size() || assignment.iter().any(|&y| y >= target.size()) {
            return Err(Error::InvalidGSet("assignment does not fit source and target".into()));
        }
        for g in source.group.elements() {
            for x in 0..source.size() {
                if assignment[source.act(g, x)] != target.act(g, assignment[x]) {
                    return Err(Error::NotEquivariant { element: g, point: x });
                }
            }
        }
        Ok(Self::new_unchecked(source, target, assignment))
    }

    pub(crate) fn new_unchecked(source: GSet, target: GSet, assignment: Vec<usize>) -> Self {
        GMap {
            source,
            target,
            assignment,
        }
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &GMap) -> Result<GMap> {
        if self.target != then.source {
            return Err(Error::ObjectMismatch);
        }
        Ok(GMap::new_unchecked(
            self.source.clone(),
            then.target.clone(),
            self.assignment.iter().map(|&y| then.apply(y)).collect(),
        ))
    }

    pub fn is_bijective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &y in &self.assignment {
            if hit[y] {
                return false;
            }
            hit[y] = true;
        }
        self.source.size() == self.target.size()
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<GMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.target.size()];
        for (x, &y) in self.assignment.iter().enumerate() {
            inv[y] = x;
        }
        Some(GMap::new_unchecked(self.target.clone(), self.source.clone(), inv))
    }

    /// Every point has the same stabilizer as its image: the map is a
    /// coproduct of orbit isomorphisms followed by codiagonals.
    pub fn is_orbitwise_iso(&self) -> bool {
        (0..self.source.size()).all(|x| self.source.stabilizer(x) == self.target.stabilizer(self.apply(x)))
    }

    /// `self ⊔ other : X ⊔ X' -> Y ⊔ Y'`.
    pub fn coproduct(&self, other: &GMap) -> Result<GMap> {
        let source = self.source.coproduct(&other.source)?;
        let target = self.target.coproduct(&other.target)?;
        let off = self.target.size();
        let mut assignment = self.assignment.clone();
        assignment.extend(other.assignment.iter().map(|&y| y + off));
        Ok(GMap::new_unchecked(source, target, assignment))
    }
}

pub fn orbit_g_set(group: Arc<FiniteGroup>, h: &Subgroup) -> Result<GSet> {
    GSet::orbit(group, h)
}

pub fn coproduct(x: &GSet, y: &GSet) -> Result<GSet> {
    x.coproduct(y)
}

pub fn product(x: &GSet, y: &GSet) -> Result<GSet> {
    x.product(y)
}

/// Fiber product `{(x, y) : f(x) = k(y)}` with its projections; pairs are
/// listed in lexicographic order.
pub fn pullback(f: &GMap, k: &GMap) -> Result<(GSet, GMap, GMap)> {
    f.source.same_group(&k.source)?;
    if f.target != k.target {
        return Err(Error::MismatchedTarget);
    }
    let (x, y) = (&f.source, &k.source);
    let mut pairs = Vec::new();
    let mut index = vec![usize::MAX; x.size() * y.size()];
    for a in 0..x.size() {
        for b in 0..y.size() {
            if f.apply(a) == k.apply(b) {
                index[a * y.size() + b] = pairs.len();
                pairs.push((a, b));
            }
        }
    }
    let group = x.group.clone();
    let size = pairs.len();
    let mut action = Vec::with_capacity(group.order() * size);
    for g in group.elements() {
        action.extend(pairs.iter().map(|&(a, b)| index[x.act(g, a) * y.size() + y.act(g, b)]));
    }
    let p = GSet::from_action_unchecked(group, size, action);
    let px = GMap::new_unchecked(p.clone(), x.clone(), pairs.iter().map(|&(a, _)| a).collect());
    let py = GMap::new_unchecked(p.clone(), y.clone(), pairs.iter().map(|&(_, b)| b).collect());
    Ok((p, px, py))
}

/// All equivariant maps `x -> y`, sorted by assignment.
///
/// A map is fixed by the images of the orbit base points, and the base point
/// of an orbit with stabilizer `H` may go to any `H`-fixed point.
pub fn equivariant_maps(x: &GSet, y: &GSet) -> Result<Vec<GMap>> {
    x.same_group(y)?;
    let group = x.group();
    let choices: Vec<Vec<usize>> = x
        .orbits()
        .iter()
        .map(|o| y.fixed_points(group.class_rep(o.class)))
        .collect();
    let mut out = Vec::new();
    if choices.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    let mut pick = vec![0usize; choices.len()];
    loop {
        let mut assignment = vec![0; x.size()];
        for (o, orbit) in x.orbits().iter().enumerate() {
            let image = choices[o][pick[o]];
            let (reps, _) = cosets(group, group.class_rep(orbit.class));
            for (c, &p) in orbit.coset_to_point.iter().enumerate() {
                assignment[p] = y.act(reps[c], image);
            }
        }
        out.push(GMap::new_unchecked(x.clone(), y.clone(), assignment));
        let mut i = choices.len();
        loop {
            if i == 0 {
                out.sort_by(|a, b| a.assignment.cmp(&b.assignment));
                return Ok(out);
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

pub fn fixed_point_count(x: &GSet, h: &Subgroup) -> Result<usize> {
    x.fixed_point_count(h)
}

/// Marks `|(G/H_i)^{H_j}|`, classes in canonical order.
pub fn table_of_marks(group: &Arc<FiniteGroup>) -> Vec<Vec<usize>> {
    let n = group.num_classes();
    (0..n)
        .map(|i| {
            let orbit = GSet::orbit_of_class(group.clone(), i);
            (0..n)
                .map(|j| orbit.fixed_points(group.class_rep(j)).len())
                .collect()
        })
        .collect()
}

/// An equivariant bijection `x -> y` if one exists. Isomorphism holds
/// exactly when the orbit class multisets agree.
pub fn is_isomorphic(x: &GSet, y: &GSet) -> Result<Option<GMap>> {
    x.same_group(y)?;
    if x.class_multiset() != y.class_multiset() {
        return Ok(None);
    }
    let (_, cx) = x.canonicalize();
    let (_, cy) = y.canonicalize();
    let mut cy_inv = vec![0; y.size()];
    for (p, &c) in cy.iter().enumerate() {
        cy_inv[c] = p;
    }
    let assignment = cx.iter().map(|&c| cy_inv[c]).collect();
    Ok(Some(GMap::new_unchecked(x.clone(), y.clone(), assignment)))
}

/// The orbit category: canonical orbits `G/H_i` and all equivariant maps
/// between them. A map `G/H_i -> G/H_j` is recorded by the image of the base
/// coset, and maps are indexed in ascending order of that image.
pub struct OrbitCategory {
    group: Arc<FiniteGroup>,
    orbits: Vec<GSet>,
    coset_reps: Vec<Vec<usize>>,
    maps: Vec<Vec<Vec<usize>>>,
    map_at: Vec<Vec<Vec<Option<usize>>>>,
}

impl fmt::Debug for OrbitCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrbitCategory({} objects)", self.orbits.len())
    }
}

impl OrbitCategory {
    pub fn new(group: Arc<FiniteGroup>) -> Arc<Self> {
        let n = group.num_classes();
        let orbits: Vec<GSet> = (0..n).map(|c| GSet::orbit_of_class(group.clone(), c)).collect();
        let coset_reps: Vec<Vec<usize>> = (0..n).map(|c| cosets(&group, group.class_rep(c)).0).collect();
        let mut maps = vec![vec![Vec::new(); n]; n];
        let mut map_at = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let fixed = orbits[j].fixed_points(group.class_rep(i));
                let mut at = vec![None; orbits[j].size()];
                for (m, &p) in fixed.iter().enumerate() {
                    at[p] = Some(m);
                }
                maps[i][j] = fixed;
                map_at[i][j] = at;
            }
        }
        Arc::new(OrbitCategory {
            group,
            orbits,
            coset_reps,
            maps,
            map_at,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn num_objects(&self) -> usize {
        self.orbits.len()
    }

    pub fn object(&self, class: usize) -> &GSet {
        &self.orbits[class]
    }

    /// Least element of each coset of `G/H_i`.
    pub fn coset_reps(&self, class: usize) -> &[usize] {
        &self.coset_reps[class]
    }

    pub fn num_maps(&self, source: usize, target: usize) -> usize {
        self.maps[source][target].len()
    }

    /// Image of the base coset under map `m : G/H_source -> G/H_target`.
    pub fn base_image(&self, source: usize, target: usize, m: usize) -> usize {
        self.maps[source][target][m]
    }

    /// Index of the map sending the base coset to `point`, if equivariant.
    pub fn map_index(&self, source: usize, target: usize, point: usize) -> Option<usize> {
        self.map_at[source][target][point]
    }

    pub fn identity_map(&self, class: usize) -> usize {
        self.map_index(class, class, 0).expect("identity map")
    }

    /// The map as a [`GMap`].
    pub fn gmap(&self, source: usize, target: usize, m: usize) -> GMap {
        let image = self.base_image(source, target, m);
        let t = &self.orbits[target];
        let assignment = self.coset_reps[source].iter().map(|&g| t.act(g, image)).collect();
        GMap::new_unchecked(self.orbits[source].clone(), t.clone(), assignment)
    }

    /// Index of `g ∘ f` for `f : i -> j` and `g : j -> k`.
    pub fn compose(&self, i: usize, j: usize, k: usize, f: usize, g: usize) -> usize {
        let p = self.base_image(i, j, f);
        let c = self.coset_reps[j][p];
        let image = self.orbits[k].act(c, self.base_image(j, k, g));
        self.map_index(i, k, image).expect("composite of equivariant maps")
    }

    /// Whether map `m : i -> j` is an isomorphism.
    pub fn is_iso(&self, i: usize, j: usize, _m: usize) -> bool {
        i == j
    }

    /// Locates a point of a G-set in the orbit category: the class of its
    /// orbit and its coset position in the chart.
    pub fn chart(x: &GSet, point: usize) -> (usize, usize, usize) {
        let o = x.orbit_of(point);
        (o, x.orbits()[o].class, x.coset_of(point))
    }

    /// Orbit-category map `G/H_s -> G/H_t` given by restricting an
    /// equivariant map to the orbit containing `point` of `x`, where the
    /// orbit of `point` has class `s` and is read through its chart.
    pub fn map_of_orbit(&self, x: &GSet, orbit: usize, f: &GMap) -> (usize, usize, usize) {
        let o = &x.orbits()[orbit];
        let (_, t, coset) = Self::chart(f.target(), f.apply(o.base));
        let m = self.map_index(o.class, t, coset).expect("equivariant image of a base point");
        (o.class, t, m)
    }

    /// Orbit decomposition of the pullback of `f : i -> k` and `g : j -> k`:
    /// for each orbit, its class `s` and the maps `s -> i`, `s -> j`.
    pub fn pullback_decomposition(&self, i: usize, j: usize, k: usize, f: usize, g: usize) -> Vec<(usize, usize, usize)> {
        let fm = self.gmap(i, k, f);
        let gm = self.gmap(j, k, g);
        let (p, pi, pj) = pullback(&fm, &gm).expect("common target");
        (0..p.orbits().len())
            .map(|o| {
                let (s, _, a) = self.map_of_orbit(&p, o, &pi);
                let (_, _, b) = self.map_of_orbit(&p, o, &pj);
                (s, a, b)
            })
            .collect()
    }
}
