//! Transfer systems, indexing systems and norm categories.
//!
//! A transfer system is stored as a set of conjugation orbits of proper
//! pairs `K < H`; reflexive pairs are implicit. The closure rules are
//! restriction, `(K, H)` and `L ≤ H` give `(K ∩ L, L)`, and transitivity.
//! Conjugation closure is built into the orbit encoding.

use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::gsets::{pullback, GMap, OrbitCategory};
use crate::par::Exec;

/// Conjugation orbits of proper subgroup pairs with the closure rules
/// between them.
pub struct PairSpace {
    group: Arc<FiniteGroup>,
    /// `(K, H)` subgroup indices of the orbit representative.
    reps: Vec<(usize, usize)>,
    /// `(k_class, h_class, variant)` label of each orbit.
    labels: Vec<(usize, usize, usize)>,
    /// Dense `orbit_of[k * n + h]` for proper pairs.
    orbit_of: Vec<Option<usize>>,
    /// Restriction rules `p ⇒ q`.
    restrict: Vec<(usize, usize)>,
    /// Transitivity rules `p ∧ q ⇒ r`.
    compose: Vec<(usize, usize, usize)>,
}

impl fmt::Debug for PairSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairSpace({} pair orbits)", self.reps.len())
    }
}

impl PairSpace {
    pub fn new(group: Arc<FiniteGroup>) -> Arc<Self> {
        let subs = group.subgroups();
        let n = subs.len();
        let conj: Vec<Vec<usize>> = (0..n)
            .map(|s| group.elements().map(|x| group.conjugate_index(s, x)).collect())
            .collect();
        let mut orbit_of: Vec<Option<usize>> = vec![None; n * n];
        let mut reps = Vec::new();
        let mut labels = Vec::new();
        for hc in 0..group.num_classes() {
            let h = group.class(hc).representative;
            // subgroups of H up to conjugation by N_G(H); representatives
            // are the least index in each orbit, so a plain scan meets them
            // in ascending order
            let mut per_class: Vec<usize> = vec![0; group.num_classes()];
            for k in 0..n {
                if k == h || !subs[k].is_subset_of(&subs[h]) || orbit_of[k * n + h].is_some() {
                    continue;
                }
                let p = reps.len();
                reps.push((k, h));
                let kc = group.class_of(k);
                labels.push((kc, hc, per_class[kc]));
                per_class[kc] += 1;
                for x in group.elements() {
                    orbit_of[conj[k][x] * n + conj[h][x]] = Some(p);
                }
            }
        }
        let mut restrict = Vec::new();
        let mut compose = Vec::new();
        for (p, &(k, h)) in reps.iter().enumerate() {
            for l in 0..n {
                if subs[l].is_subset_of(&subs[h]) {
                    let a = group.intersection_index(k, l);
                    if a != l {
                        restrict.push((p, orbit_of[a * n + l].expect("proper pair")));
                    }
                }
                if l != h && subs[h].is_subset_of(&subs[l]) {
                    let q = orbit_of[h * n + l].expect("proper pair");
                    let r = orbit_of[k * n + l].expect("proper pair");
                    compose.push((p, q, r));
                }
            }
        }
        restrict.sort_unstable();
        restrict.dedup();
        restrict.retain(|&(p, q)| p != q);
        compose.sort_unstable();
        compose.dedup();
        Arc::new(PairSpace {
            group,
            reps,
            labels,
            orbit_of,
            restrict,
            compose,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, p: usize) -> (usize, usize) {
        self.reps[p]
    }

    pub fn label(&self, p: usize) -> (usize, usize, usize) {
        self.labels[p]
    }

    /// Whether the class pair `(k_class, h_class)` has more than one orbit.
    pub fn is_ambiguous(&self, k_class: usize, h_class: usize) -> bool {
        self.labels.iter().filter(|l| l.0 == k_class && l.1 == h_class).count() > 1
    }

    pub fn find_label(&self, k_class: usize, h_class: usize, variant: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == (k_class, h_class, variant))
    }

    /// Orbit of the proper pair `(k, h)` of subgroup indices.
    pub fn orbit_of(&self, k: usize, h: usize) -> Option<usize> {
        self.orbit_of[k * self.group.subgroups().len() + h]
    }

    /// Restriction rules `p ⇒ q` and transitivity rules `p ∧ q ⇒ r`.
    pub fn rules(&self) -> (&[(usize, usize)], &[(usize, usize, usize)]) {
        (&self.restrict, &self.compose)
    }

    fn is_closed(&self, member: &dyn Fn(usize) -> bool) -> bool {
        self.restrict.iter().all(|&(p, q)| !member(p) || member(q))
            && self.compose.iter().all(|&(p, q, r)| !(member(p) && member(q)) || member(r))
    }
}

/// A transfer system, as a membership vector over pair orbits.
#[derive(Clone)]
pub struct TransferSystem {
    space: Arc<PairSpace>,
    member: Vec<bool>,
}

impl PartialEq for TransferSystem {
    fn eq(&self, other: &Self) -> bool {
        *self.space.group == *other.space.group && self.member == other.member
    }
}

impl Eq for TransferSystem {}

impl fmt::Debug for TransferSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TransferSystem{:?}", self.class_pairs())
    }
}

impl TransferSystem {
    /// The closure-checked system with the given member orbits.
    pub fn from_orbits(space: Arc<PairSpace>, orbits: &[usize]) -> Result<Self> {
        let t = Self::from_orbits_unchecked(space, orbits)?;
        if let Some(why) = t.violation() {
            return Err(Error::InvalidRelation(why));
        }
        Ok(t)
    }

    /// A relation that need not satisfy the closure rules.
    pub fn from_orbits_unchecked(space: Arc<PairSpace>, orbits: &[usize]) -> Result<Self> {
        let mut member = vec![false; space.len()];
        for &p in orbits {
            if p >= member.len() {
                return Err(Error::InvalidRelation(format!("no pair orbit {p}")));
            }
            member[p] = true;
        }
        Ok(TransferSystem { space, member })
    }

    /// Builds from `(k_class, h_class, variant)` labels.
    pub fn from_class_pairs(space: Arc<PairSpace>, pairs: &[(usize, usize, usize)], checked: bool) -> Result<Self> {
        let mut orbits = Vec::new();
        for &(k, h, v) in pairs {
            if k == h && v == 0 {
                continue;
            }
            let p = space
                .find_label(k, h, v)
                .ok_or_else(|| Error::InvalidRelation(format!("({k}, {h}) is not a subconjugate pair")))?;
            orbits.push(p);
        }
        if checked {
            Self::from_orbits(space, &orbits)
        } else {
            Self::from_orbits_unchecked(space, &orbits)
        }
    }

    pub fn minimal(space: Arc<PairSpace>) -> Self {
        let member = vec![false; space.len()];
        TransferSystem { space, member }
    }

    pub fn maximal(space: Arc<PairSpace>) -> Self {
        let member = vec![true; space.len()];
        TransferSystem { space, member }
    }

    /// Smallest transfer system containing the given orbits.
    pub fn generated_by(space: Arc<PairSpace>, orbits: &[usize]) -> Result<Self> {
        let mut t = Self::from_orbits_unchecked(space, orbits)?;
        t.close();
        Ok(t)
    }

    fn close(&mut self) {
        let space = self.space.clone();
        loop {
            let mut changed = false;
            for &(p, q) in &space.restrict {
                if self.member[p] && !self.member[q] {
                    self.member[q] = true;
                    changed = true;
                }
            }
            for &(p, q, r) in &space.compose {
                if self.member[p] && self.member[q] && !self.member[r] {
                    self.member[r] = true;
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    pub fn space(&self) -> &Arc<PairSpace> {
        &self.space
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.space.group
    }

    /// Member pair orbits, ascending.
    pub fn orbits(&self) -> Vec<usize> {
        (0..self.member.len()).filter(|&p| self.member[p]).collect()
    }

    pub fn len(&self) -> usize {
        self.member.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn class_pairs(&self) -> Vec<(usize, usize, usize)> {
        self.orbits().into_iter().map(|p| self.space.labels[p]).collect()
    }

    /// Whether `k ≤ h` (subgroup indices) is in the relation.
    pub fn contains_pair(&self, k: usize, h: usize) -> bool {
        k == h || self.space.orbit_of(k, h).is_some_and(|p| self.member[p])
    }

    /// Whether the stabilizer pair of every point is in the relation.
    pub fn contains_map(&self, f: &GMap) -> bool {
        let x = f.source();
        let y = f.target();
        x.orbits().iter().all(|o| {
            let k = x.stabilizer(o.base);
            let h = y.stabilizer(f.apply(o.base));
            self.contains_pair(k, h)
        })
    }

    /// A violated closure rule, if any.
    pub fn violation(&self) -> Option<String> {
        let s = &self.space;
        for &(p, q) in &s.restrict {
            if self.member[p] && !self.member[q] {
                return Some(format!("restriction of {:?} requires {:?}", s.labels[p], s.labels[q]));
            }
        }
        for &(p, q, r) in &s.compose {
            if self.member[p] && self.member[q] && !self.member[r] {
                return Some(format!(
                    "{:?} and {:?} compose to {:?}",
                    s.labels[p], s.labels[q], s.labels[r]
                ));
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.space.is_closed(&|p| self.member[p])
    }

    pub fn is_subsystem_of(&self, other: &TransferSystem) -> bool {
        self.member.iter().zip(&other.member).all(|(&a, &b)| !a || b)
    }

    /// Hasse diagram of the relation on subgroup classes: one edge per
    /// member orbit that is not a composite of two others.
    pub fn to_dot(&self) -> String {
        let g = self.group();
        let s = &self.space;
        let mut out = String::from("digraph transfer_system {\n");
        for c in 0..g.num_classes() {
            let _ = writeln!(out, "  \"H_{c}\" [label=\"H_{c} (order {})\"];", g.class_rep(c).order());
        }
        for p in self.orbits() {
            let composite = s.compose.iter().any(|&(a, b, r)| r == p && self.member[a] && self.member[b]);
            if composite {
                continue;
            }
            let (k, h, v) = s.labels[p];
            let tag = if s.is_ambiguous(k, h) { format!(" [label=\"{v}\"]") } else { String::new() };
            let _ = writeln!(out, "  \"H_{k}\" -> \"H_{h}\"{tag};");
        }
        out.push_str("}\n");
        out
    }
}

fn same_space(a: &TransferSystem, b: &TransferSystem) -> Result<()> {
    if *a.space.group == *b.space.group {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

pub fn meet(a: &TransferSystem, b: &TransferSystem) -> Result<TransferSystem> {
    same_space(a, b)?;
    let member = a.member.iter().zip(&b.member).map(|(&x, &y)| x && y).collect();
    Ok(TransferSystem {
        space: a.space.clone(),
        member,
    })
}

pub fn join(a: &TransferSystem, b: &TransferSystem) -> Result<TransferSystem> {
    same_space(a, b)?;
    let member = a.member.iter().zip(&b.member).map(|(&x, &y)| x || y).collect();
    let mut t = TransferSystem {
        space: a.space.clone(),
        member,
    };
    t.close();
    Ok(t)
}

pub fn lattice_ops(a: &TransferSystem, b: &TransferSystem) -> Result<(TransferSystem, TransferSystem)> {
    Ok((meet(a, b)?, join(a, b)?))
}

/// Enumeration strategy, used to cross-check the two algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Include/exclude search over every subset of pair orbits, rejecting a
    /// branch as soon as a rule with all its orbits decided is violated.
    BruteForce,
    /// Closure search: each system is reached once, as the closure of a
    /// smaller system and one new orbit, under a canonicity test.
    Closure,
}

fn check_enumeration_cap(g: &FiniteGroup, limits: Limits) -> Result<()> {
    if g.order() > limits.max_enumeration_order {
        return Err(Error::OrderCapExceeded {
            order: g.order(),
            cap: limits.max_enumeration_order,
        });
    }
    Ok(())
}

/// Member masks of all transfer systems, sorted by (size, mask).
pub fn enumerate_masks(space: &PairSpace, algorithm: Algorithm, exec: Exec) -> Result<Vec<u128>> {
    if space.len() > 128 {
        return Err(Error::MalformedSpec(format!(
            "{} pair orbits exceed the enumeration width",
            space.len()
        )));
    }
    let mut out = match algorithm {
        Algorithm::BruteForce => brute_force(space, exec),
        Algorithm::Closure => closure_search(space, exec),
    };
    out.sort_unstable_by_key(|&m| (m.count_ones(), m));
    Ok(out)
}

fn brute_force(space: &PairSpace, exec: Exec) -> Vec<u128> {
    let n = space.len();
    // every rule as (premises, conclusion), checked once the last orbit it
    // mentions is decided
    let mut rules: Vec<Vec<(u128, u128)>> = vec![Vec::new(); n];
    for &(p, q) in &space.restrict {
        rules[p.max(q)].push((1 << p, 1 << q));
    }
    for &(p, q, r) in &space.compose {
        rules[p.max(q).max(r)].push(((1 << p) | (1 << q), 1 << r));
    }
    let ok = |m: u128, i: usize| rules[i].iter().all(|&(pre, con)| m & pre != pre || m & con != 0);
    fn dfs(i: usize, m: u128, n: usize, ok: &impl Fn(u128, usize) -> bool, out: &mut Vec<u128>) {
        if i == n {
            out.push(m);
            return;
        }
        for next in [m, m | 1 << i] {
            if ok(next, i) {
                dfs(i + 1, next, n, ok, out);
            }
        }
    }
    // fix the first few decisions to get independent subtrees
    let depth = n.min(8);
    let mut prefixes = vec![0u128];
    for i in 0..depth {
        prefixes = prefixes
            .into_iter()
            .flat_map(|m| [m, m | 1 << i])
            .filter(|&m| ok(m, i))
            .collect();
    }
    exec.map(prefixes, |m| {
        let mut out = Vec::new();
        dfs(depth, m, n, &ok, &mut out);
        out
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Closure rules indexed by premise, for incremental closure.
struct Implications {
    /// One-step restriction consequences of each orbit.
    direct: Vec<u128>,
    /// `(partner, conclusion)` for each transitivity rule with this premise.
    paired: Vec<Vec<(usize, usize)>>,
}

impl Implications {
    fn new(space: &PairSpace) -> Self {
        let n = space.len();
        let mut direct = vec![0u128; n];
        for &(p, q) in &space.restrict {
            direct[p] |= 1 << q;
        }
        let mut paired = vec![Vec::new(); n];
        for &(p, q, r) in &space.compose {
            paired[p].push((q, r));
            paired[q].push((p, r));
        }
        Implications { direct, paired }
    }

    /// Closure of `s ∪ {i}` for closed `s`, or `None` as soon as it gains an
    /// orbit below `i`.
    fn extend(&self, s: u128, i: usize, stack: &mut Vec<usize>) -> Option<u128> {
        let below = (1u128 << i) - 1;
        let mut t = s | 1 << i;
        stack.clear();
        stack.push(i);
        while let Some(x) = stack.pop() {
            let mut add = self.direct[x] & !t;
            if add & below != 0 {
                return None;
            }
            t |= add;
            while add != 0 {
                stack.push(add.trailing_zeros() as usize);
                add &= add - 1;
            }
            for &(q, r) in &self.paired[x] {
                if t >> q & 1 == 1 && t >> r & 1 == 0 {
                    if r < i {
                        return None;
                    }
                    t |= 1 << r;
                    stack.push(r);
                }
            }
        }
        Some(t)
    }
}

fn closure_search(space: &PairSpace, exec: Exec) -> Vec<u128> {
    let n = space.len();
    let imp = Implications::new(space);
    // every closed set is reached once: from the closure of its members
    // below its largest generator, by adding that generator
    fn descend(imp: &Implications, n: usize, s: u128, from: usize, stack: &mut Vec<usize>, out: &mut Vec<u128>) {
        for i in from..n {
            if s >> i & 1 == 1 {
                continue;
            }
            if let Some(t) = imp.extend(s, i, stack) {
                out.push(t);
                descend(imp, n, t, i + 1, stack, out);
            }
        }
    }
    let mut out = vec![0u128];
    let rest = exec.map_range(n, |i| {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        if let Some(t) = imp.extend(0, i, &mut stack) {
            out.push(t);
            descend(&imp, n, t, i + 1, &mut stack, &mut out);
        }
        out
    });
    out.extend(rest.into_iter().flatten());
    out
}

/// All transfer systems of `g`, in canonical order (by size, then member
/// orbits).
pub fn enumerate_transfer_systems(g: &Arc<FiniteGroup>) -> Result<Vec<TransferSystem>> {
    enumerate_with(g, Algorithm::Closure, Limits::from_env(), Exec::default())
}

pub fn enumerate_with(g: &Arc<FiniteGroup>, algorithm: Algorithm, limits: Limits, exec: Exec) -> Result<Vec<TransferSystem>> {
    check_enumeration_cap(g, limits)?;
    let space = PairSpace::new(g.clone());
    let masks = enumerate_masks(&space, algorithm, exec)?;
    Ok(masks
        .into_iter()
        .map(|m| TransferSystem {
            space: space.clone(),
            member: (0..space.len()).map(|p| m >> p & 1 == 1).collect(),
        })
        .collect())
}

pub fn count_transfer_systems(g: &Arc<FiniteGroup>, algorithm: Algorithm, limits: Limits, exec: Exec) -> Result<usize> {
    check_enumeration_cap(g, limits)?;
    let space = PairSpace::new(g.clone());
    Ok(enumerate_masks(&space, algorithm, exec)?.len())
}

/// A class of equivariant maps, given by a membership predicate.
#[derive(Clone)]
pub struct IndexingSystem {
    group: Arc<FiniteGroup>,
    membership: Membership,
}

#[derive(Clone)]
enum Membership {
    Transfer(Arc<TransferSystem>),
    Predicate(String, Arc<dyn Fn(&GMap) -> bool + Send + Sync>),
}

impl fmt::Debug for IndexingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.membership {
            Membership::Transfer(t) => write!(f, "IndexingSystem({t:?})"),
            Membership::Predicate(name, _) => write!(f, "IndexingSystem({name})"),
        }
    }
}

impl IndexingSystem {
    pub fn from_predicate(
        group: Arc<FiniteGroup>,
        name: impl Into<String>,
        member: impl Fn(&GMap) -> bool + Send + Sync + 'static,
    ) -> Self {
        IndexingSystem {
            group,
            membership: Membership::Predicate(name.into(), Arc::new(member)),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn contains(&self, f: &GMap) -> bool {
        match &self.membership {
            Membership::Transfer(t) => t.contains_map(f),
            Membership::Predicate(_, p) => p(f),
        }
    }

    /// The underlying relation, when the system was built from one.
    pub fn transfer_system(&self) -> Option<&TransferSystem> {
        match &self.membership {
            Membership::Transfer(t) => Some(t),
            Membership::Predicate(..) => None,
        }
    }
}

/// Maps whose point stabilizer pairs all lie in `t`. The relation is not
/// re-checked, so an invalid relation gives a class that fails
/// [`verify_indexing_system`].
pub fn transfer_to_indexing(t: &TransferSystem) -> IndexingSystem {
    IndexingSystem {
        group: t.group().clone(),
        membership: Membership::Transfer(Arc::new(t.clone())),
    }
}

/// Reads the relation off the orbit maps `G/K -> G/H`, `eK ↦ eH`.
pub fn indexing_to_transfer(i: &IndexingSystem) -> Result<TransferSystem> {
    let space = PairSpace::new(i.group.clone());
    let oc = OrbitCategory::new(i.group.clone());
    let g = &i.group;
    let mut orbits = Vec::new();
    for p in 0..space.len() {
        let (k, h) = space.rep(p);
        let (kc, hc) = (g.class_of(k), g.class_of(h));
        // k and h are canonical for the pair; move K to its class
        // representative and read off the map to G/H
        let x = g
            .elements()
            .find(|&x| g.conjugate_index(k, x) == g.class(kc).representative)
            .expect("conjugate to representative");
        debug_assert_eq!(h, g.class(hc).representative);
        // x⁻¹ K x = K_rep, so eK_rep ↦ x⁻¹ H is equivariant
        let target = oc.object(hc);
        let point = target.act(g.inv(x), 0);
        let m = oc.map_index(kc, hc, point).expect("K_rep fixes x⁻¹H");
        if i.contains(&oc.gmap(kc, hc, m)) {
            orbits.push(p);
        }
    }
    TransferSystem::from_orbits(space, &orbits)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IndexingReport {
    pub checks: usize,
    pub failures: Vec<AxiomViolation>,
}

impl IndexingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the indexing system axioms exhaustively over orbit maps: orbit
/// isomorphisms are members, members compose, pullbacks of members along
/// any orbit map are members, folds are members, and a coproduct of two
/// orbit maps is a member exactly when both summands are.
pub fn verify_indexing_system(i: &IndexingSystem) -> IndexingReport {
    let oc = OrbitCategory::new(i.group.clone());
    let n = oc.num_objects();
    let mut report = IndexingReport::default();
    let fail = |report: &mut IndexingReport, axiom: &'static str, witness: String| {
        report.failures.push(AxiomViolation { axiom, witness });
    };
    let mut member = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            member[a][b] = (0..oc.num_maps(a, b)).map(|m| i.contains(&oc.gmap(a, b, m))).collect();
        }
    }
    for a in 0..n {
        for m in 0..oc.num_maps(a, a) {
            report.checks += 1;
            if !member[a][a][m] {
                fail(&mut report, "isomorphisms", format!("automorphism {m} of G/H{a}"));
            }
        }
        report.checks += 1;
        let fold = oc.object(a).fold();
        if !i.contains(&fold) {
            fail(&mut report, "coproducts", format!("fold of G/H{a}"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for f in 0..oc.num_maps(a, b) {
                for c in 0..n {
                    for h in 0..oc.num_maps(b, c) {
                        if member[a][b][f] && member[b][c][h] {
                            report.checks += 1;
                            let hf = oc.compose(a, b, c, f, h);
                            if !member[a][c][hf] {
                                fail(
                                    &mut report,
                                    "composition",
                                    format!("G/H{a} -{f}-> G/H{b} -{h}-> G/H{c}"),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    // pull back a member f : G/H_a -> G/H_c along any k : G/H_b -> G/H_c;
    // the projection to G/H_b must be a member
    for c in 0..n {
        for a in 0..n {
            for f in 0..oc.num_maps(a, c) {
                if !member[a][c][f] {
                    continue;
                }
                let fm = oc.gmap(a, c, f);
                for b in 0..n {
                    for k in 0..oc.num_maps(b, c) {
                        report.checks += 1;
                        let (_, _, pk) = pullback(&fm, &oc.gmap(b, c, k)).expect("common target");
                        if !i.contains(&pk) {
                            fail(
                                &mut report,
                                "pullback",
                                format!("member G/H{a} -{f}-> G/H{c} along G/H{b} -{k}-> G/H{c}"),
                            );
                        }
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for f in 0..oc.num_maps(a, b) {
                for c in 0..n {
                    for h in 0..oc.num_maps(c, b) {
                        report.checks += 1;
                        let sum = oc.gmap(a, b, f).coproduct(&oc.gmap(c, b, h)).expect("same group");
                        let glued = sum.then(&oc.object(b).fold()).expect("fold target");
                        let expected = member[a][b][f] && member[c][b][h];
                        if i.contains(&glued) != expected {
                            fail(
                                &mut report,
                                "coproducts",
                                format!("G/H{a} -{f}-> G/H{b} and G/H{c} -{h}-> G/H{b}"),
                            );
                        }
                    }
                }
            }
        }
    }
    report
}

/// Transitive G-sets with only the admissible maps between them.
pub struct NormCategory {
    orbit_category: Arc<OrbitCategory>,
    /// Orbit-category indices of the admissible maps.
    homs: Vec<Vec<Vec<usize>>>,
}

impl fmt::Debug for NormCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormCategory({} objects, {} maps)", self.num_objects(), self.total_maps())
    }
}

impl NormCategory {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.orbit_category.group()
    }

    pub fn orbit_category(&self) -> &Arc<OrbitCategory> {
        &self.orbit_category
    }

    pub fn num_objects(&self) -> usize {
        self.homs.len()
    }

    /// Admissible maps `G/H_source -> G/H_target` as orbit-category indices.
    pub fn hom(&self, source: usize, target: usize) -> &[usize] {
        &self.homs[source][target]
    }

    pub fn hom_count(&self, source: usize, target: usize) -> usize {
        self.homs[source][target].len()
    }

    pub fn contains(&self, source: usize, target: usize, m: usize) -> bool {
        self.homs[source][target].binary_search(&m).is_ok()
    }

    pub fn total_maps(&self) -> usize {
        self.homs.iter().flatten().map(Vec::len).sum()
    }

    /// Every admissible map as `(source, target, orbit-category index)`.
    pub fn morphisms(&self) -> Vec<(usize, usize, usize)> {
        let n = self.num_objects();
        let mut out = Vec::new();
        for s in 0..n {
            for t in 0..n {
                out.extend(self.homs[s][t].iter().map(|&m| (s, t, m)));
            }
        }
        out
    }

    /// `g ∘ f` for `f : i -> j` and `g : j -> k`.
    pub fn compose(&self, i: usize, j: usize, k: usize, f: usize, g: usize) -> usize {
        self.orbit_category.compose(i, j, k, f, g)
    }

    pub fn is_subcategory_of(&self, other: &NormCategory) -> bool {
        self.morphisms().into_iter().all(|(s, t, m)| other.contains(s, t, m))
    }

    /// Composition is closed; also exercised by the tests for associativity.
    pub fn is_closed(&self) -> bool {
        let n = self.num_objects();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    self.homs[i][j].iter().all(|&f| {
                        self.homs[j][k]
                            .iter()
                            .all(|&g| self.contains(i, k, self.compose(i, j, k, f, g)))
                    })
                })
            })
        })
    }

    pub fn to_dot(&self) -> String {
        let g = self.group();
        let mut out = String::from("digraph norm_category {\n");
        for c in 0..self.num_objects() {
            let _ = writeln!(out, "  \"G/H_{c}\" [label=\"G/H_{c} (|H|={})\"];", g.class_rep(c).order());
        }
        for (s, t, m) in self.morphisms() {
            let _ = writeln!(out, "  \"G/H_{s}\" -> \"G/H_{t}\" [label=\"{m}\"];");
        }
        out.push_str("}\n");
        out
    }
}

pub fn build_norm_category(i: &IndexingSystem) -> Result<NormCategory> {
    let report = verify_indexing_system(i);
    if let Some(v) = report.failures.first() {
        return Err(Error::InvalidIndexingSystem(format!("{}: {}", v.axiom, v.witness)));
    }
    Ok(norm_category_unchecked(i))
}

/// Norm category without the axiom check.
pub fn norm_category_unchecked(i: &IndexingSystem) -> NormCategory {
    let oc = OrbitCategory::new(i.group.clone());
    let n = oc.num_objects();
    let homs = (0..n)
        .map(|s| {
            (0..n)
                .map(|t| (0..oc.num_maps(s, t)).filter(|&m| i.contains(&oc.gmap(s, t, m))).collect())
                .collect()
        })
        .collect();
    NormCategory {
        orbit_category: oc,
        homs,
    }
}

/// Norm category of a transfer system.
pub fn norm_category(t: &TransferSystem) -> Result<NormCategory> {
    build_norm_category(&transfer_to_indexing(t))
}
