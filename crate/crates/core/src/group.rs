//! Finite groups given by multiplication tables, with their subgroup
//! lattices, conjugacy classes of subgroups, normalizers and Weyl groups.
//!
//! Elements are the integers `0..n` and the identity is always `0`.
//! Subgroups are listed in canonical order: by order, then by their sorted
//! member lists compared lexicographically. A conjugacy class is represented
//! by its first member in that order, and classes are ordered by their
//! representatives.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_GROUP_ORDER: usize = 24;
pub const DEFAULT_MAX_ENUMERATION_ORDER: usize = 12;
pub const MAX_ORDER_ENV: &str = "EQALG_MAX_ORDER";

/// Size caps for exhaustive computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group accepted by [`load_group`].
    pub max_group_order: usize,
    /// Largest group for which transfer systems are enumerated.
    pub max_enumeration_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
            max_enumeration_order: DEFAULT_MAX_ENUMERATION_ORDER,
        }
    }
}

impl Limits {
    /// Defaults, with both caps replaced by `EQALG_MAX_ORDER` when it is set
    /// to a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            limits.max_group_order = n;
            limits.max_enumeration_order = n;
        }
        limits
    }
}

/// A group description as read from JSON: either a full multiplication
/// table or permutation generators (images of `0..degree`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Table { order: usize, table: Vec<Vec<usize>> },
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
}

pub fn load_group(spec: &GroupSpec, limits: Limits) -> Result<Arc<FiniteGroup>> {
    let group = match spec {
        GroupSpec::Table { order, table } => {
            if table.len() != *order {
                return Err(Error::MalformedSpec(format!(
                    "declared order {} but table has {} rows",
                    order,
                    table.len()
                )));
            }
            if *order > limits.max_group_order {
                return Err(Error::OrderCapExceeded {
                    order: *order,
                    cap: limits.max_group_order,
                });
            }
            FiniteGroup::from_table(table.clone())?
        }
        GroupSpec::Permutations { degree, generators } => {
            FiniteGroup::from_permutations(*degree, generators, limits.max_group_order)?
        }
    };
    Ok(Arc::new(group))
}

/// A subgroup as a sorted member list with a membership mask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

impl Subgroup {
    fn from_sorted(members: Vec<usize>, group_order: usize) -> Self {
        let mut mask = vec![false; group_order];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { members, mask }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

/// A conjugacy class of subgroups with its Weyl group.
#[derive(Debug)]
pub struct SubgroupClass {
    /// Index (into [`FiniteGroup::subgroups`]) of the canonical representative.
    pub representative: usize,
    /// Indices of all conjugates, ascending.
    pub members: Vec<usize>,
    /// Normalizer of the representative, sorted.
    pub normalizer: Vec<usize>,
    /// `N_G(H)/H` with cosets ordered by their least element.
    pub weyl: Arc<FiniteGroup>,
    /// Least element of each coset, indexed like the Weyl group's elements.
    pub weyl_lifts: Vec<usize>,
}

impl SubgroupClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug)]
struct Lattice {
    subgroups: Vec<Subgroup>,
    lookup: HashMap<Vec<usize>, usize>,
    classes: Vec<SubgroupClass>,
    class_of: Vec<usize>,
}

pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    permutations: Option<Vec<Vec<usize>>>,
    lattice: OnceLock<Lattice>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.order == other.order && self.table == other.table)
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a multiplication table. If the identity is not element 0 the
    /// two labels are swapped so that it is.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedSpec("empty table".into()));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::MalformedSpec("table is not square".into()));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::MalformedSpec(format!("entry {bad} out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(Error::MissingIdentity)?;
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut flat = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[relabel(a) * n + relabel(b)] = relabel(table[a][b]);
            }
        }
        let mut inverses = vec![0; n];
        for (a, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&b| flat[a * n + b] == 0 && flat[b * n + a] == 0)
                .ok_or(Error::MissingInverse(relabel(a)))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(Error::NonAssociative(relabel(a), relabel(b), relabel(c)));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table: flat,
            inverses,
            permutations: None,
            lattice: OnceLock::new(),
        })
    }

    /// Closes permutation generators under composition. Elements are sorted
    /// lexicographically by their image lists, so the identity comes first.
    /// The product `p * q` applies `q` first.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>], cap: usize) -> Result<Self> {
        for g in generators {
            if g.len() != degree {
                return Err(Error::MalformedSpec(format!(
                    "generator {:?} does not have degree {}",
                    g, degree
                )));
            }
            let distinct: BTreeSet<usize> = g.iter().copied().collect();
            if distinct.len() != degree || g.iter().any(|&x| x >= degree) {
                return Err(Error::MalformedSpec(format!("{:?} is not a permutation", g)));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let compose = |p: &[usize], q: &[usize]| q.iter().map(|&i| p[i]).collect::<Vec<_>>();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let r = compose(&p, g);
                if seen.insert(r.clone()) {
                    if seen.len() > cap {
                        return Err(Error::OrderCapExceeded {
                            order: seen.len(),
                            cap,
                        });
                    }
                    queue.push_back(r);
                }
            }
        }
        let elements: Vec<Vec<usize>> = seen.into_iter().collect();
        let index: HashMap<&[usize], usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let table: Vec<Vec<usize>> = elements
            .iter()
            .map(|p| elements.iter().map(|q| index[compose(p, q).as_slice()]).collect())
            .collect();
        let mut group = FiniteGroup::from_table(table)?;
        group.permutations = Some(elements);
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Permutation images of each element, when built from generators.
    pub fn permutations(&self) -> Option<&[Vec<usize>]> {
        self.permutations.as_deref()
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec::Table {
            order: self.order,
            table: self.table_rows(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `x⁻¹ s x`, for a single element.
    pub fn conj(&self, s: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), s), x)
    }

    /// Subgroup generated by `gens`, as a sorted member list.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut members = vec![0];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// True when the member set is closed under products and inverses and
    /// contains the identity.
    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let mut mask = vec![false; self.order];
        for &m in members {
            if m >= self.order {
                return false;
            }
            mask[m] = true;
        }
        mask[0]
            && members.iter().all(|&a| {
                mask[self.inv(a)] && members.iter().all(|&b| mask[self.mul(a, b)])
            })
    }

    /// Makes a [`Subgroup`] value from a member list after validation.
    pub fn subgroup_from_members(&self, members: &[usize]) -> Result<Subgroup> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if !self.is_subgroup(&sorted) {
            return Err(Error::NotASubgroup);
        }
        Ok(Subgroup::from_sorted(sorted, self.order))
    }

    /// `x⁻¹ S x` as a sorted member list.
    pub fn conjugate_members(&self, members: &[usize], x: usize) -> Vec<usize> {
        let mut out: Vec<usize> = members.iter().map(|&s| self.conj(s, x)).collect();
        out.sort_unstable();
        out
    }

    fn lattice(&self) -> &Lattice {
        self.lattice.get_or_init(|| self.build_lattice())
    }

    fn build_lattice(&self) -> Lattice {
        let n = self.order;
        let cyclic: BTreeSet<Vec<usize>> = self.elements().map(|g| self.generate(&[g])).collect();
        let cyclic: Vec<Vec<usize>> = cyclic.into_iter().collect();
        let mut found: BTreeSet<Vec<usize>> = cyclic.iter().cloned().collect();
        let mut queue: VecDeque<Vec<usize>> = found.iter().cloned().collect();
        while let Some(a) = queue.pop_front() {
            let mask = {
                let mut m = vec![false; n];
                for &x in &a {
                    m[x] = true;
                }
                m
            };
            for c in &cyclic {
                if c.iter().all(|&x| mask[x]) {
                    continue;
                }
                let mut gens = a.clone();
                gens.extend_from_slice(c);
                let joined = self.generate(&gens);
                if found.insert(joined.clone()) {
                    queue.push_back(joined);
                }
            }
        }
        let mut members: Vec<Vec<usize>> = found.into_iter().collect();
        members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let lookup: HashMap<Vec<usize>, usize> = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let subgroups: Vec<Subgroup> = members
            .into_iter()
            .map(|m| Subgroup::from_sorted(m, n))
            .collect();

        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes = Vec::new();
        for (i, h) in subgroups.iter().enumerate() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut conjugates: BTreeSet<usize> = BTreeSet::new();
            let mut normalizer = Vec::new();
            for x in self.elements() {
                let c = lookup[&self.conjugate_members(h.members(), x)];
                conjugates.insert(c);
                if c == i {
                    normalizer.push(x);
                }
            }
            let class_index = classes.len();
            for &c in &conjugates {
                class_of[c] = class_index;
            }
            let (weyl, weyl_lifts) = self.quotient(&normalizer, h);
            classes.push(SubgroupClass {
                representative: i,
                members: conjugates.into_iter().collect(),
                normalizer,
                weyl: Arc::new(weyl),
                weyl_lifts,
            });
        }
        Lattice {
            subgroups,
            lookup,
            classes,
            class_of,
        }
    }

    /// `N / H` for `H` normal in the subgroup `N`.
    fn quotient(&self, normalizer: &[usize], h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let mut lifts: Vec<usize> = Vec::new();
        let mut coset_of = vec![usize::MAX; self.order];
        for &x in normalizer {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = lifts.len();
            lifts.push(x);
            for &m in h.members() {
                coset_of[self.mul(x, m)] = idx;
            }
        }
        let table: Vec<Vec<usize>> = lifts
            .iter()
            .map(|&a| lifts.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        let weyl = FiniteGroup::from_table(table).expect("quotient by a normal subgroup is a group");
        (weyl, lifts)
    }

    /// All subgroups in canonical order.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.lattice().subgroups
    }

    pub fn subgroup(&self, index: usize) -> &Subgroup {
        &self.lattice().subgroups[index]
    }

    /// Index of the subgroup with exactly these (sorted) members.
    pub fn subgroup_index(&self, sorted_members: &[usize]) -> Option<usize> {
        self.lattice().lookup.get(sorted_members).copied()
    }

    pub fn index_of(&self, h: &Subgroup) -> usize {
        self.subgroup_index(h.members())
            .expect("subgroup of a different group")
    }

    /// Conjugacy classes of subgroups in canonical order.
    pub fn classes(&self) -> &[SubgroupClass] {
        &self.lattice().classes
    }

    pub fn class(&self, class_index: usize) -> &SubgroupClass {
        &self.lattice().classes[class_index]
    }

    pub fn num_classes(&self) -> usize {
        self.lattice().classes.len()
    }

    /// Conjugacy class index of a subgroup index.
    pub fn class_of(&self, subgroup_index: usize) -> usize {
        self.lattice().class_of[subgroup_index]
    }

    /// Canonical representative subgroup of a class.
    pub fn class_rep(&self, class_index: usize) -> &Subgroup {
        self.subgroup(self.class(class_index).representative)
    }

    /// Index of `x⁻¹ S x`.
    pub fn conjugate_index(&self, subgroup_index: usize, x: usize) -> usize {
        let m = self.conjugate_members(self.subgroup(subgroup_index).members(), x);
        self.lattice().lookup[&m]
    }

    pub fn intersection_index(&self, a: usize, b: usize) -> usize {
        let sb = self.subgroup(b);
        let m: Vec<usize> = self
            .subgroup(a)
            .members()
            .iter()
            .copied()
            .filter(|&x| sb.contains(x))
            .collect();
        self.lattice().lookup[&m]
    }

    /// Stabilizer-style subgroup: the elements fixing something, given as a
    /// predicate. The result must be a subgroup.
    pub fn subgroup_where(&self, pred: impl Fn(usize) -> bool) -> usize {
        let m: Vec<usize> = self.elements().filter(|&g| pred(g)).collect();
        self.subgroup_index(&m).expect("predicate does not cut out a subgroup")
    }

    /// First `x` in element order with `x⁻¹ K x ⊆ H`.
    pub fn is_subconjugate(&self, k: &Subgroup, h: &Subgroup) -> Option<usize> {
        self.elements()
            .find(|&x| k.members().iter().all(|&s| h.contains(self.conj(s, x))))
    }

    /// Index of `H` in `G`.
    pub fn index(&self, h: &Subgroup) -> usize {
        self.order / h.order()
    }
}

/// Subgroups of `g`; see [`FiniteGroup::subgroups`].
pub fn subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    g.subgroups().to_vec()
}

pub fn is_subconjugate(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Option<usize> {
    g.is_subconjugate(k, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn perm_group(degree: usize, gens: &[&[usize]]) -> FiniteGroup {
        let gens: Vec<Vec<usize>> = gens.iter().map(|g| g.to_vec()).collect();
        FiniteGroup::from_permutations(degree, &gens, 24).unwrap()
    }

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_table(vec![vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.subgroups().len(), 1);
        assert_eq!(g.num_classes(), 1);
    }

    #[test]
    fn generators_close() {
        assert_eq!(perm_group(2, &[&[1, 0]]).order(), 2);
        let s3 = perm_group(3, &[&[1, 0, 2], &[1, 2, 0]]);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn rejects_non_groups() {
        assert_eq!(
            FiniteGroup::from_table(vec![vec![0, 0], vec![0, 0]]).unwrap_err(),
            Error::MissingIdentity
        );
        // identity 0, but 1*1 = 1 so 1 has no inverse
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]),
            Err(Error::MissingInverse(1))
        ));
        // a Latin square with identity that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(t),
            Err(Error::NonAssociative(..))
        ));
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1]]),
            Err(Error::MalformedSpec(_))
        ));
        assert!(matches!(
            FiniteGroup::from_permutations(3, &[vec![0, 0, 1]], 24),
            Err(Error::MalformedSpec(_))
        ));
    }

    #[test]
    fn identity_is_relabelled_to_zero() {
        // C_2 with identity written as element 1
        let g = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn order_cap() {
        let spec = GroupSpec::Permutations {
            degree: 5,
            generators: vec![vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]],
        };
        assert!(matches!(
            load_group(&spec, Limits::default()),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(corpus::trivial().subgroups().len(), 1);
        assert_eq!(corpus::cyclic(2).subgroups().len(), 2);
        let s3 = corpus::symmetric(3);
        assert_eq!(s3.subgroups().len(), 6);
        let orders: Vec<usize> = s3.subgroups().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn class_structure() {
        let c2 = corpus::cyclic(2);
        let weyl: Vec<usize> = c2.classes().iter().map(|c| c.weyl.order()).collect();
        assert_eq!(weyl, vec![2, 1]);

        let s3 = corpus::symmetric(3);
        assert_eq!(s3.num_classes(), 4);
        let orders: Vec<usize> = (0..4).map(|c| s3.class_rep(c).order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(s3.class(2).weyl.order(), 2);
        assert_eq!(s3.class(1).size(), 3);
        assert_eq!(s3.class(1).weyl.order(), 1);
    }

    #[test]
    fn class_equation_for_subgroups() {
        for (name, g) in corpus::groups_up_to(12) {
            let total: usize = g
                .classes()
                .iter()
                .map(|c| g.order() / c.normalizer.len())
                .sum();
            assert_eq!(total, g.subgroups().len(), "{name}");
            for c in g.classes() {
                let h = g.subgroup(c.representative);
                assert_eq!(c.size(), g.order() / c.normalizer.len(), "{name}");
                assert_eq!(c.weyl.order(), c.normalizer.len() / h.order(), "{name}");
            }
        }
    }

    #[test]
    fn weyl_is_a_quotient() {
        for (name, g) in corpus::groups_up_to(12) {
            for c in g.classes() {
                let h = g.subgroup(c.representative);
                // multiplying any coset members lands in the coset of the product
                for (i, &a) in c.weyl_lifts.iter().enumerate() {
                    for (j, &b) in c.weyl_lifts.iter().enumerate() {
                        let k = c.weyl.mul(i, j);
                        let lift = c.weyl_lifts[k];
                        for &h1 in h.members() {
                            let p = g.mul(g.mul(a, h1), b);
                            let q = g.mul(g.inv(lift), p);
                            assert!(h.contains(q), "{name}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subconjugacy() {
        let s3 = corpus::symmetric(3);
        let subs = s3.subgroups();
        let trivial = &subs[0];
        for h in subs {
            assert_eq!(s3.is_subconjugate(trivial, h), Some(0));
            assert_eq!(s3.is_subconjugate(h, h), Some(0));
        }
        let c3 = &subs[4];
        assert_eq!(s3.is_subconjugate(c3, &subs[1]), None);
        assert!(s3.is_subconjugate(&subs[1], &subs[2]).is_some());
    }

    #[test]
    fn subconjugacy_witnesses_compose() {
        for (name, g) in corpus::groups_up_to(8) {
            let subs = g.subgroups();
            for a in subs {
                for b in subs {
                    let Some(x) = g.is_subconjugate(a, b) else { continue };
                    for c in subs {
                        let Some(y) = g.is_subconjugate(b, c) else { continue };
                        let xy = g.mul(x, y);
                        assert!(
                            a.members().iter().all(|&s| c.contains(g.conj(s, xy))),
                            "{name}"
                        );
                    }
                }
            }
        }
    }
}
