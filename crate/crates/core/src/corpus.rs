//! Named small groups used by tests, benches and the command line.

use std::sync::Arc;

use crate::group::FiniteGroup;

fn from_perms(degree: usize, gens: &[Vec<usize>]) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::from_permutations(degree, gens, usize::MAX).expect("valid generators"))
}

fn from_mul(n: usize, mul: impl Fn(usize, usize) -> usize) -> Arc<FiniteGroup> {
    let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    Arc::new(FiniteGroup::from_table(table).expect("valid table"))
}

pub fn trivial() -> Arc<FiniteGroup> {
    from_mul(1, |_, _| 0)
}

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    from_mul(n, |a, b| (a + b) % n)
}

/// Dihedral group of order `2n`, acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> Arc<FiniteGroup> {
    let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    from_perms(n, &[rotation, reflection])
}

pub fn symmetric(n: usize) -> Arc<FiniteGroup> {
    if n < 2 {
        return trivial();
    }
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    from_perms(n, &[swap, cycle])
}

pub fn alternating4() -> Arc<FiniteGroup> {
    from_perms(4, &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]])
}

/// Dicyclic group of order `4n`: `a^{2n} = 1`, `x^2 = a^n`, `x a x⁻¹ = a⁻¹`.
/// `n = 2` gives the quaternion group.
pub fn dicyclic(n: usize) -> Arc<FiniteGroup> {
    let m = 2 * n;
    // element k + m*e stands for a^k x^e
    from_mul(2 * m, move |p, q| {
        let (k, e) = (p % m, p / m);
        let (l, f) = (q % m, q / m);
        let moved = if e == 1 { (m - l) % m } else { l };
        let mut exp = (k + moved) % m;
        let mut x = e + f;
        if x == 2 {
            exp = (exp + n) % m;
            x = 0;
        }
        exp + m * x
    })
}

pub fn quaternion() -> Arc<FiniteGroup> {
    dicyclic(2)
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Arc<FiniteGroup> {
    let nb = b.order();
    from_mul(a.order() * nb, |p, q| {
        a.mul(p / nb, q / nb) * nb + b.mul(p % nb, q % nb)
    })
}

pub fn elementary_abelian_2(rank: u32) -> Arc<FiniteGroup> {
    let n = 1usize << rank;
    from_mul(n, |a, b| a ^ b)
}

/// Every group of order at most `max_order` (up to isomorphism), for
/// `max_order <= 12`, with a short name.
pub fn groups_up_to(max_order: usize) -> Vec<(&'static str, Arc<FiniteGroup>)> {
    let all: Vec<(&'static str, usize, fn() -> Arc<FiniteGroup>)> = vec![
        ("1", 1, trivial),
        ("C2", 2, || cyclic(2)),
        ("C3", 3, || cyclic(3)),
        ("C4", 4, || cyclic(4)),
        ("C2xC2", 4, || elementary_abelian_2(2)),
        ("C5", 5, || cyclic(5)),
        ("C6", 6, || cyclic(6)),
        ("S3", 6, || symmetric(3)),
        ("C7", 7, || cyclic(7)),
        ("C8", 8, || cyclic(8)),
        ("C4xC2", 8, || direct_product(&cyclic(4), &cyclic(2))),
        ("C2xC2xC2", 8, || elementary_abelian_2(3)),
        ("D8", 8, || dihedral(4)),
        ("Q8", 8, quaternion),
        ("C9", 9, || cyclic(9)),
        ("C3xC3", 9, || direct_product(&cyclic(3), &cyclic(3))),
        ("C10", 10, || cyclic(10)),
        ("D10", 10, || dihedral(5)),
        ("C11", 11, || cyclic(11)),
        ("C12", 12, || cyclic(12)),
        ("C6xC2", 12, || direct_product(&cyclic(6), &cyclic(2))),
        ("D12", 12, || dihedral(6)),
        ("A4", 12, alternating4),
        ("Dic3", 12, || dicyclic(3)),
    ];
    all.into_iter()
        .filter(|(_, n, _)| *n <= max_order)
        .map(|(name, _, make)| (name, make()))
        .collect()
}

/// Looks up a corpus group by the names used in [`groups_up_to`].
pub fn by_name(name: &str) -> Option<Arc<FiniteGroup>> {
    groups_up_to(12)
        .into_iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, g)| g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_shapes() {
        let groups = groups_up_to(12);
        assert_eq!(groups.len(), 24);
        for (name, g) in &groups {
            let abelian = g.is_abelian();
            let expect_abelian = !matches!(*name, "S3" | "D8" | "Q8" | "D10" | "D12" | "A4" | "Dic3");
            assert_eq!(abelian, expect_abelian, "{name}");
        }
        // Q8 has a unique involution, D8 has five
        let involutions = |g: &FiniteGroup| g.elements().filter(|&x| x != 0 && g.mul(x, x) == 0).count();
        assert_eq!(involutions(&quaternion()), 1);
        assert_eq!(involutions(&dihedral(4)), 5);
        assert_eq!(involutions(&dicyclic(3)), 1);
        assert_eq!(alternating4().subgroups().len(), 10);
    }
}
