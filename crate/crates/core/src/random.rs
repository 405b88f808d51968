//! Seeded random G-sets, maps and spans for property tests and benches.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::group::FiniteGroup;
use crate::gsets::{GMap, GSet};
use crate::span::Span;

/// Relabels the points of `x` by a random permutation; returns the new
/// G-set and the isomorphism `x -> new` as an assignment.
pub fn shuffle<R: Rng + ?Sized>(rng: &mut R, x: &GSet) -> (GSet, Vec<usize>) {
    let n = x.size();
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(rng);
    let g = x.group();
    let mut action = vec![0; g.order() * n];
    for e in g.elements() {
        for p in 0..n {
            action[e * n + sigma[p]] = sigma[x.act(e, p)];
        }
    }
    let y = GSet::from_action(g.clone(), n, action).expect("relabelled action");
    (y, sigma)
}

/// A G-set with between `min_orbits` and `max_orbits` orbits of random
/// classes, with shuffled point labels.
pub fn random_gset<R: Rng + ?Sized>(rng: &mut R, g: &Arc<FiniteGroup>, min_orbits: usize, max_orbits: usize) -> GSet {
    let k = rng.gen_range(min_orbits..=max_orbits);
    let classes: Vec<usize> = (0..k).map(|_| rng.gen_range(0..g.num_classes())).collect();
    shuffle(rng, &GSet::from_classes(g.clone(), &classes)).0
}

/// A uniformly chosen equivariant map, if any exists.
pub fn random_map<R: Rng + ?Sized>(rng: &mut R, x: &GSet, y: &GSet) -> Option<GMap> {
    let g = x.group();
    let mut assignment = vec![0; x.size()];
    for o in x.orbits() {
        let h = g.class_rep(o.class);
        let fixed = y.fixed_points(h);
        let image = *fixed.choose(rng)?;
        let (reps, _) = crate::gsets::cosets(g, h);
        for (c, &p) in o.coset_to_point.iter().enumerate() {
            assignment[p] = y.act(reps[c], image);
        }
    }
    Some(GMap::new(x.clone(), y.clone(), assignment).expect("equivariant by construction"))
}

/// A span `x <- z -> y` whose apex has at most `max_orbits` orbits, each
/// lying over a random point of `x × y` with a random stabilizer.
pub fn random_span<R: Rng + ?Sized>(rng: &mut R, x: &GSet, y: &GSet, max_orbits: usize) -> Span {
    let g = x.group();
    let pairs: Vec<(usize, usize)> = (0..x.size()).flat_map(|a| (0..y.size()).map(move |b| (a, b))).collect();
    let mut apex = GSet::empty(g.clone());
    let mut back = Vec::new();
    let mut fwd = Vec::new();
    if !pairs.is_empty() {
        for _ in 0..rng.gen_range(0..=max_orbits) {
            let (a, b) = *pairs.choose(rng).expect("nonempty");
            // a class whose representative fixes (a', b') for some point of
            // the orbit of (a, b)
            let candidates: Vec<(usize, usize, usize)> = (0..g.num_classes())
                .flat_map(|c| {
                    let h = g.class_rep(c);
                    g.elements()
                        .map(move |e| (c, x.act(e, a), y.act(e, b)))
                        .filter(move |&(_, p, q)| x.is_fixed_by(p, h) && y.is_fixed_by(q, h))
                })
                .collect();
            let (c, p, q) = *candidates.choose(rng).expect("the trivial subgroup fixes everything");
            let orbit = GSet::orbit_of_class(g.clone(), c);
            let (reps, _) = crate::gsets::cosets(g, g.class_rep(c));
            back.extend(reps.iter().map(|&r| x.act(r, p)));
            fwd.extend(reps.iter().map(|&r| y.act(r, q)));
            apex = apex.coproduct(&orbit).expect("same group");
        }
    }
    let (apex2, sigma) = shuffle(rng, &apex);
    let mut b2 = vec![0; apex2.size()];
    let mut f2 = vec![0; apex2.size()];
    for z in 0..apex.size() {
        b2[sigma[z]] = back[z];
        f2[sigma[z]] = fwd[z];
    }
    Span::from_parts(x.clone(), apex2, y.clone(), b2, f2).expect("equivariant legs")
}

/// Composable spans `w <= z`, `z <= y`, `y <= x` over fresh random G-sets.
pub fn random_composable<R: Rng + ?Sized>(rng: &mut R, g: &Arc<FiniteGroup>, count: usize, max_orbits: usize) -> Vec<Span> {
    let objects: Vec<GSet> = (0..=count).map(|_| random_gset(rng, g, 0, 2)).collect();
    (0..count)
        .map(|i| random_span(rng, &objects[i], &objects[i + 1], max_orbits))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::gsets::is_isomorphic;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_objects_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = corpus::symmetric(3);
        for _ in 0..50 {
            let x = random_gset(&mut rng, &g, 1, 3);
            let (y, _) = shuffle(&mut rng, &x);
            assert!(is_isomorphic(&x, &y).unwrap().is_some());
            if let Some(f) = random_map(&mut rng, &x, &y) {
                assert_eq!(f.source(), &x);
            }
            let s = random_span(&mut rng, &x, &y, 2);
            assert!(s.apex().orbits().len() <= 2);
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let g = corpus::cyclic(4);
        let a = random_composable(&mut ChaCha8Rng::seed_from_u64(1), &g, 3, 2);
        let b = random_composable(&mut ChaCha8Rng::seed_from_u64(1), &g, 3, 2);
        assert_eq!(a, b);
    }
}
