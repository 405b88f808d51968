use std::sync::Arc;

use eqalg_core::burnside::{BurnsideElement, BurnsideRing};
use eqalg_core::corpus;
use eqalg_core::group::FiniteGroup;
use eqalg_core::indexing::{enumerate_transfer_systems, join, meet, norm_category, PairSpace, TransferSystem};
use eqalg_core::linalg::q_frac;
use eqalg_core::mackey::{burnside_mackey, evaluate_on_span};
use eqalg_core::normed::{constant_diagram, forget_norms, validate_diagram, GradedAlgebra};
use eqalg_core::random::{random_composable, random_span};
use eqalg_core::span::{compose, spans_equivalent, Span};
use eqalg_core::{QMatrix, Q};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group(i: usize) -> Arc<FiniteGroup> {
    match i % 4 {
        0 => corpus::cyclic(2),
        1 => corpus::cyclic(4),
        2 => corpus::symmetric(3),
        _ => corpus::elementary_abelian_2(2),
    }
}

fn element(g: &Arc<FiniteGroup>, raw: &[(i64, i64)]) -> BurnsideElement {
    let coeffs: Vec<Q> = raw.iter().take(g.num_classes()).map(|&(n, d)| q_frac(n, d)).collect();
    BurnsideElement::new(g.clone(), coeffs).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 5)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-4i64..=4, rows * cols).prop_map(move |v| {
        let r: Vec<Vec<Q>> = v.chunks(cols.max(1)).take(rows).map(|c| c.iter().map(|&x| q_frac(x, 1)).collect()).collect();
        QMatrix::from_rows(r, cols).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn marks_are_a_ring_homomorphism(gi in 0usize..4, a in coeffs(), b in coeffs(), c in coeffs()) {
        let g = group(gi);
        let ring = BurnsideRing::new(g.clone());
        let (x, y, z) = (element(&g, &a), element(&g, &b), element(&g, &c));
        let xy = ring.multiply(&x, &y).unwrap();
        prop_assert_eq!(&xy, &ring.multiply(&y, &x).unwrap());
        prop_assert_eq!(
            ring.multiply(&xy, &z).unwrap(),
            ring.multiply(&x, &ring.multiply(&y, &z).unwrap()).unwrap()
        );
        let (mx, my, mxy) = (ring.marks(&x).unwrap(), ring.marks(&y).unwrap(), ring.marks(&xy).unwrap());
        for k in 0..ring.rank() {
            prop_assert_eq!(&mxy[k], &(&mx[k] * &my[k]));
        }
        prop_assert_eq!(ring.from_marks(&mx).unwrap(), x);
    }

    #[test]
    fn span_composition_is_associative(gi in 0usize..3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_composable(&mut rng, &group(gi), 3, 2);
        let left = compose(&compose(&s[2], &s[1]).unwrap(), &s[0]).unwrap();
        let right = compose(&s[2], &compose(&s[1], &s[0]).unwrap()).unwrap();
        prop_assert!(spans_equivalent(&left, &right).unwrap());
        prop_assert!(spans_equivalent(&compose(&s[0], &Span::identity(s[0].left())).unwrap(), &s[0]).unwrap());
    }

    #[test]
    fn evaluation_is_additive_and_functorial(gi in 0usize..3, seed in any::<u64>()) {
        let g = group(gi);
        let m = burnside_mackey(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_composable(&mut rng, &g, 2, 2);
        let t = random_span(&mut rng, s[0].left(), s[0].right(), 2);
        let sum = s[0].sum(&t).unwrap();
        prop_assert_eq!(
            evaluate_on_span(&m, &sum).unwrap(),
            &evaluate_on_span(&m, &s[0]).unwrap() + &evaluate_on_span(&m, &t).unwrap()
        );
        let composite = compose(&s[1], &s[0]).unwrap();
        prop_assert_eq!(
            evaluate_on_span(&m, &composite).unwrap(),
            &evaluate_on_span(&m, &s[1]).unwrap() * &evaluate_on_span(&m, &s[0]).unwrap()
        );
    }

    #[test]
    fn matrix_products_transpose(a in matrix(2, 3), b in matrix(3, 2)) {
        prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
        let sq = &a * &b;
        if let Some(inv) = sq.inverse() {
            prop_assert_eq!(&sq * &inv, QMatrix::identity(2));
        } else {
            prop_assert!(sq.rank() < 2);
        }
    }

    #[test]
    fn transfer_systems_form_a_lattice(gi in 0usize..4, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let g = group(gi);
        let all = enumerate_transfer_systems(&g).unwrap();
        let (a, b) = (&all[i.index(all.len())], &all[j.index(all.len())]);
        let (m, jn) = (meet(a, b).unwrap(), join(a, b).unwrap());
        prop_assert!(m.is_valid() && jn.is_valid());
        prop_assert!(m.is_subsystem_of(a) && m.is_subsystem_of(b));
        prop_assert!(a.is_subsystem_of(&jn) && b.is_subsystem_of(&jn));
        // the join is the least upper bound among all systems
        for c in &all {
            if a.is_subsystem_of(c) && b.is_subsystem_of(c) {
                prop_assert!(jn.is_subsystem_of(c));
            }
        }
    }

    #[test]
    fn forgetting_norms_keeps_diagrams_valid(gi in 0usize..4, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let g = group(gi);
        let all = enumerate_transfer_systems(&g).unwrap();
        let top = &all[i.index(all.len())];
        let below: Vec<&TransferSystem> = all.iter().filter(|t| t.is_subsystem_of(top)).collect();
        let low = below[j.index(below.len())];
        let a = GradedAlgebra::truncated_polynomial(2, 3).unwrap();
        let d = constant_diagram(&a, Arc::new(norm_category(top).unwrap())).unwrap();
        let f = forget_norms(&d, low).unwrap();
        prop_assert!(validate_diagram(&f).passed());
        prop_assert_eq!(f.category().total_maps(), norm_category(low).unwrap().total_maps());
    }
}

#[test]
fn maximal_and_minimal_bound_every_system() {
    let g = corpus::dihedral(4);
    let space = PairSpace::new(g.clone());
    let (min, max) = (TransferSystem::minimal(space.clone()), TransferSystem::maximal(space));
    for t in enumerate_transfer_systems(&g).unwrap() {
        assert!(min.is_subsystem_of(&t) && t.is_subsystem_of(&max));
    }
}
