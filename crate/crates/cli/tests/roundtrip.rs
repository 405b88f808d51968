use std::fs;

use eqalg_cli::format::*;
use eqalg_cli::workspace::*;
use eqalg_cli::Workspace;
use eqalg_core::burnside::BurnsideElement;
use eqalg_core::corpus;
use eqalg_core::indexing::enumerate_transfer_systems;
use eqalg_core::linalg::q_frac;
use eqalg_core::mackey::burnside_mackey;
use eqalg_core::random::random_gset;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GROUPS: [&str; 5] = ["C2", "C4", "S3", "C4xC2", "D8"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rationals(n in -1000i64..1000, d in 1i64..1000) {
        let x = q_frac(n, d);
        let s = rational(&x);
        prop_assert_eq!(parse_rational(&s).unwrap(), x);
        prop_assert!(!s.contains("/-"));
    }

    #[test]
    fn burnside_elements(gi in 0usize..5, raw in prop::collection::vec((-9i64..=9, 1i64..=5), 8)) {
        let name = GROUPS[gi];
        let g = corpus::by_name(name).unwrap();
        let coeffs = raw.iter().take(g.num_classes()).map(|&(n, d)| q_frac(n, d)).collect();
        let a = BurnsideElement::new(g, coeffs).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.json");
        let text = to_canonical(&burnside_file(&a, GroupRef::Name(name.into())));
        fs::write(&path, &text).unwrap();
        let back = Workspace::default().load_burnside(&path).unwrap();
        prop_assert_eq!(&back.value, &a);
        prop_assert_eq!(to_canonical(&burnside_file(&back.value, GroupRef::Name(name.into()))), text);
    }

    #[test]
    fn gsets(gi in 0usize..5, seed in any::<u64>()) {
        let name = GROUPS[gi];
        let g = corpus::by_name(name).unwrap();
        let x = random_gset(&mut ChaCha8Rng::seed_from_u64(seed), &g, 0, 4);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.json");
        fs::write(&path, to_canonical(&gset_file(&x, GroupRef::Name(name.into())))).unwrap();
        let back = Workspace::default().load_gset(&path).unwrap().value;
        prop_assert_eq!(back.class_multiset(), x.class_multiset());
    }

    #[test]
    fn transfer_systems(gi in 0usize..5, i in any::<prop::sample::Index>()) {
        let name = GROUPS[gi];
        let g = corpus::by_name(name).unwrap();
        let all = enumerate_transfer_systems(&g).unwrap();
        let t = &all[i.index(all.len())];
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.json");
        let text = to_canonical(&transfer_file(t, GroupRef::Name(name.into())));
        fs::write(&path, &text).unwrap();
        let back = Workspace::default().load_transfer(&path).unwrap();
        prop_assert_eq!(back.value.orbits(), t.orbits());
        prop_assert_eq!(back.digest, digest(&transfer_file(t, GroupRef::Name(name.into()))));
    }
}

#[test]
fn mackey_functors_and_inline_groups() {
    for name in ["C2", "S3", "Q8"] {
        let g = corpus::by_name(name).unwrap();
        let m = burnside_mackey(&g);
        let file = mackey_file(&m, GroupRef::Spec(group_file(&g)));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        fs::write(&path, to_canonical(&file)).unwrap();
        let back = Workspace::default().load_mackey(&path).unwrap().value;
        assert_eq!(back, m, "{name}");
    }
}

#[test]
fn action_tables_are_normalized() {
    // C2 acting on {0, 1, 2}: swap 0 and 2, fix 1
    let file: GSetFile = serde_json::from_str(r#"{"group": "C2", "size": 3, "action": [[0, 1, 2], [2, 1, 0]]}"#).unwrap();
    let x = Workspace::default().gset(&file, std::path::Path::new(".")).unwrap();
    assert_eq!(x.class_multiset(), vec![0, 1]);
    let canonical = to_canonical(&gset_file(&x, GroupRef::Name("C2".into())));
    assert!(canonical.contains("\"orbits\""));
}

#[test]
fn malformed_inputs_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut ws = Workspace::default();
    for (text, code) in [
        ("{", 2),
        (r#"{"group": "C2", "pairs": [[0, 1, 0, 0]]}"#, 2),
        (r#"{"group": "C2", "pairs": [[1, 0]]}"#, 2),
        (r#"{"group": "nowhere.json", "pairs": []}"#, 2),
        (r#"{"group": "C4", "pairs": [[0, 2]]}"#, 3),
    ] {
        fs::write(&path, text).unwrap();
        let err = ws.load_transfer(&path).unwrap_err();
        assert_eq!(err.exit_code(), code, "{text}: {err}");
    }
}
