//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always shown.

#![allow(clippy::type_complexity)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use eqalg_cli::format::*;
use eqalg_cli::workspace::*;
use eqalg_cli::Workspace;
use eqalg_core::burnside::{BurnsideElement, BurnsideRing};
use eqalg_core::corpus;
use eqalg_core::group::{FiniteGroup, GroupSpec};
use eqalg_core::gsets::{GSet, OrbitCategory};
use eqalg_core::indexing::{enumerate_masks, norm_category, Algorithm, PairSpace, TransferSystem};
use eqalg_core::linalg::q;
use eqalg_core::mackey::{burnside_mackey, evaluate_on_span, geometric_fixed_points, represented_mackey, split};
use eqalg_core::normed::{constant_diagram, forget_norms, validate_diagram, ConstantDiagramCheck, GradedAlgebra};
use eqalg_core::par::Exec;
use eqalg_core::random::{random_composable, random_gset};
use eqalg_core::span::{check_semiadditive, compose, spans_equivalent, Span, TripleConstraint};
use eqalg_core::{QMatrix, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("{what} took {t:.2?}, over {limit:?}"))
    } else {
        Ok(())
    }
}

/// Counts `K`-fixed cosets `gH` straight from the multiplication table.
fn marks_oracle(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.num_classes();
    let mut out = vec![vec![0; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        let h = g.class_rep(i).members();
        let mut cosets: Vec<Vec<usize>> = g
            .elements()
            .map(|x| {
                let mut c: Vec<usize> = h.iter().map(|&y| g.mul(x, y)).collect();
                c.sort_unstable();
                c
            })
            .collect();
        cosets.sort();
        cosets.dedup();
        for (j, m) in row.iter_mut().enumerate() {
            let k = g.class_rep(j).members();
            *m = cosets
                .iter()
                .filter(|c| {
                    k.iter().all(|&a| {
                        let mut moved: Vec<usize> = c.iter().map(|&x| g.mul(a, x)).collect();
                        moved.sort_unstable();
                        moved == **c
                    })
                })
                .count();
        }
    }
    out
}

fn c1_marks() -> Outcome {
    let start = Instant::now();
    let expected: [(&str, Arc<FiniteGroup>, Vec<Vec<usize>>); 2] = [
        ("S3", corpus::symmetric(3), vec![vec![6, 0, 0, 0], vec![3, 1, 0, 0], vec![2, 0, 2, 0], vec![1, 1, 1, 1]]),
        ("C2", corpus::cyclic(2), vec![vec![2, 0], vec![1, 1]]),
    ];
    for (name, g, table) in expected {
        let oracle = marks_oracle(&g);
        ensure!(oracle == table, "{name}: oracle gives {oracle:?}");
        let ring = BurnsideRing::new(g.clone());
        let computed: Vec<Vec<Q>> = ring.table_of_marks().to_rows();
        let want: Vec<Vec<Q>> = table.iter().map(|r| r.iter().map(|&m| q(m as i64)).collect()).collect();
        ensure!(computed == want, "{name}: computed {computed:?}");
    }
    within(start, Duration::from_secs(1), "marks")?;
    Ok(format!("S3 and C2 match the fixed-point oracle in {:.0?}", start.elapsed()))
}

fn c2_idempotents() -> Outcome {
    let start = Instant::now();
    let groups = [
        ("C2", corpus::cyclic(2)),
        ("C3", corpus::cyclic(3)),
        ("C4", corpus::cyclic(4)),
        ("C2xC2", corpus::elementary_abelian_2(2)),
        ("S3", corpus::symmetric(3)),
    ];
    for (name, g) in groups {
        let ring = BurnsideRing::new(g.clone());
        let es = ring.rational_idempotents();
        let n = ring.rank();
        let mut sum = BurnsideElement::zero(g.clone());
        for (h, e) in es.iter().enumerate() {
            let marks = ring.marks(e).map_err(|e| e.to_string())?;
            let indicator: Vec<Q> = (0..n).map(|k| q((k == h) as i64)).collect();
            ensure!(marks == indicator, "{name}: marks(e_{h}) = {marks:?}");
            for (k, f) in es.iter().enumerate() {
                let p = ring.multiply(e, f).map_err(|e| e.to_string())?;
                let want = if h == k { e.clone() } else { BurnsideElement::zero(g.clone()) };
                ensure!(p == want, "{name}: e_{h} e_{k} = {p:?}");
            }
            sum = sum.add(e).map_err(|e| e.to_string())?;
        }
        ensure!(sum == BurnsideElement::one(g.clone()), "{name}: idempotents sum to {sum:?}");
    }
    within(start, Duration::from_secs(5), "idempotents")?;
    Ok(format!("5 groups, indicator marks, orthogonality, sum [G/G] in {:.0?}", start.elapsed()))
}

fn span_groups() -> [(&'static str, Arc<FiniteGroup>); 3] {
    [("C2", corpus::cyclic(2)), ("C4", corpus::cyclic(4)), ("S3", corpus::symmetric(3))]
}

fn equivalent(a: &Span, b: &Span) -> Result<bool, String> {
    spans_equivalent(a, b).map_err(|e| e.to_string())
}

fn c3_span_laws() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let all = TripleConstraint::all();
    let mut semiadditive = 0;
    for (name, g) in span_groups() {
        for trial in 0..200 {
            let s = random_composable(&mut rng, &g, 3, 2);
            let c = |a: &Span, b: &Span| compose(a, b).map_err(|e| e.to_string());
            let left = c(&c(&s[2], &s[1])?, &s[0])?;
            let right = c(&s[2], &c(&s[1], &s[0])?)?;
            ensure!(equivalent(&left, &right)?, "{name} triple {trial}: associativity fails");
            for x in &s {
                let l = c(&Span::identity(x.right()), x)?;
                let r = c(x, &Span::identity(x.left()))?;
                ensure!(equivalent(&l, x)? && equivalent(&r, x)?, "{name} triple {trial}: unit law fails");
            }
        }
        for trial in 0..50 {
            let x = random_gset(&mut rng, &g, 0, 2);
            let y = random_gset(&mut rng, &g, 0, 2);
            let z = random_gset(&mut rng, &g, 0, 2);
            let r = check_semiadditive(&x, &y, &z, &all).map_err(|e| e.to_string())?;
            ensure!(r.holds, "{name} triple {trial}: semiadditivity fails {r:?}");
            semiadditive += 1;
        }
    }
    Ok(format!(
        "600 composable triples associative and unital, {semiadditive} semiadditive triples in {:.1?}",
        start.elapsed()
    ))
}

fn c4_marks_coherence() -> Outcome {
    let mut checked = 0;
    for (name, g) in [("C2", corpus::cyclic(2)), ("S3", corpus::symmetric(3))] {
        let ring = BurnsideRing::new(g.clone());
        let point = GSet::orbit_of_class(g.clone(), g.num_classes() - 1);
        let n = g.num_classes();
        // every endo-span of G/G with an apex of at most two orbits
        let mut apexes: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        for i in 0..n {
            for j in i..n {
                apexes.push(vec![i, j]);
            }
        }
        let endo = |classes: &[usize]| -> Span {
            let apex = GSet::from_classes(g.clone(), classes);
            let zeros = vec![0; apex.size()];
            Span::from_parts(point.clone(), apex, point.clone(), zeros.clone(), zeros).expect("maps to a point")
        };
        for a in &apexes {
            for b in &apexes {
                let (sa, sb) = (endo(a), endo(b));
                let composite = compose(&sb, &sa).map_err(|e| e.to_string())?;
                let via_spans = BurnsideElement::from_gset(composite.apex());
                let product = ring
                    .multiply(&BurnsideElement::from_gset(sa.apex()), &BurnsideElement::from_gset(sb.apex()))
                    .map_err(|e| e.to_string())?;
                let (m1, m2) = (ring.marks(&via_spans).unwrap(), ring.marks(&product).unwrap());
                ensure!(m1 == m2, "{name}: {a:?} * {b:?} gives marks {m1:?} by spans and {m2:?} by decomposition");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} products of endo-spans of G/G agree on marks"))
}

fn c5_splitting() -> Outcome {
    let start = Instant::now();
    for (name, g) in span_groups() {
        let m = burnside_mackey(&g);
        let pieces = split(&m).map_err(|e| e.to_string())?;
        let n = g.num_classes();
        for level in 0..n {
            let d = m.dims()[level];
            let total = pieces
                .iter()
                .fold(QMatrix::zeros(d, d), |acc, p| &acc + &p.projectors[level]);
            ensure!(total == QMatrix::identity(d), "{name}: projectors at level {level} sum to {total:?}");
        }
        for p in &pieces {
            for h in 0..n {
                let dim = geometric_fixed_points(&p.functor, h).map_err(|e| e.to_string())?.dim;
                if h != p.class {
                    ensure!(dim == 0, "{name}: Phi^H{h} of piece {} has dimension {dim}", p.class);
                }
            }
        }
        if name == "S3" {
            for h in 0..n {
                let dim = geometric_fixed_points(&m, h).map_err(|e| e.to_string())?.dim;
                ensure!(dim == 1, "S3: dim Phi^H{h} = {dim}");
            }
        }
    }
    within(start, Duration::from_secs(10), "splitting")?;
    Ok(format!("C2, C4, S3 split cleanly; S3 has all four Phi dims 1 ({:.1?})", start.elapsed()))
}

fn c6_functoriality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let c2 = corpus::cyclic(2);
    let mut functors: Vec<(String, Arc<FiniteGroup>, eqalg_core::mackey::MackeyFunctor)> = span_groups()
        .into_iter()
        .map(|(n, g)| (format!("A_{n}"), g.clone(), burnside_mackey(&g)))
        .collect();
    let free = GSet::orbit_of_class(c2.clone(), 0);
    functors.push(("A_{C2/1}".into(), c2, represented_mackey(&free).map_err(|e| e.to_string())?));
    let mut pairs = 0;
    for (name, g, m) in &functors {
        for trial in 0..200 {
            let s = random_composable(&mut rng, g, 2, 2);
            let ev = |x: &Span| evaluate_on_span(m, x).map_err(|e| e.to_string());
            let composite = compose(&s[1], &s[0]).map_err(|e| e.to_string())?;
            let lhs = ev(&composite)?;
            let rhs = ev(&s[1])?.checked_mul(&ev(&s[0])?).map_err(|e| e.to_string())?;
            ensure!(lhs == rhs, "{name} pair {trial}: M(t∘s) != M(t) M(s)");
            pairs += 1;
        }
    }
    Ok(format!("{pairs} random span pairs over 4 functors respect composition"))
}

/// Transfer-system masks per group of order at most 8, by both algorithms.
struct Enumeration {
    name: &'static str,
    space: Arc<PairSpace>,
    brute: Vec<u128>,
    closure: Vec<u128>,
    seconds: (f64, f64),
}

fn enumerations() -> &'static Vec<Enumeration> {
    static CACHE: OnceLock<Vec<Enumeration>> = OnceLock::new();
    CACHE.get_or_init(|| {
        corpus::groups_up_to(8)
            .into_iter()
            .map(|(name, g)| {
                let space = PairSpace::new(g);
                let t = Instant::now();
                let brute = enumerate_masks(&space, Algorithm::BruteForce, Exec::default()).expect("fits");
                let tb = t.elapsed().as_secs_f64();
                let t = Instant::now();
                let closure = enumerate_masks(&space, Algorithm::Closure, Exec::default()).expect("fits");
                let tc = t.elapsed().as_secs_f64();
                Enumeration {
                    name,
                    space,
                    brute,
                    closure,
                    seconds: (tb, tc),
                }
            })
            .collect()
    })
}

fn c7_enumeration() -> Outcome {
    let start = Instant::now();
    let all = enumerations();
    let mut counts = Vec::new();
    for e in all {
        ensure!(e.brute == e.closure, "{}: brute force finds {}, closure {}", e.name, e.brute.len(), e.closure.len());
        counts.push(format!("{}={}", e.name, e.brute.len()));
    }
    let count = |n: &str| all.iter().find(|e| e.name == n).map(|e| e.brute.len());
    for (n, want) in [("1", 1), ("C2", 2), ("C4", 5), ("C8", 14)] {
        ensure!(count(n) == Some(want), "{n}: {:?} systems, expected {want}", count(n));
    }
    let slowest = all.iter().max_by(|a, b| a.seconds.0.total_cmp(&b.seconds.0)).unwrap();
    within(start, Duration::from_secs(60), "enumeration")?;
    Ok(format!(
        "{} in {:.1?} (slowest {}: brute {:.1}s, closure {:.1}s)",
        counts.join(" "),
        start.elapsed(),
        slowest.name,
        slowest.seconds.0,
        slowest.seconds.1
    ))
}

fn c8_norm_boundaries() -> Outcome {
    let groups = corpus::groups_up_to(12);
    for (name, g) in &groups {
        let space = PairSpace::new(g.clone());
        let oc = OrbitCategory::new(g.clone());
        let max = norm_category(&TransferSystem::maximal(space.clone())).map_err(|e| e.to_string())?;
        let min = norm_category(&TransferSystem::minimal(space)).map_err(|e| e.to_string())?;
        let n = oc.num_objects();
        for s in 0..n {
            for t in 0..n {
                let fixed = oc.object(t).fixed_points(g.class_rep(s)).len();
                ensure!(max.hom_count(s, t) == fixed, "{name}: maximal hom(G/H{s}, G/H{t}) has {} maps, {fixed} fixed points", max.hom_count(s, t));
                let isos = if s == t { fixed } else { 0 };
                ensure!(min.hom_count(s, t) == isos, "{name}: minimal hom(G/H{s}, G/H{t}) is not a groupoid hom set");
            }
        }
    }
    Ok(format!("{} corpus groups: maximal = orbit category, minimal = groupoid", groups.len()))
}

fn c9_diagrams() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let qa = GradedAlgebra::rational();
    let mut full = 0usize;
    let mut by_mask = 0usize;
    let mut perturbed = 0usize;
    for e in enumerations() {
        let check = ConstantDiagramCheck::new(&qa, &e.space);
        for &m in &e.brute {
            ensure!(check.check_mask(m).is_none(), "{}: constant Q fails on mask {m:#x}", e.name);
        }
        by_mask += e.brute.len();
        // the full validator on every system, or on a seeded sample where
        // there are too many to build each norm category
        let picks: Vec<u128> = if e.brute.len() <= 1000 {
            e.brute.clone()
        } else {
            (0..200).map(|_| e.brute[rng.gen_range(0..e.brute.len())]).collect()
        };
        for m in picks {
            let orbits: Vec<usize> = (0..e.space.len()).filter(|&p| m >> p & 1 == 1).collect();
            let t = TransferSystem::from_orbits(e.space.clone(), &orbits).map_err(|e| e.to_string())?;
            let cat = Arc::new(norm_category(&t).map_err(|e| e.to_string())?);
            let d = constant_diagram(&qa, cat.clone()).map_err(|e| e.to_string())?;
            let report = validate_diagram(&d);
            ensure!(report.passed(), "{}: constant Q fails validation: {:?}", e.name, report.failures.first());
            full += 1;
            // perturb one admissible map
            let arrows = cat.morphisms();
            let (s, tt, f) = arrows[rng.gen_range(0..arrows.len())];
            let mut bad = d.clone();
            bad.set_morphism(s, tt, f, QMatrix::from_i64(&[&[2]])).map_err(|e| e.to_string())?;
            let report = validate_diagram(&bad);
            ensure!(
                report.failures.iter().any(|x| x.first == (s, tt, f) || x.second == (s, tt, f)),
                "{}: perturbing {:?} went unnoticed",
                e.name,
                (s, tt, f)
            );
            perturbed += 1;
        }
    }
    // forgetting along random chains T3 ⊆ T2 ⊆ T1
    let dual = GradedAlgebra::truncated_polynomial(0, 2).map_err(|e| e.to_string())?;
    let usable: Vec<&Enumeration> = enumerations().iter().filter(|e| e.brute.len() <= 1000 && e.space.len() > 1).collect();
    for chain in 0..20 {
        let e = usable[rng.gen_range(0..usable.len())];
        let pick_below = |rng: &mut ChaCha8Rng, top: u128| -> u128 {
            let below: Vec<u128> = e.brute.iter().copied().filter(|&m| m & top == m).collect();
            below[rng.gen_range(0..below.len())]
        };
        let t1 = e.brute[rng.gen_range(0..e.brute.len())];
        let t2 = pick_below(&mut rng, t1);
        let t3 = pick_below(&mut rng, t2);
        let system = |m: u128| {
            let orbits: Vec<usize> = (0..e.space.len()).filter(|&p| m >> p & 1 == 1).collect();
            TransferSystem::from_orbits(e.space.clone(), &orbits).expect("enumerated")
        };
        let d = constant_diagram(&dual, Arc::new(norm_category(&system(t1)).map_err(|e| e.to_string())?)).map_err(|e| e.to_string())?;
        let twice = forget_norms(&forget_norms(&d, &system(t2)).map_err(|e| e.to_string())?, &system(t3)).map_err(|e| e.to_string())?;
        let once = forget_norms(&d, &system(t3)).map_err(|e| e.to_string())?;
        ensure!(twice == once, "{} chain {chain}: forgetting in two steps differs", e.name);
    }
    Ok(format!(
        "{by_mask} systems pass the per-mask check, {full} also pass the full validator, {perturbed} perturbations caught, 20 forget chains in {:.1?}",
        start.elapsed()
    ))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn same_bytes<T: serde::Serialize + serde::de::DeserializeOwned>(file: &str) -> Result<(), String> {
    let path = fixtures().join(file);
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let parsed: T = serde_json::from_str(&text).map_err(|e| format!("{file}: {e}"))?;
    ensure!(to_canonical(&parsed) == text, "{file}: reprint differs");
    Ok(())
}

fn c10_serialization() -> Outcome {
    // textual round trips, one fixture per file type
    same_bytes::<GroupSpec>("s3.json")?;
    same_bytes::<GSetFile>("gset_s3.json")?;
    same_bytes::<SpanFile>("span_c2.json")?;
    same_bytes::<BurnsideFile>("burnside_s3.json")?;
    same_bytes::<MackeyFile>("mackey_burnside_s3.json")?;
    same_bytes::<TransferFile>("transfer_c4.json")?;
    same_bytes::<DiagramFile>("diagram_c2_dual.json")?;
    // and through the loaded objects
    let dir = fixtures();
    let read = |f: &str| std::fs::read_to_string(dir.join(f)).unwrap();
    let mut ws = Workspace::default();
    let g = ws.load_group(&dir.join("c4.json")).map_err(|e| e.to_string())?;
    ensure!(to_canonical(&group_file(&g.value)) == read("c4.json"), "group reprint differs");
    let x = ws.load_gset(&dir.join("gset_s3.json")).map_err(|e| e.to_string())?;
    ensure!(to_canonical(&gset_file(&x.value, GroupRef::Name("S3".into()))) == read("gset_s3.json"), "G-set reprint differs");
    let s = ws.load_span(&dir.join("span_c2.json")).map_err(|e| e.to_string())?;
    ensure!(to_canonical(&span_file(&s.value, GroupRef::Name("c2.json".into())).unwrap()) == read("span_c2.json"), "span reprint differs");
    let b = ws.load_burnside(&dir.join("burnside_s3.json")).map_err(|e| e.to_string())?;
    ensure!(to_canonical(&burnside_file(&b.value, GroupRef::Name("S3".into()))) == read("burnside_s3.json"), "Burnside reprint differs");
    let m = ws.load_mackey(&dir.join("mackey_burnside_s3.json")).map_err(|e| e.to_string())?;
    ensure!(to_canonical(&mackey_file(&m.value, GroupRef::Name("s3.json".into()))) == read("mackey_burnside_s3.json"), "Mackey reprint differs");
    let t = ws.load_transfer(&dir.join("transfer_c4.json")).map_err(|e| e.to_string())?;
    ensure!(to_canonical(&transfer_file(&t.value, GroupRef::Name("c4.json".into()))) == read("transfer_c4.json"), "transfer reprint differs");
    let d = ws.load_diagram(&dir.join("diagram_c2_dual.json")).map_err(|e| e.to_string())?;
    let t2 = TransferSystem::maximal(PairSpace::new(corpus::cyclic(2)));
    ensure!(to_canonical(&diagram_file(&d.value, &t2, GroupRef::Name("c2.json".into()))) == read("diagram_c2_dual.json"), "diagram reprint differs");

    // exit-code contract
    let bin = env!("CARGO_BIN_EXE_eqalg");
    let cases: &[(&[&str], i32, Option<&str>)] = &[
        (&["marks", "c2.json"], 0, Some("\"marks\": [\n    [\n      2,\n      0\n    ],\n    [\n      1,\n      1\n    ]\n  ]")),
        (&["marks", "trivial.json"], 0, None),
        (&["marks", "nonassoc.json"], 3, None),
        (&["marks", "missing.json"], 2, None),
        (&["transfer-systems", "c2.json", "--count"], 0, Some("\"count\": 2")),
        (&["transfer-systems", "c4.json", "--count"], 0, Some("\"count\": 5")),
        (&["transfer-systems", "trivial.json", "--list"], 0, Some("\"systems\": [\n    []\n  ]")),
        (&["transfer-systems", "c4.json", "--dot"], 0, Some("digraph transfer_systems")),
        (&["transfer-systems", "s4.json", "--count"], 4, None),
        (&["split", "mackey_burnside_s3.json"], 0, Some("\"phi_dim\": 1")),
        (&["split", "mackey_zero_c2.json"], 0, None),
        (&["split", "mackey_corrupt_s3.json"], 3, Some("DoubleCoset")),
        (&["norm-category", "c2.json", "transfer_c2_max.json", "--dot"], 0, Some(r#"G/H_0\" -> \"G/H_1"#)),
        (&["norm-category", "c2.json", "transfer_c2_min.json"], 0, Some("\"total_maps\": 3")),
        (&["norm-category", "c4.json", "transfer_c2_max.json"], 2, None),
        (&["norm-category", "c4.json", "transfer_c4_invalid.json"], 3, None),
        (&["validate-diagram", "diagram_constant_c4.json"], 0, Some("\"failures\": []")),
        (&["validate-diagram", "diagram_perturbed_c4.json"], 3, Some("\"second\"")),
        (&["validate-diagram", "diagram_c2_dual.json"], 0, None),
        (&["validate-diagram", "span_c2.json"], 2, None),
    ];
    for (args, code, needle) in cases {
        let out = Command::new(bin)
            .current_dir(&dir)
            .arg("--json")
            .args(*args)
            .env_remove("EQALG_MAX_ORDER")
            .output()
            .map_err(|e| e.to_string())?;
        let got = out.status.code();
        ensure!(got == Some(*code), "eqalg {args:?} exited with {got:?}, expected {code}");
        if let Some(n) = needle {
            let stdout = String::from_utf8_lossy(&out.stdout);
            ensure!(stdout.contains(n), "eqalg {args:?} output lacks {n:?}:\n{stdout}");
        }
    }
    // the order cap is overridable
    let out = Command::new(bin)
        .current_dir(&dir)
        .args(["transfer-systems", "s4.json", "--count"])
        .env("EQALG_MAX_ORDER", "2")
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.code() == Some(4), "EQALG_MAX_ORDER=2 should cap S4 loading");
    Ok(format!("7 file types reprint byte for byte, {} CLI invocations honour the exit codes", cases.len() + 1))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("table of marks", c1_marks),
        ("idempotent suite", c2_idempotents),
        ("span laws", c3_span_laws),
        ("marks/composition coherence", c4_marks_coherence),
        ("Mackey splitting", c5_splitting),
        ("functor property", c6_functoriality),
        ("transfer-system enumeration", c7_enumeration),
        ("norm category boundary cases", c8_norm_boundaries),
        ("diagram validation", c9_diagrams),
        ("serialization and exit codes", c10_serialization),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
