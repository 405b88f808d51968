//! Graded-commutative algebras over Q and diagrams of them indexed by a
//! norm category.
//!
//! A diagram is covariant: an admissible map `G/K -> G/H` gives an algebra
//! map `X(G/K) -> X(G/H)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::indexing::{norm_category, NormCategory, PairSpace, TransferSystem};
use crate::linalg::{q, QMatrix, Q};
use crate::par::Exec;

/// A finite-dimensional graded-commutative algebra with optional
/// differential of degree −1, on a homogeneous basis.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    degrees: Vec<i64>,
    /// `mult[i][j]` is the product `b_i b_j` in the basis.
    mult: Vec<Vec<Vec<Q>>>,
    unit: Vec<Q>,
    differential: Option<QMatrix>,
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedAlgebra(degrees={:?}, dg={})", self.degrees, self.differential.is_some())
    }
}

fn sign(a: i64, b: i64) -> Q {
    if (a * b).rem_euclid(2) == 1 {
        q(-1)
    } else {
        q(1)
    }
}

impl GradedAlgebra {
    /// Builds and validates an algebra from basis degrees, nonzero structure
    /// constants `b_i b_j = Σ c b_k` given as `(i, j, k, c)`, and a unit.
    pub fn new(degrees: Vec<i64>, products: &[(usize, usize, usize, Q)], unit: Vec<Q>, differential: Option<QMatrix>) -> Result<Self> {
        let a = Self::new_unchecked(degrees, products, unit, differential)?;
        a.validate()?;
        Ok(a)
    }

    /// Shape checks only.
    pub fn new_unchecked(degrees: Vec<i64>, products: &[(usize, usize, usize, Q)], unit: Vec<Q>, differential: Option<QMatrix>) -> Result<Self> {
        let n = degrees.len();
        if unit.len() != n {
            return Err(Error::InvalidAlgebra(format!("unit has {} entries for dimension {n}", unit.len())));
        }
        if let Some(d) = &differential {
            if d.rows() != n || d.cols() != n {
                return Err(Error::InvalidAlgebra("differential is not square of the algebra dimension".into()));
            }
        }
        let mut mult = vec![vec![vec![Q::zero(); n]; n]; n];
        for (i, j, k, c) in products {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::InvalidAlgebra(format!("structure constant ({i}, {j}, {k}) out of range")));
            }
            mult[*i][*j][*k] += c;
        }
        Ok(GradedAlgebra {
            degrees,
            mult,
            unit,
            differential,
        })
    }

    /// `Q` in degree 0.
    pub fn rational() -> Self {
        Self::new(vec![0], &[(0, 0, 0, q(1))], vec![q(1)], None).expect("Q is an algebra")
    }

    /// `Q[x]/(x^n)` with `|x| = degree` (even degree, or `n ≤ 2`).
    pub fn truncated_polynomial(degree: i64, n: usize) -> Result<Self> {
        let degrees = (0..n as i64).map(|i| i * degree).collect();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    products.push((i, j, i + j, q(1)));
                }
            }
        }
        let mut unit = vec![Q::zero(); n];
        unit[0] = q(1);
        Self::new(degrees, &products, unit, None)
    }

    /// `Q[x]/(x² − c)` with `|x| = 0`.
    pub fn quadratic(c: Q) -> Self {
        Self::new(
            vec![0, 0],
            &[(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1)), (1, 1, 0, c)],
            vec![q(1), q(0)],
            None,
        )
        .expect("commutative and associative")
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn differential(&self) -> Option<&QMatrix> {
        self.differential.as_ref()
    }

    /// Nonzero structure constants `(i, j, k, c)` in lexicographic order.
    pub fn products(&self) -> Vec<(usize, usize, usize, Q)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.mult[i][j][k].is_zero() {
                        out.push((i, j, k, self.mult[i][j][k].clone()));
                    }
                }
            }
        }
        out
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Q] {
        &self.mult[i][j]
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for i in (0..n).filter(|&i| !a[i].is_zero()) {
            for j in (0..n).filter(|&j| !b[j].is_zero()) {
                let c = &a[i] * &b[j];
                for k in 0..n {
                    if !self.mult[i][j][k].is_zero() {
                        out[k] += &c * &self.mult[i][j][k];
                    }
                }
            }
        }
        out
    }

    fn basis(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let bad = |s: String| Err(Error::InvalidAlgebra(s));
        if self.degrees.windows(2).any(|w| w[0] > w[1]) {
            return bad("basis degrees must be ascending".into());
        }
        if self.unit.iter().enumerate().any(|(i, c)| !c.is_zero() && self.degrees[i] != 0) {
            return bad("unit is not in degree 0".into());
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.mult[i][j][k].is_zero() && self.degrees[k] != self.degrees[i] + self.degrees[j] {
                        return bad(format!("product b{i} b{j} has a component outside degree |b{i}| + |b{j}|"));
                    }
                }
            }
        }
        for i in 0..n {
            let b = self.basis(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return bad(format!("unit law fails on b{i}"));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let s = sign(self.degrees[i], self.degrees[j]);
                let swapped: Vec<Q> = self.mult[j][i].iter().map(|c| c * &s).collect();
                if self.mult[i][j] != swapped {
                    return bad(format!("graded commutativity fails on (b{i}, b{j})"));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = &self.mult[i][j];
                for k in 0..n {
                    let left = self.mul(ij, &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.mult[j][k]);
                    if left != right {
                        return bad(format!("associativity fails on (b{i}, b{j}, b{k})"));
                    }
                }
            }
        }
        if let Some(d) = &self.differential {
            for i in 0..n {
                for k in 0..n {
                    if !d.get(k, i).is_zero() && self.degrees[k] != self.degrees[i] - 1 {
                        return bad(format!("differential of b{i} is not of degree -1"));
                    }
                }
            }
            if !(d * d).is_zero() {
                return bad("d∘d is not zero".into());
            }
            for i in 0..n {
                for j in 0..n {
                    let lhs = d.apply(&self.mult[i][j]);
                    let da = d.column(i);
                    let db = d.column(j);
                    let s = if self.degrees[i].rem_euclid(2) == 1 { q(-1) } else { q(1) };
                    let r1 = self.mul(&da, &self.basis(j));
                    let r2 = self.mul(&self.basis(i), &db);
                    let rhs: Vec<Q> = r1.iter().zip(&r2).map(|(x, y)| x + &s * y).collect();
                    if lhs != rhs {
                        return bad(format!("Leibniz rule fails on (b{i}, b{j})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Ways an algebra map can fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapDefect {
    Shape,
    Grading { basis: usize },
    Unit,
    Multiplication { left: usize, right: usize },
    Differential { basis: usize },
}

/// A linear map `source -> target` given by a matrix on the bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap {
    pub source: Arc<GradedAlgebra>,
    pub target: Arc<GradedAlgebra>,
    pub matrix: QMatrix,
}

impl AlgebraMap {
    pub fn new(source: Arc<GradedAlgebra>, target: Arc<GradedAlgebra>, matrix: QMatrix) -> Result<Self> {
        let f = AlgebraMap { source, target, matrix };
        match f.defect() {
            None => Ok(f),
            Some(d) => Err(Error::InvalidDiagram(format!("not an algebra map: {d:?}"))),
        }
    }

    pub fn identity(a: Arc<GradedAlgebra>) -> Self {
        let n = a.dim();
        AlgebraMap {
            source: a.clone(),
            target: a,
            matrix: QMatrix::identity(n),
        }
    }

    /// The first failing algebra-map condition, if any.
    pub fn defect(&self) -> Option<MapDefect> {
        map_defect(&self.source, &self.target, &self.matrix)
    }
}

fn map_defect(a: &GradedAlgebra, b: &GradedAlgebra, m: &QMatrix) -> Option<MapDefect> {
    if m.rows() != b.dim() || m.cols() != a.dim() {
        return Some(MapDefect::Shape);
    }
    for i in 0..a.dim() {
        for k in 0..b.dim() {
            if !m.get(k, i).is_zero() && a.degrees[i] != b.degrees[k] {
                return Some(MapDefect::Grading { basis: i });
            }
        }
    }
    if m.apply(&a.unit) != b.unit {
        return Some(MapDefect::Unit);
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = m.apply(&a.mult[i][j]);
            let rhs = b.mul(&m.column(i), &m.column(j));
            if lhs != rhs {
                return Some(MapDefect::Multiplication { left: i, right: j });
            }
        }
    }
    match (&a.differential, &b.differential) {
        (None, None) => None,
        (da, db) => {
            let za = QMatrix::zeros(a.dim(), a.dim());
            let zb = QMatrix::zeros(b.dim(), b.dim());
            let da = da.as_ref().unwrap_or(&za);
            let db = db.as_ref().unwrap_or(&zb);
            let lhs = m * da;
            let rhs = db * m;
            (0..a.dim())
                .find(|&i| lhs.column(i) != rhs.column(i))
                .map(|basis| MapDefect::Differential { basis })
        }
    }
}

/// A morphism of the norm category: `(source class, target class,
/// orbit-category index)`.
pub type Arrow = (usize, usize, usize);

#[derive(Clone)]
pub struct NormedAlgebraDiagram {
    category: Arc<NormCategory>,
    objects: Vec<Arc<GradedAlgebra>>,
    /// Keyed like `category.hom(s, t)`.
    morphisms: Vec<Vec<Vec<QMatrix>>>,
}

impl PartialEq for NormedAlgebraDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.category.morphisms() == other.category.morphisms()
            && *self.category.group() == *other.category.group()
            && self.objects == other.objects
            && self.morphisms == other.morphisms
    }
}

impl fmt::Debug for NormedAlgebraDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormedAlgebraDiagram({:?}, objects={:?})", self.category, self.objects)
    }
}

impl NormedAlgebraDiagram {
    /// Assembles a diagram; every admissible map needs exactly one matrix.
    /// Shapes are checked, the algebra and functor laws are not.
    pub fn new(
        category: Arc<NormCategory>,
        objects: Vec<Arc<GradedAlgebra>>,
        morphisms: impl IntoIterator<Item = (Arrow, QMatrix)>,
    ) -> Result<Self> {
        let n = category.num_objects();
        if objects.len() != n {
            return Err(Error::InvalidDiagram(format!("{} algebras for {n} objects", objects.len())));
        }
        let mut slots: Vec<Vec<Vec<Option<QMatrix>>>> = (0..n)
            .map(|s| (0..n).map(|t| vec![None; category.hom_count(s, t)]).collect())
            .collect();
        for ((s, t, m), x) in morphisms {
            if s >= n || t >= n {
                return Err(Error::InvalidDiagram(format!("no object {}", s.max(t))));
            }
            let pos = category
                .hom(s, t)
                .binary_search(&m)
                .map_err(|_| Error::InvalidDiagram(format!("map {m} : {s} -> {t} is not admissible")))?;
            if x.rows() != objects[t].dim() || x.cols() != objects[s].dim() {
                return Err(Error::InvalidDiagram(format!("matrix shape for map {m} : {s} -> {t}")));
            }
            if slots[s][t][pos].replace(x).is_some() {
                return Err(Error::InvalidDiagram(format!("map {m} : {s} -> {t} given twice")));
            }
        }
        let mut morphisms = Vec::with_capacity(n);
        for (s, row) in slots.into_iter().enumerate() {
            let mut out_row = Vec::with_capacity(n);
            for (t, cell) in row.into_iter().enumerate() {
                let mut out_cell = Vec::with_capacity(cell.len());
                for (pos, x) in cell.into_iter().enumerate() {
                    let m = category.hom(s, t)[pos];
                    out_cell.push(x.ok_or_else(|| Error::InvalidDiagram(format!("no matrix for map {m} : {s} -> {t}")))?);
                }
                out_row.push(out_cell);
            }
            morphisms.push(out_row);
        }
        Ok(NormedAlgebraDiagram {
            category,
            objects,
            morphisms,
        })
    }

    pub fn category(&self) -> &Arc<NormCategory> {
        &self.category
    }

    pub fn objects(&self) -> &[Arc<GradedAlgebra>] {
        &self.objects
    }

    pub fn object(&self, class: usize) -> &Arc<GradedAlgebra> {
        &self.objects[class]
    }

    pub fn morphism(&self, s: usize, t: usize, m: usize) -> Option<&QMatrix> {
        let pos = self.category.hom(s, t).binary_search(&m).ok()?;
        Some(&self.morphisms[s][t][pos])
    }

    pub fn set_morphism(&mut self, s: usize, t: usize, m: usize, x: QMatrix) -> Result<()> {
        let pos = self
            .category
            .hom(s, t)
            .binary_search(&m)
            .map_err(|_| Error::InvalidDiagram(format!("map {m} : {s} -> {t} is not admissible")))?;
        if x.rows() != self.objects[t].dim() || x.cols() != self.objects[s].dim() {
            return Err(Error::DimensionMismatch(format!("map {m} : {s} -> {t}")));
        }
        self.morphisms[s][t][pos] = x;
        Ok(())
    }

    /// Every assignment as `(arrow, matrix)`.
    pub fn assignments(&self) -> Vec<(Arrow, &QMatrix)> {
        self.category
            .morphisms()
            .into_iter()
            .map(|(s, t, m)| ((s, t, m), self.morphism(s, t, m).expect("admissible")))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagramDefect {
    InvalidAlgebra(String),
    Identity,
    NotAnAlgebraMap(MapDefect),
    Composition,
    /// The composite is not a morphism of the category.
    NotClosed,
}

/// A failure located at a composable pair `first` then `second`.
/// Defects of a single map `f : s -> t` are reported on `(id_s, f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramFailure {
    pub first: Arrow,
    pub second: Arrow,
    pub defect: DiagramDefect,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiagramReport {
    pub checks: usize,
    pub failures: Vec<DiagramFailure>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn validate_diagram(d: &NormedAlgebraDiagram) -> DiagramReport {
    validate_diagram_with(d, Exec::default())
}

pub fn validate_diagram_with(d: &NormedAlgebraDiagram, exec: Exec) -> DiagramReport {
    let cat = &d.category;
    let oc = cat.orbit_category();
    let arrows = cat.morphisms();
    let per_arrow = exec.map(arrows, |(s, t, f)| {
        let mut r = DiagramReport::default();
        let id_s = (s, s, oc.identity_map(s));
        let x = d.morphism(s, t, f).expect("admissible");
        r.checks += 1;
        if (s, t, f) == id_s {
            if let Err(e) = d.objects[s].validate() {
                r.failures.push(DiagramFailure {
                    first: id_s,
                    second: id_s,
                    defect: DiagramDefect::InvalidAlgebra(e.to_string()),
                });
            }
            if *x != QMatrix::identity(d.objects[s].dim()) {
                r.failures.push(DiagramFailure {
                    first: id_s,
                    second: id_s,
                    defect: DiagramDefect::Identity,
                });
            }
        }
        if let Some(defect) = map_defect(&d.objects[s], &d.objects[t], x) {
            r.failures.push(DiagramFailure {
                first: id_s,
                second: (s, t, f),
                defect: DiagramDefect::NotAnAlgebraMap(defect),
            });
        }
        for u in 0..cat.num_objects() {
            for &g in cat.hom(t, u) {
                r.checks += 1;
                let gf = cat.compose(s, t, u, f, g);
                let defect = match d.morphism(s, u, gf) {
                    None => Some(DiagramDefect::NotClosed),
                    Some(lhs) => (*lhs != d.morphism(t, u, g).expect("admissible") * x).then_some(DiagramDefect::Composition),
                };
                if let Some(defect) = defect {
                    r.failures.push(DiagramFailure {
                        first: (s, t, f),
                        second: (t, u, g),
                        defect,
                    });
                }
            }
        }
        r
    });
    let mut report = DiagramReport::default();
    for r in per_arrow {
        report.checks += r.checks;
        report.failures.extend(r.failures);
    }
    report
}

/// Validation of constant diagrams for many transfer systems of one group.
///
/// Every check [`validate_diagram`] makes on a constant diagram involves
/// identity matrices, so its outcome depends only on the algebra and on
/// whether the composite of two admissible maps is admissible. A map
/// `G/K -> G/H` is admissible exactly when its pair orbit is in the system
/// (isomorphisms always are), so it is enough to record, once per group,
/// which pair orbits occur in each composable pair. A relation given as a
/// bit mask over pair orbits is then checked with a few bit operations.
#[derive(Debug, Clone)]
pub struct ConstantDiagramCheck {
    algebra: std::result::Result<(), String>,
    /// `(orbit of f, orbit of g, orbit of g∘f)` with `None` for isomorphisms,
    /// and one composable pair realising it.
    triples: Vec<(Option<usize>, Option<usize>, Option<usize>, Arrow, Arrow)>,
}

impl ConstantDiagramCheck {
    pub fn new(a: &GradedAlgebra, space: &PairSpace) -> Self {
        let g = space.group();
        let oc = crate::gsets::OrbitCategory::new(g.clone());
        let n = oc.num_objects();
        let orbit = |s: usize, t: usize, m: usize| -> Option<usize> {
            let k = g.class(s).representative;
            let h = oc.object(t).stabilizer(oc.base_image(s, t, m));
            if k == h {
                None
            } else {
                Some(space.orbit_of(k, h).expect("stabilizers of an equivariant map are nested"))
            }
        };
        let mut seen = std::collections::BTreeSet::new();
        let mut triples = Vec::new();
        for s in 0..n {
            for t in 0..n {
                for f in 0..oc.num_maps(s, t) {
                    let pf = orbit(s, t, f);
                    for u in 0..n {
                        for gm in 0..oc.num_maps(t, u) {
                            let key = (pf, orbit(t, u, gm), orbit(s, u, oc.compose(s, t, u, f, gm)));
                            if seen.insert(key) {
                                triples.push((key.0, key.1, key.2, (s, t, f), (t, u, gm)));
                            }
                        }
                    }
                }
            }
        }
        ConstantDiagramCheck {
            algebra: a.validate().map_err(|e| e.to_string()),
            triples,
        }
    }

    /// Number of distinct orbit triples checked per relation.
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// The first failure [`validate_diagram`] would report kind-wise for the
    /// constant diagram on the relation `mask`, if any.
    pub fn check_mask(&self, mask: u128) -> Option<DiagramFailure> {
        let member = |p: Option<usize>| p.is_none_or(|p| mask >> p & 1 == 1);
        for &(pf, pg, pgf, first, second) in &self.triples {
            if let Err(e) = &self.algebra {
                return Some(DiagramFailure {
                    first,
                    second: first,
                    defect: DiagramDefect::InvalidAlgebra(e.clone()),
                });
            }
            if member(pf) && member(pg) && !member(pgf) {
                return Some(DiagramFailure {
                    first,
                    second,
                    defect: DiagramDefect::NotClosed,
                });
            }
        }
        None
    }
}

/// Every object `a`, every map the identity.
pub fn constant_diagram(a: &GradedAlgebra, n: Arc<NormCategory>) -> Result<NormedAlgebraDiagram> {
    a.validate()?;
    let a = Arc::new(a.clone());
    let objects = vec![a.clone(); n.num_objects()];
    let morphisms: Vec<(Arrow, QMatrix)> = n
        .morphisms()
        .into_iter()
        .map(|arrow| (arrow, QMatrix::identity(a.dim())))
        .collect();
    NormedAlgebraDiagram::new(n, objects, morphisms)
}

/// Restriction to the norm category of a smaller transfer system.
pub fn forget_norms(d: &NormedAlgebraDiagram, smaller: &TransferSystem) -> Result<NormedAlgebraDiagram> {
    if **smaller.group() != **d.category.group() {
        return Err(Error::GroupMismatch);
    }
    let cat = Arc::new(norm_category(smaller)?);
    if !cat.is_subcategory_of(&d.category) {
        return Err(Error::NotASubSystem);
    }
    let morphisms: Vec<(Arrow, QMatrix)> = cat
        .morphisms()
        .into_iter()
        .map(|(s, t, m)| ((s, t, m), d.morphism(s, t, m).expect("subcategory").clone()))
        .collect();
    NormedAlgebraDiagram::new(cat, d.objects.clone(), morphisms)
}

/// Upper bound on the unknowns of [`hom_diagrams`].
pub const HOM_DIAGRAM_VARIABLE_CAP: usize = 400;

/// A natural transformation: one algebra map per object.
pub type Transformation = Vec<QMatrix>;

/// All natural transformations `d1 -> d2` whose components are algebra
/// maps. The linear conditions are solved exactly; the multiplicativity
/// conditions are solved by elimination and rational root branching.
/// Positive-dimensional solution sets and systems outside that method give
/// `UnboundedSearch`.
pub fn hom_diagrams(d1: &NormedAlgebraDiagram, d2: &NormedAlgebraDiagram) -> Result<Vec<Transformation>> {
    if d1.category.morphisms() != d2.category.morphisms() || *d1.category.group() != *d2.category.group() {
        return Err(Error::InvalidDiagram("diagrams live on different norm categories".into()));
    }
    let n = d1.objects.len();
    // unknowns: entries (k, i) of φ_c with matching degrees
    let mut vars: Vec<(usize, usize, usize)> = Vec::new();
    let mut var_at: Vec<BTreeMap<(usize, usize), usize>> = vec![BTreeMap::new(); n];
    for c in 0..n {
        let (a, b) = (&d1.objects[c], &d2.objects[c]);
        for k in 0..b.dim() {
            for i in 0..a.dim() {
                if a.degrees[i] == b.degrees[k] {
                    var_at[c].insert((k, i), vars.len());
                    vars.push((c, k, i));
                }
            }
        }
    }
    let nv = vars.len();
    if nv > HOM_DIAGRAM_VARIABLE_CAP {
        return Err(Error::UnboundedSearch(format!("{nv} unknowns exceed the cap {HOM_DIAGRAM_VARIABLE_CAP}")));
    }
    // entry (k, i) of φ_c as an affine form over the unknowns
    let entry = |c: usize, k: usize, i: usize| -> Option<usize> { var_at[c].get(&(k, i)).copied() };
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    let mut push = |row: Vec<Q>, r: Q| {
        if row.iter().any(|x| !x.is_zero()) || !r.is_zero() {
            rows.push(row);
            rhs.push(r);
        }
    };
    for c in 0..n {
        let (a, b) = (&d1.objects[c], &d2.objects[c]);
        // φ(1) = 1
        for k in 0..b.dim() {
            let mut row = vec![Q::zero(); nv];
            for i in 0..a.dim() {
                if let Some(v) = entry(c, k, i) {
                    row[v] += &a.unit[i];
                }
            }
            push(row, b.unit[k].clone());
        }
        // φ d_a = d_b φ
        if a.differential.is_some() || b.differential.is_some() {
            let za = QMatrix::zeros(a.dim(), a.dim());
            let zb = QMatrix::zeros(b.dim(), b.dim());
            let da = a.differential.as_ref().unwrap_or(&za);
            let db = b.differential.as_ref().unwrap_or(&zb);
            for k in 0..b.dim() {
                for i in 0..a.dim() {
                    let mut row = vec![Q::zero(); nv];
                    for j in 0..a.dim() {
                        if let Some(v) = entry(c, k, j) {
                            row[v] += da.get(j, i);
                        }
                    }
                    for j in 0..b.dim() {
                        if let Some(v) = entry(c, j, i) {
                            row[v] -= db.get(k, j);
                        }
                    }
                    push(row, Q::zero());
                }
            }
        }
    }
    // φ_t X1(f) = X2(f) φ_s
    for ((s, t, m), x1) in d1.assignments() {
        let x2 = d2.morphism(s, t, m).expect("same category");
        let (a_s, b_t) = (d1.objects[s].dim(), d2.objects[t].dim());
        for k in 0..b_t {
            for i in 0..a_s {
                let mut row = vec![Q::zero(); nv];
                for j in 0..d1.objects[t].dim() {
                    if let Some(v) = entry(t, k, j) {
                        row[v] += x1.get(j, i);
                    }
                }
                for j in 0..d2.objects[s].dim() {
                    if let Some(v) = entry(s, j, i) {
                        row[v] -= x2.get(k, j);
                    }
                }
                push(row, Q::zero());
            }
        }
    }
    let system = QMatrix::from_rows(rows, nv)?;
    let (x0, kernel) = match system.solve_affine(&rhs) {
        Some(sol) => sol,
        None => return Ok(Vec::new()),
    };
    let params = kernel.len();
    // each unknown as an affine form in the kernel parameters
    let affine: Vec<Affine> = (0..nv)
        .map(|v| Affine {
            c: x0[v].clone(),
            lin: (0..params)
                .filter(|&p| !kernel[p][v].is_zero())
                .map(|p| (p, kernel[p][v].clone()))
                .collect(),
        })
        .collect();
    let zero = Affine::constant(Q::zero());
    let at = |c: usize, k: usize, i: usize| -> &Affine { entry(c, k, i).map(|v| &affine[v]).unwrap_or(&zero) };
    // φ(b_i b_j) = φ(b_i) φ(b_j)
    let mut polys: Vec<Quadratic> = Vec::new();
    for c in 0..n {
        let (a, b) = (&d1.objects[c], &d2.objects[c]);
        for i in 0..a.dim() {
            for j in i..a.dim() {
                for k in 0..b.dim() {
                    let mut p = Quadratic::default();
                    for l in 0..a.dim() {
                        if !a.mult[i][j][l].is_zero() {
                            p.add_affine(at(c, k, l), &a.mult[i][j][l]);
                        }
                    }
                    for u in 0..b.dim() {
                        for w in 0..b.dim() {
                            if !b.mult[u][w][k].is_zero() {
                                let neg = -&b.mult[u][w][k];
                                p.add_product(at(c, u, i), at(c, w, j), &neg);
                            }
                        }
                    }
                    p.prune();
                    if !p.is_zero() {
                        polys.push(p);
                    }
                }
            }
        }
    }
    let solutions = solve_quadratic_system(polys, params)?;
    Ok(solutions
        .into_iter()
        .map(|t| {
            let values: Vec<Q> = affine.iter().map(|a| a.eval(&t)).collect();
            (0..n)
                .map(|c| {
                    let mut phi = QMatrix::zeros(d2.objects[c].dim(), d1.objects[c].dim());
                    for (&(k, i), &v) in &var_at[c] {
                        phi.set(k, i, values[v].clone());
                    }
                    phi
                })
                .collect()
        })
        .collect())
}

#[derive(Debug, Clone, Default, PartialEq)]
struct Affine {
    c: Q,
    lin: BTreeMap<usize, Q>,
}

impl Affine {
    fn constant(c: Q) -> Self {
        Affine { c, lin: BTreeMap::new() }
    }

    fn eval(&self, t: &[Q]) -> Q {
        self.lin.iter().fold(self.c.clone(), |acc, (&p, x)| acc + x * &t[p])
    }
}

/// A polynomial of degree at most two.
#[derive(Debug, Clone, Default, PartialEq)]
struct Quadratic {
    c: Q,
    lin: BTreeMap<usize, Q>,
    quad: BTreeMap<(usize, usize), Q>,
}

impl Quadratic {
    fn add_affine(&mut self, a: &Affine, k: &Q) {
        self.c += &a.c * k;
        for (&p, x) in &a.lin {
            *self.lin.entry(p).or_insert_with(Q::zero) += x * k;
        }
    }

    fn add_product(&mut self, a: &Affine, b: &Affine, k: &Q) {
        self.c += &a.c * &b.c * k;
        for (&p, x) in &a.lin {
            *self.lin.entry(p).or_insert_with(Q::zero) += x * &b.c * k;
        }
        for (&p, x) in &b.lin {
            *self.lin.entry(p).or_insert_with(Q::zero) += x * &a.c * k;
        }
        for (&p, x) in &a.lin {
            for (&r, y) in &b.lin {
                let key = (p.min(r), p.max(r));
                *self.quad.entry(key).or_insert_with(Q::zero) += x * y * k;
            }
        }
    }

    fn prune(&mut self) {
        self.lin.retain(|_, x| !x.is_zero());
        self.quad.retain(|_, x| !x.is_zero());
    }

    fn is_zero(&self) -> bool {
        self.c.is_zero() && self.lin.is_empty() && self.quad.is_empty()
    }

    fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.lin.keys().copied().collect();
        for &(a, b) in self.quad.keys() {
            v.push(a);
            v.push(b);
        }
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Substitutes `t_var = value`.
    fn substitute(&self, var: usize, value: &Affine) -> Quadratic {
        let mut out = Quadratic {
            c: self.c.clone(),
            ..Default::default()
        };
        let var_affine = |p: usize| -> Affine {
            if p == var {
                value.clone()
            } else {
                Affine {
                    c: Q::zero(),
                    lin: BTreeMap::from([(p, Q::one())]),
                }
            }
        };
        for (&p, x) in &self.lin {
            out.add_affine(&var_affine(p), x);
        }
        for (&(a, b), x) in &self.quad {
            out.add_product(&var_affine(a), &var_affine(b), x);
        }
        out.prune();
        out
    }
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Q::new(root(x.numer())?, root(x.denom())?))
}

/// Rational roots of `a t² + b t + c` with `a ≠ 0`, ascending.
fn rational_roots(a: &Q, b: &Q, c: &Q) -> Vec<Q> {
    let disc = b * b - q(4) * a * c;
    let Some(s) = rational_sqrt(&disc) else {
        return Vec::new();
    };
    let two_a = q(2) * a;
    let mut roots = vec![(-b - &s) / &two_a, (-b + &s) / &two_a];
    roots.sort();
    roots.dedup();
    roots
}

fn solve_quadratic_system(polys: Vec<Quadratic>, params: usize) -> Result<Vec<Vec<Q>>> {
    let mut out = Vec::new();
    solve_rec(polys, params, Vec::new(), &mut out)?;
    out.sort();
    out.dedup();
    Ok(out)
}

fn solve_rec(polys: Vec<Quadratic>, params: usize, subs: Vec<(usize, Affine)>, out: &mut Vec<Vec<Q>>) -> Result<()> {
    let mut polys: Vec<Quadratic> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    if polys.iter().any(|p| p.lin.is_empty() && p.quad.is_empty()) {
        return Ok(());
    }
    if polys.is_empty() {
        if subs.len() < params {
            return Err(Error::UnboundedSearch("the algebra maps form a positive-dimensional family".into()));
        }
        let mut t = vec![Q::zero(); params];
        for (v, a) in subs.iter().rev() {
            t[*v] = a.eval(&t);
        }
        out.push(t);
        return Ok(());
    }
    let substitute_all = |polys: &[Quadratic], var: usize, value: &Affine| -> Vec<Quadratic> {
        polys.iter().map(|p| p.substitute(var, value)).collect()
    };
    // a linear equation eliminates one unknown
    if let Some(pos) = polys.iter().position(|p| p.quad.is_empty()) {
        let p = polys.swap_remove(pos);
        let (&var, coeff) = p.lin.iter().next().expect("nonconstant");
        let coeff = coeff.clone();
        let mut value = Affine {
            c: -&p.c / &coeff,
            lin: BTreeMap::new(),
        };
        for (&u, x) in &p.lin {
            if u != var {
                value.lin.insert(u, -x / &coeff);
            }
        }
        let rest = substitute_all(&polys, var, &value);
        let mut subs = subs;
        subs.push((var, value));
        return solve_rec(rest, params, subs, out);
    }
    // a univariate quadratic branches over its rational roots
    if let Some(pos) = polys.iter().position(|p| p.variables().len() == 1) {
        let p = polys.swap_remove(pos);
        let var = p.variables()[0];
        let a = p.quad.get(&(var, var)).cloned().unwrap_or_else(Q::zero);
        let b = p.lin.get(&var).cloned().unwrap_or_else(Q::zero);
        for r in rational_roots(&a, &b, &p.c) {
            let value = Affine::constant(r);
            let rest = substitute_all(&polys, var, &value);
            let mut subs = subs.clone();
            subs.push((var, value));
            solve_rec(rest, params, subs, out)?;
        }
        return Ok(());
    }
    Err(Error::UnboundedSearch("multivariate quadratic conditions without a linear or univariate equation".into()))
}
