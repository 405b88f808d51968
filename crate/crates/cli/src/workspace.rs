//! Loading files into validated core objects, and writing them back.
//!
//! Every loaded object is keyed by the SHA-256 of its canonical
//! serialization, so the same group reached through different files or
//! references is built once.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use eqalg_core::burnside::BurnsideElement;
use eqalg_core::corpus;
use eqalg_core::group::{load_group, FiniteGroup, GroupSpec, Limits};
use eqalg_core::gsets::GSet;
use eqalg_core::indexing::{norm_category, PairSpace, TransferSystem};
use eqalg_core::mackey::MackeyFunctor;
use eqalg_core::normed::{GradedAlgebra, NormedAlgebraDiagram};
use eqalg_core::span::Span;
use eqalg_core::Q;
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::format::*;

/// Hex SHA-256 of the canonical serialization.
pub fn digest<T: Serialize>(value: &T) -> String {
    let hash = Sha256::digest(to_canonical(value).as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

/// A loaded object with the digest of the file it came from.
#[derive(Debug, Clone)]
pub struct Loaded<T> {
    pub value: T,
    pub digest: String,
}

pub struct Workspace {
    limits: Limits,
    groups: HashMap<String, Arc<FiniteGroup>>,
}

impl Default for Workspace {
    fn default() -> Self {
        Self::new(Limits::from_env())
    }
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn orbit_tags(entries: &[OrbitEntry], g: &FiniteGroup) -> Result<Vec<(usize, usize)>, CliError> {
    entries
        .iter()
        .map(|e| {
            if e.stabilizer_class >= g.num_classes() {
                Err(CliError::Malformed(format!("no subgroup class {}", e.stabilizer_class)))
            } else {
                Ok((e.stabilizer_class, e.multiplicity))
            }
        })
        .collect()
}

fn orbit_entries(x: &GSet) -> Vec<OrbitEntry> {
    x.orbit_tags()
        .into_iter()
        .map(|(stabilizer_class, multiplicity)| OrbitEntry {
            stabilizer_class,
            multiplicity,
        })
        .collect()
}

fn pair_triples(space: &PairSpace, pairs: &[Vec<usize>]) -> Result<Vec<(usize, usize, usize)>, CliError> {
    let n = space.group().num_classes();
    pairs
        .iter()
        .map(|p| {
            let t = match p.as_slice() {
                [k, h] => (*k, *h, 0),
                [k, h, v] => (*k, *h, *v),
                _ => return Err(CliError::Malformed(format!("pair {p:?} needs two or three entries"))),
            };
            if t.0 >= n || t.1 >= n || space.find_label(t.0, t.1, t.2).is_none() {
                return Err(CliError::Malformed(format!("{p:?} is not a proper subgroup pair of this group")));
            }
            Ok(t)
        })
        .collect()
}

pub fn pair_list(t: &TransferSystem) -> Vec<Vec<usize>> {
    let space = t.space();
    t.class_pairs()
        .into_iter()
        .map(|(k, h, v)| if space.is_ambiguous(k, h) { vec![k, h, v] } else { vec![k, h] })
        .collect()
}

impl Workspace {
    pub fn new(limits: Limits) -> Self {
        Workspace {
            limits,
            groups: HashMap::new(),
        }
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    fn group_from_spec(&mut self, spec: &GroupSpec) -> Result<Arc<FiniteGroup>, CliError> {
        let key = digest(spec);
        if let Some(g) = self.groups.get(&key) {
            return Ok(g.clone());
        }
        let g = load_group(spec, self.limits)?;
        self.groups.insert(key, g.clone());
        Ok(g)
    }

    /// Resolves a reference found in a file living in `base`.
    pub fn resolve(&mut self, r: &GroupRef, base: &Path) -> Result<Arc<FiniteGroup>, CliError> {
        match r {
            GroupRef::Spec(spec) => self.group_from_spec(spec),
            GroupRef::Name(name) => {
                if let Some(g) = corpus::by_name(name) {
                    if g.order() > self.limits.max_group_order {
                        return Err(eqalg_core::Error::OrderCapExceeded {
                            order: g.order(),
                            cap: self.limits.max_group_order,
                        }
                        .into());
                    }
                    return Ok(g);
                }
                let path = base.join(name);
                if !path.is_file() {
                    return Err(CliError::Malformed(format!("{name:?} is neither a built-in group nor a file")));
                }
                let spec: GroupSpec = read_json(&path)?;
                self.group_from_spec(&spec)
            }
        }
    }

    pub fn load_group(&mut self, path: &Path) -> Result<Loaded<Arc<FiniteGroup>>, CliError> {
        let spec: GroupSpec = read_json(path)?;
        Ok(Loaded {
            digest: digest(&spec),
            value: self.group_from_spec(&spec)?,
        })
    }

    pub fn load_gset(&mut self, path: &Path) -> Result<Loaded<GSet>, CliError> {
        let file: GSetFile = read_json(path)?;
        Ok(Loaded {
            digest: digest(&file),
            value: self.gset(&file, &base_dir(path))?,
        })
    }

    pub fn gset(&mut self, file: &GSetFile, base: &Path) -> Result<GSet, CliError> {
        let g = self.resolve(&file.group, base)?;
        match &file.body {
            GSetBody::Orbits { orbits } => Ok(GSet::from_tags(g.clone(), &orbit_tags(orbits, &g)?)),
            GSetBody::Action { size, action } => {
                if action.len() != g.order() || action.iter().any(|row| row.len() != *size) {
                    return Err(CliError::Malformed("action table must have one row of length size per element".into()));
                }
                let flat: Vec<usize> = action.concat();
                let x = GSet::from_action(g, *size, flat)?;
                Ok(x.canonicalize().0)
            }
        }
    }

    pub fn load_span(&mut self, path: &Path) -> Result<Loaded<Span>, CliError> {
        let file: SpanFile = read_json(path)?;
        let g = self.resolve(&file.group, &base_dir(path))?;
        let side = |entries: &[OrbitEntry]| -> Result<GSet, CliError> { Ok(GSet::from_tags(g.clone(), &orbit_tags(entries, &g)?)) };
        let (left, apex, right) = (side(&file.left)?, side(&file.apex)?, side(&file.right)?);
        let value = Span::from_parts(left, apex, right, file.back.clone(), file.fwd.clone())?;
        Ok(Loaded {
            digest: digest(&file),
            value,
        })
    }

    pub fn load_burnside(&mut self, path: &Path) -> Result<Loaded<BurnsideElement>, CliError> {
        let file: BurnsideFile = read_json(path)?;
        let g = self.resolve(&file.group, &base_dir(path))?;
        let mut coeffs = vec![Q::default(); g.num_classes()];
        for (k, v) in &file.coeffs {
            let c: usize = k.parse().map_err(|_| CliError::Malformed(format!("class index {k:?}")))?;
            if c >= coeffs.len() {
                return Err(CliError::Malformed(format!("no subgroup class {c}")));
            }
            coeffs[c] = parse_rational(v)?;
        }
        Ok(Loaded {
            digest: digest(&file),
            value: BurnsideElement::new(g, coeffs)?,
        })
    }

    /// Shapes are checked here; the axioms are left to the caller so the
    /// report can be shown.
    pub fn load_mackey(&mut self, path: &Path) -> Result<Loaded<MackeyFunctor>, CliError> {
        let file: MackeyFile = read_json(path)?;
        let g = self.resolve(&file.group, &base_dir(path))?;
        let dims = &file.dims;
        if dims.len() != g.num_classes() {
            return Err(CliError::Malformed(format!("{} dimensions for {} classes", dims.len(), g.num_classes())));
        }
        let maps = file
            .maps
            .iter()
            .map(|e| {
                if e.source >= dims.len() || e.target >= dims.len() {
                    return Err(CliError::Malformed(format!("no class {}", e.source.max(e.target))));
                }
                let r = parse_matrix(&e.res, dims[e.source], dims[e.target])?;
                let t = parse_matrix(&e.tr, dims[e.target], dims[e.source])?;
                Ok(((e.source, e.target, e.index), r, t))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(Loaded {
            digest: digest(&file),
            value: MackeyFunctor::new(g, dims.clone(), maps)?,
        })
    }

    /// Loads and checks the closure rules.
    pub fn load_transfer(&mut self, path: &Path) -> Result<Loaded<TransferSystem>, CliError> {
        let file: TransferFile = read_json(path)?;
        let g = self.resolve(&file.group, &base_dir(path))?;
        let space = PairSpace::new(g);
        let triples = pair_triples(&space, &file.pairs)?;
        Ok(Loaded {
            digest: digest(&file),
            value: TransferSystem::from_class_pairs(space, &triples, true)?,
        })
    }

    /// Loads shapes only; the functor laws are checked by the caller.
    pub fn load_diagram(&mut self, path: &Path) -> Result<Loaded<NormedAlgebraDiagram>, CliError> {
        let file: DiagramFile = read_json(path)?;
        let g = self.resolve(&file.group, &base_dir(path))?;
        let space = PairSpace::new(g);
        let t = TransferSystem::from_class_pairs(space.clone(), &pair_triples(&space, &file.pairs)?, true)?;
        let cat = Arc::new(norm_category(&t)?);
        let algebras = file
            .algebras
            .iter()
            .map(|a| algebra(a).map(Arc::new))
            .collect::<Result<Vec<_>, _>>()?;
        if algebras.len() != cat.num_objects() {
            return Err(CliError::Malformed(format!("{} algebras for {} classes", algebras.len(), cat.num_objects())));
        }
        let morphisms = file
            .morphisms
            .iter()
            .map(|e| {
                let (s, t) = (e.source, e.target);
                if s >= algebras.len() || t >= algebras.len() {
                    return Err(CliError::Malformed(format!("no class {}", s.max(t))));
                }
                Ok(((s, t, e.index), parse_matrix(&e.matrix, algebras[t].dim(), algebras[s].dim())?))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(Loaded {
            digest: digest(&file),
            value: NormedAlgebraDiagram::new(cat, algebras, morphisms)?,
        })
    }
}

/// An algebra from its file form; the algebra axioms are not checked.
pub fn algebra(a: &AlgebraFile) -> Result<GradedAlgebra, CliError> {
    let n = a.degrees.len();
    let products = a
        .products
        .iter()
        .map(|(i, j, k, c)| Ok((*i, *j, *k, parse_rational(c)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let unit = a.unit.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
    let differential = a.differential.as_ref().map(|d| parse_matrix(d, n, n)).transpose()?;
    Ok(GradedAlgebra::new_unchecked(a.degrees.clone(), &products, unit, differential)?)
}

pub fn algebra_file(a: &GradedAlgebra) -> AlgebraFile {
    AlgebraFile {
        degrees: a.degrees().to_vec(),
        products: a.products().into_iter().map(|(i, j, k, c)| (i, j, k, rational(&c))).collect(),
        unit: a.unit().iter().map(rational).collect(),
        differential: a.differential().map(matrix),
    }
}

pub fn group_file(g: &FiniteGroup) -> GroupSpec {
    g.to_spec()
}

pub fn gset_file(x: &GSet, group: GroupRef) -> GSetFile {
    GSetFile {
        group,
        body: GSetBody::Orbits { orbits: orbit_entries(x) },
    }
}

/// Fails with `Malformed` unless both ends are canonical G-sets.
pub fn span_file(s: &Span, group: GroupRef) -> Result<SpanFile, CliError> {
    if !s.left().is_canonical() || !s.right().is_canonical() {
        return Err(CliError::Malformed("span ends must be canonical G-sets".into()));
    }
    let s = s.canonical();
    Ok(SpanFile {
        group,
        left: orbit_entries(s.left()),
        apex: orbit_entries(s.apex()),
        right: orbit_entries(s.right()),
        back: s.back().to_vec(),
        fwd: s.fwd().to_vec(),
    })
}

pub fn burnside_file(a: &BurnsideElement, group: GroupRef) -> BurnsideFile {
    BurnsideFile {
        group,
        coeffs: a
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Q::default())
            .map(|(i, c)| (i.to_string(), rational(c)))
            .collect(),
    }
}

pub fn mackey_file(m: &MackeyFunctor, group: GroupRef) -> MackeyFile {
    MackeyFile {
        group,
        dims: m.dims().to_vec(),
        maps: m
            .maps()
            .into_iter()
            .map(|((source, target, index), r, t)| MackeyMapEntry {
                source,
                target,
                index,
                res: matrix(r),
                tr: matrix(t),
            })
            .collect(),
    }
}

pub fn transfer_file(t: &TransferSystem, group: GroupRef) -> TransferFile {
    TransferFile {
        group,
        pairs: pair_list(t),
    }
}

/// Needs the transfer system the diagram's category was built from.
pub fn diagram_file(d: &NormedAlgebraDiagram, t: &TransferSystem, group: GroupRef) -> DiagramFile {
    DiagramFile {
        group,
        pairs: pair_list(t),
        algebras: d.objects().iter().map(|a| algebra_file(a)).collect(),
        morphisms: d
            .assignments()
            .into_iter()
            .map(|((source, target, index), x)| MorphismEntry {
                source,
                target,
                index,
                matrix: matrix(x),
            })
            .collect(),
    }
}

