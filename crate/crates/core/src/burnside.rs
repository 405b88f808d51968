//! The rational Burnside ring, read through the table of marks.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::gsets::{table_of_marks, GSet};
use crate::linalg::{format_q, q, QMatrix, Q};

/// A rational combination of the basis `[G/H_i]`, one coefficient per
/// subgroup class.
#[derive(Clone, PartialEq, Eq)]
pub struct BurnsideElement {
    group: Arc<FiniteGroup>,
    coeffs: Vec<Q>,
}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}[G/H{}]", format_q(c), i))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl BurnsideElement {
    pub fn new(group: Arc<FiniteGroup>, coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() != group.num_classes() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} subgroup classes",
                coeffs.len(),
                group.num_classes()
            )));
        }
        Ok(BurnsideElement { group, coeffs })
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let n = group.num_classes();
        BurnsideElement {
            group,
            coeffs: vec![Q::zero(); n],
        }
    }

    /// The basis element `[G/H_class]`.
    pub fn basis(group: Arc<FiniteGroup>, class: usize) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[class] = Q::one();
        x
    }

    /// `[G/G]`.
    pub fn one(group: Arc<FiniteGroup>) -> Self {
        let top = group.num_classes() - 1;
        Self::basis(group, top)
    }

    pub fn from_gset(x: &GSet) -> Self {
        let mut e = Self::zero(x.group().clone());
        for o in x.orbits() {
            e.coeffs[o.class] += Q::one();
        }
        e
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, class: usize) -> &Q {
        &self.coeffs[class]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_group(self, other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(BurnsideElement {
            group: self.group.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_group(self, other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(BurnsideElement {
            group: self.group.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, k: &Q) -> Self {
        BurnsideElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }
}

fn same_group(a: &BurnsideElement, b: &BurnsideElement) -> Result<()> {
    if Arc::ptr_eq(&a.group, &b.group) || *a.group == *b.group {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// Table of marks and product structure constants of one group.
pub struct BurnsideRing {
    group: Arc<FiniteGroup>,
    marks: QMatrix,
    marks_inverse: QMatrix,
    /// `structure[i][j][k]`: multiplicity of `G/H_k` in `G/H_i × G/H_j`.
    structure: Vec<Vec<Vec<usize>>>,
}

impl fmt::Debug for BurnsideRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BurnsideRing(rank {})", self.rank())
    }
}

impl BurnsideRing {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        let t = table_of_marks(&group);
        let n = t.len();
        let marks = QMatrix::from_rows(
            t.iter().map(|r| r.iter().map(|&m| q(m as i64)).collect()).collect(),
            n,
        )
        .expect("square table");
        let marks_inverse = marks.inverse().expect("the table of marks is invertible");
        let orbits: Vec<GSet> = (0..n).map(|c| GSet::orbit_of_class(group.clone(), c)).collect();
        let structure = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut row = vec![0; n];
                        for (c, m) in orbits[i].product(&orbits[j]).expect("same group").orbit_tags() {
                            row[c] = m;
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        BurnsideRing {
            group,
            marks,
            marks_inverse,
            structure,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.marks.rows()
    }

    /// Row `i`, column `j`: `|(G/H_i)^{H_j}|`.
    pub fn table_of_marks(&self) -> &QMatrix {
        &self.marks
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> usize {
        self.structure[i][j][k]
    }

    fn check(&self, x: &BurnsideElement) -> Result<()> {
        if *x.group == *self.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn marks(&self, x: &BurnsideElement) -> Result<Vec<Q>> {
        self.check(x)?;
        Ok(self.marks.transpose().apply(&x.coeffs))
    }

    /// The element with the given marks.
    pub fn from_marks(&self, marks: &[Q]) -> Result<BurnsideElement> {
        if marks.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!("{} marks for rank {}", marks.len(), self.rank())));
        }
        let coeffs = self.marks_inverse.transpose().apply(marks);
        BurnsideElement::new(self.group.clone(), coeffs)
    }

    pub fn multiply(&self, x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement> {
        self.check(x)?;
        self.check(y)?;
        let n = self.rank();
        let mut out = vec![Q::zero(); n];
        for i in (0..n).filter(|&i| !x.coeffs[i].is_zero()) {
            for j in (0..n).filter(|&j| !y.coeffs[j].is_zero()) {
                let c = &x.coeffs[i] * &y.coeffs[j];
                for (k, &m) in self.structure[i][j].iter().enumerate() {
                    if m != 0 {
                        out[k] += &c * q(m as i64);
                    }
                }
            }
        }
        BurnsideElement::new(self.group.clone(), out)
    }

    /// `e_H` with marks the indicator of the class of `H`, for each class.
    pub fn rational_idempotents(&self) -> Vec<BurnsideElement> {
        let n = self.rank();
        (0..n)
            .map(|h| {
                let mut delta = vec![Q::zero(); n];
                delta[h] = Q::one();
                self.from_marks(&delta).expect("rank matches")
            })
            .collect()
    }
}

pub fn marks(x: &BurnsideElement) -> Vec<Q> {
    BurnsideRing::new(x.group.clone()).marks(x).expect("same group")
}

pub fn multiply(x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement> {
    same_group(x, y)?;
    BurnsideRing::new(x.group.clone()).multiply(x, y)
}

pub fn rational_idempotents(g: &Arc<FiniteGroup>) -> Vec<BurnsideElement> {
    BurnsideRing::new(g.clone()).rational_idempotents()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::q_frac;
    use crate::span::{compose, hom_set, Span, TripleConstraint};

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn marks_examples() {
        let c2 = corpus::cyclic(2);
        let r = BurnsideRing::new(c2.clone());
        assert_eq!(r.table_of_marks(), &QMatrix::from_i64(&[&[2, 0], &[1, 1]]));
        assert_eq!(r.marks(&BurnsideElement::basis(c2.clone(), 0)).unwrap(), qs(&[2, 0]));
        let s3 = corpus::symmetric(3);
        let r = BurnsideRing::new(s3.clone());
        assert_eq!(r.marks(&BurnsideElement::basis(s3.clone(), 2)).unwrap(), qs(&[2, 0, 2, 0]));
        for (_, g) in corpus::groups_up_to(12) {
            let r = BurnsideRing::new(g.clone());
            assert_eq!(r.marks(&BurnsideElement::one(g.clone())).unwrap(), vec![q(1); r.rank()]);
        }
    }

    #[test]
    fn multiply_examples() {
        let c2 = corpus::cyclic(2);
        let r = BurnsideRing::new(c2.clone());
        let free = BurnsideElement::basis(c2.clone(), 0);
        assert_eq!(r.multiply(&free, &free).unwrap(), free.scale(&q(2)));
        let s3 = corpus::symmetric(3);
        let r = BurnsideRing::new(s3.clone());
        let a = BurnsideElement::basis(s3.clone(), 1);
        let b = BurnsideElement::basis(s3.clone(), 2);
        assert_eq!(r.multiply(&a, &b).unwrap(), BurnsideElement::basis(s3.clone(), 0));
        assert_eq!(r.multiply(&a, &BurnsideElement::one(s3.clone())).unwrap(), a);
        assert_eq!(multiply(&a, &free).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn marks_are_multiplicative() {
        for (name, g) in corpus::groups_up_to(12) {
            let r = BurnsideRing::new(g.clone());
            let n = r.rank();
            for i in 0..n {
                for j in 0..n {
                    let (x, y) = (BurnsideElement::basis(g.clone(), i), BurnsideElement::basis(g.clone(), j));
                    let lhs = r.marks(&r.multiply(&x, &y).unwrap()).unwrap();
                    let mx = r.marks(&x).unwrap();
                    let my = r.marks(&y).unwrap();
                    let rhs: Vec<Q> = mx.iter().zip(&my).map(|(a, b)| a * b).collect();
                    assert_eq!(lhs, rhs, "{name} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn idempotent_examples() {
        let one = rational_idempotents(&corpus::trivial());
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].coeffs(), &[q(1)]);
        let c2 = corpus::cyclic(2);
        let e = rational_idempotents(&c2);
        assert_eq!(e[0].coeffs(), &[q_frac(1, 2), q(0)]);
        assert_eq!(e[1].coeffs(), &[q_frac(-1, 2), q(1)]);
    }

    #[test]
    fn idempotents_are_orthogonal_and_complete() {
        for (name, g) in corpus::groups_up_to(12) {
            let r = BurnsideRing::new(g.clone());
            let e = r.rational_idempotents();
            let mut total = BurnsideElement::zero(g.clone());
            for (i, a) in e.iter().enumerate() {
                total = total.add(a).unwrap();
                for (j, b) in e.iter().enumerate() {
                    let p = r.multiply(a, b).unwrap();
                    if i == j {
                        assert_eq!(&p, a, "{name}");
                    } else {
                        assert!(p.is_zero(), "{name}");
                    }
                }
            }
            assert_eq!(total, BurnsideElement::one(g.clone()), "{name}");
        }
    }

    /// Closed form `e_H = 1/|N_G(H)| Σ_{K ≤ H} |K| μ(K, H) [G/K]`, with the
    /// Möbius function of the subgroup lattice.
    fn closed_form(g: &Arc<FiniteGroup>, class: usize) -> Vec<Q> {
        let subs = g.subgroups();
        let h = g.class(class).representative;
        let below: Vec<usize> = (0..subs.len()).filter(|&k| subs[k].is_subset_of(&subs[h])).collect();
        // μ(K, H) computed top-down
        let mut mu = vec![0i64; subs.len()];
        mu[h] = 1;
        let mut order = below.clone();
        order.sort_by_key(|&k| std::cmp::Reverse(subs[k].order()));
        for &k in &order {
            if k == h {
                continue;
            }
            mu[k] = -below
                .iter()
                .filter(|&&m| m != k && subs[k].is_subset_of(&subs[m]))
                .map(|&m| mu[m])
                .sum::<i64>();
        }
        let mut coeffs = vec![Q::zero(); g.num_classes()];
        for &k in &below {
            coeffs[g.class_of(k)] += q(subs[k].order() as i64 * mu[k]);
        }
        let n = g.class(class).normalizer.len() as i64;
        coeffs.iter().map(|c| c / q(n)).collect()
    }

    #[test]
    fn idempotents_match_closed_form() {
        for (name, g) in corpus::groups_up_to(12) {
            let e = rational_idempotents(&g);
            for (c, x) in e.iter().enumerate() {
                assert_eq!(x.coeffs(), closed_form(&g, c).as_slice(), "{name} class {c}");
            }
        }
    }

    #[test]
    fn span_composition_realizes_multiplication() {
        for g in [corpus::cyclic(2), corpus::symmetric(3), corpus::cyclic(4)] {
            let r = BurnsideRing::new(g.clone());
            let top = GSet::orbit_of_class(g.clone(), g.num_classes() - 1);
            let basis = hom_set(&top, &top, &TripleConstraint::all()).unwrap();
            assert_eq!(basis.len(), r.rank());
            let element = |s: &Span| BurnsideElement::from_gset(s.apex());
            for a in &basis {
                for b in &basis {
                    let c = compose(a, b).unwrap();
                    let via_spans = r.marks(&element(&c)).unwrap();
                    let via_products = r.marks(&r.multiply(&element(a), &element(b)).unwrap()).unwrap();
                    assert_eq!(via_spans, via_products);
                }
            }
        }
    }
}
