//! Degreewise realization of presented algebras: per-degree bases of
//! Λ(generators)/(relations) up to a cutoff, structure constants, and
//! differential matrices, all by exact rational row reduction.
//!
//! In each degree d the ideal's subspace is spanned by every product of a
//! relation with a complementary-degree monomial. Row-reducing that span
//! with pivot columns scanned from the lexicographically greatest monomial
//! downward leaves the lexicographically least monomials as the quotient
//! basis, so bases are deterministic without any term-order machinery.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{derivation_apply, free_basis_in_degree, mono_mul, Element, GenSet, Monomial};
use crate::error::{Error, Result};
use crate::linalg;
use crate::presentation::Presentation;
use crate::scalar::{self, Scalar};

#[derive(Debug)]
struct DegreeData {
    free_basis: Vec<Monomial>,
    /// Row-reduced span of the ideal in this degree (possibly empty).
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<(usize, usize)>,
    /// Non-pivot monomials, ascending: the quotient basis.
    basis: Vec<Monomial>,
    basis_pos: BTreeMap<Monomial, usize>,
}

/// A presented algebra realized degreewise up to a cutoff: per-degree
/// bases, normal forms, structure constants, and (for CDGA presentations)
/// differential matrices.
#[derive(Debug)]
pub struct AlgebraData {
    pres: Presentation,
    cutoff: usize,
    degrees: Vec<DegreeData>,
    mult: BTreeMap<(usize, usize, usize, usize), Element>,
    /// `diff[d]`: matrix of the differential from degree d to d+1 in the
    /// quotient bases, rows indexed by the degree-d basis. Present only
    /// when the presentation carries a differential; length = cutoff.
    diff: Option<Vec<Vec<Vec<Scalar>>>>,
}

/// Realizes a presentation degreewise up to degree `cutoff`. When the
/// presentation carries a differential this also checks, through the
/// cutoff, that the ideal is preserved and that d∘d = 0.
pub fn realize(pres: &Presentation, cutoff: usize) -> Result<AlgebraData> {
    let gens = &pres.gens;
    let mut degrees = Vec::with_capacity(cutoff + 1);
    for d in 0..=cutoff {
        let free_basis = free_basis_in_degree(gens, d);
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for rel in &pres.relations {
            let e = rel
                .homogeneous_degree(gens)
                .expect("presentation relations are homogeneous");
            if e > d {
                continue;
            }
            for m in free_basis_in_degree(gens, d - e) {
                let prod = rel.mul(&Element::from_monomial(m, scalar::one()), gens);
                if prod.is_zero() {
                    continue;
                }
                rows.push(to_dense(&prod, &free_basis));
            }
        }
        let order: Vec<usize> = (0..free_basis.len()).rev().collect();
        let pivots = linalg::rref_in_order(&mut rows, &order);
        rows.truncate(pivots.len());
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let basis: Vec<Monomial> = free_basis
            .iter()
            .enumerate()
            .filter(|(i, _)| !pivot_cols.contains(i))
            .map(|(_, m)| m.clone())
            .collect();
        let basis_pos = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        degrees.push(DegreeData { free_basis, rows, pivots, basis, basis_pos });
    }

    let mut data = AlgebraData { pres: pres.clone(), cutoff, degrees, mult: BTreeMap::new(), diff: None };

    let mut mult = BTreeMap::new();
    for d1 in 1..cutoff {
        for d2 in 1..=(cutoff - d1) {
            for i1 in 0..data.degrees[d1].basis.len() {
                for i2 in 0..data.degrees[d2].basis.len() {
                    let m1 = &data.degrees[d1].basis[i1];
                    let m2 = &data.degrees[d2].basis[i2];
                    let prod = match mono_mul(&data.pres.gens, m1, m2) {
                        Some((sign, m)) => Element::from_monomial(m, scalar::from_int(sign as i64)),
                        None => Element::zero(),
                    };
                    let nf = data.normal_form(&prod)?;
                    mult.insert((d1, i1, d2, i2), nf);
                }
            }
        }
    }
    data.mult = mult;

    if pres.has_differential() {
        data.check_differential()?;
        data.diff = Some(data.build_diff_matrices()?);
    }
    Ok(data)
}

fn to_dense(e: &Element, free_basis: &[Monomial]) -> Vec<Scalar> {
    let mut row = vec![scalar::zero(); free_basis.len()];
    for (m, c) in e.terms() {
        let i = free_basis
            .binary_search(m)
            .expect("monomial of the right degree is in the free basis");
        row[i] = c.clone();
    }
    row
}

impl AlgebraData {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn gens(&self) -> &GenSet {
        &self.pres.gens
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn has_differential(&self) -> bool {
        self.diff.is_some()
    }

    /// Graded dimensions β_0..β_cutoff of the quotient.
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.basis.len()).collect()
    }

    pub fn dim(&self, d: usize) -> usize {
        self.degrees.get(d).map_or(0, |dd| dd.basis.len())
    }

    /// Quotient basis in degree d, as representing monomials, ascending.
    pub fn basis(&self, d: usize) -> &[Monomial] {
        &self.degrees[d].basis
    }

    /// The representing monomial of basis element (d, i).
    pub fn representative(&self, d: usize, i: usize) -> &Monomial {
        &self.degrees[d].basis[i]
    }

    /// Display string of basis element (d, i), e.g. "x^2" or "1".
    pub fn label(&self, d: usize, i: usize) -> String {
        self.degrees[d].basis[i].display(&self.pres.gens)
    }

    /// Canonical coset representative: rewrites an element of the free
    /// algebra as a combination of quotient-basis monomials. Errors when a
    /// term's degree exceeds the cutoff.
    pub fn normal_form(&self, e: &Element) -> Result<Element> {
        let mut out = Element::zero();
        let mut by_degree: BTreeMap<usize, Element> = BTreeMap::new();
        for (m, c) in e.terms() {
            let d = m.degree(&self.pres.gens);
            if d > self.cutoff {
                return Err(Error::CutoffExceeded { needed: d, cutoff: self.cutoff });
            }
            by_degree
                .entry(d)
                .or_insert_with(Element::zero)
                .add_term(m.clone(), c.clone());
        }
        for (d, part) in by_degree {
            let dd = &self.degrees[d];
            if dd.rows.is_empty() {
                out = out.add(&part);
                continue;
            }
            let mut v = to_dense(&part, &dd.free_basis);
            linalg::reduce_row(&dd.rows, &dd.pivots, &mut v);
            for (i, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    out.add_term(dd.free_basis[i].clone(), c);
                }
            }
        }
        Ok(out)
    }

    /// Coordinates of a normal-form element's degree-d part in the
    /// degree-d quotient basis.
    pub fn coordinates(&self, e: &Element, d: usize) -> Result<Vec<Scalar>> {
        let nf = self.normal_form(e)?;
        let dd = &self.degrees[d];
        let mut v = vec![scalar::zero(); dd.basis.len()];
        for (m, c) in nf.terms() {
            if m.degree(&self.pres.gens) != d {
                continue;
            }
            let i = *dd
                .basis_pos
                .get(m)
                .expect("normal form is supported on the quotient basis");
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Normal-form element as a list of ((degree, index), coefficient)
    /// pairs over the quotient basis.
    pub fn to_labels(&self, e: &Element) -> Result<Vec<((usize, usize), Scalar)>> {
        let nf = self.normal_form(e)?;
        let mut out = Vec::new();
        for (m, c) in nf.terms() {
            let d = m.degree(&self.pres.gens);
            let i = *self.degrees[d]
                .basis_pos
                .get(m)
                .expect("normal form is supported on the quotient basis");
            out.push(((d, i), c.clone()));
        }
        Ok(out)
    }

    /// Product of basis elements (d1, i1)·(d2, i2) in normal form. Products
    /// landing above the cutoff are an error, never silently zero.
    pub fn mult(&self, d1: usize, i1: usize, d2: usize, i2: usize) -> Result<Element> {
        if d1 + d2 > self.cutoff {
            return Err(Error::CutoffExceeded { needed: d1 + d2, cutoff: self.cutoff });
        }
        if d1 == 0 {
            return Ok(Element::from_monomial(
                self.degrees[d2].basis[i2].clone(),
                scalar::one(),
            ));
        }
        if d2 == 0 {
            return Ok(Element::from_monomial(
                self.degrees[d1].basis[i1].clone(),
                scalar::one(),
            ));
        }
        Ok(self.mult[&(d1, i1, d2, i2)].clone())
    }

    /// Differential image of basis element (d, i) in normal form; requires
    /// a differential and d + 1 ≤ cutoff.
    pub fn d_of_basis(&self, d: usize, i: usize) -> Result<Element> {
        if d + 1 > self.cutoff {
            return Err(Error::CutoffExceeded { needed: d + 1, cutoff: self.cutoff });
        }
        let img = self.d_free(&Element::from_monomial(
            self.degrees[d].basis[i].clone(),
            scalar::one(),
        ));
        self.normal_form(&img)
    }

    /// Matrix of the differential from degree d to d+1 in the quotient
    /// bases (rows = degree-d basis), when available.
    pub fn d_matrix(&self, d: usize) -> Option<&Vec<Vec<Scalar>>> {
        self.diff.as_ref().and_then(|m| m.get(d))
    }

    fn gen_images(&self) -> Vec<Element> {
        (0..self.pres.gens.len()).map(|i| self.pres.d_of(i)).collect()
    }

    fn d_free(&self, e: &Element) -> Element {
        derivation_apply(&self.pres.gens, &self.gen_images(), e)
    }

    fn check_differential(&self) -> Result<()> {
        let gens = &self.pres.gens;
        let images = self.gen_images();
        for rel in &self.pres.relations {
            let e = rel.homogeneous_degree(gens).unwrap();
            if e + 1 > self.cutoff {
                continue;
            }
            let img = derivation_apply(gens, &images, rel);
            if !self.normal_form(&img)?.is_zero() {
                return Err(Error::InvalidDifferential(format!(
                    "d({}) does not lie in the relation ideal",
                    rel.display(gens)
                )));
            }
        }
        for i in 0..gens.len() {
            if gens.degree(i) + 2 > self.cutoff {
                continue;
            }
            let dd = derivation_apply(gens, &images, &images[i]);
            if !self.normal_form(&dd)?.is_zero() {
                return Err(Error::InvalidDifferential(format!(
                    "d(d({})) ≠ 0",
                    gens.get(i).name
                )));
            }
        }
        Ok(())
    }

    fn build_diff_matrices(&self) -> Result<Vec<Vec<Vec<Scalar>>>> {
        let mut out = Vec::with_capacity(self.cutoff);
        for d in 0..self.cutoff {
            let mut mat = Vec::with_capacity(self.degrees[d].basis.len());
            for i in 0..self.degrees[d].basis.len() {
                let img = self.d_of_basis(d, i)?;
                mat.push(element_coords(&img, &self.degrees[d + 1]));
            }
            out.push(mat);
        }
        Ok(out)
    }
}

fn element_coords(nf: &Element, dd: &DegreeData) -> Vec<Scalar> {
    let mut v = vec![scalar::zero(); dd.basis.len()];
    for (m, c) in nf.terms() {
        let i = *dd
            .basis_pos
            .get(m)
            .expect("normal form is supported on the quotient basis");
        v[i] = c.clone();
    }
    v
}
