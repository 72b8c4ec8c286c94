//! Free CDGA models: differentials as derivations on free graded-commutative
//! algebras, exact cohomology and linearized homotopy, contractible-pair
//! reduction to minimal models, the symmetric-product model families, and
//! the comparison of linearized homotopy with reduced cohomology.
//!
//! A model is either complete (`complete_to = None`, its differential is an
//! exact polynomial object and every derived table is valid in all degrees)
//! or a truncation (`complete_to = Some(c)`, generator list and differential
//! trustworthy only through degree c). Truncations arise from realized
//! algebras whose basis is only enumerated up to a cutoff; every table they
//! produce carries the honest validity bound.

use std::collections::BTreeMap;

use crate::algebra::{
    derivation_apply, free_basis_in_degree, Element, GenSet, Generator, Monomial,
};
use crate::error::{Error, Result};
use crate::linalg;
use crate::newton;
use crate::presentation::Presentation;
use crate::realize::AlgebraData;
use crate::scalar::{self, Scalar};
use crate::sp::LambdaPlus;

/// Graded dimensions with an honest validity bound: `dims[d]` is
/// meaningful only for d ≤ valid_to. Truncation never masquerades as
/// vanishing.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DimTable {
    pub dims: Vec<usize>,
    pub valid_to: usize,
}

impl DimTable {
    pub fn get(&self, d: usize) -> Option<usize> {
        if d > self.valid_to {
            return None;
        }
        Some(self.dims.get(d).copied().unwrap_or(0))
    }

    /// Same table with the degree-0 entry dropped to zero.
    pub fn reduced(&self) -> DimTable {
        let mut out = self.clone();
        if !out.dims.is_empty() {
            out.dims[0] = 0;
        }
        out
    }

    /// Degreewise equality through `through`; false when either table's
    /// validity ends earlier.
    pub fn agrees_with(&self, other: &DimTable, through: usize) -> bool {
        (0..=through).all(|d| match (self.get(d), other.get(d)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        })
    }
}

/// A record of one contractible pair removed during reduction.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EliminatedPair {
    pub source: String,
    pub target: String,
    pub target_degree: usize,
}

/// A free CDGA (Λ(generators), d) with d given on generators and extended
/// by the graded Leibniz rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdgaModel {
    gens: GenSet,
    diff: Vec<Element>,
    complete_to: Option<usize>,
}

impl CdgaModel {
    /// Validates homogeneity of the generator images and d∘d = 0. For a
    /// complete model the square is checked symbolically on every
    /// generator; for a truncation only where the composite stays inside
    /// the trusted range.
    pub fn new(gens: GenSet, diff: Vec<Element>, complete_to: Option<usize>) -> Result<Self> {
        if diff.len() != gens.len() {
            return Err(Error::Invalid(
                "differential must assign one image per generator".to_string(),
            ));
        }
        for (i, img) in diff.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let want = gens.degree(i) + 1;
            if img.homogeneous_degree(&gens) != Some(want) {
                return Err(Error::InvalidDifferential(format!(
                    "d({}) must be homogeneous of degree {}",
                    gens.get(i).name,
                    want
                )));
            }
        }
        let model = CdgaModel { gens, diff, complete_to };
        for i in 0..model.gens.len() {
            if let Some(c) = complete_to {
                if model.gens.degree(i) + 2 > c {
                    continue;
                }
            }
            let dd = model.d(&model.diff[i]);
            if !dd.is_zero() {
                return Err(Error::InvalidDifferential(format!(
                    "d(d({})) = {} is nonzero",
                    model.gens.get(i).name,
                    dd.display(&model.gens)
                )));
            }
        }
        Ok(model)
    }

    /// A model from a free presentation; presentations with relations are
    /// rejected.
    pub fn from_presentation(pres: &Presentation) -> Result<Self> {
        if !pres.relations.is_empty() {
            return Err(Error::NonFree(
                "model construction requires a free presentation (no relations)".to_string(),
            ));
        }
        let gens = pres.gens.clone();
        let diff = (0..gens.len()).map(|i| pres.d_of(i)).collect();
        CdgaModel::new(gens, diff, None)
    }

    pub fn gens(&self) -> &GenSet {
        &self.gens
    }

    pub fn d_gen(&self, i: usize) -> &Element {
        &self.diff[i]
    }

    pub fn complete_to(&self) -> Option<usize> {
        self.complete_to
    }

    /// The derivation extension of the generator map.
    pub fn d(&self, e: &Element) -> Element {
        derivation_apply(&self.gens, &self.diff, e)
    }

    pub fn basis_in_degree(&self, d: usize) -> Vec<Monomial> {
        free_basis_in_degree(&self.gens, d)
    }

    /// (coefficient, generator index) pairs of the linear part of an
    /// element.
    fn linear_terms(&self, e: &Element) -> Vec<(usize, Scalar)> {
        e.terms()
            .filter_map(|(m, c)| m.as_single_generator().map(|j| (j, c.clone())))
            .collect()
    }

    /// Whether every generator image lies in the decomposables.
    pub fn is_minimal(&self) -> bool {
        self.diff.iter().all(|img| {
            img.terms().all(|(m, _)| m.as_single_generator().is_none())
        })
    }

    fn honest_bound(&self, max_degree: usize) -> usize {
        match self.complete_to {
            None => max_degree,
            Some(c) => std::cmp::min(max_degree, c.saturating_sub(1)),
        }
    }

    /// Matrix of d from the degree-d monomial basis to degree d+1.
    fn degree_matrix(&self, d: usize) -> Vec<Vec<Scalar>> {
        let rows_basis = self.basis_in_degree(d);
        let cols_basis = self.basis_in_degree(d + 1);
        let pos: BTreeMap<&Monomial, usize> =
            cols_basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::with_capacity(rows_basis.len());
        for m in &rows_basis {
            let img = self.d(&Element::from_monomial(m.clone(), scalar::one()));
            let mut row = vec![scalar::zero(); cols_basis.len()];
            for (mono, c) in img.terms() {
                row[*pos.get(mono).expect("image monomial has degree d+1")] = c.clone();
            }
            rows.push(row);
        }
        rows
    }

    /// Cohomology dimensions through `max_degree` by exact row reduction,
    /// with the honest validity bound of the model.
    pub fn cohomology(&self, max_degree: usize) -> DimTable {
        let valid_to = self.honest_bound(max_degree);
        let mut ranks = vec![0usize; valid_to + 2];
        for d in 0..=valid_to {
            ranks[d + 1] = linalg::rank(self.degree_matrix(d));
        }
        let mut dims = Vec::with_capacity(valid_to + 1);
        for d in 0..=valid_to {
            let total = self.basis_in_degree(d).len();
            dims.push(total - ranks[d + 1] - ranks[d]);
        }
        DimTable { dims, valid_to }
    }

    /// Homology of the generator spans under the linear part of the
    /// differential (decomposable terms discarded). For a minimal model
    /// this is the generator count per degree.
    pub fn linearized_homotopy(&self, max_degree: usize) -> DimTable {
        let valid_to = self.honest_bound(max_degree);
        let by_degree: Vec<Vec<usize>> = (0..=valid_to + 1)
            .map(|d| {
                (0..self.gens.len()).filter(|&i| self.gens.degree(i) == d).collect()
            })
            .collect();
        let mut ranks = vec![0usize; valid_to + 2];
        for d in 0..=valid_to {
            let cols = &by_degree[d + 1];
            let col_pos: BTreeMap<usize, usize> =
                cols.iter().enumerate().map(|(p, &i)| (i, p)).collect();
            let mut rows = Vec::new();
            for &i in &by_degree[d] {
                let mut row = vec![scalar::zero(); cols.len()];
                for (j, c) in self.linear_terms(&self.diff[i]) {
                    row[*col_pos.get(&j).expect("linear image is one degree up")] = c;
                }
                rows.push(row);
            }
            ranks[d + 1] = linalg::rank(rows);
        }
        let mut dims = Vec::with_capacity(valid_to + 1);
        for d in 0..=valid_to {
            dims.push(by_degree[d].len() - ranks[d + 1] - ranks[d]);
        }
        DimTable { dims, valid_to }
    }

    /// The lowest-ordered contractible pair: a generator u whose
    /// differential has a nonzero linear coefficient on a generator v.
    /// Ordering: (degree of v, name of v, name of u).
    fn find_pair(&self) -> Option<(usize, usize, Scalar)> {
        let mut best: Option<((usize, String, String), (usize, usize, Scalar))> = None;
        for iu in 0..self.gens.len() {
            for (iv, c) in self.linear_terms(&self.diff[iu]) {
                let key = (
                    self.gens.degree(iv),
                    self.gens.get(iv).name.clone(),
                    self.gens.get(iu).name.clone(),
                );
                if best.as_ref().map_or(true, |(k, _)| key < *k) {
                    best = Some((key, (iu, iv, c)));
                }
            }
        }
        best.map(|(_, found)| found)
    }

    /// Removes the pair (u, v) where d(u) = c·v + w: in the quotient by
    /// the acyclic ideal (u, d(u)) the generator u dies and v becomes
    /// -w/c, substituted into every remaining differential.
    fn eliminate(&self, iu: usize, iv: usize, c: &Scalar) -> Result<CdgaModel> {
        let old = &self.gens;
        let w = self.diff[iu].sub(&Element::generator(old, iv).scale(c));
        // kill u first; w never contains v (a homogeneous degree-|v| term
        // with a v factor is v itself, and the linear part was split off)
        let mut kill_u: Vec<Element> =
            (0..old.len()).map(|i| Element::generator(old, i)).collect();
        kill_u[iu] = Element::zero();
        let w = w.eval(old, &kill_u, old);
        let v_image = w.scale(&(scalar::from_int(-1) / c.clone()));

        let mut images = kill_u;
        images[iv] = v_image;
        let keep: Vec<usize> = (0..old.len()).filter(|&i| i != iu && i != iv).collect();
        let new_gens = GenSet::new(keep.iter().map(|&i| old.get(i).clone()).collect())?;
        let remap: Vec<Option<usize>> = (0..old.len())
            .map(|i| new_gens.index_of(&old.get(i).name))
            .collect();
        let mut new_diff = vec![Element::zero(); new_gens.len()];
        for &i in &keep {
            let substituted = self.diff[i].eval(old, &images, old);
            new_diff[remap[i].expect("kept generator")] =
                shrink(&substituted, old, &new_gens, &remap)?;
        }
        CdgaModel::new(new_gens, new_diff, self.complete_to)
    }

    /// Iterated contractible-pair elimination, lowest target degree first.
    /// Returns the minimal model and the removal log. The iteration bound
    /// is defensive; each step removes two generators.
    pub fn reduce(&self) -> Result<(CdgaModel, Vec<EliminatedPair>)> {
        let mut model = self.clone();
        let mut log = Vec::new();
        for _ in 0..=self.gens.len() {
            let (iu, iv, c) = match model.find_pair() {
                None => return Ok((model, log)),
                Some(p) => p,
            };
            log.push(EliminatedPair {
                source: model.gens.get(iu).name.clone(),
                target: model.gens.get(iv).name.clone(),
                target_degree: model.gens.degree(iv),
            });
            model = model.eliminate(iu, iv, &c)?;
        }
        Err(Error::SubstitutionCycle)
    }

    /// The model in presentation-DSL syntax: one `gen` statement and one
    /// `d` statement per generator with nonzero image.
    pub fn to_dsl(&self) -> String {
        let mut s = String::from("gen");
        for i in 0..self.gens.len() {
            s.push_str(&format!(" {}:{}", self.gens.get(i).name, self.gens.degree(i)));
        }
        s.push_str(";\n");
        for i in 0..self.gens.len() {
            if !self.diff[i].is_zero() {
                s.push_str(&format!(
                    "d {} = {};\n",
                    self.gens.get(i).name,
                    self.diff[i].display(&self.gens)
                ));
            }
        }
        s
    }
}

/// Re-expresses an element over a smaller generator set; errors if any
/// surviving monomial still touches a dropped generator.
fn shrink(
    e: &Element,
    old: &GenSet,
    new_gens: &GenSet,
    remap: &[Option<usize>],
) -> Result<Element> {
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        let mut exps = vec![0u32; new_gens.len()];
        for i in 0..old.len() {
            let e_i = m.exp(i);
            if e_i == 0 {
                continue;
            }
            match remap[i] {
                Some(j) => exps[j] = e_i,
                None => {
                    return Err(Error::Invalid(format!(
                        "eliminated generator {} survived substitution",
                        old.get(i).name
                    )))
                }
            }
        }
        out.add_term(Monomial::from_exps(new_gens, exps)?, c.clone());
    }
    Ok(out)
}

/// The model Λ(x, y) with deg x = 2, deg y = 2m+1 and d(y) = x^{m+1},
/// whose cohomology is Q[x]/(x^{m+1}).
pub fn cpm_model(m: usize) -> CdgaModel {
    two_gen_model(1, m + 1)
}

/// The even-sphere model Λ(x, y) with deg x = 2m, deg y = 4m-1 and
/// d(y) = x².
pub fn even_sphere_model(m: usize) -> CdgaModel {
    two_gen_model(m, 2)
}

/// The odd-sphere model Λ(y), deg y = 2m-1, zero differential.
pub fn odd_sphere_model(m: usize) -> CdgaModel {
    let gens = GenSet::new(vec![Generator::new("y", 2 * m - 1)]).unwrap();
    CdgaModel::new(gens, vec![Element::zero()], None).unwrap()
}

/// Λ(x, y) with deg x = 2r, deg y = 2rq - 1 and d(y) = x^q.
pub fn two_gen_model(r: usize, q: usize) -> CdgaModel {
    assert!(r >= 1 && q >= 2);
    let gens = GenSet::new(vec![
        Generator::new("x", 2 * r),
        Generator::new("y", 2 * r * q - 1),
    ])
    .unwrap();
    let ix = gens.index_of("x").unwrap();
    let iy = gens.index_of("y").unwrap();
    let mut diff = vec![Element::zero(); 2];
    diff[iy] = Element::generator(&gens, ix).pow(q as u32, &gens);
    CdgaModel::new(gens, diff, None).unwrap()
}

/// The free model of SP^n(Λ(x, y), d(y) = x^q), deg x = 2r: generators
/// x1..xn standing for the power classes [x^k] and y1..yn for [x^{k-1}y],
/// with d(yk) = [x^{q-1+k}], rewritten through the Newton recurrence when
/// q-1+k exceeds n.
pub fn two_gen_sp_model(r: usize, q: usize, n: usize) -> Result<CdgaModel> {
    if r < 1 || q < 2 || n < 1 {
        return Err(Error::Invalid(
            "two-generator family needs r >= 1, q >= 2, n >= 1".to_string(),
        ));
    }
    let mut gen_list = Vec::with_capacity(2 * n);
    for k in 1..=n {
        gen_list.push(Generator::new(format!("x{}", k), 2 * r * k));
        gen_list.push(Generator::new(format!("y{}", k), 2 * r * (k - 1) + 2 * r * q - 1));
    }
    let gens = GenSet::new(gen_list)?;
    let pgens = newton::power_gens(n);
    let mut diff = vec![Element::zero(); gens.len()];
    for k in 1..=n {
        let iy = gens.index_of(&format!("y{}", k)).unwrap();
        let t = q - 1 + k;
        diff[iy] = if t <= n {
            Element::generator(&gens, gens.index_of(&format!("x{}", t)).unwrap())
        } else {
            let reduced = newton::reduce_power_sum(t, n)?;
            let remap: Vec<usize> = (1..=n)
                .map(|j| {
                    let src = pgens.index_of(&format!("p{}", j)).unwrap();
                    debug_assert_eq!(src, j - 1);
                    gens.index_of(&format!("x{}", j)).unwrap()
                })
                .collect();
            let mut out = Element::zero();
            for (mono, c) in reduced.terms() {
                let mut exps = vec![0u32; gens.len()];
                for j in 1..=n {
                    exps[remap[j - 1]] = mono.exp(pgens.index_of(&format!("p{}", j)).unwrap());
                }
                out.add_term(Monomial::from_exps(&gens, exps)?, c.clone());
            }
            out
        };
    }
    CdgaModel::new(gens, diff, None)
}

/// The free model of SP^n of the odd-sphere model: a single exterior
/// class [y] with zero differential, independent of n.
pub fn odd_sphere_sp_model(m: usize, _n: usize) -> CdgaModel {
    let gens = GenSet::new(vec![Generator::new("y1", 2 * m - 1)]).unwrap();
    CdgaModel::new(gens, vec![Element::zero()], None).unwrap()
}

/// The bracket model Λ(A_+) of a realized algebra: one generator per
/// positive-degree basis label, differential the bracket of the algebra
/// differential (linear on generators). The model is a truncation valid
/// through the algebra's cutoff.
pub fn build_lambda_model(a: &AlgebraData) -> Result<CdgaModel> {
    let lambda = LambdaPlus::new(a);
    let gens = lambda.gens.clone();
    let mut diff = vec![Element::zero(); gens.len()];
    for i in 0..gens.len() {
        let (d, j) = lambda.label_of(i);
        if d + 1 > a.cutoff() {
            continue;
        }
        let img = a.d_of_basis(d, j)?;
        let mut out = Element::zero();
        for (lab, c) in a.to_labels(&img)? {
            let gi = lambda.gen_of(lab).expect("image label is a generator");
            out.add_term(Monomial::generator(&gens, gi), c);
        }
        diff[i] = out;
    }
    CdgaModel::new(gens, diff, Some(a.cutoff()))
}

/// Cohomology of a realized algebra under its differential, from the
/// realized matrices; dims equal the Betti numbers when there is no
/// differential.
pub fn algebra_cohomology(a: &AlgebraData) -> DimTable {
    if !a.has_differential() {
        return DimTable { dims: a.betti(), valid_to: a.cutoff() };
    }
    let cutoff = a.cutoff();
    let valid_to = cutoff.saturating_sub(1);
    let mut ranks = vec![0usize; valid_to + 2];
    for d in 0..=valid_to {
        ranks[d + 1] = linalg::rank(a.d_matrix(d).cloned().unwrap_or_default());
    }
    let mut dims = Vec::with_capacity(valid_to + 1);
    for d in 0..=valid_to {
        dims.push(a.dim(d) - ranks[d + 1] - ranks[d]);
    }
    DimTable { dims, valid_to }
}

/// One side-by-side comparison of linearized homotopy of Λ(A_+) with the
/// reduced cohomology of (A, d).
#[derive(Debug, Clone, serde::Serialize)]
pub struct DoldThomReport {
    pub max_degree: usize,
    pub homotopy: Vec<usize>,
    pub reduced_cohomology: Vec<usize>,
    pub pass: bool,
}

/// Checks that the linearized homotopy of (Λ(A_+), D) equals the reduced
/// cohomology of (A, d) in every degree ≤ max_degree. Requires the
/// algebra to be realized at least one degree past the comparison range.
pub fn dold_thom_check(a: &AlgebraData, max_degree: usize) -> Result<DoldThomReport> {
    if max_degree + 1 > a.cutoff() {
        return Err(Error::CutoffExceeded { needed: max_degree + 1, cutoff: a.cutoff() });
    }
    let lambda = build_lambda_model(a)?;
    let homotopy_table = lambda.linearized_homotopy(max_degree);
    let cohomology_table = algebra_cohomology(a).reduced();
    let homotopy: Vec<usize> =
        (0..=max_degree).map(|d| homotopy_table.get(d).unwrap()).collect();
    let reduced_cohomology: Vec<usize> =
        (0..=max_degree).map(|d| cohomology_table.get(d).unwrap()).collect();
    let pass = homotopy == reduced_cohomology;
    Ok(DoldThomReport { max_degree, homotopy, reduced_cohomology, pass })
}

/// Degreewise dimensions of Λ([x],…,[x^n]) / ([x^{m+1}],…,[x^{m+n}]) with
/// deg [x^k] = 2k, computed two independent ways: by presentation
/// machinery and by the regular-sequence series
/// ∏(1 - z^{2(m+j)}) / ∏(1 - z^{2i}).
#[derive(Debug, Clone, serde::Serialize)]
pub struct QuotientOracle {
    pub n: usize,
    pub m: usize,
    pub dims: Vec<usize>,
    pub series_dims: Vec<usize>,
    pub agree: bool,
}

pub fn quotient_ring_oracle(n: usize, m: usize, max_degree: usize) -> Result<QuotientOracle> {
    if n == 0 {
        return Err(Error::Invalid("quotient oracle needs n >= 1".to_string()));
    }
    // A relation [x^{m+j}] with m + j <= n is a generator on the nose, so
    // those generators are dropped up front and set to zero inside the
    // Newton expressions of the remaining relations.
    let gens = GenSet::new(
        (1..=n.min(m)).map(|k| Generator::new(format!("x{}", k), 2 * k)).collect(),
    )?;
    let pgens = newton::power_gens(n);
    let mut relations = Vec::new();
    for j in 1..=n {
        if m + j <= n {
            continue;
        }
        let reduced = newton::reduce_power_sum(m + j, n)?;
        let mut rel = Element::zero();
        'mono: for (mono, c) in reduced.terms() {
            let mut exps = vec![0u32; gens.len()];
            for k in 1..=n {
                let e = mono.exp(pgens.index_of(&format!("p{}", k)).unwrap());
                if e == 0 {
                    continue;
                }
                match gens.index_of(&format!("x{}", k)) {
                    Some(i) => exps[i] = e,
                    // touches a killed generator, so the whole monomial dies
                    None => continue 'mono,
                }
            }
            rel.add_term(Monomial::from_exps(&gens, exps)?, c.clone());
        }
        relations.push(rel);
    }
    let pres = Presentation::new(gens, relations, BTreeMap::new())?;
    let data = crate::realize::realize(&pres, max_degree)?;
    let dims = data.betti();

    let mut numer = crate::series::TruncatedSeries::one(max_degree);
    for j in 1..=n {
        let mut factor = crate::series::TruncatedSeries::one(max_degree);
        factor = factor.sub(&crate::series::TruncatedSeries::monomial(2 * (m + j), max_degree));
        numer = numer.mul(&factor);
    }
    let mut series = numer;
    for i in 1..=n {
        let mut denom = crate::series::TruncatedSeries::one(max_degree);
        denom = denom.sub(&crate::series::TruncatedSeries::monomial(2 * i, max_degree));
        series = series.mul(&denom.inv()?);
    }
    let series_dims = series.to_dims()?;
    let agree = dims == series_dims;
    Ok(QuotientOracle { n, m, dims, series_dims, agree })
}
