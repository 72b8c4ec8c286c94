//! Finite symmetric products SP^n(A): signed Σn-invariants of the n-fold
//! tensor power of a realized algebra, with the comparison map φ_n from the
//! free algebra on A_+, projections, and the induced differential.
//!
//! Tensor words are length-n sequences of quotient-basis labels
//! `(degree, index)`, the unit being `(0, 0)`. A non-vanishing orbit is
//! identified by its sorted word; its orbit sum is normalized so the sorted
//! representative carries coefficient +1. An orbit vanishes exactly when an
//! odd-degree label repeats. General elements are kept as full tensor
//! expansions, so products and differentials reduce to positionwise algebra
//! operations with Koszul signs across factors.

use std::cell::{Cell, RefCell};
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{free_basis_in_degree, Element, GenSet, Generator, Monomial};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg;
use crate::realize::AlgebraData;
use crate::scalar::{self, Scalar};

/// A quotient-basis label of the ambient algebra: (degree, index within
/// the degree-d basis). The unit is (0, 0).
pub type Label = (usize, usize);

pub const UNIT_LABEL: Label = (0, 0);

/// A non-vanishing signed Σn-orbit of tensor words, named by its sorted
/// (lexicographically least) representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymClass {
    word: Vec<Label>,
}

impl SymClass {
    pub fn word(&self) -> &[Label] {
        &self.word
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn degree(&self) -> usize {
        self.word.iter().map(|&(d, _)| d).sum()
    }

    pub fn unit_count(&self) -> usize {
        self.word.iter().filter(|&&l| l == UNIT_LABEL).count()
    }

    /// Factor labels rendered through the algebra's basis monomials,
    /// joined with a tensor sign, e.g. `1⊗x⊗x`.
    pub fn display(&self, a: &AlgebraData) -> String {
        self.word
            .iter()
            .map(|&(d, i)| a.label(d, i))
            .collect::<Vec<_>>()
            .join("⊗")
    }

    /// Factor labels as separate strings, sorted order.
    pub fn factor_labels(&self, a: &AlgebraData) -> Vec<String> {
        self.word.iter().map(|&(d, i)| a.label(d, i)).collect()
    }
}

/// An element of the n-fold tensor power, kept as a full expansion over
/// tensor words of basis labels. Elements of SP^n(A) are the symmetric
/// ones; read their class coordinates with [`SpContext::coordinates`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpnElement {
    n: usize,
    terms: BTreeMap<Vec<Label>, Scalar>,
}

impl SpnElement {
    pub fn zero(n: usize) -> Self {
        SpnElement { n, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Label>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, word: Vec<Label>, c: Scalar) {
        debug_assert_eq!(word.len(), self.n);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return SpnElement::zero(self.n);
        }
        SpnElement {
            n: self.n,
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    /// Coefficient at one tensor word.
    pub fn coeff(&self, word: &[Label]) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(scalar::zero)
    }
}

fn word_degree(word: &[Label]) -> usize {
    word.iter().map(|&(d, _)| d).sum()
}

fn is_sorted(word: &[Label]) -> bool {
    word.windows(2).all(|w| w[0] <= w[1])
}

/// Sign (-1)^k where k counts pairs of odd-degree labels that are out of
/// ascending order in `word` (the Koszul sign of sorting it).
fn sort_sign(word: &[Label]) -> i32 {
    let mut inv = 0usize;
    for p in 0..word.len() {
        for q in (p + 1)..word.len() {
            if word[p] > word[q] && word[p].0 % 2 == 1 && word[q].0 % 2 == 1 {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn has_repeated_odd(sorted_word: &[Label]) -> bool {
    sorted_word
        .windows(2)
        .any(|w| w[0] == w[1] && w[0].0 % 2 == 1)
}

/// Computation context for SP^n(A): basis enumeration (memoized per
/// degree), products, φ_n, projection and the induced differential, under
/// an enumeration budget.
pub struct SpContext<'a> {
    algebra: &'a AlgebraData,
    n: usize,
    limits: Limits,
    basis_memo: RefCell<BTreeMap<usize, Vec<SymClass>>>,
    cells_used: Cell<u64>,
}

impl<'a> SpContext<'a> {
    pub fn new(algebra: &'a AlgebraData, n: usize, limits: Limits) -> Result<Self> {
        limits.check_n(n)?;
        limits.check_cutoff(algebra.cutoff())?;
        Ok(SpContext {
            algebra,
            n,
            limits,
            basis_memo: RefCell::new(BTreeMap::new()),
            cells_used: Cell::new(0),
        })
    }

    pub fn algebra(&self) -> &AlgebraData {
        self.algebra
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn bump_cells(&self, k: u64) -> Result<()> {
        let used = self.cells_used.get() + k;
        self.cells_used.set(used);
        self.limits.check_cells(used)
    }

    /// The identity element: the all-units word.
    pub fn one(&self) -> SpnElement {
        let mut e = SpnElement::zero(self.n);
        e.add_term(vec![UNIT_LABEL; self.n], scalar::one());
        e
    }

    /// Sorts a tensor word into its orbit representative; `None` when the
    /// orbit vanishes (an odd-degree label repeats).
    pub fn symmetrize(&self, word: &[Label]) -> Option<SymClass> {
        debug_assert_eq!(word.len(), self.n);
        let mut sorted = word.to_vec();
        sorted.sort_unstable();
        if has_repeated_odd(&sorted) {
            return None;
        }
        Some(SymClass { word: sorted })
    }

    /// Basis of SP^n(A) in degree d: all non-vanishing orbits, sorted by
    /// representative.
    pub fn basis(&self, d: usize) -> Result<Vec<SymClass>> {
        if d > self.algebra.cutoff() {
            return Err(Error::CutoffExceeded { needed: d, cutoff: self.algebra.cutoff() });
        }
        if let Some(cached) = self.basis_memo.borrow().get(&d) {
            return Ok(cached.clone());
        }
        let mut labels: Vec<Label> = Vec::new();
        for deg in 1..=d {
            for i in 0..self.algebra.dim(deg) {
                labels.push((deg, i));
            }
        }
        let mut out = Vec::new();
        let mut chosen: Vec<Label> = Vec::new();
        self.enumerate(&labels, 0, d, self.n, &mut chosen, &mut out)?;
        out.sort();
        self.basis_memo.borrow_mut().insert(d, out.clone());
        Ok(out)
    }

    fn enumerate(
        &self,
        labels: &[Label],
        pos: usize,
        remaining: usize,
        slots: usize,
        chosen: &mut Vec<Label>,
        out: &mut Vec<SymClass>,
    ) -> Result<()> {
        self.bump_cells(1)?;
        if remaining == 0 {
            let mut word = vec![UNIT_LABEL; self.n - chosen.len()];
            word.extend_from_slice(chosen);
            out.push(SymClass { word });
            return Ok(());
        }
        if pos >= labels.len() || slots == 0 {
            return Ok(());
        }
        let (deg, _) = labels[pos];
        let mut max_c = std::cmp::min(slots, remaining / deg);
        if deg % 2 == 1 {
            max_c = std::cmp::min(max_c, 1);
        }
        for c in 0..=max_c {
            for _ in 0..c {
                chosen.push(labels[pos]);
            }
            self.enumerate(labels, pos + 1, remaining - c * deg, slots - c, chosen, out)?;
            for _ in 0..c {
                chosen.pop();
            }
        }
        Ok(())
    }

    /// Graded dimensions of SP^n(A) through `max_degree` by direct orbit
    /// counting.
    pub fn dims(&self, max_degree: usize) -> Result<Vec<usize>> {
        (0..=max_degree).map(|d| Ok(self.basis(d)?.len())).collect()
    }

    /// The orbit sum of a class: all distinct arrangements of its word,
    /// each with the Koszul sign of the sorting permutation; the sorted
    /// representative has coefficient +1.
    pub fn class_element(&self, class: &SymClass) -> Result<SpnElement> {
        debug_assert_eq!(class.n(), self.n);
        let mut arrangements = Vec::new();
        let mut current: Vec<Label> = Vec::new();
        let mut pool = class.word.clone();
        distinct_arrangements(&mut pool, &mut current, &mut arrangements);
        self.bump_cells(arrangements.len() as u64)?;
        let mut e = SpnElement::zero(self.n);
        for w in arrangements {
            let sign = sort_sign(&w);
            e.add_term(w, scalar::from_int(sign as i64));
        }
        Ok(e)
    }

    /// Class coordinates of a symmetric element: the coefficients at the
    /// sorted representative words.
    pub fn coordinates(&self, e: &SpnElement) -> BTreeMap<SymClass, Scalar> {
        let mut out = BTreeMap::new();
        for (w, c) in &e.terms {
            if is_sorted(w) {
                out.insert(SymClass { word: w.clone() }, c.clone());
            }
        }
        out
    }

    /// Whether the element is fixed by the signed Σn-action, i.e. lies in
    /// SP^n(A). Checked on adjacent transpositions.
    pub fn is_symmetric(&self, e: &SpnElement) -> bool {
        (0..self.n.saturating_sub(1)).all(|k| &self.transpose(e, k) == e)
    }

    /// The signed action of the adjacent transposition (k, k+1).
    pub fn transpose(&self, e: &SpnElement, k: usize) -> SpnElement {
        let mut out = SpnElement::zero(self.n);
        for (w, c) in &e.terms {
            let mut w2 = w.clone();
            w2.swap(k, k + 1);
            let sign = if w[k].0 % 2 == 1 && w[k + 1].0 % 2 == 1 {
                -scalar::one()
            } else {
                scalar::one()
            };
            out.add_term(w2, c * sign);
        }
        out
    }

    /// Product in A^{⊗n}: positionwise products in A with the Koszul sign
    /// of interleaving the two words. Errors when a term's total degree
    /// exceeds the algebra cutoff.
    pub fn mul(&self, a: &SpnElement, b: &SpnElement) -> Result<SpnElement> {
        if a.n != self.n || b.n != self.n {
            return Err(Error::AmbientMismatch);
        }
        let cutoff = self.algebra.cutoff();
        let mut out = SpnElement::zero(self.n);
        for (u, cu) in &a.terms {
            for (v, cv) in &b.terms {
                let total = word_degree(u) + word_degree(v);
                if total > cutoff {
                    return Err(Error::CutoffExceeded { needed: total, cutoff });
                }
                // sign of moving each v_i left past u_j for j > i
                let mut inv = 0usize;
                for i in 0..self.n {
                    if v[i].0 % 2 == 1 {
                        for j in (i + 1)..self.n {
                            if u[j].0 % 2 == 1 {
                                inv += 1;
                            }
                        }
                    }
                }
                let base = cu * cv * scalar::from_int(if inv % 2 == 0 { 1 } else { -1 });
                // positionwise products, each a combination of labels
                let mut partial: Vec<(Vec<Label>, Scalar)> = vec![(Vec::new(), base)];
                for k in 0..self.n {
                    let prod = self.algebra.mult(u[k].0, u[k].1, v[k].0, v[k].1)?;
                    let factors = self.algebra.to_labels(&prod)?;
                    if factors.is_empty() {
                        partial.clear();
                        break;
                    }
                    let mut next = Vec::with_capacity(partial.len() * factors.len());
                    for (w, c) in &partial {
                        for (lab, fc) in &factors {
                            let mut w2 = w.clone();
                            w2.push(*lab);
                            next.push((w2, c * fc));
                        }
                    }
                    partial = next;
                }
                self.bump_cells(partial.len() as u64)?;
                for (w, c) in partial {
                    out.add_term(w, c);
                }
            }
        }
        Ok(out)
    }

    /// φ_n on a single positive basis label: the class of label⊗1⊗…⊗1.
    pub fn phi_gen(&self, label: Label) -> Result<SpnElement> {
        debug_assert_ne!(label.0, 0);
        if self.n == 0 {
            return Ok(SpnElement::zero(0));
        }
        let mut word = vec![UNIT_LABEL; self.n - 1];
        word.push(label);
        word.sort_unstable();
        self.class_element(&SymClass { word })
    }

    /// Projection SP^n(A) → SP^{n-1}(A): augmentation of the last tensor
    /// factor.
    pub fn project(&self, e: &SpnElement) -> SpnElement {
        assert!(self.n >= 1);
        let mut out = SpnElement::zero(self.n - 1);
        for (w, c) in &e.terms {
            if w[self.n - 1] == UNIT_LABEL {
                out.add_term(w[..self.n - 1].to_vec(), c.clone());
            }
        }
        out
    }

    /// Projection on a class: drops one unit factor, or vanishes when the
    /// word has no unit.
    pub fn project_class(&self, class: &SymClass) -> Option<SymClass> {
        if class.unit_count() == 0 {
            return None;
        }
        Some(SymClass { word: class.word[1..].to_vec() })
    }

    /// The differential induced on A^{⊗n} by the algebra's differential:
    /// Σ_k (±) w_1 ⊗ … ⊗ d(w_k) ⊗ … ⊗ w_n with the Koszul sign of the
    /// preceding factors.
    pub fn induced_d(&self, e: &SpnElement) -> Result<SpnElement> {
        let mut out = SpnElement::zero(self.n);
        for (w, c) in &e.terms {
            let mut prefix_degree = 0usize;
            for k in 0..self.n {
                let (dk, ik) = w[k];
                if w[k] != UNIT_LABEL {
                    let img = self.algebra.d_of_basis(dk, ik)?;
                    let sign = if prefix_degree % 2 == 0 { 1 } else { -1 };
                    for (lab, fc) in self.algebra.to_labels(&img)? {
                        let mut w2 = w.clone();
                        w2[k] = lab;
                        out.add_term(w2, c * &fc * scalar::from_int(sign as i64));
                    }
                }
                prefix_degree += dk;
            }
        }
        Ok(out)
    }

    /// Matrix of the induced differential from SP^n degree d to degree
    /// d+1, rows indexed by the degree-d class basis.
    pub fn d_matrix(&self, d: usize) -> Result<Vec<Vec<Scalar>>> {
        let rows_basis = self.basis(d)?;
        let cols_basis = self.basis(d + 1)?;
        let col_pos: BTreeMap<&SymClass, usize> =
            cols_basis.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut mat = Vec::with_capacity(rows_basis.len());
        for class in &rows_basis {
            let e = self.class_element(class)?;
            let de = self.induced_d(&e)?;
            let coords = self.coordinates(&de);
            let mut row = vec![scalar::zero(); cols_basis.len()];
            for (cls, c) in coords {
                let j = *col_pos.get(&cls).expect("image class is in the basis");
                row[j] = c;
            }
            mat.push(row);
        }
        Ok(mat)
    }

    /// Cohomology dimensions of (SP^n(A), induced d) through `max_degree`;
    /// valid range ends one below the algebra cutoff.
    pub fn cohomology(&self, max_degree: usize) -> Result<crate::cdga::DimTable> {
        let valid_to = std::cmp::min(max_degree, self.algebra.cutoff().saturating_sub(1));
        let mut ranks = vec![0usize; valid_to + 2];
        for d in 0..=valid_to {
            ranks[d + 1] = linalg::rank(self.d_matrix(d)?);
        }
        let mut dims = Vec::with_capacity(valid_to + 1);
        for d in 0..=valid_to {
            let total = self.basis(d)?.len();
            dims.push(total - ranks[d + 1] - ranks[d]);
        }
        Ok(crate::cdga::DimTable { dims, valid_to })
    }
}

fn distinct_arrangements(
    pool: &mut Vec<Label>,
    current: &mut Vec<Label>,
    out: &mut Vec<Vec<Label>>,
) {
    if pool.is_empty() {
        out.push(current.clone());
        return;
    }
    let mut i = 0;
    while i < pool.len() {
        if i > 0 && pool[i] == pool[i - 1] {
            i += 1;
            continue;
        }
        let lab = pool.remove(i);
        current.push(lab);
        distinct_arrangements(pool, current, out);
        current.pop();
        pool.insert(i, lab);
        i += 1;
    }
}

/// The free algebra Λ(A_+) on the positive-degree quotient basis of a
/// realized algebra, with generator i tied to basis label `labels[i]`.
/// Generator names are the bracketed basis monomials, e.g. `[x^2]`.
pub struct LambdaPlus {
    pub gens: GenSet,
    labels: Vec<Label>,
}

impl LambdaPlus {
    pub fn new(a: &AlgebraData) -> Self {
        let mut named: Vec<(String, usize, Label)> = Vec::new();
        for d in 1..=a.cutoff() {
            for i in 0..a.dim(d) {
                named.push((format!("[{}]", a.label(d, i)), d, (d, i)));
            }
        }
        let gens = GenSet::new(
            named
                .iter()
                .map(|(name, d, _)| Generator::new(name.clone(), *d))
                .collect(),
        )
        .expect("distinct monomials give distinct bracketed names");
        let mut labels = vec![UNIT_LABEL; gens.len()];
        for (name, _, lab) in &named {
            labels[gens.index_of(name).unwrap()] = *lab;
        }
        LambdaPlus { gens, labels }
    }

    pub fn label_of(&self, gen_idx: usize) -> Label {
        self.labels[gen_idx]
    }

    /// Generator index carrying a given algebra label.
    pub fn gen_of(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn basis_in_degree(&self, d: usize) -> Vec<Monomial> {
        free_basis_in_degree(&self.gens, d)
    }

    /// φ_n as an algebra map: generator [a] ↦ a⊗1⊗…⊗1 + … + 1⊗…⊗1⊗a,
    /// extended multiplicatively to polynomials.
    pub fn phi(&self, ctx: &SpContext, e: &Element) -> Result<SpnElement> {
        let mut out = SpnElement::zero(ctx.n());
        for (m, c) in e.terms() {
            let mut acc = ctx.one().scale(c);
            for i in 0..self.gens.len() {
                for _ in 0..m.exp(i) {
                    let gen = ctx.phi_gen(self.labels[i])?;
                    acc = ctx.mul(&acc, &gen)?;
                    if acc.is_zero() {
                        break;
                    }
                }
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }
}

/// Dimension and monomial basis of the stable symmetric product SP(A) in
/// one degree: the degree-d basis of Λ(A_+). Equals dim SP^n(A)_d for
/// every n ≥ d.
pub fn stable_sp_degree(a: &AlgebraData, d: usize) -> Result<(usize, Vec<Monomial>)> {
    if d > a.cutoff() {
        return Err(Error::CutoffExceeded { needed: d, cutoff: a.cutoff() });
    }
    let lambda = LambdaPlus::new(a);
    let basis = lambda.basis_in_degree(d);
    Ok((basis.len(), basis))
}

/// One degree of a φ_n rank check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PhiDegreeCheck {
    pub degree: usize,
    pub lambda_dim: usize,
    pub sp_dim: usize,
    pub rank: usize,
    pub pass: bool,
}

/// Report of φ_n: Λ(A_+)_{≤n} → SP^n(A)_{≤n} rank checks per degree.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PhiIsoReport {
    pub n: usize,
    pub checks: Vec<PhiDegreeCheck>,
    pub pass: bool,
}

/// Rank data of φ_n in one degree: (dim Λ(A_+)_d, dim SP^n(A)_d, rank).
pub fn phi_rank(ctx: &SpContext, lambda: &LambdaPlus, d: usize) -> Result<(usize, usize, usize)> {
    let monos = lambda.basis_in_degree(d);
    let classes = ctx.basis(d)?;
    let col_pos: BTreeMap<&SymClass, usize> =
        classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut rows = Vec::with_capacity(monos.len());
    for m in &monos {
        let img = lambda.phi(ctx, &Element::from_monomial(m.clone(), scalar::one()))?;
        let mut row = vec![scalar::zero(); classes.len()];
        for (cls, c) in ctx.coordinates(&img) {
            let j = *col_pos.get(&cls).expect("image class is in the basis");
            row[j] = c;
        }
        rows.push(row);
    }
    Ok((monos.len(), classes.len(), linalg::rank(rows)))
}

/// Checks that φ_n maps Λ(A_+) isomorphically onto SP^n(A) in every
/// degree ≤ n: the matrices must be square and of full rank.
pub fn verify_phi_iso(a: &AlgebraData, n: usize, limits: Limits) -> Result<PhiIsoReport> {
    if n > a.cutoff() {
        return Err(Error::CutoffExceeded { needed: n, cutoff: a.cutoff() });
    }
    let ctx = SpContext::new(a, n, limits)?;
    let lambda = LambdaPlus::new(a);
    let mut checks = Vec::new();
    for d in 0..=n {
        let (lambda_dim, sp_dim, rank) = phi_rank(&ctx, &lambda, d)?;
        let pass = lambda_dim == sp_dim && rank == sp_dim;
        checks.push(PhiDegreeCheck { degree: d, lambda_dim, sp_dim, rank, pass });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(PhiIsoReport { n, checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::realize::realize;
    use crate::scalar::from_int;

    fn qx2(cutoff: usize) -> AlgebraData {
        realize(&parse_presentation("gen x:2; rel x^2;").unwrap(), cutoff).unwrap()
    }

    fn ctx_of(a: &AlgebraData, n: usize) -> SpContext {
        SpContext::new(a, n, Limits::forced()).unwrap()
    }

    #[test]
    fn symmetrize_examples() {
        let a = realize(&parse_presentation("gen x:2 y:3;").unwrap(), 6).unwrap();
        let ctx = ctx_of(&a, 2);
        let x = (2, 0);
        let y = (3, 0);
        assert!(ctx.symmetrize(&[x, x]).is_some());
        assert!(ctx.symmetrize(&[y, y]).is_none());
        let c = ctx.symmetrize(&[y, x]).unwrap();
        assert_eq!(c.word(), &[x, y]);
        // orbit sum of x⊗y is x⊗y + y⊗x (even-odd pair, both signs +)
        let e = ctx.class_element(&c).unwrap();
        assert_eq!(e.coeff(&[x, y]), from_int(1));
        assert_eq!(e.coeff(&[y, x]), from_int(1));
    }

    #[test]
    fn odd_orbit_signs() {
        // two odd generators: class u⊗v has orbit sum u⊗v - v⊗u
        let a = realize(&parse_presentation("gen u:3 v:3;").unwrap(), 6).unwrap();
        let ctx = ctx_of(&a, 2);
        let u = (3, 0);
        let v = (3, 1);
        let c = ctx.symmetrize(&[v, u]).unwrap();
        let e = ctx.class_element(&c).unwrap();
        assert_eq!(e.coeff(&[u, v]), from_int(1));
        assert_eq!(e.coeff(&[v, u]), from_int(-1));
        assert!(ctx.is_symmetric(&e));
    }

    #[test]
    fn basis_counts_truncated_polynomial() {
        let a = qx2(8);
        let ctx = ctx_of(&a, 2);
        // SP²(Q[x]/(x²)) has dims (1,0,1,0,1) through degree 4
        assert_eq!(ctx.dims(5).unwrap(), vec![1, 0, 1, 0, 1, 0]);
        let c4 = ctx.basis(4).unwrap();
        assert_eq!(c4.len(), 1);
        assert_eq!(c4[0].word(), &[(2, 0), (2, 0)]);
        let c2 = ctx.basis(2).unwrap();
        assert_eq!(c2[0].word(), &[(0, 0), (2, 0)]);
    }

    #[test]
    fn odd_generator_cancellation() {
        let a = realize(&parse_presentation("gen y:3;").unwrap(), 6).unwrap();
        let ctx = ctx_of(&a, 2);
        assert!(ctx.basis(6).unwrap().is_empty());
    }

    #[test]
    fn phi_square_in_truncated_polynomial() {
        // [x]^2 = 2·{x⊗x} in SP²(Q[x]/(x²))
        let a = qx2(8);
        let ctx = ctx_of(&a, 2);
        let phix = ctx.phi_gen((2, 0)).unwrap();
        assert_eq!(phix.coeff(&[(0, 0), (2, 0)]), from_int(1));
        assert_eq!(phix.coeff(&[(2, 0), (0, 0)]), from_int(1));
        let sq = ctx.mul(&phix, &phix).unwrap();
        assert_eq!(sq.coeff(&[(2, 0), (2, 0)]), from_int(2));
        assert_eq!(sq.num_terms(), 1);
        // [x]^3 = 0 since x² = 0 kills any word with a squared factor
        let cube = ctx.mul(&sq, &phix).unwrap();
        assert!(cube.is_zero());
    }

    #[test]
    fn odd_phi_square_vanishes() {
        let a = realize(&parse_presentation("gen y:3;").unwrap(), 8).unwrap();
        let ctx = ctx_of(&a, 2);
        let phiy = ctx.phi_gen((3, 0)).unwrap();
        let sq = ctx.mul(&phiy, &phiy).unwrap();
        assert!(sq.is_zero());
    }

    #[test]
    fn unit_is_identity() {
        let a = qx2(6);
        let ctx = ctx_of(&a, 3);
        let phix = ctx.phi_gen((2, 0)).unwrap();
        let prod = ctx.mul(&ctx.one(), &phix).unwrap();
        assert_eq!(prod, phix);
    }

    #[test]
    fn projection_examples() {
        let a = qx2(8);
        let ctx2 = ctx_of(&a, 2);
        let phix = ctx2.phi_gen((2, 0)).unwrap();
        let p = ctx2.project(&phix);
        // [x] in SP¹
        assert_eq!(p.coeff(&[(2, 0)]), from_int(1));
        assert_eq!(p.num_terms(), 1);
        // {x⊗x} projects to zero
        let xx = ctx2.class_element(&ctx2.symmetrize(&[(2, 0), (2, 0)]).unwrap()).unwrap();
        assert!(ctx2.project(&xx).is_zero());
        // 1 projects to 1
        let one = ctx2.project(&ctx2.one());
        assert_eq!(one.coeff(&[(0, 0)]), from_int(1));
    }

    #[test]
    fn projection_is_algebra_map() {
        let a = realize(&parse_presentation("gen x:2 y:3;").unwrap(), 8).unwrap();
        let ctx = ctx_of(&a, 3);
        let ctx2 = ctx_of(&a, 2);
        let u = ctx.phi_gen((2, 0)).unwrap();
        let v = ctx.phi_gen((3, 0)).unwrap();
        let uv = ctx.mul(&u, &v).unwrap();
        let lhs = ctx.project(&uv);
        let rhs = ctx2.mul(&ctx.project(&u), &ctx.project(&v)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_commutes_with_projection() {
        let a = realize(&parse_presentation("gen x:2 y:3; rel x*y;").unwrap(), 8).unwrap();
        let ctx3 = ctx_of(&a, 3);
        let ctx2 = ctx_of(&a, 2);
        let lambda = LambdaPlus::new(&a);
        for m in lambda.basis_in_degree(5) {
            let e = Element::from_monomial(m, scalar::one());
            let via3 = ctx3.project(&lambda.phi(&ctx3, &e).unwrap());
            let direct = lambda.phi(&ctx2, &e).unwrap();
            assert_eq!(via3, direct);
        }
    }

    #[test]
    fn phi_iso_in_stable_range() {
        let a = qx2(8);
        let report = verify_phi_iso(&a, 2, Limits::forced()).unwrap();
        assert!(report.pass);
        let dims: Vec<usize> = report.checks.iter().map(|c| c.sp_dim).collect();
        assert_eq!(dims, vec![1, 0, 1]);

        let a = realize(&parse_presentation("gen x:2 y:3; rel x^2, x*y;").unwrap(), 8).unwrap();
        let report = verify_phi_iso(&a, 2, Limits::forced()).unwrap();
        assert!(report.pass);
        let dims: Vec<usize> = report.checks.iter().map(|c| c.sp_dim).collect();
        assert_eq!(dims, vec![1, 0, 1]);
    }

    #[test]
    fn phi_surjective_above_stable_range() {
        let a = qx2(8);
        let ctx = ctx_of(&a, 2);
        let lambda = LambdaPlus::new(&a);
        for d in 0..=6 {
            let (_, sp_dim, rank) = phi_rank(&ctx, &lambda, d).unwrap();
            assert_eq!(rank, sp_dim, "phi not surjective in degree {}", d);
        }
    }

    #[test]
    fn stable_dimension_matches_finite_at_large_n() {
        let a = qx2(6);
        let (dim6, _) = stable_sp_degree(&a, 6).unwrap();
        let ctx = ctx_of(&a, 6);
        assert_eq!(ctx.basis(6).unwrap().len(), dim6);
        assert_eq!(dim6, 1);
    }

    #[test]
    fn induced_differential_sphere_model() {
        // SP²(S² model): d[y] = [x²]... with x² = 0 in A = Λ(x,y) it is
        // the class of x⊗x? No: d(y⊗1 + 1⊗y) = x²⊗1 + 1⊗x², the class
        // of the label x^2.
        let a = realize(&parse_presentation("gen x:2 y:3; d y = x^2;").unwrap(), 8).unwrap();
        let ctx = ctx_of(&a, 2);
        let phiy = ctx.phi_gen((3, 0)).unwrap();
        let d_phiy = ctx.induced_d(&phiy).unwrap();
        // [x^2]: label of x^2 in degree 4 is index 1 (basis x^2 < y? no:
        // degree-4 basis of Λ(x:2,y:3) is just x^2)
        let x2_label = (4usize, a.basis(4).iter().position(|m| m.display(a.gens()) == "x^2").unwrap());
        let expected = ctx.phi_gen(x2_label).unwrap();
        assert_eq!(d_phiy, expected);
    }

    #[test]
    fn induced_differential_squares_to_zero() {
        let a = realize(&parse_presentation("gen x:2 y:5; d y = x^3;").unwrap(), 10).unwrap();
        let ctx = ctx_of(&a, 2);
        for d in 0..=8 {
            for class in ctx.basis(d).unwrap() {
                let e = ctx.class_element(&class).unwrap();
                let dde = ctx.induced_d(&ctx.induced_d(&e).unwrap()).unwrap();
                assert!(dde.is_zero(), "d² ≠ 0 on {:?}", class);
            }
        }
    }

    #[test]
    fn sp2_cp1_cohomology_is_cp2() {
        let a = realize(&parse_presentation("gen x:2 y:3; d y = x^2;").unwrap(), 8).unwrap();
        let ctx = ctx_of(&a, 2);
        let table = ctx.cohomology(4).unwrap();
        assert_eq!(table.dims, vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn guardrails_enforced() {
        let a = qx2(8);
        assert!(matches!(
            SpContext::new(&a, 7, Limits::default()),
            Err(Error::Guardrail { .. })
        ));
        let mut tight = Limits::forced();
        tight.max_cells = 3;
        let ctx = SpContext::new(&a, 6, tight).unwrap();
        assert!(matches!(ctx.basis(8), Err(Error::Guardrail { .. })));
    }

    #[test]
    fn basis_dim_is_macdonald_coefficient() {
        let a = realize(&parse_presentation("gen x:2 y:3; rel x^2, x*y;").unwrap(), 8).unwrap();
        let betti = a.betti();
        for n in 0..=3 {
            let ctx = ctx_of(&a, n);
            let dims = ctx.dims(8).unwrap();
            let series = crate::series::sp_series(&betti, n, 8).unwrap();
            assert_eq!(dims, series.to_dims().unwrap(), "n = {}", n);
        }
    }
}
