//! Free graded-commutative algebras: generators, canonical monomials,
//! Koszul-sign bookkeeping and exact sparse element arithmetic.
//!
//! Monomials are kept in a fixed canonical generator order (sorted by
//! degree, then name) with all reordering signs absorbed into coefficients,
//! so element equality is plain map equality. Odd generators never carry an
//! exponent above one; an odd square is annihilated inside multiplication.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// A named generator of a free graded-commutative algebra.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: usize) -> Self {
        Generator { name: name.into(), degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// An ordered generator set. Generators are sorted by (degree, name); this
/// order is the canonical order all monomials are written in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSet {
    gens: Vec<Generator>,
}

impl GenSet {
    pub fn new(mut gens: Vec<Generator>) -> Result<Self> {
        for g in &gens {
            if g.degree == 0 {
                // a second basis element in degree 0 breaks connectedness
                return Err(Error::NotConnected { beta0: 2 });
            }
        }
        gens.sort_by(|a, b| (a.degree, a.name.as_str()).cmp(&(b.degree, b.name.as_str())));
        for w in gens.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::Invalid(format!("duplicate generator name {}", w[0].name)));
            }
        }
        // names must be globally unique, not just per degree
        let mut names: Vec<&str> = gens.iter().map(|g| g.name.as_str()).collect();
        names.sort_unstable();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Invalid(format!("duplicate generator name {}", w[0])));
            }
        }
        Ok(GenSet { gens })
    }

    pub fn empty() -> Self {
        GenSet { gens: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.gens[i].degree
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.gens[i].is_odd()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// Per-degree generator counts up to `max_degree` (index = degree).
    pub fn degree_counts(&self, max_degree: usize) -> Vec<usize> {
        let mut counts = vec![0usize; max_degree + 1];
        for g in &self.gens {
            if g.degree <= max_degree {
                counts[g.degree] += 1;
            }
        }
        counts
    }
}

/// A canonical monomial: exponent vector parallel to a `GenSet`.
///
/// Invariant: odd-degree generators carry exponent 0 or 1. The empty
/// exponent vector over an empty generator set is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn unit(gens: &GenSet) -> Self {
        Monomial { exps: vec![0; gens.len()] }
    }

    pub fn generator(gens: &GenSet, i: usize) -> Self {
        let mut exps = vec![0; gens.len()];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn from_exps(gens: &GenSet, exps: Vec<u32>) -> Result<Self> {
        if exps.len() != gens.len() {
            return Err(Error::AmbientMismatch);
        }
        for (i, &e) in exps.iter().enumerate() {
            if e > 1 && gens.is_odd(i) {
                return Err(Error::Invalid(format!(
                    "odd generator {} cannot carry exponent {}",
                    gens.get(i).name,
                    e
                )));
            }
        }
        Ok(Monomial { exps })
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self, gens: &GenSet) -> usize {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, &e)| e as usize * gens.degree(i))
            .sum()
    }

    /// True when the monomial is a single generator to the first power.
    pub fn as_single_generator(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            match (e, found) {
                (0, _) => {}
                (1, None) => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    pub fn display(&self, gens: &GenSet) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 1 {
                parts.push(gens.get(i).name.clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", gens.get(i).name, e));
            }
        }
        parts.join("*")
    }
}

/// Koszul sign of a permutation acting on a word of homogeneous degrees.
///
/// `perm[k]` is the index of the original factor landing in slot `k`, so the
/// permuted word reads `word[perm[0]], word[perm[1]], ...`. The sign is
/// (-1)^k where k counts inverted pairs whose degrees are both odd.
pub fn koszul_sign(word: &[usize], perm: &[usize]) -> Result<i32> {
    if word.len() != perm.len() {
        return Err(Error::Invalid(format!(
            "word length {} does not match permutation length {}",
            word.len(),
            perm.len()
        )));
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::Invalid("not a permutation".to_string()));
        }
        seen[p] = true;
    }
    let mut inversions = 0usize;
    for u in 0..perm.len() {
        for v in (u + 1)..perm.len() {
            if perm[u] > perm[v] && word[perm[u]] % 2 == 1 && word[perm[v]] % 2 == 1 {
                inversions += 1;
            }
        }
    }
    Ok(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Signed product of two canonical monomials. `None` when an odd generator
/// appears in both factors (odd squares vanish).
pub fn mono_mul(gens: &GenSet, a: &Monomial, b: &Monomial) -> Option<(i32, Monomial)> {
    debug_assert_eq!(a.exps.len(), gens.len());
    debug_assert_eq!(b.exps.len(), gens.len());
    let mut inversions = 0usize;
    let mut odd_in_a_above = 0usize; // odd generators of a with index > current
    // walk indices descending: for each odd generator j of b, every odd
    // generator i > j of a contributes one transposition
    for j in (0..gens.len()).rev() {
        if gens.is_odd(j) {
            if a.exps[j] == 1 && b.exps[j] == 1 {
                return None;
            }
            if b.exps[j] == 1 {
                inversions += odd_in_a_above;
            }
            if a.exps[j] == 1 {
                odd_in_a_above += 1;
            }
        }
    }
    let exps = a
        .exps
        .iter()
        .zip(&b.exps)
        .map(|(&x, &y)| x + y)
        .collect();
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((sign, Monomial { exps }))
}

/// A sparse rational linear combination of canonical monomials. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn unit(gens: &GenSet) -> Self {
        Element::from_monomial(Monomial::unit(gens), scalar::one())
    }

    pub fn from_monomial(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { terms }
    }

    pub fn generator(gens: &GenSet, i: usize) -> Self {
        Element::from_monomial(Monomial::generator(gens, i), scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Element, gens: &GenSet) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((sign, m)) = mono_mul(gens, ma, mb) {
                    let c = ca * cb * scalar::from_int(sign as i64);
                    out.add_term(m, c);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32, gens: &GenSet) -> Element {
        let mut out = Element::unit(gens);
        for _ in 0..k {
            out = out.mul(self, gens);
        }
        out
    }

    /// Total degree when homogeneous; `None` for mixed-degree elements.
    /// The zero element reports degree 0.
    pub fn homogeneous_degree(&self, gens: &GenSet) -> Option<usize> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.degree(gens);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// The sub-element of one degree.
    pub fn component(&self, d: usize, gens: &GenSet) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(gens) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-expresses the element over a larger generator set; `index_map[i]`
    /// is the position of source generator `i` in `dst`.
    pub fn extend_to(&self, dst: &GenSet, index_map: &[usize]) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; dst.len()];
            for (i, &e) in m.exps.iter().enumerate() {
                exps[index_map[i]] = e;
            }
            out.add_term(Monomial { exps }, c.clone());
        }
        out
    }

    /// Applies the algebra map sending generator `i` of `src` to `images[i]`
    /// (an element over `dst`). Every image must be homogeneous of the same
    /// degree as its generator, or zero; the map then preserves Koszul signs.
    pub fn eval(&self, src: &GenSet, images: &[Element], dst: &GenSet) -> Element {
        debug_assert_eq!(images.len(), src.len());
        debug_assert!(images.iter().enumerate().all(|(i, img)| {
            img.is_zero() || img.homogeneous_degree(dst) == Some(src.degree(i))
        }));
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            let mut acc = Element::from_monomial(Monomial::unit(dst), c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&images[i], dst);
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
        out
    }

    pub fn display(&self, gens: &GenSet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mono = m.display(gens);
            let abs = if c < &scalar::zero() { -c.clone() } else { c.clone() };
            if i == 0 {
                if c < &scalar::zero() {
                    s.push('-');
                }
            } else if c < &scalar::zero() {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            let one = scalar::one();
            if m.is_unit() {
                s.push_str(&abs.to_string());
            } else if abs == one {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", abs, mono));
            }
        }
        s
    }
}

/// Applies the degree +1 derivation with the given generator images to an
/// element, by the graded Leibniz rule. `images[i]` must be homogeneous of
/// degree `degree(i) + 1`, or zero.
///
/// On a canonical monomial g_1^{e_1} ... g_k^{e_k} the rule expands to a
/// sum over factors: the image of g_i enters with the sign of the degree of
/// the preceding factors, and d(g^e) = e g^{e-1} dg (the image commutes
/// freely past copies of an even g; odd g carries e <= 1).
pub fn derivation_apply(gens: &GenSet, images: &[Element], e: &Element) -> Element {
    debug_assert_eq!(images.len(), gens.len());
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        let mut prefix_degree = 0usize;
        for i in 0..gens.len() {
            let ei = m.exp(i);
            if ei > 0 && !images[i].is_zero() {
                let mut head = vec![0u32; gens.len()];
                let mut tail = vec![0u32; gens.len()];
                for j in 0..gens.len() {
                    if j < i {
                        head[j] = m.exp(j);
                    } else if j > i {
                        tail[j] = m.exp(j);
                    }
                }
                head[i] = ei - 1;
                let sign = if prefix_degree % 2 == 0 { 1 } else { -1 };
                let coeff = c * &scalar::from_int(sign * ei as i64);
                let head_elem = Element::from_monomial(Monomial { exps: head }, coeff);
                let tail_elem = Element::from_monomial(Monomial { exps: tail }, scalar::one());
                let term = head_elem.mul(&images[i], gens).mul(&tail_elem, gens);
                out = out.add(&term);
            }
            prefix_degree += ei as usize * gens.degree(i);
        }
    }
    out
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// All canonical monomials of total degree `d`, sorted ascending.
/// The count equals the degree-`d` coefficient of the free-algebra series.
pub fn free_basis_in_degree(gens: &GenSet, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; gens.len()];
    fn rec(gens: &GenSet, i: usize, remaining: usize, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(Monomial { exps: exps.clone() });
            return;
        }
        if i >= gens.len() {
            return;
        }
        let deg = gens.degree(i);
        let max_e = if gens.is_odd(i) { 1 } else { (remaining / deg) as u32 };
        for e in 0..=max_e {
            let used = e as usize * deg;
            if used > remaining {
                break;
            }
            exps[i] = e;
            rec(gens, i + 1, remaining - used, exps, out);
        }
        exps[i] = 0;
    }
    rec(gens, 0, d, &mut exps, &mut out);
    out.sort();
    out
}
