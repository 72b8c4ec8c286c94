//! Newton's identities: elementary symmetric polynomials in power sums,
//! and reduction of high power sums p_k into p_1..p_n for k > n.
//!
//! Polynomials live in the free commutative algebra on p_1..p_n with
//! deg p_j = 2j, matching the degree of the even class these reductions
//! are applied to; the identities themselves are degree-agnostic.


use crate::algebra::{Element, GenSet, Generator};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// The generator set p_1..p_n with deg p_j = 2j.
pub fn power_gens(n: usize) -> GenSet {
    GenSet::new(
        (1..=n)
            .map(|j| Generator::new(format!("p{}", j), 2 * j))
            .collect(),
    )
    .expect("power-sum generator names are distinct and positive-degree")
}

/// Index of p_j in `power_gens(n)`.
fn p_index(gens: &GenSet, j: usize) -> usize {
    gens.index_of(&format!("p{}", j))
        .expect("p_j is a generator of power_gens")
}

/// e_1..e_n expanded in p_1..p_n via e_k = (1/k) Σ_{i=1}^k (-1)^{i-1} e_{k-i} p_i.
pub fn newton_elementary(n: usize) -> Vec<Element> {
    let gens = power_gens(n);
    let mut es: Vec<Element> = vec![Element::unit(&gens)];
    for k in 1..=n {
        let mut acc = Element::zero();
        for i in 1..=k {
            let p_i = Element::generator(&gens, p_index(&gens, i));
            let sign = if i % 2 == 1 { 1 } else { -1 };
            let term = es[k - i].mul(&p_i, &gens).scale(&scalar::from_int(sign));
            acc = acc.add(&term);
        }
        es.push(acc.scale(&scalar::from_frac(1, k as i64)));
    }
    es.remove(0);
    es
}

/// Expresses p_k as a polynomial in p_1..p_n for k > n, by iterating
/// p_k = Σ_{j=1}^n (-1)^{j-1} e_j p_{k-j} (all e_j beyond e_n vanish in n
/// variables). The result has no linear term: every monomial is a product
/// of at least two p's, since a lone p_j has weighted degree 2j ≤ 2n < 2k.
pub fn reduce_power_sum(k: usize, n: usize) -> Result<Element> {
    if n == 0 {
        return Err(Error::Invalid("no variables to reduce into".to_string()));
    }
    if k <= n {
        return Err(Error::Invalid(format!(
            "p_{} needs no reduction for n = {}",
            k, n
        )));
    }
    let gens = power_gens(n);
    let es = newton_elementary(n);
    let mut reduced: Vec<Element> = vec![Element::zero()]; // index 0 unused
    for j in 1..=n {
        reduced.push(Element::generator(&gens, p_index(&gens, j)));
    }
    for m in (n + 1)..=k {
        let mut acc = Element::zero();
        for j in 1..=n {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            let term = es[j - 1]
                .mul(&reduced[m - j], &gens)
                .scale(&scalar::from_int(sign));
            acc = acc.add(&term);
        }
        reduced.push(acc);
    }
    Ok(reduced.pop().unwrap())
}

/// Numeric evaluation of a polynomial over `power_gens(n)` with p_j set to
/// the j-th power sum of the sample points.
pub fn eval_at_points(e: &Element, gens: &GenSet, points: &[Scalar]) -> Scalar {
    let values: Vec<Scalar> = (1..=gens.len())
        .map(|j| {
            let idx = p_index(gens, j);
            debug_assert_eq!(gens.degree(idx), 2 * j);
            points
                .iter()
                .map(|x| pow_scalar(x, j))
                .fold(scalar::zero(), |a, b| a + b)
        })
        .collect();
    eval_numeric(e, gens, &values)
}

/// Plain numeric substitution of commuting values for the generators.
pub fn eval_numeric(e: &Element, gens: &GenSet, values: &[Scalar]) -> Scalar {
    debug_assert_eq!(values.len(), gens.len());
    let mut acc = scalar::zero();
    for (m, c) in e.terms() {
        let mut term = c.clone();
        for i in 0..gens.len() {
            for _ in 0..m.exp(i) {
                term = term * &values[i];
            }
        }
        acc = acc + term;
    }
    acc
}

fn pow_scalar(x: &Scalar, k: usize) -> Scalar {
    let mut acc = scalar::one();
    for _ in 0..k {
        acc = acc * x;
    }
    acc
}

/// True when every monomial is a product of at least two generators
/// (counting multiplicity), i.e. the element has no linear or constant part.
pub fn is_decomposable(e: &Element) -> bool {
    e.terms()
        .all(|(m, _)| m.exps().iter().map(|&x| x as usize).sum::<usize>() >= 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;
    use crate::scalar::{from_frac, from_int};

    fn monomial(gens: &GenSet, exps: Vec<u32>) -> Monomial {
        Monomial::from_exps(gens, exps).unwrap()
    }

    #[test]
    fn elementary_expansions() {
        let gens = power_gens(3);
        let es = newton_elementary(3);
        // e_1 = p_1
        assert_eq!(es[0].display(&gens), "p1");
        // e_2 = (p_1^2 - p_2)/2
        assert_eq!(es[1].coeff(&monomial(&gens, vec![2, 0, 0])), from_frac(1, 2));
        assert_eq!(es[1].coeff(&monomial(&gens, vec![0, 1, 0])), from_frac(-1, 2));
        assert_eq!(es[1].num_terms(), 2);
        // e_3 = (p_1^3 - 3 p_1 p_2 + 2 p_3)/6
        assert_eq!(es[2].coeff(&monomial(&gens, vec![3, 0, 0])), from_frac(1, 6));
        assert_eq!(es[2].coeff(&monomial(&gens, vec![1, 1, 0])), from_frac(-1, 2));
        assert_eq!(es[2].coeff(&monomial(&gens, vec![0, 0, 1])), from_frac(1, 3));
        assert_eq!(es[2].num_terms(), 3);
    }

    #[test]
    fn one_variable_reduction() {
        let gens = power_gens(1);
        let p2 = reduce_power_sum(2, 1).unwrap();
        assert_eq!(p2.coeff(&monomial(&gens, vec![2])), from_int(1));
        assert_eq!(p2.num_terms(), 1);
    }

    #[test]
    fn two_variable_p3() {
        // p_3 = (3 p_1 p_2 - p_1^3)/2
        let gens = power_gens(2);
        let p3 = reduce_power_sum(3, 2).unwrap();
        assert_eq!(p3.coeff(&monomial(&gens, vec![1, 1])), from_frac(3, 2));
        assert_eq!(p3.coeff(&monomial(&gens, vec![3, 0])), from_frac(-1, 2));
        assert_eq!(p3.num_terms(), 2);
    }

    #[test]
    fn evaluation_oracle() {
        // at (1, 2): p_4 = 1 + 16 = 17
        let gens = power_gens(2);
        let p4 = reduce_power_sum(4, 2).unwrap();
        let pts = [from_int(1), from_int(2)];
        assert_eq!(eval_at_points(&p4, &gens, &pts), from_int(17));
        // and at a rational point
        let pts = [from_frac(1, 2), from_int(3)];
        let expected = from_frac(1, 16) + from_int(81);
        assert_eq!(eval_at_points(&p4, &gens, &pts), expected);
    }

    #[test]
    fn reductions_are_decomposable() {
        for n in 1..=4 {
            for k in (n + 1)..=8 {
                let r = reduce_power_sum(k, n).unwrap();
                assert!(is_decomposable(&r), "p_{} over n={} has a linear part", k, n);
            }
        }
    }

    #[test]
    fn homogeneous_weight() {
        let gens = power_gens(3);
        let r = reduce_power_sum(7, 3).unwrap();
        assert_eq!(r.homogeneous_degree(&gens), Some(14));
    }

    #[test]
    fn rejects_trivial_cases() {
        assert!(reduce_power_sum(2, 2).is_err());
        assert!(reduce_power_sum(3, 0).is_err());
    }
}
