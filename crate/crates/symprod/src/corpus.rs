//! Built-in presentation fixtures for the verification suites, plus a
//! seeded sampler of random valid CDGAs.
//!
//! Fixture expectations live in the test suites; this module only ships
//! the sources. The random sampler draws sparse differentials from
//! degree-matching monomials and rejection-samples until d∘d = 0, falling
//! back to an always-valid construction (odd generators mapping into the
//! even subalgebra) after a bounded number of failures so that every seed
//! terminates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use crate::algebra::{free_basis_in_degree, Element, GenSet, Generator};
use crate::cdga::CdgaModel;
use crate::error::Result;
use crate::presentation::{parse_presentation, Presentation};
use crate::realize::{realize, AlgebraData};
use crate::scalar;

/// A named presentation shipped with the library.
#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
}

impl Fixture {
    pub fn presentation(&self) -> Presentation {
        parse_presentation(self.text).expect("fixture source parses")
    }

    pub fn realize(&self, cutoff: usize) -> Result<AlgebraData> {
        realize(&self.presentation(), cutoff)
    }
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "qx2", text: include_str!("../data/qx2.dsl") },
    Fixture { name: "s1", text: include_str!("../data/s1.dsl") },
    Fixture { name: "s2", text: include_str!("../data/s2.dsl") },
    Fixture { name: "s3", text: include_str!("../data/s3.dsl") },
    Fixture { name: "s4", text: include_str!("../data/s4.dsl") },
    Fixture { name: "s5", text: include_str!("../data/s5.dsl") },
    Fixture { name: "s6", text: include_str!("../data/s6.dsl") },
    Fixture { name: "cp1", text: include_str!("../data/cp1.dsl") },
    Fixture { name: "cp2", text: include_str!("../data/cp2.dsl") },
    Fixture { name: "cp3", text: include_str!("../data/cp3.dsl") },
    Fixture { name: "cp4", text: include_str!("../data/cp4.dsl") },
    Fixture { name: "trivial_23", text: include_str!("../data/trivial_23.dsl") },
    Fixture { name: "trivial_22", text: include_str!("../data/trivial_22.dsl") },
    Fixture { name: "trivial_33", text: include_str!("../data/trivial_33.dsl") },
    Fixture { name: "free_23", text: include_str!("../data/free_23.dsl") },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// Fixtures that are free CDGA models (no relations), the inputs the
/// model-building paths accept.
pub fn model_fixtures() -> Vec<&'static Fixture> {
    FIXTURES.iter().filter(|f| f.presentation().relations.is_empty()).collect()
}

const SAMPLE_ATTEMPTS: usize = 500;

/// A seeded random free CDGA presentation: 3 to 5 generators with degrees
/// in [2, 6] and a sparse differential satisfying d∘d = 0 exactly.
/// Deterministic per seed.
pub fn random_cdga(seed: u64) -> Presentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_ATTEMPTS {
        if let Some(pres) = try_sample(&mut rng) {
            return pres;
        }
    }
    structured_sample(&mut rng)
}

fn random_gens(rng: &mut ChaCha8Rng) -> GenSet {
    let count = rng.gen_range(3..=5);
    let gens = (0..count)
        .map(|i| Generator::new(format!("g{}", i + 1), rng.gen_range(2..=6)))
        .collect();
    GenSet::new(gens).expect("positive degrees and distinct names")
}

fn random_image(rng: &mut ChaCha8Rng, gens: &GenSet, degree: usize) -> Element {
    let candidates = free_basis_in_degree(gens, degree);
    if candidates.is_empty() {
        return Element::zero();
    }
    let picks = rng.gen_range(1..=std::cmp::min(3, candidates.len()));
    let mut out = Element::zero();
    for _ in 0..picks {
        let m = candidates[rng.gen_range(0..candidates.len())].clone();
        let c = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
        out.add_term(m, scalar::from_int(c));
    }
    out
}

fn try_sample(rng: &mut ChaCha8Rng) -> Option<Presentation> {
    let gens = random_gens(rng);
    let mut differential = BTreeMap::new();
    for i in 0..gens.len() {
        if rng.gen_bool(0.7) {
            let img = random_image(rng, &gens, gens.degree(i) + 1);
            if !img.is_zero() {
                differential.insert(i, img);
            }
        }
    }
    let pres = Presentation::new(gens, Vec::new(), differential).ok()?;
    CdgaModel::from_presentation(&pres).ok()?;
    Some(pres)
}

/// Always-valid construction: even generators are closed and odd
/// generators map into the even subalgebra, so the square of the
/// differential vanishes identically.
fn structured_sample(rng: &mut ChaCha8Rng) -> Presentation {
    let count = rng.gen_range(3..=5);
    let mut list = vec![Generator::new("g1", 2)];
    for i in 1..count {
        let degree = if rng.gen_bool(0.5) {
            2 * rng.gen_range(1..=3)
        } else {
            2 * rng.gen_range(1..=3) + 1
        };
        list.push(Generator::new(format!("g{}", i + 1), degree));
    }
    let gens = GenSet::new(list).expect("positive degrees and distinct names");
    let even = GenSet::new(
        (0..gens.len())
            .filter(|&i| !gens.is_odd(i))
            .map(|i| gens.get(i).clone())
            .collect(),
    )
    .expect("even part is nonempty");
    let embed: Vec<usize> = (0..even.len())
        .map(|i| gens.index_of(&even.get(i).name).unwrap())
        .collect();
    let mut differential = BTreeMap::new();
    for i in 0..gens.len() {
        if !gens.is_odd(i) || !rng.gen_bool(0.8) {
            continue;
        }
        let img = random_image(rng, &even, gens.degree(i) + 1);
        if !img.is_zero() {
            differential.insert(i, img.extend_to(&gens, &embed));
        }
    }
    Presentation::new(gens, Vec::new(), differential)
        .expect("even-subalgebra images are homogeneous")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse_and_realize() {
        for f in FIXTURES {
            let a = f.realize(8).unwrap_or_else(|e| panic!("{} failed: {}", f.name, e));
            assert_eq!(a.dim(0), 1, "{} must be connected", f.name);
        }
    }

    #[test]
    fn fixture_lookup() {
        assert!(fixture("qx2").is_some());
        assert!(fixture("nope").is_none());
        assert!(model_fixtures().len() >= 9);
    }

    #[test]
    fn fixture_betti_values() {
        let betti = |name: &str| fixture(name).unwrap().realize(6).unwrap().betti();
        assert_eq!(betti("qx2"), vec![1, 0, 1, 0, 0, 0, 0]);
        // x*y dies, so degree 5 is empty; only 1, x, y survive
        assert_eq!(betti("trivial_23"), vec![1, 0, 1, 1, 0, 0, 0]);
        assert_eq!(betti("free_23"), vec![1, 0, 1, 1, 1, 1, 1]);
        assert_eq!(betti("s3"), vec![1, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn random_cdga_is_deterministic_and_valid() {
        for seed in 0..30 {
            let a = random_cdga(seed);
            let b = random_cdga(seed);
            assert_eq!(a.gens, b.gens);
            assert_eq!(a.differential, b.differential);
            CdgaModel::from_presentation(&a).expect("sampled differential squares to zero");
        }
    }

    #[test]
    fn random_cdga_often_has_a_differential() {
        let with_d = (0..30).filter(|&s| random_cdga(s).has_differential()).count();
        assert!(with_d >= 15, "only {} of 30 samples carried a differential", with_d);
    }

    #[test]
    fn structured_fallback_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let pres = structured_sample(&mut rng);
            CdgaModel::from_presentation(&pres).expect("fallback is always valid");
        }
    }
}
