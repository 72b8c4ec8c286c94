//! Property tests for the structural invariants: Koszul sign composition,
//! series ring laws, Macdonald layer identities on random Betti vectors,
//! Newton reductions checked by numeric evaluation, graded commutativity
//! and Leibniz in SP^n, and naturality of the projection and of phi.

use proptest::prelude::*;

use symprod::algebra::koszul_sign;
use symprod::cdga::{build_lambda_model, two_gen_sp_model};
use symprod::corpus::{fixture, FIXTURES};
use symprod::newton::{eval_at_points, power_gens, reduce_power_sum};
use symprod::scalar::{self, Scalar};
use symprod::series::{free_series_from_counts, sp_layers, sp_series};
use symprod::sp::{LambdaPlus, SpContext, SpnElement};
use symprod::{Element, Limits, TruncatedSeries};

fn word_and_two_perms() -> impl Strategy<Value = (Vec<usize>, Vec<usize>, Vec<usize>)> {
    (1usize..=5).prop_flat_map(|n| {
        (
            prop::collection::vec(1usize..=4, n),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
    })
}

fn series_of(coeffs: Vec<i64>) -> TruncatedSeries {
    TruncatedSeries::from_ints(&coeffs)
}

/// Random homogeneous combination of SP^n basis classes in one degree.
/// `picks` indexes into the degree-`d` basis modulo its size.
fn pick_element(ctx: &SpContext, d: usize, picks: &[(usize, i64)]) -> SpnElement {
    let basis = ctx.basis(d).expect("basis enumerable");
    let mut e = SpnElement::zero(ctx.n());
    if basis.is_empty() {
        return e;
    }
    for &(i, c) in picks {
        let cls = ctx.class_element(&basis[i % basis.len()]).expect("class expands");
        e = e.add(&cls.scale(&scalar::from_int(c)));
    }
    e
}

fn pow_int(x: &Scalar, k: usize) -> Scalar {
    let mut acc = scalar::one();
    for _ in 0..k {
        acc = acc * x;
    }
    acc
}

proptest! {
    #[test]
    fn koszul_sign_composes((word, sigma, tau) in word_and_two_perms()) {
        // perm[k] is the source slot landing at k, so applying tau then
        // sigma reads word[tau[sigma[k]]]
        let permuted: Vec<usize> = (0..word.len()).map(|k| word[tau[k]]).collect();
        let composed: Vec<usize> = (0..word.len()).map(|k| tau[sigma[k]]).collect();
        let lhs = koszul_sign(&word, &composed).unwrap();
        let rhs = koszul_sign(&word, &tau).unwrap() * koszul_sign(&permuted, &sigma).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn koszul_sign_of_identity_is_one(word in prop::collection::vec(1usize..=5, 0..=6)) {
        let id: Vec<usize> = (0..word.len()).collect();
        prop_assert_eq!(koszul_sign(&word, &id).unwrap(), 1);
    }

    #[test]
    fn series_ring_laws(
        a in prop::collection::vec(-3i64..=3, 9),
        b in prop::collection::vec(-3i64..=3, 9),
        c in prop::collection::vec(-3i64..=3, 9),
    ) {
        let (a, b, c) = (series_of(a), series_of(b), series_of(c));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn series_inverse_multiplies_to_one(tail in prop::collection::vec(-3i64..=3, 8)) {
        let mut coeffs = vec![1i64];
        coeffs.extend(tail);
        let s = series_of(coeffs);
        prop_assert_eq!(s.mul(&s.inv().unwrap()), TruncatedSeries::one(8));
    }

    #[test]
    fn free_series_multiplies_over_disjoint_generators(
        c1 in prop::collection::vec(0usize..=2, 7),
        c2 in prop::collection::vec(0usize..=2, 7),
    ) {
        // a free algebra on V + W is the product of the two free series
        let joint: Vec<usize> = c1.iter().zip(&c2).map(|(x, y)| x + y).collect();
        let lhs = free_series_from_counts(&joint, 8);
        let rhs = free_series_from_counts(&c1, 8).mul(&free_series_from_counts(&c2, 8));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn macdonald_layers_on_random_betti(
        tail in prop::collection::vec(0usize..=2, 1..=5),
        n in 1usize..=4,
    ) {
        let mut betti = vec![1usize];
        betti.extend(tail);
        let max_degree = 8;
        let layers = sp_layers(&betti, n, max_degree).unwrap();
        prop_assert_eq!(&layers[0], &TruncatedSeries::one(max_degree));
        for (i, layer) in layers.iter().enumerate() {
            if let Some(o) = layer.order() {
                prop_assert!(o >= i, "layer {} has order {}", i, o);
            }
        }
        let mut total = TruncatedSeries::zero(max_degree);
        for layer in &layers {
            total = total.add(layer);
        }
        prop_assert_eq!(&total, &sp_series(&betti, n, max_degree).unwrap());

        // stability: coefficients through degree n are settled at stage n
        let next = sp_series(&betti, n + 1, max_degree).unwrap();
        for d in 0..=n.min(max_degree) {
            prop_assert_eq!(total.coeff(d), next.coeff(d));
        }

        // once n >= D every orbit fits, so the series is the free one
        let stable = sp_series(&betti, max_degree, max_degree).unwrap();
        let mut counts = betti.clone();
        counts[0] = 0;
        prop_assert_eq!(stable, free_series_from_counts(&counts, max_degree));
    }

    #[test]
    fn newton_reduction_evaluates_to_power_sum(
        n in 1usize..=4,
        extra in 1usize..=4,
        nums in prop::collection::vec(-3i64..=3, 4),
        dens in prop::collection::vec(1i64..=2, 4),
    ) {
        let k = n + extra;
        let points: Vec<Scalar> = (0..n)
            .map(|i| scalar::from_frac(nums[i], dens[i]))
            .collect();
        let reduced = reduce_power_sum(k, n).unwrap();
        let lhs = eval_at_points(&reduced, &power_gens(n), &points);
        let rhs = points
            .iter()
            .map(|x| pow_int(x, k))
            .fold(scalar::zero(), |a, b| a + b);
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sp_mul_is_graded_commutative(
        n in 2usize..=3,
        da in 2usize..=5,
        db in 2usize..=5,
        picks_a in prop::collection::vec((0usize..16, -2i64..=2), 1..=2),
        picks_b in prop::collection::vec((0usize..16, -2i64..=2), 1..=2),
    ) {
        prop_assume!(da + db <= 8);
        let a = fixture("free_23").unwrap().realize(8).unwrap();
        let ctx = SpContext::new(&a, n, Limits::forced()).unwrap();
        let ea = pick_element(&ctx, da, &picks_a);
        let eb = pick_element(&ctx, db, &picks_b);
        let ab = ctx.mul(&ea, &eb).unwrap();
        let mut ba = ctx.mul(&eb, &ea).unwrap();
        if da % 2 == 1 && db % 2 == 1 {
            ba = ba.scale(&scalar::from_int(-1));
        }
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn sp_mul_is_associative(
        n in 2usize..=3,
        da in 2usize..=3,
        db in 2usize..=3,
        dc in 2usize..=3,
        picks_a in prop::collection::vec((0usize..16, -2i64..=2), 1..=2),
        picks_b in prop::collection::vec((0usize..16, -2i64..=2), 1..=2),
        picks_c in prop::collection::vec((0usize..16, -2i64..=2), 1..=2),
    ) {
        prop_assume!(da + db + dc <= 8);
        let a = fixture("free_23").unwrap().realize(8).unwrap();
        let ctx = SpContext::new(&a, n, Limits::forced()).unwrap();
        let ea = pick_element(&ctx, da, &picks_a);
        let eb = pick_element(&ctx, db, &picks_b);
        let ec = pick_element(&ctx, dc, &picks_c);
        let left = ctx.mul(&ctx.mul(&ea, &eb).unwrap(), &ec).unwrap();
        let right = ctx.mul(&ea, &ctx.mul(&eb, &ec).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn induced_d_satisfies_leibniz(
        da in 2usize..=5,
        db in 2usize..=5,
        picks_a in prop::collection::vec((0usize..16, -2i64..=2), 1..=2),
        picks_b in prop::collection::vec((0usize..16, -2i64..=2), 1..=2),
    ) {
        prop_assume!(da + db + 1 <= 8);
        let a = fixture("cp2").unwrap().realize(8).unwrap();
        let ctx = SpContext::new(&a, 2, Limits::forced()).unwrap();
        let ea = pick_element(&ctx, da, &picks_a);
        let eb = pick_element(&ctx, db, &picks_b);
        let lhs = ctx.induced_d(&ctx.mul(&ea, &eb).unwrap()).unwrap();
        let mut rhs = ctx.mul(&ctx.induced_d(&ea).unwrap(), &eb).unwrap();
        let mut second = ctx.mul(&ea, &ctx.induced_d(&eb).unwrap()).unwrap();
        if da % 2 == 1 {
            second = second.scale(&scalar::from_int(-1));
        }
        rhs = rhs.add(&second);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_commutes_with_induced_d(
        d in 2usize..=6,
        picks in prop::collection::vec((0usize..16, -2i64..=2), 1..=3),
    ) {
        let a = fixture("cp2").unwrap().realize(8).unwrap();
        let ctx3 = SpContext::new(&a, 3, Limits::forced()).unwrap();
        let ctx2 = SpContext::new(&a, 2, Limits::forced()).unwrap();
        let e = pick_element(&ctx3, d, &picks);
        let lhs = ctx3.project(&ctx3.induced_d(&e).unwrap());
        let rhs = ctx2.induced_d(&ctx3.project(&e)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_commutes_with_derivation(
        n in 2usize..=3,
        d in 2usize..=6,
        picks in prop::collection::vec((0usize..16, -2i64..=2), 1..=2),
    ) {
        let a = fixture("cp2").unwrap().realize(8).unwrap();
        let ctx = SpContext::new(&a, n, Limits::forced()).unwrap();
        let lambda = LambdaPlus::new(&a);
        let model = build_lambda_model(&a).unwrap();
        let basis = lambda.basis_in_degree(d);
        prop_assume!(!basis.is_empty());
        let mut e = Element::zero();
        for &(i, c) in &picks {
            e.add_term(basis[i % basis.len()].clone(), scalar::from_int(c));
        }
        let lhs = lambda.phi(&ctx, &model.d(&e)).unwrap();
        let rhs = ctx.induced_d(&lambda.phi(&ctx, &e).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn realized_dims_stable_under_larger_cutoff(
        which in 0usize..15,
        c1 in 4usize..=6,
        extra in 1usize..=2,
    ) {
        let f = FIXTURES[which];
        let small = f.realize(c1).unwrap();
        let large = f.realize(c1 + extra).unwrap();
        for d in 0..=c1 {
            prop_assert_eq!(small.dim(d), large.dim(d));
        }
    }
}

#[test]
fn family_reduction_is_minimal_and_preserves_cohomology() {
    for r in 1..=2 {
        for q in 2..=3 {
            for n in 1..=3 {
                let model = two_gen_sp_model(r, q, n).unwrap();
                let (reduced, _log) = model.reduce().unwrap();
                assert!(
                    reduced.is_minimal(),
                    "reduction of (r={}, q={}, n={}) left a linear differential term",
                    r,
                    q,
                    n
                );
                let before = model.cohomology(10);
                let after = reduced.cohomology(10);
                assert!(
                    before.agrees_with(&after, 10),
                    "cohomology changed for (r={}, q={}, n={})",
                    r,
                    q,
                    n
                );
            }
        }
    }
}
