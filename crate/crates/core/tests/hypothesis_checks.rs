use lcsim::hypothesis::{normal_quantile, power_estimate, run_test, TestParams};
use lcsim::lcs::Engine;
use lcsim::seqgen::PairSpec;
use lcsim::RngHandle;
use statrs::function::erf::erfc;

fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

fn bisect_quantile(p: f64) -> f64 {
    let (mut lo, mut hi) = (-40.0, 40.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if normal_cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn quantile_agrees_with_cdf_bisection() {
    assert!((bisect_quantile(0.95) - 1.6448536).abs() < 1e-7);
    for p in [1e-6, 0.001, 0.01, 0.05, 0.2, 0.5, 0.7, 0.95, 0.99, 0.999] {
        assert!((normal_quantile(p).unwrap() - bisect_quantile(p)).abs() < 1e-9, "{p}");
    }
}

#[test]
fn verdict_is_label_invariant() {
    let params = TestParams::published_k4();
    let gen = PairSpec::AltCommon { n: 3_000, m_len: 2_800, segments: 20, alphabet_size: 4 };
    for r in 0..10 {
        let (x, y) = gen.generate(&mut RngHandle::new(8).stream(r).rng()).unwrap();
        let perm = [2u8, 0, 3, 1];
        let base = run_test(&x, &y, &params, Engine::BitParallel).unwrap();
        let relabeled = run_test(
            &x.relabel(&perm).unwrap(),
            &y.relabel(&perm).unwrap(),
            &params,
            Engine::Wmmm,
        )
        .unwrap();
        assert_eq!(base, relabeled);
    }
}

#[test]
fn stronger_alternatives_lower_p() {
    // Shrinking the shared block can only weaken the signal.
    let params = TestParams::published_k4();
    let mut last = -1.0;
    for shared in [600usize, 300, 100] {
        let gen = PairSpec::AltCommon { n: 3_000, m_len: 3_000 - shared, segments: 20, alphabet_size: 4 };
        let est = power_estimate(&gen, &params, 60, RngHandle::new(17), Engine::BitParallel).unwrap();
        assert!(est.p >= last, "shared {shared}: {} < {last}", est.p);
        last = est.p;
    }
}
