use proptest::prelude::*;
use rand::Rng;
use uniform_tail::app::{solve_x, CiEngine, NoiseModel};
use uniform_tail::bounds::{heavy_curve, moderate_curve, thm21_curve, BoundCurve, RosenthalMode, Theorem};
use uniform_tail::charfn::{PsiBar, PsiFunction};
use uniform_tail::fields::{covering_numbers, exact_cover, greedy_cover, profile_integral, CoveringProfile, GridSpace};
use uniform_tail::glspace::{gl_norm, natural_nu, orlicz_weight_norm, tail_from_nu};
use uniform_tail::norming::solve_b;
use uniform_tail::numeric::roots::geomspace;
use uniform_tail::simulate::{substream, EmpiricalTail};
use uniform_tail::tailmodel::{SlowlyVarying, TailSpec};

fn cheap() -> ProptestConfig {
    ProptestConfig { cases: 12, ..ProptestConfig::default() }
}

fn non_increasing(v: &[f64], tol: f64) -> bool {
    v.windows(2).all(|w| w[1] <= w[0] * (1.0 + tol) + 1e-300)
}

fn euclid(pts: Vec<Vec<f64>>) -> GridSpace {
    GridSpace::from_metric(pts, |a, b| a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()).unwrap()
}

fn point_set(max: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2..=max, 1..=3usize).prop_flat_map(|(n, d)| prop::collection::vec(prop::collection::vec(0.0..1.0f64, d), n))
}

proptest! {
    #[test]
    fn tail_is_a_tail_function(r in 0.3..5.0f64, g in -2.0..2.0f64, k in 0.5..3.0f64) {
        let m = TailSpec::plain(r, g).scale(k).build().unwrap();
        let v: Vec<f64> = geomspace(1e-3, 1e12, 1000).into_iter().map(|x| m.tail_eval(x)).collect();
        prop_assert!(v.iter().all(|t| (0.0..=1.0).contains(t)));
        prop_assert!(non_increasing(&v, 0.0));
    }

    #[test]
    fn quantile_round_trip(r in 0.5..4.0f64, g in -1.5..1.5f64, e in 1.0..8.0f64) {
        let m = TailSpec::plain(r, g).build().unwrap();
        let q = 10f64.powf(-e);
        prop_assume!(q < m.tail_at_cutoff());
        let t = m.tail_eval(m.quantile(q));
        prop_assert!(((t - q) / q).abs() <= 1e-8, "q = {q}, T = {t}");
    }

    #[test]
    fn pareto_moments_closed_form(r in 1.0..5.0f64, f in 0.05..0.9f64) {
        let m = TailSpec::pareto(r).build().unwrap();
        let p = f * r;
        let got = m.moment_norm(p).unwrap().powf(p);
        prop_assert!((got / (r / (r - p)) - 1.0).abs() < 1e-6);
        prop_assert_eq!(m.moment_norm(r * 1.01).unwrap(), f64::INFINITY);
    }

    #[test]
    fn orlicz_norm_homogeneous(a in prop::collection::vec(0.01..5.0f64, 1..6), c in prop::sample::select(vec![0.5, 2.0, 10.0])) {
        let psi = PsiFunction::stable(1.5).unwrap();
        let base = orlicz_weight_norm(&a, &psi).value;
        let scaled: Vec<f64> = a.iter().map(|v| v * c).collect();
        prop_assert!((orlicz_weight_norm(&scaled, &psi).value - c * base).abs() <= 1e-8 * c * base);
        let mut longer = a.clone();
        longer.push(0.3);
        prop_assert!(orlicz_weight_norm(&longer, &psi).value >= base * (1.0 - 1e-12));
    }

    #[test]
    fn solve_x_inverts_the_curve(a in 0.5..4.0f64, delta in prop::sample::select(vec![0.1, 0.05, 0.01])) {
        let curve = BoundCurve::new(Theorem::Custom, 1.0, move |x| x.powf(-a)).strict();
        let x = solve_x(&curve, delta).unwrap();
        prop_assert!((curve.eval_unchecked(x) - delta).abs() <= 1e-8 * delta);
    }

    #[test]
    fn greedy_never_beats_exact(pts in point_set(10), f in 0.05..1.0f64) {
        let space = euclid(pts);
        let eps = f * space.diameter();
        let exact = exact_cover(&space, eps).unwrap();
        prop_assert!(greedy_cover(&space, eps) >= exact);
        prop_assert!(exact >= 1);
    }

    #[test]
    fn covering_profile_monotone(pts in point_set(16)) {
        let space = euclid(pts);
        prop_assume!(space.diameter() > 0.0);
        let p = covering_numbers(&space, &geomspace(space.diameter(), space.diameter() * 1e-3, 12)).unwrap();
        prop_assert!(p.n.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(p.eps.windows(2).all(|w| w[0] > w[1]));
        prop_assert!(p.n[0] >= 1);
        for (h, &n) in p.h.iter().zip(&p.n) {
            prop_assert_eq!(*h, (n as f64).ln());
        }
    }

    #[test]
    fn entropy_integral_monotone_in_profile(base in prop::collection::vec(1usize..50, 4..8), bump in prop::collection::vec(0usize..20, 8)) {
        let mut n = base.clone();
        n.sort_unstable();
        let eps: Vec<f64> = (0..n.len()).map(|i| 0.5f64.powi(i as i32)).collect();
        let bigger: Vec<usize> = n.iter().zip(&bump).map(|(a, b)| a + b).collect();
        let mut bigger_sorted = bigger.clone();
        for i in 1..bigger_sorted.len() {
            bigger_sorted[i] = bigger_sorted[i].max(bigger_sorted[i - 1]);
        }
        let one = SlowlyVarying::one();
        let lo = profile_integral(&CoveringProfile::new(eps.clone(), n, false).unwrap(), 2.0, 0.0, &one, false).unwrap();
        let hi = profile_integral(&CoveringProfile::new(eps, bigger_sorted, false).unwrap(), 2.0, 0.0, &one, false).unwrap();
        prop_assert!(hi.value >= lo.value);
    }

    #[test]
    fn substreams_are_deterministic(seed in any::<u64>(), i in 0usize..20, rep in 0usize..1000) {
        let a: Vec<u64> = (0..4).map({ let mut r = substream(seed, i, rep); move |_| r.random() }).collect();
        let b: Vec<u64> = (0..4).map({ let mut r = substream(seed, i, rep); move |_| r.random() }).collect();
        let c: Vec<u64> = (0..4).map({ let mut r = substream(seed, i, rep + 1); move |_| r.random() }).collect();
        prop_assert_eq!(&a, &b);
        prop_assert_ne!(a, c);
    }

    #[test]
    fn empirical_tail_is_max_over_n(samples in prop::collection::vec(prop::collection::vec(-5.0..5.0f64, 100..120), 1..4)) {
        let ns: Vec<u64> = (1..=samples.len() as u64).collect();
        let reps = samples[0].len();
        let logs: Vec<Vec<f64>> = samples.iter().map(|v| v[..reps.min(v.len())].to_vec()).collect();
        let grid = geomspace(0.01, 100.0, 9);
        let e = EmpiricalTail::from_log_abs(ns, reps, 0, logs, grid.clone());
        for (j, &u) in e.u_hat.iter().enumerate() {
            prop_assert!((0.0..=1.0).contains(&u));
            let m = e.per_n.iter().map(|row| row[j]).fold(0.0, f64::max);
            prop_assert_eq!(u, m);
        }
        prop_assert!(non_increasing(&e.u_hat, 0.0));
    }
}

proptest! {
    #![proptest_config(cheap())]

    #[test]
    fn envelope_dominates_and_saturates(r in 0.6..1.9f64, g in -1.0..1.0f64) {
        let psi = PsiFunction::from_tail(&TailSpec::plain(r, g).build().unwrap()).unwrap();
        let pb = PsiBar::new(psi.clone());
        let ts = geomspace(1e-4, 0.999, 40);
        let vals: Vec<f64> = ts.iter().map(|&t| pb.eval(t)).collect();
        for (&t, &v) in ts.iter().zip(&vals) {
            prop_assert!(v >= psi.eval(t) * (1.0 - 1e-9) && v <= 2.0);
        }
        prop_assert!(vals.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12)));
    }

    #[test]
    fn heavy_curves_are_bounded_and_monotone(r in 0.8..1.9f64, g in -1.0..1.0f64) {
        let m = TailSpec::plain(r, g).build().unwrap();
        let pb = PsiBar::new(PsiFunction::from_tail(&m).unwrap());
        for c in [heavy_curve(&m, &pb).unwrap(), thm21_curve(&pb)] {
            let xs = geomspace(c.x_min.max(1e-3) * 1.001, 1e8, 200);
            let v: Vec<f64> = xs.iter().map(|&x| c.eval(x).unwrap()).collect();
            prop_assert!(v.iter().all(|b| (0.0..=1.0).contains(b)));
            prop_assert!(non_increasing(&v, 1e-9));
        }
        let hc = heavy_curve(&m, &pb).unwrap();
        if g > 0.0 {
            for x in geomspace(hc.x_min * 1.001, 1e8, 50) {
                prop_assert!(hc.eval(x).unwrap() >= m.tail_eval(x));
            }
        }
    }

    #[test]
    fn moderate_curve_and_gl_norm(r in 2.6..6.0f64, g in -0.5..1.0f64) {
        let m = TailSpec::plain(r, g).build().unwrap();
        let nu = natural_nu(&m).unwrap();
        let n = gl_norm(&|p| m.moment_norm(p).unwrap_or(f64::INFINITY), &nu).value;
        prop_assert!((n - 1.0).abs() < 1e-6);
        let curve = moderate_curve(&nu, RosenthalMode::General).unwrap();
        let xs = geomspace(0.1, 1e8, 200);
        let v: Vec<f64> = xs.iter().map(|&x| curve.eval(x).unwrap()).collect();
        prop_assert!(v.iter().all(|b| (0.0..=1.0).contains(b)));
        prop_assert!(non_increasing(&v, 1e-9));
        prop_assert_eq!(tail_from_nu(&nu, 1e-3), 1.0);
    }

    #[test]
    fn norming_root_properties(r in 0.8..1.95f64) {
        let psi = PsiFunction::from_tail(&TailSpec::plain(r, 0.0).build().unwrap()).unwrap();
        prop_assert_eq!(solve_b(&psi, 1).unwrap(), 1.0);
        let bs: Vec<f64> = [10u64, 100, 1000, 10_000].iter().map(|&n| solve_b(&psi, n).unwrap()).collect();
        prop_assert!(bs.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn ci_half_width_scaling(r in 2.5..5.0f64, delta in prop::sample::select(vec![0.1, 0.05, 0.01])) {
        let e = CiEngine::new(&NoiseModel::Tail(TailSpec::plain(r, 0.0).build().unwrap()), delta, None, false).unwrap();
        let hw: Vec<f64> = [10u64, 100, 1000, 10_000].iter().map(|&n| e.half_width(n).unwrap()).collect();
        prop_assert!(hw.iter().all(|&h| h >= 0.0));
        prop_assert!(hw.windows(2).all(|w| w[1] <= w[0]));
        let rep = e.report(&[1.0, -1.0, 0.5], Some(0.2)).unwrap();
        prop_assert_eq!(rep.hit, Some((rep.estimate - 0.2).abs() <= rep.half_width));
    }
}
