//! Superheavy tails: weak law for the normed sums and the sandwich constant.
use uniform_tail::norming::Weight;
use uniform_tail::simulate::{fit_sandwich_constant, run_sums, wlln_superheavy, NormingChoice, SumExperiment};
use uniform_tail::tailmodel::TailSpec;

fn main() -> uniform_tail::Result<()> {
    let m = TailSpec::superheavy(1.0).build()?;
    let w = wlln_superheavy(&m, Weight::OnePlusLog, &[10, 100, 1000], 0.1, 4_000, 3)?;
    for ((n, p), se) in w.n_set.iter().zip(&w.probs).zip(&w.se) {
        println!("n = {n:>5}: P(|S(n)| > 0.1) = {p:.4} ± {se:.4}");
    }
    println!("weakly decreasing: {}", w.weakly_decreasing);

    let xs: Vec<f64> = (5..=15).map(|k| (k as f64).exp()).collect();
    let exp =
        SumExperiment::new(&m, NormingChoice::Superheavy { weight: Weight::OnePlusLog }, vec![1, 2, 3, 10, 30, 100], 4_000, 4).x_grid(xs);
    let fit = fit_sandwich_constant(&run_sums(&exp)?, &m);
    println!("sandwich constant {:.3e}, lower violations {:?}", fit.c_fit, fit.lower_violations);
    Ok(())
}
