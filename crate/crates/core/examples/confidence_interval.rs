//! Confidence interval for a mean under heavy-tailed noise, with an empirical coverage check.
use uniform_tail::app::{CiEngine, NoiseModel};
use uniform_tail::tailmodel::{sample, TailSpec};

fn main() -> uniform_tail::Result<()> {
    let noise = TailSpec::plain(1.5, 0.0).build()?;
    let engine = CiEngine::new(&NoiseModel::Tail(noise.clone()), 0.05, None, false)?;
    println!("regime {:?}, X(0.05) = {:.3}", engine.regime(), engine.x_delta());
    for n in [100u64, 1_000, 10_000] {
        println!("n = {n:>6}: b(n) = {:>9.3}, half-width {:.4}", engine.b_n(n)?, engine.half_width(n)?);
    }

    // Symmetric noise, so the true location is the shift.
    let trials = 200;
    let hits = (0..trials)
        .filter(|&k| {
            let s: Vec<f64> = sample(&noise, 1_000, k).unwrap().values.iter().map(|v| 2.0 + v).collect();
            engine.report(&s, Some(2.0)).unwrap().hit == Some(true)
        })
        .count();
    println!("coverage over {trials} trials: {:.3}", hits as f64 / trials as f64);
    Ok(())
}
