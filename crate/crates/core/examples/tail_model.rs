//! Builds a few tail models, prints their regime, moments and quantiles, and draws a sample.
use uniform_tail::tailmodel::{sample, SlowlyVarying, TailSpec};

fn main() -> uniform_tail::Result<()> {
    let models = [
        ("plain(1.5, 1)", TailSpec::plain(1.5, 1.0)),
        ("plain(2, 0)", TailSpec::plain(2.0, 0.0)),
        ("plain(4, 0)", TailSpec::plain(4.0, 0.0)),
        ("pareto(3)", TailSpec::pareto(3.0)),
        ("log-power L", TailSpec::plain(1.2, 0.0).slowly_varying(SlowlyVarying::LogPower { delta: 0.25 })),
        ("superheavy(1)", TailSpec::superheavy(1.0)),
    ];
    println!("{:<16} {:<13} {:>10} {:>12} {:>12}", "model", "regime", "T(100)", "q(1e-4)", "|xi|_1");
    for (name, spec) in models {
        let m = spec.build()?;
        let moment = m.moment_norm(1.0).map(|v| format!("{v:.4}")).unwrap_or_else(|_| "-".into());
        println!(
            "{name:<16} {:<13} {:>10.3e} {:>12.4e} {:>12}",
            format!("{:?}", m.classify()),
            m.tail_eval(100.0),
            m.quantile(1e-4),
            moment
        );
    }

    let m = TailSpec::plain(1.5, 1.0).build()?;
    let batch = sample(&m, 100_000, 7)?;
    let above = batch.values.iter().filter(|v| v.abs() >= 100.0).count() as f64 / batch.values.len() as f64;
    println!("\nempirical P(|xi| >= 100) = {above:.5}, model {:.5}", m.tail_eval(100.0));
    Ok(())
}
