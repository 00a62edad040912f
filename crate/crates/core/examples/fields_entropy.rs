//! Covering numbers of a point cloud and the entropy integrals that control a field's sup.
use uniform_tail::fields::{covering_numbers, entropy_integral, CoveringSource, EntropyVariant, GridSpace};
use uniform_tail::numeric::roots::geomspace;
use uniform_tail::tailmodel::SlowlyVarying;

fn main() -> uniform_tail::Result<()> {
    let pts: Vec<f64> = (0..20).map(|i| i as f64 / 19.0).collect();
    let space = GridSpace::on_line(&pts)?;
    let profile = covering_numbers(&space, &geomspace(1.0, 0.01, 10))?;
    println!("{:>8} {:>4}", "eps", "N");
    for (e, n) in profile.eps.iter().zip(&profile.n) {
        println!("{e:>8.4} {n:>4}");
    }
    let one = SlowlyVarying::one();
    for variant in [EntropyVariant::Continuity, EntropyVariant::Limit] {
        let v = entropy_integral(CoveringSource::Profile(&profile), 3.0, 0.0, &one, variant)?;
        println!("{variant:?}: {:.4} ({:?})", v.value, v.finiteness);
    }

    // N(ε) = ε^{-d} on [0,1]^d: finite exactly when d < r.
    for d in [1.0, 2.0, 3.0] {
        let nf = move |e: f64| e.powf(-d);
        let v = entropy_integral(CoveringSource::Analytic(&nf), 2.0, 0.0, &one, EntropyVariant::Continuity)?;
        println!("d = {d}, r = 2: {:?}, power {:.3}", v.finiteness, v.power);
    }
    Ok(())
}
