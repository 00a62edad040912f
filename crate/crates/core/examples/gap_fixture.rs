//! The discrete gap law: moment band and scaled tails at its atoms.
use uniform_tail::simulate::GapFixture;

fn main() -> uniform_tail::Result<()> {
    let f = GapFixture::with_default_cutoff(3.0, 1.0)?;
    println!("atoms kept: {}, mean {:.5}", f.atoms.len(), f.mean());
    let band = f.moment_band(60);
    println!("moment band [{:.4}, {:.4}], ratio {:.3}", band.lower, band.upper, band.ratio);
    for k in 1..=4u32 {
        println!(
            "k = {k}: ln x_k = {:.3}, P(zeta >= x_k) = {:.4e}, ln scaled {:.3}",
            (k as f64).exp(),
            f.tail_at_atom(k),
            f.ln_scaled_tail_at_atom(k)
        );
    }
    println!("fitted constant over three atoms: {:.3}", f.fit_c6(3));
    Ok(())
}
