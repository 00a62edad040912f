//! Moment profile of a moderate tail, the tail recovered from it, and Rosenthal constants.
use uniform_tail::bounds::{rosenthal, tail_from_moments, RosenthalMode};
use uniform_tail::glspace::{gl_norm, moments_from_tail_check, natural_nu, tail_from_nu};
use uniform_tail::tailmodel::TailSpec;

fn main() -> uniform_tail::Result<()> {
    for p in [2.0, 3.0, 4.0, 8.0] {
        println!(
            "Rosenthal p = {p}: general {:.5}, martingale {:.5}",
            rosenthal(p, RosenthalMode::General)?,
            rosenthal(p, RosenthalMode::Martingale)?
        );
    }

    let m = TailSpec::plain(4.0, 0.0).build()?;
    let nu = natural_nu(&m)?;
    let norm = gl_norm(&|p| m.moment_norm(p).unwrap_or(f64::INFINITY), &nu);
    println!("\n||xi|| in its own moment space = {:.6}", norm.value);
    println!("{:>8} {:>12} {:>12}", "x", "T(x)", "from moments");
    for x in [3.0, 10.0, 30.0, 100.0] {
        println!("{x:>8} {:>12.4e} {:>12.4e}", m.tail_eval(x), tail_from_nu(&nu, x));
    }
    let check = moments_from_tail_check(&m)?;
    println!("recovered log exponent {:.3} vs model {:.3}, dominates = {}", check.nu_tail_exponent, check.model_exponent, check.dominates);

    let pareto = TailSpec::pareto(2.0).build()?;
    let t = tail_from_moments(move |p| pareto.abs_moment(p).unwrap_or(f64::INFINITY), 1.0, 2.0, 10.0, Some(1.0))?;
    println!("\npareto(2) at x = 10: optimal p {:.4}, value {:.5}, fixed shift {:.5}", t.p_star, t.value, t.fixed_shift.unwrap());
    Ok(())
}
