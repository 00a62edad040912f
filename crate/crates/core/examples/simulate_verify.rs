//! Simulates normed sums of a heavy-tailed law and checks the heavy bound against them.
use uniform_tail::bounds::heavy_curve;
use uniform_tail::charfn::{PsiBar, PsiFunction};
use uniform_tail::numeric::roots::geomspace;
use uniform_tail::simulate::{default_n_set, run_sums, verify_bound, NormingChoice, SumExperiment};
use uniform_tail::tailmodel::TailSpec;

fn main() -> uniform_tail::Result<()> {
    let m = TailSpec::plain(1.5, 1.0).build()?;
    let exp = SumExperiment::new(&m, NormingChoice::Exact, default_n_set(1000), 20_000, 1).x_grid(geomspace(10.0, 1e3, 9));
    let emp = run_sums(&exp)?;
    let curve = heavy_curve(&m, &PsiBar::new(PsiFunction::from_tail(&m)?))?;
    let report = verify_bound(&emp, &curve);
    println!("{:>9} {:>6} {:>10} {:>9} {:>10} {:>10}", "x", "n*", "U_hat", "SE", "bound", "margin");
    for r in &report.rows {
        let bound = r.bound.map_or("-".into(), |b| format!("{b:.3e}"));
        println!("{:>9.2} {:>6} {:>10.3e} {:>9.1e} {bound:>10} {:>10.2e}", r.x, r.n_star, r.u_hat, r.se, r.margin.unwrap_or(f64::NAN));
    }
    println!("log-log slope {:.3}, pass = {}", emp.loglog_slope(10.0, 1e3).unwrap_or(f64::NAN), report.pass);
    Ok(())
}
