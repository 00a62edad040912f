//! Tabulates the characteristic-function addition and its envelope for a heavy tail.
use uniform_tail::charfn::{classify_mi_md, psi_asymptotic, PsiBar, PsiFunction};
use uniform_tail::numeric::roots::geomspace;
use uniform_tail::tailmodel::TailSpec;

fn main() -> uniform_tail::Result<()> {
    for gamma in [1.0, -1.0] {
        let m = TailSpec::plain(1.5, gamma).build()?;
        let psi = PsiFunction::from_tail(&m)?;
        let pb = PsiBar::new(psi.clone());
        let class = classify_mi_md(&m)?;
        println!("r = 1.5, gamma = {gamma}: class {:?}, saturation {:.3}", class.class, pb.saturation());
        println!("{:>10} {:>12} {:>12} {:>12}", "t", "psi", "psi_bar", "asymptotic");
        for t in geomspace(1e-4, 0.3, 8) {
            println!("{t:>10.2e} {:>12.5e} {:>12.5e} {:>12.5e}", psi.eval(t), pb.eval(t), psi_asymptotic(&m, t)?);
        }
        println!();
    }
    Ok(())
}
