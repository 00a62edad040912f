//! Evaluates the uniform tail bounds of each regime against the model tail.
use uniform_tail::bounds::{
    cor21_curve, heavy_curve, intermediate_curve, interpolation_curve, moderate_curve, thm21_curve, BoundCurve, RosenthalMode,
};
use uniform_tail::charfn::{PsiBar, PsiFunction};
use uniform_tail::glspace::natural_nu;
use uniform_tail::tailmodel::{TailModel, TailSpec};

fn show(name: &str, curve: &BoundCurve, m: &TailModel) {
    print!("{name:<14}");
    for x in [10.0, 100.0, 1000.0] {
        match curve.eval(x) {
            Ok(b) => print!("  x={x:<5} {b:.3e} (T {:.1e})", m.tail_eval(x)),
            Err(_) => print!("  x={x:<5} {:>9} (T {:.1e})", "-", m.tail_eval(x)),
        }
    }
    println!();
}

fn main() -> uniform_tail::Result<()> {
    let heavy = TailSpec::plain(1.5, 1.0).build()?;
    let pb = PsiBar::new(PsiFunction::from_tail(&heavy)?);
    show("envelope", &thm21_curve(&pb), &heavy);
    show("heavy", &heavy_curve(&heavy, &pb)?, &heavy);
    show("cor (b=1)", &cor21_curve(1.0, 1.5)?, &heavy);

    let inter = TailSpec::plain(2.0, 0.0).build()?;
    let pb = PsiBar::new(PsiFunction::from_tail(&inter)?);
    show("intermediate", &intermediate_curve(&inter, &pb)?, &inter);

    let moderate = TailSpec::plain(4.0, 0.0).build()?;
    let nu = natural_nu(&moderate)?;
    show("moderate", &moderate_curve(&nu, RosenthalMode::General)?, &moderate);
    show("martingale", &moderate_curve(&nu, RosenthalMode::Martingale)?, &moderate);
    show("interpolation", &interpolation_curve(&moderate, None)?, &moderate);
    Ok(())
}
