//! Exact norming roots next to their asymptotic forms, and the superheavy sequence.
use uniform_tail::charfn::PsiFunction;
use uniform_tail::norming::{b_asymptotic, b_moderate, solve_b, NormingSequence, Weight};
use uniform_tail::tailmodel::TailSpec;

fn main() -> uniform_tail::Result<()> {
    let m = TailSpec::plain(1.5, 1.0).build()?;
    let psi = PsiFunction::from_tail(&m)?;
    println!("{:>9} {:>12} {:>12} {:>8} {:>10}", "n", "b exact", "b asym", "ratio", "sqrt n");
    for n in [10u64, 100, 1_000, 10_000, 100_000, 1_000_000] {
        let b = solve_b(&psi, n)?;
        let (a, _) = b_asymptotic(&m, n)?;
        println!("{n:>9} {b:>12.4} {a:>12.4} {:>8.4} {:>10.1}", b / a, b_moderate(n));
    }

    let cauchy = PsiFunction::stable(1.0)?;
    println!("\nCauchy b(100) = {:.4}", solve_b(&cauchy, 100)?);

    let sh = TailSpec::superheavy(1.0).build()?;
    let seq = NormingSequence::superheavy(&sh, Weight::OnePlusLog, &[1, 2, 10, 100])?;
    for (n, lb) in seq.ns.iter().zip(&seq.log_values) {
        println!("superheavy n = {n:>4}: ln B = {lb:.4}");
    }
    Ok(())
}
