//! Hilbert class polynomials from certified evaluation at reduced-form
//! points: small golden cases, a degree-5 example with its real-root
//! count, and the growth of coefficient sizes with the discriminant.

use etor_heights::classpoly::{
    class_number, count_real_roots, hilbert_class_polynomial, reduced_forms,
};
use num_traits::Signed;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The four classical degree-1 discriminants with tiny j-invariants.
    for d in [3u64, 4, 7, 28] {
        let p = hilbert_class_polynomial(d)?;
        println!("P_{d}(x): degree {}, coefficients {:?}", p.degree(), p.coeffs);
    }
    println!();

    // Discriminant -47 has class number 5; all its forms are listed.
    let d = 47;
    let forms = reduced_forms(d)?;
    println!("reduced forms of discriminant -{d}:");
    for f in &forms {
        println!("  ({}, {}, {})", f.a, f.b, f.c);
    }
    let p47 = hilbert_class_polynomial(d)?;
    println!(
        "P_47: degree {} (= class number {}), {} real root(s)",
        p47.degree(),
        class_number(d)?,
        count_real_roots(&p47.coeffs)
    );
    println!("constant term: {}", p47.coeffs[0]);
    println!();

    // Coefficient growth: the largest coefficient follows the classical
    // pi sqrt(d) sum(1/a) size estimate.
    println!("coefficient growth (largest |coefficient| in bits):");
    for d in [167u64, 359, 551, 743, 1019] {
        let p = hilbert_class_polynomial(d)?;
        let bits = p
            .coeffs
            .iter()
            .map(|c| c.abs().bits())
            .max()
            .unwrap_or(0);
        println!("  d = {d}: degree {}, max {} bits", p.degree(), bits);
    }
    Ok(())
}
