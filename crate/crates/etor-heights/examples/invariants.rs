//! Standard invariants, j-heights, and the derived thresholds for a few
//! well-known small-conductor curves, plus one non-integral model to show
//! that minimality is not assumed.

use etor_heights::curve::{
    b_e_threshold, compute_invariants, is_cm_j_invariant, surjectivity_threshold,
    WeierstrassModel,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let curves = [
        ("11a3:  y^2 + y = x^3 - x^2", "0,-1,1,0,0"),
        ("37a1:  y^2 + y = x^3 - x", "0,0,1,-1,0"),
        ("32a2:  y^2 = x^3 + 4x (CM by Z[i])", "0,0,0,4,0"),
        ("27a3:  y^2 + y = x^3 (CM, j = 0)", "0,0,1,0,0"),
        ("scaled 11a3 (non-minimal)", "0,-4,8,0,0"),
    ];
    for (label, coeffs) in curves {
        let model: WeierstrassModel = coeffs.parse()?;
        let inv = compute_invariants(&model)?;
        println!("{label}");
        println!("  discriminant = {}", inv.discriminant);
        println!("  c4 = {}, c6 = {}", inv.c4, inv.c6);
        println!("  j = {}  (h(j) = {:.6})", inv.j, inv.h_j);
        println!("  CM: {}", is_cm_j_invariant(&inv.j));
        println!("  scan floor B_E = {:.6}", b_e_threshold(&inv.j));
        println!(
            "  surjectivity threshold = {}",
            surjectivity_threshold(inv.h_j)?
        );
        println!();
    }
    Ok(())
}
