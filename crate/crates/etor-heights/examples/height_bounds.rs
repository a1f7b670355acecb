//! The full menu of height lower bounds for the torsion field of the
//! conductor-11 curve y^2 + y = x^3 - x^2, from the sharpest conditional
//! form down to the fully unconditional conductor-only chain, plus the
//! p-adic variants and the companion prime-size bounds.

use etor_heights::bounds::{
    cm_height_bound, conductor_height_bound, main_height_bound, padic_corollary_bound,
    small_degree_height_bound, ConductorMode,
};
use etor_heights::curve::{compute_invariants, WeierstrassModel};
use etor_heights::ssearch::{
    prime_bound_conductor_only, prime_bound_effective, prime_bound_unconditional,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model: WeierstrassModel = "0,-1,1,0,0".parse()?;
    let inv = compute_invariants(&model)?;
    println!("curve y^2 + y = x^3 - x^2, conductor 11, j = {}", inv.j);
    println!();

    // With the known supersingular surjective prime p = 19.
    let b = main_height_bound(19, 21)?;
    println!("at the supersingular prime 19:");
    println!("  h >= {:e}   [{}]", b.value, b.meaning());
    let b31 = main_height_bound(19, 31)?;
    println!("  conservative constant: h >= {:e}", b31.value);
    let sd = small_degree_height_bound(19)?;
    println!("  low-degree floor (degree <= 1e10): h >= {:e}", sd.value);
    println!();

    // Conductor-only: no prime search, no hypotheses.
    let explicit = conductor_height_bound(11, None, ConductorMode::Explicit, 1.0)?;
    println!("conductor-only, unconditional:");
    println!(
        "  level-{} bound, {} = {:.6}",
        explicit.bound.level,
        explicit.bound.meaning(),
        explicit.bound.value
    );
    println!(
        "  (auxiliary cutoff n = {:.4e}, theta(n) <= {:.6e})",
        explicit.n_aux, explicit.theta_n
    );

    // Semistable refinement (11 is squarefree).
    let semi = conductor_height_bound(11, Some(&inv), ConductorMode::Semistable, 1.0)?;
    println!("semistable refinement:");
    println!(
        "  level-{} bound, {} = {:.6}",
        semi.bound.level,
        semi.bound.meaning(),
        semi.bound.value
    );

    // Conditional on the effective progression hypothesis with c = 1.
    let eff = conductor_height_bound(11, Some(&inv), ConductorMode::Effective, 1.0)?;
    println!("under the effective progression hypothesis (c = 1):");
    println!(
        "  level-{} bound, {} = {:.6}  (q = {})",
        eff.bound.level,
        eff.bound.meaning(),
        eff.bound.value,
        eff.q.unwrap()
    );
    println!();

    // CM curves get the exact bound.
    let cm = cm_height_bound();
    println!(
        "any CM curve: h >= {} = {:e} exactly",
        cm.exact.as_ref().unwrap(),
        cm.value
    );
    println!();

    // p-adic analogue at p = 5.
    let p5 = padic_corollary_bound(5)?;
    println!("5-adic corollary bound:");
    println!(
        "  level-{} bound, {} = {:.6}",
        p5.bound.as_ref().unwrap().level,
        p5.bound.as_ref().unwrap().meaning(),
        p5.bound.as_ref().unwrap().value
    );
    println!();

    // How large can the first supersingular prime found this way be?
    println!("companion bounds on the auxiliary prime:");
    let pb = prime_bound_unconditional(11, 11.0, inv.h_j);
    println!("  full route: {} = {:.6}", pb.meaning(), pb.value);
    let (n_aux, pb2) = prime_bound_conductor_only(11, 11);
    println!(
        "  conductor-only route (n = {:.6e}): {} = {:.6}",
        n_aux,
        pb2.meaning(),
        pb2.value
    );
    let pb3 = prime_bound_effective(1.0, 9240, inv.h_j)?;
    println!(
        "  effective route (q = 9240): {} = {:.6e}",
        pb3.meaning(),
        pb3.value
    );
    Ok(())
}
