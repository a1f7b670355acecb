//! Run scaled-down versions of the numerical verification suites in
//! process and print their summaries.  The CLI exposes the full-size
//! versions: `etor-heights verify --suite <name>`.

use etor_heights::cli::{
    verify_suite_aux, verify_suite_classnum, verify_suite_fouvry_murty, verify_suite_lemma1,
    verify_suite_mignotte, verify_suite_theta,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (out, fails) = verify_suite_lemma1(300)?;
    println!(
        "lemma1:       {} primes = 3 (mod 4), {} failure(s)",
        out["primes_checked"], fails
    );

    let (out, fails) = verify_suite_fouvry_murty(60)?;
    println!(
        "fouvry-murty: {} class-polynomial products within cap, {} failure(s)",
        out["instances"].as_array().unwrap().len(),
        fails
    );

    let (out, fails) = verify_suite_mignotte(100, 7)?;
    println!(
        "mignotte-sum: {} checks, max utilization {:.3}, {} failure(s)",
        out["checked"],
        out["max_utilization"].as_f64().unwrap(),
        fails
    );

    let (out, fails) = verify_suite_aux(200)?;
    println!("aux:          {} grid points, {} failure(s)", out["checked"], fails);

    let (out, fails) = verify_suite_classnum(600)?;
    println!(
        "classnum:     {} bound checks, {} degree checks, {} failure(s)",
        out["bound_checked"], out["degree_checked"], fails
    );

    let (out, fails) = verify_suite_theta(100_000)?;
    println!(
        "theta:        {} primes, worst ratio {:.6}, {} failure(s)",
        out["primes"],
        out["worst_ratio"].as_f64().unwrap(),
        fails
    );
    Ok(())
}
