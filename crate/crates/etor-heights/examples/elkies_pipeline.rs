//! The full supersingular-prime pipeline on the conductor-11 curve
//! y^2 + y = x^3 - x^2: congruence assembly, progression scan, class
//! polynomials at the found discriminants, witness extraction, and
//! certificate revalidation.

use etor_heights::curve::WeierstrassModel;
use etor_heights::ssearch::{search_supersingular_prime, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model: WeierstrassModel = "0,-1,1,0,0".parse()?;
    let config = SearchConfig::default();

    eprintln!("searching (cutoff from max(11, min_prime, B_E))...");
    let cert = search_supersingular_prime(&model, 11, &config)?;

    eprintln!(
        "ell = {} (h(-ell) = {}, h(-4 ell) = {})",
        cert.ell, cert.h_ell, cert.h_4ell
    );
    eprintln!(
        "N_ell has {} digits (ln = {:.3}, explicit cap {:.3e})",
        cert.n_ell_digits, cert.ln_n_ell, cert.ln_n_ell_bound
    );
    eprintln!(
        "witness p = {} with a_p = {}, (p/ell) = {}",
        cert.witness.p, cert.witness.trace, cert.witness.jacobi_vs_ell
    );
    eprintln!("timings: {:?}", cert.timings);

    cert.revalidate()?;
    eprintln!("certificate revalidated");

    println!("{}", serde_json::to_string_pretty(&cert)?);
    Ok(())
}
