//! Direct supersingular-prime scans: walk primes in order, point-count,
//! and report the first trace-zero prime for several curves.  CM curves
//! are refused by the search (half their primes are supersingular, and
//! the height bounds for them take a different, far stronger form).

use etor_heights::curve::{trace_of_frobenius, WeierstrassModel};
use etor_heights::ssearch::find_supersingular_direct;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let curves = [
        ("11a3", "0,-1,1,0,0"),
        ("37a1", "0,0,1,-1,0"),
        ("389a1", "0,1,1,-2,0"),
        ("5077a1", "0,0,1,-7,6"),
    ];
    for (label, coeffs) in curves {
        let model: WeierstrassModel = coeffs.parse()?;
        let p = find_supersingular_direct(&model, 5, 10_000)?;
        println!("{label}: first supersingular prime >= 5 is {p}");
        // Show the trace sequence leading up to it.
        let mut line = String::new();
        for q in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            match trace_of_frobenius(&model, q) {
                Ok(a) => line.push_str(&format!("a_{q}={a} ")),
                Err(_) => line.push_str(&format!("a_{q}=(bad) ")),
            }
            if q >= p {
                break;
            }
        }
        println!("  {line}");
    }

    // A CM curve is rejected with an explanation.
    let cm: WeierstrassModel = "0,0,0,1,0".parse()?;
    match find_supersingular_direct(&cm, 5, 1000) {
        Err(e) => println!("\ny^2 = x^3 + x: {e}"),
        Ok(p) => println!("\nunexpected: {p}"),
    }
    Ok(())
}
