//! Solving x^(2^l) + x = u by linear algebra and by the half-trace.

use gf2k_roots::field::gcd;
use gf2k_roots::{Fe, FieldCtx};

fn main() -> gf2k_roots::Result<()> {
    let f = FieldCtx::new(9, None)?;
    let v = Fe::new(0x1b3);
    for l in 1..9 {
        let d = gcd(l, 9);
        // u = v^(2^l) + v is always solvable; u + 1 is solvable iff Tr_d(1) = 0
        for u in [f.frob(v, l as u64) + v, f.frob(v, l as u64) + v + Fe::ONE] {
            let sols = f.solve_artin_schreier(u, l)?;
            println!(
                "l={l} d={d} u={u} Tr_d(u)={} -> {} solutions {:?}",
                f.trace(u, d)?,
                sols.len(),
                sols.to_hex()
            );
        }
    }
    let u = f.square(v) + v;
    let w = f.half_trace(u)?;
    println!("half-trace of {u}: w = {w}, w^2 + w = {}", f.square(w) + w);
    Ok(())
}
