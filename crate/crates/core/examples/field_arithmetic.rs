//! Basic GF(2^k) arithmetic: modulus selection, products, inverses, traces, norms.

use gf2k_roots::{Fe, FieldCtx, FieldSpec};

fn main() -> gf2k_roots::Result<()> {
    let f = FieldCtx::new(3, None)?;
    let g = Fe::new(0b010);
    println!("GF(2^3) modulus {:#b}, generator {}", f.modulus(), f.generator());
    println!("g^2 = {}, g^3 = {}, g^-1 = {}", f.mul(g, g), f.pow(g, 3), f.inv(g)?);
    println!("Tr(g) = {}, N(g) = {}", f.trace(g, 1)?, f.norm(g, 1)?);

    let spec: FieldSpec = "k=12".parse()?;
    let f = spec.build()?;
    let a = f.element(0x5a3)?;
    for d in [1, 2, 3, 4, 6] {
        println!(
            "k=12: Tr_{d}(a) = {}, N_{d}(a) = {}",
            f.trace(a, d)?,
            f.norm(a, d)?
        );
    }

    let big = FieldCtx::new(31, None)?;
    let x = big.element(0x1234_5678)?;
    println!(
        "k=31 (no tables): x * x^-1 = {}, Tr(x) = {}",
        big.mul(x, big.inv(x)?),
        big.abs_trace(x) as u8
    );
    Ok(())
}
