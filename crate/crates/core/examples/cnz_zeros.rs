//! The C/Z recursions: zero counts against their closed forms, and the V-map.

use gf2k_roots::cnz::Cnz;
use gf2k_roots::{formulas, Fe, FieldCtx};

fn main() -> gf2k_roots::Result<()> {
    for k in [6u32, 8, 9, 10] {
        let f = FieldCtx::new(k, None)?;
        for l in 1..k {
            let c = Cnz::new(&f, l)?;
            println!(
                "k={k} l={l} (d={}, n={}): C_n zeros {} (formula {}), Z_n zeros {} (formula {})",
                c.d(),
                c.n(),
                c.count_zeros_cn(),
                formulas::c_zero_count(k, l)?,
                c.count_zeros_zn(),
                formulas::z_zero_count(k, l)?
            );
        }
    }
    let f = FieldCtx::new(9, None)?;
    let c = Cnz::new(&f, 3)?;
    let v = Fe::new(0x0f1);
    let big_v = c.v_map(v)?;
    let vals = c.values(big_v);
    println!("V({v}) = {big_v}: Z_n(V) = {}, C_n(V) = {}", vals.z, vals.cn());
    Ok(())
}
