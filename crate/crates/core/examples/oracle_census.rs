//! Exhaustive censuses next to the closed-form predictions.

use gf2k_roots::oracle::{Family, Oracle};
use gf2k_roots::FieldCtx;

fn main() -> gf2k_roots::Result<()> {
    let oracle = Oracle::default();
    for k in 2..=8 {
        let f = FieldCtx::new(k, None)?;
        for l in 1..k {
            let p = oracle.census(Family::P, &f, l, None)?;
            let a = oracle.census(Family::F, &f, l, None)?;
            println!(
                "k={k} l={l}: P {:?} ({}), F {:?} ({})",
                p.counts,
                if p.matches { "match" } else { "MISMATCH" },
                a.counts,
                if a.matches { "match" } else { "MISMATCH" }
            );
        }
    }
    Ok(())
}
