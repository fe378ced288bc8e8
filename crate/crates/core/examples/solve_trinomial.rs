//! Classifying and solving x^(2^l+1) + x + a, and the full zero-count census.

use gf2k_roots::psolver;
use gf2k_roots::{Fe, FieldCtx};

fn main() -> gf2k_roots::Result<()> {
    let f = FieldCtx::new(6, None)?;
    let l = 2;
    for bits in [0x0, 0x1, 0x3, 0x15, 0x2a, 0x3f] {
        let a = Fe::new(bits);
        let cls = psolver::classify(&f, l, a)?;
        let roots = psolver::solve_classified(&f, l, a, &cls)?;
        println!(
            "a={a}: {:?} (Z={}, C={}) roots {:?} via {:?}",
            cls.class,
            cls.z_val,
            cls.c_val,
            roots.to_hex(),
            roots.provenance()
        );
    }
    let rep = psolver::distribution(&f, l)?;
    println!("census k=6 l=2: {:?} predicted {:?}", rep.counts, rep.predicted);

    let f = FieldCtx::new(11, None)?;
    let a = Fe::new(0x2d1);
    println!(
        "k=11 l=3 a={a}: trace criterion {}, class {:?}",
        psolver::gcd1_criterion(&f, 3, a)? as u8,
        psolver::classify(&f, 3, a)?.class
    );
    Ok(())
}
