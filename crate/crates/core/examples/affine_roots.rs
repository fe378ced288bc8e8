//! Roots, trace classes and character sums of the affine companion polynomial.

use gf2k_roots::affine;
use gf2k_roots::{Fe, FieldCtx};

fn main() -> gf2k_roots::Result<()> {
    let f = FieldCtx::new(9, None)?;
    let l = 3;
    let c = Fe::ONE;
    let mut shown = [false; 3];
    for a in f.nonzero_elements() {
        let arity = affine::classify_f(&f, l, a)?;
        let slot = match arity {
            1 => 0,
            8 => 1,
            _ => 2,
        };
        if shown[slot] {
            continue;
        }
        shown[slot] = true;
        let sol = affine::solve_f(&f, l, a, c)?;
        println!(
            "a={a}: {} roots, Tr_3 of roots = {}, character sum {}",
            sol.arity,
            sol.trace_class,
            affine::character_sum(&f, l, a, c)?
        );
    }
    let rep = affine::f_census(&f, l)?;
    println!("census: {:?} (match {})", rep.counts, rep.matches);
    Ok(())
}
