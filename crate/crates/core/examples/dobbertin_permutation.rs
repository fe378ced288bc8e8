//! R and q for gcd(l, k) = 1: q permutes the nonzero elements and R inverts it.

use gf2k_roots::dobbertin::CoprimeParams;
use gf2k_roots::FieldCtx;

fn main() -> gf2k_roots::Result<()> {
    let f = FieldCtx::new(7, None)?;
    for l in 1..7 {
        let p = CoprimeParams::new(7, l)?;
        let eps = p.bijective_eps();
        let mut image: Vec<_> = f
            .nonzero_elements()
            .map(|x| p.q_eval(&f, x, eps))
            .collect::<Result<_, _>>()?;
        image.sort();
        image.dedup();
        let inverse_ok = f
            .nonzero_elements()
            .all(|x| p.r_eval(&f, f.inv(p.q_eval(&f, x, eps).unwrap()).unwrap()) == x);
        println!(
            "l={l} l'={} eps={}: q hits {} of {} nonzero elements, R inverts q: {inverse_ok}",
            p.l_prime,
            eps as u8,
            image.len(),
            f.group_order()
        );
    }
    Ok(())
}
