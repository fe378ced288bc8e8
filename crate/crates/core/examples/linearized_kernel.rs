//! Kernel sizes of the linearized polynomial over GF(2^(2k)) and their prediction.

use std::collections::BTreeMap;

use gf2k_roots::linearized::ExtContext;
use gf2k_roots::FieldCtx;

fn main() -> gf2k_roots::Result<()> {
    let ext = ExtContext::new(FieldCtx::new(5, None)?)?;
    for l in 1..5 {
        let mut sizes = BTreeMap::new();
        let mut agree = true;
        for r in ext.unit_circle() {
            for a in ext.base().nonzero_elements() {
                let kernel = ext.q_kernel(a, r, l)?;
                let cls = ext.classify_q(a, r, l)?;
                agree &= cls.kernel_size == kernel.len() as u64;
                *sizes.entry(kernel.len()).or_insert(0u32) += 1;
            }
        }
        println!("k=5 l={l} d1={}: kernel sizes {sizes:?}, predictions agree: {agree}", ext.d1(l));
    }
    Ok(())
}
