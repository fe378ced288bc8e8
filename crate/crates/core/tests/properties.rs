use gf2k_roots::affine;
use gf2k_roots::cnz::Cnz;
use gf2k_roots::field::{gcd, Fe, FieldCtx};
use gf2k_roots::oracle::Oracle;
use gf2k_roots::psolver;
use proptest::prelude::*;

fn field_and_elems(max_k: u32) -> impl Strategy<Value = (u32, u32, u32, u32)> {
    (2..=max_k).prop_flat_map(|k| {
        let m = (1u32 << k) - 1;
        (Just(k), 0..=m, 0..=m, 0..=m)
    })
}

proptest! {
    #[test]
    fn field_laws((k, a, b, c) in field_and_elems(24)) {
        let f = FieldCtx::new(k, None).unwrap();
        let (a, b, c) = (Fe::new(a), Fe::new(b), Fe::new(c));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
        prop_assert_eq!(f.frob(f.mul(a, b), 1), f.mul(f.frob(a, 1), f.frob(b, 1)));
        prop_assert_eq!(f.frob(a, k as u64), a);
        prop_assert_eq!(f.mul(a, b), f.mul_shift_reduce(a, b));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
        }
    }

    #[test]
    fn trace_linear_norm_multiplicative((k, a, b, _c) in field_and_elems(16), dsel in 0usize..8) {
        let f = FieldCtx::new(k, None).unwrap();
        let divisors: Vec<u32> = (1..=k).filter(|d| k % d == 0).collect();
        let d = divisors[dsel % divisors.len()];
        let (a, b) = (Fe::new(a), Fe::new(b));
        prop_assert_eq!(f.trace(a + b, d).unwrap(), f.trace(a, d).unwrap() + f.trace(b, d).unwrap());
        prop_assert_eq!(
            f.norm(f.mul(a, b), d).unwrap(),
            f.mul(f.norm(a, d).unwrap(), f.norm(b, d).unwrap())
        );
        prop_assert!(f.in_subfield(f.trace(a, d).unwrap(), d));
    }

    #[test]
    fn large_field_solutions_vanish((k, a, _b, _c) in field_and_elems(20), lsel in 1u32..20) {
        let f = FieldCtx::new(k, None).unwrap();
        let l = 1 + lsel % (k - 1);
        let a = Fe::new(a);
        let cls = psolver::classify(&f, l, a).unwrap();
        let roots = psolver::solve_classified(&f, l, a, &cls).unwrap();
        prop_assert_eq!(roots.len() as u64, cls.class.arity(gcd(l, k)));
        for x in roots.iter() {
            prop_assert!(psolver::eval(&f, l, a, x).is_zero());
        }
        let fs = affine::solve_f(&f, l, a, Fe::ONE).unwrap();
        prop_assert_eq!(fs.arity, affine::classify_f(&f, l, a).unwrap());
        for x in fs.roots.iter() {
            prop_assert!(affine::eval(&f, l, a, Fe::ONE, x).is_zero());
        }
    }

    #[test]
    fn criteria_match_oracle_midsize((k, a, _b, _c) in field_and_elems(14), lsel in 1u32..14) {
        let f = FieldCtx::new(k, None).unwrap();
        let l = 1 + lsel % (k - 1);
        let a = Fe::new(a);
        let truth = Oracle::default().roots_p(&f, l, a).unwrap().roots;
        prop_assert!(psolver::solve(&f, l, a).unwrap().same_roots(&truth));
        let z = Cnz::new(&f, l).unwrap().z_eval(a);
        prop_assert!(f.in_subfield(z, gcd(l, k)));
    }
}

#[test]
fn explicit_modulus_gives_same_counts() {
    // counts do not depend on the choice of modulus
    let f = FieldCtx::new(8, Some(0x11d)).unwrap();
    for l in 1..8 {
        assert!(psolver::distribution(&f, l).unwrap().matches);
        assert!(affine::f_census(&f, l).unwrap().matches);
    }
}
