//! Linear algebra over GF(2) on bit-packed vectors.
//!
//! A GF(2)-linear map on at most 64 coordinates is described by the images
//! of the standard basis vectors. Elimination keeps, for every pivot bit, an
//! image together with the combination of inputs that produced it, so the
//! same pass yields the kernel and a preimage oracle.

/// Row-echelon form of a GF(2)-linear map `GF(2)^dim -> GF(2)^64`.
#[derive(Debug, Clone)]
pub struct Gf2Map {
    dim: u32,
    // rows[p] = (image with leading bit p, input combination)
    rows: Vec<Option<(u64, u64)>>,
    kernel: Vec<u64>,
}

impl Gf2Map {
    /// Builds the map from a function on bit vectors. `f` is only evaluated
    /// on basis vectors, so it must be GF(2)-linear.
    pub fn from_fn(dim: u32, f: impl Fn(u64) -> u64) -> Self {
        assert!(dim <= 64);
        let mut map = Gf2Map {
            dim,
            rows: vec![None; 64],
            kernel: Vec::new(),
        };
        for j in 0..dim {
            let input = 1u64 << j;
            let (rest, combo) = map.reduce(f(input), input);
            if rest == 0 {
                map.kernel.push(combo);
            } else {
                let p = 63 - rest.leading_zeros();
                map.rows[p as usize] = Some((rest, combo));
            }
        }
        map
    }

    fn reduce(&self, mut image: u64, mut combo: u64) -> (u64, u64) {
        while image != 0 {
            let p = 63 - image.leading_zeros();
            match self.rows[p as usize] {
                Some((row, c)) => {
                    image ^= row;
                    combo ^= c;
                }
                None => break,
            }
        }
        (image, combo)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn rank(&self) -> u32 {
        self.dim - self.kernel.len() as u32
    }

    pub fn kernel_basis(&self) -> &[u64] {
        &self.kernel
    }

    /// Some `x` with `f(x) = target`, or `None` when `target` is not in the image.
    pub fn preimage(&self, target: u64) -> Option<u64> {
        let (rest, combo) = self.reduce(target, 0);
        (rest == 0).then_some(combo)
    }

    /// Every vector of the kernel (2^dim(ker) of them).
    pub fn kernel(&self) -> Vec<u64> {
        span(&self.kernel)
    }

    /// The full solution set of `f(x) = target`.
    pub fn solutions(&self, target: u64) -> Vec<u64> {
        match self.preimage(target) {
            Some(x0) => span(&self.kernel).into_iter().map(|k| k ^ x0).collect(),
            None => Vec::new(),
        }
    }
}

/// All GF(2)-combinations of `basis`.
pub fn span(basis: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(1 << basis.len());
    out.push(0);
    for &b in basis {
        let len = out.len();
        for i in 0..len {
            out.push(out[i] ^ b);
        }
    }
    out
}
