//! Shared inputs for the engine benchmarks.

use superyangian::{AlgebraElement, Composition, YangianContext, ZeroOneSequence};

pub fn context(seq: &str) -> YangianContext {
    YangianContext::new(seq.parse::<ZeroOneSequence>().expect("valid sequence"))
}

pub fn composition(ctx: &YangianContext, parts: &str) -> Composition {
    Composition::parse(ctx.seq().clone(), parts).expect("valid composition")
}

/// `t_{n1}^{(r)} ⋯ t_{1n}^{(r)}`-style word in reverse generator order, the
/// worst case for normal ordering.
pub fn reversed_word(ctx: &YangianContext, r: usize) -> Vec<AlgebraElement> {
    let n = ctx.dim();
    let mut out = Vec::new();
    for i in (1..=n).rev() {
        for j in (1..=n).rev() {
            if i != j {
                out.push(ctx.t(i, j, r));
            }
        }
    }
    out
}
