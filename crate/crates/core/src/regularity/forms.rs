use alloc::vec::Vec;

use crate::group::GroupTable;
use crate::FunctionGG;

/// `∫ f₁ · f₂∘S^h · f₃∘(S^h T^h) = avg_{x,y} f₁(x,y)·f₂(h·x, y)·f₃(h·x, h·y)`
pub fn bmz_form(g: &GroupTable, f1: &FunctionGG, f2: &FunctionGG, f3: &FunctionGG, h: usize) -> f64 {
    let n = g.order();
    let mul = g.row(h);
    let mut total = 0.0;
    for x in 0..n {
        let hx = mul[x] as usize;
        let (r1, r2, r3) = (f1.row(x), f2.row(hx), f3.row(hx));
        total += (0..n).map(|y| r1[y] * r2[y] * r3[mul[y] as usize]).sum::<f64>();
    }
    total / (n * n) as f64
}

/// [`bmz_form`] for every `h`.
pub fn bmz_forms(g: &GroupTable, f1: &FunctionGG, f2: &FunctionGG, f3: &FunctionGG) -> Vec<f64> {
    (0..g.order()).map(|h| bmz_form(g, f1, f2, f3, h)).collect()
}
