//! Closed-form irreducible degrees for the built-in families.

use alloc::vec;
use alloc::vec::Vec;

use crate::group::GroupSpec;

/// Degrees of the complex irreducibles, sorted, or `None` when the family
/// has no entry (symmetric and alternating groups beyond degree 7).
pub fn registry_degrees(spec: &GroupSpec) -> Option<Vec<u64>> {
    let mut out = match *spec {
        GroupSpec::Cyclic(n) => vec![1; n as usize],
        GroupSpec::Dihedral(n) => dihedral(n),
        GroupSpec::Symmetric(m) => symmetric(m)?.to_vec(),
        GroupSpec::Alternating(m) => alternating(m)?.to_vec(),
        GroupSpec::Sl2(q) => sl2(q),
        GroupSpec::Psl2(q) => psl2(q),
        GroupSpec::DirectProduct(ref a, ref b) => {
            let (a, b) = (registry_degrees(a)?, registry_degrees(b)?);
            a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
        }
    };
    out.sort_unstable();
    Some(out)
}

fn dihedral(n: u64) -> Vec<u64> {
    let (linear, planes) = if n % 2 == 1 { (2, (n - 1) / 2) } else { (4, (n - 2) / 2) };
    let mut d = vec![1; linear];
    d.extend(core::iter::repeat_n(2, planes as usize));
    d
}

fn symmetric(m: u64) -> Option<&'static [u64]> {
    Some(match m {
        0 | 1 => &[1],
        2 => &[1, 1],
        3 => &[1, 1, 2],
        4 => &[1, 1, 2, 3, 3],
        5 => &[1, 1, 4, 4, 5, 5, 6],
        6 => &[1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16],
        7 => &[1, 1, 6, 6, 14, 14, 14, 14, 15, 15, 20, 21, 21, 35, 35],
        _ => return None,
    })
}

fn alternating(m: u64) -> Option<&'static [u64]> {
    Some(match m {
        0..=2 => &[1],
        3 => &[1, 1, 1],
        4 => &[1, 1, 1, 3],
        5 => &[1, 3, 3, 4, 5],
        6 => &[1, 5, 5, 8, 8, 9, 10],
        7 => &[1, 6, 10, 10, 14, 14, 15, 21, 35],
        _ => return None,
    })
}

fn push(d: &mut Vec<u64>, degree: u64, times: u64) {
    d.extend(core::iter::repeat_n(degree, times as usize));
}

fn sl2(q: u64) -> Vec<u64> {
    if q == 2 {
        return vec![1, 1, 2];
    }
    let mut d = vec![1, q];
    push(&mut d, q + 1, (q - 3) / 2);
    push(&mut d, q - 1, (q - 1) / 2);
    push(&mut d, q.div_ceil(2), 2);
    push(&mut d, (q - 1) / 2, 2);
    d
}

fn psl2(q: u64) -> Vec<u64> {
    let mut d = vec![1, q];
    if q % 4 == 1 {
        push(&mut d, q + 1, (q - 5) / 4);
        push(&mut d, q - 1, (q - 1) / 4);
        push(&mut d, q.div_ceil(2), 2);
    } else {
        push(&mut d, q + 1, (q - 3) / 4);
        push(&mut d, q - 1, (q - 3) / 4);
        push(&mut d, (q - 1) / 2, 2);
    }
    d
}
