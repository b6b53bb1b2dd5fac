use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{GroupSpec, GroupTable};
use crate::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub order_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            order_cap: DEFAULT_ORDER_CAP,
        }
    }
}

/// Builds the Cayley table of a built-in family. The identity is always
/// element `0`.
pub fn build_group(spec: &GroupSpec, opts: &BuildOptions) -> Result<GroupTable> {
    let order = spec.order()?;
    if order > opts.order_cap as u64 {
        return Err(Error::OrderCapExceeded {
            order,
            cap: opts.order_cap,
        });
    }
    let (n, mul, labels) = raw(spec);
    debug_assert_eq!(n as u64, order);
    GroupTable::from_parts(n, mul, 0, labels, Some(spec.clone()))
}

type Raw = (usize, Vec<u32>, Vec<String>);

fn raw(spec: &GroupSpec) -> Raw {
    match *spec {
        GroupSpec::Cyclic(n) => cyclic(n as usize),
        GroupSpec::Dihedral(n) => dihedral(n as usize),
        GroupSpec::Symmetric(m) => permutations(m as usize, false),
        GroupSpec::Alternating(m) => permutations(m as usize, true),
        GroupSpec::Sl2(q) => sl2(q as usize, false),
        GroupSpec::Psl2(q) => sl2(q as usize, true),
        GroupSpec::DirectProduct(ref a, ref b) => product(raw(a), raw(b)),
    }
}

fn cyclic(n: usize) -> Raw {
    let mul = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
    (n, mul, (0..n).map(|a| a.to_string()).collect())
}

/// `r^k s^e` is stored at index `e·n + k`.
fn dihedral(n: usize) -> Raw {
    let size = 2 * n;
    let mut mul = Vec::with_capacity(size * size);
    for x in 0..size {
        let (e, a) = (x / n, x % n);
        for y in 0..size {
            let (f, b) = (y / n, y % n);
            let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
            mul.push((((e + f) % 2) * n + k) as u32);
        }
    }
    let labels = (0..size)
        .map(|x| {
            if x < n {
                format!("r^{x}")
            } else {
                format!("r^{}s", x - n)
            }
        })
        .collect();
    (size, mul, labels)
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Lexicographic rank of a permutation of `0..m`.
fn lex_rank(p: &[u8]) -> usize {
    let m = p.len();
    let mut rank = 0;
    for i in 0..m {
        let smaller = p[i + 1..].iter().filter(|&&v| v < p[i]).count();
        rank = rank * (m - i) + smaller;
    }
    rank
}

fn is_even(p: &[u8]) -> bool {
    let inversions: usize = (0..p.len())
        .map(|i| p[i + 1..].iter().filter(|&&v| v < p[i]).count())
        .sum();
    inversions.is_multiple_of(2)
}

/// Symmetric or alternating group on `0..m` in lexicographic order, with
/// composition `(σ·τ)(i) = σ(τ(i))`.
fn permutations(m: usize, even_only: bool) -> Raw {
    let total: usize = (1..=m).product();
    let mut perms: Vec<Vec<u8>> = Vec::new();
    let mut index_of = vec![u32::MAX; total];
    let mut p: Vec<u8> = (0..m as u8).collect();
    loop {
        if !even_only || is_even(&p) {
            index_of[lex_rank(&p)] = perms.len() as u32;
            perms.push(p.clone());
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    let n = perms.len();
    let mut mul = Vec::with_capacity(n * n);
    let mut comp = vec![0u8; m];
    for s in &perms {
        for t in &perms {
            for i in 0..m {
                comp[i] = s[t[i] as usize];
            }
            mul.push(index_of[lex_rank(&comp)]);
        }
    }
    let labels = perms
        .iter()
        .map(|p| {
            let images: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            format!("[{}]", images.join(","))
        })
        .collect();
    (n, mul, labels)
}

/// `SL(2, q)`, or `PSL(2, q)` when `projective`, over the prime field `F_q`.
fn sl2(q: usize, projective: bool) -> Raw {
    let code = |m: [usize; 4]| ((m[0] * q + m[1]) * q + m[2]) * q + m[3];
    let neg = |m: [usize; 4]| m.map(|v| (q - v) % q);
    let canonical = |m: [usize; 4]| {
        if projective {
            let n = neg(m);
            if code(n) < code(m) {
                return n;
            }
        }
        m
    };
    let identity = [1, 0, 0, 1];
    let mut elems = vec![identity];
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let m = [a, b, c, d];
                    if (a * d + q * q - (b * c) % (q * q)) % q != 1 % q {
                        continue;
                    }
                    if canonical(m) != m || m == identity {
                        continue;
                    }
                    elems.push(m);
                }
            }
        }
    }
    let n = elems.len();
    let mut index_of = vec![u32::MAX; q.pow(4)];
    for (i, &m) in elems.iter().enumerate() {
        index_of[code(m)] = i as u32;
        if projective {
            index_of[code(neg(m))] = i as u32;
        }
    }
    let mut mul = Vec::with_capacity(n * n);
    for x in &elems {
        for y in &elems {
            let prod = [
                (x[0] * y[0] + x[1] * y[2]) % q,
                (x[0] * y[1] + x[1] * y[3]) % q,
                (x[2] * y[0] + x[3] * y[2]) % q,
                (x[2] * y[1] + x[3] * y[3]) % q,
            ];
            mul.push(index_of[code(prod)]);
        }
    }
    let labels = elems
        .iter()
        .map(|m| {
            let body = format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3]);
            if projective {
                format!("±{body}")
            } else {
                body
            }
        })
        .collect();
    (n, mul, labels)
}

/// `(a, b)` is stored at index `a·|B| + b`.
fn product((na, ma, la): Raw, (nb, mb, lb): Raw) -> Raw {
    let n = na * nb;
    let mut mul = Vec::with_capacity(n * n);
    for a1 in 0..na {
        for b1 in 0..nb {
            for a2 in 0..na {
                let a = ma[a1 * na + a2] as usize;
                for b2 in 0..nb {
                    let b = mb[b1 * nb + b2] as usize;
                    mul.push((a * nb + b) as u32);
                }
            }
        }
    }
    let labels = la
        .iter()
        .flat_map(|x| lb.iter().map(move |y| format!("({x},{y})")))
        .collect();
    (n, mul, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(spec: &str) -> GroupTable {
        build_group(&GroupSpec::parse(spec).unwrap(), &BuildOptions::default()).unwrap()
    }

    #[test]
    fn cyclic_is_addition_mod_n() {
        let g = build("cyclic(6)");
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(g.mul(a, b), (a + b) % 6);
            }
        }
    }

    /// Independent count: all 2x2 matrices over F_q with determinant one.
    fn brute_sl2_order(q: i64) -> usize {
        let mut count = 0;
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        if (a * d - b * c).rem_euclid(q) == 1 {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn matrix_group_orders() {
        assert_eq!(brute_sl2_order(3), 24);
        assert_eq!(build("sl2(3)").order(), brute_sl2_order(3));
        assert_eq!(build("sl2(5)").order(), brute_sl2_order(5));
        // PSL: SL modulo the two scalars ±I.
        assert_eq!(build("psl2(7)").order(), brute_sl2_order(7) / 2);
        assert_eq!(build("psl2(7)").order(), 168);
        assert_eq!(build("sl2(2)").order(), 6);
    }

    #[test]
    fn labels_describe_the_construction() {
        let g = build("sl2(3)");
        assert_eq!(g.label(0), "[[1,0],[0,1]]");
        let s = build("symmetric(3)");
        assert_eq!(s.label(0), "[0,1,2]");
        assert_eq!(build("dihedral(3)").label(4), "r^1s");
    }

    #[test]
    fn order_cap_is_enforced() {
        let opts = BuildOptions { order_cap: 100 };
        assert!(matches!(
            build_group(&GroupSpec::Psl2(7), &opts),
            Err(Error::OrderCapExceeded { order: 168, .. })
        ));
        assert!(matches!(
            build_group(&GroupSpec::Symmetric(8), &BuildOptions::default()),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn small_permutation_groups() {
        assert_eq!(build("symmetric(1)").order(), 1);
        assert_eq!(build("alternating(2)").order(), 1);
        assert_eq!(build("alternating(4)").order(), 12);
        assert!(!build("symmetric(3)").is_abelian());
        assert!(build("dihedral(2)").is_abelian());
    }
}
