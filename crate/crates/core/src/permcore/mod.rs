//! Permutation arithmetic, orbits and blocks, stabilizer chains and
//! alternating-group containment.

mod chain;
mod cycletype;
mod group;
mod perm;

pub use chain::StabChain;
pub use cycletype::CycleType;
pub use group::{BlockSystem, GroupHandle};
pub use perm::{product, Perm};

use num_bigint::BigUint;

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

/// All partitions of `n`, each in nonincreasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            rec(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All `n!` permutations of degree `n`, in lexicographic order of images.
pub fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(images: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        let n = used.len();
        if images.len() == n {
            out.push(Perm::from_images(images.clone()).expect("bijection"));
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                images.push(x);
                rec(images, used, out);
                images.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
