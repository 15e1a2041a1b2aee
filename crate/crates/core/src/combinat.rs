//! Small enumeration helpers.

/// All ordered set partitions of `1..=n` into `k` nonempty blocks, each
/// block sorted ascending.
pub fn ordered_set_partitions(n: usize, k: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut assign = vec![0usize; n];
    loop {
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in assign.iter().enumerate() {
            blocks[b].push(i as u32 + 1);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(blocks);
        }
        // odometer in base k
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            assign[pos] += 1;
            if assign[pos] < k {
                break;
            }
            assign[pos] = 0;
            pos += 1;
        }
    }
}

/// Compositions of `n` into `k` positive parts, in lexicographic order.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if n == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for first in 1..=n.saturating_sub(k - 1) {
            prefix.push(first);
            rec(n - first, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// Weak compositions of `n` into `k` nonnegative parts.
pub fn weak_compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    compositions(n + k, k)
        .into_iter()
        .map(|c| c.into_iter().map(|x| x - 1).collect())
        .collect()
}

/// Every permutation of `1..=n` as a table, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut current: Vec<u32> = (1..=n as u32).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
        out.push(current.clone());
    }
}

/// Cartesian product of index ranges `0..lens[i]`.
pub fn product_indices(lens: &[usize]) -> Vec<Vec<usize>> {
    if lens.contains(&0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; lens.len()];
    loop {
        out.push(idx.clone());
        let mut pos = lens.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < lens[pos] {
                break;
            }
            idx[pos] = 0;
        }
    }
}
