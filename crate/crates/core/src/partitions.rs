//! Shared combinatorial plumbing: binomials, subset enumeration, restricted
//! growth strings (set partitions used as canonical colorings), and integer
//! partitions (class-size multisets).

/// C(n, k) as u128; panics on overflow (callers stay far below that).
pub fn binomial(n: u64, k: u64) -> u128 {
    binomial_checked(n, k).expect("binomial overflow")
}

/// C(n, k), None on u128 overflow. C(n, k) = 0 when k > n.
pub fn binomial_checked(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.checked_mul((n - k + i) as u128)?;
        acc /= i as u128;
    }
    Some(acc)
}

/// All k-subsets of 0..n in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Iterator over restricted growth strings of length n with at most
/// `max_blocks` blocks: one canonical representative per set partition,
/// in lexicographic order. These are exactly the colorings quotiented by
/// color-name permutation (empty classes allowed).
pub struct RgsIter {
    n: usize,
    max_blocks: usize,
    current: Vec<u8>,
    prefix_max: Vec<u8>,
    done: bool,
}

impl RgsIter {
    pub fn new(n: usize, max_blocks: usize) -> Self {
        assert!(n >= 1 && max_blocks >= 1);
        assert!(max_blocks <= 255, "more than 255 blocks is unsupported");
        Self {
            n,
            max_blocks,
            current: vec![0; n],
            prefix_max: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for RgsIter {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // Find the rightmost position that can still grow.
        let cap = (self.max_blocks - 1) as u8;
        let mut i = self.n;
        loop {
            if i <= 1 {
                self.done = true;
                return Some(out);
            }
            i -= 1;
            let limit = (self.prefix_max[i - 1] + 1).min(cap);
            if self.current[i] < limit {
                break;
            }
        }
        self.current[i] += 1;
        self.prefix_max[i] = self.prefix_max[i - 1].max(self.current[i]);
        for j in i + 1..self.n {
            self.current[j] = 0;
            self.prefix_max[j] = self.prefix_max[j - 1];
        }
        Some(out)
    }
}

/// Number of set partitions of n elements into at most `max_blocks` blocks
/// (what `RgsIter` yields), saturating at u128::MAX.
pub fn rgs_count(n: usize, max_blocks: usize) -> u128 {
    // Stirling numbers of the second kind, summed over block counts.
    let mut row: Vec<u128> = vec![0; max_blocks + 1];
    row[0] = 1;
    for _ in 1..=n {
        let mut next = vec![0u128; max_blocks + 1];
        for j in 1..=max_blocks {
            let grow = row[j].saturating_mul(j as u128);
            next[j] = grow.saturating_add(row[j - 1]);
        }
        row = next;
        row[0] = 0;
    }
    row.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

/// Integer partitions of n into at most `max_parts` parts, each partition in
/// non-increasing order; the list is in descending lexicographic order
/// starting from the single-part partition.
pub fn integer_partitions(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: usize, max_part: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = rest.min(max_part);
        // A feasibility cut: the remaining slots must be able to absorb rest.
        for part in (1..=hi).rev() {
            if part * slots < rest {
                break;
            }
            cur.push(part);
            rec(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    rec(n, n, max_parts, &mut cur, &mut out);
    out
}

/// The canonical coloring with the given non-increasing class sizes:
/// vertices 0..sizes[0] get color 0, the next block color 1, and so on.
pub fn coloring_from_sizes(sizes: &[usize]) -> Vec<u8> {
    let n: usize = sizes.iter().sum();
    let mut colors = vec![0u8; n];
    let mut at = 0;
    for (c, &s) in sizes.iter().enumerate() {
        for v in at..at + s {
            colors[v] = c as u8;
        }
        at += s;
    }
    colors
}

/// Non-increasing class-size multiset of a coloring with `r` colors.
pub fn class_sizes(colors: &[u8], r: usize) -> Vec<usize> {
    let mut sizes = vec![0usize; r];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    sizes.retain(|&s| s > 0);
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}
