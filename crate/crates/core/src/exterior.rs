//! Exterior monomials `e_T = e_{t_1} ∧ ... ∧ e_{t_k}` with `t_1 < ... < t_k`.

use std::fmt;

/// A wedge of distinct generators, stored as a strictly increasing list of
/// 1-based indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ExtMonomial {
    indices: Vec<usize>,
}

impl ExtMonomial {
    pub fn one() -> Self {
        ExtMonomial { indices: Vec::new() }
    }

    /// The generator `e_t` (1-based).
    pub fn generator(t: usize) -> Self {
        assert!(t >= 1, "exterior generators are 1-based");
        ExtMonomial { indices: vec![t] }
    }

    /// Builds from a strictly increasing list; `None` otherwise.
    pub fn from_sorted(indices: Vec<usize>) -> Option<Self> {
        let increasing = indices.windows(2).all(|w| w[0] < w[1]);
        (increasing && indices.first().is_none_or(|&t| t >= 1)).then_some(ExtMonomial { indices })
    }

    /// Sorts an arbitrary list of indices, returning the sign of the sorting
    /// permutation, or `None` on a repeated index.
    pub fn from_unsorted(indices: &[usize]) -> Option<(i64, Self)> {
        let mut v = indices.to_vec();
        let mut sign = 1;
        // Insertion sort; each adjacent swap is one transposition.
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, ExtMonomial { indices: v }))
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, t: usize) -> bool {
        self.indices.binary_search(&t).is_ok()
    }

    /// Removes the factor in slot `pos` (0-based).
    pub fn remove_slot(&self, pos: usize) -> ExtMonomial {
        let mut indices = self.indices.clone();
        indices.remove(pos);
        ExtMonomial { indices }
    }

    /// All `k`-subsets of `1..=n` in lexicographic order.
    pub fn all_of_degree(n: usize, k: usize) -> Vec<ExtMonomial> {
        fn fill(start: usize, n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<ExtMonomial>) {
            if prefix.len() == k {
                out.push(ExtMonomial { indices: prefix.clone() });
                return;
            }
            for t in start..=n {
                prefix.push(t);
                fill(t + 1, n, k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if k <= n {
            fill(1, n, k, &mut Vec::with_capacity(k), &mut out);
        }
        out
    }

    /// Relabels generators `e_t -> e_{perm[t-1]+1}`, returning the reordering sign.
    pub fn permute(&self, perm: &[usize]) -> (i64, ExtMonomial) {
        let mapped: Vec<usize> = self.indices.iter().map(|&t| perm[t - 1] + 1).collect();
        ExtMonomial::from_unsorted(&mapped).expect("a permutation keeps indices distinct")
    }
}

impl fmt::Display for ExtMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|t| t.to_string()).collect();
        write!(f, "e[{}]", parts.join(","))
    }
}

/// `e_T ∧ e_U = sign · e_{T ∪ U}`, or `None` when `T` and `U` share an index.
///
/// The sign is `(-1)^{#{(t, u) : t ∈ T, u ∈ U, t > u}}`, counted during a
/// merge of the two sorted lists.
pub fn wedge(left: &ExtMonomial, right: &ExtMonomial) -> Option<(i64, ExtMonomial)> {
    let (a, b) = (&left.indices, &right.indices);
    let mut merged = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                merged.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // b[j] jumps over the remaining a[i..].
                inversions += a.len() - i;
                merged.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    merged.extend_from_slice(&a[i..]);
    merged.extend_from_slice(&b[j..]);
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, ExtMonomial { indices: merged }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[usize]) -> ExtMonomial {
        ExtMonomial::from_sorted(v.to_vec()).unwrap()
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&e(&[1]), &e(&[2])), Some((1, e(&[1, 2]))));
        assert_eq!(wedge(&e(&[2]), &e(&[1])), Some((-1, e(&[1, 2]))));
        assert_eq!(wedge(&e(&[1]), &e(&[1])), None);
        assert_eq!(wedge(&e(&[2, 3]), &e(&[1])), Some((1, e(&[1, 2, 3]))));
        assert_eq!(wedge(&e(&[1, 3]), &e(&[2])), Some((-1, e(&[1, 2, 3]))));
        assert_eq!(wedge(&ExtMonomial::one(), &e(&[2])), Some((1, e(&[2]))));
    }

    #[test]
    fn wedge_agrees_with_sorting_sign() {
        // Oracle: concatenate and sort with transposition counting.
        for n in 1..=4 {
            for k in 0..=n {
                for l in 0..=n - k {
                    for t in ExtMonomial::all_of_degree(n, k) {
                        for u in ExtMonomial::all_of_degree(n, l) {
                            let cat: Vec<usize> = t.indices().iter().chain(u.indices()).copied().collect();
                            assert_eq!(wedge(&t, &u), ExtMonomial::from_unsorted(&cat));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subsets_are_lexicographic() {
        let subsets: Vec<String> = ExtMonomial::all_of_degree(3, 2).iter().map(|m| m.to_string()).collect();
        assert_eq!(subsets, vec!["e[1,2]", "e[1,3]", "e[2,3]"]);
        assert_eq!(ExtMonomial::all_of_degree(2, 3).len(), 0);
        assert!(ExtMonomial::from_sorted(vec![2, 1]).is_none());
    }
}
