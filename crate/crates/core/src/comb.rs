//! Small combinatorial helpers shared by the graph code and the searches.

/// `C(n, k)` as a `u128`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `C(n, k)` as `u64`; panics if it does not fit.
pub fn binom64(n: u64, k: u64) -> u64 {
    u64::try_from(binomial(n, k)).expect("binomial coefficient overflows u64")
}

/// Iterates the `k`-subsets of `{0, .., n-1}` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: u32,
    current: Vec<u32>,
    done: bool,
}

impl Combinations {
    pub fn new(n: u32, k: usize) -> Self {
        Combinations {
            n,
            current: (0..k as u32).collect(),
            done: k as u64 > n as u64,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        // find rightmost position that can be incremented
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - (k - i) as u32 {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            self.done = true;
        }
        Some(out)
    }
}

/// All `k`-subsets of `{0, .., n-1}` in lexicographic order.
pub fn combinations(n: u32, k: usize) -> Combinations {
    Combinations::new(n, k)
}

/// Colex rank of a strictly ascending tuple: `sum_i C(v_i, i + 1)`.
///
/// Injective on `k`-subsets and onto `0..C(n, k)` for subsets of `{0..n-1}`.
pub fn colex_rank(sorted: &[u32]) -> u128 {
    sorted
        .iter()
        .enumerate()
        .map(|(i, &v)| binomial(v as u64, i as u64 + 1))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(53, 2), 1378);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binom64(100, 3), 161_700);
    }

    #[test]
    fn combinations_in_lex_order() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(6, 3).count(), 20);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn colex_rank_is_a_bijection() {
        let mut ranks: Vec<u128> = combinations(7, 3).map(|s| colex_rank(&s)).collect();
        ranks.sort();
        assert_eq!(ranks, (0..35).collect::<Vec<u128>>());
    }
}
