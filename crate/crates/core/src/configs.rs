//! Block configurations `(s_1, ..., s_m)` with `0 <= s_i <= r_i`.

/// Iterates all configurations in lexicographic order, starting at all zeros.
#[derive(Clone, Debug)]
pub struct Configs {
    ranks: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Configs {
    pub fn new(ranks: &[usize]) -> Self {
        Configs { ranks: ranks.to_vec(), next: Some(vec![0; ranks.len()]) }
    }

    /// Total number of configurations.
    pub fn count(ranks: &[usize]) -> u128 {
        ranks.iter().map(|&r| r as u128 + 1).product()
    }
}

impl Iterator for Configs {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        for i in (0..succ.len()).rev() {
            if succ[i] < self.ranks[i] {
                succ[i] += 1;
                self.next = Some(succ);
                return Some(cur);
            }
            succ[i] = 0;
        }
        Some(cur)
    }
}
