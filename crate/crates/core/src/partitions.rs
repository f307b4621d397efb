//! Integer partitions in multiplicity-vector form.

use crate::exact_arith::{factorial, Integer};

/// A partition of `l` stored as `(m_1, ..., m_l)` with `sum i * m_i = l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    multiplicities: Vec<u32>,
    num_parts: u32,
}

impl Partition {
    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// Multiplicity of part size `i` (1-based); zero beyond the vector.
    pub fn multiplicity(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.multiplicities.get(i - 1).copied().unwrap_or(0)
    }

    pub fn num_parts(&self) -> u32 {
        self.num_parts
    }

    pub fn weight(&self) -> u32 {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u32 + 1) * m)
            .sum()
    }

    /// `(part size, multiplicity)` for every part size that occurs.
    pub fn parts(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| (i as u32 + 1, m))
    }

    /// `l! / prod_i (m_i! i^{m_i})`, the number of permutations of `l`
    /// letters with this cycle type.
    pub fn cycle_count(&self) -> Integer {
        let mut denom = Integer::from(1);
        for (i, m) in self.parts() {
            denom *= factorial(m) * num_traits::pow(Integer::from(i), m as usize);
        }
        factorial(self.weight()) / denom
    }
}

/// Every partition of `l`, in descending lexicographic order of the
/// multiplicity vector. `l = 0` yields the single empty partition.
pub fn enumerate_partitions(l: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = vec![0u32; l as usize];
    fill(1, l, l, &mut current, &mut out);
    out
}

fn fill(part: u32, remaining: u32, l: u32, current: &mut [u32], out: &mut Vec<Partition>) {
    if part > l {
        if remaining == 0 {
            out.push(Partition {
                multiplicities: current.to_vec(),
                num_parts: current.iter().sum(),
            });
        }
        return;
    }
    if part == l {
        // the last slot must absorb whatever is left exactly
        if remaining.is_multiple_of(part) {
            current[part as usize - 1] = remaining / part;
            fill(part + 1, 0, l, current, out);
            current[part as usize - 1] = 0;
        }
        return;
    }
    for m in (0..=remaining / part).rev() {
        current[part as usize - 1] = m;
        fill(part + 1, remaining - part * m, l, current, out);
    }
    current[part as usize - 1] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_cases() {
        let p0 = enumerate_partitions(0);
        assert_eq!(p0.len(), 1);
        assert!(p0[0].multiplicities().is_empty());
        assert_eq!(p0[0].num_parts(), 0);

        let p3: Vec<Vec<u32>> = enumerate_partitions(3)
            .iter()
            .map(|p| p.multiplicities().to_vec())
            .collect();
        assert_eq!(p3, vec![vec![3, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);

        assert_eq!(enumerate_partitions(6).len(), 11);
    }

    #[test]
    fn counts_match_partition_function() {
        let p = [
            1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627,
        ];
        for (l, &expected) in p.iter().enumerate() {
            assert_eq!(enumerate_partitions(l as u32).len(), expected, "l = {l}");
        }
    }

    #[test]
    fn weight_invariant_and_no_duplicates() {
        for l in 0..=20 {
            let parts = enumerate_partitions(l);
            let mut seen = HashSet::new();
            for p in &parts {
                assert_eq!(p.weight(), l);
                assert_eq!(p.num_parts(), p.multiplicities().iter().sum::<u32>());
                assert!(seen.insert(p.multiplicities().to_vec()));
            }
            // descending lexicographic order
            for w in parts.windows(2) {
                assert!(w[0].multiplicities() > w[1].multiplicities());
            }
        }
    }

    #[test]
    fn cycle_counts_sum_to_factorial() {
        for l in 0..=10 {
            let total: Integer = enumerate_partitions(l).iter().map(Partition::cycle_count).sum();
            assert_eq!(total, factorial(l));
        }
    }
}
