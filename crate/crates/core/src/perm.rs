//! Permutation enumeration in lexicographic order, with signs.

/// All permutations of `0..n` in lexicographic order, each with its sign.
pub struct Permutations {
    current: Option<Vec<usize>>,
    sign: i8,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations {
            current: Some((0..n).collect()),
            sign: 1,
        }
    }
}

impl Iterator for Permutations {
    type Item = (Vec<usize>, i8);

    fn next(&mut self) -> Option<Self::Item> {
        let perm = self.current.take()?;
        let out = (perm.clone(), self.sign);
        let mut p = perm;
        let n = p.len();
        // next lexicographic permutation, tracking the parity of the swaps
        if let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) {
            let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
            p.swap(i, j);
            let tail = n - i - 1;
            p[i + 1..].reverse();
            let swaps = 1 + tail / 2;
            if swaps % 2 == 1 {
                self.sign = -self.sign;
            }
            self.current = Some(p);
        }
        Some(out)
    }
}

/// Sign of a permutation given as an image vector.
pub fn sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut s = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_signs() {
        for n in 0..=6 {
            let all: Vec<_> = Permutations::new(n).collect();
            assert_eq!(all.len() as u64, factorial(n));
            for (p, s) in &all {
                assert_eq!(*s, sign(p), "{p:?}");
            }
            let total: i64 = all.iter().map(|(_, s)| *s as i64).sum();
            assert_eq!(total, if n <= 1 { 1 } else { 0 });
        }
    }

    #[test]
    fn lexicographic_order() {
        let all: Vec<_> = Permutations::new(3).map(|(p, _)| p).collect();
        assert_eq!(
            all,
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]]
        );
    }
}
