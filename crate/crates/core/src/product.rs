/// Odometer over the Cartesian product of per-position choice lists.
///
/// The last position varies fastest. An empty list of positions yields a
/// single empty tuple; any empty choice list yields nothing.
#[derive(Debug, Clone)]
pub(crate) struct Odometer {
    radix: Vec<usize>,
    digits: Vec<usize>,
    done: bool,
}

impl Odometer {
    pub(crate) fn new(radix: Vec<usize>) -> Self {
        let done = radix.contains(&0);
        Self {
            digits: vec![0; radix.len()],
            radix,
            done,
        }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.digits.clone();
        let mut k = self.radix.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.digits[k] += 1;
            if self.digits[k] < self.radix[k] {
                break;
            }
            self.digits[k] = 0;
        }
        Some(out)
    }
}

/// All orderings of `items`, in lexicographic order of positions.
pub(crate) fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut idx: Vec<usize> = (0..items.len()).collect();
    let mut out = Vec::new();
    loop {
        out.push(idx.iter().map(|&k| items[k].clone()).collect());
        // next lexicographic permutation of idx
        let Some(pivot) = (1..idx.len()).rev().find(|&k| idx[k - 1] < idx[k]) else {
            return out;
        };
        let swap = (pivot..idx.len())
            .rev()
            .find(|&k| idx[k] > idx[pivot - 1])
            .unwrap();
        idx.swap(pivot - 1, swap);
        idx[pivot..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::{permutations, Odometer};

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations::<u8>(&[]).len(), 1);
        assert_eq!(permutations(&[1, 2, 3, 4]).len(), 24);
        assert_eq!(
            permutations(&['a', 'b']),
            vec![vec!['a', 'b'], vec!['b', 'a']]
        );
    }

    #[test]
    fn counts() {
        assert_eq!(Odometer::new(vec![]).count(), 1);
        assert_eq!(Odometer::new(vec![2, 3]).count(), 6);
        assert_eq!(Odometer::new(vec![2, 0]).count(), 0);
        let all: Vec<_> = Odometer::new(vec![2, 2]).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
