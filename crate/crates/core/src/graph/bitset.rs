/// Fixed-capacity set of vertex indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(capacity: usize) -> Self {
        Bitset { words: vec![0; capacity.div_ceil(64)] }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for i in 0..capacity {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection_len(&self, other: &Bitset) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Smallest element strictly greater than `i`, if any.
    pub fn next_after(&self, i: Option<usize>) -> Option<usize> {
        let start = i.map_or(0, |i| i + 1);
        let mut wi = start / 64;
        if wi >= self.words.len() {
            return None;
        }
        let mut w = self.words[wi] & (!0u64).checked_shl((start % 64) as u32).unwrap_or(0);
        loop {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
            wi += 1;
            if wi == self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    /// Drops every element `<= i`.
    pub fn retain_after(&mut self, i: usize) {
        let wi = i / 64;
        for w in self.words.iter_mut().take(wi) {
            *w = 0;
        }
        if let Some(w) = self.words.get_mut(wi) {
            *w &= (!0u64).checked_shl((i % 64 + 1) as u32).unwrap_or(0);
        }
    }

    /// Number of elements strictly greater than `i`.
    pub fn count_after(&self, i: Option<usize>) -> usize {
        match i {
            None => self.len(),
            Some(i) => self.iter().filter(|&x| x > i).count(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = Bitset::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.len(), 3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(s.next_after(None), Some(0));
        assert_eq!(s.next_after(Some(0)), Some(64));
        assert_eq!(s.next_after(Some(64)), Some(129));
        assert_eq!(s.next_after(Some(129)), None);
        assert_eq!(s.count_after(Some(0)), 2);
        let mut t = s.clone();
        t.retain_after(63);
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![64, 129]);
        t.retain_after(64);
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![129]);
        s.remove(64);
        assert!(!s.contains(64));
        assert!(!s.contains(1000));
    }
}
