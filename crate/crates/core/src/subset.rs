//! Membership masks over the carrier of a finite hemiring.

use std::fmt;

/// Largest carrier size representable by a [`Subset`] mask.
pub const MAX_ORDER: usize = 64;

/// A subset of the carrier `{0, .., order-1}`, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    mask: u64,
    order: u8,
}

impl Subset {
    pub fn empty(order: usize) -> Self {
        debug_assert!(order <= MAX_ORDER);
        Subset { mask: 0, order: order as u8 }
    }

    pub fn full(order: usize) -> Self {
        debug_assert!(order <= MAX_ORDER);
        Subset { mask: full_mask(order), order: order as u8 }
    }

    pub fn singleton(order: usize, x: usize) -> Self {
        Self::empty(order).with(x)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(order: usize, elems: I) -> Self {
        elems.into_iter().fold(Self::empty(order), |s, x| s.with(x))
    }

    /// Builds a subset from a raw mask; bits at or above `order` are dropped.
    pub fn from_mask(order: usize, mask: u64) -> Self {
        Subset { mask: mask & full_mask(order), order: order as u8 }
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn order(self) -> usize {
        self.order as usize
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        self.mask >> x & 1 == 1
    }

    #[inline]
    pub fn with(self, x: usize) -> Self {
        debug_assert!(x < self.order());
        Subset { mask: self.mask | 1 << x, ..self }
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    #[inline]
    pub fn is_full(self) -> bool {
        self.mask == full_mask(self.order())
    }

    #[inline]
    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        Subset { mask: self.mask | other.mask, ..self }
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        Subset { mask: self.mask & other.mask, ..self }
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        Subset { mask: self.mask & !other.mask, ..self }
    }

    #[inline]
    pub fn complement(self) -> Self {
        Subset { mask: !self.mask & full_mask(self.order()), ..self }
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.mask & !other.mask == 0
    }

    /// Elements in increasing index order.
    pub fn iter(self) -> Elements {
        Elements { rest: self.mask }
    }

    /// Renders the subset as comma-separated element names, e.g. `0,a`.
    pub fn render(self, names: &[String]) -> String {
        let parts: Vec<&str> = self.iter().map(|x| names[x].as_str()).collect();
        parts.join(",")
    }

    /// All subsets of a carrier of size `order`, in increasing mask order.
    pub fn all(order: usize) -> impl Iterator<Item = Subset> {
        let top = full_mask(order);
        (0..=top).map(move |m| Subset::from_mask(order, m))
    }

    /// All subsets that contain the element 0.
    pub fn all_with_zero(order: usize) -> impl Iterator<Item = Subset> {
        Self::all(order).filter(|s| s.contains(0))
    }

    /// All non-empty subsets.
    pub fn all_nonempty(order: usize) -> impl Iterator<Item = Subset> {
        Self::all(order).skip(1)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = Elements;
    fn into_iter(self) -> Elements {
        self.iter()
    }
}

/// Iterator over the members of a [`Subset`].
#[derive(Clone)]
pub struct Elements {
    rest: u64,
}

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.rest == 0 {
            return None;
        }
        let x = self.rest.trailing_zeros() as usize;
        self.rest &= self.rest - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.rest.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

#[inline]
pub(crate) fn full_mask(order: usize) -> u64 {
    if order >= 64 {
        u64::MAX
    } else {
        (1u64 << order) - 1
    }
}

impl serde::Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = Subset::from_elements(4, [0, 2]);
        let b = Subset::from_elements(4, [2, 3]);
        assert_eq!(a.union(b), Subset::from_elements(4, [0, 2, 3]));
        assert_eq!(a.intersection(b), Subset::singleton(4, 2));
        assert_eq!(a.complement(), Subset::from_elements(4, [1, 3]));
        assert!(a.intersection(b).is_subset_of(a));
        assert!(!a.is_subset_of(b));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Subset::all(3).count(), 8);
        assert_eq!(Subset::all_nonempty(3).count(), 7);
        assert_eq!(Subset::all_with_zero(3).count(), 4);
        assert!(Subset::full(64).is_full());
    }

    #[test]
    fn render_uses_names() {
        let names: Vec<String> = ["0", "a", "1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(Subset::from_elements(3, [0, 1]).render(&names), "0,a");
        assert_eq!(Subset::empty(3).render(&names), "");
    }
}
