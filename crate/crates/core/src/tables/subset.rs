use std::fmt;

use serde::{Deserialize, Serialize};

use super::{bits, full_mask, TableError, MAX_ORDER};

/// A set of element indices inside a table of fixed order (at most 64).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "SubsetRepr", try_from = "SubsetRepr")]
pub struct Subset {
    universe: usize,
    mask: u64,
}

#[derive(Serialize, Deserialize)]
struct SubsetRepr {
    order: usize,
    members: Vec<usize>,
}

impl Subset {
    pub fn from_members(
        universe: usize,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, TableError> {
        if universe == 0 || universe > MAX_ORDER {
            return Err(TableError::BadOrder(universe));
        }
        let mut mask = 0u64;
        for m in members {
            if m >= universe {
                return Err(TableError::ElementOutOfRange(m));
            }
            mask |= 1u64 << m;
        }
        Ok(Subset { universe, mask })
    }

    pub(crate) fn from_mask(universe: usize, mask: u64) -> Self {
        debug_assert!(mask & !full_mask(universe) == 0);
        Subset { universe, mask }
    }

    pub fn full(universe: usize) -> Self {
        Subset {
            universe,
            mask: full_mask(universe),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.mask & (1u64 << x) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        bits(self.mask)
    }

    /// Members in increasing order.
    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        assert_eq!(self.universe, other.universe);
        Subset::from_mask(self.universe, self.mask & other.mask)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.universe == other.universe && self.mask & !other.mask == 0
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl From<Subset> for SubsetRepr {
    fn from(s: Subset) -> Self {
        SubsetRepr {
            order: s.universe,
            members: s.members(),
        }
    }
}

impl TryFrom<SubsetRepr> for Subset {
    type Error = TableError;
    fn try_from(r: SubsetRepr) -> Result<Self, Self::Error> {
        Subset::from_members(r.order, r.members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members_are_sorted() {
        let s = Subset::from_members(10, [7, 0, 3, 3]).unwrap();
        assert_eq!(s.members(), vec![0, 3, 7]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(4) && !s.contains(70));
    }

    #[test]
    fn bounds() {
        assert_eq!(
            Subset::from_members(4, [4]),
            Err(TableError::ElementOutOfRange(4))
        );
        assert_eq!(Subset::full(64).len(), 64);
    }

    #[test]
    fn set_ops() {
        let a = Subset::from_members(8, [0, 1, 2, 3]).unwrap();
        let b = Subset::from_members(8, [0, 2, 4]).unwrap();
        assert_eq!(a.intersection(&b).members(), vec![0, 2]);
        assert!(a.intersection(&b).is_subset_of(&a));
        assert!(!b.is_subset_of(&a));
    }

    #[test]
    fn json_shape() {
        let s = Subset::from_members(5, [0, 4]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"order":5,"members":[0,4]}"#);
        assert_eq!(serde_json::from_str::<Subset>(&j).unwrap(), s);
    }
}
