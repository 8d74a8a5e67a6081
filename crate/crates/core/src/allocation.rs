//! Bids, the geometric conflict test, and allocations of non-overlapping bids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Location;

/// Two `w x w` squares anchored at `a` and `b` share a pixel.
///
/// Squares overlap iff both coordinate offsets are below `w`, so this is the
/// negation of the separation condition `max(|dn|, |dm|) >= w`.
#[inline]
pub fn conflicts(a: Location, b: Location, w: usize) -> bool {
    a.n.abs_diff(b.n) < w && a.m.abs_diff(b.m) < w
}

/// A candidate placement and its correlation price.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bid {
    pub loc: Location,
    pub price: f64,
}

impl Bid {
    pub const fn new(loc: Location, price: f64) -> Self {
        Self { loc, price }
    }
}

/// Ordered set of mutually non-conflicting bids.
///
/// Revenue is accumulated in insertion order so identical inputs always give
/// bit-identical objectives.
#[derive(Clone, Debug, PartialEq)]
pub struct Allocation {
    bids: Vec<Bid>,
    revenue: f64,
    width: usize,
}

impl Allocation {
    pub fn new(width: usize) -> Self {
        Self {
            bids: Vec::new(),
            revenue: 0.0,
            width,
        }
    }

    pub fn from_bids(width: usize, bids: impl IntoIterator<Item = Bid>) -> Result<Self> {
        let mut alloc = Self::new(width);
        for bid in bids {
            alloc.push(bid)?;
        }
        Ok(alloc)
    }

    /// First member that conflicts with `loc`, if any.
    pub fn conflict_with(&self, loc: Location) -> Option<&Bid> {
        self.bids.iter().find(|b| conflicts(b.loc, loc, self.width))
    }

    pub fn allows(&self, loc: Location) -> bool {
        self.conflict_with(loc).is_none()
    }

    pub fn push(&mut self, bid: Bid) -> Result<()> {
        if let Some(other) = self.conflict_with(bid.loc) {
            return Err(Error::Conflict {
                a_n: other.loc.n,
                a_m: other.loc.m,
                b_n: bid.loc.n,
                b_m: bid.loc.m,
                w: self.width,
            });
        }
        self.bids.push(bid);
        self.revenue += bid.price;
        Ok(())
    }

    pub fn bids(&self) -> &[Bid] {
        &self.bids
    }

    pub fn locations(&self) -> Vec<Location> {
        self.bids.iter().map(|b| b.loc).collect()
    }

    pub fn len(&self) -> usize {
        self.bids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bids.is_empty()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Sum of member prices in list order.
    pub fn revenue(&self) -> f64 {
        self.revenue
    }
}

/// Sum of prices in list order; the constrained likelihood objective.
pub fn allocation_revenue(alloc: &Allocation) -> f64 {
    alloc.bids().iter().fold(0.0, |acc, b| acc + b.price)
}

/// Pairwise separation check for an arbitrary list of anchors.
pub fn pairwise_separated(locs: &[Location], w: usize) -> bool {
    locs.iter()
        .enumerate()
        .all(|(i, &a)| locs[i + 1..].iter().all(|&b| !conflicts(a, b, w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlate::correlate;
    use crate::grid::Grid;
    use crate::template::ones_template;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn pixels(a: (i64, i64), w: i64) -> HashSet<(i64, i64)> {
        let mut set = HashSet::new();
        for u in 0..w {
            for v in 0..w {
                set.insert((a.0 + u, a.1 + v));
            }
        }
        set
    }

    #[test]
    fn conflict_examples() {
        let o = Location::new(0, 0);
        assert!(conflicts(o, o, 3));
        assert!(!conflicts(o, Location::new(3, 0), 3));
        assert!(conflicts(o, Location::new(2, 2), 3));
    }

    #[test]
    fn conflict_matches_pixel_overlap_exhaustively() {
        for w in 1..=6i64 {
            let base = (2 * w, 2 * w);
            for dn in -2 * w..=2 * w {
                for dm in -2 * w..=2 * w {
                    let other = (base.0 + dn, base.1 + dm);
                    let overlap = !pixels(base, w).is_disjoint(&pixels(other, w));
                    let a = Location::new(base.0 as usize, base.1 as usize);
                    let b = Location::new(other.0 as usize, other.1 as usize);
                    assert_eq!(conflicts(a, b, w as usize), overlap, "w={w} d=({dn},{dm})");
                    assert_eq!(conflicts(a, b, w as usize), conflicts(b, a, w as usize));
                }
            }
        }
    }

    #[test]
    fn revenue_examples() {
        assert_eq!(allocation_revenue(&Allocation::new(3)), 0.0);
        let a = Allocation::from_bids(
            1,
            [Bid::new(Location::new(0, 0), 2.5), Bid::new(Location::new(0, 1), -1.0)],
        )
        .unwrap();
        assert_eq!(allocation_revenue(&a), 1.5);
        assert_eq!(a.revenue(), 1.5);
    }

    #[test]
    fn push_rejects_conflicts() {
        let mut a = Allocation::new(3);
        a.push(Bid::new(Location::new(5, 5), 1.0)).unwrap();
        assert!(matches!(
            a.push(Bid::new(Location::new(7, 3), 1.0)),
            Err(Error::Conflict { w: 3, .. })
        ));
        a.push(Bid::new(Location::new(8, 3), 1.0)).unwrap();
        assert_eq!(a.len(), 2);
        assert!(pairwise_separated(&a.locations(), 3));
    }

    #[test]
    fn clean_revenue_equals_template_energy_per_occurrence() {
        let s = ones_template(3).unwrap();
        let locs = [Location::new(0, 0), Location::new(0, 3), Location::new(5, 1), Location::new(3, 6)];
        let mut y = Grid::zeros(10, 10).unwrap();
        for &l in &locs {
            y.add_template(&s, l).unwrap();
        }
        let prices = correlate(&y, &s).unwrap();
        let alloc = Allocation::from_bids(3, locs.iter().map(|&l| Bid::new(l, prices.at(l)))).unwrap();
        assert_eq!(allocation_revenue(&alloc), 9.0 * locs.len() as f64);
    }

    proptest! {
        #[test]
        fn allocations_stay_separated(
            w in 1usize..5,
            pts in prop::collection::vec((0usize..20, 0usize..20, -5.0f64..5.0), 0..30)
        ) {
            let mut a = Allocation::new(w);
            for (n, m, p) in pts {
                let _ = a.push(Bid::new(Location::new(n, m), p));
            }
            prop_assert!(pairwise_separated(&a.locations(), w));
            prop_assert_eq!(a.revenue(), allocation_revenue(&a));
        }
    }
}
