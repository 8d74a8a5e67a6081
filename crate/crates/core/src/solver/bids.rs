use crate::allocation::Bid;
use crate::grid::{Grid, Location};

/// Every valid anchor as a bid, by price descending, ties by `(n, m)` ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct SortedBids {
    bids: Vec<Bid>,
    width: usize,
}

impl SortedBids {
    pub fn bids(&self) -> &[Bid] {
        &self.bids
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.bids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bids.is_empty()
    }
}

pub fn sort_bids(prices: &Grid, width: usize) -> SortedBids {
    let mut bids = Vec::with_capacity(prices.rows() * prices.cols());
    for n in 0..prices.rows() {
        for m in 0..prices.cols() {
            bids.push(Bid::new(Location::new(n, m), prices.get(n, m)));
        }
    }
    bids.sort_by(|a, b| b.price.total_cmp(&a.price).then_with(|| a.loc.cmp(&b.loc)));
    SortedBids { bids, width }
}
