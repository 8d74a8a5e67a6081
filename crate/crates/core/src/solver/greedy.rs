use super::SortedBids;
use crate::allocation::Allocation;
use crate::error::{Error, Result};

/// Sequential maxima: walk the sorted bids once, keeping each bid that does
/// not overlap anything already kept, until `k` are kept.
pub fn greedy_detect(bids: &SortedBids, k: usize) -> Result<Allocation> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let mut alloc = Allocation::new(bids.width());
    for bid in bids.bids() {
        if alloc.allows(bid.loc) {
            alloc.push(*bid)?;
            if alloc.len() == k {
                return Ok(alloc);
            }
        }
    }
    Err(Error::Infeasible { k })
}
