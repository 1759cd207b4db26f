//! Epoch-stamped scratch buffers. Clearing is O(1): bump the epoch instead
//! of touching every slot.

pub(crate) struct EpochSet {
    stamp: Vec<u32>,
    epoch: u32,
}

impl EpochSet {
    pub fn new(len: usize) -> Self {
        EpochSet {
            stamp: vec![0; len],
            epoch: 1,
        }
    }

    pub fn clear(&mut self) {
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 1;
        } else {
            self.epoch += 1;
        }
    }

    /// Returns true if `i` was not yet in the set.
    pub fn insert(&mut self, i: usize) -> bool {
        if self.stamp[i] == self.epoch {
            false
        } else {
            self.stamp[i] = self.epoch;
            true
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.stamp[i] == self.epoch
    }
}

pub(crate) struct EpochMap {
    stamp: Vec<u32>,
    value: Vec<u32>,
    epoch: u32,
}

impl EpochMap {
    pub fn new(len: usize) -> Self {
        EpochMap {
            stamp: vec![0; len],
            value: vec![0; len],
            epoch: 1,
        }
    }

    pub fn clear(&mut self) {
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 1;
        } else {
            self.epoch += 1;
        }
    }

    pub fn insert(&mut self, i: usize, value: u32) {
        self.stamp[i] = self.epoch;
        self.value[i] = value;
    }

    pub fn get(&self, i: usize) -> Option<u32> {
        (self.stamp[i] == self.epoch).then(|| self.value[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epoch_set_clears_in_constant_time() {
        let mut set = EpochSet::new(4);
        assert!(set.insert(2));
        assert!(!set.insert(2));
        assert!(set.contains(2));
        set.clear();
        assert!(!set.contains(2));
        assert!(set.insert(2));
    }

    #[test]
    fn epoch_map_roundtrip() {
        let mut map = EpochMap::new(3);
        map.insert(1, 7);
        assert_eq!(map.get(1), Some(7));
        assert_eq!(map.get(0), None);
        map.clear();
        assert_eq!(map.get(1), None);
    }
}
