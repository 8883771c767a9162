use alloc::vec;
use alloc::vec::Vec;

const ABSENT: u32 = u32::MAX;

/// Max-heap of variable indices keyed by an external activity array.
#[derive(Debug, Clone)]
pub(crate) struct VarHeap {
    heap: Vec<u32>,
    position: Vec<u32>,
}

impl VarHeap {
    pub fn new(vars: usize) -> Self {
        VarHeap { heap: Vec::with_capacity(vars), position: vec![ABSENT; vars] }
    }

    pub fn contains(&self, var: usize) -> bool {
        self.position[var] != ABSENT
    }

    pub fn insert(&mut self, var: usize, activity: &[f64]) {
        if self.contains(var) {
            return;
        }
        self.position[var] = self.heap.len() as u32;
        self.heap.push(var as u32);
        self.sift_up(self.heap.len() - 1, activity);
    }

    /// Restores the heap property after `var`'s activity increased.
    pub fn increased(&mut self, var: usize, activity: &[f64]) {
        if self.contains(var) {
            self.sift_up(self.position[var] as usize, activity);
        }
    }

    pub fn pop(&mut self, activity: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.position[top as usize] = ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.position[last as usize] = 0;
            self.sift_down(0, activity);
        }
        Some(top as usize)
    }

    fn sift_up(&mut self, mut i: usize, activity: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let p = self.heap[parent];
            if activity[p as usize] >= activity[v as usize] {
                break;
            }
            self.heap[i] = p;
            self.position[p as usize] = i as u32;
            i = parent;
        }
        self.heap[i] = v;
        self.position[v as usize] = i as u32;
    }

    fn sift_down(&mut self, mut i: usize, activity: &[f64]) {
        let v = self.heap[i];
        let len = self.heap.len();
        loop {
            let left = 2 * i + 1;
            if left >= len {
                break;
            }
            let right = left + 1;
            let child = if right < len && activity[self.heap[right] as usize] > activity[self.heap[left] as usize] {
                right
            } else {
                left
            };
            let c = self.heap[child];
            if activity[c as usize] <= activity[v as usize] {
                break;
            }
            self.heap[i] = c;
            self.position[c as usize] = i as u32;
            i = child;
        }
        self.heap[i] = v;
        self.position[v as usize] = i as u32;
    }
}
