/// Binary max-heap of variables ordered by activity; ties go to the lower index.
#[derive(Debug, Default)]
pub(super) struct VarHeap {
    heap: Vec<u32>,
    pos: Vec<usize>,
}

const ABSENT: usize = usize::MAX;

fn above(a: u32, b: u32, act: &[f64]) -> bool {
    let (x, y) = (act[a as usize], act[b as usize]);
    x > y || (x == y && a < b)
}

impl VarHeap {
    pub fn insert(&mut self, v: u32, act: &[f64]) {
        let vi = v as usize;
        if self.pos.len() <= vi {
            self.pos.resize(vi + 1, ABSENT);
        }
        if self.pos[vi] != ABSENT {
            return;
        }
        self.pos[vi] = self.heap.len();
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, act);
    }

    pub fn increased(&mut self, v: u32, act: &[f64]) {
        if let Some(&p) = self.pos.get(v as usize) {
            if p != ABSENT {
                self.sift_up(p, act);
            }
        }
    }

    pub fn pop_max(&mut self, act: &[f64]) -> Option<u32> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top as usize] = ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if !above(v, self.heap[parent], act) {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.pos[self.heap[i] as usize] = i;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i;
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        loop {
            let l = 2 * i + 1;
            if l >= self.heap.len() {
                break;
            }
            let r = l + 1;
            let child = if r < self.heap.len() && above(self.heap[r], self.heap[l], act) { r } else { l };
            if !above(self.heap[child], v, act) {
                break;
            }
            self.heap[i] = self.heap[child];
            self.pos[self.heap[i] as usize] = i;
            i = child;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i;
    }
}
