//! Depth-first enumeration of set partitions that are invariant under an
//! involution on the ground set.
//!
//! Partitions are emitted as restricted growth strings: `labels[i]` is the
//! class of element `i`, and class ids appear in order of first use, so each
//! partition is produced exactly once.

struct Search<'a, F> {
    neg: &'a [usize],
    labels: Vec<usize>,
    mirror: Vec<Option<usize>>,
    visit: F,
}

impl<F: FnMut(&[usize], usize)> Search<'_, F> {
    fn run(&mut self, i: usize, classes: usize) {
        if i == self.labels.len() {
            (self.visit)(&self.labels, classes);
            return;
        }
        let j = self.neg[i];
        for k in 0..=classes {
            if k == classes {
                self.mirror.push(None);
            }
            let mut undo: [Option<usize>; 2] = [None, None];
            let ok = if j < i {
                let lj = self.labels[j];
                let fits = self.mirror[k].is_none_or(|m| m == lj) && self.mirror[lj].is_none_or(|m| m == k);
                if fits {
                    if self.mirror[k].is_none() {
                        self.mirror[k] = Some(lj);
                        undo[0] = Some(k);
                    }
                    if self.mirror[lj].is_none() {
                        self.mirror[lj] = Some(k);
                        undo[1] = Some(lj);
                    }
                }
                fits
            } else if j == i {
                let fits = self.mirror[k].is_none_or(|m| m == k);
                if fits && self.mirror[k].is_none() {
                    self.mirror[k] = Some(k);
                    undo[0] = Some(k);
                }
                fits
            } else {
                true
            };
            if ok {
                self.labels[i] = k;
                self.run(i + 1, classes.max(k + 1));
            }
            for slot in undo.into_iter().flatten() {
                self.mirror[slot] = None;
            }
            if k == classes {
                self.mirror.pop();
            }
        }
    }
}

/// Calls `visit(labels, class_count)` for every partition of `0..neg.len()`
/// whose class family is closed under the involution `neg`.
///
/// Pruning is strongest when each `i` and `neg[i]` are adjacent in the order.
pub fn for_each_symmetric_partition<F>(neg: &[usize], visit: F)
where
    F: FnMut(&[usize], usize),
{
    debug_assert!(neg.iter().enumerate().all(|(i, &j)| neg[j] == i));
    let mut search = Search { neg, labels: vec![0; neg.len()], mirror: Vec::new(), visit };
    search.run(0, 0);
}

/// Groups element indices by label.
pub fn classes_from_labels(labels: &[usize], count: usize) -> Vec<Vec<usize>> {
    let mut classes = vec![Vec::new(); count];
    for (i, &l) in labels.iter().enumerate() {
        classes[l].push(i);
    }
    classes
}
