//! Classification trees stored as a flat node arena. Node 0 is the root and
//! internal nodes refer to their children by index.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::split::best_split;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TreeNode {
    Internal {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
        impurity_decrease: f64,
        node_size: usize,
    },
    Leaf {
        class_counts: Vec<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeParams {
    /// Features drawn at each node.
    pub mtry: usize,
    pub min_leaf_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<TreeNode>,
}

fn plurality(counts: &[usize]) -> usize {
    // first maximum, i.e. the lowest class index among ties
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = i;
        }
    }
    best
}

impl Tree {
    /// Grows an unpruned tree on `rows` (which may repeat, as in a bootstrap
    /// sample). At every node `mtry` of the `p` features are drawn without
    /// replacement from `rng` and the best split among them is taken. A node
    /// becomes a leaf when it is pure, has fewer than `2 * min_leaf_size`
    /// rows, or has no impurity-decreasing split among the drawn features.
    pub fn grow<R: Rng>(
        x: &[Vec<f64>],
        y: &[usize],
        n_classes: usize,
        rows: Vec<usize>,
        params: TreeParams,
        rng: &mut R,
    ) -> Tree {
        let p = x.first().map_or(0, Vec::len);
        let mtry = params.mtry.clamp(1, p.max(1));
        let mut nodes = vec![TreeNode::Leaf {
            class_counts: Vec::new(),
        }];
        let mut stack = vec![(0usize, rows)];

        while let Some((slot, rows)) = stack.pop() {
            let mut counts = vec![0usize; n_classes];
            for &r in &rows {
                counts[y[r]] += 1;
            }
            let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
            let split = if pure || rows.len() < 2 * params.min_leaf_size || p == 0 {
                None
            } else {
                let features = sample(rng, p, mtry).into_vec();
                best_split(x, y, n_classes, &rows, &features, params.min_leaf_size)
            };
            let Some(split) = split else {
                nodes[slot] = TreeNode::Leaf { class_counts: counts };
                continue;
            };

            let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows
                .iter()
                .partition(|&&r| x[r][split.feature] <= split.threshold);
            let left = nodes.len();
            let right = left + 1;
            nodes.push(TreeNode::Leaf {
                class_counts: Vec::new(),
            });
            nodes.push(TreeNode::Leaf {
                class_counts: Vec::new(),
            });
            nodes[slot] = TreeNode::Internal {
                feature: split.feature,
                threshold: split.threshold,
                left,
                right,
                impurity_decrease: split.decrease,
                node_size: rows.len(),
            };
            stack.push((right, right_rows));
            stack.push((left, left_rows));
        }
        Tree { nodes }
    }

    /// Class counts of the leaf `x` falls into.
    pub fn leaf_counts(&self, x: &[f64]) -> &[usize] {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                TreeNode::Internal {
                    feature,
                    threshold,
                    left,
                    right,
                    ..
                } => i = if x[*feature] <= *threshold { *left } else { *right },
                TreeNode::Leaf { class_counts } => return class_counts,
            }
        }
    }

    /// Plurality class of the leaf reached by `x`; ties go to the lower index.
    pub fn predict(&self, x: &[f64]) -> usize {
        plurality(self.leaf_counts(x))
    }

    /// Number of rows the tree was grown on.
    pub fn root_size(&self) -> usize {
        match &self.nodes[0] {
            TreeNode::Internal { node_size, .. } => *node_size,
            TreeNode::Leaf { class_counts } => class_counts.iter().sum(),
        }
    }

    pub fn n_leaves(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, TreeNode::Leaf { .. }))
            .count()
    }

    pub fn depth(&self) -> usize {
        let mut depth = vec![0usize; self.nodes.len()];
        let mut max = 0;
        for (i, node) in self.nodes.iter().enumerate() {
            if let TreeNode::Internal { left, right, .. } = node {
                depth[*left] = depth[i] + 1;
                depth[*right] = depth[i] + 1;
                max = max.max(depth[i] + 1);
            }
        }
        max
    }

    /// Adds `(node_size / n) * decrease` of every split to `acc[feature]`,
    /// where `n` is the number of rows at the root.
    pub fn accumulate_importance(&self, acc: &mut [f64]) {
        let n = self.root_size() as f64;
        for node in &self.nodes {
            if let TreeNode::Internal {
                feature,
                impurity_decrease,
                node_size,
                ..
            } = node
            {
                acc[*feature] += *node_size as f64 / n * impurity_decrease;
            }
        }
    }
}
