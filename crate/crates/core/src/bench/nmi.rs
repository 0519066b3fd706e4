// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Normalized mutual information between covers (overlapping variant with
//! per-community normalization).
//!
//! For each group `X_k` of one cover, the conditional entropy given the best
//! matching group `Y_l` of the other is `H(X_k, Y_l) - H(Y_l)`, accepted only
//! when `h(p11) + h(p00) > h(p01) + h(p10)`; otherwise `H(X_k)` is used.
//! Each term is normalized by `H(X_k)` and averaged over the cover, and the
//! score is `1 - (H(X|Y)_norm + H(Y|X)_norm) / 2`.

use crate::cover::Cover;
use crate::graph::NodeSet;

fn h(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

fn binary_entropy(size: usize, n: f64) -> f64 {
    let p = size as f64 / n;
    h(p) + h(1.0 - p)
}

fn conditional_entropy(x: &NodeSet, y: &NodeSet, n: f64) -> f64 {
    let both = x.intersection(y).count();
    let p11 = both as f64 / n;
    let p10 = (x.len() - both) as f64 / n;
    let p01 = (y.len() - both) as f64 / n;
    let p00 = (n - (x.len() + y.len() - both) as f64) / n;
    if h(p11) + h(p00) > h(p01) + h(p10) {
        h(p00) + h(p01) + h(p10) + h(p11) - binary_entropy(y.len(), n)
    } else {
        binary_entropy(x.len(), n)
    }
}

fn normalized_conditional(xs: &[NodeSet], ys: &[NodeSet], n: f64) -> f64 {
    let total: f64 = xs
        .iter()
        .map(|x| {
            let best = ys
                .iter()
                .map(|y| conditional_entropy(x, y, n))
                .fold(f64::INFINITY, f64::min);
            let hx = binary_entropy(x.len(), n);
            if hx == 0.0 {
                1.0
            } else {
                best / hx
            }
        })
        .sum();
    total / xs.len() as f64
}

/// Overlapping NMI over the union of nodes covered by either cover.
///
/// Identical covers score exactly 1; an empty cover on either side scores 0.
pub fn nmi_covers(x: &Cover, y: &Cover) -> f64 {
    let mut universe = x.covered();
    universe.extend(y.covered());
    nmi_covers_in(x, y, universe.len())
}

/// Overlapping NMI with an explicit universe size (nodes in no group of
/// either cover still count towards it).
pub fn nmi_covers_in(x: &Cover, y: &Cover, universe: usize) -> f64 {
    if x.is_empty() || y.is_empty() || universe == 0 {
        return 0.0;
    }
    // Group order is fixed by content so relabeling cannot perturb rounding.
    let xs = x.member_sets();
    let ys = y.member_sets();
    if xs == ys {
        return 1.0;
    }
    let n = universe as f64;
    let hxy = normalized_conditional(&xs, &ys, n);
    let hyx = normalized_conditional(&ys, &xs, n);
    1.0 - 0.5 * (hxy + hyx)
}
