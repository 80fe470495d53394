//! Internal combinatorial solvers behind the diagram distances: maximum
//! bipartite matching (augmenting paths) for bottleneck feasibility
//! checks, and a potentials-based shortest-augmenting-path solver for
//! exact minimum-cost perfect assignment.

use alloc::vec::Vec;

/// Size of the maximum matching in a bipartite graph given as adjacency
/// lists from `left_count` left nodes into `right_count` right nodes.
pub(crate) fn max_bipartite_matching(left_count: usize, right_count: usize, adjacency: &[Vec<u32>]) -> usize {
    debug_assert_eq!(adjacency.len(), left_count);
    let mut match_right: Vec<u32> = alloc::vec![u32::MAX; right_count];
    let mut visited: Vec<u32> = alloc::vec![u32::MAX; right_count];
    let mut size = 0;
    for u in 0..left_count {
        if try_augment(u as u32, u as u32, adjacency, &mut match_right, &mut visited) {
            size += 1;
        }
    }
    size
}

fn try_augment(u: u32, root: u32, adjacency: &[Vec<u32>], match_right: &mut [u32], visited: &mut [u32]) -> bool {
    // `visited` is stamped with the root of the current augmentation
    // attempt, so one attempt never revisits a right node but the array
    // need not be cleared between attempts.
    for &v in &adjacency[u as usize] {
        if visited[v as usize] == root {
            continue;
        }
        visited[v as usize] = root;
        if match_right[v as usize] == u32::MAX
            || try_augment(match_right[v as usize], root, adjacency, match_right, visited)
        {
            match_right[v as usize] = u;
            return true;
        }
    }
    false
}

/// Exact minimum-cost perfect assignment on an `n × n` cost matrix
/// (row-major), via shortest augmenting paths with dual potentials.
/// Returns the total cost and, per row, the assigned column.
pub(crate) fn min_cost_assignment(n: usize, cost: &[f64]) -> (f64, Vec<usize>) {
    debug_assert_eq!(cost.len(), n * n);
    if n == 0 {
        return (0.0, Vec::new());
    }
    // 1-based arrays with column 0 as the virtual start of each path.
    let mut u = alloc::vec![0.0f64; n + 1];
    let mut v = alloc::vec![0.0f64; n + 1];
    let mut assigned_row = alloc::vec![0usize; n + 1]; // per column, 1-based rows
    let mut way = alloc::vec![0usize; n + 1];
    for i in 1..=n {
        assigned_row[0] = i;
        let mut j0 = 0usize;
        let mut minv = alloc::vec![f64::INFINITY; n + 1];
        let mut used = alloc::vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = assigned_row[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if reduced < minv[j] {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[assigned_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if assigned_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            assigned_row[j0] = assigned_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = alloc::vec![0usize; n];
    let mut total = 0.0;
    for j in 1..=n {
        let row = assigned_row[j] - 1;
        assignment[row] = j - 1;
        total += cost[row * n + (j - 1)];
    }
    (total, assignment)
}
