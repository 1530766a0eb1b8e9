//! Hopcroft–Karp maximum matching on balanced bipartite graphs.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

const UNMATCHED: u32 = u32::MAX;

/// Maximum matching of the bipartite graph given as X-side adjacency lists.
/// Returns `pair_x[x] = y` (or `u32::MAX` when unmatched).
pub fn maximum_matching(n: usize, x_adj: &[Vec<u32>]) -> Vec<u32> {
    let mut pair_x = alloc::vec![UNMATCHED; n];
    let mut pair_y = alloc::vec![UNMATCHED; n];
    let mut dist = alloc::vec![u32::MAX; n];
    loop {
        // BFS layers from free X-vertices.
        let mut q = VecDeque::new();
        for x in 0..n {
            if pair_x[x] == UNMATCHED {
                dist[x] = 0;
                q.push_back(x as u32);
            } else {
                dist[x] = u32::MAX;
            }
        }
        let mut found_free_y = false;
        while let Some(x) = q.pop_front() {
            for &y in &x_adj[x as usize] {
                let nx = pair_y[y as usize];
                if nx == UNMATCHED {
                    found_free_y = true;
                } else if dist[nx as usize] == u32::MAX {
                    dist[nx as usize] = dist[x as usize] + 1;
                    q.push_back(nx);
                }
            }
        }
        if !found_free_y {
            break;
        }
        for x in 0..n as u32 {
            if pair_x[x as usize] == UNMATCHED {
                augment(x, x_adj, &mut pair_x, &mut pair_y, &mut dist);
            }
        }
    }
    pair_x
}

fn augment(
    x: u32,
    x_adj: &[Vec<u32>],
    pair_x: &mut [u32],
    pair_y: &mut [u32],
    dist: &mut [u32],
) -> bool {
    for &y in &x_adj[x as usize] {
        let nx = pair_y[y as usize];
        let ok = nx == UNMATCHED
            || (dist[nx as usize] == dist[x as usize].wrapping_add(1)
                && augment(nx, x_adj, pair_x, pair_y, dist));
        if ok {
            pair_x[x as usize] = y;
            pair_y[y as usize] = x;
            return true;
        }
    }
    dist[x as usize] = u32::MAX;
    false
}
