use std::collections::VecDeque;

use super::{Graph, GraphError};

/// Size of a minimum edge cut, via unit-capacity max flow from vertex 0 to
/// every other vertex. A single vertex has connectivity 0.
pub fn edge_connectivity(g: &Graph) -> Result<usize, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let n = g.vertex_count();
    (1..n).map(|t| max_flow(g, 0, t)).min().map_or(Ok(0), Ok)
}

fn max_flow(g: &Graph, s: usize, t: usize) -> usize {
    let n = g.vertex_count();
    // residual capacity; each undirected edge carries one unit either way
    let mut cap = vec![vec![0i32; n]; n];
    for (u, v) in g.edges() {
        cap[u][v] = 1;
        cap[v][u] = 1;
    }
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &v in g.neighbors(u) {
                if prev[v] == usize::MAX && cap[u][v] > 0 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[t] == usize::MAX {
            return flow;
        }
        let mut v = t;
        while v != s {
            let u = prev[v];
            cap[u][v] -= 1;
            cap[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
}

/// Brute force over deletions of up to two edges; returns 1, 2, or 3 meaning
/// "at least 3". Intended for cubic graphs, where 3 is also the maximum.
pub fn edge_connectivity_brute_force(g: &Graph) -> Result<usize, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let edges = g.edges();
    for i in 0..edges.len() {
        let keep = edges
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, &e)| e)
            .collect::<Vec<_>>();
        if !g.with_edges(&keep).is_connected() {
            return Ok(1);
        }
    }
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let keep = edges
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, &e)| e)
                .collect::<Vec<_>>();
            if !g.with_edges(&keep).is_connected() {
                return Ok(2);
            }
        }
    }
    Ok(3)
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(edge_connectivity(&k4()).unwrap(), 3);
        assert_eq!(edge_connectivity(&cube()).unwrap(), 3);
        assert_eq!(
            edge_connectivity(&Graph::from_edge_list(2, &[(0, 1)]).unwrap()).unwrap(),
            1
        );
        assert_eq!(edge_connectivity(&two_edge_connected_cubic()).unwrap(), 2);
        assert_eq!(edge_connectivity(&petersen()).unwrap(), 3);
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        assert_eq!(edge_connectivity(&g), Err(GraphError::Disconnected));
    }

    #[test]
    fn flow_agrees_with_brute_force() {
        for g in [
            k4(),
            prism(),
            cube(),
            sliced_prism(),
            petersen(),
            two_edge_connected_cubic(),
        ] {
            assert_eq!(
                edge_connectivity(&g).unwrap(),
                edge_connectivity_brute_force(&g).unwrap()
            );
        }
    }
}
