//! Finite weighted undirected graphs, hop metrics and the edge-list text format.
//!
//! A [`Graph`] is validated once at construction (no self-loops, no duplicate
//! edges, strictly positive weights, connected) and is immutable afterwards.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::io::{BufRead, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    labels: Vec<String>,
    /// Neighbor lists sorted by vertex index.
    adj: Vec<Vec<(usize, f64)>>,
    /// Edges in construction order; `edges[i].0` and `.1` are the endpoints as given.
    edges: Vec<(usize, usize, f64)>,
    degrees: Vec<f64>,
}

/// Hop diameter and maximum weighted degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiameterStats {
    pub diameter: usize,
    pub max_degree: f64,
    /// Lexicographically smallest ordered pair attaining the diameter.
    pub endpoints: (usize, usize),
}

impl Graph {
    /// Builds a graph from labels and index-based edges.
    pub fn from_labeled_edges(labels: Vec<String>, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let n = labels.len();
        if edges.is_empty() {
            return Err(Error::Empty);
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adj = vec![Vec::new(); n];
        for &(a, b, w) in &edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(labels[a].clone()));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::NonPositiveWeight {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                    weight: w,
                });
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::DuplicateEdge {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                });
            }
            adj[a].push((b, w));
            adj[b].push((a, w));
        }
        for list in &mut adj {
            list.sort_by_key(|&(y, _)| y);
        }
        let degrees = adj
            .iter()
            .map(|list| list.iter().map(|&(_, w)| w).sum())
            .collect();
        let g = Graph {
            labels,
            adj,
            edges,
            degrees,
        };
        g.ensure_connected()?;
        Ok(g)
    }

    /// Builds a graph on vertices labelled `"0".."n-1"`.
    pub fn from_edges(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        Self::from_labeled_edges((0..n).map(|i| i.to_string()).collect(), edges)
    }

    /// Parses the edge-list format: `LABEL LABEL [WEIGHT]` per line, `#` comments.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        Self::read_edge_list(text.as_bytes())
    }

    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut labels = Vec::new();
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = lineno + 1;
            let content = match line.find('#') {
                Some(pos) => &line[..pos],
                None => &line[..],
            };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            if tokens.len() < 2 || tokens.len() > 3 {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected `LABEL LABEL [WEIGHT]`, found {} fields", tokens.len()),
                });
            }
            let weight = match tokens.get(2) {
                None => 1.0,
                Some(tok) => {
                    let w: f64 = tok.parse().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("weight `{tok}` is not a number"),
                    })?;
                    if !w.is_finite() {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("weight `{tok}` is not finite"),
                        });
                    }
                    w
                }
            };
            let mut ends = [0usize; 2];
            for (slot, tok) in ends.iter_mut().zip(&tokens[..2]) {
                *slot = *index.entry(tok.to_string()).or_insert_with(|| {
                    labels.push(tok.to_string());
                    labels.len() - 1
                });
            }
            let [a, b] = ends;
            if a == b {
                return Err(Error::SelfLoop(tokens[0].to_string()));
            }
            if weight <= 0.0 {
                return Err(Error::NonPositiveWeight {
                    a: tokens[0].to_string(),
                    b: tokens[1].to_string(),
                    weight,
                });
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::DuplicateEdge {
                    a: tokens[0].to_string(),
                    b: tokens[1].to_string(),
                });
            }
            edges.push((a, b, weight));
        }
        Self::from_labeled_edges(labels, edges)
    }

    /// Serializes to the edge-list format. Weights use the shortest exact decimal form.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(a, b, w) in &self.edges {
            let _ = writeln!(out, "{} {} {:?}", self.labels[a], self.labels[b], w);
        }
        out
    }

    pub fn write_edge_list<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_edge_list().as_bytes())?;
        Ok(())
    }

    fn ensure_connected(&self) -> Result<()> {
        let dist = self.bfs_distances(0);
        match dist.iter().position(|&d| d == usize::MAX) {
            Some(far) => Err(Error::Disconnected(
                self.labels[0].clone(),
                self.labels[far].clone(),
            )),
            None => Ok(()),
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    /// Weighted degree `d_x`, the sum of incident edge weights.
    pub fn degree(&self, x: usize) -> f64 {
        self.degrees[x]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn max_degree(&self) -> f64 {
        self.degrees.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn neighbors(&self, x: usize) -> &[(usize, f64)] {
        &self.adj[x]
    }

    pub fn weight(&self, x: usize, y: usize) -> Option<f64> {
        self.adj[x]
            .binary_search_by_key(&y, |&(v, _)| v)
            .ok()
            .map(|i| self.adj[x][i].1)
    }

    /// Same graph with every edge weight multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        let edges = self.edges.iter().map(|&(a, b, w)| (a, b, w * c)).collect();
        Self::from_labeled_edges(self.labels.clone(), edges)
    }

    /// Unweighted hop distances from `s`; `usize::MAX` marks unreachable vertices
    /// (never present on a validated graph).
    pub fn bfs_distances(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn diameter(&self) -> DiameterStats {
        let (diameter, endpoints) = (0..self.n())
            .into_par_iter()
            .map(|s| {
                let dist = self.bfs_distances(s);
                let (t, &d) = dist
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                    .expect("graph has vertices");
                (d, (s, t))
            })
            .reduce(
                || (0, (usize::MAX, usize::MAX)),
                |a, b| {
                    if a.0 > b.0 || (a.0 == b.0 && a.1 <= b.1) {
                        a
                    } else {
                        b
                    }
                },
            );
        DiameterStats {
            diameter,
            max_degree: self.max_degree(),
            endpoints,
        }
    }
}

impl std::str::FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_edge_list(s)
    }
}
