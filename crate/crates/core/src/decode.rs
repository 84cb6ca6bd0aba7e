//! Hard-decision message-passing decoder with pluggable threshold schedules.
//!
//! Messages are binary and flow in a flooding schedule: all variable-to-check
//! messages, then all check-to-variable messages, then a decision. A variable
//! forwards value `m` when at least `b` extrinsic check messages agree on
//! `m`, and its received value otherwise; a check forwards the modulo-2 sum
//! of its extrinsic inputs. The decision sets a variable to the common value
//! of all incoming messages when they agree, and to its received value
//! otherwise. Decoding stops at the first iteration whose decision word has
//! an all-zero syndrome, or after `max_iters` iterations.

use thiserror::Error;

use crate::graph::TannerGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("received word has length {got}, graph has {expected} variables")]
    LengthMismatch { got: usize, expected: usize },
    #[error("variable {var} has degree {degree}; decoding requires degree >= 2")]
    DegreeTooSmall { var: usize, degree: usize },
    #[error(
        "threshold {b} invalid for degree {degree} at iteration {iteration}: \
         must satisfy 1 <= b <= degree-1 and 2b > degree-1"
    )]
    InvalidThreshold { b: usize, degree: usize, iteration: usize },
    #[error("support index {index} out of range or not strictly increasing")]
    BadSupport { index: usize },
    #[error("bit value {value} at position {index}; bits must be 0 or 1")]
    BadBit { index: usize, value: u8 },
}

/// Threshold rule `b(j, degree)` selecting the decoder flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdSchedule {
    /// `b = degree - 1` for every iteration.
    GallagerA,
    /// `b = 2` for every iteration; on column-weight-3 graphs this coincides
    /// with Gallager-A.
    Cw3Fixed,
    /// `b = 3` for iterations 1..=3, then `b = 2`: the hybrid rule for
    /// column-weight-4 decoding.
    Cw4Hybrid,
}

impl ThresholdSchedule {
    /// Threshold for 1-based iteration `j` at a variable of degree `degree`.
    pub fn threshold(self, j: usize, degree: usize) -> usize {
        match self {
            ThresholdSchedule::GallagerA => degree.saturating_sub(1),
            ThresholdSchedule::Cw3Fixed => 2,
            ThresholdSchedule::Cw4Hybrid => {
                if j <= 3 {
                    3
                } else {
                    2
                }
            }
        }
    }

    /// Whether the threshold function can change once iterations pass `j`.
    fn settled_after(self, j: usize) -> bool {
        match self {
            ThresholdSchedule::GallagerA | ThresholdSchedule::Cw3Fixed => true,
            ThresholdSchedule::Cw4Hybrid => j >= 4,
        }
    }

    /// Rejects schedules that are out of range or ambiguous for any degree
    /// present in the graph. A threshold is ambiguous when both values could
    /// reach it among `degree - 1` extrinsic messages, i.e. `2b <= degree-1`.
    pub fn validate(self, graph: &TannerGraph) -> Result<(), DecodeError> {
        let mut degrees: Vec<usize> = (0..graph.n_vars()).map(|v| graph.var_degree(v)).collect();
        degrees.sort_unstable();
        degrees.dedup();
        for &degree in &degrees {
            if degree < 2 {
                let var = (0..graph.n_vars()).find(|&v| graph.var_degree(v) == degree).unwrap();
                return Err(DecodeError::DegreeTooSmall { var, degree });
            }
            // All schedules are constant from iteration 4 on.
            for j in 1..=4 {
                let b = self.threshold(j, degree);
                if b < 1 || b > degree - 1 || 2 * b <= degree - 1 {
                    return Err(DecodeError::InvalidThreshold { b, degree, iteration: j });
                }
            }
        }
        Ok(())
    }
}

/// Binary word entering the decoder; under the all-zero-codeword convention
/// its support is the channel error pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceivedWord {
    bits: Vec<u8>,
}

impl ReceivedWord {
    pub fn zero(n: usize) -> Self {
        Self { bits: vec![0; n] }
    }

    pub fn from_bits(bits: Vec<u8>) -> Result<Self, DecodeError> {
        if let Some((index, &value)) = bits.iter().enumerate().find(|&(_, &b)| b > 1) {
            return Err(DecodeError::BadBit { index, value });
        }
        Ok(Self { bits })
    }

    /// Builds a word of length `n` with ones exactly at `support`, which
    /// must be strictly increasing and in range.
    pub fn from_support(n: usize, support: &[usize]) -> Result<Self, DecodeError> {
        let mut bits = vec![0u8; n];
        let mut prev = None;
        for &i in support {
            if i >= n || prev.is_some_and(|p| p >= i) {
                return Err(DecodeError::BadSupport { index: i });
            }
            bits[i] = 1;
            prev = Some(i);
        }
        Ok(Self { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        support_of(&self.bits)
    }
}

pub fn support_of(bits: &[u8]) -> Vec<usize> {
    bits.iter().enumerate().filter(|&(_, &b)| b != 0).map(|(i, _)| i).collect()
}

/// Final decoder verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// A valid codeword was reached at this 1-based iteration.
    Converged(usize),
    FailedMaxIter,
}

impl Verdict {
    pub fn converged(self) -> bool {
        matches!(self, Verdict::Converged(_))
    }
}

/// Result of one decoding run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub verdict: Verdict,
    pub final_estimate: Vec<u8>,
    /// Per-iteration supports of the decision word, when recording.
    pub trajectory: Option<Vec<Vec<usize>>>,
    /// Detected period of the forward message state (2 covers the
    /// oscillations this decoder family exhibits), when recording.
    pub oscillation: Option<usize>,
}

/// Snapshot of all edge messages after one full iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageState {
    pub forward: Vec<u8>,
    pub backward: Vec<u8>,
    pub iteration: usize,
}

/// Full per-iteration message record for small-graph analysis.
#[derive(Debug, Clone)]
pub struct DecodeTrace {
    pub iterations: Vec<MessageState>,
    pub estimates: Vec<Vec<u8>>,
}

/// Variable-to-check update: the received bit on iteration 1, otherwise the
/// value backed by at least `b` extrinsic messages, falling back to the
/// received bit.
pub fn variable_update(r_v: u8, extrinsic: &[u8], j: usize, b: usize) -> u8 {
    if j == 1 {
        return r_v;
    }
    let ones = extrinsic.iter().filter(|&&m| m == 1).count();
    let zeros = extrinsic.len() - ones;
    let take_one = ones >= b;
    let take_zero = zeros >= b;
    debug_assert!(!(take_one && take_zero), "ambiguous threshold must be rejected at validation");
    if take_one {
        1
    } else if take_zero {
        0
    } else {
        r_v
    }
}

/// Check-to-variable update: modulo-2 sum of the extrinsic messages.
pub fn check_update(extrinsic: &[u8]) -> u8 {
    extrinsic.iter().fold(0, |acc, &m| acc ^ m)
}

/// Decision rule: the common value when all incoming messages agree,
/// otherwise the received bit.
pub fn decide(r_v: u8, incoming: &[u8]) -> u8 {
    let ones = incoming.iter().filter(|&&m| m == 1).count();
    if ones == incoming.len() {
        1
    } else if ones == 0 {
        0
    } else {
        r_v
    }
}

/// Per-check parities of `word`; all zero exactly when `word` is a codeword.
pub fn syndrome(graph: &TannerGraph, word: &[u8]) -> Result<Vec<u8>, DecodeError> {
    if word.len() != graph.n_vars() {
        return Err(DecodeError::LengthMismatch { got: word.len(), expected: graph.n_vars() });
    }
    Ok((0..graph.n_checks())
        .map(|c| graph.check_vars(c).iter().fold(0, |acc, &v| acc ^ word[v]))
        .collect())
}

pub fn syndrome_is_zero(graph: &TannerGraph, word: &[u8]) -> Result<bool, DecodeError> {
    Ok(syndrome(graph, word)?.iter().all(|&s| s == 0))
}

/// Precomputed edge indexing for one graph. Immutable and shareable across
/// threads; every decode call works on private state.
#[derive(Debug, Clone)]
pub struct Decoder<'g> {
    graph: &'g TannerGraph,
    /// Edge ids grouped by variable: edges of `v` are
    /// `var_edge_start[v]..var_edge_start[v+1]`.
    var_edge_start: Vec<usize>,
    edge_check: Vec<usize>,
    edge_var: Vec<usize>,
    /// Edge ids grouped by check.
    check_edge_start: Vec<usize>,
    check_edge_ids: Vec<usize>,
}

impl<'g> Decoder<'g> {
    pub fn new(graph: &'g TannerGraph) -> Self {
        let n = graph.n_vars();
        let m = graph.n_checks();
        let mut var_edge_start = Vec::with_capacity(n + 1);
        let mut edge_check = Vec::new();
        let mut edge_var = Vec::new();
        var_edge_start.push(0);
        for v in 0..n {
            for &c in graph.var_checks(v) {
                edge_check.push(c);
                edge_var.push(v);
            }
            var_edge_start.push(edge_check.len());
        }
        let mut check_edge_start = vec![0usize; m + 1];
        for &c in &edge_check {
            check_edge_start[c + 1] += 1;
        }
        for c in 0..m {
            check_edge_start[c + 1] += check_edge_start[c];
        }
        let mut cursor = check_edge_start.clone();
        let mut check_edge_ids = vec![0usize; edge_check.len()];
        for (e, &c) in edge_check.iter().enumerate() {
            check_edge_ids[cursor[c]] = e;
            cursor[c] += 1;
        }
        Self { graph, var_edge_start, edge_check, edge_var, check_edge_start, check_edge_ids }
    }

    pub fn graph(&self) -> &TannerGraph {
        self.graph
    }

    pub fn edge_count(&self) -> usize {
        self.edge_check.len()
    }

    /// Edge id of `(v, c)`, if the edge exists.
    pub fn edge_id(&self, v: usize, c: usize) -> Option<usize> {
        self.var_edges(v).find(|&e| self.edge_check[e] == c)
    }

    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        (self.edge_var[e], self.edge_check[e])
    }

    fn var_edges(&self, v: usize) -> std::ops::Range<usize> {
        self.var_edge_start[v]..self.var_edge_start[v + 1]
    }

    fn check_edges(&self, c: usize) -> &[usize] {
        &self.check_edge_ids[self.check_edge_start[c]..self.check_edge_start[c + 1]]
    }

    /// Reference decoder: dense flooding iterations.
    pub fn decode(
        &self,
        received: &ReceivedWord,
        schedule: ThresholdSchedule,
        max_iters: usize,
        record_trajectory: bool,
    ) -> Result<DecodeOutcome, DecodeError> {
        self.decode_inner(received, schedule, max_iters, record_trajectory, None)
    }

    /// Dense decode that also snapshots every message half-iteration.
    pub fn decode_traced(
        &self,
        received: &ReceivedWord,
        schedule: ThresholdSchedule,
        max_iters: usize,
    ) -> Result<(DecodeOutcome, DecodeTrace), DecodeError> {
        let mut trace = DecodeTrace { iterations: Vec::new(), estimates: Vec::new() };
        let outcome = self.decode_inner(received, schedule, max_iters, true, Some(&mut trace))?;
        Ok((outcome, trace))
    }

    fn decode_inner(
        &self,
        received: &ReceivedWord,
        schedule: ThresholdSchedule,
        max_iters: usize,
        record: bool,
        mut trace: Option<&mut DecodeTrace>,
    ) -> Result<DecodeOutcome, DecodeError> {
        let n = self.graph.n_vars();
        if received.len() != n {
            return Err(DecodeError::LengthMismatch { got: received.len(), expected: n });
        }
        schedule.validate(self.graph)?;
        assert!(max_iters >= 1, "max_iters must be at least 1");

        let r = received.bits();
        let ne = self.edge_count();
        let mut fwd = vec![0u8; ne];
        let mut bwd = vec![0u8; ne];
        let mut ones_in = vec![0u32; n];
        let mut estimate = vec![0u8; n];
        let mut trajectory = if record { Some(Vec::new()) } else { None };
        let mut fwd_hist: [Vec<u8>; 2] = [Vec::new(), Vec::new()];
        let mut oscillation = None;

        for j in 1..=max_iters {
            // Variable half.
            if j == 1 {
                for v in 0..n {
                    for e in self.var_edges(v) {
                        fwd[e] = r[v];
                    }
                }
            } else {
                for v in 0..n {
                    let deg = self.var_edge_start[v + 1] - self.var_edge_start[v];
                    let b = schedule.threshold(j, deg) as u32;
                    let total_ones = ones_in[v];
                    for e in self.var_edges(v) {
                        let ext_ones = total_ones - u32::from(bwd[e]);
                        let ext_zeros = (deg as u32 - 1) - ext_ones;
                        let take_one = ext_ones >= b;
                        let take_zero = ext_zeros >= b;
                        debug_assert!(!(take_one && take_zero));
                        fwd[e] = if take_one {
                            1
                        } else if take_zero {
                            0
                        } else {
                            r[v]
                        };
                    }
                }
            }

            // Check half.
            for c in 0..self.graph.n_checks() {
                let edges = self.check_edges(c);
                let parity = edges.iter().fold(0u8, |acc, &e| acc ^ fwd[e]);
                for &e in edges {
                    bwd[e] = parity ^ fwd[e];
                }
            }

            // Decision; cache per-variable incoming ones for the next half.
            for v in 0..n {
                let deg = self.var_edge_start[v + 1] - self.var_edge_start[v];
                let ones: u32 = self.var_edges(v).map(|e| u32::from(bwd[e])).sum();
                ones_in[v] = ones;
                estimate[v] = if ones == deg as u32 {
                    1
                } else if ones == 0 {
                    0
                } else {
                    r[v]
                };
            }

            if let Some(t) = trace.as_deref_mut() {
                t.iterations.push(MessageState {
                    forward: fwd.clone(),
                    backward: bwd.clone(),
                    iteration: j,
                });
                t.estimates.push(estimate.clone());
            }
            if let Some(traj) = trajectory.as_mut() {
                traj.push(support_of(&estimate));
            }
            if record {
                // Period-2 detection on the forward state once the
                // threshold rule has settled.
                let slot = j % 2;
                if oscillation.is_none()
                    && !fwd_hist[slot].is_empty()
                    && fwd_hist[slot] == fwd
                    && schedule.settled_after(j)
                {
                    oscillation = Some(2);
                }
                fwd_hist[slot] = fwd.clone();
            }

            let clean = (0..self.graph.n_checks()).all(|c| {
                self.check_edges(c).iter().fold(0u8, |acc, &e| acc ^ estimate[self.edge_var[e]])
                    == 0
            });
            if clean {
                return Ok(DecodeOutcome {
                    verdict: Verdict::Converged(j),
                    final_estimate: estimate,
                    trajectory,
                    oscillation,
                });
            }
        }
        Ok(DecodeOutcome {
            verdict: Verdict::FailedMaxIter,
            final_estimate: estimate,
            trajectory,
            oscillation,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn variable_update_examples() {
        // Iteration 1 passes the received bit through.
        assert_eq!(variable_update(1, &[0, 0], 1, 2), 1);
        // Unanimous extrinsic overrides the received bit.
        assert_eq!(variable_update(1, &[0, 0], 2, 2), 0);
        // Threshold not met keeps the received bit.
        assert_eq!(variable_update(0, &[1, 1, 0], 2, 3), 0);
    }

    #[test]
    fn check_update_is_parity() {
        assert_eq!(check_update(&[1, 0, 1]), 0);
        assert_eq!(check_update(&[1, 0, 0, 0, 0]), 1);
        assert_eq!(check_update(&[0, 0, 0]), 0);
    }

    #[test]
    fn decide_examples() {
        assert_eq!(decide(1, &[0, 0, 0]), 0);
        assert_eq!(decide(1, &[0, 1, 0]), 1);
        assert_eq!(decide(0, &[0, 0, 0, 0]), 0);
    }

    #[test]
    fn syndrome_examples() {
        let g = fixtures::ts33_graph();
        assert_eq!(syndrome(&g, &[0, 0, 0]).unwrap(), vec![0; 6]);
        // One flipped degree-3 variable trips exactly its 3 checks.
        let s = syndrome(&g, &[1, 0, 0]).unwrap();
        assert_eq!(s.iter().map(|&x| x as usize).sum::<usize>(), 3);
        // A weight-8 codeword support has zero syndrome.
        let cube = fixtures::cube_codeword_graph();
        assert!(syndrome_is_zero(&cube, &[1; 8]).unwrap());
        assert!(matches!(
            syndrome(&g, &[0, 0]),
            Err(DecodeError::LengthMismatch { got: 2, expected: 3 })
        ));
    }

    #[test]
    fn all_zero_converges_first_iteration() {
        let g = fixtures::ts33_graph();
        let dec = Decoder::new(&g);
        let out = dec
            .decode(&ReceivedWord::zero(3), ThresholdSchedule::GallagerA, 25, false)
            .unwrap();
        assert_eq!(out.verdict, Verdict::Converged(1));
        assert_eq!(out.final_estimate, vec![0, 0, 0]);
    }

    #[test]
    fn schedule_validation() {
        let g = fixtures::ts33_graph();
        assert!(ThresholdSchedule::GallagerA.validate(&g).is_ok());
        assert!(ThresholdSchedule::Cw4Hybrid.validate(&g).is_err());
        let ring = fixtures::six_ring();
        // Degree-2 variables: b = 1 is valid for Gallager-A, b = 2 is not.
        assert!(ThresholdSchedule::GallagerA.validate(&ring).is_ok());
        assert!(ThresholdSchedule::Cw3Fixed.validate(&ring).is_err());
        let star = TannerGraph::from_var_adjacency(1, vec![vec![0]]).unwrap();
        assert!(matches!(
            ThresholdSchedule::GallagerA.validate(&star),
            Err(DecodeError::DegreeTooSmall { var: 0, degree: 1 })
        ));
    }

    use crate::graph::TannerGraph;
}
