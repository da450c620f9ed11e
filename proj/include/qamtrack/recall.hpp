#pragma once

#include <cstdint>
#include <vector>

#include "qamtrack/learning.hpp"
#include "qamtrack/pattern.hpp"
#include "qamtrack/types.hpp"

namespace qamtrack {

// Ising instance for one recall: couplings plus probe-derived local biases
// h_i = theta * chi_i. Indices listed in `masked` carry h = 0 (the key bits
// of a value-only probe).
struct RecallProblem {
  WeightMatrix couplings;
  Vector biases;
  double theta = 0.0;
  std::vector<Index> masked;

  Index size() const { return couplings.size(); }
};

// Geometric inverse-temperature ladder for the forward anneal.
struct AnnealSchedule {
  int sweeps = 1000;
  double beta_hot = 0.1;
  double beta_cold = 10.0;
};

// Re-heat protocol: ramp from frozen up to the reversal point s_star, pause,
// ramp back down. s_star interpolates the beta ladder geometrically with
// s_star = 0 the hottest; the default pause:ramp ratio is 10:1.
struct ReverseScheduleParams {
  double s_star = 0.5;
  int pause_sweeps = 1000;
  int ramp_sweeps = 100;
  double beta_hot = 0.1;
  double beta_cold = 10.0;
};

struct SolveResult {
  std::vector<BipolarPattern> states;
  std::vector<double> energies;
  std::vector<std::uint64_t> read_seeds;  // empty for the exact solver

  Index reads() const { return static_cast<Index>(states.size()); }
  double min_energy() const;
  const BipolarPattern& best_state() const;
};

// h_i = theta * chi_i on every index.
RecallProblem build_qamm(const WeightMatrix& w, const BipolarPattern& probe,
                         double theta);

// h = 0 on the key_length leading indices, h = theta * v_i on value indices.
// The weight matrix may be either the full or the bipartite rule.
RecallProblem build_qcam(const WeightMatrix& w,
                         const BipolarPattern& probe_value, double theta,
                         Index key_length);

// E(s) = -s^T W s - h . s, full quadratic form with the diagonal included.
// The diagonal contributes the constant -trace(W) on bipolar states, so the
// argmin set matches the off-diagonal Ising form.
double energy(const RecallProblem& prob, const BipolarPattern& state);

// Enumerates all 2^N states with Gray-code incremental energy updates and
// returns every state attaining the minimum (the ground manifold), each
// once, in enumeration order. Throws for N > max_bits.
// `max_drift` reports the largest incremental-vs-recomputed energy gap
// observed at the periodic resync points.
SolveResult solve_exact(const RecallProblem& prob, int max_bits = 28,
                        double* max_drift = nullptr);

// `reads` independent single-spin-flip Metropolis anneals from uniform random
// states. Read r is deterministic given (seed, r).
SolveResult solve_sa(const RecallProblem& prob, const AnnealSchedule& sched,
                     int reads, std::uint64_t seed);

// Chained refinement: read 0 starts from seed_state, every later read from
// the previous read's final state.
SolveResult solve_reverse(const RecallProblem& prob,
                          const BipolarPattern& seed_state,
                          const ReverseScheduleParams& params, int reads,
                          std::uint64_t seed);

}  // namespace qamtrack
