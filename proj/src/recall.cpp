#include "qamtrack/recall.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qamtrack {

double SolveResult::min_energy() const {
  if (energies.empty()) throw std::logic_error("SolveResult: empty result");
  double best = energies[0];
  for (double e : energies) best = std::min(best, e);
  return best;
}

const BipolarPattern& SolveResult::best_state() const {
  if (energies.empty()) throw std::logic_error("SolveResult: empty result");
  std::size_t arg = 0;
  for (std::size_t i = 1; i < energies.size(); ++i) {
    if (energies[i] < energies[arg]) arg = i;
  }
  return states[arg];
}

RecallProblem build_qamm(const WeightMatrix& w, const BipolarPattern& probe,
                         double theta) {
  if (probe.size() != w.size()) {
    throw std::invalid_argument("build_qamm: probe length does not match W");
  }
  if (theta < 0.0) throw std::invalid_argument("build_qamm: theta must be >= 0");
  RecallProblem prob;
  prob.couplings = w;
  prob.biases = theta * probe.spins();
  prob.theta = theta;
  return prob;
}

RecallProblem build_qcam(const WeightMatrix& w, const BipolarPattern& probe_value,
                         double theta, Index key_length) {
  if (key_length < 0 || probe_value.size() + key_length != w.size()) {
    throw std::invalid_argument("build_qcam: W is not (K+V) x (K+V)");
  }
  RecallProblem prob;
  prob.couplings = w;
  prob.biases = Vector::Zero(w.size());
  prob.biases.tail(probe_value.size()) = theta * probe_value.spins();
  prob.theta = theta;
  prob.masked.reserve(static_cast<std::size_t>(key_length));
  for (Index i = 0; i < key_length; ++i) prob.masked.push_back(i);
  return prob;
}

double energy(const RecallProblem& prob, const BipolarPattern& state) {
  if (state.size() != prob.size()) {
    throw std::invalid_argument("energy: state length does not match problem");
  }
  const Vector& s = state.spins();
  return -s.dot(prob.couplings.entries * s) - prob.biases.dot(s);
}

namespace {

// Energy change of flipping spin k given the cached field f = W s:
// delta = 4 s_k (f_k - W_kk s_k) + 2 h_k s_k, with s_k the pre-flip value.
inline double flip_delta(const Matrix& w, const Vector& h, const Vector& s,
                         const Vector& f, Index k) {
  const double sk = s[k];
  return 4.0 * sk * (f[k] - w(k, k) * sk) + 2.0 * h[k] * sk;
}

inline void apply_flip(const Matrix& w, Vector& s, Vector& f, Index k) {
  f.noalias() += (-2.0 * s[k]) * w.col(k);
  s[k] = -s[k];
}

// One Metropolis sweep over all sites in index order.
void metropolis_sweep(const Matrix& w, const Vector& h, Vector& s, Vector& f,
                      double beta, Rng& rng) {
  const Index n = s.size();
  for (Index k = 0; k < n; ++k) {
    const double delta = flip_delta(w, h, s, f, k);
    if (delta <= 0.0 || rng.next_double() < std::exp(-beta * delta)) {
      apply_flip(w, s, f, k);
    }
  }
}

double ladder_beta(double from, double to, int step, int steps) {
  if (steps <= 1) return to;
  return from * std::pow(to / from, static_cast<double>(step) /
                                        static_cast<double>(steps - 1));
}

constexpr std::size_t kManifoldCap = std::size_t{1} << 22;

}  // namespace

SolveResult solve_exact(const RecallProblem& prob, int max_bits, double* max_drift) {
  const Index n = prob.size();
  if (n < 1) throw std::invalid_argument("solve_exact: empty problem");
  if (n > max_bits) {
    throw std::invalid_argument(
        "solve_exact: problem exceeds the enumeration cap; use solve_sa");
  }
  const Matrix& w = prob.couplings.entries;
  const Vector& h = prob.biases;

  Vector s = Vector::Constant(n, -1.0);  // Gray code 0: all bits clear
  Vector f = w * s;
  double e = -s.dot(f) - h.dot(s);

  double best = e;
  std::vector<std::uint64_t> candidates{0};
  double drift = 0.0;

  std::uint64_t gray = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const Index k = std::countr_zero(i);
    e += flip_delta(w, h, s, f, k);
    apply_flip(w, s, f, k);
    gray ^= std::uint64_t{1} << k;

    if ((i & 0xFFFFULL) == 0) {
      // Resync: incremental rounding drift must stay far below the manifold
      // tolerance between checkpoints.
      f.noalias() = w * s;
      const double exact = -s.dot(f) - h.dot(s);
      drift = std::max(drift, std::abs(e - exact));
      e = exact;
    }

    const double tol = 1e-9 * std::max(1.0, std::abs(best));
    if (e < best - tol) {
      best = e;
      candidates.clear();
      candidates.push_back(gray);
    } else if (e <= best + tol) {
      if (candidates.size() >= kManifoldCap) {
        throw std::runtime_error(
            "solve_exact: ground manifold exceeds the storage cap "
            "(pathologically degenerate instance)");
      }
      candidates.push_back(gray);
    }
  }
  if (max_drift) *max_drift = drift;

  // Materialize candidates, re-evaluate exactly, and keep the true manifold.
  std::vector<BipolarPattern> states;
  std::vector<double> exact_energies;
  states.reserve(candidates.size());
  exact_energies.reserve(candidates.size());
  double exact_best = 0.0;
  bool first = true;
  for (std::uint64_t code : candidates) {
    Vector spins(n);
    for (Index b = 0; b < n; ++b) {
      spins[b] = (code >> b) & 1ULL ? 1.0 : -1.0;
    }
    BipolarPattern state(std::move(spins));
    const double exact = energy(prob, state);
    states.push_back(std::move(state));
    exact_energies.push_back(exact);
    exact_best = first ? exact : std::min(exact_best, exact);
    first = false;
  }

  SolveResult result;
  const double keep_tol = 1e-9 * std::max(1.0, std::abs(exact_best));
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (exact_energies[i] <= exact_best + keep_tol) {
      result.states.push_back(std::move(states[i]));
      result.energies.push_back(exact_energies[i]);
    }
  }
  return result;
}

SolveResult solve_sa(const RecallProblem& prob, const AnnealSchedule& sched,
                     int reads, std::uint64_t seed) {
  const Index n = prob.size();
  if (n < 1) throw std::invalid_argument("solve_sa: empty problem");
  if (reads < 1) throw std::invalid_argument("solve_sa: reads must be >= 1");
  if (sched.sweeps < 1) throw std::invalid_argument("solve_sa: sweeps must be >= 1");
  if (!(sched.beta_hot < sched.beta_cold) || sched.beta_hot <= 0.0) {
    throw std::invalid_argument("solve_sa: need 0 < beta_hot < beta_cold");
  }
  const Matrix& w = prob.couplings.entries;
  const Vector& h = prob.biases;

  SolveResult result;
  for (int r = 0; r < reads; ++r) {
    const std::uint64_t read_seed = derive_seed(seed, static_cast<std::uint64_t>(r));
    Rng rng(read_seed);
    Vector s(n);
    for (Index i = 0; i < n; ++i) s[i] = rng.sign();
    Vector f = w * s;
    for (int t = 0; t < sched.sweeps; ++t) {
      const double beta = ladder_beta(sched.beta_hot, sched.beta_cold, t, sched.sweeps);
      metropolis_sweep(w, h, s, f, beta, rng);
    }
    BipolarPattern state{Vector(s)};
    result.energies.push_back(energy(prob, state));
    result.states.push_back(std::move(state));
    result.read_seeds.push_back(read_seed);
  }
  return result;
}

SolveResult solve_reverse(const RecallProblem& prob, const BipolarPattern& seed_state,
                          const ReverseScheduleParams& params, int reads,
                          std::uint64_t seed) {
  const Index n = prob.size();
  if (seed_state.size() != n) {
    throw std::invalid_argument("solve_reverse: seed state length mismatch");
  }
  if (reads < 1) throw std::invalid_argument("solve_reverse: reads must be >= 1");
  if (!(params.s_star > 0.0 && params.s_star < 1.0)) {
    throw std::invalid_argument("solve_reverse: s_star must lie in (0, 1)");
  }
  if (params.ramp_sweeps < 0 || params.pause_sweeps < 0) {
    throw std::invalid_argument("solve_reverse: negative sweep counts");
  }
  if (!(params.beta_hot < params.beta_cold) || params.beta_hot <= 0.0) {
    throw std::invalid_argument("solve_reverse: need 0 < beta_hot < beta_cold");
  }
  const Matrix& w = prob.couplings.entries;
  const Vector& h = prob.biases;

  // Reversal point on the geometric ladder; s_star = 0 is the hottest.
  const double beta_star =
      params.beta_hot * std::pow(params.beta_cold / params.beta_hot, params.s_star);

  Vector s = seed_state.spins();
  Vector f = w * s;

  SolveResult result;
  for (int r = 0; r < reads; ++r) {
    const std::uint64_t read_seed = derive_seed(seed, static_cast<std::uint64_t>(r));
    Rng rng(read_seed);
    for (int t = 0; t < params.ramp_sweeps; ++t) {  // reheat
      const double frac = static_cast<double>(t + 1) / params.ramp_sweeps;
      const double beta = params.beta_cold * std::pow(beta_star / params.beta_cold, frac);
      metropolis_sweep(w, h, s, f, beta, rng);
    }
    for (int t = 0; t < params.pause_sweeps; ++t) {
      metropolis_sweep(w, h, s, f, beta_star, rng);
    }
    for (int t = 0; t < params.ramp_sweeps; ++t) {  // recool
      const double frac = static_cast<double>(t + 1) / params.ramp_sweeps;
      const double beta = beta_star * std::pow(params.beta_cold / beta_star, frac);
      metropolis_sweep(w, h, s, f, beta, rng);
    }
    BipolarPattern state{Vector(s)};
    result.energies.push_back(energy(prob, state));
    result.states.push_back(std::move(state));
    result.read_seeds.push_back(read_seed);
  }
  return result;
}

}  // namespace qamtrack
