#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "hamdec/graph.hpp"

namespace hamdec {

struct SuperregularParams {
  double eps = 0.0;
  double density = 0.0;      // d
  double min_density = 0.0;  // d*
  double spread = 0.0;       // c
};

enum class CheckMode { Exhaustive, Sampled };

std::string_view to_string(CheckMode mode);

struct SuperregularityReport {
  SuperregularParams params;
  // Density on large subsets; exhaustive for m <= 12, sampled otherwise.
  bool reg1 = false;
  bool reg2 = false;  // codegrees <= c^2 m
  bool reg3 = false;  // max degree <= c m
  bool reg4 = false;  // min degree >= d* m
  CheckMode reg1_mode = CheckMode::Sampled;
  long long reg1_trials = 0;
  double worst_density_deviation = 0.0;  // max |d(X,Y)/d - 1|
  int max_codegree = 0;
  int max_degree = 0;
  int min_degree = 0;
  std::uint64_t seed = 0;

  bool exact_ok() const { return reg2 && reg3 && reg4; }
  bool ok() const { return reg1 && exact_ok(); }
};

// `pair` restricted to left x right is checked; edges elsewhere are ignored.
SuperregularityReport check_superregular(const Multigraph& pair, std::span<const Vertex> left,
                                         std::span<const Vertex> right,
                                         const SuperregularParams& params, std::uint64_t seed,
                                         int trials = 200);

struct ExpansionReport {
  bool expander = false;
  CheckMode mode = CheckMode::Sampled;
  long long sets_tested = 0;
  double worst_margin = 0.0;  // min over S of count - (|S| + nu n)
};

// Every S with tau n <= |S| <= (1 - tau) n needs at least |S| + nu n
// vertices with >= nu n in-neighbours in S. Exhaustive for n <= 18.
ExpansionReport check_robust_outexpander(const Digraph& g, double nu, double tau,
                                         std::uint64_t seed, int samples = 500);

struct SparseReservoir {
  Multigraph reservoir;  // H
  Multigraph rest;       // G - H
  SuperregularityReport report;
  int attempts = 0;
};

// Independent edge sampling with probability 2 gamma, resampled until H
// passes the exact conditions at (eps, 2 gamma, gamma, 3 gamma) and every
// degree of G - H lies in (1 - mu +- 4 gamma) m. Throws SamplingFailed.
SparseReservoir reserve_sparse(const Multigraph& pair, std::span<const Vertex> left,
                               std::span<const Vertex> right, double mu, double gamma,
                               double eps, std::uint64_t seed, int retries = 20);

// Exactly `degree`-regular spanning subgraph of the pair, randomized by the
// seed. Uses a matching decomposition when the pair is regular and a flow
// otherwise.
Multigraph reserve_regular(const Multigraph& pair, std::span<const Vertex> left,
                           std::span<const Vertex> right, int degree, std::uint64_t seed);

}  // namespace hamdec
