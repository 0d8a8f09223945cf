#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "hamdec/classic.hpp"
#include "hamdec/rng.hpp"
#include "hamdec/superregular.hpp"

namespace hamdec {

std::string_view to_string(CheckMode mode) {
  return mode == CheckMode::Exhaustive ? "exhaustive" : "sampled";
}

namespace {

constexpr double kTol = 1e-9;

// Local 0/1 adjacency between left index i and right index j.
std::vector<std::vector<char>> local_matrix(const Multigraph& g, std::span<const Vertex> left,
                                            std::span<const Vertex> right) {
  std::vector<int> right_index(g.vertex_count(), -1);
  for (std::size_t j = 0; j < right.size(); ++j) right_index[right[j]] = static_cast<int>(j);
  std::vector<std::vector<char>> adj(left.size(), std::vector<char>(right.size(), 0));
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (const auto& [v, mult] : g.neighbours(left[i])) {
      if (right_index[v] >= 0) adj[i][right_index[v]] = 1;
    }
  }
  return adj;
}

double deviation(long long edges, long long rows, long long cols, double d) {
  const double density = static_cast<double>(edges) / static_cast<double>(rows * cols);
  return d > 0 ? std::abs(density / d - 1.0) : density;
}

}  // namespace

SuperregularityReport check_superregular(const Multigraph& pair, std::span<const Vertex> left,
                                         std::span<const Vertex> right,
                                         const SuperregularParams& params, std::uint64_t seed,
                                         int trials) {
  if (left.size() != right.size() || left.empty()) {
    fail(ErrorKind::MalformedInput, "superregularity needs two nonempty classes of equal size");
  }
  SuperregularityReport rep;
  rep.params = params;
  rep.seed = seed;
  const int m = static_cast<int>(left.size());
  const auto adj = local_matrix(pair, left, right);

  std::vector<int> left_deg(m, 0);
  std::vector<int> right_deg(m, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      left_deg[i] += adj[i][j];
      right_deg[j] += adj[i][j];
    }
  }
  rep.max_degree = std::max(*std::max_element(left_deg.begin(), left_deg.end()),
                            *std::max_element(right_deg.begin(), right_deg.end()));
  rep.min_degree = std::min(*std::min_element(left_deg.begin(), left_deg.end()),
                            *std::min_element(right_deg.begin(), right_deg.end()));

  // Codegrees on each side; neighbourhoods of opposite sides are disjoint.
  int codegree = 0;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      int left_common = 0;
      int right_common = 0;
      for (int t = 0; t < m; ++t) {
        left_common += adj[a][t] & adj[b][t];
        right_common += adj[t][a] & adj[t][b];
      }
      codegree = std::max({codegree, left_common, right_common});
    }
  }
  rep.max_codegree = codegree;
  rep.reg2 = codegree <= params.spread * params.spread * m + kTol;
  rep.reg3 = rep.max_degree <= params.spread * m + kTol;
  rep.reg4 = rep.min_degree >= params.min_density * m - kTol;

  const int min_size = std::max(1, static_cast<int>(std::ceil(params.eps * m - kTol)));
  double worst = 0.0;
  if (m <= 12) {
    rep.reg1_mode = CheckMode::Exhaustive;
    const int full = 1 << m;
    std::vector<int> row_mask(m, 0);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (adj[i][j]) row_mask[i] |= 1 << j;
      }
    }
    std::vector<long long> sum(full, 0);
    std::vector<int> count(m, 0);
    for (int xs = 1; xs < full; ++xs) {
      const int rows = std::popcount(static_cast<unsigned>(xs));
      if (rows < min_size) continue;
      for (int j = 0; j < m; ++j) count[j] = 0;
      for (int i = 0; i < m; ++i) {
        if (!(xs >> i & 1)) continue;
        for (int j = 0; j < m; ++j) count[j] += row_mask[i] >> j & 1;
      }
      for (int ys = 1; ys < full; ++ys) {
        const int low = std::countr_zero(static_cast<unsigned>(ys));
        sum[ys] = sum[ys & (ys - 1)] + count[low];
        const int cols = std::popcount(static_cast<unsigned>(ys));
        if (cols < min_size) continue;
        worst = std::max(worst, deviation(sum[ys], rows, cols, params.density));
        ++rep.reg1_trials;
      }
    }
  } else {
    rep.reg1_mode = CheckMode::Sampled;
    Rng rng(seed);
    std::vector<int> order_left(m);
    std::vector<int> order_right(m);
    for (int t = 0; t < trials; ++t) {
      auto pick_size = [&] {
        if (t % 2 == 0) return min_size;
        return min_size + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - min_size + 1)));
      };
      const int rows = pick_size();
      const int cols = pick_size();
      for (int i = 0; i < m; ++i) order_left[i] = order_right[i] = i;
      rng.shuffle(order_left);
      rng.shuffle(order_right);
      long long edges = 0;
      for (int a = 0; a < rows; ++a) {
        for (int b = 0; b < cols; ++b) edges += adj[order_left[a]][order_right[b]];
      }
      worst = std::max(worst, deviation(edges, rows, cols, params.density));
      ++rep.reg1_trials;
    }
  }
  rep.worst_density_deviation = worst;
  rep.reg1 = worst <= params.eps + kTol;
  return rep;
}

ExpansionReport check_robust_outexpander(const Digraph& g, double nu, double tau,
                                         std::uint64_t seed, int samples) {
  const int n = g.vertex_count();
  ExpansionReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  if (n == 0) {
    rep.expander = true;
    return rep;
  }
  const double lo = tau * n - kTol;
  const double hi = (1.0 - tau) * n + kTol;
  const double need_in = nu * n - kTol;
  auto evaluate = [&](const std::vector<char>& in_set, int size) {
    int count = 0;
    for (Vertex w = 0; w < n; ++w) {
      int from_set = 0;
      for (Vertex u : g.in(w)) from_set += in_set[u];
      if (from_set >= need_in) ++count;
    }
    rep.worst_margin = std::min(rep.worst_margin, count - (size + nu * n));
    ++rep.sets_tested;
  };
  std::vector<char> in_set(n, 0);
  if (n <= 18) {
    rep.mode = CheckMode::Exhaustive;
    for (long mask = 1; mask < (1L << n); ++mask) {
      const int size = std::popcount(static_cast<unsigned long>(mask));
      if (size < lo || size > hi) continue;
      for (int v = 0; v < n; ++v) in_set[v] = mask >> v & 1;
      evaluate(in_set, size);
    }
  } else {
    rep.mode = CheckMode::Sampled;
    Rng rng(seed);
    const int min_size = static_cast<int>(std::ceil(tau * n - kTol));
    const int max_size = static_cast<int>(std::floor((1.0 - tau) * n + kTol));
    std::vector<int> order(n);
    for (int t = 0; t < samples && min_size <= max_size; ++t) {
      const int size = min_size + static_cast<int>(rng.below(max_size - min_size + 1));
      for (int v = 0; v < n; ++v) order[v] = v;
      rng.shuffle(order);
      std::fill(in_set.begin(), in_set.end(), 0);
      for (int k = 0; k < size; ++k) in_set[order[k]] = 1;
      evaluate(in_set, size);
    }
  }
  if (rep.sets_tested == 0) rep.worst_margin = 0.0;
  rep.expander = rep.worst_margin >= -kTol;
  return rep;
}

SparseReservoir reserve_sparse(const Multigraph& pair, std::span<const Vertex> left,
                               std::span<const Vertex> right, double mu, double gamma,
                               double eps, std::uint64_t seed, int retries) {
  const int m = static_cast<int>(left.size());
  if (static_cast<int>(right.size()) != m || m == 0) {
    fail(ErrorKind::MalformedInput, "reservoir needs two nonempty classes of equal size");
  }
  if (3.0 * gamma * m < 1.0) {
    fail(ErrorKind::SamplingFailed, "3 gamma m < 1: no nonempty sample can meet the degree bounds");
  }
  const SuperregularParams params{eps, 2 * gamma, gamma, 3 * gamma};
  const Multigraph g = pair.between(left, right);
  const auto edges = g.entries();
  std::string last_failure;
  for (int attempt = 1; attempt <= retries; ++attempt) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(attempt)));
    Multigraph h(pair.vertex_count());
    for (const auto& e : edges) {
      for (int copy = 0; copy < e.multiplicity; ++copy) {
        if (rng.bernoulli(2 * gamma)) h.add_edge(e.u, e.v);
      }
    }
    Multigraph rest = g - h;
    auto report = check_superregular(h, left, right, params, Rng::derive(seed, 1000 + attempt));
    bool window = true;
    for (auto side : {left, right}) {
      for (Vertex v : side) {
        const double d = rest.degree(v);
        if (d < (1.0 - mu - 4 * gamma) * m - kTol || d > (1.0 - mu + 4 * gamma) * m + kTol) {
          window = false;
        }
      }
    }
    if (report.exact_ok() && window) {
      return SparseReservoir{std::move(h), std::move(rest), report, attempt};
    }
    last_failure = !report.reg2   ? "codegree " + std::to_string(report.max_codegree)
                   : !report.reg3 ? "max degree " + std::to_string(report.max_degree)
                   : !report.reg4 ? "min degree " + std::to_string(report.min_degree)
                                  : std::string("degree window of G - H");
  }
  fail(ErrorKind::SamplingFailed,
       std::to_string(retries) + " samples rejected; last failure: " + last_failure);
}

Multigraph reserve_regular(const Multigraph& pair, std::span<const Vertex> left,
                           std::span<const Vertex> right, int degree, std::uint64_t seed) {
  const Multigraph g = pair.between(left, right);
  if (degree == 0) return Multigraph(pair.vertex_count());
  bool regular = true;
  const int r = left.empty() ? 0 : g.degree(left.front());
  for (auto side : {left, right}) {
    for (Vertex v : side) regular = regular && g.degree(v) == r;
  }
  if (regular && degree <= r) {
    auto matchings = regular_bipartite_to_matchings(g, left, right);
    Rng rng(seed);
    rng.shuffle(matchings);
    Multigraph out(pair.vertex_count());
    for (int k = 0; k < degree; ++k) out += matchings[k];
    return out;
  }
  return regular_subgraph_exact(g, left, right, degree);
}

}  // namespace hamdec
