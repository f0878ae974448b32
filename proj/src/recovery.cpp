#include "typeident/recovery.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "typeident/errors.hpp"
#include "typeident/linalg.hpp"

namespace typeident {

namespace {

bool in_simplex(const RatVector& v) {
  Rational sum(0);
  for (const auto& q : v) {
    if (q < 0) return false;
    sum += q;
  }
  return sum == 1;
}

std::vector<std::pair<Rational, Rational>> feasible_segments(const RatVector& particular,
                                                             const RatMatrix& kernel) {
  std::vector<std::pair<Rational, Rational>> segments;
  for (const auto& d : kernel) {
    // Entries of a kernel direction sum to zero, so both signs occur and
    // the nonnegativity segment is bounded.
    bool has_lo = false, has_hi = false;
    Rational lo(0), hi(0);
    for (size_t i = 0; i < d.size(); ++i) {
      if (d[i] == 0) continue;
      const Rational bound = -particular[i] / d[i];
      if (d[i] > 0) {
        if (!has_lo || bound > lo) lo = bound;
        has_lo = true;
      } else {
        if (!has_hi || bound < hi) hi = bound;
        has_hi = true;
      }
    }
    segments.emplace_back(has_lo ? lo : Rational(0), has_hi ? hi : Rational(0));
  }
  return segments;
}

SolutionSet pack_solution(linalg::LinearSolution sol, int ambient) {
  SolutionSet out;
  out.particular = std::move(sol.particular);
  out.kernel.ambient = ambient;
  out.kernel.basis = std::move(sol.kernel);
  out.unique = out.kernel.trivial();
  out.particular_in_simplex = in_simplex(out.particular);
  out.feasible_segments = feasible_segments(out.particular, out.kernel.basis);
  return out;
}

std::pair<ConcreteMatrix, std::optional<RatVector>> sample_with_weights(
    const Occasion& occasion, Rng& rng) {
  if (const auto* pattern = std::get_if<PossibilityPattern>(&occasion)) {
    ConcreteMatrix m;
    m.pattern = *pattern;
    m.values.assign(static_cast<size_t>(pattern->n()),
                    RatVector(static_cast<size_t>(pattern->r()), Rational(0)));
    for (int l = 0; l < pattern->r(); ++l) {
      long total = 0;
      std::vector<long> numerators(static_cast<size_t>(pattern->n()), 0);
      for (int k = 0; k < pattern->n(); ++k) {
        if (!pattern->allowed[static_cast<size_t>(k)][static_cast<size_t>(l)]) continue;
        numerators[static_cast<size_t>(k)] = rng.range(1, config::kGridDenominator);
        total += numerators[static_cast<size_t>(k)];
      }
      for (int k = 0; k < pattern->n(); ++k) {
        if (numerators[static_cast<size_t>(k)] == 0) continue;
        m.values[static_cast<size_t>(k)][static_cast<size_t>(l)] = make_rational(numerators[static_cast<size_t>(k)], total);
      }
    }
    return {std::move(m), std::nullopt};
  }
  const auto& ts = std::get<TypeStateModel>(occasion);
  const RatVector f = random_simplex_point(rng, ts.num_states(), config::kGridDenominator);
  return {assemble_matrix(ts, f), f};
}

int thread_count() {
  if (const char* env = std::getenv("TYPEIDENT_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

}  // namespace

SolutionSet solve_distribution(const ConcreteMatrix& m, const ObservedShares& p) {
  if (static_cast<int>(p.probs.size()) != m.n()) {
    throw std::invalid_argument("solve_distribution: share vector length != row count");
  }
  const linalg::LinearSolution sol = linalg::solve(m.values, p.probs);
  if (!sol.consistent) {
    throw InconsistentDataError("shares inconsistent with model");
  }
  return pack_solution(sol, m.r());
}

SolutionSet solve_state_weights(const TypeStateModel& ts, const ConcreteMatrix& m) {
  if (m.n() != ts.n() || m.r() != ts.r()) {
    throw std::invalid_argument("solve_state_weights: matrix shape differs from model");
  }
  const int num_states = ts.num_states();
  RatMatrix system;
  RatVector rhs;
  system.reserve(static_cast<size_t>(ts.n()) * static_cast<size_t>(ts.r()));
  for (int k = 0; k < ts.n(); ++k) {
    for (int l = 0; l < ts.r(); ++l) {
      RatVector row(static_cast<size_t>(num_states), Rational(0));
      for (int a = 0; a < num_states; ++a) {
        if (ts.choice[static_cast<size_t>(l)][static_cast<size_t>(a)] == k) row[static_cast<size_t>(a)] = 1;
      }
      system.push_back(std::move(row));
      rhs.push_back(m.values[static_cast<size_t>(k)][static_cast<size_t>(l)]);
    }
  }
  const linalg::LinearSolution sol = linalg::solve(system, rhs);
  if (!sol.consistent) {
    throw InconsistentDataError("matrix is not a state-weight combination of the model");
  }
  return pack_solution(sol, num_states);
}

RankReport montecarlo_rank(const Occasion& occasion, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("montecarlo_rank: samples must be >= 1");
  const int r = std::holds_alternative<PossibilityPattern>(occasion)
                    ? std::get<PossibilityPattern>(occasion).r()
                    : std::get<TypeStateModel>(occasion).r();

  std::vector<char> full(static_cast<size_t>(samples), 0);
  std::vector<double> sigma(static_cast<size_t>(samples), 0.0);

  const auto run_range = [&](int beg, int end) {
    Rng base(seed);
    for (int i = beg; i < end; ++i) {
      Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(i));
      const ConcreteMatrix m = sample_occasion_matrix(occasion, rng);
      full[static_cast<size_t>(i)] = linalg::rank(m.values) == r ? 1 : 0;
      Eigen::MatrixXd dm(m.n(), m.r());
      for (int a = 0; a < m.n(); ++a)
        for (int b = 0; b < m.r(); ++b)
          dm(a, b) = rational_to_double(m.values[static_cast<size_t>(a)][static_cast<size_t>(b)]);
      const Eigen::JacobiSVD<Eigen::MatrixXd> svd(dm);
      sigma[static_cast<size_t>(i)] = svd.singularValues().tail(1)(0);
    }
  };

  const int threads = std::min(thread_count(), samples);
  if (threads <= 1) {
    run_range(0, samples);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (samples + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int beg = t * chunk;
      const int end = std::min(samples, beg + chunk);
      if (beg < end) pool.emplace_back(run_range, beg, end);
    }
    for (auto& th : pool) th.join();
  }

  RankReport report;
  report.samples = samples;
  double sum = 0.0;
  report.min_singular_min = sigma[0];
  report.min_singular_max = sigma[0];
  for (int i = 0; i < samples; ++i) {
    report.full_rank_count += full[static_cast<size_t>(i)];
    sum += sigma[static_cast<size_t>(i)];
    report.min_singular_min = std::min(report.min_singular_min, sigma[static_cast<size_t>(i)]);
    report.min_singular_max = std::max(report.min_singular_max, sigma[static_cast<size_t>(i)]);
  }
  report.full_rank_fraction = static_cast<double>(report.full_rank_count) / samples;
  report.min_singular_mean = sum / samples;
  return report;
}

ConcreteMatrix sample_occasion_matrix(const Occasion& occasion, Rng& rng) {
  return sample_with_weights(occasion, rng).first;
}

RandomInstance random_instance(const Occasion& occasion, std::uint64_t seed) {
  Rng rng(seed);
  RandomInstance instance;
  auto [matrix, weights] = sample_with_weights(occasion, rng);
  instance.matrix = std::move(matrix);
  instance.weights = std::move(weights);
  instance.pi.probs = random_simplex_point(rng, instance.matrix.r(), config::kGridDenominator);
  instance.shares = aggregate_shares(instance.matrix, instance.pi);
  return instance;
}

}  // namespace typeident
