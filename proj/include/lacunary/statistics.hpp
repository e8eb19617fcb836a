#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacunary/harmonic.hpp"
#include "lacunary/permutations.hpp"
#include "lacunary/sequences.hpp"

namespace lacunary {

// Where the x samples come from.  grid(count) is the midpoint grid
// (2i-1)/(2 count); uniform_random(count, seed) draws from the counter
// generator, one index per sample.
struct SamplePlan {
  enum class Mode { uniform_random, grid };
  Mode mode{Mode::grid};
  std::size_t count{0};
  std::uint64_t seed{0};

  static SamplePlan uniform_random(std::size_t count, std::uint64_t seed);
  static SamplePlan grid(std::size_t count);
  std::vector<double> materialize() const;
  std::string describe() const;
};

// frac(x) exactly for the product n*x of a 64-bit integer and a double,
// computed in 128-bit fixed point; error at most one ulp of the result.
double frac_mul(std::uint64_t n, double x);

// frac(n_{sigma(k)} x) for k = 1..N.
std::vector<double> fractional_parts(const GapSequence& seq, const Permutation& sigma,
                                     double x, std::size_t N);

struct DiscrepancyValue {
  double extreme{0};  // sup over intervals [a,b)
  double star{0};     // sup over anchored intervals [0,b)
};

// Exact discrepancy of points in [0,1) via the sorted-sample formulas.
DiscrepancyValue discrepancy(std::span<const double> points);

// S_N(x) = sum_{k<=N} f(n_{sigma(k)} x) for each x of the plan.
std::vector<double> partial_sum_samples(const TrigPolynomial& f, const GapSequence& seq,
                                        const Permutation& sigma, std::size_t N,
                                        const SamplePlan& plan);

// Weights a_k for sum a_k cos(2 pi n_k x); A_N = sqrt((1/2) sum_{k<=N} a_k^2).
struct WeightSchedule {
  std::vector<double> weights;

  static WeightSchedule ones(std::size_t count);
  double normalizer(std::size_t N) const;  // A_N; throws when all zero
};

struct WeightedSum {
  double sum{0};
  double normalized{0};  // sum / A_N
};

WeightedSum weighted_cos_sum(const WeightSchedule& weights, const GapSequence& seq,
                             double x, std::size_t N);

// One-sample Kolmogorov-Smirnov distance between samples/sqrt(variance) and
// the standard normal, evaluated exactly at the jump points.
double ks_to_gaussian(std::vector<double> samples, double variance);

enum class LilStatistic { sum_lil, discrepancy_lil };

const char* lil_statistic_name(LilStatistic s);

struct LilCell {
  std::string source_id;  // x index or seed label
  std::uint64_t N{0};
  double value{0};
};

struct LilTrace {
  LilStatistic statistic{LilStatistic::discrepancy_lil};
  std::vector<std::uint64_t> n_grid;
  std::vector<LilCell> cells;
  double running_max{0};
};

// Default N ladder for law-of-the-iterated-logarithm traces.  The
// normalization sqrt(2N log log N) is asymptotic; the declared ladder starts
// where log log N has stabilized.
std::vector<std::uint64_t> default_lil_ladder();

// Normalized traces over the N grid (every N >= 16 so log log N > 0):
//   sum_lil:          sum_{k<=N} f(n_{sigma(k)} x) / sqrt(2 d_N^2 log log d_N^2)
//   discrepancy_lil:  N D_N(x) / sqrt(2 N log log N),  D_N extreme
// One trace row per (x sample, N); d_N^2 comes from the exact pairwise
// computation.
LilTrace lil_trace(LilStatistic statistic, const std::optional<TrigPolynomial>& f,
                   const GapSequence& seq, const Permutation& sigma,
                   const SamplePlan& plan, const std::vector<std::uint64_t>& n_grid);

// discrepancy_lil for seeded i.i.d. uniforms, one source per seed offset:
// source ids "seed:<s>" for s = seed..seed+seed_count-1.
LilTrace iid_baseline(std::uint64_t seed, std::size_t seed_count,
                      const std::vector<std::uint64_t>& n_grid);

// Limsup constants for the pure-power case n_k = a^k:
//   a = 2: sqrt(42)/9; odd a >= 3: sqrt(a+1)/(2 sqrt(a-1));
//   even a >= 4: sqrt((a+1) a (a-2)) / (2 sqrt((a-1)^3)).
double sigma_a(std::uint64_t a);

// Exact fractional-part stream frac(base^k x), k = 1..max_k, for dilations
// far beyond 64-bit term capacity.  Rational x = num/den uses modular
// exponentiation (exact); random x uses a seeded base-ary digit stream
// (uniform x is equivalent to i.i.d. digits) evaluated by the backward
// recursion y_k = (d_{k+1} + y_{k+1})/base, exact to one ulp.
class PowerFracStream {
 public:
  static PowerFracStream rational(std::uint64_t base, std::uint64_t num,
                                  std::uint64_t den, std::size_t max_k);
  static PowerFracStream random_digits(std::uint64_t base, std::uint64_t seed,
                                       std::uint64_t stream, std::size_t max_k);
  double at(std::size_t k) const;  // 1-based, k <= max_k
  std::size_t max_k() const { return values_.size(); }

 private:
  PowerFracStream() = default;
  std::vector<double> values_;
};

// S_N(x) = sum_{k<=N} f(frac(base^k x)) per plan sample; grid plans use the
// exact rational path, random plans use digit streams keyed by sample index.
std::vector<double> geometric_partial_sums(const TrigPolynomial& f, std::uint64_t base,
                                           std::size_t N, const SamplePlan& plan);

// discrepancy_lil trace for n_k = base^k with x_count random x streams.
LilTrace geometric_discrepancy_lil(std::uint64_t base, std::uint64_t seed,
                                   std::size_t x_count,
                                   const std::vector<std::uint64_t>& n_grid);

}  // namespace lacunary
