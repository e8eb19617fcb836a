#include "lacunary/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lacunary/rng.hpp"

namespace lacunary {

namespace {

constexpr std::uint64_t kSampleStream = 0x73616d706c65ULL;   // x-sample draws
constexpr std::uint64_t kBaselineStream = 0x696964ULL;       // i.i.d. baseline
constexpr std::uint64_t kDigitStreamTag = 0x646967697473ULL; // digit streams

std::vector<std::uint64_t> permuted_terms(const GapSequence& seq,
                                          const Permutation& sigma, std::size_t N) {
  if (N == 0) throw validation_error("prefix length must be positive");
  validate_sequence(seq);
  std::vector<std::uint64_t> out(N);
  for (std::size_t k = 1; k <= N; ++k) {
    std::uint64_t idx = sigma(k);
    if (idx > seq.size())
      throw validation_error("permutation sends position " + std::to_string(k) +
                             " to " + std::to_string(idx) + " beyond the stored " +
                             std::to_string(seq.size()) + " terms");
    out[k - 1] = seq.term(idx);
  }
  return out;
}

void check_n_grid(const std::vector<std::uint64_t>& n_grid) {
  if (n_grid.empty()) throw validation_error("N grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 16)
      throw validation_error("N grid values must be >= 16 so log log N > 0");
    if (i > 0 && n_grid[i] <= n_grid[i - 1])
      throw validation_error("N grid must be strictly increasing");
  }
}

double phi_normal(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// max over ladder prefixes of N D_N / sqrt(2 N log log N), appending cells.
void discrepancy_cells(const std::string& source_id, const std::vector<double>& points,
                       const std::vector<std::uint64_t>& n_grid, LilTrace* trace) {
  std::vector<double> prefix;
  for (std::uint64_t N : n_grid) {
    prefix.assign(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(N));
    double d = discrepancy(prefix).extreme;
    double norm = std::sqrt(2.0 * static_cast<double>(N) *
                            std::log(std::log(static_cast<double>(N))));
    double value = static_cast<double>(N) * d / norm;
    trace->cells.push_back({source_id, N, value});
    trace->running_max = std::max(trace->running_max, value);
  }
}

}  // namespace

SamplePlan SamplePlan::uniform_random(std::size_t count, std::uint64_t seed) {
  if (count == 0) throw validation_error("sample count must be positive");
  SamplePlan p;
  p.mode = Mode::uniform_random;
  p.count = count;
  p.seed = seed;
  return p;
}

SamplePlan SamplePlan::grid(std::size_t count) {
  if (count == 0) throw validation_error("sample count must be positive");
  SamplePlan p;
  p.mode = Mode::grid;
  p.count = count;
  return p;
}

std::vector<double> SamplePlan::materialize() const {
  if (count == 0) throw validation_error("sample count must be positive");
  std::vector<double> xs(count);
  if (mode == Mode::grid) {
    for (std::size_t i = 1; i <= count; ++i)
      xs[i - 1] = (2.0 * static_cast<double>(i) - 1.0) / (2.0 * static_cast<double>(count));
  } else {
    CounterRng rng(seed, kSampleStream);
    for (std::size_t i = 0; i < count; ++i) xs[i] = rng.uniform01_at(i);
  }
  return xs;
}

std::string SamplePlan::describe() const {
  if (mode == Mode::grid) return "grid:" + std::to_string(count);
  return "random:" + std::to_string(count) + ":seed" + std::to_string(seed);
}

double frac_mul(std::uint64_t n, double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw validation_error("frac_mul needs a finite x >= 0");
  if (n == 0 || x == 0.0) return 0.0;
  int e = 0;
  double m = std::frexp(x, &e);  // x = m 2^e, m in [0.5, 1)
  auto mantissa = static_cast<std::uint64_t>(std::ldexp(m, 53));
  unsigned __int128 prod = static_cast<unsigned __int128>(n) * mantissa;
  // n x = prod 2^{e-53}; the fractional part keeps the low s = 53 - e bits.
  int s = 53 - e;
  if (s <= 0) return 0.0;
  double r;
  if (s >= 128) {
    r = std::ldexp(static_cast<double>(prod), -s);
  } else {
    unsigned __int128 low =
        prod & ((static_cast<unsigned __int128>(1) << s) - 1);
    r = std::ldexp(static_cast<double>(low), -s);
  }
  if (r >= 1.0) r = std::nextafter(1.0, 0.0);
  return r;
}

std::vector<double> fractional_parts(const GapSequence& seq, const Permutation& sigma,
                                     double x, std::size_t N) {
  auto terms = permuted_terms(seq, sigma, N);
  std::vector<double> out(N);
  for (std::size_t k = 0; k < N; ++k) out[k] = frac_mul(terms[k], x);
  return out;
}

DiscrepancyValue discrepancy(std::span<const double> points) {
  if (points.empty()) throw validation_error("discrepancy of an empty sample");
  std::vector<double> sorted(points.begin(), points.end());
  for (double x : sorted)
    if (!(x >= 0.0 && x < 1.0))
      throw validation_error("discrepancy points must lie in [0,1)");
  std::sort(sorted.begin(), sorted.end());
  double N = static_cast<double>(sorted.size());
  DiscrepancyValue result;
  double up = 0.0;    // max of i/N - x_(i)
  double down = 0.0;  // max of x_(i) - (i-1)/N
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    double x = sorted[i - 1];
    up = std::max(up, static_cast<double>(i) / N - x);
    down = std::max(down, x - static_cast<double>(i - 1) / N);
    result.star = std::max({result.star, static_cast<double>(i) / N - x,
                            x - static_cast<double>(i - 1) / N});
  }
  result.extreme = up + down;
  return result;
}

std::vector<double> partial_sum_samples(const TrigPolynomial& f, const GapSequence& seq,
                                        const Permutation& sigma, std::size_t N,
                                        const SamplePlan& plan) {
  auto terms = permuted_terms(seq, sigma, N);
  auto xs = plan.materialize();
  std::vector<double> out(xs.size(), 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::uint64_t t : terms) out[i] += f(frac_mul(t, xs[i]));
  return out;
}

WeightSchedule WeightSchedule::ones(std::size_t count) {
  if (count == 0) throw validation_error("weight count must be positive");
  WeightSchedule w;
  w.weights.assign(count, 1.0);
  return w;
}

double WeightSchedule::normalizer(std::size_t N) const {
  if (N == 0 || N > weights.size())
    throw validation_error("normalizer index outside stored weights");
  double s = 0.0;
  for (std::size_t k = 0; k < N; ++k) s += weights[k] * weights[k];
  if (s == 0.0) throw validation_error("all weights up to N are zero");
  return std::sqrt(0.5 * s);
}

WeightedSum weighted_cos_sum(const WeightSchedule& weights, const GapSequence& seq,
                             double x, std::size_t N) {
  validate_sequence(seq);
  if (N == 0 || N > seq.size())
    throw validation_error("prefix length outside stored terms");
  if (N > weights.weights.size())
    throw validation_error("prefix length outside stored weights");
  WeightedSum out;
  for (std::size_t k = 1; k <= N; ++k)
    out.sum += weights.weights[k - 1] *
               std::cos(2.0 * std::numbers::pi * frac_mul(seq.term(k), x));
  out.normalized = out.sum / weights.normalizer(N);
  return out;
}

double ks_to_gaussian(std::vector<double> samples, double variance) {
  if (samples.empty()) throw validation_error("KS distance of an empty sample");
  if (!(variance > 0.0)) throw validation_error("variance must be positive");
  double scale = std::sqrt(variance);
  std::sort(samples.begin(), samples.end());
  double M = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double cdf = phi_normal(samples[i] / scale);
    d = std::max({d, cdf - static_cast<double>(i) / M,
                  static_cast<double>(i + 1) / M - cdf});
  }
  return d;
}

const char* lil_statistic_name(LilStatistic s) {
  switch (s) {
    case LilStatistic::sum_lil: return "sum_lil";
    case LilStatistic::discrepancy_lil: return "discrepancy_lil";
  }
  return "unknown";
}

std::vector<std::uint64_t> default_lil_ladder() {
  return {16384, 32768, 65536, 100000};
}

LilTrace lil_trace(LilStatistic statistic, const std::optional<TrigPolynomial>& f,
                   const GapSequence& seq, const Permutation& sigma,
                   const SamplePlan& plan, const std::vector<std::uint64_t>& n_grid) {
  check_n_grid(n_grid);
  LilTrace trace;
  trace.statistic = statistic;
  trace.n_grid = n_grid;
  std::size_t n_max = n_grid.back();
  if (statistic == LilStatistic::sum_lil && !f)
    throw validation_error("sum statistic needs a trig polynomial");

  auto xs = plan.materialize();
  auto terms = permuted_terms(seq, sigma, n_max);
  std::vector<double> norms;  // per grid N, shared across x
  if (statistic == LilStatistic::sum_lil) {
    for (std::uint64_t N : n_grid) {
      double d2 = d_squared(*f, seq, sigma, static_cast<std::size_t>(N));
      double ll = std::log(std::log(d2));
      if (!(ll > 0.0))
        throw validation_error("sum normalization needs d_N^2 with log log > 0");
      norms.push_back(std::sqrt(2.0 * d2 * ll));
    }
  }

  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::string source_id = "x:" + std::to_string(i + 1);
    if (statistic == LilStatistic::discrepancy_lil) {
      std::vector<double> parts(n_max);
      for (std::size_t k = 0; k < n_max; ++k) parts[k] = frac_mul(terms[k], xs[i]);
      discrepancy_cells(source_id, parts, n_grid, &trace);
    } else {
      double sum = 0.0;
      std::size_t done = 0;
      for (std::size_t g = 0; g < n_grid.size(); ++g) {
        for (; done < n_grid[g]; ++done) sum += (*f)(frac_mul(terms[done], xs[i]));
        double value = std::abs(sum) / norms[g];
        trace.cells.push_back({source_id, n_grid[g], value});
        trace.running_max = std::max(trace.running_max, value);
      }
    }
  }
  return trace;
}

LilTrace iid_baseline(std::uint64_t seed, std::size_t seed_count,
                      const std::vector<std::uint64_t>& n_grid) {
  check_n_grid(n_grid);
  if (seed_count == 0) throw validation_error("seed count must be positive");
  LilTrace trace;
  trace.statistic = LilStatistic::discrepancy_lil;
  trace.n_grid = n_grid;
  std::size_t n_max = n_grid.back();
  std::vector<double> points(n_max);
  for (std::size_t s = 0; s < seed_count; ++s) {
    CounterRng rng(seed + s, kBaselineStream);
    for (std::size_t i = 0; i < n_max; ++i) points[i] = rng.uniform01_at(i);
    discrepancy_cells("seed:" + std::to_string(seed + s), points, n_grid, &trace);
  }
  return trace;
}

double sigma_a(std::uint64_t a) {
  if (a < 2) throw validation_error("dilation base must be >= 2");
  double ad = static_cast<double>(a);
  if (a == 2) return std::sqrt(42.0) / 9.0;
  if (a % 2 == 1) return std::sqrt(ad + 1.0) / (2.0 * std::sqrt(ad - 1.0));
  return std::sqrt((ad + 1.0) * ad * (ad - 2.0)) /
         (2.0 * std::sqrt((ad - 1.0) * (ad - 1.0) * (ad - 1.0)));
}

PowerFracStream PowerFracStream::rational(std::uint64_t base, std::uint64_t num,
                                          std::uint64_t den, std::size_t max_k) {
  if (base < 2) throw validation_error("stream base must be >= 2");
  if (den == 0) throw validation_error("denominator must be positive");
  if (max_k == 0) throw validation_error("stream length must be positive");
  PowerFracStream s;
  s.values_.resize(max_k);
  unsigned __int128 r = num % den;
  for (std::size_t k = 0; k < max_k; ++k) {
    r = r * base % den;
    s.values_[k] = static_cast<double>(r) / static_cast<double>(den);
  }
  return s;
}

PowerFracStream PowerFracStream::random_digits(std::uint64_t base, std::uint64_t seed,
                                               std::uint64_t stream, std::size_t max_k) {
  if (base < 2) throw validation_error("stream base must be >= 2");
  if (max_k == 0) throw validation_error("stream length must be positive");
  // Guard digits push the truncation of the digit tail below 2^-60.
  std::size_t guard =
      static_cast<std::size_t>(std::ceil(60.0 / std::log2(static_cast<double>(base)))) + 2;
  std::size_t total = max_k + guard;
  CounterRng rng(seed, kDigitStreamTag ^ stream);
  std::vector<std::uint32_t> digits(total + 1);
  for (std::size_t j = 1; j <= total; ++j)
    digits[j] = static_cast<std::uint32_t>(rng.bounded_at(j, base));
  PowerFracStream s;
  s.values_.resize(max_k);
  double y = 0.0;  // y_K with the tail truncated
  for (std::size_t k = total; k-- > 0;) {
    y = (static_cast<double>(digits[k + 1]) + y) / static_cast<double>(base);
    if (k >= 1 && k <= max_k) s.values_[k - 1] = y;
  }
  return s;
}

double PowerFracStream::at(std::size_t k) const {
  if (k == 0 || k > values_.size())
    throw validation_error("stream index " + std::to_string(k) + " outside 1.." +
                           std::to_string(values_.size()));
  return values_[k - 1];
}

std::vector<double> geometric_partial_sums(const TrigPolynomial& f, std::uint64_t base,
                                           std::size_t N, const SamplePlan& plan) {
  if (N == 0) throw validation_error("prefix length must be positive");
  if (plan.count == 0) throw validation_error("sample count must be positive");
  std::vector<double> out(plan.count, 0.0);
  for (std::size_t i = 0; i < plan.count; ++i) {
    PowerFracStream stream =
        plan.mode == SamplePlan::Mode::grid
            ? PowerFracStream::rational(base, 2 * static_cast<std::uint64_t>(i) + 1,
                                        2 * static_cast<std::uint64_t>(plan.count), N)
            : PowerFracStream::random_digits(base, plan.seed, i, N);
    for (std::size_t k = 1; k <= N; ++k) out[i] += f(stream.at(k));
  }
  return out;
}

LilTrace geometric_discrepancy_lil(std::uint64_t base, std::uint64_t seed,
                                   std::size_t x_count,
                                   const std::vector<std::uint64_t>& n_grid) {
  check_n_grid(n_grid);
  if (x_count == 0) throw validation_error("x count must be positive");
  LilTrace trace;
  trace.statistic = LilStatistic::discrepancy_lil;
  trace.n_grid = n_grid;
  std::size_t n_max = n_grid.back();
  for (std::size_t i = 0; i < x_count; ++i) {
    PowerFracStream stream = PowerFracStream::random_digits(base, seed, i, n_max);
    std::vector<double> points(n_max);
    for (std::size_t k = 1; k <= n_max; ++k) points[k - 1] = stream.at(k);
    discrepancy_cells("x:" + std::to_string(i + 1), points, n_grid, &trace);
  }
  return trace;
}

}  // namespace lacunary
