#include "lacunary/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace lacunary {

TrigPolynomial::TrigPolynomial(std::vector<double> cos_coeffs,
                               std::vector<double> sin_coeffs)
    : cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  std::size_t degree = std::max(cos_.size(), sin_.size());
  if (degree == 0) throw validation_error("trig polynomial needs coefficients");
  cos_.resize(degree, 0.0);
  sin_.resize(degree, 0.0);
  bool any = false;
  for (std::size_t j = 0; j < degree; ++j) {
    if (!std::isfinite(cos_[j]) || !std::isfinite(sin_[j]))
      throw validation_error("trig coefficients must be finite");
    if (cos_[j] != 0.0 || sin_[j] != 0.0) any = true;
  }
  if (!any) throw validation_error("trig polynomial is identically zero");
}

double TrigPolynomial::operator()(double x) const {
  double t = x - std::floor(x);
  double sum = 0.0;
  for (std::size_t j = 1; j <= degree(); ++j) {
    double arg = 2.0 * std::numbers::pi * static_cast<double>(j) * t;
    sum += cos_[j - 1] * std::cos(arg) + sin_[j - 1] * std::sin(arg);
  }
  return sum;
}

double TrigPolynomial::l2_norm_squared() const {
  double s = 0.0;
  for (std::size_t j = 0; j < cos_.size(); ++j)
    s += cos_[j] * cos_[j] + sin_[j] * sin_[j];
  return 0.5 * s;
}

double TrigPolynomial::l2_norm() const { return std::sqrt(l2_norm_squared()); }

std::string TrigPolynomial::describe() const {
  std::ostringstream s;
  auto join = [&s](const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s << ",";
      s << v[i];
    }
  };
  s << "cos[";
  join(cos_);
  s << "];sin[";
  join(sin_);
  s << "]";
  return s.str();
}

double dilation_inner_product(const TrigPolynomial& f, std::uint64_t m, std::uint64_t n) {
  if (m == 0 || n == 0) throw validation_error("dilation factors must be positive");
  std::uint64_t g = std::gcd(m, n);
  std::uint64_t m0 = m / g, n0 = n / g;
  // Frequencies j m and j' n coincide exactly when j = t n0, j' = t m0.
  std::uint64_t d = f.degree();
  double sum = 0.0;
  for (std::uint64_t t = 1; t <= d / n0 && t <= d / m0; ++t)
    sum += f.cos_coeff(t * n0) * f.cos_coeff(t * m0) +
           f.sin_coeff(t * n0) * f.sin_coeff(t * m0);
  return 0.5 * sum;
}

const char* gamma_kind_name(GammaKind kind) {
  switch (kind) {
    case GammaKind::kac: return "kac";
    case GammaKind::empirical: return "empirical";
    case GammaKind::star_truncated: return "star_truncated";
    case GammaKind::d_squared: return "d_squared";
  }
  return "unknown";
}

GammaReport gamma_kac(const TrigPolynomial& f, std::uint64_t base) {
  if (base < 2) throw validation_error("gamma base must be >= 2");
  GammaReport report;
  report.kind = GammaKind::kac;
  double value = f.l2_norm_squared();
  for (std::uint64_t h = base; h <= f.degree(); h *= base) {
    value += 2.0 * dilation_inner_product(f, 1, h);
    if (h > f.degree() / base) break;  // next power would overflow past degree
  }
  report.value = value;
  report.params["base"] = std::to_string(base);
  report.params["f"] = f.describe();
  return report;
}

namespace {

// Terms n_{sigma(k)} for k = 1..N, validating that sigma stays inside the
// stored prefix.
std::vector<std::uint64_t> permuted_prefix(const GapSequence& seq,
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

// d_N^2 together with the off-diagonal pair values (recorded when N <= 64).
double square_integral(const TrigPolynomial& f, const std::vector<std::uint64_t>& terms,
                       std::vector<PairContribution>* pairs) {
  std::size_t N = terms.size();
  double value = static_cast<double>(N) * f.l2_norm_squared();
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t l = k + 1; l < N; ++l) {
      double dip = dilation_inner_product(f, terms[k], terms[l]);
      value += 2.0 * dip;
      if (pairs && N <= 64) pairs->push_back({k + 1, l + 1, dip});
    }
  return value;
}

}  // namespace

GammaReport gamma_empirical(const TrigPolynomial& f, const GapSequence& seq,
                            const Permutation& sigma, std::size_t N) {
  GammaReport report;
  report.kind = GammaKind::empirical;
  report.from_square_integral = true;
  auto terms = permuted_prefix(seq, sigma, N);
  report.value = square_integral(f, terms, &report.pair_contributions) /
                 static_cast<double>(N);
  report.params["N"] = std::to_string(N);
  report.params["sigma"] = sigma.describe();
  report.params["f"] = f.describe();
  return report;
}

GammaReport gamma_empirical_geometric(const TrigPolynomial& f, std::uint64_t base,
                                      const Permutation& sigma, std::size_t N) {
  if (base < 2) throw validation_error("base must be >= 2");
  if (N == 0) throw validation_error("prefix length must be positive");
  // For n_k = base^k the pair (k,l) contributes dip(1, base^{|sigma(k)-sigma(l)|}),
  // so only exponent differences matter and base^N never needs materializing.
  std::vector<double> dip_by_delta{0.0};  // index = delta; 0 unused
  for (std::uint64_t h = base; h <= f.degree(); h *= base) {
    dip_by_delta.push_back(dilation_inner_product(f, 1, h));
    if (h > f.degree() / base) break;
  }
  std::size_t max_delta = dip_by_delta.size() - 1;
  std::vector<std::uint64_t> e(N);
  for (std::size_t k = 1; k <= N; ++k) e[k - 1] = sigma(k);

  GammaReport report;
  report.kind = GammaKind::empirical;
  report.from_square_integral = true;
  double value = static_cast<double>(N) * f.l2_norm_squared();
  if (N <= 64) {
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t l = k + 1; l < N; ++l) {
        std::uint64_t delta = e[k] > e[l] ? e[k] - e[l] : e[l] - e[k];
        double dip = delta <= max_delta ? dip_by_delta[delta] : 0.0;
        value += 2.0 * dip;
        report.pair_contributions.push_back({k + 1, l + 1, dip});
      }
  } else {
    std::vector<std::uint64_t> sorted = e;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t delta = 1; delta <= max_delta; ++delta) {
      std::size_t count = 0;
      for (std::uint64_t ek : sorted)
        if (std::binary_search(sorted.begin(), sorted.end(), ek + delta)) ++count;
      value += 2.0 * static_cast<double>(count) * dip_by_delta[delta];
    }
  }
  report.value = value / static_cast<double>(N);
  report.params["N"] = std::to_string(N);
  report.params["base"] = std::to_string(base);
  report.params["sigma"] = sigma.describe();
  report.params["f"] = f.describe();
  return report;
}

GammaReport gamma_star_truncated(const TrigPolynomial& f, const GapSequence& seq,
                                 std::size_t N, bool normalized) {
  if (N == 0) throw validation_error("prefix length must be positive");
  validate_sequence(seq);
  if (N > seq.size())
    throw validation_error("prefix length " + std::to_string(N) + " exceeds the stored " +
                           std::to_string(seq.size()) + " terms");
  GammaReport report;
  report.kind = GammaKind::star_truncated;
  double value = 0.0;
  for (std::size_t k = 1; k <= N; ++k)
    for (std::size_t l = 1; l <= N; ++l) {
      std::uint64_t a = seq.term(k), b = seq.term(l);
      if (std::gcd(a, b) != 1) continue;  // k = l survives only when n_k = 1
      double dip = dilation_inner_product(f, a, b);
      value += dip;
      if (N <= 64 && k < l) report.pair_contributions.push_back({k, l, dip});
    }
  report.value = normalized ? value / static_cast<double>(N) : value;
  report.params["N"] = std::to_string(N);
  report.params["normalized"] = normalized ? "true" : "false";
  report.params["f"] = f.describe();
  return report;
}

double d_squared(const TrigPolynomial& f, const GapSequence& seq,
                 const Permutation& sigma, std::size_t N) {
  auto terms = permuted_prefix(seq, sigma, N);
  return square_integral(f, terms, nullptr);
}

double d_squared_geometric(const TrigPolynomial& f, std::uint64_t base, std::uint64_t N) {
  if (base < 2) throw validation_error("base must be >= 2");
  if (N == 0) throw validation_error("prefix length must be positive");
  // Only pairs with dilation gap base^delta <= degree contribute; each gap
  // delta occurs N - delta times, so no terms need materializing.
  double value = static_cast<double>(N) * f.l2_norm_squared();
  std::uint64_t delta = 1;
  for (std::uint64_t h = base; h <= f.degree(); h *= base, ++delta) {
    if (delta <= N - 1)
      value += 2.0 * static_cast<double>(N - delta) * dilation_inner_product(f, 1, h);
    if (h > f.degree() / base) break;
  }
  return value;
}

}  // namespace lacunary
