#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lacunary/permutations.hpp"
#include "lacunary/sequences.hpp"

namespace lacunary {

// Mean-zero trigonometric polynomial
//   f(x) = sum_j a_j cos(2 pi j x) + b_j sin(2 pi j x),  j = 1..degree.
// The constant term is structurally absent; at least one coefficient must be
// nonzero.
class TrigPolynomial {
 public:
  TrigPolynomial(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  std::size_t degree() const { return cos_.size(); }
  double cos_coeff(std::size_t j) const { return cos_[j - 1]; }  // 1-based
  double sin_coeff(std::size_t j) const { return sin_[j - 1]; }
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }

  double operator()(double x) const;  // evaluates at frac(x)

  double l2_norm_squared() const;  // (1/2) sum (a_j^2 + b_j^2)
  double l2_norm() const;

  std::string describe() const;

 private:
  std::vector<double> cos_, sin_;
};

// Exact value of the integral over [0,1] of f(m x) f(n x): frequencies match
// where j*m = j'*n, so only the reduced ratio m/n enters.
double dilation_inner_product(const TrigPolynomial& f, std::uint64_t m, std::uint64_t n);

enum class GammaKind { kac, empirical, star_truncated, d_squared };

const char* gamma_kind_name(GammaKind kind);

struct PairContribution {
  std::size_t k, l;  // 1-based positions in the prefix
  double value;      // dilation inner product of the dilated pair
};

struct GammaReport {
  GammaKind kind{GammaKind::kac};
  double value{0};
  // True when the value is N^{-1} int (sum f)^2 or its unnormalized variant,
  // hence nonnegative by construction; kac/star are raw signed sums.
  bool from_square_integral{false};
  std::map<std::string, std::string> params;
  std::vector<PairContribution> pair_contributions;  // recorded when N <= 64
  // Optional convergence trace: (N, value) at increasing N.
  std::vector<std::pair<std::uint64_t, double>> ladder;
};

// ||f||^2 + 2 sum_{k>=1} int f(x) f(base^k x) dx; the sum is finite (terms
// vanish once base^k exceeds the degree).
GammaReport gamma_kac(const TrigPolynomial& f, std::uint64_t base);

// N^{-1} int_0^1 (sum_{k<=N} f(n_{sigma(k)} x))^2 dx via exact pairwise
// dilation inner products; never quadrature.
GammaReport gamma_empirical(const TrigPolynomial& f, const GapSequence& seq,
                            const Permutation& sigma, std::size_t N);

// gamma_empirical for n_k = base^k, computed in the exponent domain: the
// inner product of a pair depends only on |sigma(k) - sigma(l)|, so the value
// is defined for any N even where base^N is not representable.
GammaReport gamma_empirical_geometric(const TrigPolynomial& f, std::uint64_t base,
                                      const Permutation& sigma, std::size_t N);

// Truncated coprime-pair sum: sum over ordered pairs (k,l) in [1,N]^2 with
// gcd(n_k, n_l) = 1 of int f(n_k x) f(n_l x) dx (k = l contributes only when
// n_k = 1); divided by N when normalized.
GammaReport gamma_star_truncated(const TrigPolynomial& f, const GapSequence& seq,
                                 std::size_t N, bool normalized);

// d_N^2 = int (sum_{k<=N} f(n_{sigma(k)} x))^2 dx, exact.
double d_squared(const TrigPolynomial& f, const GapSequence& seq,
                 const Permutation& sigma, std::size_t N);

// Same quantity for n_k = base^k in closed form: valid for any N since only
// dilation gaps base^delta <= degree contribute, no terms are materialized.
double d_squared_geometric(const TrigPolynomial& f, std::uint64_t base, std::uint64_t N);

}  // namespace lacunary
