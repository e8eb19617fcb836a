#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lacunary/sequences.hpp"

namespace lacunary {

inline constexpr int kMaxPTerm = 8;  // nondegeneracy uses 2^p subset masks
inline constexpr std::int64_t kDefaultCoeffCap = 10;
inline constexpr int kDefaultPCap = 4;
inline constexpr std::int64_t kDefaultCScanBound = 1000000;
inline constexpr std::uint64_t kDefaultBudget = 200000000;

struct TwoTermQuery {
  std::int64_t a{0}, b{0};  // both nonzero
  std::int64_t c{0};
  std::size_t n_limit{0};          // indices range over 1..n_limit
  bool exclude_diagonal{false};    // drop pairs with k == l
};

struct PairWitness {
  std::size_t k, l;  // 1-based
};

struct TwoTermCount {
  std::uint64_t count{0};
  std::vector<PairWitness> witnesses;  // at most max_witnesses
};

// Number of ordered pairs (k,l), k,l <= n_limit, with a n_k + b n_l = c.
// Hash-bucketed: O(n_limit) expected.
TwoTermCount count_two_term(const GapSequence& seq, const TwoTermQuery& query,
                            std::size_t max_witnesses = 20);

struct PTermQuery {
  std::vector<std::int64_t> coeffs;  // p entries, each nonzero, 2 <= p <= kMaxPTerm
  std::int64_t rhs{0};
  std::size_t n_limit{0};
};

struct TupleWitness {
  std::vector<std::size_t> indices;   // k_1 < ... < k_p, 1-based
  std::vector<std::int64_t> coeffs;
  std::string rhs;                    // decimal (may exceed 64 bits)
  std::uint64_t n_at{0};              // scan scale N for condition witnesses
};

struct PTermCount {
  std::uint64_t count{0};
  std::vector<TupleWitness> witnesses;
};

// Number of strictly increasing index tuples k_1 < ... < k_p <= n_limit with
// sum a_i n_{k_i} = rhs and no nonempty proper subsum equal to zero.
PTermCount count_p_term_nondegenerate(const GapSequence& seq, const PTermQuery& query,
                                      std::size_t max_witnesses = 20);

enum class B2Variant { plain, strong, weak, zero };
enum class Verdict { consistent, violated, inconclusive };

const char* b2_variant_name(B2Variant v);
const char* verdict_name(Verdict v);

struct CountTableEntry {
  std::string c;          // decimal value of the right-hand side
  std::uint64_t count{0};
};

struct ConditionCertificate {
  std::string kind;       // "b2_plain", "b2_strong", "b2_weak", "b2_zero", "a_p", "a_omega"
  Verdict verdict{Verdict::consistent};
  std::uint64_t observed_max_count{0};
  // For B2 kinds: the same maximum restricted to |c| <= c_scan_bound.
  std::uint64_t observed_max_count_small_c{0};
  std::vector<CountTableEntry> table;     // top entries by count (at most 100)
  std::vector<TupleWitness> witnesses;    // at most 20
  std::map<std::string, std::string> params;
  std::string notes;
};

// Scans all nonzero |a|,|b| <= coeff_bound over indices <= n_limit,
// enumerating attainable c exactly by bucketing a n_k + b n_l.  Variant
// rules: plain counts c != 0 over ordered pairs; strong adds c = 0 with
// k != l; weak/zero require the count to be sublinear, with "violated"
// declared only when some (a,b,c) family keeps count(P)/P >= 0.1 at the
// three prefixes P = n_limit, n_limit/2, n_limit/4 (zero restricts to c = 0,
// k != l).  The same structural-family rule flags plain/strong.
ConditionCertificate certify_b2(const GapSequence& seq, B2Variant variant,
                                std::size_t n_limit, std::int64_t coeff_bound,
                                std::int64_t c_scan_bound = kDefaultCScanBound);

// Max over coefficient vectors (0 < |a_i| <= coeff_bound) and right-hand
// sides 0 < |b| <= rhs_bound of the nondegenerate solution count with
// k_1 < ... < k_p <= n_limit.  Exceeding the work budget yields verdict
// inconclusive with the partial scan recorded.
ConditionCertificate certify_ap(const GapSequence& seq, int p,
                                std::int64_t coeff_bound, std::int64_t rhs_bound,
                                std::size_t n_limit,
                                std::uint64_t budget = kDefaultBudget);

// Searches sum a_i n_{k_i} = 0 for nondegenerate solutions that defeat the
// staged caps: a solution with top index k_p is a witness when some
// N <= min(k_p - 1, n_check) admits it, i.e. p <= min(omega_N, p_cap) and
// max |a_i| <= min(N^{omega_N}, coeff_cap).  Verdict is violated on any
// witness, else consistent within the declared caps.
ConditionCertificate certify_aomega(const GapSequence& seq, const OmegaSchedule& omega,
                                    std::size_t n_check, int p_cap,
                                    std::int64_t coeff_cap);

}  // namespace lacunary
