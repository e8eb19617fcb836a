#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lacunary/common.hpp"
#include "lacunary/rational.hpp"

namespace lacunary {

enum class SequenceKind { geometric, hlp, erdos_gap, random_aomega, user_file };

const char* sequence_kind_name(SequenceKind kind);

// An increasing sequence of positive integers n_1 < n_2 < ... together with
// how it was made.  Sequences from the random model keep their draw order
// (draw_order = true) and expose sorted_unique() for operations whose
// contracts require strict increase; user files may opt in to unordered
// terms explicitly.
struct GapSequence {
  std::vector<std::uint64_t> terms;
  SequenceKind kind{SequenceKind::user_file};
  bool draw_order{false};
  std::map<std::string, std::string> meta;  // provenance key=value pairs

  std::size_t size() const { return terms.size(); }

  // 1-based accessor matching the customary indexing n_1, n_2, ...
  std::uint64_t term(std::size_t k) const {
    if (k == 0 || k > terms.size())
      throw validation_error("sequence index " + std::to_string(k) +
                             " out of range 1.." + std::to_string(terms.size()));
    return terms[k - 1];
  }

  // Sorted view with duplicates removed; reports how many were dropped.
  GapSequence sorted_unique(std::size_t* duplicates_dropped = nullptr) const;
};

// Throws validation_error unless terms are nonempty, positive, and strictly
// increasing (the draw_order flag waives the ordering requirement).
void validate_sequence(const GapSequence& seq);

// n_k = base^k for k = 1..count.  base >= 2.  Throws capacity_error when a
// term would exceed 64 bits.
GapSequence gen_geometric(std::uint64_t base, std::size_t count);

// The count smallest products of powers of the generators, 1 included.
// Generators must be >= 2 and pairwise coprime.
GapSequence gen_hlp(const std::vector<std::uint64_t>& generators, std::size_t count);

// Greedy minimal sequence with n_{k+1} >= n_k (1 + k^{-alpha}), n_1 = 1,
// each step strictly increasing.  Requires 0 <= alpha < 1/2.
GapSequence gen_erdos_gap(double alpha, std::size_t count);

// Nondecreasing positive integer schedule omega_k, tending upward.
class OmegaSchedule {
 public:
  static OmegaSchedule constant_then_linear(std::uint32_t level,
                                            std::uint64_t ramp_start = 1000000);
  static OmegaSchedule log_power(double alpha);
  static OmegaSchedule from_values(std::vector<std::uint32_t> values);

  // omega_k for 1-based k; user lists extend by their last value.
  std::uint32_t value_at(std::uint64_t k) const;
  std::vector<std::uint32_t> prefix(std::size_t count) const;
  std::string describe() const;

 private:
  OmegaSchedule() = default;
  enum class Rule { constant_then_linear, log_power, user_list };
  Rule rule_{Rule::constant_then_linear};
  std::uint32_t level_{1};
  std::uint64_t ramp_start_{1000000};
  double alpha_{1.0};
  std::vector<std::uint32_t> values_;
};

// Random model: n_k drawn uniformly from [1, k^{omega_k}], independently,
// deterministic in seed.  Result keeps draw order; duplicates_dropped of the
// sorted view is recorded in meta.
GapSequence gen_random_aomega(const OmegaSchedule& omega, std::size_t count,
                              std::uint64_t seed);

struct GrowthReport {
  Ratio min_ratio;                       // min over k of n_{k+1}/n_k, exact
  std::optional<Ratio> hadamard_q;       // = min_ratio when > 1, else absent
  bool ratio_divergence{false};          // min tail ratio exceeds threshold
  std::optional<double> tijdeman_alpha;  // critical gap exponent, see below
};

// Growth diagnostics over the full stored prefix (needs >= 2 terms, strictly
// increasing).  tijdeman_alpha is the least exponent a >= 0 such that
// n_{k+1} - n_k >= n_k / (log n_k)^a holds for every k with n_k >= 3
// (smaller terms have log log <= 0 and are skipped); absent when no index
// applies.  ratio_divergence tests the last tail_fraction of consecutive
// ratios against divergence_threshold.
GrowthReport analyze_growth(const GapSequence& seq,
                            double divergence_threshold = 10.0,
                            double tail_fraction = 0.5);

// Plain text format: optional '#key=value' header lines, then one positive
// decimal integer per line.
void write_sequence_file(const std::filesystem::path& path, const GapSequence& seq);
GapSequence read_sequence_file(const std::filesystem::path& path,
                               bool allow_unordered = false);

}  // namespace lacunary
