#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace lacunary {

enum class PermutationRule { identity, table, block_interleave, window_selector };
enum class InterleaveSplit { odds_first, evens_first };

// A bijection of the positive integers evaluated lazily by rule; nothing
// beyond the queried prefix is ever materialized.
class Permutation {
 public:
  static Permutation identity();

  // Explicit 1-based table, identity beyond its length.  The table must be a
  // permutation of 1..len (checked at construction).
  static Permutation from_table(std::vector<std::uint64_t> table);

  // Within each block of block_len (even, >= 2): odd offsets first, then
  // even offsets, each in increasing order.  block_len 4: 1,3,2,4,5,7,6,8,...
  static Permutation block_interleave(std::uint64_t block_len,
                                      InterleaveSplit split = InterleaveSplit::odds_first);

  // stride >= 2.  Values are split into "selected" (v = 1 mod stride) and
  // deferred (the rest).  Block 0 of length stride^2 lists the selected
  // values of 1..stride^2 then its remainder; every later block emits the
  // next stride^2 - 1 unemitted selected values followed by one deferred
  // value.  The selected front runs ahead while deferred values are
  // interleaved at bounded density, so prefixes at block boundaries consist
  // of a completed initial segment plus a selected-only tail.  Globally
  // bijective.
  static Permutation window_selector(std::uint64_t stride);

  // Apply sigma(k) for 1-based k >= 1.
  std::uint64_t operator()(std::uint64_t k) const;

  PermutationRule rule() const { return rule_; }
  std::uint64_t block_len() const { return param_; }
  std::uint64_t stride() const { return param_; }
  InterleaveSplit split() const { return split_; }
  const std::vector<std::uint64_t>& table() const { return table_; }

  // Compact form used in artifacts and CLI flags, e.g. "identity",
  // "interleave:4", "window:2", "table:<len>".
  std::string describe() const;

 private:
  Permutation() = default;
  PermutationRule rule_{PermutationRule::identity};
  std::uint64_t param_{0};
  InterleaveSplit split_{InterleaveSplit::odds_first};
  std::vector<std::uint64_t> table_;
};

// One positive integer per line; the listed values form the table.
Permutation load_table_permutation(const std::filesystem::path& path);

}  // namespace lacunary
