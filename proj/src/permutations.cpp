#include "lacunary/permutations.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <vector>

#include "lacunary/common.hpp"

namespace lacunary {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw capacity_error(std::string(what) + ": value exceeds 64-bit capacity");
  return out;
}

}  // namespace

Permutation Permutation::identity() { return Permutation(); }

Permutation Permutation::from_table(std::vector<std::uint64_t> table) {
  if (table.empty()) throw validation_error("permutation table is empty");
  std::vector<bool> seen(table.size(), false);
  for (std::uint64_t v : table) {
    if (v == 0 || v > table.size())
      throw validation_error("table value " + std::to_string(v) +
                             " outside 1.." + std::to_string(table.size()));
    if (seen[v - 1])
      throw validation_error("table value " + std::to_string(v) + " repeats");
    seen[v - 1] = true;
  }
  Permutation p;
  p.rule_ = PermutationRule::table;
  p.param_ = table.size();
  p.table_ = std::move(table);
  return p;
}

Permutation Permutation::block_interleave(std::uint64_t block_len, InterleaveSplit split) {
  if (block_len < 2 || block_len % 2 != 0)
    throw validation_error("interleave block length must be even and >= 2");
  Permutation p;
  p.rule_ = PermutationRule::block_interleave;
  p.param_ = block_len;
  p.split_ = split;
  return p;
}

Permutation Permutation::window_selector(std::uint64_t stride) {
  if (stride < 2) throw validation_error("window stride must be >= 2");
  checked_mul(stride, stride, "window_selector block length");
  Permutation p;
  p.rule_ = PermutationRule::window_selector;
  p.param_ = stride;
  return p;
}

std::uint64_t Permutation::operator()(std::uint64_t k) const {
  if (k == 0) throw validation_error("permutation argument is 1-based");
  switch (rule_) {
    case PermutationRule::identity:
      return k;
    case PermutationRule::table:
      return k <= table_.size() ? table_[k - 1] : k;
    case PermutationRule::block_interleave: {
      std::uint64_t m = param_;
      std::uint64_t b = (k - 1) / m;
      std::uint64_t r = (k - 1) % m + 1;
      std::uint64_t half = m / 2;
      bool first_half = r <= half;
      std::uint64_t odd_offset = first_half ? 2 * r - 1 : 2 * (r - half) - 1;
      std::uint64_t even_offset = first_half ? 2 * r : 2 * (r - half);
      bool want_odd = (split_ == InterleaveSplit::odds_first) == first_half;
      std::uint64_t offset = want_odd ? odd_offset : even_offset;
      return checked_add(checked_mul(b, m, "block_interleave"), offset,
                         "block_interleave");
    }
    case PermutationRule::window_selector: {
      std::uint64_t s = param_;
      std::uint64_t L = s * s;  // fits: checked at construction
      std::uint64_t b = (k - 1) / L;
      std::uint64_t r = (k - 1) % L + 1;
      // v-th selected value is (v-1) s + 1; u-th deferred value is
      // g s + o + 2 with g = (u-1) div (s-1), o = (u-1) mod (s-1).
      auto selected = [&](std::uint64_t v) {
        return checked_add(checked_mul(v - 1, s, "window_selector"), 1,
                           "window_selector");
      };
      auto deferred = [&](std::uint64_t u) {
        std::uint64_t g = (u - 1) / (s - 1);
        std::uint64_t o = (u - 1) % (s - 1);
        return checked_add(checked_mul(g, s, "window_selector"), o + 2,
                           "window_selector");
      };
      if (b == 0) return r <= s ? selected(r) : deferred(r - s);
      if (r < L) {
        // Selected values emitted before this block: s + (b - 1)(L - 1).
        std::uint64_t v = checked_add(
            checked_add(s, checked_mul(b - 1, L - 1, "window_selector"),
                        "window_selector"),
            r, "window_selector");
        return selected(v);
      }
      return deferred(checked_add(L - s, b, "window_selector"));
    }
  }
  return k;
}

std::string Permutation::describe() const {
  switch (rule_) {
    case PermutationRule::identity:
      return "identity";
    case PermutationRule::table:
      return "table:" + std::to_string(table_.size());
    case PermutationRule::block_interleave:
      return "interleave:" + std::to_string(param_) +
             (split_ == InterleaveSplit::evens_first ? ":evens" : "");
    case PermutationRule::window_selector:
      return "window:" + std::to_string(param_);
  }
  return "identity";
}

Permutation load_table_permutation(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open permutation file " + path.string());
  std::vector<std::uint64_t> table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::uint64_t value = 0;
    std::size_t pos = 0;
    try {
      value = std::stoull(line, &pos);
    } catch (const std::exception&) {
      throw validation_error(path.string() + ":" + std::to_string(lineno) +
                             ": not a positive integer: '" + line + "'");
    }
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos != line.size() || line[0] == '-')
      throw validation_error(path.string() + ":" + std::to_string(lineno) +
                             ": not a positive integer: '" + line + "'");
    table.push_back(value);
  }
  return Permutation::from_table(std::move(table));
}

}  // namespace lacunary
