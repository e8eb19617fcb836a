#include "lacunary/diophantine.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace lacunary {

namespace {

using Int = __int128;

std::string int128_str(Int v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::string digits;
  while (u > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

// No nonempty proper subsum of a_i v_i vanishes.
bool nondegenerate(const std::vector<std::int64_t>& coeffs,
                   const std::vector<std::uint64_t>& values) {
  std::size_t p = coeffs.size();
  for (unsigned mask = 1; mask + 1 < (1u << p); ++mask) {
    Int sum = 0;
    for (std::size_t i = 0; i < p; ++i)
      if (mask & (1u << i)) sum += static_cast<Int>(coeffs[i]) * values[i];
    if (sum == 0) return false;
  }
  return true;
}

// Odometer over coefficient vectors with each digit in
// {-bound..-1, 1..bound}; returns false once exhausted.
bool next_coeffs(std::vector<std::int64_t>& coeffs, std::int64_t bound) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    std::int64_t& a = coeffs[i];
    ++a;
    if (a == 0) a = 1;
    if (a <= bound) return true;
    a = -bound;
  }
  return false;
}

// k^w, or nullopt when the power exceeds 64 bits (treated as "no cap").
std::optional<std::uint64_t> try_pow(std::uint64_t k, std::uint32_t w) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < w; ++i) {
    if (__builtin_mul_overflow(r, k, &r)) return std::nullopt;
  }
  return r;
}

void check_prefix(const GapSequence& seq, std::size_t n_limit) {
  validate_sequence(seq);
  if (n_limit == 0) throw validation_error("index limit must be positive");
  if (n_limit > seq.size())
    throw validation_error("index limit " + std::to_string(n_limit) +
                           " exceeds the stored " + std::to_string(seq.size()) +
                           " terms");
}

}  // namespace

const char* b2_variant_name(B2Variant v) {
  switch (v) {
    case B2Variant::plain: return "plain";
    case B2Variant::strong: return "strong";
    case B2Variant::weak: return "weak";
    case B2Variant::zero: return "zero";
  }
  return "unknown";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

TwoTermCount count_two_term(const GapSequence& seq, const TwoTermQuery& query,
                            std::size_t max_witnesses) {
  check_prefix(seq, query.n_limit);
  if (query.a == 0 || query.b == 0)
    throw validation_error("two-term coefficients must be nonzero");
  TwoTermCount result;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  buckets.reserve(query.n_limit * 2);
  // Bucket b n_l by a low-collision key; confirm with the exact value.
  std::vector<Int> bvals(query.n_limit + 1);
  for (std::size_t l = 1; l <= query.n_limit; ++l) {
    bvals[l] = static_cast<Int>(query.b) * seq.term(l);
    buckets[static_cast<std::uint64_t>(bvals[l])].push_back(l);
  }
  for (std::size_t k = 1; k <= query.n_limit; ++k) {
    Int target = static_cast<Int>(query.c) - static_cast<Int>(query.a) * seq.term(k);
    auto it = buckets.find(static_cast<std::uint64_t>(target));
    if (it == buckets.end()) continue;
    for (std::size_t l : it->second) {
      if (bvals[l] != target) continue;
      if (query.exclude_diagonal && k == l) continue;
      ++result.count;
      if (result.witnesses.size() < max_witnesses) result.witnesses.push_back({k, l});
    }
  }
  return result;
}

PTermCount count_p_term_nondegenerate(const GapSequence& seq, const PTermQuery& query,
                                      std::size_t max_witnesses) {
  check_prefix(seq, query.n_limit);
  std::size_t p = query.coeffs.size();
  if (p < 2 || p > static_cast<std::size_t>(kMaxPTerm))
    throw validation_error("term count must lie in 2.." + std::to_string(kMaxPTerm));
  for (std::int64_t a : query.coeffs)
    if (a == 0) throw validation_error("coefficients must be nonzero");

  // Positions of each value; draw-order sequences may repeat values.
  std::map<std::uint64_t, std::vector<std::size_t>> at_value;
  for (std::size_t k = 1; k <= query.n_limit; ++k)
    at_value[seq.term(k)].push_back(k);

  PTermCount result;
  std::vector<std::size_t> idx(p - 1);
  std::vector<std::uint64_t> values(p);
  std::int64_t ap = query.coeffs[p - 1];

  // Enumerate k_1 < ... < k_{p-1}; solve a_p n_{k_p} = rhs - partial.
  auto scan = [&](auto&& self, std::size_t depth, std::size_t from, Int partial) -> void {
    if (depth == p - 1) {
      Int need = static_cast<Int>(query.rhs) - partial;
      if (need % ap != 0) return;
      Int v = need / ap;
      if (v < 1 || v > static_cast<Int>(std::numeric_limits<std::uint64_t>::max()))
        return;
      auto it = at_value.find(static_cast<std::uint64_t>(v));
      if (it == at_value.end()) return;
      for (std::size_t kp : it->second) {
        if (kp <= idx[p - 2]) continue;
        for (std::size_t i = 0; i + 1 < p; ++i) values[i] = seq.term(idx[i]);
        values[p - 1] = static_cast<std::uint64_t>(v);
        if (!nondegenerate(query.coeffs, values)) continue;
        ++result.count;
        if (result.witnesses.size() < max_witnesses) {
          TupleWitness w;
          w.indices.assign(idx.begin(), idx.end());
          w.indices.push_back(kp);
          w.coeffs = query.coeffs;
          w.rhs = std::to_string(query.rhs);
          result.witnesses.push_back(std::move(w));
        }
      }
      return;
    }
    for (std::size_t k = from; k + (p - 2 - depth) <= query.n_limit; ++k) {
      idx[depth] = k;
      self(self, depth + 1,
           k + 1, partial + static_cast<Int>(query.coeffs[depth]) * seq.term(k));
    }
  };
  scan(scan, 0, 1, 0);
  return result;
}

ConditionCertificate certify_b2(const GapSequence& seq, B2Variant variant,
                                std::size_t n_limit, std::int64_t coeff_bound,
                                std::int64_t c_scan_bound) {
  check_prefix(seq, n_limit);
  if (coeff_bound < 1) throw validation_error("coefficient bound must be >= 1");
  if (c_scan_bound < 0) throw validation_error("c scan bound must be >= 0");

  ConditionCertificate cert;
  cert.kind = std::string("b2_") + b2_variant_name(variant);
  cert.params["n_limit"] = std::to_string(n_limit);
  cert.params["coeff_bound"] = std::to_string(coeff_bound);
  cert.params["c_scan_bound"] = std::to_string(c_scan_bound);
  cert.params["scan"] = "a in 1..bound, b in +-1..bound; (a,b,c) and (-a,-b,-c) "
                        "have equal counts";

  bool counts_nonzero_c = variant != B2Variant::zero;
  bool counts_zero_c = variant == B2Variant::strong || variant == B2Variant::zero;

  struct Family {
    std::int64_t a, b;
    Int c;
    std::uint64_t count;
  };
  std::uint64_t max_count = 0, max_count_small = 0;
  std::optional<Family> argmax;
  std::vector<Family> linear_candidates;  // count >= n_limit / 10 at full prefix
  std::map<Int, std::uint64_t> table_merge;

  std::vector<Int> sums;
  sums.reserve(n_limit * n_limit);
  std::vector<std::pair<std::uint64_t, Int>> combo_top;

  for (std::int64_t a = 1; a <= coeff_bound; ++a)
    for (std::int64_t b = -coeff_bound; b <= coeff_bound; ++b) {
      if (b == 0) continue;
      sums.clear();
      for (std::size_t k = 1; k <= n_limit; ++k) {
        Int ak = static_cast<Int>(a) * seq.term(k);
        for (std::size_t l = 1; l <= n_limit; ++l)
          sums.push_back(ak + static_cast<Int>(b) * seq.term(l));
      }
      std::sort(sums.begin(), sums.end());
      combo_top.clear();
      for (std::size_t i = 0; i < sums.size();) {
        std::size_t j = i;
        while (j < sums.size() && sums[j] == sums[i]) ++j;
        Int c = sums[i];
        std::uint64_t count = j - i;
        i = j;
        if (c == 0) {
          if (!counts_zero_c) continue;
          if (a == -b) count -= n_limit;  // diagonal pairs are excluded at c = 0
          if (count == 0) continue;
        } else if (!counts_nonzero_c) {
          continue;
        }
        bool small_c = c >= -static_cast<Int>(c_scan_bound) &&
                       c <= static_cast<Int>(c_scan_bound);
        if (count > max_count ||
            (count == max_count && argmax && (c < argmax->c))) {
          max_count = count;
          argmax = Family{a, b, c, count};
        }
        if (small_c && count > max_count_small) max_count_small = count;
        if (count * 10 >= n_limit && linear_candidates.size() < 1000)
          linear_candidates.push_back({a, b, c, count});
        combo_top.push_back({count, c});
      }
      std::size_t keep = std::min<std::size_t>(100, combo_top.size());
      std::partial_sort(combo_top.begin(), combo_top.begin() + keep, combo_top.end(),
                        [](const auto& x, const auto& y) {
                          return x.first != y.first ? x.first > y.first
                                                    : x.second < y.second;
                        });
      for (std::size_t i = 0; i < keep; ++i) {
        auto& slot = table_merge[combo_top[i].second];
        slot = std::max(slot, combo_top[i].first);
      }
    }

  cert.observed_max_count = max_count;
  cert.observed_max_count_small_c = max_count_small;

  std::vector<std::pair<std::uint64_t, Int>> rows;
  rows.reserve(table_merge.size());
  for (const auto& [c, count] : table_merge) rows.push_back({count, c});
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  for (std::size_t i = 0; i < rows.size() && i < 100; ++i)
    cert.table.push_back({int128_str(rows[i].second), rows[i].first});

  auto family_count = [&](const Family& f, std::size_t P) {
    TwoTermQuery q;
    q.a = f.a;
    q.b = f.b;
    q.c = static_cast<std::int64_t>(f.c);  // candidates have |c| within scan sums
    q.n_limit = P;
    q.exclude_diagonal = f.c == 0;
    return count_two_term(seq, q, 0).count;
  };
  // A family is linear-in-N only if its count also grows with the prefix;
  // a constant handful of solutions can clear count >= P/10 at small P.
  std::optional<Family> violating;
  const std::size_t half = std::max<std::size_t>(1, n_limit / 2);
  const std::size_t quarter = std::max<std::size_t>(1, n_limit / 4);
  for (const Family& f : linear_candidates) {
    if (f.c < std::numeric_limits<std::int64_t>::min() ||
        f.c > std::numeric_limits<std::int64_t>::max())
      continue;  // counts this large at huge c cannot recur at smaller prefixes
    if (family_count(f, half) * 10 < half) continue;
    std::uint64_t at_quarter = family_count(f, quarter);
    if (at_quarter * 10 < quarter) continue;
    if (f.count <= at_quarter) continue;  // no growth: not a linear family
    violating = f;
    break;
  }

  const Family* report_family = nullptr;
  if (violating) {
    cert.verdict = Verdict::violated;
    cert.notes = "family a=" + std::to_string(violating->a) +
                 ", b=" + std::to_string(violating->b) + ", c=" +
                 int128_str(violating->c) + " keeps count >= P/10 at P = n_limit, "
                 "n_limit/2, n_limit/4 and grows with the prefix";
    report_family = &*violating;
  } else {
    cert.verdict = Verdict::consistent;
    cert.notes = "no coefficient family sustains linear pair counts across "
                 "prefixes; maxima reported are exact for this scan";
    if (argmax) report_family = &*argmax;
  }
  if (report_family && report_family->c >= std::numeric_limits<std::int64_t>::min() &&
      report_family->c <= std::numeric_limits<std::int64_t>::max()) {
    TwoTermQuery q;
    q.a = report_family->a;
    q.b = report_family->b;
    q.c = static_cast<std::int64_t>(report_family->c);
    q.n_limit = n_limit;
    q.exclude_diagonal = report_family->c == 0;
    for (const PairWitness& w : count_two_term(seq, q, 20).witnesses) {
      TupleWitness t;
      t.indices = {w.k, w.l};
      t.coeffs = {report_family->a, report_family->b};
      t.rhs = int128_str(report_family->c);
      t.n_at = n_limit;
      cert.witnesses.push_back(std::move(t));
    }
  }
  return cert;
}

ConditionCertificate certify_ap(const GapSequence& seq, int p,
                                std::int64_t coeff_bound, std::int64_t rhs_bound,
                                std::size_t n_limit, std::uint64_t budget) {
  check_prefix(seq, n_limit);
  if (p < 2 || p > kMaxPTerm)
    throw validation_error("term count must lie in 2.." + std::to_string(kMaxPTerm));
  if (coeff_bound < 1 || rhs_bound < 1)
    throw validation_error("coefficient and rhs bounds must be >= 1");

  ConditionCertificate cert;
  cert.kind = "a_p";
  cert.params["p"] = std::to_string(p);
  cert.params["coeff_bound"] = std::to_string(coeff_bound);
  cert.params["rhs_bound"] = std::to_string(rhs_bound);
  cert.params["n_limit"] = std::to_string(n_limit);
  cert.params["budget"] = std::to_string(budget);
  cert.params["index_convention"] = "tuples k_1 < ... < k_p, each counted once";

  struct Key {
    std::vector<std::int64_t> coeffs;
    std::int64_t rhs;
    bool operator<(const Key& o) const {
      return coeffs != o.coeffs ? coeffs < o.coeffs : rhs < o.rhs;
    }
  };
  struct Entry {
    std::uint64_t count{0};
    std::vector<std::vector<std::size_t>> witness_indices;  // first 20
  };
  std::map<Key, Entry> hits;

  std::uint64_t work = 0;
  bool exhausted = false;
  std::vector<std::size_t> idx(p);
  std::vector<std::uint64_t> values(p);
  std::vector<std::int64_t> coeffs(p, -coeff_bound);

  auto scan_tuple = [&](auto&& self, std::size_t depth, std::size_t from) -> void {
    if (exhausted) return;
    if (depth == static_cast<std::size_t>(p)) {
      std::fill(coeffs.begin(), coeffs.end(), -coeff_bound);
      do {
        if (++work > budget) {
          exhausted = true;
          return;
        }
        Int sum = 0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(p); ++i)
          sum += static_cast<Int>(coeffs[i]) * values[i];
        if (sum == 0 || sum < -static_cast<Int>(rhs_bound) ||
            sum > static_cast<Int>(rhs_bound))
          continue;
        if (!nondegenerate(coeffs, values)) continue;
        Entry& e = hits[Key{coeffs, static_cast<std::int64_t>(sum)}];
        ++e.count;
        if (e.witness_indices.size() < 20) e.witness_indices.push_back(idx);
      } while (next_coeffs(coeffs, coeff_bound));
      return;
    }
    for (std::size_t k = from; k + (p - 1 - depth) <= n_limit && !exhausted; ++k) {
      idx[depth] = k;
      values[depth] = seq.term(k);
      self(self, depth + 1, k + 1);
    }
  };
  scan_tuple(scan_tuple, 0, 1);

  const Key* argmax = nullptr;
  std::uint64_t max_count = 0;
  std::map<std::int64_t, std::uint64_t> table_merge;
  for (const auto& [key, entry] : hits) {
    if (entry.count > max_count) {
      max_count = entry.count;
      argmax = &key;
    }
    auto& slot = table_merge[key.rhs];
    slot = std::max(slot, entry.count);
  }
  cert.observed_max_count = max_count;
  cert.observed_max_count_small_c = max_count;  // rhs is capped by rhs_bound
  std::vector<std::pair<std::uint64_t, std::int64_t>> rows;
  for (const auto& [rhs, count] : table_merge) rows.push_back({count, rhs});
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  for (std::size_t i = 0; i < rows.size() && i < 100; ++i)
    cert.table.push_back({std::to_string(rows[i].second), rows[i].first});
  if (argmax) {
    const Entry& e = hits.at(*argmax);
    for (const auto& indices : e.witness_indices) {
      if (cert.witnesses.size() >= 20) break;
      TupleWitness w;
      w.indices = indices;
      w.coeffs = argmax->coeffs;
      w.rhs = std::to_string(argmax->rhs);
      w.n_at = n_limit;
      cert.witnesses.push_back(std::move(w));
    }
  }
  cert.params["work"] = std::to_string(work);
  if (exhausted) {
    cert.verdict = Verdict::inconclusive;
    cert.notes = "work budget exhausted before the scan finished; counts are "
                 "lower bounds over the region scanned";
  } else {
    cert.verdict = Verdict::consistent;
    cert.notes = "scan complete; the reported maxima are exact for indices up "
                 "to n_limit and the stated bounds";
  }
  return cert;
}

ConditionCertificate certify_aomega(const GapSequence& seq, const OmegaSchedule& omega,
                                    std::size_t n_check, int p_cap,
                                    std::int64_t coeff_cap) {
  validate_sequence(seq);
  if (n_check == 0) throw validation_error("check scale must be positive");
  if (p_cap < 2 || p_cap > kMaxPTerm)
    throw validation_error("term cap must lie in 2.." + std::to_string(kMaxPTerm));
  if (coeff_cap < 1) throw validation_error("coefficient cap must be >= 1");

  ConditionCertificate cert;
  cert.kind = "a_omega";
  cert.params["n_check"] = std::to_string(n_check);
  cert.params["p_cap"] = std::to_string(p_cap);
  cert.params["coeff_cap"] = std::to_string(coeff_cap);
  cert.params["omega"] = omega.describe();
  cert.params["terms"] = std::to_string(seq.size());

  std::size_t M = seq.size();
  // A witness needs p <= omega_N for some N <= n_check; omega is
  // nondecreasing, so p can never exceed omega at n_check.
  std::uint32_t omega_at_check = omega.value_at(std::min<std::uint64_t>(n_check, M));
  int p_max = std::min<int>(p_cap, static_cast<int>(
                                       std::min<std::uint32_t>(omega_at_check, kMaxPTerm)));

  std::map<std::uint64_t, std::vector<std::size_t>> at_value;
  for (std::size_t k = 1; k <= M; ++k) at_value[seq.term(k)].push_back(k);

  std::uint64_t total = 0;
  for (int p = 2; p <= p_max; ++p) {
    std::vector<std::size_t> idx(p - 1);
    std::vector<std::uint64_t> values(p);
    std::vector<std::int64_t> coeffs(p, -coeff_cap);
    std::fill(coeffs.begin(), coeffs.end(), -coeff_cap);
    do {
      std::int64_t max_abs = 0;
      for (std::int64_t a : coeffs) max_abs = std::max(max_abs, a < 0 ? -a : a);
      std::int64_t ap = coeffs[p - 1];
      auto scan = [&](auto&& self, std::size_t depth, std::size_t from,
                      Int partial) -> void {
        if (depth + 1 == static_cast<std::size_t>(p)) {
          Int need = -partial;
          if (need % ap != 0) return;
          Int v = need / ap;
          if (v < 1 || v > static_cast<Int>(std::numeric_limits<std::uint64_t>::max()))
            return;
          auto it = at_value.find(static_cast<std::uint64_t>(v));
          if (it == at_value.end()) return;
          for (std::size_t kp : it->second) {
            if (kp <= idx[p - 2]) continue;
            // Most permissive scale that both admits the caps and keeps the
            // top index outside the scanned prefix.
            std::uint64_t n_star = std::min<std::uint64_t>(kp - 1, n_check);
            std::uint32_t w = omega.value_at(n_star);
            if (static_cast<std::uint32_t>(p) > w) continue;
            std::int64_t cap = coeff_cap;
            if (auto pw = try_pow(n_star, w);
                pw && *pw < static_cast<std::uint64_t>(cap))
              cap = static_cast<std::int64_t>(*pw);
            if (max_abs > cap) continue;
            for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(p); ++i)
              values[i] = seq.term(idx[i]);
            values[p - 1] = static_cast<std::uint64_t>(v);
            if (!nondegenerate(coeffs, values)) continue;
            ++total;
            if (cert.witnesses.size() < 20) {
              TupleWitness wit;
              wit.indices.assign(idx.begin(), idx.end());
              wit.indices.push_back(kp);
              wit.coeffs = coeffs;
              wit.rhs = "0";
              wit.n_at = n_star;
              cert.witnesses.push_back(std::move(wit));
            }
          }
          return;
        }
        for (std::size_t k = from; k + (p - 1 - depth) <= M; ++k) {
          idx[depth] = k;
          self(self, depth + 1, k + 1,
               partial + static_cast<Int>(coeffs[depth]) * seq.term(k));
        }
      };
      scan(scan, 0, 1, 0);
    } while (next_coeffs(coeffs, coeff_cap));
  }

  cert.observed_max_count = total;
  cert.observed_max_count_small_c = total;
  cert.verdict = total > 0 ? Verdict::violated : Verdict::consistent;
  cert.notes = total > 0
                   ? "vanishing nondegenerate combinations admitted by the staged "
                     "caps exist; each witness records its admitting scale"
                   : "no vanishing nondegenerate combination is admitted at any "
                     "scale up to n_check under the stated caps";
  return cert;
}

}  // namespace lacunary
