#include "lacunary/sequences.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "lacunary/rng.hpp"

namespace lacunary {

const char* sequence_kind_name(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::geometric: return "geometric";
    case SequenceKind::hlp: return "hlp";
    case SequenceKind::erdos_gap: return "erdos_gap";
    case SequenceKind::random_aomega: return "random_aomega";
    case SequenceKind::user_file: return "user_file";
  }
  return "unknown";
}

GapSequence GapSequence::sorted_unique(std::size_t* duplicates_dropped) const {
  GapSequence out = *this;
  std::sort(out.terms.begin(), out.terms.end());
  auto last = std::unique(out.terms.begin(), out.terms.end());
  std::size_t dropped = static_cast<std::size_t>(out.terms.end() - last);
  out.terms.erase(last, out.terms.end());
  out.draw_order = false;
  out.meta["sorted"] = "true";
  out.meta["duplicates_dropped"] = std::to_string(dropped);
  if (duplicates_dropped) *duplicates_dropped = dropped;
  return out;
}

void validate_sequence(const GapSequence& seq) {
  if (seq.terms.empty()) throw validation_error("sequence has no terms");
  for (std::size_t i = 0; i < seq.terms.size(); ++i) {
    if (seq.terms[i] == 0)
      throw validation_error("sequence term at position " + std::to_string(i + 1) +
                             " is zero; terms must be positive");
    if (!seq.draw_order && i > 0 && seq.terms[i] <= seq.terms[i - 1])
      throw validation_error("sequence not strictly increasing at position " +
                             std::to_string(i + 1));
  }
}

GapSequence gen_geometric(std::uint64_t base, std::size_t count) {
  if (base < 2) throw validation_error("geometric base must be >= 2");
  if (count == 0) throw validation_error("count must be positive");
  GapSequence seq;
  seq.kind = SequenceKind::geometric;
  seq.terms.reserve(count);
  std::uint64_t value = 1;
  for (std::size_t k = 0; k < count; ++k) {
    value = checked_mul(value, base, "gen_geometric");
    seq.terms.push_back(value);
  }
  seq.meta["base"] = std::to_string(base);
  seq.meta["count"] = std::to_string(count);
  return seq;
}

GapSequence gen_hlp(const std::vector<std::uint64_t>& generators, std::size_t count) {
  if (generators.empty()) throw validation_error("need at least one generator");
  if (count == 0) throw validation_error("count must be positive");
  for (std::uint64_t q : generators)
    if (q < 2) throw validation_error("generator " + std::to_string(q) + " must be >= 2");
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (std::gcd(generators[i], generators[j]) != 1)
        throw validation_error("generators " + std::to_string(generators[i]) + " and " +
                               std::to_string(generators[j]) + " are not coprime");

  // Smallest-first frontier; pairwise-coprime generators make every product
  // unique, but a value is reachable along several orders, so a set dedups.
  GapSequence seq;
  seq.kind = SequenceKind::hlp;
  std::set<std::uint64_t> frontier{1};
  while (seq.terms.size() < count) {
    if (frontier.empty())
      throw capacity_error("gen_hlp: next product exceeds 64-bit capacity");
    std::uint64_t v = *frontier.begin();
    frontier.erase(frontier.begin());
    seq.terms.push_back(v);
    for (std::uint64_t q : generators) {
      std::uint64_t next;
      if (!__builtin_mul_overflow(v, q, &next)) frontier.insert(next);
    }
  }
  std::string gens;
  for (std::uint64_t q : generators) {
    if (!gens.empty()) gens += ",";
    gens += std::to_string(q);
  }
  seq.meta["generators"] = gens;
  seq.meta["count"] = std::to_string(count);
  return seq;
}

GapSequence gen_erdos_gap(double alpha, std::size_t count) {
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw validation_error("erdos gap exponent must satisfy 0 <= alpha < 1/2");
  if (count == 0) throw validation_error("count must be positive");
  GapSequence seq;
  seq.kind = SequenceKind::erdos_gap;
  seq.terms.reserve(count);
  seq.terms.push_back(1);
  for (std::size_t k = 1; k < count; ++k) {
    double factor = 1.0 + std::pow(static_cast<double>(k), -alpha);
    long double target = static_cast<long double>(seq.terms.back()) * factor;
    if (target > static_cast<long double>(std::numeric_limits<std::uint64_t>::max()))
      throw capacity_error("gen_erdos_gap: term exceeds 64-bit capacity");
    std::uint64_t next = static_cast<std::uint64_t>(std::ceil(target));
    if (next <= seq.terms.back()) next = seq.terms.back() + 1;
    seq.terms.push_back(next);
  }
  std::ostringstream a;
  a << alpha;
  seq.meta["alpha"] = a.str();
  seq.meta["count"] = std::to_string(count);
  return seq;
}

OmegaSchedule OmegaSchedule::constant_then_linear(std::uint32_t level,
                                                  std::uint64_t ramp_start) {
  if (level == 0) throw validation_error("omega level must be positive");
  if (ramp_start == 0) throw validation_error("omega ramp start must be positive");
  OmegaSchedule s;
  s.rule_ = Rule::constant_then_linear;
  s.level_ = level;
  s.ramp_start_ = ramp_start;
  return s;
}

OmegaSchedule OmegaSchedule::log_power(double alpha) {
  if (!(alpha > 0.0)) throw validation_error("omega log power must be positive");
  OmegaSchedule s;
  s.rule_ = Rule::log_power;
  s.alpha_ = alpha;
  return s;
}

OmegaSchedule OmegaSchedule::from_values(std::vector<std::uint32_t> values) {
  if (values.empty()) throw validation_error("omega list must be nonempty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0) throw validation_error("omega values must be positive");
    if (i > 0 && values[i] < values[i - 1])
      throw validation_error("omega values must be nondecreasing");
  }
  OmegaSchedule s;
  s.rule_ = Rule::user_list;
  s.values_ = std::move(values);
  return s;
}

std::uint32_t OmegaSchedule::value_at(std::uint64_t k) const {
  if (k == 0) throw validation_error("omega index is 1-based");
  switch (rule_) {
    case Rule::constant_then_linear: {
      if (k <= ramp_start_) return level_;
      std::uint64_t v = level_ + (k - ramp_start_);
      return v > 0xffffffffULL ? 0xffffffffU : static_cast<std::uint32_t>(v);
    }
    case Rule::log_power: {
      double v = std::pow(std::log2(static_cast<double>(k) + 1.0), alpha_);
      double c = std::ceil(v);
      return c < 1.0 ? 1U : static_cast<std::uint32_t>(c);
    }
    case Rule::user_list:
      return k <= values_.size() ? values_[k - 1] : values_.back();
  }
  return 1;
}

std::vector<std::uint32_t> OmegaSchedule::prefix(std::size_t count) const {
  std::vector<std::uint32_t> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = value_at(k + 1);
  return out;
}

std::string OmegaSchedule::describe() const {
  switch (rule_) {
    case Rule::constant_then_linear:
      return "const_linear:" + std::to_string(level_) + "," + std::to_string(ramp_start_);
    case Rule::log_power: {
      std::ostringstream s;
      s << "logpow:" << alpha_;
      return s.str();
    }
    case Rule::user_list: {
      std::string s = "list:";
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(values_[i]);
      }
      return s;
    }
  }
  return "";
}

namespace {

// k^w, throwing when the power exceeds 64 bits.
std::uint64_t checked_pow(std::uint64_t k, std::uint32_t w) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < w; ++i)
    r = checked_mul(r, k, "k^omega_k");
  return r;
}

}  // namespace

GapSequence gen_random_aomega(const OmegaSchedule& omega, std::size_t count,
                              std::uint64_t seed) {
  if (count == 0) throw validation_error("count must be positive");
  GapSequence seq;
  seq.kind = SequenceKind::random_aomega;
  seq.draw_order = true;
  seq.terms.reserve(count);
  CounterRng rng(seed, /*stream=*/0x616f6d6567ULL);
  for (std::size_t k = 1; k <= count; ++k) {
    std::uint64_t bound;
    try {
      bound = checked_pow(k, omega.value_at(k));
    } catch (const capacity_error&) {
      throw capacity_error("gen_random_aomega: k^omega_k exceeds 64-bit capacity at k = " +
                           std::to_string(k));
    }
    seq.terms.push_back(rng.bounded_at(k, bound) + 1);
  }
  std::size_t dropped = 0;
  (void)seq.sorted_unique(&dropped);
  seq.meta["seed"] = std::to_string(seed);
  seq.meta["count"] = std::to_string(count);
  seq.meta["omega"] = omega.describe();
  seq.meta["draw_order"] = "true";
  seq.meta["duplicates_dropped"] = std::to_string(dropped);
  return seq;
}

GrowthReport analyze_growth(const GapSequence& seq, double divergence_threshold,
                            double tail_fraction) {
  validate_sequence(seq);
  if (seq.terms.size() < 2)
    throw validation_error("growth analysis needs at least 2 terms");
  if (seq.draw_order)
    throw validation_error("growth analysis needs an ordered sequence; "
                           "use sorted_unique() first");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
    throw validation_error("tail fraction must lie in (0, 1]");

  GrowthReport report;
  std::size_t nratios = seq.terms.size() - 1;
  report.min_ratio = Ratio::reduced(seq.terms[1], seq.terms[0]);
  for (std::size_t i = 1; i < nratios; ++i) {
    Ratio r = Ratio::reduced(seq.terms[i + 1], seq.terms[i]);
    if (r < report.min_ratio) report.min_ratio = r;
  }
  if (report.min_ratio > Ratio{1, 1}) report.hadamard_q = report.min_ratio;

  std::size_t tail_len = std::max<std::size_t>(1,
      static_cast<std::size_t>(static_cast<double>(nratios) * tail_fraction));
  std::size_t tail_begin = nratios - tail_len;
  Ratio tail_min = Ratio::reduced(seq.terms[tail_begin + 1], seq.terms[tail_begin]);
  for (std::size_t i = tail_begin + 1; i < nratios; ++i) {
    Ratio r = Ratio::reduced(seq.terms[i + 1], seq.terms[i]);
    if (r < tail_min) tail_min = r;
  }
  report.ratio_divergence = tail_min.value() > divergence_threshold;

  // Least a >= 0 with n_{k+1} - n_k >= n_k/(log n_k)^a for all applicable k.
  // Per index: a >= log(n_k/gap)/log(log n_k) when that ratio exceeds 1;
  // indices with n_k <= 2 have log log n_k <= 0 and are skipped.
  bool any = false;
  double alpha = 0.0;
  for (std::size_t i = 0; i + 1 < seq.terms.size(); ++i) {
    if (seq.terms[i] < 3) continue;
    any = true;
    double nk = static_cast<double>(seq.terms[i]);
    double gap = static_cast<double>(seq.terms[i + 1] - seq.terms[i]);
    double need = std::log(nk / gap) / std::log(std::log(nk));
    if (need > alpha) alpha = need;
  }
  if (any) report.tijdeman_alpha = alpha;
  return report;
}

void write_sequence_file(const std::filesystem::path& path, const GapSequence& seq) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot open " + path.string() + " for writing");
  out << "#kind=" << sequence_kind_name(seq.kind) << "\n";
  for (const auto& [key, value] : seq.meta)
    if (key != "kind") out << "#" << key << "=" << value << "\n";
  for (std::uint64_t t : seq.terms) out << t << "\n";
  if (!out) throw validation_error("failed writing " + path.string());
}

GapSequence read_sequence_file(const std::filesystem::path& path, bool allow_unordered) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open sequence file " + path.string());
  GapSequence seq;
  seq.kind = SequenceKind::user_file;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq != std::string::npos && eq > 1)
        seq.meta[line.substr(1, eq - 1)] = line.substr(eq + 1);
      continue;
    }
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
    seq.terms.push_back(value);
  }
  auto it = seq.meta.find("kind");
  if (it != seq.meta.end()) {
    for (SequenceKind k : {SequenceKind::geometric, SequenceKind::hlp,
                           SequenceKind::erdos_gap, SequenceKind::random_aomega,
                           SequenceKind::user_file})
      if (it->second == sequence_kind_name(k)) seq.kind = k;
  }
  if (allow_unordered || seq.meta.count("draw_order")) seq.draw_order = true;
  validate_sequence(seq);
  return seq;
}

}  // namespace lacunary
