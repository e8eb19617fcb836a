#include "lacunary/cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lacunary/artifacts.hpp"
#include "lacunary/common.hpp"
#include "lacunary/diophantine.hpp"
#include "lacunary/harmonic.hpp"
#include "lacunary/permutations.hpp"
#include "lacunary/sequences.hpp"
#include "lacunary/statistics.hpp"

namespace lacunary {

namespace {

using nlohmann::ordered_json;

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::vector<double> parse_doubles(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const std::string& item : split_csv(text)) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw validation_error(std::string(what) + ": not a number: '" + item + "'");
    }
  }
  return out;
}

std::vector<std::uint64_t> parse_u64s(const std::string& text, const char* what) {
  std::vector<std::uint64_t> out;
  for (const std::string& item : split_csv(text)) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoull(item, &pos));
      if (pos != item.size() || item[0] == '-') throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw validation_error(std::string(what) + ": not a nonnegative integer: '" +
                             item + "'");
    }
  }
  return out;
}

TrigPolynomial make_poly(const std::string& cos_list, const std::string& sin_list) {
  std::vector<double> cs, ss;
  if (!cos_list.empty()) cs = parse_doubles(cos_list, "--cos");
  if (!sin_list.empty()) ss = parse_doubles(sin_list, "--sin");
  return TrigPolynomial(std::move(cs), std::move(ss));
}

Permutation parse_perm(const std::string& spec) {
  if (spec.empty() || spec == "identity") return Permutation::identity();
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "interleave") {
    bool evens = false;
    auto second = rest.find(':');
    if (second != std::string::npos) {
      evens = rest.substr(second + 1) == "evens";
      if (!evens)
        throw validation_error("permutation spec '" + spec +
                               "': expected ':evens' or nothing after the length");
      rest = rest.substr(0, second);
    }
    auto len = parse_u64s(rest, "--perm interleave length");
    if (len.size() != 1) throw validation_error("interleave needs one block length");
    return Permutation::block_interleave(len[0], evens ? InterleaveSplit::evens_first
                                                       : InterleaveSplit::odds_first);
  }
  if (head == "window") {
    auto stride = parse_u64s(rest, "--perm window stride");
    if (stride.size() != 1) throw validation_error("window needs one stride");
    return Permutation::window_selector(stride[0]);
  }
  if (head == "table") {
    if (rest.empty()) throw validation_error("table permutation needs a file path");
    return load_table_permutation(rest);
  }
  throw validation_error("unknown permutation spec '" + spec +
                         "'; use identity, interleave:L[:evens], window:S, table:PATH");
}

// Omega schedule flags shared by gen --aomega and dioph --aomega.
struct OmegaFlags {
  std::uint32_t const_level{0};
  double logpow_alpha{0};
  std::string list;

  void attach(CLI::App* cmd) {
    cmd->add_option("--omega-const", const_level,
                    "constant omega level (ramps up linearly past 10^6)");
    cmd->add_option("--omega-logpow", logpow_alpha,
                    "omega_k = ceil((log2(k+1))^alpha)");
    cmd->add_option("--omega-list", list,
                    "explicit nondecreasing omega values, comma separated; "
                    "extends by the last value");
  }

  bool any() const { return const_level > 0 || logpow_alpha > 0 || !list.empty(); }

  OmegaSchedule build() const {
    int given = (const_level > 0) + (logpow_alpha > 0) + (!list.empty() ? 1 : 0);
    if (given != 1)
      throw validation_error("give exactly one of --omega-const, --omega-logpow, "
                             "--omega-list");
    if (const_level > 0) return OmegaSchedule::constant_then_linear(const_level);
    if (logpow_alpha > 0) return OmegaSchedule::log_power(logpow_alpha);
    auto values = parse_u64s(list, "--omega-list");
    std::vector<std::uint32_t> v32;
    for (std::uint64_t v : values) {
      if (v == 0 || v > 0xffffffffULL)
        throw validation_error("--omega-list values must be in 1..2^32-1");
      v32.push_back(static_cast<std::uint32_t>(v));
    }
    return OmegaSchedule::from_values(std::move(v32));
  }
};

void emit_json(const ordered_json& artifact, const std::string& out_path) {
  if (out_path.empty())
    std::cout << artifact.dump(2) << "\n";
  else
    write_json_file(out_path, artifact);
}

ordered_json with_payload(const std::string& kind, const ordered_json& config,
                          const ordered_json& payload) {
  ordered_json artifact = artifact_envelope(kind, config);
  for (const auto& [key, value] : payload.items()) artifact[key] = value;
  return artifact;
}

std::string csv_cells(const std::vector<LilCell>& cells) {
  std::string out = "source_id,N,value\n";
  for (const auto& cell : cells) {
    out += cell.source_id + "," + std::to_string(cell.N) + "," +
           format_double(cell.value) + "\n";
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Lacunary-sequence toolkit: generators, Diophantine certificates, "
               "exact dilation variances, and CLT/LIL/discrepancy experiments"};
  app.require_subcommand(1);
  int exit_status = 0;

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a sequence file");
  struct {
    std::uint64_t geometric{0};
    std::string hlp;
    double erdos{-1};
    bool aomega{false};
    OmegaFlags omega;
    std::uint64_t seed{0};
    std::uint64_t count{0};
    std::string out;
    std::string growth_out;
  } g;
  gen->add_option("--geometric", g.geometric, "n_k = BASE^k");
  gen->add_option("--hlp", g.hlp,
                  "products of the pairwise-coprime generators q1,q2,... (1 included)");
  gen->add_option("--erdos", g.erdos,
                  "greedy minimal growth n_{k+1} >= n_k (1 + k^-ALPHA), 0 <= ALPHA < 1/2");
  gen->add_flag("--aomega", g.aomega, "random model: n_k uniform in [1, k^omega_k]");
  g.omega.attach(gen);
  gen->add_option("--seed", g.seed, "random-model seed (default 0)");
  gen->add_option("--count", g.count, "number of terms")->required();
  gen->add_option("--out", g.out, "output sequence file")->required();
  gen->add_option("--growth", g.growth_out, "also write a growth-report artifact");
  gen->callback([&] {
    int sources = (g.geometric > 0) + (!g.hlp.empty()) + (g.erdos >= 0) + g.aomega;
    if (sources != 1)
      throw validation_error("give exactly one of --geometric, --hlp, --erdos, "
                             "--aomega");
    ordered_json config;
    GapSequence seq;
    if (g.geometric > 0) {
      config["source"] = "geometric";
      config["base"] = g.geometric;
      seq = gen_geometric(g.geometric, g.count);
    } else if (!g.hlp.empty()) {
      config["source"] = "hlp";
      config["generators"] = g.hlp;
      seq = gen_hlp(parse_u64s(g.hlp, "--hlp"), g.count);
    } else if (g.erdos >= 0) {
      config["source"] = "erdos";
      config["alpha"] = g.erdos;
      seq = gen_erdos_gap(g.erdos, g.count);
    } else {
      OmegaSchedule omega = g.omega.build();
      config["source"] = "aomega";
      config["omega"] = omega.describe();
      seq = gen_random_aomega(omega, g.count, g.seed);
    }
    config["count"] = g.count;
    config["seed"] = g.seed;
    seq.meta["tool_version"] = kToolVersion;
    seq.meta["experiment_id"] = experiment_id("sequence", config);
    write_sequence_file(g.out, seq);
    if (!g.growth_out.empty()) {
      GrowthReport report = analyze_growth(seq.draw_order ? seq.sorted_unique() : seq);
      ordered_json payload;
      payload["min_ratio"] = report.min_ratio.str();
      payload["min_ratio_value"] = report.min_ratio.value();
      if (report.hadamard_q)
        payload["hadamard_q"] = report.hadamard_q->value();
      payload["ratio_divergence"] = report.ratio_divergence;
      if (report.tijdeman_alpha) payload["tijdeman_alpha"] = *report.tijdeman_alpha;
      emit_json(with_payload("growth", config, payload), g.growth_out);
    }
  });

  // ---- dioph --------------------------------------------------------------
  auto* dioph = app.add_subcommand("dioph", "Certify a Diophantine condition");
  struct {
    std::string seq;
    std::string b2;
    int ap{0};
    bool aomega{false};
    OmegaFlags omega;
    std::size_t n_limit{0};
    std::int64_t coeff_bound{kDefaultCoeffCap};
    std::int64_t c_scan_bound{kDefaultCScanBound};
    std::int64_t rhs_bound{10};
    std::uint64_t budget{kDefaultBudget};
    std::size_t n_check{0};
    int p_cap{kDefaultPCap};
    std::int64_t coeff_cap{kDefaultCoeffCap};
    std::uint64_t seed{0};
    std::string out;
  } d;
  dioph->add_option("--seq", d.seq, "sequence file")->required();
  dioph->add_option("--b2", d.b2, "pair-count condition variant: plain|strong|weak|zero");
  dioph->add_option("--ap", d.ap, "p-term bounded-solution condition, p terms");
  dioph->add_flag("--aomega", d.aomega, "staged-cap vanishing-combination search");
  d.omega.attach(dioph);
  dioph->add_option("--N", d.n_limit, "index limit for --b2/--ap scans");
  dioph->add_option("--coeff-bound", d.coeff_bound, "max |a_i| for --b2/--ap");
  dioph->add_option("--c-scan-bound", d.c_scan_bound, "|c| window for the small-c maximum");
  dioph->add_option("--rhs-bound", d.rhs_bound, "max |rhs| for --ap");
  dioph->add_option("--budget", d.budget, "work budget for --ap");
  dioph->add_option("--n-check", d.n_check, "scale limit for --aomega");
  dioph->add_option("--p-cap", d.p_cap, "term cap for --aomega");
  dioph->add_option("--coeff-cap", d.coeff_cap, "coefficient cap for --aomega");
  dioph->add_option("--seed", d.seed, "recorded in the artifact config");
  dioph->add_option("--out", d.out, "certificate path (stdout when absent)");
  dioph->callback([&] {
    int modes = (!d.b2.empty()) + (d.ap > 0) + d.aomega;
    if (modes != 1)
      throw validation_error("give exactly one of --b2, --ap, --aomega");
    GapSequence seq = read_sequence_file(d.seq);
    ordered_json config;
    config["seq"] = d.seq;
    config["seed"] = d.seed;
    ConditionCertificate cert;
    if (!d.b2.empty()) {
      B2Variant variant;
      if (d.b2 == "plain") variant = B2Variant::plain;
      else if (d.b2 == "strong") variant = B2Variant::strong;
      else if (d.b2 == "weak") variant = B2Variant::weak;
      else if (d.b2 == "zero") variant = B2Variant::zero;
      else throw validation_error("unknown --b2 variant '" + d.b2 + "'");
      if (d.n_limit == 0) throw validation_error("--b2 needs --N");
      config["mode"] = "b2";
      config["variant"] = d.b2;
      config["N"] = d.n_limit;
      config["coeff_bound"] = d.coeff_bound;
      config["c_scan_bound"] = d.c_scan_bound;
      cert = certify_b2(seq, variant, d.n_limit, d.coeff_bound, d.c_scan_bound);
    } else if (d.ap > 0) {
      if (d.n_limit == 0) throw validation_error("--ap needs --N");
      config["mode"] = "ap";
      config["p"] = d.ap;
      config["N"] = d.n_limit;
      config["coeff_bound"] = d.coeff_bound;
      config["rhs_bound"] = d.rhs_bound;
      config["budget"] = d.budget;
      cert = certify_ap(seq, d.ap, d.coeff_bound, d.rhs_bound, d.n_limit, d.budget);
    } else {
      if (d.n_check == 0) throw validation_error("--aomega needs --n-check");
      OmegaSchedule omega = d.omega.build();
      config["mode"] = "aomega";
      config["omega"] = omega.describe();
      config["n_check"] = d.n_check;
      config["p_cap"] = d.p_cap;
      config["coeff_cap"] = d.coeff_cap;
      cert = certify_aomega(seq, omega, d.n_check, d.p_cap, d.coeff_cap);
    }
    emit_json(with_payload("certificate", config, certificate_to_json(cert)), d.out);
    if (cert.verdict == Verdict::inconclusive) exit_status = 3;
  });

  // ---- gamma --------------------------------------------------------------
  auto* gamma = app.add_subcommand("gamma", "Exact limiting variances");
  struct {
    bool kac{false}, empirical{false}, star{false}, d2{false};
    bool normalized{false};
    std::uint64_t base{0};
    std::uint64_t orbit_base{0};
    std::string seq;
    std::string perm{"identity"};
    std::size_t n{0};
    std::string ladder_list;
    std::string cos_list, sin_list;
    std::uint64_t seed{0};
    std::string out;
  } ga;
  gamma->add_flag("--kac", ga.kac, "||f||^2 + 2 sum_k int f(x) f(base^k x) dx");
  gamma->add_flag("--empirical", ga.empirical,
                  "N^-1 int (sum_{k<=N} f(n_{sigma(k)} x))^2 dx");
  gamma->add_flag("--star", ga.star, "truncated coprime-pair sum");
  gamma->add_flag("--d2", ga.d2, "unnormalized square integral d_N^2");
  gamma->add_flag("--normalized", ga.normalized, "divide the --star sum by N");
  gamma->add_option("--base", ga.base, "dilation base for --kac");
  gamma->add_option("--seq", ga.seq, "sequence file for --empirical/--star/--d2");
  gamma->add_option("--orbit-base", ga.orbit_base,
                    "use n_k = BASE^k in exponent arithmetic instead of --seq "
                    "(--empirical/--d2; any N)");
  gamma->add_option("--perm", ga.perm, "identity|interleave:L[:evens]|window:S|table:PATH");
  gamma->add_option("--N", ga.n, "prefix length");
  gamma->add_option("--ladder", ga.ladder_list,
                    "extra prefix lengths N1,N2,... to trace convergence");
  gamma->add_option("--cos", ga.cos_list, "cosine coefficients a1,a2,...");
  gamma->add_option("--sin", ga.sin_list, "sine coefficients b1,b2,...");
  gamma->add_option("--seed", ga.seed, "recorded in the artifact config");
  gamma->add_option("--out", ga.out, "artifact path (stdout when absent)");
  gamma->callback([&] {
    int modes = ga.kac + ga.empirical + ga.star + ga.d2;
    if (modes != 1)
      throw validation_error("give exactly one of --kac, --empirical, --star, --d2");
    TrigPolynomial f = make_poly(ga.cos_list, ga.sin_list);
    ordered_json config;
    config["cos"] = ga.cos_list;
    config["sin"] = ga.sin_list;
    config["seed"] = ga.seed;
    ordered_json payload;
    if (ga.kac) {
      if (ga.base < 2) throw validation_error("--kac needs --base >= 2");
      if (!ga.ladder_list.empty() || ga.orbit_base != 0)
        throw validation_error("--kac takes neither --ladder nor --orbit-base");
      config["mode"] = "kac";
      config["base"] = ga.base;
      payload = gamma_to_json(gamma_kac(f, ga.base));
    } else {
      bool orbit = ga.orbit_base != 0;
      if (orbit && ga.orbit_base < 2) throw validation_error("--orbit-base must be >= 2");
      if (orbit && !ga.seq.empty())
        throw validation_error("give --seq or --orbit-base, not both");
      if (orbit && ga.star) throw validation_error("--star needs --seq");
      if (!orbit && ga.seq.empty())
        throw validation_error("--empirical/--star/--d2 need --seq or --orbit-base");
      if (ga.n == 0) throw validation_error("--empirical/--star/--d2 need --N");
      std::optional<GapSequence> seq;
      if (!orbit) {
        seq = read_sequence_file(ga.seq);
        config["seq"] = ga.seq;
      } else {
        config["orbit_base"] = ga.orbit_base;
      }
      config["N"] = ga.n;
      Permutation sigma = parse_perm(ga.perm);
      auto eval = [&](std::size_t n) -> GammaReport {
        if (ga.empirical)
          return orbit ? gamma_empirical_geometric(f, ga.orbit_base, sigma, n)
                       : gamma_empirical(f, *seq, sigma, n);
        if (ga.star) return gamma_star_truncated(f, *seq, n, ga.normalized);
        GammaReport report;
        report.kind = GammaKind::d_squared;
        report.from_square_integral = true;
        if (!orbit) {
          report.value = d_squared(f, *seq, sigma, n);
        } else if (sigma.describe() == "identity") {
          report.value = d_squared_geometric(f, ga.orbit_base, n);
        } else {
          report.value = gamma_empirical_geometric(f, ga.orbit_base, sigma, n).value *
                         static_cast<double>(n);
        }
        report.params["N"] = std::to_string(n);
        return report;
      };
      GammaReport report = eval(ga.n);
      if (ga.empirical || ga.d2) config["perm"] = ga.perm;
      if (ga.star) config["normalized"] = ga.normalized;
      config["mode"] = ga.empirical ? "empirical" : (ga.star ? "star" : "d2");
      if (!ga.ladder_list.empty()) {
        config["ladder"] = ga.ladder_list;
        std::vector<std::uint64_t> ns = parse_u64s(ga.ladder_list, "--ladder");
        for (std::size_t i = 0; i + 1 < ns.size(); ++i)
          if (ns[i] >= ns[i + 1])
            throw validation_error("--ladder lengths must be strictly increasing");
        double gap = 0.0;
        double prev = 0.0;
        for (std::size_t i = 0; i < ns.size(); ++i) {
          if (ns[i] == 0) throw validation_error("--ladder lengths must be positive");
          double v = eval(static_cast<std::size_t>(ns[i])).value;
          report.ladder.emplace_back(ns[i], v);
          if (i > 0) gap = std::max(gap, std::abs(v - prev));
          prev = v;
        }
        report.params["cauchy_gap_max"] = format_double(gap);
      }
      payload = gamma_to_json(report);
    }
    emit_json(with_payload("gamma", config, payload), ga.out);
  });

  // ---- clt ----------------------------------------------------------------
  auto* clt = app.add_subcommand(
      "clt", "KS distance of normalized partial sums to the standard normal");
  struct {
    std::string seq;
    std::uint64_t orbit_base{0};
    std::string perm{"identity"};
    std::size_t n{0};
    std::size_t samples{0};
    std::string plan{"random"};
    std::uint64_t seed{0};
    std::string cos_list, sin_list;
    std::string out, csv;
  } c;
  clt->add_option("--seq", c.seq, "sequence file");
  clt->add_option("--orbit-base", c.orbit_base,
                  "n_k = BASE^k via exact fractional-part streams (any N)");
  clt->add_option("--perm", c.perm, "permutation for --seq sources");
  clt->add_option("--N", c.n, "prefix length")->required();
  clt->add_option("--samples", c.samples, "number of x samples")->required();
  clt->add_option("--plan", c.plan, "random|grid x sampling (default random)");
  clt->add_option("--seed", c.seed, "sampling seed (default 0)");
  clt->add_option("--cos", c.cos_list, "cosine coefficients");
  clt->add_option("--sin", c.sin_list, "sine coefficients");
  clt->add_option("--out", c.out, "artifact path (stdout when absent)");
  clt->add_option("--csv", c.csv, "also write normalized samples as CSV");
  clt->callback([&] {
    if ((c.seq.empty()) == (c.orbit_base == 0))
      throw validation_error("give exactly one of --seq, --orbit-base");
    TrigPolynomial f = make_poly(c.cos_list, c.sin_list);
    SamplePlan plan = c.plan == "grid" ? SamplePlan::grid(c.samples)
                      : c.plan == "random"
                          ? SamplePlan::uniform_random(c.samples, c.seed)
                          : throw validation_error("--plan must be random or grid");
    ordered_json config;
    config["cos"] = c.cos_list;
    config["sin"] = c.sin_list;
    config["N"] = c.n;
    config["plan"] = plan.describe();
    config["seed"] = c.seed;
    std::vector<double> sums;
    double variance = 0.0;
    if (!c.seq.empty()) {
      GapSequence seq = read_sequence_file(c.seq);
      Permutation sigma = parse_perm(c.perm);
      config["seq"] = c.seq;
      config["perm"] = c.perm;
      sums = partial_sum_samples(f, seq, sigma, c.n, plan);
      variance = d_squared(f, seq, sigma, c.n);
    } else {
      config["orbit_base"] = c.orbit_base;
      sums = geometric_partial_sums(f, c.orbit_base, c.n, plan);
      variance = d_squared_geometric(f, c.orbit_base, c.n);
    }
    double ks = ks_to_gaussian(sums, variance);
    ordered_json payload;
    payload["ks"] = ks;
    payload["variance"] = variance;
    payload["samples"] = sums.size();
    emit_json(with_payload("clt", config, payload), c.out);
    if (!c.csv.empty()) {
      std::vector<LilCell> cells;
      double scale = std::sqrt(variance);
      for (std::size_t i = 0; i < sums.size(); ++i)
        cells.push_back({"x:" + std::to_string(i + 1),
                         static_cast<std::uint64_t>(c.n), sums[i] / scale});
      write_text_file(c.csv, csv_cells(cells));
    }
  });

  // ---- lil ----------------------------------------------------------------
  auto* lil = app.add_subcommand(
      "lil", "Normalized running-max traces over an N ladder");
  struct {
    std::string stat{"disc"};
    std::string seq;
    std::uint64_t orbit_base{0};
    std::string perm{"identity"};
    std::string grid;
    std::size_t samples{20};
    std::uint64_t seed{0};
    std::string cos_list, sin_list;
    std::string out, csv;
  } l;
  lil->add_option("--stat", l.stat, "disc|sum (default disc)");
  lil->add_option("--seq", l.seq, "sequence file");
  lil->add_option("--orbit-base", l.orbit_base,
                  "n_k = BASE^k via exact fractional-part streams (disc only)");
  lil->add_option("--perm", l.perm, "permutation for --seq sources");
  lil->add_option("--grid", l.grid, "N ladder, comma separated (default built-in)");
  lil->add_option("--samples", l.samples, "number of x draws (default 20)");
  lil->add_option("--seed", l.seed, "sampling seed (default 0)");
  lil->add_option("--cos", l.cos_list, "cosine coefficients (for --stat sum)");
  lil->add_option("--sin", l.sin_list, "sine coefficients (for --stat sum)");
  lil->add_option("--out", l.out, "artifact path (stdout when absent)");
  lil->add_option("--csv", l.csv, "also write the trace cells as CSV");
  lil->callback([&] {
    if ((l.seq.empty()) == (l.orbit_base == 0))
      throw validation_error("give exactly one of --seq, --orbit-base");
    std::vector<std::uint64_t> n_grid =
        l.grid.empty() ? default_lil_ladder() : parse_u64s(l.grid, "--grid");
    ordered_json config;
    config["stat"] = l.stat;
    config["grid"] = n_grid;
    config["samples"] = l.samples;
    config["seed"] = l.seed;
    LilTrace trace;
    if (l.orbit_base > 0) {
      if (l.stat != "disc")
        throw validation_error("--orbit-base supports only --stat disc");
      config["orbit_base"] = l.orbit_base;
      trace = geometric_discrepancy_lil(l.orbit_base, l.seed, l.samples, n_grid);
    } else {
      GapSequence seq = read_sequence_file(l.seq);
      Permutation sigma = parse_perm(l.perm);
      config["seq"] = l.seq;
      config["perm"] = l.perm;
      SamplePlan plan = SamplePlan::uniform_random(l.samples, l.seed);
      if (l.stat == "disc") {
        trace = lil_trace(LilStatistic::discrepancy_lil, std::nullopt, seq, sigma,
                          plan, n_grid);
      } else if (l.stat == "sum") {
        config["cos"] = l.cos_list;
        config["sin"] = l.sin_list;
        trace = lil_trace(LilStatistic::sum_lil, make_poly(l.cos_list, l.sin_list),
                          seq, sigma, plan, n_grid);
      } else {
        throw validation_error("--stat must be disc or sum");
      }
    }
    emit_json(with_payload("lil_trace", config, trace_to_json(trace)), l.out);
    if (!l.csv.empty()) write_text_file(l.csv, trace_to_csv(trace));
  });

  // ---- disc ---------------------------------------------------------------
  auto* disc = app.add_subcommand("disc", "Exact star/extreme discrepancy");
  struct {
    std::string points;
    std::string seq;
    std::string perm{"identity"};
    double x{-1};
    std::size_t n{0};
    std::uint64_t seed{0};
    std::string out;
  } di;
  disc->add_option("--points", di.points, "file of points in [0,1), one per line");
  disc->add_option("--seq", di.seq, "sequence file (with --x and --N)");
  disc->add_option("--perm", di.perm, "permutation for --seq sources");
  disc->add_option("--x", di.x, "evaluation point for frac(n_{sigma(k)} x)");
  disc->add_option("--N", di.n, "prefix length for --seq sources");
  disc->add_option("--seed", di.seed, "recorded in the artifact config");
  disc->add_option("--out", di.out, "artifact path (stdout when absent)");
  disc->callback([&] {
    if ((di.points.empty()) == (di.seq.empty()))
      throw validation_error("give exactly one of --points, --seq");
    ordered_json config;
    config["seed"] = di.seed;
    std::vector<double> pts;
    if (!di.points.empty()) {
      config["points"] = di.points;
      std::ifstream in(di.points);
      if (!in) throw validation_error("cannot open points file " + di.points);
      double v;
      while (in >> v) pts.push_back(v);
    } else {
      if (di.x < 0 || di.n == 0)
        throw validation_error("--seq needs --x and --N");
      config["seq"] = di.seq;
      config["perm"] = di.perm;
      config["x"] = di.x;
      config["N"] = di.n;
      pts = fractional_parts(read_sequence_file(di.seq), parse_perm(di.perm), di.x,
                             di.n);
    }
    DiscrepancyValue value = discrepancy(pts);
    ordered_json payload;
    payload["n"] = pts.size();
    payload["star"] = value.star;
    payload["extreme"] = value.extreme;
    emit_json(with_payload("discrepancy", config, payload), di.out);
  });

  // ---- baseline -----------------------------------------------------------
  auto* baseline = app.add_subcommand(
      "baseline", "Seeded i.i.d. uniform discrepancy traces over the N ladder");
  struct {
    std::size_t seeds{20};
    std::uint64_t seed{0};
    std::string grid;
    std::string out, csv;
  } b;
  baseline->add_option("--seeds", b.seeds, "number of seeds (default 20)");
  baseline->add_option("--seed", b.seed, "first seed (default 0)");
  baseline->add_option("--grid", b.grid, "N ladder, comma separated (default built-in)");
  baseline->add_option("--out", b.out, "artifact path (stdout when absent)");
  baseline->add_option("--csv", b.csv, "also write the trace cells as CSV");
  baseline->callback([&] {
    std::vector<std::uint64_t> n_grid =
        b.grid.empty() ? default_lil_ladder() : parse_u64s(b.grid, "--grid");
    ordered_json config;
    config["seeds"] = b.seeds;
    config["seed"] = b.seed;
    config["grid"] = n_grid;
    LilTrace trace = iid_baseline(b.seed, b.seeds, n_grid);
    emit_json(with_payload("baseline", config, trace_to_json(trace)), b.out);
    if (!b.csv.empty()) write_text_file(b.csv, trace_to_csv(trace));
  });

  // ---- report -------------------------------------------------------------
  auto* report = app.add_subcommand("report", "Collate artifacts into one summary");
  struct {
    std::vector<std::string> inputs;
    std::string out, md;
  } r;
  report->add_option("inputs", r.inputs, "artifact JSON files")->required();
  report->add_option("--out", r.out, "summary JSON path");
  report->add_option("--md", r.md, "summary markdown path");
  report->callback([&] {
    std::vector<std::filesystem::path> paths(r.inputs.begin(), r.inputs.end());
    ordered_json summary = collate_report(paths);
    if (r.out.empty() && r.md.empty())
      std::cout << report_to_markdown(summary);
    if (!r.out.empty()) write_json_file(r.out, summary);
    if (!r.md.empty()) write_text_file(r.md, report_to_markdown(summary));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    ordered_json err{{"error_class", "usage"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const validation_error& e) {
    ordered_json err{{"error_class", "validation"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const capacity_error& e) {
    ordered_json err{{"error_class", "capacity"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 3;
  } catch (const budget_error& e) {
    ordered_json err{{"error_class", "budget"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 3;
  }
  return exit_status;
}

}  // namespace lacunary
