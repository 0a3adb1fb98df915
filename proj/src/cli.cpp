#include "coprimality/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>

#include "coprimality/acceptance.hpp"
#include "coprimality/counting.hpp"
#include "coprimality/crt.hpp"
#include "coprimality/error.hpp"
#include "coprimality/expression_parser.hpp"
#include "coprimality/measure.hpp"
#include "coprimality/report.hpp"
#include "coprimality/residue.hpp"

namespace coprimality::cli {

namespace {

constexpr std::uint64_t kDefaultPrimeLimit = 1'000'000;
constexpr std::uint64_t kDefaultSeed = kAcceptanceSeed;

struct GlobalOptions {
  std::string format = "json";
  std::uint64_t mobius_limit = 0;  // 0: sized to the request
  std::uint64_t prime_limit = kDefaultPrimeLimit;
  std::uint64_t brute_cap = kDefaultBruteCap;
  std::uint64_t seed = kDefaultSeed;
};

// What a subcommand produces: the JSON result plus, where it has a natural
// tabular form, CSV rows.
struct Output {
  Json result;
  std::optional<CsvRows> csv;
};

// The fully resolved configuration echoed with every report.
struct RunConfig {
  std::string command;
  GlobalOptions global;
  std::uint64_t resolved_mobius_limit = 0;
  Json params = Json::object();

  Json to_json() const {
    Json out;
    out["format"] = global.format;
    out["mobius_limit"] = str(resolved_mobius_limit);
    out["prime_limit"] = str(global.prime_limit);
    out["brute_cap"] = str(global.brute_cap);
    out["seed"] = str(global.seed);
    out["params"] = params;
    return out;
  }
};

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw CLI::ValidationError(what, "expected a nonnegative integer, got '" + text + "'");
  }
  return value;
}

std::pair<std::uint64_t, std::uint64_t> split_pair(const std::string& text, char sep,
                                                   const std::string& what) {
  auto at = text.find(sep);
  if (at == std::string::npos) {
    throw CLI::ValidationError(what, "expected two integers separated by '" + std::string(1, sep) +
                                         "', got '" + text + "'");
  }
  return {parse_u64(text.substr(0, at), what), parse_u64(text.substr(at + 1), what)};
}

Json strings(const std::vector<std::uint64_t>& values) {
  Json out = Json::array();
  for (std::uint64_t v : values) out.push_back(str(v));
  return out;
}

Json pair_json(std::uint64_t a, std::uint64_t b) { return Json::array({str(a), str(b)}); }

// Rows "key,value" for results without a dedicated table.
CsvRows flat_rows(const Json& result) {
  CsvRows rows{{"key", "value"}};
  std::string plain = render_plain(result);
  std::size_t start = 0;
  while (start < plain.size()) {
    std::size_t end = plain.find('\n', start);
    std::string line = plain.substr(start, end - start);
    start = end + 1;
    auto colon = line.find(':');
    std::string value = colon + 1 < line.size() ? line.substr(colon + 2) : "";
    rows.push_back({line.substr(0, colon), value});
  }
  return rows;
}

std::string render(const RunConfig& config, const Output& output) {
  if (config.global.format == "csv") {
    std::string out = "# command=" + config.command + "\n";
    Json cfg = config.to_json();
    cfg.erase("params");
    for (const auto& [key, value] : cfg.items()) {
      out += "# " + key + "=" + value.get<std::string>() + "\n";
    }
    for (const auto& [key, value] : config.params.items()) {
      out += "# param." + key + "=" + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
    }
    return out + render_csv(output.csv ? *output.csv : flat_rows(output.result));
  }
  if (config.global.format == "plain") {
    Json wrapped;
    wrapped["command"] = config.command;
    wrapped["config"] = config.to_json();
    wrapped["result"] = output.result;
    return render_plain(wrapped);
  }
  Json wrapped;
  wrapped["command"] = config.command;
  wrapped["config"] = config.to_json();
  wrapped["result"] = output.result;
  return wrapped.dump(2) + "\n";
}

std::string render_error(const RunConfig& config, std::string_view kind, const std::string& message) {
  Json wrapped;
  wrapped["command"] = config.command;
  wrapped["config"] = config.to_json();
  wrapped["error"] = {{"kind", kind}, {"message", message}};
  return wrapped.dump(2) + "\n";
}

class Runner {
 public:
  explicit Runner(RunConfig& config) : config_(config) {}

  const PrimeTable& primes() {
    if (!primes_) primes_.emplace(config_.global.prime_limit);
    return *primes_;
  }

  // Mobius table of the configured size, or sized to `needed` when unset.
  MobiusTable mobius(std::uint64_t needed) {
    std::uint64_t limit = config_.global.mobius_limit ? config_.global.mobius_limit : needed;
    config_.resolved_mobius_limit = std::max<std::uint64_t>(limit, 1);
    return MobiusTable(config_.resolved_mobius_limit);
  }

 private:
  RunConfig& config_;
  std::optional<PrimeTable> primes_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact coprimality densities, residue-class bounds, CRT witnesses and "
               "cylinder-set measures.",
               "coprimality"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  GlobalOptions global;
  app.add_option("--format", global.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}))
      ->capture_default_str();
  app.add_option("--mobius-limit", global.mobius_limit,
                 "Mobius table size (default: sized to the request)");
  app.add_option("--prime-limit", global.prime_limit, "Prime table limit")
      ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 32))
      ->capture_default_str();
  app.add_option("--brute-cap", global.brute_cap, "Maximum brute-force pair evaluations")
      ->capture_default_str();
  app.add_option("--seed", global.seed, "Seed for randomized operations")->capture_default_str();

  RunConfig config;
  Runner runner(config);
  std::function<Output()> action;

  // Positive-integer option on a subcommand.
  auto positive = [](CLI::App* sub, const std::string& name, std::uint64_t& target,
                     const std::string& help) {
    return sub->add_option(name, target, help)->check(CLI::PositiveNumber);
  };

  // primes
  std::uint64_t primes_limit = 0;
  auto* primes_cmd = app.add_subcommand("primes", "List all primes up to a limit");
  positive(primes_cmd, "--limit", primes_limit, "Upper limit")->required();
  primes_cmd->callback([&] {
    config.params = {{"limit", str(primes_limit)}};
    action = [&] {
      const PrimeTable table = build_prime_table(primes_limit);
      Output o;
      o.result["limit"] = str(primes_limit);
      o.result["count"] = str(table.size());
      o.result["primes"] = strings({table.primes().begin(), table.primes().end()});
      CsvRows rows{{"rank", "prime"}};
      for (std::size_t i = 0; i < table.size(); ++i) rows.push_back({str(i + 1), str(table.primes()[i])});
      o.csv = rows;
      return o;
    };
  });

  // mobius
  std::uint64_t mobius_n = 0;
  auto* mobius_cmd = app.add_subcommand("mobius", "Mobius function values mu(1..n)");
  positive(mobius_cmd, "--n", mobius_n, "Largest argument")->required();
  mobius_cmd->callback([&] {
    config.params = {{"n", str(mobius_n)}};
    action = [&] {
      const MobiusTable table = runner.mobius(mobius_n);
      Output o;
      o.result["n"] = str(mobius_n);
      Json values = Json::array();
      CsvRows rows{{"k", "mu"}};
      for (std::uint64_t k = 1; k <= mobius_n; ++k) {
        values.push_back(std::to_string(table.at(k)));
        rows.push_back({str(k), std::to_string(table.at(k))});
      }
      o.result["values"] = values;
      o.csv = rows;
      return o;
    };
  });

  // count
  std::uint64_t count_n1 = 0, count_n2 = 0;
  std::string count_method = "mobius";
  auto* count_cmd = app.add_subcommand("count", "Exact number of coprime pairs in [n1] x [n2]");
  positive(count_cmd, "--n1", count_n1, "First side")->required();
  positive(count_cmd, "--n2", count_n2, "Second side")->required();
  count_cmd->add_option("--method", count_method, "Counting method")
      ->check(CLI::IsMember({"mobius", "brute", "both"}))
      ->capture_default_str();
  count_cmd->callback([&] {
    config.params = {{"n1", str(count_n1)}, {"n2", str(count_n2)}, {"method", count_method}};
    action = [&] {
      Output o;
      o.result["n1"] = str(count_n1);
      o.result["n2"] = str(count_n2);
      std::optional<std::uint64_t> by_mobius, by_brute;
      if (count_method != "brute") {
        by_mobius = count_coprime_mobius(count_n1, count_n2, runner.mobius(std::min(count_n1, count_n2)));
        o.result["mobius_count"] = str(*by_mobius);
      }
      if (count_method != "mobius") {
        by_brute = count_coprime_brute(count_n1, count_n2, config.global.brute_cap);
        o.result["brute_count"] = str(*by_brute);
      }
      if (by_mobius && by_brute) o.result["agree"] = *by_mobius == *by_brute;
      return o;
    };
  });

  // density
  std::uint64_t density_n = 0, density_n1 = 0, density_n2 = 0;
  auto* density_cmd = app.add_subcommand("density", "Density report for [n1] x [n2]");
  auto* n_opt = positive(density_cmd, "--n", density_n, "Square side (n1 = n2 = n)");
  auto* n1_opt = positive(density_cmd, "--n1", density_n1, "First side");
  auto* n2_opt = positive(density_cmd, "--n2", density_n2, "Second side");
  n_opt->excludes(n1_opt)->excludes(n2_opt);
  n1_opt->needs(n2_opt);
  n2_opt->needs(n1_opt);
  density_cmd->callback([&] {
    if (density_n) density_n1 = density_n2 = density_n;
    if (!density_n1) throw CLI::RequiredError("--n or --n1/--n2");
    config.params = {{"n1", str(density_n1)}, {"n2", str(density_n2)}};
    action = [&] {
      const DensityReport report =
          density(density_n1, density_n2, runner.mobius(std::min(density_n1, density_n2)));
      return Output{to_json(report), to_csv(std::vector<DensityReport>{report})};
    };
  });

  // density-table
  std::vector<std::uint64_t> table_sides;
  auto* table_cmd = app.add_subcommand("density-table", "Density reports for squares [n] x [n]");
  table_cmd->add_option("--n", table_sides, "Side length (repeatable)")
      ->required()
      ->check(CLI::PositiveNumber);
  table_cmd->callback([&] {
    config.params = {{"n", strings(table_sides)}};
    action = [&] {
      const auto reports =
          density_table(table_sides, runner.mobius(*std::max_element(table_sides.begin(), table_sides.end())));
      Output o;
      o.result = Json::array();
      for (const auto& r : reports) o.result.push_back(to_json(r));
      o.csv = to_csv(reports);
      return o;
    };
  });

  // rect
  std::uint64_t rect_j1 = 0, rect_k1 = 0, rect_j2 = 0, rect_k2 = 0, rect_cap = 8;
  bool rect_construct = false;
  auto* rect_cmd = app.add_subcommand("rect", "Does a product residue class contain a coprime pair?");
  rect_cmd->add_option("--j1", rect_j1, "First residue")->required();
  positive(rect_cmd, "--k1", rect_k1, "First modulus")->required();
  rect_cmd->add_option("--j2", rect_j2, "Second residue")->required();
  positive(rect_cmd, "--k2", rect_k2, "Second modulus")->required();
  positive(rect_cmd, "--search-cap", rect_cap, "Search bound multiplier")->capture_default_str();
  rect_cmd->add_flag("--construct", rect_construct, "Build a witness pair constructively");
  rect_cmd->callback([&] {
    config.params = {{"j1", str(rect_j1)}, {"k1", str(rect_k1)}, {"j2", str(rect_j2)},
                     {"k2", str(rect_k2)}, {"search_cap", str(rect_cap)},
                     {"construct", rect_construct}};
    action = [&] {
      const ResidueRect rect(rect_j1, rect_k1, rect_j2, rect_k2);
      Output o;
      o.result["j1"] = str(rect.j1());
      o.result["k1"] = str(rect.k1());
      o.result["j2"] = str(rect.j2());
      o.result["k2"] = str(rect.k2());
      const bool nonempty = rect_nonempty_criterion(rect);
      o.result["criterion"] = nonempty;
      const auto found = rect_coprime_search(rect, rect_cap);
      o.result["search"] = found ? pair_json(found->first, found->second) : Json(nullptr);
      if (rect_construct && nonempty) o.result["construction"] = to_json(construct_coprime_in_rect(rect, runner.primes()));
      if (rect_construct && !nonempty) {
        throw Error(ErrorKind::kPreconditionViolation,
                    "gcd(j1, j2, k1, k2) != 1: nothing to construct");
      }
      return o;
    };
  });

  // r-count
  std::uint64_t rc_t1 = 0, rc_t2 = 0;
  auto* rc_cmd = app.add_subcommand("r-count", "Residue pairs modulo (t1, t2) meeting the coprime pairs");
  positive(rc_cmd, "--t1", rc_t1, "First modulus")->required();
  positive(rc_cmd, "--t2", rc_t2, "Second modulus")->required();
  rc_cmd->callback([&] {
    config.params = {{"t1", str(rc_t1)}, {"t2", str(rc_t2)}};
    action = [&] {
      const ResidueBoundReport report = r_count(rc_t1, rc_t2, runner.primes());
      return Output{to_json(report), to_csv(report)};
    };
  });

  // residue-bound
  std::uint64_t rb_primes = 0;
  auto* rb_cmd = app.add_subcommand("residue-bound", "prod_{i<=K} (1 - p_i^-2) at primorial moduli");
  positive(rb_cmd, "--primes", rb_primes, "Number of primes K")->required();
  rb_cmd->callback([&] {
    config.params = {{"primes", str(rb_primes)}};
    action = [&] {
      const Rational bound = residue_upper_bound(rb_primes, runner.primes());
      Output o;
      o.result["prime_count"] = str(rb_primes);
      o.result["largest_prime"] = str(runner.primes().prime(rb_primes));
      put_rational(o.result, "bound", bound);
      o.result["limit_reference"] = std::string(kSixOverPiSquared);
      return o;
    };
  });

  // crt
  std::vector<std::string> crt_terms;
  auto* crt_cmd = app.add_subcommand("crt", "Solve simultaneous congruences");
  crt_cmd->add_option("--congruence", crt_terms, "Constraint r:m (repeatable)")->required();
  crt_cmd->callback([&] {
    CongruenceSystem system;
    Json terms = Json::array();
    for (const auto& t : crt_terms) {
      auto [r, m] = split_pair(t, ':', "--congruence");
      if (m == 0 || r >= m) {
        throw CLI::ValidationError("--congruence", "need 0 <= r < m, got '" + t + "'");
      }
      system.add(r, m);
      terms.push_back(t);
    }
    config.params = {{"congruence", terms}};
    action = [&, system] {
      const std::uint64_t x = crt_solve(system);
      Output o;
      Json constraints = Json::array();
      BigInt product = 1;
      for (const Congruence& c : system.constraints()) {
        constraints.push_back({{"residue", str(c.residue)}, {"modulus", str(c.modulus)}});
        product *= to_big(c.modulus);
      }
      o.result["constraints"] = constraints;
      o.result["solution"] = str(x);
      o.result["modulus"] = product.get_str();
      return o;
    };
  });

  // shift-witness
  std::vector<std::string> shift_terms;
  auto* shift_cmd = app.add_subcommand("shift-witness",
                                       "Point avoiding the coprime pairs under every shift in A");
  shift_cmd->add_option("--pair", shift_terms, "Shift a,b (repeatable)")->required();
  shift_cmd->callback([&] {
    std::vector<ShiftPair> shifts;
    for (const auto& t : shift_terms) shifts.push_back(split_pair(t, ',', "--pair"));
    config.params = {{"pair", shift_terms}};
    action = [&, shifts] {
      const ShiftWitnessReport report = shift_witness(shifts, runner.primes());
      return Output{to_json(report), to_csv(report)};
    };
  });

  // measure
  std::string measure_expr;
  auto* measure_cmd = app.add_subcommand("measure", "Exact measure of a finite union of cylinder sets");
  measure_cmd->add_option("--expr", measure_expr, "Expression, e.g. \"A{2|;3\xE2\x88\xA4} U A{5|}\"")->required();
  measure_cmd->callback([&] {
    config.params = {{"expr", measure_expr}};
    action = [&] {
      const SetExpression e = parse_set_expression(measure_expr, runner.primes());
      const SetExpression cells = normalize(e);
      Output o;
      o.result["expression"] = format_set_expression(e, runner.primes());
      Json terms = Json::array();
      for (const CylinderSet& c : cells.terms) terms.push_back(to_json(c, runner.primes()));
      o.result["cells"] = terms;
      put_rational(o.result, "measure", measure(e, runner.primes()));
      return o;
    };
  });

  // euler-product
  std::uint64_t ep_primes = 0;
  auto* ep_cmd = app.add_subcommand("euler-product", "Truncated Euler product prod_{i<=K} (1 - p_i^-2)");
  positive(ep_cmd, "--primes", ep_primes, "Number of primes K")->required();
  ep_cmd->callback([&] {
    config.params = {{"primes", str(ep_primes)}};
    action = [&] {
      const Rational product = euler_product(ep_primes, runner.primes());
      Output o;
      o.result["prime_count"] = str(ep_primes);
      o.result["largest_prime"] = str(runner.primes().prime(ep_primes));
      put_rational(o.result, "product", product);
      put_rational(o.result, "tail_bound", euler_tail_bound(ep_primes, runner.primes()));
      o.result["limit_reference"] = std::string(kSixOverPiSquared);
      return o;
    };
  });

  // sample
  std::uint64_t sample_primes = 0, sample_count = 0;
  auto* sample_cmd = app.add_subcommand("sample", "Seeded Monte Carlo estimate of the coprime probability");
  positive(sample_cmd, "--primes", sample_primes, "Number of primes K")->required();
  positive(sample_cmd, "--samples", sample_count, "Number of samples")->required();
  sample_cmd->callback([&] {
    config.params = {{"primes", str(sample_primes)}, {"samples", str(sample_count)}};
    action = [&] {
      const SampleEstimate mc =
          sample_coprime_estimate(sample_primes, sample_count, config.global.seed, runner.primes());
      char estimate[64], se[64];
      std::snprintf(estimate, sizeof estimate, "%.17g", mc.estimate);
      std::snprintf(se, sizeof se, "%.17g", mc.standard_error);
      Output o;
      o.result["generator"] = "mt19937_64";
      o.result["seed"] = str(config.global.seed);
      o.result["prime_count"] = str(sample_primes);
      o.result["samples"] = str(mc.samples);
      o.result["coprime_hits"] = str(mc.coprime_hits);
      o.result["estimate"] = estimate;
      o.result["standard_error"] = se;
      put_rational(o.result, "exact_product", euler_product(sample_primes, runner.primes()));
      return o;
    };
  });

  // reproduce
  bool reproduce_failed = false;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "Run every acceptance check and print the comparison table");
  reproduce_cmd->callback([&] {
    action = [&] {
      const auto results = run_acceptance(config.global.seed);
      Output o;
      o.result = Json::array();
      CsvRows rows{{"id", "name", "passed", "expected", "observed", "seconds"}};
      for (const auto& r : results) {
        char seconds[32];
        std::snprintf(seconds, sizeof seconds, "%.3f", r.seconds);
        o.result.push_back({{"id", std::to_string(r.id)},
                            {"name", r.name},
                            {"passed", r.passed},
                            {"expected", r.expected},
                            {"observed", r.observed},
                            {"seconds", seconds}});
        rows.push_back({std::to_string(r.id), r.name, r.passed ? "true" : "false", r.expected,
                        r.observed, seconds});
        reproduce_failed = reproduce_failed || !r.passed;
      }
      o.csv = rows;
      return o;
    };
  });

  std::vector<const char*> argv{"coprimality"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  config.global = global;
  config.resolved_mobius_limit = global.mobius_limit;
  config.command = app.get_subcommands().front()->get_name();
  try {
    const std::string text = render(config, action());
    out << text;
  } catch (const Error& e) {
    out << render_error(config, error_kind_name(e.kind()), e.what());
    return kExitComputation;
  } catch (const std::exception& e) {
    out << render_error(config, error_kind_name(ErrorKind::kInternal), e.what());
    return kExitComputation;
  }
  return reproduce_failed ? kExitComputation : kExitOk;
}

}  // namespace coprimality::cli
