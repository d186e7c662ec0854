#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "totcheck/cyclotomic.hpp"
#include "totcheck/harness.hpp"
#include "totcheck/theorems.hpp"

using namespace totcheck;
namespace th = totcheck::theorems;

namespace {

// 0: everything Verified / WitnessFound (extra-scope and exceptional rows
//    count as settled); 1: a Counterexample; 2: budget left something
//    Unresolved; 3: usage or configuration errors.
int exit_for(const std::vector<th::VerificationRecord>& records) {
  bool unresolved = false;
  for (const auto& rec : records) {
    if (rec.status == th::Status::Counterexample) return 1;
    unresolved = unresolved || rec.status == th::Status::Unresolved;
  }
  return unresolved ? 2 : 0;
}

const char* second_label(CongruenceCase c) { return is_sum_case(c) ? "y" : "z"; }

void print_record(const th::VerificationRecord& rec, bool as_json) {
  if (as_json) {
    std::cout << harness::record_to_json(rec).dump() << "\n";
    return;
  }
  std::cout << "case " << case_letter(rec.congruence_case) << " (" << case_name(rec.congruence_case)
            << ")  x=" << to_decimal(rec.params.first) << " " << second_label(rec.congruence_case)
            << "=" << to_decimal(rec.params.second) << " n=" << rec.params.n << "\n";
  std::cout << "target  = " << to_decimal(rec.target) << "\n";
  std::cout << "mode    = " << th::mode_name(rec.mode) << "\n";
  std::cout << "status  = " << th::status_name(rec.status) << "\n";
  if (rec.witness) std::cout << "witness = " << to_decimal(*rec.witness) << "\n";
  if (rec.phi) std::cout << "phi     = " << to_decimal(*rec.phi) << "\n";
  if (rec.residue) {
    std::cout << "residue = " << to_decimal(*rec.residue) << " (mod " << rec.params.n << ")\n";
  }
  std::cout << "elapsed = " << rec.elapsed_ms << " ms\n";
}

CongruenceCase parse_case(const std::string& text) {
  std::optional<CongruenceCase> c =
      text.size() == 1 ? case_from_letter(text[0]) : std::nullopt;
  if (!c) throw std::invalid_argument("case must be one of a, b, c, d");
  return *c;
}

th::Mode parse_mode(const std::string& text) {
  std::optional<th::Mode> m = th::mode_from_name(text);
  if (!m) throw std::invalid_argument("mode must be direct, existence or explicit");
  return *m;
}

std::vector<CongruenceCase> parse_cases(const std::string& text) {
  std::vector<CongruenceCase> out;
  std::string token;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] != ',') {
      token += text[i];
      continue;
    }
    if (!token.empty()) out.push_back(parse_case(token));
    token.clear();
  }
  if (out.empty()) throw std::invalid_argument("no cases given");
  return out;
}

std::optional<std::filesystem::path> cache_path_or_env(const std::string& flag_value) {
  if (!flag_value.empty()) return std::filesystem::path(flag_value);
  if (const char* env = std::getenv("TOTCHECK_CACHE"); env && *env) {
    return std::filesystem::path(env);
  }
  return std::nullopt;
}

struct VerifyArgs {
  std::string case_str, x, y, z, mode = "existence";
  unsigned long n = 1;
  std::uint64_t budget = arith::kDefaultRhoBudget;
  bool json = false;
  bool allow_degenerate = false;
};

int cmd_verify(const VerifyArgs& args) {
  const CongruenceCase c = parse_case(args.case_str);
  const th::Mode mode = parse_mode(args.mode);
  const Natural x = parse_natural(args.x);

  const bool wants_y = is_sum_case(c);
  const std::string& second_str = wants_y ? args.y : args.z;
  if (second_str.empty()) {
    throw std::invalid_argument(std::string("case ") + case_letter(c) + " needs --" +
                                second_label(c));
  }
  if (!(wants_y ? args.z : args.y).empty()) {
    throw std::invalid_argument(std::string("case ") + case_letter(c) + " takes --" +
                                second_label(c) + ", not both");
  }
  const Natural second = parse_natural(second_str);

  th::VerificationRecord rec;
  if (x == second) {
    if (!args.allow_degenerate) {
      throw std::invalid_argument("requires x < " + std::string(second_label(c)) +
                                  " (pass --allow-degenerate to explore equality)");
    }
    rec = th::explore_degenerate(c, x, args.n, args.budget);
  } else {
    rec = th::verify_instance(c, {x, second, args.n}, mode, args.budget);
  }
  print_record(rec, args.json);
  return exit_for({rec});
}

struct SweepArgs {
  std::string cases = "a,b,c,d";
  unsigned long n_min = 1, n_max = 1, max_value = 2;
  std::string mode = "existence";
  std::uint64_t budget = arith::kDefaultRhoBudget;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string cache, out, format = "json";
};

int cmd_sweep(const SweepArgs& args) {
  harness::SweepConfig config;
  config.cases = parse_cases(args.cases);
  config.n_min = args.n_min;
  config.n_max = args.n_max;
  config.value_max = args.max_value;
  config.mode = parse_mode(args.mode);
  config.budget = args.budget;
  config.parallelism = args.jobs;
  config.cache_path = cache_path_or_env(args.cache);

  harness::ReportFormat format;
  if (args.format == "json") {
    format = harness::ReportFormat::Json;
  } else if (args.format == "csv") {
    format = harness::ReportFormat::Csv;
  } else {
    throw std::invalid_argument("format must be json or csv");
  }

  const harness::Report report = harness::run_sweep(config);

  if (!args.out.empty()) {
    std::ofstream out(args.out);
    if (!out) throw std::invalid_argument("cannot write " + args.out);
    out << harness::emit_report(report, format);
    if (!out) throw std::invalid_argument("short write to " + args.out);
  }

  std::cout << "sweep: " << report.records.size() << " records";
  for (const auto& [status, count] : report.counts) {
    std::cout << " | " << th::status_name(status) << " " << count;
  }
  std::cout << "\n";
  std::cout << "cache: hits " << report.cache_hits << ", misses " << report.cache_misses << "\n";
  std::cout << "elapsed: " << report.total_runtime_ms << " ms\n";
  return exit_for(report.records);
}

struct FamilyArgs {
  std::string family;
  unsigned long base = 2;
  unsigned long n_min = 1, n_max = 1;
  std::string mode = "existence";
  std::uint64_t budget = arith::kDefaultRhoBudget;
};

int cmd_family(const FamilyArgs& args) {
  th::Family family;
  if (args.family == "mersenne") {
    family = th::Family::Mersenne;
  } else if (args.family == "cunningham+") {
    family = th::Family::CunninghamPlus;
  } else if (args.family == "cunningham-") {
    family = th::Family::CunninghamMinus;
  } else if (args.family == "repunit") {
    family = th::Family::Repunit;
  } else {
    throw std::invalid_argument("family must be mersenne, cunningham+, cunningham- or repunit");
  }
  if (args.n_min < 1 || args.n_min > args.n_max) {
    throw std::invalid_argument("need 1 <= n-min <= n-max");
  }
  const th::Mode mode = parse_mode(args.mode);

  std::cout << "family=" << args.family << " base=" << args.base
            << " mode=" << th::mode_name(mode) << "\n";
  std::vector<th::VerificationRecord> records;
  for (unsigned long n = args.n_min; n <= args.n_max; ++n) {
    auto [c, params] = th::family_case({family, args.base, n});
    th::VerificationRecord rec = th::verify_instance(c, params, mode, args.budget);
    std::cout << "n=" << n << "\ttarget=" << to_decimal(rec.target)
              << "\tstatus=" << th::status_name(rec.status);
    if (rec.witness) std::cout << "\twitness=" << to_decimal(*rec.witness);
    if (rec.phi) std::cout << "\tphi=" << to_decimal(*rec.phi);
    if (rec.residue) std::cout << "\tresidue=" << to_decimal(*rec.residue);
    std::cout << "\n";
    records.push_back(std::move(rec));
  }
  return exit_for(records);
}

std::string factor_string(const arith::Factorization& f) {
  std::string out;
  for (const auto& pp : f.factors) {
    if (!out.empty()) out += " * ";
    out += to_decimal(pp.prime);
    if (pp.exponent > 1) out += "^" + std::to_string(pp.exponent);
  }
  if (!f.complete) {
    if (!out.empty()) out += " ";
    out += "[incomplete cofactor " + to_decimal(f.cofactor) + "]";
  }
  if (out.empty()) out = "1";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"totcheck: Euler totient congruence checks on x^n +/- y^n and their quotients"};
  app.require_subcommand(1);

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Verify a single instance");
  verify_cmd->add_option("--case", verify_args.case_str, "congruence case a|b|c|d")->required();
  verify_cmd->add_option("--x", verify_args.x, "smaller parameter x")->required();
  verify_cmd->add_option("--y", verify_args.y, "y for the sum cases a, d");
  verify_cmd->add_option("--z", verify_args.z, "z for the difference cases b, c");
  verify_cmd->add_option("--n", verify_args.n, "exponent n >= 1")->required();
  verify_cmd->add_option("--mode", verify_args.mode, "direct|existence|explicit");
  verify_cmd->add_option("--budget", verify_args.budget, "rho iterations per composite");
  verify_cmd->add_flag("--json", verify_args.json, "emit the record as JSON");
  verify_cmd->add_flag("--allow-degenerate", verify_args.allow_degenerate,
                   "explore x == y (reported as extra-scope)");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a verification grid");
  sweep_cmd->add_option("--cases", sweep_args.cases, "comma-separated case letters");
  sweep_cmd->add_option("--n-min", sweep_args.n_min)->required();
  sweep_cmd->add_option("--n-max", sweep_args.n_max)->required();
  sweep_cmd->add_option("--max-value", sweep_args.max_value, "upper bound for x, y, z")->required();
  sweep_cmd->add_option("--mode", sweep_args.mode, "direct|existence|explicit");
  sweep_cmd->add_option("--budget", sweep_args.budget);
  sweep_cmd->add_option("--jobs", sweep_args.jobs, "worker threads");
  sweep_cmd->add_option("--cache", sweep_args.cache, "factorization cache file (or $TOTCHECK_CACHE)");
  sweep_cmd->add_option("--out", sweep_args.out, "write the report here");
  sweep_cmd->add_option("--format", sweep_args.format, "json|csv");

  FamilyArgs family_args;
  CLI::App* family_cmd = app.add_subcommand("family", "Verify a special number family");
  family_cmd->add_option("--family", family_args.family, "mersenne|cunningham+|cunningham-|repunit")
      ->required();
  family_cmd->add_option("--base", family_args.base, "family base b");
  family_cmd->add_option("--n-min", family_args.n_min)->required();
  family_cmd->add_option("--n-max", family_args.n_max)->required();
  family_cmd->add_option("--mode", family_args.mode, "direct|existence|explicit");
  family_cmd->add_option("--budget", family_args.budget);

  std::string factor_value;
  std::uint64_t factor_budget = arith::kDefaultRhoBudget;
  CLI::App* factor_cmd = app.add_subcommand("factor", "Factor a number");
  factor_cmd->add_option("value", factor_value)->required();
  factor_cmd->add_option("--budget", factor_budget);

  std::string phi_value;
  std::uint64_t phi_budget = arith::kDefaultRhoBudget;
  CLI::App* phi_cmd = app.add_subcommand("phi", "Euler totient of a number");
  phi_cmd->add_option("value", phi_value)->required();
  phi_cmd->add_option("--budget", phi_budget);

  unsigned long cyclo_k = 1;
  std::string cyclo_a, cyclo_b;
  CLI::App* cyclo_cmd = app.add_subcommand("cyclo", "Evaluate the cyclotomic value Phi_k(a, b)");
  cyclo_cmd->add_option("--k", cyclo_k)->required();
  cyclo_cmd->add_option("--a", cyclo_a)->required();
  cyclo_cmd->add_option("--b", cyclo_b)->required();

  std::string order_x, order_y;
  unsigned long order_n = 1;
  CLI::App* order_cmd = app.add_subcommand("order", "Check that y/x has order 2n mod x^n + y^n");
  order_cmd->add_option("--x", order_x)->required();
  order_cmd->add_option("--y", order_y)->required();
  order_cmd->add_option("--n", order_n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (app.got_subcommand(verify_cmd)) return cmd_verify(verify_args);
    if (app.got_subcommand(sweep_cmd)) return cmd_sweep(sweep_args);
    if (app.got_subcommand(family_cmd)) return cmd_family(family_args);
    if (app.got_subcommand(factor_cmd)) {
      const arith::Factorization f = arith::factorize(parse_natural(factor_value), factor_budget);
      std::cout << factor_string(f) << "\n";
      return f.complete ? 0 : 2;
    }
    if (app.got_subcommand(phi_cmd)) {
      const arith::Factorization f = arith::factorize(parse_natural(phi_value), phi_budget);
      if (!f.complete) {
        std::cerr << "incomplete factorization: phi cannot be certified\n";
        return 2;
      }
      std::cout << to_decimal(arith::euler_phi(f)) << "\n";
      return 0;
    }
    if (app.got_subcommand(cyclo_cmd)) {
      std::cout << to_decimal(cyclo::cyclotomic_value(cyclo_k, parse_natural(cyclo_a),
                                                      parse_natural(cyclo_b)))
                << "\n";
      return 0;
    }
    if (app.got_subcommand(order_cmd)) {
      const th::OrderCertificate cert =
          th::order_check(parse_natural(order_x), parse_natural(order_y), order_n);
      std::cout << "order(" << to_decimal(cert.element) << " mod " << to_decimal(cert.modulus)
                << ") = " << cert.claimed_order << " = 2n: " << (cert.holds ? "HOLDS" : "FAILS")
                << "\n";
      return cert.holds ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
