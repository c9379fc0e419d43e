// Command-line front end: character listing, audit constants, point
// evaluation, critical-line zero scans with completeness certificates, and
// the zero-sum comparison pipeline. All numeric output is deterministic for
// a given invocation and printed with 15 significant digits.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dlf/io.hpp"

namespace {

using dlf::u64;

// Relative output paths are resolved against DLF_OUTPUT_DIR when set.
std::string resolve_path(const std::string& p) {
  if (p.empty() || p == "-" || p.front() == '/') return p;
  const char* dir = std::getenv("DLF_OUTPUT_DIR");
  if (dir != nullptr && *dir != '\0') return std::string(dir) + "/" + p;
  return p;
}

void write_text(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::string full = resolve_path(path);
  std::ofstream f(full, std::ios::binary);
  if (!f) throw dlf::DomainError("cannot open output path: " + full);
  f << content;
}

dlf::DirichletCharacter pick_character(u64 q, long long k) {
  if (q < 1) throw dlf::DomainError("modulus must be >= 1");
  if (k < 0) {
    if (q == 1) k = 0;
    else
      throw dlf::DomainError(
          "--char is required for modulus > 1 (see `characters --modulus " +
          std::to_string(q) + "` for labels)");
  }
  if (static_cast<u64>(k) >= dlf::euler_phi(q)) {
    throw dlf::DomainError("unknown character label " + std::to_string(q) +
                           "." + std::to_string(k));
  }
  return dlf::character_from_index(q, static_cast<u64>(k));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Dirichlet L-function toolkit: characters, audit constants, "
      "L-evaluations, certified critical-line zeros, and zero-sum "
      "asymptotics"};
  app.require_subcommand(1);

  int threads = 1;
  long long seed = 0;
  app.add_option("--threads", threads,
                 "worker threads for scans and sums (default 1)");
  app.add_option("--seed", seed,
                 "seed echoed into compare reports (reserved for randomized "
                 "grids)");

  // characters
  u64 ch_q = 1;
  bool ch_json = false;
  auto* sc_chars =
      app.add_subcommand("characters", "list Dirichlet characters mod q");
  sc_chars->add_option("--modulus", ch_q, "modulus q")->required();
  sc_chars->add_flag("--json", ch_json, "emit one JSON record per line");
  sc_chars->callback([&]() {
    if (ch_q < 1 || ch_q > 10000) {
      throw dlf::DomainError("characters: modulus must lie in [1, 10000]");
    }
    auto chars = dlf::enumerate_characters(ch_q);
    if (ch_json) {
      for (const auto& chi : chars) {
        std::cout << dlf::io::character_record(chi).dump() << "\n";
      }
      return;
    }
    std::cout << "label\tconductor\tkappa\tprincipal\tprimitive\treal\t"
                 "gauss_re\tgauss_im\n";
    for (const auto& chi : chars) {
      dlf::Complex tau = dlf::gauss_sum(chi);
      std::cout << chi.label() << "\t" << chi.conductor() << "\t"
                << chi.parity_kappa() << "\t" << (chi.is_principal() ? 1 : 0)
                << "\t" << (chi.is_primitive() ? 1 : 0) << "\t"
                << (chi.is_real() ? 1 : 0) << "\t"
                << dlf::io::fmt15(tau.real()) << "\t"
                << dlf::io::fmt15(tau.imag()) << "\n";
    }
  });

  // constants
  auto* sc_const = app.add_subcommand(
      "constants", "print audit constants (gamma_0, gamma_1, eta, Bernoulli)");
  sc_const->callback(
      [&]() { std::cout << dlf::io::constants_record().dump(2) << "\n"; });

  // eval
  u64 ev_q = 1;
  long long ev_k = -1;
  double ev_sigma = 0.5, ev_t = 0.0;
  std::string ev_method = "hurwitz";
  auto* sc_eval =
      app.add_subcommand("eval", "evaluate L(s, chi) and its derivative");
  sc_eval->add_option("--modulus", ev_q, "modulus q")->required();
  sc_eval->add_option("--char", ev_k, "character index k (label q.k)");
  sc_eval->add_option("--sigma", ev_sigma, "Re s")->required();
  sc_eval->add_option("--t", ev_t, "Im s")->required();
  sc_eval->add_option("--method", ev_method, "hurwitz (default) or afe")
      ->check(CLI::IsMember({"hurwitz", "afe"}));
  sc_eval->callback([&]() {
    auto chi = pick_character(ev_q, ev_k);
    dlf::Complex s{ev_sigma, ev_t};
    dlf::LEvaluation ev;
    if (ev_method == "afe") {
      double xy = std::sqrt(ev_t / dlf::kTwoPi);  // balanced cut
      ev = dlf::afe_value(chi, s, xy, xy);
    } else {
      ev = dlf::l_derivative(chi, s);
    }
    std::cout << dlf::io::eval_record(chi, ev).dump(2) << "\n";
  });

  // zeros
  u64 z_q = 1;
  long long z_k = -1;
  double z_tmax = 0.0;
  std::string z_csv, z_json;
  auto* sc_zeros = app.add_subcommand(
      "zeros", "scan (0, tmax] for critical-line zeros and certify "
               "completeness");
  sc_zeros->add_option("--modulus", z_q, "modulus q")->required();
  sc_zeros->add_option("--char", z_k, "character index k (label q.k)");
  sc_zeros->add_option("--tmax", z_tmax, "upper height")->required();
  sc_zeros->add_option("--csv", z_csv, "CSV output path ('-' for stdout)");
  sc_zeros->add_option("--json", z_json, "JSON output path ('-' for stdout)");
  sc_zeros->callback([&]() {
    auto chi = pick_character(z_q, z_k);
    auto list = dlf::scan_zeros(chi, 0.0, z_tmax, dlf::ScanConfig{}, threads);
    list = dlf::verify_completeness(list);
    bool wrote = false;
    if (!z_csv.empty()) {
      write_text(z_csv, dlf::io::zeros_csv(list));
      wrote = true;
    }
    if (!z_json.empty()) {
      write_text(z_json, dlf::io::zeros_record(list).dump(2) + "\n");
      wrote = true;
    }
    if (!wrote) std::cout << dlf::io::zeros_csv(list);
  });

  // compare
  u64 c_q = 1;
  long long c_k = -1;
  bool c_all = false;
  std::vector<double> c_grid;
  std::string c_csv, c_json;
  auto* sc_cmp = app.add_subcommand(
      "compare", "empirical sum of L' over certified zeros vs the main term");
  sc_cmp->add_option("--modulus", c_q, "modulus q")->required();
  sc_cmp->add_option("--char", c_k, "character index k (label q.k)");
  sc_cmp->add_flag("--all-primitive", c_all,
                   "run every primitive character mod q");
  sc_cmp->add_option("--tgrid", c_grid, "comma-separated heights")
      ->required()
      ->delimiter(',');
  sc_cmp->add_option("--csv", c_csv, "CSV output path ('-' for stdout)");
  sc_cmp->add_option("--json", c_json, "JSON output path ('-' for stdout)");
  sc_cmp->callback([&]() {
    std::vector<dlf::DirichletCharacter> chars;
    if (c_all) {
      for (const auto& chi : dlf::enumerate_characters(c_q)) {
        if (chi.is_primitive()) chars.push_back(chi);
      }
      if (chars.empty()) {
        throw dlf::DomainError("compare: no primitive characters mod " +
                               std::to_string(c_q));
      }
    } else {
      chars.push_back(pick_character(c_q, c_k));
    }
    std::vector<dlf::ComparisonReport> reports;
    for (const auto& chi : chars) {
      reports.push_back(
          dlf::compare(chi, c_grid, dlf::ScanConfig{}, threads));
    }

    std::string csv = dlf::io::compare_csv_header(c_all);
    for (const auto& rep : reports) {
      dlf::io::append_compare_csv(csv, rep, c_all);
    }
    dlf::io::Json jout;
    jout["seed"] = seed;
    dlf::io::Json arr = dlf::io::Json::array();
    for (const auto& rep : reports) arr.push_back(dlf::io::compare_record(rep));
    jout["reports"] = arr;

    bool wrote = false;
    if (!c_csv.empty()) {
      write_text(c_csv, csv);
      wrote = true;
    }
    if (!c_json.empty()) {
      write_text(c_json, jout.dump(2) + "\n");
      wrote = true;
    }
    if (!wrote) std::cout << csv;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const dlf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
