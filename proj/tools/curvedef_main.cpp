// curvedef: exact tangent-space dimensions for equivariant deformations of
// curves with p-group automorphisms, computed from ramification data and
// cross-validated along every route the theory provides.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "curvedef/document.hpp"
#include "curvedef/fuzz.hpp"
#include "curvedef/report.hpp"
#include "curvedef/weakly.hpp"

namespace {

int cmd_validate(const std::string& path, bool strict) {
  auto doc = curvedef::parse_document_file(path);
  if (!doc.ok()) {
    for (const auto& d : doc.diagnostics) {
      if (d.line > 0)
        std::cout << path << ":" << d.line << ": " << d.message << "\n";
      else
        std::cout << path << ": " << d.message << "\n";
    }
    std::cout << "invalid\n";
    return 1;
  }
  auto v = curvedef::validate_cover(*doc.spec, strict || doc.options.strict_schmid);
  for (const auto& i : v.issues)
    std::cout << (i.hard ? "error: " : "warning: ") << i.message << "\n";
  std::cout << (v.valid() ? "valid" : "invalid") << "\n";
  return v.valid() ? 0 : 1;
}

int cmd_report(const std::string& path, const std::string& method, const std::string& out_path) {
  auto doc = curvedef::parse_document_file(path);
  if (!doc.ok()) {
    for (const auto& d : doc.diagnostics) {
      if (d.line > 0)
        std::cerr << path << ":" << d.line << ": " << d.message << "\n";
      else
        std::cerr << path << ": " << d.message << "\n";
    }
    return 1;
  }
  auto filter = curvedef::method_filter_from_name(method);
  if (!filter) {
    std::cerr << "unknown method '" << method << "' (all|weak|cyclic|prank|borne)\n";
    return 1;
  }
  try {
    auto rep = curvedef::build_report(*doc.spec, doc.options, *filter);
    std::cout << curvedef::render_human(rep);
    if (!out_path.empty()) {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot write '" << out_path << "'\n";
        return 1;
      }
      out << curvedef::render_machine(rep);
    }
    int code = curvedef::report_exit_code(rep);
    if (code != 0) std::cout << "MANDATORY IDENTITY FAILURE\n";
    return code;
  } catch (const curvedef::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_homology(curvedef::Int p, curvedef::Int rank, curvedef::Int trials) {
  using namespace curvedef;
  try {
    PrimeChar::checked(p);
    Int q = pow_checked(p, rank);
    Int limit = bar_resolution_work_limit();
    if (q > limit) {
      std::cerr << "error: |G(P)| = " << q << " exceeds WORK_LIMIT = " << limit << "\n";
      return 1;
    }
    std::cout << "homology of the skyscraper stalk, G(P) = (Z/" << p << ")^" << rank
              << ", |G(P)| = " << q << "\n";
    bool claimed_match = true, documented_gap = true;
    for (Int trial = 1; trial <= trials; ++trial) {
      FqContext F(p, rank, static_cast<std::uint64_t>(trial));
      std::mt19937_64 rng(static_cast<std::uint64_t>(trial) * 7919 + 17);
      SigmaLocal loc = random_sigma_local(F, rank, rng);
      Int h0 = h0_sigma(F, loc);
      Int h1 = h1_sigma_bar(F, loc);
      std::cout << "trial " << trial << ": field modulus";
      for (Int c : F.modulus()) std::cout << " " << c;
      std::cout << ", H0 = " << h0 << ", H1 = " << h1 << "\n";
      if (h0 != 1 || h1 != rank - 1) claimed_match = false;
      // at p >= 5 the norm map vanishes on the stalk and H1 = t, one above
      // the claimed closed form; anything else is a genuine anomaly
      Int truth = (p == 3) ? rank - 1 : rank;
      if (h0 != 1 || h1 != truth) documented_gap = false;
    }
    std::cout << "claimed closed form: H0 = 1, H1 = log_p|G(P)| - 1 = " << (rank - 1) << "\n";
    if (claimed_match) return 0;
    if (documented_gap) {
      std::cout << "known discrepancy: the closed form holds only at p = 3; for p >= 5 "
                   "the norm map vanishes on the stalk and H1 = log_p|G(P)|\n";
      return 0;
    }
    std::cout << "MISMATCH beyond the documented discrepancy\n";
    return 2;
  } catch (const curvedef::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact dimension of H^1(G, T_X) for curves with p-group automorphisms, "
               "from combinatorial ramification data"};
  app.require_subcommand(1);

  std::string path, method = "all", out_path;
  bool strict = false;
  auto* validate = app.add_subcommand("validate", "parse and validate a cover document");
  validate->add_option("file", path, "cover document")->required();
  validate->add_flag("--strict-schmid", strict, "also check the upper-jump congruences");

  auto* report = app.add_subcommand("report", "compute all applicable routes and cross-checks");
  report->add_option("file", path, "cover document")->required();
  report->add_option("--method", method, "all|weak|cyclic|prank|borne")->default_val("all");
  report->add_option("--out", out_path, "write the machine-readable report here");

  curvedef::Int hp = 3, hrank = 1, htrials = 3;
  auto* homology = app.add_subcommand("homology", "bar-resolution homology of the skyscraper stalk");
  homology->add_option("--p", hp, "characteristic")->required();
  homology->add_option("--rank", hrank, "rank t of G(P) = (Z/p)^t")->required();
  homology->add_option("--trials", htrials, "number of random (alpha_2, field) choices");

  std::uint64_t seed = 1;
  curvedef::Int count = 100;
  std::string digit_order = "paper";
  auto* fuzz = app.add_subcommand("fuzz", "randomized cross-check sweep");
  fuzz->add_option("--seed", seed, "RNG seed");
  fuzz->add_option("--count", count, "number of random specs");
  fuzz->add_option("--digit-order", digit_order, "paper|reversed (mutant injection)");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return cmd_validate(path, strict);
  if (report->parsed()) return cmd_report(path, method, out_path);
  if (homology->parsed()) return cmd_homology(hp, hrank, htrials);
  if (fuzz->parsed()) {
    curvedef::FuzzConfig cfg;
    cfg.seed = seed;
    cfg.count = count;
    if (digit_order == "reversed")
      cfg.digit_order = curvedef::DigitOrder::reversed;
    else if (digit_order != "paper") {
      std::cerr << "unknown digit order '" << digit_order << "'\n";
      return 1;
    }
    return curvedef::run_fuzz(cfg, std::cout);
  }
  return 0;
}
