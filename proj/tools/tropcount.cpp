// tropcount: count, enumerate, hurwitz, verify.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tropcount/counting.hpp"
#include "tropcount/enumerate.hpp"
#include "tropcount/hurwitz.hpp"
#include "tropcount/io.hpp"
#include "tropcount/verify.hpp"

using namespace tropcount;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitNonGeneric = 3;
constexpr int kExitDimension = 4;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Invalid:
      return kExitParse;
    case ErrorKind::NonGeneric:
      return kExitNonGeneric;
    case ErrorKind::DimensionMismatch:
      return kExitDimension;
    case ErrorKind::Internal:
      break;
  }
  return kExitInternal;
}

struct CountArgs {
  std::string file;
  bool unlabeled = false;
  std::optional<std::uint64_t> seed;
  std::string format = "text";
  unsigned workers = 0;
};

int run_count(const CountArgs& a) {
  Problem p = read_problem_file(a.file);
  if (a.seed) p = randomly_translated(p, *a.seed);
  CountOptions opts;
  opts.workers = a.workers;
  const CountReport r = count(p, opts);
  const ReportOptions ro{a.unlabeled};
  std::cout << (a.format == "machine" ? format_report_json(r, ro) : format_report_text(r, ro));
  return 0;
}

int run_enumerate(const std::string& file, bool all) {
  const Problem p = read_problem_file(file);
  CountOptions opts;
  opts.genus0_mode = all ? Genus0Mode::AllShapes : Genus0Mode::Realizable;
  std::cout << format_catalog(candidate_types(p, opts));
  return 0;
}

void print_hurwitz_row(const char* side, const HurwitzResult& r) {
  std::cout << std::left << std::setw(11) << side << std::setw(14) << r.hat.get_str() << std::setw(14)
            << format_fraction(r.labeled) << format_fraction(r.unlabeled) << '\n';
}

int run_hurwitz(int g, const std::string& alpha_text, const std::string& beta_text, const std::string& side) {
  Partition alpha, beta;
  try {
    alpha = Partition::parse(alpha_text);
    beta = Partition::parse(beta_text);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  if (alpha.size() != beta.size()) {
    std::cerr << "error: alpha and beta are partitions of different degrees\n";
    return kExitParse;
  }
  if (g < 0) {
    std::cerr << "error: genus must be non-negative\n";
    return kExitParse;
  }
  const long m = 2L * g - 2 + static_cast<long>(alpha.length() + beta.length());
  std::cout << "g " << g << "  d " << alpha.size() << "  alpha " << alpha.str() << "  beta " << beta.str() << "  branch points " << m
            << '\n';
  std::cout << std::left << std::setw(11) << "side" << std::setw(14) << "hat" << std::setw(14) << "labeled" << "unlabeled" << '\n';
  std::optional<HurwitzResult> sym, trop;
  if (side != "tropical") print_hurwitz_row("symmetric", *(sym = hurwitz_symmetric(g, alpha, beta)));
  if (side != "symmetric") print_hurwitz_row("tropical", *(trop = hurwitz_tropical(g, alpha, beta)));
  if (sym && trop) {
    const bool agree = sym->hat == trop->hat && sym->labeled == trop->labeled && sym->unlabeled == trop->unlabeled;
    std::cout << (agree ? "sides agree" : "SIDES DISAGREE") << '\n';
    if (!agree) return kExitInternal;
  }
  return 0;
}

int run_verify(bool extended) {
  const SuiteResult r = run_suite(extended ? SuiteLevel::Extended : SuiteLevel::Basic);
  for (const auto& c : r.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  expected " << c.expected << "  computed " << c.computed << "  ("
              << std::fixed << std::setprecision(2) << c.seconds << " s)\n";
  }
  std::cout << (r.passed() ? "all checks passed" : "some checks failed") << '\n';
  return r.passed() ? 0 : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical descendant curve counts and double Hurwitz numbers"};
  app.require_subcommand(1);

  CountArgs count_args;
  auto* count_cmd = app.add_subcommand("count", "Count the tropical curves of a problem file");
  count_cmd->add_option("file", count_args.file, "Problem file")->required();
  count_cmd->add_flag("--unlabeled", count_args.unlabeled, "Also report the count divided by |Aut(Delta)|");
  count_cmd->add_option("--seed", count_args.seed, "Translate every constraint by a seeded generic offset first");
  count_cmd->add_option("--format", count_args.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
  count_cmd->add_option("--workers", count_args.workers, "Worker threads (0 = all cores)");

  std::string enum_file;
  bool enum_all = false;
  auto* enum_cmd = app.add_subcommand("enumerate", "List the candidate combinatorial types of a problem file");
  enum_cmd->add_option("file", enum_file, "Problem file")->required();
  enum_cmd->add_flag("--all", enum_all, "Every genus-0 shape, not only the realizable ones (can be huge)");

  int hg = 0;
  std::string halpha, hbeta, hside = "both";
  auto* hur_cmd = app.add_subcommand("hurwitz", "Double Hurwitz number H_g(alpha, beta) from both sides");
  hur_cmd->add_option("g", hg, "Genus")->required();
  hur_cmd->add_option("alpha", halpha, "Partition such as 2,1,1")->required();
  hur_cmd->add_option("beta", hbeta, "Partition such as 3,1")->required();
  hur_cmd->add_option("--side", hside, "Which computation to run")->check(CLI::IsMember({"both", "symmetric", "tropical"}));

  bool extended = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run the built-in check suite");
  verify_cmd->add_flag("--extended", extended, "Include the slow checks (plane cubics, full Hurwitz sweep)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (count_cmd->parsed()) return run_count(count_args);
    if (enum_cmd->parsed()) return run_enumerate(enum_file, enum_all);
    if (hur_cmd->parsed()) return run_hurwitz(hg, halpha, hbeta, hside);
    if (verify_cmd->parsed()) return run_verify(extended);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
