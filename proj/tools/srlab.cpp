// srlab: stable rank / intrinsic dimension toolkit.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "srlab/condition.hpp"
#include "srlab/fuzz.hpp"
#include "srlab/gallery.hpp"
#include "srlab/io.hpp"
#include "srlab/json_report.hpp"
#include "srlab/ranks.hpp"
#include "srlab/schatten.hpp"
#include "srlab/theorems.hpp"

namespace {

using namespace srlab;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotPsd = 3;

// Exit with a specific code from deep inside a subcommand.
struct ExitRequest {
  int code;
  std::string message;
};

struct Globals {
  std::string format;
  double rtol = kDefaultRankTol;
  std::uint64_t seed = 0;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string format_or(const Globals& g, const char* fallback) {
  return g.format.empty() ? fallback : g.format;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Matrix load(const std::string& path) {
  try {
    return read_matrix(path);
  } catch (const Error& e) {
    throw ExitRequest{kExitUsage, path + ": " + e.what()};
  }
}

// compute

struct ComputeArgs {
  std::string input;
  std::string p = "2";
  std::string quantity = "sr";
};

int run_compute(const Globals& g, const ComputeArgs& a) {
  const Matrix m = load(a.input);
  double value = 0.0;
  std::optional<PExponent> p;
  try {
    if (a.quantity == "sr") {
      value = stable_rank(m).value;
    } else if (a.quantity == "srp") {
      p = PExponent::parse(a.p);
      value = p_stable_rank(m, *p, g.rtol).value;
    } else if (a.quantity == "intdim") {
      value = intrinsic_dimension(m).value;
    } else if (a.quantity == "rank") {
      value = static_cast<double>(numerical_rank(m, g.rtol));
    } else if (a.quantity == "schatten") {
      p = PExponent::parse(a.p);
      value = schatten_norm(m, *p);
    }
  } catch (const PreconditionError& e) {
    throw ExitRequest{kExitNotPsd, e.what()};
  }

  const std::string f = format_or(g, "text");
  if (f == "text") {
    std::cout << fmt(value) << "\n";
  } else if (f == "csv") {
    std::cout << "quantity,p,value\n"
              << a.quantity << "," << (p ? p->to_string() : "") << "," << fmt(value) << "\n";
  } else {
    Json j;
    j["schema"] = kJsonSchema;
    j["quantity"] = a.quantity;
    if (p) j["p"] = p->to_string();
    j["value"] = encode_double(value);
    j["input"] = a.input;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["field"] = to_string(m.field());
    print_json(j);
  }
  return kExitOk;
}

// verify

struct VerifyArgs {
  std::string check;
  std::vector<std::string> inputs;
  std::string p = "2";
  long k = -1;
  long col = -1;
};

void print_report(const Globals& g, const CheckReport& r) {
  const std::string f = format_or(g, "json");
  if (f == "json") {
    print_json(to_json(r));
  } else if (f == "csv") {
    std::cout << "name,status,lhs,rhs,slack\n"
              << r.name << "," << r.status() << "," << fmt(r.lhs) << "," << fmt(r.rhs) << ","
              << fmt(r.slack) << "\n";
  } else {
    std::cout << r.name << ": " << r.status() << "  lhs=" << fmt(r.lhs) << " rhs=" << fmt(r.rhs)
              << " slack=" << fmt(r.slack) << "\n";
    for (const auto& [k, v] : r.details) std::cout << "  " << k << " = " << fmt(v) << "\n";
    if (!r.note.empty()) std::cout << "  note: " << r.note << "\n";
  }
}

int run_verify(const Globals& g, const VerifyArgs& a) {
  const auto& names = checker_names();
  if (std::find(names.begin(), names.end(), a.check) == names.end()) {
    throw ExitRequest{kExitUsage, "unknown check '" + a.check + "'"};
  }
  const bool pairwise = a.check == "check_weyl" || a.check == "check_intdim_subadditive" ||
                        a.check == "check_sum_subadditivity_proot" ||
                        a.check == "check_rank1_addition" || a.check == "check_product_kappa" ||
                        a.check == "check_perturbation" || a.check == "check_block_diag_sr";
  const std::size_t want = pairwise ? 2 : 1;
  if (a.inputs.size() != want) {
    throw ExitRequest{kExitUsage, a.check + " expects " + std::to_string(want) + " input file(s)"};
  }
  std::vector<Matrix> m;
  for (const auto& path : a.inputs) m.push_back(load(path));

  CheckOptions opt;
  opt.rank_tol = g.rtol;
  PExponent p = PExponent::finite(2.0);
  try {
    p = PExponent::parse(a.p);
  } catch (const Error& e) {
    throw ExitRequest{kExitUsage, e.what()};
  }

  CheckReport r;
  const std::string& c = a.check;
  if (c == "check_weyl") r = check_weyl(m[0], m[1], opt);
  else if (c == "check_intdim_subadditive") r = check_intdim_subadditive(m[0], m[1], opt);
  else if (c == "check_sum_subadditivity_proot") r = check_sum_subadditivity_proot(m[0], m[1], p, opt);
  else if (c == "check_rank1_addition") r = check_rank1_addition(m[0], m[1], p, opt);
  else if (c == "check_product_kappa") r = check_product_kappa(m[0], m[1], p, opt);
  else if (c == "check_perturbation") r = check_perturbation(m[0], m[1], p, opt);
  else if (c == "check_block_diag_sr") r = check_block_diag_sr(m[0], m[1], opt);
  else if (c == "check_cross_product") r = check_cross_product(m[0], p, opt);
  else if (c == "check_cholesky_intdim") r = check_cholesky_intdim(m[0], opt);
  else if (c == "check_block_intdim") {
    const long k = a.k >= 0 ? a.k : static_cast<long>(m[0].rows() / 2);
    r = check_block_intdim(m[0], k, opt);
  } else if (c == "check_deletion") {
    const long col = a.col >= 0 ? a.col : static_cast<long>(m[0].cols() - 1);
    r = check_deletion(m[0], col, opt);
  }
  print_report(g, r);
  return r.failed() ? kExitFailed : kExitOk;
}

// gallery

struct GalleryArgs {
  std::string family;
  std::optional<double> n, alpha, beta, ratio;
  std::string input;
  std::string kind = "projector";
  std::string p = "2";
  int r = 1;
  std::string out_dir = ".";
  bool rotate = false;
  bool complex_field = false;
};

int run_gallery(const Globals& g, const GalleryArgs& a) {
  FamilyInstance inst;
  try {
    if (a.family == "maximizer_multiplier" || a.family == "minimizer_multiplier" ||
        a.family == "congruence_maximizer" || a.family == "congruence_minimizer") {
      if (a.input.empty()) throw Error(a.family + " requires --input");
      const Matrix m = load(a.input);
      const double alpha = a.alpha.value_or(0.5);
      if (a.family == "maximizer_multiplier") inst = maximizer_multiplier(m, g.rtol);
      else if (a.family == "minimizer_multiplier") inst = minimizer_multiplier(m, alpha, g.rtol);
      else if (a.family == "congruence_maximizer") inst = congruence_maximizer(m, g.rtol);
      else inst = congruence_minimizer(m, alpha, g.rtol);
    } else if (a.family == "equality_cases") {
      const int n = static_cast<int>(a.n.value_or(4));
      inst = equality_cases(equality_kind_from_string(a.kind), n, PExponent::parse(a.p), a.r,
                            g.seed);
    } else {
      std::map<std::string, double> params;
      if (a.n) params["n"] = *a.n;
      if (a.alpha) params["alpha"] = *a.alpha;
      if (a.beta) params["beta"] = *a.beta;
      if (a.ratio) params["ratio"] = *a.ratio;
      FamilyOptions opt;
      if (a.rotate) opt.rotate_seed = g.seed;
      opt.field = a.complex_field ? ScalarField::complex : ScalarField::real;
      opt.rank_tol = g.rtol;
      inst = make_family(a.family, params, opt);
    }
  } catch (const ExitRequest&) {
    throw;
  } catch (const Error& e) {
    throw ExitRequest{kExitUsage, e.what()};
  }

  std::filesystem::create_directories(a.out_dir);
  std::map<std::string, std::string> files;
  for (const auto& [key, m] : inst.matrices) {
    const std::string path =
        (std::filesystem::path(a.out_dir) / (inst.name + "_" + key + ".mtx")).string();
    write_matrix_market(path, m);
    files[key] = path;
  }
  const Json j = to_json(inst, files);
  {
    std::ofstream out(std::filesystem::path(a.out_dir) / (inst.name + ".json"));
    out << j.dump(2) << "\n";
  }

  const std::string f = format_or(g, "json");
  if (f == "json") {
    print_json(j);
  } else {
    if (f == "csv") std::cout << "key,predicted,computed\n";
    std::map<std::string, std::pair<std::optional<double>, std::optional<double>>> rows;
    for (const auto& [k, v] : inst.predicted) rows[k].first = v;
    for (const auto& [k, v] : inst.computed) rows[k].second = v;
    for (const auto& [k, pc] : rows) {
      const std::string pred = pc.first ? fmt(*pc.first) : "";
      const std::string comp = pc.second ? fmt(*pc.second) : "";
      if (f == "csv") std::cout << k << "," << pred << "," << comp << "\n";
      else std::cout << k << ": predicted " << pred << "  computed " << comp << "\n";
    }
    if (f == "text") {
      std::cout << "threshold_met: " << std::boolalpha << inst.threshold_met
                << "\nviolation: " << inst.violation << "\n";
      for (const auto& [k, path] : files) std::cout << k << " -> " << path << "\n";
    }
  }
  return kExitOk;
}

// condition

struct ConditionArgs {
  std::string input;
  std::string perturbation = "gaussian";
  std::string epsilons = "0.01,0.05,0.1,0.3,0.5";
  std::string p = "2";
};

int run_condition(const Globals& g, const ConditionArgs& a) {
  const Matrix m = load(a.input);
  std::vector<double> eps;
  std::vector<ConditionRow> rows;
  PExponent p = PExponent::finite(2.0);
  try {
    for (const auto& s : split_list(a.epsilons)) {
      std::size_t used = 0;
      eps.push_back(std::stod(s, &used));
      if (used != s.size()) throw Error("cannot parse epsilon '" + s + "'");
    }
    p = PExponent::parse(a.p);
    CheckOptions opt;
    opt.rank_tol = g.rtol;
    rows = condition_sweep(m, perturbation_kind_from_string(a.perturbation), eps, p, g.seed, opt);
  } catch (const std::invalid_argument&) {
    throw ExitRequest{kExitUsage, "cannot parse epsilon list '" + a.epsilons + "'"};
  } catch (const Error& e) {
    throw ExitRequest{kExitUsage, e.what()};
  }

  const std::string f = format_or(g, "json");
  if (f == "json") {
    Json j;
    j["schema"] = kJsonSchema;
    j["input"] = a.input;
    j["perturbation"] = a.perturbation;
    j["p"] = p.to_string();
    j["seed"] = g.seed;
    Json arr = Json::array();
    for (const auto& row : rows) arr.push_back(to_json(row));
    j["rows"] = arr;
    print_json(j);
  } else {
    const char* cols[] = {"epsilon",     "status",      "rank_E",    "general_lower",
                          "actual",      "general_upper", "psd_lower", "psd_upper",
                          "slack_lower", "slack_upper"};
    const std::string sep = f == "csv" ? "," : "\t";
    for (std::size_t i = 0; i < std::size(cols); ++i) std::cout << (i ? sep : "") << cols[i];
    std::cout << "\n";
    for (const auto& row : rows) {
      const Json j = to_json(row);
      for (std::size_t i = 0; i < std::size(cols); ++i) {
        const Json& v = j[cols[i]];
        std::cout << (i ? sep : "");
        if (v.is_number()) std::cout << fmt(v.get<double>());
        else if (v.is_string()) std::cout << v.get<std::string>();
      }
      std::cout << "\n";
    }
  }
  return kExitOk;
}

// fuzz

struct FuzzArgs {
  std::uint64_t trials = 100;
  int dims_max = 20;
  std::string distributions;
  std::string p_grid;
  std::string checks;
  unsigned parallelism = 0;
  std::optional<std::uint64_t> replay;
  bool omit_wall_time = false;
};

int run_fuzz_cmd(const Globals& g, const FuzzArgs& a) {
  FuzzConfig config;
  try {
    config.trials = a.trials;
    config.seed = g.seed;
    config.dims_max = a.dims_max;
    config.parallelism = a.parallelism;
    if (!a.distributions.empty()) {
      config.distributions.clear();
      for (const auto& s : split_list(a.distributions)) {
        config.distributions.push_back(sample_kind_from_string(s));
      }
    }
    if (!a.p_grid.empty()) {
      config.p_grid.clear();
      for (const auto& s : split_list(a.p_grid)) config.p_grid.push_back(PExponent::parse(s));
    }
    if (!a.checks.empty()) config.checks = split_list(a.checks);
    config.validate();
  } catch (const Error& e) {
    throw ExitRequest{kExitUsage, e.what()};
  }

  const std::string f = format_or(g, "json");
  if (a.replay) {
    const auto reports = run_trial(config, *a.replay);
    bool failed = false;
    if (f == "json") {
      Json j;
      j["schema"] = kJsonSchema;
      j["trial_seed"] = *a.replay;
      Json arr = Json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      j["reports"] = arr;
      print_json(j);
    } else {
      if (f == "csv") std::cout << "name,status,lhs,rhs,slack\n";
      for (const auto& r : reports) {
        if (f == "csv") {
          std::cout << r.name << "," << r.status() << "," << fmt(r.lhs) << "," << fmt(r.rhs)
                    << "," << fmt(r.slack) << "\n";
        } else {
          print_report(g, r);
        }
      }
    }
    for (const auto& r : reports) failed = failed || r.failed();
    return failed ? kExitFailed : kExitOk;
  }

  const RunReport report = run_fuzz(config);
  if (f == "json") {
    print_json(to_json(report, !a.omit_wall_time));
  } else {
    const std::string sep = f == "csv" ? "," : "\t";
    std::cout << "check" << sep << "total" << sep << "applicable" << sep << "pass" << sep
              << "min_slack" << sep << "argmin_seed\n";
    for (const auto& [name, agg] : report.checks) {
      std::cout << name << sep << agg.total_count << sep << agg.applicable_count << sep
                << agg.pass_count << sep << (agg.has_min ? fmt(agg.min_slack) : "") << sep
                << (agg.has_min ? std::to_string(agg.argmin_instance_seed) : "") << "\n";
    }
    if (f == "text") {
      std::cout << "failures: " << report.failure_count() << "\n";
      for (const auto& fl : report.failures) {
        std::cout << "  trial " << fl.trial_index << " seed " << fl.trial_seed << ": "
                  << fl.report.name << " slack " << fmt(fl.report.slack) << "\n";
      }
      if (!a.omit_wall_time) std::cout << "wall_time: " << report.wall_time << " s\n";
    }
  }
  return report.failures.empty() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"srlab: stable rank, intrinsic dimension and p-stable rank toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--rtol", g.rtol, "Relative tolerance for the numerical rank")
      ->check(CLI::Range(std::numeric_limits<double>::min(), 1.0 - 1e-16));
  app.add_option("--seed", g.seed, "Random seed");

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "Compute a rank-like quantity of a matrix");
  compute->add_option("input", ca.input, "MatrixMarket or CSV file")->required();
  compute->add_option("--quantity,-q", ca.quantity)
      ->check(CLI::IsMember({"srp", "sr", "intdim", "rank", "schatten"}));
  compute->add_option("--p,-p", ca.p, "Exponent (number, 0 or inf)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check one inequality on matrices read from files");
  verify->add_option("check", va.check)->required();
  verify->add_option("inputs", va.inputs)->required();
  verify->add_option("--p,-p", va.p);
  verify->add_option("--k", va.k, "Split index for check_block_intdim");
  verify->add_option("--col", va.col, "Deleted column for check_deletion");

  GalleryArgs ga;
  auto* gallery = app.add_subcommand("gallery", "Build an example family and write its matrices");
  gallery->add_option("family", ga.family)->required();
  gallery->add_option("--n", ga.n);
  gallery->add_option("--alpha", ga.alpha);
  gallery->add_option("--beta", ga.beta);
  gallery->add_option("--ratio", ga.ratio);
  gallery->add_option("--input", ga.input, "Matrix for the multiplier families");
  gallery->add_option("--kind", ga.kind, "equality_cases kind");
  gallery->add_option("--p,-p", ga.p, "equality_cases exponent");
  gallery->add_option("--r", ga.r, "equality_cases rank");
  gallery->add_option("--out,-o", ga.out_dir, "Output directory");
  gallery->add_flag("--rotate", ga.rotate, "Apply a seeded unitary rotation");
  gallery->add_flag("--complex", ga.complex_field, "Rotate with complex unitaries");

  ConditionArgs cda;
  auto* condition = app.add_subcommand("condition", "Perturbation bounds versus epsilon");
  condition->add_option("input", cda.input)->required();
  condition->add_option("--perturbation", cda.perturbation)
      ->check(CLI::IsMember({"gaussian", "psd"}));
  condition->add_option("--eps", cda.epsilons, "Comma-separated relative sizes");
  condition->add_option("--p,-p", cda.p);

  FuzzArgs fa;
  auto* fuzz = app.add_subcommand("fuzz", "Randomized check of every inequality");
  fuzz->add_option("--trials", fa.trials)->check(CLI::PositiveNumber);
  fuzz->add_option("--dims-max", fa.dims_max)->check(CLI::PositiveNumber);
  fuzz->add_option("--distributions", fa.distributions, "Comma-separated sample kinds");
  fuzz->add_option("--p-grid", fa.p_grid, "Comma-separated exponents");
  fuzz->add_option("--checks", fa.checks, "Comma-separated checker names");
  fuzz->add_option("--parallelism,-j", fa.parallelism, "Workers; 0 = SRLAB_THREADS or auto");
  fuzz->add_option("--replay", fa.replay, "Re-run the single trial with this trial seed");
  fuzz->add_flag("--omit-wall-time", fa.omit_wall_time);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*compute) return run_compute(g, ca);
    if (*verify) return run_verify(g, va);
    if (*gallery) return run_gallery(g, ga);
    if (*condition) return run_condition(g, cda);
    if (*fuzz) return run_fuzz_cmd(g, fa);
  } catch (const ExitRequest& r) {
    std::cerr << "srlab: " << r.message << "\n";
    return r.code;
  } catch (const ShapeError& e) {
    std::cerr << "srlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "srlab: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
