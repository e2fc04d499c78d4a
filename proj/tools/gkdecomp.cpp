// Command-line front end: analyze / decompose / rates / tradeoff /
// simulate / network. Exit codes: 0 success, 1 analysis-level failure
// (infeasible network, decode mismatch), 2 input error.

#include "gkd/codec.hpp"
#include "gkd/components.hpp"
#include "gkd/distribution.hpp"
#include "gkd/labeling.hpp"
#include "gkd/network.hpp"
#include "gkd/objectives.hpp"
#include "gkd/search.hpp"
#include "gkd/spectral.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAnalysisFailure = 1;
constexpr int kExitInputError = 2;

std::string fmt(double v) {
  if (v < 0.0 && v > -5e-7) v = 0.0;  // avoid printing "-0.000000"
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
  }
  fs::rename(tmp, target);
}

std::string default_outdir() {
  const char* env = std::getenv("GKDECOMP_OUTDIR");
  return env ? env : ".";
}

void print_warnings(const gkd::JointDistribution& j) {
  if (!j.stripped_x().empty() || !j.stripped_y().empty()) {
    std::cout << "warning: stripped zero-marginal symbols; original indices x=[";
    for (std::size_t i = 0; i < j.stripped_x().size(); ++i)
      std::cout << (i ? "," : "") << j.stripped_x()[i] + 1;
    std::cout << "] y=[";
    for (std::size_t i = 0; i < j.stripped_y().size(); ++i)
      std::cout << (i ? "," : "") << j.stripped_y()[i] + 1;
    std::cout << "]\n";
  }
  if (j.renormalized()) std::cout << "warning: input mass renormalized to 1\n";
}

std::string config_line(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string out = "#";
  for (const auto& [k, v] : kv) out += " " + k + "=" + v;
  return out + "\n";
}

std::string config_json(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string out = "{";
  for (std::size_t i = 0; i < kv.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + kv[i].first + "\": \"" + kv[i].second + "\"";
  }
  return out + "}";
}

int cmd_analyze(const std::string& dist_file) {
  const gkd::JointDistribution j = gkd::load_distribution_file(dist_file);
  print_warnings(j);

  const gkd::GkCommonInformation gk = gkd::gk_common_information(j);
  const gkd::SpectralSummary s = gkd::spectral_summary(j);
  const gkd::LaplacianIdentityReport lap = gkd::verify_laplacian_identity(j);

  std::cout << "alphabet: " << j.nx() << " x " << j.ny() << "\n";
  std::cout << "H(X) = " << fmt(gkd::entropy_bits(j.px())) << "\n";
  std::cout << "H(Y) = " << fmt(gkd::entropy_bits(j.py())) << "\n";
  std::cout << "H(X,Y) = " << fmt(gkd::joint_entropy(j)) << "\n";
  std::cout << "H(X|Y) = " << fmt(gkd::conditional_entropy(j, gkd::CondSide::XGivenY))
            << "\n";
  std::cout << "components = " << gk.decomposition.count << "\n";
  std::cout << "component weights =";
  for (std::size_t c = 0; c < gk.decomposition.weights.size(); ++c)
    std::cout << " " << fmt(gk.decomposition.weights[c]);
  std::cout << "\n";
  std::cout << "H(K) = " << fmt(gk.entropy) << "\n";
  std::cout << "singular values =";
  for (double v : s.singular_values) std::cout << " " << fmt(v);
  std::cout << "\n";
  std::cout << "maximal correlation sigma_2 = " << fmt(s.maximal_correlation) << "\n";
  std::cout << "multiplicity of singular value 1 = " << s.multiplicity_of_one << "\n";
  std::cout << "laplacian nu = " << fmt(lap.nu) << ", 1 - sigma_2 = "
            << fmt(1.0 - lap.sigma2) << ", residual = " << fmt(lap.residual)
            << (lap.pass ? " (identity holds)" : " (identity FAILS)") << "\n";
  std::cout << "residual under the squared convention |nu - (1 - sigma_2^2)| = "
            << fmt(lap.residual_squared_convention) << "\n";
  return kExitOk;
}

struct DecomposeOptions {
  std::string dist_file;
  std::string method = "spectral";
  double lambda = -1.0;
  double epsilon = -1.0;
  int clusters = 2;
  std::string labels_out, report_out, outdir;
};

void print_report(const gkd::JointDistribution& j, const gkd::LabelingPair& l,
                  std::ostream& out) {
  const gkd::DecompositionReport r = gkd::evaluate_labeling(j, l);
  out << "L = " << l.range_size << "\n";
  out << "phi_x =";
  for (int v : l.phi_x) out << " " << v;
  out << "\nphi_y =";
  for (int v : l.phi_y) out << " " << v;
  out << "\n";
  out << "H(phi_X) = " << fmt(r.h_phi_x) << "\n";
  out << "H(phi_Y) = " << fmt(r.h_phi_y) << "\n";
  out << "H(X|phi_X) = " << fmt(r.h_x_given_phi_x) << "\n";
  out << "H(Y|phi_Y) = " << fmt(r.h_y_given_phi_y) << "\n";
  out << "P_err = " << fmt(r.p_err) << "\n";
  out << "helper rate h(P_err) = " << fmt(r.helper_rate_binary) << "\n";
  out << "helper rate H(phi_X|phi_Y) = " << fmt(r.helper_rate_general) << "\n";
  for (const auto& [lam, val] : r.lagrangian_at)
    out << "lagrangian(lambda=" << fmt(lam) << ") = " << fmt(val) << "\n";
  if (l.is_binary()) {
    out << "conductance = ";
    switch (r.conductance.kind) {
      case gkd::ConductanceKind::Finite:
        out << fmt(r.conductance.value);
        break;
      case gkd::ConductanceKind::Infinite:
        out << "infinite";
        break;
      case gkd::ConductanceKind::Undefined:
        out << "undefined (P(phi_X=1) > 1/2)";
        break;
    }
    out << "\n";
  }
  out << "S_X = {";
  for (std::size_t i = 0; i < r.cuts.s_x.size(); ++i)
    out << (i ? "," : "") << r.cuts.s_x[i] + 1;
  out << "}, S_Y = {";
  for (std::size_t i = 0; i < r.cuts.s_y.size(); ++i)
    out << (i ? "," : "") << r.cuts.s_y[i] + 1;
  out << "}\n";
  out << "H(X_cut) = " << fmt(r.cuts.h_x_cut) << "\n";
  out << "H(Y_cut) = " << fmt(r.cuts.h_y_cut) << "\n";
}

int cmd_decompose(const DecomposeOptions& opt) {
  const gkd::JointDistribution j = gkd::load_distribution_file(opt.dist_file);
  print_warnings(j);
  const bool has_lambda = opt.lambda >= 0.0;
  const bool has_epsilon = opt.epsilon >= 0.0;
  if (has_lambda == has_epsilon)
    throw std::invalid_argument("decompose: give exactly one of --lambda / --epsilon");

  gkd::LabelingPair labeling;
  std::string method_desc;
  if (opt.method == "brute") {
    gkd::SearchResult r = has_lambda ? gkd::brute_force_lagrangian(j, opt.lambda)
                                     : gkd::brute_force_constrained(j, opt.epsilon);
    labeling = r.labeling;
    method_desc = "brute";
    std::cout << "objective = " << fmt(r.objective_value) << "\n";
  } else if (opt.method == "spectral") {
    if (opt.clusters > 2) {
      if (!has_lambda)
        throw std::invalid_argument("decompose: --clusters > 2 needs --lambda");
      labeling = gkd::recursive_spectral(j, opt.clusters, opt.lambda);
      method_desc = "spectral-recursive";
    } else {
      gkd::SearchResult r = gkd::spectral_threshold_search(
          j, has_lambda
                 ? gkd::SpectralSearchParams{gkd::ObjectiveKind::Lagrangian, opt.lambda, 0.0}
                 : gkd::SpectralSearchParams{gkd::ObjectiveKind::Constrained, 0.0,
                                             opt.epsilon});
      for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
      labeling = r.labeling;
      method_desc = "spectral";
      std::cout << "objective = " << fmt(r.objective_value) << "\n";
    }
  } else {
    throw std::invalid_argument("decompose: unknown method '" + opt.method + "'");
  }

  print_report(j, labeling, std::cout);

  std::string labels_path = opt.labels_out;
  if (labels_path.empty())
    labels_path = (std::filesystem::path(opt.outdir) / "labeling.json").string();
  const auto cfg = config_json({{"command", "decompose"},
                                {"dist", opt.dist_file},
                                {"method", method_desc},
                                {"lambda", has_lambda ? fmt(opt.lambda) : "-"},
                                {"epsilon", has_epsilon ? fmt(opt.epsilon) : "-"},
                                {"clusters", std::to_string(opt.clusters)}});
  write_atomic(labels_path, gkd::to_labeling_json(labeling, cfg) + "\n");
  std::cout << "labeling written to " << labels_path << "\n";

  if (!opt.report_out.empty()) {
    std::ostringstream os;
    os << config_line({{"command", "decompose"}, {"dist", opt.dist_file}});
    print_report(j, labeling, os);
    write_atomic(opt.report_out, os.str());
  }
  return kExitOk;
}

int cmd_rates(const std::string& dist_file, const std::string& labeling_file,
              int alpha_points, const std::string& out_file) {
  const gkd::JointDistribution j = gkd::load_distribution_file(dist_file);
  const gkd::LabelingPair l = gkd::load_labeling_file(labeling_file);
  l.validate(j.nx(), j.ny());

  std::ostringstream os;
  os << config_line({{"command", "rates"},
                     {"dist", dist_file},
                     {"labeling", labeling_file},
                     {"alpha_points", std::to_string(alpha_points)}});
  os << "alpha,R_X,R_Y,R_H\n";
  if (l.is_binary()) {
    std::vector<double> grid(alpha_points);
    for (int i = 0; i < alpha_points; ++i)
      grid[i] = alpha_points == 1 ? 0.0 : static_cast<double>(i) / (alpha_points - 1);
    const gkd::RateRegion region = gkd::rate_region_binary(j, l, grid);
    for (const auto& pt : region.dominant_face)
      os << fmt(pt.alpha) << "," << fmt(pt.r_x) << "," << fmt(pt.r_y) << ","
         << fmt(pt.r_h) << "\n";
  } else {
    const gkd::RateRegion region = gkd::rate_region_general(j, l);
    for (const auto& c : region.corner_points)
      os << "corner," << fmt(c[0]) << "," << fmt(c[1]) << "," << fmt(c[2]) << "\n";
  }
  if (out_file.empty())
    std::cout << os.str();
  else {
    write_atomic(out_file, os.str());
    std::cout << "rates written to " << out_file << "\n";
  }
  return kExitOk;
}

int cmd_tradeoff(const std::string& dist_file, const std::string& grid_epsilon,
                 const std::string& grid_lambda, const std::string& method,
                 const std::string& out_file) {
  const gkd::JointDistribution j = gkd::load_distribution_file(dist_file);
  if (grid_epsilon.empty() == grid_lambda.empty())
    throw std::invalid_argument(
        "tradeoff: give exactly one of --grid-epsilon / --grid-lambda");

  std::vector<double> grid;
  std::stringstream gs(grid_epsilon.empty() ? grid_lambda : grid_epsilon);
  std::string cell;
  while (std::getline(gs, cell, ',')) grid.push_back(std::stod(cell));
  if (grid.empty()) throw std::invalid_argument("tradeoff: empty grid");

  const gkd::SweepKind kind =
      grid_epsilon.empty() ? gkd::SweepKind::Lambda : gkd::SweepKind::Epsilon;
  gkd::SearchMethod m;
  if (method == "brute")
    m = gkd::SearchMethod::BruteForce;
  else if (method == "spectral")
    m = gkd::SearchMethod::Spectral;
  else
    throw std::invalid_argument("tradeoff: unknown method '" + method + "'");

  const auto points = gkd::tradeoff_sweep(j, kind, grid, m);
  std::ostringstream os;
  os << config_line({{"command", "tradeoff"},
                     {"dist", dist_file},
                     {"grid_kind", kind == gkd::SweepKind::Epsilon ? "epsilon" : "lambda"},
                     {"method", method}});
  os << "param,H_phiX,helper_rate,P_err,method\n";
  for (const auto& p : points)
    os << fmt(p.param) << "," << fmt(p.h_phi_x) << "," << fmt(p.helper_rate) << ","
       << fmt(p.p_err) << "," << method << "\n";
  if (out_file.empty())
    std::cout << os.str();
  else {
    write_atomic(out_file, os.str());
    std::cout << "tradeoff written to " << out_file << "\n";
  }
  return kExitOk;
}

int cmd_simulate(const std::string& dist_file, const std::string& labeling_file,
                 std::string scheme, const std::string& corner, std::uint64_t n,
                 std::uint64_t seed, const std::string& bundle_out,
                 const std::string& bundle_in) {
  const gkd::JointDistribution j = gkd::load_distribution_file(dist_file);

  if (!bundle_in.empty()) {
    // Verification mode: re-derive the block from the recorded (n, seed),
    // decode the bundle against it, and report per-stream rates.
    const gkd::EncodedBundle bundle = gkd::read_bundle_file(bundle_in);
    gkd::LabelingPair labeling;
    const gkd::LabelingPair* lptr = nullptr;
    if (bundle.scheme != "gk") {
      if (labeling_file.empty())
        throw std::invalid_argument("simulate: bundle scheme '" + bundle.scheme +
                                    "' needs a labeling file");
      labeling = gkd::load_labeling_file(labeling_file);
      labeling.validate(j.nx(), j.ny());
      lptr = &labeling;
    }
    std::cout << "bundle scheme = " << bundle.scheme << ", n = " << bundle.n
              << ", seed = " << bundle.seed << "\n";
    for (const auto& s : bundle.streams)
      std::cout << "  " << s.name << ": "
                << fmt(static_cast<double>(s.bit_length) / static_cast<double>(bundle.n))
                << " bits/symbol\n";
    const gkd::SampleBlock expected = gkd::sample(j, bundle.n, bundle.seed);
    gkd::SampleBlock decoded;
    try {
      decoded = gkd::decode_bundle(j, lptr, bundle);
    } catch (const std::exception& e) {
      std::cout << "decode: MISMATCH (" << e.what() << ")\n";
      return kExitAnalysisFailure;
    }
    if (!(decoded == expected)) {
      std::cout << "decode: MISMATCH\n";
      return kExitAnalysisFailure;
    }
    std::cout << "decode: exact\n";
    return kExitOk;
  }

  gkd::LabelingPair labeling;
  const bool needs_labeling = scheme != "gk";
  if (needs_labeling) {
    if (labeling_file.empty())
      throw std::invalid_argument("simulate: scheme '" + scheme + "' needs a labeling file");
    labeling = gkd::load_labeling_file(labeling_file);
    labeling.validate(j.nx(), j.ny());
  }

  const gkd::SampleBlock block = gkd::sample(j, n, seed);
  gkd::SchemeResult result;
  if (scheme == "gk") {
    result = gkd::run_gk_scheme(j, block);
  } else if (scheme == "binary-helper") {
    result = gkd::run_binary_helper_scheme(
        j, labeling, block,
        corner == "y" ? gkd::HelperCorner::YSide : gkd::HelperCorner::XSide);
  } else if (scheme == "general-helper") {
    result = gkd::run_general_helper_scheme(j, labeling, block);
  } else if (scheme == "limited-helper") {
    result = gkd::run_limited_helper_scheme(j, labeling, block);
  } else {
    throw std::invalid_argument("simulate: unknown scheme '" + scheme + "'");
  }

  std::cout << "scheme = " << scheme << ", n = " << n << ", seed = " << seed << "\n";
  std::cout << "stream rates (bits/symbol, empirical vs target):\n";
  for (const auto& s : result.report.streams)
    std::cout << "  " << s.name << ": " << fmt(s.bits_per_symbol) << " vs "
              << fmt(s.target) << "\n";
  std::cout << "sum rate = " << fmt(result.report.total_rate) << " vs "
            << fmt(result.report.total_target) << "\n";

  if (!bundle_out.empty()) {
    namespace fs = std::filesystem;
    const fs::path target(bundle_out);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const std::string tmp = bundle_out + ".tmp";
    gkd::write_bundle_file(result.bundle, tmp);
    fs::rename(tmp, bundle_out);
    std::cout << "bundle written to " << bundle_out << "\n";
  }

  if (!result.report.decoded_ok) {
    std::cout << "decode: MISMATCH\n";
    return kExitAnalysisFailure;
  }
  std::cout << "decode: exact\n";
  return kExitOk;
}

int cmd_network(const std::string& net_file, const std::string& dist_file,
                const std::string& labeling_file, bool limited,
                const std::string& out_file) {
  const gkd::CapacitatedNetwork net = gkd::load_network_file(net_file);
  const gkd::JointDistribution j = gkd::load_distribution_file(dist_file);
  const gkd::LabelingPair l = gkd::load_labeling_file(labeling_file);
  const gkd::FeasibilityReport report =
      limited ? gkd::check_feasibility_limited(net, j, l) : gkd::check_feasibility(net, j, l);

  std::cout << (limited ? "limited-helper" : "omniscient-helper")
            << " feasibility conditions:\n";
  for (const auto& row : report.rows)
    std::cout << "  " << (row.pass ? "[pass]" : "[FAIL]") << " " << row.name
              << " : required " << fmt(row.required) << ", min-cut " << fmt(row.achieved)
              << "\n";
  std::cout << "overall: " << (report.overall ? "feasible" : "infeasible") << "\n";

  if (!out_file.empty()) {
    std::ostringstream os;
    os << config_line({{"command", "network"},
                       {"net", net_file},
                       {"dist", dist_file},
                       {"labeling", labeling_file},
                       {"limited", limited ? "true" : "false"}});
    os << "condition,required,min_cut,pass\n";
    for (const auto& row : report.rows)
      os << row.name << "," << fmt(row.required) << "," << fmt(row.achieved) << ","
         << (row.pass ? "1" : "0") << "\n";
    write_atomic(out_file, os.str());
    std::cout << "rows written to " << out_file << "\n";
  }
  return report.overall ? kExitOk : kExitAnalysisFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gacs-Korner decomposition toolkit: exact and approximate common\n"
               "information, helper-assisted rate regions, zero-error coding\n"
               "simulation, and network min-cut feasibility"};
  app.require_subcommand(1);

  std::string dist_file, labeling_file, net_file, out_file, bundle_out;
  std::string outdir = default_outdir();

  auto* analyze = app.add_subcommand("analyze", "entropies, components, spectrum");
  analyze->add_option("dist", dist_file, "distribution file (.json or .csv)")->required();

  DecomposeOptions dopt;
  auto* decompose = app.add_subcommand("decompose", "search for a labeling pair");
  decompose->add_option("dist", dopt.dist_file)->required();
  decompose->add_option("--method", dopt.method, "spectral | brute")
      ->check(CLI::IsMember({"spectral", "brute"}));
  decompose->add_option("--lambda", dopt.lambda, "Lagrangian weight")
      ->check(CLI::NonNegativeNumber);
  decompose->add_option("--epsilon", dopt.epsilon, "helper-rate budget")
      ->check(CLI::NonNegativeNumber);
  decompose->add_option("--clusters", dopt.clusters, "label count for spectral recursion");
  decompose->add_option("--labels-out", dopt.labels_out, "labeling output path");
  decompose->add_option("--report-out", dopt.report_out, "report output path");

  int alpha_points = 101;
  auto* rates = app.add_subcommand("rates", "achievable rate region CSV");
  rates->add_option("dist", dist_file)->required();
  rates->add_option("labeling", labeling_file)->required();
  rates->add_option("--alpha-grid", alpha_points, "number of alpha grid points");
  rates->add_option("--out", out_file, "CSV output path (default: stdout)");

  std::string grid_epsilon, grid_lambda, method = "brute";
  auto* tradeoff = app.add_subcommand("tradeoff", "frontier sweep CSV");
  tradeoff->add_option("dist", dist_file)->required();
  tradeoff->add_option("--grid-epsilon", grid_epsilon, "comma-separated epsilon grid");
  tradeoff->add_option("--grid-lambda", grid_lambda, "comma-separated lambda grid");
  tradeoff->add_option("--method", method, "brute | spectral")
      ->check(CLI::IsMember({"brute", "spectral"}));
  tradeoff->add_option("--out", out_file, "CSV output path (default: stdout)");

  std::string scheme = "gk", corner = "x", bundle_in;
  std::uint64_t n = 100000, seed = 1;
  auto* simulate = app.add_subcommand("simulate", "end-to-end zero-error coding run");
  simulate->add_option("dist", dist_file)->required();
  simulate->add_option("labeling", labeling_file, "labeling file (optional for gk)");
  simulate->add_option("--scheme", scheme, "gk | binary-helper | general-helper | limited-helper")
      ->check(CLI::IsMember({"gk", "binary-helper", "general-helper", "limited-helper"}));
  simulate->add_option("--corner", corner, "x | y (binary-helper corner)")
      ->check(CLI::IsMember({"x", "y"}));
  simulate->add_option("--n", n, "block length");
  simulate->add_option("--seed", seed, "sampling seed");
  simulate->add_option("--bundle-out", bundle_out, "bundle output path");
  simulate->add_option("--bundle-in", bundle_in, "verify an existing bundle instead of encoding");

  bool limited = false;
  auto* network = app.add_subcommand("network", "min-cut feasibility check");
  network->add_option("net", net_file)->required();
  network->add_option("dist", dist_file)->required();
  network->add_option("labeling", labeling_file)->required();
  network->add_flag("--limited", limited, "use the reduced source-to-helper rates");
  network->add_option("--out", out_file, "machine-readable rows (CSV) output path");

  for (auto* sub : {analyze, decompose, rates, tradeoff, simulate, network})
    sub->add_option("--outdir", outdir, "default output directory");
  dopt.outdir = outdir;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    dopt.outdir = outdir;
    if (analyze->parsed()) return cmd_analyze(dist_file);
    if (decompose->parsed()) return cmd_decompose(dopt);
    if (rates->parsed()) return cmd_rates(dist_file, labeling_file, alpha_points, out_file);
    if (tradeoff->parsed())
      return cmd_tradeoff(dist_file, grid_epsilon, grid_lambda, method, out_file);
    if (simulate->parsed())
      return cmd_simulate(dist_file, labeling_file, scheme, corner, n, seed, bundle_out,
                          bundle_in);
    if (network->parsed())
      return cmd_network(net_file, dist_file, labeling_file, limited, out_file);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAnalysisFailure;
  }
  return kExitInputError;
}
