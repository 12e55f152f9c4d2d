#include "ghzent/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghzent/audit.hpp"
#include "ghzent/detail/numeric.hpp"
#include "ghzent/json_io.hpp"
#include "ghzent/noise.hpp"
#include "ghzent/ree.hpp"
#include "ghzent/separability.hpp"
#include "ghzent/state.hpp"

namespace ghzent {
namespace cli {

namespace {

using nlohmann::json;

constexpr int kExitSeparable = 0;
constexpr int kExitEntangled = 10;
constexpr int kExitGenuine = 20;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 30;

json json_num(double v) { return json::parse(detail::format_sig12(v)); }

std::string csv_num(double v) { return detail::format_sig12(v); }

struct GlobalOpts {
  double eps = eps_crit;
  unsigned seed = 1234;
  bool audit = false;
  std::string format;
  std::string in_path;
  std::string out_path;
};

std::string read_input_text(const GlobalOpts& g, std::istream& in) {
  std::ostringstream ss;
  if (!g.in_path.empty()) {
    std::ifstream f(g.in_path);
    if (!f) throw InputError("cannot open input file: " + g.in_path);
    ss << f.rdbuf();
  } else {
    ss << in.rdbuf();
  }
  return ss.str();
}

// Routes output to --out when given, the injected stream otherwise.
class OutputTarget {
 public:
  OutputTarget(const GlobalOpts& g, std::ostream& fallback) : stream_(&fallback) {
    if (!g.out_path.empty()) {
      file_.open(g.out_path);
      if (!file_) throw InputError("cannot open output file: " + g.out_path);
      stream_ = &file_;
    }
  }
  std::ostream& out() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct Classification {
  std::string label;
  int exit_code = kExitSeparable;
  SeparabilityReport rep;
  BiseparabilityReport bisep;
  double genuine = 0;
};

Classification classify_state(const GhzDiagonalState& s, double eps) {
  Classification c;
  c.rep = is_fully_separable(s, eps);
  c.bisep = biseparability_report(s, eps);
  c.genuine = genuine_ree(s, eps);
  if (c.rep.fully_separable) {
    c.label = std::abs(c.rep.margin) <= eps ? "boundary_fully_separable" : "fully_separable";
    c.exit_code = kExitSeparable;
  } else if (!c.bisep.biseparable) {
    c.label = "genuinely_entangled";
    c.exit_code = kExitGenuine;
  } else {
    c.label = std::abs(c.bisep.max_p - 0.5) <= eps ? "boundary_biseparable" : "entangled_biseparable";
    c.exit_code = kExitEntangled;
  }
  return c;
}

json state_echo(const GhzDiagonalState& s) {
  json values = json::array();
  for (double v : s.p) values.push_back(json_num(v));
  return values;
}

json classification_record(const GhzDiagonalState& s, const Classification& c, double eps) {
  json j;
  j["format"] = "probabilities";
  j["values"] = state_echo(s);
  j["class"] = c.label;
  j["branch"] = c.rep.branch == Branch::MuBranch ? "mu" : "ppt";
  j["lambda_minus"] = json_num(c.rep.lambda_minus);
  j["kappa"] = json_num(c.rep.kappa);
  if (c.rep.mu) j["mu"] = json_num(*c.rep.mu);
  j["ppt"] = c.rep.ppt;
  j["margin"] = json_num(c.rep.margin);
  j["max_p"] = json_num(c.bisep.max_p);
  j["biseparable"] = c.bisep.biseparable;
  j["genuine_ree"] = json_num(c.genuine);
  j["eps_crit"] = json_num(eps);
  return j;
}

// Closed forms in preference order; nullopt when none applies.
std::optional<ReeResult> try_closed_form(const GhzDiagonalState& s, bool rethrow_no_root) {
  if (is_fully_separable(s).fully_separable) {
    ReeResult r;
    r.value = 0.0;
    r.closest = s;
    r.method = ReeMethod::SeparableInput;
    return r;
  }
  try {
    return ree_flat_diagonal(s);
  } catch (const PreconditionViolated&) {
  } catch (const NoValidRoot&) {
    if (rethrow_no_root) throw;
  }
  try {
    return ree_type2(s);
  } catch (const PreconditionViolated&) {
  }
  return std::nullopt;
}

json ree_result_json(const ReeResult& r) {
  json j;
  j["value"] = json_num(r.value);
  j["method"] = ree_method_name(r.method);
  json closest;
  closest["format"] = "probabilities";
  closest["values"] = state_echo(r.closest);
  j["closest"] = closest;
  j["evals"] = r.evals;
  j["residual"] = json_num(r.residual);
  return j;
}

int cmd_classify(const GlobalOpts& g, bool with_ree, std::istream& in, std::ostream& out_stream) {
  const auto t0 = std::chrono::steady_clock::now();
  const GhzDiagonalState s = state_from_json_text(read_input_text(g, in));
  const Classification c = classify_state(s, g.eps);
  json j = classification_record(s, c, g.eps);
  if (with_ree) {
    ReeNumericOptions opts;
    opts.seed = g.seed;
    const ReeResult r = ree_auto(s, opts);
    j["ree"] = json_num(r.value);
    j["ree_method"] = ree_method_name(r.method);
  }
  j["timing_ms"] = json_num(elapsed_ms(t0));
  OutputTarget target(g, out_stream);
  target.out() << j.dump() << "\n";
  return c.exit_code;
}

int cmd_ree(const GlobalOpts& g, const std::string& method, std::istream& in,
            std::ostream& out_stream, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const GhzDiagonalState s = state_from_json_text(read_input_text(g, in));
  ReeNumericOptions opts;
  opts.seed = g.seed;

  ReeResult res;
  if (method == "closed") {
    auto closed = try_closed_form(s, /*rethrow_no_root=*/true);
    if (!closed) throw InputError("no closed form applies to this state; use --method numeric");
    res = *closed;
  } else if (method == "numeric") {
    res = ree_numeric(s, opts);
  } else {
    res = ree_auto(s, opts);
  }

  json j = ree_result_json(res);
  bool audit_failed = false;
  if (g.audit) {
    const ReeResult numeric =
        (res.method == ReeMethod::NumericBoundary || res.method == ReeMethod::PptFace ||
         res.method == ReeMethod::SeparableInput)
            ? res
            : ree_numeric(s, opts);
    json a;
    a["numeric"] = json_num(numeric.value);
    const auto closed = try_closed_form(s, /*rethrow_no_root=*/false);
    if (closed) {
      const double diff = std::abs(closed->value - numeric.value);
      a["closed"] = json_num(closed->value);
      a["difference"] = json_num(diff);
      audit_failed = diff > 1e-6;
    } else {
      const double rs = audit::random_search_ree(s, 4, 6000, g.seed);
      a["random_search"] = json_num(rs);
      a["difference"] = json_num(rs - numeric.value);
      // The random search is an independent upper bound; the numeric
      // value must not exceed it.
      audit_failed = numeric.value > rs + 1e-4;
    }
    j["audit"] = a;
  }
  j["timing_ms"] = json_num(elapsed_ms(t0));
  OutputTarget target(g, out_stream);
  target.out() << j.dump() << "\n";
  if (audit_failed) {
    err << "audit disagreement between solvers: " << j["audit"].dump() << "\n";
    return kExitSolver;
  }
  return 0;
}

int cmd_genuine(const GlobalOpts& g, std::istream& in, std::ostream& out_stream) {
  const auto t0 = std::chrono::steady_clock::now();
  const GhzDiagonalState s = state_from_json_text(read_input_text(g, in));
  const BiseparabilityReport b = biseparability_report(s, g.eps);
  json j;
  j["max_p"] = json_num(b.max_p);
  j["biseparable"] = b.biseparable;
  j["pair_slack"] = json_num(b.pair_slack);
  j["genuine_ree"] = json_num(genuine_ree(s, g.eps));
  j["timing_ms"] = json_num(elapsed_ms(t0));
  OutputTarget target(g, out_stream);
  target.out() << j.dump() << "\n";
  return 0;
}

int cmd_curve(const GlobalOpts& g, int samples, std::ostream& out_stream) {
  const auto rows = symmetric_border_curve(samples);
  OutputTarget target(g, out_stream);
  if (g.format == "json") {
    json arr = json::array();
    for (const auto& row : rows) {
      json r;
      r["a"] = json_num(row[0]);
      r["u"] = json_num(row[1]);
      r["v"] = json_num(row[2]);
      arr.push_back(r);
    }
    target.out() << arr.dump() << "\n";
  } else {
    target.out() << "a,u,v\n";
    for (const auto& row : rows)
      target.out() << csv_num(row[0]) << "," << csv_num(row[1]) << "," << csv_num(row[2]) << "\n";
  }
  return 0;
}

struct SweepParams {
  std::string family;
  int n_qubits = 3;
  double p_start = 0.0;
  double p_end = 1.0;
  int steps = 21;
  bool with_ree = false;
  std::string channel_path;
};

int cmd_sweep(const GlobalOpts& g, const SweepParams& sp, std::istream& in,
              std::ostream& out_stream) {
  OutputTarget target(g, out_stream);
  std::ostream& os = target.out();
  ReeNumericOptions opts;
  opts.seed = g.seed;

  os << "p,class,max_p,ree,genuine_ree\n";
  for (int i = 0; i < sp.steps; ++i) {
    const double t = sp.steps == 1 ? 1.0 : static_cast<double>(i) / (sp.steps - 1);

    if (sp.family == "ghz-noise") {
      const double p = sp.p_start + (sp.p_end - sp.p_start) * t;
      const GhzNoiseSummary info = ghz_noise_family(sp.n_qubits, p);
      std::string label;
      std::string ree_cell;
      if (sp.n_qubits == 3) {
        const GhzDiagonalState s = white_noise_mixture(ghz_basis_state(1), p);
        label = classify_state(s, g.eps).label;
        if (sp.with_ree) ree_cell = csv_num(ree_auto(s, opts).value);
      } else {
        // Beyond three qubits only the genuine/biseparable split is
        // computed (max-weight rule); full separability is out of scope.
        label = info.genuine ? "genuinely_entangled" : "biseparable";
      }
      os << csv_num(p) << "," << label << "," << csv_num(info.max_p) << "," << ree_cell << ","
         << csv_num(info.e_genuine) << "\n";
    } else {  // pauli-channel
      std::ifstream f(sp.channel_path);
      if (!f) throw InputError("cannot open channel file: " + sp.channel_path);
      std::ostringstream ss;
      ss << f.rdbuf();
      const PauliChannelSpec spec = channel_from_json_text(ss.str());

      PauliChannelSpec blended;
      for (std::size_t q = 0; q < 3; ++q) {
        const QubitPauliWeights& w = spec.qubits[q];
        blended.qubits[q] = {1.0 - t + t * w.p_i, t * w.p_x, t * w.p_y, t * w.p_z};
      }
      GhzDiagonalState base = ghz_basis_state(1);
      if (!g.in_path.empty()) base = state_from_json_text(read_input_text(g, in));
      const GhzDiagonalState s = apply_pauli_channel(base, blended);
      const Classification c = classify_state(s, g.eps);
      std::string ree_cell;
      if (sp.with_ree) ree_cell = csv_num(ree_auto(s, opts).value);
      os << csv_num(t) << "," << c.label << "," << csv_num(c.bisep.max_p) << "," << ree_cell
         << "," << csv_num(c.genuine) << "\n";
    }
  }
  return 0;
}

// ---- audit subcommand ------------------------------------------------------

GhzDiagonalState random_audit_state(std::mt19937_64& rng, int style) {
  auto uniform = [&] { return detail::uniform01(rng()); };
  std::array<double, 8> p{};
  for (double& v : p) v = -std::log(std::max(uniform(), 1e-18));
  if (style % 3 == 1) {
    // sparse support
    const int zeros = 1 + static_cast<int>(uniform() * 4.0);
    for (int z = 0; z < zeros; ++z) p[static_cast<std::size_t>(uniform() * 7.99)] = 0.0;
  }
  double total = 0.0;
  for (double v : p) total += v;
  if (total <= 0.0) p[0] = total = 1.0;
  for (double& v : p) v /= total;
  if (style % 3 == 2) {
    // pull toward a boundary configuration to stress the margin logic
    const double a = uniform() * 1.0471975511965976;
    const AngleSet angles{a, a, -3.0 * a};
    const DensityEntries b = boundary_point(angles, 0.125);
    const GhzDiagonalState edge = from_density_entries(b);
    const double w = uniform();
    for (std::size_t k = 0; k < 8; ++k) p[k] = (1.0 - w) * p[k] + w * edge.p[k];
  }
  return from_probabilities(p);
}

int cmd_audit(const GlobalOpts& g, int trials, bool has_input, std::istream& in,
              std::ostream& out_stream, std::ostream& err) {
  OutputTarget target(g, out_stream);
  std::ostream& os = target.out();
  int failures = 0;
  auto report = [&](bool ok, const std::string& name, const std::string& detail) {
    os << (ok ? "OK   " : "FAIL ") << name << (detail.empty() ? "" : "  " + detail) << "\n";
    if (!ok) ++failures;
  };

  if (has_input) {
    const GhzDiagonalState s = state_from_json_text(read_input_text(g, in));
    const auto eig = audit::dense_eigenvalues(audit::build_dense(s));
    std::array<double, 8> sorted = s.p;
    std::sort(sorted.begin(), sorted.end());
    double dev = 0.0;
    for (std::size_t k = 0; k < 8; ++k) dev = std::max(dev, std::abs(eig[k] - sorted[k]));
    report(dev <= 1e-10, "eigenvalue_spectrum", "max_dev=" + detail::format_sig12(dev));

    const auto ppt = audit::ppt_all_cuts(s);
    const bool ppt_fast = is_ppt(s);
    const bool near = std::abs(ppt.worst) <= 2e-9;
    report(near || ppt.all_nonnegative == ppt_fast, "ppt_oracle",
           "worst_eigenvalue=" + detail::format_sig12(ppt.worst));

    const SeparabilityReport rep = is_fully_separable(s, g.eps);
    bool witness_ok = true;
    std::string witness_detail = "margin=" + detail::format_sig12(rep.margin);
    if (std::abs(rep.margin) > 1e-6) {
      const bool no_violation = necessary_check(s, 48, g.seed);
      witness_ok = no_violation == rep.fully_separable;
      witness_detail += no_violation ? " witness=clean" : " witness=violated";
    } else {
      witness_detail += " witness=skipped(boundary)";
    }
    report(witness_ok, "witness_agreement", witness_detail);

    if (!rep.fully_separable) {
      ReeNumericOptions opts;
      opts.seed = g.seed;
      const ReeResult r = ree_auto(s, opts);
      const double rs = audit::random_search_ree(s, 4, 6000, g.seed);
      report(r.value <= rs + 1e-4, "ree_upper_bound",
             "solver=" + detail::format_sig12(r.value) + " random_search=" + detail::format_sig12(rs));
    }
  } else {
    std::mt19937_64 rng(g.seed);
    int witness_checked = 0, witness_agree = 0;
    int sep_count = 0, sep_ppt_bad = 0;
    double worst_spectrum = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
      const GhzDiagonalState s = random_audit_state(rng, trial);

      const auto eig = audit::dense_eigenvalues(audit::build_dense(s));
      std::array<double, 8> sorted = s.p;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t k = 0; k < 8; ++k)
        worst_spectrum = std::max(worst_spectrum, std::abs(eig[k] - sorted[k]));

      const SeparabilityReport rep = is_fully_separable(s, g.eps);
      if (rep.fully_separable) {
        ++sep_count;
        if (!audit::ppt_all_cuts(s).all_nonnegative) ++sep_ppt_bad;
      }
      if (std::abs(rep.margin) > 1e-6 && trial % 5 == 0) {
        ++witness_checked;
        if (necessary_check(s, 32, g.seed + static_cast<unsigned>(trial)) == rep.fully_separable)
          ++witness_agree;
      }
    }
    report(worst_spectrum <= 1e-10, "eigenvalue_spectrum",
           "trials=" + std::to_string(trials) + " max_dev=" + detail::format_sig12(worst_spectrum));
    report(sep_ppt_bad == 0, "separable_implies_ppt",
           "separable=" + std::to_string(sep_count) + " violations=" + std::to_string(sep_ppt_bad));
    report(witness_agree == witness_checked, "witness_agreement",
           "checked=" + std::to_string(witness_checked) + " agree=" + std::to_string(witness_agree));

    // Soundness probe: explicit mixtures of dephased product states must
    // always be accepted by the classifier.
    int sound_bad = 0;
    const int sound_trials = std::max(trials / 2, 25);
    for (int trial = 0; trial < sound_trials; ++trial) {
      auto uniform = [&] { return detail::uniform01(rng()); };
      std::array<double, 8> mix{};
      const int terms = 1 + static_cast<int>(uniform() * 4.0);
      double wtotal = 0.0;
      for (int m = 0; m < terms; ++m) {
        const double w = 0.05 + uniform();
        const std::array<double, 3> u{3.2 * uniform(), 3.2 * uniform(), 3.2 * uniform()};
        const std::array<double, 3> phi{6.3 * uniform(), 6.3 * uniform(), 6.3 * uniform()};
        const GhzDiagonalState term = audit::dephased_product_state(u, phi);
        for (std::size_t k = 0; k < 8; ++k) mix[k] += w * term.p[k];
        wtotal += w;
      }
      for (double& v : mix) v /= wtotal;
      const SeparabilityReport rep = is_fully_separable(from_probabilities(mix));
      if (rep.margin < -1e-9) ++sound_bad;
    }
    report(sound_bad == 0, "product_mixture_soundness",
           "trials=" + std::to_string(sound_trials) + " rejected=" + std::to_string(sound_bad));
  }

  if (failures > 0) {
    err << "audit failed: " << failures << " check(s)\n";
    os << "AUDIT FAIL\n";
    return kExitSolver;
  }
  os << "AUDIT PASS\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Classification and entanglement toolkit for GHZ-diagonal three-qubit states"};
  app.name("ghzent");
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--eps-crit", g.eps, "criterion tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for stochastic fallbacks")->capture_default_str();
  app.add_flag("--audit", g.audit, "cross-check results against independent solvers");
  app.add_option("--format", g.format, "output format where applicable")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--in", g.in_path, "input file (default: stdin)");
  app.add_option("--out", g.out_path, "output file (default: stdout)");

  auto* classify = app.add_subcommand("classify", "full separability / biseparability classification");
  bool classify_ree = false;
  classify->add_flag("--ree", classify_ree, "include the relative entropy of entanglement");
  classify->fallthrough();

  auto* ree = app.add_subcommand("ree", "relative entropy of entanglement and closest state");
  std::string ree_method = "auto";
  ree->add_option("--method", ree_method, "solver selection")
      ->check(CLI::IsMember({"auto", "closed", "numeric"}))
      ->capture_default_str();
  ree->fallthrough();

  auto* genuine = app.add_subcommand("genuine", "genuine-multipartite entanglement measure");
  genuine->fallthrough();

  auto* curve = app.add_subcommand("curve", "export the symmetric-slice border curve");
  int curve_samples = 64;
  curve->add_option("--samples", curve_samples, "number of rows")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  curve->fallthrough();

  auto* sweep = app.add_subcommand("sweep", "classify a one-parameter family");
  SweepParams sp;
  sweep->add_option("--family", sp.family, "family to sweep")
      ->check(CLI::IsMember({"ghz-noise", "pauli-channel"}))
      ->required();
  sweep->add_option("--n", sp.n_qubits, "qubit count for ghz-noise")->check(CLI::Range(2, 30));
  sweep->add_option("--p-start", sp.p_start, "first mixing weight");
  sweep->add_option("--p-end", sp.p_end, "last mixing weight");
  sweep->add_option("--steps", sp.steps, "row count")->check(CLI::Range(1, 100000));
  sweep->add_flag("--ree", sp.with_ree, "add the ree column (three qubits only)");
  sweep->add_option("--channel", sp.channel_path, "channel spec JSON file (pauli-channel)");
  sweep->fallthrough();

  auto* audit_cmd = app.add_subcommand("audit", "independent oracle cross-checks");
  int audit_trials = 200;
  audit_cmd->add_option("--trials", audit_trials, "battery size without --in")
      ->check(CLI::Range(1, 1000000));
  audit_cmd->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (app.got_subcommand(classify)) return cmd_classify(g, classify_ree, in, out);
    if (app.got_subcommand(ree)) return cmd_ree(g, ree_method, in, out, err);
    if (app.got_subcommand(genuine)) return cmd_genuine(g, in, out);
    if (app.got_subcommand(curve)) return cmd_curve(g, curve_samples, out);
    if (app.got_subcommand(sweep)) {
      if (sp.family == "pauli-channel" && sp.channel_path.empty())
        throw InputError("--channel is required for the pauli-channel family");
      return cmd_sweep(g, sp, in, out);
    }
    if (app.got_subcommand(audit_cmd))
      return cmd_audit(g, audit_trials, !g.in_path.empty(), in, out, err);
  } catch (const ConvergenceFailure& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const NoValidRoot& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace cli
}  // namespace ghzent
