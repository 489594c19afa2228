// ptchain: exact-plus-numeric toolkit for PT-symmetric tridiagonal chain
// Hamiltonians. Subcommands map onto the library modules; results are
// emitted as JSON (exact values as strings) or CSV (boundary curves).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "ptchain/chain.hpp"
#include "ptchain/domain.hpp"
#include "ptchain/eep.hpp"
#include "ptchain/metric.hpp"
#include "ptchain/parallel.hpp"
#include "ptchain/rational.hpp"
#include "ptchain/version.hpp"

using json = nlohmann::ordered_json;
using namespace ptchain;

namespace {

struct UsageErrors {
  std::vector<std::string> lines;
  void add(const std::string& field, const std::string& what) {
    lines.push_back(field + ": " + what);
  }
  bool any() const { return !lines.empty(); }
};

struct JobConfig {
  std::string command;
  std::string family = "symmetrized";
  int dimension = 0;
  std::vector<std::string> couplings;  // central-first letters for symmetrized
  bool squared = false;
  bool inexact = false;
  std::vector<std::string> diag, super, sub;

  // boundary
  std::vector<std::string> axes;
  std::vector<std::string> window;
  int resolution = 100;
  std::string tolerance = "1/1000000000";
  std::map<std::string, std::string> fixed;  // letter -> exact squared value
  bool extremeRay = true;

  // metric
  std::vector<double> weights;

  // eep sweeps
  int nMin = 0, nMax = 0;

  std::string out;
  std::string format;  // "json" or "csv"; boundary defaults to csv

  // recorded decimal->dyadic conversion errors (field name -> exact error)
  std::vector<std::pair<std::string, std::string>> conversionErrors;
};

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Rational parse_exact_or_inexact(const std::string& text, const std::string& field,
                                JobConfig& cfg, UsageErrors& errors) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    if (!cfg.inexact) {
      errors.add(field, "'" + text + "' is not an exact rational (pass --inexact to accept decimals)");
      return Rational(0);
    }
  }
  try {
    const auto converted = parse_decimal_inexact(text);
    if (converted.error != 0)
      cfg.conversionErrors.emplace_back(field + "=" + text, to_string(converted.error));
    return converted.value;
  } catch (const std::invalid_argument&) {
    errors.add(field, "'" + text + "' is not a number");
    return Rational(0);
  }
}

std::vector<Rational> parse_value_list(const std::vector<std::string>& texts,
                                       const std::string& field, JobConfig& cfg,
                                       UsageErrors& errors) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < texts.size(); ++i)
    out.push_back(parse_exact_or_inexact(texts[i], field + "[" + std::to_string(i) + "]",
                                         cfg, errors));
  return out;
}

/// Splits "x,y,z" into trimmed pieces.
std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

ChainFamily parse_family(const std::string& name, UsageErrors& errors) {
  if (name == "symmetrized") return ChainFamily::Symmetrized;
  if (name == "general-pt") return ChainFamily::GeneralPT;
  if (name == "general-tridiagonal") return ChainFamily::GeneralTridiagonal;
  errors.add("family", "unknown family '" + name + "'");
  return ChainFamily::Symmetrized;
}

/// Builds the ChainSpec (and the squared central-first values for
/// symmetrized models) from the textual config.
struct ModelInput {
  ChainSpec spec;
  std::vector<Rational> squaredCentralFirst;  // symmetrized only
  bool usable = false;
};

ModelInput build_model(JobConfig& cfg, UsageErrors& errors) {
  ModelInput m;
  m.spec.family = parse_family(cfg.family, errors);
  m.spec.dimension = cfg.dimension;
  if (cfg.dimension < 2) {
    errors.add("N", "dimension must be at least 2");
    return m;
  }
  switch (m.spec.family) {
    case ChainFamily::Symmetrized: {
      const int h = half_dimension(cfg.dimension);
      const auto values = parse_value_list(cfg.couplings, "couplings", cfg, errors);
      if (static_cast<int>(values.size()) != h) {
        errors.add("couplings", "expected " + std::to_string(h) +
                                    " central-first values for N = " +
                                    std::to_string(cfg.dimension));
        return m;
      }
      if (cfg.squared) {
        m.squaredCentralFirst = values;
        for (const auto& v : values)
          if (v < 0) errors.add("couplings", "squared coupling '" + to_string(v) + "' is negative");
        // plain couplings only exist up to sign; leave the coupling list empty
      } else {
        for (const auto& v : values) m.squaredCentralFirst.push_back(v * v);
        m.spec.couplings.assign(values.rbegin(), values.rend());  // storage: outermost first
      }
      break;
    }
    case ChainFamily::GeneralPT: {
      const auto values = parse_value_list(cfg.couplings, "couplings", cfg, errors);
      if (static_cast<int>(values.size()) != cfg.dimension - 1) {
        errors.add("couplings", "expected N-1 values");
        return m;
      }
      m.spec.couplings = values;
      break;
    }
    case ChainFamily::GeneralTridiagonal: {
      m.spec.diag = parse_value_list(cfg.diag, "diag", cfg, errors);
      m.spec.super = parse_value_list(cfg.super, "super", cfg, errors);
      m.spec.sub = parse_value_list(cfg.sub, "sub", cfg, errors);
      if (static_cast<int>(m.spec.diag.size()) != cfg.dimension ||
          static_cast<int>(m.spec.super.size()) != cfg.dimension - 1 ||
          static_cast<int>(m.spec.sub.size()) != cfg.dimension - 1) {
        errors.add("diag/super/sub", "need N, N-1 and N-1 entries");
        return m;
      }
      break;
    }
  }
  m.usable = !errors.any();
  return m;
}

json model_block(const JobConfig& cfg) {
  json j;
  j["family"] = cfg.family;
  j["N"] = cfg.dimension;
  if (!cfg.couplings.empty()) {
    j["couplings"] = cfg.couplings;
    j["couplingsOrder"] = "central-first";
    j["squared"] = cfg.squared;
  }
  if (!cfg.diag.empty()) {
    j["diag"] = cfg.diag;
    j["super"] = cfg.super;
    j["sub"] = cfg.sub;
  }
  if (!cfg.conversionErrors.empty()) {
    json errs = json::object();
    for (const auto& [field, err] : cfg.conversionErrors) errs[field] = err;
    j["inexactConversionError"] = errs;
  }
  return j;
}

json header(const std::string& command) {
  json j;
  j["command"] = command;
  j["version"] = kVersion;
  return j;
}

void write_output(const JobConfig& cfg, const std::string& payload) {
  if (cfg.out.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write to '" + cfg.out + "'");
  file << payload;
}

MembershipVerdict classify_model(const ModelInput& model) {
  if (model.spec.family == ChainFamily::Symmetrized)
    return classify_squared(model.spec.dimension, model.squaredCentralFirst);
  return classify_point(model.spec);
}

json verdict_block(const MembershipVerdict& verdict) {
  json j;
  j["class"] = to_string(verdict.cls);
  j["exactPath"] = verdict.exactPath;
  if (verdict.exactPath) j["realRootCountS"] = verdict.realRootCountS;
  j["certificate"] = verdict.certificate.to_string();
  return j;
}

int run_classify(JobConfig& cfg, UsageErrors& errors) {
  const auto model = build_model(cfg, errors);
  if (errors.any()) return 1;
  json j = header("classify");
  j["model"] = model_block(cfg);
  j.update(verdict_block(classify_model(model)));
  write_output(cfg, j.dump(2));
  return 0;
}

Eigen::MatrixXd dense_from_model(const ModelInput& model) {
  if (model.spec.family != ChainFamily::Symmetrized || !model.spec.couplings.empty())
    return to_dense(build_chain(model.spec));
  // squared symmetrized input: rebuild the matrix with positive square roots
  const int n = model.spec.dimension;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) h(k, k) = n - 1 - 2 * k;
  for (int e = 0; e < n - 1; ++e) {
    const auto letter = static_cast<std::size_t>(symmetrized_letter_of_edge(n, e));
    const double c = std::sqrt(to_double(model.squaredCentralFirst[letter]));
    h(e, e + 1) = c;
    h(e + 1, e) = -c;
  }
  return h;
}

int run_spectrum(JobConfig& cfg, UsageErrors& errors) {
  const auto model = build_model(cfg, errors);
  if (errors.any()) return 1;
  json j = header("spectrum");
  j["model"] = model_block(cfg);
  auto values = eigen_numeric(dense_from_model(model)).values;
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  json energies = json::array();
  for (const auto& z : values) energies.push_back({z.real(), z.imag()});
  j["energies"] = energies;
  if (model.spec.family == ChainFamily::Symmetrized) {
    const auto form = secular_from_squared(model.spec.dimension, model.squaredCentralFirst);
    j["sPoly"] = form.sPoly.to_string();
    j.update(verdict_block(classify_model(model)));
  }
  write_output(cfg, j.dump(2));
  return 0;
}

int run_bound_check(JobConfig& cfg, UsageErrors& errors) {
  const auto model = build_model(cfg, errors);
  if (errors.any()) return 1;
  if (model.spec.family != ChainFamily::Symmetrized) {
    errors.add("family", "bound-check covers the symmetrized family");
    return 1;
  }
  json j = header("bound-check");
  j["model"] = model_block(cfg);
  const Rational norm =
      coupling_norm_squared(model.spec.dimension, model.squaredCentralFirst);
  const Rational bound = eep_closed_form(model.spec.dimension).boundValue;
  j["norm"] = to_string(norm);
  j["bound"] = to_string(bound);
  j["inside"] = norm <= bound;
  write_output(cfg, j.dump(2));
  return 0;
}

json report_block(const VerificationReport& report) {
  json j;
  j["N"] = report.solution.N;
  j["halfDim"] = report.solution.halfDim;
  json sq = json::array();
  for (const auto& v : report.solution.squaredCouplings) sq.push_back(v.str());
  j["squaredCouplings"] = sq;
  j["boundValue"] = to_string(report.solution.boundValue);
  j["signChoices"] = report.solution.signChoices.str();
  json res = json::array();
  for (const auto& r : report.insertionZeros) res.push_back(to_string(r));
  j["insertionResiduals"] = res;
  j["degeneracyConfirmed"] = report.degeneracyConfirmed;
  j["boundIdentityHolds"] = report.boundIdentityHolds;
  j["numericEigenvalueMaxModulus"] = report.numericEigenvalueMaxModulus;
  j["passed"] = report.passed();
  return j;
}

int run_eep_verify(JobConfig& cfg, UsageErrors& errors) {
  int lo = cfg.nMin, hi = cfg.nMax;
  if (lo == 0 && hi == 0) lo = hi = cfg.dimension;
  if (lo < 2 || hi < lo) {
    errors.add("N", "need N >= 2 (or a valid --n-min/--n-max range)");
    return 1;
  }
  std::vector<VerificationReport> reports(static_cast<std::size_t>(hi - lo + 1));
  parallel_for(reports.size(),
               [&](std::size_t i) { reports[i] = verify_eep(lo + static_cast<int>(i)); });
  bool all_passed = true;
  json j = header("eep-verify");
  if (reports.size() == 1) {
    j.update(report_block(reports[0]));
    all_passed = reports[0].passed();
  } else {
    json arr = json::array();
    for (const auto& r : reports) {
      arr.push_back(report_block(r));
      all_passed = all_passed && r.passed();
    }
    j["reports"] = arr;
  }
  j["allPassed"] = all_passed;
  write_output(cfg, j.dump(2));
  return all_passed ? 0 : 2;
}

int run_eep_eliminate(JobConfig& cfg, UsageErrors& errors) {
  if (cfg.dimension < 4 || cfg.dimension > 7) {
    errors.add("N", "elimination is supported for N in {4, 5, 6, 7}");
    return 1;
  }
  const auto e = eliminate_eep_system(cfg.dimension);
  json j = header("eep-eliminate");
  j["N"] = cfg.dimension;
  j["variable"] = e.variable;
  j["eliminant"] = e.polynomial.to_string();
  json roots = json::array();
  for (const auto& r : e.realRoots) {
    json root;
    if (r.exact) {
      root["exact"] = to_string(*r.exact);
    } else {
      root["lo"] = to_string(r.lo);
      root["hi"] = to_string(r.hi);
    }
    root["approx"] = r.approx();
    root["sign"] = r.sign();
    roots.push_back(root);
  }
  j["realRoots"] = roots;
  json branches = json::array();
  for (const auto& b : e.reconstructedSolutions) {
    json branch;
    json values = json::object();
    for (const auto& [letter, v] : b.values)
      values[letter] = b.allExact ? to_string(v) : format_sig12(to_double(v));
    branch["values"] = values;
    branch["allExact"] = b.allExact;
    branch["complete"] = b.complete;
    branch["spurious"] = b.spurious;
    if (!b.reason.empty()) branch["reason"] = b.reason;
    branch["survived"] = b.survived;
    branches.push_back(branch);
  }
  j["branches"] = branches;
  j["ok"] = e.ok;
  j["branchLog"] = e.branchLog;
  write_output(cfg, j.dump(2));
  return e.ok ? 0 : 2;
}

int run_metric(JobConfig& cfg, UsageErrors& errors) {
  const auto model = build_model(cfg, errors);
  if (errors.any()) return 1;
  std::vector<double> weights = cfg.weights;
  if (weights.empty()) weights.assign(static_cast<std::size_t>(cfg.dimension), 1.0);
  if (static_cast<int>(weights.size()) != cfg.dimension) {
    errors.add("weights", "need one positive weight per level");
    return 1;
  }
  for (double w : weights)
    if (!(w > 0.0)) {
      errors.add("weights", "weights must be positive");
      return 1;
    }

  const auto verdict = classify_model(model);
  json j = header("metric");
  j["model"] = model_block(cfg);
  j.update(verdict_block(verdict));
  if (verdict.cls != SpectrumClass::RealSimple) {
    j["error"] = "metric construction requires a RealSimple point";
    write_output(cfg, j.dump(2));
    return 2;
  }
  const Eigen::MatrixXd h = dense_from_model(model);
  const auto basis = biorthogonal_decomposition(h);
  const auto metric = build_metric(basis, h, weights);
  j["weights"] = weights;
  j["weightsNote"] = "any positive weights define a valid metric; ones are the toolkit default";
  j["energies"] = basis.energies;
  json theta = json::array();
  for (int r = 0; r < metric.theta.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < metric.theta.cols(); ++c) row.push_back(metric.theta(r, c));
    theta.push_back(row);
  }
  j["theta"] = theta;
  j["residual"] = metric.residual;
  j["minEigenvalueEstimate"] = metric.minEigenvalueEstimate;
  write_output(cfg, j.dump(2));
  return 0;
}

int run_boundary(JobConfig& cfg, UsageErrors& errors) {
  // couplings and axes may be omitted: default to the zero point and to
  // the first one or two letters of the symmetrized model
  if (cfg.family == "symmetrized" && cfg.dimension >= 2) {
    if (cfg.couplings.empty())
      cfg.couplings.assign(static_cast<std::size_t>(half_dimension(cfg.dimension)), "0");
    if (cfg.axes.empty())
      cfg.axes = half_dimension(cfg.dimension) >= 2 ? std::vector<std::string>{"a", "b"}
                                                    : std::vector<std::string>{"a"};
  }
  const auto model = build_model(cfg, errors);
  if (errors.any()) return 1;

  std::vector<AxisRef> axes;
  const auto letters = model.spec.family == ChainFamily::Symmetrized
                           ? coupling_letters(half_dimension(cfg.dimension))
                           : std::vector<std::string>{};
  for (const auto& name : cfg.axes) {
    AxisRef ax;
    ax.label = name;
    if (model.spec.family == ChainFamily::Symmetrized) {
      ax.kind = AxisRef::Kind::SymmetrizedLetter;
      bool found = false;
      for (std::size_t i = 0; i < letters.size(); ++i) {
        std::string lower = letters[i];
        lower[0] = static_cast<char>(std::tolower(lower[0]));
        if (name == lower || name == letters[i]) {
          ax.index = static_cast<int>(i);
          found = true;
        }
      }
      if (!found) errors.add("axes", "unknown coupling letter '" + name + "'");
    } else {
      // general model: "a" varies super[k], "b" varies sub[k]
      if (name == "a" || name.rfind("super", 0) == 0) {
        ax.kind = AxisRef::Kind::Super;
        ax.index = name == "a" ? 0 : std::atoi(name.c_str() + 5);
      } else if (name == "b" || name.rfind("sub", 0) == 0) {
        ax.kind = AxisRef::Kind::Sub;
        ax.index = name == "b" ? 0 : std::atoi(name.c_str() + 3);
      } else {
        errors.add("axes", "unknown axis '" + name + "' (use a/b or superK/subK)");
      }
    }
    axes.push_back(ax);
  }
  if (axes.empty() || axes.size() > 2) errors.add("axes", "need one or two axes");

  BoundaryWindow window;
  const auto wvals = parse_value_list(cfg.window, "window", cfg, errors);
  if (wvals.size() == 2 && axes.size() == 1) {
    window.xlo = wvals[0];
    window.xhi = wvals[1];
  } else if (wvals.size() == 4 && axes.size() == 2) {
    window.xlo = wvals[0];
    window.xhi = wvals[1];
    window.ylo = wvals[2];
    window.yhi = wvals[3];
  } else {
    errors.add("window", "need xlo,xhi for one axis or xlo,xhi,ylo,yhi for two");
  }

  BoundaryOptions opts;
  opts.resolution = cfg.resolution;
  opts.includeExtremeRay = cfg.extremeRay;
  try {
    opts.tolerance = parse_rational(cfg.tolerance);
  } catch (const std::invalid_argument&) {
    errors.add("tolerance", "'" + cfg.tolerance + "' is not an exact rational");
  }
  for (const auto& [letter, value] : cfg.fixed) {
    bool found = false;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      std::string lower = letters[i];
      lower[0] = static_cast<char>(std::tolower(lower[0]));
      if (letter == lower || letter == letters[i]) {
        try {
          opts.fixedSquared.emplace_back(static_cast<int>(i), parse_rational(value));
        } catch (const std::invalid_argument&) {
          errors.add("fixed", "'" + value + "' is not an exact rational");
        }
        found = true;
      }
    }
    if (!found) errors.add("fixed", "unknown coupling letter '" + letter + "'");
  }
  if (errors.any()) return 1;

  const auto curve = trace_boundary(model.spec, axes, window, opts);

  json meta = header("boundary");
  meta["model"] = model_block(cfg);
  json axnames = json::array();
  for (const auto& ax : axes) axnames.push_back(ax.label);
  meta["axes"] = axnames;
  json fixed = json::object();
  for (const auto& [letter, value] : curve.fixedSquared) fixed[letter] = to_string(value);
  meta["fixedSquared"] = fixed;
  json win = json::array();
  for (const auto& v : wvals) win.push_back(to_string(v));
  meta["window"] = win;
  meta["resolution"] = curve.resolution;
  meta["tolerance"] = to_string(opts.tolerance);
  meta["extremeRay"] = cfg.extremeRay;
  meta["windowUniform"] = curve.windowUniform;
  meta["pointCount"] = curve.points.size();

  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  if (format == "json") {
    json pts = json::array();
    for (const auto& p : curve.points) {
      if (axes.size() == 2)
        pts.push_back({p[0], p[1]});
      else
        pts.push_back(p[0]);
    }
    meta["points"] = pts;
    write_output(cfg, meta.dump(2));
    return 0;
  }

  std::string csv;
  for (std::size_t k = 0; k < axes.size(); ++k)
    csv += (k ? "," : "") + axes[k].label;
  csv += "\n";
  for (const auto& p : curve.points) {
    csv += format_sig12(p[0]);
    if (axes.size() == 2) csv += "," + format_sig12(p[1]);
    csv += "\n";
  }
  write_output(cfg, csv);
  if (!cfg.out.empty()) {
    std::ofstream side(cfg.out + ".meta.json", std::ios::binary);
    if (!side) throw std::runtime_error("cannot write metadata sidecar");
    side << meta.dump(2);
  }
  return 0;
}

void load_config_file(const std::string& path, JobConfig& cfg, UsageErrors& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.add("config", "cannot open '" + path + "'");
    return;
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    errors.add("config", std::string("invalid JSON: ") + e.what());
    return;
  }
  const auto str_list = [&](const json& v, const std::string& field) {
    std::vector<std::string> out;
    if (v.is_string()) return split_list(v.get<std::string>());
    if (!v.is_array()) {
      errors.add(field, "expected a list");
      return out;
    }
    for (const auto& item : v) {
      if (item.is_string())
        out.push_back(item.get<std::string>());
      else if (item.is_number_integer())
        out.push_back(std::to_string(item.get<long long>()));
      else
        errors.add(field, "expected exact values as strings");
    }
    return out;
  };
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "command") cfg.command = value.get<std::string>();
      else if (key == "family") cfg.family = value.get<std::string>();
      else if (key == "N") cfg.dimension = value.get<int>();
      else if (key == "couplings") cfg.couplings = str_list(value, key);
      else if (key == "squared") cfg.squared = value.get<bool>();
      else if (key == "inexact") cfg.inexact = value.get<bool>();
      else if (key == "diag") cfg.diag = str_list(value, key);
      else if (key == "super") cfg.super = str_list(value, key);
      else if (key == "sub") cfg.sub = str_list(value, key);
      else if (key == "axes") cfg.axes = str_list(value, key);
      else if (key == "window") cfg.window = str_list(value, key);
      else if (key == "resolution") cfg.resolution = value.get<int>();
      else if (key == "tolerance") cfg.tolerance = value.get<std::string>();
      else if (key == "fixed") {
        for (const auto& [letter, v] : value.items())
          cfg.fixed[letter] = v.is_string() ? v.get<std::string>()
                                            : std::to_string(v.get<long long>());
      } else if (key == "extremeRay") cfg.extremeRay = value.get<bool>();
      else if (key == "weights") cfg.weights = value.get<std::vector<double>>();
      else if (key == "nMin") cfg.nMin = value.get<int>();
      else if (key == "nMax") cfg.nMax = value.get<int>();
      else if (key == "out") cfg.out = value.get<std::string>();
      else if (key == "format") cfg.format = value.get<std::string>();
      else errors.add(key, "unknown config field");
    } catch (const json::exception&) {
      errors.add(key, "wrong type");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PT-symmetric chain toolkit: quasi-Hermiticity domains, extreme "
               "exceptional points, and metric operators for tridiagonal chains"};
  app.require_subcommand(0, 1);

  JobConfig cfg;
  std::string config_path;
  std::string couplings_arg, diag_arg, super_arg, sub_arg, axes_arg, window_arg,
      weights_arg, fixed_arg;

  // config-driven invocation: ptchain --config job.json (command inside)
  app.add_option("--config", config_path, "JSON job configuration (flags override it)");
  app.add_option("--out", cfg.out, "output path (stdout when omitted)");
  app.add_option("--format", cfg.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON job configuration (flags override it)");
    cmd->add_option("--out", cfg.out, "output path (stdout when omitted)");
    cmd->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("-N,--dimension", cfg.dimension, "matrix dimension N");
    cmd->add_option("--family", cfg.family,
                    "symmetrized | general-pt | general-tridiagonal");
    cmd->add_option("--couplings", couplings_arg,
                    "comma list of exact rationals, central-first (a,b,...)");
    cmd->add_flag("--squared", cfg.squared, "couplings are squared values A,B,...");
    cmd->add_flag("--inexact", cfg.inexact,
                  "accept decimal couplings (converted to dyadic rationals)");
    cmd->add_option("--diag", diag_arg, "general-tridiagonal diagonal");
    cmd->add_option("--super", super_arg, "general-tridiagonal superdiagonal");
    cmd->add_option("--sub", sub_arg, "general-tridiagonal subdiagonal");
  };

  auto* classify = app.add_subcommand("classify", "exact membership verdict for a coupling point");
  auto* spectrum = app.add_subcommand("spectrum", "numeric spectrum (plus exact secular data when available)");
  auto* boundary = app.add_subcommand("boundary", "trace the quasi-Hermiticity boundary in a coupling plane");
  auto* eepverify = app.add_subcommand("eep-verify", "verify the closed-form extreme exceptional point by direct insertion");
  auto* eepelim = app.add_subcommand("eep-eliminate", "resultant elimination of the EEP system with branch filtering");
  auto* metric = app.add_subcommand("metric", "biorthogonal metric operator at a RealSimple point");
  auto* boundcheck = app.add_subcommand("bound-check", "circumscribed sphere/ellipsoid norm test");

  for (auto* cmd : {classify, spectrum, boundary, eepverify, eepelim, metric, boundcheck})
    add_common(cmd);

  boundary->add_option("--axes", axes_arg, "one or two varied couplings, e.g. a,b");
  boundary->add_option("--window", window_arg, "xlo,xhi[,ylo,yhi] as exact rationals");
  boundary->add_option("--resolution", cfg.resolution, "probes per ray (and ray count)");
  boundary->add_option("--tol", cfg.tolerance, "bisection tolerance (exact rational)");
  boundary->add_option("--fixed", fixed_arg, "fixed squared couplings, e.g. B=3,C=5");
  boundary->add_flag("!--no-extreme-ray", cfg.extremeRay,
                     "drop the extra ray through the EEP direction");

  metric->add_option("--weights", weights_arg, "positive weights s_n (default: all ones)");

  eepverify->add_option("--n-min", cfg.nMin, "sweep start dimension");
  eepverify->add_option("--n-max", cfg.nMax, "sweep end dimension");

  CLI11_PARSE(app, argc, argv);

  UsageErrors errors;
  if (!config_path.empty()) {
    JobConfig from_file;
    load_config_file(config_path, from_file, errors);
    // config supplies anything the flags left unset
    if (cfg.dimension == 0) cfg.dimension = from_file.dimension;
    if (couplings_arg.empty()) cfg.couplings = from_file.couplings;
    if (app.get_subcommands().empty() && !from_file.command.empty())
      cfg.command = from_file.command;
    if (diag_arg.empty()) cfg.diag = from_file.diag;
    if (super_arg.empty()) cfg.super = from_file.super;
    if (sub_arg.empty()) cfg.sub = from_file.sub;
    if (axes_arg.empty()) cfg.axes = from_file.axes;
    if (window_arg.empty()) cfg.window = from_file.window;
    if (weights_arg.empty()) cfg.weights = from_file.weights;
    if (fixed_arg.empty()) cfg.fixed = from_file.fixed;
    if (cfg.nMin == 0) cfg.nMin = from_file.nMin;
    if (cfg.nMax == 0) cfg.nMax = from_file.nMax;
    if (cfg.out.empty()) cfg.out = from_file.out;
    if (cfg.format.empty()) cfg.format = from_file.format;
    // booleans and scalars with defaults: take the config only when the
    // flag was not passed
    if (!classify->count("--family") && !spectrum->count("--family") &&
        from_file.family != "symmetrized" && cfg.family == "symmetrized")
      cfg.family = from_file.family;
    if (from_file.squared) cfg.squared = true;
    if (from_file.inexact) cfg.inexact = true;
    if (!from_file.extremeRay) cfg.extremeRay = false;
    if (from_file.resolution != 100 && cfg.resolution == 100)
      cfg.resolution = from_file.resolution;
    if (from_file.tolerance != "1/1000000000" && cfg.tolerance == "1/1000000000")
      cfg.tolerance = from_file.tolerance;
  }
  if (!couplings_arg.empty()) cfg.couplings = split_list(couplings_arg);
  if (!diag_arg.empty()) cfg.diag = split_list(diag_arg);
  if (!super_arg.empty()) cfg.super = split_list(super_arg);
  if (!sub_arg.empty()) cfg.sub = split_list(sub_arg);
  if (!axes_arg.empty()) cfg.axes = split_list(axes_arg);
  if (!window_arg.empty()) cfg.window = split_list(window_arg);
  if (!weights_arg.empty()) {
    cfg.weights.clear();
    for (const auto& w : split_list(weights_arg)) cfg.weights.push_back(std::atof(w.c_str()));
  }
  if (!fixed_arg.empty()) {
    for (const auto& item : split_list(fixed_arg)) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        errors.add("fixed", "expected letter=value, got '" + item + "'");
        continue;
      }
      cfg.fixed[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }

  std::string command = cfg.command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();
  if (command.empty()) {
    std::cerr << "error: no command given (subcommand or 'command' in --config)\n";
    std::cerr << app.help();
    return 1;
  }

  int code = 1;
  try {
    if (errors.any()) {
      code = 1;
    } else if (command == "classify") {
      code = run_classify(cfg, errors);
    } else if (command == "spectrum") {
      code = run_spectrum(cfg, errors);
    } else if (command == "boundary") {
      code = run_boundary(cfg, errors);
    } else if (command == "eep-verify") {
      code = run_eep_verify(cfg, errors);
    } else if (command == "eep-eliminate") {
      code = run_eep_eliminate(cfg, errors);
    } else if (command == "metric") {
      code = run_metric(cfg, errors);
    } else if (command == "bound-check") {
      code = run_bound_check(cfg, errors);
    } else {
      errors.add("command", "unknown command '" + command + "'");
    }
  } catch (const std::invalid_argument& e) {
    errors.add("usage", e.what());
    code = 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  for (const auto& line : errors.lines) std::cerr << "error: " << line << "\n";
  if (errors.any()) return 1;
  return code;
}
