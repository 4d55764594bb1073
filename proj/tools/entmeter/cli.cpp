#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "entmeter/errors.hpp"
#include "entmeter/properties.hpp"
#include "entmeter/states.hpp"

namespace entmeter::cli {

using nlohmann::json;

namespace {

constexpr double kRenormalizeTol = 1e-6;

cplx parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InvalidArgument("complex numbers must be [re, im] pairs, got " + j.dump());
}

std::vector<cplx> parse_complex_list(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidArgument(std::string(what) + " must be an array");
  std::vector<cplx> out;
  for (const auto& x : j) out.push_back(parse_complex(x));
  return out;
}

// Rescales to unit 2-norm when already within kRenormalizeTol of it.
void renormalize(std::vector<cplx>& c, const char* what) {
  double w = 0.0;
  for (auto x : c) w += std::norm(x);
  if (std::abs(w - 1.0) > kRenormalizeTol)
    throw InvalidArgument(std::string(what) + " must be normalized (sum |c|^2 = " +
                          std::to_string(w) + ")");
  for (auto& x : c) x /= std::sqrt(w);
}

std::size_t get_size(const json& params, const char* key) {
  if (!params.contains(key)) throw InvalidArgument(std::string("missing parameter '") + key + "'");
  const auto& v = params.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InvalidArgument(std::string("parameter '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::size_t get_size_or(const json& params, const char* key, std::size_t fallback) {
  return params.contains(key) ? get_size(params, key) : fallback;
}

int get_sign(const json& params) {
  if (!params.contains("sign")) return 1;
  const int s = params.at("sign").get<int>();
  if (s != 1 && s != -1) throw InvalidArgument("sign must be +1 or -1");
  return s;
}

Statistics get_statistics(const json& params, Statistics fallback) {
  if (!params.contains("statistics")) return fallback;
  const auto s = params.at("statistics").get<std::string>();
  if (s == "bose") return Statistics::Bose;
  if (s == "fermi") return Statistics::Fermi;
  throw InvalidArgument("statistics must be 'bose' or 'fermi'");
}

Matrix parse_matrix(const json& data, std::size_t n) {
  if (!data.is_array() || data.size() != n)
    throw InvalidArgument("matrix data must have " + std::to_string(n) + " rows");
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = data[r];
    if (!row.is_array() || row.size() != n)
      throw InvalidArgument("matrix row " + std::to_string(r) + " must have " +
                            std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_complex(row[c]);
  }
  return m;
}

SpaceShape parse_shape(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgument("shape must be a nonempty array");
  std::vector<std::size_t> dims;
  for (const auto& d : j) {
    if (!d.is_number_integer() || d.get<long long>() < 1)
      throw InvalidArgument("shape entries must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  SpaceShape shape(std::move(dims));
  if (shape.total() > 4096) throw InvalidArgument("total dimension above 4096 is not supported");
  return shape;
}

LoadedInput load_explicit(const json& e) {
  const SpaceShape shape = parse_shape(e.at("shape"));
  const auto kind = e.at("kind").get<std::string>();
  const json& data = e.at("data");
  if (kind == "pure") {
    auto amps = parse_complex_list(data, "pure-state data");
    if (amps.size() != shape.total())
      throw InvalidArgument("pure-state data needs " + std::to_string(shape.total()) +
                            " amplitudes");
    renormalize(amps, "pure-state amplitudes");
    Vector v = Eigen::Map<Vector>(amps.data(), static_cast<Eigen::Index>(amps.size()));
    return {"explicit pure " + shape.str(), outer(PureState(shape, std::move(v))), std::nullopt};
  }
  Matrix m = parse_matrix(data, shape.total());
  if (kind == "density") {
    if (max_abs_antihermitian(m) > kHermitianTol)
      throw InvalidArgument("density data must be hermitian");
    if (std::abs(m.trace() - cplx(1.0)) > 1e-8)
      throw InvalidArgument("density data must have unit trace");
    return {"explicit density " + shape.str(), Operator(shape, std::move(m), Hermiticity::Yes),
            std::nullopt};
  }
  if (kind == "operator")
    return {"explicit operator " + shape.str(), Operator(shape, std::move(m)), std::nullopt};
  throw InvalidArgument("kind must be pure, density or operator");
}

Operator load_hamiltonian(const json& params) {
  if (params.contains("H")) {
    const auto& h = params.at("H");
    const SpaceShape shape = parse_shape(h.at("shape"));
    return Operator(shape, parse_matrix(h.at("data"), shape.total()));
  }
  const json& model = params.at("hamiltonian");
  const auto name = model.value("model", std::string("heisenberg"));
  if (name != "heisenberg") throw InvalidArgument("unknown Hamiltonian model '" + name + "'");
  const auto range_name = model.value("range", std::string("all-to-all"));
  CouplingRange range;
  if (range_name == "nearest")
    range = CouplingRange::Nearest;
  else if (range_name == "all-to-all")
    range = CouplingRange::AllToAll;
  else
    throw InvalidArgument("range must be 'nearest' or 'all-to-all'");
  return heisenberg_hamiltonian(get_size(model, "N"), model.value("J", 1.0), range);
}

LoadedInput reduced_input(std::string label, ManyBodyState state, std::size_t order) {
  const auto rdm = reduced_dm(state.space, state.rho, order);
  return {std::move(label), rdm.matrix, ReducedContext{state.space, state.rho, order}};
}

LoadedInput load_factory(const json& f) {
  const auto name = f.at("name").get<std::string>();
  const json params = f.value("params", json::object());
  if (!params.is_object()) throw InvalidArgument("factory params must be an object");

  if (name == "epr") return {"epr", outer(epr(get_sign(params))), std::nullopt};
  if (name == "bell") return {"bell", outer(bell(get_sign(params))), std::nullopt};
  if (name == "ghz") return {"ghz", outer(ghz(get_sign(params))), std::nullopt};
  if (name == "multicat" || name == "multimode") {
    auto c = parse_complex_list(params.at("c"), "coefficients");
    if (name == "multicat" && c.size() != 2)
      throw InvalidArgument("multicat takes exactly two coefficients");
    renormalize(c, "coefficients");
    return {name, outer(multimode(get_size(params, "N"), c)), std::nullopt};
  }
  if (name == "hartree_fock") {
    const auto n = get_size(params, "N");
    return {"hartree_fock",
            outer(hartree_fock(n, get_statistics(params, Statistics::Fermi))), std::nullopt};
  }
  if (name == "reduced_hf") {
    return {"reduced_hf",
            reduced_hartree_fock(get_size(params, "N"), get_size(params, "p"),
                                 get_statistics(params, Statistics::Fermi)),
            std::nullopt};
  }
  if (name == "gibbs") {
    if (!params.contains("beta")) throw InvalidArgument("gibbs needs 'beta'");
    return {"gibbs", gibbs(load_hamiltonian(params), params.at("beta").get<double>()),
            std::nullopt};
  }
  if (name == "condensate") {
    return reduced_input("condensate",
                         condensate(get_size_or(params, "modes", 2), get_size(params, "N")),
                         get_size_or(params, "p", 1));
  }
  if (name == "fermi_sea") {
    const auto n = get_size(params, "N");
    return reduced_input("fermi_sea", fermi_sea(get_size_or(params, "modes", n), n),
                         get_size_or(params, "p", 1));
  }
  throw InvalidArgument("unknown factory '" + name + "'");
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::InvalidArgument:
      case ErrorKind::Unsupported: return kExitInvalidInput;
      case ErrorKind::DegenerateTrace:
      case ErrorKind::ZeroNorm: return kExitDegenerate;
      case ErrorKind::NonConvergence: return kExitNonConvergence;
    }
  }
  if (dynamic_cast<const json::exception*>(&e) != nullptr) return kExitInvalidInput;
  return kExitFailure;
}

const char* error_label(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return to_string(err->kind());
  if (dynamic_cast<const json::exception*>(&e) != nullptr) return "InvalidInput";
  return "Error";
}

void write_number(double x, std::ostream& os) {
  if (!std::isfinite(x)) {
    os << "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  os << buf;
}

void write_json(const json& j, std::ostream& os, int indent, int level) {
  const std::string pad(static_cast<std::size_t>(indent * (level + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * level), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::number_float: write_number(j.get<double>(), os); return;
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[' << nl;
      for (std::size_t k = 0; k < j.size(); ++k) {
        os << pad;
        write_json(j[k], os, indent, level + 1);
        os << (k + 1 < j.size() ? "," : "") << nl;
      }
      os << close_pad << ']';
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      std::size_t k = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++k) {
        os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write_json(it.value(), os, indent, level + 1);
        os << (k + 1 < j.size() ? "," : "") << nl;
      }
      os << close_pad << '}';
      return;
    }
    default: os << j.dump(); return;
  }
}

json optimizer_json(const MeasureResult& m) {
  json o = {{"restarts", 1}, {"converged", true}, {"restarts_agreeing", 1}, {"sweeps", 0}};
  if (m.norm_A_diagnostics) {
    const auto& d = *m.norm_A_diagnostics;
    o = {{"restarts", d.restarts},
         {"converged", d.converged},
         {"restarts_agreeing", d.restarts_agreeing},
         {"sweeps", d.sweeps_used}};
  }
  return o;
}

std::string check_number(const json& doc, const char* key, bool nonnegative = false) {
  if (!doc.contains(key)) return std::string("missing '") + key + "'";
  if (!doc.at(key).is_number()) return std::string("'") + key + "' must be a number";
  if (nonnegative && doc.at(key).get<double>() < 0.0)
    return std::string("'") + key + "' must be nonnegative";
  return {};
}

std::string check_warnings(const json& doc) {
  if (!doc.contains("warnings") || !doc.at("warnings").is_array())
    return "'warnings' must be an array";
  for (const auto& w : doc.at("warnings"))
    if (!w.is_string()) return "warnings must be strings";
  return {};
}

std::string validate_rows(const json& rows) {
  for (const auto& row : rows) {
    if (!row.is_object()) return "reproduce rows must be objects";
    if (!row.contains("name") || !row.at("name").is_string()) return "row needs 'name'";
    for (const char* key : {"epsilon_computed", "epsilon_paper_formula", "abs_diff"})
      if (auto e = check_number(row, key); !e.empty()) return e;
    if (!row.contains("mode_used") || !row.at("mode_used").is_string())
      return "row needs 'mode_used'";
    if (!row.contains("flag") || !(row.at("flag").is_null() || row.at("flag").is_string()))
      return "row 'flag' must be null or a string";
  }
  return {};
}

}  // namespace

LoadedInput load_state_spec(const json& spec) {
  if (!spec.is_object()) throw InvalidArgument("state spec must be a JSON object");
  const bool has_factory = spec.contains("factory");
  const bool has_explicit = spec.contains("explicit");
  if (has_factory == has_explicit)
    throw InvalidArgument("state spec needs exactly one of 'factory' or 'explicit'");
  return has_factory ? load_factory(spec.at("factory")) : load_explicit(spec.at("explicit"));
}

LoadedInput load_state_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open input file '" + path + "'");
  return load_state_spec(json::parse(in));
}

double parse_base(const std::string& base) {
  if (base == "2") return 2.0;
  if (base == "e") return std::numbers::e;
  if (base == "10") return 10.0;
  throw InvalidArgument("--base must be 2, e or 10");
}

std::size_t threads_from_env() {
  const char* v = std::getenv("ENTMETER_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 0) return 0;
  return static_cast<std::size_t>(n);
}

json measure_report(const LoadedInput& input, const MeasureFlags& flags) {
  const double base = parse_base(flags.base);
  const MeasureResult m =
      input.reduced ? measure_reduced(input.reduced->space, input.reduced->rho,
                                      input.reduced->order, flags.mode, base, flags.norm)
                    : entanglement(input.op, flags.mode, base, flags.norm);
  if (flags.strict && m.norm_A_diagnostics) require_converged(*m.norm_A_diagnostics);

  json report = {{"tool_version", kToolVersion},
                 {"command", "measure"},
                 {"input", input.label},
                 {"epsilon", m.epsilon},
                 {"log_base", m.log_base},
                 {"mode", to_string(m.mode)},
                 {"norm_D_A", m.norm_D_A},
                 {"norm_D_Aotimes", m.norm_D_Aotimes},
                 {"optimizer", optimizer_json(m)},
                 {"warnings", m.warnings}};
  if (flags.oracle_check) {
    const double oracle =
        restricted_norm_oracle(input.op, flags.oracle_samples, flags.norm.seed);
    const double gap = (oracle - m.norm_D_A) / m.norm_D_A;
    report["oracle"] = {{"samples", flags.oracle_samples},
                        {"value", oracle},
                        {"relative_gap", gap}};
    if (flags.mode == NormMode::Variational && std::abs(gap) > 1e-4)
      report["warnings"].push_back("oracle disagrees with the variational norm");
    if (flags.mode == NormMode::Basis && gap > 1e-9)
      report["warnings"].push_back(
          "product states beyond the basis exceed the basis norm (basis mode is a lower bound)");
  }
  return report;
}

json order_index_report(const LoadedInput& input) {
  const OrderIndexResult r = order_index(input.op);
  return {{"tool_version", kToolVersion}, {"command", "order_index"},
          {"input", input.label},         {"omega", r.omega},
          {"norm", r.norm},               {"trace_abs", r.trace_abs},
          {"warnings", json::array()}};
}

std::vector<ReproduceRow> reproduce_rows(const NormOptions& opts) {
  std::vector<ReproduceRow> rows;
  auto basis = [&](std::string name, const Operator& rho, double formula) {
    rows.push_back({std::move(name), entanglement(rho, NormMode::Basis, 2.0, opts).epsilon,
                    formula, NormMode::Basis, false});
  };
  const double log2_3 = std::log2(3.0);

  basis("EPR (+)", outer(epr(1)), 1.0);
  basis("EPR (-)", outer(epr(-1)), 1.0);
  basis("Bell (+)", outer(bell(1)), 1.0);
  basis("Bell (-)", outer(bell(-1)), 1.0);
  basis("GHZ (+)", outer(ghz(1)), 2.0);
  basis("GHZ (-)", outer(ghz(-1)), 2.0);
  for (std::size_t n : {2, 3, 4, 6})
    basis("multicat N=" + std::to_string(n) + " c=(0.6,0.8)", outer(multicat(n, 0.6, 0.8)),
          (1.0 - static_cast<double>(n)) * std::log2(0.64));
  const double half = 1.0 / std::sqrt(2.0);
  basis("multicat N=6 maximal", outer(multicat(6, half, half)), 5.0);
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{2, 3}, {3, 3}, {3, 4}}) {
    const std::vector<cplx> c(m, 1.0 / std::sqrt(static_cast<double>(m)));
    basis("multimode N=" + std::to_string(n) + " m=" + std::to_string(m),
          outer(multimode(n, c)),
          (static_cast<double>(n) - 1.0) * std::log2(static_cast<double>(m)));
  }
  for (auto stat : {Statistics::Fermi, Statistics::Bose}) {
    for (std::size_t n = 2; n <= 5; ++n) {
      const double nn = static_cast<double>(n);
      basis(std::string("Hartree-Fock ") + to_string(stat) + " N=" + std::to_string(n),
            outer(hartree_fock(n, stat)), nn * std::log2(nn) - std::log2(std::tgamma(nn + 1)));
    }
  }
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t p = 1; p <= n; ++p) {
      const double formula = reduced_measure_formula(n, p, 1.0, 1.0);
      basis("reduced Hartree-Fock fermi N=" + std::to_string(n) + " p=" + std::to_string(p),
            reduced_hartree_fock(n, p, Statistics::Fermi), formula);
    }
  }
  for (auto [n, p] : {std::pair<std::size_t, std::size_t>{5, 3}, {6, 2}, {4, 4}}) {
    const auto st = condensate(2, n);
    rows.push_back({"condensate N=" + std::to_string(n) + " p=" + std::to_string(p),
                    measure_reduced(st.space, st.rho, p, NormMode::Basis, 2.0, opts).epsilon,
                    0.0, NormMode::Basis, false});
  }
  {
    const auto st = fermi_sea(3, 3);
    rows.push_back({"Fermi sea N=3 m=3 p=2",
                    measure_reduced(st.space, st.rho, 2, NormMode::Basis, 2.0, opts).epsilon,
                    std::log2(1.5), NormMode::Basis, false});
  }
  {
    constexpr std::size_t n = 1000000000;
    const double nn = static_cast<double>(n);
    rows.push_back({"superconducting formula p=2 N=1e9",
                    reduced_measure_formula(n, 2, nn, 1.0), std::log2(nn),
                    NormMode::Variational, false});
    rows.push_back({"superconducting formula p=3 N=1e9",
                    reduced_measure_formula(n, 3, nn, 1.0), std::log2(nn),
                    NormMode::Variational, false});
  }
  rows.push_back({"ferromagnet polarized N=4 p=2",
                  measure_spin(polarized_state(4), 2, NormMode::Variational, 2.0, opts).epsilon,
                  0.0, NormMode::Variational, false});
  {
    const Operator para = gibbs(heisenberg_hamiltonian(4, 1.0, CouplingRange::AllToAll), 0.0);
    rows.push_back({"paramagnet N=4 p=1",
                    measure_spin(para, 1, NormMode::Variational, 2.0, opts).epsilon, 0.0,
                    NormMode::Variational, false});
  }
  {
    const Operator para = gibbs(heisenberg_hamiltonian(8, 1.0, CouplingRange::AllToAll), 0.0);
    rows.push_back({"paramagnet N=8 p=2 (mean-field limit)",
                    measure_spin(para, 2, NormMode::Variational, 2.0, opts).epsilon, log2_3,
                    NormMode::Variational, true});
  }
  return rows;
}

json reproduce_table(const std::vector<ReproduceRow>& rows) {
  json table = json::array();
  for (const auto& r : rows) {
    table.push_back({{"name", r.name},
                     {"epsilon_computed", r.epsilon_computed},
                     {"epsilon_paper_formula", r.epsilon_paper_formula},
                     {"abs_diff", std::abs(r.epsilon_computed - r.epsilon_paper_formula)},
                     {"mode_used", to_string(r.mode)},
                     {"flag", r.finite_n ? json("finite-N") : json(nullptr)}});
  }
  return table;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  auto number = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidArgument("bad seed '" + s + "' in '" + text + "'");
    return std::stoull(s);
  };
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(number(item));
      continue;
    }
    const auto lo = number(item.substr(0, dots));
    const auto hi = number(item.substr(dots + 2));
    if (hi < lo) throw InvalidArgument("empty seed range '" + item + "'");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw InvalidArgument("no seeds given");
  return seeds;
}

json verify_summary(const std::vector<std::uint64_t>& seeds,
                    const std::vector<std::string>& properties, const NormOptions& opts) {
  json props = json::array();
  bool all = true;
  for (const auto& name : properties) {
    std::size_t passed = 0;
    double worst = 0.0;
    double tolerance = 0.0;
    json failures = json::array();
    for (auto seed : seeds) {
      const PropertyCheck c = run_property(name, seed, opts);
      tolerance = c.tolerance;
      worst = std::max(worst, c.error);
      if (c.passed) {
        ++passed;
      } else {
        failures.push_back({{"seed", seed}, {"error", c.error}, {"detail", c.detail}});
      }
    }
    all = all && failures.empty();
    props.push_back({{"name", name},
                     {"passed", passed},
                     {"failed", seeds.size() - passed},
                     {"worst_error", worst},
                     {"tolerance", tolerance},
                     {"failures", failures}});
  }
  return {{"tool_version", kToolVersion}, {"command", "verify"},
          {"seeds", seeds},               {"properties", props},
          {"all_passed", all}};
}

std::string validate_report(const json& doc) {
  if (doc.is_array()) return validate_rows(doc);
  if (!doc.is_object()) return "report must be an object or an array of rows";
  if (!doc.contains("tool_version") || !doc.at("tool_version").is_string())
    return "missing 'tool_version'";
  if (!doc.contains("command") || !doc.at("command").is_string()) return "missing 'command'";
  const auto command = doc.at("command").get<std::string>();
  if (command == "measure") {
    for (const char* key : {"epsilon", "log_base", "norm_D_A", "norm_D_Aotimes"})
      if (auto e = check_number(doc, key, std::string(key) != "epsilon"); !e.empty()) return e;
    if (doc.at("log_base").get<double>() <= 1.0) return "'log_base' must exceed 1";
    if (!doc.contains("mode") || !doc.at("mode").is_string()) return "missing 'mode'";
    const auto mode = doc.at("mode").get<std::string>();
    if (mode != "variational" && mode != "basis") return "unknown mode '" + mode + "'";
    if (!doc.contains("optimizer") || !doc.at("optimizer").is_object())
      return "missing 'optimizer'";
    const auto& o = doc.at("optimizer");
    for (const char* key : {"restarts", "restarts_agreeing", "sweeps"})
      if (!o.contains(key) || !o.at(key).is_number_integer())
        return std::string("optimizer '") + key + "' must be an integer";
    if (!o.contains("converged") || !o.at("converged").is_boolean())
      return "optimizer 'converged' must be a boolean";
    if (doc.contains("oracle")) {
      const auto& orc = doc.at("oracle");
      if (auto e = check_number(orc, "value", true); !e.empty()) return "oracle: " + e;
      if (auto e = check_number(orc, "relative_gap"); !e.empty()) return "oracle: " + e;
    }
    return check_warnings(doc);
  }
  if (command == "order_index") {
    if (auto e = check_number(doc, "omega"); !e.empty()) return e;
    if (auto e = check_number(doc, "norm", true); !e.empty()) return e;
    if (auto e = check_number(doc, "trace_abs", true); !e.empty()) return e;
    return check_warnings(doc);
  }
  if (command == "verify") {
    if (!doc.contains("properties") || !doc.at("properties").is_array())
      return "missing 'properties'";
    if (!doc.contains("all_passed") || !doc.at("all_passed").is_boolean())
      return "missing 'all_passed'";
    for (const auto& p : doc.at("properties")) {
      if (!p.contains("name") || !p.at("name").is_string()) return "property needs 'name'";
      for (const char* key : {"passed", "failed"})
        if (!p.contains(key) || !p.at(key).is_number_integer())
          return std::string("property '") + key + "' must be an integer";
    }
    return {};
  }
  return "unknown command '" + command + "'";
}

std::string dump(const json& doc, int indent) {
  std::ostringstream os;
  write_json(doc, os, indent, 0);
  return os.str();
}

int cmd_measure(const std::string& path, const MeasureFlags& flags, std::ostream& out,
                std::ostream& err) {
  try {
    const LoadedInput input = load_state_spec_file(path);
    const json report = measure_report(input, flags);
    out << dump(report) << '\n';
    for (const auto& w : report.at("warnings")) err << "warning: " << w.get<std::string>() << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error (" << error_label(e) << "): " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_order_index(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    out << dump(order_index_report(load_state_spec_file(path))) << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error (" << error_label(e) << "): " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_reproduce(const NormOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto rows = reproduce_rows(opts);
    out << dump(reproduce_table(rows)) << '\n';
    int code = kExitOk;
    for (const auto& r : rows) {
      const double diff = std::abs(r.epsilon_computed - r.epsilon_paper_formula);
      if (!r.finite_n && !(diff <= kReproduceTol)) {
        err << "mismatch: " << r.name << " differs by " << diff << '\n';
        code = kExitFailure;
      }
    }
    return code;
  } catch (const std::exception& e) {
    err << "error (" << error_label(e) << "): " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_verify(const std::string& seeds, const std::vector<std::string>& properties,
               const NormOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto summary =
        verify_summary(parse_seeds(seeds), properties.empty() ? property_names() : properties,
                       opts);
    out << dump(summary) << '\n';
    for (const auto& p : summary.at("properties"))
      err << p.at("name").get<std::string>() << ": " << p.at("passed").get<std::size_t>()
          << " passed, " << p.at("failed").get<std::size_t>() << " failed\n";
    return summary.at("all_passed").get<bool>() ? kExitOk : kExitFailure;
  } catch (const std::exception& e) {
    err << "error (" << error_label(e) << "): " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace entmeter::cli
