#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "entmeter/many_body.hpp"
#include "entmeter/measure.hpp"
#include "entmeter/norms.hpp"

namespace entmeter::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInvalidInput = 2,
  kExitDegenerate = 3,
  kExitNonConvergence = 4,
};

/// Input after factory evaluation. Field-operator factories (condensate,
/// fermi_sea) also carry the Fock-space state so measures can use the
/// reduced-density-matrix path.
struct ReducedContext {
  FockSpace space;
  Operator rho;
  std::size_t order;
};

struct LoadedInput {
  std::string label;
  Operator op;
  std::optional<ReducedContext> reduced;
};

/// Parses a StateSpec document. Throws InvalidArgument (or a json
/// exception) on schema errors.
LoadedInput load_state_spec(const nlohmann::json& spec);
LoadedInput load_state_spec_file(const std::string& path);

struct MeasureFlags {
  NormMode mode = NormMode::Variational;
  std::string base = "2";
  NormOptions norm;
  bool oracle_check = false;
  std::size_t oracle_samples = 1000;
  bool strict = false;
};

double parse_base(const std::string& base);

/// Threads from ENTMETER_THREADS (unset or 0 = auto).
std::size_t threads_from_env();

nlohmann::json measure_report(const LoadedInput& input, const MeasureFlags& flags);
nlohmann::json order_index_report(const LoadedInput& input);

struct ReproduceRow {
  std::string name;
  double epsilon_computed;
  double epsilon_paper_formula;
  NormMode mode;
  /// Rows checked only as a trend (finite-N mean-field gap); never fail.
  bool finite_n = false;
};

std::vector<ReproduceRow> reproduce_rows(const NormOptions& opts);
nlohmann::json reproduce_table(const std::vector<ReproduceRow>& rows);
inline constexpr double kReproduceTol = 1e-6;

/// "0..19", "3", or "0,2,5" (ranges and lists can be mixed: "0..3,7").
std::vector<std::uint64_t> parse_seeds(const std::string& text);

nlohmann::json verify_summary(const std::vector<std::uint64_t>& seeds,
                              const std::vector<std::string>& properties,
                              const NormOptions& opts);

/// Checks the fields and types of an emitted document against the
/// published schema (docs/report.schema.json). Returns an empty string when
/// valid, otherwise the first problem found.
std::string validate_report(const nlohmann::json& doc);

/// Serializes with floating-point numbers at 17 significant digits.
std::string dump(const nlohmann::json& doc, int indent = 2);

// Command entry points; they return the process exit code.
int cmd_measure(const std::string& path, const MeasureFlags& flags, std::ostream& out,
                std::ostream& err);
int cmd_order_index(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_reproduce(const NormOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& seeds, const std::vector<std::string>& properties,
               const NormOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace entmeter::cli
