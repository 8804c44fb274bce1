#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spinepr/error_matrix.hpp"
#include "spinepr/numerics/certified_real.hpp"
#include "spinepr/numerics/precision.hpp"

namespace spinepr {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Header row plus string cells; rendered with ',' separators and '\n' line ends.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const;
  /// Array of objects keyed by the header.
  Json to_json() const;
};

/// Scientific notation with the context's decimal digits.
std::string format_value(const CertifiedReal& x, const PrecisionContext& ctx);
/// Radius rounded up, three significant digits.
std::string format_radius(const CertifiedReal& x);
/// 2m as "-3/2", "0", "1", ...
std::string format_half(int twice);

enum class FigureKind { wigner, wigner_enlarged, smoothed_wigner, one_axis, h_function };
FigureKind parse_figure_kind(std::string_view name);
std::string_view to_string(FigureKind kind);

struct FigureRequest {
  FigureKind kind = FigureKind::wigner;
  int two_j = 1;
  /// one-axis and h-function only; defaults to m = j.
  std::optional<int> two_m;
  /// Defaults to [-1, 1], or [0.9, 1] for wigner-enlarged.
  std::optional<double> window_lo;
  std::optional<double> window_hi;
  int points = 200;
};

/// Columns x, value, radius. Throws std::invalid_argument on a bad window
/// or fewer than two points.
CsvTable figure_table(const FigureRequest& request, const PrecisionContext& ctx);

enum class TableKind { R, joint, spectrum };
TableKind parse_table_kind(std::string_view name);

struct TableRequest {
  TableKind what = TableKind::R;
  Protocol protocol = Protocol::special;
  int two_j = 1;
  CertifiedReal cos_theta = CertifiedReal(1, 64);
};

CsvTable object_table(const TableRequest& request, const PrecisionContext& ctx);

/// The two-j range in a command's parameters.
struct SpinRange {
  int min = 0;
  int max = 0;
};

struct RunReport {
  /// Wall-clock fields only; everything else is deterministic.
  Json header;
  Json body;
  /// A certified violation or negative verdict exists.
  bool failed = false;

  Json to_json() const;
  std::string dump() const { return to_json().dump(2) + "\n"; }
};

RunReport certify_report(Protocol protocol, SpinRange range, const PrecisionContext& ctx);

enum class Suite { basis, distributions, wigner, protocols, all };
Suite parse_suite(std::string_view name);
std::string_view to_string(Suite suite);

RunReport verify_report(Suite suite, int two_j_max, const PrecisionContext& ctx, int grid_n = 2048);

/// Sets header.generated_at (UTC, ISO 8601) and header.wall_time_seconds.
void stamp(RunReport& report, double wall_seconds);

/// Flat CSV views of the report results.
CsvTable certify_csv(const RunReport& report);
CsvTable verify_csv(const RunReport& report);

}  // namespace spinepr
