#pragma once

// The reproduction suite: one check per acceptance criterion, with serialized
// reports that carry no timing data.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hstab/quadrature.hpp"

namespace hstab {

struct CheckResult {
  std::string id;
  std::string topic;
  std::string expected;
  std::string actual;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  GridSpec grid;
  unsigned seed = 7;
  /// Re-run the suite at another thread count and compare serialized output.
  bool determinism = true;
};

struct CheckSpec {
  std::string id;
  std::function<CheckResult(const VerifyOptions&)> run;
};

/// Checks 1 to 11 in order (the determinism check is built by run_verify).
const std::vector<CheckSpec>& check_table();

CheckResult check_torus_mode_value(const VerifyOptions& o);
CheckResult check_torus_wave_direction(const VerifyOptions& o);
CheckResult check_torus_indefinite(const VerifyOptions& o);
CheckResult check_hyperbola_products(const VerifyOptions& o);
CheckResult check_mq_oracle(const VerifyOptions& o);
CheckResult check_reilly_bochner(const VerifyOptions& o);
CheckResult check_ricci_flat_planes(const VerifyOptions& o);
CheckResult check_sphere_tube_spectral(const VerifyOptions& o);
CheckResult check_tube_table(const VerifyOptions& o);
CheckResult check_tangent_bundle(const VerifyOptions& o);
CheckResult check_structural(const VerifyOptions& o);

/// One recomputed row of the geodesic-tube table.
struct TubeTableLine {
  std::string space;
  std::string row;
  std::array<int, 4> eps{};
  std::string topology;
  std::string g_expected, g_actual;
  std::string gprime_expected, gprime_actual;
  /// Probe or certificate IDs that back each verdict.
  std::vector<std::string> g_evidence, gprime_evidence;
  [[nodiscard]] bool matches() const { return g_expected == g_actual && gprime_expected == gprime_actual; }
};

std::vector<TubeTableLine> tube_table(const GridSpec& grid = {});
nlohmann::json to_json(const TubeTableLine& line);

struct VerifyReport {
  std::vector<CheckResult> checks;
  [[nodiscard]] bool all_pass() const;
};

/// Runs checks 1 to 11 under the current thread count.
VerifyReport run_checks(const VerifyOptions& o);
/// run_checks plus the determinism check.
VerifyReport run_verify(const VerifyOptions& o);

nlohmann::json to_json(const CheckResult& c);
nlohmann::json to_json(const VerifyReport& r);
std::string to_csv(const VerifyReport& r);

}  // namespace hstab
