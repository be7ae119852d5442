#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nilsep/arith.hpp"
#include "nilsep/group_context.hpp"

namespace nilsep {

/// One radius of a growth measurement. `value` is the maximum of the restricted
/// D (or CD) over the n-ball; `restricted` marks that the minimum was taken over
/// a quotient family (Gamma / (N * Gamma(p)) for D, Gamma / Gamma(m) for CD)
/// rather than all finite quotients.
struct GrowthSample {
  int n = 0;
  Int value = 0;
  std::uint64_t witness_count = 0;
  bool restricted = true;
  friend bool operator==(const GrowthSample&, const GrowthSample&) = default;
};

struct GrowthRun {
  std::vector<GrowthSample> samples;
  bool partial = false;  // budget stopped the run before n_max
  std::string note;
};

struct GrowthOptions {
  std::uint64_t budget = default_budget();
  /// Scan every raw pair / element against the enumeration oracles (n <= 3 only).
  bool raw_oracle = false;
};

/// Max over nontrivial g in B(n) of the least |Gamma / (N * Gamma(p))| with g
/// surviving, p prime and N ranging over coordinate normal subgroups <xi_i : i in I>.
GrowthRun measure_rf_growth(const GroupContext& ctx, int n_max, const GrowthOptions& opts = {});

/// Max over non-conjugate pairs in B(n) of the least |Gamma / Gamma(m)| separating them.
GrowthRun measure_conj_growth(const GroupContext& ctx, int n_max, const GrowthOptions& opts = {});

/// Restricted D of one element (coordinate-ideal family). g must be nontrivial.
Int restricted_rf_value(const GroupContext& ctx, const UTElement& g);

enum class FitModel { PowerLaw, PolyLog };
std::string to_string(FitModel m);
FitModel fit_model_from_string(const std::string& s);

struct FitReport {
  FitModel model = FitModel::PowerLaw;
  double exponent = 0;
  double constant = 0;
  double residual = 0;
  int n_min = 0;
  int n_max = 0;
  std::size_t samples_used = 0;
};

/// Least squares on (log n, log value) or (log log n, log value); radii below
/// `min_n` are dropped. Needs at least 4 usable samples with positive values.
FitReport fit_exponent(const std::vector<GrowthSample>& samples, FitModel model, int min_n = 3);

struct ReportFiles {
  std::string csv;
  std::string json;
  std::string gnuplot;
};

/// Writes <dir>/<stem>.csv, .json and .gp. Output depends only on the arguments.
ReportFiles emit_report(const std::vector<GrowthSample>& samples, const std::vector<FitReport>& fits,
                        const std::string& dir, const std::string& stem = "growth",
                        const std::string& title = "");

std::string samples_to_csv(const std::vector<GrowthSample>& samples);

}  // namespace nilsep
