#pragma once

#include <string>
#include <vector>

namespace oransim::stats {

/// Regularized incomplete beta I_x(a, b), evaluated with the Lentz continued
/// fraction to tolerance 1e-10. Throws DataError if the fraction has not
/// converged after 300 iterations.
double reg_inc_beta(double a, double b, double x);

struct GroupSamples {
  std::string label;
  std::vector<double> values;
};

struct AnovaResult {
  double f = 0.0;
  double p = 1.0;
  int df_between = 0;
  int df_within = 0;
};

/// One-way ANOVA over k >= 2 groups, each with >= 2 samples.
/// F = MS_between / MS_within; p is the F-distribution survival function via
/// the regularized incomplete beta. A fully degenerate input (zero variance
/// both between and within groups) yields F = 0, p = 1.
AnovaResult anova(const std::vector<GroupSamples>& groups);

struct ModeSummary {
  std::string mode;
  int n = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
};

struct PairComparison {
  std::string a;
  std::string b;
  double f = 0.0;
  double p = 1.0;
  double delta_pct = 0.0;  // (mean_b - mean_a) / |mean_a| * 100
  bool valid = false;      // false when a group has < 2 samples
};

struct ComparisonTable {
  std::string metric;
  std::vector<ModeSummary> modes;
  std::vector<PairComparison> pairs;
};

/// Per-mode mean and 95% CI plus pairwise ANOVA F/p and percentage deltas
/// for every mode pair.
ComparisonTable summarize(const std::vector<GroupSamples>& per_mode,
                          const std::string& metric);

std::string format_csv(const ComparisonTable& table);
std::string format_text(const ComparisonTable& table);

}  // namespace oransim::stats
