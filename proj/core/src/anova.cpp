#include "oransim/stats/anova.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "oransim/errors.hpp"

namespace oransim::stats {

namespace {

constexpr double kBetaTol = 1e-10;
constexpr int kBetaMaxIter = 300;

// Lentz evaluation of the incomplete beta continued fraction (NR betacf).
double beta_continued_fraction(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kBetaMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kBetaTol) return h;
  }
  throw DataError("incomplete beta: continued fraction did not converge");
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// 97.5% Student-t quantile by bisection on the CDF (via reg_inc_beta).
double t_quantile_975(int df) {
  const double nu = static_cast<double>(df);
  auto cdf = [nu](double t) {
    const double x = nu / (nu + t * t);
    return 1.0 - 0.5 * reg_inc_beta(nu / 2.0, 0.5, x);
  };
  double lo = 0.0, hi = 1000.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < 0.975) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DataError("reg_inc_beta: a and b must be positive");
  }
  if (x < 0.0 || x > 1.0) {
    throw DataError("reg_inc_beta: x must lie in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

AnovaResult anova(const std::vector<GroupSamples>& groups) {
  if (groups.size() < 2) throw DataError("anova: need at least 2 groups");
  std::size_t total = 0;
  for (const auto& g : groups) {
    if (g.values.size() < 2) {
      throw DataError("anova: group '" + g.label + "' needs >= 2 samples");
    }
    total += g.values.size();
  }

  double grand_sum = 0.0;
  for (const auto& g : groups) {
    for (double x : g.values) grand_sum += x;
  }
  const double grand_mean = grand_sum / static_cast<double>(total);

  double ssb = 0.0, ssw = 0.0;
  for (const auto& g : groups) {
    const double m = mean_of(g.values);
    const double dm = m - grand_mean;
    ssb += static_cast<double>(g.values.size()) * dm * dm;
    for (double x : g.values) {
      const double d = x - m;
      ssw += d * d;
    }
  }

  AnovaResult r;
  r.df_between = static_cast<int>(groups.size()) - 1;
  r.df_within = static_cast<int>(total - groups.size());

  if (ssw == 0.0 && ssb == 0.0) {
    r.f = 0.0;
    r.p = 1.0;
    return r;
  }
  if (ssw == 0.0) {
    r.f = std::numeric_limits<double>::infinity();
    r.p = 0.0;
    return r;
  }
  const double msb = ssb / r.df_between;
  const double msw = ssw / r.df_within;
  r.f = msb / msw;
  const double d1 = static_cast<double>(r.df_between);
  const double d2 = static_cast<double>(r.df_within);
  r.p = reg_inc_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * r.f));
  return r;
}

ComparisonTable summarize(const std::vector<GroupSamples>& per_mode,
                          const std::string& metric) {
  if (per_mode.empty()) throw DataError("summarize: no modes");
  ComparisonTable table;
  table.metric = metric;
  for (const auto& g : per_mode) {
    if (g.values.empty()) {
      throw DataError("summarize: mode '" + g.label + "' has no runs");
    }
    ModeSummary s;
    s.mode = g.label;
    s.n = static_cast<int>(g.values.size());
    s.mean = mean_of(g.values);
    if (s.n >= 2) {
      double ss = 0.0;
      for (double x : g.values) {
        const double d = x - s.mean;
        ss += d * d;
      }
      s.stddev = std::sqrt(ss / (s.n - 1));
      const double half = t_quantile_975(s.n - 1) * s.stddev /
                          std::sqrt(static_cast<double>(s.n));
      s.ci95_lo = s.mean - half;
      s.ci95_hi = s.mean + half;
    } else {
      s.ci95_lo = s.ci95_hi = s.mean;
    }
    table.modes.push_back(s);
  }
  for (std::size_t i = 0; i < per_mode.size(); ++i) {
    for (std::size_t j = i + 1; j < per_mode.size(); ++j) {
      PairComparison pc;
      pc.a = per_mode[i].label;
      pc.b = per_mode[j].label;
      const double ma = table.modes[i].mean;
      const double mb = table.modes[j].mean;
      pc.delta_pct = ma != 0.0
                         ? (mb - ma) / std::fabs(ma) * 100.0
                         : std::numeric_limits<double>::quiet_NaN();
      if (per_mode[i].values.size() >= 2 && per_mode[j].values.size() >= 2) {
        const AnovaResult r = anova({per_mode[i], per_mode[j]});
        pc.f = r.f;
        pc.p = r.p;
        pc.valid = true;
      } else {
        pc.f = pc.p = std::numeric_limits<double>::quiet_NaN();
      }
      table.pairs.push_back(pc);
    }
  }
  return table;
}

std::string format_csv(const ComparisonTable& table) {
  std::ostringstream out;
  out << "metric,mode,n,mean,stddev,ci95_lo,ci95_hi\n";
  for (const auto& m : table.modes) {
    out << table.metric << ',' << m.mode << ',' << m.n << ',' << fmt(m.mean)
        << ',' << fmt(m.stddev) << ',' << fmt(m.ci95_lo) << ','
        << fmt(m.ci95_hi) << '\n';
  }
  out << "metric,mode_a,mode_b,f_value,p_value,delta_pct\n";
  for (const auto& p : table.pairs) {
    out << table.metric << ',' << p.a << ',' << p.b << ',' << fmt(p.f) << ','
        << fmt(p.p) << ',' << fmt(p.delta_pct) << '\n';
  }
  return out.str();
}

std::string format_text(const ComparisonTable& table) {
  std::ostringstream out;
  char buf[160];
  out << "metric: " << table.metric << '\n';
  std::snprintf(buf, sizeof(buf), "%-12s %5s %14s %14s %26s\n", "mode", "n",
                "mean", "stddev", "95% CI");
  out << buf;
  for (const auto& m : table.modes) {
    std::snprintf(buf, sizeof(buf), "%-12s %5d %14.6g %14.6g    [%.6g, %.6g]\n",
                  m.mode.c_str(), m.n, m.mean, m.stddev, m.ci95_lo, m.ci95_hi);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "%-26s %12s %12s %10s\n", "comparison",
                "F-val", "p-val", "delta%");
  out << buf;
  for (const auto& p : table.pairs) {
    const std::string name = p.a + " vs " + p.b;
    std::snprintf(buf, sizeof(buf), "%-26s %12.4g %12.4g %9.2f%%\n",
                  name.c_str(), p.f, p.p, p.delta_pct);
    out << buf;
  }
  return out.str();
}

}  // namespace oransim::stats
