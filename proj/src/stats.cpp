#include "redustat/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "redustat/error.hpp"

namespace redustat {
namespace {

const boost::math::normal_distribution<double> kStdNormal;

double pnorm_lower(double z) { return boost::math::cdf(kStdNormal, z); }
double pnorm_upper(double z) { return boost::math::cdf(boost::math::complement(kStdNormal, z)); }
double qnorm(double p) { return boost::math::quantile(kStdNormal, p); }

double sign(double v) { return v > 0 ? 1.0 : v < 0 ? -1.0 : 0.0; }

// Horner evaluation with the constant term first, as in AS R94.
double poly(const double* cc, int nord, double x) {
  double ret = cc[0];
  if (nord > 1) {
    double p = x * cc[nord - 1];
    for (int j = nord - 2; j > 0; --j) p = (p + cc[j]) * x;
    ret += p;
  }
  return ret;
}

}  // namespace

std::string_view to_string(StatsMethod method) noexcept {
  switch (method) {
    case StatsMethod::ShapiroWilk:
      return "shapiro-wilk";
    case StatsMethod::WilcoxonSignedRankExact:
      return "wilcoxon-signed-rank-exact";
    case StatsMethod::WilcoxonSignedRankNormalApprox:
      break;
  }
  return "wilcoxon-signed-rank-normal-approx";
}

double signed_rank_exact_p(double v, std::size_t n) {
  const std::size_t max_sum = n * (n + 1) / 2;
  // counts[s] = number of sign assignments with positive-rank sum s.
  std::vector<double> counts(max_sum + 1, 0.0);
  counts[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t s = k * (k + 1) / 2; s >= k; --s) counts[s] += counts[s - k];
  }
  const double total = std::ldexp(1.0, static_cast<int>(n));
  const auto stat = static_cast<long long>(std::llround(v));
  double tail = 0.0;
  if (v > static_cast<double>(n * (n + 1)) / 4.0) {
    for (long long s = std::max<long long>(stat, 0); s <= static_cast<long long>(max_sum); ++s)
      tail += counts[static_cast<std::size_t>(s)];
  } else {
    for (long long s = 0; s <= std::min<long long>(stat, static_cast<long long>(max_sum)); ++s)
      tail += counts[static_cast<std::size_t>(s)];
  }
  return std::min(1.0, 2.0 * tail / total);
}

StatsResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw LengthMismatch("paired samples differ in length: " + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()));
  if (x.size() < 2) throw LengthMismatch("need at least two pairs");

  StatsResult r;
  std::vector<double> d;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = x[i] - y[i];
    if (diff == 0.0) {
      ++r.zeros_dropped;
    } else {
      d.push_back(diff);
    }
  }
  if (d.empty()) throw AllZeroDifferences();
  const std::size_t n = d.size();
  r.n_used = n;

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(d[a]) < std::abs(d[b]); });
  std::vector<double> rank(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(d[idx[j + 1]]) == std::abs(d[idx[i]])) ++j;
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = mid;
    const double t = static_cast<double>(j - i + 1);
    if (t > 1) {
      r.ties_present = true;
      tie_term += t * t * t - t;
    }
    i = j + 1;
  }

  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] > 0) v += rank[i];
  }
  r.statistic = v;

  const double nn = static_cast<double>(n);
  if (n < 50 && !r.ties_present && r.zeros_dropped == 0) {
    r.method = StatsMethod::WilcoxonSignedRankExact;
    r.p_value = signed_rank_exact_p(v, n);
    return r;
  }
  r.method = StatsMethod::WilcoxonSignedRankNormalApprox;
  double z = v - nn * (nn + 1) / 4.0;
  const double sigma = std::sqrt(nn * (nn + 1) * (2 * nn + 1) / 24.0 - tie_term / 48.0);
  z = (z - sign(z) * 0.5) / sigma;
  r.p_value = std::min(1.0, 2.0 * std::min(pnorm_lower(z), pnorm_upper(z)));
  return r;
}

StatsResult shapiro_wilk(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 3 || n > 5000)
    throw TooFewSamples("Shapiro-Wilk needs between 3 and 5000 values, got " + std::to_string(n));

  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double rng = x.back() - x.front();
  if (rng < 1e-10) throw ConstantInput();
  if (rng * (1 + 1e-10) < 1) {
    for (auto& v : x) v /= rng;
  }

  static constexpr double small = 1e-19;
  static constexpr double g[2] = {-2.273, .459};
  static constexpr double c1[6] = {0., .221157, -.147981, -2.07119, 4.434685, -2.706056};
  static constexpr double c2[6] = {0., .042981, -.293762, -1.752461, 5.682633, -3.582633};
  static constexpr double c3[4] = {.544, -.39978, .025054, -6.714e-4};
  static constexpr double c4[4] = {1.3822, -.77857, .062767, -.0020322};
  static constexpr double c5[4] = {-1.5861, -.31082, -.083751, .0038915};
  static constexpr double c6[3] = {-.4803, -.082676, .0030302};

  const int nn = static_cast<int>(n);
  const int nn2 = nn / 2;
  std::vector<double> a(static_cast<std::size_t>(nn2) + 1, 0.0);  // 1-based coefficients
  const double an = static_cast<double>(n);

  if (nn == 3) {
    a[1] = std::sqrt(0.5);
  } else {
    const double an25 = an + .25;
    double summ2 = 0.0;
    for (int i = 1; i <= nn2; ++i) {
      a[i] = qnorm((i - .375) / an25);
      summ2 += a[i] * a[i];
    }
    summ2 *= 2.;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1. / std::sqrt(an);
    const double a1 = poly(c1, 6, rsn) - a[1] / ssumm2;

    int i1;
    double fac;
    if (nn > 5) {
      i1 = 3;
      const double a2 = -a[2] / ssumm2 + poly(c2, 6, rsn);
      fac = std::sqrt((summ2 - 2. * (a[1] * a[1]) - 2. * (a[2] * a[2])) /
                      (1. - 2. * (a1 * a1) - 2. * (a2 * a2)));
      a[2] = a2;
    } else {
      i1 = 2;
      fac = std::sqrt((summ2 - 2. * (a[1] * a[1])) / (1. - 2. * (a1 * a1)));
    }
    a[1] = a1;
    for (int i = i1; i <= nn2; ++i) a[i] /= -fac;
  }

  const double range = x[n - 1] - x[0];
  if (range < small) throw ConstantInput();

  double sx = x[0] / range;
  double sa = -a[1];
  for (int i = 1, j = nn - 1; i < nn; --j) {
    const double xi = x[static_cast<std::size_t>(i)] / range;
    sx += xi;
    ++i;
    if (i != j) sa += sign(i - j) * a[static_cast<std::size_t>(std::min(i, j))];
  }

  sa /= an;
  sx /= an;
  double ssa = 0., ssx = 0., sax = 0.;
  for (int i = 0, j = nn - 1; i < nn; ++i, --j) {
    const double asa =
        i != j ? sign(i - j) * a[static_cast<std::size_t>(1 + std::min(i, j))] - sa : -sa;
    const double xsx = x[static_cast<std::size_t>(i)] / range - sx;
    ssa += asa * asa;
    ssx += xsx * xsx;
    sax += asa * xsx;
  }

  // w1 is 1 - W, computed this way to limit rounding error near W = 1.
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
  StatsResult r;
  r.method = StatsMethod::ShapiroWilk;
  r.statistic = 1. - w1;
  r.n_used = n;

  if (nn == 3) {
    constexpr double pi6 = 1.90985931710274;   // 6/pi
    constexpr double stqr = 1.04719755119660;  // asin(sqrt(3/4))
    r.p_value = std::max(0.0, pi6 * (std::asin(std::sqrt(r.statistic)) - stqr));
    return r;
  }
  double y = std::log(w1);
  const double lxx = std::log(an);
  double m, s;
  if (nn <= 11) {
    const double gamma = poly(g, 2, an);
    if (y >= gamma) {
      r.p_value = 1e-99;
      return r;
    }
    y = -std::log(gamma - y);
    m = poly(c3, 4, an);
    s = std::exp(poly(c4, 4, an));
  } else {
    m = poly(c5, 4, lxx);
    s = std::exp(poly(c6, 3, lxx));
  }
  r.p_value = pnorm_upper((y - m) / s);
  return r;
}

}  // namespace redustat
