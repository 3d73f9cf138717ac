#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace redustat {

enum class StatsMethod : std::uint8_t {
  ShapiroWilk,
  WilcoxonSignedRankExact,
  WilcoxonSignedRankNormalApprox,
};

std::string_view to_string(StatsMethod method) noexcept;

struct StatsResult {
  StatsMethod method = StatsMethod::ShapiroWilk;
  double statistic = 0.0;  // W or V
  double p_value = 1.0;
  std::size_t n_used = 0;  // Wilcoxon: pairs left after dropping zero differences
  bool ties_present = false;
  std::size_t zeros_dropped = 0;
};

/// Two-sided paired Wilcoxon signed-rank test on d = x - y, following R's
/// wilcox.test defaults: zero differences are dropped, |d| gets mid-ranks,
/// V is the rank sum of positive differences. The exact null distribution
/// is used when fewer than 50 pairs remain and there were neither ties nor
/// zeros; otherwise the normal approximation with continuity correction and
/// tie-corrected variance.
///
/// Throws LengthMismatch (|x| != |y| or fewer than two pairs) and
/// AllZeroDifferences.
StatsResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

/// Two-sided exact p-value of the signed-rank statistic `v` for `n` untied
/// pairs.
double signed_rank_exact_p(double v, std::size_t n);

/// Shapiro-Wilk W test using Royston's AS R94 algorithm (as in R's
/// shapiro.test). Throws TooFewSamples outside 3..5000 and ConstantInput.
StatsResult shapiro_wilk(std::span<const double> x);

}  // namespace redustat
