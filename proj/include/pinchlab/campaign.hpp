#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pinchlab/matrix.hpp"

namespace pinchlab {

enum class CampaignMode { Generalized, Reverse, Converse, Gentle, Membership, Hayashi };

std::string_view to_string(CampaignMode mode);
std::optional<CampaignMode> parse_campaign_mode(std::string_view name);

struct CampaignConfig {
  std::uint64_t master_seed = 0;
  std::size_t trials = 100;
  std::vector<std::size_t> dims{2, 3, 4, 5, 6};
  std::vector<std::size_t> arities{2, 3, 4};
  CampaignMode mode = CampaignMode::Generalized;
  Tolerance tol{};
  /// Worker threads; 0 means one per hardware thread.
  unsigned threads = 1;

  void validate() const;
};

/// Result of one trial, reproducible from (config, seed) alone.
///
/// `gap` is the relative slack of the checked claim: lambda_min / scale for
/// Loewner checks, and for agreement modes (membership, converse) the
/// direct certificate's distance from zero, negated on disagreement.
struct TrialOutcome {
  enum class Status { Pass, Fail, Indeterminate };

  Status status = Status::Pass;
  double gap = 0.0;
  std::uint64_t seed = 0;
  std::string detail;
  /// Summed across trials in the report.
  std::map<std::string, double> counters;
  /// Maximised across trials in the report.
  std::map<std::string, double> maxima;
};

struct CampaignReport {
  CampaignConfig config;
  std::size_t pass_count = 0;
  std::size_t fail_count = 0;
  std::size_t indeterminate_count = 0;
  /// Smallest trial gap seen.
  double worst_violation = 0.0;
  std::uint64_t worst_instance_seed = 0;
  std::string worst_instance_detail;
  /// Seeds of failing trials in trial order, at most kMaxRecordedFailures.
  std::vector<std::uint64_t> failing_seeds;
  std::map<std::string, double> counters;
  std::map<std::string, double> maxima;
  double wall_time = 0.0;

  static constexpr std::size_t kMaxRecordedFailures = 32;
};

/// Runs one trial of `config.mode` from its seed.
TrialOutcome run_trial(const CampaignConfig& config, std::uint64_t trial_seed);

/// Runs config.trials trials with seeds split_seed(master_seed, i).
CampaignReport run_campaign(const CampaignConfig& config);

/// Merges outcomes (in the given order) into a report; wall_time is left 0.
CampaignReport aggregate(const CampaignConfig& config, const std::vector<TrialOutcome>& outcomes);

}  // namespace pinchlab
