#include "pinchlab/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "pinchlab/gentle.hpp"
#include "pinchlab/pinching.hpp"
#include "pinchlab/random.hpp"
#include "pinchlab/spectrahedron.hpp"

namespace pinchlab {

namespace {

using Status = TrialOutcome::Status;

double relative_gap(const LoewnerVerdict& v) { return v.min_gap_eigenvalue / v.scale; }

TrialOutcome from_verdict(const LoewnerVerdict& v, std::uint64_t seed, std::string detail) {
  TrialOutcome out;
  out.seed = seed;
  out.gap = relative_gap(v);
  out.status = v.holds ? Status::Pass : Status::Fail;
  out.detail = std::move(detail);
  return out;
}

TrialOutcome agreement(bool agree, double certificate, bool in_band, std::uint64_t seed,
                       std::string detail) {
  TrialOutcome out;
  out.seed = seed;
  out.detail = std::move(detail);
  if (in_band) {
    out.status = Status::Indeterminate;
    out.gap = std::abs(certificate);
  } else {
    out.status = agree ? Status::Pass : Status::Fail;
    out.gap = agree ? std::abs(certificate) : -std::abs(certificate);
  }
  return out;
}

std::string format_weights(const WeightVector& w) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (std::size_t i = 0; i < w.arity(); ++i) os << (i ? ", " : "") << w[i];
  os << "]";
  return os.str();
}

TrialOutcome trial_generalized(const CampaignConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = rng.pick(cfg.arities);
  const std::size_t d_in = rng.pick(cfg.dims);
  const std::size_t d_out = rng.pick(cfg.dims);
  const OperatorFamily family = random_family(d_in, d_out, n, rng);
  const ComplexMatrix rho = random_psd(d_in, rng, true);

  const std::size_t kind = rng.index(3);
  std::optional<WeightVector> alpha;
  const char* label = "interior";
  if (kind == 0) {
    alpha = random_interior_A(n, rng);
  } else {
    alpha = sample_A_boundary(n, std::nullopt, rng.next_seed(), cfg.tol);
    label = "boundary";
    if (kind == 2) {
      std::vector<double> up(alpha->values().begin(), alpha->values().end());
      for (double& x : up) x += rng.uniform(0.0, 1.0);
      alpha = WeightVector(std::move(up));
      label = "raised-boundary";
    }
  }
  std::ostringstream detail;
  detail << "n=" << n << " d_in=" << d_in << " d_out=" << d_out << " alpha(" << label
         << ")=" << format_weights(*alpha);
  TrialOutcome out = from_verdict(verify_generalized(family, *alpha, rho, cfg.tol), seed, detail.str());
  out.counters[std::string("alpha_") + label] = 1;
  return out;
}

TrialOutcome trial_hayashi(const CampaignConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t d = std::max<std::size_t>(2, rng.pick(cfg.dims));
  const std::size_t n = std::clamp<std::size_t>(rng.pick(cfg.arities), 2, d);
  const ProjectivePOVM povm = random_projective_povm(d, n, rng, cfg.tol);
  const ComplexMatrix rho = random_psd(d, rng, true);
  const WeightVector alpha = WeightVector::constant(n, static_cast<double>(n));

  std::ostringstream detail;
  detail << "n=" << n << " d=" << d;
  TrialOutcome out =
      from_verdict(verify_generalized(OperatorFamily::from_povm(povm), alpha, rho, cfg.tol), seed,
                   detail.str());
  const ComplexMatrix pinched = pinch(rho, povm);
  const double trace_error = std::abs(pinched.trace().real() - rho.trace().real());
  out.maxima["pinch_trace_error"] = trace_error;
  if (trace_error > 1e-10 * rho.trace().real() || !is_psd(pinched, cfg.tol).holds) {
    out.status = Status::Fail;
    out.counters["pinch_not_cptp"] = 1;
  }
  return out;
}

TrialOutcome trial_reverse(const CampaignConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t kind = rng.index(4);
  std::size_t n = rng.pick(cfg.arities);
  std::optional<WeightVector> beta;
  const char* label = "";
  switch (kind) {
    case 0: {
      n = 2;
      const double t = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
      beta = sample_B2_boundary(t);
      label = "b2-boundary";
      break;
    }
    case 1:
      beta = random_nonpositive_B(n, rng);
      label = "nonpositive";
      break;
    case 2:
      beta = random_one_positive_B(n, rng, cfg.tol);
      label = "one-positive";
      break;
    default:
      beta = WeightVector::constant(n, 0.0);
      label = "zero";
      break;
  }
  const std::size_t d_in = rng.pick(cfg.dims);
  const std::size_t d_out = rng.pick(cfg.dims);
  const OperatorFamily family = random_family(d_in, d_out, n, rng);
  const ComplexMatrix rho = random_psd(d_in, rng, true);

  std::ostringstream detail;
  detail << "n=" << n << " d_in=" << d_in << " d_out=" << d_out << " beta(" << label
         << ")=" << format_weights(*beta);
  TrialOutcome out = from_verdict(verify_reverse(family, *beta, rho, cfg.tol), seed, detail.str());
  out.counters[std::string("beta_") + label] = 1;
  const MembershipVerdict member = in_B_direct(*beta, cfg.tol);
  if (!member.member || b_sign_structure(*beta) == SignStructure::Violating) {
    out.status = Status::Fail;
    out.counters["beta_not_in_B"] = 1;
  }
  return out;
}

TrialOutcome trial_converse(const CampaignConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t d = std::max<std::size_t>(2, rng.pick(cfg.dims));
  const std::size_t n = std::clamp<std::size_t>(rng.pick(cfg.arities), 2, d);
  const ProjectivePOVM povm = random_projective_povm(d, n, rng, cfg.tol);
  std::vector<double> a(n);
  for (double& x : a) x = rng.uniform(1.0, 2.0 * static_cast<double>(n));
  const WeightVector alpha(std::move(a));
  std::optional<std::uint64_t> witness_seed;
  if (rng.index(2) == 1) witness_seed = rng.next_seed();

  const bool converse = converse_check(povm, alpha, witness_seed, cfg.tol);
  const MembershipVerdict direct = in_A_direct(alpha, cfg.tol);
  const bool in_band = std::abs(direct.certificate) <= cfg.tol.equality_band;

  std::ostringstream detail;
  detail << "n=" << n << " d=" << d << " witness=" << (witness_seed ? "random" : "top-eigvec")
         << " alpha=" << format_weights(alpha);
  TrialOutcome out = agreement(converse == direct.member, direct.certificate, in_band, seed,
                               detail.str());
  out.counters[direct.member ? "members" : "non_members"] = 1;
  return out;
}

ComplexMatrix orthonormal_projector(const ComplexMatrix& columns) {
  Eigen::HouseholderQR<ComplexMatrix> qr(columns);
  const ComplexMatrix q = qr.householderQ() *
                          ComplexMatrix::Identity(columns.rows(), columns.cols());
  return hermitize(q * q.adjoint());
}

TrialOutcome trial_gentle(const CampaignConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t d = std::max<std::size_t>(2, rng.pick(cfg.dims));
  const ComplexMatrix rho = random_psd(d, rng, true);
  const auto k = static_cast<Eigen::Index>(d);

  const std::size_t kind = rng.index(8);
  ComplexMatrix projector;
  const char* label = "";
  if (kind == 0) {
    projector = ComplexMatrix::Identity(k, k);
    label = "identity";
  } else {
    const auto rank = static_cast<Eigen::Index>(1 + rng.index(d - 1));
    if (kind <= 3) {
      projector = orthonormal_projector(random_unitary(d, rng).leftCols(rank));
      label = "haar";
    } else {
      // Tilt the dominant eigenspace of rho to get small epsilon.
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho);
      const ComplexMatrix top = eig.eigenvectors().rightCols(rank);
      const double spread = rng.uniform(0.0, 1.0);
      projector = orthonormal_projector(top + spread * ginibre(k, rank, rng));
      label = "aligned";
    }
  }
  const GentleInstance inst = GentleInstance::tight(rho, projector, cfg.tol);
  const GentleAnalysis a = analyze_gentle(inst, cfg.tol);

  std::ostringstream detail;
  detail.precision(17);
  detail << "d=" << d << " P(" << label << ") epsilon=" << inst.epsilon();

  TrialOutcome out;
  out.seed = seed;
  out.detail = detail.str();
  out.status = a.all_hold() ? Status::Pass : Status::Fail;
  out.gap = std::min({relative_gap(a.lower_leq_rho), relative_gap(a.rho_leq_upper),
                      relative_gap(a.difference_lower), relative_gap(a.difference_upper),
                      a.trace_norm.bound_new - a.trace_norm.half_t1});

  const auto& tn = a.trace_norm;
  out.counters["degenerate"] = a.degenerate ? 1 : 0;
  out.counters["half_t1_le_sqrt_eps"] = tn.half_t1 <= tn.bound_improved + cfg.tol.equality_band;
  out.counters["half_t1_le_2sqrt_eps"] = tn.half_t1 <= tn.bound_original + cfg.tol.equality_band;
  out.counters["printed_upper_violations"] = a.rho_leq_upper_as_printed.holds ? 0 : 1;
  out.counters["sum_epsilon"] = inst.epsilon();
  out.maxima["trace_norm_excess"] = tn.half_t1 - tn.bound_new;
  out.maxima["trace_norm_ratio"] = tn.bound_new > 0 ? tn.half_t1 / tn.bound_new : 0.0;
  out.maxima["epsilon"] = inst.epsilon();
  return out;
}

TrialOutcome trial_membership(const CampaignConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = rng.pick(cfg.arities);
  std::vector<double> a(n);
  for (double& x : a) x = rng.uniform(0.5, 2.0 * static_cast<double>(n));
  const WeightVector alpha(std::move(a));

  const MembershipVerdict direct = in_A_direct(alpha, cfg.tol);
  const MembershipVerdict recursive = in_A_recursive(alpha, cfg.tol);
  const bool in_band = std::abs(direct.certificate) <= cfg.tol.equality_band;
  bool agree = !recursive.indeterminate && recursive.member == direct.member;

  std::ostringstream detail;
  detail << "n=" << n << " alpha=" << format_weights(alpha);
  TrialOutcome out = agreement(agree, direct.certificate, in_band, seed, detail.str());
  out.counters[direct.member ? "members" : "non_members"] = 1;
  out.counters["recursive_indeterminate"] = recursive.indeterminate ? 1 : 0;

  if (n == 3 && !in_band) {
    const bool closed = in_A3_closed_form(alpha, cfg.tol).member;
    out.counters["closed_form_checked"] = 1;
    if (closed != direct.member) {
      out.counters["closed_form_disagreements"] = 1;
      out.status = Status::Fail;
      out.gap = -std::abs(direct.certificate);
    }
  }
  if (direct.member) {
    for (double x : alpha.values()) {
      if (!(x > 1.0)) {
        out.counters["member_with_weight_le_1"] = 1;
        out.status = Status::Fail;
      }
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(CampaignMode mode) {
  switch (mode) {
    case CampaignMode::Generalized: return "generalized";
    case CampaignMode::Reverse: return "reverse";
    case CampaignMode::Converse: return "converse";
    case CampaignMode::Gentle: return "gentle";
    case CampaignMode::Membership: return "membership";
    case CampaignMode::Hayashi: return "hayashi";
  }
  return "generalized";
}

std::optional<CampaignMode> parse_campaign_mode(std::string_view name) {
  for (auto m : {CampaignMode::Generalized, CampaignMode::Reverse, CampaignMode::Converse,
                 CampaignMode::Gentle, CampaignMode::Membership, CampaignMode::Hayashi}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

void CampaignConfig::validate() const {
  if (trials == 0) throw DomainError("campaign needs trials >= 1");
  if (dims.empty()) throw DomainError("campaign needs at least one dimension");
  if (arities.empty()) throw DomainError("campaign needs at least one arity");
  for (std::size_t d : dims) {
    if (d == 0 || d > 64) throw DomainError("campaign dimensions must lie in [1, 64]");
  }
  for (std::size_t n : arities) {
    if (n < 2 || n > 64) throw DomainError("campaign arities must lie in [2, 64]");
  }
  tol.validate();
}

TrialOutcome run_trial(const CampaignConfig& config, std::uint64_t trial_seed) {
  switch (config.mode) {
    case CampaignMode::Generalized: return trial_generalized(config, trial_seed);
    case CampaignMode::Reverse: return trial_reverse(config, trial_seed);
    case CampaignMode::Converse: return trial_converse(config, trial_seed);
    case CampaignMode::Gentle: return trial_gentle(config, trial_seed);
    case CampaignMode::Membership: return trial_membership(config, trial_seed);
    case CampaignMode::Hayashi: return trial_hayashi(config, trial_seed);
  }
  throw DomainError("unknown campaign mode");
}

CampaignReport aggregate(const CampaignConfig& config, const std::vector<TrialOutcome>& outcomes) {
  CampaignReport r;
  r.config = config;
  r.worst_violation = std::numeric_limits<double>::infinity();
  for (const auto& o : outcomes) {
    switch (o.status) {
      case Status::Pass: ++r.pass_count; break;
      case Status::Fail:
        ++r.fail_count;
        if (r.failing_seeds.size() < CampaignReport::kMaxRecordedFailures) {
          r.failing_seeds.push_back(o.seed);
        }
        break;
      case Status::Indeterminate: ++r.indeterminate_count; break;
    }
    if (o.gap < r.worst_violation) {
      r.worst_violation = o.gap;
      r.worst_instance_seed = o.seed;
      r.worst_instance_detail = o.detail;
    }
    for (const auto& [k, v] : o.counters) r.counters[k] += v;
    for (const auto& [k, v] : o.maxima) {
      auto it = r.maxima.find(k);
      if (it == r.maxima.end()) {
        r.maxima.emplace(k, v);
      } else {
        it->second = std::max(it->second, v);
      }
    }
  }
  if (outcomes.empty()) r.worst_violation = 0.0;
  return r;
}

CampaignReport run_campaign(const CampaignConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  std::vector<TrialOutcome> outcomes(config.trials);
  unsigned workers = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(config.trials)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < config.trials; i = next++) {
      try {
        outcomes[i] = run_trial(config, split_seed(config.master_seed, i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.trials;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  CampaignReport report = aggregate(config, outcomes);
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace pinchlab
