#include "pinchlab/json_io.hpp"

#include <cmath>
#include <limits>

namespace pinchlab::json {

namespace {

const json& member(const json& j, const std::string& field, const char* key) {
  if (!j.is_object()) throw InputError(field + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(field + "." + key + ": missing");
  return *it;
}

double finite_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw InputError(field + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw InputError(field + ": not finite");
  return x;
}

std::size_t positive_size(const json& j, const std::string& field) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    throw InputError(field + ": expected a positive integer");
  }
  const auto v = j.get<long long>();
  if (v <= 0) throw InputError(field + ": expected a positive integer");
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> size_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(positive_size(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<ComplexMatrix> matrix_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array of matrices");
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(matrix_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

json parse(const std::string& text, const std::string& field) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(field + ": malformed JSON (" + e.what() + ")");
  }
}

json to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j, const std::string& field) {
  const std::size_t rows = positive_size(member(j, field, "rows"), field + ".rows");
  const std::size_t cols = positive_size(member(j, field, "cols"), field + ".cols");
  const json& entries = member(j, field, "entries");
  if (!entries.is_array()) throw InputError(field + ".entries: expected an array");
  if (entries.size() != rows * cols) {
    throw InputError(field + ".entries: expected " + std::to_string(rows * cols) +
                     " entries, got " + std::to_string(entries.size()));
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string where = field + ".entries[" + std::to_string(k) + "]";
    const json& e = entries[k];
    Complex z;
    if (e.is_number()) {
      z = Complex(finite_number(e, where), 0.0);
    } else if (e.is_array() && e.size() == 2) {
      z = Complex(finite_number(e[0], where + "[0]"), finite_number(e[1], where + "[1]"));
    } else {
      throw InputError(where + ": expected [re, im]");
    }
    m(static_cast<Eigen::Index>(k / cols), static_cast<Eigen::Index>(k % cols)) = z;
  }
  return m;
}

json to_json(const WeightVector& w) {
  return {{"values", std::vector<double>(w.values().begin(), w.values().end())}};
}

WeightVector weights_from_json(const json& j, const std::string& field) {
  const json& arr = j.is_array() ? j : member(j, field, "values");
  const std::string where = j.is_array() ? field : field + ".values";
  if (!arr.is_array()) throw InputError(where + ": expected an array of numbers");
  std::vector<double> v;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    v.push_back(finite_number(arr[i], where + "[" + std::to_string(i) + "]"));
  }
  if (v.size() < 2) throw InputError(where + ": arity must be at least 2");
  return WeightVector(std::move(v));
}

json to_json(const ProjectivePOVM& povm) {
  json ps = json::array();
  for (const auto& p : povm.projectors()) ps.push_back(to_json(p));
  return {{"dimension", povm.dimension()}, {"projectors", std::move(ps)}};
}

ProjectivePOVM povm_from_json(const json& j, const std::string& field, const Tolerance& tol) {
  const std::size_t d = positive_size(member(j, field, "dimension"), field + ".dimension");
  auto ps = matrix_list(member(j, field, "projectors"), field + ".projectors");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (static_cast<std::size_t>(ps[i].rows()) != d || static_cast<std::size_t>(ps[i].cols()) != d) {
      throw InputError(field + ".projectors[" + std::to_string(i) + "]: expected " +
                       std::to_string(d) + "x" + std::to_string(d));
    }
  }
  try {
    return ProjectivePOVM(std::move(ps), tol);
  } catch (const Error& e) {
    throw InputError(field + ": " + e.what());
  }
}

json to_json(const OperatorFamily& family) {
  json ops = json::array();
  for (const auto& m : family.operators()) ops.push_back(to_json(m));
  return {{"in_dim", family.in_dim()}, {"out_dim", family.out_dim()}, {"operators", std::move(ops)}};
}

OperatorFamily family_from_json(const json& j, const std::string& field) {
  const std::size_t in_dim = positive_size(member(j, field, "in_dim"), field + ".in_dim");
  const std::size_t out_dim = positive_size(member(j, field, "out_dim"), field + ".out_dim");
  auto ops = matrix_list(member(j, field, "operators"), field + ".operators");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (static_cast<std::size_t>(ops[i].rows()) != out_dim ||
        static_cast<std::size_t>(ops[i].cols()) != in_dim) {
      throw InputError(field + ".operators[" + std::to_string(i) + "]: expected " +
                       std::to_string(out_dim) + "x" + std::to_string(in_dim));
    }
  }
  try {
    return OperatorFamily(std::move(ops));
  } catch (const Error& e) {
    throw InputError(field + ": " + e.what());
  }
}

json to_json(const GentleInstance& inst) {
  return {{"rho", to_json(inst.rho())}, {"P", to_json(inst.projector())}, {"epsilon", inst.epsilon()}};
}

GentleInstance gentle_from_json(const json& j, const std::string& field, const Tolerance& tol) {
  ComplexMatrix rho = matrix_from_json(member(j, field, "rho"), field + ".rho");
  ComplexMatrix p = matrix_from_json(member(j, field, "P"), field + ".P");
  try {
    if (j.contains("epsilon") && !j["epsilon"].is_null()) {
      const double eps = finite_number(j["epsilon"], field + ".epsilon");
      return GentleInstance(std::move(rho), std::move(p), eps, tol);
    }
    return GentleInstance::tight(std::move(rho), std::move(p), tol);
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(field + ": " + e.what());
  }
}

json to_json(const LoewnerVerdict& v) {
  return {{"holds", v.holds},
          {"min_gap_eigenvalue", number(v.min_gap_eigenvalue)},
          {"scale", number(v.scale)},
          {"tolerance_used", number(v.tolerance_used)},
          {"tight", v.tight}};
}

json to_json(const MembershipVerdict& v) {
  json j = {{"member", v.member}, {"on_boundary", v.on_boundary}, {"certificate", number(v.certificate)}};
  if (v.indeterminate) j["indeterminate"] = true;
  return j;
}

json to_json(const TraceNormReport& r) {
  return {{"half_t1", number(r.half_t1)},
          {"bound_new", number(r.bound_new)},
          {"bound_original", number(r.bound_original)},
          {"bound_improved", number(r.bound_improved)},
          {"within_bound", r.within_bound}};
}

json to_json(const GentleAnalysis& a) {
  return {{"trace_norm", to_json(a.trace_norm)},
          {"lower_leq_rho", to_json(a.lower_leq_rho)},
          {"rho_leq_upper", to_json(a.rho_leq_upper)},
          {"rho_leq_upper_as_printed", to_json(a.rho_leq_upper_as_printed)},
          {"difference_lower", to_json(a.difference_lower)},
          {"difference_upper", to_json(a.difference_upper)},
          {"degenerate", a.degenerate},
          {"all_hold", a.all_hold()}};
}

json to_json(const Tolerance& t) {
  return {{"psd_slack", t.psd_slack}, {"equality_band", t.equality_band}};
}

json to_json(const CampaignConfig& c) {
  return {{"master_seed", c.master_seed},
          {"trials", c.trials},
          {"dims", c.dims},
          {"arities", c.arities},
          {"mode", std::string(to_string(c.mode))},
          {"tolerance", to_json(c.tol)}};
}

CampaignConfig campaign_config_from_json(const json& j, const std::string& field) {
  CampaignConfig c;
  if (!j.is_object()) throw InputError(field + ": expected an object");
  if (j.contains("master_seed")) {
    const json& s = j["master_seed"];
    if (!s.is_number_unsigned() && !s.is_number_integer()) {
      throw InputError(field + ".master_seed: expected an integer");
    }
    c.master_seed = s.get<std::uint64_t>();
  }
  if (j.contains("trials")) c.trials = positive_size(j["trials"], field + ".trials");
  if (j.contains("dims")) c.dims = size_list(j["dims"], field + ".dims");
  if (j.contains("arities")) c.arities = size_list(j["arities"], field + ".arities");
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) throw InputError(field + ".mode: expected a string");
    auto mode = parse_campaign_mode(j["mode"].get<std::string>());
    if (!mode) throw InputError(field + ".mode: unknown mode");
    c.mode = *mode;
  }
  if (j.contains("tolerance")) {
    const json& t = j["tolerance"];
    if (t.contains("psd_slack")) c.tol.psd_slack = finite_number(t["psd_slack"], field + ".tolerance.psd_slack");
    if (t.contains("equality_band")) {
      c.tol.equality_band = finite_number(t["equality_band"], field + ".tolerance.equality_band");
    }
  }
  try {
    c.validate();
  } catch (const Error& e) {
    throw InputError(field + ": " + e.what());
  }
  return c;
}

json to_json(const CampaignReport& r) {
  return {{"config", to_json(r.config)},
          {"pass_count", r.pass_count},
          {"fail_count", r.fail_count},
          {"indeterminate_count", r.indeterminate_count},
          {"worst_violation", number(r.worst_violation)},
          {"worst_instance_seed", r.worst_instance_seed},
          {"worst_instance_detail", r.worst_instance_detail},
          {"failing_seeds", r.failing_seeds},
          {"counters", r.counters},
          {"maxima", r.maxima},
          {"wall_time", r.wall_time}};
}

}  // namespace pinchlab::json
