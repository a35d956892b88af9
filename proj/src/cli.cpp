#include "pinchlab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pinchlab/campaign.hpp"
#include "pinchlab/gentle.hpp"
#include "pinchlab/json_io.hpp"
#include "pinchlab/pinching.hpp"
#include "pinchlab/spectrahedron.hpp"

namespace pinchlab::cli {

namespace {

namespace pj = pinchlab::json;
using Json = nlohmann::json;
using pj::InputError;

struct CommonOptions {
  double psd_slack = Tolerance{}.psd_slack;
  double band = Tolerance{}.equality_band;
  std::string out_path;
  std::string format = "json";
  std::string in_path;

  Tolerance tolerance() const {
    Tolerance t;
    t.psd_slack = psd_slack;
    t.equality_band = band;
    try {
      t.validate();
    } catch (const Error& e) {
      throw InputError(std::string("tolerance: ") + e.what());
    }
    return t;
  }
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--psd-slack", o.psd_slack, "Relative eigenvalue floor for PSD checks")
      ->capture_default_str();
  cmd->add_option("--band", o.band, "Half-width of the boundary (tight) band")
      ->capture_default_str();
  cmd->add_option("--out", o.out_path, "Write output to this file instead of stdout");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv-summary"}))
      ->capture_default_str();
  cmd->add_option("--in", o.in_path, "JSON document holding the inputs by name");
}

std::string read_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw InputError(field + ": cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Inline JSON when the argument starts with '{' or '[', otherwise a path.
Json load_value(const std::string& arg, const std::string& field) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    return pj::parse(arg, field);
  }
  return pj::parse(read_file(arg, field), field);
}

std::optional<Json> load_doc(const CommonOptions& o) {
  if (o.in_path.empty()) return std::nullopt;
  Json doc = pj::parse(read_file(o.in_path, "--in"), "--in");
  if (!doc.is_object()) throw InputError("--in: expected a JSON object");
  return doc;
}

// An explicit flag wins over the --in document.
std::optional<Json> input(const std::string& flag_value, const std::optional<Json>& doc,
                          const std::string& key) {
  if (!flag_value.empty()) return load_value(flag_value, key);
  if (doc && doc->contains(key)) return (*doc)[key];
  return std::nullopt;
}

Json require(const std::optional<Json>& v, const std::string& key) {
  if (!v) throw InputError(key + ": missing (pass --" + key + " or --in)");
  return *v;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::string>& keys,
             std::vector<std::string>& values) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const Json& v = it.value();
    if (v.is_object()) {
      if (v.contains("entries")) continue;  // matrices
      flatten(v, key, keys, values);
    } else if (v.is_array()) {
      continue;
    } else if (v.is_number_float()) {
      keys.push_back(key);
      values.push_back(format_number(v.get<double>()));
    } else {
      keys.push_back(key);
      values.push_back(v.dump());
    }
  }
}

std::string render(const Json& doc, const std::string& format) {
  if (format == "csv-summary") {
    std::vector<std::string> keys;
    std::vector<std::string> values;
    flatten(doc, "", keys, values);
    std::string head;
    std::string row;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      head += (i ? "," : "") + keys[i];
      row += (i ? "," : "") + values[i];
    }
    return head + "\n" + row + "\n";
  }
  return doc.dump(2) + "\n";
}

void emit(const Json& doc, const CommonOptions& o, std::ostream& out) {
  const std::string text = render(doc, o.format);
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path);
  if (!f) throw InputError("--out: cannot write '" + o.out_path + "'");
  f << text;
}

// ---------------------------------------------------------------------------

struct MembershipArgs {
  CommonOptions common;
  std::string set = "A";
  std::string vector;
};

int cmd_membership(const MembershipArgs& a, std::ostream& out) {
  const Tolerance tol = a.common.tolerance();
  const auto doc = load_doc(a.common);
  const WeightVector w = pj::weights_from_json(require(input(a.vector, doc, "vector"), "vector"), "vector");

  Json result;
  int code = kOk;
  if (a.set == "A") {
    const MembershipVerdict direct = in_A_direct(w, tol);
    const MembershipVerdict recursive = in_A_recursive(w, tol);
    result = pj::to_json(direct);
    result["set"] = "A";
    result["methods"] = {{"direct", pj::to_json(direct)}, {"recursive", pj::to_json(recursive)}};
    const bool outside_band = std::abs(direct.certificate) > tol.equality_band;
    bool agree = recursive.indeterminate || recursive.member == direct.member;
    if (w.arity() == 3) {
      const MembershipVerdict closed = in_A3_closed_form(w, tol);
      result["methods"]["closed_form"] = pj::to_json(closed);
      agree = agree && closed.member == direct.member;
    }
    result["methods_agree"] = agree;
    if (outside_band && !agree) code = kViolation;
  } else {
    const MembershipVerdict direct = in_B_direct(w, tol);
    result = pj::to_json(direct);
    result["set"] = "B";
    const SignStructure s = b_sign_structure(w);
    result["sign_structure"] = std::string(to_string(s));
    if (direct.member && s == SignStructure::Violating) code = kViolation;
  }
  emit(result, a.common, out);
  return code;
}

struct VerifyArgs {
  CommonOptions common;
  std::string family;
  std::string povm;
  std::string weights;
  std::string rho;
};

int cmd_verify(const VerifyArgs& a, bool reverse, std::ostream& out) {
  const Tolerance tol = a.common.tolerance();
  const auto doc = load_doc(a.common);
  const char* weight_key = reverse ? "beta" : "alpha";

  std::optional<OperatorFamily> family;
  std::optional<ProjectivePOVM> povm;
  if (auto f = input(a.family, doc, "family")) {
    family = pj::family_from_json(*f, "family");
  } else if (auto p = input(a.povm, doc, "povm")) {
    povm = pj::povm_from_json(*p, "povm", tol);
    family = OperatorFamily::from_povm(*povm);
  } else {
    throw InputError("family: missing (pass --family, --povm or --in)");
  }

  std::optional<WeightVector> weights;
  if (auto w = input(a.weights, doc, weight_key)) {
    weights = pj::weights_from_json(*w, weight_key);
  } else if (povm && !reverse) {
    weights = WeightVector::constant(povm->size(), static_cast<double>(povm->size()));
  } else {
    throw InputError(std::string(weight_key) + ": missing");
  }
  if (weights->arity() != family->size()) {
    throw InputError(std::string(weight_key) + ": arity " + std::to_string(weights->arity()) +
                     " does not match " + std::to_string(family->size()) + " operators");
  }

  const ComplexMatrix rho = pj::matrix_from_json(require(input(a.rho, doc, "rho"), "rho"), "rho");
  if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != family->in_dim()) {
    throw InputError("rho: expected " + std::to_string(family->in_dim()) + "x" +
                     std::to_string(family->in_dim()) + ", got " + describe_shape(rho));
  }
  if (!is_psd(rho, tol).holds) throw InputError("rho: not positive semidefinite");

  const LoewnerVerdict v = reverse ? verify_reverse(*family, *weights, rho, tol)
                                   : verify_generalized(*family, *weights, rho, tol);
  const MembershipVerdict m = reverse ? in_B_direct(*weights, tol) : in_A_direct(*weights, tol);
  Json result = {{"inequality", reverse ? "reverse" : "generalized"},
                 {"verdict", pj::to_json(v)},
                 {reverse ? "beta_membership" : "alpha_membership", pj::to_json(m)},
                 {weight_key, pj::to_json(*weights)}};
  emit(result, a.common, out);
  return v.holds ? kOk : kViolation;
}

struct ConverseArgs {
  CommonOptions common;
  std::string povm;
  std::string alpha;
  std::optional<std::uint64_t> seed;
  bool with_witness = false;
};

int cmd_converse(const ConverseArgs& a, std::ostream& out) {
  const Tolerance tol = a.common.tolerance();
  const auto doc = load_doc(a.common);
  const ProjectivePOVM povm = pj::povm_from_json(require(input(a.povm, doc, "povm"), "povm"), "povm", tol);
  const WeightVector alpha = pj::weights_from_json(require(input(a.alpha, doc, "alpha"), "alpha"), "alpha");
  if (alpha.arity() != povm.size()) {
    throw InputError("alpha: arity does not match the number of projectors");
  }
  if (!povm.nontrivial(tol)) throw InputError("povm: every projector must be nonzero");

  const LoewnerVerdict v = converse_verdict(povm, alpha, a.seed, tol);
  const MembershipVerdict direct = in_A_direct(alpha, tol);
  const bool in_band = std::abs(direct.certificate) <= tol.equality_band;
  const bool agree = v.holds == direct.member;
  Json result = {{"converse_holds", v.holds},
                 {"verdict", pj::to_json(v)},
                 {"direct", pj::to_json(direct)},
                 {"agrees", agree},
                 {"in_band", in_band}};
  if (a.with_witness) result["witness"] = pj::to_json(converse_witness(povm, a.seed, tol));
  emit(result, a.common, out);
  return (agree || in_band) ? kOk : kViolation;
}

struct GentleArgs {
  CommonOptions common;
  std::string instance;
  bool tight = false;
  bool with_bounds = false;
};

int cmd_gentle(const GentleArgs& a, std::ostream& out) {
  const Tolerance tol = a.common.tolerance();
  std::optional<Json> doc;
  Json inst_json;
  if (!a.instance.empty()) {
    inst_json = load_value(a.instance, "instance");
  } else {
    doc = load_doc(a.common);
    if (!doc) throw InputError("instance: missing (pass --instance or --in)");
    inst_json = doc->contains("instance") ? (*doc)["instance"] : *doc;
  }
  if (a.tight && inst_json.is_object()) inst_json.erase("epsilon");
  const GentleInstance inst = pj::gentle_from_json(inst_json, "instance", tol);

  const GentleAnalysis analysis = analyze_gentle(inst, tol);
  Json result = pj::to_json(analysis);
  result["epsilon"] = inst.epsilon();
  if (a.with_bounds) {
    const GentleBounds b = gentle_bounds(inst, tol);
    result["bounds"] = {{"upper", pj::to_json(b.upper)},
                        {"lower", pj::to_json(b.lower)},
                        {"upper_as_printed", pj::to_json(b.upper_as_printed)}};
    if (!b.degenerate) {
      const DifferenceBounds d = gentle_difference_bounds(inst);
      result["difference_bounds"] = {{"lower", pj::to_json(d.lower)}, {"upper", pj::to_json(d.upper)}};
    }
  }
  emit(result, a.common, out);
  return analysis.all_hold() ? kOk : kViolation;
}

struct CampaignArgs {
  CommonOptions common;
  std::string mode;
  std::size_t trials = 100;
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> arities;
  std::string config;
  std::string log_path;
  bool timing = false;
};

int cmd_campaign(const CampaignArgs& a, const std::string& env_threads, CLI::App* cmd,
                 std::ostream& out) {
  CampaignConfig cfg;
  if (!a.config.empty()) cfg = pj::campaign_config_from_json(load_value(a.config, "config"), "config");
  if (!a.mode.empty()) {
    auto m = parse_campaign_mode(a.mode);
    if (!m) throw InputError("mode: unknown mode '" + a.mode + "'");
    cfg.mode = *m;
  }
  if (cmd->count("--trials") || a.config.empty()) cfg.trials = a.trials;
  if (a.seed) {
    cfg.master_seed = *a.seed;
  } else if (a.config.empty()) {
    throw InputError("seed: --seed is required for campaigns");
  }
  if (!a.dims.empty()) cfg.dims = a.dims;
  if (!a.arities.empty()) cfg.arities = a.arities;
  if (cmd->count("--psd-slack")) cfg.tol.psd_slack = a.common.psd_slack;
  if (cmd->count("--band")) cfg.tol.equality_band = a.common.band;
  cfg.threads = 1;
  if (!env_threads.empty()) {
    try {
      cfg.threads = static_cast<unsigned>(std::stoul(env_threads));
    } catch (const std::exception&) {
      throw InputError("PINCHLAB_THREADS: expected a non-negative integer");
    }
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw InputError(std::string("config: ") + e.what());
  }

  const CampaignReport report = run_campaign(cfg);
  Json result = pj::to_json(report);
  if (!a.timing) result.erase("wall_time");
  if (!a.log_path.empty()) {
    std::ofstream log(a.log_path, std::ios::app);
    if (!log) throw InputError("--log: cannot open '" + a.log_path + "'");
    log << pj::to_json(report).dump() << "\n";
  }
  emit(result, a.common, out);
  return report.fail_count == 0 ? kOk : kViolation;
}

struct SampleArgs {
  CommonOptions common;
  std::string set = "A";
  std::optional<std::size_t> n;
  std::optional<double> t;
  std::string prefix;
  std::optional<std::uint64_t> seed;
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  const Tolerance tol = a.common.tolerance();
  std::optional<WeightVector> w;
  if (a.set == "B") {
    if (!a.t) throw InputError("t: --t is required for --set B");
    if (a.n && *a.n != 2) throw InputError("n: boundary sampling of B is only available for n = 2");
    w = sample_B2_boundary(*a.t);
  } else if (a.t) {
    if (a.n && *a.n != 2) throw InputError("n: --t parametrises the boundary of A_2 only");
    w = sample_A2_boundary(*a.t);
  } else if (!a.prefix.empty()) {
    const Json p = load_value(a.prefix, "prefix");
    if (!p.is_array()) throw InputError("prefix: expected an array of numbers");
    std::vector<double> head;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_number()) throw InputError("prefix[" + std::to_string(i) + "]: expected a number");
      head.push_back(p[i].get<double>());
    }
    const std::size_t n = a.n.value_or(head.size() + 1);
    w = sample_A_boundary(n, head, 0, tol);
  } else {
    if (!a.n) throw InputError("n: --n is required");
    if (!a.seed) throw InputError("seed: --seed is required to draw a random prefix");
    w = sample_A_boundary(*a.n, std::nullopt, *a.seed, tol);
  }
  emit(pj::to_json(*w), a.common, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::string& env_threads) {
  CLI::App app{"pinchlab: pinching inequalities, weight spectrahedra and gentle measurement"};
  app.require_subcommand(1);

  MembershipArgs membership;
  auto* mem = app.add_subcommand("membership", "Test a weight vector for membership in A_n or B_n");
  add_common(mem, membership.common);
  mem->add_option("--set", membership.set, "A or B")->check(CLI::IsMember({"A", "B"}))->capture_default_str();
  mem->add_option("--vector", membership.vector, "Weights as inline JSON or a path");

  VerifyArgs verify;
  auto* ver = app.add_subcommand("verify", "Check the generalised pinching inequality");
  add_common(ver, verify.common);
  ver->add_option("--family", verify.family, "Operator family (inline JSON or path)");
  ver->add_option("--povm", verify.povm, "Projective measurement (inline JSON or path)");
  ver->add_option("--alpha", verify.weights, "Weights; defaults to n*1 with --povm");
  ver->add_option("--rho", verify.rho, "Positive semidefinite input matrix");

  VerifyArgs reverse;
  auto* rev = app.add_subcommand("reverse", "Check the reverse pinching inequality");
  add_common(rev, reverse.common);
  rev->add_option("--family", reverse.family, "Operator family (inline JSON or path)");
  rev->add_option("--povm", reverse.povm, "Projective measurement (inline JSON or path)");
  rev->add_option("--beta", reverse.weights, "Weights");
  rev->add_option("--rho", reverse.rho, "Positive semidefinite input matrix");

  ConverseArgs converse;
  auto* con = app.add_subcommand("converse", "Run the fixed-point witness test for the converse");
  add_common(con, converse.common);
  con->add_option("--povm", converse.povm, "Nontrivial projective measurement");
  con->add_option("--alpha", converse.alpha, "Weights");
  con->add_option("--seed", converse.seed, "Draw random range vectors instead of top eigenvectors");
  con->add_flag("--witness", converse.with_witness, "Include the witness matrix in the output");

  GentleArgs gentle;
  auto* gen = app.add_subcommand("gentle", "Ordered gentle-measurement bounds for one instance");
  add_common(gen, gentle.common);
  gen->add_option("--instance", gentle.instance, "{\"rho\", \"P\", \"epsilon\"} inline or path");
  gen->add_flag("--tight", gentle.tight, "Use epsilon = 1 - Tr(rho P)");
  gen->add_flag("--bounds", gentle.with_bounds, "Include the bound matrices");

  CampaignArgs campaign;
  auto* cam = app.add_subcommand("campaign", "Randomised verification campaign");
  add_common(cam, campaign.common);
  cam->add_option("--mode", campaign.mode, "generalized|reverse|converse|gentle|membership|hayashi");
  cam->add_option("--trials", campaign.trials, "Number of trials")->capture_default_str();
  cam->add_option("--seed", campaign.seed, "Master seed");
  cam->add_option("--dims", campaign.dims, "Dimensions to draw from")->delimiter(',');
  cam->add_option("--arities", campaign.arities, "Arities to draw from")->delimiter(',');
  cam->add_option("--config", campaign.config, "CampaignConfig JSON (inline or path)");
  cam->add_option("--log", campaign.log_path, "Append the report to this JSON-lines file");
  cam->add_flag("--timing", campaign.timing, "Include wall_time in the output");

  SampleArgs sample;
  auto* sam = app.add_subcommand("sample-boundary", "Boundary points of A_n or B_2");
  add_common(sam, sample.common);
  sam->add_option("--set", sample.set, "A or B")->check(CLI::IsMember({"A", "B"}))->capture_default_str();
  sam->add_option("--n", sample.n, "Arity");
  sam->add_option("--t", sample.t, "Parameter of (1+t, 1+1/t) or (1-t, 1-1/t)");
  sam->add_option("--prefix", sample.prefix, "Interior prefix (alpha_1..alpha_{n-1}) as JSON");
  sam->add_option("--seed", sample.seed, "Seed for a random interior prefix");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*mem) return cmd_membership(membership, out);
    if (*ver) return cmd_verify(verify, false, out);
    if (*rev) return cmd_verify(reverse, true, out);
    if (*con) return cmd_converse(converse, out);
    if (*gen) return cmd_gentle(gentle, out);
    if (*cam) return cmd_campaign(campaign, env_threads, cam, out);
    if (*sam) return cmd_sample(sample, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace pinchlab::cli
