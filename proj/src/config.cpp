#include "roughlab/config.hpp"

#include <cstdio>
#include <sstream>

namespace roughlab {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& pointer, const std::string& what) {
  throw std::invalid_argument("config error at " + pointer + ": " + what);
}

template <typename T>
T req(const json& j, const std::string& pointer, const std::string& key) {
  if (!j.contains(key)) config_error(pointer + "/" + key, "missing field");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(pointer + "/" + key, e.what());
  }
}

template <typename T>
T opt(const json& j, const std::string& pointer, const std::string& key, T dflt) {
  if (!j.contains(key) || j.at(key).is_null()) return dflt;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(pointer + "/" + key, e.what());
  }
}

Vec vec_from(const std::vector<double>& v) {
  Vec out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = v[i];
  return out;
}

LevyCharacteristics parse_levy(const json& j, const std::string& ptr, Index dim) {
  LevyCharacteristics c;
  c.drift = vec_from(opt<std::vector<double>>(j, ptr, "drift",
                                              std::vector<double>(static_cast<std::size_t>(dim), 0.0)));
  if (c.drift.size() != dim) config_error(ptr + "/drift", "dimension mismatch");
  double cov_scale = opt<double>(j, ptr, "cov_scale", 1.0);
  c.covariance = cov_scale * Mat::Identity(dim, dim);
  if (j.contains("jumps")) {
    for (std::size_t i = 0; i < j.at("jumps").size(); ++i) {
      const json& je = j.at("jumps")[i];
      const std::string eptr = ptr + "/jumps/" + std::to_string(i);
      JumpSpec spec;
      spec.intensity = req<double>(je, eptr, "intensity");
      std::string kind = req<std::string>(je, eptr, "kind");
      if (kind == "fixed") {
        spec.kind = JumpSpec::Kind::Fixed;
        spec.fixed_value = vec_from(req<std::vector<double>>(je, eptr, "value"));
        spec.compensate = opt<bool>(je, eptr, "compensate", false);
      } else if (kind == "gaussian") {
        spec.kind = JumpSpec::Kind::Gaussian;
        spec.gaussian_sd = req<double>(je, eptr, "sd");
      } else if (kind == "uniform_sym") {
        spec.kind = JumpSpec::Kind::UniformSym;
        spec.uniform_halfwidth = req<double>(je, eptr, "halfwidth");
      } else {
        config_error(eptr + "/kind", "unknown jump kind: " + kind);
      }
      c.jumps.push_back(std::move(spec));
    }
  }
  if (j.contains("forced")) {
    for (std::size_t i = 0; i < j.at("forced").size(); ++i) {
      const json& je = j.at("forced")[i];
      const std::string eptr = ptr + "/forced/" + std::to_string(i);
      ForcedJump fj;
      fj.time = req<double>(je, eptr, "time");
      fj.size = vec_from(req<std::vector<double>>(je, eptr, "size"));
      c.forced.push_back(std::move(fj));
    }
  }
  if (j.contains("small_tail") && !j.at("small_tail").is_null()) {
    const json& jt = j.at("small_tail");
    SmallJumpTail tail;
    tail.q_bound = opt<double>(jt, ptr + "/small_tail", "q_bound", 1.0);
    tail.var_coeff = req<double>(jt, ptr + "/small_tail", "var_coeff");
    tail.var_exponent = req<double>(jt, ptr + "/small_tail", "var_exponent");
    c.small_tail = tail;
  }
  return c;
}

EtaSpec parse_eta(const json& j, const std::string& ptr) {
  EtaSpec e;
  std::string kind = opt<std::string>(j, ptr, "kind", "weierstrass");
  if (kind == "linear")
    e.kind = EtaKind::Linear;
  else if (kind == "weierstrass")
    e.kind = EtaKind::Weierstrass;
  else if (kind == "frozen_fbm")
    e.kind = EtaKind::FrozenFbm;
  else
    config_error(ptr + "/kind", "unknown eta kind: " + kind);
  e.dim = opt<Index>(j, ptr, "dim", 1);
  e.alpha = opt<double>(j, ptr, "alpha", 0.5);
  e.base = opt<double>(j, ptr, "base", 2.0);
  e.terms = opt<int>(j, ptr, "terms", 12);
  e.scale = opt<double>(j, ptr, "scale", 1.0);
  e.frozen_seed = opt<std::uint64_t>(j, ptr, "frozen_seed", 0xE7A);
  e.min_holder = opt<double>(j, ptr, "min_holder", 0.0);
  return e;
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.T = opt<double>(j, "", "T", 1.0);

  const json& jd = j.contains("driver") ? j.at("driver") : json::object();
  cfg.driver.family = driver_family_from_string(opt<std::string>(jd, "/driver", "family", "brownian"));
  cfg.driver.dim = opt<Index>(jd, "/driver", "dim", 1);
  cfg.driver.cov_scale = opt<double>(jd, "/driver", "cov_scale", 1.0);
  if (jd.contains("ito")) {
    const json& ji = jd.at("ito");
    cfg.driver.ito.drift_amp = opt<double>(ji, "/driver/ito", "drift_amp", 0.3);
    cfg.driver.ito.vol_base = opt<double>(ji, "/driver/ito", "vol_base", 0.8);
    cfg.driver.ito.vol_amp = opt<double>(ji, "/driver/ito", "vol_amp", 0.2);
  }
  if (jd.contains("levy")) cfg.driver.levy = parse_levy(jd.at("levy"), "/driver/levy", cfg.driver.dim);
  else {
    cfg.driver.levy.drift = Vec::Zero(cfg.driver.dim);
    cfg.driver.levy.covariance = Mat::Identity(cfg.driver.dim, cfg.driver.dim);
  }
  if (jd.contains("fbm")) {
    cfg.driver.fbm.hurst = opt<double>(jd.at("fbm"), "/driver/fbm", "hurst", 0.75);
    cfg.driver.fbm.dim = cfg.driver.dim;
    if (!(cfg.driver.fbm.hurst > 0.5 && cfg.driver.fbm.hurst < 1.0))
      config_error("/driver/fbm/hurst", "must lie strictly inside (1/2, 1)");
  }
  if (jd.contains("eta")) cfg.driver.eta = parse_eta(jd.at("eta"), "/driver/eta");

  const json& jc = j.contains("coefficients") ? j.at("coefficients") : json::object();
  cfg.coeff_kind = opt<std::string>(jc, "/coefficients", "kind", "tanh");
  cfg.state_dim = opt<Index>(jc, "/coefficients", "state_dim", 1);
  if (jc.contains("params")) {
    for (const auto& [key, val] : jc.at("params").items()) {
      if (!val.is_number()) config_error("/coefficients/params/" + key, "must be a number");
      cfg.coeff_params.emplace_back(key, val.get<double>());
    }
  }
  std::vector<double> y0 = opt<std::vector<double>>(
      jc, "/coefficients", "y0", std::vector<double>(static_cast<std::size_t>(cfg.state_dim), 1.0));
  cfg.y0 = vec_from(y0);

  const json& je = j.contains("exponents") ? j.at("exponents") : json::object();
  cfg.p = opt<double>(je, "/exponents", "p", 2.25);
  cfg.p_prime = opt<double>(je, "/exponents", "p_prime", 2.75);
  cfg.q = opt<double>(je, "/exponents", "q", 1.4);
  cfg.q_prime = opt<double>(je, "/exponents", "q_prime", 1.8);
  cfg.beta = opt<double>(je, "/exponents", "beta", -1.0);
  cfg.epsilon = opt<double>(je, "/exponents", "epsilon", 0.05);
  cfg.delta = opt<double>(je, "/exponents", "delta", -1.0);
  cfg.theoretical_override =
      opt<double>(je, "/exponents", "theoretical", std::numeric_limits<double>::quiet_NaN());

  const json& jl = j.contains("levels") ? j.at("levels") : json::object();
  cfg.n_min = opt<int>(jl, "/levels", "min", 4);
  cfg.n_max = opt<int>(jl, "/levels", "max", 10);
  cfg.n_ref = opt<int>(jl, "/levels", "ref", cfg.n_max + 3);

  if (j.contains("seeds")) {
    const json& js = j.at("seeds");
    if (js.is_array()) {
      cfg.seeds = js.get<std::vector<std::uint64_t>>();
    } else {
      std::uint64_t base = opt<std::uint64_t>(js, "/seeds", "base", 1);
      int count = opt<int>(js, "/seeds", "count", 1);
      if (count < 1) config_error("/seeds/count", "must be >= 1");
      cfg.seeds.clear();
      for (int i = 0; i < count; ++i) cfg.seeds.push_back(base + static_cast<std::uint64_t>(i));
    }
  }
  cfg.norm = error_norm_from_string(opt<std::string>(j, "", "norm", "p_prime_var"));
  std::string psi = opt<std::string>(j, "", "psi_policy", "drop");
  if (psi == "drop")
    cfg.psi_policy = PsiPolicy::Drop;
  else if (psi == "gaussian")
    cfg.psi_policy = PsiPolicy::GaussianMatch;
  else
    config_error("/psi_policy", "unknown policy: " + psi);

  if (j.contains("phi")) {
    const json& jp = j.at("phi");
    cfg.phi.path = parse_eta(jp, "/phi");
    cfg.phi.scales = opt<std::vector<double>>(jp, "/phi", "scales", {1.0, 0.5, 0.25});
  }
  if (j.contains("outputs"))
    cfg.out_dir = opt<std::string>(j.at("outputs"), "/outputs", "dir", "");
  return cfg;
}

void apply_override(nlohmann::json& j, const std::string& assignment) {
  auto eq = assignment.find('=');
  require(eq != std::string::npos, "override must look like section.key=value");
  std::string path = assignment.substr(0, eq);
  std::string value = assignment.substr(eq + 1);
  nlohmann::json* node = &j;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  require(!parts.empty(), "empty override path");
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &((*node)[parts[i]]);
  nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;  // plain string
  (*node)[parts.back()] = parsed;
}

std::string config_hash(const nlohmann::json& j) {
  const std::string dump = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

nlohmann::json make_manifest(const nlohmann::json& config) {
  nlohmann::json m;
  m["artifact_version"] = kArtifactVersion;
  m["config_hash"] = config_hash(config);
  m["config"] = config;
  return m;
}

}  // namespace roughlab
