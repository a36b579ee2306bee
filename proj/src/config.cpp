#include "couplinglab/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "couplinglab/errors.hpp"

namespace couplinglab {

namespace {

using json = nlohmann::json;

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw InvalidParameter("'" + where + "' must be a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!ok.count(item.key())) {
      throw InvalidParameter("unknown key '" + item.key() + "' in '" + where + "'");
    }
  }
}

double number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw InvalidParameter(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::optional<double> maybe_number(const json& obj, const char* key) {
  if (!obj.contains(key)) return std::nullopt;
  return number(obj, key, 0.0);
}

int integer(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw InvalidParameter(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

std::string text(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw InvalidParameter(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

CircuitSpec parse_circuit(const json& c) {
  if (!c.is_object() || !c.contains("type")) throw InvalidParameter("'circuit' needs a 'type'");
  const std::string type = text(c, "type");
  if (type == "phase") {
    check_keys(c, "circuit",
               {"type", "capacitance_fF", "inductance_pH", "critical_current_nA", "bias_phi0"});
    PhaseQubitParams p;
    p.capacitance = number(c, "capacitance_fF", p.capacitance * 1e15) * 1e-15;
    p.inductance = number(c, "inductance_pH", p.inductance * 1e12) * 1e-12;
    p.critical_current = number(c, "critical_current_nA", p.critical_current * 1e9) * 1e-9;
    p.bias = number(c, "bias_phi0", p.bias);
    p.validate();
    return p;
  }
  if (type == "flux") {
    check_keys(c, "circuit", {"type", "ej_over_ec", "alpha", "frustration_phi0", "ej_GHz"});
    FluxQubitParams p;
    p.ej_over_ec = number(c, "ej_over_ec", p.ej_over_ec);
    p.alpha = number(c, "alpha", p.alpha);
    p.frustration = number(c, "frustration_phi0", p.frustration);
    p.ej_ghz = number(c, "ej_GHz", p.ej_ghz);
    p.validate();
    return p;
  }
  throw InvalidParameter("circuit type must be 'phase' or 'flux', got '" + type + "'");
}

BasisOverrides parse_basis(const json& b) {
  check_keys(b, "basis", {"n_points", "differentiation", "charge_cutoff_p", "charge_cutoff_m", "sector"});
  BasisOverrides o;
  if (b.contains("n_points")) {
    const int n = integer(b, "n_points");
    if (n < static_cast<int>(PhaseGrid::kMinPoints)) {
      throw InvalidParameter("basis.n_points must be at least " + std::to_string(PhaseGrid::kMinPoints));
    }
    o.phase_points = static_cast<std::size_t>(n);
  }
  if (b.contains("differentiation")) {
    const std::string d = text(b, "differentiation");
    if (d == "fourier") {
      o.differentiation = Differentiation::Fourier;
    } else if (d == "central_difference") {
      o.differentiation = Differentiation::CentralDifference;
    } else {
      throw InvalidParameter("basis.differentiation must be 'fourier' or 'central_difference'");
    }
  }
  if (b.contains("charge_cutoff_p")) o.n_p_cutoff = integer(b, "charge_cutoff_p");
  if (b.contains("charge_cutoff_m")) o.n_m_cutoff = integer(b, "charge_cutoff_m");
  if (b.contains("sector")) {
    const std::string s = text(b, "sector");
    if (s == "physical") {
      o.sector = LatticeSector::Physical;
    } else if (s == "full") {
      o.sector = LatticeSector::Full;
    } else {
      throw InvalidParameter("basis.sector must be 'physical' or 'full'");
    }
  }
  charge_lattice_for(o);
  return o;
}

BiasRange parse_sweep(const json& s) {
  check_keys(s, "sweep", {"start_phi0", "stop_phi0", "n_points"});
  if (!s.contains("start_phi0") || !s.contains("stop_phi0")) {
    throw InvalidParameter("'sweep' needs start_phi0 and stop_phi0");
  }
  BiasRange r;
  r.start = number(s, "start_phi0", 0.0);
  r.stop = number(s, "stop_phi0", 0.0);
  r.n_points = 51;
  if (s.contains("n_points")) {
    const int n = integer(s, "n_points");
    if (n < 2) throw InvalidParameter("sweep.n_points must be >= 2");
    r.n_points = static_cast<std::size_t>(n);
  }
  r.validate();
  return r;
}

void parse_coupling(const json& c, RunConfig& cfg) {
  check_keys(c, "coupling", {"critical_current", "dipole", "flux_fluctuator"});
  if (c.contains("critical_current")) {
    const json& m = c.at("critical_current");
    check_keys(m, "coupling.critical_current", {"delta_i0_nA"});
    cfg.critical_current = model::CriticalCurrent{number(m, "delta_i0_nA", 0.0) * 1e-9};
  }
  if (c.contains("dipole")) {
    const json& m = c.at("dipole");
    check_keys(m, "coupling.dipole", {"d_nm", "x_nm", "eta_rad"});
    cfg.dipole = model::Dipole{number(m, "d_nm", 0.0) * 1e-9, number(m, "x_nm", 1.0) * 1e-9,
                               number(m, "eta_rad", 0.0)};
  }
  if (c.contains("flux_fluctuator")) {
    const json& m = c.at("flux_fluctuator");
    check_keys(m, "coupling.flux_fluctuator", {"delta_flux_phi0"});
    cfg.flux_fluctuator = model::FluxFluctuator{number(m, "delta_flux_phi0", 0.0)};
  }
  if (cfg.critical_current) validate(CouplingModel{*cfg.critical_current});
  if (cfg.dipole) validate(CouplingModel{*cfg.dipole});
  if (cfg.flux_fluctuator) validate(CouplingModel{*cfg.flux_fluctuator});
}

}  // namespace

bool RunConfig::is_phase() const {
  return circuit && std::holds_alternative<PhaseQubitParams>(*circuit);
}

bool RunConfig::is_flux() const {
  return circuit && std::holds_alternative<FluxQubitParams>(*circuit);
}

CouplingModel RunConfig::coupling_model(ModelKind kind) const {
  switch (kind) {
    case ModelKind::CriticalCurrent:
      if (critical_current) return *critical_current;
      break;
    case ModelKind::Dipole:
      if (dipole) return *dipole;
      break;
    case ModelKind::FluxFluctuator:
      if (flux_fluctuator) return *flux_fluctuator;
      break;
  }
  throw InvalidParameter("config has no 'coupling." + std::string(to_string(kind)) + "' section");
}

SweepConfig RunConfig::sweep_config() const {
  if (!circuit) throw InvalidParameter("config has no 'circuit' section");
  SweepConfig s;
  s.circuit = *circuit;
  s.bias = sweep ? *sweep : (is_phase() ? default_phase_sweep() : default_flux_sweep());
  s.models = models;
  s.basis = basis;
  s.threads = threads;
  return s;
}

BiasRange default_phase_sweep() { return BiasRange{0.55, 0.60, 51}; }
BiasRange default_flux_sweep() { return BiasRange{0.50, 0.51, 51}; }

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidParameter(std::string("malformed JSON: ") + e.what());
  }
  check_keys(root, "config",
             {"circuit", "basis", "sweep", "models", "tls", "coupling", "spectrum", "anticross",
              "convergence", "threads"});
  RunConfig cfg;
  if (root.contains("circuit")) cfg.circuit = parse_circuit(root.at("circuit"));
  if (root.contains("basis")) cfg.basis = parse_basis(root.at("basis"));
  if (root.contains("sweep")) cfg.sweep = parse_sweep(root.at("sweep"));
  if (root.contains("models")) {
    const json& m = root.at("models");
    if (!m.is_array() || m.empty()) throw InvalidParameter("'models' must be a non-empty array");
    cfg.models.clear();
    for (const auto& item : m) {
      if (!item.is_string()) throw InvalidParameter("'models' entries must be strings");
      cfg.models.push_back(parse_model_kind(item.get<std::string>()));
    }
  }
  if (root.contains("tls")) {
    const json& t = root.at("tls");
    check_keys(t, "tls", {"epsilon_GHz", "delta_GHz"});
    TLSParams tls{number(t, "epsilon_GHz", 0.0), number(t, "delta_GHz", 1.0)};
    tls.validate();
    cfg.tls = tls;
  }
  if (root.contains("coupling")) parse_coupling(root.at("coupling"), cfg);
  if (root.contains("spectrum")) {
    const json& s = root.at("spectrum");
    check_keys(s, "spectrum", {"omega_q_GHz", "omega_t_GHz", "g_x_GHz", "g_z_GHz"});
    SpectrumInput in;
    in.omega_q = maybe_number(s, "omega_q_GHz");
    in.omega_t = maybe_number(s, "omega_t_GHz");
    in.g_x = number(s, "g_x_GHz", 0.0);
    in.g_z = number(s, "g_z_GHz", 0.0);
    cfg.spectrum = in;
  }
  if (root.contains("anticross")) {
    const json& a = root.at("anticross");
    check_keys(a, "anticross", {"model", "omega_t_GHz"});
    if (a.contains("model")) cfg.anticross.model = parse_model_kind(text(a, "model"));
    cfg.anticross.omega_t = maybe_number(a, "omega_t_GHz");
  }
  if (root.contains("convergence")) {
    const json& c = root.at("convergence");
    check_keys(c, "convergence", {"ladder"});
    if (c.contains("ladder")) {
      const json& l = c.at("ladder");
      if (!l.is_array()) throw InvalidParameter("'convergence.ladder' must be an array");
      for (const auto& v : l) {
        if (!v.is_number_integer()) throw InvalidParameter("ladder entries must be integers");
        cfg.convergence_ladder.push_back(v.get<int>());
      }
    }
  }
  if (root.contains("threads")) {
    const int t = integer(root, "threads");
    if (t < 0) throw InvalidParameter("'threads' must be >= 0");
    cfg.threads = static_cast<std::size_t>(t);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const InvalidParameter& e) {
    throw InvalidParameter(path.string() + ": " + e.what());
  }
}

}  // namespace couplinglab
