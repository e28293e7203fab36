#include "chpeed/casedata/case_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace chpeed {

namespace {

using nlohmann::json;

[[noreturn]] void validation_fail(const std::string& path,
                                  const std::string& what) {
  throw ValidationError(path + ": " + what);
}

// Strict object reader: every key must be consumed, leftovers are rejected
// with their full path.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path)
      : obj_(obj), path_(std::move(path)) {
    if (!obj.is_object()) validation_fail(path_, "expected an object");
  }

  // Rejects any key that was never consumed.
  void finish() {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key()))
        validation_fail(path_ + "." + it.key(), "unknown field");
    }
  }

  bool has(const std::string& key) { return obj_.contains(key); }

  const json& require(const std::string& key) {
    if (!obj_.contains(key)) validation_fail(path_ + "." + key, "missing");
    seen_.insert(key);
    return obj_.at(key);
  }

  const json* optional(const std::string& key) {
    if (!obj_.contains(key)) return nullptr;
    seen_.insert(key);
    return &obj_.at(key);
  }

  Scalar number(const std::string& key) {
    const json& v = require(key);
    if (!v.is_number()) validation_fail(path_ + "." + key, "expected a number");
    return v.get<Scalar>();
  }

  Scalar number_or(const std::string& key, Scalar fallback) {
    const json* v = optional(key);
    if (!v) return fallback;
    if (!v->is_number())
      validation_fail(path_ + "." + key, "expected a number");
    return v->get<Scalar>();
  }

  std::optional<Scalar> maybe_number(const std::string& key) {
    const json* v = optional(key);
    if (!v) return std::nullopt;
    if (!v->is_number())
      validation_fail(path_ + "." + key, "expected a number");
    return v->get<Scalar>();
  }

  std::string string_or(const std::string& key, std::string fallback) {
    const json* v = optional(key);
    if (!v) return fallback;
    if (!v->is_string())
      validation_fail(path_ + "." + key, "expected a string");
    return v->get<std::string>();
  }

  const std::string& path() const { return path_; }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

std::vector<Scalar> demand_profile(ObjectReader& r, const std::string& key) {
  const json& v = r.require(key);
  if (v.is_number()) return {v.get<Scalar>()};
  if (v.is_array()) {
    std::vector<Scalar> out;
    for (const auto& x : v) {
      if (!x.is_number())
        validation_fail(r.path() + "." + key, "expected numbers");
      out.push_back(x.get<Scalar>());
    }
    if (out.empty()) validation_fail(r.path() + "." + key, "empty profile");
    return out;
  }
  validation_fail(r.path() + "." + key, "expected a number or array");
}

PowerOnlyUnit read_power_unit(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  PowerOnlyUnit u;
  u.name = r.string_or("name", "");
  u.p_min_mw = r.number("p_min_mw");
  u.p_max_mw = r.number("p_max_mw");
  u.cost_a = r.number("cost_a");
  u.cost_b = r.number("cost_b_per_mw");
  u.cost_d = r.number("cost_d_per_mw2");
  u.cost_cubic = r.number_or("cost_cubic_per_mw3", 0.0);
  u.vple_e = r.maybe_number("vple_e");
  u.vple_zeta = r.number_or("vple_zeta_per_mw", 0.0);
  if (u.vple_e && !r.has("vple_zeta_per_mw"))
    validation_fail(path + ".vple_zeta_per_mw", "missing (vple_e present)");
  u.em_mu = r.number("em_mu_kg");
  u.em_kappa = r.number("em_kappa_kg_per_mw");
  u.em_pi = r.number("em_pi_kg_per_mw2");
  u.em_sigma = r.number_or("em_sigma_kg", 0.0);
  u.em_nu = r.number_or("em_nu_per_mw", 0.0);
  u.co2_theta = r.number_or("co2_theta_kg_per_mw", 0.0);
  u.ramp_up_mw = r.maybe_number("ramp_up_mw");
  u.ramp_down_mw = r.maybe_number("ramp_down_mw");
  r.optional("provenance");
  r.finish();
  return u;
}

ChpUnit read_chp_unit(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  ChpUnit u;
  u.name = r.string_or("name", "");
  u.cost_alpha = r.number("cost_alpha");
  u.cost_beta = r.number("cost_beta_per_mw");
  u.cost_gamma = r.number("cost_gamma_per_mw2");
  u.cost_delta = r.number("cost_delta_per_mwth");
  u.cost_epsilon = r.number("cost_epsilon_per_mwth2");
  u.cost_xi = r.number("cost_xi_per_mw_mwth");
  u.em_tau = r.number("em_tau_kg_per_mw");
  u.co2_psi = r.number_or("co2_psi_kg_per_mw", 0.0);
  const json& verts = r.require("for_vertices_mw_mwth");
  if (!verts.is_array() || verts.size() < 3)
    validation_fail(path + ".for_vertices_mw_mwth",
                    "expected an array of >= 3 [power, heat] pairs");
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto& v = verts[i];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
        !v[1].is_number())
      validation_fail(path + ".for_vertices_mw_mwth[" + std::to_string(i) + "]",
                      "expected a [power, heat] pair");
    u.for_vertices.emplace_back(v[0].get<Scalar>(), v[1].get<Scalar>());
  }
  // Vertex lists are transcribed from figures in the cited benchmarks;
  // a source note is mandatory.
  const json* prov = r.optional("for_provenance");
  if (!prov || !prov->is_string() || prov->get<std::string>().empty())
    validation_fail(path + ".for_provenance",
                    "missing (FOR vertex source note is required)");
  u.for_provenance = prov->get<std::string>();
  u.ramp_up_mw = r.maybe_number("ramp_up_mw");
  u.ramp_down_mw = r.maybe_number("ramp_down_mw");
  r.optional("provenance");
  r.finish();
  return u;
}

HeatOnlyUnit read_heat_unit(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  HeatOnlyUnit u;
  u.name = r.string_or("name", "");
  u.h_min_mwth = r.number("h_min_mwth");
  u.h_max_mwth = r.number("h_max_mwth");
  u.cost_phi = r.number("cost_phi");
  u.cost_eta = r.number("cost_eta_per_mwth");
  u.cost_lambda = r.number("cost_lambda_per_mwth2");
  u.em_rho = r.number("em_rho_kg_per_mwth");
  u.co2_varpi = r.number_or("co2_varpi_kg_per_mwth", 0.0);
  r.optional("provenance");
  r.finish();
  return u;
}

LossModel read_loss(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  LossModel loss;
  loss.present = true;
  const json& m = r.require("b_matrix_per_mw");
  if (!m.is_array() || m.empty())
    validation_fail(path + ".b_matrix_per_mw", "expected a square matrix");
  const int dim = static_cast<int>(m.size());
  loss.b_matrix = Mat::Zero(dim, dim);
  for (int row = 0; row < dim; ++row) {
    const auto& rj = m[row];
    if (!rj.is_array() || static_cast<int>(rj.size()) != dim)
      validation_fail(path + ".b_matrix_per_mw[" + std::to_string(row) + "]",
                      "row length must equal matrix dimension");
    for (int col = 0; col < dim; ++col) {
      if (!rj[col].is_number())
        validation_fail(path + ".b_matrix_per_mw[" + std::to_string(row) +
                            "][" + std::to_string(col) + "]",
                        "expected a number");
      loss.b_matrix(row, col) = rj[col].get<Scalar>();
    }
  }
  const json& bl = r.require("b_linear");
  if (!bl.is_array() || static_cast<int>(bl.size()) != dim)
    validation_fail(path + ".b_linear", "length must equal matrix dimension");
  loss.b_linear = Vec::Zero(dim);
  for (int i = 0; i < dim; ++i) loss.b_linear[i] = bl[i].get<Scalar>();
  loss.b_const = r.number("b_const_mw");
  r.optional("provenance");
  r.finish();
  return loss;
}

}  // namespace

DispatchCase parse_case(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }

  ObjectReader r(j, "case");
  const json& ver = r.require("schema_version");
  if (!ver.is_number_integer() || ver.get<int>() != kCaseSchemaVersion)
    throw SchemaVersionError("case.schema_version: expected " +
                             std::to_string(kCaseSchemaVersion) + ", got " +
                             ver.dump());

  DispatchCase cs;
  cs.name = r.string_or("name", origin);
  cs.p_demand_mw = demand_profile(r, "p_demand_mw");
  cs.h_demand_mwth = demand_profile(r, "h_demand_mwth");
  cs.n_intervals = static_cast<int>(cs.p_demand_mw.size());
  if (cs.h_demand_mwth.size() == 1 && cs.n_intervals > 1)
    cs.h_demand_mwth.assign(cs.n_intervals, cs.h_demand_mwth[0]);

  if (const json* units = r.optional("power_units")) {
    for (std::size_t i = 0; i < units->size(); ++i)
      cs.power_units.push_back(read_power_unit(
          (*units)[i], "case.power_units[" + std::to_string(i) + "]"));
  }
  if (const json* units = r.optional("chp_units")) {
    for (std::size_t i = 0; i < units->size(); ++i)
      cs.chp_units.push_back(read_chp_unit(
          (*units)[i], "case.chp_units[" + std::to_string(i) + "]"));
  }
  if (const json* units = r.optional("heat_units")) {
    for (std::size_t i = 0; i < units->size(); ++i)
      cs.heat_units.push_back(read_heat_unit(
          (*units)[i], "case.heat_units[" + std::to_string(i) + "]"));
  }
  if (const json* loss = r.optional("loss"))
    cs.loss = read_loss(*loss, "case.loss");
  r.optional("provenance");
  r.finish();

  try {
    cs.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("case.") + e.what());
  }
  return cs;
}

DispatchCase load_case(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open case file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_case(ss.str(), path.string());
}

namespace {

json unit_to_json(const PowerOnlyUnit& u) {
  json j{{"p_min_mw", u.p_min_mw},
         {"p_max_mw", u.p_max_mw},
         {"cost_a", u.cost_a},
         {"cost_b_per_mw", u.cost_b},
         {"cost_d_per_mw2", u.cost_d},
         {"em_mu_kg", u.em_mu},
         {"em_kappa_kg_per_mw", u.em_kappa},
         {"em_pi_kg_per_mw2", u.em_pi}};
  if (!u.name.empty()) j["name"] = u.name;
  if (u.cost_cubic != 0.0) j["cost_cubic_per_mw3"] = u.cost_cubic;
  if (u.vple_e) {
    j["vple_e"] = *u.vple_e;
    j["vple_zeta_per_mw"] = u.vple_zeta;
  }
  if (u.em_sigma != 0.0) {
    j["em_sigma_kg"] = u.em_sigma;
    j["em_nu_per_mw"] = u.em_nu;
  }
  if (u.co2_theta != 0.0) j["co2_theta_kg_per_mw"] = u.co2_theta;
  if (u.ramp_up_mw) j["ramp_up_mw"] = *u.ramp_up_mw;
  if (u.ramp_down_mw) j["ramp_down_mw"] = *u.ramp_down_mw;
  return j;
}

json unit_to_json(const ChpUnit& u) {
  json verts = json::array();
  for (const auto& v : u.for_vertices) verts.push_back({v.x(), v.y()});
  json j{{"cost_alpha", u.cost_alpha},
         {"cost_beta_per_mw", u.cost_beta},
         {"cost_gamma_per_mw2", u.cost_gamma},
         {"cost_delta_per_mwth", u.cost_delta},
         {"cost_epsilon_per_mwth2", u.cost_epsilon},
         {"cost_xi_per_mw_mwth", u.cost_xi},
         {"em_tau_kg_per_mw", u.em_tau},
         {"for_vertices_mw_mwth", verts},
         {"for_provenance", u.for_provenance}};
  if (!u.name.empty()) j["name"] = u.name;
  if (u.co2_psi != 0.0) j["co2_psi_kg_per_mw"] = u.co2_psi;
  if (u.ramp_up_mw) j["ramp_up_mw"] = *u.ramp_up_mw;
  if (u.ramp_down_mw) j["ramp_down_mw"] = *u.ramp_down_mw;
  return j;
}

json unit_to_json(const HeatOnlyUnit& u) {
  json j{{"h_min_mwth", u.h_min_mwth},
         {"h_max_mwth", u.h_max_mwth},
         {"cost_phi", u.cost_phi},
         {"cost_eta_per_mwth", u.cost_eta},
         {"cost_lambda_per_mwth2", u.cost_lambda},
         {"em_rho_kg_per_mwth", u.em_rho}};
  if (!u.name.empty()) j["name"] = u.name;
  if (u.co2_varpi != 0.0) j["co2_varpi_kg_per_mwth"] = u.co2_varpi;
  return j;
}

}  // namespace

std::string case_to_json(const DispatchCase& cs) {
  json j;
  j["schema_version"] = kCaseSchemaVersion;
  if (!cs.name.empty()) j["name"] = cs.name;
  if (cs.n_intervals == 1) {
    j["p_demand_mw"] = cs.p_demand_mw[0];
    j["h_demand_mwth"] = cs.h_demand_mwth[0];
  } else {
    j["p_demand_mw"] = cs.p_demand_mw;
    j["h_demand_mwth"] = cs.h_demand_mwth;
  }
  if (!cs.power_units.empty()) {
    j["power_units"] = json::array();
    for (const auto& u : cs.power_units) j["power_units"].push_back(unit_to_json(u));
  }
  if (!cs.chp_units.empty()) {
    j["chp_units"] = json::array();
    for (const auto& u : cs.chp_units) j["chp_units"].push_back(unit_to_json(u));
  }
  if (!cs.heat_units.empty()) {
    j["heat_units"] = json::array();
    for (const auto& u : cs.heat_units) j["heat_units"].push_back(unit_to_json(u));
  }
  if (cs.loss.present) {
    json m = json::array();
    for (int r = 0; r < cs.loss.b_matrix.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < cs.loss.b_matrix.cols(); ++c)
        row.push_back(cs.loss.b_matrix(r, c));
      m.push_back(row);
    }
    j["loss"] = {{"b_matrix_per_mw", m},
                 {"b_linear", std::vector<Scalar>(
                                  cs.loss.b_linear.begin(),
                                  cs.loss.b_linear.end())},
                 {"b_const_mw", cs.loss.b_const}};
  }
  return j.dump(2) + "\n";
}

void save_case(const DispatchCase& cs, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << case_to_json(cs);
}

namespace {

std::string fmt_full(Scalar x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void save_archive_csv(const DispatchCase& cs,
                      const std::vector<DispatchSolution>& solutions,
                      const std::filesystem::path& path) {
  if (solutions.empty())
    throw std::invalid_argument("save_archive_csv: empty archive");

  std::vector<DispatchSolution> sorted = solutions;
  std::sort(sorted.begin(), sorted.end(),
            [](const DispatchSolution& a, const DispatchSolution& b) {
              if (a.cost != b.cost) return a.cost < b.cost;
              return a.emission < b.emission;
            });

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "cost_usd,emission_kg,loss_mw,power_balance_residual_mw,"
         "heat_balance_residual_mwth,bound_violation,for_violation,feasible";
  for (int i = 0; i < cs.n_power(); ++i) out << ",p" << i + 1 << "_mw";
  for (int j = 0; j < cs.n_chp(); ++j) out << ",op" << j + 1 << "_mw";
  for (int j = 0; j < cs.n_chp(); ++j) out << ",hp" << j + 1 << "_mwth";
  for (int k = 0; k < cs.n_heat(); ++k) out << ",th" << k + 1 << "_mwth";
  out << "\n";

  for (const auto& s : sorted) {
    out << fmt_full(s.cost) << ',' << fmt_full(s.emission) << ','
        << fmt_full(s.loss_mw) << ',' << fmt_full(s.report.power_balance_mw)
        << ',' << fmt_full(s.report.heat_balance_mwth) << ','
        << fmt_full(s.report.bound_violation) << ','
        << fmt_full(s.report.for_violation) << ','
        << (s.report.feasible() ? 1 : 0);
    for (int i = 0; i < s.p.size(); ++i) out << ',' << fmt_full(s.p[i]);
    for (int j = 0; j < s.op.size(); ++j) out << ',' << fmt_full(s.op[j]);
    for (int j = 0; j < s.hp.size(); ++j) out << ',' << fmt_full(s.hp[j]);
    for (int k = 0; k < s.th.size(); ++k) out << ',' << fmt_full(s.th[k]);
    out << "\n";
  }
}

std::vector<DispatchSolution> load_archive_csv(
    const DispatchCase& cs, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open archive: " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("archive has no header: " + path.string());

  std::vector<DispatchSolution> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<Scalar> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
    const int np = cs.n_power(), nc = cs.n_chp(), nh = cs.n_heat();
    if (static_cast<int>(cells.size()) != 8 + np + 2 * nc + nh)
      throw ParseError("archive row has wrong column count: " + line);
    DispatchSolution s;
    s.cost = cells[0];
    s.emission = cells[1];
    s.loss_mw = cells[2];
    s.report.power_balance_mw = cells[3];
    s.report.heat_balance_mwth = cells[4];
    s.report.bound_violation = cells[5];
    s.report.for_violation = cells[6];
    int idx = 8;
    s.p = Vec::Zero(np);
    for (int i = 0; i < np; ++i) s.p[i] = cells[idx++];
    s.op = Vec::Zero(nc);
    for (int j = 0; j < nc; ++j) s.op[j] = cells[idx++];
    s.hp = Vec::Zero(nc);
    for (int j = 0; j < nc; ++j) s.hp[j] = cells[idx++];
    s.th = Vec::Zero(nh);
    for (int k = 0; k < nh; ++k) s.th[k] = cells[idx++];
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace chpeed
