#include "hgraph/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hgraph/version.hpp"

namespace hgraph {

namespace {

nlohmann::ordered_json conventions() {
  return {
      {"first_variation", "weak residual equals d/ds area(u + s phi) at s = 0"},
      {"eigenvalue_sign", "lambda are eigenvalues of -L_u; strict stability iff lambda1 > 0"},
      {"stability_operator",
       "exact Hessian of the discrete area; every coefficient block carries the 1/sqrt(1+|p|^2) factor"},
      {"vertical_adjoint", "linearized-field form: (X*)phi = X phi + phi d_vertical(u)"},
      {"solver_residual", "variational divergence-form curvature (Euler-Lagrange residual of the area quadrature)"},
      {"node_order", "row-major, axis 1 fastest"},
  };
}

}  // namespace

RunManifest::RunManifest(std::string command, std::string config_echo)
    : command_(std::move(command)), config_echo_(std::move(config_echo)) {}

void RunManifest::set_grid(const GridDomain& dom) {
  nlohmann::ordered_json g;
  g["n"] = dom.heisenberg_n();
  g["m"] = dom.shape();
  g["lo"] = dom.low();
  g["hi"] = dom.high();
  grid_ = g.dump();
}

void RunManifest::set_seed(std::uint64_t seed) {
  seed_ = seed;
  has_seed_ = true;
}

void RunManifest::add_tolerance(const std::string& name, double value) { tolerances_.emplace_back(name, value); }
void RunManifest::add_value(const std::string& name, double value) { values_.emplace_back(name, value); }
void RunManifest::add_note(const std::string& name, const std::string& text) { notes_.emplace_back(name, text); }
void RunManifest::add_verdict(const std::string& name, bool pass, const std::string& detail) {
  verdicts_.emplace_back(name, pass, detail);
}
void RunManifest::add_timing(const std::string& name, double seconds) { timings_.emplace_back(name, seconds); }
void RunManifest::set_eps0(double eps0) {
  eps0_ = eps0;
  has_eps0_ = true;
}

bool RunManifest::all_verdicts_pass() const {
  for (const auto& [name, pass, detail] : verdicts_) {
    if (!pass) return false;
  }
  return true;
}

namespace {

nlohmann::ordered_json deterministic_section(const RunManifest& m, const std::string& command,
                                             const std::string& config_echo, const std::string& grid,
                                             bool has_seed, std::uint64_t seed, bool has_eps0, double eps0,
                                             const std::vector<std::pair<std::string, double>>& tolerances,
                                             const std::vector<std::pair<std::string, double>>& values,
                                             const std::vector<std::pair<std::string, std::string>>& notes,
                                             const std::vector<std::tuple<std::string, bool, std::string>>& verdicts) {
  (void)m;
  nlohmann::ordered_json j;
  j["command"] = command;
  j["code_version"] = kVersion;
  if (!config_echo.empty()) j["config"] = nlohmann::json::parse(config_echo, nullptr, false);
  if (!grid.empty()) j["grid"] = nlohmann::json::parse(grid, nullptr, false);
  if (has_seed) j["seed"] = seed;
  j["conventions"] = conventions();
  nlohmann::ordered_json tol = nlohmann::ordered_json::object();
  for (const auto& [k, v] : tolerances) tol[k] = v;
  j["tolerances"] = tol;
  nlohmann::ordered_json val = nlohmann::ordered_json::object();
  for (const auto& [k, v] : values) val[k] = v;
  j["values"] = val;
  nlohmann::ordered_json nts = nlohmann::ordered_json::object();
  for (const auto& [k, v] : notes) nts[k] = v;
  j["notes"] = nts;
  if (has_eps0) j["eps0_basin"] = eps0;
  nlohmann::ordered_json ver = nlohmann::ordered_json::object();
  for (const auto& [k, pass, detail] : verdicts) {
    ver[k] = nlohmann::ordered_json{{"pass", pass}, {"detail", detail}};
  }
  j["verdicts"] = ver;
  return j;
}

}  // namespace

std::string RunManifest::verdict_section_json() const {
  return deterministic_section(*this, command_, config_echo_, grid_, has_seed_, seed_, has_eps0_, eps0_,
                               tolerances_, values_, notes_, verdicts_)
      .dump(2);
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j = deterministic_section(*this, command_, config_echo_, grid_, has_seed_, seed_,
                                                   has_eps0_, eps0_, tolerances_, values_, notes_, verdicts_);
  nlohmann::ordered_json t = nlohmann::ordered_json::object();
  for (const auto& [k, v] : timings_) t[k] = v;
  j["timings_seconds"] = t;
  return j.dump(2);
}

void RunManifest::append_to(const std::string& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path path = fs::path(dir) / "manifest.json";

  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  if (fs::exists(path)) {
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    nlohmann::ordered_json prev = nlohmann::ordered_json::parse(ss.str(), nullptr, false);
    if (prev.is_array()) arr = std::move(prev);
  }
  arr.push_back(nlohmann::ordered_json::parse(to_json()));

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write manifest: " + path.string());
  os << arr.dump(2) << '\n';
}

}  // namespace hgraph
