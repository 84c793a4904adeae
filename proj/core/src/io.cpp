#include "hgraph/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

#include "hgraph/polynomial.hpp"
#include "hgraph/random_field.hpp"

namespace hgraph {

namespace {

std::string shortest(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("malformed number in CSV: '" + std::string(s) + "'");
  }
  return v;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

nlohmann::json parse_json(const std::string& text, const char* what) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::runtime_error(std::string(what) + ": malformed JSON");
  return j;
}

}  // namespace

void export_field_csv(const ScalarField& f, const std::string& path) {
  const GridDomain& dom = *f.domain();
  std::ofstream os = open_out(path);
  for (int k = 0; k < dom.dim(); ++k) os << csv_quote("x" + std::to_string(k + 1)) << ',';
  os << "value\n";
  for (NodeIndex x = 0; x < dom.num_nodes(); ++x) {
    for (int k = 0; k < dom.dim(); ++k) os << shortest(dom.coordinate(x, k)) << ',';
    os << shortest(f[x]) << '\n';
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

ScalarField import_field_csv(GridPtr dom, const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty CSV: " + path);

  ScalarField f(dom);
  NodeIndex x = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (x >= dom->num_nodes()) throw std::runtime_error("CSV has more rows than lattice nodes: " + path);
    const auto cells = csv_split(line);
    if (cells.size() != static_cast<size_t>(dom->dim() + 1)) {
      throw std::runtime_error("CSV row has wrong column count: " + path);
    }
    for (int k = 0; k < dom->dim(); ++k) {
      const double c = parse_double(cells[static_cast<size_t>(k)]);
      if (c != dom->coordinate(x, k)) {
        throw std::runtime_error("CSV node coordinates do not match the domain: " + path);
      }
    }
    f[x] = parse_double(cells.back());
    ++x;
  }
  if (x != dom->num_nodes()) throw std::runtime_error("CSV has fewer rows than lattice nodes: " + path);
  return f;
}

void export_field_json(const ScalarField& f, const std::string& path) {
  const GridDomain& dom = *f.domain();
  nlohmann::ordered_json j;
  j["format"] = "hgraph-field";
  j["schema_version"] = 1;
  j["domain"] = {{"n", dom.heisenberg_n()}, {"lo", dom.low()}, {"hi", dom.high()}, {"m", dom.shape()}};
  j["node_order"] = "row-major, axis 1 fastest";
  std::vector<double> vals(f.values().data(), f.values().data() + f.values().size());
  j["values"] = vals;
  std::ofstream os = open_out(path);
  os << j.dump(2) << '\n';
  if (!os) throw std::runtime_error("write failed: " + path);
}

ScalarField import_field_json(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  const nlohmann::json j = parse_json(ss.str(), "field import");
  if (j.value("format", "") != "hgraph-field") throw std::runtime_error("not an hgraph field file: " + path);
  const auto& jd = j.at("domain");
  GridPtr dom = GridDomain::create(jd.at("n").get<int>(), jd.at("lo").get<std::vector<double>>(),
                                   jd.at("hi").get<std::vector<double>>(), jd.at("m").get<std::vector<int>>());
  const auto vals = j.at("values").get<std::vector<double>>();
  if (static_cast<NodeIndex>(vals.size()) != dom->num_nodes()) {
    throw std::runtime_error("field file value count does not match the domain: " + path);
  }
  Eigen::VectorXd v(dom->num_nodes());
  for (NodeIndex i = 0; i < dom->num_nodes(); ++i) v[i] = vals[static_cast<size_t>(i)];
  return ScalarField(dom, std::move(v));
}

GridPtr domain_from_spec(const std::string& json_spec) {
  const nlohmann::json j = parse_json(json_spec, "domain spec");
  const int n = j.at("n").get<int>();
  const int d = 2 * n;
  std::vector<int> m;
  if (j.at("m").is_array()) {
    m = j.at("m").get<std::vector<int>>();
  } else {
    m.assign(static_cast<size_t>(d), j.at("m").get<int>());
  }
  std::vector<double> lo(static_cast<size_t>(d), 0.0), hi(static_cast<size_t>(d), 1.0);
  if (j.contains("lo")) lo = j.at("lo").get<std::vector<double>>();
  if (j.contains("hi")) hi = j.at("hi").get<std::vector<double>>();
  return GridDomain::create(n, lo, hi, m);
}

ScalarField field_from_spec(GridPtr dom, const std::string& json_spec) {
  const nlohmann::json j = parse_json(json_spec, "field spec");
  const std::string type = j.at("type").get<std::string>();
  ScalarField f(dom);
  if (type == "zero") {
    // already zero
  } else if (type == "constant") {
    f = ScalarField::constant(dom, j.at("value").get<double>());
  } else if (type == "coordinate") {
    f = ScalarField::coordinate(dom, j.at("axis").get<int>() - 1);
    if (j.contains("scale")) f *= j.at("scale").get<double>();
  } else if (type == "linear") {
    const auto c = j.at("coefficients").get<std::vector<double>>();
    if (c.size() != static_cast<size_t>(dom->dim())) {
      throw std::runtime_error("linear field spec: need 2n coefficients");
    }
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dom->num_nodes());
    for (int k = 0; k < dom->dim(); ++k) v += c[static_cast<size_t>(k)] * dom->coordinates(k);
    f = ScalarField(dom, std::move(v));
  } else if (type == "polynomial") {
    Polynomial p(dom->dim());
    for (const auto& mono : j.at("monomials")) {
      p = p + Polynomial::monomial(dom->dim(), mono.at("exponents").get<std::vector<int>>(),
                                   mono.at("coefficient").get<double>());
    }
    f = p.sample(dom);
  } else if (type == "random_smooth") {
    f = smooth_random_field(dom, j.value("seed", 1ull), j.value("amplitude", 0.1),
                            j.value("max_freq", 2), j.value("compact", false));
  } else if (type == "bump_cosine") {
    f = cosine_bump(dom);
    f *= j.value("amplitude", 1.0);
  } else if (type == "bump_random") {
    f = random_bump(dom, j.value("seed", 1ull), j.value("max_freq", 3));
    f *= j.value("amplitude", 1.0);
  } else {
    throw std::runtime_error("unknown field spec type: " + type);
  }
  if (j.contains("shift")) {
    f += ScalarField::constant(dom, j.at("shift").get<double>());
  }
  return f;
}

}  // namespace hgraph
