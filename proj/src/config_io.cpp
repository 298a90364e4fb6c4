#include "schottky/config_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace schottky {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  raise(ErrorKind::ParseError, where + ": " + what);
}

double need_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where, "expected a number");
  return j.get<double>();
}

Vec need_vector(const nlohmann::json& j, const std::string& where, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    parse_fail(where, "expected an array of " + std::to_string(dim) + " numbers");
  Vec v(dim);
  for (int i = 0; i < dim; ++i)
    v[i] = need_number(j[static_cast<std::size_t>(i)],
                       where + "[" + std::to_string(i) + "]");
  return v;
}

}  // namespace

ConfigDocument parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    raise(ErrorKind::ParseError, e.what());
  }
  if (!j.is_object()) parse_fail("document", "expected a JSON object");

  ConfigDocument doc;
  if (!j.contains("dimension")) parse_fail("dimension", "missing");
  if (!j["dimension"].is_number_integer()) parse_fail("dimension", "expected an integer");
  doc.dimension = j["dimension"].get<int>();
  if (doc.dimension < 2) parse_fail("dimension", "must be >= 2");

  if (j.contains("chart")) {
    if (!j["chart"].is_string() || j["chart"].get<std::string>() != "stereographic")
      parse_fail("chart", "only \"stereographic\" is supported");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      parse_fail("seed", "expected an integer");
    doc.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("budgets")) {
    if (!j["budgets"].is_object()) parse_fail("budgets", "expected an object");
    for (auto it = j["budgets"].begin(); it != j["budgets"].end(); ++it) {
      if (!it.value().is_number_integer())
        parse_fail("budgets." + it.key(), "expected an integer");
      doc.budgets[it.key()] = it.value().get<long long>();
    }
  }

  if (!j.contains("caps") || !j["caps"].is_array())
    parse_fail("caps", "expected an array");
  int idx = 0;
  for (const auto& cj : j["caps"]) {
    std::string where = "caps[" + std::to_string(idx++) + "]";
    if (!cj.is_object()) parse_fail(where, "expected an object");
    try {
      if (cj.contains("normal")) {
        Vec u = need_vector(cj["normal"], where + ".normal", doc.dimension + 1);
        if (!cj.contains("offset")) parse_fail(where + ".offset", "missing");
        double t = need_number(cj["offset"], where + ".offset");
        if (!(t > -1.0 && t < 1.0))
          parse_fail(where + ".offset", "must lie in (-1,1)");
        doc.caps.emplace_back(u, t);
      } else if (cj.contains("center")) {
        Vec c = need_vector(cj["center"], where + ".center", doc.dimension);
        if (!cj.contains("radius")) parse_fail(where + ".radius", "missing");
        double r = need_number(cj["radius"], where + ".radius");
        if (r <= 0.0) parse_fail(where + ".radius", "must be positive");
        doc.caps.push_back(cap_from_chart_ball(ChartBall{c, r}));
      } else {
        parse_fail(where, "needs either normal/offset or center/radius");
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ParseError) throw;
      parse_fail(where, e.what());
    }
  }
  return doc;
}

ConfigDocument load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_canonical(const ConfigDocument& doc) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"budgets\": {";
  bool first = true;
  for (const auto& [k, v] : doc.budgets) {
    os << (first ? "" : ",") << "\n    \"" << k << "\": " << v;
    first = false;
  }
  os << (doc.budgets.empty() ? "" : "\n  ") << "},\n";
  os << "  \"caps\": [";
  for (std::size_t i = 0; i < doc.caps.size(); ++i) {
    const Cap& c = doc.caps[i];
    os << (i ? "," : "") << "\n    {\"normal\": [";
    for (int d = 0; d < c.normal().size(); ++d)
      os << (d ? ", " : "") << fmt17(c.normal()[d]);
    os << "], \"offset\": " << fmt17(c.offset()) << "}";
  }
  os << (doc.caps.empty() ? "" : "\n  ") << "],\n";
  os << "  \"chart\": \"stereographic\",\n";
  os << "  \"dimension\": " << doc.dimension << ",\n";
  os << "  \"seed\": " << doc.seed << "\n";
  os << "}\n";
  return os.str();
}

SchottkySet schottky_from_config(const ConfigDocument& doc) {
  if (doc.caps.empty())
    raise(ErrorKind::ParseError, "configuration has no caps");
  SchottkySet s = make_schottky_set(doc.caps);
  if (s.n != doc.dimension)
    raise(ErrorKind::ParseError, "cap dimension disagrees with `dimension`");
  return s;
}

ConfigDocument config_from_schottky(const SchottkySet& s, std::uint64_t seed) {
  ConfigDocument doc;
  doc.dimension = s.n;
  doc.caps = s.caps;
  doc.seed = seed;
  return doc;
}

}  // namespace schottky
