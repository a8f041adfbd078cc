#pragma once
// JSON documents (schema "legfront/1") for fronts, curves, charts and sheaf representations.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "contact.hpp"
#include "error.hpp"
#include "front.hpp"
#include "loose.hpp"
#include "sheaf.hpp"

namespace legfront {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "legfront/1";

namespace detail {

template <class T>
T get_field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string(what) + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(std::string(what) + ": field '" + key + "' has the wrong type");
  }
}

template <class T>
T get_or(const Json& j, const char* key, T dflt, const char* what) {
  if (!j.contains(key)) return dflt;
  return get_field<T>(j, key, what);
}

inline std::vector<double> number_list(const Json& j, const char* key, const char* what) {
  auto v = get_field<std::vector<double>>(j, key, what);
  for (double d : v)
    if (!std::isfinite(d)) throw SchemaError(std::string(what) + ": non-finite value in '" + key + "'");
  return v;
}

inline void expect_type(const Json& j, const char* type) {
  if (!j.is_object()) throw SchemaError("document is not a JSON object");
  const auto s = get_field<std::string>(j, "schema", "document");
  if (s != kSchema) throw SchemaError("unsupported schema '" + s + "', expected " + kSchema);
  const auto t = get_field<std::string>(j, "type", "document");
  if (t != type) throw SchemaError("document has type '" + t + "', expected '" + type + "'");
}

inline Json header(const char* type) {
  Json j;
  j["schema"] = kSchema;
  j["type"] = type;
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------------------
// Files

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline std::string dump(const Json& j) { return j.dump(1) + "\n"; }

// ---------------------------------------------------------------------------------------
// Fronts

inline Json plat_to_json(const PlatData& p) {
  Json j;
  j["word"] = word_to_string(p.word);
  j["open_strands"] = p.open_strands;
  Json fl = Json::array();
  for (bool b : p.flips) fl.push_back(b);
  j["flips"] = fl;
  j["style"] = {{"width", p.style.width}, {"height", p.style.height}, {"samples", p.style.samples}};
  return j;
}

inline PlatData plat_from_json(const Json& j) {
  const char* w = "plat";
  PlatData p;
  p.word = word_from_string(detail::get_field<std::string>(j, "word", w));
  p.open_strands = detail::get_or<int>(j, "open_strands", 0, w);
  p.flips = detail::get_or<std::vector<bool>>(j, "flips", {}, w);
  if (j.contains("style")) {
    const auto& s = j["style"];
    p.style.width = detail::get_or<double>(s, "width", p.style.width, w);
    p.style.height = detail::get_or<double>(s, "height", p.style.height, w);
    p.style.samples = detail::get_or<int>(s, "samples", p.style.samples, w);
    if (!(p.style.width > 0) || !(p.style.height > 0) || p.style.samples < 4)
      throw SchemaError("plat style needs positive width, height and at least 4 samples");
  }
  if (p.open_strands < 0) throw SchemaError("plat open_strands must be non-negative");
  return p;
}

inline Json front_to_json(const FrontDiagram& f) {
  Json j = detail::header("front");
  j["closed"] = f.closed;
  Json arcs = Json::array();
  for (const auto& a : f.arcs) {
    Json ja;
    ja["id"] = a.id;
    ja["x"] = a.x;
    ja["z"] = a.z;
    if (!a.y.empty()) ja["y"] = a.y;
    arcs.push_back(std::move(ja));
  }
  j["arcs"] = std::move(arcs);
  Json js = Json::array();
  for (const auto& u : f.junctions) js.push_back({{"from", u.from}, {"to", u.to}, {"cusp", u.cusp}});
  j["junctions"] = std::move(js);
  Json cs = Json::array();
  for (const auto& c : f.crossings) cs.push_back({{"a", c.a}, {"b", c.b}, {"x", c.x}, {"over", c.over}});
  j["crossings"] = std::move(cs);
  if (f.plat) j["plat"] = plat_to_json(*f.plat);
  return j;
}

// A front document lists its arcs, or only a plat word that is then realized.
inline FrontDiagram front_from_json(const Json& j) {
  detail::expect_type(j, "front");
  const char* w = "front";
  FrontDiagram f;
  if (j.contains("plat")) f.plat = plat_from_json(j["plat"]);
  if (!j.contains("arcs")) {
    if (!f.plat) throw SchemaError("front: needs 'arcs' or 'plat'");
    return realize_plat(*f.plat);
  }
  f.closed = detail::get_or<bool>(j, "closed", false, w);
  const auto& arcs = j["arcs"];
  if (!arcs.is_array()) throw SchemaError("front: 'arcs' must be an array");
  for (const auto& ja : arcs) {
    FrontArc a;
    a.id = detail::get_field<int>(ja, "id", "arc");
    a.x = detail::number_list(ja, "x", "arc");
    a.z = detail::number_list(ja, "z", "arc");
    if (ja.contains("y")) a.y = detail::number_list(ja, "y", "arc");
    if (a.x.size() != a.z.size() || (!a.y.empty() && a.y.size() != a.x.size()))
      throw SchemaError("arc " + std::to_string(a.id) + ": x, z, y lengths differ");
    f.arcs.push_back(std::move(a));
  }
  if (j.contains("junctions"))
    for (const auto& ju : j["junctions"])
      f.junctions.push_back({detail::get_field<int>(ju, "from", "junction"),
                             detail::get_field<int>(ju, "to", "junction"),
                             detail::get_or<bool>(ju, "cusp", false, "junction")});
  if (j.contains("crossings"))
    for (const auto& c : j["crossings"])
      f.crossings.push_back({detail::get_field<int>(c, "a", "crossing"), detail::get_field<int>(c, "b", "crossing"),
                             detail::get_field<double>(c, "x", "crossing"),
                             detail::get_field<int>(c, "over", "crossing")});
  return f;
}

// ---------------------------------------------------------------------------------------
// Curves and sheets

inline ContactModel model_from_name(const std::string& s) {
  if (s == "R3Std") return ContactModel::r3();
  if (s == "Unicycle") return ContactModel::unicycle();
  if (s.rfind("R2n1Std(", 0) == 0 && s.back() == ')') {
    try {
      std::size_t used = 0;
      const auto inner = s.substr(8, s.size() - 9);
      const int n = std::stoi(inner, &used);
      if (used == inner.size() && n >= 1) return ContactModel::standard(n);
    } catch (const std::exception&) {
    }
  }
  throw SchemaError("unknown contact model '" + s + "'");
}

inline Json curve_to_json(const SampledLegendrian& c) {
  Json j = detail::header("curve");
  j["model"] = c.model.name();
  j["closed"] = c.closed;
  if (!c.shape.empty()) j["shape"] = c.shape;
  j["params"] = c.params;
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(p);
  j["points"] = std::move(pts);
  return j;
}

inline SampledLegendrian curve_from_json(const Json& j) {
  detail::expect_type(j, "curve");
  const char* w = "curve";
  SampledLegendrian c;
  c.model = model_from_name(detail::get_field<std::string>(j, "model", w));
  c.closed = detail::get_or<bool>(j, "closed", false, w);
  c.shape = detail::get_or<std::vector<std::size_t>>(j, "shape", {}, w);
  c.params = detail::get_or<std::vector<double>>(j, "params", {}, w);
  c.points = detail::get_field<std::vector<Point>>(j, "points", w);
  for (const auto& p : c.points) {
    c.model.check(p, "curve point");
    for (double v : p)
      if (!std::isfinite(v)) throw SchemaError("curve: non-finite coordinate");
  }
  if (!c.shape.empty()) {
    std::size_t n = 1, total = 0;
    for (auto s : c.shape) {
      n *= s;
      total += s;
    }
    if (n != c.points.size()) throw SchemaError("curve: shape does not match the point count");
    if (!c.params.empty() && c.params.size() != total) throw SchemaError("curve: grid params do not match shape");
  } else {
    if (c.params.empty()) c.params = linspace(0, 1, c.points.size());
    if (c.params.size() != c.points.size()) throw SchemaError("curve: params and points lengths differ");
  }
  return c;
}

// Several lifted components in one document.
inline Json curves_to_json(const std::vector<SampledLegendrian>& cs) {
  Json j = detail::header("curves");
  Json arr = Json::array();
  for (const auto& c : cs) arr.push_back(curve_to_json(c));
  j["curves"] = std::move(arr);
  return j;
}

inline std::vector<SampledLegendrian> curves_from_json(const Json& j) {
  if (j.is_object() && j.value("type", "") == "curve") return {curve_from_json(j)};
  detail::expect_type(j, "curves");
  std::vector<SampledLegendrian> out;
  for (const auto& c : detail::get_field<Json>(j, "curves", "curves")) out.push_back(curve_from_json(c));
  return out;
}

// ---------------------------------------------------------------------------------------
// Charts

inline Rational rational_from_json(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw SchemaError(std::string(what) + ": missing field '" + key + "'");
  const auto& v = j[key];
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw SchemaError(std::string(what) + ": non-finite '" + key + "'");
    return exact(d);
  }
  throw SchemaError(std::string(what) + ": field '" + key + "' must be a number or a p/q string");
}

inline Json chart_to_json(const LooseChart& ch) {
  Json j = detail::header("chart");
  Json cube = Json::array();
  for (const auto& s : ch.cube.side) cube.push_back({s[0], s[1]});
  j["cube"] = std::move(cube);
  j["rho"] = to_string(ch.rho);
  j["action"] = to_string(ch.action);
  j["q_center"] = ch.q_center;
  return j;
}

// The zig-zag is rebuilt from the action; a stored cube overrides the computed one.
inline LooseChart chart_from_json(const Json& j, std::size_t samples_per_arc = 2000) {
  detail::expect_type(j, "chart");
  const Rational rho = rational_from_json(j, "rho", "chart");
  const Rational a = rational_from_json(j, "action", "chart");
  if (rho <= 0 || a <= 0) throw SchemaError("chart: rho and action must be positive");
  LooseChart ch = make_chart(rho, a, 0.1, samples_per_arc);
  if (j.contains("cube")) {
    const auto c = detail::get_field<std::vector<std::vector<double>>>(j, "cube", "chart");
    if (c.size() != 3) throw SchemaError("chart: cube needs three intervals");
    for (int k = 0; k < 3; ++k) {
      if (c[static_cast<std::size_t>(k)].size() != 2 || !(c[k][0] < c[k][1]))
        throw SchemaError("chart: cube intervals must be [lo, hi] with lo < hi");
      ch.cube.side[static_cast<std::size_t>(k)] = {c[k][0], c[k][1]};
    }
  }
  ch.q_center = detail::get_or<double>(j, "q_center", 0.0, "chart");
  return ch;
}

// ---------------------------------------------------------------------------------------
// Sheaf representations

inline Json sheaf_to_json(const SheafRep& r) {
  Json j = detail::header("sheaf");
  j["poset"] = to_string(r.poset.kind);
  j["p"] = r.p;
  Json dims = Json::object();
  for (std::size_t s = 0; s < r.poset.strata.size(); ++s) dims[r.poset.strata[s].name] = r.dims[s];
  j["dims"] = std::move(dims);
  Json maps = Json::object();
  for (std::size_t e = 0; e < r.poset.edges.size(); ++e) {
    const auto& M = r.maps[e];
    Json rows = Json::array();
    for (int i = 0; i < M.rows; ++i) {
      Json row = Json::array();
      for (int c = 0; c < M.cols; ++c) row.push_back(M.at(i, c));
      rows.push_back(std::move(row));
    }
    maps[r.poset.edge_name(static_cast<int>(e))] = std::move(rows);
  }
  j["maps"] = std::move(maps);
  return j;
}

// Missing dims default to 0; missing maps default to zero matrices.
inline SheafRep sheaf_from_json(const Json& j) {
  detail::expect_type(j, "sheaf");
  SheafRep r;
  r.poset = build_poset(poset_kind_from(detail::get_field<std::string>(j, "poset", "sheaf")));
  r.p = detail::get_field<int>(j, "p", "sheaf");
  if (!is_prime(r.p)) throw SchemaError("sheaf: p must be prime");
  r.dims.assign(r.poset.strata.size(), 0);
  if (j.contains("dims")) {
    if (!j["dims"].is_object()) throw SchemaError("sheaf: 'dims' must be an object");
    for (const auto& [name, v] : j["dims"].items()) {
      if (!v.is_number_integer() || v.get<int>() < 0) throw SchemaError("sheaf: dims must be non-negative integers");
      r.dims[static_cast<std::size_t>(r.poset.stratum(name))] = v.get<int>();
    }
  }
  r.maps.resize(r.poset.edges.size());
  for (std::size_t e = 0; e < r.poset.edges.size(); ++e) {
    auto& M = r.maps[e];
    M.rows = r.dims[static_cast<std::size_t>(r.poset.edges[e].to)];
    M.cols = r.dims[static_cast<std::size_t>(r.poset.edges[e].from)];
    M.a.assign(static_cast<std::size_t>(M.rows * M.cols), 0);
  }
  if (j.contains("maps")) {
    if (!j["maps"].is_object()) throw SchemaError("sheaf: 'maps' must be an object");
    for (const auto& [name, v] : j["maps"].items()) {
      int e = -1;
      for (std::size_t k = 0; k < r.poset.edges.size(); ++k)
        if (r.poset.edge_name(static_cast<int>(k)) == name) e = static_cast<int>(k);
      if (e < 0) throw SchemaError("sheaf: unknown edge '" + name + "'");
      auto& M = r.maps[static_cast<std::size_t>(e)];
      std::vector<std::vector<long long>> rows;
      try {
        rows = v.get<std::vector<std::vector<long long>>>();
      } catch (const nlohmann::json::exception&) {
        throw SchemaError("sheaf: map '" + name + "' must be a matrix of integers");
      }
      if (static_cast<int>(rows.size()) != M.rows) throw SchemaError("sheaf: map '" + name + "' has wrong row count");
      for (int i = 0; i < M.rows; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != M.cols)
          throw SchemaError("sheaf: map '" + name + "' has wrong column count");
        for (int c = 0; c < M.cols; ++c) {
          const long long x = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
          M.a[static_cast<std::size_t>(i * M.cols + c)] = static_cast<int>(((x % r.p) + r.p) % r.p);
        }
      }
    }
  }
  return r;
}

}  // namespace legfront
