#include "bernoullik/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "bernoullik/error.hpp"

namespace bernoullik::io {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidInput, msg); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) invalid(where + " needs the field \"" + key + "\"");
  return j.at(key);
}

std::size_t as_count(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    invalid(where + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

Perm perm_from_images(const Json& j, std::size_t degree, const std::string& where) {
  if (!j.is_array() || j.size() != degree) invalid(where + " must list " + std::to_string(degree) + " images");
  std::vector<Point> images;
  for (const Json& x : j) images.push_back(static_cast<Point>(as_count(x, where)));
  std::vector<bool> seen(degree, false);
  for (Point p : images) {
    if (p >= degree || seen[p]) invalid(where + " is not a permutation");
    seen[p] = true;
  }
  return Perm(std::move(images));
}

Perm perm_from_cycles(const Json& j, std::size_t degree, const std::string& where) {
  if (!j.is_array()) invalid(where + " must be a list of cycles");
  std::vector<std::vector<Point>> cycles;
  std::vector<bool> seen(degree, false);
  for (const Json& c : j) {
    if (!c.is_array()) invalid(where + " must be a list of cycles");
    std::vector<Point> cycle;
    for (const Json& x : c) {
      std::size_t p = as_count(x, where);
      if (p >= degree || seen[p]) invalid(where + " has a repeated or out-of-range point");
      seen[p] = true;
      cycle.push_back(static_cast<Point>(p));
    }
    cycles.push_back(std::move(cycle));
  }
  return Perm::from_cycles(degree, cycles);
}

}  // namespace

Json parse(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    invalid(what + " is not valid JSON: " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

PermGroup group_from_json(const Json& j) {
  const std::size_t degree = as_count(field(j, "degree", "group"), "group degree");
  if (degree == 0) invalid("group degree must be positive");
  std::vector<Perm> gens;
  if (j.contains("generators")) {
    for (const Json& g : j.at("generators")) gens.push_back(perm_from_images(g, degree, "group generator"));
  }
  if (j.contains("cycles")) {
    for (const Json& g : j.at("cycles")) gens.push_back(perm_from_cycles(g, degree, "group generator"));
  }
  return PermGroup(degree, std::move(gens));
}

Json group_to_json(const PermGroup& g) {
  Json gens = Json::array();
  for (const Perm& p : g.generators()) {
    auto img = p.images();
    gens.push_back(std::vector<Point>(img.begin(), img.end()));
  }
  return Json{{"degree", g.degree()}, {"generators", gens}};
}

GSetSpec gset_from_json(const PermGroup& g, const Json& j) {
  GSetSpec spec{g, {}};
  const Json& pieces = field(j, "pieces", "gset");
  if (!pieces.is_array() || pieces.empty()) invalid("gset pieces must be a nonempty list");
  for (const Json& p : pieces) {
    std::vector<Perm> gens;
    if (p.contains("stabilizer")) {
      for (const Json& s : p.at("stabilizer")) gens.push_back(perm_from_images(s, g.degree(), "stabilizer generator"));
    }
    std::optional<std::size_t> mult = 1;
    if (p.contains("multiplicity")) {
      const Json& m = p.at("multiplicity");
      if (m.is_string()) {
        if (m.get<std::string>() != "omega") invalid("multiplicity must be a positive integer or \"omega\"");
        mult = std::nullopt;
      } else {
        mult = as_count(m, "multiplicity");
        if (*mult == 0) invalid("multiplicity must be positive");
      }
    }
    spec.pieces.push_back(GSetPiece{g.subgroup(gens), mult});
  }
  return spec;
}

Json graded_to_json(const GradedAb& a) { return Json{{"K0", a.deg0.to_string()}, {"K1", a.deg1.to_string()}}; }

GradedAb graded_from_json(const Json& j) {
  auto part = [&](const char* key) {
    const Json& v = field(j, key, "graded group");
    if (!v.is_string()) invalid(std::string(key) + " must be a string such as \"Z^2 ⊕ Z/4\"");
    return Ab::parse(v.get<std::string>());
  };
  return {part("K0"), part("K1")};
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) invalid("matrix must be a list of rows");
  std::vector<std::vector<std::int64_t>> rows;
  std::size_t cols = 0;
  for (const Json& r : j) {
    if (!r.is_array()) invalid("matrix rows must be lists");
    std::vector<std::int64_t> row;
    for (const Json& x : r) {
      if (!x.is_number_integer()) invalid("matrix entries must be integers");
      row.push_back(x.get<std::int64_t>());
    }
    if (!rows.empty() && row.size() != cols) invalid("matrix rows differ in length");
    cols = row.size();
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows, cols);
}

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      const Int& v = m(i, k);
      if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        row.push_back(static_cast<std::int64_t>(v));
      } else {
        row.push_back(v.str());
      }
    }
    rows.push_back(row);
  }
  return rows;
}

Diagram diagram_from_json(const Json& j) {
  Diagram d;
  for (const Json& o : field(j, "objects", "diagram")) d.objects.push_back(graded_from_json(o));
  if (j.contains("arrows")) {
    for (const Json& a : j.at("arrows")) {
      Diagram::Arrow arrow{as_count(field(a, "source", "arrow"), "arrow source"),
                           as_count(field(a, "target", "arrow"), "arrow target"), IntMatrix(0, 0), IntMatrix(0, 0)};
      if (a.contains("deg0")) arrow.deg0 = matrix_from_json(a.at("deg0"));
      if (a.contains("deg1")) arrow.deg1 = matrix_from_json(a.at("deg1"));
      d.arrows.push_back(std::move(arrow));
    }
  }
  return d;
}

Json report_to_json(const KReport& r) {
  Json terms = Json::array();
  for (const KTerm& t : r.terms) {
    Json value = graded_to_json(t.value);
    terms.push_back(Json{{"key", t.key}, {"K0", value["K0"]}, {"K1", value["K1"]}});
  }
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  Json out = Json::object();
  if (!r.complete) out["banner"] = r.banner();
  Json body{
      {"formula", r.formula},
      {"params", params},
      {"complete", r.complete},
      {"determined", r.determined},
      {"max_subset_size", r.max_subset_size ? Json(*r.max_subset_size) : Json(nullptr)},
      {"window", r.window},
      {"terms", terms},
      {"total", r.determined ? graded_to_json(r.total) : Json(nullptr)},
      {"notes", r.notes},
  };
  out.update(body);
  return out;
}

KReport report_from_json(const Json& j) {
  KReport r;
  r.formula = field(j, "formula", "report").get<std::string>();
  for (const auto& [k, v] : field(j, "params", "report").items()) r.params[k] = v.get<std::string>();
  r.complete = field(j, "complete", "report").get<bool>();
  r.determined = field(j, "determined", "report").get<bool>();
  const Json& max = field(j, "max_subset_size", "report");
  if (!max.is_null()) r.max_subset_size = as_count(max, "max_subset_size");
  r.window = field(j, "window", "report").get<std::string>();
  for (const Json& t : field(j, "terms", "report")) {
    r.terms.push_back({field(t, "key", "term").get<std::string>(), graded_from_json(t)});
  }
  const Json& total = field(j, "total", "report");
  if (!total.is_null()) r.total = graded_from_json(total);
  for (const Json& n : field(j, "notes", "report")) r.notes.push_back(n.get<std::string>());
  return r;
}

}  // namespace bernoullik::io
