#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dyadic::io {

namespace {

TreePtr tree_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  for (const char* key : {"n", "depth"}) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) {
      throw FormatError(std::string("missing or non-integer \"") + key + "\"");
    }
  }
  const TreeConfig cfg{j.at("n").get<int>(), j.at("depth").get<int>()};
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
  return DyadicTree::make(cfg);
}

CubeId cube_id(const DyadicTree& tree, const Json& entry) {
  if (!entry.contains("level") || !entry.contains("index") || !entry.at("index").is_array()) {
    throw FormatError("entry needs \"level\" and \"index\"");
  }
  DyadicCube c;
  c.level = entry.at("level").get<int>();
  for (const auto& k : entry.at("index")) c.index.push_back(k.get<std::int64_t>());
  try {
    return tree.id_of(c);
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad cube: ") + e.what());
  }
}

double number(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return HUGE_VAL;
  }
  throw FormatError("expected a number");
}

Json cube_json(const DyadicTree& tree, CubeId id) {
  const auto c = tree.cube(id);
  Json j;
  j["level"] = c.level;
  j["index"] = c.index;
  return j;
}

void dump_into(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ',';
        dump_into(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "\"" + format_double(v) + "\"";
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string dump(const Json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

bool is_grid(const Json& j) { return j.is_object() && j.contains("m"); }

DyadicField field_from_json(const Json& j) {
  const TreePtr tree = tree_from_json(j);
  std::vector<double> vals(tree->size(), 0.0);
  if (j.contains("values")) {
    if (!j.at("values").is_array()) throw FormatError("\"values\" must be an array");
    for (const auto& e : j.at("values")) {
      if (!e.contains("v")) throw FormatError("value entry needs \"v\"");
      const double v = number(e.at("v"));
      if (!(v >= 0.0) || std::isinf(v)) throw FormatError("field values must be finite and nonnegative");
      vals[cube_id(*tree, e)] = v;
    }
  }
  return DyadicField(tree, std::move(vals));
}

GridFunction grid_from_json(const Json& j) {
  const TreePtr tree = tree_from_json(j);
  if (!j.at("m").is_number_integer() || j.at("m").get<int>() < 1) throw FormatError("\"m\" must be a positive integer");
  GridFunction g(tree, j.at("m").get<int>());
  if (j.contains("regions")) {
    if (!j.at("regions").is_array()) throw FormatError("\"regions\" must be an array");
    for (const auto& e : j.at("regions")) {
      const CubeId id = cube_id(*tree, e);
      if (!e.contains("cells") || !e.at("cells").is_array() || e.at("cells").size() != g.cells_per_region()) {
        throw FormatError("region needs \"cells\" with " + std::to_string(g.cells_per_region()) + " entries");
      }
      auto region = g.region(id);
      for (std::size_t c = 0; c < region.size(); ++c) {
        const double v = number(e.at("cells")[c]);
        if (!std::isfinite(v)) throw FormatError("grid values must be finite");
        region[c] = v;
      }
    }
  }
  return g;
}

Json to_json(const DyadicField& f) {
  const auto& tree = f.tree();
  Json j;
  j["n"] = tree.dim();
  j["depth"] = tree.depth();
  Json vals = Json::array();
  for (CubeId id = 0; id < tree.size(); ++id) {
    Json e = cube_json(tree, id);
    e["v"] = f[id];
    vals.push_back(std::move(e));
  }
  j["values"] = std::move(vals);
  return j;
}

Json to_json(const GridFunction& g) {
  const auto& tree = g.tree();
  Json j;
  j["n"] = tree.dim();
  j["depth"] = tree.depth();
  j["m"] = g.subdivision();
  Json regions = Json::array();
  for (CubeId id = 0; id < tree.size(); ++id) {
    Json e = cube_json(tree, id);
    const auto r = g.region(id);
    e["cells"] = std::vector<double>(r.begin(), r.end());
    regions.push_back(std::move(e));
  }
  j["regions"] = std::move(regions);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw std::logic_error("csv row width mismatch");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return os.str();
}

}  // namespace dyadic::io
