#pragma once

// File formats and report writers for the command-line tool.
//
// Field file:  {"n": 1, "depth": 1, "values": [{"level": 0, "index": [0], "v": 1.0}, ...]}
// Grid file:   {"n": 1, "depth": 1, "m": 2, "regions": [{"level": 0, "index": [0], "cells": [...]}, ...]}
//
// Cubes missing from "values" or "regions" are zero. Cells are row-major with t slowest.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dyadic/fields.hpp"

namespace dyadic::io {

using Json = nlohmann::ordered_json;

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

DyadicField field_from_json(const Json& j);
GridFunction grid_from_json(const Json& j);
Json to_json(const DyadicField& f);
Json to_json(const GridFunction& g);

bool is_grid(const Json& j);
Json read_json_file(const std::string& path);

// Compact JSON with keys in insertion order and doubles as %.17g;
// non-finite doubles are written as the strings "inf", "-inf" or "nan".
std::string dump(const Json& j);

// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

// %.17g with a trailing ".0" for integral values; "inf", "-inf", "nan" otherwise.
std::string format_double(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace dyadic::io
