#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "dyadic/geometry.hpp"

namespace dyadic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;

// Bad flag values or input files; mapped to kExitUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 1;
  int depth = 4;
  int m = 2;
  std::string p = "2";
  std::string pprime;  // empty: derived from p
  std::string q = "2";
  std::string qprime;  // empty: derived from q
  std::string r = "1";
  double aperture = 1.0;
  double c0 = 2.0;
  double c1 = 0.5;
  double c_stopping = 0.125;
  std::uint64_t seed = 1;
  int trials = 0;
  int stride = 2;
  std::string data;
  std::string kind = "field";
  std::string input;
  std::string out;
  std::string format = "json";

  GeometryConfig geometry() const;
};

// Accepts decimal numbers and "inf"; throws UsageError otherwise.
double parse_exponent(const std::string& text, const char* flag);

int cmd_generate(const Options& o);
int cmd_norms(const Options& o);
int cmd_duality(const Options& o);
int cmd_equivalence(const Options& o);
int cmd_tent(const Options& o);
int cmd_multiplier(const Options& o);

}  // namespace dyadic::cli
