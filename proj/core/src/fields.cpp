#include "dyadic/fields.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "grid_walk.hpp"

namespace dyadic {

double conjugate(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("conjugate: exponent must be >= 1");
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

DyadicField::DyadicField(TreePtr tree) : tree_(std::move(tree)), values_(tree_->size(), 0.0) {}

DyadicField::DyadicField(TreePtr tree, std::vector<double> values)
    : tree_(std::move(tree)), values_(std::move(values)) {
  if (values_.size() != tree_->size()) throw std::invalid_argument("field: one value per cube required");
  for (double v : values_) {
    if (!(v >= 0.0) || std::isinf(v)) throw std::invalid_argument("field: values must be finite and >= 0");
  }
}

void DyadicField::set(const DyadicCube& cube, double v) {
  if (!(v >= 0.0) || std::isinf(v)) throw std::invalid_argument("field: values must be finite and >= 0");
  values_[tree_->id_of(cube)] = v;
}

bool DyadicField::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double DyadicField::max() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

DyadicField DyadicField::scaled(double lambda) const {
  DyadicField out(*this);
  for (auto& v : out.values_) v *= lambda;
  return out;
}

BoundaryFunction::BoundaryFunction(TreePtr tree) : tree_(std::move(tree)), values_(tree_->leaf_count(), 0.0) {}

BoundaryFunction::BoundaryFunction(TreePtr tree, std::vector<double> values)
    : tree_(std::move(tree)), values_(std::move(values)) {
  if (values_.size() != tree_->leaf_count()) throw std::invalid_argument("boundary function: one value per leaf required");
}

BoundaryFunction BoundaryFunction::pow(double e) const {
  BoundaryFunction out(*this);
  for (auto& v : out.values_) v = std::pow(std::abs(v), e);
  return out;
}

GridFunction::GridFunction(TreePtr tree, int m) : tree_(std::move(tree)), m_(m) {
  if (m < 1) throw std::invalid_argument("grid: subdivision m must be >= 1");
  cells_per_region_ = 1;
  for (int i = 0; i <= tree_->dim(); ++i) cells_per_region_ *= static_cast<std::size_t>(m);
  values_.assign(tree_->size() * cells_per_region_, 0.0);
}

GridFunction::GridFunction(TreePtr tree, int m, std::vector<double> values) : GridFunction(std::move(tree), m) {
  if (values.size() != values_.size()) throw std::invalid_argument("grid: wrong number of cell values");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("grid: cell values must be finite");
  }
  values_ = std::move(values);
}

std::span<const double> GridFunction::region(CubeId q) const {
  return std::span<const double>(values_).subspan(q * cells_per_region_, cells_per_region_);
}

std::span<double> GridFunction::region(CubeId q) {
  return std::span<double>(values_).subspan(q * cells_per_region_, cells_per_region_);
}

Box GridFunction::cell_box(CubeId q, std::size_t c) const {
  const Box w = tree_->whitney(q);
  const int n = tree_->dim();
  const double l = w.t_hi;
  const double dt = 0.5 * l / m_;
  const double dx = l / m_;
  Box out;
  out.x_lo.resize(static_cast<std::size_t>(n));
  out.x_hi.resize(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    const auto k = static_cast<double>(c % static_cast<std::size_t>(m_));
    c /= static_cast<std::size_t>(m_);
    out.x_lo[static_cast<std::size_t>(i)] = w.x_lo[static_cast<std::size_t>(i)] + k * dx;
    out.x_hi[static_cast<std::size_t>(i)] = w.x_lo[static_cast<std::size_t>(i)] + (k + 1.0) * dx;
  }
  const auto it = static_cast<double>(c);
  out.t_lo = w.t_lo + it * dt;
  out.t_hi = w.t_lo + (it + 1.0) * dt;
  return out;
}

double GridFunction::cell_center(CubeId q, std::size_t c, std::vector<double>& x) const {
  const Box b = cell_box(q, c);
  x.resize(b.x_lo.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.5 * (b.x_lo[i] + b.x_hi[i]);
  return 0.5 * (b.t_lo + b.t_hi);
}

double GridFunction::t_floor() const { return std::ldexp(1.0, -tree_->depth() - 1); }

Box GridFunction::domain() const {
  Box b;
  b.t_lo = t_floor();
  b.t_hi = 1.0;
  b.x_lo.assign(static_cast<std::size_t>(tree_->dim()), 0.0);
  b.x_hi.assign(static_cast<std::size_t>(tree_->dim()), 1.0);
  return b;
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

GridFunction GridFunction::scaled(double lambda) const {
  GridFunction out(*this);
  for (auto& v : out.values_) v *= lambda;
  return out;
}

GridFunction GridFunction::abs_pow(double r) const {
  GridFunction out(*this);
  for (auto& v : out.values_) v = std::pow(std::abs(v), r);
  return out;
}

GridFunction GridFunction::refined(int factor) const {
  if (factor < 1) throw std::invalid_argument("grid: refinement factor must be >= 1");
  GridFunction out(tree_, m_ * factor);
  const int n = tree_->dim();
  const auto un = static_cast<std::size_t>(n);
  const auto fm = static_cast<std::size_t>(out.m_);
  const auto cm = static_cast<std::size_t>(m_);
  const auto uf = static_cast<std::size_t>(factor);
  std::vector<std::size_t> digits(un + 1);
  for (CubeId q = 0; q < tree_->size(); ++q) {
    for (std::size_t fc = 0; fc < out.cells_per_region_; ++fc) {
      std::size_t rest = fc;
      for (std::size_t d = un + 1; d > 0; --d) {
        digits[d - 1] = rest % fm;
        rest /= fm;
      }
      std::size_t cc = 0;
      for (std::size_t d = 0; d <= un; ++d) cc = cc * cm + digits[d] / uf;
      out.cell(q, fc) = cell(q, cc);
    }
  }
  return out;
}

ExponentConfig ExponentConfig::from(double p, double q, double r) {
  ExponentConfig e;
  e.p = p;
  e.q = q;
  e.r = r;
  auto tilde = [r](double x) {
    const double inv = 1.0 / r - (std::isinf(x) ? 0.0 : 1.0 / x);
    return inv <= 0.0 ? kInf : 1.0 / inv;
  };
  e.p_tilde = tilde(p);
  e.q_tilde = tilde(q);
  e.validate();
  return e;
}

void ExponentConfig::validate() const {
  if (!(r >= 1.0) || std::isinf(r)) throw std::invalid_argument("exponents: need 1 <= r < inf");
  if (!(p >= r) || std::isinf(p)) throw std::invalid_argument("exponents: need r <= p < inf");
  if (!(q >= r)) throw std::invalid_argument("exponents: need r <= q <= inf");
  auto inv = [](double x) { return std::isinf(x) ? 0.0 : 1.0 / x; };
  const double tol = 1e-12;
  if (std::abs(inv(p) + inv(p_tilde) - inv(r)) > tol || std::abs(inv(q) + inv(q_tilde) - inv(r)) > tol) {
    throw std::invalid_argument("exponents: need 1/p + 1/p~ = 1/q + 1/q~ = 1/r");
  }
}

double boundary_lp_norm(const BoundaryFunction& h, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("boundary_lp_norm: p must be >= 1");
  const auto vals = h.values();
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : vals) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (double v : vals) s += std::pow(std::abs(v), p);
  return std::pow(s * h.tree().leaf_volume(), 1.0 / p);
}

double whitney_average(const GridFunction& f, double q, const Box& region) {
  if (!(q >= 1.0)) throw std::invalid_argument("whitney_average: q must be >= 1");
  const Box clipped = detail::clip_to_domain(f, region);
  const double vol = clipped.volume();
  if (!(vol > 0.0)) throw std::domain_error("whitney_average: region misses the data domain");
  if (std::isinf(q)) {
    double m = 0.0;
    detail::for_each_overlap(f, clipped, [&](CubeId c, std::size_t k, double) { m = std::max(m, std::abs(f.cell(c, k))); });
    return m;
  }
  double s = 0.0;
  detail::for_each_overlap(f, clipped, [&](CubeId c, std::size_t k, double v) { s += std::pow(std::abs(f.cell(c, k)), q) * v; });
  return std::pow(s / vol, 1.0 / q);
}

DyadicField to_sequence(const GridFunction& f, double q, Normalization norm) {
  if (!(q >= 1.0)) throw std::invalid_argument("to_sequence: q must be >= 1");
  const DyadicTree& tree = f.tree();
  std::vector<double> out(tree.size(), 0.0);
  const auto cells = static_cast<double>(f.cells_per_region());
  for (CubeId id = 0; id < tree.size(); ++id) {
    const auto reg = f.region(id);
    double avg = 0.0;
    if (std::isinf(q)) {
      for (double v : reg) avg = std::max(avg, std::abs(v));
    } else {
      double s = 0.0;
      for (double v : reg) s += std::pow(std::abs(v), q);
      avg = std::pow(s / cells, 1.0 / q);
    }
    if (norm == Normalization::kCarleson) avg *= 0.5 * tree.side(id) * tree.volume(id);
    out[id] = avg;
  }
  return DyadicField(f.tree_ptr(), std::move(out));
}

DataSpec DataSpec::parse(const std::string& text) {
  DataSpec s;
  auto head = text.substr(0, text.find(':'));
  auto rest = text.find(':') == std::string::npos ? std::string{} : text.substr(text.find(':') + 1);
  if (head == "zero") {
    s.kind = Kind::kZero;
  } else if (head == "uniform") {
    s.kind = Kind::kUniform;
  } else if (head == "lognormal") {
    s.kind = Kind::kLognormal;
  } else if (head == "const") {
    s.kind = Kind::kConst;
    if (rest.empty()) throw std::invalid_argument("data spec: const needs a value, e.g. const:2");
    s.value = std::stod(rest);
  } else if (head == "sparse") {
    s.kind = Kind::kSparse;
    if (!rest.empty()) s.density = std::stod(rest);
    if (!(s.density >= 0.0 && s.density <= 1.0)) throw std::invalid_argument("data spec: sparse density must be in [0,1]");
  } else if (head == "delta") {
    s.kind = Kind::kDelta;
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("data spec: delta needs level and index, e.g. delta:1:0");
    s.cube.level = std::stoi(rest.substr(0, colon));
    std::stringstream idx(rest.substr(colon + 1));
    std::string tok;
    while (std::getline(idx, tok, ',')) s.cube.index.push_back(std::stoll(tok));
  } else {
    throw std::invalid_argument("data spec: unknown kind '" + text + "'");
  }
  return s;
}

namespace {

template <class Sink>
void draw(std::mt19937_64& rng, const DataSpec& spec, std::size_t count, Sink&& sink) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::lognormal_distribution<double> logn(0.0, 1.0);
  for (std::size_t i = 0; i < count; ++i) {
    double v = 0.0;
    switch (spec.kind) {
      case DataSpec::Kind::kZero:
      case DataSpec::Kind::kDelta:
        v = 0.0;
        break;
      case DataSpec::Kind::kConst:
        v = spec.value;
        break;
      case DataSpec::Kind::kUniform:
        v = unit(rng);
        break;
      case DataSpec::Kind::kLognormal:
        v = logn(rng);
        break;
      case DataSpec::Kind::kSparse: {
        const double keep = unit(rng);
        const double mag = unit(rng);
        v = keep < spec.density ? mag : 0.0;
        break;
      }
    }
    sink(i, v);
  }
}

}  // namespace

DyadicField random_field(std::uint64_t seed, const TreePtr& tree, const DataSpec& spec) {
  std::mt19937_64 rng(seed);
  std::vector<double> vals(tree->size(), 0.0);
  draw(rng, spec, vals.size(), [&](std::size_t i, double v) { vals[i] = v; });
  if (spec.kind == DataSpec::Kind::kDelta) vals[tree->id_of(spec.cube)] = spec.value;
  return DyadicField(tree, std::move(vals));
}

GridFunction random_grid(std::uint64_t seed, const TreePtr& tree, int m, const DataSpec& spec) {
  std::mt19937_64 rng(seed);
  GridFunction g(tree, m);
  std::vector<double> vals(g.size(), 0.0);
  draw(rng, spec, vals.size(), [&](std::size_t i, double v) { vals[i] = v; });
  if (spec.kind == DataSpec::Kind::kDelta) {
    const CubeId q = tree->id_of(spec.cube);
    for (std::size_t c = 0; c < g.cells_per_region(); ++c) vals[q * g.cells_per_region() + c] = spec.value;
  }
  return GridFunction(tree, m, std::move(vals));
}

}  // namespace dyadic
