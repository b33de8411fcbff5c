#include "scatter/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <json.hpp>
#include <numeric>
#include <string>

#include "scatter/error.hpp"

namespace scatter::topology {

namespace {

using nlohmann::json;

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

json point_json(Point p) { return json::array({p.x, p.y}); }

Point point_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("topology json: a point is a two-element array");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Grid::Grid(double side, double resolution) : side_(side), resolution_(resolution), k_(0) {
  if (!(side > 0.0) || !(resolution > 0.0) || !std::isfinite(side) || !std::isfinite(resolution)) {
    detail::fail_domain("Grid", "side and resolution must be positive and finite");
  }
  const double ratio = side / resolution;
  const double k = std::round(ratio);
  if (std::abs(ratio - k) > 1e-9 * std::max(1.0, ratio) || k < 1.0) {
    detail::fail_domain("Grid", "side / resolution must be a positive integer (got " + std::to_string(ratio) + ")");
  }
  k_ = static_cast<std::size_t>(k);
}

Point Grid::point(std::size_t index) const {
  if (index >= point_count()) detail::fail_domain("Grid::point", "index out of range");
  const std::size_t k1 = index / (k_ + 1);
  const std::size_t k2 = index % (k_ + 1);
  return {static_cast<double>(k1) * resolution_, static_cast<double>(k2) * resolution_};
}

std::optional<std::size_t> Grid::index_of(Point p) const {
  const double f1 = p.x / resolution_;
  const double f2 = p.y / resolution_;
  const double k1 = std::round(f1);
  const double k2 = std::round(f2);
  if (std::abs(f1 - k1) > 1e-9 || std::abs(f2 - k2) > 1e-9) return std::nullopt;
  if (k1 < 0 || k2 < 0 || k1 > static_cast<double>(k_) || k2 > static_cast<double>(k_)) return std::nullopt;
  return static_cast<std::size_t>(k1) * (k_ + 1) + static_cast<std::size_t>(k2);
}

std::vector<Point> grid_points(double side, double resolution) {
  const Grid grid(side, resolution);
  std::vector<Point> out(grid.point_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = grid.point(i);
  return out;
}

void Layout::validate(const Grid& grid) const {
  std::vector<std::size_t> used;
  auto check = [&](Point p, const char* what) {
    const auto idx = grid.index_of(p);
    if (!idx) detail::fail_domain("Layout", std::string(what) + " is not a grid point");
    if (std::find(used.begin(), used.end(), *idx) != used.end()) {
      detail::fail_domain("Layout", "reader and emitter positions must be distinct");
    }
    used.push_back(*idx);
  };
  check(reader, "reader");
  for (Point e : emitters) check(e, "emitter");
}

Layout Layout::canonical_monostatic(const Grid& grid) {
  Layout out{{grid.side() / 2.0, grid.side() / 2.0}, {}};
  out.validate(grid);
  return out;
}

Layout Layout::canonical_multistatic(const Grid& grid, std::size_t n_emitters) {
  if (n_emitters < 1 || n_emitters > 4) {
    detail::fail_domain("Layout::canonical_multistatic", "canonical layouts hold 1 to 4 emitters");
  }
  const double q = grid.side() / 4.0;
  const Point quarter[4] = {{q, q}, {3 * q, q}, {3 * q, 3 * q}, {q, 3 * q}};
  Layout out{{grid.side() / 2.0, grid.side() / 2.0}, {quarter, quarter + n_emitters}};
  out.validate(grid);
  return out;
}

void UniformRange::validate(const char* what) const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    detail::fail_domain(what, "range needs finite lo <= hi");
  }
}

void Topology::validate() const {
  std::vector<std::size_t> used;
  auto check = [&](Point p) {
    const auto idx = grid.index_of(p);
    if (!idx) detail::fail_domain("Topology", "position off the grid");
    if (std::find(used.begin(), used.end(), *idx) != used.end()) {
      detail::fail_domain("Topology", "positions must be distinct");
    }
    used.push_back(*idx);
  };
  check(reader);
  for (Point p : emitters) check(p);
  for (Point p : tags) check(p);
  if (exponent_tag_reader.size() != tags.size() || exponent_ce_tag.size() != emitters.size()) {
    detail::fail_domain("Topology", "path-loss exponent table does not match the node counts");
  }
  for (const auto& row : exponent_ce_tag) {
    if (row.size() != tags.size()) detail::fail_domain("Topology", "path-loss exponent table does not match the node counts");
  }
}

std::vector<std::size_t> tag_candidates(const Grid& grid, const Layout& layout,
                                        const SamplingOptions& options) {
  layout.validate(grid);
  std::vector<bool> blocked(grid.point_count(), false);
  blocked[*grid.index_of(layout.reader)] = true;
  for (Point e : layout.emitters) blocked[*grid.index_of(e)] = true;
  const bool exclude_near = options.sub_reference == channel::SubReferencePolicy::reject;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < grid.point_count(); ++i) {
    if (blocked[i]) continue;
    if (exclude_near) {
      const Point p = grid.point(i);
      bool near = distance(p, layout.reader) < options.reference_distance;
      for (Point e : layout.emitters) near = near || distance(p, e) < options.reference_distance;
      if (near) continue;
    }
    out.push_back(i);
  }
  return out;
}

Topology sample_topology(const Grid& grid, std::size_t n_tags, const Layout& layout, RandomStream& rng,
                         const SamplingOptions& options) {
  options.exponent.validate("path-loss exponent law");
  if (grid.point_count() < n_tags + layout.emitters.size() + 1) {
    detail::fail_domain("sample_topology", "grid has fewer points than tags, emitters and reader");
  }
  std::vector<std::size_t> pool = tag_candidates(grid, layout, options);
  if (pool.size() < n_tags) {
    detail::fail_domain("sample_topology", "only " + std::to_string(pool.size()) +
                                               " admissible tag positions for " + std::to_string(n_tags) +
                                               " tags (reference-distance exclusion)");
  }
  // Partial Fisher-Yates: the first n_tags entries become a uniform draw
  // without replacement.
  for (std::size_t i = 0; i < n_tags; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }

  Topology t{grid, layout.reader, layout.emitters, {}, {}, {}};
  t.tags.reserve(n_tags);
  for (std::size_t i = 0; i < n_tags; ++i) t.tags.push_back(grid.point(pool[i]));
  t.exponent_tag_reader.resize(n_tags);
  for (auto& v : t.exponent_tag_reader) v = options.exponent.sample(rng);
  t.exponent_ce_tag.assign(layout.emitters.size(), std::vector<double>(n_tags));
  for (auto& row : t.exponent_ce_tag) {
    for (auto& v : row) v = options.exponent.sample(rng);
  }
  return t;
}

std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // c * (n - k + i) / i is exact; divide out the common factor first.
    const std::uint64_t g = std::gcd(c, i);
    const std::uint64_t factor = (n - k + i) / (i / g);
    if (__builtin_mul_overflow(c / g, factor, &c)) return std::nullopt;
  }
  return c;
}

std::uint64_t ensemble_size(const Grid& grid, std::size_t n_tags, std::size_t n_emitters) {
  const std::size_t total = grid.point_count();
  if (total < n_tags + n_emitters + 1) detail::fail_domain("ensemble_size", "capacity violated");
  const auto c = binomial(total - 1 - n_emitters, n_tags);
  if (!c) throw NumericError("ensemble_size: count exceeds 64 bits");
  return *c;
}

LinkDistances link_distances(const Topology& topology, double reference_distance) {
  LinkDistances out;
  out.tag_reader.reserve(topology.tags.size());
  for (Point tag : topology.tags) {
    const double d = distance(tag, topology.reader);
    out.below_reference += d < reference_distance;
    out.tag_reader.push_back(d);
  }
  for (Point ce : topology.emitters) {
    std::vector<double> row;
    row.reserve(topology.tags.size());
    for (Point tag : topology.tags) {
      const double d = distance(ce, tag);
      out.below_reference += d < reference_distance;
      row.push_back(d);
    }
    out.ce_tag.push_back(std::move(row));
    out.ce_reader.push_back(distance(ce, topology.reader));
  }
  return out;
}

LinkGains link_gains(const Topology& topology, double wavelength, channel::SubReferencePolicy policy,
                     double reference_distance) {
  const LinkDistances d = link_distances(topology, reference_distance);
  LinkGains out;
  out.below_reference = d.below_reference;
  channel::PathLossParams params{wavelength, reference_distance, 2.0};
  for (std::size_t n = 0; n < d.tag_reader.size(); ++n) {
    params.exponent = topology.exponent_tag_reader[n];
    out.tag_reader.push_back(channel::path_loss(d.tag_reader[n], params, policy));
  }
  for (std::size_t l = 0; l < d.ce_tag.size(); ++l) {
    std::vector<double> row;
    for (std::size_t n = 0; n < d.ce_tag[l].size(); ++n) {
      params.exponent = topology.exponent_ce_tag[l][n];
      row.push_back(channel::path_loss(d.ce_tag[l][n], params, policy));
    }
    out.ce_tag.push_back(std::move(row));
  }
  return out;
}

Layout sample_emitter_layout(const Grid& grid, Point reader, std::size_t n_emitters, RandomStream& rng) {
  const auto reader_idx = grid.index_of(reader);
  if (!reader_idx) detail::fail_domain("sample_emitter_layout", "reader is not a grid point");
  if (grid.point_count() < n_emitters + 1) detail::fail_domain("sample_emitter_layout", "grid too small");
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < grid.point_count(); ++i) {
    if (i != *reader_idx) pool.push_back(i);
  }
  for (std::size_t i = 0; i < n_emitters; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  std::sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_emitters));
  Layout out{reader, {}};
  for (std::size_t i = 0; i < n_emitters; ++i) out.emitters.push_back(grid.point(pool[i]));
  return out;
}

std::vector<Layout> enumerate_emitter_layouts(const Grid& grid, Point reader, std::size_t n_emitters) {
  const auto reader_idx = grid.index_of(reader);
  if (!reader_idx) detail::fail_domain("enumerate_emitter_layouts", "reader is not a grid point");
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < grid.point_count(); ++i) {
    if (i != *reader_idx) pool.push_back(i);
  }
  if (pool.size() < n_emitters) detail::fail_domain("enumerate_emitter_layouts", "grid too small");
  std::vector<Layout> out;
  std::vector<std::size_t> pick(n_emitters);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  while (true) {
    Layout layout{reader, {}};
    for (std::size_t p : pick) layout.emitters.push_back(grid.point(pool[p]));
    out.push_back(std::move(layout));
    // Advance to the next combination in lexicographic order.
    std::size_t i = n_emitters;
    while (i > 0 && pick[i - 1] == pool.size() - n_emitters + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < n_emitters; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

std::string to_json(const Topology& topology) {
  json j;
  j["grid"] = {{"side_m", topology.grid.side()}, {"resolution_m", topology.grid.resolution()}};
  j["reader"] = point_json(topology.reader);
  j["emitters"] = json::array();
  for (Point p : topology.emitters) j["emitters"].push_back(point_json(p));
  j["tags"] = json::array();
  for (Point p : topology.tags) j["tags"].push_back(point_json(p));
  j["exponent_tag_reader"] = topology.exponent_tag_reader;
  j["exponent_ce_tag"] = topology.exponent_ce_tag;
  return j.dump(2);
}

Topology topology_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
    Topology t{Grid(j.at("grid").at("side_m").get<double>(), j.at("grid").at("resolution_m").get<double>()),
               point_from(j.at("reader")),
               {},
               {},
               j.at("exponent_tag_reader").get<std::vector<double>>(),
               j.at("exponent_ce_tag").get<std::vector<std::vector<double>>>()};
    for (const auto& p : j.at("emitters")) t.emitters.push_back(point_from(p));
    for (const auto& p : j.at("tags")) t.tags.push_back(point_from(p));
    t.validate();
    return t;
  } catch (const json::exception& e) {
    throw DomainError(std::string("topology json: ") + e.what());
  }
}

}  // namespace scatter::topology
