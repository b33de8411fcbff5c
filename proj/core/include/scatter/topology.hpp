#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scatter/channel.hpp"
#include "scatter/random.hpp"
#include "scatter/types.hpp"

namespace scatter::topology {

// Square grid {[k1 D, k2 D] : 0 <= k1, k2 <= K}, K = M / D.
class Grid {
 public:
  Grid(double side, double resolution);

  double side() const { return side_; }
  double resolution() const { return resolution_; }
  std::size_t k() const { return k_; }
  std::size_t point_count() const { return (k_ + 1) * (k_ + 1); }

  // Lexicographic order: index = k1 (K+1) + k2.
  Point point(std::size_t index) const;
  std::optional<std::size_t> index_of(Point p) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double side_;
  double resolution_;
  std::size_t k_;
};

std::vector<Point> grid_points(double side, double resolution);

// Reader and carrier-emitter positions. An empty emitter list is monostatic.
struct Layout {
  Point reader;
  std::vector<Point> emitters;

  Architecture architecture() const {
    return emitters.empty() ? Architecture::monostatic : Architecture::multistatic;
  }
  void validate(const Grid& grid) const;

  // Reader at [M/2, M/2].
  static Layout canonical_monostatic(const Grid& grid);
  // Reader at [M/2, M/2]; the first L of the quarter points [M/4, M/4],
  // [3M/4, M/4], [3M/4, 3M/4], [M/4, 3M/4] host the emitters (L <= 4).
  static Layout canonical_multistatic(const Grid& grid, std::size_t n_emitters);
};

struct UniformRange {
  double lo = 2.0;
  double hi = 2.0;

  void validate(const char* what) const;
  double sample(RandomStream& rng) const { return lo == hi ? lo : rng.uniform(lo, hi); }
};

struct SamplingOptions {
  UniformRange exponent{2.0, 2.0};
  // reject: grid points closer than the reference distance to the reader or
  // any emitter are excluded from the tag candidates.
  channel::SubReferencePolicy sub_reference = channel::SubReferencePolicy::reject;
  double reference_distance = 1.0;
};

struct Topology {
  Grid grid{1.0, 1.0};
  Point reader;
  std::vector<Point> emitters;
  std::vector<Point> tags;
  std::vector<double> exponent_tag_reader;             // per tag
  std::vector<std::vector<double>> exponent_ce_tag;    // [l][n]

  Architecture architecture() const {
    return emitters.empty() ? Architecture::monostatic : Architecture::multistatic;
  }
  void validate() const;
};

// Tags drawn uniformly without replacement from the grid points not occupied
// by the reader or emitters; exponents drawn per link.
Topology sample_topology(const Grid& grid, std::size_t n_tags, const Layout& layout,
                         RandomStream& rng, const SamplingOptions& options = {});

// Grid points available to tags under the given options.
std::vector<std::size_t> tag_candidates(const Grid& grid, const Layout& layout,
                                        const SamplingOptions& options);

// Binomial coefficient C(n, k); nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k);

// Number of distinct tag placements, C((K+1)^2 - 1 - L, N). Throws when the
// value does not fit in 64 bits.
std::uint64_t ensemble_size(const Grid& grid, std::size_t n_tags, std::size_t n_emitters);

struct LinkDistances {
  std::vector<std::vector<double>> ce_tag;  // [l][n]
  std::vector<double> tag_reader;           // [n]
  std::vector<double> ce_reader;            // [l]
  std::size_t below_reference = 0;          // links shorter than d0 (tag links only)
};

LinkDistances link_distances(const Topology& topology, double reference_distance = 1.0);

struct LinkGains {
  std::vector<std::vector<double>> ce_tag;  // [l][n]
  std::vector<double> tag_reader;           // [n]
  std::size_t below_reference = 0;
};

LinkGains link_gains(const Topology& topology, double wavelength,
                     channel::SubReferencePolicy policy, double reference_distance = 1.0);

// Uniformly random emitter placement on grid points other than the reader.
Layout sample_emitter_layout(const Grid& grid, Point reader, std::size_t n_emitters, RandomStream& rng);
// All emitter placements (as sorted index sets) in lexicographic order.
std::vector<Layout> enumerate_emitter_layouts(const Grid& grid, Point reader, std::size_t n_emitters);

std::string to_json(const Topology& topology);
Topology topology_from_json(const std::string& text);

}  // namespace scatter::topology
