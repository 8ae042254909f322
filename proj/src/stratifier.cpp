#include "strata/stratifier.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "strata/error.hpp"
#include "strata/lattice.hpp"

namespace strata {

bool Stratum::contains(std::span<const Rat> x) const {
  return std::any_of(cells.begin(), cells.end(), [&](const RelOpenCell& c) { return c.contains(x); });
}

std::optional<std::size_t> Stratification::locate(std::span<const Rat> x) const {
  for (const auto& s : strata) {
    if (s.contains(x)) return s.id;
  }
  return std::nullopt;
}

std::vector<std::size_t> Stratification::count_by_dim() const {
  std::vector<std::size_t> counts;
  for (const auto& s : strata) {
    if (counts.size() <= s.dim) counts.resize(s.dim + 1, 0);
    ++counts[s.dim];
  }
  return counts;
}

DField compute_d_field(const PiecewiseAffineCover& input) {
  const auto cover = input.canonical();
  auto partition = partition_support(cover);
  const auto report = validate(cover, partition);
  if (!report.valid) throw Error(ErrorKind::InvalidCover, report.describe());

  DField field{cover, {}};
  for (auto& piece : partition) {
    auto dir = signature_direction(cover, piece.signature);
    field.cells.push_back(DFieldCell{std::move(piece.cell), std::move(dir), std::move(piece.signature)});
  }
  return field;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

int compare_strata(const Stratum& a, const Stratum& b) {
  if (a.dim != b.dim) return a.dim < b.dim ? -1 : 1;
  if (int c = compare(a.carrier, b.carrier); c != 0) return c;
  for (std::size_t i = 0; i < std::min(a.cells.size(), b.cells.size()); ++i) {
    if (int c = compare(a.cells[i], b.cells[i]); c != 0) return c;
  }
  if (a.cells.size() == b.cells.size()) return 0;
  return a.cells.size() < b.cells.size() ? -1 : 1;
}

bool any_meets(const Stratum& lower, const Stratum& upper) {
  for (const auto& t : lower.cells) {
    for (const auto& b : upper.cells) {
      if (meets(t, b)) return true;
    }
  }
  return false;
}

// Replaces the cells of a convex stratum by the single cell relint(conv).
void convexify(Stratum& s, const std::vector<DFieldCell>& all, const std::vector<std::size_t>& own) {
  if (s.cells.size() == 1) return;
  std::vector<RatVec> pts;
  Rat volume = 0;
  for (const auto& c : s.cells) {
    pts.insert(pts.end(), c.vertices().begin(), c.vertices().end());
    if (c.dim() == s.dim) volume += relative_volume(c);
  }
  const auto hull = RelOpenCell::from_points(pts);
  if (hull.dim() != s.dim || relative_volume(hull) != volume) return;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (std::binary_search(own.begin(), own.end(), i)) continue;
    if (intersects(all[i].cell, hull)) return;
  }
  s.cells = {hull};
  s.spanning_tree.clear();
}

}  // namespace

Stratification stratify(const PiecewiseAffineCover& cover) { return stratify(compute_d_field(cover)); }

Stratification stratify(const DField& field) {
  const auto& cells = field.cells;
  std::map<std::string, std::vector<std::size_t>> groups;
  std::vector<AffineSubspace> carriers(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    carriers[i] = AffineSubspace::make(cells[i].cell.interior_point(), cells[i].direction);
    if (cells[i].cell.dim() > carriers[i].dim() || !carriers[i].contains(cells[i].cell.carrier())) {
      throw Error(ErrorKind::NonIntegrable, "cell " + cells[i].cell.encode() + " is not tangent to its direction field");
    }
    groups[carriers[i].encode()].push_back(i);
  }

  Stratification out;
  out.ambient_dim = field.cover.ambient_dim;
  for (const auto& [key, ids] : groups) {
    const std::size_t rank = carriers[ids.front()].dim();
    UnionFind uf(ids.size());
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < ids.size(); ++a) {
      const auto& low = cells[ids[a]].cell;
      if (low.dim() == rank) continue;
      bool attached = false;
      for (std::size_t b = 0; b < ids.size(); ++b) {
        const auto& top = cells[ids[b]].cell;
        if (top.dim() != rank) continue;
        // Neighbouring cells need not meet face to face, so adjacency means
        // a full-dimensional patch of the lower cell lies in the closure.
        const auto touch = closure_meet(low, top);
        if (!touch || touch->dim() != low.dim()) continue;
        if (uf.unite(a, b)) edges.emplace_back(a, b);
        attached = true;
        // Only codimension-one cells connect top cells to each other.
        if (low.dim() + 1 < rank) break;
      }
      if (!attached) throw Error(ErrorKind::NonIntegrable, "cell " + low.encode() + " is not adjacent to an open piece of its stratum");
    }

    std::map<std::size_t, std::vector<std::size_t>> components;
    for (std::size_t a = 0; a < ids.size(); ++a) components[uf.find(a)].push_back(a);
    for (const auto& [root, members] : components) {
      Stratum s;
      s.dim = rank;
      s.direction = cells[ids.front()].direction;
      s.integer_direction = saturated_integer_basis(s.direction);
      s.carrier = carriers[ids.front()];
      std::vector<std::size_t> order = members;
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return cells[ids[x]].cell < cells[ids[y]].cell; });
      std::map<std::size_t, std::size_t> position;
      for (std::size_t p = 0; p < order.size(); ++p) {
        position[order[p]] = p;
        s.cells.push_back(cells[ids[order[p]]].cell);
      }
      for (auto [a, b] : edges) {
        if (position.count(a) && position.count(b)) s.spanning_tree.emplace_back(std::min(position[a], position[b]), std::max(position[a], position[b]));
      }
      std::sort(s.spanning_tree.begin(), s.spanning_tree.end());
      std::vector<std::size_t> own;
      for (auto a : members) own.push_back(ids[a]);
      std::sort(own.begin(), own.end());
      convexify(s, cells, own);
      out.strata.push_back(std::move(s));
    }
  }
  finalize(out);
  return out;
}

void finalize(Stratification& s) {
  std::sort(s.strata.begin(), s.strata.end(), [](const Stratum& a, const Stratum& b) { return compare_strata(a, b) < 0; });
  for (std::size_t i = 0; i < s.strata.size(); ++i) s.strata[i].id = i;
  s.frontier.clear();
  for (const auto& lower : s.strata) {
    for (const auto& upper : s.strata) {
      if (lower.dim < upper.dim && any_meets(lower, upper)) s.frontier.emplace_back(lower.id, upper.id);
    }
  }
}

bool closure_covers(const std::vector<RelOpenCell>& cells, const RelOpenCell& c) {
  for (const auto& piece : common_refinement(cells, c)) {
    const auto x = piece.interior_point();
    if (std::none_of(cells.begin(), cells.end(), [&](const RelOpenCell& k) { return k.closure_contains(x); })) return false;
  }
  return true;
}

std::vector<FrontierViolation> verify_frontier(const Stratification& s) {
  std::vector<FrontierViolation> out;
  for (const auto& upper : s.strata) {
    for (const auto& lower : s.strata) {
      if (upper.id == lower.id || !any_meets(lower, upper)) continue;
      if (lower.dim >= upper.dim) {
        out.push_back({lower.id, upper.id, "stratum meets the closure of a stratum of no larger dimension"});
        continue;
      }
      for (const auto& c : lower.cells) {
        if (!closure_covers(upper.cells, c)) {
          out.push_back({lower.id, upper.id, "stratum meets the closure but is not contained in it"});
          break;
        }
      }
    }
  }
  return out;
}

std::vector<RatVec> sample_stratum(const Stratum& s, std::size_t count, std::mt19937_64& rng) {
  std::vector<RatVec> pts;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& cell = s.cells[i % s.cells.size()];
    pts.push_back(i < s.cells.size() ? cell.interior_point() : random_relint_point(cell, rng));
  }
  return pts;
}

TangentReport verify_tangent_condition(const Stratification& s, const PiecewiseAffineCover& cover,
                                       std::size_t samples_per_stratum, std::uint64_t seed) {
  TangentReport report;
  std::mt19937_64 rng(seed);
  for (const auto& stratum : s.strata) {
    for (const auto& x : sample_stratum(stratum, samples_per_stratum, rng)) {
      ++report.samples;
      RatMat found;
      try {
        found = signature_direction(cover, membership_signature(cover, x));
      } catch (const Error&) {
        found = RatMat(0, 0);
      }
      if (!(found == stratum.direction)) report.violations.push_back({stratum.id, x, stratum.direction, found});
    }
  }
  return report;
}

}  // namespace strata
