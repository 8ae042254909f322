#include "strata/cover.hpp"

#include <sstream>

#include "strata/error.hpp"

namespace strata {

PiecewiseAffineCover PiecewiseAffineCover::make(std::size_t ambient_dim, std::vector<RelOpenCell> members) {
  for (const auto& m : members) {
    if (m.ambient_dim() != ambient_dim) throw Error(ErrorKind::DimensionMismatch, "cover member in a different ambient space");
  }
  return PiecewiseAffineCover{ambient_dim, std::move(members)};
}

PiecewiseAffineCover PiecewiseAffineCover::canonical() const {
  auto out = *this;
  sort_unique(out.members);
  return out;
}

bool PiecewiseAffineCover::support_contains(std::span<const Rat> x) const {
  for (const auto& m : members) {
    if (m.contains(x)) return true;
  }
  return false;
}

std::vector<std::size_t> ValidationReport::offending_members() const {
  std::vector<std::size_t> out;
  for (const auto& r : members) {
    if (!r.affine_open || !r.closure_is_union) out.push_back(r.member);
  }
  return out;
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  os << (valid ? "cover is valid" : "cover is invalid") << "\n";
  for (const auto& r : members) {
    if (r.affine_open && r.closure_is_union) continue;
    os << "member " << r.member << ":";
    if (!r.affine_open) os << " not open in its affine hull;";
    if (!r.closure_is_union) {
      os << " closure within the support is not a union of members; uncovered:";
      for (const auto& c : r.uncovered) os << " " << c.encode();
    }
    os << "\n";
  }
  return os.str();
}

namespace {

bool open_in_hull(const RelOpenCell& c) {
  const auto hull = AffineSubspace::affine_hull(c.vertices());
  return hull == c.carrier() && c.contains(c.interior_point());
}

}  // namespace

std::vector<SupportCell> partition_support(const PiecewiseAffineCover& cover) {
  const auto& members = cover.members;
  std::vector<SupportCell> out;
  for (std::size_t j = 0; j < members.size(); ++j) {
    std::vector<RelOpenCell> relevant;
    for (const auto& k : members) {
      if (meets(members[j], k)) relevant.push_back(k);
    }
    for (auto& piece : common_refinement(relevant, members[j])) {
      auto sig = membership_signature(cover, piece.interior_point());
      // Pieces shared with an earlier member were already emitted there.
      if (sig.front() != j) continue;
      out.push_back(SupportCell{std::move(piece), std::move(sig)});
    }
  }
  std::sort(out.begin(), out.end(), [](const SupportCell& a, const SupportCell& b) { return a.cell < b.cell; });
  return out;
}

ValidationReport validate(const PiecewiseAffineCover& cover) { return validate(cover, partition_support(cover)); }

ValidationReport validate(const PiecewiseAffineCover& cover, const std::vector<SupportCell>& partition) {
  ValidationReport report;
  const auto& members = cover.members;
  for (std::size_t i = 0; i < members.size(); ++i) {
    MemberReport r;
    r.member = i;
    r.affine_open = open_in_hull(members[i]);

    std::vector<bool> inside(members.size(), false);  // members contained in cl(members[i])
    for (std::size_t j = 0; j < members.size(); ++j) inside[j] = members[i].closure_contains(members[j]);
    std::vector<bool> used(members.size(), false);
    for (const auto& piece : partition) {
      // Closure membership is constant on the piece, so its interior point decides.
      if (!members[i].closure_contains(piece.cell.interior_point())) continue;
      bool witnessed = false;
      for (auto j : piece.signature) {
        if (inside[j]) {
          witnessed = true;
          used[j] = true;
        }
      }
      if (!witnessed) r.uncovered.push_back(piece.cell);
    }
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (used[j]) r.witnesses.push_back(j);
    }
    r.closure_is_union = r.uncovered.empty();
    report.valid = report.valid && r.affine_open && r.closure_is_union;
    report.members.push_back(std::move(r));
  }
  return report;
}

std::vector<std::size_t> membership_signature(const PiecewiseAffineCover& cover, std::span<const Rat> x) {
  if (x.size() != cover.ambient_dim) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from cover");
  std::vector<std::size_t> sig;
  for (std::size_t i = 0; i < cover.members.size(); ++i) {
    if (cover.members[i].contains(x)) sig.push_back(i);
  }
  if (sig.empty()) throw Error(ErrorKind::PointOutsideSupport, "point " + to_string(x) + " lies in no cover member");
  return sig;
}

RatMat signature_direction(const PiecewiseAffineCover& cover, const std::vector<std::size_t>& signature) {
  std::vector<RatMat> dirs;
  for (auto i : signature) dirs.push_back(cover.members[i].carrier().directions());
  if (dirs.empty()) return RatMat::identity(cover.ambient_dim);
  return direction_intersect(dirs);
}

}  // namespace strata
