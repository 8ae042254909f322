#include "strata/cli_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "strata/error.hpp"
#include "strata/lattice.hpp"

namespace strata {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

Json rat_json(const Rat& x) { return to_string(x); }

Json vec_json(std::span<const Rat> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rat_json(x));
  return out;
}

Json mat_json(const RatMat& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vec_json(m.row(i)));
  return out;
}

Rat read_rat(const Json& j) {
  if (j.is_number_integer()) return Rat(mpz_class(j.dump()));
  if (!j.is_string()) fail("expected a rational as a \"p/q\" string or an integer, got " + j.dump());
  try {
    return parse_rat(j.get<std::string>());
  } catch (const std::exception&) {
    fail("malformed rational " + j.dump());
  }
}

RatVec read_vec(const Json& j, std::size_t size) {
  if (!j.is_array() || j.size() != size) fail("expected a vector of length " + std::to_string(size) + ", got " + j.dump());
  RatVec v;
  for (const auto& x : j) v.push_back(read_rat(x));
  return v;
}

RatMat read_mat(const Json& j, std::size_t cols) {
  if (!j.is_array()) fail("expected a matrix, got " + j.dump());
  RatMat m(0, cols);
  for (const auto& row : j) m.append_row(read_vec(row, cols));
  return m;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t read_size(const Json& j) {
  if (!j.is_number_unsigned()) fail("expected a nonnegative integer, got " + j.dump());
  return j.get<std::size_t>();
}

std::string read_string(const Json& j) {
  if (!j.is_string()) fail("expected a string, got " + j.dump());
  return j.get<std::string>();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

Json carrier_json(const AffineSubspace& s) {
  Json out;
  out["base"] = vec_json(s.base());
  out["directions"] = mat_json(s.directions());
  return out;
}

Json cell_json(const RelOpenCell& c) {
  Json out;
  Json verts = Json::array();
  for (const auto& v : c.vertices()) verts.push_back(vec_json(v));
  out["vertices"] = verts;
  out["carrier"] = carrier_json(c.carrier());
  Json ineqs = Json::array();
  for (std::size_t i = 0; i < c.inequalities().rows(); ++i) {
    Json row;
    row["normal"] = vec_json(c.inequalities().row(i));
    row["offset"] = rat_json(c.offsets()[i]);
    ineqs.push_back(row);
  }
  out["inequalities"] = ineqs;
  out["excluded_faces"] = c.excluded_faces();
  return out;
}

std::vector<RatVec> read_points(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.empty()) fail("expected a nonempty list of points");
  std::vector<RatVec> pts;
  for (const auto& p : j) pts.push_back(read_vec(p, dim));
  return pts;
}

// The cell is rebuilt from its vertices; stored derived fields must agree.
RelOpenCell read_cell(const Json& j, std::size_t dim) {
  auto cell = RelOpenCell::from_points(read_points(field(j, "vertices"), dim));
  if (cell.vertices().size() != field(j, "vertices").size()) fail("cell vertex list is not in canonical form");
  if (cell_json(cell) != j) fail("cell fields disagree with its vertices: " + j.dump());
  return cell;
}

Json density_json(const DensityPoly& p) {
  Json out;
  out["degree"] = p.degree;
  out["text"] = p.to_string();
  Json terms = Json::array();
  for (const auto& [e, c] : p.coefficients) {
    Json t;
    t["exponents"] = e;
    t["coefficient"] = rat_json(c);
    terms.push_back(t);
  }
  out["terms"] = terms;
  return out;
}

DensityPoly read_density(const Json& j, std::size_t id, std::size_t k) {
  std::map<Exponents, Rat> terms;
  for (const auto& t : field(j, "terms")) {
    const auto& e = field(t, "exponents");
    if (!e.is_array() || e.size() != k) fail("density exponents must have one entry per coordinate");
    Exponents ex;
    for (const auto& x : e) ex.push_back(static_cast<unsigned>(read_size(x)));
    terms[ex] = read_rat(field(t, "coefficient"));
  }
  auto p = make_density(id, k, terms);
  if (density_json(p) != j) fail("density fields disagree with its terms: " + j.dump());
  return p;
}

}  // namespace

InputSpec parse_input(const std::string& text) {
  const Json j = parse_json(text);
  const std::string type = read_string(field(j, "type"));
  const std::string name = j.contains("name") ? read_string(j.at("name")) : "";
  const std::size_t n = read_size(field(j, "ambient_dim"));
  try {
    if (type == "toric") {
      ToricSpec spec;
      spec.name = name;
      spec.polytope.A = RatMat(0, n);
      for (const auto& row : field(j, "inequalities")) {
        spec.polytope.A.append_row(read_vec(field(row, "normal"), n));
        spec.polytope.b.push_back(read_rat(field(row, "offset")));
      }
      const auto& b = field(j, "subtorus_matrix");
      if (!b.is_array() || b.size() != n || b.empty() || !b[0].is_array()) fail("subtorus_matrix must have ambient_dim rows");
      spec.B = read_mat(b, b[0].size());
      if (spec.B.cols() == 0) fail("subtorus_matrix has no columns");
      return spec;
    }
    if (type == "cover") {
      std::vector<RelOpenCell> members;
      for (const auto& m : field(j, "members")) members.push_back(RelOpenCell::from_points(read_points(field(m, "vertices"), n)));
      return CoverSpec{name, PiecewiseAffineCover::make(n, std::move(members))};
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    fail(e.what());
  }
  fail("unknown input type \"" + type + "\"");
}

std::string serialize_input(const InputSpec& spec) {
  Json j;
  if (const auto* t = std::get_if<ToricSpec>(&spec)) {
    j["type"] = "toric";
    j["name"] = t->name;
    j["ambient_dim"] = t->polytope.dim();
    Json rows = Json::array();
    for (std::size_t i = 0; i < t->polytope.A.rows(); ++i) {
      Json row;
      row["normal"] = vec_json(t->polytope.A.row(i));
      row["offset"] = rat_json(t->polytope.b[i]);
      rows.push_back(row);
    }
    j["inequalities"] = rows;
    j["subtorus_matrix"] = mat_json(t->B);
  } else {
    const auto& c = std::get<CoverSpec>(spec);
    j["type"] = "cover";
    j["name"] = c.name;
    j["ambient_dim"] = c.cover.ambient_dim;
    Json members = Json::array();
    for (const auto& m : c.cover.members) {
      Json verts = Json::array();
      for (const auto& v : m.vertices()) verts.push_back(vec_json(v));
      members.push_back(Json{{"vertices", verts}});
    }
    j["members"] = members;
  }
  return j.dump(2) + "\n";
}

std::string serialize(const StratificationFile& file) {
  const auto& s = file.stratification;
  Json j;
  j["format"] = "strata/stratification";
  j["version"] = 1;
  j["ambient_dim"] = s.ambient_dim;
  Json strata = Json::array();
  for (const auto& st : s.strata) {
    Json o;
    o["id"] = st.id;
    o["dim"] = st.dim;
    o["carrier"] = carrier_json(st.carrier);
    o["direction"] = mat_json(st.direction);
    o["integer_direction"] = mat_json(st.integer_direction);
    Json cells = Json::array();
    for (const auto& c : st.cells) cells.push_back(cell_json(c));
    o["cells"] = cells;
    Json tree = Json::array();
    for (auto [a, b] : st.spanning_tree) tree.push_back(Json::array({a, b}));
    o["spanning_tree"] = tree;
    if (auto it = file.densities.find(st.id); it != file.densities.end()) o["density"] = density_json(it->second);
    strata.push_back(o);
  }
  j["strata"] = strata;
  Json frontier = Json::array();
  for (auto [a, b] : s.frontier) frontier.push_back(Json::array({a, b}));
  j["frontier"] = frontier;
  const auto& p = file.provenance;
  j["provenance"] = Json{{"input_sha256", p.input_sha256}, {"tool", p.tool},       {"version", p.version},
                         {"command", p.command},           {"seed", p.seed},       {"samples", p.samples},
                         {"formal", p.formal}};
  return j.dump(2) + "\n";
}

bool is_stratification_file(const std::string& text) {
  const Json j = parse_json(text);
  return j.is_object() && j.contains("format") && j.at("format") == "strata/stratification";
}

StratificationFile parse_stratification(const std::string& text) {
  const Json j = parse_json(text);
  if (!is_stratification_file(text)) fail("not a stratification file");
  if (field(j, "version") != 1) fail("unsupported stratification file version");
  StratificationFile file;
  auto& s = file.stratification;
  try {
    s.ambient_dim = read_size(field(j, "ambient_dim"));
    const std::size_t k = s.ambient_dim;
    for (const auto& o : field(j, "strata")) {
      Stratum st;
      st.id = read_size(field(o, "id"));
      st.dim = read_size(field(o, "dim"));
      st.direction = read_mat(field(o, "direction"), k);
      st.integer_direction = read_mat(field(o, "integer_direction"), k);
      const auto& c = field(o, "carrier");
      st.carrier = AffineSubspace::make(read_vec(field(c, "base"), k), read_mat(field(c, "directions"), k));
      for (const auto& cell : field(o, "cells")) st.cells.push_back(read_cell(cell, k));
      for (const auto& e : field(o, "spanning_tree")) {
        if (!e.is_array() || e.size() != 2) fail("spanning tree edges are pairs");
        st.spanning_tree.emplace_back(read_size(e[0]), read_size(e[1]));
      }
      if (st.id != s.strata.size()) fail("stratum ids must be consecutive from 0");
      if (st.direction.rows() != st.dim || !(row_basis(st.direction) == st.direction)) fail("stratum direction is not a canonical basis of its dimension");
      if (!(st.carrier.directions() == st.direction) || carrier_json(st.carrier) != c) fail("stratum carrier is not canonical");
      if (!(saturated_integer_basis(st.direction) == st.integer_direction)) fail("integer direction disagrees with the direction space");
      for (const auto& cell : st.cells) {
        if (!st.carrier.contains(cell.carrier())) fail("stratum " + std::to_string(st.id) + " has a cell outside its carrier");
      }
      for (auto [u, v] : st.spanning_tree) {
        if (u >= st.cells.size() || v >= st.cells.size()) fail("spanning tree refers to an unknown cell");
      }
      if (o.contains("density")) file.densities.emplace(st.id, read_density(o.at("density"), st.id, k));
      s.strata.push_back(std::move(st));
    }
    for (const auto& e : field(j, "frontier")) {
      if (!e.is_array() || e.size() != 2) fail("frontier entries are pairs");
      const std::size_t lo = read_size(e[0]);
      const std::size_t hi = read_size(e[1]);
      if (lo >= s.strata.size() || hi >= s.strata.size()) fail("frontier refers to an unknown stratum");
      s.frontier.emplace_back(lo, hi);
    }
    const auto& p = field(j, "provenance");
    file.provenance.input_sha256 = read_string(field(p, "input_sha256"));
    file.provenance.tool = read_string(field(p, "tool"));
    file.provenance.version = read_string(field(p, "version"));
    file.provenance.command = read_string(field(p, "command"));
    file.provenance.seed = field(p, "seed").get<std::uint64_t>();
    file.provenance.samples = read_size(field(p, "samples"));
    if (!field(p, "formal").is_boolean()) fail("provenance.formal must be a boolean");
    file.provenance.formal = p.at("formal").get<bool>();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    fail(e.what());
  } catch (const Json::exception& e) {
    fail(e.what());
  }
  if (serialize(file) != j.dump(2) + "\n") fail("stratification file is not in canonical form");
  return file;
}

std::string serialize_report(const ValidationReport& report, const PiecewiseAffineCover& cover) {
  Json j;
  j["valid"] = report.valid;
  Json members = Json::array();
  for (const auto& r : report.members) {
    Json m;
    m["member"] = r.member;
    Json verts = Json::array();
    for (const auto& v : cover.members[r.member].vertices()) verts.push_back(vec_json(v));
    m["vertices"] = verts;
    m["affine_open"] = r.affine_open;
    m["closure_is_union"] = r.closure_is_union;
    m["witnesses"] = r.witnesses;
    Json uncovered = Json::array();
    for (const auto& c : r.uncovered) {
      Json cv = Json::array();
      for (const auto& v : c.vertices()) cv.push_back(vec_json(v));
      uncovered.push_back(cv);
    }
    m["uncovered"] = uncovered;
    members.push_back(m);
  }
  j["members"] = members;
  return j.dump(2) + "\n";
}

namespace {

std::string fixed(double x) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.9f", x);
  return buf.data();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

constexpr std::array<const char*, 8> kPalette = {"#f4cccc", "#d9ead3", "#cfe2f3", "#fff2cc", "#d9d2e9", "#fce5cd", "#d0e0e3", "#ead1dc"};

// Vertices of a polygon in counterclockwise order around an interior point.
std::vector<RatVec> cyclic_order(const RelOpenCell& c) {
  const RatVec center = c.interior_point();
  auto half = [&](const RatVec& v) {
    const Rat dx = v[0] - center[0];
    const Rat dy = v[1] - center[1];
    return sgn(dy) > 0 || (sgn(dy) == 0 && sgn(dx) > 0) ? 0 : 1;
  };
  auto pts = c.vertices();
  std::sort(pts.begin(), pts.end(), [&](const RatVec& a, const RatVec& b) {
    const int ha = half(a);
    const int hb = half(b);
    if (ha != hb) return ha < hb;
    const Rat cross = (a[0] - center[0]) * (b[1] - center[1]) - (a[1] - center[1]) * (b[0] - center[0]);
    return sgn(cross) > 0;
  });
  return pts;
}

}  // namespace

std::string render_svg(const StratificationFile& file) {
  const auto& s = file.stratification;
  const std::size_t k = s.ambient_dim;
  if (k != 1 && k != 2) throw Error(ErrorKind::UnsupportedDimension, "only stratifications of R^1 and R^2 can be rendered");

  std::vector<double> lo(k, 0), hi(k, 0);
  bool first = true;
  for (const auto& st : s.strata) {
    for (const auto& c : st.cells) {
      for (const auto& v : c.vertices()) {
        for (std::size_t i = 0; i < k; ++i) {
          const double x = to_double(v[i]);
          lo[i] = first ? x : std::min(lo[i], x);
          hi[i] = first ? x : std::max(hi[i], x);
        }
        first = false;
      }
    }
  }
  const double size = 480;
  const double margin = 60;
  double extent = std::max(hi[0] - lo[0], k == 2 ? hi[1] - lo[1] : 0.0);
  if (extent == 0) extent = 1;
  const double scale = size / extent;
  const double height = k == 2 ? (hi[1] - lo[1]) * scale + 2 * margin : 2 * margin;
  const double width = (hi[0] - lo[0]) * scale + 2 * margin;
  auto px = [&](const RatVec& v) { return margin + (to_double(v[0]) - lo[0]) * scale; };
  auto py = [&](const RatVec& v) { return k == 2 ? height - margin - (to_double(v[1]) - lo[1]) * scale : margin; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed(width) << "\" height=\"" << fixed(height)
     << "\" viewBox=\"0 0 " << fixed(width) << " " << fixed(height) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::size_t chamber = 0;
  for (const auto& st : s.strata) {
    if (st.dim != k) continue;
    const char* color = kPalette[chamber++ % kPalette.size()];
    os << "<g id=\"stratum-" << st.id << "\" class=\"chamber\">\n";
    for (const auto& c : st.cells) {
      if (c.dim() != k) continue;
      if (k == 2) {
        os << "<polygon fill=\"" << color << "\" stroke=\"" << color << "\" stroke-width=\"0.5\" points=\"";
        bool sep = false;
        for (const auto& v : cyclic_order(c)) {
          os << (sep ? " " : "") << fixed(px(v)) << "," << fixed(py(v));
          sep = true;
        }
        os << "\"/>\n";
      } else {
        os << "<line x1=\"" << fixed(px(c.vertices().front())) << "\" y1=\"" << fixed(margin) << "\" x2=\"" << fixed(px(c.vertices().back()))
           << "\" y2=\"" << fixed(margin) << "\" stroke=\"" << color << "\" stroke-width=\"8\"/>\n";
      }
    }
    if (auto it = file.densities.find(st.id); it != file.densities.end()) {
      const auto at = st.cells.front().interior_point();
      const double ty = k == 2 ? py(at) : margin - 14;
      os << "<text x=\"" << fixed(px(at)) << "\" y=\"" << fixed(ty) << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
         << escape(it->second.to_string()) << "</text>\n";
    }
    os << "</g>\n";
  }
  if (k == 2) {
    for (const auto& st : s.strata) {
      if (st.dim != 1) continue;
      os << "<g id=\"stratum-" << st.id << "\" class=\"wall\">\n";
      for (const auto& c : st.cells) {
        if (c.dim() != 1) continue;
        const auto& a = c.vertices().front();
        const auto& b = c.vertices().back();
        os << "<line x1=\"" << fixed(px(a)) << "\" y1=\"" << fixed(py(a)) << "\" x2=\"" << fixed(px(b)) << "\" y2=\"" << fixed(py(b))
           << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
      }
      os << "</g>\n";
    }
  }
  for (const auto& st : s.strata) {
    if (st.dim != 0) continue;
    const auto& v = st.cells.front().vertices().front();
    os << "<g id=\"stratum-" << st.id << "\" class=\"point\">\n";
    os << "<circle cx=\"" << fixed(px(v)) << "\" cy=\"" << fixed(py(v)) << "\" r=\"4\" fill=\"black\"/>\n";
    os << "<text x=\"" << fixed(px(v) + 6) << "\" y=\"" << fixed(py(v) + (k == 2 ? -6 : 18)) << "\" font-family=\"sans-serif\" font-size=\"11\">("
       << escape(to_string(v[0])) << (k == 2 ? ", " + escape(to_string(v[1])) : std::string()) << ")</text>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::ParseError, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::NonIntegralInput:
    case ErrorKind::RankDeficient:
    case ErrorKind::UnboundedPolytope:
    case ErrorKind::EmptyPolytope:
    case ErrorKind::PointOutsideSupport:
    case ErrorKind::PointOutsideImage:
    case ErrorKind::EmptyFiber:
      return 2;
    case ErrorKind::InvalidCover:
      return 3;
    case ErrorKind::NonIntegrable:
    case ErrorKind::NonEffectiveAction:
    case ErrorKind::NotTopDimensional:
    case ErrorKind::DegenerateFiber:
      return 4;
    case ErrorKind::InterpolationInconsistent:
      return 5;
    case ErrorKind::DimensionMismatch:
    case ErrorKind::UnsupportedDimension:
      return 6;
  }
  return 4;
}

}  // namespace strata
