#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "strata/cli_io.hpp"
#include "test_support.hpp"

using namespace strata;
using namespace strata::testing;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& name) { return slurp(std::string(STRATA_DATA_DIR) + "/" + name); }

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

StratificationFile with_densities(const ToricAction& a) {
  StratificationFile f;
  f.stratification = hamiltonian_stratification(a);
  for (const auto& st : f.stratification.strata) {
    if (st.dim == a.k()) f.densities.emplace(st.id, density_polynomial(a, f.stratification, st.id));
  }
  f.provenance.command = "test";
  f.provenance.seed = 3;
  return f;
}

ErrorKind parse_error_kind(const std::string& text) {
  try {
    parse_stratification(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::DimensionMismatch;
}

void replace_once(std::string& text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("input files parse") {
  const auto prism = std::get<ToricSpec>(parse_input(data("prism_cp1xcp2.json")));
  CHECK(prism.name == "prism_cp1xcp2");
  CHECK(prism.polytope.A == cp1xcp2_prism().A);
  CHECK(prism.polytope.b == cp1xcp2_prism().b);
  CHECK(prism.B == cp1xcp2_projection().transpose());

  const auto slit = std::get<CoverSpec>(parse_input(data("slit_cover.json")));
  CHECK(slit.cover.members.size() == 3);
  CHECK_FALSE(validate(slit.cover).valid);

  // Serialising and parsing an input spec is the identity on the parsed form.
  const InputSpec spec = prism;
  const auto again = std::get<ToricSpec>(parse_input(serialize_input(spec)));
  CHECK(again.polytope.A == prism.polytope.A);
  CHECK(serialize_input(InputSpec{again}) == serialize_input(spec));

  CHECK_THROWS_AS(parse_input("{"), Error);
  CHECK_THROWS_AS(parse_input(R"({"type": "toric", "ambient_dim": 1, "inequalities": [{"normal": [1], "offset": 0.5}], "subtorus_matrix": [[1]]})"), Error);
  CHECK_THROWS_AS(parse_input(R"({"type": "sphere", "ambient_dim": 1})"), Error);
  CHECK_THROWS_AS(parse_input(R"({"type": "cover", "ambient_dim": 2, "members": [{"vertices": [["1"]]}]})"), Error);
  CHECK_THROWS_AS(parse_input(R"({"type": "toric", "ambient_dim": 1, "inequalities": [], "subtorus_matrix": [[1], [2]]})"), Error);
  const auto halves = std::get<ToricSpec>(parse_input(R"({"type": "toric", "ambient_dim": 1, "inequalities": [{"normal": ["1"], "offset": "3/2"}], "subtorus_matrix": [[1]]})"));
  CHECK(halves.polytope.b == RatVec{make_rat(3, 2)});
}

TEST_CASE("stratification files round-trip bit-identically") {
  std::vector<ToricAction> actions = {ToricAction::make(cp1xcp2_prism(), cp1xcp2_projection().transpose()),
                                      ToricAction::make(unit_square(), RatMat::identity(2)),
                                      ToricAction::make(standard_triangle(2), RatMat::from_ints({{1}, {1}}))};
  Rng rng(19);
  while (actions.size() < 10) {
    auto a = random_toric_action(rng, 4, 3, true);
    if (momentum_cover(a).members.size() <= 40) actions.push_back(std::move(a));
  }
  for (const auto& a : actions) {
    const auto file = with_densities(a);
    const auto text = serialize(file);
    const auto parsed = parse_stratification(text);
    CHECK(parsed == file);
    CHECK(serialize(parsed) == text);
  }
  // A nonconvex stratum keeps its cells and spanning tree through the file.
  const auto cover = PiecewiseAffineCover::make(
      2, {RelOpenCell::from_points({rv({0, 0}), rv({4, 0}), rv({0, 2}), rv({4, 2})}), RelOpenCell::from_points({rv({1, 0}), rv({3, 0}), rv({2, 1})}),
          RelOpenCell::from_points({rv({1, 0}), rv({2, 1})}), RelOpenCell::from_points({rv({2, 1}), rv({3, 0})}), RelOpenCell::from_points({rv({2, 1})})});
  StratificationFile f;
  f.stratification = stratify(cover);
  CHECK(parse_stratification(serialize(f)) == f);
}

TEST_CASE("golden files parse and re-serialise unchanged") {
  for (const char* name : {"golden/prism_cp1xcp2.dh.json", "golden/prism_cp1xcp2.stratify.json", "golden/square_identity.dh.json", "golden/simplex_sum.dh.json"}) {
    CAPTURE(name);
    const auto text = data(name);
    CHECK(is_stratification_file(text));
    CHECK(serialize(parse_stratification(text)) == text);
  }
  const auto prism = parse_stratification(data("golden/prism_cp1xcp2.dh.json"));
  CHECK(prism.stratification.count_by_dim() == std::vector<std::size_t>{7, 10, 4});
  std::set<std::string> texts;
  for (const auto& [id, p] : prism.densities) texts.insert(p.to_string());
  CHECK(texts == std::set<std::string>{"x", "1", "-x - y + 4", "-y + 3"});
  CHECK(prism.provenance.input_sha256 == sha256_hex(data("prism_cp1xcp2.json")));
}

TEST_CASE("tampered stratification files are rejected") {
  const auto text = data("golden/simplex_sum.dh.json");
  auto moved = text;
  replace_once(moved, R"("2")", R"("5/2")");
  CHECK(parse_error_kind(moved) == ErrorKind::ParseError);
  auto coefficient = text;
  replace_once(coefficient, R"("coefficient": "1")", R"("coefficient": "2")");
  CHECK(parse_error_kind(coefficient) == ErrorKind::ParseError);
  auto reordered = text;
  replace_once(reordered, "\"id\": 0", "\"id\": 4");
  CHECK(parse_error_kind(reordered) == ErrorKind::ParseError);
  CHECK(parse_error_kind("[]") == ErrorKind::ParseError);
  CHECK(parse_error_kind(data("prism_cp1xcp2.json")) == ErrorKind::ParseError);
}

TEST_CASE("svg rendering") {
  const auto prism = render_svg(parse_stratification(data("golden/prism_cp1xcp2.dh.json")));
  CHECK(count(prism, "<circle") == 7);
  CHECK(count(prism, "class=\"wall\"") == 10);
  CHECK(count(prism, "<polygon") == 4);
  CHECK(prism.find("(1, 2)") != std::string::npos);
  CHECK(prism.find(">-x - y + 4<") != std::string::npos);
  CHECK(prism == data("golden/prism_cp1xcp2.svg"));

  const auto square = render_svg(with_densities(ToricAction::make(unit_square(), RatMat::identity(2))));
  CHECK(count(square, "<circle") == 4);
  CHECK(count(square, "<line") == 4);
  CHECK(count(square, "<polygon") == 1);

  const auto interval = render_svg(with_densities(ToricAction::make(standard_triangle(2), RatMat::from_ints({{1}, {1}}))));
  CHECK(count(interval, "<circle") == 2);
  CHECK(count(interval, "<line") == 1);
  CHECK(interval.find("(2)") != std::string::npos);

  StratificationFile space;
  space.stratification = hamiltonian_stratification(ToricAction::make(standard_triangle(1), RatMat::identity(2)));
  space.stratification.ambient_dim = 3;
  CHECK_THROWS_AS(render_svg(space), Error);
}

TEST_CASE("hashing and exit codes") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(exit_code(ErrorKind::ParseError) == 2);
  CHECK(exit_code(ErrorKind::InvalidCover) == 3);
  CHECK(exit_code(ErrorKind::NonIntegrable) == 4);
  CHECK(exit_code(ErrorKind::InterpolationInconsistent) == 5);
  CHECK(exit_code(ErrorKind::UnsupportedDimension) == 6);
}
