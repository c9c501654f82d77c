#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "akh/errors.hpp"
#include "akh/examples.hpp"
#include "akh/oracle.hpp"
#include "akh/tangle.hpp"
#include "support/checks.hpp"

using namespace akh;

namespace {

HomologyTable unknot() {
  HomologyTable t;
  t.add({0, 0}, 1);
  return t;
}

HomologyTable right_trefoil() {
  HomologyTable t;
  t.add({0, 2}, 1);
  t.add({2, 6}, 1);
  t.add({3, 8}, 1);
  return t;
}

}  // namespace

TEST_CASE("parsing the worked example") {
  const auto t = parse_tangle(kWorkedExampleJson);
  CHECK(t.loop_number() == 1);
  CHECK(t.m() == 2);
  CHECK(t.crossing_count() == 2);
  CHECK(t.boundary().size() == 4);
  CHECK(t.strand().front() == t.boundary()[2]);  // point m+1
  CHECK(t.strand().back() == t.boundary()[0]);
  CHECK(t.strand().size() == 6);
  CHECK(t.glued_partner(2) == 4);
  CHECK(t.glued_partner(1) == 0);
  CHECK(parse_tangle(to_json(t).dump()).crossings() == t.crossings());
}

TEST_CASE("trivial tangle") {
  const auto t = parse_tangle(R"({"loop_number": 0, "crossings": [], "boundary": [1, 1]})");
  CHECK(t.crossing_count() == 0);
  CHECK(crossing_signs(t).empty());
  for (Closure mode : {Closure::Over, Closure::Under}) {
    const auto d = close(t, mode);
    CHECK(d.crossings.empty());
    CHECK(d.free_loops == 1);
    CHECK(reduced_homology(d) == unknot());
  }
}

TEST_CASE("parse errors") {
  // An edge label used three times.
  CHECK_THROWS_AS(parse_tangle(R"({"loop_number": 0, "crossings": [[1, 2, 2, 1]], "boundary": [1, 3]})"), InputError);
  // Boundary size does not match the loop number.
  CHECK_THROWS_AS(parse_tangle(R"({"loop_number": 1, "crossings": [], "boundary": [1, 1]})"), InputError);
  CHECK_THROWS_AS(parse_tangle(R"({"loop_number": -1, "crossings": [], "boundary": []})"), InputError);
  CHECK_THROWS_AS(parse_tangle(R"({"loop_number": 0, "crossings": [], "boundary": [0, 0]})"), InputError);
  CHECK_THROWS_AS(parse_tangle(R"({"loop_number": 0, "crossings": [[1, 2, 3]], "boundary": [1, 1]})"), InputError);
  CHECK_THROWS_AS(parse_tangle(R"({"loop_number": 0, "crossings": []})"), InputError);
  CHECK_THROWS_AS(parse_tangle("not json"), InputError);
  CHECK_THROWS_AS(parse_tangle("[1, 2]"), InputError);
  // A kink-free closed loop beside the strand.
  CHECK_THROWS_AS(parse_tangle(R"({"loop_number": 0, "crossings": [[2, 3, 3, 2]], "boundary": [1, 1]})"), InputError);
  // Straight strand glued to itself through the seam: not planar in the disk.
  CHECK_THROWS_AS(parse_tangle(R"({"loop_number": 1, "crossings": [[1, 3, 2, 4]], "boundary": [2, 3, 1, 4]})"),
                  InputError);
}

TEST_CASE("closure signs of the worked example") {
  const auto t = worked_example();
  const auto over = close(t, Closure::Over);
  const auto under = close(t, Closure::Under);
  CHECK(over.n_plus == 2);
  CHECK(over.n_minus == 1);
  CHECK(under.n_plus == 3);
  CHECK(under.n_minus == 0);
  CHECK(over.crossings.size() == 3);
  CHECK(over.components == 1);
  CHECK(over.basepoint_edge == t.boundary()[static_cast<std::size_t>(t.m())]);
}

TEST_CASE("mirror negates signs") {
  for (const auto& t : checks::corpus()) {
    auto s = crossing_signs(t);
    auto ms = crossing_signs(mirror(t));
    std::transform(ms.begin(), ms.end(), ms.begin(), [](int v) { return -v; });
    CHECK(s == ms);
  }
}

TEST_CASE("crossing counts of closures") {
  for (const auto& t : checks::corpus()) {
    for (Closure mode : {Closure::Over, Closure::Under}) {
      const auto d = close(t, mode);
      CHECK(d.n_plus + d.n_minus == static_cast<int>(t.crossing_count()) + t.loop_number());
      CHECK(d.crossings.size() == t.crossing_count() + static_cast<std::size_t>(t.loop_number()));
      CHECK(d.components == 1);
    }
  }
}

TEST_CASE("over and under closures of a mirror are mirrors") {
  // Mirroring the tangle and swapping the closure mirrors the whole knot.
  for (const auto& t : checks::corpus()) {
    if (t.crossing_count() + static_cast<std::size_t>(t.loop_number()) > 7) continue;
    const auto a = reduced_homology(close(t, Closure::Over));
    const auto b = reduced_homology(close(mirror(t), Closure::Under));
    HomologyTable flipped;
    for (const auto& [bg, d] : a.dims) flipped.add({-bg.first, -bg.second}, d);
    CHECK(flipped == b);
  }
}

TEST_CASE("loop flip of the worked example") {
  const auto t = worked_example();
  const auto over = flip_outer_loop(t, Closure::Over);
  CHECK(over.loop_number() == 0);
  CHECK(over.crossing_count() == 3);
  CHECK(reduced_homology(close(over, Closure::Over)) == unknot());
  const auto under = flip_outer_loop(t, Closure::Under);
  CHECK(under.loop_number() == 0);
  CHECK(reduced_homology(close(under, Closure::Under)) == right_trefoil());
  CHECK_THROWS_AS(flip_outer_loop(over, Closure::Over), InputError);
}

TEST_CASE("repeated flips end at loop number zero") {
  for (const auto& t : checks::corpus()) {
    if (t.loop_number() < 2) continue;
    for (Closure mode : {Closure::Over, Closure::Under}) {
      AnnularTangle f = t;
      for (int k = 0; k < t.loop_number(); ++k) f = flip_outer_loop(f, mode);
      CHECK(f.loop_number() == 0);
      CHECK(f.crossing_count() == t.crossing_count() + static_cast<std::size_t>(t.loop_number()));
      CHECK(reduced_homology(close(f, mode)) == reduced_homology(close(t, mode)));
    }
  }
}

TEST_CASE("tuples listed from the outgoing under-strand are rotated") {
  auto j = nlohmann::json::parse(kWorkedExampleJson);
  auto& c = j["crossings"][0];
  c = {c[2], c[3], c[0], c[1]};
  const auto t = tangle_from_json(j);
  CHECK(t.crossings() == worked_example().crossings());
}

TEST_CASE("closure mode parsing") {
  CHECK(parse_closure("over") == Closure::Over);
  CHECK(parse_closure("under") == Closure::Under);
  CHECK(to_string(Closure::Under) == "under");
  CHECK_THROWS_AS(parse_closure("sideways"), InputError);
}
