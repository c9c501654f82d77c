#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "akh/annular_complex.hpp"
#include "akh/examples.hpp"
#include "akh/oracle.hpp"
#include "support/checks.hpp"

using namespace akh;

namespace {

std::multiset<std::pair<int, int>> bigradings(const AnnularComplex& c) {
  std::multiset<std::pair<int, int>> out;
  for (const auto& g : c.generators) out.insert({g.h, g.q});
  return out;
}

}  // namespace

TEST_CASE("grading shifts of the worked example") {
  const auto over = grading_shift(worked_example(), Closure::Over);
  CHECK(over.hT == -1);
  CHECK(over.qT == 0);
  CHECK(over.hA(1) == 1);
  CHECK(over.hA(-1) == 0);
  CHECK(over.qA(1) == 2);
  CHECK(over.qA(-1) == -1);
  const auto under = grading_shift(worked_example(), Closure::Under);
  CHECK(under.hT == 0);
  CHECK(under.qT == 3);
  CHECK(under.hA(1) == 0);
  CHECK(under.hA(-1) == 1);
  CHECK(under.qA(-1) == 2);
}

TEST_CASE("worked example generators") {
  const auto over = build_annular_complex(worked_example(), Closure::Over);
  CHECK(bigradings(over) == std::multiset<std::pair<int, int>>{{0, 2}, {0, 0}, {0, 0}, {1, 2}, {1, 0}});
  const auto under = build_annular_complex(worked_example(), Closure::Under);
  CHECK(bigradings(under) == std::multiset<std::pair<int, int>>{{0, 2}, {2, 6}, {2, 6}, {3, 8}, {3, 6}});
  for (const auto& g : over.generators) {
    CHECK(g.s == resolution_degree(g.bits));
    CHECK(g.n == over.cube.states[g.bits].winding);
    CHECK(g.h == g.s + over.shift.hT + over.shift.hA(g.n));
    CHECK(g.q == g.s + labeling_qsum(g.labels) + over.shift.qT + over.shift.qA(g.n));
    CHECK(over.index_of(g.bits, g.labels) < over.generators.size());
  }
}

TEST_CASE("worked example maps") {
  for (Closure mode : {Closure::Over, Closure::Under}) {
    const auto c = build_annular_complex(worked_example(), mode);
    CHECK(c.q_map.nnz() == 2);
    CHECK(c.p_map.is_zero());
    // Two eta_dot arrows into the circle state.
    CHECK(c.d0.nnz() == 2);
    for (const auto& [i, j] : c.d0.entries()) {
      CHECK(c.generators[i].bits == 0b11);
      CHECK(c.generators[i].labels.begin()->second == Label::X);
    }
    CHECK(c.dtilde_l.nnz() + c.dtilde_r.nnz() == 2);
    CHECK(c.dtilde_l.nnz() == 1);
  }
  const auto over = build_annular_complex(worked_example(), Closure::Over);
  // One eta arrow from the winding-one state to the circle labeled 1.
  REQUIRE(over.d_pm.nnz() == 1);
  const auto [i, j] = over.d_pm.entries()[0];
  CHECK(over.generators[j].bits == 0);
  CHECK(over.generators[i].bits == 0b11);
  CHECK(over.generators[i].labels.begin()->second == Label::One);
  CHECK(build_annular_complex(worked_example(), Closure::Under).d_pm.is_zero());
}

TEST_CASE("wrappers agree with the full build") {
  const auto t = worked_example();
  const auto c = build_annular_complex(t, Closure::Over);
  CHECK(build_d0(t, Closure::Over) == c.d0);
  CHECK(build_dtilde(t, Closure::Over, Side::L) == c.dtilde_l);
  CHECK(build_dtilde(t, Closure::Over, Side::R) == c.dtilde_r);
  CHECK(build_Q(t, Closure::Over) == c.q_map);
  CHECK(build_P(t, Closure::Over) == c.p_map);
  CHECK(build_space(t, Closure::Over).size() == c.generators.size());
  CHECK(build_differential(t, Closure::Over).differential() == c.d0 + c.d_pm);
  CHECK_THROWS(build_dtilde(t, Closure::Over, Side::U));
}

TEST_CASE("trivial tangle") {
  const auto c = build_annular_complex(trivial_tangle(), Closure::Over);
  REQUIRE(c.generators.size() == 1);
  CHECK(c.generators[0].h == 0);
  CHECK(c.generators[0].q == 0);
  CHECK(c.d0.is_zero());
  CHECK(c.q_map.is_zero());
  CHECK(c.p_map.is_zero());
  CHECK(c.dtilde_l.is_zero());
  HomologyTable unknot;
  unknot.add({0, 0}, 1);
  CHECK(homology_dims(c.complex()) == unknot);
}

TEST_CASE("bidegree checker") {
  const auto c = build_annular_complex(worked_example(), Closure::Over);
  CHECK(bidegree_violation(c.d0, c.generators, 1, 0).empty());
  CHECK(bidegree_violation(c.dtilde_l, c.generators, 1, 2).empty());
  CHECK(bidegree_violation(c.q_map, c.generators, 0, -2).empty());
  CHECK_FALSE(bidegree_violation(c.q_map, c.generators, 1, 0).empty());
}

TEST_CASE("type blocks of the worked example") {
  const auto c = build_annular_complex(worked_example(), Closure::Over);
  const auto blocks = block_by_type(c.q_map, c);
  REQUIRE(blocks.size() == 1);
  const auto& [types, m] = *blocks.begin();
  CHECK(types.first.winding == 1);
  CHECK(types.second.winding == -1);
  CHECK(m == c.q_map);
}

TEST_CASE("structural identities on the corpus") {
  for (const auto& t : checks::corpus()) {
    const auto over = build_annular_complex(t, Closure::Over);
    const auto under = build_annular_complex(t, Closure::Under);
    for (const auto* c : {&over, &under}) {
      const auto bad = checks::structure(*c);
      CHECK_MESSAGE(bad.empty(), (bad.empty() ? "" : bad.front()));
    }
    const auto bad = checks::ungraded_agreement(over, under);
    CHECK_MESSAGE(bad.empty(), (bad.empty() ? "" : bad.front()));
  }
}

TEST_CASE("right-handed two-saddle term gives the same differential") {
  for (const auto& t : checks::corpus()) {
    for (Closure mode : {Closure::Over, Closure::Under}) {
      const auto c = build_annular_complex(t, mode);
      const SparseMatrixF2& w = mode == Closure::Over ? c.q_map : c.p_map;
      const SparseMatrixF2 right = c.d0 + c.dtilde_r * w + w * c.dtilde_r;
      CHECK(homology_dims(BigradedComplex(c.space(), right)) == homology_dims(c.complex()));
    }
  }
}

TEST_CASE("homology equals the oracle on the corpus") {
  for (const auto& t : checks::corpus()) {
    for (Closure mode : {Closure::Over, Closure::Under}) {
      CHECK(homology_dims(build_differential(t, mode)) == reduced_homology(close(t, mode)));
    }
  }
}

TEST_CASE("json export") {
  const auto c = build_annular_complex(worked_example(), Closure::Under);
  const auto j = complex_to_json(c);
  CHECK(j["closure"] == "under");
  REQUIRE(j["generators"].size() == 5);
  for (const auto& g : j["generators"]) {
    for (const char* key : {"id", "bits", "labels", "h", "q", "n", "s"}) CHECK(g.contains(key));
  }
  CHECK(j["differential"].size() == (c.d0 + c.d_pm).nnz());
  for (const auto& e : j["differential"]) {
    const auto tgt = e[0].get<std::size_t>();
    const auto src = e[1].get<std::size_t>();
    CHECK(j["generators"][tgt]["h"].get<int>() == j["generators"][src]["h"].get<int>() + 1);
  }
}
