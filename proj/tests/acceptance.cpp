// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "akh/annular_complex.hpp"
#include "akh/examples.hpp"
#include "akh/oracle.hpp"
#include "akh/resolution.hpp"
#include "akh/spectral.hpp"
#include "support/checks.hpp"

namespace {

using akh::Closure;
using akh::HomologyTable;

struct Outcome {
  bool ok = true;
  std::string detail;
  // Failures are counted in full but only the first few are shown.
  std::size_t failures = 0;
  void fail(const std::string& what) {
    ok = false;
    if (++failures <= 3) detail += (detail.empty() ? "" : "; ") + what;
  }
};

HomologyTable table(std::initializer_list<std::pair<akh::Bigrading, std::size_t>> entries) {
  HomologyTable t;
  for (const auto& [bg, d] : entries) t.add(bg, d);
  return t;
}

const std::vector<Closure> kModes{Closure::Over, Closure::Under};

Outcome golden_homology(Closure mode, const HomologyTable& want) {
  Outcome o;
  const auto got = akh::homology_dims(akh::build_differential(akh::worked_example(), mode));
  if (!(got == want)) o.fail("got " + akh::to_string(got) + ", expected " + akh::to_string(want));
  return o;
}

Outcome golden_spectral() {
  Outcome o;
  const std::map<int, std::size_t> e2{{0, 1}, {1, 1}, {2, 1}};
  const std::size_t want_rank[2] = {1, 0};
  const std::size_t want_inf[2] = {1, 3};
  for (int k = 0; k < 2; ++k) {
    const auto c = akh::build_annular_complex(akh::worked_example(), kModes[static_cast<std::size_t>(k)]);
    const auto ss = akh::run_pages(c);
    const akh::Page& p2 = ss.pages.at(1);
    std::size_t rank = 0;
    for (const auto& [s, r] : p2.d_ranks) rank += r;
    const std::string mode = akh::to_string(kModes[static_cast<std::size_t>(k)]);
    if (p2.r != 2 || p2.dims != e2) o.fail(mode + ": E2 dims differ");
    if (rank != want_rank[k]) o.fail(mode + ": rank d2 = " + std::to_string(rank));
    if (ss.e_infinity_total() != want_inf[k]) o.fail(mode + ": E_inf total " + std::to_string(ss.e_infinity_total()));
    if (akh::e2_page(c).dims != e2) o.fail(mode + ": direct E2 differs");
  }
  return o;
}

std::string name(std::size_t i, Closure mode) {
  return "corpus #" + std::to_string(i) + " " + akh::to_string(mode);
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto& corpus = akh::checks::corpus();
  if (corpus.size() < 100) o.fail("corpus has only " + std::to_string(corpus.size()) + " tangles");
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& t = corpus[i];
    if (t.crossing_count() > 6 || t.loop_number() > 3) o.fail(name(i, Closure::Over) + " is out of bounds");
    for (Closure mode : kModes) {
      const auto annular = akh::homology_dims(akh::build_differential(t, mode));
      const auto oracle = akh::reduced_homology(akh::close(t, mode));
      if (!(annular == oracle)) {
        o.fail(name(i, mode) + ": annular " + akh::to_string(annular) + " vs oracle " + akh::to_string(oracle));
      }
    }
  }
  return o;
}

Outcome structural() {
  Outcome o;
  const auto& corpus = akh::checks::corpus();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto over = akh::build_annular_complex(corpus[i], Closure::Over);
    const auto under = akh::build_annular_complex(corpus[i], Closure::Under);
    for (const auto* c : {&over, &under}) {
      for (const auto& f : akh::checks::structure(*c)) o.fail(name(i, c->mode) + ": " + f);
    }
    for (const auto& f : akh::checks::ungraded_agreement(over, under)) o.fail(name(i, Closure::Over) + ": " + f);
  }
  return o;
}

Outcome saddles() {
  Outcome o;
  const auto& corpus = akh::checks::corpus();
  std::size_t total = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    total += akh::enumerate_cube(corpus[i]).saddles.size();
    for (const auto& f : akh::checks::saddle_table(corpus[i])) o.fail("corpus #" + std::to_string(i) + ": " + f);
  }
  if (o.ok) o.detail = std::to_string(total) + " saddles";
  return o;
}

Outcome reduction() {
  Outcome o;
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    const auto rc = akh::checks::random_complex(rng, 64);
    const auto before = akh::homology_dims(rc.complex);
    const auto reduced = akh::simplify(rc.complex);
    const auto after = akh::homology_dims(reduced);
    if (!(before == rc.expected)) o.fail("complex " + std::to_string(k) + ": homology differs from its minimal part");
    if (!(after == rc.expected)) o.fail("complex " + std::to_string(k) + ": simplify changed the homology");
    if (!reduced.differential().is_zero() || reduced.size() != rc.expected.total()) {
      o.fail("complex " + std::to_string(k) + ": simplify did not reach a minimal complex");
    }
  }
  return o;
}

Outcome counts() {
  Outcome o;
  const std::size_t catalan[] = {1, 2, 5, 14, 42, 132};
  for (int m = 1; m <= 6; ++m) {
    const auto n = akh::crossingless_matchings(m).size();
    if (n != catalan[m - 1]) o.fail("m=" + std::to_string(m) + " gives " + std::to_string(n));
  }
  for (const auto& t : akh::checks::corpus()) {
    for (const auto& p : akh::enumerate_cube(t).states) {
      const int w = p.winding;
      if ((w - t.loop_number()) % 2 != 0 || w > t.loop_number() || w < -t.loop_number()) {
        o.fail("winding " + std::to_string(w) + " with " + std::to_string(t.loop_number()) + " loops");
      }
    }
  }
  return o;
}

Outcome flips() {
  Outcome o;
  const auto& corpus = akh::checks::corpus();
  std::size_t tested = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& t = corpus[i];
    if (t.loop_number() == 0) continue;
    ++tested;
    for (Closure mode : kModes) {
      const auto before = akh::reduced_homology(akh::close(t, mode));
      const auto after = akh::reduced_homology(akh::close(akh::flip_outer_loop(t, mode), mode));
      if (!(before == after)) o.fail(name(i, mode) + ": flip changes homology");
    }
    for (const auto& f : akh::checks::flip_table(t)) o.fail("corpus #" + std::to_string(i) + ": " + f);
  }
  if (o.ok) o.detail = std::to_string(tested) + " tangles with loops";
  return o;
}

Outcome convergence() {
  Outcome o;
  std::size_t anomalies = 0;
  const auto& corpus = akh::checks::corpus();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (Closure mode : kModes) {
      const auto c = akh::build_annular_complex(corpus[i], mode);
      const auto ss = akh::run_pages(c);
      const auto h = akh::homology_dims(c.complex());
      if (ss.e_infinity_total() != h.total()) o.fail(name(i, mode) + ": E_inf total differs from homology");
      anomalies += ss.anomalies;
    }
  }
  if (anomalies != 0) o.fail(std::to_string(anomalies) + " nonzero d_r with r >= 3");
  if (o.ok) o.detail = "0 higher differentials";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "worked example, over closure = F[0,0]", 1.0,
       [] { return golden_homology(Closure::Over, table({{{0, 0}, 1}})); }},
      {2, "worked example, under closure = right trefoil", 1.0,
       [] { return golden_homology(Closure::Under, table({{{0, 2}, 1}, {{2, 6}, 1}, {{3, 8}, 1}})); }},
      {3, "worked example spectral sequence", 1.0, golden_spectral},
      {4, "annular homology equals the oracle on the corpus", 300.0, oracle_equivalence},
      {5, "structural identities on the corpus", 300.0, structural},
      {6, "saddle table on the corpus", 300.0, saddles},
      {7, "simplify preserves homology on 1000 random complexes", 300.0, reduction},
      {8, "Catalan counts and winding parity", 300.0, counts},
      {9, "loop flip invariance and (w, c) table", 300.0, flips},
      {10, "spectral sequence convergence on the corpus", 300.0, convergence},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.limit_seconds) o.fail("took longer than the limit");
    std::ostringstream line;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs < %.0fs", secs, c.limit_seconds);
    line << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << timing << "]";
    if (o.failures > 3) line << " (" << o.failures << " failures)";
    if (!o.detail.empty()) line << " -- " << o.detail;
    std::cout << line.str() << std::endl;
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
