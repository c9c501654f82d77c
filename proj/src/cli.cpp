#include "akh/cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "akh/annular_complex.hpp"
#include "akh/corpus.hpp"
#include "akh/errors.hpp"
#include "akh/examples.hpp"
#include "akh/frobenius.hpp"
#include "akh/oracle.hpp"
#include "akh/resolution.hpp"
#include "akh/spectral.hpp"

namespace akh {

namespace fs = std::filesystem;

std::string render_table(const HomologyTable& table) {
  if (table.dims.empty()) return "(zero)\n";
  int hlo = table.dims.begin()->first.first;
  int hhi = hlo;
  int qlo = table.dims.begin()->first.second;
  int qhi = qlo;
  for (const auto& [bg, d] : table.dims) {
    hlo = std::min(hlo, bg.first);
    hhi = std::max(hhi, bg.first);
    qlo = std::min(qlo, bg.second);
    qhi = std::max(qhi, bg.second);
  }
  std::ostringstream os;
  os << std::setw(6) << "q\\h";
  for (int h = hlo; h <= hhi; ++h) os << std::setw(4) << h;
  os << '\n';
  for (int q = qhi; q >= qlo; --q) {
    os << std::setw(6) << q;
    for (int h = hlo; h <= hhi; ++h) {
      auto it = table.dims.find({h, q});
      if (it == table.dims.end()) {
        os << std::setw(4) << '.';
      } else {
        os << std::setw(4) << it->second;
      }
    }
    os << '\n';
  }
  return os.str();
}

std::string diff_tables(const HomologyTable& expected, const HomologyTable& actual, const std::string& expected_name,
                        const std::string& actual_name) {
  if (expected == actual) return {};
  std::set<Bigrading> keys;
  for (const auto& [bg, d] : expected.dims) keys.insert(bg);
  for (const auto& [bg, d] : actual.dims) keys.insert(bg);
  auto dim = [](const HomologyTable& t, Bigrading bg) -> std::size_t {
    auto it = t.dims.find(bg);
    return it == t.dims.end() ? 0 : it->second;
  };
  std::ostringstream os;
  os << "--- " << expected_name << "\n+++ " << actual_name << "\n";
  for (const auto& bg : keys) {
    const auto a = dim(expected, bg);
    const auto b = dim(actual, bg);
    const std::string at = "(" + std::to_string(bg.first) + "," + std::to_string(bg.second) + "): ";
    if (a == b) {
      os << " " << at << a << "\n";
      continue;
    }
    if (a != 0) os << "-" << at << a << "\n";
    if (b != 0) os << "+" << at << b << "\n";
  }
  return os.str();
}

namespace {

struct Mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".json") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  return files;
}

AnnularTangle load(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot open '" + p.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tangle(ss.str());
}

AnnularTangle load_checked(const fs::path& p, std::size_t limit) {
  AnnularTangle t = load(p);
  if (t.crossing_count() + static_cast<std::size_t>(t.loop_number()) > limit) {
    throw InputError("'" + p.string() + "' exceeds the crossing limit of " + std::to_string(limit));
  }
  return t;
}

struct Comparison {
  HomologyTable annular;
  HomologyTable oracle;
};

// Runs every (file, closure) comparison on a small worker pool. Results are
// stored by index, so the report order does not depend on scheduling; the
// first failure in input order is rethrown.
std::vector<std::vector<Comparison>> compare_all(const std::vector<fs::path>& files,
                                                 const std::vector<Closure>& modes, std::size_t limit) {
  std::vector<std::vector<Comparison>> results(files.size());
  std::vector<std::exception_ptr> errors(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        const AnnularTangle t = load_checked(files[i], limit);
        for (Closure md : modes) {
          results[i].push_back({homology_dims(build_annular_complex(t, md, limit).complex()),
                                reduced_homology(close(t, md), limit)});
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < std::min(n, files.size()); ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

nlohmann::json resolve_json(const Cube& cube) {
  nlohmann::json states = nlohmann::json::array();
  for (const auto& p : cube.states) {
    nlohmann::json disk = nlohmann::json::array();
    nlohmann::json annular = nlohmann::json::array();
    for (const auto& c : p.circles) (c.annular ? annular : disk).push_back(p.circle_name(c.key));
    nlohmann::json arcs = nlohmann::json::array();
    for (const auto& a : p.arcs) {
      arcs.push_back({{"from", a.from_point}, {"to", a.to_point}, {"type", std::string(1, to_char(a.type))}});
    }
    states.push_back({{"bits", bit_string(p.bits, p.crossings)},
                      {"w", p.winding},
                      {"disk_circles", disk},
                      {"annular_circles", annular},
                      {"arc_types", arcs},
                      {"tangle_type", to_string(tangle_type(p))}});
  }
  return {{"states", states}};
}

// One golden check per entry; an empty string means it passed.
using Check = std::pair<std::string, std::function<std::string()>>;

std::string expect_table(const HomologyTable& got, const HomologyTable& want) {
  return got == want ? std::string{} : "got " + to_string(got) + ", expected " + to_string(want);
}

std::vector<Check> golden_checks() {
  HomologyTable unknot;
  unknot.add({0, 0}, 1);
  HomologyTable trefoil;
  trefoil.add({0, 2}, 1);
  trefoil.add({2, 6}, 1);
  trefoil.add({3, 8}, 1);
  std::vector<Check> checks;
  checks.emplace_back("annular homology, over closure = F[0,0]", [=] {
    return expect_table(homology_dims(build_differential(worked_example(), Closure::Over)), unknot);
  });
  checks.emplace_back("annular homology, under closure = right trefoil", [=] {
    return expect_table(homology_dims(build_differential(worked_example(), Closure::Under)), trefoil);
  });
  checks.emplace_back("oracle, over closure = F[0,0]", [=] {
    return expect_table(reduced_homology(close(worked_example(), Closure::Over)), unknot);
  });
  checks.emplace_back("oracle, under closure = right trefoil", [=] {
    return expect_table(reduced_homology(close(worked_example(), Closure::Under)), trefoil);
  });
  checks.emplace_back("crossing counts of the closures", [] {
    const auto o = close(worked_example(), Closure::Over);
    const auto u = close(worked_example(), Closure::Under);
    if (o.n_plus == 2 && o.n_minus == 1 && u.n_plus == 3 && u.n_minus == 0) return std::string{};
    return "over (" + std::to_string(o.n_plus) + "," + std::to_string(o.n_minus) + "), under (" +
           std::to_string(u.n_plus) + "," + std::to_string(u.n_minus) + ")";
  });
  checks.emplace_back("resolution cube (w, c)", [] {
    const auto cube = enumerate_cube(worked_example());
    std::multiset<std::pair<int, int>> got;
    for (const auto& p : cube.states) got.insert({p.winding, static_cast<int>(p.circles.size())});
    const std::multiset<std::pair<int, int>> want{{1, 0}, {-1, 0}, {-1, 0}, {-1, 1}};
    if (got == want && cube.saddles.size() == 4) return std::string{};
    return std::string("unexpected cube");
  });
  checks.emplace_back("E2 page and d2", [] {
    const auto over = build_annular_complex(worked_example(), Closure::Over);
    const auto under = build_annular_complex(worked_example(), Closure::Under);
    const auto e2o = e2_page(over);
    const auto e2u = e2_page(under);
    const std::map<int, std::size_t> want{{0, 1}, {1, 1}, {2, 1}};
    std::size_t rank_o = 0;
    std::size_t rank_u = 0;
    for (const auto& [s, r] : e2o.d_ranks) rank_o += r;
    for (const auto& [s, r] : e2u.d_ranks) rank_u += r;
    const auto sso = run_pages(over);
    const auto ssu = run_pages(under);
    if (e2o.dims == want && e2u.dims == want && rank_o == 1 && rank_u == 0 && sso.e_infinity_total() == 1 &&
        ssu.e_infinity_total() == 3) {
      return std::string{};
    }
    return std::string("spectral sequence differs from the expected pages");
  });
  checks.emplace_back("Frobenius tables", [] {
    const Labeling xx{{1, Label::X}, {2, Label::X}};
    if (!apply(MapKind::Mult, xx, {1, 2}, {3}).empty()) return std::string("m(x x) != 0");
    const auto d = apply(MapKind::Delta, {{1, Label::One}}, {1}, {2, 3});
    const std::vector<Labeling> want{{{2, Label::One}, {3, Label::X}}, {{2, Label::X}, {3, Label::One}}};
    if (d != want) return std::string("Delta(1) is wrong");
    const auto e = apply(MapKind::Eta, {}, {}, {7});
    if (e != std::vector<Labeling>{{{7, Label::One}}}) return std::string("eta(1) is wrong");
    return std::string{};
  });
  checks.emplace_back("tangle type counts for one and two loops", [] {
    auto count_zero = [](int m) {
      int zero = 0;
      for (const auto& mt : crossingless_matchings(m)) zero += matching_winding(mt) == 0 ? 1 : 0;
      return zero;
    };
    if (crossingless_matchings(2).size() == 2 && crossingless_matchings(3).size() == 5 && count_zero(3) == 3) {
      return std::string{};
    }
    return std::string("unexpected tangle type counts");
  });
  checks.emplace_back("flipped over closure stays the unknot", [=] {
    return expect_table(reduced_homology(close(flip_outer_loop(worked_example(), Closure::Over), Closure::Over)), unknot);
  });
  checks.emplace_back("flipped under closure stays the trefoil", [=] {
    return expect_table(reduced_homology(close(flip_outer_loop(worked_example(), Closure::Under), Closure::Under)),
                        trefoil);
  });
  return checks;
}

int run_selftest(std::ostream& out) {
  int failed = 0;
  for (const auto& [name, check] : golden_checks()) {
    std::string problem;
    try {
      problem = check();
    } catch (const std::exception& e) {
      problem = std::string("threw: ") + e.what();
    }
    if (problem.empty()) {
      out << "PASS " << name << "\n";
    } else {
      out << "FAIL " << name << ": " << problem << "\n";
      ++failed;
    }
  }
  return failed == 0 ? kOk : kMismatch;
}

std::string table_or_json(const HomologyTable& t, const std::string& format) {
  return format == "table" ? render_table(t) : to_json(t).dump() + "\n";
}

int run_command(const RunConfig& cfg, std::ostream& out) {
  const std::size_t limit = cfg.max_crossings.value_or(kSafeCrossingLimit);
  if (cfg.command != "gen-corpus" && limit > kSafeCrossingLimit && !cfg.unsafe_large) {
    throw InputError("crossing limit " + std::to_string(limit) + " exceeds " + std::to_string(kSafeCrossingLimit) +
                     "; pass --unsafe-large to allow it");
  }
  if (cfg.format != "json" && cfg.format != "table") throw InputError("format must be json or table");

  if (cfg.command == "selftest") return run_selftest(out);

  if (cfg.command == "gen-corpus") {
    CorpusOptions opts;
    opts.count = cfg.count;
    opts.seed = cfg.seed;
    opts.max_loops = cfg.max_loops;
    opts.max_crossings = cfg.max_crossings.value_or(6);
    const auto corpus = generate_corpus(opts);
    if (cfg.out_dir.empty()) {
      for (const auto& t : corpus) out << to_json(t).dump() << "\n";
      return kOk;
    }
    fs::create_directories(cfg.out_dir);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      std::ostringstream name;
      name << "tangle_" << std::setw(3) << std::setfill('0') << i << ".json";
      std::ofstream f(fs::path(cfg.out_dir) / name.str());
      f << to_json(corpus[i]).dump() << "\n";
      if (!f) throw InputError("cannot write to '" + cfg.out_dir + "'");
    }
    out << "wrote " << corpus.size() << " tangles to " << cfg.out_dir << "\n";
    return kOk;
  }

  const auto files = expand_inputs(cfg.inputs);
  if (files.empty()) throw InputError("no input tangle given");
  const Closure mode = cfg.closure.value_or(Closure::Over);
  int status = kOk;
  nlohmann::json batch = nlohmann::json::array();
  const std::vector<Closure> modes =
      cfg.closure ? std::vector<Closure>{*cfg.closure} : std::vector<Closure>{Closure::Over, Closure::Under};
  std::vector<std::vector<Comparison>> compared;
  if (cfg.command == "compare") compared = compare_all(files, modes, limit);
  for (std::size_t fi = 0; fi < files.size(); ++fi) {
    const auto& file = files[fi];
    const AnnularTangle t = load_checked(file, limit);
    if (cfg.command == "resolve") {
      const auto cube = enumerate_cube(t, limit);
      if (cfg.format == "table") {
        for (const auto& p : cube.states) {
          out << bit_string(p.bits, p.crossings) << "  w=" << p.winding << "  disk=" << p.disk_circle_count()
              << "  annular=" << p.annular_circle_count() << "  arcs=";
          for (const auto& a : p.arcs) out << to_char(a.type);
          out << "  " << to_string(tangle_type(p)) << "\n";
        }
      } else {
        out << resolve_json(cube).dump() << "\n";
      }
    } else if (cfg.command == "complex") {
      const auto ac = build_annular_complex(t, mode, limit);
      if (cfg.format == "table") {
        for (const auto& g : ac.generators) {
          out << g.id << "  h=" << g.h << " q=" << g.q << " n=" << g.n << " s=" << g.s << "\n";
        }
        for (const auto& [i, j] : (ac.d0 + ac.d_pm).entries()) {
          out << ac.generators[j].id << " -> " << ac.generators[i].id << "\n";
        }
      } else {
        out << complex_to_json(ac).dump() << "\n";
      }
    } else if (cfg.command == "homology") {
      out << table_or_json(homology_dims(build_annular_complex(t, mode, limit).complex()), cfg.format);
    } else if (cfg.command == "oracle") {
      out << table_or_json(reduced_homology(close(t, mode), limit), cfg.format);
    } else if (cfg.command == "spectral") {
      const auto ss = run_pages(build_annular_complex(t, mode, limit));
      if (cfg.format == "table") {
        for (const auto& p : ss.pages) {
          out << "E" << p.r << ":";
          for (const auto& [s, d] : p.dims) out << " s" << s << "=" << d;
          if (!p.d_ranks.empty()) {
            out << "   rank d" << p.r << ":";
            for (const auto& [s, r] : p.d_ranks) out << " s" << s << "=" << r;
          }
          out << "\n";
        }
        out << "E_inf total " << ss.e_infinity_total() << ", anomalies " << ss.anomalies << "\n";
      } else {
        out << to_json(ss, cfg.bigraded).dump() << "\n";
      }
      if (ss.anomalies != 0) status = kMismatch;
    } else if (cfg.command == "compare") {
      nlohmann::json entry{{"file", file.string()}};
      for (std::size_t mi = 0; mi < modes.size(); ++mi) {
        const Closure md = modes[mi];
        const auto& [annular, oracle] = compared[fi][mi];
        const bool match = annular == oracle;
        if (!match) status = kMismatch;
        if (cfg.format == "table") {
          out << file.string() << " [" << to_string(md) << "]: " << (match ? "match " : "MISMATCH ")
              << to_string(annular) << "\n";
          out << diff_tables(oracle, annular, "oracle", "annular");
        } else {
          entry[to_string(md)] = {{"match", match}, {"annular", to_json(annular)}, {"oracle", to_json(oracle)}};
          if (!match) entry[to_string(md)]["diff"] = diff_tables(oracle, annular, "oracle", "annular");
        }
      }
      if (cfg.format == "json") batch.push_back(entry);
    } else {
      throw InputError("unknown command '" + cfg.command + "'");
    }
  }
  if (cfg.command == "compare" && cfg.format == "json") out << batch.dump() << "\n";
  return status;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return run_command(cfg, out);
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const InvariantError& e) {
    err << "internal invariant failed: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace akh
