#include <CLI11.hpp>

#include <iostream>

#include "akh/cli.hpp"
#include "akh/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Reduced Khovanov homology from annular 1-tangle diagrams"};
  akh::RunConfig cfg;
  std::string closure;
  std::size_t max_crossings = 0;

  app.add_option("command", cfg.command, "resolve | complex | homology | oracle | compare | spectral | selftest | gen-corpus")
      ->required()
      ->check(CLI::IsMember({"resolve", "complex", "homology", "oracle", "compare", "spectral", "selftest", "gen-corpus"}));
  app.add_option("inputs", cfg.inputs, "tangle files or directories of them");
  app.add_option("--closure", closure, "over | under")->check(CLI::IsMember({"over", "under"}));
  app.add_option("--format", cfg.format, "json | table")->check(CLI::IsMember({"json", "table"}));
  auto* mc = app.add_option("--max-crossings", max_crossings, "crossing limit (gen-corpus: crossing bound, default 6)");
  app.add_option("--seed", cfg.seed, "corpus seed");
  app.add_flag("--bigraded", cfg.bigraded, "refine spectral pages by (h,q)");
  app.add_flag("--unsafe-large", cfg.unsafe_large, "allow crossing limits above 20");
  app.add_option("--count", cfg.count, "number of corpus tangles");
  app.add_option("--max-loops", cfg.max_loops, "loop number bound for gen-corpus");
  app.add_option("--out", cfg.out_dir, "output directory for gen-corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : akh::kInvalidInput;
  }
  if (!closure.empty()) cfg.closure = akh::parse_closure(closure);
  if (mc->count() != 0) cfg.max_crossings = max_crossings;
  return akh::run(cfg, std::cout, std::cerr);
}
