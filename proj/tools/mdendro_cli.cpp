// mdendro: variable-group hierarchical clustering from the command line.
// Exit status: 0 ok, 2 finished but reversals present, 1 error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mdendro/mdendro.h"

namespace {

struct RunConfig {
  std::string input = "-";
  std::string format = "square";
  bool similarity = false;
  std::optional<int> precision;
  std::string method = "unweighted_average";
  std::optional<double> alpha;
  std::string policy = "interval";
  std::string output = "newick";
  bool enumerate = false;
  std::optional<std::string> tiebreak;
  std::optional<std::uint64_t> seed;
  std::size_t limit = 1000;
};

// Owns a C string handed out by the library.
struct Text {
  char* p = nullptr;
  ~Text() { mdendro_string_free(p); }
};

struct Matrix {
  mdendro_matrix* p = nullptr;
  ~Matrix() { mdendro_matrix_free(p); }
};

int report(mdendro_status s) {
  std::cerr << "mdendro: " << mdendro_status_name(s) << ": " << mdendro_last_error() << "\n";
  return 1;
}

bool read_input(const std::string& path, std::string& text) {
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

int run(const RunConfig& cfg) {
  if (cfg.seed && cfg.tiebreak.value_or("") != "random") {
    std::cerr << "mdendro: --seed requires --tiebreak random\n";
    return 1;
  }

  std::string text;
  if (!read_input(cfg.input, text)) {
    std::cerr << "mdendro: cannot read input file '" << cfg.input << "'\n";
    return 1;
  }

  Matrix m;
  if (auto s = mdendro_matrix_parse(text.c_str(), cfg.format.c_str(), &m.p)) return report(s);
  if (cfg.similarity) {
    Matrix d;
    if (auto s = mdendro_matrix_similarity(m.p, &d.p)) return report(s);
    std::swap(m.p, d.p);
  }
  if (cfg.precision) {
    Matrix r;
    if (auto s = mdendro_matrix_round(m.p, *cfg.precision, &r.p)) return report(s);
    std::swap(m.p, r.p);
  }

  const double alpha = cfg.alpha.value_or(NAN);

  if (cfg.enumerate) {
    mdendro_tree_set* set = nullptr;
    if (auto s = mdendro_enumerate(m.p, cfg.method.c_str(), alpha, cfg.limit, &set)) {
      return report(s);
    }
    const std::size_t count = mdendro_tree_set_count(set);
    std::cout << count << "\n";
    for (std::size_t i = 0; i < count; ++i) {
      Text t;
      if (auto s = mdendro_tree_set_newick(set, i, &t.p)) {
        mdendro_tree_set_free(set);
        return report(s);
      }
      std::cout << t.p << "\n";
    }
    mdendro_tree_set_free(set);
    return 0;
  }

  mdendro_result* res = nullptr;
  mdendro_status s = cfg.tiebreak
                         ? mdendro_cluster_pair_group(m.p, cfg.method.c_str(), alpha,
                                                      cfg.tiebreak->c_str(), cfg.seed.value_or(0),
                                                      &res)
                         : mdendro_cluster(m.p, cfg.method.c_str(), alpha, cfg.policy.c_str(), &res);
  if (s) return report(s);

  Text out;
  if (auto rs = mdendro_result_render(res, cfg.output.c_str(), &out.p)) {
    mdendro_result_free(res);
    return report(rs);
  }
  std::cout << out.p;
  for (std::size_t i = 0; i < mdendro_result_warning_count(res); ++i) {
    std::cerr << "mdendro: warning: " << mdendro_result_warning(res, i) << "\n";
  }
  const bool reversals = mdendro_result_has_reversals(res) != 0;
  if (reversals) std::cerr << "mdendro: warning: reversals present\n";
  mdendro_result_free(res);
  return reversals ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Variable-group agglomerative clustering into multidendrograms"};
  app.add_option("--input", cfg.input, "Proximity file, - for stdin");
  app.add_option("--format", cfg.format, "Input layout")
      ->check(CLI::IsMember({"square", "lower", "pairs", "labeled-pairs"}));
  app.add_flag("--similarity", cfg.similarity, "Input holds similarities in [0,1]; use 1-s");
  app.add_option("--precision", cfg.precision, "Round to this many decimals before clustering")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--method", cfg.method, "Linkage method");
  app.add_option("--alpha", cfg.alpha, "Exponent for joint_between_within, in (0,2]");
  app.add_option("--policy", cfg.policy, "Fusion value policy")
      ->check(CLI::IsMember({"interval", "natural", "shortest"}));
  app.add_option("--output", cfg.output, "Output kind")
      ->check(CLI::IsMember({"newick", "records", "text", "svg"}));
  app.add_flag("--enumerate", cfg.enumerate, "List every pair-group tree over tie resolutions");
  app.add_option("--tiebreak", cfg.tiebreak, "Run the pair-group algorithm with this tie rule")
      ->check(CLI::IsMember({"first", "last", "random"}));
  app.add_option("--seed", cfg.seed, "Seed for --tiebreak random");
  app.add_option("--limit", cfg.limit, "Maximum number of enumerated trees")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (cfg.alpha && !(*cfg.alpha > 0.0)) {
    std::cerr << "mdendro: InvalidAlpha: alpha must lie in (0, 2]\n";
    return 1;
  }
  return run(cfg);
}
