// curvex command line: finite curve-complex constructions, checks and exports.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "curvex/checks.hpp"
#include "curvex/curvex.hpp"

namespace {

using namespace curvex;

struct Options {
  std::string out_path;          // empty = stdout
  std::string format = "json";   // json | dot
  double deadline_seconds = 0;   // 0 = none
};

int vertex_limit_from_env() {
  const char* env = std::getenv("CURVEX_LIMIT_VERTICES");
  if (!env || !*env) return kDefaultVertexLimit;
  char* rest = nullptr;
  const long value = std::strtol(env, &rest, 10);
  if (*rest != '\0' || value <= 0)
    fail(errc::invalid_argument, "CURVEX_LIMIT_VERTICES must be a positive integer");
  return static_cast<int>(value);
}

Deadline deadline_of(const Options& opt) {
  return opt.deadline_seconds > 0 ? Deadline::after_seconds(opt.deadline_seconds) : Deadline{};
}

void emit(const Options& opt, const std::string& payload) {
  if (opt.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) fail(errc::invalid_argument, "cannot open output file " + opt.out_path);
  out << payload;
}

void emit_complex(const Options& opt, const Complex2& c) {
  if (opt.format == "dot")
    emit(opt, complex_to_dot(c));
  else
    emit(opt, complex_to_json_text(c));
}

Complex2 load_complex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::invalid_argument, "cannot open input file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::invalid_argument, std::string("bad JSON: ") + e.what());
  }
  return complex_from_json(doc);
}

std::vector<int> parse_levels(const std::string& csv) {
  std::vector<int> levels;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    levels.push_back(std::stoi(item));
  }
  if (levels.empty()) fail(errc::invalid_argument, "no levels given");
  return levels;
}

// Per-component factors for a surface made of dimension-<=1 pieces.
std::vector<Complex2> surface_factors(const SurfaceSpec& surface, int level, bool star) {
  std::vector<Complex2> factors;
  for (SurfaceType t : surface.components) {
    const int d = modular_dimension(t);
    if (d == 0)
      factors.push_back(point_complex("pants"));
    else if (d == 1)
      factors.push_back(star ? gstar_level(level) : farey_level(level));
    else
      fail(errc::invalid_argument,
           "component " + type_str(t) + " has modular dimension " + std::to_string(d) +
               "; no curve engine exists beyond dimension 1");
  }
  if (factors.empty()) fail(errc::invalid_argument, "empty surface");
  return factors;
}

int run(int argc, char** argv) {
  CLI::App app{"finite curve complexes, pants graphs and their quotient towers"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--out", opt.out_path, "write output to this path instead of stdout");
  app.add_option("--format", opt.format, "output format: json or dot")
      ->check(CLI::IsMember({"json", "dot"}));
  app.add_option("--deadline", opt.deadline_seconds, "cooperative deadline in seconds");

  // farey
  int depth = 0;
  auto* farey = app.add_subcommand("farey", "ball of the Farey tessellation");
  farey->add_option("--depth", depth, "subdivision rounds")->required();

  // quotient
  int level = 0;
  bool star = false;
  auto* quotient = app.add_subcommand("quotient", "congruence-level quotient complex");
  quotient->add_option("--level", level, "congruence level m")->required();
  quotient->add_flag("--star", star, "completed graph instead of the triangulation");

  // product
  std::string surface_str;
  auto* product = app.add_subcommand("product", "product complex over a disconnected surface");
  product->add_option("--surface", surface_str, "surface, e.g. \"1,1+0,4\"")->required();
  product->add_option("--level", level, "congruence level m")->required();
  product->add_flag("--star", star, "star-flavor product");

  // reconstruct
  std::string in_path;
  auto* reconstruct = app.add_subcommand("reconstruct",
                                         "detect sub-products and rebuild the curve complex");
  reconstruct->add_option("--in", in_path, "flattened star product (JSON export)")->required();

  // aut
  bool with_triangles = false;
  auto* aut = app.add_subcommand("aut", "automorphism group of a complex");
  aut->add_option("--in", in_path, "complex JSON")->required();
  aut->add_flag("--triangles", with_triangles, "respect the triangle structure");

  // tower
  std::string levels_csv;
  auto* tower = app.add_subcommand("tower", "truncated inverse system of quotients");
  tower->add_option("--surface", surface_str, "surface, e.g. \"1,1\"")->required();
  tower->add_option("--levels", levels_csv, "comma-separated levels, e.g. 2,4")->required();

  // nerve
  auto* nerve_cmd = app.add_subcommand("nerve", "nerve of the fiber cover of a complex");
  nerve_cmd->add_option("--in", in_path, "complex JSON with fiber metadata")->required();

  // verify
  std::string suite = "default";
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--suite", suite, "suite name (default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help();
      return 0;
    }
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  }

  const int vertex_limit = vertex_limit_from_env();
  const Deadline deadline = deadline_of(opt);

  if (farey->parsed()) {
    emit_complex(opt, farey_ball(depth));
  } else if (quotient->parsed()) {
    emit_complex(opt, star ? gstar_level(level) : farey_level(level));
  } else if (product->parsed()) {
    const SurfaceSpec surface = SurfaceSpec::parse(surface_str);
    auto factors = surface_factors(surface, level, star);
    const ProductComplex p = star ? product_star(std::move(factors))
                                  : product_pants(std::move(factors));
    emit_complex(opt, p.flattened);
  } else if (reconstruct->parsed()) {
    const ProductComplex p = product_from_complex(load_complex(in_path));
    const SubgraphFamily family = maximal_subsurface_subgraphs(
        p, kDefaultMemberFactorLimit, kDefaultMemberFactorVertexLimit, deadline);
    const SimplicialComplex rebuilt = reconstruct_curve_complex(
        p, kDefaultMemberFactorLimit, kDefaultMemberFactorVertexLimit, deadline);
    const SimplicialComplex direct = direct_curve_complex(p.factors);
    nlohmann::json by_dim = nlohmann::json::object();
    for (const SubgraphMember& m : family.members)
      by_dim[std::to_string(m.dimension)] =
          by_dim.value(std::to_string(m.dimension), 0) + 1;
    nlohmann::json j{{"members", family.members.size()},
                     {"by_dimension", by_dim},
                     {"roundtrip_iso", simplicially_isomorphic(rebuilt, direct)}};
    emit(opt, j.dump(2) + "\n");
  } else if (aut->parsed()) {
    const Complex2 c = load_complex(in_path);
    const AutGroup group = automorphism_group(c, with_triangles, vertex_limit, deadline);
    nlohmann::json gens = nlohmann::json::array();
    for (const VertexPermutation& g : group.generators) gens.push_back(g.images());
    nlohmann::json j{{"order", group.order},
                     {"orientation_preserving_index", group.orientation_preserving_index},
                     {"generators", gens}};
    emit(opt, j.dump(2) + "\n");
  } else if (tower->parsed()) {
    const Tower t = build_tower(SurfaceSpec::parse(surface_str), parse_levels(levels_csv));
    emit(opt, tower_report(t, kDefaultEnumerationLimit, vertex_limit).dump(2) + "\n");
  } else if (nerve_cmd->parsed()) {
    const Complex2 c = load_complex(in_path);
    emit_complex(opt, nerve(c, fiber_metadata(c)));
  } else if (verify->parsed()) {
    if (suite != "default") fail(errc::invalid_argument, "unknown suite '" + suite + "'");
    const auto rows = run_default_suite(vertex_limit);
    bool all = true;
    std::string table;
    for (const CheckRow& row : rows) {
      all = all && row.pass;
      table += (row.pass ? "PASS  " : "FAIL  ") + row.name;
      if (!row.detail.empty()) table += "  (" + row.detail + ")";
      table += "\n";
    }
    table += all ? "all checks passed\n" : "some checks FAILED\n";
    emit(opt, table);
    return all ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const curvex::Error& e) {
    std::cerr << e.what() << "\n";
    return std::string(e.code()) == curvex::errc::deadline_exceeded ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
