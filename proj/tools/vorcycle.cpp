#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "vorcycle/errors.hpp"
#include "vorcycle/io.hpp"

namespace {

using namespace vorcycle;

constexpr int kVerified = 0;
constexpr int kFalsified = 1;
constexpr int kUsage = 2;
constexpr int kCorrupt = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::size_t n = 0;
  std::string group = "sl";
  std::string cache_dir = "./.vorcycle";
  bool allow_long = false;
  bool check_dd = false;
  std::uint64_t seed = 0;

  GroupKind kind() const { return parse_group_kind(group); }
  Cache cache() const { return Cache(Cache::resolve_dir(cache_dir)); }
};

void add_common(CLI::App* cmd, Common& o, bool with_dd) {
  cmd->add_option("--n", o.n, "Dimension of the forms")->required();
  cmd->add_option("--group", o.group, "gl or sl")
      ->check(CLI::IsMember({"gl", "sl"}, CLI::ignore_case))
      ->transform(CLI::IsMember({"gl", "sl"}, CLI::ignore_case));
  cmd->add_option("--cache-dir", o.cache_dir, "Cache directory (VORCYCLE_CACHE overrides)");
  cmd->add_flag("--allow-long", o.allow_long, "Allow n >= 6");
  cmd->add_option("--seed-perm", o.seed, "Tie-break permutation for representatives");
  if (with_dd) cmd->add_flag("--check-dd", o.check_dd, "Also check d o d = 0 on the top three degrees");
}

void check_dimension(const Common& o) {
  if (o.n < 2 || o.n > 7) throw UsageError("--n must lie in 2..7");
  if (o.n >= 6 && !o.allow_long) throw UsageError("n = " + std::to_string(o.n) + " needs --allow-long");
}

std::string plural(std::size_t k, const std::string& word) {
  return std::to_string(k) + " " + word + (k == 1 ? "" : "es");
}

VoronoiComplex load_complex(const Common& o, const Cache& cache, const VoronoiGraph& g) {
  if (auto j = cache.load(PayloadKind::Complex, o.n, o.kind(), o.seed)) return complex_from_json(*j, g);
  VoronoiComplex c = build_complex(g, o.kind());
  cache.store(PayloadKind::Complex, o.n, o.kind(), o.seed, to_json(c));
  return c;
}

int run_dd(const VoronoiComplex& c) {
  const bool ok = dd_sanity(c);
  std::cout << "d o d = 0: " << (ok ? "yes" : "no") << "\n";
  return ok ? kVerified : kFalsified;
}

int cmd_perfect(const Common& o) {
  check_dimension(o);
  Cache cache = o.cache();
  VoronoiGraph g = cache.graph(o.n, o.seed);
  std::vector<std::string> names;
  for (const auto& node : g.nodes) {
    names.push_back(node.name);
    if (o.kind() == GroupKind::SL && stabilizer_in_sl(node)) names.push_back(node.name + "'");
  }
  std::cout << plural(names.size(), "class") << ":";
  for (std::size_t i = 0; i < names.size(); ++i) std::cout << (i ? ", " : " ") << names[i];
  std::cout << "\n\n";
  std::printf("%-8s %-6s %-8s %-8s %s\n", "class", "min", "vectors", "facets", "|stab|");
  for (const auto& node : g.nodes)
    std::printf("%-8s %-6s %-8zu %-8zu %zu\n", node.name.c_str(), node.minvecs.min_value.get_str().c_str(),
                2 * node.minvecs.vectors.size(), node.facets.size(), stabilizer(node, o.kind()).size());
  std::cout << "\nedges:\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    std::map<std::size_t, std::size_t> to;
    for (const auto& e : g.edges)
      if (e.from == i) ++to[e.to];
    for (const auto& [j, count] : to)
      std::printf("  %-8s -> %-8s %zu facets\n", g.nodes[i].name.c_str(), g.nodes[j].name.c_str(), count);
  }
  std::cout << "\nwrote " << cache.path(PayloadKind::Graph, o.n, std::nullopt, o.seed).string() << "\n";
  return kVerified;
}

int cmd_complex(const Common& o) {
  check_dimension(o);
  Cache cache = o.cache();
  VoronoiGraph g = cache.graph(o.n, o.seed);
  VoronoiComplex c = load_complex(o, cache, g);
  std::cout << "n=" << c.n << " group=" << to_string(c.kind) << "\n";
  std::cout << "top cells: " << c.cells.size() << " (in Sigma: " << c.top_sigma.size() << ")\n";
  for (const auto& cell : c.cells)
    std::cout << "  " << cell.name << " |stab|=" << cell.stabilizer.size() << (cell.in_sigma ? " in" : " out") << "\n";
  std::cout << "facet classes: " << c.facet_classes.size() << " (in Sigma: " << c.facet_sigma.size() << ")\n";
  for (std::size_t t = 0; t < c.facet_classes.size(); ++t) {
    const auto& cls = c.facet_classes[t];
    std::cout << "  F" << t << " "
              << (cls.kind == FacetKind::SelfIntersecting ? "self " : "non-self ") << c.cells[cls.cell].name << "|"
              << c.cells[cls.other_cell].name << " |stab|=" << cls.stabilizer.size()
              << (cls.in_sigma ? " in" : " out") << "\n";
  }
  std::cout << "differential " << c.top.rows << "x" << c.top.cols << ":\n";
  for (const auto& [r, col, v] : c.top.entries) std::cout << "  (" << r << ", " << col << ") " << v << "\n";
  std::cout << "wrote " << cache.path(PayloadKind::Complex, o.n, o.kind(), o.seed).string() << "\n";
  return o.check_dd ? run_dd(c) : kVerified;
}

std::string format_vec(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

int cmd_verify(const Common& o) {
  check_dimension(o);
  Cache cache = o.cache();
  VoronoiGraph g = cache.graph(o.n, o.seed);
  VoronoiComplex c = load_complex(o, cache, g);
  TheoremReport r = verify(c);
  cache.store(PayloadKind::Verdict, o.n, o.kind(), o.seed, to_json(r));
  std::cout << "claim: " << r.claim << "\n";
  std::cout << "kernel_dim: " << r.kernel_dim << "\n";
  for (const auto& v : r.kernel_basis) std::cout << "kernel vector: " << format_vec(v) << "\n";
  std::cout << "canonical:";
  for (std::size_t i = 0; i < r.canonical.cells.size(); ++i)
    std::cout << " " << r.canonical.coefficients[i].get_str() << "*" << c.cells[r.canonical.cells[i]].name;
  std::cout << "\n";
  for (const auto& chk : r.checks)
    std::cout << "  " << (chk.ok ? "ok   " : "FAIL ") << chk.name << (chk.detail.empty() ? "" : ": " + chk.detail)
              << "\n";
  int code = r.verified() ? kVerified : kFalsified;
  std::cout << "verdict: " << (r.verified() ? "verified" : "FALSIFIED") << "\n";
  std::cout << "wrote " << cache.path(PayloadKind::Verdict, o.n, o.kind(), o.seed).string() << "\n";
  if (o.check_dd && run_dd(c) != kVerified) code = kFalsified;
  return code;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_atomic(out, text);
}

int cmd_tess_check(const std::string& input, bool as_json) {
  std::string text;
  if (input == "-")
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  else
    text = read_file(input);
  Json doc = parse_text(text);
  Json payload = doc.contains("kind") ? open_document(doc, PayloadKind::TessInstance, false) : doc;
  TessInstance inst = tess_from_json(payload);
  GeneralVerdict v;
  try {
    v = check_general_theorem(inst);
  } catch (const InvariantViolation& e) {
    throw UsageError(e.what());
  } catch (const IndexOutOfRange& e) {
    throw UsageError(e.what());
  }
  if (as_json) {
    std::cout << render(to_json(v));
  } else {
    std::cout << "tiles kept: " << v.kept_tiles.size() << "\n";
    std::cout << "components: " << v.components.size() << "\n";
    std::cout << "canonical annihilated: " << (v.canonical_annihilated ? "yes" : "no") << "\n";
    std::cout << "kernel_dim: " << v.kernel_dim << "\n";
    for (const auto& b : v.kernel_basis) std::cout << "kernel vector: " << format_vec(b) << "\n";
    std::cout << "verdict: " << (v.holds() ? "holds" : "FAILS") << "\n";
  }
  return v.holds() ? kVerified : kFalsified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Top homology of Voronoi complexes of GL_n(Z) and SL_n(Z)"};
  app.require_subcommand(1);

  Common perfect_opts, complex_opts, verify_opts, export_opts;
  auto* perfect = app.add_subcommand("perfect", "Enumerate perfect forms up to equivalence");
  add_common(perfect, perfect_opts, false);
  auto* complex = app.add_subcommand("complex", "Build the top two degrees of the Voronoi complex");
  add_common(complex, complex_opts, true);
  auto* verify_cmd = app.add_subcommand("verify", "Check the top homology against the theorem");
  add_common(verify_cmd, verify_opts, true);

  auto* tess = app.add_subcommand("tess", "Abstract tessellation instances");
  tess->require_subcommand(1);
  std::size_t fan_k = 0;
  std::string fan_out;
  auto* gen = tess->add_subcommand("gen-sector-fan", "Write the k-sector fan instance");
  gen->add_option("k", fan_k, "Number of sectors")->required()->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  gen->add_option("-o,--output", fan_out, "Output path, '-' for stdout");
  std::string check_in;
  bool check_json = false;
  auto* check = tess->add_subcommand("check", "Check an instance against the general theorem");
  check->add_option("input", check_in, "Instance path, '-' for stdin")->required();
  check->add_flag("--json", check_json, "Print the verdict as JSON");
  std::string export_out;
  auto* exp = tess->add_subcommand("export", "Write the Voronoi complex as an instance");
  add_common(exp, export_opts, false);
  exp->add_option("-o,--output", export_out, "Output path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*perfect) return cmd_perfect(perfect_opts);
    if (*complex) return cmd_complex(complex_opts);
    if (*verify_cmd) return cmd_verify(verify_opts);
    if (*gen) {
      emit(render(make_document(PayloadKind::TessInstance, 0, std::nullopt, to_json(sector_fan(fan_k)))), fan_out);
      return kVerified;
    }
    if (*check) return cmd_tess_check(check_in, check_json);
    if (*exp) {
      check_dimension(export_opts);
      Cache cache = export_opts.cache();
      VoronoiGraph g = cache.graph(export_opts.n, export_opts.seed);
      VoronoiComplex c = load_complex(export_opts, cache, g);
      emit(render(make_document(PayloadKind::TessInstance, c.n, c.kind, to_json(from_voronoi(c)))), export_out);
      return kVerified;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CacheCorruption& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCorrupt;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFalsified;
  }
  return kUsage;
}
