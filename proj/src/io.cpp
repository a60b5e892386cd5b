#include "vorcycle/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "vorcycle/errors.hpp"

namespace vorcycle {

std::string to_string(PayloadKind k) {
  switch (k) {
    case PayloadKind::Graph:
      return "graph";
    case PayloadKind::Complex:
      return "complex";
    case PayloadKind::Verdict:
      return "verdict";
    case PayloadKind::TessInstance:
      return "tess-instance";
  }
  return "unknown";
}

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string at(const std::string& where, const char* key) { return where.empty() ? key : where + "." + key; }
std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

std::size_t size_from(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    bad(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

bool bool_from(const Json& j, const std::string& where) {
  if (!j.is_boolean()) bad(where, "expected true or false");
  return j.get<bool>();
}

std::string string_from(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

Json int_json(const Int& x) { return x.get_str(); }

Int int_from(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (!j.is_string()) bad(where, "expected a decimal integer string");
  const std::string s = j.get<std::string>();
  Int x;
  if (s.empty() || x.set_str(s, 10) != 0) bad(where, "'" + s + "' is not a decimal integer");
  return x;
}

Json rat_json(const Rat& x) { return x.get_str(); }

Rat rat_from(const Json& j, const std::string& where) {
  const std::string s = string_from(j, where);
  Rat x;
  if (x.set_str(s, 10) != 0) bad(where, "'" + s + "' is not a rational number");
  x.canonicalize();
  return x;
}

Json vec_json(const std::vector<Int>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(int_json(x));
  return out;
}

IntVec vec_from(const Json& j, const std::string& where) {
  IntVec out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(int_from(j[i], at(where, i)));
  return out;
}

Json rat_vec_json(const RatVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rat_json(x));
  return out;
}

RatVec rat_vec_from(const Json& j, const std::string& where) {
  RatVec out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(rat_from(j[i], at(where, i)));
  return out;
}

Json mat_json(const IntMat& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(int_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

IntMat mat_from(const Json& j, const std::string& where) {
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) rows.push_back(vec_from(j[i], at(where, i)));
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows)
    if (r.size() != cols) bad(where, "rows have different lengths");
  return IntMat::from_rows(rows, cols);
}

Json vectors_json(const std::vector<IntVec>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(vec_json(v));
  return out;
}

std::string kind_name(FacetKind k) { return k == FacetKind::SelfIntersecting ? "self" : "non-self"; }

FacetKind facet_kind_from(const Json& j, const std::string& where) {
  const std::string s = string_from(j, where);
  if (s == "self") return FacetKind::SelfIntersecting;
  if (s == "non-self") return FacetKind::NonSelfIntersecting;
  bad(where, "expected 'self' or 'non-self'");
}

Json differential_json(const Differential& d) {
  Json entries = Json::array();
  for (const auto& [r, c, v] : d.entries) entries.push_back(Json::array({r, c, int_json(v)}));
  return Json{{"rows", d.rows}, {"cols", d.cols}, {"entries", entries}};
}

Json checks_json(const std::vector<LemmaCheck>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back(Json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return out;
}

template <class F>
auto as_cache(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw CacheCorruption(e.what());
  } catch (const Json::exception& e) {
    throw CacheCorruption(e.what());
  } catch (const InvariantViolation& e) {
    throw CacheCorruption(e.what());
  }
}

}  // namespace

Json to_json(const VoronoiGraph& g) {
  Json nodes = Json::array();
  for (const auto& node : g.nodes)
    nodes.push_back(Json{{"name", node.name},
                         {"form", mat_json(node.form.gram())},
                         {"minimum", int_json(node.minvecs.min_value)},
                         {"minimal_vector_pairs", node.minvecs.vectors.size()},
                         {"facet_count", node.facets.size()},
                         {"stabilizer_order", node.stabilizer.size()}});
  Json edges = Json::array();
  for (const auto& e : g.edges)
    edges.push_back(Json{{"from", e.from}, {"facet", e.facet}, {"to", e.to}, {"witness", mat_json(e.witness.matrix())}});
  return Json{{"n", g.n}, {"nodes", nodes}, {"edges", edges}};
}

VoronoiGraph graph_from_json(const Json& j) {
  return as_cache([&] {
    VoronoiGraph g;
    g.n = size_from(field(j, "n", ""), "n");
    const Json& nodes = array(field(j, "nodes", ""), "nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const std::string w = at("nodes", i);
      auto rep = make_rep(QForm(mat_from(field(nodes[i], "form", w), at(w, "form"))),
                          string_from(field(nodes[i], "name", w), at(w, "name")));
      if (rep.form.n() != g.n || rep.minvecs.min_value != int_from(field(nodes[i], "minimum", w), at(w, "minimum")) ||
          rep.minvecs.vectors.size() != size_from(field(nodes[i], "minimal_vector_pairs", w), w) ||
          rep.facets.size() != size_from(field(nodes[i], "facet_count", w), w) ||
          rep.stabilizer.size() != size_from(field(nodes[i], "stabilizer_order", w), w))
        throw CacheCorruption(w + ": stored summary does not match the form");
      g.nodes.push_back(std::move(rep));
    }
    const Json& edges = array(field(j, "edges", ""), "edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string w = at("edges", i);
      GraphEdge e{size_from(field(edges[i], "from", w), w), size_from(field(edges[i], "facet", w), w),
                  size_from(field(edges[i], "to", w), w),
                  GroupElement(mat_from(field(edges[i], "witness", w), at(w, "witness")))};
      if (e.from >= g.nodes.size() || e.to >= g.nodes.size() || e.facet >= g.nodes[e.from].facets.size())
        throw CacheCorruption(w + ": index out of range");
      g.edges.push_back(std::move(e));
    }
    if (to_json(g) != j) throw CacheCorruption("graph does not round-trip");
    return g;
  });
}

Json to_json(const VoronoiComplex& c) {
  Json cells = Json::array();
  for (const auto& cell : c.cells)
    cells.push_back(Json{{"name", cell.name},
                         {"node", cell.node},
                         {"placement", mat_json(cell.placement.matrix())},
                         {"vectors", vectors_json(cell.vectors)},
                         {"facet_count", cell.facets.size()},
                         {"facet_orbit_count", cell.facet_orbits.count()},
                         {"stabilizer_order", cell.stabilizer.size()},
                         {"in_sigma", cell.in_sigma}});
  Json classes = Json::array();
  for (const auto& cls : c.facet_classes) {
    Json sides = Json::array();
    for (const auto& s : cls.sides)
      sides.push_back(Json{{"cell", s.cell}, {"orbit", s.orbit}, {"transport", mat_json(s.transport.matrix())}});
    classes.push_back(Json{{"kind", kind_name(cls.kind)},
                           {"cell", cls.cell},
                           {"facet", cls.facet},
                           {"vectors", vectors_json(cls.vectors)},
                           {"other_cell", cls.other_cell},
                           {"witness", mat_json(cls.witness.matrix())},
                           {"sides", sides},
                           {"stabilizer_order", cls.stabilizer.size()},
                           {"basis", vectors_json(cls.basis)},
                           {"in_sigma", cls.in_sigma}});
  }
  return Json{{"n", c.n},
              {"group", to_string(c.kind)},
              {"cells", cells},
              {"facet_classes", classes},
              {"top_sigma", c.top_sigma},
              {"facet_sigma", c.facet_sigma},
              {"differential", differential_json(c.top)}};
}

VoronoiComplex complex_from_json(const Json& j, const VoronoiGraph& g) {
  return as_cache([&] {
    GroupKind kind = parse_group_kind(string_from(field(j, "group", ""), "group"));
    VoronoiComplex c = build_complex(g, kind);
    if (to_json(c) != j) throw CacheCorruption("stored complex differs from the one rebuilt from its graph");
    return c;
  });
}

Json to_json(const TheoremReport& r) {
  Json basis = Json::array();
  for (const auto& v : r.kernel_basis) basis.push_back(rat_vec_json(v));
  Json certs = Json::array();
  for (const auto& c : r.certificates) {
    Json terms = Json::array();
    for (const auto& [cell, v] : c.terms) terms.push_back(Json::array({cell, rat_json(v)}));
    certs.push_back(Json{{"facet_class", c.facet_class}, {"terms", terms}});
  }
  return Json{{"n", r.n},
              {"group", to_string(r.kind)},
              {"claim", r.claim},
              {"verified", r.verified()},
              {"kernel_dim", r.kernel_dim},
              {"canonical_in_kernel", r.canonical_in_kernel},
              {"kernel_spanned_by_canonical", r.kernel_spanned_by_canonical},
              {"kernel_basis", basis},
              {"canonical", Json{{"cells", r.canonical.cells}, {"coefficients", rat_vec_json(r.canonical.coefficients)}}},
              {"certificates", certs},
              {"checks", checks_json(r.checks)}};
}

TheoremReport report_from_json(const Json& j) {
  TheoremReport r;
  r.n = size_from(field(j, "n", ""), "n");
  r.kind = parse_group_kind(string_from(field(j, "group", ""), "group"));
  r.claim = string_from(field(j, "claim", ""), "claim");
  r.kernel_dim = size_from(field(j, "kernel_dim", ""), "kernel_dim");
  r.canonical_in_kernel = bool_from(field(j, "canonical_in_kernel", ""), "canonical_in_kernel");
  r.kernel_spanned_by_canonical = bool_from(field(j, "kernel_spanned_by_canonical", ""), "kernel_spanned_by_canonical");
  const Json& basis = array(field(j, "kernel_basis", ""), "kernel_basis");
  for (std::size_t i = 0; i < basis.size(); ++i) r.kernel_basis.push_back(rat_vec_from(basis[i], at("kernel_basis", i)));
  const Json& can = field(j, "canonical", "");
  const Json& cells = array(field(can, "cells", "canonical"), "canonical.cells");
  for (std::size_t i = 0; i < cells.size(); ++i) r.canonical.cells.push_back(size_from(cells[i], at("canonical.cells", i)));
  r.canonical.coefficients = rat_vec_from(field(can, "coefficients", "canonical"), "canonical.coefficients");
  const Json& certs = array(field(j, "certificates", ""), "certificates");
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const std::string w = at("certificates", i);
    RowCertificate c;
    c.facet_class = size_from(field(certs[i], "facet_class", w), w);
    const Json& terms = array(field(certs[i], "terms", w), at(w, "terms"));
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string tw = at(at(w, "terms"), k);
      if (!terms[k].is_array() || terms[k].size() != 2) bad(tw, "expected [cell, value]");
      c.terms.emplace_back(size_from(terms[k][0], tw), rat_from(terms[k][1], tw));
    }
    r.certificates.push_back(std::move(c));
  }
  const Json& checks = array(field(j, "checks", ""), "checks");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string w = at("checks", i);
    r.checks.push_back(LemmaCheck{string_from(field(checks[i], "name", w), w), bool_from(field(checks[i], "ok", w), w),
                                  string_from(field(checks[i], "detail", w), w)});
  }
  return r;
}

Json to_json(const TessInstance& t) {
  Json tiles = Json::array();
  for (const auto& tile : t.tiles)
    tiles.push_back(Json{{"name", tile.name},
                         {"stabilizer_order", tile.stabilizer_order},
                         {"orientation_kept", tile.orientation_kept}});
  Json facets = Json::array();
  for (const auto& f : t.facets) {
    Json inc = Json::array();
    for (const auto& r : f.incidences) inc.push_back(Json{{"tile", r.tile}, {"value", int_json(r.value)}});
    facets.push_back(Json{{"name", f.name},
                          {"stabilizer_order", f.stabilizer_order},
                          {"kind", kind_name(f.kind)},
                          {"orientation_kept", f.orientation_kept},
                          {"incidences", inc}});
  }
  Json adjacency = Json::array();
  for (const auto& [a, b] : t.adjacency) adjacency.push_back(Json::array({a, b}));
  return Json{{"ambient_dim", t.ambient_dim}, {"tiles", tiles}, {"facets", facets}, {"adjacency", adjacency}};
}

TessInstance tess_from_json(const Json& j) {
  TessInstance t;
  t.ambient_dim = size_from(field(j, "ambient_dim", ""), "ambient_dim");
  const Json& tiles = array(field(j, "tiles", ""), "tiles");
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const std::string w = at("tiles", i);
    t.tiles.push_back(TileOrbit{string_from(field(tiles[i], "name", w), at(w, "name")),
                                size_from(field(tiles[i], "stabilizer_order", w), at(w, "stabilizer_order")),
                                bool_from(field(tiles[i], "orientation_kept", w), at(w, "orientation_kept"))});
  }
  const Json& facets = array(field(j, "facets", ""), "facets");
  for (std::size_t i = 0; i < facets.size(); ++i) {
    const std::string w = at("facets", i);
    FacetOrbit f;
    f.name = string_from(field(facets[i], "name", w), at(w, "name"));
    f.stabilizer_order = size_from(field(facets[i], "stabilizer_order", w), at(w, "stabilizer_order"));
    f.kind = facet_kind_from(field(facets[i], "kind", w), at(w, "kind"));
    f.orientation_kept = bool_from(field(facets[i], "orientation_kept", w), at(w, "orientation_kept"));
    const std::string iw = at(w, "incidences");
    const Json& inc = array(field(facets[i], "incidences", w), iw);
    for (std::size_t k = 0; k < inc.size(); ++k) {
      const std::string rw = at(iw, k);
      f.incidences.push_back(IncidenceRecord{size_from(field(inc[k], "tile", rw), at(rw, "tile")),
                                             int_from(field(inc[k], "value", rw), at(rw, "value"))});
    }
    t.facets.push_back(std::move(f));
  }
  if (j.contains("adjacency")) {
    const Json& adj = array(j["adjacency"], "adjacency");
    for (std::size_t i = 0; i < adj.size(); ++i) {
      const std::string w = at("adjacency", i);
      if (!adj[i].is_array() || adj[i].size() != 2) bad(w, "expected a pair of tile indices");
      t.adjacency.emplace_back(size_from(adj[i][0], w), size_from(adj[i][1], w));
    }
  }
  return t;
}

Json to_json(const GeneralVerdict& v) {
  Json basis = Json::array();
  for (const auto& b : v.kernel_basis) basis.push_back(rat_vec_json(b));
  return Json{{"holds", v.holds()},
              {"kept_tiles", v.kept_tiles},
              {"canonical", rat_vec_json(v.canonical)},
              {"canonical_annihilated", v.canonical_annihilated},
              {"kernel_dim", v.kernel_dim},
              {"kernel_basis", basis},
              {"kernel_is_canonical", v.kernel_is_canonical},
              {"connected", v.connected()},
              {"components", v.components}};
}

std::string content_hash(const Json& payload) {
  const std::string bytes = payload.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

Json make_document(PayloadKind kind, std::size_t n, std::optional<GroupKind> group, Json payload) {
  Json doc{{"schema_version", kSchemaVersion}, {"kind", to_string(kind)}, {"n", n}};
  doc["group"] = group ? Json(to_string(*group)) : Json(nullptr);
  doc["hash"] = content_hash(payload);
  doc["payload"] = std::move(payload);
  return doc;
}

Json open_document(const Json& doc, PayloadKind kind, bool require_hash) {
  if (!doc.is_object()) throw CacheCorruption("document is not an object");
  auto version = doc.find("schema_version");
  if (version == doc.end() || !version->is_number_integer() || version->get<int>() != kSchemaVersion)
    throw CacheCorruption("unsupported schema_version");
  auto k = doc.find("kind");
  if (k == doc.end() || !k->is_string() || k->get<std::string>() != to_string(kind))
    throw CacheCorruption("expected a " + to_string(kind) + " document");
  auto payload = doc.find("payload");
  if (payload == doc.end()) throw CacheCorruption("missing payload");
  auto hash = doc.find("hash");
  if (hash == doc.end()) {
    if (require_hash) throw CacheCorruption("missing content hash");
  } else if (!hash->is_string() || hash->get<std::string>() != content_hash(*payload)) {
    throw CacheCorruption("content hash mismatch");
  }
  return *payload;
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Convert the byte offset into a line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path Cache::resolve_dir(const std::string& fallback) {
  if (const char* env = std::getenv("VORCYCLE_CACHE"); env && *env) return env;
  return fallback;
}

std::filesystem::path Cache::path(PayloadKind kind, std::size_t n, std::optional<GroupKind> group,
                                  std::uint64_t seed) const {
  std::string name = to_string(kind) + "-n" + std::to_string(n);
  if (group) name += "-" + to_string(*group);
  if (seed != 0) name += "-seed" + std::to_string(seed);
  return dir_ / (name + ".json");
}

std::optional<Json> Cache::load(PayloadKind kind, std::size_t n, std::optional<GroupKind> group,
                                std::uint64_t seed) const {
  const auto p = path(kind, n, group, seed);
  if (!std::filesystem::exists(p)) return std::nullopt;
  Json doc;
  try {
    doc = parse_text(read_file(p));
  } catch (const ParseError& e) {
    throw CacheCorruption(p.string() + ": " + e.what());
  }
  Json payload = open_document(doc, kind);
  if (doc["n"] != n || doc["group"] != (group ? Json(to_string(*group)) : Json(nullptr)))
    throw CacheCorruption(p.string() + ": header does not match the file name");
  return payload;
}

std::filesystem::path Cache::store(PayloadKind kind, std::size_t n, std::optional<GroupKind> group,
                                   std::uint64_t seed, Json payload) const {
  const auto p = path(kind, n, group, seed);
  write_atomic(p, render(make_document(kind, n, group, std::move(payload))));
  return p;
}

VoronoiGraph Cache::graph(std::size_t n, std::uint64_t seed) const {
  if (auto j = load(PayloadKind::Graph, n, std::nullopt, seed)) return graph_from_json(*j);
  VoronoiGraph g = enumerate_perfect_forms(n, EnumerationOptions{seed});
  store(PayloadKind::Graph, n, std::nullopt, seed, to_json(g));
  return g;
}

}  // namespace vorcycle
