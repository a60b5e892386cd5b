#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "vorcycle/complex.hpp"
#include "vorcycle/homology.hpp"
#include "vorcycle/perfect.hpp"
#include "vorcycle/tess.hpp"

namespace vorcycle {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class PayloadKind { Graph, Complex, Verdict, TessInstance };
std::string to_string(PayloadKind k);

Json to_json(const VoronoiGraph& g);
/// Rebuilds every node from its stored form and checks the stored summaries.
/// Throws CacheCorruption on any mismatch.
VoronoiGraph graph_from_json(const Json& j);

Json to_json(const VoronoiComplex& c);
/// Rebuilds the complex from the graph and checks it against the stored one.
/// Throws CacheCorruption on any mismatch.
VoronoiComplex complex_from_json(const Json& j, const VoronoiGraph& g);

Json to_json(const TheoremReport& r);
TheoremReport report_from_json(const Json& j);

Json to_json(const TessInstance& t);
/// Throws ParseError naming the offending field.
TessInstance tess_from_json(const Json& j);

Json to_json(const GeneralVerdict& v);

/// Hex SHA-256 of the compact payload serialization.
std::string content_hash(const Json& payload);
/// Envelope with schema version, payload kind, n, group and content hash.
Json make_document(PayloadKind kind, std::size_t n, std::optional<GroupKind> group, Json payload);
/// Checks schema, kind and hash and returns the payload. A missing hash is
/// accepted only when `require_hash` is false. Throws CacheCorruption.
Json open_document(const Json& doc, PayloadKind kind, bool require_hash = true);

/// Pretty JSON with a trailing newline.
std::string render(const Json& j);
/// Throws ParseError with line and column.
Json parse_text(const std::string& text);

/// Write to a temporary sibling, then rename over the target.
void write_atomic(const std::filesystem::path& path, const std::string& text);
std::string read_file(const std::filesystem::path& path);

/// Whole-payload cache keyed by kind, n, group and seed.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  /// VORCYCLE_CACHE if set, otherwise `fallback`.
  static std::filesystem::path resolve_dir(const std::string& fallback);

  std::filesystem::path path(PayloadKind kind, std::size_t n, std::optional<GroupKind> group,
                             std::uint64_t seed) const;
  /// nullopt when absent; throws CacheCorruption when present but unreadable.
  std::optional<Json> load(PayloadKind kind, std::size_t n, std::optional<GroupKind> group, std::uint64_t seed) const;
  std::filesystem::path store(PayloadKind kind, std::size_t n, std::optional<GroupKind> group, std::uint64_t seed,
                              Json payload) const;

  /// Cached or freshly enumerated graph; a fresh one is stored.
  VoronoiGraph graph(std::size_t n, std::uint64_t seed) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace vorcycle
