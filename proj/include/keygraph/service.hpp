#ifndef KEYGRAPH_SERVICE_HPP
#define KEYGRAPH_SERVICE_HPP

#include <cstddef>
#include <cstdlib>
#include <string>
#include <string_view>

#include "json.hpp"
#include "keygraph/pipeline.hpp"

namespace keygraph::service {

inline constexpr std::size_t kDefaultMaxBytes = 1 << 20;
inline constexpr int kDefaultPort = 8080;

struct Options {
  int port = kDefaultPort;
  std::size_t max_bytes = kDefaultMaxBytes;

  /// KEYGRAPH_PORT and KEYGRAPH_MAX_BYTES override the defaults.
  static Options from_env() {
    Options o;
    if (const char* p = std::getenv("KEYGRAPH_PORT")) o.port = std::atoi(p);
    if (const char* m = std::getenv("KEYGRAPH_MAX_BYTES"))
      o.max_bytes = static_cast<std::size_t>(std::strtoull(m, nullptr, 10));
    return o;
  }
};

struct Response {
  int status = 200;
  std::string body;
};

inline Response error_response(int status, std::string_view message) {
  return {status, nlohmann::json{{"error", message}}.dump()};
}

/// POST /extract
inline Response handle_extract(std::string_view body, const Options& options) {
  if (body.size() > options.max_bytes)
    return error_response(413, "request exceeds " + std::to_string(options.max_bytes) + " bytes");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    return error_response(400, std::string("malformed JSON: ") + e.what());
  }
  ExtractionRequest req;
  try {
    req = request_from_json(j);
  } catch (const Error& e) {
    return error_response(400, e.what());
  }
  try {
    auto result = extract(req);
    auto out = ranked_to_json(result.ranked);
    if (!result.warnings.empty()) out["warnings"] = result.warnings;
    return {200, out.dump()};
  } catch (const Error& e) {
    return error_response(422, e.what());
  }
}

/// GET /measures: the variant catalog for directed networks (undirected
/// networks accept the subset flagged "undirected").
inline Response handle_measures() {
  const auto undirected = variant_catalog(false);
  nlohmann::json list = nlohmann::json::array();
  for (const auto& v : variant_catalog(true)) {
    bool ok_undirected = false;
    for (const auto& u : undirected) ok_undirected = ok_undirected || u == v;
    nlohmann::json item{{"id", v.id()},
                        {"rank_direction", v.direction() == RankDirection::kAscending
                                               ? "ascending"
                                               : "descending"},
                        {"undirected", ok_undirected}};
    if (v.uses_mode()) item["mode"] = mode_name(v.mode);
    if (v.uses_weight()) item["weighted"] = v.weighted;
    if (v.uses_interpretation())
      item["interpretation"] =
          v.interpretation == Interpretation::kDirected ? "directed" : "undirected";
    list.push_back(std::move(item));
  }
  return {200, nlohmann::json{{"measures", list}}.dump()};
}

}  // namespace keygraph::service

#endif  // KEYGRAPH_SERVICE_HPP
