#ifndef KEYGRAPH_HTTP_HPP
#define KEYGRAPH_HTTP_HPP

#include "httplib.h"
#include "keygraph/service.hpp"

namespace keygraph::service {

/// Registers POST /extract and GET /measures on `server`.
inline void mount_routes(httplib::Server& server, const Options& options) {
  server.set_payload_max_length(options.max_bytes + 1);
  server.Post("/extract", [options](const httplib::Request& req, httplib::Response& res) {
    auto r = handle_extract(req.body, options);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });
  server.Get("/measures", [](const httplib::Request&, httplib::Response& res) {
    auto r = handle_measures();
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });
}

}  // namespace keygraph::service

#endif  // KEYGRAPH_HTTP_HPP
