// Copyright 2026 The FactGraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Thin JSON-over-HTTP layer used by the external service clients.

#pragma once

#include <chrono>
#include <string>
#include <string_view>

#include <httplib.h>
#include <json.hpp>

#include "factgraph/error.hpp"

namespace factgraph {

using json = nlohmann::json;

}  // namespace factgraph

namespace factgraph::http {

// "http://host:8080/w/api.php" -> {"http://host:8080", "/w/api.php"}.
struct Url {
  std::string origin;
  std::string path;
};

inline Url split_url(std::string_view url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) throw ConfigError("URL lacks a scheme: " + std::string(url));
  const std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string_view::npos) return {std::string(url), "/"};
  return {std::string(url.substr(0, path_start)), std::string(url.substr(path_start))};
}

struct Timeouts {
  std::chrono::seconds connect{5};
  std::chrono::seconds read{30};
};

inline httplib::Client make_client(const std::string& origin, const Timeouts& t) {
  httplib::Client cli(origin);
  cli.set_connection_timeout(t.connect);
  cli.set_read_timeout(t.read);
  cli.set_follow_location(true);
  return cli;
}

inline json parse_body(const std::string& body, const std::string& what) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw TransportError(what + ": malformed JSON response: " + e.what());
  }
}

inline void check_response(const httplib::Result& res, const std::string& what) {
  if (!res) throw TransportError(what + ": " + httplib::to_string(res.error()));
  if (res->status == 404) throw NotFoundError(what + ": HTTP 404");
  if (res->status < 200 || res->status >= 300) {
    throw TransportError(what + ": HTTP " + std::to_string(res->status));
  }
}

inline json get_json(const std::string& url, const httplib::Params& params, const Timeouts& t = {}) {
  const Url u = split_url(url);
  auto cli = make_client(u.origin, t);
  auto res = cli.Get(u.path, params, httplib::Headers{{"User-Agent", "factgraph/1.0"}});
  check_response(res, "GET " + url);
  return parse_body(res->body, "GET " + url);
}

inline json post_json(const std::string& url, const json& body, const Timeouts& t = {}) {
  const Url u = split_url(url);
  auto cli = make_client(u.origin, t);
  auto res = cli.Post(u.path, body.dump(), "application/json");
  check_response(res, "POST " + url);
  return parse_body(res->body, "POST " + url);
}

}  // namespace factgraph::http
