// Copyright 2026 The Policy Arena Authors.
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

#ifndef ARENA_TESTS_SUPPORT_HTTP_CLIENT_H_
#define ARENA_TESTS_SUPPORT_HTTP_CLIENT_H_

#include <httplib.h>

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "support/arena_fixture.h"

namespace arena::testing {

struct HttpReply {
  int status = 0;
  nlohmann::json body;
};

class ArenaClient {
 public:
  explicit ArenaClient(int port) : client_("127.0.0.1", port) {}

  HttpReply Post(const std::string& path, const nlohmann::json& body,
                 const std::string& token = "") {
    auto res = client_.Post(path, Headers(token), body.dump(), "application/json");
    return Wrap(res);
  }
  HttpReply Get(const std::string& path, const std::string& token = "") {
    return Wrap(client_.Get(path, Headers(token)));
  }

  // GET /quiz then POST /quiz, answering `correct` of the ten right.
  HttpReply Qualify(const std::string& annotator, int correct) {
    const auto answers = GoldAnswers();
    const HttpReply sheet = Get("/quiz?annotator=" + annotator);
    if (sheet.status != 200) return sheet;
    nlohmann::json responses = nlohmann::json::array();
    for (const auto& item : sheet.body["pairs"]) {
      std::string choice = answers.at(item["left_uri"].get<std::string>());
      if (static_cast<int>(responses.size()) >= correct) {
        choice = choice == "LEFT" ? "RIGHT" : "LEFT";
      }
      responses.push_back(choice);
    }
    return Post("/quiz", {{"annotator", annotator}, {"responses", responses}});
  }

 private:
  static httplib::Headers Headers(const std::string& token) {
    httplib::Headers h;
    if (!token.empty()) h.emplace("Authorization", "Bearer " + token);
    return h;
  }
  static HttpReply Wrap(const httplib::Result& res) {
    if (!res) return {-1, nullptr};
    HttpReply out{res->status, nullptr};
    if (!res->body.empty()) out.body = nlohmann::json::parse(res->body, nullptr, false);
    return out;
  }

  httplib::Client client_;
};

}  // namespace arena::testing

#endif  // ARENA_TESTS_SUPPORT_HTTP_CLIENT_H_
