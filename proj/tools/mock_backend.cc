// Copyright 2025 The skg-toolkit Authors
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

// Scriptable stand-in for a neural backend speaking the NDJSON wire
// protocol on stdio or a loopback TCP socket. Used by the test suites and
// handy for manual pipeline runs.

#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

struct Config {
  std::string mode = "fixture";  // fixture | derive | error | garbage | silent
  std::string penman = "(z0 / dog)";
  std::string text = "A dog.";
  int sleep_ms = 0;
  int tcp_port = -1;  // -1: stdio; 0: ephemeral port, printed on stdout
  std::string spawn_log;  // appends one line per process start
};

std::string respond(const Config& config, const std::string& line) {
  if (config.sleep_ms > 0) {
    std::this_thread::sleep_for(std::chrono::milliseconds(config.sleep_ms));
  }
  if (config.mode == "garbage") return "this is not json";
  if (config.mode == "error") {
    return nlohmann::json({{"error", "mock backend refuses"}}).dump();
  }

  nlohmann::json request = nlohmann::json::parse(line, nullptr, false);
  if (request.is_discarded() || !request.contains("kind")) {
    return nlohmann::json({{"error", "bad request"}}).dump();
  }
  std::string kind = request.at("kind").get<std::string>();

  if (config.mode == "derive") {
    if (kind == "imagine") {
      // Star graph over the requested concepts.
      std::string penman;
      auto concepts = request.value("concepts", std::vector<std::string>());
      if (concepts.empty()) {
        return nlohmann::json({{"error", "no concepts"}}).dump();
      }
      penman = "(z0 / " + concepts[0];
      for (size_t i = 1; i < concepts.size(); ++i) {
        penman += " :mod (z" + std::to_string(i) + " / " + concepts[i] + ")";
      }
      penman += ")";
      return nlohmann::json({{"penman", penman}}).dump();
    }
    std::string joined;
    for (const auto& c : request.value("concepts",
                                       std::vector<std::string>())) {
      if (!joined.empty()) joined += ' ';
      joined += c;
    }
    return nlohmann::json({{"text", "Scene with " + joined + "."}}).dump();
  }

  if (kind == "imagine") {
    return nlohmann::json({{"penman", config.penman}}).dump();
  }
  if (kind == "verbalize") {
    return nlohmann::json({{"text", config.text}}).dump();
  }
  return nlohmann::json({{"error", "unknown kind " + kind}}).dump();
}

int serve_stdio(const Config& config) {
  std::string line;
  while (std::getline(std::cin, line)) {
    if (config.mode == "silent") continue;
    std::cout << respond(config, line) << "\n" << std::flush;
  }
  return 0;
}

int serve_tcp(const Config& config) {
  int srv = ::socket(AF_INET, SOCK_STREAM, 0);
  if (srv < 0) {
    std::perror("socket");
    return 1;
  }
  int one = 1;
  ::setsockopt(srv, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(static_cast<uint16_t>(config.tcp_port));
  if (::bind(srv, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    std::perror("bind");
    return 1;
  }
  socklen_t len = sizeof(addr);
  ::getsockname(srv, reinterpret_cast<sockaddr*>(&addr), &len);
  ::listen(srv, 16);
  std::cout << "PORT=" << ntohs(addr.sin_port) << "\n" << std::flush;

  for (;;) {
    int conn = ::accept(srv, nullptr, nullptr);
    if (conn < 0) continue;
    std::string buffer;
    char chunk[512];
    for (;;) {
      ssize_t n = ::read(conn, chunk, sizeof(chunk));
      if (n <= 0) break;
      buffer.append(chunk, static_cast<size_t>(n));
      size_t newline;
      while ((newline = buffer.find('\n')) != std::string::npos) {
        std::string line = buffer.substr(0, newline);
        buffer.erase(0, newline + 1);
        if (config.mode == "silent") continue;
        std::string reply = respond(config, line) + "\n";
        size_t done = 0;
        while (done < reply.size()) {
          ssize_t w = ::write(conn, reply.data() + done, reply.size() - done);
          if (w <= 0) break;
          done += static_cast<size_t>(w);
        }
      }
    }
    ::close(conn);
  }
}

}  // namespace

int main(int argc, char** argv) {
  Config config;
  CLI::App app{"Mock NDJSON backend for the scene-graph pipeline"};
  app.add_option("--mode", config.mode,
                 "fixture | derive | error | garbage | silent")
      ->check(CLI::IsMember({"fixture", "derive", "error", "garbage",
                             "silent"}));
  app.add_option("--penman", config.penman, "fixture imagine payload");
  app.add_option("--text", config.text, "fixture verbalize payload");
  app.add_option("--sleep-ms", config.sleep_ms, "delay before each response");
  app.add_option("--tcp", config.tcp_port,
                 "listen on 127.0.0.1:PORT (0 = ephemeral) instead of stdio");
  app.add_option("--spawn-log", config.spawn_log,
                 "append one line to this file at startup");
  CLI11_PARSE(app, argc, argv);

  if (!config.spawn_log.empty()) {
    std::ofstream log(config.spawn_log, std::ios::app);
    log << "spawn\n";
  }
  if (config.tcp_port >= 0) return serve_tcp(config);
  return serve_stdio(config);
}
