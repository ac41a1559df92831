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

#include "skg/remote.h"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstring>

#include "skg/penman.h"

namespace skg {

namespace {

using Clock = std::chrono::steady_clock;

int remaining_ms(Clock::time_point deadline) {
  auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                  deadline - Clock::now())
                  .count();
  return left < 0 ? 0 : static_cast<int>(left);
}

void ignore_sigpipe_once() {
  static std::once_flag flag;
  std::call_once(flag, [] { ::signal(SIGPIPE, SIG_IGN); });
}

// Reads bytes from fd until '\n' or the deadline.
std::string read_line(int fd, Clock::time_point deadline) {
  std::string line;
  char c;
  for (;;) {
    int wait = remaining_ms(deadline);
    struct pollfd pfd {fd, POLLIN, 0};
    int ready = ::poll(&pfd, 1, wait);
    if (ready == 0) {
      throw RemoteError(RemoteFault::kTimeout,
                        "backend did not respond within the timeout");
    }
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw RemoteError(RemoteFault::kConnect,
                        std::string("poll failed: ") + std::strerror(errno));
    }
    ssize_t n = ::read(fd, &c, 1);
    if (n == 0) {
      throw RemoteError(RemoteFault::kConnect,
                        "backend closed the stream before responding");
    }
    if (n < 0) {
      if (errno == EINTR) continue;
      throw RemoteError(RemoteFault::kConnect,
                        std::string("read failed: ") + std::strerror(errno));
    }
    if (c == '\n') return line;
    line.push_back(c);
    if (line.size() > (1u << 22)) {
      throw RemoteError(RemoteFault::kBadJson, "response line too long");
    }
  }
}

void write_all(int fd, const std::string& data) {
  size_t done = 0;
  while (done < data.size()) {
    ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw RemoteError(RemoteFault::kConnect,
                        std::string("write failed: ") + std::strerror(errno));
    }
    done += static_cast<size_t>(n);
  }
}

struct Endpoint {
  enum class Kind { kTcp, kExec } kind;
  std::string host;
  std::string port;
  std::vector<std::string> argv;
};

// Whitespace split honoring single/double quotes; no escapes, no expansion.
std::vector<std::string> split_command(std::string_view command) {
  std::vector<std::string> argv;
  std::string current;
  bool in_token = false;
  char quote = '\0';
  for (char c : command) {
    if (quote != '\0') {
      if (c == quote) {
        quote = '\0';
      } else {
        current.push_back(c);
      }
      continue;
    }
    if (c == '\'' || c == '"') {
      quote = c;
      in_token = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_token) {
        argv.push_back(current);
        current.clear();
        in_token = false;
      }
      continue;
    }
    current.push_back(c);
    in_token = true;
  }
  if (in_token) argv.push_back(current);
  return argv;
}

Endpoint parse_endpoint(const std::string& spec) {
  Endpoint ep;
  if (spec.rfind("tcp:", 0) == 0) {
    ep.kind = Endpoint::Kind::kTcp;
    std::string rest = spec.substr(4);
    size_t colon = rest.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= rest.size()) {
      throw ValidationError("tcp endpoint must be tcp:host:port: " + spec);
    }
    ep.host = rest.substr(0, colon);
    ep.port = rest.substr(colon + 1);
    return ep;
  }
  if (spec.rfind("exec:", 0) == 0) {
    ep.kind = Endpoint::Kind::kExec;
    ep.argv = split_command(spec.substr(5));
    if (ep.argv.empty()) {
      throw ValidationError("exec endpoint must name a command: " + spec);
    }
    return ep;
  }
  throw ValidationError("endpoint must start with tcp: or exec:, got " + spec);
}

// One-shot TCP exchange: connect, send, read one line, close.
class ScopedFd {
 public:
  explicit ScopedFd(int fd = -1) : fd_(fd) {}
  ~ScopedFd() { reset(); }
  ScopedFd(const ScopedFd&) = delete;
  ScopedFd& operator=(const ScopedFd&) = delete;

  void reset(int fd = -1) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = fd;
  }
  int get() const { return fd_; }

 private:
  int fd_;
};

std::string tcp_exchange(const Endpoint& ep, const std::string& line,
                         Clock::time_point deadline) {
  struct addrinfo hints {};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  struct addrinfo* info = nullptr;
  int rc = ::getaddrinfo(ep.host.c_str(), ep.port.c_str(), &hints, &info);
  if (rc != 0) {
    throw RemoteError(RemoteFault::kConnect, "cannot resolve " + ep.host +
                                                 ": " + gai_strerror(rc));
  }
  ScopedFd fd;
  std::string last_error = "no addresses";
  for (struct addrinfo* ai = info; ai != nullptr; ai = ai->ai_next) {
    fd.reset(::socket(ai->ai_family, ai->ai_socktype | SOCK_NONBLOCK,
                      ai->ai_protocol));
    if (fd.get() < 0) {
      last_error = std::strerror(errno);
      continue;
    }
    if (::connect(fd.get(), ai->ai_addr, ai->ai_addrlen) == 0) break;
    if (errno != EINPROGRESS) {
      last_error = std::strerror(errno);
      fd.reset();
      continue;
    }
    struct pollfd pfd {fd.get(), POLLOUT, 0};
    int ready = ::poll(&pfd, 1, remaining_ms(deadline));
    if (ready <= 0) {
      ::freeaddrinfo(info);
      throw RemoteError(RemoteFault::kTimeout,
                        "connect to " + ep.host + ":" + ep.port + " timed out");
    }
    int err = 0;
    socklen_t len = sizeof(err);
    ::getsockopt(fd.get(), SOL_SOCKET, SO_ERROR, &err, &len);
    if (err != 0) {
      last_error = std::strerror(err);
      fd.reset();
      continue;
    }
    break;
  }
  ::freeaddrinfo(info);
  if (fd.get() < 0) {
    throw RemoteError(RemoteFault::kConnect, "cannot connect to " + ep.host +
                                                 ":" + ep.port + ": " +
                                                 last_error);
  }
  write_all(fd.get(), line);
  return read_line(fd.get(), deadline);
}

// A persistent subprocess speaking the protocol on its stdio.
class Subprocess {
 public:
  explicit Subprocess(std::vector<std::string> argv) : argv_(std::move(argv)) {}
  ~Subprocess() { shutdown(); }

  std::string exchange(const std::string& line, Clock::time_point deadline) {
    if (pid_ < 0) spawn();
    try {
      write_all(in_.get(), line);
      return read_line(out_.get(), deadline);
    } catch (const RemoteError&) {
      // The conversation is desynchronized; a later attempt gets a fresh
      // process.
      shutdown();
      throw;
    }
  }

 private:
  void spawn() {
    int to_child[2];
    int from_child[2];
    if (::pipe(to_child) != 0 || ::pipe(from_child) != 0) {
      throw RemoteError(RemoteFault::kConnect,
                        std::string("pipe failed: ") + std::strerror(errno));
    }
    pid_t pid = ::fork();
    if (pid < 0) {
      throw RemoteError(RemoteFault::kConnect,
                        std::string("fork failed: ") + std::strerror(errno));
    }
    if (pid == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      std::vector<char*> argv;
      argv.reserve(argv_.size() + 1);
      for (const std::string& a : argv_) {
        argv.push_back(const_cast<char*>(a.c_str()));
      }
      argv.push_back(nullptr);
      ::execvp(argv[0], argv.data());
      _exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    in_.reset(to_child[1]);
    out_.reset(from_child[0]);
    pid_ = pid;
  }

  void shutdown() {
    in_.reset();
    out_.reset();
    if (pid_ > 0) {
      int status = 0;
      if (::waitpid(pid_, &status, WNOHANG) == 0) {
        ::kill(pid_, SIGKILL);
        ::waitpid(pid_, &status, 0);
      }
      pid_ = -1;
    }
  }

  std::vector<std::string> argv_;
  ScopedFd in_;
  ScopedFd out_;
  pid_t pid_ = -1;
};

bool is_transport_fault(RemoteFault fault) {
  return fault == RemoteFault::kConnect || fault == RemoteFault::kTimeout;
}

}  // namespace

struct RemoteClient::Impl {
  Endpoint endpoint;
  std::unique_ptr<Subprocess> process;
  std::mutex process_mutex;
};

RemoteClient::RemoteClient(const std::string& endpoint, RemoteOptions options)
    : endpoint_(endpoint), options_(options), impl_(new Impl) {
  ignore_sigpipe_once();
  impl_->endpoint = parse_endpoint(endpoint);
  if (impl_->endpoint.kind == Endpoint::Kind::kExec) {
    impl_->process.reset(new Subprocess(impl_->endpoint.argv));
  }
}

RemoteClient::~RemoteClient() = default;

nlohmann::json RemoteClient::call(const nlohmann::json& request) {
  std::string line = request.dump();
  line += '\n';
  std::string response;
  int attempts = options_.retries + 1;
  for (int attempt = 0;; ++attempt) {
    try {
      auto deadline =
          Clock::now() + std::chrono::milliseconds(options_.timeout_ms);
      if (impl_->endpoint.kind == Endpoint::Kind::kTcp) {
        response = tcp_exchange(impl_->endpoint, line, deadline);
      } else {
        std::lock_guard<std::mutex> lock(impl_->process_mutex);
        response = impl_->process->exchange(line, deadline);
      }
      break;
    } catch (const RemoteError& e) {
      if (!is_transport_fault(e.fault()) || attempt + 1 >= attempts) throw;
    }
  }
  nlohmann::json parsed = nlohmann::json::parse(response, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    throw RemoteError(RemoteFault::kBadJson,
                      "backend response is not a JSON object: " + response);
  }
  if (parsed.contains("error")) {
    throw RemoteError(RemoteFault::kBackend,
                      "backend error: " + parsed.at("error").dump());
  }
  return parsed;
}

namespace {

nlohmann::json concepts_json(const std::set<Concept>& concepts) {
  nlohmann::json out = nlohmann::json::array();
  for (const Concept& c : concepts) out.push_back(c.lemma());
  return out;
}

}  // namespace

RemoteImagineBackend::RemoteImagineBackend(const std::string& endpoint,
                                           RemoteOptions options)
    : client_(endpoint, options) {}

ImaginationResult RemoteImagineBackend::imagine(
    const ImaginationRequest& request) {
  request.validate();
  nlohmann::json response = client_.call({{"kind", "imagine"},
                                          {"context", request.context},
                                          {"concepts",
                                           concepts_json(request.concepts)}});
  if (!response.contains("penman") || !response.at("penman").is_string()) {
    throw RemoteError(RemoteFault::kBadJson,
                      "imagine response lacks a \"penman\" string");
  }
  std::vector<std::string> local_warnings;
  ImaginationResult result;
  try {
    result.graph = penman::decode(response.at("penman").get<std::string>(),
                                  penman::Mode::kLenient, &local_warnings);
  } catch (const penman::DecodeError& e) {
    throw RemoteError(RemoteFault::kBadPayload,
                      std::string("backend payload is not decodable: ") +
                          e.what());
  }
  if (!local_warnings.empty()) {
    std::lock_guard<std::mutex> lock(warnings_mutex_);
    for (std::string& w : local_warnings) warnings_.push_back(std::move(w));
  }
  return result;
}

std::vector<std::string> RemoteImagineBackend::take_warnings() {
  std::lock_guard<std::mutex> lock(warnings_mutex_);
  std::vector<std::string> out;
  out.swap(warnings_);
  return out;
}

RemoteVerbalizeBackend::RemoteVerbalizeBackend(const std::string& endpoint,
                                               RemoteOptions options)
    : client_(endpoint, options) {}

std::string RemoteVerbalizeBackend::verbalize(
    const VerbalizationRequest& request) {
  request.validate();
  nlohmann::json response =
      client_.call({{"kind", "verbalize"},
                    {"context", request.context},
                    {"concepts", concepts_json(request.concepts)},
                    {"penman", penman::encode(request.graph)}});
  if (!response.contains("text") || !response.at("text").is_string()) {
    throw RemoteError(RemoteFault::kBadJson,
                      "verbalize response lacks a \"text\" string");
  }
  return response.at("text").get<std::string>();
}

}  // namespace skg
