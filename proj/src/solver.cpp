/* SPDX-License-Identifier: Apache-2.0 */
#include "rankforge/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>

namespace rankforge {

std::string default_solver_command() {
  if (const char* env = std::getenv("RANKFORGE_SOLVER"); env && *env) return env;
  return "z3 {script}";
}

namespace {

std::string substitute_script(const std::string& command, const std::string& path) {
  auto pos = command.find("{script}");
  if (pos == std::string::npos) return command + " " + path;
  std::string out = command;
  while (pos != std::string::npos) {
    out.replace(pos, 8, path);
    pos = out.find("{script}", pos + path.size());
  }
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct temp_script {
  std::string path;

  explicit temp_script(const std::string& contents) {
    char name[] = "/tmp/rankforge-XXXXXX.smt2";
    int fd = mkstemps(name, 5);
    if (fd < 0) throw error(std::string("cannot create temp file: ") + std::strerror(errno));
    path = name;
    std::size_t off = 0;
    while (off < contents.size()) {
      ssize_t n = write(fd, contents.data() + off, contents.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        close(fd);
        throw error(std::string("cannot write temp file: ") + std::strerror(errno));
      }
      off += static_cast<std::size_t>(n);
    }
    close(fd);
  }

  temp_script(const temp_script&) = delete;
  temp_script& operator=(const temp_script&) = delete;
  ~temp_script() { unlink(path.c_str()); }
};

void drain(int fd, std::string& sink, bool& open_flag) {
  char buf[4096];
  ssize_t n = read(fd, buf, sizeof buf);
  if (n > 0)
    sink.append(buf, static_cast<std::size_t>(n));
  else if (n == 0 || (errno != EINTR && errno != EAGAIN))
    open_flag = false;
}

}  // namespace

solver_verdict run_solver(const std::string& script, const solver_config& config,
                          const std::vector<std::string>& requested) {
  if (!(config.timeout_seconds > 0)) throw error("solver timeout must be positive");
  temp_script file(script);
  std::string cmd = substitute_script(config.command, file.path);

  long timeout_ms = std::lround(config.timeout_seconds * 1000.0);
  if (timeout_ms < 1) timeout_ms = 1;

  int out_pipe[2] = {-1, -1};
  int err_pipe[2] = {-1, -1};
  if (pipe(out_pipe) != 0) throw error(std::string("pipe: ") + std::strerror(errno));
  if (pipe(err_pipe) != 0) {
    close(out_pipe[0]);
    close(out_pipe[1]);
    throw error(std::string("pipe: ") + std::strerror(errno));
  }

  pid_t pid = fork();
  if (pid < 0) {
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    throw error(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    setenv("RANKFORGE_SOLVER_TIMEOUT_MS", std::to_string(timeout_ms).c_str(), 1);
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);  // mirror the child's call; losing the race is harmless
  close(out_pipe[1]);
  close(err_pipe[1]);

  std::string out_text, err_text;
  auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  bool out_open = true;
  bool err_open = true;
  bool exited = false;
  bool timed_out = false;
  int status = 0;

  while (out_open || err_open) {
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      timed_out = true;
      break;
    }
    long wait_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    if (wait_ms > 100) wait_ms = 100;
    if (wait_ms < 1) wait_ms = 1;
    struct pollfd fds[2];
    nfds_t nfds = 0;
    int out_idx = -1;
    int err_idx = -1;
    if (out_open) {
      fds[nfds] = {out_pipe[0], POLLIN, 0};
      out_idx = static_cast<int>(nfds++);
    }
    if (err_open) {
      fds[nfds] = {err_pipe[0], POLLIN, 0};
      err_idx = static_cast<int>(nfds++);
    }
    int pr = poll(fds, nfds, static_cast<int>(wait_ms));
    if (pr > 0) {
      if (out_idx >= 0 && (fds[out_idx].revents & (POLLIN | POLLHUP | POLLERR)))
        drain(out_pipe[0], out_text, out_open);
      if (err_idx >= 0 && (fds[err_idx].revents & (POLLIN | POLLHUP | POLLERR)))
        drain(err_pipe[0], err_text, err_open);
    }
    if (!exited && waitpid(pid, &status, WNOHANG) == pid) exited = true;
  }

  // The shell may leave stragglers holding the pipes; bound the reap by the
  // same deadline before giving up and killing the group.
  while (!exited && !timed_out) {
    if (waitpid(pid, &status, WNOHANG) == pid) {
      exited = true;
      break;
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      timed_out = true;
      break;
    }
    usleep(5000);
  }

  if (timed_out) {
    kill(-pid, SIGKILL);
    kill(pid, SIGKILL);
    if (!exited) waitpid(pid, &status, 0);
    close(out_pipe[0]);
    close(err_pipe[0]);
    solver_verdict v;
    v.k = solver_verdict::kind::unknown;
    v.reason = "timeout";
    v.raw = out_text;
    return v;
  }

  // Child exited; collect whatever output is still buffered.
  while (out_open) drain(out_pipe[0], out_text, out_open);
  while (err_open) drain(err_pipe[0], err_text, err_open);
  close(out_pipe[0]);
  close(err_pipe[0]);

  solver_verdict v;
  v.raw = out_text;

  std::istringstream lines(out_text);
  std::string line;
  std::string verdict_line;
  std::string error_lines;
  std::ostringstream model_text;
  bool after_verdict = false;
  while (std::getline(lines, line)) {
    if (after_verdict) {
      model_text << line << "\n";
      continue;
    }
    std::string t = trim(line);
    if (t == "sat" || t == "unsat" || t == "unknown") {
      verdict_line = t;
      after_verdict = true;
      continue;
    }
    if (t.rfind("(error", 0) == 0) {
      if (!error_lines.empty()) error_lines += " ";
      error_lines += t;
    }
  }

  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    v.k = solver_verdict::kind::unknown;
    std::ostringstream r;
    if (WIFSIGNALED(status))
      r << "solver killed by signal " << WTERMSIG(status);
    else
      r << "solver exited with code " << (WIFEXITED(status) ? WEXITSTATUS(status) : -1);
    if (!error_lines.empty()) r << ": " << error_lines;
    std::string err_trim = trim(err_text);
    if (!err_trim.empty()) {
      if (err_trim.size() > 500) err_trim = err_trim.substr(0, 500) + "...";
      r << ": " << err_trim;
    }
    v.reason = r.str();
    return v;
  }

  if (verdict_line.empty()) {
    v.k = solver_verdict::kind::unknown;
    v.reason = "no verdict in solver output";
    if (!error_lines.empty()) v.reason += ": " + error_lines;
    return v;
  }
  if (verdict_line == "unsat") {
    v.k = solver_verdict::kind::unsat;
    return v;
  }
  if (verdict_line == "unknown") {
    v.k = solver_verdict::kind::unknown;
    v.reason = error_lines.empty() ? "solver reported unknown" : error_lines;
    return v;
  }
  v.k = solver_verdict::kind::sat;
  if (!requested.empty()) {
    try {
      v.model = parse_model(model_text.str(), requested);
    } catch (const error& e) {
      v.k = solver_verdict::kind::unknown;
      v.reason = e.what();
    }
  }
  return v;
}

}  // namespace rankforge
