#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "icd/error.hpp"
#include "icd/sexpr.hpp"
#include "icd/smt.hpp"

namespace icd {

namespace {

std::string value_text(const SExpr& e) {
  if (e.is_atom()) return e.atom;
  return e.str();
}

// Fills `values` from a get-model block: ((define-fun x () Int 3) ...),
// optionally wrapped as (model ...).
void read_model_block(const SExpr& block, std::map<std::string, std::string>& values) {
  for (const auto& def : block.items) {
    if (def.head() != "define-fun" || def.items.size() != 5) continue;
    if (!def.items[2].items.empty()) continue;
    values[def.items[1].atom] = value_text(def.items[4]);
  }
}

bool is_model_block(const SExpr& e) {
  if (!e.is_list) return false;
  if (e.head() == "model") return true;
  if (e.items.empty()) return true;  // empty model
  return e.items.front().head() == "define-fun";
}

bool is_value_block(const SExpr& e) {
  if (!e.is_list || e.items.empty()) return false;
  for (const auto& pair : e.items)
    if (!pair.is_list || pair.items.size() != 2 || pair.items[0].is_list) return false;
  return true;
}

bool parse_bool(const std::string& name, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw DecodeError("expected a Boolean for '" + name + "', got '" + text + "'");
}

void finish(DecodedModel& m, const std::map<std::string, std::string>& objectives, const ParameterDomain& d,
            const SmtMetadata& meta) {
  if (!m.sat) return;
  for (ParamId id : kAllParams) {
    const auto& var = meta.param_vars[static_cast<std::size_t>(id)];
    auto it = m.values.find(var);
    if (it == m.values.end()) throw DecodeError("model has no value for parameter '" + var + "'");
    auto parsed = parse_sexprs(it->second);
    if (parsed.size() != 1 || !is_numeric_literal(parsed[0]))
      throw DecodeError("non-numeric value for '" + var + "': " + it->second);
    Rational value = numeric_value(parsed[0]);
    if (id == ParamId::NsrCor) value = value * Rational(100);
    if (value.den() != 1)
      throw DecodeError("value of '" + var + "' is off the programmable grid: " + it->second);
    int index = 0;
    for (int i = 1; i <= d[id].size(); ++i)
      if (d.engine_value_at(id, i) == value.num()) {
        index = i;
        break;
      }
    if (index == 0) throw DecodeError("value of '" + var + "' is off the programmable grid: " + it->second);
    m.params[id] = index;
  }
  m.claimed_effective = 0;
  for (const auto& soft : meta.soft_ids) {
    auto it = m.values.find(soft);
    if (it != m.values.end() && parse_bool(soft, it->second)) ++m.claimed_effective;
  }
  if (auto it = m.values.find(meta.dist_var); it != m.values.end()) {
    auto parsed = parse_sexprs(it->second);
    if (parsed.size() == 1 && is_numeric_literal(parsed[0])) m.dist = static_cast<int>(numeric_value(parsed[0]).num());
  } else if (auto ob = objectives.find(meta.dist_var); ob != objectives.end()) {
    m.dist = std::stoi(ob->second);
  }
}

}  // namespace

std::vector<DecodedModel> decode_models(const std::string& solver_output, const ParameterDomain& d,
                                        const SmtMetadata& meta) {
  const auto top = parse_sexprs(solver_output);
  std::vector<DecodedModel> out;
  std::map<std::string, std::string> objectives;
  bool open = false;

  auto close = [&] {
    if (open) finish(out.back(), objectives, d, meta);
    objectives.clear();
    open = false;
  };

  for (const auto& e : top) {
    // After a Pareto enumeration is exhausted, z3 reports unsat, complains
    // about the surplus get-model and starts over; nothing past the first
    // unsat is a new model.
    if (!out.empty() && !out.back().sat) break;
    if (e.is_atom()) {
      if (e.atom == "sat" || e.atom == "unsat" || e.atom == "unknown") {
        close();
        out.push_back({});
        out.back().sat = e.atom == "sat";
        open = true;
        continue;
      }
      if (e.atom == "success") continue;
      throw DecodeError("unexpected solver output '" + e.atom + "'", e.line);
    }
    if (e.head() == "error") {
      const std::string msg = e.items.size() > 1 ? e.items[1].atom : e.str();
      throw DecodeError("solver reported an error: " + msg, e.line);
    }
    if (!open) throw DecodeError("solver output does not start with a check-sat result", e.line);
    if (e.head() == "objectives") {
      for (std::size_t i = 1; i < e.items.size(); ++i) {
        const auto& o = e.items[i];
        if (o.is_list && o.items.size() == 2) objectives[value_text(o.items[0])] = value_text(o.items[1]);
      }
    } else if (is_model_block(e)) {
      read_model_block(e, out.back().values);
    } else if (is_value_block(e)) {
      for (const auto& pair : e.items) out.back().values[pair.items[0].atom] = value_text(pair.items[1]);
    } else {
      throw DecodeError("unrecognised solver output " + e.str().substr(0, 80), e.line);
    }
  }
  close();
  return out;
}

DecodedModel decode_model(const std::string& solver_output, const ParameterDomain& d, const SmtMetadata& meta) {
  auto models = decode_models(solver_output, d, meta);
  if (models.empty()) throw DecodeError("solver produced no check-sat result");
  return models.front();
}

std::optional<std::string> default_solver_command() {
  const char* env = std::getenv("ICD_SMT_SOLVER");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return std::string(env);
}

namespace {

class TempFile {
public:
  explicit TempFile(const std::string& contents) {
    std::string pattern = (std::filesystem::temp_directory_path() / "icdsynth-XXXXXX.smt2").string();
    const int fd = mkstemps(pattern.data(), 5);
    if (fd < 0) throw SolverError(SolverFailure::Io, "cannot create temporary file: " + std::string(std::strerror(errno)));
    path_ = pattern;
    std::size_t done = 0;
    while (done < contents.size()) {
      const ssize_t n = ::write(fd, contents.data() + done, contents.size() - done);
      if (n < 0) {
        if (errno == EINTR) continue;
        ::close(fd);
        throw SolverError(SolverFailure::Io, "cannot write temporary file " + path_);
      }
      done += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  ~TempFile() { std::filesystem::remove(path_); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const { return path_; }

private:
  std::string path_;
};

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

SolverOutput run_solver_process(const std::string& command_template, const std::string& smt_text,
                                std::chrono::milliseconds timeout) {
  if (timeout.count() <= 0) throw SolverError(SolverFailure::Timeout, "solver timeout is zero");
  TempFile input(smt_text);
  TempFile errors("");

  std::string command = command_template;
  const auto pos = command.find("{file}");
  if (pos == std::string::npos) command += " " + shell_quote(input.path());
  else command.replace(pos, 6, shell_quote(input.path()));

  int pipefd[2];
  if (pipe(pipefd) != 0) throw SolverError(SolverFailure::Io, "pipe failed");
  const pid_t pid = fork();
  if (pid < 0) {
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    throw SolverError(SolverFailure::Io, "fork failed");
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(pipefd[1], STDOUT_FILENO);
    const int err = open(errors.path().c_str(), O_WRONLY | O_TRUNC);
    if (err >= 0) dup2(err, STDERR_FILENO);
    const int null = open("/dev/null", O_RDONLY);
    if (null >= 0) dup2(null, STDIN_FILENO);
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  ::close(pipefd[1]);

  std::string out;
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  bool timed_out = false;
  char buf[65536];
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd p{pipefd[0], POLLIN, 0};
    const int r = poll(&p, 1, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (r < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (r == 0) continue;
    const ssize_t n = read(pipefd[0], buf, sizeof buf);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    out.append(buf, static_cast<std::size_t>(n));
  }
  ::close(pipefd[0]);
  if (timed_out) kill(-pid, SIGKILL);

  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (timed_out)
    throw SolverError(SolverFailure::Timeout, "solver exceeded " + std::to_string(timeout.count()) + " ms");

  SolverOutput result{std::move(out), read_all(errors.path()), 0};
  if (WIFSIGNALED(status))
    throw SolverError(SolverFailure::NonZeroExit, "solver killed by signal " + std::to_string(WTERMSIG(status)),
                      128 + WTERMSIG(status));
  result.exit_code = WEXITSTATUS(status);
  if (result.exit_code == 127)
    throw SolverError(SolverFailure::MissingBinary, "solver command not found: " + command_template, 127);
  return result;
}

std::string run_external_solver(const std::string& command_template, const std::string& smt_text,
                                std::chrono::milliseconds timeout) {
  SolverOutput r = run_solver_process(command_template, smt_text, timeout);
  if (r.exit_code != 0) {
    std::string detail = r.err.empty() ? r.out : r.err;
    if (detail.size() > 500) detail.resize(500);
    throw SolverError(SolverFailure::NonZeroExit,
                      "solver exited with status " + std::to_string(r.exit_code) + ": " + detail, r.exit_code);
  }
  return std::move(r.out);
}

std::string run_external_solver(const std::string& command_template, const SmtDocument& doc,
                                std::chrono::milliseconds timeout) {
  return run_external_solver(command_template, doc.text, timeout);
}

}  // namespace icd
