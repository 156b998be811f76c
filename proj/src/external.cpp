#include "clauseforge/external.hpp"

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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "clauseforge/tstp.hpp"

namespace clauseforge {

namespace {

std::vector<std::string> expand_template(const std::string& templ,
                                         const std::string& file, int timeout_s) {
  std::vector<std::string> args;
  std::istringstream in(templ);
  std::string token;
  while (in >> token) {
    std::size_t at;
    while ((at = token.find("{file}")) != std::string::npos) {
      token.replace(at, 6, file);
    }
    while ((at = token.find("{timeout}")) != std::string::npos) {
      token.replace(at, 9, std::to_string(timeout_s));
    }
    args.push_back(token);
  }
  return args;
}

// Temp file removed on scope exit.
class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    namespace fs = std::filesystem;
    std::string templ =
        (fs::temp_directory_path() / "clauseforge_XXXXXX").string();
    std::vector<char> buf(templ.begin(), templ.end());
    buf.push_back('\0');
    int fd = mkstemp(buf.data());
    if (fd < 0) throw ProcessError("mkstemp failed: " + std::string(strerror(errno)));
    path_.assign(buf.data());
    ssize_t n = write(fd, contents.data(), contents.size());
    close(fd);
    if (n != static_cast<ssize_t>(contents.size())) {
      throw ProcessError("short write to " + path_);
    }
  }
  ~TempFile() { ::unlink(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

bool executable_on_path(const std::string& name) {
  namespace fs = std::filesystem;
  if (name.find('/') != std::string::npos) return fs::exists(name);
  const char* path = std::getenv("PATH");
  if (!path) return false;
  std::istringstream in(path);
  std::string dir;
  while (std::getline(in, dir, ':')) {
    if (!dir.empty() && fs::exists(fs::path(dir) / name)) return true;
  }
  return false;
}

}  // namespace

void ExternalProverConfig::validate() const {
  limits.validate();
  if (executable.empty() || !executable_on_path(executable)) {
    throw ProcessError("external prover executable not found: '" + executable + "'");
  }
}

ProcessResult run_process(const std::vector<std::string>& argv, double timeout_s) {
  if (argv.empty()) throw ProcessError("empty argv");
  int pipefd[2];
  if (pipe(pipefd) != 0) throw ProcessError("pipe failed");
  pid_t pid = fork();
  if (pid < 0) {
    close(pipefd[0]);
    close(pipefd[1]);
    throw ProcessError("fork failed");
  }
  if (pid == 0) {
    dup2(pipefd[1], STDOUT_FILENO);
    dup2(pipefd[1], STDERR_FILENO);
    close(pipefd[0]);
    close(pipefd[1]);
    std::vector<char*> cargs;
    cargs.reserve(argv.size() + 1);
    for (const std::string& a : argv) cargs.push_back(const_cast<char*>(a.c_str()));
    cargs.push_back(nullptr);
    execvp(cargs[0], cargs.data());
    fprintf(stderr, "exec failed: %s\n", strerror(errno));
    _exit(127);
  }
  close(pipefd[1]);
  fcntl(pipefd[0], F_SETFL, O_NONBLOCK);

  ProcessResult result;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(timeout_s));
  char buf[4096];
  bool open = true;
  while (open) {
    auto now = std::chrono::steady_clock::now();
    if (now > deadline) {
      result.timed_out = true;
      kill(pid, SIGKILL);
    }
    struct pollfd pfd{pipefd[0], POLLIN, 0};
    int remaining_ms = result.timed_out
                           ? 100
                           : static_cast<int>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                                  deadline - now)
                                                  .count()) +
                                 1;
    if (remaining_ms < 1) remaining_ms = 1;
    if (remaining_ms > 200) remaining_ms = 200;
    poll(&pfd, 1, remaining_ms);
    while (true) {
      ssize_t n = read(pipefd[0], buf, sizeof(buf));
      if (n > 0) {
        result.output.append(buf, static_cast<std::size_t>(n));
      } else if (n == 0) {
        open = false;
        break;
      } else {
        if (errno == EAGAIN || errno == EWOULDBLOCK) break;
        open = false;
        break;
      }
    }
  }
  close(pipefd[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  if (result.timed_out) {
    result.exit_code = -1;
  } else if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
    if (result.exit_code == 127) {
      throw ProcessError("could not execute '" + argv[0] + "'");
    }
  } else {
    result.exit_code = -1;
  }
  return result;
}

SaturationOutput run_external_saturation(const std::string& axiom_file,
                                         const ExternalProverConfig& config) {
  int timeout_s = static_cast<int>(std::ceil(config.limits.timeout_s));
  std::vector<std::string> argv = {config.executable};
  for (std::string& a : expand_template(config.saturation_args, axiom_file, timeout_s)) {
    argv.push_back(std::move(a));
  }
  // One extra second of wall clock so the prover's own limit fires first.
  ProcessResult proc = run_process(argv, config.limits.timeout_s + 1.0);
  SaturationOutput out = parse_tstp_derivation(proc.output);
  if (proc.timed_out) out.complete = false;
  return out;
}

Verdict check_entailment_external(const std::vector<Clause>& premises,
                                  const Clause& conjecture,
                                  const ExternalProverConfig& config) {
  std::vector<std::string> avoid;
  for (const Clause& p : premises) {
    for (std::string& s : clause_symbols(p)) avoid.push_back(std::move(s));
  }
  std::ostringstream problem;
  int i = 1;
  for (const Clause& p : premises) {
    AnnotatedClause ac{"p" + std::to_string(i++), Role::kAxiom, p, ""};
    problem << render_annotated(ac) << ".\n";
  }
  i = 1;
  for (const Clause& unit : negate_conjecture(conjecture, avoid)) {
    problem << "cnf(nc" << i++ << ",negated_conjecture," << render_clause(unit)
            << ").\n";
  }
  TempFile file(problem.str());
  int timeout_s = static_cast<int>(std::ceil(config.limits.timeout_s));
  std::vector<std::string> argv = {config.executable};
  for (std::string& a : expand_template(config.entailment_args, file.path(), timeout_s)) {
    argv.push_back(std::move(a));
  }
  ProcessResult proc = run_process(argv, config.limits.timeout_s + 1.0);
  Verdict verdict;
  verdict.kind = proc.timed_out ? VerdictKind::kResourceOut
                                : verdict_from_szs(find_szs_status(proc.output));
  if (verdict.kind == VerdictKind::kEntailed) {
    // Keep whatever refutation records the prover printed as evidence.
    verdict.evidence = parse_tstp_derivation(proc.output).records;
  }
  return verdict;
}

}  // namespace clauseforge
