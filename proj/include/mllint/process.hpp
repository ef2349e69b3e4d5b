#pragma once

/// POSIX subprocess execution with captured output, optional stdin data,
/// working-directory and environment control, and a hard timeout.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mllint {

struct RunOptions {
    std::filesystem::path workdir;                                // empty = inherit
    std::vector<std::pair<std::string, std::string>> extra_env;   // appended to environ
    std::chrono::milliseconds timeout{0};                         // 0 = unlimited
    std::string stdin_data;
};

struct RunResult {
    bool start_failed = false;  // executable missing or exec failed
    bool timed_out = false;
    int exit_code = -1;         // 128+signal when terminated by a signal
    std::string output;         // stdout
    std::string error;          // stderr
};

/// Locates an executable by searching the PATH environment variable.
inline std::optional<std::filesystem::path> find_in_path(std::string_view name) {
    if (name.find('/') != std::string_view::npos) {
        std::filesystem::path p{std::string(name)};
        return ::access(p.c_str(), X_OK) == 0 ? std::optional(p) : std::nullopt;
    }
    const char* path_env = ::getenv("PATH");
    if (!path_env) return std::nullopt;
    std::string_view paths = path_env;
    std::size_t start = 0;
    while (start <= paths.size()) {
        std::size_t end = paths.find(':', start);
        std::string_view dir =
            paths.substr(start, end == std::string_view::npos ? end : end - start);
        if (!dir.empty()) {
            std::filesystem::path candidate = std::filesystem::path(dir) / std::string(name);
            struct stat st{};
            if (::stat(candidate.c_str(), &st) == 0 && S_ISREG(st.st_mode) &&
                ::access(candidate.c_str(), X_OK) == 0)
                return candidate;
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return std::nullopt;
}

namespace detail {

struct Pipe {
    int fds[2] = {-1, -1};
    bool open() { return ::pipe(fds) == 0; }
    void close_read() {
        if (fds[0] >= 0) ::close(fds[0]);
        fds[0] = -1;
    }
    void close_write() {
        if (fds[1] >= 0) ::close(fds[1]);
        fds[1] = -1;
    }
    ~Pipe() {
        close_read();
        close_write();
    }
};

} // namespace detail

inline RunResult run_process(const std::vector<std::string>& argv, const RunOptions& options = {}) {
    RunResult result;
    if (argv.empty()) {
        result.start_failed = true;
        result.error = "empty command line";
        return result;
    }

    detail::Pipe in, out, err, status; // status reports exec failure to the parent
    if (!in.open() || !out.open() || !err.open() || !status.open()) {
        result.start_failed = true;
        result.error = std::strerror(errno);
        return result;
    }
    ::fcntl(status.fds[1], F_SETFD, FD_CLOEXEC);

    pid_t pid = ::fork();
    if (pid < 0) {
        result.start_failed = true;
        result.error = std::strerror(errno);
        return result;
    }

    if (pid == 0) { // child
        ::dup2(in.fds[0], STDIN_FILENO);
        ::dup2(out.fds[1], STDOUT_FILENO);
        ::dup2(err.fds[1], STDERR_FILENO);
        in.close_read();
        in.close_write();
        out.close_read();
        out.close_write();
        err.close_read();
        err.close_write();
        status.close_read();
        if (!options.workdir.empty() && ::chdir(options.workdir.c_str()) != 0) {
            int e = errno;
            (void)!::write(status.fds[1], &e, sizeof e);
            ::_exit(127);
        }
        for (const auto& [key, value] : options.extra_env) ::setenv(key.c_str(), value.c_str(), 1);
        std::vector<char*> cargv;
        cargv.reserve(argv.size() + 1);
        for (const auto& arg : argv) cargv.push_back(const_cast<char*>(arg.c_str()));
        cargv.push_back(nullptr);
        ::execvp(cargv[0], cargv.data());
        int e = errno;
        (void)!::write(status.fds[1], &e, sizeof e);
        ::_exit(127);
    }

    // parent
    in.close_read();
    out.close_write();
    err.close_write();
    status.close_write();

    if (options.stdin_data.empty()) in.close_write();
    ::signal(SIGPIPE, SIG_IGN);

    auto deadline = std::chrono::steady_clock::now() + options.timeout;
    bool unlimited = options.timeout.count() <= 0;
    std::size_t stdin_written = 0;

    while (true) {
        struct pollfd fds[3];
        int nfds = 0;
        int out_idx = -1, err_idx = -1, in_idx = -1;
        if (out.fds[0] >= 0) {
            out_idx = nfds;
            fds[nfds++] = {out.fds[0], POLLIN, 0};
        }
        if (err.fds[0] >= 0) {
            err_idx = nfds;
            fds[nfds++] = {err.fds[0], POLLIN, 0};
        }
        if (in.fds[1] >= 0) {
            in_idx = nfds;
            fds[nfds++] = {in.fds[1], POLLOUT, 0};
        }
        if (nfds == 0) break;

        int wait_ms = -1;
        if (!unlimited) {
            auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                deadline - std::chrono::steady_clock::now());
            wait_ms = static_cast<int>(std::max<std::int64_t>(remaining.count(), 0));
        }
        int ready = ::poll(fds, static_cast<nfds_t>(nfds), wait_ms);
        if (ready < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (ready == 0) { // timeout
            result.timed_out = true;
            ::kill(pid, SIGKILL);
            break;
        }

        char buffer[8192];
        auto drain = [&](int idx, detail::Pipe& pipe, std::string& sink, bool read_end) {
            if (idx < 0 || fds[idx].revents == 0) return;
            if (read_end) {
                ssize_t n = ::read(pipe.fds[0], buffer, sizeof buffer);
                if (n > 0) sink.append(buffer, static_cast<std::size_t>(n));
                else pipe.close_read();
            }
        };
        drain(out_idx, out, result.output, true);
        drain(err_idx, err, result.error, true);
        if (in_idx >= 0 && fds[in_idx].revents != 0) {
            if (fds[in_idx].revents & (POLLERR | POLLHUP)) {
                in.close_write();
            } else {
                std::size_t remaining = options.stdin_data.size() - stdin_written;
                ssize_t n = ::write(in.fds[1], options.stdin_data.data() + stdin_written,
                                    std::min<std::size_t>(remaining, 65536));
                if (n > 0) stdin_written += static_cast<std::size_t>(n);
                if (n < 0 || stdin_written == options.stdin_data.size()) in.close_write();
            }
        }
    }

    int exec_errno = 0;
    if (::read(status.fds[0], &exec_errno, sizeof exec_errno) == sizeof exec_errno) {
        result.start_failed = true;
        result.error = std::strerror(exec_errno);
    }

    int wstatus = 0;
    ::waitpid(pid, &wstatus, 0);
    if (WIFEXITED(wstatus)) result.exit_code = WEXITSTATUS(wstatus);
    else if (WIFSIGNALED(wstatus)) result.exit_code = 128 + WTERMSIG(wstatus);
    return result;
}

} // namespace mllint
