#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "regdepth/core.hpp"

namespace regdepth::detail {

// requested > 0 wins; otherwise REGDEPTH_THREADS, where unset or 0 means
// every hardware thread.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  int n = 0;
  if (const char* env = std::getenv("REGDEPTH_THREADS")) {
    try {
      n = std::stoi(env);
    } catch (const std::exception&) {
      throw InvalidArgument("REGDEPTH_THREADS must be an integer");
    }
    if (n < 0) throw InvalidArgument("REGDEPTH_THREADS must be >= 0");
  }
  if (n == 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, n);
}

// Calls f(i) for i in [0, count). Work is claimed dynamically but every
// index owns its output slot, so results do not depend on scheduling. The
// exception from the lowest failing index is rethrown.
template <class F>
void parallel_for(std::size_t count, int threads, F&& f) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), count);
  std::vector<std::exception_ptr> errors(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            f(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Re-raises the active regdepth error with `context` prepended, keeping its
// category.
[[noreturn]] inline void rethrow_with_context(std::exception_ptr e, const std::string& context) {
  try {
    std::rethrow_exception(e);
  } catch (const InvalidArgument& err) {
    throw InvalidArgument(context + ": " + err.what());
  } catch (const SingularMatrix& err) {
    throw SingularMatrix(context + ": " + err.what());
  } catch (const SolverFailure& err) {
    throw SolverFailure(context + ": " + err.what());
  } catch (const Error& err) {
    throw Error(context + ": " + err.what());
  }
}

}  // namespace regdepth::detail
