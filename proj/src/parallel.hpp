#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace hardy::detail {

/// Best candidate over indices [begin, end). `visit(i, best)` may replace
/// `best` with a smaller candidate. Worker w visits i = begin + w, + W, ...
/// and the per-worker winners are merged by Candidate::operator<, so the
/// result does not depend on the number of workers as long as the order on
/// candidates is total.
template <typename Candidate, typename Visit>
std::optional<Candidate> parallel_min(std::uint64_t begin, std::uint64_t end, std::size_t workers, Visit visit) {
  if (end <= begin) return std::nullopt;
  const std::uint64_t count = end - begin;
  if (workers <= 1 || count < 256) {
    std::optional<Candidate> best;
    for (std::uint64_t i = begin; i < end; ++i) visit(i, best);
    return best;
  }
  if (workers > count) workers = static_cast<std::size_t>(count);

  std::vector<std::optional<Candidate>> partial(workers);
  std::vector<std::exception_ptr> failure(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = begin + w; i < end; i += workers) visit(i, partial[w]);
      } catch (...) {
        failure[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& f : failure)
    if (f) std::rethrow_exception(f);

  std::optional<Candidate> best;
  for (auto& p : partial)
    if (p && (!best || *p < *best)) best = p;
  return best;
}

}  // namespace hardy::detail
