#include "pmc/worker_pool.hpp"

#include <algorithm>
#include <stdexcept>

namespace pmc {

namespace {

struct ChunkRange {
  std::size_t lo, hi;
};

ChunkRange chunk_of(std::size_t begin, std::size_t end, int chunk, int n_chunks) {
  const std::size_t total = end - begin;
  const std::size_t per = (total + n_chunks - 1) / n_chunks;
  const std::size_t lo = std::min(begin + per * static_cast<std::size_t>(chunk), end);
  const std::size_t hi = std::min(lo + per, end);
  return {lo, hi};
}

}  // namespace

WorkerPool::WorkerPool(int workers) : n_(workers) {
  if (workers < 1) throw std::invalid_argument("worker pool needs >= 1 worker");
  threads_.reserve(static_cast<std::size_t>(n_ - 1));
  for (int id = 1; id < n_; ++id) {
    threads_.emplace_back([this, id] { worker_loop(id); });
  }
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  start_cv_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::worker_loop(int id) {
  std::uint64_t seen = 0;
  while (true) {
    std::size_t begin, end;
    const ChunkFn* fn;
    {
      std::unique_lock lock(mutex_);
      start_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      begin = job_begin_;
      end = job_end_;
      fn = job_fn_;
    }
    const auto [lo, hi] = chunk_of(begin, end, id, n_);
    try {
      if (lo < hi) (*fn)(lo, hi);
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!first_error_) first_error_ = std::current_exception();
    }
    {
      std::lock_guard lock(mutex_);
      if (--pending_ == 0) done_cv_.notify_one();
    }
  }
}

void WorkerPool::parallel_for(std::size_t begin, std::size_t end, const ChunkFn& fn) {
  if (begin >= end) return;
  if (n_ == 1) {
    fn(begin, end);
    return;
  }
  {
    std::lock_guard lock(mutex_);
    job_begin_ = begin;
    job_end_ = end;
    job_fn_ = &fn;
    pending_ = n_ - 1;
    first_error_ = nullptr;
    ++generation_;
  }
  start_cv_.notify_all();

  const auto [lo, hi] = chunk_of(begin, end, 0, n_);
  std::exception_ptr local_error;
  try {
    if (lo < hi) fn(lo, hi);
  } catch (...) {
    local_error = std::current_exception();
  }

  std::unique_lock lock(mutex_);
  done_cv_.wait(lock, [&] { return pending_ == 0; });
  if (!first_error_ && local_error) first_error_ = local_error;
  if (first_error_) std::rethrow_exception(first_error_);
}

}  // namespace pmc
