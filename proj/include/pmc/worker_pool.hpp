#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace pmc {

// Persistent pool of data-parallel host workers. parallel_for splits a range
// into exactly one contiguous chunk per worker; chunk boundaries carry no
// physics, so any worker count yields identical results.
class WorkerPool {
 public:
  using ChunkFn = std::function<void(std::size_t, std::size_t)>;

  explicit WorkerPool(int workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int workers() const { return n_; }

  // Runs fn(chunk_begin, chunk_end) on every worker; the calling thread
  // executes chunk 0. Blocks until all chunks finish and rethrows the first
  // worker exception, if any.
  void parallel_for(std::size_t begin, std::size_t end, const ChunkFn& fn);

 private:
  void worker_loop(int id);

  int n_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  std::uint64_t generation_ = 0;
  int pending_ = 0;
  bool stop_ = false;
  std::size_t job_begin_ = 0;
  std::size_t job_end_ = 0;
  const ChunkFn* job_fn_ = nullptr;
  std::exception_ptr first_error_;
};

}  // namespace pmc
