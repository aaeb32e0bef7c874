#pragma once

#include <atomic>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace foapinn {

// Persistent worker pool for data-parallel chunk execution.
//
// Work is split into a fixed list of chunks that does not depend on the
// worker count; callers reduce per-chunk results in chunk order, so any
// floating-point reduction is bit-identical no matter how many threads run.
class ThreadPool {
 public:
  // n_threads == 0 picks hardware_concurrency(); 1 runs everything inline.
  explicit ThreadPool(unsigned n_threads = 0);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  unsigned size() const { return static_cast<unsigned>(workers_.size()) + 1; }

  // Runs fn(chunk_index) for chunk_index in [0, n_chunks); blocks until done.
  // fn must not throw across chunks it does not own; exceptions are rethrown
  // on the calling thread after all chunks finish.
  void run_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& fn);

 private:
  void worker_loop(unsigned worker_id);

  std::vector<std::thread> workers_;
  std::mutex mu_;
  std::condition_variable cv_start_, cv_done_;
  const std::function<void(std::size_t)>* job_ = nullptr;
  std::size_t job_chunks_ = 0;
  std::atomic<std::size_t> next_chunk_{0};
  std::size_t pending_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
  std::exception_ptr first_error_;
};

// Splits [0, n) into chunks of at most chunk_size; returns (begin, end) pairs.
std::vector<std::pair<std::size_t, std::size_t>> make_chunks(std::size_t n,
                                                             std::size_t chunk_size);

}  // namespace foapinn
