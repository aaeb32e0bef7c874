#include "core/threading.hpp"

#include <cstdint>

namespace foapinn {

ThreadPool::ThreadPool(unsigned n_threads) {
  if (n_threads == 0) {
    n_threads = std::thread::hardware_concurrency();
    if (n_threads == 0) n_threads = 1;
  }
  for (unsigned i = 1; i < n_threads; ++i) {
    workers_.emplace_back([this, i] { worker_loop(i); });
  }
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    stop_ = true;
  }
  cv_start_.notify_all();
  for (auto& w : workers_) w.join();
}

void ThreadPool::run_chunks(std::size_t n_chunks,
                            const std::function<void(std::size_t)>& fn) {
  if (n_chunks == 0) return;
  if (workers_.empty() || n_chunks == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
    return;
  }

  {
    std::lock_guard<std::mutex> lock(mu_);
    job_ = &fn;
    job_chunks_ = n_chunks;
    next_chunk_.store(0, std::memory_order_relaxed);
    pending_ = workers_.size();
    first_error_ = nullptr;
    ++generation_;
  }
  cv_start_.notify_all();

  // The calling thread participates as a worker.
  for (;;) {
    std::size_t c = next_chunk_.fetch_add(1, std::memory_order_relaxed);
    if (c >= n_chunks) break;
    try {
      fn(c);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu_);
      if (!first_error_) first_error_ = std::current_exception();
    }
  }

  std::unique_lock<std::mutex> lock(mu_);
  cv_done_.wait(lock, [this] { return pending_ == 0; });
  job_ = nullptr;
  if (first_error_) std::rethrow_exception(first_error_);
}

void ThreadPool::worker_loop(unsigned) {
  std::uint64_t seen_generation = 0;
  for (;;) {
    const std::function<void(std::size_t)>* job = nullptr;
    std::size_t n_chunks = 0;
    {
      std::unique_lock<std::mutex> lock(mu_);
      cv_start_.wait(lock, [&] { return stop_ || generation_ != seen_generation; });
      if (stop_) return;
      seen_generation = generation_;
      job = job_;
      n_chunks = job_chunks_;
    }
    for (;;) {
      std::size_t c = next_chunk_.fetch_add(1, std::memory_order_relaxed);
      if (c >= n_chunks) break;
      try {
        (*job)(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!first_error_) first_error_ = std::current_exception();
      }
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (--pending_ == 0) cv_done_.notify_all();
    }
  }
}

std::vector<std::pair<std::size_t, std::size_t>> make_chunks(std::size_t n,
                                                             std::size_t chunk_size) {
  std::vector<std::pair<std::size_t, std::size_t>> chunks;
  if (chunk_size == 0) chunk_size = 1;
  for (std::size_t b = 0; b < n; b += chunk_size) {
    chunks.emplace_back(b, std::min(n, b + chunk_size));
  }
  return chunks;
}

}  // namespace foapinn
