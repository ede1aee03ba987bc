#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace prism {

/// Worker count from PRISM_THREADS, else hardware concurrency (at least 1).
[[nodiscard]] unsigned configured_thread_count();

/// Small persistent pool that runs an indexed batch of tasks and waits for
/// all of them. With one thread the batch runs inline on the caller.
class BlockPool {
 public:
  explicit BlockPool(unsigned threads);
  ~BlockPool();

  BlockPool(const BlockPool&) = delete;
  BlockPool& operator=(const BlockPool&) = delete;

  [[nodiscard]] unsigned threads() const noexcept { return threads_; }

  /// Calls task(i) for every i in [0, count). Blocks until all calls return.
  /// The first exception thrown by a task is rethrown here.
  void run(std::size_t count, const std::function<void(std::size_t)>& task);

 private:
  void worker_loop();
  void drain();

  unsigned threads_;
  std::vector<std::thread> workers_;
  std::mutex mutex_;
  std::condition_variable work_cv_;
  std::condition_variable done_cv_;
  const std::function<void(std::size_t)>* task_ = nullptr;
  std::size_t count_ = 0;
  std::size_t next_ = 0;
  std::size_t finished_ = 0;
  std::size_t generation_ = 0;
  std::exception_ptr error_;
  bool stopping_ = false;
};

}  // namespace prism
