#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>

namespace ragloop {

class Semaphore {
 public:
  explicit Semaphore(int permits) : permits_(permits) {}

  void acquire() {
    std::unique_lock lock(m_);
    cv_.wait(lock, [&] { return permits_ > 0; });
    --permits_;
  }

  void release() {
    {
      std::lock_guard lock(m_);
      ++permits_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex m_;
  std::condition_variable cv_;
  int permits_;
};

struct SemaphoreGuard {
  explicit SemaphoreGuard(Semaphore& s) : sem(s) { sem.acquire(); }
  ~SemaphoreGuard() { sem.release(); }
  Semaphore& sem;
};

// Runs fn(i) for i in [0, n) on up to `parallelism` threads. fn must handle
// its own errors; an escaped exception terminates the process.
void parallel_for(std::size_t n, int parallelism, const std::function<void(std::size_t)>& fn);

}  // namespace ragloop
