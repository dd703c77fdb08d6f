#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ttvfi {

// Persistent pool used by the hot loops. Work is split into contiguous
// chunks, one per worker, so every output element is written by exactly one
// thread and accumulated in a fixed order; results are bit-identical for any
// thread count.
class ThreadPool {
public:
    static ThreadPool& instance() {
        static ThreadPool pool;
        return pool;
    }

    int threads() const { return n_threads_; }

    // Invokes fn(begin, end) on [lo, hi) split into `threads()` chunks.
    void run_chunks(int lo, int hi, const std::function<void(int, int)>& fn) {
        int total = hi - lo;
        if (total <= 0) return;
        int n = n_threads_;
        if (n <= 1 || total == 1) {
            fn(lo, hi);
            return;
        }
        if (total < n) n = total;
        {
            std::unique_lock<std::mutex> lock(mu_);
            job_ = &fn;
            job_lo_ = lo;
            job_total_ = total;
            job_parts_ = n;
            part_next_.store(1, std::memory_order_relaxed);
            // Every worker wakes once per generation and decrements once.
            pending_.store(static_cast<int>(workers_.size()), std::memory_order_relaxed);
            ++generation_;
        }
        cv_.notify_all();
        // Caller runs the first chunk.
        run_part(fn, 0);
        // Wait for workers to drain theirs.
        std::unique_lock<std::mutex> lock(mu_);
        done_cv_.wait(lock, [&] { return pending_.load(std::memory_order_acquire) == 0; });
        job_ = nullptr;
    }

    ~ThreadPool() {
        {
            std::unique_lock<std::mutex> lock(mu_);
            stop_ = true;
            ++generation_;
        }
        cv_.notify_all();
        for (auto& t : workers_) t.join();
    }

private:
    ThreadPool() {
        int n = static_cast<int>(std::thread::hardware_concurrency());
        if (const char* env = std::getenv("TTVFI_THREADS")) {
            int v = std::atoi(env);
            if (v > 0) n = v;
        }
        if (n < 1) n = 1;
        n_threads_ = n;
        for (int i = 1; i < n; ++i) {
            workers_.emplace_back([this] { worker_loop(); });
        }
    }

    void run_part(const std::function<void(int, int)>& fn, int part) {
        int chunk = (job_total_ + job_parts_ - 1) / job_parts_;
        int b = job_lo_ + part * chunk;
        int e = std::min(job_lo_ + job_total_, b + chunk);
        if (b < e) fn(b, e);
    }

    void worker_loop() {
        std::uint64_t seen = 0;
        for (;;) {
            const std::function<void(int, int)>* job = nullptr;
            {
                std::unique_lock<std::mutex> lock(mu_);
                cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
                seen = generation_;
                if (stop_) return;
                job = job_;
            }
            if (!job) continue;
            for (;;) {
                int part = part_next_.fetch_add(1, std::memory_order_relaxed);
                if (part >= job_parts_) break;
                run_part(*job, part);
            }
            if (pending_.fetch_sub(1, std::memory_order_acq_rel) == 1) {
                std::unique_lock<std::mutex> lock(mu_);
                done_cv_.notify_all();
            }
        }
    }

    int n_threads_ = 1;
    std::vector<std::thread> workers_;
    std::mutex mu_;
    std::condition_variable cv_;
    std::condition_variable done_cv_;
    const std::function<void(int, int)>* job_ = nullptr;
    int job_lo_ = 0;
    int job_total_ = 0;
    int job_parts_ = 0;
    std::atomic<int> part_next_{0};
    std::atomic<int> pending_{0};
    std::uint64_t generation_ = 0;
    bool stop_ = false;
};

// Row-parallel helper. fn(y0, y1) must only write rows in [y0, y1).
inline void parallel_rows(int rows, const std::function<void(int, int)>& fn) {
    ThreadPool::instance().run_chunks(0, rows, fn);
}

}  // namespace ttvfi
